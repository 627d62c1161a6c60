//! Command-line front end shared by the `phb` binary and the tests.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::identities::{self, Corpus, ScriptReport};
use crate::operators;
use crate::rigidity::{self, Condition, PointData, DEFAULT_BAND, DEFAULT_EPS, DEFAULT_SCALES};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "phb",
    version,
    about = "Verify pseudohermitian Bochner identities and rigidity conditions"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Seed for every randomized check.
    #[arg(long, env = "PHB_SEED", default_value_t = identities::DEFAULT_SEED, global = true)]
    pub seed: u64,
    /// Relative tolerance for `> 0` versus `= 0` decisions.
    #[arg(long, default_value_t = DEFAULT_EPS, global = true)]
    pub eps: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Replay identity scripts (ids or labels, or `all`).
    Verify {
        ids: Vec<String>,
        /// Perturb each golden coefficient by +1 and report which mutants fail.
        #[arg(long)]
        mutate: bool,
        /// Sample count for the randomized pointwise estimate.
        #[arg(long, default_value_t = identities::DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// Evaluate rigidity conditions on a JSON array of points.
    Check {
        points: PathBuf,
        /// thm-a, thm-b, corollaryC, 3.11, 3.12 or bianchi; repeatable or comma separated.
        #[arg(long = "cond", value_delimiter = ',', required = true)]
        conds: Vec<String>,
    },
    /// Check that condition values scale homogeneously under `θ → kθ`.
    Scaletest {
        points: PathBuf,
        /// Scale factors; fractions such as `1/7` are accepted.
        #[arg(long = "k", value_delimiter = ',')]
        ks: Vec<String>,
    },
    /// Randomized battery for the determinant equivalences.
    Equiv {
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_BAND)]
        band: f64,
    },
    /// Export the rewrite trace of one identity script.
    Trace { id: String },
    /// Print an operator body or its formal adjoint.
    Op {
        name: String,
        #[arg(long)]
        adjoint: bool,
    },
}

/// Parses `args` (including the program name), runs the command and writes
/// the report to `out` and diagnostics to `err`. Returns the process exit status: `0` when everything
/// requested passed, `1` when a check failed, `2` on errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            let _ = write!(err, "{e}");
            return 2;
        }
        Err(e) => {
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match execute(&cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn emit<T: Serialize>(
    out: &mut dyn Write,
    format: Format,
    value: &T,
    text: impl FnOnce() -> String,
) -> Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(value)?)?,
        Format::Text => write!(out, "{}", text())?,
    }
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<bool> {
    match &cli.command {
        Command::Verify {
            ids,
            mutate,
            samples,
        } => verify(cli, out, ids, *mutate, *samples),
        Command::Check { points, conds } => check(cli, out, points, conds),
        Command::Scaletest { points, ks } => scaletest(cli, out, points, ks),
        Command::Equiv { samples, band } => equiv(cli, out, *samples, *band),
        Command::Trace { id } => trace(cli, out, id),
        Command::Op { name, adjoint } => op(cli, out, name, *adjoint),
    }
}

fn resolve_ids(ids: &[String]) -> Result<Vec<String>> {
    let corpus = Corpus::builtin();
    if ids.is_empty() || ids.iter().any(|i| i == "all") {
        return Ok(corpus.ids().into_iter().map(String::from).collect());
    }
    ids.iter()
        .map(|i| corpus.get(i).map(|r| r.id.clone()))
        .collect()
}

fn run_script(id: &str, samples: usize, seed: u64) -> Result<ScriptReport> {
    if id == "cube-root-estimate" {
        identities::cube_root_estimate(samples, seed)?.run()
    } else {
        identities::verify(id)
    }
}

fn verify(
    cli: &Cli,
    out: &mut dyn Write,
    ids: &[String],
    mutate: bool,
    samples: usize,
) -> Result<bool> {
    let ids = resolve_ids(ids)?;
    if mutate {
        let reports = ids
            .iter()
            .map(|i| identities::mutate(i))
            .collect::<Result<Vec<_>>>()?;
        let ok = reports.iter().all(|r| r.all_killed());
        emit(out, cli.format, &reports, || {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&format!(
                    "[{}] {}: {}/{} mutants FAIL as expected{}\n",
                    r.label,
                    r.id,
                    r.killed,
                    r.mutants,
                    if r.all_killed() { "" } else { ", SURVIVORS:" }
                ));
                for sv in &r.survivors {
                    s.push_str(&format!("  survived: {sv}\n"));
                }
            }
            s
        })?;
        return Ok(ok);
    }
    let reports = ids
        .iter()
        .map(|i| run_script(i, samples, cli.seed))
        .collect::<Result<Vec<_>>>()?;
    let ok = reports.iter().all(|r| r.passed);
    emit(out, cli.format, &reports, || {
        reports.iter().map(ScriptReport::to_text).collect()
    })?;
    Ok(ok)
}

fn load_points(path: &PathBuf) -> Result<Vec<PointData>> {
    rigidity::parse_points(&std::fs::read_to_string(path)?)
}

fn check(cli: &Cli, out: &mut dyn Write, path: &PathBuf, conds: &[String]) -> Result<bool> {
    let conds = conds
        .iter()
        .map(|c| Condition::from_label(c.trim()))
        .collect::<Result<Vec<_>>>()?;
    let points = load_points(path)?;
    let reports = points
        .iter()
        .map(|p| rigidity::evaluate(p, &conds, cli.eps))
        .collect::<Result<Vec<_>>>()?;
    let ok = reports.iter().all(|r| r.passed);
    #[derive(Serialize)]
    struct CheckOutput<'a> {
        conditions: Vec<&'static str>,
        points: &'a [rigidity::ConditionReport],
        passed: usize,
        failed: usize,
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    let value = CheckOutput {
        conditions: conds.iter().map(|c| c.label()).collect(),
        points: &reports,
        passed,
        failed: reports.len() - passed,
    };
    emit(out, cli.format, &value, || {
        let mut s = String::new();
        for r in &reports {
            s.push_str(&format!(
                "{}: {}\n",
                r.id,
                if r.passed { "PASS" } else { "FAIL" }
            ));
            for (k, v) in &r.values {
                s.push_str(&format!("  {k} = {v:.12e}\n"));
            }
            for (k, v) in &r.verdicts {
                s.push_str(&format!("  {k}: {v}\n"));
            }
        }
        s.push_str(&format!(
            "summary: {passed} passed, {} failed\n",
            reports.len() - passed
        ));
        s
    })?;
    Ok(ok)
}

fn parse_k(s: &str) -> Result<f64> {
    let bad = || Error::Precondition(format!("invalid scale factor '{s}'"));
    let k = match s.split_once('/') {
        Some((n, d)) => {
            n.trim().parse::<f64>().map_err(|_| bad())?
                / d.trim().parse::<f64>().map_err(|_| bad())?
        }
        None => s.trim().parse::<f64>().map_err(|_| bad())?,
    };
    if k.is_finite() && k > 0.0 {
        Ok(k)
    } else {
        Err(bad())
    }
}

const SCALE_TOL: f64 = 1e-12;

fn scaletest(cli: &Cli, out: &mut dyn Write, path: &PathBuf, ks: &[String]) -> Result<bool> {
    let ks = if ks.is_empty() {
        DEFAULT_SCALES.to_vec()
    } else {
        ks.iter().map(|k| parse_k(k)).collect::<Result<_>>()?
    };
    let points = load_points(path)?;
    let checks: Vec<_> = points
        .iter()
        .flat_map(|p| {
            ks.iter()
                .map(move |&k| rigidity::scale_check(p, k, cli.eps))
        })
        .collect();
    let ok = checks.iter().all(|c| c.passed(SCALE_TOL));
    emit(out, cli.format, &checks, || {
        let mut s = String::new();
        for c in &checks {
            s.push_str(&format!(
                "{} k={}: {} (max relative error {:.3e}, verdicts {})\n",
                c.id,
                c.k,
                if c.passed(SCALE_TOL) { "PASS" } else { "FAIL" },
                c.max_rel_err,
                if c.verdicts_invariant {
                    "invariant"
                } else {
                    "CHANGED"
                }
            ));
        }
        s
    })?;
    Ok(ok)
}

fn equiv(cli: &Cli, out: &mut dyn Write, samples: usize, band: f64) -> Result<bool> {
    let rep = rigidity::equivalence_battery(samples, cli.seed, band);
    let ok = rep.passed();
    emit(out, cli.format, &rep, || {
        format!(
            "equivalence battery: {} samples, seed {}, band {:e}: {}\n\
             reduced form vs 3.11: {} mismatches, {} in band, {} positive definite\n\
             full form vs 3.12: {} mismatches, {} in band, {} positive definite\n\
             exact block determinant: {} checked, {} failures\n\
             exact det = kappa * 3.12: {} checked, {} failures\n\
             kappa: {:.15} over {} samples, relative spread {:.3e}\n",
            rep.samples,
            rep.seed,
            rep.band,
            if ok { "PASS" } else { "FAIL" },
            rep.reduced_mismatches,
            rep.reduced_in_band,
            rep.reduced_pd,
            rep.full_mismatches,
            rep.full_in_band,
            rep.full_pd,
            rep.exact_block_checked,
            rep.exact_block_failures,
            rep.exact_kappa_checked,
            rep.exact_kappa_failures,
            rep.kappa_mean,
            rep.kappa_samples,
            rep.kappa_spread,
        )
    })?;
    Ok(ok)
}

fn trace(cli: &Cli, out: &mut dyn Write, id: &str) -> Result<bool> {
    let report = identities::script(id)?.run_with(true)?;
    let steps: Vec<_> = report
        .steps
        .iter()
        .map(|s| {
            serde_json::json!({
                "label": s.label,
                "mode": s.mode,
                "passed": s.passed,
                "residual": s.residual,
                "trace": s.trace.as_ref().map(|t| t.to_json()),
            })
        })
        .collect();
    let value = serde_json::json!({ "id": report.id, "label": report.label, "passed": report.passed, "steps": steps });
    emit(out, cli.format, &value, || {
        let mut text = format!("[{}] {}\n", report.label, report.id);
        for s in &report.steps {
            text.push_str(&format!("## {} [{}]\n", s.label, s.mode));
            if let Some(t) = &s.trace {
                text.push_str(&t.to_text());
            }
        }
        text
    })?;
    Ok(report.passed)
}

fn op(cli: &Cli, out: &mut dyn Write, name: &str, adjoint: bool) -> Result<bool> {
    let mut t = operators::lookup(name)?;
    if adjoint {
        t = t.adjoint()?;
    }
    #[derive(Serialize)]
    struct OpOutput {
        name: String,
        domain: String,
        codomain: String,
        body: String,
    }
    let value = OpOutput {
        name: t.name.clone(),
        domain: t.domain.to_string(),
        codomain: t.codomain.to_string(),
        body: t.body.to_string(),
    };
    emit(out, cli.format, &value, || {
        format!(
            "{}: {} -> {}\n  {}\n",
            value.name, value.domain, value.codomain, value.body
        )
    })?;
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cli(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("phb").chain(args.iter().copied()),
            &mut buf,
            &mut err,
        );
        buf.extend(err);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn verify_label() {
        let (code, out) = run_cli(&["verify", "2.7"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("PASS"));
    }

    #[test]
    fn unknown_id_is_an_error() {
        let (code, out) = run_cli(&["verify", "9.9"]);
        assert_eq!(code, 2);
        assert!(out.contains("9.9"));
    }

    #[test]
    fn scale_factor_parsing() {
        assert_eq!(parse_k("1/2").unwrap(), 0.5);
        assert_eq!(parse_k("100").unwrap(), 100.0);
        assert!(parse_k("-1").is_err());
        assert!(parse_k("a/b").is_err());
    }

    #[test]
    fn operator_listing() {
        let (code, out) = run_cli(&["op", "DJ"]);
        assert_eq!(code, 0);
        assert!(out.contains("f_{11}"), "{out}");
    }
}
