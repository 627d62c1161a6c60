use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::expr::Expression;
use crate::parse::parse;

const BUILTIN: &str = include_str!("../../corpus/identities.corpus");

/// One golden identity: the printed source text and its parsed form.
#[derive(Clone, Debug, Deserialize)]
pub struct CorpusRecord {
    pub id: String,
    pub label: String,
    pub title: String,
    pub source: String,
    #[serde(default)]
    pub lhs: Option<String>,
    pub rhs: String,
    #[serde(default)]
    pub parts: BTreeMap<String, String>,
}

impl CorpusRecord {
    fn parse_field(&self, field: &str, text: &str) -> Result<Expression> {
        parse(text).map_err(|e| Error::Corpus(format!("{} {}: {}", self.id, field, e)))
    }

    pub fn rhs_expr(&self) -> Result<Expression> {
        self.parse_field("rhs", &self.rhs)
    }

    pub fn lhs_expr(&self) -> Result<Expression> {
        let text = self
            .lhs
            .as_deref()
            .ok_or_else(|| Error::Corpus(format!("{} has no lhs", self.id)))?;
        self.parse_field("lhs", text)
    }

    pub fn part(&self, name: &str) -> Result<Expression> {
        let text = self
            .parts
            .get(name)
            .ok_or_else(|| Error::Corpus(format!("{} has no part {name:?}", self.id)))?;
        self.parse_field(name, text)
    }

    /// Raw text of a field with `{key}` placeholders substituted.
    pub fn template(&self, field: &str, vars: &[(&str, &str)]) -> Result<Expression> {
        let raw = match field {
            "lhs" => self.lhs.clone(),
            "rhs" => Some(self.rhs.clone()),
            other => self.parts.get(other).cloned(),
        }
        .ok_or_else(|| Error::Corpus(format!("{} has no field {field:?}", self.id)))?;
        let text = vars.iter().fold(raw, |t, (k, v)| {
            t.replace(&format!("{{{k}}}"), &format!("({v})"))
        });
        self.parse_field(field, &text)
    }

    fn is_template(text: &str) -> bool {
        text.contains("{lambda}") || text.contains("{rho}")
    }
}

#[derive(Deserialize)]
struct CorpusFile {
    identity: Vec<CorpusRecord>,
}

/// The identity corpus, indexed by id and label.
#[derive(Clone, Debug)]
pub struct Corpus {
    records: Vec<CorpusRecord>,
}

impl Corpus {
    /// Parses and validates a corpus: unique ids and labels, and every
    /// non-template expression parses.
    pub fn parse(text: &str) -> Result<Corpus> {
        let file: CorpusFile = toml::from_str(text).map_err(|e| Error::Corpus(e.to_string()))?;
        let mut seen = BTreeSet::new();
        for r in &file.identity {
            for key in [&r.id, &r.label] {
                if !seen.insert(key.clone()) {
                    return Err(Error::Corpus(format!("duplicate key {key:?}")));
                }
            }
            let fields = r
                .lhs
                .iter()
                .map(|t| ("lhs", t))
                .chain(std::iter::once(("rhs", &r.rhs)));
            for (name, t) in fields.chain(r.parts.iter().map(|(k, v)| (k.as_str(), v))) {
                if !CorpusRecord::is_template(t) {
                    r.parse_field(name, t)?;
                }
            }
        }
        Ok(Corpus {
            records: file.identity,
        })
    }

    /// The corpus shipped with the crate.
    pub fn builtin() -> &'static Corpus {
        static CORPUS: OnceLock<Corpus> = OnceLock::new();
        CORPUS.get_or_init(|| Corpus::parse(BUILTIN).expect("builtin corpus is valid"))
    }

    /// Lookup by id (`dj-square`) or label (`2.3`).
    pub fn get(&self, key: &str) -> Result<&CorpusRecord> {
        self.records
            .iter()
            .find(|r| r.id == key || r.label == key)
            .ok_or_else(|| Error::UnknownIdentity(key.to_string()))
    }

    pub fn records(&self) -> &[CorpusRecord] {
        &self.records
    }

    pub fn ids(&self) -> Vec<&str> {
        self.records.iter().map(|r| r.id.as_str()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_loads() {
        let c = Corpus::builtin();
        assert!(c.records().len() >= 12);
        assert_eq!(c.get("2.7").unwrap().id, "l-alpha-square");
        assert_eq!(c.get("dj-square").unwrap().label, "2.3");
    }

    #[test]
    fn unknown_id() {
        assert!(matches!(
            Corpus::builtin().get("9.9"),
            Err(Error::UnknownIdentity(_))
        ));
    }

    #[test]
    fn bad_expression_rejected() {
        let text = "[[identity]]\nid = \"x\"\nlabel = \"y\"\ntitle = \"t\"\nsource = \"s\"\nrhs = \"f_{1\"\n";
        assert!(matches!(Corpus::parse(text), Err(Error::Corpus(_))));
    }

    #[test]
    fn duplicate_rejected() {
        let one =
            "[[identity]]\nid = \"x\"\nlabel = \"y\"\ntitle = \"t\"\nsource = \"s\"\nrhs = \"f\"\n";
        assert!(Corpus::parse(&format!("{one}{one}")).is_err());
    }

    #[test]
    fn template_substitution() {
        let r = Corpus::builtin().get("square-completion").unwrap();
        let e = r
            .template("square", &[("lambda", "1"), ("rho", "0")])
            .unwrap();
        assert_eq!(e, parse("INT[|E11_{b1}|^2]").unwrap());
    }
}
