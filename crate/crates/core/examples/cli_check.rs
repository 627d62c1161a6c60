//! Driving the command-line front end in process.

use cr_bochner::cli::run;
use cr_bochner::Result;

pub fn run_example() -> Result<()> {
    let dir = std::env::temp_dir().join("phb-example");
    std::fs::create_dir_all(&dir)?;
    let file = dir.join("points.json");
    std::fs::write(
        &file,
        r#"[{"id": "sphere", "R": 1, "R0": 0, "R1": [0, 0], "lapR": 0}]"#,
    )?;
    let path = file.to_string_lossy().to_string();

    let mut out = Vec::new();
    let code = run(
        ["phb", "check", path.as_str(), "--cond", "corollaryC,thm-b"],
        &mut out,
        &mut std::io::stderr(),
    );
    print!("{}", String::from_utf8_lossy(&out));
    println!("exit status {code}");

    let mut out = Vec::new();
    run(
        [
            "phb",
            "--format",
            "json",
            "scaletest",
            path.as_str(),
            "--k",
            "1/7,3",
        ],
        &mut out,
        &mut std::io::stderr(),
    );
    print!("{}", String::from_utf8_lossy(&out));
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
