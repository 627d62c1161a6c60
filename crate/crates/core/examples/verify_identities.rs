//! Replays every identity in the corpus and runs mutation testing on one.

use cr_bochner::identities::{mutate, verify_all};
use cr_bochner::Result;

pub fn run_example() -> Result<()> {
    for report in verify_all()? {
        print!("{}", report.to_text());
    }
    let m = mutate("dj-square")?;
    println!("{}: {}/{} mutants killed", m.id, m.killed, m.mutants);
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
