//! Named experiments as CSV: runs the fast ones and prints the combined
//! table, then lists each outcome. `hg experiment <name>` does the same for
//! one experiment.
//!
//! cargo run --release --example experiments_csv

use homotopy_gaps::experiments::{self, Context, Params, EXPERIMENTS};
use homotopy_gaps::io::Format;
use homotopy_gaps::Result;

fn main() -> Result<()> {
    let ctx = Context::from_env()?;
    let mut outcomes = Vec::new();
    for e in EXPERIMENTS.iter().filter(|e| !e.slow) {
        outcomes.push(e.run(&Params::new(), &ctx)?);
    }
    print!("{}", experiments::table(&outcomes).to_string(Format::Csv));
    eprintln!();
    for o in &outcomes {
        eprintln!("{} {}: {}", if o.passed() { "PASS" } else { "FAIL" }, o.name, o.claim);
    }
    Ok(())
}
