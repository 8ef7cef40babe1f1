//! Prints the cohomology report for a builtin group.
//!
//!     cargo run --release --example report -- "SL(4,R)" 4

use symcoh::catalog::builtin_group;
use symcoh::ce::ComputeConfig;
use symcoh::reports::full_report;

fn main() -> symcoh::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "SL(3,R)".into());
    let max: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(5);
    let spec = builtin_group(&name)?;
    let report = full_report(&spec, max, &ComputeConfig::from_env())?;
    print!("{}", report.to_text());
    Ok(())
}
