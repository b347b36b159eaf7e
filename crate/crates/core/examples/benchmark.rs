//! A small random-occupancy sweep: operation counts and rounding error at
//! the all-ones point, canonical form against Horner form.

use polyhorner::bench::{format_summary, summarize, sweep, BenchmarkConfig};

fn main() {
    let config = BenchmarkConfig::new(4, 4, 5, 50, 0);
    let report = sweep(&config).unwrap();
    print!("{}", format_summary(&summarize(&report.records).unwrap()));
}
