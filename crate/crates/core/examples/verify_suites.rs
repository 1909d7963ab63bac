//! Runs the seeded property suites and prints their summaries.

use dyndeg::cli::{run_suite, Suite};

fn main() {
    let count = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    for suite in [Suite::FabcGrid, Suite::Monomial, Suite::Gfam] {
        let r = run_suite(suite, count, 42, 1e-9);
        println!("{}", r.to_json());
    }
}
