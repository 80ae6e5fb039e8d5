//! Probabilistic lower bounds and tiny exhaustive values for the faithful Ramsey numbers.

use udg::census::{ramsey_exact, ramsey_fd_lower};
use udg::solver::SolverConfig;

fn main() {
    for (s, d) in [(3, 1), (6, 1), (8, 2), (12, 1), (20, 1), (30, 2)] {
        let r = ramsey_fd_lower(s, d).unwrap();
        println!(
            "s={s:>2} d={d}: R > {:>6} (zero-pattern count used: {})",
            r.m, r.zero_pattern_used
        );
    }
    let cfg = SolverConfig::default();
    for (s, d) in [(2, 1), (3, 1), (3, 2)] {
        println!(
            "exact s={s} d={d}: {:?}",
            ramsey_exact(s, d, 6, &cfg).unwrap()
        );
    }
}
