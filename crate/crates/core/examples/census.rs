//! Counting labelled faithful distance graphs on few vertices.

use udg::census::{count_faithful, zero_pattern_bound, Method};
use udg::solver::SolverConfig;

fn main() {
    let cfg = SolverConfig::default();
    for (n, d) in [(3, 1), (4, 1), (3, 2), (4, 2)] {
        let r = count_faithful(n, d, &cfg).unwrap();
        let exhausted = r
            .entries
            .iter()
            .filter(|e| e.method == Method::SolverExhausted)
            .count();
        let bound = zero_pattern_bound(n, d)
            .map(|b| b.value.to_string())
            .unwrap_or_else(|e| e.to_string());
        println!(
            "n={n} d={d}: {} of {} labelled graphs ({} classes, exact {}, {exhausted} solver-exhausted), bound {bound}",
            r.count_realizable,
            r.entries.len(),
            r.classes,
            r.exact
        );
    }
    print!("{}", count_faithful(3, 1, &cfg).unwrap().to_csv());
}
