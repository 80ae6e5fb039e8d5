//! Multistart least-squares search for faithful and plain unit-distance embeddings.

use udg::graph::{complete, complete_bipartite, cycle};
use udg::solver::{gradient_check, solve_distance, solve_faithful, SolverConfig};

fn main() {
    let cfg = SolverConfig {
        seed: 1,
        ..SolverConfig::default()
    };
    let cases = [
        ("K_4", complete(4), 3),
        ("K_4", complete(4), 2),
        ("C_5", cycle(5).unwrap(), 2),
        ("K_3,3", complete_bipartite(3, 3), 3),
    ];
    for (name, g, d) in cases {
        let f = solve_faithful(&g, d, &cfg);
        let u = solve_distance(&g, d, &cfg);
        println!(
            "{name} in R^{d}: faithful {:?} (residual {:.1e}, {} rejected), distance {:?}",
            f.status, f.best_residual, f.rejected, u.status
        );
    }
    println!(
        "gradient check on K_4 in R^3: {:.2e}",
        gradient_check(&complete(4), 3, 0)
    );
}
