//! Dimension audits: K'_d is never faithful in R^d but is in R^{d+1}.

use udg::audit::faithful_dim_audit;
use udg::graph::{complete_bipartite, make_kprime};

fn main() {
    let k33 = complete_bipartite(3, 3);
    for d in [3, 4] {
        let r = faithful_dim_audit(&k33, d).unwrap();
        println!(
            "K_3,3 in R^{d}: {:?} (k in [{}, {:?}])",
            r.verdict, r.k_lower, r.k_upper
        );
    }
    for d in 4..=8 {
        let g = make_kprime(d).unwrap();
        let below = faithful_dim_audit(&g, d).unwrap();
        let above = faithful_dim_audit(&g, d + 1).unwrap();
        let rules: Vec<_> = below.rule_chain.iter().map(|r| r.rule.as_str()).collect();
        println!(
            "K'_{d}: R^{d} {:?} via {rules:?}; R^{} {:?}",
            below.verdict,
            d + 1,
            above.verdict
        );
    }
}
