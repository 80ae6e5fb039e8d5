//! Points on a low-dimensional sphere satisfying a family of cospherical conditions.

use udg::audit::{lemedge2_guarantee, lemedge_bound};
use udg::construct::{realize_hsystem, FlatnessBudget, HSystem};
use udg::geom::minimal_sphere;

fn main() {
    let h = HSystem::new(
        6,
        vec![
            vec![0, 1, 2],
            vec![0, 1, 2, 3],
            vec![1, 2, 3, 4, 5],
            vec![0, 2, 3, 4, 5],
        ],
    )
    .unwrap();
    let budget = FlatnessBudget::default();
    let r = realize_hsystem(&h, budget, 11).expect("realizable");
    println!(
        "sphere dimension k = {}, growth at conditions {:?}, attempts {}",
        r.k, r.growth_steps, r.attempts
    );

    for c in h.conditions() {
        let pts: Vec<_> = c.iter().map(|&i| r.points[i].clone()).collect();
        let s = minimal_sphere(&pts, 1e-9).expect("cospherical");
        println!(
            "  {c:?} lies on a {}-sphere of radius {:.4}",
            s.dim(),
            s.radius
        );
    }

    // every dimension increase beyond k - 1 is paid for by the condition sizes
    println!(
        "edge sum {} >= {} needed for k - 1 = {}",
        h.edge_sum(),
        lemedge_bound(r.k - 1),
        r.k - 1
    );
    let (k_min, sphere) = lemedge2_guarantee(&h.sizes());
    println!(
        "size-only guarantee for {:?}: ({k_min}, S^{sphere})",
        h.sizes()
    );
}
