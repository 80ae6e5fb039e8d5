//! Petersen graph on three mutually orthogonal circles in R^6, one circle per colour class.

use udg::construct::embed_colorable;
use udg::graph::{exact_coloring_small, petersen};
use udg::verify::{max_edge_error, verify, Mode};

fn main() {
    let g = petersen();
    let coloring = exact_coloring_small(&g, 10).expect("small graph");
    println!("colour classes: {coloring:?}");

    let e = embed_colorable(&g, &coloring).expect("proper colouring");
    let report = verify(&g, &e, Mode::Distance, 1e-9).expect("distinct points");
    println!(
        "dimension {}, max edge error {:.2e}, pass {}",
        e.dim,
        max_edge_error(&g, &e),
        report.pass
    );

    // faithfulness is not promised: cross-class non-edges are unit too
    let faithful = verify(&g, &e, Mode::Faithful, 1e-9).expect("distinct points");
    println!(
        "faithful as well: {} ({} extra unit pairs)",
        faithful.pass,
        faithful.violations.len()
    );
}
