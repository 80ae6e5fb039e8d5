//! Reading an embedding document and checking it in both modes.

use udg::embedding::Embedding;
use udg::verify::{induced_udg, verify, Mode};

fn main() {
    // unit square plus its centre: the centre is at distance sqrt(1/2) from every corner
    let doc = r#"{"dim":2,"points":[[0,0],[1,0],[1,1],[0,1],[0.5,0.5]],
                  "graph":{"n":5,"edges":[[0,1],[0,3],[1,2],[2,3]]}}"#;
    let (e, g) = Embedding::from_json(doc).unwrap();
    let g = g.unwrap();
    for mode in [Mode::Distance, Mode::Faithful] {
        println!(
            "{mode:?}: {}",
            verify(&g, &e, mode, 1e-9).unwrap().to_json()
        );
    }
    let udg = induced_udg(&e.points, 1e-9).unwrap();
    println!(
        "induced unit-distance edges: {:?}",
        udg.graph.edges().collect::<Vec<_>>()
    );

    // apex slightly too low: two sides miss unit length
    let (bad, _) = Embedding::from_json(r#"{"dim":2,"points":[[0,0],[1,0],[0.5,0.8]]}"#).unwrap();
    let tri = udg::graph::complete(3);
    println!(
        "triangle: {}",
        verify(&tri, &bad, Mode::Faithful, 1e-9).unwrap().pass
    );
}
