//! Faithful embedding of a bipartite graph whose A-side degrees are at most d.

use udg::construct::{embed_bipartite_faithful_with, BipartiteParams};
use udg::graph::{make_kprime, Graph};
use udg::verify::{min_nonedge_gap, verify, Mode};

fn show(name: &str, g: &Graph, d: usize) {
    let params = BipartiteParams {
        d,
        seed: 7,
        ..BipartiteParams::default()
    };
    match embed_bipartite_faithful_with(g, &params) {
        Ok(e) => {
            let r = verify(g, &e, Mode::Faithful, params.tol).expect("distinct points");
            println!(
                "{name} in R^{d}: faithful {}, closest non-edge gap {:.3e}",
                r.pass,
                min_nonedge_gap(g, &e)
            );
        }
        Err(err) => println!("{name} in R^{d}: {err}"),
    }
}

fn main() {
    let cube = Graph::new(
        8,
        [
            (0, 4),
            (0, 5),
            (0, 6),
            (1, 4),
            (1, 5),
            (1, 7),
            (2, 4),
            (2, 6),
            (2, 7),
            (3, 5),
            (3, 6),
            (3, 7),
        ],
    )
    .expect("valid edges")
    .with_bipartition([0, 1, 2, 3])
    .expect("bipartition");
    show("cube", &cube, 3);
    show("K'_4", &make_kprime(4).unwrap(), 5);
    // degree exceeds the dimension
    show("K'_4", &make_kprime(4).unwrap(), 2);
}
