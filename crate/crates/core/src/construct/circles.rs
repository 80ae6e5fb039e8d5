//! Distance-graph embeddings from proper colourings: every colour class sits on
//! its own circle of radius `1/sqrt 2`, the circles pairwise orthogonal with a
//! common centre, so any two points of different classes are at distance 1.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::embedding::Embedding;
use crate::geom::Point;
use crate::graph::Graph;

use super::EmbedError;

fn place_on_circle(coords: &mut [f64], axis: usize, j: usize, size: usize) {
    let theta = 2.0 * PI * j as f64 / size as f64;
    coords[axis] = FRAC_1_SQRT_2 * theta.cos();
    coords[axis + 1] = FRAC_1_SQRT_2 * theta.sin();
}

/// Realises `g` as a distance graph in `R^{2k}` from a proper `k`-colouring.
///
/// Class `c` occupies coordinates `(2c, 2c+1)`; its members get distinct angles.
pub fn embed_colorable(g: &Graph, coloring: &[Vec<usize>]) -> Result<Embedding, EmbedError> {
    g.check_coloring(coloring)?;
    let dim = 2 * coloring.len();
    let mut coords = vec![vec![0.0; dim]; g.n()];
    for (c, class) in coloring.iter().enumerate() {
        for (j, &v) in class.iter().enumerate() {
            place_on_circle(&mut coords[v], 2 * c, j, class.len());
        }
    }
    finish(dim, coords)
}

/// Realises `g` as a distance graph in `R^{a+2b}` from a colouring with `a`
/// singleton classes and `b` larger ones. Larger classes take orthogonal
/// circles; each singleton sits at `1/sqrt 2` on a fresh axis.
pub fn embed_singleton_coloring(
    g: &Graph,
    coloring: &[Vec<usize>],
) -> Result<Embedding, EmbedError> {
    g.check_coloring(coloring)?;
    let (big, single): (Vec<&Vec<usize>>, Vec<&Vec<usize>>) =
        coloring.iter().partition(|c| c.len() >= 2);
    let dim = single.len() + 2 * big.len();
    let mut coords = vec![vec![0.0; dim]; g.n()];
    for (c, class) in big.iter().enumerate() {
        for (j, &v) in class.iter().enumerate() {
            place_on_circle(&mut coords[v], 2 * c, j, class.len());
        }
    }
    for (t, class) in single.iter().enumerate() {
        coords[class[0]][2 * big.len() + t] = FRAC_1_SQRT_2;
    }
    finish(dim, coords)
}

fn finish(dim: usize, coords: Vec<Vec<f64>>) -> Result<Embedding, EmbedError> {
    let points = coords
        .into_iter()
        .map(|c| Point::new(c).expect("finite"))
        .collect();
    Ok(Embedding::new(dim, points)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, exact_coloring_small, petersen, star};
    use crate::verify::{max_edge_error, verify, Mode};

    #[test]
    fn triangle_in_r6() {
        let g = complete(3);
        let e = embed_colorable(&g, &[vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(e.dim, 6);
        assert!(max_edge_error(&g, &e) < 1e-12);
    }

    #[test]
    fn cross_circle_distance_is_exactly_one() {
        let a = Point::new(vec![FRAC_1_SQRT_2, 0.0, 0.0, 0.0]).unwrap();
        let b = Point::new(vec![0.0, 0.0, FRAC_1_SQRT_2, 0.0]).unwrap();
        assert!((a.distance(&b) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn petersen_in_r6() {
        let g = petersen();
        let classes = exact_coloring_small(&g, 16).unwrap();
        let e = embed_colorable(&g, &classes).unwrap();
        assert_eq!(e.dim, 6);
        assert!(max_edge_error(&g, &e) <= 1e-9);
        assert!(verify(&g, &e, Mode::Distance, 1e-9).unwrap().pass);
    }

    #[test]
    fn improper_coloring_rejected() {
        let g = complete(3);
        assert!(matches!(
            embed_colorable(&g, &[vec![0, 1], vec![2]]),
            Err(EmbedError::Graph(_))
        ));
    }

    #[test]
    fn singleton_distances() {
        // one singleton and one circle point, then two singletons
        let g = complete(3);
        let e = embed_singleton_coloring(&g, &[vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(e.dim, 3);
        assert!(max_edge_error(&g, &e) < 1e-15);
    }

    #[test]
    fn star_with_singleton_center() {
        let g = star(4);
        let e = embed_singleton_coloring(&g, &[vec![0], vec![1, 2, 3, 4]]).unwrap();
        assert_eq!(e.dim, 3);
        assert!(verify(&g, &e, Mode::Distance, 1e-9).unwrap().pass);
        assert!(max_edge_error(&g, &e) < 1e-15);
    }
}
