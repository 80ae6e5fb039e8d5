//! Ground truth: the unit-distance graph a point set induces, and checks of an
//! embedding against a target graph.
//!
//! Two semantics are supported. In `distance` mode every edge must have unit
//! length and non-edges are unconstrained. In `faithful` mode the induced
//! unit-distance graph must equal the target exactly. Pairs whose deviation
//! from 1 lands in `(tol, 3 tol]` are reported as ambiguous so that results
//! near the tolerance cliff are visible.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::Embedding;
use crate::geom::Point;
use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("points {0} and {1} coincide (distance {2:e})")]
    Coincident(usize, usize, f64),
    #[error("graph has {graph} vertices but embedding has {embedding} points")]
    SizeMismatch { graph: usize, embedding: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Faithful,
    Distance,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    EdgeNotUnit,
    NonedgeUnit,
    Coincident,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub pair: [usize; 2],
    pub distance: f64,
    pub kind: ViolationKind,
}

/// A pair whose distance is within `3 tol` of 1 but not within `tol`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ambiguous {
    pub pair: [usize; 2],
    pub distance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub pass: bool,
    pub mode: Mode,
    pub tol: f64,
    pub violations: Vec<Violation>,
    pub warnings: Vec<Ambiguous>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialises")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InducedGraph {
    pub graph: Graph,
    pub ambiguous: Vec<Ambiguous>,
}

fn in_band(dev: f64, tol: f64) -> bool {
    dev > tol && dev <= 3.0 * tol
}

/// Unit-distance graph of `points`: `(i, j)` is an edge iff `| |x_i - x_j| - 1 | <= tol`.
pub fn induced_udg(points: &[Point], tol: f64) -> Result<InducedGraph, VerifyError> {
    let n = points.len();
    let mut edges = Vec::new();
    let mut ambiguous = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = points[i].distance(&points[j]);
            if d <= tol {
                return Err(VerifyError::Coincident(i, j, d));
            }
            let dev = (d - 1.0).abs();
            if dev <= tol {
                edges.push((i, j));
            } else if in_band(dev, tol) {
                ambiguous.push(Ambiguous {
                    pair: [i, j],
                    distance: d,
                });
            }
        }
    }
    Ok(InducedGraph {
        graph: Graph::new(n, edges).expect("pairs are valid"),
        ambiguous,
    })
}

/// Checks `e` against `g` in the given semantics, listing every violating pair.
pub fn verify(g: &Graph, e: &Embedding, mode: Mode, tol: f64) -> Result<Report, VerifyError> {
    if g.n() != e.len() {
        return Err(VerifyError::SizeMismatch {
            graph: g.n(),
            embedding: e.len(),
        });
    }
    let mut violations = Vec::new();
    let mut warnings = Vec::new();
    for i in 0..g.n() {
        for j in i + 1..g.n() {
            let d = e.distance(i, j);
            let dev = (d - 1.0).abs();
            let is_edge = g.has_edge(i, j);
            let kind = if d <= tol {
                Some(ViolationKind::Coincident)
            } else if is_edge && dev > tol {
                Some(ViolationKind::EdgeNotUnit)
            } else if !is_edge && mode == Mode::Faithful && dev <= tol {
                Some(ViolationKind::NonedgeUnit)
            } else {
                None
            };
            if let Some(kind) = kind {
                violations.push(Violation {
                    pair: [i, j],
                    distance: d,
                    kind,
                });
            }
            if in_band(dev, tol) && (is_edge || mode == Mode::Faithful) {
                warnings.push(Ambiguous {
                    pair: [i, j],
                    distance: d,
                });
            }
        }
    }
    Ok(Report {
        pass: violations.is_empty(),
        mode,
        tol,
        violations,
        warnings,
    })
}

/// Smallest `| |x_i - x_j| - 1 |` over non-edges, `+inf` when there are none.
pub fn min_nonedge_gap(g: &Graph, e: &Embedding) -> f64 {
    let mut gap = f64::INFINITY;
    for i in 0..g.n() {
        for j in i + 1..g.n() {
            if !g.has_edge(i, j) {
                gap = gap.min((e.distance(i, j) - 1.0).abs());
            }
        }
    }
    gap
}

/// Largest `| |x_i - x_j| - 1 |` over edges, 0 when there are none.
pub fn max_edge_error(g: &Graph, e: &Embedding) -> f64 {
    g.edges()
        .map(|(i, j)| (e.distance(i, j) - 1.0).abs())
        .fold(0.0, f64::max)
}
