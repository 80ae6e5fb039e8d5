//! Point assignments for graph vertices and their JSON form.

use serde::Deserialize;
use thiserror::Error;

use crate::geom::Point;
use crate::graph::Graph;

/// Minimum pairwise distance for an embedding to count as injective.
pub const TOL_DISTINCT: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EmbeddingError {
    #[error("point {index} has {found} coordinates, expected {dim}")]
    WrongDimension {
        index: usize,
        dim: usize,
        found: usize,
    },
    #[error("points {0} and {1} coincide (distance {2:e})")]
    Coincident(usize, usize, f64),
}

/// One point of `R^dim` per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct Embedding {
    pub dim: usize,
    pub points: Vec<Point>,
}

#[derive(Deserialize)]
struct EmbeddingJson {
    dim: usize,
    points: Vec<Point>,
    #[serde(default)]
    graph: Option<Graph>,
}

impl Embedding {
    /// Validates dimensions and pairwise distinctness.
    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self, EmbeddingError> {
        let e = Embedding::unchecked(dim, points)?;
        if let Some((i, j, d)) = e.closest_pair().filter(|&(_, _, d)| d <= TOL_DISTINCT) {
            return Err(EmbeddingError::Coincident(i, j, d));
        }
        Ok(e)
    }

    /// Validates dimensions only; used for loading files that the verifier should judge.
    pub fn unchecked(dim: usize, points: Vec<Point>) -> Result<Self, EmbeddingError> {
        if let Some((index, p)) = points.iter().enumerate().find(|(_, p)| p.dim() != dim) {
            return Err(EmbeddingError::WrongDimension {
                index,
                dim,
                found: p.dim(),
            });
        }
        Ok(Embedding { dim, points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.points[i].distance(&self.points[j])
    }

    pub fn closest_pair(&self) -> Option<(usize, usize, f64)> {
        let mut best: Option<(usize, usize, f64)> = None;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let d = self.distance(i, j);
                if best.is_none_or(|b| d < b.2) {
                    best = Some((i, j, d));
                }
            }
        }
        best
    }

    /// Appends zero coordinates up to `dim`.
    pub fn padded(&self, dim: usize) -> Embedding {
        Embedding {
            dim,
            points: self.points.iter().map(|p| p.padded(dim)).collect(),
        }
    }

    /// `{"dim": d, "points": [[...], ...]}` with every coordinate at 17 significant digits.
    pub fn to_json(&self) -> String {
        self.to_json_with_graph(None)
    }

    /// As [`Embedding::to_json`], with an optional trailing `"graph"` member.
    pub fn to_json_with_graph(&self, graph: Option<&Graph>) -> String {
        let mut out = format!("{{\"dim\":{},\"points\":[", self.dim);
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push('[');
            for (k, c) in p.coords().iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                out.push_str(&format_coord(*c));
            }
            out.push(']');
        }
        out.push(']');
        if let Some(g) = graph {
            out.push_str(",\"graph\":");
            out.push_str(&g.to_json());
        }
        out.push('}');
        out
    }

    /// Parses an embedding document; a `"graph"` member, when present, is returned too.
    pub fn from_json(s: &str) -> Result<(Embedding, Option<Graph>), EmbeddingParseError> {
        let raw: EmbeddingJson = serde_json::from_str(s)?;
        let e = Embedding::unchecked(raw.dim, raw.points)?;
        Ok((e, raw.graph))
    }
}

#[derive(Debug, Error)]
pub enum EmbeddingParseError {
    #[error("malformed embedding JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] EmbeddingError),
}

/// Scientific notation with 17 significant digits.
pub fn format_coord(x: f64) -> String {
    format!("{x:.16e}")
}
