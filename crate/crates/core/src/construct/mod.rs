//! Explicit constructions: orthogonal-circle distance embeddings, faithful
//! bipartite embeddings on complementary spheres, and the sphere realisation
//! of set systems.

use thiserror::Error;

use crate::embedding::EmbeddingError;
use crate::geom::GeomError;
use crate::graph::GraphError;

pub mod bipartite;
pub mod circles;
pub mod hsystem;

pub use bipartite::{embed_bipartite_faithful, embed_bipartite_faithful_with, BipartiteParams};
pub use circles::{embed_colorable, embed_singleton_coloring};
pub use hsystem::{realize_hsystem, FlatnessBudget, HSystem, HSystemRealization};

#[derive(Debug, Error)]
pub enum EmbedError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error("precondition failed: {reason} (vertices {vertices:?})")]
    Precondition {
        reason: String,
        vertices: Vec<usize>,
    },
    #[error("construction failed after {attempts} attempts: {reason}")]
    ConstructionFailed { attempts: usize, reason: String },
}
