//! Locally finite infinite graphs given by neighbourhood functions, worked on through finite
//! truncations: boundary-linked decompositions, immersions, and the inductive orientation
//! loop over a growing exhaustion.

mod component;
mod decompose;
mod exhaustion;
mod generators;
mod immersion;
mod raygraph;
mod truncate;

pub use decompose::{
    decompose, decompose_with, fixed_set_obstruction, BoundaryLinkedComponent,
    ComponentSummary, DecomposeOptions, Decomposition, Obstruction,
};
pub use exhaustion::{
    check_invariants, connectivity_gate, inductive_step, run_simulation, stage_zero,
    vertex_order, ExhaustionState, InvariantReport, SimulationOptions, SimulationRun,
    StageCertificate, StateSnapshot,
};
pub use generators::{Generator, GeneratorKind, DEFAULT_REGION_RESOLUTION};
pub use immersion::{
    build_immersion, build_immersion_with, verify_immersion, ImmersionCertificate,
    ImmersionCheck, ImmersionOptions, ImmersionStats, Realization,
};
pub use raygraph::{ray_graph, DEFAULT_RAY_THRESHOLD};
pub use truncate::{classify_component, truncate, truncate_bounded, Truncation};

use crate::error::Result;
use crate::multigraph::{EdgeId, VertexId};
use serde::{Deserialize, Serialize};

/// Identifier of an end, or of an end region for generators with uncountably many ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EndId(pub u64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EndCount {
    Finite(usize),
    Countable,
    Uncountable,
}

/// A connected, locally finite graph presented by its neighbourhoods, with its end
/// structure declared rather than inferred.
pub trait LazyGraph: Send + Sync {
    fn name(&self) -> String;

    fn root(&self) -> VertexId;

    /// Incident edges with their other ends; finite, symmetric, deterministic ids.
    fn neighbors(&self, v: VertexId) -> Vec<(EdgeId, VertexId)>;

    /// Truncation level: the ball of depth `d` is every vertex of level at most `d`.
    /// Adjacent vertices differ in level by at most one and every ball is connected.
    fn level(&self, v: VertexId) -> u32;

    fn label(&self, v: VertexId) -> String;

    fn end_count(&self) -> EndCount;

    /// The end (or end region) a frontier vertex leads towards.
    fn region(&self, v: VertexId) -> EndId;

    /// Level from which `region` no longer refines as vertices get deeper.
    fn region_level(&self) -> u32 {
        0
    }

    /// The first `len` vertices of a ray belonging to `end`.
    fn canonical_ray(&self, end: EndId, len: usize) -> Result<Vec<VertexId>>;
}
