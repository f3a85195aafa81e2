//! Positive integer edge weights that make a near-planar graph
//! crossing-critical, with replayable certificates for every step.
//!
//! Input is a simple graph `G` with an edge `uv` such that `G - uv` is a
//! cubic polyhedral graph and `G - {u, v}` is internally 3-connected. The
//! pipeline embeds `G - {u, v}`, balances its dual between the faces hosting
//! `u` and `v`, solves two small inequality systems for the spoke weights,
//! and scales everything to integers. [`certify`] re-derives every premise
//! from the weights alone and produces explicit drawings witnessing that
//! decrementing any edge weight lowers the crossing number.

pub mod balance;
pub mod canon;
pub mod certify;
pub mod connectivity;
pub mod embed;
pub mod families;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod paths;
pub mod synth;
pub mod validate;

pub use balance::{balanced_weights, harmonic_positions, verify_balanced, BalancedCertificate};
pub use certify::{certify_critical, check_conditions, ConditionReport, CriticalityReport};
pub use embed::{planar_embedding, AnchorFaces, CoreEmbedding, DualGraph, FaceSet, RotationSystem};
pub use graph::{
    multigraph_to_weighted, weighted_to_multigraph, Edge, GraphError, IntegerWeighting, Multigraph,
    SimpleGraph, VertexId,
};
pub use synth::{synthesize, SynthesisCertificate};
pub use validate::{validate_hypotheses, HypothesisReport};
