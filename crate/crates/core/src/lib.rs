//! Link-diagram invariants and integrability classification of submanifolds
//! of Euclidean space.
//!
//! The crate has two halves that meet in the classification engine:
//!
//! * **Diagrams.** [`diagram`] parses signed Gauss codes into immutable
//!   [`diagram::LinkDiagram`] values and [`moves`] rewrites them with
//!   Reidemeister moves. [`invariants`] computes the linking matrix, Whitney
//!   numbers, Seifert circles and the mod-2 normal classes of each component,
//!   culminating in the strong-integrability verdict for links in 3-space.
//!
//! * **Manifolds.** [`manifold`] is a small algebra of closed-manifold
//!   expressions (spheres, tori, lens spaces, surfaces, products, connected
//!   sums, opaque custom descriptions) with Z₂ homology, semicharacteristic
//!   and parallelizability operations. [`classify`] runs a fixed, cited rule
//!   base over an embedding context `L^k ⊂ E^n` and answers, with rule
//!   chains, whether the submanifold is weakly/strongly integrable, a
//!   complete intersection, totally weakly integrable, realizable as a
//!   foliation leaf, or critical for some potential.
//!
//! Everything is tri-state: `Unknown` is the honest default whenever no rule
//! in the base decides a property, and every decided answer carries the chain
//! of rules that produced it.

pub mod classify;
pub mod diagram;
pub mod dual_graph;
pub mod invariants;
pub mod manifold;
pub mod moves;
pub mod rules;
pub mod verdict;

pub use classify::{classify, EmbeddingContext};
pub use diagram::LinkDiagram;
pub use manifold::{ManifoldExpr, TriState};
pub use verdict::Verdict;
