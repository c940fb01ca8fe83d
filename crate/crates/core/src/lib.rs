//! Solvers for the firefighting game on graphs, parameterized by the
//! distance to structured graph classes.
//!
//! * [`fire`]: the game itself and strategy validation.
//! * [`exact`]: exhaustive optimal solver, the reference for everything else.
//! * [`threshold`] and [`stars`]: FPT solvers for modulators to threshold
//!   graphs and to star forests.
//! * [`kernel`]: kernelization for modulators to a clique.
//! * [`modulator`]: finding modulators by branching on obstructions.
//! * [`reductions`]: gadget constructions from k-clique.
//! * [`generate`]: seeded instance generators.

pub mod error;
pub mod exact;
pub mod fire;
pub mod generate;
pub mod graph;
pub mod kernel;
pub mod modulator;
pub mod reductions;
pub mod stars;
pub mod threshold;

pub use error::{Error, Result};
pub use exact::{decide_saving_k, solve_exact, SolveResult};
pub use fire::{fast_validity_check, sav, simulate, SimOutcome, Strategy};
pub use graph::{ClassTag, Graph, Instance, Vertex, VertexSet};
