//! Exact solvers for robust submodular minimization: given several
//! submodular functions over one ground set, find a set within distance `d`
//! of some minimizer of each function.

pub mod cost;
pub mod error;
pub mod flow;
pub mod io;
pub mod lattice;
pub mod stats;
pub mod random;
pub mod reductions;
pub mod solvers;
pub mod submod;
pub mod subset;

pub use cost::{Cost, Rational};
pub use error::{Error, Result};
pub use flow::DiGraph;
pub use lattice::CompactLattice;
pub use submod::{CutFunction, ExplicitFamily, FunctionSpec};
pub use subset::Subset;
