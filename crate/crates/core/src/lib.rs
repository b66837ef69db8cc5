//! Up-down colorings and up-down cocycle invariants of virtual links given as
//! signed Gauss codes, with certified lower bounds on Reidemeister-II moves.

pub mod cli;
pub mod cocycle;
pub mod coloring;
pub mod diagram;
pub mod fixtures;
pub mod invariant;
pub mod moves;

pub use cocycle::{CocycleError, CocycleTable};
pub use coloring::{Coloring, ColoringError, ColoringSpec};
pub use diagram::{Diagram, DiagramError, SemiArcId};
pub use invariant::{InvariantError, RiiBound, WeightMultiset};
pub use moves::{MoveDescriptor, MoveError, MoveKind};
