//! Chevalley bases, the restricted Lie algebra structure and root-group actions.

mod algebra;
mod constants;
mod group;

pub use algebra::{LieAlgebra, LieVector, Scope};
pub use constants::{Extraspecial, StructureConstants};
pub use group::{GeneratorKind, GroupGenerator};
