mod algebra;
mod cartan;
mod matrix_model;
mod module;
pub mod torus;

pub use algebra::{sl2, su2, AlgebraDocument, BracketEntry, LieAlgebra};
pub use cartan::{CartanDecomposition, DecompositionDocument};
pub use matrix_model::{ComplexMatrix, MatrixLieAlgebra};
pub use module::{CoefficientModule, ModuleDocument};
pub use torus::{find_weight_frame, WeightFrame};
