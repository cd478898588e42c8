//! Exact computations for singularities cut out by minors and Pfaffians.
//!
//! Everything works over the rationals with certified truncated linear algebra;
//! no floating point is used anywhere.
#![no_std]

extern crate alloc;

pub mod detideal;
pub mod fm;
pub mod geom;
pub mod invariants;
pub mod error;
pub mod jetlin;
pub mod linalg;
pub mod matrix;
pub mod ring;
pub mod scalar;
pub mod table;
pub mod tangent;
pub mod tjurina;
mod univar;

pub use error::{Error, Result};
pub use jetlin::{ColengthConfig, ColengthResult, JetSpan, ModuleElement};
pub use ring::{Monomial, Poly, VariableSet, WeightVector};
pub use scalar::Rational;
pub use matrix::{MatrixGerm, MatrixKind};
pub use tangent::{EquivalenceGroup, TangentSettings};
