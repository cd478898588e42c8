//! Hypersurface and complete-intersection invariants.

mod ade;
mod icis;
mod milnor;
mod quasi;
mod singular;

pub use ade::{ade_recognize, binary_cubic_factor_count, Family, SingularityLabel};
pub use icis::{milnor_icis, milnor_icis_with};
pub use milnor::{boundary_milnor, jacobian_ideal, milnor, tjurina_number, BoundaryMilnorTriple};
pub use quasi::{quasi_homogeneous, quasi_homogeneous_matrix, MatrixWeights};
pub use singular::{boundary_dimension, singular_milnor_hypersurface, SingularMilnor};

use crate::error::{Error, Result};
use crate::ring::Poly;

pub(crate) fn check_vanishes(f: &Poly) -> Result<()> {
    if !f.constant_term().is_zero() {
        return Err(Error::NonzeroConstant);
    }
    Ok(())
}
