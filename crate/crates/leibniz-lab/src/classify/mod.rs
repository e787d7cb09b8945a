//! Classification engines: exhaustive enumeration of crossed systems, the
//! structured co-flag solver for one-dimensional kernels, the matrix-triple
//! family for metabelian products, and the metabelian presentation check.
//!
//! Every engine produces a [`ClassificationReport`]: the orbit count of the
//! quotient by the cohomologous relation, broken into components keyed by
//! the data that the relation can never change (the kernel bracket, the
//! weight pair, or the action pair), with canonical representatives.

mod coflag;
mod enumerate;
mod metacof;
mod tn;

pub use coflag::{
    coflag_algebra, coflag_data, coflag_ghl2, coflag_to_system, enumerate_pair_data, CoflagDatum,
    CoflagPairSpace,
};
pub use enumerate::{
    candidate_at, candidate_count, compute_ghl2, compute_ghl2_enumerated,
    enumerate_crossed_systems, parameter_count,
};
pub use metacof::{
    cf1_algebra, cf2_algebra, metacof_families, metacof_quotient, verify_metabelian_presentation,
    Cf1Member, Cf2Member, MetacofFamilies, MetacofQuotient,
};
pub use tn::{tn_algebra, tn_enumerate, tn_is_member, tn_quotient, tn_to_system, TnTriple};

use crate::algebra::{LeibnizAlgebra, StructureTensor};
use crate::crossed::PreCrossedDatum;
use crate::field::FieldSpec;
use crate::linalg::{MatrixS, VectorS};

/// Ceiling on per-component representative listings; components with more
/// classes report the count and a truncated list.
pub const REPRESENTATIVE_LIMIT: usize = 4096;

/// What a component of the quotient is keyed by.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentKey {
    /// Fixed bracket on the kernel (the coproduct over kernel structures).
    GBracket(StructureTensor),
    /// Fixed weight pair of a one-dimensional kernel.
    CoflagPair { lambda: VectorS, big_lambda: VectorS },
    /// Fixed action matrices of a metabelian product.
    ActionPair { a: MatrixS, b: MatrixS },
}

/// An orbit representative, stated both as a datum and as the structure
/// tensor of its crossed product.
#[derive(Clone, Debug)]
pub struct Representative {
    pub datum: PreCrossedDatum,
    pub product: StructureTensor,
}

#[derive(Clone, Debug)]
pub struct Component {
    pub key: ComponentKey,
    /// Valid systems in the component before the quotient.
    pub size: u128,
    /// Classes in the component; `None` when the class set is infinite
    /// (rational coefficients with a positive-dimensional quotient).
    pub class_count: Option<u128>,
    pub representatives: Vec<Representative>,
    pub representatives_truncated: bool,
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub l: LeibnizAlgebra,
    pub g_dim: usize,
    pub field: FieldSpec,
    pub total_candidates: u128,
    pub valid_count: u128,
    pub orbit_count: Option<u128>,
    pub components: Vec<Component>,
}

impl ClassificationReport {
    /// Sum of the component class counts; `None` if any component is
    /// infinite.
    pub fn sum_components(&self) -> Option<u128> {
        self.components.iter().try_fold(0u128, |acc, c| c.class_count.map(|n| acc + n))
    }
}
