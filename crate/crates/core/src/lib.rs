//! Tate-class dimensions of abelian varieties over finite fields, computed
//! exactly from their Weil polynomials, together with the effective bounds
//! and CM elliptic-curve experiments that go with them.
//!
//! The exact kernel ([`poly`], [`matrix`], [`cyclotomic`]) is generic over a
//! [`Ring`]; the numeric oracles ([`roots`]) and bound calculators
//! ([`bounds`]) are generic over a [`Real`]. The aliases below fix the
//! scalar types used throughout the rest of the crate.

pub mod arith;
pub mod bounds;
pub mod cmlab;
pub mod cyclotomic;
pub mod error;
pub mod matrix;
pub mod poly;
pub mod roots;
pub mod scalar;
pub mod tate;
pub mod weil;

pub(crate) mod serde_bigint {
    use num_bigint::BigInt;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }
}

pub use num_bigint::{BigInt, BigUint};

pub use error::{BoundsError, CmError, MatrixError, PolyError, TateError, WeilError};
pub use scalar::{MpFloat, Real, Ring};

/// Integer-coefficient polynomial, the common currency of the crate.
pub type IntPoly = poly::Poly<BigInt>;
/// Integer matrix (companion and compound matrices).
pub type IntMatrix = matrix::Matrix<BigInt>;

/// 128-bit MPFR float: default precision for Weil-polynomial root checks.
pub type Real128 = MpFloat<128>;
/// 256-bit MPFR float: working precision of every bound.
pub type Real256 = MpFloat<256>;
/// 512-bit MPFR float: doubled precision for stability checks.
pub type Real512 = MpFloat<512>;

pub use cyclotomic::{cyclotomic, cyclotomic_multiplicity};
pub use tate::{
    degree_bound, stable_tate_dim, tate_dim, tate_dim_numeric, tate_profile, TateProfile,
};
pub use weil::{base_change, h_charpoly, product_variety, validate_weil, CohomPoly, WeilPoly};
