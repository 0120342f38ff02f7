//! Exact coefficient arithmetic.
//!
//! Everything above this layer computes over [`RationalFunction`], the field
//! `Q(params)` of rational functions in the model's declared parameters. A
//! model without parameters simply never leaves the constant subfield `Q`.

mod ratfun;
mod rational;
mod sparse;

pub use ratfun::RationalFunction;
pub use rational::Rational;
pub use sparse::{Exponents, SparsePoly};

use std::fmt::Debug;

/// A commutative field with exact arithmetic.
///
/// The methods take references so that big-number coefficients are never
/// moved implicitly; the `_ref` suffix avoids clashing with `std::ops`.
pub trait Field: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn div_ref(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul_ref(&r))
    }

    fn from_i64(n: i64) -> Self;
}
