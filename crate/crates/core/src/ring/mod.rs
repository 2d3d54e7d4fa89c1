//! Coefficient rings: exact rationals, Laurent polynomials in `u = y^{1/2}`
//! and `t`, and the fraction field of the `u`-ring.

mod fraction;
mod laurent;
mod rational;

pub use fraction::UFraction;
pub use laurent::{Laurent, TLaurent, ULaurent, VPoly, VarDisplay};
pub use rational::{binomial, Rational};

use std::fmt;

use crate::error::Result;

/// A commutative Q-algebra with exact arithmetic.
///
/// Everything in this crate is built on this trait: the series type is
/// generic over it and is itself an instance, so truncated series can be
/// nested (a `q`-series whose coefficients are `t`-series over `ULaurent`).
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    /// `self += a * b`; the convolution kernels call this in their inner loop.
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self = self.add(&a.mul(b));
    }

    /// `sum a_i * b_i`. Types with expensive normalization override this to
    /// normalize once per sum.
    fn dot<'a>(pairs: impl Iterator<Item = (&'a Self, &'a Self)>) -> Self {
        let mut acc = Self::zero();
        for (a, b) in pairs {
            acc.add_mul(a, b);
        }
        acc
    }

    fn add_assign(&mut self, other: &Self) {
        *self = self.add(other);
    }

    fn sub_assign(&mut self, other: &Self) {
        *self = self.sub(other);
    }

    fn from_rational(r: &Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from(n))
    }

    /// Multiplication by a scalar from Q.
    fn scale(&self, r: &Rational) -> Self;

    /// Exact division: returns `c` with `c * d == self`, or `NonDivisible`.
    fn div_exact(&self, d: &Self) -> Result<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Whether products of this type are expensive enough to be worth
    /// splitting across threads.
    const HEAVY: bool = false;
}

/// Implements the std operator traits for a `Coeff` type by delegation.
macro_rules! forward_ops {
    ($t:ty) => {
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                $crate::ring::Coeff::add(&self, &o)
            }
        }
        impl<'a> std::ops::Add<&'a $t> for &'a $t {
            type Output = $t;
            fn add(self, o: &'a $t) -> $t {
                $crate::ring::Coeff::add(self, o)
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                $crate::ring::Coeff::sub(&self, &o)
            }
        }
        impl<'a> std::ops::Sub<&'a $t> for &'a $t {
            type Output = $t;
            fn sub(self, o: &'a $t) -> $t {
                $crate::ring::Coeff::sub(self, o)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                $crate::ring::Coeff::mul(&self, &o)
            }
        }
        impl<'a> std::ops::Mul<&'a $t> for &'a $t {
            type Output = $t;
            fn mul(self, o: &'a $t) -> $t {
                $crate::ring::Coeff::mul(self, o)
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::ring::Coeff::neg(&self)
            }
        }
        impl<'a> std::ops::Neg for &'a $t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::ring::Coeff::neg(self)
            }
        }
    };
}
pub(crate) use forward_ops;
