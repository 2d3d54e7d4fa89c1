//! Precision-aware comparison of nested series and polynomials.
//!
//! Two values agree when every coefficient known on both sides is equal.
//! A disagreement is reported at its first monomial, outermost variable
//! first, so a failing identity points at the lowest order where it breaks.

use std::fmt;

use crate::qseries::Series;
use crate::ring::{Coeff, Laurent, Rational, UFraction};

/// The first monomial at which two values differ.
#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    /// Exponents, outermost variable first.
    pub exponents: Vec<i64>,
    pub left: String,
    pub right: String,
    /// Names for `exponents`, e.g. `["q", "t", "u"]`.
    pub vars: Vec<String>,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mono: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let v = self.vars.get(i).map(String::as_str).unwrap_or("?");
                format!("{v}^{e}")
            })
            .collect();
        let mono = if mono.is_empty() { "1".to_string() } else { mono.join(" ") };
        write!(f, "first difference at {mono}: {} vs {}", self.left, self.right)
    }
}

pub trait Approx {
    /// `(exponents, left, right)` at the first known coefficient that differs.
    fn first_mismatch(&self, other: &Self) -> Option<(Vec<i64>, String, String)>;
}

impl Approx for Rational {
    fn first_mismatch(&self, other: &Self) -> Option<(Vec<i64>, String, String)> {
        (self != other).then(|| (Vec::new(), self.to_string(), other.to_string()))
    }
}

impl Approx for UFraction {
    fn first_mismatch(&self, other: &Self) -> Option<(Vec<i64>, String, String)> {
        (self != other).then(|| (Vec::new(), self.to_string(), other.to_string()))
    }
}

fn nested<C: Coeff + Approx>(
    e: i64,
    a: Option<&C>,
    b: Option<&C>,
) -> Option<(Vec<i64>, String, String)> {
    let z = C::zero();
    let (mut ex, l, r) = a.unwrap_or(&z).first_mismatch(b.unwrap_or(&z))?;
    ex.insert(0, e);
    Some((ex, l, r))
}

impl<C: Coeff + Approx> Approx for Laurent<C> {
    fn first_mismatch(&self, other: &Self) -> Option<(Vec<i64>, String, String)> {
        if self.is_zero() && other.is_zero() {
            return None;
        }
        let lo = bound(self, other, Laurent::lo, i64::min);
        let hi = bound(self, other, Laurent::hi, i64::max);
        (lo..=hi).find_map(|e| nested(e, self.coeff_ref(e), other.coeff_ref(e)))
    }
}

fn bound<C: Coeff>(
    a: &Laurent<C>,
    b: &Laurent<C>,
    f: fn(&Laurent<C>) -> i64,
    pick: fn(i64, i64) -> i64,
) -> i64 {
    match (a.is_zero(), b.is_zero()) {
        (true, _) => f(b),
        (_, true) => f(a),
        _ => pick(f(a), f(b)),
    }
}

impl<C: Coeff + Approx> Approx for Series<C> {
    fn first_mismatch(&self, other: &Self) -> Option<(Vec<i64>, String, String)> {
        let prec = self.prec().min(other.prec());
        let los = [self.hi().map(|_| self.valuation()), other.hi().map(|_| other.valuation())];
        let lo = los.iter().flatten().min().copied()?;
        let hi = [self.hi(), other.hi()].iter().flatten().max().copied()?.min(prec - 1);
        (lo..=hi).find_map(|e| nested(e, self.coeff_ref(e), other.coeff_ref(e)))
    }
}

/// Compares two values, naming variables outermost first.
pub fn compare<T: Approx>(left: &T, right: &T, vars: &[&str]) -> Result<(), Mismatch> {
    match left.first_mismatch(right) {
        None => Ok(()),
        Some((exponents, l, r)) => Err(Mismatch {
            exponents,
            left: l,
            right: r,
            vars: vars.iter().map(|s| s.to_string()).collect(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::{QTSeries, EXACT};
    use crate::ring::{TLaurent, ULaurent};

    #[test]
    fn reports_first_monomial() {
        let a = QTSeries::new(0, vec![TLaurent::one(), TLaurent::x()], 4);
        let b = QTSeries::new(0, vec![TLaurent::one(), TLaurent::t(1)], EXACT);
        let m = compare(&a, &b, &["q", "t", "u"]).unwrap_err();
        assert_eq!(m.exponents, vec![1, -1, 0]);
        assert_eq!(m.to_string(), "first difference at q^1 t^-1 u^0: 1 vs 0");
        assert!(compare(&a, &a.truncate(2), &["q", "t", "u"]).is_ok());
    }

    #[test]
    fn nested_truncation_is_respected() {
        let t1 = Series::<ULaurent>::new(0, vec![ULaurent::one(); 3], 3);
        let t2 = Series::<ULaurent>::new(0, vec![ULaurent::one(); 5], 5);
        let a = Series::<Series<ULaurent>>::constant(t1);
        let b = Series::<Series<ULaurent>>::constant(t2);
        assert!(compare(&a, &b, &["q", "t", "u"]).is_ok());
    }
}
