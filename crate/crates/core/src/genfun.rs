//! The generating series `A`, `K`, `H`, `X`, the change of variables
//! between `x` and `q`, and their Euler (`y = 1`) specializations.
//!
//! `A` and `H` have Laurent-polynomial `t`-coefficients. `K` has a genuine
//! Laurent series in `t` at every power of `q` (its `q^-1` term is `1/x`),
//! so it is stored as `Series<TSeries>` truncated at a `t`-window.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

use crate::check::{compare, Mismatch};
use crate::error::{Error, Result};
use crate::forms::{self, divisors, ThetaArg, ThetaFactored, ThetaRatio};
use crate::invariants::abelian_fg;
use crate::qseries::{QSeries, QTSeries, Series, TSeries, XSeries};
use crate::ring::{Coeff, Rational, TLaurent, UFraction, ULaurent};

/// `q`-series whose coefficients are Laurent series in `t`.
pub type KSeries = Series<TSeries>;

const VARS: [&str; 3] = ["q", "t", "u"];

type Cache<K, V> = OnceLock<Mutex<HashMap<K, Arc<V>>>>;

fn cached<K, V>(cell: &'static Cache<K, V>, key: K, f: impl FnOnce() -> Result<V>) -> Result<Arc<V>>
where
    K: Eq + Hash + Clone,
{
    let map = cell.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let v = Arc::new(f()?);
    map.lock().unwrap().insert(key, v.clone());
    Ok(v)
}

fn mismatch_err(what: &str, m: Mismatch) -> Error {
    Error::IdentityFailed(format!("{what}: {m}"))
}

/// `[d]_{t y^{1/2}} [d]_{t y^{-1/2}} = sum_{j,k<d} t^{d-1-j-k} u^{k-j}`.
fn shifted_quantum_pair(d: i64) -> TLaurent {
    let mut terms = Vec::new();
    for j in 0..d {
        for k in 0..d {
            terms.push((d - 1 - j - k, ULaurent::u(k - j)));
        }
    }
    TLaurent::from_terms(terms)
}

/// `A = x sum n^2 [d]_y [d]_{ty^{1/2}} [d]_{ty^{-1/2}} q^{nd}`.
pub fn a_product_form(order: i64) -> QTSeries {
    let x = TLaurent::x();
    QTSeries::from_fn(1, order + 1, |m| {
        let mut acc = TLaurent::zero();
        for d in divisors(m) {
            let n2 = Rational::from((m / d) * (m / d));
            let qd = TLaurent::from_u(ULaurent::quantum_int(d).scale(&n2));
            acc.add_assign(&qd.mul(&shifted_quantum_pair(d)));
        }
        acc.mul(&x)
    })
}

/// `A = sum n^2 [d]_y (t^d + t^-d - u^d - u^-d) q^{nd}`.
pub fn a_divisor_form(order: i64) -> QTSeries {
    QTSeries::from_fn(1, order + 1, |m| {
        let mut acc = TLaurent::zero();
        for d in divisors(m) {
            let n2 = Rational::from((m / d) * (m / d));
            let bracket = TLaurent::t(d)
                .add(&TLaurent::t(-d))
                .sub(&TLaurent::from_u(ULaurent::u(d).add(&ULaurent::u(-d))));
            let qd = TLaurent::from_u(ULaurent::quantum_int(d).scale(&n2));
            acc.add_assign(&qd.mul(&bracket));
        }
        acc
    })
}

/// `A = (A(t y^{1/2}) + A(y^{1/2}/t) - A(y)) / (y^{1/2} - y^{-1/2})`, with
/// the division required to be exact.
pub fn a_lattice_form(order: i64) -> Result<QTSeries> {
    let sum = forms::a_lattice_at(ThetaArg::TY, order)
        .add(&forms::a_lattice_at(ThetaArg::YT, order))
        .sub(&forms::a_lattice_at(ThetaArg::Y, order));
    let s = TLaurent::from_u(ULaurent::u_minus_uinv());
    sum.try_map_coeffs(|c| c.div_exact(&s))
}

/// `A = sum_g f_g q^{g-1}` from the genus formula.
pub fn a_fg_form(order: i64) -> QTSeries {
    QTSeries::from_fn(1, order + 1, |m| abelian_fg(m + 1))
}

/// The four constructions of `A` through `q^order`.
pub fn a_constructions(order: i64) -> Result<[QTSeries; 4]> {
    Ok([
        a_product_form(order),
        a_divisor_form(order),
        a_lattice_form(order)?,
        a_fg_form(order),
    ])
}

/// Restricts every coefficient to `|t-exponent| <= window`.
pub fn t_window(s: &QTSeries, window: i64) -> QTSeries {
    s.map_coeffs(|c| {
        TLaurent::from_terms(c.terms().filter(|(e, _)| e.abs() <= window).map(|(e, c)| (e, c.clone())))
    })
}

/// Checks that the four constructions agree on the `t`-window.
pub fn check_a_constructions(order: i64, window: i64) -> Result<()> {
    let [p, d, l, f] = a_constructions(order)?;
    let base = t_window(&d, window);
    for (name, other) in [("product form", p), ("lattice form", l), ("genus formula", f)] {
        compare(&base, &t_window(&other, window), &VARS).map_err(|m| mismatch_err(name, m))?;
    }
    Ok(())
}

static A_CACHE: Cache<i64, QTSeries> = OnceLock::new();
static K_CACHE: Cache<(i64, i64), KSeries> = OnceLock::new();

/// `A` through `q^order`, after checking that its four constructions agree
/// and that the `q^{g-1}` coefficient has `t`-support in `|e| <= g-1`.
pub fn series_a(order: i64) -> Result<Arc<QTSeries>> {
    if order < 1 {
        return Err(Error::InvalidArgument(format!("order must be >= 1, got {order}")));
    }
    cached(&A_CACHE, order, || {
        check_a_constructions(order, order + 1)?;
        let a = a_divisor_form(order);
        for (m, c) in a.terms() {
            if !c.is_zero() && (c.lo() < -m || c.hi() > m) {
                return Err(Error::DegreeOverflow { degree: c.hi().max(-c.lo()), allowed: m });
            }
        }
        Ok(a)
    })
}

/// `K = (y^{-1/2} - y^{1/2}) theta'(0)^3 / (Delta theta(y^{1/2}/t) theta(t y^{1/2}) theta(y))`
/// through `q^order`, each coefficient known through `t^t_order`.
pub fn series_k(order: i64, t_order: i64) -> Result<Arc<KSeries>> {
    if order < -1 {
        return Err(Error::InvalidArgument(format!("order must be >= -1, got {order}")));
    }
    cached(&K_CACHE, (order, t_order), || {
        let o = order + 1;
        let num = ThetaFactored::linear_factor(TLaurent::from_u(ULaurent::u_minus_uinv().neg()))
            .mul(&ThetaFactored::theta_prime_zero(o).pow(3));
        let den = ThetaFactored::discriminant(o)
            .mul(&ThetaFactored::theta(ThetaArg::YT, o))
            .mul(&ThetaFactored::theta(ThetaArg::TY, o))
            .mul(&ThetaFactored::theta(ThetaArg::Y, o));
        // coefficients at higher q-powers have lower t-valuation, so the
        // internal window is widened by the q-order
        let k = ThetaRatio::new(num, den).assemble_expanded(t_order + order + 2)?;
        k.try_map_coeffs(|c| {
            if c.prec() <= t_order {
                Err(Error::InsufficientPrecision { known: c.prec(), needed: t_order + 1 })
            } else {
                Ok(c.truncate(t_order + 1))
            }
        })
    })
}

/// `H = D^{-1} A`.
pub fn series_h(order: i64) -> Result<QTSeries> {
    series_a(order)?.dq_inv()
}

/// `X = q(H)`: the genus series `q(x) = x / X_{-y}(x)` composed with `H`.
pub fn series_x(order: i64) -> Result<QTSeries> {
    let cov = change_of_variable(order, order)?;
    QTSeries::compose_with(&cov.q_of_x_laurent, |c| TLaurent::from_u(c.clone()), &series_h(order)?)
}

/// `x(q) = sum [n]_y q^n / n` and its compositional inverse.
#[derive(Clone, Debug)]
pub struct ChangeOfVariable {
    pub x_of_q: QSeries,
    /// `q(x) = y^{1/2} (1 - e^{sx}) / (1 - y e^{sx})`, `s = y^{1/2} - y^{-1/2}`.
    pub q_of_x: XSeries,
    /// `q_of_x` with its coefficients cleared to Laurent polynomials.
    pub q_of_x_laurent: QSeries,
}

/// `x(q)` through `q^order`.
pub fn x_of_q(order: i64) -> QSeries {
    QSeries::from_fn(1, order + 1, |n| ULaurent::quantum_int(n).scale(&Rational::new(1, n)))
}

/// The closed form of `q(x)` through `x^order`, over the fraction field.
pub fn q_of_x_closed(order: i64) -> Result<XSeries> {
    let s = UFraction::from(ULaurent::u_minus_uinv());
    let y = UFraction::from(ULaurent::u(2));
    let e = XSeries::monomial(s, 1).truncate(order + 1).exp()?;
    let one = XSeries::one();
    let num = one.sub(&e).mul_coeff(&UFraction::from(ULaurent::u(1)));
    let den = one.sub(&e.mul_coeff(&y));
    num.div(&den)
}

/// Both routes to `q(x)`: Newton inversion of `x(q)` and the closed form.
pub fn change_of_variable(order: i64, x_order: i64) -> Result<ChangeOfVariable> {
    if order < 1 || x_order < 1 {
        return Err(Error::InvalidArgument("orders must be >= 1".into()));
    }
    let xq = x_of_q(order);
    let closed = q_of_x_closed(x_order)?;
    let cleared = closed.try_map_coeffs(|c| c.try_to_laurent())?;
    let newton = x_of_q(x_order).comp_inverse()?;
    compare(&cleared, &newton, &["x", "u"]).map_err(|m| mismatch_err("q(x) closed form vs inversion", m))?;
    Ok(ChangeOfVariable { x_of_q: xq, q_of_x: closed, q_of_x_laurent: cleared })
}

/// Surfaces with numerically trivial canonical class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Surface {
    Abelian,
    K3,
}

impl Surface {
    /// `chi(O_S)`.
    pub fn chi(self) -> i64 {
        match self {
            Surface::Abelian => 0,
            Surface::K3 => 2,
        }
    }

    /// Codimension `delta = chi(L) - 1 - k` of a system of genus `g` curves.
    pub fn delta(self, g: i64, k: i64) -> i64 {
        g - 2 + self.chi() - k
    }
}

/// Which invariants the combinator computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `chi_{-y}` of relative Hilbert schemes over a codimension-`k` system.
    PointConditions,
    /// Integrals against `H^k` over the complete system.
    Hyperplane,
}

/// `X^k A` (abelian) or `X^k K` (K3), with `H` in place of `X` for the
/// hyperplane variant. Returned with `t`-series coefficients so both
/// surfaces share a type; for abelian surfaces they are exact.
pub fn ktrivial_genfun(surface: Surface, k: u32, variant: Variant, order: i64, t_order: i64) -> Result<KSeries> {
    // K has a pole at q^-1, so its cofactor needs two more orders
    let o = order.max(1) + 2;
    let base = match variant {
        Variant::PointConditions => series_x(o)?,
        Variant::Hyperplane => series_h(o)?,
    };
    let lift = |s: &QTSeries| s.map_coeffs(TSeries::from_laurent);
    let pk = lift(&base).pow(k as i64)?;
    match surface {
        Surface::Abelian => Ok(pk.mul(&lift(&*series_a(order.max(1))?)).truncate(order + 1)),
        Surface::K3 => Ok(pk.mul(&*series_k(order, t_order)?).truncate(order + 1)),
    }
}

/// `D log(theta'(0) / theta(t))`, the `y = 1` value of `H`.
pub fn h_euler(order: i64) -> Result<QTSeries> {
    Ok(ThetaFactored::theta_prime_zero(order)
        .dlog()?
        .sub(&ThetaFactored::theta(ThetaArg::T, order).dlog()?))
}

/// `u = 1` on every coefficient of a nested `t`-series.
pub fn k_at_u_one(k: &KSeries) -> KSeries {
    k.map_coeffs(|c| c.map_coeffs(|p| ULaurent::constant(p.at_one())))
}

/// Checks `A|_{y=1} = DD log(theta'(0)/theta(t))`.
pub fn check_a_euler(order: i64) -> std::result::Result<(), String> {
    let h1 = h_euler(order).map_err(|e| e.to_string())?;
    let a = series_a(order).map_err(|e| e.to_string())?;
    let a1 = a.map_coeffs(TLaurent::at_u_one);
    compare(&a1, &h1.dq(), &VARS).map_err(|m| m.to_string())
}

/// Checks `H|_{y=1} = D log(theta'(0)/theta(t))`.
pub fn check_h_euler(order: i64) -> std::result::Result<(), String> {
    let h1 = h_euler(order).map_err(|e| e.to_string())?;
    let h = series_h(order).map_err(|e| e.to_string())?;
    compare(&h.map_coeffs(TLaurent::at_u_one), &h1, &VARS).map_err(|m| m.to_string())
}

/// Checks `K|_{y=1} phi_{10,1} = 1`.
pub fn check_k_euler(order: i64, t_order: i64) -> std::result::Result<(), String> {
    let k = series_k(order, t_order).map_err(|e| e.to_string())?;
    let phi = forms::phi_10_1(order + 1).map_coeffs(TSeries::from_laurent);
    let prod = k_at_u_one(&k).mul(&phi).truncate(order + 1);
    compare(&prod, &KSeries::one(), &VARS).map_err(|m| m.to_string())
}

/// Checks `X|_{y=1} = H_1 / (1 + H_1)` with `H_1 = D log(theta'(0)/theta(t))`.
pub fn check_x_euler(order: i64) -> std::result::Result<(), String> {
    let h1 = h_euler(order).map_err(|e| e.to_string())?;
    let want = h1.div(&QTSeries::one().add(&h1)).map_err(|e| e.to_string())?;
    let x = series_x(order).map_err(|e| e.to_string())?;
    compare(&x.map_coeffs(TLaurent::at_u_one), &want, &VARS).map_err(|m| m.to_string())
}

/// `(H_1/(1+H_1))^k = sum_m (-1)^m C(m+k-1, k-1) H_1^{m+k}` through `q^order`.
/// `flip_signs` drops the `(-1)^m` as a negative control.
pub fn mpt_check(k: u32, order: i64, flip_signs: bool) -> std::result::Result<(), Mismatch> {
    let h1 = h_euler(order).expect("theta quotient");
    let ratio = h1.div(&QTSeries::one().add(&h1)).expect("unit constant term");
    let lhs = ratio.pow(k as i64).expect("power").truncate(order + 1);
    let k = k as i64;
    let mut rhs = QTSeries::zero_to(order + 1);
    if k == 0 {
        rhs = QTSeries::one().truncate(order + 1);
    } else {
        // H_1 = O(q), so powers above the order vanish
        for m in 0..=(order - k).max(0) {
            let sign = if m % 2 == 1 && !flip_signs { -1 } else { 1 };
            let c = Rational::binomial(m + k - 1, k - 1).mul(&Rational::from(sign));
            let term = h1.pow(m + k).expect("power").scale(&c);
            rhs = rhs.add(&term.truncate(order + 1));
        }
    }
    compare(&lhs, &rhs, &VARS)
}

/// Checks `D H = A` and `x(X) = H` through `q^order`.
pub fn check_hx(order: i64) -> std::result::Result<(), String> {
    let a = series_a(order).map_err(|e| e.to_string())?;
    let h = series_h(order).map_err(|e| e.to_string())?;
    compare(&h.dq(), &a, &VARS).map_err(|m| format!("D(H) vs A: {m}"))?;
    let x = series_x(order).map_err(|e| e.to_string())?;
    let xq = x_of_q(order);
    let back = QTSeries::compose_with(&xq, |c| TLaurent::from_u(c.clone()), &x).map_err(|e| e.to_string())?;
    compare(&back, &h, &VARS).map_err(|m| format!("x(X) vs H: {m}"))
}

/// `A / x`, `H / x` at `t = y^{1/2}`: these give `D(tilde DG2)` and `tilde DG2`.
pub fn divide_x_at_t_u(s: &QTSeries) -> Result<QSeries> {
    let x = TLaurent::x();
    s.try_map_coeffs(|c| Ok(c.div_exact(&x)?.at_t_u_power(1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_low_coefficients() {
        let a = series_a(6).unwrap();
        assert_eq!(a.coeff(1).unwrap(), TLaurent::x());
        // t^0 q^1 is the normalized chi_{-y} of a genus-2 curve: -(u + 1/u)
        assert_eq!(a.coeff(1).unwrap().coeff(0), ULaurent::u_plus_uinv().neg());
        // direct sum at u = 1: sum_{nd=2} n^2 d (t^d + t^-d - 2)
        let at1 = a.coeff(2).unwrap().at_u_one();
        let want = TLaurent::from_terms([(2, 2), (1, 4), (0, -12), (-1, 4), (-2, 2)].map(|(e, c)| (e, ULaurent::int(c))));
        assert_eq!(at1, want);
    }

    #[test]
    fn four_constructions_agree() {
        check_a_constructions(8, 20).unwrap();
    }

    #[test]
    fn a_symmetric_and_vanishes_at_t_u() {
        let a = series_a(8).unwrap();
        for (_, c) in a.terms() {
            assert!(c.is_t_symmetric());
            assert!(c.at_t_u_power(1).is_zero());
        }
    }

    #[test]
    fn k_q_minus_one_is_inverse_x() {
        let k = series_k(2, 10).unwrap();
        let lead = k.coeff(-1).unwrap();
        for n in 0..6 {
            assert_eq!(lead.coeff(n + 1).unwrap(), ULaurent::quantum_int(n + 1));
        }
        // independent oracle: geometric expansion of t / ((1 - tu)(1 - t/u))
        let g1 = TSeries::from_fn(0, 12, ULaurent::u);
        let g2 = TSeries::from_fn(0, 12, |j| ULaurent::u(-j));
        let oracle = g1.mul(&g2).shift(1);
        assert!(compare(&lead, &oracle, &["t", "u"]).is_ok());
    }

    #[test]
    fn h_and_x_start_with_x() {
        let h = series_h(5).unwrap();
        let x = series_x(5).unwrap();
        assert_eq!(h.coeff(0).unwrap(), TLaurent::zero());
        assert_eq!(h.coeff(1).unwrap(), TLaurent::x());
        assert_eq!(x.coeff(1).unwrap(), TLaurent::x());
        check_hx(6).unwrap();
    }

    #[test]
    fn change_of_variable_examples() {
        let cov = change_of_variable(6, 6).unwrap();
        assert_eq!(cov.x_of_q.coeff(2).unwrap(), ULaurent::u_plus_uinv().scale(&Rational::new(1, 2)));
        assert_eq!(cov.q_of_x_laurent.coeff(1).unwrap(), ULaurent::one());
        assert_eq!(cov.q_of_x_laurent.coeff(2).unwrap(), ULaurent::u_plus_uinv().scale(&Rational::new(-1, 2)));
        // y = 1: [n]_1 = n, so x(q) = q/(1-q) and q(x) = x/(1+x)
        for n in 1..=6 {
            assert_eq!(cov.x_of_q.coeff(n).unwrap().at_one(), Rational::one());
            let want = Rational::from(if n % 2 == 1 { 1 } else { -1 });
            assert_eq!(cov.q_of_x_laurent.coeff(n).unwrap().at_one(), want);
        }
    }

    #[test]
    fn euler_specializations() {
        check_a_euler(6).unwrap();
        check_h_euler(6).unwrap();
        check_x_euler(6).unwrap();
        check_k_euler(5, 14).unwrap();
    }

    #[test]
    fn mpt_expansion() {
        for k in 0..=3 {
            mpt_check(k, 6, false).unwrap();
        }
        assert!(mpt_check(2, 6, true).is_err());
    }

    #[test]
    fn t_u_specializations() {
        let a = series_a(6).unwrap();
        let h = series_h(6).unwrap();
        let dg = forms::tilde_dg2(6);
        assert_eq!(divide_x_at_t_u(&a).unwrap(), dg.dq());
        assert_eq!(divide_x_at_t_u(&h).unwrap(), dg);
    }

    #[test]
    fn ktrivial_trivial_cases() {
        let a = series_a(5).unwrap();
        let g = ktrivial_genfun(Surface::Abelian, 0, Variant::PointConditions, 5, 10).unwrap();
        assert_eq!(g, a.map_coeffs(TSeries::from_laurent));
        let g1 = ktrivial_genfun(Surface::Abelian, 1, Variant::PointConditions, 5, 10).unwrap();
        assert_eq!(g1.valuation(), 2);
        let k = series_k(3, 10).unwrap();
        let g = ktrivial_genfun(Surface::K3, 0, Variant::Hyperplane, 3, 10).unwrap();
        assert_eq!(g, *k);
    }
}
