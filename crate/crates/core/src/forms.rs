//! Theta functions and the modular building blocks: `theta`, `theta'(0)`,
//! `G2`, `Delta`, `phi_{10,1}`, `tilde Delta`, `tilde DG2`, and the
//! indefinite theta series `A(y, q)`.
//!
//! `theta(Y) = q^{1/8} Y^{-1/2} (Y - 1) prod (1-q^n)(1-q^n Y)(1-q^n/Y)` is
//! held in factored form: the fractional powers `q^{a/8}`, `u^{b/2}`,
//! `t^{c/2}` are integers on the side, and only balanced quotients are ever
//! turned into series. `theta_hat = theta / q^{1/8}` written in `u` has
//! integer exponents and is used directly where only `y` appears.
//!
//! All `order` arguments are inclusive: results are exact through `q^order`.

use crate::check::{compare, Mismatch};
use crate::error::{Error, Result};
use crate::qseries::{QSeries, QTSeries, RSeries, Series, TSeries};
use crate::ring::{Coeff, Rational, TLaurent, ULaurent};

/// The argument of a theta function, as a monomial in `t` and `u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaArg {
    /// `y = u^2`
    Y,
    /// `y_1 = t y^{1/2}`
    TY,
    /// `y_2 = y^{1/2} / t`
    YT,
    /// a formal variable `t`, used for the `y = 1` specializations
    T,
}

impl ThetaArg {
    /// `(a, b)` with the argument equal to `t^a u^b`.
    pub fn exponents(self) -> (i64, i64) {
        match self {
            ThetaArg::Y => (0, 2),
            ThetaArg::TY => (1, 1),
            ThetaArg::YT => (-1, 1),
            ThetaArg::T => (1, 0),
        }
    }

    pub fn monomial(self) -> TLaurent {
        let (a, b) = self.exponents();
        TLaurent::tu(a, b)
    }

    /// `Y d/dY` for this argument, acting on a `(t, u)`-polynomial.
    fn euler(self, p: &TLaurent) -> TLaurent {
        match self {
            ThetaArg::Y => p.map_coeffs(|c| c.y_derivative()),
            ThetaArg::TY | ThetaArg::T => {
                TLaurent::from_terms(p.terms().map(|(e, c)| (e, c.scale(&Rational::from(e)))))
            }
            ThetaArg::YT => {
                TLaurent::from_terms(p.terms().map(|(e, c)| (e, c.scale(&Rational::from(-e)))))
            }
        }
    }

    /// Eigenvalue of `Y d/dY` on the prefactor `u^{b/2} t^{c/2}`.
    fn prefactor_weight(self, u_halves: i64, t_halves: i64) -> Rational {
        match self {
            ThetaArg::Y => Rational::new(u_halves, 4),
            ThetaArg::TY | ThetaArg::T => Rational::new(t_halves, 2),
            ThetaArg::YT => Rational::new(-t_halves, 2),
        }
    }
}

/// `q^{eighths/8} u^{u_halves/2} t^{t_halves/2} * prod(linear) * body`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaFactored {
    pub eighths: i64,
    pub u_halves: i64,
    pub t_halves: i64,
    /// `q`-independent polynomial factors, kept apart so that quotients
    /// can cancel them exactly.
    pub linear: Vec<TLaurent>,
    pub body: QTSeries,
}

impl ThetaFactored {
    /// A plain series factor with no prefactor.
    pub fn plain(body: QTSeries) -> Self {
        Self { eighths: 0, u_halves: 0, t_halves: 0, linear: Vec::new(), body }
    }

    /// A constant polynomial factor.
    pub fn linear_factor(p: TLaurent) -> Self {
        Self { linear: vec![p], ..Self::plain(QTSeries::one()) }
    }

    /// `theta(arg)` from the product formula.
    pub fn theta(arg: ThetaArg, order: i64) -> Self {
        let (a, b) = arg.exponents();
        let body = lift_r(&euler_p(order)).mul(&pi_factor(arg, order));
        Self {
            eighths: 1,
            u_halves: -b,
            t_halves: -a,
            linear: vec![arg.monomial().sub(&TLaurent::one())],
            body,
        }
    }

    /// `theta(arg)` from the sum `sum (-1)^n q^{n(n+1)/2} Y^{n+1/2}`.
    pub fn theta_sum(arg: ThetaArg, order: i64) -> Self {
        let (a, b) = arg.exponents();
        let mut terms = Vec::new();
        let mut n: i64 = 0;
        while n * (n + 1) / 2 <= order {
            for m in [n, -n - 1] {
                let sign = if m.rem_euclid(2) == 0 { 1 } else { -1 };
                let c = TLaurent::tu(a * (m + 1), b * (m + 1)).scale(&Rational::from(sign));
                terms.push((n * (n + 1) / 2, c));
            }
            n += 1;
        }
        Self {
            eighths: 1,
            u_halves: -b,
            t_halves: -a,
            linear: Vec::new(),
            body: QTSeries::from_terms(terms, order + 1),
        }
    }

    /// `theta'(0) = q^{1/8} prod (1-q^n)^3`.
    pub fn theta_prime_zero(order: i64) -> Self {
        Self { eighths: 1, ..Self::plain(lift_r(&theta_prime_zero(order))) }
    }

    /// `Delta = q prod (1-q^n)^24`.
    pub fn discriminant(order: i64) -> Self {
        let p24 = euler_p(order).pow(24).expect("nonnegative power");
        Self { eighths: 8, ..Self::plain(lift_r(&p24)) }
    }

    /// The polynomial factors multiplied into the body.
    pub fn collapsed(&self) -> QTSeries {
        let lin = self.linear.iter().fold(TLaurent::one(), |acc, p| acc.mul(p));
        self.body.mul_coeff(&lin)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut linear = self.linear.clone();
        linear.extend(o.linear.iter().cloned());
        Self {
            eighths: self.eighths + o.eighths,
            u_halves: self.u_halves + o.u_halves,
            t_halves: self.t_halves + o.t_halves,
            linear,
            body: self.body.mul(&o.body),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::plain(QTSeries::one()), |acc, _| acc.mul(self))
    }

    /// `(Y d/dY)^k` with `Y` the given argument; the prefactor contributes
    /// its weight, so the result keeps the same prefactor.
    pub fn deriv(&self, arg: ThetaArg, k: u32) -> Self {
        let w = arg.prefactor_weight(self.u_halves, self.t_halves);
        let mut body = self.collapsed();
        for _ in 0..k {
            body = body.scale(&w).add(&body.map_coeffs(|c| arg.euler(c)));
        }
        Self { linear: Vec::new(), body, ..self.clone() }
    }

    /// `D log` of the represented function: `eighths/8 + D log(body)`; the
    /// polynomial factors and `u, t` prefactors are `q`-constants.
    pub fn dlog(&self) -> Result<QTSeries> {
        let shift = QTSeries::constant(TLaurent::constant(ULaurent::constant(Rational::new(
            self.eighths,
            8,
        ))));
        Ok(self.body.dlog()?.add(&shift))
    }
}

/// A quotient of factored thetas.
#[derive(Clone, Debug)]
pub struct ThetaRatio {
    pub num: ThetaFactored,
    pub den: ThetaFactored,
}

impl ThetaRatio {
    pub fn new(num: ThetaFactored, den: ThetaFactored) -> Self {
        Self { num, den }
    }

    /// `(q-shift, t^{c/2} u^{b/2})`, failing unless every fractional power
    /// cancels.
    fn prefactor(&self) -> Result<(i64, TLaurent)> {
        let a = self.num.eighths - self.den.eighths;
        let b = self.num.u_halves - self.den.u_halves;
        let c = self.num.t_halves - self.den.t_halves;
        if a.rem_euclid(8) != 0 || b.rem_euclid(2) != 0 || c.rem_euclid(2) != 0 {
            return Err(Error::PrefactorImbalance(format!(
                "q^({a}/8) u^({b}/2) t^({c}/2)"
            )));
        }
        Ok((a / 8, TLaurent::tu(c / 2, b / 2)))
    }

    /// Quotient of bodies (denominator body has a unit constant term) and
    /// the numerator's polynomial part with every exactly-dividing
    /// denominator factor cancelled. Returns the leftover denominator.
    fn reduce(&self) -> Result<(QTSeries, TLaurent, TLaurent)> {
        let (shift, mono) = self.prefactor()?;
        let body = self.num.body.div(&self.den.body)?.shift(shift);
        let mut lin = self.num.linear.iter().fold(mono, |acc, p| acc.mul(p));
        let mut rest = TLaurent::one();
        for f in &self.den.linear {
            match lin.div_exact(f) {
                Ok(qt) => lin = qt,
                Err(_) => rest = rest.mul(f),
            }
        }
        Ok((body, lin, rest))
    }

    /// The quotient as a `q`-series of Laurent polynomials; every
    /// denominator factor must cancel.
    pub fn assemble(&self) -> Result<QTSeries> {
        let (body, lin, rest) = self.reduce()?;
        let lin = lin.div_exact(&rest)?;
        Ok(body.mul_coeff(&lin))
    }

    /// The quotient with the uncancelled polynomial denominator expanded
    /// as a Laurent series in `t`, known below `t^t_prec` after the
    /// expansion (coefficients of higher `q`-powers may know less).
    pub fn assemble_expanded(&self, t_prec: i64) -> Result<Series<TSeries>> {
        let (body, lin, rest) = self.reduce()?;
        let lin_t = TSeries::from_laurent(&lin);
        let rest_t = TSeries::from_laurent(&rest);
        let ratio = lin_t.div(&rest_t.truncate(t_prec + rest.lo() + 1))?;
        Ok(body.map_coeffs(|c| TSeries::from_laurent(c).mul(&ratio)))
    }
}

/// `R -> C` coefficient embedding for rational series.
pub fn lift_r(s: &RSeries) -> QTSeries {
    s.map_coeffs(|r| TLaurent::constant(ULaurent::constant(r.clone())))
}

/// Embeds a `u`-series into `(t, u)`-series.
pub fn lift_u(s: &QSeries) -> QTSeries {
    s.map_coeffs(|c| TLaurent::constant(c.clone()))
}

/// Rational series as `u`-series.
pub fn r_to_u(s: &RSeries) -> QSeries {
    s.map_coeffs(|r| ULaurent::constant(r.clone()))
}

/// Projects a `(t, u)`-series with no `t`-dependence to a `u`-series.
pub fn drop_t(s: &QTSeries) -> Result<QSeries> {
    s.try_map_coeffs(|c| {
        c.t_constant()
            .ok_or_else(|| Error::InvalidArgument("series depends on t".into()))
    })
}

/// `P = prod_{n>0} (1 - q^n)` through `q^order`.
pub fn euler_p(order: i64) -> RSeries {
    let prec = order + 1;
    let mut p = RSeries::one().truncate(prec);
    for n in 1..prec {
        p = p.mul_sparse(&[(0, Rational::one()), (n, Rational::from(-1))]);
    }
    p
}

/// `Pi(Y) = prod_{n>0} (1 - q^n Y)(1 - q^n / Y)` through `q^order`.
pub fn pi_factor(arg: ThetaArg, order: i64) -> QTSeries {
    let prec = order + 1;
    let (a, b) = arg.exponents();
    let s = TLaurent::tu(a, b).add(&TLaurent::tu(-a, -b)).neg();
    let mut p = QTSeries::one().truncate(prec);
    for n in 1..prec {
        p = p.mul_sparse(&[(0, TLaurent::one()), (n, s.clone()), (2 * n, TLaurent::one())]);
    }
    p
}

/// `theta_hat'(0) = prod (1 - q^n)^3`, i.e. `theta'(0) / q^{1/8}`.
pub fn theta_prime_zero(order: i64) -> RSeries {
    euler_p(order).pow(3).expect("nonnegative power")
}

/// `theta_hat(y) = theta(y) / q^{1/8} = (u - 1/u) P Pi(y)`.
pub fn theta_hat(order: i64) -> QSeries {
    unfactor_y(&ThetaFactored::theta(ThetaArg::Y, order))
}

/// `theta_hat(y)` from the sum formula `sum (-1)^n q^{n(n+1)/2} u^{2n+1}`.
pub fn theta_hat_sum(order: i64) -> QSeries {
    unfactor_y(&ThetaFactored::theta_sum(ThetaArg::Y, order))
}

/// `k`-th `y d/dy` derivative of `theta_hat(y)`.
pub fn theta_hat_deriv(k: u32, order: i64) -> QSeries {
    unfactor_y(&ThetaFactored::theta(ThetaArg::Y, order).deriv(ThetaArg::Y, k))
}

/// Drops the `q^{1/8}` and folds `u^{b/2}` (b even) into a `u`-series.
fn unfactor_y(th: &ThetaFactored) -> QSeries {
    assert!(th.u_halves % 2 == 0 && th.t_halves == 0);
    let body = drop_t(&th.collapsed()).expect("y-argument theta has no t");
    body.map_coeffs(|c| c.shift(th.u_halves / 2))
}

/// Positive divisors of `m >= 1`.
pub(crate) fn divisors(m: i64) -> impl Iterator<Item = i64> {
    (1..=m).filter(move |d| m % d == 0)
}

/// `G2 = -1/24 + sum sigma_1(n) q^n`.
pub fn eisenstein_g2(order: i64) -> RSeries {
    RSeries::from_fn(0, order + 1, |n| {
        if n == 0 {
            Rational::new(-1, 24)
        } else {
            Rational::from(divisors(n).sum::<i64>())
        }
    })
}

/// `Delta = q prod (1-q^n)^24` through `q^order`.
pub fn discriminant(order: i64) -> RSeries {
    euler_p(order - 1).pow(24).expect("nonnegative power").shift(1)
}

/// `tilde Delta = q prod (1-q^n)^20 (1-q^n y)^2 (1-q^n/y)^2`.
pub fn tilde_delta(order: i64) -> QSeries {
    let p20 = r_to_u(&euler_p(order - 1).pow(20).expect("power"));
    let pi = drop_t(&pi_factor(ThetaArg::Y, order - 1)).expect("no t");
    p20.mul(&pi.mul(&pi)).shift(1)
}

/// `tilde Delta = Delta theta(y)^2 / ((y - 2 + 1/y) theta'(0)^2)`, assembled
/// from factored thetas.
pub fn tilde_delta_theta(order: i64) -> Result<QSeries> {
    let th = ThetaFactored::theta(ThetaArg::Y, order - 1);
    let num = ThetaFactored::discriminant(order - 1).mul(&th.pow(2));
    let y_term = TLaurent::from_u(ULaurent::u_minus_uinv().pow(2));
    let den = ThetaFactored::linear_factor(y_term)
        .mul(&ThetaFactored::theta_prime_zero(order - 1).pow(2));
    drop_t(&ThetaRatio::new(num, den).assemble()?)
}

/// `phi_{10,1}(t, q) = (t - 2 + 1/t) q prod (1-q^n)^20 (1-q^n t)^2 (1-q^n/t)^2`.
pub fn phi_10_1(order: i64) -> QTSeries {
    let p20 = lift_r(&euler_p(order - 1).pow(20).expect("power"));
    let pi = pi_factor(ThetaArg::T, order - 1);
    let x1 = TLaurent::t(1).add(&TLaurent::t(-1)).sub(&TLaurent::from_u(ULaurent::int(2)));
    p20.mul(&pi.mul(&pi)).mul_coeff(&x1).shift(1)
}

/// `tilde DG2 = sum_{n,d>0} n [d]_y^2 q^{nd}`.
pub fn tilde_dg2(order: i64) -> QSeries {
    QSeries::from_fn(0, order + 1, |m| {
        let mut acc = ULaurent::zero();
        for d in divisors(m) {
            let qd = ULaurent::quantum_int(d);
            acc.add_assign(&qd.mul(&qd).scale(&Rational::from(m / d)));
        }
        acc
    })
}

/// `tilde DG2 = D log(theta'(0) / theta(y)) / (y - 2 + 1/y)`.
pub fn tilde_dg2_theta(order: i64) -> Result<QSeries> {
    let dl = ThetaFactored::theta_prime_zero(order)
        .dlog()?
        .sub(&ThetaFactored::theta(ThetaArg::Y, order).dlog()?);
    let s2 = ULaurent::u_minus_uinv().pow(2);
    drop_t(&dl)?.try_map_coeffs(|c| c.div_exact(&s2))
}

/// `A(Y, q) = sum_{nd>0} sgn(d) n^2 Y^d q^{nd}` with the Laurent variable
/// standing for `Y`; substitute to evaluate at a monomial.
pub fn a_lattice_generic(order: i64) -> QSeries {
    QSeries::from_fn(1, order + 1, |m| {
        let mut acc = ULaurent::zero();
        for d in divisors(m) {
            let n2 = Rational::from((m / d) * (m / d));
            acc.add_assign(&ULaurent::from_terms([(d, n2.clone()), (-d, n2.neg())]));
        }
        acc
    })
}

/// `A(arg, q)` as a `(t, u)`-series.
pub fn a_lattice_at(arg: ThetaArg, order: i64) -> QTSeries {
    let target = arg.monomial();
    a_lattice_generic(order)
        .try_map_coeffs(|c| c.substitute(&target))
        .expect("monomial substitution")
}

/// `A(y, q)` from the lattice sum.
pub fn a_lattice(order: i64) -> QSeries {
    drop_t(&a_lattice_at(ThetaArg::Y, order)).expect("no t")
}

/// `A(y, q) = -(1/3) theta'''/theta - 2 G2 theta'/theta`.
pub fn a_theta(order: i64) -> Result<QSeries> {
    let th = theta_hat(order);
    let d1 = theta_hat_deriv(1, order);
    let d3 = theta_hat_deriv(3, order);
    let g2 = r_to_u(&eisenstein_g2(order));
    let num = d3.scale(&Rational::new(-1, 3)).sub(&g2.mul(&d1).scale(&Rational::from(2)));
    num.div(&th)
}

/// `(-c D theta' - 2 G2 theta') / theta`, with `D theta = q^{1/8}(D + 1/8)
/// theta_hat`. The heat equation `theta'' = 2 D theta` makes this equal to
/// `A(y, q)` for `c = 2/3`.
pub fn a_theta_heat(c: &Rational, order: i64) -> Result<QSeries> {
    let th = theta_hat(order);
    let d1 = theta_hat_deriv(1, order);
    let dd1 = shifted_d(&d1);
    let g2 = r_to_u(&eisenstein_g2(order));
    let num = dd1.scale(&c.neg()).sub(&g2.mul(&d1).scale(&Rational::from(2)));
    num.div(&th)
}

/// `(D + 1/8) f`: the action of `D` on `q^{1/8} f`, divided by `q^{1/8}`.
pub fn shifted_d(f: &QSeries) -> QSeries {
    f.dq().add(&f.scale(&Rational::new(1, 8)))
}

/// `theta_hat'' - c (D + 1/8) theta_hat`; vanishes for `c = 2`.
pub fn heat_residual(c: &Rational, order: i64) -> QSeries {
    theta_hat_deriv(2, order).sub(&shifted_d(&theta_hat(order)).scale(c))
}

/// Zagier's identity for `y_1 = t u`, `y_2 = u / t` in cleared form:
/// `P^3 tb(y_1 y_2)(y_1-1)(y_2-1) = tb(y_1) tb(y_2) [(y_1 y_2 - 1) -
/// (y_1-1)(y_2-1) sum sgn(d) y_1^n y_2^d q^{nd}]`, where
/// `tb(Y) = (Y-1) P Pi(Y)`. Every `q`-coefficient is a Laurent polynomial,
/// so the comparison is exact in `t`; `t_window` limits it to `|e| <= T`.
/// `with_sum = false` drops the lattice sum (a negative control).
pub fn zagier_check(order: i64, t_window: Option<i64>, with_sum: bool) -> std::result::Result<(), Mismatch> {
    let tb = |arg| ThetaFactored::theta(arg, order).collapsed();
    let y1m = ThetaArg::TY.monomial().sub(&TLaurent::one());
    let y2m = ThetaArg::YT.monomial().sub(&TLaurent::one());
    let p3 = lift_r(&theta_prime_zero(order));
    let lhs = p3.mul(&tb(ThetaArg::Y)).mul_coeff(&y1m.mul(&y2m));
    let mut sum = QTSeries::zero_to(order + 1);
    if with_sum {
        let mut terms = Vec::new();
        for m in 1..=order {
            for d in divisors(m) {
                let n = m / d;
                // (n, d) and (-n, -d): y_1^n y_2^d = t^{n-d} u^{n+d}
                terms.push((m, TLaurent::tu(n - d, n + d)));
                terms.push((m, TLaurent::tu(d - n, -n - d).neg()));
            }
        }
        sum = QTSeries::from_terms(terms, order + 1);
    }
    let y = TLaurent::tu(0, 2).sub(&TLaurent::one());
    let bracket = QTSeries::constant(y).sub(&sum.mul_coeff(&y1m.mul(&y2m)));
    let rhs = tb(ThetaArg::TY).mul(&tb(ThetaArg::YT)).mul(&bracket);
    let window = |s: &QTSeries| match t_window {
        None => s.clone(),
        Some(w) => s.map_coeffs(|c| {
            TLaurent::from_terms(c.terms().filter(|(e, _)| e.abs() <= w).map(|(e, c)| (e, c.clone())))
        }),
    };
    compare(&window(&lhs), &window(&rhs), &["q", "t", "u"])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::compare;

    fn ul(terms: &[(i64, i64)]) -> ULaurent {
        ULaurent::from_terms(terms.iter().map(|&(e, c)| (e, Rational::from(c))))
    }

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn theta_hat_low_coefficients() {
        let th = theta_hat(6);
        assert_eq!(th.coeff(0).unwrap(), ULaurent::u_minus_uinv());
        assert_eq!(th.coeff(1).unwrap(), ul(&[(3, -1), (-3, 1)]));
        assert_eq!(th.coeff(2).unwrap(), ULaurent::zero());
        assert_eq!(th, theta_hat_sum(6));
    }

    #[test]
    fn sum_and_product_agree_for_every_argument() {
        for arg in [ThetaArg::Y, ThetaArg::TY, ThetaArg::YT, ThetaArg::T] {
            let p = ThetaFactored::theta(arg, 10);
            let s = ThetaFactored::theta_sum(arg, 10);
            assert_eq!((p.u_halves, p.t_halves), (s.u_halves, s.t_halves));
            assert!(compare(&p.collapsed(), &s.collapsed(), &["q", "t", "u"]).is_ok(), "{arg:?}");
        }
    }

    #[test]
    fn theta_prime_zero_is_eta_cubed() {
        // Jacobi: prod (1-q^n)^3 = sum (-1)^k (2k+1) q^{k(k+1)/2}
        let want = RSeries::from_terms(
            (0..6).map(|k| (k * (k + 1) / 2, r(if k % 2 == 0 { 2 * k + 1 } else { -(2 * k + 1) }))),
            16,
        );
        assert_eq!(theta_prime_zero(15), want);
    }

    #[test]
    fn prime_on_y_minus_inverse() {
        let p = ul(&[(2, 1), (-2, -1)]);
        assert_eq!(p.y_derivative(), ul(&[(2, 1), (-2, 1)]));
    }

    #[test]
    fn heat_equation_holds_with_factor_two() {
        assert!(heat_residual(&r(2), 12).terms().next().is_none());
        let literal = heat_residual(&Rational::new(1, 2), 4);
        assert_eq!(literal.valuation(), 0);
    }

    #[test]
    fn g2_and_delta() {
        let g2 = eisenstein_g2(5);
        let want: Vec<Rational> = [Rational::new(-1, 24), r(1), r(3), r(4), r(7), r(6)].into();
        assert_eq!(g2, RSeries::new(0, want, 6));
        let d = discriminant(6);
        assert_eq!(d, RSeries::new(1, [1, -24, 252, -1472, 4830, -6048].map(r).into(), 7));
        // D log Delta = 1 - 24 sum sigma_1(n) q^n = -24 G2
        let dlog = d.dlog().unwrap();
        assert_eq!(dlog.add(&eisenstein_g2(5).scale(&r(24))).terms().count(), 0);
    }

    #[test]
    fn tilde_dg2_two_ways() {
        let a = tilde_dg2(8);
        assert_eq!(a.coeff(2).unwrap(), ul(&[(2, 1), (0, 4), (-2, 1)]));
        assert_eq!(a, tilde_dg2_theta(8).unwrap());
    }

    #[test]
    fn tilde_delta_two_ways() {
        let a = tilde_delta(8);
        assert_eq!(a.coeff(1).unwrap(), ULaurent::one());
        assert_eq!(a, tilde_delta_theta(8).unwrap());
    }

    #[test]
    fn a_series_constructions() {
        let a = a_lattice(10);
        assert_eq!(a.coeff(1).unwrap(), ul(&[(2, 1), (-2, -1)]));
        assert_eq!(a.coeff(2).unwrap(), ul(&[(4, 1), (2, 4), (-2, -4), (-4, -1)]));
        assert!(a.terms().all(|(_, c)| c.at_one().is_zero()));
        assert_eq!(a_theta(10).unwrap(), a);
        assert_eq!(a_theta_heat(&Rational::new(2, 3), 10).unwrap(), a);
        assert!(a_theta_heat(&Rational::new(1, 6), 10).map_or(true, |s| s != a));
    }

    #[test]
    fn phi_is_tilde_delta_in_t() {
        // phi_{10,1}(t) = (t - 2 + 1/t) * tilde Delta(t)
        let phi = phi_10_1(6);
        assert_eq!(phi.valuation(), 1);
        let c1 = phi.coeff(1).unwrap();
        assert_eq!(c1, TLaurent::from_terms([(1, ULaurent::one()), (0, ULaurent::int(-2)), (-1, ULaurent::one())]));
    }

    #[test]
    fn zagier_identity() {
        assert!(zagier_check(6, Some(10), true).is_ok());
        assert!(zagier_check(6, None, true).is_ok());
        let miss = zagier_check(6, None, false).unwrap_err();
        assert_eq!(miss.exponents[0], 1);
    }

    #[test]
    fn prefactor_imbalance_is_rejected() {
        let th = ThetaFactored::theta(ThetaArg::TY, 3);
        let ratio = ThetaRatio::new(th, ThetaFactored::plain(QTSeries::one()));
        assert!(matches!(ratio.assemble(), Err(Error::PrefactorImbalance(_))));
    }
}
