//! exp/log, composition, compositional inversion and the residue formulas.

use super::{padd, Series, EXACT};
use crate::error::{Error, Result};
use crate::ring::{Coeff, Rational};

impl<C: Coeff> Series<C> {
    fn require_bounded(&self, what: &str) -> Result<()> {
        if self.is_exact() {
            return Err(Error::InvalidArgument(format!(
                "{what} of an exact series needs a truncation order; truncate first"
            )));
        }
        Ok(())
    }

    /// `exp(f)` for `f` with vanishing constant term, via
    /// `n E_n = sum_{k=1}^n k f_k E_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if self.c.is_empty() {
            if self.prec <= 0 {
                return Err(Error::BadValuation("constant term of exp argument unknown".into()));
            }
            return Ok(Self::one().truncate(self.prec));
        }
        if self.lead < 1 {
            return Err(Error::BadValuation(format!(
                "exp needs positive valuation, got {}",
                self.lead
            )));
        }
        self.require_bounded("exp")?;
        let n = self.prec as usize;
        let mut e: Vec<C> = Vec::with_capacity(n);
        e.push(C::one());
        for m in 1..n {
            let mut acc = C::zero();
            for k in 1..=m {
                if let Some(fk) = self.coeff_ref(k as i64) {
                    if !fk.is_zero() {
                        acc.add_mul(&fk.scale(&Rational::from(k as i64)), &e[m - k]);
                    }
                }
            }
            e.push(acc.scale(&Rational::new(1, m as i64)));
        }
        Ok(Self::new(0, e, self.prec))
    }

    /// `log(f)` for `f = 1 + O(q)`, as `D^{-1}(Df / f)`.
    pub fn log(&self) -> Result<Self> {
        if self.lead != 0 || !self.c.first().is_some_and(|c| c.is_one()) {
            return Err(Error::BadValuation("log needs constant term 1".into()));
        }
        if self.c.len() == 1 && self.is_exact() {
            return Ok(Self::zero());
        }
        self.require_bounded("log")?;
        self.dq().div(self)?.dq_inv()
    }

    /// Logarithmic derivative `Df / f`.
    pub fn dlog(&self) -> Result<Self> {
        self.dq().div(self)
    }

    /// `outer(inner)` where `outer` is a power series with coefficients in
    /// `D`, mapped into `C` by `embed`. Horner evaluation; `inner` must have
    /// positive valuation.
    pub fn compose_with<D: Coeff>(
        outer: &Series<D>,
        embed: impl Fn(&D) -> C,
        inner: &Self,
    ) -> Result<Self> {
        if outer.valuation() < 0 {
            return Err(Error::BadValuation("outer series has a pole".into()));
        }
        let vi = inner.valuation();
        if vi < 1 {
            return Err(Error::BadValuation(format!(
                "inner series must have positive valuation, got {vi}"
            )));
        }
        // terms x^k with k*vi >= prec cannot contribute
        let from_outer = if outer.is_exact() {
            EXACT
        } else {
            (vi as i128 * outer.prec as i128).min(EXACT as i128) as i64
        };
        let first_nonconst = outer.terms().map(|(k, _)| k).find(|&k| k >= 1);
        let from_inner = match first_nonconst {
            Some(k0) => padd(inner.prec, (k0 - 1).saturating_mul(vi).min(EXACT)),
            None => EXACT,
        };
        let prec = from_outer.min(from_inner);
        let top = match outer.hi() {
            None => return Ok(Self::zero_to(prec)),
            Some(h) if prec >= EXACT => h,
            Some(h) => h.min((prec - 1) / vi),
        };
        let inner_t = inner.truncate(prec);
        let mut acc = Self::constant(embed(&outer.coeff_or_zero(top)));
        for k in (0..top).rev() {
            acc = acc.mul(&inner_t).truncate(prec);
            let ck = outer.coeff_or_zero(k);
            if !ck.is_zero() {
                acc = acc.add(&Self::constant(embed(&ck)));
            }
        }
        Ok(acc.truncate(prec))
    }

    /// `outer(inner)` over a single coefficient ring.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        Self::compose_with(outer, C::clone, inner)
    }

    /// Linear coefficient inverse, checking `f = a q + O(q^2)` with `a` a unit.
    fn linear_unit_inverse(&self) -> Result<C> {
        if self.valuation() != 1 {
            return Err(Error::BadValuation(format!(
                "need f = a*q + O(q^2), got valuation {}",
                self.valuation()
            )));
        }
        C::one()
            .div_exact(&self.c[0])
            .map_err(|_| Error::NonUnitLeading(format!("{:?}", self.c[0])))
    }

    /// Compositional inverse by Newton iteration with order doubling:
    /// `g <- g - (f(g) - q) / f'(g)`.
    pub fn comp_inverse(&self) -> Result<Self> {
        let a_inv = self.linear_unit_inverse()?;
        self.require_bounded("compositional inverse")?;
        let target = self.prec;
        let mut g = Self::monomial(a_inv, 1).truncate(2.min(target));
        let mut known = 2;
        while known < target {
            known = (2 * known).min(target);
            let f = self.truncate(known);
            let g_ext = g.assume_prec(known);
            let fg = Self::compose(&f, &g_ext)?;
            let dfg = Self::compose(&f.deriv(), &g_ext)?;
            let step = fg.sub(&Self::var()).div(&dfg)?;
            g = g_ext.sub(&step).truncate(known);
        }
        Ok(g.truncate(target))
    }

    /// `Coeff_{q^n}` of the compositional inverse of `f`, computed
    /// independently as `(1/n) Res f^{-n}`.
    pub fn lagrange_coefficient(&self, n: u32) -> Result<C> {
        if n == 0 {
            return Err(Error::InvalidArgument("Lagrange coefficient needs n >= 1".into()));
        }
        self.linear_unit_inverse()?;
        let res = self.pow(-(n as i64))?.res()?;
        Ok(res.scale(&Rational::new(1, n as i64)))
    }

    /// Expansion `f = sum_k c_k g^k` with `c_k = Coeff_{q^0}(f Dg / g^{k+1})`,
    /// returned as a series in a new variable standing for `g`, with terms
    /// for `k <= kmax` (starting below zero if `f` has a pole).
    pub fn residue_expansion(&self, g: &Self, kmax: i64) -> Result<Self> {
        g.linear_unit_inverse()?;
        let kmin = if self.c.is_empty() { 0 } else { self.lead.min(0) };
        let g_inv = g.inverse()?;
        let mut h = self.mul(&g.dq()).mul(&g_inv.pow(kmin + 1)?);
        let mut out = Vec::new();
        for _ in kmin..=kmax {
            out.push(h.coeff(0)?);
            h = h.mul(&g_inv);
        }
        Ok(Self::new(kmin, out, kmax + 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{ULaurent, UFraction};
    use proptest::prelude::*;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    type RS = Series<Rational>;

    fn rs(lead: i64, c: &[i64], prec: i64) -> RS {
        RS::new(lead, c.iter().map(|&x| r(x)).collect(), prec)
    }

    #[test]
    fn exp_log_basics() {
        assert_eq!(RS::zero_to(8).exp().unwrap(), RS::one().truncate(8));
        let mercator = rs(0, &[1, 1], 6).log().unwrap();
        let want = RS::from_terms((1..6).map(|n| (n, Rational::new(if n % 2 == 1 { 1 } else { -1 }, n))), 6);
        assert_eq!(mercator, want);
        assert!(matches!(rs(0, &[2, 1], 6).log(), Err(Error::BadValuation(_))));
        assert!(matches!(rs(0, &[1, 1], 6).exp(), Err(Error::BadValuation(_))));
    }

    #[test]
    fn compose_examples() {
        let f = rs(1, &[1, 1], 8);
        assert_eq!(RS::compose(&RS::var(), &f).unwrap(), f);
        let sq = RS::compose(&RS::monomial(r(1), 2), &rs(1, &[1, 1], EXACT)).unwrap();
        assert_eq!(sq, rs(2, &[1, 2, 1], EXACT));
        assert!(RS::compose(&RS::var(), &rs(0, &[1, 1], 8)).is_err());
    }

    #[test]
    fn mobius_inverse() {
        // q/(1-q) <-> q/(1+q)
        let f = rs(1, &[1; 10], 11);
        let g = f.comp_inverse().unwrap();
        let want = RS::from_terms((1..11).map(|n| (n, r(if n % 2 == 1 { 1 } else { -1 }))), 11);
        assert_eq!(g, want);
        assert_eq!(RS::var().truncate(9).comp_inverse().unwrap(), RS::var().truncate(9));
    }

    #[test]
    fn catalan_lagrange() {
        // inverse of w - w^2 is sum Catalan(n-1) w^n
        let f = rs(1, &[1, -1], 12);
        let catalan = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862];
        for (n, c) in (1..=10).zip(catalan) {
            assert_eq!(f.lagrange_coefficient(n).unwrap(), r(c));
        }
        assert_eq!(RS::var().truncate(4).lagrange_coefficient(1).unwrap(), r(1));
    }

    #[test]
    fn residue_expansion_examples() {
        let f = rs(0, &[3, -1, 4, 1, -5], 5);
        let in_q = f.residue_expansion(&RS::var().truncate(9), 4).unwrap();
        assert_eq!(in_q, f);
        let g = rs(1, &[1, 1], 10);
        let self_exp = g.residue_expansion(&g, 5).unwrap();
        assert_eq!(self_exp, RS::var().truncate(6));
    }

    #[test]
    fn inverse_over_fraction_field() {
        // x(q) = sum [n]_y q^n / n; its inverse starts x - (u + 1/u) x^2 / 2
        let x_of_q = Series::<UFraction>::from_fn(1, 6, |n| {
            UFraction::from(ULaurent::quantum_int(n).scale(&Rational::new(1, n)))
        });
        let inv = x_of_q.comp_inverse().unwrap();
        assert_eq!(inv.coeff(1).unwrap(), UFraction::one());
        let half_w = ULaurent::u_plus_uinv().scale(&Rational::new(-1, 2));
        assert_eq!(inv.coeff(2).unwrap(), UFraction::from(half_w));
    }

    fn arb_unit_linear() -> impl Strategy<Value = RS> {
        (proptest::sample::select(vec![1i64, -1, 2, 3]), proptest::collection::vec(-4i64..5, 0..6))
            .prop_map(|(a, rest)| {
                let mut c = vec![a];
                c.extend(rest);
                rs(1, &c, 13)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn inverse_composes_to_identity(f in arb_unit_linear()) {
            let g = f.comp_inverse().unwrap();
            let id = RS::var();
            prop_assert_eq!(RS::compose(&f, &g).unwrap().first_difference(&id), None);
            prop_assert_eq!(RS::compose(&g, &f).unwrap().first_difference(&id), None);
        }

        #[test]
        fn lagrange_matches_newton(f in arb_unit_linear()) {
            let g = f.comp_inverse().unwrap();
            for n in 1..=12u32 {
                prop_assert_eq!(f.lagrange_coefficient(n).unwrap(), g.coeff(n as i64).unwrap());
            }
        }

        #[test]
        fn exp_log_round_trip(c in proptest::collection::vec(-4i64..5, 1..6)) {
            let f = rs(1, &c, 9);
            let e = f.exp().unwrap();
            prop_assert_eq!(e.log().unwrap(), f.clone());
            prop_assert_eq!(e.dq().first_difference(&e.mul(&f.dq())), None);
        }

        #[test]
        fn residue_expansion_reconstructs(c in proptest::collection::vec(-4i64..5, 1..6), lead in -1i64..2) {
            let f = rs(lead, &c, lead + 8);
            let g = rs(1, &[1, 1], 12);
            let coeffs = f.residue_expansion(&g, lead + 7).unwrap();
            // sum c_k g^k over the computed range, including a possible pole
            let mut back = RS::zero();
            let mut gk = g.pow(coeffs.valuation().min(0)).unwrap();
            for k in coeffs.valuation().min(0)..=lead + 7 {
                back = back.add(&gk.mul_coeff(&coeffs.coeff_or_zero(k)));
                gk = gk.mul(&g);
            }
            prop_assert_eq!(back.first_difference(&f), None);
        }
    }
}
