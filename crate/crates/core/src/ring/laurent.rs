use std::fmt;

use super::{Coeff, Rational};
use crate::error::{Error, Result};
use crate::par;

/// Laurent polynomial in one variable over `C`, stored densely from its
/// lowest nonzero exponent. Zero has an empty coefficient vector.
#[derive(Clone, PartialEq, Debug)]
pub struct Laurent<C> {
    lo: i64,
    c: Vec<C>,
}

/// Laurent polynomial in `u = y^{1/2}` over Q.
pub type ULaurent = Laurent<Rational>;
/// Laurent polynomial in `t` over `ULaurent`.
pub type TLaurent = Laurent<ULaurent>;
/// Polynomial in `v = t + 1/t` over `ULaurent` (nonnegative exponents only).
pub type VPoly = Laurent<ULaurent>;

impl<C: Coeff> Laurent<C> {
    fn normalized(mut lo: i64, mut c: Vec<C>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        let skip = c.iter().take_while(|x| x.is_zero()).count();
        if skip == c.len() {
            return Self { lo: 0, c: Vec::new() };
        }
        c.drain(..skip);
        lo += skip as i64;
        Self { lo, c }
    }

    /// Builds from a dense coefficient block starting at exponent `lo`.
    pub fn from_dense(lo: i64, c: Vec<C>) -> Self {
        Self::normalized(lo, c)
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add.
    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(terms: I) -> Self {
        let terms: Vec<(i64, C)> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return <Self as Coeff>::zero();
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut c = vec![C::zero(); (hi - lo + 1) as usize];
        for (e, v) in terms {
            c[(e - lo) as usize].add_assign(&v);
        }
        Self::normalized(lo, c)
    }

    pub fn monomial(coeff: C, exp: i64) -> Self {
        Self::normalized(exp, vec![coeff])
    }

    /// The variable itself raised to `exp`.
    pub fn var_pow(exp: i64) -> Self {
        Self::monomial(C::one(), exp)
    }

    pub fn constant(coeff: C) -> Self {
        Self::monomial(coeff, 0)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest exponent; `lo - 1` for zero.
    pub fn hi(&self) -> i64 {
        self.lo + self.c.len() as i64 - 1
    }

    pub fn coeff(&self, e: i64) -> C {
        self.coeff_ref(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeff_ref(&self, e: i64) -> Option<&C> {
        if e < self.lo {
            return None;
        }
        self.c.get((e - self.lo) as usize)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> + '_ {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(i, x)| (self.lo + i as i64, x))
    }

    pub fn num_terms(&self) -> usize {
        self.c.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn leading(&self) -> Option<&C> {
        self.c.last()
    }

    pub fn lowest(&self) -> Option<&C> {
        self.c.first()
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Laurent<D> {
        Laurent::normalized(self.lo, self.c.iter().map(f).collect())
    }

    /// Multiplication by `var^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.c.is_empty() {
            return self.clone();
        }
        Self { lo: self.lo + k, c: self.c.clone() }
    }

    /// `p(var) -> p(1/var)`.
    pub fn invert_var(&self) -> Self {
        if self.c.is_empty() {
            return self.clone();
        }
        let mut c = self.c.clone();
        c.reverse();
        Self { lo: -self.hi(), c }
    }

    /// Maps exponents `e -> k*e` (substitution `var -> var^k`).
    pub fn stretch(&self, k: i64) -> Self {
        assert!(k != 0);
        Self::from_terms(self.terms().map(|(e, c)| (e * k, c.clone())))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Horner evaluation of the polynomial at a ring element (exponents must
    /// be nonnegative).
    pub fn eval_poly<R: Coeff>(&self, at: &R, embed: impl Fn(&C) -> R) -> R {
        assert!(self.c.is_empty() || self.lo >= 0, "eval_poly on a Laurent tail");
        let mut acc = R::zero();
        for e in (0..=self.hi().max(0)).rev() {
            acc = acc.mul(at);
            if let Some(c) = self.coeff_ref(e) {
                acc.add_assign(&embed(c));
            }
        }
        acc
    }

    /// Whether the polynomial is `c * var^k` for a single term.
    pub fn as_monomial(&self) -> Option<(i64, &C)> {
        if self.c.len() == 1 {
            Some((self.lo, &self.c[0]))
        } else {
            None
        }
    }
}

impl<C: Coeff> Coeff for Laurent<C> {
    fn zero() -> Self {
        Self { lo: 0, c: Vec::new() }
    }

    fn one() -> Self {
        Self { lo: 0, c: vec![C::one()] }
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn add(&self, o: &Self) -> Self {
        if o.c.is_empty() {
            return self.clone();
        }
        if self.c.is_empty() {
            return o.clone();
        }
        let lo = self.lo.min(o.lo);
        let hi = self.hi().max(o.hi());
        let mut c = vec![C::zero(); (hi - lo + 1) as usize];
        for (i, x) in self.c.iter().enumerate() {
            c[(self.lo - lo) as usize + i] = x.clone();
        }
        for (i, x) in o.c.iter().enumerate() {
            c[(o.lo - lo) as usize + i].add_assign(x);
        }
        Self::normalized(lo, c)
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Self) -> Self {
        if self.c.is_empty() || o.c.is_empty() {
            return Self::zero();
        }
        let (na, nb) = (self.c.len(), o.c.len());
        let n = na + nb - 1;
        let c = if C::HEAVY {
            par::map_range(n, 8, |k| {
                let start = k.saturating_sub(nb - 1);
                C::dot((start..=k.min(na - 1)).map(|i| (&self.c[i], &o.c[k - i])))
            })
        } else {
            let mut c = vec![C::zero(); n];
            for (i, x) in self.c.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in o.c.iter().enumerate() {
                    c[i + j].add_mul(x, y);
                }
            }
            c
        };
        Self::normalized(self.lo + o.lo, c)
    }

    fn neg(&self) -> Self {
        Self { lo: self.lo, c: self.c.iter().map(|x| x.neg()).collect() }
    }

    fn from_rational(r: &Rational) -> Self {
        Self::constant(C::from_rational(r))
    }

    fn scale(&self, r: &Rational) -> Self {
        Self::normalized(self.lo, self.c.iter().map(|x| x.scale(r)).collect())
    }

    /// Long division from the top. Fails unless the remainder is exactly zero.
    fn div_exact(&self, d: &Self) -> Result<Self> {
        if d.c.is_empty() {
            return Err(Error::DivisionByZero);
        }
        if self.c.is_empty() {
            return Ok(Self::zero());
        }
        if let Some((e, c)) = d.as_monomial() {
            let mut out = Vec::with_capacity(self.c.len());
            for x in &self.c {
                out.push(x.div_exact(c)?);
            }
            return Ok(Self::normalized(self.lo - e, out));
        }
        let min_q = self.lo - d.lo;
        let mut rem = self.clone();
        let mut q: Vec<(i64, C)> = Vec::new();
        let top = d.leading().unwrap();
        while !rem.c.is_empty() {
            let e = rem.hi() - d.hi();
            if e < min_q {
                return Err(Error::NonDivisible(format!(
                    "nonzero remainder after {} quotient terms",
                    q.len()
                )));
            }
            let qc = rem.leading().unwrap().div_exact(top)?;
            rem = rem.sub(&Self::monomial(qc.clone(), e).mul(d));
            q.push((e, qc));
        }
        Ok(Self::from_terms(q))
    }

    const HEAVY: bool = true;
}

impl<C: Coeff> std::ops::Add for Laurent<C> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Coeff::add(&self, &o)
    }
}

impl<C: Coeff> std::ops::Sub for Laurent<C> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Coeff::sub(&self, &o)
    }
}

impl<C: Coeff> std::ops::Mul for Laurent<C> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Coeff::mul(&self, &o)
    }
}

impl<C: Coeff> std::ops::Neg for Laurent<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Coeff::neg(&self)
    }
}

impl ULaurent {
    /// `u^e` with coefficient one.
    pub fn u(e: i64) -> Self {
        Self::var_pow(e)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from(n))
    }

    /// `[n]_y = u^{n-1} + u^{n-3} + ... + u^{1-n}`; zero for `n = 0` and
    /// `-[-n]_y` for negative `n`.
    pub fn quantum_int(n: i64) -> Self {
        let m = n.abs();
        let v = Self::from_terms((0..m).map(|j| (m - 1 - 2 * j, Rational::one())));
        if n < 0 {
            v.neg()
        } else {
            v
        }
    }

    /// `u - 1/u = y^{1/2} - y^{-1/2}`.
    pub fn u_minus_uinv() -> Self {
        Self::from_terms([(1, Rational::one()), (-1, Rational::from(-1))])
    }

    /// `u + 1/u`.
    pub fn u_plus_uinv() -> Self {
        Self::from_terms([(1, Rational::one()), (-1, Rational::one())])
    }

    /// Euler specialization `y = 1`.
    pub fn at_one(&self) -> Rational {
        let mut acc = Rational::zero();
        for x in &self.c {
            acc.add_assign(x);
        }
        acc
    }

    /// The operator `y d/dy = (u/2) d/du`.
    pub fn y_derivative(&self) -> Self {
        let half = Rational::new(1, 2);
        Self::from_terms(self.terms().map(|(e, c)| (e, c.mul(&Rational::from(e)).mul(&half))))
    }

    /// Substitution `var^e -> target^e` into a `t`-Laurent polynomial; the
    /// target must be a single term with invertible coefficient.
    pub fn substitute(&self, target: &TLaurent) -> Result<TLaurent> {
        let (te, tc) = target.as_monomial().ok_or(Error::NonMonomial)?;
        let (ue, uc) = tc.as_monomial().ok_or(Error::NonMonomial)?;
        let uc_inv = uc.recip()?;
        let mut out = Vec::new();
        for (e, c) in self.terms() {
            let k = e.unsigned_abs() as u32;
            let scal = if e >= 0 { uc.pow(k) } else { uc_inv.pow(k) };
            out.push((te * e, ULaurent::monomial(c.mul(&scal), ue * e)));
        }
        Ok(TLaurent::from_terms(out))
    }

    /// Invariance under `u -> 1/u`.
    pub fn is_palindromic(&self) -> bool {
        *self == self.invert_var()
    }
}

impl TLaurent {
    /// `t^e` with coefficient one.
    pub fn t(e: i64) -> Self {
        Self::var_pow(e)
    }

    /// A `u`-polynomial placed at `t^0`.
    pub fn from_u(p: ULaurent) -> Self {
        Self::constant(p)
    }

    /// `x = t + 1/t - u - 1/u`.
    pub fn x() -> Self {
        Self::from_terms([
            (1, ULaurent::one()),
            (-1, ULaurent::one()),
            (0, ULaurent::u_plus_uinv().neg()),
        ])
    }

    /// The monomial `t^a u^b`.
    pub fn tu(a: i64, b: i64) -> Self {
        Self::monomial(ULaurent::u(b), a)
    }

    /// Substitution `t -> u^k`.
    pub fn at_t_u_power(&self, k: i64) -> ULaurent {
        let mut acc = ULaurent::zero();
        for (e, c) in self.terms() {
            acc.add_assign(&c.shift(k * e));
        }
        acc
    }

    /// Euler specialization `u = 1` applied coefficientwise.
    pub fn at_u_one(&self) -> Self {
        self.map_coeffs(|c| ULaurent::constant(c.at_one()))
    }

    /// The `u`-polynomial, if there is no `t`-dependence.
    pub fn t_constant(&self) -> Option<ULaurent> {
        match self.as_monomial() {
            _ if self.is_zero() => Some(ULaurent::zero()),
            Some((0, c)) => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_t_symmetric(&self) -> bool {
        *self == self.invert_var()
    }

    /// Rewrites a `t <-> 1/t` symmetric polynomial as a polynomial in
    /// `v = t + 1/t`.
    pub fn symmetrize_to_v(&self) -> Result<VPoly> {
        if !self.is_t_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let mut rem = self.clone();
        let mut out = Vec::new();
        while !rem.is_zero() {
            let d = rem.hi();
            let c = rem.leading().unwrap().clone();
            let basis = TLaurent::from_terms([(1, ULaurent::one()), (-1, ULaurent::one())]).pow(d as u32);
            rem = rem.sub(&basis.map_coeffs(|b| b.mul(&c)));
            out.push((d, c));
        }
        Ok(VPoly::from_terms(out))
    }

    /// Inverse of `symmetrize_to_v`: substitutes `v = t + 1/t`.
    pub fn from_v(p: &VPoly) -> TLaurent {
        let v = TLaurent::from_terms([(1, ULaurent::one()), (-1, ULaurent::one())]);
        p.eval_poly(&v, |c| TLaurent::constant(c.clone()))
    }
}

/// Renders with named variables, innermost ring last.
pub trait VarDisplay {
    fn render(&self, vars: &[&str]) -> String;
    /// Whether rendering needs parentheses when used as a coefficient.
    fn compound(&self) -> bool;
}

impl VarDisplay for Rational {
    fn render(&self, _: &[&str]) -> String {
        self.to_string()
    }
    fn compound(&self) -> bool {
        false
    }
}

impl<C: Coeff + VarDisplay> VarDisplay for Laurent<C> {
    fn render(&self, vars: &[&str]) -> String {
        if self.c.is_empty() {
            return "0".into();
        }
        let var = vars.first().copied().unwrap_or("x");
        let mut parts = Vec::new();
        for (e, c) in self.terms() {
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            let cs = c.render(&vars[1.min(vars.len())..]);
            let cs = if c.compound() && cs.contains(' ') { format!("({cs})") } else { cs };
            parts.push(match (mono.is_empty(), cs.as_str()) {
                (true, _) => cs.clone(),
                (false, "1") => mono,
                (false, "-1") => format!("-{mono}"),
                (false, _) => format!("{cs}*{mono}"),
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
    fn compound(&self) -> bool {
        true
    }
}

impl<C: Coeff + VarDisplay> fmt::Display for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&["u"]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ul(terms: &[(i64, i64)]) -> ULaurent {
        ULaurent::from_terms(terms.iter().map(|&(e, c)| (e, Rational::from(c))))
    }

    #[test]
    fn difference_of_squares() {
        let a = ul(&[(1, 1), (-1, 1)]);
        let b = ul(&[(1, 1), (-1, -1)]);
        assert_eq!(a.mul(&b), ul(&[(2, 1), (-2, -1)]));
    }

    #[test]
    fn x_times_t() {
        let got = TLaurent::x().mul(&TLaurent::t(1));
        let want = TLaurent::from_terms([
            (2, ULaurent::one()),
            (1, ULaurent::u_plus_uinv().neg()),
            (0, ULaurent::one()),
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn zero_is_additive_identity() {
        let p = ul(&[(3, 2), (-1, 5)]);
        assert_eq!(ULaurent::zero().add(&p), p);
        assert_eq!(p.add(&ULaurent::zero()), p);
        assert_eq!(p.mul(&ULaurent::zero()), ULaurent::zero());
    }

    #[test]
    fn exact_division_examples() {
        let s = ULaurent::u_minus_uinv();
        assert_eq!(ul(&[(2, 1), (-2, -1)]).div_exact(&s).unwrap(), ULaurent::u_plus_uinv());
        assert_eq!(ul(&[(3, 1), (-3, -1)]).div_exact(&s).unwrap(), ul(&[(2, 1), (0, 1), (-2, 1)]));
        let sx = TLaurent::x().mul(&TLaurent::from_u(s.clone()));
        assert_eq!(sx.div_exact(&TLaurent::from_u(s.clone())).unwrap(), TLaurent::x());
        assert!(matches!(ul(&[(0, 1)]).div_exact(&s), Err(Error::NonDivisible(_))));
        assert!(matches!(ul(&[(2, 1), (0, 1)]).div_exact(&s), Err(Error::NonDivisible(_))));
        assert_eq!(ULaurent::one().div_exact(&ULaurent::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn long_division_oracle() {
        // (u^3 - u^-3) / (u - u^-1) via the geometric-sum identity
        for n in 1..8 {
            let num = ul(&[(n, 1), (-n, -1)]);
            let q = num.div_exact(&ULaurent::u_minus_uinv()).unwrap();
            assert_eq!(q, ULaurent::quantum_int(n));
        }
    }

    #[test]
    fn substitution_examples() {
        let p = ul(&[(2, 1), (-2, -1)]);
        let got = p.substitute(&TLaurent::tu(1, 1)).unwrap();
        let want = TLaurent::tu(2, 2).sub(&TLaurent::tu(-2, -2));
        assert_eq!(got, want);

        let q2 = ULaurent::quantum_int(2).substitute(&TLaurent::tu(-1, 1)).unwrap();
        assert_eq!(q2, TLaurent::tu(-1, 1).add(&TLaurent::tu(1, -1)));

        let e = ul(&[(2, 1), (0, 4), (-2, 1)]);
        assert_eq!(e.at_one(), Rational::from(6));

        let not_mono = TLaurent::x();
        assert_eq!(p.substitute(&not_mono), Err(Error::NonMonomial));
    }

    #[test]
    fn v_rewriting() {
        let v = |p: &VPoly| p.clone();
        let w = ULaurent::u_plus_uinv();
        let got = TLaurent::x().symmetrize_to_v().unwrap();
        assert_eq!(v(&got), VPoly::from_terms([(1, ULaurent::one()), (0, w.neg())]));

        let t2 = TLaurent::t(2).add(&TLaurent::t(-2));
        assert_eq!(
            t2.symmetrize_to_v().unwrap(),
            VPoly::from_terms([(2, ULaurent::one()), (0, ULaurent::int(-2))])
        );
        let t3 = TLaurent::t(3).add(&TLaurent::t(-3));
        let p3 = t3.symmetrize_to_v().unwrap();
        assert_eq!(p3, VPoly::from_terms([(3, ULaurent::one()), (1, ULaurent::int(-3))]));
        // brute-force re-expansion
        assert_eq!(TLaurent::from_v(&p3), t3);

        assert_eq!(TLaurent::t(1).symmetrize_to_v(), Err(Error::NotSymmetric));
    }

    #[test]
    fn y_derivative_of_y_minus_inverse() {
        assert_eq!(ul(&[(2, 1), (-2, -1)]).y_derivative(), ul(&[(2, 1), (-2, 1)]));
    }

    #[test]
    fn rendering() {
        let p = ul(&[(2, 1), (0, 4), (-2, 1)]);
        assert_eq!(p.to_string(), "u^-2 + 4 + u^2");
        assert_eq!(ul(&[(1, 1), (-1, -1)]).render(&["u"]), "-u^-1 + u");
        assert_eq!(TLaurent::x().render(&["t", "u"]), "t^-1 + (-u^-1 - u) + t");
    }

    fn arb_ul() -> impl Strategy<Value = ULaurent> {
        (-3i64..3, proptest::collection::vec(-4i64..5, 0..5))
            .prop_map(|(lo, cs)| ULaurent::from_dense(lo, cs.into_iter().map(Rational::from).collect()))
    }

    fn arb_tl() -> impl Strategy<Value = TLaurent> {
        (-2i64..2, proptest::collection::vec(arb_ul(), 0..4)).prop_map(|(lo, cs)| TLaurent::from_dense(lo, cs))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_tl(), b in arb_tl(), c in arb_tl()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        }

        #[test]
        fn exact_divide_inverts_mul(a in arb_tl(), b in arb_tl()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!(a.mul(&b).div_exact(&b).unwrap(), a);
        }

        #[test]
        fn symmetrize_round_trip(a in arb_tl()) {
            let sym = a.add(&a.invert_var());
            let p = sym.symmetrize_to_v().unwrap();
            prop_assert!(p.is_zero() || p.lo() >= 0);
            prop_assert_eq!(TLaurent::from_v(&p), sym);
        }

        #[test]
        fn normalization_idempotent(lo in -3i64..3, cs in proptest::collection::vec(-2i64..3, 0..6)) {
            let p = ULaurent::from_dense(lo, cs.into_iter().map(Rational::from).collect());
            let again = ULaurent::from_dense(p.lo(), (p.lo()..=p.hi()).map(|e| p.coeff(e)).collect());
            prop_assert_eq!(again, p);
        }
    }
}
