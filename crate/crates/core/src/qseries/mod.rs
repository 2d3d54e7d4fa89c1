//! Truncated Laurent series in one variable over any [`Coeff`] ring.
//!
//! A `Series` knows its coefficients for every exponent below `prec`;
//! exponents at or above `prec` are unknown. `prec == EXACT` marks a
//! finite (polynomial) series with nothing unknown. Precision is tracked
//! through every operation, so a result never claims more than its inputs
//! determine.

mod analysis;

use std::fmt;

use crate::error::{Error, Result};
use crate::par;
use crate::ring::{Coeff, Laurent, Rational, TLaurent, ULaurent, UFraction, VarDisplay};

/// Precision of a series with no truncation.
pub const EXACT: i64 = i64::MAX / 4;

/// Saturating precision addition: anything involving `EXACT` stays exact.
pub(crate) fn padd(a: i64, b: i64) -> i64 {
    if a >= EXACT || b >= EXACT {
        EXACT
    } else {
        (a + b).min(EXACT)
    }
}

/// `a - b` where only `a` may be `EXACT`.
pub(crate) fn psub(a: i64, b: i64) -> i64 {
    if a >= EXACT {
        EXACT
    } else {
        a - b
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Series<C> {
    lead: i64,
    c: Vec<C>,
    prec: i64,
}

/// Series in `q` with `u`-polynomial coefficients.
pub type QSeries = Series<ULaurent>;
/// Series in `q` with rational coefficients.
pub type RSeries = Series<Rational>;
/// Truncated Laurent series in `t` over `ULaurent`.
pub type TSeries = Series<ULaurent>;
/// Series in `q` with `t`-polynomial coefficients.
pub type QTSeries = Series<TLaurent>;
/// Formal power series over the fraction field of the `u`-ring.
pub type XSeries = Series<UFraction>;

impl<C: Coeff> Series<C> {
    fn normalized(mut lead: i64, mut c: Vec<C>, prec: i64) -> Self {
        let keep = (prec - lead).clamp(0, c.len() as i64) as usize;
        c.truncate(keep);
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        let skip = c.iter().take_while(|x| x.is_zero()).count();
        if skip == c.len() {
            return Self { lead: 0, c: Vec::new(), prec };
        }
        c.drain(..skip);
        lead += skip as i64;
        Self { lead, c, prec }
    }

    /// Dense coefficients from exponent `lead`, known below `prec`.
    pub fn new(lead: i64, c: Vec<C>, prec: i64) -> Self {
        Self::normalized(lead, c, prec.min(EXACT))
    }

    /// A polynomial with no truncation.
    pub fn exact(lead: i64, c: Vec<C>) -> Self {
        Self::normalized(lead, c, EXACT)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(terms: I, prec: i64) -> Self {
        let terms: Vec<(i64, C)> = terms.into_iter().filter(|t| t.0 < prec).collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero_to(prec);
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut c = vec![C::zero(); (hi - lo + 1) as usize];
        for (e, v) in terms {
            c[(e - lo) as usize].add_assign(&v);
        }
        Self::new(lo, c, prec)
    }

    /// Coefficients `f(m)` for `lo <= m < prec`.
    pub fn from_fn(lo: i64, prec: i64, f: impl Fn(i64) -> C + Sync + Send) -> Self {
        let n = (prec - lo).max(0) as usize;
        let c = par::map_range(n, if C::HEAVY { 4 } else { 64 }, |i| f(lo + i as i64));
        Self::new(lo, c, prec)
    }

    /// `O(q^prec)`.
    pub fn zero_to(prec: i64) -> Self {
        Self { lead: 0, c: Vec::new(), prec: prec.min(EXACT) }
    }

    pub fn monomial(c: C, e: i64) -> Self {
        Self::exact(e, vec![c])
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(C::one(), 1)
    }

    /// Coefficients are known for exponents strictly below this.
    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Highest exponent whose coefficient is known.
    pub fn order(&self) -> i64 {
        self.prec - 1
    }

    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT
    }

    /// Lowest exponent with a nonzero coefficient; `prec` if none is known.
    pub fn valuation(&self) -> i64 {
        if self.c.is_empty() {
            self.prec
        } else {
            self.lead
        }
    }

    pub fn lead_coeff(&self) -> Option<&C> {
        self.c.first()
    }

    /// Highest stored exponent.
    pub fn hi(&self) -> Option<i64> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.lead + self.c.len() as i64 - 1)
        }
    }

    /// The coefficient of `q^m`, or `OutOfRange` if it is not known.
    pub fn coeff(&self, m: i64) -> Result<C> {
        if m >= self.prec {
            return Err(Error::OutOfRange { exponent: m, bound: self.prec });
        }
        Ok(self.coeff_or_zero(m))
    }

    /// The stored coefficient of `q^m`, zero outside the stored block
    /// (including the unknown range).
    pub fn coeff_or_zero(&self, m: i64) -> C {
        self.coeff_ref(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeff_ref(&self, m: i64) -> Option<&C> {
        if m < self.lead {
            return None;
        }
        self.c.get((m - self.lead) as usize)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> + '_ {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.lead + i as i64, c))
    }

    /// Drops everything at or above `prec`.
    pub fn truncate(&self, prec: i64) -> Self {
        Self::normalized(self.lead, self.c.clone(), prec.min(self.prec))
    }

    /// Reinterprets the stored coefficients as known below `prec`, treating
    /// unstored ones as zero. Only valid when the caller knows this is true.
    pub(crate) fn assume_prec(&self, prec: i64) -> Self {
        Self::normalized(self.lead, self.c.clone(), prec.min(EXACT))
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { lead: self.lead + k, c: self.c.clone(), prec: padd(self.prec, k) }
    }

    /// Substitution `q -> q^k` for `k >= 1`.
    pub fn stretch(&self, k: i64) -> Self {
        assert!(k >= 1);
        let mut c = vec![C::zero(); (self.c.len().max(1) - 1) * k as usize + 1];
        for (i, x) in self.c.iter().enumerate() {
            c[i * k as usize] = x.clone();
        }
        let prec = if self.is_exact() { EXACT } else { self.prec * k };
        Self::new(self.lead * k, c, prec)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series::new(self.lead, self.c.iter().map(f).collect(), self.prec)
    }

    pub fn try_map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> Result<D>) -> Result<Series<D>> {
        let c = self.c.iter().map(f).collect::<Result<Vec<D>>>()?;
        Ok(Series::new(self.lead, c, self.prec))
    }

    /// Multiplication by an exact polynomial given as a few terms; cheaper
    /// than a full convolution for factors like `1 - s q^n + q^{2n}`.
    pub fn mul_sparse(&self, terms: &[(i64, C)]) -> Self {
        let Some(vt) = terms.iter().filter(|t| !t.1.is_zero()).map(|t| t.0).min() else {
            return Self::zero();
        };
        let prec = padd(self.prec, vt);
        if self.c.is_empty() {
            return Self::zero_to(prec);
        }
        let hi_t = terms.iter().map(|t| t.0).max().unwrap();
        let lo = self.lead + vt;
        let mut hi = self.hi().unwrap() + hi_t;
        if prec < EXACT {
            hi = hi.min(prec - 1);
        }
        if hi < lo {
            return Self::zero_to(prec);
        }
        let mut c = vec![C::zero(); (hi - lo + 1) as usize];
        for (e, k) in terms {
            if k.is_zero() {
                continue;
            }
            for (i, x) in self.c.iter().enumerate() {
                let m = self.lead + i as i64 + e;
                if m > hi {
                    break;
                }
                c[(m - lo) as usize].add_mul(x, k);
            }
        }
        Self::normalized(lo, c, prec)
    }

    /// The series of an exact Laurent polynomial.
    pub fn from_laurent(p: &Laurent<C>) -> Self {
        Self::from_terms(p.terms().map(|(e, c)| (e, c.clone())), EXACT)
    }

    /// The Laurent polynomial, if nothing is truncated.
    pub fn to_laurent(&self) -> Option<Laurent<C>> {
        if self.is_exact() {
            Some(Laurent::from_dense(self.lead, self.c.clone()))
        } else {
            None
        }
    }

    /// The stored coefficients as a Laurent polynomial, ignoring truncation.
    pub fn known_part(&self) -> Laurent<C> {
        Laurent::from_dense(self.lead, self.c.clone())
    }

    /// Multiplication by a ring element.
    pub fn mul_coeff(&self, k: &C) -> Self {
        Self::normalized(self.lead, self.c.iter().map(|x| x.mul(k)).collect(), self.prec)
    }

    /// The operator `D = q d/dq`.
    pub fn dq(&self) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .map(|(i, x)| x.scale(&Rational::from(self.lead + i as i64)))
            .collect();
        Self::normalized(self.lead, c, self.prec)
    }

    /// `D^{-1}`: requires a vanishing constant term.
    pub fn dq_inv(&self) -> Result<Self> {
        if self.coeff_ref(0).is_some_and(|c| !c.is_zero()) {
            return Err(Error::NonzeroConstantTerm);
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let m = self.lead + i as i64;
                if m == 0 {
                    C::zero()
                } else {
                    x.scale(&Rational::new(1, m))
                }
            })
            .collect();
        Ok(Self::normalized(self.lead, c, self.prec))
    }

    /// The ordinary derivative `d/dq`.
    pub fn deriv(&self) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .map(|(i, x)| x.scale(&Rational::from(self.lead + i as i64)))
            .collect();
        Self::normalized(self.lead - 1, c, psub(self.prec, 1))
    }

    /// Coefficient of `q^{-1}`.
    pub fn res(&self) -> Result<C> {
        self.coeff(-1)
    }

    /// Multiplicative inverse; the leading coefficient must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        Self::one().div(self)
    }

    /// Exact quotient `self / d`.
    ///
    /// The leading coefficient of `d` need not be a unit as long as every
    /// step of the recurrence divides exactly in `C`. Two exact operands
    /// give an exact quotient or `NonDivisible`.
    pub fn div(&self, d: &Self) -> Result<Self> {
        if d.c.is_empty() {
            return Err(if d.is_exact() {
                Error::DivisionByZero
            } else {
                Error::BadValuation(format!("divisor is O(q^{}) with no known term", d.prec))
            });
        }
        let (va, vb) = (self.valuation(), d.lead);
        if self.c.is_empty() {
            return Ok(Self::zero_to(psub(self.prec, vb)));
        }
        let lo = va - vb;
        if self.is_exact() && d.is_exact() {
            let top = self.hi().unwrap() - d.hi().unwrap();
            if top < lo {
                return Err(Error::NonDivisible("degree of divisor too large".into()));
            }
            let quot = self.div_recurrence(d, lo, top + 1)?;
            let quot = Self::exact(lo, quot.c);
            if quot.mul(d) != *self {
                return Err(Error::NonDivisible("nonzero remainder".into()));
            }
            return Ok(quot);
        }
        let prec = psub(padd(va, d.prec), 2 * vb).min(psub(self.prec, vb));
        self.div_recurrence(d, lo, prec)
    }

    /// Quotient coefficients for exponents `lo..prec` by the triangular
    /// recurrence `c_k = (a_k - sum_{j<k} c_j b_{k-j}) / b_0`.
    fn div_recurrence(&self, d: &Self, lo: i64, prec: i64) -> Result<Self> {
        let n = (prec - lo).max(0) as usize;
        let b0 = &d.c[0];
        let nb = d.c.len();
        let va = self.valuation();
        let mut out: Vec<C> = Vec::with_capacity(n);
        for k in 0..n {
            let start = (k + 1).saturating_sub(nb);
            let dot = |r: std::ops::Range<usize>| C::dot(r.map(|j| (&out[j], &d.c[k - j])));
            let mut acc = self.coeff_or_zero(va + k as i64);
            if C::HEAVY && k - start >= 16 && par::parallel_enabled() {
                const CHUNK: usize = 8;
                let chunks = (k - start).div_ceil(CHUNK);
                for p in par::map_range(chunks, 2, |i| dot(start + i * CHUNK..(start + (i + 1) * CHUNK).min(k))) {
                    acc.sub_assign(&p);
                }
            } else {
                acc.sub_assign(&dot(start..k));
            }
            let ck = acc.div_exact(b0).map_err(|_| {
                Error::NonUnitLeading(format!(
                    "leading coefficient {b0:?} does not divide at q^{}",
                    lo + k as i64
                ))
            })?;
            out.push(ck);
        }
        Ok(Self::new(lo, out, prec))
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.inverse()?.pow(-n);
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// First exponent, below the common precision, where the two differ.
    pub fn first_difference(&self, other: &Self) -> Option<i64> {
        let prec = self.prec.min(other.prec);
        let lo = match (self.c.is_empty(), other.c.is_empty()) {
            (true, true) => return None,
            (false, true) => self.lead,
            (true, false) => other.lead,
            (false, false) => self.lead.min(other.lead),
        };
        let hi = self.hi().unwrap_or(lo).max(other.hi().unwrap_or(lo));
        (lo..=hi.min(prec - 1)).find(|&m| {
            let z = C::zero();
            self.coeff_ref(m).unwrap_or(&z) != other.coeff_ref(m).unwrap_or(&z)
        })
    }

    /// Equality up to the common precision.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }
}

impl<C: Coeff> Coeff for Series<C> {
    fn zero() -> Self {
        Self::zero_to(EXACT)
    }

    fn one() -> Self {
        Self::constant(C::one())
    }

    /// Only the exact zero counts; `O(q^n)` is not known to vanish.
    fn is_zero(&self) -> bool {
        self.c.is_empty() && self.is_exact()
    }

    fn add(&self, o: &Self) -> Self {
        let prec = self.prec.min(o.prec);
        if o.c.is_empty() {
            return self.truncate(prec);
        }
        if self.c.is_empty() {
            return o.truncate(prec);
        }
        let lo = self.lead.min(o.lead);
        let hi = self.hi().unwrap().max(o.hi().unwrap()).min(prec - 1);
        if hi < lo {
            return Self::zero_to(prec);
        }
        let mut c = vec![C::zero(); (hi - lo + 1) as usize];
        for (s, off) in [(self, self.lead - lo), (o, o.lead - lo)] {
            for (i, x) in s.c.iter().enumerate() {
                if let Some(slot) = c.get_mut(off as usize + i) {
                    slot.add_assign(x);
                }
            }
        }
        Self::normalized(lo, c, prec)
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Self) -> Self {
        let prec = padd(self.valuation(), o.prec).min(padd(o.valuation(), self.prec));
        if self.c.is_empty() || o.c.is_empty() {
            return Self::zero_to(prec);
        }
        let lo = self.lead + o.lead;
        let (na, nb) = (self.c.len(), o.c.len());
        let full = na + nb - 1;
        let n = if prec >= EXACT { full } else { ((prec - lo).max(0) as usize).min(full) };
        let c = par::map_range(n, if C::HEAVY { 4 } else { 48 }, |k| {
            C::dot((k.saturating_sub(nb - 1)..=k.min(na - 1)).map(|i| (&self.c[i], &o.c[k - i])))
        });
        Self::normalized(lo, c, prec)
    }

    fn neg(&self) -> Self {
        Self { lead: self.lead, c: self.c.iter().map(|x| x.neg()).collect(), prec: self.prec }
    }

    fn from_rational(r: &Rational) -> Self {
        Self::constant(C::from_rational(r))
    }

    fn scale(&self, r: &Rational) -> Self {
        Self::normalized(self.lead, self.c.iter().map(|x| x.scale(r)).collect(), self.prec)
    }

    fn div_exact(&self, d: &Self) -> Result<Self> {
        self.div(d)
    }

    const HEAVY: bool = true;
}

impl<C: Coeff> std::ops::Add for Series<C> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Coeff::add(&self, &o)
    }
}

impl<C: Coeff> std::ops::Sub for Series<C> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Coeff::sub(&self, &o)
    }
}

impl<C: Coeff> std::ops::Mul for Series<C> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Coeff::mul(&self, &o)
    }
}

impl<C: Coeff> std::ops::Neg for Series<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Coeff::neg(&self)
    }
}

impl<C: Coeff + VarDisplay> VarDisplay for Series<C> {
    fn render(&self, vars: &[&str]) -> String {
        let var = vars.first().copied().unwrap_or("q");
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
        if !self.is_exact() {
            parts.push(format!("O({var}^{})", self.prec));
        }
        if parts.is_empty() {
            return "0".into();
        }
        parts.join(" + ").replace("+ -", "- ")
    }

    fn compound(&self) -> bool {
        true
    }
}

impl<C: Coeff + VarDisplay> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&["q", "t", "u"]))
    }
}
