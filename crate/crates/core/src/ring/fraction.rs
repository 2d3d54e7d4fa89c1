use std::fmt;

use super::{forward_ops, Coeff, Rational, ULaurent};
use crate::error::{Error, Result};

/// Element of the fraction field of `Q[u, 1/u]`.
///
/// Canonical form: the denominator is a monic polynomial with nonzero
/// constant term (units `c*u^k` are pushed into the numerator) and
/// `gcd(num, den) = 1`. Equality is therefore syntactic.
#[derive(Clone, PartialEq)]
pub struct UFraction {
    num: ULaurent,
    den: ULaurent,
}

/// Dense polynomial remainder over Q; `b` must be nonzero.
fn poly_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = b[db].recip().expect("nonzero leading coefficient");
    while r.len() > db && !r.is_empty() {
        let top = r.len() - 1;
        let f = r[top].mul(&lead_inv);
        if !f.is_zero() {
            for (i, bc) in b.iter().enumerate() {
                let k = top - db + i;
                r[k] = r[k].sub(&f.mul(bc));
            }
        }
        r.pop();
        while r.last().is_some_and(|x| x.is_zero()) {
            r.pop();
        }
    }
    r
}

fn monic(mut p: Vec<Rational>) -> Vec<Rational> {
    if let Some(l) = p.last().cloned() {
        let inv = l.recip().unwrap();
        for c in &mut p {
            *c = c.mul(&inv);
        }
    }
    p
}

fn poly_gcd(a: Vec<Rational>, b: Vec<Rational>) -> Vec<Rational> {
    let (mut a, mut b) = (a, b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = monic(r);
    }
    monic(a)
}

/// Dense coefficients from exponent `lo()` upward.
fn dense(p: &ULaurent) -> Vec<Rational> {
    (p.lo()..=p.hi()).map(|e| p.coeff(e)).collect()
}

impl UFraction {
    pub fn new(num: ULaurent, den: ULaurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: ULaurent, den: ULaurent) -> Self {
        if num.is_zero() {
            return Self { num, den: ULaurent::one() };
        }
        // move the unit part u^lo of the denominator to the numerator
        let (num, den) = (num.shift(-den.lo()), den.shift(-den.lo()));
        let (num, den) = if den.hi() > 0 {
            let shift = num.lo();
            let g = poly_gcd(dense(&num.shift(-shift)), dense(&den));
            if g.len() > 1 {
                let g = ULaurent::from_dense(0, g);
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            } else {
                (num, den)
            }
        } else {
            (num, den)
        };
        let lead = den.leading().unwrap().recip().unwrap();
        Self { num: num.scale(&lead), den: den.scale(&lead) }
    }

    pub fn from_laurent(p: ULaurent) -> Self {
        Self { num: p, den: ULaurent::one() }
    }

    pub fn num(&self) -> &ULaurent {
        &self.num
    }

    pub fn den(&self) -> &ULaurent {
        &self.den
    }

    /// The Laurent polynomial this equals, if the denominator cleared.
    pub fn to_laurent(&self) -> Option<ULaurent> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn try_to_laurent(&self) -> Result<ULaurent> {
        self.to_laurent()
            .ok_or_else(|| Error::DenominatorNotCleared(format!("{self}")))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Ok(Self::canonical(base.num.pow(k), base.den.pow(k)))
    }

    /// Palindromic under `u -> 1/u`.
    pub fn is_palindromic(&self) -> bool {
        let inv = Self::canonical(self.num.invert_var(), self.den.invert_var());
        inv == *self
    }
}

impl Coeff for UFraction {
    fn zero() -> Self {
        Self { num: ULaurent::zero(), den: ULaurent::one() }
    }

    fn one() -> Self {
        Self { num: ULaurent::one(), den: ULaurent::one() }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::canonical(self.num.add(&o.num), self.den.clone());
        }
        Self::canonical(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Self) -> Self {
        if self.den.is_one() && o.den.is_one() {
            return Self { num: self.num.mul(&o.num), den: ULaurent::one() };
        }
        Self::canonical(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    // Accumulates over a common denominator, reducing once at the end.
    // Denominators met in practice divide one another (powers of y - 1).
    fn dot<'a>(pairs: impl Iterator<Item = (&'a Self, &'a Self)>) -> Self {
        let mut num = ULaurent::zero();
        let mut den = ULaurent::one();
        for (a, b) in pairs {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let n = a.num.mul(&b.num);
            let d = if b.den.is_one() {
                a.den.clone()
            } else if a.den.is_one() {
                b.den.clone()
            } else {
                a.den.mul(&b.den)
            };
            if d == den {
                num.add_assign(&n);
            } else if let Ok(q) = den.div_exact(&d) {
                num.add_assign(&n.mul(&q));
            } else if let Ok(q) = d.div_exact(&den) {
                num = num.mul(&q).add(&n);
                den = d;
            } else {
                num = num.mul(&d).add(&n.mul(&den));
                den = den.mul(&d);
            }
        }
        Self::canonical(num, den)
    }

    fn from_rational(r: &Rational) -> Self {
        Self::from_laurent(ULaurent::constant(r.clone()))
    }

    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(r), den: self.den.clone() }
    }

    fn div_exact(&self, d: &Self) -> Result<Self> {
        Ok(self.mul(&d.recip()?))
    }

    const HEAVY: bool = true;
}

forward_ops!(UFraction);

impl From<ULaurent> for UFraction {
    fn from(p: ULaurent) -> Self {
        Self::from_laurent(p)
    }
}

impl fmt::Display for UFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for UFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl super::laurent::VarDisplay for UFraction {
    fn render(&self, vars: &[&str]) -> String {
        if self.den.is_one() {
            self.num.render(vars)
        } else {
            format!("({})/({})", self.num.render(vars), self.den.render(vars))
        }
    }
    fn compound(&self) -> bool {
        true
    }
}
