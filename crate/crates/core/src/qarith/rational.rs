use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use ibig::IBig;
use serde::{Deserialize, Serialize};

use super::laurent::{BaseRing, LaurentPoly};
use super::upoly;
use crate::error::{Error, Result};

/// An element of `Q(q)` or `GF(ε)(q)` in canonical form.
///
/// The denominator is an ordinary polynomial with nonzero constant term and
/// positive leading coefficient (monic over `GF(ε)`); powers of `q` live in
/// the numerator and `gcd(num, den) = 1` in `Z[q]` (content included), so two
/// fractions are equal iff their canonical forms are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct RationalFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFn {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        num.ring().check(den.ring())?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        let den = LaurentPoly::one(p.ring());
        RationalFn { num: p, den }
    }

    pub fn zero(ring: BaseRing) -> Self {
        Self::from_laurent(LaurentPoly::zero(ring))
    }

    pub fn one(ring: BaseRing) -> Self {
        Self::from_laurent(LaurentPoly::one(ring))
    }

    pub fn constant(c: i64, ring: BaseRing) -> Self {
        Self::from_laurent(LaurentPoly::constant(c, ring))
    }

    pub fn monomial(c: i64, e: i32, ring: BaseRing) -> Self {
        Self::from_laurent(LaurentPoly::monomial(c, e, ring))
    }

    fn canonical(num: LaurentPoly, den: LaurentPoly) -> Self {
        let ring = num.ring();
        if num.is_zero() {
            return Self::zero(ring);
        }
        if den.is_one() {
            return RationalFn { num, den };
        }
        let modulus = ring.modulus();
        // den = q^k * d0 with d0(0) != 0
        let (dlow, d0) = den.to_dense().expect("nonzero");
        let (nlow, n0) = num.to_dense().expect("nonzero");
        let g = upoly::gcd(&n0, &d0, modulus);
        let (mut n1, mut d1) = if g.len() == 1 && g[0] == IBig::from(1u8) {
            (n0, d0)
        } else {
            (upoly::div_exact(&n0, &g, modulus), upoly::div_exact(&d0, &g, modulus))
        };
        // normalize the leading coefficient of the denominator
        let lead = d1.last().unwrap().clone();
        match modulus {
            Some(p) => {
                let inv = upoly::inv_mod(&lead, p);
                for c in n1.iter_mut().chain(d1.iter_mut()) {
                    *c = upoly::reduce(&(&*c * &inv), p);
                }
            }
            None => {
                if lead < upoly::zero() {
                    for c in n1.iter_mut().chain(d1.iter_mut()) {
                        *c = -c.clone();
                    }
                }
            }
        }
        let num = LaurentPoly::from_dense(ring, nlow - dlow, n1);
        let den = LaurentPoly::from_dense(ring, 0, d1);
        RationalFn { num, den }
    }

    pub fn ring(&self) -> BaseRing {
        self.num.ring()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The value as a Laurent polynomial, if the denominator is trivial.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn to_laurent(&self) -> Result<LaurentPoly> {
        self.as_laurent().cloned().ok_or_else(|| Error::NotLaurent(self.to_string()))
    }

    pub fn bar(&self) -> Self {
        if self.den.is_one() {
            return Self::from_laurent(self.num.bar());
        }
        Self::canonical(self.num.bar(), self.den.bar())
    }

    /// Substitutes `q ↦ q^d`.
    pub fn substitute_power(&self, d: i32) -> Self {
        if self.den.is_one() {
            return Self::from_laurent(self.num.substitute_power(d));
        }
        Self::canonical(self.num.substitute_power(d), self.den.substitute_power(d))
    }

    pub fn shift(&self, k: i32) -> Self {
        RationalFn { num: self.num.shift(k), den: self.den.clone() }
    }

    pub fn reduce_mod(&self, eps: i64) -> Result<Self> {
        let den = self.den.reduce_mod(eps)?;
        if den.is_zero() {
            return Err(Error::NotReducible(eps as u8));
        }
        Ok(Self::canonical(self.num.reduce_mod(eps)?, den))
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.ring().check(o.ring())?;
        Ok(self.add_impl(o, false))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.ring().check(o.ring())?;
        Ok(self.add_impl(o, true))
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.ring().check(o.ring())?;
        Ok(self.mul_impl(o))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        self.ring().check(o.ring())?;
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul_impl(&o.inv_unchecked()))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv_unchecked())
    }

    fn inv_unchecked(&self) -> Self {
        Self::canonical(self.den.clone(), self.num.clone())
    }

    fn add_impl(&self, o: &Self, negate: bool) -> Self {
        let combine = |a: &LaurentPoly, b: &LaurentPoly| if negate { a - b } else { a + b };
        if self.den == o.den {
            let num = combine(&self.num, &o.num);
            if self.den.is_one() {
                return Self::from_laurent(num);
            }
            return Self::canonical(num, self.den.clone());
        }
        let num = combine(&(&self.num * &o.den), &(&o.num * &self.den));
        Self::canonical(num, &self.den * &o.den)
    }

    fn mul_impl(&self, o: &Self) -> Self {
        if self.den.is_one() && o.den.is_one() {
            return Self::from_laurent(&self.num * &o.num);
        }
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.ring());
        }
        Self::canonical(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn mul_laurent(&self, p: &LaurentPoly) -> Self {
        if self.den.is_one() {
            return Self::from_laurent(&self.num * p);
        }
        Self::canonical(&self.num * p, self.den.clone())
    }

    /// `self · d` as a Laurent polynomial, where `d` is a multiple of the
    /// denominator (for instance from [`common_denominator`]).
    pub fn scaled_numerator(&self, d: &LaurentPoly) -> LaurentPoly {
        if self.den.is_one() {
            return &self.num * d;
        }
        let modulus = self.ring().modulus();
        let (dlow, dd) = d.to_dense().expect("nonzero multiplier");
        let (_, own) = self.den.to_dense().expect("nonzero");
        let quot = upoly::div_exact(&dd, &own, modulus);
        &self.num * &LaurentPoly::from_dense(self.ring(), dlow, quot)
    }

    /// Power series of the value at `q = 0`, as coefficients of
    /// `q^start, q^(start+1), ..., q^(order-1)` where `start` is the lowest
    /// exponent of the numerator. Requires the denominator's constant term to
    /// be a unit.
    pub fn series_at_zero(&self, order: i32) -> Result<Vec<(i32, IBig)>> {
        let ring = self.ring();
        if self.num.is_zero() {
            return Ok(Vec::new());
        }
        let (_, den) = self.den.to_dense().expect("nonzero");
        let d0 = den[0].clone();
        let unit = match ring.modulus() {
            Some(p) => upoly::inv_mod(&d0, p),
            None => {
                if d0 == IBig::from(1u8) || d0 == IBig::from(-1) {
                    d0.clone()
                } else {
                    return Err(Error::NotLaurent(format!("series of {self} has non-integral coefficients")));
                }
            }
        };
        let (nlow, num) = self.num.to_dense().expect("nonzero");
        let len = (order - nlow).max(0) as usize;
        let mut out: Vec<IBig> = vec![upoly::zero(); len];
        // out * den = num (mod q^len)
        for k in 0..len {
            let mut acc = num.get(k).cloned().unwrap_or_else(upoly::zero);
            for j in 1..=k.min(den.len() - 1) {
                acc -= &den[j] * &out[k - j];
            }
            out[k] = ring.normalize(acc * &unit);
        }
        Ok(out
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c != upoly::zero())
            .map(|(k, c)| (nlow + k as i32, c))
            .collect())
    }
}

impl From<LaurentPoly> for RationalFn {
    fn from(p: LaurentPoly) -> Self {
        Self::from_laurent(p)
    }
}

impl Add<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl Sub<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl Mul<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Div<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn div(self, rhs: &RationalFn) -> RationalFn {
        self.checked_div(rhs).expect("division failed")
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalFn> for RationalFn {
            type Output = RationalFn;
            fn $m(self, rhs: RationalFn) -> RationalFn {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RationalFn> for RationalFn {
            type Output = RationalFn;
            fn $m(self, rhs: &RationalFn) -> RationalFn {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl RationalFn {
    /// Parses `num` or `(num)/(den)`.
    pub fn parse(s: &str, ring: BaseRing) -> Result<Self> {
        let t = s.trim();
        if let Some(rest) = t.strip_prefix('(') {
            if let Some(idx) = rest.find(")/(") {
                let num = &rest[..idx];
                let den = rest[idx + 3..]
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("bad fraction {s}")))?;
                return Self::new(LaurentPoly::parse(num, ring)?, LaurentPoly::parse(den, ring)?);
            }
        }
        Ok(Self::from_laurent(LaurentPoly::parse(t, ring)?))
    }
}

/// Least common multiple of the denominators (an ordinary polynomial with
/// nonzero constant term).
pub fn common_denominator<'a, I: IntoIterator<Item = &'a RationalFn>>(ring: BaseRing, items: I) -> LaurentPoly {
    let modulus = ring.modulus();
    let mut acc: Vec<IBig> = vec![IBig::from(1u8)];
    for x in items {
        if x.den.is_one() {
            continue;
        }
        let (_, d) = x.den.to_dense().expect("nonzero");
        let g = upoly::gcd(&acc, &d, modulus);
        let part = upoly::div_exact(&d, &g, modulus);
        acc = upoly::mul(&acc, &part, modulus);
    }
    LaurentPoly::from_dense(ring, 0, acc)
}
