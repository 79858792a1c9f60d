use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use ibig::IBig;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::upoly;
use crate::error::{Error, Result};

/// Coefficient ring of a Laurent polynomial: `Z` or `GF(ε)` with ε ∈ {2, 3}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseRing {
    Integers,
    ModEps(u8),
}

impl BaseRing {
    pub fn modulus(self) -> Option<u8> {
        match self {
            BaseRing::Integers => None,
            BaseRing::ModEps(p) => Some(p),
        }
    }

    pub fn mod_eps(eps: i64) -> Result<Self> {
        match eps {
            2 | 3 => Ok(BaseRing::ModEps(eps as u8)),
            _ => Err(Error::UnsupportedModulus(eps)),
        }
    }

    pub(crate) fn normalize(self, c: IBig) -> IBig {
        match self {
            BaseRing::Integers => c,
            BaseRing::ModEps(p) => upoly::reduce(&c, p),
        }
    }

    pub(crate) fn check(self, other: BaseRing) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.to_string(), other.to_string()))
        }
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Integers => write!(f, "Z"),
            BaseRing::ModEps(p) => write!(f, "GF({p})"),
        }
    }
}

/// A Laurent polynomial in `q` stored as sorted `(exponent, coefficient)`
/// pairs with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    ring: BaseRing,
    terms: Vec<(i32, IBig)>,
}

impl LaurentPoly {
    pub fn zero(ring: BaseRing) -> Self {
        LaurentPoly { ring, terms: Vec::new() }
    }

    pub fn one(ring: BaseRing) -> Self {
        Self::monomial(1, 0, ring)
    }

    pub fn q(ring: BaseRing) -> Self {
        Self::monomial(1, 1, ring)
    }

    pub fn constant(c: i64, ring: BaseRing) -> Self {
        Self::monomial(c, 0, ring)
    }

    pub fn monomial(c: i64, exp: i32, ring: BaseRing) -> Self {
        Self::from_terms(ring, [(exp, IBig::from(c))])
    }

    /// Builds a polynomial from arbitrary terms, combining repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (i32, IBig)>>(ring: BaseRing, terms: I) -> Self {
        let mut v: Vec<(i32, IBig)> = terms.into_iter().collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(i32, IBig)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        let terms = out
            .into_iter()
            .map(|(e, c)| (e, ring.normalize(c)))
            .filter(|(_, c)| *c != upoly::zero())
            .collect();
        LaurentPoly { ring, terms }
    }

    pub(crate) fn from_dense(ring: BaseRing, low: i32, coeffs: Vec<IBig>) -> Self {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .map(|(k, c)| (low + k as i32, ring.normalize(c)))
            .filter(|(_, c)| *c != upoly::zero())
            .collect();
        LaurentPoly { ring, terms }
    }

    /// `(lowest exponent, dense coefficients)`; `None` for zero.
    pub(crate) fn to_dense(&self) -> Option<(i32, Vec<IBig>)> {
        let low = self.terms.first()?.0;
        let high = self.terms.last()?.0;
        let mut v = vec![upoly::zero(); (high - low + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - low) as usize] = c.clone();
        }
        Some((low, v))
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn terms(&self) -> &[(i32, IBig)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1 == IBig::from(1u8)
    }

    pub fn coeff(&self, exp: i32) -> IBig {
        match self.terms.binary_search_by_key(&exp, |t| t.0) {
            Ok(k) => self.terms[k].1.clone(),
            Err(_) => upoly::zero(),
        }
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    /// Single term `c q^e`, if the polynomial is a monomial.
    pub fn as_monomial(&self) -> Option<(i32, &IBig)> {
        match self.terms.as_slice() {
            [(e, c)] => Some((*e, c)),
            _ => None,
        }
    }

    /// The scalar bar involution `q ↦ q⁻¹`.
    pub fn bar(&self) -> Self {
        let mut terms: Vec<_> = self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        terms.reverse();
        LaurentPoly { ring: self.ring, terms }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            ring: self.ring,
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &IBig) -> Self {
        Self::from_terms(self.ring, self.terms.iter().map(|(e, x)| (*e, x * c)))
    }

    /// Part with strictly positive exponents.
    pub fn positive_part(&self) -> Self {
        LaurentPoly {
            ring: self.ring,
            terms: self.terms.iter().filter(|t| t.0 > 0).cloned().collect(),
        }
    }

    /// Substitutes `q ↦ q^d`.
    pub fn substitute_power(&self, d: i32) -> Self {
        LaurentPoly {
            ring: self.ring,
            terms: self.terms.iter().map(|(e, c)| (e * d, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.ring);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficientwise reduction `A → A/εA`.
    pub fn reduce_mod(&self, eps: i64) -> Result<Self> {
        let ring = BaseRing::mod_eps(eps)?;
        if let BaseRing::ModEps(p) = self.ring {
            if i64::from(p) != eps {
                return Err(Error::RingMismatch(self.ring.to_string(), ring.to_string()));
            }
            return Ok(self.clone());
        }
        Ok(Self::from_terms(ring, self.terms.iter().cloned()))
    }

    /// Lifts a `GF(ε)` polynomial to `Z` using representatives in `[0, ε)`.
    pub fn lift_to_integers(&self) -> Self {
        LaurentPoly { ring: BaseRing::Integers, terms: self.terms.clone() }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.ring.check(other.ring)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.ring.check(other.ring)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.ring.check(other.ring)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_a {
                out.push(a[i].clone());
                i += 1;
            } else if take_b {
                let c = if negate { -b[j].1.clone() } else { b[j].1.clone() };
                out.push((b[j].0, self.ring.normalize(c)));
                j += 1;
            } else {
                let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                let c = self.ring.normalize(c);
                if c != upoly::zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        LaurentPoly { ring: self.ring, terms: out }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ring);
        }
        if let Some((e, c)) = self.as_monomial() {
            return other.scale(c).shift(e);
        }
        if let Some((e, c)) = other.as_monomial() {
            return self.scale(c).shift(e);
        }
        let low = self.terms[0].0 + other.terms[0].0;
        let high = self.terms.last().unwrap().0 + other.terms.last().unwrap().0;
        let mut acc = vec![upoly::zero(); (high - low + 1) as usize];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                acc[(ea + eb - low) as usize] += ca * cb;
            }
        }
        Self::from_dense(self.ring, low, acc)
    }
}

/// Ring operation selector for [`laurent_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaurentOp {
    Add,
    Mul,
    Neg,
}

/// Applies `op` to `a` (and `b` for binary operations).
pub fn laurent_arith(a: &LaurentPoly, b: &LaurentPoly, op: LaurentOp) -> Result<LaurentPoly> {
    match op {
        LaurentOp::Add => a.checked_add(b),
        LaurentOp::Mul => a.checked_mul(b),
        LaurentOp::Neg => Ok(-a),
    }
}

// Operator impls panic on a ring mismatch; use the `checked_*` methods when
// the rings come from untrusted input.
impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::from_terms(self.ring, self.terms.iter().map(|(e, c)| (*e, -c.clone())))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = *c < upoly::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let one = mag == IBig::from(1u8);
            match *e {
                0 => write!(f, "{mag}")?,
                1 if one => write!(f, "q")?,
                1 => write!(f, "{mag}q")?,
                _ if one => write!(f, "q^{e}")?,
                _ => write!(f, "{mag}q^{e}")?,
            }
        }
        Ok(())
    }
}

impl LaurentPoly {
    /// Parses the textual form produced by `Display` (also accepts `*`,
    /// `q^(-1)` and the Unicode minus sign).
    pub fn parse(s: &str, ring: BaseRing) -> Result<Self> {
        let s: String = s.replace('\u{2212}', "-").chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bytes: Vec<char> = s.chars().collect();
        let mut terms = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1i64;
            if bytes[i] == '+' || bytes[i] == '-' {
                if bytes[i] == '-' {
                    sign = -1;
                }
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = bytes[start..i].iter().collect();
            let mut coeff = if digits.is_empty() {
                IBig::from(1u8)
            } else {
                digits.parse::<IBig>().map_err(|e| Error::Parse(e.to_string()))?
            };
            if i < bytes.len() && bytes[i] == '*' {
                i += 1;
            }
            let mut exp = 0i32;
            if i < bytes.len() && bytes[i] == 'q' {
                i += 1;
                exp = 1;
                if i < bytes.len() && bytes[i] == '^' {
                    i += 1;
                    let paren = i < bytes.len() && bytes[i] == '(';
                    if paren {
                        i += 1;
                    }
                    let es = i;
                    if i < bytes.len() && bytes[i] == '-' {
                        i += 1;
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let e: String = bytes[es..i].iter().collect();
                    exp = e.parse().map_err(|_| Error::Parse(format!("bad exponent in {s}")))?;
                    if paren {
                        if i >= bytes.len() || bytes[i] != ')' {
                            return Err(Error::Parse(format!("unbalanced parenthesis in {s}")));
                        }
                        i += 1;
                    }
                }
            } else if digits.is_empty() {
                return Err(Error::Parse(format!("unexpected character in {s}")));
            }
            if i < bytes.len() && bytes[i] != '+' && bytes[i] != '-' {
                return Err(Error::Parse(format!("unexpected character '{}' in {s}", bytes[i])));
            }
            if sign < 0 {
                coeff = -coeff;
            }
            terms.push((exp, coeff));
        }
        Ok(Self::from_terms(ring, terms))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffJson {
    Small(i64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct LaurentJson {
    terms: Vec<(i32, CoeffJson)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    modulus: Option<u8>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let c = match i64::try_from(c) {
                    Ok(x) => CoeffJson::Small(x),
                    Err(_) => CoeffJson::Big(c.to_string()),
                };
                (*e, c)
            })
            .collect();
        LaurentJson { terms, modulus: self.ring.modulus() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = LaurentJson::deserialize(d)?;
        let ring = match j.modulus {
            None => BaseRing::Integers,
            Some(p) => BaseRing::mod_eps(i64::from(p)).map_err(D::Error::custom)?,
        };
        let mut terms = Vec::with_capacity(j.terms.len());
        for (e, c) in j.terms {
            let c = match c {
                CoeffJson::Small(x) => IBig::from(x),
                CoeffJson::Big(s) => s.parse::<IBig>().map_err(D::Error::custom)?,
            };
            terms.push((e, c));
        }
        Ok(LaurentPoly::from_terms(ring, terms))
    }
}
