//! Linear combinations of divided-power words in the generators `f_i`, the
//! contraction form and form-based zero testing.

mod form;
mod parse;
mod space;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use parking_lot::RwLock;
use serde::{Deserialize, Serialize};

use crate::cartan::{CartanDatum, DiagramAut};
use crate::error::{Error, Result};
use crate::qarith::{q_binomial, BaseRing, LaurentPoly, RationalFn};

pub use form::{
    contract, form_value, is_zero, pairing, pairing_product, phi, phi_of_product, shuffle, weight_constant, PhiVec,
};
pub use space::{plain_word, WordSpace};

/// A letter `f_i^{(a)}` stored as `(vertex index, a)`.
pub type Letter = (u8, u8);

/// A word of divided powers; adjacent letters always carry distinct vertices.
pub type Word = Vec<Letter>;

/// Multiplicity of each `f_i`, counting divided powers.
pub type Weight = Vec<u32>;

pub fn word_weight(rank: usize, w: &[Letter]) -> Weight {
    let mut v = vec![0; rank];
    for &(i, a) in w {
        v[i as usize] += a as u32;
    }
    v
}

/// `[n choose k]_{q^d}`, memoized.
pub(crate) fn binomial(n: u32, k: u32, d: u32) -> LaurentPoly {
    static CACHE: OnceLock<RwLock<HashMap<(u32, u32, u32), LaurentPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.read().get(&(n, k, d)) {
        return v.clone();
    }
    let v = q_binomial(n as i64, k as i64, d).expect("k <= n");
    cache.write().insert((n, k, d), v.clone());
    v
}

/// An element of the free algebra on the `f_i`, which maps onto `U_q⁻`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeElt {
    datum: Arc<CartanDatum>,
    ring: BaseRing,
    terms: BTreeMap<Word, RationalFn>,
}

impl FreeElt {
    pub fn zero(datum: &Arc<CartanDatum>, ring: BaseRing) -> Self {
        FreeElt { datum: datum.clone(), ring, terms: BTreeMap::new() }
    }

    pub fn one(datum: &Arc<CartanDatum>, ring: BaseRing) -> Self {
        Self::from_word(datum, ring, Vec::new(), RationalFn::one(ring))
    }

    /// `f_i^{(a)}`.
    pub fn generator(datum: &Arc<CartanDatum>, ring: BaseRing, i: usize, a: u32) -> Self {
        if a == 0 {
            return Self::one(datum, ring);
        }
        Self::from_word(datum, ring, vec![(i as u8, a as u8)], RationalFn::one(ring))
    }

    /// A single term; the word is normalized (adjacent equal vertices merged).
    pub fn from_word(datum: &Arc<CartanDatum>, ring: BaseRing, word: Word, coeff: RationalFn) -> Self {
        let mut out = Self::zero(datum, ring);
        let (w, c) = normalize_word(datum, &word);
        let coeff = coeff.mul_laurent(&reduce_to(&c, ring));
        out.add_term(w, coeff);
        out
    }

    /// Sum of the given terms, each normalized as in [`FreeElt::from_word`].
    pub fn from_terms<I: IntoIterator<Item = (Word, RationalFn)>>(datum: &Arc<CartanDatum>, ring: BaseRing, terms: I) -> Self {
        let mut out = Self::zero(datum, ring);
        for (word, coeff) in terms {
            let (w, c) = normalize_word(datum, &word);
            out.add_term(w, coeff.mul_laurent(&reduce_to(&c, ring)));
        }
        out
    }

    /// `f_{i_1} f_{i_2} ⋯` for a plain sequence of vertices.
    pub fn plain(datum: &Arc<CartanDatum>, ring: BaseRing, letters: &[usize]) -> Self {
        let w: Word = letters.iter().map(|&i| (i as u8, 1)).collect();
        Self::from_word(datum, ring, w, RationalFn::one(ring))
    }

    pub fn scalar(datum: &Arc<CartanDatum>, c: RationalFn) -> Self {
        let ring = c.ring();
        Self::from_word(datum, ring, Vec::new(), c)
    }

    pub fn datum(&self) -> &Arc<CartanDatum> {
        &self.datum
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Word, RationalFn> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True if no term is stored (the free-algebra zero; see [`is_zero`] for
    /// zero in `U_q⁻`).
    pub fn is_free_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[Letter]) -> RationalFn {
        self.terms.get(w).cloned().unwrap_or_else(|| RationalFn::zero(self.ring))
    }

    fn add_term(&mut self, w: Word, c: RationalFn) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                let s = &*x + &c;
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.datum != other.datum && *self.datum != *other.datum {
            return Err(Error::DatumMismatch);
        }
        self.ring.check(other.ring)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, s: &RationalFn) -> Self {
        if s.is_zero() {
            return Self::zero(&self.datum, self.ring);
        }
        self.map_coeffs(|c| c * s)
    }

    pub fn scale_laurent(&self, s: &LaurentPoly) -> Self {
        self.scale(&RationalFn::from_laurent(s.clone()))
    }

    fn map_coeffs(&self, f: impl Fn(&RationalFn) -> RationalFn) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| (w.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        FreeElt { datum: self.datum.clone(), ring: self.ring, terms }
    }

    /// Free-algebra product with divided-power merging at the junction.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut acc: HashMap<Word, RationalFn> = HashMap::new();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let (w, merge) = concat(&self.datum, w1, w2);
                let mut c = c1 * c2;
                if let Some(m) = merge {
                    c = c.mul_laurent(&reduce_to(&m, self.ring));
                }
                match acc.get_mut(&w) {
                    Some(x) => *x = &*x + &c,
                    None => {
                        acc.insert(w, c);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(FreeElt { datum: self.datum.clone(), ring: self.ring, terms })
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.datum, self.ring);
        for _ in 0..n {
            acc = acc.multiply(self).expect("same datum");
        }
        acc
    }

    /// Weight of every term, if the element is homogeneous and nonzero.
    pub fn weight(&self) -> Option<Weight> {
        let mut it = self.terms.keys().map(|w| word_weight(self.datum.rank(), w));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// Homogeneous components, keyed by weight.
    pub fn components(&self) -> BTreeMap<Weight, FreeElt> {
        let mut out: BTreeMap<Weight, FreeElt> = BTreeMap::new();
        for (w, c) in &self.terms {
            let wt = word_weight(self.datum.rank(), w);
            out.entry(wt)
                .or_insert_with(|| Self::zero(&self.datum, self.ring))
                .terms
                .insert(w.clone(), c.clone());
        }
        out
    }

    /// Bar involution: words of divided powers are fixed, coefficients barred.
    pub fn bar(&self) -> Self {
        self.map_coeffs(|c| c.bar())
    }

    /// The antiautomorphism reversing every word.
    pub fn star(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| (w.iter().rev().copied().collect(), c.clone()))
            .collect();
        FreeElt { datum: self.datum.clone(), ring: self.ring, terms }
    }

    /// Relabels letters by `σ`.
    pub fn sigma(&self, aut: &DiagramAut) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| (w.iter().map(|&(i, a)| (aut.apply(i as usize) as u8, a)).collect(), c.clone()))
            .collect();
        FreeElt { datum: self.datum.clone(), ring: self.ring, terms }
    }

    /// Coefficientwise reduction to `GF(ε)`.
    pub fn reduce_mod(&self, eps: i64) -> Result<Self> {
        let ring = BaseRing::mod_eps(eps)?;
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            let r = c.reduce_mod(eps)?;
            if !r.is_zero() {
                terms.insert(w.clone(), r);
            }
        }
        Ok(FreeElt { datum: self.datum.clone(), ring, terms })
    }

    /// Same element viewed over another datum with identical labels.
    pub fn with_datum(&self, datum: &Arc<CartanDatum>) -> Self {
        FreeElt { datum: datum.clone(), ring: self.ring, terms: self.terms.clone() }
    }

    /// True if all coefficients are Laurent polynomials.
    pub fn is_laurent(&self) -> bool {
        self.terms.values().all(|c| c.as_laurent().is_some())
    }
}

fn reduce_to(p: &LaurentPoly, ring: BaseRing) -> LaurentPoly {
    match ring {
        BaseRing::Integers => p.clone(),
        BaseRing::ModEps(e) => p.reduce_mod(e as i64).expect("valid modulus"),
    }
}

fn concat(datum: &CartanDatum, w1: &[Letter], w2: &[Letter]) -> (Word, Option<LaurentPoly>) {
    let mut w = Vec::with_capacity(w1.len() + w2.len());
    w.extend_from_slice(w1);
    match (w1.last(), w2.first()) {
        (Some(&(i, a)), Some(&(j, b))) if i == j => {
            w.pop();
            w.push((i, a + b));
            w.extend_from_slice(&w2[1..]);
            let m = binomial((a + b) as u32, a as u32, datum.d(i as usize));
            (w, Some(m))
        }
        _ => {
            w.extend_from_slice(w2);
            (w, None)
        }
    }
}

/// Merges adjacent equal vertices and drops zero powers; returns the factor.
fn normalize_word(datum: &CartanDatum, word: &[Letter]) -> (Word, LaurentPoly) {
    let mut out: Word = Vec::with_capacity(word.len());
    let mut c = LaurentPoly::one(BaseRing::Integers);
    for &(i, a) in word {
        if a == 0 {
            continue;
        }
        match out.last_mut() {
            Some((j, b)) if *j == i => {
                c = &c * &binomial((*b + a) as u32, *b as u32, datum.d(i as usize));
                *b += a;
            }
            _ => out.push((i, a)),
        }
    }
    (out, c)
}

/// `Σ_{k=0}^{1−a_ij} (−1)^k f_i^{(k)} f_j f_i^{(1−a_ij−k)}`.
pub fn serre_element(datum: &Arc<CartanDatum>, ring: BaseRing, i: usize, j: usize) -> Result<FreeElt> {
    if i == j {
        return Err(Error::SameVertex(datum.label(i).to_string()));
    }
    let n = (1 - datum.a(i, j)) as u8;
    let mut out = FreeElt::zero(datum, ring);
    for k in 0..=n {
        let w = vec![(i as u8, k), (j as u8, 1), (i as u8, n - k)];
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let t = FreeElt::from_word(datum, ring, w, RationalFn::constant(sign, ring));
        out = out.checked_add(&t)?;
    }
    Ok(out)
}

/// `˜f_η^{(a)} = ∏_{i∈η} f_i^{(a)}`.
pub fn orbit_power(datum: &Arc<CartanDatum>, ring: BaseRing, orbit: &[usize], a: u32) -> FreeElt {
    let w: Word = orbit.iter().map(|&i| (i as u8, a as u8)).collect();
    FreeElt::from_word(datum, ring, w, RationalFn::one(ring))
}

impl fmt::Display for FreeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let s = c.to_string();
            let (neg, body) = match c.as_laurent() {
                Some(p) if p.terms().len() == 1 && p.terms()[0].1 < ibig::IBig::from(0) => {
                    (true, (-p).to_string())
                }
                _ => (false, s),
            };
            if k > 0 {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            let word = self.word_string(w);
            match (body.as_str(), word.is_empty()) {
                (b, true) => write!(f, "{}", paren(b))?,
                ("1", false) => write!(f, "{word}")?,
                (b, false) => write!(f, "{}*{word}", paren(b))?,
            }
        }
        Ok(())
    }
}

fn paren(s: &str) -> String {
    if s.contains(' ') && !s.starts_with('(') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

impl FreeElt {
    /// `f1*f2^(2)` style rendering of a word (empty string for the unit).
    pub fn word_string(&self, w: &[Letter]) -> String {
        w.iter()
            .map(|&(i, a)| {
                let l = self.datum.label(i as usize);
                if a == 1 {
                    format!("f{l}")
                } else {
                    format!("f{l}^({a})")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Parses the infix grammar, e.g. `f1*f2^(2) - q*f2^(2)*f1`.
    pub fn parse(datum: &Arc<CartanDatum>, ring: BaseRing, s: &str) -> Result<Self> {
        parse::parse(datum, ring, s, &[])
    }

    /// [`FreeElt::parse`] with `{name}` atoms bound to the given elements.
    pub fn parse_with(datum: &Arc<CartanDatum>, ring: BaseRing, s: &str, names: &[(&str, &FreeElt)]) -> Result<Self> {
        parse::parse(datum, ring, s, names)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    word: Vec<(String, u32)>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct FreeEltJson {
    terms: Vec<TermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    modulus: Option<u8>,
}

impl FreeElt {
    pub fn to_json(&self) -> serde_json::Value {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| TermJson {
                word: w.iter().map(|&(i, a)| (self.datum.label(i as usize).to_string(), a as u32)).collect(),
                coeff: c.to_string(),
            })
            .collect();
        serde_json::to_value(FreeEltJson { terms, modulus: self.ring.modulus() }).expect("serializable")
    }

    pub fn from_json(datum: &Arc<CartanDatum>, v: &serde_json::Value) -> Result<Self> {
        let j: FreeEltJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let ring = match j.modulus {
            None => BaseRing::Integers,
            Some(p) => BaseRing::mod_eps(p as i64)?,
        };
        let mut out = FreeElt::zero(datum, ring);
        for t in j.terms {
            let mut w = Vec::with_capacity(t.word.len());
            for (l, a) in t.word {
                w.push((datum.index_of(&l)? as u8, a as u8));
            }
            let c = RationalFn::parse(&t.coeff, ring)?;
            out = out.checked_add(&FreeElt::from_word(datum, ring, w, c))?;
        }
        Ok(out)
    }
}
