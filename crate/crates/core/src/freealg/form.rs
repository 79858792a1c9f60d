//! The contraction form via the shuffle embedding.
//!
//! For a word `u = u_1 ⋯ u_n` put `φ(x)[u] = r_{u_n} ⋯ r_{u_1}(x)`, where
//! `r_i` deletes one letter `i` of a word with factor `q^{−(wt(letters to its
//! left), α_i)}`. Then `(x, f_{u_1} ⋯ f_{u_n}) = ∏_k (f_{u_k}, f_{u_k}) · φ(x)[u]`
//! with `(f_i, f_i) = 1/(1 − q_i²)`. `φ` is injective on `U_q⁻` (its kernel on
//! the free algebra is the Serre ideal), multiplicative for the quantum
//! shuffle product, and integral on divided-power words.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use ibig::IBig;
use rayon::prelude::*;

use super::space::{key, plain_word, WordSpace};
use super::{FreeElt, Letter, Weight};
use crate::cartan::CartanDatum;
use crate::error::{Error, Result};
use crate::qarith::{common_denominator, q_factorial, BaseRing, LaurentPoly, RationalFn};

const PAR_THRESHOLD: usize = 256;

/// `φ(x)` as Laurent entries over a weight space, divided by `den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiVec {
    space: Arc<WordSpace>,
    ring: BaseRing,
    data: Vec<LaurentPoly>,
    den: LaurentPoly,
}

impl PhiVec {
    pub fn zero(weight: &[u32], ring: BaseRing) -> Self {
        let space = WordSpace::get(weight);
        let data = vec![LaurentPoly::zero(ring); space.len()];
        PhiVec { space, ring, data, den: LaurentPoly::one(ring) }
    }

    pub fn weight(&self) -> &[u32] {
        self.space.weight()
    }

    pub fn space(&self) -> &Arc<WordSpace> {
        &self.space
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    /// Entries before division by [`PhiVec::den`].
    pub fn data(&self) -> &[LaurentPoly] {
        &self.data
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(LaurentPoly::is_zero)
    }

    /// Entry at a plain word as an exact rational function.
    pub fn value(&self, word: &[u8]) -> RationalFn {
        match self.space.index_of(word) {
            Some(k) => self.entry(k),
            None => RationalFn::zero(self.ring),
        }
    }

    pub fn entry(&self, k: usize) -> RationalFn {
        if self.den.is_one() {
            RationalFn::from_laurent(self.data[k].clone())
        } else {
            RationalFn::new(self.data[k].clone(), self.den.clone()).expect("nonzero den")
        }
    }

    /// `Σ c_k v_k` for rational scalars, cleared to a common denominator.
    pub fn linear_combination(weight: &[u32], ring: BaseRing, items: &[(RationalFn, &PhiVec)]) -> Self {
        let scaled: Vec<RationalFn> = items
            .iter()
            .map(|(c, v)| {
                if v.den.is_one() {
                    c.clone()
                } else {
                    c.checked_div(&RationalFn::from_laurent(v.den.clone())).expect("nonzero den")
                }
            })
            .collect();
        let den = common_denominator(ring, scaled.iter());
        let mults: Vec<LaurentPoly> = scaled.iter().map(|c| c.scaled_numerator(&den)).collect();
        let space = WordSpace::get(weight);
        let data: Vec<LaurentPoly> = (0..space.len())
            .into_par_iter()
            .with_min_len(PAR_THRESHOLD)
            .map(|k| {
                let mut acc = LaurentPoly::zero(ring);
                for (m, (_, v)) in mults.iter().zip(items) {
                    if !v.data[k].is_zero() && !m.is_zero() {
                        acc = &acc + &(m * &v.data[k]);
                    }
                }
                acc
            })
            .collect();
        PhiVec { space, ring, data, den }
    }

    pub fn reduce_mod(&self, eps: i64) -> Result<Self> {
        let den = self.den.reduce_mod(eps)?;
        if den.is_zero() {
            return Err(Error::NotReducible(eps as u8));
        }
        let data = self.data.iter().map(|p| p.reduce_mod(eps)).collect::<Result<_>>()?;
        Ok(PhiVec { space: self.space.clone(), ring: den.ring(), data, den })
    }

    /// Applies `f` to every entry.
    pub fn map_entries(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly + Sync + Send) -> Self {
        let data = self.data.par_iter().map(f).collect();
        PhiVec { space: self.space.clone(), ring: self.ring, data, den: self.den.clone() }
    }
}

fn single_block(ring: BaseRing, datum: &CartanDatum, i: usize, a: u32) -> PhiVec {
    let mut w = vec![0u32; datum.rank()];
    w[i] = a;
    let mut v = PhiVec::zero(&w, ring);
    let e = (datum.d(i) * a * a.saturating_sub(1) / 2) as i32;
    v.data[0] = LaurentPoly::monomial(1, -e, ring);
    v
}

/// `φ(x · f_i^{(a)})` from `φ(x)`.
fn append_block(datum: &CartanDatum, prev: &PhiVec, i: usize, a: u32) -> PhiVec {
    let mut weight: Weight = prev.weight().to_vec();
    weight[i] += a;
    let space = WordSpace::get(&weight);
    let d = datum.d(i) as i32;
    let base = d * (a as i32) * (a as i32 - 1) / 2;
    let ring = prev.ring;
    let li = i as u8;
    let data: Vec<LaurentPoly> = space
        .words()
        .par_iter()
        .with_min_len(PAR_THRESHOLD)
        .map(|u| {
            let n = u.len();
            // suf[t] = Σ_{s>t} (α_i, α_{u_s})
            let mut suf = vec![0i32; n];
            let mut acc = 0i32;
            for t in (0..n).rev() {
                suf[t] = acc;
                acc += datum.b(i, u[t] as usize) as i32;
            }
            let pos: Vec<usize> = (0..n).filter(|&t| u[t] == li).collect();
            let mut terms: Vec<(i32, IBig)> = Vec::new();
            for_each_subset(pos.len(), a as usize, &mut |sel: &[usize]| {
                let mut e = base;
                let mut rest = Vec::with_capacity(n - a as usize);
                let mut next = 0;
                for (t, &l) in u.iter().enumerate() {
                    if next < sel.len() && pos[sel[next]] == t {
                        e -= suf[t];
                        next += 1;
                    } else {
                        rest.push(l);
                    }
                }
                let k = prev.space.index_of_key(key(&rest));
                for (x, c) in prev.data[k].terms() {
                    terms.push((x + e, c.clone()));
                }
            });
            LaurentPoly::from_terms(ring, terms)
        })
        .collect();
    PhiVec { space, ring, data, den: prev.den.clone() }
}

/// Calls `f` with every increasing `k`-subset of `0..n`.
fn for_each_subset(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        let need = k - cur.len();
        for s in start..=n.saturating_sub(need) {
            if n < need {
                break;
            }
            cur.push(s);
            rec(s + 1, n, k, cur, f);
            cur.pop();
        }
    }
    if k > n {
        return;
    }
    rec(0, n, k, &mut Vec::with_capacity(k), f);
}

/// The quantum shuffle product: `φ(xy)` from `φ(x)` and `φ(y)`.
pub fn shuffle(datum: &CartanDatum, x: &PhiVec, y: &PhiVec) -> PhiVec {
    let ring = x.ring;
    let rank = datum.rank();
    let wx = x.weight().to_vec();
    let wy = y.weight().to_vec();
    let weight: Weight = wx.iter().zip(&wy).map(|(a, b)| a + b).collect();
    let space = WordSpace::get(&weight);
    let b: Vec<Vec<i32>> = (0..rank).map(|i| (0..rank).map(|j| datum.b(i, j) as i32).collect()).collect();
    let data: Vec<LaurentPoly> = space
        .words()
        .par_iter()
        .with_min_len(PAR_THRESHOLD)
        .map(|u| {
            let mut terms: Vec<(i32, IBig)> = Vec::new();
            let mut st = ShuffleState {
                u,
                b: &b,
                x,
                y,
                rem_x: wx.clone(),
                rem_y: wy.clone(),
                acc: vec![0; rank],
                terms: &mut terms,
            };
            st.rec(0, 0, 0, 0);
            LaurentPoly::from_terms(ring, terms)
        })
        .collect();
    PhiVec { space, ring, data, den: &x.den * &y.den }
}

struct ShuffleState<'a> {
    u: &'a [u8],
    b: &'a [Vec<i32>],
    x: &'a PhiVec,
    y: &'a PhiVec,
    rem_x: Vec<u32>,
    rem_y: Vec<u32>,
    /// acc[j] = (α_j, weight of y-letters chosen so far)
    acc: Vec<i32>,
    terms: &'a mut Vec<(i32, IBig)>,
}

impl ShuffleState<'_> {
    fn rec(&mut self, p: usize, kx: u128, ky: u128, e: i32) {
        if p == self.u.len() {
            let ix = self.x.space.index_of_key(kx);
            let iy = self.y.space.index_of_key(ky);
            let (vx, vy) = (&self.x.data[ix], &self.y.data[iy]);
            if vx.is_zero() || vy.is_zero() {
                return;
            }
            let prod = vx * vy;
            for (t, c) in prod.terms() {
                self.terms.push((t + e, c.clone()));
            }
            return;
        }
        let l = self.u[p] as usize;
        if self.rem_x[l] > 0 {
            self.rem_x[l] -= 1;
            let e2 = e - self.acc[l];
            self.rec(p + 1, (kx << 4) | l as u128, ky, e2);
            self.rem_x[l] += 1;
        }
        if self.rem_y[l] > 0 {
            self.rem_y[l] -= 1;
            for j in 0..self.acc.len() {
                self.acc[j] += self.b[j][l];
            }
            self.rec(p + 1, kx, (ky << 4) | l as u128, e);
            for j in 0..self.acc.len() {
                self.acc[j] -= self.b[j][l];
            }
            self.rem_y[l] += 1;
        }
    }
}

/// `φ(x_1 x_2 ⋯ x_n)` from the factors' vectors.
pub fn phi_of_product(datum: &CartanDatum, factors: &[&PhiVec], ring: BaseRing) -> PhiVec {
    let mut acc = PhiVec::zero(&vec![0; datum.rank()], ring);
    acc.data[0] = LaurentPoly::one(ring);
    for f in factors {
        acc = if f.space.len() == 1 && f.den.is_one() {
            // a single word i^a: appending is cheaper than shuffling
            match f.weight().iter().enumerate().filter(|(_, &m)| m > 0).collect::<Vec<_>>()[..] {
                [(i, &a)] => scale_vec(&append_block(datum, &acc, i, a), &f.data[0], &single_block(ring, datum, i, a).data[0]),
                [] => scale_vec(&acc, &f.data[0], &LaurentPoly::one(ring)),
                _ => shuffle(datum, &acc, f),
            }
        } else {
            shuffle(datum, &acc, f)
        };
    }
    acc
}

/// Rescales `v` (computed with the standard block value `std`) to a block
/// with value `actual` (both are monomials or zero).
fn scale_vec(v: &PhiVec, actual: &LaurentPoly, std: &LaurentPoly) -> PhiVec {
    if actual == std {
        return v.clone();
    }
    match (actual.as_monomial(), std.as_monomial()) {
        (Some((ea, ca)), Some((es, _))) => {
            let c = ca.clone();
            v.map_entries(|p| p.scale(&c).shift(ea - es))
        }
        _ => {
            let ring = v.ring;
            let mut out = v.clone();
            let q = RationalFn::new(actual.clone(), std.clone()).expect("nonzero");
            let lin = PhiVec::linear_combination(v.weight(), ring, &[(q, v)]);
            out.data = lin.data;
            out.den = lin.den;
            out
        }
    }
}

/// `φ(x)` for a homogeneous element of the given weight.
pub fn phi(x: &FreeElt, weight: &[u32]) -> Result<PhiVec> {
    let ring = x.ring();
    let datum = x.datum().clone();
    let den = common_denominator(ring, x.terms().values());
    let mut terms: Vec<(&[Letter], LaurentPoly)> = Vec::with_capacity(x.len());
    for (w, c) in x.terms() {
        if super::word_weight(datum.rank(), w) != weight {
            return Err(Error::WeightNotStable(format!("{weight:?} (inhomogeneous element)")));
        }
        terms.push((w.as_slice(), c.scaled_numerator(&den)));
    }
    let mut v = phi_terms(&datum, ring, weight, terms);
    v.den = den;
    Ok(v)
}

/// Suffix-trie evaluation: group terms by their last block.
fn phi_terms(datum: &CartanDatum, ring: BaseRing, weight: &[u32], terms: Vec<(&[Letter], LaurentPoly)>) -> PhiVec {
    if weight.iter().all(|&m| m == 0) {
        let mut v = PhiVec::zero(weight, ring);
        let mut s = LaurentPoly::zero(ring);
        for (_, c) in terms {
            s = &s + &c;
        }
        v.data[0] = s;
        return v;
    }
    let mut groups: BTreeMap<Letter, Vec<(&[Letter], LaurentPoly)>> = BTreeMap::new();
    for (w, c) in terms {
        let (last, prefix) = w.split_last().expect("nonempty word");
        groups.entry(*last).or_default().push((prefix, c));
    }
    let parts: Vec<PhiVec> = groups
        .into_iter()
        .map(|((i, a), group)| {
            let mut w = weight.to_vec();
            w[i as usize] -= a as u32;
            let sub = phi_terms(datum, ring, &w, group);
            append_block(datum, &sub, i as usize, a as u32)
        })
        .collect();
    let mut it = parts.into_iter();
    let mut acc = it.next().expect("at least one group");
    for p in it {
        for (a, b) in acc.data.iter_mut().zip(p.data) {
            if !b.is_zero() {
                *a = &*a + &b;
            }
        }
    }
    acc
}

/// `⟨φ(x), y⟩ = Σ_w c_w φ(x)[plain(w)] / ∏ [a]!_{d}`: the form without the
/// factor `∏_i (f_i, f_i)^{μ_i}`.
pub fn pairing(datum: &CartanDatum, phix: &PhiVec, y: &FreeElt) -> RationalFn {
    let ring = phix.ring;
    let mut groups: HashMap<Vec<(u32, u32)>, RationalFn> = HashMap::new();
    for (w, c) in y.terms() {
        let k = match phix.space.index_of(&plain_word(w)) {
            Some(k) => k,
            None => continue,
        };
        if phix.data[k].is_zero() {
            continue;
        }
        let mut fk: Vec<(u32, u32)> =
            w.iter().filter(|l| l.1 > 1).map(|&(i, a)| (a as u32, datum.d(i as usize))).collect();
        fk.sort_unstable();
        let t = c.mul_laurent(&phix.data[k]);
        let e = groups.entry(fk).or_insert_with(|| RationalFn::zero(ring));
        *e = &*e + &t;
    }
    let mut keys: Vec<_> = groups.keys().cloned().collect();
    keys.sort();
    let mut total = RationalFn::zero(ring);
    for k in keys {
        let mut div = LaurentPoly::one(BaseRing::Integers);
        for &(a, d) in &k {
            div = &div * &q_factorial(a, d);
        }
        let div = match ring {
            BaseRing::Integers => div,
            BaseRing::ModEps(e) => div.reduce_mod(e as i64).expect("valid modulus"),
        };
        let v = groups[&k].checked_div(&RationalFn::from_laurent(div)).expect("nonzero");
        total = &total + &v;
    }
    if phix.den.is_one() {
        total
    } else {
        total.checked_div(&RationalFn::from_laurent(phix.den.clone())).expect("nonzero")
    }
}

/// Right contraction: `out[u] = Σ_v y_v φ[u · plain(v)] / ∏ [a]!_d`, so that
/// `⟨contract(φ(x), y), z⟩ = ⟨φ(x), z y⟩`.
pub fn contract(datum: &CartanDatum, v: &PhiVec, y: &FreeElt) -> PhiVec {
    let ring = v.ring;
    let mut out_weight = v.weight().to_vec();
    let mut scaled: Vec<(Vec<u8>, RationalFn)> = Vec::with_capacity(y.len());
    for (w, c) in y.terms() {
        let p = plain_word(w);
        if scaled.is_empty() {
            for &l in &p {
                if out_weight[l as usize] == 0 {
                    return PhiVec::zero(&vec![0; datum.rank()], ring);
                }
                out_weight[l as usize] -= 1;
            }
        }
        scaled.push((p, c.checked_div(&RationalFn::from_laurent(divided_factor(datum, w, ring))).expect("nonzero")));
    }
    if scaled.is_empty() {
        return PhiVec::zero(&vec![0; datum.rank()], ring);
    }
    let den = common_denominator(ring, scaled.iter().map(|x| &x.1));
    let nums: Vec<(u128, u32, LaurentPoly)> =
        scaled.iter().map(|(p, c)| (key(p), 4 * p.len() as u32, c.scaled_numerator(&den))).collect();
    let space = WordSpace::get(&out_weight);
    let data: Vec<LaurentPoly> = space
        .words()
        .par_iter()
        .with_min_len(PAR_THRESHOLD / 4)
        .map(|u| {
            let ku = key(u);
            let mut acc = LaurentPoly::zero(ring);
            for (kv, shift, n) in &nums {
                let k = v.space.index_of_key((ku << shift) | kv);
                if !v.data[k].is_zero() {
                    acc = &acc + &(n * &v.data[k]);
                }
            }
            acc
        })
        .collect();
    PhiVec { space, ring, data, den: &v.den * &den }
}

/// `⟨φ(x), y_1 y_2 ⋯ y_n⟩` without expanding the product.
pub fn pairing_product(datum: &CartanDatum, phix: &PhiVec, factors: &[&FreeElt]) -> RationalFn {
    let mut v = phix.clone();
    for y in factors.iter().rev() {
        v = contract(datum, &v, y);
        if v.is_zero() {
            return RationalFn::zero(phix.ring);
        }
    }
    if v.weight().iter().any(|&m| m != 0) {
        return RationalFn::zero(phix.ring);
    }
    v.entry(0)
}

fn divided_factor(datum: &CartanDatum, w: &[Letter], ring: BaseRing) -> LaurentPoly {
    let mut div = LaurentPoly::one(BaseRing::Integers);
    for &(i, a) in w {
        if a > 1 {
            div = &div * &q_factorial(a as u32, datum.d(i as usize));
        }
    }
    match ring {
        BaseRing::Integers => div,
        BaseRing::ModEps(e) => div.reduce_mod(e as i64).expect("valid modulus"),
    }
}

/// `∏_i (f_i, f_i)^{μ_i}` with `(f_i, f_i) = 1/(1 − q_i²)`.
pub fn weight_constant(datum: &CartanDatum, weight: &[u32], ring: BaseRing) -> RationalFn {
    let mut den = LaurentPoly::one(ring);
    for (i, &m) in weight.iter().enumerate() {
        let di = datum.d(i) as i32;
        let f = LaurentPoly::from_terms(ring, [(0, IBig::from(1)), (2 * di, IBig::from(-1))]);
        for _ in 0..m {
            den = &den * &f;
        }
    }
    RationalFn::new(LaurentPoly::one(ring), den).expect("nonzero")
}

/// The contraction form `(x, y)`.
pub fn form_value(x: &FreeElt, y: &FreeElt) -> Result<RationalFn> {
    let ring = x.ring();
    ring.check(y.ring())?;
    if *x.datum() != *y.datum() {
        return Err(Error::DatumMismatch);
    }
    let datum = x.datum().clone();
    let cx = x.components();
    let cy = y.components();
    let mut total = RationalFn::zero(ring);
    for (w, xc) in &cx {
        if let Some(yc) = cy.get(w) {
            let v = phi(xc, w)?;
            let p = pairing(&datum, &v, yc);
            total = &total + &(&p * &weight_constant(&datum, w, ring));
        }
    }
    Ok(total)
}

/// Zero test in `U_q⁻`: every homogeneous component lies in the radical of
/// the form on the free algebra (the Serre ideal).
pub fn is_zero(x: &FreeElt) -> Result<bool> {
    for (w, c) in x.components() {
        if !phi(&c, &w)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::builtin;
    use crate::freealg::serre_element;

    const Z: BaseRing = BaseRing::Integers;

    fn datum(name: &str) -> Arc<CartanDatum> {
        Arc::new(builtin(name).unwrap().0)
    }

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, Z).unwrap()
    }

    #[test]
    fn generator_norm() {
        for name in ["A2", "B2", "G2"] {
            let x = datum(name);
            for i in 0..x.rank() {
                let f = FreeElt::generator(&x, Z, i, 1);
                let d = x.d(i) as i32;
                let expected = RationalFn::new(p("1"), LaurentPoly::from_terms(Z, [(0, IBig::from(1)), (2 * d, IBig::from(-1))])).unwrap();
                assert_eq!(form_value(&f, &f).unwrap(), expected);
            }
        }
        let x = datum("A2");
        let f1 = FreeElt::generator(&x, Z, 0, 1);
        let f2 = FreeElt::generator(&x, Z, 1, 1);
        assert!(form_value(&f1, &f2).unwrap().is_zero());
    }

    #[test]
    fn divided_power_norms() {
        // (f^{(n)}, f^{(n)}) = ∏_{s=1}^n 1/(1 − q_i^{2s}), checked against
        // brute-force expansion of f^n / [n]!
        let x = datum("B2");
        for i in 0..2 {
            let d = x.d(i) as i32;
            for n in 1..=4u32 {
                let f = FreeElt::generator(&x, Z, i, n);
                let mut den = p("1");
                for s in 1..=n as i32 {
                    den = &den * &LaurentPoly::from_terms(Z, [(0, IBig::from(1)), (2 * d * s, IBig::from(-1))]);
                }
                let expected = RationalFn::new(p("1"), den).unwrap();
                assert_eq!(form_value(&f, &f).unwrap(), expected, "i={i} n={n}");
                let plain = FreeElt::generator(&x, Z, i, 1).pow(n);
                let fact = RationalFn::from(q_factorial(n, d as u32));
                let brute = form_value(&plain, &plain).unwrap().checked_div(&(&fact * &fact)).unwrap();
                assert_eq!(brute, expected);
            }
        }
    }

    #[test]
    fn serre_elements_vanish() {
        for name in ["A2", "B2", "G2", "A3", "D4"] {
            let x = datum(name);
            for i in 0..x.rank() {
                for j in 0..x.rank() {
                    if i != j {
                        assert!(is_zero(&serre_element(&x, Z, i, j).unwrap()).unwrap(), "{name} {i} {j}");
                    }
                }
            }
        }
        let x = datum("A2");
        assert!(!is_zero(&FreeElt::parse(&x, Z, "f1*f2").unwrap()).unwrap());
        // the wrong sign is not in the radical
        assert!(!is_zero(&FreeElt::parse(&x, Z, "f1^(2)*f2 + f1*f2*f1 + f2*f1^(2)").unwrap()).unwrap());
    }

    #[test]
    fn form_is_symmetric() {
        let x = datum("B2");
        let a = FreeElt::parse(&x, Z, "f1*f2*f1 + q*f1^(2)*f2 - 3*f2*f1^(2)").unwrap();
        let b = FreeElt::parse(&x, Z, "f2*f1^(2) + q^2*f1*f2*f1").unwrap();
        assert_eq!(form_value(&a, &b).unwrap(), form_value(&b, &a).unwrap());
    }

    #[test]
    fn shuffle_is_multiplicative() {
        let x = datum("G2");
        let a = FreeElt::parse(&x, Z, "f1*f2 - q^3*f2*f1").unwrap();
        let b = FreeElt::parse(&x, Z, "f1^(2)*f2 + q*f2*f1^(2)").unwrap();
        let ab = a.multiply(&b).unwrap();
        let wa = a.weight().unwrap();
        let wb = b.weight().unwrap();
        let wab = ab.weight().unwrap();
        let direct = phi(&ab, &wab).unwrap();
        let via = shuffle(&x, &phi(&a, &wa).unwrap(), &phi(&b, &wb).unwrap());
        assert_eq!(direct.data(), via.data());
        let via2 = phi_of_product(&x, &[&phi(&a, &wa).unwrap(), &phi(&b, &wb).unwrap()], Z);
        assert_eq!(direct.data(), via2.data());
    }

    #[test]
    fn rational_coefficients() {
        let x = datum("A2");
        let half = RationalFn::new(p("1"), p("q + 1")).unwrap();
        let a = FreeElt::parse(&x, Z, "f1*f2").unwrap().scale(&half);
        let b = FreeElt::parse(&x, Z, "f1*f2").unwrap();
        let v = form_value(&a, &b).unwrap();
        let w = form_value(&b, &b).unwrap();
        assert_eq!(v, &w * &half);
    }
}
