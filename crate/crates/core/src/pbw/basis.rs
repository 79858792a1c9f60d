//! Root vectors, PBW monomials and orthogonal expansion for one reduced word.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use parking_lot::RwLock;
use rayon::prelude::*;

use super::apply_braid;
use crate::cartan::{CartanDatum, DiagramAut};
use crate::error::{Error, Result};
use crate::freealg::{pairing, pairing_product, phi, phi_of_product, FreeElt, PhiVec, Weight};
use crate::qarith::{q_factorial, BaseRing, RationalFn};
use crate::weyl::RootSystem;

/// A PBW exponent vector `c ∈ N^ν`.
pub type Exponents = Vec<u32>;

/// Coordinates of an element in the PBW basis `{L(c, h)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwElt {
    pub h: Vec<usize>,
    pub coords: BTreeMap<Exponents, RationalFn>,
}

impl PbwElt {
    pub fn coeff(&self, c: &[u32]) -> RationalFn {
        match self.coords.get(c) {
            Some(v) => v.clone(),
            None => RationalFn::zero(self.coords.values().next().map_or(BaseRing::Integers, |v| v.ring())),
        }
    }

    pub fn is_laurent(&self) -> bool {
        self.coords.values().all(|v| v.as_laurent().is_some())
    }
}

/// Per-weight data: the exponent vectors in descending lex order, `φ(L_c)`,
/// and the diagonal values `⟨φ(L_c), L_c⟩`.
#[derive(Debug)]
pub struct WeightData {
    pub weight: Weight,
    pub cs: Vec<Exponents>,
    pub phis: Vec<PhiVec>,
    pub norms: Vec<RationalFn>,
}

impl WeightData {
    pub fn index_of(&self, c: &[u32]) -> Option<usize> {
        self.cs.iter().position(|d| d == c)
    }
}

/// A product `scalar · y_1 ⋯ y_n` kept in factored form.
#[derive(Clone, Debug)]
pub struct Factored {
    pub scalar: RationalFn,
    pub factors: Vec<Arc<FreeElt>>,
    pub weight: Weight,
}

/// The PBW basis attached to a reduced expression of the longest element.
///
/// Root vectors `f_β` are computed over `Z` by the braid action; when `β`
/// is simple the generator itself is used (the two agree in `U_q⁻`, which
/// is checked). Divided powers are `f_β^a / [a]!` and monomials are kept
/// factored, so no power or product is ever expanded into words unless
/// asked for.
#[derive(Debug)]
pub struct PbwBasis {
    datum: Arc<CartanDatum>,
    ring: BaseRing,
    h: Vec<usize>,
    betas: Vec<Weight>,
    simple: Vec<Option<usize>>,
    dbeta: Vec<u32>,
    roots: RwLock<HashMap<(usize, u32, bool), Arc<FreeElt>>>,
    root_phis: RwLock<HashMap<(usize, u32, bool), Arc<PhiVec>>>,
    weights: RwLock<HashMap<Weight, Arc<WeightData>>>,
}

type RegistryKey = (CartanDatum, BaseRing, Vec<usize>);

impl PbwBasis {
    /// Shared basis for `(datum, ring, h)`. `h` must be a reduced expression
    /// of the longest element.
    pub fn get(datum: &Arc<CartanDatum>, ring: BaseRing, h: &[usize]) -> Result<Arc<PbwBasis>> {
        static REG: OnceLock<RwLock<HashMap<RegistryKey, Arc<PbwBasis>>>> = OnceLock::new();
        let reg = REG.get_or_init(Default::default);
        let key = ((**datum).clone(), ring, h.to_vec());
        if let Some(b) = reg.read().get(&key) {
            return Ok(b.clone());
        }
        let b = Arc::new(Self::build(datum, ring, h)?);
        Ok(reg.write().entry(key).or_insert(b).clone())
    }

    fn build(datum: &Arc<CartanDatum>, ring: BaseRing, h: &[usize]) -> Result<Self> {
        let rs = RootSystem::new(datum.clone())?;
        if !rs.is_longest_word(h) {
            return Err(Error::NotReduced(rs.word_string(h)));
        }
        let roots = rs.beta_sequence(h)?;
        let dbeta = roots.iter().map(|b| (datum.pairing(b, b) / 2) as u32).collect();
        let betas: Vec<Weight> = roots.into_iter().map(|b| b.into_iter().map(|x| x as u32).collect()).collect();
        let simple = betas
            .iter()
            .map(|b| match b.iter().sum::<u32>() {
                1 => b.iter().position(|&x| x == 1),
                _ => None,
            })
            .collect();
        Ok(PbwBasis {
            datum: datum.clone(),
            ring,
            h: h.to_vec(),
            betas,
            simple,
            dbeta,
            roots: Default::default(),
            root_phis: Default::default(),
            weights: Default::default(),
        })
    }

    pub fn datum(&self) -> &Arc<CartanDatum> {
        &self.datum
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn h(&self) -> &[usize] {
        &self.h
    }

    pub fn betas(&self) -> &[Weight] {
        &self.betas
    }

    pub fn nu(&self) -> usize {
        self.h.len()
    }

    fn lift(&self, x: FreeElt) -> Result<FreeElt> {
        match self.ring {
            BaseRing::Integers => Ok(x),
            BaseRing::ModEps(e) => x.reduce_mod(e as i64),
        }
    }

    fn factorial(&self, k: usize, a: u32) -> RationalFn {
        let f = q_factorial(a, self.dbeta[k]);
        let f = match self.ring {
            BaseRing::Integers => f,
            BaseRing::ModEps(e) => f.reduce_mod(e as i64).expect("valid modulus"),
        };
        RationalFn::from_laurent(f)
    }

    /// The factor used for `f_{β_k}` (`a = 1`) or, for simple `β_k`, for
    /// `f_{β_k}^{(a)}`; `bar` selects its bar image.
    fn factor(&self, k: usize, a: u32, bar: bool) -> Result<Arc<FreeElt>> {
        if let Some(v) = self.roots.read().get(&(k, a, bar)) {
            return Ok(v.clone());
        }
        let v = match (self.simple[k], bar) {
            (Some(j), _) => FreeElt::generator(&self.datum, self.ring, j, a),
            (None, false) => self.lift(root_vector_z(&self.datum, &self.h[..=k])?)?,
            (None, true) => (*self.factor(k, 1, false)?).bar(),
        };
        let v = Arc::new(v);
        Ok(self.roots.write().entry((k, a, bar)).or_insert(v).clone())
    }

    fn factor_phi(&self, k: usize, a: u32, bar: bool) -> Result<Arc<PhiVec>> {
        if let Some(v) = self.root_phis.read().get(&(k, a, bar)) {
            return Ok(v.clone());
        }
        let w: Weight = self.betas[k].iter().map(|&x| x * a).collect();
        let v = Arc::new(phi(&*self.factor(k, a, bar)?, &w)?);
        Ok(self.root_phis.write().entry((k, a, bar)).or_insert(v).clone())
    }

    /// `f_{β_k}^{(a)} = T_{i_1} ⋯ T_{i_{k−1}}(f_{i_k}^{(a)})` (0-based `k`),
    /// as an explicit element.
    pub fn root_vector(&self, k: usize, a: u32) -> Result<FreeElt> {
        if a == 0 {
            return Ok(FreeElt::one(&self.datum, self.ring));
        }
        if self.simple[k].is_some() || a == 1 {
            return Ok((*self.factor(k, a, false)?).clone());
        }
        let f = self.factor(k, 1, false)?;
        Ok(f.pow(a).scale(&self.factorial(k, a).inv()?))
    }

    /// The braid-action root vector for `k`, even when `β_k` is simple.
    pub fn braid_root_vector(&self, k: usize) -> Result<FreeElt> {
        self.lift(root_vector_z(&self.datum, &self.h[..=k])?)
    }

    fn weight_of(&self, c: &[u32]) -> Weight {
        let mut w = vec![0; self.datum.rank()];
        for (b, &ck) in self.betas.iter().zip(c) {
            for (x, y) in w.iter_mut().zip(b) {
                *x += ck * y;
            }
        }
        w
    }

    /// All `c` with `Σ c_k β_k = weight`, in descending lexicographic order.
    pub fn enumerate_c(&self, weight: &[u32]) -> Vec<Exponents> {
        enumerate_c(&self.betas, weight)
    }

    /// `L(c, h)` (or its bar image) in factored form.
    pub fn factored(&self, c: &[u32], bar: bool) -> Result<Factored> {
        let mut scalar = RationalFn::one(self.ring);
        let mut factors = Vec::new();
        for (k, &ck) in c.iter().enumerate() {
            if ck == 0 {
                continue;
            }
            if self.simple[k].is_some() {
                factors.push(self.factor(k, ck, bar)?);
            } else {
                let f = self.factor(k, 1, bar)?;
                factors.extend(std::iter::repeat_n(f, ck as usize));
                if ck > 1 {
                    scalar = scalar.checked_div(&self.factorial(k, ck))?;
                }
            }
        }
        Ok(Factored { scalar, factors, weight: self.weight_of(c) })
    }

    /// `L(c, h) = f_{β_1}^{(c_1)} ⋯ f_{β_ν}^{(c_ν)}` as an explicit element.
    pub fn monomial(&self, c: &[u32]) -> Result<FreeElt> {
        let f = self.factored(c, false)?;
        let mut acc = FreeElt::one(&self.datum, self.ring);
        for y in &f.factors {
            acc = acc.multiply(y)?;
        }
        Ok(acc.scale(&f.scalar))
    }

    fn factored_phi(&self, c: &[u32], bar: bool) -> Result<PhiVec> {
        let mut factors = Vec::new();
        let mut scalar = RationalFn::one(self.ring);
        for (k, &ck) in c.iter().enumerate() {
            if ck == 0 {
                continue;
            }
            if self.simple[k].is_some() {
                factors.push(self.factor_phi(k, ck, bar)?);
            } else {
                let f = self.factor_phi(k, 1, bar)?;
                factors.extend(std::iter::repeat_n(f, ck as usize));
                if ck > 1 {
                    scalar = scalar.checked_div(&self.factorial(k, ck))?;
                }
            }
        }
        let refs: Vec<&PhiVec> = factors.iter().map(|v| &**v).collect();
        let v = phi_of_product(&self.datum, &refs, self.ring);
        Ok(if scalar.is_one() {
            v
        } else {
            PhiVec::linear_combination(&self.weight_of(c), self.ring, &[(scalar, &v)])
        })
    }

    /// `φ(L(c, h))` as the shuffle product of the factors' images.
    pub fn monomial_phi(&self, c: &[u32]) -> Result<PhiVec> {
        self.factored_phi(c, false)
    }

    /// `⟨v, y⟩` for a factored `y`.
    pub fn pair_factored(&self, v: &PhiVec, y: &Factored) -> RationalFn {
        let refs: Vec<&FreeElt> = y.factors.iter().map(|f| &**f).collect();
        &pairing_product(&self.datum, v, &refs) * &y.scalar
    }

    /// Per-weight data, computed once and shared.
    pub fn weight_data(&self, weight: &[u32]) -> Result<Arc<WeightData>> {
        if let Some(d) = self.weights.read().get(weight) {
            return Ok(d.clone());
        }
        let cs = self.enumerate_c(weight);
        let items: Vec<(PhiVec, RationalFn)> = cs
            .par_iter()
            .map(|c| {
                let v = self.monomial_phi(c)?;
                let n = self.pair_factored(&v, &self.factored(c, false)?);
                if n.is_zero() {
                    return Err(Error::VanishingDiagonal(format!("{c:?}")));
                }
                Ok((v, n))
            })
            .collect::<Result<_>>()?;
        let (phis, norms) = items.into_iter().unzip();
        let d = Arc::new(WeightData { weight: weight.to_vec(), cs, phis, norms });
        Ok(self.weights.write().entry(weight.to_vec()).or_insert(d).clone())
    }

    fn finish(&self, weight: &[u32], coords: Vec<RationalFn>, target: &PhiVec) -> Result<PbwElt> {
        let data = self.weight_data(weight)?;
        let items: Vec<(RationalFn, &PhiVec)> =
            coords.iter().cloned().zip(&data.phis).filter(|(c, _)| !c.is_zero()).collect();
        let rebuilt = PhiVec::linear_combination(weight, self.ring, &items);
        if !same_vector(&rebuilt, target) {
            return Err(Error::Reconstruction(format!("{weight:?}")));
        }
        let coords = data.cs.iter().cloned().zip(coords).filter(|(_, v)| !v.is_zero()).collect();
        Ok(PbwElt { h: self.h.clone(), coords })
    }

    /// Coordinates of a homogeneous element, with a reconstruction check.
    pub fn expand(&self, x: &FreeElt) -> Result<PbwElt> {
        if *self.datum != **x.datum() {
            return Err(Error::DatumMismatch);
        }
        self.ring.check(x.ring())?;
        let weight = match x.weight() {
            Some(w) => w,
            None if x.is_free_zero() => return Ok(PbwElt { h: self.h.clone(), coords: BTreeMap::new() }),
            None => return Err(Error::WeightNotStable("inhomogeneous element".into())),
        };
        let data = self.weight_data(&weight)?;
        let coords: Vec<RationalFn> = data
            .phis
            .par_iter()
            .zip(&data.norms)
            .map(|(v, n)| pairing(&self.datum, v, x).checked_div(n).expect("nonzero norm"))
            .collect();
        self.finish(&weight, coords, &phi(x, &weight)?)
    }

    /// Coordinates of a factored product, with a reconstruction check.
    pub fn expand_factored(&self, y: &Factored) -> Result<PbwElt> {
        let data = self.weight_data(&y.weight)?;
        let coords: Vec<RationalFn> = data
            .phis
            .par_iter()
            .zip(&data.norms)
            .map(|(v, n)| self.pair_factored(v, y).checked_div(n).expect("nonzero norm"))
            .collect();
        let phis: Vec<PhiVec> = y
            .factors
            .iter()
            .map(|f| phi(f, &f.weight().expect("homogeneous factor")))
            .collect::<Result<_>>()?;
        let refs: Vec<&PhiVec> = phis.iter().collect();
        let target = phi_of_product(&self.datum, &refs, self.ring);
        let target = PhiVec::linear_combination(&y.weight, self.ring, &[(y.scalar.clone(), &target)]);
        self.finish(&y.weight, coords, &target)
    }

    /// PBW coordinates of `bar(L(c, h))`.
    pub fn expand_bar(&self, c: &[u32]) -> Result<PbwElt> {
        let y = self.factored(c, true)?;
        let data = self.weight_data(&y.weight)?;
        let coords: Vec<RationalFn> = data
            .phis
            .par_iter()
            .zip(&data.norms)
            .map(|(v, n)| self.pair_factored(v, &y).checked_div(n).expect("nonzero norm"))
            .collect();
        let target = self.factored_phi(c, true)?;
        self.finish(&y.weight, coords, &target)
    }

    /// Coordinates of `Σ_c x_c L(c, h′)` in this basis, where `other` is the
    /// basis of `h′`.
    pub fn transition(&self, other: &PbwBasis, x: &PbwElt) -> Result<PbwElt> {
        let mut acc: BTreeMap<Exponents, RationalFn> = BTreeMap::new();
        for (c, v) in &x.coords {
            let e = self.expand_factored(&other.factored(c, false)?)?;
            for (d, w) in e.coords {
                let t = acc.entry(d).or_insert_with(|| RationalFn::zero(self.ring));
                *t = &*t + &(&w * v);
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(PbwElt { h: self.h.clone(), coords: acc })
    }

    /// `Σ coord_c L(c, h)` as a free-algebra element.
    pub fn assemble(&self, e: &PbwElt) -> Result<FreeElt> {
        let mut acc = FreeElt::zero(&self.datum, self.ring);
        for (c, v) in &e.coords {
            acc = acc.checked_add(&self.monomial(c)?.scale(v))?;
        }
        Ok(acc)
    }
}

/// Compares two vectors with possibly different denominators.
pub(crate) fn same_vector(a: &PhiVec, b: &PhiVec) -> bool {
    a.data()
        .par_iter()
        .zip(b.data())
        .all(|(x, y)| x * b.den() == y * a.den())
}

fn root_vector_z(datum: &Arc<CartanDatum>, prefix: &[usize]) -> Result<FreeElt> {
    static CACHE: OnceLock<RwLock<HashMap<(CartanDatum, Vec<usize>), FreeElt>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = ((**datum).clone(), prefix.to_vec());
    if let Some(v) = cache.read().get(&key) {
        return Ok(v.clone());
    }
    let (&first, rest) = prefix.split_first().expect("nonempty prefix");
    let v = if rest.is_empty() {
        FreeElt::generator(datum, BaseRing::Integers, first, 1)
    } else {
        apply_braid(first, &root_vector_z(datum, rest)?)?
    };
    if !v.is_laurent() {
        return Err(Error::NotLaurent(format!("root vector {prefix:?}")));
    }
    cache.write().insert(key, v.clone());
    Ok(v)
}

/// All `c ∈ N^ν` with `Σ c_k β_k = weight`, in descending lexicographic order.
pub fn enumerate_c(betas: &[Weight], weight: &[u32]) -> Vec<Exponents> {
    fn go(betas: &[Weight], k: usize, rem: &mut Vec<u32>, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if k == betas.len() {
            if rem.iter().all(|&x| x == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let b = &betas[k];
        let max = b.iter().zip(rem.iter()).filter(|(&bi, _)| bi > 0).map(|(&bi, &r)| r / bi).min().unwrap_or(0);
        for ck in (0..=max).rev() {
            for (r, &bi) in rem.iter_mut().zip(b) {
                *r -= ck * bi;
            }
            cur.push(ck);
            go(betas, k + 1, rem, cur, out);
            cur.pop();
            for (r, &bi) in rem.iter_mut().zip(b) {
                *r += ck * bi;
            }
        }
    }
    let mut out = Vec::new();
    go(betas, 0, &mut weight.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// The image of the block-constant exponents on a word lifted with blocks
/// permuted by `σ`: `c′_k = c_{σ⁻¹ position}`.
pub fn sigma_exponents(aut: &DiagramAut, h: &[usize], blocks: &[std::ops::Range<usize>], c: &[u32]) -> Exponents {
    let mut out = c.to_vec();
    for b in blocks {
        for p in b.clone() {
            let target = aut.apply(h[p]);
            let q = b.clone().find(|&r| h[r] == target).expect("blocks are σ-stable");
            out[q] = c[p];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::builtin;
    use crate::freealg::is_zero;
    use crate::weyl::{parse_word, root_name};

    const Z: BaseRing = BaseRing::Integers;

    fn setup(name: &str, h: &str) -> (Arc<CartanDatum>, Arc<PbwBasis>) {
        let x = Arc::new(builtin(name).unwrap().0);
        let h = parse_word(&x, h).unwrap();
        let b = PbwBasis::get(&x, Z, &h).unwrap();
        (x, b)
    }

    fn rv(b: &PbwBasis, name: &str) -> FreeElt {
        let k = b
            .betas()
            .iter()
            .position(|r| {
                let r: Vec<i64> = r.iter().map(|&v| v as i64).collect();
                root_name(b.datum(), &r) == name
            })
            .unwrap_or_else(|| panic!("no root {name}"));
        b.root_vector(k, 1).unwrap()
    }

    fn eq(a: &FreeElt, b: &FreeElt) -> bool {
        is_zero(&a.checked_sub(b).unwrap()).unwrap()
    }

    fn comm(a: &FreeElt, b: &FreeElt, s: &str) -> FreeElt {
        let s = RationalFn::parse(s, Z).unwrap();
        a.multiply(b).unwrap().checked_sub(&b.multiply(a).unwrap().scale(&s)).unwrap()
    }

    #[test]
    fn d4_commutation_relations() {
        let (x, b) = setup("D4", "2,2p,2pp,1,2,2p,2pp,1,2,2p,2pp,1");
        let names: Vec<String> = b
            .betas()
            .iter()
            .map(|r| root_name(&x, &r.iter().map(|&v| v as i64).collect::<Vec<_>>()))
            .collect();
        assert_eq!(names, ["2", "2′", "2″", "122′2″", "12′2″", "122″", "122′", "1122′2″", "12", "12′", "12″", "1"]);
        let f = |s: &str| FreeElt::parse(&x, Z, s).unwrap();
        assert_eq!(rv(&b, "12"), f("f1 f2 - q f2 f1"));
        let f12 = rv(&b, "12");
        let f12p = rv(&b, "12′");
        let f12pp = rv(&b, "12″");
        let f122p = rv(&b, "122′");
        let f122pp = rv(&b, "122″");
        let f12p2pp = rv(&b, "12′2″");
        let top = rv(&b, "122′2″");
        let high = rv(&b, "1122′2″");
        assert!(eq(&f12p, &f("f1 f2' - q f2' f1")));
        assert!(eq(&f122p, &comm(&f12, &f("f2'"), "q")));
        assert!(eq(&f122p, &comm(&f12p, &f("f2"), "q")));
        assert!(eq(&top, &comm(&f122p, &f("f2''"), "q")));
        assert!(eq(&top, &comm(&f12p2pp, &f("f2"), "q")));
        assert!(eq(&top, &comm(&f122pp, &f("f2'"), "q")));
        assert!(eq(&high, &comm(&f12pp, &f122p, "q")));
        assert!(eq(&high, &comm(&f12, &f12p2pp, "q")));
        assert!(eq(&high, &comm(&f12p, &f122pp, "q")));
    }

    #[test]
    fn a3_root_vector() {
        let (x, b) = setup("A3", "2,2p,1,2,2p,1");
        let f122p = b.root_vector(2, 1).unwrap();
        let f12 = rv(&b, "12");
        let f2p = FreeElt::parse(&x, Z, "f2'").unwrap();
        assert!(eq(&f122p, &comm(&f12, &f2p, "q")));
        assert_eq!(b.root_vector(0, 3).unwrap(), FreeElt::generator(&x, Z, x.index_of("2").unwrap(), 3));
    }

    #[test]
    fn a2_monomial() {
        let (x, b) = setup("A2", "1,2,1");
        // β_2 = T_1(α_2): the middle factor is f_2 f_1 − q f_1 f_2
        let expect = FreeElt::parse(&x, Z, "f1 (f2 f1 - q f1 f2) f2").unwrap();
        assert_eq!(b.monomial(&[1, 1, 1]).unwrap(), expect);
        assert_eq!(b.monomial(&[0, 0, 0]).unwrap(), FreeElt::one(&x, Z));
        assert_eq!(b.enumerate_c(&[1, 1]), vec![vec![1, 0, 1], vec![0, 1, 0]]);
        assert_eq!(b.enumerate_c(&[0, 0]), vec![vec![0, 0, 0]]);
        assert_eq!(b.enumerate_c(&[1, 0]), vec![vec![1, 0, 0]]);
        assert_eq!(b.enumerate_c(&[0, 1]), vec![vec![0, 0, 1]]);
    }

    #[test]
    fn expand_monomials_gives_unit_vectors() {
        let (_, b) = setup("B2", "1,2,1,2");
        for w in [[1u32, 1], [2, 1], [2, 2], [1, 2]] {
            for c in b.enumerate_c(&w) {
                let e = b.expand(&b.monomial(&c).unwrap()).unwrap();
                assert_eq!(e.coords.len(), 1);
                assert!(e.coeff(&c).is_one(), "{c:?}");
            }
        }
    }

    #[test]
    fn a3_z112_is_single_term() {
        let (x, b) = setup("A3", "2,2p,1,2,2p,1");
        let z = FreeElt::parse(&x, Z, "f1^2 f2 f2' - (q^2+1) f1 f2 f2' f1 + q^2 f2 f2' f1^2").unwrap();
        let e = b.expand(&z).unwrap();
        assert_eq!(e.coords.len(), 1);
        assert_eq!(e.coeff(&[0, 0, 0, 1, 1, 0]), RationalFn::parse("q + q^-1", Z).unwrap());
        // the reverse order f_12 f_12' gives the same element
        let other = rv(&b, "12").multiply(&rv(&b, "12′")).unwrap();
        assert!(eq(&other, &b.monomial(&[0, 0, 0, 1, 1, 0]).unwrap()));
    }

    #[test]
    fn d4_f1_times_f2_f2p_f2pp() {
        let (x, b) = setup("D4", "2,2p,2pp,1,2,2p,2pp,1,2,2p,2pp,1");
        let y = FreeElt::parse(&x, Z, "f1 f2 f2' f2''").unwrap();
        let e = b.expand(&y).unwrap();
        let unit = |ks: &[usize]| {
            let mut c = vec![0u32; 12];
            for &k in ks {
                c[k - 1] += 1;
            }
            c
        };
        let mut expect: BTreeMap<Exponents, RationalFn> = BTreeMap::new();
        let q = |s: &str| RationalFn::parse(s, Z).unwrap();
        expect.insert(unit(&[4]), q("1"));
        for ks in [[3, 7], [2, 6], [1, 5]] {
            expect.insert(unit(&ks), q("q"));
        }
        for ks in [[2, 3, 9], [1, 3, 10], [1, 2, 11]] {
            expect.insert(unit(&ks), q("q^2"));
        }
        expect.insert(unit(&[1, 2, 3, 12]), q("q^3"));
        assert_eq!(e.coords, expect);
    }

    #[test]
    fn orthogonality_a2() {
        let (x, b) = setup("A2", "2,1,2");
        for w in [[1u32, 1], [2, 1], [2, 2], [3, 2], [2, 3]] {
            let cs = b.enumerate_c(&w);
            let mons: Vec<FreeElt> = cs.iter().map(|c| b.monomial(c).unwrap()).collect();
            for (i, m) in mons.iter().enumerate() {
                for (j, n) in mons.iter().enumerate() {
                    let v = crate::freealg::form_value(m, n).unwrap();
                    assert_eq!(v.is_zero(), i != j, "{:?} {:?}", cs[i], cs[j]);
                }
            }
        }
        let _ = x;
    }

    #[test]
    fn sigma_permutes_blocks() {
        let x = builtin("A3").unwrap();
        let aut = x.1.unwrap();
        let h = vec![1, 2, 0, 1, 2, 0];
        let blocks = vec![0..2, 2..3, 3..5, 5..6];
        assert_eq!(sigma_exponents(&aut, &h, &blocks, &[1, 2, 3, 4, 5, 6]), vec![2, 1, 3, 5, 4, 6]);
    }
}
