//! Canonical bases by the triangular algorithm on PBW bar matrices.
//!
//! Exponent vectors of a weight are indexed in descending lexicographic
//! order, so "`d > c`" means "index of `d` < index of `c`" and every matrix
//! below is lower unitriangular.

mod cache;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use parking_lot::RwLock;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use cache::DiskCache;

use crate::cartan::{CartanDatum, DiagramAut};
use crate::error::{Error, Result};
use crate::freealg::{FreeElt, Weight};
use crate::pbw::{sigma_exponents, Exponents, PbwBasis, PbwElt};
use crate::qarith::{BaseRing, LaurentPoly, RationalFn};

/// A square matrix indexed by the exponent vectors of one weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarMatrix {
    pub cs: Vec<Exponents>,
    /// `rows[i][j]`: coefficient of `L(cs[j])` in `bar(L(cs[i]))`.
    pub rows: Vec<Vec<LaurentPoly>>,
}

impl BarMatrix {
    /// `M · bar(M)`; the identity for a bar matrix.
    pub fn times_bar(&self) -> Vec<Vec<LaurentPoly>> {
        let n = self.cs.len();
        let ring = self.rows.first().map_or(BaseRing::Integers, |r| r[0].ring());
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = LaurentPoly::zero(ring);
                        for k in 0..n {
                            if !self.rows[i][k].is_zero() && !self.rows[k][j].is_zero() {
                                acc = &acc + &(&self.rows[i][k] * &self.rows[k][j].bar());
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }

    pub fn reduce_mod(&self, eps: i64) -> Result<BarMatrix> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|p| p.reduce_mod(eps)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(BarMatrix { cs: self.cs.clone(), rows })
    }
}

/// `bar(L(c, h))` in PBW coordinates for every `c` of the weight.
pub fn bar_matrix(basis: &PbwBasis, weight: &[u32]) -> Result<BarMatrix> {
    static CACHE: OnceLock<RwLock<HashMap<(CartanDatum, BaseRing, Vec<usize>, Weight), Arc<BarMatrix>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = ((**basis.datum()).clone(), basis.ring(), basis.h().to_vec(), weight.to_vec());
    if let Some(m) = cache.read().get(&key) {
        return Ok((**m).clone());
    }
    let data = basis.weight_data(weight)?;
    let cs = data.cs.clone();
    let rows: Vec<Vec<LaurentPoly>> = cs
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let e = basis.expand_bar(c)?;
            let mut row = Vec::with_capacity(cs.len());
            for (j, d) in cs.iter().enumerate() {
                let v = e.coeff(d);
                let v = v.to_laurent().map_err(|_| Error::NotLaurent(format!("bar(L{c:?}) at L{d:?}: {v}")))?;
                let ok = match j.cmp(&i) {
                    std::cmp::Ordering::Greater => v.is_zero(),
                    std::cmp::Ordering::Equal => v.is_one(),
                    std::cmp::Ordering::Less => true,
                };
                if !ok {
                    return Err(Error::NotUnitriangular(format!("bar(L{c:?}) at L{d:?}: {v}")));
                }
                row.push(v);
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    let m = BarMatrix { cs, rows };
    cache.write().insert(key, Arc::new(m.clone()));
    Ok(m)
}

/// The unique `a ∈ qZ[q]` with `a − bar(a) = s`, for bar-skew `s`.
pub fn skew_solve(s: &LaurentPoly) -> Result<LaurentPoly> {
    if s.bar() != -s {
        return Err(Error::NotSkew(s.to_string()));
    }
    Ok(s.positive_part())
}

/// The canonical basis elements of one weight in PBW coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalSlice {
    pub datum: String,
    pub h: Vec<usize>,
    pub weight: Weight,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u8>,
    pub cs: Vec<Exponents>,
    /// `rows[i][j]`: coefficient of `L(cs[j])` in `b(cs[i])`.
    pub rows: Vec<Vec<LaurentPoly>>,
}

impl CanonicalSlice {
    pub fn ring(&self) -> BaseRing {
        match self.modulus {
            None => BaseRing::Integers,
            Some(e) => BaseRing::ModEps(e),
        }
    }

    pub fn len(&self) -> usize {
        self.cs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cs.is_empty()
    }

    pub fn index_of(&self, c: &[u32]) -> Option<usize> {
        self.cs.iter().position(|d| d == c)
    }

    /// `b(cs[i])` as a PBW element.
    pub fn element(&self, i: usize) -> PbwElt {
        let coords = self
            .cs
            .iter()
            .zip(&self.rows[i])
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (c.clone(), RationalFn::from_laurent(v.clone())))
            .collect();
        PbwElt { h: self.h.clone(), coords }
    }

    pub fn reduce_mod(&self, eps: i64) -> Result<CanonicalSlice> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|p| p.reduce_mod(eps)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(CanonicalSlice { modulus: Some(eps as u8), rows, ..self.clone() })
    }

    /// Diagonal 1, entries below it in `qZ[q]`, none above.
    pub fn check_shape(&self) -> Result<()> {
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let ok = match j.cmp(&i) {
                    std::cmp::Ordering::Greater => v.is_zero(),
                    std::cmp::Ordering::Equal => v.is_one(),
                    std::cmp::Ordering::Less => v.min_exp().is_none_or(|e| e >= 1),
                };
                if !ok {
                    return Err(Error::NotInQZq(format!("b{:?} at L{:?}: {v}", self.cs[i], self.cs[j])));
                }
            }
        }
        Ok(())
    }
}

/// Identifier used for caching: name plus the form matrix.
pub fn datum_key(datum: &CartanDatum) -> String {
    let form: Vec<String> = (0..datum.rank())
        .map(|i| (0..datum.rank()).map(|j| datum.b(i, j).to_string()).collect::<Vec<_>>().join(","))
        .collect();
    format!("{}[{}]", datum.name(), form.join(";"))
}

/// Runs the triangular recursion on a bar matrix over its own ring.
pub fn triangular_solve(m: &BarMatrix) -> Result<Vec<Vec<LaurentPoly>>> {
    let n = m.cs.len();
    let ring = m.rows.first().map_or(BaseRing::Integers, |r| r[0].ring());
    let mut b: Vec<Vec<LaurentPoly>> = vec![Vec::new(); n];
    for i in 0..n {
        // bar(L_c) − L_c = Σ_{d > c} s_d b_d, peeled off from the smallest d
        let mut v = m.rows[i].clone();
        v[i] = &v[i] - &LaurentPoly::one(ring);
        let mut s = vec![LaurentPoly::zero(ring); n];
        for j in (0..i).rev() {
            if v[j].is_zero() {
                continue;
            }
            s[j] = v[j].clone();
            for (k, bk) in b[j].iter().enumerate().take(j + 1) {
                if !bk.is_zero() {
                    v[k] = &v[k] - &(&s[j] * bk);
                }
            }
        }
        debug_assert!(v.iter().all(LaurentPoly::is_zero));
        let mut row = vec![LaurentPoly::zero(ring); n];
        row[i] = LaurentPoly::one(ring);
        for j in 0..i {
            if s[j].is_zero() {
                continue;
            }
            let a = skew_solve(&s[j])?;
            for (k, bk) in b[j].iter().enumerate().take(j + 1) {
                if !bk.is_zero() {
                    row[k] = &row[k] + &(&a * bk);
                }
            }
        }
        b[i] = row;
    }
    Ok(b)
}

/// The canonical basis of one weight for the PBW basis `h`, over the
/// basis's ring (a `GF(ε)` basis runs the recursion on the reduced bar
/// matrix).
pub fn canonical_slice(basis: &PbwBasis, weight: &[u32]) -> Result<Arc<CanonicalSlice>> {
    canonical_slice_cached(basis, weight, None)
}

pub fn canonical_slice_cached(basis: &PbwBasis, weight: &[u32], disk: Option<&DiskCache>) -> Result<Arc<CanonicalSlice>> {
    static MEM: OnceLock<RwLock<HashMap<(String, BaseRing, Vec<usize>, Weight), Arc<CanonicalSlice>>>> = OnceLock::new();
    let mem = MEM.get_or_init(Default::default);
    let dkey = datum_key(basis.datum());
    let key = (dkey.clone(), basis.ring(), basis.h().to_vec(), weight.to_vec());
    if let Some(s) = mem.read().get(&key) {
        return Ok(s.clone());
    }
    if let Some(d) = disk {
        if let Some(s) = d.get(&dkey, basis.h(), weight, basis.ring().modulus())? {
            let s = Arc::new(s);
            mem.write().insert(key, s.clone());
            return Ok(s);
        }
    }
    let m = match basis.ring() {
        BaseRing::Integers => bar_matrix(basis, weight)?,
        BaseRing::ModEps(e) => {
            let zb = PbwBasis::get(basis.datum(), BaseRing::Integers, basis.h())?;
            bar_matrix(&zb, weight)?.reduce_mod(e as i64)?
        }
    };
    let rows = triangular_solve(&m)?;
    let s = CanonicalSlice {
        datum: dkey,
        h: basis.h().to_vec(),
        weight: weight.to_vec(),
        modulus: basis.ring().modulus(),
        cs: m.cs,
        rows,
    };
    s.check_shape()?;
    if let Some(d) = disk {
        d.put(&s)?;
    }
    let s = Arc::new(s);
    mem.write().insert(key, s.clone());
    Ok(s)
}

/// The canonical element `b(cs[i])` as a free-algebra element.
pub fn slice_element(basis: &PbwBasis, slice: &CanonicalSlice, i: usize) -> Result<FreeElt> {
    basis.assemble(&slice.element(i))
}

/// One matched pair of a slice comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Match {
    pub c: Exponents,
    pub c_other: Exponents,
    pub sign: i32,
}

/// Matches `b(c, h) = ±b(c′, h′)` for every element of a weight. Each
/// element of the second slice is re-expanded in the first basis; its
/// candidate partner is the unique `L(c, h)` with a nonzero `q⁰`
/// coefficient, and the match is then checked exactly.
pub fn compare_slices(basis: &PbwBasis, other: &PbwBasis, weight: &[u32]) -> Result<Vec<Match>> {
    let a = canonical_slice(basis, weight)?;
    let b = canonical_slice(other, weight)?;
    if a.len() != b.len() {
        return Err(Error::NoBijection(format!("{weight:?}: sizes {} and {}", a.len(), b.len())));
    }
    let matches: Vec<Match> = (0..b.len())
        .into_par_iter()
        .map(|j| {
            let e = basis.transition(other, &b.element(j))?;
            let mut lead = None;
            for (c, v) in &e.coords {
                let v = v.to_laurent().map_err(|_| Error::NotLaurent(format!("{v}")))?;
                let k = v.coeff(0);
                if k != ibig::IBig::from(0) {
                    if lead.is_some() {
                        return Err(Error::NoBijection(format!("{:?} has two leading terms", b.cs[j])));
                    }
                    let sign = if k == ibig::IBig::from(1) {
                        1
                    } else if k == ibig::IBig::from(-1) {
                        -1
                    } else {
                        return Err(Error::NoBijection(format!("{:?}: leading coefficient {k}", b.cs[j])));
                    };
                    lead = Some((c.clone(), sign));
                }
            }
            let (c, sign) = lead.ok_or_else(|| Error::NoBijection(format!("{:?} has no leading term", b.cs[j])))?;
            let i = a.index_of(&c).expect("same weight");
            let target = a.element(i);
            let s = RationalFn::constant(sign as i64, basis.ring());
            let ok = target.coords.len() == e.coords.len()
                && target.coords.iter().all(|(d, v)| e.coords.get(d).is_some_and(|w| *w == v * &s));
            if !ok {
                return Err(Error::NoBijection(format!("{:?} ≠ ±{:?}", b.cs[j], c)));
            }
            Ok(Match { c, c_other: b.cs[j].clone(), sign })
        })
        .collect::<Result<_>>()?;
    let mut seen: Vec<&Exponents> = matches.iter().map(|m| &m.c).collect();
    seen.sort();
    seen.dedup();
    if seen.len() != matches.len() {
        return Err(Error::NoBijection(format!("{weight:?}: not injective")));
    }
    Ok(matches)
}

/// Indices of the `σ`-stable elements of a slice for a lifted word with
/// the given blocks. `σ(b(c)) = b(σc)` by uniqueness, so the stable ones
/// are those with `σc = c`; the images are also checked coordinatewise.
pub fn sigma_stable_elements(
    slice: &CanonicalSlice,
    aut: &DiagramAut,
    blocks: &[std::ops::Range<usize>],
) -> Result<Vec<usize>> {
    let w = &slice.weight;
    if (0..w.len()).any(|i| w[i] != w[aut.apply(i)]) {
        return Err(Error::WeightNotStable(format!("{w:?}")));
    }
    let mut out = Vec::new();
    for (i, c) in slice.cs.iter().enumerate() {
        let sc = sigma_exponents(aut, &slice.h, blocks, c);
        let k = slice.index_of(&sc).ok_or_else(|| Error::Alignment(format!("σ{c:?} missing")))?;
        for (j, d) in slice.cs.iter().enumerate() {
            let sd = sigma_exponents(aut, &slice.h, blocks, d);
            let l = slice.index_of(&sd).expect("σ preserves the weight");
            if slice.rows[i][j] != slice.rows[k][l] {
                return Err(Error::Alignment(format!("σ(b{c:?}) ≠ b{sc:?}")));
            }
        }
        if sc == *c {
            out.push(i);
        }
    }
    Ok(out)
}
