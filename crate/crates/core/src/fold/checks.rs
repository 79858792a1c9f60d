//! Comparisons between the folded algebra and `V_q`.

use rayon::prelude::*;

use super::{Folding, VqElt};
use crate::canonical::{canonical_slice_cached, sigma_stable_elements, DiskCache};
use crate::error::{Error, Result};
use crate::freealg::FreeElt;
use crate::pbw::{apply_block, Exponents, PbwBasis};
use crate::qarith::{BaseRing, LaurentPoly, RationalFn};

/// Both sides of the rank-two root-vector comparison for one `k`.
#[derive(Clone, Debug)]
pub struct Lemma113Row {
    /// 0-based position in `ulh`.
    pub k: usize,
    pub left: VqElt,
    pub right: VqElt,
    pub ok: bool,
}

/// For each `k`, `Φ(ulT_{η_1}⋯ulT_{η_{k−1}}(ulf_{η_k}))` (braid action in
/// `ulX`) against `π(R_{η_1}⋯R_{η_{k−1}}(˜f_{η_k}))` (block braid action in
/// `X`).
pub fn lemma113_check(f: &Folding, ulh: &[usize]) -> Result<Vec<Lemma113Row>> {
    if f.ulx().rank() != 2 {
        return Err(Error::InvalidDatum(vec!["the folded datum must have rank 2".into()]));
    }
    let ul = PbwBasis::get(f.ulx(), BaseRing::Integers, ulh)?;
    (0..ulh.len())
        .into_par_iter()
        .map(|k| {
            let left = f.phi_apply(&ul.braid_root_vector(k)?, ulh)?;
            let mut acc = FreeElt::one(f.x(), BaseRing::Integers);
            for &i in f.orbit(ulh[k]) {
                let mut y = FreeElt::generator(f.x(), BaseRing::Integers, i, 1);
                for &eta in ulh[..k].iter().rev() {
                    y = apply_block(f.orbit(eta), &y)?;
                }
                acc = acc.multiply(&y)?;
            }
            let right = f.pi_project(&acc, ulh)?;
            let ok = left == right;
            Ok(Lemma113Row { k, left, right, ok })
        })
        .collect()
}

/// `Φ(L(ulc, ulh)) = E(ulc, ulh)`.
pub fn thm114_check(f: &Folding, ulc: &[u32], ulh: &[usize]) -> Result<bool> {
    let ul = PbwBasis::get(f.ulx(), BaseRing::Integers, ulh)?;
    let lhs = f.phi_apply(&ul.monomial(ulc)?, ulh)?;
    Ok(lhs.coords == f.unit(ulh, ulc)?.coords)
}

/// Rank over `GF(ε)(q)` (or `Q(q)`) of a list of rows, by elimination.
pub fn rank(mut rows: Vec<Vec<RationalFn>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        let pivot: Vec<RationalFn> = rows[r].iter().map(|x| x * &inv).collect();
        for row in rows.iter_mut().skip(r + 1) {
            if row[col].is_zero() {
                continue;
            }
            let m = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x = &*x - &(&m * y);
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

/// The `Φ`-images of the PBW basis of `ulX` at folded weight `ulw` span the
/// weight space of `V_q`, whose dimension is the number of block-constant
/// exponents.
pub fn surjectivity_check(f: &Folding, ulw: &[u32], ulh: &[usize]) -> Result<bool> {
    let ul = PbwBasis::get(f.ulx(), BaseRing::Integers, ulh)?;
    let lifted = f.lift(ulh)?;
    let basis = PbwBasis::get(f.x(), BaseRing::Integers, &lifted.word)?;
    let dim: Vec<Exponents> = basis
        .enumerate_c(&f.lift_weight(ulw))
        .into_iter()
        .filter_map(|c| f.fold_exponents(&lifted, &c))
        .collect();
    let images: Vec<VqElt> =
        ul.enumerate_c(ulw).par_iter().map(|c| f.phi_apply(&ul.monomial(c)?, ulh)).collect::<Result<_>>()?;
    let rows = images.iter().map(|v| dim.iter().map(|c| v.coeff(c)).collect()).collect();
    Ok(images.len() == dim.len() && rank(rows) == dim.len())
}

/// One coefficient pair of the congruence comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceRow {
    /// Folded weight.
    pub weight: Vec<u32>,
    pub ulc: Exponents,
    pub uld: Exponents,
    /// Coefficient of `L(uld, ulh)` in the canonical element `b(ulc)` of `ulX`.
    pub a_ul: LaurentPoly,
    /// Coefficient of `L(d, h)` in the σ-stable canonical element `b(c)` of `X`.
    pub a_x: LaurentPoly,
    pub congruent: bool,
}

impl CongruenceRow {
    pub const CSV_HEADER: &'static str = "weight,ulc,uld,a_uld,a'_d',congruent";

    pub fn csv(&self) -> String {
        let v = |x: &[u32]| x.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        format!(
            "{},{},{},{},{},{}",
            v(&self.weight),
            v(&self.ulc),
            v(&self.uld),
            self.a_ul,
            self.a_x,
            self.congruent
        )
    }
}

/// Coefficientwise comparison, mod ε, of the canonical basis of `ulX` with
/// the σ-stable canonical basis of `X` at one folded weight. Rows are listed
/// for every pair where either coefficient is nonzero.
pub fn congruence_report(
    f: &Folding,
    ulw: &[u32],
    ulh: &[usize],
    cache: Option<&DiskCache>,
) -> Result<Vec<CongruenceRow>> {
    let lifted = f.lift(ulh)?;
    let ul = PbwBasis::get(f.ulx(), BaseRing::Integers, ulh)?;
    let basis = PbwBasis::get(f.x(), BaseRing::Integers, &lifted.word)?;
    let ul_slice = canonical_slice_cached(&ul, ulw, cache)?;
    let slice = canonical_slice_cached(&basis, &f.lift_weight(ulw), cache)?;
    let stable = sigma_stable_elements(&slice, f.aut(), &lifted.blocks)?;
    if stable.len() != ul_slice.len() {
        return Err(Error::Alignment(format!(
            "{} σ-stable elements against {} at {ulw:?}",
            stable.len(),
            ul_slice.len()
        )));
    }
    let eps = f.eps() as i64;
    let mut rows = Vec::new();
    for i in stable {
        let ulc = f
            .fold_exponents(&lifted, &slice.cs[i])
            .ok_or_else(|| Error::Alignment(format!("{:?} is not block-constant", slice.cs[i])))?;
        let ui = ul_slice.index_of(&ulc).ok_or_else(|| Error::Alignment(format!("{ulc:?} missing")))?;
        for (uj, uld) in ul_slice.cs.iter().enumerate() {
            let j = slice.index_of(&f.lift_exponents(&lifted, uld)).expect("lifted exponents have the same weight");
            let (a_ul, a_x) = (ul_slice.rows[ui][uj].clone(), slice.rows[i][j].clone());
            if a_ul.is_zero() && a_x.is_zero() {
                continue;
            }
            let congruent = a_ul.reduce_mod(eps)? == a_x.reduce_mod(eps)?;
            rows.push(CongruenceRow { weight: ulw.to_vec(), ulc: ulc.clone(), uld: uld.clone(), a_ul, a_x, congruent });
        }
    }
    rows.sort_by(|a, b| (b.ulc.clone(), b.uld.clone()).cmp(&(a.ulc.clone(), a.uld.clone())));
    Ok(rows)
}

/// Outcome of the bijection comparison at one folded weight.
#[derive(Clone, Debug)]
pub struct BijectionReport {
    /// `π(b)` for `b` σ-stable, by folded exponent.
    pub projected: Vec<(Exponents, VqElt)>,
    /// `Φ(ulb)` by exponent.
    pub images: Vec<(Exponents, VqElt)>,
    /// Sets agree.
    pub equal: bool,
    /// Every `π(b)` is `E(ulc) + Σ_{ulc<uld} a E(uld)` with `a ∈ qGF(ε)[q]`.
    pub shape: bool,
}

impl BijectionReport {
    pub fn ok(&self) -> bool {
        self.equal && self.shape
    }
}

/// Compares `{π(b) : b ∈ B^σ}` with `{Φ(ulb) : ulb ∈ ulB}` at one folded
/// weight; `Φ(ulb)` is computed from `ulb` written out in the free algebra.
pub fn bijection_check(f: &Folding, ulw: &[u32], ulh: &[usize], cache: Option<&DiskCache>) -> Result<BijectionReport> {
    let lifted = f.lift(ulh)?;
    let ul = PbwBasis::get(f.ulx(), BaseRing::Integers, ulh)?;
    let basis = PbwBasis::get(f.x(), BaseRing::Integers, &lifted.word)?;
    let weight = f.lift_weight(ulw);
    let ul_slice = canonical_slice_cached(&ul, ulw, cache)?;
    let slice = canonical_slice_cached(&basis, &weight, cache)?;
    let stable = sigma_stable_elements(&slice, f.aut(), &lifted.blocks)?;
    let projected: Vec<(Exponents, VqElt)> = stable
        .par_iter()
        .map(|&i| {
            let ulc = f.fold_exponents(&lifted, &slice.cs[i]).ok_or(Error::NotSigmaFixed)?;
            Ok((ulc, f.project_pbw(ulh, &weight, &slice.element(i))?))
        })
        .collect::<Result<_>>()?;
    let images: Vec<(Exponents, VqElt)> = (0..ul_slice.len())
        .into_par_iter()
        .map(|i| {
            let x = ul.assemble(&ul_slice.element(i))?;
            Ok((ul_slice.cs[i].clone(), f.phi_apply(&x, ulh)?))
        })
        .collect::<Result<_>>()?;
    let equal = projected.len() == images.len()
        && projected.iter().all(|(_, v)| images.iter().filter(|(_, w)| w == v).count() == 1)
        && images.iter().all(|(_, w)| projected.iter().any(|(_, v)| v == w));
    let shape = projected.iter().all(|(ulc, v)| {
        v.coeff(ulc).is_one()
            && v.coords.iter().all(|(d, a)| {
                d == ulc || (d > ulc && a.as_laurent().is_some_and(|p| p.min_exp().is_some_and(|m| m >= 1)))
            })
    });
    Ok(BijectionReport { projected, images, equal, shape })
}
