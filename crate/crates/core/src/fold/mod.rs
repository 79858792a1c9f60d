//! The σ-fixed part modulo ε, the quotient `V_q`, the projection `π` and the
//! homomorphism `Φ` from the folded algebra.
//!
//! Elements of `V_q` are stored by their coordinates in the basis
//! `E(ulc, ulh) = π(L(c, h))`, `c` block-constant. Since the PBW basis is
//! orthogonal and `σ` permutes it, `π(x)` is read off from the PBW
//! coordinates of `x` over `GF(ε)(q)`: non-block-constant `c` come in σ-orbits
//! with equal coefficients and those orbit sums lie in `J`.

mod checks;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::cartan::{builtin_pair, fold, CartanDatum, DiagramAut, FoldedDatum};
use crate::error::{Error, Result};
use crate::freealg::{FreeElt, Weight, WordSpace};
use crate::pbw::{sigma_exponents, Exponents, PbwBasis, PbwElt};
use crate::qarith::{BaseRing, RationalFn};
use crate::weyl::{lift_word, LiftedWord, RootSystem};

pub use checks::{
    bijection_check, congruence_report, lemma113_check, rank, surjectivity_check, thm114_check, BijectionReport,
    CongruenceRow, Lemma113Row,
};

/// A diagram automorphism `σ` of `X` together with the folded datum `ulX`.
#[derive(Debug, Clone)]
pub struct Folding {
    x: Arc<CartanDatum>,
    aut: DiagramAut,
    folded: FoldedDatum,
    ulx: Arc<CartanDatum>,
    roots: Arc<RootSystem>,
    ulroots: Arc<RootSystem>,
}

impl Folding {
    pub fn new(x: Arc<CartanDatum>, aut: DiagramAut) -> Result<Self> {
        BaseRing::mod_eps(aut.order() as i64)?;
        let folded = fold(&x, &aut);
        let ulx = Arc::new(folded.datum.clone());
        let roots = Arc::new(RootSystem::new(x.clone())?);
        let ulroots = Arc::new(RootSystem::new(ulx.clone())?);
        Ok(Folding { x, aut, folded, ulx, roots, ulroots })
    }

    /// `A3:B2`, `D4:G2`, `A2xA2:A2`, or either side of one of them alone.
    pub fn builtin(name: &str) -> Result<Self> {
        let (src, dst) = match name.split_once(':') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (name.trim(), None),
        };
        let (x, aut) = builtin_pair(src)?;
        let f = Folding::new(x, aut)?;
        if let Some(d) = dst {
            let key = |s: &str| s.to_ascii_uppercase().replace('×', "X");
            if key(d) != key(f.ulx.name()) || builtin_pair(d)?.0 != f.x {
                return Err(Error::UnknownDatum(name.to_string()));
            }
        }
        Ok(f)
    }

    /// `X:ulX`.
    pub fn name(&self) -> String {
        format!("{}:{}", self.x.name(), self.ulx.name())
    }

    pub fn x(&self) -> &Arc<CartanDatum> {
        &self.x
    }

    pub fn ulx(&self) -> &Arc<CartanDatum> {
        &self.ulx
    }

    pub fn aut(&self) -> &DiagramAut {
        &self.aut
    }

    pub fn folded(&self) -> &FoldedDatum {
        &self.folded
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn ulroots(&self) -> &RootSystem {
        &self.ulroots
    }

    pub fn eps(&self) -> u8 {
        self.aut.order()
    }

    /// `GF(ε)`.
    pub fn ring(&self) -> BaseRing {
        BaseRing::ModEps(self.eps())
    }

    pub fn orbit(&self, eta: usize) -> &[usize] {
        &self.folded.orbits[eta]
    }

    /// The reduced words of the longest element of `ulW`.
    pub fn longest_words(&self) -> Vec<Vec<usize>> {
        let nu = self.ulroots.longest_element().0;
        let mut v: Vec<Vec<usize>> = self.ulroots.reduced_words().filter(|w| w.len() == nu).collect();
        v.sort();
        v
    }

    pub fn lift(&self, ulh: &[usize]) -> Result<LiftedWord> {
        let lifted = lift_word(&self.folded, &self.ulroots, &self.roots, ulh)?;
        if !self.ulroots.is_longest_word(ulh) {
            return Err(Error::NotReduced(self.ulroots.word_string(ulh)));
        }
        Ok(lifted)
    }

    /// `ulc ↦ c` with `c_j = γ_k` for `j ∈ I_k`.
    pub fn lift_exponents(&self, lifted: &LiftedWord, ulc: &[u32]) -> Exponents {
        let mut c = vec![0; lifted.word.len()];
        for (b, &g) in lifted.blocks.iter().zip(ulc) {
            c[b.clone()].fill(g);
        }
        c
    }

    /// The inverse of [`Folding::lift_exponents`]; `None` unless `c` is
    /// constant on each block.
    pub fn fold_exponents(&self, lifted: &LiftedWord, c: &[u32]) -> Option<Exponents> {
        lifted
            .blocks
            .iter()
            .map(|b| {
                let v = c[b.start];
                c[b.clone()].iter().all(|&x| x == v).then_some(v)
            })
            .collect()
    }

    pub fn lift_weight(&self, ulw: &[u32]) -> Weight {
        self.folded.orbit_of.iter().map(|&e| ulw[e]).collect()
    }

    /// The folded weight of a σ-stable weight.
    pub fn fold_weight(&self, w: &[u32]) -> Result<Weight> {
        if (0..w.len()).any(|i| w[i] != w[self.aut.apply(i)]) {
            return Err(Error::WeightNotStable(format!("{w:?}")));
        }
        Ok(self.folded.orbits.iter().map(|o| w[o[0]]).collect())
    }

    /// Folded weights of height (in `ulX`) at most `height`, nonzero.
    pub fn weights_up_to(&self, height: u32) -> Vec<Weight> {
        let n = self.ulx.rank();
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn go(k: usize, left: u32, cur: &mut Weight, out: &mut Vec<Weight>) {
            if k == cur.len() {
                if cur.iter().any(|&x| x > 0) {
                    out.push(cur.clone());
                }
                return;
            }
            for a in 0..=left {
                cur[k] = a;
                go(k + 1, left - a, cur, out);
            }
            cur[k] = 0;
        }
        go(0, height, &mut cur, &mut out);
        out.sort_by_key(|w| (w.iter().sum::<u32>(), w.clone()));
        out
    }

    fn basis(&self, h: &[usize], ring: BaseRing) -> Result<Arc<PbwBasis>> {
        PbwBasis::get(&self.x, ring, h)
    }

    fn ulbasis(&self, ulh: &[usize], ring: BaseRing) -> Result<Arc<PbwBasis>> {
        PbwBasis::get(&self.ulx, ring, ulh)
    }

    fn to_ring(&self, x: &FreeElt) -> Result<FreeElt> {
        match x.ring() {
            BaseRing::Integers => x.reduce_mod(self.eps() as i64),
            r => {
                r.check(self.ring())?;
                Ok(x.clone())
            }
        }
    }

    /// The unit vector `E(ulc, ulh)`.
    pub fn unit(&self, ulh: &[usize], ulc: &[u32]) -> Result<VqElt> {
        let ul = self.ulbasis(ulh, BaseRing::Integers)?;
        let mut weight = vec![0; self.ulx.rank()];
        for (b, &g) in ul.betas().iter().zip(ulc) {
            for (w, &x) in weight.iter_mut().zip(b) {
                *w += g * x;
            }
        }
        let mut v = VqElt::zero(ulh, &weight, self.eps());
        v.coords.insert(ulc.to_vec(), RationalFn::one(self.ring()));
        Ok(v)
    }

    /// `π` applied to PBW coordinates in the lifted word of `ulh` (over `Z`
    /// or `GF(ε)`); checks that the coordinates are σ-invariant.
    pub fn project_pbw(&self, ulh: &[usize], weight: &[u32], e: &PbwElt) -> Result<VqElt> {
        let lifted = self.lift(ulh)?;
        if e.h != lifted.word {
            return Err(Error::Alignment("PBW coordinates refer to another word".into()));
        }
        let ulw = self.fold_weight(weight)?;
        let eps = self.eps() as i64;
        let mut coords = BTreeMap::new();
        for (c, v) in &e.coords {
            let v = match v.ring() {
                BaseRing::Integers => v.reduce_mod(eps)?,
                _ => v.clone(),
            };
            if v.is_zero() {
                continue;
            }
            let sc = sigma_exponents(&self.aut, &lifted.word, &lifted.blocks, c);
            let w = e.coeff(&sc);
            let w = match w.ring() {
                BaseRing::Integers => w.reduce_mod(eps)?,
                _ => w,
            };
            if w != v {
                return Err(Error::NotSigmaFixed);
            }
            if let Some(ulc) = self.fold_exponents(&lifted, c) {
                coords.insert(ulc, v);
            }
        }
        Ok(VqElt { ulh: ulh.to_vec(), weight: ulw, eps: self.eps(), coords })
    }

    /// `π(x)` for a homogeneous σ-fixed `x` (coefficients over `Z` are
    /// reduced first).
    pub fn pi_project(&self, x: &FreeElt, ulh: &[usize]) -> Result<VqElt> {
        if **x.datum() != *self.x {
            return Err(Error::DatumMismatch);
        }
        let x = self.to_ring(x)?;
        let weight = match x.weight() {
            Some(w) => w,
            None if x.is_free_zero() => {
                return Ok(VqElt::zero(ulh, &vec![0; self.ulx.rank()], self.eps()));
            }
            None => return Err(Error::WeightNotStable("inhomogeneous element".into())),
        };
        self.fold_weight(&weight)?;
        let lifted = self.lift(ulh)?;
        let e = self.basis(&lifted.word, self.ring())?.expand(&x)?;
        self.project_pbw(ulh, &weight, &e)
    }

    /// The letter substitution `ulf_η^{(a)} ↦ ˜f_η^{(a)} = ∏_{i∈η} f_i^{(a)}`,
    /// reduced to `GF(ε)`.
    pub fn substitute(&self, ulx: &FreeElt) -> Result<FreeElt> {
        if **ulx.datum() != *self.ulx {
            return Err(Error::DatumMismatch);
        }
        let ulx = self.to_ring(ulx)?;
        let terms = ulx.terms().iter().map(|(w, c)| {
            let word = w
                .iter()
                .flat_map(|&(eta, a)| self.orbit(eta as usize).iter().map(move |&i| (i as u8, a)))
                .collect();
            (word, c.clone())
        });
        Ok(FreeElt::from_terms(&self.x, self.ring(), terms))
    }

    /// `Φ(ulx)`.
    pub fn phi_apply(&self, ulx: &FreeElt, ulh: &[usize]) -> Result<VqElt> {
        self.pi_project(&self.substitute(ulx)?, ulh)
    }

    /// `Σ_ulc v_ulc L(c, h)` over `GF(ε)`, a σ-fixed representative of `v`.
    pub fn lift_vq(&self, v: &VqElt) -> Result<FreeElt> {
        let lifted = self.lift(&v.ulh)?;
        let basis = self.basis(&lifted.word, self.ring())?;
        let mut terms = BTreeMap::new();
        for (ulc, a) in &v.coords {
            for (w, b) in basis.monomial(&self.lift_exponents(&lifted, ulc))?.terms() {
                let t = terms.entry(w.clone()).or_insert_with(|| RationalFn::zero(self.ring()));
                *t = &*t + &(a * b);
            }
        }
        Ok(FreeElt::from_terms(&self.x, self.ring(), terms))
    }

    /// The product in `V_q`.
    pub fn vq_mul(&self, a: &VqElt, b: &VqElt) -> Result<VqElt> {
        if a.ulh != b.ulh {
            return Err(Error::Alignment("factors use different words".into()));
        }
        self.pi_project(&self.lift_vq(a)?.multiply(&self.lift_vq(b)?)?, &a.ulh)
    }

    /// The bar involution of `V_q`, `π(x) ↦ π(bar x)`.
    pub fn vq_bar(&self, v: &VqElt) -> Result<VqElt> {
        let y = self.lift_vq(v)?.bar();
        let mut out = self.pi_project(&y, &v.ulh)?;
        out.weight = v.weight.clone();
        Ok(out)
    }

    /// Orbit sums `Σ_{i<ε} σ^i(w)` over the words `w` of weight `μ` that are
    /// not σ-fixed, one per orbit. Together they span `J` in weight `μ`.
    pub fn j_slice(&self, weight: &[u32]) -> Result<JSlice> {
        self.fold_weight(weight)?;
        let space = WordSpace::get(weight);
        let n = self.eps() as usize;
        let ring = self.ring();
        let mut elements = Vec::new();
        for w in space.words() {
            let orbit: Vec<Vec<u8>> = (0..n)
                .scan(w.clone(), |cur, _| {
                    let out = cur.clone();
                    *cur = cur.iter().map(|&i| self.aut.apply(i as usize) as u8).collect();
                    Some(out)
                })
                .collect();
            if orbit.iter().skip(1).any(|u| u == w) || orbit.iter().any(|u| u < w) {
                continue;
            }
            let terms = orbit.into_iter().map(|u| (u.into_iter().map(|i| (i, 1)).collect(), RationalFn::one(ring)));
            elements.push(FreeElt::from_terms(&self.x, ring, terms));
        }
        Ok(JSlice { weight: weight.to_vec(), elements })
    }
}

/// An element of `V_q` in the basis `E(ulc, ulh)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VqElt {
    pub ulh: Vec<usize>,
    /// Weight in `ulX`.
    pub weight: Weight,
    pub eps: u8,
    pub coords: BTreeMap<Exponents, RationalFn>,
}

impl VqElt {
    pub fn zero(ulh: &[usize], weight: &[u32], eps: u8) -> Self {
        VqElt { ulh: ulh.to_vec(), weight: weight.to_vec(), eps, coords: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coeff(&self, ulc: &[u32]) -> RationalFn {
        self.coords.get(ulc).cloned().unwrap_or_else(|| RationalFn::zero(BaseRing::ModEps(self.eps)))
    }

    pub fn is_laurent(&self) -> bool {
        self.coords.values().all(|v| v.as_laurent().is_some())
    }

    pub fn scale(&self, s: &RationalFn) -> Self {
        let mut out = self.clone();
        out.coords = self.coords.iter().map(|(c, v)| (c.clone(), v * s)).filter(|(_, v)| !v.is_zero()).collect();
        out
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.ulh != other.ulh || self.eps != other.eps {
            return Err(Error::Alignment("summands use different words".into()));
        }
        let mut out = self.clone();
        for (c, v) in &other.coords {
            let s = &out.coeff(c) + v;
            if s.is_zero() {
                out.coords.remove(c);
            } else {
                out.coords.insert(c.clone(), s);
            }
        }
        if self.is_zero() {
            out.weight = other.weight.clone();
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ulh": self.ulh,
            "weight": self.weight,
            "eps": self.eps,
            "coords": self.coords.iter().map(|(c, v)| serde_json::json!([c, v.to_string()])).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for VqElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, v)) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let idx: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            if v.is_one() {
                write!(f, "E({})", idx.join(","))?;
            } else {
                write!(f, "({v})*E({})", idx.join(","))?;
            }
        }
        Ok(())
    }
}

/// A spanning set of `J` in one σ-stable weight.
#[derive(Clone, Debug)]
pub struct JSlice {
    pub weight: Weight,
    pub elements: Vec<FreeElt>,
}
