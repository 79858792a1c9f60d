//! Named verification suites.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use qfold::canonical::{bar_matrix, canonical_slice, canonical_slice_cached, compare_slices, DiskCache};
use qfold::cartan::{builtin, CartanDatum};
use qfold::fold::{bijection_check, congruence_report, lemma113_check, surjectivity_check, thm114_check, Folding};
use qfold::freealg::{is_zero, serre_element, FreeElt};
use qfold::pbw::{PbwBasis, PbwElt};
use qfold::qarith::{BaseRing, LaurentPoly, RationalFn};
use qfold::weyl::{parse_word, word_string, RootSystem};
use qfold::{Error, Result};

use crate::identities::{self, Context, Identity};
use crate::report::{run_jobs, Job, Outcome, SuiteReport};

const Z: BaseRing = BaseRing::Integers;

pub const SUITES: &[&str] = &["serre", "pbw-orth", "canonical", "section3", "section4", "fold", "congruence", "all"];

pub const FOLDINGS: &[&str] = &["A2xA2:A2", "A3:B2", "D4:G2"];

/// Options shared by all suites. `None` means the per-type default.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub height: Option<u32>,
    /// Restrict to one Cartan type (`serre`, `pbw-orth`, `canonical`).
    pub ty: Option<String>,
    /// Restrict to one folding (`section3`, `section4`, `fold`, `congruence`).
    pub pair: Option<String>,
    /// Restrict to one reduced word of the folded longest element.
    pub hword: Option<String>,
    pub cache: Option<Arc<DiskCache>>,
}

/// Height bound used unless `--height` is given. `A2xA2` stops at 5: its
/// height-6 weights lift to height 12 in rank 4, which does not fit in a
/// few GB.
pub fn default_height(name: &str) -> u32 {
    if name.contains("D4") || name.contains("G2") {
        4
    } else if name.contains("A2xA2") {
        5
    } else {
        6
    }
}

fn height_for(opts: &Options, name: &str) -> u32 {
    opts.height.unwrap_or_else(|| default_height(name))
}

pub fn datum(name: &str) -> Result<Arc<CartanDatum>> {
    Ok(Arc::new(builtin(name)?.0))
}

/// Two reduced words of the longest element: both for rank 2, the lifts of
/// both folded words for `A3` and `D4`, otherwise the first two found.
pub fn two_words(name: &str) -> Result<Vec<Vec<usize>>> {
    match name {
        "A3" | "D4" => {
            let f = Folding::builtin(name)?;
            f.longest_words().iter().map(|w| Ok(f.lift(w)?.word)).collect()
        }
        _ => {
            let rs = RootSystem::new(datum(name)?)?;
            let mut ws: Vec<Vec<usize>> = rs.reduced_words().take(2).collect();
            ws.sort();
            Ok(ws)
        }
    }
}

/// Nonzero weights of height at most `height`, by height, then lexicographically.
pub fn weights_up_to(rank: usize, height: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for n in 1..=height {
        let mut w = vec![0u32; rank];
        compositions(n, 0, &mut w, &mut out);
    }
    out
}

fn compositions(left: u32, i: usize, w: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if i + 1 == w.len() {
        w[i] = left;
        out.push(w.clone());
        return;
    }
    for a in (0..=left).rev() {
        w[i] = a;
        compositions(left - a, i + 1, w, out);
    }
    w[i] = 0;
}

fn all_words(rank: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|w| (0..rank).map(move |i| [w.clone(), vec![i]].concat())).collect();
    }
    out
}

fn types(opts: &Options, all: &[&'static str]) -> Vec<String> {
    match &opts.ty {
        Some(t) => vec![t.clone()],
        None => all.iter().map(|s| s.to_string()).collect(),
    }
}

fn foldings(opts: &Options) -> Result<Vec<String>> {
    match &opts.pair {
        Some(p) => Ok(vec![Folding::builtin(p)?.name()]),
        None => Ok(FOLDINGS.iter().map(|s| s.to_string()).collect()),
    }
}

fn folded_words(f: &Folding, opts: &Options) -> Result<Vec<Vec<usize>>> {
    match &opts.hword {
        Some(s) => {
            let w = parse_word(f.ulx(), s)?;
            if !f.longest_words().contains(&w) {
                return Err(Error::Parse(format!("{s} is not a reduced word of the longest element of {}", f.ulx().name())));
            }
            Ok(vec![w])
        }
        None => Ok(f.longest_words()),
    }
}

fn label_word(d: &CartanDatum, w: &[usize]) -> String {
    qfold::cartan::ascii_label(&w.iter().map(|&i| d.label(i)).collect::<Vec<_>>().join(""))
}

/// Serre elements and their products with all words up to the height bound
/// lie in the radical of the form.
fn serre_jobs(opts: &Options) -> Result<Vec<Job>> {
    let mut jobs: Vec<Job> = Vec::new();
    for ty in types(opts, &["A2", "A3", "B2", "D4", "G2"]) {
        let d = datum(&ty)?;
        let height = opts.height.unwrap_or(6);
        for i in 0..d.rank() {
            for j in 0..d.rank() {
                if i == j {
                    continue;
                }
                let d = d.clone();
                let id = format!("serre-{ty}-{}-{}", qfold::cartan::ascii_label(d.label(i)), qfold::cartan::ascii_label(d.label(j)));
                jobs.push((
                    id,
                    Box::new(move || {
                        let s = serre_element(&d, Z, i, j)?;
                        let hs: u32 = s.weight().map_or(0, |w| w.iter().sum());
                        let mut n = 0;
                        for extra in 0..=height.saturating_sub(hs) as usize {
                            for w in all_words(d.rank(), extra) {
                                for cut in 0..=extra {
                                    let u = FreeElt::plain(&d, Z, &w[..cut]);
                                    let v = FreeElt::plain(&d, Z, &w[cut..]);
                                    let x = u.multiply(&s)?.multiply(&v)?;
                                    n += 1;
                                    if !is_zero(&x)? {
                                        return Ok(Outcome::fail(format!("{} · S · {} is not in the radical", label_word(&d, &w[..cut]), label_word(&d, &w[cut..])))
                                            .with_witness(x.to_json()));
                                    }
                                }
                            }
                        }
                        Ok(Outcome::pass().with_detail(format!("{n} products")))
                    }),
                ));
            }
        }
    }
    Ok(jobs)
}

fn orth_bound(ty: &str) -> u32 {
    if ty == "D4" || ty == "G2" {
        2
    } else {
        3
    }
}

/// Exponent vectors with `Σc ≤ n`, grouped by weight.
fn exponents_by_weight(basis: &PbwBasis, n: u32) -> BTreeMap<Vec<u32>, Vec<Vec<u32>>> {
    let nu = basis.nu();
    let mut out: BTreeMap<Vec<u32>, Vec<Vec<u32>>> = BTreeMap::new();
    let mut stack = vec![(vec![0u32; nu], 0usize, 0u32)];
    while let Some((c, k, s)) = stack.pop() {
        if k == nu {
            if s > 0 {
                let mut w = vec![0u32; basis.datum().rank()];
                for (ck, b) in c.iter().zip(basis.betas()) {
                    for (x, y) in w.iter_mut().zip(b) {
                        *x += ck * y;
                    }
                }
                out.entry(w).or_default().push(c);
            }
            continue;
        }
        for a in 0..=(n - s) {
            let mut c2 = c.clone();
            c2[k] = a;
            stack.push((c2, k + 1, s + a));
        }
    }
    for v in out.values_mut() {
        v.sort();
    }
    out
}

fn pbw_orth_jobs(opts: &Options) -> Result<Vec<Job>> {
    let mut jobs: Vec<Job> = Vec::new();
    for ty in types(opts, &["A2", "A3", "B2", "D4", "G2"]) {
        let d = datum(&ty)?;
        let words = two_words(&ty)?;
        for h in &words {
            let (d, h, ty) = (d.clone(), h.clone(), ty.clone());
            let n = opts.height.unwrap_or_else(|| orth_bound(&ty));
            jobs.push((
                format!("pbw-orth-{ty}-{}", label_word(&d, &h)),
                Box::new(move || {
                    let basis = PbwBasis::get(&d, Z, &h)?;
                    let mut pairs = 0;
                    for cs in exponents_by_weight(&basis, n).values() {
                        let phis = cs.iter().map(|c| basis.monomial_phi(c)).collect::<Result<Vec<_>>>()?;
                        for (a, phi) in phis.iter().enumerate() {
                            for (b, c) in cs.iter().enumerate() {
                                let v = basis.pair_factored(phi, &basis.factored(c, false)?);
                                pairs += 1;
                                if (a == b) == v.is_zero() {
                                    return Ok(Outcome::fail(format!("(L{:?}, L{:?}) = {v}", cs[a], c)));
                                }
                            }
                        }
                    }
                    Ok(Outcome::pass().with_detail(format!("{pairs} pairs, Σc ≤ {n}")))
                }),
            ));
        }
        let (d, ty2) = (d.clone(), ty.clone());
        let height = height_for(opts, &ty);
        jobs.push((
            format!("pbw-integral-{ty}"),
            Box::new(move || {
                let a = PbwBasis::get(&d, Z, &words[0])?;
                let b = PbwBasis::get(&d, Z, &words[1])?;
                let mut n = 0;
                for w in weights_up_to(d.rank(), height) {
                    for (x, y) in [(&a, &b), (&b, &a)] {
                        for c in y.enumerate_c(&w) {
                            let e = PbwElt { h: y.h().to_vec(), coords: [(c.clone(), RationalFn::constant(1, Z))].into() };
                            let t = x.transition(y, &e)?;
                            n += 1;
                            if !t.is_laurent() {
                                return Ok(Outcome::fail(format!("{ty2}: L{c:?} has a non-Laurent coordinate")));
                            }
                        }
                    }
                }
                Ok(Outcome::pass().with_detail(format!("{n} monomials up to height {height}")))
            }),
        ));
    }
    Ok(jobs)
}

/// `bar(b) = b` in PBW coordinates, using the bar matrix of the weight.
fn bar_invariant(basis: &PbwBasis, w: &[u32]) -> Result<bool> {
    let s = canonical_slice(basis, w)?;
    let m = bar_matrix(basis, w)?;
    let pos: Vec<usize> = s.cs.iter().map(|c| m.cs.iter().position(|d| d == c).expect("same weight")).collect();
    for row in &s.rows {
        let mut acc = vec![LaurentPoly::zero(Z); s.len()];
        for (j, a) in row.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ab = a.bar();
            for (k, x) in acc.iter_mut().enumerate() {
                let e = &m.rows[pos[j]][pos[k]];
                if !e.is_zero() {
                    *x = &*x + &(&ab * e);
                }
            }
        }
        if acc != *row {
            return Ok(false);
        }
    }
    Ok(true)
}

fn canonical_jobs(opts: &Options) -> Result<Vec<Job>> {
    let mut jobs: Vec<Job> = Vec::new();
    for ty in types(opts, &["A2", "A3", "B2", "D4", "G2"]) {
        let d = datum(&ty)?;
        let words = Arc::new(two_words(&ty)?);
        let height = height_for(opts, &ty);
        let weights = Arc::new(weights_up_to(d.rank(), height));
        for h in words.iter() {
            let (d, h, weights, cache) = (d.clone(), h.clone(), weights.clone(), opts.cache.clone());
            jobs.push((
                format!("canonical-shape-{ty}-{}", label_word(&d, &h)),
                Box::new(move || {
                    let basis = PbwBasis::get(&d, Z, &h)?;
                    let mut n = 0;
                    for w in weights.iter() {
                        let s = canonical_slice_cached(&basis, w, cache.as_deref())?;
                        if let Err(e) = s.check_shape() {
                            return Ok(Outcome::fail(format!("{w:?}: {e}")));
                        }
                        if !bar_invariant(&basis, w)? {
                            return Ok(Outcome::fail(format!("{w:?}: not bar-invariant")));
                        }
                        n += s.len();
                    }
                    Ok(Outcome::pass().with_detail(format!("{n} elements up to height {height}")))
                }),
            ));
        }
        let (d2, ty2) = (d.clone(), ty.clone());
        jobs.push((
            format!("canonical-independence-{ty}"),
            Box::new(move || {
                let a = PbwBasis::get(&d2, Z, &words[0])?;
                let b = PbwBasis::get(&d2, Z, &words[1])?;
                let (mut n, mut neg) = (0, 0);
                for w in weights.iter() {
                    let m = match compare_slices(&a, &b, w) {
                        Ok(m) => m,
                        Err(e) => return Ok(Outcome::fail(format!("{w:?}: {e}"))),
                    };
                    n += m.len();
                    neg += m.iter().filter(|m| m.sign < 0).count();
                }
                let detail = format!("{n} elements matched, {neg} with sign −1; coordinates in the other PBW basis are Laurent");
                let ok = ty2 == "B2" || neg == 0;
                Ok(Outcome { pass: ok, detail: Some(detail), witness: None })
            }),
        ));
        if ty == "G2" {
            let h = opts.height.unwrap_or(4);
            jobs.push(("canonical-g2-sign-mod3".into(), Box::new(move || g2_sign_mod3(h))));
        }
    }
    Ok(jobs)
}

/// The sign relating `b(c, h)` and `b(c′, h′)` for `G2` is `+1`: both
/// project under `Φ` to `π` of one canonical element of `D4`, which does
/// not depend on the word, so the sign is `≡ 1 mod 3`.
fn g2_sign_mod3(height: u32) -> Result<Outcome> {
    let f = Folding::builtin("D4:G2")?;
    let ws = f.longest_words();
    let ul = [PbwBasis::get(f.ulx(), Z, &ws[0])?, PbwBasis::get(f.ulx(), Z, &ws[1])?];
    let lifted = [f.lift(&ws[0])?, f.lift(&ws[1])?];
    let xb = [PbwBasis::get(f.x(), Z, &lifted[0].word)?, PbwBasis::get(f.x(), Z, &lifted[1].word)?];
    let mut n = 0;
    for w in f.weights_up_to(height) {
        if compare_slices(&xb[0], &xb[1], &f.lift_weight(&w))?.iter().any(|m| m.sign != 1) {
            return Ok(Outcome::fail(format!("D4 at {w:?}: sign −1")));
        }
        let s0 = canonical_slice(&ul[0], &w)?;
        let s1 = canonical_slice(&ul[1], &w)?;
        let im0: Vec<_> = (0..s0.len()).map(|i| f.phi_apply(&ul[0].assemble(&s0.element(i))?, &ws[0])).collect::<Result<_>>()?;
        for m in compare_slices(&ul[0], &ul[1], &w)? {
            let j = s1.index_of(&m.c_other).expect("matched");
            let x = ul[1].assemble(&s1.element(j))?;
            let i = s0.index_of(&m.c).expect("matched");
            let v = f.phi_apply(&x, &ws[0])?;
            let a = RationalFn::constant(m.sign as i64, f.ring());
            if v.scale(&a) != im0[i] || v != im0[i] {
                return Ok(Outcome::fail(format!("{w:?}: sign {} for {:?}", m.sign, m.c)));
            }
            n += 1;
        }
    }
    Ok(Outcome::pass().with_detail(format!("{n} elements, all signs +1 and ≡ 1 mod 3")))
}

fn identity_jobs(list: Vec<Identity>, opts: &Options) -> Result<Vec<Job>> {
    let names = foldings(opts)?;
    let mut ctxs: BTreeMap<String, Arc<Context>> = BTreeMap::new();
    let mut jobs: Vec<Job> = Vec::new();
    for id in list.into_iter().filter(|i| names.iter().any(|n| n == i.folding)) {
        if !ctxs.contains_key(id.folding) {
            ctxs.insert(id.folding.to_string(), Arc::new(Context::new(id.folding)?));
        }
        let ctx = ctxs[id.folding].clone();
        jobs.push((id.id.to_string(), Box::new(move || ctx.check(&id))));
    }
    Ok(jobs)
}

fn lemma_jobs(opts: &Options) -> Result<Vec<Job>> {
    let mut jobs: Vec<Job> = Vec::new();
    for name in foldings(opts)? {
        let f = Arc::new(Folding::builtin(&name)?);
        for ulh in f.longest_words() {
            let f = f.clone();
            let id = format!("lemma-root-vectors-{}-{}", name, label_word(f.ulx(), &ulh));
            jobs.push((
                id,
                Box::new(move || {
                    let rows = lemma113_check(&f, &ulh)?;
                    match rows.iter().find(|r| !r.ok) {
                        Some(r) => Ok(Outcome::fail(format!("k = {}: {} ≠ {}", r.k + 1, r.left, r.right))),
                        None => Ok(Outcome::pass().with_detail(format!("k = 1..{}", rows.len()))),
                    }
                }),
            ));
        }
    }
    Ok(jobs)
}

fn fold_jobs(opts: &Options) -> Result<Vec<Job>> {
    let mut jobs: Vec<Job> = Vec::new();
    for name in foldings(opts)? {
        let f = Arc::new(Folding::builtin(&name)?);
        let height = height_for(opts, &name);
        let weights = Arc::new(f.weights_up_to(height));
        for ulh in folded_words(&f, opts)? {
            let word = label_word(f.ulx(), &ulh);
            let (f1, w1, h1) = (f.clone(), weights.clone(), ulh.clone());
            jobs.push((
                format!("fold-pbw-units-{name}-{word}"),
                Box::new(move || {
                    let ul = PbwBasis::get(f1.ulx(), Z, &h1)?;
                    let mut n = 0;
                    for w in w1.iter() {
                        for c in ul.enumerate_c(w) {
                            n += 1;
                            if !thm114_check(&f1, &c, &h1)? {
                                return Ok(Outcome::fail(format!("Φ(L{c:?}) ≠ E{c:?}")));
                            }
                        }
                    }
                    Ok(Outcome::pass().with_detail(format!("{n} monomials up to height {height}")))
                }),
            ));
            let (f1, w1, h1) = (f.clone(), weights.clone(), ulh.clone());
            jobs.push((
                format!("fold-surjective-{name}-{word}"),
                Box::new(move || {
                    for w in w1.iter() {
                        if !surjectivity_check(&f1, w, &h1)? {
                            return Ok(Outcome::fail(format!("rank deficit at {w:?}")));
                        }
                    }
                    Ok(Outcome::pass().with_detail(format!("{} weights", w1.len())))
                }),
            ));
            let (f1, w1, h1, cache) = (f.clone(), weights.clone(), ulh.clone(), opts.cache.clone());
            jobs.push((
                format!("fold-bijection-{name}-{word}"),
                Box::new(move || {
                    let mut n = 0;
                    for w in w1.iter() {
                        let r = bijection_check(&f1, w, &h1, cache.as_deref())?;
                        if !r.ok() {
                            return Ok(Outcome::fail(format!("{w:?}: sets equal {}, shape {}", r.equal, r.shape)));
                        }
                        n += r.images.len();
                    }
                    Ok(Outcome::pass().with_detail(format!("{n} elements up to height {height}")))
                }),
            ));
        }
        let f1 = f.clone();
        jobs.push((
            format!("fold-phi-serre-{name}"),
            Box::new(move || {
                let h = f1.longest_words()[0].clone();
                let r = f1.ulx().rank();
                for i in 0..r {
                    for j in (0..r).filter(|&j| j != i) {
                        let s = serre_element(f1.ulx(), Z, i, j)?;
                        let v = f1.phi_apply(&s, &h)?;
                        if !v.is_zero() {
                            return Ok(Outcome::fail(format!("Φ(S({i},{j})) ≠ 0")).with_witness(v.to_json()));
                        }
                    }
                }
                Ok(Outcome::pass())
            }),
        ));
    }
    Ok(jobs)
}

fn congruence_jobs(opts: &Options) -> Result<Vec<Job>> {
    let mut jobs: Vec<Job> = Vec::new();
    for name in foldings(opts)? {
        let f = Arc::new(Folding::builtin(&name)?);
        let height = height_for(opts, &name);
        let weights = Arc::new(f.weights_up_to(height));
        for ulh in folded_words(&f, opts)? {
            let word = label_word(f.ulx(), &ulh);
            let (f, weights, cache) = (f.clone(), weights.clone(), opts.cache.clone());
            jobs.push((
                format!("congruence-{name}-{word}"),
                Box::new(move || {
                    let mut n = 0;
                    for w in weights.iter() {
                        let rows = congruence_report(&f, w, &ulh, cache.as_deref())?;
                        if let Some(r) = rows.iter().find(|r| !r.congruent) {
                            return Ok(Outcome::fail(format!("{w:?}: {} ≢ {} mod {}", r.a_ul, r.a_x, f.eps())));
                        }
                        n += rows.len();
                    }
                    Ok(Outcome::pass().with_detail(format!("{n} coefficient pairs up to height {height}")))
                }),
            ));
        }
    }
    Ok(jobs)
}

pub fn jobs(name: &str, opts: &Options) -> Result<Vec<Job>> {
    Ok(match name {
        "serre" => serre_jobs(opts)?,
        "pbw-orth" => pbw_orth_jobs(opts)?,
        "canonical" => canonical_jobs(opts)?,
        "section3" => identity_jobs(identities::section3(), opts)?,
        "section4" => {
            let mut j = identity_jobs(identities::section4(), opts)?;
            j.extend(lemma_jobs(opts)?);
            j
        }
        "fold" => fold_jobs(opts)?,
        "congruence" => congruence_jobs(opts)?,
        "all" => {
            let mut j = Vec::new();
            for s in &SUITES[..SUITES.len() - 1] {
                j.extend(jobs(s, opts)?);
            }
            j
        }
        _ => return Err(Error::Parse(format!("unknown suite {name:?}; expected one of {}", SUITES.join(", ")))),
    })
}

/// Runs a suite on the current rayon pool.
pub fn run_suite(name: &str, opts: &Options) -> Result<SuiteReport> {
    let start = Instant::now();
    let checks = run_jobs(jobs(name, opts)?);
    Ok(SuiteReport { suite: name.to_string(), checks, wall_time: start.elapsed() })
}

/// Human-readable word, e.g. `(2,1,2,1)`.
pub fn word_label(d: &CartanDatum, w: &[usize]) -> String {
    word_string(d, w)
}
