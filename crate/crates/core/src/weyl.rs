//! Weyl groups acting on finite root systems: reducedness, the longest
//! element, β-sequences and lifting reduced words from a folded datum.

use std::collections::HashMap;
use std::ops::Range;
use std::sync::Arc;

use crate::cartan::{CartanDatum, DiagramAut, FoldedDatum};
use crate::error::{Error, Result};

/// A root as coordinates over the simple roots.
pub type RootVector = Vec<i64>;

const MAX_ROOTS: usize = 4096;

/// The root system `Δ` of a finite-type datum, with every simple reflection
/// stored as a permutation of `Δ`.
#[derive(Clone, Debug)]
pub struct RootSystem {
    datum: Arc<CartanDatum>,
    roots: Vec<RootVector>,
    index: HashMap<RootVector, usize>,
    refl: Vec<Vec<usize>>,
    npos: usize,
}

/// `s_i(λ) = λ − (2(λ, α_i)/(α_i, α_i)) α_i`.
pub fn reflect(datum: &CartanDatum, i: usize, v: &[i64]) -> RootVector {
    let mut e = vec![0; datum.rank()];
    e[i] = 1;
    let c = 2 * datum.pairing(v, &e) / datum.b(i, i);
    let mut out = v.to_vec();
    out[i] -= c;
    out
}

impl RootSystem {
    pub fn new(datum: Arc<CartanDatum>) -> Result<Self> {
        let n = datum.rank();
        let mut pos: Vec<RootVector> = Vec::new();
        let mut index = HashMap::new();
        let mut queue: Vec<RootVector> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect();
        while let Some(r) = queue.pop() {
            if index.contains_key(&r) {
                continue;
            }
            index.insert(r.clone(), pos.len());
            pos.push(r.clone());
            if pos.len() > MAX_ROOTS {
                return Err(Error::NotFiniteType);
            }
            for i in 0..n {
                let s = reflect(&datum, i, &r);
                if s.iter().all(|&x| x >= 0) && s.iter().any(|&x| x > 0) && !index.contains_key(&s) {
                    queue.push(s);
                }
            }
        }
        // order positive roots by height, then lexicographically
        pos.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let npos = pos.len();
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        let index: HashMap<RootVector, usize> =
            roots.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();
        let mut refl = Vec::with_capacity(n);
        for i in 0..n {
            let mut p = Vec::with_capacity(roots.len());
            for r in &roots {
                let s = reflect(&datum, i, r);
                match index.get(&s) {
                    Some(&k) => p.push(k),
                    None => return Err(Error::NotFiniteType),
                }
            }
            refl.push(p);
        }
        Ok(RootSystem { datum, roots, index, refl, npos })
    }

    pub fn datum(&self) -> &Arc<CartanDatum> {
        &self.datum
    }

    /// Positive roots ordered by height.
    pub fn positive_roots(&self) -> &[RootVector] {
        &self.roots[..self.npos]
    }

    /// `ν = |Δ⁺|`.
    pub fn nu(&self) -> usize {
        self.npos
    }

    pub fn root_index(&self, r: &[i64]) -> Option<usize> {
        self.index.get(r).copied()
    }

    fn simple(&self, i: usize) -> usize {
        let mut e = vec![0; self.datum.rank()];
        e[i] = 1;
        self.index[&e]
    }

    fn is_positive(&self, k: usize) -> bool {
        k < self.npos
    }

    fn check_letters(&self, word: &[usize]) -> Result<()> {
        match word.iter().find(|&&i| i >= self.datum.rank()) {
            Some(i) => Err(Error::UnknownLabel(i.to_string())),
            None => Ok(()),
        }
    }

    /// The β-sequence `β_k = s_{i_1} ⋯ s_{i_{k−1}}(α_{i_k})`, or `None` if the
    /// word is not reduced.
    fn betas(&self, word: &[usize]) -> Option<Vec<usize>> {
        // w as a permutation of Δ; w ← w ∘ s_i after each letter
        let mut w: Vec<usize> = (0..self.roots.len()).collect();
        let mut out = Vec::with_capacity(word.len());
        for &i in word {
            let b = w[self.simple(i)];
            if !self.is_positive(b) {
                return None;
            }
            out.push(b);
            w = self.refl[i].iter().map(|&k| w[k]).collect();
        }
        Some(out)
    }

    pub fn is_reduced(&self, word: &[usize]) -> bool {
        self.check_letters(word).is_ok() && self.betas(word).is_some()
    }

    /// Length of the product of `word` in `W`.
    pub fn length(&self, word: &[usize]) -> usize {
        let mut w: Vec<usize> = (0..self.roots.len()).collect();
        for &i in word {
            w = self.refl[i].iter().map(|&k| w[k]).collect();
        }
        (0..self.npos).filter(|&k| !self.is_positive(w[k])).count()
    }

    pub fn beta_sequence(&self, word: &[usize]) -> Result<Vec<RootVector>> {
        self.check_letters(word)?;
        let b = self.betas(word).ok_or_else(|| Error::NotReduced(self.word_string(word)))?;
        Ok(b.into_iter().map(|k| self.roots[k].clone()).collect())
    }

    /// A reduced word for `w₀` (greedy, smallest letter first).
    pub fn longest_element(&self) -> (usize, Vec<usize>) {
        let mut w: Vec<usize> = (0..self.roots.len()).collect();
        let mut word = Vec::with_capacity(self.npos);
        'outer: while word.len() < self.npos {
            for i in 0..self.datum.rank() {
                if self.is_positive(w[self.simple(i)]) {
                    word.push(i);
                    w = self.refl[i].iter().map(|&k| w[k]).collect();
                    continue 'outer;
                }
            }
            break;
        }
        (self.npos, word)
    }

    pub fn is_longest_word(&self, word: &[usize]) -> bool {
        word.len() == self.npos && self.is_reduced(word)
    }

    /// All reduced words for `w₀`, depth-first in lexicographic order.
    pub fn reduced_words(&self) -> ReducedWords<'_> {
        let id: Vec<usize> = (0..self.roots.len()).collect();
        ReducedWords { rs: self, stack: vec![(Vec::new(), id, 0)] }
    }

    /// Additive notation: `α₁+α₂+α₂′+α₂″ ↦ "122′2″"`.
    pub fn root_name(&self, r: &[i64]) -> String {
        root_name(&self.datum, r)
    }

    pub fn word_string(&self, word: &[usize]) -> String {
        word_string(&self.datum, word)
    }
}

pub fn root_name(datum: &CartanDatum, r: &[i64]) -> String {
    let mut s = String::new();
    for (i, &c) in r.iter().enumerate() {
        for _ in 0..c.max(0) {
            s.push_str(datum.label(i));
        }
    }
    s
}

pub fn word_string(datum: &CartanDatum, word: &[usize]) -> String {
    let parts: Vec<&str> = word.iter().map(|&i| datum.label(i)).collect();
    format!("({})", parts.join(","))
}

/// Parses a comma-separated word of labels such as `2,2p,2pp,1`.
pub fn parse_word(datum: &CartanDatum, s: &str) -> Result<Vec<usize>> {
    s.trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| datum.index_of(t))
        .collect()
}

/// Iterator over reduced words of `w₀`.
pub struct ReducedWords<'a> {
    rs: &'a RootSystem,
    stack: Vec<(Vec<usize>, Vec<usize>, usize)>,
}

impl Iterator for ReducedWords<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let rs = self.rs;
        while let Some((word, w, next)) = self.stack.pop() {
            if word.len() == rs.npos {
                return Some(word);
            }
            let n = rs.datum.rank();
            let mut i = next;
            while i < n && !rs.is_positive(w[rs.simple(i)]) {
                i += 1;
            }
            if i >= n {
                continue;
            }
            let child_w: Vec<usize> = rs.refl[i].iter().map(|&k| w[k]).collect();
            let mut child = word.clone();
            child.push(i);
            self.stack.push((word, w, i + 1));
            self.stack.push((child, child_w, 0));
        }
        None
    }
}

/// A lifted word `h` together with the block intervals `I_k` of (ulh)_k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedWord {
    pub word: Vec<usize>,
    pub blocks: Vec<Range<usize>>,
}

/// Replaces each letter `η` of a reduced word over `ulX` by the product of
/// `s_i` over `i ∈ η` (members in label order).
pub fn lift_word(
    folded: &FoldedDatum,
    folded_roots: &RootSystem,
    roots: &RootSystem,
    ulh: &[usize],
) -> Result<LiftedWord> {
    if !folded_roots.is_reduced(ulh) {
        return Err(Error::NotReduced(folded_roots.word_string(ulh)));
    }
    let mut word = Vec::new();
    let mut blocks = Vec::with_capacity(ulh.len());
    for &eta in ulh {
        let start = word.len();
        word.extend_from_slice(&folded.orbits[eta]);
        blocks.push(start..word.len());
    }
    if !roots.is_reduced(&word) {
        return Err(Error::NotReduced(roots.word_string(&word)));
    }
    Ok(LiftedWord { word, blocks })
}

pub fn sigma_on_word(aut: &DiagramAut, word: &[usize]) -> Vec<usize> {
    word.iter().map(|&i| aut.apply(i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{builtin, fold, make_automorphism, CartanDatum};

    fn rs(name: &str) -> RootSystem {
        RootSystem::new(Arc::new(builtin(name).unwrap().0)).unwrap()
    }

    #[test]
    fn longest_lengths() {
        assert_eq!(rs("A2").longest_element().0, 3);
        assert_eq!(rs("D4").longest_element().0, 12);
        assert_eq!(rs("G2").longest_element().0, 6);
        for name in crate::cartan::BUILTIN_NAMES {
            let r = rs(name);
            let (nu, w) = r.longest_element();
            assert!(r.is_longest_word(&w));
            assert_eq!(r.length(&w), nu);
        }
    }

    #[test]
    fn affine_is_rejected() {
        let x = CartanDatum::new(&["0", "1"], vec![vec![2, -2], vec![-2, 2]]).unwrap();
        assert!(matches!(RootSystem::new(Arc::new(x)), Err(Error::NotFiniteType)));
    }

    #[test]
    fn reducedness() {
        let a2 = rs("A2");
        assert!(a2.is_reduced(&[0, 1, 0]));
        assert!(!a2.is_reduced(&[0, 0]));
        let d4 = rs("D4");
        let h = parse_word(d4.datum(), "2,2p,2pp,1,2,2p,2pp,1,2,2p,2pp,1").unwrap();
        assert!(d4.is_longest_word(&h));
    }

    #[test]
    fn beta_sequences() {
        let a2 = rs("A2");
        assert_eq!(a2.beta_sequence(&[0, 1, 0]).unwrap(), vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
        let d4 = rs("D4");
        let h = parse_word(d4.datum(), "2,2p,2pp,1,2,2p,2pp,1,2,2p,2pp,1").unwrap();
        let names: Vec<String> =
            d4.beta_sequence(&h).unwrap().iter().map(|r| d4.root_name(r)).collect();
        assert_eq!(
            names,
            ["2", "2′", "2″", "122′2″", "12′2″", "122″", "122′", "1122′2″", "12", "12′", "12″", "1"]
        );
        let a3 = rs("A3");
        let h = parse_word(a3.datum(), "2,2p,1,2,2p,1").unwrap();
        let names: Vec<String> =
            a3.beta_sequence(&h).unwrap().iter().map(|r| a3.root_name(r)).collect();
        assert_eq!(names, ["2", "2′", "122′", "12′", "12", "1"]);
        assert!(a2.beta_sequence(&[0, 0]).is_err());
    }

    #[test]
    fn reduced_word_counts() {
        assert_eq!(rs("A2").reduced_words().count(), 2);
        assert_eq!(rs("B2").reduced_words().count(), 2);
        assert_eq!(rs("G2").reduced_words().count(), 2);
        assert_eq!(rs("A3").reduced_words().count(), 16);
        for name in ["A2", "B2", "A3", "G2"] {
            let r = rs(name);
            for w in r.reduced_words() {
                let mut b = r.beta_sequence(&w).unwrap();
                b.sort();
                let mut all = r.positive_roots().to_vec();
                all.sort();
                assert_eq!(b, all);
            }
        }
        let d4 = rs("D4");
        for w in d4.reduced_words().take(20) {
            assert!(d4.is_longest_word(&w));
        }
    }

    #[test]
    fn lifting() {
        for (src, ulh, expected) in
            [("A3", "2,1,2,1", "2,2p,1,2,2p,1"), ("D4", "2,1,2,1,2,1", "2,2p,2pp,1,2,2p,2pp,1,2,2p,2pp,1")]
        {
            let (x, s) = builtin(src).unwrap();
            let s = s.unwrap();
            let f = fold(&x, &s);
            let xr = RootSystem::new(Arc::new(x.clone())).unwrap();
            let fr = RootSystem::new(Arc::new(f.datum.clone())).unwrap();
            let ul = parse_word(&f.datum, ulh).unwrap();
            let lifted = lift_word(&f, &fr, &xr, &ul).unwrap();
            assert_eq!(lifted.word, parse_word(&x, expected).unwrap());
            assert_eq!(lifted.word.len(), xr.nu());
            // σ permutes letters inside each block
            let sw = sigma_on_word(&s, &lifted.word);
            for b in &lifted.blocks {
                let mut u = sw[b.clone()].to_vec();
                let mut v = lifted.word[b.clone()].to_vec();
                u.sort();
                v.sort();
                assert_eq!(u, v);
            }
            assert!(xr.is_longest_word(&sw));
        }
    }

    #[test]
    fn identity_fold_lifts_trivially() {
        let x = builtin("A2").unwrap().0;
        let id = crate::cartan::DiagramAut::identity(&x);
        let f = fold(&x, &id);
        let xr = RootSystem::new(Arc::new(x)).unwrap();
        let fr = RootSystem::new(Arc::new(f.datum.clone())).unwrap();
        assert_eq!(lift_word(&f, &fr, &xr, &[0, 1, 0]).unwrap().word, vec![0, 1, 0]);
    }

    #[test]
    fn sigma_examples() {
        let labels = ["1", "2", "3"];
        let form = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        let a3 = CartanDatum::new(&labels, form).unwrap();
        let s = make_automorphism(&a3, &[2, 1, 0]).unwrap();
        assert_eq!(sigma_on_word(&s, &[0, 1]), vec![2, 1]);
        let (d4, s4) = builtin("D4").unwrap();
        let w = parse_word(&d4, "2,1,2p").unwrap();
        assert_eq!(sigma_on_word(&s4.unwrap(), &w), parse_word(&d4, "2p,1,2pp").unwrap());
    }

    #[test]
    fn reflections_preserve_form() {
        let r = rs("G2");
        let x = r.datum().clone();
        for a in r.positive_roots() {
            for b in r.positive_roots() {
                for i in 0..x.rank() {
                    assert_eq!(x.pairing(&reflect(&x, i, a), &reflect(&x, i, b)), x.pairing(a, b));
                }
            }
        }
    }
}
