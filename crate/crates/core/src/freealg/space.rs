use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use parking_lot::RwLock;

use super::{Letter, Weight};

/// All plain words (sequences of vertices) of a given weight, in
/// lexicographic order, with a reverse index.
#[derive(Debug)]
pub struct WordSpace {
    weight: Weight,
    words: Vec<Vec<u8>>,
    index: HashMap<u128, u32>,
}

impl PartialEq for WordSpace {
    fn eq(&self, other: &Self) -> bool {
        self.weight == other.weight
    }
}

impl Eq for WordSpace {}

pub(crate) fn key(word: &[u8]) -> u128 {
    word.iter().fold(0u128, |k, &l| (k << 4) | l as u128)
}

impl WordSpace {
    /// Shared instance for `weight`.
    pub fn get(weight: &[u32]) -> Arc<WordSpace> {
        static CACHE: OnceLock<RwLock<HashMap<Weight, Arc<WordSpace>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(s) = cache.read().get(weight) {
            return s.clone();
        }
        let s = Arc::new(Self::build(weight));
        cache.write().entry(weight.to_vec()).or_insert(s).clone()
    }

    fn build(weight: &[u32]) -> Self {
        assert!(weight.len() <= 16, "rank above 16 is not supported");
        let mut cur: Vec<u8> = Vec::new();
        for (i, &m) in weight.iter().enumerate() {
            cur.extend(std::iter::repeat(i as u8).take(m as usize));
        }
        assert!(cur.len() <= 32, "words longer than 32 letters are not supported");
        let mut words = vec![cur.clone()];
        while next_permutation(&mut cur) {
            words.push(cur.clone());
        }
        let index = words.iter().enumerate().map(|(k, w)| (key(w), k as u32)).collect();
        WordSpace { weight: weight.to_vec(), words, index }
    }

    pub fn weight(&self) -> &[u32] {
        &self.weight
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn height(&self) -> usize {
        self.weight.iter().sum::<u32>() as usize
    }

    pub fn words(&self) -> &[Vec<u8>] {
        &self.words
    }

    pub fn index_of(&self, word: &[u8]) -> Option<usize> {
        if word.len() != self.height() {
            return None;
        }
        self.index.get(&key(word)).map(|&k| k as usize)
    }

    pub(crate) fn index_of_key(&self, k: u128) -> usize {
        self.index[&k] as usize
    }
}

fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Expands divided powers into repeated letters.
pub fn plain_word(w: &[Letter]) -> Vec<u8> {
    let mut out = Vec::new();
    for &(i, a) in w {
        out.extend(std::iter::repeat(i).take(a as usize));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(WordSpace::get(&[1, 1]).len(), 2);
        assert_eq!(WordSpace::get(&[2, 1, 1]).len(), 12);
        assert_eq!(WordSpace::get(&[0, 0]).len(), 1);
        let s = WordSpace::get(&[1, 2]);
        assert_eq!(s.words(), &[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        assert_eq!(s.index_of(&[1, 0, 1]), Some(1));
        assert_eq!(s.index_of(&[0, 0, 1]), None);
    }
}
