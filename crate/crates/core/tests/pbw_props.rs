use std::sync::Arc;

use proptest::prelude::*;

use qfold::cartan::{builtin, fold, CartanDatum};
use qfold::freealg::{form_value, is_zero, FreeElt};
use qfold::pbw::{apply_braid, block_monomial, braid_generator, sigma_exponents, PbwBasis};
use qfold::qarith::BaseRing;
use qfold::weyl::{lift_word, RootSystem};

const Z: BaseRing = BaseRing::Integers;

fn datum(name: &str) -> Arc<CartanDatum> {
    Arc::new(builtin(name).unwrap().0)
}

/// Equality in `U_q⁻`, i.e. modulo the radical of the form.
fn same(a: &FreeElt, b: &FreeElt) -> bool {
    is_zero(&a.checked_sub(b).unwrap()).unwrap()
}

fn weights(rank: usize, height: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out.into_iter().flat_map(|w: Vec<u32>| (0..=height).map(move |k| [w.clone(), vec![k]].concat())).collect();
    }
    out.retain(|w| (1..=height).contains(&w.iter().sum()));
    out
}

fn apply_all(word: &[usize], x: &FreeElt) -> Option<FreeElt> {
    word.iter().rev().try_fold(x.clone(), |acc, &i| apply_braid(i, &acc).ok())
}

#[test]
fn generator_images() {
    let a2 = datum("A2");
    let t = apply_braid(1, &FreeElt::generator(&a2, Z, 0, 1)).unwrap();
    assert!(same(&t, &FreeElt::parse(&a2, Z, "f1 f2 - q f2 f1").unwrap()));
    for name in ["B2", "G2", "A3"] {
        let x = datum(name);
        for i in 0..x.rank() {
            for j in (0..x.rank()).filter(|&j| j != i) {
                for n in 1..=2 {
                    let direct = apply_braid(i, &FreeElt::generator(&x, Z, j, n)).unwrap();
                    assert!(same(&direct, &braid_generator(&x, Z, i, j, n)), "{name} T_{i}(f_{j}^({n}))");
                }
            }
        }
    }
}

#[test]
fn braid_relations() {
    let mut tested = 0;
    for name in ["A2", "A3", "D4", "B2"] {
        let x = datum(name);
        for i in 0..x.rank() {
            for j in 0..x.rank() {
                let m = match x.a(i, j) * x.a(j, i) {
                    1 => 3,
                    2 => 4,
                    _ => continue,
                };
                let left: Vec<usize> = (0..m).map(|r| if r % 2 == 0 { i } else { j }).collect();
                let right: Vec<usize> = (0..m).map(|r| if r % 2 == 0 { j } else { i }).collect();
                for k in 0..x.rank() {
                    for n in 1..=2 {
                        let f = FreeElt::generator(&x, Z, k, n);
                        if let (Some(a), Some(b)) = (apply_all(&left, &f), apply_all(&right, &f)) {
                            assert!(same(&a, &b), "{name} i={i} j={j} k={k}");
                            tested += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(tested > 0);
}

#[test]
fn pbw_orthogonality() {
    for (name, height) in [("A2", 3), ("B2", 3), ("A3", 3), ("G2", 2)] {
        let x = datum(name);
        let rs = RootSystem::new(x.clone()).unwrap();
        for h in rs.reduced_words().take(2) {
            let basis = PbwBasis::get(&x, Z, &h).unwrap();
            for w in weights(x.rank(), height) {
                let cs = basis.enumerate_c(&w);
                let ls: Vec<FreeElt> = cs.iter().map(|c| basis.monomial(c).unwrap()).collect();
                for (a, la) in ls.iter().enumerate() {
                    for (b, lb) in ls.iter().enumerate() {
                        let v = form_value(la, lb).unwrap();
                        assert_eq!(v.is_zero(), a != b, "{name} {h:?} {:?} {:?}", cs[a], cs[b]);
                    }
                }
            }
        }
    }
}

#[test]
fn cross_word_expansions_are_integral() {
    for (name, height) in [("A2", 4), ("B2", 4), ("A3", 3)] {
        let x = datum(name);
        let rs = RootSystem::new(x.clone()).unwrap();
        let words: Vec<Vec<usize>> = rs.reduced_words().collect();
        let (h, h2) = (&words[0], words.last().unwrap());
        let (b, b2) = (PbwBasis::get(&x, Z, h).unwrap(), PbwBasis::get(&x, Z, h2).unwrap());
        for w in weights(x.rank(), height) {
            for c in b2.enumerate_c(&w) {
                let e = b.expand(&b2.monomial(&c).unwrap()).unwrap();
                assert!(e.is_laurent(), "{name} {c:?}: {e:?}");
                assert!(same(&b.assemble(&e).unwrap(), &b2.monomial(&c).unwrap()));
            }
        }
    }
}

fn lifted(name: &str, pick: usize) -> (Arc<CartanDatum>, qfold::cartan::DiagramAut, qfold::weyl::LiftedWord) {
    let (x, s) = builtin(name).unwrap();
    let s = s.unwrap();
    let ul = fold(&x, &s);
    let ulrs = RootSystem::new(Arc::new(ul.datum.clone())).unwrap();
    let x = Arc::new(x);
    let rs = RootSystem::new(x.clone()).unwrap();
    let ulh = ulrs.reduced_words().nth(pick).unwrap();
    let l = lift_word(&ul, &ulrs, &rs, &ulh).unwrap();
    (x, s, l)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sigma_permutes_pbw_monomials(name in prop::sample::select(vec!["A3", "A2xA2", "D4"]), pick in 0usize..2, c in prop::collection::vec(prop::bool::weighted(0.2).prop_map(u32::from), 12)) {
        let (x, s, l) = lifted(name, pick);
        let c = &c[..l.word.len()];
        prop_assume!(c.iter().sum::<u32>() <= 3);
        let basis = PbwBasis::get(&x, Z, &l.word).unwrap();
        let image = basis.monomial(c).unwrap().sigma(&s);
        let c2 = sigma_exponents(&s, &l.word, &l.blocks, c);
        prop_assert!(same(&image, &basis.monomial(&c2).unwrap()));
    }

    #[test]
    fn block_product_matches_pbw_monomial(name in prop::sample::select(vec!["A3", "A2xA2", "D4"]), pick in 0usize..2, c in prop::collection::vec(prop::bool::weighted(0.2).prop_map(u32::from), 12)) {
        let (x, _, l) = lifted(name, pick);
        let c = &c[..l.word.len()];
        prop_assume!(c.iter().sum::<u32>() <= 3);
        let basis = PbwBasis::get(&x, Z, &l.word).unwrap();
        prop_assert!(same(&block_monomial(&x, Z, &l, c).unwrap(), &basis.monomial(c).unwrap()));
    }
}
