use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use qfold::cartan::{builtin, fold, make_automorphism, CartanDatum, DiagramAut, BUILTIN_NAMES};
use qfold::weyl::{lift_word, parse_word, reflect, RootSystem};

fn axioms(x: &CartanDatum) {
    let n = x.rank();
    for i in 0..n {
        assert!(x.b(i, i) > 0 && x.b(i, i) % 2 == 0, "{}", x.name());
        for j in 0..n {
            assert_eq!(x.b(i, j), x.b(j, i));
            if i != j {
                assert_eq!(2 * x.b(i, j) % x.b(i, i), 0);
                assert!(x.a(i, j) <= 0);
            }
        }
    }
    let laced = (0..n).all(|i| x.b(i, i) == 2 && (0..n).all(|j| i == j || matches!(x.b(i, j), 0 | -1)));
    assert_eq!(x.is_simply_laced(), laced);
}

fn pairs() -> Vec<(CartanDatum, DiagramAut)> {
    ["A3", "D4", "A2xA2"]
        .iter()
        .map(|n| {
            let (x, s) = builtin(n).unwrap();
            (x, s.unwrap())
        })
        .collect()
}

#[test]
fn builtins_are_cartan_data() {
    for name in BUILTIN_NAMES {
        axioms(&builtin(name).unwrap().0);
    }
}

#[test]
fn folds_are_cartan_data() {
    for (x, s) in pairs() {
        let ul = fold(&x, &s);
        axioms(&ul.datum);
        assert!(make_automorphism(&ul.datum, &(0..ul.datum.rank()).collect::<Vec<_>>()).unwrap().is_identity());
        for (e, eta) in ul.orbits.iter().enumerate() {
            assert_eq!(ul.datum.b(e, e), 2 * eta.len() as i64);
            assert_eq!(ul.datum.d(e), eta.len() as u32);
            for (f, eta2) in ul.orbits.iter().enumerate() {
                if e != f {
                    let links = eta.iter().flat_map(|&i| eta2.iter().map(move |&j| (i, j))).filter(|&(i, j)| x.b(i, j) != 0).count();
                    assert_eq!(ul.datum.b(e, f), -(links as i64));
                }
            }
        }
        let mut p: Vec<usize> = (0..x.rank()).collect();
        for _ in 0..s.order() {
            p = p.iter().map(|&i| s.apply(i)).collect();
        }
        assert_eq!(p, (0..x.rank()).collect::<Vec<_>>());
    }
}

#[test]
fn folded_types() {
    let (a3, s) = builtin("A3").unwrap();
    assert_eq!(fold(&a3, &s.unwrap()).datum.form_matrix(), builtin("B2").unwrap().0.form_matrix());
    let (d4, s) = builtin("D4").unwrap();
    let g2 = fold(&d4, &s.unwrap()).datum;
    assert_eq!(g2.form_matrix(), &[vec![2, -3], vec![-3, 6]]);
}

#[test]
fn bad_automorphisms_are_rejected() {
    let (a3, _) = builtin("A3").unwrap();
    assert!(make_automorphism(&a3, &[1, 0, 2]).is_err());
    assert!(make_automorphism(&a3, &[0, 0, 1]).is_err());
    let (a2, _) = builtin("A2").unwrap();
    assert!(make_automorphism(&a2, &[1, 0]).is_err());
}

fn check_betas(rs: &RootSystem, words: impl Iterator<Item = Vec<usize>>) -> usize {
    let all: BTreeSet<Vec<i64>> = rs.positive_roots().iter().cloned().collect();
    let mut n = 0;
    for w in words {
        let betas = rs.beta_sequence(&w).unwrap();
        let set: BTreeSet<Vec<i64>> = betas.iter().cloned().collect();
        assert_eq!(betas.len(), set.len());
        assert_eq!(set, all);
        n += 1;
    }
    n
}

#[test]
fn beta_sequences_enumerate_positive_roots() {
    let expect = [("A2", 2, 3), ("B2", 2, 4), ("G2", 2, 6), ("A3", 16, 6)];
    for (name, words, nu) in expect {
        let rs = RootSystem::new(Arc::new(builtin(name).unwrap().0)).unwrap();
        assert_eq!(rs.nu(), nu);
        assert_eq!(check_betas(&rs, rs.reduced_words()), words, "{name}");
    }
    let rs = RootSystem::new(Arc::new(builtin("D4").unwrap().0)).unwrap();
    assert_eq!(rs.nu(), 12);
    assert_eq!(check_betas(&rs, rs.reduced_words().step_by(37).take(40)), 40);
}

#[test]
fn non_reduced_words() {
    let rs = RootSystem::new(Arc::new(builtin("A2").unwrap().0)).unwrap();
    assert!(!rs.is_reduced(&[0, 0]));
    assert!(!rs.is_longest_word(&[0, 1]));
    assert!(rs.beta_sequence(&[0, 1, 1]).is_err());
}

#[test]
fn lifted_words_have_full_length() {
    for (x, s) in pairs() {
        let ul = fold(&x, &s);
        let rs = RootSystem::new(Arc::new(x.clone())).unwrap();
        let ulrs = RootSystem::new(Arc::new(ul.datum.clone())).unwrap();
        for ulh in ulrs.reduced_words() {
            let lifted = lift_word(&ul, &ulrs, &rs, &ulh).unwrap();
            assert_eq!(lifted.word.len(), rs.nu());
            assert!(rs.is_longest_word(&lifted.word));
            let sizes: usize = ulh.iter().map(|&e| ul.orbit_size(e)).sum();
            assert_eq!(sizes, rs.nu());
            assert_eq!(lifted.blocks.last().unwrap().end, rs.nu());
        }
    }
}

#[test]
fn word_parsing() {
    let (d4, _) = builtin("D4").unwrap();
    assert_eq!(parse_word(&d4, "2,2p,2pp,1").unwrap(), vec![1, 2, 3, 0]);
    assert!(parse_word(&d4, "2,5").is_err());
}

proptest! {
    #[test]
    fn reflections_preserve_the_form(
        name in prop::sample::select(BUILTIN_NAMES.to_vec()),
        seed in prop::collection::vec(-4i64..=4, 8),
        i in 0usize..4,
    ) {
        let x = builtin(name).unwrap().0;
        let n = x.rank();
        let i = i % n;
        let (l, m) = (&seed[..n], &seed[4..4 + n]);
        let (sl, sm) = (reflect(&x, i, l), reflect(&x, i, m));
        prop_assert_eq!(x.pairing(&sl, &sm), x.pairing(l, m));
        prop_assert_eq!(reflect(&x, i, &sl), l.to_vec());
    }
}
