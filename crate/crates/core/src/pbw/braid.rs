//! The braid operators `T_i` on `U_q⁻`, evaluated inside the ambient algebra.
//!
//! Generator images:
//! `T_i(F_j^{(n)}) = Σ_{r+s=−n a_ij} (−1)^r q_i^r F_i^{(r)} F_j^{(n)} F_i^{(s)}` for `j ≠ i`,
//! `T_i(F_i^{(a)}) = (−1)^a q_i^{a(a−1)} K_i^{−a} E_i^{(a)}`.
//! Products are normal ordered as `F-word · K_i^m · E_i^{(e)}`; only the
//! `(m, e) = (0, 0)` part survives in `U_q⁻`, and every other part is checked
//! to vanish.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use parking_lot::RwLock;

use crate::cartan::CartanDatum;
use crate::error::{Error, Result};
use crate::freealg::{binomial, is_zero, FreeElt, Letter, Word};
use crate::qarith::{BaseRing, LaurentPoly, RationalFn};

type Key = (Word, i32, u32);
type State = HashMap<Key, RationalFn>;

fn mono(c: i64, e: i32) -> LaurentPoly {
    LaurentPoly::monomial(c, e, BaseRing::Integers)
}

/// `[K; c; t]` expanded in powers of `K`, with `q` standing for `q_i = q^d`.
fn k_binomial(d: u32, c: i32, t: u32) -> Arc<Vec<(i32, RationalFn)>> {
    static CACHE: OnceLock<RwLock<HashMap<(u32, i32, u32), Arc<Vec<(i32, RationalFn)>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.read().get(&(d, c, t)) {
        return v.clone();
    }
    let d = d as i32;
    let z = BaseRing::Integers;
    // numerator as a map K-exponent -> Laurent polynomial in q
    let mut num: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
    num.insert(0, LaurentPoly::one(z));
    let mut den = LaurentPoly::one(z);
    for s in 1..=t as i32 {
        let mut next: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        for (k, p) in &num {
            let up = p * &mono(1, d * (c - s + 1));
            let down = p * &mono(-1, -d * (c - s + 1));
            let e = next.entry(k + 1).or_insert_with(|| LaurentPoly::zero(z));
            *e = &*e + &up;
            let e = next.entry(k - 1).or_insert_with(|| LaurentPoly::zero(z));
            *e = &*e + &down;
        }
        num = next;
        den = &den * &(&mono(1, d * s) - &mono(1, -d * s));
    }
    let v: Vec<(i32, RationalFn)> = num
        .into_iter()
        .filter(|(_, p)| !p.is_zero())
        .map(|(k, p)| (k, RationalFn::new(p, den.clone()).expect("nonzero")))
        .collect();
    let v = Arc::new(v);
    cache.write().insert((d as u32, c, t), v.clone());
    v
}

fn red(p: &LaurentPoly, ring: BaseRing) -> LaurentPoly {
    match ring {
        BaseRing::Integers => p.clone(),
        BaseRing::ModEps(e) => p.reduce_mod(e as i64).expect("valid modulus"),
    }
}

fn lift(p: &LaurentPoly, ring: BaseRing) -> RationalFn {
    RationalFn::from_laurent(red(p, ring))
}

fn lift_r(p: &RationalFn, ring: BaseRing) -> RationalFn {
    match ring {
        BaseRing::Integers => p.clone(),
        BaseRing::ModEps(e) => p.reduce_mod(e as i64).expect("denominator survives reduction"),
    }
}

fn push(state: &mut State, k: Key, c: RationalFn) {
    if c.is_zero() {
        return;
    }
    match state.get_mut(&k) {
        Some(x) => {
            *x = &*x + &c;
            if x.is_zero() {
                state.remove(&k);
            }
        }
        None => {
            state.insert(k, c);
        }
    }
}

/// Appends `F_k^{(b)}` to an F-word, merging with a trailing `F_k`.
fn append_f(datum: &CartanDatum, w: &[Letter], k: u8, b: u8) -> (Word, Option<LaurentPoly>) {
    let mut out = w.to_vec();
    if b == 0 {
        return (out, None);
    }
    match out.last_mut() {
        Some((j, a)) if *j == k => {
            let m = binomial((*a + b) as u32, *a as u32, datum.d(k as usize));
            *a += b;
            (out, Some(m))
        }
        _ => {
            out.push((k, b));
            (out, None)
        }
    }
}

struct Braid<'a> {
    datum: &'a CartanDatum,
    ring: BaseRing,
    i: usize,
}

impl Braid<'_> {
    fn d(&self) -> i32 {
        self.datum.d(self.i) as i32
    }

    /// `(W, m, e) · F_k^{(b)}`.
    fn mul_f(&self, out: &mut State, key: &Key, c: &RationalFn, k: u8, b: u8) {
        let (w, m, e) = key;
        let (m, e) = (*m, *e);
        if k as usize != self.i || e == 0 {
            // K^m F_k^{(b)} = q^{−m b (α_i, α_k)} F_k^{(b)} K^m; E_i commutes with F_k
            let shift = -m * b as i32 * self.datum.b(self.i, k as usize) as i32;
            let (nw, merge) = append_f(self.datum, w, k, b);
            let mut nc = c.shift(shift);
            if let Some(mm) = merge {
                nc = nc.mul_laurent(&red(&mm, self.ring));
            }
            push(out, (nw, m, e), nc);
            return;
        }
        // E^{(e)} F^{(b)} = Σ_t F^{(b−t)} [K; 2t−e−b; t] E^{(e−t)}
        let d = self.d();
        let b32 = b as u32;
        for t in 0..=e.min(b32) {
            let kb = k_binomial(d as u32, 2 * t as i32 - e as i32 - b32 as i32, t);
            let rest = (b32 - t) as u8;
            let shift = -m * rest as i32 * 2 * d;
            let (nw, merge) = append_f(self.datum, w, k, rest);
            let mut base = c.shift(shift);
            if let Some(mm) = merge {
                base = base.mul_laurent(&red(&mm, self.ring));
            }
            for (r, coeff) in kb.iter() {
                push(out, (nw.clone(), m + r, e - t), &base * &lift_r(coeff, self.ring));
            }
        }
    }

    /// `(W, m, e) · K_i^{−a} E_i^{(a)}` scaled by `(−1)^a q_i^{a(a−1)}`.
    fn mul_ke(&self, out: &mut State, key: &Key, c: &RationalFn, a: u32) {
        let (w, m, e) = key;
        let d = self.d();
        let a_i = a as i32;
        // E^{(e)} K^{−a} = q_i^{2ea} K^{−a} E^{(e)}
        let shift = d * a_i * (a_i - 1) + 2 * d * (*e as i32) * a_i;
        let sign = if a % 2 == 0 { 1 } else { -1 };
        let merge = binomial(*e + a, a, d as u32);
        let nc = c.shift(shift).mul_laurent(&red(&(&merge * &mono(sign, 0)), self.ring));
        push(out, (w.clone(), m - a_i, e + a), nc);
    }
}

/// `T_i(f_j^{(n)})` for `j ≠ i`.
pub fn braid_generator(datum: &Arc<CartanDatum>, ring: BaseRing, i: usize, j: usize, n: u32) -> FreeElt {
    let total = (-(n as i64) * datum.a(i, j)) as u32;
    let d = datum.d(i) as i32;
    let mut out = FreeElt::zero(datum, ring);
    for r in 0..=total {
        let s = total - r;
        let sign = if r % 2 == 0 { 1 } else { -1 };
        let w = vec![(i as u8, r as u8), (j as u8, n as u8), (i as u8, s as u8)];
        let c = lift(&mono(sign, d * r as i32), ring);
        out = out.checked_add(&FreeElt::from_word(datum, ring, w, c)).expect("same datum");
    }
    out
}

/// Applies `T_i` to an element of `U_q⁻` whose image lies in `U_q⁻`.
pub fn apply_braid(i: usize, x: &FreeElt) -> Result<FreeElt> {
    let datum = x.datum().clone();
    let ring = x.ring();
    let br = Braid { datum: &datum, ring, i };
    let mut images: HashMap<(u8, u8), FreeElt> = HashMap::new();
    let mut total: State = HashMap::new();
    for (word, coeff) in x.terms() {
        let mut state: State = HashMap::new();
        state.insert((Vec::new(), 0, 0), coeff.clone());
        for &(j, n) in word {
            let mut next: State = HashMap::new();
            if j as usize == i {
                for (key, c) in &state {
                    br.mul_ke(&mut next, key, c, n as u32);
                }
            } else {
                let img = images
                    .entry((j, n))
                    .or_insert_with(|| braid_generator(&datum, ring, i, j as usize, n as u32));
                for (key, c) in &state {
                    for (v, cv) in img.terms() {
                        // multiply by the F-word v letter by letter
                        let mut partial: State = HashMap::new();
                        partial.insert(key.clone(), c * cv);
                        for &(k, b) in v {
                            let mut nxt: State = HashMap::new();
                            for (pk, pc) in &partial {
                                br.mul_f(&mut nxt, pk, pc, k, b);
                            }
                            partial = nxt;
                        }
                        for (pk, pc) in partial {
                            push(&mut next, pk, pc);
                        }
                    }
                }
            }
            state = next;
        }
        for (k, c) in state {
            push(&mut total, k, c);
        }
    }
    let mut groups: BTreeMap<(i32, u32), FreeElt> = BTreeMap::new();
    for ((w, m, e), c) in total {
        let g = groups.entry((m, e)).or_insert_with(|| FreeElt::zero(&datum, ring));
        *g = g.checked_add(&FreeElt::from_word(&datum, ring, w, c))?;
    }
    let result = groups.remove(&(0, 0)).unwrap_or_else(|| FreeElt::zero(&datum, ring));
    for ((m, e), g) in groups {
        if !is_zero(&g)? {
            return Err(Error::NotInNegativePart(format!(
                "T_{}: K^{m} E^({e}) part {g}",
                datum.label(i)
            )));
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::builtin;
    use crate::qarith::q_factorial;

    const Z: BaseRing = BaseRing::Integers;

    fn datum(name: &str) -> Arc<CartanDatum> {
        Arc::new(builtin(name).unwrap().0)
    }

    fn eq_in_u(a: &FreeElt, b: &FreeElt) -> bool {
        is_zero(&a.checked_sub(b).unwrap()).unwrap()
    }

    #[test]
    fn t2_of_f1() {
        let x = datum("D4");
        let f1 = FreeElt::parse(&x, Z, "f1").unwrap();
        let t = apply_braid(1, &f1).unwrap();
        assert_eq!(t, FreeElt::parse(&x, Z, "f1*f2 - q*f2*f1").unwrap());
    }

    #[test]
    fn t2_t1_f2_is_f1() {
        let x = datum("A3");
        let f2 = FreeElt::parse(&x, Z, "f2").unwrap();
        let t = apply_braid(1, &apply_braid(0, &f2).unwrap()).unwrap();
        assert!(eq_in_u(&t, &FreeElt::parse(&x, Z, "f1").unwrap()));
    }

    #[test]
    fn t2_t2p_f1() {
        let x = datum("A3");
        let f1 = FreeElt::parse(&x, Z, "f1").unwrap();
        let t = apply_braid(1, &apply_braid(2, &f1).unwrap()).unwrap();
        let e = FreeElt::parse(&x, Z, "f1*f2*f2p + q^2*f2*f2p*f1 - q*(f2*f1*f2p + f2p*f1*f2)").unwrap();
        assert!(eq_in_u(&t, &e));
    }

    #[test]
    fn divided_power_images_are_consistent() {
        for name in ["A2", "B2", "G2"] {
            let x = datum(name);
            for i in 0..2 {
                let j = 1 - i;
                let t1 = braid_generator(&x, Z, i, j, 1);
                for n in 2..=3u32 {
                    let tn = braid_generator(&x, Z, i, j, n);
                    let fact = q_factorial(n, x.d(j));
                    assert!(eq_in_u(&t1.pow(n), &tn.scale_laurent(&fact)), "{name} i={i} n={n}");
                }
            }
        }
    }

    #[test]
    fn straightening_matches_iteration() {
        // E^{(2)} F^{(2)} by the closed formula equals (E^{(2)} F) F / [2]
        let x = datum("A2");
        let br = Braid { datum: &x, ring: Z, i: 0 };
        let key: Key = (Vec::new(), 0, 2);
        let mut direct = State::new();
        br.mul_f(&mut direct, &key, &RationalFn::one(Z), 0, 2);
        let mut step = State::new();
        br.mul_f(&mut step, &key, &RationalFn::one(Z), 0, 1);
        let mut two = State::new();
        for (k, c) in &step {
            br.mul_f(&mut two, k, c, 0, 1);
        }
        let q2 = RationalFn::from(q_factorial(2, 1));
        assert_eq!(direct.len(), two.len());
        for (k, c) in &direct {
            assert_eq!(two[k], c * &q2, "{k:?}");
        }
    }
}
