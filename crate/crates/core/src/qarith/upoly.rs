//! Dense univariate polynomial helpers (coefficients low degree first).
//!
//! Only what the rational-function canonicalization needs: trimming,
//! multiplication, exact division and gcd over `Z[q]` and `GF(p)[q]`.

use ibig::IBig;

pub(crate) type Dense = Vec<IBig>;

pub(crate) fn zero() -> IBig {
    IBig::from(0u8)
}

pub(crate) fn trim(p: &mut Dense) {
    while p.last().is_some_and(|c| *c == zero()) {
        p.pop();
    }
}

pub(crate) fn is_zero(p: &[IBig]) -> bool {
    p.iter().all(|c| *c == zero())
}

pub(crate) fn reduce(c: &IBig, modulus: u8) -> IBig {
    let m = IBig::from(modulus);
    let r = c % &m;
    if r < zero() {
        r + m
    } else {
        r
    }
}

pub(crate) fn inv_mod(c: &IBig, modulus: u8) -> IBig {
    let c = reduce(c, modulus);
    // modulus is tiny (2 or 3), brute force is fine
    for k in 1..modulus {
        if reduce(&(&c * IBig::from(k)), modulus) == IBig::from(1u8) {
            return IBig::from(k);
        }
    }
    panic!("{c} is not invertible mod {modulus}");
}

pub(crate) fn mul(a: &[IBig], b: &[IBig], modulus: Option<u8>) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    if let Some(p) = modulus {
        for c in out.iter_mut() {
            *c = reduce(c, p);
        }
    }
    trim(&mut out);
    out
}

/// Exact division `a / b`; panics when the division leaves a remainder.
pub(crate) fn div_exact(a: &[IBig], b: &[IBig], modulus: Option<u8>) -> Dense {
    let (q, r) = match modulus {
        Some(p) => divrem_mod(a, b, p),
        None => divrem_int(a, b).expect("non-integral polynomial quotient"),
    };
    assert!(is_zero(&r), "polynomial division is not exact");
    q
}

fn divrem_int(a: &[IBig], b: &[IBig]) -> Option<(Dense, Dense)> {
    let mut r: Dense = a.to_vec();
    trim(&mut r);
    let mut b: Dense = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "division by zero polynomial");
    let lb = b.last().unwrap().clone();
    if r.len() < b.len() {
        return Some((Vec::new(), r));
    }
    let mut q = vec![zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        if &lr % &lb != zero() {
            return None;
        }
        let c = &lr / &lb;
        let shift = r.len() - b.len();
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &c * y;
        }
        q[shift] = c;
        trim(&mut r);
    }
    trim(&mut q);
    Some((q, r))
}

fn divrem_mod(a: &[IBig], b: &[IBig], p: u8) -> (Dense, Dense) {
    let mut r: Dense = a.iter().map(|c| reduce(c, p)).collect();
    trim(&mut r);
    let mut b: Dense = b.iter().map(|c| reduce(c, p)).collect();
    trim(&mut b);
    assert!(!b.is_empty(), "division by zero polynomial");
    let inv = inv_mod(b.last().unwrap(), p);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let c = reduce(&(r.last().unwrap() * &inv), p);
        let shift = r.len() - b.len();
        for (j, y) in b.iter().enumerate() {
            r[shift + j] = reduce(&(&r[shift + j] - &c * y), p);
        }
        q[shift] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn content(a: &[IBig]) -> IBig {
    let mut g = zero();
    for c in a {
        if *c != zero() {
            g = if g == zero() { c.clone() } else { g.gcd(c) };
        }
    }
    if g < zero() {
        -g
    } else {
        g
    }
}

fn primitive(a: &[IBig]) -> Dense {
    let c = content(a);
    if c == zero() {
        return Vec::new();
    }
    let mut out: Dense = a.iter().map(|x| x / &c).collect();
    trim(&mut out);
    out
}

/// Pseudo-remainder of `a` by `b` over `Z`.
fn prem(a: &[IBig], b: &[IBig]) -> Dense {
    let mut r: Dense = a.to_vec();
    trim(&mut r);
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &lr * y;
        }
        trim(&mut r);
    }
    r
}

/// Greatest common divisor, normalized to positive leading coefficient over
/// `Z` (content included) or monic over `GF(p)`.
pub(crate) fn gcd(a: &[IBig], b: &[IBig], modulus: Option<u8>) -> Dense {
    match modulus {
        Some(p) => {
            let mut x: Dense = a.iter().map(|c| reduce(c, p)).collect();
            let mut y: Dense = b.iter().map(|c| reduce(c, p)).collect();
            trim(&mut x);
            trim(&mut y);
            while !y.is_empty() {
                let (_, r) = divrem_mod(&x, &y, p);
                x = y;
                y = r;
            }
            if x.is_empty() {
                return x;
            }
            let inv = inv_mod(x.last().unwrap(), p);
            x.iter().map(|c| reduce(&(c * &inv), p)).collect()
        }
        None => {
            let mut x: Dense = a.to_vec();
            let mut y: Dense = b.to_vec();
            trim(&mut x);
            trim(&mut y);
            if x.is_empty() {
                return normalize_sign(y);
            }
            if y.is_empty() {
                return normalize_sign(x);
            }
            let cg = content(&x).gcd(&content(&y));
            let mut x = primitive(&x);
            let mut y = primitive(&y);
            if x.len() < y.len() {
                std::mem::swap(&mut x, &mut y);
            }
            while !y.is_empty() {
                let r = prem(&x, &y);
                x = y;
                y = primitive(&r);
            }
            let g: Dense = x.iter().map(|c| c * &cg).collect();
            normalize_sign(g)
        }
    }
}

fn normalize_sign(mut p: Dense) -> Dense {
    trim(&mut p);
    if p.last().is_some_and(|c| *c < zero()) {
        for c in p.iter_mut() {
            *c = -c.clone();
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Dense {
        xs.iter().map(|&x| IBig::from(x)).collect()
    }

    #[test]
    fn gcd_over_integers_keeps_content() {
        // (2 + 2q)(1 - q) and (4 + 4q)
        let a = mul(&v(&[2, 2]), &v(&[1, -1]), None);
        let g = gcd(&a, &v(&[4, 4]), None);
        assert_eq!(g, v(&[2, 2]));
    }

    #[test]
    fn gcd_mod_two() {
        // q^2 + 1 = (q + 1)^2 over GF(2)
        let g = gcd(&v(&[1, 0, 1]), &v(&[1, 1]), Some(2));
        assert_eq!(g, v(&[1, 1]));
    }

    #[test]
    fn exact_division() {
        let a = mul(&v(&[1, 1, 1]), &v(&[-1, 3]), None);
        assert_eq!(div_exact(&a, &v(&[-1, 3]), None), v(&[1, 1, 1]));
    }
}
