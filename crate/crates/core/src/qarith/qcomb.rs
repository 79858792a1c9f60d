//! Quantum integers, factorials and Gaussian binomials in `q^d`.

use super::laurent::{BaseRing, LaurentPoly};
use crate::error::{Error, Result};

/// `[n]_{q^d} = (q^{dn} - q^{-dn}) / (q^d - q^{-d})`.
pub fn q_integer(n: i64, d: u32) -> LaurentPoly {
    assert!(d >= 1, "q_integer needs d >= 1");
    let d = d as i32;
    let m = n.unsigned_abs() as i32;
    let terms = (0..m).map(|k| (d * (m - 1 - 2 * k), ibig::IBig::from(1u8)));
    let p = LaurentPoly::from_terms(BaseRing::Integers, terms);
    if n < 0 {
        -p
    } else {
        p
    }
}

/// `[n]!_{q^d}`; `[0]! = 1`.
pub fn q_factorial(n: u32, d: u32) -> LaurentPoly {
    (1..=n).fold(LaurentPoly::one(BaseRing::Integers), |acc, k| &acc * &q_integer(k as i64, d))
}

/// Gaussian binomial `[n choose k]_{q^d}`, computed by the q-Pascal rule so
/// that no division ever happens.
pub fn q_binomial(n: i64, k: i64, d: u32) -> Result<LaurentPoly> {
    if k < 0 || k > n {
        return Err(Error::BinomialRange { n, k });
    }
    Ok(binomial_table(n as usize, d)[k as usize].clone())
}

/// Row `n` of the q-Pascal triangle:
/// `[n choose k] = q^{-d(n-k)}[n-1 choose k-1] + q^{dk}[n-1 choose k]`.
fn binomial_table(n: usize, d: u32) -> Vec<LaurentPoly> {
    let d = d as i32;
    let z = BaseRing::Integers;
    let mut row = vec![LaurentPoly::one(z)];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let mut v = LaurentPoly::zero(z);
            if k >= 1 {
                v = &v + &row[k - 1].shift(-d * (m - k) as i32);
            }
            if k < m {
                v = &v + &row[k].shift(d * k as i32);
            }
            next.push(v);
        }
        row = next;
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, BaseRing::Integers).unwrap()
    }

    #[test]
    fn small_q_integers() {
        assert_eq!(q_integer(3, 1), p("q^2 + 1 + q^-2"));
        assert_eq!(q_integer(4, 1), p("q^3 + q + q^-1 + q^-3"));
        assert_eq!(q_integer(1, 5), p("1"));
        assert_eq!(q_integer(-2, 1), -q_integer(2, 1));
        assert!(q_integer(0, 2).is_zero());
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(q_binomial(4, 2, 1).unwrap(), p("q^4 + q^2 + 2 + q^-2 + q^-4"));
        assert_eq!(q_binomial(7, 0, 2).unwrap(), p("1"));
        assert_eq!(q_binomial(2, 1, 3).unwrap(), q_integer(2, 3));
        assert_eq!(q_binomial(2, 1, 3).unwrap(), p("q^3 + q^-3"));
        assert!(q_binomial(2, 3, 1).is_err());
    }

    #[test]
    fn binomial_times_factorials_is_factorial() {
        for n in 0..7u32 {
            for k in 0..=n {
                for d in 1..=3 {
                    let lhs = &(&q_binomial(n as i64, k as i64, d).unwrap() * &q_factorial(k, d))
                        * &q_factorial(n - k, d);
                    assert_eq!(lhs, q_factorial(n, d), "n={n} k={k} d={d}");
                }
            }
        }
    }
}
