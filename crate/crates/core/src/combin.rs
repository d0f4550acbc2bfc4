//! Exact combinatorics over arbitrary-precision integers.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Binomial coefficient with the zero convention: `binomial(n, k) = 0` whenever
/// `k < 0`, `k > n` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `binomial` for callers working in unsigned sizes.
pub fn binom(n: usize, k: usize) -> BigUint {
    binomial(n as i64, k as i64)
}

/// Volume of a Hamming ball of radius `t` in `F^n`: `sum_{i<=t} C(n,i)`.
pub fn ball_volume(n: usize, t: usize) -> Result<BigUint> {
    if t > n {
        return Err(Error::param(format!("ball radius {t} exceeds length {n}")));
    }
    Ok(ball_volume_clamped(n as i64, t as i64))
}

/// `V(n, t)` with `t` clamped into `[-1, n]`; a negative radius gives 0.
pub fn ball_volume_clamped(n: i64, t: i64) -> BigUint {
    if n < 0 || t < 0 {
        return BigUint::zero();
    }
    let t = t.min(n) as u64;
    let n = n as u64;
    let mut term = BigUint::one();
    let mut sum = BigUint::one();
    for i in 0..t {
        term *= n - i;
        term /= i + 1;
        sum += &term;
    }
    sum
}

/// Natural log of `C(n, k)` in floating point, `-inf` outside the support.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    (0..k).map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln()).sum()
}

/// `num / den` as `f64`, keeping about 64 significant bits before rounding.
pub fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    assert!(!den.is_zero(), "division by zero");
    if num.is_zero() {
        return 0.0;
    }
    let shift = den.bits() as i64 - num.bits() as i64 + 64;
    let q = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let q = q.to_f64().unwrap_or(f64::INFINITY);
    q * 2f64.powi(-(shift.clamp(-1_000_000, 1_000_000) as i32))
}

/// Signed variant of [`ratio_to_f64`].
pub fn signed_ratio_to_f64(num: &BigInt, den: &BigUint) -> f64 {
    let mag = ratio_to_f64(num.magnitude(), den);
    if num.sign() == num_bigint::Sign::Minus {
        -mag
    } else {
        mag
    }
}

/// Iterator over the `k`-subsets of `{0, .., n-1}` in lexicographic order.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Iterator over the `k`-subsets of `{0, .., n-1}` in colexicographic order
/// (ordered by largest element, then the next largest, ...).
#[derive(Debug, Clone)]
pub struct ColexCombinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl ColexCombinations {
    pub fn new(n: usize, k: usize) -> Self {
        ColexCombinations { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for ColexCombinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        // advance the lowest position that can move without colliding
        let mut i = 0;
        loop {
            if i == k {
                self.done = true;
                break;
            }
            let limit = if i + 1 < k { self.idx[i + 1] } else { self.n };
            if self.idx[i] + 1 < limit {
                self.idx[i] += 1;
                for j in 0..i {
                    self.idx[j] = j;
                }
                break;
            }
            i += 1;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(4, -1), BigUint::zero());
        assert_eq!(binomial(4, 6), BigUint::zero());
        assert_eq!(binomial(-3, 1), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
    }

    #[test]
    fn ball_volume_examples() {
        assert_eq!(ball_volume(6, 1).unwrap(), BigUint::from(7u32));
        assert_eq!(ball_volume(27, 4).unwrap(), BigUint::from(20854u32));
        for n in 1..20 {
            assert_eq!(ball_volume(n, n).unwrap(), BigUint::one() << n);
        }
        assert!(ball_volume(3, 4).is_err());
    }

    #[test]
    fn ball_volume_large_n_is_exact() {
        // V(n, n) = 2^n even at n = 10^4
        let v = ball_volume(10_000, 10_000).unwrap();
        assert_eq!(v, BigUint::one() << 10_000u32);
        let half = ball_volume(10_000, 4_999).unwrap();
        // symmetry: 2 * V(n, n/2 - 1) + C(n, n/2) = 2^n
        assert_eq!(half * 2u32 + binom(10_000, 5_000), BigUint::one() << 10_000u32);
    }

    #[test]
    fn ratio_conversion() {
        let r = ratio_to_f64(&BigUint::from(1u32), &BigUint::from(3u32));
        assert!((r - 1.0 / 3.0).abs() < 1e-16);
        let big = BigUint::one() << 3000u32;
        let r = ratio_to_f64(&(&big / 7u32), &big);
        assert!((r - 1.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn combination_orders() {
        let lex: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(lex, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        let colex: Vec<_> = ColexCombinations::new(4, 2).collect();
        assert_eq!(colex, vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3], vec![2, 3]]);
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(ColexCombinations::new(3, 0).count(), 1);
        assert_eq!(ColexCombinations::new(3, 4).count(), 0);
        assert_eq!(ColexCombinations::new(10, 4).count(), 210);
    }

    #[test]
    fn ln_binomial_matches_exact() {
        let exact = binom(60, 23).to_f64().unwrap();
        assert!((ln_binomial(60, 23) - exact.ln()).abs() < 1e-10);
    }
}
