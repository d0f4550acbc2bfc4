//! Channel counts `N_1` and `N_h`: the largest number of channels for which
//! some `e`-error-correcting code still admits a list of size `h`.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combin::{ball_volume_clamped, binom, binomial};
use crate::error::{Error, Result};

/// Which of the two equal binomial sums to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// Every codeword at distance `e+1` from the center.
    Unprimed,
    /// One codeword at distance `e` from the center.
    Primed,
}

/// Channels needed for a unique decoding result:
/// `sum_{i<l} C(n-2e-1, i) sum_{k=e+1+i-l}^{t-i} C(2e+1, k) + 1`.
pub fn levenshtein_n1(n: usize, e: usize, l: usize) -> Result<BigUint> {
    if n < 2 * e + 1 {
        return Err(Error::param(format!("need n >= 2e+1, got n={n}, e={e}")));
    }
    if l == 0 {
        return Err(Error::param("l must be at least 1"));
    }
    let t = (e + l) as i64;
    let (n, e, l) = (n as i64, e as i64, l as i64);
    let mut total = BigUint::one();
    for i in 0..l {
        let inner: BigUint = ((e + 1 + i - l).max(0)..=t - i).map(|k| binomial(2 * e + 1, k)).sum();
        total += binomial(n - 2 * e - 1, i) * inner;
    }
    Ok(total)
}

/// Members of `W_w` (or `W'_w`): tuples `(i_1..i_h)` with
/// `lo <= i_j <= e+1`, `2 i_j >= w+1-l`, `sum i_j <= w`; the primed set caps
/// `i_1` at `e` and relaxes its lower bound to `2 i_1 >= w-l`.
pub fn enumerate_ww(e: usize, l: usize, h: usize, w: usize, variant: Variant) -> Vec<Vec<usize>> {
    assert!(h >= 1, "tuples need h >= 1");
    let lo = |slack: i64| -> usize { (slack.max(0) as usize).div_ceil(2) };
    let lo_rest = lo(w as i64 + 1 - l as i64);
    let (lo_first, hi_first) = match variant {
        Variant::Unprimed => (lo_rest, e + 1),
        Variant::Primed => (lo(w as i64 - l as i64), e),
    };
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(h);
    fn rec(
        cur: &mut Vec<usize>,
        h: usize,
        budget: usize,
        ranges: &dyn Fn(usize) -> (usize, usize),
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == h {
            out.push(cur.clone());
            return;
        }
        let (lo, hi) = ranges(cur.len());
        for i in lo..=hi.min(budget) {
            cur.push(i);
            rec(cur, h, budget - i, ranges, out);
            cur.pop();
        }
    }
    let ranges = |j: usize| if j == 0 { (lo_first, hi_first) } else { (lo_rest, e + 1) };
    rec(&mut cur, h, w, &ranges, &mut out);
    out
}

fn check_nh(e: usize, l: usize, h: usize) -> Result<()> {
    let _ = e;
    if l < 2 {
        return Err(Error::param(format!("N_h needs l >= 2, got l={l}")));
    }
    if !(3..=l + 1).contains(&h) {
        return Err(Error::param(format!("N_h needs 3 <= h <= l+1 = {}, got h={h}", l + 1)));
    }
    Ok(())
}

/// Coefficients of `prod_j P_j(x)` where `P_j(x) = sum_i C(cap_j, i) x^i` over `i in [lo_j, hi_j]`.
fn product_poly(factors: &[(usize, usize, usize)]) -> Vec<BigUint> {
    let mut acc = vec![BigUint::one()];
    for &(cap, lo, hi) in factors {
        if lo > hi {
            return vec![];
        }
        let mut next = vec![BigUint::zero(); acc.len() + hi];
        for (d, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for i in lo..=hi {
                next[d + i] += a * binom(cap, i);
            }
        }
        acc = next;
    }
    acc
}

/// Inner sum of `N_h` restricted to one `w`.
fn w_term(n: usize, e: usize, l: usize, h: usize, w: usize, variant: Variant) -> BigUint {
    let half_up = |x: i64| -> usize { (x.max(0) as usize).div_ceil(2) };
    let lo_rest = half_up(w as i64 + 1 - l as i64);
    let mut factors = vec![(e + 1, lo_rest, e + 1); h];
    let free = match variant {
        Variant::Unprimed => n as i64 - (h * (e + 1)) as i64,
        Variant::Primed => {
            factors[0] = (e, half_up(w as i64 - l as i64), e);
            n as i64 + 1 - (h * (e + 1)) as i64
        }
    };
    product_poly(&factors)
        .iter()
        .enumerate()
        .take(w + 1)
        .filter(|(_, c)| !c.is_zero())
        .map(|(sigma, c)| binomial(free, (w - sigma) as i64) * c)
        .sum()
}

/// Subsums `S_a` (`a = 0..=e`), each over `w in {l+2a, l+2a+1}`.
pub fn nh_subsums(n: usize, e: usize, l: usize, h: usize, variant: Variant) -> Result<Vec<BigUint>> {
    check_nh(e, l, h)?;
    Ok((0..=e)
        .map(|a| w_term(n, e, l, h, l + 2 * a, variant) + w_term(n, e, l, h, l + 2 * a + 1, variant))
        .collect())
}

/// `N_h = V(n, l-1) + sum_{w=l}^{2e+l+1} sum_{W_w} ...`.
pub fn channel_count_nh(n: usize, e: usize, l: usize, h: usize, variant: Variant) -> Result<BigUint> {
    let subsums = nh_subsums(n, e, l, h, variant)?;
    Ok(ball_volume_clamped(n as i64, l as i64 - 1) + subsums.into_iter().sum::<BigUint>())
}

/// `N_h` summed tuple by tuple from [`enumerate_ww`]; slow, kept as a cross-check.
pub fn channel_count_nh_by_tuples(n: usize, e: usize, l: usize, h: usize, variant: Variant) -> Result<BigUint> {
    check_nh(e, l, h)?;
    let mut total = ball_volume_clamped(n as i64, l as i64 - 1);
    for w in l..=2 * e + l + 1 {
        for tup in enumerate_ww(e, l, h, w, variant) {
            let sigma: usize = tup.iter().sum();
            let (free, first_cap) = match variant {
                Variant::Unprimed => (n as i64 - (h * (e + 1)) as i64, e + 1),
                Variant::Primed => (n as i64 + 1 - (h * (e + 1)) as i64, e),
            };
            let mut term = binomial(free, (w - sigma) as i64) * binom(first_cap, tup[0]);
            for &i in &tup[1..] {
                term *= binom(e + 1, i);
            }
            total += term;
        }
    }
    Ok(total)
}

/// Channels sufficient for a list of at most `l`: `V(n,l-1) + (e+1)^(l+1) + 1`.
pub fn channel_count_for_list_l(n: usize, e: usize, l: usize) -> Result<BigUint> {
    if l < 3 {
        return Err(Error::param(format!("needs l >= 3, got l={l}")));
    }
    Ok(ball_volume_clamped(n as i64, l as i64 - 1) + BigUint::from(e + 1).pow(l as u32 + 1) + 1u32)
}

/// Leading behaviour of `N_h` in `n`: `V(n,l-1) + C(n-h(e+1), l+1-h) (e+1)^h`.
pub fn asymptotic_nh_leading(n: usize, e: usize, l: usize, h: usize) -> Result<BigUint> {
    check_nh(e, l, h)?;
    Ok(ball_volume_clamped(n as i64, l as i64 - 1)
        + binomial(n as i64 - (h * (e + 1)) as i64, (l + 1 - h) as i64) * BigUint::from(e + 1).pow(h as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::ball_volume;
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn n1_examples() {
        assert_eq!(levenshtein_n1(28, 0, 5).unwrap(), big(41709));
        for e in 0..4 {
            for n in 2 * e + 1..40 {
                assert!(levenshtein_n1(n, e, 1).unwrap() >= big(2));
            }
        }
        assert!(levenshtein_n1(2, 1, 1).is_err());
    }

    #[test]
    fn ww_examples() {
        assert_eq!(enumerate_ww(1, 2, 3, 3, Variant::Unprimed), vec![vec![1, 1, 1]]);
        assert!(enumerate_ww(1, 2, 3, 2, Variant::Unprimed).is_empty());
        for e in 0..3 {
            for l in 2..5 {
                for w in 2 * e + l + 2..2 * e + l + 5 {
                    assert!(enumerate_ww(e, l, 3, w, Variant::Unprimed).is_empty());
                }
            }
        }
        for tup in enumerate_ww(2, 3, 4, 5, Variant::Primed) {
            assert!(tup[0] <= 2 && 2 * tup[0] >= 2);
            assert!(tup[1..].iter().all(|&i| (2..=3).contains(&i)));
            assert!(tup.iter().sum::<usize>() <= 5);
        }
    }

    #[test]
    fn nh_examples() {
        for n in 4..30 {
            for v in [Variant::Unprimed, Variant::Primed] {
                assert_eq!(channel_count_nh(n, 0, 2, 3, v).unwrap(), ball_volume(n, 1).unwrap() + 1u32);
            }
        }
        assert_eq!(channel_count_nh(12, 1, 2, 3, Variant::Unprimed).unwrap(), big(21));
        assert_eq!(channel_count_nh(12, 1, 2, 3, Variant::Primed).unwrap(), big(21));
        // the primed sum for (12,1,2,3) splits as 4 at w=2 and 4 at w=3
        assert_eq!(w_term(12, 1, 2, 3, 2, Variant::Primed), big(4));
        assert_eq!(w_term(12, 1, 2, 3, 3, Variant::Primed), big(4));
        assert!(channel_count_nh(12, 1, 2, 4, Variant::Primed).is_err());
        assert!(channel_count_nh(12, 1, 1, 2, Variant::Primed).is_err());
    }

    #[test]
    fn polynomial_and_tuple_sums_agree() {
        for e in 0..=3 {
            for l in 2..=5 {
                for h in 3..=l + 1 {
                    for n in [h * (e + 1) + 1, 20, 41] {
                        for v in [Variant::Unprimed, Variant::Primed] {
                            assert_eq!(
                                channel_count_nh(n, e, l, h, v).unwrap(),
                                channel_count_nh_by_tuples(n, e, l, h, v).unwrap(),
                                "n={n} e={e} l={l} h={h} {v:?}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn subsums_agree_per_a() {
        for e in 0..=3 {
            for l in 2..=6 {
                for h in 3..=l + 1 {
                    for n in (h * (e + 1) + 1..=64).step_by(7) {
                        assert_eq!(
                            nh_subsums(n, e, l, h, Variant::Unprimed).unwrap(),
                            nh_subsums(n, e, l, h, Variant::Primed).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn list_l_identity() {
        assert_eq!(channel_count_for_list_l(20, 1, 3).unwrap(), ball_volume(20, 2).unwrap() + 17u32);
        assert_eq!(channel_count_for_list_l(20, 0, 3).unwrap(), ball_volume(20, 2).unwrap() + 2u32);
        assert_eq!(
            channel_count_for_list_l(20, 1, 3).unwrap(),
            channel_count_nh(20, 1, 3, 4, Variant::Unprimed).unwrap() + 1u32
        );
        assert!(channel_count_for_list_l(20, 1, 2).is_err());
    }

    #[test]
    fn asymptotic_residual_is_lower_order() {
        let (e, l, h) = (1, 4, 3);
        let ratios: Vec<f64> = [50usize, 100, 200, 400]
            .iter()
            .map(|&n| {
                let exact = BigInt::from(channel_count_nh(n, e, l, h, Variant::Unprimed).unwrap());
                let lead = BigInt::from(asymptotic_nh_leading(n, e, l, h).unwrap());
                (exact - lead).to_f64().unwrap().abs() / (n as f64).powi((l - h) as i32)
            })
            .collect();
        let (lo, hi) = ratios.iter().fold((f64::MAX, 0f64), |(a, b), &r| (a.min(r), b.max(r)));
        assert!(hi / lo < 2.0, "{ratios:?}");
        for n in [30, 60] {
            assert_eq!(asymptotic_nh_leading(n, 2, 4, 5).unwrap() + 1u32, channel_count_for_list_l(n, 2, 4).unwrap());
        }
        // h = l: linear leading term
        let a = asymptotic_nh_leading(100, 1, 4, 4).unwrap() - ball_volume(100, 3).unwrap();
        assert_eq!(a, big((100 - 8) * 16));
    }
}
