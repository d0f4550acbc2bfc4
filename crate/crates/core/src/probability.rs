//! Bounds on the success probability of majority decoding under uniform-ball channels.
//!
//! `C_t(n,q,s)` is the event that after `q` rounds, each dropping `t` balls
//! into distinct buckets among `n`, some bucket holds at least `s` balls. A
//! coordinate flipped by at least half of the channels breaks the vote.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::combin::{ball_volume, binom, ln_binomial, ratio_to_f64, signed_ratio_to_f64};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    /// The recursive bound, tighter.
    Recursive,
    /// The closed form `t^s / n^(s-1) · C(q, s)`.
    Simple,
}

fn check_ct(n: usize, q: usize, s: usize, t: usize) -> Result<()> {
    if s < 2 || s > q {
        return Err(Error::param(format!("need 2 <= s <= q, got s={s}, q={q}")));
    }
    if t > n {
        return Err(Error::param(format!("need t <= n, got t={t}, n={n}")));
    }
    Ok(())
}

/// `ln(t^s / n^(s-1))`.
fn ln_lead(n: usize, s: usize, t: usize) -> f64 {
    s as f64 * (t as f64).ln() - (s as f64 - 1.0) * (n as f64).ln()
}

fn simple(n: usize, q: usize, s: usize, t: usize) -> f64 {
    if t == 0 || q < s {
        return 0.0;
    }
    (ln_lead(n, s, t) + ln_binomial(q as u64, s as u64)).exp().clamp(0.0, 1.0)
}

/// Memoized recursive bound keyed on `(t, n, q, s)`.
#[derive(Debug, Default)]
pub struct RecursiveBound {
    memo: HashMap<(usize, usize, usize, usize), f64>,
}

impl RecursiveBound {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn eval(&mut self, t: usize, n: usize, q: usize, s: usize) -> f64 {
        if t == 0 || q < s {
            return 0.0;
        }
        if let Some(&v) = self.memo.get(&(t, n, q, s)) {
            return v;
        }
        let lead = ln_lead(n, s, t);
        let ln_stay = if t == n { f64::NEG_INFINITY } else { ((n - t) as f64 / n as f64).ln() };
        let mut total = 0.0;
        for i in s..=q {
            let miss = 1.0 - self.eval(t - 1, n - 1, i - 1, s);
            let decay = if i == s { 0.0 } else { (i - s) as f64 * ln_stay };
            total += (lead + ln_binomial((i - 1) as u64, (s - 1) as u64) + decay).exp() * miss;
        }
        // the recursion composes upper bounds, so clamp at every level
        let v = total.clamp(0.0, 1.0);
        self.memo.insert((t, n, q, s), v);
        v
    }
}

/// Upper bound on `Pr[C_t(n,q,s)]`, clamped to `[0, 1]`.
pub fn pr_ct_upper(n: usize, q: usize, s: usize, t: usize, method: Method) -> Result<f64> {
    check_ct(n, q, s, t)?;
    Ok(match method {
        Method::Simple => simple(n, q, s, t),
        Method::Recursive => RecursiveBound::new().eval(t, n, q, s),
    })
}

/// Lower bound on `Pr[z = x]` for the majority vote over `N` channels:
/// `1 - Pr[C_t(n, N, ⌈N/2⌉)]`.
pub fn majority_success_lb(n: usize, t: usize, channels: usize, method: Method) -> Result<f64> {
    let s = channels.div_ceil(2);
    if s < 2 {
        return Err(Error::param(format!("needs N >= 3, got N={channels}")));
    }
    Ok((1.0 - pr_ct_upper(n, channels, s, t, method)?).clamp(0.0, 1.0))
}

/// Law of the number of errors `X` in one uniform-ball channel:
/// `p_r = C(n,r) / V(n,t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorDistribution {
    pub n: usize,
    pub t: usize,
    pub p: Vec<f64>,
    pub mean: f64,
    pub variance: f64,
}

impl ErrorDistribution {
    pub fn new(n: usize, t: usize) -> Result<Self> {
        let vol = ball_volume(n, t)?;
        let cs: Vec<BigUint> = (0..=t).map(|r| binom(n, r)).collect();
        let p = cs.iter().map(|c| ratio_to_f64(c, &vol)).collect();
        let s1: BigUint = cs.iter().enumerate().map(|(r, c)| c * r).sum();
        let s2: BigUint = cs.iter().enumerate().map(|(r, c)| c * (r * r)).sum();
        let mean = ratio_to_f64(&s1, &vol);
        // σ² = (s2·V - s1²) / V², exact up to the final division
        let num = BigInt::from(s2 * &vol) - BigInt::from(&s1 * &s1);
        let variance = signed_ratio_to_f64(&num, &(&vol * &vol));
        Ok(ErrorDistribution { n, t, p, mean, variance })
    }

    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }

    /// Law of `S_N`, the total error count over `N` independent channels.
    pub fn sum_distribution(&self, channels: usize) -> Vec<f64> {
        let mut acc = vec![1.0];
        for _ in 0..channels {
            let mut next = vec![0.0; acc.len() + self.t];
            for (i, a) in acc.iter().enumerate() {
                for (r, p) in self.p.iter().enumerate() {
                    next[i + r] += a * p;
                }
            }
            acc = next;
        }
        acc
    }

    /// `Pr[S_N <= x]`.
    pub fn sum_cdf(&self, channels: usize, x: i64) -> f64 {
        if x < 0 {
            return 0.0;
        }
        self.sum_distribution(channels).iter().take(x as usize + 1).sum::<f64>().min(1.0)
    }
}

/// Mass of a standard normal within `h` standard deviations: `erf(h/√2)`.
pub fn confidence_mass(h: f64) -> f64 {
    statrs::function::erf::erf(h / std::f64::consts::SQRT_2)
}

/// `α = ⌈((t-μ)N + hσ√N + 1 + p(N)(k+1)) / (2(k+1))⌉` with `p(N) = N mod 2`.
pub fn alpha_min(n: usize, t: usize, k: usize, channels: usize, h_conf: f64) -> Result<u64> {
    let d = ErrorDistribution::new(n, t)?;
    Ok(alpha_from(&d, k, channels, h_conf))
}

fn alpha_from(d: &ErrorDistribution, k: usize, channels: usize, h_conf: f64) -> u64 {
    let nf = channels as f64;
    let parity = (channels % 2) as f64;
    let k1 = (k + 1) as f64;
    let raw = ((d.t as f64 - d.mean) * nf + h_conf * d.std_dev() * nf.sqrt() + 1.0 + parity * k1) / (2.0 * k1);
    raw.ceil().max(1.0) as u64
}

/// Components of the lower bound on `Pr[verify_radius <= k and z = x]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifiableBound {
    pub alpha: u64,
    pub mean: f64,
    pub variance: f64,
    /// `1 - Pr[C_t(n, N, ⌈N/2⌉ - α + 1)]` from the closed-form bound.
    pub no_pileup: f64,
    /// Normal approximation of `Pr[|S_N - μN| <= hσ√N]`; labelled approximate (CLT).
    pub confidence_mass: f64,
    /// `max(0, no_pileup + confidence_mass - 1)`.
    pub value: f64,
    /// `t - μ < k` and `n > 2t𝕖/A` with `A = (k - (t - μ)) / (k + 1)`.
    pub asymptotic_regime: bool,
    /// `tN - (k+1)(2α - p(N)) + 1 <= μN - hσ√N`.
    pub alpha_inequality_holds: bool,
    /// Exact `Pr[S_N >= tN - (k+1)(2α - p(N)) + 1]` by convolution.
    pub exact_error_mass: Option<f64>,
    /// The bound with the exact error mass in place of the normal approximation.
    pub value_exact: Option<f64>,
}

/// Largest `N·t` for which the exact law of `S_N` is convolved.
const EXACT_SUM_BUDGET: usize = 200_000;

pub fn verifiable_success_lb(n: usize, t: usize, k: usize, channels: usize, h_conf: f64) -> Result<VerifiableBound> {
    if k == 0 {
        return Err(Error::param("k must be positive"));
    }
    if h_conf.is_nan() || h_conf <= 0.0 {
        return Err(Error::param("the confidence multiplier must be positive"));
    }
    let d = ErrorDistribution::new(n, t)?;
    let alpha = alpha_from(&d, k, channels, h_conf);
    let half = channels.div_ceil(2) as u64;
    if alpha >= half {
        return Err(Error::param(format!("alpha = {alpha} is not below ceil(N/2) = {half}")));
    }
    let s = (half - alpha + 1) as usize;
    let no_pileup = if s < 2 { 0.0 } else { 1.0 - simple(n, channels, s, t) };
    let mass = confidence_mass(h_conf);
    let nf = channels as f64;
    let parity = (channels % 2) as i64;
    let threshold = (t * channels) as i64 - (k as i64 + 1) * (2 * alpha as i64 - parity) + 1;
    let alpha_inequality_holds = threshold as f64 <= d.mean * nf - h_conf * d.std_dev() * nf.sqrt();
    let gap = t as f64 - d.mean;
    let a = (k as f64 - gap) / (k as f64 + 1.0);
    let asymptotic_regime = gap < k as f64 && n as f64 > 2.0 * t as f64 * std::f64::consts::E / a;
    let exact_error_mass = (channels * t <= EXACT_SUM_BUDGET).then(|| 1.0 - d.sum_cdf(channels, threshold - 1));
    let value = (no_pileup + mass - 1.0).max(0.0);
    Ok(VerifiableBound {
        alpha,
        mean: d.mean,
        variance: d.variance,
        no_pileup,
        confidence_mass: mass,
        value,
        asymptotic_regime,
        alpha_inequality_holds,
        exact_error_mass,
        value_exact: exact_error_mass.map(|m| (no_pileup + m - 1.0).max(0.0)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const NS: [usize; 5] = [11, 21, 31, 41, 101];

    #[test]
    fn pr_ct_examples() {
        assert!((pr_ct_upper(28, 11, 6, 5, Method::Simple).unwrap() - 0.41947).abs() < 1e-4);
        assert!((pr_ct_upper(28, 21, 11, 5, Method::Simple).unwrap() - 0.0581).abs() < 1e-3);
        assert!((pr_ct_upper(28, 11, 6, 5, Method::Recursive).unwrap() - 0.1801).abs() < 1e-3);
        assert!(pr_ct_upper(28, 11, 1, 5, Method::Simple).is_err());
        assert!(pr_ct_upper(28, 5, 6, 5, Method::Simple).is_err());
        assert_eq!(pr_ct_upper(28, 11, 6, 0, Method::Recursive).unwrap(), 0.0);
    }

    #[test]
    fn recursive_never_exceeds_simple() {
        for n in [10usize, 20, 28, 40] {
            for t in 0..=5usize.min(n) {
                for q in 2..30 {
                    for s in 2..=q {
                        let r = pr_ct_upper(n, q, s, t, Method::Recursive).unwrap();
                        let c = pr_ct_upper(n, q, s, t, Method::Simple).unwrap();
                        assert!(r <= c + 1e-12, "n={n} t={t} q={q} s={s}: {r} > {c}");
                    }
                }
            }
        }
    }

    #[test]
    fn success_bounds_table_grid() {
        let rec = [0.81994, 0.99015, 0.99942, 0.99996, 1.0];
        let simp = [0.58056, 0.94185, 0.99100, 0.99854, 1.0];
        for (i, &nn) in NS.iter().enumerate() {
            assert!((majority_success_lb(28, 5, nn, Method::Recursive).unwrap() - rec[i]).abs() < 2e-5);
            assert!((majority_success_lb(28, 5, nn, Method::Simple).unwrap() - simp[i]).abs() < 2e-5);
        }
        assert!(majority_success_lb(28, 5, 101, Method::Simple).unwrap() >= 0.999);
        assert!(majority_success_lb(28, 5, 2, Method::Simple).is_err());
    }

    #[test]
    fn success_bound_monotone_in_odd_n() {
        for m in [Method::Recursive, Method::Simple] {
            let mut prev = 0.0;
            for nn in (3..=101).step_by(2) {
                let v = majority_success_lb(28, 5, nn, m).unwrap();
                assert!(v + 1e-12 >= prev, "{m:?} N={nn}");
                prev = v;
            }
        }
    }

    #[test]
    fn error_distribution_examples() {
        let d = ErrorDistribution::new(10, 0).unwrap();
        assert_eq!((d.mean, d.variance), (0.0, 0.0));
        let d = ErrorDistribution::new(10, 5).unwrap();
        assert!((d.p.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        let d = ErrorDistribution::new(62, 7).unwrap();
        assert!(d.mean > 6.0);
        assert!((d.mean - 6.8639).abs() < 1e-4);
        assert!((d.variance - 0.14751).abs() < 1e-5);
        let s = d.sum_distribution(5);
        assert!((s.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn verifiable_example() {
        let v = verifiable_success_lb(62, 7, 2, 41, 3.0).unwrap();
        assert_eq!(v.alpha, 3);
        assert!((v.value - 0.997).abs() < 1e-3, "{v:?}");
        assert!(v.alpha_inequality_holds);
        assert!(v.exact_error_mass.unwrap() > 0.99);
        assert!((confidence_mass(4.0) - 0.999937).abs() < 1e-6);
        // t - μ ≈ 0.136 < k and 62 > 2t𝕖/A ≈ 61.3
        assert!(v.asymptotic_regime);
        // t - μ ≈ 2.11 >= k: flag off, bound still computed
        let off = verifiable_success_lb(8, 6, 2, 101, 3.0).unwrap();
        assert!(!off.asymptotic_regime);
        assert!((0.0..=1.0).contains(&off.value));
    }

    #[test]
    fn alpha_meets_its_inequality() {
        for (n, t) in [(62usize, 7usize), (40, 5), (100, 8)] {
            for k in 1..4 {
                for nn in [21usize, 40, 41, 80, 101] {
                    if let Ok(b) = verifiable_success_lb(n, t, k, nn, 3.0) {
                        assert!(b.alpha_inequality_holds, "n={n} t={t} k={k} N={nn}");
                    }
                }
            }
        }
    }
}
