//! Closed-form list-size bounds, their channel thresholds and applicability.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::l2::l2_bound_three_ways;
use super::nh::{channel_count_for_list_l, channel_count_nh, levenshtein_n1, Variant};
use super::ReconstructionParams;
use crate::codes::covering_dimension;
use crate::combin::{ball_volume_clamped, binom};
use crate::error::{Error, Result};

/// `n(e,l,b) = (l-1)^2 (b - e + (e+1)(b - 3e - 2e^2 + eb + C(b-2e-1, 2))) + l - 2`.
pub fn n_threshold(e: usize, l: usize, b: &BigInt) -> BigInt {
    let e = BigInt::from(e);
    let l = BigInt::from(l);
    let m = b - BigInt::from(2) * &e - 1;
    let pairs = if m >= BigInt::from(2) { &m * (&m - 1) / 2 } else { BigInt::zero() };
    let inner = b - &e + (&e + 1) * (b - BigInt::from(3) * &e - BigInt::from(2) * &e * &e + &e * b + pairs);
    let lm1 = &l - 1;
    &lm1 * &lm1 * inner + l - 2
}

/// The default `b = max(3t, 4e+4)`.
pub fn default_b(e: usize, l: usize) -> usize {
    (3 * (e + l)).max(4 * e + 4)
}

/// `r(n,e,M) = n/2 (1 - sqrt(1 - (M-1)/M · 2(2e+1)/n))`.
pub fn johnson_radius(n: usize, e: usize, m: f64) -> Result<f64> {
    check_johnson(n, e)?;
    if m < 1.0 {
        return Err(Error::param("M must be at least 1"));
    }
    let nf = n as f64;
    let disc = 1.0 - (m - 1.0) / m * (2.0 * (2 * e + 1) as f64 / nf);
    Ok(nf / 2.0 * (1.0 - disc.sqrt()))
}

/// `r(n,e) = n/2 (1 - sqrt(1 - 2(2e+1)/n))`, the `M -> ∞` limit.
pub fn johnson_radius_limit(n: usize, e: usize) -> Result<f64> {
    check_johnson(n, e)?;
    let nf = n as f64;
    Ok(nf / 2.0 * (1.0 - (1.0 - 2.0 * (2 * e + 1) as f64 / nf).sqrt()))
}

fn check_johnson(n: usize, e: usize) -> Result<()> {
    if 2 * (2 * e + 1) >= n {
        return Err(Error::param(format!("needs 2e+1 < n/2, got n={n}, e={e}")));
    }
    Ok(())
}

/// `b = ⌈(2e+2a+2)^(𝕖·(e+a+1)!)⌉`, bracketed by evaluating the exponent at
/// rational lower and upper bounds on 𝕖.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BValue {
    pub base: u64,
    pub factorial: String,
    /// Exact `b` when both brackets round up to the same integer.
    pub exact: Option<String>,
    /// `floor` of the lower bracket, when small enough to write out.
    pub lower: Option<String>,
    /// `ceil` of the upper bracket, when small enough to write out.
    pub upper: Option<String>,
    pub log2_lower: f64,
    pub log2_upper: f64,
}

const E_LO: (u64, u64) = (27_182_818_284, 10_000_000_000);
const E_HI: (u64, u64) = (27_182_818_285, 10_000_000_000);
/// Values with more bits than this are reported by their logarithm only.
const B_MAX_BITS: f64 = 4_000_000.0;

impl BValue {
    pub fn compute(e: usize, a: usize) -> BValue {
        let base = (2 * e + 2 * a + 2) as u64;
        let fact: BigUint = (1..=(e + a + 1) as u64).map(BigUint::from).product();
        let lb = (base as f64).log2();
        let exp_lo = (&fact * E_LO.0, BigUint::from(E_LO.1));
        let exp_hi = (&fact * E_HI.0, BigUint::from(E_HI.1));
        let as_f64 = |(num, den): &(BigUint, BigUint)| crate::combin::ratio_to_f64(num, den);
        let (log2_lower, log2_upper) = (as_f64(&exp_lo) * lb, as_f64(&exp_hi) * lb);
        let mut out = BValue {
            base,
            factorial: fact.to_string(),
            exact: None,
            lower: None,
            upper: None,
            log2_lower,
            log2_upper,
        };
        if log2_upper > B_MAX_BITS {
            return out;
        }
        // base^(k + f) = base^k · base^f with 52 fractional bits carried for base^f
        let power = |(num, den): &(BigUint, BigUint), round_up: bool| -> BigUint {
            let k = num / den;
            let frac = crate::combin::ratio_to_f64(&(num % den), den);
            let scale = 60u32;
            let mant = (base as f64).powf(frac) * 2f64.powi(scale as i32);
            // widen by a few ulps so the bracket stays valid under rounding
            let mant = if round_up { mant * (1.0 + 1e-14) } else { mant * (1.0 - 1e-14) };
            let mant = BigUint::from(mant as u128);
            let big = BigUint::from(base).pow(k.to_u32().expect("exponent fits")) * mant;
            if round_up {
                (big + ((BigUint::one() << scale) - 1u32)) >> scale
            } else {
                big >> scale
            }
        };
        let lo = power(&exp_lo, false);
        let hi = power(&exp_hi, true);
        // the true b = ceil(base^E) with lo <= base^E <= hi; b is pinned when no integer lies strictly inside
        if &lo + 1u32 >= hi && lo != hi {
            out.exact = Some(hi.to_string());
        } else if lo == hi {
            out.exact = Some(lo.to_string());
        }
        if log2_upper < 4096.0 {
            out.lower = Some(lo.to_string());
            out.upper = Some(hi.to_string());
        }
        out
    }
}

/// One line of the bounds report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub name: String,
    /// `list_upper`, `list_lower` or `channels`.
    pub kind: String,
    /// Exact decimal value, or `None` when only an estimate exists.
    pub value: Option<String>,
    pub approx: Option<f64>,
    /// Channel count the bound requires (`N >= threshold`) or tolerates (`N <= threshold` for lower bounds).
    pub threshold: Option<String>,
    pub applicable: bool,
    pub note: Option<String>,
}

impl BoundRecord {
    fn new(name: &str, kind: &str, value: Option<BigUint>) -> Self {
        BoundRecord {
            name: name.into(),
            kind: kind.into(),
            approx: value.as_ref().and_then(|v| v.to_f64()),
            value: value.map(|v| v.to_string()),
            threshold: None,
            applicable: true,
            note: None,
        }
    }

    fn threshold(mut self, t: &BigUint) -> Self {
        self.threshold = Some(t.to_string());
        self
    }

    fn applicable(mut self, ok: bool) -> Self {
        self.applicable = ok;
        self
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.note = Some(s.into());
        self
    }
}

fn big(v: usize) -> BigUint {
    BigUint::from(v)
}

/// Largest `l + 2R` for which `k[l+2R, R]` is searched when reporting bounds.
const COVERING_REPORT_MAX_LEN: usize = 9;

/// Every bound that can be evaluated for `params`, flagged by applicability.
/// When `params.channels` is absent the channel condition is taken as met.
pub fn generic_list_bounds(p: &ReconstructionParams) -> Result<Vec<BoundRecord>> {
    p.validate()?;
    let (n, e, l, t) = (p.n, p.e, p.l, p.t());
    let ni = n as i64;
    let v = |r: i64| ball_volume_clamped(ni, r);
    let have = |need: &BigUint| p.channels.as_ref().is_none_or(|c| c >= need);
    let have_at_most = |cap: &BigUint| p.channels.as_ref().is_none_or(|c| c <= cap);
    let b = BigInt::from(p.b.unwrap_or_else(|| default_b(e, l)));
    let above_n_threshold = BigInt::from(n) >= n_threshold(e, l, &b);
    let mut out = Vec::new();

    if n > 2 * e {
        let n1 = levenshtein_n1(n, e, l)?;
        out.push(BoundRecord::new("levenshtein_N1", "channels", Some(n1.clone())).note("N >= this forces a unique candidate"));
        out.push(BoundRecord::new("unique", "list_upper", Some(big(1))).threshold(&n1).applicable(have(&n1)));
    }
    if l >= 2 {
        let r = l2_bound_three_ways(n, e, l)?;
        let need = &r.compact_even + 1u32;
        out.push(
            BoundRecord::new("at_most_two", "list_upper", Some(big(2)))
                .threshold(&need)
                .applicable(have(&need))
                .note(format!("routes agree: {}", r.all_equal())),
        );
    }
    let base = v(l as i64 - 1) + 1u32;
    out.push(
        BoundRecord::new("central_binomial", "list_upper", Some(binom(2 * l, l)))
            .threshold(&base)
            .applicable(n + 1 >= 2 * l && have(&base)),
    );
    out.push(BoundRecord::new("power_of_two", "list_upper", Some(BigUint::one() << l)).threshold(&base).applicable(n >= l && have(&base)));
    let below = v(l as i64 - 1);
    out.push(
        BoundRecord::new("linear_below_threshold", "list_lower", Some(big(n / (e + 1))))
            .threshold(&below)
            .applicable(have_at_most(&below))
            .note("some e-error-correcting code reaches this list size"),
    );
    out.push(
        BoundRecord::new("l_plus_one", "list_upper", Some(big(l + 1)))
            .threshold(&base)
            .applicable(above_n_threshold && have(&base))
            .note(format!("length threshold n(e,l,b) = {} with b = {b}", n_threshold(e, l, &b))),
    );
    out.push(
        BoundRecord::new("l_plus_one_tight", "list_lower", Some(big(l + 1)))
            .threshold(&base)
            .applicable(n >= l + l * e + e && have_at_most(&base)),
    );
    if let Some(h) = p.h {
        let nh = channel_count_nh(n, e, l, h, Variant::Unprimed)?;
        let need = &nh + 1u32;
        out.push(BoundRecord::new("N_h", "channels", Some(nh)).note(format!("h = {h}")));
        out.push(
            BoundRecord::new("below_h", "list_upper", Some(big(h - 1)))
                .threshold(&need)
                .applicable(above_n_threshold && have(&need)),
        );
    }
    if l >= 3 {
        let need = channel_count_for_list_l(n, e, l)?;
        out.push(
            BoundRecord::new("at_most_l", "list_upper", Some(big(l)))
                .threshold(&need)
                .applicable(above_n_threshold && have(&need)),
        );
    }
    if let (Some(a), Some(m)) = (p.a, p.m) {
        let need = v(l as i64 - a as i64 - 1) + 1u32;
        out.push(
            BoundRecord::new("bounded_ball", "list_upper", Some((BigUint::one() << (l - a)) * m))
                .threshold(&need)
                .applicable(a < l && have(&need)),
        );
        if a >= 1 {
            out.push(central_word_bound(p, a, m, &need)?);
        }
    }
    if let Some(r) = p.r {
        let len = l + 2 * r;
        if len <= COVERING_REPORT_MAX_LEN {
            let (k, _) = covering_dimension(len, r)?;
            let v_need = v(len as i64 - 1) + 2u32;
            let cosets = BigUint::one() << (len - k);
            let need = if v_need > cosets { v_need - cosets } else { BigUint::zero() };
            out.push(
                BoundRecord::new("covering", "list_upper", Some(BigUint::one() << k))
                    .threshold(&need)
                    .applicable(have(&need))
                    .note(format!("k[{len},{r}] = {k}")),
            );
        } else {
            out.push(
                BoundRecord::new("covering", "list_upper", None)
                    .applicable(false)
                    .note(format!("k[{len},{r}] is beyond the search budget")),
            );
        }
    }
    if 2 * (2 * e + 1) < n {
        if let Some(m) = p.m {
            let r = johnson_radius(n, e, m as f64)?;
            let rf = r.floor() as i64;
            let ok = rf >= 1 && rf - e as i64 >= 0 && rf - (e as i64) < l as i64;
            let need = v(l as i64 - rf + e as i64 - 1) + 1u32;
            let value = if ok { Some((BigUint::one() << (t as i64 - rf) as usize) * m) } else { None };
            out.push(
                BoundRecord::new("johnson_bounded_ball", "list_upper", value)
                    .threshold(&need)
                    .applicable(ok && have(&need))
                    .note(format!("r(n,e,M) = {r:.6}, used as floor {rf}")),
            );
        }
        let r = johnson_radius_limit(n, e)?;
        let rf = r.floor() as i64;
        let ok = rf >= 2 && rf - e as i64 >= 1 && rf - e as i64 <= l as i64;
        let need = v(l as i64 - rf + e as i64) + 1u32;
        let value = if ok { Some((BigUint::one() << (t as i64 - rf + 1) as usize) * n) } else { None };
        out.push(
            BoundRecord::new("johnson_any_code", "list_upper", value)
                .threshold(&need)
                .applicable(ok && have(&need))
                .note(format!("r(n,e) = {r:.6}, used as floor {rf}")),
        );
    }
    Ok(out)
}

fn central_word_bound(p: &ReconstructionParams, a: usize, m: u64, need: &BigUint) -> Result<BoundRecord> {
    let (n, e, l, t) = (p.n, p.e, p.l, p.t());
    let bv = BValue::compute(e, a);
    let first = BigUint::from(t as u64 + 1) * m;
    let denom = (2 * e + 2 * a + 2) as f64;
    // n >= (l-a-1)^2 2^b + l-a-2; with l-a-1 = 0 this is n >= -1
    let k = l as i64 - a as i64 - 1;
    let length_ok = k <= 0 || (bv.log2_upper < 60.0 && {
        let b_hi: u64 = bv.upper.as_ref().and_then(|s| s.parse().ok()).unwrap_or(u64::MAX);
        b_hi < 63 && (n as i128) >= (k as i128 * k as i128) * (1i128 << b_hi) + k as i128 - 1
    });
    let (value, approx) = match &bv.exact {
        Some(b) => {
            let b: BigUint = b.parse().expect("decimal");
            let second = b / BigUint::from(2 * e + 2 * a + 2);
            let v = first.clone().max(second);
            (Some(v.clone()), v.to_f64())
        }
        None => (None, Some((bv.log2_upper - denom.log2()).exp2())),
    };
    let mut rec = BoundRecord::new("central_word", "list_upper", value)
        .threshold(need)
        .applicable(length_ok && a < l && p.channels.as_ref().is_none_or(|c| c >= need))
        .note(format!(
            "b = ceil({}^(e·{}!)), log2 b in [{:.6}, {:.6}]",
            bv.base,
            e + a + 1,
            bv.log2_lower,
            bv.log2_upper
        ));
    if rec.approx.is_none() {
        rec.approx = approx;
    }
    Ok(rec)
}
