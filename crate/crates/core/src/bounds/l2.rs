//! Three routes to the channel count behind a list of at most two.
//!
//! Each sum is the largest `|B_t(c_1) ∩ B_t(c_2) ∩ B_t(c_3)|`-type count, so
//! it equals `N_3`; one more channel forces `L <= 2`.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::combin::binomial;
use crate::error::{Error, Result};

/// The general index sum for a code of minimum distance `d` and `t` errors.
pub fn min_distance_sum(n: usize, d: usize, t: usize) -> BigUint {
    let (n, d, t) = (n as i64, d as i64, t as i64);
    let cd = (d + 1) / 2;
    let fd = d / 2;
    let c3 = (3 * d + 1) / 2;
    let mut s = BigUint::default();
    for i1 in 0..=t - cd {
        let b1 = binomial(n - c3, i1);
        for i4 in i1 + fd - t..=t - cd - i1 {
            let b4 = binomial(fd, i4);
            if b4 == BigUint::default() {
                continue;
            }
            for i3 in 2 * cd - t + i1..=t - i1 - i4 {
                let b3 = binomial(cd, i3);
                let lo = (i1 - i3 - i4 + c3 - t).max(i1 + i3 + i4 + cd - t);
                for i2 in lo..=t - (i1 + i4 + cd - i3) {
                    s += &b1 * binomial(cd, i2) * &b3 * &b4;
                }
            }
        }
    }
    s
}

/// The compact sum for `d = 2e+2`:
/// `0 <= i_1 < l`, `0 <= i_3, i_4 <= l-1-i_1`,
/// `i_1+i_3+i_4-(l-1) <= i_2 <= l-1-i_1-|i_4-i_3|`.
pub fn even_distance_sum(n: usize, e: usize, l: usize) -> BigUint {
    let (n, e, l) = (n as i64, e as i64, l as i64);
    let mut s = BigUint::default();
    for i1 in 0..l {
        let b1 = binomial(n - 3 * e - 3, i1);
        for i4 in 0..=l - 1 - i1 {
            for i3 in 0..=l - 1 - i1 {
                let lo = (i1 + i3 + i4 - (l - 1)).max(0);
                for i2 in lo..=l - 1 - i1 - (i4 - i3).abs() {
                    s += &b1 * binomial(e + 1, i2) * binomial(e + 1, i3) * binomial(e + 1, i4);
                }
            }
        }
    }
    s
}

/// The compact sum for `d = 2e+1`, with the half-integer cap
/// `i_2 <= l - 1/2 - i_1 - |i_4 + 1/2 - i_3|` evaluated over doubled integers.
pub fn odd_distance_sum(n: usize, e: usize, l: usize) -> BigUint {
    let (n, e, l) = (n as i64, e as i64, l as i64);
    let mut s = BigUint::default();
    for i1 in 0..l {
        let b1 = binomial(n - 3 * e - 2, i1);
        for i4 in 0..=l - 1 - i1 {
            for i3 in 0..=l - 1 - i1 {
                let lo = (i1 + i3 + i4 - (l - 1)).max(0);
                let twice_hi = 2 * l - 1 - 2 * i1 - (2 * i4 - 2 * i3 + 1).abs();
                for i2 in lo..=twice_hi.div_euclid(2) {
                    s += &b1 * binomial(e + 1, i2) * binomial(e + 1, i3) * binomial(e, i4);
                }
            }
        }
    }
    s
}

/// All routes for a given `(n, e, l)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct L2Routes {
    /// General sum at `d = 2e+2`.
    pub general_even: BigUint,
    /// Compact sum at `d = 2e+2`.
    pub compact_even: BigUint,
    /// General sum at `d = 2e+1`.
    pub general_odd: BigUint,
    /// Doubled-integer compact sum at `d = 2e+1`.
    pub compact_odd: BigUint,
}

impl L2Routes {
    /// Both routes agree inside each distance regime.
    pub fn agree_within_regimes(&self) -> bool {
        self.general_even == self.compact_even && self.general_odd == self.compact_odd
    }

    pub fn all_equal(&self) -> bool {
        self.general_even == self.compact_even && self.compact_even == self.general_odd && self.general_odd == self.compact_odd
    }
}

pub fn l2_bound_three_ways(n: usize, e: usize, l: usize) -> Result<L2Routes> {
    if l < 2 {
        return Err(Error::param(format!("needs l >= 2, got l={l}")));
    }
    let t = e + l;
    Ok(L2Routes {
        general_even: min_distance_sum(n, 2 * e + 2, t),
        compact_even: even_distance_sum(n, e, l),
        general_odd: min_distance_sum(n, 2 * e + 1, t),
        compact_odd: odd_distance_sum(n, e, l),
    })
}
