//! Channel-count and list-size formulas, and the brute-force oracle that checks them.

pub mod generic;
pub mod l2;
pub mod nh;
pub mod oracle;

use num_bigint::BigUint;

use crate::error::{Error, Result};

pub use generic::{generic_list_bounds, johnson_radius, johnson_radius_limit, n_threshold, BValue, BoundRecord};
pub use l2::{l2_bound_three_ways, L2Routes};
pub use nh::{
    asymptotic_nh_leading, channel_count_for_list_l, channel_count_nh, enumerate_ww, levenshtein_n1, nh_subsums,
    Variant,
};
pub use oracle::{oracle_nprime, oracle_nprime_with, OracleMode, OracleOptions, OracleResult};

/// The parameters every bound formula draws from. `t = e + l` is derived,
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconstructionParams {
    pub n: usize,
    pub e: usize,
    pub l: usize,
    /// Target list size for `N_h`.
    pub h: Option<usize>,
    /// Radius slack: balls of radius `e + a` hold at most `m` codewords.
    pub a: Option<usize>,
    /// Covering radius of the auxiliary linear code.
    pub r: Option<usize>,
    pub m: Option<u64>,
    /// Override for `b` in the length threshold `n(e,l,b)`.
    pub b: Option<usize>,
    /// Number of channels `N`, when known.
    pub channels: Option<BigUint>,
}

impl ReconstructionParams {
    pub fn new(n: usize, e: usize, l: usize) -> Self {
        ReconstructionParams { n, e, l, h: None, a: None, r: None, m: None, b: None, channels: None }
    }

    pub fn t(&self) -> usize {
        self.e + self.l
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::param("n must be positive"));
        }
        if self.l == 0 {
            return Err(Error::param("l must be at least 1"));
        }
        if self.t() > self.n {
            return Err(Error::param(format!("t = e + l = {} exceeds n = {}", self.t(), self.n)));
        }
        if let Some(h) = self.h {
            if self.l < 2 || !(3..=self.l + 1).contains(&h) {
                return Err(Error::param(format!("h must lie in [3, l+1] with l >= 2, got h={h}, l={}", self.l)));
            }
        }
        if let Some(a) = self.a {
            if a >= self.l {
                return Err(Error::param(format!("a must lie in [0, l-1], got a={a}, l={}", self.l)));
            }
        }
        if self.m == Some(0) {
            return Err(Error::param("M must be at least 1"));
        }
        Ok(())
    }
}
