//! Brute-force ground truth `N'(n,l,e,h)`: the largest `|⋂ B_t(c_i)|` over
//! `h` codewords with pairwise distances at least `2e+1`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::intersection_size;
use crate::combin::binom;
use crate::error::{Error, Result};
use crate::hamming::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleMode {
    /// Every configuration up to translation and coordinate permutation.
    Exhaustive,
    /// Disjoint supports of weight `e` or `e+1` around a center, then a seeded
    /// local search. Gives a lower bound on the true maximum.
    Structured,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub value: u64,
    pub mode: OracleMode,
    pub configurations: u64,
    pub witness: Vec<Word>,
}

#[derive(Debug, Clone, Copy)]
pub struct OracleOptions {
    /// Largest number of column-type compositions examined exhaustively.
    pub exhaustive_budget: u64,
    pub local_search_steps: usize,
    pub seed: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { exhaustive_budget: 2_000_000, local_search_steps: 4_000, seed: 0 }
    }
}

pub fn oracle_nprime(n: usize, e: usize, l: usize, h: usize) -> Result<OracleResult> {
    oracle_nprime_with(n, e, l, h, OracleOptions::default())
}

fn admissible(ws: &[Word], e: usize, t: usize) -> bool {
    ws.iter().enumerate().all(|(i, a)| {
        ws[i + 1..].iter().all(|b| {
            let d = a.dist(b);
            d > 2 * e && d <= 2 * t
        })
    })
}

/// Build `c_1 = 0, c_2..c_h` from counts of each column type; type `ty`'s bit
/// `j` says whether `c_{j+2}` has a one in that column.
fn materialize(n: usize, h: usize, counts: &[usize]) -> Vec<Word> {
    let mut ws = vec![Word::zero(n); h];
    let mut col = 1;
    for (ty, &c) in counts.iter().enumerate() {
        for _ in 0..c {
            for j in 0..h - 1 {
                if ty >> j & 1 == 1 {
                    ws[j + 1].set(col, true);
                }
            }
            col += 1;
        }
    }
    ws
}

fn compositions(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut dyn FnMut(&[usize])) {
    if parts == 1 {
        prefix.push(total);
        out(prefix);
        prefix.pop();
        return;
    }
    for i in 0..=total {
        prefix.push(i);
        compositions(total - i, parts - 1, prefix, out);
        prefix.pop();
    }
}

pub fn oracle_nprime_with(n: usize, e: usize, l: usize, h: usize, opts: OracleOptions) -> Result<OracleResult> {
    if h == 0 || l == 0 {
        return Err(Error::param("need h >= 1 and l >= 1"));
    }
    let t = e + l;
    if t > n {
        return Err(Error::param(format!("t = {t} exceeds n = {n}")));
    }
    if h > 12 {
        return Err(Error::BudgetExceeded(format!("h = {h} is too many codewords")));
    }
    Word::try_zero(n)?;
    let types = 1usize << (h - 1);
    let count = binom(n + types - 1, types - 1);
    if count <= opts.exhaustive_budget.into() {
        exhaustive(n, e, t, h, types)
    } else {
        structured(n, e, t, h, opts)
    }
}

fn exhaustive(n: usize, e: usize, t: usize, h: usize, types: usize) -> Result<OracleResult> {
    // split on the count of the all-zero column type
    let per_first: Vec<Result<(u64, u64, Vec<Word>)>> = (0..=n)
        .into_par_iter()
        .map(|first| {
            let mut best = (0u64, 0u64, Vec::new());
            let mut err = None;
            let mut prefix = vec![first];
            if types == 1 {
                if first != n {
                    return Ok(best);
                }
                let ws = materialize(n, h, &[n]);
                best = (intersection_size(&ws, t)? as u64, 1, ws);
                return Ok(best);
            }
            compositions(n - first, types - 1, &mut prefix, &mut |counts| {
                if err.is_some() {
                    return;
                }
                best.1 += 1;
                let ws = materialize(n, h, counts);
                if !admissible(&ws, e, t) {
                    return;
                }
                match intersection_size(&ws, t) {
                    Ok(v) if v as u64 > best.0 || best.2.is_empty() => best = (v as u64, best.1, ws),
                    Ok(_) => {}
                    Err(x) => err = Some(x),
                }
            });
            match err {
                Some(x) => Err(x),
                None => Ok(best),
            }
        })
        .collect();
    let mut value = 0;
    let mut configurations = 0;
    let mut witness = Vec::new();
    // first strict maximum in split order keeps the witness deterministic
    for r in per_first {
        let (v, c, w) = r?;
        configurations += c;
        if !w.is_empty() && (witness.is_empty() || v > value) {
            value = v;
            witness = w;
        }
    }
    Ok(OracleResult { value, mode: OracleMode::Exhaustive, configurations, witness })
}

fn structured(n: usize, e: usize, t: usize, h: usize, opts: OracleOptions) -> Result<OracleResult> {
    let mut best: Option<(u64, Vec<Word>)> = None;
    let mut configurations = 0u64;
    // at most one codeword may sit at distance e from the center, or two would be 2e apart
    for light in 0..=1usize.min(h) {
        let weights: Vec<usize> = (0..h).map(|j| if j < light { e } else { e + 1 }).collect();
        if weights.iter().sum::<usize>() > n {
            continue;
        }
        let mut ws = Vec::with_capacity(h);
        let mut col = 1;
        for &w in &weights {
            ws.push(Word::from_support(n, col..col + w));
            col += w;
        }
        configurations += 1;
        if !admissible(&ws, e, t) {
            continue;
        }
        let v = intersection_size(&ws, t)? as u64;
        if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
            best = Some((v, ws));
        }
    }
    let Some((mut value, mut witness)) = best else {
        return Ok(OracleResult { value: 0, mode: OracleMode::Structured, configurations, witness: vec![] });
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut cur = witness.clone();
    let mut cur_v = value;
    let coords: Vec<usize> = (1..=n).collect();
    for _ in 0..opts.local_search_steps {
        let mut cand = cur.clone();
        let j = rng.gen_range(0..h);
        let flips = rng.gen_range(1..=2);
        for &c in coords.choose_multiple(&mut rng, flips) {
            cand[j].flip(c);
        }
        configurations += 1;
        if !admissible(&cand, e, t) {
            continue;
        }
        let v = intersection_size(&cand, t)? as u64;
        if v >= cur_v {
            cur = cand;
            cur_v = v;
            if v > value {
                value = v;
                witness = cur.clone();
            }
        }
    }
    Ok(OracleResult { value, mode: OracleMode::Structured, configurations, witness })
}
