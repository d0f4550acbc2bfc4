//! The majority-vote decoder and its post-hoc verification radius.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::channel::OutputBatch;
use crate::codes::{decode_unique, list_in_ball, Code};
use crate::error::{Error, Result};
use crate::hamming::Word;

/// A word over `{0, 1, ?}`: `unknown` marks tied coordinates, `bits` holds the rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TernaryWord {
    bits: Word,
    unknown: Word,
}

impl TernaryWord {
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// `Some(bit)` or `None` for `?`.
    pub fn get(&self, i: usize) -> Option<bool> {
        (!self.unknown.get(i)).then(|| self.bits.get(i))
    }

    pub fn has_unknown(&self) -> bool {
        self.unknown.weight() > 0
    }

    /// Replace every `?` by `fill`.
    pub fn resolve(&self, fill: bool) -> Word {
        if fill {
            self.bits + self.unknown
        } else {
            self.bits
        }
    }

    /// The binary word when there are no ties.
    pub fn as_word(&self) -> Option<Word> {
        (!self.has_unknown()).then_some(self.bits)
    }

    /// Reporting distance: a `?` mismatches both symbols.
    pub fn distance_to(&self, x: &Word) -> usize {
        (1..=self.len())
            .filter(|&i| self.get(i).is_none_or(|b| b != x.get(i)))
            .count()
    }
}

impl fmt::Display for TernaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (1..=self.len())
            .map(|i| match self.get(i) {
                None => '?',
                Some(true) => '1',
                Some(false) => '0',
            })
            .collect();
        f.write_str(&s)
    }
}

impl FromStr for TernaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut bits = Word::try_zero(s.len()).map_err(|_| Error::Parse(format!("bad ternary word {s:?}")))?;
        let mut unknown = bits;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits.set(i + 1, true),
                '?' => unknown.set(i + 1, true),
                other => return Err(Error::Parse(format!("invalid symbol {other:?} in {s:?}"))),
            }
        }
        Ok(TernaryWord { bits, unknown })
    }
}

impl Serialize for TernaryWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TernaryWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Per-coordinate vote counts and the majority word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MajorityResult {
    pub z: TernaryWord,
    /// `m_{i,0}`: outputs with a 0 at coordinate `i`.
    pub zero_counts: Vec<u32>,
    /// `m_i = min(m_{i,0}, m_{i,1})`.
    pub minority: Vec<u32>,
    pub channels: u32,
}

impl MajorityResult {
    /// Build from the number of ones per coordinate among `channels` outputs.
    pub fn from_one_counts(channels: u32, ones: &[u32]) -> Self {
        let n = ones.len();
        let mut bits = Word::zero(n);
        let mut unknown = Word::zero(n);
        let mut zero_counts = Vec::with_capacity(n);
        let mut minority = Vec::with_capacity(n);
        for (i, &one) in ones.iter().enumerate() {
            let zero = channels - one;
            match one.cmp(&zero) {
                std::cmp::Ordering::Greater => bits.set(i + 1, true),
                std::cmp::Ordering::Equal => unknown.set(i + 1, true),
                std::cmp::Ordering::Less => {}
            }
            zero_counts.push(zero);
            minority.push(one.min(zero));
        }
        MajorityResult { z: TernaryWord { bits, unknown }, zero_counts, minority, channels }
    }
}

/// Coordinate-wise majority over the outputs; `Θ(N n)`.
pub fn majority_vote(y: &OutputBatch) -> Result<MajorityResult> {
    if y.is_empty() {
        return Err(Error::param("majority vote needs at least one output"));
    }
    let mut ones = vec![0u32; y.n];
    for o in &y.outputs {
        for i in o.ones() {
            ones[i - 1] += 1;
        }
    }
    Ok(MajorityResult::from_one_counts(y.outputs.len() as u32, &ones))
}

/// Smallest `k in [1, n]` with
/// `sum_{i<=k+1} (N - m'_i) + sum_{i>=k+2} m'_i > tN`, where `m'` is the
/// minority counts sorted in decreasing order. When it exists, `d(x, z) <= k`
/// for the transmitted `x`. The left side is nondecreasing in `k`.
pub fn verify_radius(r: &MajorityResult, t: usize) -> Option<usize> {
    let mut m: Vec<u64> = r.minority.iter().map(|&v| v as u64).collect();
    m.sort_unstable_by(|a, b| b.cmp(a));
    verify_radius_sorted(&m, r.channels as u64, t as u64)
}

/// [`verify_radius`] on minority counts already sorted in decreasing order.
pub fn verify_radius_sorted(m: &[u64], channels: u64, t: u64) -> Option<usize> {
    let target = t * channels;
    let mut lhs: u64 = m.iter().sum();
    // after adding term i the left block holds i+1 coordinates, i.e. k = i
    for (i, &mi) in m.iter().enumerate() {
        lhs += channels - 2 * mi;
        if lhs > target && (i >= 1 || m.len() == 1) {
            return Some(i.max(1));
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum VerifiedOutcome {
    UniqueVerified { word: Word, k: usize },
    ListVerified { words: Vec<Word>, k: usize },
    Unverified { z: TernaryWord },
}

/// Majority vote, then decode according to the verification radius `k`:
/// `k <= e` decodes `z` uniquely, `k > e` lists `C ∩ B_k(z)`. Ties resolve to 0.
pub fn verified_decode(code: &Code, y: &OutputBatch, t: usize) -> Result<(MajorityResult, VerifiedOutcome)> {
    if y.n != code.len() {
        return Err(Error::LengthMismatch(code.len(), y.n));
    }
    let r = majority_vote(y)?;
    let z = r.z.resolve(false);
    let e = code.capability();
    let out = match verify_radius(&r, t) {
        Some(k) if k <= e => match decode_unique(code, &z, e)? {
            Some(word) => VerifiedOutcome::UniqueVerified { word, k },
            None => {
                return Err(Error::ChannelContract(format!(
                    "verified radius {k} <= e but no codeword lies within {e} of z"
                )))
            }
        },
        Some(k) => VerifiedOutcome::ListVerified { words: list_in_ball(code, &z, k)?, k },
        None => VerifiedOutcome::Unverified { z: r.z },
    };
    Ok((r, out))
}
