//! Words of the binary Hamming space `F^n`, coordinate sets, and Hamming balls.
//!
//! Coordinates are 1-based throughout the public API. A [`Word`] is packed into
//! machine words so that distance is XOR plus popcount.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combin::{binom, Combinations};
use crate::error::{Error, Result};

/// Largest supported word length.
pub const MAX_LEN: usize = 512;
const LIMBS: usize = MAX_LEN / 64;

/// A fixed-length binary word. Coordinate `i` (1-based) lives in bit `i-1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Word {
    len: u16,
    limbs: [u64; LIMBS],
}

impl Word {
    /// The all-zero word of length `n`.
    pub fn zero(n: usize) -> Self {
        assert!((1..=MAX_LEN).contains(&n), "word length {n} outside [1, {MAX_LEN}]");
        Word { len: n as u16, limbs: [0; LIMBS] }
    }

    /// Checked constructor for the zero word.
    pub fn try_zero(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_LEN {
            return Err(Error::param(format!("word length {n} outside [1, {MAX_LEN}]")));
        }
        Ok(Self::zero(n))
    }

    /// The unit word `e_i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut w = Self::zero(n);
        w.set(i, true);
        w
    }

    /// Word whose support is the given 1-based coordinates.
    pub fn from_support<I: IntoIterator<Item = usize>>(n: usize, support: I) -> Self {
        let mut w = Self::zero(n);
        for i in support {
            w.set(i, true);
        }
        w
    }

    /// Word of length `n <= 64` from the low bits of `bits` (bit 0 is coordinate 1).
    pub fn from_u64(n: usize, bits: u64) -> Self {
        assert!(n <= 64);
        let mut w = Self::zero(n);
        w.limbs[0] = if n == 64 { bits } else { bits & ((1u64 << n) - 1) };
        w
    }

    /// Low 64 coordinates packed as an integer (coordinate 1 in bit 0).
    pub fn low_bits(&self) -> u64 {
        self.limbs[0]
    }

    #[inline]
    fn nlimbs(&self) -> usize {
        (self.len as usize).div_ceil(64)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i >= 1 && i <= self.len());
        let b = i - 1;
        (self.limbs[b / 64] >> (b % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        assert!(i >= 1 && i <= self.len(), "coordinate {i} outside [1, {}]", self.len);
        let b = i - 1;
        if v {
            self.limbs[b / 64] |= 1 << (b % 64);
        } else {
            self.limbs[b / 64] &= !(1 << (b % 64));
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i >= 1 && i <= self.len(), "coordinate {i} outside [1, {}]", self.len);
        let b = i - 1;
        self.limbs[b / 64] ^= 1 << (b % 64);
    }

    /// Hamming weight `|supp(w)|`.
    #[inline]
    pub fn weight(&self) -> usize {
        self.limbs[..self.nlimbs()].iter().map(|l| l.count_ones() as usize).sum()
    }

    /// Hamming distance. Panics on a length mismatch; see [`distance`] for the
    /// checked form.
    #[inline]
    pub fn dist(&self, other: &Word) -> usize {
        assert_eq!(self.len, other.len, "length mismatch");
        self.limbs[..self.nlimbs()]
            .iter()
            .zip(&other.limbs)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// Distance with early exit once it exceeds `bound`; returns `None` in that case.
    #[inline]
    pub fn dist_within(&self, other: &Word, bound: usize) -> Option<usize> {
        let mut acc = 0;
        for (a, b) in self.limbs[..self.nlimbs()].iter().zip(&other.limbs) {
            acc += (a ^ b).count_ones() as usize;
            if acc > bound {
                return None;
            }
        }
        Some(acc)
    }

    pub fn support(&self) -> CoordSet {
        CoordSet { elems: self.ones().map(|i| i as u16).collect() }
    }

    /// 1-based coordinates of the ones, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nlimbs()).flat_map(move |li| {
            let mut limb = self.limbs[li];
            std::iter::from_fn(move || {
                if limb == 0 {
                    return None;
                }
                let tz = limb.trailing_zeros() as usize;
                limb &= limb - 1;
                Some(li * 64 + tz + 1)
            })
        })
    }

    /// Restriction of this word to the coordinates of `coords`, packed so the
    /// first listed coordinate lands in bit 0.
    pub fn project(&self, coords: &[usize]) -> u64 {
        debug_assert!(coords.len() <= 64);
        coords
            .iter()
            .enumerate()
            .fold(0u64, |acc, (j, &c)| acc | ((self.get(c) as u64) << j))
    }

    /// ASCII 0/1 rendering, coordinate 1 leftmost.
    pub fn to_bit_string(&self) -> String {
        (1..=self.len()).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }
}

/// Checked Hamming distance.
pub fn distance(x: &Word, y: &Word) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    Ok(x.dist(y))
}

/// Hamming weight.
pub fn weight(w: &Word) -> usize {
    w.weight()
}

impl Add for Word {
    type Output = Word;

    fn add(mut self, rhs: Word) -> Word {
        self += rhs;
        self
    }
}

impl AddAssign for Word {
    fn add_assign(&mut self, rhs: Word) {
        assert_eq!(self.len, rhs.len, "length mismatch");
        for (a, b) in self.limbs.iter_mut().zip(rhs.limbs) {
            *a ^= b;
        }
    }
}

impl Ord for Word {
    /// Length first, then lexicographic on the 0/1 string.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for i in 0..self.nlimbs() {
                let (a, b) = (self.limbs[i].reverse_bits(), other.limbs[i].reverse_bits());
                match a.cmp(&b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self.to_bit_string())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut w = Word::try_zero(s.len())
            .map_err(|_| Error::Parse(format!("word {s:?} has unsupported length {}", s.len())))?;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => w.set(i + 1, true),
                other => return Err(Error::Parse(format!("invalid symbol {other:?} in word {s:?}"))),
            }
        }
        Ok(w)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_bit_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A set of coordinates of `[1, n]`, kept sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoordSet {
    elems: Vec<u16>,
}

impl CoordSet {
    /// Validating constructor.
    pub fn new(n: usize, coords: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut elems: Vec<u16> = Vec::new();
        for c in coords {
            if c == 0 || c > n {
                return Err(Error::param(format!("coordinate {c} outside [1, {n}]")));
            }
            elems.push(c as u16);
        }
        elems.sort_unstable();
        let before = elems.len();
        elems.dedup();
        if elems.len() != before {
            return Err(Error::param("duplicate coordinate"));
        }
        Ok(CoordSet { elems })
    }

    pub fn empty() -> Self {
        CoordSet::default()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.elems.binary_search(&(i as u16)).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.elems.iter().map(|&c| c as usize)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// The word of length `n` with this support.
    pub fn indicator(&self, n: usize) -> Word {
        Word::from_support(n, self.iter())
    }
}

/// Deterministic enumeration of `B_t(c)`: by weight of the error pattern, then
/// lexicographically on the flipped coordinates.
#[derive(Debug, Clone)]
pub struct BallIter {
    center: Word,
    radius: usize,
    weight: usize,
    inner: Combinations,
}

impl Iterator for BallIter {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        loop {
            if let Some(flips) = self.inner.next() {
                let mut w = self.center;
                for f in flips {
                    w.flip(f + 1);
                }
                return Some(w);
            }
            if self.weight >= self.radius {
                return None;
            }
            self.weight += 1;
            self.inner = Combinations::new(self.center.len(), self.weight);
        }
    }
}

/// Stream the words of `B_t(c)`. Errors when `t > n`.
pub fn enumerate_ball(center: &Word, t: usize) -> Result<BallIter> {
    if t > center.len() {
        return Err(Error::param(format!("ball radius {t} exceeds length {}", center.len())));
    }
    Ok(BallIter { center: *center, radius: t, weight: 0, inner: Combinations::new(center.len(), 0) })
}

/// Stream the words at distance exactly `r` from `c`.
pub fn enumerate_sphere(center: &Word, r: usize) -> impl Iterator<Item = Word> + '_ {
    Combinations::new(center.len(), r).map(move |flips| {
        let mut w = *center;
        for f in flips {
            w.flip(f + 1);
        }
        w
    })
}

/// Sampler for the uniform distribution on `B_t(c)`.
///
/// The error weight `r` is drawn with probability `C(n,r)/V(n,t)`, then a
/// uniform `r`-subset of coordinates is flipped.
#[derive(Debug, Clone)]
pub struct BallSampler {
    n: usize,
    t: usize,
    weights: WeightedIndex<f64>,
}

impl BallSampler {
    pub fn new(n: usize, t: usize) -> Result<Self> {
        if t > n {
            return Err(Error::param(format!("ball radius {t} exceeds length {n}")));
        }
        // f64 holds C(512, r) comfortably; relative weights are all that matter
        let ws: Vec<f64> = (0..=t).map(|r| num_traits::ToPrimitive::to_f64(&binom(n, r)).unwrap()).collect();
        let weights = WeightedIndex::new(ws).map_err(|e| Error::param(e.to_string()))?;
        Ok(BallSampler { n, t, weights })
    }

    pub fn radius(&self) -> usize {
        self.t
    }

    /// Draw the error pattern (a word of weight at most `t`).
    pub fn sample_error<R: Rng + ?Sized>(&self, rng: &mut R) -> Word {
        let r = self.weights.sample(rng);
        Self::exact_error(self.n, r, rng)
    }

    /// Uniform error pattern of weight exactly `r`.
    pub fn exact_error<R: Rng + ?Sized>(n: usize, r: usize, rng: &mut R) -> Word {
        let mut e = Word::zero(n);
        for i in rand::seq::index::sample(rng, n, r) {
            e.set(i + 1, true);
        }
        e
    }

    pub fn sample<R: Rng + ?Sized>(&self, center: &Word, rng: &mut R) -> Word {
        *center + self.sample_error(rng)
    }
}

/// One uniform draw from `B_t(c)`. Callers drawing many samples should hold a
/// [`BallSampler`] instead.
pub fn sample_ball_uniform<R: Rng + ?Sized>(center: &Word, t: usize, rng: &mut R) -> Result<Word> {
    Ok(BallSampler::new(center.len(), t)?.sample(center, rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::ball_volume;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight(&w("0000")), 0);
        assert_eq!(weight(&w("1011")), 3);
        for n in [1, 7, 64, 65, 300] {
            for i in [1, n / 2 + 1, n] {
                assert_eq!(Word::unit(n, i).weight(), 1);
            }
        }
    }

    #[test]
    fn distance_examples() {
        assert_eq!(distance(&w("0000"), &w("1010")).unwrap(), 2);
        assert_eq!(distance(&w("0110"), &w("0110")).unwrap(), 0);
        assert_eq!(distance(&w("0110"), &w("1001")).unwrap(), 4);
        assert!(matches!(distance(&w("01"), &w("011")), Err(Error::LengthMismatch(2, 3))));
    }

    #[test]
    fn string_round_trip_and_order() {
        let x = w("1000000000000000000000000000000000000000000000000000000000000000001");
        assert_eq!(x.len(), 67);
        assert_eq!(x.to_string().parse::<Word>().unwrap(), x);
        assert_eq!(x.support().to_vec(), vec![1, 67]);
        let mut v = [w("011"), w("100"), w("001"), w("010")];
        v.sort();
        let s: Vec<String> = v.iter().map(|w| w.to_string()).collect();
        assert_eq!(s, ["001", "010", "011", "100"]);
        assert!("01a".parse::<Word>().is_err());
        assert!("".parse::<Word>().is_err());
    }

    #[test]
    fn coordset_validation() {
        assert!(CoordSet::new(4, [1, 4]).is_ok());
        assert!(CoordSet::new(4, [0]).is_err());
        assert!(CoordSet::new(4, [5]).is_err());
        assert!(CoordSet::new(4, [2, 2]).is_err());
        assert_eq!(CoordSet::new(5, [4, 2]).unwrap().to_vec(), vec![2, 4]);
    }

    #[test]
    fn ball_enumeration_examples() {
        let b: Vec<String> = enumerate_ball(&w("00"), 0).unwrap().map(|w| w.to_string()).collect();
        assert_eq!(b, ["00"]);
        let b: Vec<String> = enumerate_ball(&w("000"), 1).unwrap().map(|w| w.to_string()).collect();
        assert_eq!(b, ["000", "100", "010", "001"]);
        assert_eq!(enumerate_ball(&Word::zero(10), 3).unwrap().count(), 176);
        assert!(enumerate_ball(&w("00"), 3).is_err());
    }

    #[test]
    fn exhaustive_distance_is_weight_of_sum() {
        for n in 1..=12usize {
            for a in 0u64..(1 << n) {
                let x = Word::from_u64(n, a);
                // a strided subset of partners keeps this linear-ish in 2^n
                for b in (0u64..(1 << n)).step_by(((1 << n) / 64).max(1)) {
                    let y = Word::from_u64(n, b);
                    assert_eq!(x.dist(&y), (x + y).weight());
                    assert_eq!(x.dist(&y), (a ^ b).count_ones() as usize);
                }
            }
        }
    }

    #[test]
    fn exhaustive_translation_invariance() {
        for n in 1..=10usize {
            let step = ((1u64 << n) / 32).max(1) as usize;
            for a in (0u64..(1 << n)).step_by(step) {
                for b in (0u64..(1 << n)).step_by(step) {
                    for s in 0u64..(1 << n) {
                        let (x, y, s) = (Word::from_u64(n, a), Word::from_u64(n, b), Word::from_u64(n, s));
                        assert_eq!((x + s).dist(&(y + s)), x.dist(&y));
                    }
                }
            }
        }
    }

    #[test]
    fn ball_count_matches_volume() {
        for n in 1..=14usize {
            let c = Word::from_u64(n, 0b1011 & ((1 << n) - 1));
            for t in 0..=n {
                let words: Vec<Word> = enumerate_ball(&c, t).unwrap().collect();
                let distinct: HashSet<_> = words.iter().collect();
                assert_eq!(distinct.len(), words.len());
                assert!(words.iter().all(|y| y.dist(&c) <= t));
                assert_eq!(num_bigint::BigUint::from(words.len()), ball_volume(n, t).unwrap());
            }
        }
    }

    #[test]
    fn sample_radius_zero_is_center() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = w("10110");
        for _ in 0..100 {
            assert_eq!(sample_ball_uniform(&c, 0, &mut rng).unwrap(), c);
        }
    }

    #[test]
    fn sample_full_ball_n2_is_uniform() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let sampler = BallSampler::new(2, 2).unwrap();
        let c = Word::zero(2);
        let mut counts = [0usize; 4];
        let draws = 1_000_000;
        for _ in 0..draws {
            counts[sampler.sample(&c, &mut rng).low_bits() as usize] += 1;
        }
        for c in counts {
            let f = c as f64 / draws as f64;
            assert!((f - 0.25).abs() < 0.005, "frequency {f}");
        }
    }

    #[test]
    fn sample_mean_distance_n28_t5() {
        let (n, t) = (28, 5);
        let vol = ball_volume(n, t).unwrap();
        let num: num_bigint::BigUint = (0..=t).map(|r| binom(n, r) * r).sum();
        let exact = crate::combin::ratio_to_f64(&num, &vol);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let sampler = BallSampler::new(n, t).unwrap();
        let c = Word::zero(n);
        let draws = 100_000;
        let total: usize = (0..draws).map(|_| sampler.sample(&c, &mut rng).weight()).sum();
        let mean = total as f64 / draws as f64;
        assert!((mean - exact).abs() < 0.01, "mean {mean} vs {exact}");
    }

    /// Chi-square goodness of fit against the uniform law on `B_t(c)`.
    #[test]
    fn sample_chi_square_uniform() {
        // upper 0.001 quantiles of chi-square for the degrees of freedom used below
        fn critical(df: usize) -> f64 {
            use statrs::distribution::{ChiSquared, ContinuousCDF};
            ChiSquared::new(df as f64).unwrap().inverse_cdf(0.999)
        }
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let draws = 1_000_000usize;
        for (n, t) in [(4, 1), (6, 2), (8, 3), (10, 2), (10, 3)] {
            let c = Word::from_u64(n, 0b0110);
            let ball: Vec<Word> = enumerate_ball(&c, t).unwrap().collect();
            let index: std::collections::HashMap<Word, usize> =
                ball.iter().enumerate().map(|(i, w)| (*w, i)).collect();
            let sampler = BallSampler::new(n, t).unwrap();
            let mut counts = vec![0usize; ball.len()];
            for _ in 0..draws {
                counts[index[&sampler.sample(&c, &mut rng)]] += 1;
            }
            let expected = draws as f64 / ball.len() as f64;
            let chi2: f64 = counts.iter().map(|&o| (o as f64 - expected).powi(2) / expected).sum();
            assert!(chi2 < critical(ball.len() - 1), "n={n} t={t} chi2={chi2}");
        }
    }

    proptest! {
        #[test]
        fn triangle_and_symmetry(a in any::<u64>(), b in any::<u64>(), c in any::<u64>(), n in 1usize..=64) {
            let (x, y, z) = (Word::from_u64(n, a), Word::from_u64(n, b), Word::from_u64(n, c));
            prop_assert_eq!(x.dist(&y), y.dist(&x));
            prop_assert!(x.dist(&z) <= x.dist(&y) + y.dist(&z));
        }

        #[test]
        fn parse_display_round_trip(bits in proptest::collection::vec(any::<bool>(), 1..300)) {
            let s: String = bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
            let w: Word = s.parse().unwrap();
            prop_assert_eq!(w.to_string(), s);
            prop_assert_eq!(w.weight(), bits.iter().filter(|&&b| b).count());
        }
    }
}
