//! Error-correcting codes, linear covering codes and the `k[n,R]` search.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::combin::{ball_volume, binom, ColexCombinations};
use crate::error::{Error, Result};
use crate::hamming::{enumerate_ball, Word};

/// Largest length for which full-space sweeps (greedy scan, covering check) run.
pub const SWEEP_MAX_LEN: usize = 30;

/// A non-empty set of distinct words of a common length with its cached
/// minimum distance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CodeRepr", into = "CodeRepr")]
pub struct Code {
    n: usize,
    words: Vec<Word>,
    min_distance: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct CodeRepr {
    n: usize,
    codewords: Vec<Word>,
}

impl TryFrom<CodeRepr> for Code {
    type Error = Error;

    fn try_from(r: CodeRepr) -> Result<Code> {
        let c = Code::new(r.codewords)?;
        if c.n != r.n {
            return Err(Error::LengthMismatch(r.n, c.n));
        }
        Ok(c)
    }
}

impl From<Code> for CodeRepr {
    fn from(c: Code) -> CodeRepr {
        CodeRepr { n: c.n, codewords: c.words }
    }
}

impl Code {
    /// Build a code, rejecting empty input, mixed lengths and repeated words.
    pub fn new(words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut words: Vec<Word> = words.into_iter().collect();
        let n = words.first().ok_or_else(|| Error::param("a code needs at least one codeword"))?.len();
        if let Some(w) = words.iter().find(|w| w.len() != n) {
            return Err(Error::LengthMismatch(n, w.len()));
        }
        words.sort_unstable();
        if words.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::param("codewords must be distinct"));
        }
        let min_distance = pairwise_min(&words);
        Ok(Code { n, words, min_distance })
    }

    fn with_known_distance(n: usize, mut words: Vec<Word>, d: Option<usize>) -> Self {
        words.sort_unstable();
        Code { n, words, min_distance: d }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.binary_search(w).is_ok()
    }

    /// Exact minimum pairwise distance. A single-codeword code has none.
    pub fn min_distance(&self) -> Result<usize> {
        self.min_distance.ok_or(Error::SingletonCode)
    }

    /// `floor((d_min - 1) / 2)`. A single codeword corrects any pattern, so its
    /// capability is reported as `n`.
    pub fn capability(&self) -> usize {
        match self.min_distance {
            Some(d) => (d - 1) / 2,
            None => self.n,
        }
    }

    /// Parse the text format: one 0/1 word per line, an optional header
    /// `n=<int> d=<int>`, blank lines and `#` comments ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let (header, words) = parse_word_lines(text)?;
        let code = Code::new(words)?;
        if let Some((n, d)) = header {
            if n != code.n {
                return Err(Error::Parse(format!("header says n={n} but words have length {}", code.n)));
            }
            if let Some(d) = d {
                let actual = code.min_distance.unwrap_or(usize::MAX);
                if actual < d {
                    return Err(Error::Parse(format!("header claims d={d} but minimum distance is {actual}")));
                }
            }
        }
        Ok(code)
    }

    pub fn to_text(&self) -> String {
        let mut s = match self.min_distance {
            Some(d) => format!("n={} d={}\n", self.n, d),
            None => format!("n={}\n", self.n),
        };
        for w in &self.words {
            writeln!(s, "{w}").unwrap();
        }
        s
    }

    /// Reads the text format, or JSON when the file starts with `{`.
    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        if text.trim_start().starts_with('{') {
            return Ok(serde_json::from_str(&text)?);
        }
        Code::parse(&text)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

fn pairwise_min(words: &[Word]) -> Option<usize> {
    if words.len() < 2 {
        return None;
    }
    let mut best = usize::MAX;
    for (i, a) in words.iter().enumerate() {
        for b in &words[i + 1..] {
            if let Some(d) = a.dist_within(b, best.saturating_sub(1)) {
                best = d;
                if best == 1 {
                    return Some(1);
                }
            }
        }
    }
    Some(best)
}

type Header = Option<(usize, Option<usize>)>;

fn parse_word_lines(text: &str) -> Result<(Header, Vec<Word>)> {
    let mut header = None;
    let mut words = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.starts_with("n=") {
            if header.is_some() || !words.is_empty() {
                return Err(Error::Parse("header must precede the words".into()));
            }
            let mut n = None;
            let mut d = None;
            for tok in line.split_whitespace() {
                let (k, v) = tok.split_once('=').ok_or_else(|| Error::Parse(format!("bad header token {tok:?}")))?;
                let v: usize = v.parse().map_err(|_| Error::Parse(format!("bad header value {tok:?}")))?;
                match k {
                    "n" => n = Some(v),
                    "d" => d = Some(v),
                    _ => return Err(Error::Parse(format!("unknown header key {k:?}"))),
                }
            }
            header = Some((n.unwrap(), d));
            continue;
        }
        words.push(line.parse::<Word>().map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?);
    }
    Ok((header, words))
}

/// Bring `rows` to reduced row echelon form. Pivots are the lowest set coordinate of each row.
fn rref(rows: &[Word]) -> (Vec<Word>, Vec<usize>) {
    let mut basis: Vec<Word> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for &r in rows {
        let mut v = r;
        for (b, &p) in basis.iter().zip(&pivots) {
            if v.get(p) {
                v += *b;
            }
        }
        let lead = v.ones().next();
        if let Some(p) = lead {
            for b in basis.iter_mut() {
                if b.get(p) {
                    *b += v;
                }
            }
            basis.push(v);
            pivots.push(p);
        }
    }
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by_key(|&i| pivots[i]);
    (order.iter().map(|&i| basis[i]).collect(), order.iter().map(|&i| pivots[i]).collect())
}

/// A binary linear code given by independent generator rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LinearRepr")]
pub struct LinearCode {
    n: usize,
    rows: Vec<Word>,
}

#[derive(Deserialize)]
struct LinearRepr {
    n: usize,
    rows: Vec<Word>,
}

impl TryFrom<LinearRepr> for LinearCode {
    type Error = Error;

    fn try_from(r: LinearRepr) -> Result<Self> {
        LinearCode::new(r.n, r.rows)
    }
}

impl LinearCode {
    pub fn new(n: usize, rows: Vec<Word>) -> Result<Self> {
        Word::try_zero(n)?;
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch(n, r.len()));
        }
        if rref(&rows).0.len() != rows.len() {
            return Err(Error::param("generator rows are linearly dependent"));
        }
        if rows.len() > 30 {
            return Err(Error::param("dimension above 30 is not supported"));
        }
        Ok(LinearCode { n, rows })
    }

    /// The whole space `F^n` (dimension `n`).
    pub fn full_space(n: usize) -> Self {
        LinearCode { n, rows: (1..=n).map(|i| Word::unit(n, i)).collect() }
    }

    /// The repetition code of length `n`.
    pub fn repetition(n: usize) -> Self {
        LinearCode { n, rows: vec![Word::from_support(n, 1..=n)] }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Word] {
        &self.rows
    }

    /// All `2^k` codewords in Gray-code order starting at zero.
    pub fn codewords(&self) -> impl Iterator<Item = Word> + '_ {
        let k = self.rows.len();
        let mut cur = Word::zero(self.n);
        (0u64..1 << k).map(move |i| {
            if i > 0 {
                cur += self.rows[i.trailing_zeros() as usize];
            }
            cur
        })
    }

    /// Minimum weight over nonzero codewords.
    pub fn min_distance(&self) -> Result<usize> {
        self.codewords().skip(1).map(|c| c.weight()).min().ok_or(Error::SingletonCode)
    }

    pub fn to_code(&self) -> Code {
        let d = self.min_distance().ok();
        Code::with_known_distance(self.n, self.codewords().collect(), d)
    }

    /// Canonical representative of `u + D`: `u` reduced to zero on every pivot.
    pub fn coset_representative(&self, u: &Word) -> Word {
        let (basis, pivots) = rref(&self.rows);
        reduce(u, &basis, &pivots)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (header, rows) = parse_word_lines(text)?;
        let n = match (header, rows.first()) {
            (Some((n, _)), _) => n,
            (None, Some(r)) => r.len(),
            (None, None) => return Err(Error::Parse("generator file has no rows and no header".into())),
        };
        LinearCode::new(n, rows)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("n={}\n", self.n);
        for r in &self.rows {
            writeln!(s, "{r}").unwrap();
        }
        s
    }

    /// Reads the text format, or JSON when the file starts with `{`.
    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        if text.trim_start().starts_with('{') {
            return Ok(serde_json::from_str(&text)?);
        }
        LinearCode::parse(&text)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

fn reduce(u: &Word, basis: &[Word], pivots: &[usize]) -> Word {
    let mut v = *u;
    for (b, &p) in basis.iter().zip(pivots) {
        if v.get(p) {
            v += *b;
        }
    }
    v
}

/// One coset `u + D` with its canonical representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coset {
    pub representative: Word,
    pub words: Vec<Word>,
}

/// The `2^(n-k)` cosets of `D`, ordered by representative. Representatives
/// vanish on the pivot coordinates, so the order follows the bits on the free
/// coordinates (syndrome order).
pub fn cosets(d: &LinearCode) -> impl Iterator<Item = Coset> + '_ {
    let (_, pivots) = rref(&d.rows);
    let free: Vec<usize> = (1..=d.n).filter(|i| !pivots.contains(i)).collect();
    assert!(free.len() < 64, "too many cosets to enumerate");
    (0u64..1 << free.len()).map(move |mask| {
        let rep = Word::from_support(d.n, free.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &c)| c));
        let words = d.codewords().map(|c| c + rep).collect();
        Coset { representative: rep, words }
    })
}

/// Rank of a coset representative in [`cosets`] order.
pub fn coset_index(d: &LinearCode, rep: &Word) -> u64 {
    let (_, pivots) = rref(&d.rows);
    (1..=d.n)
        .filter(|i| !pivots.contains(i))
        .enumerate()
        .fold(0, |acc, (j, c)| acc | ((rep.get(c) as u64) << j))
}

/// Helper for repeated coset lookups against a fixed `D`.
#[derive(Debug, Clone)]
pub struct CosetIndexer {
    basis: Vec<Word>,
    pivots: Vec<usize>,
    free: Vec<usize>,
}

impl CosetIndexer {
    pub fn new(d: &LinearCode) -> Self {
        let (basis, pivots) = rref(&d.rows);
        let free = (1..=d.n).filter(|i| !pivots.contains(i)).collect();
        CosetIndexer { basis, pivots, free }
    }

    pub fn coset_count(&self) -> u64 {
        1 << self.free.len()
    }

    /// Index of the coset containing `u`, consistent with [`cosets`] order.
    pub fn index_of(&self, u: &Word) -> u64 {
        let r = reduce(u, &self.basis, &self.pivots);
        self.free.iter().enumerate().fold(0, |acc, (j, &c)| acc | ((r.get(c) as u64) << j))
    }
}

/// Seeded greedy (lexicode-style) construction: scan `F^n` and keep every word
/// at distance at least `d` from all kept words. Seed 0 scans in plain
/// lexicographic order; other seeds scan a translated, coordinate-permuted copy
/// of that order.
pub fn greedy_code(n: usize, d: usize, seed: u64) -> Result<Code> {
    if n == 0 || n > 24 {
        return Err(Error::param(format!("greedy construction supports 1 <= n <= 24, got {n}")));
    }
    if d == 0 || d > n {
        return Err(Error::param(format!("need 1 <= d <= n, got d={d}")));
    }
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    let mut perm: Vec<usize> = (0..n).collect();
    let mut shift = 0u64;
    if seed != 0 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        perm.shuffle(&mut rng);
        shift = rng.gen::<u64>() & ((1u64 << n) - 1);
    }
    // position j of the lex index carries coordinate j+1 (the leftmost symbol is the top bit)
    let to_bits = |lex: u64| -> u64 {
        let mut b = 0u64;
        for (j, &pj) in perm.iter().enumerate() {
            if lex >> (n - 1 - j) & 1 == 1 {
                b |= 1 << pj;
            }
        }
        b ^ shift
    };
    let flips: Vec<u64> = enumerate_ball(&Word::zero(n), d - 1)?.map(|w| w.low_bits()).collect();
    let mut forbidden = vec![0u64; (1usize << n).div_ceil(64)];
    let mut words = Vec::new();
    for lex in 0u64..1 << n {
        let b = to_bits(lex);
        if forbidden[(b / 64) as usize] >> (b % 64) & 1 == 1 {
            continue;
        }
        words.push(Word::from_u64(n, b));
        for f in &flips {
            let y = b ^ f;
            forbidden[(y / 64) as usize] |= 1 << (y % 64);
        }
    }
    Code::new(words)
}

/// The binary Hamming code of length `2^r - 1`. Coordinate `p` that is not a
/// power of two carries a data bit; its generator row also sets every parity
/// coordinate `2^b` with bit `b` set in `p`.
pub fn hamming_code(r: usize) -> Result<LinearCode> {
    if !(2..=9).contains(&r) {
        return Err(Error::param(format!("Hamming code order must be in [2, 9], got {r}")));
    }
    let n = (1usize << r) - 1;
    let rows = (1..=n)
        .filter(|p| !p.is_power_of_two())
        .map(|p| {
            let mut w = Word::unit(n, p);
            for b in 0..r {
                if p >> b & 1 == 1 {
                    w.set(1 << b, true);
                }
            }
            w
        })
        .collect();
    LinearCode::new(n, rows)
}

/// Whether every word of `F^n` lies within `radius` of a codeword, by
/// breadth-first search over the hypercube from the codewords.
pub fn is_r_covering(code: &Code, radius: usize) -> Result<bool> {
    let n = code.len();
    if n > SWEEP_MAX_LEN {
        return Err(Error::BudgetExceeded(format!("covering check needs n <= {SWEEP_MAX_LEN}, got {n}")));
    }
    let space = 1u64 << n;
    if radius < n && ball_volume(n, radius)? * code.size() < num_bigint::BigUint::from(space) {
        return Ok(false);
    }
    let mut seen = vec![0u64; (space as usize).div_ceil(64)];
    let mut frontier: VecDeque<u64> = VecDeque::new();
    let mut reached = 0u64;
    for w in code.words() {
        let b = w.low_bits();
        seen[(b / 64) as usize] |= 1 << (b % 64);
        frontier.push_back(b);
        reached += 1;
    }
    for _ in 0..radius {
        let mut next = VecDeque::new();
        for b in frontier {
            for i in 0..n {
                let y = b ^ (1 << i);
                let (q, r) = ((y / 64) as usize, y % 64);
                if seen[q] >> r & 1 == 0 {
                    seen[q] |= 1 << r;
                    next.push_back(y);
                    reached += 1;
                }
            }
        }
        frontier = next;
        if reached == space {
            break;
        }
    }
    Ok(reached == space)
}

/// Whether the syndromes reachable with at most `radius` columns cover `F^m`.
fn columns_cover(cols: &[u32], m: usize, radius: usize) -> bool {
    let space = 1usize << m;
    let mut seen = vec![false; space];
    seen[0] = true;
    let mut frontier = vec![0u32];
    let mut reached = 1;
    for _ in 0..radius {
        let mut next = Vec::new();
        for &s in &frontier {
            for &c in cols {
                let y = (s ^ c) as usize;
                if !seen[y] {
                    seen[y] = true;
                    next.push(y as u32);
                    reached += 1;
                }
            }
        }
        if reached == space || next.is_empty() {
            break;
        }
        frontier = next;
    }
    reached == space
}

const COVERING_SEARCH_BUDGET: u128 = 200_000_000;

/// `k[n,R]`: the smallest dimension of a linear `R`-covering code of length
/// `n`, with a witness.
///
/// Candidates are systematic generators `[I_k | A]`; the parity check matrix
/// is `[A^T | I]`, and since covering radius is invariant under column
/// permutation only nondecreasing sequences of the `k` columns of `A^T` are
/// tried. The code is `R`-covering iff every syndrome is a sum of at most `R`
/// columns. The search starts at the sphere-covering lower bound.
pub fn covering_dimension(n: usize, radius: usize) -> Result<(usize, LinearCode)> {
    if n == 0 || n > 16 {
        return Err(Error::BudgetExceeded(format!("covering dimension search supports 1 <= n <= 16, got {n}")));
    }
    if radius >= n {
        return Ok((0, LinearCode::new(n, vec![])?));
    }
    let vol = ball_volume(n, radius)?;
    let space = num_bigint::BigUint::from(1u64) << n;
    let mut k = 0;
    while (num_bigint::BigUint::from(1u64) << k) * &vol < space {
        k += 1;
    }
    for k in k..=n {
        let m = n - k;
        let cands = binom((1usize << m) + k - 1, k);
        if cands > COVERING_SEARCH_BUDGET.into() {
            return Err(Error::BudgetExceeded(format!("k={k} for n={n} needs {cands} candidate generators")));
        }
        let units: Vec<u32> = (0..m).map(|i| 1 << i).collect();
        // nondecreasing k-sequences over [0, 2^m) correspond to k-subsets of [0, 2^m + k - 1)
        for sub in ColexCombinations::new((1 << m) + k - 1, k) {
            let mut cols: Vec<u32> = sub.iter().enumerate().map(|(j, &v)| (v - j) as u32).collect();
            cols.extend(&units);
            if columns_cover(&cols, m, radius) {
                let rows = (0..k)
                    .map(|i| {
                        let mut w = Word::unit(n, i + 1);
                        for b in 0..m {
                            if cols[i] >> b & 1 == 1 {
                                w.set(k + b + 1, true);
                            }
                        }
                        w
                    })
                    .collect();
                return Ok((k, LinearCode::new(n, rows)?));
            }
        }
    }
    unreachable!("the full space covers with radius 0")
}

/// The unique codeword within `radius` of `w`, if any. Uniqueness holds only
/// for `radius <= e`, so larger radii are rejected.
pub fn decode_unique(code: &Code, w: &Word, radius: usize) -> Result<Option<Word>> {
    if w.len() != code.len() {
        return Err(Error::LengthMismatch(code.len(), w.len()));
    }
    if radius > code.capability() {
        return Err(Error::param(format!(
            "radius {radius} exceeds capability {}; use list_in_ball",
            code.capability()
        )));
    }
    Ok(code.words().iter().find(|c| c.dist_within(w, radius).is_some()).copied())
}

/// `C ∩ B_radius(u)` in code order.
pub fn list_in_ball(code: &Code, u: &Word, radius: usize) -> Result<Vec<Word>> {
    if u.len() != code.len() {
        return Err(Error::LengthMismatch(code.len(), u.len()));
    }
    Ok(code.words().iter().filter(|c| c.dist_within(u, radius).is_some()).copied().collect())
}

const BALL_COUNT_BUDGET: u128 = 4_000_000_000;

/// `M = max_u |B_radius(u) ∩ C|`, by scattering each codeword's ball into a
/// count table over `F^n`.
pub fn max_ball_count(code: &Code, radius: usize) -> Result<usize> {
    let n = code.len();
    if n > 22 {
        return Err(Error::BudgetExceeded(format!("max_ball_count needs n <= 22, got {n}")));
    }
    let radius = radius.min(n);
    let work = ball_volume(n, radius)? * code.size();
    if work > BALL_COUNT_BUDGET.into() {
        return Err(Error::BudgetExceeded(format!("max_ball_count would touch {work} cells")));
    }
    let flips: Vec<u64> = enumerate_ball(&Word::zero(n), radius)?.map(|w| w.low_bits()).collect();
    let mut counts = vec![0u32; 1 << n];
    for c in code.words() {
        let b = c.low_bits();
        for f in &flips {
            counts[(b ^ f) as usize] += 1;
        }
    }
    Ok(counts.into_iter().max().unwrap_or(0) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn code(ws: &[&str]) -> Code {
        Code::new(ws.iter().map(|s| s.parse().unwrap())).unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn min_distance_examples() {
        assert_eq!(code(&["000", "111"]).min_distance().unwrap(), 3);
        assert_eq!(code(&["00", "01"]).min_distance().unwrap(), 1);
        assert!(matches!(code(&["0101"]).min_distance(), Err(Error::SingletonCode)));
        assert_eq!(code(&["0101"]).capability(), 4);
        let h = hamming_code(3).unwrap();
        assert_eq!(h.to_code().min_distance().unwrap(), 3);
        // the cached linear shortcut agrees with the pairwise scan
        assert_eq!(Code::new(h.codewords()).unwrap().min_distance().unwrap(), 3);
    }

    #[test]
    fn code_construction_errors() {
        assert!(Code::new(Vec::<Word>::new()).is_err());
        assert!(Code::new([w("00"), w("00")]).is_err());
        assert!(matches!(Code::new([w("00"), w("000")]), Err(Error::LengthMismatch(2, 3))));
    }

    #[test]
    fn greedy_examples() {
        for seed in [0, 1, 7] {
            assert_eq!(greedy_code(3, 3, seed).unwrap().size(), 2);
            assert_eq!(greedy_code(5, 1, seed).unwrap().size(), 32);
        }
        assert!(greedy_code(7, 3, 0).unwrap().size() >= 16);
        assert_eq!(greedy_code(6, 2, 3).unwrap(), greedy_code(6, 2, 3).unwrap());
        assert!(greedy_code(4, 5, 0).is_err());
    }

    #[test]
    fn greedy_capability_grid() {
        for n in 1..=12 {
            for d in 1..=n {
                for seed in [0, 5] {
                    let c = greedy_code(n, d, seed).unwrap();
                    if c.size() > 1 {
                        assert!(c.min_distance().unwrap() >= d);
                    }
                    assert!(c.capability() >= (d - 1) / 2);
                    // maximal: every word is within d-1 of a codeword
                    assert!(is_r_covering(&c, d - 1).unwrap(), "n={n} d={d}");
                }
            }
        }
    }

    #[test]
    fn hamming_examples() {
        let h7 = hamming_code(3).unwrap();
        assert_eq!((h7.len(), h7.dimension()), (7, 4));
        assert!(is_r_covering(&h7.to_code(), 1).unwrap());
        let h3 = hamming_code(2).unwrap();
        assert_eq!(h3.to_code().words(), &[w("000"), w("111")]);
        let h15 = hamming_code(4).unwrap();
        assert_eq!(h15.dimension(), 11);
        assert_eq!(h15.min_distance().unwrap(), 3);
        assert!(is_r_covering(&h15.to_code(), 1).unwrap());
        assert!(hamming_code(1).is_err());
    }

    #[test]
    fn covering_examples() {
        assert!(is_r_covering(&LinearCode::full_space(5).to_code(), 0).unwrap());
        assert!(!is_r_covering(&code(&["0000000"]), 1).unwrap());
        assert!(is_r_covering(&code(&["000", "111"]), 1).unwrap());
    }

    #[test]
    fn covering_dimension_examples() {
        let expected = [((7, 1), 4), ((3, 1), 1), ((4, 1), 2), ((5, 1), 3), ((6, 1), 4), ((9, 2), 4)];
        for ((n, r), k) in expected {
            let (got, witness) = covering_dimension(n, r).unwrap();
            assert_eq!(got, k, "k[{n},{r}]");
            assert_eq!(witness.dimension(), k);
            assert!(is_r_covering(&witness.to_code(), r).unwrap());
        }
        for n in 1..=6 {
            assert_eq!(covering_dimension(n, 0).unwrap().0, n);
        }
        assert!(covering_dimension(17, 1).is_err());
    }

    #[test]
    fn coset_examples() {
        let d = LinearCode::repetition(2);
        let cs: Vec<Vec<String>> =
            cosets(&d).map(|c| c.words.iter().map(|w| w.to_string()).collect()).collect();
        assert_eq!(cs, vec![vec!["00", "11"], vec!["01", "10"]]);
        let h = hamming_code(3).unwrap();
        assert_eq!(cosets(&h).count(), 8);
    }

    #[test]
    fn cosets_partition_and_stay_covering() {
        for (n, r) in [(3, 1), (4, 1), (5, 1), (6, 1), (7, 1), (7, 2)] {
            let (_, d) = covering_dimension(n, r).unwrap();
            let idx = CosetIndexer::new(&d);
            let mut seen = std::collections::HashSet::new();
            for (i, c) in cosets(&d).enumerate() {
                assert_eq!(idx.index_of(&c.representative), i as u64);
                assert_eq!(coset_index(&d, &c.representative), i as u64);
                for w in &c.words {
                    assert!(seen.insert(*w));
                    assert_eq!(idx.index_of(w), i as u64);
                }
                assert!(is_r_covering(&Code::new(c.words.clone()).unwrap(), r).unwrap());
            }
            assert_eq!(seen.len(), 1 << n);
        }
    }

    #[test]
    fn decode_unique_examples() {
        let c = code(&["000", "111"]);
        assert_eq!(decode_unique(&c, &w("100"), 1).unwrap(), Some(w("000")));
        assert_eq!(decode_unique(&c, &w("110"), 1).unwrap(), Some(w("111")));
        assert_eq!(decode_unique(&c, &w("100"), 0).unwrap(), None);
        assert!(decode_unique(&c, &w("100"), 2).is_err());
    }

    #[test]
    fn decode_unique_exhaustive() {
        for c in [hamming_code(3).unwrap().to_code(), greedy_code(10, 5, 2).unwrap(), greedy_code(12, 3, 0).unwrap()] {
            let e = c.capability();
            for cw in c.words() {
                for y in enumerate_ball(cw, e).unwrap() {
                    assert_eq!(decode_unique(&c, &y, e).unwrap(), Some(*cw));
                }
            }
        }
    }

    #[test]
    fn ball_count_examples() {
        assert_eq!(max_ball_count(&code(&["000", "111"]), 1).unwrap(), 1);
        let h = hamming_code(3).unwrap().to_code();
        assert_eq!(max_ball_count(&h, 1).unwrap(), 1);
        assert_eq!(max_ball_count(&h, 2).unwrap(), 4);
        // brute force over all centers agrees
        let brute = (0u64..128).map(|u| list_in_ball(&h, &Word::from_u64(7, u), 2).unwrap().len()).max().unwrap();
        assert_eq!(brute, 4);
    }

    #[test]
    fn file_round_trip() {
        let c = greedy_code(8, 3, 4).unwrap();
        assert_eq!(Code::parse(&c.to_text()).unwrap(), c);
        let h = hamming_code(3).unwrap();
        assert_eq!(LinearCode::parse(&h.to_text()).unwrap(), h);
        assert!(Code::parse("n=3 d=3\n000\n011\n").is_err());
        assert!(Code::parse("n=4\n000\n111\n").is_err());
        assert!(Code::parse("000\n1x1\n").is_err());
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.txt");
        c.write(&p).unwrap();
        assert_eq!(Code::read(&p).unwrap(), c);
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<Code>(&json).unwrap(), c);
    }

    #[test]
    fn dependent_rows_rejected() {
        assert!(LinearCode::new(3, vec![w("110"), w("011"), w("101")]).is_err());
    }

    proptest! {
        #[test]
        fn span_has_expected_size(seed in any::<u64>()) {
            let c = greedy_code(9, 3, seed).unwrap();
            prop_assert!(c.min_distance().unwrap() >= 3);
            let (basis, _) = rref(c.words());
            let span = LinearCode::new(9, basis).unwrap();
            prop_assert_eq!(span.codewords().collect::<std::collections::HashSet<_>>().len(), 1 << span.dimension());
        }
    }
}
