//! List decoders: the exact intersection `T(Y)`, the shattering decoder and
//! the covering-code decoder.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::channel::OutputBatch;
use crate::codes::{decode_unique, is_r_covering, list_in_ball, Code, CosetIndexer, LinearCode};
use crate::combin::{ball_volume, ball_volume_clamped, ColexCombinations};
use crate::error::{Error, Result};
use crate::hamming::{CoordSet, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecoderKind {
    Naive,
    Shatter,
    Covering,
    BallUnion,
}

/// Evidence behind a structural decoder's output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Shattered {
        set: CoordSet,
        outputs: Vec<Word>,
        centers: Vec<Word>,
    },
    Covering {
        set: CoordSet,
        /// Representative of the coset of `D` found in the projection, as a word of length `l + 2R`.
        coset: Word,
        outputs: Vec<Word>,
        centers: Vec<Word>,
    },
    Centers {
        centers: Vec<Word>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateList {
    pub candidates: Vec<Word>,
    pub decoder: DecoderKind,
    pub certificate: Option<Certificate>,
}

impl CandidateList {
    fn new(mut candidates: Vec<Word>, decoder: DecoderKind, certificate: Option<Certificate>) -> Self {
        candidates.sort_unstable();
        candidates.dedup();
        CandidateList { candidates, decoder, certificate }
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.candidates.binary_search(w).is_ok()
    }
}

fn check_batch(code: &Code, y: &OutputBatch) -> Result<()> {
    if y.n != code.len() {
        return Err(Error::LengthMismatch(code.len(), y.n));
    }
    Ok(())
}

/// `T(Y) = C ∩ ⋂_{y∈Y} B_t(y)`.
pub fn intersect_list(code: &Code, y: &OutputBatch, t: usize) -> Result<CandidateList> {
    check_batch(code, y)?;
    let ys = y.distinct_outputs();
    let cands = code
        .words()
        .iter()
        .filter(|c| ys.iter().all(|o| o.dist_within(c, t).is_some()))
        .copied()
        .collect();
    Ok(CandidateList::new(cands, DecoderKind::Naive, None))
}

/// A shattered coordinate set with one output realizing each pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shattering {
    pub set: CoordSet,
    /// `outputs[p]` has pattern `p` on the set; bit `j` of `p` is the `j`-th smallest coordinate.
    pub outputs: Vec<Word>,
}

/// Largest subset size the shattering search accepts.
pub const MAX_SHATTER_K: usize = 20;

/// The colex-first set `S` of `k` coordinates on which the projections of
/// `ys` realize all `2^k` patterns. Sauer–Shelah guarantees one whenever
/// `|ys| >= V(n, k-1) + 1`.
pub fn find_shattered_set(ys: &[Word], k: usize) -> Result<Option<Shattering>> {
    let Some(first) = ys.first() else {
        return Ok(None);
    };
    let n = first.len();
    if let Some(y) = ys.iter().find(|y| y.len() != n) {
        return Err(Error::LengthMismatch(n, y.len()));
    }
    if k > n {
        return Err(Error::param(format!("k={k} exceeds n={n}")));
    }
    if k > MAX_SHATTER_K {
        return Err(Error::BudgetExceeded(format!("shattering search supports k <= {MAX_SHATTER_K}")));
    }
    if ys.len() < 1 << k {
        return Ok(None);
    }
    let full = 1usize << k;
    let mut slot: Vec<u32> = vec![u32::MAX; full];
    for sub in ColexCombinations::new(n, k) {
        let coords: Vec<usize> = sub.iter().map(|c| c + 1).collect();
        slot.fill(u32::MAX);
        let mut hit = 0;
        for (i, y) in ys.iter().enumerate() {
            let p = y.project(&coords) as usize;
            if slot[p] == u32::MAX {
                slot[p] = i as u32;
                hit += 1;
                if hit == full {
                    break;
                }
            }
        }
        if hit == full {
            let outputs = slot.iter().map(|&i| ys[i as usize]).collect();
            return Ok(Some(Shattering { set: CoordSet::new(n, coords)?, outputs }));
        }
    }
    Ok(None)
}

fn excess(code: &Code, t: usize) -> Result<usize> {
    let e = code.capability();
    if t <= e {
        return Err(Error::param(format!("t={t} <= e={e}: a single channel already decodes uniquely")));
    }
    Ok(t - e)
}

fn require_distinct(have: usize, required: BigUint) -> Result<()> {
    if BigUint::from(have) < required {
        return Err(Error::ThresholdUnmet { required: required.to_string(), have });
    }
    Ok(())
}

/// The shattering decoder. With `l = t - e` and `k = l - a`, a set `S` of `k`
/// coordinates shattered by `Y` gives `2^k` outputs `y_i`; the centers
/// `β_i = y_i + s` (with `supp(s) = S`) put `x` within `e + a` of some `β_i`.
/// The list is `⋃ C ∩ B_{e+a}(β_i)`, of size at most `2^k · M`.
pub fn shatter_decode(code: &Code, y: &OutputBatch, t: usize, a: usize) -> Result<CandidateList> {
    check_batch(code, y)?;
    let l = excess(code, t)?;
    if a >= l {
        return Err(Error::param(format!("need 0 <= a <= l-1 = {}, got a={a}", l - 1)));
    }
    let (n, e, k) = (code.len(), code.capability(), l - a);
    let ys = y.distinct_outputs();
    require_distinct(ys.len(), ball_volume(n, k - 1)? + 1u32)?;
    let sh = find_shattered_set(&ys, k)?
        .ok_or_else(|| Error::NoWitness(format!("no shattered {k}-set among {} distinct outputs", ys.len())))?;
    let s = sh.set.indicator(n);
    let centers: Vec<Word> = sh.outputs.iter().map(|o| *o + s).collect();
    let mut cands = Vec::new();
    for b in &centers {
        cands.extend(list_in_ball(code, b, e + a)?);
    }
    let cert = Certificate::Shattered { set: sh.set, outputs: sh.outputs, centers };
    Ok(CandidateList::new(cands, DecoderKind::Shatter, Some(cert)))
}

/// Smallest number of distinct outputs the covering decoder accepts:
/// `V(n, l+2R-1) - 2^(l+2R-dim D) + 2`.
pub fn covering_threshold(n: usize, m: usize, dim: usize) -> BigUint {
    let v = ball_volume_clamped(n as i64, m as i64 - 1) + 2u32;
    let cosets = BigUint::from(1u32) << (m - dim);
    if v > cosets {
        v - cosets
    } else {
        BigUint::from(0u32)
    }
}

/// The covering-code decoder. `D` is an `R`-covering linear code of length
/// `m = l + 2R`. Some set `S` of `m` coordinates has a coset `u + D` entirely
/// inside the projection of `Y`; the outputs realizing the coset give centers
/// `β_i = y_i + s`, one of which lies within `e` of `x`. The list has at most
/// `2^(dim D)` words.
pub fn covering_decode(code: &Code, y: &OutputBatch, t: usize, radius: usize, d: &LinearCode) -> Result<CandidateList> {
    check_batch(code, y)?;
    let l = excess(code, t)?;
    let (n, e) = (code.len(), code.capability());
    let m = l + 2 * radius;
    if d.len() != m {
        return Err(Error::param(format!("D must have length l + 2R = {m}, got {}", d.len())));
    }
    if m > n {
        return Err(Error::param(format!("l + 2R = {m} exceeds n = {n}")));
    }
    if d.dimension() == m && radius > 0 {
        return Err(Error::param("D is the full space; use the shattering decoder"));
    }
    if m > 24 {
        return Err(Error::BudgetExceeded(format!("covering search supports l + 2R <= 24, got {m}")));
    }
    if !is_r_covering(&d.to_code(), radius)? {
        return Err(Error::param(format!("D is not {radius}-covering")));
    }
    let ys = y.distinct_outputs();
    require_distinct(ys.len(), covering_threshold(n, m, d.dimension()))?;

    let indexer = CosetIndexer::new(d);
    let per_coset = 1usize << d.dimension();
    let ncosets = indexer.coset_count() as usize;
    let mut first_output: Vec<u32> = vec![u32::MAX; 1 << m];
    let mut fill: Vec<usize> = vec![0; ncosets];
    let mut coset_of: Vec<u32> = Vec::with_capacity(1 << m);
    for p in 0u64..1 << m {
        coset_of.push(indexer.index_of(&Word::from_u64(m, p)) as u32);
    }
    for sub in ColexCombinations::new(n, m) {
        let coords: Vec<usize> = sub.iter().map(|c| c + 1).collect();
        first_output.fill(u32::MAX);
        fill.fill(0);
        for (i, o) in ys.iter().enumerate() {
            let p = o.project(&coords) as usize;
            if first_output[p] == u32::MAX {
                first_output[p] = i as u32;
                fill[coset_of[p] as usize] += 1;
            }
        }
        let Some(ci) = fill.iter().position(|&f| f == per_coset) else {
            continue;
        };
        let set = CoordSet::new(n, coords)?;
        let s = set.indicator(n);
        let members: Vec<u64> = (0u64..1 << m).filter(|&p| coset_of[p as usize] as usize == ci).collect();
        let rep = Word::from_u64(m, members[0]);
        let rep = d.coset_representative(&rep);
        let outputs: Vec<Word> = d
            .codewords()
            .map(|c| ys[first_output[(c + rep).low_bits() as usize] as usize])
            .collect();
        let centers: Vec<Word> = outputs.iter().map(|o| *o + s).collect();
        let mut cands = Vec::new();
        for b in &centers {
            cands.extend(decode_unique(code, b, e)?);
        }
        let cert = Certificate::Covering { set, coset: rep, outputs, centers };
        return Ok(CandidateList::new(cands, DecoderKind::Covering, Some(cert)));
    }
    Err(Error::NoWitness(format!("no {m}-set carries a full coset of D among {} distinct outputs", ys.len())))
}

/// `⋃_i C ∩ B_e(center_i)`: at most one codeword per center.
pub fn ball_union_decode(code: &Code, centers: &[Word], e: usize) -> Result<CandidateList> {
    let mut cands = Vec::new();
    for c in centers {
        cands.extend(decode_unique(code, c, e)?);
    }
    let cert = Certificate::Centers { centers: centers.to_vec() };
    Ok(CandidateList::new(cands, DecoderKind::BallUnion, Some(cert)))
}

/// Smallest and largest pairwise distance among the candidates, for logging.
pub fn distance_span(words: &[Word]) -> Option<(usize, usize)> {
    let mut span: Option<(usize, usize)> = None;
    for (i, a) in words.iter().enumerate() {
        for b in &words[i + 1..] {
            let d = a.dist(b);
            span = Some(span.map_or((d, d), |(lo, hi)| (lo.min(d), hi.max(d))));
        }
    }
    span
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{adversarial_intersection, ChannelModel};
    use crate::codes::{covering_dimension, greedy_code, hamming_code, max_ball_count};
    use crate::hamming::enumerate_ball;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn batch(n: usize, t: usize, source: Option<Word>, outputs: Vec<Word>) -> OutputBatch {
        OutputBatch::new(n, t, ChannelModel::AdversarialSet, source, outputs).unwrap()
    }

    #[test]
    fn intersect_examples() {
        let c = Code::new([w("000000"), w("110000")]).unwrap();
        let y = batch(6, 2, None, adversarial_intersection(c.words(), 2).unwrap());
        assert_eq!(intersect_list(&c, &y, 2).unwrap().len(), 2);

        let c = Code::new([w("000000"), w("100000"), w("010000"), w("111111")]).unwrap();
        let y = batch(6, 2, None, adversarial_intersection(&c.words()[..3], 2).unwrap());
        assert_eq!(y.len(), 8);
        assert!(intersect_list(&c, &y, 2).unwrap().len() >= 3);

        let x = w("1010");
        let c = Code::new([x, w("0101")]).unwrap();
        assert!(intersect_list(&c, &batch(4, 0, Some(x), vec![x]), 0).unwrap().contains(&x));
    }

    #[test]
    fn shatter_examples() {
        let ys: Vec<Word> = ["000", "100", "010", "001", "110"].iter().map(|s| w(s)).collect();
        let sh = find_shattered_set(&ys, 2).unwrap().unwrap();
        assert_eq!(sh.set.to_vec(), vec![1, 2]);
        assert_eq!(sh.outputs, vec![w("000"), w("100"), w("010"), w("110")]);
        assert_eq!(find_shattered_set(&ys, 0).unwrap().unwrap().set.len(), 0);
        assert!(find_shattered_set(&[w("000"), w("111")], 2).unwrap().is_none());
    }

    #[test]
    fn shattering_threshold_exhaustive_small() {
        // Sauer–Shelah: any V(n,k-1)+1 words shatter some k-set
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for n in 2..=10usize {
            for k in 1..=3usize.min(n) {
                let need = num_traits::ToPrimitive::to_usize(&ball_volume(n, k - 1).unwrap()).unwrap() + 1;
                let mut space: Vec<Word> = (0u64..1 << n).map(|b| Word::from_u64(n, b)).collect();
                for _ in 0..200 {
                    space.shuffle(&mut rng);
                    assert!(find_shattered_set(&space[..need], k).unwrap().is_some(), "n={n} k={k}");
                }
                // the bound is tight: the ball B_{k-1}(0) shatters no k-set
                let ball: Vec<Word> = enumerate_ball(&Word::zero(n), k - 1).unwrap().collect();
                assert!(find_shattered_set(&ball, k).unwrap().is_none());
            }
        }
    }

    #[test]
    fn shatter_decode_rejects_bad_parameters() {
        let c = Code::new([w("000"), w("111")]).unwrap();
        let y = batch(3, 1, None, vec![w("100")]);
        assert!(shatter_decode(&c, &y, 1, 0).is_err());
        let y = batch(3, 2, None, vec![w("100")]);
        assert!(matches!(shatter_decode(&c, &y, 2, 0), Err(Error::ThresholdUnmet { .. })));
        assert!(shatter_decode(&c, &y, 2, 1).is_err());
    }

    #[test]
    fn shatter_decode_trials() {
        let code = greedy_code(12, 3, 1).unwrap();
        let (e, l) = (1, 2);
        let t = e + l;
        let m_ball = [max_ball_count(&code, e).unwrap(), max_ball_count(&code, e + 1).unwrap()];
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for trial in 0..300 {
            let x = code.words()[rng.gen_range(0..code.size())];
            let mut ys: Vec<Word> = enumerate_ball(&x, t).unwrap().collect();
            ys.shuffle(&mut rng);
            ys.truncate(rng.gen_range(14..=ys.len()));
            let y = batch(12, t, Some(x), ys);
            let exact = intersect_list(&code, &y, t).unwrap();
            for (a, &m) in m_ball.iter().enumerate() {
                let out = shatter_decode(&code, &y, t, a).unwrap();
                assert!(out.contains(&x), "trial {trial}");
                assert!(out.len() <= (1 << (l - a)) * m);
                assert!(exact.candidates.iter().all(|c| out.contains(c)));
            }
        }
    }

    #[test]
    fn covering_decode_trials() {
        let code = greedy_code(12, 3, 2).unwrap();
        let (e, l, r) = (1, 2, 1);
        let t = e + l;
        let (_, d) = covering_dimension(l + 2 * r, r).unwrap();
        assert_eq!(d.dimension(), 2);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let x = code.words()[rng.gen_range(0..code.size())];
            let mut ys: Vec<Word> = enumerate_ball(&x, t).unwrap().collect();
            ys.shuffle(&mut rng);
            ys.truncate(ys.len() - rng.gen_range(0..=2));
            let y = batch(12, t, Some(x), ys);
            let out = covering_decode(&code, &y, t, r, &d).unwrap();
            assert!(out.contains(&x));
            assert!(out.len() <= 4);
            let exact = intersect_list(&code, &y, t).unwrap();
            assert!(exact.candidates.iter().all(|c| out.contains(c)));
        }
    }

    #[test]
    fn covering_decode_threshold_and_shape() {
        let code = greedy_code(12, 3, 2).unwrap();
        let (_, d) = covering_dimension(4, 1).unwrap();
        let x = code.words()[0];
        let mut ys: Vec<Word> = enumerate_ball(&x, 3).unwrap().collect();
        ys.truncate(ys.len() - 3);
        let y = batch(12, 3, Some(x), ys);
        assert!(matches!(covering_decode(&code, &y, 3, 1, &d), Err(Error::ThresholdUnmet { .. })));
        assert!(covering_decode(&code, &y, 3, 1, &hamming_code(3).unwrap()).is_err());
        assert_eq!(covering_threshold(12, 4, 2), BigUint::from(297u32));
    }

    #[test]
    fn ball_union_examples() {
        let c = Code::new([w("00000"), w("11111")]).unwrap();
        assert_eq!(ball_union_decode(&c, &[w("00000")], 2).unwrap().candidates, vec![w("00000")]);
        let far = Code::new([w("0000000"), w("1111111")]).unwrap();
        assert!(ball_union_decode(&far, &[w("1110000"), w("0001111")], 1).unwrap().is_empty());
        let centers = [w("10000"), w("01111"), w("00000")];
        assert!(ball_union_decode(&c, &centers, 2).unwrap().len() <= centers.len());
    }

    #[test]
    fn candidate_json() {
        let c = Code::new([w("000"), w("111")]).unwrap();
        let out = ball_union_decode(&c, &[w("100")], 1).unwrap();
        let s = serde_json::to_string(&out).unwrap();
        assert!(s.contains("\"candidates\":[\"000\"]"));
        assert!(s.contains("\"kind\":\"centers\""));
        assert_eq!(serde_json::from_str::<CandidateList>(&s).unwrap(), out);
        assert_eq!(distance_span(&[w("000"), w("111"), w("100")]), Some((1, 3)));
    }
}
