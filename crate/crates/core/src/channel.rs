//! Channel models producing the output multiset `Y`.

use std::collections::HashSet;
use std::path::Path;

use num_traits::ToPrimitive;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::combin::ball_volume;
use crate::error::{Error, Result};
use crate::hamming::{enumerate_ball, BallSampler, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChannelModel {
    /// i.i.d. uniform draws from `B_t(x)`; repeated outputs allowed.
    UniformBall,
    /// i.i.d. draws with exactly `t` flips.
    ExactWeight,
    /// `N` distinct words of `B_t(x)` picked by an adversary.
    AdversarialSet,
}

/// The outputs `Y` of `N` channels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BatchRepr")]
pub struct OutputBatch {
    pub n: usize,
    pub t: usize,
    pub model: ChannelModel,
    pub source: Option<Word>,
    pub outputs: Vec<Word>,
}

#[derive(Deserialize)]
struct BatchRepr {
    n: usize,
    t: usize,
    model: ChannelModel,
    #[serde(default)]
    source: Option<Word>,
    outputs: Vec<Word>,
}

impl TryFrom<BatchRepr> for OutputBatch {
    type Error = Error;

    fn try_from(r: BatchRepr) -> Result<Self> {
        OutputBatch::new(r.n, r.t, r.model, r.source, r.outputs)
    }
}

impl OutputBatch {
    /// Validating constructor: lengths agree, every output is within `t` of
    /// the source when one is given, and adversarial outputs are distinct.
    pub fn new(n: usize, t: usize, model: ChannelModel, source: Option<Word>, outputs: Vec<Word>) -> Result<Self> {
        let b = OutputBatch { n, t, model, source, outputs };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        if self.t > self.n {
            return Err(Error::param(format!("t={} exceeds n={}", self.t, self.n)));
        }
        for w in self.outputs.iter().chain(self.source.iter()) {
            if w.len() != self.n {
                return Err(Error::LengthMismatch(self.n, w.len()));
            }
        }
        if let Some(x) = &self.source {
            if let Some(y) = self.outputs.iter().find(|y| y.dist(x) > self.t) {
                return Err(Error::ChannelContract(format!("output {y} is {} away from the source", y.dist(x))));
            }
            if self.model == ChannelModel::ExactWeight {
                if let Some(y) = self.outputs.iter().find(|y| y.dist(x) != self.t) {
                    return Err(Error::ChannelContract(format!("output {y} does not carry exactly {} errors", self.t)));
                }
            }
        }
        if self.model == ChannelModel::AdversarialSet {
            let mut seen = HashSet::with_capacity(self.outputs.len());
            if !self.outputs.iter().all(|y| seen.insert(*y)) {
                return Err(Error::ChannelContract("adversarial outputs must be distinct".into()));
            }
        }
        Ok(())
    }

    /// Number of channels `N`.
    pub fn len(&self) -> usize {
        self.outputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outputs.is_empty()
    }

    /// The outputs with repeats removed, in first-seen order.
    pub fn distinct_outputs(&self) -> Vec<Word> {
        let mut seen = HashSet::with_capacity(self.outputs.len());
        self.outputs.iter().filter(|y| seen.insert(**y)).copied().collect()
    }

    pub fn read_json(path: impl AsRef<Path>) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)?)?;
        Ok(())
    }
}

/// Chooses the distinct outputs of an adversarial batch.
pub trait Adversary {
    fn choose(&mut self, x: &Word, t: usize, count: usize) -> Result<Vec<Word>>;
}

/// Takes the first `count` words of `B_t(x)` in enumeration order.
#[derive(Debug, Clone, Copy, Default)]
pub struct BallOrder;

impl Adversary for BallOrder {
    fn choose(&mut self, x: &Word, t: usize, count: usize) -> Result<Vec<Word>> {
        Ok(enumerate_ball(x, t)?.take(count).collect())
    }
}

/// Plays a prescribed set of outputs, e.g. a ball intersection, truncated to `count`.
#[derive(Debug, Clone)]
pub struct FixedSet(pub Vec<Word>);

impl Adversary for FixedSet {
    fn choose(&mut self, _x: &Word, _t: usize, count: usize) -> Result<Vec<Word>> {
        if count > self.0.len() {
            return Err(Error::param(format!("fixed adversary holds {} words, {count} requested", self.0.len())));
        }
        Ok(self.0[..count].to_vec())
    }
}

/// Send `x` through `N` channels with the default adversary.
pub fn transmit<R: Rng + ?Sized>(x: &Word, t: usize, count: usize, model: ChannelModel, rng: &mut R) -> Result<OutputBatch> {
    transmit_with(x, t, count, model, &mut BallOrder, rng)
}

pub fn transmit_with<R: Rng + ?Sized>(
    x: &Word,
    t: usize,
    count: usize,
    model: ChannelModel,
    adversary: &mut dyn Adversary,
    rng: &mut R,
) -> Result<OutputBatch> {
    let n = x.len();
    if t > n {
        return Err(Error::param(format!("t={t} exceeds n={n}")));
    }
    let outputs = match model {
        ChannelModel::UniformBall => {
            let s = BallSampler::new(n, t)?;
            (0..count).map(|_| s.sample(x, rng)).collect()
        }
        ChannelModel::ExactWeight => (0..count).map(|_| *x + BallSampler::exact_error(n, t, rng)).collect(),
        ChannelModel::AdversarialSet => {
            let vol = ball_volume(n, t)?;
            if vol.to_usize().is_none_or(|v| count > v) {
                return Err(Error::param(format!("{count} distinct outputs requested but |B_t(x)| = {vol}")));
            }
            adversary.choose(x, t, count)?
        }
    };
    let batch = OutputBatch { n, t, model, source: Some(*x), outputs };
    // adversaries are external code; hold them to the contract
    batch.validate()?;
    if batch.len() != count {
        return Err(Error::ChannelContract(format!("adversary returned {} outputs, {count} requested", batch.len())));
    }
    Ok(batch)
}

/// Default cap on `V(n,t)` for intersection enumeration.
pub const INTERSECTION_BUDGET: u64 = 50_000_000;

fn check_budget(n: usize, t: usize, budget: u64) -> Result<()> {
    let vol = ball_volume(n, t)?;
    if vol > budget.into() {
        return Err(Error::BudgetExceeded(format!("V({n},{t}) = {vol} exceeds the enumeration budget {budget}")));
    }
    Ok(())
}

fn validate_centers(centers: &[Word]) -> Result<&Word> {
    let first = centers.first().ok_or_else(|| Error::param("need at least one center"))?;
    if let Some(c) = centers.iter().find(|c| c.len() != first.len()) {
        return Err(Error::LengthMismatch(first.len(), c.len()));
    }
    Ok(first)
}

/// `⋂_i B_t(c_i)`, enumerated from the ball around the first center.
pub fn adversarial_intersection(centers: &[Word], t: usize) -> Result<Vec<Word>> {
    let first = validate_centers(centers)?;
    check_budget(first.len(), t, INTERSECTION_BUDGET)?;
    Ok(enumerate_ball(first, t)?.filter(|y| centers[1..].iter().all(|c| c.dist_within(y, t).is_some())).collect())
}

/// `|⋂_i B_t(c_i)|` without materializing the set.
pub fn intersection_size(centers: &[Word], t: usize) -> Result<usize> {
    let first = validate_centers(centers)?;
    check_budget(first.len(), t, INTERSECTION_BUDGET)?;
    if centers.iter().any(|c| c.dist(first) > 2 * t) {
        return Ok(0);
    }
    Ok(enumerate_ball(first, t)?.filter(|y| centers[1..].iter().all(|c| c.dist_within(y, t).is_some())).count())
}
