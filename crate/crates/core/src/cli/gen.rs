//! Seeded random instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::{Instance, TurnPoint};
use crate::num::Q;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("invalid generator config: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenConfig {
    pub n_segments: usize,
    pub alpha: Q,
    pub vertical_budget: Q,
    pub seed: u64,
    /// Inclusive; durations are the integers inside it.
    pub duration_range: (Q, Q),
}

impl GenConfig {
    pub fn new(n_segments: usize, alpha: Q, vertical_budget: Q, seed: u64) -> Self {
        Self {
            n_segments,
            alpha,
            vertical_budget,
            seed,
            duration_range: (Q::int(1), Q::int(4)),
        }
    }

    fn integer_durations(&self) -> Result<(i64, i64), GenError> {
        let (lo, hi) = &self.duration_range;
        if !lo.is_positive() || hi < lo {
            return Err(GenError::InvalidConfig(format!(
                "duration range [{lo}, {hi}] must be positive and non-empty"
            )));
        }
        let ceil = |x: &Q| -> Option<i64> {
            let d = x.denom();
            let n = x.numer();
            let c = (n + &d - 1u32) / d;
            i64::try_from(c).ok()
        };
        let floor = |x: &Q| -> Option<i64> { i64::try_from(x.numer() / x.denom()).ok() };
        match (ceil(lo), floor(hi)) {
            (Some(a), Some(b)) if a <= b => Ok((a, b)),
            _ => Err(GenError::InvalidConfig(format!(
                "duration range [{lo}, {hi}] contains no integer"
            ))),
        }
    }
}

/// Random α-path: alternating `±alpha` segments with integer durations,
/// starting at `(0, 0)`, first direction drawn from the seed.
pub fn gen_instance(config: &GenConfig) -> Result<Instance, GenError> {
    if config.n_segments == 0 {
        return Err(GenError::InvalidConfig("n must be at least 1".into()));
    }
    if !config.alpha.is_positive() {
        return Err(GenError::InvalidConfig(format!(
            "alpha must be positive, got {}",
            config.alpha
        )));
    }
    if !config.vertical_budget.is_positive() {
        return Err(GenError::InvalidConfig(format!(
            "budget must be positive, got {}",
            config.vertical_budget
        )));
    }
    let (dmin, dmax) = config.integer_durations()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut up = rng.random_bool(0.5);
    let mut t: i64 = 0;
    let mut h = Q::ZERO;
    let mut turns = Vec::with_capacity(config.n_segments + 1);
    turns.push(TurnPoint::new(Q::ZERO, Q::ZERO));
    for _ in 0..config.n_segments {
        let d = rng.random_range(dmin..=dmax);
        t += d;
        let rise = &config.alpha * Q::int(d);
        h = if up { h + rise } else { h - rise };
        turns.push(TurnPoint::new(Q::int(t), h.clone()));
        up = !up;
    }
    Ok(Instance::new(
        config.alpha.clone(),
        config.vertical_budget.clone(),
        turns,
    ))
}
