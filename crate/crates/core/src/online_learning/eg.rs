//! Exponentiated-gradient (Hedge) learner over a finite expert set.

use crate::error::{Error, Result};

/// How the step size evolves over the learner's updates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StepSchedule {
    /// `√(ln n_ctx) / (L·√(2T))` for a known horizon `T`, held fixed.
    Fixed { horizon: u64 },
    /// The same expression with `T` replaced by the number of updates so
    /// far, for learners whose horizon is not known in advance.
    Anytime,
    /// A constant step, independent of horizon and loss bound.
    Constant(f64),
}

#[derive(Clone, Debug)]
pub struct EgLearner {
    /// Log-domain weights, shifted so the largest is zero.
    log_weights: Vec<f64>,
    schedule: StepSchedule,
    /// `√(ln n_ctx) / (L·√2)` times the rate multiplier.
    base_rate: f64,
    loss_bound: f64,
    updates: u64,
    clipped: u64,
}

/// Learner with the fixed step `√(ln n_ctx) / (loss_bound·√(2T))`.
pub fn eg_init(n_experts: usize, horizon: u64, loss_bound: f64, n_ctx: usize) -> Result<EgLearner> {
    if horizon == 0 {
        return Err(Error::invalid("learning horizon must be at least 1"));
    }
    EgLearner::new(n_experts, loss_bound, n_ctx, StepSchedule::Fixed { horizon }, 1.0)
}

impl EgLearner {
    /// `rate_scale` multiplies every step of the schedule.
    pub fn new(
        n_experts: usize,
        loss_bound: f64,
        n_ctx: usize,
        schedule: StepSchedule,
        rate_scale: f64,
    ) -> Result<Self> {
        if n_experts == 0 {
            return Err(Error::invalid("learner needs at least one expert"));
        }
        if !(loss_bound > 0.0) || !loss_bound.is_finite() {
            return Err(Error::invalid(format!("loss bound must be positive, got {loss_bound}")));
        }
        if !(rate_scale > 0.0) || !rate_scale.is_finite() {
            return Err(Error::invalid(format!("rate scale must be positive, got {rate_scale}")));
        }
        match schedule {
            StepSchedule::Fixed { horizon: 0 } => {
                return Err(Error::invalid("learning horizon must be at least 1"))
            }
            StepSchedule::Constant(s) if !(s > 0.0) || !s.is_finite() => {
                return Err(Error::invalid(format!("step size must be positive, got {s}")))
            }
            _ => {}
        }
        let base_rate = rate_scale * (n_ctx.max(1) as f64).ln().sqrt() / (loss_bound * 2f64.sqrt());
        Ok(EgLearner {
            log_weights: vec![0.0; n_experts],
            schedule,
            base_rate,
            loss_bound,
            updates: 0,
            clipped: 0,
        })
    }

    pub fn with_step(n_experts: usize, step: f64, loss_bound: f64) -> Result<Self> {
        EgLearner::new(n_experts, loss_bound, 1, StepSchedule::Constant(step), 1.0)
    }

    pub fn n_experts(&self) -> usize {
        self.log_weights.len()
    }

    pub fn loss_bound(&self) -> f64 {
        self.loss_bound
    }

    pub fn updates(&self) -> u64 {
        self.updates
    }

    /// Loss entries clipped into `[0, loss_bound]` so far.
    pub fn clip_count(&self) -> u64 {
        self.clipped
    }

    /// Step applied by the next update.
    pub fn step_size(&self) -> f64 {
        match self.schedule {
            StepSchedule::Fixed { horizon } => self.base_rate / (horizon as f64).sqrt(),
            StepSchedule::Anytime => self.base_rate / ((self.updates + 1) as f64).sqrt(),
            StepSchedule::Constant(s) => s,
        }
    }

    /// Current probability vector.
    pub fn decide(&self) -> Vec<f64> {
        let w: Vec<f64> = self.log_weights.iter().map(|l| l.exp()).collect();
        let total: f64 = w.iter().sum();
        w.into_iter().map(|x| x / total).collect()
    }

    /// Multiplies each weight by `exp(-step·loss)` and renormalizes.
    pub fn update(&mut self, losses: &[f64]) -> Result<()> {
        if losses.len() != self.n_experts() {
            return Err(Error::invalid(format!(
                "loss vector has {} entries for {} experts",
                losses.len(),
                self.n_experts()
            )));
        }
        if losses.iter().any(|l| l.is_nan()) {
            return Err(Error::invalid("loss vector contains NaN"));
        }
        let step = self.step_size();
        for (lw, &loss) in self.log_weights.iter_mut().zip(losses) {
            let clipped = loss.clamp(0.0, self.loss_bound);
            if clipped != loss {
                self.clipped += 1;
            }
            *lw -= step * clipped;
        }
        let top = self.log_weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        self.log_weights.iter_mut().for_each(|lw| *lw -= top);
        self.updates += 1;
        Ok(())
    }
}
