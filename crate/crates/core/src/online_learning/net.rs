//! Greedy ε-nets over context vectors, each center owning a learner.

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct EpsilonNet<L> {
    centers: Vec<Vec<f64>>,
    learners: Vec<L>,
    radius: f64,
}

impl<L> EpsilonNet<L> {
    /// `radius` may be `+∞`, which yields a single shared center.
    pub fn new(radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::invalid(format!("net radius must be positive, got {radius}")));
        }
        Ok(EpsilonNet {
            centers: Vec::new(),
            learners: Vec::new(),
            radius,
        })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn centers(&self) -> &[Vec<f64>] {
        &self.centers
    }

    /// Index of the nearest center within the radius, or of `theta` itself
    /// after inserting it with a learner from `factory`. A point at distance
    /// exactly `radius` joins the existing center.
    ///
    /// Panics if `theta` has a different dimension than earlier centers.
    pub fn lookup_or_insert(&mut self, theta: &[f64], factory: impl FnOnce() -> L) -> usize {
        if let Some(first) = self.centers.first() {
            assert_eq!(first.len(), theta.len(), "context dimension changed");
        }
        let nearest = self
            .centers
            .iter()
            .map(|c| distance(c, theta))
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match nearest {
            Some((i, d)) if d <= self.radius => i,
            _ => {
                self.centers.push(theta.to_vec());
                self.learners.push(factory());
                self.centers.len() - 1
            }
        }
    }

    pub fn learner(&self, key: usize) -> &L {
        &self.learners[key]
    }

    pub fn learner_mut(&mut self, key: usize) -> &mut L {
        &mut self.learners[key]
    }

    pub fn learners(&self) -> &[L] {
        &self.learners
    }
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}
