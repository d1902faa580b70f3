use serde::{Deserialize, Serialize};

use super::domain::Layout;
use super::melody::{add, grid_labels, slack};
use super::pitch::Duration;
use super::{check_penalty, check_weights, Violation, Weights};
use crate::compiler::{squared_penalty, PolyExpr};
use crate::error::{Error, Result};
use crate::qubo::QuboModel;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RhythmPenalties {
    pub hard: Option<f64>,
    pub min_count: Option<f64>,
    pub total_length: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RhythmPenaltyValues {
    pub hard: f64,
    pub min_count: f64,
    pub total_length: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RhythmSpec {
    pub n: usize,
    pub durations: Vec<Duration>,
    pub weights: Weights,
    /// Every duration must appear at least this many times.
    pub min_count_each: usize,
    /// Total length in eighth notes, if fixed.
    pub total_length: Option<u32>,
    pub penalties: RhythmPenalties,
}

impl RhythmSpec {
    pub fn new(n: usize, durations: Vec<Duration>) -> Self {
        RhythmSpec {
            n,
            durations,
            weights: Weights::new(),
            min_count_each: 2,
            total_length: None,
            penalties: RhythmPenalties::default(),
        }
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.durations
            .iter()
            .position(|d| d.name == name)
            .ok_or_else(|| Error::InvalidSpec(format!("`{name}` is not a listed duration")))
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidSpec("rhythm needs at least one note".into()));
        }
        if self.durations.is_empty() {
            return Err(Error::InvalidSpec("no durations given".into()));
        }
        for (i, d) in self.durations.iter().enumerate() {
            if d.eighths == 0 {
                return Err(Error::InvalidSpec(format!("duration `{}` has zero length", d.name)));
            }
            if self.durations[..i].iter().any(|e| e.name == d.name) {
                return Err(Error::InvalidSpec(format!("duration `{}` is repeated", d.name)));
            }
        }
        check_weights(&self.weights, |l| self.index_of(l).map(|_| ()))?;
        let need = self.min_count_each * self.durations.len();
        if need > self.n {
            return Err(Error::Infeasible {
                name: "min_count".into(),
                reason: format!(
                    "{} durations at least {} times each need {need} notes, have {}",
                    self.durations.len(),
                    self.min_count_each,
                    self.n
                ),
            });
        }
        if let Some(l) = self.total_length {
            let shortest = self.durations.iter().map(|d| d.eighths).min().unwrap();
            let longest = self.durations.iter().map(|d| d.eighths).max().unwrap();
            let (lo, hi) = (shortest * self.n as u32, longest * self.n as u32);
            if l < lo || l > hi {
                return Err(Error::Infeasible {
                    name: "total_length".into(),
                    reason: format!("{} notes span [{lo}, {hi}] eighths, not {l}", self.n),
                });
            }
        }
        let p = &self.penalties;
        for v in [p.hard, p.min_count, p.total_length].into_iter().flatten() {
            check_penalty(v)?;
        }
        Ok(())
    }

    /// Every rhythm rule is hard; the default is `2 * total weight + 1`.
    pub fn penalty_values(&self) -> RhythmPenaltyValues {
        self.penalty_values_with(2.0 * self.weights.values().sum::<f64>() + 1.0)
    }

    pub(crate) fn penalty_values_with(&self, default_hard: f64) -> RhythmPenaltyValues {
        let hard = self.penalties.hard.unwrap_or(default_hard);
        RhythmPenaltyValues {
            hard,
            min_count: self.penalties.min_count.unwrap_or(hard),
            total_length: self.penalties.total_length.unwrap_or(hard),
        }
    }

    pub fn violations(&self, seq: &[usize]) -> Result<Vec<Violation>> {
        self.validate()?;
        if seq.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                actual: seq.len(),
            });
        }
        let mut out = Vec::new();
        for (k, d) in self.durations.iter().enumerate() {
            let got = seq.iter().filter(|&&j| j == k).count();
            if got < self.min_count_each {
                out.push(Violation::global(
                    "min_count",
                    format!("{} appears {got} times, need {}", d.name, self.min_count_each),
                ));
            }
        }
        if let Some(l) = self.total_length {
            let total: u32 = seq.iter().map(|&j| self.durations[j].eighths).sum();
            if total != l {
                out.push(Violation::global("total_length", format!("{total} eighths, need {l}")));
            }
        }
        Ok(out)
    }

    pub fn reward(&self, seq: &[usize]) -> f64 {
        seq.windows(2)
            .map(|w| {
                let key = (self.durations[w[0]].name.clone(), self.durations[w[1]].name.clone());
                self.weights.get(&key).copied().unwrap_or(0.0)
            })
            .sum()
    }
}

/// Adds the minimum-count and total-length rules. `ind(i, k)` is 1 exactly
/// when position `i` has duration `k`.
pub(crate) fn add_rhythm_rules(
    spec: &RhythmSpec,
    pen: &RhythmPenaltyValues,
    ind: &dyn Fn(usize, usize) -> PolyExpr,
    q: &mut QuboModel,
) -> Result<()> {
    let n = spec.n;
    if spec.min_count_each > 0 {
        for (k, d) in spec.durations.iter().enumerate() {
            // sum_i y_{i,k} - s = m with s in [0, n - m]
            let mut lhs = PolyExpr::new();
            for i in 0..n {
                lhs += &ind(i, k);
            }
            let s = slack(q, &format!("count_{}", d.name), (n - spec.min_count_each) as i64);
            let lhs = &lhs - &s;
            add(q, &squared_penalty(&lhs, spec.min_count_each as f64, pen.min_count));
        }
    }
    if let Some(l) = spec.total_length {
        let mut lhs = PolyExpr::new();
        for i in 0..n {
            for (k, d) in spec.durations.iter().enumerate() {
                lhs += &ind(i, k).scale(d.eighths as f64);
            }
        }
        add(q, &squared_penalty(&lhs, l as f64, pen.total_length));
    }
    Ok(())
}

/// Builds the rhythm QUBO. Grid variable `(i, k)` means position `i` has
/// duration `k`; slack bits for the minimum counts follow the grid.
pub fn build_rhythm(spec: &RhythmSpec) -> Result<(QuboModel, Layout)> {
    spec.validate()?;
    let pen = spec.penalty_values();
    let layout = Layout::new(spec.n, spec.durations.iter().map(|d| d.name.clone()).collect());
    let mut q = QuboModel::new(layout.grid_size());
    grid_labels(&mut q, &layout);
    for i in 0..spec.n {
        let sum = PolyExpr::linear((0..layout.width()).map(|k| (layout.var(i, k), 1.0)), 0.0);
        add(&mut q, &squared_penalty(&sum, 1.0, pen.hard));
    }
    let ind = |i: usize, k: usize| PolyExpr::var(layout.var(i, k));
    add_rhythm_rules(spec, &pen, &ind, &mut q)?;
    for ((a, b), &w) in &spec.weights {
        let (a, b) = (spec.index_of(a)?, spec.index_of(b)?);
        for i in 0..spec.n - 1 {
            q.add_quadratic(layout.var(i, a), layout.var(i + 1, b), -w)?;
        }
    }
    Ok((q, layout))
}
