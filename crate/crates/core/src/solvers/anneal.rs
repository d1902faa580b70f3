use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dense::DenseModel;
use super::sampleset::{model_fingerprint, SampleSet};
use crate::error::{Error, Result};
use crate::qubo::{QuboModel, Sample};

/// Simulated-annealing parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SaParams {
    pub num_reads: usize,
    pub sweeps_per_read: usize,
    pub beta_start: f64,
    pub beta_end: f64,
    pub seed: u64,
}

impl SaParams {
    pub fn with_seed(seed: u64) -> Self {
        SaParams {
            seed,
            ..SaParams::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_reads == 0 {
            return Err(Error::InvalidParams("num_reads must be at least 1".into()));
        }
        if self.sweeps_per_read == 0 {
            return Err(Error::InvalidParams("sweeps_per_read must be at least 1".into()));
        }
        let ok = |b: f64| b.is_finite() && b > 0.0;
        if !ok(self.beta_start) || !ok(self.beta_end) {
            return Err(Error::InvalidParams(
                "inverse temperatures must be positive and finite".into(),
            ));
        }
        if self.beta_start >= self.beta_end {
            return Err(Error::InvalidParams(format!(
                "beta_start ({}) must be below beta_end ({})",
                self.beta_start, self.beta_end
            )));
        }
        Ok(())
    }

    /// Inverse temperature for each sweep, geometric from start to end.
    pub fn schedule(&self) -> Vec<f64> {
        let m = self.sweeps_per_read;
        if m == 1 {
            return vec![self.beta_end];
        }
        let ratio = self.beta_end / self.beta_start;
        (0..m)
            .map(|k| self.beta_start * ratio.powf(k as f64 / (m - 1) as f64))
            .collect()
    }
}

impl Default for SaParams {
    fn default() -> Self {
        SaParams {
            num_reads: 100,
            sweeps_per_read: 1000,
            beta_start: 0.1,
            beta_end: 10.0,
            seed: 0,
        }
    }
}

/// The random stream for one read. Depends only on `(seed, read)`.
pub fn read_rng(seed: u64, read: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(read as u64);
    rng
}

/// Metropolis single-flip annealing with independent restarts.
///
/// Each read starts from a uniform random assignment and sweeps the
/// variables in index order once per schedule step. Reads run in parallel
/// and are collected in read order.
pub fn simulated_annealing(model: &QuboModel, params: &SaParams) -> Result<SampleSet> {
    params.validate()?;
    let dense = DenseModel::new(model);
    let schedule = params.schedule();
    let samples = (0..params.num_reads)
        .into_par_iter()
        .map(|read| {
            let mut rng = read_rng(params.seed, read);
            let assignment = anneal_once(&dense, &schedule, &mut rng);
            let energy = model.energy(&assignment)?;
            Ok(Sample {
                assignment,
                energy,
                num_occurrences: 1,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SampleSet::new(samples, model_fingerprint(model)))
}

fn anneal_once(dense: &DenseModel, schedule: &[f64], rng: &mut ChaCha8Rng) -> Vec<u8> {
    let n = dense.len();
    let mut x: Vec<u8> = (0..n).map(|_| rng.gen_range(0..=1)).collect();
    let mut fields = dense.fields(&x);
    for &beta in schedule {
        for v in 0..n {
            let delta = if x[v] == 0 { fields[v] } else { -fields[v] };
            if delta <= 0.0 || rng.gen::<f64>() < (-beta * delta).exp() {
                dense.flip(v, &mut x, &mut fields);
            }
        }
    }
    x
}
