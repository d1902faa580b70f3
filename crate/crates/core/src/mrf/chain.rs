use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Counts of each consecutive `(from, to)` pair in a sequence.
pub fn transition_counts<S: AsRef<str>>(seq: &[S]) -> Result<BTreeMap<(String, String), usize>> {
    if seq.len() < 2 {
        return Err(Error::InvalidSpec(format!(
            "need at least 2 states to count transitions, got {}",
            seq.len()
        )));
    }
    let mut counts = BTreeMap::new();
    for w in seq.windows(2) {
        let key = (w[0].as_ref().to_string(), w[1].as_ref().to_string());
        *counts.entry(key).or_insert(0) += 1;
    }
    Ok(counts)
}

/// A row-stochastic matrix over labelled states.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionMatrix {
    states: Vec<String>,
    probs: Vec<Vec<f64>>,
}

impl TransitionMatrix {
    /// Checks shape, non-negativity and that every row sums to one.
    pub fn new(states: Vec<String>, probs: Vec<Vec<f64>>) -> Result<Self> {
        let k = states.len();
        if probs.len() != k {
            return Err(Error::Dimension {
                expected: k,
                actual: probs.len(),
            });
        }
        for (i, row) in probs.iter().enumerate() {
            if row.len() != k {
                return Err(Error::Dimension {
                    expected: k,
                    actual: row.len(),
                });
            }
            if row.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
                return Err(Error::InvalidSpec(format!("row {i} has a negative entry")));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidSpec(format!("row {i} sums to {sum}, not 1")));
            }
        }
        Ok(TransitionMatrix { states, probs })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn probs(&self) -> &[Vec<f64>] {
        &self.probs
    }

    /// `P(from -> to)`, or `None` for an unknown label.
    pub fn prob(&self, from: &str, to: &str) -> Option<f64> {
        let i = self.states.iter().position(|s| s == from)?;
        let j = self.states.iter().position(|s| s == to)?;
        Some(self.probs[i][j])
    }
}

/// Maximum-likelihood transition matrix of an observed sequence. States are
/// ordered by first appearance.
pub fn transition_matrix<S: AsRef<str>>(seq: &[S]) -> Result<TransitionMatrix> {
    let counts = transition_counts(seq)?;
    let mut states: Vec<String> = Vec::new();
    for s in seq {
        if !states.iter().any(|t| t == s.as_ref()) {
            states.push(s.as_ref().to_string());
        }
    }
    let index = |s: &str| states.iter().position(|t| t == s).unwrap();
    let k = states.len();
    let mut probs = vec![vec![0.0; k]; k];
    for ((a, b), c) in &counts {
        probs[index(a)][index(b)] = *c as f64;
    }
    for (i, row) in probs.iter_mut().enumerate() {
        let total: f64 = row.iter().sum();
        if total == 0.0 {
            return Err(Error::InvalidSpec(format!(
                "state `{}` never occurs as a source",
                states[i]
            )));
        }
        row.iter_mut().for_each(|p| *p /= total);
    }
    TransitionMatrix::new(states, probs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hot_hot_cold() {
        let seq = ["hot", "hot", "cold", "hot"];
        let m = transition_matrix(&seq).unwrap();
        assert_eq!(m.prob("hot", "hot"), Some(0.5));
        assert_eq!(m.prob("hot", "cold"), Some(0.5));
        assert_eq!(m.prob("cold", "hot"), Some(1.0));
    }

    #[test]
    fn terminal_state_has_no_row() {
        assert!(transition_matrix(&["hot", "hot", "cold"]).is_err());
    }

    #[test]
    fn constant_sequence() {
        let m = transition_matrix(&["a", "a", "a", "a"]).unwrap();
        assert_eq!(m.probs(), &[vec![1.0]]);
    }

    #[test]
    fn short_sequences() {
        assert!(transition_counts(&["a"]).is_err());
        assert!(transition_matrix::<&str>(&[]).is_err());
    }

    #[test]
    fn pair_count() {
        let c = transition_counts(&["a", "b"]).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[&("a".to_string(), "b".to_string())], 1);
    }

    #[test]
    fn weather_rows() {
        let states = ["hot", "cold", "rainy"].map(String::from).to_vec();
        let probs = vec![
            vec![1.0 / 2.0, 1.0 / 4.0, 1.0 / 4.0],
            vec![1.0 / 6.0, 1.0 / 2.0, 1.0 / 3.0],
            vec![1.0 / 8.0, 3.0 / 8.0, 1.0 / 2.0],
        ];
        let m = TransitionMatrix::new(states.clone(), probs).unwrap();
        assert_eq!(m.prob("rainy", "cold"), Some(0.375));
        let bad = vec![vec![0.5, 0.5, 0.5], vec![1.0, 0.0, 0.0], vec![1.0, 0.0, 0.0]];
        assert!(TransitionMatrix::new(states, bad).is_err());
    }
}
