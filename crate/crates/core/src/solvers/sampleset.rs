use std::cmp::Ordering;
use std::fmt::Write;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::qubo::{qubo_to_toml, QuboModel, Sample};

/// Short content hash of a model's canonical text form.
pub fn model_fingerprint(model: &QuboModel) -> String {
    let digest = Sha256::digest(qubo_to_toml(model).as_bytes());
    hex::encode(&digest[..8])
}

fn order(a: &Sample, b: &Sample) -> Ordering {
    a.energy
        .total_cmp(&b.energy)
        .then_with(|| a.assignment.cmp(&b.assignment))
}

/// Samples sorted by `(energy, assignment)` with duplicates merged.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleSet {
    samples: Vec<Sample>,
    model_fingerprint: String,
}

impl SampleSet {
    pub fn new(mut samples: Vec<Sample>, model_fingerprint: String) -> Self {
        samples.sort_by(order);
        let mut merged: Vec<Sample> = Vec::with_capacity(samples.len());
        for s in samples {
            match merged.last_mut() {
                Some(last) if last.assignment == s.assignment => {
                    last.num_occurrences += s.num_occurrences;
                }
                _ => merged.push(s),
            }
        }
        SampleSet {
            samples: merged,
            model_fingerprint,
        }
    }

    /// Collects one sample per assignment in `states`, energies from `model`.
    pub fn from_states(model: &QuboModel, states: Vec<Vec<u8>>) -> Result<Self> {
        let samples = states
            .into_iter()
            .map(|assignment| {
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

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn model_fingerprint(&self) -> &str {
        &self.model_fingerprint
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn best(&self) -> Option<&Sample> {
        self.samples.first()
    }

    pub fn min_energy(&self) -> Option<f64> {
        self.best().map(|s| s.energy)
    }

    pub fn total_occurrences(&self) -> usize {
        self.samples.iter().map(|s| s.num_occurrences).sum()
    }

    /// Samples whose energy equals the minimum.
    pub fn ground_states(&self) -> impl Iterator<Item = &Sample> {
        let min = self.min_energy();
        self.samples.iter().take_while(move |s| Some(s.energy) == min)
    }

    /// Merges two sets drawn from the same model.
    pub fn merge(&self, other: &SampleSet) -> Result<SampleSet> {
        if self.model_fingerprint != other.model_fingerprint {
            return Err(Error::InvalidParams(
                "cannot merge samples from different models".into(),
            ));
        }
        let mut all = self.samples.clone();
        all.extend(other.samples.iter().cloned());
        Ok(SampleSet::new(all, self.model_fingerprint.clone()))
    }

    /// Tabular text: a fingerprint comment, a header naming each variable
    /// column, then one row per sample with its bits, energy and count.
    pub fn to_table(&self, model: &QuboModel) -> String {
        let mut out = String::new();
        writeln!(out, "# model {}", self.model_fingerprint).unwrap();
        let mut header: Vec<String> = (0..model.num_vars())
            .map(|i| {
                model
                    .label(i.into())
                    .map(|l| l.replace(char::is_whitespace, "_"))
                    .unwrap_or_else(|| format!("x{i}"))
            })
            .collect();
        header.push("energy".into());
        header.push("num_occurrences".into());
        writeln!(out, "{}", header.join(" ")).unwrap();
        for s in &self.samples {
            for b in &s.assignment {
                write!(out, "{b} ").unwrap();
            }
            writeln!(out, "{} {}", s.energy, s.num_occurrences).unwrap();
        }
        out
    }

    /// Parses [`SampleSet::to_table`] output.
    pub fn from_table(text: &str) -> Result<SampleSet> {
        let mut fingerprint = String::new();
        let mut width = None;
        let mut samples = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("# model ") {
                fingerprint = rest.trim().to_string();
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() < 2 {
                return Err(Error::Parse(format!("malformed sample row `{line}`")));
            }
            let Some(w) = width else {
                width = Some(fields.len() - 2);
                continue;
            };
            if fields.len() != w + 2 {
                return Err(Error::Parse(format!(
                    "expected {} columns, found {} in `{line}`",
                    w + 2,
                    fields.len()
                )));
            }
            let assignment = fields[..w]
                .iter()
                .map(|f| match *f {
                    "0" => Ok(0),
                    "1" => Ok(1),
                    other => Err(Error::Parse(format!("bad bit `{other}`"))),
                })
                .collect::<Result<Vec<u8>>>()?;
            let energy = fields[w]
                .parse()
                .map_err(|_| Error::Parse(format!("bad energy `{}`", fields[w])))?;
            let num_occurrences = fields[w + 1]
                .parse()
                .map_err(|_| Error::Parse(format!("bad count `{}`", fields[w + 1])))?;
            samples.push(Sample {
                assignment,
                energy,
                num_occurrences,
            });
        }
        Ok(SampleSet::new(samples, fingerprint))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(bits: &[u8], energy: f64) -> Sample {
        Sample {
            assignment: bits.to_vec(),
            energy,
            num_occurrences: 1,
        }
    }

    #[test]
    fn sorted_and_merged() {
        let set = SampleSet::new(
            vec![
                sample(&[1, 1], 8.0),
                sample(&[0, 0], 0.0),
                sample(&[1, 1], 8.0),
                sample(&[1, 0], 5.0),
            ],
            "m".into(),
        );
        let energies: Vec<f64> = set.samples().iter().map(|s| s.energy).collect();
        assert_eq!(energies, vec![0.0, 5.0, 8.0]);
        assert_eq!(set.samples()[2].num_occurrences, 2);
        assert_eq!(set.total_occurrences(), 4);
    }

    #[test]
    fn ties_break_lexicographically() {
        let set = SampleSet::new(vec![sample(&[1, 0], 0.0), sample(&[0, 1], 0.0)], "m".into());
        assert_eq!(set.best().unwrap().assignment, vec![0, 1]);
        assert_eq!(set.ground_states().count(), 2);
    }

    #[test]
    fn merge_sums_occurrences() {
        let a = SampleSet::new(vec![sample(&[0], 0.0)], "m".into());
        let b = SampleSet::new(vec![sample(&[0], 0.0), sample(&[1], -1.0)], "m".into());
        let c = a.merge(&b).unwrap();
        assert_eq!(c.samples()[0].assignment, vec![1]);
        assert_eq!(c.samples()[1].num_occurrences, 2);
        let other = SampleSet::new(vec![], "z".into());
        assert!(a.merge(&other).is_err());
    }

    #[test]
    fn table_round_trip() {
        let q = QuboModel::from_matrix(&[vec![5.0, -6.0], vec![0.0, 9.0]]).unwrap();
        let set = SampleSet::from_states(&q, vec![vec![1, 1], vec![0, 0], vec![0, 1]]).unwrap();
        let text = set.to_table(&q);
        assert!(text.contains("x0 x1 energy num_occurrences"));
        assert!(text.contains("\n0 0 0 1\n"));
        assert_eq!(SampleSet::from_table(&text).unwrap(), set);
    }
}
