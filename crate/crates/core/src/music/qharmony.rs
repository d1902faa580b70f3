use serde::{Deserialize, Serialize};

use super::pitch::Pitch;
use crate::error::{Error, Result};
use crate::qubo::{IsingModel, VarId};

/// One chord for a set of input notes, encoded directly as spins: spin `+1`
/// selects the note.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QHarmonySpec {
    pub notes: Vec<Pitch>,
    pub input_notes: Vec<Pitch>,
}

impl Default for QHarmonySpec {
    fn default() -> Self {
        QHarmonySpec {
            notes: ["C4", "D4", "E4", "F4", "G4", "A4", "B4", "C5"]
                .iter()
                .map(|s| s.parse().unwrap())
                .collect(),
            input_notes: Vec::new(),
        }
    }
}

impl QHarmonySpec {
    pub fn with_input(input: &[&str]) -> Result<Self> {
        Ok(QHarmonySpec {
            input_notes: input.iter().map(|s| s.parse()).collect::<Result<_>>()?,
            ..QHarmonySpec::default()
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.notes.is_empty() {
            return Err(Error::InvalidSpec("note set is empty".into()));
        }
        for (i, p) in self.notes.iter().enumerate() {
            if self.notes[..i].contains(p) {
                return Err(Error::InvalidSpec(format!("note {p} is repeated")));
            }
        }
        if self.input_notes.is_empty() {
            return Err(Error::InvalidSpec("no input notes to harmonize".into()));
        }
        if let Some(p) = self.input_notes.iter().find(|p| !self.notes.contains(p)) {
            return Err(Error::InvalidSpec(format!("input note {p} is not in the note set")));
        }
        Ok(())
    }

    /// Notes whose spin is `+1`.
    pub fn selected(&self, spins: &[i8]) -> Vec<Pitch> {
        self.notes
            .iter()
            .zip(spins)
            .filter(|(_, &s)| s == 1)
            .map(|(p, _)| *p)
            .collect()
    }
}

/// Couplings `J_ij = 7 - 2|i - j|` for every pair and fields `h_i = -7`
/// for input notes, `1` otherwise.
pub fn build_qharmony(spec: &QHarmonySpec) -> Result<IsingModel> {
    spec.validate()?;
    let n = spec.notes.len();
    let mut m = IsingModel::new(n);
    for (i, p) in spec.notes.iter().enumerate() {
        let h = if spec.input_notes.contains(p) { -7.0 } else { 1.0 };
        m.add_bias(VarId(i), h)?;
        for j in i + 1..n {
            m.add_coupling(VarId(i), VarId(j), 7.0 - 2.0 * (j - i) as f64)?;
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn couplings_and_fields() {
        let m = build_qharmony(&QHarmonySpec::with_input(&["C4"]).unwrap()).unwrap();
        assert_eq!(m.coupling(VarId(0), VarId(1)), 5.0);
        assert_eq!(m.coupling(VarId(0), VarId(7)), -7.0);
        let h: Vec<f64> = (0..8).map(|i| m.bias(VarId(i))).collect();
        assert_eq!(h, [-7.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn invalid_inputs() {
        assert!(build_qharmony(&QHarmonySpec::default()).is_err());
        assert!(QHarmonySpec::with_input(&["C#4"]).unwrap().validate().is_err());
    }
}
