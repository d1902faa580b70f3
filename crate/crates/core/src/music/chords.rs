use serde::{Deserialize, Serialize};

use super::domain::Layout;
use super::pitch::{Pitch, Scale};
use super::Violation;
use crate::error::{Error, Result};
use crate::mrf::{MarkovNetwork, PairPotential};

/// Diatonic triads of a major key, rooted on degrees 1 through 7.
pub const CHORDS: [&str; 7] = ["I", "ii", "iii", "IV", "V", "vi", "VIIdim"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ChordProgressionSpec {
    pub n: usize,
    /// Chord names; chord `k` is rooted on scale degree `k + 1`.
    pub chords: Vec<String>,
    pub potential_base: f64,
    /// Potential when two chords sound together or a chord repeats.
    pub potential_conflict: f64,
    /// Potential when a cadence pair occurs on consecutive steps.
    pub cadence_reward: f64,
    pub cadences: Vec<(String, String)>,
}

impl Default for ChordProgressionSpec {
    fn default() -> Self {
        ChordProgressionSpec {
            n: 4,
            chords: CHORDS.iter().map(|c| c.to_string()).collect(),
            potential_base: 50.0,
            potential_conflict: 100.0,
            cadence_reward: 0.0,
            cadences: vec![("V".into(), "I".into())],
        }
    }
}

impl ChordProgressionSpec {
    pub fn new(n: usize) -> Self {
        ChordProgressionSpec {
            n,
            ..ChordProgressionSpec::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidSpec(format!("progression needs n >= 2, got {}", self.n)));
        }
        if self.chords.is_empty() {
            return Err(Error::InvalidSpec("no chords given".into()));
        }
        for (i, c) in self.chords.iter().enumerate() {
            if self.chords[..i].contains(c) {
                return Err(Error::InvalidSpec(format!("chord `{c}` is repeated")));
            }
        }
        for (a, b) in &self.cadences {
            self.index_of(a)?;
            self.index_of(b)?;
        }
        for v in [self.potential_base, self.potential_conflict, self.cadence_reward] {
            if !v.is_finite() {
                return Err(Error::InvalidSpec(format!("potential {v} is not finite")));
            }
        }
        Ok(())
    }

    pub fn index_of(&self, chord: &str) -> Result<usize> {
        self.chords
            .iter()
            .position(|c| c == chord)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown chord `{chord}`")))
    }

    /// Node `i * chords + k` is chord `k` at step `i`.
    pub fn layout(&self) -> Layout {
        Layout::new(self.n, self.chords.clone())
    }

    /// Steps that do not hold exactly one chord.
    pub fn violations(&self, selected: &[Vec<usize>]) -> Vec<Violation> {
        selected
            .iter()
            .enumerate()
            .filter(|(_, s)| s.len() != 1)
            .map(|(i, s)| Violation::at("one_chord", i, format!("{} chords", s.len())))
            .collect()
    }

    /// Pitches of chord `k` as a root-position triad in `scale`.
    pub fn triad(&self, k: usize, scale: &Scale) -> Result<Vec<Pitch>> {
        let root = k as i32 + 1;
        [root, root + 2, root + 4].iter().map(|&d| scale.degree(d)).collect()
    }
}

/// Pairwise network over `7n` chord nodes. Pairs at the same step and
/// repeats of a chord on consecutive steps get the conflict table; cadence
/// pairs on consecutive steps get the reward at `(1, 1)`; every other pair
/// on consecutive steps gets the neutral table. Steps further apart are not
/// joined.
pub fn build_chord_mrf(spec: &ChordProgressionSpec) -> Result<MarkovNetwork> {
    spec.validate()?;
    let layout = spec.layout();
    let m = spec.chords.len();
    let base = spec.potential_base;
    let conflict = PairPotential::new(base, base, base, spec.potential_conflict);
    let cadence = PairPotential::new(base, base, base, spec.cadence_reward);
    let neutral = PairPotential::uniform(base);
    let cadences: Vec<(usize, usize)> = spec
        .cadences
        .iter()
        .map(|(a, b)| Ok((spec.index_of(a)?, spec.index_of(b)?)))
        .collect::<Result<_>>()?;

    let mut net = MarkovNetwork::new();
    for i in 0..spec.n {
        for c in &spec.chords {
            net.add_node(format!("{c}_{}", i + 1))?;
        }
    }
    for i in 0..spec.n {
        for a in 0..m {
            for b in a + 1..m {
                net.add_edge(layout.var(i, a).0, layout.var(i, b).0, conflict)?;
            }
        }
        if i + 1 == spec.n {
            continue;
        }
        for a in 0..m {
            for b in 0..m {
                let phi = if a == b {
                    conflict
                } else if cadences.contains(&(a, b)) {
                    cadence
                } else {
                    neutral
                };
                net.add_edge(layout.var(i, a).0, layout.var(i + 1, b).0, phi)?;
            }
        }
    }
    Ok(net)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mrf::mrf_to_qubo;
    use crate::music::decode_sequence;
    use crate::solvers::{restricted_enumerate, Group};

    #[test]
    fn printed_tables() {
        let spec = ChordProgressionSpec::new(2);
        let net = build_chord_mrf(&spec).unwrap();
        let node = |s: &str| net.node(s).unwrap();
        assert_eq!(net.nodes().len(), 14);
        assert_eq!(net.edge(node("I_1"), node("ii_1")), Some(PairPotential::new(50.0, 50.0, 50.0, 100.0)));
        assert_eq!(net.edge(node("I_1"), node("I_2")), Some(PairPotential::new(50.0, 50.0, 50.0, 100.0)));
        assert_eq!(net.edge(node("V_1"), node("I_2")), Some(PairPotential::new(50.0, 50.0, 50.0, 0.0)));
        assert_eq!(net.edge(node("I_1"), node("V_2")), Some(PairPotential::uniform(50.0)));
    }

    #[test]
    fn non_adjacent_steps_are_unjoined() {
        let net = build_chord_mrf(&ChordProgressionSpec::new(3)).unwrap();
        assert_eq!(net.edge(net.node("I_1").unwrap(), net.node("I_3").unwrap()), None);
        // 21 pairs per step, 49 per consecutive pair of steps
        assert_eq!(net.edges().len(), 3 * 21 + 2 * 49);
    }

    #[test]
    fn four_steps_prefer_dominant_tonic() {
        let spec = ChordProgressionSpec::new(4);
        let q = mrf_to_qubo(&build_chord_mrf(&spec).unwrap());
        let layout = spec.layout();
        let groups: Vec<Group> = (0..4)
            .map(|i| Group::one_hot((0..7).map(|k| layout.var(i, k)).collect(), true))
            .collect();
        let set = restricted_enumerate(&q, &groups).unwrap();
        assert_eq!(set.len(), 1);
        let d = decode_sequence(set.best().unwrap(), &layout).unwrap();
        assert_eq!(d.labels(&layout), ["V", "I", "V", "I"]);
    }

    #[test]
    fn triads() {
        let spec = ChordProgressionSpec::default();
        let names: Vec<String> = spec
            .triad(4, &Scale::default())
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(names, ["G4", "B4", "D5"]);
        assert!(ChordProgressionSpec::new(1).validate().is_err());
    }
}
