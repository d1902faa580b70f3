use serde::{Deserialize, Serialize};

use super::domain::Layout;
use super::melody::{add, grid_labels};
use super::{check_penalty, Violation};
use crate::compiler::{squared_penalty, PolyExpr};
use crate::error::{Error, Result};
use crate::qubo::QuboModel;

/// Degrees a chord may use.
pub const DEGREES: usize = 8;

/// Triad the first and last chords are anchored to.
pub const TONIC_TRIAD: [usize; 3] = [1, 3, 5];

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HarmonyPenalties {
    pub hard: Option<f64>,
    pub anchor: Option<f64>,
    pub membership: Option<f64>,
    pub forbidden: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HarmonyPenaltyValues {
    pub hard: f64,
    pub anchor: f64,
    pub membership: f64,
    pub forbidden: f64,
}

/// Chords over scale degrees `1..=8` accompanying a melody of degrees.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonySpec {
    pub melody: Vec<usize>,
    pub chord_size: usize,
    /// Degree differences that may not share a chord.
    pub forbidden_within: Vec<usize>,
    pub anchor_first_last_triad: bool,
    pub penalties: HarmonyPenalties,
}

impl HarmonySpec {
    pub fn new(melody: Vec<usize>) -> Self {
        HarmonySpec {
            melody,
            chord_size: 3,
            forbidden_within: vec![1, 6, 7],
            anchor_first_last_triad: true,
            penalties: HarmonyPenalties::default(),
        }
    }

    pub fn n(&self) -> usize {
        self.melody.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if n < 2 {
            return Err(Error::InvalidSpec(format!("harmony needs at least 2 melody notes, got {n}")));
        }
        if let Some(d) = self.melody.iter().find(|d| !(1..=DEGREES).contains(d)) {
            return Err(Error::InvalidSpec(format!("melody degree {d} is outside 1..=8")));
        }
        if self.chord_size == 0 || self.chord_size > DEGREES {
            return Err(Error::InvalidSpec(format!("chord size {} is outside 1..=8", self.chord_size)));
        }
        if self.anchor_first_last_triad && (self.melody[0] != 1 || self.melody[n - 1] != 1) {
            return Err(Error::InvalidSpec(
                "anchored harmony needs the melody to start and end on degree 1".into(),
            ));
        }
        let p = &self.penalties;
        for v in [p.hard, p.anchor, p.membership, p.forbidden].into_iter().flatten() {
            check_penalty(v)?;
        }
        Ok(())
    }

    /// Soft families default to 1; the hard chord-size penalty defaults to
    /// `2 * (sum of soft penalties) + 1`.
    pub fn penalty_values(&self) -> HarmonyPenaltyValues {
        let p = &self.penalties;
        let anchor = p.anchor.unwrap_or(1.0);
        let membership = p.membership.unwrap_or(1.0);
        let forbidden = p.forbidden.unwrap_or(1.0);
        let mut soft = membership;
        if self.anchor_first_last_triad {
            soft += anchor;
        }
        if !self.forbidden_within.is_empty() {
            soft += forbidden;
        }
        HarmonyPenaltyValues {
            hard: p.hard.unwrap_or(2.0 * soft + 1.0),
            anchor,
            membership,
            forbidden,
        }
    }

    /// Positions where melody membership and the within-chord rule apply:
    /// the interior when the ends are anchored, otherwise all of them.
    pub fn free_positions(&self) -> std::ops::Range<usize> {
        if self.anchor_first_last_triad {
            1..self.n() - 1
        } else {
            0..self.n()
        }
    }

    pub fn layout(&self) -> Layout {
        Layout::new(self.n(), (1..=DEGREES).map(|d| d.to_string()).collect())
    }

    /// Rule violations of chords given as sets of degrees.
    pub fn violations(&self, chords: &[Vec<usize>]) -> Result<Vec<Violation>> {
        self.validate()?;
        if chords.len() != self.n() {
            return Err(Error::Dimension {
                expected: self.n(),
                actual: chords.len(),
            });
        }
        let mut out = Vec::new();
        for (i, c) in chords.iter().enumerate() {
            if c.len() != self.chord_size {
                out.push(Violation::at("chord_size", i, format!("{} notes", c.len())));
            }
        }
        if self.anchor_first_last_triad {
            for i in [0, self.n() - 1] {
                for d in TONIC_TRIAD {
                    if !chords[i].contains(&d) {
                        out.push(Violation::at("anchor", i, format!("missing degree {d}")));
                    }
                }
            }
        }
        for i in self.free_positions() {
            let c = &chords[i];
            if !c.contains(&self.melody[i]) {
                out.push(Violation::at("membership", i, format!("missing melody degree {}", self.melody[i])));
            }
            for (a, &x) in c.iter().enumerate() {
                for &y in &c[a + 1..] {
                    if self.forbidden_within.contains(&x.abs_diff(y)) {
                        out.push(Violation::at("forbidden", i, format!("degrees {x} and {y}")));
                    }
                }
            }
        }
        out.sort_by_key(|v| v.position);
        Ok(out)
    }
}

/// Builds the harmony QUBO over `n * 8` variables; variable `(i, j)` means
/// the chord at position `i` contains degree `j + 1`.
pub fn build_harmony(spec: &HarmonySpec) -> Result<(QuboModel, Layout)> {
    spec.validate()?;
    let pen = spec.penalty_values();
    let layout = spec.layout();
    let n = spec.n();
    let mut q = QuboModel::new(layout.grid_size());
    grid_labels(&mut q, &layout);
    let x = |i: usize, d: usize| PolyExpr::var(layout.var(i, d - 1));
    let one = PolyExpr::constant(1.0);
    for i in 0..n {
        let sum = PolyExpr::linear((0..DEGREES).map(|j| (layout.var(i, j), 1.0)), 0.0);
        add(&mut q, &squared_penalty(&sum, spec.chord_size as f64, pen.hard));
    }
    if spec.anchor_first_last_triad {
        for i in [0, n - 1] {
            for d in TONIC_TRIAD {
                add(&mut q, &(&one - &x(i, d)).scale(pen.anchor));
            }
        }
    }
    for i in spec.free_positions() {
        add(&mut q, &(&one - &x(i, spec.melody[i])).scale(pen.membership));
        for a in 1..=DEGREES {
            for b in a + 1..=DEGREES {
                if spec.forbidden_within.contains(&(b - a)) {
                    q.add_quadratic(layout.var(i, a - 1), layout.var(i, b - 1), pen.forbidden)?;
                }
            }
        }
    }
    Ok((q, layout))
}

/// Chords read from a sample as sets of degrees.
pub fn decode_chords(x: &[u8], layout: &Layout) -> Result<Vec<Vec<usize>>> {
    Ok(layout
        .selected(x)?
        .into_iter()
        .map(|s| s.into_iter().map(|j| j + 1).collect())
        .collect())
}
