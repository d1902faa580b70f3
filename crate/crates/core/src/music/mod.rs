//! Music formulations: melody, rhythm, harmony, chord progressions and
//! single-chord harmonization, plus weight extraction and score output.

mod chords;
mod domain;
mod harmony;
mod melody;
mod pitch;
mod qharmony;
mod rhythm;
mod score;
mod spec_file;
mod weights;

use std::collections::BTreeMap;
use std::fmt;

pub use chords::{build_chord_mrf, ChordProgressionSpec, CHORDS};
pub use domain::{
    decode_sequence, render, DecodedSequence, DomainKind, Element, Layout, PitchDomain,
    PositionIssue, REST,
};
pub use harmony::{
    build_harmony, decode_chords, HarmonyPenalties, HarmonyPenaltyValues, HarmonySpec, DEGREES,
    TONIC_TRIAD,
};
pub use melody::{
    build_melody, build_pitch_duration, joint_label, MelodyPenalties, MelodyPenaltyValues,
    MelodySpec, TENDENCIES,
};
pub use pitch::{Duration, Mode, Pitch, Scale};
pub use qharmony::{build_qharmony, QHarmonySpec};
pub use rhythm::{build_rhythm, RhythmPenalties, RhythmPenaltyValues, RhythmSpec};
pub use score::{abc_chords, abc_melody, abc_with_chords, format_score, parse_score, Note};
pub use spec_file::{
    chords_from_toml, harmony_from_toml, melody_from_toml, qharmony_from_toml, rhythm_from_toml,
    ChordsFile, HarmonyFile, MelodyFile,
};
pub use weights::{
    degree_weights, durations_of, extract_joint_weights, extract_weights, ode_to_joy, ODE_TO_JOY,
};

use crate::error::{Error, Result};

/// Transition weights keyed by `(from, to)` element labels.
pub type Weights = BTreeMap<(String, String), f64>;

/// A broken rule found in a decoded result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: &'static str,
    /// Zero-based position, or `None` for whole-sequence rules.
    pub position: Option<usize>,
    pub detail: String,
}

impl Violation {
    pub(crate) fn at(rule: &'static str, position: usize, detail: String) -> Self {
        Violation {
            rule,
            position: Some(position),
            detail,
        }
    }

    pub(crate) fn global(rule: &'static str, detail: String) -> Self {
        Violation {
            rule,
            position: None,
            detail,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.position {
            Some(i) => write!(f, "{} at position {}: {}", self.rule, i + 1, self.detail),
            None => write!(f, "{}: {}", self.rule, self.detail),
        }
    }
}

pub(crate) fn check_penalty(p: f64) -> Result<()> {
    if p.is_finite() && p > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidPenalty(p))
    }
}

pub(crate) fn check_weights(w: &Weights, known: impl Fn(&str) -> Result<()>) -> Result<()> {
    for ((a, b), &v) in w {
        known(a)?;
        known(b)?;
        if !(v.is_finite() && v >= 0.0) {
            return Err(Error::InvalidSpec(format!("weight {a} -> {b} must be non-negative, got {v}")));
        }
    }
    Ok(())
}
