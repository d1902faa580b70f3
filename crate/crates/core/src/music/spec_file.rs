//! TOML spec files for the music builders.
//!
//! A melody file, with an optional rhythm table:
//!
//! ```toml
//! n = 5
//! kind = "named-pitch"            # or "semitone-offset", "scale-degree"
//! domain = ["C4", "D4", "E4", "G4"]
//! scale = { tonic = "C4", mode = "major" }
//! forbidden_successions = [["D4", "G4"]]
//! no_triple_repeat = true
//! weights = [["C4", "D4", 2.0]]
//!
//! [penalties]
//! hard = 10.0
//!
//! [rhythm]
//! durations = ["Q", "H"]
//! min_count_each = 2
//! ```

use serde::Deserialize;

use super::chords::ChordProgressionSpec;
use super::domain::{DomainKind, PitchDomain};
use super::harmony::{HarmonyPenalties, HarmonySpec};
use super::melody::{MelodyPenalties, MelodySpec};
use super::pitch::{Duration, Scale};
use super::qharmony::QHarmonySpec;
use super::rhythm::{RhythmPenalties, RhythmSpec};
use super::Weights;
use crate::error::{Error, Result};

#[derive(Deserialize)]
#[serde(untagged)]
enum Token {
    Int(i64),
    Str(String),
}

impl Token {
    fn label(&self) -> String {
        match self {
            Token::Int(i) => i.to_string(),
            Token::Str(s) => s.clone(),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum DurationEntry {
    Named(String),
    Custom { name: String, eighths: u32 },
}

impl DurationEntry {
    fn resolve(self) -> Result<Duration> {
        match self {
            DurationEntry::Named(n) => Duration::named(&n),
            DurationEntry::Custom { name, eighths } => Ok(Duration::new(name, eighths)),
        }
    }
}

fn weights(entries: Vec<(Token, Token, f64)>) -> Weights {
    let mut out = Weights::new();
    for (a, b, w) in entries {
        *out.entry((a.label(), b.label())).or_insert(0.0) += w;
    }
    out
}

fn parse<'de, T: Deserialize<'de>>(text: &'de str) -> Result<T> {
    toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RhythmFile {
    n: Option<usize>,
    durations: Vec<DurationEntry>,
    #[serde(default)]
    weights: Vec<(Token, Token, f64)>,
    #[serde(default = "two")]
    min_count_each: usize,
    total_length: Option<u32>,
    #[serde(default)]
    penalties: RhythmPenalties,
}

fn two() -> usize {
    2
}

impl RhythmFile {
    fn resolve(self, default_n: Option<usize>) -> Result<RhythmSpec> {
        let n = self
            .n
            .or(default_n)
            .ok_or_else(|| Error::InvalidSpec("rhythm spec needs `n`".into()))?;
        let durations = self
            .durations
            .into_iter()
            .map(DurationEntry::resolve)
            .collect::<Result<_>>()?;
        let spec = RhythmSpec {
            n,
            durations,
            weights: weights(self.weights),
            min_count_each: self.min_count_each,
            total_length: self.total_length,
            penalties: self.penalties,
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MelodyFileRaw {
    n: usize,
    #[serde(default)]
    kind: DomainKind,
    domain: Vec<Token>,
    #[serde(default)]
    scale: Scale,
    #[serde(default)]
    forbidden_successions: Vec<(Token, Token)>,
    #[serde(default)]
    forbidden_intervals: Vec<i32>,
    #[serde(default)]
    no_triple_repeat: bool,
    #[serde(default)]
    anchor_first_last: bool,
    #[serde(default)]
    tendency_rules: bool,
    #[serde(default)]
    weights: Vec<(Token, Token, f64)>,
    rest_count: Option<usize>,
    #[serde(default)]
    penalties: MelodyPenalties,
    rhythm: Option<RhythmFile>,
    #[serde(default)]
    joint_weights: Vec<(Token, Token, f64)>,
}

/// A melody spec and, optionally, a rhythm to pair it with.
#[derive(Clone, Debug, PartialEq)]
pub struct MelodyFile {
    pub spec: MelodySpec,
    pub rhythm: Option<RhythmSpec>,
    /// Weights over `pitch/duration` labels, used only with a rhythm.
    pub joint_weights: Weights,
}

pub fn melody_from_toml(text: &str) -> Result<MelodyFile> {
    let raw: MelodyFileRaw = parse(text)?;
    let labels: Vec<String> = raw.domain.iter().map(Token::label).collect();
    let spec = MelodySpec {
        n: raw.n,
        domain: PitchDomain::parse(raw.kind, &labels)?,
        scale: raw.scale,
        forbidden_successions: raw
            .forbidden_successions
            .iter()
            .map(|(a, b)| (a.label(), b.label()))
            .collect(),
        forbidden_intervals: raw.forbidden_intervals,
        no_triple_repeat: raw.no_triple_repeat,
        anchor_first_last: raw.anchor_first_last,
        tendency_rules: raw.tendency_rules,
        weights: weights(raw.weights),
        rest_count: raw.rest_count,
        penalties: raw.penalties,
    };
    spec.validate()?;
    let rhythm = raw.rhythm.map(|r| r.resolve(Some(raw.n))).transpose()?;
    if let Some(r) = &rhythm {
        if r.n != spec.n {
            return Err(Error::InvalidSpec(format!(
                "rhythm has {} notes but melody has {}",
                r.n, spec.n
            )));
        }
    }
    let joint_weights = weights(raw.joint_weights);
    if rhythm.is_none() && !joint_weights.is_empty() {
        return Err(Error::InvalidSpec("joint_weights need a [rhythm] table".into()));
    }
    Ok(MelodyFile {
        spec,
        rhythm,
        joint_weights,
    })
}

pub fn rhythm_from_toml(text: &str) -> Result<RhythmSpec> {
    parse::<RhythmFile>(text)?.resolve(None)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HarmonyFileRaw {
    melody: Vec<usize>,
    #[serde(default = "three")]
    chord_size: usize,
    #[serde(default = "default_forbidden")]
    forbidden_within: Vec<usize>,
    #[serde(default = "yes")]
    anchor_first_last_triad: bool,
    #[serde(default)]
    scale: Scale,
    #[serde(default)]
    durations: Vec<DurationEntry>,
    #[serde(default)]
    penalties: HarmonyPenalties,
}

fn three() -> usize {
    3
}

fn yes() -> bool {
    true
}

fn default_forbidden() -> Vec<usize> {
    vec![1, 6, 7]
}

/// A harmony spec with the scale and note lengths used to render it.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonyFile {
    pub spec: HarmonySpec,
    pub scale: Scale,
    /// One per melody note; quarter notes when the file gives none.
    pub durations: Vec<Duration>,
}

pub fn harmony_from_toml(text: &str) -> Result<HarmonyFile> {
    let raw: HarmonyFileRaw = parse(text)?;
    let spec = HarmonySpec {
        melody: raw.melody,
        chord_size: raw.chord_size,
        forbidden_within: raw.forbidden_within,
        anchor_first_last_triad: raw.anchor_first_last_triad,
        penalties: raw.penalties,
    };
    spec.validate()?;
    let durations: Vec<Duration> = if raw.durations.is_empty() {
        vec![Duration::named("Q")?; spec.n()]
    } else {
        raw.durations
            .into_iter()
            .map(DurationEntry::resolve)
            .collect::<Result<_>>()?
    };
    if durations.len() != spec.n() {
        return Err(Error::InvalidSpec(format!(
            "{} durations for {} melody notes",
            durations.len(),
            spec.n()
        )));
    }
    Ok(HarmonyFile {
        spec,
        scale: raw.scale,
        durations,
    })
}

#[derive(Deserialize)]
struct ChordsFileRaw {
    #[serde(flatten)]
    spec: ChordProgressionSpec,
    #[serde(default)]
    scale: Scale,
}

/// A progression spec with the scale used to spell its triads.
#[derive(Clone, Debug, PartialEq)]
pub struct ChordsFile {
    pub spec: ChordProgressionSpec,
    pub scale: Scale,
}

pub fn chords_from_toml(text: &str) -> Result<ChordsFile> {
    let raw: ChordsFileRaw = parse(text)?;
    raw.spec.validate()?;
    Ok(ChordsFile {
        spec: raw.spec,
        scale: raw.scale,
    })
}

pub fn qharmony_from_toml(text: &str) -> Result<QHarmonySpec> {
    let spec: QHarmonySpec = parse(text)?;
    spec.validate()?;
    Ok(spec)
}
