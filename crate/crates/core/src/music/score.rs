//! Plain score text and ABC output.
//!
//! Score text is one token per note, `pitch/duration`, separated by
//! whitespace: `F#4/Q F#4/Q G4/DQ r/E`. A rest is written `r`.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::domain::REST;
use super::pitch::{Duration, Pitch, Scale};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Note {
    /// `None` for a rest.
    pub pitch: Option<Pitch>,
    pub duration: Duration,
}

impl Note {
    pub fn new(pitch: Option<Pitch>, duration: Duration) -> Self {
        Note { pitch, duration }
    }

    pub fn pitch_label(&self) -> String {
        self.pitch.map_or_else(|| REST.to_string(), |p| p.to_string())
    }
}

/// Parses score text. Durations must be one of the standard names
/// accepted by [`Duration::named`].
pub fn parse_score(text: &str) -> Result<Vec<Note>> {
    text.split_whitespace()
        .map(|tok| {
            let (p, d) = tok
                .split_once('/')
                .ok_or_else(|| Error::Parse(format!("expected pitch/duration, got `{tok}`")))?;
            let pitch = if p == REST { None } else { Some(p.parse()?) };
            Ok(Note::new(pitch, Duration::named(d)?))
        })
        .collect()
}

pub fn format_score(notes: &[Note]) -> String {
    let tokens: Vec<String> = notes
        .iter()
        .map(|n| format!("{}/{}", n.pitch_label(), n.duration))
        .collect();
    tokens.join(" ")
}

/// ABC pitch letters and octave marks, without accidentals.
fn abc_letter(p: &Pitch) -> String {
    let c = p.letter_char();
    if p.octave >= 5 {
        let mut s = c.to_ascii_lowercase().to_string();
        for _ in 5..p.octave {
            s.push('\'');
        }
        s
    } else {
        let mut s = c.to_string();
        for _ in p.octave..4 {
            s.push(',');
        }
        s
    }
}

fn abc_length(eighths: u32) -> String {
    if eighths == 1 {
        String::new()
    } else {
        eighths.to_string()
    }
}

/// Tracks accidentals in force within a bar.
struct Accidentals {
    key: [i8; 7],
    bar: BTreeMap<(u8, i32), i8>,
}

impl Accidentals {
    fn new(scale: &Scale) -> Self {
        Accidentals {
            key: scale.signature(),
            bar: BTreeMap::new(),
        }
    }

    fn pitch(&mut self, p: &Pitch) -> String {
        let key = (p.letter, p.octave);
        let current = self.bar.get(&key).copied().unwrap_or(self.key[p.letter as usize]);
        let mut s = String::new();
        if p.accidental != current {
            match p.accidental {
                0 => s.push('='),
                a if a > 0 => s.push_str(&"^".repeat(a as usize)),
                a => s.push_str(&"_".repeat(a.unsigned_abs() as usize)),
            }
            self.bar.insert(key, p.accidental);
        }
        s + &abc_letter(p)
    }

    fn new_bar(&mut self) {
        self.bar.clear();
    }
}

fn header(title: &str, scale: &Scale) -> String {
    format!("X:1\nT:{title}\nM:4/4\nL:1/8\nK:{}\n", scale.abc_key())
}

/// One voice of ABC body text. Each item is the pitches sounding together
/// (empty for a rest) and the duration. Bar lines fall every 8 eighths.
fn abc_voice(items: &[(Vec<Pitch>, u32)], scale: &Scale) -> String {
    let mut acc = Accidentals::new(scale);
    let mut out = String::new();
    let mut filled = 0;
    for (i, (pitches, len)) in items.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        match pitches.as_slice() {
            [] => out.push('z'),
            [p] => out.push_str(&acc.pitch(p)),
            many => {
                out.push('[');
                for p in many {
                    out.push_str(&acc.pitch(p));
                }
                out.push(']');
            }
        }
        out.push_str(&abc_length(*len));
        filled += len;
        if filled >= 8 && i + 1 < items.len() {
            out.push_str(" |");
            filled %= 8;
            acc.new_bar();
        }
    }
    out.push_str(" |]\n");
    out
}

/// A single melody line as an ABC tune.
pub fn abc_melody(title: &str, scale: &Scale, notes: &[Note]) -> String {
    let items: Vec<(Vec<Pitch>, u32)> = notes
        .iter()
        .map(|n| (n.pitch.into_iter().collect(), n.duration.eighths))
        .collect();
    header(title, scale) + &abc_voice(&items, scale)
}

/// A sequence of chords as a single-voice ABC tune.
pub fn abc_chords(title: &str, scale: &Scale, chords: &[(Vec<Pitch>, Duration)]) -> String {
    let items: Vec<(Vec<Pitch>, u32)> = chords.iter().map(|(c, d)| (c.clone(), d.eighths)).collect();
    header(title, scale) + &abc_voice(&items, scale)
}

/// A melody with one chord under each note, as a two-voice ABC tune.
pub fn abc_with_chords(title: &str, scale: &Scale, notes: &[Note], chords: &[Vec<Pitch>]) -> Result<String> {
    if notes.len() != chords.len() {
        return Err(Error::Dimension {
            expected: notes.len(),
            actual: chords.len(),
        });
    }
    let melody: Vec<(Vec<Pitch>, u32)> = notes
        .iter()
        .map(|n| (n.pitch.into_iter().collect(), n.duration.eighths))
        .collect();
    let harmony: Vec<(Vec<Pitch>, u32)> = chords
        .iter()
        .zip(notes)
        .map(|(c, n)| (c.clone(), n.duration.eighths))
        .collect();
    let mut out = header(title, scale);
    writeln!(out, "V:1").unwrap();
    out += &abc_voice(&melody, scale);
    writeln!(out, "V:2").unwrap();
    out += &abc_voice(&harmony, scale);
    Ok(out)
}
