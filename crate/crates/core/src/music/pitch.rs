use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const LETTERS: [char; 7] = ['C', 'D', 'E', 'F', 'G', 'A', 'B'];
const NATURAL: [i32; 7] = [0, 2, 4, 5, 7, 9, 11];

/// A spelled pitch such as `F#4`; octave 4 holds middle C.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pitch {
    /// 0 = C through 6 = B.
    pub letter: u8,
    /// Sharps positive, flats negative.
    pub accidental: i8,
    pub octave: i32,
}

impl Pitch {
    pub fn new(letter: u8, accidental: i8, octave: i32) -> Self {
        Pitch {
            letter: letter % 7,
            accidental,
            octave,
        }
    }

    /// MIDI note number; C4 is 60.
    pub fn midi(&self) -> i32 {
        12 * (self.octave + 1) + NATURAL[self.letter as usize] + self.accidental as i32
    }

    pub fn letter_char(&self) -> char {
        LETTERS[self.letter as usize]
    }

    /// Pitch of the same letter spelled to sound at `midi`.
    fn spell(letter: u8, octave: i32, midi: i32) -> Self {
        let natural = Pitch::new(letter, 0, octave).midi();
        Pitch::new(letter, (midi - natural) as i8, octave)
    }
}

impl fmt::Display for Pitch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter_char())?;
        let sym = if self.accidental > 0 { "#" } else { "b" };
        for _ in 0..self.accidental.unsigned_abs() {
            f.write_str(sym)?;
        }
        write!(f, "{}", self.octave)
    }
}

impl FromStr for Pitch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid pitch `{s}`"));
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let letter = LETTERS.iter().position(|&c| c == head).ok_or_else(bad)? as u8;
        let rest = chars.as_str();
        let digits = rest.trim_start_matches(['#', 'b']);
        let acc_part = &rest[..rest.len() - digits.len()];
        let accidental = acc_part
            .chars()
            .map(|c| if c == '#' { 1i8 } else { -1 })
            .sum::<i8>();
        if acc_part.contains('#') && acc_part.contains('b') {
            return Err(bad());
        }
        let octave = digits.parse().map_err(|_| bad())?;
        Ok(Pitch::new(letter, accidental, octave))
    }
}

impl Serialize for Pitch {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Pitch {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    Major,
    NaturalMinor,
    Chromatic,
}

impl Mode {
    fn intervals(self) -> [i32; 7] {
        match self {
            Mode::Major | Mode::Chromatic => [0, 2, 4, 5, 7, 9, 11],
            Mode::NaturalMinor => [0, 2, 3, 5, 7, 8, 10],
        }
    }
}

/// A tonic and mode; maps scale degrees and semitone offsets to pitches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scale {
    pub tonic: Pitch,
    #[serde(default)]
    pub mode: Mode,
}

impl Default for Scale {
    fn default() -> Self {
        Scale::major("C4".parse().unwrap())
    }
}

impl Scale {
    pub fn major(tonic: Pitch) -> Self {
        Scale {
            tonic,
            mode: Mode::Major,
        }
    }

    pub fn natural_minor(tonic: Pitch) -> Self {
        Scale {
            tonic,
            mode: Mode::NaturalMinor,
        }
    }

    /// Degree `d` (1-based; 8 is the octave above the tonic). In chromatic
    /// mode degree `d` is the pitch `d - 1` semitones above the tonic.
    pub fn degree(&self, d: i32) -> Result<Pitch> {
        if d < 1 {
            return Err(Error::InvalidSpec(format!("scale degree {d} is below 1")));
        }
        if self.mode == Mode::Chromatic {
            return Ok(self.semitone(d - 1));
        }
        let steps = d - 1;
        let pos = self.tonic.letter as i32 + steps;
        let letter = pos.rem_euclid(7) as u8;
        let octave = self.tonic.octave + pos.div_euclid(7);
        let midi = self.tonic.midi() + 12 * steps.div_euclid(7) + self.mode.intervals()[steps.rem_euclid(7) as usize];
        Ok(Pitch::spell(letter, octave, midi))
    }

    /// The pitch `k` semitones above the tonic. Scale tones keep their
    /// in-scale spelling; others are spelled as a raised or lowered
    /// neighbour according to the key signature.
    pub fn semitone(&self, k: i32) -> Pitch {
        let midi = self.tonic.midi() + k;
        let octaves = k.div_euclid(12);
        let pc = k.rem_euclid(12);
        let intervals = self.mode.intervals();
        if let Some(i) = intervals.iter().position(|&s| s == pc) {
            let d = 7 * octaves + i as i32 + 1;
            return self.degree_diatonic(d);
        }
        let below = intervals.iter().rposition(|&s| s < pc).unwrap() as i32;
        let d = 7 * octaves + below + 1;
        let spell_from = |d: i32| {
            let base = self.degree_diatonic(d);
            Pitch::spell(base.letter, base.octave, midi)
        };
        let (raised, lowered) = (spell_from(d), spell_from(d + 1));
        let (r, l) = (raised.accidental.abs(), lowered.accidental.abs());
        if r < l || (r == l && self.signature_sign() >= 0) {
            raised
        } else {
            lowered
        }
    }

    fn degree_diatonic(&self, d: i32) -> Pitch {
        let diatonic = Scale {
            tonic: self.tonic,
            mode: if self.mode == Mode::Chromatic { Mode::Major } else { self.mode },
        };
        diatonic.degree(d).expect("degree is positive")
    }

    /// Accidental the key signature gives to each letter.
    pub fn signature(&self) -> [i8; 7] {
        let mut sig = [0i8; 7];
        for d in 1..=7 {
            let p = self.degree_diatonic(d);
            sig[p.letter as usize] = p.accidental;
        }
        sig
    }

    fn signature_sign(&self) -> i32 {
        self.signature().iter().map(|&a| a as i32).sum::<i32>().signum()
    }

    /// Scale degree of `p` relative to the tonic, matching by letter and
    /// sounding pitch; `None` when `p` is not a scale tone.
    pub fn degree_of(&self, p: &Pitch) -> Option<i32> {
        let steps = (p.letter as i32 - self.tonic.letter as i32)
            + 7 * (p.octave - self.tonic.octave);
        let d = steps + 1;
        if d < 1 {
            return None;
        }
        (self.degree_diatonic(d) == *p).then_some(d)
    }

    /// ABC key field, such as `D` or `Gm`.
    pub fn abc_key(&self) -> String {
        let mut s = self.tonic.letter_char().to_string();
        let sym = if self.tonic.accidental > 0 { '#' } else { 'b' };
        for _ in 0..self.tonic.accidental.unsigned_abs() {
            s.push(sym);
        }
        if self.mode == Mode::NaturalMinor {
            s.push('m');
        }
        s
    }
}

/// A note length measured in eighth notes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Duration {
    pub name: String,
    pub eighths: u32,
}

impl Duration {
    pub fn new(name: impl Into<String>, eighths: u32) -> Self {
        Duration {
            name: name.into(),
            eighths,
        }
    }

    /// Standard lengths: `E`=1, `Q`=2, `DQ`=3, `H`=4, `DH`=6, `W`=8.
    pub fn named(name: &str) -> Result<Self> {
        let eighths = match name {
            "E" => 1,
            "Q" => 2,
            "DQ" => 3,
            "H" => 4,
            "DH" => 6,
            "W" => 8,
            _ => return Err(Error::Parse(format!("unknown duration `{name}`"))),
        };
        Ok(Duration::new(name, eighths))
    }
}

impl fmt::Display for Duration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}
