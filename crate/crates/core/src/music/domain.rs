use std::fmt;

use serde::{Deserialize, Serialize};

use super::pitch::{Pitch, Scale};
use crate::error::{Error, Result};
use crate::qubo::{Sample, VarId};

/// Label used for the rest element in every domain.
pub const REST: &str = "r";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DomainKind {
    #[default]
    NamedPitch,
    SemitoneOffset,
    ScaleDegree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Element {
    Pitch(Pitch),
    Semitone(i32),
    Degree(i32),
    Rest,
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Pitch(p) => write!(f, "{p}"),
            Element::Semitone(k) => write!(f, "{k}"),
            Element::Degree(d) => write!(f, "{d}"),
            Element::Rest => f.write_str(REST),
        }
    }
}

impl Element {
    /// Concrete pitch under `scale`; `None` for a rest.
    pub fn to_pitch(&self, scale: &Scale) -> Result<Option<Pitch>> {
        Ok(match *self {
            Element::Pitch(p) => Some(p),
            Element::Semitone(k) => Some(scale.semitone(k)),
            Element::Degree(d) => Some(scale.degree(d)?),
            Element::Rest => None,
        })
    }
}

/// The ordered set of values a note may take.
#[derive(Clone, Debug, PartialEq)]
pub struct PitchDomain {
    pub kind: DomainKind,
    pub elements: Vec<Element>,
}

impl PitchDomain {
    /// Parses element labels; `r` is the rest.
    pub fn parse<S: AsRef<str>>(kind: DomainKind, labels: &[S]) -> Result<Self> {
        let elements = labels
            .iter()
            .map(|s| parse_element(kind, s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        let d = PitchDomain { kind, elements };
        d.validate()?;
        Ok(d)
    }

    pub fn named(pitches: &[&str]) -> Result<Self> {
        PitchDomain::parse(DomainKind::NamedPitch, pitches)
    }

    /// Degrees `1..=8`.
    pub fn degrees() -> Self {
        PitchDomain {
            kind: DomainKind::ScaleDegree,
            elements: (1..=8).map(Element::Degree).collect(),
        }
    }

    pub fn semitones(offsets: &[i32]) -> Result<Self> {
        let d = PitchDomain {
            kind: DomainKind::SemitoneOffset,
            elements: offsets.iter().map(|&k| Element::Semitone(k)).collect(),
        };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        if self.elements.is_empty() {
            return Err(Error::InvalidSpec("pitch domain is empty".into()));
        }
        for (i, e) in self.elements.iter().enumerate() {
            if self.elements[..i].contains(e) {
                return Err(Error::InvalidSpec(format!("domain element `{e}` is repeated")));
            }
            let ok = matches!(
                (self.kind, e),
                (_, Element::Rest)
                    | (DomainKind::NamedPitch, Element::Pitch(_))
                    | (DomainKind::SemitoneOffset, Element::Semitone(_))
                    | (DomainKind::ScaleDegree, Element::Degree(1..=8))
            );
            if !ok {
                return Err(Error::InvalidSpec(format!(
                    "element `{e}` does not belong to a {:?} domain",
                    self.kind
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        self.elements.iter().map(|e| e.to_string()).collect()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e.to_string() == label)
            .ok_or_else(|| Error::InvalidSpec(format!("`{label}` is not in the pitch domain")))
    }

    pub fn rest_index(&self) -> Option<usize> {
        self.elements.iter().position(|e| *e == Element::Rest)
    }

    /// Semitone height of each element, `None` for rests.
    pub fn heights(&self, scale: &Scale) -> Result<Vec<Option<i32>>> {
        self.elements
            .iter()
            .map(|e| Ok(e.to_pitch(scale)?.map(|p| p.midi())))
            .collect()
    }
}

fn parse_element(kind: DomainKind, s: &str) -> Result<Element> {
    if s == REST {
        return Ok(Element::Rest);
    }
    let int = || {
        s.parse::<i32>()
            .map_err(|_| Error::Parse(format!("expected an integer, got `{s}`")))
    };
    Ok(match kind {
        DomainKind::NamedPitch => Element::Pitch(s.parse()?),
        DomainKind::SemitoneOffset => Element::Semitone(int()?),
        DomainKind::ScaleDegree => Element::Degree(int()?),
    })
}

/// Where the `positions x elements` grid of indicator variables lives.
/// Variable `(i, j)` is `first + i * elements.len() + j`; any auxiliary
/// variables come after the grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Layout {
    pub positions: usize,
    pub elements: Vec<String>,
    pub first: usize,
}

impl Layout {
    pub fn new(positions: usize, elements: Vec<String>) -> Self {
        Layout {
            positions,
            elements,
            first: 0,
        }
    }

    pub fn width(&self) -> usize {
        self.elements.len()
    }

    pub fn grid_size(&self) -> usize {
        self.positions * self.width()
    }

    pub fn var(&self, i: usize, j: usize) -> VarId {
        VarId(self.first + i * self.width() + j)
    }

    /// Assignment bits with exactly the given element set at each position
    /// and everything else zero, padded to `num_vars`.
    pub fn encode(&self, choices: &[usize], num_vars: usize) -> Vec<u8> {
        let mut x = vec![0u8; num_vars];
        for (i, &j) in choices.iter().enumerate() {
            x[self.var(i, j).0] = 1;
        }
        x
    }

    /// Selected element indices at each position.
    pub fn selected(&self, x: &[u8]) -> Result<Vec<Vec<usize>>> {
        let need = self.first + self.grid_size();
        if x.len() < need {
            return Err(Error::Dimension {
                expected: need,
                actual: x.len(),
            });
        }
        Ok((0..self.positions)
            .map(|i| {
                (0..self.width())
                    .filter(|&j| x[self.var(i, j).0] == 1)
                    .collect()
            })
            .collect())
    }
}

/// A position whose one-hot block does not have exactly one bit set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionIssue {
    pub position: usize,
    pub selected: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodedSequence {
    /// The chosen element index at each position, if exactly one was set.
    pub choices: Vec<Option<usize>>,
    pub issues: Vec<PositionIssue>,
}

impl DecodedSequence {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    /// Element labels, with `?` where the position was invalid.
    pub fn labels(&self, layout: &Layout) -> Vec<String> {
        self.choices
            .iter()
            .map(|c| c.map_or_else(|| "?".to_string(), |j| layout.elements[j].clone()))
            .collect()
    }

    /// The choices when every position is valid.
    pub fn complete(&self) -> Option<Vec<usize>> {
        self.choices.iter().copied().collect()
    }
}

/// Reads one element per position from a sample.
pub fn decode_sequence(sample: &Sample, layout: &Layout) -> Result<DecodedSequence> {
    let selected = layout.selected(&sample.assignment)?;
    let mut choices = Vec::with_capacity(layout.positions);
    let mut issues = Vec::new();
    for (i, s) in selected.iter().enumerate() {
        if s.len() == 1 {
            choices.push(Some(s[0]));
        } else {
            choices.push(None);
            issues.push(PositionIssue {
                position: i,
                selected: s.len(),
            });
        }
    }
    Ok(DecodedSequence { choices, issues })
}

/// Concrete pitches for a sequence of domain elements; rests are `None`.
pub fn render(seq: &[Element], scale: &Scale) -> Result<Vec<Option<Pitch>>> {
    seq.iter().map(|e| e.to_pitch(scale)).collect()
}
