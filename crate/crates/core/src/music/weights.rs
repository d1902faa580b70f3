use super::pitch::{Duration, Pitch, Scale};
use super::score::{parse_score, Note};
use super::Weights;
use crate::error::{Error, Result};
use crate::mrf::transition_counts;

/// Opening phrase of the Ode to Joy theme in D major.
pub const ODE_TO_JOY: &str =
    "F#4/Q F#4/Q G4/Q A4/Q A4/Q G4/Q F#4/Q E4/Q D4/Q D4/Q E4/Q F#4/Q F#4/DQ E4/E E4/H";

pub fn ode_to_joy() -> Vec<Note> {
    parse_score(ODE_TO_JOY).expect("fixture parses")
}

fn counts_to_weights(labels: &[String]) -> Result<Weights> {
    Ok(transition_counts(labels)?
        .into_iter()
        .map(|(k, c)| (k, c as f64))
        .collect())
}

/// Consecutive-pair counts of pitches and of durations.
pub fn extract_weights(piece: &[Note]) -> Result<(Weights, Weights)> {
    if piece.len() < 2 {
        return Err(Error::InvalidSpec(format!(
            "need at least 2 notes to extract weights, got {}",
            piece.len()
        )));
    }
    let pitches: Vec<String> = piece.iter().map(Note::pitch_label).collect();
    let durations: Vec<String> = piece.iter().map(|n| n.duration.name.clone()).collect();
    Ok((counts_to_weights(&pitches)?, counts_to_weights(&durations)?))
}

/// Consecutive-pair counts of joint `pitch/duration` labels.
pub fn extract_joint_weights(piece: &[Note]) -> Result<Weights> {
    let labels: Vec<String> = piece
        .iter()
        .map(|n| super::melody::joint_label(&n.pitch_label(), &n.duration.name))
        .collect();
    counts_to_weights(&labels)
}

/// Relabels pitch weights by scale degree. Pitches outside the scale are an
/// error.
pub fn degree_weights(weights: &Weights, scale: &Scale) -> Result<Weights> {
    let degree = |label: &str| -> Result<String> {
        let p: Pitch = label.parse()?;
        scale
            .degree_of(&p)
            .map(|d| d.to_string())
            .ok_or_else(|| Error::InvalidSpec(format!("{p} is not in the scale")))
    };
    let mut out = Weights::new();
    for ((a, b), &w) in weights {
        *out.entry((degree(a)?, degree(b)?)).or_insert(0.0) += w;
    }
    Ok(out)
}

/// The standard lengths appearing in a piece, shortest first.
pub fn durations_of(piece: &[Note]) -> Vec<Duration> {
    let mut out: Vec<Duration> = Vec::new();
    for n in piece {
        if !out.contains(&n.duration) {
            out.push(n.duration.clone());
        }
    }
    out.sort_by_key(|d| d.eighths);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(pairs: &[(&str, &str, f64)]) -> Weights {
        pairs
            .iter()
            .map(|&(a, b, x)| ((a.to_string(), b.to_string()), x))
            .collect()
    }

    #[test]
    fn ode_to_joy_weights() {
        let (pitch, dur) = extract_weights(&ode_to_joy()).unwrap();
        assert_eq!(
            pitch,
            w(&[
                ("F#4", "E4", 2.0),
                ("F#4", "F#4", 2.0),
                ("F#4", "G4", 1.0),
                ("G4", "F#4", 1.0),
                ("G4", "A4", 1.0),
                ("A4", "G4", 1.0),
                ("A4", "A4", 1.0),
                ("E4", "D4", 1.0),
                ("E4", "E4", 1.0),
                ("E4", "F#4", 1.0),
                ("D4", "D4", 1.0),
                ("D4", "E4", 1.0),
            ])
        );
        assert_eq!(
            dur,
            w(&[("Q", "Q", 11.0), ("Q", "DQ", 1.0), ("DQ", "E", 1.0), ("E", "H", 1.0)])
        );
        assert_eq!(pitch.values().sum::<f64>(), 14.0);
    }

    #[test]
    fn two_notes() {
        let (p, d) = extract_weights(&parse_score("C4/Q C4/Q").unwrap()).unwrap();
        assert_eq!(p, w(&[("C4", "C4", 1.0)]));
        assert_eq!(d, w(&[("Q", "Q", 1.0)]));
        assert!(extract_weights(&parse_score("C4/Q").unwrap()).is_err());
    }

    #[test]
    fn degrees_in_d_major() {
        let (pitch, _) = extract_weights(&ode_to_joy()).unwrap();
        let d = degree_weights(&pitch, &Scale::major("D4".parse().unwrap())).unwrap();
        assert_eq!(d[&("3".to_string(), "2".to_string())], 2.0);
        assert_eq!(d[&("1".to_string(), "2".to_string())], 1.0);
    }
}
