use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::domain::{Element, Layout, PitchDomain};
use super::pitch::Scale;
use super::rhythm::{add_rhythm_rules, RhythmSpec};
use super::{check_penalty, check_weights, Violation, Weights};
use crate::compiler::{squared_penalty, BinaryEncoding, PolyExpr};
use crate::error::{Error, Result};
use crate::qubo::{QuboModel, VarId};

/// Tendency resolutions: degree to the degree it should move to next.
pub const TENDENCIES: [(i32, i32); 4] = [(2, 1), (4, 3), (6, 5), (7, 8)];

/// Per-family penalty overrides; unset entries get computed defaults.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MelodyPenalties {
    pub hard: Option<f64>,
    pub succession: Option<f64>,
    pub interval: Option<f64>,
    pub no_triple: Option<f64>,
    pub anchor: Option<f64>,
    pub tendency: Option<f64>,
    pub rest: Option<f64>,
}

/// Penalty values actually used when building a melody model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MelodyPenaltyValues {
    pub hard: f64,
    pub succession: f64,
    pub interval: f64,
    pub no_triple: f64,
    pub anchor: f64,
    pub tendency: f64,
    pub rest: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MelodySpec {
    pub n: usize,
    pub domain: PitchDomain,
    /// Used to give degrees and offsets a height and to render the result.
    pub scale: Scale,
    pub forbidden_successions: Vec<(String, String)>,
    /// Semitone distances to avoid between consecutive notes.
    pub forbidden_intervals: Vec<i32>,
    pub no_triple_repeat: bool,
    pub anchor_first_last: bool,
    pub tendency_rules: bool,
    pub weights: Weights,
    /// Exact number of rests, if the domain has a rest.
    pub rest_count: Option<usize>,
    pub penalties: MelodyPenalties,
}

impl MelodySpec {
    pub fn new(n: usize, domain: PitchDomain) -> Self {
        MelodySpec {
            n,
            domain,
            scale: Scale::default(),
            forbidden_successions: Vec::new(),
            forbidden_intervals: Vec::new(),
            no_triple_repeat: false,
            anchor_first_last: false,
            tendency_rules: false,
            weights: Weights::new(),
            rest_count: None,
            penalties: MelodyPenalties::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidSpec(format!("melody needs n >= 2, got {}", self.n)));
        }
        self.domain.validate()?;
        for (a, b) in &self.forbidden_successions {
            self.domain.index_of(a)?;
            self.domain.index_of(b)?;
        }
        check_weights(&self.weights, |l| self.domain.index_of(l).map(|_| ()))?;
        if self.forbidden_intervals.iter().any(|&a| a < 0) {
            return Err(Error::InvalidSpec("forbidden intervals must be non-negative".into()));
        }
        if self.tendency_rules && self.domain.kind != super::domain::DomainKind::ScaleDegree {
            return Err(Error::InvalidSpec(
                "tendency rules need a scale-degree domain".into(),
            ));
        }
        if self.anchor_first_last {
            self.anchor_index()?;
        }
        if let Some(k) = self.rest_count {
            if self.domain.rest_index().is_none() {
                return Err(Error::InvalidSpec("rest count given but the domain has no rest".into()));
            }
            if k > self.n {
                return Err(Error::InvalidSpec(format!(
                    "rest count {k} exceeds the melody length {}",
                    self.n
                )));
            }
        }
        self.domain.heights(&self.scale)?;
        let p = &self.penalties;
        for v in [p.hard, p.succession, p.interval, p.no_triple, p.anchor, p.tendency, p.rest]
            .into_iter()
            .flatten()
        {
            check_penalty(v)?;
        }
        Ok(())
    }

    /// Element the first and last notes are anchored to: degree 1 in a
    /// degree domain, otherwise the first element.
    pub fn anchor_index(&self) -> Result<usize> {
        let idx = if self.domain.kind == super::domain::DomainKind::ScaleDegree {
            self.domain
                .elements
                .iter()
                .position(|e| *e == Element::Degree(1))
                .ok_or_else(|| Error::InvalidSpec("anchoring needs degree 1 in the domain".into()))?
        } else {
            0
        };
        if self.domain.elements[idx] == Element::Rest {
            return Err(Error::InvalidSpec("cannot anchor to a rest".into()));
        }
        Ok(idx)
    }

    fn soft_enabled(&self) -> [bool; 5] {
        [
            !self.forbidden_successions.is_empty(),
            !self.forbidden_intervals.is_empty(),
            self.no_triple_repeat,
            self.anchor_first_last,
            self.tendency_rules,
        ]
    }

    /// Resolves defaults. Soft families default to 1, except tendency,
    /// which defaults to the mean nonzero weight. The hard penalty defaults
    /// to `2 * (total weight + sum of enabled soft penalties) + 1`.
    pub fn penalty_values(&self) -> MelodyPenaltyValues {
        self.penalty_values_with(self.weights.values().sum())
    }

    pub(crate) fn penalty_values_with(&self, total_weight: f64) -> MelodyPenaltyValues {
        let p = &self.penalties;
        let nonzero: Vec<f64> = self.weights.values().copied().filter(|&w| w != 0.0).collect();
        let mean = if nonzero.is_empty() {
            1.0
        } else {
            nonzero.iter().sum::<f64>() / nonzero.len() as f64
        };
        let soft = [
            p.succession.unwrap_or(1.0),
            p.interval.unwrap_or(1.0),
            p.no_triple.unwrap_or(1.0),
            p.anchor.unwrap_or(1.0),
            p.tendency.unwrap_or(mean),
        ];
        let enabled: f64 = soft
            .iter()
            .zip(self.soft_enabled())
            .filter(|(_, on)| *on)
            .map(|(v, _)| v)
            .sum();
        let hard = p.hard.unwrap_or(2.0 * (total_weight + enabled) + 1.0);
        MelodyPenaltyValues {
            hard,
            succession: soft[0],
            interval: soft[1],
            no_triple: soft[2],
            anchor: soft[3],
            tendency: soft[4],
            rest: p.rest.unwrap_or(hard),
        }
    }

    /// Pairs `(j, j')` of element indices that may not be consecutive
    /// because of a forbidden succession or interval, with their penalty.
    fn pair_penalties(&self, pen: &MelodyPenaltyValues) -> Result<BTreeMap<(usize, usize), f64>> {
        let mut out = BTreeMap::new();
        for (a, b) in &self.forbidden_successions {
            let key = (self.domain.index_of(a)?, self.domain.index_of(b)?);
            *out.entry(key).or_insert(0.0) += pen.succession;
        }
        let heights = self.domain.heights(&self.scale)?;
        let banned: BTreeSet<i32> = self.forbidden_intervals.iter().copied().collect();
        for (j, hj) in heights.iter().enumerate() {
            for (k, hk) in heights.iter().enumerate() {
                if let (Some(a), Some(b)) = (hj, hk) {
                    if banned.contains(&(a - b).abs()) {
                        *out.entry((j, k)).or_insert(0.0) += pen.interval;
                    }
                }
            }
        }
        Ok(out)
    }

    fn tendency_pairs(&self) -> Vec<(usize, Option<usize>)> {
        let idx = |d: i32| {
            self.domain
                .elements
                .iter()
                .position(|e| *e == Element::Degree(d))
        };
        TENDENCIES
            .iter()
            .filter_map(|&(from, to)| idx(from).map(|f| (f, idx(to))))
            .collect()
    }

    /// Rule violations of a decoded sequence of element indices.
    pub fn violations(&self, seq: &[usize]) -> Result<Vec<Violation>> {
        self.validate()?;
        if seq.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                actual: seq.len(),
            });
        }
        let label = |j: usize| self.domain.elements[j].to_string();
        let mut out = Vec::new();
        let forbidden: BTreeSet<(usize, usize)> = self
            .forbidden_successions
            .iter()
            .map(|(a, b)| Ok((self.domain.index_of(a)?, self.domain.index_of(b)?)))
            .collect::<Result<_>>()?;
        let heights = self.domain.heights(&self.scale)?;
        for i in 0..self.n - 1 {
            let (a, b) = (seq[i], seq[i + 1]);
            if forbidden.contains(&(a, b)) {
                out.push(Violation::at("succession", i, format!("{} then {}", label(a), label(b))));
            }
            if let (Some(ha), Some(hb)) = (heights[a], heights[b]) {
                let gap = (ha - hb).abs();
                if self.forbidden_intervals.contains(&gap) {
                    out.push(Violation::at("interval", i, format!("{gap} semitones")));
                }
            }
        }
        if self.no_triple_repeat {
            for i in 0..self.n.saturating_sub(2) {
                if seq[i] == seq[i + 1] && seq[i + 1] == seq[i + 2] {
                    out.push(Violation::at("no_triple", i, format!("{} three times", label(seq[i]))));
                }
            }
        }
        if self.anchor_first_last {
            let a = self.anchor_index()?;
            for i in [0, self.n - 1] {
                if seq[i] != a {
                    out.push(Violation::at("anchor", i, format!("expected {}", label(a))));
                }
            }
        }
        if self.tendency_rules {
            for (from, to) in self.tendency_pairs() {
                for i in 0..self.n - 1 {
                    if seq[i] == from && Some(seq[i + 1]) != to {
                        out.push(Violation::at("tendency", i, format!("{} does not resolve", label(from))));
                    }
                }
            }
        }
        if let (Some(k), Some(r)) = (self.rest_count, self.domain.rest_index()) {
            let got = seq.iter().filter(|&&j| j == r).count();
            if got != k {
                out.push(Violation::global("rest", format!("{got} rests, expected {k}")));
            }
        }
        out.sort_by_key(|v| v.position);
        Ok(out)
    }

    /// Total transition weight collected by a sequence.
    pub fn reward(&self, seq: &[usize]) -> f64 {
        let labels = self.domain.labels();
        seq.windows(2)
            .map(|w| {
                self.weights
                    .get(&(labels[w[0]].clone(), labels[w[1]].clone()))
                    .copied()
                    .unwrap_or(0.0)
            })
            .sum()
    }
}

pub(crate) fn grid_labels(q: &mut QuboModel, layout: &Layout) {
    for i in 0..layout.positions {
        for (j, e) in layout.elements.iter().enumerate() {
            q.set_label(layout.var(i, j), format!("x{}_{e}", i + 1))
                .expect("grid variable exists");
        }
    }
}

pub(crate) fn add(q: &mut QuboModel, p: &PolyExpr) {
    p.add_to_qubo(q).expect("music terms are at most quadratic");
}

/// Appends fresh labelled bits encoding an integer in `[0, upper]`.
pub(crate) fn slack(q: &mut QuboModel, name: &str, upper: i64) -> PolyExpr {
    let enc = BinaryEncoding::new(name, 0, upper, VarId(q.num_vars())).expect("valid slack range");
    for (b, &(v, _)) in enc.bits.iter().enumerate() {
        q.ensure_num_vars(v.0 + 1);
        q.set_label(v, format!("{name}#{b}")).expect("slack exists");
    }
    enc.to_poly()
}

/// Adds every melody rule except one-hot and the objective. `ind(i, j)` is
/// the polynomial that is 1 exactly when position `i` holds element `j`.
pub(crate) fn add_melody_rules(
    spec: &MelodySpec,
    pen: &MelodyPenaltyValues,
    ind: &dyn Fn(usize, usize) -> PolyExpr,
    q: &mut QuboModel,
) -> Result<()> {
    let n = spec.n;
    let k = spec.domain.len();
    for ((a, b), c) in spec.pair_penalties(pen)? {
        for i in 0..n - 1 {
            add(q, &(&ind(i, a) * &ind(i + 1, b)).scale(c));
        }
    }
    if spec.no_triple_repeat {
        let labels = spec.domain.labels();
        for i in 0..n.saturating_sub(2) {
            for j in 0..k {
                let lhs = &(&ind(i, j) + &ind(i + 1, j)) + &ind(i + 2, j);
                let s = slack(q, &format!("triple{}_{}", i + 1, labels[j]), 2);
                add(q, &squared_penalty(&(&lhs + &s), 2.0, pen.no_triple));
            }
        }
    }
    if spec.anchor_first_last {
        let a = spec.anchor_index()?;
        for i in [0, n - 1] {
            add(q, &(&PolyExpr::constant(1.0) - &ind(i, a)).scale(pen.anchor));
        }
    }
    if spec.tendency_rules {
        for (from, to) in spec.tendency_pairs() {
            for i in 0..n - 1 {
                let next = to.map_or_else(PolyExpr::new, |t| ind(i + 1, t));
                let miss = &PolyExpr::constant(1.0) - &next;
                add(q, &(&ind(i, from) * &miss).scale(pen.tendency));
            }
        }
    }
    if let (Some(count), Some(r)) = (spec.rest_count, spec.domain.rest_index()) {
        let mut total = PolyExpr::new();
        for i in 0..n {
            total += &ind(i, r);
        }
        add(q, &squared_penalty(&total, count as f64, pen.rest));
    }
    Ok(())
}

fn one_hot(q: &mut QuboModel, vars: impl Iterator<Item = VarId>, penalty: f64) {
    let sum = PolyExpr::linear(vars.map(|v| (v, 1.0)), 0.0);
    add(q, &squared_penalty(&sum, 1.0, penalty));
}

/// Builds the melody QUBO. Grid variable `(i, j)` means position `i` holds
/// domain element `j`; slack bits for the no-triple rule follow the grid.
pub fn build_melody(spec: &MelodySpec) -> Result<(QuboModel, Layout)> {
    spec.validate()?;
    let pen = spec.penalty_values();
    let layout = Layout::new(spec.n, spec.domain.labels());
    let mut q = QuboModel::new(layout.grid_size());
    grid_labels(&mut q, &layout);
    for i in 0..spec.n {
        one_hot(&mut q, (0..layout.width()).map(|j| layout.var(i, j)), pen.hard);
    }
    let ind = |i: usize, j: usize| PolyExpr::var(layout.var(i, j));
    add_melody_rules(spec, &pen, &ind, &mut q)?;
    for ((a, b), &w) in &spec.weights {
        let (a, b) = (spec.domain.index_of(a)?, spec.domain.index_of(b)?);
        for i in 0..spec.n - 1 {
            q.add_quadratic(layout.var(i, a), layout.var(i + 1, b), -w)?;
        }
    }
    Ok((q, layout))
}

/// Label of a joint pitch and duration element.
pub fn joint_label(pitch: &str, duration: &str) -> String {
    format!("{pitch}/{duration}")
}

/// Pitch and duration chosen together: element `j * |D| + k` of each
/// position is pitch `j` with duration `k`. Melody rules apply to the
/// pitch regardless of duration and rhythm rules to the duration regardless
/// of pitch. The objective uses only `joint_weights`, keyed by
/// [`joint_label`] pairs.
pub fn build_pitch_duration(
    melody: &MelodySpec,
    rhythm: &RhythmSpec,
    joint_weights: &Weights,
) -> Result<(QuboModel, Layout)> {
    melody.validate()?;
    rhythm.validate()?;
    if melody.n != rhythm.n {
        return Err(Error::InvalidSpec(format!(
            "melody has {} notes but rhythm has {}",
            melody.n, rhythm.n
        )));
    }
    let pitches = melody.domain.labels();
    let durs: Vec<String> = rhythm.durations.iter().map(|d| d.name.clone()).collect();
    let nd = durs.len();
    let elements: Vec<String> = pitches
        .iter()
        .flat_map(|p| durs.iter().map(move |d| joint_label(p, d)))
        .collect();
    let layout = Layout::new(melody.n, elements);
    check_weights(joint_weights, |l| {
        layout
            .elements
            .contains(&l.to_string())
            .then_some(())
            .ok_or_else(|| Error::InvalidSpec(format!("`{l}` is not a pitch/duration pair")))
    })?;

    let mut pen = melody.penalty_values_with(joint_weights.values().sum());
    let rpen = rhythm.penalty_values_with(pen.hard);
    pen.hard = pen.hard.max(rpen.hard);

    let mut q = QuboModel::new(layout.grid_size());
    grid_labels(&mut q, &layout);
    for i in 0..melody.n {
        one_hot(&mut q, (0..layout.width()).map(|j| layout.var(i, j)), pen.hard);
    }
    let pitch_ind = |i: usize, j: usize| {
        PolyExpr::linear((0..nd).map(|k| (layout.var(i, j * nd + k), 1.0)), 0.0)
    };
    add_melody_rules(melody, &pen, &pitch_ind, &mut q)?;
    let dur_ind = |i: usize, k: usize| {
        PolyExpr::linear((0..pitches.len()).map(|j| (layout.var(i, j * nd + k), 1.0)), 0.0)
    };
    add_rhythm_rules(rhythm, &rpen, &dur_ind, &mut q)?;
    for ((a, b), &w) in joint_weights {
        let ja = layout.elements.iter().position(|e| e == a).unwrap();
        let jb = layout.elements.iter().position(|e| e == b).unwrap();
        for i in 0..melody.n - 1 {
            q.add_quadratic(layout.var(i, ja), layout.var(i + 1, jb), -w)?;
        }
    }
    Ok((q, layout))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::music::pitch::Duration;
    use crate::solvers::{brute_force, restricted_enumerate, Group};

    fn paper_domain() -> PitchDomain {
        PitchDomain::named(&["C4", "D4", "E4", "G4"]).unwrap()
    }

    fn encode(spec: &MelodySpec, layout: &Layout, q: &QuboModel, seq: &[&str]) -> Vec<u8> {
        let idx: Vec<usize> = seq.iter().map(|s| spec.domain.index_of(s).unwrap()).collect();
        layout.encode(&idx, q.num_vars())
    }

    #[test]
    fn one_hot_only_counts() {
        let spec = MelodySpec::new(5, paper_domain());
        let (q, layout) = build_melody(&spec).unwrap();
        assert_eq!(q.num_vars(), 20);
        let x = encode(&spec, &layout, &q, &["E4", "E4", "G4", "D4", "D4"]);
        assert_eq!(q.energy(&x).unwrap(), 0.0);
        assert_eq!(q.energy(&vec![0; 20]).unwrap(), 5.0);
    }

    #[test]
    fn forbidden_succession_and_triple() {
        let mut spec = MelodySpec::new(5, paper_domain());
        spec.forbidden_successions.push(("D4".into(), "G4".into()));
        spec.no_triple_repeat = true;
        let pen = spec.penalty_values();
        assert_eq!(pen.hard, 5.0);
        let (q, layout) = build_melody(&spec).unwrap();
        assert_eq!(q.num_vars(), 20 + 3 * 4 * 2);
        // Slack bits are free to settle, so compare minima over them.
        let best = |seq: &[&str]| {
            let x = encode(&spec, &layout, &q, seq);
            min_over_slack(&q, &x[..20])
        };
        assert_eq!(best(&["G4", "D4", "E4", "G4", "C4"]), 0.0);
        assert!(best(&["D4", "G4", "E4", "G4", "C4"]) >= pen.succession);
        assert!(best(&["C4", "C4", "C4", "G4", "E4"]) >= pen.no_triple);
    }

    /// Minimum energy with the grid fixed and every other bit free.
    pub(crate) fn min_over_slack(q: &QuboModel, grid: &[u8]) -> f64 {
        let fixed = Group::new((0..grid.len()).map(VarId).collect(), vec![grid.to_vec()]);
        restricted_enumerate(q, &[fixed]).unwrap().min_energy().unwrap()
    }

    #[test]
    fn weights_reward_transitions() {
        let mut spec = MelodySpec::new(3, paper_domain());
        spec.weights.insert(("C4".into(), "D4".into()), 2.0);
        spec.weights.insert(("D4".into(), "D4".into()), 1.0);
        let (q, layout) = build_melody(&spec).unwrap();
        let seq = ["C4", "D4", "D4"];
        let x = encode(&spec, &layout, &q, &seq);
        assert_eq!(q.energy(&x).unwrap(), -3.0);
        let idx: Vec<usize> = seq.iter().map(|s| spec.domain.index_of(s).unwrap()).collect();
        assert_eq!(spec.reward(&idx), 3.0);
        let set = brute_force(&q, 24).unwrap();
        assert_eq!(set.min_energy(), Some(-3.0));
    }

    #[test]
    fn tendency_and_anchor() {
        let mut spec = MelodySpec::new(3, PitchDomain::degrees());
        spec.tendency_rules = true;
        spec.anchor_first_last = true;
        let (q, layout) = build_melody(&spec).unwrap();
        let e = |seq: [usize; 3]| q.energy(&layout.encode(&seq, q.num_vars())).unwrap();
        // degree 1, 2, 1 resolves and is anchored
        assert_eq!(e([0, 1, 0]), 0.0);
        // degree 2 followed by 3 breaks the tendency
        assert_eq!(e([0, 1, 2]), 1.0 + 1.0);
        assert_eq!(spec.violations(&[0, 1, 2]).unwrap().len(), 2);
        // soundness of both families over every sequence
        for a in 0..8 {
            for b in 0..8 {
                for c in 0..8 {
                    let bad = spec.violations(&[a, b, c]).unwrap().len() as f64;
                    assert_eq!(e([a, b, c]), bad);
                }
            }
        }
    }

    #[test]
    fn intervals_in_semitones() {
        let mut spec = MelodySpec::new(2, PitchDomain::semitones(&[0, 2, 4, 6]).unwrap());
        spec.forbidden_intervals = vec![6];
        let (q, layout) = build_melody(&spec).unwrap();
        assert_eq!(q.energy(&layout.encode(&[0, 3], 8)).unwrap(), 1.0);
        assert_eq!(q.energy(&layout.encode(&[3, 0], 8)).unwrap(), 1.0);
        assert_eq!(q.energy(&layout.encode(&[1, 3], 8)).unwrap(), 0.0);
    }

    #[test]
    fn rest_count() {
        let mut spec = MelodySpec::new(3, PitchDomain::named(&["C4", "r"]).unwrap());
        spec.rest_count = Some(1);
        let (q, layout) = build_melody(&spec).unwrap();
        assert_eq!(q.energy(&layout.encode(&[0, 1, 0], 6)).unwrap(), 0.0);
        assert!(q.energy(&layout.encode(&[1, 1, 0], 6)).unwrap() >= 1.0);
        spec.rest_count = Some(4);
        assert!(build_melody(&spec).is_err());
    }

    #[test]
    fn invalid_specs() {
        let mut spec = MelodySpec::new(1, paper_domain());
        assert!(build_melody(&spec).is_err());
        spec.n = 3;
        spec.forbidden_successions.push(("C4".into(), "A4".into()));
        assert!(build_melody(&spec).is_err());
        let mut spec = MelodySpec::new(3, paper_domain());
        spec.tendency_rules = true;
        assert!(build_melody(&spec).is_err());
        let mut spec = MelodySpec::new(3, paper_domain());
        spec.weights.insert(("C4".into(), "D4".into()), -1.0);
        assert!(build_melody(&spec).is_err());
    }

    #[test]
    fn pitch_duration_layout() {
        let melody = MelodySpec::new(2, PitchDomain::named(&["C4", "D4"]).unwrap());
        let mut rhythm = RhythmSpec::new(2, vec![Duration::named("Q").unwrap(), Duration::named("H").unwrap()]);
        rhythm.min_count_each = 0;
        let (q, layout) = build_pitch_duration(&melody, &rhythm, &Weights::new()).unwrap();
        assert_eq!(q.num_vars(), 8);
        assert_eq!(layout.width(), 4);
        assert_eq!(layout.elements[1], "C4/H");
        let set = brute_force(&q, 24).unwrap();
        assert_eq!(set.len(), 16);
        assert_eq!(set.min_energy(), Some(0.0));
    }

    #[test]
    fn joint_succession_covers_all_durations() {
        let mut melody = MelodySpec::new(2, PitchDomain::named(&["C4", "D4"]).unwrap());
        melody.forbidden_successions.push(("C4".into(), "D4".into()));
        let mut rhythm = RhythmSpec::new(2, vec![Duration::named("Q").unwrap(), Duration::named("H").unwrap()]);
        rhythm.min_count_each = 0;
        let (q, _) = build_pitch_duration(&melody, &rhythm, &Weights::new()).unwrap();
        let c = |a: usize, b: usize| q.quadratic_coeff(VarId(a), VarId(b));
        // C4 at position 1 is vars 0..2, D4 at position 2 is vars 6..8
        let succession: Vec<f64> = [(0, 6), (0, 7), (1, 6), (1, 7)].iter().map(|&(a, b)| c(a, b)).collect();
        assert_eq!(succession, vec![1.0; 4]);
    }
}
