//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use qubo_compose::compiler::{penalty_pattern, quadratize, rosenberg_gadget, rosenberg_penalty, BinaryEncoding, PolyExpr, Relation};
use qubo_compose::mrf::{mrf_to_qubo, MarkovNetwork, PairPotential};
use qubo_compose::music::{
    build_chord_mrf, build_harmony, build_melody, build_qharmony, decode_chords, decode_sequence, extract_weights,
    ode_to_joy, ChordProgressionSpec, HarmonySpec, Layout, MelodySpec, PitchDomain, QHarmonySpec, Weights,
    ODE_TO_JOY,
};
use qubo_compose::qubo::{ising_to_qubo, qubo_to_ising, QuboModel, VarId};
use qubo_compose::solvers::{brute_force, restricted_enumerate, simulated_annealing, Group, SaParams, SampleSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Absolute tolerance for float comparisons in criteria 5 and 6.
const TOL: f64 = 1e-9;
/// Seeded trials for the annealing criteria.
const TRIALS: u64 = 100;

type Outcome = Result<(), String>;

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn all_bits(n: usize) -> impl Iterator<Item = Vec<u8>> {
    (0u64..1 << n).map(move |m| (0..n).map(|i| ((m >> i) & 1) as u8).collect())
}

fn domain4() -> PitchDomain {
    PitchDomain::named(&["C4", "D4", "E4", "G4"]).unwrap()
}

fn melody_8() -> MelodySpec {
    MelodySpec::new(5, domain4())
}

fn melody_9() -> MelodySpec {
    let mut spec = melody_8();
    spec.forbidden_successions.push(("D4".into(), "G4".into()));
    spec.no_triple_repeat = true;
    spec
}

fn one_hot_groups(layout: &Layout, allow_empty: bool) -> Vec<Group> {
    (0..layout.positions)
        .map(|i| Group::one_hot((0..layout.width()).map(|j| layout.var(i, j)).collect(), allow_empty))
        .collect()
}

fn encode(spec: &MelodySpec, layout: &Layout, seq: &[&str]) -> Vec<u8> {
    let idx: Vec<usize> = seq.iter().map(|s| spec.domain.index_of(s).unwrap()).collect();
    layout.encode(&idx, layout.grid_size())
}

/// Minimum energy with the grid bits fixed and any remaining bits free.
fn min_with_grid(q: &QuboModel, grid: &[u8]) -> f64 {
    let fixed = Group::new((0..grid.len()).map(VarId).collect(), vec![grid.to_vec()]);
    restricted_enumerate(q, &[fixed]).unwrap().min_energy().unwrap()
}

fn sa_best(q: &QuboModel, seed: u64) -> f64 {
    simulated_annealing(q, &SaParams::with_seed(seed)).unwrap().min_energy().unwrap()
}

const PAPER_SAMPLES: [&str; 5] = [
    "0010 0010 0001 0100 0100",
    "0100 0001 1000 1000 0100",
    "0100 0100 0001 0001 0010",
    "0010 0001 0010 1000 0001",
    "0100 0010 1000 0010 0100",
];

const PAPER_SEQUENCES: [[&str; 5]; 5] = [
    ["E4", "E4", "G4", "D4", "D4"],
    ["D4", "G4", "C4", "C4", "D4"],
    ["D4", "D4", "G4", "G4", "E4"],
    ["E4", "G4", "E4", "C4", "G4"],
    ["D4", "E4", "C4", "E4", "D4"],
];

const PAPER_SEQUENCES_RULES: [[&str; 5]; 5] = [
    ["G4", "D4", "E4", "G4", "C4"],
    ["E4", "E4", "C4", "E4", "G4"],
    ["E4", "D4", "C4", "E4", "G4"],
    ["D4", "E4", "G4", "D4", "C4"],
    ["D4", "E4", "G4", "D4", "E4"],
];

fn c1() -> Outcome {
    let q = QuboModel::from_matrix(&[vec![5.0, -6.0], vec![0.0, 9.0]]).unwrap();
    for (x, e) in [([0, 0], 0.0), ([0, 1], 9.0), ([1, 0], 5.0), ([1, 1], 8.0)] {
        let got = q.energy(&x).unwrap();
        check!(got == e, "f({x:?}) = {got}, expected {e}");
    }
    let set = brute_force(&q, 24).unwrap();
    check!(set.len() == 1, "{} minimizers", set.len());
    check!(set.best().unwrap().assignment == [0, 0], "minimizer {:?}", set.best().unwrap().assignment);
    Ok(())
}

fn c2() -> Outcome {
    let x = |i: usize| PolyExpr::var(VarId(i));
    let sum = |k: usize| PolyExpr::linear((0..k).map(|i| (VarId(i), 1.0)), 0.0);
    // (lhs, relation, rhs, number of variables, table penalty written out)
    let rows: Vec<(PolyExpr, Relation, f64, usize, Box<dyn Fn(&[u8]) -> f64>)> = vec![
        (sum(2), Relation::Le, 1.0, 2, Box::new(|v| f64::from(v[0] * v[1]))),
        (sum(2), Relation::Ge, 1.0, 2, Box::new(|v| {
            let (a, b) = (f64::from(v[0]), f64::from(v[1]));
            1.0 - a - b + a * b
        })),
        (sum(2), Relation::Eq, 1.0, 2, Box::new(|v| {
            let (a, b) = (f64::from(v[0]), f64::from(v[1]));
            1.0 - a - b + 2.0 * a * b
        })),
        (&x(0) - &x(1), Relation::Le, 0.0, 2, Box::new(|v| {
            let (a, b) = (f64::from(v[0]), f64::from(v[1]));
            a - a * b
        })),
        (sum(4), Relation::Le, 1.0, 4, Box::new(|v| {
            let mut p = 0.0;
            for a in 0..4 {
                for b in a + 1..4 {
                    p += f64::from(v[a] * v[b]);
                }
            }
            p
        })),
        (&x(0) - &x(1), Relation::Eq, 0.0, 2, Box::new(|v| {
            let (a, b) = (f64::from(v[0]), f64::from(v[1]));
            a + b - 2.0 * a * b
        })),
    ];
    for (r, (lhs, rel, rhs, k, table)) in rows.iter().enumerate() {
        let pen = penalty_pattern(lhs, *rel, *rhs, 1.0).ok_or(format!("row {} not recognised", r + 1))?;
        for v in all_bits(*k) {
            let p = pen.eval(&v).unwrap();
            let holds = rel.holds(lhs.eval(&v).unwrap(), *rhs);
            check!(p == table(&v), "row {}: {v:?} gives {p}, table says {}", r + 1, table(&v));
            check!((p == 0.0) == holds && p >= 0.0, "row {}: {v:?} penalty {p}, holds {holds}", r + 1);
        }
    }
    Ok(())
}

fn eval_monomials(p: &PolyExpr, x: &[u8]) -> f64 {
    p.monomials()
        .iter()
        .map(|(vars, c)| if vars.iter().all(|v| x[v.0] == 1) { *c } else { 0.0 })
        .sum::<f64>()
}

fn c3() -> Outcome {
    let penalty = 2.0;
    let g = rosenberg_gadget(VarId(0), VarId(1), VarId(2), penalty);
    for v in all_bits(3) {
        let p = eval_monomials(&g, &v);
        if v[2] == v[0] * v[1] {
            check!(p == 0.0, "gadget at {v:?} is {p}");
        } else {
            check!(p == penalty || p == 3.0 * penalty, "gadget at {v:?} is {p}");
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for case in 0..100 {
        let n = rng.gen_range(3..=6);
        let mut p = PolyExpr::new();
        for _ in 0..rng.gen_range(1..=8) {
            let deg = rng.gen_range(1..=4.min(n));
            let mut vars: Vec<usize> = (0..n).collect();
            for i in 0..deg {
                let j = rng.gen_range(i..n);
                vars.swap(i, j);
            }
            let vars: Vec<VarId> = vars[..deg].iter().map(|&v| VarId(v)).collect();
            p.add_term(&vars, f64::from(rng.gen_range(-5i32..=5)));
        }
        let (quad, aux) = quadratize(&p, rosenberg_penalty(&p), VarId(n)).unwrap();
        check!(quad.degree() <= 2, "case {case}: degree {}", quad.degree());
        for x in all_bits(n) {
            let mut best = f64::INFINITY;
            for a in all_bits(aux.len()) {
                let full: Vec<u8> = x.iter().chain(&a).copied().collect();
                best = best.min(eval_monomials(&quad, &full) + quad.constant_term());
            }
            let want = eval_monomials(&p, &x) + p.constant_term();
            check!(best == want, "case {case}: at {x:?} min {best}, original {want}");
        }
    }
    Ok(())
}

fn c4() -> Outcome {
    for lower in -64i64..=64 {
        for range in 0..=64 {
            let upper = lower + range;
            let enc = BinaryEncoding::new("y", lower, upper, VarId(0)).unwrap();
            let image: BTreeSet<i64> = all_bits(enc.num_bits()).map(|x| enc.decode(&x).unwrap()).collect();
            let want: BTreeSet<i64> = (lower..=upper).collect();
            check!(image == want, "[{lower}, {upper}] decodes to {image:?}");
        }
    }
    Ok(())
}

fn c5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for case in 0..100 {
        let n = rng.gen_range(1..=12);
        let mut q = QuboModel::new(n);
        for i in 0..n {
            q.add_linear(VarId(i), rng.gen_range(-5.0..5.0)).unwrap();
            for j in i + 1..n {
                if rng.gen_bool(0.5) {
                    q.add_quadratic(VarId(i), VarId(j), rng.gen_range(-5.0..5.0)).unwrap();
                }
            }
        }
        q.add_offset(rng.gen_range(-5.0..5.0));
        let ising = qubo_to_ising(&q);
        let back = ising_to_qubo(&ising);
        for x in all_bits(n) {
            let e = q.energy(&x).unwrap();
            let s: Vec<i8> = x.iter().map(|&b| 1 - 2 * b as i8).collect();
            let es = ising.energy(&s).unwrap();
            let eb = back.energy(&x).unwrap();
            check!((e - es).abs() <= TOL, "case {case}: qubo {e}, ising {es} at {x:?}");
            check!((e - eb).abs() <= TOL, "case {case}: qubo {e}, round trip {eb} at {x:?}");
        }
    }
    Ok(())
}

fn c6() -> Outcome {
    let mut net = MarkovNetwork::new();
    let c = net.add_node("C").unwrap();
    let e = net.add_node("E").unwrap();
    net.add_edge(c, e, PairPotential::new(0.3, 0.9, 2.6, 5.0)).unwrap();
    let q = mrf_to_qubo(&net);
    for (x, want) in [([0, 0], 0.3), ([0, 1], 0.9), ([1, 0], 2.6), ([1, 1], 5.0)] {
        let got = q.energy(&x).unwrap();
        check!((got - want).abs() <= TOL, "clique at {x:?}: {got}, expected {want}");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for case in 0..50 {
        let n = rng.gen_range(2..=10);
        let mut net = MarkovNetwork::new();
        for i in 0..n {
            net.add_node(format!("v{i}")).unwrap();
        }
        let mut unary = Vec::new();
        let mut edges = Vec::new();
        for i in 0..n {
            if rng.gen_bool(0.5) {
                let t = [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)];
                net.add_unary(i, t[0], t[1]).unwrap();
                unary.push((i, t));
            }
            for j in i + 1..n {
                if rng.gen_bool(0.4) {
                    let t: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-3.0..3.0));
                    net.add_edge(i, j, PairPotential::new(t[0], t[1], t[2], t[3])).unwrap();
                    edges.push((i, j, t));
                }
            }
        }
        let q = mrf_to_qubo(&net);
        for x in all_bits(n) {
            let mut want = 0.0;
            for (i, t) in &unary {
                want += t[x[*i] as usize];
            }
            for (i, j, t) in &edges {
                want += t[2 * x[*i] as usize + x[*j] as usize];
            }
            let got = q.energy(&x).unwrap();
            check!((got - want).abs() <= TOL, "case {case}: {got} vs {want} at {x:?}");
        }
    }
    Ok(())
}

fn weights(pairs: &[(&str, &str, f64)]) -> Weights {
    pairs.iter().map(|&(a, b, w)| ((a.to_string(), b.to_string()), w)).collect()
}

fn c7() -> Outcome {
    let (pitch, duration) = extract_weights(&ode_to_joy()).unwrap();
    let want_pitch = weights(&[
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
    ]);
    let want_duration = weights(&[("Q", "Q", 11.0), ("Q", "DQ", 1.0), ("DQ", "E", 1.0), ("E", "H", 1.0)]);
    check!(pitch == want_pitch, "pitch weights {pitch:?}");
    check!(duration == want_duration, "duration weights {duration:?}");
    Ok(())
}

fn c8() -> Outcome {
    let spec = melody_8();
    let (q, layout) = build_melody(&spec).unwrap();
    check!(q.num_vars() == 20, "{} variables", q.num_vars());
    let set = brute_force(&q, 24).unwrap();
    check!(set.min_energy() == Some(0.0), "ground energy {:?}", set.min_energy());
    check!(set.len() == 1024, "{} ground states", set.len());
    for s in set.samples() {
        check!(decode_sequence(s, &layout).unwrap().is_valid(), "ground state {:?} is not one-hot", s.assignment);
    }
    for (row, seq) in PAPER_SAMPLES.iter().zip(PAPER_SEQUENCES) {
        let bits: Vec<u8> = row.chars().filter(|c| !c.is_whitespace()).map(|c| (c == '1') as u8).collect();
        let e = q.energy(&bits).unwrap();
        check!(e == 0.0, "sample {row} has energy {e}");
        check!(bits == encode(&spec, &layout, &seq), "sample {row} does not decode to {seq:?}");
    }
    Ok(())
}

/// The rules of criterion 9 written directly on pitch names.
fn obeys_rules(seq: &[&str]) -> bool {
    let no_dg = seq.windows(2).all(|w| !(w[0] == "D4" && w[1] == "G4"));
    let no_triple = seq.windows(3).all(|w| !(w[0] == w[1] && w[1] == w[2]));
    no_dg && no_triple
}

fn c9() -> Outcome {
    let spec = melody_9();
    let (q, layout) = build_melody(&spec).unwrap();
    let set = restricted_enumerate(&q, &one_hot_groups(&layout, false)).unwrap();
    check!(set.min_energy() == Some(0.0), "ground energy {:?}", set.min_energy());
    let labels = spec.domain.labels();
    let mut ground = BTreeSet::new();
    for s in set.ground_states() {
        let seq = decode_sequence(s, &layout).unwrap().complete().ok_or("ground state is not one-hot")?;
        check!(spec.violations(&seq).unwrap().is_empty(), "ground state {seq:?} breaks a rule");
        ground.insert(seq);
    }
    let mut expected = BTreeSet::new();
    for m in 0..4usize.pow(5) {
        let seq: Vec<usize> = (0..5).map(|i| (m / 4usize.pow(i)) % 4).collect();
        let names: Vec<&str> = seq.iter().map(|&j| labels[j].as_str()).collect();
        if obeys_rules(&names) {
            expected.insert(seq);
        }
    }
    check!(ground == expected, "{} ground sequences, {} rule-abiding sequences", ground.len(), expected.len());
    for seq in PAPER_SEQUENCES_RULES {
        let e = min_with_grid(&q, &encode(&spec, &layout, &seq));
        check!(e == 0.0, "{seq:?} has energy {e}");
    }
    Ok(())
}

fn c10() -> Outcome {
    for (name, spec) in [("model 8", melody_8()), ("model 9", melody_9())] {
        let (q, layout) = build_melody(&spec).unwrap();
        let oracle = restricted_enumerate(&q, &one_hot_groups(&layout, false)).unwrap().min_energy().unwrap();
        let hits = (0..TRIALS).filter(|&seed| sa_best(&q, seed) == oracle).count();
        println!("      {name}: {hits}/{TRIALS} trials reach {oracle}");
        check!(hits >= 95, "{name}: {hits}/{TRIALS} trials reach the minimum");
    }
    Ok(())
}

fn c11() -> Outcome {
    let base = QHarmonySpec::default();
    let n = base.notes.len();
    for input in 0..n {
        let spec = QHarmonySpec {
            input_notes: vec![base.notes[input]],
            ..base.clone()
        };
        let ising = build_qharmony(&spec).unwrap();
        // energy written out from the formula, independent of the builder
        let energy = |s: &[i8]| -> f64 {
            let mut e = 0.0;
            for i in 0..n {
                let h = if i == input { -7.0 } else { 1.0 };
                e += h * f64::from(s[i]);
                for j in i + 1..n {
                    e += (7.0 - 2.0 * (j - i) as f64) * f64::from(s[i] * s[j]);
                }
            }
            e
        };
        let mut best = f64::INFINITY;
        let mut ground: Vec<Vec<i8>> = Vec::new();
        for x in all_bits(n) {
            let s: Vec<i8> = x.iter().map(|&b| 1 - 2 * b as i8).collect();
            let e = energy(&s);
            check!(e == ising.energy(&s).unwrap(), "builder disagrees with the formula at {s:?}");
            if e < best {
                best = e;
                ground.clear();
            }
            if e == best {
                ground.push(s);
            }
        }
        for s in &ground {
            check!(s[input] == 1, "input {input}: ground state {s:?} drops the input note");
        }
        let q = ising_to_qubo(&ising);
        let sa = sa_best(&q, input as u64);
        check!(sa == best, "input {input}: annealing reached {sa}, oracle {best}");
    }
    Ok(())
}

fn chord_names(spec: &ChordProgressionSpec, layout: &Layout, set: &SampleSet) -> Option<Vec<String>> {
    let selected = layout.selected(&set.best()?.assignment).ok()?;
    selected
        .iter()
        .map(|s| (s.len() == 1).then(|| spec.chords[s[0]].clone()))
        .collect()
}

fn c12() -> Outcome {
    let spec = ChordProgressionSpec::new(4);
    let q = mrf_to_qubo(&build_chord_mrf(&spec).unwrap());
    check!(q.num_vars() == 28, "{} variables", q.num_vars());
    let layout = spec.layout();
    let oracle = restricted_enumerate(&q, &one_hot_groups(&layout, true)).unwrap();
    check!(oracle.ground_states().count() == 1, "{} restricted minima", oracle.ground_states().count());
    let names = chord_names(&spec, &layout, &oracle).ok_or("oracle minimum is not one chord per step")?;
    check!(names == ["V", "I", "V", "I"], "oracle progression {names:?}");
    let target = oracle.min_energy().unwrap();
    let mut hits = 0;
    for seed in 0..TRIALS {
        let set = simulated_annealing(&q, &SaParams::with_seed(seed)).unwrap();
        if set.min_energy() != Some(target) {
            continue;
        }
        let names = chord_names(&spec, &layout, &set).ok_or(format!("seed {seed}: not one chord per step"))?;
        check!(
            names.windows(2).any(|w| w[0] == "V" && w[1] == "I"),
            "seed {seed}: {names:?} has no V-I"
        );
        hits += 1;
    }
    println!("      {hits}/{TRIALS} trials reach {target}");
    check!(hits >= 80, "{hits}/{TRIALS} trials reach the oracle energy");
    Ok(())
}

fn c13() -> Outcome {
    let spec = HarmonySpec::new(vec![1, 5, 4, 1]);
    let (q, layout) = build_harmony(&spec).unwrap();
    check!(q.num_vars() == 32, "{} variables", q.num_vars());
    check!(brute_force(&q, 24).is_err(), "brute force accepted 32 variables");
    let groups: Vec<Group> = (0..4)
        .map(|i| Group::k_hot((0..8).map(|j| layout.var(i, j)).collect(), 3))
        .collect();
    let oracle = restricted_enumerate(&q, &groups).unwrap();
    let target = oracle.min_energy().unwrap();
    check!(target == 0.0, "oracle energy {target}");
    let mut ground = BTreeSet::new();
    for s in oracle.ground_states() {
        let chords = decode_chords(&s.assignment, &layout).unwrap();
        for i in [0, 3] {
            check!(chords[i] == [1, 3, 5], "position {i} holds {:?}", chords[i]);
        }
        for i in [1, 2] {
            let c = &chords[i];
            check!(c.contains(&spec.melody[i]), "position {i} chord {c:?} misses the melody");
            for a in c {
                for b in c {
                    check!(a >= b || ![1, 6, 7].contains(&(b - a)), "position {i} chord {c:?}");
                }
            }
        }
        ground.insert(chords);
    }
    // the feasible set counted directly
    let allowed = |melody: usize| -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for a in 1..=8usize {
            for b in a + 1..=8 {
                for c in b + 1..=8 {
                    let ok = [b - a, c - a, c - b].iter().all(|d| ![1, 6, 7].contains(d));
                    if ok && [a, b, c].contains(&melody) {
                        out.push(vec![a, b, c]);
                    }
                }
            }
        }
        out
    };
    let expected = allowed(5).len() * allowed(4).len();
    check!(ground.len() == expected, "{} ground states, {expected} feasible harmonizations", ground.len());
    let hits = (0..TRIALS).filter(|&seed| sa_best(&q, seed) == target).count();
    println!("      {} ground states; {hits}/{TRIALS} trials reach {target}", ground.len());
    check!(hits >= 80, "{hits}/{TRIALS} trials reach the oracle energy");
    Ok(())
}

fn c14() -> Outcome {
    let dir = std::env::temp_dir().join(format!("qubo-compose-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let files = [
        ("q.toml", "format = \"qubo\"\nnum_vars = 2\noffset = 0.0\nlinear = [[0, 5.0], [1, 9.0]]\nquadratic = [[0, 1, -6.0]]\n"),
        ("ilp.toml", "[[variables]]\nname = \"y\"\nlower = 0\nupper = 5\n\n[objective]\nterms = [{ vars = [\"y\"], coeff = 1.0 }]\n\n[[constraints]]\nname = \"c\"\nlhs = { terms = { y = 1.0 } }\nrelation = \">=\"\nrhs = 3.0\n"),
        ("melody.toml", "n = 5\ndomain = [\"C4\", \"D4\", \"E4\", \"G4\"]\nforbidden_successions = [[\"D4\", \"G4\"]]\nno_triple_repeat = true\n"),
        ("joint.toml", "n = 4\ndomain = [\"D4\", \"E4\", \"F#4\"]\nscale = { tonic = \"D4\" }\njoint_weights = [[\"F#4/Q\", \"E4/H\", 2.0]]\n\n[rhythm]\ndurations = [\"Q\", \"H\"]\nmin_count_each = 1\n"),
        ("rhythm.toml", "n = 4\ndurations = [\"Q\", \"H\"]\n"),
        ("harmony.toml", "melody = [1, 5, 4, 1]\n"),
        ("chords.toml", "n = 4\n"),
        ("qharmony.toml", "input_notes = [\"E4\"]\n"),
        ("ode.txt", ODE_TO_JOY),
    ];
    for (name, text) in files {
        std::fs::write(dir.join(name), text).map_err(|e| e.to_string())?;
    }
    let path = |name: &str| dir.join(name).to_string_lossy().into_owned();
    let sa = ["--solver", "sa", "--seed", "42", "--reads", "20", "--sweeps", "300"];
    let mut cases: Vec<Vec<String>> = vec![
        vec!["compile".into(), path("ilp.toml")],
        vec!["extract-weights".into(), path("ode.txt")],
        vec!["solve".into(), path("q.toml")],
    ];
    for (cmd, file) in [
        ("solve", "q.toml"),
        ("melody", "melody.toml"),
        ("melody", "joint.toml"),
        ("rhythm", "rhythm.toml"),
        ("harmony", "harmony.toml"),
        ("chords", "chords.toml"),
        ("qharmony", "qharmony.toml"),
    ] {
        for format in ["samples-table", "score-text", "abc", "model-text"] {
            if cmd == "solve" && !matches!(format, "samples-table" | "model-text") {
                continue;
            }
            let mut args = vec![cmd.to_string(), path(file), "--format".into(), format.into()];
            args.extend(sa.iter().map(|s| s.to_string()));
            cases.push(args);
        }
    }
    let run = |args: &[String]| Command::new(env!("CARGO_BIN_EXE_qubo-compose")).args(args).output();
    for args in &cases {
        let a = run(args).map_err(|e| e.to_string())?;
        let b = run(args).map_err(|e| e.to_string())?;
        check!(a.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&a.stderr));
        check!(!a.stdout.is_empty(), "{args:?} wrote nothing");
        check!(a.stdout == b.stdout && a.stderr == b.stderr, "{args:?} differs between runs");
    }
    std::fs::remove_dir_all(&dir).ok();
    println!("      {} invocations compared", cases.len());
    Ok(())
}

fn main() {
    let criteria: [(u32, &str, Option<Duration>, fn() -> Outcome); 14] = [
        (1, "QUBO worked example", Some(Duration::from_millis(1)), c1),
        (2, "penalty table truth tables", Some(Duration::from_millis(1)), c2),
        (3, "Rosenberg gadget and quadratization", Some(Duration::from_secs(1)), c3),
        (4, "integer-to-binary surjectivity", Some(Duration::from_secs(1)), c4),
        (5, "QUBO/Ising round trip", Some(Duration::from_secs(5)), c5),
        (6, "MRF to QUBO potentials", Some(Duration::from_secs(5)), c6),
        (7, "Ode to Joy weights", Some(Duration::from_millis(1)), c7),
        (8, "melody one-hot ground states", Some(Duration::from_secs(30)), c8),
        (9, "melody with succession and triple rules", Some(Duration::from_secs(60)), c9),
        (10, "annealing reliability on melody models", Some(Duration::from_secs(60)), c10),
        (11, "single-chord harmonization", Some(Duration::from_secs(1)), c11),
        (12, "chord progression V-I", Some(Duration::from_secs(60)), c12),
        (13, "harmony of melody 1-5-4-1", Some(Duration::from_secs(300)), c13),
        (14, "command-line determinism", None, c14),
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = Vec::new();
    for (id, name, budget, f) in criteria {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| match budget {
            Some(b) if elapsed > b => Err(format!("took {elapsed:?}, budget {b:?}")),
            _ => Ok(()),
        });
        match outcome {
            Ok(()) => println!("PASS {id:>2} {name} ({elapsed:.2?})"),
            Err(e) => {
                println!("FAIL {id:>2} {name} ({elapsed:.2?}): {e}");
                failed.push(id);
            }
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
