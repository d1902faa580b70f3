use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use qubo_compose::compiler::{compile, ilp_from_toml, varmap_to_toml, CompileConfig};
use qubo_compose::mrf::mrf_to_qubo;
use qubo_compose::music::{
    abc_chords, abc_melody, abc_with_chords, build_chord_mrf, build_harmony, build_melody,
    build_pitch_duration, build_qharmony, build_rhythm, chords_from_toml, decode_chords,
    decode_sequence, extract_joint_weights, extract_weights, format_score, harmony_from_toml,
    melody_from_toml, parse_score, qharmony_from_toml, rhythm_from_toml, Duration, Layout, Note,
    Pitch, Scale, Weights,
};
use qubo_compose::qubo::{
    bits_to_spins, ising_from_toml, ising_to_qubo, ising_to_toml, qubo_from_toml, qubo_to_toml,
    QuboModel, Sample,
};
use qubo_compose::solvers::{
    brute_force, restricted_enumerate, simulated_annealing, Group, SaParams, SampleSet,
    BRUTE_FORCE_LIMIT,
};

use crate::error::{CliError, CliResult};

#[derive(Parser)]
#[command(name = "qubo-compose", version, about = "Compile models to QUBO and compose music by energy minimization")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Compile an integer program to a QUBO model and a variable map.
    Compile {
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Where to write the variable map. Defaults to `<output>.varmap.toml`.
        #[arg(long)]
        varmap: Option<PathBuf>,
    },
    /// Sample a QUBO or Ising model file.
    Solve(RunArgs),
    /// Compose a melody, or a melody with rhythm when the spec has a `[rhythm]` table.
    Melody(RunArgs),
    Rhythm(RunArgs),
    /// Harmonize a melody of scale degrees with triads.
    Harmony(RunArgs),
    /// Choose a chord progression from the chord network.
    Chords(RunArgs),
    /// Pick one chord for a set of input notes.
    Qharmony(RunArgs),
    /// Count consecutive pitch and duration pairs in a score-text piece.
    ExtractWeights {
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SolverKind {
    /// Exhaustive search, up to 24 variables.
    Brute,
    /// Seeded simulated annealing; needs `--seed`.
    Sa,
    /// Exhaustive search over each position's allowed patterns.
    Restricted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    SamplesTable,
    ScoreText,
    Abc,
    ModelText,
}

#[derive(Args)]
pub struct RunArgs {
    /// Model or spec file.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = SolverKind::Brute)]
    pub solver: SolverKind,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub reads: Option<usize>,
    #[arg(long)]
    pub sweeps: Option<usize>,
    #[arg(long)]
    pub beta_start: Option<f64>,
    #[arg(long)]
    pub beta_end: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Compile {
            input,
            output,
            varmap,
        } => cmd_compile(input, output.as_deref(), varmap.as_deref()),
        Command::Solve(a) => cmd_solve(a),
        Command::Melody(a) => cmd_melody(a),
        Command::Rhythm(a) => cmd_rhythm(a),
        Command::Harmony(a) => cmd_harmony(a),
        Command::Chords(a) => cmd_chords(a),
        Command::Qharmony(a) => cmd_qharmony(a),
        Command::ExtractWeights { input, output } => cmd_extract_weights(input, output.as_deref()),
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn check_output(path: Option<&Path>) -> CliResult<()> {
    let Some(parent) = path.and_then(Path::parent) else {
        return Ok(());
    };
    if parent.as_os_str().is_empty() || parent.is_dir() {
        Ok(())
    } else {
        Err(CliError::Input(format!("output directory {} does not exist", parent.display())))
    }
}

fn emit(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Input(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn warn(msg: impl std::fmt::Display) {
    eprintln!("warning: {msg}");
}

fn title(path: &Path) -> String {
    path.file_stem()
        .map_or_else(|| "untitled".into(), |s| s.to_string_lossy().into_owned())
}

fn cmd_compile(input: &Path, output: Option<&Path>, varmap: Option<&Path>) -> CliResult<()> {
    let varmap = varmap
        .map(Path::to_path_buf)
        .or_else(|| output.map(|o| o.with_extension("varmap.toml")));
    check_output(output)?;
    check_output(varmap.as_deref())?;
    let model = ilp_from_toml(&read(input)?)?;
    let compiled = compile(&model, &CompileConfig::default())?;
    emit(output, &qubo_to_toml(&compiled.qubo))?;
    if let Some(v) = varmap {
        emit(Some(&v), &varmap_to_toml(&compiled.varmap))?;
    }
    Ok(())
}

fn sample(model: &QuboModel, args: &RunArgs, groups: Option<&[Group]>) -> CliResult<SampleSet> {
    if args.solver != SolverKind::Sa
        && (args.seed.is_some()
            || args.reads.is_some()
            || args.sweeps.is_some()
            || args.beta_start.is_some()
            || args.beta_end.is_some())
    {
        warn("annealing options are ignored by exact solvers");
    }
    match args.solver {
        SolverKind::Brute => Ok(brute_force(model, BRUTE_FORCE_LIMIT)?),
        SolverKind::Sa => {
            let seed = args
                .seed
                .ok_or_else(|| CliError::Input("--seed is required with --solver sa".into()))?;
            let mut p = SaParams::with_seed(seed);
            p.num_reads = args.reads.unwrap_or(p.num_reads);
            p.sweeps_per_read = args.sweeps.unwrap_or(p.sweeps_per_read);
            p.beta_start = args.beta_start.unwrap_or(p.beta_start);
            p.beta_end = args.beta_end.unwrap_or(p.beta_end);
            Ok(simulated_annealing(model, &p)?)
        }
        SolverKind::Restricted => match groups {
            Some(g) => Ok(restricted_enumerate(model, g)?),
            None => Err(CliError::Capability(
                "the restricted solver needs per-position variable groups, which only the music commands provide"
                    .into(),
            )),
        },
    }
}

fn best(set: &SampleSet) -> CliResult<&Sample> {
    set.best()
        .ok_or_else(|| CliError::Capability("the solver returned no samples".into()))
}

fn unsupported_format(cmd: &str, f: Format) -> CliError {
    CliError::Input(format!("`{cmd}` cannot write {f:?} output"))
}

fn cmd_solve(args: &RunArgs) -> CliResult<()> {
    check_output(args.output.as_deref())?;
    let text = read(&args.input)?;
    let model = qubo_from_toml(&text)
        .or_else(|e| ising_from_toml(&text).map(|m| ising_to_qubo(&m)).map_err(|_| e))?;
    match args.format.unwrap_or(Format::SamplesTable) {
        Format::SamplesTable => {
            let set = sample(&model, args, None)?;
            emit(args.output.as_deref(), &set.to_table(&model))
        }
        Format::ModelText => emit(args.output.as_deref(), &qubo_to_toml(&model)),
        f => Err(unsupported_format("solve", f)),
    }
}

fn one_hot_groups(layout: &Layout, allow_empty: bool) -> Vec<Group> {
    (0..layout.positions)
        .map(|i| Group::one_hot((0..layout.width()).map(|j| layout.var(i, j)).collect(), allow_empty))
        .collect()
}

fn quarter() -> Duration {
    Duration::named("Q").expect("standard duration")
}

fn chord_token(pitches: &[Pitch], d: &Duration) -> String {
    if pitches.is_empty() {
        return format!("r/{d}");
    }
    let names: Vec<String> = pitches.iter().map(Pitch::to_string).collect();
    format!("{}/{d}", names.join("+"))
}

/// Writes a composed piece in the requested format.
struct Piece<'a> {
    args: &'a RunArgs,
    model: &'a QuboModel,
    set: &'a SampleSet,
    score: String,
    abc: String,
}

impl Piece<'_> {
    fn emit(&self) -> CliResult<()> {
        let text = match self.args.format.unwrap_or(Format::ScoreText) {
            Format::SamplesTable => self.set.to_table(self.model),
            Format::ScoreText => self.score.clone(),
            Format::Abc => self.abc.clone(),
            Format::ModelText => qubo_to_toml(self.model),
        };
        emit(self.args.output.as_deref(), &text)
    }
}

fn cmd_melody(args: &RunArgs) -> CliResult<()> {
    check_output(args.output.as_deref())?;
    let file = melody_from_toml(&read(&args.input)?)?;
    let spec = &file.spec;
    let (model, layout) = match &file.rhythm {
        Some(r) => {
            if file.joint_weights.is_empty() && !(spec.weights.is_empty() && r.weights.is_empty()) {
                warn("pitch and duration weights are not used with a rhythm; give joint_weights instead");
            }
            build_pitch_duration(spec, r, &file.joint_weights)?
        }
        None => build_melody(spec)?,
    };
    if args.format == Some(Format::ModelText) {
        return emit(args.output.as_deref(), &qubo_to_toml(&model));
    }
    let set = sample(&model, args, Some(&one_hot_groups(&layout, false)))?;
    let decoded = decode_sequence(best(&set)?, &layout)?;
    for issue in &decoded.issues {
        warn(format!(
            "position {} has {} elements selected",
            issue.position + 1,
            issue.selected
        ));
    }
    let nd = file.rhythm.as_ref().map_or(1, |r| r.durations.len());
    let pitch_idx: Vec<Option<usize>> = decoded.choices.iter().map(|c| c.map(|j| j / nd)).collect();
    let dur_idx: Vec<Option<usize>> = decoded.choices.iter().map(|c| c.map(|j| j % nd)).collect();
    if let Some(seq) = pitch_idx.iter().copied().collect::<Option<Vec<_>>>() {
        spec.violations(&seq)?.iter().for_each(warn);
    }
    if let (Some(r), Some(seq)) = (&file.rhythm, dur_idx.iter().copied().collect::<Option<Vec<_>>>()) {
        r.violations(&seq)?.iter().for_each(warn);
    }
    let mut notes = Vec::with_capacity(spec.n);
    for (p, d) in pitch_idx.iter().zip(&dur_idx) {
        let pitch = match p {
            Some(j) => spec.domain.elements[*j].to_pitch(&spec.scale)?,
            None => None,
        };
        let duration = match (&file.rhythm, d) {
            (Some(r), Some(k)) => r.durations[*k].clone(),
            _ => quarter(),
        };
        notes.push(Note::new(pitch, duration));
    }
    Piece {
        args,
        model: &model,
        set: &set,
        score: format_score(&notes) + "\n",
        abc: abc_melody(&title(&args.input), &spec.scale, &notes),
    }
    .emit()
}

fn cmd_rhythm(args: &RunArgs) -> CliResult<()> {
    check_output(args.output.as_deref())?;
    let spec = rhythm_from_toml(&read(&args.input)?)?;
    let (model, layout) = build_rhythm(&spec)?;
    if args.format == Some(Format::ModelText) {
        return emit(args.output.as_deref(), &qubo_to_toml(&model));
    }
    let set = sample(&model, args, Some(&one_hot_groups(&layout, false)))?;
    let decoded = decode_sequence(best(&set)?, &layout)?;
    for issue in &decoded.issues {
        warn(format!(
            "position {} has {} durations selected",
            issue.position + 1,
            issue.selected
        ));
    }
    if let Some(seq) = decoded.complete() {
        spec.violations(&seq)?.iter().for_each(warn);
    }
    // A rhythm has no pitches of its own; it is written on the tonic.
    let scale = Scale::default();
    let notes: Vec<Note> = decoded
        .choices
        .iter()
        .map(|c| match c {
            Some(k) => Note::new(Some(scale.tonic), spec.durations[*k].clone()),
            None => Note::new(None, quarter()),
        })
        .collect();
    Piece {
        args,
        model: &model,
        set: &set,
        score: format_score(&notes) + "\n",
        abc: abc_melody(&title(&args.input), &scale, &notes),
    }
    .emit()
}

fn cmd_harmony(args: &RunArgs) -> CliResult<()> {
    check_output(args.output.as_deref())?;
    let file = harmony_from_toml(&read(&args.input)?)?;
    let spec = &file.spec;
    let (model, layout) = build_harmony(spec)?;
    if args.format == Some(Format::ModelText) {
        return emit(args.output.as_deref(), &qubo_to_toml(&model));
    }
    let groups: Vec<Group> = (0..layout.positions)
        .map(|i| Group::k_hot((0..layout.width()).map(|j| layout.var(i, j)).collect(), spec.chord_size))
        .collect();
    let set = sample(&model, args, Some(&groups))?;
    let chords = decode_chords(&best(&set)?.assignment, &layout)?;
    spec.violations(&chords)?.iter().for_each(warn);

    let degree = |d: usize| file.scale.degree(d as i32);
    let notes: Vec<Note> = spec
        .melody
        .iter()
        .zip(&file.durations)
        .map(|(&d, dur)| Ok(Note::new(Some(degree(d)?), dur.clone())))
        .collect::<qubo_compose::Result<_>>()?;
    let chord_pitches: Vec<Vec<Pitch>> = chords
        .iter()
        .map(|c| c.iter().map(|&d| degree(d)).collect())
        .collect::<qubo_compose::Result<_>>()?;
    let tokens: Vec<String> = chord_pitches
        .iter()
        .zip(&file.durations)
        .map(|(c, d)| chord_token(c, d))
        .collect();
    Piece {
        args,
        model: &model,
        set: &set,
        score: format!("{}\n{}\n", format_score(&notes), tokens.join(" ")),
        abc: abc_with_chords(&title(&args.input), &file.scale, &notes, &chord_pitches)?,
    }
    .emit()
}

fn cmd_chords(args: &RunArgs) -> CliResult<()> {
    check_output(args.output.as_deref())?;
    let file = chords_from_toml(&read(&args.input)?)?;
    let spec = &file.spec;
    let model = mrf_to_qubo(&build_chord_mrf(spec)?);
    if args.format == Some(Format::ModelText) {
        return emit(args.output.as_deref(), &qubo_to_toml(&model));
    }
    let layout = spec.layout();
    let set = sample(&model, args, Some(&one_hot_groups(&layout, true)))?;
    let selected = layout.selected(&best(&set)?.assignment)?;
    spec.violations(&selected).iter().for_each(warn);

    let half = Duration::named("H")?;
    let mut names = Vec::new();
    let mut voiced = Vec::new();
    for step in &selected {
        let label: Vec<&str> = step.iter().map(|&k| spec.chords[k].as_str()).collect();
        names.push(if label.is_empty() { "r".to_string() } else { label.join("+") });
        let mut pitches = Vec::new();
        for &k in step {
            pitches.extend(spec.triad(k, &file.scale)?);
        }
        pitches.sort_by_key(Pitch::midi);
        pitches.dedup();
        voiced.push((pitches, half.clone()));
    }
    let tokens: Vec<String> = voiced.iter().map(|(p, d)| chord_token(p, d)).collect();
    Piece {
        args,
        model: &model,
        set: &set,
        score: format!("{}\n{}\n", names.join(" "), tokens.join(" ")),
        abc: abc_chords(&title(&args.input), &file.scale, &voiced),
    }
    .emit()
}

fn cmd_qharmony(args: &RunArgs) -> CliResult<()> {
    check_output(args.output.as_deref())?;
    let spec = qharmony_from_toml(&read(&args.input)?)?;
    let ising = build_qharmony(&spec)?;
    if args.format == Some(Format::ModelText) {
        return emit(args.output.as_deref(), &ising_to_toml(&ising));
    }
    let model = ising_to_qubo(&ising);
    let groups: Vec<Group> = (0..model.num_vars())
        .map(|i| Group::all_patterns(vec![qubo_compose::qubo::VarId(i)]))
        .collect();
    let set = sample(&model, args, Some(&groups))?;
    let chosen = spec.selected(&bits_to_spins(&best(&set)?.assignment));
    for p in spec.input_notes.iter().filter(|p| !chosen.contains(p)) {
        warn(format!("input note {p} is not in the chord"));
    }
    let whole = Duration::named("W")?;
    Piece {
        args,
        model: &model,
        set: &set,
        score: chord_token(&chosen, &whole) + "\n",
        abc: abc_chords(&title(&args.input), &Scale::default(), &[(chosen.clone(), whole)]),
    }
    .emit()
}

fn weight_lines(key: &str, w: &Weights) -> String {
    let mut out = format!("{key} = [\n");
    for ((a, b), v) in w {
        out += &format!(
            "    [{}, {}, {}],\n",
            toml::Value::from(a.as_str()),
            toml::Value::from(b.as_str()),
            toml::Value::from(*v)
        );
    }
    out + "]\n"
}

fn cmd_extract_weights(input: &Path, output: Option<&Path>) -> CliResult<()> {
    check_output(output)?;
    let piece = parse_score(&read(input)?)?;
    let (pitch, duration) = extract_weights(&piece)?;
    let joint = extract_joint_weights(&piece)?;
    let text = [
        weight_lines("weights", &pitch),
        weight_lines("duration_weights", &duration),
        weight_lines("joint_weights", &joint),
    ]
    .join("\n");
    emit(output, &text)
}
