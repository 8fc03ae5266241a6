//! `ketsonic`: turn drawings into MIDI.
//!
//! Exit status: 0 on success, 1 for invalid flags or documents, 2 when an
//! input image cannot be decoded, 3 when an image contains no objects.

mod config;

use std::collections::HashSet;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use ketsonic::error::{MSG_CANNOT_PROCESS, MSG_NO_OBJECTS};
use ketsonic::filter::{decompose, load_image, minimal_ket_count, DiscretizationLevel};
use ketsonic::kets::distance;
use ketsonic::pipeline::{sonify, SonifyConfig};
use ketsonic::score::{
    deserialize_decomposition, fit_to_instrument, serialize_decomposition, to_midi, to_svg,
    Instrument,
};
use ketsonic::transform::{transform_sequence, MappingConfig, ScaleSnap};
use ketsonic::{Error, VisualDecomposition};

use config::FileConfig;

#[derive(Debug, Parser)]
#[command(
    name = "ketsonic",
    version,
    about = "Sonify drawings: decompose an image into dots, segments and arcs and play them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Image(s) to MIDI, optionally with an SVG and a decomposition document.
    Sonify(SonifyArgs),
    /// Image to decomposition document (and SVG).
    Decompose(DecomposeArgs),
    /// Similarity of two decomposition documents, 1 for identical.
    Distance(DistanceArgs),
    /// Minimal recognisable term count and the error curve as CSV.
    Analyze(AnalyzeArgs),
    /// Ordered snapshots to one MIDI file, one time block per snapshot.
    Sequence(SequenceArgs),
}

#[derive(Debug, Args)]
struct MappingArgs {
    /// TOML file with defaults for any of these flags.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Length of the piece in beats.
    #[arg(long)]
    beats: Option<f64>,
    /// MIDI pitch range.
    #[arg(long, value_name = "LO:HI")]
    range: Option<String>,
    /// Discretization level, 1 or more; higher is finer.
    #[arg(long)]
    level: Option<u32>,
    /// General MIDI program number.
    #[arg(long, conflicts_with = "instrument")]
    program: Option<u8>,
    /// Instrument by name (piano, violin, flute, cello, clarinet, trumpet, guitar, marimba).
    #[arg(long)]
    instrument: Option<String>,
    /// Pitch collection: chromatic, major or minor.
    #[arg(long)]
    scale: Option<String>,
    /// Notes per unit of relative size in segment and arc figures.
    #[arg(long)]
    notes_per_scale: Option<u32>,
    /// Largest interval step in semitones (reached by vertical strokes).
    #[arg(long)]
    interval_max: Option<u8>,
    /// Stroke thickness, as a fraction of the diagonal, that plays at full velocity.
    #[arg(long)]
    thickness_ref: Option<f64>,
    #[command(flatten)]
    toggles: Toggles,
}

#[derive(Debug, Args)]
struct Toggles {
    /// Stroke direction sets whether runs ascend or descend.
    #[arg(long, overrides_with = "no_progression")]
    progression: bool,
    #[arg(long)]
    no_progression: bool,
    /// Stroke angle sets the interval size.
    #[arg(long, overrides_with = "no_interval")]
    interval: bool,
    #[arg(long)]
    no_interval: bool,
    /// Stroke thickness sets the velocity.
    #[arg(long, overrides_with = "no_dynamics")]
    dynamics: bool,
    #[arg(long)]
    no_dynamics: bool,
    /// Horizontal gaps become rests.
    #[arg(long, overrides_with = "no_pauses")]
    pauses: bool,
    #[arg(long)]
    no_pauses: bool,
}

fn toggle(on: bool, off: bool) -> Option<bool> {
    match (on, off) {
        (true, _) => Some(true),
        (_, true) => Some(false),
        _ => None,
    }
}

#[derive(Debug, Args)]
struct SonifyArgs {
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// MIDI output for a single input (default: the input name with `.mid`).
    #[arg(short, long, conflicts_with = "out_dir")]
    output: Option<PathBuf>,
    /// Output directory; required for more than one input.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Also write an SVG drawing of the decomposition.
    #[arg(long)]
    svg: bool,
    /// Also write the decomposition document (JSON).
    #[arg(long)]
    doc: bool,
    /// Skip the MIDI file.
    #[arg(long)]
    no_midi: bool,
    #[command(flatten)]
    mapping: MappingArgs,
}

#[derive(Debug, Args)]
struct DecomposeArgs {
    input: PathBuf,
    /// Document output (default: stdout).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Also write an SVG drawing.
    #[arg(long, value_name = "FILE")]
    svg: Option<PathBuf>,
    #[arg(long)]
    level: Option<u32>,
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DistanceArgs {
    a: PathBuf,
    b: PathBuf,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    input: PathBuf,
    /// Largest reconstruction error (1 - IoU) still counted as recognisable.
    #[arg(long)]
    threshold: Option<f64>,
    /// CSV output (default: stdout).
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SequenceArgs {
    /// Snapshots in playing order.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[arg(short, long)]
    output: PathBuf,
    #[command(flatten)]
    mapping: MappingArgs,
}

/// A failed run: exit status and message.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }

    fn context(self, path: &Path) -> Self {
        Self {
            message: format!("{}: {}", path.display(), self.message),
            ..self
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ImageUnprocessable(cause) => Self {
                code: 2,
                message: format!("{MSG_CANNOT_PROCESS}\n  cause: {cause}"),
            },
            Error::NoObjects => Self {
                code: 3,
                message: MSG_NO_OBJECTS.to_string(),
            },
            other => Self::usage(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn load_config(path: Option<&Path>) -> CliResult<FileConfig> {
    match path {
        Some(p) => FileConfig::load(p).map_err(Failure::usage),
        None => Ok(FileConfig::default()),
    }
}

fn parse_range(text: &str) -> CliResult<(u8, u8)> {
    let bad = || {
        Failure::usage(format!(
            "--range expects LO:HI with MIDI pitches 0-127, got {text:?}"
        ))
    };
    let (lo, hi) = text.split_once(':').ok_or_else(bad)?;
    let lo: u8 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u8 = hi.trim().parse().map_err(|_| bad())?;
    Ok((lo, hi))
}

fn parse_scale(text: &str) -> CliResult<ScaleSnap> {
    match text.to_ascii_lowercase().as_str() {
        "chromatic" => Ok(ScaleSnap::Chromatic),
        "major" => Ok(ScaleSnap::Major),
        "minor" => Ok(ScaleSnap::Minor),
        _ => Err(Failure::usage(format!(
            "--scale must be chromatic, major or minor, got {text:?}"
        ))),
    }
}

fn level(flag: Option<u32>, file: &FileConfig) -> CliResult<DiscretizationLevel> {
    match flag.or(file.level) {
        Some(l) => DiscretizationLevel::new(l).map_err(Failure::from),
        None => Ok(DiscretizationLevel::default()),
    }
}

/// Merges flags over the config file over the defaults.
fn resolve(args: &MappingArgs) -> CliResult<(SonifyConfig, FileConfig)> {
    let file = load_config(args.config.as_deref())?;
    let defaults = MappingConfig::default();
    let (pitch_lo, pitch_hi) = match args.range.as_deref().or(file.range.as_deref()) {
        Some(r) => parse_range(r)?,
        None => (defaults.pitch_lo, defaults.pitch_hi),
    };
    let scale_snap = match args.scale.as_deref().or(file.scale.as_deref()) {
        Some(s) => parse_scale(s)?,
        None => defaults.scale_snap,
    };
    let t = &args.toggles;
    let mapping = MappingConfig {
        total_beats: args.beats.or(file.beats).unwrap_or(defaults.total_beats),
        pitch_lo,
        pitch_hi,
        enable_progression: toggle(t.progression, t.no_progression)
            .or(file.progression)
            .unwrap_or(true),
        enable_interval: toggle(t.interval, t.no_interval)
            .or(file.interval)
            .unwrap_or(true),
        enable_dynamics: toggle(t.dynamics, t.no_dynamics)
            .or(file.dynamics)
            .unwrap_or(true),
        enable_pauses: toggle(t.pauses, t.no_pauses)
            .or(file.pauses)
            .unwrap_or(true),
        notes_per_unit_scale: args
            .notes_per_scale
            .or(file.notes_per_scale)
            .unwrap_or(defaults.notes_per_unit_scale),
        scale_snap,
        interval_max: args
            .interval_max
            .or(file.interval_max)
            .unwrap_or(defaults.interval_max),
        thickness_ref: args
            .thickness_ref
            .or(file.thickness_ref)
            .unwrap_or(defaults.thickness_ref),
    };
    mapping.validate()?;

    let mut cfg = SonifyConfig {
        level: level(args.level, &file)?,
        mapping,
        ..SonifyConfig::default()
    };
    // A flag of either kind beats both config keys.
    let (program, name) = if args.program.is_some() || args.instrument.is_some() {
        (args.program, args.instrument.clone())
    } else {
        (file.program, file.instrument.clone())
    };
    if let Some(name) = name {
        let inst = Instrument::by_name(&name)
            .ok_or_else(|| Failure::usage(format!("unknown instrument {name:?}")))?;
        cfg.instrument = Some(inst);
        cfg.midi.program = inst.program;
    } else if let Some(p) = program {
        if p > 127 {
            return Err(Failure::usage(format!("--program must be 0-127, got {p}")));
        }
        cfg.instrument = Instrument::by_program(p);
        cfg.midi.program = p;
    }
    Ok((cfg, file))
}

fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    std::fs::write(path, bytes)
        .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

#[derive(Debug, Clone, Copy)]
struct Emit {
    midi: bool,
    svg: bool,
    doc: bool,
}

fn sonify_one(input: &Path, midi_path: &Path, cfg: &SonifyConfig, emit: Emit) -> CliResult<()> {
    let img = load_image(input)?;
    let out = sonify(&img, cfg)?;
    if emit.midi {
        write_file(midi_path, &out.midi)?;
    }
    if emit.svg {
        write_file(
            &midi_path.with_extension("svg"),
            to_svg(&out.decomposition, img.frame()).as_bytes(),
        )?;
    }
    if emit.doc {
        let doc = serialize_decomposition(&out.decomposition, img.frame());
        write_file(&midi_path.with_extension("json"), doc.as_bytes())?;
    }
    Ok(())
}

fn run_sonify(args: &SonifyArgs) -> CliResult<()> {
    let (cfg, file) = resolve(&args.mapping)?;
    let emit = Emit {
        midi: if args.no_midi {
            false
        } else {
            file.midi.unwrap_or(true)
        },
        svg: args.svg || file.svg.unwrap_or(false),
        doc: args.doc || file.doc.unwrap_or(false),
    };
    if !(emit.midi || emit.svg || emit.doc) {
        return Err(Failure::usage(
            "nothing to emit: enable at least one of MIDI, --svg or --doc",
        ));
    }

    let jobs: Vec<(PathBuf, PathBuf)> = match (&args.out_dir, args.inputs.as_slice()) {
        (None, [input]) => {
            let out = args
                .output
                .clone()
                .unwrap_or_else(|| input.with_extension("mid"));
            vec![(input.clone(), out)]
        }
        (None, _) => return Err(Failure::usage("several inputs need --out-dir")),
        (Some(dir), inputs) => {
            let mut seen = HashSet::new();
            let mut jobs = Vec::with_capacity(inputs.len());
            for input in inputs {
                let stem = input.file_stem().ok_or_else(|| {
                    Failure::usage(format!("{} has no file name", input.display()))
                })?;
                if !seen.insert(stem.to_owned()) {
                    return Err(Failure::usage(format!(
                        "two inputs share the name {:?}; their outputs would collide",
                        stem
                    )));
                }
                jobs.push((input.clone(), dir.join(stem).with_extension("mid")));
            }
            std::fs::create_dir_all(dir)
                .map_err(|e| Failure::usage(format!("cannot create {}: {e}", dir.display())))?;
            jobs
        }
    };

    let results: Vec<CliResult<()>> = jobs
        .par_iter()
        .map(|(input, out)| sonify_one(input, out, &cfg, emit).map_err(|f| f.context(input)))
        .collect();
    let mut first = None;
    for r in results {
        if let Err(f) = r {
            if first.is_none() {
                first = Some(f.code);
            }
            eprintln!("error: {}", f.message);
        }
    }
    match first {
        Some(code) => Err(Failure {
            code,
            message: String::new(),
        }),
        None => Ok(()),
    }
}

fn run_decompose(args: &DecomposeArgs) -> CliResult<()> {
    let file = load_config(args.config.as_deref())?;
    let level = level(args.level, &file)?;
    let img = load_image(&args.input)?;
    let d = decompose(&img, level)?;
    let doc = serialize_decomposition(&d, img.frame());
    match &args.output {
        Some(p) => write_file(p, doc.as_bytes())?,
        None => print_stdout(&doc)?,
    }
    if let Some(p) = &args.svg {
        write_file(p, to_svg(&d, img.frame()).as_bytes())?;
    }
    Ok(())
}

fn read_decomposition(path: &Path) -> CliResult<VisualDecomposition> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    deserialize_decomposition(&text)
        .map(|(d, _)| d)
        .map_err(|e| Failure::from(e).context(path))
}

fn run_distance(args: &DistanceArgs) -> CliResult<()> {
    let a = read_decomposition(&args.a)?;
    let b = read_decomposition(&args.b)?;
    print_stdout(&format!("{:.6}\n", distance(&a, &b)))
}

fn run_analyze(args: &AnalyzeArgs) -> CliResult<()> {
    let file = load_config(args.config.as_deref())?;
    let threshold = args.threshold.or(file.threshold).unwrap_or(0.5);
    let img = load_image(&args.input)?;
    let analysis = minimal_ket_count(&img, threshold)?;
    let mut csv = String::from("n_terms,error\n");
    for (n, err) in &analysis.curve {
        csv.push_str(&format!("{n},{err:.6}\n"));
    }
    match &args.output {
        Some(p) => write_file(p, csv.as_bytes())?,
        None => print_stdout(&csv)?,
    }
    eprintln!(
        "N* = {}{}",
        analysis.n_star,
        if analysis.threshold_reached {
            String::new()
        } else {
            format!(" (threshold {threshold} not reached)")
        }
    );
    Ok(())
}

fn run_sequence(args: &SequenceArgs) -> CliResult<()> {
    let (cfg, _) = resolve(&args.mapping)?;
    let snapshots: Vec<CliResult<VisualDecomposition>> = args
        .inputs
        .par_iter()
        .map(|input| {
            let img = load_image(input).map_err(|e| Failure::from(e).context(input))?;
            match decompose(&img, cfg.level) {
                Ok(d) => Ok(d),
                Err(Error::NoObjects) => Ok(VisualDecomposition::empty()),
                Err(e) => Err(Failure::from(e).context(input)),
            }
        })
        .collect();
    let snapshots = snapshots.into_iter().collect::<CliResult<Vec<_>>>()?;
    if snapshots.iter().all(VisualDecomposition::is_empty) {
        return Err(Error::NoObjects.into());
    }
    let mut sound = transform_sequence(&snapshots, &cfg.mapping);
    if let Some(inst) = &cfg.instrument {
        fit_to_instrument(&mut sound, inst, cfg.mapping.pitch_lo, cfg.mapping.pitch_hi);
    }
    write_file(&args.output, &to_midi(&sound, &cfg.midi))
}

fn print_stdout(text: &str) -> CliResult<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|()| out.flush())
        .map_err(|e| Failure::usage(format!("cannot write to stdout: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Sonify(a) => run_sonify(a),
        Command::Decompose(a) => run_decompose(a),
        Command::Distance(a) => run_distance(a),
        Command::Analyze(a) => run_analyze(a),
        Command::Sequence(a) => run_sequence(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
