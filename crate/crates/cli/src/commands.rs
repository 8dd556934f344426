//! Subcommands. Every command writes its report to the given writer and
//! touches the file system only after its computation has finished.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use psiset_core::a4::basis_mul;
use psiset_core::expr::{eval_algebraic, eval_inclusion, Env};
use psiset_core::psi::{paving_stats, pearson, StatsSeries};
use psiset_core::{parse, psi_invert, Interval, Paving, PsiConfig, Resolution, Space};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::paving_io::{paving_json, read_stats_csv, write_paving_csv, write_stats_csv};
use crate::problem::{LoadedProblem, ProblemFile};
use crate::svg::{render, SvgStyle};
use crate::{format, CliError};

#[derive(Debug, Parser)]
#[command(name = "psiset", version, about = "Probabilistic set inversion over boxes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invert a problem file and write the paving.
    Invert(InvertArgs),
    /// Evaluate an expression over a box.
    Eval(EvalArgs),
    /// Print the basis product table.
    Table,
    /// Print per-iteration statistics of a run or of a stats CSV.
    Stats(StatsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Measure,
    Width,
}

impl From<ModeArg> for Resolution {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Measure => Resolution::Measure,
            ModeArg::Width => Resolution::MaxWidth,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum SpaceArg {
    #[default]
    Algebra,
    Semigroup,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Problem file (JSON).
    #[arg(long)]
    pub problem: PathBuf,
    /// Resolution; overrides `epsilon` from the problem file.
    #[arg(long)]
    pub resolution: Option<f64>,
    /// What the resolution is compared against; overrides the problem file.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub workers: Option<usize>,
    /// Bisection depth limit.
    #[arg(long, default_value_t = PsiConfig::DEFAULT_MAX_DEPTH)]
    pub max_depth: u32,
}

#[derive(Debug, Clone, Args)]
pub struct InvertArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Paving CSV output.
    #[arg(long)]
    pub out: PathBuf,
    /// Iteration statistics CSV output.
    #[arg(long)]
    pub stats: Option<PathBuf>,
    /// SVG rendering (two-dimensional problems only).
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Paving JSON output.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Seed for the sampling self-check.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Points sampled per accepted and rejected box to check the paving.
    #[arg(long, default_value_t = 0)]
    pub verify: usize,
    #[arg(long, default_value_t = SvgStyle::default().accepted)]
    pub accepted_color: String,
    #[arg(long, default_value_t = SvgStyle::default().rejected)]
    pub rejected_color: String,
    #[arg(long, default_value_t = SvgStyle::default().boundary)]
    pub boundary_color: String,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    /// Expression, e.g. "x^2 - 2*x + 1".
    pub expr: String,
    /// Variable bindings, e.g. `x=[3,4]`; repeat or separate with commas.
    #[arg(long = "box", value_name = "NAME=[LO,HI]")]
    pub boxes: Vec<String>,
    /// `algebra` computes in the free algebra and reduces once at the end;
    /// `semigroup` returns a guaranteed enclosure.
    #[arg(long, value_enum, default_value_t)]
    pub space: SpaceArg,
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false, id = "source")]
pub struct StatsSource {
    /// Run this problem file.
    #[arg(long)]
    pub problem: Option<PathBuf>,
    /// Read a stats CSV written by `invert --stats`.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct StatsArgs {
    #[command(flatten)]
    pub source: StatsSource,
    #[arg(long)]
    pub resolution: Option<f64>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, default_value_t = PsiConfig::DEFAULT_MAX_DEPTH)]
    pub max_depth: u32,
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Invert(args) => invert(&args, out),
        Command::Eval(args) => eval(&args, out),
        Command::Table => table(out),
        Command::Stats(args) => stats(&args, out),
    }
}

fn report(out: &mut dyn Write, text: std::fmt::Arguments<'_>) -> Result<(), CliError> {
    out.write_fmt(text)
        .map_err(|e| CliError::io("<stdout>", e))
}

fn load(path: &Path, resolution: Option<f64>, mode: Option<ModeArg>, workers: Option<usize>, max_depth: u32) -> Result<(LoadedProblem, PsiConfig), CliError> {
    let loaded = ProblemFile::load(path)?.validate()?;
    let mut config = PsiConfig::new(resolution.unwrap_or(loaded.epsilon), mode.map_or(loaded.mode, Resolution::from));
    config.workers = workers;
    config.max_depth = max_depth;
    config.validate().map_err(|e| CliError::Invalid(e.to_string()))?;
    Ok((loaded, config))
}

fn solve(loaded: &LoadedProblem, config: &PsiConfig) -> Result<Paving, CliError> {
    psi_invert(&loaded.problem, config).map_err(|e| CliError::Runtime(format!("inversion failed: {e}")))
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path).map(BufWriter::new).map_err(|e| CliError::io(path, e))
}

fn finish(path: &Path, mut w: BufWriter<File>) -> Result<(), CliError> {
    w.flush().map_err(|e| CliError::io(path, e))
}

/// Samples points in every decided box and counts class violations.
pub fn verify_paving(loaded: &LoadedProblem, paving: &Paving, samples: usize, seed: u64) -> (usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut checked, mut violations) = (0, 0);
    let decided = paving
        .accepted
        .iter()
        .map(|b| (true, b))
        .chain(paving.rejected.iter().map(|b| (false, b)));
    for (accepted, b) in decided {
        for _ in 0..samples {
            let x: Vec<f64> = b
                .components()
                .iter()
                .map(|c| if c.width() > 0.0 { rng.gen_range(c.lo()..=c.hi()) } else { c.lo() })
                .collect();
            if let Some(inside) = loaded.problem.is_solution(&x) {
                checked += 1;
                if inside != accepted {
                    violations += 1;
                }
            }
        }
    }
    (checked, violations)
}

pub fn invert(args: &InvertArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let r = &args.run;
    let (loaded, config) = load(&r.problem, r.resolution, r.mode, r.workers, r.max_depth)?;
    let dim = loaded.problem.adjustments().dim();
    let style = SvgStyle {
        accepted: args.accepted_color.clone(),
        rejected: args.rejected_color.clone(),
        boundary: args.boundary_color.clone(),
        ..SvgStyle::default()
    };
    if args.svg.is_some() && dim != 2 {
        return Err(CliError::Invalid(format!(
            "--svg needs a 2-dimensional adjustment box, this problem has {dim} dimensions"
        )));
    }

    let paving = solve(&loaded, &config)?;
    let series = paving_stats(&paving).map_err(|e| CliError::Runtime(e.to_string()))?;

    let mut w = create(&args.out)?;
    write_paving_csv(&paving, dim, &mut w)?;
    finish(&args.out, w)?;
    if let Some(path) = &args.stats {
        let mut w = create(path)?;
        write_stats_csv(&series, &mut w)?;
        finish(path, w)?;
    }
    if let Some(path) = &args.json {
        let mut w = create(path)?;
        serde_json::to_writer_pretty(&mut w, &paving_json(&paving, dim))
            .map_err(|e| CliError::io(path, e.into()))?;
        finish(path, w)?;
    }
    if let Some(path) = &args.svg {
        let svg = render(&paving, loaded.problem.adjustments(), &style)?;
        std::fs::write(path, svg).map_err(|e| CliError::io(path, e))?;
    }

    report(
        out,
        format_args!(
            "boxes: {} accepted, {} rejected, {} boundary\nmeasure: accepted {} rejected {} boundary {} of {}\niterations: {}\n",
            paving.accepted.len(),
            paving.rejected.len(),
            paving.boundary.len(),
            paving.accepted_measure(),
            paving.rejected_measure(),
            paving.boundary_measure(),
            loaded.problem.adjustments().measure(),
            series.rows.len()
        ),
    )?;

    if args.verify > 0 {
        let (checked, violations) = verify_paving(&loaded, &paving, args.verify, args.seed);
        report(out, format_args!("verify: {checked} points, {violations} violations\n"))?;
        if violations > 0 {
            return Err(CliError::Runtime(format!("self-check found {violations} misclassified points")));
        }
    }
    Ok(())
}

/// Splits `x=[1,2],y=[3,4]` at commas outside brackets.
fn split_bindings(spec: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in spec.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&spec[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&spec[start..]);
    parts.into_iter().map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn parse_binding(b: &str) -> Result<(String, Interval), CliError> {
    let bad = || CliError::Invalid(format!("bad box binding `{b}` (expected NAME=[LO,HI])"));
    let (name, value) = b.split_once('=').ok_or_else(bad)?;
    let value = value.trim();
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
    let iv = if let Some(inner) = value.strip_prefix('[').and_then(|v| v.strip_suffix(']')) {
        let (lo, hi) = inner.split_once(',').ok_or_else(bad)?;
        Interval::new(num(lo)?, num(hi)?)
    } else {
        Interval::point(num(value)?)
    }
    .map_err(|e| CliError::Invalid(format!("`{b}`: {e}")))?;
    Ok((name.trim().to_string(), iv))
}

pub fn eval(args: &EvalArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let e = parse(&args.expr).map_err(|err| CliError::Invalid(format!("{err}")))?;
    let mut names = Vec::new();
    let mut values = Vec::new();
    for spec in &args.boxes {
        for b in split_bindings(spec) {
            let (name, iv) = parse_binding(b)?;
            if names.contains(&name) {
                return Err(CliError::Invalid(format!("variable `{name}` is bound twice")));
            }
            names.push(name);
            values.push(iv);
        }
    }
    let free: BTreeSet<&str> = e.variables();
    if let Some(v) = free.iter().find(|v| !names.iter().any(|n| n == *v)) {
        return Err(CliError::Invalid(format!("variable `{v}` has no interval (use --box {v}=[lo,hi])")));
    }
    if let Some(n) = names.iter().find(|n| !free.contains(n.as_str())) {
        return Err(CliError::Invalid(format!("variable `{n}` does not occur in the expression")));
    }
    let env = Env::new(&names, &values);
    let text = match Space::from(args.space) {
        Space::Algebra => eval_algebraic(&e, &env).map(|g| format::ginterval(&g)),
        Space::Semigroup => eval_inclusion(&e, &env).map(|i| format::interval(&i)),
    }
    .map_err(|err| CliError::Invalid(format!("evaluation failed: {err}")))?;
    report(out, format_args!("{text}\n"))
}

impl From<SpaceArg> for Space {
    fn from(s: SpaceArg) -> Self {
        match s {
            SpaceArg::Algebra => Space::Algebra,
            SpaceArg::Semigroup => Space::Semigroup,
        }
    }
}

pub fn table(out: &mut dyn Write) -> Result<(), CliError> {
    let mut s = String::from("    e1 e2 e3 e4\n");
    for i in 1..=4 {
        s.push_str(&format!("e{i}:"));
        for j in 1..=4 {
            s.push_str(&format!(" e{}", basis_mul(i, j)));
        }
        s.push('\n');
    }
    let symmetric = (1..=4).all(|i| (1..=4).all(|j| basis_mul(i, j) == basis_mul(j, i)));
    s.push_str(&format!("symmetric: {}\n", if symmetric { "yes" } else { "no" }));
    report(out, format_args!("{s}"))
}

pub fn stats(args: &StatsArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let series = match (&args.source.problem, &args.source.input) {
        (Some(path), _) => {
            let (loaded, config) = load(path, args.resolution, args.mode, args.workers, args.max_depth)?;
            paving_stats(&solve(&loaded, &config)?).map_err(|e| CliError::Runtime(e.to_string()))?
        }
        (None, Some(path)) => {
            let file = File::open(path).map_err(|e| CliError::io(path, e))?;
            let rows = read_stats_csv(file).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
            let xs: Vec<f64> = rows.iter().map(|r| r.ratio_count).collect();
            let ys: Vec<f64> = rows.iter().map(|r| r.ratio_measure).collect();
            StatsSeries {
                correlation: pearson(&xs, &ys),
                rows,
            }
        }
        (None, None) => return Err(CliError::Invalid("give --problem or --input".into())),
    };
    let mut buf = Vec::new();
    write_stats_csv(&series, &mut buf)?;
    out.write_all(&buf).map_err(|e| CliError::io("<stdout>", e))?;
    match series.correlation {
        Some(c) => report(out, format_args!("correlation: {c}\n")),
        None => report(out, format_args!("correlation: undefined\n")),
    }
}
