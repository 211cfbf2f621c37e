//! Command-line front end for fitting tropical principal polytopes to gene
//! tree samples.

pub mod input;
pub mod svg;

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use troppca::format::format_sig;
use troppca::model::{InputOptions, ModelFile};
use troppca::tpca::{objective, project_to_polytope, FitConfig, Fitter, TropicalPolytope, UpdateMode};
use troppca::treespace::{
    default_tolerance, parse_newick_lines, random_ultrametric_with, reconstruct_tree,
    reconstruct_tree_with_labels, three_point_violation, UltrametricVector,
};

use crate::input::{load_matching, load_sample, read_text};

#[derive(Debug, Parser)]
#[command(name = "troppca", version, about = "Tropical principal polytopes for equidistant trees")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit a tropical principal polytope to a Newick sample.
    Fit(FitArgs),
    /// Sum of tropical distances from a sample to a fitted polytope.
    Eval(EvalArgs),
    /// Per-tree projection coordinates as CSV.
    Project(ProjectArgs),
    /// SVG scatter of projection coordinates (s = 3 only).
    Plot(PlotArgs),
    /// Report equidistance and three-point violations per tree.
    Check(CheckArgs),
    /// Write random equidistant trees.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub s: usize,
    #[arg(long, default_value_t = 100)]
    pub iters: usize,
    #[arg(long, default_value_t = 0.01)]
    pub lr0: f64,
    #[arg(long, default_value_t = 0.999)]
    pub decay: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Replace non-ultrametric inputs by their tree-space projection.
    #[arg(long)]
    pub project_inputs: bool,
    /// Rescale every tree to height 1 before encoding.
    #[arg(long)]
    pub normalize_height: bool,
    #[arg(long, value_enum, default_value_t = Mode::Simultaneous)]
    pub update_mode: Mode,
    #[arg(long)]
    pub out: PathBuf,
    /// Per-iteration CSV (iter, alpha, SE, best_SE).
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Simultaneous,
    Cyclic,
}

impl From<Mode> for UpdateMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Simultaneous => UpdateMode::Simultaneous,
            Mode::Cyclic => UpdateMode::Cyclic,
        }
    }
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct ProjectArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ColorBy {
    Topology,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum)]
    pub color_by: Option<ColorBy>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Absolute tolerance; defaults to 1e-8 times each tree's scale.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(cli: Cli, stdout: &mut dyn std::io::Write) -> Result<()> {
    match cli.command {
        Command::Fit(a) => cmd_fit(&a, stdout),
        Command::Eval(a) => cmd_eval(&a, stdout),
        Command::Project(a) => cmd_project(&a),
        Command::Plot(a) => cmd_plot(&a),
        Command::Check(a) => cmd_check(&a, stdout),
        Command::Gen(a) => cmd_gen(&a),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn num(x: f64) -> String {
    format_sig(x, 12)
}

pub fn cmd_fit(a: &FitArgs, stdout: &mut dyn std::io::Write) -> Result<()> {
    let opts = InputOptions { project_inputs: a.project_inputs, normalize_height: a.normalize_height };
    let sample = load_sample(&a.input, opts)?;
    let cfg = FitConfig {
        s: a.s,
        max_iters: a.iters,
        lr0: a.lr0,
        decay: a.decay,
        seed: a.seed,
        update_mode: a.update_mode.into(),
        ..FitConfig::default()
    };
    let start = Instant::now();
    let mut fitter = Fitter::new(&sample.trees, &cfg)?;
    for _ in 0..cfg.max_iters {
        fitter.step()?;
    }
    let result = fitter.finish(start.elapsed().as_secs_f64())?;

    let model = ModelFile::from_fit(sample.labels.clone(), &cfg, &result, opts);
    write_file(&a.out, &model.to_json())?;
    if let Some(path) = &a.trace {
        let mut w = csv::Writer::from_path(path).with_context(|| format!("cannot write {}", path.display()))?;
        w.write_record(["iter", "alpha", "SE", "best_SE"])?;
        for r in &result.trace.records {
            w.write_record([r.iter.to_string(), num(r.alpha), num(r.se), num(r.best_se)])?;
        }
        w.flush()?;
    }
    writeln!(stdout, "SE={:.4} time_s={:.3}", result.trace.best_se, result.trace.wall_time_s)?;
    Ok(())
}

fn load_model(path: &Path) -> Result<ModelFile> {
    ModelFile::from_json(&read_text(path)?).with_context(|| format!("invalid model {}", path.display()))
}

pub fn cmd_eval(a: &EvalArgs, stdout: &mut dyn std::io::Write) -> Result<()> {
    let model = load_model(&a.model)?;
    let sample = load_matching(&a.input, model.input_options(), &model.leaf_labels)?;
    let se = objective(&sample.trees, &model.polytope()?)?;
    writeln!(stdout, "SE={se:.4}")?;
    Ok(())
}

/// λ coordinates, tropical distance and projected point for every tree.
fn project_all(sample: &[UltrametricVector], p: &TropicalPolytope) -> Result<Vec<(Vec<f64>, f64, troppca::TorusPoint)>> {
    sample
        .iter()
        .map(|u| {
            let (w, lambda) = project_to_polytope(u.point(), p)?;
            let d = troppca::trop::trop_dist(u.point(), &w)?;
            Ok((lambda.0, d, w))
        })
        .collect()
}

pub fn cmd_project(a: &ProjectArgs) -> Result<()> {
    let model = load_model(&a.model)?;
    let sample = load_matching(&a.input, model.input_options(), &model.leaf_labels)?;
    let rows = project_all(&sample.trees, &model.polytope()?)?;
    let mut w = csv::Writer::from_path(&a.out).with_context(|| format!("cannot write {}", a.out.display()))?;
    let mut header = vec!["id".to_string()];
    header.extend((1..=model.s).map(|k| format!("lambda_{k}")));
    header.push("dist".into());
    w.write_record(&header)?;
    for (i, (lambda, d, _)) in rows.iter().enumerate() {
        let mut rec = vec![(i + 1).to_string()];
        rec.extend(lambda.iter().map(|&v| num(v)));
        rec.push(num(*d));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

/// Nested-set signature of the tree encoded by `w`.
fn topology_of(w: &troppca::TorusPoint, labels: &[String]) -> Result<String> {
    let tol = default_tolerance(w.coords());
    let u = UltrametricVector::new(w.clone(), tol)?.positive_realization();
    Ok(reconstruct_tree_with_labels(&u, labels, tol)?.topology_signature())
}

pub fn cmd_plot(a: &PlotArgs) -> Result<()> {
    let model = load_model(&a.model)?;
    if model.s != 3 {
        bail!("plotting requires s = 3 (model has s = {})", model.s);
    }
    let sample = load_matching(&a.input, model.input_options(), &model.leaf_labels)?;
    let polytope = model.polytope()?;
    let rows = project_all(&sample.trees, &polytope)?;
    let planar = |l: &[f64]| (l[1] - l[0], l[2] - l[0]);

    let mut groups = vec![None; rows.len()];
    let mut legend = Vec::new();
    if a.color_by == Some(ColorBy::Topology) {
        let sigs: Vec<String> = rows
            .iter()
            .map(|(_, _, w)| topology_of(w, &model.leaf_labels))
            .collect::<Result<_>>()?;
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for s in &sigs {
            *counts.entry(s).or_default() += 1;
        }
        let mut order: Vec<(&str, usize)> = counts.into_iter().collect();
        order.sort_by(|x, y| y.1.cmp(&x.1).then(x.0.cmp(y.0)));
        let index: BTreeMap<&str, usize> = order.iter().enumerate().map(|(i, (s, _))| (*s, i)).collect();
        for (g, s) in groups.iter_mut().zip(&sigs) {
            *g = Some(index[s.as_str()]);
        }
        legend = order.into_iter().map(|(s, c)| (s.to_string(), c)).collect();
    }

    let vertices = polytope
        .vertices()
        .iter()
        .map(|v| project_to_polytope(v, &polytope).map(|(_, l)| planar(&l.0)))
        .collect::<troppca::Result<Vec<_>>>()?;
    let plot = svg::Plot {
        title: format!("tropical principal polytope (n = {}, m = {})", rows.len(), model.m),
        points: rows
            .iter()
            .zip(groups)
            .map(|((l, _, _), group)| {
                let (x, y) = planar(l);
                svg::Point { x, y, group }
            })
            .collect(),
        vertices,
        legend,
    };
    write_file(&a.out, &plot.render())
}

pub fn cmd_check(a: &CheckArgs, stdout: &mut dyn std::io::Write) -> Result<()> {
    let text = read_text(&a.input)?;
    let records = parse_newick_lines(&text);
    if records.is_empty() {
        bail!("no trees found in {}", a.input.display());
    }
    let (mut n_ok, mut n_equi, mut n_ultra, mut n_err) = (0, 0, 0, 0);
    for rec in records {
        let tree = match rec.tree {
            Ok(t) => t,
            Err(e) => {
                n_err += 1;
                writeln!(stdout, "line {}: parse error: {e}", rec.line)?;
                continue;
            }
        };
        n_ok += 1;
        let height = tree.height();
        let deviation = tree.equidistance_deviation();
        let x = tree.cophenetic_vector();
        let violation = three_point_violation(x.coords())?;
        let tol_equi = a.tol.unwrap_or(1e-8 * height.abs().max(f64::MIN_POSITIVE));
        let tol_ultra = a.tol.unwrap_or_else(|| default_tolerance(x.coords()));
        let equi = deviation <= tol_equi;
        let ultra = violation <= tol_ultra;
        n_equi += usize::from(equi);
        n_ultra += usize::from(ultra);
        writeln!(
            stdout,
            "line {}: leaves={} height={} deviation={} violation={} equidistant={} ultrametric={}",
            rec.line,
            tree.num_leaves(),
            num(height),
            num(deviation),
            num(violation),
            if equi { "yes" } else { "no" },
            if ultra { "yes" } else { "no" },
        )?;
    }
    writeln!(
        stdout,
        "trees={} equidistant={n_equi} ultrametric={n_ultra} parse_errors={n_err}",
        n_ok + n_err
    )?;
    if n_err > 0 {
        bail!("{n_err} tree(s) failed to parse");
    }
    Ok(())
}

pub fn cmd_gen(a: &GenArgs) -> Result<()> {
    if a.m < 3 {
        bail!("--m must be at least 3");
    }
    if a.n < 1 {
        bail!("--n must be at least 1");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut file = std::io::BufWriter::new(
        std::fs::File::create(&a.out).with_context(|| format!("cannot write {}", a.out.display()))?,
    );
    for _ in 0..a.n {
        let u = random_ultrametric_with(a.m, &mut rng)?.positive_realization();
        writeln!(file, "{}", reconstruct_tree(&u, 0.0)?.to_newick())?;
    }
    file.flush()?;
    Ok(())
}
