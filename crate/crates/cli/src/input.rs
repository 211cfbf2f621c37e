//! Loading Newick samples into ultrametric vectors.

use std::collections::BTreeSet;
use std::path::Path;

use anyhow::{bail, Context, Result};
use troppca::model::InputOptions;
use troppca::treespace::{
    default_tolerance, parse_newick_lines, project_to_treespace, PhyloTree, UltrametricVector,
};

pub struct Sample {
    pub labels: Vec<String>,
    pub trees: Vec<UltrametricVector>,
    /// Source line of each tree.
    pub lines: Vec<usize>,
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Parses every tree in `path`, failing on the first parse error.
pub fn read_trees(path: &Path) -> Result<Vec<(usize, PhyloTree)>> {
    let text = read_text(path)?;
    let mut out = Vec::new();
    for rec in parse_newick_lines(&text) {
        let tree = rec.tree.with_context(|| format!("{}: line {}", path.display(), rec.line))?;
        out.push((rec.line, tree));
    }
    if out.is_empty() {
        bail!("no trees found in {}", path.display());
    }
    Ok(out)
}

/// Describes how two leaf sets differ, or `None` when they agree.
pub fn leaf_set_difference(expected: &[String], found: &[String]) -> Option<String> {
    if expected == found {
        return None;
    }
    let a: BTreeSet<&str> = expected.iter().map(String::as_str).collect();
    let b: BTreeSet<&str> = found.iter().map(String::as_str).collect();
    let missing: Vec<&str> = a.difference(&b).copied().collect();
    let extra: Vec<&str> = b.difference(&a).copied().collect();
    let mut parts = Vec::new();
    if !missing.is_empty() {
        parts.push(format!("missing {}", missing.join(",")));
    }
    if !extra.is_empty() {
        parts.push(format!("unexpected {}", extra.join(",")));
    }
    Some(parts.join("; "))
}

pub fn load_sample(path: &Path, opts: InputOptions) -> Result<Sample> {
    let trees = read_trees(path)?;
    let labels = trees[0].1.labels().to_vec();
    let mut sample = Sample { labels, trees: Vec::with_capacity(trees.len()), lines: Vec::new() };
    let mut offending = Vec::new();
    for (line, tree) in trees {
        if let Some(diff) = leaf_set_difference(&sample.labels, tree.labels()) {
            bail!("line {line}: leaf set differs from line {}: {diff}", sample.lines.first().copied().unwrap_or(line));
        }
        let tree = if opts.normalize_height {
            tree.normalized_height().with_context(|| format!("line {line}: cannot normalize height"))?
        } else {
            tree
        };
        let x = tree.cophenetic_vector();
        let u = match UltrametricVector::new(x.clone(), default_tolerance(x.coords())) {
            Ok(u) => u,
            Err(_) if opts.project_inputs => project_to_treespace(&x)?,
            Err(_) => {
                offending.push(line);
                continue;
            }
        };
        sample.trees.push(u);
        sample.lines.push(line);
    }
    if !offending.is_empty() {
        let list: Vec<String> = offending.iter().map(usize::to_string).collect();
        bail!(
            "input trees are not ultrametric at lines {} (use --project-inputs)",
            list.join(", ")
        );
    }
    Ok(sample)
}

/// Loads a sample and checks its leaf set against a model's label table.
pub fn load_matching(path: &Path, opts: InputOptions, labels: &[String]) -> Result<Sample> {
    let sample = load_sample(path, opts)?;
    if let Some(diff) = leaf_set_difference(labels, &sample.labels) {
        bail!("leaf set of {} does not match the model: {diff}", path.display());
    }
    Ok(sample)
}
