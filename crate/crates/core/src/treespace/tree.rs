use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::format::format_sig;
use crate::treespace::pairs::{pair_count, pair_index};
use crate::trop::TorusPoint;

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Length of the edge to the parent.
    pub length: f64,
    pub label: Option<String>,
}

/// A rooted tree with uniquely labelled leaves and nonnegative edge lengths.
///
/// Leaf indices `0..m` follow the lexicographic order of the labels.
#[derive(Debug, Clone, PartialEq)]
pub struct PhyloTree {
    nodes: Vec<Node>,
    root: usize,
    labels: Vec<String>,
    leaf_nodes: Vec<usize>,
}

impl PhyloTree {
    /// Builds a tree from an arena. Internal node labels are dropped.
    pub fn from_nodes(mut nodes: Vec<Node>, root: usize) -> Result<Self> {
        let invalid = |msg: String| Error::InvalidConfig(msg);
        if root >= nodes.len() || nodes[root].parent.is_some() {
            return Err(invalid("root must be a parentless node".into()));
        }
        let mut leaves = Vec::new();
        for (id, node) in nodes.iter_mut().enumerate() {
            if !node.length.is_finite() || node.length < 0.0 {
                return Err(invalid(format!("edge length {} is not a nonnegative number", node.length)));
            }
            if node.children.is_empty() {
                let label = node
                    .label
                    .clone()
                    .ok_or_else(|| invalid("leaf without label".into()))?;
                leaves.push((label, id));
            } else {
                node.label = None;
            }
        }
        leaves.sort();
        let mut seen = HashSet::new();
        for (label, _) in &leaves {
            if !seen.insert(label.as_str()) {
                return Err(invalid(format!("duplicate leaf label '{label}'")));
            }
        }
        if leaves.len() < 3 {
            return Err(Error::LeafCountOutOfRange { m: leaves.len(), min: 3, max: usize::MAX });
        }
        let (labels, leaf_nodes) = leaves.into_iter().unzip();
        Ok(Self { nodes, root, labels, leaf_nodes })
    }

    pub fn num_leaves(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.root
    }

    fn node_depths(&self) -> Vec<f64> {
        let mut depth = vec![0.0; self.nodes.len()];
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            for &c in &self.nodes[v].children {
                depth[c] = depth[v] + self.nodes[c].length;
                stack.push(c);
            }
        }
        depth
    }

    /// Root-to-leaf path weight for every leaf, in leaf-index order.
    pub fn leaf_depths(&self) -> Vec<f64> {
        let depth = self.node_depths();
        self.leaf_nodes.iter().map(|&n| depth[n]).collect()
    }

    /// Largest root-to-leaf weight.
    pub fn height(&self) -> f64 {
        self.leaf_depths().into_iter().fold(0.0, f64::max)
    }

    /// Spread between the longest and shortest root-to-leaf weights.
    pub fn equidistance_deviation(&self) -> f64 {
        let d = self.leaf_depths();
        let hi = d.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = d.iter().copied().fold(f64::INFINITY, f64::min);
        hi - lo
    }

    pub fn is_equidistant(&self, tol: f64) -> bool {
        self.equidistance_deviation() <= tol
    }

    /// Copy with every edge scaled so the height is 1.
    pub fn normalized_height(&self) -> Result<Self> {
        let h = self.height();
        if h <= 0.0 {
            return Err(Error::NonPositive { index: 0, value: h });
        }
        let mut out = self.clone();
        for node in &mut out.nodes {
            node.length /= h;
        }
        Ok(out)
    }

    /// Leaf indices below each node.
    fn leaf_sets(&self) -> Vec<Vec<usize>> {
        let mut leaf_of = vec![usize::MAX; self.nodes.len()];
        for (idx, &n) in self.leaf_nodes.iter().enumerate() {
            leaf_of[n] = idx;
        }
        let mut sets: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        for v in self.postorder() {
            if self.nodes[v].children.is_empty() {
                sets[v] = vec![leaf_of[v]];
            } else {
                let mut s: Vec<usize> = self.nodes[v]
                    .children
                    .iter()
                    .flat_map(|&c| sets[c].iter().copied())
                    .collect();
                s.sort_unstable();
                sets[v] = s;
            }
        }
        sets
    }

    fn postorder(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            order.push(v);
            stack.extend(self.nodes[v].children.iter().copied());
        }
        order.reverse();
        order
    }

    /// Pairwise path weights between leaves in lexicographic pair order.
    ///
    /// For an equidistant tree the result satisfies the three-point condition.
    pub fn cophenetic_vector(&self) -> TorusPoint {
        let m = self.num_leaves();
        let depth = self.node_depths();
        let leaf_depth = self.leaf_depths();
        let sets = self.leaf_sets();
        let mut out = vec![0.0; pair_count(m)];
        for (v, node) in self.nodes.iter().enumerate() {
            for (a, &ca) in node.children.iter().enumerate() {
                for &cb in &node.children[a + 1..] {
                    for &i in &sets[ca] {
                        for &j in &sets[cb] {
                            out[pair_index(i, j, m)] =
                                leaf_depth[i] + leaf_depth[j] - 2.0 * depth[v];
                        }
                    }
                }
            }
        }
        TorusPoint::from_raw(out)
    }

    /// Leaf sets of the non-root internal nodes with at least two leaves,
    /// each sorted, the list sorted. Together they encode the topology.
    pub fn clades(&self) -> Vec<Vec<usize>> {
        let sets = self.leaf_sets();
        let mut clades: Vec<Vec<usize>> = (0..self.nodes.len())
            .filter(|&v| v != self.root && sets[v].len() >= 2 && sets[v].len() < self.num_leaves())
            .map(|v| sets[v].clone())
            .collect();
        clades.sort();
        clades.dedup();
        clades
    }

    /// Canonical nested-set string of the topology, using leaf labels.
    pub fn topology_signature(&self) -> String {
        let clades = self.clades();
        if clades.is_empty() {
            return "{}".to_string();
        }
        let mut parts: Vec<String> = clades
            .iter()
            .map(|c| {
                let names: Vec<&str> = c.iter().map(|&i| self.labels[i].as_str()).collect();
                format!("{{{}}}", names.join(","))
            })
            .collect();
        parts.sort();
        parts.concat()
    }

    /// Newick text with 12 significant digits per branch length.
    pub fn to_newick(&self) -> String {
        let mut out = String::new();
        self.write_node(self.root, &mut out);
        out.push(';');
        out
    }

    fn write_node(&self, v: usize, out: &mut String) {
        let node = &self.nodes[v];
        if node.children.is_empty() {
            out.push_str(node.label.as_deref().unwrap_or_default());
        } else {
            out.push('(');
            for (k, &c) in node.children.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                self.write_node(c, out);
            }
            out.push(')');
        }
        if v != self.root || node.length != 0.0 {
            out.push(':');
            out.push_str(&format_sig(node.length, 12));
        }
    }
}
