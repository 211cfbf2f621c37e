//! Newick reader.
//!
//! Accepts one tree terminated by `;`. Labels are runs of ASCII
//! alphanumerics, `_` and `.`; branch lengths follow `:` and default to 0.

use crate::error::{Error, Result};
use crate::treespace::tree::{Node, PhyloTree};

pub fn parse_newick(text: &str) -> Result<PhyloTree> {
    let mut parser = Parser { src: text.as_bytes(), pos: 0, nodes: Vec::new() };
    parser.skip_ws();
    let root = parser.subtree(None)?;
    parser.skip_ws();
    match parser.peek() {
        Some(b';') => parser.pos += 1,
        Some(_) => return Err(parser.error("expected ';'")),
        None => return Err(parser.error("missing terminating ';'")),
    }
    parser.skip_ws();
    if parser.peek().is_some() {
        return Err(parser.error("unexpected text after ';'"));
    }
    let Parser { nodes, pos, .. } = parser;
    PhyloTree::from_nodes(nodes, root).map_err(|e| match e {
        Error::InvalidConfig(message) => Error::Parse { offset: pos, message },
        Error::LeafCountOutOfRange { m, .. } => Error::Parse {
            offset: pos,
            message: format!("need at least 3 leaves, found {m}"),
        },
        other => other,
    })
}

/// One entry of a multi-tree Newick file.
#[derive(Debug)]
pub struct NewickRecord {
    /// One-based line number.
    pub line: usize,
    pub tree: Result<PhyloTree>,
}

/// Parses one tree per line, skipping blank lines and `#` comments.
pub fn parse_newick_lines(text: &str) -> Vec<NewickRecord> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, l)| NewickRecord { line: i + 1, tree: parse_newick(l) })
        .collect()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nodes: Vec<Node>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> Error {
        Error::Parse { offset: self.pos, message: message.to_string() }
    }

    fn subtree(&mut self, parent: Option<usize>) -> Result<usize> {
        let id = self.nodes.len();
        self.nodes.push(Node { parent, children: Vec::new(), length: 0.0, label: None });
        self.skip_ws();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            loop {
                let child = self.subtree(Some(id))?;
                self.nodes[id].children.push(child);
                self.skip_ws();
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    Some(_) => return Err(self.error("expected ',' or ')'")),
                    None => return Err(self.error("unbalanced parentheses")),
                }
            }
            self.skip_ws();
        }
        let label = self.label();
        if self.nodes[id].children.is_empty() && label.is_none() {
            return Err(self.error("expected a leaf label"));
        }
        self.nodes[id].label = label;
        self.skip_ws();
        if self.peek() == Some(b':') {
            self.pos += 1;
            self.skip_ws();
            self.nodes[id].length = self.number()?;
        }
        Ok(id)
    }

    fn label(&mut self) -> Option<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_' || c == b'.') {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn number(&mut self) -> Result<f64> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit() || matches!(c, b'.' | b'e' | b'E' | b'+' | b'-'))
        {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
        let bad = |message: &str| Error::Parse { offset: start, message: message.to_string() };
        let value: f64 = text.parse().map_err(|_| bad("malformed branch length"))?;
        if !value.is_finite() || value < 0.0 {
            return Err(bad("branch length must be a nonnegative number"));
        }
        Ok(value)
    }
}
