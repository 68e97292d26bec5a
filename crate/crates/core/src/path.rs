//! Edge paths in a cube complex.

use std::fmt;

use crate::complex::{CubeComplex, Dart};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("unknown edge label `{0}`")]
    UnknownLabel(String),
    #[error("edge `{label}` does not leave vertex `{vertex}`")]
    NotAttached { label: String, vertex: String },
}

/// A combinatorial path: a start vertex and a sequence of darts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct Path {
    pub start: usize,
    pub darts: Vec<Dart>,
}

impl Path {
    pub fn empty(start: usize) -> Path {
        Path {
            start,
            darts: Vec::new(),
        }
    }

    pub fn new(start: usize, darts: Vec<Dart>) -> Path {
        Path { start, darts }
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn end(&self, x: &CubeComplex) -> usize {
        self.darts.last().map_or(self.start, |d| x.head(*d))
    }

    /// Vertex sequence, length `len() + 1`.
    pub fn vertices(&self, x: &CubeComplex) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.darts.len() + 1);
        out.push(self.start);
        for d in &self.darts {
            out.push(x.head(*d));
        }
        out
    }

    pub fn is_valid(&self, x: &CubeComplex) -> bool {
        let mut v = self.start;
        for d in &self.darts {
            if d.edge >= x.edge_count() || x.tail(*d) != v {
                return false;
            }
            v = x.head(*d);
        }
        true
    }

    pub fn is_closed(&self, x: &CubeComplex) -> bool {
        self.end(x) == self.start
    }

    pub fn inverse(&self, x: &CubeComplex) -> Path {
        Path {
            start: self.end(x),
            darts: self.darts.iter().rev().map(|d| d.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Path) -> Path {
        let mut darts = self.darts.clone();
        darts.extend_from_slice(&other.darts);
        Path {
            start: self.start,
            darts,
        }
    }

    pub fn subpath(&self, x: &CubeComplex, from: usize, to: usize) -> Path {
        let start = if from == 0 {
            self.start
        } else {
            x.head(self.darts[from - 1])
        };
        Path {
            start,
            darts: self.darts[from..to].to_vec(),
        }
    }

    /// Removes backtracks `d d^-1`.
    pub fn free_reduce(&self) -> Path {
        Path {
            start: self.start,
            darts: free_reduce(&self.darts),
        }
    }

    /// Parses a dotted label path such as `a.b^-1.a`; `1` or the empty string is
    /// the trivial path.
    pub fn parse(x: &CubeComplex, start: usize, text: &str) -> Result<Path, PathError> {
        let t = text.trim();
        let mut darts = Vec::new();
        let mut v = start;
        if t.is_empty() || t == "1" {
            return Ok(Path::empty(start));
        }
        for tok in t.split('.') {
            let (label, rev) = match tok.strip_suffix("^-1") {
                Some(l) => (l, true),
                None => (tok, false),
            };
            let d = x
                .out_darts(v)
                .iter()
                .copied()
                .find(|d| d.rev == rev && x.edge_label(d.edge) == label)
                .ok_or_else(|| {
                    if (0..x.edge_count()).any(|e| x.edge_label(e) == label) {
                        PathError::NotAttached {
                            label: tok.to_string(),
                            vertex: x.vertex_name(v).to_string(),
                        }
                    } else {
                        PathError::UnknownLabel(label.to_string())
                    }
                })?;
            darts.push(d);
            v = x.head(d);
        }
        Ok(Path { start, darts })
    }

    /// Parses a compact word over single-letter labels; an upper-case letter is
    /// the inverse of its lower-case edge.
    pub fn parse_letters(x: &CubeComplex, start: usize, word: &str) -> Result<Path, PathError> {
        let mut darts = Vec::new();
        let mut v = start;
        for ch in word.chars() {
            let lower = ch.to_lowercase().to_string();
            let rev = ch.is_uppercase();
            let d = x
                .out_darts(v)
                .iter()
                .copied()
                .find(|d| d.rev == rev && x.edge_label(d.edge) == lower)
                .ok_or_else(|| PathError::UnknownLabel(ch.to_string()))?;
            darts.push(d);
            v = x.head(d);
        }
        Ok(Path { start, darts })
    }

    pub fn display<'a>(&'a self, x: &'a CubeComplex) -> PathDisplay<'a> {
        PathDisplay { path: self, x }
    }

    /// Compact letter form; only meaningful for single-letter labels.
    pub fn letters(&self, x: &CubeComplex) -> String {
        self.darts
            .iter()
            .map(|d| {
                let l = x.edge_label(d.edge);
                if d.rev {
                    l.to_uppercase()
                } else {
                    l.to_string()
                }
            })
            .collect()
    }
}

pub fn free_reduce(darts: &[Dart]) -> Vec<Dart> {
    let mut out: Vec<Dart> = Vec::with_capacity(darts.len());
    for d in darts {
        if out.last() == Some(&d.inverse()) {
            out.pop();
        } else {
            out.push(*d);
        }
    }
    out
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    x: &'a CubeComplex,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.darts.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.path.darts.iter().map(|d| self.x.dart_label(*d)).collect();
        write!(f, "{}", parts.join("."))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::ComplexBuilder;

    fn wedge() -> CubeComplex {
        let mut b = ComplexBuilder::new();
        let v = b.add_vertex("v");
        b.add_edge("a", v, v);
        b.add_edge("b", v, v);
        b.build().unwrap()
    }

    #[test]
    fn parse_and_print() {
        let x = wedge();
        let p = Path::parse(&x, 0, "a.b^-1.a").unwrap();
        assert_eq!(p.display(&x).to_string(), "a.b^-1.a");
        assert_eq!(p.letters(&x), "aBa");
        let q = Path::parse_letters(&x, 0, "aBa").unwrap();
        assert_eq!(p, q);
        assert!(Path::parse(&x, 0, "c").is_err());
    }

    #[test]
    fn backtracks_cancel() {
        let x = wedge();
        let p = Path::parse_letters(&x, 0, "abBA").unwrap();
        assert!(p.free_reduce().is_empty());
        let p = Path::parse_letters(&x, 0, "abAB").unwrap();
        assert_eq!(p.free_reduce().len(), 4);
    }
}
