//! Ordered families of forbidden patterns.

use std::fmt;

use crate::chromatic::chromatic_number;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;
use crate::standard::{complete, cycle, wheel};

/// A forbidden pattern with its display token and chromatic number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub name: String,
    pub graph: Graph,
    pub chi: usize,
}

impl Pattern {
    pub fn new(name: impl Into<String>, graph: Graph) -> Self {
        let chi = chromatic_number(&graph);
        Pattern {
            name: name.into(),
            graph,
            chi,
        }
    }

    /// Parses one token of the family mini-language:
    /// `wN` wheel of order N, `kN` complete, `cN` cycle, `g6:<graph6>`.
    pub fn parse(token: &str) -> Result<Self> {
        let token = token.trim();
        if let Some(text) = token.strip_prefix("g6:") {
            return Ok(Pattern::new(token, graph6::decode(text)?));
        }
        let unknown = || Error::UnknownPattern(token.to_string());
        let mut chars = token.chars();
        let kind = chars.next().ok_or_else(unknown)?.to_ascii_lowercase();
        let order: usize = chars.as_str().parse().map_err(|_| unknown())?;
        let graph = match kind {
            'w' if order >= 4 => wheel(order),
            'k' if order >= 1 => complete(order),
            'c' if order >= 3 => cycle(order),
            'w' | 'k' | 'c' => {
                return Err(Error::InvalidSpec(format!("`{token}`: order {order} too small")))
            }
            _ => return Err(unknown()),
        };
        Ok(Pattern::new(token.to_ascii_lowercase(), graph))
    }
}

/// Ordered list `F_1, ..., F_h` of forbidden patterns, `h >= 1`.
///
/// The order matters for the properly-ordered condition and for the
/// per-index terms of the union formula; containment decisions do not
/// depend on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddenFamily {
    patterns: Vec<Pattern>,
}

impl ForbiddenFamily {
    pub fn new(patterns: Vec<Pattern>) -> Result<Self> {
        if patterns.is_empty() {
            return Err(Error::InvalidArgument("family needs at least one pattern".into()));
        }
        Ok(ForbiddenFamily { patterns })
    }

    pub fn from_graphs(graphs: Vec<Graph>) -> Result<Self> {
        let patterns = graphs
            .into_iter()
            .map(|g| Pattern::new(format!("g6:{}", graph6::encode(&g)), g))
            .collect();
        Self::new(patterns)
    }

    /// Comma-separated tokens, e.g. `"w7,w5"` or `"k3,g6:Bw"`.
    pub fn parse(spec: &str) -> Result<Self> {
        let patterns = spec
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(Pattern::parse)
            .collect::<Result<Vec<_>>>()?;
        Self::new(patterns)
    }

    pub fn single(pattern: Pattern) -> Self {
        ForbiddenFamily {
            patterns: vec![pattern],
        }
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn graphs(&self) -> impl Iterator<Item = &Graph> {
        self.patterns.iter().map(|p| &p.graph)
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `t = Σ |F_i|`.
    pub fn total_order(&self) -> usize {
        self.patterns.iter().map(|p| p.graph.n()).sum()
    }

    pub fn min_chi(&self) -> usize {
        self.patterns.iter().map(|p| p.chi).min().unwrap()
    }

    /// The prefix `F_1..F_len`.
    pub fn prefix(&self, len: usize) -> ForbiddenFamily {
        ForbiddenFamily {
            patterns: self.patterns[..len].to_vec(),
        }
    }

    /// The family `{F_index}` alone.
    pub fn member(&self, index: usize) -> ForbiddenFamily {
        ForbiddenFamily::single(self.patterns[index].clone())
    }

    pub fn tokens(&self) -> Vec<String> {
        self.patterns.iter().map(|p| p.name.clone()).collect()
    }
}

impl fmt::Display for ForbiddenFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tokens().join(","))
    }
}
