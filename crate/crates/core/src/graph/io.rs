//! Line-oriented instance files.
//!
//! ```text
//! # comment
//! p ff <n> <m>
//! e <u> <v>
//! s <v>
//! x <v1> <v2> ...
//! c <class_tag>
//! k <int>
//! ```
//!
//! Ids in files are 1-based; everything in memory is 0-based.

use super::{recognize, ClassTag, Graph, Vertex};
use crate::error::{Error, Result};
use std::fmt::Write as _;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub source: Vertex,
    pub modulator: Option<Vec<Vertex>>,
    pub class_tag: Option<ClassTag>,
    pub demand: Option<usize>,
}

impl Instance {
    pub fn new(graph: Graph, source: Vertex) -> Self {
        Instance {
            graph,
            source,
            modulator: None,
            class_tag: None,
            demand: None,
        }
    }

    pub fn with_modulator(mut self, modulator: Vec<Vertex>, tag: ClassTag) -> Self {
        self.modulator = Some(modulator);
        self.class_tag = Some(tag);
        self
    }

    pub fn with_demand(mut self, k: usize) -> Self {
        self.demand = Some(k);
        self
    }

    /// The modulator, or the empty set when none was given.
    pub fn modulator_or_empty(&self) -> &[Vertex] {
        self.modulator.as_deref().unwrap_or(&[])
    }

    /// `Some(true)` when both a modulator and a class tag are present and
    /// `G ∖ X` is in the tagged class; `None` if either is missing.
    pub fn check_class(&self) -> Option<bool> {
        let (x, tag) = (self.modulator.as_ref()?, self.class_tag?);
        let removed = super::vertex_set(self.graph.n(), x.iter().copied());
        let (rest, _) = self.graph.without(&removed);
        Some(recognize(&rest, tag))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut graph: Option<Graph> = None;
        let mut source = None;
        let mut modulator = None;
        let mut class_tag = None;
        let mut demand = None;
        let mut declared_m = 0;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let raw = raw.trim();
            if raw.is_empty() || raw.starts_with('#') {
                continue;
            }
            let mut fields = raw.split_whitespace();
            let kind = fields.next().unwrap_or_default();
            let rest: Vec<&str> = fields.collect();
            let perr = |msg: String| Error::Parse { line, msg };
            let num = |tok: &str| -> Result<usize> {
                tok.parse::<usize>()
                    .map_err(|_| perr(format!("expected a non-negative integer, got {tok:?}")))
            };

            if kind != "p" && graph.is_none() {
                return Err(perr(format!("{kind:?} record before the header")));
            }
            match kind {
                "p" => {
                    if graph.is_some() {
                        return Err(perr("second header".into()));
                    }
                    if rest.len() != 3 || rest[0] != "ff" {
                        return Err(perr("header must be `p ff <n> <m>`".into()));
                    }
                    graph = Some(Graph::new(num(rest[1])?));
                    declared_m = num(rest[2])?;
                }
                "e" => {
                    if rest.len() != 2 {
                        return Err(perr("edge line must be `e <u> <v>`".into()));
                    }
                    let g = graph.as_mut().unwrap();
                    let u = file_id(num(rest[0])?, g.n())?;
                    let v = file_id(num(rest[1])?, g.n())?;
                    g.add_edge(u, v)?;
                }
                "s" => {
                    if rest.len() != 1 {
                        return Err(perr("source line must be `s <v>`".into()));
                    }
                    if source.is_some() {
                        return Err(perr("second source line".into()));
                    }
                    source = Some(file_id(num(rest[0])?, graph.as_ref().unwrap().n())?);
                }
                "x" => {
                    let n = graph.as_ref().unwrap().n();
                    let mut xs = Vec::with_capacity(rest.len());
                    for tok in &rest {
                        let v = file_id(num(tok)?, n)?;
                        if xs.contains(&v) {
                            return Err(perr(format!("vertex {} repeated in modulator", v + 1)));
                        }
                        xs.push(v);
                    }
                    modulator = Some(xs);
                }
                "c" => {
                    if rest.len() != 1 {
                        return Err(perr("class line must be `c <tag>`".into()));
                    }
                    class_tag = Some(rest[0].parse::<ClassTag>().map_err(perr)?);
                }
                "k" => {
                    if rest.len() != 1 {
                        return Err(perr("demand line must be `k <int>`".into()));
                    }
                    demand = Some(num(rest[0])?);
                }
                other => return Err(perr(format!("unknown record type {other:?}"))),
            }
        }

        let graph = graph.ok_or(Error::Parse {
            line: 0,
            msg: "missing header".into(),
        })?;
        if graph.m() != declared_m {
            return Err(Error::Parse {
                line: 0,
                msg: format!("header declares {declared_m} edges, found {}", graph.m()),
            });
        }
        Ok(Instance {
            graph,
            source: source.ok_or(Error::MissingSource)?,
            modulator,
            class_tag,
            demand,
        })
    }

    pub fn to_text(&self) -> String {
        let g = &self.graph;
        let mut out = String::new();
        writeln!(out, "p ff {} {}", g.n(), g.m()).unwrap();
        for (u, v) in g.edges() {
            writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
        }
        writeln!(out, "s {}", self.source + 1).unwrap();
        if let Some(x) = &self.modulator {
            out.push('x');
            for v in x {
                write!(out, " {}", v + 1).unwrap();
            }
            out.push('\n');
        }
        if let Some(tag) = self.class_tag {
            writeln!(out, "c {tag}").unwrap();
        }
        if let Some(k) = self.demand {
            writeln!(out, "k {k}").unwrap();
        }
        out
    }
}

fn file_id(id: usize, n: usize) -> Result<Vertex> {
    if id == 0 || id > n {
        Err(Error::VertexOutOfRange { vertex: id, n })
    } else {
        Ok(id - 1)
    }
}

impl FromStr for Instance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Instance::parse(s)
    }
}
