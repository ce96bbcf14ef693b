//! Versioned text format for finished roadmaps.
//!
//! ```text
//! BOLTSPAN 1 <d> <metric> <delta> <dense_delta> <stretch>
//! v <id> <c0> <c1> [...]
//! e <id1> <id2>
//! ```
//!
//! Coordinates are printed with 17 significant digits so that
//! save -> load -> save is byte-identical.

use std::path::Path;
use std::str::FromStr;

use crate::cspace::{Configuration, Metric};
use crate::error::{Error, Result};

use super::graph::{GraphMeta, SparseGraph, VertexId};

const MAGIC: &str = "BOLTSPAN";
const VERSION: u32 = 1;

fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn to_string(g: &SparseGraph) -> String {
    let m = g.meta();
    let mut out = String::new();
    out.push_str(&format!(
        "{MAGIC} {VERSION} {} {} {} {} {}\n",
        m.dimension,
        m.metric,
        fmt_f64(m.delta),
        fmt_f64(m.dense_delta),
        fmt_f64(m.stretch)
    ));
    for (id, cfg) in g.vertices() {
        out.push_str(&format!("v {id}"));
        for &c in cfg.coords() {
            out.push(' ');
            out.push_str(&fmt_f64(c));
        }
        out.push('\n');
    }
    for (a, b, _) in g.edges() {
        out.push_str(&format!("e {a} {b}\n"));
    }
    out
}

pub fn save(g: &SparseGraph, path: &Path) -> Result<()> {
    std::fs::write(path, to_string(g))?;
    Ok(())
}

pub fn from_string(text: &str) -> Result<SparseGraph> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Format("empty roadmap file".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 7 || fields[0] != MAGIC {
        return Err(Error::Format(format!("line 1: bad header `{header}`")));
    }
    let version: u32 = fields[1]
        .parse()
        .map_err(|_| Error::Format(format!("line 1: bad version `{}`", fields[1])))?;
    if version != VERSION {
        return Err(Error::Format(format!("unsupported roadmap version {version}")));
    }
    let parse_f = |s: &str, what: &str| -> Result<f64> {
        s.parse::<f64>()
            .map_err(|_| Error::Format(format!("line 1: bad {what} `{s}`")))
    };
    let dimension: usize = fields[2]
        .parse()
        .map_err(|_| Error::Format(format!("line 1: bad dimension `{}`", fields[2])))?;
    let meta = GraphMeta {
        dimension,
        metric: Metric::from_str(fields[3])?,
        delta: parse_f(fields[4], "delta")?,
        dense_delta: parse_f(fields[5], "dense_delta")?,
        stretch: parse_f(fields[6], "stretch")?,
    };
    if dimension == 0 || !(meta.delta > 0.0) || !(meta.dense_delta > 0.0) || !(meta.stretch >= 1.0)
    {
        return Err(Error::Format("line 1: header parameters out of range".into()));
    }

    let mut g = SparseGraph::new(meta);
    let mut edges: Vec<(usize, VertexId, VertexId)> = Vec::new();
    for (i, line) in lines {
        let lineno = i + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("v") => {
                let id: VertexId = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Format(format!("line {lineno}: bad vertex id")))?;
                if id as usize != g.vertex_count() {
                    return Err(Error::Format(format!(
                        "line {lineno}: vertex ids must be dense and in order (got {id}, expected {})",
                        g.vertex_count()
                    )));
                }
                let coords: std::result::Result<Vec<f64>, _> =
                    parts.map(|s| s.parse::<f64>()).collect();
                let coords = coords
                    .map_err(|_| Error::Format(format!("line {lineno}: bad coordinate")))?;
                if coords.len() != dimension {
                    return Err(Error::Format(format!(
                        "line {lineno}: expected {dimension} coordinates, found {}",
                        coords.len()
                    )));
                }
                g.add_vertex(Configuration::new(coords));
            }
            Some("e") => {
                let a: VertexId = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Format(format!("line {lineno}: bad edge")))?;
                let b: VertexId = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Format(format!("line {lineno}: bad edge")))?;
                if parts.next().is_some() {
                    return Err(Error::Format(format!("line {lineno}: trailing fields on edge")));
                }
                edges.push((lineno, a, b));
            }
            Some(tag) => {
                return Err(Error::Format(format!("line {lineno}: unknown record `{tag}`")));
            }
            None => {}
        }
    }
    let n = g.vertex_count() as VertexId;
    for (lineno, a, b) in edges {
        if a >= n || b >= n {
            return Err(Error::Format(format!("line {lineno}: edge endpoint out of range")));
        }
        if a == b {
            return Err(Error::Format(format!("line {lineno}: self-loop edge")));
        }
        if !g.add_edge(a, b) {
            return Err(Error::Format(format!("line {lineno}: duplicate edge {a}-{b}")));
        }
    }
    Ok(g)
}

pub fn load(path: &Path) -> Result<SparseGraph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    from_string(&text)
}
