// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Text formats. Vertices are 1-indexed in files and 0-indexed in memory.
//!
//! Graph files are DIMACS-style:
//!
//! ```text
//! c comment
//! p edge <n> <m>
//! e <u> <v>
//! ```
//!
//! Coloring files start with `k <K> property <name>` and list one
//! `e <u> <v> <color>` line per edge. A `c vertices <n>` comment keeps the
//! vertex count so the graph can be rebuilt from the coloring alone.
//!
//! Witness files list one `w <u> <v> path <v1> ... <vr> colors <c1> ...`
//! line per ordered pair.

use std::collections::HashMap;
use std::fmt::Write as _;

use pconn::verify::{Witness, WitnessCertificate};
use pconn::{Color, EdgeColoring, Graph, VertexId};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError {
        line,
        message: message.into(),
    })
}

fn number<T: std::str::FromStr>(
    token: Option<&str>,
    line: usize,
    what: &str,
) -> Result<T, FormatError> {
    match token.map(str::parse) {
        Some(Ok(x)) => Ok(x),
        Some(Err(_)) => fail(line, format!("bad {what}")),
        None => fail(line, format!("missing {what}")),
    }
}

fn vertex(token: Option<&str>, n: usize, line: usize) -> Result<VertexId, FormatError> {
    let v: usize = number(token, line, "vertex")?;
    if v == 0 || v > n {
        return fail(line, format!("vertex {v} outside 1..={n}"));
    }
    Ok(v - 1)
}

/// Meaningful lines with their 1-based numbers, comments kept aside.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, t)| !t.is_empty())
}

/// A parsed graph file with its comment lines (without the `c `).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    pub comments: Vec<String>,
}

pub fn parse_graph(text: &str) -> Result<GraphFile, FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut comments = Vec::new();
    let mut last = 0;
    for (line, tokens) in lines(text) {
        last = line;
        match tokens[0] {
            "c" => comments.push(tokens[1..].join(" ")),
            "p" => {
                if header.is_some() {
                    return fail(line, "second header");
                }
                if tokens.get(1) != Some(&"edge") || tokens.len() != 4 {
                    return fail(line, "expected `p edge <n> <m>`");
                }
                let n: usize = number(tokens.get(2).copied(), line, "vertex count")?;
                let m: usize = number(tokens.get(3).copied(), line, "edge count")?;
                if n == 0 {
                    return fail(line, "graph needs at least one vertex");
                }
                header = Some((n, m));
            }
            "e" => {
                let Some((n, _)) = header else {
                    return fail(line, "edge before header");
                };
                if tokens.len() != 3 {
                    return fail(line, "expected `e <u> <v>`");
                }
                let u = vertex(tokens.get(1).copied(), n, line)?;
                let v = vertex(tokens.get(2).copied(), n, line)?;
                edges.push((line, u, v));
            }
            other => return fail(line, format!("unknown line type `{other}`")),
        }
    }
    let Some((n, m)) = header else {
        return fail(last, "missing `p edge` header");
    };
    if edges.len() != m {
        return fail(
            last,
            format!("header declares {m} edges, found {}", edges.len()),
        );
    }
    let mut graph = Graph::new(n);
    for (line, u, v) in edges {
        if let Err(e) = graph.add_edge(u, v) {
            return fail(line, e.to_string());
        }
    }
    Ok(GraphFile { graph, comments })
}

pub fn write_graph(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        writeln!(out, "c {c}").unwrap();
    }
    writeln!(out, "p edge {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

/// A coloring file before it is matched against a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringFile {
    pub k: Color,
    pub property: String,
    pub vertex_count: Option<usize>,
    /// `(u, v, color)` with 0-indexed vertices, in file order.
    pub edges: Vec<(VertexId, VertexId, Color)>,
}

impl ColoringFile {
    /// The graph spanned by the listed edges, in file order.
    pub fn graph(&self) -> Result<Graph, FormatError> {
        let max_vertex = self
            .edges
            .iter()
            .map(|&(u, v, _)| u.max(v) + 1)
            .max()
            .unwrap_or(1);
        let n = self.vertex_count.unwrap_or(max_vertex);
        if n < max_vertex {
            return fail(0, format!("edge endpoint beyond {n} vertices"));
        }
        let mut g = Graph::new(n);
        for &(u, v, _) in &self.edges {
            g.add_edge(u, v).map_err(|e| FormatError {
                line: 0,
                message: e.to_string(),
            })?;
        }
        Ok(g)
    }

    /// The coloring indexed by `g`'s edge ids; the file must list exactly
    /// the edges of `g`.
    pub fn coloring_for(&self, g: &Graph) -> Result<EdgeColoring, FormatError> {
        let mut colors: Vec<Option<Color>> = vec![None; g.edge_count()];
        for &(u, v, c) in &self.edges {
            let Some(e) = (u < g.vertex_count() && v < g.vertex_count())
                .then(|| g.edge_between(u, v))
                .flatten()
            else {
                return fail(0, format!("edge {} {} is not in the graph", u + 1, v + 1));
            };
            if colors[e].replace(c).is_some() {
                return fail(0, format!("edge {} {} colored twice", u + 1, v + 1));
            }
        }
        if let Some(e) = colors.iter().position(Option::is_none) {
            let (u, v) = g.endpoints(e);
            return fail(0, format!("edge {} {} has no color", u + 1, v + 1));
        }
        EdgeColoring::new(colors.into_iter().map(Option::unwrap).collect(), self.k).map_err(|e| {
            FormatError {
                line: 0,
                message: e.to_string(),
            }
        })
    }
}

pub fn parse_coloring(text: &str) -> Result<ColoringFile, FormatError> {
    let mut header: Option<(Color, String)> = None;
    let mut vertex_count = None;
    let mut edges = Vec::new();
    let mut last = 0;
    for (line, tokens) in lines(text) {
        last = line;
        match tokens[0] {
            "c" => {
                if tokens.get(1) == Some(&"vertices") {
                    let n: usize = number(tokens.get(2).copied(), line, "vertex count")?;
                    vertex_count = Some(n);
                }
            }
            "k" => {
                if header.is_some() {
                    return fail(line, "second header");
                }
                if tokens.len() != 4 || tokens[2] != "property" {
                    return fail(line, "expected `k <K> property <name>`");
                }
                let k: Color = number(tokens.get(1).copied(), line, "color count")?;
                if k == 0 {
                    return fail(line, "color count must be positive");
                }
                header = Some((k, tokens[3].to_string()));
            }
            "e" => {
                let Some((k, _)) = &header else {
                    return fail(line, "edge before header");
                };
                if tokens.len() != 4 {
                    return fail(line, "expected `e <u> <v> <color>`");
                }
                let bound = vertex_count.unwrap_or(usize::MAX);
                let u = vertex(tokens.get(1).copied(), bound, line)?;
                let v = vertex(tokens.get(2).copied(), bound, line)?;
                let c: Color = number(tokens.get(3).copied(), line, "color")?;
                if c == 0 || c > *k {
                    return fail(line, format!("color {c} outside 1..={k}"));
                }
                edges.push((u, v, c));
            }
            other => return fail(line, format!("unknown line type `{other}`")),
        }
    }
    let Some((k, property)) = header else {
        return fail(last, "missing `k <K> property <name>` header");
    };
    Ok(ColoringFile {
        k,
        property,
        vertex_count,
        edges,
    })
}

pub fn write_coloring(g: &Graph, c: &EdgeColoring, property: &str) -> String {
    let mut out = String::new();
    writeln!(out, "k {} property {property}", c.k()).unwrap();
    writeln!(out, "c vertices {}", g.vertex_count()).unwrap();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        writeln!(out, "e {} {} {}", u + 1, v + 1, c.color(e)).unwrap();
    }
    out
}

pub fn write_witnesses(w: &WitnessCertificate) -> String {
    let mut out = String::new();
    for wit in &w.witnesses {
        let path: Vec<String> = wit.path.iter().map(|v| (v + 1).to_string()).collect();
        let colors: Vec<String> = wit.colors.iter().map(Color::to_string).collect();
        writeln!(
            out,
            "w {} {} path {} colors {}",
            wit.from + 1,
            wit.to + 1,
            path.join(" "),
            colors.join(" ")
        )
        .unwrap();
    }
    out
}

pub fn parse_witnesses(text: &str, n: usize) -> Result<WitnessCertificate, FormatError> {
    let mut witnesses = Vec::new();
    let mut seen: HashMap<(VertexId, VertexId), usize> = HashMap::new();
    for (line, tokens) in lines(text) {
        match tokens[0] {
            "c" => continue,
            "w" => {}
            other => return fail(line, format!("unknown line type `{other}`")),
        }
        let from = vertex(tokens.get(1).copied(), n, line)?;
        let to = vertex(tokens.get(2).copied(), n, line)?;
        if tokens.get(3) != Some(&"path") {
            return fail(line, "expected `path`");
        }
        let Some(split) = tokens.iter().position(|&t| t == "colors") else {
            return fail(line, "expected `colors`");
        };
        let path = tokens[4..split]
            .iter()
            .map(|&t| vertex(Some(t), n, line))
            .collect::<Result<Vec<_>, _>>()?;
        let colors = tokens[split + 1..]
            .iter()
            .map(|&t| number(Some(t), line, "color"))
            .collect::<Result<Vec<Color>, _>>()?;
        if let Some(prev) = seen.insert((from, to), line) {
            return fail(line, format!("pair already listed on line {prev}"));
        }
        witnesses.push(Witness {
            from,
            to,
            path,
            colors,
        });
    }
    Ok(WitnessCertificate { witnesses })
}
