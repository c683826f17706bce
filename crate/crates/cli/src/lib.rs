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

//! Command-line front end: graph generators, colorings, verification and
//! search over the text formats in [`format`].

pub mod format;

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pconn::constructs::{
    build_gd, build_mod3, build_mod3_random, complete, cycle, random_min_two_connected,
    random_two_connected, GdParameters,
};
use pconn::ears::{
    longest_first_ear_decomposition, open_ear_decomposition, validate_structural_claims,
};
use pconn::spc::{color_mod3, color_spc5};
use pconn::trees::{two_tree_color, two_tree_witnesses};
use pconn::verify::{
    anneal, exact_connection_number_capped, verify_connected_coloring, verify_witness_set,
    DEFAULT_EXACT_EDGE_CAP,
};
use pconn::{Color, EdgeColoring, Graph, Property};
use thiserror::Error;

use crate::format::{
    parse_coloring, parse_graph, parse_witnesses, write_coloring, write_graph, write_witnesses,
    FormatError,
};

#[derive(Debug, Error)]
pub enum CliError {
    /// Exit 1: the answer is negative.
    #[error("{0}")]
    Negative(String),
    /// Exit 2: unreadable or malformed input.
    #[error("{0}")]
    Malformed(String),
    /// Exit 3: the input is well-formed but violates a precondition.
    #[error("{0}")]
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Negative(_) => 1,
            CliError::Malformed(_) => 2,
            CliError::Precondition(_) => 3,
        }
    }
}

impl From<pconn::Error> for CliError {
    fn from(e: pconn::Error) -> Self {
        use pconn::Error::*;
        match e {
            InvalidGraph(_) | InvalidParameter(_) | ColoringMismatch(_) => {
                CliError::Malformed(e.to_string())
            }
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

fn malformed(source: &str) -> impl Fn(FormatError) -> CliError + '_ {
    move |e| CliError::Malformed(format!("{source}: {e}"))
}

#[derive(Debug, Parser)]
#[command(name = "pconn", version, about = "Pattern-connected edge colorings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a graph file.
    #[command(subcommand)]
    Gen(GenCommand),
    /// List an open ear decomposition.
    Ears {
        #[command(flatten)]
        input: InputArg,
        /// Longest ear first; needs a minimally 2-connected graph.
        #[arg(long)]
        longest_first: bool,
        /// Check the ordering and attachment properties of the decomposition.
        #[arg(long)]
        validate_claims: bool,
    },
    /// Build a coloring.
    Color {
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long, default_value = "strong")]
        property: Property,
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value = "-")]
        output: String,
        /// Witness file for `twotree`; defaults to `<output>.witnesses`.
        #[arg(long)]
        witnesses: Option<PathBuf>,
    },
    /// Check that every vertex pair is joined by a valid path.
    Verify {
        /// Graph file; rebuilt from the coloring when omitted.
        #[arg(long)]
        input: Option<String>,
        #[arg(long, default_value = "-")]
        coloring: String,
        /// Defaults to the property named in the coloring file.
        #[arg(long)]
        property: Option<Property>,
        /// Check this witness file instead of searching for paths.
        #[arg(long)]
        witnesses: Option<String>,
    },
    /// Least number of colors admitting a connected coloring, by exhaustion.
    Exact {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value = "strong")]
        property: Property,
        #[arg(long, default_value_t = 5)]
        kmax: Color,
        #[arg(long, default_value_t = DEFAULT_EXACT_EDGE_CAP)]
        cap: usize,
    },
    /// Simulated-annealing search for a connected coloring with k colors.
    Search {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value = "strong")]
        property: Property,
        #[arg(long)]
        k: Color,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Graphviz DOT output, edges labeled and colored by the coloring.
    ExportDot {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        coloring: Option<String>,
    },
}

#[derive(Debug, Args)]
pub struct InputArg {
    /// Graph file, `-` for standard input.
    #[arg(long, default_value = "-")]
    pub input: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Spc5,
    Mod3,
    Twotree,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// The girth family: three bridges and six connecting paths.
    Gd {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        /// Target girth; needs 3a and 3b at least this large.
        #[arg(long, default_value_t = 3)]
        girth: usize,
    },
    /// Subdivide each edge of a base graph into a path of 3 x factor edges.
    Mod3 {
        #[command(flatten)]
        input: InputArg,
        /// Comma-separated factor per base edge; all 1 by default.
        #[arg(long, value_delimiter = ',', conflicts_with = "max_factor")]
        factors: Option<Vec<usize>>,
        /// Draw each factor uniformly from 1..=max-factor.
        #[arg(long)]
        max_factor: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random Hamiltonian cycle plus random chords.
    Random2c {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        extra: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// As `random2c`, reduced to a minimally 2-connected spanning subgraph.
    Randmin2c {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        extra: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The cycle on n vertices
    Cycle {
        #[arg(long)]
        n: usize,
    },
    /// The complete graph on n vertices
    Complete {
        #[arg(long)]
        n: usize,
    },
}

/// Reads named inputs, standard input at most once.
struct Inputs<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl Inputs<'_> {
    fn text(&mut self, path: &str) -> Result<String, CliError> {
        if path == "-" {
            if std::mem::replace(&mut self.stdin_used, true) {
                return Err(CliError::Malformed("standard input named twice".into()));
            }
            let mut text = String::new();
            self.stdin
                .read_to_string(&mut text)
                .map_err(|e| CliError::Malformed(format!("standard input: {e}")))?;
            Ok(text)
        } else {
            fs::read_to_string(path).map_err(|e| CliError::Malformed(format!("{path}: {e}")))
        }
    }

    fn graph(&mut self, path: &str) -> Result<Graph, CliError> {
        let text = self.text(path)?;
        Ok(parse_graph(&text).map_err(malformed(path))?.graph)
    }
}

fn write_file(path: &str, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    if path == "-" {
        stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Malformed(format!("standard output: {e}")))
    } else {
        fs::write(path, text).map_err(|e| CliError::Malformed(format!("{path}: {e}")))
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut inputs = Inputs {
        stdin,
        stdin_used: false,
    };
    match execute(cli.command, &mut inputs, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "pconn: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command, inputs: &mut Inputs, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Gen(gen) => {
            let text = generate(gen, inputs)?;
            write_file("-", &text, out)
        }
        Command::Ears {
            input,
            longest_first,
            validate_claims,
        } => {
            let g = inputs.graph(&input.input)?;
            let ed = if longest_first {
                longest_first_ear_decomposition(&g)?
            } else {
                open_ear_decomposition(&g)?
            };
            let mut text = format!("ears {}\n", ed.ears.len());
            for (i, ear) in ed.ears.iter().enumerate() {
                let kind = if ear.is_cycle { "cycle" } else { "path" };
                let vertices: Vec<String> =
                    ear.vertices.iter().map(|v| (v + 1).to_string()).collect();
                text += &format!(
                    "ear {} {kind} length {} : {}\n",
                    i + 1,
                    ear.len(),
                    vertices.join(" ")
                );
            }
            let mut failed = false;
            if validate_claims {
                let report = validate_structural_claims(&ed);
                for (name, ok) in [
                    ("non-increasing-lengths", report.ordering),
                    ("endpoints-nonadjacent", report.endpoints_nonadjacent),
                    (
                        "equal-short-ears-disjoint",
                        report.equal_short_ears_disjoint,
                    ),
                    ("short-ear-touching", report.short_ear_touching),
                ] {
                    text += &format!("check {name} {}\n", if ok { "pass" } else { "fail" });
                }
                for f in &report.failures {
                    text += &format!("c {f}\n");
                }
                failed = !report.all_passed();
            }
            write_file("-", &text, out)?;
            if failed {
                return Err(CliError::Negative(
                    "decomposition fails a structural check".into(),
                ));
            }
            Ok(())
        }
        Command::Color {
            method,
            property,
            input,
            output,
            witnesses,
        } => {
            let g = inputs.graph(&input.input)?;
            let coloring = match method {
                Method::Spc5 | Method::Mod3 => {
                    if property == Property::Nonrepetitive {
                        return Err(CliError::Malformed(format!(
                            "method {method:?} builds strongly proper colorings, not {property}"
                        )));
                    }
                    if method == Method::Spc5 {
                        color_spc5(&g)?.0
                    } else {
                        color_mod3(&g)?.0
                    }
                }
                Method::Twotree => {
                    let (c, pair) = two_tree_color(&g, &property)?;
                    let w = two_tree_witnesses(&g, &c, &pair)?;
                    let path = witnesses.or_else(|| {
                        (output != "-").then(|| PathBuf::from(format!("{output}.witnesses")))
                    });
                    if let Some(path) = path {
                        fs::write(&path, write_witnesses(&w))
                            .map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))?;
                    }
                    c
                }
            };
            write_file(
                &output,
                &write_coloring(&g, &coloring, property.as_str()),
                out,
            )
        }
        Command::Verify {
            input,
            coloring,
            property,
            witnesses,
        } => {
            let given = input.map(|path| inputs.graph(&path)).transpose()?;
            let text = inputs.text(&coloring)?;
            let file = parse_coloring(&text).map_err(malformed(&coloring))?;
            let g = match given {
                Some(g) => g,
                None => file.graph().map_err(malformed(&coloring))?,
            };
            let c = file.coloring_for(&g).map_err(malformed(&coloring))?;
            let property = match property {
                Some(p) => p,
                None => Property::from_str(&file.property)
                    .map_err(|e| CliError::Malformed(format!("{coloring}: {e}")))?,
            };
            if let Some(path) = witnesses {
                let text = inputs.text(&path)?;
                let w = parse_witnesses(&text, g.vertex_count()).map_err(malformed(&path))?;
                return match verify_witness_set(&g, &c, &w, &property) {
                    Ok(()) => write_file("-", &format!("witnesses valid ({property})\n"), out),
                    Err(d) => Err(CliError::Negative(format!(
                        "witness for ({}, {}) rejected: {}",
                        d.pair.0 + 1,
                        d.pair.1 + 1,
                        d.reason
                    ))),
                };
            }
            let result = verify_connected_coloring(&g, &c, &property)?;
            if result.connected {
                return write_file("-", &format!("connected ({property})\n"), out);
            }
            let mut text = format!(
                "not connected ({property}): {} failing pairs\n",
                result.failing_pairs.len()
            );
            for (u, v) in &result.failing_pairs {
                text += &format!("fail {} {}\n", u + 1, v + 1);
            }
            write_file("-", &text, out)?;
            Err(CliError::Negative(format!(
                "{} pairs have no valid path",
                result.failing_pairs.len()
            )))
        }
        Command::Exact {
            input,
            property,
            kmax,
            cap,
        } => {
            let g = inputs.graph(&input.input)?;
            match exact_connection_number_capped(&g, &property, kmax, cap)? {
                Some(k) => write_file("-", &format!("{k}\n"), out),
                None => {
                    write_file("-", "none\n", out)?;
                    Err(CliError::Negative(format!(
                        "no connected coloring with at most {kmax} colors"
                    )))
                }
            }
        }
        Command::Search {
            input,
            property,
            k,
            budget,
            seed,
        } => {
            let g = inputs.graph(&input.input)?;
            if k == 0 {
                return Err(CliError::Malformed("k must be positive".into()));
            }
            let outcome = anneal(&g, &property, k, budget, seed);
            match outcome.coloring {
                Some(c) => write_file("-", &write_coloring(&g, &c, property.as_str()), out),
                None => {
                    write_file("-", "none\n", out)?;
                    Err(CliError::Negative(format!(
                        "no coloring found in {} moves; fewest failing pairs {}",
                        outcome.moves, outcome.best_failing_pairs
                    )))
                }
            }
        }
        Command::ExportDot { input, coloring } => {
            let g = inputs.graph(&input.input)?;
            let c = match coloring {
                Some(path) => {
                    let text = inputs.text(&path)?;
                    Some(
                        parse_coloring(&text)
                            .map_err(malformed(&path))?
                            .coloring_for(&g)
                            .map_err(malformed(&path))?,
                    )
                }
                None => None,
            };
            write_file("-", &dot(&g, c.as_ref()), out)
        }
    }
}

fn generate(gen: GenCommand, inputs: &mut Inputs) -> Result<String, CliError> {
    let (g, comments) = match gen {
        GenCommand::Gd { a, b, girth } => {
            let gd = build_gd(GdParameters::new(a, b, girth)?)?;
            let mut comments = vec![format!("gd a={a} b={b} girth={girth}")];
            comments.extend(
                gd.labels()
                    .into_iter()
                    .map(|(name, v)| format!("terminal {name} {}", v + 1)),
            );
            (gd.graph, comments)
        }
        GenCommand::Mod3 {
            input,
            factors,
            max_factor,
            seed,
        } => {
            let base = inputs.graph(&input.input)?;
            let g = match (factors, max_factor) {
                (Some(f), _) => build_mod3(&base, &f)?,
                (None, Some(max)) => build_mod3_random(&base, max, seed)?,
                (None, None) => build_mod3(&base, &vec![1; base.edge_count()])?,
            };
            (g, vec!["mod3 subdivision".to_string()])
        }
        GenCommand::Random2c { n, extra, seed } => (
            random_two_connected(n, extra, seed)?,
            vec![format!("random2c n={n} extra={extra} seed={seed}")],
        ),
        GenCommand::Randmin2c { n, extra, seed } => (
            random_min_two_connected(n, extra, seed)?,
            vec![format!("randmin2c n={n} extra={extra} seed={seed}")],
        ),
        GenCommand::Cycle { n } => {
            if n < 3 {
                return Err(CliError::Malformed(format!("cycle needs n >= 3, got {n}")));
            }
            (cycle(n), vec![format!("cycle n={n}")])
        }
        GenCommand::Complete { n } => {
            if n == 0 {
                return Err(CliError::Malformed("complete graph needs n >= 1".into()));
            }
            (complete(n), vec![format!("complete n={n}")])
        }
    };
    Ok(write_graph(&g, &comments))
}

const PALETTE: [&str; 8] = [
    "red", "blue", "green4", "orange", "purple", "brown", "magenta", "cyan3",
];

fn dot(g: &Graph, c: Option<&EdgeColoring>) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.vertex_count() {
        out += &format!("  {};\n", v + 1);
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        match c {
            Some(c) => {
                let color = c.color(e);
                let name = PALETTE[(color as usize - 1) % PALETTE.len()];
                out += &format!(
                    "  {} -- {} [label=\"{color}\", color=\"{name}\"];\n",
                    u + 1,
                    v + 1
                );
            }
            None => out += &format!("  {} -- {};\n", u + 1, v + 1),
        }
    }
    out += "}\n";
    out
}
