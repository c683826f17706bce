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

//! Property-constrained path search, whole-graph verification, an exact
//! brute-force connection number, and a simulated-annealing search used to
//! collect evidence where exhaustive search is out of reach.
//!
//! All searches walk simple paths depth-first and cut a branch as soon as
//! its color sequence stops satisfying the property. This is sound for any
//! property closed under taking blocks, since such a property is closed
//! under taking prefixes.

use std::collections::{HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{is_connected, Color, EdgeColoring, EdgeId, Graph, VertexId};
use crate::words::SequenceProperty;

/// Default edge cap for [`exact_connection_number`].
pub const DEFAULT_EXACT_EDGE_CAP: usize = 14;

/// A path certifying that `from` and `to` are joined validly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub from: VertexId,
    pub to: VertexId,
    pub path: Vec<VertexId>,
    pub colors: Vec<Color>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WitnessCertificate {
    pub witnesses: Vec<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationResult {
    pub connected: bool,
    pub witnesses: WitnessCertificate,
    pub failing_pairs: Vec<(VertexId, VertexId)>,
}

/// Why a witness set was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessDefect {
    pub pair: (VertexId, VertexId),
    pub reason: String,
}

/// Vertex pairs that must be joined: unordered when the property is closed
/// under reversal, ordered otherwise.
fn required_pairs<P: SequenceProperty + ?Sized>(n: usize, p: &P) -> Vec<(VertexId, VertexId)> {
    let symmetric = p.reversal_closed();
    (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| if symmetric { u < v } else { u != v })
        .collect()
}

/// Necessary condition for properties decided by a bounded window: a valid
/// walk (vertices may repeat) from `u` to `v` exists.
pub fn valid_walk_exists<P: SequenceProperty + ?Sized>(
    g: &Graph,
    c: &EdgeColoring,
    u: VertexId,
    v: VertexId,
    p: &P,
) -> Option<bool> {
    let w = p.window()?;
    let mut seen: HashSet<(VertexId, Vec<Color>)> = HashSet::new();
    let start = (u, Vec::new());
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    let mut probe = Vec::with_capacity(w + 1);
    while let Some((x, tail)) = queue.pop_front() {
        for &(y, e) in g.neighbors(x) {
            probe.clear();
            probe.extend_from_slice(&tail);
            probe.push(c.color(e));
            if !p.is_valid(&probe) {
                continue;
            }
            if y == v {
                return Some(true);
            }
            let keep = probe.len().saturating_sub(w);
            let state = (y, probe[keep..].to_vec());
            if seen.insert(state.clone()) {
                queue.push_back(state);
            }
        }
    }
    Some(false)
}

struct PathSearch<'a, P: SequenceProperty + ?Sized> {
    g: &'a Graph,
    c: &'a EdgeColoring,
    p: &'a P,
    on_path: Vec<bool>,
    path: Vec<VertexId>,
    seq: Vec<Color>,
}

impl<'a, P: SequenceProperty + ?Sized> PathSearch<'a, P> {
    fn new(g: &'a Graph, c: &'a EdgeColoring, p: &'a P) -> Self {
        PathSearch {
            g,
            c,
            p,
            on_path: vec![false; g.vertex_count()],
            path: Vec::new(),
            seq: Vec::new(),
        }
    }

    fn reach_target(&mut self, x: VertexId, target: VertexId) -> bool {
        for &(y, e) in self.g.neighbors(x) {
            if self.on_path[y] {
                continue;
            }
            self.seq.push(self.c.color(e));
            if self.p.extends_valid(&self.seq) {
                self.path.push(y);
                if y == target {
                    return true;
                }
                self.on_path[y] = true;
                if self.reach_target(y, target) {
                    return true;
                }
                self.on_path[y] = false;
                self.path.pop();
            }
            self.seq.pop();
        }
        false
    }
}

/// A simple `u`-`v` path whose color sequence satisfies `p`, or `None` if
/// none exists (the search is exhaustive).
pub fn exists_valid_path<P: SequenceProperty + ?Sized>(
    g: &Graph,
    c: &EdgeColoring,
    u: VertexId,
    v: VertexId,
    p: &P,
) -> Option<Vec<VertexId>> {
    if u == v {
        return Some(vec![u]);
    }
    if valid_walk_exists(g, c, u, v, p) == Some(false) {
        return None;
    }
    let mut search = PathSearch::new(g, c, p);
    search.on_path[u] = true;
    search.path.push(u);
    search.reach_target(u, v).then_some(search.path)
}

/// Checks every required pair with [`exists_valid_path`].
pub fn verify_connected_coloring<P: SequenceProperty + ?Sized>(
    g: &Graph,
    c: &EdgeColoring,
    p: &P,
) -> Result<VerificationResult> {
    c.covers(g)?;
    let mut witnesses = Vec::new();
    let mut failing_pairs = Vec::new();
    for (u, v) in required_pairs(g.vertex_count(), p) {
        match exists_valid_path(g, c, u, v, p) {
            Some(path) => {
                let colors = c.sequence_along(g, &path).expect("search follows edges");
                witnesses.push(Witness {
                    from: u,
                    to: v,
                    path,
                    colors,
                });
            }
            None => failing_pairs.push((u, v)),
        }
    }
    Ok(VerificationResult {
        connected: failing_pairs.is_empty(),
        witnesses: WitnessCertificate { witnesses },
        failing_pairs,
    })
}

/// Checks that `w` holds, for every ordered pair, a simple path of `g` whose
/// recorded colors match `c` and satisfy `p`. A reversed witness may stand
/// in for a missing pair when `p` is closed under reversal.
pub fn verify_witness_set<P: SequenceProperty + ?Sized>(
    g: &Graph,
    c: &EdgeColoring,
    w: &WitnessCertificate,
    p: &P,
) -> std::result::Result<(), WitnessDefect> {
    let n = g.vertex_count();
    let mut covered = vec![vec![false; n]; n];
    for wit in &w.witnesses {
        let defect = |reason: &str| WitnessDefect {
            pair: (wit.from, wit.to),
            reason: reason.to_string(),
        };
        if wit.path.first() != Some(&wit.from) || wit.path.last() != Some(&wit.to) {
            return Err(defect("path endpoints do not match the pair"));
        }
        if wit.path.iter().any(|&x| x >= n) {
            return Err(defect("vertex out of range"));
        }
        let mut seen = vec![false; n];
        if wit
            .path
            .iter()
            .any(|&x| std::mem::replace(&mut seen[x], true))
        {
            return Err(defect("path repeats a vertex"));
        }
        match c.sequence_along(g, &wit.path) {
            None => return Err(defect("path uses a non-edge")),
            Some(colors) if colors != wit.colors => {
                return Err(defect("recorded colors disagree with the coloring"))
            }
            Some(_) => {}
        }
        if !p.is_valid(&wit.colors) {
            return Err(defect("color sequence violates the property"));
        }
        covered[wit.from][wit.to] = true;
    }
    let missing = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .find(|&(u, v)| u != v && !covered[u][v] && !(p.reversal_closed() && covered[v][u]));
    match missing {
        Some(pair) => Err(WitnessDefect {
            pair,
            reason: "no witness for this pair".into(),
        }),
        None => Ok(()),
    }
}

/// Per-source reachability by valid simple paths. Each source keeps the
/// set of edges its search consulted, so a recolor only re-runs the
/// sources that looked at the recolored edge.
struct PairTable<'a, P: SequenceProperty + ?Sized> {
    g: &'a Graph,
    p: &'a P,
    symmetric: bool,
    missing: Vec<usize>,
    depends: Vec<Vec<u64>>,
    on_path: Vec<bool>,
    reached: Vec<bool>,
    seq: Vec<Color>,
}

impl<'a, P: SequenceProperty + ?Sized> PairTable<'a, P> {
    fn new(g: &'a Graph, p: &'a P) -> Self {
        let n = g.vertex_count();
        let words = g.edge_count().div_ceil(64);
        PairTable {
            g,
            p,
            symmetric: p.reversal_closed(),
            missing: vec![0; n],
            depends: vec![vec![0; words]; n],
            on_path: vec![false; n],
            reached: vec![false; n],
            seq: Vec::with_capacity(n),
        }
    }

    fn depends_on(&self, u: VertexId, e: EdgeId) -> bool {
        self.depends[u][e / 64] >> (e % 64) & 1 == 1
    }

    fn refresh(&mut self, c: &EdgeColoring, u: VertexId) {
        let n = self.g.vertex_count();
        self.reached.fill(false);
        self.depends[u].fill(0);
        let mut missing = if self.symmetric { n - 1 - u } else { n - 1 };
        self.on_path[u] = true;
        self.sweep(c, u, u, &mut missing);
        self.on_path[u] = false;
        self.missing[u] = missing;
    }

    /// Marks every wanted vertex reachable by a valid simple path, stopping
    /// once none is missing.
    fn sweep(&mut self, c: &EdgeColoring, src: VertexId, x: VertexId, missing: &mut usize) {
        let g = self.g;
        for &(y, e) in g.neighbors(x) {
            if *missing == 0 {
                return;
            }
            if self.on_path[y] {
                continue;
            }
            self.depends[src][e / 64] |= 1 << (e % 64);
            self.seq.push(c.color(e));
            if self.p.extends_valid(&self.seq) {
                let wanted = if self.symmetric { y > src } else { y != src };
                if wanted && !self.reached[y] {
                    self.reached[y] = true;
                    *missing -= 1;
                }
                self.on_path[y] = true;
                self.sweep(c, src, y, missing);
                self.on_path[y] = false;
            }
            self.seq.pop();
        }
    }

    fn failing(&self) -> usize {
        self.missing.iter().sum()
    }
}

/// Number of required pairs with no valid path.
pub fn failing_pair_count<P: SequenceProperty + ?Sized>(
    g: &Graph,
    c: &EdgeColoring,
    p: &P,
) -> usize {
    let mut table = PairTable::new(g, p);
    (0..g.vertex_count()).for_each(|u| table.refresh(c, u));
    table.failing()
}

fn is_p_connected<P: SequenceProperty + ?Sized>(g: &Graph, c: &EdgeColoring, p: &P) -> bool {
    let mut table = PairTable::new(g, p);
    (0..g.vertex_count()).all(|u| {
        table.refresh(c, u);
        table.missing[u] == 0
    })
}

/// Smallest `k <= kmax` admitting a `p`-connected coloring, enumerating
/// colorings as restricted-growth strings over edge order so each color
/// permutation class is visited once. Refuses graphs above the edge cap.
pub fn exact_connection_number<P: SequenceProperty + ?Sized>(
    g: &Graph,
    p: &P,
    kmax: Color,
) -> Result<Option<Color>> {
    exact_connection_number_capped(g, p, kmax, DEFAULT_EXACT_EDGE_CAP)
}

pub fn exact_connection_number_capped<P: SequenceProperty + ?Sized>(
    g: &Graph,
    p: &P,
    kmax: Color,
    edge_cap: usize,
) -> Result<Option<Color>> {
    if g.edge_count() > edge_cap {
        return Err(Error::EdgeCapExceeded {
            found: g.edge_count(),
            cap: edge_cap,
        });
    }
    if !is_connected(g) {
        return Ok(None);
    }
    if g.vertex_count() < 2 {
        return Ok(Some(0));
    }
    Ok((1..=kmax).find(|&k| exact_coloring(g, p, k).is_some()))
}

/// A `p`-connected coloring using exactly `k` colors, if one exists.
pub fn exact_coloring<P: SequenceProperty + ?Sized>(
    g: &Graph,
    p: &P,
    k: Color,
) -> Option<EdgeColoring> {
    fn assign<P: SequenceProperty + ?Sized>(
        g: &Graph,
        p: &P,
        k: Color,
        colors: &mut Vec<Color>,
        used: Color,
    ) -> bool {
        let m = g.edge_count();
        let i = colors.len();
        if i == m {
            let c = EdgeColoring::new(colors.clone(), k).unwrap();
            return used == k && is_p_connected(g, &c, p);
        }
        // every remaining edge may need a fresh color to reach exactly k
        if (k - used) as usize > m - i {
            return false;
        }
        for color in 1..=(used + 1).min(k) {
            colors.push(color);
            if assign(g, p, k, colors, used.max(color)) {
                return true;
            }
            colors.pop();
        }
        false
    }
    let mut colors = Vec::with_capacity(g.edge_count());
    assign(g, p, k, &mut colors, 0).then(|| EdgeColoring::new(colors, k).unwrap())
}

/// Outcome of an annealing run.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// A verified coloring, if one was found.
    pub coloring: Option<EdgeColoring>,
    pub best_failing_pairs: usize,
    pub moves: u64,
}

/// Simulated annealing over `k`-colorings: a move recolors one random edge,
/// the energy is the number of failing pairs, cooling is geometric. A `None`
/// result is evidence only, never a proof.
pub fn stochastic_search<P: SequenceProperty + ?Sized>(
    g: &Graph,
    p: &P,
    k: Color,
    budget: u64,
    seed: u64,
) -> Option<EdgeColoring> {
    anneal(g, p, k, budget, seed).coloring
}

pub fn anneal<P: SequenceProperty + ?Sized>(
    g: &Graph,
    p: &P,
    k: Color,
    budget: u64,
    seed: u64,
) -> SearchOutcome {
    const T_START: f64 = 2.0;
    const T_END: f64 = 0.02;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = g.edge_count();
    let n = g.vertex_count();
    let k = k.max(1);
    let colors: Vec<Color> = (0..m).map(|_| rng.gen_range(1..=k)).collect();
    let mut coloring = EdgeColoring::new(colors, k).unwrap();
    let mut table = PairTable::new(g, p);
    (0..n).for_each(|u| table.refresh(&coloring, u));
    let mut energy = table.failing();
    let mut best = energy;
    let mut moves = 0;

    let confirm = |c: &EdgeColoring| {
        verify_connected_coloring(g, c, p)
            .map(|r| r.connected)
            .unwrap_or(false)
    };
    if energy == 0 && confirm(&coloring) {
        return SearchOutcome {
            coloring: Some(coloring),
            best_failing_pairs: 0,
            moves,
        };
    }
    if m == 0 || k == 1 {
        return SearchOutcome {
            coloring: None,
            best_failing_pairs: best,
            moves,
        };
    }

    let cooling = (T_END / T_START).powf(1.0 / budget.max(1) as f64);
    let mut temperature = T_START;
    let mut saved: Vec<(VertexId, usize, Vec<u64>)> = Vec::new();
    while moves < budget {
        moves += 1;
        temperature *= cooling;
        let e: EdgeId = rng.gen_range(0..m);
        let old = coloring.color(e);
        let mut new = rng.gen_range(1..k);
        if new >= old {
            new += 1;
        }
        coloring.set(e, new);
        saved.clear();
        for u in 0..n {
            if table.depends_on(u, e) {
                saved.push((u, table.missing[u], table.depends[u].clone()));
                table.refresh(&coloring, u);
            }
        }
        let candidate = table.failing();
        let delta = candidate as f64 - energy as f64;
        if delta <= 0.0 || rng.gen::<f64>() < (-delta / temperature).exp() {
            energy = candidate;
            if energy < best {
                best = energy;
            }
            if energy == 0 && confirm(&coloring) {
                return SearchOutcome {
                    coloring: Some(coloring),
                    best_failing_pairs: 0,
                    moves,
                };
            }
        } else {
            coloring.set(e, old);
            for (u, missing, depends) in saved.drain(..) {
                table.missing[u] = missing;
                table.depends[u] = depends;
            }
        }
    }
    SearchOutcome {
        coloring: None,
        best_failing_pairs: best,
        moves,
    }
}
