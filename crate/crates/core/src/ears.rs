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

//! Open ear decompositions of 2-connected graphs.
//!
//! Two builders are provided: a cheap deterministic one that accepts any
//! 2-connected graph, and an exhaustive longest-ear-first one for minimally
//! 2-connected graphs. The latter starts from a longest cycle and always
//! attaches a longest available ear, breaking ties by the lexicographically
//! smallest vertex sequence. It is exponential in the worst case and meant
//! for graphs of a few dozen vertices.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{first_removable_edge, is_two_connected, EdgeId, Graph, VertexId};

/// One ear. For the initial cycle `vertices` is closed (first == last).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ear {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub is_cycle: bool,
}

impl Ear {
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn source(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn target(&self) -> VertexId {
        *self.vertices.last().unwrap()
    }

    pub fn internal_vertices(&self) -> &[VertexId] {
        &self.vertices[1..self.vertices.len() - 1]
    }

    pub fn is_internal(&self, v: VertexId) -> bool {
        self.internal_vertices().contains(&v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EarDecomposition {
    pub ears: Vec<Ear>,
}

impl EarDecomposition {
    pub fn lengths(&self) -> Vec<usize> {
        self.ears.iter().map(Ear::len).collect()
    }

    /// Checks that the ears partition the edges of `g`, that the first ear is
    /// a cycle and that every later ear meets its predecessors exactly in its
    /// two distinct endpoints.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let fail = |msg: String| Err(Error::Invariant(msg));
        let mut edge_seen = vec![false; g.edge_count()];
        let mut vertex_seen = vec![false; g.vertex_count()];
        for (i, ear) in self.ears.iter().enumerate() {
            if ear.vertices.len() != ear.edges.len() + 1 || ear.edges.is_empty() {
                return fail(format!("ear {i} has inconsistent vertex/edge lists"));
            }
            if ear.is_cycle != (i == 0) {
                return fail(format!("ear {i} has the wrong cycle flag"));
            }
            for (k, &e) in ear.edges.iter().enumerate() {
                if g.edge_between(ear.vertices[k], ear.vertices[k + 1]) != Some(e) {
                    return fail(format!("ear {i} step {k} does not follow edge {e}"));
                }
                if std::mem::replace(&mut edge_seen[e], true) {
                    return fail(format!("edge {e} appears twice"));
                }
            }
            let (s, t) = (ear.source(), ear.target());
            if i == 0 {
                if s != t || ear.len() < 3 {
                    return fail("first ear is not a cycle".into());
                }
                vertex_seen[s] = true;
            } else if s == t || !vertex_seen[s] || !vertex_seen[t] {
                return fail(format!(
                    "ear {i} endpoints are not distinct earlier vertices"
                ));
            }
            for &v in ear.internal_vertices() {
                if std::mem::replace(&mut vertex_seen[v], true) {
                    return fail(format!("ear {i} revisits vertex {v}"));
                }
            }
        }
        if let Some(e) = edge_seen.iter().position(|&s| !s) {
            return fail(format!("edge {e} is not covered"));
        }
        if let Some(v) = vertex_seen.iter().position(|&s| !s) {
            return fail(format!("vertex {v} is not covered"));
        }
        Ok(())
    }

    /// Edge set of the union of all ears, as sorted endpoint pairs.
    pub fn edge_set(&self) -> HashSet<(VertexId, VertexId)> {
        self.ears
            .iter()
            .flat_map(|ear| {
                ear.vertices
                    .windows(2)
                    .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
            })
            .collect()
    }
}

fn sorted_adjacency(g: &Graph) -> Vec<Vec<(VertexId, EdgeId)>> {
    (0..g.vertex_count())
        .map(|v| {
            let mut adj = g.neighbors(v).to_vec();
            adj.sort_unstable();
            adj
        })
        .collect()
}

fn ear_from_vertices(g: &Graph, vertices: Vec<VertexId>, is_cycle: bool) -> Ear {
    let edges = g.path_edges(&vertices).expect("ear follows graph edges");
    Ear {
        vertices,
        edges,
        is_cycle,
    }
}

/// First cycle met by a depth-first search from vertex 0.
fn first_dfs_cycle(g: &Graph, adj: &[Vec<(VertexId, EdgeId)>]) -> Option<Vec<VertexId>> {
    let n = g.vertex_count();
    let mut on_stack = vec![false; n];
    let mut visited = vec![false; n];
    let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(0, None, 0)];
    visited[0] = true;
    on_stack[0] = true;
    while let Some(top) = stack.last_mut() {
        let (v, via) = (top.0, top.1);
        if top.2 == adj[v].len() {
            on_stack[v] = false;
            stack.pop();
            continue;
        }
        let (w, e) = adj[v][top.2];
        top.2 += 1;
        if Some(e) == via {
            continue;
        }
        if on_stack[w] {
            let start = stack.iter().position(|&(x, _, _)| x == w).unwrap();
            let mut cycle: Vec<VertexId> = stack[start..].iter().map(|&(x, _, _)| x).collect();
            cycle.push(w);
            return Some(cycle);
        }
        if !visited[w] {
            visited[w] = true;
            on_stack[w] = true;
            stack.push((w, Some(e), 0));
        }
    }
    None
}

/// A deterministic open ear decomposition of a 2-connected graph: the first
/// cycle found by depth-first search, then repeatedly the ear through the
/// smallest uncovered edge that touches the covered part.
pub fn open_ear_decomposition(g: &Graph) -> Result<EarDecomposition> {
    if !is_two_connected(g) {
        return Err(Error::NotTwoConnected);
    }
    let adj = sorted_adjacency(g);
    let cycle = first_dfs_cycle(g, &adj).ok_or(Error::NotTwoConnected)?;
    let mut covered_v = vec![false; g.vertex_count()];
    let mut covered_e = vec![false; g.edge_count()];
    let mut ears = Vec::new();
    let mut absorb = |ear: Ear, covered_v: &mut Vec<bool>, covered_e: &mut Vec<bool>| {
        ear.vertices.iter().for_each(|&v| covered_v[v] = true);
        ear.edges.iter().for_each(|&e| covered_e[e] = true);
        ears.push(ear);
    };
    absorb(
        ear_from_vertices(g, cycle, true),
        &mut covered_v,
        &mut covered_e,
    );

    while let Some(e) = (0..g.edge_count())
        .find(|&e| !covered_e[e] && (covered_v[g.endpoints(e).0] || covered_v[g.endpoints(e).1]))
    {
        let (a, b) = g.endpoints(e);
        let (u, w) = if covered_v[a] { (a, b) } else { (b, a) };
        let vertices = if covered_v[w] {
            vec![u.min(w), u.max(w)]
        } else {
            // depth-first walk through uncovered vertices back to the covered part
            let mut path = vec![u, w];
            let mut seen = vec![false; g.vertex_count()];
            seen[w] = true;
            let mut cursor = vec![0usize];
            loop {
                let x = *path.last().unwrap();
                let Some(i) = cursor.last_mut() else {
                    return Err(Error::Invariant("ear search exhausted".into()));
                };
                if *i == adj[x].len() {
                    path.pop();
                    cursor.pop();
                    continue;
                }
                let (y, _) = adj[x][*i];
                *i += 1;
                if covered_v[y] {
                    if y != u {
                        path.push(y);
                        break;
                    }
                } else if !seen[y] {
                    seen[y] = true;
                    path.push(y);
                    cursor.push(0);
                }
            }
            path
        };
        absorb(
            ear_from_vertices(g, vertices, false),
            &mut covered_v,
            &mut covered_e,
        );
    }
    Ok(EarDecomposition { ears })
}

/// Exhaustive longest-path searches over a fixed graph.
struct LongestSearch<'a> {
    adj: &'a [Vec<(VertexId, EdgeId)>],
    in_part: &'a [bool],
    edge_used: &'a [bool],
    visited: Vec<bool>,
    /// Candidate vertices still available to the current search.
    free: usize,
    path: Vec<VertexId>,
    best: Vec<VertexId>,
}

impl<'a> LongestSearch<'a> {
    fn best_edges(&self) -> usize {
        self.best.len().saturating_sub(1)
    }

    /// Cycles through `start` using only vertices above `start`.
    fn cycle_from(&mut self, start: VertexId, v: VertexId) {
        for &(w, _) in &self.adj[v] {
            if w == start {
                // path has k vertices, closing gives a k-edge cycle
                if self.path.len() >= 3 && self.path.len() > self.best_edges() {
                    self.best = self.path.clone();
                    self.best.push(start);
                }
            } else if w > start && !self.visited[w] {
                if self.path.len() + self.free <= self.best_edges() {
                    return;
                }
                self.visited[w] = true;
                self.free -= 1;
                self.path.push(w);
                self.cycle_from(start, w);
                self.path.pop();
                self.free += 1;
                self.visited[w] = false;
            }
        }
    }

    /// Ears from `path[0]` whose interior avoids the covered part.
    fn ear_from(&mut self, v: VertexId) {
        let start = self.path[0];
        for &(w, e) in &self.adj[v] {
            if self.edge_used[e] {
                continue;
            }
            // current path has path.len() - 1 edges
            if self.in_part[w] {
                if w != start && self.path.len() > self.best_edges() {
                    self.best = self.path.clone();
                    self.best.push(w);
                }
            } else if !self.visited[w] {
                if self.path.len() + self.free <= self.best_edges() {
                    return;
                }
                self.visited[w] = true;
                self.free -= 1;
                self.path.push(w);
                self.ear_from(w);
                self.path.pop();
                self.free += 1;
                self.visited[w] = false;
            }
        }
    }
}

/// A longest cycle, as a closed vertex list starting at its smallest vertex.
pub fn longest_cycle(g: &Graph) -> Option<Vec<VertexId>> {
    let adj = sorted_adjacency(g);
    let n = g.vertex_count();
    let no_part = vec![false; n];
    let no_edges = vec![false; g.edge_count()];
    let mut search = LongestSearch {
        adj: &adj,
        in_part: &no_part,
        edge_used: &no_edges,
        visited: vec![false; n],
        free: 0,
        path: Vec::new(),
        best: Vec::new(),
    };
    for start in 0..n {
        // a cycle whose smallest vertex is `start` has at most n - start edges
        if n - start <= search.best_edges() {
            break;
        }
        search.free = n - start - 1;
        search.path = vec![start];
        search.visited[start] = true;
        search.cycle_from(start, start);
        search.visited[start] = false;
    }
    (!search.best.is_empty()).then_some(search.best)
}

/// Longest-ear-first open ear decomposition of a minimally 2-connected graph.
pub fn longest_first_ear_decomposition(h: &Graph) -> Result<EarDecomposition> {
    if !is_two_connected(h) {
        return Err(Error::NotTwoConnected);
    }
    if let Some(e) = first_removable_edge(h) {
        return Err(Error::NotMinimallyTwoConnected(e));
    }
    let n = h.vertex_count();
    let adj = sorted_adjacency(h);
    let cycle = longest_cycle(h).ok_or(Error::NotTwoConnected)?;
    let mut in_part = vec![false; n];
    let mut edge_used = vec![false; h.edge_count()];
    let first = ear_from_vertices(h, cycle, true);
    first.vertices.iter().for_each(|&v| in_part[v] = true);
    first.edges.iter().for_each(|&e| edge_used[e] = true);
    let mut ears = vec![first];
    let mut remaining_edges = h.edge_count() - ears[0].len();

    while remaining_edges > 0 {
        let outside = in_part.iter().filter(|&&p| !p).count();
        let mut search = LongestSearch {
            adj: &adj,
            in_part: &in_part,
            edge_used: &edge_used,
            visited: vec![false; n],
            free: outside,
            path: Vec::new(),
            best: Vec::new(),
        };
        for u in (0..n).filter(|&u| in_part[u]) {
            search.path = vec![u];
            search.ear_from(u);
        }
        if search.best.is_empty() {
            return Err(Error::Invariant(
                "no ear attaches to the covered part".into(),
            ));
        }
        let ear = ear_from_vertices(h, search.best, false);
        ear.vertices.iter().for_each(|&v| in_part[v] = true);
        ear.edges.iter().for_each(|&e| edge_used[e] = true);
        remaining_edges -= ear.len();
        ears.push(ear);
    }
    Ok(EarDecomposition { ears })
}

/// Outcome of the structural checks on a longest-first decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimReport {
    /// Ear lengths are non-increasing.
    pub ordering: bool,
    /// No ear's endpoints are adjacent in the union of earlier ears.
    pub endpoints_nonadjacent: bool,
    /// Between two ears that both have 2 edges or both have 3 edges, the
    /// later one has no endpoint inside the earlier one.
    pub equal_short_ears_disjoint: bool,
    /// When a 2-edge ear starts inside an earlier 3-edge ear, its other end
    /// is the far endpoint of that 3-edge ear.
    pub short_ear_touching: bool,
    pub failures: Vec<String>,
}

impl ClaimReport {
    pub fn all_passed(&self) -> bool {
        self.ordering
            && self.endpoints_nonadjacent
            && self.equal_short_ears_disjoint
            && self.short_ear_touching
    }
}

/// Diagnostic checks of the structural facts a longest-first decomposition
/// of a minimally 2-connected graph is known to satisfy.
pub fn validate_structural_claims(ed: &EarDecomposition) -> ClaimReport {
    let mut report = ClaimReport {
        ordering: true,
        endpoints_nonadjacent: true,
        equal_short_ears_disjoint: true,
        short_ear_touching: true,
        failures: Vec::new(),
    };
    let ears = &ed.ears;

    for i in 1..ears.len() {
        if ears[i].len() > ears[i - 1].len() {
            report.ordering = false;
            report.failures.push(format!(
                "ear {i} has {} edges, ear {} has {}",
                ears[i].len(),
                i - 1,
                ears[i - 1].len()
            ));
        }
    }

    let mut adjacent: HashSet<(VertexId, VertexId)> = HashSet::new();
    for (i, ear) in ears.iter().enumerate() {
        let (s, t) = (ear.source(), ear.target());
        if i > 0 && adjacent.contains(&(s.min(t), s.max(t))) {
            report.endpoints_nonadjacent = false;
            report
                .failures
                .push(format!("ear {i} endpoints {s}, {t} already adjacent"));
        }
        for w in ear.vertices.windows(2) {
            adjacent.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
    }

    for i in 1..ears.len() {
        for j in 1..i {
            let (pi, pj) = (&ears[i], &ears[j]);
            let ends = [pi.source(), pi.target()];
            if pi.len() == pj.len() && matches!(pi.len(), 2 | 3) {
                if let Some(v) = ends.iter().find(|&&v| pj.is_internal(v)) {
                    report.equal_short_ears_disjoint = false;
                    report
                        .failures
                        .push(format!("ear {i} endpoint {v} is internal to ear {j}"));
                }
            }
            if pi.len() == 2 && pj.len() == 3 {
                for (k, &v) in ends.iter().enumerate() {
                    let other = ends[1 - k];
                    // P_j = s a b t: a pairs with t, b pairs with s
                    let expected = if v == pj.vertices[1] {
                        Some(pj.vertices[3])
                    } else if v == pj.vertices[2] {
                        Some(pj.vertices[0])
                    } else {
                        None
                    };
                    if let Some(expected) = expected {
                        if other != expected {
                            report.short_ear_touching = false;
                            report.failures.push(format!(
                                "2-edge ear {i} leaves 3-edge ear {j} at {v} but ends at {other}"
                            ));
                        }
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructs::{
        complete, complete_bipartite, cycle, decagon_with_ears, dodecagon_with_ears, path,
        random_min_two_connected, random_two_connected, theta,
    };
    use crate::graph::minimally_two_connected_spanning;

    /// All cycles of a small graph by brute-force subset-free enumeration.
    fn longest_cycle_brute(g: &Graph) -> usize {
        fn go(
            g: &Graph,
            start: usize,
            v: usize,
            seen: &mut Vec<bool>,
            len: usize,
            best: &mut usize,
        ) {
            for &(w, _) in g.neighbors(v) {
                if w == start && len >= 2 {
                    *best = (*best).max(len + 1);
                } else if !seen[w] {
                    seen[w] = true;
                    go(g, start, w, seen, len + 1, best);
                    seen[w] = false;
                }
            }
        }
        let mut best = 0;
        for s in 0..g.vertex_count() {
            let mut seen = vec![false; g.vertex_count()];
            seen[s] = true;
            go(g, s, s, &mut seen, 0, &mut best);
        }
        best
    }

    #[test]
    fn cycle_is_a_single_ear() {
        let g = cycle(10);
        let ed = open_ear_decomposition(&g).unwrap();
        assert_eq!(ed.lengths(), [10]);
        ed.validate(&g).unwrap();
        let lf = longest_first_ear_decomposition(&cycle(9)).unwrap();
        assert_eq!(lf.lengths(), [9]);
    }

    #[test]
    fn decagon_decompositions() {
        let g = decagon_with_ears();
        let ed = open_ear_decomposition(&g).unwrap();
        ed.validate(&g).unwrap();
        assert_eq!(ed.lengths(), [10, 4, 3, 2]);
        let lf = longest_first_ear_decomposition(&g).unwrap();
        lf.validate(&g).unwrap();
        assert_eq!(lf.lengths(), [10, 4, 3, 2]);
        assert_eq!(lf.ears[0].vertices, [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 0]);
        assert!(validate_structural_claims(&lf).all_passed());
    }

    #[test]
    fn dodecagon_decompositions() {
        let g = dodecagon_with_ears();
        let ed = open_ear_decomposition(&g).unwrap();
        ed.validate(&g).unwrap();
        assert_eq!(ed.lengths(), [12, 6, 3, 3]);
        // A longest-first decomposition starts from a longer cycle that
        // detours through the 6-edge ear.
        let lf = longest_first_ear_decomposition(&g).unwrap();
        lf.validate(&g).unwrap();
        assert_eq!(lf.ears[0].len(), longest_cycle_brute(&g));
        assert_eq!(lf.lengths().iter().sum::<usize>(), g.edge_count());
        assert!(validate_structural_claims(&lf).all_passed());
    }

    #[test]
    fn theta_decomposition() {
        let g = theta(&[3, 3, 3]).unwrap();
        let ed = open_ear_decomposition(&g).unwrap();
        ed.validate(&g).unwrap();
        assert_eq!(ed.lengths(), [6, 3]);
        assert_eq!(
            longest_first_ear_decomposition(&g).unwrap().lengths(),
            [6, 3]
        );
    }

    #[test]
    fn preconditions() {
        assert_eq!(
            open_ear_decomposition(&path(4)),
            Err(Error::NotTwoConnected)
        );
        assert!(matches!(
            longest_first_ear_decomposition(&complete(4)),
            Err(Error::NotMinimallyTwoConnected(_))
        ));
        assert!(open_ear_decomposition(&complete(5)).is_ok());
    }

    #[test]
    fn shuffled_decomposition_fails_ordering() {
        let g = decagon_with_ears();
        let mut ed = longest_first_ear_decomposition(&g).unwrap();
        ed.ears[1..].reverse();
        let report = validate_structural_claims(&ed);
        assert!(!report.ordering);
        assert!(!report.all_passed());
    }

    #[test]
    fn single_cycle_claims_are_vacuous() {
        let ed = longest_first_ear_decomposition(&cycle(7)).unwrap();
        assert!(validate_structural_claims(&ed).all_passed());
    }

    #[test]
    fn longest_cycle_matches_brute_force() {
        for seed in 0..20 {
            let g = random_two_connected(9, 6, seed).unwrap();
            let c = longest_cycle(&g).unwrap();
            assert_eq!(c.len() - 1, longest_cycle_brute(&g), "seed {seed}");
        }
        assert_eq!(
            longest_cycle(&complete_bipartite(2, 3)).unwrap().len() - 1,
            4
        );
    }

    #[test]
    fn random_decompositions_are_valid() {
        for seed in 0..30 {
            let g = random_two_connected(14, 8, seed).unwrap();
            let ed = open_ear_decomposition(&g).unwrap();
            ed.validate(&g).unwrap();
            assert_eq!(ed.edge_set().len(), g.edge_count());

            let h = minimally_two_connected_spanning(&g).unwrap();
            let lf = longest_first_ear_decomposition(&h).unwrap();
            lf.validate(&h).unwrap();
            assert!(lf.ears.iter().all(|e| e.len() >= 2), "seed {seed}");
            let claims = validate_structural_claims(&lf);
            assert!(claims.all_passed(), "seed {seed}: {:?}", claims.failures);
        }
    }

    #[test]
    fn random_min_graph_ears_have_internal_vertices() {
        let h = random_min_two_connected(20, 10, 7).unwrap();
        let lf = longest_first_ear_decomposition(&h).unwrap();
        assert!(lf.ears.iter().all(|e| !e.internal_vertices().is_empty()));
    }
}
