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

//! Simple undirected graphs, edge colorings and the connectivity predicates
//! that the coloring constructions take as preconditions.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type Color = u32;

/// A simple undirected graph with dense vertex ids `0..n` and dense edge
/// ids `0..m` assigned in insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    edges: Vec<(VertexId, VertexId)>,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
}

impl Graph {
    pub fn new(vertex_count: usize) -> Self {
        Graph {
            edges: Vec::new(),
            adjacency: vec![Vec::new(); vertex_count],
        }
    }

    /// Builds a graph from an edge list, rejecting loops, parallel edges and
    /// out-of-range endpoints.
    pub fn from_edges(vertex_count: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut g = Graph::new(vertex_count);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        let n = self.vertex_count();
        if u >= n || v >= n {
            return Err(Error::InvalidGraph(format!(
                "edge ({u}, {v}) out of range for {n} vertices"
            )));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
        }
        if self.edge_between(u, v).is_some() {
            return Err(Error::InvalidGraph(format!("parallel edge ({u}, {v})")));
        }
        let id = self.edges.len();
        self.edges.push((u, v));
        self.adjacency[u].push((v, id));
        self.adjacency[v].push((u, id));
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    /// The endpoint of `e` that is not `v`.
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// `(neighbor, edge)` pairs incident to `v`, in insertion order.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.adjacency
            .get(u)?
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
    }

    /// Spanning subgraph keeping the listed edges; edge `i` of the result is
    /// `kept[i]` of `self`.
    pub fn edge_subgraph(&self, kept: &[EdgeId]) -> Graph {
        let mut h = Graph::new(self.vertex_count());
        for &e in kept {
            let (u, v) = self.edges[e];
            h.add_edge(u, v)
                .expect("subgraph of a simple graph is simple");
        }
        h
    }

    /// Rebuilds the adjacency from the edge list and compares.
    pub fn check_invariants(&self) -> Result<()> {
        let rebuilt = Graph::from_edges(self.vertex_count(), &self.edges)?;
        if rebuilt.adjacency != self.adjacency {
            return Err(Error::InvalidGraph(
                "adjacency out of sync with edges".into(),
            ));
        }
        Ok(())
    }

    /// Edge ids along a vertex path, `None` if it steps over a non-edge.
    pub fn path_edges(&self, path: &[VertexId]) -> Option<Vec<EdgeId>> {
        path.windows(2)
            .map(|w| self.edge_between(w[0], w[1]))
            .collect()
    }
}

/// A total map from edge ids to colors `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    colors: Vec<Color>,
    k: Color,
}

impl EdgeColoring {
    pub fn new(colors: Vec<Color>, k: Color) -> Result<Self> {
        if let Some(&bad) = colors.iter().find(|&&c| c == 0 || c > k) {
            return Err(Error::InvalidParameter(format!(
                "color {bad} outside 1..={k}"
            )));
        }
        Ok(EdgeColoring { colors, k })
    }

    /// Coloring with `k` set to the largest color used (at least 1).
    pub fn from_colors(colors: Vec<Color>) -> Result<Self> {
        let k = colors.iter().copied().max().unwrap_or(1).max(1);
        EdgeColoring::new(colors, k)
    }

    pub fn uniform(edge_count: usize, color: Color) -> Self {
        EdgeColoring {
            colors: vec![color; edge_count],
            k: color.max(1),
        }
    }

    pub fn color(&self, e: EdgeId) -> Color {
        self.colors[e]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn k(&self) -> Color {
        self.k
    }

    pub fn max_color(&self) -> Color {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    pub fn distinct_colors(&self) -> usize {
        let mut seen: Vec<Color> = self.colors.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    pub fn set(&mut self, e: EdgeId, c: Color) {
        assert!(c >= 1 && c <= self.k, "color {c} outside 1..={}", self.k);
        self.colors[e] = c;
    }

    pub fn covers(&self, g: &Graph) -> Result<()> {
        if self.colors.len() != g.edge_count() {
            return Err(Error::ColoringMismatch(format!(
                "{} colors for {} edges",
                self.colors.len(),
                g.edge_count()
            )));
        }
        Ok(())
    }

    /// Color sequence read along a vertex path, or `None` if the path uses a
    /// non-edge.
    pub fn sequence_along(&self, g: &Graph, path: &[VertexId]) -> Option<Vec<Color>> {
        g.path_edges(path)
            .map(|es| es.into_iter().map(|e| self.colors[e]).collect())
    }
}

fn components_masked(g: &Graph, active: &[bool], removed_vertex: Option<VertexId>) -> usize {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for start in 0..n {
        if seen[start] || Some(start) == removed_vertex {
            continue;
        }
        count += 1;
        seen[start] = true;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in g.neighbors(v) {
                if active[e] && !seen[w] && Some(w) != removed_vertex {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    count
}

pub fn is_connected(g: &Graph) -> bool {
    g.vertex_count() == 0 || components_masked(g, &vec![true; g.edge_count()], None) == 1
}

/// Articulation-point test restricted to edges with `active[e]`.
pub(crate) fn is_two_connected_masked(g: &Graph, active: &[bool]) -> bool {
    let n = g.vertex_count();
    if n < 3 || components_masked(g, active, None) != 1 {
        return false;
    }
    // iterative lowlink DFS from vertex 0
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut root_children = 0;
    let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(0, None, 0)];
    disc[0] = 0;
    low[0] = 0;
    time += 1;
    while let Some(top) = stack.last_mut() {
        let (v, parent_edge) = (top.0, top.1);
        let adj = g.neighbors(v);
        if top.2 < adj.len() {
            let (w, e) = adj[top.2];
            top.2 += 1;
            if !active[e] || Some(e) == parent_edge {
                continue;
            }
            if disc[w] == usize::MAX {
                disc[w] = time;
                low[w] = time;
                time += 1;
                if v == 0 {
                    root_children += 1;
                }
                stack.push((w, Some(e), 0));
            } else {
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if let Some(&(p, _, _)) = stack.last() {
                low[p] = low[p].min(low[v]);
                if p != 0 && low[v] >= disc[p] {
                    return false;
                }
            }
        }
    }
    root_children == 1
}

/// True iff `g` has at least three vertices, is connected and has no
/// articulation vertex. `K_2` is not 2-connected.
pub fn is_two_connected(g: &Graph) -> bool {
    is_two_connected_masked(g, &vec![true; g.edge_count()])
}

fn is_complete(g: &Graph) -> bool {
    let n = g.vertex_count();
    g.edge_count() == n * n.saturating_sub(1) / 2
}

fn vertex_split_network(g: &Graph, s: VertexId, t: VertexId) -> FlowNetwork {
    let n = g.vertex_count();
    let big = n as u32 + 1;
    let mut net = FlowNetwork::new(2 * n);
    for v in 0..n {
        let cap = if v == s || v == t { big } else { 1 };
        net.add_arc(2 * v, 2 * v + 1, cap);
    }
    for &(u, v) in g.edges() {
        net.add_arc(2 * u + 1, 2 * v, big);
        net.add_arc(2 * v + 1, 2 * u, big);
    }
    net
}

/// Largest `k` such that `g` is `k`-connected: `n - 1` for complete graphs,
/// 0 for disconnected graphs, otherwise the size of a minimum vertex cut.
pub fn vertex_connectivity(g: &Graph) -> usize {
    if !is_connected(g) {
        return 0;
    }
    if is_complete(g) {
        return g.vertex_count().saturating_sub(1);
    }
    minimum_vertex_cut(g).map_or(0, |cut| cut.len())
}

/// A minimum separating vertex set of a connected non-complete graph.
pub fn minimum_vertex_cut(g: &Graph) -> Option<Vec<VertexId>> {
    let n = g.vertex_count();
    if !is_connected(g) || is_complete(g) {
        return None;
    }
    let mut best: Option<(usize, VertexId, VertexId)> = None;
    // Some vertex among the first best+1 lies outside a minimum cut.
    let mut s = 0;
    while s < n && best.is_none_or(|(k, _, _)| s <= k) {
        for t in 0..n {
            if t == s || g.edge_between(s, t).is_some() {
                continue;
            }
            let mut net = vertex_split_network(g, s, t);
            let flow = net.max_flow(2 * s + 1, 2 * t) as usize;
            if best.is_none_or(|(k, _, _)| flow < k) {
                best = Some((flow, s, t));
            }
        }
        s += 1;
    }
    let (_, s, t) = best?;
    let mut net = vertex_split_network(g, s, t);
    net.max_flow(2 * s + 1, 2 * t);
    let side = net.residual_reachable(2 * s + 1);
    Some(
        (0..n)
            .filter(|&v| side[2 * v] && !side[2 * v + 1])
            .collect(),
    )
}

/// Size of a global minimum edge cut; 0 when disconnected or trivial.
pub fn edge_connectivity(g: &Graph) -> usize {
    let n = g.vertex_count();
    if n < 2 || !is_connected(g) {
        return 0;
    }
    let mut best = usize::MAX;
    for t in 1..n {
        let mut net = FlowNetwork::new(n);
        for &(u, v) in g.edges() {
            net.add_arc(u, v, 1);
            net.add_arc(v, u, 1);
        }
        best = best.min(net.max_flow(0, t) as usize);
    }
    best
}

/// Edge ids of a minimally 2-connected spanning subgraph, ascending.
///
/// Edges are tried for removal in ascending id order; a single pass suffices
/// because 2-connectivity is monotone under edge deletion.
pub fn minimal_two_connected_edges(g: &Graph) -> Result<Vec<EdgeId>> {
    if !is_two_connected(g) {
        return Err(Error::NotTwoConnected);
    }
    let mut active = vec![true; g.edge_count()];
    for e in 0..g.edge_count() {
        active[e] = false;
        if !is_two_connected_masked(g, &active) {
            active[e] = true;
        }
    }
    Ok((0..g.edge_count()).filter(|&e| active[e]).collect())
}

pub fn minimally_two_connected_spanning(g: &Graph) -> Result<Graph> {
    minimal_two_connected_edges(g).map(|kept| g.edge_subgraph(&kept))
}

/// True iff `g` is 2-connected and deleting any single edge breaks that.
pub fn is_minimally_two_connected(g: &Graph) -> bool {
    first_removable_edge(g).is_none() && is_two_connected(g)
}

pub(crate) fn first_removable_edge(g: &Graph) -> Option<EdgeId> {
    let mut active = vec![true; g.edge_count()];
    (0..g.edge_count()).find(|&e| {
        active[e] = false;
        let still = is_two_connected_masked(g, &active);
        active[e] = true;
        still
    })
}

/// Length of a shortest cycle, or `None` for a forest.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.vertex_count();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent_edge = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        queue.clear();
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            if best.is_some_and(|b| 2 * dist[v] >= b) {
                break;
            }
            for &(w, e) in g.neighbors(v) {
                if e == parent_edge[v] {
                    continue;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent_edge[w] = e;
                    queue.push_back(w);
                } else {
                    let len = dist[v] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
        parent_edge.iter_mut().for_each(|p| *p = usize::MAX);
    }
    best
}

/// A proper 2-coloring of the vertices (sides 0/1), if one exists.
pub fn two_color(g: &Graph) -> Option<Vec<u8>> {
    let n = g.vertex_count();
    let mut side = vec![u8::MAX; n];
    let mut queue = VecDeque::new();
    for start in 0..n {
        if side[start] != u8::MAX {
            continue;
        }
        side[start] = 0;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for &(w, _) in g.neighbors(v) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    queue.push_back(w);
                } else if side[w] == side[v] {
                    return None;
                }
            }
        }
    }
    Some(side)
}

pub fn is_bipartite(g: &Graph) -> bool {
    two_color(g).is_some()
}

/// BFS distances from `source`; `usize::MAX` marks unreachable vertices.
pub fn bfs_distances(g: &Graph, source: VertexId) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        for &(w, _) in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Largest eccentricity; `None` if disconnected.
pub fn diameter(g: &Graph) -> Option<usize> {
    (0..g.vertex_count())
        .map(|v| {
            let d = bfs_distances(g, v);
            d.iter().copied().max().filter(|&m| m != usize::MAX)
        })
        .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructs::{complete, complete_bipartite, cycle, path};

    fn two_triangles() -> Graph {
        Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap()
    }

    fn bowtie() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap()
    }

    #[test]
    fn rejects_loops_and_parallel_edges() {
        assert!(Graph::from_edges(2, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn adjacency_is_consistent() {
        complete(6).check_invariants().unwrap();
        bowtie().check_invariants().unwrap();
    }

    #[test]
    fn connectivity_examples() {
        assert!(!is_connected(&two_triangles()));
        assert!(is_connected(&cycle(5)));
        assert!(is_connected(&Graph::new(1)));
    }

    #[test]
    fn two_connectivity_examples() {
        assert!(is_two_connected(&cycle(5)));
        assert!(!is_two_connected(&path(4)));
        assert!(!is_two_connected(&bowtie()));
        assert!(!is_two_connected(&complete(2)));
        assert!(is_two_connected(&complete(3)));
    }

    #[test]
    fn vertex_connectivity_examples() {
        assert_eq!(vertex_connectivity(&complete(4)), 3);
        assert_eq!(vertex_connectivity(&cycle(6)), 2);
        assert_eq!(vertex_connectivity(&bowtie()), 1);
        assert_eq!(vertex_connectivity(&two_triangles()), 0);
        assert_eq!(minimum_vertex_cut(&bowtie()), Some(vec![2]));
    }

    #[test]
    fn edge_connectivity_examples() {
        assert_eq!(edge_connectivity(&complete(5)), 4);
        assert_eq!(edge_connectivity(&cycle(8)), 2);
        assert_eq!(edge_connectivity(&path(3)), 1);
        assert_eq!(edge_connectivity(&two_triangles()), 0);
    }

    #[test]
    fn minimalization_examples() {
        let h = minimally_two_connected_spanning(&complete(4)).unwrap();
        assert_eq!(h.edge_count(), 4);
        assert!(h.neighbors(0).len() == 2 && (0..4).all(|v| h.degree(v) == 2));
        assert!(is_two_connected(&h));

        let c7 = cycle(7);
        assert_eq!(minimally_two_connected_spanning(&c7).unwrap(), c7);

        let k23 = complete_bipartite(2, 3);
        assert_eq!(minimally_two_connected_spanning(&k23).unwrap(), k23);
        assert!(is_minimally_two_connected(&k23));

        assert_eq!(
            minimally_two_connected_spanning(&path(4)),
            Err(Error::NotTwoConnected)
        );
    }

    #[test]
    fn girth_examples() {
        assert_eq!(girth(&cycle(9)), Some(9));
        assert_eq!(girth(&complete(4)), Some(3));
        assert_eq!(girth(&complete_bipartite(3, 3)), Some(4));
        assert_eq!(girth(&path(5)), None);
    }

    #[test]
    fn bipartite_and_diameter() {
        assert!(is_bipartite(&cycle(8)));
        assert!(!is_bipartite(&cycle(7)));
        assert_eq!(diameter(&cycle(7)), Some(3));
        assert_eq!(diameter(&two_triangles()), None);
    }

    #[test]
    fn coloring_rejects_out_of_range() {
        assert!(EdgeColoring::new(vec![1, 2, 3], 2).is_err());
        assert!(EdgeColoring::new(vec![0], 2).is_err());
        let c = EdgeColoring::from_colors(vec![1, 3, 1]).unwrap();
        assert_eq!(c.k(), 3);
        assert_eq!(c.distinct_colors(), 2);
    }
}
