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

//! Two edge-disjoint spanning trees, and colorings that layer each tree by
//! depth with a valid sequence so every vertex pair gets a certified path.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{is_connected, Color, EdgeColoring, EdgeId, Graph, VertexId};
use crate::verify::{Witness, WitnessCertificate};
use crate::words::SequenceProperty;

/// One rooted spanning tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    pub edges: Vec<EdgeId>,
    /// Parent vertex and connecting edge; `None` at the root.
    pub parent: Vec<Option<(VertexId, EdgeId)>>,
    pub depth: Vec<usize>,
}

impl RootedTree {
    fn build(g: &Graph, edges: Vec<EdgeId>, root: VertexId) -> Result<Self> {
        let n = g.vertex_count();
        let mut adj: Vec<Vec<(VertexId, EdgeId)>> = vec![Vec::new(); n];
        for &e in &edges {
            let (u, v) = g.endpoints(e);
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
        let mut parent = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &(y, e) in &adj[x] {
                if depth[y] == usize::MAX {
                    depth[y] = depth[x] + 1;
                    parent[y] = Some((x, e));
                    queue.push_back(y);
                }
            }
        }
        if edges.len() + 1 != n || depth.contains(&usize::MAX) {
            return Err(Error::Invariant("edge set is not a spanning tree".into()));
        }
        Ok(RootedTree {
            edges,
            parent,
            depth,
        })
    }

    /// Number of edge layers.
    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    /// Vertices from `u` up to the root.
    pub fn path_to_root(&self, u: VertexId) -> Vec<VertexId> {
        let mut path = vec![u];
        let mut x = u;
        while let Some((p, _)) = self.parent[x] {
            path.push(p);
            x = p;
        }
        path
    }

    /// Depth layer of a tree edge: the depth of its upper endpoint.
    pub fn layer(&self, g: &Graph, e: EdgeId) -> usize {
        let (u, v) = g.endpoints(e);
        self.depth[u].min(self.depth[v])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTreePair {
    pub root: VertexId,
    pub t1: RootedTree,
    pub t2: RootedTree,
}

impl SpanningTreePair {
    /// Disjointness, and that each tree spans, is acyclic, and has
    /// consistent depths.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut owner = vec![0u8; g.edge_count()];
        for (tag, tree) in [(1u8, &self.t1), (2u8, &self.t2)] {
            for &e in &tree.edges {
                if e >= g.edge_count() || owner[e] != 0 {
                    return Err(Error::Invariant(format!("edge {e} reused or out of range")));
                }
                owner[e] = tag;
            }
            let rebuilt = RootedTree::build(g, tree.edges.clone(), self.root)?;
            if rebuilt.depth != tree.depth {
                return Err(Error::Invariant("tree depths are inconsistent".into()));
            }
        }
        Ok(())
    }
}

/// A forest kept as an edge membership mask; paths found on demand.
struct Forest {
    member: Vec<bool>,
    size: usize,
}

impl Forest {
    /// Edges of the forest path from `a` to `b`, or `None` if they lie in
    /// different components.
    fn path(&self, g: &Graph, a: VertexId, b: VertexId) -> Option<Vec<EdgeId>> {
        let n = g.vertex_count();
        let mut via: Vec<Option<(VertexId, EdgeId)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[a] = true;
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            if x == b {
                let mut edges = Vec::new();
                let mut y = b;
                while let Some((p, e)) = via[y] {
                    edges.push(e);
                    y = p;
                }
                return Some(edges);
            }
            for &(y, e) in g.neighbors(x) {
                if self.member[e] && !seen[y] {
                    seen[y] = true;
                    via[y] = Some((x, e));
                    queue.push_back(y);
                }
            }
        }
        None
    }
}

/// Two edge-disjoint spanning trees rooted at vertex 0, by matroid-union
/// augmentation over two forests. Fails with [`Error::NoTreePair`] when the
/// largest union of two forests has fewer than `2(n - 1)` edges, which
/// certifies that no pair exists.
pub fn two_edge_disjoint_spanning_trees(g: &Graph) -> Result<SpanningTreePair> {
    if !is_connected(g) {
        return Err(Error::NotConnected);
    }
    let n = g.vertex_count();
    let m = g.edge_count();
    let required = 2 * (n - 1);
    let mut forests = [
        Forest {
            member: vec![false; m],
            size: 0,
        },
        Forest {
            member: vec![false; m],
            size: 0,
        },
    ];
    let owner = |forests: &[Forest; 2], e: EdgeId| forests.iter().position(|f| f.member[e]);

    for start in 0..m {
        if forests[0].size + forests[1].size == required {
            break;
        }
        // BFS over edges; label[y] = (x, i): x enters forest i, y leaves it
        let mut label: Vec<Option<(EdgeId, usize)>> = vec![None; m];
        let mut visited = vec![false; m];
        visited[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut finish = None;
        'search: while let Some(x) = queue.pop_front() {
            let current = owner(&forests, x);
            let (a, b) = g.endpoints(x);
            for (i, forest) in forests.iter().enumerate() {
                if current == Some(i) {
                    continue;
                }
                match forest.path(g, a, b) {
                    None => {
                        finish = Some((x, i));
                        break 'search;
                    }
                    Some(cycle) => {
                        for y in cycle {
                            if !visited[y] {
                                visited[y] = true;
                                label[y] = Some((x, i));
                                queue.push_back(y);
                            }
                        }
                    }
                }
            }
        }
        let Some((mut x, mut i)) = finish else {
            continue;
        };
        loop {
            if let Some(j) = owner(&forests, x) {
                forests[j].member[x] = false;
                forests[j].size -= 1;
            }
            forests[i].member[x] = true;
            forests[i].size += 1;
            match label[x] {
                Some((prev, k)) => {
                    x = prev;
                    i = k;
                }
                None => break,
            }
        }
    }

    let found = forests[0].size + forests[1].size;
    if found < required {
        return Err(Error::NoTreePair { found, required });
    }
    let collect = |f: &Forest| (0..m).filter(|&e| f.member[e]).collect::<Vec<_>>();
    let t1 = RootedTree::build(g, collect(&forests[0]), 0)?;
    let t2 = RootedTree::build(g, collect(&forests[1]), 0)?;
    Ok(SpanningTreePair { root: 0, t1, t2 })
}

/// Path from `u` to `v` along the first tree towards the root, switching to
/// the second tree at the last vertex of the second tree's root-to-`v` path
/// that the first path touches.
pub fn witness_path(pair: &SpanningTreePair, u: VertexId, v: VertexId) -> Result<Vec<VertexId>> {
    let up = pair.t1.path_to_root(u);
    if let Some(i) = up.iter().position(|&x| x == v) {
        return Ok(up[..=i].to_vec());
    }
    let mut down = pair.t2.path_to_root(v);
    down.reverse();
    let n = pair.t1.depth.len();
    let mut on_up = vec![usize::MAX; n];
    for (i, &x) in up.iter().enumerate() {
        on_up[x] = i;
    }
    let j = down
        .iter()
        .rposition(|&x| on_up[x] != usize::MAX)
        .expect("both paths contain the root");
    let mut path = up[..=on_up[down[j]]].to_vec();
    path.extend_from_slice(&down[j + 1..]);
    let mut seen = vec![false; n];
    if path.iter().any(|&x| std::mem::replace(&mut seen[x], true)) {
        return Err(Error::Invariant(format!("witness {u}->{v} is not simple")));
    }
    Ok(path)
}

/// Colors the first tree's layers with `p.generate` over `1..=m`, the
/// second tree's with a shifted copy over `m+1..=2m`, and every other edge
/// with 1. Declares `k = 2m`.
pub fn two_tree_color(
    g: &Graph,
    p: &dyn SequenceProperty,
) -> Result<(EdgeColoring, SpanningTreePair)> {
    if !p.reversal_closed() {
        return Err(Error::NotReversalClosed(p.name().to_string()));
    }
    let pair = two_edge_disjoint_spanning_trees(g)?;
    let m = p.alphabet_size() as Color;
    let mut colors = vec![1; g.edge_count()];
    for (tree, shift) in [(&pair.t1, 0), (&pair.t2, m)] {
        let seq = p.generate(tree.height());
        for &e in &tree.edges {
            colors[e] = seq[tree.layer(g, e)] + shift;
        }
    }
    Ok((EdgeColoring::new(colors, 2 * m)?, pair))
}

/// Witnesses for every ordered pair of distinct vertices.
pub fn two_tree_witnesses(
    g: &Graph,
    c: &EdgeColoring,
    pair: &SpanningTreePair,
) -> Result<WitnessCertificate> {
    let n = g.vertex_count();
    let mut witnesses = Vec::with_capacity(n * n.saturating_sub(1));
    for u in 0..n {
        for v in (0..n).filter(|&v| v != u) {
            let path = witness_path(pair, u, v)?;
            let colors = c
                .sequence_along(g, &path)
                .ok_or_else(|| Error::Invariant("witness leaves the graph".into()))?;
            witnesses.push(Witness {
                from: u,
                to: v,
                path,
                colors,
            });
        }
    }
    Ok(WitnessCertificate { witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructs::{complete, cycle, octahedron, random_two_connected};
    use crate::graph::edge_connectivity;
    use crate::verify::verify_witness_set;
    use crate::words::Property;

    struct Forward;

    impl SequenceProperty for Forward {
        fn name(&self) -> &str {
            "increasing"
        }
        fn is_valid(&self, seq: &[Color]) -> bool {
            seq.windows(2).all(|w| w[0] < w[1])
        }
        fn alphabet_size(&self) -> usize {
            1
        }
        fn generate(&self, len: usize) -> Vec<Color> {
            (1..=len as Color).collect()
        }
        fn reversal_closed(&self) -> bool {
            false
        }
    }

    #[test]
    fn packs_complete_graphs() {
        for g in [complete(4), complete(5), complete(6), octahedron()] {
            let pair = two_edge_disjoint_spanning_trees(&g).unwrap();
            pair.validate(&g).unwrap();
            assert_eq!(pair.t1.edges.len(), g.vertex_count() - 1);
        }
    }

    #[test]
    fn cycles_have_no_pair() {
        for n in 3..12 {
            assert_eq!(
                two_edge_disjoint_spanning_trees(&cycle(n)),
                Err(Error::NoTreePair {
                    found: n,
                    required: 2 * (n - 1)
                })
            );
        }
    }

    #[test]
    fn packing_matches_forest_bound() {
        // a pair exists iff the union bound is met; compare against a
        // brute-force search on small graphs
        fn brute(g: &Graph) -> bool {
            let n = g.vertex_count();
            let m = g.edge_count();
            let trees: Vec<u32> = (0u32..1 << m)
                .filter(|mask| mask.count_ones() as usize == n - 1)
                .filter(|&mask| {
                    let kept: Vec<EdgeId> = (0..m).filter(|&e| mask >> e & 1 == 1).collect();
                    is_connected(
                        &Graph::from_edges(
                            n,
                            &kept.iter().map(|&e| g.endpoints(e)).collect::<Vec<_>>(),
                        )
                        .unwrap(),
                    )
                })
                .collect();
            trees.iter().any(|a| trees.iter().any(|b| a & b == 0))
        }
        for seed in 0..30 {
            let g = random_two_connected(6, (seed % 8) as usize + 2, seed).unwrap();
            let ours = two_edge_disjoint_spanning_trees(&g);
            assert_eq!(ours.is_ok(), brute(&g), "seed {seed}");
            if let Ok(pair) = ours {
                pair.validate(&g).unwrap();
            }
        }
    }

    #[test]
    fn four_edge_connected_graphs_pack() {
        let mut checked = 0;
        for seed in 0..40 {
            let g = random_two_connected(10, 25, seed).unwrap();
            if edge_connectivity(&g) >= 4 {
                two_edge_disjoint_spanning_trees(&g)
                    .unwrap()
                    .validate(&g)
                    .unwrap();
                checked += 1;
            }
        }
        assert!(checked > 5);
    }

    #[test]
    fn witness_paths_are_simple_and_valid() {
        for p in Property::ALL {
            for g in [complete(4), complete(6), octahedron()] {
                let (c, pair) = two_tree_color(&g, &p).unwrap();
                assert_eq!(c.k() as usize, 2 * p.alphabet_size());
                let w = two_tree_witnesses(&g, &c, &pair).unwrap();
                assert_eq!(w.witnesses.len(), g.vertex_count() * (g.vertex_count() - 1));
                assert_eq!(verify_witness_set(&g, &c, &w, &p), Ok(()));
            }
        }
    }

    #[test]
    fn witness_rule_cases() {
        let g = complete(4);
        let (_, pair) = two_tree_color(&g, &Property::Nonrepetitive).unwrap();
        for u in 1..4 {
            // towards the root the first tree alone suffices
            assert_eq!(witness_path(&pair, u, 0).unwrap(), pair.t1.path_to_root(u));
        }
        for u in 0..4 {
            for v in (0..4).filter(|&v| v != u) {
                let path = witness_path(&pair, u, v).unwrap();
                assert_eq!((path[0], *path.last().unwrap()), (u, v));
                assert!(g.path_edges(&path).is_some());
            }
        }
    }

    #[test]
    fn layers_share_colors() {
        let g = complete(6);
        let (c, pair) = two_tree_color(&g, &Property::Nonrepetitive).unwrap();
        for tree in [&pair.t1, &pair.t2] {
            for &e in &tree.edges {
                for &f in &tree.edges {
                    if tree.layer(&g, e) == tree.layer(&g, f) {
                        assert_eq!(c.color(e), c.color(f));
                    }
                }
            }
        }
        assert!(pair.t1.edges.iter().all(|&e| c.color(e) <= 3));
        assert!(pair.t2.edges.iter().all(|&e| (4..=6).contains(&c.color(e))));
    }

    #[test]
    fn rejects_properties_without_reversal() {
        assert_eq!(
            two_tree_color(&complete(4), &Forward),
            Err(Error::NotReversalClosed("increasing".into()))
        );
        assert!(matches!(
            two_tree_color(&cycle(5), &Property::Proper),
            Err(Error::NoTreePair { .. })
        ));
    }
}
