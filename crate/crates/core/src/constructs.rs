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

//! Graph families: small named graphs, the girth family with a four-color
//! lower bound, mod-3 subdivisions and seeded random 2-connected graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{
    edge_connectivity, is_two_connected, minimally_two_connected_spanning, Graph, VertexId,
};

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Path on `n` vertices.
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n.max(1), &edges).unwrap()
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// `K_{a,b}` with the `a` side numbered first.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::new(a + b);
    for u in 0..a {
        for v in a..a + b {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// `K_6` minus a perfect matching.
pub fn octahedron() -> Graph {
    let mut g = Graph::new(6);
    for u in 0..6 {
        for v in u + 1..6 {
            if v != u + 3 {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Two vertices joined by internally disjoint paths of the given lengths.
pub fn theta(lengths: &[usize]) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut next = 2;
    for &len in lengths {
        if len == 0 {
            return Err(Error::InvalidParameter("theta arm of length 0".into()));
        }
        let mut prev = 0;
        for _ in 1..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, 1));
    }
    Graph::from_edges(next, &edges)
}

/// A 10-cycle `0..=9` with ears `0-10-11-12-4`, `9-13-14-5` and `1-15-3`
/// (ear lengths 10, 4, 3, 2). Minimally 2-connected.
pub fn decagon_with_ears() -> Graph {
    let mut edges: Vec<_> = (0..10).map(|i| (i, (i + 1) % 10)).collect();
    edges.extend([(0, 10), (10, 11), (11, 12), (12, 4)]);
    edges.extend([(9, 13), (13, 14), (14, 5)]);
    edges.extend([(1, 15), (15, 3)]);
    Graph::from_edges(16, &edges).unwrap()
}

/// A 12-cycle `0..=11` with ears `0-12-..-16-3` (length 6), `11-17-18-8`
/// and `14-19-20-6` (length 3 each). Every cycle has length divisible by 3.
pub fn dodecagon_with_ears() -> Graph {
    let mut edges: Vec<_> = (0..12).map(|i| (i, (i + 1) % 12)).collect();
    edges.extend([(0, 12), (12, 13), (13, 14), (14, 15), (15, 16), (16, 3)]);
    edges.extend([(11, 17), (17, 18), (18, 8)]);
    edges.extend([(14, 19), (19, 20), (20, 6)]);
    Graph::from_edges(21, &edges).unwrap()
}

/// Parameters of the girth family: both path multipliers must be at least
/// `max(3, girth / 3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GdParameters {
    pub a: usize,
    pub b: usize,
    pub girth: usize,
}

impl GdParameters {
    pub fn new(a: usize, b: usize, girth: usize) -> Result<Self> {
        let params = GdParameters { a, b, girth };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [("a", self.a), ("b", self.b)] {
            if value < 3 || 3 * value < self.girth {
                return Err(Error::InvalidParameter(format!(
                    "{name} = {value} must be at least max(3, {}/3)",
                    self.girth
                )));
            }
        }
        Ok(())
    }
}

/// The girth-family graph together with its terminal labels.
#[derive(Debug, Clone)]
pub struct GdGraph {
    pub graph: Graph,
    pub params: GdParameters,
    /// `x1, w1, x2, w2, x3, w3`.
    pub terminals: [VertexId; 6],
    /// Vertex sequences of the six connecting paths, `P1..P6`.
    pub paths: Vec<Vec<VertexId>>,
}

impl GdGraph {
    pub fn labels(&self) -> Vec<(String, VertexId)> {
        const NAMES: [&str; 6] = ["x1", "w1", "x2", "w2", "x3", "w3"];
        NAMES
            .iter()
            .zip(self.terminals)
            .map(|(name, v)| (name.to_string(), v))
            .collect()
    }
}

/// Three bridge edges `x_i w_i` and six paths: `P1, P2` from `w1` to `x2`,
/// `P3, P4` from `w2` to `x3`, `P5, P6` from `w3` to `x1`; odd-numbered paths
/// have length `3a + 1`, even-numbered ones `3b`.
pub fn build_gd(params: GdParameters) -> Result<GdGraph> {
    params.validate()?;
    let (x1, w1, x2, w2, x3, w3) = (0, 1, 2, 3, 4, 5);
    let mut edges = vec![(x1, w1), (x2, w2), (x3, w3)];
    let mut next = 6;
    let mut paths = Vec::with_capacity(6);
    let spans = [(w1, x2), (w2, x3), (w3, x1)];
    for &(from, to) in &spans {
        for len in [3 * params.a + 1, 3 * params.b] {
            let mut p = vec![from];
            for _ in 1..len {
                p.push(next);
                next += 1;
            }
            p.push(to);
            edges.extend(p.windows(2).map(|w| (w[0], w[1])));
            paths.push(p);
        }
    }
    Ok(GdGraph {
        graph: Graph::from_edges(next, &edges)?,
        params,
        terminals: [x1, w1, x2, w2, x3, w3],
        paths,
    })
}

/// Subdivides every edge of a (multi)graph into a path of length
/// `3 * factors[i]`; every cycle of the result has length divisible by 3.
///
/// Parallel base edges are allowed. The result must be 2-connected.
pub fn build_mod3_from_edges(
    vertex_count: usize,
    base_edges: &[(VertexId, VertexId)],
    factors: &[usize],
) -> Result<Graph> {
    if factors.len() != base_edges.len() {
        return Err(Error::InvalidParameter(format!(
            "{} factors for {} base edges",
            factors.len(),
            base_edges.len()
        )));
    }
    if factors.contains(&0) {
        return Err(Error::InvalidParameter(
            "subdivision factor must be positive".into(),
        ));
    }
    let mut next = vertex_count;
    let mut edges = Vec::new();
    for (&(u, v), &f) in base_edges.iter().zip(factors) {
        if u >= vertex_count || v >= vertex_count {
            return Err(Error::InvalidGraph(format!(
                "base edge ({u}, {v}) out of range"
            )));
        }
        let mut prev = u;
        for _ in 1..3 * f {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, v));
    }
    let g = Graph::from_edges(next, &edges)?;
    if !is_two_connected(&g) {
        return Err(Error::NotTwoConnected);
    }
    Ok(g)
}

pub fn build_mod3(base: &Graph, factors: &[usize]) -> Result<Graph> {
    build_mod3_from_edges(base.vertex_count(), base.edges(), factors)
}

/// [`build_mod3`] with factors drawn uniformly from `1..=max_factor`.
pub fn build_mod3_random(base: &Graph, max_factor: usize, seed: u64) -> Result<Graph> {
    if max_factor == 0 {
        return Err(Error::InvalidParameter(
            "max factor must be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let factors: Vec<usize> = (0..base.edge_count())
        .map(|_| rng.gen_range(1..=max_factor))
        .collect();
    build_mod3(base, &factors)
}

/// A random Hamiltonian cycle plus `extra_edges` distinct random chords,
/// with the edge order shuffled.
pub fn random_two_connected(n: usize, extra_edges: usize, seed: u64) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("need n >= 3, got {n}")));
    }
    let capacity = n * (n - 1) / 2 - n;
    if extra_edges > capacity {
        return Err(Error::InvalidParameter(format!(
            "{extra_edges} chords requested but only {capacity} available on {n} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut on_cycle = vec![vec![false; n]; n];
    let mut edges = Vec::with_capacity(n + extra_edges);
    for i in 0..n {
        let (u, v) = (order[i], order[(i + 1) % n]);
        on_cycle[u][v] = true;
        on_cycle[v][u] = true;
        edges.push((u.min(v), u.max(v)));
    }
    let mut chords: Vec<(VertexId, VertexId)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !on_cycle[u][v])
        .collect();
    chords.shuffle(&mut rng);
    edges.extend_from_slice(&chords[..extra_edges]);
    edges.shuffle(&mut rng);
    Graph::from_edges(n, &edges)
}

/// A random Hamiltonian cycle plus random chords, added one at a time
/// until the edge connectivity reaches `lambda`.
pub fn random_edge_connected(n: usize, lambda: usize, seed: u64) -> Result<Graph> {
    if n < 3 || lambda >= n {
        return Err(Error::InvalidParameter(format!(
            "edge connectivity {lambda} is out of reach on {n} vertices"
        )));
    }
    let capacity = n * (n - 1) / 2 - n;
    let mut lo = 0;
    let mut hi = capacity;
    // connectivity is monotone in the number of chords drawn from one shuffle
    while lo < hi {
        let mid = (lo + hi) / 2;
        if edge_connectivity(&random_two_connected(n, mid, seed)?) >= lambda {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    random_two_connected(n, lo, seed)
}

pub fn random_min_two_connected(n: usize, extra_edges: usize, seed: u64) -> Result<Graph> {
    minimally_two_connected_spanning(&random_two_connected(n, extra_edges, seed)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{girth, is_bipartite, is_minimally_two_connected, vertex_connectivity};

    #[test]
    fn gd_counts_match_path_lengths() {
        let gd = build_gd(GdParameters::new(3, 3, 3).unwrap()).unwrap();
        assert_eq!(gd.graph.vertex_count(), 57);
        assert_eq!(gd.graph.edge_count(), 60);
        assert_eq!(girth(&gd.graph), Some(19));
        assert!(is_two_connected(&gd.graph));
        assert_eq!(vertex_connectivity(&gd.graph), 2);
        assert_eq!(edge_connectivity(&gd.graph), 2);
        assert_eq!(
            gd.paths.iter().map(|p| p.len() - 1).collect::<Vec<_>>(),
            [10, 9, 10, 9, 10, 9]
        );
        assert!(!is_bipartite(&gd.graph));
    }

    #[test]
    fn gd_parameters_are_checked() {
        assert!(GdParameters::new(2, 3, 3).is_err());
        assert!(GdParameters::new(3, 3, 10).is_err());
        assert!(GdParameters::new(4, 4, 12).is_ok());
    }

    #[test]
    fn gd_family_has_bipartite_members() {
        let found = (3..8)
            .flat_map(|a| (3..8).map(move |b| (a, b)))
            .filter(|&(a, b)| {
                let gd = build_gd(GdParameters::new(a, b, 3).unwrap()).unwrap();
                is_bipartite(&gd.graph)
            })
            .collect::<Vec<_>>();
        assert!(found.contains(&(4, 3)));
        // bipartite exactly when a is even and b is odd
        assert!(found.iter().all(|&(a, b)| a % 2 == 0 && b % 2 == 1));
    }

    #[test]
    fn mod3_subdivision_counts() {
        let g = build_mod3(&complete(4), &[1; 6]).unwrap();
        assert_eq!(g.vertex_count(), 16);
        assert_eq!(g.edge_count(), 18);
        assert_eq!(build_mod3(&cycle(4), &[1; 4]).unwrap().edge_count(), 12);
        assert!(build_mod3(&complete(4), &[1, 1, 0, 1, 1, 1]).is_err());
        // a doubled edge is a valid 2-connected base multigraph
        let digon = build_mod3_from_edges(2, &[(0, 1), (0, 1)], &[1, 2]).unwrap();
        assert_eq!(digon.edge_count(), 9);
        assert!(build_mod3(&path(3), &[1, 1]).is_err());
    }

    #[test]
    fn random_generators() {
        assert_eq!(random_two_connected(3, 0, 1).unwrap().edge_count(), 3);
        let g = random_two_connected(20, 10, 7).unwrap();
        assert!(is_two_connected(&g));
        assert_eq!(g.edge_count(), 30);
        assert!(random_two_connected(5, 11, 0).is_err());
        assert!(random_two_connected(5, 5, 0).is_ok());
        assert_eq!(random_two_connected(20, 10, 7).unwrap(), g);

        let h = random_min_two_connected(12, 6, 3).unwrap();
        assert!(is_minimally_two_connected(&h));
        assert_eq!(random_min_two_connected(3, 0, 9).unwrap().edge_count(), 3);
    }

    #[test]
    fn named_graphs() {
        assert_eq!(octahedron().edge_count(), 12);
        assert_eq!(edge_connectivity(&octahedron()), 4);
        let t = theta(&[3, 3, 3]).unwrap();
        assert_eq!((t.vertex_count(), t.edge_count()), (8, 9));
    }

    #[test]
    fn edge_connected_generator() {
        for seed in 0..5 {
            let g = random_edge_connected(12, 4, seed).unwrap();
            assert!(edge_connectivity(&g) >= 4);
            let sparser = random_two_connected(12, g.edge_count() - 13, seed).unwrap();
            assert!(edge_connectivity(&sparser) < 4);
        }
        assert!(random_edge_connected(5, 5, 0).is_err());
    }
}
