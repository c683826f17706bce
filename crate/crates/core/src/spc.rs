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

//! Strongly proper connected colorings built ear by ear.
//!
//! Both constructions orient each ear from its source to its target and
//! keep two per-vertex records: the color on arcs leaving a vertex and the
//! color on arcs entering it. [`color_mod3`] uses three colors on graphs
//! whose cycle lengths are all multiples of three. [`color_spc5`] uses at
//! most five colors on any 2-connected graph.

use std::collections::VecDeque;

use crate::ears::{longest_first_ear_decomposition, open_ear_decomposition, Ear};
use crate::error::{Error, Result};
use crate::graph::{
    is_two_connected, minimal_two_connected_edges, Color, EdgeColoring, EdgeId, Graph, VertexId,
};
use crate::verify::verify_connected_coloring;
use crate::words::Property;

const SPC5_COLORS: Color = 5;

/// One oriented edge of the overlay.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub tail: VertexId,
    pub head: VertexId,
    /// Edge id in the input graph.
    pub edge: EdgeId,
    pub ear: usize,
    /// Index of the arc along its ear, from the source.
    pub position: usize,
}

/// The processed ears, each oriented from source to target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedOverlay {
    pub vertex_count: usize,
    pub arcs: Vec<Arc>,
    pub ear_lengths: Vec<usize>,
    pub in_color: Vec<Option<Color>>,
    pub out_color: Vec<Option<Color>>,
}

impl OrientedOverlay {
    fn new(vertex_count: usize) -> Self {
        OrientedOverlay {
            vertex_count,
            arcs: Vec::new(),
            ear_lengths: Vec::new(),
            in_color: vec![None; vertex_count],
            out_color: vec![None; vertex_count],
        }
    }

    /// Appends `ear` walked from its source, recording colors.
    fn push_ear(&mut self, ear: &Ear, edge_map: &[EdgeId], colors: &[Color]) {
        let index = self.ear_lengths.len();
        self.ear_lengths.push(ear.len());
        for (i, (&e, &c)) in ear.edges.iter().zip(colors).enumerate() {
            let (tail, head) = (ear.vertices[i], ear.vertices[i + 1]);
            self.arcs.push(Arc {
                tail,
                head,
                edge: edge_map[e],
                ear: index,
                position: i,
            });
            self.out_color[tail] = Some(c);
            self.in_color[head] = Some(c);
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.out_color[v].is_some()
    }

    /// Middle arc of an ear with three edges: both ends internal to it.
    pub fn is_short_middle(&self, arc: &Arc) -> bool {
        self.ear_lengths[arc.ear] == 3 && arc.position == 1
    }

    fn shortest_path_len(&self, from: VertexId, to: VertexId) -> Option<usize> {
        let mut out: Vec<Vec<VertexId>> = vec![Vec::new(); self.vertex_count];
        for a in &self.arcs {
            out[a.tail].push(a.head);
        }
        let mut dist = vec![usize::MAX; self.vertex_count];
        dist[from] = 0;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                return Some(dist[x]);
            }
            for &y in &out[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        None
    }

    pub fn is_strongly_connected(&self) -> bool {
        let present: Vec<VertexId> = (0..self.vertex_count)
            .filter(|&v| self.arcs.iter().any(|a| a.tail == v || a.head == v))
            .collect();
        let Some(&root) = present.first() else {
            return true;
        };
        let reach = |forward: bool| {
            let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); self.vertex_count];
            for a in &self.arcs {
                let (x, y) = if forward {
                    (a.tail, a.head)
                } else {
                    (a.head, a.tail)
                };
                adj[x].push(y);
            }
            let mut seen = vec![false; self.vertex_count];
            seen[root] = true;
            let mut stack = vec![root];
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if !std::mem::replace(&mut seen[y], true) {
                        stack.push(y);
                    }
                }
            }
            present.iter().all(|&v| seen[v])
        };
        reach(true) && reach(false)
    }
}

/// Orientation chosen for one ear with two edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShortEar {
    pub ear: usize,
    pub source: VertexId,
    pub middle: VertexId,
    pub target: VertexId,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ShortEarOrientation {
    pub ears: Vec<ShortEar>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverlayMode {
    Mod3,
    Spc5,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlayReport {
    pub out_uniform: bool,
    /// In-colors uniform, and in five-color mode distinct from out-colors.
    pub in_uniform: bool,
    /// Five-color mode only: arcs around a non-middle arc differ.
    pub around_arcs_distinct: Option<bool>,
    /// Three-color mode only: out = in + 1 (mod 3).
    pub local_law: Option<bool>,
    pub strongly_connected: bool,
    pub failures: Vec<String>,
}

impl OverlayReport {
    pub fn all_passed(&self) -> bool {
        self.out_uniform
            && self.in_uniform
            && self.around_arcs_distinct != Some(false)
            && self.local_law != Some(false)
            && self.strongly_connected
    }
}

/// Checks the per-vertex color laws of an overlay against `c`.
pub fn check_overlay_invariants(
    d: &OrientedOverlay,
    c: &EdgeColoring,
    mode: OverlayMode,
) -> OverlayReport {
    let n = d.vertex_count;
    let mut failures = Vec::new();
    let mut out_c: Vec<Option<Color>> = vec![None; n];
    let mut in_c: Vec<Option<Color>> = vec![None; n];
    let mut out_uniform = true;
    let mut in_uniform = true;
    for a in &d.arcs {
        let color = c.color(a.edge);
        if *out_c[a.tail].get_or_insert(color) != color {
            out_uniform = false;
            failures.push(format!("vertex {} has two out-colors", a.tail));
        }
        if *in_c[a.head].get_or_insert(color) != color {
            in_uniform = false;
            failures.push(format!("vertex {} has two in-colors", a.head));
        }
    }
    let mut around = None;
    let mut local_law = None;
    match mode {
        OverlayMode::Spc5 => {
            for v in 0..n {
                if let (Some(i), Some(o)) = (in_c[v], out_c[v]) {
                    if i == o {
                        in_uniform = false;
                        failures.push(format!("vertex {v} has equal in- and out-color {i}"));
                    }
                }
            }
            // with uniform in/out colors, xu and vy carry in(u) and out(v)
            let mut ok = true;
            for a in d.arcs.iter().filter(|a| !d.is_short_middle(a)) {
                if let (Some(i), Some(o)) = (in_c[a.tail], out_c[a.head]) {
                    if i == o {
                        ok = false;
                        failures.push(format!(
                            "arc {}->{}: entering and leaving colors both {i}",
                            a.tail, a.head
                        ));
                    }
                }
            }
            around = Some(ok);
        }
        OverlayMode::Mod3 => {
            let mut ok = true;
            for v in 0..n {
                if let (Some(i), Some(o)) = (in_c[v], out_c[v]) {
                    if o % 3 != (i + 1) % 3 {
                        ok = false;
                        failures.push(format!("vertex {v}: in {i}, out {o}"));
                    }
                }
            }
            local_law = Some(ok);
        }
    }
    let strongly_connected = d.is_strongly_connected();
    if !strongly_connected {
        failures.push("overlay is not strongly connected".into());
    }
    OverlayReport {
        out_uniform,
        in_uniform,
        around_arcs_distinct: around,
        local_law,
        strongly_connected,
        failures,
    }
}

/// Three colors for a 2-connected graph in which every cycle length is a
/// multiple of three. Every directed path of the returned overlay follows
/// the pattern 1,2,3,1,2,3,...; the output is verified before returning.
pub fn color_mod3(g: &Graph) -> Result<(EdgeColoring, OrientedOverlay)> {
    if !is_two_connected(g) {
        return Err(Error::NotTwoConnected);
    }
    let ed = open_ear_decomposition(g)?;
    let identity: Vec<EdgeId> = (0..g.edge_count()).collect();
    let mut colors = vec![0; g.edge_count()];
    let mut d = OrientedOverlay::new(g.vertex_count());
    let next = |c: Color| c % 3 + 1;
    for (i, ear) in ed.ears.iter().enumerate() {
        let reject = |reason: String| Error::Mod3Rejected { ear: i, reason };
        if ear.len() % 3 != 0 {
            return Err(reject(format!(
                "ear length {} is not a multiple of 3",
                ear.len()
            )));
        }
        let first = if ear.is_cycle {
            1
        } else {
            let (s, t) = (ear.source(), ear.target());
            let dist = d
                .shortest_path_len(s, t)
                .ok_or_else(|| Error::Invariant(format!("no arc path {s}->{t}")))?;
            if dist % 3 != 0 {
                return Err(reject(format!("existing {s}-{t} path has length {dist}")));
            }
            d.out_color[s].expect("source lies in the overlay")
        };
        let mut ear_colors = Vec::with_capacity(ear.len());
        let mut c = first;
        for _ in 0..ear.len() {
            ear_colors.push(c);
            c = next(c);
        }
        if !ear.is_cycle {
            let t = ear.target();
            if d.in_color[t] != ear_colors.last().copied() {
                return Err(reject(format!("ear would break the pattern at {t}")));
            }
        }
        for (&e, &c) in ear.edges.iter().zip(&ear_colors) {
            colors[e] = c;
        }
        d.push_ear(ear, &identity, &ear_colors);
    }
    let coloring = EdgeColoring::new(colors, 3)?;
    let report = check_overlay_invariants(&d, &coloring, OverlayMode::Mod3);
    if !report.all_passed() {
        return Err(Error::Invariant(report.failures.join("; ")));
    }
    if let Some(&(u, v)) = verify_connected_coloring(g, &coloring, &Property::Strong)?
        .failing_pairs
        .first()
    {
        return Err(Error::Mod3Rejected {
            ear: ed.ears.len(),
            reason: format!("pair ({u}, {v}) has no strongly proper path"),
        });
    }
    Ok((coloring, d))
}

/// Lexicographically smallest cyclic coloring over `1..=k` in which any two
/// edges at cyclic distance at most 2 differ.
fn color_base_cycle(len: usize, k: Color) -> Option<Vec<Color>> {
    fn fits(colors: &[Color], len: usize, c: Color) -> bool {
        let i = colors.len();
        let back = (1..=2).filter(|&d| d <= i).all(|d| colors[i - d] != c);
        // the last two edges also precede the first two around the cycle
        let wrap = (1..=2)
            .filter(|&d| i + d >= len && i + d - len < i)
            .all(|d| colors[i + d - len] != c);
        back && wrap
    }
    fn go(colors: &mut Vec<Color>, len: usize, k: Color) -> bool {
        if colors.len() == len {
            return true;
        }
        for c in 1..=k {
            if fits(colors, len, c) {
                colors.push(c);
                if go(colors, len, k) {
                    return true;
                }
                colors.pop();
            }
        }
        false
    }
    let mut colors = Vec::with_capacity(len);
    go(&mut colors, len, k).then_some(colors)
}

/// At most five colors for any 2-connected graph: colors a minimally
/// 2-connected spanning subgraph `H` through its longest-first ear
/// decomposition and gives every edge outside `H` color 1.
pub fn color_spc5(g: &Graph) -> Result<(EdgeColoring, OrientedOverlay, ShortEarOrientation)> {
    let kept = minimal_two_connected_edges(g)?;
    let h = g.edge_subgraph(&kept);
    let ed = longest_first_ear_decomposition(&h)?;
    let Some(last_long) = ed.ears.iter().rposition(|e| e.len() >= 3) else {
        return Err(Error::Invariant(
            "decomposition has no ear with 3 edges".into(),
        ));
    };

    let mut colors = vec![1; g.edge_count()];
    let mut d = OrientedOverlay::new(g.vertex_count());
    for ear in &ed.ears[..=last_long] {
        let ear_colors = if ear.is_cycle {
            color_base_cycle(ear.len(), SPC5_COLORS)
                .ok_or_else(|| Error::Invariant(format!("no base coloring of C_{}", ear.len())))?
        } else {
            color_long_ear(&d, ear)?
        };
        for (&e, &c) in ear.edges.iter().zip(&ear_colors) {
            colors[kept[e]] = c;
        }
        d.push_ear(ear, &kept, &ear_colors);
    }

    let coloring = EdgeColoring::from_colors(colors.clone())?;
    let report = check_overlay_invariants(&d, &coloring, OverlayMode::Spc5);
    if !report.all_passed() {
        return Err(Error::Invariant(report.failures.join("; ")));
    }

    // a vertex entered by (resp. leaving along) a middle arc is barred as
    // the source (resp. target) of a two-edge ear
    let mut middle_head = vec![false; g.vertex_count()];
    let mut middle_tail = vec![false; g.vertex_count()];
    for a in d.arcs.iter().filter(|a| d.is_short_middle(a)) {
        middle_head[a.head] = true;
        middle_tail[a.tail] = true;
    }
    let mut short = ShortEarOrientation::default();
    for (i, ear) in ed.ears.iter().enumerate().skip(last_long + 1) {
        let (s, v, t) = (ear.vertices[0], ear.vertices[1], ear.vertices[2]);
        let admissible = |a: VertexId, b: VertexId| !middle_head[a] && !middle_tail[b];
        let (s2, t2) = if admissible(s, t) {
            (s, t)
        } else if admissible(t, s) {
            (t, s)
        } else {
            return Err(Error::Invariant(format!(
                "no orientation for two-edge ear {i}"
            )));
        };
        let (Some(out_s), Some(in_t)) = (d.out_color[s2], d.in_color[t2]) else {
            return Err(Error::Invariant(format!(
                "two-edge ear {i} leaves the overlay"
            )));
        };
        let first = h.edge_between(s2, v).expect("ear edge");
        let second = h.edge_between(v, t2).expect("ear edge");
        colors[kept[first]] = out_s;
        colors[kept[second]] = in_t;
        short.ears.push(ShortEar {
            ear: i,
            source: s2,
            middle: v,
            target: t2,
        });
    }

    let coloring = EdgeColoring::from_colors(colors)?;
    Ok((coloring, d, short))
}

/// Colors an ear with at least three edges: the first arc copies the
/// out-color of the source, the last copies the in-color of the target, and
/// each remaining arc takes the smallest color unlike every colored arc
/// within distance two along the extended path w, s, ..., t, x.
fn color_long_ear(d: &OrientedOverlay, ear: &Ear) -> Result<Vec<Color>> {
    let (s, t) = (ear.source(), ear.target());
    let missing = |v| Error::Invariant(format!("ear endpoint {v} is outside the overlay"));
    let in_s = d.in_color[s].ok_or_else(|| missing(s))?;
    let out_s = d.out_color[s].ok_or_else(|| missing(s))?;
    let in_t = d.in_color[t].ok_or_else(|| missing(t))?;
    let out_t = d.out_color[t].ok_or_else(|| missing(t))?;
    let len = ear.len();
    // extended path: position 0 is w->s, len + 1 is t->x
    let mut ext: Vec<Option<Color>> = vec![None; len + 2];
    ext[0] = Some(in_s);
    ext[1] = Some(out_s);
    ext[len] = Some(in_t);
    ext[len + 1] = Some(out_t);
    for j in 2..len {
        let near = [j - 2, j - 1, j + 1, j + 2];
        let c = (1..=SPC5_COLORS)
            .find(|&c| near.iter().all(|&q| ext[q] != Some(c)))
            .ok_or_else(|| Error::Invariant(format!("no free color at arc {j}")))?;
        ext[j] = Some(c);
    }
    Ok(ext[1..=len].iter().map(|c| c.unwrap()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructs::{
        build_mod3, build_mod3_random, complete, cycle, decagon_with_ears, dodecagon_with_ears,
        random_min_two_connected, random_two_connected,
    };
    use crate::words::is_strongly_proper;

    fn strongly_connected(g: &Graph, c: &EdgeColoring) -> bool {
        verify_connected_coloring(g, c, &Property::Strong)
            .unwrap()
            .connected
    }

    #[test]
    fn mod3_on_cycle() {
        let g = cycle(12);
        let (c, d) = color_mod3(&g).unwrap();
        assert_eq!(c.colors(), &[1, 2, 3, 1, 2, 3, 1, 2, 3, 1, 2, 3]);
        assert!(check_overlay_invariants(&d, &c, OverlayMode::Mod3).all_passed());
        assert!(strongly_connected(&g, &c));
    }

    #[test]
    fn mod3_on_subdivisions() {
        let g = build_mod3(&complete(4), &[1; 6]).unwrap();
        let (c, d) = color_mod3(&g).unwrap();
        assert_eq!(c.distinct_colors(), 3);
        assert!(check_overlay_invariants(&d, &c, OverlayMode::Mod3).all_passed());
        assert!(strongly_connected(&g, &c));
        for seed in 0..5 {
            let g = build_mod3_random(&complete(4), 3, seed).unwrap();
            let (c, _) = color_mod3(&g).unwrap();
            assert!(strongly_connected(&g, &c));
        }
        let g = dodecagon_with_ears();
        let (c, d) = color_mod3(&g).unwrap();
        assert_eq!(d.ear_lengths, vec![12, 6, 3, 3]);
        assert!(strongly_connected(&g, &c));
    }

    #[test]
    fn mod3_rejects_other_graphs() {
        assert!(matches!(
            color_mod3(&cycle(7)),
            Err(Error::Mod3Rejected { ear: 0, .. })
        ));
        assert!(matches!(
            color_mod3(&complete(4)),
            Err(Error::Mod3Rejected { .. })
        ));
        // ear lengths are multiples of 3 but the attachment is not
        let g = crate::constructs::theta(&[3, 3, 3]).unwrap();
        assert!(color_mod3(&g).is_ok());
        let g = Graph::from_edges(
            9,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 0),
                (0, 6),
                (6, 7),
                (7, 8),
                (8, 1),
            ],
        )
        .unwrap();
        assert!(matches!(
            color_mod3(&g),
            Err(Error::Mod3Rejected { ear: 1, .. })
        ));
        assert!(matches!(
            color_mod3(&crate::constructs::path(4)),
            Err(Error::NotTwoConnected)
        ));
    }

    #[test]
    fn base_cycle_colorings() {
        assert_eq!(color_base_cycle(5, 5).unwrap(), vec![1, 2, 3, 4, 5]);
        assert_eq!(color_base_cycle(6, 5).unwrap(), vec![1, 2, 3, 1, 2, 3]);
        assert_eq!(color_base_cycle(4, 5).unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(color_base_cycle(5, 4), None);
        for len in 3..40 {
            let c = color_base_cycle(len, 5).unwrap();
            let twice: Vec<Color> = c.iter().chain(&c).copied().collect();
            assert!(is_strongly_proper(&twice), "C_{len}");
        }
    }

    #[test]
    fn spc5_on_cycles() {
        let (c, _, _) = color_spc5(&cycle(5)).unwrap();
        assert_eq!(c.colors(), &[1, 2, 3, 4, 5]);
        let (c, _, _) = color_spc5(&cycle(6)).unwrap();
        assert_eq!(c.colors(), &[1, 2, 3, 1, 2, 3]);
    }

    #[test]
    fn spc5_on_fixed_graphs() {
        for g in [
            decagon_with_ears(),
            dodecagon_with_ears(),
            complete(5),
            complete(4),
        ] {
            let (c, d, _) = color_spc5(&g).unwrap();
            assert!(c.max_color() <= 5);
            assert!(check_overlay_invariants(&d, &c, OverlayMode::Spc5).all_passed());
            assert!(strongly_connected(&g, &c));
        }
        let (_, d, short) = color_spc5(&decagon_with_ears()).unwrap();
        assert_eq!(d.ear_lengths, vec![10, 4, 3]);
        assert_eq!(d.arcs.len(), 17);
        assert_eq!(short.ears.len(), 1);
    }

    #[test]
    fn spc5_on_random_graphs() {
        for seed in 0..25 {
            let g = random_two_connected(14, 8, seed).unwrap();
            let (c, d, _) = color_spc5(&g).unwrap();
            assert!(c.max_color() <= 5);
            let report = check_overlay_invariants(&d, &c, OverlayMode::Spc5);
            assert!(report.all_passed(), "{:?}", report.failures);
            assert!(strongly_connected(&g, &c), "seed {seed}");
            let h = random_min_two_connected(16, 10, seed).unwrap();
            let (c, d, short) = color_spc5(&h).unwrap();
            assert_eq!(d.arcs.len(), d.ear_lengths.iter().sum::<usize>());
            assert_eq!(d.arcs.len() + 2 * short.ears.len(), h.edge_count());
            assert!(strongly_connected(&h, &c), "seed {seed}");
        }
    }

    #[test]
    fn long_ears_are_locally_rainbow() {
        for seed in 0..20 {
            let g = random_min_two_connected(18, 10, seed).unwrap();
            let (c, d, _) = color_spc5(&g).unwrap();
            for (i, &len) in d.ear_lengths.iter().enumerate().skip(1) {
                let seq: Vec<Color> = d
                    .arcs
                    .iter()
                    .filter(|a| a.ear == i)
                    .map(|a| c.color(a.edge))
                    .collect();
                assert_eq!(seq.len(), len);
                if len == 3 {
                    assert!(seq[0] != seq[1] && seq[1] != seq[2]);
                } else {
                    assert!(is_strongly_proper(&seq));
                }
            }
        }
    }

    #[test]
    fn mutation_breaks_overlay_checks() {
        let g = decagon_with_ears();
        let (mut c, d, _) = color_spc5(&g).unwrap();
        let arc = d.arcs[3];
        c.set(arc.edge, c.color(arc.edge) % 5 + 1);
        assert!(!check_overlay_invariants(&d, &c, OverlayMode::Spc5).all_passed());

        let (mut c, d) = color_mod3(&cycle(12)).unwrap();
        c.set(d.arcs[0].edge, 2);
        let report = check_overlay_invariants(&d, &c, OverlayMode::Mod3);
        assert!(!report.all_passed());
        assert!(!report.out_uniform || !report.in_uniform || report.local_law == Some(false));
    }
}
