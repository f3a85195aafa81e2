//! Exact shortest paths with arbitrary-precision weights.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigUint;

use crate::embed::{AnchorFaces, DualGraph, FaceId, Side};
use crate::graph::{IndexedMultigraph, VertexId};

/// Single-source result: distances (`None` = unreachable) and, per vertex,
/// the edge used to reach it.
#[derive(Debug, Clone)]
pub struct ShortestPaths {
    pub source: VertexId,
    pub dist: Vec<Option<BigUint>>,
    pub via: Vec<Option<usize>>,
}

impl ShortestPaths {
    /// Edge indices of the recorded path from the source to `target`.
    pub fn path_to(&self, g: &IndexedMultigraph, target: VertexId) -> Option<Vec<usize>> {
        self.dist[target].as_ref()?;
        let mut edges = Vec::new();
        let mut x = target;
        while x != self.source {
            let e = self.via[x]?;
            edges.push(e);
            x = g.other_end(e, x);
        }
        edges.reverse();
        Some(edges)
    }
}

/// Dijkstra from `source`, never using edges for which `blocked` is true.
/// Ties are broken by vertex id, then by edge index, so paths are
/// reproducible.
pub fn dijkstra(
    g: &IndexedMultigraph,
    weights: &[BigUint],
    source: VertexId,
    blocked: impl Fn(usize) -> bool,
) -> ShortestPaths {
    let n = g.vertex_count();
    let mut dist: Vec<Option<BigUint>> = vec![None; n];
    let mut via = vec![None; n];
    let mut done = vec![false; n];
    dist[source] = Some(BigUint::default());
    let mut heap = BinaryHeap::from([Reverse((BigUint::default(), source))]);
    while let Some(Reverse((d, x))) = heap.pop() {
        if done[x] {
            continue;
        }
        done[x] = true;
        for &e in g.incident(x) {
            if blocked(e) {
                continue;
            }
            let y = g.other_end(e, x);
            if done[y] {
                continue;
            }
            let cand = &d + &weights[e];
            let better = match &dist[y] {
                None => true,
                Some(cur) => cand < *cur,
            };
            if better {
                dist[y] = Some(cand.clone());
                via[y] = Some(e);
                heap.push(Reverse((cand, y)));
            }
        }
    }
    ShortestPaths { source, dist, via }
}

/// All-pairs face distances plus the terminal-neighbor distances
/// `d(w_i, F) = min(d(F_w, F), d(F_{w_i}, F))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    dist: Vec<Vec<BigUint>>,
    u_terminal: [Vec<BigUint>; 3],
    v_terminal: [Vec<BigUint>; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("dual graph is disconnected: face {0} cannot reach face {1}")]
pub struct DisconnectedDual(pub FaceId, pub FaceId);

impl DistanceTable {
    /// One Dijkstra run per source face.
    pub fn compute(
        dual: &DualGraph,
        weights: &[BigUint],
        anchors: &AnchorFaces,
    ) -> Result<DistanceTable, DisconnectedDual> {
        let f = dual.face_count();
        let mut dist = Vec::with_capacity(f);
        for s in 0..f {
            let sp = dijkstra(dual.graph(), weights, s, |_| false);
            let row = sp
                .dist
                .into_iter()
                .enumerate()
                .map(|(t, d)| d.ok_or(DisconnectedDual(s, t)))
                .collect::<Result<Vec<_>, _>>()?;
            dist.push(row);
        }
        let terminal = |base: FaceId, second: [FaceId; 3]| -> [Vec<BigUint>; 3] {
            second.map(|other| {
                (0..f).map(|x| dist[base][x].clone().min(dist[other][x].clone())).collect()
            })
        };
        let u_terminal = terminal(anchors.face_u, anchors.u_faces);
        let v_terminal = terminal(anchors.face_v, anchors.v_faces);
        Ok(DistanceTable { dist, u_terminal, v_terminal })
    }

    pub fn face_count(&self) -> usize {
        self.dist.len()
    }

    pub fn between(&self, a: FaceId, b: FaceId) -> &BigUint {
        &self.dist[a][b]
    }

    /// Distance from the `i`-th neighbor (0-based) of the terminal on `side`
    /// to face `f`.
    pub fn terminal(&self, side: Side, i: usize, f: FaceId) -> &BigUint {
        match side {
            Side::U => &self.u_terminal[i][f],
            Side::V => &self.v_terminal[i][f],
        }
    }

    pub fn rows(&self) -> &[Vec<BigUint>] {
        &self.dist
    }
}

/// Convenience wrapper matching the pipeline vocabulary.
pub fn all_pairs_distances(
    dual: &DualGraph,
    weights: &[BigUint],
    anchors: &AnchorFaces,
) -> Result<DistanceTable, DisconnectedDual> {
    DistanceTable::compute(dual, weights, anchors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::{planar_embedding, FaceSet};
    use crate::families;

    /// Floyd–Warshall over the same multigraph.
    fn floyd(g: &IndexedMultigraph, w: &[BigUint]) -> Vec<Vec<Option<BigUint>>> {
        let n = g.vertex_count();
        let mut d: Vec<Vec<Option<BigUint>>> = vec![vec![None; n]; n];
        for (x, row) in d.iter_mut().enumerate() {
            row[x] = Some(BigUint::default());
        }
        for e in 0..g.edge_count() {
            let (a, b) = g.ends(e);
            for (p, q) in [(a, b), (b, a)] {
                if d[p][q].as_ref().is_none_or(|c| w[e] < *c) {
                    d[p][q] = Some(w[e].clone());
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if let (Some(a), Some(b)) = (&d[i][k], &d[k][j]) {
                        let c = a + b;
                        if d[i][j].as_ref().is_none_or(|cur| c < *cur) {
                            d[i][j] = Some(c);
                        }
                    }
                }
            }
        }
        d
    }

    fn octahedron() -> IndexedMultigraph {
        let fs = FaceSet::trace(&planar_embedding(&families::cube()).unwrap()).unwrap();
        crate::embed::DualGraph::new(&fs).unwrap().graph().clone()
    }

    #[test]
    fn octahedron_unit_distances() {
        let g = octahedron();
        let w = vec![BigUint::from(1u32); g.edge_count()];
        for s in 0..6 {
            let sp = dijkstra(&g, &w, s, |_| false);
            let mut counts = [0; 3];
            for d in sp.dist.iter().flatten() {
                counts[usize::try_from(d).unwrap()] += 1;
            }
            assert_eq!(counts, [1, 4, 1]);
        }
    }

    #[test]
    fn matches_floyd_with_heavy_edge() {
        let g = octahedron();
        let mut w = vec![BigUint::from(1u32); g.edge_count()];
        w[0] = BigUint::from(10u32);
        w[5] = BigUint::from(3u32);
        let oracle = floyd(&g, &w);
        for s in 0..g.vertex_count() {
            let sp = dijkstra(&g, &w, s, |_| false);
            assert_eq!(sp.dist, oracle[s]);
            for t in 0..g.vertex_count() {
                let path = sp.path_to(&g, t).unwrap();
                let len: BigUint = path.iter().map(|&e| &w[e]).sum();
                assert_eq!(Some(len), oracle[s][t]);
            }
        }
        // The heavy edge is bypassed: its endpoints end up at distance 2.
        let (a, b) = g.ends(0);
        assert_eq!(oracle[a][b], Some(BigUint::from(2u32)));
    }

    #[test]
    fn blocked_edges_are_avoided() {
        let g = IndexedMultigraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let w = vec![BigUint::from(1u32); 3];
        let sp = dijkstra(&g, &w, 0, |e| e == 2);
        assert_eq!(sp.dist[2], Some(BigUint::from(2u32)));
        assert_eq!(sp.path_to(&g, 2), Some(vec![0, 1]));
    }

    #[test]
    fn parallel_edges_take_the_lighter_copy() {
        let g = IndexedMultigraph::new(2, [(0, 1), (1, 0)]).unwrap();
        let w = vec![BigUint::from(5u32), BigUint::from(2u32)];
        let sp = dijkstra(&g, &w, 0, |_| false);
        assert_eq!(sp.dist[1], Some(BigUint::from(2u32)));
        assert_eq!(sp.via[1], Some(1));
    }
}
