//! Small named graphs used by tests, the acceptance suite and the CLI demos.

use crate::graph::{SimpleGraph, VertexId};

pub fn complete(n: usize) -> SimpleGraph {
    let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
    SimpleGraph::new(n, pairs).unwrap()
}

pub fn cycle(n: usize) -> SimpleGraph {
    SimpleGraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

/// The 3-cube; vertices are 3-bit words, adjacent when they differ in one bit.
pub fn cube() -> SimpleGraph {
    let pairs = (0..8usize).flat_map(|a| (0..3).map(move |k| (a, a ^ (1 << k)))).filter(|(a, b)| a < b);
    SimpleGraph::new(8, pairs).unwrap()
}

/// Generalized Petersen graph GP(n, k): outer cycle `0..n`, inner vertices
/// `n..2n` with `n+i ~ n+(i+k)`.
pub fn generalized_petersen(n: usize, k: usize) -> SimpleGraph {
    let mut pairs = Vec::new();
    for i in 0..n {
        pairs.push((i, (i + 1) % n));
        pairs.push((i, n + i));
        pairs.push((n + i, n + (i + k) % n));
    }
    pairs.sort_unstable_by_key(|&(a, b)| (a.min(b), a.max(b)));
    pairs.dedup_by_key(|p| (p.0.min(p.1), p.0.max(p.1)));
    SimpleGraph::new(2 * n, pairs).unwrap()
}

pub fn dodecahedron() -> SimpleGraph {
    generalized_petersen(10, 2)
}

/// C_n × K_2.
pub fn prism(n: usize) -> SimpleGraph {
    generalized_petersen(n, 1)
}

/// Two `k`-gon caps, each ringed by `k` pentagons, joined along a middle
/// `2k`-cycle. `barrel(5)` is the dodecahedron and `barrel(6)` the
/// 24-vertex fullerene.
pub fn barrel(k: usize) -> SimpleGraph {
    // a_i = i, c_j = k + j, d_i = 3k + i.
    let c = |j: usize| k + j % (2 * k);
    let mut pairs = Vec::new();
    for i in 0..k {
        pairs.push((i, (i + 1) % k));
        pairs.push((3 * k + i, 3 * k + (i + 1) % k));
        pairs.push((i, c(2 * i)));
        pairs.push((c(2 * i + 1), 3 * k + i));
    }
    for j in 0..2 * k {
        pairs.push((c(j), c(j + 1)));
    }
    SimpleGraph::new(4 * k, pairs).unwrap()
}

/// Replaces every vertex of a cubic graph by a triangle.
pub fn truncate(g: &SimpleGraph) -> SimpleGraph {
    // Corner (v, slot) gets id 3v + slot, slot = position of the neighbor in
    // v's sorted adjacency list.
    let slot = |v: VertexId, w: VertexId| g.neighbors(v).iter().position(|&x| x == w).unwrap();
    let mut pairs = Vec::new();
    for v in g.vertices() {
        assert_eq!(g.degree(v), 3, "truncation needs a cubic graph");
        pairs.extend([(3 * v, 3 * v + 1), (3 * v + 1, 3 * v + 2), (3 * v, 3 * v + 2)]);
    }
    for e in g.edges() {
        let (a, b) = e.ends();
        pairs.push((3 * a + slot(a, b), 3 * b + slot(b, a)));
    }
    SimpleGraph::new(3 * g.vertex_count(), pairs).unwrap()
}

/// Vertices at maximum graph distance from `v`.
pub fn farthest_from(g: &SimpleGraph, v: VertexId) -> Vec<VertexId> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[v] = 0;
    let mut queue = std::collections::VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    let max = dist.iter().copied().filter(|&d| d != usize::MAX).max().unwrap_or(0);
    (0..g.vertex_count()).filter(|&x| dist[x] == max).collect()
}

/// Cubic polyhedral graphs on at most `max_vertices` vertices from a fixed
/// list of constructions, with their names.
pub fn cubic_polyhedra(max_vertices: usize) -> Vec<(String, SimpleGraph)> {
    let mut out = vec![("K4".to_string(), complete(4))];
    for n in 3..=max_vertices / 2 {
        out.push((format!("prism{n}"), prism(n)));
    }
    out.push(("cube".into(), cube()));
    out.push(("dodecahedron".into(), dodecahedron()));
    out.push(("barrel4".into(), barrel(4)));
    out.push(("barrel6".into(), barrel(6)));
    out.push(("truncated-tetrahedron".into(), truncate(&complete(4))));
    out.push(("truncated-prism3".into(), truncate(&prism(3))));
    out.push(("truncated-cube".into(), truncate(&cube())));
    out.retain(|(_, g)| g.vertex_count() <= max_vertices);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(dodecahedron().edge_count(), 30);
        assert!(dodecahedron().vertices().all(|v| dodecahedron().degree(v) == 3));
        let t = truncate(&cube());
        assert_eq!((t.vertex_count(), t.edge_count()), (24, 36));
        assert_eq!(farthest_from(&cube(), 0), vec![7]);
        assert_eq!(farthest_from(&dodecahedron(), 0).len(), 1);
        for k in 3..=7 {
            let b = barrel(k);
            assert_eq!(b.edge_count(), 6 * k);
            assert!(b.vertices().all(|v| b.degree(v) == 3));
            assert!(crate::embed::is_planar(&b));
        }
    }

    #[test]
    fn barrel5_is_the_dodecahedron() {
        let canon = |g: &SimpleGraph| {
            let e = crate::graph::Edge::new(0, farthest_from(g, 0)[0]);
            let c = crate::canon::canonical_form(&g.with_edge(e).unwrap(), e).unwrap();
            (c.graph, c.uv)
        };
        assert_eq!(canon(&barrel(5)), canon(&dodecahedron()));
    }
}
