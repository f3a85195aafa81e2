//! Reference computations that share no code with the library: brute-force
//! path enumeration, Floyd–Warshall, and a dual built straight from face
//! cycles.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crossweight::graph::{Edge, SimpleGraph, VertexId};

/// Every vertex-simple `s`–`t` path, as edge indices.
pub fn simple_paths(n: usize, edges: &[(VertexId, VertexId)], s: VertexId, t: VertexId) -> Vec<Vec<usize>> {
    let mut incident = vec![Vec::new(); n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        incident[a].push(i);
        incident[b].push(i);
    }
    let mut out = Vec::new();
    let mut on_path = vec![false; n];
    let mut path = Vec::new();
    fn go(
        at: usize,
        t: usize,
        edges: &[(usize, usize)],
        incident: &[Vec<usize>],
        on_path: &mut [bool],
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if at == t {
            out.push(path.clone());
            return;
        }
        on_path[at] = true;
        for &i in &incident[at] {
            let (a, b) = edges[i];
            let next = if a == at { b } else { a };
            if !on_path[next] {
                path.push(i);
                go(next, t, edges, incident, on_path, path, out);
                path.pop();
            }
        }
        on_path[at] = false;
    }
    go(s, t, edges, &incident, &mut on_path, &mut path, &mut out);
    out
}

/// Shortest `s`–`t` length by enumeration, and which edges lie on some
/// shortest path.
pub fn shortest_by_enumeration(
    n: usize,
    edges: &[(VertexId, VertexId)],
    w: &[BigUint],
    s: VertexId,
    t: VertexId,
) -> (BigUint, Vec<bool>) {
    let paths = simple_paths(n, edges, s, t);
    let len = |p: &Vec<usize>| p.iter().map(|&i| &w[i]).sum::<BigUint>();
    let best = paths.iter().map(len).min().expect("s and t are connected");
    let mut on = vec![false; edges.len()];
    for p in paths.iter().filter(|p| len(p) == best) {
        for &i in p {
            on[i] = true;
        }
    }
    (best, on)
}

/// All-pairs distances; `None` for unreachable pairs.
pub fn floyd_warshall(n: usize, edges: &[(usize, usize, BigUint)]) -> Vec<Vec<Option<BigUint>>> {
    let mut d = vec![vec![None; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Some(BigUint::from(0u32));
    }
    for (a, b, w) in edges {
        for (x, y) in [(*a, *b), (*b, *a)] {
            if d[x][y].as_ref().is_none_or(|cur| w < cur) {
                d[x][y] = Some(w.clone());
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (&d[i][k], &d[k][j]) {
                    let via = a + b;
                    if d[i][j].as_ref().is_none_or(|cur| via < *cur) {
                        d[i][j] = Some(via);
                    }
                }
            }
        }
    }
    d
}

/// Dual edges `(f, g, weight)` read off face cycles: faces sharing a
/// boundary edge are joined once per shared edge.
pub fn dual_from_cycles(faces: &[Vec<VertexId>], weight: impl Fn(Edge) -> BigUint) -> Vec<(usize, usize, BigUint)> {
    let mut sides: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
    for (f, cycle) in faces.iter().enumerate() {
        for i in 0..cycle.len() {
            let e = Edge::new(cycle[i], cycle[(i + 1) % cycle.len()]);
            sides.entry(e).or_default().push(f);
        }
    }
    sides
        .into_iter()
        .map(|(e, fs)| {
            assert_eq!(fs.len(), 2, "edge {e} must border exactly two face sides");
            (fs[0], fs[1], weight(e))
        })
        .collect()
}

/// Random 2-connected loopless multigraph: a Hamiltonian cycle plus chords
/// and parallel copies.
pub fn random_biconnected(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> Vec<(VertexId, VertexId)> {
    let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    for _ in 0..extra {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n);
        while b == a {
            b = rng.gen_range(0..n);
        }
        edges.push((a, b));
    }
    edges
}

pub fn with_antipodal(g: &SimpleGraph, v: VertexId) -> (SimpleGraph, Edge) {
    let far = crossweight::families::farthest_from(g, v)[0];
    let e = Edge::new(v, far);
    (g.with_edge(e).unwrap(), e)
}
