//! Vertex connectivity: disjoint-path counting by unit-capacity max flow,
//! biconnected blocks, and the order-two separation search behind internal
//! 3-connectivity.

use std::collections::VecDeque;

use crate::graph::{Edge, SimpleGraph, VertexId};

const INF: usize = usize::MAX / 4;

struct FlowNetwork {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<usize>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork { head: vec![Vec::new(); nodes], to: Vec::new(), cap: Vec::new() }
    }

    fn add_arc(&mut self, a: usize, b: usize, cap: usize) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(cap);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    /// Augments along shortest paths until `limit` units flow or none remain.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        while flow < limit {
            let mut via = vec![usize::MAX; self.head.len()];
            let mut queue = VecDeque::from([s]);
            let mut seen = vec![false; self.head.len()];
            seen[s] = true;
            while let Some(x) = queue.pop_front() {
                if x == t {
                    break;
                }
                for &arc in &self.head[x] {
                    let y = self.to[arc];
                    if !seen[y] && self.cap[arc] > 0 {
                        seen[y] = true;
                        via[y] = arc;
                        queue.push_back(y);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut x = t;
            while x != s {
                let arc = via[x];
                self.cap[arc] -= 1;
                self.cap[arc ^ 1] += 1;
                x = self.to[arc ^ 1];
            }
            flow += 1;
        }
        flow
    }

    fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &arc in &self.head[x] {
                let y = self.to[arc];
                if !seen[y] && self.cap[arc] > 0 {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }
}

/// Number of internally vertex-disjoint `s`–`t` paths, capped at `limit`,
/// for non-adjacent `s != t`. When the count is below `limit` a minimum
/// separating vertex set is returned as well.
pub fn disjoint_paths(
    g: &SimpleGraph,
    s: VertexId,
    t: VertexId,
    limit: usize,
) -> (usize, Option<Vec<VertexId>>) {
    assert!(s != t && !g.has_edge(Edge::new(s, t)));
    // v_in = 2v, v_out = 2v + 1.
    let mut net = FlowNetwork::new(2 * g.vertex_count());
    for v in g.vertices() {
        let cap = if v == s || v == t { INF } else { 1 };
        net.add_arc(2 * v, 2 * v + 1, cap);
    }
    for e in g.edges() {
        let (a, b) = e.ends();
        net.add_arc(2 * a + 1, 2 * b, INF);
        net.add_arc(2 * b + 1, 2 * a, INF);
    }
    let flow = net.max_flow(2 * s + 1, 2 * t, limit);
    if flow >= limit {
        return (flow, None);
    }
    let reach = net.residual_reachable(2 * s + 1);
    let cut = g.vertices().filter(|&v| reach[2 * v] && !reach[2 * v + 1]).collect();
    (flow, Some(cut))
}

/// `Ok` when `g` is `k`-connected; otherwise a separating set of fewer than
/// `k` vertices (empty for graphs that are too small or disconnected).
pub fn check_k_connected(g: &SimpleGraph, k: usize) -> Result<(), Vec<VertexId>> {
    let n = g.vertex_count();
    if n <= k {
        return Err(Vec::new());
    }
    if !g.is_connected() {
        return Err(Vec::new());
    }
    for s in g.vertices() {
        for t in s + 1..n {
            if g.has_edge(Edge::new(s, t)) {
                continue;
            }
            if let (_, Some(cut)) = disjoint_paths(g, s, t, k) {
                return Err(cut);
            }
        }
    }
    Ok(())
}

/// Biconnected blocks as edge lists, plus the cut vertices.
pub fn blocks(g: &SimpleGraph) -> (Vec<Vec<Edge>>, Vec<VertexId>) {
    struct State<'a> {
        g: &'a SimpleGraph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<Edge>,
        blocks: Vec<Vec<Edge>>,
        cut: Vec<bool>,
    }

    fn visit(st: &mut State<'_>, x: VertexId, parent: Option<VertexId>) {
        st.time += 1;
        st.disc[x] = st.time;
        st.low[x] = st.time;
        let mut children = 0;
        for &y in st.g.neighbors(x) {
            if st.disc[y] == 0 {
                children += 1;
                st.stack.push(Edge::new(x, y));
                visit(st, y, Some(x));
                st.low[x] = st.low[x].min(st.low[y]);
                if st.low[y] >= st.disc[x] {
                    if parent.is_some() || children > 1 {
                        st.cut[x] = true;
                    }
                    let stop = Edge::new(x, y);
                    let mut block = Vec::new();
                    while let Some(e) = st.stack.pop() {
                        block.push(e);
                        if e == stop {
                            break;
                        }
                    }
                    block.sort_unstable();
                    st.blocks.push(block);
                }
            } else if Some(y) != parent && st.disc[y] < st.disc[x] {
                st.stack.push(Edge::new(x, y));
                st.low[x] = st.low[x].min(st.disc[y]);
            }
        }
    }

    let n = g.vertex_count();
    let mut st = State {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
        cut: vec![false; n],
    };
    for v in g.vertices() {
        if st.disc[v] == 0 {
            visit(&mut st, v, None);
        }
    }
    let cuts = (0..n).filter(|&v| st.cut[v]).collect();
    (st.blocks, cuts)
}

pub fn is_biconnected(g: &SimpleGraph) -> bool {
    g.vertex_count() >= 2 && g.is_connected() && blocks(g).1.is_empty()
}

/// An order-two separation `(G1, G2)` with more than two edges on each side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoSeparation {
    pub a: VertexId,
    pub b: VertexId,
    /// Vertex sets of the two sides; both contain `a` and `b`.
    pub side1: Vec<VertexId>,
    pub side2: Vec<VertexId>,
    pub side1_edges: Vec<Edge>,
    pub side2_edges: Vec<Edge>,
}

impl TwoSeparation {
    pub fn relabel(&self, f: impl Fn(VertexId) -> VertexId) -> TwoSeparation {
        let vs = |v: &[VertexId]| {
            let mut out: Vec<_> = v.iter().map(|&x| f(x)).collect();
            out.sort_unstable();
            out
        };
        let es = |v: &[Edge]| {
            let mut out: Vec<_> = v.iter().map(|e| e.map(&f)).collect();
            out.sort_unstable();
            out
        };
        TwoSeparation {
            a: f(self.a),
            b: f(self.b),
            side1: vs(&self.side1),
            side2: vs(&self.side2),
            side1_edges: es(&self.side1_edges),
            side2_edges: es(&self.side2_edges),
        }
    }

    /// Re-checks the witness from scratch: the sides cover `g`, share only
    /// `{a, b}`, split the edges, and each has at least three edges.
    pub fn confirms_violation(&self, g: &SimpleGraph) -> bool {
        let mut all_edges: Vec<Edge> =
            self.side1_edges.iter().chain(&self.side2_edges).copied().collect();
        all_edges.sort_unstable();
        if all_edges != g.edges() {
            return false;
        }
        let inside = |e: &Edge, side: &[VertexId]| side.contains(&e.lo()) && side.contains(&e.hi());
        if !self.side1_edges.iter().all(|e| inside(e, &self.side1))
            || !self.side2_edges.iter().all(|e| inside(e, &self.side2))
        {
            return false;
        }
        let mut shared: Vec<_> = self.side1.iter().filter(|v| self.side2.contains(v)).copied().collect();
        shared.sort_unstable();
        let mut ab = vec![self.a, self.b];
        ab.sort_unstable();
        let mut covered: Vec<_> = self.side1.iter().chain(&self.side2).copied().collect();
        covered.sort_unstable();
        covered.dedup();
        shared == ab
            && covered.len() == g.vertex_count()
            && self.side1_edges.len() >= 3
            && self.side2_edges.len() >= 3
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InternalConnectivity {
    Holds,
    NotBiconnected,
    Separation(TwoSeparation),
}

/// Simple (by type), 2-connected, and every order-two separation has a side
/// with at most two edges. Every pair `{a, b}` is tried; the components of
/// `G - {a, b}` are distributed over the two sides by an exact subset-sum
/// search on their edge counts.
pub fn internal_three_connectivity(g: &SimpleGraph) -> InternalConnectivity {
    if !is_biconnected(g) {
        return InternalConnectivity::NotBiconnected;
    }
    let n = g.vertex_count();
    for a in 0..n {
        for b in a + 1..n {
            if let Some(sep) = bad_separation_at(g, a, b) {
                return InternalConnectivity::Separation(sep);
            }
        }
    }
    InternalConnectivity::Holds
}

fn bad_separation_at(g: &SimpleGraph, a: VertexId, b: VertexId) -> Option<TwoSeparation> {
    let n = g.vertex_count();
    let mut comp = vec![usize::MAX; n];
    let mut members: Vec<Vec<VertexId>> = Vec::new();
    for start in g.vertices() {
        if start == a || start == b || comp[start] != usize::MAX {
            continue;
        }
        let reach = g.reachable_from(start, &[a, b]);
        let id = members.len();
        let verts: Vec<_> = (0..n).filter(|&x| reach[x]).collect();
        for &x in &verts {
            comp[x] = id;
        }
        members.push(verts);
    }
    if members.len() < 2 {
        return None;
    }
    let ab = Edge::new(a, b);
    let has_ab = g.has_edge(ab);
    let mut comp_edges: Vec<Vec<Edge>> = vec![Vec::new(); members.len()];
    for &e in g.edges() {
        if e == ab {
            continue;
        }
        let owner = if comp[e.lo()] != usize::MAX { comp[e.lo()] } else { comp[e.hi()] };
        comp_edges[owner].push(e);
    }
    let sizes: Vec<usize> = comp_edges.iter().map(Vec::len).collect();
    let total: usize = sizes.iter().sum();

    // Subsets of all components but the last (which stays on side 2, so both
    // sides are non-empty). via[s] = component that first reached sum s.
    let mut via = vec![usize::MAX; total + 1];
    let mut reached = vec![false; total + 1];
    reached[0] = true;
    for (i, &size) in sizes.iter().enumerate().take(sizes.len() - 1) {
        for s in (0..=total - size).rev() {
            if reached[s] && !reached[s + size] {
                reached[s + size] = true;
                via[s + size] = i;
            }
        }
    }
    let extra = usize::from(has_ab);
    let sum = (1..=total).find(|&s| {
        reached[s] && {
            let (e1, e2) = (s, total - s);
            (e1 + extra >= 3 && e2 >= 3) || (e1 >= 3 && e2 + extra >= 3)
        }
    })?;
    let mut chosen = vec![false; members.len()];
    let mut s = sum;
    while s > 0 {
        let i = via[s];
        chosen[i] = true;
        s -= sizes[i];
    }
    let e1 = sum;
    let ab_on_side1 = has_ab && e1 + 1 >= 3 && total - e1 >= 3;
    let mut side1 = vec![a, b];
    let mut side2 = vec![a, b];
    let mut side1_edges = Vec::new();
    let mut side2_edges = Vec::new();
    for (i, verts) in members.iter().enumerate() {
        if chosen[i] {
            side1.extend(verts);
            side1_edges.extend(&comp_edges[i]);
        } else {
            side2.extend(verts);
            side2_edges.extend(&comp_edges[i]);
        }
    }
    if has_ab {
        if ab_on_side1 {
            side1_edges.push(ab);
        } else {
            side2_edges.push(ab);
        }
    }
    for v in [&mut side1, &mut side2] {
        v.sort_unstable();
    }
    side1_edges.sort_unstable();
    side2_edges.sort_unstable();
    Some(TwoSeparation { a, b, side1, side2, side1_edges, side2_edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    /// Brute force: `g` is k-connected iff n > k and removing any set of
    /// fewer than k vertices leaves it connected.
    fn brute_three_connected(g: &SimpleGraph) -> bool {
        let n = g.vertex_count();
        if n <= 3 || !g.is_connected() {
            return false;
        }
        for a in 0..n {
            for b in a..n {
                let removed: Vec<_> = if a == b { vec![a] } else { vec![a, b] };
                let start = (0..n).find(|x| !removed.contains(x)).unwrap();
                let reach = g.reachable_from(start, &removed);
                if (0..n).any(|x| !removed.contains(&x) && !reach[x]) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn flow_connectivity_matches_brute_force() {
        let graphs = [
            families::complete(4),
            families::complete(5),
            families::cube(),
            families::cycle(6),
            families::dodecahedron(),
            families::prism(5),
            families::cube().without_edge(Edge::new(0, 1)).unwrap(),
            SimpleGraph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4)]).unwrap(),
        ];
        for g in &graphs {
            assert_eq!(check_k_connected(g, 3).is_ok(), brute_three_connected(g), "{g:?}");
        }
    }

    #[test]
    fn separator_is_genuine() {
        let g = families::cube().without_edge(Edge::new(0, 1)).unwrap();
        let cut = check_k_connected(&g, 3).unwrap_err();
        assert_eq!(cut.len(), 2);
        let start = g.vertices().find(|x| !cut.contains(x)).unwrap();
        let reach = g.reachable_from(start, &cut);
        assert!(g.vertices().any(|x| !cut.contains(&x) && !reach[x]));
    }

    #[test]
    fn cycle_of_six_has_bad_separation() {
        match internal_three_connectivity(&families::cycle(6)) {
            InternalConnectivity::Separation(sep) => {
                assert_eq!(sep.side1_edges.len(), 3);
                assert_eq!(sep.side2_edges.len(), 3);
                assert!(sep.confirms_violation(&families::cycle(6)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn small_cycles_are_internally_three_connected() {
        // Every order-two separation of C4 or C5 has a side with <= 2 edges.
        for n in [3, 4, 5] {
            assert_eq!(internal_three_connectivity(&families::cycle(n)), InternalConnectivity::Holds);
        }
    }

    #[test]
    fn three_connected_graphs_pass() {
        for g in [families::complete(4), families::cube(), families::dodecahedron()] {
            assert_eq!(internal_three_connectivity(&g), InternalConnectivity::Holds);
        }
    }

    #[test]
    fn path_is_not_biconnected() {
        let p = SimpleGraph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(internal_three_connectivity(&p), InternalConnectivity::NotBiconnected);
        let (blocks, cuts) = blocks(&p);
        assert_eq!(blocks.len(), 2);
        assert_eq!(cuts, vec![1]);
    }

    #[test]
    fn subdivided_twice_is_rejected() {
        // K4 with one edge subdivided twice: the path of three edges forms a
        // side with three edges.
        let g = SimpleGraph::new(6, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (4, 5), (5, 1)]).unwrap();
        match internal_three_connectivity(&g) {
            InternalConnectivity::Separation(sep) => assert!(sep.confirms_violation(&g)),
            other => panic!("unexpected {other:?}"),
        }
        // Subdivided once is fine.
        let h = SimpleGraph::new(5, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (4, 1)]).unwrap();
        assert_eq!(internal_three_connectivity(&h), InternalConnectivity::Holds);
    }
}
