//! Graph representations shared by every stage of the pipeline.
//!
//! Vertex ids are dense integers `0..n`. Edges of a [`SimpleGraph`] are
//! stored canonically as `(min, max)` and kept sorted, so an edge index is
//! stable for a given graph and can be used to key parallel arrays (the dual
//! graph relies on this).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid edge ({0}, {1}): loops are not allowed")]
    InvalidEdge(VertexId, VertexId),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("edge {0} is not present in the graph")]
    MissingEdge(Edge),
    #[error("no weight given for edge {0}")]
    IncompleteWeighting(Edge),
    #[error("weight of edge {0} must be a positive integer")]
    NonPositiveWeight(Edge),
    #[error("weight given for {0}, which is not an edge of the graph")]
    StrayWeight(Edge),
    #[error("permutation of length {got} does not match {n} vertices")]
    BadPermutation { got: usize, n: usize },
}

/// Unordered vertex pair stored as `(min, max)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(VertexId, VertexId);

impl Edge {
    /// Canonicalizes the pair. Panics on a loop; use [`Edge::try_new`] for
    /// untrusted input.
    pub fn new(a: VertexId, b: VertexId) -> Edge {
        Edge::try_new(a, b).expect("loop edge")
    }

    pub fn try_new(a: VertexId, b: VertexId) -> Result<Edge, GraphError> {
        if a == b {
            return Err(GraphError::InvalidEdge(a, b));
        }
        Ok(Edge(a.min(b), a.max(b)))
    }

    pub fn lo(self) -> VertexId {
        self.0
    }

    pub fn hi(self) -> VertexId {
        self.1
    }

    pub fn ends(self) -> (VertexId, VertexId) {
        (self.0, self.1)
    }

    pub fn touches(self, x: VertexId) -> bool {
        self.0 == x || self.1 == x
    }

    /// The endpoint that is not `x`.
    pub fn other(self, x: VertexId) -> VertexId {
        if self.0 == x {
            self.1
        } else {
            debug_assert_eq!(self.1, x);
            self.0
        }
    }

    pub fn map(self, f: impl Fn(VertexId) -> VertexId) -> Edge {
        Edge::new(f(self.0), f(self.1))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// Loopless graph without parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<VertexId>>,
}

impl SimpleGraph {
    /// Builds a graph on `0..vertex_count`. Duplicate pairs (in either
    /// orientation) are rejected rather than merged.
    pub fn new(
        vertex_count: usize,
        pairs: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<SimpleGraph, GraphError> {
        let mut edges = Vec::new();
        for (a, b) in pairs {
            for x in [a, b] {
                if x >= vertex_count {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n: vertex_count });
                }
            }
            edges.push(Edge::try_new(a, b)?);
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0]));
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for e in &edges {
            adjacency[e.0].push(e.1);
            adjacency[e.1].push(e.0);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(SimpleGraph { n: vertex_count, edges, adjacency })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical sorted order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.edge_index(e).is_some()
    }

    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    pub fn without_edge(&self, e: Edge) -> Result<SimpleGraph, GraphError> {
        if !self.has_edge(e) {
            return Err(GraphError::MissingEdge(e));
        }
        let pairs = self.edges.iter().filter(|&&f| f != e).map(|f| f.ends());
        SimpleGraph::new(self.n, pairs)
    }

    /// Deletes `removed` and renumbers the survivors densely in increasing
    /// order. Returns the subgraph and the new-id → old-id map.
    pub fn without_vertices(&self, removed: &[VertexId]) -> (SimpleGraph, Vec<VertexId>) {
        let keep: Vec<VertexId> = self.vertices().filter(|v| !removed.contains(v)).collect();
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let pairs = self
            .edges
            .iter()
            .filter(|e| new_id[e.0] != usize::MAX && new_id[e.1] != usize::MAX)
            .map(|e| (new_id[e.0], new_id[e.1]));
        let sub = SimpleGraph::new(keep.len(), pairs).expect("subgraph of a simple graph is simple");
        (sub, keep)
    }

    pub fn with_edge(&self, e: Edge) -> Result<SimpleGraph, GraphError> {
        let pairs = self.edges.iter().map(|f| f.ends()).chain(std::iter::once(e.ends()));
        SimpleGraph::new(self.n, pairs)
    }

    /// Renames vertex `x` to `perm[x]`.
    pub fn relabel(&self, perm: &[VertexId]) -> Result<SimpleGraph, GraphError> {
        check_permutation(perm, self.n)?;
        SimpleGraph::new(self.n, self.edges.iter().map(|e| (perm[e.0], perm[e.1])))
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reachable_from(0, &[]).iter().all(|&r| r)
    }

    /// Vertices reachable from `start` without entering `blocked`.
    pub fn reachable_from(&self, start: VertexId, blocked: &[VertexId]) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        for &b in blocked {
            seen[b] = true;
        }
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(x) = stack.pop() {
            for &y in &self.adjacency[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        for &b in blocked {
            seen[b] = false;
        }
        seen
    }

    pub fn to_indexed(&self) -> IndexedMultigraph {
        IndexedMultigraph::new(self.n, self.edges.iter().map(|e| e.ends()))
            .expect("simple graphs are loopless")
    }
}

pub(crate) fn check_permutation(perm: &[VertexId], n: usize) -> Result<(), GraphError> {
    if perm.len() != n {
        return Err(GraphError::BadPermutation { got: perm.len(), n });
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(GraphError::BadPermutation { got: perm.len(), n });
        }
        seen[p] = true;
    }
    Ok(())
}

pub fn invert_permutation(perm: &[VertexId]) -> Vec<VertexId> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// Loopless multigraph in which each parallel edge has its own index.
///
/// This is the shape the dual of an embedded graph takes, and what the
/// balancing routines operate on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedMultigraph {
    n: usize,
    ends: Vec<(VertexId, VertexId)>,
    incidence: Vec<Vec<usize>>,
}

impl IndexedMultigraph {
    pub fn new(
        n: usize,
        ends: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<IndexedMultigraph, GraphError> {
        let ends: Vec<_> = ends.into_iter().collect();
        let mut incidence = vec![Vec::new(); n];
        for (i, &(a, b)) in ends.iter().enumerate() {
            if a == b {
                return Err(GraphError::InvalidEdge(a, b));
            }
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            incidence[a].push(i);
            incidence[b].push(i);
        }
        Ok(IndexedMultigraph { n, ends, incidence })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn ends(&self, edge: usize) -> (VertexId, VertexId) {
        self.ends[edge]
    }

    pub fn other_end(&self, edge: usize, x: VertexId) -> VertexId {
        let (a, b) = self.ends[edge];
        if a == x {
            b
        } else {
            a
        }
    }

    /// Edge indices incident with `x`, in increasing order.
    pub fn incident(&self, x: VertexId) -> &[usize] {
        &self.incidence[x]
    }

    fn connected_without(&self, removed: Option<VertexId>) -> bool {
        let Some(start) = (0..self.n).find(|&x| Some(x) != removed) else {
            return true;
        };
        let mut seen = vec![false; self.n];
        if let Some(r) = removed {
            seen[r] = true;
        }
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &e in &self.incidence[x] {
                let y = self.other_end(e, x);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn is_connected(&self) -> bool {
        self.connected_without(None)
    }

    /// Connected, at least two vertices, and no cut vertex.
    pub fn is_biconnected(&self) -> bool {
        self.n >= 2
            && self.is_connected()
            && (self.n == 2 || (0..self.n).all(|x| self.connected_without(Some(x))))
    }
}

/// Multigraph given by a multiplicity per vertex pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    classes: BTreeMap<Edge, BigUint>,
}

impl Multigraph {
    pub fn new(
        n: usize,
        classes: impl IntoIterator<Item = (Edge, BigUint)>,
    ) -> Result<Multigraph, GraphError> {
        let mut map = BTreeMap::new();
        for (e, mult) in classes {
            if e.hi() >= n {
                return Err(GraphError::VertexOutOfRange { vertex: e.hi(), n });
            }
            if mult.is_zero() {
                return Err(GraphError::NonPositiveWeight(e));
            }
            if map.insert(e, mult).is_some() {
                return Err(GraphError::DuplicateEdge(e));
            }
        }
        Ok(Multigraph { n, classes: map })
    }

    /// Builds a multigraph from a list of edge copies; repeated pairs are
    /// parallel edges.
    pub fn from_copies(
        n: usize,
        pairs: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Multigraph, GraphError> {
        let mut map: BTreeMap<Edge, BigUint> = BTreeMap::new();
        for (a, b) in pairs {
            let e = Edge::try_new(a, b)?;
            if e.hi() >= n {
                return Err(GraphError::VertexOutOfRange { vertex: e.hi(), n });
            }
            *map.entry(e).or_insert_with(BigUint::zero) += 1u32;
        }
        Ok(Multigraph { n, classes: map })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> impl Iterator<Item = (Edge, &BigUint)> {
        self.classes.iter().map(|(e, m)| (*e, m))
    }

    pub fn multiplicity(&self, e: Edge) -> Option<&BigUint> {
        self.classes.get(&e)
    }

    pub fn total_edges(&self) -> BigUint {
        self.classes.values().sum()
    }
}

/// Positive integer weight on every edge of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerWeighting {
    weights: BTreeMap<Edge, BigUint>,
}

impl IntegerWeighting {
    /// Checks that `weights` covers exactly the edges of `g` with values ≥ 1.
    pub fn new(
        g: &SimpleGraph,
        weights: impl IntoIterator<Item = (Edge, BigUint)>,
    ) -> Result<IntegerWeighting, GraphError> {
        let weights: BTreeMap<Edge, BigUint> = weights.into_iter().collect();
        for (e, w) in &weights {
            if !g.has_edge(*e) {
                return Err(GraphError::StrayWeight(*e));
            }
            if w.is_zero() {
                return Err(GraphError::NonPositiveWeight(*e));
            }
        }
        if let Some(e) = g.edges().iter().find(|e| !weights.contains_key(e)) {
            return Err(GraphError::IncompleteWeighting(*e));
        }
        Ok(IntegerWeighting { weights })
    }

    pub fn uniform(g: &SimpleGraph, value: BigUint) -> Result<IntegerWeighting, GraphError> {
        IntegerWeighting::new(g, g.edges().iter().map(|&e| (e, value.clone())))
    }

    pub fn get(&self, e: Edge) -> Option<&BigUint> {
        self.weights.get(&e)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, &BigUint)> {
        self.weights.iter().map(|(e, w)| (*e, w))
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Copy with `e` set to `value`; positivity is re-checked.
    pub fn with_weight(&self, e: Edge, value: BigUint) -> Result<IntegerWeighting, GraphError> {
        if !self.weights.contains_key(&e) {
            return Err(GraphError::MissingEdge(e));
        }
        if value.is_zero() {
            return Err(GraphError::NonPositiveWeight(e));
        }
        let mut weights = self.weights.clone();
        weights.insert(e, value);
        Ok(IntegerWeighting { weights })
    }

    pub fn relabel(&self, perm: &[VertexId]) -> IntegerWeighting {
        IntegerWeighting {
            weights: self.weights.iter().map(|(e, w)| (e.map(|x| perm[x]), w.clone())).collect(),
        }
    }
}

/// Weight lookup that may return zero; used when recounting crossings under
/// a decremented weighting, where weight 0 means the edge is absent.
pub trait EdgeWeights {
    fn weight(&self, e: Edge) -> BigUint;
}

impl EdgeWeights for IntegerWeighting {
    fn weight(&self, e: Edge) -> BigUint {
        self.weights.get(&e).cloned().unwrap_or_default()
    }
}

/// `base` with one edge's weight reduced by one.
pub struct Decremented<'a> {
    pub base: &'a IntegerWeighting,
    pub edge: Edge,
}

impl EdgeWeights for Decremented<'_> {
    fn weight(&self, e: Edge) -> BigUint {
        let w = self.base.weight(e);
        if e == self.edge && !w.is_zero() {
            w - BigUint::one()
        } else {
            w
        }
    }
}

/// Underlying simple graph plus multiplicity weighting.
pub fn multigraph_to_weighted(m: &Multigraph) -> (SimpleGraph, IntegerWeighting) {
    let g = SimpleGraph::new(m.n, m.classes.keys().map(|e| e.ends()))
        .expect("multigraph classes are distinct loopless pairs");
    let w = IntegerWeighting { weights: m.classes.clone() };
    (g, w)
}

pub fn weighted_to_multigraph(
    g: &SimpleGraph,
    w: &IntegerWeighting,
) -> Result<Multigraph, GraphError> {
    let mut classes = Vec::with_capacity(g.edge_count());
    for &e in g.edges() {
        let m = w.get(e).ok_or(GraphError::IncompleteWeighting(e))?;
        classes.push((e, m.clone()));
    }
    Multigraph::new(g.n, classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn k4() -> SimpleGraph {
        SimpleGraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn builds_complete_graph() {
        let g = k4();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
        assert!(g.vertices().all(|v| g.degree(v) == 3));
    }

    #[test]
    fn rejects_loop() {
        assert_eq!(SimpleGraph::new(3, [(1, 1)]), Err(GraphError::InvalidEdge(1, 1)));
    }

    #[test]
    fn rejects_duplicate_in_either_orientation() {
        let err = SimpleGraph::new(3, [(0, 1), (1, 0)]).unwrap_err();
        assert_eq!(err, GraphError::DuplicateEdge(Edge::new(0, 1)));
    }

    #[test]
    fn builds_cube() {
        let g = crate::families::cube();
        assert_eq!((g.vertex_count(), g.edge_count()), (8, 12));
    }

    #[test]
    fn multigraph_conversions() {
        let m = Multigraph::from_copies(3, [(0, 1), (1, 2), (1, 2), (0, 2), (2, 0), (0, 2)]).unwrap();
        let (g, w) = multigraph_to_weighted(&m);
        assert_eq!(g.edge_count(), 3);
        let got: Vec<u32> = g.edges().iter().map(|&e| w.get(e).unwrap().try_into().unwrap()).collect();
        assert_eq!(got, vec![1, 3, 2]);
        let back = weighted_to_multigraph(&g, &w).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.total_edges(), BigUint::from(6u32));

        let five = Multigraph::from_copies(2, std::iter::repeat_n((0, 1), 5)).unwrap();
        let (g, w) = multigraph_to_weighted(&five);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(w.get(Edge::new(0, 1)), Some(&BigUint::from(5u32)));
    }

    #[test]
    fn all_ones_is_simple() {
        let g = k4();
        let w = IntegerWeighting::uniform(&g, BigUint::one()).unwrap();
        let m = weighted_to_multigraph(&g, &w).unwrap();
        assert!(m.classes().all(|(_, k)| k.is_one()));
    }

    #[test]
    fn weights_must_be_positive() {
        let g = SimpleGraph::new(2, [(0, 1)]).unwrap();
        let w = IntegerWeighting::uniform(&g, BigUint::one()).unwrap();
        let e = Edge::new(0, 1);
        assert_eq!(w.with_weight(e, BigUint::zero()), Err(GraphError::NonPositiveWeight(e)));
        assert_eq!(
            Multigraph::new(2, [(e, BigUint::zero())]),
            Err(GraphError::NonPositiveWeight(e))
        );
        // Decrementing to zero is only representable through the lookup view.
        assert!(Decremented { base: &w, edge: e }.weight(e).is_zero());
    }

    #[test]
    fn incomplete_weighting_rejected() {
        let g = k4();
        let partial = [(Edge::new(0, 1), BigUint::one())];
        assert_eq!(
            IntegerWeighting::new(&g, partial),
            Err(GraphError::IncompleteWeighting(Edge::new(0, 2)))
        );
    }

    #[test]
    fn biconnectivity_of_multigraphs() {
        let c4 = IndexedMultigraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(c4.is_biconnected());
        let path = IndexedMultigraph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert!(!path.is_biconnected());
        let digon = IndexedMultigraph::new(2, [(0, 1), (1, 0)]).unwrap();
        assert!(digon.is_biconnected());
    }
}
