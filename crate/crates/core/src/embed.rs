//! Planar embeddings, face tracing, duals and anchor faces.
//!
//! Embeddings are produced by the Demoucron–Malgrange–Pertuiset face
//! insertion algorithm on 2-connected graphs. For 3-connected graphs and
//! subdivisions of them the embedding is unique up to reflection; the
//! reflection is fixed by a canonical rule so that face ids are stable.

use std::collections::VecDeque;

use num_bigint::BigUint;
use thiserror::Error;

use crate::connectivity::{blocks, is_biconnected};
use crate::graph::{Edge, GraphError, IndexedMultigraph, IntegerWeighting, SimpleGraph, VertexId};

pub type FaceId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    U,
    V,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::U => "u",
            Side::V => "v",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("graph is not planar")]
    NotPlanar,
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("corrupt rotation system: {0}")]
    CorruptRotation(String),
    #[error("neighbors of {side} do not share a unique face (common faces: {common:?})")]
    AnchorAmbiguous { side: Side, common: Vec<FaceId> },
    #[error("face {0} is incident with all six terminal neighbors, so G would be planar")]
    GNotNonplanar(FaceId),
    #[error("anchor invariant violated: {0}")]
    AnchorInvariant(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Cyclic order of neighbors around each vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    rotation: Vec<Vec<VertexId>>,
}

impl RotationSystem {
    /// Checks that the lists describe a symmetric simple adjacency.
    pub fn new(rotation: Vec<Vec<VertexId>>) -> Result<RotationSystem, EmbedError> {
        let n = rotation.len();
        for (x, list) in rotation.iter().enumerate() {
            let mut sorted = list.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) || sorted.iter().any(|&y| y >= n || y == x) {
                return Err(EmbedError::CorruptRotation(format!("bad neighbor list at {x}")));
            }
            if list.iter().any(|&y| !rotation[y].contains(&x)) {
                return Err(EmbedError::CorruptRotation(format!("asymmetric adjacency at {x}")));
            }
        }
        Ok(RotationSystem { rotation })
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn around(&self, x: VertexId) -> &[VertexId] {
        &self.rotation[x]
    }

    /// Neighbor following `from` in the cyclic order at `at`.
    pub fn successor(&self, at: VertexId, from: VertexId) -> VertexId {
        let list = &self.rotation[at];
        let i = list.iter().position(|&y| y == from).expect("dart not in rotation");
        list[(i + 1) % list.len()]
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = self
            .rotation
            .iter()
            .enumerate()
            .flat_map(|(x, l)| l.iter().filter(move |&&y| x < y).map(move |&y| Edge::new(x, y)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Mirror image: every cyclic order reversed, each list still starting
    /// at the same neighbor.
    pub fn reversed(&self) -> RotationSystem {
        let rotation = self
            .rotation
            .iter()
            .map(|l| {
                let mut r: Vec<_> = l.iter().rev().copied().collect();
                r.rotate_right(1);
                r
            })
            .collect();
        RotationSystem { rotation }
    }

    fn from_face_cycles(n: usize, faces: &[Vec<VertexId>]) -> Result<RotationSystem, EmbedError> {
        let mut next: Vec<Vec<(VertexId, VertexId)>> = vec![Vec::new(); n];
        for face in faces {
            let k = face.len();
            for i in 0..k {
                let (x, y, z) = (face[i], face[(i + 1) % k], face[(i + 2) % k]);
                next[y].push((x, z));
            }
        }
        let mut rotation = Vec::with_capacity(n);
        for (y, pairs) in next.iter().enumerate() {
            let Some(start) = pairs.iter().map(|p| p.0).min() else {
                rotation.push(Vec::new());
                continue;
            };
            let mut order = vec![start];
            let mut cur = start;
            loop {
                let &(_, z) = pairs
                    .iter()
                    .find(|p| p.0 == cur)
                    .ok_or_else(|| EmbedError::CorruptRotation(format!("open rotation at {y}")))?;
                if z == start {
                    break;
                }
                order.push(z);
                cur = z;
                if order.len() > pairs.len() {
                    return Err(EmbedError::CorruptRotation(format!("rotation at {y} does not close")));
                }
            }
            if order.len() != pairs.len() {
                return Err(EmbedError::CorruptRotation(format!("vertex {y} is pinched")));
            }
            rotation.push(order);
        }
        RotationSystem::new(rotation)
    }

    /// Fixes the reflection: at the smallest vertex of degree at least three,
    /// the neighbor after the smallest one must be smaller than the neighbor
    /// before it. Lists start at their smallest neighbor.
    fn canonical(self) -> RotationSystem {
        let normalize = |rs: RotationSystem| RotationSystem {
            rotation: rs
                .rotation
                .into_iter()
                .map(|mut l| {
                    if let Some(i) = l.iter().enumerate().min_by_key(|p| p.1).map(|p| p.0) {
                        l.rotate_left(i);
                    }
                    l
                })
                .collect(),
        };
        let rs = normalize(self);
        let flip = rs
            .rotation
            .iter()
            .find(|l| l.len() >= 3)
            .is_some_and(|l| l[1] > l[l.len() - 1]);
        if flip {
            normalize(rs.reversed())
        } else {
            rs
        }
    }
}

/// Face cycle as a sequence of darts `(x, y)`; consecutive darts chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<(VertexId, VertexId)>,
}

impl Face {
    pub fn vertices(&self) -> Vec<VertexId> {
        self.darts.iter().map(|d| d.0).collect()
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = self.darts.iter().map(|&(a, b)| Edge::new(a, b)).collect();
        out.sort_unstable();
        out
    }
}

/// Faces of an embedding with vertex and edge incidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSet {
    faces: Vec<Face>,
    edges: Vec<Edge>,
    /// `(face of dart lo→hi, face of dart hi→lo)` per edge.
    sides: Vec<(FaceId, FaceId)>,
    vertex_faces: Vec<Vec<FaceId>>,
}

impl FaceSet {
    /// Traces faces by following `(x, y) → (y, successor(y, x))`. Faces are
    /// numbered by their smallest dart; Euler's formula is enforced.
    pub fn trace(rs: &RotationSystem) -> Result<FaceSet, EmbedError> {
        let n = rs.vertex_count();
        let edges = rs.edges();
        let mut darts: Vec<(VertexId, VertexId)> =
            edges.iter().flat_map(|e| [(e.lo(), e.hi()), (e.hi(), e.lo())]).collect();
        darts.sort_unstable();
        let mut face_of = vec![usize::MAX; darts.len()];
        let dart_index = |d: (VertexId, VertexId)| darts.binary_search(&d).expect("dart exists");
        let mut faces = Vec::new();
        for start in 0..darts.len() {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut cycle = Vec::new();
            let mut d = darts[start];
            loop {
                let di = dart_index(d);
                if face_of[di] != usize::MAX {
                    if di == start {
                        break;
                    }
                    return Err(EmbedError::CorruptRotation("face trace does not close".into()));
                }
                face_of[di] = id;
                cycle.push(d);
                d = (d.1, rs.successor(d.1, d.0));
            }
            faces.push(Face { darts: cycle });
        }
        let used = (0..n).filter(|&x| !rs.around(x).is_empty()).count();
        let euler = used as i64 - edges.len() as i64 + faces.len() as i64;
        if euler != 2 {
            return Err(EmbedError::CorruptRotation(format!(
                "Euler characteristic {euler} (V={used}, E={}, F={})",
                edges.len(),
                faces.len()
            )));
        }
        let sides = edges
            .iter()
            .map(|e| (face_of[dart_index((e.lo(), e.hi()))], face_of[dart_index((e.hi(), e.lo()))]))
            .collect();
        let mut vertex_faces = vec![Vec::new(); n];
        for (id, f) in faces.iter().enumerate() {
            for &(x, _) in &f.darts {
                vertex_faces[x].push(id);
            }
        }
        for l in &mut vertex_faces {
            l.sort_unstable();
            l.dedup();
        }
        Ok(FaceSet { faces, edges, sides, vertex_faces })
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_sides(&self, edge_index: usize) -> (FaceId, FaceId) {
        self.sides[edge_index]
    }

    pub fn faces_at(&self, v: VertexId) -> &[FaceId] {
        &self.vertex_faces[v]
    }

    /// Face whose edge set equals `edges` (sorted), if any.
    pub fn find_by_edges(&self, edges: &[Edge]) -> Option<FaceId> {
        self.faces.iter().position(|f| f.edges() == edges)
    }
}

/// One dual vertex per face, one dual edge per primal edge; dual edge `i`
/// corresponds to `FaceSet::edges()[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    primal: Vec<Edge>,
    graph: IndexedMultigraph,
}

impl DualGraph {
    pub fn new(fs: &FaceSet) -> Result<DualGraph, EmbedError> {
        if fs.sides.iter().any(|&(a, b)| a == b) {
            return Err(EmbedError::NotTwoConnected);
        }
        let graph = IndexedMultigraph::new(fs.len(), fs.sides.iter().copied())?;
        Ok(DualGraph { primal: fs.edges.clone(), graph })
    }

    pub fn face_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.primal.len()
    }

    pub fn graph(&self) -> &IndexedMultigraph {
        &self.graph
    }

    pub fn primal_edge(&self, dual_edge: usize) -> Edge {
        self.primal[dual_edge]
    }

    pub fn dual_edge(&self, primal: Edge) -> Option<usize> {
        self.primal.binary_search(&primal).ok()
    }

    pub fn faces_of(&self, dual_edge: usize) -> (FaceId, FaceId) {
        self.graph.ends(dual_edge)
    }
}

/// `w*(e*) = w(e)`, indexed by dual edge.
pub fn transfer_weights(w: &IntegerWeighting, dual: &DualGraph) -> Result<Vec<BigUint>, EmbedError> {
    dual.primal
        .iter()
        .map(|&e| w.get(e).cloned().ok_or(EmbedError::Graph(GraphError::IncompleteWeighting(e))))
        .collect()
}

/// Inverse of [`transfer_weights`].
pub fn transfer_back(
    weights: &[BigUint],
    dual: &DualGraph,
    primal: &SimpleGraph,
) -> Result<IntegerWeighting, EmbedError> {
    Ok(IntegerWeighting::new(primal, dual.primal.iter().copied().zip(weights.iter().cloned()))?)
}

/// Faces hosting the two deleted terminals and the second face at each of
/// their neighbors. Vertex ids are those of the embedded graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnchorFaces {
    pub face_u: FaceId,
    pub face_v: FaceId,
    pub u_neighbors: [VertexId; 3],
    pub v_neighbors: [VertexId; 3],
    pub u_faces: [FaceId; 3],
    pub v_faces: [FaceId; 3],
}

impl AnchorFaces {
    pub fn base(&self, side: Side) -> FaceId {
        match side {
            Side::U => self.face_u,
            Side::V => self.face_v,
        }
    }

    pub fn neighbor_faces(&self, side: Side) -> [FaceId; 3] {
        match side {
            Side::U => self.u_faces,
            Side::V => self.v_faces,
        }
    }

    pub fn neighbors(&self, side: Side) -> [VertexId; 3] {
        match side {
            Side::U => self.u_neighbors,
            Side::V => self.v_neighbors,
        }
    }
}

pub fn anchor_faces(
    fs: &FaceSet,
    u_neighbors: [VertexId; 3],
    v_neighbors: [VertexId; 3],
) -> Result<AnchorFaces, EmbedError> {
    for &x in u_neighbors.iter().chain(&v_neighbors) {
        if fs.faces_at(x).len() != 2 {
            return Err(EmbedError::AnchorInvariant(format!(
                "terminal neighbor {x} lies on {} faces, expected 2",
                fs.faces_at(x).len()
            )));
        }
    }
    let common = |nbrs: &[VertexId; 3]| -> Vec<FaceId> {
        fs.faces_at(nbrs[0])
            .iter()
            .copied()
            .filter(|f| nbrs[1..].iter().all(|&x| fs.faces_at(x).contains(f)))
            .collect()
    };
    let cu = common(&u_neighbors);
    let cv = common(&v_neighbors);
    if let Some(&f) = cu.iter().find(|f| cv.contains(f)) {
        return Err(EmbedError::GNotNonplanar(f));
    }
    let unique = |c: Vec<FaceId>, side| match c.as_slice() {
        [f] => Ok(*f),
        _ => Err(EmbedError::AnchorAmbiguous { side, common: c }),
    };
    let face_u = unique(cu, Side::U)?;
    let face_v = unique(cv, Side::V)?;
    let other = |x: VertexId, base: FaceId| -> FaceId {
        *fs.faces_at(x).iter().find(|&&f| f != base).expect("two faces")
    };
    let u_faces = u_neighbors.map(|x| other(x, face_u));
    let v_faces = v_neighbors.map(|x| other(x, face_v));
    for (side, faces) in [(Side::U, u_faces), (Side::V, v_faces)] {
        if faces[0] == faces[1] || faces[0] == faces[2] || faces[1] == faces[2] {
            return Err(EmbedError::AnchorInvariant(format!(
                "second faces at the neighbors of {side} are not pairwise distinct: {faces:?}"
            )));
        }
    }
    Ok(AnchorFaces { face_u, face_v, u_neighbors, v_neighbors, u_faces, v_faces })
}

/// Planarity of an arbitrary simple graph, block by block.
pub fn is_planar(g: &SimpleGraph) -> bool {
    let (blocks, _) = blocks(g);
    blocks.iter().all(|block| {
        if block.len() < 3 {
            return true;
        }
        let mut verts: Vec<VertexId> = block.iter().flat_map(|e| [e.lo(), e.hi()]).collect();
        verts.sort_unstable();
        verts.dedup();
        if block.len() > 3 * verts.len() - 6 {
            return false;
        }
        let local = |x: VertexId| verts.binary_search(&x).unwrap();
        let sub = SimpleGraph::new(verts.len(), block.iter().map(|e| (local(e.lo()), local(e.hi()))))
            .expect("block of a simple graph");
        face_insertion(&sub).is_ok()
    })
}

/// Embedding of a 2-connected planar graph, reflection fixed canonically.
pub fn planar_embedding(g: &SimpleGraph) -> Result<RotationSystem, EmbedError> {
    if g.vertex_count() < 3 || !is_biconnected(g) {
        return Err(EmbedError::NotTwoConnected);
    }
    if g.edge_count() > 3 * g.vertex_count() - 6 {
        return Err(EmbedError::NotPlanar);
    }
    let faces = face_insertion(g)?;
    Ok(RotationSystem::from_face_cycles(g.vertex_count(), &faces)?.canonical())
}

struct Fragment {
    attachments: Vec<VertexId>,
    /// `None` for a single chord between embedded vertices.
    component: Option<Vec<VertexId>>,
    chord: Option<Edge>,
}

/// Face insertion on a 2-connected graph. Returns oriented face cycles in
/// which each edge is traversed once in each direction.
fn face_insertion(g: &SimpleGraph) -> Result<Vec<Vec<VertexId>>, EmbedError> {
    let n = g.vertex_count();
    let first = g.edges()[0];
    let cycle = {
        let (a, b) = first.ends();
        let mut prev = vec![usize::MAX; n];
        prev[a] = a;
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if prev[y] == usize::MAX && !(x == a && y == b) {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if prev[b] == usize::MAX {
            return Err(EmbedError::NotTwoConnected);
        }
        let mut path = vec![b];
        while *path.last().unwrap() != a {
            path.push(prev[*path.last().unwrap()]);
        }
        path
    };
    let mut on_v = vec![false; n];
    let mut on_e = vec![false; g.edge_count()];
    let mut embedded_edges = 0;
    for i in 0..cycle.len() {
        on_v[cycle[i]] = true;
        on_e[g.edge_index(Edge::new(cycle[i], cycle[(i + 1) % cycle.len()])).unwrap()] = true;
        embedded_edges += 1;
    }
    let mut faces = vec![cycle.clone(), cycle.iter().rev().copied().collect::<Vec<_>>()];

    while embedded_edges < g.edge_count() {
        let fragments = fragments(g, &on_v, &on_e);
        let membership: Vec<Vec<bool>> = faces
            .iter()
            .map(|f| {
                let mut m = vec![false; n];
                for &x in f {
                    m[x] = true;
                }
                m
            })
            .collect();
        let admissible: Vec<Vec<usize>> = fragments
            .iter()
            .map(|fr| {
                (0..faces.len())
                    .filter(|&f| fr.attachments.iter().all(|&x| membership[f][x]))
                    .collect()
            })
            .collect();
        if admissible.iter().any(Vec::is_empty) {
            return Err(EmbedError::NotPlanar);
        }
        let pick = admissible.iter().position(|a| a.len() == 1).unwrap_or(0);
        let face_id = admissible[pick][0];
        let path = fragment_path(g, &fragments[pick], &on_v);
        for w in path.windows(2) {
            on_e[g.edge_index(Edge::new(w[0], w[1])).unwrap()] = true;
            embedded_edges += 1;
        }
        for &x in &path {
            on_v[x] = true;
        }
        let face = faces.swap_remove(face_id);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
    }
    Ok(faces)
}

fn fragments(g: &SimpleGraph, on_v: &[bool], on_e: &[bool]) -> Vec<Fragment> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for (i, &e) in g.edges().iter().enumerate() {
        if !on_e[i] && on_v[e.lo()] && on_v[e.hi()] {
            out.push(Fragment { attachments: vec![e.lo(), e.hi()], component: None, chord: Some(e) });
        }
    }
    let mut seen = on_v.to_vec();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut attachments = Vec::new();
        let mut i = 0;
        while i < comp.len() {
            let x = comp[i];
            i += 1;
            for &y in g.neighbors(x) {
                if on_v[y] {
                    attachments.push(y);
                } else if !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                }
            }
        }
        attachments.sort_unstable();
        attachments.dedup();
        comp.sort_unstable();
        out.push(Fragment { attachments, component: Some(comp), chord: None });
    }
    out
}

/// Path through a fragment joining two distinct attachment vertices.
fn fragment_path(g: &SimpleGraph, fr: &Fragment, on_v: &[bool]) -> Vec<VertexId> {
    if let Some(e) = fr.chord {
        return vec![e.lo(), e.hi()];
    }
    let comp = fr.component.as_ref().unwrap();
    let a = fr.attachments[0];
    let n = g.vertex_count();
    let mut prev = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for &y in g.neighbors(a) {
        if !on_v[y] && comp.binary_search(&y).is_ok() {
            prev[y] = a;
            queue.push_back(y);
        }
    }
    while let Some(x) = queue.pop_front() {
        if let Some(&b) = g.neighbors(x).iter().find(|&&b| on_v[b] && b != a) {
            let mut path = vec![b, x];
            let mut cur = x;
            while prev[cur] != a {
                cur = prev[cur];
                path.push(cur);
            }
            path.push(a);
            path.reverse();
            return path;
        }
        for &y in g.neighbors(x) {
            if !on_v[y] && prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    unreachable!("fragment of a 2-connected graph has two attachments")
}

fn split_face(face: &[VertexId], path: &[VertexId]) -> (Vec<VertexId>, Vec<VertexId>) {
    let a = path[0];
    let b = *path.last().unwrap();
    let interior = &path[1..path.len() - 1];
    let k = face.len();
    let i = face.iter().position(|&x| x == a).unwrap();
    let j = face.iter().position(|&x| x == b).unwrap();
    let arc = |from: usize, to: usize| -> Vec<VertexId> {
        let mut out = vec![face[from]];
        let mut p = from;
        while p != to {
            p = (p + 1) % k;
            out.push(face[p]);
        }
        out
    };
    let mut f1 = arc(i, j);
    f1.extend(interior.iter().rev());
    let mut f2 = arc(j, i);
    f2.extend(interior);
    (f1, f2)
}

/// Embedding data for `G - {u, v}` together with its dual and anchors.
#[derive(Debug, Clone)]
pub struct CoreEmbedding {
    pub core: SimpleGraph,
    /// Core vertex id → vertex id in the parent graph.
    pub to_parent: Vec<VertexId>,
    pub rotation: RotationSystem,
    pub faces: FaceSet,
    pub dual: DualGraph,
    pub anchors: AnchorFaces,
}

impl CoreEmbedding {
    /// `u_neighbors`/`v_neighbors` are parent ids, in the order that defines
    /// `u_1, u_2, u_3` and `v_1, v_2, v_3`.
    pub fn build(
        g: &SimpleGraph,
        u: VertexId,
        v: VertexId,
        u_neighbors: [VertexId; 3],
        v_neighbors: [VertexId; 3],
    ) -> Result<CoreEmbedding, EmbedError> {
        let (core, to_parent) = g.without_vertices(&[u, v]);
        let local = |x: VertexId| -> Result<VertexId, EmbedError> {
            to_parent
                .binary_search(&x)
                .map_err(|_| EmbedError::AnchorInvariant(format!("{x} is not a core vertex")))
        };
        let un = [local(u_neighbors[0])?, local(u_neighbors[1])?, local(u_neighbors[2])?];
        let vn = [local(v_neighbors[0])?, local(v_neighbors[1])?, local(v_neighbors[2])?];
        let rotation = planar_embedding(&core)?;
        let faces = FaceSet::trace(&rotation)?;
        let dual = DualGraph::new(&faces)?;
        let anchors = anchor_faces(&faces, un, vn)?;
        Ok(CoreEmbedding { core, to_parent, rotation, faces, dual, anchors })
    }

    pub fn parent_vertex(&self, x: VertexId) -> VertexId {
        self.to_parent[x]
    }

    pub fn parent_edge(&self, e: Edge) -> Edge {
        e.map(|x| self.to_parent[x])
    }

    pub fn core_vertex(&self, parent: VertexId) -> Option<VertexId> {
        self.to_parent.binary_search(&parent).ok()
    }

    pub fn core_edge(&self, parent: Edge) -> Option<Edge> {
        Some(Edge::new(self.core_vertex(parent.lo())?, self.core_vertex(parent.hi())?))
    }

    /// Restriction of a parent weighting to the core, moved to the dual.
    pub fn dual_weights(&self, w: &impl crate::graph::EdgeWeights) -> Vec<BigUint> {
        (0..self.dual.edge_count())
            .map(|i| w.weight(self.parent_edge(self.dual.primal_edge(i))))
            .collect()
    }

    /// Face vertex cycles in parent ids.
    pub fn parent_face_cycles(&self) -> Vec<Vec<VertexId>> {
        self.faces
            .faces()
            .iter()
            .map(|f| f.vertices().into_iter().map(|x| self.to_parent[x]).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn faces_of(g: &SimpleGraph) -> FaceSet {
        FaceSet::trace(&planar_embedding(g).unwrap()).unwrap()
    }

    #[test]
    fn k4_has_four_triangles() {
        let fs = faces_of(&families::complete(4));
        assert_eq!(fs.len(), 4);
        assert!(fs.faces().iter().all(|f| f.len() == 3));
    }

    #[test]
    fn cube_faces_are_quadrilaterals() {
        let fs = faces_of(&families::cube());
        assert_eq!(fs.len(), 6);
        assert!(fs.faces().iter().all(|f| f.len() == 4));
    }

    #[test]
    fn dodecahedron_faces_are_pentagons() {
        let fs = faces_of(&families::dodecahedron());
        assert_eq!(fs.len(), 12);
        assert!(fs.faces().iter().all(|f| f.len() == 5));
    }

    #[test]
    fn triangle_has_two_faces() {
        let fs = faces_of(&families::cycle(3));
        assert_eq!(fs.len(), 2);
        assert!(fs.faces().iter().all(|f| f.len() == 3));
    }

    #[test]
    fn k5_and_k33_are_not_planar() {
        assert!(!is_planar(&families::complete(5)));
        assert_eq!(planar_embedding(&families::complete(5)), Err(EmbedError::NotPlanar));
        let k33 = SimpleGraph::new(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap();
        assert!(!is_planar(&k33));
        assert_eq!(planar_embedding(&k33), Err(EmbedError::NotPlanar));
        // Petersen graph: sparse enough to pass the edge bound.
        assert!(!is_planar(&families::generalized_petersen(5, 2)));
    }

    #[test]
    fn planar_families_are_planar() {
        for (_, g) in families::cubic_polyhedra(24) {
            assert!(is_planar(&g));
        }
        let path = SimpleGraph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(is_planar(&path));
    }

    #[test]
    fn cube_dual_is_octahedron() {
        let fs = faces_of(&families::cube());
        let dual = DualGraph::new(&fs).unwrap();
        assert_eq!((dual.face_count(), dual.edge_count()), (6, 12));
        for f in 0..6 {
            assert_eq!(dual.graph().incident(f).len(), 4);
        }
    }

    #[test]
    fn dodecahedron_dual_is_icosahedron() {
        let dual = DualGraph::new(&faces_of(&families::dodecahedron())).unwrap();
        assert_eq!((dual.face_count(), dual.edge_count()), (12, 30));
        assert!((0..12).all(|f| dual.graph().incident(f).len() == 5));
    }

    #[test]
    fn cycle_dual_is_a_bundle() {
        let dual = DualGraph::new(&faces_of(&families::cycle(4))).unwrap();
        assert_eq!(dual.face_count(), 2);
        assert_eq!(dual.edge_count(), 4);
        assert!((0..4).all(|i| dual.faces_of(i) == (0, 1) || dual.faces_of(i) == (1, 0)));
    }

    #[test]
    fn bridge_is_rejected_by_dual() {
        // A rotation system for a path has one face; both sides of each edge
        // coincide.
        let rs = RotationSystem::new(vec![vec![1], vec![0, 2], vec![1]]).unwrap();
        let fs = FaceSet::trace(&rs).unwrap();
        assert_eq!(DualGraph::new(&fs), Err(EmbedError::NotTwoConnected));
    }

    #[test]
    fn nonplanar_rotation_fails_euler() {
        // K4 with a rotation that yields a torus embedding.
        let rs = RotationSystem::new(vec![vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]]).unwrap();
        assert!(matches!(FaceSet::trace(&rs), Err(EmbedError::CorruptRotation(_))));
    }

    #[test]
    fn embedding_is_independent_of_input_order() {
        // Same graph, edges listed in a different order, gives the same
        // rotation system.
        let g = families::dodecahedron();
        let mut pairs: Vec<_> = g.edges().iter().map(|e| e.ends()).collect();
        pairs.reverse();
        let h = SimpleGraph::new(20, pairs.into_iter().map(|(a, b)| (b, a))).unwrap();
        assert_eq!(planar_embedding(&g).unwrap(), planar_embedding(&h).unwrap());
    }

    #[test]
    fn weights_transfer_through_dual() {
        let g = families::cube();
        let dual = DualGraph::new(&faces_of(&g)).unwrap();
        let e = Edge::new(0, 1);
        let w = IntegerWeighting::uniform(&g, BigUint::from(1u32))
            .unwrap()
            .with_weight(e, BigUint::from(7u32))
            .unwrap();
        let ws = transfer_weights(&w, &dual).unwrap();
        assert_eq!(ws[dual.dual_edge(e).unwrap()], BigUint::from(7u32));
        assert_eq!(ws.iter().filter(|x| **x == BigUint::from(1u32)).count(), 11);
        assert_eq!(transfer_back(&ws, &dual, &g).unwrap(), w);
    }

    fn dodeca_core() -> (SimpleGraph, VertexId, VertexId) {
        let g = families::dodecahedron();
        let v = families::farthest_from(&g, 0)[0];
        (g, 0, v)
    }

    #[test]
    fn dodecahedron_anchor_faces() {
        let (g, u, v) = dodeca_core();
        let nb = |x: VertexId| -> [VertexId; 3] { g.neighbors(x).try_into().unwrap() };
        let ce = CoreEmbedding::build(&g, u, v, nb(u), nb(v)).unwrap();
        let a = &ce.anchors;
        assert_ne!(a.face_u, a.face_v);
        let mut six: Vec<_> = a.u_faces.iter().chain(&a.v_faces).copied().collect();
        six.sort_unstable();
        six.dedup();
        assert_eq!(six.len(), 6);
        // Each F_u contains all three neighbors.
        for x in a.u_neighbors {
            assert!(ce.faces.faces_at(x).contains(&a.face_u));
        }
        // Euler: 18 - 24 + F = 2.
        assert_eq!(ce.faces.len(), 8);
    }

    #[test]
    fn cube_core_is_cofacial() {
        let g = families::cube();
        let nb = |x: VertexId| -> [VertexId; 3] { g.neighbors(x).try_into().unwrap() };
        let err = CoreEmbedding::build(&g, 0, 7, nb(0), nb(7)).unwrap_err();
        assert!(matches!(err, EmbedError::GNotNonplanar(_)));
    }

    #[test]
    fn ambiguous_anchor() {
        // Synthetic incidence: u's neighbors 0, 1, 2 all lie on faces 0 and 1;
        // v's neighbors 3, 4, 5 on faces 2 and 3.
        let vertex_faces = vec![vec![0, 1], vec![0, 1], vec![0, 1], vec![2, 3], vec![2, 3], vec![2, 3]];
        let fs = FaceSet {
            faces: vec![Face { darts: Vec::new() }; 4],
            edges: Vec::new(),
            sides: Vec::new(),
            vertex_faces,
        };
        assert_eq!(
            anchor_faces(&fs, [0, 1, 2], [3, 4, 5]),
            Err(EmbedError::AnchorAmbiguous { side: Side::U, common: vec![0, 1] })
        );
    }
}
