//! Canonical vertex order for a graph `G` with a designated edge `uv` such
//! that `G - uv` is 3-connected and planar.
//!
//! Such a `G - uv` has one embedding up to reflection, so a breadth-first
//! numbering that starts from a dart and follows the rotation at every vertex
//! is determined by the start dart and the orientation. Trying all darts in
//! both orientations and keeping the smallest code yields a labeling that
//! depends only on the isomorphism class of `(G, {u, v})`.

use crate::embed::{planar_embedding, EmbedError, RotationSystem};
use crate::graph::{Edge, GraphError, SimpleGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    /// Original vertex → canonical vertex.
    pub perm: Vec<VertexId>,
    pub graph: SimpleGraph,
    pub uv: Edge,
}

/// Code of a numbering, and the numbering itself (old → new).
type Numbering = (Vec<usize>, Vec<VertexId>);

/// Numbering produced from one start dart.
fn numbering(rs: &RotationSystem, start: (VertexId, VertexId), uv: Edge) -> Numbering {
    let n = rs.vertex_count();
    let mut label = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut reference = vec![usize::MAX; n];
    label[start.0] = 0;
    reference[start.0] = start.1;
    order.push(start.0);
    let mut code = Vec::with_capacity(5 * n);
    let mut head = 0;
    while head < order.len() {
        let w = order[head];
        head += 1;
        let around = rs.around(w);
        let k = around.iter().position(|&y| y == reference[w]).expect("reference is a neighbor");
        code.push(usize::from(uv.touches(w)));
        code.push(around.len());
        for step in 0..around.len() {
            let y = around[(k + step) % around.len()];
            if label[y] == usize::MAX {
                label[y] = order.len();
                reference[y] = w;
                order.push(y);
            }
            code.push(label[y]);
        }
    }
    (code, label)
}

fn all_numberings(g: &SimpleGraph, uv: Edge) -> Result<Vec<Numbering>, EmbedError> {
    let h = g.without_edge(uv)?;
    if !h.is_connected() {
        return Err(EmbedError::NotTwoConnected);
    }
    let rs = planar_embedding(&h)?;
    let mut out = Vec::new();
    for orientation in [rs.reversed(), rs] {
        for x in h.vertices() {
            for &y in orientation.around(x) {
                out.push(numbering(&orientation, (x, y), uv));
            }
        }
    }
    Ok(out)
}

/// Smallest-code relabeling. Callers are expected to have validated that
/// `G - uv` is 3-connected and planar; otherwise the result is still a valid
/// relabeling but not necessarily canonical.
pub fn canonical_form(g: &SimpleGraph, uv: Edge) -> Result<CanonicalForm, EmbedError> {
    if !g.has_edge(uv) {
        return Err(GraphError::MissingEdge(uv).into());
    }
    let (_, perm) = all_numberings(g, uv)?
        .into_iter()
        .min_by(|a, b| a.0.cmp(&b.0))
        .expect("graph has darts");
    let graph = g.relabel(&perm)?;
    Ok(CanonicalForm { uv: uv.map(|x| perm[x]), perm, graph })
}

/// Automorphisms of `G` that map `{u, v}` to itself and preserve the
/// embedding of `G - uv` up to reflection (for 3-connected planar `G - uv`
/// these are all of them).
pub fn automorphisms(g: &SimpleGraph, uv: Edge) -> Result<Vec<Vec<VertexId>>, EmbedError> {
    let numberings = all_numberings(g, uv)?;
    let best = numberings.iter().map(|p| &p.0).min().expect("graph has darts").clone();
    let matching: Vec<_> = numberings.into_iter().filter(|p| p.0 == best).map(|p| p.1).collect();
    let inverse = crate::graph::invert_permutation(&matching[0]);
    let mut out: Vec<Vec<VertexId>> =
        matching.iter().map(|p| (0..p.len()).map(|x| inverse[p[x]]).collect()).collect();
    out.sort();
    out.dedup();
    Ok(out)
}
