//! Hypothesis checks for the synthesis pipeline.

use crate::connectivity::{check_k_connected, internal_three_connectivity, InternalConnectivity, TwoSeparation};
use crate::embed::is_planar;
use crate::graph::{Edge, GraphError, SimpleGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotCubic { vertex: VertexId, degree: usize },
    NotThreeConnected { separator: Vec<VertexId> },
    MinusUvNotPlanar,
    GPlanar,
    CoreNotBiconnected,
    CoreTwoSeparation(TwoSeparation),
    TerminalDegree { terminal: VertexId, degree: usize },
    NeighborsNotDistinct { shared: Vec<VertexId> },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NotCubic { vertex, degree } => {
                write!(f, "G - uv is not cubic: vertex {vertex} has degree {degree}")
            }
            Violation::NotThreeConnected { separator } => {
                write!(f, "G - uv is not 3-connected (separator {separator:?})")
            }
            Violation::MinusUvNotPlanar => write!(f, "G - uv is not planar"),
            Violation::GPlanar => write!(f, "G is planar"),
            Violation::CoreNotBiconnected => write!(f, "G - {{u, v}} is not 2-connected"),
            Violation::CoreTwoSeparation(sep) => write!(
                f,
                "G - {{u, v}} has a 2-separation at {{{}, {}}} with {} and {} edges",
                sep.a,
                sep.b,
                sep.side1_edges.len(),
                sep.side2_edges.len()
            ),
            Violation::TerminalDegree { terminal, degree } => {
                write!(f, "terminal {terminal} has {degree} neighbors besides the other terminal")
            }
            Violation::NeighborsNotDistinct { shared } => {
                write!(f, "terminal neighbor sets overlap in {shared:?}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisReport {
    pub u: VertexId,
    pub v: VertexId,
    pub is_simple: bool,
    pub g_minus_uv_cubic: bool,
    pub g_minus_uv_3connected: bool,
    pub g_minus_uv_planar: bool,
    pub g_nonplanar: bool,
    pub guv_internally_3connected: bool,
    pub u_neighbors: Option<[VertexId; 3]>,
    pub v_neighbors: Option<[VertexId; 3]>,
    pub neighbor_distinctness: bool,
    pub failures: Vec<Violation>,
}

impl HypothesisReport {
    pub fn accepted(&self) -> bool {
        self.is_simple
            && self.g_minus_uv_cubic
            && self.g_minus_uv_3connected
            && self.g_minus_uv_planar
            && self.g_nonplanar
            && self.guv_internally_3connected
            && self.neighbor_distinctness
    }
}

/// Checks every hypothesis with `u = uv.lo()` and `v = uv.hi()`. Neighbor
/// triples are listed in increasing vertex order.
pub fn validate_hypotheses(g: &SimpleGraph, uv: Edge) -> Result<HypothesisReport, GraphError> {
    if uv.hi() >= g.vertex_count() || !g.has_edge(uv) {
        return Err(GraphError::MissingEdge(uv));
    }
    let (u, v) = uv.ends();
    let mut failures = Vec::new();
    let minus = g.without_edge(uv)?;

    let bad_degree: Vec<_> = minus.vertices().filter(|&x| minus.degree(x) != 3).collect();
    for &x in &bad_degree {
        failures.push(Violation::NotCubic { vertex: x, degree: minus.degree(x) });
    }
    let g_minus_uv_3connected = match check_k_connected(&minus, 3) {
        Ok(()) => true,
        Err(separator) => {
            failures.push(Violation::NotThreeConnected { separator });
            false
        }
    };
    let g_minus_uv_planar = is_planar(&minus);
    if !g_minus_uv_planar {
        failures.push(Violation::MinusUvNotPlanar);
    }
    let g_nonplanar = !is_planar(g);
    if !g_nonplanar {
        failures.push(Violation::GPlanar);
    }

    let (core, to_parent) = g.without_vertices(&[u, v]);
    let guv_internally_3connected = match internal_three_connectivity(&core) {
        InternalConnectivity::Holds => true,
        InternalConnectivity::NotBiconnected => {
            failures.push(Violation::CoreNotBiconnected);
            false
        }
        InternalConnectivity::Separation(sep) => {
            failures.push(Violation::CoreTwoSeparation(sep.relabel(|x| to_parent[x])));
            false
        }
    };

    let triple = |x: VertexId, other: VertexId, failures: &mut Vec<Violation>| {
        let nbrs: Vec<_> = minus.neighbors(x).iter().copied().filter(|&y| y != other).collect();
        match <[VertexId; 3]>::try_from(nbrs.as_slice()) {
            Ok(t) => Some(t),
            Err(_) => {
                failures.push(Violation::TerminalDegree { terminal: x, degree: nbrs.len() });
                None
            }
        }
    };
    let u_neighbors = triple(u, v, &mut failures);
    let v_neighbors = triple(v, u, &mut failures);
    let neighbor_distinctness = match (u_neighbors, v_neighbors) {
        (Some(a), Some(b)) => {
            let shared: Vec<_> = a.iter().copied().filter(|x| b.contains(x)).collect();
            if shared.is_empty() {
                true
            } else {
                failures.push(Violation::NeighborsNotDistinct { shared });
                false
            }
        }
        _ => false,
    };

    let report = HypothesisReport {
        u,
        v,
        is_simple: true,
        g_minus_uv_cubic: bad_degree.is_empty(),
        g_minus_uv_3connected,
        g_minus_uv_planar,
        g_nonplanar,
        guv_internally_3connected,
        u_neighbors,
        v_neighbors,
        neighbor_distinctness,
        failures,
    };
    if report.accepted() {
        let mut six: Vec<_> = u_neighbors.unwrap().into_iter().chain(v_neighbors.unwrap()).collect();
        six.sort_unstable();
        six.dedup();
        assert_eq!(six.len(), 6, "accepted report must have six distinct terminal neighbors");
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    pub(crate) fn with_antipodal(g: &SimpleGraph) -> (SimpleGraph, Edge) {
        let far = families::farthest_from(g, 0)[0];
        let e = Edge::new(0, far);
        (g.with_edge(e).unwrap(), e)
    }

    #[test]
    fn cube_plus_antipodal_edge() {
        let (g, uv) = with_antipodal(&families::cube());
        let r = validate_hypotheses(&g, uv).unwrap();
        assert!(r.g_minus_uv_cubic);
        assert!(r.g_nonplanar);
        assert!(!r.guv_internally_3connected);
        assert!(!r.accepted());
        let sep = r
            .failures
            .iter()
            .find_map(|f| match f {
                Violation::CoreTwoSeparation(s) => Some(s.clone()),
                _ => None,
            })
            .unwrap();
        assert_eq!((sep.side1_edges.len(), sep.side2_edges.len()), (3, 3));
        let core_in_parent_ids = {
            let pairs: Vec<_> = g
                .edges()
                .iter()
                .filter(|e| !e.touches(uv.lo()) && !e.touches(uv.hi()))
                .map(|e| e.ends())
                .collect();
            SimpleGraph::new(8, pairs).unwrap()
        };
        // The witness is re-checked naively: it splits all six core edges.
        let mut edges: Vec<_> = sep.side1_edges.iter().chain(&sep.side2_edges).copied().collect();
        edges.sort_unstable();
        assert_eq!(edges, core_in_parent_ids.edges());
    }

    #[test]
    fn k4_is_planar() {
        let g = families::complete(4);
        let r = validate_hypotheses(&g, Edge::new(0, 1)).unwrap();
        assert!(!r.g_nonplanar);
        assert!(r.failures.contains(&Violation::GPlanar));
        assert!(!r.accepted());
    }

    #[test]
    fn dodecahedron_plus_antipodal_edge() {
        let (g, uv) = with_antipodal(&families::dodecahedron());
        let r = validate_hypotheses(&g, uv).unwrap();
        assert!(r.accepted(), "{:?}", r.failures);
        assert!(r.failures.is_empty());
    }

    #[test]
    fn missing_edge() {
        let g = families::cube();
        assert_eq!(
            validate_hypotheses(&g, Edge::new(0, 7)),
            Err(GraphError::MissingEdge(Edge::new(0, 7)))
        );
    }

    #[test]
    fn deterministic() {
        let (g, uv) = with_antipodal(&families::cube());
        assert_eq!(validate_hypotheses(&g, uv), validate_hypotheses(&g, uv));
    }
}
