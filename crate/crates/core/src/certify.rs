//! Exact verification of a synthesized weighting.
//!
//! [`check_conditions`] evaluates the seven conditions that make `(G, ω)`
//! crossing-critical, from the graph and `ω` alone. [`certify_critical`] then
//! produces concrete drawings: one attaining `t·d(F_u, F_v)` crossings, and
//! for every edge a drawing whose count drops below that value once the
//! edge's weight is decremented. Drawings are combinatorial (host faces plus
//! dual walks) and are recounted by [`count_crossings`] without reference to
//! how they were built.
//!
//! The matching lower bound is not searched for. The report checks its
//! premises instead: the edge-pair condition, the per-face spoke
//! inequalities on both sides, and the triangle inequality over every pair
//! of faces.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::balance::verify_balanced;
use crate::embed::{CoreEmbedding, FaceId, FaceSet, RotationSystem, Side};
use crate::graph::{Decremented, Edge, EdgeWeights, IntegerWeighting, VertexId};
use crate::paths::{dijkstra, DistanceTable, ShortestPaths};
use crate::synth::SynthesisCertificate;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("certificate is inconsistent with its graph: {0}")]
    Structure(String),
    #[error("malformed drawing: {0}")]
    MalformedDrawing(String),
    #[error("edge {0} lies on no shortest F_u-F_v path")]
    BalancednessViolated(Edge),
    #[error("tight face check failed: {0}")]
    ClaimProofMismatch(String),
    #[error("conditions {0:?} do not hold")]
    ConditionsFailed(Vec<u8>),
    #[error("witness drawing for edge {0} does not certify criticality")]
    CertificationFailed(Edge),
}

/// Tight face of a side with `d(w_i, U_i)` and the equality residue
/// `LHS − RHS`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightFace {
    pub face: FaceId,
    pub neighbor_distance: BigUint,
    pub residue: BigInt,
}

impl TightFace {
    pub fn holds(&self) -> bool {
        !self.neighbor_distance.is_zero() && self.residue.is_zero()
    }
}

/// Exact values behind conditions (1)–(7). Face ids index the
/// certificate's face list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub t: BigUint,
    /// `d_{ω*}(F_u, F_v)`.
    pub distance: BigUint,
    pub min_core_weight: BigUint,
    /// (1): core edges whose dual edge is on no shortest `F_u F_v` path.
    pub unbalanced_edges: Vec<Edge>,
    /// (2): `ω(e)ω(e') − d·t` for the two lightest core edges.
    pub pair_margin: BigInt,
    pub lightest_pair: (Edge, Edge),
    /// (3) and (5): `LHS − RHS` for every face.
    pub u_slack: Vec<BigInt>,
    pub v_slack: Vec<BigInt>,
    /// (4) and (6).
    pub u_tight: [TightFace; 3],
    pub v_tight: [TightFace; 3],
    /// (7): `min/9 − ω(uu_i)·ω(vv_j)`.
    pub spoke_margins: [[BigRational; 3]; 3],
}

impl ConditionReport {
    pub fn passed(&self, item: u8) -> bool {
        match item {
            1 => self.unbalanced_edges.is_empty(),
            2 => self.pair_margin.is_positive(),
            3 => self.u_slack.iter().all(|s| !s.is_negative()),
            4 => self.u_tight.iter().all(TightFace::holds),
            5 => self.v_slack.iter().all(|s| !s.is_negative()),
            6 => self.v_tight.iter().all(TightFace::holds),
            7 => self.spoke_margins.iter().flatten().all(|m| m.is_positive()),
            _ => panic!("conditions are numbered 1 to 7"),
        }
    }

    pub fn failing_items(&self) -> Vec<u8> {
        (1..=7).filter(|&i| !self.passed(i)).collect()
    }

    pub fn all_passed(&self) -> bool {
        self.failing_items().is_empty()
    }
}

/// Recomputed embedding, `ω*` and its distance table for a certificate.
struct Instance<'a> {
    cert: &'a SynthesisCertificate,
    emb: CoreEmbedding,
    w_star: Vec<BigUint>,
    table: DistanceTable,
    t: BigUint,
    from_u: ShortestPaths,
    from_v: ShortestPaths,
}

impl<'a> Instance<'a> {
    fn new(cert: &'a SynthesisCertificate) -> Result<Instance<'a>, CertifyError> {
        let structure = |m: String| CertifyError::Structure(m);
        IntegerWeighting::new(&cert.graph, cert.omega.iter().map(|(e, w)| (e, w.clone())))
            .map_err(|e| structure(e.to_string()))?;
        let emb = cert.embedding().map_err(|e| structure(e.to_string()))?;
        if emb.parent_face_cycles() != cert.faces {
            return Err(structure("face list differs from the recomputed embedding".into()));
        }
        let a = &emb.anchors;
        if (a.face_u, a.face_v, a.u_faces, a.v_faces) != (cert.face_u, cert.face_v, cert.u_faces, cert.v_faces) {
            return Err(structure("anchor faces differ from the recomputed ones".into()));
        }
        let nf = emb.faces.len();
        for f in cert.u_point.tight.iter().chain(&cert.v_point.tight) {
            if *f >= nf {
                return Err(structure(format!("tight face {f} out of range")));
            }
        }
        let w_star = emb.dual_weights(&cert.omega);
        let table =
            DistanceTable::compute(&emb.dual, &w_star, &emb.anchors).map_err(|e| structure(e.to_string()))?;
        let t = cert.t().clone();
        let from_u = dijkstra(emb.dual.graph(), &w_star, a.face_u, |_| false);
        let from_v = dijkstra(emb.dual.graph(), &w_star, a.face_v, |_| false);
        Ok(Instance { cert, emb, w_star, table, t, from_u, from_v })
    }

    fn distance(&self) -> &BigUint {
        self.table.between(self.emb.anchors.face_u, self.emb.anchors.face_v)
    }

    fn cr_value(&self) -> BigUint {
        &self.t * self.distance()
    }

    fn spoke_weight(&self, side: Side, i: usize) -> BigUint {
        let (x, nbrs) = match side {
            Side::U => (self.cert.u, self.cert.u_neighbors),
            Side::V => (self.cert.v, self.cert.v_neighbors),
        };
        self.cert.omega.weight(Edge::new(x, nbrs[i]))
    }

    fn core_weights(&self) -> Vec<(BigUint, Edge)> {
        let mut out: Vec<_> = (0..self.emb.dual.edge_count())
            .map(|i| (self.w_star[i].clone(), self.emb.parent_edge(self.emb.dual.primal_edge(i))))
            .collect();
        out.sort();
        out
    }

    fn conditions(&self) -> ConditionReport {
        let anchors = &self.emb.anchors;
        let d = self.distance().clone();
        let t = self.t.clone();
        let int = |x: &BigUint| BigInt::from(x.clone());

        let balance = verify_balanced(self.emb.dual.graph(), &self.w_star, anchors.face_u, anchors.face_v);
        let unbalanced_edges: Vec<Edge> = balance
            .failing_edges
            .iter()
            .map(|&i| self.emb.parent_edge(self.emb.dual.primal_edge(i)))
            .collect();

        let core = self.core_weights();
        let min_core_weight = core[0].0.clone();
        let pair_margin = int(&(&core[0].0 * &core[1].0)) - int(&(&d * &t));

        let slack = |side: Side| -> Vec<BigInt> {
            let base = anchors.base(side);
            (0..self.table.face_count())
                .map(|f| {
                    let lhs: BigUint =
                        (0..3).map(|j| self.table.terminal(side, j, f) * self.spoke_weight(side, j)).sum();
                    int(&lhs) - int(&(self.table.between(base, f) * &t))
                })
                .collect()
        };
        let u_slack = slack(Side::U);
        let v_slack = slack(Side::V);
        let tight = |side: Side, faces: [FaceId; 3], slack: &[BigInt]| -> [TightFace; 3] {
            [0, 1, 2].map(|i| TightFace {
                face: faces[i],
                neighbor_distance: self.table.terminal(side, i, faces[i]).clone(),
                residue: slack[faces[i]].clone(),
            })
        };
        let u_tight = tight(Side::U, self.cert.u_point.tight, &u_slack);
        let v_tight = tight(Side::V, self.cert.v_point.tight, &v_slack);

        let ninth = BigRational::new(int(&min_core_weight), BigInt::from(9));
        let spoke_margins = [0, 1, 2].map(|i| {
            [0, 1, 2].map(|j| {
                let prod = self.spoke_weight(Side::U, i) * self.spoke_weight(Side::V, j);
                &ninth - BigRational::from_integer(int(&prod))
            })
        });

        ConditionReport {
            t,
            distance: d,
            min_core_weight,
            unbalanced_edges,
            pair_margin,
            lightest_pair: (core[0].1, core[1].1),
            u_slack,
            v_slack,
            u_tight,
            v_tight,
            spoke_margins,
        }
    }

    /// Dual walk from `start` along dual edge indices.
    fn walk(&self, start: FaceId, dual_edges: &[usize]) -> DualWalk {
        let g = self.emb.dual.graph();
        let mut faces = vec![start];
        let mut crossed = Vec::with_capacity(dual_edges.len());
        let mut at = start;
        for &e in dual_edges {
            at = g.other_end(e, at);
            faces.push(at);
            crossed.push(self.emb.parent_edge(self.emb.dual.primal_edge(e)));
        }
        DualWalk { faces, crossed }
    }

    fn shortest_walk(&self, sp: &ShortestPaths, target: FaceId) -> DualWalk {
        let path = sp.path_to(self.emb.dual.graph(), target).expect("dual is connected");
        self.walk(sp.source, &path)
    }

    fn drawing(
        &self,
        host: (FaceId, FaceId),
        u_spokes: [DualWalk; 3],
        v_spokes: [DualWalk; 3],
        route_uv: DualWalk,
        spoke_cross: Vec<(usize, usize)>,
    ) -> CombinatorialDrawing {
        let c = self.cert;
        CombinatorialDrawing {
            rotation: self.emb.rotation.clone(),
            to_parent: self.emb.to_parent.clone(),
            u: c.u,
            v: c.v,
            u_neighbors: c.u_neighbors,
            v_neighbors: c.v_neighbors,
            face_u: host.0,
            face_v: host.1,
            u_spokes,
            v_spokes,
            route_uv,
            spoke_cross,
        }
    }

    fn upper_bound_drawing(&self) -> CombinatorialDrawing {
        let a = &self.emb.anchors;
        // Prefer a route that crosses no edge at a terminal neighbor when one
        // of the same length exists.
        let near: Vec<VertexId> = a.u_neighbors.iter().chain(&a.v_neighbors).copied().collect();
        let dual = &self.emb.dual;
        let avoiding = dijkstra(dual.graph(), &self.w_star, a.face_u, |e| {
            let p = dual.primal_edge(e);
            near.iter().any(|&x| p.touches(x))
        });
        let route = if avoiding.dist[a.face_v].as_ref() == Some(self.distance()) {
            self.shortest_walk(&avoiding, a.face_v)
        } else {
            self.shortest_walk(&self.from_u, a.face_v)
        };
        let empty_u = a.u_faces.map(|_| DualWalk::at(a.face_u));
        let empty_v = a.v_faces.map(|_| DualWalk::at(a.face_v));
        self.drawing((a.face_u, a.face_v), empty_u, empty_v, route, Vec::new())
    }

    fn witness(&self, edge: Edge, drawing: CombinatorialDrawing) -> Result<EdgeWitness, CertifyError> {
        let count = count_crossings(&drawing, &self.cert.omega)?;
        let decremented = count_crossings(&drawing, &Decremented { base: &self.cert.omega, edge })?;
        let strict = decremented < self.cr_value();
        Ok(EdgeWitness { edge, drawing, count, decremented, strict })
    }

    fn witness_core_edge(&self, e: Edge) -> Result<EdgeWitness, CertifyError> {
        if e == self.cert.uv() {
            return self.witness(e, self.upper_bound_drawing());
        }
        let k = self
            .emb
            .core_edge(e)
            .and_then(|ce| self.emb.dual.dual_edge(ce))
            .ok_or_else(|| CertifyError::Structure(format!("{e} is not an edge of G - {{u, v}}")))?;
        let g = self.emb.dual.graph();
        let (f1, f2) = g.ends(k);
        let d = self.distance();
        let through = |a: FaceId, b: FaceId| -> Option<Vec<usize>> {
            let len = self.from_u.dist[a].as_ref()? + &self.w_star[k] + self.from_v.dist[b].as_ref()?;
            if &len != d {
                return None;
            }
            let mut path = self.from_u.path_to(g, a)?;
            path.push(k);
            let mut tail = self.from_v.path_to(g, b)?;
            tail.reverse();
            path.extend(tail);
            Some(path)
        };
        let path = through(f1, f2).or_else(|| through(f2, f1)).ok_or(CertifyError::BalancednessViolated(e))?;
        let a = &self.emb.anchors;
        let route = self.walk(a.face_u, &path);
        let empty_u = a.u_faces.map(|_| DualWalk::at(a.face_u));
        let empty_v = a.v_faces.map(|_| DualWalk::at(a.face_v));
        self.witness(e, self.drawing((a.face_u, a.face_v), empty_u, empty_v, route, Vec::new()))
    }

    fn witness_spoke_edge(&self, side: Side, i: usize) -> Result<EdgeWitness, CertifyError> {
        let a = &self.emb.anchors;
        let (host, point) = match side {
            Side::U => (self.cert.u_point.tight[i], &self.cert.u_point),
            Side::V => (self.cert.v_point.tight[i], &self.cert.v_point),
        };
        debug_assert_eq!(point.tight[i], host);
        let base = a.base(side);
        let second = a.neighbor_faces(side);
        let from_host = dijkstra(self.emb.dual.graph(), &self.w_star, host, |_| false);
        let mut lhs = BigUint::zero();
        let routed = [0, 1, 2].map(|j| {
            let target = if self.table.between(host, second[j]) < self.table.between(host, base) {
                second[j]
            } else {
                base
            };
            lhs += self.table.terminal(side, j, host) * self.spoke_weight(side, j);
            self.shortest_walk(&from_host, target)
        });
        let rhs = self.table.between(base, host) * &self.t;
        if lhs != rhs {
            return Err(CertifyError::ClaimProofMismatch(format!(
                "{side} side: face {host} is not tight for spoke {}",
                i + 1
            )));
        }
        let all_pairs = (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).collect();
        let (x, nbrs) = match side {
            Side::U => (self.cert.u, self.cert.u_neighbors),
            Side::V => (self.cert.v, self.cert.v_neighbors),
        };
        let edge = Edge::new(x, nbrs[i]);
        let drawing = match side {
            Side::U => {
                let route = self.shortest_walk(&from_host, a.face_v);
                let empty_v = a.v_faces.map(|_| DualWalk::at(a.face_v));
                self.drawing((host, a.face_v), routed, empty_v, route, all_pairs)
            }
            Side::V => {
                let route = self.shortest_walk(&self.from_u, host);
                let empty_u = a.u_faces.map(|_| DualWalk::at(a.face_u));
                self.drawing((a.face_u, host), empty_u, routed, route, all_pairs)
            }
        };
        self.witness(edge, drawing)
    }

    fn witness_for(&self, e: Edge) -> Result<EdgeWitness, CertifyError> {
        let c = self.cert;
        for (side, x, nbrs) in [(Side::U, c.u, c.u_neighbors), (Side::V, c.v, c.v_neighbors)] {
            if let Some(i) = nbrs.iter().position(|&y| Edge::new(x, y) == e) {
                return self.witness_spoke_edge(side, i);
            }
        }
        self.witness_core_edge(e)
    }

    fn lower_bound(&self, conditions: &ConditionReport) -> LowerBoundReport {
        let a = &self.emb.anchors;
        let nf = self.table.face_count();
        let d = self.distance();
        let mut min_sum: Option<BigUint> = None;
        let mut violations = Vec::new();
        for f1 in 0..nf {
            for f2 in 0..nf {
                let sum = self.table.between(a.face_u, f1) + self.table.between(f1, f2) + self.table.between(f2, a.face_v);
                if &sum < d {
                    violations.push((f1, f2));
                }
                if min_sum.as_ref().is_none_or(|m| sum < *m) {
                    min_sum = Some(sum);
                }
            }
        }
        LowerBoundReport {
            pair_margin: conditions.pair_margin.clone(),
            violating_pair: (!conditions.passed(2)).then_some(conditions.lightest_pair),
            u_faces_hold: conditions.passed(3),
            v_faces_hold: conditions.passed(5),
            face_pairs_checked: nf * nf,
            face_pair_violations: violations,
            min_face_pair_sum: min_sum.expect("at least one face"),
            equality_pair: (a.face_u, a.face_v),
            target: &self.t * d,
        }
    }
}

pub fn check_conditions(cert: &SynthesisCertificate) -> Result<ConditionReport, CertifyError> {
    Ok(Instance::new(cert)?.conditions())
}

/// Sequence of faces visited and the core edges crossed between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualWalk {
    pub faces: Vec<FaceId>,
    pub crossed: Vec<Edge>,
}

impl DualWalk {
    pub fn at(face: FaceId) -> DualWalk {
        DualWalk { faces: vec![face], crossed: Vec::new() }
    }

    pub fn start(&self) -> Option<FaceId> {
        self.faces.first().copied()
    }

    pub fn end(&self) -> Option<FaceId> {
        self.faces.last().copied()
    }
}

/// The embedding of `G - {u, v}` (core vertex ids, with `to_parent`
/// translating to ids of `G`), host faces for `u` and `v`, and a dual walk
/// for each of `uv` and the six spokes. A spoke walk runs from its
/// terminal's host face to a face containing the spoke's other end.
/// `spoke_cross` lists pairs `(i, j)` where `uu_i` and `vv_j` cross once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialDrawing {
    pub rotation: RotationSystem,
    pub to_parent: Vec<VertexId>,
    pub u: VertexId,
    pub v: VertexId,
    pub u_neighbors: [VertexId; 3],
    pub v_neighbors: [VertexId; 3],
    pub face_u: FaceId,
    pub face_v: FaceId,
    pub u_spokes: [DualWalk; 3],
    pub v_spokes: [DualWalk; 3],
    pub route_uv: DualWalk,
    pub spoke_cross: Vec<(usize, usize)>,
}

fn malformed(msg: impl Into<String>) -> CertifyError {
    CertifyError::MalformedDrawing(msg.into())
}

impl CombinatorialDrawing {
    /// Checks every structural invariant and returns the traced faces.
    pub fn validate(&self) -> Result<FaceSet, CertifyError> {
        let fs = FaceSet::trace(&self.rotation).map_err(|e| malformed(e.to_string()))?;
        let n = self.rotation.vertex_count();
        if self.to_parent.len() != n || self.to_parent.windows(2).any(|w| w[0] >= w[1]) {
            return Err(malformed("vertex map must be strictly increasing and cover the embedding"));
        }
        if self.u == self.v || self.to_parent.contains(&self.u) || self.to_parent.contains(&self.v) {
            return Err(malformed("terminals must be distinct and outside the embedded graph"));
        }
        let local = |x: VertexId| self.to_parent.binary_search(&x).ok();
        for &f in &[self.face_u, self.face_v] {
            if f >= fs.len() {
                return Err(malformed(format!("host face {f} out of range")));
            }
        }
        let check_walk = |walk: &DualWalk, start: FaceId, what: &str| -> Result<(), CertifyError> {
            if walk.start() != Some(start) {
                return Err(malformed(format!("{what} must start at face {start}")));
            }
            if walk.faces.len() != walk.crossed.len() + 1 || walk.faces.iter().any(|&f| f >= fs.len()) {
                return Err(malformed(format!("{what} has inconsistent faces")));
            }
            for (k, e) in walk.crossed.iter().enumerate() {
                let ce = local(e.lo())
                    .zip(local(e.hi()))
                    .map(|(a, b)| Edge::new(a, b))
                    .and_then(|ce| fs.edges().binary_search(&ce).ok())
                    .ok_or_else(|| malformed(format!("{what} crosses {e}, which is not embedded")))?;
                let (a, b) = fs.edge_sides(ce);
                let (p, q) = (walk.faces[k], walk.faces[k + 1]);
                if !((a, b) == (p, q) || (a, b) == (q, p)) {
                    return Err(malformed(format!("{what} crosses {e} between faces {p} and {q}")));
                }
            }
            Ok(())
        };
        for (side, host, nbrs, spokes) in [
            (Side::U, self.face_u, self.u_neighbors, &self.u_spokes),
            (Side::V, self.face_v, self.v_neighbors, &self.v_spokes),
        ] {
            for j in 0..3 {
                let what = format!("spoke {side}{}", j + 1);
                check_walk(&spokes[j], host, &what)?;
                let x = local(nbrs[j]).ok_or_else(|| malformed(format!("{what} ends outside the graph")))?;
                if !fs.faces_at(x).contains(&spokes[j].end().expect("nonempty")) {
                    return Err(malformed(format!("{what} ends in a face not containing {}", nbrs[j])));
                }
                if spokes[j].crossed.iter().any(|e| e.touches(nbrs[j])) {
                    return Err(malformed(format!("{what} crosses an edge at its own end")));
                }
            }
        }
        check_walk(&self.route_uv, self.face_u, "route of uv")?;
        if self.route_uv.end() != Some(self.face_v) {
            return Err(malformed("route of uv must end at the host face of v"));
        }
        let mut pairs = self.spoke_cross.clone();
        pairs.sort_unstable();
        pairs.dedup();
        if pairs.len() != self.spoke_cross.len() || pairs.iter().any(|&(i, j)| i > 2 || j > 2) {
            return Err(malformed("spoke crossings must be distinct pairs of spoke indices"));
        }
        Ok(fs)
    }
}

/// `Σ_f w(f)·Σ_{e crossed by f} w(e) + Σ_{(i,j)} w(uu_i)·w(vv_j)`.
pub fn count_crossings(d: &CombinatorialDrawing, w: &dyn EdgeWeights) -> Result<BigUint, CertifyError> {
    d.validate()?;
    let walk_weight = |walk: &DualWalk| -> BigUint { walk.crossed.iter().map(|&e| w.weight(e)).sum() };
    let mut total = w.weight(Edge::new(d.u, d.v)) * walk_weight(&d.route_uv);
    for j in 0..3 {
        total += w.weight(Edge::new(d.u, d.u_neighbors[j])) * walk_weight(&d.u_spokes[j]);
        total += w.weight(Edge::new(d.v, d.v_neighbors[j])) * walk_weight(&d.v_spokes[j]);
    }
    for &(i, j) in &d.spoke_cross {
        total += w.weight(Edge::new(d.u, d.u_neighbors[i])) * w.weight(Edge::new(d.v, d.v_neighbors[j]));
    }
    Ok(total)
}

pub fn upper_bound_drawing(cert: &SynthesisCertificate) -> Result<CombinatorialDrawing, CertifyError> {
    Ok(Instance::new(cert)?.upper_bound_drawing())
}

/// Drawing with counts under `ω` and under `ω` with `edge` decremented.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeWitness {
    pub edge: Edge,
    pub drawing: CombinatorialDrawing,
    pub count: BigUint,
    pub decremented: BigUint,
    /// `decremented < t·d(F_u, F_v)`.
    pub strict: bool,
}

/// Witness for an edge of `G - {u, v}` or for `uv` itself.
pub fn witness_core_edge(cert: &SynthesisCertificate, e: Edge) -> Result<EdgeWitness, CertifyError> {
    Instance::new(cert)?.witness_core_edge(e)
}

/// Witness for the spoke from the terminal on `side` to its `i`-th neighbor
/// (0-based).
pub fn witness_spoke_edge(cert: &SynthesisCertificate, side: Side, i: usize) -> Result<EdgeWitness, CertifyError> {
    Instance::new(cert)?.witness_spoke_edge(side, i)
}

/// Checked premises of the lower bound `cr(G, ω) ≥ t·d(F_u, F_v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundReport {
    pub pair_margin: BigInt,
    pub violating_pair: Option<(Edge, Edge)>,
    pub u_faces_hold: bool,
    pub v_faces_hold: bool,
    pub face_pairs_checked: usize,
    /// Pairs `(F', F'')` with `d(F_u,F') + d(F',F'') + d(F'',F_v) < d(F_u,F_v)`.
    pub face_pair_violations: Vec<(FaceId, FaceId)>,
    pub min_face_pair_sum: BigUint,
    /// `(F_u, F_v)`, which attains the minimum.
    pub equality_pair: (FaceId, FaceId),
    pub target: BigUint,
}

impl LowerBoundReport {
    pub const NOTE: &'static str =
        "cr(G, w) >= t * d(F_u, F_v) follows from the verified premises; drawings are not enumerated";

    pub fn holds(&self) -> bool {
        self.violating_pair.is_none() && self.u_faces_hold && self.v_faces_hold && self.face_pair_violations.is_empty()
    }
}

pub fn lower_bound_certificate(cert: &SynthesisCertificate) -> Result<LowerBoundReport, CertifyError> {
    let inst = Instance::new(cert)?;
    let conditions = inst.conditions();
    Ok(inst.lower_bound(&conditions))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalityReport {
    pub cr_value: BigUint,
    pub upper_bound: CombinatorialDrawing,
    pub upper_bound_count: BigUint,
    pub lower_bound: LowerBoundReport,
    /// One per edge of `G`, in edge order.
    pub witnesses: Vec<EdgeWitness>,
}

impl CriticalityReport {
    pub fn all_strict(&self) -> bool {
        self.witnesses.iter().all(|w| w.strict)
    }
}

pub fn certify_critical(cert: &SynthesisCertificate) -> Result<CriticalityReport, CertifyError> {
    let inst = Instance::new(cert)?;
    let conditions = inst.conditions();
    if !conditions.all_passed() {
        return Err(CertifyError::ConditionsFailed(conditions.failing_items()));
    }
    let cr_value = inst.cr_value();
    let upper_bound = inst.upper_bound_drawing();
    let upper_bound_count = count_crossings(&upper_bound, &cert.omega)?;
    if upper_bound_count != cr_value {
        return Err(CertifyError::CertificationFailed(cert.uv()));
    }
    let lower_bound = inst.lower_bound(&conditions);
    if !lower_bound.holds() {
        return Err(CertifyError::ConditionsFailed(vec![2]));
    }
    let mut witnesses = Vec::with_capacity(cert.graph.edge_count());
    for &e in cert.graph.edges() {
        let w = inst.witness_for(e)?;
        if !w.strict {
            return Err(CertifyError::CertificationFailed(e));
        }
        witnesses.push(w);
    }
    Ok(CriticalityReport { cr_value, upper_bound, upper_bound_count, lower_bound, witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::synth::synthesize;

    fn dodecahedron_cert() -> SynthesisCertificate {
        let g = families::dodecahedron();
        let far = families::farthest_from(&g, 0)[0];
        let uv = Edge::new(0, far);
        synthesize(&g.with_edge(uv).unwrap(), uv).unwrap()
    }

    #[test]
    fn all_conditions_hold_on_dodecahedron() {
        let cert = dodecahedron_cert();
        let r = check_conditions(&cert).unwrap();
        assert!(r.all_passed(), "failing: {:?}", r.failing_items());
    }

    /// Weights given explicitly, zero elsewhere.
    struct Sparse(Vec<(Edge, u32)>);

    impl EdgeWeights for Sparse {
        fn weight(&self, e: Edge) -> BigUint {
            self.0.iter().find(|p| p.0 == e).map_or_else(BigUint::zero, |p| BigUint::from(p.1))
        }
    }

    #[test]
    fn empty_drawing_counts_zero() {
        // Cube plus a long diagonal: all six terminal neighbors lie on one
        // face of the hexagon G - {u, v}, so nothing needs to cross.
        let g = families::cube();
        let core_vertices: Vec<VertexId> = (1..7).collect();
        let (core, to_parent) = g.without_vertices(&[0, 7]);
        assert_eq!(to_parent, core_vertices);
        let rotation = crate::embed::planar_embedding(&core).unwrap();
        let fs = FaceSet::trace(&rotation).unwrap();
        let d = CombinatorialDrawing {
            rotation,
            to_parent,
            u: 0,
            v: 7,
            u_neighbors: [1, 2, 4],
            v_neighbors: [3, 5, 6],
            face_u: 0,
            face_v: 0,
            u_spokes: [0, 0, 0].map(DualWalk::at),
            v_spokes: [0, 0, 0].map(DualWalk::at),
            route_uv: DualWalk::at(0),
            spoke_cross: Vec::new(),
        };
        assert_eq!(fs.len(), 2);
        let w = IntegerWeighting::uniform(&g.with_edge(Edge::new(0, 7)).unwrap(), BigUint::from(5u32)).unwrap();
        assert_eq!(count_crossings(&d, &w).unwrap(), BigUint::zero());
    }

    #[test]
    fn single_crossing_is_a_product() {
        let cert = dodecahedron_cert();
        let d = upper_bound_drawing(&cert).unwrap();
        let first = d.route_uv.crossed[0];
        let w = Sparse(vec![(cert.uv(), 2), (first, 3)]);
        assert_eq!(count_crossings(&d, &w).unwrap(), BigUint::from(6u32));
    }

    #[test]
    fn walk_through_wrong_edge_is_malformed() {
        let cert = dodecahedron_cert();
        let mut d = upper_bound_drawing(&cert).unwrap();
        let other = *cert.graph.edges().iter().find(|e| !d.route_uv.crossed.contains(e) && !e.touches(cert.u) && !e.touches(cert.v)).unwrap();
        d.route_uv.crossed[0] = other;
        assert!(matches!(count_crossings(&d, &cert.omega), Err(CertifyError::MalformedDrawing(_))));
    }

    #[test]
    fn upper_bound_count_is_t_times_distance() {
        let cert = dodecahedron_cert();
        let d = upper_bound_drawing(&cert).unwrap();
        let r = check_conditions(&cert).unwrap();
        assert_eq!(count_crossings(&d, &cert.omega).unwrap(), &r.t * &r.distance);
    }

    #[test]
    fn every_edge_of_dodecahedron_is_critical() {
        let cert = dodecahedron_cert();
        let report = certify_critical(&cert).unwrap();
        let conditions = check_conditions(&cert).unwrap();
        assert_eq!(report.witnesses.len(), cert.graph.edge_count());
        assert!(report.all_strict());
        assert!(report.lower_bound.holds());
        for w in &report.witnesses {
            let spoke = w.edge != cert.uv() && (w.edge.touches(cert.u) || w.edge.touches(cert.v));
            if spoke {
                assert!(w.count < &report.cr_value + &conditions.min_core_weight);
            } else if w.edge == cert.uv() {
                assert_eq!(&w.count - &w.decremented, conditions.distance);
            } else {
                assert_eq!(w.count, report.cr_value);
                assert_eq!(&w.count - &w.decremented, conditions.t);
            }
        }
    }

    #[test]
    fn inflated_core_weight_breaks_balance() {
        let cert = dodecahedron_cert();
        let e = *cert.mu.keys().next().unwrap();
        let total: BigUint = cert.omega.iter().map(|p| p.1.clone()).sum();
        let mut broken = cert.clone();
        broken.omega = cert.omega.with_weight(e, cert.omega.weight(e) + total).unwrap();
        let r = check_conditions(&broken).unwrap();
        assert!(!r.passed(1));
        assert!(r.unbalanced_edges.contains(&e));
        assert_eq!(witness_core_edge(&broken, e).unwrap_err(), CertifyError::BalancednessViolated(e));
    }
}
