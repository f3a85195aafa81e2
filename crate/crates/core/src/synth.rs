//! Construction of a weighting `ω` on `G` satisfying the seven criticality
//! conditions checked in [`crate::certify`].
//!
//! Pipeline: embed `G - {u, v}`, take a balanced dual weighting `μ*` with
//! terminals `F_u, F_v`, solve the face inequality system on each side for a
//! rational point with three tight faces, clear denominators, and scale the
//! core by a constant `c` large enough for the edge-pair and spoke-product
//! conditions.
//!
//! The whole construction runs on a canonical relabeling of the input and is
//! mapped back at the end, so isomorphic inputs yield isomorphic
//! certificates.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::balance::{balanced_weights_with_rounds, BalanceError, DEFAULT_PERTURB_ROUNDS};
use crate::canon::canonical_form;
use crate::certify::check_conditions;
use crate::embed::{AnchorFaces, CoreEmbedding, EmbedError, FaceId, Side};
use crate::graph::{invert_permutation, Edge, GraphError, IntegerWeighting, SimpleGraph, VertexId};
use crate::paths::{DisconnectedDual, DistanceTable};
use crate::validate::{validate_hypotheses, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error("hypotheses rejected: {}", list(.0))]
    Hypotheses(Vec<Violation>),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error(transparent)]
    Balance(#[from] BalanceError),
    #[error(transparent)]
    Disconnected(#[from] DisconnectedDual),
    #[error("degenerate anchors on the {side} side: row for face {face} has a zero in column {column}")]
    DegenerateAnchors { side: Side, face: FaceId, column: usize },
    #[error("claim point check failed: {0}")]
    ClaimProofMismatch(String),
    #[error("final condition check failed: {0}")]
    FinalCheckFailed(String),
}

fn list(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// `Σ_j coefficients[j]·x_j ≥ rhs`, one per face other than the base face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityRow {
    pub face: FaceId,
    pub coefficients: [BigUint; 3],
    pub rhs: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalitySystem {
    pub side: Side,
    pub base: FaceId,
    pub rows: Vec<InequalityRow>,
    /// Row index of the row for `F_{w_i}`, whose `i`-th coefficient is zero.
    pub gamma: [usize; 3],
}

impl InequalitySystem {
    /// Validates the sign pattern: the three `Γ` rows are positive except in
    /// their own column, and no other row has a zero coefficient.
    #[allow(clippy::needless_range_loop)]
    pub fn from_rows(
        side: Side,
        base: FaceId,
        rows: Vec<InequalityRow>,
        gamma: [usize; 3],
    ) -> Result<InequalitySystem, SynthError> {
        for (k, row) in rows.iter().enumerate() {
            for column in 0..3 {
                let zero_allowed = gamma[column] == k;
                if row.coefficients[column].is_zero() != zero_allowed {
                    return Err(SynthError::DegenerateAnchors { side, face: row.face, column });
                }
            }
            if gamma.contains(&k) && row.rhs.is_zero() {
                return Err(SynthError::DegenerateAnchors { side, face: row.face, column: 3 });
            }
        }
        Ok(InequalitySystem { side, base, rows, gamma })
    }

    pub fn satisfied_by(&self, x: &[BigRational; 3]) -> bool {
        self.rows.iter().all(|row| row_value(row, x) >= rat(&row.rhs))
    }

    pub fn row_for(&self, face: FaceId) -> Option<&InequalityRow> {
        self.rows.iter().find(|r| r.face == face)
    }
}

fn rat(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

fn row_value(row: &InequalityRow, x: &[BigRational; 3]) -> BigRational {
    (0..3).map(|j| rat(&row.coefficients[j]) * &x[j]).sum()
}

pub fn build_inequality_system(
    dt: &DistanceTable,
    anchors: &AnchorFaces,
    side: Side,
) -> Result<InequalitySystem, SynthError> {
    let base = anchors.base(side);
    let second = anchors.neighbor_faces(side);
    let rows: Vec<InequalityRow> = (0..dt.face_count())
        .filter(|&f| f != base)
        .map(|f| InequalityRow {
            face: f,
            coefficients: [0, 1, 2].map(|i| dt.terminal(side, i, f).clone()),
            rhs: dt.between(base, f).clone(),
        })
        .collect();
    let gamma = second.map(|f| rows.iter().position(|r| r.face == f).expect("second face differs from base"));
    InequalitySystem::from_rows(side, base, rows, gamma)
}

/// Rational point of a side's system with its three tight faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimPoint {
    pub coords: [BigRational; 3],
    pub tight: [FaceId; 3],
}

/// Intersects the planes of `Γ1` and `Γ2` inside the positive octant, then
/// slides along the `x_1` direction to the last plane crossing.
pub fn claim_point(sys: &InequalitySystem) -> Result<ClaimPoint, SynthError> {
    let g1 = &sys.rows[sys.gamma[0]];
    let g2 = &sys.rows[sys.gamma[1]];
    let (b2, b3, beta1) = (rat(&g1.coefficients[1]), rat(&g1.coefficients[2]), rat(&g1.rhs));
    let (c3, beta2) = (rat(&g2.coefficients[2]), rat(&g2.rhs));
    // On the line x_3 = τ, x_2 = (β1 − b3τ)/b2, x_1 = (β2 − c3τ)/c1; all
    // three are positive exactly for 0 < τ < min(β1/b3, β2/c3). Only x_2 and
    // x_3 are kept: the sweep below recomputes x_1.
    let tau = (&beta1 / &b3).min(&beta2 / &c3) / BigRational::from_integer(2.into());
    let a2 = (&beta1 - &b3 * &tau) / &b2;
    let a3 = tau;

    let mut best: Option<(BigRational, FaceId)> = None;
    for (k, row) in sys.rows.iter().enumerate() {
        if k == sys.gamma[0] {
            continue;
        }
        let k1 = rat(&row.coefficients[0]);
        let hit = (rat(&row.rhs) - rat(&row.coefficients[1]) * &a2 - rat(&row.coefficients[2]) * &a3) / k1;
        let better = match &best {
            None => true,
            Some((x, f)) => hit > *x || (hit == *x && row.face < *f),
        };
        if better {
            best = Some((hit, row.face));
        }
    }
    let (a1, u1) = best.ok_or_else(|| SynthError::ClaimProofMismatch("system has a single row".into()))?;
    let point = ClaimPoint { coords: [a1, a2, a3], tight: [u1, g1.face, g1.face] };
    check_claim_point(sys, &point)?;
    Ok(point)
}

/// Positivity, feasibility of every row, tightness of the declared rows and
/// a positive own-column coefficient on each of them.
pub fn check_claim_point(sys: &InequalitySystem, p: &ClaimPoint) -> Result<(), SynthError> {
    let fail = |msg: String| Err(SynthError::ClaimProofMismatch(format!("{} side: {msg}", sys.side)));
    if p.coords.iter().any(|x| !x.is_positive()) {
        return fail("coordinates must be positive".into());
    }
    if let Some(row) = sys.rows.iter().find(|r| row_value(r, &p.coords) < rat(&r.rhs)) {
        return fail(format!("row of face {} is violated", row.face));
    }
    for (i, &f) in p.tight.iter().enumerate() {
        let Some(row) = sys.row_for(f) else {
            return fail(format!("tight face {f} has no row"));
        };
        if row_value(row, &p.coords) != rat(&row.rhs) {
            return fail(format!("face {f} is not tight"));
        }
        if row.coefficients[i].is_zero() {
            return fail(format!("distance from neighbor {} to face {f} is zero", i + 1));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Integerized {
    pub m: BigUint,
    pub r: [BigUint; 3],
    pub s: [BigUint; 3],
}

fn to_uint(x: &BigInt) -> BigUint {
    x.to_biguint().expect("nonnegative")
}

/// `M = q1q2q3·b1b2b3` over reduced denominators; `r_i = p_i·M/q_i`,
/// `s_i = a_i·M/b_i`.
pub fn integerize(p: &[BigRational; 3], a: &[BigRational; 3]) -> Integerized {
    let m: BigUint = p.iter().chain(a).map(|x| to_uint(x.denom())).product();
    let scale = |x: &BigRational| to_uint(x.numer()) * (&m / to_uint(x.denom()));
    Integerized { r: p.each_ref().map(scale), s: a.each_ref().map(scale), m }
}

/// Smallest integer strictly above both `M·d / min_mu²` and
/// `9·r_i·s_j / min_mu` for all `i, j`.
pub fn choose_c(m: &BigUint, d: &BigUint, min_mu: &BigUint, r: &[BigUint; 3], s: &[BigUint; 3]) -> BigUint {
    let first = (m * d) / (min_mu * min_mu);
    let max_rs = r.iter().flat_map(|ri| s.iter().map(move |sj| ri * sj)).max().expect("nine products");
    let second = (BigUint::from(9u32) * max_rs) / min_mu;
    first.max(second) + BigUint::one()
}

/// Everything produced by the construction. Faces are stored as vertex
/// cycles of `G - {u, v}` in the order of the embedding recomputed from
/// `graph`, and every face reference is an index into that list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthesisCertificate {
    pub graph: SimpleGraph,
    pub u: VertexId,
    pub v: VertexId,
    pub u_neighbors: [VertexId; 3],
    pub v_neighbors: [VertexId; 3],
    pub faces: Vec<Vec<VertexId>>,
    pub face_u: FaceId,
    pub face_v: FaceId,
    pub u_faces: [FaceId; 3],
    pub v_faces: [FaceId; 3],
    /// Balanced weighting of `G - {u, v}` (keys are edges of `graph`).
    pub mu: BTreeMap<Edge, BigUint>,
    pub mu_distance: BigUint,
    pub perturbation_rounds: usize,
    /// Face distances under `μ*`.
    pub face_distances: Vec<Vec<BigUint>>,
    pub u_point: ClaimPoint,
    pub v_point: ClaimPoint,
    pub m: BigUint,
    pub r: [BigUint; 3],
    pub s: [BigUint; 3],
    pub c: BigUint,
    pub omega: IntegerWeighting,
}

impl SynthesisCertificate {
    pub fn uv(&self) -> Edge {
        Edge::new(self.u, self.v)
    }

    pub fn t(&self) -> &BigUint {
        self.omega.get(self.uv()).expect("uv is weighted")
    }

    pub fn embedding(&self) -> Result<CoreEmbedding, EmbedError> {
        CoreEmbedding::build(&self.graph, self.u, self.v, self.u_neighbors, self.v_neighbors)
    }

    /// Applies `perm` (old → new) to every vertex and re-indexes faces to the
    /// embedding of the relabeled graph.
    pub fn relabel(&self, perm: &[VertexId]) -> Result<SynthesisCertificate, SynthError> {
        let graph = self.graph.relabel(perm)?;
        let map3 = |t: [VertexId; 3]| t.map(|x| perm[x]);
        let (u, v) = (perm[self.u], perm[self.v]);
        let (u_neighbors, v_neighbors) = (map3(self.u_neighbors), map3(self.v_neighbors));
        let emb = CoreEmbedding::build(&graph, u, v, u_neighbors, v_neighbors)?;
        let mut face_map = Vec::with_capacity(self.faces.len());
        for cycle in &self.faces {
            let edges = cycle_edges(&cycle.iter().map(|&x| perm[x]).collect::<Vec<_>>());
            let core_edges: Option<Vec<Edge>> = edges.iter().map(|&e| emb.core_edge(e)).collect();
            let mut core_edges = core_edges.ok_or_else(|| {
                SynthError::ClaimProofMismatch("face cycle leaves G - {u, v}".into())
            })?;
            core_edges.sort_unstable();
            let f = emb.faces.find_by_edges(&core_edges).ok_or_else(|| {
                SynthError::ClaimProofMismatch("face cycle is not a face of the relabeled embedding".into())
            })?;
            face_map.push(f);
        }
        let nf = face_map.len();
        if emb.faces.len() != nf {
            return Err(SynthError::ClaimProofMismatch("face count changed under relabeling".into()));
        }
        let mf = |f: FaceId| face_map[f];
        let mut face_distances = vec![vec![BigUint::zero(); nf]; nf];
        for a in 0..nf {
            for b in 0..nf {
                face_distances[mf(a)][mf(b)] = self.face_distances[a][b].clone();
            }
        }
        let point = |p: &ClaimPoint| ClaimPoint { coords: p.coords.clone(), tight: p.tight.map(mf) };
        Ok(SynthesisCertificate {
            faces: emb.parent_face_cycles(),
            graph,
            u,
            v,
            u_neighbors,
            v_neighbors,
            face_u: mf(self.face_u),
            face_v: mf(self.face_v),
            u_faces: self.u_faces.map(mf),
            v_faces: self.v_faces.map(mf),
            mu: self.mu.iter().map(|(e, w)| (e.map(|x| perm[x]), w.clone())).collect(),
            mu_distance: self.mu_distance.clone(),
            perturbation_rounds: self.perturbation_rounds,
            face_distances,
            u_point: point(&self.u_point),
            v_point: point(&self.v_point),
            m: self.m.clone(),
            r: self.r.clone(),
            s: self.s.clone(),
            c: self.c.clone(),
            omega: self.omega.relabel(perm),
        })
    }
}

pub(crate) fn cycle_edges(cycle: &[VertexId]) -> Vec<Edge> {
    let k = cycle.len();
    let mut out: Vec<Edge> = (0..k).map(|i| Edge::new(cycle[i], cycle[(i + 1) % k])).collect();
    out.sort_unstable();
    out
}

pub fn synthesize(g: &SimpleGraph, uv: Edge) -> Result<SynthesisCertificate, SynthError> {
    synthesize_with_rounds(g, uv, DEFAULT_PERTURB_ROUNDS)
}

pub fn synthesize_with_rounds(
    g: &SimpleGraph,
    uv: Edge,
    max_perturb_rounds: usize,
) -> Result<SynthesisCertificate, SynthError> {
    let report = validate_hypotheses(g, uv)?;
    if !report.accepted() {
        return Err(SynthError::Hypotheses(report.failures));
    }
    let canon = canonical_form(g, uv)?;
    let cert = synthesize_in_frame(&canon.graph, canon.uv, max_perturb_rounds)?;
    let cert = cert.relabel(&invert_permutation(&canon.perm))?;
    let conditions = check_conditions(&cert).map_err(|e| SynthError::FinalCheckFailed(e.to_string()))?;
    if !conditions.all_passed() {
        return Err(SynthError::FinalCheckFailed(format!(
            "conditions {:?} do not hold",
            conditions.failing_items()
        )));
    }
    Ok(cert)
}

/// The construction proper, with `u = uv.lo()` and neighbor triples in
/// increasing order.
fn synthesize_in_frame(g: &SimpleGraph, uv: Edge, rounds: usize) -> Result<SynthesisCertificate, SynthError> {
    let (u, v) = uv.ends();
    let triple = |x: VertexId, other: VertexId| -> [VertexId; 3] {
        let n: Vec<_> = g.neighbors(x).iter().copied().filter(|&y| y != other).collect();
        [n[0], n[1], n[2]]
    };
    let (un, vn) = (triple(u, v), triple(v, u));
    let emb = CoreEmbedding::build(g, u, v, un, vn)?;
    let anchors = &emb.anchors;

    let balanced = balanced_weights_with_rounds(emb.dual.graph(), anchors.face_u, anchors.face_v, rounds)?;
    let mu_star = balanced.weights;
    let dt = DistanceTable::compute(&emb.dual, &mu_star, anchors)?;

    let sys_u = build_inequality_system(&dt, anchors, Side::U)?;
    let sys_v = build_inequality_system(&dt, anchors, Side::V)?;
    let u_point = claim_point(&sys_u)?;
    let v_point = claim_point(&sys_v)?;
    let Integerized { m, r, s } = integerize(&u_point.coords, &v_point.coords);
    check_scaled(&sys_u, &r, &m)?;
    check_scaled(&sys_v, &s, &m)?;

    let min_mu = mu_star.iter().min().expect("core has edges").clone();
    let d = dt.between(anchors.face_u, anchors.face_v).clone();
    let c = choose_c(&m, &d, &min_mu, &r, &s);

    let mu: BTreeMap<Edge, BigUint> = (0..emb.dual.edge_count())
        .map(|i| (emb.parent_edge(emb.dual.primal_edge(i)), mu_star[i].clone()))
        .collect();
    let mut omega: Vec<(Edge, BigUint)> = vec![(uv, m.clone())];
    for i in 0..3 {
        omega.push((Edge::new(u, un[i]), r[i].clone()));
        omega.push((Edge::new(v, vn[i]), s[i].clone()));
    }
    omega.extend(mu.iter().map(|(&e, w)| (e, &c * w)));
    let omega = IntegerWeighting::new(g, omega)?;

    let nf = dt.face_count();
    Ok(SynthesisCertificate {
        graph: g.clone(),
        u,
        v,
        u_neighbors: un,
        v_neighbors: vn,
        faces: emb.parent_face_cycles(),
        face_u: anchors.face_u,
        face_v: anchors.face_v,
        u_faces: anchors.u_faces,
        v_faces: anchors.v_faces,
        mu,
        mu_distance: d,
        perturbation_rounds: balanced.perturbation_rounds,
        face_distances: (0..nf).map(|a| (0..nf).map(|b| dt.between(a, b).clone()).collect()).collect(),
        u_point,
        v_point,
        m,
        r,
        s,
        c,
        omega,
    })
}

/// The integer system `Σ d_j·r_j ≥ M·rhs` with equality on the tight rows.
fn check_scaled(sys: &InequalitySystem, r: &[BigUint; 3], m: &BigUint) -> Result<(), SynthError> {
    let lhs = |row: &InequalityRow| -> BigUint { (0..3).map(|j| &row.coefficients[j] * &r[j]).sum() };
    for row in &sys.rows {
        if lhs(row) < m * &row.rhs {
            return Err(SynthError::ClaimProofMismatch(format!(
                "{} side: scaled row of face {} is violated",
                sys.side, row.face
            )));
        }
    }
    Ok(())
}

impl Integerized {
    /// Dividing the integer solution by `M` gives back the rational point.
    pub fn recovers(&self, p: &[BigRational; 3], a: &[BigRational; 3]) -> bool {
        let m = rat(&self.m);
        (0..3).all(|i| rat(&self.r[i]) / &m == p[i] && rat(&self.s[i]) / &m == a[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(x: u32) -> BigUint {
        BigUint::from(x)
    }

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn row(face: FaceId, c: [u32; 3], rhs: u32) -> InequalityRow {
        InequalityRow { face, coefficients: c.map(nat), rhs: nat(rhs) }
    }

    fn gamma_only(rhs: u32) -> InequalitySystem {
        InequalitySystem::from_rows(
            Side::U,
            0,
            vec![row(1, [0, 1, 1], rhs), row(2, [1, 0, 1], rhs), row(3, [1, 1, 0], rhs)],
            [0, 1, 2],
        )
        .unwrap()
    }

    #[test]
    fn symmetric_gamma_system() {
        let p = claim_point(&gamma_only(2)).unwrap();
        assert_eq!(p.coords, [ratio(1, 1), ratio(1, 1), ratio(1, 1)]);
        // Γ2 and Γ3 both meet the ray at 1; the smaller face id wins.
        assert_eq!(p.tight, [2, 1, 1]);
    }

    /// Grid oracle along the ray: no grid value of x_1 below the returned one
    /// is feasible with the same (x_2, x_3).
    #[test]
    fn claim_point_matches_grid_feasibility() {
        let sys = InequalitySystem::from_rows(
            Side::U,
            0,
            vec![
                row(1, [0, 2, 1], 3),
                row(2, [3, 0, 1], 2),
                row(3, [1, 1, 0], 2),
                row(4, [2, 1, 2], 5),
                row(5, [1, 3, 1], 4),
            ],
            [0, 1, 2],
        )
        .unwrap();
        let p = claim_point(&sys).unwrap();
        assert!(sys.satisfied_by(&p.coords));
        for i in 1..=64 {
            let x1 = ratio(i, 16);
            if x1 < p.coords[0] {
                let q = [x1, p.coords[1].clone(), p.coords[2].clone()];
                assert!(!sys.satisfied_by(&q));
            }
        }
    }

    #[test]
    fn unbalanced_coefficient_still_tight() {
        let sys = InequalitySystem::from_rows(
            Side::V,
            0,
            vec![row(1, [0, 1, 3], 2), row(2, [1, 0, 1], 2), row(3, [1, 1, 0], 2)],
            [0, 1, 2],
        )
        .unwrap();
        let p = claim_point(&sys).unwrap();
        check_claim_point(&sys, &p).unwrap();
        for &f in &p.tight {
            let r = sys.row_for(f).unwrap();
            assert_eq!(row_value(r, &p.coords), rat(&r.rhs));
        }
    }

    #[test]
    fn large_point_is_feasible() {
        let sys = gamma_only(5);
        let t = ratio(5, 1);
        assert!(sys.satisfied_by(&[t.clone(), t.clone(), t]));
    }

    #[test]
    fn zero_off_gamma_is_degenerate() {
        let err = InequalitySystem::from_rows(
            Side::U,
            0,
            vec![row(1, [0, 0, 1], 1), row(2, [1, 0, 1], 1), row(3, [1, 1, 0], 1)],
            [0, 1, 2],
        )
        .unwrap_err();
        assert_eq!(err, SynthError::DegenerateAnchors { side: Side::U, face: 1, column: 1 });
    }

    #[test]
    fn integerize_examples() {
        let one = [ratio(1, 1), ratio(1, 1), ratio(1, 1)];
        let i = integerize(&one, &one);
        assert_eq!((i.m, i.r, i.s), (nat(1), [1, 1, 1].map(nat), [1, 1, 1].map(nat)));

        let p = [ratio(1, 2), ratio(1, 3), ratio(1, 1)];
        let i = integerize(&p, &one);
        assert_eq!((i.m.clone(), i.r.clone(), i.s.clone()), (nat(6), [3, 2, 6].map(nat), [6, 6, 6].map(nat)));
        assert!(i.recovers(&p, &one));
    }

    #[test]
    fn choose_c_examples() {
        let ones = [1, 1, 1].map(nat);
        assert_eq!(choose_c(&nat(6), &nat(2), &nat(1), &ones, &ones), nat(13));
        assert_eq!(choose_c(&nat(1), &nat(1), &nat(10), &ones, &ones), nat(1));
        let r = [2, 5, 1].map(nat);
        let s = [3, 1, 4].map(nat);
        let c = choose_c(&nat(7), &nat(3), &nat(2), &r, &s);
        assert!(&c * nat(4) > nat(21));
        assert!(&c * nat(2) > nat(9 * 20));
        assert!((&c - 1u32) * nat(2) <= nat(180) || (&c - 1u32) * nat(4) <= nat(21));
    }
}
