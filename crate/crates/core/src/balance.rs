//! Balanced weightings: positive integer edge weights under which every
//! edge of a 2-connected loopless multigraph lies on a shortest path between
//! two terminals.
//!
//! Construction: pin the source at 0 and the sink at 1 and let every other
//! vertex settle at the conductance-weighted average of its neighbors (an
//! exact rational Laplacian solve). An edge's length is the distance between
//! its endpoints. When every edge has positive length, each interior vertex
//! has a strictly lower and a strictly higher neighbor, so every edge extends
//! to a position-monotone source–sink path, and every such path has length
//! exactly `x(sink) - x(source)`. Scaling by the least common multiple of the
//! position denominators makes the lengths integral.
//!
//! Unit conductances can leave adjacent vertices at the same position (K4
//! with the two non-terminals adjacent is the smallest example). In that case
//! the conductances are perturbed with a deterministic pseudo-random schedule
//! and the whole construction is re-verified, up to a fixed number of rounds.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{IndexedMultigraph, VertexId};
use crate::linalg;
use crate::paths::dijkstra;

pub const DEFAULT_PERTURB_ROUNDS: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BalanceError {
    #[error("terminals must be distinct vertices of the graph")]
    BadTerminals,
    #[error("graph must be 2-connected")]
    NotBiconnected,
    #[error("Laplacian system is singular")]
    Singular,
    #[error("no balanced weighting found after {0} perturbation rounds")]
    BalanceFailed(usize),
}

/// Rational positions on the segment from `source` (0) to `sink` (1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmonicPositions {
    pub source: VertexId,
    pub sink: VertexId,
    pub positions: Vec<BigRational>,
    /// Per-edge conductances used in the averaging (all ones unless
    /// perturbed).
    pub conductances: Vec<BigUint>,
}

impl HarmonicPositions {
    pub fn position(&self, v: VertexId) -> &BigRational {
        &self.positions[v]
    }

    /// Least common multiple of the reduced denominators.
    pub fn denominator_lcm(&self) -> BigUint {
        self.positions.iter().fold(BigUint::one(), |acc, p| {
            acc.lcm(p.denom().magnitude())
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedCertificate {
    pub weights: Vec<BigUint>,
    /// Source–sink distance under `weights`.
    pub distance: BigUint,
    /// For every edge, a shortest source–sink path through it (edge indices
    /// in order from the source).
    pub witnesses: Vec<Vec<usize>>,
    pub positions: HarmonicPositions,
    /// 0 when unit conductances sufficed.
    pub perturbation_rounds: usize,
}

impl BalancedCertificate {
    /// Re-checks every witness by summation alone.
    pub fn witnesses_hold(&self, g: &IndexedMultigraph) -> bool {
        let (s, t) = (self.positions.source, self.positions.sink);
        self.witnesses.iter().enumerate().all(|(e, path)| {
            let mut at = s;
            for &step in path {
                let (a, b) = g.ends(step);
                if a != at && b != at {
                    return false;
                }
                at = g.other_end(step, at);
            }
            let len: BigUint = path.iter().map(|&i| &self.weights[i]).sum();
            at == t && path.contains(&e) && len == self.distance
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceReport {
    pub distance: BigUint,
    /// Edges lying on no shortest source–sink path.
    pub failing_edges: Vec<usize>,
}

impl BalanceReport {
    pub fn passed(&self) -> bool {
        self.failing_edges.is_empty()
    }
}

fn check_input(g: &IndexedMultigraph, s: VertexId, t: VertexId) -> Result<(), BalanceError> {
    if s == t || s >= g.vertex_count() || t >= g.vertex_count() {
        return Err(BalanceError::BadTerminals);
    }
    if !g.is_biconnected() {
        return Err(BalanceError::NotBiconnected);
    }
    Ok(())
}

/// Unit-conductance positions.
pub fn harmonic_positions(
    g: &IndexedMultigraph,
    s: VertexId,
    t: VertexId,
) -> Result<HarmonicPositions, BalanceError> {
    check_input(g, s, t)?;
    solve_positions(g, s, t, vec![BigUint::one(); g.edge_count()])
}

fn solve_positions(
    g: &IndexedMultigraph,
    s: VertexId,
    t: VertexId,
    conductances: Vec<BigUint>,
) -> Result<HarmonicPositions, BalanceError> {
    let n = g.vertex_count();
    let interior: Vec<VertexId> = (0..n).filter(|&x| x != s && x != t).collect();
    let mut slot = vec![usize::MAX; n];
    for (i, &x) in interior.iter().enumerate() {
        slot[x] = i;
    }
    let m = interior.len();
    let zero = BigRational::zero();
    let mut a = vec![vec![zero.clone(); m]; m];
    let mut b = vec![zero; m];
    for (row, &x) in interior.iter().enumerate() {
        for &e in g.incident(x) {
            let c = BigRational::from_integer(BigInt::from(conductances[e].clone()));
            let y = g.other_end(e, x);
            a[row][row] += &c;
            if y == t {
                b[row] += &c;
            } else if y != s {
                a[row][slot[y]] -= &c;
            }
        }
    }
    let solved = linalg::solve(a, b).ok_or(BalanceError::Singular)?;
    let mut positions = vec![BigRational::zero(); n];
    positions[t] = BigRational::one();
    for (i, x) in interior.into_iter().enumerate() {
        positions[x] = solved[i].clone();
    }
    Ok(HarmonicPositions { source: s, sink: t, positions, conductances })
}

fn round_conductances(edges: usize, round: usize) -> Vec<BigUint> {
    if round == 0 {
        return vec![BigUint::one(); edges];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(round as u64);
    (0..edges).map(|_| BigUint::from(rng.gen_range(1u32..=1000))).collect()
}

pub fn balanced_weights(
    g: &IndexedMultigraph,
    s: VertexId,
    t: VertexId,
) -> Result<BalancedCertificate, BalanceError> {
    balanced_weights_with_rounds(g, s, t, DEFAULT_PERTURB_ROUNDS)
}

pub fn balanced_weights_with_rounds(
    g: &IndexedMultigraph,
    s: VertexId,
    t: VertexId,
    max_rounds: usize,
) -> Result<BalancedCertificate, BalanceError> {
    check_input(g, s, t)?;
    for round in 0..=max_rounds {
        let positions = solve_positions(g, s, t, round_conductances(g.edge_count(), round))?;
        if let Some(cert) = try_certificate(g, positions, round) {
            return Ok(cert);
        }
    }
    Err(BalanceError::BalanceFailed(max_rounds))
}

fn try_certificate(
    g: &IndexedMultigraph,
    positions: HarmonicPositions,
    round: usize,
) -> Option<BalancedCertificate> {
    let x = &positions.positions;
    if (0..g.edge_count()).any(|e| {
        let (a, b) = g.ends(e);
        x[a] == x[b]
    }) {
        return None;
    }
    let scale = BigRational::from_integer(BigInt::from(positions.denominator_lcm()));
    let weights: Vec<BigUint> = (0..g.edge_count())
        .map(|e| {
            let (a, b) = g.ends(e);
            let len = (&x[a] - &x[b]).abs() * &scale;
            debug_assert!(len.is_integer());
            len.to_integer().to_biguint().expect("positive length")
        })
        .collect();
    let distance = scale.to_integer().to_biguint().unwrap();
    let witnesses = (0..g.edge_count())
        .map(|e| monotone_path(g, x, e, positions.source, positions.sink))
        .collect::<Option<Vec<_>>>()?;
    let cert = BalancedCertificate { weights, distance, witnesses, positions, perturbation_rounds: round };
    let report = verify_balanced(g, &cert.weights, cert.positions.source, cert.positions.sink);
    (report.passed() && report.distance == cert.distance && cert.witnesses_hold(g)).then_some(cert)
}

/// Follows strictly decreasing positions from the lower end of `edge` down to
/// `s` and strictly increasing positions from the upper end up to `t`.
fn monotone_path(
    g: &IndexedMultigraph,
    x: &[BigRational],
    edge: usize,
    s: VertexId,
    t: VertexId,
) -> Option<Vec<usize>> {
    let (a, b) = g.ends(edge);
    let (low, high) = if x[a] < x[b] { (a, b) } else { (b, a) };
    let walk = |start: VertexId, goal: VertexId, down: bool| -> Option<Vec<usize>> {
        let mut out = Vec::new();
        let mut at = start;
        while at != goal {
            let step = g.incident(at).iter().copied().find(|&e| {
                let y = g.other_end(e, at);
                if down {
                    x[y] < x[at]
                } else {
                    x[y] > x[at]
                }
            })?;
            out.push(step);
            at = g.other_end(step, at);
        }
        Some(out)
    };
    let mut down = walk(low, s, true)?;
    down.reverse();
    down.push(edge);
    down.extend(walk(high, t, false)?);
    Some(down)
}

/// Edge `ab` passes iff `min(d(s,a) + w + d(b,t), d(s,b) + w + d(a,t)) = d(s,t)`.
pub fn verify_balanced(g: &IndexedMultigraph, w: &[BigUint], s: VertexId, t: VertexId) -> BalanceReport {
    let from_s = dijkstra(g, w, s, |_| false).dist;
    let from_t = dijkstra(g, w, t, |_| false).dist;
    let Some(distance) = from_s[t].clone() else {
        return BalanceReport { distance: BigUint::zero(), failing_edges: (0..g.edge_count()).collect() };
    };
    let failing_edges = (0..g.edge_count())
        .filter(|&e| {
            let (a, b) = g.ends(e);
            let through = |p: VertexId, q: VertexId| -> Option<BigUint> {
                Some(from_s[p].as_ref()? + &w[e] + from_t[q].as_ref()?)
            };
            let best = [through(a, b), through(b, a)].into_iter().flatten().min();
            best.as_ref() != Some(&distance)
        })
        .collect();
    BalanceReport { distance, failing_edges }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn nums(v: &[u32]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    // Vertex names for K4 tests: s = 0, t = 1, a = 2, b = 3.
    fn k4() -> IndexedMultigraph {
        // Edge order: sa, at, sb, bt, ab, st.
        IndexedMultigraph::new(4, [(0, 2), (2, 1), (0, 3), (3, 1), (2, 3), (0, 1)]).unwrap()
    }

    #[test]
    fn path_positions_and_weights() {
        let g = IndexedMultigraph::new(3, [(0, 1), (1, 2)]).unwrap();
        // Paths are not 2-connected; the midpoint position is still 1/2 when
        // solved directly.
        let pos = solve_positions(&g, 0, 2, vec![BigUint::one(); 2]).unwrap();
        assert_eq!(pos.positions[1], q(1, 2));
        assert_eq!(balanced_weights(&g, 0, 2), Err(BalanceError::NotBiconnected));
        let report = verify_balanced(&g, &nums(&[1, 1]), 0, 2);
        assert!(report.passed());
        assert_eq!(report.distance, BigUint::from(2u32));
    }

    #[test]
    fn four_cycle() {
        // s=0, a=1, t=2, b=3.
        let g = IndexedMultigraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let pos = harmonic_positions(&g, 0, 2).unwrap();
        assert_eq!(pos.positions[1], q(1, 2));
        assert_eq!(pos.positions[3], q(1, 2));
        let cert = balanced_weights(&g, 0, 2).unwrap();
        assert_eq!(cert.weights, nums(&[1, 1, 1, 1]));
        assert_eq!(cert.distance, BigUint::from(2u32));
        assert_eq!(cert.perturbation_rounds, 0);
    }

    #[test]
    fn k4_positions() {
        let pos = harmonic_positions(&k4(), 0, 1).unwrap();
        assert_eq!(pos.positions[2], q(1, 2));
        assert_eq!(pos.positions[3], q(1, 2));
    }

    #[test]
    fn k4_needs_perturbation() {
        let g = k4();
        let cert = balanced_weights(&g, 0, 1).unwrap();
        assert!(cert.perturbation_rounds >= 1);
        assert!(verify_balanced(&g, &cert.weights, 0, 1).passed());
        assert!(cert.witnesses_hold(&g));
    }

    #[test]
    fn k4_reference_and_all_ones() {
        let g = k4();
        let reference = verify_balanced(&g, &nums(&[1, 2, 2, 1, 1, 3]), 0, 1);
        assert!(reference.passed());
        assert_eq!(reference.distance, BigUint::from(3u32));
        let ones = verify_balanced(&g, &nums(&[1; 6]), 0, 1);
        assert_eq!(ones.distance, BigUint::one());
        assert_eq!(ones.failing_edges, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn parallel_edges_share_weights() {
        let g = IndexedMultigraph::new(3, [(0, 1), (0, 1), (1, 2), (0, 2), (0, 2)]).unwrap();
        let cert = balanced_weights(&g, 0, 2).unwrap();
        assert_eq!(cert.weights[0], cert.weights[1]);
        assert_eq!(cert.weights[3], cert.weights[4]);
        assert!(verify_balanced(&g, &cert.weights, 0, 2).passed());
    }

    #[test]
    fn bad_terminals() {
        assert_eq!(balanced_weights(&k4(), 1, 1), Err(BalanceError::BadTerminals));
    }

    #[test]
    fn discrete_maximum_principle() {
        let g = k4();
        let pos = harmonic_positions(&g, 0, 1).unwrap();
        let x = &pos.positions;
        for v in 2..4 {
            let nbrs: Vec<_> = g.incident(v).iter().map(|&e| &x[g.other_end(e, v)]).collect();
            if nbrs.iter().all(|p| *p == nbrs[0]) {
                continue;
            }
            assert!(nbrs.iter().any(|p| **p < x[v]));
            assert!(nbrs.iter().any(|p| **p > x[v]));
        }
    }
}
