//! JSON documents for graphs, certificates and drawings, plus DOT export.
//!
//! Every integer that can grow with the construction is written as a decimal
//! string. Serialization goes through plain transfer structs so that the
//! library types stay free of format concerns; a certificate document can be
//! replayed by rebuilding the certificate and recomputing both reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certify::{
    certify_critical, check_conditions, CombinatorialDrawing, ConditionReport, CriticalityReport, DualWalk,
    EdgeWitness, LowerBoundReport, TightFace,
};
use crate::embed::RotationSystem;
use crate::graph::{Edge, EdgeWeights, IntegerWeighting, Multigraph, SimpleGraph, VertexId};
use crate::synth::{ClaimPoint, SynthesisCertificate};

pub const FORMAT_VERSION: u32 = 1;
pub const TOOL: &str = concat!("crossweight ", env!("CARGO_PKG_VERSION"));

/// Conventions a verifier needs in order to re-derive the stored values.
pub const NOTES: [&str; 3] = [
    "inequality rows range over every face F other than the side's base face; coefficient i is the distance from the i-th terminal neighbor to F (i = 1, 2, 3)",
    "u-side right-hand sides are measured from F_u and v-side ones from F_v",
    "face ids index `faces`, which lists the face cycles of the embedding recomputed from `edges`",
];

/// Largest parallel class expanded edge by edge in DOT output.
pub const MAX_EXPANDED_MULTIPLICITY: u32 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("schema error in `{field}`: {message}")]
    Schema { field: String, message: String },
}

fn schema(field: &str, message: impl ToString) -> IoError {
    IoError::Schema { field: field.to_string(), message: message.to_string() }
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|e| {
        let message = e.to_string();
        if e.is_data() {
            let field = message
                .strip_prefix("missing field `")
                .and_then(|rest| rest.split('`').next())
                .unwrap_or("document");
            schema(field, &message)
        } else {
            IoError::Parse { line: e.line(), column: e.column(), message }
        }
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn edge_key(e: Edge) -> String {
    e.to_string()
}

fn parse_edge_key(field: &str, key: &str) -> Result<Edge, IoError> {
    let (a, b) = key.split_once('-').ok_or_else(|| schema(field, format!("bad edge key {key:?}")))?;
    let a = a.trim().parse().map_err(|_| schema(field, format!("bad edge key {key:?}")))?;
    let b = b.trim().parse().map_err(|_| schema(field, format!("bad edge key {key:?}")))?;
    Edge::try_new(a, b).map_err(|e| schema(field, e))
}

fn parse_num<T: FromStr>(field: &str, text: &str) -> Result<T, IoError> {
    text.trim().parse().map_err(|_| schema(field, format!("{text:?} is not a decimal integer")))
}

fn pair_edge(field: &str, p: [VertexId; 2]) -> Result<Edge, IoError> {
    Edge::try_new(p[0], p[1]).map_err(|e| schema(field, e))
}

fn edge_pair(e: Edge) -> [VertexId; 2] {
    [e.lo(), e.hi()]
}

fn weight_map(w: &IntegerWeighting) -> BTreeMap<String, String> {
    w.iter().map(|(e, x)| (edge_key(e), x.to_string())).collect()
}

fn parse_weight_map(
    field: &str,
    g: &SimpleGraph,
    map: &BTreeMap<String, String>,
) -> Result<IntegerWeighting, IoError> {
    let mut pairs = Vec::with_capacity(map.len());
    for (k, v) in map {
        pairs.push((parse_edge_key(field, k)?, parse_num::<BigUint>(field, v)?));
    }
    IntegerWeighting::new(g, pairs).map_err(|e| schema(field, e))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDto {
    version: u32,
    n: usize,
    edges: Vec<[VertexId; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    uv: Option<[VertexId; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    multiplicities: Option<BTreeMap<String, String>>,
}

/// A graph with an optional designated edge, weighting and multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDocument {
    pub graph: SimpleGraph,
    pub uv: Option<Edge>,
    pub weights: Option<IntegerWeighting>,
    pub multiplicities: Option<Multigraph>,
}

impl GraphDocument {
    pub fn new(graph: SimpleGraph) -> GraphDocument {
        GraphDocument { graph, uv: None, weights: None, multiplicities: None }
    }

    pub fn designated_edge(&self) -> Result<Edge, IoError> {
        self.uv.ok_or_else(|| schema("uv", "a designated edge is required"))
    }

    pub fn to_json(&self) -> String {
        to_json(&GraphDto {
            version: FORMAT_VERSION,
            n: self.graph.vertex_count(),
            edges: self.graph.edges().iter().map(|&e| edge_pair(e)).collect(),
            uv: self.uv.map(edge_pair),
            weights: self.weights.as_ref().map(weight_map),
            multiplicities: self
                .multiplicities
                .as_ref()
                .map(|m| m.classes().map(|(e, x)| (edge_key(e), x.to_string())).collect()),
        })
    }
}

pub fn parse_graph(text: &str) -> Result<GraphDocument, IoError> {
    let dto: GraphDto = from_json(text)?;
    if dto.version != FORMAT_VERSION {
        return Err(schema("version", format!("unsupported version {}", dto.version)));
    }
    let mut pairs = Vec::with_capacity(dto.edges.len());
    for &p in &dto.edges {
        pairs.push((p[0], p[1]));
    }
    let graph = SimpleGraph::new(dto.n, pairs).map_err(|e| schema("edges", e))?;
    let uv = match dto.uv {
        None => None,
        Some(p) => {
            let e = pair_edge("uv", p)?;
            if !graph.has_edge(e) {
                return Err(schema("uv", format!("{e} is not an edge")));
            }
            Some(e)
        }
    };
    let weights = dto.weights.as_ref().map(|m| parse_weight_map("weights", &graph, m)).transpose()?;
    let multiplicities = match &dto.multiplicities {
        None => None,
        Some(m) => {
            let w = parse_weight_map("multiplicities", &graph, m)?;
            Some(
                Multigraph::new(graph.vertex_count(), w.iter().map(|(e, x)| (e, x.clone())))
                    .map_err(|e| schema("multiplicities", e))?,
            )
        }
    };
    Ok(GraphDocument { graph, uv, weights, multiplicities })
}

pub fn export_dot(g: &SimpleGraph, weights: Option<&IntegerWeighting>) -> String {
    let mut out = String::from("graph G {\n");
    for x in g.vertices() {
        writeln!(out, "  {x};").unwrap();
    }
    for &e in g.edges() {
        match weights.and_then(|w| w.get(e)) {
            Some(w) => writeln!(out, "  {} -- {} [label=\"{w}\"];", e.lo(), e.hi()).unwrap(),
            None => writeln!(out, "  {} -- {};", e.lo(), e.hi()).unwrap(),
        }
    }
    out.push_str("}\n");
    out
}

/// One DOT edge per copy.
pub fn export_multigraph_dot(m: &Multigraph) -> Result<String, IoError> {
    let mut out = String::from("graph G {\n");
    for x in 0..m.vertex_count() {
        writeln!(out, "  {x};").unwrap();
    }
    for (e, mult) in m.classes() {
        let copies = u32::try_from(mult)
            .ok()
            .filter(|&k| k <= MAX_EXPANDED_MULTIPLICITY)
            .ok_or_else(|| schema("multiplicities", format!("class {e} is too large to expand")))?;
        for _ in 0..copies {
            writeln!(out, "  {} -- {};", e.lo(), e.hi()).unwrap();
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WalkDto {
    pub faces: Vec<usize>,
    pub crossed: Vec<[VertexId; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DrawingDto {
    pub rotation: Vec<Vec<VertexId>>,
    pub to_parent: Vec<VertexId>,
    pub u: VertexId,
    pub v: VertexId,
    pub u_neighbors: [VertexId; 3],
    pub v_neighbors: [VertexId; 3],
    pub face_u: usize,
    pub face_v: usize,
    pub u_spokes: [WalkDto; 3],
    pub v_spokes: [WalkDto; 3],
    pub route_uv: WalkDto,
    pub spoke_cross: Vec<[usize; 2]>,
}

fn walk_dto(w: &DualWalk) -> WalkDto {
    WalkDto { faces: w.faces.clone(), crossed: w.crossed.iter().map(|&e| edge_pair(e)).collect() }
}

fn walk_from(field: &str, w: &WalkDto) -> Result<DualWalk, IoError> {
    let crossed = w.crossed.iter().map(|&p| pair_edge(field, p)).collect::<Result<_, _>>()?;
    Ok(DualWalk { faces: w.faces.clone(), crossed })
}

impl DrawingDto {
    pub fn from_drawing(d: &CombinatorialDrawing) -> DrawingDto {
        DrawingDto {
            rotation: (0..d.rotation.vertex_count()).map(|x| d.rotation.around(x).to_vec()).collect(),
            to_parent: d.to_parent.clone(),
            u: d.u,
            v: d.v,
            u_neighbors: d.u_neighbors,
            v_neighbors: d.v_neighbors,
            face_u: d.face_u,
            face_v: d.face_v,
            u_spokes: d.u_spokes.each_ref().map(walk_dto),
            v_spokes: d.v_spokes.each_ref().map(walk_dto),
            route_uv: walk_dto(&d.route_uv),
            spoke_cross: d.spoke_cross.iter().map(|&(i, j)| [i, j]).collect(),
        }
    }

    pub fn to_drawing(&self) -> Result<CombinatorialDrawing, IoError> {
        let rotation = RotationSystem::new(self.rotation.clone()).map_err(|e| schema("rotation", e))?;
        let spokes = |field: &str, s: &[WalkDto; 3]| -> Result<[DualWalk; 3], IoError> {
            Ok([walk_from(field, &s[0])?, walk_from(field, &s[1])?, walk_from(field, &s[2])?])
        };
        Ok(CombinatorialDrawing {
            rotation,
            to_parent: self.to_parent.clone(),
            u: self.u,
            v: self.v,
            u_neighbors: self.u_neighbors,
            v_neighbors: self.v_neighbors,
            face_u: self.face_u,
            face_v: self.face_v,
            u_spokes: spokes("u_spokes", &self.u_spokes)?,
            v_spokes: spokes("v_spokes", &self.v_spokes)?,
            route_uv: walk_from("route_uv", &self.route_uv)?,
            spoke_cross: self.spoke_cross.iter().map(|p| (p[0], p[1])).collect(),
        })
    }
}

/// The whole graph `G` a drawing is of: embedded core, spokes and `uv`.
pub fn drawing_graph(d: &CombinatorialDrawing) -> Result<SimpleGraph, IoError> {
    let mut pairs: Vec<(VertexId, VertexId)> =
        d.rotation.edges().iter().map(|e| (d.to_parent[e.lo()], d.to_parent[e.hi()])).collect();
    pairs.push((d.u, d.v));
    for i in 0..3 {
        pairs.push((d.u, d.u_neighbors[i]));
        pairs.push((d.v, d.v_neighbors[i]));
    }
    SimpleGraph::new(d.to_parent.len() + 2, pairs).map_err(|e| schema("drawing", e))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DrawingDocument {
    version: u32,
    drawing: DrawingDto,
    weights: BTreeMap<String, String>,
    crossings: String,
}

/// Drawing, the weighting it is counted under, and the resulting total.
pub fn export_drawing(d: &CombinatorialDrawing, w: &IntegerWeighting) -> Result<String, IoError> {
    let total = crate::certify::count_crossings(d, w).map_err(|e| schema("drawing", e))?;
    Ok(to_json(&DrawingDocument {
        version: FORMAT_VERSION,
        drawing: DrawingDto::from_drawing(d),
        weights: weight_map(w),
        crossings: total.to_string(),
    }))
}

/// Parses an exported drawing; returns the drawing, its weighting and the
/// recorded total.
pub fn parse_drawing(text: &str) -> Result<(CombinatorialDrawing, IntegerWeighting, BigUint), IoError> {
    let doc: DrawingDocument = from_json(text)?;
    if doc.version != FORMAT_VERSION {
        return Err(schema("version", format!("unsupported version {}", doc.version)));
    }
    let d = doc.drawing.to_drawing()?;
    let g = drawing_graph(&d)?;
    let w = parse_weight_map("weights", &g, &doc.weights)?;
    Ok((d, w, parse_num("crossings", &doc.crossings)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDto {
    pub coords: [String; 3],
    pub tight: [usize; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDto {
    pub n: usize,
    pub edges: Vec<[VertexId; 2]>,
    pub u: VertexId,
    pub v: VertexId,
    pub u_neighbors: [VertexId; 3],
    pub v_neighbors: [VertexId; 3],
    pub faces: Vec<Vec<VertexId>>,
    pub face_u: usize,
    pub face_v: usize,
    pub u_faces: [usize; 3],
    pub v_faces: [usize; 3],
    pub mu: BTreeMap<String, String>,
    pub mu_distance: String,
    pub perturbation_rounds: usize,
    pub face_distances: Vec<Vec<String>>,
    pub u_point: PointDto,
    pub v_point: PointDto,
    pub m: String,
    pub r: [String; 3],
    pub s: [String; 3],
    pub c: String,
    pub omega: BTreeMap<String, String>,
}

fn strings3<T: ToString>(x: &[T; 3]) -> [String; 3] {
    x.each_ref().map(ToString::to_string)
}

fn parse3<T: FromStr>(field: &str, x: &[String; 3]) -> Result<[T; 3], IoError> {
    Ok([parse_num(field, &x[0])?, parse_num(field, &x[1])?, parse_num(field, &x[2])?])
}

fn point_dto(p: &ClaimPoint) -> PointDto {
    PointDto { coords: strings3(&p.coords), tight: p.tight }
}

fn point_from(field: &str, p: &PointDto) -> Result<ClaimPoint, IoError> {
    Ok(ClaimPoint { coords: parse3::<BigRational>(field, &p.coords)?, tight: p.tight })
}

impl CertificateDto {
    pub fn from_certificate(c: &SynthesisCertificate) -> CertificateDto {
        CertificateDto {
            n: c.graph.vertex_count(),
            edges: c.graph.edges().iter().map(|&e| edge_pair(e)).collect(),
            u: c.u,
            v: c.v,
            u_neighbors: c.u_neighbors,
            v_neighbors: c.v_neighbors,
            faces: c.faces.clone(),
            face_u: c.face_u,
            face_v: c.face_v,
            u_faces: c.u_faces,
            v_faces: c.v_faces,
            mu: c.mu.iter().map(|(e, w)| (edge_key(*e), w.to_string())).collect(),
            mu_distance: c.mu_distance.to_string(),
            perturbation_rounds: c.perturbation_rounds,
            face_distances: c.face_distances.iter().map(|row| row.iter().map(ToString::to_string).collect()).collect(),
            u_point: point_dto(&c.u_point),
            v_point: point_dto(&c.v_point),
            m: c.m.to_string(),
            r: strings3(&c.r),
            s: strings3(&c.s),
            c: c.c.to_string(),
            omega: weight_map(&c.omega),
        }
    }

    pub fn to_certificate(&self) -> Result<SynthesisCertificate, IoError> {
        let pairs: Vec<_> = self.edges.iter().map(|p| (p[0], p[1])).collect();
        let graph = SimpleGraph::new(self.n, pairs).map_err(|e| schema("edges", e))?;
        let mut mu = BTreeMap::new();
        for (k, w) in &self.mu {
            mu.insert(parse_edge_key("mu", k)?, parse_num::<BigUint>("mu", w)?);
        }
        let face_distances = self
            .face_distances
            .iter()
            .map(|row| row.iter().map(|x| parse_num::<BigUint>("face_distances", x)).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        for (field, x) in [("u", self.u), ("v", self.v)] {
            if x >= self.n {
                return Err(schema(field, "vertex out of range"));
            }
        }
        Ok(SynthesisCertificate {
            omega: parse_weight_map("omega", &graph, &self.omega)?,
            graph,
            u: self.u,
            v: self.v,
            u_neighbors: self.u_neighbors,
            v_neighbors: self.v_neighbors,
            faces: self.faces.clone(),
            face_u: self.face_u,
            face_v: self.face_v,
            u_faces: self.u_faces,
            v_faces: self.v_faces,
            mu,
            mu_distance: parse_num("mu_distance", &self.mu_distance)?,
            perturbation_rounds: self.perturbation_rounds,
            face_distances,
            u_point: point_from("u_point", &self.u_point)?,
            v_point: point_from("v_point", &self.v_point)?,
            m: parse_num("m", &self.m)?,
            r: parse3("r", &self.r)?,
            s: parse3("s", &self.s)?,
            c: parse_num("c", &self.c)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TightDto {
    pub face: usize,
    pub neighbor_distance: String,
    pub residue: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionsDto {
    pub failing: Vec<u8>,
    pub t: String,
    pub distance: String,
    pub min_core_weight: String,
    pub unbalanced_edges: Vec<[VertexId; 2]>,
    pub pair_margin: String,
    pub lightest_pair: [[VertexId; 2]; 2],
    pub u_slack: Vec<String>,
    pub v_slack: Vec<String>,
    pub u_tight: [TightDto; 3],
    pub v_tight: [TightDto; 3],
    pub spoke_margins: [[String; 3]; 3],
}

fn tight_dto(t: &TightFace) -> TightDto {
    TightDto { face: t.face, neighbor_distance: t.neighbor_distance.to_string(), residue: t.residue.to_string() }
}

impl ConditionsDto {
    pub fn from_report(r: &ConditionReport) -> ConditionsDto {
        let strings = |v: &[BigInt]| v.iter().map(ToString::to_string).collect();
        ConditionsDto {
            failing: r.failing_items(),
            t: r.t.to_string(),
            distance: r.distance.to_string(),
            min_core_weight: r.min_core_weight.to_string(),
            unbalanced_edges: r.unbalanced_edges.iter().map(|&e| edge_pair(e)).collect(),
            pair_margin: r.pair_margin.to_string(),
            lightest_pair: [edge_pair(r.lightest_pair.0), edge_pair(r.lightest_pair.1)],
            u_slack: strings(&r.u_slack),
            v_slack: strings(&r.v_slack),
            u_tight: r.u_tight.each_ref().map(tight_dto),
            v_tight: r.v_tight.each_ref().map(tight_dto),
            spoke_margins: r.spoke_margins.each_ref().map(strings3),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LowerBoundDto {
    pub note: String,
    pub holds: bool,
    pub pair_margin: String,
    pub violating_pair: Option<[[VertexId; 2]; 2]>,
    pub u_faces_hold: bool,
    pub v_faces_hold: bool,
    pub face_pairs_checked: usize,
    pub face_pair_violations: Vec<[usize; 2]>,
    pub min_face_pair_sum: String,
    pub equality_pair: [usize; 2],
    pub target: String,
}

impl LowerBoundDto {
    pub fn from_report(r: &LowerBoundReport) -> LowerBoundDto {
        LowerBoundDto {
            note: LowerBoundReport::NOTE.to_string(),
            holds: r.holds(),
            pair_margin: r.pair_margin.to_string(),
            violating_pair: r.violating_pair.map(|(a, b)| [edge_pair(a), edge_pair(b)]),
            u_faces_hold: r.u_faces_hold,
            v_faces_hold: r.v_faces_hold,
            face_pairs_checked: r.face_pairs_checked,
            face_pair_violations: r.face_pair_violations.iter().map(|&(a, b)| [a, b]).collect(),
            min_face_pair_sum: r.min_face_pair_sum.to_string(),
            equality_pair: [r.equality_pair.0, r.equality_pair.1],
            target: r.target.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDto {
    pub edge: [VertexId; 2],
    pub count: String,
    pub decremented: String,
    pub strict: bool,
    pub drawing: DrawingDto,
}

impl WitnessDto {
    pub fn from_witness(w: &EdgeWitness) -> WitnessDto {
        WitnessDto {
            edge: edge_pair(w.edge),
            count: w.count.to_string(),
            decremented: w.decremented.to_string(),
            strict: w.strict,
            drawing: DrawingDto::from_drawing(&w.drawing),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriticalityDto {
    pub cr_value: String,
    pub upper_bound_count: String,
    pub upper_bound: DrawingDto,
    pub lower_bound: LowerBoundDto,
    pub witnesses: Vec<WitnessDto>,
}

impl CriticalityDto {
    pub fn from_report(r: &CriticalityReport) -> CriticalityDto {
        CriticalityDto {
            cr_value: r.cr_value.to_string(),
            upper_bound_count: r.upper_bound_count.to_string(),
            upper_bound: DrawingDto::from_drawing(&r.upper_bound),
            lower_bound: LowerBoundDto::from_report(&r.lower_bound),
            witnesses: r.witnesses.iter().map(WitnessDto::from_witness).collect(),
        }
    }
}

/// Certificate plus both reports. `criticality` is absent when
/// certification failed (the conditions report says why).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub version: u32,
    pub tool: String,
    pub notes: Vec<String>,
    pub certificate: CertificateDto,
    pub conditions: ConditionsDto,
    pub criticality: Option<CriticalityDto>,
}

/// Outcome of re-running both checks on a stored certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Replay {
    pub conditions: ConditionsDto,
    pub criticality: Option<CriticalityDto>,
    pub conditions_match: bool,
    pub criticality_match: bool,
}

impl Replay {
    pub fn matches(&self) -> bool {
        self.conditions_match && self.criticality_match
    }

    pub fn certified(&self) -> bool {
        self.conditions.failing.is_empty() && self.criticality.is_some()
    }
}

fn reports(cert: &SynthesisCertificate) -> Result<(ConditionsDto, Option<CriticalityDto>), IoError> {
    let conditions = check_conditions(cert).map_err(|e| schema("certificate", e))?;
    let criticality = certify_critical(cert).ok().map(|r| CriticalityDto::from_report(&r));
    Ok((ConditionsDto::from_report(&conditions), criticality))
}

impl CertificateDocument {
    pub fn new(cert: &SynthesisCertificate) -> Result<CertificateDocument, IoError> {
        let (conditions, criticality) = reports(cert)?;
        Ok(CertificateDocument {
            version: FORMAT_VERSION,
            tool: TOOL.to_string(),
            notes: NOTES.iter().map(ToString::to_string).collect(),
            certificate: CertificateDto::from_certificate(cert),
            conditions,
            criticality,
        })
    }

    pub fn parse(text: &str) -> Result<CertificateDocument, IoError> {
        let doc: CertificateDocument = from_json(text)?;
        if doc.version != FORMAT_VERSION {
            return Err(schema("version", format!("unsupported version {}", doc.version)));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn certificate(&self) -> Result<SynthesisCertificate, IoError> {
        self.certificate.to_certificate()
    }

    /// Recomputes both reports from the stored certificate alone.
    pub fn replay(&self) -> Result<Replay, IoError> {
        let cert = self.certificate()?;
        let (conditions, criticality) = reports(&cert)?;
        Ok(Replay {
            conditions_match: conditions == self.conditions,
            criticality_match: criticality == self.criticality,
            conditions,
            criticality,
        })
    }
}

/// Serialized form of a hypothesis report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypothesisDto {
    pub u: VertexId,
    pub v: VertexId,
    pub accepted: bool,
    pub is_simple: bool,
    pub g_minus_uv_cubic: bool,
    pub g_minus_uv_3connected: bool,
    pub g_minus_uv_planar: bool,
    pub g_nonplanar: bool,
    pub guv_internally_3connected: bool,
    pub neighbor_distinctness: bool,
    pub u_neighbors: Option<[VertexId; 3]>,
    pub v_neighbors: Option<[VertexId; 3]>,
    pub failures: Vec<String>,
}

impl HypothesisDto {
    pub fn from_report(r: &crate::validate::HypothesisReport) -> HypothesisDto {
        HypothesisDto {
            u: r.u,
            v: r.v,
            accepted: r.accepted(),
            is_simple: r.is_simple,
            g_minus_uv_cubic: r.g_minus_uv_cubic,
            g_minus_uv_3connected: r.g_minus_uv_3connected,
            g_minus_uv_planar: r.g_minus_uv_planar,
            g_nonplanar: r.g_nonplanar,
            guv_internally_3connected: r.guv_internally_3connected,
            neighbor_distinctness: r.neighbor_distinctness,
            u_neighbors: r.u_neighbors,
            v_neighbors: r.v_neighbors,
            failures: r.failures.iter().map(ToString::to_string).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

/// Weight lookup from a decoded map; used when a drawing is replayed
/// against a weighting that need not cover a full graph.
pub struct WeightMap(pub BTreeMap<Edge, BigUint>);

impl EdgeWeights for WeightMap {
    fn weight(&self, e: Edge) -> BigUint {
        self.0.get(&e).cloned().unwrap_or_default()
    }
}
