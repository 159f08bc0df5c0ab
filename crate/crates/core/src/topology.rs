//! Index and Euler characteristic arithmetic, per-basic-set genus, the
//! pairing graph, and the connected-sum decomposition of the ambient surface.
//!
//! Cutting the surface along the annulus around one attractor bunch either
//! splits it in two or leaves it connected; on the pairing graph this is
//! exactly "the component is a bridge of what is left" or not. Each
//! non-splitting cut contributes one torus summand, so the number of tori is
//! the cycle rank of the pairing graph.

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::model::{genus_formula, validate_spec, BasicSet, DiffeoSpec, Kind, Rational, ValidationReport};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TopologyError {
    #[error("separatrix count must be at least 1, got {0}")]
    SeparatrixCount(u32),
    #[error("m={m}, h={h}: m - h/2 is not an even integer (h - 2m must be divisible by 4)")]
    NonIntegralEuler { m: u64, h: u64 },
    #[error("basic set {id}: genus 1 + h/4 - m/2 = {value} is not a non-negative integer")]
    BadGenus { id: String, value: Rational },
    #[error("pairing graph is disconnected")]
    Disconnected,
    #[error("surgery order is not a permutation of the component ids: {0}")]
    BadOrder(String),
    #[error("invalid spec: {} violation(s)", .0.violations.len())]
    InvalidSpec(ValidationReport),
}

/// Poincaré–Hopf index of a saddle-type singularity with `k` separatrices:
/// `1 - k/2`.
pub fn saddle_index(separatrix_count: u32) -> Result<Rational, TopologyError> {
    if separatrix_count == 0 {
        return Err(TopologyError::SeparatrixCount(separatrix_count));
    }
    Ok(Rational::from_integer(1) - Rational::new(i64::from(separatrix_count), 2))
}

/// Euler characteristic of the closed surface obtained by capping the
/// trapping neighbourhood of a basic set with `m` bunches of total degree `h`:
/// `m - h/2`.
pub fn euler_char_closed_from_bunches(m: u64, h: u64) -> Result<i64, TopologyError> {
    if (h as i128 - 2 * m as i128).rem_euclid(4) != 0 {
        return Err(TopologyError::NonIntegralEuler { m, h });
    }
    Ok(m as i64 - (h / 2) as i64)
}

/// Removing open disks lowers the Euler characteristic by one per disk.
pub fn euler_char_with_boundary(chi_closed: i64, boundary_curves: u64) -> i64 {
    chi_closed - boundary_curves as i64
}

/// Genus and boundary count of the trapping neighbourhood of a basic set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubsurfaceProfile {
    pub genus: u64,
    pub boundary_count: u64,
}

impl SubsurfaceProfile {
    /// Euler characteristic of the neighbourhood itself (with its boundary).
    pub fn euler_characteristic(&self) -> i64 {
        euler_char_with_boundary(2 - 2 * self.genus as i64, self.boundary_count)
    }
}

pub fn basic_set_genus(set: &BasicSet) -> Result<SubsurfaceProfile, TopologyError> {
    let (m, h) = (set.bunch_count(), set.degree_sum());
    let value = genus_formula(m, h);
    let bad = || TopologyError::BadGenus {
        id: set.id.clone(),
        value,
    };
    if !value.is_integer() || value < Rational::from_integer(0) {
        return Err(bad());
    }
    let genus = value.to_integer() as u64;
    // chi of the capped surface, two ways
    let chi = euler_char_closed_from_bunches(m, h).map_err(|_| bad())?;
    let by_index: Rational = set
        .bunches
        .iter()
        .map(|b| saddle_index(b.degree))
        .sum::<Result<Rational, _>>()
        .map_err(|_| bad())?;
    debug_assert_eq!(Rational::from_integer(chi), by_index);
    debug_assert_eq!(chi, 2 - 2 * genus as i64);
    Ok(SubsurfaceProfile {
        genus,
        boundary_count: m,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingVertex {
    pub id: String,
    pub kind: Kind,
}

/// Edge joining the owners of the two bunches of a complement component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingEdge {
    pub id: String,
    pub attractor: usize,
    pub repeller: usize,
}

/// Multigraph: basic sets as vertices, complement components as edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingGraph {
    pub vertices: Vec<PairingVertex>,
    pub edges: Vec<PairingEdge>,
}

impl PairingGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count(|_| true) <= 1
    }

    fn component_count(&self, keep: impl Fn(usize) -> bool) -> usize {
        let mut sets = DisjointSets::new(self.vertices.len());
        for (i, e) in self.edges.iter().enumerate() {
            if keep(i) {
                sets.union(e.attractor, e.repeller);
            }
        }
        sets.count()
    }

    /// Graphviz rendering; vertex label `id:kind:genus` when genera are given.
    pub fn to_dot(&self, genera: Option<&[u64]>) -> String {
        let mut out = String::from("graph pairing {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let label = match genera {
                Some(g) => format!("{}:{}:{}", v.id, v.kind, g[i]),
                None => format!("{}:{}", v.id, v.kind),
            };
            let shape = match v.kind {
                Kind::Attractor => "box",
                Kind::Repeller => "ellipse",
            };
            let _ = writeln!(out, "  {:?} [label={label:?}, shape={shape}];", v.id);
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  {:?} -- {:?} [label={:?}];",
                self.vertices[e.attractor].id, self.vertices[e.repeller].id, e.id
            );
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) struct DisjointSets {
    parent: Vec<usize>,
    count: usize,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            count: n,
        }
    }

    pub(crate) fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.count -= 1;
        true
    }

    pub(crate) fn count(&self) -> usize {
        self.count
    }
}

fn require_valid(spec: &DiffeoSpec) -> Result<(), TopologyError> {
    let report = validate_spec(spec);
    if report.valid {
        Ok(())
    } else {
        Err(TopologyError::InvalidSpec(report))
    }
}

/// Vertices and edges in canonical id order.
pub fn build_pairing_graph(spec: &DiffeoSpec) -> Result<PairingGraph, TopologyError> {
    require_valid(spec)?;
    let canon = spec.canonicalized();
    let owners = canon.bunch_owners();
    let vertices = canon
        .basic_sets
        .iter()
        .map(|s| PairingVertex {
            id: s.id.clone(),
            kind: s.kind,
        })
        .collect();
    let edges = canon
        .complement_components
        .iter()
        .map(|c| PairingEdge {
            id: c.id.clone(),
            attractor: owners[c.attractor_bunch.as_str()],
            repeller: owners[c.repeller_bunch.as_str()],
        })
        .collect();
    Ok(PairingGraph { vertices, edges })
}

/// `E - V + 1` of a connected multigraph.
pub fn cycle_rank(graph: &PairingGraph) -> Result<u64, TopologyError> {
    if !graph.is_connected() {
        return Err(TopologyError::Disconnected);
    }
    Ok((graph.edge_count() + 1 - graph.vertex_count()) as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    /// The cut disconnects the remaining surface.
    Split,
    /// The cut leaves it connected and peels off a torus.
    TorusSummand,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurgeryStep {
    pub component: String,
    pub step: StepKind,
}

/// Cuts the components one by one (canonical id order unless `order` is
/// given) and classifies each cut by a bridge test on the edges not cut yet.
pub fn surgery_trace(spec: &DiffeoSpec, order: Option<&[String]>) -> Result<Vec<SurgeryStep>, TopologyError> {
    let graph = build_pairing_graph(spec)?;
    let sequence: Vec<usize> = match order {
        None => (0..graph.edge_count()).collect(),
        Some(ids) => permutation_of(&graph, ids)?,
    };

    let mut remaining = vec![true; graph.edge_count()];
    let mut steps = Vec::with_capacity(sequence.len());
    for e in sequence {
        remaining[e] = false;
        let edge = &graph.edges[e];
        let mut sets = DisjointSets::new(graph.vertex_count());
        for (i, other) in graph.edges.iter().enumerate() {
            if remaining[i] {
                sets.union(other.attractor, other.repeller);
            }
        }
        let step = if sets.find(edge.attractor) == sets.find(edge.repeller) {
            StepKind::TorusSummand
        } else {
            StepKind::Split
        };
        steps.push(SurgeryStep {
            component: edge.id.clone(),
            step,
        });
    }
    Ok(steps)
}

fn permutation_of(graph: &PairingGraph, ids: &[String]) -> Result<Vec<usize>, TopologyError> {
    if ids.len() != graph.edge_count() {
        return Err(TopologyError::BadOrder(format!(
            "expected {} ids, got {}",
            graph.edge_count(),
            ids.len()
        )));
    }
    let mut used = vec![false; graph.edge_count()];
    ids.iter()
        .map(|id| {
            let i = graph
                .edges
                .iter()
                .position(|e| &e.id == id)
                .ok_or_else(|| TopologyError::BadOrder(format!("unknown component {id}")))?;
            if std::mem::replace(&mut used[i], true) {
                return Err(TopologyError::BadOrder(format!("component {id} repeated")));
            }
            Ok(i)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summand {
    pub basic_set: String,
    pub genus: u64,
}

/// The ambient surface as a connected sum of one closed surface per basic
/// set and `torus_count` tori.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    pub torus_count: u64,
    pub trace: Vec<SurgeryStep>,
}

impl Decomposition {
    pub fn genera(&self) -> Vec<u64> {
        self.summands.iter().map(|s| s.genus).collect()
    }

    pub fn total_genus(&self) -> u64 {
        self.summands.iter().map(|s| s.genus).sum::<u64>() + self.torus_count
    }

    pub fn to_json(&self, with_trace: bool) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            summands: &'a [Summand],
            torus_count: u64,
            total_genus: u64,
            #[serde(skip_serializing_if = "Option::is_none")]
            trace: Option<&'a [SurgeryStep]>,
        }
        let out = Out {
            summands: &self.summands,
            torus_count: self.torus_count,
            total_genus: self.total_genus(),
            trace: with_trace.then_some(self.trace.as_slice()),
        };
        serde_json::to_string_pretty(&out).expect("decomposition serializes") + "\n"
    }
}

pub fn decompose(spec: &DiffeoSpec) -> Result<Decomposition, TopologyError> {
    let graph = build_pairing_graph(spec)?;
    let canon = spec.canonicalized();
    let summands = canon
        .basic_sets
        .iter()
        .map(|s| {
            Ok(Summand {
                basic_set: s.id.clone(),
                genus: basic_set_genus(s)?.genus,
            })
        })
        .collect::<Result<Vec<_>, TopologyError>>()?;
    let torus_count = cycle_rank(&graph)?;
    let trace = surgery_trace(spec, None)?;
    Ok(Decomposition {
        summands,
        torus_count,
        trace,
    })
}

/// Genus of the ambient surface from the bunch degrees alone: `1 + h_f/4`.
pub fn total_genus(spec: &DiffeoSpec) -> Result<u64, TopologyError> {
    require_valid(spec)?;
    let value = Rational::from_integer(1) + Rational::new(spec.total_degree() as i64, 4);
    // V5 on every set forces h_f = 2 m_f = 0 (mod 4)
    value
        .to_integer()
        .to_u64()
        .filter(|_| value.is_integer())
        .ok_or(TopologyError::BadGenus {
            id: "<surface>".into(),
            value,
        })
}

/// DOT of the pairing graph with genus labels.
pub fn pairing_dot(spec: &DiffeoSpec) -> Result<String, TopologyError> {
    let graph = build_pairing_graph(spec)?;
    let genera = decompose(spec)?.genera();
    Ok(graph.to_dot(Some(&genera)))
}
