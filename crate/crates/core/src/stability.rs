//! The precedence relation between basic sets and the resulting stability
//! verdicts.
//!
//! `a ≺ b` holds when the stable manifold of `a` meets the unstable manifold
//! of `b`. For the diffeomorphisms modelled here this happens exactly when an
//! attractor and a repeller bound a common complement component.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::model::{DiffeoSpec, Kind};
use crate::topology::{build_pairing_graph, TopologyError};

/// Directed graph of the `≺` relation. Edges are deduplicated and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrecGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

impl PrecGraph {
    /// Builds a graph from raw edges (duplicates are dropped).
    pub fn new(vertices: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let edges: BTreeSet<_> = edges.into_iter().collect();
        Self {
            vertices,
            edges: edges.into_iter().collect(),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph prec {\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  {v:?};");
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  {:?} -> {:?};", self.vertices[a], self.vertices[b]);
        }
        out.push_str("}\n");
        out
    }
}

pub fn build_prec_graph(spec: &DiffeoSpec) -> Result<PrecGraph, TopologyError> {
    let pairing = build_pairing_graph(spec)?;
    let vertices = pairing.vertices.iter().map(|v| v.id.clone()).collect();
    Ok(PrecGraph::new(
        vertices,
        pairing.edges.iter().map(|e| (e.attractor, e.repeller)),
    ))
}

/// True iff the digraph has a directed cycle; a self-loop counts.
pub fn detect_cycles(graph: &PrecGraph) -> bool {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Open,
        Done,
    }
    let n = graph.vertices.len();
    let mut succ = vec![Vec::new(); n];
    for &(a, b) in &graph.edges {
        succ[a].push(b);
    }
    let mut mark = vec![Mark::New; n];
    for start in 0..n {
        if mark[start] != Mark::New {
            continue;
        }
        // iterative DFS: (vertex, next successor index)
        let mut stack = vec![(start, 0)];
        mark[start] = Mark::Open;
        while let Some(top) = stack.last_mut() {
            let (v, next) = *top;
            if let Some(&w) = succ[v].get(next) {
                top.1 += 1;
                match mark[w] {
                    Mark::Open => return true,
                    Mark::New => {
                        mark[w] = Mark::Open;
                        stack.push((w, 0));
                    }
                    Mark::Done => {}
                }
            } else {
                mark[v] = Mark::Done;
                stack.pop();
            }
        }
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityVerdict {
    pub omega_stable: bool,
    pub structurally_stable: bool,
    pub has_cycles: bool,
    pub reason: String,
}

impl StabilityVerdict {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("verdict serializes") + "\n"
    }
}

/// Axiom A holds by construction, so Ω-stability reduces to the absence of
/// cycles. Structural stability fails for every member of the class: a
/// one-dimensional attractor without periodic sinks or sources rules it out.
pub fn stability_verdict(spec: &DiffeoSpec) -> Result<StabilityVerdict, TopologyError> {
    let graph = build_prec_graph(spec)?;
    let has_cycles = detect_cycles(&graph);
    let attractors = spec.basic_sets.iter().filter(|s| s.kind == Kind::Attractor).count();
    let mut reason = if has_cycles {
        String::from("the precedence relation has a cycle, so the diffeomorphism is not omega-stable; ")
    } else {
        format!(
            "axiom A holds and all {} precedence edge(s) run from an attractor to a repeller, so there are no cycles and the diffeomorphism is omega-stable; ",
            graph.edges.len()
        )
    };
    reason.push_str(&format!(
        "it is not structurally stable: the non-wandering set contains {attractors} one-dimensional attractor(s) and no periodic sink or source points"
    ));
    Ok(StabilityVerdict {
        omega_stable: !has_cycles,
        structurally_stable: false,
        has_cycles,
        reason,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{example_f1, example_f2, example_pretzel};

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("v{i}")).collect()
    }

    #[test]
    fn prec_graphs_of_named_examples() {
        let g1 = build_prec_graph(&example_f1()).unwrap();
        let labelled: Vec<_> = g1
            .edges
            .iter()
            .map(|&(a, b)| format!("{}->{}", g1.vertices[a], g1.vertices[b]))
            .collect();
        assert_eq!(labelled, ["A1->R1", "A2->R1"]);

        let g2 = build_prec_graph(&example_f2()).unwrap();
        assert_eq!(g2.edges.len(), 1);
        assert!(!detect_cycles(&g2));

        assert_eq!(build_prec_graph(&example_pretzel()).unwrap().edges.len(), 1);
    }

    #[test]
    fn cycles_on_small_graphs() {
        assert!(detect_cycles(&PrecGraph::new(names(2), [(0, 1), (1, 0)])));
        assert!(!detect_cycles(&PrecGraph::new(names(3), [])));
        assert!(detect_cycles(&PrecGraph::new(names(1), [(0, 0)])));
        assert!(!detect_cycles(&PrecGraph::new(
            names(4),
            [(0, 1), (0, 2), (1, 3), (2, 3)]
        )));
        assert!(detect_cycles(&PrecGraph::new(
            names(4),
            [(0, 1), (1, 2), (2, 3), (3, 1)]
        )));
    }

    #[test]
    fn verdicts_of_named_examples() {
        for spec in [example_f1(), example_f2(), example_pretzel()] {
            let v = stability_verdict(&spec).unwrap();
            assert!(v.omega_stable);
            assert!(!v.structurally_stable);
            assert!(!v.has_cycles);
        }
    }

    #[test]
    fn dot_output() {
        let dot = build_prec_graph(&example_f1()).unwrap().to_dot();
        assert!(dot.contains("\"A1\" -> \"R1\";"));
    }
}
