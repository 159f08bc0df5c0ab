//! Independent reference computations shared by the integration tests.
//! None of these call into the library's own graph or genus code.
#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};

use bunch_surface::{DiffeoSpec, GeneratorConfig, Kind};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

pub fn random_spec(seed: u64) -> DiffeoSpec {
    bunch_surface::random_valid_spec(&GeneratorConfig::with_seed(seed)).expect("default config generates")
}

/// Vertices and edges of the pairing multigraph, read straight off the spec:
/// vertex = basic set id, edge = (attractor set, repeller set).
pub struct RawGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

pub fn raw_graph(spec: &DiffeoSpec) -> RawGraph {
    let vertices: Vec<String> = spec.basic_sets.iter().map(|s| s.id.clone()).collect();
    let mut owner = BTreeMap::new();
    for (i, s) in spec.basic_sets.iter().enumerate() {
        for b in &s.bunches {
            owner.insert(b.id.clone(), i);
        }
    }
    let edges = spec
        .complement_components
        .iter()
        .map(|c| (owner[&c.attractor_bunch], owner[&c.repeller_bunch]))
        .collect();
    RawGraph { vertices, edges }
}

fn adjacency(n: usize, edges: &[(usize, usize)], skip: impl Fn(usize) -> bool) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        if skip(i) {
            continue;
        }
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    adj
}

/// Non-tree edges of a BFS spanning forest.
pub fn non_tree_edge_count(n: usize, edges: &[(usize, usize)]) -> usize {
    let adj = adjacency(n, edges, |_| false);
    let mut seen = vec![false; n];
    let mut tree_edges = vec![false; edges.len()];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    tree_edges[e] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    tree_edges.iter().filter(|t| !**t).count()
}

pub fn reachable(n: usize, edges: &[(usize, usize)], alive: &[bool], from: usize, to: usize) -> bool {
    let adj = adjacency(n, edges, |i| !alive[i]);
    let mut seen = vec![false; n];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(v) = stack.pop() {
        if v == to {
            return true;
        }
        for &(w, _) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

/// For a cut order over edge indices: true where the cut edge is a bridge
/// of the edges still present (its endpoints fall apart).
pub fn bridge_cuts(n: usize, edges: &[(usize, usize)], order: &[usize]) -> Vec<bool> {
    let mut alive = vec![true; edges.len()];
    order
        .iter()
        .map(|&e| {
            alive[e] = false;
            !reachable(n, edges, &alive, edges[e].0, edges[e].1)
        })
        .collect()
}

/// Directed cycle test by boolean transitive closure (Warshall).
#[allow(clippy::needless_range_loop)]
pub fn has_cycle_by_closure(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut r = vec![vec![false; n]; n];
    for &(a, b) in edges {
        r[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    (0..n).any(|i| r[i][i])
}

/// Genus of a closed surface from the bunch degrees of one basic set:
/// χ = Σ (1 − h_t/2) over its bunches, g = (2 − χ)/2, in integer
/// arithmetic; `None` if either is not a whole number.
pub fn genus_by_index_sum(degrees: &[u32]) -> Option<i64> {
    // 2χ = Σ (2 − h_t)
    let two_chi: i64 = degrees.iter().map(|&h| 2 - h as i64).sum();
    if two_chi % 2 != 0 {
        return None;
    }
    let chi = two_chi / 2;
    if (2 - chi) % 2 != 0 {
        return None;
    }
    Some((2 - chi) / 2)
}

/// Same spec with every list (sets, bunches, components) shuffled.
pub fn shuffled(spec: &DiffeoSpec, seed: u64) -> DiffeoSpec {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let mut out = spec.clone();
    out.basic_sets.shuffle(&mut rng);
    for s in &mut out.basic_sets {
        s.bunches.shuffle(&mut rng);
    }
    out.complement_components.shuffle(&mut rng);
    out
}

pub fn count_kind(spec: &DiffeoSpec, kind: Kind) -> usize {
    spec.basic_sets.iter().filter(|s| s.kind == kind).count()
}
