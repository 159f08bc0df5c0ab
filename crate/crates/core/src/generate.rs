//! Named example specs, a family realizing every genus `G >= 2`, and a
//! seeded generator of random valid specs.
//!
//! The random generator uses `Xoshiro256PlusPlus` seeded through
//! `seed_from_u64`; the stream and therefore every generated spec is the
//! same on all platforms for a given [`GeneratorConfig`].

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use thiserror::Error;

use crate::model::{BasicSet, Bunch, ComplementComponent, DiffeoSpec, Kind};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("genus {0} is not realizable: the sphere and the torus admit no such diffeomorphism (need genus >= 2)")]
    GenusTooSmall(i64),
    #[error("generator config: {0}")]
    Config(String),
}

fn set_with_degrees(id: &str, kind: Kind, degrees: &[u32]) -> BasicSet {
    let bunches = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| Bunch::new(format!("{id}.b{}", i + 1), d))
        .collect();
    BasicSet::new(id, kind, bunches)
}

/// Two attractors with one degree-2 bunch each, both paired with a repeller
/// carrying two degree-2 bunches.
pub fn example_f1() -> DiffeoSpec {
    DiffeoSpec::new(
        vec![
            set_with_degrees("A1", Kind::Attractor, &[2]),
            set_with_degrees("A2", Kind::Attractor, &[2]),
            set_with_degrees("R1", Kind::Repeller, &[2, 2]),
        ],
        vec![
            ComplementComponent::new("V1", "A1.b1", "R1.b1"),
            ComplementComponent::new("V2", "A2.b1", "R1.b2"),
        ],
    )
}

/// One attractor and one repeller, each with two degree-2 bunches, joined by
/// two parallel complement components.
pub fn example_f2() -> DiffeoSpec {
    DiffeoSpec::new(
        vec![
            set_with_degrees("A1", Kind::Attractor, &[2, 2]),
            set_with_degrees("R1", Kind::Repeller, &[2, 2]),
        ],
        vec![
            ComplementComponent::new("V1", "A1.b1", "R1.b1"),
            ComplementComponent::new("V2", "A1.b2", "R1.b2"),
        ],
    )
}

/// The genus-2 surface glued from a DA map and its inverse: one attractor
/// and one repeller, each with a single degree-2 bunch.
pub fn example_pretzel() -> DiffeoSpec {
    DiffeoSpec::new(
        vec![
            set_with_degrees("A1", Kind::Attractor, &[2]),
            set_with_degrees("R1", Kind::Repeller, &[2]),
        ],
        vec![ComplementComponent::new("V1", "A1.b1", "R1.b1")],
    )
}

/// Named example lookup used by the CLI.
pub fn named_example(name: &str) -> Option<DiffeoSpec> {
    match name {
        "f1" => Some(example_f1()),
        "f2" => Some(example_f2()),
        "pretzel" => Some(example_pretzel()),
        _ => None,
    }
}

/// Alternating attractor/repeller path with `genus` basic sets. End sets
/// carry one degree-2 bunch, interior sets two, so every summand is a torus
/// and no torus comes from cycles.
pub fn generate_for_genus(genus: i64) -> Result<DiffeoSpec, GenerateError> {
    if genus < 2 {
        return Err(GenerateError::GenusTooSmall(genus));
    }
    let n = genus as usize;
    let width = n.to_string().len();
    let mut sets = Vec::with_capacity(n);
    let (mut attractors, mut repellers) = (0, 0);
    for i in 0..n {
        let kind = if i % 2 == 0 { Kind::Attractor } else { Kind::Repeller };
        let id = match kind {
            Kind::Attractor => {
                attractors += 1;
                format!("A{attractors:0width$}")
            }
            Kind::Repeller => {
                repellers += 1;
                format!("R{repellers:0width$}")
            }
        };
        let degrees: &[u32] = if i == 0 || i == n - 1 { &[2] } else { &[2, 2] };
        sets.push(set_with_degrees(&id, kind, degrees));
    }
    let components = (0..n - 1)
        .map(|i| {
            // set i uses its last bunch to the right, set i+1 its first to the left
            let left = format!("{}.b{}", sets[i].id, sets[i].bunches.len());
            let right = format!("{}.b1", sets[i + 1].id);
            let (a, r) = if sets[i].kind == Kind::Attractor {
                (left, right)
            } else {
                (right, left)
            };
            ComplementComponent::new(format!("V{:0width$}", i + 1), a, r)
        })
        .collect();
    Ok(DiffeoSpec::new(sets, components).canonicalized())
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub max_basic_sets: u32,
    pub max_bunches_per_set: u32,
    pub max_degree: u32,
    /// Probability of adding each further non-tree component (geometric
    /// count); controls how often the pairing graph has cycles.
    pub cycle_bias: f64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            max_basic_sets: 6,
            max_bunches_per_set: 4,
            max_degree: 6,
            cycle_bias: 0.5,
        }
    }
}

impl GeneratorConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    fn check(&self) -> Result<(), GenerateError> {
        let fail = |m: &str| Err(GenerateError::Config(m.to_string()));
        if self.max_basic_sets < 2 {
            return fail("max_basic_sets must be >= 2 (an attractor and a repeller are required)");
        }
        if self.max_bunches_per_set < 1 {
            return fail("max_bunches_per_set must be >= 1");
        }
        if self.max_degree < 2 {
            return fail("max_degree must be >= 2: a single bunch needs degree = 2 (mod 4)");
        }
        if !(0.0..1.0).contains(&self.cycle_bias) {
            return fail("cycle_bias must lie in [0, 1)");
        }
        Ok(())
    }
}

/// Random connected bipartite pairing graph with bunch degrees repaired to
/// satisfy integrality and non-negativity of every genus.
pub fn random_valid_spec(cfg: &GeneratorConfig) -> Result<DiffeoSpec, GenerateError> {
    cfg.check()?;
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(cfg.seed);
    let cap = cfg.max_bunches_per_set as usize;

    let n = if cap == 1 {
        2
    } else {
        rng.random_range(2..=cfg.max_basic_sets as usize)
    };

    // spanning tree: each new vertex hangs off an earlier one with spare
    // capacity and takes the opposite kind
    let mut kinds = Vec::with_capacity(n);
    kinds.push(if rng.random_bool(0.5) {
        Kind::Attractor
    } else {
        Kind::Repeller
    });
    kinds.push(kinds[0].opposite());
    let mut degree = vec![0usize; n];
    let mut edges = vec![(0usize, 1usize)];
    degree[0] = 1;
    degree[1] = 1;
    for v in 2..n {
        let open: Vec<usize> = (0..v).filter(|&u| degree[u] < cap).collect();
        let &parent = open.choose(&mut rng).expect("a leaf always has spare capacity");
        kinds.push(kinds[parent].opposite());
        edges.push((parent, v));
        degree[parent] += 1;
        degree[v] += 1;
    }

    while rng.random_bool(cfg.cycle_bias) {
        let open = |k: Kind| -> Vec<usize> { (0..n).filter(|&u| kinds[u] == k && degree[u] < cap).collect() };
        let (a, r) = (open(Kind::Attractor), open(Kind::Repeller));
        let (Some(&a), Some(&r)) = (a.choose(&mut rng), r.choose(&mut rng)) else {
            break;
        };
        edges.push((a, r));
        degree[a] += 1;
        degree[r] += 1;
    }
    edges.shuffle(&mut rng);

    let mut ids = Vec::with_capacity(n);
    let (mut na, mut nr) = (0, 0);
    for k in &kinds {
        ids.push(match k {
            Kind::Attractor => {
                na += 1;
                format!("A{na}")
            }
            Kind::Repeller => {
                nr += 1;
                format!("R{nr}")
            }
        });
    }

    let mut sets: Vec<BasicSet> = (0..n)
        .map(|v| {
            let degrees = repaired_degrees(&mut rng, degree[v], cfg.max_degree);
            set_with_degrees(&ids[v], kinds[v], &degrees)
        })
        .collect();

    let mut used = vec![0usize; n];
    let mut take = |v: usize| {
        used[v] += 1;
        format!("{}.b{}", ids[v], used[v])
    };
    let components = edges
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| {
            let (bu, bv) = (take(u), take(v));
            let (a, r) = if kinds[u] == Kind::Attractor {
                (bu, bv)
            } else {
                (bv, bu)
            };
            ComplementComponent::new(format!("V{}", i + 1), a, r)
        })
        .collect();

    for s in &mut sets {
        s.bunches.sort_by(|a, b| a.id.cmp(&b.id));
    }
    Ok(DiffeoSpec::new(sets, components).canonicalized())
}

/// Samples `m` degrees in `1..=max`, then moves the total by unit steps on
/// random bunches to the nearest `h` with `h = 2m (mod 4)` and `h >= 2m - 4`.
fn repaired_degrees(rng: &mut Xoshiro256PlusPlus, m: usize, max: u32) -> Vec<u32> {
    let mut degrees: Vec<u32> = (0..m).map(|_| rng.random_range(1..=max)).collect();
    let h: i64 = degrees.iter().map(|&d| i64::from(d)).sum();
    let (m_i, max_i) = (m as i64, i64::from(max));
    let lo = m_i.max(2 * m_i - 4);
    let hi = m_i * max_i;
    let feasible = |t: i64| t >= lo && t <= hi && (t - 2 * m_i).rem_euclid(4) == 0;
    // 2m is always feasible when max >= 2
    let target = (h..=hi)
        .find(|&t| feasible(t))
        .or_else(|| (lo..h).rev().find(|&t| feasible(t)))
        .expect("2m is feasible");

    let mut total = h;
    while total != target {
        let up = total < target;
        let open: Vec<usize> = (0..m)
            .filter(|&i| if up { degrees[i] < max } else { degrees[i] > 1 })
            .collect();
        let &i = open.choose(rng).expect("target lies within [m, m*max]");
        if up {
            degrees[i] += 1;
            total += 1;
        } else {
            degrees[i] -= 1;
            total -= 1;
        }
    }
    degrees
}
