//! Combinatorial description of a surface diffeomorphism whose non-wandering
//! set consists of one-dimensional attractors and repellers.
//!
//! A [`DiffeoSpec`] lists the periodic components of the basic sets, the
//! bunches each one owns, and the complement components that pair an
//! attractor bunch with a repeller bunch. [`validate_spec`] checks every
//! necessary condition such data has to satisfy before any topology is
//! derived from it.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

/// Exact rational used for every genus and index computation.
pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Attractor,
    Repeller,
}

impl Kind {
    pub fn opposite(self) -> Kind {
        match self {
            Kind::Attractor => Kind::Repeller,
            Kind::Repeller => Kind::Attractor,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Attractor => "attractor",
            Kind::Repeller => "repeller",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A bunch of separatrices of boundary periodic points. Only the number of
/// boundary points (the degree) is recorded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bunch {
    pub id: String,
    pub degree: u32,
}

impl Bunch {
    pub fn new(id: impl Into<String>, degree: u32) -> Self {
        Self { id: id.into(), degree }
    }
}

/// One periodic component of a one-dimensional basic set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasicSet {
    pub id: String,
    pub kind: Kind,
    #[serde(deserialize_with = "crate::io::nonempty")]
    pub bunches: Vec<Bunch>,
}

impl BasicSet {
    pub fn new(id: impl Into<String>, kind: Kind, bunches: Vec<Bunch>) -> Self {
        Self {
            id: id.into(),
            kind,
            bunches,
        }
    }

    /// Number of bunches, `m`.
    pub fn bunch_count(&self) -> u64 {
        self.bunches.len() as u64
    }

    /// Sum of bunch degrees, `h`.
    pub fn degree_sum(&self) -> u64 {
        self.bunches.iter().map(|b| u64::from(b.degree)).sum()
    }

    /// `1 + h/4 - m/2`, exact. Integral and non-negative for realizable sets.
    pub fn genus_value(&self) -> Rational {
        genus_formula(self.bunch_count(), self.degree_sum())
    }
}

pub(crate) fn genus_formula(m: u64, h: u64) -> Rational {
    Rational::from_integer(1) + Rational::new(h as i64, 4) - Rational::new(m as i64, 2)
}

/// A connected component of the complement of the non-wandering set. It is
/// accessibly bounded by exactly one attractor bunch and one repeller bunch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplementComponent {
    pub id: String,
    pub attractor_bunch: String,
    pub repeller_bunch: String,
}

impl ComplementComponent {
    pub fn new(id: impl Into<String>, attractor_bunch: impl Into<String>, repeller_bunch: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            attractor_bunch: attractor_bunch.into(),
            repeller_bunch: repeller_bunch.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiffeoSpec {
    #[serde(deserialize_with = "crate::io::nonempty")]
    pub basic_sets: Vec<BasicSet>,
    #[serde(deserialize_with = "crate::io::nonempty")]
    pub complement_components: Vec<ComplementComponent>,
}

impl DiffeoSpec {
    pub fn new(basic_sets: Vec<BasicSet>, complement_components: Vec<ComplementComponent>) -> Self {
        Self {
            basic_sets,
            complement_components,
        }
    }

    /// Number of periodic components, `k_f`.
    pub fn basic_set_count(&self) -> u64 {
        self.basic_sets.len() as u64
    }

    /// Total number of bunches, `m_f`.
    pub fn total_bunches(&self) -> u64 {
        self.basic_sets.iter().map(BasicSet::bunch_count).sum()
    }

    /// Total degree over all bunches, `h_f`.
    pub fn total_degree(&self) -> u64 {
        self.basic_sets.iter().map(BasicSet::degree_sum).sum()
    }

    pub fn basic_set(&self, id: &str) -> Option<&BasicSet> {
        self.basic_sets.iter().find(|s| s.id == id)
    }

    /// Index of the basic set owning each bunch id (first owner wins on duplicates).
    pub fn bunch_owners(&self) -> HashMap<&str, usize> {
        let mut owners = HashMap::new();
        for (i, set) in self.basic_sets.iter().enumerate() {
            for b in &set.bunches {
                owners.entry(b.id.as_str()).or_insert(i);
            }
        }
        owners
    }

    /// Copy with basic sets, bunches and components sorted by id.
    pub fn canonicalized(&self) -> DiffeoSpec {
        let mut out = self.clone();
        for set in &mut out.basic_sets {
            set.bunches.sort_by(|a, b| a.id.cmp(&b.id));
        }
        out.basic_sets.sort_by(|a, b| a.id.cmp(&b.id));
        out.complement_components.sort_by(|a, b| a.id.cmp(&b.id));
        out
    }
}

/// Validation rules, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// At least one attractor and at least one repeller.
    BothKinds,
    /// Every bunch is referenced by exactly one complement component.
    PairedOnce,
    /// Components join an attractor bunch with a repeller bunch.
    CrossesKinds,
    /// The pairing graph is connected.
    Connected,
    /// `h - 2m` is divisible by 4 for each basic set.
    GenusIntegral,
    /// `1 + h/4 - m/2 >= 0` for each basic set.
    GenusNonNegative,
    /// Bunch degrees are positive.
    PositiveDegree,
    /// Ids are unique.
    UniqueIds,
}

impl Rule {
    pub const ALL: [Rule; 8] = [
        Rule::BothKinds,
        Rule::PairedOnce,
        Rule::CrossesKinds,
        Rule::Connected,
        Rule::GenusIntegral,
        Rule::GenusNonNegative,
        Rule::PositiveDegree,
        Rule::UniqueIds,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Rule::BothKinds => "V1",
            Rule::PairedOnce => "V2",
            Rule::CrossesKinds => "V3",
            Rule::Connected => "V4",
            Rule::GenusIntegral => "V5",
            Rule::GenusNonNegative => "V6",
            Rule::PositiveDegree => "V7",
            Rule::UniqueIds => "V8",
        }
    }
}

impl Serialize for Rule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub rule_code: Rule,
    pub message: String,
    pub offending: Vec<String>,
}

impl Violation {
    fn new(rule: Rule, message: String, mut offending: Vec<String>) -> Self {
        offending.sort();
        Self {
            rule_code: rule,
            message,
            offending,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn violates(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule_code == rule)
    }

    pub fn rules(&self) -> BTreeSet<Rule> {
        self.violations.iter().map(|v| v.rule_code).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// Checks every necessary condition on a spec. Malformed references are
/// reported as violations, never as a panic. The violation list is sorted,
/// so permuting the input lists never changes the report.
pub fn validate_spec(spec: &DiffeoSpec) -> ValidationReport {
    let mut out = Vec::new();

    check_unique_ids(spec, &mut out);

    let has = |k: Kind| spec.basic_sets.iter().any(|s| s.kind == k);
    if !has(Kind::Attractor) || !has(Kind::Repeller) {
        let missing: Vec<&str> = [Kind::Attractor, Kind::Repeller]
            .into_iter()
            .filter(|k| !has(*k))
            .map(Kind::as_str)
            .collect();
        out.push(Violation::new(
            Rule::BothKinds,
            format!("no basic set of kind {}", missing.join(" or ")),
            Vec::new(),
        ));
    }

    for set in &spec.basic_sets {
        for b in set.bunches.iter().filter(|b| b.degree == 0) {
            out.push(Violation::new(
                Rule::PositiveDegree,
                format!("bunch {} has degree 0", b.id),
                vec![b.id.clone()],
            ));
        }
        let (m, h) = (set.bunch_count(), set.degree_sum());
        let genus = set.genus_value();
        if (h as i128 - 2 * m as i128).rem_euclid(4) != 0 {
            out.push(Violation::new(
                Rule::GenusIntegral,
                format!(
                    "basic set {} has m={m}, h={h}: genus 1 + h/4 - m/2 = {genus} is not an integer",
                    set.id
                ),
                vec![set.id.clone()],
            ));
        }
        if genus < Rational::from_integer(0) {
            out.push(Violation::new(
                Rule::GenusNonNegative,
                format!(
                    "basic set {} has m={m}, h={h}: genus 1 + h/4 - m/2 = {genus} is negative",
                    set.id
                ),
                vec![set.id.clone()],
            ));
        }
    }

    check_pairing(spec, &mut out);

    out.sort();
    out.dedup();
    ValidationReport {
        valid: out.is_empty(),
        violations: out,
    }
}

fn check_unique_ids(spec: &DiffeoSpec, out: &mut Vec<Violation>) {
    let groups: [(&str, Vec<&str>); 3] = [
        ("basic set", spec.basic_sets.iter().map(|s| s.id.as_str()).collect()),
        (
            "bunch",
            spec.basic_sets
                .iter()
                .flat_map(|s| s.bunches.iter().map(|b| b.id.as_str()))
                .collect(),
        ),
        (
            "complement component",
            spec.complement_components.iter().map(|c| c.id.as_str()).collect(),
        ),
    ];
    for (what, ids) in groups {
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for id in ids {
            *counts.entry(id).or_default() += 1;
        }
        for (id, n) in counts.into_iter().filter(|(_, n)| *n > 1) {
            out.push(Violation::new(
                Rule::UniqueIds,
                format!("{what} id {id} occurs {n} times"),
                vec![id.to_string()],
            ));
        }
    }
}

fn check_pairing(spec: &DiffeoSpec, out: &mut Vec<Violation>) {
    let owners = spec.bunch_owners();
    let mut refs: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    let mut edges = Vec::new();

    for comp in &spec.complement_components {
        let mut ends = [None, None];
        for (slot, (bunch, want)) in [
            (&comp.attractor_bunch, Kind::Attractor),
            (&comp.repeller_bunch, Kind::Repeller),
        ]
        .into_iter()
        .enumerate()
        {
            let Some(&owner) = owners.get(bunch.as_str()) else {
                out.push(Violation::new(
                    Rule::PairedOnce,
                    format!("component {} references unknown bunch {bunch}", comp.id),
                    vec![comp.id.clone(), bunch.clone()],
                ));
                continue;
            };
            refs.entry(bunch.as_str()).or_default().push(comp.id.as_str());
            let set = &spec.basic_sets[owner];
            if set.kind != want {
                out.push(Violation::new(
                    Rule::CrossesKinds,
                    format!(
                        "component {} uses bunch {bunch} of {} {} as its {} bunch",
                        comp.id, set.kind, set.id, want
                    ),
                    vec![comp.id.clone(), bunch.clone()],
                ));
            }
            ends[slot] = Some(owner);
        }
        if let [Some(a), Some(r)] = ends {
            edges.push((a, r));
        }
    }

    for set in &spec.basic_sets {
        for b in &set.bunches {
            match refs.get(b.id.as_str()).map(Vec::as_slice) {
                None | Some([]) => out.push(Violation::new(
                    Rule::PairedOnce,
                    format!("bunch {} is not bounded by any complement component", b.id),
                    vec![b.id.clone()],
                )),
                Some([_]) => {}
                Some(comps) => {
                    let mut ids = vec![b.id.clone()];
                    ids.extend(comps.iter().map(|c| c.to_string()));
                    out.push(Violation::new(
                        Rule::PairedOnce,
                        format!("bunch {} is referenced {} times", b.id, comps.len()),
                        ids,
                    ))
                }
            }
        }
    }

    if spec.basic_sets.len() > 1 {
        let mut parent: Vec<usize> = (0..spec.basic_sets.len()).collect();
        fn root(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for (a, r) in edges {
            let (ra, rr) = (root(&mut parent, a), root(&mut parent, r));
            parent[ra] = rr;
        }
        // the component holding the smallest id is the reference one
        let anchor = (0..spec.basic_sets.len())
            .min_by(|&i, &j| spec.basic_sets[i].id.cmp(&spec.basic_sets[j].id))
            .unwrap();
        let anchor_root = root(&mut parent, anchor);
        let detached: Vec<String> = (0..spec.basic_sets.len())
            .filter(|&i| root(&mut parent, i) != anchor_root)
            .map(|i| spec.basic_sets[i].id.clone())
            .collect();
        if !detached.is_empty() {
            out.push(Violation::new(
                Rule::Connected,
                format!(
                    "pairing graph is disconnected: {} basic set(s) unreachable from {}",
                    detached.len(),
                    spec.basic_sets[anchor].id
                ),
                detached,
            ));
        }
    }
}
