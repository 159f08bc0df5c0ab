//! Surface topology and stability of A-diffeomorphisms whose non-wandering
//! set consists of one-dimensional attractors and repellers.
//!
//! The combinatorial side ([`model`], [`topology`], [`stability`],
//! [`generate`]) works on bunch pairing data: which attractor bunch and
//! which repeller bunch bound each complement component. From that alone it
//! recovers the connected-sum decomposition and genus of the ambient
//! surface and the stability verdicts. The [`da`] module is a numerical
//! harness around a DA map of the 2-torus, the smallest dynamical instance
//! of a degree-2 bunch.

pub mod commands;
pub mod da;
pub mod generate;
pub mod io;
pub mod model;
pub mod stability;
pub mod topology;

pub use generate::{example_f1, example_f2, example_pretzel, generate_for_genus, random_valid_spec, GeneratorConfig};
pub use io::{parse_spec, serialize_spec, ParseError};
pub use model::{
    validate_spec, BasicSet, Bunch, ComplementComponent, DiffeoSpec, Kind, Rational, Rule, ValidationReport,
};
pub use stability::{stability_verdict, StabilityVerdict};
pub use topology::{decompose, total_genus, Decomposition, TopologyError};
