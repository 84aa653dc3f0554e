//! Edit distances from edge-colored complete graphs and directed graphs to
//! hereditary properties.
//!
//! The crate is organised bottom-up:
//!
//! * [`color`], [`density`], [`graph`] and [`family`] hold the data model:
//!   colored complete graphs, digraphs over a palette, density vectors and
//!   forbidden families.
//! * [`spectrum`] decides good tuples, clique spectra and chromatic numbers.
//! * [`types`] implements types (colored regularity graphs), embeddings and
//!   bounded enumeration of admissible types.
//! * [`distfun`] evaluates the penalty matrices, the `f`/`g` functions and
//!   the resulting bounds on the edit distance function.
//! * [`editing`] contains the randomized recoloring algorithms.
//! * [`oracle`] provides exact branch-and-bound distances, random samplers
//!   and Monte Carlo estimation.
//! * [`verify`] re-derives the reference values for the known examples.
//!
//! All densities and distances are exact rationals ([`Rational`]).

pub mod color;
pub mod density;
pub mod distfun;
pub mod editing;
pub mod error;
pub mod family;
pub mod graph;
pub mod linalg;
pub mod lp;
pub mod oracle;
pub mod par;
pub mod qp;
pub mod rational;
pub mod spectrum;
pub mod types;
pub mod verify;

pub use color::{Color, Colors, DirColor, PairColor, Palette, Universe};
pub use density::{DensityVector, DirDensity};
pub use error::{Error, Result};
pub use family::{Family, PropertyFamily};
pub use graph::{ColoredGraph, CompleteGraph, DiGraph};
pub use rational::Rational;
pub use spectrum::{Chi, Mode, SpectrumTuple};
pub use types::{DirType, RType, TypeGraph};
