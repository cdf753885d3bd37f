//! Dihedral tilings of the sphere by a regular m-gon and a rhombus sharing
//! one edge length.
//!
//! The crate covers the whole pipeline: the trigonometric closure between
//! the two prototiles ([`trig`]), vertex-type enumeration and the
//! classification driver ([`combinatorics`]), validated half-edge complexes
//! ([`complex`]), constructions of every family ([`generators`]), numeric
//! embeddings on the unit sphere ([`realization`]) and file formats
//! ([`format`]).

pub mod combinatorics;
pub mod complex;
pub mod format;
pub mod generators;
pub mod realization;
pub mod trig;

pub use combinatorics::{classify, ClassificationReport, VertexType};
pub use complex::{FaceKind, FaceSpec, Label, TilingComplex};
pub use realization::Embedding;
pub use trig::{Angle, AngleKind, AngleSolution};
