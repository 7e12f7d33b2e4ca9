//! Graded gentle algebras, twisted complexes over them, and the
//! dissected-surface models they correspond to.
//!
//! The crate is organised bottom-up:
//!
//! - [`field`]: exact coefficient arithmetic (arbitrary-precision rationals
//!   and prime fields) behind a small context trait.
//! - [`quiver`]: graded quivers with monomial relations and the gentleness
//!   check.
//! - [`path`]: the finite path basis of a gentle presentation, products,
//!   and the port structure at each vertex.
//! - [`complex`]: twisted complexes (one-sided, upper-triangular) built
//!   from shifted projectives, with shifts and cones.
//! - [`hom`]: morphism complexes between twisted complexes and their
//!   cohomology over an exact field.
//! - [`word`]: homotopy strings, their normal forms, and the fast
//!   combinatorial hom computation for string complexes.
//! - [`surface`]: arc systems on marked surfaces, face tracing, topological
//!   invariants, and the translation to/from gentle presentations.
//! - [`twist`]: winding-style weights on arc cycles and the integer
//!   invariant of a grading.
//! - [`derived`]: exceptionality, orthogonality, generation certificates,
//!   and the bounded searches for exceptional and silting objects.
//! - [`scenario`]: built-in worked examples with pinned expected facts and
//!   a verification runner.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod complex;
pub mod derived;
pub mod field;
pub mod hom;
pub mod path;
pub mod quiver;
pub mod scenario;
pub mod surface;
pub mod twist;
pub mod word;
