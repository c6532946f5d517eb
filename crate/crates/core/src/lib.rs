//! Exact computation of the K-theory of boundary crossed-product C*-algebras
//! attached to locally symmetric spaces.
//!
//! The input is a small description of a locally symmetric space (dimension,
//! real rank, compactness, orientability, Euler characteristic and graded
//! integral cohomology). From that the library computes, over exact integer
//! arithmetic:
//!
//! * the cohomology of the associated unit sphere bundle, via a Gysin
//!   long-exact-sequence solver and an equivalent closed-form case analysis
//!   ([`gysin`]),
//! * K⁰ and K¹ of the boundary algebra together with the class of the unit
//!   ([`ktheory`]),
//! * spectral-sequence torsion bounds used as an independent consistency
//!   check ([`ahss`]),
//! * classification-level queries: comparison of two boundary algebras,
//!   recovery of |χ|, KK-groups and Künneth products ([`classify`]).
//!
//! Everything is built on a small exact linear-algebra kernel for finitely
//! generated abelian groups ([`abelian`]): Smith normal form, canonical
//! invariant-factor forms, Hom/Ext/Tor and a brute-force extension
//! enumerator.

pub mod abelian;
pub mod ahss;
pub mod classify;
pub mod corpus;
pub mod gysin;
pub mod ktheory;
pub mod spaces;

pub use abelian::{FgAbGroup, IntMatrix};
pub use spaces::{GradedGroup, SpaceInput};
