//! Exact arithmetic of finitely generated abelian groups.
//!
//! The universal value type is [`FgAbGroup`], a group in canonical form
//! (free rank plus an invariant-factor divisibility chain). Groups are
//! presented by integer matrices ([`IntMatrix`]) and brought to canonical
//! form through Smith normal form ([`snf`]). [`extensions`] houses a
//! brute-force enumerator of group extensions used as a consistency oracle.

mod extensions;
mod group;
mod matrix;
mod snf;

pub use extensions::{enumerate_extensions, OracleRefused, DEFAULT_EXTENSION_CAP};
pub use group::{FgAbGroup, GroupParseError};
pub use matrix::IntMatrix;
pub use snf::{cokernel, snf, SnfDecomposition};
