//! Exact computation with Cayley-Menger determinants.
//!
//! The crate has four layers:
//!
//! * [`poly`]: sparse multivariate polynomials over arbitrary-precision
//!   integers, with the substitution, content, degree, homogenization and
//!   exact-division operations the upper layers need.
//! * [`cm`]: builders for the symbolic Cayley-Menger matrices and two
//!   independent exact determinant algorithms (memoized cofactor expansion
//!   and fraction-free elimination), with caching for the determinant
//!   families `gamma`, `delta` and their specializations.
//! * [`verify`]: machine checks for the algebraic identities these
//!   determinants satisfy (Heron and Ptolemy factorizations, recurrences,
//!   homogenization, content and parity statements), producing a
//!   deterministic, serializable report.
//! * [`geometry`]: exact rational predicates on distance matrices: simplex
//!   volume, realizability, degeneracy, circumradius and cosphericity, each
//!   cross-checkable against an independent Gram-matrix oracle.
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod cm;
pub mod geometry;
pub mod poly;
pub mod rational;
pub mod verify;

pub use cm::{CmCache, CmError, SymbolicMatrix};
pub use poly::{Degree, Monomial, ParseError, PolyError, Polynomial, VarId};
pub use rational::Rational;
