//! Exact arithmetic for homologically trivial prime-order actions on
//! simply-connected 4-manifolds.
//!
//! The crate computes Dedekind sums and the signature defects of isolated
//! fixed points, evaluates upper bounds on the number of fixed 2-spheres,
//! classifies manifolds as admitting no action, only pseudofree actions, or a
//! bounded number of fixed spheres, and enumerates every fixed-point dataset
//! compatible with the G-signature theorem.
//!
//! Everything is exact: values are [`Rational`]s backed by arbitrary-precision
//! integers, and no floating point is used anywhere.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod dedekind;
pub mod enumerate;
mod error;
pub mod evidence;
pub mod homology;
pub mod lightcone;
pub mod rational;

pub use bounds::{Basis, Classification, ManifoldInvariants, Verdict};
pub use dedekind::{PrimeOrder, RotationNumber};
pub use enumerate::{FixedPointData, SearchWindow};
pub use error::{Error, Result};
pub use evidence::{StarEvidence, StarRule};
pub use homology::{FixedSetShape, HomologyDecomposition};
pub use lightcone::{ConePosition, LorentzVector};
pub use rational::{rat, Rational};
