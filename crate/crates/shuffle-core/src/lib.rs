//! Exact symbolic engine for trigonometric and rational shuffle algebras of
//! types A_n, B_n and G_2.
//!
//! The crate builds, with exact arithmetic only (no floating point anywhere):
//!
//! - the coefficient field ℚ(v) of rational functions in the quantum
//!   parameter `v` (and the polynomial ring ℚ\[ħ\] for the rational flavor),
//!   in [`ring`];
//! - sparse multivariate Laurent polynomials over that field, in [`mpoly`];
//! - root-system combinatorics — positive roots in convex (Lyndon-word)
//!   order, Kostant partitions, PBWD index sets — in [`rootsys`];
//! - the shuffle algebras themselves (ζ-dressed symmetrized product, wheel
//!   conditions, the homomorphism Ψ from the half quantum loop algebra /
//!   Yangian), in [`shuffle`];
//! - quantum root vectors as iterated v-commutators of generators, divided
//!   powers and PBWD monomials, in [`rootvec`];
//! - the specialization maps φ_d onto geometric/arithmetic progressions and
//!   the integral-form membership predicates, in [`specmaps`];
//! - the B_n R-matrix and a Yang–Baxter checker, in [`rtt`];
//! - deterministic verification suites tying everything together, in
//!   [`verify`].
//!
//! With the default `parallel` feature the heavy fan-out loops (shuffle
//! symmetrization, suite batches, YBE trials) run on a rayon pool capped by
//! the `SHUFFLE_THREADS` environment variable; without it everything runs
//! sequentially with identical (byte-for-byte) results.

#![forbid(unsafe_code)]

pub mod mpoly;
pub mod par;
pub mod ring;
pub mod rootsys;
pub mod rootvec;
pub mod rtt;
pub mod shuffle;
pub mod specmaps;
pub mod verify;

pub use ring::{Q, ULaurent, VRatFunc};
