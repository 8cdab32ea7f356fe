//! Exact-arithmetic toolkit for computing the ε-relaxation complexity
//! rc_ε(X, Y) of finite lattice point sets.
//!
//! The crate is organised as a small solver laboratory:
//!
//! * [`rat`] — exact rational scalars used everywhere,
//! * [`geometry`] — rational polyhedral primitives (hulls, lattice points,
//!   segment tests),
//! * [`exactlp`] — an exact rational simplex with certificates,
//! * [`separability`] — the ε-separation oracle, conflict sparsification,
//!   hiding sets and brute-force reference oracles,
//! * [`mip`] — a plugin-extensible exact branch-and-bound engine,
//! * [`models`] — the compact and cutting-plane formulations with all
//!   enhancements (hiding-set cuts, propagation, symmetry handling),
//! * [`colgen`] — branch-and-price for the set-covering formulation,
//! * [`symmetry`] — detection of coordinate permutations fixing X and Y.

pub mod colgen;
pub mod exactlp;
pub mod geometry;
pub mod linalg;
pub mod mip;
pub mod models;
pub mod rat;
pub mod separability;
pub mod symmetry;

pub use rat::{rat, ratio, Rat};
