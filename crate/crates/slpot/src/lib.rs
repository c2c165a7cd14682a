//! Classification and numerics for the operator `tr arctan A` on symmetric
//! matrices: phase intervals and special values, cone branches with three
//! independent membership routes, asymptotic interior tests, boundary
//! convexity of implicit hypersurfaces, tameness bounds, a small 2-d
//! Dirichlet solver, and the determinant-family generalization.
//!
//! The crate is `no_std` (with `alloc`); every transcendental call goes
//! through [`math`] so results are bit-identical across hosts.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod asymptotic;
pub mod boundary;
pub mod branches;
pub mod garding;
pub mod mat;
pub mod math;
pub mod phase;
pub mod solver;
pub mod spectrum;
pub mod tol;
