//! Exact-arithmetic core for topological Markov-Dyck shifts.
//!
//! The crate builds Cantor-horizon lambda-graph systems for the shifts
//! `D_A` attached to a 0/1 transition matrix `A`, decides admissibility of
//! bracket words by a stack reduction, and computes the level-wise
//! K-theoretic data (cokernel and kernel towers) of the associated
//! nonnegative matrix systems over the integers.
//!
//! Everything here is `no_std` + `alloc`; IO, file formats and the CLI
//! live in the companion `mdk` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod chain;
pub mod dyck;
pub mod group;
pub mod intmat;
pub mod lambda;
pub mod markov;
pub mod snf;
pub mod tower;

pub use intmat::IntMat;
pub use markov::TransitionMatrix;
