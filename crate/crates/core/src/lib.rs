//! Non-cooperative games and friendly-jammer power allocation.
//!
//! The crate has two halves:
//!
//! * [`game`]: strategic-form and continuous games, best responses, pure
//!   Nash equilibrium checks and enumeration, and round-robin best-response
//!   dynamics.
//! * [`secrecy`], [`solvers`], [`experiments`]: a friendly UAV jammer that
//!   splits a power budget across `N` orthogonal channels to maximize the sum
//!   secrecy rate against a single eavesdropper, solved by an equal-power
//!   baseline, a KKT water-filling solver, a pricing game driven by
//!   best-response dynamics, and two validation oracles.

pub mod error;
pub mod experiments;
pub mod game;
pub mod secrecy;
pub mod solvers;

pub use error::{Error, Result};
