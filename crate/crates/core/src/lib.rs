//! Analytical dynamics of the forced quantum inverted oscillator.
//!
//! The crate covers three regimes of the potential `-Ω²x²/2 - F(t)x`
//! (unit mass):
//!
//! * closed evolution: classical trajectory, Lagrangian action, the forced
//!   propagator and exact Gaussian packet evolution, including δ-kicks
//!   ([`classical`], [`evolution`]);
//! * quasistatic transmission through the parabolic barrier under a slow
//!   harmonic force ([`barrier`]);
//! * the Caldeira–Leggett open oscillator with a Drude bath: pole/residue
//!   Green's function, mean motion, noise spectrum and displacement variance
//!   ([`open_system`]).
//!
//! Every closed form is paired with a brute-force oracle in [`numerics`]
//! (adaptive quadrature, a split-step grid solver, an RK4 memory-kernel
//! integrator).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod barrier;
pub mod classical;
mod error;
pub mod evolution;
pub mod numerics;
pub mod open_system;
pub mod params;

pub use error::{Error, Result};
pub use params::{ForceProfile, GaussianPacket, SystemParams};
