//! Shared numerical machinery and the brute-force oracles.

pub mod bessel;
pub mod cubic;
pub mod langevin;
pub mod quadrature;
pub mod split_step;

pub use bessel::{bessel_k_quarter, bessel_k_quarter_scaled};
pub use cubic::{cardano_invariants, solve_cubic, CardanoInvariants};
pub use langevin::{drude_memory, langevin_ode_oracle, GreenSamples};
pub use quadrature::{
    integrate_adaptive, integrate_halfline, integrate_halfline_from, integrate_pieces, QuadValue,
    QuadratureResult,
};
pub use split_step::{schrodinger_grid_evolve, GridState, SplitStep};
