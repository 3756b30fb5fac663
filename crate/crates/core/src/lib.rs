//! Uplink throughput optimization for a single-user wireless-powered
//! communication network.
//!
//! A hybrid access point transfers energy to a user, which spends it on an
//! uplink transmission back to the access point. Under time-division
//! duplexing the frame is split into an energy phase and a data phase; under
//! frequency-division duplexing the band is split instead. Both schemes share
//! the same concave rate objective and differ only in their feasible region
//! and effective SNR.
//!
//! - [`model`]: parameters, unit conversion, effective SNR, energy accounting, the rate objective
//! - [`optimizer`]: golden-section maximizer and a grid-search oracle
//! - [`duplex`]: TDD and FDD solvers and their comparison
//! - [`fading`]: Monte-Carlo evaluation over block-fading channels
//! - [`cli`]: config parsing and report rendering behind the `wpcn` binary

pub mod cli;
pub mod duplex;
pub mod error;
pub mod fading;
pub mod model;
pub mod optimizer;

pub use duplex::{
    compare, compare_with, solve_fdd, solve_fdd_with, solve_tdd, solve_tdd_with, Comparison,
    Constraint, FddSolution, SolveOptions, TddSolution, Winner,
};
pub use error::{Error, Result};
pub use fading::{monte_carlo, ChannelKind, ChannelModel, MonteCarloReport};
pub use model::{dbm_to_watts, EnergyAccount, ObjectiveSpec, SystemParams};
pub use optimizer::{grid_oracle, maximize_concave, MaximizerResult};
