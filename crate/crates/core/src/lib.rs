//! Bayesian games with correlated, no-signaling, and quantum advice.
//!
//! The core object is the two-player game `G(ε)` with binary types and
//! actions (see [`build_game`]). Advice is a conditional distribution
//! `P(y_A, y_B | x_A, x_B)` ([`Correlation`]); the modules below compute
//! payoffs and certify equilibria for each advice class.

pub mod cli;
pub mod correlated;
pub mod error;
pub mod game;
pub mod lp;
pub mod nosignaling;
pub mod quantum;
pub mod simulate;
pub mod strategy;

pub use error::{Error, Result};
pub use game::{
    average_payoffs, build_game, chsh_value, Correlation, Epsilon, GameFile, JointAction,
    JointType, LinearFunctional, PayoffPair, Player, UtilityTable, EPSILON_MAX, NORMALIZATION_TOL,
};
pub use strategy::{
    enumerate_pure_nash, pure_payoff_table, Deviation, EquilibriumReport, MixedStrategy,
    PureProfile, PureStrategy,
};
