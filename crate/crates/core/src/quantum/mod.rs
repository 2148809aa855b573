//! Entangled advice: two-qubit states, binary POVMs, Born-rule correlations,
//! the Q* strategy, and certification of unilateral deviations from it.

mod best_response;
pub mod linalg;
mod povm;

pub use best_response::{
    analytic_best_response, best_response_max, certify_q_star, numeric_best_response,
    q_star_beats_tightened_bounds, theorem2_window, tightened_classical_bounds, BestResponse,
    Theorem2Window, WindowCheck, BEST_RESPONSE_TOL,
};
pub use povm::{
    alice_deviation_payoff, alice_payoff_form, bob_deviation_payoff, bob_payoff_form,
    measurements_to_params, params_to_measurements, EffectParams, PayoffForm, PovmParams,
};

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::game::{
    average_payoffs, build_game, Correlation, Epsilon, PayoffPair, Player, NORMALIZATION_TOL,
};
use linalg::{c, expectation, Mat2, C};

/// Hermiticity tolerance for measurement effects.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Slack allowed on effect eigenvalues outside `[0, 1]`.
pub const POSITIVITY_TOL: f64 = 1e-10;

/// A pure two-qubit state in the basis `|00⟩, |01⟩, |10⟩, |11⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState {
    amplitudes: [C; 4],
}

impl TwoQubitState {
    pub fn new(amplitudes: [C; 4]) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::invalid(
                "two-qubit state",
                format!("squared norm is {norm}"),
            ));
        }
        Ok(TwoQubitState { amplitudes })
    }

    /// `(|01⟩ − |10⟩)/√2`.
    pub fn singlet() -> Self {
        let h = FRAC_1_SQRT_2;
        TwoQubitState {
            amplitudes: [c(0.0, 0.0), c(h, 0.0), c(-h, 0.0), c(0.0, 0.0)],
        }
    }

    pub fn basis(index: usize) -> Self {
        let mut amplitudes = [c(0.0, 0.0); 4];
        amplitudes[index] = c(1.0, 0.0);
        TwoQubitState { amplitudes }
    }

    pub fn amplitudes(&self) -> &[C; 4] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// A two-outcome POVM `{E, I − E}`, stored by its outcome-0 effect `E`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinaryMeasurement {
    effect0: Mat2,
}

impl BinaryMeasurement {
    /// Symmetrizes `effect0` after checking it is Hermitian, then checks both
    /// effects are positive.
    pub fn new(effect0: Mat2) -> Result<Self> {
        let skew = (effect0 - effect0.adjoint()).max_abs();
        if skew > HERMITIAN_TOL {
            return Err(Error::invalid(
                "measurement effect",
                format!("not Hermitian (deviation {skew:e})"),
            ));
        }
        let effect0 = (effect0 + effect0.adjoint()).scale(0.5);
        let (lo, hi) = effect0.hermitian_eigenvalues();
        if lo < -POSITIVITY_TOL || hi > 1.0 + POSITIVITY_TOL {
            return Err(Error::invalid(
                "measurement effect",
                format!("eigenvalues ({lo}, {hi}) leave [0, 1]"),
            ));
        }
        Ok(BinaryMeasurement { effect0 })
    }

    /// Projective measurement of a ±1-valued observable: outcome 0 on the
    /// +1 eigenspace.
    pub fn of_observable(observable: Mat2) -> Result<Self> {
        BinaryMeasurement::new((Mat2::identity() + observable).scale(0.5))
    }

    pub fn effect(&self, outcome: bool) -> Mat2 {
        if outcome {
            Mat2::identity() - self.effect0
        } else {
            self.effect0
        }
    }

    pub fn effect0(&self) -> Mat2 {
        self.effect0
    }

    pub fn is_projective(&self) -> bool {
        (self.effect0 * self.effect0 - self.effect0).max_abs() <= POSITIVITY_TOL
    }
}

/// A player's measurement choice for each of their two types.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlayerMeasurements {
    pub on_type0: BinaryMeasurement,
    pub on_type1: BinaryMeasurement,
}

impl PlayerMeasurements {
    pub fn on(&self, own_type: bool) -> &BinaryMeasurement {
        if own_type {
            &self.on_type1
        } else {
            &self.on_type0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QStar {
    pub state: TwoQubitState,
    pub alice: PlayerMeasurements,
    pub bob: PlayerMeasurements,
}

/// Singlet advice; Alice measures `σ_z` / `σ_x`, Bob `−(σ_x + σ_z)/√2` /
/// `(σ_x − σ_z)/√2`, each answering 0 on the +1 outcome.
pub fn q_star_setup() -> QStar {
    let (x, z) = (Mat2::pauli_x(), Mat2::pauli_z());
    let m =
        |o: Mat2| BinaryMeasurement::of_observable(o).expect("Pauli combinations are observables");
    QStar {
        state: TwoQubitState::singlet(),
        alice: PlayerMeasurements {
            on_type0: m(z),
            on_type1: m(x),
        },
        bob: PlayerMeasurements {
            on_type0: m((x + z).scale(-FRAC_1_SQRT_2)),
            on_type1: m((x - z).scale(FRAC_1_SQRT_2)),
        },
    }
}

/// `P(y_A, y_B | x_A, x_B) = ⟨ψ| E_A(x_A, y_A) ⊗ E_B(x_B, y_B) |ψ⟩`.
pub fn born_correlation(
    state: &TwoQubitState,
    alice: &PlayerMeasurements,
    bob: &PlayerMeasurements,
) -> Result<Correlation> {
    Correlation::from_fn(|x, y| {
        let ea = alice.on(x.alice).effect(y.alice);
        let eb = bob.on(x.bob).effect(y.bob);
        expectation(state.amplitudes(), &ea, &eb).re
    })
}

fn q_star_scale() -> f64 {
    0.25 * (1.0 + FRAC_1_SQRT_2)
}

/// `(¼(1 + 1/√2)(3/2 − ε), ¼(1 + 1/√2)(3/2 + ε))`, cross-checked against the
/// Born-rule pipeline.
pub fn q_star_payoffs(eps: Epsilon) -> Result<PayoffPair> {
    let e = eps.value();
    let closed = PayoffPair::new(q_star_scale() * (1.5 - e), q_star_scale() * (1.5 + e));
    let q = q_star_setup();
    let direct = average_payoffs(
        &build_game(eps),
        &born_correlation(&q.state, &q.alice, &q.bob)?,
    );
    let diff = closed.abs_diff(&direct);
    if diff.alice.max(diff.bob) > NORMALIZATION_TOL {
        return Err(Error::OracleMismatch {
            what: "Q* payoff",
            analytic: closed.alice,
            numeric: direct.alice,
        });
    }
    Ok(closed)
}

/// Payoff of `player` when they use `deviation` and the opponent keeps Q*,
/// computed directly from the Born rule.
pub fn deviation_payoff_direct(
    player: Player,
    deviation: &PlayerMeasurements,
    eps: Epsilon,
) -> Result<f64> {
    let q = q_star_setup();
    let corr = match player {
        Player::Alice => born_correlation(&q.state, deviation, &q.bob)?,
        Player::Bob => born_correlation(&q.state, &q.alice, deviation)?,
    };
    Ok(average_payoffs(&build_game(eps), &corr).get(player))
}
