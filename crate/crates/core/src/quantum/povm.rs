//! Parameterization of binary qubit POVMs and the closed-form deviation
//! payoffs against a fixed Q* opponent.
//!
//! An outcome-0 effect is `E = ½(a₀·I + a₁σ_x + a₂σ_y + a₃σ_z)`; it and
//! `I − E` are both positive exactly when `‖a⃗‖ ≤ a₀ ≤ 2 − ‖a⃗‖`.

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use super::linalg::{c, Mat2};
use super::{BinaryMeasurement, PlayerMeasurements};
use crate::error::{Error, Result};
use crate::game::Epsilon;

/// Slack on the parameter chain `‖a⃗‖ ≤ a₀ ≤ 2 − ‖a⃗‖`.
pub const PARAM_TOL: f64 = 1e-12;

/// `(a₀, a⃗)` for one outcome-0 effect.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectParams {
    pub offset: f64,
    pub bloch: [f64; 3],
}

impl EffectParams {
    pub fn new(offset: f64, bloch: [f64; 3]) -> Result<Self> {
        let p = EffectParams { offset, bloch };
        p.validate()?;
        Ok(p)
    }

    pub fn bloch_norm(&self) -> f64 {
        self.bloch.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.bloch_norm();
        if !self.offset.is_finite() || !n.is_finite() {
            return Err(Error::invalid("POVM parameters", "non-finite value"));
        }
        if n > 1.0 + PARAM_TOL {
            return Err(Error::invalid("POVM parameters", format!("‖a‖ = {n} > 1")));
        }
        if self.offset < n - PARAM_TOL {
            return Err(Error::invalid(
                "POVM parameters",
                format!("‖a‖ ≤ a0 violated: ‖a‖ = {n}, a0 = {}", self.offset),
            ));
        }
        if self.offset > 2.0 - n + PARAM_TOL {
            return Err(Error::invalid(
                "POVM parameters",
                format!("a0 ≤ 2 − ‖a‖ violated: ‖a‖ = {n}, a0 = {}", self.offset),
            ));
        }
        Ok(())
    }

    pub fn effect(&self) -> Mat2 {
        let [a1, a2, a3] = self.bloch;
        let a0 = self.offset;
        Mat2([
            [c(0.5 * (a0 + a3), 0.0), c(0.5 * a1, -0.5 * a2)],
            [c(0.5 * a1, 0.5 * a2), c(0.5 * (a0 - a3), 0.0)],
        ])
    }

    pub fn to_measurement(&self) -> Result<BinaryMeasurement> {
        self.validate()?;
        BinaryMeasurement::new(self.effect())
    }

    /// Inverse map: `a₀ = tr E`, `a_k = tr(E σ_k)`.
    pub fn of_measurement(m: &BinaryMeasurement) -> Self {
        let e = m.effect0();
        EffectParams {
            offset: e.trace().re,
            bloch: [
                (e * Mat2::pauli_x()).trace().re,
                (e * Mat2::pauli_y()).trace().re,
                (e * Mat2::pauli_z()).trace().re,
            ],
        }
    }

    fn as_vec(&self) -> [f64; 4] {
        [self.offset, self.bloch[0], self.bloch[1], self.bloch[2]]
    }
}

/// Parameters of a player's two measurements: `type0` (`a₀, a⃗`) is used on
/// type 0 and `type1` (`b₀, b⃗`) on type 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PovmParams {
    pub type0: EffectParams,
    pub type1: EffectParams,
}

impl PovmParams {
    pub fn validate(&self) -> Result<()> {
        self.type0.validate()?;
        self.type1.validate()
    }
}

pub fn params_to_measurements(p: &PovmParams) -> Result<PlayerMeasurements> {
    Ok(PlayerMeasurements {
        on_type0: p.type0.to_measurement()?,
        on_type1: p.type1.to_measurement()?,
    })
}

pub fn measurements_to_params(m: &PlayerMeasurements) -> PovmParams {
    PovmParams {
        type0: EffectParams::of_measurement(&m.on_type0),
        type1: EffectParams::of_measurement(&m.on_type1),
    }
}

/// A payoff affine in the POVM parameters:
/// `constant + type0·(a₀, a₁, a₂, a₃) + type1·(b₀, b₁, b₂, b₃)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PayoffForm {
    pub constant: f64,
    pub type0: [f64; 4],
    pub type1: [f64; 4],
}

impl PayoffForm {
    pub fn evaluate(&self, p: &PovmParams) -> f64 {
        let dot = |c: &[f64; 4], v: [f64; 4]| c.iter().zip(v).map(|(x, y)| x * y).sum::<f64>();
        self.constant + dot(&self.type0, p.type0.as_vec()) + dot(&self.type1, p.type1.as_vec())
    }
}

/// Alice's payoff when Bob keeps Q*:
/// `(1/32)[(9 − 4ε) + (2 − 4ε)a₀ + (3√2 − 2√2ε)a₃ + b₀ + (3√2 − 2√2ε)b₁]`.
pub fn alice_payoff_form(eps: Epsilon) -> PayoffForm {
    let e = eps.value();
    let k = 1.0 / 32.0;
    let s = 3.0 * SQRT_2 - 2.0 * SQRT_2 * e;
    PayoffForm {
        constant: k * (9.0 - 4.0 * e),
        type0: [k * (2.0 - 4.0 * e), 0.0, 0.0, k * s],
        type1: [k, k * s, 0.0, 0.0],
    }
}

/// Bob's payoff when Alice keeps Q*:
/// `(1/32)[15 + (−2 + 4ε)a₀ + (−3 − 2ε)(a₁ + a₃) + (−1 + 4ε)b₀ + (3 + 2ε)b₁ + (−3 − 2ε)b₃]`.
pub fn bob_payoff_form(eps: Epsilon) -> PayoffForm {
    let e = eps.value();
    let k = 1.0 / 32.0;
    let t = 3.0 + 2.0 * e;
    PayoffForm {
        constant: k * 15.0,
        type0: [k * (-2.0 + 4.0 * e), -k * t, 0.0, -k * t],
        type1: [k * (-1.0 + 4.0 * e), k * t, 0.0, -k * t],
    }
}

pub fn alice_deviation_payoff(p: &PovmParams, eps: Epsilon) -> Result<f64> {
    p.validate()?;
    Ok(alice_payoff_form(eps).evaluate(p))
}

pub fn bob_deviation_payoff(p: &PovmParams, eps: Epsilon) -> Result<f64> {
    p.validate()?;
    Ok(bob_payoff_form(eps).evaluate(p))
}
