//! Best responses to Q*, computed two ways: in closed form from the affine
//! payoff in the POVM parameters, and by direct search over measurements
//! evaluated with the Born rule.

use std::f64::consts::SQRT_2;

use serde::Serialize;

use super::povm::{alice_payoff_form, bob_payoff_form, EffectParams, PayoffForm, PovmParams};
use super::{deviation_payoff_direct, params_to_measurements, q_star_payoffs};
use crate::error::{Error, Result};
use crate::game::{Epsilon, PayoffPair, Player, NORMALIZATION_TOL};
use crate::strategy::{Deviation, EquilibriumReport};

/// Agreement required between the closed-form and the searched maximum.
pub const BEST_RESPONSE_TOL: f64 = 1e-6;

const GRID_POINTS: usize = 9;
const ASCENT_ITERATIONS: usize = 200;
const ASCENT_STEP: f64 = 0.125;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BestResponse {
    pub player: Player,
    pub analytic: f64,
    pub numeric: f64,
    pub argmax: PovmParams,
    pub q_star: f64,
}

impl BestResponse {
    pub fn gain(&self) -> f64 {
        self.analytic - self.q_star
    }
}

fn payoff_form(player: Player, eps: Epsilon) -> PayoffForm {
    match player {
        Player::Alice => alice_payoff_form(eps),
        Player::Bob => bob_payoff_form(eps),
    }
}

/// Maximizes `c₀·a₀ + c⃗·a⃗` over one effect's feasible parameters.
///
/// With `n = ‖a⃗‖` the best direction is `c⃗/‖c⃗‖`, leaving
/// `c₀·a₀ + ‖c⃗‖·n` over `n ≤ a₀ ≤ 2 − n`, `n ≤ 1`, which is linear on a
/// triangle with corners `(n, a₀) = (0, 0), (0, 2), (1, 1)`.
fn maximize_effect(coeffs: [f64; 4]) -> (f64, EffectParams) {
    let c0 = coeffs[0];
    let c = [coeffs[1], coeffs[2], coeffs[3]];
    let norm = c.iter().map(|v| v * v).sum::<f64>().sqrt();
    let unit = if norm > 0.0 {
        c.map(|v| v / norm)
    } else {
        [0.0; 3]
    };
    let corners = [
        (
            0.0,
            EffectParams {
                offset: 0.0,
                bloch: [0.0; 3],
            },
        ),
        (
            2.0 * c0,
            EffectParams {
                offset: 2.0,
                bloch: [0.0; 3],
            },
        ),
        (
            c0 + norm,
            EffectParams {
                offset: 1.0,
                bloch: unit,
            },
        ),
    ];
    // Ties go to the last corner, so a full-length Bloch vector wins.
    corners
        .into_iter()
        .fold((f64::NEG_INFINITY, corners[0].1), |best, (v, p)| {
            if v >= best.0 {
                (v, p)
            } else {
                best
            }
        })
}

/// Closed-form maximum of `player`'s payoff over all deviations from Q*.
pub fn analytic_best_response(player: Player, eps: Epsilon) -> (f64, PovmParams) {
    let form = payoff_form(player, eps);
    let (v0, type0) = maximize_effect(form.type0);
    let (v1, type1) = maximize_effect(form.type1);
    (form.constant + v0 + v1, PovmParams { type0, type1 })
}

fn grid_effects() -> Vec<EffectParams> {
    let step = 2.0 / (GRID_POINTS - 1) as f64;
    let axis: Vec<f64> = (0..GRID_POINTS).map(|k| -1.0 + step * k as f64).collect();
    let mut out = Vec::new();
    for &a0 in &axis {
        for &a1 in &axis {
            for &a2 in &axis {
                for &a3 in &axis {
                    let p = EffectParams {
                        offset: a0 + 1.0,
                        bloch: [a1, a2, a3],
                    };
                    if p.validate().is_ok() {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Box coordinates for one effect: `a⃗ = r·(sin θ cos φ, sin θ sin φ, cos θ)`
/// and `a₀ = r + t(2 − 2r)` with `r, t ∈ [0, 1]`. Every feasible effect has
/// such a form and the only constraints are flat, which suits coordinate
/// ascent better than the curved ball boundary.
#[derive(Debug, Clone, Copy)]
struct Polar([f64; 4]);

impl Polar {
    fn of(p: &EffectParams) -> Self {
        let r = p.bloch_norm().min(1.0);
        let [x, y, z] = p.bloch;
        let theta = if r > 0.0 {
            (z / r).clamp(-1.0, 1.0).acos()
        } else {
            0.0
        };
        let t = if r < 1.0 {
            ((p.offset - r) / (2.0 - 2.0 * r)).clamp(0.0, 1.0)
        } else {
            0.5
        };
        Polar([t, r, theta, y.atan2(x)])
    }

    fn effect(&self) -> EffectParams {
        let [t, r, theta, phi] = self.0;
        EffectParams {
            offset: r + t * (2.0 - 2.0 * r),
            bloch: [
                r * theta.sin() * phi.cos(),
                r * theta.sin() * phi.sin(),
                r * theta.cos(),
            ],
        }
    }

    fn nudge(mut self, k: usize, delta: f64) -> Self {
        self.0[k] += delta;
        if k < 2 {
            self.0[k] = self.0[k].clamp(0.0, 1.0);
        }
        self
    }
}

/// Maximum found by searching measurements directly, each scored with the
/// Born rule against the opponent's Q* measurements.
///
/// The payoff splits into a term per own type, so each of the two effects is
/// grid-searched separately with the other held at a fair coin; the combined
/// point is then refined by coordinate ascent over all eight parameters.
pub fn numeric_best_response(player: Player, eps: Epsilon) -> Result<(f64, PovmParams)> {
    let score = |p: &[Polar; 2]| -> Result<f64> {
        let params = PovmParams {
            type0: p[0].effect(),
            type1: p[1].effect(),
        };
        deviation_payoff_direct(player, &params_to_measurements(&params)?, eps)
    };
    let coin = Polar::of(&EffectParams {
        offset: 1.0,
        bloch: [0.0; 3],
    });
    let grid: Vec<Polar> = grid_effects().iter().map(Polar::of).collect();

    let mut best = [coin; 2];
    for slot in 0..2 {
        let mut top = (f64::NEG_INFINITY, coin);
        for &e in &grid {
            let mut trial = [coin; 2];
            trial[slot] = e;
            let v = score(&trial)?;
            if v > top.0 {
                top = (v, e);
            }
        }
        best[slot] = top.1;
    }

    let mut value = score(&best)?;
    let mut step = ASCENT_STEP;
    for _ in 0..ASCENT_ITERATIONS {
        let mut improved = false;
        for k in 0..8 {
            for dir in [1.0, -1.0] {
                let mut trial = best;
                trial[k / 4] = trial[k / 4].nudge(k % 4, dir * step);
                let v = score(&trial)?;
                if v > value {
                    best = trial;
                    value = v;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Ok((
        value,
        PovmParams {
            type0: best[0].effect(),
            type1: best[1].effect(),
        },
    ))
}

/// Both routes to the best response, failing if they disagree.
pub fn best_response_max(player: Player, eps: Epsilon) -> Result<BestResponse> {
    let (analytic, argmax) = analytic_best_response(player, eps);
    let (numeric, _) = numeric_best_response(player, eps)?;
    if (analytic - numeric).abs() > BEST_RESPONSE_TOL {
        return Err(Error::OracleMismatch {
            what: "quantum best response",
            analytic,
            numeric,
        });
    }
    Ok(BestResponse {
        player,
        analytic,
        numeric,
        argmax,
        q_star: q_star_payoffs(eps)?.get(player),
    })
}

/// Whether Q* is a Nash equilibrium among all local quantum measurements.
pub fn certify_q_star(eps: Epsilon) -> Result<EquilibriumReport> {
    let gain = |player| -> Result<(f64, Option<Deviation>)> {
        let br = best_response_max(player, eps)?;
        Ok((br.gain(), Some(Deviation::Povm { params: br.argmax })))
    };
    Ok(EquilibriumReport::from_gains(
        gain(Player::Alice)?,
        gain(Player::Bob)?,
    ))
}

/// `(max(7/16, 3/4 − 3ε/4), 11/16 + ε/4)`.
pub fn tightened_classical_bounds(eps: Epsilon) -> PayoffPair {
    let e = eps.value();
    PayoffPair::new((7.0 / 16.0f64).max(0.75 - 0.75 * e), 11.0 / 16.0 + 0.25 * e)
}

/// Whether both Q* payoffs exceed the tightened classical bounds by more
/// than rounding noise.
pub fn q_star_beats_tightened_bounds(eps: Epsilon) -> Result<bool> {
    let q = q_star_payoffs(eps)?;
    let b = tightened_classical_bounds(eps);
    Ok(q.alice > b.alice + NORMALIZATION_TOL && q.bob > b.bob + NORMALIZATION_TOL)
}

/// The open interval `(c1, c2)` of ε where Q* beats both tightened bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Theorem2Window {
    pub c1: f64,
    pub c2: f64,
}

/// Q* against the tightened bounds at one ε.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WindowCheck {
    pub epsilon: f64,
    pub q_star: PayoffPair,
    pub bounds: PayoffPair,
    /// Both payoffs strictly above their bounds.
    pub beats: bool,
    /// Both payoffs at or above their bounds, up to rounding.
    pub meets: bool,
}

impl Theorem2Window {
    pub fn contains(&self, eps: Epsilon) -> bool {
        self.c1 < eps.value() && eps.value() < self.c2
    }

    /// Q* meets both bounds at `c1`, the midpoint and `c2` (strictly inside,
    /// with equality at the ends) and misses at least one just outside.
    pub fn verify(&self) -> Result<bool> {
        let c = self.checks(1e-6)?;
        Ok(!c[0].meets && c[1].meets && c[2].beats && c[3].meets && !c[4].meets)
    }

    /// Probes at both endpoints, the midpoint, and `offset` outside each
    /// end.
    pub fn checks(&self, offset: f64) -> Result<Vec<WindowCheck>> {
        let points = [
            self.c1 - offset,
            self.c1,
            0.5 * (self.c1 + self.c2),
            self.c2,
            self.c2 + offset,
        ];
        points
            .into_iter()
            .map(|v| {
                let eps = Epsilon::new(v)?;
                let q_star = q_star_payoffs(eps)?;
                let bounds = tightened_classical_bounds(eps);
                Ok(WindowCheck {
                    epsilon: v,
                    q_star,
                    bounds,
                    beats: q_star_beats_tightened_bounds(eps)?,
                    meets: q_star.alice >= bounds.alice - NORMALIZATION_TOL
                        && q_star.bob >= bounds.bob - NORMALIZATION_TOL,
                })
            })
            .collect()
    }
}

/// Endpoints from the crossings of Alice's Q* payoff `k(3/2 − ε)` with
/// `3/4 − 3ε/4` and with `7/16`, where `k = (1 + 1/√2)/4`. Bob's crossing
/// with `11/16 + ε/4` lies below `c1` and does not bind.
pub fn theorem2_window() -> Theorem2Window {
    let k = 0.25 * (1.0 + 1.0 / SQRT_2);
    let c1 = (0.75 - 1.5 * k) / (0.75 - k);
    let c2 = 1.5 - 7.0 / (16.0 * k);
    let bob = (11.0 / 16.0 - 1.5 * k) / (k - 0.25);
    debug_assert!(bob < c1);
    Theorem2Window { c1, c2 }
}
