//! Classical advice from a trusted adviser: recommendation distributions over
//! pure profiles, the correlated-equilibrium (obedience) constraints, and LP
//! maxima over the resulting polytope.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{average_payoffs, build_game, Correlation, Epsilon, Player, UtilityTable};
use crate::lp::{LinearProgram, Relation, LP_TOL};
use crate::strategy::{profile_to_correlation, PayoffMatrix, PureProfile, PureStrategy};

/// Tolerance for the classical payoff-sum bound `⟨u_A⟩ + ⟨u_B⟩ ≤ 9/8`.
pub const SUM_BOUND_TOL: f64 = 1e-10;

/// Distribution `p[i][j]` over recommendations `(S_i, S_j)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelatedStrategy {
    p: [[f64; 4]; 4],
}

impl CorrelatedStrategy {
    pub fn new(p: [[f64; 4]; 4]) -> Result<Self> {
        if p.iter()
            .flatten()
            .any(|v| !v.is_finite() || *v < -crate::NORMALIZATION_TOL)
        {
            return Err(Error::invalid(
                "correlated strategy",
                "negative probability",
            ));
        }
        let sum: f64 = p.iter().flatten().sum();
        if (sum - 1.0).abs() > crate::NORMALIZATION_TOL {
            return Err(Error::invalid(
                "correlated strategy",
                format!("probabilities sum to {sum}"),
            ));
        }
        Ok(CorrelatedStrategy { p })
    }

    /// Builds a strategy from 16 values in row-major order, renormalizing
    /// and clipping tiny negatives left over from a solver.
    pub(crate) fn from_solver(x: &[f64]) -> Result<Self> {
        let total: f64 = x.iter().map(|v| v.max(0.0)).sum();
        let mut p = [[0.0; 4]; 4];
        for (k, v) in x.iter().enumerate() {
            p[k / 4][k % 4] = v.max(0.0) / total;
        }
        CorrelatedStrategy::new(p)
    }

    pub fn point_mass(profile: PureProfile) -> Self {
        let mut p = [[0.0; 4]; 4];
        p[profile.alice.index()][profile.bob.index()] = 1.0;
        CorrelatedStrategy { p }
    }

    pub fn uniform() -> Self {
        CorrelatedStrategy {
            p: [[1.0 / 16.0; 4]; 4],
        }
    }

    pub fn prob(&self, profile: PureProfile) -> f64 {
        self.p[profile.alice.index()][profile.bob.index()]
    }

    pub fn matrix(&self) -> &[[f64; 4]; 4] {
        &self.p
    }

    /// `μ_i`: probability that Alice is told to play `S_i`.
    pub fn alice_marginal(&self) -> [f64; 4] {
        let mut mu = [0.0; 4];
        for (i, row) in self.p.iter().enumerate() {
            mu[i] = row.iter().sum();
        }
        mu
    }

    /// `λ_j`: probability that Bob is told to play `S_j`.
    pub fn bob_marginal(&self) -> [f64; 4] {
        let mut lambda = [0.0; 4];
        for row in &self.p {
            for (j, v) in row.iter().enumerate() {
                lambda[j] += v;
            }
        }
        lambda
    }

    /// The box seen by an observer: the `p`-mixture of deterministic boxes.
    pub fn induced_correlation(&self) -> Correlation {
        let mut t = [[0.0; 4]; 4];
        for profile in PureProfile::all() {
            let w = self.prob(profile);
            if w == 0.0 {
                continue;
            }
            let c = profile_to_correlation(profile);
            for (row, crow) in t.iter_mut().zip(c.table()) {
                row.iter_mut().zip(crow).for_each(|(v, cv)| *v += w * cv);
            }
        }
        // every row sums to Σp = 1 up to rounding
        Correlation::new(t).expect("mixture of deterministic boxes is normalized")
    }

    pub fn payoffs(&self, game: &UtilityTable) -> crate::PayoffPair {
        average_payoffs(game, &self.induced_correlation())
    }
}

/// Which of the three ranges of ε the closed-form bounds are in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `0 ≤ ε ≤ 1/4`
    Low,
    /// `1/4 < ε ≤ 1/2`
    Middle,
    /// `1/2 < ε ≤ 3/4`
    High,
}

impl Regime {
    pub fn of(eps: Epsilon) -> Self {
        let e = eps.value();
        if e <= 0.25 {
            Regime::Low
        } else if e <= 0.5 {
            Regime::Middle
        } else {
            Regime::High
        }
    }
}

/// Per-player maxima of the pure-profile payoff table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CeBounds {
    pub alice_bound: f64,
    pub bob_bound: f64,
    pub regime: Regime,
}

pub fn classical_payoff_bounds(eps: Epsilon) -> CeBounds {
    let e = eps.value();
    let regime = Regime::of(eps);
    let (alice_bound, bob_bound) = match regime {
        Regime::Low => (0.75 * (1.0 - e), 0.75),
        Regime::Middle => (11.0 / 16.0 - e / 2.0, 11.0 / 16.0 + e / 4.0),
        Regime::High => (7.0 / 16.0, 7.0 / 16.0 + 0.75 * e),
    };
    CeBounds {
        alice_bound,
        bob_bound,
        regime,
    }
}

/// `Σ_k p[i][k]·(u(i,k) − u(i',k)) ≥ 0` for Alice, or the column analogue
/// for Bob: obeying recommendation `recommended` is at least as good as
/// switching to `deviation`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObedienceConstraint {
    pub player: Player,
    pub recommended: PureStrategy,
    pub deviation: PureStrategy,
    /// Coefficients over `p[i][j]`, row-major.
    pub coeffs: [f64; 16],
}

impl ObedienceConstraint {
    pub fn evaluate(&self, s: &CorrelatedStrategy) -> f64 {
        self.coeffs
            .iter()
            .zip(s.matrix().iter().flatten())
            .map(|(c, p)| c * p)
            .sum()
    }
}

/// The correlated-equilibrium polytope: `p ≥ 0`, `Σp = 1` and 24 obedience
/// inequalities (12 per player).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CeConstraints {
    pub payoffs: PayoffMatrix,
    pub obedience: Vec<ObedienceConstraint>,
}

pub fn ce_constraints(game: &UtilityTable) -> CeConstraints {
    let m = PayoffMatrix::of_game(game);
    let mut obedience = Vec::with_capacity(24);
    for player in Player::BOTH {
        for rec in PureStrategy::ALL {
            for dev in PureStrategy::ALL.into_iter().filter(|d| *d != rec) {
                let mut coeffs = [0.0; 16];
                for other in 0..4 {
                    let (cell, gain) = match player {
                        Player::Alice => (
                            4 * rec.index() + other,
                            m.payoff(player, rec.index(), other)
                                - m.payoff(player, dev.index(), other),
                        ),
                        Player::Bob => (
                            4 * other + rec.index(),
                            m.payoff(player, other, rec.index())
                                - m.payoff(player, other, dev.index()),
                        ),
                    };
                    coeffs[cell] = gain;
                }
                obedience.push(ObedienceConstraint {
                    player,
                    recommended: rec,
                    deviation: dev,
                    coeffs,
                });
            }
        }
    }
    CeConstraints {
        payoffs: m,
        obedience,
    }
}

impl CeConstraints {
    /// Obedience constraints violated by more than `tol`, with their values.
    pub fn violations(&self, s: &CorrelatedStrategy, tol: f64) -> Vec<(&ObedienceConstraint, f64)> {
        self.obedience
            .iter()
            .map(|c| (c, c.evaluate(s)))
            .filter(|(_, v)| *v < -tol)
            .collect()
    }

    pub fn is_satisfied(&self, s: &CorrelatedStrategy, tol: f64) -> bool {
        self.violations(s, tol).is_empty()
    }

    pub fn to_lp(&self, objective: [f64; 16]) -> LinearProgram {
        let mut lp = LinearProgram::new(objective.to_vec());
        lp.add(vec![1.0; 16], Relation::Eq, 1.0);
        for c in &self.obedience {
            lp.add(c.coeffs.to_vec(), Relation::Ge, 0.0);
        }
        lp
    }

    /// Maximizes a linear objective over the polytope; ties go to the
    /// lexicographically smallest `p` in row-major order.
    pub fn maximize(&self, objective: [f64; 16]) -> Result<CeOptimum> {
        let sol = self.to_lp(objective).maximize_lexmin()?;
        let witness = CorrelatedStrategy::from_solver(&sol.x)?;
        Ok(CeOptimum {
            value: sol.value,
            witness,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CeOptimum {
    pub value: f64,
    pub witness: CorrelatedStrategy,
}

/// The best average payoff `player` can get in any correlated equilibrium.
pub fn max_ce_payoff(game: &UtilityTable, player: Player) -> Result<CeOptimum> {
    let cons = ce_constraints(game);
    let mut objective = [0.0; 16];
    for (k, c) in objective.iter_mut().enumerate() {
        *c = cons.payoffs.payoff(player, k / 4, k % 4);
    }
    cons.maximize(objective)
}

/// Largest probability `λ_j` with which Bob can be told to play `strategy`
/// in a correlated equilibrium.
pub fn max_bob_recommendation(game: &UtilityTable, strategy: PureStrategy) -> Result<CeOptimum> {
    let mut objective = [0.0; 16];
    for i in 0..4 {
        objective[4 * i + strategy.index()] = 1.0;
    }
    ce_constraints(game).maximize(objective)
}

/// Whether no correlated equilibrium of `G(ε)` lets Bob play `S3` with
/// positive probability. Only defined on `1/4 ≤ ε ≤ 1/2`.
pub fn lemma1_check(eps: Epsilon) -> Result<bool> {
    let e = eps.value();
    if !(0.25..=0.5).contains(&e) {
        return Err(Error::Domain {
            name: "epsilon",
            value: e,
            min: 0.25,
            max: 0.5,
        });
    }
    let opt = max_bob_recommendation(&build_game(eps), PureStrategy::Identity)?;
    Ok(opt.value <= LP_TOL)
}

/// Checks `⟨u_A⟩ + ⟨u_B⟩ ≤ 9/8` for the box induced by `strategy`.
pub fn classical_sum_bound_check(strategy: &CorrelatedStrategy, eps: Epsilon) -> bool {
    strategy.payoffs(&build_game(eps)).sum() <= 9.0 / 8.0 + SUM_BOUND_TOL
}
