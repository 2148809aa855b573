//! The two-input, two-output no-signaling polytope and the PR-box strategy.
//!
//! The polytope has 24 vertices: 16 local deterministic boxes and 8
//! PR boxes `y_A ⊕ y_B = (x_A ∧ x_B) ⊕ α·x_A ⊕ β·x_B ⊕ γ`. Any linear
//! objective is maximized at one of them, so the unilateral-deviation check
//! for PR advice is a 24-way comparison.
//!
//! Vertex order is fixed: local boxes by `4·f + g` (`f`, `g` indexing
//! [`PureStrategy::ALL`]), then PR boxes by `4α + 2β + γ`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{
    average_payoffs, build_game, Correlation, Epsilon, LinearFunctional, PayoffPair, Player,
    NORMALIZATION_TOL,
};
use crate::strategy::{
    profile_to_correlation, Deviation, EquilibriumReport, PureProfile, PureStrategy,
};

/// Values within this distance of the maximum count as attaining it.
pub const ARGMAX_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum VertexKind {
    LocalDeterministic {
        alice: PureStrategy,
        bob: PureStrategy,
    },
    PrBox {
        alpha: bool,
        beta: bool,
        gamma: bool,
    },
}

impl VertexKind {
    /// Position in the canonical 24-vertex order.
    pub fn index(self) -> usize {
        match self {
            VertexKind::LocalDeterministic { alice, bob } => 4 * alice.index() + bob.index(),
            VertexKind::PrBox { alpha, beta, gamma } => {
                16 + 4 * usize::from(alpha) + 2 * usize::from(beta) + usize::from(gamma)
            }
        }
    }

    pub fn pr_star() -> Self {
        VertexKind::PrBox {
            alpha: false,
            beta: false,
            gamma: false,
        }
    }

    pub fn correlation(self) -> Correlation {
        match self {
            VertexKind::LocalDeterministic { alice, bob } => {
                profile_to_correlation(PureProfile::new(alice, bob))
            }
            VertexKind::PrBox { alpha, beta, gamma } => pr_box(alpha, beta, gamma),
        }
    }
}

impl std::fmt::Display for VertexKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VertexKind::LocalDeterministic { alice, bob } => write!(f, "local({alice}, {bob})"),
            VertexKind::PrBox { alpha, beta, gamma } => {
                write!(
                    f,
                    "PR({}{}{})",
                    u8::from(*alpha),
                    u8::from(*beta),
                    u8::from(*gamma)
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NsVertex {
    pub kind: VertexKind,
    #[serde(serialize_with = "serialize_correlation")]
    pub correlation: Correlation,
}

fn serialize_correlation<S: serde::Serializer>(
    c: &Correlation,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    c.table().serialize(s)
}

/// `P(y|x) = 1/2` when `y_A ⊕ y_B = (x_A ∧ x_B) ⊕ α·x_A ⊕ β·x_B ⊕ γ`.
pub fn pr_box(alpha: bool, beta: bool, gamma: bool) -> Correlation {
    Correlation::from_fn(|x, y| {
        let target = (x.alice && x.bob) ^ (alpha && x.alice) ^ (beta && x.bob) ^ gamma;
        if y.alice ^ y.bob == target {
            0.5
        } else {
            0.0
        }
    })
    .expect("PR box rows are normalized")
}

/// The PR* advice: `y_A ⊕ y_B = x_A ∧ x_B`.
pub fn pr_star() -> Correlation {
    pr_box(false, false, false)
}

pub fn ns_vertices() -> Vec<NsVertex> {
    let local = PureProfile::all().map(|p| VertexKind::LocalDeterministic {
        alice: p.alice,
        bob: p.bob,
    });
    let nonlocal = (0..8).map(|k: u8| VertexKind::PrBox {
        alpha: k & 4 != 0,
        beta: k & 2 != 0,
        gamma: k & 1 != 0,
    });
    local
        .chain(nonlocal)
        .map(|kind| NsVertex {
            kind,
            correlation: kind.correlation(),
        })
        .collect()
}

/// `(½(3/2 − ε), ½(3/2 + ε))`, checked against direct evaluation on PR*.
pub fn pr_star_payoffs(eps: Epsilon) -> Result<PayoffPair> {
    let e = eps.value();
    let closed = PayoffPair::new(0.5 * (1.5 - e), 0.5 * (1.5 + e));
    let direct = average_payoffs(&build_game(eps), &pr_star());
    let diff = closed.abs_diff(&direct);
    if diff.alice.max(diff.bob) > NORMALIZATION_TOL {
        return Err(Error::OracleMismatch {
            what: "PR* payoff",
            analytic: closed.alice,
            numeric: direct.alice,
        });
    }
    Ok(closed)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NsMaximum {
    pub value: f64,
    pub argmax: Vec<VertexKind>,
}

impl NsMaximum {
    pub fn attained_at(&self, kind: VertexKind) -> bool {
        self.argmax.contains(&kind)
    }
}

/// Maximum of a linear functional over the no-signaling polytope.
pub fn maximize_over_ns(objective: &LinearFunctional) -> NsMaximum {
    let scored: Vec<(VertexKind, f64)> = ns_vertices()
        .into_iter()
        .map(|v| (v.kind, objective.evaluate(&v.correlation)))
        .collect();
    let value = scored.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max);
    let argmax = scored
        .into_iter()
        .filter(|s| s.1 >= value - ARGMAX_TOL)
        .map(|s| s.0)
        .collect();
    NsMaximum { value, argmax }
}

/// Whether neither player can improve on PR* by any local processing, i.e. by
/// moving to any other no-signaling box.
pub fn verify_pr_nash(eps: Epsilon) -> Result<EquilibriumReport> {
    let game = build_game(eps);
    let at_pr = pr_star_payoffs(eps)?;
    let gain = |player: Player| {
        let best = maximize_over_ns(&game.payoff_functional(player));
        let witness = best
            .argmax
            .iter()
            .copied()
            .find(|k| *k != VertexKind::pr_star())
            .map(|vertex| Deviation::NoSignaling { vertex });
        (best.value - at_pr.get(player), witness)
    };
    Ok(EquilibriumReport::from_gains(
        gain(Player::Alice),
        gain(Player::Bob),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{JointAction, JointType};
    use crate::lp::{LinearProgram, Relation};

    fn eps(v: f64) -> Epsilon {
        Epsilon::new(v).unwrap()
    }

    #[test]
    fn twenty_four_distinct_valid_vertices() {
        let v = ns_vertices();
        assert_eq!(v.len(), 24);
        for (k, a) in v.iter().enumerate() {
            assert_eq!(a.kind.index(), k);
            assert!(a.correlation.signaling_violation() <= 1e-15);
            for b in &v[k + 1..] {
                assert_ne!(a.correlation, b.correlation);
            }
        }
    }

    #[test]
    fn pr_star_is_the_first_pr_box() {
        let v = ns_vertices();
        assert_eq!(v[16].kind, VertexKind::pr_star());
        for x in JointType::ALL {
            for y in JointAction::ALL {
                let expect = if y.alice ^ y.bob == (x.alice && x.bob) {
                    0.5
                } else {
                    0.0
                };
                assert_eq!(v[16].correlation.prob(x, y), expect);
            }
        }
        let local = VertexKind::LocalDeterministic {
            alice: PureStrategy::Const0,
            bob: PureStrategy::Const0,
        };
        assert_eq!(
            v[0].correlation,
            profile_to_correlation(PureProfile::new(PureStrategy::Const0, PureStrategy::Const0))
        );
        assert_eq!(v[0].kind, local);
    }

    #[test]
    fn vertices_are_extreme_points() {
        let v = ns_vertices();
        for (k, target) in v.iter().enumerate() {
            let others: Vec<_> = v
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, o)| o)
                .collect();
            let mut lp = LinearProgram::new(vec![0.0; others.len()]);
            lp.add(vec![1.0; others.len()], Relation::Eq, 1.0);
            for x in JointType::ALL {
                for y in JointAction::ALL {
                    let row = others.iter().map(|o| o.correlation.prob(x, y)).collect();
                    lp.add(row, Relation::Eq, target.correlation.prob(x, y));
                }
            }
            assert!(
                lp.maximize().is_err(),
                "vertex {k} is a mixture of the others"
            );
        }
    }

    #[test]
    fn pr_star_payoff_examples() {
        assert_eq!(
            pr_star_payoffs(eps(0.0)).unwrap(),
            PayoffPair::new(0.75, 0.75)
        );
        let p = pr_star_payoffs(eps(0.625)).unwrap();
        assert!((p.alice - 0.4375).abs() < 1e-15 && (p.bob - 1.0625).abs() < 1e-15);
        let p = pr_star_payoffs(eps(0.4)).unwrap();
        assert!((p.alice - 0.55).abs() < 1e-15 && (p.bob - 0.95).abs() < 1e-15);
        for k in 0..=75 {
            assert!((pr_star_payoffs(eps(k as f64 / 100.0)).unwrap().sum() - 1.5).abs() < 1e-12);
        }
    }

    #[test]
    fn vertex_maxima() {
        let g = build_game(eps(0.3));
        let a = maximize_over_ns(&g.payoff_functional(Player::Alice));
        assert!((a.value - 0.6).abs() < 1e-12);
        assert!(a.attained_at(VertexKind::pr_star()));
        let b = maximize_over_ns(&g.payoff_functional(Player::Bob));
        assert!((b.value - 0.9).abs() < 1e-12);
        assert!(b.attained_at(VertexKind::pr_star()));

        let c = maximize_over_ns(&LinearFunctional::chsh());
        assert_eq!(c.value, 4.0);
        assert!(c
            .argmax
            .iter()
            .all(|k| matches!(k, VertexKind::PrBox { .. })));
        assert!(c.attained_at(VertexKind::pr_star()));
    }

    #[test]
    fn pr_nash_verdicts() {
        assert!(verify_pr_nash(eps(0.0)).unwrap().is_equilibrium);
        assert!(verify_pr_nash(eps(0.5)).unwrap().is_equilibrium);
        assert!(verify_pr_nash(eps(0.625)).unwrap().is_equilibrium);

        let r = verify_pr_nash(eps(0.7)).unwrap();
        assert!(!r.is_equilibrium);
        // (S4, S2) gives Alice 7/16 against ½(3/2 − 0.7) = 0.4
        assert!((r.alice_gain - (7.0 / 16.0 - 0.4)).abs() < 1e-12);
        assert_eq!(r.bob_gain, 0.0);
        assert!(r.best_alice_deviation.is_some());
    }
}
