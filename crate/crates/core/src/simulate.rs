//! Round-by-round play with an adviser.
//!
//! Each round the adviser first commits its advice, then the joint type is
//! drawn uniformly and each player acts on their own type and their share of
//! the advice. Averages over many rounds converge to [`average_payoffs`].
//!
//! The generator is xoshiro256** seeded through SplitMix64
//! (`seed_from_u64`); for seed 42 its first outputs are pinned in the tests.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::Serialize;

use crate::correlated::CorrelatedStrategy;
use crate::error::{Error, Result};
use crate::game::{
    average_payoffs, Correlation, JointAction, JointType, PayoffPair, Player, UtilityTable,
};
use crate::nosignaling::pr_star;
use crate::quantum::{born_correlation, q_star_setup, PlayerMeasurements, TwoQubitState};
use crate::strategy::{PureProfile, PureStrategy};

pub type Rng = Xoshiro256StarStar;

pub fn rng_from_seed(seed: u64) -> Rng {
    Xoshiro256StarStar::seed_from_u64(seed)
}

/// Uniform in `[0, 1)` from the top 53 bits.
pub fn next_unit(rng: &mut Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub enum AdviceSource {
    ClassicalCorrelated(CorrelatedStrategy),
    PrBox,
    Quantum {
        state: TwoQubitState,
        alice: PlayerMeasurements,
        bob: PlayerMeasurements,
    },
    RawCorrelation(Correlation),
}

impl AdviceSource {
    /// The singlet with the Q* measurements.
    pub fn q_star() -> Self {
        let q = q_star_setup();
        AdviceSource::Quantum {
            state: q.state,
            alice: q.alice,
            bob: q.bob,
        }
    }

    /// `P(y | x)` the source produces on average.
    pub fn correlation(&self) -> Result<Correlation> {
        match self {
            AdviceSource::ClassicalCorrelated(s) => Ok(s.induced_correlation()),
            AdviceSource::PrBox => Ok(pr_star()),
            AdviceSource::Quantum { state, alice, bob } => born_correlation(state, alice, bob),
            AdviceSource::RawCorrelation(c) => {
                if !c.is_no_signaling() {
                    return Err(Error::invalid(
                        "advice correlation",
                        format!("signals (violation {:e})", c.signaling_violation()),
                    ));
                }
                Ok(c.clone())
            }
        }
    }
}

/// What the adviser hands out before types are known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoundAdvice {
    /// A recommended pure profile, already drawn.
    Recommendation(PureProfile),
    /// A shared resource (box or entangled pair) queried on the players'
    /// types.
    Shared,
}

/// Cumulative tables prepared once per run.
#[derive(Debug, Clone)]
pub struct Sampler {
    /// Row-major cumulative `p[i][j]`, present for classical sources.
    recommendations: Option<[f64; 16]>,
    /// Cumulative `P(· | x)` per joint type.
    conditional: [[f64; 4]; 4],
}

fn cumulative<const N: usize>(p: impl IntoIterator<Item = f64>) -> [f64; N] {
    let mut out = [0.0; N];
    let mut acc = 0.0;
    for (o, v) in out.iter_mut().zip(p) {
        acc += v;
        *o = acc;
    }
    out
}

fn draw<const N: usize>(cum: &[f64; N], u: f64) -> usize {
    // last index absorbs rounding in the final partial sum
    cum.iter().position(|&c| u < c).unwrap_or(N - 1)
}

impl Sampler {
    pub fn new(source: &AdviceSource) -> Result<Self> {
        let corr = source.correlation()?;
        let recommendations = match source {
            AdviceSource::ClassicalCorrelated(s) => {
                Some(cumulative(s.matrix().iter().flatten().copied()))
            }
            _ => None,
        };
        let mut conditional = [[0.0; 4]; 4];
        for x in JointType::ALL {
            conditional[x.index()] = cumulative(corr.row(x).iter().copied());
        }
        Ok(Sampler {
            recommendations,
            conditional,
        })
    }

    pub fn advise(&self, rng: &mut Rng) -> RoundAdvice {
        match &self.recommendations {
            Some(cum) => {
                let k = draw(cum, next_unit(rng));
                RoundAdvice::Recommendation(PureProfile::new(
                    PureStrategy::ALL[k / 4],
                    PureStrategy::ALL[k % 4],
                ))
            }
            None => RoundAdvice::Shared,
        }
    }

    pub fn respond(&self, advice: RoundAdvice, x: JointType, rng: &mut Rng) -> JointAction {
        match advice {
            RoundAdvice::Recommendation(p) => {
                JointAction::new(p.alice.apply(x.alice), p.bob.apply(x.bob))
            }
            RoundAdvice::Shared => {
                JointAction::from_index(draw(&self.conditional[x.index()], next_unit(rng)))
            }
        }
    }

    /// One round's action for a given joint type, advice included.
    pub fn sample_action(&self, x: JointType, rng: &mut Rng) -> JointAction {
        let advice = self.advise(rng);
        self.respond(advice, x, rng)
    }
}

pub fn draw_type(rng: &mut Rng) -> JointType {
    JointType::from_index((rng.next_u64() >> 62) as usize)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub rounds: u64,
    pub seed: u64,
    pub empirical: PayoffPair,
    pub analytic: PayoffPair,
    pub abs_error: PayoffPair,
}

/// Per-cell counts of `(joint type, joint action)` over a run, indexed
/// `[x][y]`.
pub fn sample_counts(source: &AdviceSource, rounds: u64, seed: u64) -> Result<[[u64; 4]; 4]> {
    let sampler = Sampler::new(source)?;
    let mut rng = rng_from_seed(seed);
    let mut counts = [[0u64; 4]; 4];
    for _ in 0..rounds {
        let advice = sampler.advise(&mut rng);
        let x = draw_type(&mut rng);
        let y = sampler.respond(advice, x, &mut rng);
        counts[x.index()][y.index()] += 1;
    }
    Ok(counts)
}

pub fn run(
    game: &UtilityTable,
    source: &AdviceSource,
    rounds: u64,
    seed: u64,
) -> Result<RunReport> {
    if rounds == 0 {
        return Err(Error::invalid("rounds", "must be at least 1"));
    }
    let analytic = average_payoffs(game, &source.correlation()?);
    let counts = sample_counts(source, rounds, seed)?;
    let mut totals = [0.0; 2];
    for x in JointType::ALL {
        for y in JointAction::ALL {
            let n = counts[x.index()][y.index()] as f64;
            for (t, player) in totals.iter_mut().zip(Player::BOTH) {
                *t += n * game.utility(player, x, y);
            }
        }
    }
    let empirical = PayoffPair::new(totals[0] / rounds as f64, totals[1] / rounds as f64);
    Ok(RunReport {
        rounds,
        seed,
        empirical,
        analytic,
        abs_error: empirical.abs_diff(&analytic),
    })
}
