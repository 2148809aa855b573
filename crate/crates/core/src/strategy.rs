//! Deterministic strategies, the 4×4 table of pure-profile payoffs, pure Nash
//! enumeration, and deviation certificates for given mixtures.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{
    average_payoffs, build_game, Correlation, Epsilon, JointAction, PayoffPair, Player,
    UtilityTable, NORMALIZATION_TOL,
};
use crate::nosignaling::VertexKind;
use crate::quantum::PovmParams;

/// A unilateral gain above this counts as a profitable deviation.
pub const GAIN_TOL: f64 = 1e-9;

/// A map from a player's own type bit to an action bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PureStrategy {
    /// `S1`: always 0.
    Const0,
    /// `S2`: always 1.
    Const1,
    /// `S3`: echo the type.
    Identity,
    /// `S4`: flip the type.
    Flip,
}

impl PureStrategy {
    pub const ALL: [PureStrategy; 4] = [
        PureStrategy::Const0,
        PureStrategy::Const1,
        PureStrategy::Identity,
        PureStrategy::Flip,
    ];

    pub fn apply(self, own_type: bool) -> bool {
        match self {
            PureStrategy::Const0 => false,
            PureStrategy::Const1 => true,
            PureStrategy::Identity => own_type,
            PureStrategy::Flip => !own_type,
        }
    }

    /// Zero-based position in [`PureStrategy::ALL`].
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Self> {
        PureStrategy::ALL.get(index).copied()
    }
}

impl fmt::Display for PureStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}", self.index() + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PureProfile {
    pub alice: PureStrategy,
    pub bob: PureStrategy,
}

impl PureProfile {
    pub fn new(alice: PureStrategy, bob: PureStrategy) -> Self {
        PureProfile { alice, bob }
    }

    /// All 16 profiles, Alice-major.
    pub fn all() -> impl Iterator<Item = PureProfile> {
        PureStrategy::ALL.into_iter().flat_map(|a| {
            PureStrategy::ALL
                .into_iter()
                .map(move |b| PureProfile::new(a, b))
        })
    }
}

impl fmt::Display for PureProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.alice, self.bob)
    }
}

/// The deviation that witnesses a profitable unilateral change.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Deviation {
    Pure { strategy: PureStrategy },
    NoSignaling { vertex: VertexKind },
    Povm { params: PovmParams },
}

/// Equilibrium certificate: the best unilateral gain of each player.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumReport {
    pub is_equilibrium: bool,
    pub alice_gain: f64,
    pub bob_gain: f64,
    pub best_alice_deviation: Option<Deviation>,
    pub best_bob_deviation: Option<Deviation>,
}

impl EquilibriumReport {
    /// Builds a report from raw gains; negative gains are clamped to zero and
    /// deviations are kept only when they are profitable.
    pub fn from_gains(alice: (f64, Option<Deviation>), bob: (f64, Option<Deviation>)) -> Self {
        let alice_gain = alice.0.max(0.0);
        let bob_gain = bob.0.max(0.0);
        EquilibriumReport {
            is_equilibrium: alice_gain.max(bob_gain) <= GAIN_TOL,
            alice_gain,
            bob_gain,
            best_alice_deviation: alice.1.filter(|_| alice_gain > GAIN_TOL),
            best_bob_deviation: bob.1.filter(|_| bob_gain > GAIN_TOL),
        }
    }

    pub fn gain(&self, player: Player) -> f64 {
        match player {
            Player::Alice => self.alice_gain,
            Player::Bob => self.bob_gain,
        }
    }
}

/// The deterministic box induced by both players following pure strategies.
pub fn profile_to_correlation(profile: PureProfile) -> Correlation {
    Correlation::deterministic(|x| {
        JointAction::new(profile.alice.apply(x.alice), profile.bob.apply(x.bob))
    })
}

/// `matrix[i][j]` holds the average payoffs of the profile `(S_i, S_j)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PayoffMatrix(pub [[PayoffPair; 4]; 4]);

impl PayoffMatrix {
    pub fn of_game(game: &UtilityTable) -> Self {
        let mut m = [[PayoffPair::new(0.0, 0.0); 4]; 4];
        for p in PureProfile::all() {
            m[p.alice.index()][p.bob.index()] = average_payoffs(game, &profile_to_correlation(p));
        }
        PayoffMatrix(m)
    }

    pub fn get(&self, profile: PureProfile) -> PayoffPair {
        self.0[profile.alice.index()][profile.bob.index()]
    }

    /// Payoff of `player` when Alice plays row `i` and Bob column `j`.
    pub fn payoff(&self, player: Player, i: usize, j: usize) -> f64 {
        self.0[i][j].get(player)
    }

    /// Largest entry for `player` over all 16 profiles.
    pub fn max_payoff(&self, player: Player) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|p| p.get(player))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Profiles where neither player gains more than [`GAIN_TOL`] by a pure
    /// unilateral deviation.
    pub fn pure_nash(&self) -> Vec<PureProfile> {
        PureProfile::all()
            .filter(|p| {
                let (i, j) = (p.alice.index(), p.bob.index());
                let alice_best = (0..4).map(|k| self.0[k][j].alice).fold(f64::MIN, f64::max);
                let bob_best = (0..4).map(|k| self.0[i][k].bob).fold(f64::MIN, f64::max);
                alice_best - self.0[i][j].alice <= GAIN_TOL
                    && bob_best - self.0[i][j].bob <= GAIN_TOL
            })
            .collect()
    }
}

pub fn pure_payoff_table(eps: Epsilon) -> PayoffMatrix {
    PayoffMatrix::of_game(&build_game(eps))
}

/// Pure Nash equilibria of `G(ε)`. At the breakpoints 1/4 and 1/2 ties make
/// both adjacent sets equilibria, so their union is returned.
pub fn enumerate_pure_nash(eps: Epsilon) -> Vec<PureProfile> {
    pure_payoff_table(eps).pure_nash()
}

/// A probability distribution over the four pure strategies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixedStrategy([f64; 4]);

impl MixedStrategy {
    pub fn new(weights: [f64; 4]) -> Result<Self> {
        if weights
            .iter()
            .any(|w| !w.is_finite() || *w < -NORMALIZATION_TOL)
        {
            return Err(Error::invalid(
                "mixed strategy",
                format!("negative weight in {weights:?}"),
            ));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::invalid(
                "mixed strategy",
                format!("weights sum to {sum}"),
            ));
        }
        Ok(MixedStrategy(weights))
    }

    pub fn pure(s: PureStrategy) -> Self {
        let mut w = [0.0; 4];
        w[s.index()] = 1.0;
        MixedStrategy(w)
    }

    pub fn uniform() -> Self {
        MixedStrategy([0.25; 4])
    }

    pub fn weight(&self, s: PureStrategy) -> f64 {
        self.0[s.index()]
    }
}

/// Certifies a pair of independent mixtures. The best response to a fixed
/// mixture is always attained at a pure strategy, so four comparisons per
/// player suffice.
pub fn check_profile_nash(
    game: &UtilityTable,
    alice_mix: &MixedStrategy,
    bob_mix: &MixedStrategy,
) -> EquilibriumReport {
    let m = PayoffMatrix::of_game(game);
    let alice_vs = |i: usize| -> f64 { (0..4).map(|j| bob_mix.0[j] * m.0[i][j].alice).sum() };
    let bob_vs = |j: usize| -> f64 { (0..4).map(|i| alice_mix.0[i] * m.0[i][j].bob).sum() };
    let current_alice: f64 = (0..4).map(|i| alice_mix.0[i] * alice_vs(i)).sum();
    let current_bob: f64 = (0..4).map(|j| bob_mix.0[j] * bob_vs(j)).sum();

    let best = |f: &dyn Fn(usize) -> f64| -> (usize, f64) {
        (0..4).map(|k| (k, f(k))).fold(
            (0, f64::NEG_INFINITY),
            |acc, c| if c.1 > acc.1 { c } else { acc },
        )
    };
    let (ai, av) = best(&alice_vs);
    let (bj, bv) = best(&bob_vs);
    EquilibriumReport::from_gains(
        (
            av - current_alice,
            Some(Deviation::Pure {
                strategy: PureStrategy::ALL[ai],
            }),
        ),
        (
            bv - current_bob,
            Some(Deviation::Pure {
                strategy: PureStrategy::ALL[bj],
            }),
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::JointType;
    use PureStrategy::*;

    fn eps(v: f64) -> Epsilon {
        Epsilon::new(v).unwrap()
    }

    fn set(v: &[(usize, usize)]) -> Vec<PureProfile> {
        let mut out: Vec<_> = v
            .iter()
            .map(|&(a, b)| PureProfile::new(PureStrategy::ALL[a - 1], PureStrategy::ALL[b - 1]))
            .collect();
        out.sort();
        out
    }

    fn sorted(mut v: Vec<PureProfile>) -> Vec<PureProfile> {
        v.sort();
        v
    }

    #[test]
    fn induced_boxes() {
        let c = profile_to_correlation(PureProfile::new(Const0, Identity));
        for x in JointType::ALL {
            assert_eq!(c.prob(x, JointAction::new(false, x.bob)), 1.0);
        }
        let c = profile_to_correlation(PureProfile::new(Flip, Const1));
        for x in JointType::ALL {
            assert_eq!(c.prob(x, JointAction::new(!x.alice, true)), 1.0);
        }
        let c = profile_to_correlation(PureProfile::new(Identity, Flip));
        for x in JointType::ALL {
            for y in JointAction::ALL {
                let p = c.prob(x, y);
                if p > 0.0 {
                    assert_eq!(y.alice ^ y.bob, x.alice ^ x.bob ^ true);
                }
            }
        }
        for p in PureProfile::all() {
            assert!(profile_to_correlation(p).is_no_signaling());
        }
    }

    #[test]
    fn payoff_table_entries() {
        let t = pure_payoff_table(eps(0.0));
        let p = t.get(PureProfile::new(Const0, Identity));
        assert!((p.alice - 11.0 / 16.0).abs() < 1e-15 && (p.bob - 7.0 / 16.0).abs() < 1e-15);

        let p = pure_payoff_table(eps(0.5)).get(PureProfile::new(Const1, Flip));
        assert!((p.alice - 5.0 / 16.0).abs() < 1e-15 && (p.bob - 13.0 / 16.0).abs() < 1e-15);

        for e in [0.0, 0.3, 0.75] {
            let p = pure_payoff_table(eps(e)).get(PureProfile::new(Const1, Const1));
            assert_eq!((p.alice, p.bob), (0.375, 0.75));
        }
    }

    #[test]
    fn nash_sets_per_regime() {
        assert_eq!(
            sorted(enumerate_pure_nash(eps(0.1))),
            set(&[(1, 3), (3, 4), (4, 2)])
        );
        assert_eq!(
            sorted(enumerate_pure_nash(eps(0.4))),
            set(&[(1, 1), (3, 4), (4, 2)])
        );
        assert_eq!(
            sorted(enumerate_pure_nash(eps(0.7))),
            set(&[(1, 1), (2, 4), (4, 3)])
        );
    }

    #[test]
    fn nash_sets_union_at_breakpoints() {
        assert_eq!(
            sorted(enumerate_pure_nash(eps(0.25))),
            set(&[(1, 1), (1, 3), (3, 4), (4, 2)])
        );
        assert_eq!(
            sorted(enumerate_pure_nash(eps(0.5))),
            set(&[(1, 1), (2, 4), (3, 4), (4, 2), (4, 3)])
        );
    }

    #[test]
    fn nash_sets_only_change_at_breakpoints() {
        let mut prev = sorted(enumerate_pure_nash(eps(0.0)));
        for k in 1..=750 {
            let e = k as f64 / 1000.0;
            let cur = sorted(enumerate_pure_nash(eps(e)));
            if cur != prev {
                // entering or leaving a breakpoint
                let near = [0.25, 0.5].iter().any(|b| (e - b).abs() < 1.5e-3);
                assert!(near, "equilibrium set changed at eps = {e}");
            }
            prev = cur;
        }
    }

    #[test]
    fn players_prefer_different_equilibria() {
        for k in 0..=75 {
            let t = pure_payoff_table(eps(k as f64 / 100.0));
            let nash = t.pure_nash();
            let argmax = |pl: Player| {
                *nash
                    .iter()
                    .max_by(|a, b| t.get(**a).get(pl).total_cmp(&t.get(**b).get(pl)))
                    .unwrap()
            };
            let (a, b) = (argmax(Player::Alice), argmax(Player::Bob));
            assert_ne!(a, b, "eps = {}", k as f64 / 100.0);
            assert!(t.get(a).alice > t.get(b).alice && t.get(b).bob > t.get(a).bob);
        }
    }

    #[test]
    fn mixed_certification() {
        let g = build_game(eps(0.1));
        let r = check_profile_nash(
            &g,
            &MixedStrategy::pure(Const0),
            &MixedStrategy::pure(Identity),
        );
        assert!(r.is_equilibrium);
        assert_eq!((r.alice_gain, r.bob_gain), (0.0, 0.0));
        assert!(r.best_alice_deviation.is_none());

        let r = check_profile_nash(
            &g,
            &MixedStrategy::pure(Const0),
            &MixedStrategy::pure(Const0),
        );
        assert!(!r.is_equilibrium);
        assert!((r.bob_gain - 0.0375).abs() < 1e-12);
        assert_eq!(r.alice_gain, 0.0);
        assert_eq!(
            r.best_bob_deviation,
            Some(Deviation::Pure { strategy: Identity })
        );

        let r = check_profile_nash(&g, &MixedStrategy::uniform(), &MixedStrategy::uniform());
        assert!(r.alice_gain >= 0.0 && r.bob_gain >= 0.0);
        assert_eq!(r.is_equilibrium, r.alice_gain.max(r.bob_gain) <= GAIN_TOL);
    }

    #[test]
    fn mixture_validation() {
        assert!(MixedStrategy::new([0.5, 0.5, 0.1, 0.0]).is_err());
        assert!(MixedStrategy::new([1.5, -0.5, 0.0, 0.0]).is_err());
        assert!(MixedStrategy::new([0.25; 4]).is_ok());
    }
}
