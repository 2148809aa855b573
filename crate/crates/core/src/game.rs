//! The game family `G(ε)`, arbitrary two-type/two-action utility tables, and
//! the average-payoff functionals shared by every kind of advice.
//!
//! Types and actions are single bits. Tables are indexed `[x][y]` with
//! `x = 2·x_A + x_B` and `y = 2·y_A + y_B`; the joint type is drawn uniformly,
//! so every average payoff carries a `1/4` weight per joint type.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for normalization and no-signaling checks on correlations.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Upper end of the family's parameter range.
pub const EPSILON_MAX: f64 = 0.75;

/// The parameter of `G(ε)`, restricted to `[0, 3/4]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Epsilon(f64);

impl Epsilon {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && (0.0..=EPSILON_MAX).contains(&value) {
            Ok(Epsilon(value))
        } else {
            Err(Error::Domain {
                name: "epsilon",
                value,
                min: 0.0,
                max: EPSILON_MAX,
            })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `count` evenly spaced values on `[from, to]`, both endpoints exact.
    pub fn grid(from: f64, to: f64, count: usize) -> Result<Vec<Epsilon>> {
        let last = count.saturating_sub(1).max(1) as f64;
        (0..count)
            .map(|k| {
                let t = k as f64 / last;
                let v = if k + 1 == count {
                    to
                } else {
                    from + t * (to - from)
                };
                Epsilon::new(v)
            })
            .collect()
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Alice,
    Bob,
}

impl Player {
    pub const BOTH: [Player; 2] = [Player::Alice, Player::Bob];
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::Alice => f.write_str("Alice"),
            Player::Bob => f.write_str("Bob"),
        }
    }
}

/// A joint type `(x_A, x_B)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JointType {
    pub alice: bool,
    pub bob: bool,
}

/// A joint action `(y_A, y_B)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JointAction {
    pub alice: bool,
    pub bob: bool,
}

macro_rules! bit_pair {
    ($ty:ident) => {
        impl $ty {
            pub const ALL: [$ty; 4] = [
                $ty {
                    alice: false,
                    bob: false,
                },
                $ty {
                    alice: false,
                    bob: true,
                },
                $ty {
                    alice: true,
                    bob: false,
                },
                $ty {
                    alice: true,
                    bob: true,
                },
            ];

            pub fn new(alice: bool, bob: bool) -> Self {
                $ty { alice, bob }
            }

            pub fn index(self) -> usize {
                2 * usize::from(self.alice) + usize::from(self.bob)
            }

            /// Panics if `index >= 4`.
            pub fn from_index(index: usize) -> Self {
                assert!(index < 4, "bit-pair index {index} out of range");
                $ty::ALL[index]
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}{}", u8::from(self.alice), u8::from(self.bob))
            }
        }
    };
}

bit_pair!(JointType);
bit_pair!(JointAction);

/// A dense `[joint type][joint action]` table of reals.
pub type Table4 = [[f64; 4]; 4];

/// Utilities `u_A(x, y)` and `u_B(x, y)` for a two-player game with binary
/// types and actions.
#[derive(Debug, Clone, PartialEq)]
pub struct UtilityTable {
    alice: Table4,
    bob: Table4,
}

impl UtilityTable {
    pub fn new(alice: Table4, bob: Table4) -> Result<Self> {
        if alice
            .iter()
            .chain(bob.iter())
            .flatten()
            .any(|u| !u.is_finite())
        {
            return Err(Error::invalid(
                "utility table",
                "all utilities must be finite",
            ));
        }
        Ok(UtilityTable { alice, bob })
    }

    pub fn utility(&self, player: Player, x: JointType, y: JointAction) -> f64 {
        self.table(player)[x.index()][y.index()]
    }

    pub fn table(&self, player: Player) -> &Table4 {
        match player {
            Player::Alice => &self.alice,
            Player::Bob => &self.bob,
        }
    }

    /// The average payoff of `player` as a linear functional of a correlation.
    pub fn payoff_functional(&self, player: Player) -> LinearFunctional {
        let mut coeffs = *self.table(player);
        coeffs.iter_mut().flatten().for_each(|c| *c *= 0.25);
        LinearFunctional::new(coeffs)
    }
}

/// Builds the utility table of `G(ε)`.
///
/// When `x_A ∧ x_B = 0` both players want correlated actions, Alice
/// preferring `(0,0)` and Bob `(1,1)` (for ε < 1/2); when `x_A ∧ x_B = 1`
/// they want anticorrelated actions, Alice preferring `(0,1)` and Bob `(1,0)`.
pub fn build_game(eps: Epsilon) -> UtilityTable {
    let e = eps.value();
    let mut alice = [[0.0; 4]; 4];
    let mut bob = [[0.0; 4]; 4];
    for x in JointType::ALL {
        for y in JointAction::ALL {
            let (ua, ub) = match (x.alice && x.bob, y.alice, y.bob) {
                (false, false, false) => (1.0 - e, 0.5 + e),
                (false, true, true) => (0.5, 1.0),
                (true, false, true) => (0.75, 0.75),
                (true, true, false) => (0.75 - e, 0.75 + e),
                _ => (0.0, 0.0),
            };
            alice[x.index()][y.index()] = ua;
            bob[x.index()][y.index()] = ub;
        }
    }
    UtilityTable { alice, bob }
}

/// A conditional distribution `P(y_A, y_B | x_A, x_B)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Correlation {
    p: Table4,
}

impl Correlation {
    /// Validates nonnegativity and per-type normalization.
    pub fn new(p: Table4) -> Result<Self> {
        for x in JointType::ALL {
            let row = &p[x.index()];
            for (action, &value) in row.iter().enumerate() {
                if !value.is_finite() || value < -NORMALIZATION_TOL {
                    return Err(Error::NegativeProbability {
                        joint_type: x,
                        action,
                        value,
                    });
                }
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > NORMALIZATION_TOL {
                return Err(Error::NotNormalized { joint_type: x, sum });
            }
        }
        Ok(Correlation { p })
    }

    pub fn from_fn(f: impl Fn(JointType, JointAction) -> f64) -> Result<Self> {
        let mut p = [[0.0; 4]; 4];
        for x in JointType::ALL {
            for y in JointAction::ALL {
                p[x.index()][y.index()] = f(x, y);
            }
        }
        Correlation::new(p)
    }

    /// Independent uniform outputs.
    pub fn uniform() -> Self {
        Correlation { p: [[0.25; 4]; 4] }
    }

    /// The box answering `respond(x)` with certainty.
    pub fn deterministic(respond: impl Fn(JointType) -> JointAction) -> Self {
        let mut p = [[0.0; 4]; 4];
        for x in JointType::ALL {
            p[x.index()][respond(x).index()] = 1.0;
        }
        Correlation { p }
    }

    pub fn prob(&self, x: JointType, y: JointAction) -> f64 {
        self.p[x.index()][y.index()]
    }

    pub fn table(&self) -> &Table4 {
        &self.p
    }

    /// Conditional distribution over joint actions for one joint type.
    pub fn row(&self, x: JointType) -> &[f64; 4] {
        &self.p[x.index()]
    }

    /// `weight·self + (1 − weight)·other`.
    pub fn mix(&self, other: &Correlation, weight: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&weight) {
            return Err(Error::Domain {
                name: "mixing weight",
                value: weight,
                min: 0.0,
                max: 1.0,
            });
        }
        let mut p = [[0.0; 4]; 4];
        for (i, row) in p.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = weight * self.p[i][j] + (1.0 - weight) * other.p[i][j];
            }
        }
        Ok(Correlation { p })
    }

    /// Largest change of either player's output marginal when only the other
    /// player's type changes.
    pub fn signaling_violation(&self) -> f64 {
        let marginal = |x: JointType, player: Player, bit: bool| -> f64 {
            JointAction::ALL
                .iter()
                .filter(|y| match player {
                    Player::Alice => y.alice == bit,
                    Player::Bob => y.bob == bit,
                })
                .map(|&y| self.prob(x, y))
                .sum()
        };
        let mut worst: f64 = 0.0;
        for own in [false, true] {
            for bit in [false, true] {
                let a0 = marginal(JointType::new(own, false), Player::Alice, bit);
                let a1 = marginal(JointType::new(own, true), Player::Alice, bit);
                let b0 = marginal(JointType::new(false, own), Player::Bob, bit);
                let b1 = marginal(JointType::new(true, own), Player::Bob, bit);
                worst = worst.max((a0 - a1).abs()).max((b0 - b1).abs());
            }
        }
        worst
    }

    pub fn is_no_signaling(&self) -> bool {
        self.signaling_violation() <= NORMALIZATION_TOL
    }

    /// Correlator `⟨A_x B_x⟩` under the relabeling `0 ↦ −1`, `1 ↦ +1`.
    pub fn correlator(&self, x: JointType) -> f64 {
        let r = self.row(x);
        r[0] + r[3] - r[1] - r[2]
    }
}

/// A linear functional `Σ_{x,y} c(x,y)·P(y|x)` on correlations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFunctional {
    coeffs: Table4,
}

impl LinearFunctional {
    pub fn new(coeffs: Table4) -> Self {
        LinearFunctional { coeffs }
    }

    /// The CHSH combination `⟨A₀B₀⟩ + ⟨A₀B₁⟩ + ⟨A₁B₀⟩ − ⟨A₁B₁⟩`.
    pub fn chsh() -> Self {
        let mut coeffs = [[0.0; 4]; 4];
        for x in JointType::ALL {
            let sign = if x.alice && x.bob { -1.0 } else { 1.0 };
            for y in JointAction::ALL {
                let parity = if y.alice == y.bob { 1.0 } else { -1.0 };
                coeffs[x.index()][y.index()] = sign * parity;
            }
        }
        LinearFunctional { coeffs }
    }

    pub fn coeffs(&self) -> &Table4 {
        &self.coeffs
    }

    pub fn evaluate(&self, corr: &Correlation) -> f64 {
        self.coeffs
            .iter()
            .flatten()
            .zip(corr.table().iter().flatten())
            .map(|(c, p)| c * p)
            .sum()
    }
}

/// Average payoffs `(⟨u_A⟩, ⟨u_B⟩)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PayoffPair {
    pub alice: f64,
    pub bob: f64,
}

impl PayoffPair {
    pub fn new(alice: f64, bob: f64) -> Self {
        PayoffPair { alice, bob }
    }

    pub fn get(&self, player: Player) -> f64 {
        match player {
            Player::Alice => self.alice,
            Player::Bob => self.bob,
        }
    }

    pub fn sum(&self) -> f64 {
        self.alice + self.bob
    }

    pub fn abs_diff(&self, other: &PayoffPair) -> PayoffPair {
        PayoffPair::new(
            (self.alice - other.alice).abs(),
            (self.bob - other.bob).abs(),
        )
    }
}

/// Average payoffs under a uniform prior on joint types.
pub fn average_payoffs(game: &UtilityTable, corr: &Correlation) -> PayoffPair {
    PayoffPair::new(
        game.payoff_functional(Player::Alice).evaluate(corr),
        game.payoff_functional(Player::Bob).evaluate(corr),
    )
}

pub fn chsh_value(corr: &Correlation) -> f64 {
    LinearFunctional::chsh().evaluate(corr)
}

/// Payoff sum `⟨u_A⟩ + ⟨u_B⟩ = 3/16·(𝔹 + 4)` implied by a CHSH value `𝔹`.
pub fn payoff_sum_from_chsh(b: f64) -> Result<f64> {
    if !(-4.0..=4.0).contains(&b) {
        return Err(Error::Domain {
            name: "CHSH value",
            value: b,
            min: -4.0,
            max: 4.0,
        });
    }
    Ok(3.0 / 16.0 * (b + 4.0))
}

/// JSON interchange format for games with two binary types and actions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameFile {
    pub players: u32,
    pub types: [u32; 2],
    pub actions: [u32; 2],
    #[serde(rename = "u_A")]
    pub u_a: Table4,
    #[serde(rename = "u_B")]
    pub u_b: Table4,
}

impl From<&UtilityTable> for GameFile {
    fn from(game: &UtilityTable) -> Self {
        GameFile {
            players: 2,
            types: [2, 2],
            actions: [2, 2],
            u_a: game.alice,
            u_b: game.bob,
        }
    }
}

impl TryFrom<GameFile> for UtilityTable {
    type Error = Error;

    fn try_from(file: GameFile) -> Result<Self> {
        if file.players != 2 || file.types != [2, 2] || file.actions != [2, 2] {
            return Err(Error::invalid(
                "game file",
                "only two players with two types and two actions each are supported",
            ));
        }
        UtilityTable::new(file.u_a, file.u_b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn eps(v: f64) -> Epsilon {
        Epsilon::new(v).unwrap()
    }

    fn jt(a: u8, b: u8) -> JointType {
        JointType::new(a == 1, b == 1)
    }

    fn ja(a: u8, b: u8) -> JointAction {
        JointAction::new(a == 1, b == 1)
    }

    #[test]
    fn epsilon_domain() {
        assert!(Epsilon::new(0.0).is_ok());
        assert!(Epsilon::new(0.75).is_ok());
        let err = Epsilon::new(0.8).unwrap_err();
        assert!(err.to_string().contains("[0, 0.75]"), "{err}");
        assert!(Epsilon::new(-1e-9).is_err());
        assert!(Epsilon::new(f64::NAN).is_err());
    }

    #[test]
    fn epsilon_grid_hits_endpoints() {
        let g = Epsilon::grid(0.0, 0.75, 76).unwrap();
        assert_eq!(g.len(), 76);
        assert_eq!(g[75].value(), 0.75);
        assert!((g[40].value() - 0.4).abs() < 1e-15);
    }

    #[test]
    fn table1_entries() {
        let g = build_game(eps(0.0));
        assert_eq!(g.utility(Player::Alice, jt(0, 0), ja(0, 0)), 1.0);
        assert_eq!(g.utility(Player::Bob, jt(0, 0), ja(0, 0)), 0.5);
        assert_eq!(g.utility(Player::Alice, jt(1, 1), ja(0, 1)), 0.75);
        assert_eq!(g.utility(Player::Bob, jt(1, 1), ja(0, 1)), 0.75);

        let g = build_game(eps(0.75));
        assert_eq!(g.utility(Player::Alice, jt(1, 1), ja(1, 0)), 0.0);
        assert_eq!(g.utility(Player::Bob, jt(1, 1), ja(1, 0)), 1.5);
    }

    #[test]
    fn table1_at_symbolic_corners() {
        // rows: x_A∧x_B = 0 then 1; columns y = 00, 01, 10, 11
        for e in [0.0, 0.25, 0.5, 0.75] {
            let g = build_game(eps(e));
            let zero_a = [1.0 - e, 0.0, 0.0, 0.5];
            let zero_b = [0.5 + e, 0.0, 0.0, 1.0];
            let one_a = [0.0, 0.75, 0.75 - e, 0.0];
            let one_b = [0.0, 0.75, 0.75 + e, 0.0];
            for x in JointType::ALL {
                let (ea, eb) = if x.alice && x.bob {
                    (one_a, one_b)
                } else {
                    (zero_a, zero_b)
                };
                assert_eq!(g.table(Player::Alice)[x.index()], ea);
                assert_eq!(g.table(Player::Bob)[x.index()], eb);
            }
            assert!(g.table(Player::Alice).iter().flatten().all(|u| *u >= 0.0));
        }
    }

    #[test]
    fn normalization_error_names_joint_type() {
        let mut p = [[0.25; 4]; 4];
        p[2][0] = 0.5;
        match Correlation::new(p) {
            Err(Error::NotNormalized { joint_type, .. }) => assert_eq!(joint_type, jt(1, 0)),
            other => panic!("unexpected {other:?}"),
        }
        let mut p = [[0.25; 4]; 4];
        p[1] = [1.5, -0.5, 0.0, 0.0];
        assert!(matches!(
            Correlation::new(p),
            Err(Error::NegativeProbability { action: 1, .. })
        ));
    }

    #[test]
    fn average_payoff_examples() {
        let g = build_game(eps(0.0));
        let uni = average_payoffs(&g, &Correlation::uniform());
        assert!((uni.alice - 0.375).abs() < 1e-15);

        let zeros = Correlation::deterministic(|_| ja(0, 0));
        assert!((average_payoffs(&g, &zeros).alice - 0.75).abs() < 1e-15);
    }

    #[test]
    fn chsh_examples() {
        let zeros = Correlation::deterministic(|_| ja(0, 0));
        assert!((chsh_value(&zeros) - 2.0).abs() < 1e-15);
        assert_eq!(payoff_sum_from_chsh(2.0).unwrap(), 9.0 / 8.0);
        assert_eq!(payoff_sum_from_chsh(4.0).unwrap(), 1.5);
        let q = payoff_sum_from_chsh(2.0 * 2f64.sqrt()).unwrap();
        assert!((q - 0.75 * (1.0 + 0.5f64.sqrt())).abs() < 1e-15);
        assert!(payoff_sum_from_chsh(4.5).is_err());
    }

    #[test]
    fn game_file_round_trip() {
        let g = build_game(eps(0.3));
        let json = serde_json::to_string(&GameFile::from(&g)).unwrap();
        assert!(json.contains("\"u_A\""));
        let back: GameFile = serde_json::from_str(&json).unwrap();
        assert_eq!(UtilityTable::try_from(back).unwrap(), g);

        let mut bad = GameFile::from(&g);
        bad.actions = [3, 2];
        assert!(UtilityTable::try_from(bad).is_err());
    }

    fn correlation_strategy() -> impl Strategy<Value = Correlation> {
        proptest::collection::vec(0.0f64..1.0, 16).prop_map(|w| {
            let mut p = [[0.0; 4]; 4];
            for (i, row) in p.iter_mut().enumerate() {
                let chunk = &w[4 * i..4 * i + 4];
                let s: f64 = chunk.iter().sum::<f64>() + 1e-9;
                for (j, v) in row.iter_mut().enumerate() {
                    *v = (chunk[j] + 1e-9 / 4.0) / s;
                }
            }
            Correlation::new(p).unwrap()
        })
    }

    proptest! {
        #[test]
        fn payoffs_are_linear(c1 in correlation_strategy(), c2 in correlation_strategy(),
                              lambda in 0.0f64..=1.0, e in 0.0f64..=0.75) {
            let g = build_game(eps(e));
            let mixed = average_payoffs(&g, &c1.mix(&c2, lambda).unwrap());
            let p1 = average_payoffs(&g, &c1);
            let p2 = average_payoffs(&g, &c2);
            prop_assert!((mixed.alice - (lambda * p1.alice + (1.0 - lambda) * p2.alice)).abs() < 1e-12);
            prop_assert!((mixed.bob - (lambda * p1.bob + (1.0 - lambda) * p2.bob)).abs() < 1e-12);
        }

        #[test]
        fn payoff_sum_tracks_chsh(c in correlation_strategy(), k in 0usize..16) {
            let g = build_game(eps(k as f64 / 20.0));
            let sum = average_payoffs(&g, &c).sum();
            let b = chsh_value(&c);
            prop_assert!((sum - 3.0 / 16.0 * (b + 4.0)).abs() <= 1e-10);
        }

        #[test]
        fn payoffs_stay_in_unit_interval(c in correlation_strategy(), e in 0.0f64..=0.75) {
            let p = average_payoffs(&build_game(eps(e)), &c);
            prop_assert!((0.0..=1.0).contains(&p.alice) && (0.0..=1.0).contains(&p.bob));
        }
    }
}
