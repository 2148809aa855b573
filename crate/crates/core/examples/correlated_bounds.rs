//! Classical advice: per-player bounds from the pure table against the exact
//! correlated-equilibrium maxima from the LP.

use advice_games::correlated::{
    ce_constraints, classical_payoff_bounds, max_bob_recommendation, max_ce_payoff,
};
use advice_games::{build_game, Epsilon, Player, PureStrategy};

fn main() -> advice_games::Result<()> {
    println!(
        "{:>5} {:>9} {:>9} {:>9} {:>9} {:>9}",
        "ε", "bound_A", "bound_B", "CE_A", "CE_B", "max λ3"
    );
    for k in 0..=15 {
        let eps = Epsilon::new(k as f64 * 0.05)?;
        let game = build_game(eps);
        let b = classical_payoff_bounds(eps);
        let a = max_ce_payoff(&game, Player::Alice)?;
        let c = max_ce_payoff(&game, Player::Bob)?;
        let l3 = max_bob_recommendation(&game, PureStrategy::Identity)?;
        println!(
            "{:>5.2} {:>9.5} {:>9.5} {:>9.5} {:>9.5} {:>9.5}",
            eps.value(),
            b.alice_bound,
            b.bob_bound,
            a.value,
            c.value,
            l3.value
        );
    }

    let game = build_game(Epsilon::new(0.4)?);
    let best = max_ce_payoff(&game, Player::Alice)?;
    println!("Alice's best CE at ε = 0.4:");
    for row in best.witness.matrix() {
        println!("  {:?}", row.map(|v| (v * 1e6).round() / 1e6));
    }
    println!(
        "obedient: {}",
        ce_constraints(&game).is_satisfied(&best.witness, 1e-9)
    );
    Ok(())
}
