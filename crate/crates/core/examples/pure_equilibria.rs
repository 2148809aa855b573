//! Pure Nash equilibria across the three ranges of ε, and a mixed-profile
//! check.

use advice_games::strategy::check_profile_nash;
use advice_games::{build_game, enumerate_pure_nash, Epsilon, MixedStrategy, PureStrategy};

fn main() -> advice_games::Result<()> {
    for e in [0.1, 0.25, 0.4, 0.5, 0.7] {
        let set: Vec<String> = enumerate_pure_nash(Epsilon::new(e)?)
            .iter()
            .map(|p| p.to_string())
            .collect();
        println!("ε = {e}: {}", set.join(" "));
    }

    let game = build_game(Epsilon::new(0.1)?);
    let alice = MixedStrategy::new([0.5, 0.0, 0.0, 0.5])?;
    let bob = MixedStrategy::pure(PureStrategy::Flip);
    let report = check_profile_nash(&game, &alice, &bob);
    println!(
        "½S1+½S4 vs S4: equilibrium {}, gains ({:.4}, {:.4})",
        report.is_equilibrium, report.alice_gain, report.bob_gain
    );
    Ok(())
}
