//! Builds G(ε), prints its utilities and the pure-profile payoff matrix, and
//! checks the payoff-sum identity on a few boxes.

use advice_games::nosignaling::pr_star;
use advice_games::{
    average_payoffs, build_game, chsh_value, pure_payoff_table, Correlation, Epsilon, GameFile,
};

fn main() -> advice_games::Result<()> {
    let eps = Epsilon::new(0.2)?;
    let game = build_game(eps);
    println!("{}", serde_json::to_string(&GameFile::from(&game)).unwrap());

    let m = pure_payoff_table(eps);
    for (i, row) in m.0.iter().enumerate() {
        let cells: Vec<String> = row
            .iter()
            .map(|p| format!("({:.4}, {:.4})", p.alice, p.bob))
            .collect();
        println!("S{}  {}", i + 1, cells.join("  "));
    }

    for (name, corr) in [("uniform", Correlation::uniform()), ("PR*", pr_star())] {
        let p = average_payoffs(&game, &corr);
        let b = chsh_value(&corr);
        println!(
            "{name}: payoffs ({:.4}, {:.4}), CHSH {b:.4}, 3/16(B+4) = {:.4}",
            p.alice,
            p.bob,
            3.0 / 16.0 * (b + 4.0)
        );
    }
    Ok(())
}
