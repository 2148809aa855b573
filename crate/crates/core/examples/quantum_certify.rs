//! Entangled advice: Q* payoffs, best responses found in closed form and by
//! search, and the ε window where Q* beats the tightened classical bounds.

use advice_games::quantum::{best_response_max, certify_q_star, q_star_payoffs, theorem2_window};
use advice_games::{Epsilon, Player};

fn main() -> advice_games::Result<()> {
    for e in [0.0, 0.3, 0.4, 0.6] {
        let eps = Epsilon::new(e)?;
        let q = q_star_payoffs(eps)?;
        println!("ε = {e}: Q* ({:.6}, {:.6})", q.alice, q.bob);
        for player in Player::BOTH {
            let br = best_response_max(player, eps)?;
            println!(
                "  {player}: closed form {:.9}, search {:.9}",
                br.analytic, br.numeric
            );
        }
        println!("  equilibrium: {}", certify_q_star(eps)?.is_equilibrium);
    }

    let w = theorem2_window();
    println!(
        "window ({:.6}, {:.6}), verified: {}",
        w.c1,
        w.c2,
        w.verify()?
    );
    for c in w.checks(1e-3)? {
        println!(
            "  ε = {:.6}: Q* ({:.6}, {:.6}) vs bounds ({:.6}, {:.6}) beats {}",
            c.epsilon, c.q_star.alice, c.q_star.bob, c.bounds.alice, c.bounds.bob, c.beats
        );
    }
    Ok(())
}
