//! No-signaling advice: the 24 vertices, PR* payoffs, and where PR* stops
//! being an equilibrium.

use advice_games::nosignaling::{maximize_over_ns, ns_vertices, pr_star_payoffs, verify_pr_nash};
use advice_games::{chsh_value, Epsilon, LinearFunctional};

fn main() -> advice_games::Result<()> {
    for v in ns_vertices() {
        println!(
            "{:>2} {:<18} CHSH {:+.0}",
            v.kind.index(),
            v.kind.to_string(),
            chsh_value(&v.correlation)
        );
    }
    let best = maximize_over_ns(&LinearFunctional::chsh());
    println!(
        "CHSH maximum {} at {} vertices",
        best.value,
        best.argmax.len()
    );

    for e in [0.0, 0.3, 0.625, 0.65, 0.75] {
        let eps = Epsilon::new(e)?;
        let p = pr_star_payoffs(eps)?;
        let r = verify_pr_nash(eps)?;
        println!(
            "ε = {e}: PR* ({:.4}, {:.4}) equilibrium {} (Alice gain {:.4})",
            p.alice, p.bob, r.is_equilibrium, r.alice_gain
        );
    }
    Ok(())
}
