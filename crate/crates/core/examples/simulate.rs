//! Monte Carlo play with each kind of advice against the analytic payoffs.

use advice_games::correlated::CorrelatedStrategy;
use advice_games::simulate::{run, AdviceSource};
use advice_games::{build_game, enumerate_pure_nash, Epsilon};

fn main() -> advice_games::Result<()> {
    let eps = Epsilon::new(0.4)?;
    let game = build_game(eps);
    let sources = [
        (
            "classical",
            AdviceSource::ClassicalCorrelated(CorrelatedStrategy::point_mass(
                enumerate_pure_nash(eps)[0],
            )),
        ),
        ("PR*", AdviceSource::PrBox),
        ("Q*", AdviceSource::q_star()),
    ];
    for (name, source) in &sources {
        let r = run(&game, source, 1_000_000, 7)?;
        println!(
            "{name:<10} empirical ({:.5}, {:.5})  analytic ({:.5}, {:.5})  error ({:.1e}, {:.1e})",
            r.empirical.alice,
            r.empirical.bob,
            r.analytic.alice,
            r.analytic.bob,
            r.abs_error.alice,
            r.abs_error.bob
        );
    }
    Ok(())
}
