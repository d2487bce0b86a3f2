//! Nash search for the prisoner's dilemma at several coordinator settings,
//! with the certificate of the returned profile.

use std::f64::consts::FRAC_PI_2;

use qgame::correlation::CoordinatorParams;
use qgame::equilibrium::{diagonal_nash_search, verify_nash, DiagonalQuantumGame, SearchConfig, GRADIENT_STEP};
use qgame::payoff::{DiagonalGame, PayoffTable};

fn main() -> qgame::Result<()> {
    let game = DiagonalGame::symmetric(PayoffTable::from_rows(&[vec![3.0, 0.0], vec![5.0, 1.0]])?);
    let cfg = SearchConfig::default();
    for (g1, g2) in [(0.0, 0.0), (FRAC_PI_2, 0.0), (0.7, 0.0), (0.7, 1.2)] {
        let gamma = CoordinatorParams::new(g1, g2)?;
        let r = diagonal_nash_search(&game, &gamma, &cfg)?;
        let check = verify_nash(&DiagonalQuantumGame::new(&game, &gamma)?, r.a_point, r.b_point, &cfg, GRADIENT_STEP);
        println!(
            "γ = ({g1:.2}, {g2:.2})  payoffs ({:.6}, {:.6})  residual {:.1e}  agreeing {}/{}  certified {:?}",
            r.payoff_a, r.payoff_b, check.residual, r.restarts_agreeing, cfg.restarts, r.observed_equilibria
        );
    }
    Ok(())
}
