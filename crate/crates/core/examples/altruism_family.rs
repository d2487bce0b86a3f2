//! For a symmetric game, γ₁ interpolates each player's effective table
//! between selfish (`A`) and fully altruistic (`B`). Prints the family and the
//! classical equilibria of each member for the prisoner's dilemma.

use std::f64::consts::PI;

use qgame::equilibrium::classical_nash_2x2;
use qgame::payoff::{altruism_mixture, DiagonalGame, PayoffTable};

fn main() -> qgame::Result<()> {
    let game = DiagonalGame::symmetric(PayoffTable::from_rows(&[vec![3.0, 0.0], vec![5.0, 1.0]])?);
    for k in 0..=4 {
        let g1 = PI * k as f64 / 4.0;
        let (ea, eb) = altruism_mixture(&game, g1)?;
        let eq = classical_nash_2x2(&ea, &eb)?;
        let payoffs: Vec<(f64, f64)> = eq.equilibria.iter().map(|e| (e.payoff_a, e.payoff_b)).collect();
        println!("γ₁ = {g1:.3}  A_eff = {:?}  equilibria {payoffs:?}", ea.rows());
    }
    Ok(())
}
