//! Splits the correlated payoff operator `J†AJ` into its pseudo-classical
//! and interference parts and evaluates a payoff both ways.

use qgame::correlation::CoordinatorParams;
use qgame::payoff::{correlated_op, in_op, payoff, payoff_analytic, pc_coefficients, pc_op, PayoffTable, StrategyParams};

fn main() -> qgame::Result<()> {
    let a = PayoffTable::from_rows(&[vec![3.0, 0.0], vec![5.0, 1.0]])?;
    let gamma = CoordinatorParams::new(0.9, 0.4)?;

    let full = correlated_op(&a.to_operator(), &gamma)?;
    let split = pc_op(&a, &gamma)?.add(&in_op(&a, &gamma)?)?;
    println!("coefficients of A, SAS, CAC: {:?}", pc_coefficients(&gamma));
    println!("pc diagonal: {:?}", pc_op(&a, &gamma)?.diag().iter().map(|z| z.re).collect::<Vec<_>>());
    println!("max |J†AJ - (pc + in)| = {:e}", full.max_abs_diff(&split));

    let alpha = StrategyParams::from_angle(0.6, 1.1);
    let beta = StrategyParams::from_angle(1.0, -0.3);
    let by_matrix = payoff(&a, &alpha, &beta, &gamma)?;
    let by_formula = payoff_analytic(&a, &alpha, &beta, &gamma)?;
    println!("matrix path:  {by_matrix:?}");
    println!("closed form:  {by_formula:?}");
    Ok(())
}
