//! Support enumeration on a few textbook 2x2 games.

use qgame::equilibrium::classical_nash_2x2;
use qgame::payoff::PayoffTable;

fn main() -> qgame::Result<()> {
    let games = [
        ("prisoner's dilemma", [[3.0, 0.0], [5.0, 1.0]], [[3.0, 5.0], [0.0, 1.0]]),
        ("matching pennies", [[1.0, -1.0], [-1.0, 1.0]], [[-1.0, 1.0], [1.0, -1.0]]),
        ("battle of the sexes", [[2.0, 0.0], [0.0, 1.0]], [[1.0, 0.0], [0.0, 2.0]]),
    ];
    for (name, a, b) in games {
        let table = |m: [[f64; 2]; 2]| PayoffTable::from_rows(&[m[0].to_vec(), m[1].to_vec()]);
        let solution = classical_nash_2x2(&table(a)?, &table(b)?)?;
        println!("{name} (degenerate: {})", solution.degenerate);
        for e in solution.equilibria {
            println!("  x = {:?}, y = {:?}, payoffs ({:.4}, {:.4}) {:?}", e.x, e.y, e.payoff_a, e.payoff_b, e.kind);
        }
    }
    Ok(())
}
