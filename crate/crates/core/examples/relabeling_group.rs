//! The swap, convert and twist relabelings of a two-strategy game and the
//! group table they form.

use qgame::correlation::{convert_op, swap_op, twist_op};
use qgame::linalg::ComplexMatrix;
use qgame::payoff::PayoffTable;

fn main() -> qgame::Result<()> {
    let (s, c, t) = (swap_op(2)?, convert_op(2)?, twist_op(2)?);
    let id = ComplexMatrix::identity(4);
    let ops = [("I", &id), ("S", &s), ("C", &c), ("T", &t)];

    println!("     I  S  C  T");
    for (row, x) in ops {
        let names: Vec<&str> = ops
            .iter()
            .map(|(_, y)| {
                let p = x.matmul(y).expect("4x4");
                ops.iter().find(|(_, z)| p.is_exactly(z)).map(|(n, _)| *n).unwrap_or("?")
            })
            .collect();
        println!("{row}    {}", names.join("  "));
    }

    let s_plus_t_minus_c = s.add(&t)?.sub(&c)?;
    println!("S + T - C == I: {}", s_plus_t_minus_c.is_exactly(&id));

    let pd = PayoffTable::from_rows(&[vec![3.0, 0.0], vec![5.0, 1.0]])?;
    println!("A   = {:?}", pd.rows());
    println!("SAS = {:?}", pd.swapped().rows());
    println!("CAC = {:?}", pd.converted().rows());
    println!("TAT = {:?}", pd.twisted().rows());
    Ok(())
}
