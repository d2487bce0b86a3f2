//! The spin-correlation coordination game: numeric equilibria against the
//! closed form, and the random-sampling ceilings.

use std::f64::consts::FRAC_PI_2;

use qgame::bell::{bell_nash_search, sample_ceilings};
use qgame::correlation::SchmidtParams;
use qgame::equilibrium::SearchConfig;

fn main() -> qgame::Result<()> {
    let cfg = SearchConfig::default();
    for (e1, e2) in [(0.0, 0.0), (FRAC_PI_2, 0.0), (1.0, 2.5), (FRAC_PI_2, FRAC_PI_2)] {
        let r = bell_nash_search(&SchmidtParams::new(e1, e2)?, &cfg)?;
        println!(
            "η = ({e1:.3}, {e2:.3})  numeric {:.9}  closed form {:.9}  best equilibrium {:.9}  flat in θ: {}",
            r.numeric, r.analytic, r.common_optimum, r.theta_flat_verified
        );
    }
    let c = sample_ceilings(100_000, 1);
    println!("max over random states {:.6} (≤ 2√2), unentangled {:.6} (≤ √2)", c.max_entangled, c.max_unentangled);
    Ok(())
}
