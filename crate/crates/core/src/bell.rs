//! The spin-correlation coordination game.
//!
//! Both players are paid `⟨Ψ| √2(σ_x⊗σ_x + σ_z⊗σ_z) |Ψ⟩` in the state
//! `|Ψ⟩ = U(a) ⊗ U(b) |Φ(η)⟩`, where each player controls one SU(2)
//! rotation and the coordinator fixes the entanglement `η` of `|Φ(η)⟩`.
//! The operator's spectrum is `{±2√2, 0, 0}`, so no state beats the
//! Tsirelson value `2√2`.

use std::f64::consts::{PI, SQRT_2, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::correlation::{schmidt_joint_state, SchmidtParams, Su2Params};
use crate::equilibrium::{nash_search, verify_nash, Chart, ChartPoint, ChartedGame, SearchConfig, GRADIENT_STEP};
use crate::error::Result;
use crate::linalg::{expectation, pauli, tensor_mat, ComplexMatrix};

/// Payoff variation across the θ sweep below which the equal-θ family counts as flat.
pub const THETA_FLAT_TOL: f64 = 1e-9;
/// Number of θ values in the flatness sweep.
pub const THETA_SWEEP_POINTS: usize = 64;

/// `√2 (σ_x ⊗ σ_x + σ_z ⊗ σ_z)`.
pub fn bell_operator() -> ComplexMatrix {
    tensor_mat(&pauli::x(), &pauli::x())
        .add(&tensor_mat(&pauli::z(), &pauli::z()))
        .expect("4x4")
        .scale_real(SQRT_2)
}

/// Common payoff through the operator path.
pub fn bell_payoff(a: &Su2Params, b: &Su2Params, eta: &SchmidtParams) -> f64 {
    expectation(&schmidt_joint_state(a, b, eta), &bell_operator()).expect("Hermitian operator, unit state")
}

/// The same payoff from explicit amplitudes; used inside the search loops.
fn bell_payoff_fast(a: ChartPoint, b: ChartPoint, eta: &SchmidtParams) -> f64 {
    let rot = |p: ChartPoint| {
        let (s, c) = (p.u / 2.0).sin_cos();
        let e = Complex64::from_polar(1.0, p.v);
        // columns U|0⟩ and U|1⟩
        [[Complex64::new(c, 0.0), e * s], [-e.conj() * s, Complex64::new(c, 0.0)]]
    };
    let (ua, ub) = (rot(a), rot(b));
    let (s, c) = (eta.eta1() / 2.0).sin_cos();
    let w0 = Complex64::new(c, 0.0);
    let w1 = Complex64::from_polar(s, eta.eta2());
    let mut psi = [Complex64::new(0.0, 0.0); 4];
    for i in 0..2 {
        for j in 0..2 {
            psi[2 * i + j] = w0 * ua[0][i] * ub[0][j] + w1 * ua[1][i] * ub[1][j];
        }
    }
    let xx = 2.0 * (psi[0].conj() * psi[3] + psi[1].conj() * psi[2]).re;
    let zz = psi[0].norm_sqr() - psi[1].norm_sqr() - psi[2].norm_sqr() + psi[3].norm_sqr();
    SQRT_2 * (xx + zz)
}

/// Closed-form Nash payoff of the equal-θ, zero-φ profile:
/// `√2 (1 + sin η₁ cos η₂)`.
pub fn bell_nash_payoff(eta: &SchmidtParams) -> f64 {
    SQRT_2 * (1.0 + eta.eta1().sin() * eta.eta2().cos())
}

/// Largest common payoff reachable by local rotations, `√2 (1 + sin η₁)`.
///
/// The payoff is `√2 Σ_{k∈{x,z}} (R_a k)ᵀ 𝒯 (R_b k)` with `𝒯` the correlation
/// matrix of `|Φ(η)⟩`, whose singular values are `1, sin η₁, sin η₁`; the
/// bound is the sum of the two largest. In a common-interest game this is
/// also the payoff of the best Nash equilibrium.
pub fn bell_common_optimum(eta: &SchmidtParams) -> f64 {
    SQRT_2 * (1.0 + eta.eta1().sin())
}

/// The game at fixed entanglement, charted by `(θ, φ)` per player.
#[derive(Debug, Clone, Copy)]
pub struct BellGame {
    eta: SchmidtParams,
}

impl BellGame {
    pub fn new(eta: SchmidtParams) -> Self {
        Self { eta }
    }

    pub fn eta(&self) -> SchmidtParams {
        self.eta
    }

    pub fn operator(&self) -> ComplexMatrix {
        bell_operator()
    }
}

impl ChartedGame for BellGame {
    type Strategy = Su2Params;

    fn chart(&self) -> Chart {
        Chart { u_min: 0.0, u_max: PI, names: ["theta", "phi"] }
    }

    fn payoffs(&self, a: ChartPoint, b: ChartPoint) -> (f64, f64) {
        let p = bell_payoff_fast(a, b, &self.eta);
        (p, p)
    }

    fn strategy(&self, p: ChartPoint) -> Su2Params {
        Su2Params::new(p.u, p.v)
    }
}

/// Spread of `bell_payoff((θ,0), (θ,0), η)` over an even θ sweep of `[0, 2π)`.
pub fn theta_variation(eta: &SchmidtParams) -> f64 {
    let values: Vec<f64> = (0..THETA_SWEEP_POINTS)
        .map(|k| {
            let p = Su2Params::new(TAU * k as f64 / THETA_SWEEP_POINTS as f64, 0.0);
            bell_payoff(&p, &p, eta)
        })
        .collect();
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    max - min
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BellNashReport {
    pub eta: SchmidtParams,
    /// `√2 (1 + sin η₁ cos η₂)`.
    pub analytic: f64,
    /// Common payoff at the equilibrium returned by the search.
    pub numeric: f64,
    /// `|analytic − numeric|`.
    pub gap: f64,
    pub theta_flat_verified: bool,
    pub a_star: Su2Params,
    pub b_star: Su2Params,
    pub residual: f64,
    pub converged: bool,
    pub flat_directions: Vec<String>,
    /// Nash residual of the equal-θ, zero-φ profile itself (θ = 0).
    pub closed_form_profile_residual: f64,
    /// Distinct certified equilibrium payoffs seen across restarts.
    pub observed_payoffs: Vec<f64>,
    /// `√2 (1 + sin η₁)`, the payoff-dominant equilibrium value.
    pub common_optimum: f64,
}

/// Runs the alternating best-response search on the common payoff and
/// compares it with [`bell_nash_payoff`].
pub fn bell_nash_search(eta: &SchmidtParams, cfg: &SearchConfig) -> Result<BellNashReport> {
    let game = BellGame::new(*eta);
    let result = nash_search(&game, cfg)?;
    let analytic = bell_nash_payoff(eta);
    let origin = ChartPoint::new(0.0, 0.0);
    let profile = verify_nash(&game, origin, origin, cfg, GRADIENT_STEP);
    Ok(BellNashReport {
        eta: *eta,
        analytic,
        numeric: result.payoff_a,
        gap: (analytic - result.payoff_a).abs(),
        theta_flat_verified: theta_variation(eta) < THETA_FLAT_TOL,
        a_star: result.a_star,
        b_star: result.b_star,
        residual: result.residual,
        converged: result.converged,
        flat_directions: result.flat_directions,
        closed_form_profile_residual: profile.residual,
        observed_payoffs: result.observed_equilibria.iter().map(|p| p.0).collect(),
        common_optimum: bell_common_optimum(eta),
    })
}

/// Largest payoffs seen over random strategy pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CeilingCheck {
    pub samples: usize,
    /// Over random `η` as well; bounded by `2√2`.
    pub max_entangled: f64,
    /// At `η₁ = 0`; bounded by `√2`.
    pub max_unentangled: f64,
}

impl CeilingCheck {
    pub fn holds(&self) -> bool {
        self.max_entangled <= 2.0 * SQRT_2 + 1e-9 && self.max_unentangled <= SQRT_2 + 1e-9
    }
}

/// Samples `samples` uniform strategy pairs (and entanglement parameters)
/// from a seeded stream and records the largest common payoffs.
pub fn sample_ceilings(samples: usize, seed: u64) -> CeilingCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| ChartPoint::new(rng.gen_range(0.0..TAU), rng.gen_range(-PI..PI));
    let (mut max_entangled, mut max_unentangled) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for _ in 0..samples {
        let (a, b) = (draw(&mut rng), draw(&mut rng));
        let e = SchmidtParams::new(rng.gen_range(0.0..=PI), rng.gen_range(-PI..PI)).expect("in range");
        let plain = SchmidtParams::new(0.0, rng.gen_range(-PI..PI)).expect("in range");
        max_entangled = max_entangled.max(bell_payoff_fast(a, b, &e));
        max_unentangled = max_unentangled.max(bell_payoff_fast(a, b, &plain));
    }
    CeilingCheck { samples, max_entangled, max_unentangled }
}

/// The `steps × steps` grid over `η₁ ∈ [0, π]`, `η₂ ∈ [−π, π]`, row-major in η₁.
pub fn eta_grid(steps: usize) -> Vec<SchmidtParams> {
    assert!(steps >= 2, "grid needs at least two points per axis");
    let at = |lo: f64, hi: f64, k: usize| lo + (hi - lo) * k as f64 / (steps - 1) as f64;
    (0..steps)
        .flat_map(|i| {
            (0..steps).map(move |j| SchmidtParams::new(at(0.0, PI, i), at(-PI, PI, j)).expect("grid in range"))
        })
        .collect()
}
