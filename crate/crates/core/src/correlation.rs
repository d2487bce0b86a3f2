//! Strategy-relabeling operators, the coordinator's entangler and the
//! Schmidt-parametrized two-qubit states.
//!
//! `S` exchanges the players, `C` renames both players' strategies
//! (`ī = n − 1 − i`) and `T = CS` does both. Together with the identity they
//! form the Klein four-group. For `n = 2` the entangler is
//! `J(γ) = exp(iγ₁S/2)·exp(iγ₂T/2)`, which collapses to half-angle products
//! because `S² = T² = I`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{tensor_mat, CVector, ComplexMatrix, ONE, ZERO};

/// Maps an angle onto `[−π, π]`.
pub fn wrap_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

fn finite(x: f64, what: &str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::InvalidParameter(format!("{what} must be finite, got {x}")))
    }
}

/// Coordinator knobs `γ = (γ₁, γ₂)`, stored wrapped to `[−π, π]`.
///
/// Wrapping by `2π` flips the sign of `J(γ)`; that global phase cancels in
/// every `J† M J`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoordinatorParams {
    gamma1: f64,
    gamma2: f64,
}

impl CoordinatorParams {
    pub fn new(gamma1: f64, gamma2: f64) -> Result<Self> {
        Ok(Self {
            gamma1: wrap_angle(finite(gamma1, "gamma1")?),
            gamma2: wrap_angle(finite(gamma2, "gamma2")?),
        })
    }

    pub fn zero() -> Self {
        Self { gamma1: 0.0, gamma2: 0.0 }
    }

    pub fn gamma1(&self) -> f64 {
        self.gamma1
    }

    pub fn gamma2(&self) -> f64 {
        self.gamma2
    }
}

/// Entanglement magnitude `η₁ ∈ [0, π]` and phase `η₂ ∈ [−π, π]` of the
/// initial correlated state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchmidtParams {
    eta1: f64,
    eta2: f64,
}

impl SchmidtParams {
    pub fn new(eta1: f64, eta2: f64) -> Result<Self> {
        let eta1 = finite(eta1, "eta1")?;
        // a few ulps of slack so that grids ending at π are accepted
        if !(-1e-12..=PI + 1e-12).contains(&eta1) {
            return Err(Error::InvalidParameter(format!("eta1 must lie in [0, π], got {eta1}")));
        }
        Ok(Self {
            eta1: eta1.clamp(0.0, PI),
            eta2: wrap_angle(finite(eta2, "eta2")?),
        })
    }

    pub fn eta1(&self) -> f64 {
        self.eta1
    }

    pub fn eta2(&self) -> f64 {
        self.eta2
    }
}

/// Polar angle and azimuth of a single-qubit rotation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Su2Params {
    pub theta: f64,
    pub phi: f64,
}

impl Su2Params {
    pub fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    pub fn identity() -> Self {
        Self { theta: 0.0, phi: 0.0 }
    }
}

fn permutation(n: usize, map: impl Fn(usize, usize) -> (usize, usize)) -> Result<ComplexMatrix> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 strategies, got {n}")));
    }
    let mut m = ComplexMatrix::zeros(n * n);
    for i in 0..n {
        for j in 0..n {
            let (k, l) = map(i, j);
            m.set(k * n + l, i * n + j, ONE);
        }
    }
    Ok(m)
}

/// `S|i, j⟩ = |j, i⟩`.
pub fn swap_op(n: usize) -> Result<ComplexMatrix> {
    permutation(n, |i, j| (j, i))
}

/// `C|i, j⟩ = |ī, j̄⟩`.
pub fn convert_op(n: usize) -> Result<ComplexMatrix> {
    permutation(n, |i, j| (n - 1 - i, n - 1 - j))
}

/// `T|i, j⟩ = |j̄, ī⟩`.
pub fn twist_op(n: usize) -> Result<ComplexMatrix> {
    permutation(n, |i, j| (n - 1 - j, n - 1 - i))
}

/// `cos(x/2) I + i sin(x/2) P` for an involution `P`, i.e. `exp(i x P / 2)`.
fn half_angle_exp(p: &ComplexMatrix, x: f64) -> ComplexMatrix {
    let (s, c) = (x / 2.0).sin_cos();
    ComplexMatrix::identity(p.dim())
        .scale_real(c)
        .add(&p.scale(Complex64::new(0.0, s)))
        .expect("same dimension")
}

/// The coordinator's entangler `J(γ)`; defined for two-strategy games only.
pub fn entangler(n: usize, gamma: &CoordinatorParams) -> Result<ComplexMatrix> {
    if n != 2 {
        return Err(Error::UnsupportedDimension(n));
    }
    let s = swap_op(2)?;
    let t = twist_op(2)?;
    half_angle_exp(&s, gamma.gamma1).matmul(&half_angle_exp(&t, gamma.gamma2))
}

/// `cos(η₁/2)|00⟩ + e^{iη₂} sin(η₁/2)|11⟩`.
pub fn schmidt_state(eta: &SchmidtParams) -> CVector {
    let (s, c) = (eta.eta1 / 2.0).sin_cos();
    CVector::new(vec![
        Complex64::new(c, 0.0),
        ZERO,
        ZERO,
        Complex64::from_polar(s, eta.eta2),
    ])
    .expect("finite amplitudes")
}

/// Single-qubit rotation
/// `[[cos(θ/2), −e^{−iφ} sin(θ/2)], [e^{iφ} sin(θ/2), cos(θ/2)]]`.
pub fn su2(p: &Su2Params) -> ComplexMatrix {
    let (s, c) = (p.theta / 2.0).sin_cos();
    let c = Complex64::new(c, 0.0);
    ComplexMatrix::from_rows(&[
        vec![c, -Complex64::from_polar(s, -p.phi)],
        vec![Complex64::from_polar(s, p.phi), c],
    ])
    .expect("finite 2x2")
}

/// `U(a) ⊗ U(b) |Φ(η)⟩`.
pub fn schmidt_joint_state(a: &Su2Params, b: &Su2Params, eta: &SchmidtParams) -> CVector {
    tensor_mat(&su2(a), &su2(b))
        .apply(&schmidt_state(eta))
        .expect("4-dimensional")
}

/// Concurrence `2|ψ₀₀ψ₁₁ − ψ₀₁ψ₁₀|` of a normalized two-qubit pure state.
pub fn concurrence(state: &CVector) -> Result<f64> {
    if state.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: state.dim() });
    }
    Ok(2.0 * (state[0] * state[3] - state[1] * state[2]).norm())
}

/// Schmidt coefficients `(λ_max, λ_min)` of a normalized two-qubit pure state.
pub fn schmidt_coefficients(state: &CVector) -> Result<[f64; 2]> {
    let conc = concurrence(state)?.min(1.0);
    let root = (1.0 - conc * conc).max(0.0).sqrt();
    Ok([((1.0 + root) / 2.0).sqrt(), ((1.0 - root) / 2.0).max(0.0).sqrt()])
}
