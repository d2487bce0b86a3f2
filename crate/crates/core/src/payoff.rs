//! Diagonal quantum games.
//!
//! A classical payoff table `A_ij` is embedded as the diagonal operator with
//! `⟨i,j|A|i,j⟩ = A_ij`. Conjugating by the entangler splits the correlated
//! operator `J†AJ` into a pseudo-classical part, an affine mixture of the
//! tables `A`, `SAS` and `CAC`, and an interference part built from the
//! commutators `[A, S]` and `[A, T]`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::correlation::{entangler, swap_op, twist_op, CoordinatorParams};
use crate::error::{Error, Result};
use crate::linalg::{expectation, tensor_vec, CVector, ComplexMatrix, NORM_TOL};

/// Entrywise tolerance for the symmetry predicates on user-supplied tables.
pub const SYMMETRY_TOL: f64 = 1e-9;

/// Real `n × n` payoff table, row index = player A's strategy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct PayoffTable {
    n: usize,
    entries: Vec<f64>,
}

impl TryFrom<Vec<Vec<f64>>> for PayoffTable {
    type Error = Error;

    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::from_rows(&rows)
    }
}

impl From<PayoffTable> for Vec<Vec<f64>> {
    fn from(t: PayoffTable) -> Self {
        t.rows()
    }
}

impl PayoffTable {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "payoff table needs at least 2 strategies, got {n}"
            )));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.len() });
        }
        let entries = rows.concat();
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("payoff table"));
        }
        Ok(Self { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let rows: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    fn map(&self, f: impl Fn(usize, usize) -> f64) -> Self {
        Self::from_fn(self.n, f).expect("derived table keeps shape")
    }

    /// Table of `SAS`: `A_ji`.
    pub fn swapped(&self) -> Self {
        self.map(|i, j| self.get(j, i))
    }

    /// Table of `CAC`: `A_{ī j̄}`.
    pub fn converted(&self) -> Self {
        let m = self.n - 1;
        self.map(|i, j| self.get(m - i, m - j))
    }

    /// Table of `TAT`: `A_{j̄ ī}`.
    pub fn twisted(&self) -> Self {
        let m = self.n - 1;
        self.map(|i, j| self.get(m - j, m - i))
    }

    pub fn max_abs_diff(&self, other: &PayoffTable) -> f64 {
        assert_eq!(self.n, other.n);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// The diagonal operator on the joint space, slot `i * n + j`.
    pub fn to_operator(&self) -> ComplexMatrix {
        ComplexMatrix::real_diagonal(&self.entries).expect("finite table")
    }

    /// Reads a diagonal operator back into a table.
    pub fn from_operator(m: &ComplexMatrix) -> Result<Self> {
        if !m.is_diagonal() {
            return Err(Error::InvalidParameter("payoff operator is not diagonal".into()));
        }
        let n = (m.dim() as f64).sqrt().round() as usize;
        if n * n != m.dim() {
            return Err(Error::DimensionMismatch { expected: n * n, found: m.dim() });
        }
        let diag = m.diag();
        if let Some(z) = diag.iter().find(|z| z.im.abs() > crate::linalg::HERM_TOL) {
            return Err(Error::NonHermitian { deviation: z.im.abs() });
        }
        Self::from_fn(n, |i, j| diag[i * n + j].re)
    }

    /// `Σ_ij c_k · table_k`, an affine combination of same-sized tables.
    fn combine(terms: &[(f64, &PayoffTable)]) -> Self {
        let n = terms[0].1.n;
        let entries = (0..n * n)
            .map(|k| terms.iter().map(|(c, t)| c * t.entries[k]).sum())
            .collect();
        Self { n, entries }
    }
}

/// A pair of payoff tables defining a diagonal quantum game.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagonalGame {
    a: PayoffTable,
    b: PayoffTable,
}

impl DiagonalGame {
    pub fn new(a: PayoffTable, b: PayoffTable) -> Result<Self> {
        if a.n != b.n {
            return Err(Error::DimensionMismatch { expected: a.n, found: b.n });
        }
        Ok(Self { a, b })
    }

    /// The symmetric game with `B = SAS`.
    pub fn symmetric(a: PayoffTable) -> Self {
        let b = a.swapped();
        Self { a, b }
    }

    pub fn n(&self) -> usize {
        self.a.n
    }

    pub fn a(&self) -> &PayoffTable {
        &self.a
    }

    pub fn b(&self) -> &PayoffTable {
        &self.b
    }

    pub fn symmetry_deviation(&self) -> f64 {
        self.b.max_abs_diff(&self.a.swapped())
    }

    pub fn t_symmetry_deviation(&self) -> f64 {
        self.b.max_abs_diff(&self.a.twisted())
    }

    /// `B = SAS`, i.e. `B_ij = A_ji`.
    pub fn is_symmetric(&self) -> bool {
        self.symmetry_deviation() <= SYMMETRY_TOL
    }

    /// `B = TAT`, i.e. `B_ij = A_{j̄ ī}`.
    pub fn is_t_symmetric(&self) -> bool {
        self.t_symmetry_deviation() <= SYMMETRY_TOL
    }

    /// `(Π_A, Π_B)` through the operator path.
    pub fn payoffs(
        &self,
        a: &StrategyParams,
        b: &StrategyParams,
        gamma: &CoordinatorParams,
    ) -> Result<(PayoffBreakdown, PayoffBreakdown)> {
        Ok((payoff(&self.a, a, b, gamma)?, payoff(&self.b, a, b, gamma)?))
    }

    /// `(Π_A, Π_B)` through the closed-form path.
    pub fn payoffs_analytic(
        &self,
        a: &StrategyParams,
        b: &StrategyParams,
        gamma: &CoordinatorParams,
    ) -> Result<(PayoffBreakdown, PayoffBreakdown)> {
        Ok((
            payoff_analytic(&self.a, a, b, gamma)?,
            payoff_analytic(&self.b, a, b, gamma)?,
        ))
    }
}

/// A two-strategy player state `(a₀, a₁ e^{iξ})` with real `a₀, a₁ ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrategyParams {
    pub a0: f64,
    pub a1: f64,
    pub phase: f64,
}

impl StrategyParams {
    pub fn new(a0: f64, a1: f64, phase: f64) -> Result<Self> {
        if !(a0.is_finite() && a1.is_finite() && phase.is_finite()) {
            return Err(Error::NonFinite("strategy"));
        }
        if a0 < 0.0 || a1 < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "strategy amplitudes must be non-negative, got ({a0}, {a1})"
            )));
        }
        if (a0 * a0 + a1 * a1 - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidParameter(format!(
                "strategy is not normalized: a0² + a1² = {}",
                a0 * a0 + a1 * a1
            )));
        }
        Ok(Self { a0, a1, phase })
    }

    /// `a₀ = cos t`, `a₁ = sin t` with `t ∈ [0, π/2]`.
    pub fn from_angle(t: f64, phase: f64) -> Self {
        let t = t.clamp(0.0, std::f64::consts::FRAC_PI_2);
        Self { a0: t.cos(), a1: t.sin(), phase }
    }

    /// Pure strategy `|k⟩`.
    pub fn pure(k: usize) -> Self {
        match k {
            0 => Self { a0: 1.0, a1: 0.0, phase: 0.0 },
            1 => Self { a0: 0.0, a1: 1.0, phase: 0.0 },
            _ => panic!("two-strategy games only have pure strategies 0 and 1"),
        }
    }

    /// Canonical chart of an arbitrary normalized 2-vector, dropping the global phase.
    pub fn from_amplitudes(c0: Complex64, c1: Complex64) -> Result<Self> {
        let norm = (c0.norm_sqr() + c1.norm_sqr()).sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidParameter("strategy vector must be non-zero".into()));
        }
        let phase = if c1.norm() == 0.0 {
            0.0
        } else {
            crate::correlation::wrap_angle(c1.arg() - if c0.norm() == 0.0 { 0.0 } else { c0.arg() })
        };
        Ok(Self { a0: c0.norm() / norm, a1: c1.norm() / norm, phase })
    }

    /// Mixing angle `t` with `a₀ = cos t`.
    pub fn angle(&self) -> f64 {
        self.a1.atan2(self.a0)
    }

    pub fn vector(&self) -> CVector {
        CVector::new(vec![Complex64::new(self.a0, 0.0), Complex64::from_polar(self.a1, self.phase)])
            .expect("finite amplitudes")
    }

    /// Classical mixed strategy `(a₀², a₁²)`.
    pub fn probabilities(&self) -> [f64; 2] {
        [self.a0 * self.a0, self.a1 * self.a1]
    }
}

/// `Π = Π^pc + Π^in`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PayoffBreakdown {
    pub total: f64,
    pub pseudo_classical: f64,
    pub interference: f64,
}

fn require_two(n: usize) -> Result<()> {
    if n == 2 {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(n))
    }
}

/// `J†(γ) M J(γ)` for a Hermitian operator on the two-qubit joint space.
pub fn correlated_op(m: &ComplexMatrix, gamma: &CoordinatorParams) -> Result<ComplexMatrix> {
    if m.dim() != 4 {
        let n = (m.dim() as f64).sqrt().round() as usize;
        return Err(Error::UnsupportedDimension(n));
    }
    let deviation = m.hermitian_deviation();
    if deviation > crate::linalg::HERM_TOL {
        return Err(Error::NonHermitian { deviation });
    }
    entangler(2, gamma)?.conjugate(m)
}

/// Weights of `(A, SAS, CAC)` in the pseudo-classical operator.
///
/// The middle weight can be negative; the three always sum to one.
pub fn pc_coefficients(gamma: &CoordinatorParams) -> [f64; 3] {
    let (c1, c2) = (gamma.gamma1().cos(), gamma.gamma2().cos());
    let cos2_half1 = 0.5 * (1.0 + c1);
    let cos2_half2 = 0.5 * (1.0 + c2);
    let sin2_half2 = 1.0 - cos2_half2;
    [cos2_half1, cos2_half2 - cos2_half1, sin2_half2]
}

/// Diagonal of the pseudo-classical operator, as a table.
pub fn pc_table(table: &PayoffTable, gamma: &CoordinatorParams) -> Result<PayoffTable> {
    require_two(table.n())?;
    let [w_a, w_sas, w_cac] = pc_coefficients(gamma);
    Ok(PayoffTable::combine(&[
        (w_a, table),
        (w_sas, &table.swapped()),
        (w_cac, &table.converted()),
    ]))
}

/// Pseudo-classical operator `cos²(γ₁/2)A + (cos²(γ₂/2) − cos²(γ₁/2))SAS + sin²(γ₂/2)CAC`.
pub fn pc_op(table: &PayoffTable, gamma: &CoordinatorParams) -> Result<ComplexMatrix> {
    Ok(pc_table(table, gamma)?.to_operator())
}

/// Interference operator `(i/2) sin γ₁ [A, S] + (i/2) sin γ₂ [A, T]`.
pub fn in_op(table: &PayoffTable, gamma: &CoordinatorParams) -> Result<ComplexMatrix> {
    require_two(table.n())?;
    let a = table.to_operator();
    let with_s = a.commutator(&swap_op(2)?)?.scale(Complex64::new(0.0, 0.5 * gamma.gamma1().sin()));
    let with_t = a.commutator(&twist_op(2)?)?.scale(Complex64::new(0.0, 0.5 * gamma.gamma2().sin()));
    with_s.add(&with_t)
}

/// Payoff of the table's owner at the separable profile `|α⟩|β⟩`, evaluated
/// through the correlated operator and its two parts.
pub fn payoff(
    table: &PayoffTable,
    a: &StrategyParams,
    b: &StrategyParams,
    gamma: &CoordinatorParams,
) -> Result<PayoffBreakdown> {
    require_two(table.n())?;
    let state = tensor_vec(&a.vector(), &b.vector());
    let total = expectation(&state, &correlated_op(&table.to_operator(), gamma)?)?;
    let pseudo_classical = expectation(&state, &pc_op(table, gamma)?)?;
    let interference = expectation(&state, &in_op(table, gamma)?)?;
    Ok(PayoffBreakdown { total, pseudo_classical, interference })
}

/// `G₊ = (A₀₀ − A₁₁) sin γ₂`, `G₋ = (A₀₁ − A₁₀) sin γ₁`.
pub fn interference_gains(table: &PayoffTable, gamma: &CoordinatorParams) -> (f64, f64) {
    (
        (table.get(0, 0) - table.get(1, 1)) * gamma.gamma2().sin(),
        (table.get(0, 1) - table.get(1, 0)) * gamma.gamma1().sin(),
    )
}

/// Closed-form payoff:
/// `Π^pc = Σ a_i² b_j² 𝒜^pc_ij`,
/// `Π^in = −a₀a₁b₀b₁ [G₊ sin(ξ + χ) + G₋ sin(ξ − χ)]`.
pub fn payoff_analytic(
    table: &PayoffTable,
    a: &StrategyParams,
    b: &StrategyParams,
    gamma: &CoordinatorParams,
) -> Result<PayoffBreakdown> {
    let pc = pc_table(table, gamma)?;
    let (x, y) = (a.probabilities(), b.probabilities());
    let mut pseudo_classical = 0.0;
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            pseudo_classical += xi * yj * pc.get(i, j);
        }
    }
    let (g_plus, g_minus) = interference_gains(table, gamma);
    let interference = -a.a0 * a.a1 * b.a0 * b.a1
        * (g_plus * (a.phase + b.phase).sin() + g_minus * (a.phase - b.phase).sin());
    Ok(PayoffBreakdown {
        total: pseudo_classical + interference,
        pseudo_classical,
        interference,
    })
}

fn check_distribution(p: &[f64], n: usize, who: &str) -> Result<()> {
    if p.len() != n {
        return Err(Error::InvalidDistribution(format!("{who} has {} entries, expected {n}", p.len())));
    }
    if p.iter().any(|&v| !v.is_finite() || v < 0.0) {
        return Err(Error::InvalidDistribution(format!("{who} has negative or non-finite entries")));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > NORM_TOL {
        return Err(Error::InvalidDistribution(format!("{who} sums to {total}")));
    }
    Ok(())
}

/// Classical bilinear payoff `Σ x_i A_ij y_j`.
pub fn classical_payoff(table: &PayoffTable, x: &[f64], y: &[f64]) -> Result<f64> {
    check_distribution(x, table.n(), "x")?;
    check_distribution(y, table.n(), "y")?;
    let mut total = 0.0;
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            total += xi * table.get(i, j) * yj;
        }
    }
    Ok(total)
}

/// Effective classical tables of a symmetric game at `γ = (γ₁, 0)`:
/// each player weighs the other's payoff by `sin²(γ₁/2)`.
pub fn altruism_mixture(game: &DiagonalGame, gamma1: f64) -> Result<(PayoffTable, PayoffTable)> {
    if !game.is_symmetric() {
        return Err(Error::NotSymmetricGame { deviation: game.symmetry_deviation() });
    }
    let c = gamma1.cos();
    let own = 0.5 * (1.0 + c);
    let other = 1.0 - own;
    Ok((
        PayoffTable::combine(&[(own, game.a()), (other, game.b())]),
        PayoffTable::combine(&[(own, game.b()), (other, game.a())]),
    ))
}

/// Effective classical tables of a T-symmetric game at `γ = (π/2, γ₂)`.
///
/// With `B = TAT` one has `CAC = SBS`, so player A's table is
/// `½A + ½cos γ₂ · SAS + ½(1 − cos γ₂) · SBS`: the converted opponent's game
/// enters with weight `sin²(γ₂/2)`.
pub fn t_symmetric_mixture(game: &DiagonalGame, gamma2: f64) -> Result<(PayoffTable, PayoffTable)> {
    if !game.is_t_symmetric() {
        return Err(Error::NotTSymmetricGame { deviation: game.t_symmetry_deviation() });
    }
    let gamma = CoordinatorParams::new(std::f64::consts::FRAC_PI_2, gamma2)?;
    Ok((pc_table(game.a(), &gamma)?, pc_table(game.b(), &gamma)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlation::{convert_op, CoordinatorParams};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

    fn pd() -> PayoffTable {
        PayoffTable::from_rows(&[vec![3.0, 0.0], vec![5.0, 1.0]]).unwrap()
    }

    fn gamma(g1: f64, g2: f64) -> CoordinatorParams {
        CoordinatorParams::new(g1, g2).unwrap()
    }

    fn random_table(rng: &mut impl Rng) -> PayoffTable {
        PayoffTable::from_fn(2, |_, _| rng.gen_range(-5.0..5.0)).unwrap()
    }

    fn random_strategy(rng: &mut impl Rng) -> StrategyParams {
        StrategyParams::from_angle(rng.gen_range(0.0..FRAC_PI_2), rng.gen_range(-PI..PI))
    }

    fn random_gamma(rng: &mut impl Rng) -> CoordinatorParams {
        gamma(rng.gen_range(-PI..PI), rng.gen_range(-PI..PI))
    }

    #[test]
    fn table_relabelings_match_operators() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t = random_table(&mut rng);
        let a = t.to_operator();
        let (s, c, tw) = (swap_op(2).unwrap(), convert_op(2).unwrap(), twist_op(2).unwrap());
        let conj = |p: &ComplexMatrix| p.matmul(&a).unwrap().matmul(p).unwrap();
        assert!(conj(&s).is_exactly(&t.swapped().to_operator()));
        assert!(conj(&c).is_exactly(&t.converted().to_operator()));
        assert!(conj(&tw).is_exactly(&t.twisted().to_operator()));
        assert_eq!(PayoffTable::from_operator(&a).unwrap(), t);
    }

    #[test]
    fn table_validation() {
        assert!(PayoffTable::from_rows(&[vec![1.0, 2.0], vec![3.0]]).is_err());
        assert!(PayoffTable::from_rows(&[vec![1.0]]).is_err());
        assert!(PayoffTable::from_rows(&[vec![1.0, f64::NAN], vec![0.0, 0.0]]).is_err());
        let three = PayoffTable::from_fn(3, |i, j| (i + j) as f64).unwrap();
        assert!(DiagonalGame::new(pd(), three.clone()).is_err());
        assert_eq!(pc_op(&three, &CoordinatorParams::zero()), Err(Error::UnsupportedDimension(3)));
    }

    #[test]
    fn strategy_params_canonicalization() {
        assert!(StrategyParams::new(0.6, 0.8, 0.3).is_ok());
        assert!(StrategyParams::new(0.6, 0.7, 0.3).is_err());
        assert!(StrategyParams::new(-0.6, 0.8, 0.3).is_err());

        let global = Complex64::from_polar(1.0, 0.9);
        let c0 = global * 0.6;
        let c1 = global * Complex64::from_polar(0.8, -1.1);
        let s = StrategyParams::from_amplitudes(c0, c1).unwrap();
        assert!((s.a0 - 0.6).abs() < 1e-15 && (s.a1 - 0.8).abs() < 1e-15);
        assert!((s.phase + 1.1).abs() < 1e-14);
        assert!((s.angle() - 0.8f64.atan2(0.6)).abs() < 1e-15);
    }

    #[test]
    fn correlated_op_special_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let t = random_table(&mut rng);
        let m = t.to_operator();
        assert!(correlated_op(&m, &CoordinatorParams::zero()).unwrap().max_abs_diff(&m) < 1e-15);
        let at_pi = correlated_op(&m, &gamma(PI, 0.0)).unwrap();
        assert!(at_pi.max_abs_diff(&t.swapped().to_operator()) < 1e-14);

        let mut bad = ComplexMatrix::identity(4);
        bad.set(0, 1, Complex64::new(1.0, 0.0));
        assert!(matches!(correlated_op(&bad, &CoordinatorParams::zero()), Err(Error::NonHermitian { .. })));
        assert!(matches!(
            correlated_op(&ComplexMatrix::identity(9), &CoordinatorParams::zero()),
            Err(Error::UnsupportedDimension(3))
        ));
    }

    #[test]
    fn correlated_op_matches_explicit_triple_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let m = random_table(&mut rng).to_operator();
            let g = random_gamma(&mut rng);
            let j = entangler(2, &g).unwrap();
            let oracle = j.adjoint().matmul(&m).unwrap().matmul(&j).unwrap();
            let got = correlated_op(&m, &g).unwrap();
            assert!(got.max_abs_diff(&oracle) < 1e-12);
            assert!(got.is_hermitian());
        }
    }

    #[test]
    fn pc_op_special_cases() {
        let t = pd();
        assert!(pc_op(&t, &CoordinatorParams::zero()).unwrap().is_exactly(&t.to_operator()));
        let at_pi = pc_table(&t, &gamma(PI, PI)).unwrap();
        assert!(at_pi.max_abs_diff(&t.converted()) < 1e-15);
        let half = pc_table(&t, &gamma(FRAC_PI_2, 0.0)).unwrap();
        let expected = PayoffTable::combine(&[(0.5, &t), (0.5, &t.swapped())]);
        assert!(half.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn pc_coefficients_are_affine() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut saw_negative = false;
        for _ in 0..1000 {
            let w = pc_coefficients(&random_gamma(&mut rng));
            saw_negative |= w[1] < 0.0;
            assert!((w.iter().sum::<f64>() - 1.0).abs() <= 2.0 * f64::EPSILON);
        }
        assert!(saw_negative);
        assert_eq!(pc_coefficients(&gamma(FRAC_PI_2, 0.0)), [0.5, 0.5, 0.0]);
        assert_eq!(pc_coefficients(&gamma(FRAC_PI_2, FRAC_PI_2)), [0.5, 0.0, 0.5]);
    }

    #[test]
    fn in_op_structure() {
        let t = pd();
        assert_eq!(in_op(&t, &CoordinatorParams::zero()).unwrap().max_abs(), 0.0);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let g = random_gamma(&mut rng);
            let op = in_op(&random_table(&mut rng), &g).unwrap();
            assert!(op.hermitian_deviation() < 1e-15);
            assert!(op.diag().iter().all(|z| z.norm() == 0.0));
        }

        // A = SAS: the γ₁ commutator vanishes, only the γ₂ part survives
        let sym = PayoffTable::from_rows(&[vec![2.0, 1.0], vec![1.0, -3.0]]).unwrap();
        let g1_only = in_op(&sym, &gamma(1.1, 0.0)).unwrap();
        assert_eq!(g1_only.max_abs(), 0.0);
    }

    #[test]
    fn decomposition_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut worst = 0.0f64;
        for _ in 0..200 {
            let t = random_table(&mut rng);
            let g = random_gamma(&mut rng);
            let split = pc_op(&t, &g).unwrap().add(&in_op(&t, &g).unwrap()).unwrap();
            worst = worst.max(correlated_op(&t.to_operator(), &g).unwrap().max_abs_diff(&split));
        }
        assert!(worst < 1e-12, "worst {worst}");
    }

    #[test]
    fn classical_reduction_examples() {
        let t = pd();
        assert_eq!(classical_payoff(&t, &[1.0, 0.0], &[1.0, 0.0]).unwrap(), 3.0);
        assert_eq!(classical_payoff(&t, &[0.5, 0.5], &[0.5, 0.5]).unwrap(), 2.25);
        assert!(matches!(
            classical_payoff(&t, &[0.7, 0.7], &[1.0, 0.0]),
            Err(Error::InvalidDistribution(_))
        ));
        assert!(classical_payoff(&t, &[1.5, -0.5], &[1.0, 0.0]).is_err());

        let (x, y): ([f64; 2], [f64; 2]) = ([0.3, 0.7], [0.9, 0.1]);
        let a = StrategyParams::new(x[0].sqrt(), x[1].sqrt(), 0.0).unwrap();
        let b = StrategyParams::new(y[0].sqrt(), y[1].sqrt(), 0.0).unwrap();
        let q = payoff(&t, &a, &b, &CoordinatorParams::zero()).unwrap();
        assert!((q.total - classical_payoff(&t, &x, &y).unwrap()).abs() < 1e-14);
        assert_eq!(q.interference, 0.0);
    }

    #[test]
    fn zero_phases_kill_interference() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let t = random_table(&mut rng);
            let g = random_gamma(&mut rng);
            let a = StrategyParams::from_angle(rng.gen_range(0.0..FRAC_PI_2), 0.0);
            let b = StrategyParams::from_angle(rng.gen_range(0.0..FRAC_PI_2), 0.0);
            assert!(payoff(&t, &a, &b, &g).unwrap().interference.abs() < 1e-14);
            assert_eq!(payoff_analytic(&t, &a, &b, &g).unwrap().interference.abs(), 0.0);
            let pure = StrategyParams::pure(0);
            let r = random_strategy(&mut rng);
            assert_eq!(payoff_analytic(&t, &pure, &r, &g).unwrap().interference.abs(), 0.0);
        }
    }

    #[test]
    fn analytic_matches_operator_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..500 {
            let t = random_table(&mut rng);
            let (a, b, g) = (random_strategy(&mut rng), random_strategy(&mut rng), random_gamma(&mut rng));
            let m = payoff(&t, &a, &b, &g).unwrap();
            let c = payoff_analytic(&t, &a, &b, &g).unwrap();
            assert!((m.total - c.total).abs() < 1e-10);
            assert!((m.pseudo_classical - c.pseudo_classical).abs() < 1e-10);
            assert!((m.interference - c.interference).abs() < 1e-10);
            assert!((m.total - m.pseudo_classical - m.interference).abs() < 1e-10);
        }
    }

    #[test]
    fn prisoners_dilemma_half_altruistic_point() {
        let h = FRAC_1_SQRT_2;
        let s = StrategyParams::new(h, h, FRAC_PI_2).unwrap();
        let g = gamma(FRAC_PI_2, 0.0);
        let m = payoff(&pd(), &s, &s, &g).unwrap();
        let c = payoff_analytic(&pd(), &s, &s, &g).unwrap();
        assert!((m.total - c.total).abs() < 1e-12);
        // ξ = χ so only G₋ sin(0) appears: no interference
        assert!(c.interference.abs() < 1e-15);
        let flat_gamma2 = gamma(0.0, 0.4);
        let equal_diag = PayoffTable::from_rows(&[vec![2.0, 1.0], vec![4.0, 2.0]]).unwrap();
        let r = StrategyParams::new(h, h, 0.7).unwrap();
        assert_eq!(payoff_analytic(&equal_diag, &r, &s, &flat_gamma2).unwrap().interference, 0.0);
    }

    #[test]
    fn symmetric_games_are_fair() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let game = DiagonalGame::symmetric(random_table(&mut rng));
            let (a, b, g) = (random_strategy(&mut rng), random_strategy(&mut rng), random_gamma(&mut rng));
            let (pa, _) = game.payoffs(&a, &b, &g).unwrap();
            let (_, pb) = game.payoffs(&b, &a, &g).unwrap();
            assert!((pa.total - pb.total).abs() < 1e-10);
        }
    }

    #[test]
    fn altruism_mixture_examples() {
        let game = DiagonalGame::symmetric(pd());
        let (a0, b0) = altruism_mixture(&game, 0.0).unwrap();
        assert_eq!((&a0, &b0), (game.a(), game.b()));
        let (api, bpi) = altruism_mixture(&game, PI).unwrap();
        assert!(api.max_abs_diff(game.b()) < 1e-15 && bpi.max_abs_diff(game.a()) < 1e-15);
        let (ah, bh) = altruism_mixture(&game, FRAC_PI_2).unwrap();
        let mean = PayoffTable::from_fn(2, |i, j| (game.a().get(i, j) + game.b().get(i, j)) / 2.0).unwrap();
        assert_eq!(ah, mean);
        assert_eq!(bh, mean);

        let lopsided = DiagonalGame::new(pd(), pd()).unwrap();
        assert!(matches!(altruism_mixture(&lopsided, 0.3), Err(Error::NotSymmetricGame { .. })));
    }

    #[test]
    fn altruism_mixture_is_the_pc_family() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..100 {
            let game = DiagonalGame::symmetric(random_table(&mut rng));
            let g1 = rng.gen_range(-PI..PI);
            let (ea, eb) = altruism_mixture(&game, g1).unwrap();
            let g = gamma(g1, 0.0);
            assert!(pc_table(game.a(), &g).unwrap().max_abs_diff(&ea) < 1e-12);
            assert!(pc_table(game.b(), &g).unwrap().max_abs_diff(&eb) < 1e-12);
        }
    }

    #[test]
    fn t_symmetric_mixture_examples() {
        let a = PayoffTable::from_rows(&[vec![3.0, 0.0], vec![5.0, 1.0]]).unwrap();
        let game = DiagonalGame::new(a.clone(), a.twisted()).unwrap();
        assert!(game.is_t_symmetric());

        let (ta, _) = t_symmetric_mixture(&game, 0.0).unwrap();
        assert!(ta.max_abs_diff(&PayoffTable::combine(&[(0.5, &a), (0.5, &a.swapped())])) < 1e-15);

        let (ta, _) = t_symmetric_mixture(&game, PI).unwrap();
        let expected = PayoffTable::combine(&[(0.5, &a), (-0.5, &a.swapped()), (1.0, &a.converted())]);
        assert!(ta.max_abs_diff(&expected) < 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let a = random_table(&mut rng);
            let game = DiagonalGame::new(a.clone(), a.twisted()).unwrap();
            let g2 = rng.gen_range(-PI..PI);
            let (ta, tb) = t_symmetric_mixture(&game, g2).unwrap();
            let g = gamma(FRAC_PI_2, g2);
            assert!(pc_op(&a, &g).unwrap().max_abs_diff(&ta.to_operator()) < 1e-12);
            // the converted term is the swapped opponent table
            let c = g2.cos();
            let rel = PayoffTable::combine(&[
                (0.5, &a),
                (0.5 * c, &a.swapped()),
                (0.5 * (1.0 - c), &game.b().swapped()),
            ]);
            assert!(ta.max_abs_diff(&rel) < 1e-12);
            assert!(pc_op(game.b(), &g).unwrap().max_abs_diff(&tb.to_operator()) < 1e-12);
        }

        assert!(matches!(
            t_symmetric_mixture(&DiagonalGame::symmetric(pd()), 0.2),
            Err(Error::NotTSymmetricGame { .. })
        ));
    }
}
