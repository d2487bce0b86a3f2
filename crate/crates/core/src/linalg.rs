//! Small dense complex linear algebra for `n ⊗ n` joint strategy spaces.
//!
//! Joint basis states `|i, j⟩` live at slot `i * n + j` everywhere in this
//! crate. [`tensor_vec`] and [`tensor_mat`] both follow that convention so
//! that `tensor_mat(M, N) · tensor_vec(u, v) = tensor_vec(M u, N v)`.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexScalar = Complex64;

/// Tolerance on `Σ|v_k|² = 1`.
pub const NORM_TOL: f64 = 1e-10;
/// Entrywise tolerance on `M = M†`.
pub const HERM_TOL: f64 = 1e-10;
/// Entrywise tolerance on `M†M = I`.
pub const UNIT_TOL: f64 = 1e-10;
/// Largest imaginary part tolerated in an expectation value.
pub const IMAG_TOL: f64 = 1e-9;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn check_finite(values: &[Complex64], what: &'static str) -> Result<()> {
    if values.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

/// A complex column vector.
#[derive(Debug, Clone, PartialEq)]
pub struct CVector {
    entries: Vec<Complex64>,
}

impl CVector {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidParameter("vector dimension must be >= 1".into()));
        }
        check_finite(&entries, "vector")?;
        Ok(Self { entries })
    }

    pub fn from_real(entries: &[f64]) -> Result<Self> {
        Self::new(entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Unit vector `e_k` in dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index {k} out of range for dimension {dim}");
        let mut entries = vec![ZERO; dim];
        entries[k] = ONE;
        Self { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORM_TOL
    }

    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm_sqr().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidParameter("cannot normalize the zero vector".into()));
        }
        Ok(Self {
            entries: self.entries.iter().map(|z| z / norm).collect(),
        })
    }

    /// `⟨self|other⟩`, conjugating `self`.
    pub fn inner(&self, other: &CVector) -> Result<Complex64> {
        same_dim(self.dim(), other.dim())?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn max_abs_diff(&self, other: &CVector) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<usize> for CVector {
    type Output = Complex64;
    fn index(&self, k: usize) -> &Complex64 {
        &self.entries[k]
    }
}

/// A square complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be >= 1");
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for k in 0..dim {
            m.data[k * dim + k] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries; `data.len()` must be a perfect square.
    pub fn from_row_major(data: Vec<Complex64>) -> Result<Self> {
        let dim = (data.len() as f64).sqrt().round() as usize;
        if dim == 0 || dim * dim != data.len() {
            return Err(Error::InvalidParameter(format!(
                "{} entries do not form a square matrix",
                data.len()
            )));
        }
        check_finite(&data, "matrix")?;
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        Self::from_row_major(rows.concat())
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn diagonal(diag: &[Complex64]) -> Result<Self> {
        check_finite(diag, "diagonal")?;
        let mut m = Self::zeros(diag.len());
        for (k, &z) in diag.iter().enumerate() {
            m.data[k * diag.len() + k] = z;
        }
        Ok(m)
    }

    pub fn real_diagonal(diag: &[f64]) -> Result<Self> {
        let diag: Vec<Complex64> = diag.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::diagonal(&diag)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn row_major(&self) -> &[Complex64] {
        &self.data
    }

    pub fn diag(&self) -> Vec<Complex64> {
        (0..self.dim).map(|k| self.get(k, k)).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.data[c * n + r] = self.data[r * n + c].conj();
            }
        }
        out
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<Self> {
        same_dim(self.dim, other.dim)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let lhs = self.data[r * n + k];
                if lhs == ZERO {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += lhs * other.data[k * n + c];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<Self> {
        same_dim(self.dim, other.dim)?;
        Ok(Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Result<Self> {
        same_dim(self.dim, other.dim)?;
        Ok(Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// `M v`.
    pub fn apply(&self, v: &CVector) -> Result<CVector> {
        same_dim(self.dim, v.dim())?;
        let n = self.dim;
        let entries = (0..n)
            .map(|r| {
                self.data[r * n..(r + 1) * n]
                    .iter()
                    .zip(v.entries())
                    .map(|(m, x)| m * x)
                    .sum()
            })
            .collect();
        Ok(CVector { entries })
    }

    /// `M† X M`.
    pub fn conjugate(&self, inner: &ComplexMatrix) -> Result<Self> {
        self.adjoint().matmul(&inner.matmul(self)?)
    }

    /// Commutator `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &ComplexMatrix) -> Result<Self> {
        self.matmul(other)?.sub(&other.matmul(self)?)
    }

    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn hermitian_deviation(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_deviation() <= HERM_TOL
    }

    pub fn unitary_deviation(&self) -> f64 {
        self.adjoint()
            .matmul(self)
            .expect("same dimension")
            .max_abs_diff(&Self::identity(self.dim))
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary_deviation() <= UNIT_TOL
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.dim;
        (0..n).all(|r| (0..n).all(|c| r == c || self.get(r, c) == ZERO))
    }

    /// Real matrices whose entries are all integers (permutation and sign matrices).
    pub fn is_exactly(&self, other: &ComplexMatrix) -> bool {
        self.dim == other.dim && self.data == other.data
    }
}

fn same_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Kronecker product `u ⊗ v`, with `(i, j)` at slot `i * dim(v) + j`.
pub fn tensor_vec(u: &CVector, v: &CVector) -> CVector {
    let entries = u
        .entries()
        .iter()
        .flat_map(|a| v.entries().iter().map(move |b| a * b))
        .collect();
    CVector { entries }
}

/// Kronecker product `M ⊗ N`, consistent with [`tensor_vec`].
pub fn tensor_mat(m: &ComplexMatrix, n: &ComplexMatrix) -> ComplexMatrix {
    let (dm, dn) = (m.dim(), n.dim());
    let dim = dm * dn;
    let mut out = ComplexMatrix::zeros(dim);
    for i in 0..dm {
        for k in 0..dm {
            let mik = m.get(i, k);
            for j in 0..dn {
                for l in 0..dn {
                    out.data[(i * dn + j) * dim + (k * dn + l)] = mik * n.get(j, l);
                }
            }
        }
    }
    out
}

/// `⟨state|M|state⟩` for Hermitian `M` and normalized `state`.
pub fn expectation(state: &CVector, m: &ComplexMatrix) -> Result<f64> {
    same_dim(m.dim(), state.dim())?;
    let deviation = m.hermitian_deviation();
    if deviation > HERM_TOL {
        return Err(Error::NonHermitian { deviation });
    }
    if !state.is_normalized() {
        return Err(Error::InvalidParameter(format!(
            "state is not normalized (norm² = {})",
            state.norm_sqr()
        )));
    }
    let value = state.inner(&m.apply(state)?)?;
    if value.im.abs() > IMAG_TOL {
        return Err(Error::ImaginaryResidue {
            residue: value.im.abs(),
        });
    }
    Ok(value.re)
}

/// Pauli matrices in the computational basis, `σ_z|0⟩ = |0⟩`.
pub mod pauli {
    use super::*;

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap()
    }

    pub fn y() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[
            vec![ZERO, Complex64::new(0.0, -1.0)],
            vec![Complex64::new(0.0, 1.0), ZERO],
        ])
        .unwrap()
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::real_diagonal(&[1.0, -1.0]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_vector(rng: &mut impl Rng, dim: usize) -> CVector {
        CVector::new((0..dim).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect())
            .unwrap()
            .normalized()
            .unwrap()
    }

    fn random_matrix(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
        ComplexMatrix::from_row_major(
            (0..dim * dim)
                .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        )
        .unwrap()
    }

    fn random_hermitian(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
        let m = random_matrix(rng, dim);
        m.add(&m.adjoint()).unwrap().scale_real(0.5)
    }

    #[test]
    fn tensor_vec_basis_slots() {
        let e0 = CVector::basis(2, 0);
        let e1 = CVector::basis(2, 1);
        assert_eq!(tensor_vec(&e0, &e1), CVector::basis(4, 1));
        assert_eq!(tensor_vec(&e1, &e0), CVector::basis(4, 2));

        let (a, b) = (c(0.6, 0.1), c(-0.2, 0.7));
        let u = CVector::new(vec![a, b]).unwrap();
        let w = tensor_vec(&u, &e0);
        assert_eq!(w.entries(), &[a, ZERO, b, ZERO]);
    }

    #[test]
    fn tensor_mat_known_products() {
        let i2 = ComplexMatrix::identity(2);
        assert!(tensor_mat(&i2, &i2).is_exactly(&ComplexMatrix::identity(4)));
        let zz = tensor_mat(&pauli::z(), &pauli::z());
        assert!(zz.is_exactly(&ComplexMatrix::real_diagonal(&[1.0, -1.0, -1.0, 1.0]).unwrap()));
    }

    #[test]
    fn tensor_compatibility_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let (m, n) = (random_matrix(&mut rng, 2), random_matrix(&mut rng, 3));
            let (u, v) = (random_vector(&mut rng, 2), random_vector(&mut rng, 3));
            let lhs = tensor_mat(&m, &n).apply(&tensor_vec(&u, &v)).unwrap();
            let rhs = tensor_vec(&m.apply(&u).unwrap(), &n.apply(&v).unwrap());
            worst = worst.max(lhs.max_abs_diff(&rhs));
        }
        assert!(worst < 1e-12, "worst {worst}");

        // (σx ⊗ I)(u ⊗ v) against a hand-written product
        let u = random_vector(&mut rng, 2);
        let v = random_vector(&mut rng, 2);
        let lhs = tensor_mat(&pauli::x(), &ComplexMatrix::identity(2))
            .apply(&tensor_vec(&u, &v))
            .unwrap();
        let flipped = CVector::new(vec![u[1], u[0]]).unwrap();
        assert!(lhs.max_abs_diff(&tensor_vec(&flipped, &v)) < 1e-15);
    }

    #[test]
    fn expectation_examples() {
        let m = ComplexMatrix::real_diagonal(&[3.0, 1.0, 0.0, 5.0]).unwrap();
        assert_eq!(expectation(&CVector::basis(4, 0), &m).unwrap(), 3.0);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = CVector::from_real(&[h, 0.0, 0.0, h]).unwrap();
        let xx = tensor_mat(&pauli::x(), &pauli::x());
        assert!((expectation(&bell, &xx).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn expectation_matches_triple_loop() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let psi = random_vector(&mut rng, 4);
            let m = random_hermitian(&mut rng, 4);
            let mut naive = ZERO;
            for r in 0..4 {
                for k in 0..4 {
                    naive += psi[r].conj() * m.get(r, k) * psi[k];
                }
            }
            assert!(naive.im.abs() < 1e-12);
            assert!((expectation(&psi, &m).unwrap() - naive.re).abs() < 1e-12);
            let id = expectation(&psi, &ComplexMatrix::identity(4)).unwrap();
            assert!((id - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn expectation_errors() {
        let psi = CVector::basis(4, 0);
        let mut m = ComplexMatrix::identity(4);
        m.set(0, 1, c(1.0, 0.0));
        assert!(matches!(expectation(&psi, &m), Err(Error::NonHermitian { .. })));
        assert!(matches!(
            expectation(&CVector::basis(2, 0), &ComplexMatrix::identity(4)),
            Err(Error::DimensionMismatch { .. })
        ));
        let unnormalized = CVector::from_real(&[1.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(expectation(&unnormalized, &ComplexMatrix::identity(4)).is_err());
    }

    #[test]
    fn adjoint_and_product_rules() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let m = random_matrix(&mut rng, 4);
            let n = random_matrix(&mut rng, 4);
            assert_eq!(m.adjoint().adjoint(), m);
            assert_eq!(ComplexMatrix::identity(4).matmul(&m).unwrap(), m);
            let lhs = m.matmul(&n).unwrap().adjoint();
            let rhs = n.adjoint().matmul(&m.adjoint()).unwrap();
            assert!(lhs.max_abs_diff(&rhs) < 1e-14);
        }
        assert!(matches!(
            ComplexMatrix::identity(2).matmul(&ComplexMatrix::identity(3)),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn rejects_non_finite() {
        assert!(CVector::from_real(&[f64::NAN]).is_err());
        assert!(ComplexMatrix::real_diagonal(&[1.0, f64::INFINITY]).is_err());
        assert!(ComplexMatrix::from_row_major(vec![ONE; 3]).is_err());
    }
}
