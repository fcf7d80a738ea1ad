//! Dense complex linear algebra for the handful of qubits this crate needs.
//!
//! Everything here works on matrices of dimension 2, 4 or 8. Qubit ordering
//! follows the usual tensor convention: in an `n`-qubit basis index the first
//! qubit occupies the most significant bit.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hermiticity tolerance for a matrix flagged as a density matrix.
pub const DENSITY_HERMITIAN_TOL: f64 = 1e-12;
/// Trace tolerance for a matrix flagged as a density matrix.
pub const DENSITY_TRACE_TOL: f64 = 1e-12;
/// Most negative eigenvalue accepted in a density matrix.
pub const DENSITY_EIGEN_TOL: f64 = 1e-10;
/// Hermiticity tolerance accepted by [`hermitian_eig`].
pub const EIG_HERMITIAN_TOL: f64 = 1e-10;

const JACOBI_OFF_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;
const DEGENERACY_GAP: f64 = 1e-9;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries; fails unless `data.len()` is a
    /// positive perfect square.
    pub fn from_vec(data: Vec<Complex64>) -> Result<Self> {
        let dim = (data.len() as f64).sqrt().round() as usize;
        if dim == 0 || dim * dim != data.len() {
            return Err(Error::Dimension(format!(
                "{} entries do not form a square matrix",
                data.len()
            )));
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows<const N: usize>(rows: [[Complex64; N]; N]) -> Self {
        Self {
            dim: N,
            data: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Projector-like outer product `|v⟩⟨v|` (not normalized).
    pub fn outer(v: &[Complex64]) -> Self {
        let dim = v.len();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn dagger(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "vector length must match matrix dimension");
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn hermiticity_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Checks the density-matrix invariants: Hermitian, unit trace and
    /// positive semidefinite within the crate tolerances.
    pub fn validate_density(&self) -> Result<()> {
        let herm = self.hermiticity_error();
        if herm > DENSITY_HERMITIAN_TOL {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian (max |M - M^†| = {herm:e})"
            )));
        }
        let tr = self.trace();
        if (tr - ONE).norm() > DENSITY_TRACE_TOL {
            return Err(Error::InvalidDensity(format!("trace {tr} differs from 1")));
        }
        let eig = hermitian_eig(self)?;
        let min = eig.values[0];
        if min < -DENSITY_EIGEN_TOL {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in product");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sum");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in difference");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_rows([[ZERO, ONE], [ONE, ZERO]])
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_rows([[ZERO, -I], [I, ZERO]])
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_rows([[ONE, ZERO], [ZERO, -ONE]])
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim, b.dim);
    let mut out = ComplexMatrix::zeros(na * nb);
    for i in 0..na {
        for j in 0..na {
            let aij = a[(i, j)];
            for k in 0..nb {
                for l in 0..nb {
                    out[(i * nb + k, j * nb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Kronecker product of a list of factors, left to right.
pub fn kron_all(factors: &[&ComplexMatrix]) -> ComplexMatrix {
    factors
        .iter()
        .fold(ComplexMatrix::identity(1), |acc, f| kron(&acc, f))
}

/// Traces out every qubit not listed in `keep`.
///
/// Sites are 1-based; the output basis orders the kept qubits as listed, so
/// `keep = [3, 1]` yields a state on `|q3 q1⟩`. No density validation is done
/// here, see [`partial_trace`] for the checked three-qubit version.
pub fn partial_trace_qubits(rho: &ComplexMatrix, n_qubits: usize, keep: &[usize]) -> Result<ComplexMatrix> {
    if rho.dim != 1 << n_qubits {
        return Err(Error::Dimension(format!(
            "matrix of dimension {} is not a {n_qubits}-qubit operator",
            rho.dim
        )));
    }
    for (k, &s) in keep.iter().enumerate() {
        if s == 0 || s > n_qubits {
            return Err(Error::InvalidSites(format!(
                "site {s} outside 1..={n_qubits}"
            )));
        }
        if keep[..k].contains(&s) {
            return Err(Error::InvalidSites(format!("site {s} listed twice")));
        }
    }
    let bit = |index: usize, site: usize| (index >> (n_qubits - site)) & 1;
    let traced: Vec<usize> = (1..=n_qubits).filter(|s| !keep.contains(s)).collect();
    let reduced_index = |index: usize| keep.iter().fold(0, |acc, &s| (acc << 1) | bit(index, s));
    let env_index = |index: usize| traced.iter().fold(0, |acc, &s| (acc << 1) | bit(index, s));

    let mut out = ComplexMatrix::zeros(1 << keep.len());
    for i in 0..rho.dim {
        let (ri, ei) = (reduced_index(i), env_index(i));
        for j in 0..rho.dim {
            if env_index(j) == ei {
                out[(ri, reduced_index(j))] += rho[(i, j)];
            }
        }
    }
    Ok(out)
}

/// Two-site reduced state of a three-qubit density matrix.
pub fn partial_trace(rho: &ComplexMatrix, keep: (usize, usize)) -> Result<ComplexMatrix> {
    if rho.dim != 8 {
        return Err(Error::Dimension(format!(
            "expected a three-qubit (8x8) state, got {}x{}",
            rho.dim, rho.dim
        )));
    }
    rho.validate_density()?;
    partial_trace_qubits(rho, 3, &[keep.0, keep.1])
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Ascending eigenvalues.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, aligned with `values`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `V diag(λ) V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.values.len();
        let mut out = ComplexMatrix::zeros(n);
        for (k, &lambda) in self.values.iter().enumerate() {
            for i in 0..n {
                let vik = self.vectors[(i, k)] * lambda;
                for j in 0..n {
                    out[(i, j)] += vik * self.vectors[(j, k)].conj();
                }
            }
        }
        out
    }
}

/// Cyclic complex Jacobi eigensolver.
///
/// Each rotation first removes the phase of the pivot `a_pq`, then applies the
/// real symmetric Jacobi rotation that zeroes it. Eigenvectors belonging to a
/// cluster of eigenvalues closer than `1e-9` are re-orthonormalized; no
/// particular basis inside such a cluster is guaranteed.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<HermitianEigen> {
    let herm = m.hermiticity_error();
    if herm > EIG_HERMITIAN_TOL {
        return Err(Error::NotHermitian(herm));
    }
    let n = m.dim;
    let mut a = m.clone();
    // symmetrize so the rotations act on an exactly Hermitian matrix
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in i + 1..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let scale = a.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1.0);

    let off_norm = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = off_norm(&a) <= JACOBI_OFF_TOL * scale;
    let mut sweeps = 0;
    while !converged && sweeps < JACOBI_MAX_SWEEPS {
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= f64::MIN_POSITIVE {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let phase = apq / mag;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // G = diag(1, e^{-iα}) · [[c, s], [-s, c]]
                let g_pp = Complex64::new(c, 0.0);
                let g_pq = Complex64::new(s, 0.0);
                let g_qp = -phase.conj() * s;
                let g_qq = phase.conj() * c;
                // A ← A G
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * g_pp + akq * g_qp;
                    a[(k, q)] = akp * g_pq + akq * g_qq;
                }
                // A ← G† A
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
                    a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
                // V ← V G
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * g_pp + vkq * g_qp;
                    v[(k, q)] = vkp * g_pq + vkq * g_qq;
                }
            }
        }
        sweeps += 1;
        converged = off_norm(&a) <= JACOBI_OFF_TOL * scale;
    }
    if !converged {
        return Err(Error::Numerical(format!(
            "Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
    let values: Vec<f64> = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &k) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, col)] = v[(i, k)];
        }
    }

    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[end] - values[end - 1] < DEGENERACY_GAP {
            end += 1;
        }
        if end - start > 1 {
            gram_schmidt_columns(&mut vectors, start..end);
        }
        start = end;
    }

    Ok(HermitianEigen { values, vectors })
}

fn gram_schmidt_columns(vectors: &mut ComplexMatrix, cols: std::ops::Range<usize>) {
    let n = vectors.dim;
    for c in cols.clone() {
        for prev in cols.start..c {
            let overlap: Complex64 = (0..n)
                .map(|i| vectors[(i, prev)].conj() * vectors[(i, c)])
                .sum();
            for i in 0..n {
                let vp = vectors[(i, prev)];
                vectors[(i, c)] -= overlap * vp;
            }
        }
        let norm = (0..n).map(|i| vectors[(i, c)].norm_sqr()).sum::<f64>().sqrt();
        for i in 0..n {
            vectors[(i, c)] /= norm;
        }
    }
}

/// Shannon entropy in bits of a probability list, with `0 log 0 = 0`.
pub fn shannon_bits(probs: impl IntoIterator<Item = f64>) -> f64 {
    probs
        .into_iter()
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum()
}

/// Clips eigenvalues in `[-1e-10, 0)` to zero; anything more negative is an error.
pub fn clip_spectrum(values: &[f64]) -> Result<Vec<f64>> {
    values
        .iter()
        .map(|&x| {
            if x < -DENSITY_EIGEN_TOL {
                Err(Error::InvalidDensity(format!("negative eigenvalue {x:e}")))
            } else {
                Ok(x.max(0.0))
            }
        })
        .collect()
}

/// Von Neumann entropy `−Tr ρ log₂ ρ` in bits.
pub fn entropy_bits(rho: &ComplexMatrix) -> Result<f64> {
    rho.validate_density()?;
    let eig = hermitian_eig(rho)?;
    let spectrum = clip_spectrum(&eig.values)?;
    let max = (rho.dim as f64).log2();
    Ok(shannon_bits(spectrum).clamp(0.0, max))
}

/// Binary entropy `h(θ)` of the two-outcome distribution `(1 ± θ)/2`.
/// `θ` is clamped to `[0, 1]`.
pub fn binary_entropy(theta: f64) -> f64 {
    let t = theta.clamp(0.0, 1.0);
    shannon_bits([(1.0 - t) / 2.0, (1.0 + t) / 2.0])
}
