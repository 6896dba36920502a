//! Small dense real linear algebra used as the verification oracle.
//!
//! Nothing here knows about words or signs: dense forms of operators are
//! built from explicit Kronecker products of the 2×2 blocks, so agreement
//! between this module and the symbolic layer is a genuine cross-check.

use std::fmt;

use crate::error::{NqaError, Result};

/// Default convergence tolerance for [`DenseMatrix::sym_eigenvalues`].
pub const DEFAULT_EIG_TOL: f64 = 1e-12;

/// Jacobi sweeps before giving up.
pub const MAX_SWEEPS: usize = 100;

/// Largest dimension accepted by the eigensolver.
pub const MAX_EIG_DIM: usize = 4096;

/// A square `n × n` real matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut a = DenseMatrix::zeros(n);
        for i in 0..n {
            a[(i, i)] = 1.0;
        }
        a
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut a = DenseMatrix::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            a[(i, i)] = d;
        }
        a
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(NqaError::Shape(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Ok(DenseMatrix { n, data })
    }

    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(NqaError::Shape(format!(
                "{} entries cannot fill a {n}x{n} matrix",
                data.len()
            )));
        }
        Ok(DenseMatrix { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n.max(1)).map(<[f64]>::to_vec).collect()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    pub fn mat_mul(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        self.check_dim(rhs)?;
        let n = self.n;
        let mut out = DenseMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0.0 {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> DenseMatrix {
        let n = self.n;
        let mut out = DenseMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j];
            }
        }
        out
    }

    pub fn mat_vec(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.n {
            return Err(NqaError::Shape(format!(
                "vector of length {} against {}x{} matrix",
                v.len(),
                self.n,
                self.n
            )));
        }
        Ok(self
            .data
            .chunks(self.n.max(1))
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn add(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        self.check_dim(rhs)?;
        Ok(DenseMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        self.check_dim(rhs)?;
        Ok(DenseMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: f64) -> DenseMatrix {
        DenseMatrix {
            n: self.n,
            data: self.data.iter().map(|a| c * a).collect(),
        }
    }

    /// Kronecker product; `self` indexes the most significant part.
    pub fn kron(&self, rhs: &DenseMatrix) -> DenseMatrix {
        let (na, nb) = (self.n, rhs.n);
        let n = na * nb;
        let mut out = DenseMatrix::zeros(n);
        for i in 0..na {
            for j in 0..na {
                let a = self.data[i * na + j];
                if a == 0.0 {
                    continue;
                }
                for k in 0..nb {
                    for l in 0..nb {
                        out.data[(i * nb + k) * n + j * nb + l] = a * rhs.data[k * nb + l];
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// `max |A - B|` entrywise.
    pub fn max_abs_diff(&self, rhs: &DenseMatrix) -> Result<f64> {
        self.check_dim(rhs)?;
        Ok(self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.abs()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    /// `max |A - Aᵀ|`.
    pub fn asymmetry(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                worst = worst.max((self.data[i * n + j] - self.data[j * n + i]).abs());
            }
        }
        worst
    }

    /// `max |AᵀA - I|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let ata = self
            .transpose()
            .mat_mul(self)
            .expect("square times its transpose");
        ata.max_abs_diff(&DenseMatrix::identity(self.n))
            .expect("same dimension")
    }

    pub fn is_orthogonal(&self, tol: f64) -> bool {
        self.orthogonality_defect() <= tol
    }

    /// Normalized Frobenius product `tr(AᵀB) / n`.
    pub fn frobenius_inner(&self, rhs: &DenseMatrix) -> Result<f64> {
        self.check_dim(rhs)?;
        let s: f64 = self.data.iter().zip(&rhs.data).map(|(a, b)| a * b).sum();
        Ok(s / self.n as f64)
    }

    /// Eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi rotations.
    ///
    /// Sweeps stop once the off-diagonal Frobenius mass drops to
    /// `tol * max(1, ‖A‖_F)`. The input must be symmetric to within `tol`.
    pub fn sym_eigenvalues(&self, tol: f64) -> Result<Vec<f64>> {
        let n = self.n;
        if n > MAX_EIG_DIM {
            return Err(NqaError::Shape(format!(
                "eigensolver limited to n <= {MAX_EIG_DIM}, got {n}"
            )));
        }
        let asym = self.asymmetry();
        if asym > tol {
            return Err(NqaError::NotSymmetric(asym));
        }
        // symmetrize so rounding noise in the input cannot accumulate
        let mut a = self.add(&self.transpose())?.scale(0.5).data;
        let threshold = tol * self.frobenius_norm().max(1.0);

        let off_mass = |a: &[f64]| -> f64 {
            let mut s = 0.0;
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        s += a[i * n + j] * a[i * n + j];
                    }
                }
            }
            s.sqrt()
        };

        let mut off = off_mass(&a);
        let mut sweeps = 0;
        while off > threshold {
            if sweeps == MAX_SWEEPS {
                return Err(NqaError::NoConvergence { sweeps, off });
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a[p * n + q];
                    if apq == 0.0 {
                        continue;
                    }
                    let app = a[p * n + p];
                    let aqq = a[q * n + q];
                    let theta = (aqq - app) / (2.0 * apq);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        if k == p || k == q {
                            continue;
                        }
                        let akp = a[k * n + p];
                        let akq = a[k * n + q];
                        let new_kp = c * akp - s * akq;
                        let new_kq = s * akp + c * akq;
                        a[k * n + p] = new_kp;
                        a[p * n + k] = new_kp;
                        a[k * n + q] = new_kq;
                        a[q * n + k] = new_kq;
                    }
                    a[p * n + p] = app - t * apq;
                    a[q * n + q] = aqq + t * apq;
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                }
            }
            sweeps += 1;
            off = off_mass(&a);
        }
        let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
        eig.sort_by(f64::total_cmp);
        Ok(eig)
    }

    fn check_dim(&self, rhs: &DenseMatrix) -> Result<()> {
        if self.n == rhs.n {
            Ok(())
        } else {
            Err(NqaError::Shape(format!(
                "{}x{} against {}x{}",
                self.n, self.n, rhs.n, rhs.n
            )))
        }
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix({}x{})", self.n, self.n)?;
        for row in self.data.chunks(self.n.max(1)) {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.data.chunks(self.n.max(1)) {
            let cells: Vec<String> = row.iter().map(|x| format!("{:>10.6}", x + 0.0)).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Real amplitudes over `2^m` basis states; index bit `m - k` holds slot `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    m: usize,
    amplitudes: Vec<f64>,
}

/// Largest register a state vector may hold.
pub const MAX_STATE_SLOTS: usize = 30;

impl StateVector {
    /// The computational basis state `|index⟩`.
    pub fn basis(m: usize, index: usize) -> Result<Self> {
        if m > MAX_STATE_SLOTS {
            return Err(NqaError::Shape(format!(
                "state vectors limited to m <= {MAX_STATE_SLOTS}"
            )));
        }
        if index >= 1usize << m {
            return Err(NqaError::InvalidValue(format!(
                "basis index {index} out of range for m = {m}"
            )));
        }
        let mut amplitudes = vec![0.0; 1 << m];
        amplitudes[index] = 1.0;
        Ok(StateVector { m, amplitudes })
    }

    /// `|0^m⟩`.
    pub fn zero(m: usize) -> Result<Self> {
        Self::basis(m, 0)
    }

    /// `|s⟩ = 2^{-m/2} Σ_x |x⟩`.
    pub fn uniform(m: usize) -> Result<Self> {
        let mut v = Self::zero(m)?;
        let amp = (v.amplitudes.len() as f64).sqrt().recip();
        v.amplitudes.iter_mut().for_each(|a| *a = amp);
        Ok(v)
    }

    pub fn from_amplitudes(m: usize, amplitudes: Vec<f64>) -> Result<Self> {
        if m > MAX_STATE_SLOTS || amplitudes.len() != 1usize << m {
            return Err(NqaError::Shape(format!(
                "{} amplitudes for m = {m}",
                amplitudes.len()
            )));
        }
        Ok(StateVector { m, amplitudes })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [f64] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<f64> {
        self.amplitudes
    }

    pub fn dot(&self, rhs: &StateVector) -> Result<f64> {
        crate::error::check_same_m(self.m, rhs.m)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&rhs.amplitudes)
            .map(|(a, b)| a * b)
            .sum())
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    /// `max |self - rhs|` over amplitudes.
    pub fn max_abs_diff(&self, rhs: &StateVector) -> Result<f64> {
        crate::error::check_same_m(self.m, rhs.m)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&rhs.amplitudes)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// Index of the largest-magnitude amplitude.
    pub fn argmax(&self) -> usize {
        self.amplitudes
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .map(|(i, _)| i)
            .unwrap_or(0)
    }
}
