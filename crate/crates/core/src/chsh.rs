//! CHSH operators: the quantum one built from spin observables and the
//! classical one built from commuting diagonal tables.

use std::f64::consts::SQRT_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{NqaError, Result};
use crate::linalg::{DenseMatrix, DEFAULT_EIG_TOL};
use crate::operator::NqaOperator;
use crate::realify::ComplexNqaOperator;

/// Allowed deviation of `‖n‖` from 1.
pub const UNIT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinDirection {
    x: f64,
    y: f64,
    z: f64,
}

impl SpinDirection {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > UNIT_TOL {
            return Err(NqaError::NotUnit(norm));
        }
        Ok(SpinDirection { x, y, z })
    }

    pub fn x_axis() -> Self {
        SpinDirection { x: 1.0, y: 0.0, z: 0.0 }
    }

    pub fn z_axis() -> Self {
        SpinDirection { x: 0.0, y: 0.0, z: 1.0 }
    }

    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(&self, rhs: &SpinDirection) -> f64 {
        self.x * rhs.x + self.y * rhs.y + self.z * rhs.z
    }
}

/// `Σ(n) = n_x X + n_y (iW) + n_z Z`.
pub fn sigma(n: &SpinDirection) -> ComplexNqaOperator {
    let re = NqaOperator::from_literals(&[("X", n.x), ("Z", n.z)]).expect("literals");
    let im = NqaOperator::from_literals(&[("W", n.y)]).expect("literal");
    ComplexNqaOperator::new(re, im).expect("m = 1")
}

/// Measurement directions `(a₀, a₁, b₀, b₁)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshSettings {
    pub a0: SpinDirection,
    pub a1: SpinDirection,
    pub b0: SpinDirection,
    pub b1: SpinDirection,
}

/// `a₀ = ẑ`, `a₁ = x̂`, `b₀ = (ẑ + x̂)/√2`, `b₁ = (ẑ - x̂)/√2`.
pub fn standard_settings() -> ChshSettings {
    let r = SQRT_2.recip();
    ChshSettings {
        a0: SpinDirection::z_axis(),
        a1: SpinDirection::x_axis(),
        b0: SpinDirection { x: r, y: 0.0, z: r },
        b1: SpinDirection { x: -r, y: 0.0, z: r },
    }
}

/// `A₀B₀ + A₀B₁ + A₁B₀ - A₁B₁` with `A_x = Σ(a_x) ⊗ I`, `B_y = I ⊗ Σ(b_y)`.
pub fn chsh_operator(s: &ChshSettings) -> ComplexNqaOperator {
    let pair = |a: &SpinDirection, b: &SpinDirection| sigma(a).tensor(&sigma(b));
    pair(&s.a0, &s.b0)
        .add(&pair(&s.a0, &s.b1))
        .and_then(|acc| acc.add(&pair(&s.a1, &s.b0)))
        .and_then(|acc| acc.sub(&pair(&s.a1, &s.b1)))
        .expect("all terms have 2 slots")
}

/// Dense `8×8` realification `Φ(S)` of the settings-built CHSH operator.
pub fn chsh_from_settings(s: &ChshSettings) -> DenseMatrix {
    chsh_operator(s).phi().to_dense().expect("3 slots")
}

/// The fixed real `4×4` quantum CHSH matrix `√2 (ZZ + XX)`.
pub fn chsh_quantum_matrix() -> DenseMatrix {
    DenseMatrix::from_rows(&[
        vec![SQRT_2, 0.0, 0.0, SQRT_2],
        vec![0.0, -SQRT_2, SQRT_2, 0.0],
        vec![0.0, SQRT_2, -SQRT_2, 0.0],
        vec![SQRT_2, 0.0, 0.0, SQRT_2],
    ])
    .expect("square")
}

/// Eigenvalues of a Hermitian operator, via its realification: every
/// eigenvalue of `Φ(U)` appears twice, so every other one is kept.
pub fn hermitian_spectrum(u: &ComplexNqaOperator) -> Result<Vec<f64>> {
    let eig = u.phi().to_dense()?.sym_eigenvalues(DEFAULT_EIG_TOL)?;
    Ok(eig.into_iter().step_by(2).collect())
}

/// Largest absolute eigenvalue of a symmetric matrix.
pub fn spectral_norm(a: &DenseMatrix) -> Result<f64> {
    let eig = a.sym_eigenvalues(DEFAULT_EIG_TOL)?;
    Ok(eig.into_iter().fold(0.0, |acc, e| acc.max(e.abs())))
}

/// A hidden-variable model: four `±1` tables over `N` hidden states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalModel {
    a0: Vec<i8>,
    a1: Vec<i8>,
    b0: Vec<i8>,
    b1: Vec<i8>,
}

impl ClassicalModel {
    pub fn new(a0: Vec<i8>, a1: Vec<i8>, b0: Vec<i8>, b1: Vec<i8>) -> Result<Self> {
        let n = a0.len();
        for t in [&a1, &b0, &b1] {
            if t.len() != n {
                return Err(NqaError::DimensionMismatch {
                    left: n,
                    right: t.len(),
                });
            }
        }
        if let Some(v) = [&a0, &a1, &b0, &b1]
            .iter()
            .flat_map(|t| t.iter())
            .find(|&&v| v != 1 && v != -1)
        {
            return Err(NqaError::InvalidValue(format!("table entry {v} is not ±1")));
        }
        Ok(ClassicalModel { a0, a1, b0, b1 })
    }

    /// All 16 deterministic assignments, one per hidden state.
    pub fn all_assignments() -> Self {
        let bit = |i: usize, j: usize| if (i >> j) & 1 == 1 { -1 } else { 1 };
        let col = |j| (0..16).map(|i| bit(i, j)).collect();
        ClassicalModel {
            a0: col(3),
            a1: col(2),
            b0: col(1),
            b1: col(0),
        }
    }

    pub fn random(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut table = || -> Vec<i8> {
            (0..n)
                .map(|_| if rng.gen::<bool>() { 1 } else { -1 })
                .collect()
        };
        ClassicalModel {
            a0: table(),
            a1: table(),
            b0: table(),
            b1: table(),
        }
    }

    pub fn len(&self) -> usize {
        self.a0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a0.is_empty()
    }

    /// The diagonal matrices `Â₀, Â₁, B̂₀, B̂₁`.
    pub fn observables(&self) -> [DenseMatrix; 4] {
        let diag = |t: &[i8]| {
            DenseMatrix::from_diagonal(&t.iter().map(|&v| f64::from(v)).collect::<Vec<_>>())
        };
        [diag(&self.a0), diag(&self.a1), diag(&self.b0), diag(&self.b1)]
    }
}

/// `s(λ) = a₀b₀ + a₀b₁ + a₁b₀ - a₁b₁` for every hidden state.
pub fn chsh_classical(model: &ClassicalModel) -> Vec<i32> {
    (0..model.len())
        .map(|i| {
            let (a0, a1) = (i32::from(model.a0[i]), i32::from(model.a1[i]));
            let (b0, b1) = (i32::from(model.b0[i]), i32::from(model.b1[i]));
            a0 * b0 + a0 * b1 + a1 * b0 - a1 * b1
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct NonembeddabilityReport {
    pub quantum_spectrum: Vec<f64>,
    pub quantum_norm: f64,
    pub settings_norm: f64,
    pub classical_values: Vec<i32>,
    pub classical_max: i32,
    pub gap: f64,
}

pub fn nonembeddability_report() -> Result<NonembeddabilityReport> {
    let sq = chsh_quantum_matrix();
    let quantum_spectrum = sq.sym_eigenvalues(DEFAULT_EIG_TOL)?;
    let quantum_norm = spectral_norm(&sq)?;
    let settings_norm = spectral_norm(&chsh_from_settings(&standard_settings()))?;
    let classical_values = chsh_classical(&ClassicalModel::all_assignments());
    let classical_max = classical_values.iter().map(|v| v.abs()).max().unwrap_or(0);
    Ok(NonembeddabilityReport {
        gap: quantum_norm - f64::from(classical_max),
        quantum_spectrum,
        quantum_norm,
        settings_norm,
        classical_values,
        classical_max,
    })
}
