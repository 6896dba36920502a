//! Bernstein–Vazirani and Grover with the oracle given as a factored
//! expression instead of a black box.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fmt;
use std::str::FromStr;

use crate::error::{NqaError, Result};
use crate::factored::{
    FactoredOperator, LinearMap, LocalProjector, ProductProjector, Reflection,
};
use crate::gates::{hadamard_layer_factored, real_single, SingleGate};
use crate::linalg::{DenseMatrix, StateVector, DEFAULT_EIG_TOL};
use crate::word::{BlockIndex, Sign};
use crate::operator::NqaOperator;

/// Eigenvalues of the symmetric part within this distance of `±1` are
/// snapped before taking `arccos`.
pub const EIGENVALUE_SNAP: f64 = 1e-12;

/// An `m`-bit string; bit `k` (1-based) is the `k`-th character and the most
/// significant bit of the basis index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        BitString(bits)
    }

    pub fn zeros(m: usize) -> Self {
        BitString(vec![false; m])
    }

    pub fn from_index(m: usize, index: usize) -> Self {
        BitString((1..=m).map(|k| (index >> (m - k)) & 1 == 1).collect())
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// Bit `k`, 1-based.
    pub fn get(&self, k: usize) -> bool {
        self.0[k - 1]
    }

    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    pub fn support(&self) -> Vec<usize> {
        (1..=self.m()).filter(|&k| self.get(k)).collect()
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = NqaError;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(NqaError::InvalidValue("empty bit string".into()));
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(NqaError::InvalidValue(format!("bad bit {c:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitString)
    }
}

/// A structured phase oracle `O_s = ∏ Z_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BvOracleSpec {
    /// The set `S = {k : s_k = 1}`; order and repeats are ignored.
    Support { m: usize, support: Vec<usize> },
    /// The factor list `Z_{k₁} Z_{k₂} ⋯` exactly as written.
    Factors { m: usize, factors: Vec<usize> },
}

impl BvOracleSpec {
    pub fn m(&self) -> usize {
        match self {
            BvOracleSpec::Support { m, .. } | BvOracleSpec::Factors { m, .. } => *m,
        }
    }

    pub fn from_bits(s: &BitString) -> Self {
        BvOracleSpec::Support {
            m: s.m(),
            support: s.support(),
        }
    }

    fn wires(&self) -> Result<Vec<usize>> {
        let m = self.m();
        let wires = match self {
            BvOracleSpec::Support { support, .. } => {
                let mut s = support.clone();
                s.sort_unstable();
                s.dedup();
                s
            }
            BvOracleSpec::Factors { factors, .. } => factors.clone(),
        };
        if let Some(&k) = wires.iter().find(|&&k| k == 0 || k > m) {
            return Err(NqaError::SlotOutOfRange { slot: k, m });
        }
        Ok(wires)
    }
}

/// The oracle as a list of single-word `Z_k` factors.
pub fn bv_oracle(spec: &BvOracleSpec) -> Result<FactoredOperator> {
    let m = spec.m();
    let factors = spec
        .wires()?
        .into_iter()
        .map(|k| NqaOperator::single(BlockIndex::Z, k, m).map(Into::into))
        .collect::<Result<Vec<_>>>()?;
    FactoredOperator::new(m, factors)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BvRecovery {
    pub s: BitString,
    /// Elementary bit operations: `m` to clear the array plus one per factor.
    pub steps: usize,
}

/// Read `s` off the oracle description. A wire listed an even number of
/// times cancels, since `Z_k² = I`.
pub fn bv_recover(spec: &BvOracleSpec) -> Result<BvRecovery> {
    let m = spec.m();
    let wires = spec.wires()?;
    let mut bits = vec![false; m];
    let mut steps = m;
    for k in wires {
        bits[k - 1] ^= true;
        steps += 1;
    }
    Ok(BvRecovery {
        s: BitString(bits),
        steps,
    })
}

/// `H^{⊗m} O_s H^{⊗m} |0^m⟩`, applied factor by factor.
pub fn bv_circuit(s: &BitString) -> Result<StateVector> {
    let m = s.m();
    let h = hadamard_layer_factored(m)?;
    let circuit = h.then(&bv_oracle(&BvOracleSpec::from_bits(s))?)?.then(&h)?;
    circuit.apply(&StateVector::zero(m)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroverSpec {
    pub marked: BitString,
}

impl GroverSpec {
    pub fn new(marked: BitString) -> Result<Self> {
        if marked.m() == 0 {
            return Err(NqaError::InvalidValue("need at least one qubit".into()));
        }
        Ok(GroverSpec { marked })
    }

    pub fn m(&self) -> usize {
        self.marked.m()
    }
}

/// `O_f = I - 2∏ₖ P^{(k)}_{x*_k}`.
pub fn grover_oracle(spec: &GroverSpec) -> Result<Reflection> {
    let m = spec.m();
    let locals = (1..=m)
        .map(|k| (k, LocalProjector::basis(spec.marked.get(k))))
        .collect();
    Ok(Reflection::new(Sign::PLUS, ProductProjector::new(m, locals)?))
}

/// `D = 2|s⟩⟨s| - I = -(I - 2∏ₖ P₊^{(k)})`.
pub fn grover_diffusion(m: usize) -> Result<Reflection> {
    let locals = (1..=m).map(|k| (k, LocalProjector::Plus)).collect();
    Ok(Reflection::new(Sign::MINUS, ProductProjector::new(m, locals)?))
}

/// `G = D O_f`.
pub fn grover_iterate(spec: &GroverSpec) -> Result<FactoredOperator> {
    FactoredOperator::new(
        spec.m(),
        vec![grover_diffusion(spec.m())?.into(), grover_oracle(spec)?.into()],
    )
}

/// Size of the diffusion operator: stored factors and expanded block terms.
pub fn diffusion_sizes(m: usize) -> Result<(usize, usize)> {
    let d = grover_diffusion(m)?;
    Ok((d.factor_count(), d.expanded_term_count()))
}

/// `|⟨x*|G^t|s⟩|²` for `t = 0..=iterations`.
pub fn grover_run(spec: &GroverSpec, iterations: usize) -> Result<Vec<f64>> {
    let g = grover_iterate(spec)?;
    let target = spec.marked.index();
    let mut state = StateVector::uniform(spec.m())?;
    let mut trace = Vec::with_capacity(iterations + 1);
    trace.push(state.amplitudes()[target].powi(2));
    for _ in 0..iterations {
        state = g.apply(&state)?;
        trace.push(state.amplitudes()[target].powi(2));
    }
    Ok(trace)
}

/// `θ = arcsin(2^{-m/2})`.
pub fn grover_angle(m: usize) -> f64 {
    (-(m as f64) / 2.0).exp2().asin()
}

/// `sin²((2t + 1)θ)`.
pub fn grover_closed_form(m: usize, t: usize) -> f64 {
    ((2 * t + 1) as f64 * grover_angle(m)).sin().powi(2)
}

/// `round(π/(4θ) - ½)`.
pub fn auto_iterations(m: usize) -> usize {
    (FRAC_PI_4 / grover_angle(m) - 0.5).round().max(0.0) as usize
}

/// Eigenphases in `[0, π]` of an orthogonal matrix, from the eigenvalues
/// `cos φ` of its symmetric part. Phases near `0` and `π` are resolved only to
/// about `√EIGENVALUE_SNAP`.
pub fn eigenphases(q: &DenseMatrix, tol: f64) -> Result<Vec<f64>> {
    let defect = q.orthogonality_defect();
    if defect > tol {
        return Err(NqaError::NotOrthogonal(defect));
    }
    let sym = q.add(&q.transpose())?.scale(0.5);
    let eig = sym.sym_eigenvalues(DEFAULT_EIG_TOL)?;
    Ok(eig
        .into_iter()
        .map(|c| {
            let c = if c >= 1.0 - EIGENVALUE_SNAP {
                1.0
            } else if c <= -1.0 + EIGENVALUE_SNAP {
                -1.0
            } else {
                c
            };
            c.acos()
        })
        .collect())
}

/// Every phase within `tol` of a multiple of `π/2`.
pub fn is_clifford_spectrum(phases: &[f64], tol: f64) -> bool {
    phases.iter().all(|&p| {
        let r = p / FRAC_PI_2;
        (r - r.round()).abs() * FRAC_PI_2 <= tol
    })
}

/// `H^{⊗m}` as a dense matrix, for oracle checks.
pub fn hadamard_dense(m: usize) -> Result<DenseMatrix> {
    let mut acc = DenseMatrix::identity(1usize << m);
    for k in 1..=m {
        acc = acc.mat_mul(&real_single(SingleGate::H, k, m)?.to_dense()?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn bits(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn bitstrings() {
        let s = bits("1010");
        assert_eq!(s.index(), 0b1010);
        assert_eq!(s.support(), vec![1, 3]);
        assert_eq!(BitString::from_index(4, 10), s);
        assert_eq!(s.to_string(), "1010");
        assert!("10x".parse::<BitString>().is_err());
        assert!("".parse::<BitString>().is_err());
    }

    #[test]
    fn bv_oracle_dense() {
        let o = bv_oracle(&BvOracleSpec::from_bits(&bits("10"))).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(o.to_dense().unwrap(), DenseMatrix::from_diagonal(&[1.0, 1.0, -1.0, -1.0]));
        let o = bv_oracle(&BvOracleSpec::from_bits(&bits("11"))).unwrap();
        assert_eq!(o.to_dense().unwrap(), DenseMatrix::from_diagonal(&[1.0, -1.0, -1.0, 1.0]));
        assert!(bv_oracle(&BvOracleSpec::from_bits(&bits("000"))).unwrap().is_empty());
        let bad = BvOracleSpec::Factors { m: 2, factors: vec![3] };
        assert!(bv_oracle(&bad).is_err());
    }

    #[test]
    fn bv_recovery() {
        let r = bv_recover(&BvOracleSpec::Support { m: 4, support: vec![1, 3] }).unwrap();
        assert_eq!(r.s, bits("1010"));
        assert_eq!(r.steps, 6);
        let r = bv_recover(&BvOracleSpec::Factors { m: 3, factors: vec![3, 1, 3] }).unwrap();
        assert_eq!(r.s, bits("100"));
        let r = bv_recover(&BvOracleSpec::Support { m: 3, support: vec![] }).unwrap();
        assert_eq!(r.s, BitString::zeros(3));
    }

    #[test]
    fn bv_circuit_returns_s() {
        let out = bv_circuit(&bits("101")).unwrap();
        assert_eq!(out.argmax(), 0b101);
        assert!((out.amplitudes()[0b101] - 1.0).abs() < 1e-12);
        let out = bv_circuit(&BitString::zeros(3)).unwrap();
        assert!((out.amplitudes()[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn grover_reflections() {
        let spec = GroverSpec::new(bits("11")).unwrap();
        let o = grover_oracle(&spec).unwrap();
        assert_eq!(o.to_dense().unwrap(), DenseMatrix::from_diagonal(&[1.0, 1.0, 1.0, -1.0]));
        let d = grover_diffusion(2).unwrap();
        let s = StateVector::uniform(2).unwrap();
        assert!(d.apply(&s).unwrap().max_abs_diff(&s).unwrap() < 1e-15);
        let dd = d.to_dense().unwrap();
        assert!(dd.mat_mul(&dd).unwrap().max_abs_diff(&DenseMatrix::identity(4)).unwrap() < 1e-15);
        assert_eq!(diffusion_sizes(5).unwrap(), (5, 32));
    }

    #[test]
    fn grover_traces() {
        let t = grover_run(&GroverSpec::new(bits("10")).unwrap(), 1).unwrap();
        assert!((t[0] - 0.25).abs() < 1e-15);
        assert!((t[1] - 1.0).abs() < 1e-12);
        let t = grover_run(&GroverSpec::new(bits("011")).unwrap(), 2).unwrap();
        assert!((t[2] - 0.9453125).abs() < 1e-12);
        assert!((grover_closed_form(3, 2) - t[2]).abs() < 1e-12);
        assert_eq!(auto_iterations(2), 1);
        assert_eq!(auto_iterations(3), 2);
    }

    #[test]
    fn phases() {
        let id = DenseMatrix::identity(4);
        let p = eigenphases(&id, 1e-12).unwrap();
        assert!(p.iter().all(|&x| x == 0.0));
        assert!(is_clifford_spectrum(&p, 1e-9));

        let h = real_single(SingleGate::H, 1, 1).unwrap().to_dense().unwrap();
        let p = eigenphases(&h, 1e-12).unwrap();
        assert_eq!(p, vec![PI, 0.0]);
        assert!(is_clifford_spectrum(&p, 1e-9));

        let spec = GroverSpec::new(bits("01")).unwrap();
        let g = grover_iterate(&spec).unwrap().to_dense().unwrap();
        let p = eigenphases(&g, 1e-12).unwrap();
        let mut expect = [PI / 3.0, PI / 3.0, PI, PI];
        expect.sort_by(|a, b| b.partial_cmp(a).unwrap());
        for (a, b) in p.iter().zip(expect) {
            assert!((a - b).abs() < 1e-9, "{p:?}");
        }
        assert!(!is_clifford_spectrum(&p, 1e-9));
        assert!(eigenphases(&DenseMatrix::from_diagonal(&[1.0, 2.0]), 1e-12).is_err());
    }
}
