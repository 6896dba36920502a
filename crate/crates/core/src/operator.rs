//! Sparse real linear combinations of block words.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{check_same_m, NqaError, Result};
use crate::linalg::{DenseMatrix, StateVector};
use crate::word::{epsilon, BlockIndex, NqaWord, SignedWord};

/// Coefficients with magnitude below this are dropped after every operation.
pub const PRUNE_THRESHOLD: f64 = 1e-14;

/// Largest `m` for which dense forms are built.
pub const DENSE_CAP: usize = 12;

/// A real operator `Σ_g a_g B_g` on `m` slots.
///
/// Terms are kept in literal order of their words, so iteration and printing
/// are deterministic and equality ignores insertion order.
#[derive(Clone, PartialEq)]
pub struct NqaOperator {
    m: usize,
    terms: BTreeMap<NqaWord, f64>,
}

impl NqaOperator {
    pub fn zero(m: usize) -> Self {
        NqaOperator {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(m: usize) -> Self {
        Self::from_word(NqaWord::identity(m))
    }

    pub fn from_word(word: NqaWord) -> Self {
        Self::from_signed(&SignedWord::from(word))
    }

    pub fn from_signed(sw: &SignedWord) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(sw.word.clone(), sw.sign.to_f64());
        NqaOperator {
            m: sw.word.m(),
            terms,
        }
    }

    /// Accumulate `(word, coefficient)` pairs; repeated words add up.
    pub fn from_terms<I>(m: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NqaWord, f64)>,
    {
        let mut op = NqaOperator::zero(m);
        for (w, c) in terms {
            check_same_m(m, w.m())?;
            *op.terms.entry(w).or_insert(0.0) += c;
        }
        op.prune();
        Ok(op)
    }

    /// Convenience constructor from word literals, e.g. `[("II", 0.5), ("ZZ", -0.5)]`.
    pub fn from_literals(terms: &[(&str, f64)]) -> Result<Self> {
        let parsed = terms
            .iter()
            .map(|(lit, c)| lit.parse::<NqaWord>().map(|w| (w, *c)))
            .collect::<Result<Vec<_>>>()?;
        let m = parsed
            .first()
            .map(|(w, _)| w.m())
            .ok_or_else(|| NqaError::InvalidValue("no terms given".into()))?;
        Self::from_terms(m, parsed)
    }

    /// `block` on slot `slot`, identity elsewhere.
    pub fn single(block: BlockIndex, slot: usize, m: usize) -> Result<Self> {
        NqaWord::single(block, slot, m).map(Self::from_word)
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.abs() >= PRUNE_THRESHOLD);
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NqaWord, f64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn coefficient(&self, word: &NqaWord) -> f64 {
        self.terms.get(word).copied().unwrap_or(0.0)
    }

    pub fn add(&self, rhs: &NqaOperator) -> Result<NqaOperator> {
        check_same_m(self.m, rhs.m)?;
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            *out.terms.entry(w.clone()).or_insert(0.0) += c;
        }
        out.prune();
        Ok(out)
    }

    pub fn sub(&self, rhs: &NqaOperator) -> Result<NqaOperator> {
        self.add(&rhs.scale(-1.0))
    }

    pub fn scale(&self, c: f64) -> NqaOperator {
        let mut out = NqaOperator {
            m: self.m,
            terms: self.terms.iter().map(|(w, a)| (w.clone(), c * a)).collect(),
        };
        out.prune();
        out
    }

    /// Matrix product, expanded bilinearly over term pairs.
    pub fn mul(&self, rhs: &NqaOperator) -> Result<NqaOperator> {
        check_same_m(self.m, rhs.m)?;
        let mut terms: BTreeMap<NqaWord, f64> = BTreeMap::new();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                let p = u.mul_unchecked(v);
                *terms.entry(p.word).or_insert(0.0) += p.sign.to_f64() * a * b;
            }
        }
        let mut out = NqaOperator { m: self.m, terms };
        out.prune();
        Ok(out)
    }

    /// Kronecker product; `rhs` occupies the trailing slots.
    pub fn tensor(&self, rhs: &NqaOperator) -> NqaOperator {
        let mut terms = BTreeMap::new();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                *terms.entry(u.tensor(v)).or_insert(0.0) += a * b;
            }
        }
        let mut out = NqaOperator {
            m: self.m + rhs.m,
            terms,
        };
        out.prune();
        out
    }

    pub fn transpose(&self) -> NqaOperator {
        NqaOperator {
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), w.transpose_sign().to_f64() * c))
                .collect(),
        }
    }

    /// `AB - BA`.
    pub fn commutator(&self, rhs: &NqaOperator) -> Result<NqaOperator> {
        self.mul(rhs)?.sub(&rhs.mul(self)?)
    }

    /// `AB + BA`.
    pub fn anticommutator(&self, rhs: &NqaOperator) -> Result<NqaOperator> {
        self.mul(rhs)?.add(&rhs.mul(self)?)
    }

    /// `AB - ε(g, h) BA` for `A` of degree `g` and `B` of degree `h`.
    ///
    /// Homogeneous components are one-dimensional, so both arguments must be
    /// a multiple of a single word (or zero).
    pub fn epsilon_commutator(&self, rhs: &NqaOperator) -> Result<NqaOperator> {
        check_same_m(self.m, rhs.m)?;
        let (Some(g), Some(h)) = (self.homogeneous_word()?, rhs.homogeneous_word()?) else {
            return Ok(NqaOperator::zero(self.m));
        };
        let eps = epsilon(g, h)?.to_f64();
        self.mul(rhs)?.sub(&rhs.mul(self)?.scale(eps))
    }

    /// `AB - (-1)^{deg A deg B} BA` for parity-homogeneous arguments.
    pub fn supercommutator(&self, rhs: &NqaOperator) -> Result<NqaOperator> {
        check_same_m(self.m, rhs.m)?;
        let (Some(p), Some(q)) = (self.parity()?, rhs.parity()?) else {
            return Ok(NqaOperator::zero(self.m));
        };
        let sign = if p && q { -1.0 } else { 1.0 };
        self.mul(rhs)?.sub(&rhs.mul(self)?.scale(sign))
    }

    /// The single word carrying this operator's `(Z₂)^{2m}` degree; `None`
    /// for the zero operator.
    pub fn homogeneous_word(&self) -> Result<Option<&NqaWord>> {
        let mut words = self.terms.keys();
        match (words.next(), words.next()) {
            (None, _) => Ok(None),
            (Some(w), None) => Ok(Some(w)),
            _ => Err(NqaError::NotHomogeneous(format!(
                "{} terms of distinct degree",
                self.len()
            ))),
        }
    }

    /// Common Hamming parity of all terms; `None` for the zero operator.
    pub fn parity(&self) -> Result<Option<bool>> {
        let mut parities = self.terms.keys().map(NqaWord::parity);
        let Some(first) = parities.next() else {
            return Ok(None);
        };
        if parities.all(|p| p == first) {
            Ok(Some(first))
        } else {
            Err(NqaError::NotHomogeneous("mixed parity".into()))
        }
    }

    /// Normalized Frobenius product `2^{-m} tr(Aᵀ B)`, computed on
    /// coefficients via `⟨B_g, B_h⟩ = 2^{-m} tr(B_gᵀ B_g) δ_{g,h}`.
    pub fn frobenius(&self, rhs: &NqaOperator) -> Result<f64> {
        check_same_m(self.m, rhs.m)?;
        let mut acc = 0.0;
        for (g, a) in &self.terms {
            let Some(b) = rhs.terms.get(g) else { continue };
            // B_gᵀ B_g = sign_T(g) B_g B_g, and B_g B_g is ± identity
            let square = g.mul_unchecked(g);
            debug_assert!(square.word.is_identity());
            acc += (g.transpose_sign() * square.sign).to_f64() * a * b;
        }
        Ok(acc)
    }

    /// Dense `2^m × 2^m` form: coefficients times Kronecker products of the
    /// 2×2 blocks.
    pub fn to_dense(&self) -> Result<DenseMatrix> {
        self.to_dense_with_cap(DENSE_CAP)
    }

    pub fn to_dense_with_cap(&self, cap: usize) -> Result<DenseMatrix> {
        if self.m > cap {
            return Err(NqaError::DenseCapExceeded { m: self.m, cap });
        }
        let n = 1usize << self.m;
        let mut out = DenseMatrix::zeros(n);
        for (w, &c) in &self.terms {
            let block = word_dense(w);
            out = out.add(&block.scale(c))?;
        }
        Ok(out)
    }

    /// Expand a `2^m × 2^m` matrix in the block basis,
    /// `a_g = 2^{-m} tr(B_gᵀ M)`.
    pub fn from_dense(matrix: &DenseMatrix) -> Result<NqaOperator> {
        let n = matrix.dim();
        if n < 2 || !n.is_power_of_two() {
            return Err(NqaError::Shape(format!(
                "dimension {n} is not a power of two >= 2"
            )));
        }
        let m = n.trailing_zeros() as usize;
        if m > DENSE_CAP {
            return Err(NqaError::DenseCapExceeded { m, cap: DENSE_CAP });
        }
        // B(α,β)|x⟩ = (-1)^{β·x}|x⊕α⟩, so tr(B_gᵀ M) = Σ_x (-1)^{β·x} M[x⊕α, x]:
        // for fixed α this is a Walsh-Hadamard transform over β.
        let scale = (n as f64).recip();
        let mut terms = BTreeMap::new();
        let mut column = vec![0.0; n];
        for a in 0..n {
            for (x, slot) in column.iter_mut().enumerate() {
                *slot = matrix[(x ^ a, x)];
            }
            walsh_hadamard(&mut column);
            for (b, &v) in column.iter().enumerate() {
                let c = v * scale;
                if c.abs() >= PRUNE_THRESHOLD {
                    terms.insert(NqaWord::from_index_masks(m, a as u64, b as u64), c);
                }
            }
        }
        Ok(NqaOperator { m, terms })
    }

    /// `A v` via `B(α,β)|x⟩ = (-1)^{β·x}|x⊕α⟩`.
    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        check_same_m(self.m, v.m())?;
        let input = v.amplitudes();
        let mut out = vec![0.0; input.len()];
        for (w, &c) in &self.terms {
            let (a, b) = w.index_masks();
            for (x, &amp) in input.iter().enumerate() {
                if amp == 0.0 {
                    continue;
                }
                let parity = (b & x as u64).count_ones() & 1;
                let s = if parity == 1 { -c } else { c };
                out[x ^ a as usize] += s * amp;
            }
        }
        StateVector::from_amplitudes(self.m, out)
    }

    /// `‖AᵀA - I‖_max ≤ tol`, checked on the dense form.
    pub fn is_orthogonal(&self, tol: f64) -> Result<bool> {
        Ok(self.to_dense()?.is_orthogonal(tol))
    }

    /// Largest coefficient difference over the union of supports.
    pub fn max_coeff_diff(&self, rhs: &NqaOperator) -> Result<f64> {
        check_same_m(self.m, rhs.m)?;
        let mut worst = 0.0f64;
        for (w, a) in &self.terms {
            worst = worst.max((a - rhs.coefficient(w)).abs());
        }
        for (w, b) in &rhs.terms {
            if !self.terms.contains_key(w) {
                worst = worst.max(b.abs());
            }
        }
        Ok(worst)
    }

    pub fn approx_eq(&self, rhs: &NqaOperator, tol: f64) -> bool {
        self.max_coeff_diff(rhs).is_ok_and(|d| d <= tol)
    }
}

/// Dense Kronecker product of a word's blocks.
pub fn word_dense(w: &NqaWord) -> DenseMatrix {
    let mut acc = DenseMatrix::identity(1);
    for b in w.blocks() {
        let m = b.matrix();
        let block = DenseMatrix::from_rows(&[m[0].to_vec(), m[1].to_vec()]).expect("2x2");
        acc = acc.kron(&block);
    }
    acc
}

fn walsh_hadamard(v: &mut [f64]) {
    let mut h = 1;
    while h < v.len() {
        for chunk in v.chunks_mut(2 * h) {
            let (lo, hi) = chunk.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

impl fmt::Display for NqaOperator {
    /// Canonical text form, e.g. `0.5*II + 0.5*IZ - 0.5*ZZ`; the parser reads
    /// it back to the same coefficient table.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0*{}", NqaWord::identity(self.m.max(1)));
        }
        for (i, (w, &c)) in self.terms.iter().enumerate() {
            let sep = match (i, c < 0.0) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let mag = c.abs();
            if mag == 1.0 {
                write!(f, "{sep}{w}")?;
            } else {
                write!(f, "{sep}{mag}*{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NqaOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NqaOperator(m={}: {self})", self.m)
    }
}
