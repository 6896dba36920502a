//! Operators kept as unexpanded products.
//!
//! Multi-controlled Z, the Grover oracle and the diffusion operator all have
//! the shape `±(I - 2P)` where `P` is a product of one-slot projectors. Kept
//! that way they cost `O(|support|)` to describe and `O(2^m)` to apply;
//! expanding them yields `2^{|support|}` block terms.

use crate::error::{check_same_m, NqaError, Result};
use crate::linalg::{DenseMatrix, StateVector};
use crate::operator::NqaOperator;
use crate::word::{BlockIndex, NqaWord, Sign};

/// Something that acts on state vectors and has a dense form.
pub trait LinearMap {
    fn m(&self) -> usize;
    fn apply(&self, v: &StateVector) -> Result<StateVector>;
    fn to_dense(&self) -> Result<DenseMatrix>;
}

impl LinearMap for NqaOperator {
    fn m(&self) -> usize {
        NqaOperator::m(self)
    }
    fn apply(&self, v: &StateVector) -> Result<StateVector> {
        NqaOperator::apply(self, v)
    }
    fn to_dense(&self) -> Result<DenseMatrix> {
        NqaOperator::to_dense(self)
    }
}

/// Rank-one projector onto a single-slot state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalProjector {
    /// `|0⟩⟨0| = (I + Z)/2`
    Zero,
    /// `|1⟩⟨1| = (I - Z)/2`
    One,
    /// `|+⟩⟨+| = (I + X)/2`
    Plus,
    /// `|-⟩⟨-| = (I - X)/2`
    Minus,
}

impl LocalProjector {
    /// The computational-basis projector onto `bit`.
    pub fn basis(bit: bool) -> Self {
        if bit {
            LocalProjector::One
        } else {
            LocalProjector::Zero
        }
    }

    fn block_and_sign(self) -> (BlockIndex, f64) {
        match self {
            LocalProjector::Zero => (BlockIndex::Z, 1.0),
            LocalProjector::One => (BlockIndex::Z, -1.0),
            LocalProjector::Plus => (BlockIndex::X, 1.0),
            LocalProjector::Minus => (BlockIndex::X, -1.0),
        }
    }

    /// Two-term block form on slot `slot` of an `m`-slot register.
    pub fn on_slot(self, slot: usize, m: usize) -> Result<NqaOperator> {
        let (block, s) = self.block_and_sign();
        NqaOperator::from_terms(
            m,
            [
                (NqaWord::identity(m), 0.5),
                (NqaWord::single(block, slot, m)?, 0.5 * s),
            ],
        )
    }
}

/// A product `∏ₖ P^{(k)}` of one-slot projectors on distinct slots.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductProjector {
    m: usize,
    locals: Vec<(usize, LocalProjector)>,
}

impl ProductProjector {
    pub fn new(m: usize, locals: Vec<(usize, LocalProjector)>) -> Result<Self> {
        let mut seen = vec![false; m + 1];
        for &(slot, _) in &locals {
            if slot == 0 || slot > m {
                return Err(NqaError::SlotOutOfRange { slot, m });
            }
            if seen[slot] {
                return Err(NqaError::RepeatedSlot(slot));
            }
            seen[slot] = true;
        }
        Ok(ProductProjector { m, locals })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn locals(&self) -> &[(usize, LocalProjector)] {
        &self.locals
    }

    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        check_same_m(self.m, v.m())?;
        let mut out = v.clone();
        let amps = out.amplitudes_mut();
        let computational = self
            .locals
            .iter()
            .all(|(_, p)| matches!(p, LocalProjector::Zero | LocalProjector::One));
        if computational {
            // keep only the indices that match the pattern on the support
            let (mut mask, mut pattern) = (0usize, 0usize);
            for &(slot, p) in &self.locals {
                let bit = 1usize << (self.m - slot);
                mask |= bit;
                if p == LocalProjector::One {
                    pattern |= bit;
                }
            }
            for (x, a) in amps.iter_mut().enumerate() {
                if x & mask != pattern {
                    *a = 0.0;
                }
            }
            return Ok(out);
        }
        for &(slot, p) in &self.locals {
            let bit = 1usize << (self.m - slot);
            for x in 0..amps.len() {
                if x & bit != 0 {
                    continue;
                }
                let (v0, v1) = (amps[x], amps[x | bit]);
                let (n0, n1) = match p {
                    LocalProjector::Zero => (v0, 0.0),
                    LocalProjector::One => (0.0, v1),
                    LocalProjector::Plus => {
                        let h = 0.5 * (v0 + v1);
                        (h, h)
                    }
                    LocalProjector::Minus => {
                        let h = 0.5 * (v0 - v1);
                        (h, -h)
                    }
                };
                amps[x] = n0;
                amps[x | bit] = n1;
            }
        }
        Ok(out)
    }

    /// Multiply out the local factors into `2^{|support|}` block terms.
    pub fn expand(&self) -> Result<NqaOperator> {
        let mut acc = NqaOperator::identity(self.m);
        for &(slot, p) in &self.locals {
            acc = acc.mul(&p.on_slot(slot, self.m)?)?;
        }
        Ok(acc)
    }
}

/// `sign · (I - 2P)` for a product projector `P`.
#[derive(Debug, Clone, PartialEq)]
pub struct Reflection {
    pub sign: Sign,
    pub projector: ProductProjector,
}

impl Reflection {
    pub fn new(sign: Sign, projector: ProductProjector) -> Self {
        Reflection { sign, projector }
    }

    /// Number of local projector factors in the stored description.
    pub fn factor_count(&self) -> usize {
        self.projector.locals.len()
    }

    /// Number of block terms after expansion, without expanding.
    ///
    /// The projector contributes `2^c` distinct words with coefficients
    /// `±2^{-c}`; the identity term of `I - 2P` then has coefficient
    /// `1 - 2^{1-c}`, which cancels only for `c = 1`.
    pub fn expanded_term_count(&self) -> usize {
        match self.factor_count() {
            0 | 1 => 1,
            c => 1usize << c,
        }
    }

    pub fn expand(&self) -> Result<NqaOperator> {
        let p = self.projector.expand()?;
        Ok(NqaOperator::identity(self.projector.m)
            .sub(&p.scale(2.0))?
            .scale(self.sign.to_f64()))
    }
}

impl LinearMap for Reflection {
    fn m(&self) -> usize {
        self.projector.m
    }

    fn apply(&self, v: &StateVector) -> Result<StateVector> {
        let p = self.projector.apply(v)?;
        let s = self.sign.to_f64();
        let amps = v
            .amplitudes()
            .iter()
            .zip(p.amplitudes())
            .map(|(a, b)| s * (a - 2.0 * b))
            .collect();
        StateVector::from_amplitudes(v.m(), amps)
    }

    fn to_dense(&self) -> Result<DenseMatrix> {
        self.expand()?.to_dense()
    }
}

/// One factor of a [`FactoredOperator`].
#[derive(Debug, Clone, PartialEq)]
pub enum Factor {
    Sum(NqaOperator),
    Reflection(Reflection),
}

impl Factor {
    fn m(&self) -> usize {
        match self {
            Factor::Sum(op) => op.m(),
            Factor::Reflection(r) => LinearMap::m(r),
        }
    }

    pub fn expand(&self) -> Result<NqaOperator> {
        match self {
            Factor::Sum(op) => Ok(op.clone()),
            Factor::Reflection(r) => r.expand(),
        }
    }

    fn apply(&self, v: &StateVector) -> Result<StateVector> {
        match self {
            Factor::Sum(op) => op.apply(v),
            Factor::Reflection(r) => r.apply(v),
        }
    }
}

impl From<NqaOperator> for Factor {
    fn from(op: NqaOperator) -> Self {
        Factor::Sum(op)
    }
}

impl From<Reflection> for Factor {
    fn from(r: Reflection) -> Self {
        Factor::Reflection(r)
    }
}

/// An ordered product `F₁ F₂ ⋯ F_L`; the empty product is the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoredOperator {
    m: usize,
    factors: Vec<Factor>,
}

impl FactoredOperator {
    pub fn identity(m: usize) -> Self {
        FactoredOperator {
            m,
            factors: Vec::new(),
        }
    }

    pub fn new(m: usize, factors: Vec<Factor>) -> Result<Self> {
        for f in &factors {
            check_same_m(m, f.m())?;
        }
        Ok(FactoredOperator { m, factors })
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Append `factor` on the right.
    pub fn push(&mut self, factor: impl Into<Factor>) -> Result<()> {
        let factor = factor.into();
        check_same_m(self.m, factor.m())?;
        self.factors.push(factor);
        Ok(())
    }

    /// `self · rhs` as a longer factor list.
    pub fn then(&self, rhs: &FactoredOperator) -> Result<FactoredOperator> {
        check_same_m(self.m, rhs.m)?;
        let mut factors = self.factors.clone();
        factors.extend(rhs.factors.iter().cloned());
        Ok(FactoredOperator { m: self.m, factors })
    }

    /// Multiply everything out into a single coefficient table.
    pub fn expand(&self) -> Result<NqaOperator> {
        self.factors
            .iter()
            .try_fold(NqaOperator::identity(self.m), |acc, f| acc.mul(&f.expand()?))
    }
}

impl LinearMap for FactoredOperator {
    fn m(&self) -> usize {
        self.m
    }

    /// Factors act right to left.
    fn apply(&self, v: &StateVector) -> Result<StateVector> {
        check_same_m(self.m, v.m())?;
        self.factors
            .iter()
            .rev()
            .try_fold(v.clone(), |state, f| f.apply(&state))
    }

    fn to_dense(&self) -> Result<DenseMatrix> {
        let n = 1usize << self.m;
        self.factors
            .iter()
            .try_fold(DenseMatrix::identity(n), |acc, f| {
                acc.mat_mul(&f.expand()?.to_dense()?)
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis_reflection(m: usize, bits: &[bool]) -> Reflection {
        let locals = bits
            .iter()
            .enumerate()
            .map(|(i, &b)| (i + 1, LocalProjector::basis(b)))
            .collect();
        Reflection::new(Sign::PLUS, ProductProjector::new(m, locals).unwrap())
    }

    #[test]
    fn local_projectors_expand_to_two_terms() {
        let p1 = LocalProjector::One.on_slot(1, 1).unwrap();
        assert_eq!(p1, NqaOperator::from_literals(&[("I", 0.5), ("Z", -0.5)]).unwrap());
        let plus = LocalProjector::Plus.on_slot(2, 2).unwrap();
        assert_eq!(
            plus,
            NqaOperator::from_literals(&[("II", 0.5), ("IX", 0.5)]).unwrap()
        );
    }

    #[test]
    fn projector_validation() {
        assert!(ProductProjector::new(2, vec![(3, LocalProjector::Zero)]).is_err());
        assert!(matches!(
            ProductProjector::new(2, vec![(1, LocalProjector::Zero), (1, LocalProjector::One)]),
            Err(NqaError::RepeatedSlot(1))
        ));
    }

    #[test]
    fn reflection_apply_matches_expansion() {
        let r = Reflection::new(
            Sign::MINUS,
            ProductProjector::new(
                3,
                vec![
                    (1, LocalProjector::Plus),
                    (2, LocalProjector::One),
                    (3, LocalProjector::Minus),
                ],
            )
            .unwrap(),
        );
        let dense = r.to_dense().unwrap();
        for i in 0..8 {
            let e = StateVector::basis(3, i).unwrap();
            let got = r.apply(&e).unwrap();
            let want = dense.mat_vec(e.amplitudes()).unwrap();
            for (a, b) in got.amplitudes().iter().zip(&want) {
                assert!((a - b).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn reflection_term_counts() {
        for c in 1..=4 {
            let r = basis_reflection(4, &vec![true; c]);
            assert_eq!(r.expand().unwrap().len(), r.expanded_term_count());
        }
        let single = basis_reflection(1, &[true]);
        assert_eq!(single.expand().unwrap(), NqaOperator::from_literals(&[("Z", 1.0)]).unwrap());
    }

    #[test]
    fn empty_product_is_identity() {
        let f = FactoredOperator::identity(2);
        assert_eq!(f.expand().unwrap(), NqaOperator::identity(2));
        let v = StateVector::basis(2, 3).unwrap();
        assert_eq!(f.apply(&v).unwrap(), v);
    }

    #[test]
    fn factors_apply_right_to_left() {
        let x = NqaOperator::from_literals(&[("XI", 1.0)]).unwrap();
        let p0 = LocalProjector::Zero.on_slot(1, 2).unwrap();
        // P0 · X applied to |00> is P0|10> = 0
        let f = FactoredOperator::new(2, vec![p0.into(), x.into()]).unwrap();
        let out = f.apply(&StateVector::zero(2).unwrap()).unwrap();
        assert!(out.amplitudes().iter().all(|&a| a == 0.0));
        assert!(FactoredOperator::new(3, vec![NqaOperator::identity(2).into()]).is_err());
    }
}
