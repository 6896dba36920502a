//! Complex operators `A + iB` and their real image `Φ(A + iB) = A⊗I + B⊗W`.
//!
//! The phase lane is the last slot. Because `W² = -I`, the span of `{I, W}`
//! is a copy of the complex numbers and `Φ` is multiplicative; it also turns
//! the conjugate transpose into the plain transpose.
//!
//! The block-matrix picture `[[A, -B], [B, A]]` corresponds to putting the
//! phase lane first instead; the two differ by a slot permutation.

use crate::error::{check_same_m, Result};
use crate::operator::NqaOperator;
use crate::word::{BlockIndex, NqaWord};

/// `U = re + i·im` on `m` slots.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexNqaOperator {
    re: NqaOperator,
    im: NqaOperator,
}

impl ComplexNqaOperator {
    pub fn new(re: NqaOperator, im: NqaOperator) -> Result<Self> {
        check_same_m(re.m(), im.m())?;
        Ok(ComplexNqaOperator { re, im })
    }

    pub fn real(re: NqaOperator) -> Self {
        let im = NqaOperator::zero(re.m());
        ComplexNqaOperator { re, im }
    }

    pub fn identity(m: usize) -> Self {
        Self::real(NqaOperator::identity(m))
    }

    pub fn m(&self) -> usize {
        self.re.m()
    }

    pub fn re(&self) -> &NqaOperator {
        &self.re
    }

    pub fn im(&self) -> &NqaOperator {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        Ok(ComplexNqaOperator {
            re: self.re.add(&rhs.re)?,
            im: self.im.add(&rhs.im)?,
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        Ok(ComplexNqaOperator {
            re: self.re.sub(&rhs.re)?,
            im: self.im.sub(&rhs.im)?,
        })
    }

    /// Multiply by the complex scalar `a + ib`.
    pub fn scale(&self, a: f64, b: f64) -> Self {
        ComplexNqaOperator {
            re: self
                .re
                .scale(a)
                .sub(&self.im.scale(b))
                .expect("same m"),
            im: self
                .re
                .scale(b)
                .add(&self.im.scale(a))
                .expect("same m"),
        }
    }

    /// `(A + iB)(C + iD) = (AC - BD) + i(AD + BC)`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        check_same_m(self.m(), rhs.m())?;
        let re = self.re.mul(&rhs.re)?.sub(&self.im.mul(&rhs.im)?)?;
        let im = self.re.mul(&rhs.im)?.add(&self.im.mul(&rhs.re)?)?;
        Ok(ComplexNqaOperator { re, im })
    }

    /// `(A + iB)† = Aᵀ - iBᵀ`.
    pub fn dagger(&self) -> Self {
        ComplexNqaOperator {
            re: self.re.transpose(),
            im: self.im.transpose().scale(-1.0),
        }
    }

    /// `(A + iB) ⊗ (C + iD)`.
    pub fn tensor(&self, rhs: &Self) -> Self {
        let re = self
            .re
            .tensor(&rhs.re)
            .sub(&self.im.tensor(&rhs.im))
            .expect("same m");
        let im = self
            .re
            .tensor(&rhs.im)
            .add(&self.im.tensor(&rhs.re))
            .expect("same m");
        ComplexNqaOperator { re, im }
    }

    /// Realification: every real term gains a trailing `I`, every imaginary
    /// term a trailing `W`.
    pub fn phi(&self) -> NqaOperator {
        let i = NqaOperator::identity(1);
        let w = NqaOperator::from_word(NqaWord::single(BlockIndex::W, 1, 1).expect("slot 1"));
        self.re
            .tensor(&i)
            .add(&self.im.tensor(&w))
            .expect("both have m + 1 slots")
    }

    /// Undo [`phi`](Self::phi) when the operator lies in its image: it must
    /// only carry `I` or `W` on the last slot.
    pub fn unphi(op: &NqaOperator) -> Option<Self> {
        let m = op.m().checked_sub(1).filter(|&m| m >= 1)?;
        let mut re = Vec::new();
        let mut im = Vec::new();
        for (w, c) in op.terms() {
            let head: Vec<_> = w.blocks().take(m).collect();
            let head = NqaWord::from_blocks(&head).ok()?;
            match w.slot(m + 1) {
                BlockIndex::I => re.push((head, c)),
                BlockIndex::W => im.push((head, c)),
                _ => return None,
            }
        }
        Some(ComplexNqaOperator {
            re: NqaOperator::from_terms(m, re).ok()?,
            im: NqaOperator::from_terms(m, im).ok()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn op(terms: &[(&str, f64)]) -> NqaOperator {
        NqaOperator::from_literals(terms).unwrap()
    }

    fn s_gate() -> ComplexNqaOperator {
        ComplexNqaOperator::new(
            op(&[("II", FRAC_1_SQRT_2)]),
            op(&[("ZI", -FRAC_1_SQRT_2)]),
        )
        .unwrap()
    }

    #[test]
    fn phi_of_s() {
        let expect = op(&[("III", FRAC_1_SQRT_2), ("ZIW", -FRAC_1_SQRT_2)]);
        assert_eq!(s_gate().phi(), expect);
    }

    #[test]
    fn phi_of_real_is_tensor_identity() {
        let h = op(&[("X", FRAC_1_SQRT_2), ("Z", FRAC_1_SQRT_2)]);
        assert_eq!(
            ComplexNqaOperator::real(h.clone()).phi(),
            h.tensor(&NqaOperator::identity(1))
        );
    }

    #[test]
    fn phi_is_multiplicative_on_s() {
        let s = s_gate();
        let ss = s.mul(&s).unwrap();
        let lhs = ss.phi().to_dense().unwrap();
        let rhs = s.phi().to_dense().unwrap().mat_mul(&s.phi().to_dense().unwrap()).unwrap();
        assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-15);
    }

    #[test]
    fn times_identity() {
        let s = s_gate();
        assert_eq!(s.mul(&ComplexNqaOperator::identity(2)).unwrap(), s);
        assert!(s.mul(&ComplexNqaOperator::identity(3)).is_err());
    }

    #[test]
    fn dagger_is_transpose_of_phi() {
        let u = ComplexNqaOperator::new(op(&[("XW", 1.0), ("ZI", 2.0)]), op(&[("WZ", 0.5), ("IW", -1.0)]))
            .unwrap();
        assert_eq!(
            u.dagger().phi().to_dense().unwrap(),
            u.phi().to_dense().unwrap().transpose()
        );
    }

    #[test]
    fn unphi_inverts_phi() {
        let s = s_gate();
        assert_eq!(ComplexNqaOperator::unphi(&s.phi()), Some(s));
        assert_eq!(ComplexNqaOperator::unphi(&op(&[("XX", 1.0)])), None);
    }

    #[test]
    fn complex_scale() {
        // i · (1 + 0i) I = i I
        let u = ComplexNqaOperator::identity(1).scale(0.0, 1.0);
        assert!(u.re().is_zero());
        assert_eq!(u.im(), &NqaOperator::identity(1));
    }
}
