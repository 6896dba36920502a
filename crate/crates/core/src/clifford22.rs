//! The two-qubit dictionary between block words and `Cl(2,2)` monomials.
//!
//! Generators are `e₁ = XI`, `e₂ = ZI`, `e₃ = WX`, `e₄ = WZ`, with
//! `e₁² = e₂² = +1` and `e₃² = e₄² = -1`.

use std::fmt;

use crate::error::{NqaError, Result};
use crate::operator::NqaOperator;
use crate::word::{NqaWord, Sign, SignedWord};

const GENERATOR_LITERALS: [&str; 4] = ["XI", "ZI", "WX", "WZ"];

/// `±e_{i₁}⋯e_{i_k}` with `i₁ < ⋯ < i_k`; bit `i - 1` of `mask` marks `eᵢ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CliffordMonomial {
    pub sign: Sign,
    mask: u8,
}

impl CliffordMonomial {
    pub const ONE: CliffordMonomial = CliffordMonomial {
        sign: Sign::PLUS,
        mask: 0,
    };

    pub fn new(sign: Sign, mask: u8) -> Result<Self> {
        if mask > 0b1111 {
            return Err(NqaError::InvalidValue(format!("generator mask {mask:#b}")));
        }
        Ok(CliffordMonomial { sign, mask })
    }

    /// Canonical monomial of a product of generators given in any order,
    /// e.g. `[3, 1]` gives `-e₁e₃`.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        indices.iter().try_fold(Self::ONE, |acc, &i| {
            let g = Self::generator(i)?;
            Ok(acc * g)
        })
    }

    pub fn generator(i: usize) -> Result<Self> {
        if !(1..=4).contains(&i) {
            return Err(NqaError::InvalidValue(format!("no generator e{i}")));
        }
        Ok(CliffordMonomial {
            sign: Sign::PLUS,
            mask: 1 << (i - 1),
        })
    }

    pub fn mask(self) -> u8 {
        self.mask
    }

    pub fn indices(self) -> Vec<usize> {
        (1..=4).filter(|i| self.mask & (1 << (i - 1)) != 0).collect()
    }

    pub fn grade(self) -> usize {
        self.mask.count_ones() as usize
    }
}

impl std::ops::Mul for CliffordMonomial {
    type Output = CliffordMonomial;

    fn mul(self, rhs: CliffordMonomial) -> CliffordMonomial {
        let mut negative = self.sign.is_negative() ^ rhs.sign.is_negative();
        // move each right factor past the larger left factors
        for j in 0..4 {
            if rhs.mask & (1 << j) != 0 {
                let larger = self.mask & !((2u8 << j) - 1);
                negative ^= larger.count_ones() & 1 == 1;
            }
        }
        // e₃² = e₄² = -1
        negative ^= (self.mask & rhs.mask & 0b1100).count_ones() & 1 == 1;
        CliffordMonomial {
            sign: Sign::from_parity(negative),
            mask: self.mask ^ rhs.mask,
        }
    }
}

impl fmt::Display for CliffordMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign.is_negative() {
            f.write_str("-")?;
        }
        match self.mask {
            0 => f.write_str("1"),
            0b1111 => f.write_str("ω"),
            _ => {
                for i in self.indices() {
                    write!(f, "e{i}")?;
                }
                Ok(())
            }
        }
    }
}

fn generator_word(i: usize) -> NqaWord {
    GENERATOR_LITERALS[i - 1].parse().expect("valid literal")
}

/// `eᵢ` as a single-word operator on 2 slots.
pub fn generator(i: usize) -> Result<NqaOperator> {
    CliffordMonomial::generator(i)?;
    Ok(NqaOperator::from_word(generator_word(i)))
}

/// The signed word equal to a monomial.
pub fn monomial_to_word(mono: CliffordMonomial) -> SignedWord {
    let start = SignedWord::new(mono.sign, NqaWord::identity(2));
    mono.indices().into_iter().fold(start, |acc, i| {
        acc.mul(&SignedWord::from(generator_word(i)))
            .expect("m = 2")
    })
}

/// The monomial equal to a two-slot word.
pub fn word_to_monomial(u: &NqaWord) -> Result<CliffordMonomial> {
    if u.m() != 2 {
        return Err(NqaError::DimensionMismatch {
            left: u.m(),
            right: 2,
        });
    }
    let mono = (0u8..16)
        .find_map(|mask| {
            let sw = monomial_to_word(CliffordMonomial {
                sign: Sign::PLUS,
                mask,
            });
            (&sw.word == u).then_some(CliffordMonomial {
                sign: sw.sign,
                mask,
            })
        })
        .expect("the 16 monomials cover all 16 words");
    Ok(mono)
}

/// `ω = e₁e₂e₃e₄`.
pub fn pseudoscalar() -> NqaOperator {
    let sw = monomial_to_word(CliffordMonomial {
        sign: Sign::PLUS,
        mask: 0b1111,
    });
    NqaOperator::from_signed(&sw)
}

pub fn grade(u: &NqaWord) -> Result<usize> {
    word_to_monomial(u).map(CliffordMonomial::grade)
}

/// One row of the dictionary.
#[derive(Debug, Clone, PartialEq)]
pub struct DictionaryRow {
    pub word: NqaWord,
    pub pauli: &'static str,
    pub monomial: CliffordMonomial,
    pub label: &'static str,
}

const ROWS: [(&str, &str, &str); 16] = [
    ("II", "I⊗I", "1⊗1"),
    ("XI", "X⊗I", "X₁"),
    ("ZI", "Z⊗I", "Z₁"),
    ("WX", "(-i)Y⊗X", "(-i)Y₁X₂"),
    ("WZ", "(-i)Y⊗Z", "(-i)Y₁Z₂"),
    ("WI", "(-i)Y⊗I", "(-i)Y₁"),
    ("ZX", "Z⊗X", "Z₁X₂"),
    ("ZZ", "Z⊗Z", "Z₁Z₂"),
    ("XX", "X⊗X", "X₁X₂"),
    ("XZ", "X⊗Z", "X₁Z₂"),
    ("IW", "I⊗(-i)Y", "(-i)Y₂"),
    ("IX", "I⊗X", "X₂"),
    ("IZ", "I⊗Z", "Z₂"),
    ("XW", "X⊗(-i)Y", "(-i)X₁Y₂"),
    ("ZW", "Z⊗(-i)Y", "(-i)Z₁Y₂"),
    ("WW", "-Y⊗Y", "-Y₁Y₂"),
];

/// All 16 rows, grouped by grade; monomials are computed, not stored.
pub fn dictionary() -> Vec<DictionaryRow> {
    ROWS.iter()
        .map(|&(lit, pauli, label)| {
            let word: NqaWord = lit.parse().expect("valid literal");
            let monomial = word_to_monomial(&word).expect("m = 2");
            DictionaryRow {
                word,
                pauli,
                monomial,
                label,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DenseMatrix;

    fn w(s: &str) -> NqaWord {
        s.parse().unwrap()
    }

    #[test]
    fn generators_and_squares() {
        assert_eq!(generator(1).unwrap(), NqaOperator::from_word(w("XI")));
        assert_eq!(generator(3).unwrap(), NqaOperator::from_word(w("WX")));
        assert!(generator(0).is_err());
        assert!(generator(5).is_err());
        let id = NqaOperator::identity(2);
        for (i, sq) in [(1, 1.0), (2, 1.0), (3, -1.0), (4, -1.0)] {
            let e = generator(i).unwrap();
            assert_eq!(e.mul(&e).unwrap(), id.scale(sq));
        }
    }

    #[test]
    fn monomial_product_rule() {
        let e = |i| CliffordMonomial::generator(i).unwrap();
        assert_eq!((e(2) * e(1)).to_string(), "-e1e2");
        assert_eq!((e(3) * e(3)).to_string(), "-1");
        assert_eq!((e(1) * e(1)).to_string(), "1");
        assert_eq!(CliffordMonomial::from_indices(&[4, 3, 2, 1]).unwrap().to_string(), "ω");
    }

    #[test]
    fn dictionary_examples() {
        let e12 = CliffordMonomial::from_indices(&[1, 2]).unwrap();
        assert_eq!(monomial_to_word(e12), SignedWord::new(Sign::PLUS, w("WI")));
        assert_eq!(word_to_monomial(&w("XX")).unwrap().to_string(), "-e2e3");
        assert_eq!(
            monomial_to_word(CliffordMonomial::ONE),
            SignedWord::from(w("II"))
        );
        assert!(word_to_monomial(&w("X")).is_err());
    }

    #[test]
    fn pseudoscalar_is_minus_ww() {
        let omega = pseudoscalar();
        assert_eq!(omega, NqaOperator::from_word(w("WW")).scale(-1.0));
        let d = omega.to_dense().unwrap();
        assert_eq!(d.mat_mul(&d).unwrap(), DenseMatrix::identity(4));
    }

    #[test]
    fn grades() {
        assert_eq!(grade(&w("II")).unwrap(), 0);
        assert_eq!(grade(&w("IX")).unwrap(), 3);
        assert_eq!(grade(&w("WW")).unwrap(), 4);
    }

    #[test]
    fn round_trip_all_words() {
        for u in NqaWord::enumerate(2) {
            let mono = word_to_monomial(&u).unwrap();
            assert_eq!(monomial_to_word(mono), SignedWord::from(u));
        }
    }
}
