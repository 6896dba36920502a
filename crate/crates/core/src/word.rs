//! Bit-packed block words and their twisted product.
//!
//! A word on `m` slots is the Kronecker product `⊗ₖ X^{αₖ} Z^{βₖ}` named by
//! two `m`-bit vectors. Multiplication XORs the index vectors and picks up the
//! sign `(-1)^{β·α'}` from moving the Z factors of the left word past the X
//! factors of the right one. Every sign in the crate follows from that single
//! convention (X left of Z inside each slot).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{check_same_m, NqaError, Result};

/// One slot of a word: `I`, `X`, `Z` or `W = XZ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockIndex {
    I,
    X,
    Z,
    W,
}

impl BlockIndex {
    pub const ALL: [BlockIndex; 4] = [BlockIndex::I, BlockIndex::X, BlockIndex::Z, BlockIndex::W];

    /// `(a, b)` with the block equal to `X^a Z^b`.
    pub fn bits(self) -> (bool, bool) {
        match self {
            BlockIndex::I => (false, false),
            BlockIndex::X => (true, false),
            BlockIndex::Z => (false, true),
            BlockIndex::W => (true, true),
        }
    }

    pub fn from_bits(a: bool, b: bool) -> Self {
        match (a, b) {
            (false, false) => BlockIndex::I,
            (true, false) => BlockIndex::X,
            (false, true) => BlockIndex::Z,
            (true, true) => BlockIndex::W,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            BlockIndex::I => 'I',
            BlockIndex::X => 'X',
            BlockIndex::Z => 'Z',
            BlockIndex::W => 'W',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(BlockIndex::I),
            'X' => Some(BlockIndex::X),
            'Z' => Some(BlockIndex::Z),
            'W' => Some(BlockIndex::W),
            _ => None,
        }
    }

    /// The real 2×2 matrix of the block, row-major.
    pub fn matrix(self) -> [[f64; 2]; 2] {
        match self {
            BlockIndex::I => [[1.0, 0.0], [0.0, 1.0]],
            BlockIndex::X => [[0.0, 1.0], [1.0, 0.0]],
            BlockIndex::Z => [[1.0, 0.0], [0.0, -1.0]],
            BlockIndex::W => [[0.0, -1.0], [1.0, 0.0]],
        }
    }

    // literal order I < W < X < Z
    fn rank(self) -> u8 {
        match self {
            BlockIndex::I => 0,
            BlockIndex::W => 1,
            BlockIndex::X => 2,
            BlockIndex::Z => 3,
        }
    }
}

/// A sign `±1`, stored as a single "is negative" bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Sign(bool);

impl Sign {
    pub const PLUS: Sign = Sign(false);
    pub const MINUS: Sign = Sign(true);

    /// `(-1)^parity`.
    pub fn from_parity(parity: bool) -> Self {
        Sign(parity)
    }

    pub fn is_negative(self) -> bool {
        self.0
    }

    pub fn value(self) -> i32 {
        if self.0 {
            -1
        } else {
            1
        }
    }

    pub fn to_f64(self) -> f64 {
        if self.0 {
            -1.0
        } else {
            1.0
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Sign) -> Sign {
        Sign(self.0 ^ rhs.0)
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        Sign(!self.0)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.0 { "-" } else { "+" })
    }
}

type Limbs = SmallVec<[u64; 2]>;

const LIMB_BITS: usize = u64::BITS as usize;

fn limb_count(m: usize) -> usize {
    m.div_ceil(LIMB_BITS)
}

fn and_parity(a: &Limbs, b: &Limbs) -> bool {
    let mut acc = 0u64;
    for (x, y) in a.iter().zip(b.iter()) {
        acc ^= x & y;
    }
    acc.count_ones() & 1 == 1
}

fn xor(a: &Limbs, b: &Limbs) -> Limbs {
    a.iter().zip(b.iter()).map(|(x, y)| x ^ y).collect()
}

fn get_bit(limbs: &Limbs, i: usize) -> bool {
    (limbs[i / LIMB_BITS] >> (i % LIMB_BITS)) & 1 == 1
}

fn set_bit(limbs: &mut Limbs, i: usize) {
    limbs[i / LIMB_BITS] |= 1u64 << (i % LIMB_BITS);
}

/// A block word `B(α, β)` on `m ≥ 1` slots.
///
/// Slot `k` (1-based, leftmost in the literal) lives at bit `k - 1` of the
/// packed `α`/`β` vectors. Bits above `m` are always zero, so equality and
/// hashing can work on the raw limbs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NqaWord {
    m: usize,
    alpha: Limbs,
    beta: Limbs,
}

impl NqaWord {
    /// `I^{⊗m}`.
    ///
    /// # Panics
    /// If `m == 0`; words always have at least one slot.
    pub fn identity(m: usize) -> Self {
        assert!(m >= 1, "a word needs at least one slot");
        let n = limb_count(m);
        NqaWord {
            m,
            alpha: SmallVec::from_elem(0, n),
            beta: SmallVec::from_elem(0, n),
        }
    }

    pub fn from_blocks(blocks: &[BlockIndex]) -> Result<Self> {
        if blocks.is_empty() {
            return Err(NqaError::InvalidLiteral(String::new()));
        }
        let mut w = NqaWord::identity(blocks.len());
        for (i, b) in blocks.iter().enumerate() {
            let (a, z) = b.bits();
            if a {
                set_bit(&mut w.alpha, i);
            }
            if z {
                set_bit(&mut w.beta, i);
            }
        }
        Ok(w)
    }

    /// Build a word from explicit bit vectors (`alpha[k-1]` is slot `k`).
    pub fn from_bit_vectors(alpha: &[bool], beta: &[bool]) -> Result<Self> {
        check_same_m(alpha.len(), beta.len())?;
        let blocks: Vec<_> = alpha
            .iter()
            .zip(beta)
            .map(|(&a, &b)| BlockIndex::from_bits(a, b))
            .collect();
        Self::from_blocks(&blocks)
    }

    /// `block` in slot `slot` (1-based), identity elsewhere.
    pub fn single(block: BlockIndex, slot: usize, m: usize) -> Result<Self> {
        if slot == 0 || slot > m {
            return Err(NqaError::SlotOutOfRange { slot, m });
        }
        let mut w = NqaWord::identity(m);
        let (a, b) = block.bits();
        if a {
            set_bit(&mut w.alpha, slot - 1);
        }
        if b {
            set_bit(&mut w.beta, slot - 1);
        }
        Ok(w)
    }

    /// Build a word from raw limbs, masking anything above bit `m`.
    pub fn from_limbs(m: usize, alpha: &[u64], beta: &[u64]) -> Self {
        let mut w = NqaWord::identity(m);
        for (i, limb) in w.alpha.iter_mut().enumerate() {
            *limb = alpha.get(i).copied().unwrap_or(0);
        }
        for (i, limb) in w.beta.iter_mut().enumerate() {
            *limb = beta.get(i).copied().unwrap_or(0);
        }
        w.mask_tail();
        w
    }

    fn mask_tail(&mut self) {
        let rem = self.m % LIMB_BITS;
        if rem != 0 {
            let mask = (1u64 << rem) - 1;
            let last = self.alpha.len() - 1;
            self.alpha[last] &= mask;
            self.beta[last] &= mask;
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn alpha_limbs(&self) -> &[u64] {
        &self.alpha
    }

    pub fn beta_limbs(&self) -> &[u64] {
        &self.beta
    }

    /// Block in slot `k` (1-based).
    ///
    /// # Panics
    /// If `k` is outside `1..=m`.
    pub fn slot(&self, k: usize) -> BlockIndex {
        assert!(k >= 1 && k <= self.m, "slot {k} out of range 1..={}", self.m);
        BlockIndex::from_bits(get_bit(&self.alpha, k - 1), get_bit(&self.beta, k - 1))
    }

    pub fn blocks(&self) -> impl Iterator<Item = BlockIndex> + '_ {
        (1..=self.m).map(move |k| self.slot(k))
    }

    pub fn is_identity(&self) -> bool {
        self.alpha.iter().chain(self.beta.iter()).all(|&l| l == 0)
    }

    /// The twisted product `B(α,β) B(α',β') = (-1)^{β·α'} B(α⊕α', β⊕β')`.
    pub fn mul(&self, rhs: &NqaWord) -> Result<SignedWord> {
        check_same_m(self.m, rhs.m)?;
        Ok(self.mul_unchecked(rhs))
    }

    #[inline]
    pub(crate) fn mul_unchecked(&self, rhs: &NqaWord) -> SignedWord {
        SignedWord {
            sign: Sign::from_parity(and_parity(&self.beta, &rhs.alpha)),
            word: NqaWord {
                m: self.m,
                alpha: xor(&self.alpha, &rhs.alpha),
                beta: xor(&self.beta, &rhs.beta),
            },
        }
    }

    /// `B(α,β)ᵀ = (-1)^{α·β} B(α,β)`.
    pub fn transpose(&self) -> SignedWord {
        SignedWord {
            sign: self.transpose_sign(),
            word: self.clone(),
        }
    }

    pub fn transpose_sign(&self) -> Sign {
        Sign::from_parity(and_parity(&self.alpha, &self.beta))
    }

    /// The `(Z₂)^{2m}` degree of the word, which is just `(α, β)`.
    pub fn degree(&self) -> (Vec<bool>, Vec<bool>) {
        let alpha = (0..self.m).map(|i| get_bit(&self.alpha, i)).collect();
        let beta = (0..self.m).map(|i| get_bit(&self.beta, i)).collect();
        (alpha, beta)
    }

    /// Hamming parity `(|α| + |β|) mod 2`.
    pub fn parity(&self) -> bool {
        let ones: u32 = self
            .alpha
            .iter()
            .chain(self.beta.iter())
            .map(|l| l.count_ones())
            .sum();
        ones & 1 == 1
    }

    /// Number of non-identity slots.
    pub fn weight(&self) -> usize {
        self.alpha
            .iter()
            .zip(self.beta.iter())
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// Words side by side: `self ⊗ rhs`.
    pub fn tensor(&self, rhs: &NqaWord) -> NqaWord {
        let mut blocks: Vec<_> = self.blocks().collect();
        blocks.extend(rhs.blocks());
        NqaWord::from_blocks(&blocks).expect("non-empty")
    }

    /// Bit masks over basis-state indices, slot 1 in the most significant
    /// position. `B(α,β)|x⟩ = (-1)^{popcount(β_mask & x)} |x ^ α_mask⟩`.
    ///
    /// # Panics
    /// If `m > 64`.
    pub fn index_masks(&self) -> (u64, u64) {
        assert!(self.m <= 64, "index masks need m <= 64");
        let mut a = 0u64;
        let mut b = 0u64;
        for k in 1..=self.m {
            let bit = 1u64 << (self.m - k);
            if get_bit(&self.alpha, k - 1) {
                a |= bit;
            }
            if get_bit(&self.beta, k - 1) {
                b |= bit;
            }
        }
        (a, b)
    }

    /// Inverse of [`NqaWord::index_masks`].
    ///
    /// # Panics
    /// If `m` is 0 or above 64.
    pub fn from_index_masks(m: usize, alpha_mask: u64, beta_mask: u64) -> Self {
        assert!((1..=64).contains(&m), "index masks need 1 <= m <= 64");
        let mut w = NqaWord::identity(m);
        for k in 1..=m {
            let bit = 1u64 << (m - k);
            if alpha_mask & bit != 0 {
                set_bit(&mut w.alpha, k - 1);
            }
            if beta_mask & bit != 0 {
                set_bit(&mut w.beta, k - 1);
            }
        }
        w
    }

    /// All `4^m` words in literal order. Meant for small `m`.
    pub fn enumerate(m: usize) -> Vec<NqaWord> {
        let mut out = vec![Vec::new()];
        for _ in 0..m {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<BlockIndex>| {
                    [BlockIndex::I, BlockIndex::W, BlockIndex::X, BlockIndex::Z]
                        .into_iter()
                        .map(move |b| {
                            let mut p = prefix.clone();
                            p.push(b);
                            p
                        })
                })
                .collect();
        }
        out.into_iter()
            .map(|b| NqaWord::from_blocks(&b).expect("m >= 1"))
            .collect()
    }
}

/// The symmetric form `Ω(g, h) = β·α' + β'·α (mod 2)`.
pub fn omega(g: &NqaWord, h: &NqaWord) -> Result<bool> {
    check_same_m(g.m, h.m)?;
    Ok(and_parity(&g.beta, &h.alpha) ^ and_parity(&h.beta, &g.alpha))
}

/// The commutation bicharacter `ε(g, h) = (-1)^{Ω(g, h)}`, so that
/// `B_g B_h = ε(g, h) B_h B_g`.
pub fn epsilon(g: &NqaWord, h: &NqaWord) -> Result<Sign> {
    omega(g, h).map(Sign::from_parity)
}

impl Ord for NqaWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.blocks()
            .map(BlockIndex::rank)
            .cmp(other.blocks().map(BlockIndex::rank))
    }
}

impl PartialOrd for NqaWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NqaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.blocks() {
            write!(f, "{}", b.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for NqaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B_{self}")
    }
}

impl FromStr for NqaWord {
    type Err = NqaError;

    fn from_str(s: &str) -> Result<Self> {
        let blocks = s
            .chars()
            .map(BlockIndex::from_char)
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| NqaError::InvalidLiteral(s.to_string()))?;
        NqaWord::from_blocks(&blocks).map_err(|_| NqaError::InvalidLiteral(s.to_string()))
    }
}

/// A word together with a sign; the sign is not folded into any coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedWord {
    pub sign: Sign,
    pub word: NqaWord,
}

impl SignedWord {
    pub fn new(sign: Sign, word: NqaWord) -> Self {
        SignedWord { sign, word }
    }

    pub fn mul(&self, rhs: &SignedWord) -> Result<SignedWord> {
        let p = self.word.mul(&rhs.word)?;
        Ok(SignedWord {
            sign: self.sign * rhs.sign * p.sign,
            word: p.word,
        })
    }

    pub fn transpose(&self) -> SignedWord {
        SignedWord {
            sign: self.sign * self.word.transpose_sign(),
            word: self.word.clone(),
        }
    }
}

impl From<NqaWord> for SignedWord {
    fn from(word: NqaWord) -> Self {
        SignedWord {
            sign: Sign::PLUS,
            word,
        }
    }
}

impl fmt::Display for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.sign, self.word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> NqaWord {
        s.parse().unwrap()
    }

    #[test]
    fn single_slot_relations() {
        let xz = w("X").mul(&w("Z")).unwrap();
        assert_eq!(xz, SignedWord::new(Sign::PLUS, w("W")));
        let zx = w("Z").mul(&w("X")).unwrap();
        assert_eq!(zx, SignedWord::new(Sign::MINUS, w("W")));
        let ww = w("W").mul(&w("W")).unwrap();
        assert_eq!(ww, SignedWord::new(Sign::MINUS, w("I")));
        assert_eq!(w("X").mul(&w("X")).unwrap(), w("I").into());
        assert_eq!(w("Z").mul(&w("Z")).unwrap(), w("I").into());
    }

    #[test]
    fn identity_is_neutral() {
        for u in NqaWord::enumerate(3) {
            assert_eq!(NqaWord::identity(3).mul(&u).unwrap(), u.clone().into());
            assert_eq!(u.mul(&NqaWord::identity(3)).unwrap(), u.into());
        }
    }

    #[test]
    fn transpose_signs() {
        assert_eq!(w("W").transpose().sign, Sign::MINUS);
        assert_eq!(w("X").transpose().sign, Sign::PLUS);
        assert_eq!(w("WW").transpose().sign, Sign::PLUS);
        assert_eq!(w("WWW").transpose().sign, Sign::MINUS);
    }

    #[test]
    fn omega_examples() {
        assert!(omega(&w("X"), &w("Z")).unwrap());
        assert_eq!(epsilon(&w("X"), &w("Z")).unwrap(), Sign::MINUS);
        for g in NqaWord::enumerate(2) {
            assert_eq!(epsilon(&g, &g).unwrap(), Sign::PLUS);
            assert_eq!(epsilon(&NqaWord::identity(2), &g).unwrap(), Sign::PLUS);
        }
    }

    #[test]
    fn parity_examples() {
        assert!(!w("W").parity());
        assert!(w("X").parity());
        assert!(!w("IIII").parity());
        assert!(!w("WXZ").parity());
    }

    #[test]
    fn mismatched_slots_error() {
        assert_eq!(
            w("X").mul(&w("XX")),
            Err(NqaError::DimensionMismatch { left: 1, right: 2 })
        );
        assert!(omega(&w("X"), &w("XX")).is_err());
    }

    #[test]
    fn literal_round_trip_and_order() {
        let u = w("ZIWX");
        assert_eq!(u.to_string(), "ZIWX");
        assert!(w("II") < w("IW"));
        assert!(w("IW") < w("IX"));
        assert!(w("IZ") < w("WI"));
        assert!("".parse::<NqaWord>().is_err());
        assert!("XY".parse::<NqaWord>().is_err());
        let all = NqaWord::enumerate(2);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(all.len(), 16);
    }

    #[test]
    fn block_bit_map_is_bijective() {
        for b in BlockIndex::ALL {
            let (a, z) = b.bits();
            assert_eq!(BlockIndex::from_bits(a, z), b);
            assert_eq!(BlockIndex::from_char(b.as_char()), Some(b));
        }
    }

    #[test]
    fn wide_words_span_limbs() {
        let mut lit = "I".repeat(130);
        lit.replace_range(0..1, "Z");
        lit.replace_range(129..130, "X");
        let u = w(&lit);
        assert_eq!(u.slot(1), BlockIndex::Z);
        assert_eq!(u.slot(130), BlockIndex::X);
        assert_eq!(u.to_string(), lit);
        let v = NqaWord::from_limbs(70, &[u64::MAX, u64::MAX], &[0, 0]);
        assert_eq!(v.weight(), 70);
    }

    #[test]
    fn index_masks_put_slot_one_high() {
        let (a, b) = w("XIZ").index_masks();
        assert_eq!(a, 0b100);
        assert_eq!(b, 0b001);
    }
}
