//! Real block-word arithmetic for qubit operators.
//!
//! Every real `2^m × 2^m` matrix is a unique real combination of the `4^m`
//! words `⊗ₖ X^{αₖ} Z^{βₖ}` built from
//!
//! ```text
//! I = [1 0]   X = [0 1]   Z = [1  0]   W = XZ = [0 -1]
//!     [0 1]       [1 0]       [0 -1]            [1  0]
//! ```
//!
//! Words multiply by XOR of their index vectors plus a sign, so operator
//! algebra reduces to bit operations on coefficient tables.
//!
//! ```
//! use nqa::{NqaOperator, eval_str};
//!
//! let h = eval_str("1/sqrt(2)*(X+Z)")?;
//! let hzh = h.mul(&eval_str("Z")?)?.mul(&h)?;
//! assert!(hzh.approx_eq(&eval_str("X")?, 1e-15));
//!
//! let cz = eval_str("CZ(1,2)")?;
//! assert_eq!(cz.mul(&cz)?, NqaOperator::identity(2));
//! # Ok::<(), nqa::NqaError>(())
//! ```

pub mod algorithms;
pub mod chsh;
pub mod clifford22;
mod error;
pub mod factored;
pub mod gates;
pub mod linalg;
pub mod operator;
pub mod parser;
pub mod realify;
pub mod verify;
pub mod word;

pub use error::{NqaError, Result};
pub use factored::{FactoredOperator, LinearMap};
pub use linalg::{DenseMatrix, StateVector};
pub use operator::NqaOperator;
pub use parser::{eval_str, evaluate, parse};
pub use realify::ComplexNqaOperator;
pub use word::{epsilon, omega, BlockIndex, NqaWord, Sign, SignedWord};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/words.md")]
    mod words {}
    #[doc = include_str!("../../../book/src/operators.md")]
    mod operators {}
    #[doc = include_str!("../../../book/src/realification.md")]
    mod realification {}
    #[doc = include_str!("../../../book/src/gates.md")]
    mod gates {}
    #[doc = include_str!("../../../book/src/clifford.md")]
    mod clifford {}
    #[doc = include_str!("../../../book/src/algorithms.md")]
    mod algorithms {}
    #[doc = include_str!("../../../book/src/chsh.md")]
    mod chsh {}
    #[doc = include_str!("../../../book/src/expressions.md")]
    mod expressions {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
