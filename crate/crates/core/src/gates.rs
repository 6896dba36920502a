//! Gate constructors in block form.
//!
//! Real gates come back as [`NqaOperator`]; gates that need a complex phase
//! come back as [`ComplexNqaOperator`] and are lifted with
//! [`ComplexNqaOperator::phi`] by the caller. Angles are in radians.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, FRAC_PI_8};

use crate::error::{NqaError, Result};
use crate::factored::{FactoredOperator, LocalProjector, ProductProjector, Reflection};
use crate::operator::NqaOperator;
use crate::realify::ComplexNqaOperator;
use crate::word::{BlockIndex, NqaWord, Sign};

/// Tolerance on `G² = ±I` for [`real_exponential`].
pub const EXPONENTIAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SingleGate {
    H,
    X,
    Z,
    W,
    /// `e^{-iπZ/4}`
    S,
    /// `e^{-iπZ/8}`
    T,
    /// `e^{-iθZ/2}`
    Rz(f64),
    /// `cos(θ/2) I + sin(θ/2) W`
    Ry(f64),
    /// `cos φ I + sin φ W`
    Rot(f64),
    /// `cos 2φ Z + sin 2φ X`
    Ref(f64),
    P0,
    P1,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GateOperator {
    Real(NqaOperator),
    Complex(ComplexNqaOperator),
}

impl GateOperator {
    /// The real operator: as-is for real gates, `Φ(U)` for phaseful ones.
    pub fn realified(&self) -> NqaOperator {
        match self {
            GateOperator::Real(op) => op.clone(),
            GateOperator::Complex(u) => u.phi(),
        }
    }

    pub fn as_complex(&self) -> ComplexNqaOperator {
        match self {
            GateOperator::Real(op) => ComplexNqaOperator::real(op.clone()),
            GateOperator::Complex(u) => u.clone(),
        }
    }

    pub fn into_real(self) -> Option<NqaOperator> {
        match self {
            GateOperator::Real(op) => Some(op),
            GateOperator::Complex(_) => None,
        }
    }
}

fn one_slot(terms: &[(BlockIndex, f64)]) -> NqaOperator {
    NqaOperator::from_terms(
        1,
        terms
            .iter()
            .map(|&(b, c)| (NqaWord::from_blocks(&[b]).expect("one block"), c)),
    )
    .expect("m = 1")
}

/// Place an operator on `slots` of an `m`-slot register (identity elsewhere).
/// Slot `slots[i]` receives slot `i + 1` of `op`.
pub fn embed(op: &NqaOperator, slots: &[usize], m: usize) -> Result<NqaOperator> {
    if slots.len() != op.m() {
        return Err(NqaError::DimensionMismatch {
            left: slots.len(),
            right: op.m(),
        });
    }
    let mut used = vec![false; m + 1];
    for &s in slots {
        if s == 0 || s > m {
            return Err(NqaError::SlotOutOfRange { slot: s, m });
        }
        if used[s] {
            return Err(NqaError::RepeatedSlot(s));
        }
        used[s] = true;
    }
    let terms = op.terms().map(|(w, c)| {
        let mut blocks = vec![BlockIndex::I; m];
        for (i, &s) in slots.iter().enumerate() {
            blocks[s - 1] = w.slot(i + 1);
        }
        (NqaWord::from_blocks(&blocks).expect("m >= 1"), c)
    });
    NqaOperator::from_terms(m, terms)
}

fn phase_rotation(half_angle: f64, slot: usize, m: usize) -> Result<ComplexNqaOperator> {
    // e^{-i a Z} = cos a I - i sin a Z
    let re = embed(&one_slot(&[(BlockIndex::I, half_angle.cos())]), &[slot], m)?;
    let im = embed(&one_slot(&[(BlockIndex::Z, -half_angle.sin())]), &[slot], m)?;
    ComplexNqaOperator::new(re, im)
}

pub fn single_gate(gate: SingleGate, slot: usize, m: usize) -> Result<GateOperator> {
    use BlockIndex::{I, W, X, Z};
    let local = match gate {
        SingleGate::H => one_slot(&[(X, FRAC_1_SQRT_2), (Z, FRAC_1_SQRT_2)]),
        SingleGate::X => one_slot(&[(X, 1.0)]),
        SingleGate::Z => one_slot(&[(Z, 1.0)]),
        SingleGate::W => one_slot(&[(W, 1.0)]),
        SingleGate::Ry(theta) => one_slot(&[(I, (theta / 2.0).cos()), (W, (theta / 2.0).sin())]),
        SingleGate::Rot(phi) => one_slot(&[(I, phi.cos()), (W, phi.sin())]),
        SingleGate::Ref(phi) => one_slot(&[(Z, (2.0 * phi).cos()), (X, (2.0 * phi).sin())]),
        SingleGate::P0 => one_slot(&[(I, 0.5), (Z, 0.5)]),
        SingleGate::P1 => one_slot(&[(I, 0.5), (Z, -0.5)]),
        SingleGate::S => return phase_rotation(FRAC_PI_4, slot, m).map(GateOperator::Complex),
        SingleGate::T => return phase_rotation(FRAC_PI_8, slot, m).map(GateOperator::Complex),
        SingleGate::Rz(theta) => {
            return phase_rotation(theta / 2.0, slot, m).map(GateOperator::Complex)
        }
    };
    embed(&local, &[slot], m).map(GateOperator::Real)
}

/// Shorthand for real single-slot gates; phaseful gates are an error here.
pub fn real_single(gate: SingleGate, slot: usize, m: usize) -> Result<NqaOperator> {
    single_gate(gate, slot, m)?
        .into_real()
        .ok_or_else(|| NqaError::InvalidValue(format!("{gate:?} is not a real gate")))
}

/// `H^{⊗m}` expanded: all `2^m` words over `{X, Z}` with coefficient
/// `2^{-m/2}`, which is exact for even `m`.
pub fn hadamard_layer(m: usize) -> NqaOperator {
    let c = (-(m as f64) / 2.0).exp2();
    let terms = (0..1u64 << m).map(|z| {
        let blocks: Vec<_> = (0..m)
            .map(|k| {
                if (z >> k) & 1 == 1 {
                    BlockIndex::Z
                } else {
                    BlockIndex::X
                }
            })
            .collect();
        (NqaWord::from_blocks(&blocks).expect("m >= 1"), c)
    });
    NqaOperator::from_terms(m, terms).expect("same m")
}

/// `H^{⊗m}` as `m` commuting local factors.
pub fn hadamard_layer_factored(m: usize) -> Result<FactoredOperator> {
    let factors = (1..=m)
        .map(|k| real_single(SingleGate::H, k, m).map(Into::into))
        .collect::<Result<Vec<_>>>()?;
    FactoredOperator::new(m, factors)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoGate {
    Cz,
    /// Control on the first slot, target on the second.
    Cnot,
    Swap,
    ParityEven,
    ParityOdd,
    /// `|b₁b₂⟩⟨b₁b₂|`
    BasisProjector(bool, bool),
}

fn two_slot(gate: TwoGate) -> NqaOperator {
    use BlockIndex::{I, W, X, Z};
    let lift = |a: NqaOperator, b: NqaOperator| a.tensor(&b);
    let p = |bit: bool| {
        if bit {
            one_slot(&[(I, 0.5), (Z, -0.5)])
        } else {
            one_slot(&[(I, 0.5), (Z, 0.5)])
        }
    };
    let id = one_slot(&[(I, 1.0)]);
    let sum = |a: NqaOperator, b: NqaOperator| a.add(&b).expect("m = 2");
    match gate {
        TwoGate::Cz => sum(lift(p(false), id), lift(p(true), one_slot(&[(Z, 1.0)]))),
        TwoGate::Cnot => sum(lift(p(false), id), lift(p(true), one_slot(&[(X, 1.0)]))),
        TwoGate::Swap => {
            // ½(II + XX + YY + ZZ) with YY = (iW)(iW) = -WW
            let b = |x: BlockIndex| one_slot(&[(x, 1.0)]);
            lift(b(I), b(I))
                .add(&lift(b(X), b(X)))
                .and_then(|s| s.sub(&lift(b(W), b(W))))
                .and_then(|s| s.add(&lift(b(Z), b(Z))))
                .expect("m = 2")
                .scale(0.5)
        }
        TwoGate::ParityEven | TwoGate::ParityOdd => {
            let s = if gate == TwoGate::ParityEven { 0.5 } else { -0.5 };
            sum(
                lift(id.clone(), id).scale(0.5),
                lift(one_slot(&[(Z, 1.0)]), one_slot(&[(Z, 1.0)])).scale(s),
            )
        }
        TwoGate::BasisProjector(b1, b2) => lift(p(b1), p(b2)),
    }
}

/// A two-slot gate on slots `(p, q)` of an `m`-slot register. For CNOT, `p`
/// is the control.
pub fn two_gate(gate: TwoGate, p: usize, q: usize, m: usize) -> Result<NqaOperator> {
    embed(&two_slot(gate), &[p, q], m)
}

/// Multi-controlled Z, `I - 2∏_{k∈C} P₁^{(k)}`, kept in product form.
pub fn mcz(controls: &[usize], m: usize) -> Result<FactoredOperator> {
    if controls.is_empty() {
        return Err(NqaError::EmptyControls);
    }
    let locals = controls.iter().map(|&k| (k, LocalProjector::One)).collect();
    let r = Reflection::new(Sign::PLUS, ProductProjector::new(m, locals)?);
    FactoredOperator::new(m, vec![r.into()])
}

/// Two-qubit gates that need a phase lane; their real forms live on 3 slots
/// `(qubit 1, qubit 2, phase)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LiftedGate {
    ISwap,
    SqrtSwap,
    /// Product of `cos θx II + i sin θx XX`, `cos θy II - i sin θy WW` and
    /// `cos θz II + i sin θz ZZ`, i.e. `exp(+i(θx XX + θy YY + θz ZZ))`
    /// in Pauli notation.
    Cartan { x: f64, y: f64, z: f64 },
    /// `I + (e^{iφ} - 1)|11⟩⟨11|`
    CPhase(f64),
    /// `e^{-iθZ/2}` on qubit 1.
    Rz(f64),
}

impl LiftedGate {
    /// The complex two-qubit factors whose product is the gate.
    pub fn complex_factors(&self) -> Vec<ComplexNqaOperator> {
        let c = |re: &[(&str, f64)], im: &[(&str, f64)]| {
            let part = |t: &[(&str, f64)]| {
                if t.is_empty() {
                    NqaOperator::zero(2)
                } else {
                    NqaOperator::from_literals(t).expect("valid literals")
                }
            };
            ComplexNqaOperator::new(part(re), part(im)).expect("m = 2")
        };
        match *self {
            LiftedGate::ISwap => vec![c(
                &[("II", 0.5), ("ZZ", 0.5)],
                &[("XX", 0.5), ("WW", -0.5)],
            )],
            LiftedGate::SqrtSwap => vec![c(
                &[("II", 0.75), ("XX", 0.25), ("ZZ", 0.25), ("WW", -0.25)],
                &[("II", 0.25), ("XX", -0.25), ("ZZ", -0.25), ("WW", 0.25)],
            )],
            LiftedGate::Cartan { x, y, z } => vec![
                c(&[("II", x.cos())], &[("XX", x.sin())]),
                c(&[("II", y.cos())], &[("WW", -y.sin())]),
                c(&[("II", z.cos())], &[("ZZ", z.sin())]),
            ],
            LiftedGate::CPhase(phi) => {
                let proj = two_slot(TwoGate::BasisProjector(true, true));
                let re = NqaOperator::identity(2)
                    .add(&proj.scale(phi.cos() - 1.0))
                    .expect("m = 2");
                vec![ComplexNqaOperator::new(re, proj.scale(phi.sin())).expect("m = 2")]
            }
            LiftedGate::Rz(theta) => {
                vec![phase_rotation(theta / 2.0, 1, 2).expect("slot 1 of 2")]
            }
        }
    }

    /// The complex two-qubit gate (product of its factors).
    pub fn complex(&self) -> ComplexNqaOperator {
        self.complex_factors()
            .into_iter()
            .reduce(|a, b| a.mul(&b).expect("m = 2"))
            .expect("at least one factor")
    }
}

/// Real three-slot form of a phaseful two-qubit gate. Cartan keeps its three
/// lifted factors; everything else is a single expanded factor.
pub fn lifted_gate(gate: LiftedGate) -> FactoredOperator {
    let factors = gate
        .complex_factors()
        .iter()
        .map(|u| u.phi().into())
        .collect();
    FactoredOperator::new(3, factors).expect("all factors have 3 slots")
}

/// `CNOT(1→2) · (H ⊗ I)`, multiplied out.
pub fn bell_transform() -> NqaOperator {
    let cnot = two_gate(TwoGate::Cnot, 1, 2, 2).expect("valid slots");
    let h1 = real_single(SingleGate::H, 1, 2).expect("valid slot");
    cnot.mul(&h1).expect("m = 2")
}

/// `e^{φG}` for a generator with `G² = -I` (circular) or `G² = +I`
/// (hyperbolic).
pub fn real_exponential(generator: &NqaOperator, phi: f64) -> Result<NqaOperator> {
    let m = generator.m();
    let id = NqaOperator::identity(m);
    let square = generator.mul(generator)?;
    let (c, s) = if square.approx_eq(&id.scale(-1.0), EXPONENTIAL_TOL) {
        (phi.cos(), phi.sin())
    } else if square.approx_eq(&id, EXPONENTIAL_TOL) {
        (phi.cosh(), phi.sinh())
    } else {
        return Err(NqaError::NotExponentiable);
    };
    id.scale(c).add(&generator.scale(s))
}

/// The index-only lookup table of common two-qubit gates, in display order.
pub fn lookup_table() -> Vec<(&'static str, NqaOperator)> {
    let h = |k| real_single(SingleGate::H, k, 2).expect("valid slot");
    let w = |lit: &str| NqaOperator::from_literals(&[(lit, 1.0)]).expect("literal");
    vec![
        ("I⊗I", NqaOperator::identity(2)),
        ("X⊗I", w("XI")),
        ("I⊗X", w("IX")),
        ("Z⊗I", w("ZI")),
        ("I⊗Z", w("IZ")),
        ("H⊗I", h(1)),
        ("I⊗H", h(2)),
        ("H⊗H", hadamard_layer(2)),
        ("CZ", two_gate(TwoGate::Cz, 1, 2, 2).expect("valid")),
        ("CNOT(1→2)", two_gate(TwoGate::Cnot, 1, 2, 2).expect("valid")),
        ("CNOT(2→1)", two_gate(TwoGate::Cnot, 2, 1, 2).expect("valid")),
        ("SWAP", two_gate(TwoGate::Swap, 1, 2, 2).expect("valid")),
        ("Π_even", two_gate(TwoGate::ParityEven, 1, 2, 2).expect("valid")),
        ("Π_odd", two_gate(TwoGate::ParityOdd, 1, 2, 2).expect("valid")),
    ]
}
