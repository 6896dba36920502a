//! Randomized self-checks against the dense oracle, shared by the test
//! suite and the `check` command of the CLI.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clifford22::{dictionary, generator, monomial_to_word};
use crate::error::Result;
use crate::linalg::DenseMatrix;
use crate::operator::{word_dense, NqaOperator};
use crate::realify::ComplexNqaOperator;
use crate::word::{epsilon, BlockIndex, NqaWord, Sign};

/// Outcome of one check: how many cases ran, how many failed, and the worst
/// deviation seen.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub max_error: f64,
}

impl CheckReport {
    fn new(name: &'static str) -> Self {
        CheckReport {
            name,
            cases: 0,
            failures: 0,
            max_error: 0.0,
        }
    }

    fn record(&mut self, error: f64, tol: f64) {
        self.cases += 1;
        self.max_error = self.max_error.max(error);
        if error.is_nan() || error > tol {
            self.failures += 1;
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

pub fn random_word(m: usize, rng: &mut impl Rng) -> NqaWord {
    let blocks: Vec<_> = (0..m)
        .map(|_| *BlockIndex::ALL.choose(rng).expect("non-empty"))
        .collect();
    NqaWord::from_blocks(&blocks).expect("m >= 1")
}

/// A random operator with `terms` terms and coefficients in `[-1, 1)`.
pub fn random_operator(m: usize, terms: usize, rng: &mut impl Rng) -> NqaOperator {
    let t = (0..terms).map(|_| (random_word(m, rng), rng.gen_range(-1.0..1.0)));
    NqaOperator::from_terms(m, t).expect("same m")
}

/// A random operator whose words all have parity `odd`, with small integer
/// coefficients so that products stay exact.
pub fn random_parity_homogeneous(
    m: usize,
    odd: bool,
    terms: usize,
    rng: &mut impl Rng,
) -> NqaOperator {
    let mut out = Vec::with_capacity(terms);
    while out.len() < terms {
        let w = random_word(m, rng);
        if w.parity() == odd {
            out.push((w, f64::from(rng.gen_range(-3i32..=3))));
        }
    }
    NqaOperator::from_terms(m, out).expect("same m")
}

/// Word products against Kronecker products of the dense blocks, exhaustive
/// over all pairs at `m` slots.
pub fn check_word_products(m: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("word products vs dense");
    let words = NqaWord::enumerate(m);
    let dense: Vec<_> = words.iter().map(word_dense).collect();
    for (u, du) in words.iter().zip(&dense) {
        for (v, dv) in words.iter().zip(&dense) {
            let p = u.mul(v)?;
            let lhs = word_dense(&p.word).scale(p.sign.to_f64());
            report.record(lhs.max_abs_diff(&du.mat_mul(dv)?)?, 0.0);
        }
    }
    Ok(report)
}

/// ε-Jacobi on random homogeneous triples (scaled single words) and the
/// super-Jacobi identity on random parity-homogeneous triples.
pub fn check_jacobi(m: usize, trials: usize, seed: u64) -> Result<(CheckReport, CheckReport)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut color = CheckReport::new("epsilon-Jacobi");
    let mut sup = CheckReport::new("super-Jacobi");
    let m = m.max(1);
    for _ in 0..trials {
        let ws: Vec<_> = (0..3).map(|_| random_word(m, &mut rng)).collect();
        let ops: Vec<_> = ws
            .iter()
            .map(|w| NqaOperator::from_word(w.clone()).scale(f64::from(rng.gen_range(1i32..=4))))
            .collect();
        let (x, y, z) = (&ops[0], &ops[1], &ops[2]);
        let (g, h, k) = (&ws[0], &ws[1], &ws[2]);
        let e = |a: &NqaWord, b: &NqaWord| epsilon(a, b).map(Sign::to_f64);
        let t1 = x.epsilon_commutator(&y.epsilon_commutator(z)?)?.scale(e(k, g)?);
        let t2 = y.epsilon_commutator(&z.epsilon_commutator(x)?)?.scale(e(g, h)?);
        let t3 = z.epsilon_commutator(&x.epsilon_commutator(y)?)?.scale(e(h, k)?);
        let total = t1.add(&t2)?.add(&t3)?;
        color.record(total.max_coeff_diff(&NqaOperator::zero(m))?, 0.0);

        let degs: Vec<bool> = (0..3).map(|_| rng.gen()).collect();
        let ops: Vec<_> = degs
            .iter()
            .map(|&d| random_parity_homogeneous(m, d, 3, &mut rng))
            .collect();
        let (x, y, z) = (&ops[0], &ops[1], &ops[2]);
        let s = |a: bool, b: bool| if a && b { -1.0 } else { 1.0 };
        let (dx, dy, dz) = (degs[0], degs[1], degs[2]);
        let t1 = x.supercommutator(&y.supercommutator(z)?)?.scale(s(dx, dz));
        let t2 = y.supercommutator(&z.supercommutator(x)?)?.scale(s(dy, dx));
        let t3 = z.supercommutator(&x.supercommutator(y)?)?.scale(s(dz, dy));
        let total = t1.add(&t2)?.add(&t3)?;
        sup.record(total.max_coeff_diff(&NqaOperator::zero(m))?, 0.0);
    }
    Ok((color, sup))
}

/// `Φ(UV) = Φ(U)Φ(V)` and `Φ(U†) = Φ(U)ᵀ` on random complex pairs.
pub fn check_phi(m: usize, trials: usize, seed: u64) -> Result<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CheckReport::new("phi homomorphism");
    let m = m.max(1);
    let random_complex = |rng: &mut ChaCha8Rng| {
        let terms = rng.gen_range(1..=6);
        ComplexNqaOperator::new(
            random_operator(m, terms, rng),
            random_operator(m, terms, rng),
        )
        .expect("same m")
    };
    for _ in 0..trials {
        let u = random_complex(&mut rng);
        let v = random_complex(&mut rng);
        let lhs = u.mul(&v)?.phi().to_dense()?;
        let rhs = u.phi().to_dense()?.mat_mul(&v.phi().to_dense()?)?;
        report.record(lhs.max_abs_diff(&rhs)?, 1e-12);
        let dag = u.dagger().phi().to_dense()?;
        report.record(dag.max_abs_diff(&u.phi().to_dense()?.transpose())?, 1e-12);
    }
    Ok(report)
}

/// Generator relations and every dictionary row, checked on dense matrices.
pub fn check_dictionary() -> Result<CheckReport> {
    let mut report = CheckReport::new("Cl(2,2) dictionary");
    let dense: Vec<DenseMatrix> = (1..=4)
        .map(|i| generator(i)?.to_dense())
        .collect::<Result<_>>()?;
    let id = DenseMatrix::identity(4);
    for r in 0..4 {
        for s in 0..4 {
            let rs = dense[r].mat_mul(&dense[s])?;
            let sr = dense[s].mat_mul(&dense[r])?;
            let err = if r == s {
                let sq = if r < 2 { 1.0 } else { -1.0 };
                rs.max_abs_diff(&id.scale(sq))?
            } else {
                rs.add(&sr)?.max_abs()
            };
            report.record(err, 0.0);
        }
    }
    for row in dictionary() {
        let mut prod = id.scale(row.monomial.sign.to_f64());
        for i in row.monomial.indices() {
            prod = prod.mat_mul(&dense[i - 1])?;
        }
        report.record(prod.max_abs_diff(&word_dense(&row.word))?, 0.0);
        let back = monomial_to_word(row.monomial);
        report.record(
            if back.word == row.word && back.sign == Sign::PLUS {
                0.0
            } else {
                1.0
            },
            0.0,
        );
    }
    Ok(report)
}
