//! Acceptance suite: one PASS/FAIL line per criterion.

use std::f64::consts::SQRT_2;
use std::hint::black_box;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nqa::algorithms::{
    bv_circuit, bv_recover, eigenphases, grover_angle, grover_iterate, grover_run,
    is_clifford_spectrum, BitString, BvOracleSpec, GroverSpec,
};
use nqa::chsh::{
    chsh_classical, chsh_from_settings, chsh_quantum_matrix, spectral_norm, standard_settings,
    ClassicalModel,
};
use nqa::clifford22::pseudoscalar;
use nqa::factored::Factor;
use nqa::gates::{
    lifted_gate, lookup_table, mcz, real_single, two_gate, LiftedGate, SingleGate, TwoGate,
};
use nqa::operator::word_dense;
use nqa::verify::{check_dictionary, check_jacobi, check_phi, random_word};
use nqa::{epsilon, DenseMatrix, LinearMap, NqaOperator, NqaWord, Sign, SignedWord};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lit(s: &str) -> NqaWord {
    s.parse().expect("literal")
}

fn dense(w: &str) -> DenseMatrix {
    word_dense(&lit(w))
}

fn block_relations() -> Outcome {
    let sw = |s: Sign, w: &str| SignedWord::new(s, lit(w));
    let cases = [
        ("X", "X", sw(Sign::PLUS, "I")),
        ("Z", "Z", sw(Sign::PLUS, "I")),
        ("W", "W", sw(Sign::MINUS, "I")),
        ("X", "Z", sw(Sign::PLUS, "W")),
        ("Z", "X", sw(Sign::MINUS, "W")),
    ];
    for (a, b, want) in &cases {
        let got = lit(a).mul(&lit(b)).map_err(|e| e.to_string())?;
        ensure(&got == want, || format!("{a}{b} = {got:?}"))?;
        let d = dense(a).mat_mul(&dense(b)).map_err(|e| e.to_string())?;
        ensure(d == word_dense(&want.word).scale(want.sign.to_f64()), || {
            format!("dense {a}{b}")
        })?;
    }
    Ok("5 relations, symbolic and dense".into())
}

fn orthonormality() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut pairs = 0;
    for m in 1..=3 {
        let words = NqaWord::enumerate(m);
        let ds: Vec<_> = words.iter().map(word_dense).collect();
        for (i, a) in ds.iter().enumerate() {
            for (j, b) in ds.iter().enumerate() {
                let ip = a.frobenius_inner(b).map_err(|e| e.to_string())?;
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((ip - want).abs());
                pairs += 1;
            }
        }
    }
    ensure(worst <= 1e-12, || format!("max error {worst:.1e}"))?;
    Ok(format!("{pairs} pairs, max error {worst:.1e}"))
}

fn golden_table() -> Outcome {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let op = |t: &[(&str, f64)]| NqaOperator::from_literals(t).expect("literals");
    let coeffs = [
        ("H⊗I", op(&[("XI", h), ("ZI", h)])),
        ("H⊗H", op(&[("XX", 0.5), ("XZ", 0.5), ("ZX", 0.5), ("ZZ", 0.5)])),
        ("CZ", op(&[("II", 0.5), ("IZ", 0.5), ("ZI", 0.5), ("ZZ", -0.5)])),
        ("CNOT(1→2)", op(&[("II", 0.5), ("ZI", 0.5), ("IX", 0.5), ("ZX", -0.5)])),
        ("CNOT(2→1)", op(&[("II", 0.5), ("IZ", 0.5), ("XI", 0.5), ("XZ", -0.5)])),
        ("SWAP", op(&[("II", 0.5), ("XX", 0.5), ("WW", -0.5), ("ZZ", 0.5)])),
        ("Π_even", op(&[("II", 0.5), ("ZZ", 0.5)])),
        ("Π_odd", op(&[("II", 0.5), ("ZZ", -0.5)])),
    ];
    let table = lookup_table();
    for (name, want) in &coeffs {
        let (_, got) = table
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| format!("{name} missing"))?;
        ensure(got == want, || format!("{name}: {got}"))?;
    }
    let perm = |images: [usize; 4]| {
        let mut d = DenseMatrix::zeros(4);
        for (c, r) in images.into_iter().enumerate() {
            d[(r, c)] = 1.0;
        }
        d
    };
    let hh = DenseMatrix::from_rows(&[vec![h, h], vec![h, -h]]).expect("2x2");
    let textbook = [
        ("H⊗I", hh.kron(&DenseMatrix::identity(2))),
        ("H⊗H", hh.kron(&hh)),
        ("CZ", DenseMatrix::from_diagonal(&[1.0, 1.0, 1.0, -1.0])),
        ("CNOT(1→2)", perm([0, 1, 3, 2])),
        ("CNOT(2→1)", perm([0, 3, 2, 1])),
        ("SWAP", perm([0, 2, 1, 3])),
        ("Π_even", DenseMatrix::from_diagonal(&[1.0, 0.0, 0.0, 1.0])),
        ("Π_odd", DenseMatrix::from_diagonal(&[0.0, 1.0, 1.0, 0.0])),
    ];
    let mut worst: f64 = 0.0;
    for (name, want) in &textbook {
        let (_, got) = table.iter().find(|(n, _)| n == name).expect("checked above");
        let diff = got
            .to_dense()
            .and_then(|d| d.max_abs_diff(want))
            .map_err(|e| e.to_string())?;
        worst = worst.max(diff);
        ensure(diff <= 1e-15, || format!("{name} dense error {diff:.1e}"))?;
    }
    Ok(format!("8 gates exact, dense error {worst:.1e}"))
}

fn phi_embedding() -> Outcome {
    let mut cases = 0;
    let mut worst: f64 = 0.0;
    for m in 1..=3 {
        let r = check_phi(m, 67, 100 + m as u64).map_err(|e| e.to_string())?;
        cases += r.cases / 2;
        worst = worst.max(r.max_error);
        ensure(r.passed(), || format!("m = {m}: max error {:.1e}", r.max_error))?;
    }
    ensure(cases >= 200, || format!("only {cases} pairs"))?;
    Ok(format!("{cases} pairs, max error {worst:.1e}"))
}

fn sqrt_swap() -> Outcome {
    let s = lifted_gate(LiftedGate::SqrtSwap).to_dense().map_err(|e| e.to_string())?;
    let swap = two_gate(TwoGate::Swap, 1, 2, 2)
        .map_err(|e| e.to_string())?
        .tensor(&NqaOperator::identity(1))
        .to_dense()
        .map_err(|e| e.to_string())?;
    let diff = s.mat_mul(&s).and_then(|p| p.max_abs_diff(&swap)).map_err(|e| e.to_string())?;
    ensure(diff <= 1e-12, || format!("error {diff:.1e}"))?;
    Ok(format!("error {diff:.1e}"))
}

fn bernstein_vazirani() -> Outcome {
    let exact = |m: usize, si: usize| -> Result<f64, String> {
        let out = bv_circuit(&BitString::from_index(m, si)).map_err(|e| e.to_string())?;
        Ok(out
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(i, a)| (a - if i == si { 1.0 } else { 0.0 }).abs())
            .fold(0.0, f64::max))
    };
    let mut worst: f64 = 0.0;
    let mut runs = 0;
    for m in 1..=4 {
        for si in 0..1usize << m {
            worst = worst.max(exact(m, si)?);
            let s = BitString::from_index(m, si);
            let spec = BvOracleSpec::from_bits(&s);
            let r = bv_recover(&spec).map_err(|e| e.to_string())?;
            ensure(r.s == s, || format!("recovered {} for {s}", r.s))?;
            let l = s.support().len();
            ensure(r.steps <= m + l, || format!("{} steps for m + L = {}", r.steps, m + l))?;
            runs += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for m in [8, 12] {
        for _ in 0..100 {
            worst = worst.max(exact(m, rng.gen_range(0..1usize << m))?);
            runs += 1;
        }
    }
    ensure(worst <= 1e-12, || format!("off-entry {worst:.1e}"))?;
    Ok(format!("{runs} circuits, max deviation {worst:.1e}, steps = m + L"))
}

fn grover() -> Outcome {
    let p = grover_run(&GroverSpec::new("10".parse().expect("bits")).map_err(|e| e.to_string())?, 1)
        .map_err(|e| e.to_string())?;
    ensure((p[1] - 1.0).abs() <= 1e-12, || format!("m = 2 success {}", p[1]))?;

    let mut worst_trace: f64 = 0.0;
    let mut worst_phase: f64 = 0.0;
    for m in 1..=6usize {
        let n = 1usize << m;
        let marked = n - 1;
        let spec = GroverSpec::new(BitString::from_index(m, marked)).map_err(|e| e.to_string())?;
        let iters = (3.0 * (m as f64 / 2.0).exp2()).ceil() as usize;
        let trace = grover_run(&spec, iters).map_err(|e| e.to_string())?;
        // independent dense simulation of (2|s⟩⟨s| - I)(I - 2|x*⟩⟨x*|)
        let c = (-(m as f64) / 2.0).exp2();
        let mut v = vec![c; n];
        for (t, &pt) in trace.iter().enumerate() {
            worst_trace = worst_trace.max((pt - v[marked] * v[marked]).abs());
            if t < iters {
                v[marked] = -v[marked];
                let mean: f64 = v.iter().sum::<f64>() / n as f64;
                v.iter_mut().for_each(|a| *a = 2.0 * mean - *a);
            }
        }
        if m >= 2 {
            let g = grover_iterate(&spec)
                .and_then(|g| g.to_dense())
                .map_err(|e| e.to_string())?;
            let phases = eigenphases(&g, 1e-12).map_err(|e| e.to_string())?;
            let two_theta = 2.0 * grover_angle(m);
            let err = phases
                .iter()
                .map(|p| (p - two_theta).abs())
                .fold(f64::INFINITY, f64::min);
            worst_phase = worst_phase.max(err);
            ensure(!is_clifford_spectrum(&phases, 1e-9), || {
                format!("m = {m} iterate classified Clifford")
            })?;
        }
    }
    ensure(worst_trace <= 1e-10, || format!("trace error {worst_trace:.1e}"))?;
    ensure(worst_phase <= 1e-9, || format!("phase error {worst_phase:.1e}"))?;
    let clifford = [
        real_single(SingleGate::H, 1, 1),
        two_gate(TwoGate::Cz, 1, 2, 2),
        two_gate(TwoGate::Swap, 1, 2, 2),
    ];
    for g in clifford {
        let d = g.and_then(|g| g.to_dense()).map_err(|e| e.to_string())?;
        let phases = eigenphases(&d, 1e-12).map_err(|e| e.to_string())?;
        ensure(is_clifford_spectrum(&phases, 1e-5), || format!("phases {phases:?}"))?;
    }
    Ok(format!("trace error {worst_trace:.1e}, phase error {worst_phase:.1e}"))
}

fn chsh() -> Outcome {
    let eig = chsh_quantum_matrix().sym_eigenvalues(1e-12).map_err(|e| e.to_string())?;
    let r = 2.0 * SQRT_2;
    let err = eig
        .iter()
        .zip([-r, 0.0, 0.0, r])
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    ensure(err <= 1e-10, || format!("spectrum {eig:?}"))?;
    let values = chsh_classical(&ClassicalModel::all_assignments());
    ensure(values.len() == 16 && values.iter().all(|v| v.abs() == 2), || {
        format!("classical values {values:?}")
    })?;
    let norm = spectral_norm(&chsh_from_settings(&standard_settings())).map_err(|e| e.to_string())?;
    ensure((norm - r).abs() <= 1e-9, || format!("settings norm {norm}"))?;
    Ok(format!("spectrum error {err:.1e}, 16 assignments ±2, settings norm {norm:.12}"))
}

fn clifford22() -> Outcome {
    let report = check_dictionary().map_err(|e| e.to_string())?;
    ensure(report.passed(), || format!("{} failures", report.failures))?;
    let w = pseudoscalar();
    ensure(w == NqaOperator::from_word(lit("WW")).scale(-1.0), || format!("ω = {w}"))?;
    let d = w.to_dense().map_err(|e| e.to_string())?;
    ensure(d.mat_mul(&d).map_err(|e| e.to_string())? == DenseMatrix::identity(4), || {
        "ω² ≠ I".into()
    })?;
    Ok(format!("{} relation and row checks, ω = -WW, ω² = I", report.cases))
}

fn graded_structure() -> Outcome {
    let mut pairs = 0;
    for m in 1..=3 {
        let words = NqaWord::enumerate(m);
        for g in &words {
            for h in &words {
                let gh = g.mul(h).map_err(|e| e.to_string())?;
                let hg = h.mul(g).map_err(|e| e.to_string())?;
                let e = epsilon(g, h).map_err(|e| e.to_string())?;
                // [g, h]_ε = gh - ε(g,h) hg
                ensure(gh.word == hg.word && gh.sign == e * hg.sign, || {
                    format!("[{g}, {h}]_ε ≠ 0")
                })?;
                pairs += 1;
            }
        }
    }
    let mut triples = 0;
    for m in 1..=4 {
        let (color, sup) = check_jacobi(m, 1000, 7 + m as u64).map_err(|e| e.to_string())?;
        ensure(color.passed(), || format!("ε-Jacobi failed at m = {m}"))?;
        ensure(sup.passed(), || format!("super-Jacobi failed at m = {m}"))?;
        triples += color.cases;
    }
    Ok(format!("{pairs} word pairs, {triples} triples per identity"))
}

fn mcz_structure() -> Outcome {
    let mut cases = 0;
    for m in 1..=5 {
        for mask in 1u32..1 << m {
            let controls: Vec<usize> = (1..=m).filter(|k| mask >> (k - 1) & 1 == 1).collect();
            let g = mcz(&controls, m).map_err(|e| e.to_string())?;
            let d = g.to_dense().map_err(|e| e.to_string())?;
            for x in 0..1usize << m {
                let on = controls.iter().all(|&k| (x >> (m - k)) & 1 == 1);
                ensure(d[(x, x)] == if on { -1.0 } else { 1.0 }, || {
                    format!("controls {controls:?}, x = {x}")
                })?;
            }
            let want = 1usize << controls.len();
            // the product of projectors always expands to 2^|C| words; in
            // I - 2∏P the identity cancels when |C| = 1, leaving Z
            let Some(Factor::Reflection(r)) = g.factors().first() else {
                return Err("MCZ is not stored as a reflection".into());
            };
            let product_terms = r.projector.expand().map_err(|e| e.to_string())?.len();
            ensure(product_terms == want, || {
                format!("controls {controls:?}: projector has {product_terms} terms, expected {want}")
            })?;
            let terms = g.expand().map_err(|e| e.to_string())?.len();
            let full = if controls.len() == 1 { 1 } else { want };
            ensure(terms == full, || {
                format!("controls {controls:?}: {terms} terms, expected {full}")
            })?;
            cases += 1;
        }
    }
    Ok(format!(
        "{cases} control sets; projector product 2^|C| terms, full gate 2^|C| for |C| >= 2 and 1 for |C| = 1"
    ))
}

fn performance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(64);
    let words: Vec<NqaWord> = (0..1024).map(|_| random_word(64, &mut rng)).collect();
    let n = 20_000_000usize;
    let start = Instant::now();
    let mut acc = 0u32;
    for i in 0..n {
        let p = black_box(&words[i & 1023])
            .mul(black_box(&words[(i * 7 + 3) & 1023]))
            .map_err(|e| e.to_string())?;
        acc ^= u32::from(p.sign.is_negative());
    }
    black_box(acc);
    let rate = n as f64 / start.elapsed().as_secs_f64();

    let data = (0..64 * 64).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let m = DenseMatrix::from_row_major(64, data).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let op = NqaOperator::from_dense(&m).map_err(|e| e.to_string())?;
    let decompose = start.elapsed();
    ensure(op.len() == 4096, || format!("{} coefficients", op.len()))?;
    let detail = format!("{rate:.3e} products/s, decompose {:.2} ms", decompose.as_secs_f64() * 1e3);
    ensure(rate >= 1e7 && decompose < Duration::from_secs(1), || detail.clone())?;
    Ok(detail)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("block relations", block_relations, Some(Duration::from_millis(1))),
        ("Frobenius orthonormality", orthonormality, None),
        ("golden gate table", golden_table, None),
        ("phase-lane *-embedding", phi_embedding, None),
        ("sqrt(SWAP) consistency", sqrt_swap, None),
        ("Bernstein-Vazirani", bernstein_vazirani, None),
        ("Grover", grover, Some(Duration::from_secs(10))),
        ("CHSH", chsh, None),
        ("Cl(2,2) dictionary", clifford22, None),
        ("graded structure", graded_structure, None),
        ("multi-controlled Z", mcz_structure, None),
        ("performance smoke", performance, None),
    ];
    let suite = Instant::now();
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let took = start.elapsed();
        if let (Ok(detail), Some(b)) = (&outcome, budget) {
            if took > *b {
                outcome = Err(format!("{detail}; took {took:?}, budget {b:?}"));
            }
        }
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2}. {name}: {detail} [{:.3} ms]", i + 1, took.as_secs_f64() * 1e3);
    }
    println!(
        "{} of 12 criteria passed in {:.2} s",
        12 - failed,
        suite.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
