use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nqa::algorithms::{
    auto_iterations, bv_recover, diffusion_sizes, grover_angle, grover_closed_form, grover_run,
    BitString, BvOracleSpec, GroverSpec,
};
use nqa::chsh::{chsh_classical, nonembeddability_report, ClassicalModel};
use nqa::clifford22::dictionary;
use nqa::gates::lookup_table;
use nqa::verify::{check_dictionary, check_jacobi, check_phi, check_word_products, CheckReport};
use nqa::{eval_str, DenseMatrix, NqaError, NqaOperator};

#[derive(Parser)]
#[command(name = "nqa", version, about = "Real block-word operator calculus")]
struct Cli {
    /// Emit JSON instead of text tables.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an operator expression, e.g. "1/2*(II+IZ+ZI-ZZ)".
    Eval {
        expr: String,
        /// Also print the dense matrix.
        #[arg(long)]
        dense: bool,
    },
    /// Expand a dense 2^m x 2^m matrix (JSON array of rows) in block words.
    Decompose {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Recover s from a structured Bernstein-Vazirani oracle.
    Bv {
        /// Number of qubits; defaults to the largest index given.
        #[arg(long)]
        m: Option<usize>,
        /// Comma-separated support of s, e.g. 1,3.
        #[arg(long, value_delimiter = ',', conflicts_with = "factors", required_unless_present = "factors")]
        support: Option<Vec<usize>>,
        /// Comma-separated Z factor wires, repeats allowed, e.g. 3,1,3.
        #[arg(long, value_delimiter = ',')]
        factors: Option<Vec<usize>>,
    },
    /// Run Grover search for one marked item.
    Grover {
        #[arg(long)]
        m: Option<usize>,
        /// The marked bit string, e.g. 101.
        #[arg(long)]
        marked: String,
        /// Iteration count, or "auto".
        #[arg(long, default_value = "auto")]
        iters: String,
        /// Print the success probability after every iteration.
        #[arg(long)]
        trace: bool,
    },
    /// CHSH operators, quantum and classical.
    Chsh {
        #[command(subcommand)]
        which: ChshCommand,
    },
    /// Print a reference table.
    Table { which: TableKind },
    /// Run randomized self-checks against the dense oracle.
    Check {
        #[arg(default_value = "all")]
        which: CheckKind,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum ChshCommand {
    /// Spectrum of the quantum CHSH matrix.
    Quantum,
    /// Values of a random hidden-variable model.
    Classical {
        #[arg(long, default_value_t = 16)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Quantum against classical bound.
    Report,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Cl22,
    Gates,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    All,
    Jacobi,
    Phi,
    Dict,
    Words,
}

enum Failure {
    Input(String),
    Check,
}

impl From<NqaError> for Failure {
    fn from(e: NqaError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn clean(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        0.0
    } else {
        x
    }
}

fn terms_json(op: &NqaOperator) -> Value {
    Value::Array(
        op.terms()
            .map(|(w, c)| json!({"word": w.to_string(), "coeff": c}))
            .collect(),
    )
}

fn print_terms(op: &NqaOperator) {
    println!("m = {}, {} term(s)", op.m(), op.len());
    let width = op.m().max(4);
    for (w, c) in op.terms() {
        println!("{:<width$}  {c:>+.15}", w.to_string());
    }
}

fn print_op(op: &NqaOperator, dense: Option<&DenseMatrix>, as_json: bool) {
    if as_json {
        let mut v = json!({"m": op.m(), "expr": op.to_string(), "terms": terms_json(op)});
        if let Some(d) = dense {
            v["dense"] = json!(d.rows());
        }
        println!("{v}");
    } else {
        print_terms(op);
        if let Some(d) = dense {
            println!();
            print!("{d}");
        }
    }
}

fn eval(expr: &str, dense: bool, as_json: bool) -> Result<(), Failure> {
    let op = eval_str(expr)?;
    let d = if dense { Some(op.to_dense()?) } else { None };
    print_op(&op, d.as_ref(), as_json);
    Ok(())
}

fn decompose(path: &PathBuf, as_json: bool) -> Result<(), Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let rows: Vec<Vec<f64>> = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let m = DenseMatrix::from_rows(&rows)?;
    let op = NqaOperator::from_dense(&m)?;
    print_op(&op, None, as_json);
    Ok(())
}

fn bv(
    m: Option<usize>,
    support: Option<Vec<usize>>,
    factors: Option<Vec<usize>>,
    as_json: bool,
) -> Result<(), Failure> {
    let wires = support.as_ref().or(factors.as_ref()).cloned().unwrap_or_default();
    let m = m.or_else(|| wires.iter().copied().max()).unwrap_or(1);
    let spec = match (support, factors) {
        (Some(support), _) => BvOracleSpec::Support { m, support },
        (None, Some(factors)) => BvOracleSpec::Factors { m, factors },
        (None, None) => return Err(Failure::Input("give --support or --factors".into())),
    };
    let r = bv_recover(&spec)?;
    if as_json {
        println!("{}", json!({"m": m, "s": r.s.to_string(), "steps": r.steps}));
    } else {
        println!("s={}", r.s);
        println!("steps={}", r.steps);
    }
    Ok(())
}

fn grover(
    m: Option<usize>,
    marked: &str,
    iters: &str,
    trace: bool,
    as_json: bool,
) -> Result<(), Failure> {
    let bits: BitString = marked.parse()?;
    if let Some(m) = m {
        if m != bits.m() {
            return Err(Failure::Input(format!(
                "--m {m} does not match the {} bits of --marked",
                bits.m()
            )));
        }
    }
    let m = bits.m();
    if m > nqa::linalg::MAX_STATE_SLOTS {
        return Err(Failure::Input(format!(
            "m = {m} exceeds the state-vector limit of {}",
            nqa::linalg::MAX_STATE_SLOTS
        )));
    }
    let n = if iters.eq_ignore_ascii_case("auto") {
        auto_iterations(m)
    } else {
        iters
            .parse()
            .map_err(|_| Failure::Input(format!("--iters must be a count or \"auto\", got {iters:?}")))?
    };
    let spec = GroverSpec::new(bits)?;
    let probs = grover_run(&spec, n)?;
    let (factors, terms) = diffusion_sizes(m)?;
    let last = *probs.last().expect("t = 0 is always present");
    if as_json {
        let mut v = json!({
            "m": m,
            "marked": marked,
            "iterations": n,
            "theta": grover_angle(m),
            "probability": last,
            "closed_form": grover_closed_form(m, n),
            "diffusion_factors": factors,
            "diffusion_terms": terms,
        });
        if trace {
            v["trace"] = json!(probs);
        }
        println!("{v}");
    } else if trace {
        for p in &probs {
            println!("{p:.12}");
        }
    } else {
        println!("iterations={n}");
        println!("probability={last:.12}");
        println!("diffusion: {factors} factors, {terms} block terms expanded");
    }
    Ok(())
}

fn chsh(which: ChshCommand, as_json: bool) -> Result<(), Failure> {
    match which {
        ChshCommand::Quantum => {
            let r = nonembeddability_report()?;
            let spec: Vec<f64> = r.quantum_spectrum.iter().map(|&x| clean(x)).collect();
            if as_json {
                println!("{}", json!({"spectrum": spec, "norm": r.quantum_norm}));
            } else {
                for x in &spec {
                    println!("{x:.6}");
                }
                println!("norm={:.6}", r.quantum_norm);
            }
        }
        ChshCommand::Classical { n, seed } => {
            let values = chsh_classical(&ClassicalModel::random(n, seed));
            let mut hist = BTreeMap::new();
            for v in &values {
                *hist.entry(*v).or_insert(0usize) += 1;
            }
            if as_json {
                let h: BTreeMap<String, usize> =
                    hist.iter().map(|(k, c)| (k.to_string(), *c)).collect();
                println!("{}", json!({"n": n, "seed": seed, "values": values, "histogram": h}));
            } else {
                for (k, c) in &hist {
                    println!("{k:+}: {c}");
                }
            }
        }
        ChshCommand::Report => {
            let r = nonembeddability_report()?;
            if as_json {
                println!(
                    "{}",
                    json!({
                        "quantum_spectrum": r.quantum_spectrum.iter().map(|&x| clean(x)).collect::<Vec<_>>(),
                        "quantum_norm": r.quantum_norm,
                        "settings_norm": r.settings_norm,
                        "classical_max": r.classical_max,
                        "gap": r.gap,
                    })
                );
            } else {
                println!("quantum norm    {:.12}", r.quantum_norm);
                println!("settings norm   {:.12}", r.settings_norm);
                println!("classical max   {}", r.classical_max);
                println!("gap             {:.12}", r.gap);
            }
        }
    }
    Ok(())
}

fn table(which: TableKind, as_json: bool) {
    match which {
        TableKind::Cl22 => {
            let rows = dictionary();
            if as_json {
                let v: Vec<Value> = rows
                    .iter()
                    .map(|r| {
                        json!({
                            "word": r.word.to_string(),
                            "pauli": r.pauli,
                            "monomial": r.monomial.to_string(),
                            "label": r.label,
                        })
                    })
                    .collect();
                println!("{}", Value::Array(v));
            } else {
                println!("{:<6}{:<12}{:<12}label", "word", "pauli", "monomial");
                for r in rows {
                    println!(
                        "{:<6}{:<12}{:<12}{}",
                        format!("B_{}", r.word),
                        r.pauli,
                        r.monomial.to_string(),
                        r.label
                    );
                }
            }
        }
        TableKind::Gates => {
            let rows = lookup_table();
            if as_json {
                let v: Vec<Value> = rows
                    .iter()
                    .map(|(name, op)| json!({"gate": name, "terms": terms_json(op)}))
                    .collect();
                println!("{}", Value::Array(v));
            } else {
                for (name, op) in rows {
                    println!("{name:<10} = {op}");
                }
            }
        }
    }
}

fn check(which: CheckKind, m: usize, trials: usize, seed: u64, as_json: bool) -> Result<(), Failure> {
    if m == 0 || m > 6 {
        return Err(Failure::Input(format!("--m must be between 1 and 6, got {m}")));
    }
    let mut reports: Vec<CheckReport> = Vec::new();
    let all = matches!(which, CheckKind::All);
    if all || matches!(which, CheckKind::Words) {
        reports.push(check_word_products(m.min(3))?);
    }
    if all || matches!(which, CheckKind::Jacobi) {
        let (c, s) = check_jacobi(m, trials, seed)?;
        reports.push(c);
        reports.push(s);
    }
    if all || matches!(which, CheckKind::Phi) {
        reports.push(check_phi(m.min(3), trials, seed)?);
    }
    if all || matches!(which, CheckKind::Dict) {
        reports.push(check_dictionary()?);
    }
    if as_json {
        let v: Vec<Value> = reports
            .iter()
            .map(|r| {
                json!({
                    "name": r.name,
                    "passed": r.passed(),
                    "cases": r.cases,
                    "failures": r.failures,
                    "max_error": r.max_error,
                })
            })
            .collect();
        println!("{}", Value::Array(v));
    } else {
        for r in &reports {
            let verdict = if r.passed() { "PASS" } else { "FAIL" };
            println!(
                "{verdict} {:<24} cases={:<6} max_error={:.3e}",
                r.name, r.cases, r.max_error
            );
        }
    }
    if reports.iter().all(CheckReport::passed) {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let j = cli.json;
    match cli.command {
        Command::Eval { expr, dense } => eval(&expr, dense, j),
        Command::Decompose { matrix } => decompose(&matrix, j),
        Command::Bv {
            m,
            support,
            factors,
        } => bv(m, support, factors, j),
        Command::Grover {
            m,
            marked,
            iters,
            trace,
        } => grover(m, &marked, &iters, trace, j),
        Command::Chsh { which } => chsh(which, j),
        Command::Table { which } => {
            table(which, j);
            Ok(())
        }
        Command::Check {
            which,
            m,
            trials,
            seed,
        } => check(which, m, trials, seed, j),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
