//! `theta-forge` command-line front end.
//!
//! Exit status: 0 on success, 1 when a verification reports a failed check,
//! 2 on usage or input errors.

mod output;
mod points;

use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::{BigRational, Rational64};
use serde_json::{json, Value};
use theta_forge::cliffcode::{bott_rep, clifford_verify, spinor_rep, Chirality, CliffordWord};
use theta_forge::codelattice::{code_theta_series, theta_class, verify_alpbach_exact, CodeLattice};
use theta_forge::fpcode::{standard_code_by_name, Code};
use theta_forge::hilbert_eval::{verify_alpbach, verify_sl2f3_action};
use theta_forge::octower::tower_check;
use theta_forge::qexp::{eta, parse_exponent, QSeries};
use theta_forge::suite::{criterion_ids, run_criterion};
use theta_forge::voarep::{main_theorem_check, partition_function, z_map, OrbitClass, RepElement};

use output::Format;

const AUTO_CUTOFF_MAX: i64 = 8;

#[derive(Parser)]
#[command(name = "theta-forge", version, about = "Codes over F_p, cyclotomic lattices, theta series and their checks")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize a code: size, linearity, predicates and weight enumerator.
    Code(CodeArgs),
    /// Lattice Γ_C = ρ^{-1}(C) of a linear self-orthogonal code.
    Lattice(LatticeArgs),
    /// A power of η or of a class theta series as a q-expansion.
    Qexp(QexpArgs),
    /// θ_j = Σ_{x ∈ P + j} q^{⟨x,x⟩/2}, or the coset sum of a code with --code.
    Theta(ThetaArgs),
    /// Representation ring of the lattice vertex algebras.
    Rep {
        #[command(subcommand)]
        command: RepCommand,
    },
    /// Theta identities and the acceptance suite.
    Verify {
        #[command(subcommand)]
        command: VerifyCommand,
    },
    /// Clifford words and the spinor representations of F_8.
    Clifford {
        #[command(subcommand)]
        command: CliffordCommand,
    },
    /// Signed permutation groups.
    Tower {
        #[command(subcommand)]
        command: TowerCommand,
    },
}

#[derive(Args)]
struct CodeSource {
    /// Built-in code (tetracode, hamming8, golay12) or a code file.
    #[arg(long)]
    code: String,
}

#[derive(Args)]
struct CodeArgs {
    #[command(flatten)]
    source: CodeSource,
    /// Also list every word.
    #[arg(long)]
    words: bool,
}

#[derive(Args)]
struct LatticeArgs {
    #[command(flatten)]
    source: CodeSource,
    /// Print rank, discriminant, evenness and minimal norm.
    #[arg(long)]
    info: bool,
    /// List vectors of norm at most this bound.
    #[arg(long)]
    short_vectors: Option<String>,
    /// Shift word for --short-vectors, e.g. "1,0,2,0".
    #[arg(long)]
    shift: Option<String>,
    /// Print the Gram matrix.
    #[arg(long)]
    gram: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesKind {
    Eta,
    Theta,
}

#[derive(Args)]
struct QexpArgs {
    #[arg(long)]
    prime: u32,
    #[arg(long, value_enum)]
    series: SeriesKind,
    /// Class j for --series theta.
    #[arg(long, default_value_t = 0)]
    class: u32,
    /// Integer power, possibly negative.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    power: i64,
    /// Truncation order, "k" or "k/N".
    #[arg(long)]
    order: String,
}

#[derive(Args)]
struct ThetaArgs {
    #[arg(long)]
    prime: Option<u32>,
    #[arg(long, default_value_t = 0)]
    class: u32,
    #[arg(long)]
    order: String,
    /// Sum over the cosets of P^n given by the words of this code instead.
    #[arg(long)]
    code: Option<String>,
}

#[derive(Subcommand)]
enum RepCommand {
    /// Coset theta series Z([M]) of an orbit, e.g. --orbit "1,3".
    Zmap {
        #[arg(long)]
        prime: u32,
        #[arg(long)]
        orbit: String,
        #[arg(long)]
        order: String,
    },
    /// Partition function η^{-n(p-1)} · coset theta of an orbit.
    Partition {
        #[arg(long)]
        prime: u32,
        #[arg(long)]
        orbit: String,
        #[arg(long)]
        order: String,
    },
    /// Grade-n correspondence between orbits and theta monomials.
    CheckMain {
        #[arg(long)]
        prime: u32,
        #[arg(long)]
        n: u32,
        /// Cutoff for the independence test of the coset theta series. When
        /// omitted, integer cutoffs from 3 up to 8 are tried until the series
        /// separate.
        #[arg(long)]
        order: Option<String>,
        /// Skip the independence test.
        #[arg(long)]
        combinatorial_only: bool,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Coset sum against W_C(θ_0, …, θ_r): exact through --order, or
    /// numerically at the points of --points.
    Alpbach {
        #[arg(long)]
        prime: Option<u32>,
        #[command(flatten)]
        source: CodeSource,
        /// Points file; one point of H^r per line as "re,im re,im …".
        #[arg(long)]
        points: Option<String>,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value = "3")]
        order: String,
    },
    /// S and T transformation formulas of θ_0, θ_1 for p = 3 at z = "re,im".
    Sl2f3 {
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// Run one acceptance criterion.
    Criterion {
        #[arg(long)]
        id: u8,
    },
    /// Run the whole acceptance suite.
    All {
        #[arg(long, value_enum, default_value_t = Level::Desk)]
        level: Level,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Desk,
}

#[derive(Subcommand)]
enum CliffordCommand {
    /// All Fano, Pauli, E-matrix, spinor, triality and Bott checks.
    Verify,
    /// Matrix of a word, e.g. --word "0,1" or --word "-0,1".
    Delta {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, value_enum, default_value_t = Rep::Plus)]
        rep: Rep,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Rep {
    Plus,
    Minus,
    Bott,
}

#[derive(Subcommand)]
enum TowerCommand {
    /// Order, perfectness and H^1 of the commutator subgroup of O_n(Z).
    Check {
        #[arg(long)]
        n: usize,
    },
}

/// Outcome of a command: the value to print and whether every check passed.
struct Outcome {
    value: Value,
    text: Option<String>,
    passed: bool,
}

impl Outcome {
    fn report(value: Value) -> Self {
        Outcome { value, text: None, passed: true }
    }

    fn check(value: Value, passed: bool) -> Self {
        Outcome { value, text: None, passed }
    }
}

type CmdResult = Result<Outcome, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            output::emit(&out.value, out.text.as_deref(), cli.format);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn load_code(spec: &str) -> Result<Code, String> {
    if Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).map_err(|e| format!("{spec}: {e}"))?;
        return Code::parse(&text).map_err(|e| format!("{spec}: {e}"));
    }
    standard_code_by_name(spec).map_err(err)
}

fn check_prime(given: Option<u32>, code: &Code) -> Result<(), String> {
    match given {
        Some(p) if p != code.p() => Err(format!("--prime {p} does not match the code, which is over F_{}", code.p())),
        _ => Ok(()),
    }
}

fn series_value(s: &QSeries) -> Value {
    json!({ "p": s.p(), "cutoff": s.cutoff().to_string(), "terms": s.to_json() })
}

fn series_outcome(s: QSeries) -> Outcome {
    Outcome { value: series_value(&s), text: Some(s.to_string()), passed: true }
}

fn run(cmd: Command) -> CmdResult {
    match cmd {
        Command::Code(a) => code_cmd(a),
        Command::Lattice(a) => lattice_cmd(a),
        Command::Qexp(a) => qexp_cmd(a),
        Command::Theta(a) => theta_cmd(a),
        Command::Rep { command } => rep_cmd(command),
        Command::Verify { command } => verify_cmd(command),
        Command::Clifford { command } => clifford_cmd(command),
        Command::Tower { command: TowerCommand::Check { n } } => {
            let t = tower_check(n).map_err(err)?;
            Ok(Outcome::report(serde_json::to_value(t).map_err(err)?))
        }
    }
}

fn code_cmd(a: CodeArgs) -> CmdResult {
    let c = load_code(&a.source.code)?;
    let we = c.weight_enumerator();
    let enumerator: Vec<Value> = we.coefficients.iter().map(|(e, k)| json!({ "exponents": e, "count": k })).collect();
    let mut value = json!({
        "p": c.p(),
        "n": c.n(),
        "size": c.len(),
        "linear": c.is_linear(),
        "dimension": c.dimension(),
        "predicates": c.predicates(),
        "weight_distribution": c.weight_distribution().into_iter().map(|(w, k)| json!({"weight": w, "count": k})).collect::<Vec<_>>(),
        "weight_enumerator": enumerator,
    });
    if a.words {
        value["words"] = c.words().map(|w| w.digits().iter().map(|d| d.to_string()).collect::<String>()).collect();
    }
    Ok(Outcome::report(value))
}

fn parse_word(p: u32, s: &str) -> Result<theta_forge::fpcode::Word, String> {
    let digits = s
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|e| format!("`{t}`: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    theta_forge::fpcode::Word::new(p, digits).map_err(err)
}

fn lattice_cmd(a: LatticeArgs) -> CmdResult {
    let c = load_code(&a.source.code)?;
    let lattice = CodeLattice::new(&c).map_err(err)?;
    let mut value = json!({});
    if a.info || (!a.gram && a.short_vectors.is_none()) {
        value = serde_json::to_value(lattice.info()).map_err(err)?;
    }
    if a.gram {
        value["gram"] = json!(lattice.gram());
    }
    if let Some(bound) = a.short_vectors {
        let b = parse_exponent(&bound).map_err(err)?;
        let big = BigRational::new((*b.numer()).into(), (*b.denom()).into());
        let shift = a.shift.as_deref().map(|s| parse_word(c.p(), s)).transpose()?;
        let vs = lattice.short_vectors(shift.as_ref(), &big).map_err(err)?;
        value["short_vectors"] = vs
            .iter()
            .map(|v| {
                json!({
                    "norm": v.norm.to_string(),
                    "coords": v.coords.iter().map(|x| x.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                })
            })
            .collect();
        value["count"] = json!(vs.len());
    }
    Ok(Outcome::report(value))
}

fn qexp_cmd(a: QexpArgs) -> CmdResult {
    let order = parse_exponent(&a.order).map_err(err)?;
    let s = match a.series {
        SeriesKind::Eta => {
            // η^k is known through k/24 + (c - 1/24) when η is known through c.
            let base_cut = (order - Rational64::new(a.power - 1, 24)).max(Rational64::new(1, 24));
            eta(a.prime, base_cut).map_err(err)?.pow(a.power).map_err(err)?
        }
        SeriesKind::Theta => {
            let t = theta_class(a.prime, a.class, order).map_err(err)?;
            t.pow(a.power).map_err(err)?
        }
    };
    Ok(series_outcome(s.truncate(order.min(s.cutoff()))))
}

fn theta_cmd(a: ThetaArgs) -> CmdResult {
    let order = parse_exponent(&a.order).map_err(err)?;
    match a.code {
        Some(spec) => {
            let c = load_code(&spec)?;
            check_prime(a.prime, &c)?;
            Ok(series_outcome(code_theta_series(&c, order).map_err(err)?))
        }
        None => {
            let p = a.prime.ok_or("--prime is required without --code")?;
            Ok(series_outcome(theta_class(p, a.class, order).map_err(err)?))
        }
    }
}

fn rep_cmd(cmd: RepCommand) -> CmdResult {
    match cmd {
        RepCommand::Zmap { prime, orbit, order } => {
            let o = OrbitClass::parse(prime, &orbit).map_err(err)?;
            let order = parse_exponent(&order).map_err(err)?;
            Ok(series_outcome(z_map(&RepElement::from_orbit(o), order).map_err(err)?))
        }
        RepCommand::Partition { prime, orbit, order } => {
            let o = OrbitClass::parse(prime, &orbit).map_err(err)?;
            let order = parse_exponent(&order).map_err(err)?;
            let (z, meta) = partition_function(&o, order).map_err(err)?;
            let mut value = series_value(&z);
            value["meta"] = serde_json::to_value(meta).map_err(err)?;
            Ok(Outcome { value, text: Some(z.to_string()), passed: true })
        }
        RepCommand::CheckMain { prime, n, order, combinatorial_only } => {
            let r = match (combinatorial_only, order) {
                (true, _) => main_theorem_check(prime, n, None).map_err(err)?,
                (false, Some(o)) => {
                    main_theorem_check(prime, n, Some(parse_exponent(&o).map_err(err)?)).map_err(err)?
                }
                (false, None) => {
                    let mut k = 3;
                    loop {
                        let r = main_theorem_check(prime, n, Some(Rational64::from_integer(k))).map_err(err)?;
                        if r.images_independent != Some(false) || k == AUTO_CUTOFF_MAX {
                            break r;
                        }
                        k += 1;
                    }
                }
            };
            let passed = r.passed;
            Ok(Outcome::check(serde_json::to_value(r).map_err(err)?, passed))
        }
    }
}

fn verify_cmd(cmd: VerifyCommand) -> CmdResult {
    match cmd {
        VerifyCommand::Alpbach { prime, source, points, tol, order } => {
            let c = load_code(&source.code)?;
            check_prime(prime, &c)?;
            match points {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| format!("{path}: {e}"))?;
                    let pts = points::parse(&text).map_err(|e| format!("{path}: {e}"))?;
                    let r = verify_alpbach(&c, &pts, tol).map_err(err)?;
                    let passed = r.passed;
                    Ok(Outcome::check(serde_json::to_value(r).map_err(err)?, passed))
                }
                None => {
                    let order = parse_exponent(&order).map_err(err)?;
                    let r = verify_alpbach_exact(&c, order).map_err(err)?;
                    let passed = r.passed;
                    Ok(Outcome::check(serde_json::to_value(r).map_err(err)?, passed))
                }
            }
        }
        VerifyCommand::Sl2f3 { z, tol } => {
            let z = points::parse_complex(&z)?;
            let r = verify_sl2f3_action(z, tol).map_err(err)?;
            let passed = r.passed;
            Ok(Outcome::check(serde_json::to_value(r).map_err(err)?, passed))
        }
        VerifyCommand::Criterion { id } => {
            let r = run_criterion(id).ok_or_else(|| format!("unknown criterion {id}; known: {:?}", criterion_ids()))?;
            let passed = r.pass;
            let text = output::criterion_line(&r);
            Ok(Outcome { value: serde_json::to_value(r).map_err(err)?, text: Some(text), passed })
        }
        VerifyCommand::All { level: Level::Desk } => {
            let results: Vec<_> = criterion_ids()
                .into_iter()
                .filter_map(|id| {
                    let r = run_criterion(id)?;
                    eprintln!("{}", output::criterion_line(&r));
                    Some(r)
                })
                .collect();
            let passed = results.iter().all(|r| r.pass);
            let text = results.iter().map(output::criterion_line).collect::<Vec<_>>().join("\n");
            Ok(Outcome { value: serde_json::to_value(results).map_err(err)?, text: Some(text), passed })
        }
    }
}

fn clifford_cmd(cmd: CliffordCommand) -> CmdResult {
    match cmd {
        CliffordCommand::Verify => {
            let reports = clifford_verify();
            let passed = reports.iter().all(|r| r.passed());
            Ok(Outcome::check(serde_json::to_value(reports).map_err(err)?, passed))
        }
        CliffordCommand::Delta { word, rep } => {
            let w = CliffordWord::parse(8, &word).map_err(err)?;
            let m = match rep {
                Rep::Plus => spinor_rep(Chirality::Plus, &w).map_err(err)?,
                Rep::Minus => spinor_rep(Chirality::Minus, &w).map_err(err)?,
                Rep::Bott => bott_rep(&w),
            };
            let value = json!({
                "word": w.to_string(),
                "matrix": m.to_dense(),
                "pauli": m.pauli_decomposition().map(|(s, f)| json!({ "sign": s, "factors": f })),
            });
            Ok(Outcome { value, text: Some(format!("{w}\n{m}")), passed: true })
        }
    }
}
