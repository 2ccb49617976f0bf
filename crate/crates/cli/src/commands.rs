//! Command definitions and dispatch.
//!
//! Exit code contract: 0 = success / identity verified, 1 = counterexample
//! or impossibility confirmed (a legitimate negative verdict), 2 = usage or
//! parse error. Diagnostics go to the error stream, never into the output.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use grassmat::grassmann::{GrassmannElement, GrassmannRing};
use grassmat::identities::{
    cayley_hamilton, quadratic_ch_obstruction, verify_standard_identity, IdentityVerdict,
};
use grassmat::matrix::{newton_charpoly, Matrix, MatrixRing};
use grassmat::quotient::{CappedPolyRing, SquareFreeRing};
use grassmat::rep::{
    ct_representation, e3_demo, embedding_bounds, is_ct, left_mul_matrix, quaternion_embed,
    quaternion_mul, rep_sizes, GrassmannRep,
};
use grassmat::ring::RationalField;
use grassmat::skew::{grassmann_skew_ring, skew_to_grassmann, CyclicVarShift, SkewPolyRing};
use grassmat::{Rational, Ring};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::parse::{
    parse_grassmann, parse_matrix, parse_quaternion, parse_sqfree, ParsedMatrix,
};

#[derive(Parser)]
#[command(
    name = "grassmat",
    version,
    about = "Exact computations with finitely generated Grassmann algebras: \
             matrix embeddings over square-free polynomial quotients, \
             Cayley-Hamilton and standard identities, and truncated skew \
             polynomial rings",
    after_help = "All randomness is driven by ChaCha8 from the single \
                  64-bit --seed, so identical invocations print identical \
                  bytes."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a representation to an element (or entrywise to a matrix file)
    Embed {
        /// Generator count of the source algebra
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, value_enum)]
        rep: RepKind,
        /// Element in the grammar, e.g. "1 - 2/3*v1*v2"
        #[arg(long)]
        element: Option<String>,
        /// Matrix file to embed entrywise (rep=ct only)
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Multiply two elements and print the canonical form
    Mul {
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value = "grassmann")]
        ring: ElementRing,
        /// Exactly two occurrences: the two factors
        #[arg(long = "element")]
        elements: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Characteristic polynomial of a matrix file (for grassmann entries:
    /// the full Cayley-Hamilton certificate through the ct embedding)
    Charpoly {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Exact verification commands
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Embedding size bounds for the m-generator algebra
    Bounds {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        json: bool,
    },
    /// Left regular representation matrix of an element (2^m x 2^m over Q)
    Regular {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        element: String,
        #[arg(long)]
        json: bool,
    },
    /// Truncated skew polynomial commands
    #[command(subcommand)]
    Skew(SkewCommand),
    /// Show why no monic quadratic identity with rational coefficients
    /// holds for v1 + v2*v3 in the 3-generator algebra
    Remark35 {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RepKind {
    /// Constant-trace embedding into 2^(m-1) x 2^(m-1) matrices
    Ct,
    /// Left regular representation (2^m x 2^m over Q)
    Regular,
    /// The 2x2 non-constant-trace embedding of the 3-generator algebra
    E3demo,
    /// Quaternions a + b*v1 + c*v2 + d*v3 into 4x4 rational matrices
    Quaternion,
}

#[derive(Clone, Copy, ValueEnum)]
enum ElementRing {
    Grassmann,
    Sqfree,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Derive Cayley-Hamilton certificates for random matrices and check
    /// the residual vanishes in the Grassmann matrix algebra
    Ch {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "coeff-bound", default_value_t = 3)]
        coeff_bound: i64,
        #[arg(long)]
        json: bool,
    },
    /// Check the standard identity S_k = 0 on random tuples from M_n of
    /// the m-generator algebra
    Standard {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Degree k of the standard polynomial (k <= 9)
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 50)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "coeff-bound", default_value_t = 3)]
        coeff_bound: i64,
        #[arg(long)]
        json: bool,
    },
    /// Check multiplicativity and additivity of a representation on random
    /// pairs
    Hom {
        #[arg(long, value_enum)]
        rep: RepKind,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, default_value_t = 100)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "coeff-bound", default_value_t = 3)]
        coeff_bound: i64,
        #[arg(long)]
        json: bool,
    },
    /// Check the constant-trace property (exhaustive on basis monomials,
    /// then random trials)
    Ct {
        #[arg(long, value_enum)]
        rep: RepKind,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, default_value_t = 100)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum SkewCommand {
    /// 2x2 matrix image of (g) + (h)*w over the m-generator algebra with
    /// the grading involution
    Mu {
        #[arg(long)]
        m: u32,
        /// Exactly two occurrences: the coefficients g and h
        #[arg(long = "element")]
        elements: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Image of (g) + (h)*w under the isomorphism onto the (m+1)-generator
    /// algebra (w becomes the new generator)
    Iso {
        #[arg(long)]
        m: u32,
        #[arg(long = "element")]
        elements: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Order-3 demonstration: t = 3 over the degree-capped polynomial ring
    /// in a, b, c with the cyclic variable shift
    Demo43 {
        #[arg(long, default_value_t = 100)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

/// Captured result of one command invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Verdict(String),
}

impl From<grassmat::Error> for Failure {
    fn from(e: grassmat::Error) -> Self {
        Failure::Verdict(e.to_string())
    }
}

impl From<crate::parse::ParseError> for Failure {
    fn from(e: crate::parse::ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(String, i32), Failure>;

/// Parses and runs one command line (argv[0] is the program name), capturing
/// output instead of printing.
pub fn run_command<I, T>(argv: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.exit_code() == 0 {
                RunOutput { code: 0, stdout: rendered, stderr: String::new() }
            } else {
                RunOutput { code: 2, stdout: String::new(), stderr: rendered }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((stdout, code)) => RunOutput { code, stdout, stderr: String::new() },
        Err(Failure::Usage(msg)) => {
            RunOutput { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
        }
        Err(Failure::Verdict(msg)) => {
            RunOutput { code: 1, stdout: String::new(), stderr: format!("error: {msg}\n") }
        }
    }
}

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Embed { m, rep, element, matrix, json } => {
            cmd_embed(m, rep, element, matrix, json)
        }
        Command::Mul { m, ring, elements, json } => cmd_mul(m, ring, elements, json),
        Command::Charpoly { matrix, json } => cmd_charpoly(matrix, json),
        Command::Verify(v) => match v {
            VerifyCommand::Ch { m, n, trials, seed, coeff_bound, json } => {
                cmd_verify_ch(m, n, trials, seed, coeff_bound, json)
            }
            VerifyCommand::Standard { m, n, degree, trials, seed, coeff_bound, json } => {
                cmd_verify_standard(m, n, degree, trials, seed, coeff_bound, json)
            }
            VerifyCommand::Hom { rep, m, trials, seed, coeff_bound, json } => {
                cmd_verify_hom(rep, m, trials, seed, coeff_bound, json)
            }
            VerifyCommand::Ct { rep, m, trials, seed, json } => {
                cmd_verify_ct(rep, m, trials, seed, json)
            }
        },
        Command::Bounds { m, json } => cmd_bounds(m, json),
        Command::Regular { m, element, json } => cmd_regular(m, element, json),
        Command::Skew(s) => match s {
            SkewCommand::Mu { m, elements, json } => cmd_skew_mu(m, elements, json),
            SkewCommand::Iso { m, elements, json } => cmd_skew_iso(m, elements, json),
            SkewCommand::Demo43 { trials, seed, json } => cmd_skew_demo43(trials, seed, json),
        },
        Command::Remark35 { json } => cmd_remark35(json),
    }
}

/// JSON form of a matrix over a ring whose basis keys are generator
/// bitmasks (grassmann, sqfree, rational): each entry is a list of
/// `{"monomial": [indices], "coeff": "p/q"}` terms.
fn mask_matrix_json<R: Ring>(mat: &Matrix<R>) -> Value {
    let n = mat.n();
    let entries: Vec<Value> = (0..n)
        .map(|i| {
            let row: Vec<Value> = (0..n)
                .map(|j| {
                    let terms: Vec<Value> = mat
                        .ring()
                        .coeff_vector(mat.entry(i, j))
                        .into_iter()
                        .map(|(mask, c)| {
                            let indices: Vec<u64> =
                                (0..64).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect();
                            json!({ "monomial": indices, "coeff": c.to_string() })
                        })
                        .collect();
                    Value::Array(terms)
                })
                .collect();
            Value::Array(row)
        })
        .collect();
    json!({ "n": n, "ring": mat.ring().name(), "entries": entries })
}

fn element_json<R: Ring>(ring: &R, e: &R::Elem) -> Value {
    let terms: Vec<Value> = ring
        .coeff_vector(e)
        .into_iter()
        .map(|(mask, c)| {
            let indices: Vec<u64> =
                (0..64).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect();
            json!({ "monomial": indices, "coeff": c.to_string() })
        })
        .collect();
    json!({ "ring": ring.name(), "terms": terms })
}

fn coeffs_strings(coeffs: &grassmat::matrix::CharPolyCoeffs) -> Vec<String> {
    coeffs.coeffs().iter().map(|c| c.to_string()).collect()
}

fn require_m(m: Option<u32>, default: Option<u32>, rep: &str) -> Result<u32, Failure> {
    match (m, default) {
        (Some(m), Some(d)) if m != d => Err(Failure::Usage(format!(
            "--rep {rep} is defined for m = {d}, got --m {m}"
        ))),
        (Some(m), _) => Ok(m),
        (None, Some(d)) => Ok(d),
        (None, None) => Err(Failure::Usage("--m is required".to_string())),
    }
}

fn cmd_embed(
    m: Option<u32>,
    rep: RepKind,
    element: Option<String>,
    matrix: Option<PathBuf>,
    json: bool,
) -> CmdResult {
    let element_text = match (&element, &matrix) {
        (Some(e), None) => Some(e.clone()),
        (None, Some(_)) => None,
        _ => {
            return Err(Failure::Usage(
                "provide exactly one of --element or --matrix".to_string(),
            ));
        }
    };
    match rep {
        RepKind::Ct => {
            let m = require_m(m, None, "ct")?;
            let rep = ct_representation(m)?;
            let image = match element_text {
                Some(text) => rep.apply(&parse_grassmann(&text, m)?)?,
                None => {
                    let path = matrix.expect("checked above");
                    let text = std::fs::read_to_string(&path).map_err(|e| {
                        Failure::Usage(format!("cannot read {}: {e}", path.display()))
                    })?;
                    match parse_matrix(&text)? {
                        ParsedMatrix::Grassmann(a) => rep.extend_to_matrices(&a)?,
                        _ => {
                            return Err(Failure::Usage(
                                "matrix file must have grassmann entries".to_string(),
                            ));
                        }
                    }
                }
            };
            if json {
                Ok((format!("{}\n", mask_matrix_json(&image)), 0))
            } else {
                Ok((image.to_string(), 0))
            }
        }
        RepKind::Regular => {
            let m = require_m(m, None, "regular")?;
            let text = element_text
                .ok_or_else(|| Failure::Usage("--rep regular needs --element".to_string()))?;
            let image = left_mul_matrix(&parse_grassmann(&text, m)?)?;
            if json {
                Ok((format!("{}\n", mask_matrix_json(&image)), 0))
            } else {
                Ok((image.to_string(), 0))
            }
        }
        RepKind::E3demo => {
            let _ = require_m(m, Some(3), "e3demo")?;
            let text = element_text
                .ok_or_else(|| Failure::Usage("--rep e3demo needs --element".to_string()))?;
            let image = e3_demo().apply(&parse_grassmann(&text, 3)?)?;
            if json {
                Ok((format!("{}\n", mask_matrix_json(&image)), 0))
            } else {
                Ok((image.to_string(), 0))
            }
        }
        RepKind::Quaternion => {
            if m.is_some() {
                return Err(Failure::Usage(
                    "--m is not used with --rep quaternion".to_string(),
                ));
            }
            let text = element_text
                .ok_or_else(|| Failure::Usage("--rep quaternion needs --element".to_string()))?;
            let image = quaternion_embed(&parse_quaternion(&text)?);
            if json {
                Ok((format!("{}\n", mask_matrix_json(&image)), 0))
            } else {
                Ok((image.to_string(), 0))
            }
        }
    }
}

fn cmd_mul(m: u32, ring: ElementRing, elements: Vec<String>, json: bool) -> CmdResult {
    let [a, b]: [String; 2] = elements
        .try_into()
        .map_err(|_| Failure::Usage("--element must appear exactly twice".to_string()))?;
    match ring {
        ElementRing::Grassmann => {
            let ring = GrassmannRing::new(m)?;
            let product = parse_grassmann(&a, m)?.mul(&parse_grassmann(&b, m)?)?;
            if json {
                Ok((format!("{}\n", element_json(&ring, &product)), 0))
            } else {
                Ok((format!("{product}\n"), 0))
            }
        }
        ElementRing::Sqfree => {
            let ring = SquareFreeRing::new(m)?;
            let product = parse_sqfree(&a, m)?.mul(&parse_sqfree(&b, m)?)?;
            if json {
                Ok((format!("{}\n", element_json(&ring, &product)), 0))
            } else {
                Ok((format!("{}\n", ring.render(&product)), 0))
            }
        }
    }
}

fn cmd_charpoly(matrix: PathBuf, json: bool) -> CmdResult {
    let text = std::fs::read_to_string(&matrix)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", matrix.display())))?;
    match parse_matrix(&text)? {
        ParsedMatrix::Rational(a) => {
            let cp = newton_charpoly(&a)?;
            if json {
                Ok((
                    format!(
                        "{}\n",
                        json!({ "degree": cp.degree(), "coeffs": coeffs_strings(&cp) })
                    ),
                    0,
                ))
            } else {
                Ok((format!("degree={}\ncoeffs={}\n", cp.degree(), cp), 0))
            }
        }
        ParsedMatrix::SqFree(a) => {
            let cp = newton_charpoly(&a)?;
            if json {
                Ok((
                    format!(
                        "{}\n",
                        json!({ "degree": cp.degree(), "coeffs": coeffs_strings(&cp) })
                    ),
                    0,
                ))
            } else {
                Ok((format!("degree={}\ncoeffs={}\n", cp.degree(), cp), 0))
            }
        }
        ParsedMatrix::Grassmann(a) => {
            let cert = cayley_hamilton(&a)?;
            let code = if cert.residual_is_zero { 0 } else { 1 };
            if json {
                Ok((
                    format!(
                        "{}\n",
                        json!({
                            "m": cert.m,
                            "n": cert.n,
                            "degree": cert.degree,
                            "coeffs": coeffs_strings(&cert.coeffs),
                            "residual_is_zero": cert.residual_is_zero,
                        })
                    ),
                    code,
                ))
            } else {
                Ok((
                    format!(
                        "m={} n={} degree={}\ncoeffs={}\nresidual={}\n",
                        cert.m,
                        cert.n,
                        cert.degree,
                        cert.coeffs,
                        if cert.residual_is_zero { "0" } else { "nonzero" }
                    ),
                    code,
                ))
            }
        }
    }
}

fn cmd_verify_ch(
    m: u32,
    n: usize,
    trials: u32,
    seed: u64,
    coeff_bound: i64,
    json: bool,
) -> CmdResult {
    let ring = GrassmannRing::new(m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = String::new();
    let mut results = Vec::new();
    let mut all_zero = true;
    for trial in 0..trials {
        let a = Matrix::sample(ring, n, &mut rng, coeff_bound);
        let cert = cayley_hamilton(&a)?;
        all_zero &= cert.residual_is_zero;
        if json {
            results.push(json!({
                "trial": trial,
                "degree": cert.degree,
                "coeffs": coeffs_strings(&cert.coeffs),
                "residual_is_zero": cert.residual_is_zero,
            }));
        } else {
            let _ = writeln!(
                out,
                "trial={trial} degree={} coeffs={} residual={}",
                cert.degree,
                cert.coeffs,
                if cert.residual_is_zero { "0" } else { "nonzero" }
            );
        }
    }
    let code = if all_zero { 0 } else { 1 };
    if json {
        let doc = json!({
            "check": "ch", "m": m, "n": n, "trials": trials, "seed": seed,
            "coeff_bound": coeff_bound, "all_residuals_zero": all_zero,
            "certificates": results,
        });
        Ok((format!("{doc}\n"), code))
    } else {
        let _ = writeln!(
            out,
            "ch m={m} n={n}: {} of {trials} residuals zero (seed={seed} coeff-bound={coeff_bound})",
            if all_zero { trials } else { 0 }
        );
        Ok((out, code))
    }
}

fn cmd_verify_standard(
    m: u32,
    n: usize,
    degree: usize,
    trials: u32,
    seed: u64,
    coeff_bound: i64,
    json: bool,
) -> CmdResult {
    let base = GrassmannRing::new(m)?;
    let ring = MatrixRing::new(base, n)?;
    let verdict = verify_standard_identity(&ring, degree, trials, seed, coeff_bound)?;
    match verdict {
        IdentityVerdict::HoldsOnSamples { trials } => {
            if json {
                let doc = json!({
                    "check": "standard", "degree": degree, "ring": ring.name(),
                    "verdict": "holds_on_samples", "trials": trials, "seed": seed,
                    "coeff_bound": coeff_bound,
                });
                Ok((format!("{doc}\n"), 0))
            } else {
                Ok((
                    format!(
                        "S_{degree} on {}: holds on {trials} samples (seed={seed} coeff-bound={coeff_bound})\n",
                        ring.name()
                    ),
                    0,
                ))
            }
        }
        IdentityVerdict::Counterexample { trial, args, value } => {
            if json {
                let doc = json!({
                    "check": "standard", "degree": degree, "ring": ring.name(),
                    "verdict": "counterexample", "trial": trial, "seed": seed,
                    "coeff_bound": coeff_bound,
                    "args": args.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
                    "value": value.to_string(),
                });
                Ok((format!("{doc}\n"), 1))
            } else {
                let mut out = format!(
                    "S_{degree} on {}: counterexample at trial {trial} (seed={seed} coeff-bound={coeff_bound})\n",
                    ring.name()
                );
                for (i, a) in args.iter().enumerate() {
                    let _ = write!(out, "arg{} =\n{a}", i + 1);
                }
                let _ = write!(out, "value =\n{value}");
                Ok((out, 1))
            }
        }
    }
}

fn cmd_verify_hom(
    rep: RepKind,
    m: Option<u32>,
    trials: u32,
    seed: u64,
    coeff_bound: i64,
    json: bool,
) -> CmdResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (name, m_used, failure): (&str, u32, Option<String>) = match rep {
        RepKind::Ct => {
            let m = require_m(m, None, "ct")?;
            let rep = ct_representation(m)?;
            (
                "ct",
                m,
                hom_failure_grassmann(&rep, trials, coeff_bound, &mut rng)?,
            )
        }
        RepKind::E3demo => {
            let m = require_m(m, Some(3), "e3demo")?;
            let rep = e3_demo();
            (
                "e3demo",
                m,
                hom_failure_grassmann(&rep, trials, coeff_bound, &mut rng)?,
            )
        }
        RepKind::Regular => {
            let m = require_m(m, None, "regular")?;
            let ring = GrassmannRing::new(m)?;
            let mut failure = None;
            for _ in 0..trials {
                let a = ring.sample(&mut rng, coeff_bound);
                let b = ring.sample(&mut rng, coeff_bound);
                let lhs = left_mul_matrix(&a.mul(&b)?)?;
                let rhs = left_mul_matrix(&a)?.mul(&left_mul_matrix(&b)?)?;
                if lhs != rhs {
                    failure = Some(format!("lambda(ab) != lambda(a)lambda(b) for a={a}, b={b}"));
                    break;
                }
            }
            ("regular", m, failure)
        }
        RepKind::Quaternion => {
            if m.is_some() {
                return Err(Failure::Usage(
                    "--m is not used with --rep quaternion".to_string(),
                ));
            }
            let field = RationalField;
            let mut failure = None;
            for _ in 0..trials {
                let p: [Rational; 4] = std::array::from_fn(|_| field.sample(&mut rng, coeff_bound));
                let q: [Rational; 4] = std::array::from_fn(|_| field.sample(&mut rng, coeff_bound));
                let lhs = quaternion_embed(&p).mul(&quaternion_embed(&q))?;
                let rhs = quaternion_embed(&quaternion_mul(&p, &q));
                if lhs != rhs {
                    failure = Some("embedding not multiplicative".to_string());
                    break;
                }
            }
            ("quaternion", 0, failure)
        }
    };
    let holds = failure.is_none();
    let code = if holds { 0 } else { 1 };
    if json {
        let doc = json!({
            "check": "hom", "rep": name, "m": m_used, "trials": trials, "seed": seed,
            "coeff_bound": coeff_bound, "verdict": if holds { "holds" } else { "counterexample" },
            "witness": failure,
        });
        Ok((format!("{doc}\n"), code))
    } else if let Some(msg) = failure {
        Ok((format!("hom rep={name}: counterexample (seed={seed})\n{msg}\n"), code))
    } else {
        Ok((
            format!("hom rep={name}: holds on {trials} random pairs (seed={seed} coeff-bound={coeff_bound})\n"),
            code,
        ))
    }
}

fn hom_failure_grassmann<R: Ring>(
    rep: &GrassmannRep<R>,
    trials: u32,
    coeff_bound: i64,
    rng: &mut ChaCha8Rng,
) -> Result<Option<String>, Failure> {
    let source = rep.source();
    for _ in 0..trials {
        let a = source.sample(rng, coeff_bound);
        let b = source.sample(rng, coeff_bound);
        let mul_lhs = rep.apply(&a.mul(&b)?)?;
        let mul_rhs = rep.apply(&a)?.mul(&rep.apply(&b)?)?;
        if mul_lhs != mul_rhs {
            return Ok(Some(format!("rep(ab) != rep(a)rep(b) for a={a}, b={b}")));
        }
        let add_lhs = rep.apply(&a.add(&b)?)?;
        let add_rhs = rep.apply(&a)?.add(&rep.apply(&b)?)?;
        if add_lhs != add_rhs {
            return Ok(Some(format!("rep(a+b) != rep(a)+rep(b) for a={a}, b={b}")));
        }
    }
    Ok(None)
}

fn cmd_verify_ct(
    rep: RepKind,
    m: Option<u32>,
    trials: u32,
    seed: u64,
    json: bool,
) -> CmdResult {
    enum Checked {
        SqFree(grassmat::rep::CtVerdict<grassmat::quotient::SquareFreePoly>, SquareFreeRing),
        Rational(grassmat::rep::CtVerdict<Rational>),
    }
    let (name, m_used, verdict) = match rep {
        RepKind::Ct => {
            let m = require_m(m, None, "ct")?;
            let r = ct_representation(m)?;
            ("ct", m, Checked::SqFree(is_ct(&r, trials, seed)?, *r.target()))
        }
        RepKind::E3demo => {
            let m = require_m(m, Some(3), "e3demo")?;
            let r = e3_demo();
            ("e3demo", m, Checked::SqFree(is_ct(&r, trials, seed)?, *r.target()))
        }
        RepKind::Regular => {
            let m = require_m(m, None, "regular")?;
            let r = grassmat::rep::regular_representation(m)?;
            ("regular", m, Checked::Rational(is_ct(&r, trials, seed)?))
        }
        RepKind::Quaternion => {
            return Err(Failure::Usage(
                "verify ct applies to Grassmann representations; use ct, regular or e3demo"
                    .to_string(),
            ));
        }
    };
    let (is_constant, witness): (bool, Option<(String, String)>) = match verdict {
        Checked::SqFree(v, ring) => (
            v.is_ct,
            v.witness.map(|(g, tr)| (g.to_string(), ring.render(&tr))),
        ),
        Checked::Rational(v) => (
            v.is_ct,
            v.witness.map(|(g, tr)| (g.to_string(), tr.to_string())),
        ),
    };
    let code = if is_constant { 0 } else { 1 };
    if json {
        let doc = json!({
            "check": "ct", "rep": name, "m": m_used, "trials": trials, "seed": seed,
            "verdict": if is_constant { "constant_trace" } else { "not_constant_trace" },
            "witness": witness.as_ref().map(|(g, _)| g.clone()),
            "witness_trace": witness.as_ref().map(|(_, t)| t.clone()),
        });
        Ok((format!("{doc}\n"), code))
    } else if let Some((g, tr)) = witness {
        Ok((
            format!(
                "ct rep={name} m={m_used}: NOT constant trace (seed={seed})\nwitness = {g}\ntrace = {tr}\n"
            ),
            code,
        ))
    } else {
        Ok((
            format!(
                "ct rep={name} m={m_used}: constant trace on all basis monomials and {trials} random elements (seed={seed})\n"
            ),
            code,
        ))
    }
}

fn cmd_bounds(m: u32, json: bool) -> CmdResult {
    let bounds = embedding_bounds(m)?;
    let (ct_size, regular_size) = rep_sizes(m);
    if json {
        let doc = json!({
            "m": m,
            "min_t_commutative": bounds.min_t_commutative,
            "min_t_over_K": bounds.min_t_over_k,
            "ct_size": ct_size,
            "regular_size": regular_size,
        });
        Ok((format!("{doc}\n"), 0))
    } else {
        Ok((
            format!(
                "min_t_commutative={}\nmin_t_over_K={}\nct_size={ct_size}\nregular_size={regular_size}\n",
                bounds.min_t_commutative, bounds.min_t_over_k
            ),
            0,
        ))
    }
}

fn cmd_regular(m: u32, element: String, json: bool) -> CmdResult {
    let image = left_mul_matrix(&parse_grassmann(&element, m)?)?;
    if json {
        Ok((format!("{}\n", mask_matrix_json(&image)), 0))
    } else {
        Ok((image.to_string(), 0))
    }
}

fn parse_skew_pair(
    m: u32,
    elements: Vec<String>,
) -> Result<
    (
        grassmat::skew::GrassmannSkewRing,
        grassmat::skew::SkewPoly<GrassmannElement>,
    ),
    Failure,
> {
    let [g, h]: [String; 2] = elements
        .try_into()
        .map_err(|_| Failure::Usage("--element must appear exactly twice (g, then h)".to_string()))?;
    let ring = grassmann_skew_ring(m)?;
    let f = ring.poly(vec![parse_grassmann(&g, m)?, parse_grassmann(&h, m)?])?;
    Ok((ring, f))
}

fn cmd_skew_mu(m: u32, elements: Vec<String>, json: bool) -> CmdResult {
    let (ring, f) = parse_skew_pair(m, elements)?;
    let image = ring.involution_matrix_rep(&f)?;
    if json {
        let adj = ring.adjunction_ring();
        let entries: Vec<Vec<String>> = (0..image.n())
            .map(|i| (0..image.n()).map(|j| adj.render(image.entry(i, j))).collect())
            .collect();
        let doc = json!({
            "n": image.n(), "ring": adj.name(), "input": ring.render(&f),
            "entries_text": entries,
        });
        Ok((format!("{doc}\n"), 0))
    } else {
        Ok((format!("mu({}) =\n{image}", ring.render(&f)), 0))
    }
}

fn cmd_skew_iso(m: u32, elements: Vec<String>, json: bool) -> CmdResult {
    let (ring, f) = parse_skew_pair(m, elements)?;
    let image = skew_to_grassmann(&ring, &f)?;
    if json {
        let wide = GrassmannRing::new(m + 1)?;
        let doc = json!({
            "input": ring.render(&f),
            "image": element_json(&wide, &image),
        });
        Ok((format!("{doc}\n"), 0))
    } else {
        Ok((format!("{}  ->  {image}\n", ring.render(&f)), 0))
    }
}

fn cmd_skew_demo43(trials: u32, seed: u64, json: bool) -> CmdResult {
    let base = CappedPolyRing::new(&["a", "b", "c"], 6)?;
    let ring = SkewPolyRing::new(base.clone(), CyclicVarShift::new(3), 3)?;
    let adj = ring.adjunction_ring();
    let f = ring.poly(vec![base.var(0), base.var(1)])?;
    let image = ring.cyclic_matrix_rep(&f)?;
    let trace = image.trace();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failure: Option<String> = None;
    for _ in 0..trials {
        let p = ring.sample(&mut rng, 3);
        let q = ring.sample(&mut rng, 3);
        let lhs = ring.cyclic_matrix_rep(&ring.mul(&p, &q))?;
        let rhs = ring.cyclic_matrix_rep(&p)?.mul(&ring.cyclic_matrix_rep(&q)?)?;
        if lhs != rhs {
            failure = Some(format!("mu(fg) != mu(f)mu(g) for f={}, g={}", ring.render(&p), ring.render(&q)));
            break;
        }
    }
    let holds = failure.is_none();
    let code = if holds { 0 } else { 1 };
    if json {
        let entries: Vec<Vec<String>> = (0..image.n())
            .map(|i| (0..image.n()).map(|j| adj.render(image.entry(i, j))).collect())
            .collect();
        let doc = json!({
            "ring": ring.name(), "t": 3, "input": ring.render(&f),
            "entries_text": entries, "trace": adj.render(&trace),
            "multiplicativity": if holds { "holds" } else { "counterexample" },
            "trials": trials, "seed": seed, "witness": failure,
        });
        Ok((format!("{doc}\n"), code))
    } else {
        let mut out = format!("mu({}) over {} =\n{image}", ring.render(&f), ring.name());
        let _ = writeln!(out, "trace = {}", adj.render(&trace));
        match &failure {
            None => {
                let _ = writeln!(
                    out,
                    "multiplicativity: holds on {trials} random pairs (seed={seed})"
                );
            }
            Some(msg) => {
                let _ = writeln!(out, "multiplicativity: counterexample\n{msg}");
            }
        }
        Ok((out, code))
    }
}

fn cmd_remark35(json: bool) -> CmdResult {
    let record = quadratic_ch_obstruction();
    let ring = GrassmannRing::new(3).expect("m = 3");
    let monomial_name = |mask: u32| {
        if mask == 0 {
            "1".to_string()
        } else {
            GrassmannElement::monomial(3, mask, Rational::one())
                .expect("mask fits")
                .to_string()
        }
    };
    let describe_row = |row: &grassmat::identities::ObstructionRow| {
        let mut lhs = Vec::new();
        if !row.constant.is_zero() {
            lhs.push(row.constant.to_string());
        }
        if !row.c1_coeff.is_zero() {
            lhs.push(if row.c1_coeff.is_one() {
                "c1".to_string()
            } else {
                format!("{}*c1", row.c1_coeff)
            });
        }
        if !row.c2_coeff.is_zero() {
            lhs.push(if row.c2_coeff.is_one() {
                "c2".to_string()
            } else {
                format!("{}*c2", row.c2_coeff)
            });
        }
        if lhs.is_empty() {
            lhs.push("0".to_string());
        }
        format!("coefficient of {}: {} = 0", monomial_name(row.mask), lhs.join(" + "))
    };
    let code = if record.solvable { 0 } else { 1 };
    if json {
        let doc = json!({
            "element": ring.render(&record.element),
            "square": ring.render(&record.square),
            "rows": record.rows.iter().map(|r| json!({
                "monomial": monomial_name(r.mask),
                "constant": r.constant.to_string(),
                "c1": r.c1_coeff.to_string(),
                "c2": r.c2_coeff.to_string(),
            })).collect::<Vec<_>>(),
            "verdict": if record.solvable { "solvable" } else { "unsolvable" },
            "inconsistent_row": record.inconsistent_row.as_ref().map(|r| describe_row(r)),
            "existing_identity_degree": record.existing_identity_degree,
        });
        Ok((format!("{doc}\n"), code))
    } else {
        let mut out = String::new();
        let _ = writeln!(out, "A = {}", record.element);
        let _ = writeln!(out, "A^2 = {}", record.square);
        let _ = writeln!(out, "a monic identity A^2 + c1*A + c2 = 0 would require:");
        for row in &record.rows {
            let _ = writeln!(out, "  {}", describe_row(row));
        }
        if record.solvable {
            let _ = writeln!(out, "verdict: solvable");
        } else {
            let _ = writeln!(out, "verdict: unsolvable");
            if let Some(row) = &record.inconsistent_row {
                let _ = writeln!(
                    out,
                    "the equation \"{}\" has no unknowns and a nonzero constant",
                    describe_row(row)
                );
            }
            let _ = writeln!(
                out,
                "a monic identity of degree {} with rational coefficients exists instead",
                record.existing_identity_degree
            );
        }
        Ok((out, code))
    }
}
