//! `sl2char`: command-line access to trace polynomials, lifts, conjugators and
//! the randomized invariant suites.
//!
//! Exit codes: 0 success, 1 domain error (reducible pair, not conjugate,
//! failed verification), 2 usage error (bad arguments, malformed input).

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use sl2char::charvar::{self, CharTriple, CharVarError};
use sl2char::charvar3::{self, SixTuple};
use sl2char::freegroup::{canonical_trace_key, cyclic_reduce, parse_word, Rank};
use sl2char::json::{complex, complex_list, complex_text, fmt17, mat2, mat2_list};
use sl2char::sl2::{Mat2, RepPair};
use sl2char::tracecalc::TraceTable;
use sl2char::verify::{run_suite, Suite};
use sl2char::Tolerances;

mod complex_arg;

use complex_arg::parse_tuple;

#[derive(Parser, Debug)]
#[command(name = "sl2char", version, about = "SL(2,C) trace polynomials, character lifts and Fricke relations")]
struct Cli {
    #[command(flatten)]
    config: CliConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct CliConfig {
    /// Allowed |det - 1| for input matrices
    #[arg(long, global = true, default_value_t = sl2char::sl2::DEFAULT_DET_TOL)]
    det_tol: f64,
    /// Relative tolerance for symbolic-vs-numeric checks
    #[arg(long, global = true, default_value_t = sl2char::sl2::DEFAULT_ORACLE_TOL)]
    oracle_tol: f64,
    /// |kappa - 2| at or below this counts as reducible
    #[arg(long, global = true, default_value_t = charvar::DEFAULT_IRR_TOL)]
    irr_tol: f64,
    /// Seed for randomized suites
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Number of randomized trials
    #[arg(long, global = true, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Maximum number of memoized trace polynomials
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    memo_cap: Option<u64>,
}

impl CliConfig {
    fn tolerances(&self) -> Result<Tolerances, CliError> {
        for (name, v) in [("det-tol", self.det_tol), ("oracle-tol", self.oracle_tol), ("irr-tol", self.irr_tol)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::Usage(format!("--{name} must be a positive number")));
            }
        }
        Ok(Tolerances { det_tol: self.det_tol, oracle_tol: self.oracle_tol, irr_tol: self.irr_tol })
    }

    fn table(&self) -> TraceTable {
        match self.memo_cap {
            Some(cap) => TraceTable::with_cap(cap as usize),
            None => TraceTable::new(),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Trace polynomial of a rank-2 word in x = tr X, y = tr Y, z = tr XY
    Trace {
        word: String,
        #[arg(long, default_value_t = 2)]
        rank: usize,
    },
    /// Evaluate the trace polynomial of a word at a point
    Eval {
        word: String,
        /// Comma-separated x,y,z (complex literals like 1, 2.5-1i)
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// kappa(x, y, z) = x^2 + y^2 + z^2 - xyz - 2
    Kappa {
        #[arg(num_args = 1.., allow_hyphen_values = true, required = true)]
        coords: Vec<String>,
    },
    /// Matrix pair with traces (x, y, z)
    Lift {
        #[arg(num_args = 1.., allow_hyphen_values = true, required = true)]
        coords: Vec<String>,
    },
    /// Matrix triple with traces (t1, t2, t3, t12, t23, t13)
    Lift3 {
        #[arg(num_args = 1.., allow_hyphen_values = true, required = true)]
        coords: Vec<String>,
    },
    /// Conjugator between two pairs; the file holds [[xi, eta], [xi', eta']]
    Conjugate { pairs: String },
    /// Element g with g(xi, eta)g^-1 = (xi^-1, eta^-1); the file holds [xi, eta]
    Invol { pair: String },
    /// Randomized invariant suites; exit 0 iff every residual is within tolerance
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
    },
    /// Reduced form, cyclic core and canonical trace key of a word
    Reduce {
        word: String,
        #[arg(long, default_value_t = 2)]
        rank: usize,
    },
    /// The two roots of lambda^2 - P lambda + Q for a six-tuple
    Roots3 {
        #[arg(num_args = 1.., allow_hyphen_values = true, required = true)]
        coords: Vec<String>,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(String),
}

impl From<CharVarError> for CliError {
    fn from(e: CharVarError) -> Self {
        match e {
            CharVarError::ReduciblePair => CliError::Domain("REDUCIBLE".into()),
            CharVarError::NotConjugate => CliError::Domain("NOT_CONJUGATE".into()),
            CharVarError::Matrix(m) => CliError::Usage(m.to_string()),
        }
    }
}

fn rank_of(n: usize) -> Result<Rank, CliError> {
    Rank::from_count(n).ok_or_else(|| CliError::Usage(format!("rank must be 2 or 3, got {n}")))
}

fn word_arg(text: &str, rank: Rank) -> Result<sl2char::Word, CliError> {
    parse_word(text, rank).map_err(|e| CliError::Usage(format!("bad word {text:?}: {e}")))
}

fn coords<const N: usize>(raw: &[String]) -> Result<[Complex64; N], CliError> {
    parse_tuple::<N>(raw).map_err(CliError::Usage)
}

fn read_input(path: &str) -> Result<String, CliError> {
    let mut text = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
    Ok(text)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, CliError> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("malformed JSON in {path}: {e}")))
}

fn certified(m: [Mat2; 2], det_tol: f64) -> Result<RepPair, CliError> {
    RepPair::new(m[0], m[1], det_tol).map_err(|e| CliError::Usage(e.to_string()))
}

fn run(cli: Cli) -> Result<(String, bool), CliError> {
    let cfg = &cli.config;
    let tol = cfg.tolerances()?;
    let json = cfg.json;
    let out = match &cli.command {
        Command::Trace { word, rank } => {
            let rank = rank_of(*rank)?;
            if rank != Rank::Two {
                return Err(CliError::Usage(
                    "trace polynomials are computed for rank-2 words only; \
                     rank-3 words reduce to the eight generators via the Fricke relations (see roots3/lift3)"
                        .into(),
                ));
            }
            let w = word_arg(word, rank)?;
            let p = cfg.table().trace_poly(&w).map_err(|e| CliError::Usage(e.to_string()))?;
            if json {
                format!("{{\"word\": \"{w}\", \"poly\": \"{p}\"}}")
            } else {
                p.to_string()
            }
        }
        Command::Eval { word, at } => {
            let w = word_arg(word, Rank::Two)?;
            let [x, y, z] = coords::<3>(std::slice::from_ref(at))?;
            let p = cfg.table().trace_poly(&w).map_err(|e| CliError::Usage(e.to_string()))?;
            let v = p.eval_xyz(x, y, z).map_err(|e| CliError::Usage(e.to_string()))?;
            if json {
                complex(v)
            } else {
                complex_text(v)
            }
        }
        Command::Kappa { coords: raw } => {
            let [x, y, z] = coords::<3>(raw)?;
            let k = charvar::kappa_value(&CharTriple::new(x, y, z));
            if json {
                complex(k)
            } else {
                complex_text(k)
            }
        }
        Command::Lift { coords: raw } => {
            let [x, y, z] = coords::<3>(raw)?;
            let p = charvar::lift_char(&CharTriple::new(x, y, z));
            if json {
                mat2_list(&p.as_slice())
            } else {
                format!("xi = {}\neta = {}", mat2(&p.xi), mat2(&p.eta))
            }
        }
        Command::Lift3 { coords: raw } => {
            let s = SixTuple(coords::<6>(raw)?);
            let lift = charvar3::lift_char3(&s, tol.irr_tol);
            let (l1, l2) = charvar3::t123_roots(&s);
            let [a1, a2, a3] = lift.triple.0;
            if json {
                format!(
                    "{{\"branch\": \"{}\", \"triple\": {}, \"t123_roots\": {}}}",
                    lift.branch.name(),
                    mat2_list(&lift.triple.0),
                    complex_list(&[l1, l2])
                )
            } else {
                format!(
                    "branch = {}\nA1 = {}\nA2 = {}\nA3 = {}\nt123 roots = {}, {}",
                    lift.branch.name(),
                    mat2(&a1),
                    mat2(&a2),
                    mat2(&a3),
                    complex_text(l1),
                    complex_text(l2)
                )
            }
        }
        Command::Conjugate { pairs } => {
            let [p, q]: [[Mat2; 2]; 2] = read_json(pairs)?;
            let (p, q) = (certified(p, tol.det_tol)?, certified(q, tol.det_tol)?);
            let g = charvar::conjugator(&p, &q, tol.irr_tol)?;
            mat2(&g)
        }
        Command::Invol { pair } => {
            let p = certified(read_json(pair)?, tol.det_tol)?;
            let g = charvar::inverting_element(&p)?;
            mat2(&g)
        }
        Command::Verify { suite } => {
            let results = run_suite(*suite, cfg.trials, cfg.seed, &tol);
            let ok = results.iter().all(|r| r.passed());
            let text = if json {
                let rows: Vec<String> = results
                    .iter()
                    .map(|r| {
                        format!(
                            "{{\"name\": \"{}\", \"max_residual\": {}, \"tolerance\": {}, \"failures\": {}, \"pass\": {}}}",
                            r.name,
                            fmt17(r.max_residual),
                            fmt17(r.tolerance),
                            r.failures,
                            r.passed()
                        )
                    })
                    .collect();
                format!("[{}]", rows.join(",\n "))
            } else {
                let width = results.iter().map(|r| r.name.len()).max().unwrap_or(0);
                let mut lines: Vec<String> = results
                    .iter()
                    .map(|r| {
                        format!(
                            "{:<width$}  max {}  tol {}{}  {}",
                            r.name,
                            fmt17(r.max_residual),
                            fmt17(r.tolerance),
                            if r.failures > 0 { format!("  errors {}", r.failures) } else { String::new() },
                            if r.passed() { "PASS" } else { "FAIL" }
                        )
                    })
                    .collect();
                lines.push(format!("{} ({} trials, seed {})", if ok { "ALL PASS" } else { "FAILURES" }, cfg.trials, cfg.seed));
                lines.join("\n")
            };
            return Ok((text, ok));
        }
        Command::Reduce { word, rank } => {
            let w = word_arg(word, rank_of(*rank)?)?;
            let (core, conj) = cyclic_reduce(&w);
            let key = canonical_trace_key(&w);
            if json {
                format!(
                    "{{\"reduced\": \"{w}\", \"length\": {}, \"core\": \"{core}\", \"conjugator\": \"{conj}\", \"key\": \"{key}\"}}",
                    w.len()
                )
            } else {
                format!("reduced = {w}\nlength = {}\ncore = {core}\nconjugator = {conj}\nkey = {key}", w.len())
            }
        }
        Command::Roots3 { coords: raw } => {
            let s = SixTuple(coords::<6>(raw)?);
            let (l1, l2) = charvar3::t123_roots(&s);
            if json {
                complex_list(&[l1, l2])
            } else {
                format!("{}\n{}", complex_text(l1), complex_text(l2))
            }
        }
    };
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok((text, ok)) => {
            println!("{text}");
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(CliError::Domain(msg)) => {
            println!("{msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
