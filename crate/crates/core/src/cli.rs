//! The `cominpair` command line. Results go to standard output as one line of
//! JSON; diagnostics go to standard error.
//!
//! Exit status: 0 on success, 2 on bad input, 3 when a verification flag finds
//! a disagreement.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::cominuscule::{expand, expand_dual, fast_pair_counted, naive_pair, BigCellPoint, FamilyKind};
use crate::det_perm::{det_local_taylor, permanent_ryser, TangentTriple};
use crate::error::{Error, Result};
use crate::exact::scalar::format_scalar;
use crate::exact::{det_exact, Matrix, OpTally};
use crate::fkt::{brute_force_matchings, fkt_count, EmbeddedGraph};
use crate::holographic::{brute_force_count, pairing_count, pairing_count_transformed, NAEFormula};
use crate::join::{analyze_circuit, TreeCircuit};
use crate::selftest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "cominpair", version, about = "Exact tensor pairings, holographic counting and related checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Pair two big-cell points of a family (grassmannian, spinor, lagrangian,
    /// segre, veronese:<degree>) given as matrix files.
    Pair {
        family: String,
        xfile: PathBuf,
        yfile: PathBuf,
        /// Also expand both points and compare with the coordinate-wise pairing.
        #[arg(long)]
        verify: bool,
        /// Report arithmetic operation counts of the fast evaluation.
        #[arg(long)]
        count_ops: bool,
    },
    /// Count NAE-satisfying assignments of a formula file.
    Nae {
        formula: PathBuf,
        /// Compare with brute-force enumeration.
        #[arg(long)]
        brute: bool,
        /// Compare with the Hadamard-transformed contraction.
        #[arg(long)]
        transformed: bool,
    },
    /// Count perfect matchings of an embedded planar graph file.
    Fkt {
        graph: PathBuf,
        /// Compare with brute-force enumeration.
        #[arg(long)]
        brute: bool,
    },
    /// Exact determinant of a matrix file.
    Det { matrix: PathBuf },
    /// Exact permanent of a matrix file.
    Perm { matrix: PathBuf },
    /// Taylor coefficients of the determinant hypersurface along a tangent
    /// triple file (x, then A, then y).
    Taylor {
        triple: PathBuf,
        #[arg(long)]
        kmax: usize,
    },
    /// Terracini rank and expected dimension of a circuit's join variety.
    Joindim {
        circuit: PathBuf,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of variables; defaults to the largest index in the circuit.
        #[arg(long)]
        vars: Option<usize>,
    },
    /// Run the acceptance suites.
    Selftest,
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok((out, agree)) => {
            println!("{out}");
            if agree {
                EXIT_OK
            } else {
                eprintln!("verification mismatch");
                EXIT_MISMATCH
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::parse(path.display().to_string(), e.to_string()))
}

/// Prefixes parse locations with the file they came from.
fn in_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { at, msg } => Error::parse(format!("{}: {at}", path.display()), msg),
        other => other,
    })
}

fn matrix_file(path: &Path) -> Result<Matrix> {
    in_file(path, Matrix::parse(&read(path)?))
}

fn ops_json(ops: &OpTally) -> Value {
    json!({"multiplications": ops.multiplications, "additions": ops.additions, "total": ops.total()})
}

fn execute(cmd: Command) -> Result<(Value, bool)> {
    match cmd {
        Command::Pair {
            family,
            xfile,
            yfile,
            verify,
            count_ops,
        } => {
            let kind: FamilyKind = family.parse()?;
            let x = BigCellPoint::from_matrix(kind, matrix_file(&xfile)?)?;
            let y = BigCellPoint::from_matrix(kind, matrix_file(&yfile)?)?;
            let mut ops = OpTally::new();
            let fast = fast_pair_counted(&x, &y, &mut ops)?;
            let mut out = json!({"family": x.family().to_string()});
            let mut agree = true;
            if verify {
                let naive = naive_pair(&expand(&x)?, &expand_dual(&y)?)?;
                agree = naive == fast;
                out["fast"] = json!(format_scalar(&fast));
                out["naive"] = json!(format_scalar(&naive));
                out["agree"] = json!(agree);
            } else {
                out["value"] = json!(format_scalar(&fast));
            }
            if count_ops {
                out["ops"] = ops_json(&ops);
                out["ambient_dimension"] = json!(x.family().ambient_dimension().to_string());
            }
            Ok((out, agree))
        }
        Command::Nae {
            formula,
            brute,
            transformed,
        } => {
            let f = in_file(&formula, NAEFormula::from_json(&read(&formula)?))?;
            let (count, method) = match pairing_count(&f) {
                Ok(c) => (c.to_string(), "pairing"),
                Err(Error::Resource { got, cap, .. }) => {
                    eprintln!("{got} edges is over the contraction cap of {cap}; enumerating assignments instead");
                    (brute_force_count(&f)?.to_string(), "brute")
                }
                Err(e) => return Err(e),
            };
            let mut out = json!({"count": count, "method": method});
            let mut agree = true;
            if brute && method == "pairing" {
                agree &= brute_force_count(&f)?.to_string() == count;
            }
            if transformed {
                agree &= pairing_count_transformed(&f)?.to_string() == count;
            }
            if brute || transformed {
                out["agree"] = json!(agree);
            }
            // counts are exact integers; emit them as JSON numbers when they fit
            if let Ok(n) = count.parse::<u64>() {
                out["count"] = json!(n);
            }
            Ok((out, agree))
        }
        Command::Fkt { graph, brute } => {
            let g = in_file(&graph, EmbeddedGraph::from_json(&read(&graph)?))?;
            let count = fkt_count(&g)?;
            let mut out = json!({"count": format_scalar(&count)});
            let mut agree = true;
            if brute {
                agree = brute_force_matchings(&g)? == count;
                out["agree"] = json!(agree);
            }
            Ok((out, agree))
        }
        Command::Det { matrix } => {
            let m = matrix_file(&matrix)?;
            Ok((json!({"value": format_scalar(&det_exact(&m)?)}), true))
        }
        Command::Perm { matrix } => {
            let m = matrix_file(&matrix)?;
            Ok((json!({"value": format_scalar(&permanent_ryser(&m)?)}), true))
        }
        Command::Taylor { triple, kmax } => {
            let t = in_file(&triple, TangentTriple::parse(&read(&triple)?))?;
            let c = det_local_taylor(&t, kmax)?;
            let render = |v: &[crate::exact::Scalar]| v.iter().map(format_scalar).collect::<Vec<_>>();
            let agree = c.agree();
            Ok((
                json!({
                    "kmax": kmax,
                    "from_graph": render(&c.from_graph),
                    "from_powers": render(&c.from_powers),
                    "agree": agree,
                }),
                agree,
            ))
        }
        Command::Joindim {
            circuit,
            trials,
            seed,
            vars,
        } => {
            let c = in_file(&circuit, TreeCircuit::from_json(&read(&circuit)?))?;
            let v = vars.unwrap_or(c.max_variable()).max(1);
            let r = analyze_circuit(&c, v, trials, seed)?;
            Ok((
                json!({
                    "rank": r.rank,
                    "expected": u64::try_from(r.expected).map(Value::from).unwrap_or_else(|_| json!(r.expected.to_string())),
                    "degenerate": r.degenerate,
                    "bound_ok": r.bound_ok,
                    "variety": r.variety,
                    "contains_circuit": r.contains_circuit,
                    "vars": v,
                    "internal_nodes": c.internal_nodes(),
                }),
                r.contains_circuit,
            ))
        }
        Command::Selftest => {
            let results = selftest::run_all();
            for r in &results {
                eprintln!("{}", r.line());
            }
            let pass = results.iter().all(|r| r.pass);
            Ok((json!({"pass": pass, "suites": results}), pass))
        }
    }
}
