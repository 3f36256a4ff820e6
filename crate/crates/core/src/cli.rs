//! Command-line front end. `run` parses arguments, dispatches to the
//! library and returns the process exit code: 0 on success, 1 when an
//! identity or hypothesis fails, 2 on malformed input.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{
    check_admissible, check_bihom_poisson_with, check_cyclic_associator, check_flexible, check_polarized_flexibility,
    check_regular, BiHomPoissonAlgebra, CheckReport,
};
use crate::cohomology::{cohomology_dims, CohomologyReport};
use crate::constructions::{
    build_example_e1, build_sl2, build_truncated_sym_poisson, centralizer, polarize_minus, sl2_twisting_pair, yau_twist,
    TwistingPair,
};
use crate::derivations::{solve_space, OperatorSpaceKind};
use crate::error::{Error, Result};
use crate::io::{
    algebra_to_json, matrix_to_json, parse_algebra, parse_lie, parse_matrix, parse_module, pretty, vector_to_json,
    TensorEncoding,
};
use crate::linalg::{format_rational, parse_rational, Rational};
use crate::modules::{check_module, semidirect_product, ModuleRep};

#[derive(Parser, Debug)]
#[command(name = "bihom", version, about = "Exact computations with BiHom-Poisson algebras")]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the output to a file instead of stdout.
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Command {
    /// Check every BiHom-Poisson identity.
    Check {
        algebra: PathBuf,
        /// Skip BiHom-commutativity, for non-commutative algebras.
        #[arg(long)]
        skip_commutativity: bool,
    },
    /// Flexibility, admissibility and cyclic associator checks.
    Flex { algebra: PathBuf },
    /// Yau twist by a pair of endomorphisms.
    Twist {
        algebra: PathBuf,
        /// Matrix file for the map composed into the first slot.
        #[arg(long)]
        aprime: PathBuf,
        /// Matrix file for the map composed into the second slot.
        #[arg(long)]
        bprime: PathBuf,
    },
    /// Emit the polarized algebra A⁻.
    Polarize { algebra: PathBuf },
    /// Solve for an operator space.
    Derive {
        algebra: PathBuf,
        /// One of der, gder, gder-shared, qder, c, qc, zder, commutant.
        #[arg(long, value_parser = parse_space)]
        space: OperatorSpaceKind,
        /// Power of alpha.
        #[arg(long, default_value_t = 0)]
        k: u32,
        /// Power of beta.
        #[arg(long, default_value_t = 0)]
        l: u32,
    },
    /// Elements annihilating both operations.
    Centralizer { algebra: PathBuf },
    /// Low-degree cohomology dimensions.
    Cohomology {
        algebra: PathBuf,
        /// Also require cochains to be derivations of the product in each argument.
        #[arg(long)]
        strict: bool,
    },
    /// Check a left or right module.
    ModuleCheck { algebra: PathBuf, module: PathBuf },
    /// Emit the semidirect product with a left module.
    Semidirect { algebra: PathBuf, module: PathBuf },
    /// Emit a built-in fixture.
    Example {
        #[arg(value_enum)]
        which: ExampleKind,
        /// Parameter a of e1.
        #[arg(long, value_parser = parse_rat_arg, allow_hyphen_values = true)]
        a: Option<Rational>,
        /// Parameter b of e1.
        #[arg(long, value_parser = parse_rat_arg, allow_hyphen_values = true)]
        b: Option<Rational>,
        /// Lie algebra file for sym.
        #[arg(long)]
        lie: Option<PathBuf>,
        /// Maximum monomial degree for sym and sl2 [default: 1].
        #[arg(long)]
        deg: Option<u32>,
        /// Scale of e in the first diagonal twist of sl2.
        #[arg(long, value_parser = parse_rat_arg, allow_hyphen_values = true)]
        lambda: Option<Rational>,
        /// Scale of e in the second diagonal twist of sl2.
        #[arg(long, value_parser = parse_rat_arg, allow_hyphen_values = true)]
        gamma: Option<Rational>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExampleKind {
    E1,
    Sym,
    Sl2,
}

fn parse_space(s: &str) -> std::result::Result<OperatorSpaceKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_rat_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

struct Outcome {
    text: String,
    json: Value,
    passed: bool,
}

impl Outcome {
    fn emit(value: Value) -> Self {
        Outcome {
            text: pretty(&value),
            json: value,
            passed: true,
        }
    }
}

/// Runs the CLI with explicit arguments and output streams.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(outcome) => {
            let body = if cli.json { pretty(&outcome.json) } else { outcome.text };
            let written = match &cli.output {
                Some(path) => std::fs::write(path, body).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
                None => out.write_all(body.as_bytes()).map_err(Error::from),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
            if outcome.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            if cli.json {
                let v = json!({ "error": e.to_string(), "input_error": e.is_input_error() });
                let _ = write!(out, "{}", pretty(&v));
            }
            let _ = writeln!(err, "error: {e}");
            if e.is_input_error() {
                2
            } else {
                1
            }
        }
    }
}

fn execute(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Check {
            algebra,
            skip_commutativity,
        } => {
            let a = parse_algebra(algebra)?;
            Ok(report_outcome("BiHom-Poisson check", &check_bihom_poisson_with(&a, *skip_commutativity)))
        }
        Command::Flex { algebra } => {
            let a = parse_algebra(algebra)?;
            let mut r = check_flexible(&a);
            r.merge(check_admissible(&a));
            r.merge(check_cyclic_associator(&a));
            if check_regular(&a) {
                r.merge(check_polarized_flexibility(&a)?);
            }
            Ok(report_outcome("flexibility check", &r))
        }
        Command::Twist { algebra, aprime, bprime } => {
            let a = parse_algebra(algebra)?;
            let tp = TwistingPair::new(parse_matrix(aprime, a.dim)?, parse_matrix(bprime, a.dim)?);
            Ok(emit_algebra(&yau_twist(&a, &tp)?))
        }
        Command::Polarize { algebra } => Ok(emit_algebra(&polarize_minus(&parse_algebra(algebra)?)?)),
        Command::Derive { algebra, space, k, l } => {
            let a = parse_algebra(algebra)?;
            let s = solve_space(&a, *space, *k, *l);
            let mats = s.matrices();
            let json = json!({
                "space": space.label(),
                "k": k,
                "l": l,
                "dim": s.dim(),
                "joint_dim": s.joint_dim,
                "basis": mats.iter().map(matrix_to_json).collect::<Vec<_>>(),
            });
            let mut text = format!("{} at (k, l) = ({k}, {l}): dimension {}\n", space.label(), s.dim());
            for (i, m) in mats.iter().enumerate() {
                text.push_str(&format!("D{}:\n", i + 1));
                for r in 0..m.rows() {
                    let row: Vec<String> = m.row(r).iter().map(format_rational).collect();
                    text.push_str(&format!("  [{}]\n", row.join(", ")));
                }
            }
            Ok(Outcome {
                text,
                json,
                passed: true,
            })
        }
        Command::Centralizer { algebra } => {
            let a = parse_algebra(algebra)?;
            let z = centralizer(&a);
            let mut text = format!("centralizer: dimension {}\n", z.dim());
            for v in z.vectors() {
                text.push_str(&format!("  {}\n", format_vector(&a, v)));
            }
            Ok(Outcome {
                text,
                json: json!({
                    "dim": z.dim(),
                    "basis": z.vectors().iter().map(|v| vector_to_json(v)).collect::<Vec<_>>(),
                }),
                passed: true,
            })
        }
        Command::Cohomology { algebra, strict } => {
            let a = parse_algebra(algebra)?;
            let r = cohomology_dims(&a, *strict)?;
            Ok(Outcome {
                text: cohomology_text(&r),
                json: serde_json::to_value(&r).expect("report serializes"),
                passed: true,
            })
        }
        Command::ModuleCheck { algebra, module } => {
            let a = parse_algebra(algebra)?;
            let m = parse_module(module, a.dim)?;
            let title = match m {
                ModuleRep::Left(_) => "left module check",
                ModuleRep::Right(_) => "right module check",
            };
            Ok(report_outcome(title, &check_module(&a, &m)?))
        }
        Command::Semidirect { algebra, module } => {
            let a = parse_algebra(algebra)?;
            match parse_module(module, a.dim)? {
                ModuleRep::Left(m) => Ok(emit_algebra(&semidirect_product(&a, &m)?)),
                ModuleRep::Right(_) => Err(Error::InvalidArgument("semidirect product needs a left module".into())),
            }
        }
        Command::Example {
            which,
            a,
            b,
            lie,
            deg,
            lambda,
            gamma,
        } => {
            let alg = match which {
                ExampleKind::E1 => {
                    let need = |x: &Option<Rational>, n: &str| {
                        x.clone().ok_or_else(|| Error::InvalidArgument(format!("example e1 needs --{n}")))
                    };
                    build_example_e1(&need(a, "a")?, &need(b, "b")?)?
                }
                ExampleKind::Sym => {
                    let path = lie.as_ref().ok_or_else(|| Error::InvalidArgument("example sym needs --lie".into()))?;
                    build_truncated_sym_poisson(&parse_lie(path)?, deg.unwrap_or(1))?
                }
                ExampleKind::Sl2 => {
                    let d = deg.unwrap_or(1);
                    let base = build_sl2(d)?;
                    match (lambda, gamma) {
                        (None, None) => base,
                        (l, g) => {
                            let one = Rational::from_integer(1.into());
                            let tp = sl2_twisting_pair(l.as_ref().unwrap_or(&one), g.as_ref().unwrap_or(&one), d)?;
                            yau_twist(&base, &tp)?
                        }
                    }
                }
            };
            Ok(emit_algebra(&alg))
        }
    }
}

fn emit_algebra(a: &BiHomPoissonAlgebra) -> Outcome {
    Outcome::emit(algebra_to_json(a, TensorEncoding::Auto))
}

fn format_vector(a: &BiHomPoissonAlgebra, v: &[Rational]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !num::Zero::is_zero(*c))
        .map(|(i, c)| format!("({})*{}", format_rational(c), a.basis_names.get(i).map_or("?", String::as_str)))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn report_outcome(title: &str, r: &CheckReport) -> Outcome {
    let mut text = format!("{title}: {}\n", if r.passed { "PASS" } else { "FAIL" });
    for id in &r.checked {
        let count = r.violations.iter().filter(|v| v.identity_id == *id).count();
        if count == 0 {
            text.push_str(&format!("  {:<28} ok\n", id.label()));
        } else {
            text.push_str(&format!("  {:<28} FAILED ({count} shown)\n", id.label()));
        }
    }
    for v in &r.violations {
        let res: Vec<String> = v.residual.iter().map(format_rational).collect();
        text.push_str(&format!(
            "  {} at {:?}: residual [{}]\n",
            v.identity_id.label(),
            v.witness,
            res.join(", ")
        ));
    }
    Outcome {
        text,
        json: serde_json::to_value(r).expect("report serializes"),
        passed: r.passed,
    }
}

fn cohomology_text(r: &CohomologyReport) -> String {
    let mut s = format!(
        "dim C1 = {}\ndim C2 = {}\ndim Z1 = {}\ndim Z2 = {}\ndim B2 = {}\ndim H1 = {}\ndim H2 = {}\n",
        r.dim_c1, r.dim_c2, r.dim_z1, r.dim_z2, r.dim_b2, r.dim_h1, r.dim_h2
    );
    if let Some(op) = r.strict_operation {
        s.push_str(&format!("strict: cochains are derivations of the {op} in each argument\n"));
    }
    s.push_str(&format!(
        "delta1 output: plain skew {}, BiHom skew {}\n",
        r.delta1_plain_skew, r.delta1_bihom_skew
    ));
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("bihom").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn example_and_check() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("e1.json");
        let (code, _, _) = run_args(&["example", "e1", "--a", "2", "--b", "3", "-o", p.to_str().unwrap()]);
        assert_eq!(code, 0);
        let (code, out, _) = run_args(&["check", p.to_str().unwrap()]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("PASS"));
    }

    #[test]
    fn bad_input_exits_two() {
        let (code, _, err) = run_args(&["check", "/nonexistent/alg.json"]);
        assert_eq!(code, 2);
        assert!(err.contains("error"));
        let (code, _, _) = run_args(&["derive", "x.json", "--space", "bogus"]);
        assert_eq!(code, 2);
        let (code, _, _) = run_args(&["example", "e1", "--a", "1", "--b", "3"]);
        assert_eq!(code, 2);
    }
}
