//! Command-line surface: space queries, basis construction, invariance
//! certification, verification suites, and vector-calculus aliases.
//!
//! Exit codes: 0 = success / verified; 1 = checked and false (for example
//! a set that is provably not invariant, or a failing suite); 2 = usage or
//! internal error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use feec::recursion::{build_a_basis, classify_basis, predict_r_invariance, Prediction, RecursionError};
use feec::report::{
    to_json, AliasReport, BuildReport, DimReport, InvarianceReport, SetKind, SetReport,
    SuiteReport, TableReport, TableRow, VerifyReport,
};
use feec::spaces::{basis_b, dimension, rank_dim, spanning_set, Family, SpaceSpec};
use feec::suites::{run_suite, SUITE_NAMES};
use feec::symmetry::{check_invariance, Mode, SymmetryError};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "feec",
    version,
    about = "Exact construction and certification of symmetry-invariant bases \
             for polynomial differential forms on simplices"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    /// Full polynomial family
    #[value(name = "P")]
    P,
    /// Trimmed polynomial family
    #[value(name = "Pminus")]
    PMinus,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::P => Family::P,
            FamilyArg::PMinus => Family::PMinus,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Real scalars only
    #[value(name = "R")]
    R,
    /// Complex (cyclotomic) scalars
    #[value(name = "C")]
    C,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::R => Mode::R,
            ModeArg::C => Mode::C,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum AliasArg {
    /// Raviart-Thomas
    #[value(name = "RT")]
    Rt,
    /// Brezzi-Douglas-Marini
    #[value(name = "BDM")]
    Bdm,
    /// Nedelec elements of the first kind (edge elements on the tetrahedron)
    #[value(name = "Ned1st")]
    Ned1st,
    /// Nedelec elements of the second kind
    #[value(name = "Ned2nd")]
    Ned2nd,
}

#[derive(Args)]
struct SpecArgs {
    /// Polynomial family
    #[arg(long, value_enum, default_value_t = FamilyArg::P)]
    family: FamilyArg,
    /// Select the subspace with vanishing traces on all proper faces
    #[arg(long)]
    ring: bool,
    /// Polynomial degree
    #[arg(short)]
    r: i64,
    /// Form degree
    #[arg(short)]
    k: usize,
    /// Simplex dimension
    #[arg(short)]
    n: usize,
}

impl SpecArgs {
    fn spec(&self) -> SpaceSpec {
        SpaceSpec::new(self.family.into(), self.ring, self.r, self.k, self.n)
    }
}

#[derive(Args)]
struct OutArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Write the report to a file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Verb {
    /// Dimension of a space
    Dim {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Canonical spanning set of a space
    Span {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Canonical basis of a space
    Basis {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Build the recursive basis and check invariance in a given mode
    Invariance {
        #[command(flatten)]
        spec: SpecArgs,
        /// Scalar mode for the invariance certificate
        #[arg(long, value_enum, default_value_t = ModeArg::R)]
        mode: ModeArg,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Build the recursive basis with provenance and its strongest certificate
    BuildInvariant {
        #[command(flatten)]
        spec: SpecArgs,
        /// Sweep degrees 0..=r into a degree table instead of one build
        #[arg(long)]
        table: bool,
        /// In table mode, skip construction and report predictions only
        #[arg(long)]
        predict_only: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run a named verification suite ("all" runs every suite)
    Verify {
        /// One of: lemma5.2, thm6.2, thm7.3, thm8.1, thm8.2, all
        #[arg(default_value = "all")]
        suite: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Resolve a classical vector-calculus element name to a space
    VcAlias {
        /// Element family name
        #[arg(long, value_enum)]
        name: AliasArg,
        /// Polynomial degree
        #[arg(short)]
        r: i64,
        /// Simplex dimension (required for RT and BDM; fixed to 3 otherwise)
        #[arg(short)]
        n: Option<usize>,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug)]
struct CliError(String);

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for CliError {}

fn usage(msg: impl Into<String>) -> Box<dyn std::error::Error> {
    Box::new(CliError(msg.into()))
}

fn emit(out: &OutArgs, body: String) -> Result<(), Box<dyn std::error::Error>> {
    match &out.out {
        Some(path) => std::fs::write(path, body)?,
        None => print!("{}", body),
    }
    Ok(())
}

/// Renders a report that supports JSON and text but not CSV.
fn emit_json_text<T: serde::Serialize>(
    out: &OutArgs,
    report: &T,
    text: String,
) -> Result<(), Box<dyn std::error::Error>> {
    match out.format {
        FormatArg::Json => emit(out, to_json(report)),
        FormatArg::Text => emit(out, text),
        FormatArg::Csv => Err(usage(
            "csv output is only available for `dim` and `build-invariant --table`",
        )),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {}", e);
            std::process::exit(2);
        }
    }
}

fn run(cli: Cli) -> Result<i32, Box<dyn std::error::Error>> {
    match cli.verb {
        Verb::Dim { spec, out } => {
            let spec = spec.spec();
            let report = DimReport {
                spec,
                dimension: dimension(&spec)?,
            };
            match out.format {
                FormatArg::Json => emit(&out, to_json(&report))?,
                FormatArg::Csv => emit(&out, report.csv())?,
                FormatArg::Text => emit(&out, report.text())?,
            }
            Ok(0)
        }
        Verb::Span { spec, out } => {
            let spec = spec.spec();
            let set = spanning_set(&spec)?;
            let (rank, _) = rank_dim(&set);
            let report = SetReport {
                spec,
                kind: SetKind::Spanning,
                count: set.len(),
                rank,
                forms: set.forms().to_vec(),
            };
            let text = report.text();
            emit_json_text(&out, &report, text)?;
            Ok(0)
        }
        Verb::Basis { spec, out } => {
            let spec = spec.spec();
            let set = basis_b(&spec)?;
            let (rank, _) = rank_dim(&set);
            let report = SetReport {
                spec,
                kind: SetKind::Basis,
                count: set.len(),
                rank,
                forms: set.forms().to_vec(),
            };
            let text = report.text();
            emit_json_text(&out, &report, text)?;
            Ok(0)
        }
        Verb::Invariance { spec, mode, out } => {
            let spec = spec.spec();
            let mode: Mode = mode.into();
            let result = match build_a_basis(&spec) {
                Ok(r) => r,
                Err(RecursionError::NotMonomial { n, k }) => {
                    let report = InvarianceReport {
                        spec,
                        mode,
                        count: 0,
                        invariant: false,
                        certificate: None,
                        detail: Some(
                            RecursionError::NotMonomial { n, k }.to_string(),
                        ),
                    };
                    let text = report.text();
                    emit_json_text(&out, &report, text)?;
                    return Ok(1);
                }
                Err(e) => return Err(e.into()),
            };
            let (invariant, certificate, detail) = match check_invariance(&result.set, mode) {
                Ok(cert) => (true, Some(cert), None),
                Err(e @ SymmetryError::NotInvariant { .. })
                | Err(e @ SymmetryError::ZeroElement(_)) => (false, None, Some(e.to_string())),
                Err(e) => return Err(e.into()),
            };
            let report = InvarianceReport {
                spec,
                mode,
                count: result.set.len(),
                invariant,
                certificate,
                detail,
            };
            let text = report.text();
            emit_json_text(&out, &report, text)?;
            Ok(if invariant { 0 } else { 1 })
        }
        Verb::BuildInvariant {
            spec,
            table,
            predict_only,
            out,
        } => {
            if table {
                return run_table(spec.spec(), predict_only, &out);
            }
            if predict_only {
                return Err(usage("--predict-only requires --table"));
            }
            let spec = spec.spec();
            let result = match build_a_basis(&spec) {
                Ok(r) => r,
                Err(e @ RecursionError::NotMonomial { .. }) => {
                    emit(&out, format!("cannot build: {}\n", e))?;
                    return Ok(1);
                }
                Err(e) => return Err(e.into()),
            };
            let cls = classify_basis(&result);
            let report = BuildReport {
                spec,
                count: result.set.len(),
                predicted: predict_r_invariance(&spec),
                classified: cls.mode,
                certificate: cls.certificate,
                forms: result.set.forms().to_vec(),
                provenance: result.provenance.clone(),
            };
            let ok = report.classified.is_some() || report.count == 0;
            let text = report.text();
            emit_json_text(&out, &report, text)?;
            Ok(if ok { 0 } else { 1 })
        }
        Verb::Verify { suite, out } => {
            let names: Vec<&str> = if suite == "all" {
                SUITE_NAMES.to_vec()
            } else if SUITE_NAMES.contains(&suite.as_str()) {
                vec![SUITE_NAMES
                    .iter()
                    .find(|s| **s == suite)
                    .copied()
                    .expect("membership checked")]
            } else {
                return Err(usage(format!(
                    "unknown suite `{}`; expected one of {} or `all`",
                    suite,
                    SUITE_NAMES.join(", ")
                )));
            };
            let mut suites = Vec::new();
            for name in names {
                let checks = run_suite(name).expect("known suite");
                let passed = checks.iter().all(|c| c.passed);
                suites.push(SuiteReport {
                    name: name.to_string(),
                    passed,
                    checks,
                });
            }
            let report = VerifyReport {
                passed: suites.iter().all(|s| s.passed),
                suites,
            };
            match out.format {
                FormatArg::Json => emit(&out, to_json(&report))?,
                FormatArg::Text => emit(&out, report.text())?,
                FormatArg::Csv => {
                    return Err(usage(
                        "csv output is only available for `dim` and `build-invariant --table`",
                    ))
                }
            }
            Ok(if report.passed { 0 } else { 1 })
        }
        Verb::VcAlias { name, r, n, out } => {
            let (label, spec) = match name {
                AliasArg::Rt => {
                    let n = n.ok_or_else(|| usage("RT requires -n"))?;
                    ("RT", SpaceSpec::new(Family::PMinus, false, r, n - 1, n))
                }
                AliasArg::Bdm => {
                    let n = n.ok_or_else(|| usage("BDM requires -n"))?;
                    ("BDM", SpaceSpec::new(Family::P, false, r, n - 1, n))
                }
                AliasArg::Ned1st => {
                    if n.is_some_and(|n| n != 3) {
                        return Err(usage("Ned1st is defined on the tetrahedron (n = 3)"));
                    }
                    ("Ned1st", SpaceSpec::new(Family::PMinus, false, r, 1, 3))
                }
                AliasArg::Ned2nd => {
                    if n.is_some_and(|n| n != 3) {
                        return Err(usage("Ned2nd is defined on the tetrahedron (n = 3)"));
                    }
                    ("Ned2nd", SpaceSpec::new(Family::P, false, r, 1, 3))
                }
            };
            let predicted = predict_r_invariance(&spec);
            let report = AliasReport {
                name: label.to_string(),
                spec,
                predicted,
                r_invariant: predicted == Prediction::R,
            };
            let text = report.text();
            emit_json_text(&out, &report, text)?;
            Ok(0)
        }
    }
}

fn run_table(
    spec: SpaceSpec,
    predict_only: bool,
    out: &OutArgs,
) -> Result<i32, Box<dyn std::error::Error>> {
    if spec.r < 0 {
        return Err(usage("table mode requires a nonnegative -r"));
    }
    let mut rows = Vec::new();
    for r in 0..=spec.r {
        let s = SpaceSpec::new(spec.family, spec.ring, r, spec.k, spec.n);
        let predicted = predict_r_invariance(&s);
        let classified = if predict_only {
            None
        } else {
            match build_a_basis(&s) {
                Ok(result) => Some(classify_basis(&result).as_prediction()),
                Err(RecursionError::NotMonomial { .. }) => Some(Prediction::Unsupported),
                Err(e) => return Err(e.into()),
            }
        };
        let effective = classified.unwrap_or(predicted);
        rows.push(TableRow {
            r,
            dimension: dimension(&s)?,
            predicted,
            classified,
            r_invariant: effective == Prediction::R,
        });
    }
    let report = TableReport {
        family: spec.family,
        ring: spec.ring,
        k: spec.k,
        n: spec.n,
        rows,
    };
    match out.format {
        FormatArg::Json => emit(out, to_json(&report))?,
        FormatArg::Csv => emit(out, report.csv())?,
        FormatArg::Text => emit(out, report.text())?,
    }
    Ok(0)
}
