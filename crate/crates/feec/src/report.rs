//! Report types emitted by the command-line interface.
//!
//! Every JSON report serializes with a stable field order and re-parses
//! into the emitting type bit-exactly. Text and CSV renderings are
//! deterministic functions of the report value; scalars in text output
//! carry an advisory floating-point approximation that is never parsed
//! back.

use crate::forms::Form;
use crate::recursion::{Prediction, Step};
use crate::scalar::Cyclo;
use crate::spaces::{Family, SpaceSpec};
use crate::suites::Check;
use crate::symmetry::{InvarianceCertificate, Mode};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Dimension query result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimReport {
    pub spec: SpaceSpec,
    pub dimension: usize,
}

/// Whether a listed set is the canonical spanning set or the extracted basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SetKind {
    Spanning,
    Basis,
}

/// Listing of a canonical spanning set or basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetReport {
    pub spec: SpaceSpec,
    pub kind: SetKind,
    pub count: usize,
    pub rank: usize,
    pub forms: Vec<Form>,
}

/// Invariance check of the constructed basis in a requested scalar mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub spec: SpaceSpec,
    pub mode: Mode,
    pub count: usize,
    pub invariant: bool,
    pub certificate: Option<InvarianceCertificate>,
    pub detail: Option<String>,
}

/// A constructed basis with its strongest verified invariance mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BuildReport {
    pub spec: SpaceSpec,
    pub count: usize,
    pub predicted: Prediction,
    pub classified: Option<Mode>,
    pub certificate: Option<InvarianceCertificate>,
    pub forms: Vec<Form>,
    pub provenance: Vec<Vec<Step>>,
}

/// One degree of a sweep over r.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub r: i64,
    pub dimension: usize,
    pub predicted: Prediction,
    /// Outcome of actually building and classifying; absent in
    /// prediction-only sweeps.
    pub classified: Option<Prediction>,
    pub r_invariant: bool,
}

/// Degree table: invariance verdicts for r = 0..=r_max at fixed (k, n).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub family: Family,
    pub ring: bool,
    pub k: usize,
    pub n: usize,
    pub rows: Vec<TableRow>,
}

/// Resolution of a classical vector-calculus element name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AliasReport {
    pub name: String,
    pub spec: SpaceSpec,
    pub predicted: Prediction,
    pub r_invariant: bool,
}

/// One verification suite's outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

/// Aggregate of the requested verification suites.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

/// Pretty JSON with a trailing newline; field order is declaration order.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize infallibly");
    s.push('\n');
    s
}

/// Exact scalar plus an advisory decimal approximation.
pub fn cyclo_text(c: &Cyclo) -> String {
    let (re, im) = c.approx();
    if im == 0.0 {
        format!("{} (~{:.6})", c, re)
    } else {
        format!("{} (~{:.6}{:+.6}i)", c, re, im)
    }
}

fn certificate_text(out: &mut String, cert: &InvarianceCertificate) {
    let _ = writeln!(out, "certificate: real = {}", cert.real);
    for (g, m) in cert.generators.iter().zip(&cert.matches) {
        let _ = writeln!(out, "  generator {:?}", g.table());
        let _ = writeln!(out, "    tau = {:?}", m.tau);
        let chi: Vec<String> = m.chi.iter().map(cyclo_text).collect();
        let _ = writeln!(out, "    chi = [{}]", chi.join(", "));
    }
}

impl DimReport {
    pub fn text(&self) -> String {
        format!("dim {} = {}\n", self.spec, self.dimension)
    }

    pub fn csv(&self) -> String {
        format!(
            "family,ring,r,k,n,dimension\n{},{},{},{},{},{}\n",
            self.spec.family, self.spec.ring, self.spec.r, self.spec.k, self.spec.n, self.dimension
        )
    }
}

impl SetReport {
    pub fn text(&self) -> String {
        let kind = match self.kind {
            SetKind::Spanning => "spanning set",
            SetKind::Basis => "basis",
        };
        let mut out = format!(
            "{} of {}: {} elements, rank {}\n",
            kind, self.spec, self.count, self.rank
        );
        for (i, f) in self.forms.iter().enumerate() {
            let _ = writeln!(out, "  [{}] {}", i, f);
        }
        out
    }
}

impl InvarianceReport {
    pub fn text(&self) -> String {
        let mut out = format!(
            "constructed basis of {} ({} elements), mode {}: ",
            self.spec, self.count, self.mode
        );
        if self.invariant {
            out.push_str("invariant\n");
            if let Some(cert) = &self.certificate {
                certificate_text(&mut out, cert);
            }
        } else {
            out.push_str("not invariant\n");
            if let Some(d) = &self.detail {
                let _ = writeln!(out, "  {}", d);
            }
        }
        out
    }
}

impl BuildReport {
    pub fn text(&self) -> String {
        let classified = match self.classified {
            Some(m) => m.to_string(),
            None => "none".to_string(),
        };
        let mut out = format!(
            "{}: {} elements, predicted {}, classified {}\n",
            self.spec, self.count, self.predicted, classified
        );
        if let Some(cert) = &self.certificate {
            certificate_text(&mut out, cert);
        }
        for (i, f) in self.forms.iter().enumerate() {
            let _ = writeln!(out, "  [{}] {}", i, f);
        }
        out
    }
}

impl TableReport {
    pub fn csv(&self) -> String {
        let mut out = String::from("family,ring,k,n,r,dimension,predicted,classified,r_invariant\n");
        for row in &self.rows {
            let classified = match row.classified {
                Some(p) => p.to_string(),
                None => String::new(),
            };
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                self.family,
                self.ring,
                self.k,
                self.n,
                row.r,
                row.dimension,
                row.predicted,
                classified,
                row.r_invariant
            );
        }
        out
    }

    pub fn text(&self) -> String {
        let ring = if self.ring { "ring " } else { "" };
        let mut out = format!(
            "degree table for {}{} k={} on the {}-simplex\n",
            ring, self.family, self.k, self.n
        );
        let _ = writeln!(out, "{:>4} {:>6} {:>12} {:>12} {:>12}", "r", "dim", "predicted", "classified", "R-invariant");
        for row in &self.rows {
            let classified = match row.classified {
                Some(p) => p.to_string(),
                None => "-".to_string(),
            };
            let _ = writeln!(
                out,
                "{:>4} {:>6} {:>12} {:>12} {:>12}",
                row.r, row.dimension, row.predicted.to_string(), classified, row.r_invariant
            );
        }
        out
    }
}

impl AliasReport {
    pub fn text(&self) -> String {
        format!(
            "{} of degree {} = {} — predicted R-invariance: {}\n",
            self.name, self.spec.r, self.spec, self.r_invariant
        )
    }
}

impl VerifyReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            for c in &s.checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{} {}::{} — {}", mark, s.name, c.name, c.detail);
            }
        }
        let _ = writeln!(
            out,
            "{}: {} suite(s), {} check(s)",
            if self.passed { "VERIFIED" } else { "FAILED" },
            self.suites.len(),
            self.suites.iter().map(|s| s.checks.len()).sum::<usize>()
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recursion::{build_a_basis, classify_basis, predict_r_invariance};
    use crate::spaces::dimension;
    use crate::symmetry::check_invariance;

    fn spec(family: Family, ring: bool, r: i64, k: usize, n: usize) -> SpaceSpec {
        SpaceSpec::new(family, ring, r, k, n)
    }

    #[test]
    fn dim_report_round_trips() {
        let s = spec(Family::P, false, 1, 1, 2);
        let rep = DimReport {
            spec: s,
            dimension: dimension(&s).unwrap(),
        };
        let parsed: DimReport = serde_json::from_str(&to_json(&rep)).unwrap();
        assert_eq!(parsed, rep);
        assert_eq!(rep.dimension, 6);
    }

    #[test]
    fn build_report_round_trips() {
        let s = spec(Family::P, false, 0, 1, 2);
        let result = build_a_basis(&s).unwrap();
        let cls = classify_basis(&result);
        let rep = BuildReport {
            spec: s,
            count: result.set.len(),
            predicted: predict_r_invariance(&s),
            classified: cls.mode,
            certificate: cls.certificate,
            forms: result.set.forms().to_vec(),
            provenance: result.provenance.clone(),
        };
        let parsed: BuildReport = serde_json::from_str(&to_json(&rep)).unwrap();
        assert_eq!(parsed, rep);
        assert_eq!(rep.classified, Some(Mode::C));
    }

    #[test]
    fn invariance_report_round_trips_and_reads_not_invariant() {
        let s = spec(Family::P, false, 0, 1, 2);
        let result = build_a_basis(&s).unwrap();
        let err = check_invariance(&result.set, Mode::R).unwrap_err();
        let rep = InvarianceReport {
            spec: s,
            mode: Mode::R,
            count: result.set.len(),
            invariant: false,
            certificate: None,
            detail: Some(err.to_string()),
        };
        let parsed: InvarianceReport = serde_json::from_str(&to_json(&rep)).unwrap();
        assert_eq!(parsed, rep);
        assert!(rep.text().contains("not invariant"));
    }

    #[test]
    fn table_csv_is_deterministic() {
        let rows = vec![
            TableRow {
                r: 0,
                dimension: 3,
                predicted: Prediction::COnly,
                classified: None,
                r_invariant: false,
            },
            TableRow {
                r: 1,
                dimension: 6,
                predicted: Prediction::R,
                classified: Some(Prediction::R),
                r_invariant: true,
            },
        ];
        let rep = TableReport {
            family: Family::P,
            ring: false,
            k: 1,
            n: 2,
            rows,
        };
        let csv = rep.csv();
        assert_eq!(csv, rep.csv());
        assert!(csv.starts_with("family,ring,k,n,r,dimension,predicted,classified,r_invariant\n"));
        assert!(csv.contains("P,false,1,2,1,6,R,R,true"));
        let parsed: TableReport = serde_json::from_str(&to_json(&rep)).unwrap();
        assert_eq!(parsed, rep);
    }
}
