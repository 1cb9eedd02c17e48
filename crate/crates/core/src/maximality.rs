//! Obstructions to Q-maximality: a knot is Q-maximal when some diagram
//! attains `maxdeg Q = c(D) − d(D)`. Each test here can only rule that out.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagrams::{
    q_at_minus_one, q_polynomial_with_budget, signature, DiagramError, LinkDiagram,
};
use crate::laurent::LaurentPoly;
use crate::tables::KnotRecord;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum MaximalityError {
    #[error("maxdeg Q = {0} is negative")]
    NegativeQmax(i64),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    /// Carries the violated inequality with its numbers filled in.
    NonQMaximal { inequality: String },
    Inconclusive {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        caveat: Option<String>,
    },
}

impl Outcome {
    pub fn fired(&self) -> bool {
        matches!(self, Outcome::NonQMaximal { .. })
    }

    fn inconclusive() -> Self {
        Outcome::Inconclusive { caveat: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestId {
    CrossingBound,
    Unknotting,
    Signature,
    QSelf,
}

impl fmt::Display for TestId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TestId::CrossingBound => "crossing_bound",
            TestId::Unknotting => "unknotting",
            TestId::Signature => "signature",
            TestId::QSelf => "q_self",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestResult {
    pub test: TestId,
    pub inputs: String,
    #[serde(flatten)]
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalityVerdict {
    pub knot: String,
    pub qmax: i64,
    pub crossing_number: usize,
    pub signature: Option<i64>,
    pub unknotting_number: Option<u32>,
    pub tests: Vec<TestResult>,
    /// Disagreements between table data and computed values, and similar.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl MaximalityVerdict {
    pub fn non_q_maximal(&self) -> bool {
        self.tests.iter().any(|t| t.outcome.fired())
    }

    pub fn fired(&self) -> impl Iterator<Item = &TestResult> {
        self.tests.iter().filter(|t| t.outcome.fired())
    }

    /// `name  qmax  c  sigma  u  verdict  [fired tests]`, tab separated,
    /// `-` for missing values.
    pub fn report_line(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        let fired: Vec<String> = self
            .fired()
            .map(|t| match &t.outcome {
                Outcome::NonQMaximal { inequality } => format!("{}: {inequality}", t.test),
                Outcome::Inconclusive { .. } => unreachable!("filtered"),
            })
            .collect();
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t[{}]",
            self.knot,
            self.qmax,
            self.crossing_number,
            opt(self.signature.map(|s| s.to_string())),
            opt(self.unknotting_number.map(|u| u.to_string())),
            if self.non_q_maximal() {
                "NON_Q_MAXIMAL"
            } else {
                "INCONCLUSIVE"
            },
            fired.join("; ")
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KidwellCheck {
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

/// `maxdeg Q ≤ c(D) − d(D)` for the diagram and its Q.
pub fn kidwell_check(d: &LinkDiagram, q: &LaurentPoly) -> KidwellCheck {
    let lhs = q.max_degree().unwrap_or(i64::MIN);
    let rhs = d.crossing_count() as i64 - d.bridge_length() as i64;
    KidwellCheck {
        lhs,
        rhs,
        holds: lhs <= rhs,
    }
}

/// A prime knot with `maxdeg Q = k` that is Q-maximal has a diagram with
/// at most `k + max(3, k − 3)` crossings.
pub fn crossing_bound_test(
    c_k: usize,
    qmax: i64,
    prime_hint: Option<bool>,
) -> Result<Outcome, MaximalityError> {
    if qmax < 0 {
        return Err(MaximalityError::NegativeQmax(qmax));
    }
    let slack = 3.max(qmax - 3);
    let inequality = format!("{c_k} > {qmax} + max(3,{})", qmax - 3);
    if c_k as i64 <= qmax + slack {
        return Ok(Outcome::inconclusive());
    }
    Ok(match prime_hint {
        Some(true) => Outcome::NonQMaximal { inequality },
        Some(false) => Outcome::Inconclusive {
            caveat: Some(format!("{inequality} but the bound needs a prime knot")),
        },
        None => Outcome::Inconclusive {
            caveat: Some(format!("{inequality} but primality is unknown")),
        },
    })
}

pub fn unknotting_test(u_k: u32, qmax: i64) -> Outcome {
    let half = qmax.div_euclid(2);
    if i64::from(u_k) > half {
        Outcome::NonQMaximal {
            inequality: format!("{u_k} > floor({qmax}/2)"),
        }
    } else {
        Outcome::inconclusive()
    }
}

pub fn signature_test(sigma: i64, qmax: i64) -> Outcome {
    if sigma.abs() > qmax {
        Outcome::NonQMaximal {
            inequality: format!("|{sigma}| > {qmax}"),
        }
    } else {
        Outcome::inconclusive()
    }
}

/// Fires when `2m > maxdeg Q` for `Q(−1) = (−3)^m`. No knot is known to
/// make this fire.
pub fn q_self_test(q: &LaurentPoly) -> Result<Outcome, MaximalityError> {
    let m = q_at_minus_one(q)?.exponent;
    let qmax = q.max_degree().unwrap_or(0);
    Ok(if 2 * i64::from(m) > qmax {
        Outcome::NonQMaximal {
            inequality: format!("2*{m} > {qmax}"),
        }
    } else {
        Outcome::inconclusive()
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanError {
    pub knot: String,
    pub message: String,
    pub budget_exceeded: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub verdicts: Vec<MaximalityVerdict>,
    pub errors: Vec<ScanError>,
}

impl ScanReport {
    /// Verdicts whose Q-only test fired; these would answer an open
    /// question and are always worth a look.
    pub fn q_self_candidates(&self) -> Vec<&MaximalityVerdict> {
        self.verdicts
            .iter()
            .filter(|v| v.fired().any(|t| t.test == TestId::QSelf))
            .collect()
    }
}

/// Runs every test the record has data for, computing Q and σ from the PD
/// code. Records are processed in parallel and reported sorted by name;
/// a failing record is reported on its own and does not stop the scan.
pub fn scan(records: &[KnotRecord], budget: u64) -> ScanReport {
    let mut results: Vec<(String, String, Result<MaximalityVerdict, MaximalityError>)> = records
        .par_iter()
        .map(|r| (r.name.clone(), r.pd.clone(), evaluate(r, budget)))
        .collect();
    results.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    let mut report = ScanReport::default();
    for (name, _, r) in results {
        match r {
            Ok(v) => report.verdicts.push(v),
            Err(e) => report.errors.push(ScanError {
                knot: name,
                message: e.to_string(),
                budget_exceeded: matches!(
                    e,
                    MaximalityError::Diagram(DiagramError::BudgetExceeded { .. })
                ),
            }),
        }
    }
    report
}

/// The verdict for one record.
pub fn evaluate(r: &KnotRecord, budget: u64) -> Result<MaximalityVerdict, MaximalityError> {
    let d = r.diagram()?;
    let comps = d.component_count();
    if comps != 1 {
        return Err(DiagramError::NotAKnot { components: comps }.into());
    }
    let q = q_polynomial_with_budget(&d, budget)?.poly;
    let qmax = q.max_degree().expect("Q of a knot is nonzero");
    let sigma = signature(&d)?;
    let mut notes = Vec::new();
    if let Some(e) = r.qmax_expected.filter(|&e| e != qmax) {
        notes.push(format!("table maxdeg Q {e} differs from computed {qmax}"));
    }
    if let Some(s) = r.signature.filter(|&s| s != sigma) {
        notes.push(format!("table signature {s} differs from computed {sigma}"));
    }
    let k = kidwell_check(&d, &q);
    if !k.holds {
        notes.push(format!(
            "maxdeg Q {} exceeds c(D) - d(D) = {}",
            k.lhs, k.rhs
        ));
    }

    let mut tests = vec![TestResult {
        test: TestId::CrossingBound,
        inputs: format!(
            "c={} qmax={qmax} prime={}",
            r.crossing_number,
            fmt_opt(r.prime)
        ),
        outcome: crossing_bound_test(r.crossing_number, qmax, r.prime)?,
    }];
    if let Some(u) = r.unknotting_number {
        tests.push(TestResult {
            test: TestId::Unknotting,
            inputs: format!("u={u} qmax={qmax}"),
            outcome: unknotting_test(u, qmax),
        });
    }
    tests.push(TestResult {
        test: TestId::Signature,
        inputs: format!("sigma={sigma} qmax={qmax}"),
        outcome: signature_test(sigma, qmax),
    });
    tests.push(TestResult {
        test: TestId::QSelf,
        inputs: format!("Q={q}"),
        outcome: q_self_test(&q)?,
    });
    Ok(MaximalityVerdict {
        knot: r.name.clone(),
        qmax,
        crossing_number: r.crossing_number,
        signature: Some(sigma),
        unknotting_number: r.unknotting_number,
        tests,
        notes,
    })
}

fn fmt_opt<T: fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "?".into(), |v| v.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_bound_examples() {
        let perko = crossing_bound_test(10, 6, Some(true)).unwrap();
        assert_eq!(
            perko,
            Outcome::NonQMaximal {
                inequality: "10 > 6 + max(3,3)".into()
            }
        );
        assert!(!crossing_bound_test(3, 2, Some(true)).unwrap().fired());
        assert!(crossing_bound_test(15, 8, Some(true)).unwrap().fired());
        assert!(!crossing_bound_test(10, 6, None).unwrap().fired());
        assert!(!crossing_bound_test(10, 6, Some(false)).unwrap().fired());
        assert_eq!(
            crossing_bound_test(1, -1, None),
            Err(MaximalityError::NegativeQmax(-1))
        );
    }

    #[test]
    fn other_tests() {
        assert!(!unknotting_test(3, 6).fired());
        assert!(unknotting_test(4, 6).fired());
        assert!(signature_test(8, 7).fired());
        assert!(signature_test(-8, 7).fired());
        assert!(!signature_test(2, 2).fired());
        assert!(!signature_test(0, 0).fired());
        assert!(!q_self_test(&LaurentPoly::one()).unwrap().fired());
        // 2-unlink: m = 1 but maxdeg 0
        let mu: LaurentPoly = "-1+2z^-1".parse().unwrap();
        assert!(q_self_test(&mu).unwrap().fired());
        assert!(q_self_test(&LaurentPoly::z()).is_err());
    }

    #[test]
    fn soundness_fuzz() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for _ in 0..10_000 {
            let c: usize = rng.gen_range(0..60);
            let q: i64 = rng.gen_range(0..60);
            let fired = crossing_bound_test(c, q, Some(true)).unwrap().fired();
            assert_eq!(fired, c as i64 > q + 3.max(q - 3), "c={c} q={q}");
        }
    }

    #[test]
    fn outcome_json() {
        let t = TestResult {
            test: TestId::CrossingBound,
            inputs: "c=10".into(),
            outcome: Outcome::NonQMaximal {
                inequality: "10 > 6 + max(3,3)".into(),
            },
        };
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(
            s,
            r#"{"test":"crossing_bound","inputs":"c=10","outcome":"NON_Q_MAXIMAL","inequality":"10 > 6 + max(3,3)"}"#
        );
        assert_eq!(serde_json::from_str::<TestResult>(&s).unwrap(), t);
    }
}
