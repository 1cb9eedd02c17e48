use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::code::OpenGaussCode;
use super::map::{realizations, PlanarCurveMap};
use super::CurveError;

pub const DEFAULT_CURVE_CAP: usize = 6;

/// All normalized double-occurrence words with `n` labels.
pub fn double_occurrence_words(n: usize) -> Vec<OpenGaussCode> {
    fn go(
        n: usize,
        word: &mut Vec<u32>,
        open: &mut Vec<u32>,
        introduced: u32,
        out: &mut Vec<Vec<u32>>,
    ) {
        if word.len() == 2 * n {
            out.push(word.clone());
            return;
        }
        if (introduced as usize) < n {
            let l = introduced + 1;
            word.push(l);
            open.push(l);
            go(n, word, open, introduced + 1, out);
            open.pop();
            word.pop();
        }
        for i in 0..open.len() {
            let l = open.remove(i);
            word.push(l);
            go(n, word, open, introduced, out);
            word.pop();
            open.insert(i, l);
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut Vec::new(), 0, &mut out);
    out.sort();
    out.into_iter()
        .map(|w| OpenGaussCode::new(&w).expect("generated word is valid"))
        .collect()
}

/// Canonical codes (least of word and reversal) with `n` crossings.
pub fn canonical_codes(n: usize) -> Vec<OpenGaussCode> {
    double_occurrence_words(n)
        .into_iter()
        .filter(|c| c.canonical() == *c)
        .collect()
}

fn check_cap(n: usize, cap: usize) -> Result<(), CurveError> {
    if n > cap {
        Err(CurveError::CapExceeded { n, cap })
    } else {
        Ok(())
    }
}

/// One realized representative per realizable code class under renaming,
/// reversal and reflection.
pub fn enumerate_curves(n: usize, cap: usize) -> Result<Vec<PlanarCurveMap>, CurveError> {
    check_cap(n, cap)?;
    Ok(canonical_codes(n)
        .par_iter()
        .filter_map(|c| realizations(c).into_iter().next())
        .collect())
}

/// Every realization (up to reflection) of every canonical code.
pub fn enumerate_realizations(n: usize, cap: usize) -> Result<Vec<PlanarCurveMap>, CurveError> {
    check_cap(n, cap)?;
    Ok(canonical_codes(n)
        .par_iter()
        .flat_map_iter(realizations)
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundKind {
    /// d ≤ c, from the region count.
    RegionCount,
    /// d ≤ max(2, c − 2) for prime curves.
    FirstLemma,
    /// d ≤ max(3, c − 3) for prime curves.
    SecondLemma,
    /// regions ≠ c + 1.
    FaceCount,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub bound: BoundKind,
    pub code: OpenGaussCode,
    pub flips: Vec<bool>,
    pub crossings: usize,
    pub distance: usize,
}

/// Per crossing number summary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelSummary {
    pub c: usize,
    pub words: usize,
    pub classes: usize,
    pub realizations: usize,
    pub prime_realizations: usize,
    pub max_d: usize,
    pub max_prime_d: Option<usize>,
    /// Codes of realizations attaining `max_d`.
    pub extremal: Vec<OpenGaussCode>,
    /// Codes of prime realizations attaining `max_prime_d`.
    pub extremal_prime: Vec<OpenGaussCode>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub levels: Vec<LevelSummary>,
    pub violations: Vec<Violation>,
}

pub fn first_lemma_bound(c: usize) -> usize {
    2usize.max(c.saturating_sub(2))
}

pub fn second_lemma_bound(c: usize) -> usize {
    3usize.max(c.saturating_sub(3))
}

fn check_one(m: &PlanarCurveMap) -> (usize, bool, Vec<Violation>) {
    let c = m.crossing_count();
    let g = m.regions();
    let d = g.shortest_path(g.start_region, g.end_region);
    let prime = m.code().is_prime();
    let mut bad = Vec::new();
    let mut flag = |bound| {
        bad.push(Violation {
            bound,
            code: m.code().clone(),
            flips: m.flips().to_vec(),
            crossings: c,
            distance: d,
        })
    };
    if g.len() != c + 1 {
        flag(BoundKind::FaceCount);
    }
    if d > c {
        flag(BoundKind::RegionCount);
    }
    if prime && d > first_lemma_bound(c) {
        flag(BoundKind::FirstLemma);
    }
    if prime && d > second_lemma_bound(c) {
        flag(BoundKind::SecondLemma);
    }
    (d, prime, bad)
}

/// Checks every realization with at most `n_max` crossings against the
/// region-count bound and both lemma bounds.
pub fn verify_lemma_bounds(n_max: usize, cap: usize) -> Result<LemmaReport, CurveError> {
    check_cap(n_max, cap)?;
    let mut report = LemmaReport::default();
    for c in 0..=n_max {
        let words = double_occurrence_words(c).len();
        let classes = enumerate_curves(c, cap)?.len();
        let maps = enumerate_realizations(c, cap)?;
        let checked: Vec<_> = maps.par_iter().map(check_one).collect();
        let mut max_d = 0;
        let mut max_prime_d = None;
        let mut prime_realizations = 0;
        for (d, prime, _) in &checked {
            max_d = max_d.max(*d);
            if *prime {
                prime_realizations += 1;
                max_prime_d = Some(max_prime_d.map_or(*d, |m: usize| m.max(*d)));
            }
        }
        let mut extremal = BTreeMap::new();
        let mut extremal_prime = BTreeMap::new();
        for (m, (d, prime, bad)) in maps.iter().zip(checked) {
            if d == max_d {
                extremal.insert(m.code().clone(), ());
            }
            if prime && Some(d) == max_prime_d {
                extremal_prime.insert(m.code().clone(), ());
            }
            report.violations.extend(bad);
        }
        report.levels.push(LevelSummary {
            c,
            words,
            classes,
            realizations: maps.len(),
            prime_realizations,
            max_d,
            max_prime_d,
            extremal: extremal.into_keys().collect(),
            extremal_prime: extremal_prime.into_keys().collect(),
        });
    }
    Ok(report)
}

impl LemmaReport {
    /// Columns: c, classes, realizations, max_d, max_prime_d, extremal codes.
    pub fn to_text(&self) -> String {
        let mut out = String::from("c\tclasses\trealizations\tmax_d\tmax_prime_d\textremal\n");
        for l in &self.levels {
            let codes: Vec<String> = l.extremal.iter().map(|c| format!("[{c}]")).collect();
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                l.c,
                l.classes,
                l.realizations,
                l.max_d,
                l.max_prime_d.map_or("-".to_string(), |d| d.to_string()),
                codes.join(" ")
            );
        }
        for v in &self.violations {
            let _ = writeln!(
                out,
                "VIOLATION\t{:?}\tc={}\td={}\t[{}]\tflips={:?}",
                v.bound, v.crossings, v.distance, v.code, v.flips
            );
        }
        out
    }

    /// One JSON object per level, then one per violation.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for l in &self.levels {
            out.push_str(&serde_json::to_string(l).expect("serializable"));
            out.push('\n');
        }
        for v in &self.violations {
            out.push_str(&serde_json::to_string(v).expect("serializable"));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_counts_are_double_factorials() {
        let counts: Vec<usize> = (0..=5).map(|n| double_occurrence_words(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 15, 105, 945]);
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_curves(0, 6).unwrap().len(), 1);
        let one = enumerate_curves(1, 6).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].code().word(), &[1, 1]);
        // [1,1,2,2], [1,2,2,1] and [1,2,1,2] are their own reversals and all
        // three realize
        let two = enumerate_curves(2, 6).unwrap();
        let mut words: Vec<_> = two.iter().map(|m| m.code().word().to_vec()).collect();
        words.sort();
        assert_eq!(
            words,
            vec![vec![1, 1, 2, 2], vec![1, 2, 1, 2], vec![1, 2, 2, 1]]
        );
        let ds: Vec<_> = two.iter().map(|m| m.distance()).collect();
        assert_eq!(ds.iter().filter(|&&d| d == 0).count(), 2);
        assert_eq!(ds.iter().filter(|&&d| d == 1).count(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            enumerate_curves(7, 6).unwrap_err(),
            CurveError::CapExceeded { n: 7, cap: 6 }
        );
        assert!(verify_lemma_bounds(9, 8).is_err());
    }

    #[test]
    fn lemma_report_small() {
        let r = verify_lemma_bounds(2, 6).unwrap();
        assert!(r.violations.is_empty());
        assert_eq!(r.levels[2].max_prime_d, Some(1));
        assert_eq!(
            r.levels[2].extremal_prime,
            vec![OpenGaussCode::new(&[1, 2, 1, 2]).unwrap()]
        );
        let text = r.to_text();
        assert!(text.starts_with("c\tclasses"));
        assert_eq!(r.to_jsonl().lines().count(), 3);
    }

    #[test]
    fn lemma_report_four() {
        assert!(verify_lemma_bounds(4, 6).unwrap().violations.is_empty());
    }
}
