//! The verification suite behind `treelike verify`.
//!
//! Each check compares a closed form (or an independent oracle) with an
//! exhaustive computation for one size `n` and yields a
//! [`VerificationRow`]. Rows always come out sorted by check, then `n`,
//! whatever the number of worker threads.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::abpoly::{self, BivarPoly, EulerTable};
use crate::bijection::{
    all_triplets, corner_transfer_delta, cut_at_corner, glue, phi, phi_inverse, run_to_triplet,
    triplet_words_to_run, CornerRunBijection,
};
use crate::counting;
use crate::enumerate::{par_fold_permutation, par_fold_tree_like};
use crate::error::{Error, Result};
use crate::tableau::NocClass;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    CornersTlt,
    CornersPt,
    Occupied,
    Noc,
    Xn,
    Bi,
    Runs1,
    CornerTransfer,
    PhiRoundtrip,
    CutRoundtrip,
    RunRoundtrip,
    CornerRunBijection,
    Stirling,
    Displacement,
    TnAb,
    OccupiedAb,
    NocConjecture,
    NocClasses,
    EulerAb,
    EulerDerivative,
    ExpectedJumps,
}

impl Check {
    pub const ALL: [Check; 21] = [
        Check::CornersTlt,
        Check::CornersPt,
        Check::Occupied,
        Check::Noc,
        Check::Xn,
        Check::Bi,
        Check::Runs1,
        Check::CornerTransfer,
        Check::PhiRoundtrip,
        Check::CutRoundtrip,
        Check::RunRoundtrip,
        Check::CornerRunBijection,
        Check::Stirling,
        Check::Displacement,
        Check::TnAb,
        Check::OccupiedAb,
        Check::NocConjecture,
        Check::NocClasses,
        Check::EulerAb,
        Check::EulerDerivative,
        Check::ExpectedJumps,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::CornersTlt => "corners-tlt",
            Check::CornersPt => "corners-pt",
            Check::Occupied => "occupied",
            Check::Noc => "noc",
            Check::Xn => "xn",
            Check::Bi => "bi",
            Check::Runs1 => "runs1",
            Check::CornerTransfer => "corner-transfer",
            Check::PhiRoundtrip => "phi-roundtrip",
            Check::CutRoundtrip => "cut-roundtrip",
            Check::RunRoundtrip => "run-roundtrip",
            Check::CornerRunBijection => "corner-run-bijection",
            Check::Stirling => "stirling",
            Check::Displacement => "displacement",
            Check::TnAb => "tn-ab",
            Check::OccupiedAb => "occupied-ab",
            Check::NocConjecture => "noc-conjecture",
            Check::NocClasses => "noc-classes",
            Check::EulerAb => "euler-ab",
            Check::EulerDerivative => "euler-derivative",
            Check::ExpectedJumps => "expected-jumps",
        }
    }

    /// Smallest meaningful `n`.
    pub fn min_n(self) -> usize {
        match self {
            Check::Bi | Check::EulerDerivative | Check::ExpectedJumps => 2,
            Check::NocConjecture | Check::NocClasses => 3,
            _ => 1,
        }
    }

    /// Largest `n` that is run, without and with `--long`.
    pub fn max_n(self, long: bool) -> usize {
        let (short, long_cap) = match self {
            Check::PhiRoundtrip
            | Check::CutRoundtrip
            | Check::RunRoundtrip
            | Check::CornerRunBijection => (7, 9),
            Check::NocConjecture => (9, 10),
            Check::EulerDerivative => (10, 20),
            _ => (8, 10),
        };
        if long {
            long_cap
        } else {
            short
        }
    }

    /// Evaluates the check at one size: `(expected, actual)`.
    pub fn evaluate(self, n: usize) -> Result<(String, String)> {
        evaluate(self, n)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Check> {
        Check::ALL
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check {s:?}")))
    }
}

/// Parses a check name, or `all`.
pub fn parse_checks(name: &str) -> Result<Vec<Check>> {
    if name == "all" {
        Ok(Check::ALL.to_vec())
    } else {
        Ok(vec![name.parse()?])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationRow {
    pub check: String,
    pub n: usize,
    pub expected: String,
    pub actual: String,
    #[serde(rename = "match")]
    pub matches: bool,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub max_n: usize,
    pub long: bool,
    /// Zero elapsed times, for byte-identical output.
    pub timing: bool,
}

/// A planned `(check, n)` pair, or one that was left out because it needs
/// `--long` or lies above the long cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Planned {
    Run(Check, usize),
    Skipped { check: Check, n: usize, cap: usize },
}

pub fn plan(checks: &[Check], opts: &Options) -> Vec<Planned> {
    let mut out = Vec::new();
    for &c in checks {
        let cap = c.max_n(opts.long);
        for n in c.min_n()..=opts.max_n {
            out.push(if n <= cap {
                Planned::Run(c, n)
            } else {
                Planned::Skipped { check: c, n, cap }
            });
        }
    }
    out
}

/// Runs every planned pair in parallel and returns the rows in plan order.
pub fn run(checks: &[Check], opts: &Options) -> Result<Vec<VerificationRow>> {
    let jobs: Vec<(Check, usize)> = plan(checks, opts)
        .into_iter()
        .filter_map(|p| match p {
            Planned::Run(c, n) => Some((c, n)),
            Planned::Skipped { .. } => None,
        })
        .collect();
    jobs.par_iter()
        .map(|&(c, n)| run_one(c, n, opts.timing))
        .collect()
}

pub fn run_one(check: Check, n: usize, timing: bool) -> Result<VerificationRow> {
    let start = Instant::now();
    let (expected, actual) = evaluate(check, n)?;
    let elapsed_ms = if timing {
        start.elapsed().as_millis() as u64
    } else {
        0
    };
    Ok(VerificationRow {
        check: check.name().to_string(),
        n,
        matches: expected == actual,
        expected,
        actual,
        elapsed_ms,
    })
}

pub fn write_csv<W: std::io::Write>(rows: &[VerificationRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Parse(format!("writing csv: {e}"));
    w.write_record(["check", "n", "expected", "actual", "match", "elapsed_ms"])
        .map_err(io)?;
    for r in rows {
        w.write_record([
            r.check.clone(),
            r.n.to_string(),
            r.expected.clone(),
            r.actual.clone(),
            r.matches.to_string(),
            r.elapsed_ms.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush()
        .map_err(|e| Error::Parse(format!("writing csv: {e}")))?;
    Ok(())
}

fn join_map<K: fmt::Display, V: fmt::Display>(m: &BTreeMap<K, V>) -> String {
    m.iter().map(|(k, v)| format!("{k}:{v}")).join(" ")
}

fn evaluate(check: Check, n: usize) -> Result<(String, String)> {
    if n < check.min_n() {
        return Err(Error::OutOfRange(format!(
            "{check} starts at n = {}",
            check.min_n()
        )));
    }
    Ok(match check {
        Check::CornersTlt => (
            counting::c_tlt(n)?.to_string(),
            counting::tree_like_totals(n)?.corners.to_string(),
        ),
        Check::CornersPt => {
            let formula = counting::c_pt(n)?;
            let enumerated = counting::pt_corner_total(n)?;
            let pairs = counting::ascent_descent_pairs(n)?;
            let actual = if pairs == enumerated {
                enumerated.to_string()
            } else {
                format!("{enumerated} (ascent/descent pairs {pairs})")
            };
            (formula.to_string(), actual)
        }
        Check::Occupied => (
            counting::occ(n)?.to_string(),
            counting::tree_like_totals(n)?.occupied.to_string(),
        ),
        Check::Noc => (
            counting::noc(n)?.to_string(),
            counting::tree_like_totals(n)?.non_occupied.to_string(),
        ),
        Check::Xn => (
            counting::xn_count(n)?.to_string(),
            counting::xn_oracle(n)?.to_string(),
        ),
        Check::Bi => {
            let formula: Vec<u64> = (1..n)
                .map(|i| counting::formula_bi(n, i))
                .collect::<Result<_>>()?;
            let brute: Vec<u64> = (1..n)
                .map(|i| counting::count_bi(n, i))
                .collect::<Result<_>>()?;
            (formula.iter().join(" "), brute.iter().join(" "))
        }
        Check::Runs1 => (
            counting::runs1_total(n)?.to_string(),
            counting::runs1_brute(n)?.to_string(),
        ),
        Check::CornerTransfer => {
            let (sum, failures) = par_fold_tree_like(
                n,
                || (0u64, 0u64),
                |acc, t| {
                    let delta = corner_transfer_delta(t);
                    acc.0 += delta as u64;
                    if phi(t).num_corners() + delta != t.path().num_corners() {
                        acc.1 += 1;
                    }
                },
                |a, b| (a.0 + b.0, a.1 + b.1),
            )?;
            (
                format!("{} failures=0", counting::xn_count(n)?),
                format!("{sum} failures={failures}"),
            )
        }
        Check::PhiRoundtrip => {
            let t_ok = par_fold_tree_like(
                n,
                || 0u64,
                |acc, t| *acc += u64::from(phi_inverse(&phi(t)).ok().as_ref() == Some(t)),
                |a, b| a + b,
            )?;
            let p_ok = par_fold_permutation(
                n,
                || 0u64,
                |acc, p| {
                    *acc += u64::from(phi_inverse(p).map(|t| phi(&t)).ok().as_ref() == Some(p))
                },
                |a, b| a + b,
            )?;
            let f = counting::factorial(n)?;
            (format!("{f} {f}"), format!("{t_ok} {p_ok}"))
        }
        Check::CutRoundtrip => {
            let ok = par_fold_tree_like(
                n,
                || 0u64,
                |acc, t| {
                    for c in t.path().corners() {
                        let back = cut_at_corner(t, c).and_then(|cut| {
                            cut.check()?;
                            glue(&cut)
                        });
                        if back.is_ok_and(|(u, d)| &u == t && d == c) {
                            *acc += 1;
                        }
                    }
                },
                |a, b| a + b,
            )?;
            (counting::c_tlt(n)?.to_string(), ok.to_string())
        }
        Check::RunRoundtrip => {
            let triplets = all_triplets(n);
            let images: Vec<_> = triplets
                .par_iter()
                .filter_map(|t| {
                    let p = triplet_words_to_run(t).ok()?;
                    (run_to_triplet(&p).ok().as_ref() == Some(t)).then_some(p)
                })
                .collect();
            let distinct: HashSet<_> = images.into_iter().collect();
            let e = counting::runs1_total(n)?;
            (
                format!("{e} of {e}"),
                format!("{} of {}", distinct.len(), triplets.len()),
            )
        }
        Check::CornerRunBijection => {
            let bij = CornerRunBijection::new(n)?;
            let images = par_fold_tree_like(
                n,
                Vec::new,
                |acc, t| {
                    for c in t.path().corners() {
                        match bij.corner_to_run(t, c) {
                            Ok(p) if bij.run_to_corner(&p).ok() == Some((t.clone(), c)) => {
                                acc.push(p)
                            }
                            _ => {}
                        }
                    }
                },
                |mut a, b| {
                    a.extend(b);
                    a
                },
            )?;
            let pairs = images.len();
            let distinct: HashSet<_> = images.into_iter().collect();
            let e = counting::runs1_total(n)?;
            (
                format!("{e} distinct of {e}"),
                format!("{} distinct of {pairs}", distinct.len()),
            )
        }
        Check::Stirling => {
            let perms = counting::cycle_distribution(n)?;
            let tableaux = counting::tree_like_totals(n)?.first_column;
            (join_map(&perms), join_map(&tableaux))
        }
        Check::Displacement => (
            counting::noc(n + 1)?.to_string(),
            counting::displacement_sum(n)?.to_string(),
        ),
        Check::TnAb => (
            abpoly::t_poly(n).to_string(),
            abpoly::weighted_sums(n)?.weights.to_string(),
        ),
        Check::OccupiedAb => (
            abpoly::t_poly(n).to_string(),
            abpoly::weighted_sums(n)?.occupied.to_string(),
        ),
        Check::NocConjecture => {
            let r = abpoly::check_noc_conjecture(n)?;
            (r.expected.to_string(), r.actual.to_string())
        }
        Check::NocClasses => {
            let sums = abpoly::weighted_sums(n)?;
            let mut expected = Vec::new();
            let mut actual = Vec::new();
            for class in [NocClass::AB, NocClass::A1, NocClass::OneB] {
                let closed = abpoly::class_closed_form(class, n)?.expect("closed form");
                expected.push(format!("{class}: {closed}"));
                actual.push(format!("{class}: {}", sums.classes[&class]));
            }
            let total = sums
                .classes
                .values()
                .fold(BivarPoly::zero(), |acc, p| &acc + p);
            expected.push(format!("sum: {}", sums.noc));
            actual.push(format!("sum: {total}"));
            expected.push(format!(
                "1B = A1 swapped: {}",
                sums.classes[&NocClass::A1].swap()
            ));
            actual.push(format!(
                "1B = A1 swapped: {}",
                sums.classes[&NocClass::OneB]
            ));
            (expected.join("; "), actual.join("; "))
        }
        Check::EulerAb => {
            let table = EulerTable::new(n);
            let sums = abpoly::weighted_sums(n)?;
            let expected = (1..=n)
                .map(|k| format!("k={k}: {}", table.get(n, k)))
                .join("; ");
            let actual = sums
                .euler
                .iter()
                .enumerate()
                .map(|(i, p)| format!("k={}: {p}", i + 1))
                .join("; ");
            (expected, actual)
        }
        Check::EulerDerivative => {
            let table = EulerTable::new(n);
            (
                format!(
                    "derivative: {}; total: {}",
                    abpoly::euler_derivative_closed_form(n)?,
                    abpoly::t_poly(n)
                ),
                format!(
                    "derivative: {}; total: {}",
                    table.derivative_at_one(n),
                    table.total(n)
                ),
            )
        }
        Check::ExpectedJumps => {
            let e = abpoly::expected_jumps(n)?;
            // Cross products of the defining and the corrected quotients.
            let expected = &e.corrected.num * &e.defining.den;
            let actual = &e.defining.num * &e.corrected.den;
            let at_one = abpoly::fraction_string(&e.corrected.eval_at_one());
            (
                format!("{expected} at a=b=1: {at_one}"),
                format!("{actual} at a=b=1: {}", e.defining_at_one),
            )
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert_eq!(parse_checks("all").unwrap().len(), 21);
        assert!(parse_checks("nope").is_err());
    }

    #[test]
    fn every_check_passes_at_small_sizes() {
        for c in Check::ALL {
            for n in c.min_n()..=4 {
                let row = run_one(c, n, false).unwrap();
                assert!(row.matches, "{row:?}");
            }
        }
    }

    #[test]
    fn rows_follow_plan_order() {
        let opts = Options {
            max_n: 3,
            long: false,
            timing: false,
        };
        let rows = run(&[Check::Noc, Check::CornersTlt], &opts).unwrap();
        let keys: Vec<_> = rows.iter().map(|r| (r.check.as_str(), r.n)).collect();
        assert_eq!(
            keys,
            [
                ("noc", 1),
                ("noc", 2),
                ("noc", 3),
                ("corners-tlt", 1),
                ("corners-tlt", 2),
                ("corners-tlt", 3)
            ]
        );
    }

    #[test]
    fn caps_skip_large_sizes() {
        let opts = Options {
            max_n: 9,
            long: false,
            timing: false,
        };
        let p = plan(&[Check::PhiRoundtrip], &opts);
        assert_eq!(p.len(), 9);
        assert_eq!(
            p[8],
            Planned::Skipped {
                check: Check::PhiRoundtrip,
                n: 9,
                cap: 7
            }
        );
    }

    #[test]
    fn csv_header() {
        let row = run_one(Check::CornersTlt, 1, false).unwrap();
        let mut buf = Vec::new();
        write_csv(&[row], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "check,n,expected,actual,match,elapsed_ms\ncorners-tlt,1,1,1,true,0\n"
        );
    }
}
