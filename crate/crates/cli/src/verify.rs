//! Closed-form vs enumeration sweep behind the `verify` command.

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use pauli_line::oracle;
use pauli_line::pauli::{self, PauliOp};
use pauli_line::proj_line;
use pauli_line::symplectic::{self, Degree, Vec2};
use pauli_line::{Error, Modulus};

use crate::CliError;

/// Default cap on `d²` for the exhaustive sweep.
pub const DEFAULT_SWEEP_BUDGET: u128 = 10_000;
/// Largest `d` for which the commuting count is checked against all of `G`.
const FULL_GROUP_MAX: u64 = 12;
const PRODUCT_SAMPLES: u64 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DRange {
    pub lo: u64,
    pub hi: u64,
}

impl FromStr for DRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |x: &str| {
            x.trim()
                .parse::<u64>()
                .map_err(|_| format!("invalid dimension {x:?}"))
        };
        let (lo, hi) = if let Some((a, b)) = s.split_once("..=") {
            (parse(a)?, parse(b)?)
        } else if let Some((a, b)) = s.split_once("..") {
            (parse(a)?, parse(b)?)
        } else {
            let d = parse(s)?;
            (d, d)
        };
        if lo < 2 {
            return Err(format!("dimensions start at 2, got {lo}"));
        }
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok(DRange { lo, hi })
    }
}

const CHECKS: [&str; 10] = [
    "points-through count",
    "perp-set size",
    "U size",
    "U = perp predicate",
    "U generates perp",
    "canonical form",
    "line cardinality",
    "layer counts",
    "commuting count",
    "matrix identities",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckTally {
    pub name: String,
    pub passed: u64,
    pub total: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub lo: u64,
    pub hi: u64,
    pub matrix: bool,
    pub checks: Vec<CheckTally>,
    pub first_failure: Option<String>,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

#[derive(Default)]
struct Tally {
    passed: [u64; CHECKS.len()],
    total: [u64; CHECKS.len()],
    failure: Option<String>,
}

impl Tally {
    fn record(&mut self, check: usize, ok: bool, what: impl FnOnce() -> String) {
        self.total[check] += 1;
        if ok {
            self.passed[check] += 1;
        } else if self.failure.is_none() {
            self.failure = Some(format!("{}: {}", CHECKS[check], what()));
        }
    }
}

fn sweep_one(d: u64, matrix: bool) -> Result<Tally, Error> {
    let m = Modulus::new(d)?;
    let n = (d * d) as usize;
    let mut t = Tally::default();
    let idx = |v: Vec2| (v.b * d + v.c) as usize;

    let cat = proj_line::enumerate_points(&m)?;
    t.record(6, cat.len() as u128 == proj_line::line_cardinality(&m), || {
        format!("d={d}: enumerated {} points", cat.len())
    });

    let orbits: Vec<Vec<Vec2>> = cat.points().iter().map(|p| p.vectors(&m).collect()).collect();
    let mut on: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, orbit) in orbits.iter().enumerate() {
        for &v in orbit {
            on[idx(v)].push(k);
        }
    }

    let mut hist = std::collections::BTreeMap::<Degree, u128>::new();
    let mut stamp = vec![usize::MAX; n];
    for v in symplectic::all_vectors(&m) {
        let i = idx(v);
        *hist.entry(symplectic::degree(&m, v)).or_default() += 1;

        let pts = on[i].len() as u128;
        t.record(0, pts == proj_line::count_points_through(&m, v), || {
            format!("d={d} {v}: {pts} points by enumeration")
        });

        let perp = symplectic::perp_set(&m, v)?;
        t.record(1, perp.len() as u128 == symplectic::perp_cardinality(&m, v), || {
            format!("d={d} {v}: |perp| = {} by enumeration", perp.len())
        });

        let mut union = Vec::new();
        for &k in &on[i] {
            for &w in &orbits[k] {
                if stamp[idx(w)] != i {
                    stamp[idx(w)] = i;
                    union.push(w);
                }
            }
        }
        if !v.is_zero() {
            let u = union.len() as u128;
            t.record(2, proj_line::u_size(&m, v) == Ok(u), || {
                format!("d={d} {v}: |U| = {u} by enumeration")
            });
        }
        let inside = union.iter().all(|&w| symplectic::form(&m, v, w) == 0);
        let equal = inside && union.len() == perp.len();
        t.record(3, proj_line::u_equals_perp(&m, v) == equal, || {
            format!("d={d} {v}: U = perp is {equal} by enumeration")
        });
        let span = symplectic::generated_submodule(&m, union.iter().copied())?;
        t.record(4, inside && span == perp, || format!("d={d} {v}"));

        let (mat, target) = symplectic::canonical_form(&m, v);
        let ok = symplectic::apply(&m, v, &mat) == target
            && target.c == 0
            && mat.is_invertible(&m)
            && symplectic::degree(&m, target) == symplectic::degree(&m, v);
        t.record(5, ok, || format!("d={d} {v}"));

        let g = PauliOp { a: 0, b: v.b, c: v.c };
        let brute = if d <= FULL_GROUP_MAX {
            pauli::all_ops(&m)
                .filter(|&h| pauli::multiply(&m, g, h) == pauli::multiply(&m, h, g))
                .count() as u128
        } else {
            // phase exponents cancel in gh vs hg
            let per_phase = symplectic::all_vectors(&m)
                .filter(|w| {
                    let h = PauliOp { a: 0, b: w.b, c: w.c };
                    pauli::multiply(&m, g, h) == pauli::multiply(&m, h, g)
                })
                .count() as u128;
            per_phase * d as u128
        };
        let formula = pauli::commuting_count(&m, g)?;
        t.record(8, formula == brute, || {
            format!("d={d} {v}: {brute} commuting operators by enumeration, formula {formula}")
        });
    }

    let table = pauli::layer_table(&m)?;
    let formula: std::collections::BTreeMap<Degree, u128> =
        table.entries.iter().map(|(k, e)| (k.clone(), e.vectors)).collect();
    t.record(7, formula == hist, || format!("d={d}: degree histogram differs"));

    if matrix && d <= oracle::SWEEP_DIMENSION_MAX {
        let r = oracle::verify_identities(d, PRODUCT_SAMPLES)?;
        t.record(9, r.passed(), || {
            let f = r.failure.clone().expect("failed report");
            format!("d={d}: {} ({})", f.identity, f.detail)
        });
    }
    Ok(t)
}

pub fn run(range: DRange, matrix: bool, budget: u128) -> Result<VerifySummary, CliError> {
    let squared = range.hi as u128 * range.hi as u128;
    if squared > budget {
        return Err(Error::BudgetExceeded {
            what: "verification sweep (d²)",
            required: squared,
            cap: budget,
        }
        .into());
    }
    let tallies: Vec<Tally> = (range.lo..=range.hi)
        .into_par_iter()
        .map(|d| sweep_one(d, matrix))
        .collect::<Result<_, _>>()?;

    let mut checks: Vec<CheckTally> = CHECKS
        .iter()
        .map(|name| CheckTally {
            name: name.to_string(),
            passed: 0,
            total: 0,
        })
        .collect();
    let mut first_failure = None;
    for t in tallies {
        for (c, (p, n)) in checks.iter_mut().zip(t.passed.iter().zip(&t.total)) {
            c.passed += p;
            c.total += n;
        }
        if first_failure.is_none() {
            first_failure = t.failure;
        }
    }
    if !matrix {
        checks.pop();
    }
    Ok(VerifySummary {
        lo: range.lo,
        hi: range.hi,
        matrix,
        checks,
        first_failure,
    })
}

pub fn render_text(s: &VerifySummary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "verify d = {}..{}", s.lo, s.hi);
    let _ = writeln!(out, "{:<24} {:>10} {:>10}", "check", "passed", "total");
    for c in &s.checks {
        let _ = writeln!(out, "{:<24} {:>10} {:>10}", c.name, c.passed, c.total);
    }
    if s.matrix && s.hi > oracle::SWEEP_DIMENSION_MAX {
        let _ = writeln!(
            out,
            "(matrix identities cover d <= {})",
            oracle::SWEEP_DIMENSION_MAX
        );
    }
    match &s.first_failure {
        None => {
            let _ = writeln!(out, "result: all checks passed");
        }
        Some(_) => {
            let _ = writeln!(out, "result: FAILED");
        }
    }
    out
}
