//! Seeded exact identity suites.
//!
//! Each identity is checked on random sections for every cell of a grid of
//! bulk dimensions `d`, tractor or form degrees `k` and seeds. The weight of
//! a cell is a random non-integer rational with denominator 3, 5 or 7, so
//! it avoids every integer and half-integer excluded weight. Identities
//! that live at special weights pick their own weight from the cell.

mod model;
mod sl2;
mod solver;
mod tractor;

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::error::Result;
use crate::model::WeightedForm;
use crate::num::{format_q, Q};
use crate::random::SectionRng;
use crate::tractor::TractorForm;

/// Grid cell an identity is evaluated on.
#[derive(Clone, Debug)]
pub struct Cell {
    pub d: usize,
    pub k: i32,
    pub w: Q,
    pub seed: u64,
}

impl Cell {
    pub fn label(&self) -> String {
        format!(
            "d={} k={} w={} seed={}",
            self.d,
            self.k,
            format_q(&self.w),
            self.seed
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    /// The cell lies outside the identity's domain.
    Skip,
}

pub type CheckFn = fn(&Cell, &mut SectionRng) -> Result<Outcome>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Once per grid cell.
    Cells,
    /// Once per seed, with the cell fields ignored apart from the seed.
    Once,
}

#[derive(Clone, Copy)]
pub struct Identity {
    pub family: &'static str,
    pub name: &'static str,
    pub scope: Scope,
    pub check: CheckFn,
}

/// Grid of cells.
#[derive(Clone, Debug)]
pub struct Tier {
    pub dims: Vec<usize>,
    pub degrees: Vec<i32>,
    pub seeds: u64,
}

impl Tier {
    pub fn quick() -> Self {
        Tier {
            dims: vec![4, 5],
            degrees: vec![0, 1, 2],
            seeds: 2,
        }
    }

    pub fn full() -> Self {
        Tier {
            dims: vec![4, 5, 6, 7],
            degrees: vec![0, 1, 2, 3, 4],
            seeds: 20,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub family: String,
    pub identity: String,
    pub cases: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl Row {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub seed: u64,
    pub rows: Vec<Row>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(Row::passed)
    }

    pub fn table(&self) -> String {
        let width = self
            .rows
            .iter()
            .map(|r| r.identity.len())
            .max()
            .unwrap_or(8);
        let mut out = String::new();
        for row in &self.rows {
            let verdict = if row.passed() { "pass" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{verdict}  {:<10} {:<width$}  {} cases",
                row.family, row.identity, row.cases
            );
            if let Some(c) = &row.counterexample {
                let _ = writeln!(out, "      {c}");
            }
        }
        out
    }
}

/// Every registered identity, in report order.
pub fn registry() -> Vec<Identity> {
    let mut all = Vec::new();
    all.extend(sl2::identities());
    all.extend(model::identities());
    all.extend(tractor::identities());
    all.extend(solver::identities());
    all
}

fn mix(parts: &[u64]) -> u64 {
    parts.iter().fold(0x9e37_79b9_7f4a_7c15u64, |h, &p| {
        (h ^ p).wrapping_mul(0x1000_0000_01b3).rotate_left(17)
    })
}

/// The weight assigned to a cell.
pub fn cell_weight(seed: u64, d: usize, k: i32) -> Q {
    SectionRng::new(mix(&[seed, d as u64, k as u64, 1])).weight(&[])
}

/// Random section generator for one identity on one cell.
pub fn cell_rng(cell: &Cell, index: usize) -> SectionRng {
    SectionRng::with_shape(
        mix(&[cell.seed, cell.d as u64, cell.k as u64, index as u64, 2]),
        4,
        3,
    )
}

/// Runs `identities` over the tier starting at `seed`.
pub fn run(identities: &[Identity], tier: &Tier, seed: u64) -> Report {
    let mut rows = Vec::with_capacity(identities.len());
    for (index, id) in identities.iter().enumerate() {
        let mut row = Row {
            family: id.family.to_string(),
            identity: id.name.to_string(),
            cases: 0,
            failures: 0,
            counterexample: None,
        };
        for s in 0..tier.seeds {
            let cell_seed = seed.wrapping_add(s);
            let cells: Vec<Cell> = match id.scope {
                Scope::Once => vec![Cell {
                    d: tier.dims[0],
                    k: 0,
                    w: Q::default(),
                    seed: cell_seed,
                }],
                Scope::Cells => tier
                    .dims
                    .iter()
                    .flat_map(|&d| {
                        tier.degrees.iter().map(move |&k| Cell {
                            d,
                            k,
                            w: cell_weight(cell_seed, d, k),
                            seed: cell_seed,
                        })
                    })
                    .collect(),
            };
            for cell in cells {
                let mut rng = cell_rng(&cell, index);
                let outcome = (id.check)(&cell, &mut rng)
                    .unwrap_or_else(|e| Outcome::Fail(format!("error: {e}")));
                match outcome {
                    Outcome::Skip => {}
                    Outcome::Pass => row.cases += 1,
                    Outcome::Fail(msg) => {
                        row.cases += 1;
                        row.failures += 1;
                        if row.counterexample.is_none() {
                            row.counterexample = Some(format!("{}: {msg}", cell.label()));
                        }
                    }
                }
            }
        }
        rows.push(row);
    }
    Report { seed, rows }
}

/// Runs `identities` and reports the elapsed wall time alongside.
pub fn run_timed(identities: &[Identity], tier: &Tier, seed: u64) -> (Report, std::time::Duration) {
    let start = Instant::now();
    let report = run(identities, tier, seed);
    (report, start.elapsed())
}

const DUMP_LIMIT: usize = 600;

fn clip(s: String) -> String {
    if s.len() <= DUMP_LIMIT {
        s
    } else {
        let mut end = DUMP_LIMIT;
        while !s.is_char_boundary(end) {
            end -= 1;
        }
        format!("{} ...", &s[..end])
    }
}

pub(crate) fn same(lhs: &TractorForm, rhs: &TractorForm) -> Outcome {
    match lhs.try_add(&rhs.neg()) {
        Ok(diff) if diff.is_zero() => Outcome::Pass,
        Ok(diff) => Outcome::Fail(clip(format!("difference {diff}"))),
        Err(e) => Outcome::Fail(format!("shape mismatch: {e}")),
    }
}

pub(crate) fn vanishes(t: &TractorForm) -> Outcome {
    if t.is_zero() {
        Outcome::Pass
    } else {
        Outcome::Fail(clip(format!("nonzero {t}")))
    }
}

pub(crate) fn vanishes_along(t: &TractorForm) -> Outcome {
    if t.vanishes_along_boundary() {
        Outcome::Pass
    } else {
        Outcome::Fail(clip(format!("nonzero along the boundary {t}")))
    }
}

/// Difference vanishes along `Σ`: every term carries a positive power of `r`.
pub(crate) fn same_along(lhs: &TractorForm, rhs: &TractorForm) -> Outcome {
    match lhs.try_add(&rhs.neg()) {
        Ok(diff) if diff.vanishes_along_boundary() => Outcome::Pass,
        Ok(diff) => Outcome::Fail(clip(format!("difference along the boundary {diff}"))),
        Err(e) => Outcome::Fail(format!("shape mismatch: {e}")),
    }
}

pub(crate) fn same_form(lhs: &WeightedForm, rhs: &WeightedForm) -> Outcome {
    let diff = lhs.sub(rhs);
    if diff.is_zero() {
        Outcome::Pass
    } else {
        Outcome::Fail(clip(format!("difference {diff}")))
    }
}

pub(crate) fn all(outcomes: impl IntoIterator<Item = Outcome>) -> Outcome {
    outcomes
        .into_iter()
        .find(|o| matches!(o, Outcome::Fail(_)))
        .unwrap_or(Outcome::Pass)
}

pub(crate) fn expect(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(msg())
    }
}
