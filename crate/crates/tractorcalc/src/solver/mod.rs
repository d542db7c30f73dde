//! Formal solutions of the Proca boundary problem in tractor form.
//!
//! Given boundary data `A_Σ` of degree `k` and form weight `w0 + k`, find a
//! tractor `k`-form `𝒜` of weight `w0` with `y𝒜 = O(σ^ℓ)`, lying in the
//! kernel of `ιI`, `D̂*` and `X*`, whose west slot restricts to `A_Σ`.

mod duality;
mod forms;
mod json;
mod residual;
mod series;

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use duality::scale_duality;
pub use forms::{gl_left, gl_right, gl_solution, gl_step, product_solution, split};
pub use json::{DataJson, ProblemJson, SolutionJson};
pub use residual::{residual_orders, Order, ResidualReport};
pub use series::{apply_first_kind, iterate, log_solve, next_order};

use crate::error::{precondition, Error, Result};
use crate::model::{Space, WeightedForm};
use crate::num::{as_integer, format_q, q, Exp, Q};
use crate::tractor::algebraic::{eps_i, x};
use crate::tractor::insert::{q_north_tau, q_west};
use crate::tractor::projector::{pi, pi_hat_tau};
use crate::tractor::thomas::{triple_d, triple_d_star};
use crate::tractor::TractorForm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `h0 ∉ {1, 2, ..}` away from the true-form weights.
    Generic,
    /// `h0 = 1`, where the two indicial roots meet.
    SecondKind,
    /// `h0 ∈ {2, 3, ..}`: a `log σ` term from `σ^{h0−1}` on.
    Log,
    /// `w0 = −k`.
    TrueForm,
    /// `w0 = k − n`.
    DualTrueForm,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Generic => "generic",
            Regime::SecondKind => "second_kind",
            Regime::Log => "log",
            Regime::TrueForm => "true_form",
            Regime::DualTrueForm => "dual_true_form",
        }
    }

    pub fn parse(s: &str) -> Result<Regime> {
        [
            Regime::Generic,
            Regime::SecondKind,
            Regime::Log,
            Regime::TrueForm,
            Regime::DualTrueForm,
        ]
        .into_iter()
        .find(|r| r.name() == s)
        .ok_or_else(|| Error::Parse(format!("unknown regime {s:?}")))
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundaryData {
    /// A boundary form, or a bulk form used as its own extension.
    Form(WeightedForm),
    /// Coclosed boundary pair `(A, φ)` for the dual true-form weight.
    Pair { a: WeightedForm, phi: WeightedForm },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    d: usize,
    k: i32,
    w0: Q,
    order: usize,
    data: BoundaryData,
}

/// Which construction produces the tractor series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    /// Closed solution operators.
    Closed,
    /// Order-by-order recursion from the projected data.
    Recursive,
}

fn check_form(a: &WeightedForm, d: usize, degree: i32, weight: &Q, what: &str) -> Result<()> {
    let dim_ok = if a.space().is_bulk() {
        a.space().dim() == d
    } else {
        a.space().dim() + 1 == d
    };
    if !dim_ok {
        return Err(precondition(
            "problem",
            format!("{what} lives in {}, expected d = {d}", a.space()),
        ));
    }
    if !a.is_zero() && a.degree() != degree {
        return Err(precondition(
            "problem",
            format!("{what} has degree {}, expected {degree}", a.degree()),
        ));
    }
    if a.weight() != weight {
        return Err(precondition(
            "problem",
            format!(
                "{what} has weight {}, expected {}",
                format_q(a.weight()),
                format_q(weight)
            ),
        ));
    }
    Ok(())
}

/// The regime of the problem at `(d, k, w0)`; the cells no construction
/// covers are errors.
pub fn regime_of(d: usize, k: i32, w0: &Q) -> Result<Regime> {
    let n = d as i64 - 1;
    let kq = q(k as i64);
    let true_form = *w0 == -kq.clone();
    let dual = *w0 == &kq - q(n);
    match (true_form, dual) {
        (true, true) => Err(Error::Unsupported(format!(
            "k = n/2 = {k}: both true-form weights coincide"
        ))),
        (true, false) => Ok(Regime::TrueForm),
        (false, true) if 2 * k as i64 >= n => Err(Error::Unsupported(
            "dual true-form weight with 2k > n needs log terms".into(),
        )),
        (false, true) => Ok(Regime::DualTrueForm),
        (false, false) => Ok(match as_integer(&(q(d as i64) + q(2) * w0)) {
            Some(1) => Regime::SecondKind,
            Some(h) if h >= 2 => Regime::Log,
            _ => Regime::Generic,
        }),
    }
}

fn bulk(a: &WeightedForm) -> WeightedForm {
    if a.space().is_bulk() {
        a.clone()
    } else {
        a.extend()
    }
}

impl Problem {
    pub fn new(d: usize, k: i32, w0: Q, order: usize, data: BoundaryData) -> Result<Problem> {
        if d < 2 || k < 0 || k as usize > d {
            return Err(precondition(
                "problem",
                format!("bad shape d = {d}, k = {k}"),
            ));
        }
        let u = &w0 + q(k as i64);
        match &data {
            BoundaryData::Form(a) => check_form(a, d, k, &u, "data")?,
            BoundaryData::Pair { a, phi } => {
                if a.space().is_bulk() || phi.space().is_bulk() {
                    return Err(precondition("problem", "a pair must live on the boundary"));
                }
                check_form(a, d, k, &u, "a")?;
                check_form(phi, d, k - 1, &(&u - q(2)), "phi")?;
            }
        }
        Ok(Problem {
            d,
            k,
            w0,
            order,
            data,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> i32 {
        self.k
    }

    pub fn w0(&self) -> &Q {
        &self.w0
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn data(&self) -> &BoundaryData {
        &self.data
    }

    fn n(&self) -> i64 {
        self.d as i64 - 1
    }

    pub fn h0(&self) -> Q {
        q(self.d as i64) + q(2) * &self.w0
    }

    pub fn regime(&self) -> Result<Regime> {
        let regime = regime_of(self.d, self.k, &self.w0)?;
        let pair = matches!(self.data, BoundaryData::Pair { .. });
        if pair && regime != Regime::DualTrueForm {
            return Err(precondition(
                "problem",
                "a pair (a, phi) is only accepted at w0 = k - n",
            ));
        }
        Ok(regime)
    }

    fn form_data(&self) -> &WeightedForm {
        match &self.data {
            BoundaryData::Form(a) => a,
            BoundaryData::Pair { a, .. } => a,
        }
    }

    /// The bulk form `A0` extending the data, constant in `r`. At the dual
    /// true-form weight the pair enters as `A − σ ε(n) φ`.
    pub fn extended_form(&self) -> WeightedForm {
        match &self.data {
            BoundaryData::Form(a) => bulk(a),
            BoundaryData::Pair { a, phi } => {
                let correction = phi.extend().eps_n().mul_sigma();
                a.extend()
                    .sub(&correction.relabel(self.k, self.w0.clone() + q(self.k as i64)))
            }
        }
    }

    /// The tractor `A0` the closed formulas start from.
    pub fn extension(&self) -> Result<TractorForm> {
        let a = self.form_data();
        let d = q(self.d as i64);
        if self.w0 == q(self.k as i64) - d {
            if a.space().is_bulk() {
                return Err(Error::Unsupported(
                    "bulk data at w0 = k - d; pass boundary data".into(),
                ));
            }
            return Ok(q_west(a)?.extend());
        }
        q_west(&self.extended_form())
    }

    /// The tractor series, truncated above `σ^order`.
    pub fn solve_with(&self, backend: Backend) -> Result<SeriesSolution> {
        let regime = self.regime()?;
        let l = self.order;
        let n = self.n();
        let section = match (regime, backend) {
            (Regime::Generic | Regime::SecondKind, Backend::Closed) => {
                pi(&apply_first_kind(&self.extension()?, l)?)?
            }
            (Regime::Generic | Regime::SecondKind, Backend::Recursive) => {
                iterate(&pi(&self.extension()?)?, l)?
            }
            (Regime::Log, Backend::Closed) => {
                let m = (&self.w0 + q(self.k as i64)) * (q(n) + &self.w0 - q(self.k as i64));
                let s = log_solve(&triple_d(&self.extension()?), l)?;
                triple_d_star(&s).scale_by(&m.recip())
            }
            (Regime::TrueForm, Backend::Closed) if 2 * (self.k as i64) < n => {
                let lifted = eps_i(&x(&q_north_tau(&self.extended_form())));
                let s = log_solve(&lifted, l)?;
                triple_d_star(&s).scale_by(&-q(n - 2 * self.k as i64).recip())
            }
            (Regime::TrueForm, Backend::Closed) => {
                apply_first_kind(&pi_hat_tau(&self.extended_form())?, l)?
            }
            (Regime::TrueForm, Backend::Recursive) if 2 * (self.k as i64) > n => {
                iterate(&pi_hat_tau(&self.extended_form())?, l)?
            }
            (Regime::DualTrueForm, Backend::Closed) => {
                apply_first_kind(&q_west(&self.extended_form())?, l)?
            }
            (Regime::DualTrueForm, Backend::Recursive) => {
                iterate(&q_west(&self.extended_form())?, l)?
            }
            (_, Backend::Recursive) => {
                return Err(Error::Unsupported(format!(
                    "no recursive backend in the {regime} regime"
                )))
            }
        };
        Ok(SeriesSolution {
            d: self.d,
            k: self.k,
            w0: self.w0.clone(),
            regime,
            alpha: Exp::zero(),
            order: l,
            section: section.truncate_below(Exp::from_integer(l as i64 + 1)),
        })
    }

    pub fn solve(&self) -> Result<SeriesSolution> {
        self.solve_with(Backend::Closed)
    }
}

/// A truncated formal solution `𝒜 = Σ σ^{α+i} 𝒜_i + log σ Σ σ^{h0−1+i} 𝒜'_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesSolution {
    pub d: usize,
    pub k: i32,
    pub w0: Q,
    pub regime: Regime,
    pub alpha: Exp,
    pub order: usize,
    pub section: TractorForm,
}

impl SeriesSolution {
    fn h0(&self) -> Q {
        q(self.d as i64) + q(2) * &self.w0
    }

    fn coefficient(&self, power: Exp, log: u32) -> TractorForm {
        let w = &self.w0 - crate::num::exp_to_q(&power);
        self.section.coeff(power, log).relabel(self.k, w)
    }

    /// Non-log coefficients `𝒜_i` of `σ^{α+i}`, `i = 0..=order`, each of
    /// weight `w0 − α − i`.
    pub fn coeffs(&self) -> Vec<TractorForm> {
        (0..=self.order as i64)
            .map(|i| self.coefficient(self.alpha + Exp::from_integer(i), 0))
            .collect()
    }

    /// First power of `σ` carrying a `log σ`, if any.
    pub fn log_start(&self) -> Option<i64> {
        as_integer(&self.h0())
            .filter(|&h| h >= 2 && self.section.log_degree() > 0)
            .map(|h| h - 1)
    }

    /// Coefficients of `σ^{h0−1+i} log σ` up to `σ^order`.
    pub fn log_coeffs(&self) -> Vec<TractorForm> {
        let Some(start) = self.log_start() else {
            return Vec::new();
        };
        (start..=self.order as i64)
            .map(|j| self.coefficient(Exp::from_integer(j), 1))
            .collect()
    }

    /// The first log coefficient, the obstruction to a log-free solution.
    pub fn obstruction(&self) -> Option<TractorForm> {
        let h = as_integer(&self.h0()).filter(|&h| h >= 2)?;
        (h - 1 <= self.order as i64).then(|| self.coefficient(Exp::from_integer(h - 1), 1))
    }

    pub fn report(&self) -> ResidualReport {
        residual_orders(&self.section)
    }

    /// True when every residual has order at least `α + order`.
    pub fn meets_order(&self) -> bool {
        let bound = self.alpha + Exp::from_integer(self.order as i64);
        self.report()
            .orders()
            .iter()
            .all(|(_, o)| o.at_least(bound))
    }

    /// `σ^{1−h}Π𝒜`: a solution at the dual weight `−w0 − n`, leading
    /// exponent `h0 − 1` there. Applying it twice returns the input up to
    /// terms above the truncation order.
    pub fn dual(&self) -> Result<SeriesSolution> {
        let n = q(self.d as i64 - 1);
        let w0 = -&self.w0 - n;
        let regime = regime_of(self.d, self.k, &w0)?;
        let section = scale_duality(&self.section)?;
        let h0 = q(self.d as i64) + q(2) * &w0;
        let alpha = if self.alpha.is_zero() {
            crate::num::q_to_exp(&(h0 - q(1)))?
        } else {
            Exp::zero()
        };
        Ok(SeriesSolution {
            d: self.d,
            k: self.k,
            w0,
            regime,
            alpha,
            order: self.order,
            section,
        })
    }

    pub fn space(&self) -> Space {
        self.section.space()
    }
}

impl fmt::Display for SeriesSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "d = {}, k = {}, w0 = {}, regime {}, order {}",
            self.d,
            self.k,
            format_q(&self.w0),
            self.regime,
            self.order
        )?;
        for (name, o) in self.report().orders() {
            writeln!(f, "  {name:<12} O(σ^{o})")?;
        }
        Ok(())
    }
}
