use num_traits::{One, Zero};

use super::{HPoly, NOSeries};
use crate::error::{excluded, Error, Result};
use crate::num::{as_integer, factorial, falling, format_q, q, q_to_exp, Exp, Q};

/// `c_j = xy + j(h − j − 1)`.
pub fn casimir_shift(j: usize) -> NOSeries {
    let j_q = q(j as i64);
    let mut out = NOSeries::word(Exp::one(), 1, HPoly::one());
    out.add_word(
        Exp::zero(),
        0,
        HPoly::linear(-(&j_q + Q::one())).scale(&j_q),
    );
    out
}

/// `c_1 c_2 ⋯ c_ℓ`, multiplied out in the enveloping algebra.
pub fn casimir_products(l: usize) -> NOSeries {
    (1..=l).fold(NOSeries::one(), |acc, j| {
        acc.mul(&casimir_shift(j))
            .expect("integer powers of x always multiply")
    })
}

/// `Σ_{j ≤ ℓ} (ℓ!/j!) x^j y^j (h − j − 2)(h − j − 3)⋯(h − ℓ − 1)`.
pub fn casimir_products_closed(l: usize) -> NOSeries {
    let mut out = NOSeries::zero();
    for j in 0..=l {
        let c = factorial(l) / factorial(j);
        let p = HPoly::falling(&q(-(j as i64) - 2), l - j).scale(&c);
        out.add_word(Exp::from_integer(j as i64), j as u32, p);
    }
    out
}

/// Coefficients `1/(j! (h0 − 2)(h0 − 3)⋯(h0 − j − 1))`, `j = 0..=order`.
pub fn bessel(h0: &Q, order: usize) -> Result<Vec<Q>> {
    let mut out = Vec::with_capacity(order + 1);
    for j in 0..=order {
        let denom = factorial(j) * falling(&(h0 - q(2)), j);
        if denom.is_zero() {
            return Err(excluded(
                "bessel",
                format!(
                    "pole at h0 = {} for the z^{j} coefficient (h0 − {} = 0)",
                    format_q(h0),
                    j + 1
                ),
            ));
        }
        out.push(Q::one() / denom);
    }
    Ok(out)
}

/// Frobenius solution `K = regular + log(z)·log_part` of
/// `z K'' − (h0 − 2) K' + K = 0` with `K(0) = 1`.
///
/// For `h0 ∈ {2, 3, ..}` the power series breaks down at `z^{h0−1}`; there
/// the log part starts with `−z^{h0−1}/((h0−1)!(h0−2)!)` and the regular
/// coefficient of `z^{h0−1}` is set to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusPair {
    pub h0: Q,
    pub regular: Vec<Q>,
    pub log_part: Vec<Q>,
}

pub fn frobenius(h0: &Q, order: usize) -> FrobeniusPair {
    let resonance = as_integer(h0).filter(|&h| h >= 2).map(|h| (h - 1) as usize);
    let mut regular = vec![Q::one()];
    let mut log_part = vec![Q::zero(); order + 1];
    // the log part solves the same recursion from z^m on
    if let Some(m) = resonance.filter(|&m| m <= order) {
        log_part[m] = -Q::one() / (factorial(m) * factorial(m - 1));
        for j in m + 1..=order {
            let jq = q(j as i64);
            log_part[j] = -&log_part[j - 1] / (&jq * (&jq - q(m as i64)));
        }
    }
    for j in 1..=order {
        // j(j − h0 + 1) a_j + a_{j−1} + (2j − h0 + 1) b_j = 0
        let jq = q(j as i64);
        let lead = &jq * (&jq - h0 + Q::one());
        let a = if lead.is_zero() {
            Q::zero()
        } else {
            let src = &regular[j - 1] + (q(2) * &jq - h0 + Q::one()) * &log_part[j];
            -src / lead
        };
        regular.push(a);
    }
    if log_part.iter().all(|c| c.is_zero()) {
        log_part.clear();
    }
    FrobeniusPair {
        h0: h0.clone(),
        regular,
        log_part,
    }
}

impl FrobeniusPair {
    /// Coefficients of `z^{j−1}` and `z^{j−1} log z`, `j = 0..=order`, of
    /// the differential equation applied to the truncated pair.
    pub fn residual(&self) -> Vec<(Q, Q)> {
        let order = self.regular.len() - 1;
        let get = |v: &[Q], i: usize| v.get(i).cloned().unwrap_or_default();
        let h0 = &self.h0;
        (0..=order)
            .map(|j| {
                let jq = q(j as i64);
                let (a, b) = (get(&self.regular, j), get(&self.log_part, j));
                let (a_prev, b_prev) = if j == 0 {
                    (Q::zero(), Q::zero())
                } else {
                    (get(&self.regular, j - 1), get(&self.log_part, j - 1))
                };
                let diag = &jq * (&jq - Q::one()) - (h0 - q(2)) * &jq;
                let plain = &diag * &a + a_prev + (q(2) * &jq - h0 + Q::one()) * &b;
                let log = &diag * &b + b_prev;
                (plain, log)
            })
            .collect()
    }

    pub fn residual_vanishes(&self) -> bool {
        self.residual()
            .iter()
            .all(|(a, b)| a.is_zero() && b.is_zero())
    }
}

/// `Σ_j c_j :z^j:` for a coefficient list.
pub fn normal_ordered(coeffs: &[Q]) -> NOSeries {
    let mut out = NOSeries::zero();
    for (j, c) in coeffs.iter().enumerate() {
        out.add_word(
            Exp::from_integer(j as i64),
            j as u32,
            HPoly::constant(c.clone()),
        );
    }
    out
}

/// `∏_{j ≤ ℓ} c_j/(j(h0 − j − 1))`, the Dirichlet solution operator.
pub fn first_kind(h0: &Q, order: usize) -> Result<NOSeries> {
    let mut norm = Q::one();
    for j in 1..=order {
        let c = q(j as i64) * (h0 - q(j as i64) - Q::one());
        if c.is_zero() {
            return Err(excluded(
                "first_kind",
                format!("h0 = {} hits the pole of c_{j}", format_q(h0)),
            ));
        }
        norm *= c;
    }
    Ok(casimir_products(order).scale(&(Q::one() / norm)))
}

/// `x^{h0−1} ∏_{j ≤ ℓ} c_j/(j(1 − j − h0))`, acting at the dual weight.
pub fn second_kind(h0: &Q, order: usize) -> Result<NOSeries> {
    let mut norm = Q::one();
    for j in 1..=order {
        let c = q(j as i64) * (Q::one() - q(j as i64) - h0);
        if c.is_zero() {
            return Err(excluded(
                "second_kind",
                format!("h0 = {} hits the pole of c_{j}", format_q(h0)),
            ));
        }
        norm *= c;
    }
    let prefactor = NOSeries::word(q_to_exp(&(h0 - Q::one()))?, 0, HPoly::one());
    prefactor.mul(&casimir_products(order).scale(&(Q::one() / norm)))
}

/// The log-corrected solution operator at `h0 ∈ {2, 3, ..}`:
/// `:regular(z): + log x · :log_part(z):`, both read off the Frobenius pair.
///
/// The log part factors as `C x^{h0−1} :K^{2−h0}(z): y^{h0−1}` with
/// `C = −1/((h0−1)!(h0−2)!)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogOperator {
    pub h0: Q,
    pub regular: NOSeries,
    pub log_part: NOSeries,
}

pub fn log_operator(h0: &Q, order: usize) -> Result<LogOperator> {
    if as_integer(h0).is_none_or(|h| h < 2) {
        return Err(excluded(
            "log_operator",
            format!("needs h0 ∈ {{2, 3, ..}}, got {}", format_q(h0)),
        ));
    }
    let pair = frobenius(h0, order);
    Ok(LogOperator {
        h0: h0.clone(),
        regular: normal_ordered(&pair.regular),
        log_part: normal_ordered(&pair.log_part),
    })
}

/// Coefficient `C` of the first log term.
pub fn log_constant(h0: i64) -> Q {
    let m = (h0 - 1) as usize;
    -Q::one() / (factorial(m) * factorial(m - 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesMode {
    Bessel,
    Frobenius,
    First,
    Second,
    LogOp,
}

impl std::str::FromStr for SeriesMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "bessel" => SeriesMode::Bessel,
            "frobenius" => SeriesMode::Frobenius,
            "first" => SeriesMode::First,
            "second" => SeriesMode::Second,
            "log_op" | "log" => SeriesMode::LogOp,
            _ => return Err(Error::Parse(format!("unknown series mode {s:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesOutput {
    Coefficients(Vec<Q>),
    Frobenius(FrobeniusPair),
    Operator(NOSeries),
    Log(LogOperator),
}

pub fn series_solutions(mode: SeriesMode, h0: &Q, order: usize) -> Result<SeriesOutput> {
    Ok(match mode {
        SeriesMode::Bessel => SeriesOutput::Coefficients(bessel(h0, order)?),
        SeriesMode::Frobenius => SeriesOutput::Frobenius(frobenius(h0, order)),
        SeriesMode::First => SeriesOutput::Operator(first_kind(h0, order)?),
        SeriesMode::Second => SeriesOutput::Operator(second_kind(h0, order)?),
        SeriesMode::LogOp => SeriesOutput::Log(log_operator(h0, order)?),
    })
}
