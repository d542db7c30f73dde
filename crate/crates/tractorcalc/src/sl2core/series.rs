use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::HPoly;
use crate::error::{Error, Result};
use crate::num::{exp_to_q, format_exp, format_q, q, Exp, Q};

/// One generator of the enveloping algebra, or a rational power of `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    X,
    Y,
    H,
    XPow(Exp),
}

/// `x^a y^b p(h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalWord {
    pub a: Exp,
    pub b: u32,
    pub p: HPoly,
}

/// A normal-ordered element `Σ x^a y^b p_ab(h)` of the enveloping algebra.
///
/// The power of `x` is rational so that a single prefactor `x^α` can be
/// carried; all powers occurring in one series then differ from `α` by
/// integers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NOSeries {
    terms: BTreeMap<(Exp, u32), HPoly>,
}

fn is_fractional(a: &Exp) -> bool {
    !a.is_integer()
}

impl NOSeries {
    pub fn zero() -> Self {
        NOSeries::default()
    }

    pub fn one() -> Self {
        NOSeries::word(Exp::zero(), 0, HPoly::one())
    }

    pub fn word(a: Exp, b: u32, p: HPoly) -> Self {
        let mut out = NOSeries::zero();
        out.add_word(a, b, p);
        out
    }

    pub fn generator(g: &Generator) -> Self {
        match g {
            Generator::X => NOSeries::word(Exp::one(), 0, HPoly::one()),
            Generator::Y => NOSeries::word(Exp::zero(), 1, HPoly::one()),
            Generator::H => NOSeries::word(Exp::zero(), 0, HPoly::h()),
            Generator::XPow(a) => NOSeries::word(*a, 0, HPoly::one()),
        }
    }

    /// A polynomial in `h` alone.
    pub fn from_h(p: HPoly) -> Self {
        NOSeries::word(Exp::zero(), 0, p)
    }

    pub fn add_word(&mut self, a: Exp, b: u32, p: HPoly) {
        if p.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b)).or_default();
        *slot = &*slot + &p;
        if slot.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = NormalWord> + '_ {
        self.terms
            .iter()
            .map(|(&(a, b), p)| NormalWord { a, b, p: p.clone() })
    }

    pub fn coefficient(&self, a: Exp, b: u32) -> HPoly {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    /// The common fractional part of the `x` powers, if any.
    pub fn prefactor(&self) -> Option<Exp> {
        self.terms
            .keys()
            .map(|(a, _)| *a)
            .find(is_fractional)
            .map(|a| a - a.floor())
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = NOSeries::zero();
        for (&(a, b), p) in &self.terms {
            out.add_word(a, b, p.scale(c));
        }
        out
    }

    pub fn add(&self, other: &NOSeries) -> Self {
        let mut out = self.clone();
        for (&(a, b), p) in &other.terms {
            out.add_word(a, b, p.clone());
        }
        out
    }

    pub fn sub(&self, other: &NOSeries) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    /// Left multiplication by `y`, using `[y, x^a] = −a x^{a−1}(h + a − 1)`.
    fn y_times(&self) -> Self {
        let mut out = NOSeries::zero();
        for (&(a, b), p) in &self.terms {
            out.add_word(a, b + 1, p.clone());
            if !a.is_zero() {
                // (h + a − 1) y^b = y^b (h − 2b + a − 1)
                let c = exp_to_q(&a) - q(2 * b as i64 + 1);
                let f = &HPoly::linear(c) * p;
                out.add_word(a - Exp::one(), b, f.scale(&-exp_to_q(&a)));
            }
        }
        out
    }

    /// `y^b x^c` in normal order.
    fn y_pow_x_pow(b: u32, c: Exp) -> Self {
        let mut acc = NOSeries::word(c, 0, HPoly::one());
        for _ in 0..b {
            acc = acc.y_times();
        }
        acc
    }

    /// Product in the enveloping algebra. Fails if two genuinely fractional
    /// powers of `x` would have to be combined.
    pub fn mul(&self, other: &NOSeries) -> Result<Self> {
        let mut out = NOSeries::zero();
        for (&(a, b), p) in &self.terms {
            for (&(c, e), qp) in &other.terms {
                // x^a y^b p(h) x^c y^e q(h) = x^a (y^b x^c) y^e p(h + 2c − 2e) q(h)
                let shift = exp_to_q(&c) * q(2) - q(2 * e as i64);
                let right = &p.shift(&shift) * qp;
                for (&(big_a, big_b), r) in &NOSeries::y_pow_x_pow(b, c).terms {
                    if is_fractional(&a) && is_fractional(&big_a) {
                        return Err(Error::Unsupported(
                            "product of two fractional powers of x".into(),
                        ));
                    }
                    let coeff = &r.shift(&q(-2 * e as i64)) * &right;
                    out.add_word(a + big_a, big_b + e, coeff);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, m: u32) -> Result<Self> {
        (0..m).try_fold(NOSeries::one(), |acc, _| acc.mul(self))
    }

    /// Keep only words with `x` power at most `order` above the prefactor.
    pub fn truncate(&self, order: usize) -> Self {
        let base = self.prefactor().unwrap_or_else(Exp::zero);
        let mut out = NOSeries::zero();
        for (&(a, b), p) in &self.terms {
            if a - base <= Exp::from_integer(order as i64) {
                out.add_word(a, b, p.clone());
            }
        }
        out
    }
}

/// Brings a word in the generators to normal order by multiplying out
/// left to right.
pub fn normal_order(word: &[Generator]) -> Result<NOSeries> {
    check_word(word)?;
    word.iter()
        .try_fold(NOSeries::one(), |acc, g| acc.mul(&NOSeries::generator(g)))
}

fn check_word(word: &[Generator]) -> Result<()> {
    let fractional = word
        .iter()
        .filter(|g| matches!(g, Generator::XPow(a) if is_fractional(a)))
        .count();
    if fractional > 1 {
        return Err(Error::Unsupported(
            "at most one fractional power of x per word".into(),
        ));
    }
    Ok(())
}

/// Normal ordering by repeated rewriting of adjacent out-of-order pairs.
///
/// Slow, and independent of [`NOSeries::mul`]; kept as a cross-check.
pub fn normal_order_by_rewriting(word: &[Generator]) -> Result<NOSeries> {
    check_word(word)?;
    let rank = |g: &Generator| match g {
        Generator::X | Generator::XPow(_) => 0,
        Generator::Y => 1,
        Generator::H => 2,
    };
    let mut pending: Vec<(Q, Vec<Generator>)> = vec![(Q::one(), word.to_vec())];
    let mut out = NOSeries::zero();
    while let Some((c, w)) = pending.pop() {
        let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| rank(&w[i]) > rank(&w[i + 1]))
        else {
            out = out.add(&ordered_word_series(&w).scale(&c));
            continue;
        };
        let (left, right) = (w[i].clone(), w[i + 1].clone());
        let splice = |mid: &[Generator]| {
            let mut v = w[..i].to_vec();
            v.extend_from_slice(mid);
            v.extend_from_slice(&w[i + 2..]);
            v
        };
        let power = match &right {
            Generator::X => Exp::one(),
            Generator::XPow(a) => *a,
            _ => Exp::zero(),
        };
        match (&left, &right) {
            (Generator::Y, Generator::X | Generator::XPow(_)) => {
                // y x^a = x^a y − a x^{a−1} h − a(a−1) x^{a−1}
                pending.push((c.clone(), splice(&[right.clone(), Generator::Y])));
                let a = exp_to_q(&power);
                let lower = Generator::XPow(power - Exp::one());
                pending.push((-&c * &a, splice(&[lower.clone(), Generator::H])));
                pending.push((-&c * &a * (&a - Q::one()), splice(&[lower])));
            }
            (Generator::H, Generator::X | Generator::XPow(_)) => {
                // h x^a = x^a h + 2a x^a
                pending.push((c.clone(), splice(&[right.clone(), Generator::H])));
                pending.push((&c * q(2) * exp_to_q(&power), splice(&[right])));
            }
            (Generator::H, Generator::Y) => {
                pending.push((c.clone(), splice(&[Generator::Y, Generator::H])));
                pending.push((-&c * q(2), splice(&[Generator::Y])));
            }
            _ => unreachable!("pair already ordered"),
        }
    }
    Ok(out)
}

fn ordered_word_series(w: &[Generator]) -> NOSeries {
    let mut a = Exp::zero();
    let mut b = 0;
    let mut p = HPoly::one();
    for g in w {
        match g {
            Generator::X => a += Exp::one(),
            Generator::XPow(e) => a += *e,
            Generator::Y => b += 1,
            Generator::H => p = &p * &HPoly::h(),
        }
    }
    NOSeries::word(a, b, p)
}

fn power_text(sym: &str, e: &Exp) -> String {
    if e.is_one() {
        sym.to_string()
    } else if e.is_integer() && !e.is_negative() {
        format!("{sym}^{}", e.numer())
    } else {
        format!("{sym}^({})", format_exp(e))
    }
}

impl fmt::Display for NOSeries {
    /// Terms by descending `x` then `y` power, with factored coefficients,
    /// e.g. `x^2 y^2 + 2 x y (h - 3) + 2 (h - 2)(h - 3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), p) in self.terms.iter().rev() {
            let (lead, body) = p.factored_parts();
            let mut parts = Vec::new();
            if !a.is_zero() {
                parts.push(power_text("x", &a));
            }
            if b > 0 {
                parts.push(power_text("y", &Exp::from_integer(b as i64)));
            }
            if !body.is_empty() {
                parts.push(body);
            }
            let mag = lead.abs();
            if !mag.is_one() || parts.is_empty() {
                parts.insert(0, format_q(&mag));
            }
            let sep = if lead.is_negative() {
                if first {
                    "-"
                } else {
                    " - "
                }
            } else if first {
                ""
            } else {
                " + "
            };
            write!(f, "{sep}{}", parts.join(" "))?;
            first = false;
        }
        Ok(())
    }
}
