//! Exact functions on the collar `(r, x1..xn)`.
//!
//! A [`Poly`] is a finite sum of monomials `c r^a x^β L^m` with `c` rational,
//! `a` a rational exponent, and `L = log r`. Fractional and negative powers of
//! `r` and the log symbol are needed by second-kind and log solutions; every
//! other computation stays inside ordinary polynomials.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::num::{exp_to_q, format_exp, format_q, parse_q, q, Exp, Q};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    /// Power of `r`.
    pub r: Exp,
    /// Power of `log r`.
    pub log: u32,
    /// Powers of `x1, x2, ...`; trailing zeros are trimmed.
    pub x: Vec<u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            r: Exp::zero(),
            log: 0,
            x: Vec::new(),
        }
    }

    pub fn new(r: Exp, log: u32, x: Vec<u32>) -> Self {
        Monomial { r, log, x }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.x.last() == Some(&0) {
            self.x.pop();
        }
        self
    }

    pub fn x_power(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.x.get(i - 1).copied().unwrap_or(0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let len = self.x.len().max(other.x.len());
        let x = (0..len)
            .map(|i| self.x.get(i).unwrap_or(&0) + other.x.get(i).unwrap_or(&0))
            .collect();
        Monomial {
            r: self.r + other.r,
            log: self.log + other.log,
            x,
        }
        .trimmed()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Q) -> Self {
        Poly::term(Monomial::one(), c)
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let mut p = Poly::zero();
        p.add_term(m.trimmed(), c);
        p
    }

    /// `r^a`.
    pub fn r_pow(a: Exp) -> Self {
        Poly::term(
            Monomial {
                r: a,
                ..Monomial::one()
            },
            Q::one(),
        )
    }

    /// The coordinate `r`.
    pub fn r() -> Self {
        Poly::r_pow(Exp::one())
    }

    /// The coordinate `x_i`, `i >= 1`.
    pub fn x(i: usize) -> Self {
        assert!(i >= 1, "boundary coordinates are numbered from 1");
        let mut x = vec![0; i];
        x[i - 1] = 1;
        Poly::term(
            Monomial {
                x,
                ..Monomial::one()
            },
            Q::one(),
        )
    }

    /// Coordinate function by index: 0 is `r`, `i >= 1` is `x_i`.
    pub fn coord(a: usize) -> Self {
        if a == 0 {
            Poly::r()
        } else {
            Poly::x(a)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m.trimmed()) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Multiply by `r^a`.
    pub fn mul_r_pow(&self, a: Exp) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| {
                    let mut m = m.clone();
                    m.r += a;
                    (m, v.clone())
                })
                .collect(),
        }
    }

    /// Multiply by `log r`.
    pub fn mul_log(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| {
                    let mut m = m.clone();
                    m.log += 1;
                    (m, v.clone())
                })
                .collect(),
        }
    }

    /// Partial derivative along coordinate `a` (0 is `r`).
    pub fn diff(&self, a: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if a == 0 {
                // d/dr (r^e L^k) = e r^(e-1) L^k + k r^(e-1) L^(k-1)
                let mut base = m.clone();
                base.r -= Exp::one();
                if !m.r.is_zero() {
                    out.add_term(base.clone(), c * exp_to_q(&m.r));
                }
                if m.log > 0 {
                    let mut lower = base;
                    lower.log -= 1;
                    out.add_term(lower, c * q(m.log as i64));
                }
            } else {
                let p = m.x_power(a);
                if p == 0 {
                    continue;
                }
                let mut m2 = m.clone();
                m2.x[a - 1] -= 1;
                out.add_term(m2.trimmed(), c * q(p as i64));
            }
        }
        out
    }

    /// Lowest power of `r` present; `None` for the zero function.
    pub fn order(&self) -> Option<Exp> {
        self.terms.keys().map(|m| m.r).min()
    }

    /// Highest power of `log r` present.
    pub fn log_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.log).max().unwrap_or(0)
    }

    /// Highest power of `r` present.
    pub fn top_order(&self) -> Option<Exp> {
        self.terms.keys().map(|m| m.r).max()
    }

    /// Keep only the terms with `r`-power strictly below `bound`.
    pub fn truncate_below(&self, bound: Exp) -> Poly {
        self.filter(|m| m.r < bound)
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficient of `r^a L^log`, as a function of the `x` coordinates.
    pub fn coeff(&self, a: Exp, log: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.r == a && m.log == log)
                .map(|(m, c)| {
                    let mut m = m.clone();
                    m.r = Exp::zero();
                    m.log = 0;
                    (m, c.clone())
                })
                .collect(),
        }
    }

    /// Split into the coefficients of `L^0, L^1, ...`.
    pub fn log_parts(&self) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.log_degree() as usize + 1];
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            m2.log = 0;
            out[m.log as usize].add_term(m2, c.clone());
        }
        out
    }

    /// Set `r = 0`. Positive powers vanish; a surviving negative power or a
    /// `log r` at order zero makes the restriction undefined.
    pub fn restrict(&self) -> Result<Poly> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if m.r.is_negative() || (m.r.is_zero() && m.log > 0) {
                return Err(Error::Restriction(format!(
                    "term r^{} log^{} is singular at r = 0",
                    format_exp(&m.r),
                    m.log
                )));
            }
            if m.r.is_zero() {
                out.add_term(m.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// True when the function involves only nonnegative integer powers of `r`
    /// and no logs.
    pub fn is_polynomial(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m.r.is_integer() && !m.r.is_negative() && m.log == 0)
    }

    /// True when no `r` or `log r` appears.
    pub fn is_boundary(&self) -> bool {
        self.terms.keys().all(|m| m.r.is_zero() && m.log == 0)
    }

    /// Largest `x` index used.
    pub fn max_x(&self) -> usize {
        self.terms.keys().map(|m| m.x.len()).max().unwrap_or(0)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Q::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    /// Terms are written highest-first in the monomial order, e.g.
    /// `3/2*r^2*x1*x2^3 - L*r + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            if !m.r.is_zero() {
                if m.r == Exp::one() {
                    factors.push("r".to_string());
                } else if m.r.is_integer() && m.r.is_positive() {
                    factors.push(format!("r^{}", m.r));
                } else {
                    factors.push(format!("r^({})", format_exp(&m.r)));
                }
            }
            for (i, &p) in m.x.iter().enumerate() {
                match p {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{}", i + 1, p)),
                }
            }
            match m.log {
                0 => {}
                1 => factors.push("L".to_string()),
                k => factors.push(format!("L^{k}")),
            }
            let neg = c.is_negative();
            let mag = c.abs();
            let sign = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            write!(f, "{sign}")?;
            if factors.is_empty() {
                write!(f, "{}", format_q(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", format_q(&mag), factors.join("*"))?;
            }
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Poly {
    type Err = Error;

    /// Inverse of `Display`. Coefficients may be written `p/q`; powers of `r`
    /// may be parenthesised rationals such as `r^(-1/2)`.
    fn from_str(s: &str) -> Result<Poly> {
        let mut out = Poly::zero();
        for (negative, body) in split_terms(s)? {
            let mut coeff = Q::one();
            let mut mono = Monomial::one();
            for factor in body.split('*') {
                let factor = factor.trim();
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in {s:?}")));
                }
                let (base, power) = match factor.split_once('^') {
                    Some((b, p)) => (b.trim(), Some(p.trim())),
                    None => (factor, None),
                };
                let first = base.chars().next().unwrap_or(' ');
                if first.is_ascii_digit() {
                    if power.is_some() {
                        return Err(Error::Parse(format!("power of a number in {s:?}")));
                    }
                    coeff *= parse_q(base)?;
                } else if base == "r" {
                    let e = match power {
                        Some(p) => parse_q(p.trim_start_matches('(').trim_end_matches(')'))?,
                        None => Q::one(),
                    };
                    mono.r += crate::num::q_to_exp(&e)?;
                } else if base == "L" {
                    mono.log += parse_small(power)?;
                } else if let Some(idx) = base.strip_prefix('x') {
                    let i: usize = idx
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad variable {base:?}")))?;
                    if i == 0 {
                        return Err(Error::Parse("coordinates start at x1".into()));
                    }
                    if mono.x.len() < i {
                        mono.x.resize(i, 0);
                    }
                    mono.x[i - 1] += parse_small(power)?;
                } else {
                    return Err(Error::Parse(format!("unknown symbol {base:?}")));
                }
            }
            if negative {
                coeff = -coeff;
            }
            out.add_term(mono.trimmed(), coeff);
        }
        Ok(out)
    }
}

fn parse_small(power: Option<&str>) -> Result<u32> {
    match power {
        None => Ok(1),
        Some(p) => p
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent {p:?}"))),
    }
}

/// Split a sum into signed terms, ignoring signs inside parentheses.
fn split_terms(s: &str) -> Result<Vec<(bool, String)>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    if s == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    let mut negative = false;
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                current.push(ch);
            }
            ')' => {
                depth -= 1;
                current.push(ch);
            }
            '+' | '-' if depth == 0 => {
                let prev_caret = current.trim_end().ends_with('^');
                if prev_caret {
                    current.push(ch);
                    continue;
                }
                if !current.trim().is_empty() {
                    out.push((negative, current.trim().to_string()));
                }
                current.clear();
                negative = ch == '-';
            }
            c if c.is_whitespace() => {}
            c => current.push(c),
        }
    }
    if current.trim().is_empty() {
        return Err(Error::Parse(format!("dangling sign in {s:?}")));
    }
    out.push((negative, current.trim().to_string()));
    Ok(out)
}
