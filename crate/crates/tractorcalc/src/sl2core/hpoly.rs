use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::num::{format_q, q, Q};

/// A polynomial in the Cartan symbol `h` with rational coefficients.
///
/// `coeffs[i]` multiplies `h^i`; trailing zeros are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HPoly {
    coeffs: Vec<Q>,
}

impl HPoly {
    pub fn zero() -> Self {
        HPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Q) -> Self {
        HPoly::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        HPoly::constant(Q::one())
    }

    /// The symbol `h` itself.
    pub fn h() -> Self {
        HPoly::from_coeffs(vec![Q::zero(), Q::one()])
    }

    /// `h + c`.
    pub fn linear(c: Q) -> Self {
        HPoly::from_coeffs(vec![c, Q::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        HPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &Q) -> Self {
        HPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, h: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * h + c)
    }

    /// `p(h + c)`.
    pub fn shift(&self, c: &Q) -> Self {
        // Horner in the polynomial ring
        let lin = HPoly::linear(c.clone());
        self.coeffs.iter().rev().fold(HPoly::zero(), |acc, a| {
            &(&acc * &lin) + &HPoly::constant(a.clone())
        })
    }

    /// Falling product `(h + c)(h + c − 1)⋯(h + c − len + 1)`; one for `len = 0`.
    pub fn falling(c: &Q, len: usize) -> Self {
        (0..len).fold(HPoly::one(), |acc, i| {
            &acc * &HPoly::linear(c - q(i as i64))
        })
    }

    /// Splits off linear factors with rational roots. Returns the leading
    /// constant, the roots (with multiplicity, ascending) and the remaining
    /// monic part without rational roots.
    fn factor(&self) -> (Q, Vec<Q>, HPoly) {
        let Some(deg) = self.degree() else {
            return (Q::zero(), Vec::new(), HPoly::one());
        };
        let lead = self.coeffs[deg].clone();
        let mut rest = self.scale(&(Q::one() / &lead));
        let mut roots = Vec::new();
        loop {
            let found = rational_root_candidates(&rest)
                .into_iter()
                .find(|c| rest.eval(c).is_zero());
            match found {
                Some(root) => {
                    rest = rest.divide_linear(&root);
                    roots.push(root);
                }
                None => break,
            }
        }
        roots.sort();
        (lead, roots, rest)
    }

    /// Quotient by `h − root`, assuming exact divisibility.
    fn divide_linear(&self, root: &Q) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![Q::zero(); n.saturating_sub(1)];
        let mut carry = Q::zero();
        for i in (1..n).rev() {
            carry = &self.coeffs[i] + &carry * root;
            out[i - 1] = carry.clone();
        }
        HPoly::from_coeffs(out)
    }
}

/// Candidates `p/q` from the rational root theorem, kept small: if the
/// integer coefficients are too large to enumerate divisors, no candidates.
fn rational_root_candidates(p: &HPoly) -> Vec<Q> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    if p.coeffs[0].is_zero() {
        out.push(Q::zero());
        return out;
    }
    let lcm = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs
        .iter()
        .map(|c| (c * Q::from_integer(lcm.clone())).to_integer())
        .collect();
    let (Some(c0), Some(cn)) = (
        ints[0].abs().to_u64(),
        ints.last().and_then(|c| c.abs().to_u64()),
    ) else {
        return out;
    };
    if c0 > 1_000_000_000_000 || cn > 1_000_000_000_000 {
        return out;
    }
    for num in divisors(c0) {
        for den in divisors(cn) {
            let c = Q::new(BigInt::from(num), BigInt::from(den));
            out.push(c.clone());
            out.push(-c);
        }
    }
    out.sort();
    out.dedup();
    out
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            out.push(i);
            if i != n / i {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out
}

impl Add for &HPoly {
    type Output = HPoly;
    fn add(self, other: &HPoly) -> HPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Q::zero();
        HPoly::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &HPoly {
    type Output = HPoly;
    fn sub(self, other: &HPoly) -> HPoly {
        self + &(-other)
    }
}

impl Neg for &HPoly {
    type Output = HPoly;
    fn neg(self) -> HPoly {
        self.scale(&-Q::one())
    }
}

impl Mul for &HPoly {
    type Output = HPoly;
    fn mul(self, other: &HPoly) -> HPoly {
        if self.is_zero() || other.is_zero() {
            return HPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        HPoly::from_coeffs(out)
    }
}

fn format_expanded(p: &HPoly) -> String {
    let mut s = String::new();
    for (i, c) in p.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if s.is_empty() {
            if c.is_negative() {
                s.push('-');
            }
        } else {
            s.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let body = match i {
            0 => format_q(&mag),
            1 => "h".to_string(),
            _ => format!("h^{i}"),
        };
        if i > 0 && !mag.is_one() {
            s.push_str(&format_q(&mag));
        }
        s.push_str(&body);
    }
    s
}

impl HPoly {
    /// Factored text such as `2(h - 2)(h - 3)`; the leading constant is
    /// returned separately so callers can merge it with a sign.
    pub(crate) fn factored_parts(&self) -> (Q, String) {
        let (lead, roots, rest) = self.factor();
        let mut body = String::new();
        let mut i = 0;
        while i < roots.len() {
            let root = &roots[i];
            let mut mult = 1;
            while i + mult < roots.len() && roots[i + mult] == *root {
                mult += 1;
            }
            let factor = if root.is_zero() {
                "h".to_string()
            } else if root.is_positive() {
                format!("(h - {})", format_q(root))
            } else {
                format!("(h + {})", format_q(&-root))
            };
            body.push_str(&factor);
            if mult > 1 {
                body.push_str(&format!("^{mult}"));
            }
            i += mult;
        }
        if rest.degree().unwrap_or(0) > 0 {
            body.push_str(&format!("({})", format_expanded(&rest)));
        }
        (lead, body)
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{}", format_expanded(self))
    }
}
