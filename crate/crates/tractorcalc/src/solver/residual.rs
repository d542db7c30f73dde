//! Residual orders of a truncated solution.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::model::{eps_tilde, iota_tilde, WeightedForm};
use crate::num::{format_exp, parse_q, q, q_to_exp, Exp};
use crate::tractor::algebraic::{iota_i, x_star};
use crate::tractor::robin::laplace_robin;
use crate::tractor::thomas::d_hat_star;
use crate::tractor::TractorForm;

/// Vanishing order in `σ` of a residual.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(Exp),
    /// The residual is exactly zero.
    Infinite,
    /// The residual could not be evaluated.
    Undefined,
}

impl Order {
    fn of_tractor(t: &TractorForm) -> Order {
        t.order().map_or(Order::Infinite, Order::Finite)
    }

    fn of_form(f: &WeightedForm) -> Order {
        f.order().map_or(Order::Infinite, Order::Finite)
    }

    /// True when the order is at least `bound` (an exact zero always is).
    pub fn at_least(&self, bound: Exp) -> bool {
        match self {
            Order::Finite(o) => *o >= bound,
            Order::Infinite => true,
            Order::Undefined => false,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(o) => f.write_str(&format_exp(o)),
            Order::Infinite => f.write_str("inf"),
            Order::Undefined => f.write_str("undefined"),
        }
    }
}

impl FromStr for Order {
    type Err = Error;

    fn from_str(s: &str) -> Result<Order> {
        match s {
            "inf" => Ok(Order::Infinite),
            "undefined" => Ok(Order::Undefined),
            _ => Ok(Order::Finite(q_to_exp(&parse_q(s)?)?)),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Order {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Order, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Orders of the residuals that a solution of the boundary problem should
/// push to high order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualReport {
    /// `y𝒜`, the tractor Laplace–Robin equation.
    pub y: Order,
    pub iota_i: Order,
    pub d_hat_star: Order,
    pub x_star: Order,
    /// `ι̃A` for the west slot `A`.
    pub iota_tilde_west: Order,
    /// `(ι̃ε̃ − m²)A` for the west slot, `m² = (w0 + k)(n + w0 − k)`.
    pub proca_west: Order,
}

impl ResidualReport {
    pub fn orders(&self) -> [(&'static str, Order); 6] {
        [
            ("y", self.y),
            ("iota_I", self.iota_i),
            ("D-hat*", self.d_hat_star),
            ("X*", self.x_star),
            ("iota~ west", self.iota_tilde_west),
            ("Proca west", self.proca_west),
        ]
    }

    pub fn all_infinite(&self) -> bool {
        self.orders().iter().all(|(_, o)| *o == Order::Infinite)
    }
}

pub fn residual_orders(section: &TractorForm) -> ResidualReport {
    let west = section.west();
    let k = q(section.degree() as i64);
    let n = q(section.space().n() as i64);
    let w0 = section.weight();
    let m_sq = (w0 + &k) * (n + w0 - &k);
    let proca = if west.is_zero() {
        Order::Infinite
    } else {
        Order::of_form(&iota_tilde(&eps_tilde(west)).sub(&west.scale(&m_sq)))
    };
    let d_hat = match d_hat_star(section) {
        Ok(t) => Order::of_tractor(&t),
        Err(_) => Order::Undefined,
    };
    ResidualReport {
        y: Order::of_tractor(&laplace_robin(section)),
        iota_i: Order::of_tractor(&iota_i(section)),
        d_hat_star: d_hat,
        x_star: Order::of_tractor(&x_star(section)),
        iota_tilde_west: Order::of_form(&iota_tilde(west)),
        proca_west: proca,
    }
}
