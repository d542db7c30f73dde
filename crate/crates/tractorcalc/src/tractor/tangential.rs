//! Tangential operators `Δᵀ`, `D̄` and their interior analogues.

use num_traits::{One, Zero};

use super::algebraic::{eps_i, iota_i, x, x_star};
use super::robin::laplace_robin;
use super::thomas::{d_tilde, d_tilde_star, thomas_d, thomas_d_star};
use super::TractorForm;
use crate::error::{excluded, Result};
use crate::num::{format_q, q, Q};

/// Which side of the exterior/interior pair to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Exterior,
    Interior,
}

/// `h` of the output, `d + 2w − 2`.
fn h_out(t: &TractorForm) -> Q {
    t.h() - q(2)
}

fn parts(t: &TractorForm, side: Side) -> (TractorForm, TractorForm) {
    let y = laplace_robin(t);
    match side {
        Side::Exterior => (thomas_d(t), eps_i(&y)),
        Side::Interior => (thomas_d_star(t), iota_i(&y)),
    }
}

fn x_side(t: &TractorForm, side: Side) -> TractorForm {
    match side {
        Side::Exterior => x(t),
        Side::Interior => x_star(t),
    }
}

/// `(ιI X D̃ − X D̃ ιI) y` and its interior mirror, used at `h = 2`.
fn paneitz_tail(t: &TractorForm, side: Side) -> TractorForm {
    let y = laplace_robin(t);
    match side {
        Side::Exterior => iota_i(&x(&d_tilde(&y))).sub(&x(&d_tilde(&iota_i(&y)))),
        Side::Interior => eps_i(&x_star(&d_tilde_star(&y))).sub(&x_star(&d_tilde_star(&eps_i(&y)))),
    }
}

fn tangential(t: &TractorForm, side: Side, op: &'static str) -> Result<TractorForm> {
    let h = h_out(t);
    let (main, robin) = parts(t, side);
    let base = main.add(&robin);
    if h == q(2) {
        return Ok(base.add(&paneitz_tail(t, side)));
    }
    if h == Q::one() {
        return Err(excluded(
            op,
            format!("w = {} (h = 1)", format_q(t.weight())),
        ));
    }
    let c = ((&h - Q::one()) * (&h - q(2))).recip();
    let yy = laplace_robin(&laplace_robin(t));
    Ok(base.add(&x_side(&yy, side).scale_by(&c)))
}

/// `Δᵀ = Δ + εI y + X y² / ((h − 1)(h − 2))`, `h = d + 2w − 2`, with the
/// critical branch at `w = 2 − d/2`; excluded at `w = 3/2 − d/2`.
pub fn d_tangential(t: &TractorForm) -> Result<TractorForm> {
    tangential(t, Side::Exterior, "D-tangential")
}

/// `Δ*ᵀ = Δ* + ιI y + X* y² / ((h − 1)(h − 2))`.
pub fn d_star_tangential(t: &TractorForm) -> Result<TractorForm> {
    tangential(t, Side::Interior, "D*-tangential")
}

fn bar(t: &TractorForm, side: Side, op: &'static str) -> Result<TractorForm> {
    let h = h_out(t);
    if h.is_zero() {
        return Err(excluded(
            op,
            format!("w = {} (h = 0)", format_q(t.weight())),
        ));
    }
    if h == Q::one() {
        let yy = laplace_robin(&laplace_robin(t));
        return Ok(x_side(&yy, side).neg());
    }
    let scaled = tangential(t, side, op)?;
    Ok(scaled.scale_by(&((&h - Q::one()) / &h)))
}

/// `D̄ = ((h − 1)/h) Δᵀ`, with `D̄ = −Xy²` at `w = 1 − n/2`; excluded at
/// `w = 1 − d/2`.
pub fn d_bar(t: &TractorForm) -> Result<TractorForm> {
    bar(t, Side::Exterior, "D-bar")
}

/// `D̄* = ((h − 1)/h) Δ*ᵀ`, with `D̄* = −X*y²` at `w = 1 − n/2`.
pub fn d_bar_star(t: &TractorForm) -> Result<TractorForm> {
    bar(t, Side::Interior, "D-bar-star")
}
