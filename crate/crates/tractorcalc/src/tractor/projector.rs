//! Projectors onto west-type subspaces.

use num_traits::Zero;

use super::algebraic::{eps_i, x};
use super::insert::q_north_tau;
use super::thomas::{double_d, double_d_star, triple_d, triple_d_star};
use super::TractorForm;
use crate::error::{excluded, Result};
use crate::model::WeightedForm;
use crate::num::{format_q, q, Q};

fn check(op: &'static str, factors: [(Q, &str); 2], w: &Q) -> Result<Q> {
    for (value, what) in &factors {
        if value.is_zero() {
            return Err(excluded(op, format!("{what} = 0 at w = {}", format_q(w))));
        }
    }
    Ok(&factors[0].0 * &factors[1].0)
}

/// `Π_W = Δ*₍₂₎Δ₍₂₎ / ((w + k)(d + w − k))`; excluded at `w ∈ {−k, k − d}`.
pub fn pi_west(t: &TractorForm) -> Result<TractorForm> {
    let w = t.weight();
    let k = q(t.degree() as i64);
    let c = check(
        "Pi_W",
        [(w + &k, "w + k"), (q(t.dim()) + w - &k, "d + w - k")],
        w,
    )?;
    Ok(double_d_star(&double_d(t)).scale_by(&c.recip()))
}

/// `Π = Δ*₍₃₎Δ₍₃₎ / ((w + k)(n + w − k))`; excluded at `w ∈ {−k, k − n}`.
pub fn pi(t: &TractorForm) -> Result<TractorForm> {
    let w = t.weight();
    let k = q(t.degree() as i64);
    let n = q(t.space().n() as i64);
    let c = check("Pi", [(w + &k, "w + k"), (n + w - &k, "n + w - k")], w)?;
    Ok(triple_d_star(&triple_d(t)).scale_by(&c.recip()))
}

/// `Π̂_τ A = −(1/(n − 2k)) Δ*₍₃₎ εI X q_(N) A` for a `k`-form `A`; the
/// result is a tractor `k`-form of weight `weight(A) − k`.
pub fn pi_hat_tau(a: &WeightedForm) -> Result<TractorForm> {
    let n = a.space().n() as i64;
    let k = a.degree() as i64;
    if n == 2 * k {
        return Err(excluded("Pi-hat", format!("k = n/2 = {k}")));
    }
    let lifted = triple_d_star(&eps_i(&x(&q_north_tau(a))));
    Ok(lifted.scale_by(&-q(n - 2 * k).recip()))
}
