//! Solvers working directly on the west-slot form `A`, bypassing tractors.
//!
//! Two routes to the same series: a closed product in `ι̃ε̃`, and a step
//! recursion through the split operators `L`, `R` acting on
//! `A = A⊥ + dr ∧ A∥`.

use num_traits::{One, Zero};

use crate::error::{excluded, Result};
use crate::model::{eps_tilde, iota_tilde, WeightedForm};
use crate::num::{as_integer, format_q, q, Exp, Q};

fn iota_eps(a: &WeightedForm) -> WeightedForm {
    iota_tilde(&eps_tilde(a))
}

/// `(u − j)(n + u − 2k − j)` for a `k`-form of weight `u`: the eigenvalue of
/// `ι̃ε̃` on the `σ^j` part of a solution.
fn mass(a: &WeightedForm, j: i64) -> Q {
    let u = a.weight();
    let n = q(a.space().n() as i64);
    let k = q(a.degree() as i64);
    (u - q(j)) * (n + u - q(2) * k - q(j))
}

/// `h0 = d + 2w0` for the tractor weight `w0 = u − k`.
fn h0(a: &WeightedForm) -> Q {
    q(a.space().dim() as i64) + q(2) * (a.weight() - q(a.degree() as i64))
}

fn gate(a: &WeightedForm, order: usize) -> Result<()> {
    let k = q(a.degree() as i64);
    let w0 = a.weight() - &k;
    let d = q(a.space().dim() as i64);
    let n = q(a.space().n() as i64);
    for (bad, what) in [(-k.clone(), "-k"), (&k - &d, "k - d"), (&k - n, "k - n")] {
        if w0 == bad {
            return Err(excluded(
                "form solver",
                format!("w0 = {what} = {}", format_q(&w0)),
            ));
        }
    }
    if let Some(h) = as_integer(&h0(a)) {
        if h >= 2 && order as i64 > h - 2 {
            return Err(excluded(
                "form solver",
                format!("order {order} passes the log threshold h0 - 2 = {}", h - 2),
            ));
        }
    }
    Ok(())
}

fn start(a0: &WeightedForm) -> WeightedForm {
    iota_eps(a0).scale(&mass(a0, 0).recip())
}

/// `ι̃ε̃/m0 · ∏_{j ≤ ℓ} (ι̃ε̃ − m_j)/(j(h0 − 1 − j))` applied to a bulk
/// extension `a0` of weight `w0 + k`.
pub fn product_solution(a0: &WeightedForm, order: usize) -> Result<WeightedForm> {
    gate(a0, order)?;
    let h0 = h0(a0);
    let mut f = start(a0);
    for j in 1..=order as i64 {
        let denom = q(j) * (&h0 - Q::one() - q(j));
        f = iota_eps(&f)
            .sub(&f.scale(&mass(a0, j)))
            .scale(&denom.recip());
    }
    Ok(f)
}

/// `(A⊥, A∥)` with `A = A⊥ + dr ∧ A∥`.
pub fn split(a: &WeightedForm) -> (WeightedForm, WeightedForm) {
    let par = a.iota(0);
    (a.sub(&par.eps(0)), par)
}

fn join(perp: &WeightedForm, par: &WeightedForm, degree: i32, weight: Q) -> WeightedForm {
    perp.clone()
        .relabel(degree, weight.clone())
        .add(&par.eps(0).relabel(degree, weight.clone()))
        .relabel(degree, weight)
}

fn r(a: &WeightedForm) -> WeightedForm {
    a.mul_r_pow(Exp::one())
}

/// `r ∂_r`.
fn euler(a: &WeightedForm) -> WeightedForm {
    r(&a.partial(0))
}

fn d_perp(a: &WeightedForm) -> WeightedForm {
    a.d().sub(&a.partial(0).eps(0))
}

fn delta_perp(a: &WeightedForm) -> WeightedForm {
    a.codiff()
        .relabel(a.degree() - 1, a.weight().clone())
        .sub(&a.partial(0).iota(0))
}

/// `R = [[r d⊥, 0], [e − u, −r d⊥]]` on a `k`-form of weight `u`; equals `−ε̃`.
pub fn gl_right(a: &WeightedForm) -> WeightedForm {
    let u = a.weight().clone();
    let (perp, par) = split(a);
    let new_perp = r(&d_perp(&perp));
    let new_par = euler(&perp).sub(&perp.scale(&u)).sub(&r(&d_perp(&par)));
    join(&new_perp, &new_par, a.degree() + 1, u + Q::one())
}

/// `L = [[r δ⊥, e − c], [0, −r δ⊥]]` on a `(k+1)`-form of weight `u + 1`,
/// with `c = n + u − 2k`; equals `−ι̃`.
pub fn gl_left(b: &WeightedForm) -> WeightedForm {
    let u = b.weight() - Q::one();
    let k = b.degree() - 1;
    let c = q(b.space().n() as i64) + &u - q(2 * k as i64);
    let (perp, par) = split(b);
    let new_perp = r(&delta_perp(&perp)).add(&euler(&par)).sub(&par.scale(&c));
    let new_par = r(&delta_perp(&par)).neg();
    join(&new_perp, &new_par, k, u)
}

/// `A^{(ℓ+1)} = (LR − m_{ℓ+1}) A^{(ℓ)} / ((ℓ+1)(d + 2w0 − 2 − ℓ))`.
pub fn gl_step(a: &WeightedForm, l: usize) -> Result<WeightedForm> {
    let j = l as i64 + 1;
    let denom = q(j) * (h0(a) - q(2) - q(l as i64));
    if denom.is_zero() {
        return Err(excluded(
            "gl_step",
            format!("step {l} hits the log threshold"),
        ));
    }
    let lr = gl_left(&gl_right(a));
    Ok(lr.sub(&a.scale(&mass(a, j))).scale(&denom.recip()))
}

/// The product solution rebuilt one order at a time with [`gl_step`].
pub fn gl_solution(a0: &WeightedForm, order: usize) -> Result<WeightedForm> {
    gate(a0, order)?;
    let mut f = start(a0);
    for l in 0..order {
        f = gl_step(&f, l)?;
    }
    Ok(f)
}
