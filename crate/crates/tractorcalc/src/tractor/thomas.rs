//! Thomas-D type operators and their hatted, tilded, double and triple
//! variants.

use num_traits::{One, Zero};

use super::{flat, TractorForm};
use crate::error::{precondition, Result};
use crate::model::{eps_tilde, iota_tilde, WeightedForm};
use crate::num::{format_q, q, qr, Q};

fn dim(t: &TractorForm) -> Q {
    q(t.dim())
}

fn k(t: &TractorForm) -> Q {
    q(t.degree() as i64)
}

/// `Δ`: `(k, w) → (k + 1, w − 1)`.
pub fn thomas_d(t: &TractorForm) -> TractorForm {
    flat(t);
    let [n, w, e, s] = t.slots();
    let h = t.h();
    let hm2 = &h - q(2);
    let wk = t.weight() + k(t);
    TractorForm::from_slots(
        t.space(),
        t.degree() + 1,
        t.weight() - Q::one(),
        [
            w.scale(&(&wk * &hm2)).sub(&n.d().scale(&hm2)),
            w.d().scale(&hm2),
            n.laplacian()
                .sub(&w.codiff().scale(&q(2)))
                .add(&e.d().scale(&h))
                .add(&s.scale(&((&wk - q(2)) * &h))),
            w.laplacian().add(&s.d().scale(&h)).neg(),
        ],
    )
}

/// `Δ*`: `(k, w) → (k − 1, w − 1)`.
pub fn thomas_d_star(t: &TractorForm) -> TractorForm {
    flat(t);
    let [n, w, e, s] = t.slots();
    let h = t.h();
    let hm2 = &h - q(2);
    let dwk = dim(t) + t.weight() - k(t);
    TractorForm::from_slots(
        t.space(),
        t.degree() - 1,
        t.weight() - Q::one(),
        [
            n.codiff().add(&e.scale(&(&dwk + q(2)))).scale(&-&hm2),
            w.codiff()
                .scale(&h)
                .sub(&n.laplacian())
                .sub(&e.d().scale(&q(2)))
                .add(&s.scale(&(&h * &dwk))),
            e.codiff().scale(&hm2),
            e.laplacian().add(&s.codiff().scale(&h)).neg(),
        ],
    )
}

fn weight_detail(t: &TractorForm) -> String {
    format!("w = {} with d = {}", format_q(t.weight()), t.dim())
}

/// `D̂ = Δ ∘ 1/h`. At `w = −d/2` the input must lie in `ker X`.
pub fn d_hat(t: &TractorForm) -> Result<TractorForm> {
    let h = t.h();
    if !h.is_zero() {
        return Ok(thomas_d(t).scale_by(&h.recip()));
    }
    if !(t.north().is_zero() && t.west().is_zero()) {
        return Err(precondition(
            "D-hat",
            format!("{}: input must lie in ker X", weight_detail(t)),
        ));
    }
    let (e, s) = (t.east(), t.south());
    let c = k(t) - qr(t.dim(), 2) - q(2);
    let z = WeightedForm::zero(t.space(), 0, Q::one());
    Ok(TractorForm::from_slots(
        t.space(),
        t.degree() + 1,
        t.weight() - Q::one(),
        [z.clone(), z, e.d().add(&s.scale(&c)), s.d().neg()],
    ))
}

/// `D̂* = Δ* ∘ 1/h`. At `w = −d/2` the input must lie in `ker X*`.
pub fn d_hat_star(t: &TractorForm) -> Result<TractorForm> {
    let h = t.h();
    if !h.is_zero() {
        return Ok(thomas_d_star(t).scale_by(&h.recip()));
    }
    if !(t.north().is_zero() && t.east().is_zero()) {
        return Err(precondition(
            "D-hat-star",
            format!("{}: input must lie in ker X*", weight_detail(t)),
        ));
    }
    let (w, s) = (t.west(), t.south());
    let c = k(t) - qr(t.dim(), 2);
    let z = WeightedForm::zero(t.space(), 0, Q::one());
    Ok(TractorForm::from_slots(
        t.space(),
        t.degree() - 1,
        t.weight() - Q::one(),
        [z.clone(), w.codiff().sub(&s.scale(&c)), z, s.codiff().neg()],
    ))
}

/// `D̃ = 1/h ∘ Δ`. At `w = 1 − d/2` the output is a representative of a
/// class in the cokernel of `X`, with zero east and south slots.
pub fn d_tilde(t: &TractorForm) -> TractorForm {
    let h_out = t.h() - q(2);
    if !h_out.is_zero() {
        return thomas_d(t).scale_by(&h_out.recip());
    }
    let (n, w) = (t.north(), t.west());
    let c = k(t) - qr(t.dim(), 2) + Q::one();
    let z = WeightedForm::zero(t.space(), 0, Q::one());
    TractorForm::from_slots(
        t.space(),
        t.degree() + 1,
        t.weight() - Q::one(),
        [w.scale(&c).sub(&n.d()), w.d(), z.clone(), z],
    )
}

/// `D̃* = 1/h ∘ Δ*`, with the cokernel branch at `w = 1 − d/2`.
pub fn d_tilde_star(t: &TractorForm) -> TractorForm {
    let h_out = t.h() - q(2);
    if !h_out.is_zero() {
        return thomas_d_star(t).scale_by(&h_out.recip());
    }
    let (n, e) = (t.north(), t.east());
    let c = k(t) - qr(t.dim(), 2) - q(3);
    let z = WeightedForm::zero(t.space(), 0, Q::one());
    TractorForm::from_slots(
        t.space(),
        t.degree() - 1,
        t.weight() - Q::one(),
        [e.scale(&c).sub(&n.codiff()), z.clone(), e.codiff(), z],
    )
}

/// The double D-operator `Δ₍₂₎ = D̂X`: `(k, w) → (k + 2, w)`.
pub fn double_d(t: &TractorForm) -> TractorForm {
    flat(t);
    let (n, w) = (t.north(), t.west());
    let wk = t.weight() + k(t);
    let z = WeightedForm::zero(t.space(), 0, Q::one());
    TractorForm::from_slots(
        t.space(),
        t.degree() + 2,
        t.weight().clone(),
        [z.clone(), z, w.scale(&wk).sub(&n.d()), w.d().neg()],
    )
}

/// `Δ*₍₂₎ = D̂*X*`: `(k, w) → (k − 2, w)`.
pub fn double_d_star(t: &TractorForm) -> TractorForm {
    flat(t);
    let (n, e) = (t.north(), t.east());
    let c = dim(t) + t.weight() - k(t) + q(2);
    let z = WeightedForm::zero(t.space(), 0, Q::one());
    TractorForm::from_slots(
        t.space(),
        t.degree() - 2,
        t.weight().clone(),
        [z.clone(), n.codiff().add(&e.scale(&c)), z, e.codiff().neg()],
    )
}

/// The exterior triple D-operator `Δ₍₃₎ = D̂XεI`: `(k, w) → (k + 3, w)`.
pub fn triple_d(t: &TractorForm) -> TractorForm {
    flat(t);
    let (n, w) = (t.north(), t.west());
    let z = WeightedForm::zero(t.space(), 0, Q::one());
    TractorForm::from_slots(
        t.space(),
        t.degree() + 3,
        t.weight().clone(),
        [z.clone(), z, eps_tilde(w).sub(&n.d().eps(0)), w.d().eps(0)],
    )
}

/// The interior triple D-operator `Δ*₍₃₎ = D̂*X*ιI`: `(k, w) → (k − 3, w)`.
pub fn triple_d_star(t: &TractorForm) -> TractorForm {
    flat(t);
    let (n, e) = (t.north(), t.east());
    let z = WeightedForm::zero(t.space(), 0, Q::one());
    TractorForm::from_slots(
        t.space(),
        t.degree() - 3,
        t.weight().clone(),
        [
            z.clone(),
            iota_tilde(e).sub(&n.iota(0).codiff()),
            z,
            e.iota(0).codiff().neg(),
        ],
    )
}
