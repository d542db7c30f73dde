//! Algebraic operators: the canonical tractor `X`, the scale tractor `I`,
//! the dual scale tractor `𝒴`, and the weight and degree operators.

use num_traits::One;

use super::{flat, TractorForm};
use crate::model::WeightedForm;
use crate::num::{q, Q};

fn zero_like(t: &TractorForm) -> WeightedForm {
    WeightedForm::zero(t.space(), 0, Q::one())
}

/// `X = ε(X)`: `(k, w) → (k + 1, w + 1)`.
/// Scale independent: the input's scale is kept.
pub fn x(t: &TractorForm) -> TractorForm {
    let z = zero_like(t);
    TractorForm::from_slots(
        t.space(),
        t.degree() + 1,
        t.weight() + Q::one(),
        [z.clone(), z, t.north().neg(), t.west().clone()],
    )
    .with_scale(t.scale().clone())
}

/// `X* = ι(X)`: `(k, w) → (k − 1, w + 1)`.
pub fn x_star(t: &TractorForm) -> TractorForm {
    let z = zero_like(t);
    TractorForm::from_slots(
        t.space(),
        t.degree() - 1,
        t.weight() + Q::one(),
        [z.clone(), t.north().clone(), z, t.east().clone()],
    )
    .with_scale(t.scale().clone())
}

/// `εI`, exterior multiplication by the scale tractor `(ρ, n, σ) = (0, dr, r)`.
pub fn eps_i(t: &TractorForm) -> TractorForm {
    flat(t);
    let [n, w, e, s] = t.slots();
    TractorForm::from_slots(
        t.space(),
        t.degree() + 1,
        t.weight().clone(),
        [
            w.mul_sigma().sub(&n.eps(0)),
            w.eps(0),
            e.eps(0).add(&s.mul_sigma()),
            s.eps(0).neg(),
        ],
    )
}

/// `ιI`, interior multiplication by the scale tractor.
pub fn iota_i(t: &TractorForm) -> TractorForm {
    flat(t);
    let [n, w, e, s] = t.slots();
    TractorForm::from_slots(
        t.space(),
        t.degree() - 1,
        t.weight().clone(),
        [
            n.iota(0).add(&e.mul_sigma()).neg(),
            w.iota(0).add(&s.mul_sigma()),
            e.iota(0),
            s.iota(0).neg(),
        ],
    )
}

/// `ε𝒴` for the dual scale tractor with unit `σ`-slot: `(k, w) → (k + 1, w − 1)`.
pub fn eps_y(t: &TractorForm) -> TractorForm {
    flat(t);
    let z = zero_like(t);
    TractorForm::from_slots(
        t.space(),
        t.degree() + 1,
        t.weight() - Q::one(),
        [t.west().clone(), z.clone(), t.south().clone(), z],
    )
}

/// `ι𝒴`: `(k, w) → (k − 1, w − 1)`.
pub fn iota_y(t: &TractorForm) -> TractorForm {
    flat(t);
    let z = zero_like(t);
    TractorForm::from_slots(
        t.space(),
        t.degree() - 1,
        t.weight() - Q::one(),
        [t.east().neg(), t.south().clone(), z.clone(), z],
    )
}

/// The weight operator `h = d + 2w`.
pub fn h(t: &TractorForm) -> TractorForm {
    t.scale_by(&t.h())
}

/// The degree operator `N = k`.
pub fn degree_op(t: &TractorForm) -> TractorForm {
    t.scale_by(&q(t.degree() as i64))
}
