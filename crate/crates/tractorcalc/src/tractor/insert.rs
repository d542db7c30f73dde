//! Insertion operators embedding weighted forms into tractor forms.
//!
//! A form `A` of degree `p` and weight `u` is inserted into the slot that
//! fits it; the tractor degree and weight follow from the slot shape.

use num_traits::{One, Zero};

use super::TractorForm;
use crate::error::{excluded, precondition, Result};
use crate::model::WeightedForm;
use crate::num::{format_q, q, Q};

fn zero_slot(a: &WeightedForm) -> WeightedForm {
    WeightedForm::zero(a.space(), 0, Q::one())
}

fn tractor_weight(a: &WeightedForm, k: i32) -> Q {
    a.weight() - q(k as i64)
}

/// `q A = (0, A, 0, 0)`, the `τ`-scale representative of the class
/// `(0, A, *, *)`.
pub fn q_plain(a: &WeightedForm) -> TractorForm {
    let k = a.degree();
    let z = zero_slot(a);
    TractorForm::from_slots(
        a.space(),
        k,
        tractor_weight(a, k),
        [z.clone(), a.clone(), z.clone(), z],
    )
}

/// `q*`: the west slot of a section of `ker X*`.
pub fn q_star(t: &TractorForm) -> Result<WeightedForm> {
    if !(t.north().is_zero() && t.east().is_zero()) {
        return Err(precondition("q*", "input must lie in ker X*"));
    }
    Ok(t.west().clone())
}

/// `q_S A = (0, 0, 0, A)`, landing in `ker(X, X*)`.
pub fn q_south(a: &WeightedForm) -> TractorForm {
    let k = a.degree() + 1;
    let z = zero_slot(a);
    TractorForm::from_slots(
        a.space(),
        k,
        a.weight() - q(k as i64) + q(2),
        [z.clone(), z.clone(), z, a.clone()],
    )
}

/// `q_W A = (0, A, 0, −δA/(d + w − k))`, landing in `ker(D̂*, X*)`.
///
/// Fails at `w = k − d`; use [`q_west_special`] there.
pub fn q_west(a: &WeightedForm) -> Result<TractorForm> {
    let k = a.degree();
    let w = tractor_weight(a, k);
    let c = q(a.space().dim() as i64) + &w - q(k as i64);
    if c.is_zero() {
        return Err(excluded(
            "q_W",
            format!("w = k - d = {}; pass a coclosed pair instead", format_q(&w)),
        ));
    }
    let z = zero_slot(a);
    let south = a.codiff().scale(&-c.recip());
    Ok(TractorForm::from_slots(
        a.space(),
        k,
        w,
        [z.clone(), a.clone(), z, south],
    ))
}

/// `q_W` at `w = k − d`: a coclosed `A` together with a free `φ` of degree
/// `k − 1` gives `(0, A, 0, φ)`.
pub fn q_west_special(a: &WeightedForm, phi: &WeightedForm) -> Result<TractorForm> {
    let k = a.degree();
    let w = tractor_weight(a, k);
    let c = q(a.space().dim() as i64) + &w - q(k as i64);
    if !c.is_zero() {
        return Err(precondition(
            "q_W",
            format!("special branch needs w = k - d, got {}", format_q(&w)),
        ));
    }
    if !a.codiff().is_zero() {
        return Err(precondition("q_W", "special branch needs a coclosed form"));
    }
    let z = zero_slot(a);
    TractorForm::try_from_slots(a.space(), k, w, [z.clone(), a.clone(), z, phi.clone()])
}

/// `q_E A = (0, 0, A, −dA/(w + k − 2))`, landing in `ker(D̂, X)`.
///
/// Fails at `w = 2 − k`; use [`q_east_special`] there.
pub fn q_east(a: &WeightedForm) -> Result<TractorForm> {
    let k = a.degree() + 2;
    let w = a.weight() - q(k as i64) + q(2);
    let c = a.weight().clone();
    if c.is_zero() {
        return Err(excluded("q_E", "w = 2 - k; pass a closed pair instead"));
    }
    let z = zero_slot(a);
    let south = a.d().scale(&-c.recip());
    Ok(TractorForm::from_slots(
        a.space(),
        k,
        w,
        [z.clone(), z, a.clone(), south],
    ))
}

/// `q_E` at `w = 2 − k`: closed `A` and `F` give `(0, 0, A, F)`.
pub fn q_east_special(a: &WeightedForm, f: &WeightedForm) -> Result<TractorForm> {
    if !a.weight().is_zero() {
        return Err(precondition(
            "q_E",
            format!(
                "special branch needs w = 2 - k, got form weight {}",
                format_q(a.weight())
            ),
        ));
    }
    if !a.d().is_zero() || !f.d().is_zero() {
        return Err(precondition("q_E", "special branch needs closed forms"));
    }
    let k = a.degree() + 2;
    let w = q(2 - k as i64);
    let z = zero_slot(a);
    TractorForm::try_from_slots(a.space(), k, w, [z.clone(), z, a.clone(), f.clone()])
}

/// `q_N A`, landing in `ker(Δ, Δ*)`. `A` has degree `k − 1` and weight
/// `w + k`; excluded for `w ∈ {−d/2, −k, k − d − 2}`.
pub fn q_north(a: &WeightedForm) -> Result<TractorForm> {
    let k = a.degree() + 1;
    let kq = q(k as i64);
    let d = q(a.space().dim() as i64);
    let w = a.weight() - &kq;
    let wk = a.weight().clone();
    let dwk = &d + &w - &kq + q(2);
    let h = &d + q(2) * &w;
    for (value, what) in [(&wk, "w + k"), (&dwk, "d + w - k + 2"), (&h, "d + 2w")] {
        if value.is_zero() {
            return Err(excluded(
                "q_N",
                format!("{what} = 0 at w = {}", format_q(&w)),
            ));
        }
    }
    let da = a.d();
    let dlt = a.codiff();
    let south = dlt
        .d()
        .scale(&dwk.recip())
        .sub(&da.codiff().scale(&wk.recip()))
        .scale(&h.recip());
    Ok(TractorForm::from_slots(
        a.space(),
        k,
        w,
        [
            a.clone(),
            da.scale(&wk.recip()),
            dlt.scale(&-dwk.recip()),
            south,
        ],
    ))
}

/// The `τ`-scale representative `q_(N) A = (A, 0, 0, 0)`.
pub fn q_north_tau(a: &WeightedForm) -> TractorForm {
    let k = a.degree() + 1;
    let z = zero_slot(a);
    TractorForm::from_slots(
        a.space(),
        k,
        tractor_weight(a, k),
        [a.clone(), z.clone(), z.clone(), z],
    )
}
