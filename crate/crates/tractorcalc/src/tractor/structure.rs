//! Wedge product, tractor Hodge star, change of scale, connection and
//! boundary restriction.

use num_traits::{One, Zero};

use super::{flat, Scale, TractorForm};
use crate::error::{Error, Result};
use crate::model::WeightedForm;
use crate::num::{qr, Q};
use crate::poly::Poly;

fn parity(k: i32) -> Q {
    if k.rem_euclid(2) == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

/// `ℱ ∧ 𝒢`: degrees and weights add.
pub fn wedge(f: &TractorForm, g: &TractorForm) -> Result<TractorForm> {
    if f.scale() != g.scale() {
        return Err(Error::ScaleMismatch(format!(
            "{} vs {}",
            f.scale().tag(),
            g.scale().tag()
        )));
    }
    let [fn_, fw, fe, fs] = f.slots();
    let [gn, gw, ge, gs] = g.slots();
    let sgn = parity(f.degree());
    let north = fn_.wedge(gw).add(&fw.wedge(gn).scale(&sgn));
    let west = fw.wedge(gw);
    let east = fe
        .wedge(gw)
        .add(&fs.wedge(gn).sub(&fn_.wedge(gs)).scale(&sgn))
        .add(&fw.wedge(ge));
    let south = fs.wedge(gw).add(&fw.wedge(gs).scale(&sgn));
    Ok(TractorForm::from_slots(
        f.space(),
        f.degree() + g.degree(),
        f.weight() + g.weight(),
        [north, west, east, south],
    )
    .with_scale(f.scale().clone()))
}

/// Tractor Hodge star, a `k`-form to a `(d + 2 − k)`-form of the same weight.
pub fn star(t: &TractorForm) -> TractorForm {
    let [n, w, e, s] = t.slots();
    let k = t.degree();
    TractorForm::from_slots(
        t.space(),
        t.dim() as i32 + 2 - k,
        t.weight().clone(),
        [
            n.hodge().scale(&parity(k - 1)),
            e.hodge(),
            w.hodge().neg(),
            s.hodge().scale(&parity(k)),
        ],
    )
    .with_scale(t.scale().clone())
}

/// Constant gradient of a linear function `ω`; anything else is rejected.
pub fn linear_gradient(omega: &Poly, dim: usize) -> Result<Vec<Q>> {
    let mut grad = Vec::with_capacity(dim + 1);
    for a in 0..=dim {
        let g = omega.diff(a);
        if g.terms().any(|(m, _)| m != &crate::poly::Monomial::one()) {
            return Err(Error::Unsupported(format!(
                "change of scale needs a linear function, got {omega}"
            )));
        }
        grad.push(
            g.terms()
                .next()
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Q::zero),
        );
    }
    Ok(grad)
}

fn eps_vec(a: &WeightedForm, v: &[Q]) -> WeightedForm {
    let mut out = WeightedForm::zero(a.space(), a.degree() + 1, a.weight().clone());
    for c in a.space().coords() {
        if let Some(vc) = v.get(c).filter(|x| !x.is_zero()) {
            out = out.add(&a.eps(c).scale(vc));
        }
    }
    out
}

fn iota_vec(a: &WeightedForm, v: &[Q]) -> WeightedForm {
    let mut out = WeightedForm::zero(a.space(), a.degree() - 1, a.weight().clone());
    for c in a.space().coords() {
        if let Some(vc) = v.get(c).filter(|x| !x.is_zero()) {
            out = out.add(&a.iota(c).scale(vc));
        }
    }
    out
}

/// Re-split `t` in the scale `e^{2ω}` times the current one, for `ω`
/// linear with gradient `Υ`.
pub fn transform(t: &TractorForm, upsilon: &[Q]) -> TractorForm {
    let [n, w, e, s] = t.slots();
    let half = qr(1, 2);
    let south = eps_vec(&iota_vec(n, upsilon), upsilon)
        .sub(&iota_vec(&eps_vec(n, upsilon), upsilon))
        .scale(&half)
        .sub(&iota_vec(w, upsilon))
        .sub(&eps_vec(e, upsilon))
        .add(s);
    let mut grad: Vec<Q> = t.scale().gradient().to_vec();
    if grad.len() < upsilon.len() {
        grad.resize(upsilon.len(), Q::zero());
    }
    for (g, u) in grad.iter_mut().zip(upsilon) {
        *g += u;
    }
    TractorForm::from_slots(
        t.space(),
        t.degree(),
        t.weight().clone(),
        [
            n.clone(),
            eps_vec(n, upsilon).add(w),
            e.sub(&iota_vec(n, upsilon)),
            south,
        ],
    )
    .with_scale(Scale::from_gradient(grad))
}

/// Change of scale by a linear `ω`.
pub fn transform_by(t: &TractorForm, omega: &Poly) -> Result<TractorForm> {
    let grad = linear_gradient(omega, t.space().n())?;
    Ok(transform(t, &grad))
}

/// Tractor connection `∇_v` along a constant vector field in the flat scale.
pub fn connection(t: &TractorForm, v: &[Q]) -> TractorForm {
    flat(t);
    let along = |a: &WeightedForm| {
        let mut out = WeightedForm::zero(a.space(), a.degree(), a.weight().clone());
        for c in a.space().coords() {
            if let Some(vc) = v.get(c).filter(|x| !x.is_zero()) {
                out = out.add(&a.partial(c).scale(vc));
            }
        }
        out
    };
    let [n, w, e, s] = t.slots();
    TractorForm::from_slots(
        t.space(),
        t.degree(),
        t.weight().clone(),
        [
            along(n).sub(&iota_vec(w, v)).add(&eps_vec(e, v)),
            along(w).add(&eps_vec(s, v)),
            along(e).add(&iota_vec(s, v)),
            along(s),
        ],
    )
}

/// The scale tractor `I` as a tractor 1-form of weight 0.
pub fn scale_tractor(space: crate::model::Space) -> TractorForm {
    let one = WeightedForm::scalar(space, Q::one(), Poly::one());
    super::algebraic::eps_i(&TractorForm::from_slots(
        space,
        0,
        Q::zero(),
        [
            WeightedForm::zero(space, -1, Q::zero()),
            one,
            WeightedForm::zero(space, -2, Q::zero()),
            WeightedForm::zero(space, -1, Q::zero()),
        ],
    ))
}

/// Boundary splitting for a totally geodesic `Σ` followed by `r → 0`; the
/// input must be orthogonal to the normal along `Σ`.
pub fn boundary_restrict(t: &TractorForm) -> Result<TractorForm> {
    t.restrict()
}
