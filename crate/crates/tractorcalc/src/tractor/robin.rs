//! The Robin operator `δ_R`, the Yamabe-type box `□_Y`, and the
//! Laplace–Robin operator `y`.

use num_traits::One;

use super::{flat, TractorForm};
use crate::num::{q, Exp, Q};

/// `δ_R = ∇_n + wρ` in the flat scale: weight drops by one.
pub fn robin(t: &TractorForm) -> TractorForm {
    flat(t);
    let [n, w, e, s] = t.slots();
    TractorForm::from_slots(
        t.space(),
        t.degree(),
        t.weight() - Q::one(),
        [
            n.partial(0).sub(&w.iota(0)).add(&e.eps(0)),
            w.partial(0).add(&s.eps(0)),
            e.partial(0).add(&s.iota(0)),
            s.partial(0),
        ],
    )
}

/// `□_Y`: weight drops by two.
pub fn yamabe_box(t: &TractorForm) -> TractorForm {
    flat(t);
    let [n, w, e, s] = t.slots();
    let c = q(2 * (t.degree() as i64 - 1) - t.dim());
    TractorForm::from_slots(
        t.space(),
        t.degree(),
        t.weight() - q(2),
        [
            n.laplacian()
                .sub(&w.codiff().scale(&q(2)))
                .add(&e.d().scale(&q(2)))
                .add(&s.scale(&c)),
            w.laplacian().add(&s.d().scale(&q(2))),
            e.laplacian().add(&s.codiff().scale(&q(2))),
            s.laplacian(),
        ],
    )
}

/// The Laplace–Robin operator `y = −(h − 2)δ_R + σ□_Y`: `(k, w) → (k, w − 1)`.
pub fn laplace_robin(t: &TractorForm) -> TractorForm {
    let hm2 = t.h() - q(2);
    let boxed = yamabe_box(t).mul_r_pow(Exp::one());
    boxed
        .relabel(t.degree(), t.weight() - Q::one())
        .sub(&robin(t).scale_by(&hm2))
}
