//! Holographic normal operators on weighted forms.

use num_traits::One;

use super::WeightedForm;
use crate::num::{q, Exp, Q};

/// `ε̃ = w ε(n) − σ d`, mapping `(k, w)` to `(k + 1, w + 1)`.
pub fn eps_tilde(a: &WeightedForm) -> WeightedForm {
    let w = a.weight().clone();
    let out = a.eps_n().scale(&w).sub(&a.d().mul_sigma());
    out.relabel(a.degree() + 1, w + Q::one())
}

/// `ι̃ = (d + w − 2k) ι(n) − σ δ`, mapping `(k, w)` to `(k − 1, w − 1)`.
pub fn iota_tilde(a: &WeightedForm) -> WeightedForm {
    let d = a.space().dim() as i64;
    let w = a.weight().clone();
    let c = q(d) + &w - q(2 * a.degree() as i64);
    let out = a.iota_n().scale(&c).sub(&a.codiff().mul_sigma());
    out.relabel(a.degree() - 1, w - Q::one())
}

/// `σ²Δ + (2k − d)[σ ∂_r + ε(n)ι(n)] + 2σ[ε(n)δ + ι(n)d]`.
///
/// On weight-zero forms this equals `{ι̃, ε̃}`.
pub fn l_hat(a: &WeightedForm) -> WeightedForm {
    let d = a.space().dim() as i64;
    let k = a.degree() as i64;
    let two = Exp::from_integer(2);
    let lap = a.laplacian().mul_r_pow(two);
    let normal = a
        .partial(0)
        .mul_r_pow(Exp::one())
        .add(&a.iota(0).eps(0))
        .scale(&q(2 * k - d));
    let mixed = a
        .codiff()
        .eps(0)
        .add(&a.d().iota(0))
        .mul_r_pow(Exp::one())
        .scale(&q(2));
    lap.add(&normal)
        .add(&mixed)
        .relabel(a.degree(), a.weight().clone())
}
