//! Extending boundary forms into the bulk so that `ι̃` annihilates them.

use num_traits::{One, Zero};

use super::{eps_tilde, iota_tilde, WeightedForm};
use crate::error::{excluded, Result};
use crate::num::{format_q, q, Exp, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionMethod {
    /// Solve `ι̃ A = O(σ^order)` coefficient by coefficient.
    Recursive,
    /// Apply `ι̃ ε̃ / ((w + k)(n + w − k))` to the constant extension.
    Projector,
}

/// Extend `boundary` (a `k`-form of weight `w + k`) to a bulk form in the
/// kernel of `ι̃`, where `w` is the tractor weight.
///
/// The recursive method returns a polynomial in `r` whose `ι̃` image vanishes
/// to at least `order`; the projector method is exact.
pub fn divergence_extend(
    boundary: &WeightedForm,
    w: &Q,
    order: usize,
    method: ExtensionMethod,
) -> Result<WeightedForm> {
    let k = boundary.degree() as i64;
    let form_weight = w + q(k);
    let a0 = boundary.extend().with_weight(form_weight.clone());
    let space = a0.space();
    let d = space.dim() as i64;
    let n = space.n() as i64;
    match method {
        ExtensionMethod::Recursive => {
            // (d + w − k − i) ι(n) A_i = δ A_{i−1}, with A_i = ε(n)(·) for i ≥ 1
            let base = q(d) + w - q(k);
            let mut total = a0.clone();
            let mut prev = a0;
            for i in 1..=order {
                let source = prev.codiff();
                if source.is_zero() {
                    break;
                }
                let denom = &base - q(i as i64);
                if denom.is_zero() {
                    return Err(excluded(
                        "divergence_extend",
                        format!(
                            "coefficient of r^{i} is obstructed: d + w − k = {} and δA_{} ≠ 0",
                            format_q(&base),
                            i - 1
                        ),
                    ));
                }
                let next = source
                    .eps(0)
                    .scale(&(Q::one() / denom))
                    .relabel(k as i32, form_weight.clone());
                total = total.add(&next.mul_r_pow(Exp::from_integer(i as i64)));
                prev = next;
            }
            Ok(total)
        }
        ExtensionMethod::Projector => {
            let c = (w + q(k)) * (q(n) + w - q(k));
            if c.is_zero() {
                return Err(excluded(
                    "divergence_extend",
                    format!(
                        "projector needs w + k ≠ 0 and n + w − k ≠ 0 (w = {}, k = {k})",
                        format_q(w)
                    ),
                ));
            }
            Ok(iota_tilde(&eps_tilde(&a0)).scale(&(Q::one() / c)))
        }
    }
}
