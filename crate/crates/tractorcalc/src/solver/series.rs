//! Order-by-order construction of formal solutions of `y𝒜 = 0`.

use num_traits::{One, Zero};

use crate::error::{excluded, Error, Result};
use crate::num::{as_integer, format_q, q, Exp, Q};
use crate::sl2core::{apply_noseries, first_kind};
use crate::tractor::robin::laplace_robin;
use crate::tractor::{ProcaModule, TractorForm};

/// `:K^{h0}:` truncated at `order`, evaluated at `h` of `s`.
pub fn apply_first_kind(s: &TractorForm, order: usize) -> Result<TractorForm> {
    let op = first_kind(&s.h(), order)?;
    Ok(apply_noseries(&op, &ProcaModule, s)?.unwrap_or_else(|| s.scale_by(&Q::zero())))
}

/// One step of the recursion: if `y f = O(σ^ℓ)` then
/// `[xy + (ℓ+1)(h0 − ℓ − 2)] f / ((ℓ+1)(h0 − ℓ − 2))` has `y f = O(σ^{ℓ+1})`.
pub fn next_order(f: &TractorForm, l: usize) -> Result<TractorForm> {
    let h0 = f.h();
    let c = q(l as i64 + 1) * (&h0 - q(l as i64 + 2));
    if c.is_zero() {
        return Err(excluded(
            "next_order",
            format!("step {l} hits h0 = {}", format_q(&h0)),
        ));
    }
    Ok(f.add(&laplace_robin(f).mul_sigma().scale_by(&c.recip())))
}

/// Iterate [`next_order`] from `f` up to `order`.
pub fn iterate(f: &TractorForm, order: usize) -> Result<TractorForm> {
    let mut out = f.clone();
    for l in 0..order {
        out = next_order(&out, l)?;
    }
    Ok(out.truncate_below(Exp::from_integer(order as i64 + 1)))
}

/// The scalar `λ` with `a = λ b`, if there is one.
fn proportional(a: &TractorForm, b: &TractorForm) -> Option<Q> {
    let (slot, form) = b.slots().iter().enumerate().find(|(_, s)| !s.is_zero())?;
    let (mask, poly) = form.components().iter().next()?;
    let (mono, cb) = poly.terms().next()?;
    let ca = a
        .slot(slot)
        .component(*mask)
        .terms()
        .find(|(m, _)| *m == mono)
        .map_or_else(Q::zero, |(_, c)| c.clone());
    let lambda = ca / cb;
    (a == &b.scale_by(&lambda)).then_some(lambda)
}

/// Formal solution through `σ^order` at `h0 ∈ {2, 3, ..}`, with a single
/// `log σ` from `σ^{h0−1}` on.
///
/// Below `σ^{h0−1}` this is `:K^{h0}: s0`. At each later order the non-log
/// and log coefficients are fixed so that `y` of the sum vanishes one order
/// further. At `σ^{h0−1}` itself the non-log coefficient is free and set to
/// zero; the log coefficient there is forced.
pub fn log_solve(s0: &TractorForm, order: usize) -> Result<TractorForm> {
    let h0 = s0.h();
    let top = match as_integer(&h0) {
        Some(h) if h >= 2 => h,
        _ => {
            return Err(excluded(
                "log_solve",
                format!("needs h0 ∈ {{2, 3, ..}}, got {}", format_q(&h0)),
            ))
        }
    };
    let regular = order.min(top as usize - 2);
    let mut s = apply_first_kind(s0, regular)?;
    let (k, w) = (s0.degree(), s0.weight().clone());
    let lift =
        |c: &TractorForm, j: i64| c.relabel(k, &w - q(j)).mul_sigma_pow(Exp::from_integer(j));
    for j in (top - 1)..=(order as i64) {
        let below = Exp::from_integer(j - 1);
        let c = q(j) * (&h0 - q(j) - Q::one());
        let g_log = laplace_robin(&s).coeff(below, 1);
        if c.is_zero() {
            if !g_log.is_zero() {
                return Err(Error::Unsupported(format!("log² term needed at σ^{j}")));
            }
            let g = laplace_robin(&s).coeff(below, 0);
            if g.is_zero() {
                continue;
            }
            let probe = laplace_robin(&lift(&g, j).mul_log()).coeff(below, 0);
            let lambda = proportional(&probe, &g).ok_or_else(|| {
                Error::Unsupported(format!("log coefficient at σ^{j} is not diagonal"))
            })?;
            s = s.add(&lift(&g, j).mul_log().scale_by(&-lambda.recip()));
        } else {
            if !g_log.is_zero() {
                s = s.add(&lift(&g_log, j).mul_log().scale_by(&c.recip()));
            }
            let g = laplace_robin(&s).coeff(below, 0);
            s = s.add(&lift(&g, j).scale_by(&c.recip()));
        }
    }
    Ok(s.truncate_below(Exp::from_integer(order as i64 + 1)))
}
