use num_traits::One;

use crate::error::Result;
use crate::num::{q_to_exp, Q};
use crate::tractor::projector::pi;
use crate::tractor::TractorForm;

/// `𝒜 ↦ σ^{1−h} Π 𝒜`, exchanging `h` and `2 − h`. The same map undoes
/// itself up to terms of higher order than the solution is known to.
pub fn scale_duality(t: &TractorForm) -> Result<TractorForm> {
    let power = q_to_exp(&(Q::one() - t.h()))?;
    Ok(pi(t)?.mul_sigma_pow(power))
}
