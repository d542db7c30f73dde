use num_traits::One;

use super::robin::laplace_robin;
use super::{Scale, TractorForm};
use crate::error::{Error, Result};
use crate::num::{q, Exp, Q};
use crate::sl2core::Sl2Module;

/// The `sl(2)` triple `(x, h, y) = (σ, d + 2w, Laplace–Robin)` acting on
/// tractor forms.
#[derive(Clone, Copy, Debug, Default)]
pub struct ProcaModule;

impl Sl2Module for ProcaModule {
    type Section = TractorForm;

    fn raise(&self, s: &TractorForm) -> Result<TractorForm> {
        Ok(s.mul_sigma())
    }

    fn raise_pow(&self, s: &TractorForm, a: Exp) -> Result<TractorForm> {
        Ok(s.mul_sigma_pow(a))
    }

    fn lower(&self, s: &TractorForm) -> Result<TractorForm> {
        Ok(laplace_robin(s))
    }

    fn h_value(&self, s: &TractorForm) -> Result<Q> {
        Ok(s.h())
    }

    fn scaled(&self, s: &TractorForm, c: &Q) -> TractorForm {
        s.scale_by(c)
    }

    fn added(&self, a: &TractorForm, b: &TractorForm) -> Result<TractorForm> {
        a.try_add(b)
    }
}

/// `log τ` for a scale `τ`: a log density whose weight action is the
/// constant 1 and whose component in its own scale vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogDensity {
    base: Scale,
}

impl LogDensity {
    pub fn new(base: Scale) -> Self {
        LogDensity { base }
    }

    pub fn base(&self) -> &Scale {
        &self.base
    }

    pub fn weight_action(&self) -> Q {
        Q::one()
    }

    /// Component in the scale `other`; only the own scale is supported.
    pub fn component(&self, other: &Scale) -> Result<Q> {
        if other == &self.base {
            Ok(q(0))
        } else {
            Err(Error::ScaleMismatch(format!(
                "{} vs {}",
                self.base.tag(),
                other.tag()
            )))
        }
    }

    /// `[h, log τ] = 2 · weight action`.
    pub fn h_commutator(&self) -> Q {
        q(2) * self.weight_action()
    }
}
