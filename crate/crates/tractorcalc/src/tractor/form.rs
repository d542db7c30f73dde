use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::{Space, WeightedForm};
use crate::num::{exp_to_q, format_q, q, Exp, Q};

/// The scale a tractor form is split in. The flat scale is the reference
/// `τ`; rescalings by `e^{2ω}` with `ω` linear are recorded by the constant
/// gradient `dω` (one entry per coordinate, `r` first).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Scale {
    gradient: Vec<Q>,
}

impl Scale {
    pub fn flat() -> Self {
        Scale::default()
    }

    pub fn from_gradient(mut gradient: Vec<Q>) -> Self {
        while gradient.last().is_some_and(|c| c.is_zero()) {
            gradient.pop();
        }
        Scale { gradient }
    }

    pub fn gradient(&self) -> &[Q] {
        &self.gradient
    }

    pub fn is_flat(&self) -> bool {
        self.gradient.is_empty()
    }

    /// Tag used in serialized output.
    pub fn tag(&self) -> String {
        if self.is_flat() {
            "flat-tau".to_string()
        } else {
            let parts: Vec<String> = self.gradient.iter().map(format_q).collect();
            format!("flat-tau+grad({})", parts.join(","))
        }
    }
}

/// A tractor `k`-form of weight `w`, split in a scale as
/// `(north, west, east, south)`.
///
/// Slot shapes: north `(k − 1, w + k)`, west `(k, w + k)`,
/// east `(k − 2, w + k − 2)`, south `(k − 1, w + k − 2)` as
/// (degree, weight) pairs. Slots whose degree is out of range are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TractorForm {
    space: Space,
    k: i32,
    w: Q,
    scale: Scale,
    slots: [WeightedForm; 4],
}

pub const NORTH: usize = 0;
pub const WEST: usize = 1;
pub const EAST: usize = 2;
pub const SOUTH: usize = 3;

pub(crate) fn slot_shape(k: i32, w: &Q) -> [(i32, Q); 4] {
    let top = w + q(k as i64);
    let bottom = &top - q(2);
    [
        (k - 1, top.clone()),
        (k, top),
        (k - 2, bottom.clone()),
        (k - 1, bottom),
    ]
}

impl TractorForm {
    pub fn zero(space: Space, k: i32, w: Q) -> Self {
        let slots = slot_shape(k, &w).map(|(deg, wt)| WeightedForm::zero(space, deg, wt));
        TractorForm {
            space,
            k,
            w,
            scale: Scale::flat(),
            slots,
        }
    }

    /// Builds a tractor form in the flat scale, relabelling the slot degrees
    /// and weights to the canonical shape.
    ///
    /// # Panics
    /// In debug builds, if a nonzero slot has the wrong form degree.
    pub fn from_slots(space: Space, k: i32, w: Q, slots: [WeightedForm; 4]) -> Self {
        let shape = slot_shape(k, &w);
        let dim = space.dim() as i32;
        let mut i = 0;
        let slots = slots.map(|s| {
            let (deg, wt) = shape[i].clone();
            i += 1;
            debug_assert!(
                s.is_zero() || (0..=dim).contains(&deg),
                "slot {} of a {k}-tractor has degree {deg}",
                i - 1
            );
            s.relabel(deg, wt)
        });
        TractorForm {
            space,
            k,
            w,
            scale: Scale::flat(),
            slots,
        }
    }

    /// Same as [`TractorForm::from_slots`] but checks the slot degrees.
    pub fn try_from_slots(space: Space, k: i32, w: Q, slots: [WeightedForm; 4]) -> Result<Self> {
        let shape = slot_shape(k, &w);
        for (i, s) in slots.iter().enumerate() {
            if s.space() != space {
                return Err(Error::Degree {
                    op: "tractor",
                    detail: format!("slot {i} lives on {}, expected {space}", s.space()),
                });
            }
            if !s.is_zero() && s.degree() != shape[i].0 {
                return Err(Error::Degree {
                    op: "tractor",
                    detail: format!(
                        "slot {i} of a {k}-tractor must have degree {}, got {}",
                        shape[i].0,
                        s.degree()
                    ),
                });
            }
        }
        Ok(TractorForm::from_slots(space, k, w, slots))
    }

    pub fn with_scale(mut self, scale: Scale) -> Self {
        self.scale = scale;
        self
    }

    pub fn space(&self) -> Space {
        self.space
    }

    /// Dimension entering the operator coefficients: `d` in the bulk, `n`
    /// on the boundary.
    pub fn dim(&self) -> i64 {
        self.space.dim() as i64
    }

    pub fn degree(&self) -> i32 {
        self.k
    }

    pub fn weight(&self) -> &Q {
        &self.w
    }

    /// `h = dim + 2w`.
    pub fn h(&self) -> Q {
        q(self.dim()) + q(2) * &self.w
    }

    pub fn scale(&self) -> &Scale {
        &self.scale
    }

    pub fn slot(&self, i: usize) -> &WeightedForm {
        &self.slots[i]
    }

    pub fn slots(&self) -> &[WeightedForm; 4] {
        &self.slots
    }

    pub fn north(&self) -> &WeightedForm {
        &self.slots[NORTH]
    }

    pub fn west(&self) -> &WeightedForm {
        &self.slots[WEST]
    }

    pub fn east(&self) -> &WeightedForm {
        &self.slots[EAST]
    }

    pub fn south(&self) -> &WeightedForm {
        &self.slots[SOUTH]
    }

    pub fn is_zero(&self) -> bool {
        self.slots.iter().all(|s| s.is_zero())
    }

    /// Relabel weight and degree; valid when the slot shapes still fit,
    /// for instance when the form is zero.
    pub(crate) fn relabel(&self, k: i32, w: Q) -> Self {
        let mut out = TractorForm::from_slots(self.space, k, w, self.slots.clone());
        out.scale = self.scale.clone();
        out
    }

    pub fn with_weight(&self, w: Q) -> Self {
        self.relabel(self.k, w)
    }

    fn map_slots(&self, f: impl Fn(&WeightedForm) -> WeightedForm) -> Self {
        let mut out = TractorForm::from_slots(
            self.space,
            self.k,
            self.w.clone(),
            self.slots.clone().map(|s| f(&s)),
        );
        out.scale = self.scale.clone();
        out
    }

    pub fn try_add(&self, other: &TractorForm) -> Result<Self> {
        if self.scale != other.scale {
            return Err(Error::ScaleMismatch(format!(
                "{} vs {}",
                self.scale.tag(),
                other.scale.tag()
            )));
        }
        if self.space != other.space {
            return Err(Error::Degree {
                op: "add",
                detail: format!("{} vs {}", self.space, other.space),
            });
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.k != other.k || self.w != other.w {
            return Err(Error::Degree {
                op: "add",
                detail: format!(
                    "({}, {}) vs ({}, {})",
                    self.k,
                    format_q(&self.w),
                    other.k,
                    format_q(&other.w)
                ),
            });
        }
        let mut out = self.clone();
        for i in 0..4 {
            out.slots[i] = self.slots[i].add(&other.slots[i]);
        }
        Ok(out)
    }

    /// Sum of two sections of the same bundle.
    ///
    /// # Panics
    /// If the scales, spaces, degrees or weights differ (zero operands adopt
    /// the other's shape); see [`TractorForm::try_add`].
    pub fn add(&self, other: &TractorForm) -> Self {
        self.try_add(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn sub(&self, other: &TractorForm) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale_by(&-Q::one())
    }

    pub fn scale_by(&self, c: &Q) -> Self {
        self.map_slots(|s| s.scale(c))
    }

    /// Multiply by `σ^a = r^a`, raising the weight by `a`.
    pub fn mul_sigma_pow(&self, a: Exp) -> Self {
        let w = &self.w + exp_to_q(&a);
        self.map_slots(|s| s.mul_r_pow(a)).relabel(self.k, w)
    }

    pub fn mul_sigma(&self) -> Self {
        self.mul_sigma_pow(Exp::one())
    }

    /// Multiply every slot by `log r`; weight unchanged.
    pub fn mul_log(&self) -> Self {
        self.map_slots(|s| s.mul_log())
    }

    /// Multiply every slot by `r^a` without touching the weight label.
    pub fn mul_r_pow(&self, a: Exp) -> Self {
        self.map_slots(|s| s.mul_r_pow(a))
    }

    /// Lowest power of `r` over all slots, `None` for zero.
    pub fn order(&self) -> Option<Exp> {
        self.slots.iter().filter_map(|s| s.order()).min()
    }

    pub fn truncate_below(&self, bound: Exp) -> Self {
        self.map_slots(|s| s.truncate_below(bound))
    }

    pub fn coeff(&self, a: Exp, log: u32) -> Self {
        self.map_slots(|s| s.coeff(a, log))
    }

    pub fn log_part(&self, log: u32) -> Self {
        self.map_slots(|s| s.log_part(log))
    }

    pub fn log_degree(&self) -> u32 {
        self.slots.iter().map(|s| s.log_degree()).max().unwrap_or(0)
    }

    pub fn is_polynomial(&self) -> bool {
        self.slots.iter().all(|s| s.is_polynomial())
    }

    /// Extend a boundary tractor to the bulk, constant in `r`.
    pub fn extend(&self) -> Self {
        let bulk = self.space.bulk_space();
        let mut out = TractorForm::from_slots(
            bulk,
            self.k,
            self.w.clone(),
            self.slots.clone().map(|s| s.extend()),
        );
        out.scale = self.scale.clone();
        out
    }

    /// Restriction to `Σ` through the flat boundary splitting: every slot is
    /// set to `r = 0` and must have no `dr` part there.
    pub fn restrict(&self) -> Result<Self> {
        let boundary = self.space.boundary_space();
        let mut slots = Vec::with_capacity(4);
        for s in &self.slots {
            slots.push(s.restrict()?);
        }
        let slots: [WeightedForm; 4] = slots.try_into().expect("four slots");
        let mut out = TractorForm::from_slots(boundary, self.k, self.w.clone(), slots);
        out.scale = self.scale.clone();
        Ok(out)
    }

    /// True when every slot vanishes at `r = 0`, i.e. all powers of `r`
    /// are positive.
    pub fn vanishes_along_boundary(&self) -> bool {
        self.order().is_none_or(|o| o > Exp::zero())
    }
}

impl fmt::Display for TractorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "tractor {}-form, weight {}, {}:",
            self.k,
            format_q(&self.w),
            self.space
        )?;
        for (name, s) in ["N", "W", "E", "S"].iter().zip(&self.slots) {
            writeln!(f, "  {name}: {s}")?;
        }
        Ok(())
    }
}
