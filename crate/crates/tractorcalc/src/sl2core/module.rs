use std::collections::BTreeMap;

use num_traits::Zero;

use super::NOSeries;
use crate::error::Result;
use crate::num::{Exp, Q};

/// A concrete representation of the `sl(2)` triple on some section space:
/// `x` raises the weight by one, `y` lowers it by one, and `h` acts as a
/// scalar determined by the weight.
pub trait Sl2Module {
    type Section: Clone;

    fn raise(&self, s: &Self::Section) -> Result<Self::Section>;

    /// `x^a` for a rational power `a`.
    fn raise_pow(&self, s: &Self::Section, a: Exp) -> Result<Self::Section>;

    fn lower(&self, s: &Self::Section) -> Result<Self::Section>;

    /// The value of `h` on `s`.
    fn h_value(&self, s: &Self::Section) -> Result<Q>;

    fn scaled(&self, s: &Self::Section, c: &Q) -> Self::Section;

    fn added(&self, a: &Self::Section, b: &Self::Section) -> Result<Self::Section>;
}

/// Evaluates `Σ x^a y^b p(h)` on `s`. Each `p` meets `s` directly, so it is
/// evaluated at `h` of `s`.
///
/// Returns `None` for the zero operator, whose output weight is undefined.
pub fn apply_noseries<M: Sl2Module>(
    op: &NOSeries,
    module: &M,
    s: &M::Section,
) -> Result<Option<M::Section>> {
    let h0 = module.h_value(s)?;
    let mut by_y: BTreeMap<u32, Vec<(Exp, Q)>> = BTreeMap::new();
    for word in op.words() {
        let c = word.p.eval(&h0);
        if !c.is_zero() {
            by_y.entry(word.b).or_default().push((word.a, c));
        }
    }
    let mut lowered = s.clone();
    let mut level = 0;
    let mut total: Option<M::Section> = None;
    for (b, words) in by_y {
        while level < b {
            lowered = module.lower(&lowered)?;
            level += 1;
        }
        for (a, c) in words {
            let term = module.raise_pow(&module.scaled(&lowered, &c), a)?;
            total = Some(match total {
                None => term,
                Some(t) => module.added(&t, &term)?,
            });
        }
    }
    Ok(total)
}
