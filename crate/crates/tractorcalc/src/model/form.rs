use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{coord_name, Space};
use crate::error::{Error, Result};
use crate::num::{q, Exp, Q};
use crate::poly::Poly;

/// A weighted differential form: a degree, a conformal weight, and one
/// coefficient function per increasing index set.
///
/// Index sets are bit masks over coordinates (bit 0 is `dr`). The weight is
/// bookkeeping only; each operation shifts it as documented.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedForm {
    space: Space,
    degree: i32,
    weight: Q,
    comps: BTreeMap<u32, Poly>,
}

/// Number of set bits of `mask` below position `a`.
fn below(mask: u32, a: usize) -> u32 {
    (mask & ((1u32 << a) - 1)).count_ones()
}

fn sign(parity: u32) -> Q {
    if parity.is_multiple_of(2) {
        Q::one()
    } else {
        -Q::one()
    }
}

impl WeightedForm {
    pub fn zero(space: Space, degree: i32, weight: Q) -> Self {
        WeightedForm {
            space,
            degree,
            weight,
            comps: BTreeMap::new(),
        }
    }

    /// A 0-form.
    pub fn scalar(space: Space, weight: Q, f: Poly) -> Self {
        let mut out = WeightedForm::zero(space, 0, weight);
        out.insert(0, f);
        out
    }

    /// `f dx^{a1} ∧ .. ∧ dx^{ak}` for arbitrary (possibly unsorted) indices.
    pub fn monomial(space: Space, weight: Q, indices: &[usize], f: Poly) -> Result<Self> {
        let mut mask = 0u32;
        let mut parity = 0u32;
        for &a in indices {
            if !space.coords().contains(&a) {
                return Err(Error::Degree {
                    op: "monomial",
                    detail: format!("coordinate {a} not in {space}"),
                });
            }
            if mask & (1 << a) != 0 {
                return Ok(WeightedForm::zero(space, indices.len() as i32, weight));
            }
            // moving dx^a past the higher indices already present
            parity += (mask >> (a + 1)).count_ones();
            mask |= 1 << a;
        }
        let mut out = WeightedForm::zero(space, indices.len() as i32, weight);
        out.insert(mask, f.scale(&sign(parity)));
        Ok(out)
    }

    pub fn from_components(
        space: Space,
        degree: i32,
        weight: Q,
        comps: impl IntoIterator<Item = (u32, Poly)>,
    ) -> Result<Self> {
        let mut out = WeightedForm::zero(space, degree, weight);
        for (mask, f) in comps {
            if mask.count_ones() as i32 != degree || mask & !space.full_mask() != 0 {
                return Err(Error::Degree {
                    op: "from_components",
                    detail: format!("index mask {mask:#b} does not fit degree {degree} on {space}"),
                });
            }
            out.insert(mask, f);
        }
        Ok(out)
    }

    fn insert(&mut self, mask: u32, f: Poly) {
        if f.is_zero() {
            return;
        }
        let slot = self.comps.entry(mask).or_default();
        *slot += &f;
        if slot.is_zero() {
            self.comps.remove(&mask);
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn weight(&self) -> &Q {
        &self.weight
    }

    pub fn components(&self) -> &BTreeMap<u32, Poly> {
        &self.comps
    }

    pub fn component(&self, mask: u32) -> Poly {
        self.comps.get(&mask).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn with_weight(mut self, weight: Q) -> Self {
        self.weight = weight;
        self
    }

    /// Re-label degree and weight. Only valid when the components agree with
    /// the new degree, which holds trivially for the zero form.
    pub(crate) fn relabel(mut self, degree: i32, weight: Q) -> Self {
        debug_assert!(
            self.is_zero() || self.degree == degree,
            "relabelling a nonzero {}-form as degree {degree}",
            self.degree
        );
        self.degree = degree;
        self.weight = weight;
        self
    }

    fn map_polys(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        let mut out = WeightedForm::zero(self.space, self.degree, self.weight.clone());
        for (&m, p) in &self.comps {
            out.insert(m, f(p));
        }
        out
    }

    pub fn add(&self, other: &WeightedForm) -> Self {
        debug_assert_eq!(self.space, other.space);
        debug_assert!(
            self.is_zero() || other.is_zero() || self.degree == other.degree,
            "adding forms of degree {} and {}",
            self.degree,
            other.degree
        );
        let mut out = if self.is_zero() {
            WeightedForm::zero(self.space, other.degree, other.weight.clone())
        } else {
            self.clone()
        };
        for (&m, p) in &other.comps {
            out.insert(m, p.clone());
        }
        out
    }

    pub fn sub(&self, other: &WeightedForm) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return WeightedForm::zero(self.space, self.degree, self.weight.clone());
        }
        self.map_polys(|p| p.scale(c))
    }

    /// Multiply every component by the function `f`. The weight is unchanged.
    pub fn mul_fn(&self, f: &Poly) -> Self {
        self.map_polys(|p| p * f)
    }

    /// Multiply by `r^a`. The weight is unchanged; callers set it.
    pub fn mul_r_pow(&self, a: Exp) -> Self {
        self.map_polys(|p| p.mul_r_pow(a))
    }

    /// Multiply by `σ = r`, raising the weight by one.
    pub fn mul_sigma(&self) -> Self {
        let w = &self.weight + Q::one();
        self.mul_r_pow(Exp::one()).with_weight(w)
    }

    /// Multiply by `log r`.
    pub fn mul_log(&self) -> Self {
        self.map_polys(|p| p.mul_log())
    }

    /// Componentwise partial derivative; weight unchanged.
    pub fn partial(&self, a: usize) -> Self {
        self.map_polys(|p| p.diff(a))
    }

    /// `∇_n = ∂_r` on components; lowers the weight by one.
    pub fn d_r(&self) -> Self {
        let w = &self.weight - Q::one();
        self.partial(0).with_weight(w)
    }

    /// `ε(dx^a)`; weight unchanged.
    pub fn eps(&self, a: usize) -> Self {
        let mut out = WeightedForm::zero(self.space, self.degree + 1, self.weight.clone());
        for (&m, p) in &self.comps {
            if m & (1 << a) != 0 {
                continue;
            }
            out.insert(m | (1 << a), p.scale(&sign(below(m, a))));
        }
        out
    }

    /// `ι(∂_a)`; weight unchanged.
    pub fn iota(&self, a: usize) -> Self {
        let mut out = WeightedForm::zero(self.space, self.degree - 1, self.weight.clone());
        for (&m, p) in &self.comps {
            if m & (1 << a) == 0 {
                continue;
            }
            out.insert(m & !(1 << a), p.scale(&sign(below(m, a))));
        }
        out
    }

    /// Exterior multiplication by the conormal `n = dr`; weight rises by one.
    pub fn eps_n(&self) -> Self {
        debug_assert!(self.space.is_bulk());
        let w = &self.weight + Q::one();
        self.eps(0).with_weight(w)
    }

    /// Interior multiplication by the normal; weight drops by one.
    pub fn iota_n(&self) -> Self {
        debug_assert!(self.space.is_bulk());
        let w = &self.weight - Q::one();
        self.iota(0).with_weight(w)
    }

    /// Exterior derivative; weight unchanged.
    pub fn d(&self) -> Self {
        let mut out = WeightedForm::zero(self.space, self.degree + 1, self.weight.clone());
        for a in self.space.coords() {
            out = out.add(&self.partial(a).eps(a));
        }
        out.relabel(self.degree + 1, self.weight.clone())
    }

    /// Codifferential, the divergence `Σ_a ι(∂_a) ∂_a`; weight drops by two.
    ///
    /// With this sign `{d, δ}` is the sum of second derivatives.
    pub fn codiff(&self) -> Self {
        let w = &self.weight - q(2);
        let mut out = WeightedForm::zero(self.space, self.degree - 1, w.clone());
        for a in self.space.coords() {
            out = out.add(&self.partial(a).iota(a));
        }
        out.relabel(self.degree - 1, w)
    }

    /// Form Laplacian `{d, δ}`; weight drops by two.
    pub fn laplacian(&self) -> Self {
        let w = &self.weight - q(2);
        let mut out = WeightedForm::zero(self.space, self.degree, w.clone());
        for a in self.space.coords() {
            out = out.add(&self.partial(a).partial(a));
        }
        out.relabel(self.degree, w)
    }

    /// `A ∧ B`; degrees and weights add.
    pub fn wedge(&self, other: &WeightedForm) -> Self {
        debug_assert_eq!(self.space, other.space);
        let mut out = WeightedForm::zero(
            self.space,
            self.degree + other.degree,
            &self.weight + &other.weight,
        );
        for (&a, pa) in &self.comps {
            for (&b, pb) in &other.comps {
                if a & b != 0 {
                    continue;
                }
                // sign of merging two increasing index lists
                let mut parity = 0;
                let mut bits = b;
                while bits != 0 {
                    let j = bits.trailing_zeros();
                    parity += (a >> (j + 1)).count_ones();
                    bits &= bits - 1;
                }
                out.insert(a | b, (pa * pb).scale(&sign(parity)));
            }
        }
        out
    }

    /// Flat Hodge star `e_I ↦ sign(I, I^c) e_{I^c}`, mapping weight `w` to
    /// `dim + w - 2k`.
    pub fn hodge(&self) -> Self {
        let dim = self.space.dim() as i32;
        let full = self.space.full_mask();
        let mut out = WeightedForm::zero(
            self.space,
            dim - self.degree,
            &self.weight + q((dim - 2 * self.degree) as i64),
        );
        for (&m, p) in &self.comps {
            let comp = full & !m;
            let mut parity = 0;
            let mut bits = comp;
            while bits != 0 {
                let j = bits.trailing_zeros();
                parity += (m >> (j + 1)).count_ones();
                bits &= bits - 1;
            }
            out.insert(comp, p.scale(&sign(parity)));
        }
        out
    }

    /// Lowest power of `r` over all components.
    pub fn order(&self) -> Option<Exp> {
        self.comps.values().filter_map(|p| p.order()).min()
    }

    pub fn truncate_below(&self, bound: Exp) -> Self {
        self.map_polys(|p| p.truncate_below(bound))
    }

    /// Coefficient form of `r^a (log r)^log`.
    pub fn coeff(&self, a: Exp, log: u32) -> Self {
        self.map_polys(|p| p.coeff(a, log))
    }

    pub fn log_degree(&self) -> u32 {
        self.comps
            .values()
            .map(|p| p.log_degree())
            .max()
            .unwrap_or(0)
    }

    /// Part with exactly `log` powers of `log r`, with the log stripped.
    pub fn log_part(&self, log: u32) -> Self {
        self.map_polys(|p| p.log_parts().get(log as usize).cloned().unwrap_or_default())
    }

    pub fn is_polynomial(&self) -> bool {
        self.comps.values().all(|p| p.is_polynomial())
    }

    /// Extend a boundary form to the bulk, constant in `r`.
    pub fn extend(&self) -> Self {
        assert!(!self.space.is_bulk(), "extend expects a boundary form");
        WeightedForm {
            space: self.space.bulk_space(),
            degree: self.degree,
            weight: self.weight.clone(),
            comps: self.comps.clone(),
        }
    }

    /// Restrict to `r = 0`, requiring the result to have no `dr` part.
    pub fn restrict(&self) -> Result<Self> {
        let pulled = self.at_boundary()?;
        if let Some((&m, _)) = pulled.comps.iter().find(|(&m, _)| m & 1 != 0) {
            return Err(Error::Restriction(format!(
                "normal component {} survives at r = 0",
                mask_name(m)
            )));
        }
        Ok(pulled.into_boundary())
    }

    /// Pull back to `r = 0`, discarding any `dr` part.
    pub fn pullback(&self) -> Result<Self> {
        let mut pulled = self.at_boundary()?;
        pulled.comps.retain(|m, _| m & 1 == 0);
        Ok(pulled.into_boundary())
    }

    fn at_boundary(&self) -> Result<Self> {
        assert!(self.space.is_bulk(), "restriction expects a bulk form");
        let mut out = WeightedForm::zero(self.space, self.degree, self.weight.clone());
        for (&m, p) in &self.comps {
            out.insert(m, p.restrict()?);
        }
        Ok(out)
    }

    fn into_boundary(self) -> Self {
        WeightedForm {
            space: self.space.boundary_space(),
            ..self
        }
    }

    /// Components as `(index list, function)` pairs, for display.
    pub fn named_components(&self) -> Vec<(String, &Poly)> {
        self.comps.iter().map(|(&m, p)| (mask_name(m), p)).collect()
    }
}

pub(crate) fn mask_name(mask: u32) -> String {
    (0..32)
        .filter(|a| mask & (1 << a) != 0)
        .map(coord_name)
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for WeightedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|(&m, p)| {
                if m == 0 {
                    format!("({p})")
                } else {
                    let wedge = mask_name(m)
                        .split(',')
                        .map(|c| format!("d{c}"))
                        .collect::<Vec<_>>()
                        .join("^");
                    format!("({p}) {wedge}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
