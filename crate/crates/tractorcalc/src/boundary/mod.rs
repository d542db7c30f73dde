//! Boundary operators read off from bulk tractor compositions.
//!
//! Each operator extends a boundary form constantly in `r`, applies a bulk
//! composition of tangential operators, reads one slot and restricts to
//! `r = 0`. Tangentiality makes the answer independent of the extension.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{precondition, Error, Result};
use crate::model::{FormJson, WeightedForm};
use crate::num::{format_q, q, qr, Q};
use crate::tractor::algebraic::{eps_y, iota_y, x, x_star};
use crate::tractor::insert::q_plain;
use crate::tractor::robin::laplace_robin;
use crate::tractor::tangential::d_bar_star;
use crate::tractor::TractorForm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryOp {
    /// The detour operator `L^ℓ_k`.
    L,
    /// The gauge companion `G_k`.
    G,
    /// The Q-operator `Q_k`.
    Q,
    /// `L_k = γ_k δ Q_{k+1} d` on a probe.
    #[serde(rename = "factor")]
    Factor,
}

impl fmt::Display for BoundaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundaryOp::L => "L",
            BoundaryOp::G => "G",
            BoundaryOp::Q => "Q",
            BoundaryOp::Factor => "factor",
        })
    }
}

fn y_pow(t: &TractorForm, m: i64) -> TractorForm {
    (0..m).fold(t.clone(), |acc, _| laplace_robin(&acc))
}

fn boundary_input(a: &WeightedForm, op: &'static str) -> Result<()> {
    if a.space().is_bulk() {
        return Err(precondition(op, "expects a boundary form"));
    }
    Ok(())
}

fn even_n(a: &WeightedForm, op: &'static str) -> Result<i64> {
    let n = a.space().n() as i64;
    if n % 2 != 0 {
        return Err(Error::Unsupported(format!("{op} needs even n, got {n}")));
    }
    Ok(n)
}

fn expect_weight(a: &WeightedForm, w: &Q, op: &'static str) -> Result<()> {
    if a.weight() != w {
        return Err(crate::error::excluded(
            op,
            format!(
                "source weight must be {}, got {}",
                format_q(w),
                format_q(a.weight())
            ),
        ));
    }
    Ok(())
}

/// The bulk composition `P` applied to the constant extension of `a`, then
/// the west slot restricted to `r = 0`.
fn along_boundary(
    a: &WeightedForm,
    extension: Option<&WeightedForm>,
    compose: impl Fn(&TractorForm) -> Result<TractorForm>,
) -> Result<WeightedForm> {
    let bulk = extension.cloned().unwrap_or_else(|| a.extend());
    compose(&q_plain(&bulk))?.west().restrict()
}

/// `L^ℓ_k = q* y^{2ℓ} D̄* X q` on a `k`-form of weight `k + ℓ − n/2`; the
/// result has weight `k − ℓ − n/2`.
pub fn detour(a: &WeightedForm, l: usize) -> Result<WeightedForm> {
    detour_with(a, l, None)
}

/// [`detour`] with an explicit bulk extension of `a`.
pub fn detour_with(
    a: &WeightedForm,
    l: usize,
    extension: Option<&WeightedForm>,
) -> Result<WeightedForm> {
    boundary_input(a, "L")?;
    if l == 0 {
        return Err(precondition("L", "needs ℓ ≥ 1"));
    }
    let n = a.space().n() as i64;
    let k = a.degree() as i64;
    expect_weight(a, &(q(k + l as i64) - qr(n, 2)), "L")?;
    let out = along_boundary(a, extension, |t| {
        Ok(y_pow(&d_bar_star(&x(t))?, 2 * l as i64))
    })?;
    Ok(out.with_weight(q(k - l as i64) - qr(n, 2)))
}

fn true_form_gate(a: &WeightedForm, op: &'static str, max_k: i64) -> Result<i64> {
    boundary_input(a, op)?;
    let n = even_n(a, op)?;
    let k = a.degree() as i64;
    if k > max_k {
        return Err(precondition(op, format!("needs k ≤ {max_k}, got {k}")));
    }
    expect_weight(a, &Q::zero(), op)?;
    Ok(n)
}

/// `G_k = q* ι𝒴 y^{n−2k} D̄* X q` on a weight-zero `k`-form, `k ≤ n/2 − 1`.
pub fn gauge(a: &WeightedForm) -> Result<WeightedForm> {
    gauge_with(a, None)
}

pub fn gauge_with(a: &WeightedForm, extension: Option<&WeightedForm>) -> Result<WeightedForm> {
    let n = true_form_gate(a, "G", a.space().n() as i64 / 2 - 1)?;
    let m = n - 2 * a.degree() as i64;
    along_boundary(a, extension, |t| Ok(iota_y(&y_pow(&d_bar_star(&x(t))?, m))))
}

/// `Q_k = q* ι𝒴 X* y^{n−2k} X ε𝒴 q` on a weight-zero `k`-form, `k ≤ n/2`;
/// the result has weight `2k − n`.
pub fn q_operator(a: &WeightedForm) -> Result<WeightedForm> {
    q_operator_with(a, None)
}

pub fn q_operator_with(a: &WeightedForm, extension: Option<&WeightedForm>) -> Result<WeightedForm> {
    let n = true_form_gate(a, "Q", a.space().n() as i64 / 2)?;
    let m = n - 2 * a.degree() as i64;
    along_boundary(a, extension, |t| {
        Ok(iota_y(&x_star(&y_pow(&x(&eps_y(t)), m))))
    })
}

/// `γ_k = −(n − 2k)(n − 2k + 2)(n − 2k − 1)²`.
pub fn gamma(n: i64, k: i64) -> Q {
    let m = n - 2 * k;
    -q(m * (m + 2) * (m - 1) * (m - 1))
}

/// Both sides of `L_k = γ_k δ Q_{k+1} d` on one probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub detour: WeightedForm,
    pub through_q: WeightedForm,
    pub gamma: Q,
}

impl Factorization {
    pub fn holds(&self) -> bool {
        self.detour == self.through_q
    }
}

/// Evaluates `L_k = L^{n/2−k}_k` and `γ_k δ Q_{k+1} d` on a weight-zero
/// `k`-form, `k ≤ n/2 − 1`.
pub fn factor_check(a: &WeightedForm) -> Result<Factorization> {
    let n = true_form_gate(a, "factor", a.space().n() as i64 / 2 - 1)?;
    let k = a.degree() as i64;
    let gamma = gamma(n, k);
    let detour = detour(a, (n / 2 - k) as usize)?;
    let through_q = q_operator(&a.d())?.codiff().scale(&gamma);
    Ok(Factorization {
        detour,
        through_q,
        gamma,
    })
}

/// A versioned set of boundary probes for regression checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeSet {
    pub version: u32,
    pub n: usize,
    pub k: i32,
    /// `k`-forms the operators act on.
    pub forms: Vec<FormJson>,
    /// Functions whose differentials probe `L ∘ d`.
    #[serde(default)]
    pub functions: Vec<FormJson>,
}

fn decode(forms: &[FormJson]) -> Result<Vec<WeightedForm>> {
    forms.iter().map(WeightedForm::try_from).collect()
}

impl ProbeSet {
    pub fn forms(&self) -> Result<Vec<WeightedForm>> {
        decode(&self.forms)
    }

    pub fn functions(&self) -> Result<Vec<WeightedForm>> {
        decode(&self.functions)
    }
}

/// `{"op": "L", "n": 4, "k": 1, "l": 1, "probe": {..}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryRequest {
    pub op: BoundaryOp,
    pub n: usize,
    pub k: i32,
    #[serde(default)]
    pub l: Option<usize>,
    pub probe: FormJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryResponse {
    pub result: FormJson,
    pub verdict: String,
}

impl BoundaryRequest {
    pub fn evaluate(&self) -> Result<BoundaryResponse> {
        let a = WeightedForm::try_from(&self.probe)?;
        if a.space().is_bulk() || a.space().n() != self.n {
            return Err(precondition(
                "boundary",
                format!("probe must live on a boundary of dimension {}", self.n),
            ));
        }
        if !a.is_zero() && a.degree() != self.k {
            return Err(precondition(
                "boundary",
                format!("probe has degree {}, expected {}", a.degree(), self.k),
            ));
        }
        let (result, verdict) = match self.op {
            BoundaryOp::L => {
                let l = self.l.ok_or_else(|| precondition("L", "missing l"))?;
                (detour(&a, l)?, "computed".to_string())
            }
            BoundaryOp::G => (gauge(&a)?, "computed".to_string()),
            BoundaryOp::Q => (q_operator(&a)?, "computed".to_string()),
            BoundaryOp::Factor => {
                let f = factor_check(&a)?;
                let verdict = if f.holds() { "pass" } else { "fail" };
                (f.detour, verdict.to_string())
            }
        };
        Ok(BoundaryResponse {
            result: FormJson::from(&result),
            verdict,
        })
    }
}
