//! Canonical JSON encoding of weighted forms.
//!
//! ```json
//! {"dim": 5, "boundary": false, "degree": 1, "weight": "-1/3", "offset": "0",
//!  "components": {"x1": "x2", "r,x2": "1/2*r*x1"}}
//! ```
//!
//! Keys name the coordinates of each index set in increasing order, joined by
//! commas; the empty key is the 0-form component. Keys are emitted in string
//! order. When some component involves a fractional or negative power of
//! `r` or a `log r`, every component is divided by `r^offset`, where
//! `offset` is the lowest power present; otherwise the offset is zero.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{form::mask_name, Space, WeightedForm};
use crate::error::{Error, Result};
use crate::num::{exp_to_q, format_q, parse_q, q_to_exp, Exp};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    pub dim: usize,
    pub boundary: bool,
    pub degree: i32,
    pub weight: String,
    #[serde(default = "zero_string")]
    pub offset: String,
    pub components: BTreeMap<String, String>,
}

fn zero_string() -> String {
    "0".to_string()
}

impl From<&WeightedForm> for FormJson {
    fn from(form: &WeightedForm) -> Self {
        let offset = if form.is_polynomial() {
            Exp::zero()
        } else {
            form.order().unwrap_or_else(Exp::zero)
        };
        let components = form
            .components()
            .iter()
            .map(|(&m, p)| (mask_name(m), p.mul_r_pow(-offset).to_string()))
            .collect();
        FormJson {
            dim: form.space().dim(),
            boundary: !form.space().is_bulk(),
            degree: form.degree(),
            weight: format_q(form.weight()),
            offset: format_q(&exp_to_q(&offset)),
            components,
        }
    }
}

impl TryFrom<&FormJson> for WeightedForm {
    type Error = Error;

    fn try_from(j: &FormJson) -> Result<WeightedForm> {
        let space = if j.boundary {
            Space::boundary(j.dim)
        } else {
            if j.dim < 2 {
                return Err(Error::Parse("bulk dimension must be at least 2".into()));
            }
            Space::bulk(j.dim)
        };
        let in_range = !j.degree.is_negative() && j.degree as usize <= space.dim();
        // zero forms of any degree occur as empty tractor slots
        if !in_range && !j.components.is_empty() {
            return Err(Error::Parse(format!("degree {} out of range", j.degree)));
        }
        let offset = q_to_exp(&parse_q(&j.offset)?)?;
        let mut comps = Vec::new();
        for (key, value) in &j.components {
            let mask = parse_key(key, space)?;
            let f: Poly = value.parse()?;
            if f.max_x() > space.n() {
                return Err(Error::Parse(format!(
                    "component {key:?} uses a coordinate beyond x{}",
                    space.n()
                )));
            }
            if !space.is_bulk() && !f.is_boundary() {
                return Err(Error::Parse(format!(
                    "boundary component {key:?} depends on r"
                )));
            }
            comps.push((mask, f.mul_r_pow(offset)));
        }
        WeightedForm::from_components(space, j.degree, parse_q(&j.weight)?, comps)
    }
}

fn parse_key(key: &str, space: Space) -> Result<u32> {
    let mut mask = 0u32;
    if key.trim().is_empty() {
        return Ok(0);
    }
    let mut last: Option<usize> = None;
    for name in key.split(',') {
        let name = name.trim();
        let a = if name == "r" {
            0
        } else {
            name.strip_prefix('x')
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&i| i >= 1)
                .ok_or_else(|| Error::Parse(format!("bad index name {name:?}")))?
        };
        if !space.coords().contains(&a) {
            return Err(Error::Parse(format!("index {name:?} not in {space}")));
        }
        if last.is_some_and(|l| l >= a) {
            return Err(Error::Parse(format!(
                "indices in {key:?} must be strictly increasing"
            )));
        }
        last = Some(a);
        mask |= 1 << a;
    }
    Ok(mask)
}
