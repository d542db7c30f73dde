//! JSON encoding of tractor forms.
//!
//! ```json
//! {"dim": 5, "boundary": false, "k": 1, "w": "0", "scale": "flat-tau",
//!  "slots": {"north": {..}, "west": {..}, "east": {..}, "south": {..}}}
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Scale, TractorForm};
use crate::error::{Error, Result};
use crate::model::{FormJson, Space, WeightedForm};
use crate::num::{format_q, parse_q};

const SLOT_NAMES: [&str; 4] = ["north", "west", "east", "south"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TractorJson {
    pub dim: usize,
    pub boundary: bool,
    pub k: i32,
    pub w: String,
    pub scale: String,
    pub slots: BTreeMap<String, FormJson>,
}

impl From<&TractorForm> for TractorJson {
    fn from(t: &TractorForm) -> Self {
        let slots = SLOT_NAMES
            .iter()
            .zip(t.slots())
            .map(|(name, s)| (name.to_string(), FormJson::from(s)))
            .collect();
        TractorJson {
            dim: t.space().dim(),
            boundary: !t.space().is_bulk(),
            k: t.degree(),
            w: format_q(t.weight()),
            scale: t.scale().tag(),
            slots,
        }
    }
}

fn parse_scale(tag: &str) -> Result<Scale> {
    if tag == "flat-tau" {
        return Ok(Scale::flat());
    }
    let inner = tag
        .strip_prefix("flat-tau+grad(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("unknown scale tag {tag:?}")))?;
    let grad = inner.split(',').map(parse_q).collect::<Result<Vec<_>>>()?;
    Ok(Scale::from_gradient(grad))
}

impl TryFrom<&TractorJson> for TractorForm {
    type Error = Error;

    fn try_from(j: &TractorJson) -> Result<Self> {
        let space = if j.boundary {
            Space::boundary(j.dim)
        } else {
            if j.dim < 2 {
                return Err(Error::Parse(format!("bulk dimension {} too small", j.dim)));
            }
            Space::bulk(j.dim)
        };
        let w = parse_q(&j.w)?;
        if j.slots.keys().any(|k| !SLOT_NAMES.contains(&k.as_str())) {
            return Err(Error::Parse(format!(
                "slot names must be among {SLOT_NAMES:?}"
            )));
        }
        let empty = TractorForm::zero(space, j.k, w.clone());
        let mut slots: Vec<WeightedForm> = Vec::with_capacity(4);
        for (i, name) in SLOT_NAMES.iter().enumerate() {
            match j.slots.get(*name) {
                Some(f) => slots.push(WeightedForm::try_from(f)?),
                None => slots.push(empty.slot(i).clone()),
            }
        }
        let slots: [WeightedForm; 4] = slots.try_into().expect("four slots");
        let t = TractorForm::try_from_slots(space, j.k, w, slots)?;
        Ok(t.with_scale(parse_scale(&j.scale)?))
    }
}
