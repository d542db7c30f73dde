//! JSON encoding of problems and solutions.
//!
//! ```json
//! {"d": 5, "k": 1, "w0": "-1/3", "order": 6, "regime": "auto",
//!  "data": {"dim": 4, "boundary": true, "degree": 1, "weight": "2/3",
//!           "components": {"x1": "1"}}}
//! ```
//!
//! For the dual true-form weight `data` is `{"a": .., "phi": ..}`.

use serde::{Deserialize, Serialize};

use super::{BoundaryData, Problem, Regime, ResidualReport, SeriesSolution};
use crate::error::{precondition, Error, Result};
use crate::model::{FormJson, WeightedForm};
use crate::num::{exp_to_q, format_q, parse_q, q_to_exp};
use crate::tractor::{TractorForm, TractorJson};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DataJson {
    Pair { a: FormJson, phi: FormJson },
    Form(FormJson),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemJson {
    pub d: usize,
    pub k: i32,
    pub w0: String,
    #[serde(default = "default_order")]
    pub order: usize,
    #[serde(default = "auto")]
    pub regime: String,
    pub data: DataJson,
}

fn default_order() -> usize {
    6
}

fn auto() -> String {
    "auto".to_string()
}

impl ProblemJson {
    /// Decode and validate; an explicit regime must match the detected one.
    pub fn to_problem(&self) -> Result<Problem> {
        let data = match &self.data {
            DataJson::Form(a) => BoundaryData::Form(WeightedForm::try_from(a)?),
            DataJson::Pair { a, phi } => BoundaryData::Pair {
                a: WeightedForm::try_from(a)?,
                phi: WeightedForm::try_from(phi)?,
            },
        };
        let problem = Problem::new(self.d, self.k, parse_q(&self.w0)?, self.order, data)?;
        if self.regime != "auto" {
            let wanted = Regime::parse(&self.regime)?;
            let found = problem.regime()?;
            if wanted != found {
                return Err(precondition(
                    "problem",
                    format!("regime {wanted} requested, data is in regime {found}"),
                ));
            }
        }
        Ok(problem)
    }
}

impl From<&Problem> for ProblemJson {
    fn from(p: &Problem) -> Self {
        let data = match p.data() {
            BoundaryData::Form(a) => DataJson::Form(FormJson::from(a)),
            BoundaryData::Pair { a, phi } => DataJson::Pair {
                a: FormJson::from(a),
                phi: FormJson::from(phi),
            },
        };
        ProblemJson {
            d: p.d(),
            k: p.k(),
            w0: format_q(p.w0()),
            order: p.order(),
            regime: auto(),
            data,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionJson {
    pub d: usize,
    pub k: i32,
    pub w0: String,
    pub regime: Regime,
    pub alpha: String,
    pub order: usize,
    pub coeffs: Vec<TractorJson>,
    pub log_coeffs: Vec<TractorJson>,
    pub section: TractorJson,
    pub report: ResidualReport,
}

impl From<&SeriesSolution> for SolutionJson {
    fn from(s: &SeriesSolution) -> Self {
        SolutionJson {
            d: s.d,
            k: s.k,
            w0: format_q(&s.w0),
            regime: s.regime,
            alpha: format_q(&exp_to_q(&s.alpha)),
            order: s.order,
            coeffs: s.coeffs().iter().map(TractorJson::from).collect(),
            log_coeffs: s.log_coeffs().iter().map(TractorJson::from).collect(),
            section: TractorJson::from(&s.section),
            report: s.report(),
        }
    }
}

impl TryFrom<&SolutionJson> for SeriesSolution {
    type Error = Error;

    fn try_from(j: &SolutionJson) -> Result<Self> {
        Ok(SeriesSolution {
            d: j.d,
            k: j.k,
            w0: parse_q(&j.w0)?,
            regime: j.regime,
            alpha: q_to_exp(&parse_q(&j.alpha)?)?,
            order: j.order,
            section: TractorForm::try_from(&j.section)?,
        })
    }
}
