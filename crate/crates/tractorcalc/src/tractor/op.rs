use std::fmt;
use std::str::FromStr;

use super::{algebraic, projector, robin, structure, tangential, thomas, TractorForm};
use crate::error::{Error, Result};
use crate::num::{q, Q};

/// A named operator on tractor forms, with its degree and weight shift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TractorOp {
    X,
    XStar,
    EpsI,
    IotaI,
    EpsY,
    IotaY,
    H,
    N,
    D,
    DStar,
    DHat,
    DHatStar,
    DTilde,
    DTildeStar,
    D2,
    D2Star,
    D3,
    D3Star,
    Robin,
    YamabeBox,
    Y,
    PiW,
    Pi,
    DT,
    DTStar,
    DBar,
    DBarStar,
    Star,
}

const NAMES: [(TractorOp, &str); 28] = [
    (TractorOp::X, "X"),
    (TractorOp::XStar, "X*"),
    (TractorOp::EpsI, "epsI"),
    (TractorOp::IotaI, "iotaI"),
    (TractorOp::EpsY, "epsY"),
    (TractorOp::IotaY, "iotaY"),
    (TractorOp::H, "h"),
    (TractorOp::N, "N"),
    (TractorOp::D, "D"),
    (TractorOp::DStar, "D*"),
    (TractorOp::DHat, "Dhat"),
    (TractorOp::DHatStar, "Dhat*"),
    (TractorOp::DTilde, "Dtilde"),
    (TractorOp::DTildeStar, "Dtilde*"),
    (TractorOp::D2, "D2"),
    (TractorOp::D2Star, "D2*"),
    (TractorOp::D3, "D3"),
    (TractorOp::D3Star, "D3*"),
    (TractorOp::Robin, "robin"),
    (TractorOp::YamabeBox, "box"),
    (TractorOp::Y, "y"),
    (TractorOp::PiW, "PiW"),
    (TractorOp::Pi, "Pi"),
    (TractorOp::DT, "DT"),
    (TractorOp::DTStar, "DT*"),
    (TractorOp::DBar, "Dbar"),
    (TractorOp::DBarStar, "Dbar*"),
    (TractorOp::Star, "star"),
];

impl TractorOp {
    pub fn all() -> impl Iterator<Item = TractorOp> {
        NAMES.iter().map(|(op, _)| *op)
    }

    pub fn name(self) -> &'static str {
        NAMES
            .iter()
            .find(|(op, _)| *op == self)
            .map(|(_, n)| *n)
            .unwrap_or("?")
    }

    /// `(degree shift, weight shift)`. The star maps degree `k` to
    /// `d + 2 − k` and is reported as `None`.
    pub fn shift(self) -> Option<(i32, Q)> {
        use TractorOp::*;
        let s = match self {
            X => (1, q(1)),
            XStar => (-1, q(1)),
            EpsI => (1, q(0)),
            IotaI => (-1, q(0)),
            EpsY => (1, q(-1)),
            IotaY => (-1, q(-1)),
            H | N | PiW | Pi => (0, q(0)),
            D | DHat | DTilde | DT | DBar => (1, q(-1)),
            DStar | DHatStar | DTildeStar | DTStar | DBarStar => (-1, q(-1)),
            D2 => (2, q(0)),
            D2Star => (-2, q(0)),
            D3 => (3, q(0)),
            D3Star => (-3, q(0)),
            Robin | Y => (0, q(-1)),
            YamabeBox => (0, q(-2)),
            Star => return None,
        };
        Some(s)
    }

    pub fn apply(self, t: &TractorForm) -> Result<TractorForm> {
        use TractorOp::*;
        Ok(match self {
            X => algebraic::x(t),
            XStar => algebraic::x_star(t),
            EpsI => algebraic::eps_i(t),
            IotaI => algebraic::iota_i(t),
            EpsY => algebraic::eps_y(t),
            IotaY => algebraic::iota_y(t),
            H => algebraic::h(t),
            N => algebraic::degree_op(t),
            D => thomas::thomas_d(t),
            DStar => thomas::thomas_d_star(t),
            DHat => thomas::d_hat(t)?,
            DHatStar => thomas::d_hat_star(t)?,
            DTilde => thomas::d_tilde(t),
            DTildeStar => thomas::d_tilde_star(t),
            D2 => thomas::double_d(t),
            D2Star => thomas::double_d_star(t),
            D3 => thomas::triple_d(t),
            D3Star => thomas::triple_d_star(t),
            Robin => robin::robin(t),
            YamabeBox => robin::yamabe_box(t),
            Y => robin::laplace_robin(t),
            PiW => projector::pi_west(t)?,
            Pi => projector::pi(t)?,
            DT => tangential::d_tangential(t)?,
            DTStar => tangential::d_star_tangential(t)?,
            DBar => tangential::d_bar(t)?,
            DBarStar => tangential::d_bar_star(t)?,
            Star => structure::star(t),
        })
    }
}

impl fmt::Display for TractorOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TractorOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NAMES
            .iter()
            .find(|(_, n)| *n == s)
            .map(|(op, _)| *op)
            .ok_or_else(|| Error::Parse(format!("unknown tractor operator {s:?}")))
    }
}
