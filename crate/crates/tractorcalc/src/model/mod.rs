//! The flat-scale Poincaré–Einstein collar and weighted forms on it.
//!
//! Coordinates are `(r, x1, .., xn)` with metric `dr^2 + dx^2`. The defining
//! density is `σ = r`, the conormal is `dr`, and all curvature data vanish, so
//! every operator reduces to constant-coefficient calculus. A boundary form
//! uses the same storage over `x1..xn` only.

mod extension;
mod form;
mod json;
mod normals;

pub use extension::{divergence_extend, ExtensionMethod};
pub use form::WeightedForm;
pub use json::FormJson;
pub use normals::{eps_tilde, iota_tilde, l_hat};

use std::fmt;

/// The coordinate space a form lives on: the bulk collar of dimension
/// `n + 1`, or its boundary of dimension `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Space {
    n: usize,
    bulk: bool,
}

impl Space {
    /// Bulk collar of dimension `d`; the boundary has dimension `d - 1`.
    pub fn bulk(d: usize) -> Space {
        assert!(d >= 2, "bulk dimension must be at least 2");
        Space {
            n: d - 1,
            bulk: true,
        }
    }

    pub fn boundary(n: usize) -> Space {
        Space { n, bulk: false }
    }

    pub fn is_bulk(&self) -> bool {
        self.bulk
    }

    /// Dimension of the space itself (`d` for the bulk, `n` for the boundary).
    pub fn dim(&self) -> usize {
        if self.bulk {
            self.n + 1
        } else {
            self.n
        }
    }

    /// Dimension of the boundary.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Coordinate indices; 0 is `r` and only occurs in the bulk.
    pub fn coords(&self) -> std::ops::RangeInclusive<usize> {
        if self.bulk {
            0..=self.n
        } else {
            1..=self.n
        }
    }

    pub fn boundary_space(&self) -> Space {
        Space::boundary(self.n)
    }

    pub fn bulk_space(&self) -> Space {
        Space::bulk(self.n + 1)
    }

    /// Bit mask of all coordinates.
    pub fn full_mask(&self) -> u32 {
        self.coords().fold(0, |m, a| m | (1 << a))
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bulk {
            write!(f, "bulk(d={})", self.dim())
        } else {
            write!(f, "boundary(n={})", self.n)
        }
    }
}

pub(crate) fn coord_name(a: usize) -> String {
    if a == 0 {
        "r".to_string()
    } else {
        format!("x{a}")
    }
}
