//! Tractor exterior forms in the flat scale and their operator library.
//!
//! A tractor `k`-form of weight `w` is stored as four weighted forms
//! `(north, west, east, south)`. Every operator here uses the flat-scale
//! instantiation of the general formulas (`P = 0`, `J = 0`), and expects
//! its input in the flat scale `τ`; [`structure::transform`] is the only
//! map that leaves it.

pub mod algebraic;
mod form;
pub mod insert;
mod json;
mod module;
mod op;
pub mod projector;
pub mod robin;
pub mod structure;
pub mod tangential;
pub mod thomas;

pub use form::{Scale, TractorForm, EAST, NORTH, SOUTH, WEST};
pub use json::TractorJson;
pub use module::{LogDensity, ProcaModule};
pub use op::TractorOp;

/// Operators are only valid in the flat scale.
pub(crate) fn flat(t: &TractorForm) {
    assert!(
        t.scale().is_flat(),
        "tractor operators act in the flat scale, got {}",
        t.scale().tag()
    );
}
