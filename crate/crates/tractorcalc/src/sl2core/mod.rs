//! The `sl(2)` algebra generated by `x`, `y` and `h` with `[h, x] = 2x`,
//! `[h, y] = −2y` and `[x, y] = h`, and the series built from it.
//!
//! Elements are kept in normal order `x^a y^b p(h)`, with the `h`
//! polynomial rightmost.

mod hpoly;
mod module;
mod series;
mod special;

pub use hpoly::HPoly;
pub use module::{apply_noseries, Sl2Module};
pub use series::{normal_order, normal_order_by_rewriting, Generator, NOSeries, NormalWord};
pub use special::{
    bessel, casimir_products, casimir_products_closed, casimir_shift, first_kind, frobenius,
    log_constant, log_operator, normal_ordered, second_kind, series_solutions, FrobeniusPair,
    LogOperator, SeriesMode, SeriesOutput,
};
