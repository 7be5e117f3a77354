//! Exact big-integer and big-rational polynomial arithmetic, characteristic
//! and minimum polynomials of integer matrices, and symmetric-function
//! machinery.

mod matrix;
mod poly;
mod symfunc;

pub use matrix::IntMatrix;
pub use poly::{IntPoly, RatPoly};
pub use symfunc::{binomial, krawtchouk, newton_girard, power_sums_pm1};
