//! Shared inputs for the benchmarks.

use newtonpoly::{parse_poly_infer, SparsePoly};

pub const PLANAR: &[&str] = &["x^2*y^2", "(x - y)^4", "x^3 + x*y^2 + y^5"];
pub const SPATIAL: &[&str] = &[
    "x^4 + x^2 + y^2 + z^2",
    "x^2 + y^2 - z^2",
    "x^4 + y^4 - z^4",
];

pub fn poly(text: &str) -> SparsePoly {
    parse_poly_infer(text, 1).expect("benchmark inputs parse").0
}
