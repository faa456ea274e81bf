//! Shared fixtures for the benchmark suite in `benches/core.rs`.

use mahler_core::sharp_family::{self, SharpFamilyParams};
use mahler_core::IntPolynomial;

/// Lehmer's degree-10 polynomial, the classical small-measure witness.
pub fn lehmer() -> IntPolynomial {
    IntPolynomial::from_i64(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
}

/// A degree-5 sharp-family member with mixed coefficients,
/// (2x^2 + 3x - 2)(x^3 - 1).
pub fn sharp_degree_5() -> IntPolynomial {
    member(2, 3, -2, 1, 5)
}

/// A degree-16 sharp-family member, (x^6 + 2x^3 - 1)(x^10 - 1).
pub fn sharp_degree_16() -> IntPolynomial {
    member(1, 2, -1, 3, 16)
}

fn member(a: i64, b: i64, c: i64, k: usize, n: usize) -> IntPolynomial {
    let p = SharpFamilyParams::new(a, b, c, k, n).expect("fixture parameters are valid");
    sharp_family::construct(&p).expect("fixture member constructs")
}
