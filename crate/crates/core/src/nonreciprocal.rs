//! Detection of the first endpoint-proportionality failure (the index k),
//! the discrepancy magnitude alpha, and the lower bound
//!
//! ```text
//!             alpha + sqrt(alpha^2 + 4 (|a_0|+|a_n|)^2 |a_0 a_n|)
//!   M(f)  >=  --------------------------------------------------
//!                          2 (|a_0|+|a_n|)
//! ```
//!
//! which applies whenever `2k <= n`.  The bound's ingredients are kept as
//! exact integers so sharpness and triviality questions can be settled by
//! squaring instead of floating-point comparison.

use rug::{Complete, Float, Integer};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// The bound in exact form: `(alpha + sqrt(discriminant)) / denominator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundExact {
    pub alpha: Integer,
    pub discriminant: Integer,
    pub denominator: Integer,
}

impl BoundExact {
    /// The bound rendered as a float at the given precision.
    pub fn value(&self, precision_bits: u32) -> Float {
        let prec = precision_bits.max(64);
        let sqrt = Float::with_val(prec, &self.discriminant).sqrt();
        let num = Float::with_val(prec, &self.alpha + sqrt);
        Float::with_val(prec, num / &self.denominator)
    }

    /// Whether the bound strictly exceeds the integer `threshold`,
    /// decided in exact integer arithmetic by squaring.
    pub fn exceeds(&self, threshold: &Integer) -> bool {
        // (alpha + sqrt(D)) / denom > t  <=>  sqrt(D) > denom*t - alpha
        let rhs = (&self.denominator * threshold).complete() - &self.alpha;
        if rhs < 0 {
            return true;
        }
        self.discriminant > rhs.square()
    }
}

/// Outcome of comparing the bound against the trivial floor
/// `max(|a_0|, |a_n|)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Triviality {
    Nontrivial,
    Trivial,
    NotApplicable,
}

impl Triviality {
    pub fn as_str(self) -> &'static str {
        match self {
            Triviality::Nontrivial => "nontrivial",
            Triviality::Trivial => "trivial",
            Triviality::NotApplicable => "not_applicable",
        }
    }
}

/// Everything the bound evaluation produces for one polynomial.
#[derive(Debug, Clone)]
pub struct NonreciprocalProfile {
    /// First index where `a_n a_i = a_0 a_{n-i}` fails; `None` when the
    /// endpoints stay proportional all the way (reciprocal-like inputs).
    pub k: Option<usize>,
    /// `|a_k a_n - a_0 a_{n-k}|`, absent when `k` is.
    pub alpha: Option<Integer>,
    pub a0: Integer,
    pub an: Integer,
    /// `k` exists and `2k <= n`.
    pub theorem_applicable: bool,
    /// The bound's exact ingredients (alpha taken as 0 when `k` is absent,
    /// which degenerates the formula to `sqrt(|a_0 a_n|)`).
    pub bound_exact: BoundExact,
    pub bound_value: Float,
}

fn validate(f: &IntPolynomial) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.constant().is_none_or(|c| c.is_zero()) {
        return Err(Error::ConstantTermZero);
    }
    Ok(())
}

/// The smallest index `i` in `[1, n]` with `a_n a_i != a_0 a_{n-i}`, or
/// `None` if the proportionality holds everywhere (which covers all
/// reciprocal polynomials).
pub fn detect_k(f: &IntPolynomial) -> Result<Option<usize>> {
    validate(f)?;
    let n = f.degree().unwrap();
    if n == 0 {
        return Err(Error::InvalidParameter(
            "degree must be at least 1".to_string(),
        ));
    }
    let a0 = f.constant().unwrap();
    let an = f.leading().unwrap();
    for i in 1..=n {
        let lhs = (an * &f.coeff(i)).complete();
        let rhs = (a0 * &f.coeff(n - i)).complete();
        if lhs != rhs {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// `alpha = |a_k a_n - a_0 a_{n-k}|` for the detected index `k`.  The
/// passed `k` must match `detect_k(f)`.
pub fn compute_alpha(f: &IntPolynomial, k: usize) -> Result<Integer> {
    let detected = detect_k(f)?;
    if detected != Some(k) {
        return Err(Error::InvalidParameter(format!(
            "k = {k} does not match the detected index {detected:?}"
        )));
    }
    let n = f.degree().unwrap();
    let a0 = f.constant().unwrap();
    let an = f.leading().unwrap();
    let alpha = ((&f.coeff(k) * an).complete() - (a0 * &f.coeff(n - k)).complete()).abs();
    debug_assert!(alpha > 0u32);
    Ok(alpha)
}

/// Evaluates the lower bound and assembles the full profile.  The profile
/// is populated even when the theorem does not apply (no index, or
/// `2k > n`); `theorem_applicable` records which case holds.
pub fn theorem_bound(f: &IntPolynomial, precision_bits: u32) -> Result<NonreciprocalProfile> {
    validate(f)?;
    let n = f.degree().unwrap();
    let a0 = f.constant().unwrap().clone();
    let an = f.leading().unwrap().clone();
    let k = if n == 0 { None } else { detect_k(f)? };
    let alpha = match k {
        Some(k) => Some(compute_alpha(f, k)?),
        None => None,
    };
    let alpha_for_bound = alpha.clone().unwrap_or_default();
    let endpoint_sum = (a0.clone().abs() + an.clone().abs()).abs();
    let discriminant = alpha_for_bound.clone().square()
        + endpoint_sum.clone().square() * 4u32 * (&a0 * &an).complete().abs();
    let bound_exact = BoundExact {
        alpha: alpha_for_bound,
        discriminant,
        denominator: endpoint_sum * 2u32,
    };
    let bound_value = bound_exact.value(precision_bits);
    Ok(NonreciprocalProfile {
        theorem_applicable: k.is_some_and(|k| 2 * k <= n),
        k,
        alpha,
        a0,
        an,
        bound_exact,
        bound_value,
    })
}

/// Classifies the bound against the trivial floor `max(|a_0|, |a_n|)`:
/// nontrivial exactly when the theorem applies and
/// `alpha > |a_0^2 - a_n^2|`.
pub fn classify_triviality(profile: &NonreciprocalProfile) -> Triviality {
    if !profile.theorem_applicable {
        return Triviality::NotApplicable;
    }
    let alpha = profile.alpha.as_ref().expect("applicable implies k");
    let gap = ((&profile.a0 * &profile.a0).complete() - (&profile.an * &profile.an).complete())
        .abs();
    if *alpha > gap {
        Triviality::Nontrivial
    } else {
        Triviality::Trivial
    }
}
