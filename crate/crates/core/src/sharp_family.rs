//! The family (a x^(2k) + b x^k + c)(x^(n-2k) - 1) that attains the
//! nonreciprocal lower bound with equality.  The quadratic-in-x^k factor
//! carries the whole measure (the cyclotomic factor contributes 1), so
//! the measure has the closed form (|b| + sqrt(b^2 - 4ac))/2, and the
//! theorem's bound collapses to the same expression.

use rug::{Complete, Float, Integer};

use crate::error::{Error, Result};
use crate::measure::{self, ModulusClass};
use crate::nonreciprocal;
use crate::poly::IntPolynomial;

/// Parameters of one family member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SharpFamilyParams {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub k: usize,
    pub n: usize,
}

impl SharpFamilyParams {
    pub fn new(a: i64, b: i64, c: i64, k: usize, n: usize) -> Result<Self> {
        let p = SharpFamilyParams { a, b, c, k, n };
        p.validate()?;
        Ok(p)
    }

    /// Checks every defining inequality, reporting the first one that
    /// fails by name.
    pub fn validate(&self) -> Result<()> {
        let fail = |ineq: &str| {
            Err(Error::InvalidParameter(format!(
                "sharp family parameters violate {ineq}: a={}, b={}, c={}, k={}, n={}",
                self.a, self.b, self.c, self.k, self.n
            )))
        };
        if self.k == 0 {
            return fail("k >= 1");
        }
        if self.a <= 0 {
            return fail("a > 0");
        }
        if self.c >= 0 {
            return fail("c < 0");
        }
        let babs = self.b.abs();
        if self.a - babs > -self.c {
            return fail("a - |b| <= -c");
        }
        if -self.c > self.a + babs {
            return fail("-c <= a + |b|");
        }
        if self.n <= 2 * self.k {
            return fail("n > 2k");
        }
        if self.n == 3 * self.k {
            return fail("n != 3k");
        }
        Ok(())
    }
}

/// Expands (a x^(2k) + b x^k + c)(x^(n-2k) - 1).
pub fn construct(p: &SharpFamilyParams) -> Result<IntPolynomial> {
    p.validate()?;
    let mut quad = vec![0i64; 2 * p.k + 1];
    quad[0] = p.c;
    quad[p.k] = p.b;
    quad[2 * p.k] = p.a;
    let mut cyc = vec![0i64; p.n - 2 * p.k + 1];
    cyc[0] = -1;
    cyc[p.n - 2 * p.k] = 1;
    let f = IntPolynomial::from_i64(&quad).multiply(&IntPolynomial::from_i64(&cyc));
    debug_assert_eq!(f.degree(), Some(p.n));
    debug_assert_eq!(f.coeff(p.n), Integer::from(p.a));
    debug_assert_eq!(f.coeff(0), Integer::from(-p.c));
    debug_assert_eq!(f.coeff(p.k), Integer::from(-p.b));
    debug_assert_eq!(f.coeff(p.n - p.k), Integer::from(p.b));
    Ok(f)
}

/// The family's Mahler measure (|b| + sqrt(b^2 - 4ac))/2 in closed form.
pub fn closed_form_measure(a: i64, b: i64, c: i64, precision_bits: u32) -> Result<Float> {
    // k and n do not enter the measure; validate the coefficient part
    // with placeholder k = 1, n = 4.
    SharpFamilyParams { a, b, c, k: 1, n: 4 }.validate()?;
    let prec = precision_bits.max(64);
    let disc = Integer::from(b) * Integer::from(b) - Integer::from(4) * Integer::from(a) * c;
    let mut m = Float::with_val(prec, disc).sqrt();
    m += b.unsigned_abs();
    m /= 2u32;
    Ok(m)
}

/// Comparison of the theorem bound, the closed form, and the numerically
/// computed measure for one family member.
#[derive(Debug, Clone)]
pub struct SharpnessReport {
    pub polynomial: IntPolynomial,
    /// False exactly on the b = 0 boundary, where the member is
    /// reciprocal and the theorem does not apply.
    pub applicable: bool,
    pub bound_value: Float,
    pub closed_form: Float,
    pub numeric_measure: Float,
    pub measure_error: Float,
    /// Largest pairwise difference among the three values above.
    pub max_discrepancy: Float,
    /// Detected index equals the parameter k (vacuously true at b = 0,
    /// where no index exists).
    pub k_matches: bool,
    /// alpha equals |b|(a - c) exactly (vacuously true at b = 0).
    pub alpha_matches: bool,
    /// The squared form of the concluding identity, checked in integer
    /// arithmetic: 2*alpha = denom*|b| and 4*D = denom^2*(b^2 - 4ac).
    pub identity_exact: bool,
    pub inside_count: usize,
    pub on_circle_count: usize,
    pub outside_count: usize,
}

/// Builds a family member and verifies that the theorem bound is
/// attained: bound, closed form, and computed measure must agree.
pub fn verify_sharpness(p: &SharpFamilyParams, precision_bits: u32) -> Result<SharpnessReport> {
    let f = construct(p)?;
    let prec = precision_bits.max(measure::DEFAULT_PRECISION_BITS);
    let profile = nonreciprocal::theorem_bound(&f, precision_bits)?;
    let mahler = measure::mahler_measure(&f, precision_bits)?;
    let closed = closed_form_measure(p.a, p.b, p.c, precision_bits)?;

    let (k_matches, alpha_matches, identity_exact) = if p.b == 0 {
        (profile.k.is_none(), profile.alpha.is_none(), true)
    } else {
        let s = Integer::from(p.a) - Integer::from(p.c);
        let alpha_expected = Integer::from(p.b.unsigned_abs()) * &s;
        let k_ok = profile.k == Some(p.k);
        let alpha_ok = profile.alpha.as_ref() == Some(&alpha_expected);
        let be = &profile.bound_exact;
        let disc =
            Integer::from(p.b) * Integer::from(p.b) - Integer::from(4) * Integer::from(p.a) * p.c;
        let lhs_linear = (&be.alpha * &Integer::from(2)).complete();
        let rhs_linear = (&be.denominator * &Integer::from(p.b.unsigned_abs())).complete();
        let lhs_quad = (&be.discriminant * &Integer::from(4)).complete();
        let rhs_quad = be.denominator.clone().square() * &disc;
        let identity = lhs_linear == rhs_linear && lhs_quad == rhs_quad;
        (k_ok, alpha_ok, identity)
    };

    let mut max_disc = Float::new(prec);
    let values = [&profile.bound_value, &closed, &mahler.measure];
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            let d = Float::with_val(prec, values[i] - values[j]).abs();
            if d > max_disc {
                max_disc = d;
            }
        }
    }

    let mut inside = 0;
    let mut on_circle = 0;
    let mut outside = 0;
    for root in &mahler.roots {
        match root.modulus_class {
            ModulusClass::Inside => inside += 1,
            ModulusClass::OnCircle => on_circle += 1,
            ModulusClass::Outside => outside += 1,
        }
    }

    Ok(SharpnessReport {
        polynomial: f,
        applicable: profile.theorem_applicable,
        bound_value: profile.bound_value,
        closed_form: closed,
        numeric_measure: mahler.measure,
        measure_error: mahler.error_bound,
        max_discrepancy: max_disc,
        k_matches,
        alpha_matches,
        identity_exact,
        inside_count: inside,
        on_circle_count: on_circle,
        outside_count: outside,
    })
}

/// The test/demo parameter grid: a in [1,4], b in [-4,4], c in [-4,-1]
/// subject to the interval constraint, k in {1,2,3}, and n running over
/// {2k+1, ..., 5k+1} minus 3k so that all four expansion shapes occur.
pub fn sampling_grid() -> Vec<SharpFamilyParams> {
    let mut grid = Vec::new();
    for k in 1..=3usize {
        for n in (2 * k + 1)..=(5 * k + 1) {
            if n == 3 * k {
                continue;
            }
            for a in 1..=4i64 {
                for b in -4..=4i64 {
                    for c in -4..=-1i64 {
                        let p = SharpFamilyParams { a, b, c, k, n };
                        if p.validate().is_ok() {
                            grid.push(p);
                        }
                    }
                }
            }
        }
    }
    grid
}
