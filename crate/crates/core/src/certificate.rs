//! Per-polynomial reconstruction of the proof of the lower bound: the
//! power series q of f/f*, the inverse series of f*, the sign epsilon at
//! z = 1, the Blaschke factors g (inside roots) and h (outside roots),
//! and a battery of named identity/inequality checks tying them together
//! ending in the quadratic inequality that yields the bound.
//!
//! The q and e series use exact rational arithmetic (denominators are
//! powers of a_n), so the structural checks are exact; everything that
//! involves roots is numerical with a stated tolerance.

use rug::{Complete, Complex, Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::measure::{self, ModulusClass};
use crate::nonreciprocal;
use crate::poly::IntPolynomial;

/// Default series truncation for a detected index k.
pub fn default_truncation(k: usize) -> usize {
    (2 * k).max(16)
}

/// Names of the verification steps inside a certificate, in the order the
/// proof uses them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckName {
    /// q_i = 0 for 1 <= i < k and q_k != 0 (exact).
    Vanish,
    /// q_k = a_k/a_n - a_0 a_{n-k} / a_n^2 (exact).
    Qk,
    /// f* times the truncated inverse series is 1 mod z^(L+1) (exact).
    Inv,
    /// b = (c * q) as truncated series, i.e. g = h G.
    GhRatio,
    /// b_i = c_i q_0 for i < k and b_k = c_0 q_k + c_k q_0.
    Link,
    /// c_0 = |a_n| / M(f).
    Eq1,
    /// |b_i| <= 1 - |b_0|^2 for 1 <= i <= L (Wiener).
    WienerG,
    /// |c_i| <= 1 - |c_0|^2 for 1 <= i <= L (Wiener).
    WienerH,
    /// |c_0 q_k| <= |b_k| + |c_k| q_0.
    Eq2,
    /// M |a_k - a_0 a_{n-k}/a_n| <= (q_0 + 1)(M^2 - a_0 a_n).
    Final,
    /// |g| = |h| = 1 sampled on the unit circle.
    UnitModulus,
    /// The product of -alpha_i over on-circle roots equals epsilon.
    OnCircleEpsilon,
}

impl CheckName {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::Vanish => "VANISH",
            CheckName::Qk => "QK",
            CheckName::Inv => "INV",
            CheckName::GhRatio => "GH-RATIO",
            CheckName::Link => "LINK",
            CheckName::Eq1 => "EQ1",
            CheckName::WienerG => "WIENER-G",
            CheckName::WienerH => "WIENER-H",
            CheckName::Eq2 => "EQ2",
            CheckName::Final => "FINAL",
            CheckName::UnitModulus => "UNIT-MODULUS",
            CheckName::OnCircleEpsilon => "ON-CIRCLE-EPSILON",
        }
    }
}

/// Outcome of one named check.  Exact (rational-arithmetic) checks carry
/// tolerance 0 and a residual of 0 or 1; numeric checks carry the actual
/// residual magnitude.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: CheckName,
    pub passed: bool,
    pub residual: Float,
    pub tolerance: Float,
}

/// The assembled proof data for one polynomial.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub truncation: usize,
    pub k: usize,
    /// Power series of f/f*, exact.
    pub q: Vec<Rational>,
    /// Power series of 1/f*, exact.
    pub e: Vec<Rational>,
    /// -1 when f has a zero of odd multiplicity at z = 1, else +1.
    pub epsilon: i32,
    /// Taylor coefficients of the inside Blaschke product g.
    pub b: Vec<Complex>,
    /// Taylor coefficients of the outside Blaschke product h.
    pub c: Vec<Complex>,
    pub checks: Vec<CheckResult>,
}

impl Certificate {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: CheckName) -> &CheckResult {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .expect("every named check is always present")
    }
}

fn validate_endpoints(f: &IntPolynomial) -> Result<(Integer, Integer, usize)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let a0 = f.constant().unwrap().clone();
    if a0.is_zero() {
        return Err(Error::ConstantTermZero);
    }
    let an = f.leading().unwrap().clone();
    if (&a0 * &an).complete() <= 0 {
        return Err(Error::NotNormalized);
    }
    Ok((a0, an, f.degree().unwrap()))
}

/// Coefficients q_0..q_L of the power series of f/f*, by the recurrence
/// `a_n q_j = (a_j - q_0 d_j) - sum_{i=1}^{j-1} d_i q_{j-i}` with
/// `q_0 = a_0/a_n`, where d_i = a_{n-i} are the coefficients of f*.
pub fn q_series(f: &IntPolynomial, truncation: usize) -> Result<Vec<Rational>> {
    let (a0, an, n) = validate_endpoints(f)?;
    let d = |i: usize| -> Integer {
        if i <= n {
            f.coeff(n - i)
        } else {
            Integer::new()
        }
    };
    let a = |i: usize| -> Integer { f.coeff(i) };
    let mut q = Vec::with_capacity(truncation + 1);
    q.push(Rational::from((a0, an.clone())));
    for j in 1..=truncation {
        let mut acc = Rational::from(a(j)) - (&q[0] * &d(j)).complete();
        for i in 1..j {
            acc -= (&q[j - i] * &d(i)).complete();
        }
        acc /= Rational::from(&an);
        q.push(acc);
    }
    Ok(q)
}

/// Coefficients e_0..e_L of the power series of 1/fstar, exact.
pub fn inverse_series(fstar: &IntPolynomial, truncation: usize) -> Result<Vec<Rational>> {
    if fstar.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d0 = fstar.constant().unwrap().clone();
    if d0.is_zero() {
        return Err(Error::ConstantTermZero);
    }
    let mut e = Vec::with_capacity(truncation + 1);
    e.push(Rational::from((Integer::from(1), d0.clone())));
    for j in 1..=truncation {
        let mut acc = Rational::new();
        for i in 1..=j {
            acc += (&e[j - i] * &fstar.coeff(i)).complete();
        }
        acc /= -Rational::from(&d0);
        e.push(acc);
    }
    Ok(e)
}

/// -1 if f vanishes to odd multiplicity at z = 1, +1 otherwise.
pub fn epsilon_sign(f: &IntPolynomial) -> Result<i32> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(if f.multiplicity_at_one() % 2 == 1 {
        -1
    } else {
        1
    })
}

/// The series of one inside-root Blaschke factor (z-a)/(1 - conj(a) z):
/// starts at -a, then conj(a)^(m-1) (1-|a|^2) z^m.
fn inside_factor(alpha: &Complex, l: usize, prec: u32) -> Vec<Complex> {
    let conj = alpha.clone().conj();
    let mut one_minus = Complex::with_val(prec, 1u32);
    one_minus -= Complex::with_val(prec, alpha * &conj);
    let mut s = Vec::with_capacity(l + 1);
    s.push(Complex::with_val(prec, -alpha.clone()));
    let mut pw = Complex::with_val(prec, 1u32);
    for _ in 1..=l {
        s.push(Complex::with_val(prec, &pw * &one_minus));
        pw *= &conj;
    }
    s
}

/// The series of one outside-root factor (1 - conj(a) z)/(z - a):
/// starts at -1/a, then (|a|^2 - 1) / a^(m+1) z^m.
fn outside_factor(alpha: &Complex, l: usize, prec: u32) -> Vec<Complex> {
    let conj = alpha.clone().conj();
    let inv = Complex::with_val(prec, alpha.clone().recip());
    let mut norm_minus = Complex::with_val(prec, alpha * &conj);
    norm_minus -= 1u32;
    let mut s = Vec::with_capacity(l + 1);
    s.push(Complex::with_val(prec, -inv.clone()));
    let mut pw = inv.clone();
    for _ in 1..=l {
        pw *= &inv;
        s.push(Complex::with_val(prec, &norm_minus * &pw));
    }
    s
}

fn series_mul(a: &[Complex], b: &[Complex], l: usize, prec: u32) -> Vec<Complex> {
    let mut out = vec![Complex::new(prec); l + 1];
    for (i, ai) in a.iter().enumerate().take(l + 1) {
        for (j, bj) in b.iter().enumerate().take(l + 1 - i) {
            out[i + j] += Complex::with_val(prec, ai * bj);
        }
    }
    out
}

fn cabs(prec: u32, z: &Complex) -> Float {
    let re2 = Float::with_val(prec, z.real() * z.real());
    let im2 = Float::with_val(prec, z.imag() * z.imag());
    Float::with_val(prec, re2 + im2).sqrt()
}

/// Splits f into Blaschke data: Taylor coefficients of g = eps * product
/// over inside roots and h = product over outside roots, plus epsilon.
/// On-circle roots join neither product — each contributes the constant
/// -alpha_i, and the proof identifies that product with epsilon (checked
/// separately by the certificate).  Both series are flipped by the sign
/// of h(0) so that c_0 = |h(0)| is nonnegative, matching the way the
/// proof reads h(0); the ratio g/h is untouched by the flip.
pub fn blaschke_split(
    f: &IntPolynomial,
    precision_bits: u32,
    truncation: usize,
) -> Result<(Vec<Complex>, Vec<Complex>, i32)> {
    let split = blaschke_split_full(f, precision_bits, truncation)?;
    Ok((split.g, split.h, split.epsilon))
}

/// Result of `blaschke_split_full`: the two series, the sign at z = 1,
/// and the classified roots for reuse without a second root-finding pass.
struct SplitData {
    g: Vec<Complex>,
    h: Vec<Complex>,
    epsilon: i32,
    roots: Vec<measure::RootApprox>,
}

fn blaschke_split_full(
    f: &IntPolynomial,
    precision_bits: u32,
    truncation: usize,
) -> Result<SplitData> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.constant().is_none_or(|c| c.is_zero()) {
        return Err(Error::ConstantTermZero);
    }
    let l = truncation;
    let prec = precision_bits.max(measure::DEFAULT_PRECISION_BITS) + 64;
    let eps = epsilon_sign(f)?;
    let roots = measure::find_roots(f, precision_bits)?;
    let mut g = vec![Complex::new(prec); l + 1];
    g[0] = Complex::with_val(prec, eps);
    let mut h = vec![Complex::new(prec); l + 1];
    h[0] = Complex::with_val(prec, 1u32);
    for root in &roots {
        match root.modulus_class {
            ModulusClass::Inside => {
                g = series_mul(&g, &inside_factor(&root.value, l, prec), l, prec);
            }
            ModulusClass::Outside => {
                h = series_mul(&h, &outside_factor(&root.value, l, prec), l, prec);
            }
            ModulusClass::OnCircle => {}
        }
    }
    // h(0) is real for real input; normalize its sign into both series so
    // that c_0 >= 0.
    if h[0].real().is_sign_negative() {
        for v in g.iter_mut().chain(h.iter_mut()) {
            *v = Complex::with_val(prec, -v.clone());
        }
    }
    Ok(SplitData {
        g,
        h,
        epsilon: eps,
        roots,
    })
}

/// Builds the full certificate.  The polynomial is normalized internally
/// (endpoint signs made positive, which preserves k, alpha, and the
/// measure), so any input with nonzero constant term and a detected index
/// k with 2k <= n is accepted.
pub fn build_certificate(
    f: &IntPolynomial,
    truncation: usize,
    precision_bits: u32,
) -> Result<Certificate> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.constant().is_none_or(|c| c.is_zero()) {
        return Err(Error::ConstantTermZero);
    }
    let f = f.normalize_signs()?;
    let n = f.degree().unwrap();
    let k = match nonreciprocal::detect_k(&f)? {
        Some(k) if 2 * k <= n => k,
        Some(k) => {
            return Err(Error::NotApplicable(format!(
                "detected index k = {k} but 2k > n = {n}"
            )))
        }
        None => {
            return Err(Error::NotApplicable(
                "no discrepancy index: polynomial is proportionally reciprocal".to_string(),
            ))
        }
    };
    let l = truncation;
    if l < k {
        return Err(Error::InvalidParameter(format!(
            "truncation {l} is below the detected index {k}"
        )));
    }
    let prec = precision_bits.max(measure::DEFAULT_PRECISION_BITS) + 64;
    let a0 = f.constant().unwrap().clone();
    let an = f.leading().unwrap().clone();

    let q = q_series(&f, l)?;
    let fstar = f.reciprocal()?;
    let e = inverse_series(&fstar, l)?;
    let split = blaschke_split_full(&f, precision_bits, l)?;
    let (b, c, epsilon, roots) = (split.g, split.h, split.epsilon, split.roots);
    let mahler = measure::mahler_measure(&f, precision_bits)?;

    let mut tolerance = Float::with_val(prec, Float::i_exp(1, -(precision_bits as i32 / 4)));
    tolerance *= l as u32;
    let zero = Float::new(prec);
    let mut checks = Vec::new();
    let mut exact = |name: CheckName, ok: bool| {
        checks.push(CheckResult {
            name,
            passed: ok,
            residual: Float::with_val(prec, if ok { 0 } else { 1 }),
            tolerance: zero.clone(),
        });
    };

    // VANISH: q_i = 0 exactly below k, q_k nonzero.
    let vanish = q[1..k].iter().all(|v| *v == 0u32) && q[k] != 0u32;
    exact(CheckName::Vanish, vanish);

    // QK: q_k = a_k/a_n - a_0 a_{n-k} / a_n^2 exactly.
    let qk_expected = Rational::from((f.coeff(k), an.clone()))
        - Rational::from(((&a0 * &f.coeff(n - k)).complete(), an.clone().square()));
    exact(CheckName::Qk, q[k] == qk_expected);

    // INV: f* . e = 1 mod z^(L+1) exactly.
    let mut inv_ok = true;
    for j in 0..=l {
        let mut acc = Rational::new();
        for i in 0..=j {
            acc += (&e[j - i] * &fstar.coeff(i)).complete();
        }
        let want = u32::from(j == 0);
        if acc != want {
            inv_ok = false;
            break;
        }
    }
    exact(CheckName::Inv, inv_ok);

    let mut numeric = |name: CheckName, residual: Float| {
        checks.push(CheckResult {
            name,
            passed: residual <= tolerance,
            residual,
            tolerance: tolerance.clone(),
        });
    };

    let qf: Vec<Float> = q.iter().map(|v| Float::with_val(prec, v)).collect();

    // GH-RATIO: b_i = sum_j c_j q_{i-j}, i.e. g = h G as truncated series.
    let mut gh_res = Float::new(prec);
    for i in 0..=l {
        let mut acc = Complex::new(prec);
        for j in 0..=i {
            acc += Complex::with_val(prec, &c[j] * &qf[i - j]);
        }
        acc -= &b[i];
        let r = cabs(prec, &acc);
        if r > gh_res {
            gh_res = r;
        }
    }
    numeric(CheckName::GhRatio, gh_res);

    // LINK: b_i = c_i q_0 for 0 <= i < k and b_k = c_0 q_k + c_k q_0.
    let mut link_res = Float::new(prec);
    for i in 0..k {
        let mut acc = Complex::with_val(prec, &c[i] * &qf[0]);
        acc -= &b[i];
        let r = cabs(prec, &acc);
        if r > link_res {
            link_res = r;
        }
    }
    {
        let mut acc = Complex::with_val(prec, &c[0] * &qf[k]);
        acc += Complex::with_val(prec, &c[k] * &qf[0]);
        acc -= &b[k];
        let r = cabs(prec, &acc);
        if r > link_res {
            link_res = r;
        }
    }
    numeric(CheckName::Link, link_res);

    // EQ1: c_0 = |a_n| / M(f).
    let ratio = Float::with_val(prec, an.clone().abs()) / &mahler.measure;
    let mut eq1 = Complex::with_val(prec, ratio);
    eq1 -= &c[0];
    numeric(CheckName::Eq1, cabs(prec, &eq1));

    // WIENER-G / WIENER-H: coefficient bounds 1 - |gamma_0|^2.
    let wiener = |series: &[Complex]| -> Float {
        let head = cabs(prec, &series[0]);
        let cap = Float::with_val(prec, 1u32) - Float::with_val(prec, &head * &head);
        let mut worst = Float::with_val(prec, -1);
        for v in &series[1..] {
            let excess = Float::with_val(prec, cabs(prec, v) - &cap);
            if excess > worst {
                worst = excess;
            }
        }
        worst.max(&Float::new(prec))
    };
    numeric(CheckName::WienerG, wiener(&b));
    numeric(CheckName::WienerH, wiener(&c));

    // EQ2: |c_0 q_k| <= |b_k| + |c_k| q_0.
    let lhs = Float::with_val(prec, cabs(prec, &c[0]) * qf[k].clone().abs());
    let rhs = cabs(prec, &b[k]) + Float::with_val(prec, cabs(prec, &c[k]) * &qf[0]);
    let eq2_res = Float::with_val(prec, lhs - rhs).max(&zero);
    numeric(CheckName::Eq2, eq2_res);

    // FINAL: M |a_k - a_0 a_{n-k}/a_n| <= (q_0 + 1)(M^2 - a_0 a_n).
    let inner = Rational::from(f.coeff(k))
        - Rational::from(((&a0 * &f.coeff(n - k)).complete(), an.clone()));
    let lhs = Float::with_val(prec, &mahler.measure * &Float::with_val(prec, inner).abs());
    let m2 = Float::with_val(prec, &mahler.measure * &mahler.measure);
    let rhs = Float::with_val(prec, &qf[0] + 1u32)
        * Float::with_val(prec, m2 - Float::with_val(prec, (&a0 * &an).complete()));
    let final_res = Float::with_val(prec, lhs - rhs).max(&zero);
    numeric(CheckName::Final, final_res);

    // UNIT-MODULUS: |g| and |h| at 64 points of the unit circle, from the
    // product form (the truncation is irrelevant on the circle).
    let mut unit_res = Float::new(prec);
    let pi2 = Float::with_val(prec, rug::float::Constant::Pi) * 2u32;
    for t in 0..64u32 {
        let angle = Float::with_val(prec, &pi2 * &Float::with_val(prec, t)) / 64u32;
        let zt = Complex::with_val(prec, (angle.clone().cos(), angle.sin()));
        let mut gv = Complex::with_val(prec, epsilon);
        let mut hv = Complex::with_val(prec, 1u32);
        for root in &roots {
            let conj = root.value.clone().conj();
            let num = Complex::with_val(prec, &zt - &root.value);
            let mut den = Complex::with_val(prec, 1u32);
            den -= Complex::with_val(prec, &conj * &zt);
            match root.modulus_class {
                ModulusClass::Inside => {
                    gv *= num;
                    gv /= den;
                }
                ModulusClass::Outside => {
                    hv *= den;
                    hv /= num;
                }
                ModulusClass::OnCircle => {}
            }
        }
        for v in [gv, hv] {
            let r = Float::with_val(prec, cabs(prec, &v) - 1u32).abs();
            if r > unit_res {
                unit_res = r;
            }
        }
    }
    numeric(CheckName::UnitModulus, unit_res);

    // ON-CIRCLE-EPSILON: product of -alpha_i over on-circle roots is
    // epsilon, the identity the proof displays.
    let mut circle_prod = Complex::with_val(prec, 1u32);
    for root in &roots {
        if root.modulus_class == ModulusClass::OnCircle {
            circle_prod *= Complex::with_val(prec, -root.value.clone());
        }
    }
    circle_prod -= Complex::with_val(prec, epsilon);
    numeric(CheckName::OnCircleEpsilon, cabs(prec, &circle_prod));

    Ok(Certificate {
        truncation: l,
        k,
        q,
        e,
        epsilon,
        b,
        c,
        checks,
    })
}
