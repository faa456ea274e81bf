//! Certified numerical Mahler measure.
//!
//! The measure of `f` is `|a_n| * prod max(1, |alpha_i|)` over the roots.
//! Roots are located by simultaneous (Aberth–Ehrlich) iteration on the
//! squarefree factors of `f`, with multiplicities recovered exactly from
//! the gcd chain `f, gcd(f, f'), gcd(gcd(f, f'), ...), ...` in integer
//! arithmetic.  Each approximation carries a certified inclusion radius
//! (a Newton-style disc bound plus a rigorous evaluation-error term); when
//! all discs of a squarefree factor are pairwise disjoint, every disc
//! contains exactly one root and the union covers the root set, which is
//! the enclosure the measure's error bound is derived from.  Precision
//! escalates (doubling) until the discs meet the requested tolerance.
//!
//! `graeffe_measure` is a fully independent enclosure used as a
//! cross-check: exact integer root-squaring followed by norm bounds.

use rug::float::Round;
use rug::ops::{DivAssignRound, Pow};
use rug::{Complete, Complex, Float, Integer};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Default working precision for all CLI entry points.
pub const DEFAULT_PRECISION_BITS: u32 = 128;

/// Position of a root's modulus relative to the unit circle, up to the
/// classification tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModulusClass {
    Inside,
    OnCircle,
    Outside,
}

impl ModulusClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ModulusClass::Inside => "inside",
            ModulusClass::OnCircle => "on_circle",
            ModulusClass::Outside => "outside",
        }
    }
}

/// One root of the polynomial: an approximation, an inclusion-disc radius
/// certified to contain the root, and the modulus classification.
#[derive(Debug, Clone)]
pub struct RootApprox {
    pub value: Complex,
    pub radius: Float,
    pub modulus_class: ModulusClass,
}

/// Certified Mahler measure together with the classified root multiset.
#[derive(Debug, Clone)]
pub struct MahlerResult {
    pub measure: Float,
    pub error_bound: Float,
    pub roots: Vec<RootApprox>,
    pub leading_abs: Integer,
}

/// `2^e` as a `Float`.
pub(crate) fn pow2(prec: u32, e: i32) -> Float {
    Float::with_val(prec, Float::i_exp(1, e))
}

/// Default on-circle classification tolerance, `2^(-precision_bits/3)`.
pub fn default_circle_tolerance(precision_bits: u32) -> Float {
    pow2(64, -((precision_bits / 3) as i32))
}

/// |z| at the given precision.
fn cabs(prec: u32, z: &Complex) -> Float {
    let re2 = Float::with_val(prec, z.real() * z.real());
    let im2 = Float::with_val(prec, z.imag() * z.imag());
    Float::with_val(prec, re2 + im2).sqrt()
}

/// A distinct root with its certified disc and exact multiplicity.
#[derive(Debug, Clone)]
struct CertifiedRoot {
    value: Complex,
    radius: Float,
    multiplicity: usize,
}

/// Squarefree layers `F_1, F_2, ...` of `f`: `F_m` has a simple root at
/// every root of `f` of multiplicity at least `m`.  Computed exactly from
/// the derivative-gcd chain, so downstream multiplicities are exact.
fn squarefree_layers(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut chain = vec![f.clone()];
    loop {
        let last = chain.last().unwrap();
        if last.degree().is_none_or(|d| d == 0) {
            break;
        }
        let g = last.gcd(&last.derivative());
        chain.push(g.clone());
        if g.degree().is_none_or(|d| d == 0) {
            break;
        }
    }
    let mut layers = Vec::new();
    for m in 0..chain.len() - 1 {
        let q = chain[m]
            .div_exact(&chain[m + 1])
            .expect("derivative gcd divides exactly");
        if q.degree().is_some_and(|d| d >= 1) {
            layers.push(q);
        } else {
            break;
        }
    }
    layers
}

/// Evaluates `(f(z), f'(z))` by the simultaneous Horner recurrence.
fn eval_with_deriv(coeffs: &[Complex], z: &Complex, prec: u32) -> (Complex, Complex) {
    let n = coeffs.len() - 1;
    let mut b = coeffs[n].clone();
    let mut d = Complex::new(prec);
    for i in (0..n).rev() {
        d *= z;
        d += &b;
        b *= z;
        b += &coeffs[i];
    }
    (b, d)
}

/// Sum of |a_j| |z|^j, a cancellation-free magnitude used to bound the
/// rounding error of a Horner evaluation at precision `prec`.
fn horner_magnitude(abs_coeffs: &[Float], zabs: &Float, prec: u32) -> Float {
    let mut acc = Float::new(prec);
    for a in abs_coeffs.iter().rev() {
        acc *= zabs;
        acc += a;
    }
    acc
}

/// State of one squarefree factor while the precision ladder runs.
struct FactorState {
    coeffs_int: Vec<Integer>,
    /// Best root approximations so far, used to warm-start the next rung.
    approx: Option<Vec<Complex>>,
    /// Certified Newton radii from the latest successful rung.
    radii: Vec<Float>,
}

/// Aberth–Ehrlich simultaneous iteration at precision `prec` on a
/// squarefree factor.  Returns true when the sweep-to-sweep movement
/// reached the precision floor (quadratic convergence makes this quick
/// once the approximations separate).
fn aberth(coeffs: &[Complex], zs: &mut Vec<Complex>, prec: u32) -> bool {
    let n = coeffs.len() - 1;
    if zs.len() != n {
        *zs = initial_guesses(coeffs, prec);
    } else {
        for z in zs.iter_mut() {
            z.set_prec(prec);
        }
    }
    let threshold = pow2(prec, -((3 * prec as i32) / 4));
    let max_sweeps = 120 + 12 * n;
    let mut quiet_sweeps = 0;
    for sweep in 0..max_sweeps {
        let mut max_rel = Float::new(prec);
        for i in 0..n {
            let zi = zs[i].clone();
            let (fv, dv) = eval_with_deriv(coeffs, &zi, prec);
            if fv.real().is_zero() && fv.imag().is_zero() {
                continue;
            }
            if dv.real().is_zero() && dv.imag().is_zero() {
                // Derivative vanished at the current point; nudge and retry.
                let bump = pow2(prec, -(4 + sweep as i32 % 16));
                *zs[i].mut_real() += bump;
                continue;
            }
            let newton = Complex::with_val(prec, &fv / &dv);
            let mut s = Complex::new(prec);
            let mut collision = false;
            for (j, zj) in zs.iter().enumerate() {
                if j == i {
                    continue;
                }
                let diff = Complex::with_val(prec, &zi - zj);
                if diff.real().is_zero() && diff.imag().is_zero() {
                    collision = true;
                    break;
                }
                s += diff.recip();
            }
            if collision {
                let bump = pow2(prec, -(5 + sweep as i32 % 16));
                *zs[i].mut_real() += &bump;
                *zs[i].mut_imag() += bump;
                continue;
            }
            let prod = Complex::with_val(prec, &newton * &s);
            let mut denom = Complex::with_val(prec, 1u32);
            denom -= prod;
            let step = if denom.real().is_zero() && denom.imag().is_zero() {
                newton
            } else {
                Complex::with_val(prec, &newton / &denom)
            };
            let zabs = cabs(prec, &zi);
            let scale = Float::with_val(prec, 1u32).max(&zabs);
            let rel = Float::with_val(prec, cabs(prec, &step) / scale);
            if rel > max_rel {
                max_rel = rel;
            }
            zs[i] -= step;
        }
        if max_rel < threshold {
            quiet_sweeps += 1;
            if quiet_sweeps >= 2 {
                return true;
            }
        } else {
            quiet_sweeps = 0;
        }
    }
    false
}

/// Deterministic perturbed-circle starting points: radius from the Cauchy
/// bound, equally spaced angles with a fixed offset plus per-index jitter
/// so symmetric configurations cannot lock the iteration.
fn initial_guesses(coeffs: &[Complex], prec: u32) -> Vec<Complex> {
    let n = coeffs.len() - 1;
    let lead = cabs(prec, &coeffs[n]);
    let mut maxratio = Float::new(prec);
    for c in &coeffs[..n] {
        let r = Float::with_val(prec, cabs(prec, c) / &lead);
        if r > maxratio {
            maxratio = r;
        }
    }
    let cauchy = Float::with_val(prec, &maxratio + 1u32);
    let pi = Float::with_val(prec, rug::float::Constant::Pi);
    (0..n)
        .map(|i| {
            let jitter_a = ((i * 19 + 7) % 23) as f64 / 23.0;
            let jitter_r = 1.0 + ((i * 13 + 5) % 17) as f64 / 170.0;
            let theta = Float::with_val(
                prec,
                2.0 * (i as f64 + 0.25 + 0.5 * jitter_a) / n as f64,
            ) * &pi;
            let radius = Float::with_val(prec, &cauchy * jitter_r);
            let cos = theta.clone().cos();
            let sin = theta.sin();
            Complex::with_val(prec, (radius.clone() * cos, radius * sin))
        })
        .collect()
}

/// Certified per-root inclusion radii for a squarefree factor at the given
/// precision: `r_i = n |f(z_i)| / |f'(z_i)|` with rigorous padding for the
/// evaluation rounding error.  Any point within `r_i` of a root keeps the
/// standard property that the disc contains at least one true root; when
/// all discs are pairwise disjoint each contains exactly one.
fn newton_radii(coeffs: &[Complex], zs: &[Complex], prec: u32) -> Option<Vec<Float>> {
    let n = coeffs.len() - 1;
    let abs_coeffs: Vec<Float> = coeffs.iter().map(|c| cabs(prec, c)).collect();
    let abs_deriv: Vec<Float> = abs_coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, a)| Float::with_val(prec, a * j as u32))
        .collect();
    // 16n*2^-prec swallows the constant in the standard Horner error bound
    // with a wide margin for complex arithmetic.
    let unit = Float::with_val(prec, pow2(prec, -(prec as i32)) * (16 * n as u32));
    let mut radii = Vec::with_capacity(n);
    for z in zs {
        let zabs = cabs(prec, z);
        let (fv, dv) = eval_with_deriv(coeffs, z, prec);
        let fmag = horner_magnitude(&abs_coeffs, &zabs, prec);
        let dmag = horner_magnitude(&abs_deriv, &zabs, prec);
        let fhi = Float::with_val(prec, cabs(prec, &fv) + Float::with_val(prec, &fmag * &unit));
        let dlo = Float::with_val(prec, cabs(prec, &dv) - Float::with_val(prec, &dmag * &unit));
        if dlo <= 0u32 {
            return None;
        }
        let mut r = Float::with_val(prec, &fhi / &dlo);
        r *= n as u32;
        // one global slack factor for the handful of roundings above
        r *= Float::with_val(prec, 1.0 + 1e-9);
        radii.push(r);
    }
    Some(radii)
}

fn discs_pairwise_disjoint(zs: &[Complex], radii: &[Float], prec: u32) -> bool {
    for i in 0..zs.len() {
        for j in (i + 1)..zs.len() {
            let dist = cabs(prec, &Complex::with_val(prec, &zs[i] - &zs[j]));
            let rsum = Float::with_val(prec, &radii[i] + &radii[j]);
            // strict separation with a margin for the distance rounding
            if dist <= Float::with_val(prec, rsum * 1.000001f64) {
                return false;
            }
        }
    }
    true
}

/// One rung of the precision ladder: converge every factor, certify the
/// radii, check the target, and match higher layers onto the base layer to
/// recover multiplicities.  `None` means "escalate and retry".
fn attempt_certify(
    states: &mut [FactorState],
    degree: usize,
    prec: u32,
    target_radius: &Float,
) -> Option<Vec<CertifiedRoot>> {
    for st in states.iter_mut() {
        let coeffs: Vec<Complex> = st
            .coeffs_int
            .iter()
            .map(|c| Complex::with_val(prec, c))
            .collect();
        let mut zs = st.approx.take().unwrap_or_default();
        let converged = aberth(&coeffs, &mut zs, prec);
        st.approx = Some(zs);
        if !converged {
            return None;
        }
        let radii = newton_radii(&coeffs, st.approx.as_ref().unwrap(), prec)?;
        if !discs_pairwise_disjoint(st.approx.as_ref().unwrap(), &radii, prec) {
            return None;
        }
        st.radii = radii;
    }
    // The base layer's discs must meet the requested tolerance.
    if states[0].radii.iter().any(|r| r >= target_radius) {
        return None;
    }
    let base = states[0].approx.clone().unwrap();
    let base_radii = states[0].radii.clone();
    let mut multiplicity = vec![1usize; base.len()];
    for st in states.iter().skip(1) {
        let zs = st.approx.as_ref().unwrap();
        for (y, s) in zs.iter().zip(st.radii.iter()) {
            let mut hit = None;
            for (j, (z, r)) in base.iter().zip(base_radii.iter()).enumerate() {
                let dist = cabs(prec, &Complex::with_val(prec, y - z));
                if dist <= Float::with_val(prec, r + s) {
                    if hit.is_some() {
                        return None; // ambiguous at this precision
                    }
                    hit = Some(j);
                }
            }
            multiplicity[hit?] += 1;
        }
    }
    if multiplicity.iter().sum::<usize>() != degree {
        return None;
    }
    Some(
        base.into_iter()
            .zip(base_radii)
            .zip(multiplicity)
            .map(|((value, radius), multiplicity)| CertifiedRoot {
                value,
                radius,
                multiplicity,
            })
            .collect(),
    )
}

/// Runs the escalating-precision ladder until certification succeeds or
/// the precision cap is hit.  Returns the roots and the final precision.
fn certified_roots(f: &IntPolynomial, precision_bits: u32) -> Result<(Vec<CertifiedRoot>, u32)> {
    let degree = f.degree().expect("caller checked nonzero");
    let layers = squarefree_layers(f);
    let mut states: Vec<FactorState> = layers
        .into_iter()
        .map(|l| FactorState {
            coeffs_int: l.coeffs().to_vec(),
            approx: None,
            radii: Vec::new(),
        })
        .collect();
    let cap = 1024u32.max(8 * precision_bits);
    let mut prec = precision_bits.max(DEFAULT_PRECISION_BITS);
    loop {
        let target = pow2(prec, -(precision_bits as i32 / 2 + 2));
        if let Some(roots) = attempt_certify(&mut states, degree, prec, &target) {
            return Ok((roots, prec));
        }
        if prec >= cap {
            return Err(Error::PrecisionExhausted {
                requested_bits: precision_bits,
                max_bits: cap,
            });
        }
        prec = (prec * 2).min(cap);
    }
}

fn classify(modulus: &Float, tolerance: &Float, prec: u32) -> ModulusClass {
    let gap = Float::with_val(prec, modulus - 1u32);
    if gap.clone().abs() <= *tolerance {
        ModulusClass::OnCircle
    } else if gap < 0u32 {
        ModulusClass::Inside
    } else {
        ModulusClass::Outside
    }
}

fn validate_for_roots(f: &IntPolynomial) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == Some(0) {
        return Err(Error::InvalidParameter(
            "degree must be at least 1".to_string(),
        ));
    }
    if f.constant().is_none_or(|c| c.is_zero()) {
        return Err(Error::ConstantTermZero);
    }
    Ok(())
}

/// Locates all roots of `f` with certified inclusion discs, one entry per
/// root counted with multiplicity (entries of a multiple root coincide).
/// Requires a nonzero constant term; strip roots at the origin first.
pub fn find_roots(f: &IntPolynomial, precision_bits: u32) -> Result<Vec<RootApprox>> {
    validate_for_roots(f)?;
    let (roots, prec) = certified_roots(f, precision_bits)?;
    let tol = default_circle_tolerance(precision_bits);
    let mut out = Vec::new();
    for root in roots {
        let modulus = cabs(prec, &root.value);
        let class = classify(&modulus, &tol, prec);
        for _ in 0..root.multiplicity {
            out.push(RootApprox {
                value: root.value.clone(),
                radius: root.radius.clone(),
                modulus_class: class,
            });
        }
    }
    Ok(out)
}

/// Mahler measure with the default on-circle classification tolerance.
pub fn mahler_measure(f: &IntPolynomial, precision_bits: u32) -> Result<MahlerResult> {
    let tol = default_circle_tolerance(precision_bits);
    mahler_measure_with_circle_tolerance(f, precision_bits, &tol)
}

/// Mahler measure with an explicit on-circle classification tolerance.
/// Classification only decides which roots contribute their modulus; the
/// error bound accounts for every root's certified disc, so a different
/// tolerance moves `measure` by less than the certified error.
pub fn mahler_measure_with_circle_tolerance(
    f: &IntPolynomial,
    precision_bits: u32,
    circle_tolerance: &Float,
) -> Result<MahlerResult> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (stripped, _zeros) = f.strip_zero_roots()?;
    let leading_abs = f.leading().unwrap().clone().abs();
    if stripped.degree() == Some(0) {
        let prec = precision_bits.max(64);
        return Ok(MahlerResult {
            measure: Float::with_val(prec, &leading_abs),
            error_bound: Float::new(prec),
            roots: Vec::new(),
            leading_abs,
        });
    }
    let cap = 1024u32.max(8 * precision_bits);
    let mut request = precision_bits;
    loop {
        let (roots, prec) = certified_roots(&stripped, request)?;
        let result = assemble_measure(&roots, &leading_abs, circle_tolerance, prec);
        let budget = pow2(prec, -(precision_bits as i32 / 4));
        if result.error_bound <= budget {
            return Ok(result);
        }
        // The enclosure was too loose (clustered discs near the circle);
        // re-run with a tighter radius request.
        if request >= cap {
            return Err(Error::PrecisionExhausted {
                requested_bits: precision_bits,
                max_bits: cap,
            });
        }
        request = (request * 2).min(cap);
    }
}

/// Builds the measure and a rigorous error bound from certified discs.
/// Every root's true modulus lies in [|z|-r, |z|+r]; the true contribution
/// of a root is max(1, |alpha|)^m, so the product of the interval ends
/// encloses the true measure no matter how each root was classified.
fn assemble_measure(
    roots: &[CertifiedRoot],
    leading_abs: &Integer,
    circle_tolerance: &Float,
    prec: u32,
) -> MahlerResult {
    let one = Float::with_val(prec, 1u32);
    let mut used = Float::with_val(prec, leading_abs);
    let mut lo = used.clone();
    let mut hi = used.clone();
    let mut out_roots = Vec::new();
    for root in roots {
        let m = cabs(prec, &root.value);
        let class = classify(&m, circle_tolerance, prec);
        let mu = root.multiplicity as u32;
        if class == ModulusClass::Outside {
            used *= Float::with_val(prec, (&m).pow(mu));
        }
        let m_lo = Float::with_val(prec, &m - &root.radius).max(&one);
        let m_hi = Float::with_val(prec, &m + &root.radius).max(&one);
        lo *= Float::with_val(prec, (&m_lo).pow(mu));
        hi *= Float::with_val(prec, (&m_hi).pow(mu));
        for _ in 0..root.multiplicity {
            out_roots.push(RootApprox {
                value: root.value.clone(),
                radius: root.radius.clone(),
                modulus_class: class,
            });
        }
    }
    let above = Float::with_val(prec, &hi - &used);
    let below = Float::with_val(prec, &used - &lo);
    let spread = above.max(&below);
    // generous slack for the roundings in the products themselves
    let mut error_bound = Float::with_val(prec, spread * 1.000001f64);
    error_bound += Float::with_val(prec, &used * &pow2(prec, -(prec as i32) + 16));
    MahlerResult {
        measure: used,
        error_bound,
        roots: out_roots,
        leading_abs: leading_abs.clone(),
    }
}

/// An interval guaranteed to contain `M(f)`, by `iterations` rounds of
/// exact integer Graeffe root-squaring followed by norm bounds: the
/// length-2 norm bounds the measure of the squared polynomial above
/// (Landau), and `max_j |g_j| / C(n, j)` bounds it below.  Fully
/// independent of the root finder.
pub fn graeffe_measure(f: &IntPolynomial, iterations: u32) -> Result<(Float, Float)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if iterations == 0 {
        return Err(Error::InvalidParameter(
            "iterations must be positive".to_string(),
        ));
    }
    if f.constant().is_none_or(|c| c.is_zero()) {
        return Err(Error::ConstantTermZero);
    }
    const BIT_LIMIT: u64 = 1 << 24;
    let prec = 192u32;
    if f.degree() == Some(0) {
        let v = Float::with_val(prec, f.leading().unwrap()).abs();
        return Ok((v.clone(), v));
    }
    let n = f.degree().unwrap();
    let mut g = f.clone();
    for _ in 0..iterations {
        // g(x) * g(-x) is even; its even-part coefficients, times (-1)^n,
        // give the polynomial whose roots are the squares of g's roots.
        let flipped = IntPolynomial::new(
            g.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { (-c).complete() } else { c.clone() })
                .collect(),
        );
        let prod = g.multiply(&flipped);
        let mut next = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let mut c = prod.coeff(2 * j);
            if n % 2 == 1 {
                c = -c;
            }
            next.push(c);
        }
        g = IntPolynomial::new(next);
        let bits: u64 = g.coeffs().iter().map(|c| c.significant_bits() as u64).sum();
        if bits > BIT_LIMIT {
            return Err(Error::CoefficientBlowup {
                bits,
                limit: BIT_LIMIT,
            });
        }
    }
    debug_assert_eq!(g.degree(), Some(n));

    // Upper bound: M(g)^(1/2^N) <= l2(g)^(1/2^N), rounded up throughout.
    let mut sumsq = Integer::new();
    for c in g.coeffs() {
        sumsq += c.square_ref().complete();
    }
    let (mut upper, _) = Float::with_val_round(prec, &sumsq, Round::Up);
    for _ in 0..=iterations {
        upper.sqrt_round(Round::Up);
    }

    // Lower bound: |g_j| <= C(n, j) M(g), so M(g) >= max_j |g_j|/C(n, j),
    // rounded down throughout.
    let mut binom = Integer::from(1);
    let mut best = Float::new(prec);
    for (j, c) in g.coeffs().iter().enumerate() {
        if j > 0 {
            binom *= Integer::from(n - j + 1);
            binom /= Integer::from(j);
        }
        let (num, _) = Float::with_val_round(prec, c.clone().abs(), Round::Down);
        let (den, _) = Float::with_val_round(prec, &binom, Round::Up);
        let mut q = num;
        q.div_assign_round(&den, Round::Down);
        if q > best {
            best = q;
        }
    }
    let mut lower = best;
    for _ in 0..iterations {
        lower.sqrt_round(Round::Down);
    }
    // The l2 bound can be tight to hundreds of digits, far below the
    // jitter of any point estimate computed at ordinary precision.  Pad
    // both ends by one part in 2^64 — pure widening, so the enclosure
    // stays valid, and comparisons against point estimates stay robust.
    let pad = pow2(prec, -64);
    upper += Float::with_val(prec, &upper * &pad);
    lower -= Float::with_val(prec, &lower * &pad);
    // M(f) >= max(1, |a_n|, |a_0|) holds exactly for integer polynomials.
    let floor_an = Float::with_val(prec, f.leading().unwrap()).abs();
    let floor_a0 = Float::with_val(prec, f.constant().unwrap()).abs();
    lower = lower
        .max(&Float::with_val(prec, 1u32))
        .max(&floor_an)
        .max(&floor_a0);
    Ok((lower, upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    fn poly(s: &str) -> IntPolynomial {
        IntPolynomial::from_str(s).unwrap()
    }

    fn oracle(prec: u32, digits: &str) -> Float {
        Float::with_val(prec, Float::parse(digits).unwrap())
    }

    const LEHMER: &str = "1.176280818259917506544070338474035050693415806564695259830106347029688";
    const SMYTH: &str = "1.324717957244746025960908854478097340734404056901733364534015050302828";
    const PHI: &str = "1.61803398874989484820458683436563811772030917980576286213544862270526";

    fn assert_measure(f: &IntPolynomial, expected: &str, p: u32) {
        let r = mahler_measure(f, p).unwrap();
        let want = oracle(256, expected);
        let diff = Float::with_val(256, &r.measure - &want).abs();
        assert!(
            diff <= r.error_bound,
            "measure {} vs oracle {} differs by {} > bound {}",
            r.measure,
            want,
            diff,
            r.error_bound
        );
        assert!(r.error_bound <= pow2(64, -(p as i32 / 4)));
    }

    #[test]
    fn lehmer_measure_matches_published_value() {
        assert_measure(&poly("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1"), LEHMER, 128);
    }

    #[test]
    fn smyth_measure_matches_published_value() {
        assert_measure(&poly("x^3-x-1"), SMYTH, 128);
    }

    #[test]
    fn golden_ratio_measure() {
        assert_measure(&poly("x^2+x-1"), PHI, 128);
    }

    #[test]
    fn sqrt_two_squared() {
        assert_measure(&poly("x^2-2"), "2.0", 128);
    }

    #[test]
    fn cyclotomic_measure_is_one() {
        for k in 1..=6usize {
            let mut c = vec![-1i64];
            c.extend(std::iter::repeat_n(0, k - 1));
            c.push(1);
            let f = IntPolynomial::from_i64(&c);
            let r = mahler_measure(&f, 128).unwrap();
            let diff = Float::with_val(128, &r.measure - 1u32).abs();
            assert!(diff <= r.error_bound, "x^{k}-1 measure {}", r.measure);
            assert!(r
                .roots
                .iter()
                .all(|root| root.modulus_class == ModulusClass::OnCircle));
        }
    }

    #[test]
    fn constant_polynomial_measure() {
        let r = mahler_measure(&poly("5"), 128).unwrap();
        assert_eq!(r.measure, 5u32);
        assert!(r.error_bound.is_zero());
        assert!(r.roots.is_empty());
        assert_eq!(r.leading_abs, 5u32);
    }

    #[test]
    fn pure_monomial_measure() {
        let r = mahler_measure(&poly("0,0,0,5"), 128).unwrap();
        assert_eq!(r.measure, 5u32);
        assert!(r.roots.is_empty());
    }

    #[test]
    fn leading_two_cubic() {
        // all roots inside the circle, so M(f) = |a_n| = 2
        assert_measure(&poly("2x^3+x^2+x+1"), "2.0", 128);
    }

    #[test]
    fn measure_invariant_under_negation() {
        let r = mahler_measure(&poly("-x^2+2"), 128).unwrap();
        let diff = Float::with_val(128, &r.measure - 2u32).abs();
        assert!(diff <= r.error_bound);
    }

    #[test]
    fn repeated_roots_handled_exactly() {
        // (x^2-2)^2 -> M = 4
        let f = poly("x^2-2").multiply(&poly("x^2-2"));
        assert_measure(&f, "4.0", 128);
        // (x-2)^3 -> M = 8
        let g = poly("x-2").multiply(&poly("x-2")).multiply(&poly("x-2"));
        assert_measure(&g, "8.0", 128);
        let roots = find_roots(&g, 128).unwrap();
        assert_eq!(roots.len(), 3);
    }

    #[test]
    fn mixed_multiplicities() {
        // (x-2)^2 (x+1) (x^2+x-1): M = 4 * phi
        let f = poly("x-2")
            .multiply(&poly("x-2"))
            .multiply(&poly("x+1"))
            .multiply(&poly("x^2+x-1"));
        let want = Float::with_val(256, Float::parse(PHI).unwrap()) * 4u32;
        let r = mahler_measure(&f, 128).unwrap();
        let diff = Float::with_val(256, &r.measure - &want).abs();
        assert!(diff <= r.error_bound);
        assert_eq!(r.roots.len(), 5);
    }

    #[test]
    fn find_roots_classification() {
        let roots = find_roots(&poly("x^2-2"), 128).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots
            .iter()
            .all(|r| r.modulus_class == ModulusClass::Outside));

        let roots = find_roots(&poly("x^2+x-1"), 128).unwrap();
        let inside = roots
            .iter()
            .filter(|r| r.modulus_class == ModulusClass::Inside)
            .count();
        let outside = roots
            .iter()
            .filter(|r| r.modulus_class == ModulusClass::Outside)
            .count();
        assert_eq!((inside, outside), (1, 1));

        let roots = find_roots(&poly("x^3-1"), 128).unwrap();
        assert!(roots
            .iter()
            .all(|r| r.modulus_class == ModulusClass::OnCircle));
    }

    #[test]
    fn root_radii_meet_tolerance() {
        for p in [128u32, 256] {
            let roots = find_roots(&poly("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1"), p).unwrap();
            let bound = pow2(64, -(p as i32 / 2));
            for r in &roots {
                assert!(r.radius < bound, "radius {} at p={p}", r.radius);
            }
        }
    }

    #[test]
    fn root_values_match_closed_forms() {
        let roots = find_roots(&poly("x^2-2"), 128).unwrap();
        let sqrt2 = Float::with_val(192, 2u32).sqrt();
        for r in &roots {
            let m = cabs(192, &r.value);
            let diff = Float::with_val(192, &m - &sqrt2).abs();
            assert!(diff < pow2(64, -100));
        }
    }

    #[test]
    fn find_roots_preconditions() {
        assert!(matches!(
            find_roots(&IntPolynomial::zero(), 128),
            Err(Error::ZeroPolynomial)
        ));
        assert!(matches!(
            find_roots(&poly("7"), 128),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            find_roots(&poly("0,1,1"), 128),
            Err(Error::ConstantTermZero)
        ));
    }

    #[test]
    fn measure_rejects_zero() {
        assert!(matches!(
            mahler_measure(&IntPolynomial::zero(), 128),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn measure_handles_zero_roots_by_stripping() {
        // x^3 (x^2 + x - 1): measure is still phi
        let f = poly("x^2+x-1").multiply(&poly("0,0,0,1"));
        let r = mahler_measure(&f, 128).unwrap();
        let want = oracle(256, PHI);
        let diff = Float::with_val(256, &r.measure - &want).abs();
        assert!(diff <= r.error_bound);
        assert_eq!(r.roots.len(), 2); // stripped degree
    }

    #[test]
    fn classification_tolerance_stability() {
        for s in ["x^3-x-1", "x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1", "x^2+x-1"] {
            let f = poly(s);
            let base = mahler_measure(&f, 128).unwrap();
            let halved = Float::with_val(64, default_circle_tolerance(128) / 2u32);
            let alt = mahler_measure_with_circle_tolerance(&f, 128, &halved).unwrap();
            let diff = Float::with_val(192, &base.measure - &alt.measure).abs();
            assert!(diff <= base.error_bound);
        }
    }

    #[test]
    fn determinism() {
        let f = poly("x^5+x^4-x^3-x^2-x+1");
        let a = mahler_measure(&f, 128).unwrap();
        let b = mahler_measure(&f, 128).unwrap();
        assert_eq!(a.measure, b.measure);
        assert_eq!(a.error_bound, b.error_bound);
    }

    #[test]
    fn graeffe_contains_known_measures() {
        let cases = [
            ("x^2+x-1", PHI, 8u32),
            ("x^3-x-1", SMYTH, 10),
            ("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1", LEHMER, 10),
        ];
        for (s, value, iters) in cases {
            let (lo, hi) = graeffe_measure(&poly(s), iters).unwrap();
            let v = oracle(256, value);
            assert!(lo <= v && v <= hi, "{s}: [{lo}, {hi}] vs {v}");
        }
        let (lo, hi) = graeffe_measure(&poly("x^3-1"), 6).unwrap();
        assert!(lo <= 1u32 && hi >= 1u32);
    }

    #[test]
    fn graeffe_interval_shrinks() {
        let f = poly("x^3-x-1");
        let width = |iters| {
            let (lo, hi) = graeffe_measure(&f, iters).unwrap();
            Float::with_val(192, &hi - &lo)
        };
        assert!(width(12) < width(6));
    }

    #[test]
    fn graeffe_agrees_with_point_estimate() {
        for s in ["x^3-x-1", "x^5+x^4-x^3-x^2-x+1", "2x^3+x^2+x+1", "x^2-2"] {
            let f = poly(s);
            let r = mahler_measure(&f, 128).unwrap();
            let (lo, hi) = graeffe_measure(&f, 10).unwrap();
            assert!(lo <= r.measure && r.measure <= hi, "{s}");
        }
    }

    #[test]
    fn graeffe_preconditions() {
        assert!(matches!(
            graeffe_measure(&IntPolynomial::zero(), 5),
            Err(Error::ZeroPolynomial)
        ));
        assert!(matches!(
            graeffe_measure(&poly("0,1"), 5),
            Err(Error::ConstantTermZero)
        ));
        assert!(matches!(
            graeffe_measure(&poly("x^2-2"), 0),
            Err(Error::InvalidParameter(_))
        ));
        let (lo, hi) = graeffe_measure(&poly("7"), 3).unwrap();
        assert_eq!(lo, 7u32);
        assert_eq!(hi, 7u32);
    }

    #[test]
    fn squarefree_layers_structure() {
        // (x-1)^2 (x+2): layers are (x-1)(x+2) and (x-1)
        let f = poly("x-1").multiply(&poly("x-1")).multiply(&poly("x+2"));
        let layers = squarefree_layers(&f);
        assert_eq!(layers.len(), 2);
        assert_eq!(layers[0], poly("x-1").multiply(&poly("x+2")));
        assert_eq!(layers[1], poly("x-1"));
        // squarefree input: single layer
        let layers = squarefree_layers(&poly("x^3-x-1"));
        assert_eq!(layers.len(), 1);
    }
}
