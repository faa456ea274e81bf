//! Acceptance gate: one test per shipping criterion, each printing a
//! single `criterion N [PASS|FAIL] ...` line (visible with
//! `cargo test --test acceptance -- --nocapture`).
//!
//! Criteria 3, 5 and 7 walk the full degree <= 6, height <= 2 box, so
//! the whole target takes a minute or two on a single core.  Randomized
//! criteria use a fixed-seed RNG and are fully reproducible.

use std::str::FromStr;
use std::time::Instant;

use mahler_core::rug::Float;
use mahler_core::{certificate, measure, nonreciprocal, scan, sharp_family};
use mahler_core::{Error, IntPolynomial, ScanConfig, Triviality};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Published digits the measures are checked against.
const LEHMER_QUOTED: f64 = 1.1762808;
const SMYTH_QUOTED: f64 = 1.324717;

fn report(number: u32, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {number} [{verdict}] {detail}");
}

fn poly(s: &str) -> IntPolynomial {
    IntPolynomial::from_str(s).unwrap()
}

/// (1 + sqrt 5) / 2 at the given precision.
fn golden_ratio(prec: u32) -> Float {
    let mut v = Float::with_val(prec, 5);
    v = v.sqrt();
    v += 1;
    v /= 2;
    v
}

fn pow2(e: i32) -> Float {
    Float::with_val(64, Float::i_exp(1, e))
}

fn random_nonzero(rng: &mut StdRng, height: i64) -> i64 {
    let mag = rng.gen_range(1..=height);
    if rng.gen() {
        mag
    } else {
        -mag
    }
}

/// Degree 1..=max_deg, nonzero leading coefficient; the constant term is
/// forced nonzero only when the caller needs endpoint structure.
fn random_poly(
    rng: &mut StdRng,
    max_deg: usize,
    height: i64,
    nonzero_constant: bool,
) -> IntPolynomial {
    let deg = rng.gen_range(1..=max_deg);
    let mut coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-height..=height)).collect();
    coeffs[deg] = random_nonzero(rng, height);
    if nonzero_constant {
        coeffs[0] = random_nonzero(rng, height);
    }
    IntPolynomial::from_i64(&coeffs)
}

/// Rejection-samples until the lower-bound theorem applies.
fn random_applicable(rng: &mut StdRng, max_deg: usize, height: i64) -> IntPolynomial {
    loop {
        let f = random_poly(rng, max_deg, height, true);
        if let Ok(profile) = nonreciprocal::theorem_bound(&f, 64) {
            if profile.theorem_applicable {
                return f;
            }
        }
    }
}

#[test]
fn criterion_1_lehmer_polynomial_measure() {
    let started = Instant::now();
    let f = poly("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1");
    let m = measure::mahler_measure(&f, 128).unwrap().measure.to_f64();
    let elapsed = started.elapsed().as_secs_f64();
    let pass = (m - LEHMER_QUOTED).abs() < 1e-6 && elapsed < 1.0;
    report(
        1,
        pass,
        &format!("Lehmer measure {m:.15} within 1e-6 of {LEHMER_QUOTED} in {elapsed:.3} s"),
    );
    assert!(pass, "measure {m}, elapsed {elapsed:.3} s");
}

#[test]
fn criterion_2_smyth_constant_measure() {
    let started = Instant::now();
    let f = poly("x^3-x-1");
    let m = measure::mahler_measure(&f, 128).unwrap().measure.to_f64();
    let elapsed = started.elapsed().as_secs_f64();
    let pass = (m - SMYTH_QUOTED).abs() < 1e-6 && elapsed < 1.0;
    report(
        2,
        pass,
        &format!("Smyth measure {m:.15} within 1e-6 of {SMYTH_QUOTED} in {elapsed:.3} s"),
    );
    assert!(pass, "measure {m}, elapsed {elapsed:.3} s");
}

#[test]
fn criterion_3_exhaustive_box_yields_no_violations() {
    let started = Instant::now();
    let config = ScanConfig::default();
    let rep = scan::scan_bounds(&config).unwrap();
    let elapsed = started.elapsed().as_secs_f64();
    let pass = rep.violations.is_empty() && rep.incomplete.is_empty();
    report(
        3,
        pass,
        &format!(
            "degree<=6 height<=2: {} enumerated, {} applicable, {} checked, \
             {} violations, {} incomplete in {elapsed:.1} s",
            rep.total_enumerated,
            rep.applicable_count,
            rep.checked_count,
            rep.violations.len(),
            rep.incomplete.len()
        ),
    );
    assert!(
        pass,
        "violations: {:?}, incomplete: {:?}",
        rep.violations
            .iter()
            .map(|v| v.polynomial.to_string())
            .collect::<Vec<_>>(),
        rep.incomplete
            .iter()
            .map(|i| i.polynomial.to_string())
            .collect::<Vec<_>>()
    );
}

#[test]
fn criterion_4_sharp_family_grid_attains_the_bound() {
    let started = Instant::now();
    let grid = sharp_family::sampling_grid();
    let mut cases_seen = [false; 4];
    let mut worst = 0f64;
    let mut bad: Vec<String> = Vec::new();
    for p in &grid {
        // Expansion case of (x^(n-2k) - 1) against the quadratic-in-x^k
        // part; m = k itself is excluded from the grid (n != 3k).
        let m = p.n - 2 * p.k;
        let case = if m < p.k {
            0
        } else if m < 2 * p.k {
            1
        } else if m == 2 * p.k {
            2
        } else {
            3
        };
        cases_seen[case] = true;

        let label = format!("a={} b={} c={} k={} n={}", p.a, p.b, p.c, p.k, p.n);
        match sharp_family::verify_sharpness(p, 128) {
            Ok(rep) => {
                let disc = rep.max_discrepancy.to_f64();
                worst = worst.max(disc);
                if disc >= 1e-9 {
                    bad.push(format!("{label}: discrepancy {disc:.3e}"));
                }
                if !(rep.identity_exact && rep.k_matches && rep.alpha_matches) {
                    bad.push(format!(
                        "{label}: identity_exact={} k_matches={} alpha_matches={}",
                        rep.identity_exact, rep.k_matches, rep.alpha_matches
                    ));
                }
            }
            Err(e) => bad.push(format!("{label}: {e}")),
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    let pass = bad.is_empty() && cases_seen == [true; 4] && elapsed < 30.0;
    report(
        4,
        pass,
        &format!(
            "{} grid members, max discrepancy {worst:.2e} < 1e-9, exact identity everywhere, \
             all four expansion cases in {elapsed:.1} s",
            grid.len()
        ),
    );
    assert!(pass, "cases {cases_seen:?}, elapsed {elapsed:.1} s, failures: {bad:?}");
}

#[test]
fn criterion_5_unit_endpoints_alpha_two_floor() {
    let started = Instant::now();
    let config = ScanConfig {
        unit_endpoints_only: true,
        alpha_min: Some(2),
        ..ScanConfig::default()
    };
    let rep = scan::scan_bounds(&config).unwrap();

    let phi = golden_ratio(128);
    let bound_floor = phi.clone() - pow2(-40);
    let mut per_instance = 0u64;
    let mut weak_bounds = 0u64;
    for f in scan::enumerate(&config).unwrap() {
        let profile = nonreciprocal::theorem_bound(&f, 128).unwrap();
        if !profile.theorem_applicable {
            continue;
        }
        if profile.a0.clone().abs() != 1 || profile.an.clone().abs() != 1 {
            continue;
        }
        if *profile.alpha.as_ref().unwrap() < 2 {
            continue;
        }
        per_instance += 1;
        if profile.bound_value < bound_floor {
            weak_bounds += 1;
        }
    }

    let min_measure = rep.min_measure_checked.clone().unwrap().to_f64();
    let elapsed = started.elapsed().as_secs_f64();
    let pass = weak_bounds == 0
        && min_measure >= phi.to_f64() - 1e-9
        && per_instance == rep.checked_count
        && rep.checked_count > 0;
    report(
        5,
        pass,
        &format!(
            "min measure {min_measure:.15} >= phi - 1e-9 over {} unit-endpoint alpha>=2 \
             instances, every bound >= phi - 2^-40, in {elapsed:.1} s",
            rep.checked_count
        ),
    );
    assert!(
        pass,
        "min measure {min_measure}, weak bounds {weak_bounds}, \
         enumerated-side count {per_instance} vs checked {}",
        rep.checked_count
    );
}

/// Builds the certificate at 128 bits with L = max(2k, 16) and records
/// any failed named check.
fn certify_into(f: &IntPolynomial, bad: &mut Vec<String>) {
    let normalized = f.normalize_signs().unwrap();
    let k = nonreciprocal::detect_k(&normalized).unwrap().unwrap();
    let l = certificate::default_truncation(k);
    match certificate::build_certificate(f, l, 128) {
        Ok(cert) => {
            if cert.checks.len() != 12 {
                bad.push(format!("{f}: produced {} checks instead of 12", cert.checks.len()));
            }
            for check in &cert.checks {
                if !check.passed {
                    bad.push(format!(
                        "{f}: {} failed (residual {:.3e}, tolerance {:.3e})",
                        check.name.as_str(),
                        check.residual.to_f64(),
                        check.tolerance.to_f64()
                    ));
                }
            }
        }
        Err(e) => bad.push(format!("{f}: {e}")),
    }
}

#[test]
fn criterion_6_certificates_pass_every_named_check() {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(6);
    let mut bad: Vec<String> = Vec::new();

    for _ in 0..500 {
        let f = random_applicable(&mut rng, 10, 3);
        certify_into(&f, &mut bad);
    }

    let grid = sharp_family::sampling_grid();
    let mut certified = 500usize;
    let mut boundary = 0usize;
    for p in &grid {
        let f = sharp_family::construct(p).unwrap();
        if p.b == 0 {
            // The b = 0 boundary members are reciprocal; the builder must
            // refuse them rather than fabricate a certificate.
            boundary += 1;
            match certificate::build_certificate(&f, 16, 128) {
                Err(Error::NotApplicable(_)) => {}
                Err(e) => bad.push(format!("{f}: unexpected error {e}")),
                Ok(_) => bad.push(format!("{f}: reciprocal member got a certificate")),
            }
            continue;
        }
        certified += 1;
        certify_into(&f, &mut bad);
    }

    let elapsed = started.elapsed().as_secs_f64();
    let pass = bad.is_empty() && elapsed < 120.0;
    report(
        6,
        pass,
        &format!(
            "all 12 named checks passed on 500 random + {} grid certificates \
             ({boundary} reciprocal boundary members refused) in {elapsed:.1} s",
            certified - 500
        ),
    );
    assert!(pass, "elapsed {elapsed:.1} s, failures: {bad:?}");
}

#[test]
fn criterion_7_triviality_matches_exact_endpoint_comparison() {
    let started = Instant::now();
    let config = ScanConfig::default();
    let mut bad: Vec<String> = Vec::new();
    let (mut nontrivial, mut trivial, mut reciprocal, mut degenerate) = (0u64, 0u64, 0u64, 0u64);

    for f in scan::enumerate(&config).unwrap() {
        let profile = nonreciprocal::theorem_bound(&f, 128).unwrap();
        let max_endpoint = std::cmp::max(profile.a0.clone().abs(), profile.an.clone().abs());
        match nonreciprocal::classify_triviality(&profile) {
            Triviality::Nontrivial => {
                nontrivial += 1;
                if !profile.bound_exact.exceeds(&max_endpoint) {
                    bad.push(format!("nontrivial {f}: bound does not exceed max endpoint"));
                }
            }
            Triviality::Trivial => {
                trivial += 1;
                if profile.bound_exact.exceeds(&max_endpoint) {
                    bad.push(format!("trivial {f}: bound exceeds max endpoint"));
                }
            }
            Triviality::NotApplicable => {}
        }
        if f.is_reciprocal() {
            reciprocal += 1;
            if profile.k.is_some() || profile.theorem_applicable {
                bad.push(format!("reciprocal {f}: profile not classified not_applicable"));
            }
            if profile.a0 == profile.an {
                degenerate += 1;
                let expected = Float::with_val(128, profile.an.clone().abs());
                if profile.bound_value != expected {
                    bad.push(format!(
                        "reciprocal {f}: degenerate value {} != endpoint",
                        profile.bound_value.to_f64()
                    ));
                }
            }
        } else if profile.k.is_none() {
            bad.push(format!("{f}: no detected index yet not reciprocal"));
        }
    }

    let elapsed = started.elapsed().as_secs_f64();
    let pass = bad.is_empty() && nontrivial > 0 && trivial > 0 && degenerate > 0;
    report(
        7,
        pass,
        &format!(
            "exact endpoint comparison agreed on {nontrivial} nontrivial / {trivial} trivial; \
             {reciprocal} reciprocal all not_applicable ({degenerate} with a0 = an, value = endpoint) \
             in {elapsed:.1} s"
        ),
    );
    assert!(pass, "failures: {bad:?}");
}

#[test]
fn criterion_8_measure_lies_in_graeffe_interval() {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(8);
    let mut bad: Vec<String> = Vec::new();
    for _ in 0..1000 {
        let f = random_poly(&mut rng, 10, 5, false);
        let m = measure::mahler_measure(&f, 128).unwrap();
        // Graeffe needs a nonzero constant term; roots at the origin have
        // modulus 0 and do not move the measure.
        let (stripped, _) = f.strip_zero_roots().unwrap();
        let (lo, hi) = measure::graeffe_measure(&stripped, 10).unwrap();
        let upper_slack = Float::with_val(192, &m.measure + &m.error_bound);
        let lower_slack = Float::with_val(192, &m.measure - &m.error_bound);
        if upper_slack < lo || lower_slack > hi {
            bad.push(format!(
                "{f}: measure {:.17} outside [{:.17}, {:.17}]",
                m.measure.to_f64(),
                lo.to_f64(),
                hi.to_f64()
            ));
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    let pass = bad.is_empty();
    report(
        8,
        pass,
        &format!("1000 random measures inside their Graeffe intervals in {elapsed:.1} s"),
    );
    assert!(pass, "failures: {bad:?}");
}

#[test]
fn criterion_9_detected_k_survives_x_minus_one() {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(9);
    let x_minus_one = IntPolynomial::from_i64(&[-1, 1]);
    let mut bad: Vec<String> = Vec::new();
    for _ in 0..1000 {
        let f = random_applicable(&mut rng, 10, 5);
        let base = nonreciprocal::theorem_bound(&f, 64).unwrap();
        let plus = f.multiply(&x_minus_one);
        let minus = plus.neg();
        for g in [&plus, &minus] {
            let moved = nonreciprocal::theorem_bound(g, 64).unwrap();
            if moved.k != base.k || moved.alpha != base.alpha {
                bad.push(format!(
                    "{f}: k {:?} alpha {:?} became k {:?} alpha {:?}",
                    base.k, base.alpha, moved.k, moved.alpha
                ));
            }
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    let pass = bad.is_empty();
    report(
        9,
        pass,
        &format!("k and alpha unchanged under +/-(x-1) for 1000 applicable samples in {elapsed:.1} s"),
    );
    assert!(pass, "failures: {bad:?}");
}
