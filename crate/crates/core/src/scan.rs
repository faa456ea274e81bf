//! Exhaustive enumeration of integer polynomials over coefficient boxes,
//! bound-versus-measure checking, tightness statistics, and the
//! exploratory odd-alpha survey.
//!
//! Enumeration is quotiented by sign symmetry (a_n > 0): the measure and
//! the bound are both invariant under f -> -f, so nothing is lost.  Work
//! is sharded on the top coefficients; shard results are merged in a
//! fixed order, so reports are identical for any worker count.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rug::Float;

use crate::error::{Error, Result};
use crate::measure::{self, MahlerResult};
use crate::nonreciprocal::{self, NonreciprocalProfile};
use crate::poly::IntPolynomial;

/// What to enumerate and how to check it.
#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub degree_min: usize,
    pub degree_max: usize,
    /// Maximum |a_i|.
    pub height: i64,
    /// When true (the default), only theorem-applicable polynomials are
    /// measured and bound-checked; the rest are merely counted.  When
    /// false, inapplicable polynomials are still measured so they enter
    /// the measure statistics, but no bound comparison is made for them.
    pub require_applicable: bool,
    pub precision_bits: u32,
    /// 0 means use the available parallelism.
    pub worker_count: usize,
    /// Restrict checking to |a_0| = |a_n| = 1.
    pub unit_endpoints_only: bool,
    /// Restrict checking to odd alpha.
    pub odd_alpha_only: bool,
    /// Restrict checking to alpha >= this value.
    pub alpha_min: Option<u64>,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            degree_min: 1,
            degree_max: 6,
            height: 2,
            require_applicable: true,
            precision_bits: measure::DEFAULT_PRECISION_BITS,
            worker_count: 0,
            unit_endpoints_only: false,
            odd_alpha_only: false,
            alpha_min: None,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        if self.degree_min < 1 {
            return Err(Error::InvalidParameter(
                "degree_min must be at least 1".to_string(),
            ));
        }
        if self.degree_max < self.degree_min {
            return Err(Error::InvalidParameter(format!(
                "degree_max {} is below degree_min {}",
                self.degree_max, self.degree_min
            )));
        }
        if self.height < 1 {
            return Err(Error::InvalidParameter(
                "height must be at least 1".to_string(),
            ));
        }
        Ok(())
    }
}

/// A bound violation candidate that survived re-verification.  The
/// lower-bound theorem predicts this list is always empty.
#[derive(Debug, Clone)]
pub struct ViolationRecord {
    pub polynomial: IntPolynomial,
    pub bound: Float,
    pub measure: Float,
    pub error_bound: Float,
    /// bound - (measure + error_bound), positive for a violation.
    pub residual: Float,
}

/// The instance with the smallest observed measure - bound gap.
#[derive(Debug, Clone)]
pub struct GapWitness {
    pub polynomial: IntPolynomial,
    pub gap: Float,
    pub measure: Float,
    pub bound: Float,
}

/// An instance whose measure could not be computed even after the
/// doubled-precision retry, with the error message.  Never counted as a
/// violation.
#[derive(Debug, Clone)]
pub struct IncompleteRecord {
    pub polynomial: IntPolynomial,
    pub message: String,
}

const HISTOGRAM_EDGES: [f64; 8] = [1e-9, 1e-6, 1e-3, 1e-2, 1e-1, 0.5, 1.0, 2.0];

/// Counts of measure - bound gaps in fixed magnitude bins; the last bin
/// is everything >= 2.
#[derive(Debug, Clone, Default)]
pub struct GapHistogram {
    counts: [u64; 9],
}

impl GapHistogram {
    pub fn record(&mut self, gap: &Float) {
        let g = gap.to_f64().max(0.0);
        let bin = HISTOGRAM_EDGES.iter().position(|&e| g < e).unwrap_or(8);
        self.counts[bin] += 1;
    }

    pub fn counts(&self) -> &[u64; 9] {
        &self.counts
    }

    /// (lower edge, upper edge, count) per bin; the last upper edge is
    /// None for the unbounded overflow bin.
    pub fn bins(&self) -> Vec<(f64, Option<f64>, u64)> {
        let mut lo = 0.0;
        let mut out = Vec::with_capacity(9);
        for (i, &count) in self.counts.iter().enumerate() {
            let hi = HISTOGRAM_EDGES.get(i).copied();
            out.push((lo, hi, count));
            if let Some(h) = hi {
                lo = h;
            }
        }
        out
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    fn merge(&mut self, other: &GapHistogram) {
        for (a, b) in self.counts.iter_mut().zip(other.counts.iter()) {
            *a += b;
        }
    }

    /// CSV rows "gap_lo,gap_hi,count", one per bin.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("gap_lo,gap_hi,count\n");
        let mut lo = 0.0;
        for (i, count) in self.counts.iter().enumerate() {
            let hi = if i < 8 {
                format!("{:e}", HISTOGRAM_EDGES[i])
            } else {
                "inf".to_string()
            };
            out.push_str(&format!("{lo:e},{hi},{count}\n"));
            if i < 8 {
                lo = HISTOGRAM_EDGES[i];
            }
        }
        out
    }
}

/// Wall-clock and parallelism facts about one scan run.
#[derive(Debug, Clone)]
pub struct RuntimeStats {
    pub seconds: f64,
    pub workers: usize,
}

/// Aggregated outcome of a scan.
#[derive(Debug, Clone)]
pub struct ScanReport {
    pub total_enumerated: u64,
    pub applicable_count: u64,
    /// Instances that passed all filters and were measured.
    pub checked_count: u64,
    pub violations: Vec<ViolationRecord>,
    pub min_gap_witness: Option<GapWitness>,
    pub gap_histogram: GapHistogram,
    /// Smallest measure among checked instances.
    pub min_measure_checked: Option<Float>,
    /// Smallest measure exceeding 1 + circle tolerance among checked
    /// non-reciprocal instances.
    pub min_measure_nonreciprocal: Option<Float>,
    pub incomplete: Vec<IncompleteRecord>,
    pub runtime: RuntimeStats,
}

/// Outcome of the odd-alpha exploratory survey.
#[derive(Debug, Clone)]
pub struct OddAlphaReport {
    /// Number of unit-endpoint, odd-alpha, applicable instances found.
    pub instance_count: u64,
    pub min_gap: Option<Float>,
    pub witness: Option<IntPolynomial>,
    pub gap_histogram: GapHistogram,
    pub runtime: RuntimeStats,
}

/// One unit of parallel work: a degree plus pinned top coefficients.
#[derive(Debug, Clone, Copy)]
struct Shard {
    degree: usize,
    lead: i64,
    /// The coefficient below the leading one; absent for degree 1, where
    /// only the constant term remains free.
    second: Option<i64>,
}

fn shards(config: &ScanConfig) -> Vec<Shard> {
    let h = config.height;
    let mut out = Vec::new();
    for degree in config.degree_min..=config.degree_max {
        for lead in 1..=h {
            if degree == 1 {
                out.push(Shard {
                    degree,
                    lead,
                    second: None,
                });
            } else {
                for second in -h..=h {
                    out.push(Shard {
                        degree,
                        lead,
                        second: Some(second),
                    });
                }
            }
        }
    }
    out
}

/// Iterator over the polynomials of one shard: an odometer over the free
/// coefficient positions (constant term first, never zero).
struct ShardIter {
    shard: Shard,
    height: i64,
    /// free[0] is a_0, free[i] is a_i for 0 < i <= degree - 2.
    free: Vec<i64>,
    done: bool,
}

impl ShardIter {
    fn new(shard: Shard, height: i64) -> ShardIter {
        let free_len = if shard.second.is_some() {
            shard.degree - 1
        } else {
            1
        };
        let mut free = vec![-height; free_len];
        free[0] = -height; // a_0 starts at -height, which is nonzero
        ShardIter {
            shard,
            height,
            free,
            done: false,
        }
    }

    fn advance(&mut self) {
        for (i, v) in self.free.iter_mut().enumerate() {
            *v += 1;
            if i == 0 && *v == 0 {
                *v = 1; // constant term skips zero
            }
            if *v <= self.height {
                return;
            }
            *v = -self.height;
        }
        self.done = true;
    }
}

impl Iterator for ShardIter {
    type Item = IntPolynomial;

    fn next(&mut self) -> Option<IntPolynomial> {
        if self.done {
            return None;
        }
        let mut coeffs = Vec::with_capacity(self.shard.degree + 1);
        coeffs.extend_from_slice(&self.free);
        if let Some(second) = self.shard.second {
            coeffs.push(second);
        }
        coeffs.push(self.shard.lead);
        self.advance();
        Some(IntPolynomial::from_i64(&coeffs))
    }
}

/// All polynomials of the configured box in a fixed canonical order:
/// degree ascending, then leading coefficients, then the odometer order
/// of the remaining positions.
pub fn enumerate(config: &ScanConfig) -> Result<impl Iterator<Item = IntPolynomial>> {
    config.validate()?;
    let height = config.height;
    Ok(shards(config)
        .into_iter()
        .flat_map(move |s| ShardIter::new(s, height)))
}

/// Per-shard accumulator; merged in shard order after the parallel map.
#[derive(Debug, Default)]
struct Partial {
    total: u64,
    applicable: u64,
    checked: u64,
    violations: Vec<ViolationRecord>,
    min_gap: Option<GapWitness>,
    histogram: GapHistogram,
    min_measure_checked: Option<Float>,
    min_measure_nonreciprocal: Option<Float>,
    incomplete: Vec<IncompleteRecord>,
}

fn update_min(slot: &mut Option<Float>, value: &Float) {
    match slot {
        Some(current) if &*current <= value => {}
        _ => *slot = Some(value.clone()),
    }
}

fn measure_with_retry(f: &IntPolynomial, precision_bits: u32) -> Result<MahlerResult> {
    match measure::mahler_measure(f, precision_bits) {
        Ok(r) => Ok(r),
        Err(Error::PrecisionExhausted { .. }) => {
            measure::mahler_measure(f, precision_bits.saturating_mul(2))
        }
        Err(e) => Err(e),
    }
}

fn passes_filters(config: &ScanConfig, profile: &NonreciprocalProfile) -> bool {
    if config.unit_endpoints_only
        && !(profile.a0.clone().abs() == 1u32 && profile.an.clone().abs() == 1u32)
    {
        return false;
    }
    if config.odd_alpha_only {
        match &profile.alpha {
            Some(alpha) if alpha.is_odd() => {}
            _ => return false,
        }
    }
    if let Some(min) = config.alpha_min {
        match &profile.alpha {
            Some(alpha) if *alpha >= min => {}
            _ => return false,
        }
    }
    true
}

fn process_shard(shard: Shard, config: &ScanConfig) -> Partial {
    let mut part = Partial::default();
    let prec = config.precision_bits.max(measure::DEFAULT_PRECISION_BITS);
    let tol40 = measure::pow2(prec, -40);
    let circle_tol = measure::default_circle_tolerance(config.precision_bits);
    let one_plus_tol = Float::with_val(prec, 1u32) + &circle_tol;

    for f in ShardIter::new(shard, config.height) {
        part.total += 1;
        let profile = match nonreciprocal::theorem_bound(&f, config.precision_bits) {
            Ok(p) => p,
            Err(e) => {
                part.incomplete.push(IncompleteRecord {
                    polynomial: f,
                    message: e.to_string(),
                });
                continue;
            }
        };
        if profile.theorem_applicable {
            part.applicable += 1;
        }
        if config.require_applicable && !profile.theorem_applicable {
            continue;
        }
        if !passes_filters(config, &profile) {
            continue;
        }

        let mut mahler = match measure_with_retry(&f, config.precision_bits) {
            Ok(m) => m,
            Err(e) => {
                part.incomplete.push(IncompleteRecord {
                    polynomial: f,
                    message: e.to_string(),
                });
                continue;
            }
        };
        part.checked += 1;

        if profile.theorem_applicable {
            let bound = Float::with_val(prec, &profile.bound_value);
            let threshold = Float::with_val(prec, &bound - &tol40);
            let attained = Float::with_val(prec, &mahler.measure + &mahler.error_bound);
            if attained < threshold {
                // Candidate violation: re-verify at 4x precision and
                // against the independent root-squaring enclosure.
                match measure_with_retry(&f, config.precision_bits.saturating_mul(4)) {
                    Ok(refined) => {
                        let re_attained =
                            Float::with_val(prec, &refined.measure + &refined.error_bound);
                        let graeffe = measure::graeffe_measure(&f, 10);
                        match graeffe {
                            Ok((_, hi)) if re_attained < threshold && hi < threshold => {
                                let residual = Float::with_val(prec, &threshold - &re_attained);
                                part.violations.push(ViolationRecord {
                                    polynomial: f.clone(),
                                    bound: bound.clone(),
                                    measure: refined.measure.clone(),
                                    error_bound: refined.error_bound.clone(),
                                    residual,
                                });
                            }
                            Ok(_) => {}
                            Err(e) => {
                                part.incomplete.push(IncompleteRecord {
                                    polynomial: f.clone(),
                                    message: format!(
                                        "violation candidate could not be re-verified: {e}"
                                    ),
                                });
                            }
                        }
                        mahler = refined;
                    }
                    Err(e) => {
                        part.incomplete.push(IncompleteRecord {
                            polynomial: f.clone(),
                            message: format!("violation candidate could not be re-verified: {e}"),
                        });
                    }
                }
            }
            let gap = Float::with_val(prec, &mahler.measure - &bound);
            part.histogram.record(&gap);
            let better = match &part.min_gap {
                Some(w) => gap < w.gap,
                None => true,
            };
            if better {
                part.min_gap = Some(GapWitness {
                    polynomial: f.clone(),
                    gap,
                    measure: mahler.measure.clone(),
                    bound,
                });
            }
        }

        update_min(&mut part.min_measure_checked, &mahler.measure);
        if profile.k.is_some() && mahler.measure > one_plus_tol {
            update_min(&mut part.min_measure_nonreciprocal, &mahler.measure);
        }
    }
    part
}

/// Runs the configured scan: enumerates the box, checks the lower bound
/// against the computed measure for every applicable instance passing the
/// filters, and aggregates statistics.  Reports are deterministic and
/// independent of worker count.
pub fn scan_bounds(config: &ScanConfig) -> Result<ScanReport> {
    config.validate()?;
    let started = Instant::now();
    let shard_list = shards(config);
    let workers = if config.worker_count == 0 {
        std::thread::available_parallelism()
            .map(|v| v.get())
            .unwrap_or(1)
    } else {
        config.worker_count
    }
    .min(shard_list.len().max(1));

    let next = AtomicUsize::new(0);
    let partials: Vec<Mutex<Option<Partial>>> =
        shard_list.iter().map(|_| Mutex::new(None)).collect();

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= shard_list.len() {
                    break;
                }
                let part = process_shard(shard_list[i], config);
                *partials[i].lock().unwrap() = Some(part);
            });
        }
    });

    let mut report = ScanReport {
        total_enumerated: 0,
        applicable_count: 0,
        checked_count: 0,
        violations: Vec::new(),
        min_gap_witness: None,
        gap_histogram: GapHistogram::default(),
        min_measure_checked: None,
        min_measure_nonreciprocal: None,
        incomplete: Vec::new(),
        runtime: RuntimeStats {
            seconds: 0.0,
            workers,
        },
    };
    for slot in partials {
        let part = slot
            .into_inner()
            .unwrap()
            .expect("every shard is processed exactly once");
        report.total_enumerated += part.total;
        report.applicable_count += part.applicable;
        report.checked_count += part.checked;
        report.violations.extend(part.violations);
        report.incomplete.extend(part.incomplete);
        report.gap_histogram.merge(&part.histogram);
        if let Some(w) = part.min_gap {
            let better = match &report.min_gap_witness {
                Some(cur) => w.gap < cur.gap,
                None => true,
            };
            if better {
                report.min_gap_witness = Some(w);
            }
        }
        if let Some(m) = part.min_measure_checked {
            update_min(&mut report.min_measure_checked, &m);
        }
        if let Some(m) = part.min_measure_nonreciprocal {
            update_min(&mut report.min_measure_nonreciprocal, &m);
        }
    }
    report.runtime.seconds = started.elapsed().as_secs_f64();
    Ok(report)
}

/// Gathers gap statistics over the open-question corner: unit endpoints
/// and odd alpha.  Purely empirical; makes no sharpness claim.
pub fn odd_alpha_survey(config: &ScanConfig) -> Result<OddAlphaReport> {
    let mut cfg = config.clone();
    cfg.unit_endpoints_only = true;
    cfg.odd_alpha_only = true;
    cfg.require_applicable = true;
    let report = scan_bounds(&cfg)?;
    let (min_gap, witness) = match report.min_gap_witness {
        Some(w) => (Some(w.gap), Some(w.polynomial)),
        None => (None, None),
    };
    Ok(OddAlphaReport {
        instance_count: report.checked_count,
        min_gap,
        witness,
        gap_histogram: report.gap_histogram,
        runtime: report.runtime,
    })
}

/// Checks one externally supplied polynomial the same way the scan does;
/// used by the CLI corpus mode.  Returns the profile, the measure result,
/// and whether a (re-verified) violation was found.
pub fn check_instance(
    f: &IntPolynomial,
    precision_bits: u32,
) -> Result<(NonreciprocalProfile, MahlerResult, bool)> {
    let profile = nonreciprocal::theorem_bound(f, precision_bits)?;
    let mahler = measure_with_retry(f, precision_bits)?;
    if !profile.theorem_applicable {
        return Ok((profile, mahler, false));
    }
    let prec = precision_bits.max(measure::DEFAULT_PRECISION_BITS);
    let threshold = Float::with_val(prec, &profile.bound_value - &measure::pow2(prec, -40));
    let attained = Float::with_val(prec, &mahler.measure + &mahler.error_bound);
    if attained >= threshold {
        return Ok((profile, mahler, false));
    }
    let refined = measure_with_retry(f, precision_bits.saturating_mul(4))?;
    let re_attained = Float::with_val(prec, &refined.measure + &refined.error_bound);
    let (_, hi) = measure::graeffe_measure(f, 10)?;
    let violated = re_attained < threshold && hi < threshold;
    Ok((profile, refined, violated))
}
