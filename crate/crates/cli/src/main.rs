//! `mahler` — Mahler measures, nonreciprocal lower bounds, proof
//! certificates, the sharp example family, and coefficient-box scans.
//!
//! Every command prints a JSON envelope {command, input, payload, status}
//! (or a plain-text rendering of the same values with --format plain) and
//! exits 0 on success, 2 on input errors, 3 on numeric failures, and 4
//! when a theorem-falsifying event was found (a scan violation or a
//! failing certificate check).

use std::io::Read;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use mahler_core::rug::{Complex, Float, Integer, Rational};
use mahler_core::{certificate, measure, nonreciprocal, scan, sharp_family};
use mahler_core::{IntPolynomial, ScanConfig};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "mahler",
    version,
    about = "Mahler measures and nonreciprocal lower bounds for integer polynomials",
    after_help = "Polynomials are written either densely, constant term first \
(\"1,-1,-1,0,0,1\"), or as monomials (\"x^5+x^4-x^3-x^2-x+1\")."
)]
struct Cli {
    /// Working precision in bits
    #[arg(
        long,
        global = true,
        default_value_t = 128,
        env = "MAHLER_PRECISION",
        value_name = "BITS"
    )]
    precision: u32,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Plain,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the Mahler measure with a certified error bound
    Measure {
        /// Polynomial, dense ("2,-3,1") or monomial ("x^2-3x+2") form
        poly: String,
    },
    /// Evaluate the k-nonreciprocal lower bound
    Bound {
        poly: String,
    },
    /// Reconstruct and verify the proof certificate
    Certify {
        poly: String,
        /// Series truncation length (default max(2k, 16))
        #[arg(long, value_name = "L")]
        trunc: Option<usize>,
    },
    /// Construct a sharp-family member and verify the bound is attained
    Family {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, allow_hyphen_values = true)]
        c: i64,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Scan a coefficient box (or a corpus) against the bound
    Scan {
        #[arg(long, default_value_t = 1)]
        deg_min: usize,
        #[arg(long, default_value_t = 6)]
        deg_max: usize,
        #[arg(long, default_value_t = 1)]
        height: i64,
        /// Only check polynomials with |a_0| = |a_n| = 1
        #[arg(long)]
        unit_endpoints: bool,
        /// Only check polynomials with odd alpha
        #[arg(long)]
        odd_alpha: bool,
        /// Only check polynomials with alpha at least this value
        #[arg(long, value_name = "A")]
        alpha_min: Option<u64>,
        /// Also measure theorem-inapplicable polynomials (statistics only)
        #[arg(long)]
        include_inapplicable: bool,
        /// Worker threads (default: available parallelism)
        #[arg(long, value_name = "N")]
        workers: Option<usize>,
        /// Include the gap histogram as CSV text in the payload
        #[arg(long)]
        histogram_csv: bool,
        /// Check polynomials from a file instead of a box; "-" reads one
        /// polynomial per line from standard input
        #[arg(long, value_name = "FILE")]
        corpus: Option<String>,
    },
    /// Survey measure-bound gaps over unit-endpoint, odd-alpha polynomials
    Survey {
        #[arg(long, default_value_t = 1)]
        deg_min: usize,
        #[arg(long, default_value_t = 6)]
        deg_max: usize,
        #[arg(long, default_value_t = 1)]
        height: i64,
        #[arg(long, value_name = "N")]
        workers: Option<usize>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Measure { .. } => "measure",
            Command::Bound { .. } => "bound",
            Command::Certify { .. } => "certify",
            Command::Family { .. } => "family",
            Command::Scan { .. } => "scan",
            Command::Survey { .. } => "survey",
        }
    }
}

struct CliError {
    code: u8,
    message: String,
}

impl From<mahler_core::Error> for CliError {
    fn from(e: mahler_core::Error) -> CliError {
        let code = match e {
            mahler_core::Error::PrecisionExhausted { .. }
            | mahler_core::Error::CoefficientBlowup { .. } => 3,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> CliError {
    CliError {
        code: 2,
        message: message.into(),
    }
}

/// Successful command output: the echoed input polynomial (when there is
/// one), the payload, and whether a theorem-falsifying event was found.
struct Outcome {
    input: Value,
    payload: Value,
    falsified: bool,
}

// ---------------------------------------------------------------------
// rendering helpers

/// Floats are rendered at 15 significant digits; both output formats use
/// the same rounded value.
fn num(f: &Float) -> Value {
    let v: f64 = format!("{:.14e}", f.to_f64()).parse().unwrap_or(f64::NAN);
    serde_json::Number::from_f64(v)
        .map(Value::Number)
        .unwrap_or_else(|| Value::String(v.to_string()))
}

fn int(i: &Integer) -> Value {
    Value::String(i.to_string())
}

fn rat(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn complex(z: &Complex) -> Value {
    json!({ "re": num(z.real()), "im": num(z.imag()) })
}

fn opt<T, F: Fn(&T) -> Value>(v: &Option<T>, f: F) -> Value {
    v.as_ref().map(&f).unwrap_or(Value::Null)
}

fn poly_value(f: &IntPolynomial) -> Value {
    Value::String(f.to_string())
}

fn parse_poly(s: &str) -> Result<IntPolynomial, CliError> {
    IntPolynomial::from_str(s).map_err(CliError::from)
}

fn histogram_value(h: &scan::GapHistogram) -> Value {
    Value::Array(
        h.bins()
            .into_iter()
            .map(|(lo, hi, count)| {
                json!({
                    "gap_lo": lo,
                    "gap_hi": hi.map_or(Value::Null, Value::from),
                    "count": count,
                })
            })
            .collect(),
    )
}

// ---------------------------------------------------------------------
// subcommands

fn cmd_measure(poly: &str, precision: u32) -> Result<Outcome, CliError> {
    let f = parse_poly(poly)?;
    let r = measure::mahler_measure(&f, precision)?;
    let roots: Vec<Value> = r
        .roots
        .iter()
        .map(|root| {
            json!({
                "re": num(root.value.real()),
                "im": num(root.value.imag()),
                "radius": num(&root.radius),
                "modulus_class": root.modulus_class.as_str(),
            })
        })
        .collect();
    Ok(Outcome {
        input: poly_value(&f),
        payload: json!({
            "degree": f.degree(),
            "measure": num(&r.measure),
            "error_bound": num(&r.error_bound),
            "leading_abs": int(&r.leading_abs),
            "roots": roots,
            "precision_bits": precision,
        }),
        falsified: false,
    })
}

fn profile_value(profile: &nonreciprocal::NonreciprocalProfile) -> Value {
    json!({
        "k": profile.k,
        "alpha": opt(&profile.alpha, int),
        "applicable": profile.theorem_applicable,
        "bound_exact": {
            "alpha": int(&profile.bound_exact.alpha),
            "D": int(&profile.bound_exact.discriminant),
            "denom": int(&profile.bound_exact.denominator),
        },
        "bound_value": num(&profile.bound_value),
        "triviality": nonreciprocal::classify_triviality(profile).as_str(),
    })
}

fn cmd_bound(poly: &str, precision: u32) -> Result<Outcome, CliError> {
    let f = parse_poly(poly)?;
    let profile = nonreciprocal::theorem_bound(&f, precision)?;
    Ok(Outcome {
        input: poly_value(&f),
        payload: profile_value(&profile),
        falsified: false,
    })
}

fn cmd_certify(poly: &str, trunc: Option<usize>, precision: u32) -> Result<Outcome, CliError> {
    let f = parse_poly(poly)?;
    let truncation = match trunc {
        Some(l) => l,
        None => {
            let normalized = f.normalize_signs()?;
            match nonreciprocal::detect_k(&normalized)? {
                Some(k) => certificate::default_truncation(k),
                None => {
                    return Err(CliError::from(mahler_core::Error::NotApplicable(
                        "no discrepancy index: polynomial is reciprocal".to_string(),
                    )))
                }
            }
        }
    };
    let cert = certificate::build_certificate(&f, truncation, precision)?;
    let checks: Vec<Value> = cert
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name.as_str(),
                "passed": c.passed,
                "residual": num(&c.residual),
                "tolerance": num(&c.tolerance),
            })
        })
        .collect();
    let all_passed = cert.all_passed();
    Ok(Outcome {
        input: poly_value(&f),
        payload: json!({
            "k": cert.k,
            "truncation": cert.truncation,
            "epsilon": cert.epsilon,
            "q": cert.q.iter().map(rat).collect::<Vec<_>>(),
            "e": cert.e.iter().map(rat).collect::<Vec<_>>(),
            "b": cert.b.iter().map(complex).collect::<Vec<_>>(),
            "c": cert.c.iter().map(complex).collect::<Vec<_>>(),
            "checks": checks,
            "all_passed": all_passed,
        }),
        falsified: !all_passed,
    })
}

fn cmd_family(
    a: i64,
    b: i64,
    c: i64,
    k: usize,
    n: usize,
    precision: u32,
) -> Result<Outcome, CliError> {
    let params = sharp_family::SharpFamilyParams::new(a, b, c, k, n)?;
    let r = sharp_family::verify_sharpness(&params, precision)?;
    let tolerance = Float::with_val(
        precision.max(64),
        Float::i_exp(1, -(precision as i32 / 4)),
    );
    let sharp_ok = !r.applicable
        || (r.identity_exact && r.k_matches && r.alpha_matches && r.max_discrepancy <= tolerance);
    Ok(Outcome {
        input: poly_value(&r.polynomial),
        payload: json!({
            "params": { "a": a, "b": b, "c": c, "k": k, "n": n },
            "polynomial": poly_value(&r.polynomial),
            "applicable": r.applicable,
            "bound_value": num(&r.bound_value),
            "closed_form": num(&r.closed_form),
            "numeric_measure": num(&r.numeric_measure),
            "measure_error": num(&r.measure_error),
            "max_discrepancy": num(&r.max_discrepancy),
            "k_matches": r.k_matches,
            "alpha_matches": r.alpha_matches,
            "identity_exact": r.identity_exact,
            "root_partition": {
                "inside": r.inside_count,
                "on_circle": r.on_circle_count,
                "outside": r.outside_count,
            },
        }),
        falsified: !sharp_ok,
    })
}

fn violation_value(v: &scan::ViolationRecord) -> Value {
    json!({
        "polynomial": poly_value(&v.polynomial),
        "bound": num(&v.bound),
        "measure": num(&v.measure),
        "error_bound": num(&v.error_bound),
        "residual": num(&v.residual),
    })
}

fn cmd_scan_box(
    config: &ScanConfig,
    histogram_csv: bool,
) -> Result<Outcome, CliError> {
    let report = scan::scan_bounds(config)?;
    let witness = report.min_gap_witness.as_ref().map(|w| {
        json!({
            "polynomial": poly_value(&w.polynomial),
            "gap": num(&w.gap),
            "measure": num(&w.measure),
            "bound": num(&w.bound),
        })
    });
    let incomplete: Vec<Value> = report
        .incomplete
        .iter()
        .map(|r| json!({ "polynomial": poly_value(&r.polynomial), "message": r.message }))
        .collect();
    let mut payload = json!({
        "config": {
            "degree_min": config.degree_min,
            "degree_max": config.degree_max,
            "height": config.height,
            "require_applicable": config.require_applicable,
            "unit_endpoints_only": config.unit_endpoints_only,
            "odd_alpha_only": config.odd_alpha_only,
            "alpha_min": config.alpha_min,
            "precision_bits": config.precision_bits,
        },
        "total_enumerated": report.total_enumerated,
        "applicable_count": report.applicable_count,
        "checked_count": report.checked_count,
        "violations": report.violations.iter().map(violation_value).collect::<Vec<_>>(),
        "min_gap_witness": witness.unwrap_or(Value::Null),
        "min_measure_checked": opt(&report.min_measure_checked, num),
        "min_measure_nonreciprocal": opt(&report.min_measure_nonreciprocal, num),
        "gap_histogram": histogram_value(&report.gap_histogram),
        "incomplete": incomplete,
        "runtime": {
            "seconds": report.runtime.seconds,
            "workers": report.runtime.workers,
        },
    });
    if histogram_csv {
        payload["histogram_csv"] = Value::String(report.gap_histogram.to_csv());
    }
    Ok(Outcome {
        input: Value::Null,
        payload,
        falsified: !report.violations.is_empty(),
    })
}

fn cmd_scan_corpus(source: &str, precision: u32) -> Result<Outcome, CliError> {
    let text = if source == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| input_error(format!("cannot read standard input: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(source)
            .map_err(|e| input_error(format!("cannot read corpus file {source}: {e}")))?
    };
    let mut results = Vec::new();
    let mut violations = 0u64;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let f = IntPolynomial::from_str(line)
            .map_err(|e| input_error(format!("corpus line {}: {e}", lineno + 1)))?;
        let (profile, mahler, violated) = scan::check_instance(&f, precision)?;
        if violated {
            violations += 1;
        }
        results.push(json!({
            "polynomial": poly_value(&f),
            "k": profile.k,
            "applicable": profile.theorem_applicable,
            "bound_value": num(&profile.bound_value),
            "measure": num(&mahler.measure),
            "error_bound": num(&mahler.error_bound),
            "violated": violated,
        }));
    }
    Ok(Outcome {
        input: Value::Null,
        payload: json!({
            "checked": results.len(),
            "violations": violations,
            "results": results,
        }),
        falsified: violations > 0,
    })
}

fn cmd_survey(config: &ScanConfig) -> Result<Outcome, CliError> {
    let report = scan::odd_alpha_survey(config)?;
    Ok(Outcome {
        input: Value::Null,
        payload: json!({
            "instance_count": report.instance_count,
            "min_gap": opt(&report.min_gap, num),
            "witness": opt(&report.witness, poly_value),
            "gap_histogram": histogram_value(&report.gap_histogram),
            "runtime": {
                "seconds": report.runtime.seconds,
                "workers": report.runtime.workers,
            },
        }),
        falsified: false,
    })
}

// ---------------------------------------------------------------------
// plain-format rendering: the same value tree as the JSON output, one
// "key: value" line per scalar

fn plain(value: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                match v {
                    Value::Object(_) | Value::Array(_) if !is_empty_composite(v) => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        plain(v, indent + 2, out);
                    }
                    _ => out.push_str(&format!("{pad}{key}: {}\n", scalar(v))),
                }
            }
        }
        Value::Array(items) => {
            for v in items {
                match v {
                    Value::Object(_) | Value::Array(_) if !is_empty_composite(v) => {
                        out.push_str(&format!("{pad}-\n"));
                        plain(v, indent + 2, out);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", scalar(v))),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(value))),
    }
}

fn is_empty_composite(v: &Value) -> bool {
    match v {
        Value::Object(m) => m.is_empty(),
        Value::Array(a) => a.is_empty(),
        _ => false,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "null".to_string(),
        other => other.to_string(),
    }
}

fn emit(format: Format, envelope: &Value) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(envelope).expect("envelope serializes")
        ),
        Format::Plain => {
            let mut out = String::new();
            plain(envelope, 0, &mut out);
            print!("{out}");
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    if !(8..=1 << 20).contains(&cli.precision) {
        return Err(input_error(format!(
            "precision must be between 8 and {} bits, got {}",
            1 << 20,
            cli.precision
        )));
    }
    match &cli.command {
        Command::Measure { poly } => cmd_measure(poly, cli.precision),
        Command::Bound { poly } => cmd_bound(poly, cli.precision),
        Command::Certify { poly, trunc } => cmd_certify(poly, *trunc, cli.precision),
        Command::Family { a, b, c, k, n } => cmd_family(*a, *b, *c, *k, *n, cli.precision),
        Command::Scan {
            deg_min,
            deg_max,
            height,
            unit_endpoints,
            odd_alpha,
            alpha_min,
            include_inapplicable,
            workers,
            histogram_csv,
            corpus,
        } => {
            if let Some(source) = corpus {
                return cmd_scan_corpus(source, cli.precision);
            }
            let config = ScanConfig {
                degree_min: *deg_min,
                degree_max: *deg_max,
                height: *height,
                require_applicable: !include_inapplicable,
                precision_bits: cli.precision,
                worker_count: workers.unwrap_or(0),
                unit_endpoints_only: *unit_endpoints,
                odd_alpha_only: *odd_alpha,
                alpha_min: *alpha_min,
            };
            cmd_scan_box(&config, *histogram_csv)
        }
        Command::Survey {
            deg_min,
            deg_max,
            height,
            workers,
        } => {
            let config = ScanConfig {
                degree_min: *deg_min,
                degree_max: *deg_max,
                height: *height,
                precision_bits: cli.precision,
                worker_count: workers.unwrap_or(0),
                ..ScanConfig::default()
            };
            cmd_survey(&config)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = cli.command.name();
    match dispatch(&cli) {
        Ok(outcome) => {
            let envelope = json!({
                "command": command,
                "input": outcome.input,
                "payload": outcome.payload,
                "status": "ok",
            });
            emit(cli.format, &envelope);
            if outcome.falsified {
                ExitCode::from(4)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            let envelope = json!({
                "command": command,
                "input": Value::Null,
                "status": "error",
                "error": { "code": e.code, "message": e.message },
            });
            emit(cli.format, &envelope);
            ExitCode::from(e.code)
        }
    }
}
