//! Implementations of the `theta` subcommands.

use std::env;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use theta_core::applications::{
    discrepancy_report, distribution_table, seating_bruteforce, seating_count_formula, TableRow,
};
use theta_core::asymptotics::{
    limit_reference, ratio_study, series_constant, stirling_approx, SeriesConfig,
};
use theta_core::bignat::to_decimal;
use theta_core::exact::{
    factorial, falling_factorial_sum, floor_e_factorial_check, theta, theta_sum_form,
};
use theta_core::real::{Real, MIN_PRECISION};
use theta_core::weierstrass::{euler_gamma, theorem3_exact_reduction, weierstrass_product};

use crate::{Cli, CliError, Command, OutputFormat};

/// Environment variable overriding the default working precision when no
/// `--precision` flag applies.
pub const PRECISION_ENV: &str = "THETA_PRECISION";

/// Upper precision cap: the built-in Euler–Mascheroni literal covers 100
/// decimal digits, so that is the ceiling everywhere.
const MAX_PRECISION: usize = 100;

pub fn run(cli: Cli) -> Result<(), CliError> {
    let digits = cli.digits as usize;
    match cli.command {
        Command::Exact { s, identity_check } => cmd_exact(s, identity_check),
        Command::Approx {
            s,
            precision,
            tolerance,
        } => cmd_approx(s, precision.map(|p| p as usize), &tolerance, digits),
        Command::Table { max, format, out } => cmd_table(max, format, out.as_deref(), digits),
        Command::Verify { s_max, tolerance } => cmd_verify(s_max, &tolerance, digits),
    }
}

/// Working precision: explicit flag, else `THETA_PRECISION`, else the
/// library default of 50 digits; validated against the supported range.
fn resolve_precision(flag: Option<usize>) -> Result<usize, CliError> {
    let p = if let Some(p) = flag {
        p
    } else if let Ok(raw) = env::var(PRECISION_ENV) {
        raw.trim().parse::<usize>().map_err(|_| {
            CliError::Usage(format!(
                "{PRECISION_ENV} must be an integer number of decimal digits (got {raw:?})"
            ))
        })?
    } else {
        SeriesConfig::DEFAULT_PRECISION
    };
    if !(MIN_PRECISION..=MAX_PRECISION).contains(&p) {
        return Err(CliError::Usage(format!(
            "precision must be between {MIN_PRECISION} and {MAX_PRECISION} decimal digits (got {p})"
        )));
    }
    Ok(p)
}

fn cmd_exact(s: u64, identity_check: bool) -> Result<(), CliError> {
    let value = theta(s)?;
    println!("{}", to_decimal(&value));
    if !identity_check {
        return Ok(());
    }
    let next = theta(s + 1)?;
    let checks = [
        (
            format!("theta({s}) = sum of ({s}-1)!/m! for m = 1..{}", s - 1),
            theta_sum_form(s)? == value,
        ),
        (
            format!("theta({}) = sum of falling factorials of {s}", s + 1),
            falling_factorial_sum(s)? == next,
        ),
        (
            format!("theta({}) = floor(e*{s}!) - {s}!", s + 1),
            floor_e_factorial_check(s)?,
        ),
    ];
    let mut all_ok = true;
    for (label, ok) in &checks {
        println!("check {label}: {}", if *ok { "pass" } else { "fail" });
        all_ok &= ok;
    }
    if all_ok {
        Ok(())
    } else {
        Err(CliError::Failure("identity check failed".into()))
    }
}

fn cmd_approx(
    s: u64,
    precision_flag: Option<usize>,
    tolerance: &str,
    digits: usize,
) -> Result<(), CliError> {
    let precision = resolve_precision(precision_flag)?;
    let cfg = SeriesConfig::from_parts(tolerance, SeriesConfig::DEFAULT_MAX_TERMS, precision)?;
    let value = stirling_approx(s, &cfg)?;
    let c = series_constant(&cfg)?;
    println!("approx({s}) = {}", value.format_readable(digits));
    println!("C = {}", c.value.format_readable(digits));
    println!("C truncation bound <= {}", c.truncation_bound.format_sig(3));
    println!("series terms used = {}", c.terms_used);
    Ok(())
}

fn cmd_table(
    max: u64,
    format: OutputFormat,
    out: Option<&Path>,
    digits: usize,
) -> Result<(), CliError> {
    let precision = resolve_precision(None)?;
    let cfg = SeriesConfig::from_parts(
        SeriesConfig::DEFAULT_TOLERANCE,
        SeriesConfig::DEFAULT_MAX_TERMS,
        precision,
    )?;
    let rows = distribution_table(max, &cfg)?;
    let bytes = match format {
        OutputFormat::Plain => render_plain(&rows, digits).into_bytes(),
        OutputFormat::Csv => render_csv(&rows, precision)?,
        OutputFormat::Json => render_json(&rows, precision)?,
    };
    match out {
        None => io::stdout()
            .write_all(&bytes)
            .map_err(|e| CliError::Failure(format!("cannot write to stdout: {e}"))),
        Some(path) => fs::write(path, &bytes)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
    }
}

/// Aligned text table; numeric cells at `digits` significant digits,
/// missing cells as `-`, every column right-aligned.
fn render_plain(rows: &[TableRow], digits: usize) -> String {
    let header = ["s", "theta_exact", "approx", "rel_error"];
    let cells: Vec<[String; 4]> = rows
        .iter()
        .map(|r| {
            [
                r.s.to_string(),
                to_decimal(&r.exact),
                r.approx
                    .as_ref()
                    .map_or_else(|| "-".into(), |v| v.format_readable(digits)),
                r.rel_error
                    .as_ref()
                    .map_or_else(|| "-".into(), |v| v.format_readable(digits)),
            ]
        })
        .collect();
    let mut width = header.map(str::len);
    for row in &cells {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut text = String::new();
    let push_row = |cols: [&str; 4], text: &mut String| {
        for (i, col) in cols.iter().enumerate() {
            if i > 0 {
                text.push_str("  ");
            }
            for _ in col.len()..width[i] {
                text.push(' ');
            }
            text.push_str(col);
        }
        text.push('\n');
    };
    push_row(header, &mut text);
    for row in &cells {
        push_row([&row[0], &row[1], &row[2], &row[3]], &mut text);
    }
    text
}

/// CSV with header `s,theta_exact,approx,rel_error`; full-precision
/// significand notation for the numeric columns, empty fields where the
/// approximant is undefined (s = 1).
fn render_csv(rows: &[TableRow], precision: usize) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io_err = |e: csv::Error| CliError::Failure(format!("cannot serialize csv: {e}"));
    w.write_record(["s", "theta_exact", "approx", "rel_error"])
        .map_err(io_err)?;
    for r in rows {
        w.write_record([
            r.s.to_string(),
            to_decimal(&r.exact),
            r.approx
                .as_ref()
                .map(|v| v.format_sig(precision))
                .unwrap_or_default(),
            r.rel_error
                .as_ref()
                .map(|v| v.format_sig(precision))
                .unwrap_or_default(),
        ])
        .map_err(io_err)?;
    }
    w.into_inner()
        .map_err(|e| CliError::Failure(format!("cannot flush csv: {e}")))
}

#[derive(Serialize)]
struct JsonRow {
    s: u64,
    theta_exact: String,
    approx: Option<String>,
    rel_error: Option<String>,
}

/// JSON array of row objects; `theta_exact` is a decimal string to keep
/// arbitrary-size integers lossless, `approx`/`rel_error` are
/// full-precision significand strings or null at s = 1.
fn render_json(rows: &[TableRow], precision: usize) -> Result<Vec<u8>, CliError> {
    let json_rows: Vec<JsonRow> = rows
        .iter()
        .map(|r| JsonRow {
            s: r.s,
            theta_exact: to_decimal(&r.exact),
            approx: r.approx.as_ref().map(|v| v.format_sig(precision)),
            rel_error: r.rel_error.as_ref().map(|v| v.format_sig(precision)),
        })
        .collect();
    let mut bytes = serde_json::to_vec_pretty(&json_rows)
        .map_err(|e| CliError::Failure(format!("cannot serialize json: {e}")))?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Running tally of verify checks.
struct Audit {
    checks: usize,
    failures: usize,
}

impl Audit {
    fn check(&mut self, ok: bool, line: &str) {
        self.checks += 1;
        if ok {
            println!("ok: {line}");
        } else {
            self.failures += 1;
            println!("FAIL: {line}");
        }
    }
}

fn cmd_verify(s_max: u64, tolerance: &str, digits: usize) -> Result<(), CliError> {
    if s_max < 15 {
        return Err(CliError::Usage(format!(
            "verify needs --s-max >= 15 (got {s_max})"
        )));
    }
    let d = resolve_precision(None)?;
    // The tolerance flag drives the product evaluations (relative) and
    // their agreement gates; series evaluation keeps the library default.
    let cfg_products = SeriesConfig::from_parts(tolerance, 50_000_000, d)?;
    let cfg_series = SeriesConfig::from_parts(
        SeriesConfig::DEFAULT_TOLERANCE,
        SeriesConfig::DEFAULT_MAX_TERMS,
        d,
    )?;
    let mut audit = Audit {
        checks: 0,
        failures: 0,
    };

    println!("verify (s_max = {s_max}, tolerance = {tolerance}, precision = {d} digits)");
    println!();

    println!("[identities]");
    let mut sum_ok = true;
    let mut falling_ok = true;
    for s in 1..=s_max {
        let th = theta(s)?;
        sum_ok &= theta_sum_form(s)? == th;
        falling_ok &= falling_factorial_sum(s)? == theta(s + 1)?;
    }
    audit.check(
        sum_ok,
        &format!("recurrence equals factorial-ratio sum for s = 1..{s_max}"),
    );
    audit.check(
        falling_ok,
        &format!("falling-factorial sum equals theta(s+1) for s = 1..{s_max}"),
    );
    let floor_max = s_max.min(500);
    let mut floor_ok = true;
    for s in 1..=floor_max {
        floor_ok &= floor_e_factorial_check(s)?;
    }
    audit.check(
        floor_ok,
        &format!("floor(e*s!) - s! equals theta(s+1), certified for s = 1..{floor_max}"),
    );

    println!();
    println!("[weierstrass]");
    let gamma = euler_gamma(d)?;
    let e_neg_gamma = gamma.neg().exp();
    let n3 = s_max.min(20);
    let kmax = n3.max(10);
    // One product evaluation per point, shared by this stage and the
    // summed-product stage below.
    let mut products: Vec<Real> = Vec::with_capacity(kmax as usize + 1);
    products.push(Real::zero(d)); // index 0 unused
    for k in 1..=kmax {
        products.push(weierstrass_product(k, &cfg_products)?.value);
    }
    let gate_w = cfg_products.tolerance().mul(&Real::from_u64(10, d));
    let mut weier_ok = true;
    let mut max_dev = Real::zero(d);
    for k in 1..=10u64 {
        let oracle = e_neg_gamma
            .powi(k)
            .div(&Real::from_bignat(&factorial(k), d));
        let dev = products[k as usize].rel_diff(&oracle);
        if dev > max_dev {
            max_dev = dev.clone();
        }
        weier_ok &= dev <= gate_w;
    }
    audit.check(
        weier_ok,
        &format!(
            "product matches exp(-k*gamma)/k! for k = 1..10, max relative deviation {} (gate {})",
            max_dev.format_sig(3),
            gate_w.format_sig(3)
        ),
    );

    println!();
    println!("[theorem3]");
    let gate_t = cfg_products.tolerance().mul(&Real::from_u64(100, d));
    let mut t3_ok = true;
    let mut max_dev3 = Real::zero(d);
    for s in 1..=n3 {
        let mut lhs = Real::zero(d);
        for j in 0..s {
            lhs = lhs.add(&e_neg_gamma.powi(j).mul(&products[(s - j) as usize]));
        }
        let dev = lhs.rel_diff(&theorem3_exact_reduction(s, d)?);
        if dev > max_dev3 {
            max_dev3 = dev.clone();
        }
        t3_ok &= dev <= gate_t;
    }
    audit.check(
        t3_ok,
        &format!(
            "summed product side matches exp(-gamma*s)*theta(s+1)/s! for s = 1..{n3}, max relative deviation {} (gate {})",
            max_dev3.format_sig(3),
            gate_t.format_sig(3)
        ),
    );

    println!();
    println!("[ratio]");
    let ratios = ratio_study(s_max, &cfg_series)?;
    let peak = ratios
        .iter()
        .cloned()
        .reduce(|best, cur| if cur.1 > best.1 { cur } else { best })
        .expect("ratio study is nonempty");
    audit.check(
        peak.0 == 5,
        &format!(
            "ratio peaks at s = 5 with r(5) = {}",
            peak.1.format_readable(digits)
        ),
    );
    let mut decreasing = true;
    for w in ratios.windows(2) {
        if w[0].0 >= 5 {
            decreasing &= w[1].1 < w[0].1;
        }
    }
    audit.check(
        decreasing,
        &format!("r(s) decreases monotonically for 5 <= s <= {s_max}"),
    );
    println!("note: r(s) increases from s = 2 to s = 5 before decreasing; it is not monotone from s = 3");
    let r_final = ratios.last().expect("ratio study is nonempty");
    let limit = limit_reference(d);
    let c_val = series_constant(&cfg_series)?.value;
    let gap_l = r_final.1.rel_diff(&limit);
    let gap_c = r_final.1.rel_diff(&c_val);
    audit.check(
        gap_l < Real::parse("0.01", d)?,
        &format!(
            "relative gap of r({s_max}) to (e-1)*sqrt(2*pi) = {} (required < 0.01)",
            gap_l.format_readable(digits)
        ),
    );
    audit.check(
        gap_c > Real::parse("0.05", d)?,
        &format!(
            "relative gap of r({s_max}) to C = {} (required > 0.05)",
            gap_c.format_readable(digits)
        ),
    );

    println!();
    println!("[seating]");
    let mut seat_ok = true;
    for s in 1..=4u64 {
        seat_ok &= seating_count_formula(s)? == seating_bruteforce(s)?;
    }
    audit.check(
        seat_ok,
        "seating product formula matches exhaustive enumeration for s = 1..4",
    );

    println!();
    println!("[discrepancies]");
    print!("{}", discrepancy_report(s_max, &cfg_series)?);

    println!();
    if audit.failures == 0 {
        println!("verify: PASS ({} checks)", audit.checks);
        Ok(())
    } else {
        println!(
            "verify: FAIL ({} of {} checks failed)",
            audit.failures, audit.checks
        );
        Err(CliError::Failure(format!(
            "{} invariant check(s) failed",
            audit.failures
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_rendering_is_aligned() {
        let cfg = SeriesConfig::default();
        let rows = distribution_table(3, &cfg).unwrap();
        let text = render_plain(&rows, 10);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[0].ends_with("rel_error"));
        // Missing cells render as "-" and all lines share one width.
        assert!(lines[1].ends_with('-'));
        assert!(lines.iter().all(|l| l.len() == lines[0].len()));
    }

    #[test]
    fn csv_rendering_has_header_and_blanks() {
        let cfg = SeriesConfig::default();
        let rows = distribution_table(2, &cfg).unwrap();
        let bytes = render_csv(&rows, 50).unwrap();
        let text = String::from_utf8(bytes).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "s,theta_exact,approx,rel_error");
        assert_eq!(lines[1], "1,0,,");
        assert!(lines[2].starts_with("2,1,1.687"));
    }

    #[test]
    fn json_rendering_uses_null_for_missing() {
        let cfg = SeriesConfig::default();
        let rows = distribution_table(2, &cfg).unwrap();
        let bytes = render_json(&rows, 50).unwrap();
        let parsed: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(parsed[0]["s"], 1);
        assert_eq!(parsed[0]["theta_exact"], "0");
        assert!(parsed[0]["approx"].is_null());
        assert_eq!(parsed[1]["theta_exact"], "1");
        assert!(parsed[1]["approx"].is_string());
    }
}
