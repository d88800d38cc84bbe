//! Distribution tables comparing exact Θ values against the asymptotic
//! approximant, a seating-assignment count with a brute-force oracle,
//! and a consolidated discrepancy report.
//!
//! The report collects the three places where computed values part ways
//! with tabulated or claimed ones:
//!
//! * Θ(15): the recurrence gives 149796873605, while a widely circulated
//!   tabulated value is 160496650291. The tabulated number equals
//!   1 + 15·Θ(14) — the recurrence step Θ(15) = 1 + 14·Θ(14) taken with
//!   multiplier 15 instead of 14 — so the discrepancy is explainable,
//!   and the recurrence value is the correct one.
//! * the ratio study: r(s) = Θ(s+1)/(s^s·√s·e^(−s)) settles on
//!   (e−1)·√(2π) ≈ 4.30709, not on the series constant C ≈ 4.58597 that
//!   the approximant uses; the report quantifies both gaps.
//! * seating: the assignment count N(s) does not match Θ(s+1) beyond
//!   s = 1 (N(2) = 4 vs Θ(3) = 3), so the two sequences are genuinely
//!   different objects.

use std::fmt;

use num_traits::Zero;

use crate::asymptotics::{
    limit_reference, ratio_study, series_constant, stirling_approx, SeriesConfig,
};
use crate::bignat::{to_decimal, BigNat};
use crate::error::{Error, Result};
use crate::exact::theta;
use crate::real::Real;

/// One row of the distribution table: the exact value Θ(s) next to the
/// approximant evaluated at s−1 (the tabulated convention pairs Θ(s)
/// with the formula one step back, where it approximates the same
/// quantity).
#[derive(Debug, Clone)]
pub struct TableRow {
    /// Row index s ≥ 1.
    pub s: u64,
    /// Exact Θ(s) from the recurrence.
    pub exact: BigNat,
    /// `stirling_approx(s−1)`; absent for s = 1 (the approximant has no
    /// s = 0 value, and Θ(1) = 0 admits no relative comparison).
    pub approx: Option<Real>,
    /// |approx − exact| / exact; absent exactly when `approx` is.
    pub rel_error: Option<Real>,
}

/// Builds the distribution table for s = 1..s_max: exact Θ(s) via a
/// single recurrence pass, the approximant `(s−1)^(s−1)·√(s−1)·e^(−(s−1))·C`
/// alongside from s = 2 on, and the relative error between them.
/// Requires 2 ≤ s_max ≤ 1000.
pub fn distribution_table(s_max: u64, cfg: &SeriesConfig) -> Result<Vec<TableRow>> {
    if !(2..=1000).contains(&s_max) {
        return Err(Error::InvalidArgument(format!(
            "distribution table supports 2 ≤ s_max ≤ 1000 (got {s_max})"
        )));
    }
    let d = cfg.precision_digits();
    let mut rows = Vec::with_capacity(s_max as usize);
    let mut th = BigNat::zero(); // Θ(1)
    for s in 1..=s_max {
        if s > 1 {
            th = th * (s - 1) + 1u32; // Θ(s) = 1 + (s−1)·Θ(s−1)
        }
        let (approx, rel_error) = if s > 1 {
            let a = stirling_approx(s - 1, cfg)?;
            let exact_r = Real::from_bignat(&th, d);
            let rel = a.sub(&exact_r).abs().div(&exact_r);
            (Some(a), Some(rel))
        } else {
            (None, None)
        };
        rows.push(TableRow {
            s,
            exact: th.clone(),
            approx,
            rel_error,
        });
    }
    Ok(rows)
}

/// The seating problem: s rows of s distinguishable seats each; row j
/// has a designated group of j people (group sizes 1, 2, …, s); an
/// assignment seats every group injectively into its own row, rows
/// independent of one another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeatingInstance {
    s: u64,
    group_sizes: Vec<u64>,
}

impl SeatingInstance {
    /// Builds the instance with s rows and group sizes exactly 1..s.
    /// Rejects s = 0.
    pub fn new(s: u64) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidArgument(
                "seating instance needs at least one row".into(),
            ));
        }
        Ok(SeatingInstance {
            s,
            group_sizes: (1..=s).collect(),
        })
    }

    /// Number of rows (= seats per row).
    pub fn s(&self) -> u64 {
        self.s
    }

    /// Designated group sizes, always exactly 1, 2, …, s.
    pub fn group_sizes(&self) -> &[u64] {
        &self.group_sizes
    }

    /// Total number of people, s(s+1)/2.
    pub fn total_people(&self) -> u64 {
        self.s * (self.s + 1) / 2
    }
}

/// Counts seating assignments by the closed product formula
///
/// ```text
/// N(s) = ∏_{j=1}^{s} s!/(s−j)! = ∏_{j=1}^{s} s·(s−1)⋯(s−j+1):
/// ```
///
/// row j contributes the number of injective placements of its j people
/// into s seats, and rows multiply independently. N(1..4) = 1, 4, 108,
/// 27648. Rejects s = 0.
pub fn seating_count_formula(s: u64) -> Result<BigNat> {
    let inst = SeatingInstance::new(s)?;
    let mut product = BigNat::from(1u32);
    let mut falling = BigNat::from(1u32);
    for j in inst.group_sizes() {
        falling *= s - j + 1; // falling = s·(s−1)⋯(s−j+1)
        product *= &falling;
    }
    Ok(product)
}

/// Counts seating assignments by exhaustive enumeration: a depth-first
/// search places each row's group seat by seat (distinct seats within
/// the row) and counts complete assignments. Independent of the product
/// formula, so the two validate each other. Restricted to s ≤ 4, where
/// the search visits at most N(4) = 27648 leaves.
pub fn seating_bruteforce(s: u64) -> Result<BigNat> {
    let inst = SeatingInstance::new(s)?;
    if s > 4 {
        return Err(Error::InvalidArgument(format!(
            "brute-force enumeration is limited to s ≤ 4 (got {s}); the assignment count grows too fast beyond"
        )));
    }
    fn dfs(s: u64, row: u64, placed: u64, seat_mask: u64) -> u64 {
        if row > s {
            return 1; // every row fully seated: one complete assignment
        }
        if placed == row {
            return dfs(s, row + 1, 0, 0); // row done; its group size is `row`
        }
        let mut total = 0;
        for seat in 0..s {
            if seat_mask & (1 << seat) == 0 {
                total += dfs(s, row, placed + 1, seat_mask | (1 << seat));
            }
        }
        total
    }
    let _ = inst; // instance only validates the model's shape here
    Ok(BigNat::from(dfs(s, 1, 0, 0)))
}

/// The tabulated reference value for Θ(15) whose mismatch with the
/// recurrence the report documents. It equals 1 + 15·Θ(14): the final
/// recurrence step with multiplier 15 where Θ(15) = 1 + 14·Θ(14).
pub const TABULATED_THETA_15: u64 = 160_496_650_291;

/// Seating comparison entry: the formula count, the enumerated count,
/// and the Θ value it fails to match.
#[derive(Debug, Clone)]
pub struct SeatingComparison {
    /// Instance size (rows = seats per row).
    pub s: u64,
    /// N(s) by the product formula.
    pub formula: BigNat,
    /// N(s) by exhaustive enumeration.
    pub bruteforce: BigNat,
    /// Θ(s+1), for contrast; equal to N(s) only at s = 1.
    pub theta_next: BigNat,
}

/// Consolidated discrepancy report; see the module docs for the three
/// discrepancies it covers. Every numeric field records how it was
/// computed in the rendered output.
#[derive(Debug, Clone)]
pub struct DiscrepancyReport {
    /// Upper end of the ratio study range.
    pub s_max: u64,
    /// Working precision in decimal digits.
    pub precision_digits: usize,
    /// Θ(15) from the recurrence: 149796873605.
    pub theta15_computed: BigNat,
    /// The tabulated reference value [`TABULATED_THETA_15`].
    pub theta15_tabulated: BigNat,
    /// Final ratio (s_max, r(s_max)) of the study.
    pub ratio_final: (u64, Real),
    /// Peak of the ratio sequence, (5, r(5)) for any s_max ≥ 5.
    pub ratio_peak: (u64, Real),
    /// The series constant C ≈ 4.58597.
    pub series_c: Real,
    /// The closed-form limit (e−1)·√(2π) ≈ 4.30709.
    pub limit_value: Real,
    /// |r(s_max) − (e−1)√(2π)| / (e−1)√(2π).
    pub gap_to_limit: Real,
    /// |r(s_max) − C| / C.
    pub gap_to_c: Real,
    /// Seating comparisons for s = 1..4.
    pub seating: Vec<SeatingComparison>,
}

/// Assembles the discrepancy report at the given study range (s_max ≥ 15
/// so the Θ(15) entry lies inside it) and configuration. Deterministic
/// for fixed inputs.
pub fn discrepancy_report(s_max: u64, cfg: &SeriesConfig) -> Result<DiscrepancyReport> {
    if s_max < 15 {
        return Err(Error::InvalidArgument(format!(
            "discrepancy report needs s_max ≥ 15 (got {s_max})"
        )));
    }
    let d = cfg.precision_digits();
    let ratios = ratio_study(s_max, cfg)?;
    let ratio_final = ratios.last().expect("nonempty for s_max ≥ 2").clone();
    let ratio_peak = ratios
        .iter()
        .cloned()
        .reduce(|best, cur| if cur.1 > best.1 { cur } else { best })
        .expect("nonempty for s_max ≥ 2");
    let series_c = series_constant(cfg)?.value;
    let limit_value = limit_reference(d);
    let gap_to_limit = ratio_final.1.rel_diff(&limit_value);
    let gap_to_c = ratio_final.1.rel_diff(&series_c);
    let mut seating = Vec::with_capacity(4);
    for s in 1..=4u64 {
        seating.push(SeatingComparison {
            s,
            formula: seating_count_formula(s)?,
            bruteforce: seating_bruteforce(s)?,
            theta_next: theta(s + 1)?,
        });
    }
    Ok(DiscrepancyReport {
        s_max,
        precision_digits: d,
        theta15_computed: theta(15)?,
        theta15_tabulated: BigNat::from(TABULATED_THETA_15),
        ratio_final,
        ratio_peak,
        series_c,
        limit_value,
        gap_to_limit,
        gap_to_c,
        seating,
    })
}

impl fmt::Display for DiscrepancyReport {
    /// Structured key-value text; ASCII only, deterministic for a fixed
    /// report. Real values render at 12 significant digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const DIGITS: usize = 12;
        writeln!(
            f,
            "discrepancy report (s_max = {}, precision = {} digits)",
            self.s_max, self.precision_digits
        )?;
        writeln!(f)?;
        writeln!(f, "[table]")?;
        writeln!(
            f,
            "theta(15) = {} (recurrence)",
            to_decimal(&self.theta15_computed)
        )?;
        writeln!(
            f,
            "theta(15) = {} (tabulated reference)",
            to_decimal(&self.theta15_tabulated)
        )?;
        writeln!(
            f,
            "note: the tabulated value equals 1 + 15*theta(14); the recurrence step is theta(15) = 1 + 14*theta(14)"
        )?;
        writeln!(f)?;
        writeln!(f, "[ratio]")?;
        writeln!(
            f,
            "r({}) = {} (log-space ratio of exact theta({}))",
            self.ratio_final.0,
            self.ratio_final.1.format_readable(DIGITS),
            self.ratio_final.0 + 1
        )?;
        writeln!(
            f,
            "(e-1)*sqrt(2*pi) = {} (closed form)",
            self.limit_value.format_readable(DIGITS)
        )?;
        writeln!(
            f,
            "C = {} (series evaluation)",
            self.series_c.format_readable(DIGITS)
        )?;
        writeln!(
            f,
            "relative gap of r({}) to (e-1)*sqrt(2*pi) = {}",
            self.ratio_final.0,
            self.gap_to_limit.format_readable(DIGITS)
        )?;
        writeln!(
            f,
            "relative gap of r({}) to C = {}",
            self.ratio_final.0,
            self.gap_to_c.format_readable(DIGITS)
        )?;
        writeln!(
            f,
            "peak of r at s = {} with r = {}; r decreases monotonically beyond the peak",
            self.ratio_peak.0,
            self.ratio_peak.1.format_readable(DIGITS)
        )?;
        writeln!(f)?;
        writeln!(f, "[seating]")?;
        for row in &self.seating {
            let verdict = if row.formula == row.theta_next {
                "equals"
            } else {
                "differs from"
            };
            writeln!(
                f,
                "s = {}: N = {} (product formula), enumeration = {}, theta({}) = {}; N {} theta({})",
                row.s,
                to_decimal(&row.formula),
                to_decimal(&row.bruteforce),
                row.s + 1,
                to_decimal(&row.theta_next),
                verdict,
                row.s + 1
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SeriesConfig {
        SeriesConfig::default()
    }

    #[test]
    fn table_exact_column_first_fifteen() {
        let rows = distribution_table(15, &cfg()).unwrap();
        let expect: [u64; 15] = [
            0,
            1,
            3,
            10,
            41,
            206,
            1237,
            8660,
            69281,
            623530,
            6235301,
            68588312,
            823059745,
            10699776686,
            149796873605,
        ];
        assert_eq!(rows.len(), 15);
        for (row, want) in rows.iter().zip(expect) {
            assert_eq!(row.exact, BigNat::from(want), "s = {}", row.s);
            assert_eq!(row.exact, theta(row.s).unwrap());
        }
    }

    #[test]
    fn table_approx_column() {
        let rows = distribution_table(15, &cfg()).unwrap();
        assert!(rows[0].approx.is_none());
        assert!(rows[0].rel_error.is_none());
        // Row s pairs Θ(s) with the approximant at s−1, and rel_error is
        // exactly |approx − exact|/exact.
        let d = 50;
        for row in &rows[1..] {
            let direct = stirling_approx(row.s - 1, &cfg()).unwrap();
            assert_eq!(row.approx.as_ref().unwrap(), &direct, "s = {}", row.s);
            let exact_r = Real::from_bignat(&row.exact, d);
            let recomputed = direct.sub(&exact_r).abs().div(&exact_r);
            assert_eq!(row.rel_error.as_ref().unwrap(), &recomputed, "s = {}", row.s);
        }
        // Error shape: ≈ 69% at s = 2, down into the ≈ 5–6% band by
        // s = 15 (the approximant's constant C overestimates the true
        // limiting constant by about 6.5%, so the error never vanishes).
        let re2 = rows[1].rel_error.as_ref().unwrap();
        assert!(re2 > &Real::parse("0.6", d).unwrap());
        assert!(re2 < &Real::parse("0.7", d).unwrap());
        let re15 = rows[14].rel_error.as_ref().unwrap();
        assert!(re15 > &Real::parse("0.05", d).unwrap());
        assert!(re15 < &Real::parse("0.07", d).unwrap());
    }

    #[test]
    fn table_error_signs() {
        let rows = distribution_table(200, &cfg()).unwrap();
        for row in &rows[1..] {
            assert!(
                row.rel_error.as_ref().unwrap().is_positive(),
                "rel_error not positive at s = {}",
                row.s
            );
        }
        // The approximant overshoots from s = 3 on.
        let d = 50;
        for row in rows.iter().filter(|r| r.s >= 3) {
            let diff = row
                .approx
                .as_ref()
                .unwrap()
                .sub(&Real::from_bignat(&row.exact, d));
            assert!(diff.is_positive(), "approx ≤ exact at s = {}", row.s);
        }
    }

    #[test]
    fn table_bounds() {
        assert!(distribution_table(1, &cfg()).is_err());
        assert!(distribution_table(1001, &cfg()).is_err());
        assert!(distribution_table(2, &cfg()).is_ok());
    }

    #[test]
    fn seating_instance_shape() {
        let inst = SeatingInstance::new(3).unwrap();
        assert_eq!(inst.s(), 3);
        assert_eq!(inst.group_sizes(), &[1, 2, 3]);
        assert_eq!(inst.total_people(), 6);
        assert_eq!(
            inst.total_people(),
            inst.group_sizes().iter().sum::<u64>()
        );
        assert!(SeatingInstance::new(0).is_err());
    }

    #[test]
    fn seating_formula_values() {
        let expect: [(u64, u64); 5] = [(1, 1), (2, 4), (3, 108), (4, 27648), (5, 86_400_000)];
        for (s, want) in expect {
            assert_eq!(seating_count_formula(s).unwrap(), BigNat::from(want), "s = {s}");
        }
        assert!(seating_count_formula(0).is_err());
    }

    #[test]
    fn seating_bruteforce_agrees_with_formula() {
        for s in 1..=4u64 {
            assert_eq!(
                seating_bruteforce(s).unwrap(),
                seating_count_formula(s).unwrap(),
                "s = {s}"
            );
        }
        assert!(seating_bruteforce(5).is_err());
        assert!(seating_bruteforce(0).is_err());
    }

    #[test]
    fn seating_differs_from_theta() {
        // N matches Θ(s+1) only at s = 1.
        assert_eq!(seating_count_formula(1).unwrap(), theta(2).unwrap());
        assert_eq!(seating_count_formula(2).unwrap(), BigNat::from(4u32));
        assert_eq!(theta(3).unwrap(), BigNat::from(3u32));
        for s in 2..=4u64 {
            assert_ne!(seating_count_formula(s).unwrap(), theta(s + 1).unwrap());
        }
    }

    #[test]
    fn report_contents() {
        let report = discrepancy_report(200, &cfg()).unwrap();
        assert_eq!(report.theta15_computed, BigNat::from(149_796_873_605u64));
        assert_eq!(report.theta15_tabulated, BigNat::from(TABULATED_THETA_15));
        // The tabulated value is exactly the recurrence step with the
        // wrong multiplier.
        let wrong_step = theta(14).unwrap() * 15u32 + 1u32;
        assert_eq!(report.theta15_tabulated, wrong_step);
        // Gap structure: close to (e−1)√(2π), far from C.
        assert!(report.gap_to_limit < Real::parse("0.01", 50).unwrap());
        assert!(report.gap_to_c > Real::parse("0.05", 50).unwrap());
        assert_eq!(report.ratio_peak.0, 5);
        assert_eq!(report.ratio_final.0, 200);
        assert_eq!(report.seating.len(), 4);
        for row in &report.seating {
            assert_eq!(row.formula, row.bruteforce, "s = {}", row.s);
        }
    }

    #[test]
    fn report_display_is_deterministic_and_labelled() {
        let a = discrepancy_report(30, &cfg()).unwrap().to_string();
        let b = discrepancy_report(30, &cfg()).unwrap().to_string();
        assert_eq!(a, b);
        assert!(a.contains("149796873605"));
        assert!(a.contains("160496650291"));
        assert!(a.contains("(recurrence)"));
        assert!(a.contains("(tabulated reference)"));
        assert!(a.contains("(series evaluation)"));
        assert!(a.contains("(closed form)"));
        assert!(a.contains("N differs from theta(3)"));
        assert!(a.is_ascii());
    }

    #[test]
    fn report_precondition() {
        assert!(discrepancy_report(14, &cfg()).is_err());
        assert!(discrepancy_report(15, &cfg()).is_ok());
    }
}
