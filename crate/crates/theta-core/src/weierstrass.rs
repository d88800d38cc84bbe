//! The Weierstrass product for the reciprocal Gamma function at positive
//! integer points, and the summed product identity built from it.
//!
//! The reciprocal Gamma function satisfies
//!
//! ```text
//! 1/Γ(k+1) = e^(γk) · P(k),      P(k) = ∏_{m=1}^{∞} (1 + k/m)·e^(−k/m),
//! ```
//!
//! with γ the Euler–Mascheroni constant, so at positive integers
//! P(k) = e^(−γk)/k!. That closed form is an independent oracle for the
//! product evaluation here.
//!
//! The summed identity under study is
//!
//! ```text
//! Σ_{j=0}^{s−1} e^(−γj) · P(s−j)  =  e^(−γs) · Θ(s+1)/s!
//! ```
//!
//! (each term is e^(−γj)·e^(−γ(s−j))/(s−j)! = e^(−γs)/(s−j)!, and
//! Σ_{m=1}^{s} 1/m! = Θ(s+1)/s!). [`theorem3_lhs`] evaluates the left
//! side through actual product evaluations, [`theorem3_exact_reduction`]
//! evaluates the right side from exact integers, and their agreement is
//! the structural check. Since Σ 1/m! → e−1, the quantity
//! e^(γs)·Θ(s+1)/s! increases to e−1 ≈ 1.7182818 — not to
//! C/√(2π) ≈ 1.8295376, the value suggested by inheriting the series
//! constant C; [`theorem3_rhs`] exposes that claimed right side so the
//! difference is measurable.

use num_traits::One;

use crate::asymptotics::{series_constant, ApproxResult, SeriesConfig};
use crate::bignat::BigNat;
use crate::error::{Error, Result};
use crate::exact::{factorial, theta};
use crate::real::{Real, MIN_PRECISION};

/// The Euler–Mascheroni constant γ = 0.5772156649…, as a fixed 110-digit
/// literal of the standard published value (computing γ from first
/// principles is out of scope, and a literal is auditable at sight).
const GAMMA_LITERAL: &str = "0.5772156649015328606065120900824024310421593359399235988057672348848677267776646709369470632917467495146314472498";

/// Highest working precision (decimal digits) supported by the γ literal,
/// kept a safe margin below the literal's length.
pub const GAMMA_MAX_PRECISION: usize = 100;

/// The Euler–Mascheroni constant γ at an explicit working precision.
#[derive(Debug, Clone)]
pub struct GammaConstant {
    /// γ = 0.57721566490153286060…, dimensionless.
    pub gamma: Real,
}

impl GammaConstant {
    /// Builds γ at the given precision. Rejects precisions beyond
    /// [`GAMMA_MAX_PRECISION`] (the literal would stop covering them)
    /// and below the crate-wide minimum of 15 digits.
    pub fn new(precision_digits: usize) -> Result<Self> {
        if !(MIN_PRECISION..=GAMMA_MAX_PRECISION).contains(&precision_digits) {
            return Err(Error::InvalidArgument(format!(
                "gamma constant supports {MIN_PRECISION}..={GAMMA_MAX_PRECISION} digits (got {precision_digits})"
            )));
        }
        Ok(GammaConstant {
            gamma: Real::parse(GAMMA_LITERAL, precision_digits)?,
        })
    }
}

/// The Euler–Mascheroni constant γ at the given precision.
pub fn euler_gamma(precision_digits: usize) -> Result<Real> {
    Ok(GammaConstant::new(precision_digits)?.gamma)
}

/// Accumulated log-space partial product
/// `ln P_M(k) = Σ_{m=1}^{M} (ln(1+k/m) − k/m) = −Σ_{m=1}^{M} g(k/m)`
/// with `g(x) = x − ln(1+x) ≥ 0`, returned as Σ g (so the partial product
/// is `exp(−sum)`). One kernel evaluation per factor; [`g_range_sum`] is
/// the fast blocked equivalent used by the adaptive product.
fn g_partial_sum(k: u64, from: u64, to: u64, d: usize) -> Real {
    let mut sum = Real::zero(d);
    let kr = Real::from_u64(k, d);
    for m in from..=to {
        let x = kr.div(&Real::from_u64(m, d));
        sum = sum.add(&g_kernel(&x, d));
    }
    sum
}

/// The same sum as [`g_partial_sum`], accumulated in blocks of
/// consecutive factors:
///
/// ```text
/// Σ_{m=a}^{b} (k/m − ln(1+k/m)) = k·Σ_{m=a}^{b} 1/m − ln ∏_{m=a}^{b} (m+k)/m,
/// ```
///
/// where the factor product and the harmonic slice are formed exactly in
/// integer arithmetic, so one logarithm and a handful of divisions serve
/// a whole block. Grouping also removes the per-factor cancellation in
/// `ln(1+x) − x`: the block difference is computed between two exactly
/// representable rationals whose rounding errors are independent of the
/// block's internal near-cancellations.
fn g_range_sum(k: u64, from: u64, to: u64, d: usize) -> Real {
    const BLOCK: u64 = 64;
    let mut sum = Real::zero(d);
    let kr = Real::from_u64(k, d);
    let mut a = from;
    while a <= to {
        let b = to.min(a + BLOCK - 1);
        let mut num = BigNat::one();
        let mut den = BigNat::one();
        for m in a..=b {
            num *= m + k;
            den *= m;
        }
        let (hn, hd) = harmonic_slice(a, b);
        let ln_ratio = Real::from_bignat(&num, d)
            .div(&Real::from_bignat(&den, d))
            .ln();
        let h = Real::from_bignat(&hn, d).div(&Real::from_bignat(&hd, d));
        sum = sum.add(&kr.mul(&h).sub(&ln_ratio));
        a = b + 1;
    }
    sum
}

/// Exact harmonic slice `Σ_{m=a}^{b} 1/m` as an unreduced fraction,
/// combined pairwise to keep the integer operands balanced.
fn harmonic_slice(a: u64, b: u64) -> (BigNat, BigNat) {
    if a == b {
        return (BigNat::one(), BigNat::from(a));
    }
    let mid = a + (b - a) / 2;
    let (n1, d1) = harmonic_slice(a, mid);
    let (n2, d2) = harmonic_slice(mid + 1, b);
    (&n1 * &d2 + &n2 * &d1, d1 * d2)
}

/// `g(x) = x − ln(1+x)` for x > 0, computed without cancellation: below
/// x = 10^(−3) the difference is summed directly from its series
/// `Σ_{n≥2} (−1)^n xⁿ/n`, above it the direct form loses at most ~3 of
/// the guard digits.
fn g_kernel(x: &Real, d: usize) -> Real {
    let threshold = Real::pow10(-3, d);
    if *x < threshold {
        // x²/2 − x³/3 + x⁴/4 − …, terms shrink by ≥ 10³ each step.
        let cutoff = Real::pow10(-(d as i64) - 8, d);
        let mut pow = x.mul(x);
        let mut n = 2u64;
        let mut acc = Real::zero(d);
        let first = pow.div(&Real::from_u64(2, d));
        loop {
            let term = pow.div(&Real::from_u64(n, d));
            acc = if n % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            if term < first.mul(&cutoff) {
                return acc;
            }
            pow = pow.mul(x);
            n += 1;
        }
    } else {
        x.sub(&Real::one(d).add(x).ln())
    }
}

/// `h(x) = (1+x)·ln(1+x) − x` for x > 0, the antiderivative kernel of
/// `g`: the tail integral below is `∫_a^∞ g(k/x) dx = a·h(k/a)`. Same
/// cancellation-free split as [`g_kernel`], with series
/// `Σ_{n≥2} (−1)ⁿ xⁿ/(n(n−1))`.
fn h_kernel(x: &Real, d: usize) -> Real {
    let threshold = Real::parse("0.0625", d).expect("constant");
    if *x < threshold {
        let cutoff = Real::pow10(-(d as i64) - 8, d);
        let mut pow = x.mul(x);
        let mut n = 2u64;
        let mut acc = Real::zero(d);
        let first = pow.div(&Real::from_u64(2, d));
        loop {
            let term = pow.div(&Real::from_u64(n * (n - 1), d));
            acc = if n % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            if term < first.mul(&cutoff) {
                return acc;
            }
            pow = pow.mul(x);
            n += 1;
        }
    } else {
        let one_px = Real::one(d).add(x);
        one_px.mul(&one_px.ln()).sub(x)
    }
}

/// Tail integral `I(a) = ∫_a^∞ g(k/x) dx = (a+k)·ln(1+k/a) − k`,
/// evaluated as `a·h(k/a)`.
fn tail_integral(k: u64, a: &Real, d: usize) -> Real {
    let x = Real::from_u64(k, d).div(a);
    a.mul(&h_kernel(&x, d))
}

/// Rigorous bracket `[lo, hi]` for the omitted log-space tail
/// `T = Σ_{m>M} g(k/m)`.
///
/// The map x ↦ g(k/x) is positive, decreasing and convex on (0, ∞)
/// (its second derivative is k²·(2/(x³(x+k)) + 1/(x²(x+k)²)) > 0), so
/// the midpoint rule under-estimates and the trapezoid rule
/// over-estimates each unit slice of its integral:
///
/// ```text
/// I(M+1) + g(k/(M+1))/2  ≤  T  ≤  I(M+½).
/// ```
fn tail_bracket(k: u64, m_used: u64, d: usize) -> (Real, Real) {
    let a_lo = Real::from_u64(m_used + 1, d);
    let half = Real::parse("0.5", d).expect("constant");
    let a_hi = Real::from_u64(m_used, d).add(&half);
    let g_next = g_kernel(&Real::from_u64(k, d).div(&a_lo), d);
    let lo = tail_integral(k, &a_lo, d).add(&g_next.mul(&half));
    let hi = tail_integral(k, &a_hi, d);
    (lo, hi)
}

/// Evaluates the Weierstrass product
///
/// ```text
/// P(k) = ∏_{m=1}^{∞} (1 + k/m)·e^(−k/m)
/// ```
///
/// at a positive integer point, accumulated in log-space as
/// `Σ (ln(1+k/m) − k/m)` over m = 1..M (grouped into exact integer
/// blocks, see [`g_range_sum`]) and corrected by the midpoint of
/// a rigorous bracket for the omitted log-space tail (see
/// [`tail_bracket`]). The bracket half-width h bounds the log-space
/// error, so the returned value carries relative error at most
/// `e^h − 1`; M is chosen adaptively (h shrinks like k²/(8M³)) so that
/// this relative error is at most `tolerance`. `truncation_bound` is the
/// rigorous two-sided bound `(e^h − 1)·value`: the true P(k) lies within
/// `value ± truncation_bound`.
///
/// The raw partial product without the tail correction converges only
/// like k²/(2M) — reaching 10^(−8) that way would take ~10^10 factors —
/// so the tail correction is what makes tight tolerances reachable at
/// all; [`weierstrass_partial`] exposes the uncorrected form.
///
/// `tolerance` is read as a relative target (P(k) = e^(−γk)/k! spans
/// many orders of magnitude). Fails with [`Error::MaxTermsExceeded`]
/// when more than `max_terms` factors would be needed.
pub fn weierstrass_product(k: u64, cfg: &SeriesConfig) -> Result<ApproxResult> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "Weierstrass product point must be a positive integer".into(),
        ));
    }
    let d = cfg.precision_digits();
    let tol = cfg.tolerance();

    // Term budget from the bracket's asymptotic half-width ~ k²/(8M³):
    // M ≥ (k²/(2·tol))^(1/3) gives half-width ≤ tol/4 with slack. The
    // f64 estimate only sizes the loop; the bracket below is what
    // certifies the result.
    let tol_log2 = (tol.exponent_bin() - 1) as f64;
    let m_needed = ((2.0 * (k as f64).log2() - tol_log2 - 1.0) / 3.0).exp2().ceil() as u128 + 1;
    if m_needed > cfg.max_terms() as u128 {
        return Err(Error::MaxTermsExceeded {
            max_terms: cfg.max_terms(),
            detail: format!(
                "Weierstrass product at k = {k} needs about {m_needed} factors for relative tolerance {tol}"
            ),
        });
    }
    let mut m_used = m_needed as u64;
    let mut log_sum = g_range_sum(k, 1, m_used, d);
    loop {
        let (lo, hi) = tail_bracket(k, m_used, d);
        let two = Real::from_u64(2, d);
        let mid = lo.add(&hi).div(&two);
        let half_width = hi.sub(&lo).div(&two);
        if half_width <= *tol {
            let value = log_sum.add(&mid).neg().exp();
            let rel_bound = half_width.exp().sub(&Real::one(d));
            return Ok(ApproxResult {
                truncation_bound: rel_bound.mul(&value),
                value,
                terms_used: m_used as usize,
            });
        }
        // The f64 sizing was too optimistic (not observed in practice);
        // extend the accumulation within the configured budget.
        let next = (m_used * 2).min(cfg.max_terms() as u64);
        if next == m_used {
            return Err(Error::MaxTermsExceeded {
                max_terms: cfg.max_terms(),
                detail: format!(
                    "Weierstrass product tail bracket at k = {k} still above relative tolerance {tol} after {m_used} factors"
                ),
            });
        }
        log_sum = log_sum.add(&g_range_sum(k, m_used + 1, next, d));
        m_used = next;
    }
}

/// The raw partial product `P_M(k) = ∏_{m=1}^{M} (1+k/m)·e^(−k/m)`
/// without any tail correction. The factors all lie in (0, 1), so the
/// partial products decrease monotonically toward P(k); the first one is
/// P_1(1) = 2/e ≈ 0.735759.
pub fn weierstrass_partial(k: u64, factors: u64, precision_digits: usize) -> Result<Real> {
    if k == 0 || factors == 0 {
        return Err(Error::InvalidArgument(
            "partial product needs k ≥ 1 and at least one factor".into(),
        ));
    }
    Ok(g_partial_sum(k, 1, factors, precision_digits).neg().exp())
}

/// Evaluates the summed product side
///
/// ```text
/// Σ_{j=0}^{s−1} e^(−γj) · P(s−j)
/// ```
///
/// with every P evaluated by [`weierstrass_product`] at the configured
/// tolerance. Rejects `s = 0`; propagates product failures.
pub fn theorem3_lhs(s: u64, cfg: &SeriesConfig) -> Result<Real> {
    if s == 0 {
        return Err(Error::InvalidArgument(
            "summed product side needs s ≥ 1".into(),
        ));
    }
    let d = cfg.precision_digits();
    let gamma = euler_gamma(d)?;
    let e_neg_gamma = gamma.neg().exp();
    let mut sum = Real::zero(d);
    for j in 0..s {
        let p = weierstrass_product(s - j, cfg)?.value;
        sum = sum.add(&e_neg_gamma.powi(j).mul(&p));
    }
    Ok(sum)
}

/// The exact closed form that [`theorem3_lhs`] must match:
///
/// ```text
/// e^(−γs) · Θ(s+1)/s!
/// ```
///
/// evaluated in high precision from the exact integers Θ(s+1) and s!.
/// Rejects `s = 0`.
pub fn theorem3_exact_reduction(s: u64, precision_digits: usize) -> Result<Real> {
    if s == 0 {
        return Err(Error::InvalidArgument(
            "exact reduction needs s ≥ 1".into(),
        ));
    }
    let d = precision_digits;
    let gamma = euler_gamma(d)?;
    let th = Real::from_bignat(&theta(s + 1)?, d);
    let fact = Real::from_bignat(&factorial(s), d);
    Ok(gamma.mul(&Real::from_u64(s, d)).neg().exp().mul(&th.div(&fact)))
}

/// The claimed asymptotic right side `e^(−γs)·C/√(2π)` with C from
/// [`series_constant`]. The exact reduction actually converges to
/// `e^(−γs)·(e−1)` — about 6% lower — which is the same constant
/// discrepancy measured by [`crate::asymptotics::ratio_study`]; this
/// function exposes the claimed value so the gap can be reported.
/// Rejects `s = 0`; propagates series failures.
pub fn theorem3_rhs(s: u64, cfg: &SeriesConfig) -> Result<Real> {
    if s == 0 {
        return Err(Error::InvalidArgument(
            "asymptotic right side needs s ≥ 1".into(),
        ));
    }
    let d = cfg.precision_digits();
    let gamma = euler_gamma(d)?;
    let c = series_constant(cfg)?.value;
    let two_pi = Real::pi(d).mul(&Real::from_u64(2, d));
    Ok(gamma
        .mul(&Real::from_u64(s, d))
        .neg()
        .exp()
        .mul(&c.div(&two_pi.sqrt())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(tol: &str, max_terms: usize) -> SeriesConfig {
        SeriesConfig::from_parts(tol, max_terms, 50).unwrap()
    }

    /// Oracle P(k) = e^(−γk)/k! at the configured precision.
    fn oracle(k: u64, d: usize) -> Real {
        let gamma = euler_gamma(d).unwrap();
        let fact = Real::from_bignat(&factorial(k), d);
        gamma.mul(&Real::from_u64(k, d)).neg().exp().div(&fact)
    }

    #[test]
    fn gamma_constant_prefix() {
        let g = euler_gamma(50).unwrap();
        assert_eq!(g.format_sig(20), "5.7721566490153286061e-1");
        // γ = 0.5772156649015328606065…; the 20th digit rounds up on the
        // trailing 65.
        assert_eq!(g.format_readable(20), "0.57721566490153286061");
        assert!(GammaConstant::new(101).is_err());
        assert!(GammaConstant::new(10).is_err());
        assert!(GammaConstant::new(100).is_ok());
    }

    #[test]
    fn product_matches_oracle_examples() {
        let c = cfg("1e-8", 100_000);
        let p1 = weierstrass_product(1, &c).unwrap();
        assert!(p1
            .value
            .agrees_to_digits(&Real::parse("0.5614594835668851698241432147908807867657", 50).unwrap(), 9));
        let p3 = weierstrass_product(3, &c).unwrap();
        assert!(p3
            .value
            .agrees_to_digits(&Real::parse("0.02949877730059900375189324005059317476692", 50).unwrap(), 9));
    }

    #[test]
    fn product_oracle_bound_small_k() {
        // Relative deviation from e^(−γk)/k! stays within 10× the
        // requested tolerance (the bracket is in fact much tighter).
        let c = cfg("1e-6", 100_000);
        let ten_tol = Real::parse("1e-5", 50).unwrap();
        for k in 1..=10u64 {
            let p = weierstrass_product(k, &c).unwrap();
            let want = oracle(k, 50);
            let dev = p.value.rel_diff(&want);
            assert!(dev <= ten_tol, "k = {k}: deviation {dev}");
            // The two-sided truncation bound really covers the oracle.
            assert!(p.value.sub(&p.truncation_bound) <= want);
            assert!(p.value.add(&p.truncation_bound) >= want);
        }
    }

    #[test]
    fn product_tight_tolerance_spot_check() {
        let c = cfg("1e-8", 100_000);
        let p = weierstrass_product(3, &c).unwrap();
        let dev = p.value.rel_diff(&oracle(3, 50));
        assert!(dev <= Real::parse("1e-7", 50).unwrap(), "deviation {dev}");
    }

    #[test]
    fn product_budget_errors() {
        assert!(matches!(
            weierstrass_product(10, &cfg("1e-8", 200)),
            Err(Error::MaxTermsExceeded { .. })
        ));
        assert!(weierstrass_product(0, &cfg("1e-8", 200)).is_err());
    }

    #[test]
    fn product_bound_halves_with_tolerance() {
        let a = weierstrass_product(3, &cfg("1e-8", 100_000)).unwrap();
        let b = weierstrass_product(3, &cfg("5e-9", 100_000)).unwrap();
        assert!(b.truncation_bound.is_positive());
        // Halving the tolerance should (at least) halve the bound, up to
        // the discreteness of the factor count.
        let ratio = b.truncation_bound.div(&a.truncation_bound);
        assert!(
            ratio <= Real::parse("0.65", 50).unwrap(),
            "bound ratio {ratio}"
        );
        assert!(b.terms_used > a.terms_used);
    }

    #[test]
    fn harmonic_slice_matches_reduced_fraction() {
        // Σ_{m=1}^{5} 1/m = 137/60; compare by cross-multiplication since
        // the slice is unreduced.
        let (hn, hd) = harmonic_slice(1, 5);
        assert_eq!(hn * 60u32, hd * 137u32);
        let (n1, d1) = harmonic_slice(7, 7);
        assert_eq!((n1, d1), (BigNat::one(), BigNat::from(7u32)));
    }

    #[test]
    fn blocked_accumulation_matches_per_factor() {
        // The blocked sum regroups the same series; both paths must agree
        // to nearly full working precision, across block boundaries.
        for (k, m) in [(1u64, 1u64), (2, 63), (3, 64), (5, 65), (4, 200), (10, 1000)] {
            let blocked = g_range_sum(k, 1, m, 50);
            let per_factor = g_partial_sum(k, 1, m, 50);
            assert!(
                blocked.agrees_to_digits(&per_factor, 44),
                "k = {k}, m = {m}: {blocked} vs {per_factor}"
            );
        }
    }

    #[test]
    fn partial_product_anchor() {
        // P_1(1) = 2·e^(−1) ≈ 0.735759, and partial products decrease
        // toward the limit from above. The reference literal carries 40
        // digits; compare comfortably inside that.
        let p11 = weierstrass_partial(1, 1, 50).unwrap();
        assert!(p11.agrees_to_digits(
            &Real::parse("0.7357588823428846431910475403229217348916", 50).unwrap(),
            38
        ));
        let p1_100 = weierstrass_partial(1, 100, 50).unwrap();
        assert!(p11 > p1_100);
        assert!(p1_100 > oracle(1, 50));
    }

    #[test]
    fn lhs_matches_exact_reduction() {
        let c = cfg("1e-10", 1_000_000);
        let bound = Real::parse("1e-8", 50).unwrap();
        for s in 1..=8u64 {
            let lhs = theorem3_lhs(s, &c).unwrap();
            let red = theorem3_exact_reduction(s, 50).unwrap();
            let dev = lhs.rel_diff(&red);
            assert!(dev <= bound, "s = {s}: deviation {dev}");
        }
    }

    #[test]
    fn exact_reduction_examples() {
        let d = 50;
        let r1 = theorem3_exact_reduction(1, d).unwrap();
        assert!(r1.agrees_to_digits(&oracle(1, d), d - 3)); // e^(−γ)·Θ(2)/1! = e^(−γ)
        let r2 = theorem3_exact_reduction(2, d).unwrap();
        assert!(r2.agrees_to_digits(
            &Real::parse("0.4728551275307900970915301445331591782659", d).unwrap(),
            d - 10
        ));
        let r10 = theorem3_exact_reduction(10, d).unwrap();
        assert!(r10.agrees_to_digits(
            &Real::parse("0.005349074036744993288418604942351985390296", d).unwrap(),
            d - 10
        ));
    }

    #[test]
    fn scaled_reduction_increases_to_e_minus_one() {
        let d = 50;
        let gamma = euler_gamma(d).unwrap();
        let e_minus_one = Real::e(d).sub(&Real::one(d));
        let mut prev = Real::zero(d);
        for s in 1..=20u64 {
            let scaled = gamma
                .mul(&Real::from_u64(s, d))
                .exp()
                .mul(&theorem3_exact_reduction(s, d).unwrap());
            assert!(scaled > prev, "not increasing at s = {s}");
            assert!(scaled < e_minus_one, "crossed e−1 at s = {s}");
            prev = scaled;
        }
        // At s = 20 the gap to e−1 is the factorial tail Σ_{m>20} 1/m!,
        // about 2.05·10^(−20).
        let gap = e_minus_one.sub(&prev);
        assert!(gap <= Real::parse("1e-19", d).unwrap(), "gap {gap}");
        assert!(gap.is_positive());
    }

    #[test]
    fn rhs_examples() {
        let c = cfg("1e-30", 200);
        let d = 50;
        // s = 1: e^(−γ)·C/√(2π) ≈ 1.0272113; the s-independent factor
        // C/√(2π) is ≈ 1.8295376.
        let r1 = theorem3_rhs(1, &c).unwrap();
        assert!(r1.agrees_to_digits(
            &Real::parse("1.027211259344678805084476182592600037632", d).unwrap(),
            28
        ));
        let ratio = r1.div(&theorem3_rhs(2, &c).unwrap());
        // Consecutive values differ by exactly e^γ.
        assert!(ratio.agrees_to_digits(&euler_gamma(d).unwrap().exp(), d - 5));
        assert!(theorem3_rhs(0, &c).is_err());
    }
}
