//! Exact arbitrary-precision evaluation of the theta splitting function
//! and of every identity that follows from its definition.
//!
//! The theta splitting function is defined on positive integers by
//!
//! ```text
//! Θ(1) = 0,    Θ(s+1) = 1 + s·Θ(s)        (s ≥ 1)
//! ```
//!
//! Everything in this module is computed with exact integer (and, for the
//! floor oracle, exact rational) arithmetic; no floating point is
//! involved anywhere.

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::bignat::BigNat;
use crate::error::{Error, Result};

fn require_positive(s: u64, what: &str) -> Result<()> {
    if s == 0 {
        Err(Error::InvalidArgument(format!(
            "{what} is defined for positive integer arguments only (got 0)"
        )))
    } else {
        Ok(())
    }
}

/// Evaluates Θ(s) by iterating the recurrence Θ(s+1) = 1 + s·Θ(s) upward
/// from Θ(1) = 0. Exact; no rounding at any step.
///
/// Rejects `s = 0`: Θ is defined on positive integer arguments, with the
/// base case of the recurrence encoded as Θ(1) = 0.
///
/// The recurrence has quadratic bit-cost in `s`; arguments in the desk
/// range (s ≤ a few thousand) are cheap, while s beyond roughly 10^5 is
/// outside this crate's intended scale.
///
/// ```
/// use theta_core::exact::theta;
/// assert_eq!(theta(1).unwrap().to_string(), "0");
/// assert_eq!(theta(5).unwrap().to_string(), "41");
/// assert_eq!(theta(10).unwrap().to_string(), "623530");
/// ```
pub fn theta(s: u64) -> Result<BigNat> {
    require_positive(s, "theta")?;
    let mut th = BigNat::zero(); // Θ(1)
    for k in 1..s {
        th = th * k + 1u32; // Θ(k+1) = 1 + k·Θ(k)
    }
    Ok(th)
}

/// Evaluates Θ(s) through the factorial-ratio closed form
///
/// ```text
/// Θ(s) = Σ_{m=1}^{s-1} (s-1)!/m!
/// ```
///
/// (the empty sum 0 when s = 1). Every summand is produced by a
/// descending integer product — (s−1)!/m! is (s−1)!/(m+1)! times (m+1) —
/// so no division of any kind occurs and all intermediates are exact
/// integers. This is an independent computation path from [`theta`] used
/// to cross-check the recurrence.
///
/// Rejects `s = 0`.
///
/// ```
/// use theta_core::exact::theta_sum_form;
/// assert_eq!(theta_sum_form(4).unwrap().to_string(), "10"); // 6 + 3 + 1
/// ```
pub fn theta_sum_form(s: u64) -> Result<BigNat> {
    require_positive(s, "theta_sum_form")?;
    let mut sum = BigNat::zero();
    let mut term = BigNat::one(); // (s-1)!/m! at m = s-1
    for m in (1..s).rev() {
        sum += &term;
        term *= m; // (s-1)!/(m-1)!
    }
    Ok(sum)
}

/// Evaluates the sum of the falling factorials of `s` of lengths 0
/// through s−1:
///
/// ```text
/// Σ_{k=0}^{s-1} s·(s-1)⋯(s-k+1)
/// ```
///
/// where the k = 0 term is the empty product 1. The value equals
/// Θ(s+1): dividing Θ(s+1) = Σ_{m=1}^{s} s!/m! termwise, s!/m! is the
/// falling factorial of length s−m.
///
/// Rejects `s = 0`.
///
/// ```
/// use theta_core::exact::falling_factorial_sum;
/// assert_eq!(falling_factorial_sum(3).unwrap().to_string(), "10"); // 1 + 3 + 3·2
/// ```
pub fn falling_factorial_sum(s: u64) -> Result<BigNat> {
    require_positive(s, "falling_factorial_sum")?;
    let mut sum = BigNat::zero();
    let mut term = BigNat::one(); // falling factorial of length k
    for k in 0..s {
        if k > 0 {
            term *= s - k + 1;
        }
        sum += &term;
    }
    Ok(sum)
}

/// Exact factorial n! (0! = 1).
///
/// ```
/// use theta_core::exact::factorial;
/// assert_eq!(factorial(0).to_string(), "1");
/// assert_eq!(factorial(5).to_string(), "120");
/// ```
pub fn factorial(n: u64) -> BigNat {
    let mut f = BigNat::one();
    for k in 2..=n {
        f *= k;
    }
    f
}

/// Certifies the floor identity Θ(s+1) = ⌊e·s!⌋ − s! using only exact
/// integer and rational arithmetic — no floating-point value of e is ever
/// formed.
///
/// Writing S(s) = Σ_{m=0}^{s} s!/m! (computed here by its own descending
/// integer products, independently of [`theta`]), the series
/// e = Σ_{m≥0} 1/m! gives exactly
///
/// ```text
/// e·s! = S(s) + T(s),   T(s) = Σ_{m>s} s!/m! = Σ_{j≥1} 1/((s+1)⋯(s+j)).
/// ```
///
/// So S(s) = ⌊e·s!⌋ holds if and only if 0 < T(s) < 1, which this
/// function certifies by the exact rational bracket
///
/// ```text
/// 1/(s+1)  ≤  T(s)  <  1/(s+1) + 1/((s+1)(s+2)) + 1/((s+1)(s+2)²)
/// ```
///
/// whose upper end comes from dominating the j ≥ 3 tail by the geometric
/// series with ratio 1/(s+2). The upper end is below 1/s for s ≥ 2 and
/// below 1 for every s ≥ 1, and all comparisons are performed on exact
/// rationals.
///
/// Returns `true` when the bracket certifies the floor property **and**
/// Θ(s+1) (from the recurrence) equals S(s) − s!. Rejects `s = 0`.
///
/// ```
/// use theta_core::exact::floor_e_factorial_check;
/// assert!(floor_e_factorial_check(2).unwrap()); // ⌊2e⌋ = 5, 5 − 2 = 3 = Θ(3)
/// assert!(floor_e_factorial_check(3).unwrap()); // ⌊6e⌋ = 16, 16 − 6 = 10 = Θ(4)
/// ```
pub fn floor_e_factorial_check(s: u64) -> Result<bool> {
    require_positive(s, "floor_e_factorial_check")?;

    // S(s) = Σ_{m=0}^{s} s!/m! by descending products; the running term
    // ends at s!/0! = s!.
    let mut ssum = BigNat::zero();
    let mut term = BigNat::one(); // s!/m! at m = s
    for m in (0..=s).rev() {
        ssum += &term;
        if m > 0 {
            term *= m;
        }
    }
    let sfact = term; // s!

    // Exact rational bracket for the tail T(s) = e·s! − S(s).
    let one = Ratio::from_integer(BigNat::one());
    let sp1 = BigNat::from(s + 1);
    let sp2 = BigNat::from(s + 2);
    let t_low = Ratio::new(BigNat::one(), sp1.clone());
    let t_high = &t_low
        + Ratio::new(BigNat::one(), &sp1 * &sp2)
        + Ratio::new(BigNat::one(), &sp1 * &sp2 * &sp2);

    let floor_certified = t_low > Ratio::from_integer(BigNat::zero())
        && t_high < one
        && (s < 2 || t_high < Ratio::new(BigNat::one(), BigNat::from(s)));
    if !floor_certified {
        return Ok(false);
    }

    // ⌊e·s!⌋ = S(s) is now certified; the identity under test reduces to
    // Θ(s+1) = S(s) − s!.
    Ok(theta(s + 1)? == ssum - sfact)
}
