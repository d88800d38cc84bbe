//! Arbitrary-precision floating values with explicit working precision.
//!
//! [`Real`] pairs an arbitrary-precision binary floating value with the
//! decimal precision it was requested at. Every operation carries at
//! least `ceil(digits·log2(10)) + 32` bits of mantissa, so a single
//! operation at precision `p` digits introduces relative error far below
//! `10^(1−p)`; the stated precision is therefore a conservative contract,
//! not a measured error.
//!
//! Values are immutable; all operations are pure functions of their
//! inputs and return fresh values, so `Real`s can be shared freely
//! between threads. (A per-thread cache of worked constants such as π
//! and ln 2 is maintained internally; it never changes the value of any
//! result.)

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};

use crate::bignat::BigNat;
use crate::error::{Error, Result};

/// Rounding mode used for every operation.
const RM: RoundingMode = RoundingMode::ToEven;

/// Binary guard bits carried beyond the requested decimal precision.
const GUARD_BITS: usize = 32;

/// Minimum supported working precision in decimal digits.
pub const MIN_PRECISION: usize = 15;

thread_local! {
    static CONSTS: RefCell<Consts> =
        RefCell::new(Consts::new().expect("failed to allocate constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Mantissa bits backing `digits` decimal digits (overestimates
/// `digits·log2(10)` and adds the guard margin).
fn bits_for(digits: usize) -> usize {
    digits * 3322 / 1000 + 1 + GUARD_BITS
}

/// An arbitrary-precision floating value with explicit working precision
/// in decimal digits (`precision_digits ≥ 15`).
#[derive(Debug, Clone)]
pub struct Real {
    value: BigFloat,
    precision_digits: usize,
}

impl Real {
    fn wrap(value: BigFloat, precision_digits: usize) -> Self {
        assert!(
            !value.is_nan() && !value.is_inf(),
            "non-finite arbitrary-precision value"
        );
        Real {
            value,
            precision_digits,
        }
    }

    fn assert_precision(digits: usize) {
        assert!(
            digits >= MIN_PRECISION,
            "working precision must be at least {MIN_PRECISION} decimal digits (got {digits})"
        );
    }

    fn bits(&self) -> usize {
        bits_for(self.precision_digits)
    }

    /// The working precision in decimal digits.
    pub fn precision_digits(&self) -> usize {
        self.precision_digits
    }

    /// The value 0 at the given precision.
    pub fn zero(digits: usize) -> Self {
        Self::assert_precision(digits);
        Real::wrap(BigFloat::from_u8(0, bits_for(digits)), digits)
    }

    /// The value 1 at the given precision.
    pub fn one(digits: usize) -> Self {
        Self::from_u64(1, digits)
    }

    /// Converts an unsigned machine integer exactly.
    pub fn from_u64(v: u64, digits: usize) -> Self {
        Self::assert_precision(digits);
        Real::wrap(BigFloat::from_u64(v, bits_for(digits)), digits)
    }

    /// Converts a signed machine integer exactly.
    pub fn from_i64(v: i64, digits: usize) -> Self {
        Self::assert_precision(digits);
        Real::wrap(BigFloat::from_i64(v, bits_for(digits)), digits)
    }

    /// Converts an arbitrary-precision integer, rounding to the working
    /// precision when it carries more bits than the precision holds.
    pub fn from_bignat(n: &BigNat, digits: usize) -> Self {
        Self::assert_precision(digits);
        Self::parse_unchecked(&n.to_str_radix(10), digits)
    }

    /// Parses a decimal floating literal such as `"4.30709"`, `"1e-30"`
    /// or `"-0.5"` at the given precision.
    pub fn parse(s: &str, digits: usize) -> Result<Self> {
        Self::assert_precision(digits);
        let v = with_consts(|cc| BigFloat::parse(s, Radix::Dec, bits_for(digits), RM, cc));
        if v.is_nan() || v.is_inf() {
            return Err(Error::InvalidArgument(format!(
                "not a finite decimal number: {s:?}"
            )));
        }
        Ok(Real::wrap(v, digits))
    }

    fn parse_unchecked(s: &str, digits: usize) -> Self {
        Self::parse(s, digits).expect("internal literal must parse")
    }

    /// 10^k at the given precision (exact for k ≥ 0, correctly rounded
    /// for k < 0).
    pub fn pow10(k: i64, digits: usize) -> Self {
        let ten = Real::from_u64(10, digits);
        let p = ten.powi(k.unsigned_abs());
        if k >= 0 {
            p
        } else {
            Real::one(digits).div(&p)
        }
    }

    /// The constant π at the given precision.
    pub fn pi(digits: usize) -> Self {
        Self::assert_precision(digits);
        Real::wrap(with_consts(|cc| cc.pi(bits_for(digits), RM)), digits)
    }

    /// The constant e at the given precision.
    pub fn e(digits: usize) -> Self {
        Self::assert_precision(digits);
        Real::wrap(with_consts(|cc| cc.e(bits_for(digits), RM)), digits)
    }

    /// The constant ln 2 at the given precision.
    pub fn ln2(digits: usize) -> Self {
        Self::assert_precision(digits);
        Real::wrap(with_consts(|cc| cc.ln_2(bits_for(digits), RM)), digits)
    }

    fn join(&self, rhs: &Real) -> usize {
        self.precision_digits.max(rhs.precision_digits)
    }

    /// Sum, at the larger of the two operand precisions.
    pub fn add(&self, rhs: &Real) -> Self {
        let d = self.join(rhs);
        Real::wrap(self.value.add(&rhs.value, bits_for(d), RM), d)
    }

    /// Difference, at the larger of the two operand precisions.
    pub fn sub(&self, rhs: &Real) -> Self {
        let d = self.join(rhs);
        Real::wrap(self.value.sub(&rhs.value, bits_for(d), RM), d)
    }

    /// Product, at the larger of the two operand precisions.
    pub fn mul(&self, rhs: &Real) -> Self {
        let d = self.join(rhs);
        Real::wrap(self.value.mul(&rhs.value, bits_for(d), RM), d)
    }

    /// Quotient, at the larger of the two operand precisions.
    ///
    /// # Panics
    /// Panics if `rhs` is zero.
    pub fn div(&self, rhs: &Real) -> Self {
        assert!(!rhs.is_zero(), "division by zero");
        let d = self.join(rhs);
        Real::wrap(self.value.div(&rhs.value, bits_for(d), RM), d)
    }

    /// Integer power `self^n` (with `self^0 = 1`).
    pub fn powi(&self, n: u64) -> Self {
        let p = self.bits();
        let v = self.value.powi(n as usize, p, RM);
        Real::wrap(v, self.precision_digits)
    }

    /// Square root.
    ///
    /// # Panics
    /// Panics if `self` is negative.
    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "square root of a negative value");
        Real::wrap(self.value.sqrt(self.bits(), RM), self.precision_digits)
    }

    /// Natural logarithm.
    ///
    /// # Panics
    /// Panics if `self` is not strictly positive.
    pub fn ln(&self) -> Self {
        assert!(self.is_positive(), "logarithm of a non-positive value");
        let v = with_consts(|cc| self.value.ln(self.bits(), RM, cc));
        Real::wrap(v, self.precision_digits)
    }

    /// Exponential e^self.
    pub fn exp(&self) -> Self {
        let v = with_consts(|cc| self.value.exp(self.bits(), RM, cc));
        Real::wrap(v, self.precision_digits)
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        Real::wrap(self.value.neg(), self.precision_digits)
    }

    /// Absolute value.
    pub fn abs(&self) -> Self {
        Real::wrap(self.value.abs(), self.precision_digits)
    }

    /// Re-rounds the value to a (usually different) working precision.
    pub fn with_precision(&self, digits: usize) -> Self {
        Self::assert_precision(digits);
        let mut v = self.value.clone();
        v.set_precision(bits_for(digits), RM)
            .expect("set_precision on finite value");
        Real::wrap(v, digits)
    }

    /// True if the value is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// True if the value is strictly positive.
    pub fn is_positive(&self) -> bool {
        self.value.is_positive() && !self.value.is_zero()
    }

    /// True if the value is strictly negative.
    pub fn is_negative(&self) -> bool {
        self.value.is_negative()
    }

    /// Binary order of magnitude: an integer `e` with value ≈ 2^(e−1)
    /// (zero maps to a very small exponent). Used only for sizing term
    /// budgets, never for values.
    pub fn exponent_bin(&self) -> i64 {
        self.value.exponent().map(i64::from).unwrap_or(i64::MIN / 2)
    }

    /// Relative difference |self − other| / |other|.
    ///
    /// # Panics
    /// Panics if `other` is zero.
    pub fn rel_diff(&self, other: &Real) -> Self {
        self.sub(other).abs().div(&other.abs())
    }

    /// True when `self` and `other` agree to at least `n` significant
    /// digits, in the sense that |self − other| / |other| ≤ 10^(1−n)
    /// (the same convention as the per-operation precision contract).
    pub fn agrees_to_digits(&self, other: &Real, n: usize) -> bool {
        let d = self.join(other);
        if other.is_zero() {
            return self.is_zero();
        }
        self.rel_diff(other) <= Real::pow10(1 - n as i64, d)
    }

    /// Formats the value in normalized scientific notation with exactly
    /// `digits` significant digits: `d.dd…de±x` (or `0` for zero). The
    /// mantissa is rounded half-up at the last displayed digit and padded
    /// with zeros when the value needs fewer digits, so the output shape
    /// is fixed and byte-stable for a given value and digit count.
    pub fn format_sig(&self, digits: usize) -> String {
        assert!(digits >= 1, "at least one significant digit required");
        let (sign, mantissa, dec_exp) = match self.decimal_digits(digits) {
            None => return "0".to_string(),
            Some(t) => t,
        };
        let mut out = String::new();
        if sign == Sign::Neg {
            out.push('-');
        }
        out.push((b'0' + mantissa[0]) as char);
        if digits > 1 {
            out.push('.');
            for &d in &mantissa[1..] {
                out.push((b'0' + d) as char);
            }
        }
        out.push('e');
        out.push_str(&dec_exp.to_string());
        out
    }

    /// Formats the value with `digits` significant digits, using plain
    /// positional notation when the decimal exponent lies in [−4, 8] and
    /// scientific notation otherwise. Trailing fractional zeros are
    /// trimmed in positional form (integers keep no decimal point).
    pub fn format_readable(&self, digits: usize) -> String {
        assert!(digits >= 1, "at least one significant digit required");
        let (sign, mantissa, dec_exp) = match self.decimal_digits(digits) {
            None => return "0".to_string(),
            Some(t) => t,
        };
        if !(-4..=8).contains(&dec_exp) {
            return self.format_sig(digits);
        }
        let mut out = String::new();
        if sign == Sign::Neg {
            out.push('-');
        }
        let digit = |d: u8| (b'0' + d) as char;
        if dec_exp < 0 {
            out.push_str("0.");
            for _ in 0..(-dec_exp - 1) {
                out.push('0');
            }
            for &d in &mantissa {
                out.push(digit(d));
            }
        } else {
            let point = dec_exp as usize + 1;
            for (i, &d) in mantissa.iter().enumerate() {
                if i == point {
                    out.push('.');
                }
                out.push(digit(d));
            }
            if mantissa.len() <= point {
                for _ in mantissa.len()..point {
                    out.push('0');
                }
                return out; // integer, no fractional part
            }
        }
        // Trim trailing fractional zeros (but keep at least "d" or "0.d").
        if out.contains('.') {
            while out.ends_with('0') {
                out.pop();
            }
            if out.ends_with('.') {
                out.pop();
            }
        }
        out
    }

    /// Decomposes the value into (sign, exactly `digits` decimal mantissa
    /// digits rounded half-up, decimal exponent `x` such that the value
    /// is ±d.dd…d × 10^x). Returns `None` for zero.
    fn decimal_digits(&self, digits: usize) -> Option<(Sign, Vec<u8>, i64)> {
        if self.is_zero() {
            return None;
        }
        let (sign, raw, e10) = with_consts(|cc| {
            self.value
                .convert_to_radix(Radix::Dec, RoundingMode::None, cc)
        })
        .expect("radix conversion of a finite value");
        // raw holds decimal digits with the point in front: value = 0.raw × 10^e10.
        // Strip leading zero digits (they shift the exponent down).
        let first = raw.iter().position(|&d| d != 0)?;
        let mut exp = i64::from(e10) - 1 - first as i64;
        let sig: Vec<u8> = raw[first..].to_vec();
        let mut mantissa: Vec<u8> = sig.iter().copied().take(digits).collect();
        while mantissa.len() < digits {
            mantissa.push(0);
        }
        // Round half-up on the first undisplayed digit.
        if sig.len() > digits && sig[digits] >= 5 {
            let mut i = digits;
            loop {
                if i == 0 {
                    mantissa.insert(0, 1);
                    mantissa.pop();
                    exp += 1;
                    break;
                }
                i -= 1;
                if mantissa[i] == 9 {
                    mantissa[i] = 0;
                } else {
                    mantissa[i] += 1;
                    break;
                }
            }
        }
        Some((sign, mantissa, exp))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_sig(self.precision_digits))
    }
}

/// High-precision natural logarithm of an exact nonnegative integer,
/// taken through a mantissa/exponent split: `n` is shifted down to a
/// window of `working bits + 16` leading bits `q` with `n = q·2^k + r`,
/// and `ln n` is evaluated as `ln q + k·ln 2`. Discarding the low bits
/// `r` perturbs the result by less than 2^−(working bits + 15), which is
/// below the working precision, while the exact integer never passes
/// through any wider rounding path.
///
/// Rejects `n = 0`.
pub fn ln_bignat(n: &BigNat, digits: usize) -> Result<Real> {
    use num_traits::Zero;
    if n.is_zero() {
        return Err(Error::InvalidArgument(
            "logarithm of zero is undefined".into(),
        ));
    }
    let keep = bits_for(digits) as u64 + 16;
    let nbits = n.bits();
    let (q, shift) = if nbits > keep {
        (n >> (nbits - keep), nbits - keep)
    } else {
        (n.clone(), 0)
    };
    // q has at most `keep` bits, so parsing its decimal expansion at a
    // precision of `keep` bits (well above `digits`) is exact.
    let q_digits = (keep as usize) * 302 / 1000 + 2; // ceil(keep·log10(2)) + margin
    let q_real = Real::from_bignat(&q, q_digits.max(digits).max(MIN_PRECISION));
    let ln_q = q_real.ln().with_precision(digits);
    if shift == 0 {
        return Ok(ln_q);
    }
    let shift_part = Real::from_u64(shift, digits).mul(&Real::ln2(digits));
    Ok(ln_q.add(&shift_part))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_have_expected_leading_digits() {
        assert_eq!(Real::pi(30).format_sig(20), "3.1415926535897932385e0");
        assert_eq!(Real::e(30).format_sig(20), "2.7182818284590452354e0");
        assert_eq!(Real::ln2(30).format_sig(20), "6.9314718055994530942e-1");
    }

    #[test]
    fn parse_and_format_round_trip() {
        let x = Real::parse("4.30709381500009733505", 25).unwrap();
        assert_eq!(x.format_sig(21), "4.30709381500009733505e0");
        let y = Real::parse("-1.25e-7", 20).unwrap();
        assert_eq!(y.format_sig(3), "-1.25e-7");
        assert!(Real::parse("not-a-number", 20).is_err());
    }

    #[test]
    fn format_sig_pads_and_rounds() {
        assert_eq!(Real::from_u64(2, 20).format_sig(10), "2.000000000e0");
        assert_eq!(Real::from_u64(43, 20).format_sig(4), "4.300e1");
        // 0.999999 rounds up across the exponent boundary at 3 digits.
        let x = Real::parse("0.999999", 20).unwrap();
        assert_eq!(x.format_sig(3), "1.00e0");
        // Rounds up when the first hidden digit exceeds 4: 1.234|6 → 1.235.
        let y = Real::parse("1.2346", 20).unwrap();
        assert_eq!(y.format_sig(4), "1.235e0");
        // Exact binary value on the half boundary rounds up: 1.5 → 2.
        assert_eq!(Real::parse("1.5", 20).unwrap().format_sig(1), "2e0");
        assert_eq!(Real::zero(20).format_sig(10), "0");
        assert_eq!(Real::from_i64(-41, 20).format_sig(3), "-4.10e1");
    }

    #[test]
    fn format_readable_switches_notation() {
        assert_eq!(Real::from_u64(43, 20).format_readable(10), "43");
        let x = Real::parse("43.0054322125", 25).unwrap();
        assert_eq!(x.format_readable(10), "43.00543221");
        let big = Real::parse("1.586888658e11", 25).unwrap();
        assert_eq!(big.format_readable(10), "1.586888658e11");
        let small = Real::parse("4.167e-4", 20).unwrap();
        assert_eq!(small.format_readable(4), "0.0004167");
        let tiny = Real::parse("1e-30", 20).unwrap();
        assert_eq!(tiny.format_readable(3), "1.00e-30");
        assert_eq!(Real::from_u64(623530, 20).format_readable(10), "623530");
    }

    #[test]
    fn arithmetic_identities() {
        let d = 40;
        let two = Real::from_u64(2, d);
        let half = Real::one(d).div(&two);
        assert!(two
            .sqrt()
            .mul(&two.sqrt())
            .agrees_to_digits(&two, d - 2));
        assert!(two.ln().exp().agrees_to_digits(&two, d - 2));
        assert_eq!(half.add(&half), Real::one(d));
        assert!(Real::pow10(-3, d)
            .mul(&Real::pow10(3, d))
            .agrees_to_digits(&Real::one(d), d - 2));
    }

    #[test]
    fn precision_levels_are_consistent() {
        // The same quantity at 15 and at 30 digits agrees to 14 digits.
        let lo = Real::e(15).sub(&Real::one(15)).mul(&Real::pi(15).mul(&Real::from_u64(2, 15)).sqrt());
        let hi = Real::e(30).sub(&Real::one(30)).mul(&Real::pi(30).mul(&Real::from_u64(2, 30)).sqrt());
        assert!(lo.agrees_to_digits(&hi, 14));
    }

    #[test]
    fn ln_bignat_matches_small_cases() {
        let d = 40;
        // ln 8 = 3 ln 2
        let ln8 = ln_bignat(&BigNat::from(8u32), d).unwrap();
        assert!(ln8.agrees_to_digits(&Real::ln2(d).mul(&Real::from_u64(3, d)), d - 2));
        // ln 1 = 0
        assert!(ln_bignat(&BigNat::from(1u32), d).unwrap().is_zero());
        // ln 0 rejected
        assert!(ln_bignat(&BigNat::from(0u32), d).is_err());
    }

    #[test]
    fn ln_bignat_matches_split_path() {
        let d = 30;
        // 2^500 exercises the shift path: ln(2^500) = 500·ln 2.
        let n = BigNat::from(1u32) << 500;
        let got = ln_bignat(&n, d).unwrap();
        let want = Real::from_u64(500, d).mul(&Real::ln2(d));
        assert!(got.agrees_to_digits(&want, d - 2));
        // A 700-bit factorial-like value: compare split path against the
        // direct (exact parse) path at higher precision.
        let mut big = BigNat::from(1u32);
        for k in 2..=100u32 {
            big *= k;
        }
        let split = ln_bignat(&big, d).unwrap();
        let direct = Real::from_bignat(&big, 200).ln().with_precision(d);
        assert!(split.agrees_to_digits(&direct, d - 2));
    }

    #[test]
    fn comparisons_work() {
        let d = 20;
        assert!(Real::from_u64(3, d) > Real::from_u64(2, d));
        assert!(Real::pow10(-30, d) > Real::zero(d));
        assert!(Real::from_i64(-1, d) < Real::zero(d));
    }

    #[test]
    #[should_panic(expected = "division by zero")]
    fn division_by_zero_panics() {
        let _ = Real::one(20).div(&Real::zero(20));
    }
}
