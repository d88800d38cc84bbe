//! Exact arbitrary-precision nonnegative integers.
//!
//! All exact values in this crate — Θ(s), factorials, falling-factorial
//! terms — are nonnegative integers, so they are represented directly as
//! [`num_bigint::BigUint`]. The alias exists to give the domain concept a
//! name and to pin the serialization contract in one place: plain decimal
//! digit strings, no sign, no grouping separators, and an exact
//! round-trip through [`to_decimal`] / [`parse_decimal`].

use crate::error::{Error, Result};

/// Arbitrary-precision nonnegative integer (value ≥ 0 by construction).
pub type BigNat = num_bigint::BigUint;

/// Serializes `n` as a plain decimal digit string.
///
/// The output contains only the characters `0`–`9`: no sign, no grouping
/// separators, no leading zeros (except for the single digit `"0"`).
pub fn to_decimal(n: &BigNat) -> String {
    n.to_str_radix(10)
}

/// Parses a plain decimal digit string produced by [`to_decimal`].
///
/// Rejects anything outside the serialization contract: empty strings,
/// signs, whitespace, grouping separators, or non-digit characters.
/// Leading zeros are rejected as well so that parsing is the exact
/// inverse of [`to_decimal`] on its image.
pub fn parse_decimal(s: &str) -> Result<BigNat> {
    if s.is_empty() {
        return Err(Error::InvalidArgument(
            "empty string is not a decimal integer".into(),
        ));
    }
    if !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::InvalidArgument(format!(
            "not a plain decimal digit string: {s:?}"
        )));
    }
    if s.len() > 1 && s.starts_with('0') {
        return Err(Error::InvalidArgument(format!(
            "leading zeros are not canonical: {s:?}"
        )));
    }
    BigNat::parse_bytes(s.as_bytes(), 10)
        .ok_or_else(|| Error::InvalidArgument(format!("unparseable decimal string: {s:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn decimal_round_trip_small() {
        for v in [0u64, 1, 9, 10, 41, 623530, u64::MAX] {
            let n = BigNat::from(v);
            let s = to_decimal(&n);
            assert_eq!(parse_decimal(&s).unwrap(), n);
        }
    }

    #[test]
    fn decimal_round_trip_large() {
        let s = "149796873605000000000000000000000000000000000000001";
        let n = parse_decimal(s).unwrap();
        assert_eq!(to_decimal(&n), s);
    }

    #[test]
    fn rejects_non_canonical() {
        for bad in ["", "-3", "+3", " 3", "3 ", "1_000", "1,000", "007", "1e5"] {
            assert!(parse_decimal(bad).is_err(), "accepted {bad:?}");
        }
    }

    proptest! {
        #[test]
        fn decimal_round_trip_random(v in any::<u128>()) {
            let n = BigNat::from(v);
            prop_assert_eq!(parse_decimal(&to_decimal(&n)).unwrap(), n);
        }

        #[test]
        fn parse_then_serialize_is_identity(digits in "[1-9][0-9]{0,80}") {
            let n = parse_decimal(&digits).unwrap();
            prop_assert_eq!(to_decimal(&n), digits);
        }
    }
}
