//! Exact and arbitrary-precision asymptotic evaluation of the theta
//! splitting function.
//!
//! The theta splitting function Θ is the integer sequence defined by the
//! recurrence
//!
//! ```text
//! Θ(1) = 0,    Θ(s+1) = 1 + s·Θ(s)        (s ≥ 1)
//! ```
//!
//! whose first values are 0, 1, 3, 10, 41, 206, 1237, 8660, … . Unfolding
//! the recurrence gives the closed forms
//!
//! ```text
//! Θ(s+1) = Σ_{m=1}^{s} s!/m!              (factorial-ratio sum)
//! Θ(s+1) = Σ_{k=0}^{s-1} s(s-1)⋯(s-k+1)   (falling-factorial sum)
//! ```
//!
//! and the floor identity Θ(s+1) = ⌊e·s!⌋ − s!.
//!
//! The crate is organised in four layers:
//!
//! * [`exact`] — exact arbitrary-precision integer evaluation of Θ and of
//!   every identity above, including a floor-of-`e·s!` oracle certified
//!   with pure integer/rational arithmetic.
//! * [`asymptotics`] — high-precision evaluation of the approximant
//!   s^s·√s·e^(−s)·C with C = Σ_{m≥1} e^m/m^(m+1/2), plus an empirical
//!   study of the ratio r(s) = Θ(s+1)/(s^s·√s·e^(−s)) and the reference
//!   limit (e−1)·√(2π) that the ratio actually converges to.
//! * [`weierstrass`] — the Weierstrass product for the reciprocal Gamma
//!   function at positive integer points, and the identity
//!   Σ_{j=0}^{s−1} e^(−γj)·P(s−j) = e^(−γs)·Θ(s+1)/s! built from it.
//! * [`applications`] — table generation, a seat-assignment count with a
//!   brute-force oracle, and a consolidated discrepancy report covering
//!   every place where commonly tabulated values or claimed asymptotics
//!   disagree with exact computation.
//!
//! Supporting types live in [`bignat`] (exact nonnegative integers) and
//! [`real`] (arbitrary-precision floating values with explicit working
//! precision in decimal digits).

pub mod applications;
pub mod asymptotics;
pub mod bignat;
pub mod error;
pub mod exact;
pub mod real;
pub mod weierstrass;

pub use bignat::BigNat;
pub use error::{Error, Result};
pub use real::Real;
