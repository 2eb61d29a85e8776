//! Exact phases stored as rational multiples of pi, reduced modulo 2.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// A phase `r * pi` with `r` a rational in `[0, 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "(i64, i64)", from = "(i64, i64)")]
pub struct Phase(Rational64);

impl Phase {
    pub const fn zero() -> Self {
        Phase(Rational64::new_raw(0, 1))
    }

    /// The phase pi.
    pub const fn pi() -> Self {
        Phase(Rational64::new_raw(1, 1))
    }

    /// `num/den * pi`, reduced to lowest terms and normalized into `[0, 2)`.
    ///
    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        Phase::from_rational(Rational64::new(num, den))
    }

    pub fn from_rational(r: Rational64) -> Self {
        let two = Rational64::from_integer(2);
        let mut r = r % two;
        if r < Rational64::zero() {
            r += two;
        }
        Phase(r)
    }

    /// Coefficient of pi, in `[0, 2)`.
    pub fn coeff(&self) -> Rational64 {
        self.0
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// 0 or pi.
    pub fn is_pauli(&self) -> bool {
        self.0.is_integer()
    }

    /// pi/2 or 3pi/2.
    pub fn is_proper_clifford(&self) -> bool {
        *self.0.denom() == 2
    }

    pub fn is_clifford(&self) -> bool {
        *self.0.denom() <= 2
    }

    /// Angle in radians in `[0, 2pi)`.
    pub fn radians(&self) -> f64 {
        (*self.0.numer() as f64 / *self.0.denom() as f64) * std::f64::consts::PI
    }

    /// Nearest phase with denominator at most `max_den` to `turns_of_pi * pi`.
    pub fn approximate(turns_of_pi: f64, max_den: i64) -> Self {
        let scaled = (turns_of_pi * max_den as f64).round() as i64;
        Phase::new(scaled, max_den)
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::zero()
    }
}

impl From<Phase> for (i64, i64) {
    fn from(p: Phase) -> Self {
        (p.numer(), p.denom())
    }
}

impl From<(i64, i64)> for Phase {
    fn from((n, d): (i64, i64)) -> Self {
        Phase::new(n, d.max(1))
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        Phase::from_rational(self.0 + rhs.0)
    }
}

impl AddAssign for Phase {
    fn add_assign(&mut self, rhs: Phase) {
        *self = *self + rhs;
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        Phase::from_rational(self.0 - rhs.0)
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::from_rational(-self.0)
    }
}

/// Formats as an OpenQASM angle expression (`0`, `pi`, `3*pi/4`, ...).
impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = (self.numer(), self.denom());
        match (n, d) {
            (0, _) => write!(f, "0"),
            (1, 1) => write!(f, "pi"),
            (1, d) => write!(f, "pi/{d}"),
            (n, 1) => write!(f, "{n}*pi"),
            (n, d) => write!(f, "{n}*pi/{d}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_into_range() {
        assert_eq!(Phase::new(-1, 2), Phase::new(3, 2));
        assert_eq!(Phase::new(9, 4), Phase::new(1, 4));
        assert_eq!(Phase::new(4, 2), Phase::zero());
        assert_eq!(Phase::new(2, 4).denom(), 2);
    }

    #[test]
    fn classification() {
        assert!(Phase::pi().is_pauli());
        assert!(Phase::zero().is_pauli());
        assert!(Phase::new(1, 2).is_proper_clifford());
        assert!(Phase::new(-1, 2).is_proper_clifford());
        assert!(!Phase::new(1, 4).is_clifford());
    }

    #[test]
    fn display_round_trips_through_text() {
        assert_eq!(Phase::new(3, 4).to_string(), "3*pi/4");
        assert_eq!(Phase::new(1, 4).to_string(), "pi/4");
        assert_eq!(Phase::pi().to_string(), "pi");
        assert_eq!(Phase::zero().to_string(), "0");
    }

    #[test]
    fn approximation_bounds_denominator() {
        let p = Phase::approximate(0.123456789, 1 << 20);
        assert!(p.denom() <= 1 << 20);
        assert!((p.radians() - 0.123456789 * std::f64::consts::PI).abs() < 1e-5);
    }
}
