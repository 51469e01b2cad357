//! Exact half-integer arithmetic.
//!
//! Every membership threshold `t` in the R_t hierarchy, and every excess
//! value `chi - (omega + Delta + 1)/2`, lies in (1/2)Z. Storing the number
//! of halves as an `i64` keeps all comparisons integral; nothing in the
//! predicate layer ever touches floating point.

use num_rational::Rational64;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A half-integer, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Half(i64);

impl Half {
    pub const ZERO: Half = Half(0);
    pub const HALF: Half = Half(1);
    pub const ONE: Half = Half(2);

    /// Builds a half-integer from its doubled value.
    pub fn from_halves(halves: i64) -> Half {
        Half(halves)
    }

    pub fn from_int(value: i64) -> Half {
        Half(2 * value)
    }

    /// Twice the value, always an integer.
    pub fn halves(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// Smallest integer >= self.
    pub fn ceil(self) -> i64 {
        self.0.div_euclid(2) + if self.0.rem_euclid(2) == 0 { 0 } else { 1 }
    }

    pub fn to_rational(self) -> Rational64 {
        Rational64::new(self.0, 2)
    }
}

impl Add for Half {
    type Output = Half;
    fn add(self, rhs: Half) -> Half {
        Half(self.0 + rhs.0)
    }
}

impl Sub for Half {
    type Output = Half;
    fn sub(self, rhs: Half) -> Half {
        Half(self.0 - rhs.0)
    }
}

impl Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half(-self.0)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Serializes a rational as `p/q` with `q > 0` and `gcd(p, q) = 1`.
///
/// `Rational64` already stores the reduced form with a positive
/// denominator, so this is just the canonical pair.
pub fn rational_string(r: Rational64) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Sign-prefixed rendering for human-readable output, e.g. `+1/2`, `0`, `-3/2`.
pub fn rational_pretty(r: Rational64) -> String {
    let core = if *r.denom() == 1 {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    };
    if *r.numer() > 0 {
        format!("+{core}")
    } else {
        core
    }
}
