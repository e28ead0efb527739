//! Exact arithmetic used by the cutting-word generators.
//!
//! Rationals are `num_rational::Ratio<i64>`. Values of the form
//! `(p + q·√d) / r` are handled by [`QuadValue`], whose floor is computed
//! with integer square roots only.

use num_integer::{Integer, Roots};
use num_traits::{Signed, Zero};

use crate::error::Error;

pub type Rational = num_rational::Ratio<i64>;

/// Parses `"5/8"`, `"-3"`, `"0"`.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let text = text.trim();
    let bad = || Error::Parse(format!("invalid rational `{text}`"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Serde adapter storing a [`Rational`] as its string form.
pub mod rational_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Floor of the square root of a non-negative integer.
pub(crate) fn isqrt(n: i128) -> i128 {
    debug_assert!(n >= 0);
    n.sqrt()
}

/// Splits `d > 0` as `k² · f` with `f` square-free.
pub(crate) fn square_free_split(d: i128) -> (i128, i128) {
    let mut k = 1;
    let mut f = d;
    let mut p = 2;
    while p * p <= f {
        while f % (p * p) == 0 {
            f /= p * p;
            k *= p;
        }
        p += 1;
    }
    (k, f)
}

/// The real number `(p + q·√d) / r` with `r > 0` and `d` square-free (or `q = 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct QuadValue {
    p: i128,
    q: i128,
    r: i128,
    d: i128,
}

impl QuadValue {
    pub(crate) fn new(p: i128, q: i128, r: i128, d: i128) -> Self {
        assert!(r != 0, "zero denominator");
        let (p, q, r) = if r < 0 { (-p, -q, -r) } else { (p, q, r) };
        let q = if d == 0 { 0 } else { q };
        QuadValue { p, q, r, d }
    }

    #[cfg(test)]
    pub(crate) fn rational(value: Rational) -> Self {
        QuadValue::new(*value.numer() as i128, 0, *value.denom() as i128, 0)
    }

    /// `⌊q·√d⌋`; exact because `q²·d` is never a non-zero perfect square.
    fn floor_surd_part(&self) -> i128 {
        if self.q == 0 {
            return 0;
        }
        let root = isqrt(self.q * self.q * self.d);
        if self.q > 0 {
            root
        } else {
            -(root + 1)
        }
    }

    pub(crate) fn floor(&self) -> i128 {
        // p + q√d = (p + ⌊q√d⌋) + f with 0 < f < 1 whenever q ≠ 0.
        Integer::div_floor(&(self.p + self.floor_surd_part()), &self.r)
    }

    pub(crate) fn is_integer(&self) -> bool {
        self.q == 0 && self.p % self.r == 0
    }

    /// Largest integer strictly below the value.
    pub(crate) fn strict_floor(&self) -> i128 {
        let f = self.floor();
        if self.is_integer() {
            f - 1
        } else {
            f
        }
    }

    /// Smallest integer strictly above the value.
    pub(crate) fn strict_ceil(&self) -> i128 {
        self.floor() + 1
    }

    /// Smallest integer at or above the value.
    pub(crate) fn ceil(&self) -> i128 {
        if self.is_integer() {
            self.floor()
        } else {
            self.floor() + 1
        }
    }

    pub(crate) fn is_positive(&self) -> bool {
        // sign of p + q√d
        match (self.p.signum(), self.q.signum()) {
            (_, 0) => self.p > 0,
            (s, 1) if s >= 0 => true,
            (s, -1) if s <= 0 => false,
            (1, -1) => self.p * self.p > self.q * self.q * self.d,
            (-1, 1) => self.q * self.q * self.d > self.p * self.p,
            _ => unreachable!(),
        }
    }
}

/// An element `(p + q·√d) / r` of a real quadratic field; `d` is carried by the caller.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct FieldElem {
    pub p: i128,
    pub q: i128,
    pub r: i128,
}

impl FieldElem {
    pub(crate) fn int(n: i128) -> Self {
        FieldElem { p: n, q: 0, r: 1 }
    }

    pub(crate) fn surd(k: i128) -> Self {
        FieldElem { p: 0, q: k, r: 1 }
    }

    pub(crate) fn normalized(self) -> Self {
        let (p, q, r) = if self.r < 0 { (-self.p, -self.q, -self.r) } else { (self.p, self.q, self.r) };
        let g = gcd_all(&[p, q, r]).max(1);
        FieldElem { p: p / g, q: q / g, r: r / g }
    }

    pub(crate) fn add(self, o: Self) -> Self {
        FieldElem { p: self.p * o.r + o.p * self.r, q: self.q * o.r + o.q * self.r, r: self.r * o.r }.normalized()
    }

    pub(crate) fn neg(self) -> Self {
        FieldElem { p: -self.p, q: -self.q, r: self.r }
    }

    pub(crate) fn mul(self, o: Self, d: i128) -> Self {
        FieldElem { p: self.p * o.p + self.q * o.q * d, q: self.p * o.q + self.q * o.p, r: self.r * o.r }.normalized()
    }

    /// `None` on division by zero.
    pub(crate) fn div(self, o: Self, d: i128) -> Option<Self> {
        let norm = o.p * o.p - o.q * o.q * d;
        if norm == 0 {
            return None;
        }
        let inverse = FieldElem { p: o.r * o.p, q: -o.r * o.q, r: norm }.normalized();
        Some(self.mul(inverse, d))
    }
}

/// Greatest common divisor of several integers (zero entries ignored).
pub(crate) fn gcd_all(values: &[i128]) -> i128 {
    values.iter().filter(|v| !v.is_zero()).fold(0i128, |acc, v| acc.gcd(&v.abs()))
}
