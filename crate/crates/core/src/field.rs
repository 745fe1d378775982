//! Exact scalar fields: arbitrary-precision rationals and Gaussian rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// Arbitrary-precision rational number.
pub type Q = BigRational;

/// Build the rational `n / d`. Panics if `d == 0`.
pub fn q(n: i64, d: i64) -> Q {
    assert!(d != 0, "zero denominator");
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn qi(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// Render a rational as `"a"` or `"a/b"`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Try to convert a rational to a machine integer.
pub fn q_to_i64(x: &Q) -> Option<i64> {
    if !x.is_integer() {
        return None;
    }
    i64::try_from(x.numer().clone()).ok()
}

/// Exact field operations used by the linear-algebra kernels.
///
/// Method names avoid clashing with `std::ops`.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;
    fn from_q(x: Q) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_q(qi(n))
    }
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    /// `self -= a * b`
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = self.minus(&a.times(b));
    }
    fn div(&self, o: &Self) -> Self {
        self.times(&o.inverse().expect("division by zero"))
    }
}

impl Field for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_q(x: Q) -> Self {
        x
    }
}

/// A Gaussian rational `re + i·im`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Gaussian {
    pub re: Q,
    pub im: Q,
}

impl Gaussian {
    pub fn new(re: Q, im: Q) -> Self {
        Gaussian { re, im }
    }
    /// The imaginary unit.
    pub fn i() -> Self {
        Gaussian::new(qi(0), qi(1))
    }
    pub fn real(re: Q) -> Self {
        Gaussian::new(re, qi(0))
    }
    pub fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -&self.im)
    }
    pub fn is_real(&self) -> bool {
        Zero::is_zero(&self.im)
    }
    /// Squared modulus `re² + im²`.
    pub fn norm(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }
    pub fn scale(&self, s: &Q) -> Self {
        Gaussian::new(&self.re * s, &self.im * s)
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (Zero::is_zero(&self.re), Zero::is_zero(&self.im)) {
            (_, true) => write!(f, "{}", fmt_q(&self.re)),
            (true, false) => write!(f, "{}i", fmt_q(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "{}{}{}i", fmt_q(&self.re), sign, fmt_q(&self.im.abs()))
            }
        }
    }
}

impl Serialize for Gaussian {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Field for Gaussian {
    fn zero() -> Self {
        Gaussian::default()
    }
    fn one() -> Self {
        Gaussian::real(qi(1))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn plus(&self, o: &Self) -> Self {
        Gaussian::new(&self.re + &o.re, &self.im + &o.im)
    }
    fn minus(&self, o: &Self) -> Self {
        Gaussian::new(&self.re - &o.re, &self.im - &o.im)
    }
    fn times(&self, o: &Self) -> Self {
        if Zero::is_zero(&self.im) && Zero::is_zero(&o.im) {
            return Gaussian::real(&self.re * &o.re);
        }
        Gaussian::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
    fn negated(&self) -> Self {
        Gaussian::new(-&self.re, -&self.im)
    }
    fn inverse(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        let n = self.norm();
        Some(Gaussian::new(&self.re / &n, -&self.im / &n))
    }
    fn from_q(x: Q) -> Self {
        Gaussian::real(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_inverse_roundtrip() {
        let z = Gaussian::new(q(3, 2), q(-1, 5));
        let w = z.inverse().unwrap();
        assert_eq!(z.times(&w), Gaussian::one());
        assert_eq!(Gaussian::i().times(&Gaussian::i()), Gaussian::from_i64(-1));
    }

    #[test]
    fn display_forms() {
        assert_eq!(fmt_q(&q(6, 4)), "3/2");
        assert_eq!(fmt_q(&qi(-7)), "-7");
        assert_eq!(Gaussian::new(qi(1), qi(-2)).to_string(), "1-2i");
        assert_eq!(Gaussian::i().to_string(), "1i");
    }
}
