use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use crate::error::{GaugeError, Result};

/// A vector of the real plane in standard coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x1: f64,
    pub x2: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x1: 0.0, x2: 0.0 };

    #[inline]
    pub const fn new(x1: f64, x2: f64) -> Self {
        Vec2 { x1, x2 }
    }

    /// Unit vector at angle `theta`, measured counter-clockwise from the positive x1-axis.
    #[inline]
    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Vec2::new(c, s)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x1.is_finite() && self.x2.is_finite()
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.x1 == 0.0 && self.x2 == 0.0
    }

    /// Rejects NaN and infinite coordinates.
    pub fn check_finite(self) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(GaugeError::domain(format!("non-finite vector {self}")))
        }
    }

    #[inline]
    pub fn dot(self, other: Vec2) -> f64 {
        self.x1 * other.x1 + self.x2 * other.x2
    }

    /// The determinant form `[self, other] = x1*y2 - x2*y1`.
    #[inline]
    pub fn det(self, other: Vec2) -> f64 {
        self.x1 * other.x2 - self.x2 * other.x1
    }

    /// Euclidean length. Only used for step sizing and error reporting, never as
    /// a stand-in for the gauge.
    #[inline]
    pub fn euclid(self) -> f64 {
        self.x1.hypot(self.x2)
    }

    #[inline]
    pub fn angle(self) -> f64 {
        self.x2.atan2(self.x1)
    }

    pub fn max_abs(self) -> f64 {
        self.x1.abs().max(self.x2.abs())
    }
}

/// The determinant form `[x, y]`: signed area of the parallelogram spanned by `x` and `y`.
#[inline]
pub fn det_form(x: Vec2, y: Vec2) -> f64 {
    x.det(y)
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x1, self.x2)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x1 + rhs.x1, self.x2 + rhs.x2)
    }
}

impl AddAssign for Vec2 {
    #[inline]
    fn add_assign(&mut self, rhs: Vec2) {
        self.x1 += rhs.x1;
        self.x2 += rhs.x2;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x1 - rhs.x1, self.x2 - rhs.x2)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x1, -self.x2)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, k: f64) -> Vec2 {
        Vec2::new(self.x1 * k, self.x2 * k)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    #[inline]
    fn mul(self, v: Vec2) -> Vec2 {
        v * self
    }
}

impl Div<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn div(self, k: f64) -> Vec2 {
        Vec2::new(self.x1 / k, self.x2 / k)
    }
}

impl From<[f64; 2]> for Vec2 {
    fn from(a: [f64; 2]) -> Self {
        Vec2::new(a[0], a[1])
    }
}

impl From<&[f64; 2]> for Vec2 {
    fn from(a: &[f64; 2]) -> Self {
        Vec2::new(a[0], a[1])
    }
}

impl From<(f64, f64)> for Vec2 {
    fn from((x1, x2): (f64, f64)) -> Self {
        Vec2::new(x1, x2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn det_form_examples() {
        assert_eq!(det_form(Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)), 1.0);
        assert_eq!(det_form(Vec2::new(2.0, 3.0), Vec2::new(2.0, 3.0)), 0.0);
        assert_eq!(det_form(Vec2::new(1.0, 2.0), Vec2::new(3.0, 4.0)), -2.0);
    }

    #[test]
    fn non_finite_rejected() {
        assert!(Vec2::new(f64::NAN, 0.0).check_finite().is_err());
        assert!(Vec2::new(0.0, f64::INFINITY).check_finite().is_err());
        assert!(Vec2::new(1.0, -2.0).check_finite().is_ok());
    }

    proptest! {
        #[test]
        fn det_form_is_antisymmetric(a in -1e3f64..1e3, b in -1e3f64..1e3, c in -1e3f64..1e3, d in -1e3f64..1e3) {
            let x = Vec2::new(a, b);
            let y = Vec2::new(c, d);
            prop_assert_eq!(det_form(x, y), -det_form(y, x));
        }
    }
}
