//! Real quaternions and the complex subalgebra they embed.
//!
//! Wavefunctions in the quaternionic problem are written as
//! `c1 + j·c2` with `c1`, `c2` complex; [`Quaternion::split`] and
//! [`Quaternion::from_split`] move between that view and the four real
//! components. The key identity making the split useful is
//! `j·c = conj(c)·j` for every complex `c`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Complex scalars (`re + i·im`), embedded in [`Quaternion`] as `re + i·im + 0j + 0k`.
pub type ComplexNum = num_complex::Complex64;

/// `w + i·x + j·y + k·z`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub fn from_complex(c: ComplexNum) -> Self {
        Self::new(c.re, c.im, 0.0, 0.0)
    }

    /// Builds `c1 + j·c2`.
    pub fn from_split(c1: ComplexNum, c2: ComplexNum) -> Self {
        // j·(a + ib) = a·j + b·(j i) = a·j − b·k
        Self::new(c1.re, c1.im, c2.re, -c2.im)
    }

    /// Inverse of [`from_split`](Self::from_split): returns `(c1, c2)` with `self = c1 + j·c2`.
    pub fn split(self) -> (ComplexNum, ComplexNum) {
        (
            ComplexNum::new(self.w, self.x),
            ComplexNum::new(self.y, -self.z),
        )
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        // hypot chain avoids overflow for large components
        self.w.hypot(self.x).hypot(self.y.hypot(self.z))
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// `i·self`.
    pub fn left_mul_i(self) -> Self {
        Self::new(-self.x, self.w, -self.z, self.y)
    }

    /// `self·i`.
    pub fn right_mul_i(self) -> Self {
        Self::new(-self.x, self.w, self.z, -self.y)
    }

    pub fn is_complex(self) -> bool {
        self.y == 0.0 && self.z == 0.0
    }
}

/// Hamilton product `a·b`.
pub fn quat_mul(a: Quaternion, b: Quaternion) -> Quaternion {
    Quaternion::new(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )
}

pub fn left_multiply_by_i(psi: Quaternion) -> Quaternion {
    psi.left_mul_i()
}

pub fn right_multiply_by_i(psi: Quaternion) -> Quaternion {
    psi.right_mul_i()
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(
            self.w + rhs.w,
            self.x + rhs.x,
            self.y + rhs.y,
            self.z + rhs.z,
        )
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(
            self.w - rhs.w,
            self.x - rhs.x,
            self.y - rhs.y,
            self.z - rhs.z,
        )
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        quat_mul(self, rhs)
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

/// Right multiplication by an embedded complex number.
impl Mul<ComplexNum> for Quaternion {
    type Output = Self;
    fn mul(self, rhs: ComplexNum) -> Self {
        quat_mul(self, Quaternion::from_complex(rhs))
    }
}

/// Left multiplication by an embedded complex number.
impl Mul<Quaternion> for ComplexNum {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        quat_mul(Quaternion::from_complex(self), rhs)
    }
}

impl From<ComplexNum> for Quaternion {
    fn from(c: ComplexNum) -> Self {
        Self::from_complex(c)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = |x: f64| if x.is_sign_negative() { '-' } else { '+' };
        let prec = f.precision().unwrap_or(6);
        write!(f, "{:.*}", prec, self.w)?;
        for (c, unit) in [(self.x, 'i'), (self.y, 'j'), (self.z, 'k')] {
            write!(f, " {} {:.*}{}", sign(c), prec, c.abs(), unit)?;
        }
        Ok(())
    }
}
