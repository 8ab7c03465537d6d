//! Quaternion arithmetic over f64 components.
//!
//! Elements are `q = w + x·i + y·j + z·k` with the Hamilton rules
//! `i² = j² = k² = ijk = -1`, `ij = -ji = k`, `jk = -kj = i`, `ki = -ik = j`.
//! No normalization or denormal flushing is performed anywhere; NaN and
//! infinity propagate with ordinary float semantics so that the transforms
//! built on top stay exactly linear.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

/// One element of the quaternion algebra, stored as
/// `(w, x, y, z)` = (scalar, i-part, j-part, k-part).
///
/// That component order is used everywhere, including file formats.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub const fn from_real(r: f64) -> Self {
        Self::new(r, 0.0, 0.0, 0.0)
    }

    /// Conjugate: flips the sign of the pure part.
    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Euclidean modulus `|q| = sqrt(w² + x² + y² + z²)`.
    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn scale(self, c: f64) -> Self {
        Self::new(self.w * c, self.x * c, self.y * c, self.z * c)
    }

    /// Components in storage order `[w, x, y, z]`.
    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    /// Component by index in storage order; panics for `c > 3`.
    pub fn component(self, c: usize) -> f64 {
        match c {
            0 => self.w,
            1 => self.x,
            2 => self.y,
            3 => self.z,
            _ => panic!("quaternion component index {c} out of range"),
        }
    }

    /// Simplex/perplex split `q = a + b·j` with `a, b` in the i-plane:
    /// `a = w + x·i`, `b = y + z·i`.
    pub fn split_simplex(self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.w, self.x),
            Complex64::new(self.y, self.z),
        )
    }

    /// Inverse of [`split_simplex`]: rebuilds `a + b·j`.
    pub fn from_simplex(a: Complex64, b: Complex64) -> Self {
        Self::new(a.re, a.im, b.re, b.im)
    }

    /// Left multiplication by an i-plane complex number: `(c.re + c.im·i)·q`.
    pub fn left_mul_i(c: Complex64, q: Quaternion) -> Quaternion {
        Quaternion::new(
            c.re * q.w - c.im * q.x,
            c.re * q.x + c.im * q.w,
            c.re * q.y - c.im * q.z,
            c.re * q.z + c.im * q.y,
        )
    }

    /// Right multiplication by a j-plane complex number: `q·(c.re + c.im·j)`.
    pub fn right_mul_j(q: Quaternion, c: Complex64) -> Quaternion {
        Quaternion::new(
            q.w * c.re - q.y * c.im,
            q.x * c.re - q.z * c.im,
            q.y * c.re + q.w * c.im,
            q.z * c.re + q.x * c.im,
        )
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Self) -> Self {
        Self::new(
            self.w + rhs.w,
            self.x + rhs.x,
            self.y + rhs.y,
            self.z + rhs.z,
        )
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
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
    type Output = Quaternion;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product; non-commutative.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, q: Self) -> Self {
        let p = self;
        Self::new(
            p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, c: f64) -> Self {
        self.scale(c)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q.scale(self)
    }
}
