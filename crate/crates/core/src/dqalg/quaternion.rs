use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Matrix3, Vector3};

use super::counter::{OpCounter, Uncounted};
use super::PURITY_TOL;
use crate::error::{Error, Result};

/// A quaternion `w + x î + y ĵ + z k̂`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Four products summed with the given signs: `s0 p0 ± p1 ± p2 ± p3`.
/// Always 4 multiplications and 3 additions.
#[inline(always)]
fn signed_sum4<C: OpCounter>(c: &mut C, terms: [(f64, f64); 4], plus: [bool; 3]) -> f64 {
    let p0 = c.mul(terms[0].0, terms[0].1);
    let p1 = c.mul(terms[1].0, terms[1].1);
    let p2 = c.mul(terms[2].0, terms[2].1);
    let p3 = c.mul(terms[3].0, terms[3].1);
    let s = if plus[0] { c.add(p0, p1) } else { c.sub(p0, p1) };
    let s = if plus[1] { c.add(s, p2) } else { c.sub(s, p2) };
    if plus[2] {
        c.add(s, p3)
    } else {
        c.sub(s, p3)
    }
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

    /// The pure quaternion `x î + y ĵ + z k̂`.
    pub const fn pure(x: f64, y: f64, z: f64) -> Self {
        Self::new(0.0, x, y, z)
    }

    pub fn from_vec3(v: &Vector3<f64>) -> Self {
        Self::pure(v[0], v[1], v[2])
    }

    /// Rotation by `angle` radians about the unit `axis`.
    pub fn from_axis_angle(axis: &Vector3<f64>, angle: f64) -> Self {
        let (s, c) = (angle / 2.0).sin_cos();
        Self::new(c, s * axis[0], s * axis[1], s * axis[2])
    }

    pub fn coeffs(&self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn from_coeffs(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    pub fn real(&self) -> f64 {
        self.w
    }

    pub fn imag(&self) -> Self {
        Self::pure(self.x, self.y, self.z)
    }

    /// Imaginary coefficients, ignoring the real part.
    pub fn imag_vec(&self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.z)
    }

    pub fn is_pure(&self) -> bool {
        self.w.abs() <= PURITY_TOL
    }

    /// `vec₃`: coefficients of a pure quaternion.
    pub fn vec3(&self) -> Result<Vector3<f64>> {
        if !self.is_pure() {
            return Err(Error::Domain(format!(
                "vec3 of a non-pure quaternion (real part {:e})",
                self.w
            )));
        }
        Ok(self.imag_vec())
    }

    pub fn norm_squared(&self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// Euclidean inner product of the four coefficients.
    pub fn dot4(&self, other: &Self) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs()
            .iter()
            .zip(other.coeffs())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Hamilton product, naive 16-multiply / 12-add kernel.
    pub fn mul_with<C: OpCounter>(&self, rhs: &Self, c: &mut C) -> Self {
        let (a, b) = (self, rhs);
        let w = signed_sum4(
            c,
            [(a.w, b.w), (a.x, b.x), (a.y, b.y), (a.z, b.z)],
            [false, false, false],
        );
        let x = signed_sum4(
            c,
            [(a.w, b.x), (a.x, b.w), (a.y, b.z), (a.z, b.y)],
            [true, true, false],
        );
        let y = signed_sum4(
            c,
            [(a.w, b.y), (a.x, b.z), (a.y, b.w), (a.z, b.x)],
            [false, true, true],
        );
        let z = signed_sum4(
            c,
            [(a.w, b.z), (a.x, b.y), (a.y, b.x), (a.z, b.w)],
            [true, false, true],
        );
        Self::new(w, x, y, z)
    }

    pub fn add_with<C: OpCounter>(&self, rhs: &Self, c: &mut C) -> Self {
        Self::new(
            c.add(self.w, rhs.w),
            c.add(self.x, rhs.x),
            c.add(self.y, rhs.y),
            c.add(self.z, rhs.z),
        )
    }

    pub fn sub_with<C: OpCounter>(&self, rhs: &Self, c: &mut C) -> Self {
        Self::new(
            c.sub(self.w, rhs.w),
            c.sub(self.x, rhs.x),
            c.sub(self.y, rhs.y),
            c.sub(self.z, rhs.z),
        )
    }

    pub fn scale_with<C: OpCounter>(&self, s: f64, c: &mut C) -> Self {
        Self::new(
            c.mul(s, self.w),
            c.mul(s, self.x),
            c.mul(s, self.y),
            c.mul(s, self.z),
        )
    }

    /// Conjugate; three negations.
    pub fn conj_with<C: OpCounter>(&self, c: &mut C) -> Self {
        Self::new(self.w, c.neg(self.x), c.neg(self.y), c.neg(self.z))
    }

    pub fn conj(&self) -> Self {
        self.conj_with(&mut Uncounted)
    }

    /// `(ab - ba) / 2`: two products, one subtraction, one scaling.
    pub fn cross_with<C: OpCounter>(&self, rhs: &Self, c: &mut C) -> Self {
        let ab = self.mul_with(rhs, c);
        let ba = rhs.mul_with(self, c);
        ab.sub_with(&ba, c).scale_with(0.5, c)
    }

    pub fn cross(&self, rhs: &Self) -> Self {
        self.cross_with(rhs, &mut Uncounted)
    }

    /// `r a r*`.
    pub fn adjoint_with<C: OpCounter>(&self, a: &Self, c: &mut C) -> Self {
        let rc = self.conj_with(c);
        self.mul_with(a, c).mul_with(&rc, c)
    }

    /// Rotates a pure quaternion by this (unit) rotation; the real part of the
    /// result is zeroed.
    pub fn rotate(&self, a: &Self) -> Self {
        let mut out = self.adjoint_with(a, &mut Uncounted);
        out.w = 0.0;
        out
    }

    /// Equivalent rotation matrix of a unit quaternion.
    pub fn to_rotation_matrix(&self) -> Matrix3<f64> {
        let (w, x, y, z) = (self.w, self.x, self.y, self.z);
        Matrix3::new(
            1.0 - 2.0 * (y * y + z * z),
            2.0 * (x * y - w * z),
            2.0 * (x * z + w * y),
            2.0 * (x * y + w * z),
            1.0 - 2.0 * (x * x + z * z),
            2.0 * (y * z - w * x),
            2.0 * (x * z - w * y),
            2.0 * (y * z + w * x),
            1.0 - 2.0 * (x * x + y * y),
        )
    }
}

/// `𝓜₃(A) h`: applies a 3×3 matrix to the imaginary coefficients of a pure
/// quaternion. 9 multiplications and 6 additions.
pub fn m3_apply(a: &Matrix3<f64>, h: &Quaternion) -> Result<Quaternion> {
    if !h.is_pure() {
        return Err(Error::Domain(format!(
            "M3 operator needs a pure quaternion (real part {:e})",
            h.w
        )));
    }
    Ok(m3_apply_with(a, h, &mut Uncounted))
}

/// Counted `𝓜₃` kernel; the real part of `h` is ignored.
pub fn m3_apply_with<C: OpCounter>(a: &Matrix3<f64>, h: &Quaternion, c: &mut C) -> Quaternion {
    let row = |c: &mut C, r: usize| {
        let p0 = c.mul(a[(r, 0)], h.x);
        let p1 = c.mul(a[(r, 1)], h.y);
        let p2 = c.mul(a[(r, 2)], h.z);
        let s = c.add(p0, p1);
        c.add(s, p2)
    };
    let x = row(c, 0);
    let y = row(c, 1);
    let z = row(c, 2);
    Quaternion::pure(x, y, z)
}

impl Mul for Quaternion {
    type Output = Quaternion;

    fn mul(self, rhs: Quaternion) -> Quaternion {
        self.mul_with(&rhs, &mut Uncounted)
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;

    fn mul(self, s: f64) -> Quaternion {
        self.scale_with(s, &mut Uncounted)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;

    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Add for Quaternion {
    type Output = Quaternion;

    fn add(self, rhs: Quaternion) -> Quaternion {
        self.add_with(&rhs, &mut Uncounted)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;

    fn sub(self, rhs: Quaternion) -> Quaternion {
        self.sub_with(&rhs, &mut Uncounted)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;

    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i + {}j + {}k", self.w, self.x, self.y, self.z)
    }
}
