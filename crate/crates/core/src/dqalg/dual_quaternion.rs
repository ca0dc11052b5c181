use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{SMatrix, SVector, Vector3, Vector6};

use super::counter::{OpCounter, Uncounted};
use super::quaternion::Quaternion;
use super::PURITY_TOL;
use crate::error::{Error, Result};

pub type Vec8 = SVector<f64, 8>;
pub type Mat8 = SMatrix<f64, 8, 8>;

/// `h = P + ε D` with `ε² = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DualQuaternion {
    pub primary: Quaternion,
    pub dual: Quaternion,
}

/// A dual number `p + ε d`, e.g. the result of [`PureDualQuaternion::dot`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DualScalar {
    pub primary: f64,
    pub dual: f64,
}

impl DualQuaternion {
    pub const ZERO: Self = Self::new(Quaternion::ZERO, Quaternion::ZERO);
    pub const ONE: Self = Self::new(Quaternion::ONE, Quaternion::ZERO);
    /// The dual unit ε.
    pub const E: Self = Self::new(Quaternion::ZERO, Quaternion::ONE);

    pub const fn new(primary: Quaternion, dual: Quaternion) -> Self {
        Self { primary, dual }
    }

    pub fn from_vec8(v: &Vec8) -> Self {
        Self::new(
            Quaternion::new(v[0], v[1], v[2], v[3]),
            Quaternion::new(v[4], v[5], v[6], v[7]),
        )
    }

    /// `vec₈`: (1, î, ĵ, k̂) of the primary part, then of the dual part.
    pub fn vec8(&self) -> Vec8 {
        let (p, d) = (&self.primary, &self.dual);
        Vec8::from([p.w, p.x, p.y, p.z, d.w, d.x, d.y, d.z])
    }

    /// `vec₆` for an element that should be pure.
    pub fn vec6(&self) -> Result<Vector6<f64>> {
        Ok(PureDualQuaternion::new(*self)?.vec6())
    }

    pub fn is_pure(&self) -> bool {
        self.primary.is_pure() && self.dual.is_pure()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.primary
            .max_abs_diff(&other.primary)
            .max(self.dual.max_abs_diff(&other.dual))
    }

    pub fn max_abs(&self) -> f64 {
        self.max_abs_diff(&Self::ZERO)
    }

    /// `P(a)P(b) + ε(P(a)D(b) + D(a)P(b))`: 48 multiplications, 40 additions.
    pub fn mul_with<C: OpCounter>(&self, rhs: &Self, c: &mut C) -> Self {
        let primary = self.primary.mul_with(&rhs.primary, c);
        let pd = self.primary.mul_with(&rhs.dual, c);
        let dp = self.dual.mul_with(&rhs.primary, c);
        Self::new(primary, pd.add_with(&dp, c))
    }

    pub fn add_with<C: OpCounter>(&self, rhs: &Self, c: &mut C) -> Self {
        Self::new(
            self.primary.add_with(&rhs.primary, c),
            self.dual.add_with(&rhs.dual, c),
        )
    }

    pub fn sub_with<C: OpCounter>(&self, rhs: &Self, c: &mut C) -> Self {
        Self::new(
            self.primary.sub_with(&rhs.primary, c),
            self.dual.sub_with(&rhs.dual, c),
        )
    }

    pub fn scale_with<C: OpCounter>(&self, s: f64, c: &mut C) -> Self {
        Self::new(self.primary.scale_with(s, c), self.dual.scale_with(s, c))
    }

    /// Real parts kept, imaginary parts negated; 6 negations.
    pub fn conj_with<C: OpCounter>(&self, c: &mut C) -> Self {
        Self::new(self.primary.conj_with(c), self.dual.conj_with(c))
    }

    pub fn conj(&self) -> Self {
        self.conj_with(&mut Uncounted)
    }

    /// `x h x*`, two products and one conjugation (102 multiplications, 80
    /// additions). No purity clean-up is applied here.
    pub fn adjoint_with<C: OpCounter>(&self, h: &Self, c: &mut C) -> Self {
        let xc = self.conj_with(c);
        self.mul_with(h, c).mul_with(&xc, c)
    }

    /// `(ab - ba) / 2`: 104 multiplications, 88 additions.
    pub fn cross_with<C: OpCounter>(&self, rhs: &Self, c: &mut C) -> Self {
        let ab = self.mul_with(rhs, c);
        let ba = rhs.mul_with(self, c);
        ab.sub_with(&ba, c).scale_with(0.5, c)
    }

    /// `-(ab + ba) / 2`.
    pub fn dot_with<C: OpCounter>(&self, rhs: &Self, c: &mut C) -> Self {
        let ab = self.mul_with(rhs, c);
        let ba = rhs.mul_with(self, c);
        ab.add_with(&ba, c).scale_with(-0.5, c)
    }

    /// Unit defect `max(|‖P‖ - 1|, |⟨P, D⟩|)`.
    pub fn unit_defect(&self) -> f64 {
        let n = self.primary.norm();
        (n - 1.0).abs().max(self.primary.dot4(&self.dual).abs())
    }
}

/// `H⁺₈(h)`, the matrix of left multiplication: `vec₈(h g) = H⁺₈(h) vec₈(g)`.
pub fn hamilton_plus_8(h: &DualQuaternion) -> Mat8 {
    let p = hamilton_plus_4(&h.primary);
    let d = hamilton_plus_4(&h.dual);
    let mut m = Mat8::zeros();
    m.fixed_view_mut::<4, 4>(0, 0).copy_from(&p);
    m.fixed_view_mut::<4, 4>(4, 0).copy_from(&d);
    m.fixed_view_mut::<4, 4>(4, 4).copy_from(&p);
    m
}

fn hamilton_plus_4(q: &Quaternion) -> SMatrix<f64, 4, 4> {
    let (w, x, y, z) = (q.w, q.x, q.y, q.z);
    SMatrix::<f64, 4, 4>::new(
        w, -x, -y, -z, //
        x, w, -z, y, //
        y, z, w, -x, //
        z, -y, x, w,
    )
}

/// The constant 6×8 selector `Ī` that drops entries 1 and 5 of `vec₈`.
pub fn selector_6x8() -> SMatrix<f64, 6, 8> {
    let mut s = SMatrix::<f64, 6, 8>::zeros();
    for r in 0..3 {
        s[(r, r + 1)] = 1.0;
        s[(r + 3, r + 5)] = 1.0;
    }
    s
}

/// Dual quaternion with zero real parts in both components: the carrier of
/// twists `ω + ε v` and wrenches `f + ε τ`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PureDualQuaternion(DualQuaternion);

/// Angular velocity (primary, rad/s) and linear velocity (dual, m/s).
pub type Twist = PureDualQuaternion;
/// Force (primary, N) and torque (dual, N·m).
pub type Wrench = PureDualQuaternion;

impl PureDualQuaternion {
    pub const ZERO: Self = Self(DualQuaternion::ZERO);

    /// Accepts `h` if both real parts are within the purity tolerance, and
    /// zeroes them.
    pub fn new(h: DualQuaternion) -> Result<Self> {
        let (rp, rd) = (h.primary.w, h.dual.w);
        if rp.abs() > PURITY_TOL || rd.abs() > PURITY_TOL {
            return Err(Error::Domain(format!(
                "expected a pure dual quaternion, real parts are {rp:e} and {rd:e}"
            )));
        }
        Ok(Self::from_dq_unchecked(h))
    }

    /// Drops the real parts without checking them.
    pub(crate) fn from_dq_unchecked(mut h: DualQuaternion) -> Self {
        h.primary.w = 0.0;
        h.dual.w = 0.0;
        Self(h)
    }

    pub fn from_vectors(primary: &Vector3<f64>, dual: &Vector3<f64>) -> Self {
        Self(DualQuaternion::new(
            Quaternion::from_vec3(primary),
            Quaternion::from_vec3(dual),
        ))
    }

    pub fn from_parts(primary: [f64; 3], dual: [f64; 3]) -> Self {
        Self::from_vectors(&Vector3::from(primary), &Vector3::from(dual))
    }

    /// Pure primary part only.
    pub fn from_primary(q: &Quaternion) -> Self {
        Self::from_vectors(&q.imag_vec(), &Vector3::zeros())
    }

    /// Pure dual part only.
    pub fn from_dual(q: &Quaternion) -> Self {
        Self::from_vectors(&Vector3::zeros(), &q.imag_vec())
    }

    pub fn from_vec6(v: &Vector6<f64>) -> Self {
        Self::from_parts([v[0], v[1], v[2]], [v[3], v[4], v[5]])
    }

    pub fn as_dq(&self) -> &DualQuaternion {
        &self.0
    }

    pub fn into_dq(self) -> DualQuaternion {
        self.0
    }

    pub fn primary(&self) -> Quaternion {
        self.0.primary
    }

    pub fn dual(&self) -> Quaternion {
        self.0.dual
    }

    pub fn primary_vec(&self) -> Vector3<f64> {
        self.0.primary.imag_vec()
    }

    pub fn dual_vec(&self) -> Vector3<f64> {
        self.0.dual.imag_vec()
    }

    /// `vec₆`: imaginary coefficients of the primary part then the dual part.
    pub fn vec6(&self) -> Vector6<f64> {
        let (p, d) = (&self.0.primary, &self.0.dual);
        Vector6::new(p.x, p.y, p.z, d.x, d.y, d.z)
    }

    pub fn vec8(&self) -> Vec8 {
        self.0.vec8()
    }

    pub fn add_with<C: OpCounter>(&self, rhs: &Self, c: &mut C) -> Self {
        Self(self.0.add_with(&rhs.0, c))
    }

    pub fn scale_with<C: OpCounter>(&self, s: f64, c: &mut C) -> Self {
        Self::from_dq_unchecked(self.0.scale_with(s, c))
    }

    pub fn cross_with<C: OpCounter>(&self, rhs: &Self, c: &mut C) -> Self {
        Self::from_dq_unchecked(self.0.cross_with(&rhs.0, c))
    }

    /// `(ab - ba) / 2 = l×s + ε(l×s' + l'×s)`.
    pub fn cross(&self, rhs: &Self) -> Self {
        self.cross_with(rhs, &mut Uncounted)
    }

    /// `-(ab + ba) / 2 = ⟨P(a), P(b)⟩ + ε(⟨P(a), D(b)⟩ + ⟨D(a), P(b)⟩)`.
    pub fn dot(&self, rhs: &Self) -> DualScalar {
        let d = self.0.dot_with(&rhs.0, &mut Uncounted);
        DualScalar {
            primary: d.primary.w,
            dual: d.dual.w,
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0.max_abs_diff(&other.0)
    }
}

impl Add for PureDualQuaternion {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        self.add_with(&rhs, &mut Uncounted)
    }
}

impl Sub for PureDualQuaternion {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self(self.0.sub_with(&rhs.0, &mut Uncounted))
    }
}

impl Neg for PureDualQuaternion {
    type Output = Self;

    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl Mul<f64> for PureDualQuaternion {
    type Output = Self;

    fn mul(self, s: f64) -> Self {
        self.scale_with(s, &mut Uncounted)
    }
}

impl Mul<PureDualQuaternion> for f64 {
    type Output = PureDualQuaternion;

    fn mul(self, h: PureDualQuaternion) -> PureDualQuaternion {
        h * self
    }
}

impl Mul for DualQuaternion {
    type Output = DualQuaternion;

    fn mul(self, rhs: DualQuaternion) -> DualQuaternion {
        self.mul_with(&rhs, &mut Uncounted)
    }
}

impl Mul<f64> for DualQuaternion {
    type Output = DualQuaternion;

    fn mul(self, s: f64) -> DualQuaternion {
        self.scale_with(s, &mut Uncounted)
    }
}

impl Mul<DualQuaternion> for f64 {
    type Output = DualQuaternion;

    fn mul(self, h: DualQuaternion) -> DualQuaternion {
        h * self
    }
}

impl Add for DualQuaternion {
    type Output = DualQuaternion;

    fn add(self, rhs: DualQuaternion) -> DualQuaternion {
        self.add_with(&rhs, &mut Uncounted)
    }
}

impl Sub for DualQuaternion {
    type Output = DualQuaternion;

    fn sub(self, rhs: DualQuaternion) -> DualQuaternion {
        self.sub_with(&rhs, &mut Uncounted)
    }
}

impl Neg for DualQuaternion {
    type Output = DualQuaternion;

    fn neg(self) -> DualQuaternion {
        DualQuaternion::new(-self.primary, -self.dual)
    }
}

impl From<Quaternion> for DualQuaternion {
    fn from(q: Quaternion) -> Self {
        DualQuaternion::new(q, Quaternion::ZERO)
    }
}

impl From<PureDualQuaternion> for DualQuaternion {
    fn from(h: PureDualQuaternion) -> Self {
        h.0
    }
}

impl fmt::Display for DualQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ε({})", self.primary, self.dual)
    }
}
