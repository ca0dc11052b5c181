use std::ops::Mul;

use nalgebra::Vector3;

use super::counter::{OpCounter, Uncounted};
use super::dual_quaternion::{DualQuaternion, PureDualQuaternion};
use super::quaternion::Quaternion;
use super::{POSE_REJECT_TOL, POSE_UNIT_TOL};
use crate::error::{Error, Result};

/// Unit dual quaternion `x = r + ε ½ p r` describing a rigid transformation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose(DualQuaternion);

impl Default for Pose {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl Pose {
    pub const IDENTITY: Self = Self(DualQuaternion::ONE);

    /// Accepts `h` as a pose. A unit defect up to 1e-12 is taken as is, up to
    /// 1e-6 it is renormalized, anything larger is rejected.
    pub fn new(h: DualQuaternion) -> Result<Self> {
        let defect = h.unit_defect();
        if !defect.is_finite() || defect > POSE_REJECT_TOL {
            return Err(Error::InvalidPose { defect });
        }
        if defect > POSE_UNIT_TOL {
            Ok(Self(renormalize(h)))
        } else {
            Ok(Self(h))
        }
    }

    /// Rotation `r` (normalized if slightly off) followed by translation `p`,
    /// both expressed in the reference frame.
    pub fn from_rotation_translation(r: Quaternion, p: &Vector3<f64>) -> Result<Self> {
        let r = Self::new(DualQuaternion::from(r))?.rotation();
        let dual = 0.5 * (Quaternion::from_vec3(p) * r);
        Self::new(DualQuaternion::new(r, dual))
    }

    pub fn from_translation(p: &Vector3<f64>) -> Self {
        Self(DualQuaternion::new(
            Quaternion::ONE,
            0.5 * Quaternion::from_vec3(p),
        ))
    }

    pub fn from_rotation(r: Quaternion) -> Result<Self> {
        Self::new(DualQuaternion::from(r))
    }

    /// Rotation about the unit `axis` by `angle` radians.
    pub fn from_axis_angle(axis: &Vector3<f64>, angle: f64) -> Self {
        Self(DualQuaternion::from(Quaternion::from_axis_angle(axis, angle)))
    }

    pub fn as_dq(&self) -> &DualQuaternion {
        &self.0
    }

    pub fn rotation(&self) -> Quaternion {
        self.0.primary
    }

    /// `p = 2 D(x) P(x)*`.
    pub fn translation(&self) -> Vector3<f64> {
        (2.0 * (self.0.dual * self.0.primary.conj())).imag_vec()
    }

    /// The inverse transformation, `x*`.
    pub fn inverse(&self) -> Self {
        Self(self.0.conj())
    }

    pub fn inverse_with<C: OpCounter>(&self, c: &mut C) -> Self {
        Self(self.0.conj_with(c))
    }

    /// `self * other`, renormalized if round-off pushed it past 1e-12.
    pub fn compose(&self, other: &Self) -> Self {
        let h = self.0 * other.0;
        if h.unit_defect() > POSE_UNIT_TOL {
            Self(renormalize(h))
        } else {
            Self(h)
        }
    }

    /// `Ad(x) h = x h x*`; the real parts of the result are zeroed.
    pub fn adjoint_with<C: OpCounter>(&self, h: &PureDualQuaternion, c: &mut C) -> PureDualQuaternion {
        PureDualQuaternion::from_dq_unchecked(self.0.adjoint_with(h.as_dq(), c))
    }

    pub fn adjoint(&self, h: &PureDualQuaternion) -> PureDualQuaternion {
        self.adjoint_with(h, &mut Uncounted)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0.max_abs_diff(&other.0)
    }
}

/// `Ad(x) h`.
pub fn adjoint(x: &Pose, h: &PureDualQuaternion) -> PureDualQuaternion {
    x.adjoint(h)
}

fn renormalize(h: DualQuaternion) -> DualQuaternion {
    let n = h.primary.norm();
    let p = (1.0 / n) * h.primary;
    let d = (1.0 / n) * h.dual;
    let d = d - p.dot4(&d) * p;
    DualQuaternion::new(p, d)
}

impl Mul for Pose {
    type Output = Pose;

    fn mul(self, rhs: Pose) -> Pose {
        self.compose(&rhs)
    }
}

impl From<Pose> for DualQuaternion {
    fn from(x: Pose) -> Self {
        x.0
    }
}
