//! Serial-chain description, forward kinematics to every center of mass, and
//! the pose and twist Jacobians.
//!
//! Frame conventions: frame `0` is the inertial base frame. Link `i` carries
//! frame `i` (standard Denavit-Hartenberg) and its center-of-mass frame `cᵢ`.
//! Joint `i` moves link `i` relative to frame `i-1`, about or along the axis
//! `l` expressed in frame `i-1`:
//!
//! `x_i^{i-1} = joint(qᵢ) · dh(θ, d, a, α)`, `x_{cᵢ}^{i-1} = x_i^{i-1} · com_i`.
//!
//! With `l = k̂` this is the usual DH convention with the joint variable added
//! to `θ` (revolute) or `d` (prismatic).

mod description;
mod jacobian;
mod kinematics;

use std::fmt;
use std::sync::Arc;

use nalgebra::{Matrix3, SymmetricEigen, Vector3};

use crate::dqalg::{DualQuaternion, Pose, PureDualQuaternion, Quaternion, Twist, Wrench};
use crate::error::{Error, Result};

pub use description::{LinkDescription, RobotDescription};
pub use jacobian::{
    pose_jacobian, pose_jacobian_derivative, twist_jacobian, twist_jacobian_derivative, TwistJacobians,
};
pub use kinematics::{fkine, KinematicState};

/// Tolerance on `‖l‖ = 1` for joint axes.
pub const AXIS_UNIT_TOL: f64 = 1e-12;
/// Tolerance on the symmetry of inertia tensors.
pub const INERTIA_SYMMETRY_TOL: f64 = 1e-12;

/// Joint motion supplied by the caller.
///
/// The joint displacement `T(q)` (a pose in frame `i-1`) and its screw `s(q)`
/// must satisfy `dT/dq = ½ s(q) T(q)`, so that the joint twist is
/// `ξ = q̇ s(q)` and its time derivative is `q̈ s(q) + q̇² s'(q)`.
pub trait CustomJoint: fmt::Debug + Send + Sync {
    /// Joint displacement `T(q)`, applied before the constant DH transform.
    fn transform(&self, q: f64) -> Pose;

    /// Screw `s(q)` in frame `i-1`. Must be a pure dual quaternion.
    fn screw(&self, q: f64) -> DualQuaternion;

    /// `∂s/∂q`. Must be pure.
    fn screw_rate(&self, q: f64) -> DualQuaternion;

    /// Generalized joint force from the joint wrench (expressed in frame
    /// `i-1`). Joints that return `None` cannot be projected.
    fn project(&self, _q: f64, _wrench: &Wrench) -> Option<f64> {
        None
    }
}

#[derive(Clone, Debug)]
pub enum JointKind {
    Revolute,
    Prismatic,
    Custom(Arc<dyn CustomJoint>),
}

#[derive(Clone, Debug)]
pub struct JointModel {
    kind: JointKind,
    axis: Quaternion,
}

impl JointModel {
    /// Revolute joint about the z-axis of frame `i-1`.
    pub fn revolute() -> Self {
        Self {
            kind: JointKind::Revolute,
            axis: Quaternion::K,
        }
    }

    /// Prismatic joint along the z-axis of frame `i-1`.
    pub fn prismatic() -> Self {
        Self {
            kind: JointKind::Prismatic,
            axis: Quaternion::K,
        }
    }

    pub fn custom(joint: Arc<dyn CustomJoint>) -> Self {
        Self {
            kind: JointKind::Custom(joint),
            axis: Quaternion::K,
        }
    }

    /// Replaces the motion axis. The axis must be unit to 1e-12.
    pub fn with_axis(mut self, axis: Vector3<f64>) -> Result<Self> {
        let norm = axis.norm();
        if !norm.is_finite() || (norm - 1.0).abs() > AXIS_UNIT_TOL {
            return Err(Error::Domain(format!("joint axis must be unit, got norm {norm}")));
        }
        self.axis = Quaternion::from_vec3(&axis);
        Ok(self)
    }

    pub fn kind(&self) -> &JointKind {
        &self.kind
    }

    pub fn axis(&self) -> Quaternion {
        self.axis
    }

    /// Joint displacement `T(q)` in frame `i-1`.
    pub fn transform(&self, q: f64) -> Pose {
        let l = self.axis.imag_vec();
        match &self.kind {
            JointKind::Revolute => Pose::from_axis_angle(&l, q),
            JointKind::Prismatic => Pose::from_translation(&(q * l)),
            JointKind::Custom(j) => j.transform(q),
        }
    }

    /// Screw `s(q)` such that the joint twist is `q̇ s(q)`.
    pub fn screw(&self, q: f64) -> Result<Twist> {
        match &self.kind {
            JointKind::Revolute => Ok(PureDualQuaternion::from_primary(&self.axis)),
            JointKind::Prismatic => Ok(PureDualQuaternion::from_dual(&self.axis)),
            JointKind::Custom(j) => PureDualQuaternion::new(j.screw(q)),
        }
    }

    /// `∂s/∂q`; zero for revolute and prismatic joints.
    pub fn screw_rate(&self, q: f64) -> Result<Twist> {
        match &self.kind {
            JointKind::Revolute | JointKind::Prismatic => Ok(Twist::ZERO),
            JointKind::Custom(j) => PureDualQuaternion::new(j.screw_rate(q)),
        }
    }
}

/// Twist `ξ_{i-1,cᵢ}^{i-1}` generated by a joint moving at `q̇`.
///
/// Revolute: `q̇ l`. Prismatic: `ε q̇ l`. Custom: `q̇ s(q)`.
pub fn joint_twist(joint: &JointModel, q: f64, qdot: f64) -> Result<Twist> {
    check_finite(&[q, qdot])?;
    Ok(qdot * joint.screw(q)?)
}

/// Time derivative of [`joint_twist`]: `q̈ s(q) + q̇² s'(q)`.
pub fn joint_twist_derivative(joint: &JointModel, q: f64, qdot: f64, qddot: f64) -> Result<Twist> {
    check_finite(&[q, qdot, qddot])?;
    let s = joint.screw(q)?;
    let ds = joint.screw_rate(q)?;
    Ok(qddot * s + (qdot * qdot) * ds)
}

fn check_finite(values: &[f64]) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::Input("non-finite joint value".into()))
    }
}

/// Standard Denavit-Hartenberg row (rad, m, m, rad).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DhParams {
    pub theta: f64,
    pub d: f64,
    pub a: f64,
    pub alpha: f64,
}

impl DhParams {
    pub fn new(theta: f64, d: f64, a: f64, alpha: f64) -> Self {
        Self { theta, d, a, alpha }
    }

    /// `rot_z(θ) · trans_z(d) · trans_x(a) · rot_x(α)`.
    pub fn transform(&self) -> Pose {
        let rz = Pose::from_axis_angle(&Vector3::z(), self.theta);
        let tz = Pose::from_translation(&Vector3::new(0.0, 0.0, self.d));
        let tx = Pose::from_translation(&Vector3::new(self.a, 0.0, 0.0));
        let rx = Pose::from_axis_angle(&Vector3::x(), self.alpha);
        rz * tz * tx * rx
    }
}

/// Inertial and geometric data of one link.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkParams {
    pub dh: DhParams,
    /// kg
    pub mass: f64,
    /// Pose of the center-of-mass frame in the link frame.
    pub com: Pose,
    /// Inertia tensor at the center of mass, in the center-of-mass frame (kg·m²).
    pub inertia: Matrix3<f64>,
}

impl LinkParams {
    fn validate(&self) -> std::result::Result<(), String> {
        let dh = &self.dh;
        if ![dh.theta, dh.d, dh.a, dh.alpha].iter().all(|v| v.is_finite()) {
            return Err("DH parameters must be finite".into());
        }
        if !(self.mass.is_finite() && self.mass > 0.0) {
            return Err(format!("mass must be positive, got {}", self.mass));
        }
        let i = &self.inertia;
        if i.iter().any(|v| !v.is_finite()) {
            return Err("inertia must be finite".into());
        }
        let asym = (i - i.transpose()).amax();
        if asym > INERTIA_SYMMETRY_TOL * i.amax().max(1.0) {
            return Err(format!("inertia is not symmetric (defect {asym:e})"));
        }
        let min_eig = SymmetricEigen::new(*i).eigenvalues.min();
        if min_eig <= 0.0 {
            return Err(format!(
                "inertia is not positive definite (smallest eigenvalue {min_eig:e})"
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Link {
    pub joint: JointModel,
    pub params: LinkParams,
}

impl Link {
    pub fn new(joint: JointModel, params: LinkParams) -> Self {
        Self { joint, params }
    }
}

/// Default gravitational acceleration, m/s², inertial frame.
pub const STANDARD_GRAVITY: [f64; 3] = [0.0, 0.0, -9.81];

/// An open serial kinematic chain. Immutable once built.
#[derive(Debug, Clone)]
pub struct SerialChain {
    name: String,
    links: Vec<Link>,
    gravity: Vector3<f64>,
}

impl SerialChain {
    /// Validates every link and builds the chain. Errors name the offending
    /// link (1-based).
    pub fn new(name: impl Into<String>, links: Vec<Link>, gravity: Vector3<f64>) -> Result<Self> {
        if links.is_empty() {
            return Err(Error::Config("a serial chain needs at least one link".into()));
        }
        if gravity.iter().any(|g| !g.is_finite()) {
            return Err(Error::Config("gravity must be finite".into()));
        }
        for (k, link) in links.iter().enumerate() {
            link.params
                .validate()
                .map_err(|reason| Error::Link { link: k + 1, reason })?;
            let l = link.joint.axis().imag_vec().norm();
            if (l - 1.0).abs() > AXIS_UNIT_TOL {
                return Err(Error::Link {
                    link: k + 1,
                    reason: format!("joint axis must be unit, got norm {l}"),
                });
            }
        }
        Ok(Self {
            name: name.into(),
            links,
            gravity,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of links (and joints).
    pub fn dof(&self) -> usize {
        self.links.len()
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn gravity(&self) -> Vector3<f64> {
        self.gravity
    }

    /// Same chain with a different gravity vector.
    pub fn with_gravity(mut self, gravity: Vector3<f64>) -> Self {
        self.gravity = gravity;
        self
    }

    /// Checks that a joint-space vector has one entry per joint and is finite.
    pub fn check_joint_vector(&self, what: &str, v: &[f64]) -> Result<()> {
        if v.len() != self.dof() {
            return Err(Error::Input(format!(
                "{what} has {} entries, chain has {} joints",
                v.len(),
                self.dof()
            )));
        }
        if let Some(k) = v.iter().position(|x| !x.is_finite()) {
            return Err(Error::Input(format!("{what}[{k}] is not finite")));
        }
        Ok(())
    }
}
