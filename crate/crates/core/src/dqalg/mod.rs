//! Quaternion and dual quaternion algebra.
//!
//! Coefficients are stored as `(w, x, y, z)`, primary part first. All
//! vectorization maps and Hamilton matrices use that layout.

mod counter;
mod dual_quaternion;
mod pose;
mod quaternion;

pub use counter::{OpCounter, OpTally, Uncounted};
pub use dual_quaternion::{
    hamilton_plus_8, selector_6x8, DualQuaternion, DualScalar, Mat8, PureDualQuaternion, Twist, Vec8, Wrench,
};
pub use pose::{adjoint, Pose};
pub use quaternion::{m3_apply, m3_apply_with, Quaternion};

pub use nalgebra::{Matrix3, Vector3, Vector6};

/// Largest real-part residue silently dropped from a pure element.
pub const PURITY_TOL: f64 = 1e-12;
/// Unit defect accepted as-is for a pose.
pub const POSE_UNIT_TOL: f64 = 1e-12;
/// Unit defect beyond which a pose is rejected rather than renormalized.
pub const POSE_REJECT_TOL: f64 = 1e-6;
