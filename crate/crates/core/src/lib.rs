//! Rigid-body dynamics of serial manipulators in dual quaternion algebra.
//!
//! Two inverse-dynamics formulations are provided and cross-check each other:
//! a recursive Newton-Euler algorithm ([`dqne`]) and a closed-form
//! Euler-Lagrange model obtained from Gauss's principle of least constraint
//! ([`gplc`]). [`costmodel`] gives exact operation counts for both.

pub mod chain;
pub mod costmodel;
pub mod dqalg;
pub mod dqne;
pub mod error;
pub mod fixtures;
pub mod gplc;
pub mod validation;

pub use chain::{fkine, JointModel, KinematicState, Link, LinkParams, SerialChain};
pub use dqalg::{DualQuaternion, Pose, PureDualQuaternion, Quaternion, Twist, Wrench};
pub use error::{Error, Result};
