//! JSON robot description.
//!
//! ```json
//! {
//!   "name": "pendulum",
//!   "gravity": [0.0, -9.81, 0.0],
//!   "links": [{
//!     "joint": {"type": "revolute", "axis": [0, 0, 1]},
//!     "dh": {"theta": 0, "d": 0, "a": 0, "alpha": 0},
//!     "mass": 1.0,
//!     "com": [0.5, 0, 0],
//!     "com_orientation": [1, 0, 0, 0],
//!     "inertia": [[0.01, 0, 0], [0, 0.01, 0], [0, 0, 0.0833]]
//!   }]
//! }
//! ```
//!
//! `gravity` defaults to `[0, 0, -9.81]`, `com_orientation` to identity and
//! `axis` to the z-axis of frame `i-1`.

use std::path::Path;

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::dqalg::{Pose, Quaternion};
use crate::error::{Error, Result};

use super::{DhParams, JointModel, Link, LinkParams, SerialChain, STANDARD_GRAVITY};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RobotDescription {
    pub name: String,
    #[serde(default = "default_gravity")]
    pub gravity: [f64; 3],
    pub links: Vec<LinkDescription>,
}

fn default_gravity() -> [f64; 3] {
    STANDARD_GRAVITY
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JointType {
    Revolute,
    Prismatic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JointDescription {
    #[serde(rename = "type")]
    pub kind: JointType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis: Option<[f64; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DhDescription {
    pub theta: f64,
    pub d: f64,
    pub a: f64,
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkDescription {
    pub joint: JointDescription,
    pub dh: DhDescription,
    pub mass: f64,
    pub com: [f64; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub com_orientation: Option<[f64; 4]>,
    pub inertia: [[f64; 3]; 3],
}

impl RobotDescription {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Description(e.to_string()))
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Description(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("description serializes")
    }

    /// Validates the description and builds the chain.
    pub fn build(&self) -> Result<SerialChain> {
        let links = self
            .links
            .iter()
            .enumerate()
            .map(|(k, l)| {
                l.build().map_err(|e| Error::Link {
                    link: k + 1,
                    reason: match e {
                        Error::Link { reason, .. } => reason,
                        other => other.to_string(),
                    },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        SerialChain::new(self.name.clone(), links, Vector3::from(self.gravity))
    }
}

impl LinkDescription {
    fn build(&self) -> Result<Link> {
        let mut joint = match self.joint.kind {
            JointType::Revolute => JointModel::revolute(),
            JointType::Prismatic => JointModel::prismatic(),
        };
        if let Some(axis) = self.joint.axis {
            joint = joint.with_axis(Vector3::from(axis))?;
        }
        if self.com.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("com must be finite".into()));
        }
        let r = match self.com_orientation {
            Some(c) => Quaternion::from_coeffs(c),
            None => Quaternion::ONE,
        };
        let com = Pose::from_rotation_translation(r, &Vector3::from(self.com))?;
        let inertia = Matrix3::from_fn(|r, c| self.inertia[r][c]);
        let dh = DhParams::new(self.dh.theta, self.dh.d, self.dh.a, self.dh.alpha);
        Ok(Link::new(
            joint,
            LinkParams {
                dh,
                mass: self.mass,
                com,
                inertia,
            },
        ))
    }

    /// Description of an existing revolute or prismatic link.
    pub fn from_link(link: &Link) -> Option<Self> {
        let kind = match link.joint.kind() {
            super::JointKind::Revolute => JointType::Revolute,
            super::JointKind::Prismatic => JointType::Prismatic,
            super::JointKind::Custom(_) => return None,
        };
        let p = &link.params;
        let axis = link.joint.axis().imag_vec();
        let i = &p.inertia;
        Some(Self {
            joint: JointDescription {
                kind,
                axis: Some([axis.x, axis.y, axis.z]),
            },
            dh: DhDescription {
                theta: p.dh.theta,
                d: p.dh.d,
                a: p.dh.a,
                alpha: p.dh.alpha,
            },
            mass: p.mass,
            com: p.com.translation().into(),
            com_orientation: Some(p.com.rotation().coeffs()),
            inertia: [
                [i[(0, 0)], i[(0, 1)], i[(0, 2)]],
                [i[(1, 0)], i[(1, 1)], i[(1, 2)]],
                [i[(2, 0)], i[(2, 1)], i[(2, 2)]],
            ],
        })
    }
}

impl SerialChain {
    /// Loads and validates a JSON robot description.
    pub fn from_json(text: &str) -> Result<Self> {
        RobotDescription::from_json(text)?.build()
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        RobotDescription::from_path(path)?.build()
    }

    /// Description of the chain, or `None` if it has custom joints.
    pub fn to_description(&self) -> Option<RobotDescription> {
        let g = self.gravity();
        Some(RobotDescription {
            name: self.name().to_string(),
            gravity: [g.x, g.y, g.z],
            links: self
                .links()
                .iter()
                .map(LinkDescription::from_link)
                .collect::<Option<Vec<_>>>()?,
        })
    }
}
