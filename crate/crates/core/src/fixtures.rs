//! Reference chains used by the tests, the CLI and the benchmarks.

use std::f64::consts::FRAC_PI_2;

use nalgebra::{Matrix3, Vector3};
use rand::Rng;

use crate::chain::{DhParams, JointModel, Link, LinkParams, SerialChain};
use crate::dqalg::{Pose, Quaternion};

/// Single revolute link about z, unit mass, CoM at `(0.5, 0, 0)`,
/// `I_zz = 1/12`, gravity `-9.81 ĵ`.
pub fn pendulum() -> SerialChain {
    let link = Link::new(
        JointModel::revolute(),
        LinkParams {
            dh: DhParams::default(),
            mass: 1.0,
            com: Pose::from_translation(&Vector3::new(0.5, 0.0, 0.0)),
            inertia: Matrix3::from_diagonal(&Vector3::new(1e-3, 1.0 / 12.0, 1.0 / 12.0)),
        },
    );
    SerialChain::new("pendulum", vec![link], Vector3::new(0.0, -9.81, 0.0))
        .expect("pendulum fixture is valid")
}

/// Planar 2R arm moving in the xy-plane with gravity `-g ĵ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLinkParams {
    pub l1: f64,
    pub l2: f64,
    /// Distance from joint `i` to the center of mass of link `i`.
    pub lc1: f64,
    pub lc2: f64,
    pub m1: f64,
    pub m2: f64,
    /// Inertia about the CoM, normal to the plane.
    pub i1: f64,
    pub i2: f64,
    pub g: f64,
}

impl Default for TwoLinkParams {
    fn default() -> Self {
        Self {
            l1: 1.0,
            l2: 0.8,
            lc1: 0.5,
            lc2: 0.35,
            m1: 2.0,
            m2: 1.5,
            i1: 0.2,
            i2: 0.1,
            g: 9.81,
        }
    }
}

impl TwoLinkParams {
    pub fn chain(&self) -> SerialChain {
        let link = |l: f64, lc: f64, m: f64, izz: f64| {
            Link::new(
                JointModel::revolute(),
                LinkParams {
                    dh: DhParams::new(0.0, 0.0, l, 0.0),
                    mass: m,
                    com: Pose::from_translation(&Vector3::new(lc - l, 0.0, 0.0)),
                    inertia: Matrix3::from_diagonal(&Vector3::new(0.5 * izz, 0.7 * izz, izz)),
                },
            )
        };
        SerialChain::new(
            "twolink",
            vec![
                link(self.l1, self.lc1, self.m1, self.i1),
                link(self.l2, self.lc2, self.m2, self.i2),
            ],
            Vector3::new(0.0, -self.g, 0.0),
        )
        .expect("two-link fixture is valid")
    }
}

/// Planar 2R arm with [`TwoLinkParams::default`].
pub fn two_link() -> SerialChain {
    TwoLinkParams::default().chain()
}

fn symmetric(d: [f64; 3], off: [f64; 3]) -> Matrix3<f64> {
    Matrix3::new(
        d[0], off[0], off[1], //
        off[0], d[1], off[2], //
        off[1], off[2], d[2],
    )
}

/// Synthetic seven-joint arm with the kinematic layout of a common
/// lightweight manipulator (alternating ±90° twists) and made-up but
/// physically valid inertial data. Gravity `-9.81 k̂`.
pub fn seven_dof() -> SerialChain {
    let d = [0.34, 0.0, 0.4, 0.0, 0.4, 0.0, 0.126];
    let alpha = [
        -FRAC_PI_2, FRAC_PI_2, FRAC_PI_2, -FRAC_PI_2, -FRAC_PI_2, FRAC_PI_2, 0.0,
    ];
    let mass = [3.95, 4.5, 2.45, 2.61, 3.41, 3.39, 0.35];
    let com = [
        [0.0, -0.03, 0.12],
        [0.0003, 0.059, 0.042],
        [0.0, 0.03, 0.13],
        [0.0, 0.067, 0.034],
        [0.0001, 0.021, 0.076],
        [0.0, 0.0006, 0.0004],
        [0.0, 0.0, 0.02],
    ];
    let diag = [
        [0.0455, 0.0455, 0.0091],
        [0.0505, 0.0485, 0.0121],
        [0.0385, 0.0381, 0.0097],
        [0.0302, 0.0292, 0.0083],
        [0.0281, 0.0269, 0.0072],
        [0.0102, 0.0098, 0.0061],
        [0.0011, 0.0012, 0.0008],
    ];
    let off = [
        [0.0, 0.0, 0.0012],
        [0.0007, -0.0003, 0.0],
        [0.0, 0.0011, -0.0004],
        [-0.0009, 0.0, 0.0002],
        [0.0003, 0.0005, 0.0],
        [0.0, -0.0002, 0.0004],
        [0.0, 0.0, 0.0001],
    ];
    let tilt = [0.0, 0.3, 0.0, -0.2, 0.0, 0.5, 0.0];
    let links = (0..7)
        .map(|k| {
            let r = Quaternion::from_axis_angle(&Vector3::new(1.0, 1.0, 0.0).normalize(), tilt[k]);
            Link::new(
                JointModel::revolute(),
                LinkParams {
                    dh: DhParams::new(0.0, d[k], 0.0, alpha[k]),
                    mass: mass[k],
                    com: Pose::from_rotation_translation(r, &Vector3::from(com[k])).expect("unit rotation"),
                    inertia: symmetric(diag[k], off[k]),
                },
            )
        })
        .collect();
    SerialChain::new("seven", links, Vector3::new(0.0, 0.0, -9.81)).expect("seven-dof fixture is valid")
}

/// Random valid chain with `n` links: mixed revolute and prismatic joints,
/// random unit axes, DH rows, CoM poses, masses and inertias.
pub fn random_chain<R: Rng>(n: usize, rng: &mut R) -> SerialChain {
    let unit = |rng: &mut R| loop {
        let v = Vector3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        if v.norm() > 0.1 {
            break v.normalize();
        }
    };
    let links = (0..n)
        .map(|_| {
            let axis = unit(rng);
            let joint = if rng.random_bool(0.75) {
                JointModel::revolute()
            } else {
                JointModel::prismatic()
            };
            let joint = joint.with_axis(axis).expect("unit axis");
            let dh = DhParams::new(
                rng.random_range(-3.0..3.0),
                rng.random_range(-0.5..0.5),
                rng.random_range(-0.5..0.5),
                rng.random_range(-3.0..3.0),
            );
            let r = Quaternion::from_axis_angle(&unit(rng), rng.random_range(-3.0..3.0));
            let p = Vector3::new(
                rng.random_range(-0.3..0.3),
                rng.random_range(-0.3..0.3),
                rng.random_range(-0.3..0.3),
            );
            let a = Matrix3::from_fn(|_, _| rng.random_range(-0.3..0.3));
            let inertia = a * a.transpose() + Matrix3::identity() * rng.random_range(0.01..0.1);
            Link::new(
                joint,
                LinkParams {
                    dh,
                    mass: rng.random_range(0.2..5.0),
                    com: Pose::from_rotation_translation(r, &p).expect("unit rotation"),
                    inertia,
                },
            )
        })
        .collect();
    let g = Vector3::new(
        rng.random_range(-3.0..3.0),
        rng.random_range(-3.0..3.0),
        rng.random_range(-10.0..10.0),
    );
    SerialChain::new("random", links, g).expect("random chain is valid")
}

/// The named built-in chains.
pub fn builtin(name: &str) -> Option<SerialChain> {
    match name {
        "pendulum" => Some(pendulum()),
        "twolink" => Some(two_link()),
        "seven" => Some(seven_dof()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_chains_are_valid() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in 1..=7 {
            assert_eq!(random_chain(n, &mut rng).dof(), n);
        }
    }

    #[test]
    fn builtins_resolve() {
        assert_eq!(builtin("seven").unwrap().dof(), 7);
        assert_eq!(builtin("twolink").unwrap().dof(), 2);
        assert!(builtin("nope").is_none());
    }
}
