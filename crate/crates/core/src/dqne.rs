//! Recursive Newton-Euler inverse dynamics in dual quaternion algebra.
//!
//! The forward sweep propagates the center-of-mass twists `ξ_{0,cᵢ}^{cᵢ}` and
//! their derivatives from the base outwards; the backward sweep accumulates
//! the joint wrenches `ζ_{jᵢ}^{i-1}` from the tip inwards; the projection
//! reads the generalized joint forces off the joint axes.
//!
//! Wrenches carry force in the primary part and torque in the dual part.
//! The projected values are the joint torques (or forces) that realize the
//! requested motion against gravity.

use nalgebra::Vector3;

use crate::chain::{fkine, joint_twist, joint_twist_derivative, JointKind, KinematicState, SerialChain};
use crate::dqalg::{
    m3_apply_with, DualQuaternion, OpCounter, OpTally, PureDualQuaternion, Quaternion, Twist, Uncounted,
    Wrench,
};
use crate::error::{Error, Result};

/// Center-of-mass twists and their time derivatives, each in its own CoM frame.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistSet {
    pub twists: Vec<Twist>,
    pub derivatives: Vec<Twist>,
}

/// Joint wrenches; entry `k` is the wrench transmitted by joint `k + 1`,
/// expressed in frame `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct WrenchSet {
    pub wrenches: Vec<Wrench>,
}

fn check_lengths(state: &KinematicState, qdot: &[f64], qddot: &[f64]) -> Result<()> {
    let n = state.dof();
    for (what, v) in [("qdot", qdot), ("qddot", qddot)] {
        if v.len() != n {
            return Err(Error::Input(format!(
                "{what} has {} entries, chain has {n} joints",
                v.len()
            )));
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::Input(format!("{what} is not finite")));
        }
    }
    Ok(())
}

/// Adjoints and sums of pure elements are pure up to round-off.
fn pure(h: DualQuaternion) -> PureDualQuaternion {
    PureDualQuaternion::from_dq_unchecked(h)
}

/// Forward sweep.
///
/// `ξᵢ = Ad(x_{c_{i-1}}^{cᵢ}) ξ_{i-1} + Ad(x_{i-1}^{cᵢ}) ξ_{i-1,cᵢ}^{i-1}` and
/// `ξ̇ᵢ = Ad(x_{c_{i-1}}^{cᵢ}) ξ̇_{i-1} + Ad(x_{i-1}^{cᵢ}) ξ̇_{i-1,cᵢ}^{i-1}
///       + ξ_{cᵢ,c_{i-1}}^{cᵢ} × Ad(x_{c_{i-1}}^{cᵢ}) ξ_{i-1}`.
pub fn forward_recursion(
    chain: &SerialChain,
    state: &KinematicState,
    qdot: &[f64],
    qddot: &[f64],
) -> Result<TwistSet> {
    forward_recursion_with(chain, state, qdot, qddot, &mut Uncounted, &mut Uncounted)
}

/// [`forward_recursion`] with the twist and twist-derivative arithmetic
/// routed through separate counters. Generating the joint twists is not
/// counted.
pub fn forward_recursion_with<C: OpCounter, D: OpCounter>(
    chain: &SerialChain,
    state: &KinematicState,
    qdot: &[f64],
    qddot: &[f64],
    tc: &mut C,
    dc: &mut D,
) -> Result<TwistSet> {
    check_lengths(state, qdot, qddot)?;
    let n = state.dof();
    let mut twists = Vec::with_capacity(n);
    let mut derivatives = Vec::with_capacity(n);
    let mut xi = DualQuaternion::ZERO;
    let mut dxi = DualQuaternion::ZERO;
    for (k, link) in chain.links().iter().enumerate() {
        let q = state.q()[k];
        let joint = joint_twist(&link.joint, q, qdot[k])?.into_dq();
        let djoint = joint_twist_derivative(&link.joint, q, qdot[k], qddot[k])?.into_dq();
        let step = state.com_step(k);
        let to_com = state.com_local(k).inverse();

        let a = step.as_dq().adjoint_with(&xi, tc);
        let b = to_com.as_dq().adjoint_with(&joint, tc);
        let next = a.add_with(&b, tc);

        let da = step.as_dq().adjoint_with(&dxi, dc);
        let db = to_com.as_dq().adjoint_with(&djoint, dc);
        let rel = b.scale_with(-1.0, dc);
        let cross = rel.cross_with(&a, dc);
        let dnext = da.add_with(&db, dc).add_with(&cross, dc);

        twists.push(pure(next));
        derivatives.push(pure(dnext));
        xi = pure(next).into_dq();
        dxi = pure(dnext).into_dq();
    }
    Ok(TwistSet { twists, derivatives })
}

/// Gravity `g^{cᵢ}` in the CoM frame of link `k + 1`.
fn gravity_in_com<C: OpCounter>(state: &KinematicState, k: usize, g: &Quaternion, c: &mut C) -> Quaternion {
    let r_inv = state.com_pose(k).inverse().rotation();
    r_inv.adjoint_with(g, c)
}

/// Backward sweep.
///
/// For `i = n…1`: `ζ_cᵢ = f + ε τ - mᵢ g^{cᵢ}` with
/// `f = mᵢ (D(ξ̇) + P(ξ) × D(ξ))`, `τ = M₃(𝕀ᵢ) P(ξ̇) + P(ξ) × M₃(𝕀ᵢ) P(ξ)`,
/// then `Γᵢ = Ad(x_{cᵢ}^{i-1}) ζ_cᵢ + Ad(x_i^{i-1}) Γ_{i+1}`.
///
/// `external` is a wrench applied by the last link on its environment,
/// expressed in frame `n`; it enters as `Γ_{n+1}`.
pub fn backward_recursion(
    chain: &SerialChain,
    state: &KinematicState,
    twists: &TwistSet,
    external: Option<&Wrench>,
) -> Result<WrenchSet> {
    backward_recursion_with(chain, state, twists, external, &mut Uncounted)
}

pub fn backward_recursion_with<C: OpCounter>(
    chain: &SerialChain,
    state: &KinematicState,
    twists: &TwistSet,
    external: Option<&Wrench>,
    c: &mut C,
) -> Result<WrenchSet> {
    let n = state.dof();
    if twists.twists.len() != n || twists.derivatives.len() != n {
        return Err(Error::Input(format!(
            "twist set has {} entries, chain has {n} links",
            twists.twists.len()
        )));
    }
    let g = Quaternion::from_vec3(&chain.gravity());
    let mut wrenches = vec![Wrench::ZERO; n];
    let mut outer = external.map_or(DualQuaternion::ZERO, |w| *w.as_dq());
    for k in (0..n).rev() {
        let p = &chain.links()[k].params;
        let (xi_p, xi_d) = (twists.twists[k].primary(), twists.twists[k].dual());
        let (dxi_p, dxi_d) = (twists.derivatives[k].primary(), twists.derivatives[k].dual());

        let f = dxi_d
            .add_with(&xi_p.cross_with(&xi_d, c), c)
            .scale_with(p.mass, c);
        let i_omega = m3_apply_with(&p.inertia, &xi_p, c);
        let tau = m3_apply_with(&p.inertia, &dxi_p, c).add_with(&xi_p.cross_with(&i_omega, c), c);
        let g_c = gravity_in_com(state, k, &g, c);
        let f = f.sub_with(&g_c.scale_with(p.mass, c), c);
        let zeta = DualQuaternion::new(f, tau);

        let own = state.com_local(k).as_dq().adjoint_with(&zeta, c);
        let passed = state.joint_local(k).as_dq().adjoint_with(&outer, c);
        wrenches[k] = pure(own.add_with(&passed, c));
        outer = wrenches[k].into_dq();
    }
    Ok(WrenchSet { wrenches })
}

/// Joint wrenches for the motion `(q, q̇, q̈)`.
pub fn newton_euler(
    chain: &SerialChain,
    q: &[f64],
    qdot: &[f64],
    qddot: &[f64],
    external: Option<&Wrench>,
) -> Result<WrenchSet> {
    let state = fkine(chain, q)?;
    let twists = forward_recursion(chain, &state, qdot, qddot)?;
    backward_recursion(chain, &state, &twists, external)
}

/// Generalized joint forces: `D(⟨Γᵢ, l⟩)` for revolute joints,
/// `P(⟨Γᵢ, l⟩)` for prismatic joints, the joint's own projection for custom
/// joints.
pub fn project_wrenches(chain: &SerialChain, q: &[f64], wrenches: &WrenchSet) -> Result<Vec<f64>> {
    chain.check_joint_vector("q", q)?;
    if wrenches.wrenches.len() != chain.dof() {
        return Err(Error::Input(format!(
            "wrench set has {} entries, chain has {} joints",
            wrenches.wrenches.len(),
            chain.dof()
        )));
    }
    chain
        .links()
        .iter()
        .zip(&wrenches.wrenches)
        .zip(q)
        .enumerate()
        .map(|(k, ((link, w), &qi))| {
            let l = PureDualQuaternion::from_primary(&link.joint.axis());
            match link.joint.kind() {
                JointKind::Revolute => Ok(w.dot(&l).dual),
                JointKind::Prismatic => Ok(w.dot(&l).primary),
                JointKind::Custom(j) => j
                    .project(qi, w)
                    .ok_or_else(|| Error::Config(format!("custom joint {} declares no projection", k + 1))),
            }
        })
        .collect()
}

/// Joint torques/forces `τ = N(q, q̇, q̈)`.
pub fn inverse_dynamics(chain: &SerialChain, q: &[f64], qdot: &[f64], qddot: &[f64]) -> Result<Vec<f64>> {
    let w = newton_euler(chain, q, qdot, qddot, None)?;
    project_wrenches(chain, q, &w)
}

/// Operation counts of one Newton-Euler evaluation, per sweep.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepCounts {
    pub twists: OpTally,
    pub twist_derivatives: OpTally,
    pub wrenches: OpTally,
}

impl SweepCounts {
    pub fn total(&self) -> OpTally {
        self.twists + self.twist_derivatives + self.wrenches
    }
}

/// [`inverse_dynamics`] with every sweep counted.
pub fn inverse_dynamics_counted(
    chain: &SerialChain,
    q: &[f64],
    qdot: &[f64],
    qddot: &[f64],
) -> Result<(Vec<f64>, SweepCounts)> {
    let state = fkine(chain, q)?;
    let mut counts = SweepCounts::default();
    let twists = forward_recursion_with(
        chain,
        &state,
        qdot,
        qddot,
        &mut counts.twists,
        &mut counts.twist_derivatives,
    )?;
    let w = backward_recursion_with(chain, &state, &twists, None, &mut counts.wrenches)?;
    Ok((project_wrenches(chain, q, &w)?, counts))
}

/// Linear acceleration of the center of mass in its own frame,
/// `D(ξ̇) + P(ξ) × D(ξ)`.
pub fn com_linear_acceleration(twist: &Twist, derivative: &Twist) -> Vector3<f64> {
    let (w, v) = (twist.primary_vec(), twist.dual_vec());
    derivative.dual_vec() + w.cross(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn static_pendulum_holds_against_gravity() {
        let chain = fixtures::pendulum();
        let tau = inverse_dynamics(&chain, &[0.0], &[0.0], &[0.0]).unwrap();
        assert!((tau[0] - 4.905).abs() < 1e-12);
        let tau = inverse_dynamics(&chain, &[0.6], &[0.0], &[0.0]).unwrap();
        assert!((tau[0] - 4.905 * 0.6f64.cos()).abs() < 1e-12);
    }

    #[test]
    fn zero_gravity_and_motion_give_zero_wrenches() {
        let chain = fixtures::seven_dof().with_gravity(Vector3::zeros());
        let q = [0.2, 0.4, -0.1, 1.0, 0.3, -0.9, 0.5];
        let w = newton_euler(&chain, &q, &[0.0; 7], &[0.0; 7], None).unwrap();
        assert!(w.wrenches.iter().all(|w| w.max_abs_diff(&Wrench::ZERO) == 0.0));
    }

    #[test]
    fn projection_examples() {
        let chain = fixtures::pendulum();
        let w = WrenchSet {
            wrenches: vec![Wrench::from_parts([2.0, 0.0, 0.0], [0.0, 0.0, 3.0])],
        };
        assert_eq!(project_wrenches(&chain, &[0.0], &w).unwrap(), vec![3.0]);

        let mut p = chain.links()[0].clone();
        p.joint = crate::chain::JointModel::prismatic()
            .with_axis(Vector3::x())
            .unwrap();
        let slider = SerialChain::new("slider", vec![p], Vector3::zeros()).unwrap();
        assert_eq!(project_wrenches(&slider, &[0.0], &w).unwrap(), vec![2.0]);
        let zero = WrenchSet {
            wrenches: vec![Wrench::ZERO],
        };
        assert_eq!(project_wrenches(&slider, &[0.0], &zero).unwrap(), vec![0.0]);
    }

    #[test]
    fn one_link_twist_in_com_frame() {
        let chain = fixtures::pendulum();
        let state = fkine(&chain, &[0.0]).unwrap();
        let t = forward_recursion(&chain, &state, &[2.0], &[0.0]).unwrap();
        // ω = 2k̂, CoM at 0.5î moves with ω × p = ĵ
        let expected = Twist::from_parts([0.0, 0.0, 2.0], [0.0, 1.0, 0.0]);
        assert!(t.twists[0].max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn zero_external_wrench_equals_none() {
        let chain = fixtures::seven_dof();
        let q = [0.2, 0.4, -0.1, 1.0, 0.3, -0.9, 0.5];
        let qd = [0.1, -0.3, 0.5, 0.2, -1.0, 0.4, 0.7];
        let qdd = [1.0, 0.5, -0.2, 0.3, 0.0, -0.4, 0.9];
        let a = newton_euler(&chain, &q, &qd, &qdd, None).unwrap();
        let b = newton_euler(&chain, &q, &qd, &qdd, Some(&Wrench::ZERO)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sweep_counts_are_linear_in_n() {
        let chain = fixtures::seven_dof();
        let (_, c) = inverse_dynamics_counted(&chain, &[0.1; 7], &[0.2; 7], &[0.3; 7]).unwrap();
        assert_eq!(
            c.twists,
            OpTally {
                mults: 204 * 7,
                adds: 168 * 7
            }
        );
        assert_eq!(
            c.twist_derivatives,
            OpTally {
                mults: 316 * 7,
                adds: 264 * 7
            }
        );
        assert_eq!(
            c.wrenches,
            OpTally {
                mults: (302 + 35) * 7,
                adds: (248 + 24) * 7
            }
        );
    }

    #[test]
    fn mismatched_lengths_are_rejected() {
        let chain = fixtures::two_link();
        assert!(inverse_dynamics(&chain, &[0.0, 0.0], &[0.0], &[0.0, 0.0]).is_err());
        assert!(inverse_dynamics(&chain, &[0.0, 0.0], &[0.0, f64::NAN], &[0.0, 0.0]).is_err());
    }
}
