use nalgebra::DMatrix;

use crate::dqalg::{hamilton_plus_8, selector_6x8, DualQuaternion, Pose, Twist};
use crate::error::{Error, Result};

use super::KinematicState;

/// Base-frame twists of every frame: `Ξᵢ = Σ_{m≤i} q̇ₘ jₘ`, `Ξ₀ = 0`.
fn frame_twists(state: &KinematicState, qdot: &[f64]) -> Vec<Twist> {
    let mut xi = Vec::with_capacity(qdot.len() + 1);
    xi.push(Twist::ZERO);
    for (k, &qd) in qdot.iter().enumerate() {
        let next = xi[k] + qd * state.world_screw(k);
        xi.push(next);
    }
    xi
}

/// Time derivatives of the base-frame joint screws,
/// `j̇ₖ = Ad(x_{k-1}^0)(q̇ₖ s'ₖ) + Ξ_{k-1} × jₖ`.
fn screw_derivatives(state: &KinematicState, qdot: &[f64], xi: &[Twist]) -> Vec<Twist> {
    (0..qdot.len())
        .map(|k| {
            state.frame(k).adjoint(&(qdot[k] * state.screw_rate(k))) + xi[k].cross(&state.world_screw(k))
        })
        .collect()
}

fn check_qdot(state: &KinematicState, qdot: &[f64]) -> Result<()> {
    if qdot.len() != state.dof() {
        return Err(Error::Input(format!(
            "qdot has {} entries, chain has {} joints",
            qdot.len(),
            state.dof()
        )));
    }
    if qdot.iter().any(|v| !v.is_finite()) {
        return Err(Error::Input("qdot is not finite".into()));
    }
    Ok(())
}

fn check_link(state: &KinematicState, k: usize) -> Result<()> {
    if k >= state.dof() {
        return Err(Error::Input(format!(
            "link index {k} out of range for {} links",
            state.dof()
        )));
    }
    Ok(())
}

fn set_column(m: &mut DMatrix<f64>, col: usize, h: &DualQuaternion) {
    m.column_mut(col).copy_from(&(0.5 * h.vec8()));
}

/// Pose Jacobian of the center of mass of link `k + 1`, an `8 × (k + 1)`
/// matrix with `vec₈(ẋ_{cᵢ}^0) = J q̇[..=k]`.
pub fn pose_jacobian(state: &KinematicState, k: usize) -> Result<DMatrix<f64>> {
    check_link(state, k)?;
    let x = *state.com_pose(k).as_dq();
    let mut j = DMatrix::zeros(8, k + 1);
    for m in 0..=k {
        set_column(&mut j, m, &(*state.world_screw(m).as_dq() * x));
    }
    Ok(j)
}

fn pose_jacobian_derivative_with(
    state: &KinematicState,
    k: usize,
    xi: &[Twist],
    dj: &[Twist],
) -> DMatrix<f64> {
    let x = *state.com_pose(k).as_dq();
    let xdot = 0.5 * (*xi[k + 1].as_dq() * x);
    let mut jd = DMatrix::zeros(8, k + 1);
    for (m, d) in dj.iter().enumerate().take(k + 1) {
        let col = *d.as_dq() * x + *state.world_screw(m).as_dq() * xdot;
        set_column(&mut jd, m, &col);
    }
    jd
}

/// Time derivative of [`pose_jacobian`] along the joint velocity `qdot`.
pub fn pose_jacobian_derivative(state: &KinematicState, qdot: &[f64], k: usize) -> Result<DMatrix<f64>> {
    check_link(state, k)?;
    check_qdot(state, qdot)?;
    let xi = frame_twists(state, qdot);
    let dj = screw_derivatives(state, qdot, &xi);
    Ok(pose_jacobian_derivative_with(state, k, &xi, &dj))
}

/// `2 Ī H⁺₈(x̄) J`, padded with zero columns to `n`.
fn to_twist_jacobian(x_bar: &Pose, jx: &DMatrix<f64>, n: usize) -> DMatrix<f64> {
    let h = hamilton_plus_8(x_bar.as_dq());
    let left = 2.0 * selector_6x8() * h;
    let mut out = DMatrix::zeros(6, n);
    let cols = jx.ncols();
    out.columns_mut(0, cols).copy_from(&(left * jx));
    out
}

/// Twist Jacobian of link `k + 1`, a `6 × n` matrix mapping `q̇` to
/// `vec₆(ξ_{0,cᵢ}^{cᵢ})`, the center-of-mass twist in its own frame.
pub fn twist_jacobian(state: &KinematicState, k: usize) -> Result<DMatrix<f64>> {
    let jx = pose_jacobian(state, k)?;
    Ok(to_twist_jacobian(&state.com_pose(k).inverse(), &jx, state.dof()))
}

/// Time derivative of [`twist_jacobian`] along `qdot`.
pub fn twist_jacobian_derivative(state: &KinematicState, qdot: &[f64], k: usize) -> Result<DMatrix<f64>> {
    check_link(state, k)?;
    check_qdot(state, qdot)?;
    Ok(TwistJacobians::new(state, qdot)?.derivatives.swap_remove(k))
}

/// Twist Jacobians and their time derivatives for every link.
#[derive(Debug, Clone)]
pub struct TwistJacobians {
    /// `J_{ξ,i}`, `6 × n` each.
    pub jacobians: Vec<DMatrix<f64>>,
    /// `J̇_{ξ,i}`, `6 × n` each.
    pub derivatives: Vec<DMatrix<f64>>,
}

impl TwistJacobians {
    pub fn new(state: &KinematicState, qdot: &[f64]) -> Result<Self> {
        check_qdot(state, qdot)?;
        let n = state.dof();
        let xi = frame_twists(state, qdot);
        let dj = screw_derivatives(state, qdot, &xi);
        let sel = 2.0 * selector_6x8();
        let mut jacobians = Vec::with_capacity(n);
        let mut derivatives = Vec::with_capacity(n);
        for k in 0..n {
            let jx = pose_jacobian(state, k)?;
            let jxd = pose_jacobian_derivative_with(state, k, &xi, &dj);
            let x = *state.com_pose(k).as_dq();
            let xdot = 0.5 * (*xi[k + 1].as_dq() * x);
            let h = hamilton_plus_8(&x.conj());
            let hd = hamilton_plus_8(&xdot.conj());
            let mut j = DMatrix::zeros(6, n);
            j.columns_mut(0, k + 1).copy_from(&(sel * h * &jx));
            let mut jd = DMatrix::zeros(6, n);
            jd.columns_mut(0, k + 1).copy_from(&(sel * (hd * &jx + h * &jxd)));
            jacobians.push(j);
            derivatives.push(jd);
        }
        Ok(Self {
            jacobians,
            derivatives,
        })
    }
}
