//! Closed-form Euler-Lagrange model from Gauss's principle of least
//! constraint.
//!
//! With the twist Jacobians `Jᵢ` of every center of mass and
//! `Ψᵢ = blkdiag(𝕀ᵢ, mᵢ I₃)`:
//!
//! ```text
//! M = Σ Jᵢᵀ Ψᵢ Jᵢ
//! C = Σ Jᵢᵀ (S̄(ωᵢ, Ψᵢ) Jᵢ + Ψᵢ J̇ᵢ)
//! g = -Σ J_{D,i}ᵀ vec₃(r₀^{cᵢ} mᵢ g r₀^{cᵢ}*)
//! τ = M q̈ + C q̇ + g
//! ```
//!
//! Sums run over links in ascending order.

use nalgebra::{Cholesky, DMatrix, DVector, Matrix3, Matrix6, Vector3};

use crate::chain::{fkine, KinematicState, SerialChain, TwistJacobians};
use crate::dqalg::Quaternion;
use crate::error::{Error, Result};

/// `S(v)` with `S(v) u = v × u`.
pub fn skew3(v: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::new(
        0.0, -v.z, v.y, //
        v.z, 0.0, -v.x, //
        -v.y, v.x, 0.0,
    )
}

/// `Ψ = blkdiag(𝕀, m I₃)` of one link, at its center of mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralizedInertia {
    pub inertia: Matrix3<f64>,
    pub mass: f64,
}

impl GeneralizedInertia {
    pub fn matrix(&self) -> Matrix6<f64> {
        let mut psi = Matrix6::zeros();
        psi.fixed_view_mut::<3, 3>(0, 0).copy_from(&self.inertia);
        psi.fixed_view_mut::<3, 3>(3, 3)
            .copy_from(&(Matrix3::identity() * self.mass));
        psi
    }
}

/// `S̄(ω, Ψ) = blkdiag(-S(𝕀ω), m S(ω))`.
pub fn skew_bar(omega: &Quaternion, psi: &GeneralizedInertia) -> Matrix6<f64> {
    let w = omega.imag_vec();
    let mut s = Matrix6::zeros();
    s.fixed_view_mut::<3, 3>(0, 0)
        .copy_from(&(-skew3(&(psi.inertia * w))));
    s.fixed_view_mut::<3, 3>(3, 3).copy_from(&(psi.mass * skew3(&w)));
    s
}

/// Canonical Euler-Lagrange terms at one `(q, q̇)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ElModel {
    pub inertia: DMatrix<f64>,
    pub coriolis: DMatrix<f64>,
    pub gravity: DVector<f64>,
}

impl ElModel {
    /// `M q̈ + C q̇ + g`.
    pub fn torques(&self, qdot: &[f64], qddot: &[f64]) -> Vec<f64> {
        let qd = DVector::from_column_slice(qdot);
        let qdd = DVector::from_column_slice(qddot);
        let tau = &self.inertia * qdd + &self.coriolis * qd + &self.gravity;
        tau.iter().copied().collect()
    }
}

fn generalized_inertia(chain: &SerialChain, k: usize) -> GeneralizedInertia {
    let p = &chain.links()[k].params;
    GeneralizedInertia {
        inertia: p.inertia,
        mass: p.mass,
    }
}

fn gravity_from(chain: &SerialChain, state: &KinematicState, jac: &[DMatrix<f64>]) -> DVector<f64> {
    let n = chain.dof();
    let g = Quaternion::from_vec3(&chain.gravity());
    let mut out = DVector::zeros(n);
    for (k, j) in jac.iter().enumerate() {
        let m = chain.links()[k].params.mass;
        let r = state.com_pose(k).inverse().rotation();
        let fg = r.rotate(&(m * g)).imag_vec();
        out -= j.rows(3, 3).transpose() * fg;
    }
    out
}

fn check_qdot(chain: &SerialChain, qdot: &[f64]) -> Result<()> {
    chain.check_joint_vector("qdot", qdot)
}

/// `M`, `C` and `g` at `(q, q̇)`.
pub fn el_model(chain: &SerialChain, q: &[f64], qdot: &[f64]) -> Result<ElModel> {
    check_qdot(chain, qdot)?;
    let state = fkine(chain, q)?;
    let tj = TwistJacobians::new(&state, qdot)?;
    let n = chain.dof();
    let qd = DVector::from_column_slice(qdot);
    let mut m = DMatrix::zeros(n, n);
    let mut c = DMatrix::zeros(n, n);
    for (k, (j, jd)) in tj.jacobians.iter().zip(&tj.derivatives).enumerate() {
        let gi = generalized_inertia(chain, k);
        let psi = gi.matrix();
        let jt = j.transpose();
        let psi_j = psi * j;
        m += &jt * &psi_j;
        let xi = j * &qd;
        let omega = Quaternion::pure(xi[0], xi[1], xi[2]);
        c += &jt * (skew_bar(&omega, &gi) * j + psi * jd);
    }
    Ok(ElModel {
        inertia: m,
        coriolis: c,
        gravity: gravity_from(chain, &state, &tj.jacobians),
    })
}

/// `M(q)`.
pub fn inertia_matrix(chain: &SerialChain, q: &[f64]) -> Result<DMatrix<f64>> {
    Ok(el_model(chain, q, &vec![0.0; chain.dof()])?.inertia)
}

/// `C(q, q̇)`.
pub fn coriolis_matrix(chain: &SerialChain, q: &[f64], qdot: &[f64]) -> Result<DMatrix<f64>> {
    Ok(el_model(chain, q, qdot)?.coriolis)
}

/// `g(q)`: the joint torques that hold the chain still against gravity.
pub fn gravity_vector(chain: &SerialChain, q: &[f64]) -> Result<DVector<f64>> {
    let state = fkine(chain, q)?;
    let jac = (0..chain.dof())
        .map(|k| crate::chain::twist_jacobian(&state, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(gravity_from(chain, &state, &jac))
}

/// `Ṁ = Σ (J̇ᵀ Ψ J + Jᵀ Ψ J̇)`, assembled from the analytic Jacobian derivatives.
pub fn inertia_matrix_derivative(chain: &SerialChain, q: &[f64], qdot: &[f64]) -> Result<DMatrix<f64>> {
    check_qdot(chain, qdot)?;
    let state = fkine(chain, q)?;
    let tj = TwistJacobians::new(&state, qdot)?;
    let n = chain.dof();
    let mut md = DMatrix::zeros(n, n);
    for (k, (j, jd)) in tj.jacobians.iter().zip(&tj.derivatives).enumerate() {
        let psi = generalized_inertia(chain, k).matrix();
        let a = jd.transpose() * psi * j;
        md += &a + a.transpose();
    }
    Ok(md)
}

/// `τ = M q̈ + C q̇ + g`.
pub fn el_inverse_dynamics(chain: &SerialChain, q: &[f64], qdot: &[f64], qddot: &[f64]) -> Result<Vec<f64>> {
    chain.check_joint_vector("qddot", qddot)?;
    Ok(el_model(chain, q, qdot)?.torques(qdot, qddot))
}

/// Largest condition estimate accepted by [`forward_dynamics`], `ε^{-1/2}`.
pub fn max_condition() -> f64 {
    1.0 / f64::EPSILON.sqrt()
}

/// `q̈ = M⁻¹ (τ - C q̇ - g)` through a Cholesky factorization.
///
/// The condition estimate is `(max Lᵢᵢ / min Lᵢᵢ)²`, a lower bound on the
/// 2-norm condition number of `M`.
pub fn forward_dynamics(chain: &SerialChain, q: &[f64], qdot: &[f64], tau: &[f64]) -> Result<Vec<f64>> {
    chain.check_joint_vector("tau", tau)?;
    let model = el_model(chain, q, qdot)?;
    let rhs =
        DVector::from_column_slice(tau) - &model.coriolis * DVector::from_column_slice(qdot) - &model.gravity;
    let chol = Cholesky::new(model.inertia).ok_or(Error::IllConditioned {
        condition: f64::INFINITY,
    })?;
    let diag = chol.l_dirty().diagonal();
    let condition = (diag.max() / diag.min()).powi(2);
    if !condition.is_finite() || condition > max_condition() {
        return Err(Error::IllConditioned { condition });
    }
    Ok(chol.solve(&rhs).iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn skew_examples() {
        let s = skew3(&Vector3::x());
        assert_eq!(s * Vector3::y(), Vector3::z());
        let psi = GeneralizedInertia {
            inertia: Matrix3::new(2.0, 0.1, 0.0, 0.1, 3.0, 0.2, 0.0, 0.2, 1.0),
            mass: 1.5,
        };
        assert_eq!(skew_bar(&Quaternion::ZERO, &psi), Matrix6::zeros());
        let s = skew_bar(&Quaternion::pure(0.3, -1.2, 0.7), &psi);
        assert_eq!(s + s.transpose(), Matrix6::zeros());
    }

    #[test]
    fn pendulum_model() {
        let chain = fixtures::pendulum();
        let m = inertia_matrix(&chain, &[0.3]).unwrap();
        assert!((m[(0, 0)] - 1.0 / 3.0).abs() < 1e-15);
        let g = gravity_vector(&chain, &[0.0]).unwrap();
        assert!((g[0] - 4.905).abs() < 1e-12);
        let qdd = forward_dynamics(&chain, &[0.0], &[0.0], &[4.905]).unwrap();
        assert!(qdd[0].abs() < 1e-12);
    }

    #[test]
    fn zero_gravity_gives_zero_vector() {
        let chain = fixtures::seven_dof().with_gravity(Vector3::zeros());
        let g = gravity_vector(&chain, &[0.4; 7]).unwrap();
        assert_eq!(g, DVector::zeros(7));
    }

    #[test]
    fn zero_velocity_gives_zero_coriolis() {
        let chain = fixtures::seven_dof();
        let c = coriolis_matrix(&chain, &[0.4; 7], &[0.0; 7]).unwrap();
        assert_eq!(c, DMatrix::zeros(7, 7));
    }

    #[test]
    fn non_finite_torque_is_rejected() {
        let chain = fixtures::pendulum();
        assert!(forward_dynamics(&chain, &[0.0], &[0.0], &[f64::NAN]).is_err());
    }

    #[test]
    fn near_singular_inertia_is_reported() {
        use crate::chain::{DhParams, JointModel, Link, LinkParams};
        use crate::dqalg::Pose;
        // two coincident joint axes, the first carrying an almost massless link
        let link = |m: f64| {
            Link::new(
                JointModel::revolute(),
                LinkParams {
                    dh: DhParams::default(),
                    mass: m,
                    com: Pose::from_translation(&Vector3::new(0.3, 0.0, 0.0)),
                    inertia: Matrix3::identity() * m,
                },
            )
        };
        let chain = SerialChain::new("degenerate", vec![link(1e-12), link(1.0)], Vector3::zeros()).unwrap();
        match forward_dynamics(&chain, &[0.0, 0.0], &[0.0, 0.0], &[1.0, 0.0]) {
            Err(Error::IllConditioned { condition }) => assert!(condition > max_condition()),
            other => panic!("unexpected {other:?}"),
        }
    }
}
