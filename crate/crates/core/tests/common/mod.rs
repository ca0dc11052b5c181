#![allow(dead_code)]

use dqdyn::{DualQuaternion, Pose, Quaternion, Twist};
use nalgebra::Vector3;

/// Smooth pose `x(t)`: rotation by `θ(t)` about a fixed tilted axis, then
/// translation `p(t)`. Returns the pose and its world twist `ω + ε(ṗ + p × ω)`.
pub fn moving_pose(t: f64) -> (Pose, Twist) {
    let axis = Vector3::new(1.0, -2.0, 0.5).normalize();
    let theta = 0.7 + 1.3 * t + 0.8 * (2.0 * t).sin();
    let theta_dot = 1.3 + 1.6 * (2.0 * t).cos();
    let p = Vector3::new((1.5 * t).sin(), t * t - 0.3, (0.9 * t).cos());
    let p_dot = Vector3::new(1.5 * (1.5 * t).cos(), 2.0 * t, -0.9 * (0.9 * t).sin());
    let r = Quaternion::from_axis_angle(&axis, theta);
    let x = Pose::from_rotation_translation(r, &p).unwrap();
    let w = theta_dot * axis;
    (x, Twist::from_vectors(&w, &(p_dot + p.cross(&w))))
}

/// A smooth pure element `ξ'(t)` and its derivative.
pub fn moving_twist(t: f64) -> (Twist, Twist) {
    let v = Twist::from_parts(
        [(3.0 * t).sin(), t * t, (2.0 * t).cos()],
        [t.exp(), -(1.7 * t).sin(), 0.4 * t * t * t],
    );
    let d = Twist::from_parts(
        [3.0 * (3.0 * t).cos(), 2.0 * t, -2.0 * (2.0 * t).sin()],
        [t.exp(), -1.7 * (1.7 * t).cos(), 1.2 * t * t],
    );
    (v, d)
}

/// Largest error of the central difference of `Ad(x(t)) ξ'(t)` against
/// `Ad(x) ξ̇' + ξ × Ad(x) ξ'`, for each step size.
pub fn adjoint_rate_errors(t: f64, steps: &[f64]) -> Vec<f64> {
    let (x, xi) = moving_pose(t);
    let (s, ds) = moving_twist(t);
    let exact = x.adjoint(&ds) + xi.cross(&x.adjoint(&s));
    steps
        .iter()
        .map(|&h| {
            let f = |t: f64| {
                let (x, _) = moving_pose(t);
                x.adjoint(&moving_twist(t).0)
            };
            let fd = (f(t + h) - f(t - h)) * (0.5 / h);
            fd.max_abs_diff(&exact)
        })
        .collect()
}

/// Least-squares slope of `log e` against `log h`.
pub fn convergence_order(steps: &[f64], errors: &[f64]) -> f64 {
    let xs: Vec<f64> = steps.iter().map(|h| h.ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

pub fn dq(c: [f64; 8]) -> DualQuaternion {
    DualQuaternion::new(
        Quaternion::new(c[0], c[1], c[2], c[3]),
        Quaternion::new(c[4], c[5], c[6], c[7]),
    )
}

pub mod tables {
    use dqdyn::costmodel::*;
    use num_rational::Ratio;

    fn p(c: &[(i64, i64)]) -> Poly {
        Poly::from_coeffs(c.iter().map(|&(n, d)| Ratio::new(n, d)).collect())
    }

    fn ints(m: &[i64], a: &[i64]) -> CostPolynomial {
        CostPolynomial::from_ints(m, a)
    }

    fn rat(m: &[(i64, i64)], a: &[(i64, i64)]) -> CostPolynomial {
        CostPolynomial::new(p(m), p(a))
    }

    fn k(m: i64, a: i64) -> CostPolynomial {
        CostPolynomial::constant(OpCost::new(m, a))
    }

    /// Every cost row as `(label, computed, expected)`. Coefficients
    /// are in ascending powers of `n` (or `i` for per-link rows).
    pub fn rows() -> Vec<(&'static str, CostPolynomial, CostPolynomial)> {
        let w = wrench_intermediate();
        let ne = ne_polynomials();
        let link = gp_link_polynomials();
        let gp = gp_polynomials();
        let classic = classic_polynomials();
        let prim = |x: Primitive| CostPolynomial::constant(x.cost());
        use Primitive::*;
        vec![
            ("M3(I)a", prim(QuatM3), k(9, 6)),
            ("lambda a", prim(QuatScale), k(4, 0)),
            ("a*", prim(QuatConj), k(3, 0)),
            ("a + b", prim(QuatAdd), k(0, 4)),
            ("a b", prim(QuatMul), k(16, 12)),
            ("a x b", prim(QuatCross), k(36, 28)),
            ("Ad(a) b", prim(QuatAdjoint), k(35, 24)),
            ("lambda A", prim(DqScale), k(8, 0)),
            ("A*", prim(DqConj), k(6, 0)),
            ("A + B", prim(DqAdd), k(0, 8)),
            ("A B", prim(DqMul), k(48, 40)),
            ("Ad(A) B", prim(DqAdjoint), k(102, 80)),
            ("A x B", prim(DqCross), k(104, 88)),
            ("S(c)", prim(Skew3), k(3, 0)),
            ("S_bar", prim(SkewBar), k(18, 6)),
            ("f", w.force.into(), k(40, 32)),
            ("tau", w.torque.into(), k(54, 44)),
            ("varsigma", w.inertial.into(), k(94, 76)),
            ("zeta", w.wrench.into(), k(98, 80)),
            ("fkine", ne.fkine, ints(&[-48, 60], &[-40, 44])),
            ("twists", ne.twists, ints(&[0, 204], &[0, 168])),
            (
                "twist derivatives",
                ne.twist_derivatives,
                ints(&[0, 316], &[0, 264]),
            ),
            ("wrenches", ne.wrenches, ints(&[0, 302], &[0, 248])),
            ("J_x", link.pose_jacobian, ints(&[-48, 189], &[-40, 142])),
            (
                "Jdot_x",
                link.pose_jacobian_derivative,
                ints(&[0, 312], &[-8, 268]),
            ),
            ("J_xi_i", link.twist_jacobian, ints(&[-40, 237], &[-40, 184])),
            (
                "Jdot_xi_i",
                link.twist_jacobian_derivative,
                ints(&[8, 408], &[-8, 358]),
            ),
            (
                "J_xi",
                gp.twist_jacobians,
                rat(&[(0, 1), (157, 2), (237, 2)], &[(0, 1), (52, 1), (92, 1)]),
            ),
            (
                "Jdot_xi",
                gp.twist_jacobian_derivatives,
                ints(&[0, 212, 204], &[0, 171, 179]),
            ),
            ("M_i", link.inertia, ints(&[0, 36, 6], &[0, 30, 5])),
            ("C_i", link.coriolis, ints(&[18, 72, 6], &[6, 66, 5])),
            ("g_i", link.gravity, ints(&[35, 3], &[24, 2])),
            (
                "M_GP",
                gp.inertia,
                rat(
                    &[(0, 1), (19, 1), (21, 1), (2, 1)],
                    &[(0, 1), (95, 6), (33, 2), (8, 3)],
                ),
            ),
            (
                "C_GP",
                gp.coriolis,
                rat(
                    &[(0, 1), (55, 1), (39, 1), (2, 1)],
                    &[(0, 1), (239, 6), (69, 2), (8, 3)],
                ),
            ),
            (
                "g_GP",
                gp.gravity,
                rat(&[(0, 1), (73, 2), (3, 2)], &[(0, 1), (24, 1), (2, 1)]),
            ),
            ("NE_DQ", ne.total, ints(&[-48, 882], &[-40, 724])),
            ("NE classic", classic.newton_euler, ints(&[-48, 150], &[-48, 131])),
            (
                "GP_DQ",
                gp.total,
                rat(
                    &[(0, 1), (401, 1), (386, 1), (4, 1)],
                    &[(0, 1), (908, 3), (326, 1), (16, 3)],
                ),
            ),
            (
                "EL classic",
                classic.euler_lagrange,
                ints(&[-277, 412], &[-201, 320]),
            ),
        ]
    }
}
