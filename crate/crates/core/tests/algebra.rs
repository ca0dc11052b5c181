mod common;

use dqdyn::dqalg::{hamilton_plus_8, m3_apply, Matrix3};
use dqdyn::{DualQuaternion, Pose, Quaternion, Twist};
use nalgebra::Vector3;
use proptest::prelude::*;

fn vec3(r: f64) -> impl Strategy<Value = Vector3<f64>> {
    prop::array::uniform3(-r..r).prop_map(Vector3::from)
}

fn pose() -> impl Strategy<Value = Pose> {
    (vec3(1.0), -4.0..4.0f64, vec3(3.0)).prop_map(|(axis, angle, p)| {
        let axis = if axis.norm() < 1e-3 {
            Vector3::z()
        } else {
            axis.normalize()
        };
        Pose::from_rotation_translation(Quaternion::from_axis_angle(&axis, angle), &p).unwrap()
    })
}

fn twist() -> impl Strategy<Value = Twist> {
    (vec3(5.0), vec3(5.0)).prop_map(|(a, b)| Twist::from_vectors(&a, &b))
}

fn any_dq() -> impl Strategy<Value = DualQuaternion> {
    prop::array::uniform8(-3.0..3.0f64).prop_map(common::dq)
}

proptest! {
    #[test]
    fn adjoint_of_inverse_undoes_adjoint(x in pose(), h in twist()) {
        let back = x.inverse().adjoint(&x.adjoint(&h));
        prop_assert!(back.max_abs_diff(&h) < 1e-12);
    }

    #[test]
    fn adjoint_preserves_primary_norm(x in pose(), h in twist()) {
        let a = x.adjoint(&h);
        prop_assert!((a.primary_vec().norm() - h.primary_vec().norm()).abs() < 1e-12);
    }

    #[test]
    fn adjoint_is_a_homomorphism(x in pose(), y in pose(), h in twist()) {
        let lhs = (x * y).adjoint(&h);
        let rhs = x.adjoint(&y.adjoint(&h));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-11);
    }

    #[test]
    fn product_of_poses_stays_unit(x in pose(), y in pose()) {
        prop_assert!((*x.as_dq() * *y.as_dq()).unit_defect() < 1e-12);
    }

    #[test]
    fn conjugate_reverses_products(a in any_dq(), b in any_dq()) {
        prop_assert!((a * b).conj().max_abs_diff(&(b.conj() * a.conj())) < 1e-12);
    }

    #[test]
    fn conjugate_of_twist_times_pose(x in pose(), xi in twist()) {
        let xd = *xi.as_dq() * *x.as_dq();
        let rhs = -(x.as_dq().conj() * *xi.as_dq());
        prop_assert!(xd.conj().max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn cross_is_antisymmetric(a in twist(), b in twist()) {
        prop_assert!(a.cross(&b).max_abs_diff(&-b.cross(&a)) < 1e-12);
        prop_assert!(a.cross(&a).max_abs_diff(&Twist::ZERO) < 1e-12);
    }

    #[test]
    fn cross_matches_motion_vector_cross(a in twist(), b in twist()) {
        let (ap, ad, bp, bd) = (a.primary_vec(), a.dual_vec(), b.primary_vec(), b.dual_vec());
        let expect = Twist::from_vectors(&ap.cross(&bp), &(ap.cross(&bd) + ad.cross(&bp)));
        prop_assert!(a.cross(&b).max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn dot_is_symmetric(a in twist(), b in twist()) {
        let (ab, ba) = (a.dot(&b), b.dot(&a));
        prop_assert!((ab.primary - ba.primary).abs() < 1e-12);
        prop_assert!((ab.dual - ba.dual).abs() < 1e-12);
        prop_assert!((ab.primary - a.primary_vec().dot(&b.primary_vec())).abs() < 1e-12);
    }

    #[test]
    fn hamilton_matrix_matches_product(a in any_dq(), b in any_dq()) {
        let lhs = hamilton_plus_8(&a) * b.vec8();
        let rhs = (a * b).vec8();
        prop_assert!((lhs - rhs).amax() < 1e-14 * (1.0 + rhs.amax()));
    }

    #[test]
    fn m3_matches_matrix_vector_product(c in prop::array::uniform9(-2.0..2.0f64), v in vec3(2.0)) {
        let a = Matrix3::from_row_slice(&c);
        let got = m3_apply(&a, &Quaternion::from_vec3(&v)).unwrap().imag_vec();
        prop_assert!((got - a * v).amax() <= 1e-15 * (a * v).amax().max(1.0));
    }

    #[test]
    fn pose_round_trips_rotation_and_translation(x in pose()) {
        let y = Pose::from_rotation_translation(x.rotation(), &x.translation()).unwrap();
        prop_assert!(y.max_abs_diff(&x) < 1e-12);
    }
}

#[test]
fn adjoint_derivative_converges_at_second_order() {
    let steps = [1e-2, 1e-3, 1e-4, 1e-5];
    for t in [-0.6, 0.0, 0.35, 1.2] {
        let errors = common::adjoint_rate_errors(t, &steps);
        let order = common::convergence_order(&steps, &errors);
        assert!(order >= 1.9, "t = {t}: order {order}, errors {errors:?}");
    }
}

#[test]
fn moving_pose_satisfies_its_twist() {
    let h = 1e-6;
    for t in [0.0, 0.8] {
        let (x, xi) = common::moving_pose(t);
        let fd = (*common::moving_pose(t + h).0.as_dq() - *common::moving_pose(t - h).0.as_dq()) * (0.5 / h);
        let expect = 0.5 * (*xi.as_dq() * *x.as_dq());
        assert!(fd.max_abs_diff(&expect) < 1e-8);
    }
}
