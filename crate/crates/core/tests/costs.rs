mod common;

use dqdyn::costmodel::*;
use dqdyn::dqalg::{m3_apply_with, Matrix3, OpTally, Vector3};
use dqdyn::{dqne, fixtures, DualQuaternion, Pose, Quaternion, Twist};
use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn every_cost_row_matches_its_reference() {
    for (label, computed, expected) in common::tables::rows() {
        assert_eq!(computed, expected, "{label}: {computed:?}");
    }
}

#[test]
fn instrumented_primitives_match_the_table() {
    let a = Quaternion::new(0.3, -1.0, 2.0, 0.5);
    let b = Quaternion::new(-0.7, 0.2, 0.1, 1.5);
    let (pa, pb) = (Quaternion::pure(0.1, 0.2, 0.3), Quaternion::pure(-1.0, 0.5, 0.0));
    let da = DualQuaternion::new(a, b);
    let db = DualQuaternion::new(b, a);
    let x = Pose::from_axis_angle(&Vector3::x(), 0.4);
    let t = Twist::from_parts([1.0, 2.0, 3.0], [0.5, -0.5, 0.2]);
    let cases: Vec<(Primitive, OpTally)> = vec![
        (Primitive::QuatMul, OpTally::measure(|c| a.mul_with(&b, c)).1),
        (
            Primitive::QuatCross,
            OpTally::measure(|c| pa.cross_with(&pb, c)).1,
        ),
        (
            Primitive::QuatAdjoint,
            OpTally::measure(|c| a.adjoint_with(&b, c)).1,
        ),
        (Primitive::DqMul, OpTally::measure(|c| da.mul_with(&db, c)).1),
        (
            Primitive::DqAdjoint,
            OpTally::measure(|c| x.adjoint_with(&t, c)).1,
        ),
        (Primitive::DqCross, OpTally::measure(|c| t.cross_with(&t, c)).1),
        (
            Primitive::QuatM3,
            OpTally::measure(|c| m3_apply_with(&Matrix3::identity(), &pa, c)).1,
        ),
        (Primitive::QuatAdd, OpTally::measure(|c| a.add_with(&b, c)).1),
        (Primitive::DqAdd, OpTally::measure(|c| da.add_with(&db, c)).1),
        (Primitive::QuatScale, OpTally::measure(|c| a.scale_with(2.0, c)).1),
        (Primitive::DqScale, OpTally::measure(|c| da.scale_with(2.0, c)).1),
        (Primitive::DqConj, OpTally::measure(|c| da.conj_with(c)).1),
    ];
    for (p, tally) in cases {
        assert_eq!(OpCost::from(tally), p.cost(), "{}", p.label());
    }
}

#[test]
fn spot_values() {
    assert_eq!(cost_ne(7).unwrap().total, OpCost::new(6126, 5028));
    assert_eq!(cost_ne(1).unwrap().wrenches, OpCost::new(302, 248));
    assert_eq!(cost_gplc(1).unwrap().total, OpCost::new(791, 634));
    assert_eq!(cost_gplc(2).unwrap().total.mults, Ratio::from_integer(2378));
    let link = gp_link_polynomials();
    assert_eq!(link.inertia.eval(2), OpCost::new(96, 80));
    assert_eq!(link.gravity.eval(1), OpCost::new(38, 26));
}

#[test]
fn per_link_sums_agree_with_direct_sums() {
    let link = gp_link_polynomials();
    let total = link.twist_jacobian.sum_to_n().unwrap();
    for n in 1..=12 {
        let direct = (1..=n)
            .map(|i| link.twist_jacobian.eval(i))
            .fold(OpCost::default(), |a, b| a + b);
        assert_eq!(total.eval(n), direct);
    }
}

#[test]
fn totals_are_integers_and_increasing() {
    let mut last = (cost_ne(1).unwrap().total, cost_gplc(1).unwrap().total);
    for n in 2..=30 {
        let ne = cost_ne(n).unwrap().total;
        let gp = cost_gplc(n).unwrap().total;
        assert!(ne.as_integers().is_some() && gp.as_integers().is_some());
        assert!(ne.mults > last.0.mults && ne.adds > last.0.adds);
        assert!(gp.mults > last.1.mults && gp.adds > last.1.adds);
        last = (ne, gp);
    }
}

#[test]
fn recursive_form_is_cheaper_beyond_one_link() {
    assert!(cost_gplc(1).unwrap().total.mults < cost_ne(1).unwrap().total.mults);
    for n in 2..=20 {
        assert!(cost_ne(n).unwrap().total.mults < cost_gplc(n).unwrap().total.mults);
    }
}

#[test]
fn runtime_sweeps_decompose_into_the_symbolic_rows() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let gravity_rotation = Primitive::QuatAdjoint.cost();
    let ne = ne_polynomials();
    for n in 1..=7 {
        let chain = fixtures::random_chain(n, &mut rng);
        let v = vec![0.3; n];
        let (_, counts) = dqne::inverse_dynamics_counted(&chain, &v, &v, &v).unwrap();
        let n = n as i64;
        assert_eq!(OpCost::from(counts.twists), ne.twists.eval(n));
        assert_eq!(
            OpCost::from(counts.twist_derivatives),
            ne.twist_derivatives.eval(n)
        );
        let per_link = ne.wrenches.eval(1) + gravity_rotation;
        assert_eq!(
            OpCost::from(counts.wrenches),
            (CostPolynomial::constant(per_link) * n).eval(1)
        );
        // the gravity rotation (35, 24 per link) exceeds the fkine offset
        // (48, 40) only for a single link
        let total = OpCost::from(counts.total());
        let symbolic = ne.total.eval(n);
        if n >= 2 {
            assert!(total.mults <= symbolic.mults && total.adds <= symbolic.adds);
        } else {
            assert_eq!(total, OpCost::new(857, 704));
        }
    }
}

#[test]
fn empty_chains_are_rejected() {
    assert!(matches!(cost_ne(0), Err(dqdyn::Error::Domain(_))));
    assert!(matches!(cost_gplc(0), Err(dqdyn::Error::Domain(_))));
}
