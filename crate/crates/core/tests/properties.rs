mod common;

use kum3_core::exact::{int, Matrix, Scalar};
use kum3_core::kummer::{
    enumerate_sum_power, expand_sum_power, orbit, GroupElement, Label, LabelIntersections,
    TorsionPoint, TuplePattern, WTriple, A2_ORDER,
};
use kum3_core::quadspace::{QuadSpace, Sym2Vector};
use kum3_core::{ExactMatrix, Rational};
use num_rational::Ratio;
use proptest::prelude::*;

fn to_exact(rows: &[Vec<i64>]) -> ExactMatrix {
    Matrix::from_fn(rows.len(), rows[0].len(), |i, j| int(rows[i][j]))
}

fn small_ratio() -> impl Strategy<Value = Ratio<i64>> {
    (-50i64..=50, 1i64..=20).prop_map(|(n, d)| Ratio::new(n, d))
}

fn quad_space(n: usize) -> impl Strategy<Value = QuadSpace<Rational>> {
    prop::collection::vec(-4i64..=4, n * n).prop_map(move |xs| {
        let gram = Matrix::from_fn(n, n, |i, j| int(xs[i.min(j) * n + i.max(j)]));
        QuadSpace::new((0..n).map(|i| format!("e{i}")).collect(), gram).unwrap()
    })
}

fn vector(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-6i64..=6).prop_map(int), n)
}

fn intersections() -> LabelIntersections {
    LabelIntersections {
        triple: WTriple {
            self_cube: int(60),
            double: int(12),
            distinct: int(4),
        },
        d_same: int(-52),
        d_same_tau: int(12),
        d_cross: int(8),
    }
}

fn any_label() -> impl Strategy<Value = Label> {
    let w = Label::all_w();
    let v = Label::all_v();
    let d = Label::all_d();
    prop_oneof![
        prop::sample::select(w),
        prop::sample::select(v),
        prop::sample::select(d),
    ]
}

#[test]
fn leibniz_oracle_on_known_determinants() {
    assert_eq!(common::leibniz_det(&[vec![2, 1], vec![7, 4]]), 1);
    assert_eq!(
        common::leibniz_det(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]),
        1
    );
    assert_eq!(
        common::leibniz_det(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]),
        -1
    );
    assert_eq!(common::brute_rank(&[vec![1, 2], vec![2, 4]]), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_nullity_against_minors(rows in common::small_matrix()) {
        let m = to_exact(&rows);
        let echelon = m.rref();
        prop_assert_eq!(echelon.rank(), common::brute_rank(&rows));
        let kernel = echelon.kernel_basis();
        prop_assert_eq!(echelon.rank() + kernel.len(), m.cols());
        for k in &kernel {
            prop_assert!(m.mul_vec(k).unwrap().iter().all(|x| *x == int(0)));
        }
        if !kernel.is_empty() {
            prop_assert_eq!(Matrix::from_rows(kernel.clone()).unwrap().rank(), kernel.len());
        }
    }

    #[test]
    fn fixed_width_elimination_matches_big(rows in common::small_matrix()) {
        let small = Matrix::from_fn(rows.len(), rows[0].len(), |i, j| Ratio::<i128>::from_integer(rows[i][j] as i128));
        if let Some(e) = small.checked_rref() {
            prop_assert_eq!(e.rank(), to_exact(&rows).rank());
        }
    }

    #[test]
    fn ratio_field_axioms(a in small_ratio(), b in small_ratio(), c in small_ratio()) {
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!((a + b) + c, a + (b + c));
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!(a.try_add(&b), Some(a + b));
        prop_assert_eq!(a.try_mul(&b), Some(a * b));
        if b != Ratio::from_integer(0) {
            prop_assert_eq!(a.try_div(&b).unwrap() * b, a);
        } else {
            prop_assert_eq!(a.try_div(&b), None);
        }
    }

    #[test]
    fn sym2_pairing_matches_three_matchings(
        (space, x, y, z, t) in (1usize..=5).prop_flat_map(|n| (quad_space(n), vector(n), vector(n), vector(n), vector(n)))
    ) {
        let qf = |a: &[Rational], b: &[Rational]| space.pair(a, b).unwrap();
        let expected = qf(&x, &y) * qf(&z, &t) + qf(&x, &z) * qf(&y, &t) + qf(&x, &t) * qf(&y, &z);
        let xy = Sym2Vector::product(&x, &y).unwrap();
        let zt = Sym2Vector::product(&z, &t).unwrap();
        prop_assert_eq!(space.sym2_pair(&xy, &zt).unwrap(), expected);
        prop_assert_eq!(space.sym2_pair(&zt, &xy).unwrap(), space.sym2_pair(&xy, &zt).unwrap());
        prop_assert_eq!(Sym2Vector::product(&y, &x).unwrap(), xy);
    }

    #[test]
    fn sym2_pairing_is_bilinear(
        (space, x, y, z, t, a, b) in (1usize..=5).prop_flat_map(|n| (
            quad_space(n), vector(n), vector(n), vector(n), vector(n), -5i64..=5, -5i64..=5,
        ))
    ) {
        let u1 = Sym2Vector::product(&x, &y).unwrap();
        let u2 = Sym2Vector::square(&z);
        let v = Sym2Vector::product(&t, &x).unwrap();
        let (a, b) = (int(a), int(b));
        let mut combo = u1.scaled(&a);
        combo.add_scaled(&u2, &b);
        let lhs = space.sym2_pair(&combo, &v).unwrap();
        let rhs = a * space.sym2_pair(&u1, &v).unwrap() + b * space.sym2_pair(&u2, &v).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pairings_are_invariant_under_every_group_element(
        labels in prop_oneof![
            prop::collection::vec(prop::sample::select(Label::all_w()), 3),
            (prop::sample::select(Label::all_w()), prop::sample::select(Label::all_v())).prop_map(|(a, b)| vec![a, b]),
            prop::collection::vec(prop::sample::select(Label::all_d()), 2),
        ],
        g in prop::sample::select(GroupElement::all_gamma().into_iter().chain(GroupElement::all_g()).collect::<Vec<_>>()),
    ) {
        let p = intersections();
        let moved: Vec<Label> = labels.iter().map(|l| kum3_core::kummer::act(g, *l)).collect();
        prop_assert_eq!(p.pair(&labels).unwrap(), p.pair(&moved).unwrap());
    }

    #[test]
    fn group_action_preserves_label_kind(label in any_label(), g in prop::sample::select(GroupElement::all_gamma())) {
        prop_assert_eq!(kum3_core::kummer::act(g, label).degree(), label.degree());
    }

    #[test]
    fn orbit_counting_matches_enumeration(self_sq in -100i64..=100, other in -100i64..=100, n in 1usize..=3) {
        let f = |p: &TuplePattern| Some(int(match p.block_count() {
            1 => self_sq,
            2 => other,
            _ => self_sq - other,
        }));
        prop_assert_eq!(
            expand_sum_power(A2_ORDER, n, f).unwrap(),
            enumerate_sum_power(A2_ORDER, n, f).unwrap()
        );
    }
}

#[test]
fn orbits_partition_the_labels() {
    let gamma = GroupElement::all_gamma();
    let mut seen = std::collections::BTreeSet::new();
    let mut sizes = Vec::new();
    for l in Label::all_w().into_iter().chain(Label::all_d()) {
        if seen.contains(&l) {
            continue;
        }
        let o = orbit(l, &gamma);
        sizes.push(o.len());
        seen.extend(o);
    }
    assert_eq!(sizes, vec![16, 256]);
    assert_eq!(
        orbit(Label::W(TorsionPoint::ZERO), &GroupElement::all_g()).len(),
        1
    );
}
