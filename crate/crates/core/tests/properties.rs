use std::collections::BTreeMap;
use std::sync::Arc;

use atomcert_core::algebra::{LaurentPoly, ParamPoly, PolyMatrix, PowerSeries, Rat, Vars};
use atomcert_core::ansatz::{build_ansatz, AnsatzMatrix, DegreeRule, NOVIKOV};
use atomcert_core::atoms::{
    blowup_combine, exclusion_search, obstruction_applies, AtomInvariants, CentreModel,
};
use atomcert_core::cohomology::AmbientRing;
use atomcert_core::qde::eliminate;
use proptest::prelude::*;

fn xy() -> Arc<Vars> {
    Vars::new(&["x", "y"])
}

fn rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rat::new(n, d))
}

fn poly() -> impl Strategy<Value = ParamPoly> {
    prop::collection::vec(((0u32..4, 0u32..4), rat()), 0..6).prop_map(|terms| {
        let vars = xy();
        ParamPoly::from_terms(&vars, terms.into_iter().map(|((a, b), c)| (vec![a, b], c)))
    })
}

fn q_matrix(n: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec((rat(), rat()), n * n).prop_map(move |entries| {
        let vars = Vars::new(&[NOVIKOV]);
        let rows = entries
            .chunks(n)
            .map(|row| {
                row.iter()
                    .map(|(a, b)| {
                        ParamPoly::from_terms(&vars, [(vec![0], a.clone()), (vec![1], b.clone())])
                    })
                    .collect()
            })
            .collect();
        PolyMatrix::from_rows(&vars, rows).unwrap()
    })
}

fn laurent_sym() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((0i32..3, 0i64..5), 0..4).prop_map(|terms| {
        let mut all = Vec::new();
        for (k, c) in terms {
            all.push((k, c));
            if k != 0 {
                all.push((-k, c));
            }
        }
        LaurentPoly::from_terms(all)
    })
}

fn atom() -> impl Strategy<Value = AtomInvariants> {
    (0u32..6, laurent_sym()).prop_map(|(rho, p)| AtomInvariants::new("a", rho, p))
}

fn centre() -> impl Strategy<Value = CentreModel> {
    prop_oneof![
        Just(CentreModel::Point),
        (0u32..5).prop_map(|genus| CentreModel::Curve { genus }),
        (0u32..4, 1u32..6, 0u32..3).prop_map(|(h20, h11, h10)| CentreModel::Surface {
            h20,
            h11,
            h10
        }),
    ]
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn euler_derivative_is_a_derivation(a in poly(), b in poly(), idx in 0usize..2) {
        let lhs = (&a * &b).euler_derivative(idx);
        let rhs = &(&a.euler_derivative(idx) * &b) + &(&a * &b.euler_derivative(idx));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn series_product_matches_polynomial_product(
        a in prop::collection::vec(rat(), 1..8),
        b in prop::collection::vec(rat(), 1..8),
    ) {
        let vars = Vars::new(&["q"]);
        let pa = ParamPoly::from_univariate(&vars, 0, &a);
        let pb = ParamPoly::from_univariate(&vars, 0, &b);
        let prod = &pa * &pb;
        let s = PowerSeries::new(a.clone()).mul(&PowerSeries::new(b.clone()));
        for k in 0..=s.order() {
            prop_assert_eq!(s.coeff(k), &prod.coefficient(&[k as u32]));
        }
        let n = a.len().max(b.len()) - 1;
        let mut padded = a.clone();
        padded.resize(n + 1, Rat::zero());
        let via_poly = PowerSeries::new(padded).mul_poly(&b);
        for k in 0..=n {
            prop_assert_eq!(via_poly.coeff(k), &prod.coefficient(&[k as u32]));
        }
    }

    #[test]
    fn left_kernel_annihilates(m in q_matrix(3), extra in prop::collection::vec(rat(), 3)) {
        // Append a dependent row so the kernel is nonempty.
        let vars = m.vars().clone();
        let mut rows: Vec<Vec<ParamPoly>> = (0..3).map(|i| m.row(i).to_vec()).collect();
        let combo: Vec<ParamPoly> = (0..3)
            .map(|j| (0..3).fold(ParamPoly::zero(&vars), |acc, i| &acc + &m.get(i, j).scale(&extra[i])))
            .collect();
        rows.push(combo);
        let a = PolyMatrix::from_rows(&vars, rows).unwrap();
        let kernel = a.left_nullspace().unwrap();
        prop_assert!(!kernel.is_empty());
        for v in kernel {
            prop_assert!(a.left_apply(&v).unwrap().iter().all(ParamPoly::is_zero));
        }
    }

    #[test]
    fn char_poly_of_direct_sum(a in q_matrix(2), b in q_matrix(3)) {
        let lhs = a.direct_sum(&b).char_poly("λ").unwrap();
        let rhs = &a.char_poly("λ").unwrap() * &b.char_poly("λ").unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn blowup_is_iterated_additivity(base in atom(), c in centre(), r in 2u32..7) {
        let z = c.contribution();
        let direct = blowup_combine(&base, &z, r).unwrap();
        let mut step = base.clone();
        for _ in 0..r - 1 {
            step = blowup_combine(&step, &z, 2).unwrap();
        }
        prop_assert_eq!(direct, step);
    }

    #[test]
    fn centre_models(c in centre()) {
        let z = c.contribution();
        prop_assert!(z.hodge_poly.is_symmetric());
        prop_assert!(z.is_consistent());
        let has_t2 = matches!(c, CentreModel::Surface { h20, .. } if h20 > 0);
        prop_assert_eq!(z.t2() != 0, has_t2);
        match c {
            CentreModel::Point => prop_assert_eq!(z.rho, 1),
            CentreModel::Curve { .. } => prop_assert_eq!(z.rho, 2),
            CentreModel::Surface { .. } => prop_assert!(z.rho >= 3),
        }
    }

    #[test]
    fn obstruction_implies_exclusion(target in atom(), n in 0usize..5, g in 0u32..5) {
        if obstruction_applies(&target) {
            prop_assert!(exclusion_search(&target, n, g).is_empty());
        }
    }

    #[test]
    fn realizations_really_realize(target in atom(), n in 0usize..4, g in 0u32..3) {
        for set in exclusion_search(&target, n, g) {
            prop_assert!(!set.is_empty() && set.len() <= n);
            let t2: i64 = set.iter().map(|c| c.contribution().t2()).sum();
            let rho: u32 = set.iter().map(|c| c.contribution().rho).sum();
            prop_assert_eq!(t2, target.t2());
            prop_assert!(rho <= target.rho);
        }
    }

    #[test]
    fn rational_display_round_trips(r in rat()) {
        prop_assert_eq!(r.to_string().parse::<Rat>().unwrap(), r);
    }
}

fn verra() -> AmbientRing {
    AmbientRing::new(3, Rat::from(2))
}

#[test]
fn eigenblocks_are_orthogonal() {
    let ring = verra();
    let basis = ring.build_eigenbasis();
    assert_eq!((basis.symmetric.len(), basis.antisymmetric.len()), (6, 3));
    for s in &basis.symmetric {
        for a in &basis.antisymmetric {
            assert!(
                ring.pair(&s.class, &a.class).is_zero(),
                "{} vs {}",
                s.label,
                a.label
            );
        }
    }
}

#[test]
fn involution_is_a_ring_automorphism() {
    let ring = verra();
    let basis = ring.monomial_basis();
    for x in &basis {
        assert_eq!(ring.involution(&ring.involution(x)), *x);
        for y in &basis {
            let lhs = ring.involution(&ring.cup(x, y));
            let rhs = ring.cup(&ring.involution(x), &ring.involution(y));
            assert_eq!(lhs, rhs);
            assert_eq!(
                ring.pair(&ring.involution(x), &ring.involution(y)),
                ring.pair(x, y)
            );
        }
    }
}

fn symmetric_ansatz() -> (AnsatzMatrix, PolyMatrix) {
    let ring = verra();
    let basis = ring.build_eigenbasis();
    let rule = DegreeRule::hyperplane(basis.symmetric.iter().map(|b| b.degree).collect());
    let gram = ring.gram_matrix(&basis.symmetric_classes(), &Vars::new(&[NOVIKOV]));
    (
        build_ansatz(&ring, &basis.symmetric, &rule, &gram).unwrap(),
        gram,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn substituted_ansatz_stays_self_adjoint(vals in prop::collection::vec(rat(), 4)) {
        let (a, gram) = symmetric_ansatz();
        prop_assert!(a.is_self_adjoint(&gram).unwrap());
        let values: BTreeMap<String, Rat> = a.params.iter().cloned().zip(vals).collect();
        let m = a.substitute_params(&values).unwrap();
        prop_assert_eq!(m.transpose().checked_mul(&gram).unwrap(), gram.checked_mul(&m).unwrap());
    }

    #[test]
    fn parametric_elimination_specializes(vals in prop::collection::vec(1i64..9, 4)) {
        // Away from t = u, where det(r_0..r_5) = -864 q (t - u) vanishes and
        // the cyclic vector degenerates, specializing the parametric
        // operator agrees with eliminating the specialized matrix.
        let (a, _) = symmetric_ansatz();
        let t = a.anchors.iter().position(|&p| p == (1, 2)).unwrap();
        let u = a.anchors.iter().position(|&p| p == (1, 3)).unwrap();
        prop_assume!(vals[t] != vals[u]);
        let values: BTreeMap<String, Rat> =
            a.params.iter().cloned().zip(vals.into_iter().map(Rat::from)).collect();
        let generic = eliminate(&a.matrix, 5).unwrap();
        let numeric = eliminate(&a.substitute_params(&values).unwrap(), 5).unwrap();
        let special = generic.operator.evaluate(&values).embed(&Vars::new(&[NOVIKOV])).unwrap().normalized();
        prop_assert_eq!(special, numeric.operator);
    }

    #[test]
    fn cyclic_vector_degenerates_on_t_equals_u(x in 1i64..9, s in 1i64..9, v in 1i64..9) {
        let (a, _) = symmetric_ansatz();
        let pick = |pos: (usize, usize), val: i64| {
            let i = a.anchors.iter().position(|&p| p == pos).unwrap();
            (a.params[i].clone(), Rat::from(val))
        };
        let values: BTreeMap<String, Rat> =
            [pick((0, 1), s), pick((1, 2), x), pick((1, 3), x), pick((0, 4), v)].into_iter().collect();
        let numeric = eliminate(&a.substitute_params(&values).unwrap(), 5).unwrap();
        prop_assert!(numeric.operator.order() < 6);
    }
}
