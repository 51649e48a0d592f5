mod common;

use common::*;
use holonomy_core::exterior::basis;
use holonomy_core::families::Family;
use holonomy_core::g2::{
    canonical_big_phi, canonical_phi, four_form_27_kernel_test, g2_instanton_check,
    integrable_subfamily, lambda3_27_residual, project2, project3, G2Characteristic, G2Structure,
};
use holonomy_core::linalg::rank;
use holonomy_core::report::{Status, Verdict};
use holonomy_core::torsion::curvature;
use holonomy_core::{DenseTensor, Error, KForm, LieAlgebra, Tolerance};
use proptest::prelude::*;

const EXACT: Tolerance = Tolerance::Exact;

fn delta(i: usize, j: usize) -> Q {
    q((i == j) as i64)
}

fn assert_no_failures(ch: &G2Characteristic<Q>) {
    let checks = ch
        .formula_checks(EXACT)
        .into_iter()
        .chain(ch.theorem_checks(EXACT))
        .chain(ch.geometry.identity_suite(EXACT));
    for c in checks {
        assert!(!c.failed(), "{} failed: residual {}", c.name, c.residual);
    }
}

#[test]
fn phi_contractions() {
    let p = canonical_phi::<Q>().to_dense();
    let b = canonical_big_phi::<Q>().to_dense();
    assert_eq!(p.dot(&p), q(42));
    for i in 0..7 {
        for a in 0..7 {
            let mut s = q(0);
            for j in 0..7 {
                for k in 0..7 {
                    s = s + p.get(&[i, j, k]).clone() * p.get(&[a, j, k]).clone();
                }
            }
            assert_eq!(s, q(6) * delta(i, a));
        }
    }
    for x in DenseTensor::<Q>::zeros(7, 4).indexed().map(|(x, _)| x) {
        let (i, j, a, bb) = (x[0], x[1], x[2], x[3]);
        let mut s = q(0);
        for k in 0..7 {
            s = s + p.get(&[i, j, k]).clone() * p.get(&[a, bb, k]).clone();
        }
        let rhs = delta(i, a) * delta(j, bb) - delta(i, bb) * delta(j, a) + b.get(&x).clone();
        assert_eq!(s, rhs, "φφ at {x:?}");
    }
    for x in DenseTensor::<Q>::zeros(7, 3).indexed().map(|(x, _)| x) {
        let (i, a, bb) = (x[0], x[1], x[2]);
        let mut s = q(0);
        for j in 0..7 {
            for k in 0..7 {
                s = s + p.get(&[i, j, k]).clone() * b.get(&[a, bb, j, k]).clone();
            }
        }
        assert_eq!(s, q(4) * p.get(&[i, a, bb]).clone(), "φΦ at {x:?}");
    }
    for x in DenseTensor::<Q>::zeros(7, 5).indexed().map(|(x, _)| x) {
        let (i, j, a, bb, c) = (x[0], x[1], x[2], x[3], x[4]);
        let mut s = q(0);
        for k in 0..7 {
            s = s + p.get(&[i, j, k]).clone() * b.get(&[k, a, bb, c]).clone();
        }
        let rhs = delta(i, a) * p.get(&[j, bb, c]).clone()
            + delta(i, bb) * p.get(&[a, j, c]).clone()
            + delta(i, c) * p.get(&[a, bb, j]).clone()
            - delta(a, j) * p.get(&[i, bb, c]).clone()
            - delta(bb, j) * p.get(&[a, i, c]).clone()
            - delta(c, j) * p.get(&[a, bb, i]).clone();
        assert_eq!(s, rhs, "φΦ five-index at {x:?}");
    }
}

#[test]
fn two_form_splitting_has_ranks_7_and_14() {
    let (mut r7, mut r14) = (Vec::new(), Vec::new());
    for mi in basis(7, 2) {
        let (a7, a14) = project2(&KForm::<Q>::from_terms(7, 2, [(*mi, q(1))]));
        r7.push(a7.coefficients().to_vec());
        r14.push(a14.coefficients().to_vec());
    }
    assert_eq!(rank(r7, EXACT), 7);
    assert_eq!(rank(r14, EXACT), 14);
}

#[test]
fn three_form_splitting_has_ranks_1_7_27() {
    let mut rows = [Vec::new(), Vec::new(), Vec::new()];
    for mi in basis(7, 3) {
        let (a, b, c) = project3(&KForm::<Q>::from_terms(7, 3, [(*mi, q(1))]));
        rows[0].push(a.coefficients().to_vec());
        rows[1].push(b.coefficients().to_vec());
        rows[2].push(c.coefficients().to_vec());
    }
    let ranks: Vec<usize> = rows.into_iter().map(|r| rank(r, EXACT)).collect();
    assert_eq!(ranks, vec![1, 7, 27]);
}

#[test]
fn vector_type_three_form_lies_in_lambda3_7() {
    let g = canonical_big_phi::<Q>().interior_basis(6);
    let (g1, g7, g27) = project3(&g);
    assert!(g1.is_zero() && g27.is_zero());
    assert_eq!(g7, g);
}

#[test]
fn torsion_of_cartan_example_decomposes() {
    let t = KForm::<Q>::from_labels(7, 3, &[(1, &[1, 2, 3]), (1, &[4, 5, 6])]);
    let (g1, g7, g27) = project3(&t);
    assert!(g1.is_zero());
    let theta = KForm::from_labels(7, 1, &[(1, &[4]), (-1, &[3])]);
    // (T, e_i⌟Φ) = −θ_i and ‖e_i⌟Φ‖² = 4.
    assert_eq!(
        g7,
        canonical_big_phi().interior(&theta).scale(&Q::new(-1, 4))
    );
    assert!(lambda3_27_residual(&g27).passes(EXACT));
    assert!(!g27.is_zero());
}

#[test]
fn four_form_kernel_test_is_injective() {
    let mut rows = Vec::new();
    for mi in basis(7, 4) {
        let a = KForm::<Q>::from_terms(7, 4, [(*mi, q(1))]);
        let mut row = Vec::new();
        for i in 0..7 {
            let (g1, g7, _) = project3(&a.interior_basis(i));
            row.extend(g1.coefficients().iter().cloned());
            row.extend(g7.coefficients().iter().cloned());
        }
        rows.push(row);
    }
    assert_eq!(rank(rows, EXACT), 35);
    let (ok, _) = four_form_27_kernel_test(&canonical_big_phi::<Q>(), EXACT);
    assert!(!ok);
}

#[test]
fn cartan_example_values() {
    let s = G2Structure::new(su2_pair()).unwrap();
    let classes = s.classes(EXACT);
    assert!(classes.integrable && classes.strictly_integrable && !classes.cocalibrated);
    assert_eq!(classes.lambda, q(0));
    assert_eq!(
        s.lee_form(),
        KForm::from_labels(7, 1, &[(1, &[4]), (-1, &[3])])
    );
    assert!(s.d_phi().wedge(s.phi()).is_zero());
    let ch = s.characteristic(EXACT).unwrap();
    assert_eq!(
        ch.torsion(),
        &KForm::from_labels(7, 3, &[(1, &[1, 2, 3]), (1, &[4, 5, 6])])
    );
    assert!(ch.geometry.connection.tensor().is_zero());
    assert!(ch.geometry.curvature.is_flat());
    assert!(ch.geometry.data.is_parallel());
    assert!(ch.geometry.data.delta_t.is_zero());
    assert_eq!(
        ch.geometry.algebra.ce_d(&ch.theta),
        KForm::from_labels(7, 2, &[(1, &[5, 6]), (-1, &[1, 2])])
    );
    assert!(ch.ricci_formula().is_zero());
    // 3δθ + 2‖θ‖² − ⅓‖T‖² + 2λ² = 0 + 4 − 4 + 0.
    assert_eq!(ch.geometry.data.norm_sq(), q(12));
    assert_eq!(ch.scalar_formula(), q(0));
    assert_no_failures(&ch);
    let th = ch.theorem_checks(EXACT);
    let main = th
        .iter()
        .find(|c| c.name == "g2.theorem.instanton_parallel_lee_form")
        .unwrap();
    assert_eq!(main.verdict, Verdict::Pass);
    assert!(ch.nabla_theta.is_zero());
}

#[test]
fn abelian_structure_is_torsion_free() {
    let ch = G2Structure::new(LieAlgebra::<Q>::abelian(7))
        .unwrap()
        .characteristic(EXACT)
        .unwrap();
    assert!(ch.torsion().is_zero() && ch.theta.is_zero());
    assert!(ch.geometry.ricci().is_zero());
    assert_eq!(ch.geometry.scalar_curvature(), q(0));
    assert!(g2_instanton_check(&ch.geometry.curvature).is_instanton(EXACT));
    assert_no_failures(&ch);
}

#[test]
fn levi_civita_of_su2_pair_is_not_an_instanton() {
    let alg = su2_pair();
    let r = curvature(&alg, &alg.levi_civita());
    assert!(!g2_instanton_check(&r).is_instanton(EXACT));
}

#[test]
fn non_integrable_structure_has_no_characteristic_connection() {
    let s = G2Structure::new(heisenberg_like()).unwrap();
    assert!(!s.is_integrable(EXACT));
    match s.characteristic_torsion(EXACT) {
        Err(Error::NotIntegrable(_)) => {}
        other => panic!("expected NotIntegrable, got {other:?}"),
    }
    let msg = s.characteristic(EXACT).unwrap_err().to_string();
    assert!(msg.contains("no characteristic connection exists"), "{msg}");
}

/// `de7 = e12`: not adapted to `φ`.
fn heisenberg_like() -> LieAlgebra<Q> {
    nilpotent(7, 2, &[-1]).validated(EXACT).unwrap()
}

#[test]
fn integrable_subfamilies_have_expected_dimensions() {
    let dims: Vec<usize> = [
        Family::<Q>::two_step_nilpotent(7, 3),
        Family::two_step_nilpotent(7, 4),
        Family::two_step_nilpotent(7, 5),
        Family::almost_abelian(7),
    ]
    .iter()
    .map(|f| integrable_subfamily(f, EXACT).len())
    .collect();
    assert_eq!(dims, vec![6, 15, 9, 22]);
}

#[test]
fn instanton_instances_satisfy_the_theorems_non_vacuously() {
    let sub = integrable_subfamily(&Family::<Q>::two_step_nilpotent(7, 4), EXACT);
    let mut found = 0;
    for a in 0..sub.len() {
        for b in (a + 1)..sub.len() {
            let mut t = vec![q(0); sub.len()];
            t[a] = q(1);
            t[b] = q(-1);
            let ch = G2Structure::new(sub.algebra(&t))
                .unwrap()
                .characteristic(EXACT)
                .unwrap();
            if ch.torsion().is_zero() || !ch.instanton().is_instanton(EXACT) {
                continue;
            }
            found += 1;
            assert_no_failures(&ch);
            let th = ch.theorem_checks(EXACT);
            let c = th
                .iter()
                .find(|c| c.name == "g2.theorem.instanton_parallel_lee_form")
                .unwrap();
            assert_eq!(c.verdict, Verdict::Pass);
        }
    }
    assert!(found > 0);
}

#[test]
fn compact_only_statements_are_not_asserted() {
    let ch = G2Structure::new(su2_pair())
        .unwrap()
        .characteristic(EXACT)
        .unwrap();
    for c in ch.theorem_checks(EXACT) {
        if c.name.contains("compact") {
            assert_eq!(c.status, Status::InstanceConsistentOnly, "{}", c.name);
        }
    }
}

fn family_member(fam: &Family<Q>, coeffs: &[i64]) -> LieAlgebra<Q> {
    let t: Vec<Q> = (0..fam.len())
        .map(|a| q(coeffs[a % coeffs.len()]))
        .collect();
    fam.algebra(&t)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn two_form_projections_satisfy_eigen_equations(c in proptest::collection::vec(-3i64..=3, 21)) {
        let alpha = form(7, 2, &c);
        let (a7, a14) = project2(&alpha);
        let phi = canonical_phi::<Q>();
        prop_assert_eq!(a7.wedge(&phi).hodge(), a7.scale(&q(2)));
        prop_assert_eq!(a14.wedge(&phi).hodge(), a14.neg());
        prop_assert_eq!(a7.add(&a14), alpha);
        prop_assert_eq!(project2(&a7).0, a7.clone());
        prop_assert_eq!(a7.inner(&a14), q(0));
    }

    #[test]
    fn three_form_projections_are_complementary(c in proptest::collection::vec(-3i64..=3, 35)) {
        let gamma = form(7, 3, &c);
        let (g1, g7, g27) = project3(&gamma);
        prop_assert_eq!(g1.add(&g7).add(&g27), gamma);
        prop_assert!(lambda3_27_residual(&g27).passes(EXACT));
        prop_assert_eq!(project3(&g7).1, g7.clone());
        prop_assert!(project3(&g27).1.is_zero());
        prop_assert!(project3(&g1).2.is_zero());
        prop_assert_eq!(g1.inner(&g7), q(0));
        prop_assert_eq!(g7.inner(&g27), q(0));
    }

    #[test]
    fn kernel_test_true_forces_zero(c in proptest::collection::vec(proptest::sample::select(vec![0i64, 0, 0, 0, 1, -1]), 35)) {
        let (ok, norm) = four_form_27_kernel_test(&form(7, 4, &c), EXACT);
        prop_assert_eq!(ok, norm.passes(EXACT));
    }

    #[test]
    fn integrable_nilpotent_instances_pass(split in 3usize..=5, c in proptest::collection::vec(-2i64..=2, 1..12)) {
        let fam = integrable_subfamily(&Family::<Q>::two_step_nilpotent(7, split), EXACT);
        let s = G2Structure::new(family_member(&fam, &c)).unwrap();
        let classes = s.classes(EXACT);
        prop_assert!(classes.integrable && classes.constant_type);
        prop_assert!(!classes.cocalibrated || classes.theta.is_zero());
        assert_no_failures(&s.characteristic(EXACT).unwrap());
    }

    #[test]
    fn integrable_almost_abelian_instances_pass(c in proptest::collection::vec(-2i64..=2, 1..12)) {
        let fam = integrable_subfamily(&Family::<Q>::almost_abelian(7), EXACT);
        let s = G2Structure::new(family_member(&fam, &c)).unwrap();
        prop_assert!(!s.classes(EXACT).cocalibrated || s.lee_form().is_zero());
        assert_no_failures(&s.characteristic(EXACT).unwrap());
    }

    #[test]
    fn generic_nilpotent_algebra_is_not_integrable(c in proptest::collection::vec(1i64..=3, 6)) {
        let alg = nilpotent(7, 4, &c);
        prop_assert!(G2Structure::new(alg).unwrap().integrability_residual().value > q(0));
    }
}
