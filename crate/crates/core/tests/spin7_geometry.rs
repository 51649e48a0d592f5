mod common;

use common::*;
use holonomy_core::exterior::basis;
use holonomy_core::families::Family;
use holonomy_core::g2::{integrable_subfamily, G2Structure};
use holonomy_core::linalg::{nullspace, rank};
use holonomy_core::report::{Status, Verdict};
use holonomy_core::spin7::{
    canonical_psi, extension_checks, lambda4_27_residual, lift, omega, project2, project4,
    spin7_instanton_check, Spin7Characteristic, Spin7Structure, OMEGA_EIGENVALUES,
};
use holonomy_core::torsion::{curvature, with_torsion};
use holonomy_core::{KForm, LieAlgebra, Scalar, Tolerance};
use proptest::prelude::*;

const EXACT: Tolerance = Tolerance::Exact;

fn delta(i: usize, j: usize) -> Q {
    q((i == j) as i64)
}

/// The unique skew torsion preserving `Ψ`, found by solving `∇Ψ = 0` as a
/// linear system in the 56 components of `T`.
fn torsion_oracle(alg: &LieAlgebra<Q>) -> KForm<Q> {
    let psi = canonical_psi::<Q>();
    let lc = alg.levi_civita();
    let eval = |t: &KForm<Q>| {
        with_torsion(&lc, t)
            .unwrap()
            .covariant_derivative_form(&psi)
            .data()
            .to_vec()
    };
    let f0 = eval(&KForm::zero(8, 3));
    let b = basis(8, 3);
    let cols: Vec<Vec<Q>> = b
        .iter()
        .map(|mi| {
            let v = eval(&KForm::from_terms(8, 3, [(*mi, q(1))]));
            v.into_iter().zip(&f0).map(|(a, c)| a - c.clone()).collect()
        })
        .collect();
    let rows: Vec<Vec<Q>> = (0..f0.len())
        .map(|r| {
            let mut row: Vec<Q> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(f0[r].clone());
            row
        })
        .collect();
    let sols: Vec<Vec<Q>> = nullspace(rows, 57, EXACT)
        .into_iter()
        .filter(|v| !v[56].is_zero())
        .collect();
    assert_eq!(sols.len(), 1, "torsion preserving Ψ must be unique");
    let v = &sols[0];
    KForm::from_terms(
        8,
        3,
        b.iter()
            .enumerate()
            .map(|(i, mi)| (*mi, v[i].clone() / v[56].clone()))
            .collect::<Vec<_>>(),
    )
}

fn assert_no_failures(ch: &Spin7Characteristic<Q>) {
    let checks = ch
        .formula_checks(EXACT)
        .into_iter()
        .chain(ch.theorem_checks(EXACT))
        .chain(ch.geometry.identity_suite(EXACT));
    for c in checks {
        assert!(!c.failed(), "{} failed: residual {}", c.name, c.residual);
    }
}

fn cartan8() -> (G2Structure<Q>, Spin7Characteristic<Q>) {
    let g2 = G2Structure::new(su2_pair()).unwrap();
    let ch = Spin7Structure::extend_g2(&g2, EXACT)
        .unwrap()
        .characteristic()
        .unwrap();
    (g2, ch)
}

#[test]
fn psi_contractions() {
    let p = canonical_psi::<Q>().to_dense();
    assert_eq!(p.dot(&p), q(336));
    for i in 0..8 {
        for a in 0..8 {
            let mut s = q(0);
            for j in 0..8 {
                for x in 0..8 {
                    for y in 0..8 {
                        s = s + p.get(&[i, j, x, y]).clone() * p.get(&[a, j, x, y]).clone();
                    }
                }
            }
            assert_eq!(s, q(42) * delta(i, a));
        }
    }
    for (x, _) in holonomy_core::DenseTensor::<Q>::zeros(8, 4).indexed() {
        let (i, j, k, l) = (x[0], x[1], x[2], x[3]);
        let mut s = q(0);
        for a in 0..8 {
            for b in 0..8 {
                s = s + p.get(&[i, j, a, b]).clone() * p.get(&[k, l, a, b]).clone();
            }
        }
        let rhs = q(6) * delta(i, k) * delta(j, l)
            - q(6) * delta(i, l) * delta(j, k)
            - q(4) * p.get(&x).clone();
        assert_eq!(s, rhs, "ΨΨ at {x:?}");
    }
}

#[test]
fn extension_of_phi_is_the_canonical_psi() {
    let g2 = G2Structure::new(LieAlgebra::<Q>::abelian(7)).unwrap();
    let s = Spin7Structure::extend_g2(&g2, EXACT).unwrap();
    let e0 = KForm::unit(8, 0);
    let expected = e0.wedge(&lift(g2.phi())).add(&lift(g2.big_phi())).neg();
    assert_eq!(s.psi(), &expected);
    assert_eq!(s.psi(), &canonical_psi());
}

#[test]
fn two_form_splitting_has_ranks_7_and_21() {
    let psi = canonical_psi::<Q>();
    let (mut r7, mut r21) = (Vec::new(), Vec::new());
    for mi in basis(8, 2) {
        let a = KForm::<Q>::from_terms(8, 2, [(*mi, q(1))]);
        let (a7, a21) = project2(&a);
        assert_eq!(a7.wedge(&psi).hodge(), a7.scale(&q(-3)));
        assert_eq!(a21.wedge(&psi).hodge(), a21);
        r7.push(a7.coefficients().to_vec());
        r21.push(a21.coefficients().to_vec());
    }
    assert_eq!(rank(r7, EXACT), 7);
    assert_eq!(rank(r21, EXACT), 21);
}

#[test]
fn omega_eigenspaces_have_expected_multiplicities() {
    let mut rows: [Vec<Vec<Q>>; 4] = Default::default();
    for mi in basis(8, 4) {
        let s = KForm::<Q>::from_terms(8, 4, [(*mi, q(1))]);
        let parts = project4(&s);
        let mut sum = KForm::zero(8, 4);
        for (k, p) in parts.iter().enumerate() {
            assert_eq!(omega(p), p.scale(&q(OMEGA_EIGENVALUES[k])));
            sum = sum.add(p);
            rows[k].push(p.coefficients().to_vec());
        }
        assert_eq!(sum, s);
        let plus = parts[0].add(&parts[1]).add(&parts[2]);
        assert_eq!(plus.scale(&q(2)), s.add(&s.hodge()));
        assert_eq!(parts[3].scale(&q(2)), s.sub(&s.hodge()));
        assert!(lambda4_27_residual(&parts[2]).passes(EXACT));
    }
    let ranks: Vec<usize> = rows.into_iter().map(|r| rank(r, EXACT)).collect();
    assert_eq!(ranks, vec![1, 7, 27, 35]);
}

#[test]
fn contraction_test_separates_lambda4_27_from_1_and_7() {
    let mut rows = Vec::new();
    for mi in basis(8, 4) {
        let [s1, s7, _, _] = project4(&KForm::<Q>::from_terms(8, 4, [(*mi, q(1))]));
        let s = s1.add(&s7).to_dense();
        let p = canonical_psi::<Q>().to_dense();
        let mut row = Vec::new();
        for m in 0..8 {
            for i in 0..8 {
                let mut acc = q(0);
                for j in 0..8 {
                    for k in 0..8 {
                        for l in 0..8 {
                            acc = acc + s.get(&[i, j, k, l]).clone() * p.get(&[m, j, k, l]).clone();
                        }
                    }
                }
                row.push(acc);
            }
        }
        rows.push(row);
    }
    assert_eq!(rank(rows, EXACT), 8);
}

#[test]
fn cartan_extension_values() {
    let (g2, ch) = cartan8();
    let t = KForm::from_labels(8, 3, &[(1, &[2, 3, 4]), (1, &[5, 6, 7])]);
    assert_eq!(ch.torsion(), &t);
    assert_eq!(
        ch.torsion(),
        &lift(&g2.characteristic_torsion(EXACT).unwrap())
    );
    assert_eq!(
        ch.theta,
        KForm::from_labels(8, 1, &[(6, &[5]), (-6, &[4])]).scale(&Q::new(1, 7))
    );
    assert!(!ch.geometry.algebra.ce_d(&ch.theta).is_zero());
    assert!(ch.geometry.data.is_parallel());
    assert!(ch.geometry.curvature.is_flat());
    assert!(ch
        .geometry
        .connection
        .covariant_derivative_form(ch.structure.psi())
        .is_zero());
    assert!(ch.geometry.data.dt.is_zero());
    assert!(ch.hull_instanton().is_instanton(EXACT));
    assert_eq!(torsion_oracle(&ch.geometry.algebra), t);
    assert_no_failures(&ch);
    for c in extension_checks(&g2, &ch, EXACT).unwrap() {
        assert!(!c.failed(), "{}", c.name);
    }
}

#[test]
fn parallel_torsion_with_non_closed_lee_form() {
    let (_, ch) = cartan8();
    let th = ch.theorem_checks(EXACT);
    let get = |n: &str| th.iter().find(|c| c.name == n).unwrap().clone();
    assert_eq!(
        get("spin7.theorem.parallel_torsion_consequences").verdict,
        Verdict::Pass
    );
    assert_eq!(
        get("spin7.theorem.instanton_coclosed_torsion").verdict,
        Verdict::Pass
    );
    let closed = get("spin7.theorem.instanton_closed_lee_form_parallel");
    assert_eq!(closed.verdict, Verdict::Vacuous);
    assert!(closed.hypotheses.contains(&"d_theta=0=false".to_string()));
    assert_eq!(
        get("hull.theorem.closed_torsion_gives_instanton").verdict,
        Verdict::Pass
    );
    assert_eq!(
        get("hull.theorem.instanton_gives_closed_torsion").verdict,
        Verdict::Pass
    );
}

#[test]
fn lee_form_of_extension_picks_up_the_lambda_term() {
    let fam = integrable_subfamily(&Family::<Q>::two_step_nilpotent(7, 4), EXACT);
    let t: Vec<Q> = (0..fam.len()).map(|a| q((a as i64 % 3) - 1)).collect();
    let g2 = G2Structure::new(fam.algebra(&t)).unwrap();
    assert_eq!(g2.lambda(), Q::new(-1, 3));
    let ch = Spin7Structure::extend_g2(&g2, EXACT)
        .unwrap()
        .characteristic()
        .unwrap();
    // θ_0 = −(1/7)T_jklΨ_jkl0 = −(1/7)T_jklφ_jkl = −(6/7)λ.
    assert_eq!(ch.theta, KForm::unit(8, 0).scale(&Q::new(2, 7)));
    assert_eq!(torsion_oracle(&ch.geometry.algebra), *ch.torsion());
    let checks = extension_checks(&g2, &ch, EXACT).unwrap();
    for c in &checks {
        assert!(!c.failed(), "{}", c.name);
    }
    assert_eq!(checks[2].value.as_deref(), Some("false"));
    assert_no_failures(&ch);
}

#[test]
fn non_integrable_g2_structure_cannot_be_extended() {
    let g2 = G2Structure::new(nilpotent(7, 2, &[-1])).unwrap();
    assert!(Spin7Structure::extend_g2(&g2, EXACT).is_err());
}

#[test]
fn abelian_structure_has_no_torsion() {
    let ch = Spin7Structure::new(LieAlgebra::<Q>::abelian(8))
        .unwrap()
        .characteristic()
        .unwrap();
    assert!(ch.torsion().is_zero() && ch.theta.is_zero());
    assert!(ch.geometry.ricci().is_zero());
    assert!(spin7_instanton_check(&ch.geometry.curvature).is_instanton(EXACT));
    assert_no_failures(&ch);
}

#[test]
fn levi_civita_of_extended_algebra_is_not_an_instanton() {
    let alg = su2_pair().prepend_abelian();
    let r = curvature(&alg, &alg.levi_civita());
    assert!(!spin7_instanton_check(&r).is_instanton(EXACT));
}

#[test]
fn hull_converse_is_asserted_only_on_unimodular_algebras() {
    let ch = Spin7Structure::new(diagonal_solvable(&[1, 0, 0, 0, 0, 0, 2]))
        .unwrap()
        .characteristic()
        .unwrap();
    let c = ch
        .hull_checks(EXACT)
        .into_iter()
        .find(|c| c.name == "hull.theorem.instanton_gives_closed_torsion")
        .unwrap();
    assert_eq!(c.status, Status::InstanceConsistentOnly);
}

fn member(fam: &Family<Q>, coeffs: &[i64]) -> LieAlgebra<Q> {
    let t: Vec<Q> = (0..fam.len())
        .map(|a| q(coeffs[a % coeffs.len()]))
        .collect();
    fam.algebra(&t)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn two_form_projections_satisfy_contraction_equations(c in proptest::collection::vec(-3i64..=3, 28)) {
        let alpha = form(8, 2, &c);
        let (a7, a21) = project2(&alpha);
        let p = canonical_psi::<Q>().to_dense();
        let (d7, d21) = (a7.to_dense(), a21.to_dense());
        for k in 0..8 {
            for l in 0..8 {
                let (mut s7, mut s21) = (q(0), q(0));
                for i in 0..8 {
                    for j in 0..8 {
                        s7 = s7 + d7.get(&[i, j]).clone() * p.get(&[i, j, k, l]).clone();
                        s21 = s21 + d21.get(&[i, j]).clone() * p.get(&[i, j, k, l]).clone();
                    }
                }
                prop_assert_eq!(s7, q(-6) * d7.get(&[k, l]).clone());
                prop_assert_eq!(s21, q(2) * d21.get(&[k, l]).clone());
            }
        }
        prop_assert_eq!(a7.add(&a21), alpha);
    }

    #[test]
    fn anti_self_dual_forms_are_annihilated_by_omega(c in proptest::collection::vec(-3i64..=3, 70)) {
        let s = form(8, 4, &c);
        let asd = s.sub(&s.hodge());
        prop_assert!(omega(&asd).is_zero());
    }

    #[test]
    fn torsion_formula_matches_oracle_on_nilpotent_algebras(c in proptest::collection::vec(-2i64..=2, 1..20)) {
        let alg = member(&Family::two_step_nilpotent(8, 5), &c);
        let s = Spin7Structure::new(alg.clone()).unwrap();
        prop_assert_eq!(s.torsion(), torsion_oracle(&alg));
        assert_no_failures(&s.characteristic().unwrap());
    }

    #[test]
    fn torsion_formula_matches_oracle_on_almost_abelian_algebras(c in proptest::collection::vec(-2i64..=2, 1..20)) {
        let alg = member(&Family::almost_abelian(8), &c);
        let s = Spin7Structure::new(alg.clone()).unwrap();
        prop_assert_eq!(s.torsion(), torsion_oracle(&alg));
        assert_no_failures(&s.characteristic().unwrap());
    }

    #[test]
    fn extensions_of_integrable_structures_pass(split in 3usize..=5, c in proptest::collection::vec(-2i64..=2, 1..10)) {
        let fam = integrable_subfamily(&Family::<Q>::two_step_nilpotent(7, split), EXACT);
        let g2 = G2Structure::new(member(&fam, &c)).unwrap();
        let ch = Spin7Structure::extend_g2(&g2, EXACT).unwrap().characteristic().unwrap();
        for chk in extension_checks(&g2, &ch, EXACT).unwrap() {
            prop_assert!(!chk.failed(), "{}", chk.name);
        }
        assert_no_failures(&ch);
    }
}
