use holonomy_core::{KForm, Rational, Scalar};
use holonomy_verifier::corpus::{load, BundledResolver};
use holonomy_verifier::manifest::{
    parse_equation, parse_form, Expected, ManifestError, StructureKind,
};
use holonomy_verifier::parse_manifest_str;
use proptest::prelude::*;

fn parse(text: &str) -> Result<holonomy_verifier::Manifest, ManifestError> {
    parse_manifest_str(text, "test.toml", &BundledResolver)
}

fn syntax_position(e: ManifestError) -> (usize, usize, String) {
    match e {
        ManifestError::Syntax {
            line,
            column,
            message,
            ..
        } => (line, column, message),
        other => panic!("expected a syntax error, got {other}"),
    }
}

#[test]
fn cartan7_gives_two_su2_blocks_and_a_line() {
    let alg = load("cartan7").algebra::<Rational>();
    let one = Rational::integer(1);
    // [e_i, e_j] = −c with de^k(e_i, e_j) = c, read off each block's equations.
    let brackets = [
        (1, 2, 0),
        (2, 0, 1),
        (0, 1, 2),
        (4, 5, 3),
        (5, 3, 4),
        (3, 4, 5),
    ];
    for i in 0..7 {
        for j in 0..7 {
            for k in 0..7 {
                let expected = if brackets.contains(&(i, j, k)) {
                    -one.clone()
                } else if brackets.contains(&(j, i, k)) {
                    one.clone()
                } else {
                    Rational::integer(0)
                };
                assert_eq!(alg.constant(i, j, k), &expected, "c_{i}{j}^{k}");
            }
        }
    }
    assert!(alg.is_unimodular());
}

#[test]
fn abelian_manifests_are_abelian() {
    assert!(load("abelian7").algebra::<Rational>().is_abelian());
    assert!(load("abelian8").algebra::<f64>().is_abelian());
}

#[test]
fn extension_prepends_a_closed_direction() {
    let m = load("cartan8");
    let StructureKind::Spin7Extension(base) = &m.structure else {
        panic!("cartan8 is an extension");
    };
    assert_eq!(base.name, "cartan7");
    assert!(m.differentials[0].is_zero());
    assert_eq!(m.differentials[1].render(0), "e23");
    assert_eq!(m.differentials[2].render(0), "-e13");
}

#[test]
fn expectations_are_typed() {
    let m = load("cartan7");
    assert_eq!(
        m.expectations["torsion_norm"],
        Expected::Scalar(Rational::integer(12))
    );
    assert_eq!(m.expectations["flat"], Expected::Flag(true));
    let Expected::Form(t) = &m.expectations["torsion"] else {
        panic!("torsion is a form");
    };
    assert_eq!(
        t,
        &KForm::from_labels(7, 3, &[(1, &[1, 2, 3]), (1, &[4, 5, 6])])
    );
}

#[test]
fn repeated_index_error_points_into_the_string() {
    let text =
        "name = \"x\"\ndim = 7\nstructure = \"g2\"\nstructure_equations = [\"d e1 = e11\"]\n";
    let (line, column, msg) = syntax_position(parse(text).unwrap_err());
    assert_eq!((line, column), (4, 33));
    assert!(msg.contains("repeated index"));
}

#[test]
fn toml_syntax_errors_carry_position() {
    let (line, _, _) = syntax_position(parse("name = \"x\"\ndim = \n").unwrap_err());
    assert_eq!(line, 2);
}

#[test]
fn unknown_fields_and_values_are_rejected() {
    let base = "name = \"x\"\ndim = 7\nstructure = \"g2\"\n";
    assert!(parse(&format!("{base}colour = 1\n")).is_err());
    let (_, _, msg) =
        syntax_position(parse(&format!("{base}scalar_mode = \"fixed\"\n")).unwrap_err());
    assert!(msg.contains("scalar_mode"));
    let (_, _, msg) =
        syntax_position(parse(&format!("{base}[expectations]\ncharge = 1\n")).unwrap_err());
    assert!(msg.contains("unknown expectation"));
    let (_, _, msg) =
        syntax_position(parse(&format!("{base}[expectations]\nflat = 1\n")).unwrap_err());
    assert!(msg.contains("true or false"));
    let (_, _, msg) =
        syntax_position(parse(&format!("{base}inject_fault = \"torsion\"\n")).unwrap_err());
    assert!(msg.contains("unknown fault"));
}

#[test]
fn dimension_must_match_structure() {
    let (_, _, msg) =
        syntax_position(parse("name = \"x\"\ndim = 8\nstructure = \"g2\"\n").unwrap_err());
    assert!(msg.contains("needs dim 7"));
    let (_, _, msg) =
        syntax_position(parse("name = \"x\"\ndim = 6\nstructure = \"g2\"\n").unwrap_err());
    assert!(msg.contains("7 or 8"));
}

#[test]
fn duplicate_and_extension_equations_are_rejected() {
    let text = "name = \"x\"\ndim = 7\nstructure = \"g2\"\nstructure_equations = [\"d e1 = e23\", \"d e1 = e45\"]\n";
    assert!(syntax_position(parse(text).unwrap_err())
        .2
        .contains("duplicate"));
    let text = "name = \"x\"\ndim = 8\nstructure = \"spin7-extension-of cartan7\"\nstructure_equations = [\"d e0 = e12\"]\n";
    assert!(syntax_position(parse(text).unwrap_err())
        .2
        .contains("base manifest"));
    let text = "name = \"x\"\ndim = 8\nstructure = \"spin7-extension-of abelian8\"\n";
    assert!(matches!(
        parse(text).unwrap_err(),
        ManifestError::Invalid { .. }
    ));
}

#[test]
fn jacobi_failure_is_reported() {
    let text = "name = \"x\"\ndim = 7\nstructure = \"g2\"\nstructure_equations = [\"d e1 = e23\", \"d e2 = e31\", \"d e3 = e12\", \"d e4 = e12\", \"d e5 = e64\"]\n";
    match parse(text) {
        Err(ManifestError::Jacobi { residual, .. }) => assert_ne!(residual, "0"),
        other => panic!("expected a Jacobi failure, got {other:?}"),
    }
}

#[test]
fn forms_accept_rational_coefficients_and_reordering() {
    let f = parse_form("e321 - 1/2*e456 + 3 e127", 7, 3).unwrap();
    assert_eq!(f.render(1), "-e123 + 3*e127 - 1/2*e456");
    assert!(parse_form("0", 8, 1).unwrap().is_zero());
    assert!(parse_form("e1 + e12", 7, 1).is_err());
    assert!(parse_form("", 7, 1).is_err());
}

fn two_form(coeffs: &[i64]) -> KForm<Rational> {
    KForm::from_coefficients(7, 2, coeffs.iter().map(|&c| Rational::new(c, 3)).collect())
}

proptest! {
    #[test]
    fn rendered_equations_parse_back(k in 1usize..=7, coeffs in proptest::collection::vec(-4i64..=4, 21)) {
        let f = two_form(&coeffs);
        let (index, parsed) = parse_equation(&format!("d e{k} = {}", f.render(1)), 7).unwrap();
        prop_assert_eq!(index, k - 1);
        prop_assert_eq!(parsed, f);
    }

    #[test]
    fn float_conversion_agrees_with_exact(coeffs in proptest::collection::vec(-4i64..=4, 21)) {
        let f = two_form(&coeffs);
        let g: KForm<f64> = holonomy_verifier::manifest::convert_form(&f);
        for (a, b) in f.coefficients().iter().zip(g.coefficients()) {
            prop_assert!((a.to_f64() - b).abs() < 1e-15);
        }
    }
}
