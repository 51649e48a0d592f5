use holonomy_core::Verdict;
use holonomy_verifier::corpus::load;
use holonomy_verifier::{run_suite, run_with, ScalarMode};

fn stage(name: &str) -> usize {
    let prefixes: [&[&str]; 7] = [
        &["algebra."],
        &[
            "g2.class.",
            "spin7.class.",
            "spin7.extension.base_integrable",
        ],
        &["quantity."],
        &[
            "connection.",
            "curvature.",
            "sigma.",
            "torsion.",
            "ricci.",
            "hull.curvature_relation",
        ],
        &["g2.", "spin7."],
        &["instanton."],
        &["g2.theorem.", "spin7.theorem.", "hull.theorem."],
    ];
    if name.starts_with("expect.") {
        return prefixes.len();
    }
    (0..prefixes.len())
        .flat_map(|i| prefixes[i].iter().map(move |p| (p.len(), i)))
        .filter(|&(len, i)| {
            prefixes[i]
                .iter()
                .any(|p| p.len() == len && name.starts_with(p))
        })
        .max()
        .map(|(_, i)| i)
        .unwrap_or_else(|| panic!("unclassified check {name}"))
}

#[test]
fn stages_run_in_order() {
    for name in ["cartan7", "cartan8", "abelian8"] {
        let rep = run_suite(&load(name));
        let stages: Vec<usize> = rep.checks.iter().map(|c| stage(&c.name)).collect();
        assert!(
            stages.windows(2).all(|w| w[0] <= w[1]),
            "{name}: {stages:?}"
        );
        assert_eq!(stages.first(), Some(&0));
    }
}

#[test]
fn float_mode_agrees_with_exact_mode() {
    let m = load("cartan8");
    let exact = run_with(&m, ScalarMode::Exact, 0.0);
    let float = run_with(&m, ScalarMode::Float, 1e-9);
    assert_eq!(exact.checks.len(), float.checks.len());
    for (a, b) in exact.checks.iter().zip(&float.checks) {
        assert_eq!(a.name, b.name);
        assert_eq!(a.verdict, b.verdict, "{}", a.name);
    }
    assert_eq!(float.mode, "float");
}

#[test]
fn every_check_carries_an_anchor() {
    let rep = run_suite(&load("cartan8"));
    assert!(rep.checks.iter().all(|c| !c.anchor.is_empty()));
    assert!(rep.checks.iter().all(|c| c.verdict != Verdict::Fail));
}

#[test]
fn repeated_runs_are_identical() {
    let m = load("heisenberg5_t2");
    assert_eq!(run_suite(&m), run_suite(&m));
}
