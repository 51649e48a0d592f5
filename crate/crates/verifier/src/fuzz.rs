//! Seeded random instances for the universal identities and the
//! structure-specific formulas and implications.

use holonomy_core::exterior::basis;
use holonomy_core::families::{heisenberg, Family};
use holonomy_core::g2::integrable_subfamily;
use holonomy_core::spin7::extension_checks;
use holonomy_core::{
    Check, G2Structure, KForm, LieAlgebra, Rational, Spin7Structure, Tolerance, TorsionGeometry,
    Verdict, VerificationReport,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::suite::record_conventions;

const TOL: Tolerance = Tolerance::Exact;

#[derive(Clone, Copy, Debug)]
pub struct FuzzConfig {
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    /// Perturb one curvature entry of every random connection.
    pub corrupt: bool,
}

/// Families the structured instances are drawn from.
struct Families {
    integrable_g2: Vec<Family<Rational>>,
    nilpotent8: Vec<Family<Rational>>,
    almost_abelian8: Family<Rational>,
}

impl Families {
    fn new(dim: usize) -> Self {
        let integrable_g2 = [
            Family::two_step_nilpotent(7, 3),
            Family::two_step_nilpotent(7, 4),
            Family::two_step_nilpotent(7, 5),
            Family::almost_abelian(7),
        ]
        .iter()
        .map(|f| integrable_subfamily(f, TOL))
        .collect();
        let nilpotent8 = if dim == 8 {
            (3..=6).map(|s| Family::two_step_nilpotent(8, s)).collect()
        } else {
            Vec::new()
        };
        Families {
            integrable_g2,
            nilpotent8,
            almost_abelian8: Family::almost_abelian(8),
        }
    }
}

fn small(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

fn sparse_params(rng: &mut ChaCha8Rng, len: usize, density: f64) -> Vec<Rational> {
    (0..len)
        .map(|_| {
            if rng.gen_bool(density) {
                Rational::integer(rng.gen_range(-2..=2))
            } else {
                Rational::integer(0)
            }
        })
        .collect()
}

fn random_algebra(rng: &mut ChaCha8Rng, n: usize) -> (&'static str, LieAlgebra<Rational>) {
    match rng.gen_range(0..3) {
        0 => ("abelian", LieAlgebra::abelian(n)),
        1 => ("heisenberg", heisenberg(n, rng.gen_range(1..=(n - 1) / 2))),
        _ => {
            let fam = Family::two_step_nilpotent(n, rng.gen_range(3..=n - 2));
            let t = sparse_params(rng, fam.len(), 0.3);
            ("nilpotent", fam.algebra(&t))
        }
    }
}

fn random_torsion(rng: &mut ChaCha8Rng, n: usize) -> KForm<Rational> {
    let mut terms = Vec::new();
    for mi in basis(n, 3) {
        if rng.gen_bool(0.4) {
            terms.push((*mi, small(rng)));
        }
    }
    KForm::from_terms(n, 3, terms)
}

/// A dense draw or one supported on at most two generators.
fn family_params(rng: &mut ChaCha8Rng, len: usize) -> Vec<Rational> {
    if rng.gen_bool(0.5) {
        return sparse_params(rng, len, 0.5);
    }
    let mut t = vec![Rational::integer(0); len];
    for _ in 0..rng.gen_range(1..=2) {
        t[rng.gen_range(0..len)] = Rational::integer(if rng.gen_bool(0.5) { 1 } else { -1 });
    }
    t
}

fn integrable_g2(rng: &mut ChaCha8Rng, fams: &Families) -> G2Structure<Rational> {
    let fam = &fams.integrable_g2[rng.gen_range(0..fams.integrable_g2.len())];
    let t = family_params(rng, fam.len());
    G2Structure::new(fam.algebra(&t)).expect("dimension 7")
}

/// All checks for one trial.
fn trial(cfg: &FuzzConfig, fams: &Families, index: usize) -> (Vec<&'static str>, Vec<Check>) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let n = cfg.dim;
    let mut kinds = Vec::new();
    let mut checks = Vec::new();

    let (kind, alg) = random_algebra(&mut rng, n);
    kinds.push(kind);
    let t = random_torsion(&mut rng, n);
    let mut g = TorsionGeometry::new(alg, &t).expect("skew torsion of matching dimension");
    if cfg.corrupt {
        g.curvature.bump([0, 1, 2, 3], &Rational::integer(1));
    }
    checks.extend(g.identity_suite(TOL));

    if n == 7 {
        kinds.push("integrable-g2");
        let ch = integrable_g2(&mut rng, fams)
            .characteristic(TOL)
            .expect("sampled from the integrable subfamily");
        checks.extend(ch.formula_checks(TOL));
        checks.extend(ch.theorem_checks(TOL));
    } else if index.is_multiple_of(2) {
        let alg = match rng.gen_range(0..3) {
            0 => {
                let fam = &fams.nilpotent8[rng.gen_range(0..fams.nilpotent8.len())];
                kinds.push("spin7-nilpotent");
                fam.algebra(&family_params(&mut rng, fam.len()))
            }
            1 => {
                let fam = &fams.almost_abelian8;
                kinds.push("spin7-almost-abelian");
                fam.algebra(&family_params(&mut rng, fam.len()))
            }
            _ => {
                kinds.push("spin7-heisenberg");
                heisenberg(8, rng.gen_range(1..=3))
            }
        };
        let ch = Spin7Structure::new(alg)
            .expect("dimension 8")
            .characteristic()
            .expect("the torsion connection exists in dimension 8");
        checks.extend(ch.formula_checks(TOL));
        checks.extend(ch.theorem_checks(TOL));
    } else {
        kinds.push("spin7-extension");
        let g2 = integrable_g2(&mut rng, fams);
        let ch = Spin7Structure::extend_g2(&g2, TOL)
            .expect("base is integrable")
            .characteristic()
            .expect("the torsion connection exists in dimension 8");
        checks.extend(ch.formula_checks(TOL));
        checks.extend(extension_checks(&g2, &ch, TOL).expect("base is integrable"));
        checks.extend(ch.theorem_checks(TOL));
    }
    (kinds, checks)
}

/// Per-name summary over all trials.
struct Aggregate {
    first: Check,
    worst: (f64, String),
    pass: usize,
    fail: usize,
    vacuous: usize,
    info: usize,
    first_failure: Option<usize>,
}

fn magnitude(residual: &str) -> f64 {
    residual
        .parse::<Rational>()
        .map(|r| holonomy_core::Scalar::to_f64(&r).abs())
        .or_else(|_| residual.parse::<f64>().map(f64::abs))
        .unwrap_or(f64::INFINITY)
}

impl Aggregate {
    fn new(c: &Check) -> Self {
        Aggregate {
            first: c.clone(),
            worst: (0.0, "0".to_string()),
            pass: 0,
            fail: 0,
            vacuous: 0,
            info: 0,
            first_failure: None,
        }
    }

    fn add(&mut self, c: &Check, trial: usize) {
        let m = magnitude(&c.residual);
        if c.verdict != Verdict::Vacuous && m > self.worst.0 {
            self.worst = (m, c.residual.clone());
        }
        if c.failed() {
            self.fail += 1;
            self.first_failure.get_or_insert(trial);
            return;
        }
        match c.verdict {
            Verdict::Pass => self.pass += 1,
            Verdict::Vacuous => self.vacuous += 1,
            Verdict::Fail | Verdict::Info => self.info += 1,
        }
    }

    fn finish(self) -> Check {
        let verdict = if self.fail > 0 {
            Verdict::Fail
        } else if self.pass > 0 {
            Verdict::Pass
        } else if self.info > 0 {
            Verdict::Info
        } else {
            Verdict::Vacuous
        };
        let strip = |v: &[String]| -> Vec<String> {
            v.iter()
                .map(|h| {
                    h.rsplit_once('=')
                        .map_or(h.as_str(), |(n, _)| n)
                        .to_string()
                })
                .collect()
        };
        let mut value = format!(
            "pass={} fail={} vacuous={} info={}",
            self.pass, self.fail, self.vacuous, self.info
        );
        if let Some(t) = self.first_failure {
            value.push_str(&format!(" first_failure=trial {t}"));
        }
        Check {
            name: self.first.name,
            residual: self.worst.1,
            verdict,
            anchor: self.first.anchor,
            status: self.first.status,
            hypotheses: strip(&self.first.hypotheses),
            conclusions: strip(&self.first.conclusions),
            value: Some(value),
        }
    }
}

pub fn fuzz(cfg: &FuzzConfig) -> VerificationReport {
    assert!(
        cfg.dim == 7 || cfg.dim == 8,
        "fuzz dimension must be 7 or 8"
    );
    let mut rep = VerificationReport::new(
        format!(
            "fuzz dim={} trials={} seed={}",
            cfg.dim, cfg.trials, cfg.seed
        ),
        "exact",
    );
    if cfg.trials == 0 {
        return rep;
    }
    record_conventions(&mut rep, cfg.dim);
    rep.convention("generator", "ChaCha8, one stream per trial");
    if cfg.corrupt {
        rep.convention("injected_fault", "one curvature component increased by 1");
    }
    let fams = Families::new(cfg.dim);
    let results: Vec<_> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| trial(cfg, &fams, i))
        .collect();

    let mut order: Vec<String> = Vec::new();
    let mut aggs: std::collections::HashMap<String, Aggregate> = Default::default();
    let mut kinds: std::collections::BTreeMap<&str, usize> = Default::default();
    for (i, (ks, checks)) in results.iter().enumerate() {
        for k in ks {
            *kinds.entry(k).or_default() += 1;
        }
        for c in checks {
            let a = aggs.entry(c.name.clone()).or_insert_with(|| {
                order.push(c.name.clone());
                Aggregate::new(c)
            });
            a.add(c, i);
        }
    }
    let summary: Vec<String> = kinds.iter().map(|(k, v)| format!("{k}={v}")).collect();
    rep.push(Check::info(
        "fuzz.instances",
        "instance kinds",
        summary.join(" "),
    ));
    for name in order {
        rep.push(aggs.remove(&name).expect("recorded").finish());
    }
    rep
}
