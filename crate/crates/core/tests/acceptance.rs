//! The ten acceptance criteria, each reported on one line.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use common::{checks, metamorphic};
use num_complex::Complex64;
use rand::Rng;

use deltazx::circuit::{circuit_to_diagram, Circuit};
use deltazx::lemmas::{control_commutation, lemma, lemmas, proofs, supplementarity};
use deltazx::projector::build_pr;
use deltazx::rewrite::verify::{apply_mutation, random_mutation};
use deltazx::rewrite::{replay_derivation, ruleset, verify_rule_soundness, RewriteRule, VerifyConfig, RULESET_NAMES};
use deltazx::semantics::{interpret, Matrix, Mode};
use deltazx::{Angle, CycloScalar, Diagram, NodeKind};

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn within(out: Outcome, took: Duration, limit: Duration) -> Outcome {
    if out.ok && took > limit {
        fail(format!("{} but took {:.1}s (limit {}s)", out.detail, took.as_secs_f64(), limit.as_secs()))
    } else {
        out
    }
}

fn exact(d: &Diagram) -> Matrix {
    interpret(d, Mode::Exact).unwrap()
}

fn generator_fidelity() -> Outcome {
    let checks: Vec<(&str, Matrix, Matrix)> = vec![
        ("triangle", exact(&Diagram::triangle()), Matrix::from_ints(2, 2, &[1, 1, 0, 1], 0)),
        ("hadamard", exact(&Diagram::hadamard()), Matrix::from_ints(2, 2, &[1, 1, 1, -1], 1)),
        (
            "zw-cross",
            exact(&Diagram::generator(NodeKind::ZwCross)),
            Matrix::from_ints(4, 4, &[1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, -1], 0),
        ),
        ("star", exact(&Diagram::generator(NodeKind::Sqrt2Star)), Matrix::from_ints(1, 1, &[1], 1)),
    ];
    for (name, got, want) in checks {
        if got != want {
            return fail(format!("{name} is {got:?}"));
        }
    }
    for k in 0..8 {
        let got = exact(&Diagram::z(Angle::quarter(k), 0, 0));
        let want = CycloScalar::one().add_ref(&CycloScalar::omega_pow(k));
        if got.exact().map(|m| m.get(0, 0).clone()) != Some(want) {
            return fail(format!("0-legged spider at {k}π/4"));
        }
    }
    pass("Δ, H, zw-cross, star and the eight 0-legged spiders are exact")
}

trait AddRef {
    fn add_ref(&self, o: &Self) -> Self;
}

impl AddRef for CycloScalar {
    fn add_ref(&self, o: &Self) -> Self {
        deltazx::Ring::add(self, o)
    }
}

fn soundness_sweep() -> Outcome {
    let cfg = VerifyConfig { max_arity: 3, float_samples: 25, seed: 0, tol: 1e-9 };
    let mut total = (0, 0);
    for name in RULESET_NAMES {
        let rs = ruleset(name).unwrap();
        for r in &rs.rules {
            let rep = verify_rule_soundness(r, &cfg);
            total.0 += 1;
            total.1 += rep.checked;
            if !rep.is_sound() {
                return fail(format!("{name}/{}: {:?}", r.name, rep.failures[0]));
            }
        }
    }
    pass(format!("{} rule entries across {} rulesets, {} instances, no failures", total.0, RULESET_NAMES.len(), total.1))
}

fn projector() -> Outcome {
    let p2 = exact(&build_pr(2).unwrap());
    if p2 != Matrix::from_ints(4, 4, &[1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1], 0) {
        return fail(format!("P_2 = {p2:?}"));
    }
    let mut rng = common::rng(3);
    for r in 1..=3 {
        let Matrix::Exact(p) = exact(&build_pr(r).unwrap()) else { unreachable!() };
        if p.matmul(&p) != p {
            return fail(format!("P_{r} is not idempotent"));
        }
        for _ in 0..20 {
            let a: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let v = [Complex64::new(1.0, 0.0), Complex64::from_polar(1.0, a)];
            let n = 1usize << r;
            let state: Vec<Complex64> = (0..n).map(|i| (0..r).map(|b| v[(i >> b) & 1]).product()).collect();
            for row in 0..n {
                let got: Complex64 = (0..n).map(|c| p.get(row, c).to_complex() * state[c]).sum();
                if (got - state[row]).norm() > 1e-9 {
                    return fail(format!("P_{r} moves v(α)^⊗{r} at α = {a}"));
                }
            }
        }
    }
    pass("P_2 matches, P_1..P_3 idempotent, Z-states fixed at 20 angles")
}

fn run_seeds(n: u64, f: impl Fn(u64) -> Result<(), String>) -> Result<(), String> {
    (0..n).try_for_each(f)
}

fn functors() -> Outcome {
    for (name, f) in [
        ("[.]_X", checks::zw_to_zx_preserves as fn(u64) -> Result<(), String>),
        ("[.]_W", checks::zx_to_zw_preserves),
        ("round trip", checks::round_trip),
    ] {
        if let Err(e) = run_seeds(200, f) {
            return fail(format!("{name}: {e}"));
        }
    }
    pass("both translations and the round trip are exact on 200 random diagrams each")
}

fn synthesis() -> Outcome {
    match run_seeds(100, checks::synthesis) {
        Ok(()) => pass("100 random matrices synthesised exactly"),
        Err(e) => fail(e),
    }
}

fn toffoli() -> Outcome {
    let c = Circuit::parse("ccx 0 1 2").unwrap();
    let mut entries = vec![0i64; 64];
    for i in 0..8usize {
        let (x, y, z) = (i >> 2 & 1, i >> 1 & 1, i & 1);
        let j = (x << 2) | (y << 1) | ((x & y) ^ z);
        entries[j * 8 + i] = 1;
    }
    if exact(&circuit_to_diagram(&c)) == Matrix::from_ints(8, 8, &entries, 0) {
        pass("ccx evaluates to the Toffoli permutation")
    } else {
        fail("ccx does not evaluate to the Toffoli permutation")
    }
}

fn corollaries() -> Outcome {
    for l in [supplementarity(), control_commutation()] {
        if let Some(b) = l.check_float(25, 1, 1e-9).unwrap() {
            return fail(format!("{} fails at {b:?}", l.name));
        }
    }
    pass("supplementarity and control commutation hold at 25 random angles")
}

fn lemma_corpus() -> Outcome {
    let all = lemmas();
    for l in &all {
        if let Some(b) = l.check().unwrap() {
            return fail(format!("{} {} fails at {b:?}", l.id, l.name));
        }
    }
    let scripts = proofs();
    for (id, d) in &scripts {
        if lemma(id).map(|l| l.lhs != d.start).unwrap_or(true) {
            return fail(format!("script {id} does not start at its statement"));
        }
        let res = replay_derivation(d, &ruleset(&d.ruleset).unwrap()).unwrap();
        if !res.is_valid() {
            return fail(format!("script {id}: {res:?}"));
        }
    }
    if !scripts.iter().any(|(id, _)| *id == "A.1") || scripts.len() < 3 {
        return fail("fewer than three scripts or A.1 missing");
    }
    let ids: Vec<&str> = scripts.iter().map(|(id, _)| *id).collect();
    pass(format!("{} statements exact; scripts {} replay Valid", all.len(), ids.join(", ")))
}

fn metamorphic_semantics() -> Outcome {
    for (name, f) in [
        ("functoriality", metamorphic::functoriality as fn(u64) -> Result<(), String>),
        ("topology", metamorphic::topology),
        ("colour swap", metamorphic::colour_swap),
        ("exact/float", metamorphic::exact_float),
    ] {
        if let Err(e) = run_seeds(500, f) {
            return fail(format!("{name}: {e}"));
        }
    }
    pass("functoriality, topology invariance, colour-swap covariance, exact/float agreement on 500 cases each")
}

/// The mutated side compared with the original side of the same rule: if
/// they agree everywhere the mutation did not corrupt the rule.
fn is_neutral(original: &RewriteRule, mutated: &RewriteRule, side: &str, cfg: &VerifyConfig) -> bool {
    let mut probe = mutated.clone();
    if side == "lhs" {
        probe.rhs = original.lhs.clone();
    } else {
        probe.lhs = original.rhs.clone();
    }
    verify_rule_soundness(&probe, cfg).is_sound()
}

fn mutation_detection() -> Outcome {
    let cfg = VerifyConfig { max_arity: 2, float_samples: 5, seed: 0, tol: 1e-9 };
    let mut catalog: Vec<RewriteRule> = Vec::new();
    for name in RULESET_NAMES {
        for r in ruleset(name).unwrap().rules {
            if !catalog.iter().any(|c| c.name == r.name && c.calculus == r.calculus) {
                catalog.push(r);
            }
        }
    }
    let (mut detected, mut neutral, mut missed) = (0, vec![], vec![]);
    let mut rng = common::rng(10);
    let mut seed = 0u64;
    while detected < 12 && seed < 200 {
        seed += 1;
        let rule = &catalog[rng.gen_range(0..catalog.len())];
        let Some(site) = random_mutation(rule, seed) else { continue };
        let mutated = apply_mutation(rule, &site);
        let label = format!("{}:{}#{}:{:?}", rule.name, site.side, site.node, site.mutation);
        if !verify_rule_soundness(&mutated, &cfg).is_sound() {
            detected += 1;
        } else if is_neutral(rule, &mutated, site.side, &cfg) {
            neutral.push(label);
        } else {
            missed.push(label);
        }
    }
    if !missed.is_empty() {
        return fail(format!("undetected corruptions: {}", missed.join(", ")));
    }
    if detected < 10 {
        return fail(format!("only {detected} corruptions detected"));
    }
    let note = if neutral.is_empty() {
        String::new()
    } else {
        format!("; {} meaning-preserving mutations skipped ({})", neutral.len(), neutral.join(", "))
    };
    pass(format!("{detected} seeded corruptions all detected{note}"))
}

#[test]
fn acceptance() {
    type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);
    let criteria: [Criterion; 10] = [
        ("generator fidelity", generator_fidelity, Some(Duration::from_secs(1))),
        ("soundness sweep", soundness_sweep, Some(Duration::from_secs(300))),
        ("projector P_2", projector, None),
        ("functor properties", functors, Some(Duration::from_secs(120))),
        ("matrix synthesis", synthesis, Some(Duration::from_secs(120))),
        ("Toffoli gadget", toffoli, None),
        ("corollary instances", corollaries, None),
        ("lemma corpus", lemma_corpus, None),
        ("metamorphic semantics", metamorphic_semantics, None),
        ("mutation detection", mutation_detection, None),
    ];
    let mut failed = vec![];
    let mut err = std::io::stderr().lock();
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = f();
        let took = t.elapsed();
        let out = match limit {
            Some(l) => within(out, took, *l),
            None => out,
        };
        let verdict = if out.ok { "PASS" } else { "FAIL" };
        writeln!(err, "criterion {:>2} {verdict} {name} ({:.2}s): {}", i + 1, took.as_secs_f64(), out.detail).unwrap();
        if !out.ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
