//! Soundness sweeps: both sides of a rule must denote the same matrix for
//! every leg count and every sampled parameter value.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::angle::{Angle, Binding};
use crate::diagram::NodeKind;
use crate::rewrite::{Constraint, Domain, Legs, RewriteRule, Side};
use crate::semantics::{check_equal, Equality, Mode, DEFAULT_TOL};

/// Instantiations whose boundary exceeds this many wires are skipped.
pub const BOUNDARY_CAP: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyConfig {
    /// Largest count tried for each leg/link variable.
    pub max_arity: usize,
    /// Random real samples per rule with real parameters.
    pub float_samples: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { max_arity: 3, float_samples: 25, seed: 0, tol: DEFAULT_TOL }
    }
}

/// One instantiation that did not check out.
#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub legs: Legs,
    pub bind: Binding,
    pub mode: Mode,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SoundnessReport {
    pub rule: String,
    /// Number of instantiations compared.
    pub checked: usize,
    pub failures: Vec<Failure>,
}

impl SoundnessReport {
    pub fn is_sound(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every admissible assignment of leg counts up to `max`.
fn leg_combos(rule: &RewriteRule, max: usize) -> Vec<Legs> {
    let mut combos = vec![Legs::new()];
    for (var, mult) in rule.vars() {
        let hi = max.max(mult.min());
        combos = combos
            .into_iter()
            .flat_map(|c| {
                let var = var.clone();
                (mult.min()..=hi).map(move |n| {
                    let mut c = c.clone();
                    c.insert(var.clone(), n);
                    c
                })
            })
            .collect();
    }
    combos
}

fn exact_bindings(params: &BTreeMap<String, Domain>) -> Vec<Binding> {
    let mut out = vec![Binding::new()];
    for (name, dom) in params {
        out = out
            .into_iter()
            .flat_map(|b| {
                dom.grid().into_iter().map(move |a| {
                    let mut b = b.clone();
                    b.insert(name.clone(), a);
                    b
                })
            })
            .collect();
    }
    out
}

/// Stable per-rule seed so reports do not depend on rule order.
fn rule_seed(seed: u64, name: &str) -> u64 {
    name.bytes().fold(seed ^ 0x9e37_79b9_7f4a_7c15, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

fn float_bindings(rule: &RewriteRule, cfg: &VerifyConfig) -> Vec<Binding> {
    let mut rng = ChaCha8Rng::seed_from_u64(rule_seed(cfg.seed, &rule.name));
    let real: Vec<&String> = rule.params.iter().filter(|(_, d)| **d == Domain::Real).map(|(k, _)| k).collect();
    if real.is_empty() {
        return vec![];
    }
    (0..cfg.float_samples)
        .map(|_| match rule.constraint {
            Some(Constraint::CosineSum) => cosine_sum_sample(&mut rng),
            None => real.iter().map(|k| ((*k).clone(), Angle::float(rng.gen_range(0.0..2.0 * PI)))).collect(),
        })
        .collect()
}

/// Random `θ₁, θ₂, α, β` with `θ₃, γ` solving
/// `2e^{iθ₃}cos γ = e^{iθ₁}cos α + e^{iθ₂}cos β`.
fn cosine_sum_sample(rng: &mut ChaCha8Rng) -> Binding {
    let mut draw = || rng.gen_range(0.0..2.0 * PI);
    let (t1, t2, a, b) = (draw(), draw(), draw(), draw());
    let s = num_complex::Complex64::from_polar(a.cos(), t1) + num_complex::Complex64::from_polar(b.cos(), t2);
    let t3 = s.arg();
    let g = (s.norm() / 2.0).min(1.0).acos();
    [("theta1", t1), ("theta2", t2), ("theta3", t3), ("alpha", a), ("beta", b), ("gamma", g)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), Angle::float(v)))
        .collect()
}

fn check_one(rule: &RewriteRule, legs: &Legs, bind: &Binding, mode: Mode, tol: f64) -> Option<Failure> {
    let fail = |detail: String| Some(Failure { legs: legs.clone(), bind: bind.clone(), mode, detail });
    let (l, r) = match rule.instantiate(legs, bind) {
        Ok(p) => p,
        Err(e) => return fail(format!("instantiation failed: {e}")),
    };
    match check_equal(&l, &r, mode, tol) {
        Ok(Equality::Equal) => None,
        Ok(Equality::NotEqual { row, col, left, right }) => {
            fail(format!("entry ({row},{col}): {} vs {}", fmt_c(left.to_complex()), fmt_c(right.to_complex())))
        }
        Ok(Equality::EqualUpToGlobalScalar(s)) => fail(format!("equal only up to the scalar {}", fmt_c(s))),
        Err(e) => fail(format!("evaluation failed: {e}")),
    }
}

fn fmt_c(z: num_complex::Complex64) -> String {
    format!("{:.6}{:+.6}i", z.re, z.im)
}

/// Compares both sides over all leg counts up to `cfg.max_arity` (boundary
/// at most [`BOUNDARY_CAP`]): exactly on the π/4 grid (or `{0, π}`), and
/// numerically on seeded random samples for real parameters. Constrained
/// rules are sampled numerically only.
pub fn verify_rule_soundness(rule: &RewriteRule, cfg: &VerifyConfig) -> SoundnessReport {
    let mut jobs: Vec<(Legs, Binding, Mode)> = Vec::new();
    for legs in leg_combos(rule, cfg.max_arity) {
        let (n, m) = rule.lhs.instantiate(&legs).arity();
        if n + m > BOUNDARY_CAP {
            continue;
        }
        if rule.constraint.is_none() {
            for b in exact_bindings(&rule.params) {
                jobs.push((legs.clone(), b, Mode::Exact));
            }
        }
        for b in float_bindings(rule, cfg) {
            jobs.push((legs.clone(), b, Mode::Float));
        }
    }
    let failures: Vec<Failure> =
        jobs.par_iter().filter_map(|(l, b, m)| check_one(rule, l, b, *m, cfg.tol)).collect();
    SoundnessReport { rule: rule.name.clone(), checked: jobs.len(), failures }
}

/// A single-site corruption of a rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Adds π/2 to a spider's angle.
    ShiftAngle,
    /// Exchanges Z and X.
    SwapColour,
    /// Exchanges a Hadamard and a triangle.
    HadamardTriangle,
    /// Exchanges the white and black 1→1 ZW nodes.
    WhiteBlack,
}

fn mutations_of(kind: &NodeKind) -> Vec<Mutation> {
    match kind {
        NodeKind::Z { .. } | NodeKind::X { .. } => vec![Mutation::ShiftAngle, Mutation::SwapColour],
        NodeKind::Hadamard | NodeKind::Triangle => vec![Mutation::HadamardTriangle],
        NodeKind::ZWhite11 | NodeKind::WBlack11 => vec![Mutation::WhiteBlack],
        _ => vec![],
    }
}

fn mutate_kind(kind: &NodeKind, m: Mutation) -> NodeKind {
    match (kind, m) {
        (NodeKind::Z { angle, inputs, outputs }, Mutation::ShiftAngle) => {
            NodeKind::z(angle.add(&Angle::quarter(2)), *inputs, *outputs)
        }
        (NodeKind::X { angle, inputs, outputs }, Mutation::ShiftAngle) => {
            NodeKind::x(angle.add(&Angle::quarter(2)), *inputs, *outputs)
        }
        (NodeKind::Z { angle, inputs, outputs }, Mutation::SwapColour) => NodeKind::x(angle.clone(), *inputs, *outputs),
        (NodeKind::X { angle, inputs, outputs }, Mutation::SwapColour) => NodeKind::z(angle.clone(), *inputs, *outputs),
        (NodeKind::Hadamard, _) => NodeKind::Triangle,
        (NodeKind::Triangle, _) => NodeKind::Hadamard,
        (NodeKind::ZWhite11, _) => NodeKind::WBlack11,
        (NodeKind::WBlack11, _) => NodeKind::ZWhite11,
        (k, _) => k.clone(),
    }
}

/// A description of where a mutation was applied.
#[derive(Clone, Debug, PartialEq)]
pub struct MutationSite {
    pub rule: String,
    /// `"lhs"` or `"rhs"`.
    pub side: &'static str,
    pub node: usize,
    pub mutation: Mutation,
}

/// Every single-node corruption available in `rule`.
pub fn mutation_sites(rule: &RewriteRule) -> Vec<MutationSite> {
    let mut out = Vec::new();
    for (side, s) in [("lhs", &rule.lhs), ("rhs", &rule.rhs)] {
        for (id, k) in &s.diagram.nodes {
            for m in mutations_of(k) {
                out.push(MutationSite { rule: rule.name.clone(), side, node: *id, mutation: m });
            }
        }
    }
    out
}

pub fn apply_mutation(rule: &RewriteRule, site: &MutationSite) -> RewriteRule {
    let mut r = rule.clone();
    let side: &mut Side = if site.side == "lhs" { &mut r.lhs } else { &mut r.rhs };
    if let Some(k) = side.diagram.nodes.get_mut(&site.node) {
        *k = mutate_kind(k, site.mutation);
    }
    r
}

/// A seeded random mutation site in `rule`, if it has any mutable node.
pub fn random_mutation(rule: &RewriteRule, seed: u64) -> Option<MutationSite> {
    let sites = mutation_sites(rule);
    if sites.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Some(sites[rng.gen_range(0..sites.len())].clone())
}
