//! Derived equations of the ΔZX-calculus: statements, semantic checks and
//! replayable proof scripts for a selection of them.
//!
//! Statements may mention angle variables; they are checked exactly for
//! every assignment on the π/4 grid.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::angle::{Angle, Binding};
use crate::diagram::{Builder, Calculus, Diagram, Pin};
use crate::error::Result;
use crate::gadgets::{self, cnot, copy, inv_sqrt2, not, sqrt2, triangle_t, two};
use crate::rewrite::matcher::find_matches_with;
use crate::rewrite::{ruleset, Derivation, Dir, Domain, Legs, Step};
use crate::semantics::{check_equal, Mode, DEFAULT_TOL};

const ZX: Calculus = Calculus::Zx;

/// An equation between two diagrams of the same type.
#[derive(Clone, Debug)]
pub struct Lemma {
    /// Short identifier, e.g. `"A.3"`.
    pub id: &'static str,
    pub name: &'static str,
    /// Angle variables occurring in the sides.
    pub params: Vec<&'static str>,
    pub lhs: Diagram,
    pub rhs: Diagram,
}

impl Lemma {
    fn new(id: &'static str, name: &'static str, lhs: Diagram, rhs: Diagram) -> Lemma {
        Lemma { id, name, params: vec![], lhs, rhs }
    }

    fn with_params(mut self, params: &[&'static str]) -> Lemma {
        self.params = params.to_vec();
        self
    }

    /// Every assignment of the parameters to multiples of π/4.
    pub fn grid(&self) -> Vec<Binding> {
        let mut out = vec![Binding::new()];
        for p in &self.params {
            out = out
                .into_iter()
                .flat_map(|b| {
                    Domain::Quarter.grid().into_iter().map(move |a| {
                        let mut b = b.clone();
                        b.insert(p.to_string(), a);
                        b
                    })
                })
                .collect();
        }
        out
    }

    /// Exact comparison of both sides at every grid point; returns the first
    /// binding where they differ.
    pub fn check(&self) -> Result<Option<Binding>> {
        for b in self.grid() {
            let (l, r) = (self.lhs.instantiate(&b)?, self.rhs.instantiate(&b)?);
            if !check_equal(&l, &r, Mode::Exact, DEFAULT_TOL)?.is_equal() {
                return Ok(Some(b));
            }
        }
        Ok(None)
    }

    /// Numerical comparison at `samples` seeded random real angles.
    pub fn check_float(&self, samples: usize, seed: u64, tol: f64) -> Result<Option<Binding>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let b: Binding =
                self.params.iter().map(|p| (p.to_string(), Angle::float(rng.gen_range(0.0..2.0 * PI)))).collect();
            let (l, r) = (self.lhs.instantiate(&b)?, self.rhs.instantiate(&b)?);
            if !check_equal(&l, &r, Mode::Float, tol)?.is_equal() {
                return Ok(Some(b));
            }
        }
        Ok(None)
    }
}

fn seq(ds: &[Diagram]) -> Diagram {
    Diagram::sequence(ds).expect("composable")
}

fn par(ds: &[Diagram]) -> Diagram {
    Diagram::tensor_all(ZX, ds).expect("same calculus")
}

fn z(a: Angle, n: usize, m: usize) -> Diagram {
    Diagram::z(a, n, m)
}

fn x(a: Angle, n: usize, m: usize) -> Diagram {
    Diagram::x(a, n, m)
}

fn zero() -> Angle {
    Angle::zero()
}

fn pi() -> Angle {
    Angle::pi()
}

fn tri() -> Diagram {
    Diagram::triangle()
}

fn h() -> Diagram {
    Diagram::hadamard()
}

fn id(n: usize) -> Diagram {
    Diagram::identity(ZX, n)
}

/// A green spider with a 1→1 diagram `loop_` joining two of its legs.
fn looped(loop_: Diagram) -> Diagram {
    let mut bld = Builder::new(ZX);
    let s = bld.z(zero(), 0);
    bld.link(Pin::In(0), s).link(s, Pin::Out(0));
    bld.link(s, Pin::Out(1)).link(Pin::In(1), s);
    let spider = bld.build().unwrap();
    // feed output 1 back into input 1 through `loop_`
    trace_last(&spider, &loop_)
}

/// Closes the last output of `d` onto its last input through `through`.
fn trace_last(d: &Diagram, through: &Diagram) -> Diagram {
    let n = d.n_inputs - 1;
    let m = d.n_outputs - 1;
    let inner = seq(&[d.clone(), par(&[id(m), through.clone()])]);
    // bend: join Output(m) with Input(n)
    let (cap, cup) = (Diagram::cap(ZX), Diagram::cup(ZX));
    seq(&[par(&[id(n), cap]), par(&[inner, id(1)]), par(&[id(m), cup])])
}

/// A spider with one leg fed by a state: `diag`-like operators.
fn fed(spider_angle: Angle, state: Diagram) -> Diagram {
    seq(&[par(&[id(1), state]), z(spider_angle, 2, 1)])
}

/// `|+⟩` unnormalised: `(1, 1)`.
fn plus() -> Diagram {
    z(zero(), 0, 1)
}

/// `Z(α)^{(1,2)}` preceded by NOT.
fn k1_lhs() -> Diagram {
    seq(&[not(), z(Angle::var("alpha"), 1, 2)])
}

/// The anti-controlled NOT: flips the second wire when the first is 0.
fn anti_cnot() -> Diagram {
    let flip = par(&[not(), id(1)]);
    seq(&[flip.clone(), cnot(), flip])
}

/// The statements of the derived lemmas, in order.
pub fn lemmas() -> Vec<Lemma> {
    let alpha = || Angle::var("alpha");
    let beta = || Angle::var("beta");
    let cz = gadgets::cz;
    vec![
        Lemma::new("A.1", "2-is-sqrt-2-squared", two(), par(&[sqrt2(), sqrt2()])),
        Lemma::new(
            "A.2",
            "hopf",
            par(&[seq(&[copy(), x(zero(), 2, 1)]), sqrt2(), sqrt2()]),
            par(&[z(zero(), 1, 0), x(zero(), 0, 1)]),
        ),
        Lemma::new("A.3", "hadamard-involution", seq(&[h(), h()]), id(1)),
        Lemma::new("A.4", "bicolor-0-pi", gadgets::sqrt2_phase(zero()), sqrt2()),
        Lemma::new(
            "A.5",
            "ket-0-on-upside-down-triangle",
            seq(&[x(zero(), 0, 1), triangle_t()]),
            par(&[plus(), sqrt2()]),
        ),
        Lemma::new("A.6", "parallel-triangles", seq(&[copy(), par(&[tri(), tri()]), z(zero(), 2, 1)]), tri()),
        Lemma::new("A.7", "not-triangle-is-symmetrical", seq(&[tri(), not()]), seq(&[not(), triangle_t()])),
        Lemma::new("A.8", "ket-1-on-triangle", seq(&[x(pi(), 0, 1), tri()]), par(&[plus(), sqrt2()])),
        Lemma::new("A.9", "h-loop", looped(h()), par(&[z(pi(), 1, 1), inv_sqrt2()])),
        Lemma::new(
            "A.10",
            "k1",
            k1_lhs(),
            par(&[seq(&[z(alpha().neg(), 1, 2), par(&[not(), not()])]), gadgets::phase(alpha())]),
        )
        .with_params(&["alpha"]),
        Lemma::new(
            "A.11",
            "multiplying-global-phases",
            par(&[gadgets::phase(alpha()), gadgets::phase(beta())]),
            gadgets::phase(alpha().add(&beta())),
        )
        .with_params(&["alpha", "beta"]),
        Lemma::new(
            "A.12",
            "control-pi-and-anti-CNOT-commute",
            seq(&[anti_cnot(), cz()]),
            seq(&[cz(), anti_cnot()]),
        ),
        Lemma::new("A.13", "ket-1-on-upside-down-triangle", seq(&[x(pi(), 0, 1), triangle_t()]), x(pi(), 0, 1)),
        Lemma::new(
            "A.14",
            "ket-minus-on-upside-down-triangle",
            seq(&[z(pi(), 0, 1), triangle_t()]),
            par(&[x(zero(), 0, 1), inv_sqrt2()]),
        ),
        Lemma::new("A.15", "looped-triangle", looped(tri()), id(1)),
        Lemma::new("A.16", "W-swappable-outputs", seq(&[gadgets::w(), Diagram::swap(ZX)]), gadgets::w()),
        Lemma::new("A.17", "triangle-trace", trace_last(&id(1), &tri()), two()),
        Lemma::new(
            "A.18",
            "inverse-triangle",
            seq(&[tri(), z(pi(), 1, 1), tri(), z(pi(), 1, 1)]),
            id(1),
        ),
        Lemma::new(
            "A.19",
            "triangle-hadamard-2",
            seq(&[triangle_t(), h(), tri()]),
            par(&[fed(pi(), seq(&[plus(), tri()])), inv_sqrt2()]),
        ),
        Lemma::new(
            "A.20",
            "ctrl-2-and-anti-ctrl-2",
            seq(&[not(), fed(zero(), seq(&[plus(), triangle_t()])), not()]),
            fed(zero(), seq(&[plus(), tri()])),
        ),
        Lemma::new(
            "A.21",
            "parallel-triangle-hadamard",
            seq(&[copy(), par(&[tri(), h()]), z(zero(), 2, 1)]),
            par(&[seq(&[tri(), z(pi(), 1, 1)]), inv_sqrt2()]),
        ),
        Lemma::new(
            "A.22",
            "upside-down-triangle-on-W",
            seq(&[triangle_t(), gadgets::w()]),
            seq(&[gadgets::w(), par(&[id(1), tri()])]),
        ),
        Lemma::new(
            "A.23",
            "cnot-on-upside-down-triangle-fork",
            seq(&[copy(), par(&[triangle_t(), triangle_t()]), cnot()]),
            seq(&[copy(), par(&[triangle_t(), seq(&[not(), tri()])])]),
        ),
        Lemma::new(
            "A.24",
            "transistor-ket-1",
            seq(&[par(&[gadgets::ket1(), id(1)]), gadgets::and_gate()]),
            id(1),
        ),
    ]
}

/// Looks a lemma up by id or name.
pub fn lemma(key: &str) -> Option<Lemma> {
    lemmas().into_iter().find(|l| l.id == key || l.name == key)
}

/// Supplementarity: a red spider fed `α` and `α + π` is a red state times
/// `(1 − e^{2iα})/2`.
pub fn supplementarity() -> Lemma {
    let alpha = Angle::var("alpha");
    let lhs = seq(&[par(&[z(alpha.clone(), 0, 1), z(alpha.add(&pi()), 0, 1)]), x(zero(), 2, 1)]);
    let rhs = par(&[x(zero(), 0, 1), z(alpha.scale(2).add(&pi()), 0, 0), inv_sqrt2(), inv_sqrt2()]);
    Lemma::new("C.1", "supplementarity", lhs, rhs).with_params(&["alpha"])
}

/// Controlled phases sharing a control wire commute.
pub fn control_commutation() -> Lemma {
    let a = gadgets::controlled_phase(Angle::var("alpha"));
    let b = gadgets::controlled_phase(Angle::var("beta"));
    let first = par(&[a, id(1)]);
    let second = par(&[id(1), b]);
    Lemma::new("C.2", "commutation-of-controls", seq(&[first.clone(), second.clone()]), seq(&[second, first]))
        .with_params(&["alpha", "beta"])
}

/// `2 = √2·√2`: turn the green 2 red, split it, grow a green node on the
/// wire, copy both red states out of it and fuse the copies back.
fn proof_two() -> Derivation {
    let steps = vec![
        Step::new("H", Dir::Lr).legs(&[("p", 0)]),
        Step::new("S1'", Dir::Rl).legs(&[("p", 0), ("q", 0), ("k", 1)]).bind(&[("alpha", zero()), ("beta", zero())]),
        Step::new("S2", Dir::Rl),
        Step::new("B1", Dir::Rl),
        Step::new("S1", Dir::Lr).legs(&[("p", 1), ("q", 0), ("k", 2)]),
    ];
    Derivation { ruleset: "dzx".into(), start: two(), steps, end: par(&[sqrt2(), sqrt2()]) }
}

/// `H∘H = id`: grow a green node between the Hadamards, absorb both into a
/// red node and drop it.
fn proof_hadamard_involution() -> Derivation {
    let start = seq(&[h(), h()]);
    let rules = ruleset("dzx").expect("known ruleset");
    let middle = start.wires.iter().copied().find(|(a, b)| a.node().is_some() && b.node().is_some());
    let grow = find_matches_with(rules.get("S2").expect("S2"), Dir::Rl, &start, &Binding::new(), &Legs::new(), usize::MAX)
        .into_iter()
        .find(|e| e.bare.iter().any(|&(a, b)| Some((a, b)) == middle || Some((b, a)) == middle))
        .expect("the wire between the Hadamards");
    let steps = vec![
        Step::new("S2", Dir::Rl).with_embedding(grow),
        Step::new("H", Dir::Lr).legs(&[("p", 2)]).bind(&[("alpha", zero())]),
        Step::new("S2'", Dir::Lr),
    ];
    Derivation { ruleset: "dzx".into(), start, steps, end: id(1) }
}

/// `π`-copy through a green spider: one application of K.
fn proof_k1() -> Derivation {
    let l = lemma("A.10").expect("k1");
    let steps = vec![Step::new("K", Dir::Lr).legs(&[("p", 2)])];
    Derivation { ruleset: "dzx_kp".into(), start: l.lhs, steps, end: l.rhs }
}

/// Proof scripts keyed by lemma id.
pub fn proofs() -> Vec<(&'static str, Derivation)> {
    vec![("A.1", proof_two()), ("A.3", proof_hadamard_involution()), ("A.10", proof_k1())]
}
