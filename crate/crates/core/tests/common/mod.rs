//! Seeded random diagrams for property and acceptance tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use deltazx::{Angle, Calculus, Diagram, End, NodeKind};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug)]
pub enum Angles {
    /// `{0, π}`.
    Pi,
    /// Multiples of `π/4`.
    Quarter,
}

/// Shape of the random population.
#[derive(Clone, Copy, Debug)]
pub struct Gen {
    pub calculus: Calculus,
    pub max_nodes: usize,
    pub max_inputs: usize,
    pub max_outputs: usize,
    pub max_legs: usize,
    pub angles: Angles,
    pub hadamards: bool,
    pub triangles: bool,
}

impl Gen {
    pub fn zx(angles: Angles) -> Gen {
        Gen {
            calculus: Calculus::Zx,
            max_nodes: 6,
            max_inputs: 2,
            max_outputs: 2,
            max_legs: 3,
            angles,
            hadamards: true,
            triangles: true,
        }
    }

    pub fn zw() -> Gen {
        Gen { calculus: Calculus::Zw, max_nodes: 8, max_inputs: 3, max_outputs: 3, ..Gen::zx(Angles::Pi) }
    }
}

fn angle(rng: &mut ChaCha8Rng, a: Angles) -> Angle {
    match a {
        Angles::Pi => {
            if rng.gen_bool(0.5) {
                Angle::pi()
            } else {
                Angle::zero()
            }
        }
        Angles::Quarter => Angle::quarter(rng.gen_range(0..8)),
    }
}

fn kind(rng: &mut ChaCha8Rng, g: &Gen) -> NodeKind {
    match g.calculus {
        Calculus::Zx => {
            let legs = rng.gen_range(0..=g.max_legs);
            let mut choices = vec![0, 1];
            if g.hadamards {
                choices.push(2);
            }
            if g.triangles {
                choices.push(3);
            }
            match *choices.choose(rng).unwrap() {
                0 => NodeKind::z(angle(rng, g.angles), 0, legs),
                1 => NodeKind::x(angle(rng, g.angles), 0, legs),
                2 => NodeKind::Hadamard,
                _ => NodeKind::Triangle,
            }
        }
        Calculus::Zw => [
            NodeKind::ZWhite11,
            NodeKind::ZWhite21,
            NodeKind::WBlack11,
            NodeKind::WBlack12,
            NodeKind::ZwCross,
            NodeKind::Sqrt2Star,
        ]
        .choose(rng)
        .unwrap()
        .clone(),
    }
}

/// A random valid diagram: random nodes, then a random perfect matching of
/// all node ports and boundary slots.
pub fn random_diagram(rng: &mut ChaCha8Rng, g: &Gen) -> Diagram {
    loop {
        let n_in = rng.gen_range(0..=g.max_inputs);
        let n_out = rng.gen_range(0..=g.max_outputs);
        let n = rng.gen_range(0..=g.max_nodes);
        let nodes: BTreeMap<usize, NodeKind> = (0..n).map(|i| (i, kind(rng, g))).collect();
        let mut stubs: Vec<End> = (0..n_in).map(End::Input).chain((0..n_out).map(End::Output)).collect();
        for (id, k) in &nodes {
            stubs.extend((0..k.arity()).map(|p| End::port(*id, p)));
        }
        if stubs.len() % 2 == 1 {
            continue;
        }
        stubs.shuffle(rng);
        let wires = stubs.chunks(2).map(|c| (c[0], c[1])).collect();
        let d = Diagram { calculus: g.calculus, nodes, wires, n_inputs: n_in, n_outputs: n_out };
        assert!(d.is_valid(), "{:?}", d.validate());
        return d;
    }
}

/// The same diagram with node ids permuted, wires shuffled and flipped.
pub fn relabel(d: &Diagram, rng: &mut ChaCha8Rng) -> Diagram {
    let mut ids: Vec<usize> = d.nodes.keys().copied().collect();
    let mut fresh: Vec<usize> = ids.iter().map(|i| i * 3 + 7).collect();
    fresh.shuffle(rng);
    let map: BTreeMap<usize, usize> = ids.drain(..).zip(fresh).collect();
    let f = |e: End| match e {
        End::Port { node, port } => End::port(map[&node], port),
        o => o,
    };
    let mut wires: Vec<(End, End)> = d
        .wires
        .iter()
        .map(|&(a, b)| if rng.gen_bool(0.5) { (f(a), f(b)) } else { (f(b), f(a)) })
        .collect();
    wires.shuffle(rng);
    Diagram {
        calculus: d.calculus,
        nodes: d.nodes.iter().map(|(k, v)| (map[k], v.clone())).collect(),
        wires,
        n_inputs: d.n_inputs,
        n_outputs: d.n_outputs,
    }
}

/// `d` with a cup–cap snake composed onto every boundary wire.
pub fn yank(d: &Diagram) -> Diagram {
    let snake = |n: usize| -> Diagram {
        let c = d.calculus;
        let mut s = Diagram::empty(c);
        for _ in 0..n {
            let one = Diagram::sequence(&[
                Diagram::identity(c, 1).tensor(&Diagram::cap(c)).unwrap(),
                Diagram::cup(c).tensor(&Diagram::identity(c, 1)).unwrap(),
            ])
            .unwrap();
            s = s.tensor(&one).unwrap();
        }
        s
    };
    Diagram::sequence(&[snake(d.n_inputs), d.clone(), snake(d.n_outputs)]).unwrap()
}

pub mod metamorphic {
    use super::*;
    use deltazx::semantics::{hadamard_power, interpret, Dense, Matrix, Mode};
    use deltazx::CycloScalar;

    fn exact(d: &Diagram) -> Dense<CycloScalar> {
        match interpret(d, Mode::Exact).unwrap() {
            Matrix::Exact(m) => m,
            Matrix::Float(_) => unreachable!(),
        }
    }

    fn gen() -> Gen {
        Gen::zx(Angles::Quarter)
    }

    /// A random diagram with the given number of inputs.
    fn with_inputs(r: &mut ChaCha8Rng, n: usize) -> Diagram {
        loop {
            let d = random_diagram(r, &Gen { max_inputs: 3, ..gen() });
            if d.n_inputs == n {
                return d;
            }
        }
    }

    /// `⟦d₂∘d₁⟧ = ⟦d₂⟧·⟦d₁⟧` and `⟦d₁⊗d₂⟧ = ⟦d₁⟧⊗⟦d₂⟧`.
    pub fn functoriality(seed: u64) -> Result<(), String> {
        let mut r = rng(seed);
        let d1 = random_diagram(&mut r, &gen());
        let d2 = with_inputs(&mut r, d1.n_outputs);
        let seq = d2.compose(&d1).unwrap();
        if exact(&seq) != exact(&d2).matmul(&exact(&d1)) {
            return Err(format!("sequential composition, seed {seed}"));
        }
        let par = d1.tensor(&d2).unwrap();
        if exact(&par) != exact(&d1).kron(&exact(&d2)) {
            return Err(format!("parallel composition, seed {seed}"));
        }
        Ok(())
    }

    /// Relabelling nodes, reordering wires and yanking boundary wires do not
    /// change the matrix.
    pub fn topology(seed: u64) -> Result<(), String> {
        let mut r = rng(seed);
        let d = random_diagram(&mut r, &gen());
        let m = exact(&d);
        if exact(&relabel(&d, &mut r)) != m {
            return Err(format!("relabelling, seed {seed}"));
        }
        if exact(&yank(&d)) != m {
            return Err(format!("yanking, seed {seed}"));
        }
        Ok(())
    }

    /// `⟦swap(D)⟧ = H^{⊗m}·⟦D⟧·H^{⊗n}`.
    pub fn colour_swap(seed: u64) -> Result<(), String> {
        let mut r = rng(seed);
        let d = random_diagram(&mut r, &gen());
        let lhs = exact(&d.color_swap().unwrap());
        let rhs = hadamard_power(d.n_outputs).matmul(&exact(&d)).matmul(&hadamard_power(d.n_inputs));
        if lhs != rhs {
            return Err(format!("colour swap, seed {seed}"));
        }
        Ok(())
    }

    /// The exact matrix, mapped to floats, matches float evaluation.
    pub fn exact_float(seed: u64) -> Result<(), String> {
        let mut r = rng(seed);
        let d = random_diagram(&mut r, &gen());
        let e = exact(&d);
        let Matrix::Float(f) = interpret(&d, Mode::Float).unwrap() else { unreachable!() };
        let scale = f.data.iter().map(|z| z.norm()).fold(1.0, f64::max);
        for (x, y) in e.data.iter().zip(&f.data) {
            if (x.to_complex() - y).norm() > 1e-10 * scale {
                return Err(format!("exact/float disagreement, seed {seed}"));
            }
        }
        Ok(())
    }
}

pub mod checks {
    use super::*;
    use deltazx::functors::{round_trip_check, zw_to_zx, zx_to_zw};
    use deltazx::rewrite::matcher::find_matches_with;
    use deltazx::rewrite::{apply, is_isomorphic, replay_derivation, simplify, Dir, RuleSet};
    use deltazx::semantics::{check_equal, interpret, Matrix, Mode, DEFAULT_TOL};
    use deltazx::synth::synthesize;
    use deltazx::Binding;

    fn equal(a: &Diagram, b: &Diagram) -> bool {
        check_equal(a, b, Mode::Exact, DEFAULT_TOL).map(|e| e.is_equal()).unwrap_or(false)
    }

    /// Applies one random applicable rule instance to a random host; returns
    /// the rule name, or `None` when nothing applied.
    pub fn random_rewrite(seed: u64, rules: &RuleSet) -> Result<Option<String>, String> {
        let mut r = rng(seed);
        let host = random_diagram(&mut r, &Gen::zx(Angles::Quarter));
        let mut options: Vec<(usize, Dir)> =
            (0..rules.rules.len()).flat_map(|i| [(i, Dir::Lr), (i, Dir::Rl)]).collect();
        options.shuffle(&mut r);
        for (i, dir) in options {
            let rule = &rules.rules[i];
            let embs = find_matches_with(rule, dir, &host, &Binding::new(), &Default::default(), 16);
            let Some(e) = embs.choose(&mut r) else { continue };
            let Ok(next) = apply(&host, rule, dir, e) else { continue };
            if !next.is_valid() {
                return Err(format!("{} {dir} left an invalid diagram (seed {seed})", rule.name));
            }
            if !equal(&host, &next) {
                return Err(format!("{} {dir} changed the matrix (seed {seed})", rule.name));
            }
            // locality: the same occurrence inside a larger diagram
            let ctx = random_diagram(&mut r, &Gen { max_nodes: 3, ..Gen::zx(Angles::Quarter) });
            let big = host.tensor(&ctx).unwrap();
            let mut e2 = e.clone();
            e2.host_hash = big.fingerprint();
            let big_next = apply(&big, rule, dir, &e2).map_err(|err| format!("{} in context: {err}", rule.name))?;
            if !is_isomorphic(&big_next, &next.tensor(&ctx).unwrap()) {
                return Err(format!("{} {dir} is not local (seed {seed})", rule.name));
            }
            return Ok(Some(rule.name.clone()));
        }
        Ok(None)
    }

    /// `simplify` output replays and keeps the matrix.
    pub fn simplify_replays(seed: u64, rules: &RuleSet) -> Result<(), String> {
        let mut r = rng(seed);
        let d = random_diagram(&mut r, &Gen::zx(Angles::Quarter));
        let (out, deriv) = simplify(&d, rules, 40);
        if out.node_count() > d.node_count() {
            return Err(format!("simplify grew the diagram (seed {seed})"));
        }
        match replay_derivation(&deriv, rules) {
            Ok(res) if res.is_valid() => Ok(()),
            other => Err(format!("replay failed (seed {seed}): {other:?}")),
        }
    }

    /// `⟦[D]_X⟧ = ⟦D⟧` for a random ZW diagram.
    pub fn zw_to_zx_preserves(seed: u64) -> Result<(), String> {
        let d = random_diagram(&mut rng(seed), &Gen::zw());
        let t = zw_to_zx(&d).map_err(|e| e.to_string())?;
        if equal(&d, &t) {
            Ok(())
        } else {
            Err(format!("[.]_X changed the matrix (seed {seed})"))
        }
    }

    fn pi_zx(seed: u64) -> Diagram {
        random_diagram(&mut rng(seed), &Gen { max_nodes: 8, max_inputs: 3, max_outputs: 3, ..Gen::zx(Angles::Pi) })
    }

    /// `⟦[D]_W⟧ = ⟦D⟧` for a random π-fragment diagram.
    pub fn zx_to_zw_preserves(seed: u64) -> Result<(), String> {
        let d = pi_zx(seed);
        let t = zx_to_zw(&d).map_err(|e| e.to_string())?;
        if equal(&d, &t) {
            Ok(())
        } else {
            Err(format!("[.]_W changed the matrix (seed {seed})"))
        }
    }

    pub fn round_trip(seed: u64) -> Result<(), String> {
        match round_trip_check(&pi_zx(seed)) {
            Ok(e) if e.is_equal() => Ok(()),
            other => Err(format!("round trip (seed {seed}): {other:?}")),
        }
    }

    /// A random `M′/√2^k` with `m + n ≤ 4`, entries in `[−3, 3]`, `k ≤ 4`.
    pub fn random_matrix(seed: u64) -> Matrix {
        let mut r = rng(seed);
        let total = r.gen_range(0..=4);
        let n_in = r.gen_range(0..=total);
        let (rows, cols) = (1 << (total - n_in), 1 << n_in);
        let entries: Vec<i64> = (0..rows * cols).map(|_| r.gen_range(-3..=3)).collect();
        Matrix::from_ints(rows, cols, &entries, r.gen_range(0..=4))
    }

    pub fn synthesis(seed: u64) -> Result<(), String> {
        let m = random_matrix(seed);
        let d = synthesize(&m).map_err(|e| format!("seed {seed}: {e}"))?;
        if d.angles().any(|a| !a.is_pi_multiple()) {
            return Err(format!("synthesis left the π-fragment (seed {seed})"));
        }
        match interpret(&d, Mode::Exact) {
            Ok(got) if got == m => Ok(()),
            other => Err(format!("synthesis mismatch (seed {seed}): {other:?}")),
        }
    }
}
