//! Clifford+T+Toffoli circuits: a line-based text format, a reference
//! state-vector simulator, and translation to ΔZX diagrams.
//!
//! ```text
//! qubits 3
//! h 0
//! ccx 0 1 2
//! rz 3/4 1      # angle 3π/4
//! ```

use std::fmt;

use crate::angle::Angle;
use crate::diagram::{Builder, Calculus, Diagram, Pin};
use crate::error::{Error, Result};
use crate::gadgets;
use crate::scalar::{CycloScalar, Ring};
use crate::semantics::Dense;
use crate::synth::permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    H(usize),
    X(usize),
    Z(usize),
    S(usize),
    T(usize),
    Tdg(usize),
    /// `diag(1, e^{ikπ/4})`
    Rz(i64, usize),
    Cx(usize, usize),
    Cz(usize, usize),
    Ccx(usize, usize, usize),
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::X(q) | Gate::Z(q) | Gate::S(q) | Gate::T(q) | Gate::Tdg(q) | Gate::Rz(_, q) => vec![q],
            Gate::Cx(a, b) | Gate::Cz(a, b) => vec![a, b],
            Gate::Ccx(a, b, c) => vec![a, b, c],
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::H(q) => write!(f, "h {q}"),
            Gate::X(q) => write!(f, "x {q}"),
            Gate::Z(q) => write!(f, "z {q}"),
            Gate::S(q) => write!(f, "s {q}"),
            Gate::T(q) => write!(f, "t {q}"),
            Gate::Tdg(q) => write!(f, "tdg {q}"),
            Gate::Rz(k, q) => write!(f, "rz {k}/4 {q}"),
            Gate::Cx(a, b) => write!(f, "cx {a} {b}"),
            Gate::Cz(a, b) => write!(f, "cz {a} {b}"),
            Gate::Ccx(a, b, c) => write!(f, "ccx {a} {b} {c}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub qubits: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(qubits: usize) -> Circuit {
        Circuit { qubits, gates: vec![] }
    }

    pub fn push(&mut self, g: Gate) -> Result<()> {
        let qs = g.qubits();
        if let Some(q) = qs.iter().find(|&&q| q >= self.qubits) {
            return Err(Error::OutOfRange(format!("gate `{g}` uses qubit {q} of {}", self.qubits)));
        }
        for (i, a) in qs.iter().enumerate() {
            if qs[i + 1..].contains(a) {
                return Err(Error::InvalidDiagram(format!("gate `{g}` repeats qubit {a}")));
            }
        }
        self.gates.push(g);
        Ok(())
    }

    /// Parses the text format; `;` separates gates on one line and `#`
    /// starts a comment. Without a `qubits` header the width is inferred.
    pub fn parse(text: &str) -> Result<Circuit> {
        let mut header = None;
        let mut gates = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("");
            for stmt in line.split(';') {
                let toks: Vec<&str> = stmt.split_whitespace().collect();
                if toks.is_empty() {
                    continue;
                }
                let err = |m: &str| Error::Parse(format!("line {}: {m}: `{}`", ln + 1, stmt.trim()));
                let q = |i: usize| -> Result<usize> {
                    toks.get(i).and_then(|t| t.parse().ok()).ok_or_else(|| err("expected a qubit index"))
                };
                let want = |n: usize| if toks.len() == n { Ok(()) } else { Err(err("wrong number of operands")) };
                let g = match toks[0].to_ascii_lowercase().as_str() {
                    "qubits" => {
                        want(2)?;
                        header = Some(q(1)?);
                        continue;
                    }
                    "h" => want(2).and(q(1).map(Gate::H))?,
                    "x" => want(2).and(q(1).map(Gate::X))?,
                    "z" => want(2).and(q(1).map(Gate::Z))?,
                    "s" => want(2).and(q(1).map(Gate::S))?,
                    "t" => want(2).and(q(1).map(Gate::T))?,
                    "tdg" => want(2).and(q(1).map(Gate::Tdg))?,
                    "rz" => {
                        want(3)?;
                        let k = toks[1]
                            .strip_suffix("/4")
                            .and_then(|n| n.parse::<i64>().ok())
                            .ok_or_else(|| err("rz angle must be written k/4"))?;
                        Gate::Rz(k, q(2)?)
                    }
                    "cx" | "cnot" => want(3).and(Ok(Gate::Cx(q(1)?, q(2)?)))?,
                    "cz" => want(3).and(Ok(Gate::Cz(q(1)?, q(2)?)))?,
                    "ccx" | "toffoli" => want(4).and(Ok(Gate::Ccx(q(1)?, q(2)?, q(3)?)))?,
                    other => return Err(err(&format!("unknown gate `{other}`"))),
                };
                gates.push((ln + 1, g));
            }
        }
        let width = header.unwrap_or_else(|| {
            gates.iter().flat_map(|(_, g)| g.qubits()).max().map_or(0, |m| m + 1)
        });
        let mut c = Circuit::new(width);
        for (ln, g) in gates {
            c.push(g).map_err(|e| Error::Parse(format!("line {ln}: {e}")))?;
        }
        Ok(c)
    }
}

/// `|x, y, z⟩ ↦ |x, y, z ⊕ xy⟩` with the AND computed by two triangles and
/// one parity check: `o ≤ x` and `x ≤ o ⊕ x ⊕ y` force `o = x ∧ y`.
pub fn toffoli() -> Diagram {
    let mut b = Builder::new(Calculus::Zx);
    let zx = b.z(Angle::zero(), 0);
    let zy = b.z(Angle::zero(), 0);
    let zo = b.z(Angle::zero(), 0);
    let check = b.x(Angle::zero(), 0);
    let target = b.x(Angle::zero(), 0);
    let (lower, upper) = (b.triangle(), b.triangle());
    b.link(Pin::In(0), zx).link(zx, Pin::Out(0));
    b.link(Pin::In(1), zy).link(zy, Pin::Out(1));
    b.link(Pin::In(2), target).link(target, Pin::Out(2));
    b.link(zx, (lower, 0)).link((lower, 1), zo);
    b.link(check, (upper, 0)).link((upper, 1), zx);
    b.link(zx, check).link(zy, check).link(zo, check);
    b.link(zo, target);
    // the parity check weighs 1/2 and the XOR 1/√2
    let d = b.build().unwrap();
    Diagram::tensor_all(Calculus::Zx, &[d, gadgets::two(), gadgets::sqrt2()]).unwrap()
}

fn gate_gadget(g: &Gate) -> Diagram {
    match *g {
        Gate::H(_) => Diagram::hadamard(),
        Gate::X(_) => gadgets::not(),
        Gate::Z(_) => Diagram::z(Angle::pi(), 1, 1),
        Gate::S(_) => Diagram::z(Angle::quarter(2), 1, 1),
        Gate::T(_) => Diagram::z(Angle::quarter(1), 1, 1),
        Gate::Tdg(_) => Diagram::z(Angle::quarter(-1), 1, 1),
        Gate::Rz(k, _) => Diagram::z(Angle::quarter(k), 1, 1),
        Gate::Cx(..) => gadgets::cnot(),
        Gate::Cz(..) => gadgets::cz(),
        Gate::Ccx(..) => toffoli(),
    }
}

/// `gadget` acting on wires `qs` of `n`.
fn embed(gadget: &Diagram, qs: &[usize], n: usize) -> Diagram {
    // order: the gate's wires first, then the rest
    let mut order: Vec<usize> = qs.to_vec();
    order.extend((0..n).filter(|q| !qs.contains(q)));
    let mut to_front = vec![0; n];
    for (pos, &q) in order.iter().enumerate() {
        to_front[q] = pos;
    }
    let c = Calculus::Zx;
    let middle = gadget.tensor(&Diagram::identity(c, n - qs.len())).unwrap();
    let there = permutation(c, &to_front);
    let back = permutation(c, &order);
    Diagram::sequence(&[there, middle, back]).unwrap()
}

pub fn circuit_to_diagram(c: &Circuit) -> Diagram {
    let mut d = Diagram::identity(Calculus::Zx, c.qubits);
    for g in &c.gates {
        d = embed(&gate_gadget(g), &g.qubits(), c.qubits).compose(&d).unwrap();
    }
    d
}

/// The circuit's unitary by direct simulation (row = output basis state,
/// qubit 0 most significant).
pub fn unitary(c: &Circuit) -> Dense<CycloScalar> {
    let n = c.qubits;
    let dim = 1usize << n;
    let bit = |x: usize, q: usize| (x >> (n - 1 - q)) & 1;
    let flip = |x: usize, q: usize| x ^ (1 << (n - 1 - q));
    let mut cols = Vec::with_capacity(dim);
    for input in 0..dim {
        let mut v = vec![CycloScalar::zero(); dim];
        v[input] = CycloScalar::one();
        for g in &c.gates {
            let mut w = vec![CycloScalar::zero(); dim];
            for (x, amp) in v.iter().enumerate() {
                if amp.is_zero() {
                    continue;
                }
                let mut add = |y: usize, s: CycloScalar| w[y] = w[y].add(&amp.mul(&s));
                let phase = |k: i64, q: usize| if bit(x, q) == 1 { CycloScalar::omega_pow(k) } else { CycloScalar::one() };
                match *g {
                    Gate::H(q) => {
                        let h = CycloScalar::inv_sqrt2();
                        add(x & !(1 << (n - 1 - q)), h.clone());
                        let s = if bit(x, q) == 1 { h.neg() } else { h };
                        add(x | (1 << (n - 1 - q)), s);
                    }
                    Gate::X(q) => add(flip(x, q), CycloScalar::one()),
                    Gate::Z(q) => add(x, phase(4, q)),
                    Gate::S(q) => add(x, phase(2, q)),
                    Gate::T(q) => add(x, phase(1, q)),
                    Gate::Tdg(q) => add(x, phase(-1, q)),
                    Gate::Rz(k, q) => add(x, phase(k, q)),
                    Gate::Cx(a, t) => add(if bit(x, a) == 1 { flip(x, t) } else { x }, CycloScalar::one()),
                    Gate::Cz(a, b) => {
                        add(x, if bit(x, a) & bit(x, b) == 1 { CycloScalar::omega_pow(4) } else { CycloScalar::one() })
                    }
                    Gate::Ccx(a, b, t) => {
                        add(if bit(x, a) & bit(x, b) == 1 { flip(x, t) } else { x }, CycloScalar::one())
                    }
                }
            }
            v = w;
        }
        cols.push(v);
    }
    let mut data = Vec::with_capacity(dim * dim);
    for r in 0..dim {
        for col in &cols {
            data.push(col[r].clone());
        }
    }
    Dense::new(dim, dim, data)
}
