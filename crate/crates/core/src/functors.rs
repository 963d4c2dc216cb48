//! Translations between ZW_{1/√2} and the ΔZX-calculus.
//!
//! Both functors replace every node by a gadget in the other language whose
//! boundary slots, listed inputs first, line up with the node's ports.

use crate::angle::Angle;
use crate::diagram::{splice, Builder, Calculus, Diagram, End, NodeKind, Pin, Term};
use crate::error::{Error, Result};
use crate::gadgets;
use crate::semantics::{check_equal, Equality, Mode, DEFAULT_TOL};

/// Replaces each node of `d` by `gadget(kind)`.
pub fn substitute(d: &Diagram, target: Calculus, gadget: impl Fn(&NodeKind) -> Result<Diagram>) -> Result<Diagram> {
    let mut out = Diagram::empty(target);
    // hub index of each (node, port)
    let mut first_hub = std::collections::HashMap::new();
    let mut n_hubs = 0;
    for (id, k) in &d.nodes {
        first_hub.insert(*id, n_hubs);
        n_hubs += k.arity();
    }
    let mut links = Vec::new();
    for (id, k) in &d.nodes {
        let g = gadget(k)?;
        if g.calculus != target || g.n_inputs + g.n_outputs != k.arity() {
            return Err(Error::InvalidDiagram(format!("gadget for {k} has the wrong boundary")));
        }
        let offset = out.next_id();
        for (gid, gk) in &g.nodes {
            out.nodes.insert(gid + offset, gk.clone());
        }
        let base = first_hub[id];
        let term = |e: End| match e {
            End::Port { node, port } => Term::Real(End::port(node + offset, port)),
            End::Input(i) => Term::Hub(base + i),
            End::Output(j) => Term::Hub(base + g.n_inputs + j),
        };
        for &(a, b) in &g.wires {
            links.push((term(a), term(b)));
        }
    }
    for &(a, b) in &d.wires {
        let term = |e: End| match e {
            End::Port { node, port } => Term::Hub(first_hub[&node] + port),
            slot => Term::Real(slot),
        };
        links.push((term(a), term(b)));
    }
    let (wires, loops) = splice(&links, n_hubs);
    out.wires = wires;
    out.n_inputs = d.n_inputs;
    out.n_outputs = d.n_outputs;
    for _ in 0..loops {
        out.add_loop_scalar();
    }
    out.check_valid()?;
    Ok(out)
}

/// The fermionic crossing: a swap after a controlled-Z.
pub fn zx_cross() -> Diagram {
    Diagram::swap(Calculus::Zx).compose(&gadgets::cz()).unwrap()
}

fn zx_gadget(kind: &NodeKind) -> Result<Diagram> {
    let pi = || Angle::pi();
    Ok(match kind {
        NodeKind::ZWhite11 => Diagram::z(pi(), 1, 1),
        NodeKind::ZWhite21 => Diagram::z(pi(), 2, 1),
        NodeKind::WBlack11 => gadgets::not(),
        NodeKind::WBlack12 => gadgets::w(),
        NodeKind::ZwCross => zx_cross(),
        NodeKind::Sqrt2Star => gadgets::inv_sqrt2(),
        other => return Err(Error::CalculusMismatch(format!("{other} is not a ZW generator"))),
    })
}

/// `[D]_X`: ZW_{1/√2} to ΔZX.
pub fn zw_to_zx(d: &Diagram) -> Result<Diagram> {
    if d.calculus != Calculus::Zw {
        return Err(Error::CalculusMismatch("zw_to_zx expects a ZW diagram".into()));
    }
    substitute(d, Calculus::Zx, zx_gadget)
}

const ZW: Calculus = Calculus::Zw;

fn zw(k: NodeKind) -> Diagram {
    Diagram::generator(k)
}

fn zw_seq(ds: &[Diagram]) -> Diagram {
    Diagram::sequence(ds).unwrap()
}

fn zw_t(a: &Diagram, b: &Diagram) -> Diagram {
    a.tensor(b).unwrap()
}

/// White spider with `k` legs (all outputs) and interpretation
/// `δ·(−1)^{p·a}`.
pub fn white_spider(k: usize, p: bool) -> Diagram {
    match k {
        0 => {
            // trace of the identity (2) or of the black NOT (0)
            let mut d = Diagram::empty(ZW);
            if p {
                d.nodes.insert(0, NodeKind::WBlack11);
                d.wires.push((End::port(0, 0), End::port(0, 1)));
            } else {
                d.add_loop_scalar();
            }
            d
        }
        1 => {
            // a white node with its inputs tied gives (1, −1)
            let mut b = Builder::new(ZW);
            let w = b.node(NodeKind::ZWhite21);
            b.link((w, 0), (w, 1)).link((w, 2), Pin::Out(0));
            let d = b.build().unwrap();
            if p {
                d
            } else {
                zw_seq(&[d, zw(NodeKind::ZWhite11)])
            }
        }
        2 => {
            let cup = Diagram::cap(ZW);
            if p {
                zw_seq(&[cup, zw_t(&zw(NodeKind::ZWhite11), &Diagram::identity(ZW, 1))])
            } else {
                cup
            }
        }
        _ => {
            let t = k - 2;
            let mut b = Builder::new(ZW);
            let nodes: Vec<_> = (0..t).map(|_| b.node(NodeKind::ZWhite21)).collect();
            b.link(Pin::In(0), (nodes[0], 0));
            for i in 0..t {
                b.link(Pin::In(i + 1), (nodes[i], 1));
                if i + 1 < t {
                    b.link((nodes[i], 2), (nodes[i + 1], 0));
                }
            }
            b.link((nodes[t - 1], 2), Pin::Out(0));
            // turn every input into an output
            let chain = b.build().unwrap();
            let mut d = bend_inputs(&chain);
            if (t % 2 == 1) != p {
                let mut legs = vec![zw(NodeKind::ZWhite11)];
                legs.extend((1..k).map(|_| Diagram::identity(ZW, 1)));
                d = Diagram::tensor_all(ZW, &legs).unwrap().compose(&d).unwrap();
            }
            d
        }
    }
}

/// Reads inputs as the first outputs.
fn bend_inputs(d: &Diagram) -> Diagram {
    let n = d.n_inputs;
    let f = |e: End| match e {
        End::Input(i) => End::Output(i),
        End::Output(j) => End::Output(n + j),
        o => o,
    };
    Diagram {
        calculus: d.calculus,
        nodes: d.nodes.clone(),
        wires: d.wires.iter().map(|&(a, b)| (f(a), f(b))).collect(),
        n_inputs: 0,
        n_outputs: n + d.n_outputs,
    }
}

/// The effect `(1, 1)`.
fn zw_plus_effect() -> Diagram {
    white_spider(1, false).transpose()
}

/// `Δᵀ = [[1,0],[1,1]]`: a black split, one branch summed out, then NOT.
pub fn zw_triangle_t() -> Diagram {
    let sum_out = zw_t(&Diagram::identity(ZW, 1), &zw_plus_effect());
    zw_seq(&[zw(NodeKind::WBlack12), sum_out, zw(NodeKind::WBlack11)])
}

pub fn zw_triangle() -> Diagram {
    zw_triangle_t().transpose()
}

/// `H = (1/√2)·Δᵀ∘diag(1,−2)∘Δ`, with `diag(1,−2)` a white node fed `(1,2)`.
pub fn zw_hadamard() -> Diagram {
    let one_two = zw_seq(&[white_spider(1, false), zw_triangle_t()]);
    let mid = zw_seq(&[zw_t(&Diagram::identity(ZW, 1), &one_two), zw(NodeKind::ZWhite21)]);
    let core = zw_seq(&[zw_triangle(), mid, zw_triangle_t()]);
    zw_t(&core, &zw(NodeKind::Sqrt2Star))
}

fn pi_bit(a: &Angle) -> Result<bool> {
    match a.as_exact() {
        Some(f) if f.is_zero() => Ok(false),
        Some(f) if f == crate::angle::PiFrac::pi() => Ok(true),
        _ => Err(Error::OutOfFragment(format!("angle {a} is not 0 or π"))),
    }
}

fn zw_gadget(kind: &NodeKind) -> Result<Diagram> {
    Ok(match kind {
        NodeKind::Z { angle, .. } => white_spider(kind.arity(), pi_bit(angle)?),
        NodeKind::X { angle, .. } => {
            let k = kind.arity();
            let spider = white_spider(k, pi_bit(angle)?);
            let hs: Vec<Diagram> = (0..k).map(|_| zw_hadamard()).collect();
            Diagram::tensor_all(ZW, &hs).unwrap().compose(&spider).unwrap()
        }
        NodeKind::Hadamard => zw_hadamard(),
        NodeKind::Triangle => zw_triangle(),
        other => return Err(Error::CalculusMismatch(format!("{other} is not a ZX generator"))),
    })
}

/// `[D]_W`: the π-fragment of ΔZX to ZW_{1/√2}.
pub fn zx_to_zw(d: &Diagram) -> Result<Diagram> {
    if d.calculus != Calculus::Zx {
        return Err(Error::CalculusMismatch("zx_to_zw expects a ZX diagram".into()));
    }
    substitute(d, ZW, zw_gadget)
}

/// `⟦[[D]_W]_X⟧ = ⟦D⟧`, checked exactly.
pub fn round_trip_check(d: &Diagram) -> Result<Equality> {
    let back = zw_to_zx(&zx_to_zw(d)?)?;
    check_equal(&back, d, Mode::Exact, DEFAULT_TOL)
}
