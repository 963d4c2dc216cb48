//! Synthesis of π-fragment diagrams for matrices `M′/√2^k` with `M′`
//! integer.
//!
//! The integer part is built in ZW as a sum of weighted basis states: a
//! black "exactly one" state selects one term, each term copies its
//! selector onto the wires where its basis vector has a 1 (weighted by the
//! coefficient on the selector), and black additions merge the terms wire
//! by wire. Stars supply the `1/√2^k`, and `[.]_X` turns the result into a
//! ΔZX diagram.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::diagram::{Builder, Calculus, Diagram, End, NodeKind, Pin};
use crate::error::{Error, Result};
use crate::functors::{white_spider, zw_to_zx, zw_triangle_t};
use crate::semantics::Matrix;

const ZW: Calculus = Calculus::Zw;

/// Largest coefficient magnitude realised by repeated triangles.
pub const MAX_COEFF: u64 = 256;

fn g(k: NodeKind) -> Diagram {
    Diagram::generator(k)
}

fn seq(ds: &[Diagram]) -> Diagram {
    Diagram::sequence(ds).expect("composable")
}

fn par(ds: &[Diagram]) -> Diagram {
    Diagram::tensor_all(ZW, ds).expect("same calculus")
}

fn id(n: usize) -> Diagram {
    Diagram::identity(ZW, n)
}

/// Wire permutation sending input `i` to output `perm[i]`.
pub fn permutation(calculus: Calculus, perm: &[usize]) -> Diagram {
    Diagram {
        calculus,
        nodes: Default::default(),
        wires: perm.iter().enumerate().map(|(i, &j)| (End::Input(i), End::Output(j))).collect(),
        n_inputs: perm.len(),
        n_outputs: perm.len(),
    }
}

/// `|1⟩`: a black node with two legs joined.
pub fn zw_ket1() -> Diagram {
    let mut b = Builder::new(ZW);
    let w = b.node(NodeKind::WBlack12);
    b.link((w, 0), (w, 1)).link((w, 2), Pin::Out(0));
    b.build().unwrap()
}

pub fn zw_ket0() -> Diagram {
    seq(&[zw_ket1(), g(NodeKind::WBlack11)])
}

/// The `t`-leg state `Σ_i |0…1_i…0⟩`.
pub fn w_state(t: usize) -> Diagram {
    let mut d = zw_ket1();
    for n in 1..t {
        let grow = par(&[id(n - 1), seq(&[g(NodeKind::WBlack11), g(NodeKind::WBlack12)])]);
        d = seq(&[d, grow]);
    }
    d
}

/// `(x, y) ↦ x + y` on inputs with at most one 1.
fn plus_merge() -> Diagram {
    seq(&[g(NodeKind::WBlack12).transpose(), g(NodeKind::WBlack11)])
}

fn merge_tree(t: usize) -> Diagram {
    let mut d = id(1);
    for _ in 1..t {
        d = seq(&[par(&[d, id(1)]), plus_merge()]);
    }
    d
}

/// `diag(1, c)` for an integer `c ≠ 0`.
fn weight(c: &BigInt) -> Result<Diagram> {
    let n = c.abs().to_u64().filter(|n| *n <= MAX_COEFF).ok_or_else(|| {
        Error::OutOfRange(format!("coefficient {c} exceeds the supported magnitude {MAX_COEFF}"))
    })?;
    if n == 1 {
        return Ok(if c.is_negative() { g(NodeKind::ZWhite11) } else { id(1) });
    }
    // the state (1, n): n−1 triangles after (1, 1)
    let mut state = white_spider(1, false);
    for _ in 1..n {
        state = seq(&[state, zw_triangle_t()]);
    }
    // a white node fed v acts as diag(v₀, −v₁)
    if c.is_positive() {
        state = seq(&[state, g(NodeKind::ZWhite11)]);
    }
    Ok(seq(&[par(&[id(1), state]), g(NodeKind::ZWhite21)]))
}

/// `1 → N`: `|0⟩ ↦ |0…0⟩`, `|1⟩ ↦ c·|bits⟩`.
fn term(bits: &[bool], c: &BigInt) -> Result<Diagram> {
    let w = bits.iter().filter(|b| **b).count();
    let mut spider = white_spider(1 + w, false);
    // first leg becomes the input
    spider.wires = spider
        .wires
        .iter()
        .map(|&(a, b)| {
            let f = |e: End| match e {
                End::Output(0) => End::Input(0),
                End::Output(j) => End::Output(j - 1),
                o => o,
            };
            (f(a), f(b))
        })
        .collect();
    spider.n_inputs = 1;
    spider.n_outputs = w;
    let zeros: Vec<Diagram> = (0..bits.len() - w).map(|_| zw_ket0()).collect();
    let fan = par(&[spider, par(&zeros)]);
    // place copies on the 1-bits and zeros elsewhere
    let (mut one, mut zero) = (0, w);
    let mut perm = vec![0; bits.len()];
    for (j, b) in bits.iter().enumerate() {
        if *b {
            perm[one] = j;
            one += 1;
        } else {
            perm[zero] = j;
            zero += 1;
        }
    }
    Ok(seq(&[weight(c)?, fan, permutation(ZW, &perm)]))
}

/// The state `Σ_b c_b |b⟩` on `n` wires, wire 0 most significant.
pub fn zw_integer_state(n: usize, coeffs: &[BigInt]) -> Result<Diagram> {
    let terms: Vec<(usize, &BigInt)> = coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    if terms.is_empty() {
        let zeros: Vec<Diagram> = (0..n).map(|_| zw_ket0()).collect();
        return Ok(par(&[white_spider(0, true), par(&zeros)]));
    }
    let t = terms.len();
    let bits = |idx: usize| -> Vec<bool> { (0..n).map(|j| (idx >> (n - 1 - j)) & 1 == 1).collect() };
    let gadgets = terms.iter().map(|(idx, c)| term(&bits(*idx), c)).collect::<Result<Vec<_>>>()?;
    // term-major (t, j) to wire-major (j, t)
    let perm: Vec<usize> = (0..t * n).map(|i| (i % n) * t + i / n).collect();
    let merges: Vec<Diagram> = (0..n).map(|_| merge_tree(t)).collect();
    Ok(seq(&[w_state(t), par(&gadgets), permutation(ZW, &perm), par(&merges)]))
}

/// `M = M′/√2^k` as integers `M′` (row-major) and `k`.
pub fn integer_form(m: &Matrix) -> Result<(Vec<BigInt>, u32)> {
    let Some(d) = m.exact() else {
        return Err(Error::NotRepresentable("synthesis needs an exact matrix".into()));
    };
    let mut k = 0;
    for e in &d.data {
        let ek = e.real_int_exponent().ok_or_else(|| {
            Error::NotRepresentable(format!("entry {e} is not an integer over a power of √2"))
        })?;
        k = k.max(ek);
    }
    let ints = d.data.iter().map(|e| e.as_int_over_sqrt2(k).expect("exponent is large enough")).collect();
    Ok((ints, k))
}

/// A ZW_{1/√2} diagram for `M`.
pub fn synthesize_zw(m: &Matrix) -> Result<Diagram> {
    let (rows, cols) = (m.rows(), m.cols());
    let (n_in, n_out) = (log2(cols)?, log2(rows)?);
    let (ints, k) = integer_form(m)?;
    // amplitudes of the state (input bits, output bits)
    let mut amp = vec![BigInt::zero(); rows * cols];
    for r in 0..rows {
        for c in 0..cols {
            amp[(c << n_out) | r] = ints[r * cols + c].clone();
        }
    }
    let state = zw_integer_state(n_in + n_out, &amp)?;
    let stars: Vec<Diagram> = (0..k).map(|_| g(NodeKind::Sqrt2Star)).collect();
    let mut d = par(&[state, par(&stars)]);
    // the first n_in outputs become inputs
    let f = |e: End| match e {
        End::Output(j) if j < n_in => End::Input(j),
        End::Output(j) => End::Output(j - n_in),
        o => o,
    };
    d.wires = d.wires.iter().map(|&(a, b)| (f(a), f(b))).collect();
    d.n_inputs = n_in;
    d.n_outputs = n_out;
    d.check_valid()?;
    Ok(d)
}

fn log2(x: usize) -> Result<usize> {
    if x.is_power_of_two() {
        Ok(x.trailing_zeros() as usize)
    } else {
        Err(Error::NotRepresentable(format!("dimension {x} is not a power of two")))
    }
}

/// A π-fragment ΔZX diagram `D` with `⟦D⟧ = M`.
pub fn synthesize(m: &Matrix) -> Result<Diagram> {
    zw_to_zx(&synthesize_zw(m)?)
}
