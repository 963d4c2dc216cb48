//! Standard interpretation of diagrams by tensor contraction.
//!
//! Every node contributes a tensor whose axes are its ports (inputs first,
//! then outputs); every wire is a summed index. Boundary slot 0 is the most
//! significant bit of a basis index, so `⟦D₁ ⊗ D₂⟧ = ⟦D₁⟧ ⊗ ⟦D₂⟧` with `D₁`
//! on the left.

use std::collections::HashMap;
use std::fmt;

use crate::angle::Angle;
use crate::diagram::{Diagram, End, NodeKind};
use crate::error::{Error, Result};
use crate::scalar::{ApproxScalar, CycloScalar, Ring};

/// Default limit on the number of simultaneously open indices.
pub const DEFAULT_CAP: usize = 24;

/// Default entrywise absolute tolerance for float comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

/// Scalars that generator tensors can be written in.
pub trait Field: Ring {
    fn phase(angle: &Angle) -> Result<Self>;
    fn inv_sqrt2_pow(k: u32) -> Self;
    fn from_i64(n: i64) -> Self;
}

impl Field for CycloScalar {
    fn phase(angle: &Angle) -> Result<Self> {
        angle.phase_exact()
    }
    fn inv_sqrt2_pow(k: u32) -> Self {
        CycloScalar::inv_sqrt2_pow(k)
    }
    fn from_i64(n: i64) -> Self {
        CycloScalar::from_int(n)
    }
}

impl Field for ApproxScalar {
    fn phase(angle: &Angle) -> Result<Self> {
        angle.phase_float()
    }
    fn inv_sqrt2_pow(k: u32) -> Self {
        ApproxScalar::new(std::f64::consts::FRAC_1_SQRT_2.powi(k as i32), 0.0)
    }
    fn from_i64(n: i64) -> Self {
        ApproxScalar::new(n as f64, 0.0)
    }
}

/// Dense row-major matrix over one scalar ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense<R> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<R>,
}

impl<R: Ring> Dense<R> {
    pub fn new(rows: usize, cols: usize, data: Vec<R>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Dense { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Dense { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = R::one();
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> &R {
        &self.data[r * self.cols + c]
    }

    pub fn matmul(&self, other: &Dense<R>) -> Dense<R> {
        assert_eq!(self.cols, other.rows, "inner dimensions");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = out.data[idx].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn kron(&self, other: &Dense<R>) -> Dense<R> {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.data[(i * other.rows + k) * cols + j * other.cols + l] = a.mul(other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Dense<R> {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Dense { rows: self.cols, cols: self.rows, data }
    }

    pub fn scale(&self, s: &R) -> Dense<R> {
        Dense { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.mul(s)).collect() }
    }
}

/// One matrix entry in either mode.
#[derive(Clone, Debug, PartialEq)]
pub enum Entry {
    Exact(CycloScalar),
    Float(ApproxScalar),
}

impl Entry {
    pub fn to_complex(&self) -> ApproxScalar {
        match self {
            Entry::Exact(x) => x.to_complex(),
            Entry::Float(x) => *x,
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Exact(x) => write!(f, "{x}"),
            Entry::Float(x) => write!(f, "{x}"),
        }
    }
}

/// The interpretation of a diagram: `2^m × 2^n` in exact or float mode.
#[derive(Clone, Debug, PartialEq)]
pub enum Matrix {
    Exact(Dense<CycloScalar>),
    Float(Dense<ApproxScalar>),
}

impl Matrix {
    pub fn rows(&self) -> usize {
        match self {
            Matrix::Exact(m) => m.rows,
            Matrix::Float(m) => m.rows,
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            Matrix::Exact(m) => m.cols,
            Matrix::Float(m) => m.cols,
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Matrix::Exact(_) => Mode::Exact,
            Matrix::Float(_) => Mode::Float,
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Entry {
        match self {
            Matrix::Exact(m) => Entry::Exact(m.get(r, c).clone()),
            Matrix::Float(m) => Entry::Float(*m.get(r, c)),
        }
    }

    pub fn exact(&self) -> Option<&Dense<CycloScalar>> {
        match self {
            Matrix::Exact(m) => Some(m),
            Matrix::Float(_) => None,
        }
    }

    pub fn to_float(&self) -> Dense<ApproxScalar> {
        match self {
            Matrix::Exact(m) => Dense::new(m.rows, m.cols, m.data.iter().map(|x| x.to_complex()).collect()),
            Matrix::Float(m) => m.clone(),
        }
    }

    /// Exact matrix from small integers divided by `√2^k`.
    pub fn from_ints(rows: usize, cols: usize, entries: &[i64], sqrt2_exp: u32) -> Matrix {
        Matrix::Exact(Dense::new(
            rows,
            cols,
            entries.iter().map(|&v| CycloScalar::from_i64s([v, 0, 0, 0], sqrt2_exp)).collect(),
        ))
    }
}

/// Result of a semantic comparison.
#[derive(Clone, Debug, PartialEq)]
pub enum Equality {
    Equal,
    NotEqual { row: usize, col: usize, left: Entry, right: Entry },
    /// Proportional but different; the ratio is `right / left`.
    EqualUpToGlobalScalar(ApproxScalar),
}

impl Equality {
    pub fn is_equal(&self) -> bool {
        matches!(self, Equality::Equal)
    }
}

/// A tensor whose axes are labelled; axis 0 is the most significant bit.
#[derive(Clone, Debug)]
struct Tensor<R> {
    labels: Vec<usize>,
    data: Vec<R>,
}

impl<R: Ring> Tensor<R> {
    fn from_fn(labels: Vec<usize>, f: impl Fn(&[u8]) -> R) -> Self {
        let k = labels.len();
        let mut bits = vec![0u8; k];
        let data = (0..1usize << k)
            .map(|idx| {
                for (i, b) in bits.iter_mut().enumerate() {
                    *b = ((idx >> (k - 1 - i)) & 1) as u8;
                }
                f(&bits)
            })
            .collect();
        Tensor { labels, data }
    }

    /// Reorders axes so that `order[i]` (an old axis) becomes axis `i`.
    fn permute(&self, order: &[usize]) -> Tensor<R> {
        let k = self.labels.len();
        if order.iter().enumerate().all(|(i, &o)| i == o) {
            return self.clone();
        }
        let mut data = Vec::with_capacity(self.data.len());
        for new_idx in 0..1usize << k {
            let mut old = 0usize;
            for (i, &o) in order.iter().enumerate() {
                let bit = (new_idx >> (k - 1 - i)) & 1;
                old |= bit << (k - 1 - o);
            }
            data.push(self.data[old].clone());
        }
        Tensor { labels: order.iter().map(|&o| self.labels[o]).collect(), data }
    }

    /// Sums over pairs of axes carrying the same label (self-loops).
    fn trace_repeated(self) -> Tensor<R> {
        let mut t = self;
        loop {
            let k = t.labels.len();
            let mut pair = None;
            'outer: for i in 0..k {
                for j in i + 1..k {
                    if t.labels[i] == t.labels[j] {
                        pair = Some((i, j));
                        break 'outer;
                    }
                }
            }
            let Some((i, j)) = pair else { return t };
            let mut order: Vec<usize> = (0..k).filter(|&x| x != i && x != j).collect();
            order.push(i);
            order.push(j);
            let p = t.permute(&order);
            let rest = k - 2;
            let data = (0..1usize << rest)
                .map(|r| p.data[r << 2].add(&p.data[(r << 2) | 3]))
                .collect();
            t = Tensor { labels: p.labels[..rest].to_vec(), data };
        }
    }

    /// Contracts all shared labels of `self` and `other`.
    fn contract(&self, other: &Tensor<R>) -> Tensor<R> {
        let shared: Vec<usize> = self.labels.iter().copied().filter(|l| other.labels.contains(l)).collect();
        let pos = |ls: &[usize], l: usize| ls.iter().position(|&x| x == l).unwrap();
        let free_a: Vec<usize> = (0..self.labels.len()).filter(|&i| !shared.contains(&self.labels[i])).collect();
        let free_b: Vec<usize> = (0..other.labels.len()).filter(|&i| !shared.contains(&other.labels[i])).collect();
        let mut order_a = free_a.clone();
        order_a.extend(shared.iter().map(|&l| pos(&self.labels, l)));
        let mut order_b: Vec<usize> = shared.iter().map(|&l| pos(&other.labels, l)).collect();
        order_b.extend(free_b.iter().copied());
        let a = self.permute(&order_a);
        let b = other.permute(&order_b);
        let (fa, s, fb) = (1usize << free_a.len(), 1usize << shared.len(), 1usize << free_b.len());
        let mut data = vec![R::zero(); fa * fb];
        for i in 0..fa {
            for k in 0..s {
                let x = &a.data[i * s + k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..fb {
                    let y = &b.data[k * fb + j];
                    if !y.is_zero() {
                        data[i * fb + j] = data[i * fb + j].add(&x.mul(y));
                    }
                }
            }
        }
        let mut labels: Vec<usize> = free_a.iter().map(|&i| self.labels[i]).collect();
        labels.extend(free_b.iter().map(|&i| other.labels[i]));
        Tensor { labels, data }
    }
}

/// Tensor entry of a generator for one assignment of its port bits.
fn generator_entry<R: Field>(kind: &NodeKind, bits: &[u8], phase: &R) -> R {
    let k = bits.len() as u32;
    let all_eq = bits.iter().all(|&b| b == bits[0]);
    let sign = |neg: bool| if neg { R::from_i64(-1) } else { R::one() };
    match kind {
        NodeKind::Z { .. } => {
            if bits.is_empty() {
                R::one().add(phase)
            } else if !all_eq {
                R::zero()
            } else if bits[0] == 1 {
                phase.clone()
            } else {
                R::one()
            }
        }
        NodeKind::X { .. } => {
            let parity = bits.iter().filter(|&&b| b == 1).count() % 2 == 1;
            let v = if parity { R::one().add(&phase.neg()) } else { R::one().add(phase) };
            v.mul(&R::inv_sqrt2_pow(k))
        }
        NodeKind::Hadamard => sign(bits[0] == 1 && bits[1] == 1).mul(&R::inv_sqrt2_pow(1)),
        NodeKind::Triangle => {
            if bits[1] > bits[0] {
                R::zero()
            } else {
                R::one()
            }
        }
        NodeKind::ZWhite11 | NodeKind::ZWhite21 => {
            if all_eq {
                sign(bits[0] == 1)
            } else {
                R::zero()
            }
        }
        NodeKind::WBlack11 => {
            if bits[0] != bits[1] {
                R::one()
            } else {
                R::zero()
            }
        }
        NodeKind::WBlack12 => {
            if bits.iter().filter(|&&b| b == 1).count() == 1 {
                R::one()
            } else {
                R::zero()
            }
        }
        NodeKind::ZwCross => {
            if bits[2] == bits[1] && bits[3] == bits[0] {
                sign(bits[0] == 1 && bits[1] == 1)
            } else {
                R::zero()
            }
        }
        NodeKind::Sqrt2Star => R::inv_sqrt2_pow(1),
    }
}

fn node_tensor<R: Field>(kind: &NodeKind, labels: Vec<usize>) -> Result<Tensor<R>> {
    let phase = match kind.angle() {
        Some(a) => R::phase(a)?,
        None => R::one(),
    };
    Ok(Tensor::from_fn(labels, |bits| generator_entry(kind, bits, &phase)).trace_repeated())
}

fn check_mode(d_angles: impl Iterator<Item = Angle>, mode: Mode) -> Result<()> {
    for a in d_angles {
        if a.is_linear() {
            return Err(Error::LinearAngle);
        }
        if mode == Mode::Exact && !a.is_quarter_multiple() {
            return Err(Error::NotExactAngle(a.to_string()));
        }
    }
    Ok(())
}

/// The matrix of a single generator with its own `(inputs, outputs)` split.
pub fn generator_tensor(kind: &NodeKind, mode: Mode) -> Result<Matrix> {
    interpret(&Diagram::generator(kind.clone()), mode)
}

fn contract_diagram<R: Field>(d: &Diagram, cap: usize) -> Result<Dense<R>> {
    let (n, m) = d.arity();
    if n + m > cap {
        return Err(Error::DimensionOverflow { needed: n + m, cap });
    }
    let mut port_label: HashMap<End, usize> = HashMap::new();
    let mut tensors: Vec<Tensor<R>> = Vec::new();
    let mut next_label = d.wires.len();
    for (w, &(a, b)) in d.wires.iter().enumerate() {
        if a.is_boundary() && b.is_boundary() {
            // bare boundary-to-boundary wire: a delta tensor
            let (la, lb) = (next_label, next_label + 1);
            next_label += 2;
            port_label.insert(a, la);
            port_label.insert(b, lb);
            tensors.push(Tensor::from_fn(vec![la, lb], |bits| if bits[0] == bits[1] { R::one() } else { R::zero() }));
        } else {
            port_label.insert(a, w);
            port_label.insert(b, w);
        }
    }
    for (&id, kind) in &d.nodes {
        let labels = (0..kind.arity()).map(|p| port_label[&End::port(id, p)]).collect();
        tensors.push(node_tensor(kind, labels)?);
    }
    let open: Vec<usize> = (0..n)
        .map(|i| port_label[&End::Input(i)])
        .chain((0..m).map(|j| port_label[&End::Output(j)]))
        .collect();

    // greedy pairwise contraction, smallest resulting rank first
    let mut live: Vec<Option<Tensor<R>>> = tensors.into_iter().map(Some).collect();
    loop {
        let mut owners: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, t) in live.iter().enumerate() {
            if let Some(t) = t {
                for &l in &t.labels {
                    owners.entry(l).or_default().push(i);
                }
            }
        }
        let mut best: Option<(usize, usize, usize)> = None;
        for owner in owners.values() {
            if owner.len() == 2 && owner[0] != owner[1] {
                let (i, j) = (owner[0].min(owner[1]), owner[0].max(owner[1]));
                let (a, b) = (live[i].as_ref().unwrap(), live[j].as_ref().unwrap());
                let shared = a.labels.iter().filter(|l| b.labels.contains(l)).count();
                let rank = a.labels.len() + b.labels.len() - 2 * shared;
                if best.map_or(true, |(r, bi, bj)| (rank, i, j) < (r, bi, bj)) {
                    best = Some((rank, i, j));
                }
            }
        }
        let (rank, i, j) = match best {
            Some(b) => b,
            None => {
                // disconnected components: outer products, smallest first
                let mut idx: Vec<usize> = (0..live.len()).filter(|&i| live[i].is_some()).collect();
                if idx.len() <= 1 {
                    break;
                }
                idx.sort_by_key(|&i| (live[i].as_ref().unwrap().labels.len(), i));
                let (i, j) = (idx[0].min(idx[1]), idx[0].max(idx[1]));
                let r = live[i].as_ref().unwrap().labels.len() + live[j].as_ref().unwrap().labels.len();
                (r, i, j)
            }
        };
        if rank > cap {
            return Err(Error::DimensionOverflow { needed: rank, cap });
        }
        let b = live[j].take().unwrap();
        let a = live[i].take().unwrap();
        live[i] = Some(a.contract(&b));
    }
    let result = live
        .into_iter()
        .flatten()
        .next()
        .unwrap_or(Tensor { labels: vec![], data: vec![R::one()] });
    let order: Vec<usize> = open.iter().map(|l| result.labels.iter().position(|x| x == l).unwrap()).collect();
    let t = result.permute(&order);
    // t is indexed by (input bits, output bits); the matrix is out × in
    let (rows, cols) = (1usize << m, 1usize << n);
    let mut data = vec![R::zero(); rows * cols];
    for i in 0..cols {
        for o in 0..rows {
            data[o * cols + i] = t.data[i * rows + o].clone();
        }
    }
    Ok(Dense::new(rows, cols, data))
}

/// `⟦d⟧` with the default open-index cap.
pub fn interpret(d: &Diagram, mode: Mode) -> Result<Matrix> {
    interpret_with_cap(d, mode, DEFAULT_CAP)
}

pub fn interpret_with_cap(d: &Diagram, mode: Mode, cap: usize) -> Result<Matrix> {
    d.check_valid()?;
    check_mode(d.angles().cloned(), mode)?;
    Ok(match mode {
        Mode::Exact => Matrix::Exact(contract_diagram(d, cap)?),
        Mode::Float => Matrix::Float(contract_diagram(d, cap)?),
    })
}

/// Exact when every angle is a multiple of π/4, float otherwise.
pub fn interpret_auto(d: &Diagram) -> Result<Matrix> {
    let mode = if d.all_angles_exact() { Mode::Exact } else { Mode::Float };
    interpret(d, mode)
}

/// Compares two matrices of the same shape.
pub fn compare_matrices(a: &Matrix, b: &Matrix, tol: f64) -> Equality {
    if let (Matrix::Exact(x), Matrix::Exact(y)) = (a, b) {
        let diff = x.data.iter().zip(&y.data).position(|(p, q)| p != q);
        return match diff {
            None => Equality::Equal,
            Some(idx) => match proportional_exact(x, y) {
                Some(r) => Equality::EqualUpToGlobalScalar(r),
                None => Equality::NotEqual {
                    row: idx / x.cols,
                    col: idx % x.cols,
                    left: a.get(idx / x.cols, idx % x.cols),
                    right: b.get(idx / x.cols, idx % x.cols),
                },
            },
        };
    }
    let (x, y) = (a.to_float(), b.to_float());
    let diff = x.data.iter().zip(&y.data).position(|(p, q)| (p - q).norm() > tol);
    match diff {
        None => Equality::Equal,
        Some(idx) => match proportional_float(&x, &y, tol) {
            Some(r) => Equality::EqualUpToGlobalScalar(r),
            None => Equality::NotEqual {
                row: idx / x.cols,
                col: idx % x.cols,
                left: a.get(idx / x.cols, idx % x.cols),
                right: b.get(idx / x.cols, idx % x.cols),
            },
        },
    }
}

fn proportional_exact(x: &Dense<CycloScalar>, y: &Dense<CycloScalar>) -> Option<ApproxScalar> {
    let k = x.data.iter().position(|v| !v.is_zero())?;
    let (a, b) = (&x.data[k], &y.data[k]);
    if b.is_zero() {
        return None;
    }
    let ok = x.data.iter().zip(&y.data).all(|(p, q)| &(p * b) == &(q * a));
    ok.then(|| b.to_complex() / a.to_complex())
}

fn proportional_float(x: &Dense<ApproxScalar>, y: &Dense<ApproxScalar>, tol: f64) -> Option<ApproxScalar> {
    let k = x.data.iter().position(|v| v.norm() > tol)?;
    let r = y.data[k] / x.data[k];
    if r.norm() <= tol {
        return None;
    }
    x.data.iter().zip(&y.data).all(|(p, q)| (p * r - q).norm() <= tol).then_some(r)
}

/// Semantic equality of two diagrams with equal arities.
pub fn check_equal(d1: &Diagram, d2: &Diagram, mode: Mode, tol: f64) -> Result<Equality> {
    if d1.arity() != d2.arity() {
        return Err(Error::ArityMismatch(format!("{:?} vs {:?}", d1.arity(), d2.arity())));
    }
    let a = interpret(d1, mode)?;
    let b = interpret(d2, mode)?;
    Ok(compare_matrices(&a, &b, tol))
}

/// `H^{⊗k}` as an exact matrix.
pub fn hadamard_power(k: usize) -> Dense<CycloScalar> {
    let h = Dense::new(
        2,
        2,
        [1, 1, 1, -1].iter().map(|&v| CycloScalar::from_i64s([v, 0, 0, 0], 1)).collect(),
    );
    let mut out = Dense::identity(1);
    for _ in 0..k {
        out = out.kron(&h);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Calculus;

    fn ints(m: &Matrix) -> Vec<i64> {
        m.exact()
            .unwrap()
            .data
            .iter()
            .map(|x| x.as_int_over_sqrt2(0).unwrap().try_into().unwrap())
            .collect()
    }

    #[test]
    fn triangle_matrix() {
        let m = interpret(&Diagram::triangle(), Mode::Exact).unwrap();
        assert_eq!(ints(&m), vec![1, 1, 0, 1]);
    }

    #[test]
    fn zw_cross_matrix() {
        let m = generator_tensor(&NodeKind::ZwCross, Mode::Exact).unwrap();
        assert_eq!(ints(&m), vec![1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, -1]);
    }

    #[test]
    fn zw_black_and_white() {
        let w = generator_tensor(&NodeKind::WBlack12, Mode::Exact).unwrap();
        assert_eq!((w.rows(), w.cols()), (4, 2));
        assert_eq!(ints(&w), vec![0, 1, 1, 0, 1, 0, 0, 0]);
        let z = generator_tensor(&NodeKind::ZWhite21, Mode::Exact).unwrap();
        assert_eq!(ints(&z), vec![1, 0, 0, 0, 0, 0, 0, -1]);
        let n = generator_tensor(&NodeKind::WBlack11, Mode::Exact).unwrap();
        assert_eq!(ints(&n), vec![0, 1, 1, 0]);
        let s = generator_tensor(&NodeKind::Sqrt2Star, Mode::Exact).unwrap();
        assert_eq!(s.get(0, 0), Entry::Exact(CycloScalar::inv_sqrt2()));
    }

    #[test]
    fn z_identity_and_zero_scalar() {
        let m = interpret(&Diagram::z(Angle::zero(), 1, 1), Mode::Exact).unwrap();
        assert_eq!(ints(&m), vec![1, 0, 0, 1]);
        let s = interpret(&Diagram::z(Angle::pi(), 0, 0), Mode::Exact).unwrap();
        assert_eq!(ints(&s), vec![0]);
    }

    #[test]
    fn hadamard_and_x_spider() {
        let h = interpret(&Diagram::hadamard(), Mode::Exact).unwrap();
        assert_eq!(h.exact().unwrap(), &hadamard_power(1));
        for q in 0..8 {
            for (n, m) in [(0, 1), (1, 1), (2, 1), (1, 2), (0, 3)] {
                let z = interpret(&Diagram::z(Angle::quarter(q), n, m), Mode::Exact).unwrap();
                let x = interpret(&Diagram::x(Angle::quarter(q), n, m), Mode::Exact).unwrap();
                let expect = hadamard_power(m).matmul(z.exact().unwrap()).matmul(&hadamard_power(n));
                assert_eq!(x.exact().unwrap(), &expect);
            }
        }
    }

    #[test]
    fn snake_is_identity() {
        let c = Calculus::Zx;
        let top = Diagram::identity(c, 1).tensor(&Diagram::cap(c)).unwrap();
        let bottom = Diagram::cup(c).tensor(&Diagram::identity(c, 1)).unwrap();
        let m = interpret(&bottom.compose(&top).unwrap(), Mode::Exact).unwrap();
        assert_eq!(ints(&m), vec![1, 0, 0, 1]);
        let swap = interpret(&Diagram::swap(c), Mode::Exact).unwrap();
        assert_eq!(ints(&swap), vec![1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn self_loop_is_traced() {
        // Z(α) with one self-loop and one free leg: diag entries 1, e^{iα}
        let mut d = Diagram::z(Angle::quarter(2), 1, 2);
        d.wires = vec![(End::Input(0), End::port(0, 0)), (End::port(0, 1), End::port(0, 2))];
        d.n_outputs = 0;
        let m = interpret(&d, Mode::Exact).unwrap();
        assert_eq!(m.get(0, 0), Entry::Exact(CycloScalar::one()));
        assert_eq!(m.get(0, 1), Entry::Exact(CycloScalar::omega_pow(2)));
    }

    #[test]
    fn sqrt2_pair_scalar() {
        let d = Diagram::x(Angle::zero(), 1, 0).compose(&Diagram::z(Angle::zero(), 0, 1)).unwrap();
        let m = interpret(&d, Mode::Exact).unwrap();
        assert_eq!(m.get(0, 0), Entry::Exact(CycloScalar::sqrt2()));
    }

    #[test]
    fn not_equal_witness() {
        let a = Diagram::z(Angle::quarter(1), 1, 1);
        let b = Diagram::z(Angle::quarter(3), 1, 1);
        match check_equal(&a, &b, Mode::Exact, DEFAULT_TOL).unwrap() {
            Equality::NotEqual { row, col, .. } => assert_eq!((row, col), (1, 1)),
            other => panic!("{other:?}"),
        }
        assert_eq!(check_equal(&a, &a, Mode::Exact, DEFAULT_TOL).unwrap(), Equality::Equal);
    }

    #[test]
    fn up_to_scalar() {
        let a = Diagram::z(Angle::zero(), 1, 1);
        let b = a.tensor(&Diagram::generator(NodeKind::z(Angle::zero(), 0, 0))).unwrap();
        assert_eq!(
            check_equal(&a, &b, Mode::Exact, DEFAULT_TOL).unwrap(),
            Equality::EqualUpToGlobalScalar(ApproxScalar::new(2.0, 0.0))
        );
    }

    #[test]
    fn float_mode_rejects_nothing_but_linear() {
        let d = Diagram::z(Angle::float(0.3), 1, 1);
        assert!(matches!(interpret(&d, Mode::Exact), Err(Error::NotExactAngle(_))));
        let m = interpret(&d, Mode::Float).unwrap();
        assert!((m.get(1, 1).to_complex() - ApproxScalar::from_polar(1.0, 0.3)).norm() < 1e-12);
        let l = Diagram::z(Angle::var("a"), 1, 1);
        assert_eq!(interpret(&l, Mode::Float), Err(Error::LinearAngle));
    }

    #[test]
    fn overflow_is_reported() {
        let d = Diagram::identity(Calculus::Zx, 13);
        assert_eq!(interpret(&d, Mode::Exact), Err(Error::DimensionOverflow { needed: 26, cap: 24 }));
    }
}
