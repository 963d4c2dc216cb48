//! Open-graph diagrams for both calculi.
//!
//! A diagram is a set of typed nodes, a perfect matching of endpoints
//! (node ports and boundary slots) called wires, and the counts of input and
//! output slots. Identities, swaps, cups and caps are never nodes: they are
//! wires between boundary slots, so snake equations hold by construction.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::angle::Angle;
use crate::error::{Error, Result};

pub type NodeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Calculus {
    Zx,
    Zw,
}

impl fmt::Display for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Calculus::Zx => "zx",
            Calculus::Zw => "zw",
        })
    }
}

/// A wire endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Port { node: NodeId, port: usize },
    Input(usize),
    Output(usize),
}

impl End {
    pub fn port(node: NodeId, port: usize) -> Self {
        End::Port { node, port }
    }

    pub fn node(&self) -> Option<NodeId> {
        match self {
            End::Port { node, .. } => Some(*node),
            _ => None,
        }
    }

    pub fn is_boundary(&self) -> bool {
        !matches!(self, End::Port { .. })
    }
}

impl fmt::Display for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            End::Port { node, port } => write!(f, "n{node}.{port}"),
            End::Input(i) => write!(f, "in{i}"),
            End::Output(i) => write!(f, "out{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum NodeKind {
    Z { angle: Angle, inputs: usize, outputs: usize },
    X { angle: Angle, inputs: usize, outputs: usize },
    Hadamard,
    /// Port 0 is the base (input), port 1 the apex (output).
    Triangle,
    ZWhite11,
    ZWhite21,
    WBlack11,
    WBlack12,
    /// Ports in fixed order `in₀, in₁, out₀, out₁`.
    ZwCross,
    Sqrt2Star,
}

impl NodeKind {
    pub fn z(angle: Angle, inputs: usize, outputs: usize) -> Self {
        NodeKind::Z { angle, inputs, outputs }
    }

    pub fn x(angle: Angle, inputs: usize, outputs: usize) -> Self {
        NodeKind::X { angle, inputs, outputs }
    }

    pub fn arity(&self) -> usize {
        match self {
            NodeKind::Z { inputs, outputs, .. } | NodeKind::X { inputs, outputs, .. } => inputs + outputs,
            NodeKind::Hadamard | NodeKind::Triangle | NodeKind::ZWhite11 | NodeKind::WBlack11 => 2,
            NodeKind::ZWhite21 | NodeKind::WBlack12 => 3,
            NodeKind::ZwCross => 4,
            NodeKind::Sqrt2Star => 0,
        }
    }

    /// `(inputs, outputs)` split of the ports.
    pub fn io(&self) -> (usize, usize) {
        match self {
            NodeKind::Z { inputs, outputs, .. } | NodeKind::X { inputs, outputs, .. } => (*inputs, *outputs),
            NodeKind::Hadamard | NodeKind::Triangle | NodeKind::ZWhite11 | NodeKind::WBlack11 => (1, 1),
            NodeKind::ZWhite21 => (2, 1),
            NodeKind::WBlack12 => (1, 2),
            NodeKind::ZwCross => (2, 2),
            NodeKind::Sqrt2Star => (0, 0),
        }
    }

    pub fn calculus(&self) -> Calculus {
        match self {
            NodeKind::Z { .. } | NodeKind::X { .. } | NodeKind::Hadamard | NodeKind::Triangle => Calculus::Zx,
            _ => Calculus::Zw,
        }
    }

    /// Whether the interpretation is invariant under any permutation of
    /// ports. Only the triangle and the ZW crossing care about port order.
    pub fn is_symmetric(&self) -> bool {
        !matches!(self, NodeKind::Triangle | NodeKind::ZwCross)
    }

    pub fn angle(&self) -> Option<&Angle> {
        match self {
            NodeKind::Z { angle, .. } | NodeKind::X { angle, .. } => Some(angle),
            _ => None,
        }
    }

    pub fn angle_mut(&mut self) -> Option<&mut Angle> {
        match self {
            NodeKind::Z { angle, .. } | NodeKind::X { angle, .. } => Some(angle),
            _ => None,
        }
    }

    pub fn is_spider(&self) -> bool {
        matches!(self, NodeKind::Z { .. } | NodeKind::X { .. })
    }

    /// Same generator up to angle and spider input/output split.
    pub fn same_shape(&self, other: &NodeKind) -> bool {
        match (self, other) {
            (NodeKind::Z { .. }, NodeKind::Z { .. }) | (NodeKind::X { .. }, NodeKind::X { .. }) => {
                self.arity() == other.arity()
            }
            _ => std::mem::discriminant(self) == std::mem::discriminant(other),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            NodeKind::Z { .. } => "z",
            NodeKind::X { .. } => "x",
            NodeKind::Hadamard => "h",
            NodeKind::Triangle => "triangle",
            NodeKind::ZWhite11 => "zw_white_1_1",
            NodeKind::ZWhite21 => "zw_white_2_1",
            NodeKind::WBlack11 => "zw_black_1_1",
            NodeKind::WBlack12 => "zw_black_1_2",
            NodeKind::ZwCross => "zw_cross",
            NodeKind::Sqrt2Star => "star",
        }
    }

    /// Builds a fixed-arity kind from its name.
    pub fn from_name(name: &str) -> Option<NodeKind> {
        Some(match name {
            "h" => NodeKind::Hadamard,
            "triangle" => NodeKind::Triangle,
            "zw_white_1_1" => NodeKind::ZWhite11,
            "zw_white_2_1" => NodeKind::ZWhite21,
            "zw_black_1_1" => NodeKind::WBlack11,
            "zw_black_1_2" => NodeKind::WBlack12,
            "zw_cross" => NodeKind::ZwCross,
            "star" => NodeKind::Sqrt2Star,
            _ => return None,
        })
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeKind::Z { angle, inputs, outputs } => write!(f, "Z({angle})[{inputs},{outputs}]"),
            NodeKind::X { angle, inputs, outputs } => write!(f, "X({angle})[{inputs},{outputs}]"),
            other => f.write_str(other.name()),
        }
    }
}

/// A structural problem found by [`Diagram::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    UnmatchedPort(End),
    DuplicateEnd(End),
    UnknownNode(End),
    PortOutOfRange(End),
    WrongCalculus(NodeId),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnmatchedPort(e) => write!(f, "unmatched endpoint {e}"),
            Violation::DuplicateEnd(e) => write!(f, "endpoint {e} used by more than one wire"),
            Violation::UnknownNode(e) => write!(f, "wire endpoint {e} refers to a missing node"),
            Violation::PortOutOfRange(e) => write!(f, "port {e} out of range"),
            Violation::WrongCalculus(n) => write!(f, "node n{n} does not belong to the diagram's calculus"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Diagram {
    pub calculus: Calculus,
    pub nodes: BTreeMap<NodeId, NodeKind>,
    pub wires: Vec<(End, End)>,
    pub n_inputs: usize,
    pub n_outputs: usize,
}

/// Either a real endpoint or a temporary junction used while fusing
/// boundaries. Every junction must occur in exactly two links.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Term {
    Real(End),
    Hub(usize),
}

/// Resolves chains through junctions into plain wires. Returns the wires and
/// the number of closed loops that contained no real endpoint.
pub(crate) fn splice(links: &[(Term, Term)], n_hubs: usize) -> (Vec<(End, End)>, usize) {
    let mut hub_links: Vec<Vec<usize>> = vec![Vec::new(); n_hubs];
    for (i, (a, b)) in links.iter().enumerate() {
        for t in [a, b] {
            if let Term::Hub(h) = t {
                hub_links[*h].push(i);
            }
        }
    }
    let mut visited = vec![false; links.len()];
    let mut wires = Vec::new();
    let other = |t: Term, (a, b): (Term, Term)| if a == t { b } else { a };
    for start in 0..links.len() {
        if visited[start] {
            continue;
        }
        let (a, b) = links[start];
        let (from, mut cur) = match (a, b) {
            (Term::Real(_), _) => (a, b),
            (_, Term::Real(_)) => (b, a),
            _ => continue,
        };
        visited[start] = true;
        let mut link = start;
        loop {
            match cur {
                Term::Real(e) => {
                    if let Term::Real(s) = from {
                        wires.push((s, e));
                    }
                    break;
                }
                Term::Hub(h) => {
                    let next = hub_links[h]
                        .iter()
                        .copied()
                        .find(|&l| l != link || hub_links[h].iter().filter(|&&x| x == link).count() > 1)
                        .expect("junction with a single link");
                    visited[next] = true;
                    cur = other(cur, links[next]);
                    link = next;
                }
            }
        }
    }
    // remaining links are closed cycles made of junctions only
    let mut loops = 0;
    for start in 0..links.len() {
        if visited[start] {
            continue;
        }
        loops += 1;
        let mut link = start;
        let mut cur = links[start].1;
        visited[start] = true;
        loop {
            let Term::Hub(h) = cur else { unreachable!() };
            let next = hub_links[h].iter().copied().find(|&l| l != link);
            match next {
                Some(n) if !visited[n] => {
                    visited[n] = true;
                    cur = other(cur, links[n]);
                    link = n;
                }
                _ => break,
            }
        }
    }
    (wires, loops)
}

impl Diagram {
    pub fn empty(calculus: Calculus) -> Self {
        Diagram { calculus, nodes: BTreeMap::new(), wires: Vec::new(), n_inputs: 0, n_outputs: 0 }
    }

    /// `n` parallel identity wires.
    pub fn identity(calculus: Calculus, n: usize) -> Self {
        Diagram {
            calculus,
            nodes: BTreeMap::new(),
            wires: (0..n).map(|i| (End::Input(i), End::Output(i))).collect(),
            n_inputs: n,
            n_outputs: n,
        }
    }

    pub fn swap(calculus: Calculus) -> Self {
        Diagram {
            calculus,
            nodes: BTreeMap::new(),
            wires: vec![(End::Input(0), End::Output(1)), (End::Input(1), End::Output(0))],
            n_inputs: 2,
            n_outputs: 2,
        }
    }

    /// ε: 2 → 0.
    pub fn cup(calculus: Calculus) -> Self {
        Diagram {
            calculus,
            nodes: BTreeMap::new(),
            wires: vec![(End::Input(0), End::Input(1))],
            n_inputs: 2,
            n_outputs: 0,
        }
    }

    /// η: 0 → 2.
    pub fn cap(calculus: Calculus) -> Self {
        Diagram {
            calculus,
            nodes: BTreeMap::new(),
            wires: vec![(End::Output(0), End::Output(1))],
            n_inputs: 0,
            n_outputs: 2,
        }
    }

    /// Single-node diagram with inputs wired to the node's input ports and
    /// outputs to its output ports, in order.
    pub fn generator(kind: NodeKind) -> Self {
        let calculus = kind.calculus();
        let (n, m) = kind.io();
        let mut wires = Vec::with_capacity(n + m);
        for i in 0..n {
            wires.push((End::Input(i), End::port(0, i)));
        }
        for j in 0..m {
            wires.push((End::port(0, n + j), End::Output(j)));
        }
        let mut nodes = BTreeMap::new();
        nodes.insert(0, kind);
        Diagram { calculus, nodes, wires, n_inputs: n, n_outputs: m }
    }

    pub fn z(angle: Angle, n: usize, m: usize) -> Self {
        Self::generator(NodeKind::z(angle, n, m))
    }

    pub fn x(angle: Angle, n: usize, m: usize) -> Self {
        Self::generator(NodeKind::x(angle, n, m))
    }

    pub fn hadamard() -> Self {
        Self::generator(NodeKind::Hadamard)
    }

    pub fn triangle() -> Self {
        Self::generator(NodeKind::Triangle)
    }

    /// Generator by kind with explicit arity check against `(n, m)`.
    pub fn make_generator(kind: NodeKind, arity: Option<(usize, usize)>) -> Result<Self> {
        match (&kind, arity) {
            (NodeKind::Z { angle, .. }, Some((n, m))) => Ok(Self::z(angle.clone(), n, m)),
            (NodeKind::X { angle, .. }, Some((n, m))) => Ok(Self::x(angle.clone(), n, m)),
            (k, Some(io)) if k.is_spider() || k.io() == io => Ok(Self::generator(kind)),
            (k, Some(io)) => Err(Error::ArityMismatch(format!("{} has arity {:?}, got {:?}", k.name(), k.io(), io))),
            (_, None) => Ok(Self::generator(kind)),
        }
    }

    pub fn arity(&self) -> (usize, usize) {
        (self.n_inputs, self.n_outputs)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn next_id(&self) -> NodeId {
        self.nodes.keys().next_back().map_or(0, |k| k + 1)
    }

    /// Endpoint → the endpoint at the other side of its wire.
    pub fn partner_map(&self) -> HashMap<End, End> {
        let mut m = HashMap::with_capacity(self.wires.len() * 2);
        for &(a, b) in &self.wires {
            m.insert(a, b);
            m.insert(b, a);
        }
        m
    }

    /// Node ids adjacent to `node` (with multiplicity, excluding boundary).
    pub fn neighbours(&self, node: NodeId) -> Vec<NodeId> {
        let mut out = Vec::new();
        for &(a, b) in &self.wires {
            if a.node() == Some(node) {
                if let Some(n) = b.node() {
                    out.push(n);
                }
            }
            if b.node() == Some(node) {
                if let Some(n) = a.node() {
                    out.push(n);
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen: BTreeSet<End> = BTreeSet::new();
        for &(a, b) in &self.wires {
            for e in [a, b] {
                match e {
                    End::Port { node, port } => match self.nodes.get(&node) {
                        None => out.push(Violation::UnknownNode(e)),
                        Some(k) if port >= k.arity() => out.push(Violation::PortOutOfRange(e)),
                        _ => {}
                    },
                    End::Input(i) if i >= self.n_inputs => out.push(Violation::PortOutOfRange(e)),
                    End::Output(i) if i >= self.n_outputs => out.push(Violation::PortOutOfRange(e)),
                    _ => {}
                }
                if !seen.insert(e) {
                    out.push(Violation::DuplicateEnd(e));
                }
            }
        }
        for (&id, kind) in &self.nodes {
            if kind.calculus() != self.calculus {
                out.push(Violation::WrongCalculus(id));
            }
            for p in 0..kind.arity() {
                let e = End::port(id, p);
                if !seen.contains(&e) {
                    out.push(Violation::UnmatchedPort(e));
                }
            }
        }
        for i in 0..self.n_inputs {
            if !seen.contains(&End::Input(i)) {
                out.push(Violation::UnmatchedPort(End::Input(i)));
            }
        }
        for i in 0..self.n_outputs {
            if !seen.contains(&End::Output(i)) {
                out.push(Violation::UnmatchedPort(End::Output(i)));
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn check_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidDiagram(v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")))
        }
    }

    /// Node representing a closed wire loop (value 2).
    pub(crate) fn add_loop_scalar(&mut self) {
        let id = self.next_id();
        match self.calculus {
            Calculus::Zx => {
                self.nodes.insert(id, NodeKind::z(Angle::zero(), 0, 0));
            }
            Calculus::Zw => {
                self.nodes.insert(id, NodeKind::WBlack11);
                self.nodes.insert(id + 1, NodeKind::WBlack11);
                self.wires.push((End::port(id, 1), End::port(id + 1, 0)));
                self.wires.push((End::port(id + 1, 1), End::port(id, 0)));
            }
        }
    }

    fn shifted(&self, offset: NodeId) -> (BTreeMap<NodeId, NodeKind>, impl Fn(End) -> End) {
        let nodes = self.nodes.iter().map(|(k, v)| (k + offset, v.clone())).collect();
        let f = move |e: End| match e {
            End::Port { node, port } => End::port(node + offset, port),
            other => other,
        };
        (nodes, f)
    }

    /// `self ⊗ other`: side by side, `other` to the right.
    pub fn tensor(&self, other: &Diagram) -> Result<Diagram> {
        if self.calculus != other.calculus {
            return Err(Error::CalculusMismatch(format!("{} ⊗ {}", self.calculus, other.calculus)));
        }
        let offset = self.next_id();
        let (nodes2, shift) = other.shifted(offset);
        let mut nodes = self.nodes.clone();
        nodes.extend(nodes2);
        let (ni, no) = (self.n_inputs, self.n_outputs);
        let mut wires = self.wires.clone();
        for &(a, b) in &other.wires {
            let map = |e: End| match shift(e) {
                End::Input(i) => End::Input(i + ni),
                End::Output(i) => End::Output(i + no),
                p => p,
            };
            wires.push((map(a), map(b)));
        }
        Ok(Diagram {
            calculus: self.calculus,
            nodes,
            wires,
            n_inputs: ni + other.n_inputs,
            n_outputs: no + other.n_outputs,
        })
    }

    /// `self ∘ first`: `first` on top, its outputs plugged into `self`'s inputs.
    pub fn compose(&self, first: &Diagram) -> Result<Diagram> {
        if self.calculus != first.calculus {
            return Err(Error::CalculusMismatch(format!("{} ∘ {}", self.calculus, first.calculus)));
        }
        if first.n_outputs != self.n_inputs {
            return Err(Error::TypeMismatch(format!(
                "cannot compose {}→{} after {}→{}",
                self.n_inputs, self.n_outputs, first.n_inputs, first.n_outputs
            )));
        }
        let offset = first.next_id();
        let (nodes2, shift) = self.shifted(offset);
        let mut nodes = first.nodes.clone();
        nodes.extend(nodes2);
        let mut links = Vec::new();
        for &(a, b) in &first.wires {
            let t = |e: End| match e {
                End::Output(j) => Term::Hub(j),
                other => Term::Real(other),
            };
            links.push((t(a), t(b)));
        }
        for &(a, b) in &self.wires {
            let t = |e: End| match shift(e) {
                End::Input(j) => Term::Hub(j),
                other => Term::Real(other),
            };
            links.push((t(a), t(b)));
        }
        let (wires, loops) = splice(&links, self.n_inputs);
        let mut d = Diagram {
            calculus: self.calculus,
            nodes,
            wires,
            n_inputs: first.n_inputs,
            n_outputs: self.n_outputs,
        };
        for _ in 0..loops {
            d.add_loop_scalar();
        }
        Ok(d)
    }

    /// Chains `ds[0]` first, then `ds[1]`, …
    pub fn sequence(ds: &[Diagram]) -> Result<Diagram> {
        let mut it = ds.iter();
        let mut acc = it.next().cloned().ok_or_else(|| Error::TypeMismatch("empty sequence".into()))?;
        for d in it {
            acc = d.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn tensor_all(calculus: Calculus, ds: &[Diagram]) -> Result<Diagram> {
        let mut acc = Diagram::empty(calculus);
        for d in ds {
            acc = acc.tensor(d)?;
        }
        Ok(acc)
    }

    /// Renumbers nodes to `0..n` keeping their order.
    pub fn compact(&self) -> Diagram {
        let map: HashMap<NodeId, NodeId> = self.nodes.keys().enumerate().map(|(i, k)| (*k, i)).collect();
        let f = |e: End| match e {
            End::Port { node, port } => End::port(map[&node], port),
            o => o,
        };
        Diagram {
            calculus: self.calculus,
            nodes: self.nodes.iter().map(|(k, v)| (map[k], v.clone())).collect(),
            wires: self.wires.iter().map(|&(a, b)| (f(a), f(b))).collect(),
            n_inputs: self.n_inputs,
            n_outputs: self.n_outputs,
        }
    }

    /// Closes every input into an output and vice versa: the transpose, with
    /// inputs and outputs exchanged.
    pub fn transpose(&self) -> Diagram {
        let f = |e: End| match e {
            End::Input(i) => End::Output(i),
            End::Output(i) => End::Input(i),
            o => o,
        };
        Diagram {
            calculus: self.calculus,
            nodes: self.nodes.clone(),
            wires: self.wires.iter().map(|&(a, b)| (f(a), f(b))).collect(),
            n_inputs: self.n_outputs,
            n_outputs: self.n_inputs,
        }
    }

    /// Swaps Z and X spiders; triangles become `H ∘ Δ ∘ H`.
    pub fn color_swap(&self) -> Result<Diagram> {
        if self.calculus != Calculus::Zx {
            return Err(Error::CalculusMismatch("colour swap needs a ZX diagram".into()));
        }
        let mut d = self.clone();
        let mut next = d.next_id();
        let ids: Vec<NodeId> = d.nodes.keys().copied().collect();
        for id in ids {
            let kind = d.nodes[&id].clone();
            match kind {
                NodeKind::Z { angle, inputs, outputs } => {
                    d.nodes.insert(id, NodeKind::X { angle, inputs, outputs });
                }
                NodeKind::X { angle, inputs, outputs } => {
                    d.nodes.insert(id, NodeKind::Z { angle, inputs, outputs });
                }
                NodeKind::Triangle => {
                    for port in 0..2 {
                        let h = next;
                        next += 1;
                        d.nodes.insert(h, NodeKind::Hadamard);
                        let e = End::port(id, port);
                        for w in d.wires.iter_mut() {
                            if w.0 == e {
                                w.0 = End::port(h, 1 - port);
                            } else if w.1 == e {
                                w.1 = End::port(h, 1 - port);
                            }
                        }
                        d.wires.push((End::port(h, port), e));
                    }
                }
                _ => {}
            }
        }
        Ok(d)
    }

    /// Angle-free structural hash used to detect stale embeddings.
    pub fn fingerprint(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.calculus.hash(&mut h);
        self.n_inputs.hash(&mut h);
        self.n_outputs.hash(&mut h);
        for (id, k) in &self.nodes {
            id.hash(&mut h);
            k.to_string().hash(&mut h);
        }
        let mut ws: Vec<(End, End)> = self.wires.iter().map(|&(a, b)| if a <= b { (a, b) } else { (b, a) }).collect();
        ws.sort();
        ws.hash(&mut h);
        h.finish()
    }

    pub fn angles(&self) -> impl Iterator<Item = &Angle> {
        self.nodes.values().filter_map(|k| k.angle())
    }

    pub fn all_angles_exact(&self) -> bool {
        self.angles().all(|a| a.is_quarter_multiple())
    }

    pub fn has_linear_angles(&self) -> bool {
        self.angles().any(|a| a.is_linear())
    }

    /// Substitutes every linear angle.
    pub fn instantiate(&self, binding: &crate::angle::Binding) -> Result<Diagram> {
        let mut d = self.clone();
        for k in d.nodes.values_mut() {
            if let Some(a) = k.angle_mut() {
                *a = a.instantiate(binding)?;
            }
        }
        Ok(d)
    }
}

/// Incremental construction of diagrams by naming wires explicitly.
///
/// `link` on a spider (or any symmetric node) without a port takes the next
/// free port; triangles and crossings need explicit ports.
#[derive(Clone, Debug)]
pub struct Builder {
    calculus: Calculus,
    nodes: BTreeMap<NodeId, NodeKind>,
    wires: Vec<(End, End)>,
    used: HashMap<NodeId, usize>,
    n_inputs: usize,
    n_outputs: usize,
}

/// A wire endpoint as given to [`Builder::link`].
#[derive(Clone, Copy, Debug)]
pub enum Pin {
    Next(NodeId),
    At(NodeId, usize),
    In(usize),
    Out(usize),
}

impl From<NodeId> for Pin {
    fn from(n: NodeId) -> Self {
        Pin::Next(n)
    }
}

impl From<(NodeId, usize)> for Pin {
    fn from((n, p): (NodeId, usize)) -> Self {
        Pin::At(n, p)
    }
}

impl Builder {
    pub fn new(calculus: Calculus) -> Self {
        Builder {
            calculus,
            nodes: BTreeMap::new(),
            wires: Vec::new(),
            used: HashMap::new(),
            n_inputs: 0,
            n_outputs: 0,
        }
    }

    pub fn node(&mut self, kind: NodeKind) -> NodeId {
        let id = self.nodes.len();
        self.nodes.insert(id, kind);
        id
    }

    pub fn z(&mut self, angle: Angle, legs: usize) -> NodeId {
        self.node(NodeKind::z(angle, 0, legs))
    }

    pub fn x(&mut self, angle: Angle, legs: usize) -> NodeId {
        self.node(NodeKind::x(angle, 0, legs))
    }

    pub fn h(&mut self) -> NodeId {
        self.node(NodeKind::Hadamard)
    }

    pub fn triangle(&mut self) -> NodeId {
        self.node(NodeKind::Triangle)
    }

    fn resolve(&mut self, p: Pin) -> End {
        match p {
            Pin::Next(n) => {
                let u = self.used.entry(n).or_insert(0);
                let e = End::port(n, *u);
                *u += 1;
                e
            }
            Pin::At(n, port) => End::port(n, port),
            Pin::In(i) => {
                self.n_inputs = self.n_inputs.max(i + 1);
                End::Input(i)
            }
            Pin::Out(i) => {
                self.n_outputs = self.n_outputs.max(i + 1);
                End::Output(i)
            }
        }
    }

    pub fn link(&mut self, a: impl Into<Pin>, b: impl Into<Pin>) -> &mut Self {
        let a = self.resolve(a.into());
        let b = self.resolve(b.into());
        self.wires.push((a, b));
        self
    }

    /// Fixes the boundary sizes (useful for 0-slot sides).
    pub fn boundary(&mut self, n_inputs: usize, n_outputs: usize) -> &mut Self {
        self.n_inputs = self.n_inputs.max(n_inputs);
        self.n_outputs = self.n_outputs.max(n_outputs);
        self
    }

    /// Finishes the diagram; spider arities are fixed to the number of
    /// ports actually used when they were declared with zero legs.
    pub fn build(&self) -> Result<Diagram> {
        let mut nodes = self.nodes.clone();
        for (id, k) in nodes.iter_mut() {
            let used = self.wires.iter().flat_map(|(a, b)| [a, b]).filter(|e| e.node() == Some(*id)).count();
            if let NodeKind::Z { inputs, outputs, .. } | NodeKind::X { inputs, outputs, .. } = k {
                if *inputs + *outputs == 0 {
                    *outputs = used;
                }
            }
        }
        let d = Diagram {
            calculus: self.calculus,
            nodes,
            wires: self.wires.clone(),
            n_inputs: self.n_inputs,
            n_outputs: self.n_outputs,
        };
        d.check_valid()?;
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snake_has_no_nodes() {
        let c = Calculus::Zx;
        let top = Diagram::identity(c, 1).tensor(&Diagram::cap(c)).unwrap();
        let bottom = Diagram::cup(c).tensor(&Diagram::identity(c, 1)).unwrap();
        let snake = bottom.compose(&top).unwrap();
        assert!(snake.validate().is_empty());
        assert_eq!(snake.arity(), (1, 1));
        assert_eq!(snake.node_count(), 0);
        assert_eq!(snake.wires, vec![(End::Input(0), End::Output(0))]);
    }

    #[test]
    fn compositions_shapes() {
        let hh = Diagram::hadamard().compose(&Diagram::hadamard()).unwrap();
        assert_eq!((hh.node_count(), hh.arity()), (2, (1, 1)));
        let d = Diagram::z(Angle::zero(), 1, 2).compose(&Diagram::z(Angle::zero(), 2, 1)).unwrap();
        assert_eq!((d.arity(), d.wires.len()), ((2, 2), 5));
        let ht = Diagram::hadamard().tensor(&Diagram::triangle()).unwrap();
        assert_eq!((ht.node_count(), ht.arity()), (2, (2, 2)));
        let z = Diagram::z(Angle::zero(), 2, 1).compose(&Diagram::z(Angle::zero(), 1, 2)).unwrap();
        assert_eq!((z.node_count(), z.arity(), z.wires.len()), (2, (1, 1), 4));
    }

    #[test]
    fn closing_a_loop_adds_a_scalar() {
        let c = Calculus::Zx;
        let d = Diagram::cup(c).compose(&Diagram::cap(c)).unwrap();
        assert_eq!(d.node_count(), 1);
        assert!(d.is_valid());
        let w = Diagram::cup(Calculus::Zw).compose(&Diagram::cap(Calculus::Zw)).unwrap();
        assert_eq!(w.node_count(), 2);
        assert!(w.is_valid());
    }

    #[test]
    fn validate_reports_problems() {
        let mut d = Diagram::hadamard();
        d.wires.pop();
        let v = d.validate();
        assert!(v.contains(&Violation::UnmatchedPort(End::port(0, 1))));
        let mut d = Diagram::z(Angle::zero(), 1, 1);
        d.nodes.insert(1, NodeKind::WBlack12);
        assert!(d.validate().contains(&Violation::WrongCalculus(1)));
        assert_eq!(
            Diagram::make_generator(NodeKind::Triangle, Some((2, 1))).unwrap_err(),
            Error::ArityMismatch("triangle has arity (1, 1), got (2, 1)".into())
        );
    }

    #[test]
    fn zero_legged_spider() {
        let d = Diagram::z(Angle::pi(), 0, 0);
        assert_eq!((d.arity(), d.node_count(), d.wires.len()), ((0, 0), 1, 0));
    }

    #[test]
    fn color_swap_shapes() {
        let d = Diagram::z(Angle::quarter(1), 1, 1).color_swap().unwrap();
        assert!(matches!(d.nodes[&0], NodeKind::X { .. }));
        assert_eq!(Diagram::hadamard().color_swap().unwrap(), Diagram::hadamard());
        let t = Diagram::triangle().color_swap().unwrap();
        assert_eq!(t.node_count(), 3);
        assert!(t.is_valid());
        assert_eq!(t.nodes.values().filter(|k| **k == NodeKind::Hadamard).count(), 2);
    }
}
