//! Subgraph matching of concrete patterns into host diagrams.
//!
//! Pattern boundary slots stand for cut points on host wires: a pattern wire
//! from a node port to a slot ("leg") may meet anything in the host, and a
//! pattern wire between two slots ("bare wire") is matched to a host wire that
//! touches none of the matched nodes. Ports of symmetric nodes may be
//! permuted; triangles and ZW crossings keep their port order.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::angle::{Angle, Binding};
use crate::diagram::{Diagram, End, NodeId, NodeKind};
use crate::error::{Error, Result};
use crate::rewrite::{Dir, Domain, Legs, RewriteRule};

/// A concrete occurrence of a rule side inside a host diagram.
#[derive(Clone, Debug, PartialEq)]
pub struct Embedding {
    pub legs: Legs,
    pub bind: Binding,
    /// Pattern node → host node.
    pub nodes: BTreeMap<NodeId, NodeId>,
    /// Pattern node → host port used for each pattern port.
    pub ports: BTreeMap<NodeId, Vec<usize>>,
    /// Host wire matched by each bare pattern wire, oriented like the
    /// pattern wire.
    pub bare: Vec<(End, End)>,
    pub host_hash: u64,
}

/// Equality of constant or linear angles (floats modulo 2π).
pub fn angles_equal(a: &Angle, b: &Angle) -> bool {
    a.approx_eq(b)
}

/// Binds the free parameters of `pat` so that it equals `host`. Several
/// free parameters: all but the last are fixed to 0 first.
pub fn unify(pat: &Angle, host: &Angle, bind: &Binding, params: &BTreeMap<String, Domain>) -> Option<Binding> {
    let mut bind = bind.clone();
    let free: Vec<String> = pat.variables().into_iter().filter(|v| !bind.contains_key(v)).collect();
    if let Some((last, rest)) = free.split_last() {
        for v in rest {
            bind.insert(v.clone(), Angle::zero());
        }
        let Angle::Linear { coeffs, .. } = pat else { unreachable!() };
        let c = coeffs[last];
        if c.abs() != 1 {
            return None;
        }
        let mut probe = bind.clone();
        probe.insert(last.clone(), Angle::zero());
        let others = pat.instantiate(&probe).ok()?;
        let val = host.checked_add(&others.neg()).ok()?.scale(c);
        bind.insert(last.clone(), val);
    }
    for (v, a) in &bind {
        if let Some(d) = params.get(v) {
            if !d.admits(a) {
                return None;
            }
        }
    }
    let v = pat.instantiate(&bind).ok()?;
    angles_equal(&v, host).then_some(bind)
}

struct Pattern<'a> {
    d: &'a Diagram,
    partner: HashMap<End, End>,
    order: Vec<NodeId>,
    bare: Vec<(End, End)>,
}

impl<'a> Pattern<'a> {
    fn new(d: &'a Diagram, host: &Diagram) -> Pattern<'a> {
        let partner = d.partner_map();
        // host candidates per pattern node, to start components on rare kinds
        let rarity = |k: &NodeKind| host.nodes.values().filter(|h| h.same_shape(k)).count();
        let mut order = Vec::new();
        let mut seen = HashSet::new();
        loop {
            let start = d
                .nodes
                .iter()
                .filter(|(id, _)| !seen.contains(*id))
                .min_by_key(|(id, k)| (rarity(k), **id))
                .map(|(id, _)| *id);
            let Some(start) = start else { break };
            let mut queue = std::collections::VecDeque::from([start]);
            seen.insert(start);
            while let Some(n) = queue.pop_front() {
                order.push(n);
                for p in 0..d.nodes[&n].arity() {
                    if let Some(End::Port { node, .. }) = partner.get(&End::port(n, p)) {
                        if seen.insert(*node) {
                            queue.push_back(*node);
                        }
                    }
                }
            }
        }
        let bare = d.wires.iter().copied().filter(|(a, b)| a.is_boundary() && b.is_boundary()).collect();
        Pattern { d, partner, order, bare }
    }
}

#[derive(Clone)]
struct State {
    nodes: BTreeMap<NodeId, NodeId>,
    used: HashSet<NodeId>,
    ports: BTreeMap<NodeId, Vec<usize>>,
    bind: Binding,
}

struct Search<'a> {
    pat: Pattern<'a>,
    host: &'a Diagram,
    hpartner: HashMap<End, End>,
    params: &'a BTreeMap<String, Domain>,
    iso: bool,
    limit: usize,
    out: Vec<State>,
    bare_out: Vec<Vec<(End, End)>>,
}

/// What a pattern port must connect to.
enum Need {
    Forced(usize),
    SelfLoop(usize),
    /// Port of a not-yet-mapped pattern node.
    Fresh(NodeId),
    Leg(End),
}

impl<'a> Search<'a> {
    fn run(&mut self, i: usize, st: &State) {
        if self.out.len() >= self.limit {
            return;
        }
        if i == self.pat.order.len() {
            self.finish(st);
            return;
        }
        let a = self.pat.order[i];
        let pk = &self.pat.d.nodes[&a];
        // a wire to an already mapped node pins the host node
        let mut pinned = None;
        for p in 0..pk.arity() {
            if let Some(End::Port { node: b, port: q }) = self.pat.partner.get(&End::port(a, p)) {
                if let Some(&hb) = st.nodes.get(b) {
                    let hy = End::port(hb, st.ports[b][*q]);
                    match self.hpartner.get(&hy) {
                        Some(End::Port { node: h, .. }) => pinned = Some(*h),
                        _ => return,
                    }
                    break;
                }
            }
        }
        let candidates: Vec<NodeId> = match pinned {
            Some(h) => vec![h],
            None => self.host.nodes.keys().copied().collect(),
        };
        for h in candidates {
            if st.used.contains(&h) {
                continue;
            }
            let hk = &self.host.nodes[&h];
            if !pk.same_shape(hk) {
                continue;
            }
            let bind = match (pk.angle(), hk.angle()) {
                (Some(pa), Some(ha)) => match unify(pa, ha, &st.bind, self.params) {
                    Some(b) => b,
                    None => continue,
                },
                _ => st.bind.clone(),
            };
            for ports in self.assign_ports(a, h, st) {
                let mut next = st.clone();
                next.nodes.insert(a, h);
                next.used.insert(h);
                next.ports.insert(a, ports);
                next.bind = bind.clone();
                self.run(i + 1, &next);
                if self.out.len() >= self.limit {
                    return;
                }
            }
        }
    }

    fn needs(&self, a: NodeId, h: NodeId, st: &State) -> Option<Vec<Need>> {
        let arity = self.pat.d.nodes[&a].arity();
        let mut needs = Vec::with_capacity(arity);
        for p in 0..arity {
            let e = self.pat.partner[&End::port(a, p)];
            needs.push(match e {
                End::Port { node: b, port: q } if b == a => Need::SelfLoop(q),
                End::Port { node: b, port: q } => match st.nodes.get(&b) {
                    Some(&hb) => match self.hpartner.get(&End::port(hb, st.ports[&b][q])) {
                        Some(End::Port { node, port }) if *node == h => Need::Forced(*port),
                        _ => return None,
                    },
                    None => Need::Fresh(b),
                },
                slot => Need::Leg(slot),
            });
        }
        Some(needs)
    }

    fn fresh_ok(&self, h: NodeId, r: usize, b: NodeId, st: &State) -> bool {
        match self.hpartner.get(&End::port(h, r)) {
            Some(End::Port { node, .. }) => {
                *node != h && !st.used.contains(node) && self.host.nodes[node].same_shape(&self.pat.d.nodes[&b])
            }
            _ => false,
        }
    }

    fn leg_ok(&self, h: NodeId, r: usize, slot: End) -> bool {
        !self.iso || self.hpartner.get(&End::port(h, r)) == Some(&slot)
    }

    fn assign_ports(&self, a: NodeId, h: NodeId, st: &State) -> Vec<Vec<usize>> {
        let Some(needs) = self.needs(a, h, st) else { return vec![] };
        let pk = &self.pat.d.nodes[&a];
        let arity = pk.arity();
        if !pk.is_symmetric() {
            let ok = needs.iter().enumerate().all(|(p, n)| match n {
                Need::Forced(r) => *r == p,
                Need::SelfLoop(q) => self.hpartner.get(&End::port(h, p)) == Some(&End::port(h, *q)),
                Need::Fresh(b) => self.fresh_ok(h, p, *b, st),
                Need::Leg(slot) => self.leg_ok(h, p, *slot),
            });
            return if ok { vec![(0..arity).collect()] } else { vec![] };
        }
        let mut map: Vec<Option<usize>> = vec![None; arity];
        let mut taken = vec![false; arity];
        for (p, n) in needs.iter().enumerate() {
            if let Need::Forced(r) = n {
                if taken[*r] {
                    return vec![];
                }
                taken[*r] = true;
                map[p] = Some(*r);
            }
        }
        let mut results = Vec::new();
        self.assign_rest(h, st, &needs, 0, &mut map, &mut taken, &mut results);
        results
    }

    #[allow(clippy::too_many_arguments)]
    fn assign_rest(
        &self,
        h: NodeId,
        st: &State,
        needs: &[Need],
        p: usize,
        map: &mut Vec<Option<usize>>,
        taken: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if out.len() >= 64 {
            return;
        }
        if p == needs.len() {
            out.push(map.iter().map(|x| x.unwrap()).collect());
            return;
        }
        if map[p].is_some() {
            return self.assign_rest(h, st, needs, p + 1, map, taken, out);
        }
        let arity = needs.len();
        // symmetric duplicates: ports needing the same thing take host ports in
        // increasing order
        let floor = (0..p)
            .filter(|&q| same_need(&needs[q], &needs[p]))
            .filter_map(|q| map[q])
            .max()
            .map_or(0, |r| r + 1);
        match &needs[p] {
            Need::Forced(_) => unreachable!(),
            Need::SelfLoop(q) => {
                let q = *q;
                if q < p {
                    return; // assigned together with its partner
                }
                for r in floor..arity {
                    if taken[r] {
                        continue;
                    }
                    if let Some(End::Port { node, port: r2 }) = self.hpartner.get(&End::port(h, r)) {
                        if *node == h && *r2 != r && !taken[*r2] {
                            taken[r] = true;
                            taken[*r2] = true;
                            map[p] = Some(r);
                            map[q] = Some(*r2);
                            self.assign_rest(h, st, needs, p + 1, map, taken, out);
                            taken[r] = false;
                            taken[*r2] = false;
                            map[p] = None;
                            map[q] = None;
                        }
                    }
                }
            }
            Need::Fresh(b) => {
                for r in floor..arity {
                    if !taken[r] && self.fresh_ok(h, r, *b, st) {
                        taken[r] = true;
                        map[p] = Some(r);
                        self.assign_rest(h, st, needs, p + 1, map, taken, out);
                        taken[r] = false;
                        map[p] = None;
                    }
                }
            }
            Need::Leg(slot) => {
                if self.iso {
                    for r in 0..arity {
                        if !taken[r] && self.leg_ok(h, r, *slot) {
                            taken[r] = true;
                            map[p] = Some(r);
                            self.assign_rest(h, st, needs, p + 1, map, taken, out);
                            taken[r] = false;
                            map[p] = None;
                        }
                    }
                } else if let Some(r) = (0..arity).find(|&r| !taken[r]) {
                    // legs take the lowest free host port; no branching
                    taken[r] = true;
                    map[p] = Some(r);
                    self.assign_rest(h, st, needs, p + 1, map, taken, out);
                    taken[r] = false;
                    map[p] = None;
                }
            }
        }
    }

    fn finish(&mut self, st: &State) {
        if self.iso {
            let ok = self.pat.bare.iter().all(|(s, t)| self.hpartner.get(s) == Some(t));
            if ok {
                self.out.push(st.clone());
                self.bare_out.push(self.pat.bare.clone());
            }
            return;
        }
        let free: Vec<(End, End)> = self
            .host
            .wires
            .iter()
            .copied()
            .filter(|(x, y)| {
                let touches = |e: &End| e.node().is_some_and(|n| st.used.contains(&n));
                !touches(x) && !touches(y)
            })
            .collect();
        let k = self.pat.bare.len();
        let mut choice = Vec::with_capacity(k);
        self.choose_bare(st, &free, k, &mut choice);
    }

    fn choose_bare(&mut self, st: &State, free: &[(End, End)], k: usize, choice: &mut Vec<(End, End)>) {
        if self.out.len() >= self.limit {
            return;
        }
        if choice.len() == k {
            self.out.push(st.clone());
            self.bare_out.push(choice.clone());
            return;
        }
        for w in free {
            if !choice.contains(w) {
                choice.push(*w);
                self.choose_bare(st, free, k, choice);
                choice.pop();
            }
        }
    }
}

fn same_need(a: &Need, b: &Need) -> bool {
    match (a, b) {
        (Need::Fresh(x), Need::Fresh(y)) => x == y,
        (Need::Leg(_), Need::Leg(_)) => true,
        (Need::SelfLoop(_), Need::SelfLoop(_)) => true,
        _ => false,
    }
}

/// Occurrences of a concrete pattern in `host`. In `iso` mode the pattern
/// boundary must coincide with the host boundary slot by slot.
pub(crate) fn match_pattern(
    pattern: &Diagram,
    host: &Diagram,
    params: &BTreeMap<String, Domain>,
    seed: &Binding,
    iso: bool,
    limit: usize,
) -> Vec<(BTreeMap<NodeId, NodeId>, BTreeMap<NodeId, Vec<usize>>, Vec<(End, End)>, Binding)> {
    if pattern.calculus != host.calculus || pattern.node_count() > host.node_count() {
        return vec![];
    }
    let mut search = Search {
        pat: Pattern::new(pattern, host),
        host,
        hpartner: host.partner_map(),
        params,
        iso,
        limit,
        out: vec![],
        bare_out: vec![],
    };
    let st = State { nodes: BTreeMap::new(), used: HashSet::new(), ports: BTreeMap::new(), bind: seed.clone() };
    search.run(0, &st);
    search
        .out
        .into_iter()
        .zip(search.bare_out)
        .map(|(s, bare)| (s.nodes, s.ports, bare, s.bind))
        .collect()
}

/// Multiset of node shapes of `pattern` is contained in that of `host`.
fn shapes_fit(pattern: &Diagram, host: &Diagram) -> bool {
    let mut need: Vec<&NodeKind> = pattern.nodes.values().collect();
    let mut avail: Vec<Option<&NodeKind>> = host.nodes.values().map(Some).collect();
    need.sort_by_key(|k| std::cmp::Reverse(k.arity()));
    'outer: for k in need {
        for slot in avail.iter_mut() {
            if let Some(h) = slot {
                if h.same_shape(k) {
                    *slot = None;
                    continue 'outer;
                }
            }
        }
        return false;
    }
    true
}

/// All leg-count assignments for the matched side, bounded by the host.
fn leg_choices(rule: &RewriteRule, dir: Dir, host: &Diagram, seed: &Legs) -> Vec<Legs> {
    let (pat, other) = rule.side(dir);
    let max = host.nodes.values().map(|k| k.arity()).max().unwrap_or(0);
    let mut choices = vec![Legs::new()];
    for (var, mult) in pat.vars() {
        let range: Vec<usize> = match seed.get(&var) {
            Some(&v) => vec![v],
            None => (mult.min()..=max.max(mult.min())).collect(),
        };
        choices = choices
            .into_iter()
            .flat_map(|c| {
                let var = var.clone();
                range.iter().map(move |&v| {
                    let mut c = c.clone();
                    c.insert(var.clone(), v);
                    c
                })
            })
            .collect();
    }
    for c in choices.iter_mut() {
        for (var, mult) in other.vars() {
            c.entry(var.clone()).or_insert_with(|| seed.get(&var).copied().unwrap_or(mult.min()));
        }
    }
    choices
}

/// Occurrences of one side of `rule` in `host`, in deterministic order.
pub fn find_matches_with(
    rule: &RewriteRule,
    dir: Dir,
    host: &Diagram,
    seed_bind: &Binding,
    seed_legs: &Legs,
    limit: usize,
) -> Vec<Embedding> {
    if rule.verify_only || rule.calculus != host.calculus {
        return vec![];
    }
    let (pat_side, _) = rule.side(dir);
    let hash = host.fingerprint();
    let mut out = Vec::new();
    for legs in leg_choices(rule, dir, host, seed_legs) {
        let pattern = pat_side.instantiate(&legs);
        if !shapes_fit(&pattern, host) {
            continue;
        }
        for (nodes, ports, bare, mut bind) in match_pattern(&pattern, host, &rule.params, seed_bind, false, limit - out.len()) {
            // parameters that only occur on the replacement side
            for (p, _) in rule.params.iter() {
                bind.entry(p.clone()).or_insert_with(Angle::zero);
            }
            if !rule.params.iter().all(|(p, d)| d.admits(&bind[p])) {
                continue;
            }
            out.push(Embedding { legs: legs.clone(), bind, nodes, ports, bare, host_hash: hash });
        }
        if out.len() >= limit {
            break;
        }
    }
    out
}

pub fn find_matches(rule: &RewriteRule, dir: Dir, host: &Diagram) -> Vec<Embedding> {
    find_matches_with(rule, dir, host, &Binding::new(), &Legs::new(), usize::MAX)
}

/// Checks that `emb` is a valid occurrence of `pattern` in `host`.
pub fn check_embedding(
    pattern: &Diagram,
    host: &Diagram,
    emb: &Embedding,
    params: &BTreeMap<String, Domain>,
) -> Result<()> {
    let bad = |m: String| Err(Error::InvalidEmbedding(m));
    if emb.host_hash != host.fingerprint() {
        return Err(Error::StaleEmbedding);
    }
    let mut seen = HashSet::new();
    for (a, pk) in &pattern.nodes {
        let Some(h) = emb.nodes.get(a) else { return bad(format!("pattern node {a} unmapped")) };
        let Some(hk) = host.nodes.get(h) else { return bad(format!("host node {h} missing")) };
        if !seen.insert(*h) {
            return bad(format!("host node {h} used twice"));
        }
        if !pk.same_shape(hk) {
            return bad(format!("pattern node {a} ({pk}) cannot match host node {h} ({hk})"));
        }
        if let (Some(pa), Some(ha)) = (pk.angle(), hk.angle()) {
            match pa.instantiate(&emb.bind) {
                Ok(v) if angles_equal(&v, ha) => {}
                _ => return bad(format!("angle of pattern node {a} does not match host node {h}")),
            }
        }
        let ports = emb.ports.get(a).ok_or_else(|| Error::InvalidEmbedding(format!("no ports for {a}")))?;
        let mut sorted = ports.clone();
        sorted.sort_unstable();
        if sorted != (0..pk.arity()).collect::<Vec<_>>() {
            return bad(format!("port map of pattern node {a} is not a permutation"));
        }
        if !pk.is_symmetric() && ports.iter().enumerate().any(|(i, &p)| i != p) {
            return bad(format!("pattern node {a} has fixed port order"));
        }
    }
    if emb.nodes.len() != pattern.nodes.len() {
        return bad("embedding maps unknown pattern nodes".into());
    }
    for (v, d) in params {
        if let Some(a) = emb.bind.get(v) {
            if !d.admits(a) {
                return bad(format!("parameter {v} = {a} outside its domain"));
            }
        }
    }
    let hp = host.partner_map();
    let map_end = |e: &End| match e {
        End::Port { node, port } => Some(End::port(emb.nodes[node], emb.ports[node][*port])),
        _ => None,
    };
    for (x, y) in &pattern.wires {
        if let (Some(hx), Some(hy)) = (map_end(x), map_end(y)) {
            if hp.get(&hx) != Some(&hy) {
                return bad(format!("pattern wire {x}–{y} has no host image"));
            }
        }
    }
    let bare: Vec<&(End, End)> = pattern.wires.iter().filter(|(a, b)| a.is_boundary() && b.is_boundary()).collect();
    if bare.len() != emb.bare.len() {
        return bad("bare wire count mismatch".into());
    }
    let mut chosen = HashSet::new();
    for (x, y) in &emb.bare {
        if hp.get(x) != Some(y) {
            return bad(format!("host wire {x}–{y} does not exist"));
        }
        if [x, y].iter().any(|e| e.node().is_some_and(|n| seen.contains(&n))) {
            return bad(format!("bare wire {x}–{y} touches a matched node"));
        }
        if !chosen.insert((*x.min(y), *x.max(y))) {
            return bad("bare wire used twice".into());
        }
    }
    Ok(())
}

/// Boundary-respecting graph isomorphism (spider input/output splits are
/// ignored; only total arity matters).
pub fn is_isomorphic(d1: &Diagram, d2: &Diagram) -> bool {
    if d1.calculus != d2.calculus
        || d1.arity() != d2.arity()
        || d1.node_count() != d2.node_count()
        || d1.wires.len() != d2.wires.len()
        || !shapes_fit(d1, d2)
    {
        return false;
    }
    !match_pattern(d1, d2, &BTreeMap::new(), &Binding::new(), true, 1).is_empty()
}
