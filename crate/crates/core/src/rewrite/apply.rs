//! Replacing a matched occurrence by the other side of a rule.

use std::collections::{HashMap, HashSet};

use crate::diagram::{splice, Diagram, End, Term};
use crate::error::{Error, Result};
use crate::rewrite::matcher::{check_embedding, Embedding};
use crate::rewrite::{Dir, RewriteRule};

fn slot_index(e: End, n_inputs: usize) -> usize {
    match e {
        End::Input(i) => i,
        End::Output(j) => n_inputs + j,
        End::Port { .. } => unreachable!("not a boundary slot"),
    }
}

/// Excises the occurrence `emb` of one side of `rule` and splices in the
/// other side along the cut wires. Fresh nodes get ids above the host's.
pub fn apply(host: &Diagram, rule: &RewriteRule, dir: Dir, emb: &Embedding) -> Result<Diagram> {
    let (pat_side, rep_side) = rule.side(dir);
    let pattern = pat_side.instantiate(&emb.legs);
    check_embedding(&pattern, host, emb, &rule.params)?;
    let replacement = rep_side.instantiate(&emb.legs).instantiate(&emb.bind)?;
    if pattern.arity() != replacement.arity() {
        return Err(Error::ArityMismatch(format!(
            "rule {} sides have arities {:?} and {:?} for these legs",
            rule.name,
            pattern.arity(),
            replacement.arity()
        )));
    }
    let n_in = pattern.n_inputs;
    let n_slots = pattern.n_inputs + pattern.n_outputs;
    let ppartner = pattern.partner_map();
    let hpartner = host.partner_map();
    let matched: HashSet<usize> = emb.nodes.values().copied().collect();
    // host port → the pattern port it realises
    let mut inverse: HashMap<End, End> = HashMap::new();
    for (a, ports) in &emb.ports {
        for (p, &r) in ports.iter().enumerate() {
            inverse.insert(End::port(emb.nodes[a], r), End::port(*a, p));
        }
    }
    let bare: Vec<(End, End)> =
        pattern.wires.iter().copied().filter(|(a, b)| a.is_boundary() && b.is_boundary()).collect();

    // what lies beyond each pattern slot in the host
    let mut outer: Vec<Term> = Vec::with_capacity(n_slots);
    for s in (0..pattern.n_inputs).map(End::Input).chain((0..pattern.n_outputs).map(End::Output)) {
        let t = match ppartner[&s] {
            End::Port { node, port } => {
                let hx = End::port(emb.nodes[&node], emb.ports[&node][port]);
                let x = hpartner[&hx];
                match inverse.get(&x) {
                    Some(pe) => match ppartner[pe] {
                        slot if slot.is_boundary() => Term::Hub(slot_index(slot, n_in)),
                        _ => return Err(Error::InvalidEmbedding(format!("host wire {hx}–{x} is not a cut wire"))),
                    },
                    None => Term::Real(x),
                }
            }
            other => {
                let i = bare.iter().position(|&(a, b)| (a, b) == (s, other) || (a, b) == (other, s)).unwrap();
                let (x, y) = emb.bare[i];
                Term::Real(if bare[i].0 == s { x } else { y })
            }
        };
        outer.push(t);
    }

    let offset = host.next_id();
    let mut d = Diagram {
        calculus: host.calculus,
        nodes: host.nodes.iter().filter(|(id, _)| !matched.contains(id)).map(|(k, v)| (*k, v.clone())).collect(),
        wires: Vec::new(),
        n_inputs: host.n_inputs,
        n_outputs: host.n_outputs,
    };
    for (k, v) in &replacement.nodes {
        d.nodes.insert(k + offset, v.clone());
    }
    let cut: HashSet<(End, End)> = emb.bare.iter().flat_map(|&(x, y)| [(x, y), (y, x)]).collect();
    let mut links: Vec<(Term, Term)> = Vec::new();
    for &(x, y) in &host.wires {
        let touches = |e: &End| e.node().is_some_and(|n| matched.contains(&n));
        if touches(&x) || touches(&y) || cut.contains(&(x, y)) {
            continue;
        }
        links.push((Term::Real(x), Term::Real(y)));
    }
    let rterm = |e: End| match e {
        End::Port { node, port } => Term::Real(End::port(node + offset, port)),
        slot => Term::Hub(slot_index(slot, n_in)),
    };
    for &(x, y) in &replacement.wires {
        links.push((rterm(x), rterm(y)));
    }
    for (s, t) in outer.iter().enumerate() {
        match t {
            Term::Hub(u) if *u < s => {} // joined pair, added once
            _ => links.push((Term::Hub(s), *t)),
        }
    }
    let (wires, loops) = splice(&links, n_slots);
    d.wires = wires;
    for _ in 0..loops {
        d.add_loop_scalar();
    }
    d.check_valid()?;
    Ok(d)
}
