//! Greedy node-count-reducing rewriting.

use crate::diagram::{Diagram, End, NodeKind};
use crate::rewrite::derivation::{run_step, Derivation, Step};
use crate::rewrite::matcher::find_matches_with;
use crate::rewrite::{apply, Dir, Legs, RuleSet};

/// Candidate occurrences are tried per rule in this order.
const DIRS: [Dir; 2] = [Dir::Lr, Dir::Rl];

/// One greedy step: the first (rule index, lowest host node) instance that
/// lowers the node count.
fn reducing_step(d: &Diagram, rules: &RuleSet) -> Option<(Diagram, Step)> {
    let n = d.node_count();
    for rule in rules.rewriting_rules() {
        for dir in DIRS {
            let mut embs = find_matches_with(rule, dir, d, &Default::default(), &Legs::new(), usize::MAX);
            embs.sort_by_key(|e| e.nodes.values().min().copied().unwrap_or(usize::MAX));
            for e in embs {
                if let Ok(next) = apply(d, rule, dir, &e) {
                    if next.node_count() < n {
                        return Some((next, Step::new(&rule.name, dir).with_embedding(e)));
                    }
                }
            }
        }
    }
    None
}

/// Removes a pair of adjacent Hadamards by the derived involution: grow an
/// identity spider between them (S2 backwards), absorb both into a red
/// spider (H) and drop that spider (the colour dual of S2).
fn hadamard_pair(d: &Diagram, rules: &RuleSet) -> Option<(Diagram, Vec<Step>)> {
    for r in ["S2", "H", "S2'"] {
        rules.get(r)?;
    }
    let is_h = |e: &End| e.node().is_some_and(|n| d.nodes[&n] == NodeKind::Hadamard);
    let &(a, b) = d.wires.iter().find(|(a, b)| is_h(a) && is_h(b) && a.node() != b.node())?;
    let grow = find_matches_with(rules.get("S2")?, Dir::Rl, d, &Default::default(), &Legs::new(), usize::MAX)
        .into_iter()
        .find(|e| e.bare.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a)))?;
    let mut steps = vec![Step::new("S2", Dir::Rl).with_embedding(grow.clone())];
    let cur = apply(d, rules.get("S2")?, Dir::Rl, &grow).ok()?;
    let fresh = cur.nodes.keys().max().copied()?;
    let absorb = find_matches_with(rules.get("H")?, Dir::Lr, &cur, &Default::default(), &Legs::new(), usize::MAX)
        .into_iter()
        .find(|e| e.nodes[&0] == fresh && e.legs.get("p") == Some(&2))?;
    let cur2 = apply(&cur, rules.get("H")?, Dir::Lr, &absorb).ok()?;
    steps.push(Step::new("H", Dir::Lr).with_embedding(absorb));
    let red = cur2.nodes.keys().max().copied()?;
    let (last, _) = run_step(&Step::new("S2'", Dir::Lr).at(&[red]), rules, &cur2).ok()?;
    steps.push(Step::new("S2'", Dir::Lr).at(&[red]));
    Some((last, steps))
}

/// Applies node-count-reducing rule instances until none applies or the
/// budget of steps is spent; returns the result and a replayable script.
pub fn simplify(d: &Diagram, rules: &RuleSet, budget: usize) -> (Diagram, Derivation) {
    let mut cur = d.clone();
    let mut steps = Vec::new();
    while steps.len() < budget {
        if let Some((next, step)) = reducing_step(&cur, rules) {
            cur = next;
            steps.push(step);
        } else if let Some((next, mut macro_steps)) = hadamard_pair(&cur, rules) {
            if steps.len() + macro_steps.len() > budget {
                break;
            }
            cur = next;
            steps.append(&mut macro_steps);
        } else {
            break;
        }
    }
    let deriv = Derivation { ruleset: rules.name.clone(), start: d.clone(), steps, end: cur.clone() };
    (cur, deriv)
}
