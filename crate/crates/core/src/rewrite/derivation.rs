//! Scripted derivations and their replay.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::angle::Binding;
use crate::diagram::{Diagram, NodeId};
use crate::error::{Error, Result};
use crate::json;
use crate::rewrite::matcher::find_matches_with;
use crate::rewrite::{apply, is_isomorphic, Dir, Embedding, Legs, RuleSet};
use crate::semantics::{check_equal, interpret, Mode, DEFAULT_TOL};

/// One rewrite: a rule, a direction and either an explicit embedding or a
/// description of which occurrence to take.
#[derive(Clone, Debug, PartialEq)]
pub struct Step {
    pub rule: String,
    pub dir: Dir,
    pub embedding: Option<Embedding>,
    /// Parameter values to impose while searching.
    pub bind: Binding,
    /// Leg counts to impose while searching.
    pub legs: Legs,
    /// Host nodes the occurrence must use.
    pub at: Vec<NodeId>,
}

impl Step {
    pub fn new(rule: &str, dir: Dir) -> Step {
        Step { rule: rule.to_string(), dir, embedding: None, bind: Binding::new(), legs: Legs::new(), at: vec![] }
    }

    pub fn at(mut self, nodes: &[NodeId]) -> Step {
        self.at = nodes.to_vec();
        self
    }

    pub fn legs(mut self, legs: &[(&str, usize)]) -> Step {
        self.legs = legs.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        self
    }

    pub fn bind(mut self, bind: &[(&str, crate::angle::Angle)]) -> Step {
        self.bind = bind.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        self
    }

    pub fn with_embedding(mut self, e: Embedding) -> Step {
        self.embedding = Some(e);
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    pub ruleset: String,
    pub start: Diagram,
    pub steps: Vec<Step>,
    pub end: Diagram,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReplayResult {
    Valid,
    /// Step `index` (or `steps.len()` for the final comparison) failed.
    InvalidStep { index: usize, reason: String },
}

impl ReplayResult {
    pub fn is_valid(&self) -> bool {
        *self == ReplayResult::Valid
    }
}

/// The occurrence a step designates in `host`.
pub fn resolve_step(step: &Step, rules: &RuleSet, host: &Diagram) -> Result<Embedding> {
    let rule = rules.rule(&step.rule)?;
    if let Some(e) = &step.embedding {
        let mut e = e.clone();
        if e.host_hash == 0 {
            e.host_hash = host.fingerprint();
        }
        return Ok(e);
    }
    find_matches_with(rule, step.dir, host, &step.bind, &step.legs, usize::MAX)
        .into_iter()
        .find(|e| step.at.iter().all(|n| e.nodes.values().any(|h| h == n)))
        .ok_or_else(|| Error::InvalidEmbedding(format!("no occurrence of {} {}", step.rule, step.dir)))
}

/// Applies one step.
pub fn run_step(step: &Step, rules: &RuleSet, host: &Diagram) -> Result<(Diagram, Embedding)> {
    let emb = resolve_step(step, rules, host)?;
    let d = apply(host, rules.rule(&step.rule)?, step.dir, &emb)?;
    Ok((d, emb))
}

/// Replays every step, then requires the result to be isomorphic to the
/// claimed end and, when both evaluate exactly, semantically equal to the
/// start.
pub fn replay_derivation(deriv: &Derivation, rules: &RuleSet) -> Result<ReplayResult> {
    for s in &deriv.steps {
        rules.rule(&s.rule)?;
    }
    let mut cur = deriv.start.clone();
    for (i, s) in deriv.steps.iter().enumerate() {
        match run_step(s, rules, &cur) {
            Ok((d, _)) => cur = d,
            Err(e) => return Ok(ReplayResult::InvalidStep { index: i, reason: e.to_string() }),
        }
    }
    let n = deriv.steps.len();
    if !is_isomorphic(&cur, &deriv.end) {
        return Ok(ReplayResult::InvalidStep { index: n, reason: "result is not isomorphic to the claimed end".into() });
    }
    if deriv.start.all_angles_exact() && interpret(&deriv.start, Mode::Exact).is_ok() {
        match check_equal(&deriv.start, &deriv.end, Mode::Exact, DEFAULT_TOL) {
            Ok(eq) if eq.is_equal() => {}
            Ok(_) => {
                return Ok(ReplayResult::InvalidStep { index: n, reason: "start and end denote different matrices".into() })
            }
            Err(e) => return Ok(ReplayResult::InvalidStep { index: n, reason: e.to_string() }),
        }
    }
    Ok(ReplayResult::Valid)
}

pub fn embedding_to_json(e: &Embedding) -> Value {
    json!({
        "nodes": e.nodes.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
        "ports": e.ports.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
        "bare": e.bare.iter().map(|(a, b)| json!([json::end_to_json(a), json::end_to_json(b)])).collect::<Vec<_>>(),
        "legs": e.legs,
        "bind": json::binding_to_json(&e.bind),
    })
}

fn perr(m: impl Into<String>) -> Error {
    Error::Parse(m.into())
}

fn index_map<T>(v: Option<&Value>, f: impl Fn(&Value) -> Option<T>) -> Result<BTreeMap<usize, T>> {
    let Some(v) = v else { return Ok(BTreeMap::new()) };
    let o = v.as_object().ok_or_else(|| perr("expected an object keyed by node id"))?;
    o.iter()
        .map(|(k, x)| {
            let id = k.parse::<usize>().map_err(|_| perr(format!("bad node id `{k}`")))?;
            Ok((id, f(x).ok_or_else(|| perr(format!("bad value for node {k}")))?))
        })
        .collect()
}

fn legs_from_json(v: Option<&Value>) -> Result<Legs> {
    let Some(v) = v else { return Ok(Legs::new()) };
    let o = v.as_object().ok_or_else(|| perr("legs must be an object"))?;
    o.iter()
        .map(|(k, x)| Ok((k.clone(), x.as_u64().ok_or_else(|| perr("leg counts are integers"))? as usize)))
        .collect()
}

/// Embeddings read from files are checked against the host at replay time.
pub fn embedding_from_json(v: &Value) -> Result<Embedding> {
    let nodes = index_map(v.get("nodes"), |x| x.as_u64().map(|n| n as usize))?;
    let ports = index_map(v.get("ports"), |x| {
        x.as_array()?.iter().map(|p| p.as_u64().map(|n| n as usize)).collect::<Option<Vec<_>>>()
    })?;
    let mut bare = Vec::new();
    for w in v.get("bare").and_then(Value::as_array).into_iter().flatten() {
        let pair = w.as_array().filter(|a| a.len() == 2).ok_or_else(|| perr("bare wire must be a pair"))?;
        bare.push((json::end_from_json(&pair[0])?, json::end_from_json(&pair[1])?));
    }
    let bind = match v.get("bind") {
        Some(b) => json::binding_from_json(b)?,
        None => Binding::new(),
    };
    Ok(Embedding { legs: legs_from_json(v.get("legs"))?, bind, nodes, ports, bare, host_hash: 0 })
}

impl Step {
    pub fn to_json(&self) -> Value {
        let mut o = json!({"rule": self.rule, "dir": self.dir.as_str()});
        if let Some(e) = &self.embedding {
            o["embedding"] = embedding_to_json(e);
        }
        if !self.bind.is_empty() {
            o["bind"] = json::binding_to_json(&self.bind);
        }
        if !self.legs.is_empty() {
            o["legs"] = json!(self.legs);
        }
        if !self.at.is_empty() {
            o["at"] = json!(self.at);
        }
        o
    }

    pub fn from_json(v: &Value) -> Result<Step> {
        let rule = v.get("rule").and_then(Value::as_str).ok_or_else(|| perr("step needs a rule name"))?;
        let dir = Dir::parse(v.get("dir").and_then(Value::as_str).unwrap_or("LR"))?;
        let embedding = v.get("embedding").map(embedding_from_json).transpose()?;
        let bind = match v.get("bind") {
            Some(b) => json::binding_from_json(b)?,
            None => Binding::new(),
        };
        let at = v
            .get("at")
            .and_then(Value::as_array)
            .map(|a| a.iter().filter_map(Value::as_u64).map(|n| n as usize).collect())
            .unwrap_or_default();
        Ok(Step { rule: rule.to_string(), dir, embedding, bind, legs: legs_from_json(v.get("legs"))?, at })
    }
}

impl Derivation {
    pub fn to_json(&self) -> Value {
        json!({
            "ruleset": self.ruleset,
            "start": json::diagram_to_json(&self.start),
            "steps": self.steps.iter().map(Step::to_json).collect::<Vec<_>>(),
            "end": json::diagram_to_json(&self.end),
        })
    }

    pub fn from_json(v: &Value) -> Result<Derivation> {
        let start = json::diagram_from_json(v.get("start").ok_or_else(|| perr("derivation needs a start"))?)?;
        let end = json::diagram_from_json(v.get("end").ok_or_else(|| perr("derivation needs an end"))?)?;
        let steps = v
            .get("steps")
            .and_then(Value::as_array)
            .ok_or_else(|| perr("derivation needs a step list"))?
            .iter()
            .map(Step::from_json)
            .collect::<Result<Vec<_>>>()?;
        let ruleset = v.get("ruleset").and_then(Value::as_str).unwrap_or("dzx").to_string();
        Ok(Derivation { ruleset, start, steps, end })
    }
}
