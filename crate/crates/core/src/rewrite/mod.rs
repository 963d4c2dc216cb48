//! Rewrite rules as pairs of pattern diagrams with parametric legs.
//!
//! A rule side is a core diagram plus leg groups: a leg group attaches a
//! variable number of extra legs to one node, each optionally passing
//! through a decoration node (e.g. a Hadamard) before reaching the
//! boundary. Group legs become extra output slots appended after the core
//! outputs, in group order, so both sides of a rule list their groups in the
//! same order. Link groups add a variable number of parallel wires between
//! two nodes of one side.

pub mod apply;
pub mod catalog;
pub mod derivation;
pub mod matcher;
pub mod simplify;
pub mod verify;

use std::collections::BTreeMap;
use std::fmt;

use crate::angle::{Angle, Binding};
use crate::diagram::{Calculus, Diagram, End, NodeId, NodeKind};
use crate::error::{Error, Result};

pub use apply::apply;
pub use catalog::{ruleset, RuleSet, RULESET_NAMES};
pub use derivation::{replay_derivation, Derivation, ReplayResult, Step};
pub use matcher::{find_matches, is_isomorphic, Embedding};
pub use simplify::simplify;
pub use verify::{verify_rule_soundness, SoundnessReport, VerifyConfig};

/// Which side is matched.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    /// Match the left-hand side, replace with the right-hand side.
    Lr,
    Rl,
}

impl Dir {
    pub fn as_str(&self) -> &'static str {
        match self {
            Dir::Lr => "LR",
            Dir::Rl => "RL",
        }
    }

    pub fn parse(s: &str) -> Result<Dir> {
        match s {
            "LR" | "lr" => Ok(Dir::Lr),
            "RL" | "rl" => Ok(Dir::Rl),
            _ => Err(Error::Parse(format!("direction must be LR or RL, got `{s}`"))),
        }
    }

    pub fn reverse(&self) -> Dir {
        match self {
            Dir::Lr => Dir::Rl,
            Dir::Rl => Dir::Lr,
        }
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Admissible values of an angle parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    /// `{0, π}`
    PiOnly,
    /// multiples of π/4
    Quarter,
    Real,
}

impl Domain {
    pub fn as_str(&self) -> &'static str {
        match self {
            Domain::PiOnly => "{0,pi}",
            Domain::Quarter => "piZ/4",
            Domain::Real => "real",
        }
    }

    pub fn parse(s: &str) -> Result<Domain> {
        match s {
            "{0,pi}" => Ok(Domain::PiOnly),
            "piZ/4" => Ok(Domain::Quarter),
            "real" => Ok(Domain::Real),
            _ => Err(Error::Parse(format!("unknown parameter domain `{s}`"))),
        }
    }

    pub fn admits(&self, a: &Angle) -> bool {
        match self {
            Domain::PiOnly => a.is_pi_multiple(),
            Domain::Quarter => a.is_quarter_multiple(),
            Domain::Real => true,
        }
    }

    /// The exact grid swept by soundness verification.
    pub fn grid(&self) -> Vec<Angle> {
        match self {
            Domain::PiOnly => vec![Angle::zero(), Angle::pi()],
            Domain::Quarter | Domain::Real => (0..8).map(Angle::quarter).collect(),
        }
    }
}

/// `...` (zero or more) or `⋱` (one or more).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Multiplicity {
    Star,
    Plus,
}

impl Multiplicity {
    pub fn min(&self) -> usize {
        match self {
            Multiplicity::Star => 0,
            Multiplicity::Plus => 1,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Multiplicity::Star => "star",
            Multiplicity::Plus => "plus",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LegGroup {
    pub var: String,
    pub node: NodeId,
    pub mult: Multiplicity,
    /// A 1→1 node inserted on every leg of the group.
    pub deco: Option<NodeKind>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinkGroup {
    pub var: String,
    pub a: NodeId,
    pub b: NodeId,
    pub mult: Multiplicity,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Side {
    pub diagram: Diagram,
    pub legs: Vec<LegGroup>,
    pub links: Vec<LinkGroup>,
}

/// Leg-count variable values.
pub type Legs = BTreeMap<String, usize>;

impl Side {
    pub fn fixed(diagram: Diagram) -> Side {
        Side { diagram, legs: vec![], links: vec![] }
    }

    pub fn with_legs(diagram: Diagram, legs: Vec<LegGroup>) -> Side {
        Side { diagram, legs, links: vec![] }
    }

    /// Leg and link variables with their minimum counts.
    pub fn vars(&self) -> Vec<(String, Multiplicity)> {
        let mut v: Vec<(String, Multiplicity)> = self.legs.iter().map(|g| (g.var.clone(), g.mult)).collect();
        v.extend(self.links.iter().map(|g| (g.var.clone(), g.mult)));
        v
    }

    /// Concrete diagram for the given leg counts (missing counts take the
    /// group minimum). Angles stay symbolic.
    pub fn instantiate(&self, legs: &Legs) -> Diagram {
        let mut d = self.diagram.clone();
        let count = |var: &str, m: Multiplicity| legs.get(var).copied().unwrap_or(m.min());
        let add_port = |d: &mut Diagram, node: NodeId| -> usize {
            let k = d.nodes.get_mut(&node).expect("group node exists");
            let p = k.arity();
            match k {
                NodeKind::Z { outputs, .. } | NodeKind::X { outputs, .. } => *outputs += 1,
                _ => panic!("leg groups attach to spiders only"),
            }
            p
        };
        for g in &self.links {
            for _ in 0..count(&g.var, g.mult) {
                let pa = add_port(&mut d, g.a);
                let pb = add_port(&mut d, g.b);
                d.wires.push((End::port(g.a, pa), End::port(g.b, pb)));
            }
        }
        for g in &self.legs {
            for _ in 0..count(&g.var, g.mult) {
                let p = add_port(&mut d, g.node);
                let slot = End::Output(d.n_outputs);
                d.n_outputs += 1;
                match &g.deco {
                    None => d.wires.push((End::port(g.node, p), slot)),
                    Some(kind) => {
                        let id = d.next_id();
                        d.nodes.insert(id, kind.clone());
                        d.wires.push((End::port(g.node, p), End::port(id, 0)));
                        d.wires.push((End::port(id, 1), slot));
                    }
                }
            }
        }
        d
    }
}

/// Extra condition relating the parameters of a verification-only rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    /// `2e^{iθ₃}cos γ = e^{iθ₁}cos α + e^{iθ₂}cos β` over parameters
    /// `theta1, theta2, theta3, alpha, beta, gamma`.
    CosineSum,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RewriteRule {
    pub name: String,
    /// The rule family the equation belongs to (core, kpe, general, zw, zw-sqrt2).
    pub family: String,
    pub calculus: Calculus,
    pub params: BTreeMap<String, Domain>,
    pub lhs: Side,
    pub rhs: Side,
    /// Excluded from matching; only its soundness is checked.
    pub verify_only: bool,
    pub constraint: Option<Constraint>,
}

impl RewriteRule {
    pub fn new(name: &str, family: &str, lhs: Side, rhs: Side) -> RewriteRule {
        let calculus = lhs.diagram.calculus;
        let mut params = BTreeMap::new();
        for d in [&lhs.diagram, &rhs.diagram] {
            for a in d.angles() {
                for v in a.variables() {
                    params.insert(v, Domain::Real);
                }
            }
        }
        RewriteRule {
            name: name.to_string(),
            family: family.to_string(),
            calculus,
            params,
            lhs,
            rhs,
            verify_only: false,
            constraint: None,
        }
    }

    /// Restricts every parameter to `domain`.
    pub fn with_domain(mut self, domain: Domain) -> RewriteRule {
        for d in self.params.values_mut() {
            *d = domain;
        }
        self
    }

    pub fn named(mut self, name: &str) -> RewriteRule {
        self.name = name.to_string();
        self
    }

    pub fn side(&self, dir: Dir) -> (&Side, &Side) {
        match dir {
            Dir::Lr => (&self.lhs, &self.rhs),
            Dir::Rl => (&self.rhs, &self.lhs),
        }
    }

    /// All leg/link variables with their multiplicities, sorted by name.
    pub fn vars(&self) -> BTreeMap<String, Multiplicity> {
        self.lhs.vars().into_iter().chain(self.rhs.vars()).collect()
    }

    /// Both sides instantiated with leg counts and parameter values.
    pub fn instantiate(&self, legs: &Legs, bind: &Binding) -> Result<(Diagram, Diagram)> {
        Ok((self.lhs.instantiate(legs).instantiate(bind)?, self.rhs.instantiate(legs).instantiate(bind)?))
    }

    /// Structural sanity: both sides agree on boundary for every leg
    /// instantiation, and leg groups line up.
    pub fn check_well_formed(&self) -> Result<()> {
        let lv: Vec<&str> = self.lhs.legs.iter().map(|g| g.var.as_str()).collect();
        let rv: Vec<&str> = self.rhs.legs.iter().map(|g| g.var.as_str()).collect();
        if lv != rv {
            return Err(Error::InvalidDiagram(format!("rule {}: leg groups differ between sides", self.name)));
        }
        let legs: Legs = self.vars().into_iter().map(|(v, m)| (v, m.min() + 1)).collect();
        let (l, r) = (self.lhs.instantiate(&legs), self.rhs.instantiate(&legs));
        l.check_valid()?;
        r.check_valid()?;
        if l.arity() != r.arity() {
            return Err(Error::ArityMismatch(format!("rule {}: {:?} vs {:?}", self.name, l.arity(), r.arity())));
        }
        Ok(())
    }
}

/// The colour dual of a triangle-free ZX rule.
pub fn color_dual(rule: &RewriteRule) -> Option<RewriteRule> {
    let swap_side = |s: &Side| -> Option<Side> {
        if s.diagram.nodes.values().any(|k| *k == NodeKind::Triangle) {
            return None;
        }
        let swap_kind = |k: &NodeKind| match k {
            NodeKind::Z { angle, inputs, outputs } => NodeKind::x(angle.clone(), *inputs, *outputs),
            NodeKind::X { angle, inputs, outputs } => NodeKind::z(angle.clone(), *inputs, *outputs),
            other => other.clone(),
        };
        Some(Side {
            diagram: s.diagram.color_swap().ok()?,
            legs: s
                .legs
                .iter()
                .map(|g| LegGroup { deco: g.deco.as_ref().map(swap_kind), ..g.clone() })
                .collect(),
            links: s.links.clone(),
        })
    };
    if rule.calculus != Calculus::Zx {
        return None;
    }
    let lhs = swap_side(&rule.lhs)?;
    let rhs = swap_side(&rule.rhs)?;
    Some(RewriteRule { name: format!("{}'", rule.name), lhs, rhs, ..rule.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Builder;

    #[test]
    fn instantiate_legs_and_links() {
        let mut b = Builder::new(Calculus::Zx);
        let z0 = b.node(NodeKind::z(Angle::var("a"), 0, 0));
        let z1 = b.node(NodeKind::z(Angle::var("b"), 0, 0));
        let d = b.build().unwrap();
        let side = Side {
            diagram: d,
            legs: vec![
                LegGroup { var: "p".into(), node: z0, mult: Multiplicity::Star, deco: None },
                LegGroup { var: "q".into(), node: z1, mult: Multiplicity::Star, deco: Some(NodeKind::Hadamard) },
            ],
            links: vec![LinkGroup { var: "k".into(), a: z0, b: z1, mult: Multiplicity::Plus }],
        };
        let legs: Legs = [("p".to_string(), 2), ("q".to_string(), 1)].into_iter().collect();
        let d = side.instantiate(&legs);
        assert!(d.is_valid(), "{:?}", d.validate());
        assert_eq!(d.arity(), (0, 3));
        assert_eq!(d.node_count(), 3);
        assert_eq!(d.nodes[&z0].arity(), 3);
        assert_eq!(d.nodes[&z1].arity(), 2);
    }

    #[test]
    fn domains() {
        assert!(Domain::PiOnly.admits(&Angle::pi()));
        assert!(!Domain::PiOnly.admits(&Angle::quarter(2)));
        assert!(Domain::Quarter.admits(&Angle::quarter(3)));
        assert!(!Domain::Quarter.admits(&Angle::float(0.1)));
        assert_eq!(Domain::Quarter.grid().len(), 8);
        assert_eq!(Domain::parse("real").unwrap(), Domain::Real);
    }
}
