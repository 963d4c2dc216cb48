//! The shipped rule sets.
//!
//! Every equation is stored once, as a [`RewriteRule`] usable in both
//! directions. Triangle-free ZX rules are accompanied by their colour duals
//! (named with a trailing `'`), which are derivable from the originals and
//! make scripted derivations shorter.

use serde_json::{json, Map, Value};

use crate::angle::{Angle, PiFrac};
use crate::diagram::{Builder, Calculus, Diagram, NodeId, NodeKind, Pin};
use crate::error::{Error, Result};
use crate::gadgets;
use crate::json;
use crate::projector;
use crate::rewrite::{color_dual, Constraint, Domain, LegGroup, LinkGroup, Multiplicity, RewriteRule, Side};

pub const RULESET_NAMES: [&str; 7] = ["dzx_pi", "dzx", "dzx_kp", "dzx_kpe", "dzx_akpe", "zw", "zw_sqrt2"];

/// A named, ordered list of rules.
#[derive(Clone, Debug, PartialEq)]
pub struct RuleSet {
    pub name: String,
    pub rules: Vec<RewriteRule>,
}

impl RuleSet {
    pub fn get(&self, name: &str) -> Option<&RewriteRule> {
        self.rules.iter().find(|r| r.name == name)
    }

    pub fn rule(&self, name: &str) -> Result<&RewriteRule> {
        self.get(name).ok_or_else(|| Error::UnknownRule(format!("{name} is not in ruleset {}", self.name)))
    }

    pub fn names(&self) -> Vec<&str> {
        self.rules.iter().map(|r| r.name.as_str()).collect()
    }

    /// Rules usable by the matcher.
    pub fn rewriting_rules(&self) -> impl Iterator<Item = &RewriteRule> {
        self.rules.iter().filter(|r| !r.verify_only)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "rules": self.rules.iter().map(rule_to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<RuleSet> {
        let name = v["name"].as_str().ok_or_else(|| Error::Parse("ruleset needs a name".into()))?;
        let rules = v["rules"]
            .as_array()
            .ok_or_else(|| Error::Parse("ruleset needs a rule list".into()))?
            .iter()
            .map(rule_from_json)
            .collect::<Result<Vec<_>>>()?;
        Ok(RuleSet { name: name.to_string(), rules })
    }
}

/// Looks a rule set up by name; `ΔZX`-style names are accepted too.
pub fn ruleset(name: &str) -> Result<RuleSet> {
    let canonical = match name {
        "ΔZX_π" | "dzx_pi" => "dzx_pi",
        "ΔZX" | "dzx" => "dzx",
        "ΔZX^{K,P}" | "dzx_kp" => "dzx_kp",
        "ΔZX^{K,P,E}" | "dzx_kpe" => "dzx_kpe",
        "ΔZX^{A,K,P,E}" | "dzx_akpe" => "dzx_akpe",
        "ZW" | "zw" => "zw",
        "ZW_{1/√2}" | "zw_sqrt2" => "zw_sqrt2",
        other => return Err(Error::UnknownRule(format!("no ruleset named `{other}`"))),
    };
    let zx = |names: &[&str], domain: Domain| -> Vec<RewriteRule> {
        let mut out = Vec::new();
        for n in names {
            let r = zx_rule(n).with_domain(domain);
            let dual = color_dual(&r);
            out.push(r);
            out.extend(dual);
        }
        out
    };
    let rules = match canonical {
        "dzx_pi" => zx(&CORE, Domain::PiOnly),
        "dzx" => zx(&CORE, Domain::Real),
        "dzx_kp" => zx(&[&CORE[..], &["K", "P"]].concat(), Domain::Real),
        "dzx_kpe" => zx(&KPE, Domain::Real),
        "dzx_akpe" => {
            let mut r = zx(&KPE, Domain::Real);
            r.push(rule_a());
            r
        }
        "zw" => ZW_RULES.iter().map(|n| zw_rule(n)).collect(),
        "zw_sqrt2" => ZW_RULES.iter().chain(&["iv", "z"]).map(|n| zw_rule(n)).collect(),
        _ => unreachable!(),
    };
    Ok(RuleSet { name: canonical.to_string(), rules })
}

const CORE: [&str; 12] = ["S1", "S2", "IV", "B1", "B2", "H", "Z", "T0", "BW", "HT", "TCX", "TW"];
const KPE: [&str; 12] = ["S1", "S2", "E", "B1", "B2", "H", "K", "BW", "HT", "TCX", "TW", "P"];
const ZW_RULES: [&str; 11] =
    ["zw-0", "zw-1", "zw-2", "zw-3", "zw-4", "zw-5", "zw-6", "zw-x", "zw-7", "zw-reid", "zw-sym"];

fn var(name: &str) -> Angle {
    Angle::var(name)
}

fn zero() -> Angle {
    Angle::zero()
}

fn legs(var: &str, node: NodeId, mult: Multiplicity, deco: Option<NodeKind>) -> LegGroup {
    LegGroup { var: var.to_string(), node, mult, deco }
}

fn t(a: &Diagram, b: &Diagram) -> Diagram {
    a.tensor(b).expect("same calculus")
}

fn seq(ds: &[Diagram]) -> Diagram {
    Diagram::sequence(ds).expect("composable")
}

fn rule(name: &str, family: &str, lhs: Diagram, rhs: Diagram) -> RewriteRule {
    RewriteRule::new(name, family, Side::fixed(lhs), Side::fixed(rhs))
}

/// A lone spider with no core legs, to hang leg groups on.
fn bare_spider(kind: NodeKind) -> Diagram {
    Diagram::generator(kind)
}

fn sum(a: &str, b: &str) -> Angle {
    Angle::linear([(a.to_string(), 1), (b.to_string(), 1)], PiFrac::zero())
}

/// The ZX rules by name.
pub fn zx_rule(name: &str) -> RewriteRule {
    let wire = gadgets::wire;
    let swap_mid = || t(&t(&wire(), &Diagram::swap(Calculus::Zx)), &wire());
    let core = "core";
    let kpe = "kpe";
    match name {
        "S1" => {
            let mut b = Builder::new(Calculus::Zx);
            let z0 = b.node(NodeKind::z(var("alpha"), 0, 0));
            let z1 = b.node(NodeKind::z(var("beta"), 0, 0));
            let lhs = Side {
                diagram: b.build().unwrap(),
                legs: vec![legs("p", z0, Multiplicity::Star, None), legs("q", z1, Multiplicity::Star, None)],
                links: vec![LinkGroup { var: "k".into(), a: z0, b: z1, mult: Multiplicity::Plus }],
            };
            let rhs = Side::with_legs(
                bare_spider(NodeKind::z(sum("alpha", "beta"), 0, 0)),
                vec![legs("p", 0, Multiplicity::Star, None), legs("q", 0, Multiplicity::Star, None)],
            );
            RewriteRule::new("S1", core, lhs, rhs)
        }
        "S2" => rule("S2", core, Diagram::z(zero(), 1, 1), wire()),
        "IV" => rule("IV", core, t(&gadgets::sqrt2(), &gadgets::inv_sqrt2()), Diagram::empty(Calculus::Zx)),
        "B1" => rule(
            "B1",
            core,
            t(&gadgets::copy().compose(&Diagram::x(zero(), 0, 1)).unwrap(), &gadgets::sqrt2()),
            t(&Diagram::x(zero(), 0, 1), &Diagram::x(zero(), 0, 1)),
        ),
        "B2" => {
            let lhs = seq(&[Diagram::x(zero(), 2, 1), gadgets::copy()]);
            let split = t(&gadgets::copy(), &gadgets::copy());
            let merge = t(&Diagram::x(zero(), 2, 1), &Diagram::x(zero(), 2, 1));
            let rhs = t(&seq(&[split, swap_mid(), merge]), &gadgets::sqrt2());
            rule("B2", core, lhs, rhs)
        }
        "H" => {
            let lhs = Side::with_legs(
                bare_spider(NodeKind::z(var("alpha"), 0, 0)),
                vec![legs("p", 0, Multiplicity::Star, Some(NodeKind::Hadamard))],
            );
            let rhs =
                Side::with_legs(bare_spider(NodeKind::x(var("alpha"), 0, 0)), vec![legs("p", 0, Multiplicity::Star, None)]);
            RewriteRule::new("H", core, lhs, rhs)
        }
        "Z" => rule(
            "Z",
            core,
            t(&gadgets::zero(), &wire()),
            t(&t(&gadgets::zero(), &Diagram::x(zero(), 0, 1)), &Diagram::x(zero(), 1, 0)),
        ),
        "T0" => rule(
            "T0",
            core,
            seq(&[Diagram::x(zero(), 0, 1), Diagram::triangle()]),
            Diagram::x(zero(), 0, 1),
        ),
        "BW" => {
            let lhs = seq(&[gadgets::w21(), gadgets::copy()]);
            let rhs = seq(&[t(&gadgets::copy(), &gadgets::copy()), swap_mid(), t(&gadgets::w21(), &gadgets::w21())]);
            rule("BW", core, lhs, rhs)
        }
        "HT" => {
            // Δ, then a π spider whose third leg takes Δᵀ|+⟩, then Δᵀ
            let mut b = Builder::new(Calculus::Zx);
            let d1 = b.triangle();
            let z = b.z(Angle::pi(), 0);
            let d2 = b.triangle();
            let d3 = b.triangle();
            let plus = b.z(zero(), 0);
            b.link(Pin::In(0), (d1, 0)).link((d1, 1), z).link(z, (d2, 1)).link((d2, 0), Pin::Out(0));
            b.link(plus, (d3, 1)).link((d3, 0), z);
            let lhs = t(&Diagram::hadamard(), &gadgets::sqrt2());
            rule("HT", core, lhs, b.build().unwrap())
        }
        "TCX" => {
            let fan = seq(&[gadgets::copy(), t(&Diagram::triangle(), &Diagram::triangle())]);
            rule("TCX", core, seq(&[fan.clone(), gadgets::cnot()]), fan)
        }
        "TW" => rule(
            "TW",
            core,
            seq(&[gadgets::triangle_t(), gadgets::w()]),
            seq(&[gadgets::w(), t(&Diagram::triangle(), &wire())]),
        ),
        "K" => {
            let mut b = Builder::new(Calculus::Zx);
            let z = b.node(NodeKind::z(var("alpha"), 0, 0));
            let x = b.node(NodeKind::x(Angle::pi(), 1, 1));
            b.link(z, (x, 0)).link((x, 1), Pin::Out(0));
            let lhs = Side::with_legs(b.build().unwrap(), vec![legs("p", z, Multiplicity::Star, None)]);
            let mut b = Builder::new(Calculus::Zx);
            let z = b.node(NodeKind::z(var("alpha").neg(), 0, 0));
            b.link(z, Pin::Out(0));
            let core = t(&t(&b.build().unwrap(), &gadgets::sqrt2_phase(var("alpha"))), &gadgets::inv_sqrt2());
            let rhs = Side::with_legs(core, vec![legs("p", z, Multiplicity::Star, Some(NodeKind::x(Angle::pi(), 1, 1)))]);
            RewriteRule::new("K", kpe, lhs, rhs)
        }
        "E" => rule(
            "E",
            kpe,
            seq(&[Diagram::z(Angle::quarter(1), 0, 1), Diagram::x(Angle::quarter(-1), 1, 0)]),
            Diagram::empty(Calculus::Zx),
        ),
        "P" => {
            let states = t(&Diagram::z(var("alpha"), 0, 1), &Diagram::z(var("alpha"), 0, 1));
            rule("P", kpe, seq(&[states.clone(), projector::m2()]), states)
        }
        other => panic!("unknown ZX rule {other}"),
    }
}

/// The verification-only rule relating the scalars
/// `2e^{iθ₃}cos γ = e^{iθ₁}cos α + e^{iθ₂}cos β`.
///
/// The left side evaluates to `e^{iθ₃}(1 + e^{2iγ})·e^{-iγ} = 2e^{iθ₃}cos γ`,
/// the right side to the sum obtained by pushing `cos α`- and `cos β`-weighted
/// states through triangles and reading off the `|1⟩` amplitude.
pub fn rule_a() -> RewriteRule {
    let th = |s: &str| var(s);
    let lin = |terms: &[(&str, i64)]| {
        Angle::linear(terms.iter().map(|(v, k)| (v.to_string(), *k)), PiFrac::zero())
    };
    let lhs = Diagram::tensor_all(
        Calculus::Zx,
        &[Diagram::z(th("gamma").scale(2), 0, 0), gadgets::sqrt2_phase(lin(&[("theta3", 1), ("gamma", -1)])), gadgets::inv_sqrt2()],
    )
    .unwrap();
    let chain = seq(&[
        Diagram::z(th("alpha").scale(-2), 0, 1),
        gadgets::triangle_t(),
        Diagram::z(lin(&[("alpha", 1), ("beta", 1), ("theta1", 1), ("theta2", -1)]), 1, 1),
        gadgets::triangle_t(),
        Diagram::z(th("beta").scale(-2), 1, 1),
        gadgets::triangle_t(),
        Diagram::x(Angle::pi(), 1, 0),
    ]);
    let rhs = Diagram::tensor_all(
        Calculus::Zx,
        &[
            chain,
            gadgets::sqrt2_phase(lin(&[("beta", 1), ("theta2", 1)])),
            gadgets::scalar_power(&gadgets::inv_sqrt2(), 4),
        ],
    )
    .unwrap();
    let mut r = rule("A", "general", lhs, rhs);
    r.verify_only = true;
    r.constraint = Some(Constraint::CosineSum);
    r
}

/// The ZW rules by name.
pub fn zw_rule(name: &str) -> RewriteRule {
    let g = |k: NodeKind| Diagram::generator(k);
    let wire = || Diagram::identity(Calculus::Zw, 1);
    let swap = || Diagram::swap(Calculus::Zw);
    let z11 = || g(NodeKind::ZWhite11);
    let z21 = || g(NodeKind::ZWhite21);
    let z12 = || z21().transpose();
    let w11 = || g(NodeKind::WBlack11);
    let w12 = || g(NodeKind::WBlack12);
    let w21 = || w12().transpose();
    let cross = || g(NodeKind::ZwCross);
    let star = || g(NodeKind::Sqrt2Star);
    let ring = || {
        let mut d = Diagram::empty(Calculus::Zw);
        d.add_loop_scalar();
        d
    };
    let zw = "zw";
    let ext = "zw-sqrt2";
    let t4 = |a: Diagram, b: Diagram, c: Diagram, d: Diagram| t(&t(&t(&a, &b), &c), &d);
    match name {
        "zw-0" => rule(name, zw, seq(&[w12(), swap()]), w12()),
        "zw-1" => rule(
            name,
            zw,
            seq(&[w12(), t(&seq(&[w11(), w12()]), &wire())]),
            seq(&[w12(), t(&wire(), &seq(&[w11(), w12()]))]),
        ),
        "zw-2" => rule(name, zw, seq(&[t(&z21(), &wire()), z21()]), seq(&[t(&wire(), &z21()), z21()])),
        "zw-3" => {
            let lhs = seq(&[w21(), z12(), t(&wire(), &z11())]);
            let rhs = seq(&[
                t(&z12(), &z12()),
                t(&t(&wire(), &swap()), &wire()),
                t4(wire(), wire(), z11(), z11()),
                t(&w21(), &w21()),
            ]);
            rule(name, zw, lhs, rhs)
        }
        "zw-4" => rule(name, zw, seq(&[z11(), z11()]), wire()),
        "zw-5" => rule(name, zw, seq(&[w11(), w11()]), wire()),
        "zw-6" => rule(name, zw, seq(&[cross(), cross()]), Diagram::identity(Calculus::Zw, 2)),
        "zw-x" => rule(name, zw, seq(&[t(&z11(), &wire()), cross()]), seq(&[cross(), t(&wire(), &z11())])),
        "zw-7" => rule(name, zw, seq(&[t(&w11(), &wire()), cross()]), seq(&[cross(), t(&z11(), &w11())])),
        "zw-reid" => rule(name, zw, seq(&[cross(), swap()]), seq(&[swap(), cross()])),
        "zw-sym" => rule(name, zw, seq(&[swap(), z21()]), z21()),
        "iv" => rule(name, ext, t(&t(&star(), &star()), &ring()), Diagram::empty(Calculus::Zw)),
        "z" => {
            let mut loop_ = Diagram::empty(Calculus::Zw);
            loop_.nodes.insert(0, NodeKind::WBlack11);
            loop_.wires.push((crate::diagram::End::port(0, 0), crate::diagram::End::port(0, 1)));
            rule(name, ext, t(&star(), &loop_), loop_)
        }
        other => panic!("unknown ZW rule {other}"),
    }
}

fn leg_group_to_json(g: &LegGroup) -> Value {
    let mut o = json!({"var": g.var, "node": g.node, "mult": g.mult.as_str()});
    if let Some(k) = &g.deco {
        o["deco"] = json::node_to_json(0, k);
    }
    o
}

fn side_to_json(s: &Side) -> Value {
    json!({
        "diagram": json::diagram_to_json(&s.diagram),
        "legs": s.legs.iter().map(leg_group_to_json).collect::<Vec<_>>(),
        "links": s.links.iter().map(|g| json!({"var": g.var, "a": g.a, "b": g.b, "mult": g.mult.as_str()})).collect::<Vec<_>>(),
    })
}

/// Catalog entry: both sides in the diagram schema plus parameter domains
/// and leg groups.
pub fn rule_to_json(r: &RewriteRule) -> Value {
    let params: Map<String, Value> = r.params.iter().map(|(k, d)| (k.clone(), json!(d.as_str()))).collect();
    let mut o = json!({
        "name": r.name,
        "family": r.family,
        "params": params,
        "lhs": side_to_json(&r.lhs),
        "rhs": side_to_json(&r.rhs),
    });
    if r.verify_only {
        o["verify_only"] = json!(true);
    }
    if let Some(Constraint::CosineSum) = r.constraint {
        o["constraint"] = json!("cosine_sum");
    }
    o
}

fn parse_mult(v: &Value) -> Result<Multiplicity> {
    match v.as_str() {
        Some("star") => Ok(Multiplicity::Star),
        Some("plus") => Ok(Multiplicity::Plus),
        _ => Err(Error::Parse(format!("bad multiplicity {v}"))),
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing `{key}`")))
}

fn as_usize(v: &Value) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| Error::Parse(format!("expected an index, got {v}")))
}

fn side_from_json(v: &Value) -> Result<Side> {
    let diagram = json::diagram_from_json(field(v, "diagram")?)?;
    let empty = Vec::new();
    let legs = v
        .get("legs")
        .and_then(Value::as_array)
        .unwrap_or(&empty)
        .iter()
        .map(|g| {
            Ok(LegGroup {
                var: field(g, "var")?.as_str().unwrap_or_default().to_string(),
                node: as_usize(field(g, "node")?)?,
                mult: parse_mult(field(g, "mult")?)?,
                deco: match g.get("deco") {
                    Some(d) => Some(json::node_from_json(d)?.1),
                    None => None,
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let links = v
        .get("links")
        .and_then(Value::as_array)
        .unwrap_or(&empty)
        .iter()
        .map(|g| {
            Ok(LinkGroup {
                var: field(g, "var")?.as_str().unwrap_or_default().to_string(),
                a: as_usize(field(g, "a")?)?,
                b: as_usize(field(g, "b")?)?,
                mult: parse_mult(field(g, "mult")?)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Side { diagram, legs, links })
}

pub fn rule_from_json(v: &Value) -> Result<RewriteRule> {
    let name = field(v, "name")?.as_str().ok_or_else(|| Error::Parse("rule name must be a string".into()))?;
    let family = v.get("family").and_then(Value::as_str).unwrap_or("");
    let mut r = RewriteRule::new(name, family, side_from_json(field(v, "lhs")?)?, side_from_json(field(v, "rhs")?)?);
    if let Some(ps) = v.get("params").and_then(Value::as_object) {
        for (k, d) in ps {
            let dom = Domain::parse(d.as_str().unwrap_or_default())?;
            r.params.insert(k.clone(), dom);
        }
    }
    r.verify_only = v.get("verify_only").and_then(Value::as_bool).unwrap_or(false);
    r.constraint = match v.get("constraint").and_then(Value::as_str) {
        None => None,
        Some("cosine_sum") => Some(Constraint::CosineSum),
        Some(other) => return Err(Error::Parse(format!("unknown constraint `{other}`"))),
    };
    r.check_well_formed()?;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_ruleset_builds_and_is_well_formed() {
        for name in RULESET_NAMES {
            let rs = ruleset(name).unwrap();
            assert!(!rs.rules.is_empty());
            for r in &rs.rules {
                r.check_well_formed().unwrap_or_else(|e| panic!("{name}/{}: {e}", r.name));
            }
        }
    }

    #[test]
    fn membership() {
        let kpe = ruleset("dzx_kpe").unwrap();
        assert!(kpe.get("E").is_some() && kpe.get("IV").is_none() && kpe.get("Z").is_none());
        let kp = ruleset("dzx_kp").unwrap();
        assert!(kp.get("IV").is_some() && kp.get("K").is_some() && kp.get("P").is_some());
        assert!(ruleset("dzx_akpe").unwrap().get("A").unwrap().verify_only);
        assert!(ruleset("zw").unwrap().get("iv").is_none());
        assert!(ruleset("zw_sqrt2").unwrap().get("iv").is_some());
        assert!(ruleset("nope").is_err());
    }

    #[test]
    fn json_round_trip() {
        for name in RULESET_NAMES {
            let rs = ruleset(name).unwrap();
            let back = RuleSet::from_json(&rs.to_json()).unwrap();
            assert_eq!(back, rs, "{name}");
        }
    }
}
