use deltazx::rewrite::{ruleset, verify_rule_soundness, VerifyConfig, RULESET_NAMES};

#[test]
fn every_shipped_rule_is_sound() {
    let cfg = VerifyConfig::default();
    let mut bad = Vec::new();
    for name in RULESET_NAMES {
        for rule in &ruleset(name).unwrap().rules {
            let rep = verify_rule_soundness(rule, &cfg);
            assert!(rep.checked > 0, "{name}/{} checked nothing", rule.name);
            if !rep.is_sound() {
                bad.push(format!("{name}/{}: {} failures, first {:?}", rule.name, rep.failures.len(), rep.failures[0]));
            }
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}
