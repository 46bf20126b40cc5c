//! Polynomial identities behind quotient maps of product surfaces.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{parse_mpoly, qi, MPoly};
use crate::error::{Error, Result};

/// `var^power → rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct RewriteRule {
    pub var: String,
    pub power: u32,
    pub rhs: MPoly,
}

impl RewriteRule {
    pub fn new(var: &str, power: u32, rhs: MPoly) -> Self {
        RewriteRule { var: var.to_string(), power, rhs }
    }

    /// Parses `"v^2 -> u^3 + u"`.
    pub fn parse(s: &str) -> Result<Self> {
        let (lhs, rhs) = s
            .split_once("->")
            .ok_or_else(|| Error::Parse(format!("rewrite rule {s:?} lacks '->'")))?;
        let lhs = parse_mpoly(lhs)?;
        let mut terms = lhs.terms();
        let bad = || Error::Parse(format!("left side of {s:?} must be a single variable power"));
        let (m, c) = terms.next().ok_or_else(bad)?;
        if terms.next().is_some() || *c != qi(1) {
            return Err(bad());
        }
        let mut vars = m.vars();
        let (v, e) = vars.next().ok_or_else(bad)?;
        if vars.next().is_some() || e < 2 {
            return Err(bad());
        }
        Ok(RewriteRule::new(v, e, parse_mpoly(rhs)?))
    }
}

fn check_terminates(rules: &[RewriteRule]) -> Result<()> {
    let heads: BTreeSet<&str> = rules.iter().map(|r| r.var.as_str()).collect();
    if heads.len() != rules.len() {
        return Err(Error::domain("two rewrite rules share a head variable"));
    }
    let deps: BTreeMap<&str, BTreeSet<String>> = rules
        .iter()
        .map(|r| (r.var.as_str(), r.rhs.variables().into_iter().filter(|v| heads.contains(v.as_str())).collect()))
        .collect();
    // depth-first search for a cycle among head variables
    fn visit<'a>(
        v: &'a str,
        deps: &'a BTreeMap<&str, BTreeSet<String>>,
        state: &mut BTreeMap<&'a str, u8>,
    ) -> Result<()> {
        match state.get(v) {
            Some(1) => {
                return Err(Error::domain(format!(
                    "rewriting does not terminate: {v} depends on itself through the rules"
                )))
            }
            Some(_) => return Ok(()),
            None => {}
        }
        state.insert(v, 1);
        for w in &deps[v] {
            visit(w.as_str(), deps, state)?;
        }
        state.insert(v, 2);
        Ok(())
    }
    let mut state = BTreeMap::new();
    for v in deps.keys() {
        visit(v, &deps, &mut state)?;
    }
    Ok(())
}

/// Reduces `p` exhaustively under `rules`.
pub fn reduce(p: &MPoly, rules: &[RewriteRule]) -> Result<MPoly> {
    check_terminates(rules)?;
    let mut p = p.clone();
    loop {
        let mut changed = false;
        for r in rules {
            while let Some(next) = p.rewrite_once(&r.var, r.power, &r.rhs) {
                p = next;
                changed = true;
            }
        }
        if !changed {
            return Ok(p);
        }
    }
}

/// True iff `target(substitution)` reduces to zero under the rules.
pub fn verify_quotient_map(
    rules: &[RewriteRule],
    substitution: &BTreeMap<String, MPoly>,
    target: &MPoly,
) -> Result<bool> {
    Ok(reduce(&target.substitute(substitution), rules)?.is_zero())
}

/// `c0 + c1·var + … + c_deg·var^deg` with symbolic coefficients `{prefix}k`.
pub fn generic_polynomial(var: &str, prefix: &str, degree: u32) -> MPoly {
    (0..=degree).fold(MPoly::zero(), |acc, k| {
        &acc + &(&MPoly::var(&format!("{prefix}{k}")) * &MPoly::var(var).pow(k))
    })
}

/// Input to [`verify_quotient_map`].
#[derive(Clone, Debug)]
pub struct QuotientProblem {
    pub rules: Vec<RewriteRule>,
    pub substitution: BTreeMap<String, MPoly>,
    pub target: MPoly,
}

impl QuotientProblem {
    pub fn verify(&self) -> Result<bool> {
        verify_quotient_map(&self.rules, &self.substitution, &self.target)
    }
}

fn subst(pairs: &[(&str, &str)]) -> BTreeMap<String, MPoly> {
    pairs.iter().map(|(k, v)| (k.to_string(), parse_mpoly(v).expect("static expression"))).collect()
}

/// `E_i × C → y² = x³ + x·s·f(s)²` via `x = u z², y = v z³, s = r²` on
/// `v² = u³ + u`, `z² = r f(r²)`, with `f` generic of the given degree.
pub fn twisted_product_quotient(degree: u32) -> QuotientProblem {
    let f_r2 = generic_polynomial("r", "c", degree).substitute(&subst(&[("r", "r^2")]));
    let f_s = generic_polynomial("s", "c", degree);
    let rules = vec![
        RewriteRule::new("v", 2, parse_mpoly("u^3 + u").unwrap()),
        RewriteRule::new("z", 2, &MPoly::var("r") * &f_r2),
    ];
    let target = &parse_mpoly("y^2 - x^3").unwrap() - &(&(&MPoly::var("x") * &MPoly::var("s")) * &f_s.pow(2));
    QuotientProblem { rules, substitution: subst(&[("x", "u*z^2"), ("y", "v*z^3"), ("s", "r^2")]), target }
}

/// `E_i × E_i → y² = x³ + t³(t+1)²x` via `x = u₂v₁²u₁², y = v₂v₁³u₁³, t = u₁²`.
pub fn shioda_inose_quotient() -> QuotientProblem {
    QuotientProblem {
        rules: vec![
            RewriteRule::parse("v1^2 -> u1^3 + u1").unwrap(),
            RewriteRule::parse("v2^2 -> u2^3 + u2").unwrap(),
        ],
        substitution: subst(&[("x", "u2*v1^2*u1^2"), ("y", "v2*v1^3*u1^3"), ("t", "u1^2")]),
        target: parse_mpoly("y^2 - x^3 - t^3*(t+1)^2*x").unwrap(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shioda_inose_identity_holds() {
        assert!(shioda_inose_quotient().verify().unwrap());
    }

    #[test]
    fn twisted_product_identity_holds_generically() {
        for g in 1..=3 {
            assert!(twisted_product_quotient(g).verify().unwrap(), "degree {g}");
        }
    }

    #[test]
    fn wrong_weight_fails() {
        let mut p = twisted_product_quotient(2);
        p.substitution.insert("y".into(), parse_mpoly("v*z^2").unwrap());
        assert!(!p.verify().unwrap());
    }

    #[test]
    fn self_referential_rules_are_rejected() {
        let rules = [RewriteRule::parse("z^2 -> z*r + 1").unwrap()];
        assert!(reduce(&MPoly::var("z"), &rules).is_err());
        let rules = [RewriteRule::parse("a^2 -> b").unwrap(), RewriteRule::parse("b^2 -> a + 1").unwrap()];
        assert!(reduce(&MPoly::var("a"), &rules).is_err());
    }

    #[test]
    fn parse_rule_shapes() {
        assert!(RewriteRule::parse("v^2 u -> 1").is_err());
        assert!(RewriteRule::parse("v -> 1").is_err());
        assert!(RewriteRule::parse("2*v^2 -> 1").is_err());
        assert_eq!(RewriteRule::parse("w^4 -> t").unwrap().power, 4);
    }
}
