//! Named branching identities for the binary icosahedral group and the
//! evaluator behind the `branch` command.

use std::sync::Arc;

use serde::Serialize;

use crate::chars::{induce, restrict, CharacterTable, ClassFunction};
use crate::error::{Error, Result};
use crate::tower::{choose_subgroup, default_tau, SubgroupChoice, Tower};

/// `xi` acts on `Q(sqrt 5)` as `z -> z^7` on the 60th roots of unity (`7 = 2 mod 5`).
pub const XI: i64 = 7;

#[derive(Clone, Debug, Serialize)]
pub struct BatteryCheck {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

/// Character expression over the three icosahedral tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Irr(String),
    Xi(Box<Expr>),
    Sym(usize, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
    Restrict(String, Box<Expr>),
    Induce(Box<Expr>),
}

pub struct IcosahedralContext {
    pub tet: Tower,
    pub quat: Tower,
}

impl IcosahedralContext {
    pub fn new() -> Result<Self> {
        let tet = Tower::icosahedral(SubgroupChoice::Tetrahedral, None)?;
        let q = choose_subgroup(&tet.base, &SubgroupChoice::Quaternion)?;
        let tau = default_tau(&tet.base, &q, 5)?;
        let quat = Tower::new(tet.base.clone(), &q, "Q", None, tau)?;
        Ok(IcosahedralContext { tet, quat })
    }

    pub fn big(&self) -> &Arc<CharacterTable> {
        &self.tet.f.table
    }

    fn table_for(&self, level: &str) -> Result<&Arc<CharacterTable>> {
        match level {
            "sl2z5" | "A5~" => Ok(&self.tet.f.table),
            "sl2z3" | "A4~" => Ok(&self.tet.f_prime.table),
            "quaternion" | "Q" => Ok(&self.quat.f_prime.table),
            _ => Err(Error::Config(format!("unknown level '{level}'"))),
        }
    }

    /// Evaluate an expression; bare labels are looked up in every table, big group first.
    pub fn eval(&self, e: &Expr) -> Result<ClassFunction> {
        match e {
            Expr::Irr(l) => {
                for lv in ["sl2z5", "sl2z3", "quaternion"] {
                    if let Some(c) = self.table_for(lv)?.by_label(l) {
                        return Ok(c.clone());
                    }
                }
                Err(Error::Config(format!("unknown character '{l}'")))
            }
            Expr::Xi(a) => self.eval(a)?.galois_twist(XI),
            Expr::Sym(k, a) => self.eval(a)?.sym_power(*k),
            Expr::Tensor(a, b) => self.eval(a)?.tensor(&self.eval(b)?),
            Expr::Restrict(lv, a) => {
                let emb = match lv.as_str() {
                    "sl2z3" | "A4~" => &self.tet.f_prime.embed,
                    "quaternion" | "Q" => &self.quat.f_prime.embed,
                    _ => return Err(Error::Config(format!("cannot restrict to '{lv}'"))),
                };
                restrict(&self.eval(a)?, emb)
            }
            Expr::Induce(a) => {
                let chi = self.eval(a)?;
                let emb = if Arc::ptr_eq(chi.group(), self.tet.f_prime.group()) {
                    &self.tet.f_prime.embed
                } else if Arc::ptr_eq(chi.group(), self.quat.f_prime.group()) {
                    &self.quat.f_prime.embed
                } else {
                    return Err(Error::Config("induction needs a character of a subgroup".into()));
                };
                induce(&chi, emb)
            }
        }
    }

    /// Name of a class function in the table of its own group.
    pub fn name(&self, f: &ClassFunction) -> String {
        for lv in ["sl2z5", "sl2z3", "quaternion"] {
            let t = self.table_for(lv).unwrap();
            if Arc::ptr_eq(t.group(), f.group()) {
                return t.name_of(f);
            }
        }
        "?".into()
    }
}

/// Parse `sym3(xi(theta2))`, `tensor(a,b)`, `res[sl2z3](theta3)`, `ind(psi1)` and bare labels.
pub fn parse_expr(s: &str) -> Result<Expr> {
    let s = s.trim();
    let bad = || Error::Config(format!("cannot parse character expression '{s}'"));
    let Some(open) = s.find('(') else {
        return if s.is_empty() { Err(bad()) } else { Ok(Expr::Irr(s.to_string())) };
    };
    let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
    let head = &s[..open];
    if let Some(k) = head.strip_prefix("sym") {
        return Ok(Expr::Sym(k.parse().map_err(|_| bad())?, Box::new(parse_expr(inner)?)));
    }
    if let Some(lv) = head.strip_prefix("res[").and_then(|r| r.strip_suffix(']')) {
        return Ok(Expr::Restrict(lv.to_string(), Box::new(parse_expr(inner)?)));
    }
    match head {
        "xi" => Ok(Expr::Xi(Box::new(parse_expr(inner)?))),
        "ind" => Ok(Expr::Induce(Box::new(parse_expr(inner)?))),
        "tensor" => {
            let mut depth = 0;
            let split = inner
                .char_indices()
                .find(|&(_, c)| {
                    match c {
                        '(' => depth += 1,
                        ')' => depth -= 1,
                        _ => {}
                    }
                    c == ',' && depth == 0
                })
                .map(|(i, _)| i)
                .ok_or_else(bad)?;
            Ok(Expr::Tensor(Box::new(parse_expr(&inner[..split])?), Box::new(parse_expr(&inner[split + 1..])?)))
        }
        _ => Err(bad()),
    }
}

/// One query answered: the value row, its name and whether it is irreducible.
#[derive(Clone, Debug, Serialize)]
pub struct QueryResult {
    pub query: String,
    pub name: String,
    pub degree: i64,
    pub irreducible: bool,
    pub values: Vec<String>,
}

pub fn run_query(ctx: &IcosahedralContext, q: &str) -> Result<QueryResult> {
    let f = ctx.eval(&parse_expr(q)?)?;
    let t = [&ctx.tet.f.table, &ctx.tet.f_prime.table, &ctx.quat.f_prime.table]
        .into_iter()
        .find(|t| Arc::ptr_eq(t.group(), f.group()))
        .ok_or_else(|| Error::Character("value lives on no bundled group".into()))?;
    Ok(QueryResult {
        query: q.to_string(),
        name: t.name_of(&f),
        degree: f.degree_int().unwrap_or(0),
        irreducible: t.is_irreducible(&f),
        values: f.render(),
    })
}

/// Every identity of the icosahedral list, the three restriction lemmas and the non-equivalence claims.
pub fn icosahedral_battery(ctx: &IcosahedralContext) -> Result<Vec<BatteryCheck>> {
    let eq = [
        ("trivial", "1", "sym0(theta2)"),
        ("deg2 conjugate", "theta2'", "xi(theta2)"),
        ("sym2 theta2", "sym2(theta2)", "theta3'"),
        ("sym2 conjugate", "sym2(xi(theta2))", "theta3"),
        ("sym3 xi invariant", "sym3(theta2)", "sym3(xi(theta2))"),
        ("sym3 irreducible", "sym3(theta2)", "theta4'"),
        ("tensor of conjugates", "tensor(theta2,xi(theta2))", "theta4"),
        ("sym4 is induced", "sym4(theta2)", "ind(psi1)"),
        ("sym4 xi invariant", "sym4(theta2)", "sym4(xi(theta2))"),
        ("sym4 irreducible", "sym4(theta2)", "theta5"),
        ("induced from psi1^2", "ind(psi1^2)", "theta5"),
        ("deg6 first form", "tensor(sym2(theta2),xi(theta2))", "tensor(theta2,sym2(xi(theta2)))"),
        ("deg6 is sym5", "tensor(sym2(theta2),xi(theta2))", "sym5(theta2)"),
        ("sym5 irreducible", "sym5(theta2)", "theta6"),
        ("theta2 to A4~", "res[sl2z3](theta2)", "psi2"),
        ("theta2' to A4~", "res[sl2z3](xi(theta2))", "psi2"),
        ("theta3 to A4~", "res[sl2z3](theta3)", "psi3"),
        ("theta2 to Q", "res[quaternion](theta2)", "Theta2"),
        ("theta2' to Q", "res[quaternion](xi(theta2))", "Theta2"),
    ];
    let ne = [
        ("deg2 distinct", "theta2", "xi(theta2)"),
        ("deg3 distinct", "sym2(theta2)", "sym2(xi(theta2))"),
        ("deg4 distinct", "sym3(theta2)", "tensor(theta2,xi(theta2))"),
    ];
    let mut out = Vec::new();
    for (name, a, b) in eq {
        let (fa, fb) = (ctx.eval(&parse_expr(a)?)?, ctx.eval(&parse_expr(b)?)?);
        out.push(BatteryCheck { name: name.into(), lhs: a.into(), rhs: b.into(), holds: fa == fb });
    }
    for (name, a, b) in ne {
        let (fa, fb) = (ctx.eval(&parse_expr(a)?)?, ctx.eval(&parse_expr(b)?)?);
        let irr = ctx.big().is_irreducible(&fa) && ctx.big().is_irreducible(&fb);
        out.push(BatteryCheck { name: name.into(), lhs: a.into(), rhs: format!("not {b}"), holds: irr && fa != fb });
    }
    // the nine characters listed exhaust the table
    let listed = ["1", "theta2", "xi(theta2)", "sym2(theta2)", "sym2(xi(theta2))", "sym3(theta2)", "tensor(theta2,xi(theta2))", "sym4(theta2)", "sym5(theta2)"];
    let mut found: Vec<usize> = listed.iter().map(|s| ctx.eval(&parse_expr(s)?).map(|f| ctx.big().find(&f))).collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
    found.sort();
    found.dedup();
    out.push(BatteryCheck { name: "list is complete".into(), lhs: listed.join(", "), rhs: "all 9 irreducibles".into(), holds: found.len() == ctx.big().len() });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battery_holds() {
        let ctx = IcosahedralContext::new().unwrap();
        let b = icosahedral_battery(&ctx).unwrap();
        let failed: Vec<_> = b.iter().filter(|c| !c.holds).map(|c| c.name.clone()).collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert_eq!(b.len(), 23);
    }

    #[test]
    fn single_queries() {
        let ctx = IcosahedralContext::new().unwrap();
        let r = run_query(&ctx, "sym2(theta2)").unwrap();
        assert_eq!((r.degree, r.irreducible, r.values.len()), (3, true, 9));
        let r = run_query(&ctx, "tensor(theta2,theta2)").unwrap();
        assert_eq!(r.name, "1 + theta3'");
        assert!(parse_expr("sym(theta2").is_err());
        assert!(run_query(&ctx, "theta9").is_err());
    }
}
