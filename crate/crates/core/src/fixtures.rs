//! Golden character tables and the small expression language used to write them.
//!
//! Entries are expressions over integers and the symbols `u`, `v` (roots of
//! `x^2 - x - 1`, `u` the positive one), `w` (`exp(2 pi i/3)`), `i`
//! (`exp(2 pi i/4)`) and `zN` (`exp(2 pi i/N)`), combined with `+ - * ^` and
//! parentheses.

use std::path::Path;

use serde::Serialize;

use crate::chars::CharacterTable;
use crate::error::{Error, Result};
use crate::exactnum::Cyclotomic;

pub const SL2Z5_TSV: &str = include_str!("../../../data/golden/sl2z5.tsv");
pub const SL2Z3_TSV: &str = include_str!("../../../data/golden/sl2z3.tsv");
pub const QUATERNION_TSV: &str = include_str!("../../../data/golden/quaternion.tsv");

/// Parse a cyclotomic expression.
pub fn parse_value(src: &str) -> Result<Cyclotomic> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Config(format!("trailing input in '{src}'")));
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Sym(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push(Tok::Int(t.parse().map_err(|_| Error::Config(format!("bad integer '{t}'")))?));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Sym(cs[st..i].iter().collect()));
        } else if "+-*^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Config(format!("unexpected character '{c}' in '{s}'")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Cyclotomic> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.try_add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.try_add(&-self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Cyclotomic> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = acc.try_mul(&self.unary()?)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Cyclotomic> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Cyclotomic> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            match self.peek().cloned() {
                Some(Tok::Int(k)) => {
                    self.pos += 1;
                    base.pow(if neg { -k } else { k })
                }
                _ => Err(Error::Config("exponent must be an integer".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Cyclotomic> {
        match self.peek().cloned() {
            Some(Tok::Int(k)) => {
                self.pos += 1;
                Ok(Cyclotomic::from_int(1, k))
            }
            Some(Tok::Sym(s)) => {
                self.pos += 1;
                symbol(&s)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Config("missing ')'".into()));
                }
                Ok(v)
            }
            other => Err(Error::Config(format!("unexpected token {other:?}"))),
        }
    }
}

fn symbol(s: &str) -> Result<Cyclotomic> {
    match s {
        "u" => Cyclotomic::golden_u(5),
        "v" => Cyclotomic::golden_v(5),
        "w" => Ok(Cyclotomic::root_of_unity(3, 1)),
        "i" => Ok(Cyclotomic::root_of_unity(4, 1)),
        _ => {
            let n = s
                .strip_prefix('z')
                .and_then(|t| t.parse::<u32>().ok())
                .filter(|&n| n > 0)
                .ok_or_else(|| Error::Config(format!("unknown symbol '{s}'")))?;
            Ok(Cyclotomic::root_of_unity(n, 1))
        }
    }
}

/// A character table written out by hand.
#[derive(Clone, Debug)]
pub struct GoldenTable {
    pub group: String,
    pub classes: Vec<String>,
    pub rows: Vec<(String, Vec<Cyclotomic>)>,
    pub source: Vec<(String, Vec<String>)>,
}

impl GoldenTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut group = None;
        let mut classes = None;
        let mut rows = Vec::new();
        let mut source = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim_end();
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let cells: Vec<&str> = line.split('\t').collect();
            match cells[0] {
                "group" => group = cells.get(1).map(|s| s.to_string()),
                "classes" => classes = Some(cells[1..].iter().map(|s| s.to_string()).collect::<Vec<_>>()),
                label => {
                    let cl: &Vec<String> = classes
                        .as_ref()
                        .ok_or_else(|| Error::Config(format!("line {}: row before 'classes'", ln + 1)))?;
                    if cells.len() != cl.len() + 1 {
                        return Err(Error::Config(format!("line {}: expected {} entries", ln + 1, cl.len())));
                    }
                    let vals = cells[1..].iter().map(|c| parse_value(c)).collect::<Result<Vec<_>>>()?;
                    rows.push((label.to_string(), vals));
                    source.push((label.to_string(), cells[1..].iter().map(|s| s.to_string()).collect()));
                }
            }
        }
        Ok(GoldenTable {
            group: group.ok_or_else(|| Error::Config("golden table has no 'group' line".into()))?,
            classes: classes.ok_or_else(|| Error::Config("golden table has no 'classes' line".into()))?,
            rows,
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Bundled table for a group name, if shipped.
    pub fn bundled(group: &str) -> Option<Self> {
        let text = match group {
            "sl2z5" | "binary_icosahedral" => SL2Z5_TSV,
            "sl2z3" | "binary_tetrahedral" => SL2Z3_TSV,
            "quaternion" | "q8" => QUATERNION_TSV,
            _ => return None,
        };
        Self::parse(text).ok()
    }
}

/// One disagreement between a computed table and a golden one.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CellDiff {
    pub row: String,
    pub class: String,
    pub expected: String,
    pub computed: String,
}

/// Cell-for-cell comparison, by row label and class label.
pub fn diff_table(t: &CharacterTable, golden: &GoldenTable) -> Vec<CellDiff> {
    let g = t.group();
    let mut out = Vec::new();
    let computed_classes: Vec<String> = g.conjugacy_classes().labels.clone();
    if computed_classes != golden.classes {
        out.push(CellDiff {
            row: "<classes>".into(),
            class: "<header>".into(),
            expected: golden.classes.join(","),
            computed: computed_classes.join(","),
        });
    }
    if t.labels() != golden.rows.iter().map(|r| r.0.clone()).collect::<Vec<_>>().as_slice() {
        out.push(CellDiff {
            row: "<rows>".into(),
            class: "<header>".into(),
            expected: golden.rows.iter().map(|r| r.0.clone()).collect::<Vec<_>>().join(","),
            computed: t.labels().join(","),
        });
    }
    for (label, vals) in &golden.rows {
        let Some(row) = t.by_label(label) else {
            out.push(CellDiff { row: label.clone(), class: "*".into(), expected: "row".into(), computed: "missing".into() });
            continue;
        };
        for (ci, cname) in golden.classes.iter().enumerate() {
            let Some(k) = g.class_by_label(cname) else {
                out.push(CellDiff { row: label.clone(), class: cname.clone(), expected: "class".into(), computed: "missing".into() });
                continue;
            };
            if *row.value(k) != vals[ci] {
                out.push(CellDiff {
                    row: label.clone(),
                    class: cname.clone(),
                    expected: vals[ci].render_exact(),
                    computed: row.value(k).render_exact(),
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_expressions() {
        let u = parse_value("u").unwrap();
        let v = parse_value("v").unwrap();
        assert!((&u + &v).is_one());
        assert_eq!((&u * &v).as_i64(), Some(-1));
        assert_eq!(parse_value("1-u").unwrap(), -(&u - &Cyclotomic::one(5)));
        assert_eq!(parse_value("w^3").unwrap().as_i64(), Some(1));
        assert_eq!(parse_value("-(i*i)").unwrap().as_i64(), Some(1));
        assert_eq!(parse_value("z5*z5^4").unwrap().as_i64(), Some(1));
        assert!(parse_value("q").is_err());
    }

    #[test]
    fn bundled_tables_parse() {
        for g in ["sl2z5", "sl2z3", "quaternion"] {
            let t = GoldenTable::bundled(g).unwrap();
            assert_eq!(t.rows.len(), t.classes.len());
        }
    }
}

#[cfg(test)]
mod golden_tests {
    use std::sync::Arc;

    use super::*;
    use crate::groups::named_group;
    use crate::tower::{SubgroupChoice, Tower};

    fn check(t: &CharacterTable, fixture: &str) {
        let golden = GoldenTable::bundled(fixture).unwrap();
        assert_eq!(diff_table(t, &golden), vec![]);
    }

    #[test]
    fn standalone_tables_match() {
        for name in ["sl2z5", "sl2z3", "quaternion"] {
            let g = Arc::new(named_group(name).unwrap());
            check(&CharacterTable::compute(&g).unwrap(), name);
        }
    }

    #[test]
    fn subgroup_tables_match() {
        let t = Tower::icosahedral(SubgroupChoice::Tetrahedral, None).unwrap();
        check(&t.f_prime.table, "sl2z3");
        let t = Tower::icosahedral(SubgroupChoice::Quaternion, None).unwrap();
        check(&t.f_prime.table, "quaternion");
    }
}
