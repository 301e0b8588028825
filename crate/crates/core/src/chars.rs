//! Characters of finite groups with exact cyclotomic values.
//!
//! Tables are computed with the Dixon–Schneider method: common eigenvectors
//! of the class-sum matrices are found over a prime field `F_p` with
//! `p = 1 mod exp(G)`, and each character value is lifted back to
//! `Q(zeta_exp)` from its eigenvalue multiplicities on powers of the class
//! representative.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{Cyclotomic, Rational};
use crate::groups::FiniteGroup;

/// A function on the conjugacy classes of a group.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    values: Vec<Cyclotomic>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.values == other.values
    }
}

impl ClassFunction {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.len() != group.num_classes() {
            return Err(Error::Character(format!(
                "class function has {} values but {} has {} classes",
                values.len(),
                group.name(),
                group.num_classes()
            )));
        }
        Ok(ClassFunction { group, values })
    }

    pub fn from_ints(group: Arc<FiniteGroup>, values: &[i64]) -> Result<Self> {
        let m = group.exponent() as u32;
        Self::new(group, values.iter().map(|&v| Cyclotomic::from_int(m, v)).collect())
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> Self {
        let k = group.num_classes();
        ClassFunction { group: group.clone(), values: vec![Cyclotomic::one(1); k] }
    }

    /// The regular character.
    pub fn regular(group: &Arc<FiniteGroup>) -> Self {
        let k = group.num_classes();
        let mut values = vec![Cyclotomic::zero(1); k];
        values[0] = Cyclotomic::from_int(1, group.order() as i64);
        ClassFunction { group: group.clone(), values }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    pub fn at_element(&self, x: usize) -> &Cyclotomic {
        &self.values[self.group.class_of(x)]
    }

    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    pub fn degree_int(&self) -> Option<i64> {
        self.values[0].as_i64()
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::Character("class functions live on different groups".into()))
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Cyclotomic, &Cyclotomic) -> Result<Cyclotomic>) -> Result<Self> {
        self.same_group(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect::<Result<_>>()?;
        Ok(ClassFunction { group: self.group.clone(), values })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.try_add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.try_add(&-b))
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.try_mul(b))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        ClassFunction { group: self.group.clone(), values: self.values.iter().map(|v| v.scale(q)).collect() }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        ClassFunction { group: self.group.clone(), values: self.values.iter().map(|v| v.scale_int(k)).collect() }
    }

    /// Complex conjugate, i.e. the dual character.
    pub fn dual(&self) -> Self {
        ClassFunction { group: self.group.clone(), values: self.values.iter().map(|v| v.conj()).collect() }
    }

    /// Apply `zeta -> zeta^k` to every value.
    pub fn galois_twist(&self, k: i64) -> Result<Self> {
        let values = self.values.iter().map(|v| v.galois_map(k)).collect::<Result<_>>()?;
        Ok(ClassFunction { group: self.group.clone(), values })
    }

    /// Adams operation `g -> chi(g^l)`.
    pub fn adams(&self, l: i64) -> Self {
        let g = &self.group;
        let values = (0..g.num_classes()).map(|c| self.values[g.power_class(c, l)].clone()).collect();
        ClassFunction { group: g.clone(), values }
    }

    /// `Sym^k` via `k chi_{Sym^k}(g) = sum_{i=1..k} chi(g^i) chi_{Sym^{k-i}}(g)`.
    pub fn sym_power(&self, k: usize) -> Result<Self> {
        self.power_recursion(k, false).map(|mut v| v.pop().unwrap())
    }

    /// `Lambda^k` via the signed Newton recursion.
    pub fn ext_power(&self, k: usize) -> Result<Self> {
        self.power_recursion(k, true).map(|mut v| v.pop().unwrap())
    }

    /// `[P^0, P^1, ..., P^k]` for `P = Sym` or `Lambda`.
    pub fn power_recursion(&self, k: usize, exterior: bool) -> Result<Vec<Self>> {
        let adams: Vec<Self> = (1..=k as i64).map(|i| self.adams(i)).collect();
        let mut out = vec![ClassFunction::trivial(&self.group)];
        for j in 1..=k {
            let mut acc = ClassFunction::new(self.group.clone(), vec![Cyclotomic::zero(1); self.values.len()])?;
            for i in 1..=j {
                let term = adams[i - 1].tensor(&out[j - i])?;
                acc = if exterior && i % 2 == 0 { acc.sub(&term)? } else { acc.add(&term)? };
            }
            out.push(acc.scale(&Rational::new(BigInt::from(1), BigInt::from(j as i64))));
        }
        Ok(out)
    }

    /// Determinant character (top exterior power).
    pub fn det_char(&self) -> Result<Self> {
        let d = self
            .degree_int()
            .filter(|d| *d >= 0)
            .ok_or_else(|| Error::Character("determinant of a non-character".into()))?;
        self.ext_power(d as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Kernel as a set of elements (classes where `chi(g) = chi(1)`).
    pub fn kernel_classes(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&c| self.values[c] == self.values[0]).collect()
    }

    pub fn render(&self) -> Vec<String> {
        self.values.iter().map(|v| v.render_exact()).collect()
    }
}

/// `(1/|G|) sum_g a(g) conj(b(g))`.
pub fn inner_product(a: &ClassFunction, b: &ClassFunction) -> Result<Cyclotomic> {
    a.same_group(b)?;
    let g = &a.group;
    let mut acc = Cyclotomic::zero(1);
    for c in 0..g.num_classes() {
        let t = a.values[c].try_mul(&b.values[c].conj())?.scale_int(g.class_size(c) as i64);
        acc = acc.try_add(&t)?;
    }
    Ok(acc.scale(&Rational::new(BigInt::from(1), BigInt::from(g.order() as i64))))
}

/// Inner product that must be a rational integer.
pub fn inner_product_int(a: &ClassFunction, b: &ClassFunction) -> Result<i64> {
    let v = inner_product(a, b)?;
    v.as_i64().ok_or_else(|| Error::Character(format!("inner product {} is not an integer", v.render_exact())))
}

/// An injective homomorphism `sub -> parent` with its class fusion.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub sub: Arc<FiniteGroup>,
    pub parent: Arc<FiniteGroup>,
    pub map: Vec<usize>,
    pub fusion: Vec<usize>,
    preimage: Vec<u32>,
}

impl Embedding {
    pub fn new(sub: Arc<FiniteGroup>, parent: Arc<FiniteGroup>, map: Vec<usize>) -> Result<Self> {
        if map.len() != sub.order() {
            return Err(Error::Group("embedding map has the wrong length".into()));
        }
        let fusion = (0..sub.num_classes()).map(|c| parent.class_of(map[sub.class_rep(c)])).collect();
        let mut preimage = vec![u32::MAX; parent.order()];
        for (i, &x) in map.iter().enumerate() {
            if x >= parent.order() || preimage[x] != u32::MAX {
                return Err(Error::Group("embedding map is not injective".into()));
            }
            preimage[x] = i as u32;
        }
        for a in 0..sub.order() {
            for b in 0..sub.order() {
                if map[sub.mul(a, b)] != parent.mul(map[a], map[b]) {
                    return Err(Error::Group("embedding map is not a homomorphism".into()));
                }
            }
        }
        Ok(Embedding { sub, parent, map, fusion, preimage })
    }

    pub fn identity(g: &Arc<FiniteGroup>) -> Self {
        Embedding {
            sub: g.clone(),
            parent: g.clone(),
            map: (0..g.order()).collect(),
            fusion: (0..g.num_classes()).collect(),
            preimage: (0..g.order() as u32).collect(),
        }
    }

    /// `self` followed by `outer` (`self.parent` must be `outer.sub`).
    pub fn compose(&self, outer: &Embedding) -> Result<Self> {
        if !Arc::ptr_eq(&self.parent, &outer.sub) {
            return Err(Error::Group("embeddings do not compose".into()));
        }
        let map = self.map.iter().map(|&x| outer.map[x]).collect();
        Embedding::new(self.sub.clone(), outer.parent.clone(), map)
    }

    /// Element of `sub` mapping to `x`, if `x` lies in the image.
    pub fn preimage(&self, x: usize) -> Option<usize> {
        match self.preimage[x] {
            u32::MAX => None,
            i => Some(i as usize),
        }
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.sub.order()
    }

    /// Image as a subgroup handle of the parent.
    pub fn image(&self) -> crate::groups::SubgroupHandle {
        self.parent.subgroup_from_elements(&self.map).expect("image of a homomorphism is a subgroup")
    }
}

pub fn restrict(chi: &ClassFunction, emb: &Embedding) -> Result<ClassFunction> {
    if !Arc::ptr_eq(chi.group(), &emb.parent) {
        return Err(Error::Character("restriction from the wrong group".into()));
    }
    let values = emb.fusion.iter().map(|&c| chi.values[c].clone()).collect();
    ClassFunction::new(emb.sub.clone(), values)
}

/// `Ind(psi)(g) = |G| / (|K_g| |H|) * sum_{H-classes D in K_g} |D| psi(D)`.
pub fn induce(psi: &ClassFunction, emb: &Embedding) -> Result<ClassFunction> {
    if !Arc::ptr_eq(psi.group(), &emb.sub) {
        return Err(Error::Character("induction from the wrong group".into()));
    }
    let g = &emb.parent;
    let h = &emb.sub;
    let mut sums = vec![Cyclotomic::zero(1); g.num_classes()];
    for d in 0..h.num_classes() {
        let t = psi.values[d].scale_int(h.class_size(d) as i64);
        sums[emb.fusion[d]] = sums[emb.fusion[d]].try_add(&t)?;
    }
    let values = sums
        .into_iter()
        .enumerate()
        .map(|(c, s)| {
            s.scale(&Rational::new(
                BigInt::from(g.order() as i64),
                BigInt::from((g.class_size(c) * h.order()) as i64),
            ))
        })
        .collect();
    ClassFunction::new(g.clone(), values)
}

/// Irreducible multiplicities of a character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Multiplicities {
    pub counts: Vec<u64>,
}

impl Multiplicities {
    pub fn support(&self) -> Vec<(usize, u64)> {
        self.counts.iter().enumerate().filter(|(_, &m)| m > 0).map(|(i, &m)| (i, m)).collect()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Complete table of irreducible characters.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    rows: Vec<ClassFunction>,
    labels: Vec<String>,
}

impl CharacterTable {
    /// Compute from scratch: outer products for direct products, Dixon–Schneider otherwise.
    pub fn compute(group: &Arc<FiniteGroup>) -> Result<Self> {
        if let Some((a, b)) = group.factors() {
            let ta = CharacterTable::compute(a)?;
            let tb = CharacterTable::compute(b)?;
            return CharacterTable::outer_product(group, &ta, &tb);
        }
        let mut t = CharacterTable::dixon_schneider(group)?;
        t.apply_named_labels()?;
        Ok(t)
    }

    pub fn from_rows(group: Arc<FiniteGroup>, rows: Vec<ClassFunction>, labels: Vec<String>) -> Self {
        CharacterTable { group, rows, labels }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn rows(&self) -> &[ClassFunction] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &ClassFunction {
        &self.rows[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn by_label(&self, label: &str) -> Option<&ClassFunction> {
        self.labels.iter().position(|l| l == label).map(|i| &self.rows[i])
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Index of the irreducible equal to `chi`, if any.
    pub fn find(&self, chi: &ClassFunction) -> Option<usize> {
        self.rows.iter().position(|r| r == chi)
    }

    pub fn name_of(&self, chi: &ClassFunction) -> String {
        match self.find(chi) {
            Some(i) => self.labels[i].clone(),
            None => match self.decompose(chi) {
                Ok(m) => {
                    let parts: Vec<String> = m
                        .support()
                        .iter()
                        .map(|&(i, k)| if k == 1 { self.labels[i].clone() } else { format!("{k}{}", self.labels[i]) })
                        .collect();
                    if parts.is_empty() {
                        "0".into()
                    } else {
                        parts.join(" + ")
                    }
                }
                Err(_) => "<not a character>".into(),
            },
        }
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.rows.iter().map(|r| r.degree_int().unwrap_or(0)).collect()
    }

    pub fn linear_characters(&self) -> Vec<usize> {
        (0..self.rows.len()).filter(|&i| self.rows[i].degree_int() == Some(1)).collect()
    }

    pub fn irreducibles_of_degree(&self, d: i64) -> Vec<usize> {
        (0..self.rows.len()).filter(|&i| self.rows[i].degree_int() == Some(d)).collect()
    }

    /// Exact multiplicities; fails on a virtual or non-integral class function.
    pub fn decompose(&self, f: &ClassFunction) -> Result<Multiplicities> {
        let mut counts = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            let m = inner_product(f, r)?;
            let k = m
                .as_integer()
                .ok_or_else(|| Error::Character(format!("non-integral multiplicity {}", m.render_exact())))?;
            if k.is_negative() {
                return Err(Error::Character(format!("negative multiplicity {k}")));
            }
            counts.push(k.to_u64().unwrap_or(u64::MAX));
        }
        let mut rebuilt = ClassFunction::new(self.group.clone(), vec![Cyclotomic::zero(1); self.group.num_classes()])?;
        for (i, &m) in counts.iter().enumerate() {
            if m > 0 {
                rebuilt = rebuilt.add(&self.rows[i].scale_int(m as i64))?;
            }
        }
        if rebuilt != *f {
            return Err(Error::Character("class function is not in the span of the table".into()));
        }
        Ok(Multiplicities { counts })
    }

    /// Is `f` an irreducible character (a row of the table)?
    pub fn is_irreducible(&self, f: &ClassFunction) -> bool {
        self.find(f).is_some()
    }

    /// Row orthogonality, column orthogonality and the degree-square sum, exactly.
    pub fn verify_orthogonality(&self) -> Result<bool> {
        let g = &self.group;
        let k = self.rows.len();
        if k != g.num_classes() {
            return Ok(false);
        }
        for i in 0..k {
            for j in i..k {
                let v = inner_product(&self.rows[i], &self.rows[j])?;
                let want = if i == j { 1 } else { 0 };
                if v.as_i64() != Some(want) {
                    return Ok(false);
                }
            }
        }
        for a in 0..k {
            for b in a..k {
                let mut acc = Cyclotomic::zero(1);
                for r in &self.rows {
                    acc = acc.try_add(&r.values[a].try_mul(&r.values[b].conj())?)?;
                }
                let want = if a == b { (g.order() / g.class_size(a)) as i64 } else { 0 };
                if acc.as_i64() != Some(want) {
                    return Ok(false);
                }
            }
        }
        let s: i64 = self.degrees().iter().map(|d| d * d).sum();
        Ok(s == g.order() as i64)
    }

    /// Table of `A x B` from tables of the factors; row `(i, j)` is `chi_i (x) psi_j`.
    pub fn outer_product(group: &Arc<FiniteGroup>, ta: &CharacterTable, tb: &CharacterTable) -> Result<Self> {
        let (a, b) = group
            .factors()
            .ok_or_else(|| Error::Character(format!("{} is not a direct product", group.name())))?;
        if !Arc::ptr_eq(a, &ta.group) || !Arc::ptr_eq(b, &tb.group) {
            return Err(Error::Character("factor tables do not match the product".into()));
        }
        let kb = b.num_classes();
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for (ra, la) in ta.rows.iter().zip(&ta.labels) {
            for (rb, lb) in tb.rows.iter().zip(&tb.labels) {
                let mut values = Vec::with_capacity(group.num_classes());
                for ca in 0..a.num_classes() {
                    for cb in 0..kb {
                        values.push(ra.values[ca].try_mul(&rb.values[cb])?);
                    }
                }
                rows.push(ClassFunction::new(group.clone(), values)?);
                labels.push(format!("{la}⊠{lb}"));
            }
        }
        Ok(CharacterTable { group: group.clone(), rows, labels })
    }

    /// Outer product `chi (x) psi` of characters of the two factors of `group`.
    pub fn external_tensor(group: &Arc<FiniteGroup>, chi: &ClassFunction, psi: &ClassFunction) -> Result<ClassFunction> {
        let (a, b) = group
            .factors()
            .ok_or_else(|| Error::Character(format!("{} is not a direct product", group.name())))?;
        if !Arc::ptr_eq(a, chi.group()) || !Arc::ptr_eq(b, psi.group()) {
            return Err(Error::Character("factor characters do not match the product".into()));
        }
        let mut values = Vec::with_capacity(group.num_classes());
        for ca in 0..a.num_classes() {
            for cb in 0..b.num_classes() {
                values.push(chi.values[ca].try_mul(&psi.values[cb])?);
            }
        }
        ClassFunction::new(group.clone(), values)
    }

    // ------------------------------------------------------------ Dixon–Schneider

    pub fn dixon_schneider(group: &Arc<FiniteGroup>) -> Result<Self> {
        let n = group.order() as u64;
        let e = group.exponent() as u64;
        let mut p = e + 1;
        let mut attempts = 0;
        loop {
            if is_prime(p) && p * p > 4 * n {
                match ds_at_prime(group, p) {
                    Ok(t) => return Ok(t),
                    Err(err) => {
                        attempts += 1;
                        if attempts > 8 {
                            return Err(err);
                        }
                    }
                }
            }
            p += e;
        }
    }

    fn apply_named_labels(&mut self) -> Result<()> {
        let labels: Vec<&str> = self.group.conjugacy_classes().labels.iter().map(|s| s.as_str()).collect();
        let rules = if labels == ["C1", "C2", "C4", "C3", "C6", "C5", "C10", "C5'", "C10'"] {
            icosahedral_rules()?
        } else if labels == ["C1", "C2", "C4", "Ct", "Ct'", "Ct2", "Ct2'"] {
            tetrahedral_rules()?
        } else if labels == ["C1", "C-1", "Ci", "Cj", "Cij"] {
            quaternion_rules()
        } else {
            return Ok(());
        };
        self.relabel(&rules)
    }

    /// Assign labels by anchor rules; the first unused row satisfying a rule takes its label.
    pub fn relabel(&mut self, rules: &[LabelRule]) -> Result<()> {
        if rules.len() != self.rows.len() {
            return Err(Error::Character("label rule count differs from row count".into()));
        }
        let mut used = vec![false; self.rows.len()];
        let mut order = Vec::new();
        for rule in rules {
            let idx = (0..self.rows.len())
                .find(|&i| !used[i] && rule.matches(&self.rows[i], &self.group))
                .ok_or_else(|| Error::Character(format!("no row matches the rule for {}", rule.label)))?;
            used[idx] = true;
            order.push(idx);
        }
        self.rows = order.iter().map(|&i| self.rows[i].clone()).collect();
        self.labels = rules.iter().map(|r| r.label.clone()).collect();
        Ok(())
    }
}

/// A row is labelled `label` when its degree and the listed class values match.
#[derive(Clone, Debug)]
pub struct LabelRule {
    pub label: String,
    pub degree: i64,
    pub values: Vec<(String, Cyclotomic)>,
}

impl LabelRule {
    fn new(label: &str, degree: i64, values: Vec<(&str, Cyclotomic)>) -> Self {
        LabelRule {
            label: label.into(),
            degree,
            values: values.into_iter().map(|(c, v)| (c.to_string(), v)).collect(),
        }
    }

    fn matches(&self, row: &ClassFunction, g: &FiniteGroup) -> bool {
        row.degree_int() == Some(self.degree)
            && self.values.iter().all(|(c, v)| g.class_by_label(c).map(|k| row.values[k] == *v).unwrap_or(false))
    }
}

fn int(k: i64) -> Cyclotomic {
    Cyclotomic::from_int(1, k)
}

fn icosahedral_rules() -> Result<Vec<LabelRule>> {
    let u = Cyclotomic::golden_u(5)?;
    let um1 = u.try_add(&int(-1))?;
    Ok(vec![
        LabelRule::new("1", 1, vec![]),
        LabelRule::new("theta3", 3, vec![("C5", u)]),
        LabelRule::new("theta3'", 3, vec![]),
        LabelRule::new("theta4", 4, vec![("C2", int(4))]),
        LabelRule::new("theta5", 5, vec![]),
        LabelRule::new("theta2", 2, vec![("C5", um1)]),
        LabelRule::new("theta2'", 2, vec![]),
        LabelRule::new("theta4'", 4, vec![]),
        LabelRule::new("theta6", 6, vec![]),
    ])
}

fn tetrahedral_rules() -> Result<Vec<LabelRule>> {
    let w = Cyclotomic::root_of_unity(3, 1);
    Ok(vec![
        LabelRule::new("1", 1, vec![("Ct", int(1))]),
        LabelRule::new("psi1", 1, vec![("Ct", w.clone())]),
        LabelRule::new("psi1^2", 1, vec![]),
        LabelRule::new("psi3", 3, vec![]),
        LabelRule::new("psi2", 2, vec![("Ct", int(-1))]),
        LabelRule::new("psi2psi1", 2, vec![("Ct", -w)]),
        LabelRule::new("psi2psi1^2", 2, vec![]),
    ])
}

fn quaternion_rules() -> Vec<LabelRule> {
    vec![
        LabelRule::new("1", 1, vec![("Ci", int(1)), ("Cj", int(1))]),
        LabelRule::new("Theta1", 1, vec![("Ci", int(-1)), ("Cj", int(1))]),
        LabelRule::new("Theta1'", 1, vec![("Ci", int(1)), ("Cj", int(-1))]),
        LabelRule::new("Theta1Theta1'", 1, vec![]),
        LabelRule::new("Theta2", 2, vec![]),
    ]
}

// ------------------------------------------------------------------ modular arithmetic

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p).find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1)).unwrap_or(1)
}

/// Basis of the null space of a `rows x cols` matrix over `F_p`.
fn nullspace(mut m: Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + p - f * m[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[i][f]) % p;
            }
            v
        })
        .collect()
}

fn ds_at_prime(group: &Arc<FiniteGroup>, p: u64) -> Result<CharacterTable> {
    let g = group.as_ref();
    let n = g.order();
    let k = g.num_classes();
    let e = g.exponent() as u64;
    // class coefficients c[i][j][l] = #{x in K_i : x^{-1} z_l in K_j}
    let mut coeff = vec![vec![vec![0u64; k]; k]; k];
    for l in 0..k {
        let z = g.class_rep(l);
        for x in 0..n {
            let i = g.class_of(x);
            let j = g.class_of(g.mul(g.inv(x), z));
            coeff[i][j][l] += 1;
        }
    }
    // subspaces as lists of basis column vectors; split by each class matrix
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k).map(|i| (0..k).map(|j| (i == j) as u64).collect()).collect()];
    for i in 1..k {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let a = &coeff[i];
        let apply = |v: &Vec<u64>| -> Vec<u64> {
            (0..k).map(|j| (0..k).fold(0u64, |acc, l| (acc + a[j][l] % p * v[l]) % p)).collect()
        };
        let mut next = Vec::new();
        for basis in spaces {
            let d = basis.len();
            if d == 1 {
                next.push(basis);
                continue;
            }
            let images: Vec<Vec<u64>> = basis.iter().map(apply).collect();
            let r = restrict_operator(&basis, &images, k, p)?;
            let mut found = 0;
            for lambda in 0..p {
                let mut m = r.clone();
                for (t, row) in m.iter_mut().enumerate() {
                    row[t] = (row[t] + p - lambda) % p;
                }
                let ker = nullspace(m, d, p);
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                let sub: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|c| {
                        (0..k)
                            .map(|row| (0..d).fold(0u64, |acc, t| (acc + basis[t][row] * c[t]) % p))
                            .collect()
                    })
                    .collect();
                next.push(sub);
                if found == d {
                    break;
                }
            }
            if found != d {
                return Err(Error::Character(format!("class matrix not diagonalisable mod {p}")));
            }
        }
        spaces = next;
    }
    if spaces.len() != k || spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::Character(format!("eigenspaces did not separate mod {p}")));
    }
    let z = pow_mod(primitive_root(p), (p - 1) / e, p);
    let m = e as u32;
    let roots: Vec<Cyclotomic> = (0..e as i64).map(|t| Cyclotomic::root_of_unity(m, t)).collect();
    let mut rows = Vec::with_capacity(k);
    for s in spaces {
        let v = &s[0];
        let inv0 = inv_mod(v[0], p);
        let omega: Vec<u64> = v.iter().map(|x| x * inv0 % p).collect();
        let mut denom = 0u64;
        for j in 0..k {
            let jstar = g.inverse_class(j);
            denom = (denom + omega[j] * omega[jstar] % p * inv_mod(g.class_size(j) as u64 % p, p)) % p;
        }
        if denom == 0 {
            return Err(Error::Character(format!("degenerate degree computation mod {p}")));
        }
        let d2 = (n as u64 % p) * inv_mod(denom, p) % p;
        let d = (1..=((n as f64).sqrt() as u64 + 1))
            .find(|&d| d * d % p == d2)
            .ok_or_else(|| Error::Character(format!("no degree with square {d2} mod {p}")))?;
        let chi_p: Vec<u64> =
            (0..k).map(|j| d % p * omega[j] % p * inv_mod(g.class_size(j) as u64 % p, p) % p).collect();
        let mut values = Vec::with_capacity(k);
        for c in 0..k {
            let o = g.class_order(c) as u64;
            let zo = pow_mod(z, e / o, p);
            let inv_o = inv_mod(o % p, p);
            let mut val = Cyclotomic::zero(m);
            let mut total = 0u64;
            for t in 0..o {
                let mut acc = 0u64;
                for l in 0..o {
                    let chi_l = chi_p[g.power_class(c, l as i64)];
                    let w = pow_mod(zo, (p - 1 - (t * l) % (p - 1)) % (p - 1), p);
                    acc = (acc + chi_l * w) % p;
                }
                let mult = acc * inv_o % p;
                if mult > d {
                    return Err(Error::Character(format!("eigenvalue multiplicity lift failed mod {p}")));
                }
                total += mult;
                if mult > 0 {
                    val = val.try_add(&roots[((e / o) * t) as usize].scale_int(mult as i64))?;
                }
            }
            if total != d {
                return Err(Error::Character(format!("multiplicities do not sum to the degree mod {p}")));
            }
            values.push(val);
        }
        rows.push(ClassFunction::new(group.clone(), values)?);
    }
    rows.sort_by_cached_key(|r| (r.degree_int().unwrap_or(0), r.render()));
    let labels = (1..=k).map(|i| format!("X{i}")).collect();
    let t = CharacterTable { group: group.clone(), rows, labels };
    if !t.verify_orthogonality()? {
        return Err(Error::Character(format!("lifted table fails orthogonality mod {p}")));
    }
    Ok(t)
}

/// Matrix of an operator on the span of `basis`, given the images of the basis vectors.
fn restrict_operator(basis: &[Vec<u64>], images: &[Vec<u64>], k: usize, p: u64) -> Result<Vec<Vec<u64>>> {
    let d = basis.len();
    // augmented system: columns are basis vectors, solve B x = image for each image
    let mut m: Vec<Vec<u64>> = (0..k)
        .map(|row| {
            let mut r: Vec<u64> = (0..d).map(|t| basis[t][row]).collect();
            r.extend(images.iter().map(|im| im[row]));
            r
        })
        .collect();
    let cols = 2 * d;
    let mut r = 0;
    for c in 0..d {
        let piv = (r..k).find(|&i| m[i][c] != 0).ok_or_else(|| Error::Character("degenerate basis".into()))?;
        m.swap(r, piv);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..k {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + p - f * m[r][j] % p) % p;
                }
            }
        }
        r += 1;
    }
    if m[d..].iter().any(|row| row[d..].iter().any(|&x| x != 0)) {
        return Err(Error::Character("subspace is not invariant".into()));
    }
    // result R[t][s]: coefficient of basis t in image s; we return it in row-major (t, s)
    Ok((0..d).map(|t| (0..d).map(|s| m[t][d + s]).collect()).collect())
}

/// Eigenvalue multiset of `rho(g)` for a character `chi`, as exponents `t` of `zeta_o^t`
/// with `o` the order of `g`.  Computed from `chi` on the powers of `g`.
pub fn eigenvalue_exponents(chi: &ClassFunction, class: usize) -> Result<(u32, Vec<u32>)> {
    let g = chi.group();
    let o = g.class_order(class) as i64;
    let d = chi
        .degree_int()
        .ok_or_else(|| Error::Character("eigenvalues of a non-character".into()))?;
    let mut out = Vec::new();
    for t in 0..o {
        // m_t = (1/o) sum_l chi(g^l) zeta_o^{-t l}
        let mut acc = Cyclotomic::zero(1);
        for l in 0..o {
            let v = chi.value(g.power_class(class, l));
            let w = Cyclotomic::root_of_unity(o as u32, -(t * l));
            acc = acc.try_add(&v.try_mul(&w)?)?;
        }
        let m = acc.scale(&Rational::new(BigInt::from(1), BigInt::from(o)));
        let k = m
            .as_integer()
            .filter(|k| !k.is_negative())
            .ok_or_else(|| Error::Character("eigenvalue multiplicity is not a nonnegative integer".into()))?;
        for _ in 0..k.to_u64().unwrap_or(0) {
            out.push(t as u32);
        }
    }
    if out.len() as i64 != d {
        return Err(Error::Character("eigenvalue multiplicities do not sum to the degree".into()));
    }
    Ok((o as u32, out))
}

/// Cache of tables keyed by group identity.
#[derive(Default)]
pub struct TableCache {
    tables: HashMap<usize, Arc<CharacterTable>>,
}

impl TableCache {
    pub fn get(&mut self, g: &Arc<FiniteGroup>) -> Result<Arc<CharacterTable>> {
        let key = Arc::as_ptr(g) as usize;
        if let Some(t) = self.tables.get(&key) {
            return Ok(t.clone());
        }
        let t = Arc::new(CharacterTable::compute(g)?);
        self.tables.insert(key, t.clone());
        Ok(t)
    }
}

/// `sum_c |K_c| * |f(c)|^2 / |G|` is 1 exactly for irreducible characters.
pub fn norm_squared(f: &ClassFunction) -> Result<Cyclotomic> {
    inner_product(f, f)
}

pub fn is_zero_value(v: &Cyclotomic) -> bool {
    v.is_zero() || v.as_integer().map(|x| x.is_zero()).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{named_group, FiniteGroup};

    fn table(name: &str) -> CharacterTable {
        let g = Arc::new(named_group(name).unwrap());
        CharacterTable::compute(&g).unwrap()
    }

    #[test]
    fn icosahedral_degrees_and_labels() {
        let t = table("sl2z5");
        assert_eq!(t.degrees(), vec![1, 3, 3, 4, 5, 2, 2, 4, 6]);
        let th2 = t.by_label("theta2").unwrap();
        assert_eq!(th2.value(1).as_i64(), Some(-2));
        let u = Cyclotomic::golden_u(5).unwrap();
        assert_eq!(*th2.value(5), &u - &Cyclotomic::one(5));
        assert!(t.verify_orthogonality().unwrap());
    }

    #[test]
    fn quaternion_and_trivial() {
        let t = table("quaternion");
        assert_eq!(t.degrees(), vec![1, 1, 1, 1, 2]);
        assert_eq!(t.by_label("Theta2").unwrap().value(1).as_i64(), Some(-2));
        let tr = table("trivial");
        assert_eq!(tr.len(), 1);
    }

    #[test]
    fn sl2z7_table() {
        let t = table("sl2z7");
        assert_eq!(t.len(), 11);
        assert!(t.verify_orthogonality().unwrap());
        // no nontrivial irreducible of degree <= 2
        assert_eq!(t.degrees().iter().filter(|&&d| d <= 2).count(), 1);
    }

    #[test]
    fn products_match_dixon_schneider() {
        let a = Arc::new(named_group("cyclic3").unwrap());
        let b = Arc::new(named_group("quaternion").unwrap());
        let p = Arc::new(FiniteGroup::direct_product(&a, &b).unwrap());
        let outer = CharacterTable::compute(&p).unwrap();
        let ds = CharacterTable::dixon_schneider(&p).unwrap();
        assert_eq!(outer.len(), ds.len());
        for r in ds.rows() {
            assert!(outer.find(r).is_some());
        }
    }

    #[test]
    fn sym_and_ext_powers() {
        let t = table("sl2z5");
        let th2 = t.by_label("theta2").unwrap();
        let s0 = th2.sym_power(0).unwrap();
        assert_eq!(s0, ClassFunction::trivial(t.group()));
        let det = th2.det_char().unwrap();
        assert_eq!(det, ClassFunction::trivial(t.group()));
        assert_eq!(t.name_of(&th2.sym_power(5).unwrap()), "theta6");
        // Newton: sum_k (-1)^k Lambda^k Sym^{j-k} = 0 for j >= 1
        let sym = th2.power_recursion(4, false).unwrap();
        let ext = th2.power_recursion(4, true).unwrap();
        for j in 1..=4 {
            let mut acc = ClassFunction::new(t.group().clone(), vec![Cyclotomic::zero(1); 9]).unwrap();
            for k in 0..=j {
                let term = ext[k].tensor(&sym[j - k]).unwrap();
                acc = if k % 2 == 0 { acc.add(&term).unwrap() } else { acc.sub(&term).unwrap() };
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn eigenvalues_of_theta2() {
        let t = table("sl2z5");
        let th2 = t.by_label("theta2").unwrap();
        let (o, ex) = eigenvalue_exponents(th2, 1).unwrap();
        assert_eq!((o, ex), (2, vec![1, 1]));
    }
}
