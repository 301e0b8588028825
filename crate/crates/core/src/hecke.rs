//! Unramified Hecke operators on the Satake side.
//!
//! A [`SymPoly`] is a Laurent polynomial in variable blocks `t[w,1..n]`, one
//! block per place `w`, symmetric under permutations inside each block.
//! Test functions, convolution, base change and traces are all computed
//! on these polynomials; the inverse Satake transform is never needed.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::chars::{eigenvalue_exponents, ClassFunction, Embedding};
use crate::error::{Error, Result};
use crate::exactnum::{Cyclotomic, Rational};
use crate::groups::{CosetSpace, FiniteGroup};
use crate::params::{root, Root};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Block {
    pub place: String,
    pub n: usize,
}

/// Sparse Laurent polynomial over place blocks with exact coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct SymPoly {
    blocks: Vec<Block>,
    terms: BTreeMap<Vec<i32>, Cyclotomic>,
}

impl SymPoly {
    pub fn zero() -> Self {
        SymPoly { blocks: Vec::new(), terms: BTreeMap::new() }
    }

    pub fn constant(c: Cyclotomic) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        SymPoly { blocks: Vec::new(), terms }
    }

    pub fn one() -> Self {
        Self::constant(Cyclotomic::one(1))
    }

    /// `coeff * prod t[b,i]^exps[..]` over the given blocks, in the given order.
    pub fn monomial(blocks: &[Block], exps: &[i32], coeff: Cyclotomic) -> Result<Self> {
        let width: usize = blocks.iter().map(|b| b.n).sum();
        if width != exps.len() {
            return Err(Error::Hecke("exponent vector does not match the blocks".into()));
        }
        let p = SymPoly { blocks: blocks.to_vec(), terms: [(exps.to_vec(), coeff)].into_iter().collect() };
        p.reindexed_sorted()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i32>, Cyclotomic> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn offsets(blocks: &[Block]) -> Vec<usize> {
        let mut o = Vec::with_capacity(blocks.len());
        let mut acc = 0;
        for b in blocks {
            o.push(acc);
            acc += b.n;
        }
        o
    }

    /// Merge duplicate blocks, sort blocks by place and drop unused ones.
    fn reindexed_sorted(&self) -> Result<Self> {
        let mut union: BTreeMap<String, usize> = BTreeMap::new();
        for b in &self.blocks {
            if let Some(&n) = union.get(&b.place) {
                if n != b.n {
                    return Err(Error::Hecke(format!("place {} used with two block sizes", b.place)));
                }
            }
            union.insert(b.place.clone(), b.n);
        }
        let all: Vec<Block> = union.into_iter().map(|(place, n)| Block { place, n }).collect();
        let mut out = self.embed_into(&all)?;
        // drop blocks that no term uses
        let offs = Self::offsets(&all);
        let used: Vec<bool> = all
            .iter()
            .zip(&offs)
            .map(|(b, &o)| out.keys().any(|e| e[o..o + b.n].iter().any(|&x| x != 0)))
            .collect();
        let keep: Vec<Block> = all.iter().zip(&used).filter(|(_, &u)| u).map(|(b, _)| b.clone()).collect();
        if keep.len() != all.len() {
            let mut t2 = BTreeMap::new();
            for (e, c) in out {
                let mut v = Vec::new();
                for ((b, &o), &u) in all.iter().zip(&offs).zip(&used) {
                    if u {
                        v.extend_from_slice(&e[o..o + b.n]);
                    }
                }
                t2.insert(v, c);
            }
            out = t2;
        }
        Ok(SymPoly { blocks: keep, terms: out })
    }

    /// Terms re-indexed over a superset block list (adding exponents of repeated blocks).
    fn embed_into(&self, target: &[Block]) -> Result<BTreeMap<Vec<i32>, Cyclotomic>> {
        let toffs = Self::offsets(target);
        let mut slot = Vec::new();
        for b in &self.blocks {
            let j = target
                .iter()
                .position(|t| t.place == b.place)
                .ok_or_else(|| Error::Hecke(format!("block {} missing", b.place)))?;
            if target[j].n != b.n {
                return Err(Error::Hecke(format!("place {} used with two block sizes", b.place)));
            }
            slot.push(toffs[j]);
        }
        let width: usize = target.iter().map(|b| b.n).sum();
        let mut out: BTreeMap<Vec<i32>, Cyclotomic> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut v = vec![0i32; width];
            let mut k = 0;
            for (b, &s) in self.blocks.iter().zip(&slot) {
                for i in 0..b.n {
                    v[s + i] += e[k];
                    k += 1;
                }
            }
            add_term(&mut out, v, c)?;
        }
        Ok(out)
    }

    fn common_blocks(&self, other: &Self) -> Result<Vec<Block>> {
        let mut m: BTreeMap<String, usize> = BTreeMap::new();
        for b in self.blocks.iter().chain(&other.blocks) {
            if let Some(&n) = m.get(&b.place) {
                if n != b.n {
                    return Err(Error::Hecke(format!("place {} used with two block sizes", b.place)));
                }
            }
            m.insert(b.place.clone(), b.n);
        }
        Ok(m.into_iter().map(|(place, n)| Block { place, n }).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let blocks = self.common_blocks(other)?;
        let mut t = self.embed_into(&blocks)?;
        for (e, c) in other.embed_into(&blocks)? {
            add_term(&mut t, e, &c)?;
        }
        SymPoly { blocks, terms: t }.reindexed_sorted()
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale_int(-1))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let blocks = self.common_blocks(other)?;
        let a = self.embed_into(&blocks)?;
        let b = other.embed_into(&blocks)?;
        let mut t = BTreeMap::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                add_term(&mut t, e, &ca.try_mul(cb)?)?;
            }
        }
        SymPoly { blocks, terms: t }.reindexed_sorted()
    }

    pub fn scale(&self, c: &Cyclotomic) -> Result<Self> {
        let mut t = BTreeMap::new();
        for (e, v) in &self.terms {
            add_term(&mut t, e.clone(), &v.try_mul(c)?)?;
        }
        SymPoly { blocks: self.blocks.clone(), terms: t }.reindexed_sorted()
    }

    pub fn scale_int(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        SymPoly { blocks: self.blocks.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), c.scale_int(k))).collect() }
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Sum over all permutations inside every block.
    pub fn symmetrize(&self) -> Result<Self> {
        let offs = Self::offsets(&self.blocks);
        let mut cur = self.terms.clone();
        for (b, &o) in self.blocks.iter().zip(&offs) {
            let perms = permutations(b.n);
            let mut next = BTreeMap::new();
            for (e, c) in &cur {
                for p in &perms {
                    let mut v = e.clone();
                    for i in 0..b.n {
                        v[o + i] = e[o + p[i]];
                    }
                    add_term(&mut next, v, c)?;
                }
            }
            cur = next;
        }
        SymPoly { blocks: self.blocks.clone(), terms: cur }.reindexed_sorted()
    }

    /// Invariance under adjacent transpositions inside each block.
    pub fn is_symmetric(&self) -> bool {
        let offs = Self::offsets(&self.blocks);
        for (b, &o) in self.blocks.iter().zip(&offs) {
            for i in 0..b.n.saturating_sub(1) {
                for (e, c) in &self.terms {
                    let mut v = e.clone();
                    v.swap(o + i, o + i + 1);
                    if self.terms.get(&v) != Some(c) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Coefficients keyed by block-sorted exponent vectors (one entry per symmetric orbit).
    pub fn orbit_form(&self) -> BTreeMap<Vec<i32>, Cyclotomic> {
        let offs = Self::offsets(&self.blocks);
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut v = e.clone();
            for (b, &o) in self.blocks.iter().zip(&offs) {
                v[o..o + b.n].sort_unstable_by(|x, y| y.cmp(x));
            }
            out.entry(v).or_insert_with(|| c.clone());
        }
        out
    }

    /// Replace each block `w` by `t[w,i] -> t[v,i]^f` where `map(w) = (v, f)`.
    pub fn substitute<F>(&self, map: F) -> Result<Self>
    where
        F: Fn(&str) -> Option<(String, i32)>,
    {
        let mut targets = Vec::new();
        let mut new_blocks: Vec<Block> = Vec::new();
        for b in &self.blocks {
            let (v, f) = map(&b.place).ok_or_else(|| Error::Hecke(format!("no splitting data for place {}", b.place)))?;
            targets.push((v.clone(), f));
            if !new_blocks.iter().any(|x| x.place == v) {
                new_blocks.push(Block { place: v, n: b.n });
            }
        }
        new_blocks.sort();
        let noffs = Self::offsets(&new_blocks);
        let width: usize = new_blocks.iter().map(|b| b.n).sum();
        let mut t = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut v = vec![0i32; width];
            let mut k = 0;
            for (b, (tp, f)) in self.blocks.iter().zip(&targets) {
                let j = new_blocks.iter().position(|x| &x.place == tp).unwrap();
                if new_blocks[j].n != b.n {
                    return Err(Error::Hecke(format!("place {tp} used with two block sizes")));
                }
                for i in 0..b.n {
                    v[noffs[j] + i] += f * e[k];
                    k += 1;
                }
            }
            add_term(&mut t, v, c)?;
        }
        SymPoly { blocks: new_blocks, terms: t }.reindexed_sorted()
    }

    /// Exact value at a Satake point.
    pub fn eval_at(&self, x: &SatakePoint) -> Result<Cyclotomic> {
        let mut roots = Vec::new();
        let mut vals = Vec::new();
        for b in &self.blocks {
            let e = x.entries.get(&b.place).ok_or_else(|| Error::Hecke(format!("no Satake data at {}", b.place)))?;
            if e.values.len() != b.n {
                return Err(Error::Hecke(format!("Satake data at {} has the wrong size", b.place)));
            }
            roots.push(e.roots.clone());
            vals.push(&e.values);
        }
        if roots.iter().all(|r| r.is_some()) {
            // roots of unity: add exponents, then group coefficients by the resulting root
            let flat: Vec<Root> = roots.into_iter().flat_map(|r| r.unwrap()).collect();
            let mut by_root: BTreeMap<Root, Cyclotomic> = BTreeMap::new();
            for (e, c) in &self.terms {
                let mut q = Rational::zero();
                for (k, &ex) in e.iter().enumerate() {
                    if ex != 0 {
                        q += &flat[k] * Rational::from_integer(BigInt::from(ex));
                    }
                }
                let q = &q - q.floor();
                match by_root.get_mut(&q) {
                    Some(acc) => *acc = acc.try_add(c)?,
                    None => {
                        by_root.insert(q, c.clone());
                    }
                }
            }
            let mut total = Cyclotomic::zero(1);
            for (q, c) in by_root {
                let den = q.denom().to_u32().ok_or_else(|| Error::Hecke("root of unity order too large".into()))?;
                let num = q.numer().to_i64().unwrap();
                total = total.try_add(&c.try_mul(&Cyclotomic::root_of_unity(den, num))?)?;
            }
            return Ok(total);
        }
        let flat: Vec<&Cyclotomic> = vals.iter().flat_map(|v| v.iter()).collect();
        let mut total = Cyclotomic::zero(1);
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (k, &ex) in e.iter().enumerate() {
                if ex != 0 {
                    m = m.try_mul(&flat[k].pow(ex as i64)?)?;
                }
            }
            total = total.try_add(&m)?;
        }
        Ok(total)
    }

    /// Floating-point value at a Satake point.
    pub fn eval_complex(&self, x: &SatakePoint) -> Result<Complex64> {
        let mut flat = Vec::new();
        for b in &self.blocks {
            let e = x.entries.get(&b.place).ok_or_else(|| Error::Hecke(format!("no Satake data at {}", b.place)))?;
            flat.extend(e.values.iter().map(|v| v.to_complex()));
        }
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| e.iter().zip(&flat).fold(c.to_complex(), |acc, (&k, z)| acc * z.powi(k)))
            .sum())
    }

    /// One line per term, e.g. `2*t[w,1]^1*t[w',2]^-1`.
    pub fn render(&self) -> Vec<String> {
        let names: Vec<String> = self
            .blocks
            .iter()
            .flat_map(|b| (1..=b.n).map(move |i| format!("t[{},{}]", b.place, i)))
            .collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut s = c.render_exact();
                for (k, &x) in e.iter().enumerate() {
                    if x != 0 {
                        s.push_str(&format!("*{}^{}", names[k], x));
                    }
                }
                s
            })
            .collect()
    }
}

fn add_term(t: &mut BTreeMap<Vec<i32>, Cyclotomic>, e: Vec<i32>, c: &Cyclotomic) -> Result<()> {
    match t.get_mut(&e) {
        Some(acc) => {
            *acc = acc.try_add(c)?;
            if acc.is_zero() {
                t.remove(&e);
            }
        }
        None => {
            if !c.is_zero() {
                t.insert(e, c.clone());
            }
        }
    }
    Ok(())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// `h_j` of the `n^2` ratios `t[w,i] / t[w_tau,k]`: the Satake image of
/// `tr Sym^j(A (x) (A^tau)^{-1})`.
pub fn sym_test_poly(n: usize, j: usize, w: &str, w_tau: &str) -> Result<SymPoly> {
    if j == 0 {
        return Ok(SymPoly::one());
    }
    let same = w == w_tau;
    let blocks: Vec<Block> = if same {
        vec![Block { place: w.into(), n }]
    } else {
        vec![Block { place: w.into(), n }, Block { place: w_tau.into(), n }]
    };
    let width = blocks.len() * n;
    let tau_off = if same { 0 } else { n };
    let ratios: Vec<Vec<i32>> = (0..n)
        .flat_map(|i| {
            (0..n).map(move |k| {
                let mut v = vec![0i32; width];
                v[i] += 1;
                v[tau_off + k] -= 1;
                v
            })
        })
        .collect();
    let mut counts: BTreeMap<Vec<i32>, i64> = BTreeMap::new();
    let mut idx = vec![0usize; j];
    loop {
        let mut e = vec![0i32; width];
        for &r in &idx {
            for (x, y) in e.iter_mut().zip(&ratios[r]) {
                *x += y;
            }
        }
        *counts.entry(e).or_insert(0) += 1;
        // next non-decreasing index sequence
        let mut p = j;
        while p > 0 && idx[p - 1] == ratios.len() - 1 {
            p -= 1;
        }
        if p == 0 {
            break;
        }
        let v = idx[p - 1] + 1;
        for x in &mut idx[p - 1..] {
            *x = v;
        }
    }
    let terms = counts.into_iter().map(|(e, c)| (e, Cyclotomic::from_int(1, c))).collect();
    SymPoly { blocks, terms }.reindexed_sorted()
}

/// An integral ideal of `O_E` away from the bad set, as place exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ModulusIdeal {
    pub parts: BTreeMap<String, u32>,
}

impl ModulusIdeal {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn prime_power(w: &str, j: u32) -> Self {
        let mut parts = BTreeMap::new();
        if j > 0 {
            parts.insert(w.to_string(), j);
        }
        ModulusIdeal { parts }
    }

    pub fn times(&self, other: &Self) -> Self {
        let mut parts = self.parts.clone();
        for (w, j) in &other.parts {
            *parts.entry(w.clone()).or_insert(0) += j;
        }
        ModulusIdeal { parts }
    }

    /// `prod q_w^j`, with `q_w` looked up by place id.
    pub fn norm<F: Fn(&str) -> Option<u64>>(&self, q: F) -> Result<u64> {
        let mut n: u64 = 1;
        for (w, &j) in &self.parts {
            let qw = q(w).ok_or_else(|| Error::Hecke(format!("unknown place {w}")))?;
            n = qw
                .checked_pow(j)
                .and_then(|x| n.checked_mul(x))
                .ok_or_else(|| Error::Hecke("ideal norm overflows".into()))?;
        }
        Ok(n)
    }
}

/// `f(m)`: product over the prime-power parts of `m` of the `Sym^j` polynomials.
pub fn test_function<F: Fn(&str) -> String>(m: &ModulusIdeal, n: usize, tau: F) -> Result<SymPoly> {
    let mut acc = SymPoly::one();
    for (w, &j) in &m.parts {
        acc = acc.mul(&sym_test_poly(n, j as usize, w, &tau(w))?)?;
    }
    Ok(acc)
}

/// Eigenvalues at the places of a level (possibly given only as roots of unity).
#[derive(Clone, Debug, Default)]
pub struct SatakePoint {
    pub entries: BTreeMap<String, SatakeValues>,
}

#[derive(Clone, Debug)]
pub struct SatakeValues {
    pub values: Vec<Cyclotomic>,
    pub roots: Option<Vec<Root>>,
}

impl SatakePoint {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert_roots(&mut self, place: &str, roots: Vec<Root>) {
        let values = roots
            .iter()
            .map(|q| Cyclotomic::root_of_unity(q.denom().to_u32().unwrap(), q.numer().to_i64().unwrap()))
            .collect();
        self.entries.insert(place.into(), SatakeValues { values, roots: Some(roots) });
    }

    pub fn insert_values(&mut self, place: &str, values: Vec<Cyclotomic>) -> Result<()> {
        if values.iter().any(|v| v.is_zero()) {
            return Err(Error::Hecke(format!("zero Satake value at {place}")));
        }
        self.entries.insert(place.into(), SatakeValues { values, roots: None });
        Ok(())
    }

    pub fn get(&self, place: &str) -> Option<&SatakeValues> {
        self.entries.get(place)
    }
}

/// Eigenvalues of the representation with character `chi` at the element `x`.
pub fn satake_from_galois(chi: &ClassFunction, x: usize) -> Result<Vec<Root>> {
    let g = chi.group();
    let (o, ex) = eigenvalue_exponents(chi, g.class_of(x)).map_err(|e| Error::Hecke(e.to_string()))?;
    Ok(ex.iter().map(|&t| root(t as i64, o as i64)).collect())
}

/// A place of some level above a base prime.
#[derive(Clone, Debug, Serialize)]
pub struct PlaceInfo {
    pub id: String,
    pub level: String,
    /// Inertia degree over the base.
    pub f: usize,
    /// Representative `x` of the orbit of cosets `J x sigma^k`.
    pub rep: usize,
    /// Frobenius `x sigma^f x^{-1}` as an element of the level group.
    pub frob: usize,
    /// The place of each containing level lying below this one.
    pub below: BTreeMap<String, String>,
}

#[derive(Clone, Debug)]
pub struct LevelPlaces {
    pub level: String,
    pub degree: usize,
    pub places: Vec<PlaceInfo>,
    embed: Embedding,
    cosets: CosetSpace,
    place_of_coset: Vec<usize>,
}

/// Splitting of one base prime through the levels of a tower.
#[derive(Clone, Debug)]
pub struct PlaceStructure {
    pub q: u64,
    pub sigma: usize,
    ambient: Arc<FiniteGroup>,
    pub levels: Vec<LevelPlaces>,
}

impl PlaceStructure {
    /// Places above a base prime of size `q` with Frobenius `sigma` (ambient element).
    pub fn new(ambient: &Arc<FiniteGroup>, levels: &[(&str, &Embedding)], sigma: usize, q: u64) -> Result<Self> {
        let mut out: Vec<LevelPlaces> = Vec::new();
        for &(name, emb) in levels {
            if !Arc::ptr_eq(&emb.parent, ambient) {
                return Err(Error::Hecke(format!("level {name} is not a subgroup of the ambient group")));
            }
            let img = emb.image();
            let cosets = ambient.right_cosets(&img);
            let mut place_of_coset = vec![usize::MAX; cosets.reps.len()];
            let mut places = Vec::new();
            for (k, o) in ambient.coset_orbits(&img, &cosets, sigma).into_iter().enumerate() {
                let mut x = o.rep;
                for _ in 0..o.size {
                    place_of_coset[cosets.coset_of[x] as usize] = k;
                    x = ambient.mul(x, sigma);
                }
                let fr = ambient.mul(ambient.mul(o.rep, ambient.pow(sigma, o.size as i64)), ambient.inv(o.rep));
                places.push(PlaceInfo {
                    id: format!("{name}@{q}#{k}"),
                    level: name.into(),
                    f: o.size,
                    rep: o.rep,
                    frob: emb.preimage(fr).ok_or_else(|| Error::Hecke("Frobenius outside the level".into()))?,
                    below: BTreeMap::new(),
                });
            }
            out.push(LevelPlaces {
                level: name.into(),
                degree: ambient.order() / emb.sub.order(),
                places,
                embed: emb.clone(),
                cosets,
                place_of_coset,
            });
        }
        // containment: place of level B below the place of level A with rep x is the B-orbit of B x
        for a in 0..out.len() {
            for b in 0..out.len() {
                if a == b || !out[a].embed.image().is_subset_of(&out[b].embed.image()) {
                    continue;
                }
                for i in 0..out[a].places.len() {
                    let x = out[a].places[i].rep;
                    let lb = &out[b];
                    let id = lb.places[lb.place_of_coset[lb.cosets.coset_of[x] as usize]].id.clone();
                    let name = lb.level.clone();
                    out[a].places[i].below.insert(name, id);
                }
            }
        }
        Ok(PlaceStructure { q, sigma, ambient: ambient.clone(), levels: out })
    }

    pub fn level(&self, name: &str) -> Option<&LevelPlaces> {
        self.levels.iter().find(|l| l.level == name)
    }

    pub fn place(&self, id: &str) -> Option<&PlaceInfo> {
        self.levels.iter().flat_map(|l| l.places.iter()).find(|p| p.id == id)
    }

    pub fn q_w(&self, id: &str) -> Option<u64> {
        self.place(id).and_then(|p| self.q.checked_pow(p.f as u32))
    }

    /// The place of `level` containing the coset of the ambient element `x`.
    pub fn place_containing(&self, level: &str, x: usize) -> Option<&PlaceInfo> {
        let l = self.level(level)?;
        Some(&l.places[l.place_of_coset[l.cosets.coset_of[x] as usize]])
    }

    /// `sum f = degree` at every level.
    pub fn degrees_consistent(&self) -> bool {
        self.levels.iter().all(|l| l.places.iter().map(|p| p.f).sum::<usize>() == l.degree)
    }

    pub fn ambient(&self) -> &Arc<FiniteGroup> {
        &self.ambient
    }
}

/// Base change of Hecke polynomials from one level to a containing level:
/// `t[w,i] -> t[v,i]^{f(w/v)}`.
pub fn base_change_subst(p: &SymPoly, splits: &[PlaceStructure], target_level: &str) -> Result<SymPoly> {
    p.substitute(|w| {
        let s = splits.iter().find(|s| s.place(w).is_some())?;
        let pw = s.place(w)?;
        let v = pw.below.get(target_level)?;
        let pv = s.place(v)?;
        Some((v.clone(), (pw.f / pv.f) as i32))
    })
}

/// One Rankin-Selberg place: `w`, its translate `w^tau`, and `q_w`.
#[derive(Clone, Debug, Serialize)]
pub struct RankinSelbergPlace {
    pub w: String,
    pub w_tau: String,
    pub q: u64,
}

/// `lambda(m) = sum_{N m = m} tr f(m)` for `m <= bound`, from Hecke polynomials
/// evaluated at the Satake point. Index 0 is unused.
///
/// `N` is the absolute norm from `E`, so an ideal of `O_E` is counted at
/// `N_{E/Q}`. Counting it at `N_{F/Q}` instead would not match the Euler
/// product of the Rankin-Selberg pairing.
pub fn dirichlet_via_hecke(places: &[RankinSelbergPlace], n: usize, point: &SatakePoint, bound: u64) -> Result<Vec<Cyclotomic>> {
    let mut ps: Vec<&RankinSelbergPlace> = places.iter().filter(|p| p.q <= bound).collect();
    ps.sort_by(|a, b| a.q.cmp(&b.q).then_with(|| a.w.cmp(&b.w)));
    // local traces tr f(w^j) for q_w^j <= bound
    let mut local: Vec<Vec<Cyclotomic>> = Vec::with_capacity(ps.len());
    for p in &ps {
        let mut v = vec![Cyclotomic::one(1)];
        let mut qj = p.q;
        let mut j = 1;
        while qj <= bound {
            v.push(sym_test_poly(n, j, &p.w, &p.w_tau)?.eval_at(point)?);
            j += 1;
            qj = match qj.checked_mul(p.q) {
                Some(x) => x,
                None => break,
            };
        }
        local.push(v);
    }
    let mut lambda = vec![Cyclotomic::zero(1); bound as usize + 1];
    // depth-first over ideals w_1^{j_1} ... with increasing place index
    fn dfs(i: usize, norm: u64, val: Cyclotomic, ps: &[&RankinSelbergPlace], local: &[Vec<Cyclotomic>], bound: u64, out: &mut [Cyclotomic]) -> Result<()> {
        out[norm as usize] = out[norm as usize].try_add(&val)?;
        for k in i..ps.len() {
            if norm * ps[k].q > bound {
                break;
            }
            let mut nn = norm;
            for t in local[k].iter().skip(1) {
                nn *= ps[k].q;
                if nn > bound {
                    break;
                }
                dfs(k + 1, nn, val.try_mul(t)?, ps, local, bound, out)?;
            }
        }
        Ok(())
    }
    dfs(0, 1, Cyclotomic::one(1), &ps, &local, bound, &mut lambda)?;
    Ok(lambda)
}

/// Local Euler factor data: `q_w` and the power sums `p_k = tr(M_w^k)`, `k = 1..`.
#[derive(Clone, Debug)]
pub struct EulerFactor {
    pub q: u64,
    pub power_sums: Vec<Cyclotomic>,
}

/// `p_k = chi1(x1^k) * conj(chi2(x2^k))`: power sums of `A1 (x) A2^{-1}` for finite-order `A2`.
pub fn rankin_selberg_power_sums(chi1: &ClassFunction, x1: usize, chi2: &ClassFunction, x2: usize, kmax: usize) -> Vec<Cyclotomic> {
    let g1 = chi1.group();
    let g2 = chi2.group();
    (1..=kmax)
        .map(|k| {
            let a = chi1.at_element(g1.pow(x1, k as i64));
            let b = chi2.at_element(g2.pow(x2, k as i64)).conj();
            a * &b
        })
        .collect()
}

/// Coefficients of `prod_w det(1 - M_w q_w^{-s})^{-1}` for `m <= bound`, with each local
/// series obtained from power sums by Newton's identity `j h_j = sum_k p_k h_{j-k}`.
pub fn dirichlet_via_euler(factors: &[EulerFactor], bound: u64) -> Result<Vec<Cyclotomic>> {
    let mut lambda = vec![Cyclotomic::zero(1); bound as usize + 1];
    lambda[1] = Cyclotomic::one(1);
    for f in factors {
        if f.q > bound || f.q < 2 {
            continue;
        }
        let mut jmax = 0;
        let mut qj = 1u64;
        while let Some(x) = qj.checked_mul(f.q).filter(|&x| x <= bound) {
            qj = x;
            jmax += 1;
        }
        if f.power_sums.len() < jmax {
            return Err(Error::Hecke(format!("need {jmax} power sums at q = {}", f.q)));
        }
        let mut h = vec![Cyclotomic::one(1)];
        for j in 1..=jmax {
            let mut acc = Cyclotomic::zero(1);
            for k in 1..=j {
                acc = acc.try_add(&f.power_sums[k - 1].try_mul(&h[j - k])?)?;
            }
            h.push(acc.scale(&Rational::new(BigInt::from(1), BigInt::from(j))));
        }
        // multiply the Dirichlet series by sum_j h_j q^{-js}, from the top down
        for m in (1..=bound as usize).rev() {
            let mut acc = lambda[m].clone();
            let mut d = m;
            for hj in h.iter().skip(1) {
                if d % f.q as usize != 0 {
                    break;
                }
                d /= f.q as usize;
                if !lambda[d].is_zero() {
                    acc = acc.try_add(&hj.try_mul(&lambda[d])?)?;
                }
            }
            lambda[m] = acc;
        }
    }
    Ok(lambda)
}

/// `m \t exact \t numeric` lines for the nonzero coefficients.
pub fn render_coeffs(lambda: &[Cyclotomic]) -> Vec<String> {
    lambda
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| format!("{m}\t{}\t{}", c.render_exact(), crate::exactnum::render_complex(c.to_complex())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::{SubgroupChoice, Tower};

    #[test]
    fn small_sym_polys() {
        let p = sym_test_poly(1, 3, "w", "w'").unwrap();
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.render(), vec!["1*t[w,1]^3*t[w',1]^-3"]);
        assert_eq!(sym_test_poly(2, 1, "w", "w'").unwrap().num_terms(), 4);
        let h2 = sym_test_poly(2, 2, "w", "w'").unwrap();
        let total: i64 = h2.terms().values().map(|c| c.as_i64().unwrap()).sum();
        assert_eq!(total, 10);
        assert!(h2.is_symmetric());
        assert_eq!(sym_test_poly(3, 0, "w", "w").unwrap(), SymPoly::one());
    }

    #[test]
    fn multiplicativity_and_prime_powers() {
        let tau = |w: &str| format!("{w}'");
        let m = ModulusIdeal::prime_power("a", 1).times(&ModulusIdeal::prime_power("b", 1));
        let lhs = test_function(&m, 2, tau).unwrap();
        let rhs = sym_test_poly(2, 1, "a", "a'").unwrap().mul(&sym_test_poly(2, 1, "b", "b'").unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let sq = test_function(&ModulusIdeal::prime_power("a", 2), 2, tau).unwrap();
        assert_ne!(sq, sym_test_poly(2, 1, "a", "a'").unwrap().pow(2).unwrap());
        assert_eq!(test_function(&ModulusIdeal::unit(), 2, tau).unwrap(), SymPoly::one());
        assert_eq!(m.norm(|w| Some(if w == "a" { 3 } else { 7 })).unwrap(), 21);
    }

    #[test]
    fn substitution_example() {
        let b = [Block { place: "w".into(), n: 1 }];
        let p = SymPoly::monomial(&b, &[1], Cyclotomic::one(1)).unwrap().add(&SymPoly::monomial(&b, &[-1], Cyclotomic::one(1)).unwrap()).unwrap();
        let q = p.substitute(|_| Some(("v".into(), 2))).unwrap();
        let bv = [Block { place: "v".into(), n: 1 }];
        let want = SymPoly::monomial(&bv, &[2], Cyclotomic::one(1)).unwrap().add(&SymPoly::monomial(&bv, &[-2], Cyclotomic::one(1)).unwrap()).unwrap();
        assert_eq!(q, want);
        assert_eq!(p.substitute(|w| Some((w.to_string(), 1))).unwrap(), p);
    }

    #[test]
    fn galois_satake_points() {
        let t = Tower::icosahedral(SubgroupChoice::Tetrahedral, None).unwrap();
        let g = &t.base;
        let th2 = t.f.table.by_label("theta2").unwrap();
        let c5 = g.class_rep(g.class_by_label("C5").unwrap());
        let mut x = SatakePoint::new();
        x.insert_roots("v", satake_from_galois(th2, c5).unwrap());
        let p = SymPoly::monomial(&[Block { place: "v".into(), n: 2 }], &[1, 0], Cyclotomic::one(1)).unwrap().symmetrize().unwrap();
        assert_eq!(p.eval_at(&x).unwrap(), crate::fixtures::parse_value("u-1").unwrap());
        let c2 = g.class_rep(g.class_by_label("C2").unwrap());
        assert_eq!(satake_from_galois(th2, c2).unwrap(), vec![root(1, 2), root(1, 2)]);
        let psi3 = t.f_prime.table.by_label("psi3").unwrap();
        let h = t.h.clone();
        let c4 = h.class_rep(h.class_by_label("C4").unwrap());
        let r = satake_from_galois(psi3, c4).unwrap();
        let mut y = SatakePoint::new();
        y.insert_roots("x", r);
        let tr = SymPoly::monomial(&[Block { place: "x".into(), n: 3 }], &[1, 0, 0], Cyclotomic::one(1)).unwrap().symmetrize().unwrap();
        // symmetrize of t1 over S3 gives 2*(t1+t2+t3)
        assert_eq!(tr.eval_at(&y).unwrap().as_i64(), Some(-2));
        let triv = satake_from_galois(&ClassFunction::trivial(g), c5).unwrap();
        assert!(triv.iter().all(|q| q.is_zero()));
    }

    #[test]
    fn place_structure_consistency() {
        let t = Tower::icosahedral(SubgroupChoice::Tetrahedral, None).unwrap();
        let levels = [("F", &t.f.embed), ("F'", &t.f_prime.embed), ("E", &t.e.embed)];
        for c in 0..t.base.num_classes() {
            let s = PlaceStructure::new(&t.ambient, &levels, t.base.class_rep(c), 7).unwrap();
            assert!(s.degrees_consistent());
            for w in &s.level("E").unwrap().places {
                let v = s.place(&w.below["F'"]).unwrap();
                assert_eq!(w.f % v.f, 0);
            }
        }
    }

    #[test]
    fn dirichlet_trivial_geometric() {
        let mut x = SatakePoint::new();
        x.insert_roots("w", vec![root(0, 1)]);
        let pl = [RankinSelbergPlace { w: "w".into(), w_tau: "w".into(), q: 3 }];
        let l = dirichlet_via_hecke(&pl, 1, &x, 100).unwrap();
        for m in 1..=100u64 {
            let want = if m == 1 || [3, 9, 27, 81].contains(&m) { 1 } else { 0 };
            assert_eq!(l[m as usize].as_i64(), Some(want), "m={m}");
        }
        let e = dirichlet_via_euler(&[EulerFactor { q: 3, power_sums: vec![Cyclotomic::one(1); 4] }], 100).unwrap();
        assert_eq!(e, l);
    }
}
