//! Finite groups given by a dense multiplication table.
//!
//! Groups are built by closing a generator list under multiplication in one
//! of three arithmetics (2x2 matrices mod m, permutations, cyclic), or as
//! direct products and subgroups of groups already built.  Element `0` is
//! always the identity.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Default bound on group orders.
pub const DEFAULT_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Arithmetic {
    /// 2x2 matrices over Z/m, encoded row-major `[a, b, c, d]`.
    Mat2 { modulus: u32 },
    /// Permutations of `0..degree`, encoded as image lists; `(p*q)(i) = p(q(i))`.
    Perm { degree: usize },
    /// Additive cyclic group Z/n, encoded as `[k]`.
    Cyclic { order: u32 },
}

impl Arithmetic {
    fn identity(&self) -> Vec<u32> {
        match self {
            Arithmetic::Mat2 { .. } => vec![1, 0, 0, 1],
            Arithmetic::Perm { degree } => (0..*degree as u32).collect(),
            Arithmetic::Cyclic { .. } => vec![0],
        }
    }

    fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        match self {
            Arithmetic::Mat2 { modulus } => {
                let m = *modulus as u64;
                let f = |x: u32, y: u32, z: u32, w: u32| ((x as u64 * y as u64 + z as u64 * w as u64) % m) as u32;
                vec![
                    f(a[0], b[0], a[1], b[2]),
                    f(a[0], b[1], a[1], b[3]),
                    f(a[2], b[0], a[3], b[2]),
                    f(a[2], b[1], a[3], b[3]),
                ]
            }
            Arithmetic::Perm { .. } => b.iter().map(|&i| a[i as usize]).collect(),
            Arithmetic::Cyclic { order } => vec![(a[0] + b[0]) % order],
        }
    }

    fn validate(&self, g: &[u32]) -> Result<()> {
        match self {
            Arithmetic::Mat2 { modulus } => {
                let m = *modulus as i64;
                if g.len() != 4 || g.iter().any(|&x| x as i64 >= m) {
                    return Err(Error::Group(format!("bad 2x2 matrix encoding {g:?} mod {m}")));
                }
                let det = (g[0] as i64 * g[3] as i64 - g[1] as i64 * g[2] as i64).rem_euclid(m);
                if det.gcd(&m) != 1 {
                    return Err(Error::Group(format!("matrix {g:?} is not invertible mod {m}")));
                }
            }
            Arithmetic::Perm { degree } => {
                let mut seen = vec![false; *degree];
                if g.len() != *degree {
                    return Err(Error::Group(format!("permutation {g:?} has wrong degree")));
                }
                for &i in g {
                    if i as usize >= *degree || seen[i as usize] {
                        return Err(Error::Group(format!("{g:?} is not a permutation")));
                    }
                    seen[i as usize] = true;
                }
            }
            Arithmetic::Cyclic { order } => {
                if g.len() != 1 || g[0] >= *order {
                    return Err(Error::Group(format!("bad element {g:?} of Z/{order}")));
                }
            }
        }
        Ok(())
    }
}

/// Generators plus the arithmetic they live in.
#[derive(Clone, Debug, Serialize)]
pub struct GroupSpec {
    pub name: String,
    pub arithmetic: Arithmetic,
    pub generators: Vec<Vec<u32>>,
}

impl GroupSpec {
    pub fn sl2(modulus: u32) -> Self {
        GroupSpec {
            name: format!("SL2(Z/{modulus})"),
            arithmetic: Arithmetic::Mat2 { modulus },
            generators: vec![vec![0, modulus - 1, 1, 0], vec![1, 1, 0, 1]],
        }
    }

    /// Q as the subgroup of SL2(Z/5) generated by `i = [[0,-1],[1,0]]` and `j = diag(2,3)`.
    pub fn quaternion() -> Self {
        GroupSpec {
            name: "Q".into(),
            arithmetic: Arithmetic::Mat2 { modulus: 5 },
            generators: vec![vec![0, 4, 1, 0], vec![2, 0, 0, 3]],
        }
    }

    pub fn cyclic(n: u32) -> Self {
        GroupSpec {
            name: format!("C{n}"),
            arithmetic: Arithmetic::Cyclic { order: n.max(1) },
            generators: if n > 1 { vec![vec![1]] } else { vec![] },
        }
    }
}

/// A set of elements of some parent group, closed under the group law.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupHandle {
    elems: Vec<u32>,
    mask: Vec<u64>,
}

impl SubgroupHandle {
    fn from_mask(mask: Vec<u64>) -> Self {
        let mut elems = Vec::new();
        for (w, bits) in mask.iter().enumerate() {
            let mut b = *bits;
            while b != 0 {
                let t = b.trailing_zeros();
                elems.push((w * 64) as u32 + t);
                b &= b - 1;
            }
        }
        SubgroupHandle { elems, mask }
    }

    fn from_elems(n: usize, elems: &[u32]) -> Self {
        let mut mask = vec![0u64; n.div_ceil(64)];
        for &e in elems {
            mask[e as usize / 64] |= 1 << (e % 64);
        }
        Self::from_mask(mask)
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[u32] {
        &self.elems
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask[x / 64] >> (x % 64) & 1 == 1
    }

    pub fn is_subset_of(&self, other: &SubgroupHandle) -> bool {
        self.mask.iter().zip(&other.mask).all(|(a, b)| a & !b == 0)
    }
}

/// Conjugacy classes with display labels.
#[derive(Clone, Debug, Serialize)]
pub struct ConjugacyClassTable {
    pub classes: Vec<Vec<u32>>,
    pub labels: Vec<String>,
}

/// Finite group with a dense multiplication table.
#[derive(Debug)]
pub struct FiniteGroup {
    name: String,
    encodings: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, u32>,
    table: Vec<u32>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
    classes: ConjugacyClassTable,
    class_of: Vec<u32>,
    generators: Vec<u32>,
    schur_multiplier: Option<Vec<u64>>,
    factors: Option<(Arc<FiniteGroup>, Arc<FiniteGroup>)>,
}

/// One `<sigma>`-orbit on the right cosets `J\G`: its size and a coset representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub size: usize,
    pub rep: usize,
}

/// Right cosets of a subgroup, with a representative per coset.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    pub coset_of: Vec<u32>,
    pub reps: Vec<u32>,
}

impl FiniteGroup {
    /// Close the generators of `spec` under multiplication.
    pub fn build(spec: &GroupSpec, cap: usize) -> Result<FiniteGroup> {
        for g in &spec.generators {
            spec.arithmetic.validate(g)?;
        }
        let id = spec.arithmetic.identity();
        let gens: Vec<Vec<u32>> = spec.generators.iter().filter(|g| **g != id).cloned().collect();
        let mut encodings = vec![id.clone()];
        let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
        index.insert(id, 0);
        // parent[x] = (p, k) with x = p * gen_k
        let mut parent: Vec<(u32, u32)> = vec![(0, 0)];
        let mut right: Vec<Vec<u32>> = Vec::new();
        let mut i = 0;
        while i < encodings.len() {
            let mut row = Vec::with_capacity(gens.len());
            for (k, g) in gens.iter().enumerate() {
                let p = spec.arithmetic.mul(&encodings[i], g);
                let idx = match index.get(&p) {
                    Some(&j) => j,
                    None => {
                        let j = encodings.len() as u32;
                        if encodings.len() >= cap {
                            return Err(Error::CapExceeded { cap });
                        }
                        index.insert(p.clone(), j);
                        encodings.push(p);
                        parent.push((i as u32, k as u32));
                        j
                    }
                };
                row.push(idx);
            }
            right.push(row);
            i += 1;
        }
        let n = encodings.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            table[a * n] = a as u32;
        }
        for b in 1..n {
            let (p, k) = parent[b];
            for a in 0..n {
                let ap = table[a * n + p as usize];
                table[a * n + b] = right[ap as usize][k as usize];
            }
        }
        let generators = gens.iter().map(|g| index[g]).collect();
        Ok(Self::assemble(spec.name.clone(), encodings, index, table, generators))
    }

    fn assemble(
        name: String,
        encodings: Vec<Vec<u32>>,
        index: HashMap<Vec<u32>, u32>,
        table: Vec<u32>,
        generators: Vec<u32>,
    ) -> FiniteGroup {
        let n = encodings.len();
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inverse[a] = b as u32;
                    break;
                }
            }
        }
        let mut orders = vec![1u32; n];
        for a in 0..n {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = table[x * n + a] as usize;
                k += 1;
            }
            orders[a] = k;
        }
        let mut g = FiniteGroup {
            name,
            encodings,
            index,
            table,
            inverse,
            orders,
            classes: ConjugacyClassTable { classes: vec![], labels: vec![] },
            class_of: vec![],
            generators,
            schur_multiplier: None,
            factors: None,
        };
        g.compute_classes();
        g
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        let mut class_of = vec![u32::MAX; n];
        let mut classes: Vec<Vec<u32>> = Vec::new();
        for x in 0..n {
            if class_of[x] != u32::MAX {
                continue;
            }
            let mut members: Vec<u32> = Vec::new();
            for g in 0..n {
                let y = self.conj(g, x);
                if class_of[y] == u32::MAX {
                    class_of[y] = classes.len() as u32;
                    members.push(y as u32);
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        // canonical order: element order, then smallest member
        let mut order: Vec<usize> = (0..classes.len()).collect();
        order.sort_by_key(|&c| (self.orders[classes[c][0] as usize], classes[c][0]));
        let classes: Vec<Vec<u32>> = order.iter().map(|&c| classes[c].clone()).collect();
        let mut labels = Vec::with_capacity(classes.len());
        for (i, c) in classes.iter().enumerate() {
            let o = self.orders[c[0] as usize];
            let same: Vec<usize> =
                (0..classes.len()).filter(|&j| self.orders[classes[j][0] as usize] == o).collect();
            if same.len() == 1 {
                labels.push(format!("C{o}"));
            } else {
                let pos = same.iter().position(|&j| j == i).unwrap();
                labels.push(format!("C{o}{}", letter_suffix(pos)));
            }
        }
        let mut class_of = vec![0u32; n];
        for (ci, c) in classes.iter().enumerate() {
            for &x in c {
                class_of[x as usize] = ci as u32;
            }
        }
        self.classes = ConjugacyClassTable { classes, labels };
        self.class_of = class_of;
    }

    /// Reorder the conjugacy classes (`perm[i]` = old index of new class `i`) and relabel them.
    pub fn set_class_order(&mut self, perm: &[usize], labels: Vec<String>) -> Result<()> {
        let k = self.classes.classes.len();
        let mut seen = vec![false; k];
        if perm.len() != k || labels.len() != k {
            return Err(Error::Group("class permutation has the wrong length".into()));
        }
        for &p in perm {
            if p >= k || seen[p] {
                return Err(Error::Group("class permutation is not a permutation".into()));
            }
            seen[p] = true;
        }
        let classes: Vec<Vec<u32>> = perm.iter().map(|&p| self.classes.classes[p].clone()).collect();
        for (ci, c) in classes.iter().enumerate() {
            for &x in c {
                self.class_of[x as usize] = ci as u32;
            }
        }
        self.classes = ConjugacyClassTable { classes, labels };
        Ok(())
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn set_schur_multiplier(&mut self, factors: Vec<u64>) {
        self.schur_multiplier = Some(factors);
    }

    /// Bundled Schur multiplier as invariant factors (`[]` = trivial), if known.
    pub fn schur_multiplier(&self) -> Option<&[u64]> {
        self.schur_multiplier.as_deref()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.encodings.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> Vec<usize> {
        self.generators.iter().map(|&g| g as usize).collect()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g x g^{-1}`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.orders[a] as i64;
        let e = k.rem_euclid(o);
        let mut x = 0;
        for _ in 0..e {
            x = self.mul(x, a);
        }
        x
    }

    pub fn elem_order(&self, a: usize) -> usize {
        self.orders[a] as usize
    }

    pub fn exponent(&self) -> usize {
        self.orders.iter().fold(1usize, |acc, &o| acc.lcm(&(o as usize)))
    }

    pub fn encoding(&self, a: usize) -> &[u32] {
        &self.encodings[a]
    }

    pub fn find(&self, enc: &[u32]) -> Option<usize> {
        self.index.get(enc).map(|&i| i as usize)
    }

    pub fn conjugacy_classes(&self) -> &ConjugacyClassTable {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.classes.len()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes.classes[c].len()
    }

    pub fn class_rep(&self, c: usize) -> usize {
        self.classes.classes[c][0] as usize
    }

    pub fn class_label(&self, c: usize) -> &str {
        &self.classes.labels[c]
    }

    pub fn class_by_label(&self, label: &str) -> Option<usize> {
        self.classes.labels.iter().position(|l| l == label)
    }

    pub fn class_order(&self, c: usize) -> usize {
        self.elem_order(self.class_rep(c))
    }

    /// Class containing `rep(c)^k`.
    pub fn power_class(&self, c: usize, k: i64) -> usize {
        self.class_of(self.pow(self.class_rep(c), k))
    }

    /// Class of inverses.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.class_of(self.inv(self.class_rep(c)))
    }

    pub fn factors(&self) -> Option<&(Arc<FiniteGroup>, Arc<FiniteGroup>)> {
        self.factors.as_ref()
    }

    // ---------------------------------------------------------------- subgroups

    pub fn whole(&self) -> SubgroupHandle {
        SubgroupHandle::from_elems(self.order(), &(0..self.order() as u32).collect::<Vec<_>>())
    }

    pub fn trivial_subgroup(&self) -> SubgroupHandle {
        SubgroupHandle::from_elems(self.order(), &[0])
    }

    pub fn subgroup_from_elements(&self, elems: &[usize]) -> Result<SubgroupHandle> {
        let e: Vec<u32> = elems.iter().map(|&x| x as u32).collect();
        let s = SubgroupHandle::from_elems(self.order(), &e);
        if !s.contains(0) {
            return Err(Error::Group("subgroup must contain the identity".into()));
        }
        for &a in s.elements() {
            if !s.contains(self.inv(a as usize)) {
                return Err(Error::Group("element list is not closed under inverses".into()));
            }
            for &b in s.elements() {
                if !s.contains(self.mul(a as usize, b as usize)) {
                    return Err(Error::Group("element list is not closed under multiplication".into()));
                }
            }
        }
        Ok(s)
    }

    /// Subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> SubgroupHandle {
        self.closure_from(&[0], gens)
    }

    fn closure_from(&self, start: &[u32], gens: &[usize]) -> SubgroupHandle {
        let n = self.order();
        let mut mask = vec![0u64; n.div_ceil(64)];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &s in start {
            if mask[s as usize / 64] >> (s % 64) & 1 == 0 {
                mask[s as usize / 64] |= 1 << (s % 64);
                queue.push_back(s as usize);
            }
        }
        if mask[0] & 1 == 0 {
            mask[0] |= 1;
            queue.push_back(0);
        }
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if mask[y / 64] >> (y % 64) & 1 == 0 {
                    mask[y / 64] |= 1 << (y % 64);
                    queue.push_back(y);
                }
            }
        }
        SubgroupHandle::from_mask(mask)
    }

    /// `<S, g>` for a subgroup `S` with generating set `sgens`.
    fn join(&self, s: &SubgroupHandle, sgens: &[usize], g: usize) -> SubgroupHandle {
        let mut gens = sgens.to_vec();
        gens.push(g);
        self.closure_from(s.elements(), &gens)
    }

    pub fn is_normal(&self, s: &SubgroupHandle) -> bool {
        let gens = self.generators();
        let gens = if gens.is_empty() { vec![0] } else { gens };
        s.elements()
            .iter()
            .all(|&x| gens.iter().all(|&g| s.contains(self.conj(g, x as usize))))
    }

    pub fn conjugate_subgroup(&self, g: usize, s: &SubgroupHandle) -> SubgroupHandle {
        let e: Vec<u32> = s.elements().iter().map(|&x| self.conj(g, x as usize) as u32).collect();
        SubgroupHandle::from_elems(self.order(), &e)
    }

    pub fn are_conjugate(&self, a: &SubgroupHandle, b: &SubgroupHandle) -> Option<usize> {
        if a.order() != b.order() {
            return None;
        }
        (0..self.order()).find(|&g| self.conjugate_subgroup(g, a) == *b)
    }

    pub fn center(&self) -> SubgroupHandle {
        let n = self.order();
        let gens = self.generators();
        let z: Vec<u32> = (0..n)
            .filter(|&x| gens.iter().all(|&g| self.mul(g, x) == self.mul(x, g)))
            .map(|x| x as u32)
            .collect();
        SubgroupHandle::from_elems(n, &z)
    }

    pub fn is_central(&self, x: usize) -> bool {
        self.class_size(self.class_of(x)) == 1
    }

    pub fn derived_subgroup(&self) -> SubgroupHandle {
        let n = self.order();
        let mut comms: HashSet<usize> = HashSet::new();
        for a in 0..n {
            for b in 0..n {
                let c = self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)));
                comms.insert(c);
            }
        }
        let mut gens: Vec<usize> = comms.into_iter().collect();
        gens.sort_unstable();
        self.subgroup_generated(&gens)
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subgroup().order() == self.order()
    }

    /// Invariant factors of `G / [G, G]` (empty for a perfect group).
    pub fn abelianization(&self) -> Vec<u64> {
        let d = self.derived_subgroup();
        self.quotient_invariant_factors(&d)
    }

    /// Invariant factors of the abelian quotient `G / N` (N normal, quotient abelian).
    fn quotient_invariant_factors(&self, nsub: &SubgroupHandle) -> Vec<u64> {
        let n = self.order();
        let qorder = (n / nsub.order()) as u64;
        if qorder == 1 {
            return vec![];
        }
        let cosets = self.right_cosets(nsub);
        let reps: Vec<usize> = cosets.reps.iter().map(|&r| r as usize).collect();
        // order of each coset in the quotient
        let qord: Vec<u64> = reps
            .iter()
            .map(|&r| {
                let mut x = r;
                let mut k = 1u64;
                while !nsub.contains(x) {
                    x = self.mul(x, r);
                    k += 1;
                }
                k
            })
            .collect();
        let mut primes = Vec::new();
        let mut m = qorder;
        let mut p = 2;
        while m > 1 {
            if m % p == 0 {
                primes.push(p);
                while m % p == 0 {
                    m /= p;
                }
            }
            p += 1;
        }
        // per prime: r_k = log_p(|Q[p^k]| / |Q[p^(k-1)]|) factors have exponent >= k
        let mut prime_parts: Vec<(u64, Vec<u32>)> = Vec::new();
        for &p in &primes {
            let mut r: Vec<u32> = Vec::new();
            let mut prev = 1u64;
            let mut k = 1u32;
            loop {
                let pk = p.pow(k);
                let cnt = qord.iter().filter(|&&o| pk % o == 0).count() as u64;
                if cnt == prev {
                    break;
                }
                let mut ratio = cnt / prev;
                let mut rk = 0u32;
                while ratio > 1 {
                    ratio /= p;
                    rk += 1;
                }
                r.push(rk);
                prev = cnt;
                k += 1;
            }
            let width = r.first().copied().unwrap_or(0);
            let exps: Vec<u32> = (0..width).map(|i| r.iter().filter(|&&rk| rk > i).count() as u32).collect();
            prime_parts.push((p, exps));
        }
        let width = prime_parts.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
        let mut factors = vec![1u64; width];
        for (p, exps) in &prime_parts {
            for (i, e) in exps.iter().enumerate() {
                factors[i] *= p.pow(*e);
            }
        }
        factors.sort_unstable();
        factors
    }

    /// Right cosets `S x`, with the smallest element of each coset as representative.
    pub fn right_cosets(&self, s: &SubgroupHandle) -> CosetSpace {
        let n = self.order();
        let mut coset_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if coset_of[x] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x as u32);
            for &h in s.elements() {
                coset_of[self.mul(h as usize, x)] = id;
            }
        }
        CosetSpace { coset_of, reps }
    }

    /// Orbits of `<sigma>` acting on `S\G` by right multiplication.
    pub fn coset_orbits(&self, s: &SubgroupHandle, cosets: &CosetSpace, sigma: usize) -> Vec<Orbit> {
        let k = cosets.reps.len();
        let mut seen = vec![false; k];
        let mut out = Vec::new();
        for c in 0..k {
            if seen[c] {
                continue;
            }
            let rep = cosets.reps[c] as usize;
            let mut size = 0;
            let mut x = rep;
            loop {
                let cx = cosets.coset_of[x] as usize;
                if seen[cx] {
                    break;
                }
                seen[cx] = true;
                size += 1;
                x = self.mul(x, sigma);
            }
            debug_assert!(s.contains(self.mul(self.mul(rep, self.pow(sigma, size as i64)), self.inv(rep))));
            out.push(Orbit { size, rep });
        }
        out
    }

    /// Orbit sizes of `<sigma>` on `S\G`.
    pub fn frobenius_orbit_sizes(&self, s: &SubgroupHandle, sigma: usize) -> Vec<usize> {
        let cosets = self.right_cosets(s);
        let mut v: Vec<usize> = self.coset_orbits(s, &cosets, sigma).into_iter().map(|o| o.size).collect();
        v.sort_unstable();
        v
    }

    /// Every subgroup, as conjugacy-class representatives sorted by order.
    ///
    /// Starts from the cyclic subgroups and repeatedly adjoins one element,
    /// so two-generator subgroups appear in the second round and the
    /// closure is complete.
    pub fn all_subgroups_up_to_conjugacy(&self) -> Vec<SubgroupHandle> {
        let n = self.order();
        let mut found: HashMap<Vec<u64>, usize> = HashMap::new();
        let mut subs: Vec<(SubgroupHandle, Vec<usize>)> = Vec::new();
        for x in 0..n {
            let s = self.subgroup_generated(&[x]);
            if !found.contains_key(&s.mask) {
                found.insert(s.mask.clone(), subs.len());
                subs.push((s, vec![x]));
            }
        }
        let mut i = 0;
        while i < subs.len() {
            let (s, gens) = subs[i].clone();
            if s.order() < n {
                let new: Vec<(SubgroupHandle, usize)> = (0..n)
                    .into_par_iter()
                    .filter(|&g| !s.contains(g))
                    .map(|g| (self.join(&s, &gens, g), g))
                    .collect();
                for (t, g) in new {
                    if !found.contains_key(&t.mask) {
                        found.insert(t.mask.clone(), subs.len());
                        let mut tg = gens.clone();
                        tg.push(g);
                        subs.push((t, tg));
                    }
                }
            }
            i += 1;
        }
        // conjugacy classes of subgroups
        let mut assigned = vec![false; subs.len()];
        let mut reps: Vec<SubgroupHandle> = Vec::new();
        let mut order_idx: Vec<usize> = (0..subs.len()).collect();
        order_idx.sort_by_key(|&k| (subs[k].0.order(), subs[k].0.elems.clone()));
        for &k in &order_idx {
            if assigned[k] {
                continue;
            }
            let s = &subs[k].0;
            reps.push(s.clone());
            for g in 0..n {
                let c = self.conjugate_subgroup(g, s);
                if let Some(&j) = found.get(&c.mask) {
                    assigned[j] = true;
                }
            }
        }
        reps
    }

    /// Smallest index of a proper subgroup (`None` for the trivial group).
    pub fn min_proper_index(&self) -> Option<usize> {
        self.all_subgroups_up_to_conjugacy()
            .iter()
            .filter(|s| s.order() < self.order())
            .map(|s| self.order() / s.order())
            .min()
    }

    /// Perfect with simple central quotient.
    pub fn is_quasi_simple(&self) -> bool {
        if !self.is_perfect() {
            return false;
        }
        let z = self.center();
        if z.order() == self.order() {
            return false;
        }
        (0..self.num_classes()).all(|c| {
            let rep = self.class_rep(c);
            if z.contains(rep) {
                return true;
            }
            let mut gens: Vec<usize> = self.classes.classes[c].iter().map(|&x| x as usize).collect();
            gens.extend(z.elements().iter().map(|&x| x as usize));
            self.subgroup_generated(&gens).order() == self.order()
        })
    }

    pub fn generates(&self, gens: &[usize]) -> bool {
        self.subgroup_generated(gens).order() == self.order()
    }

    // ---------------------------------------------------------------- constructions

    pub fn direct_product(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Result<FiniteGroup> {
        let na = a.order();
        let nb = b.order();
        let n = na * nb;
        if n > DEFAULT_CAP.max(na.max(nb)) && n > 16_384 {
            return Err(Error::CapExceeded { cap: DEFAULT_CAP });
        }
        let mut encodings = Vec::with_capacity(n);
        let mut index = HashMap::with_capacity(n);
        for i in 0..na {
            for j in 0..nb {
                let mut e = a.encoding(i).to_vec();
                e.push(u32::MAX);
                e.extend_from_slice(b.encoding(j));
                index.insert(e.clone(), (i * nb + j) as u32);
                encodings.push(e);
            }
        }
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            let (xa, xb) = (x / nb, x % nb);
            for y in 0..n {
                let (ya, yb) = (y / nb, y % nb);
                table[x * n + y] = (a.mul(xa, ya) * nb + b.mul(xb, yb)) as u32;
            }
        }
        let mut gens: Vec<u32> = a.generators().iter().map(|&g| (g * nb) as u32).collect();
        gens.extend(b.generators().iter().map(|&g| g as u32));
        let name = if b.order() == 1 {
            a.name().to_string()
        } else if a.order() == 1 {
            b.name().to_string()
        } else {
            format!("{}x{}", a.name(), b.name())
        };
        let mut g = Self::assemble(name, encodings, index, table, gens);
        // classes of a product are products of classes
        let (ka, kb) = (a.num_classes(), b.num_classes());
        let mut perm = Vec::with_capacity(ka * kb);
        let mut labels = Vec::with_capacity(ka * kb);
        for ca in 0..ka {
            for cb in 0..kb {
                let rep = a.class_rep(ca) * nb + b.class_rep(cb);
                perm.push(g.class_of(rep));
                labels.push(if kb == 1 {
                    a.class_label(ca).to_string()
                } else if ka == 1 {
                    b.class_label(cb).to_string()
                } else {
                    format!("{}x{}", a.class_label(ca), b.class_label(cb))
                });
            }
        }
        g.set_class_order(&perm, labels)?;
        if let (Some(ma), Some(mb)) = (a.schur_multiplier(), b.schur_multiplier()) {
            // Kunneth: M(A x B) = M(A) x M(B) x (A^ab tensor B^ab)
            let mut m: Vec<u64> = ma.iter().chain(mb.iter()).copied().collect();
            for x in a.abelianization() {
                for y in b.abelianization() {
                    let d = x.gcd(&y);
                    if d > 1 {
                        m.push(d);
                    }
                }
            }
            m.sort_unstable();
            g.schur_multiplier = Some(m);
        }
        g.factors = Some((a.clone(), b.clone()));
        Ok(g)
    }

    /// Product index of `(x in A, y in B)` for a group built by [`FiniteGroup::direct_product`].
    pub fn pair_index(&self, x: usize, y: usize) -> usize {
        let nb = self.factors.as_ref().map(|f| f.1.order()).unwrap_or(1);
        x * nb + y
    }

    /// The subgroup as a group in its own right, with its embedding into `self`.
    pub fn subgroup_as_group(&self, s: &SubgroupHandle, name: &str) -> (FiniteGroup, Vec<usize>) {
        let embed: Vec<usize> = s.elements().iter().map(|&x| x as usize).collect();
        let local: HashMap<usize, u32> = embed.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
        let m = embed.len();
        let mut table = vec![0u32; m * m];
        for i in 0..m {
            for j in 0..m {
                table[i * m + j] = local[&self.mul(embed[i], embed[j])];
            }
        }
        let encodings: Vec<Vec<u32>> = embed.iter().map(|&x| self.encodings[x].clone()).collect();
        let index = encodings.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        // a small generating set: greedy
        let mut gens: Vec<u32> = Vec::new();
        let mut span = SubgroupHandle::from_elems(m, &[0]);
        for i in 0..m {
            if !span.contains(i) {
                gens.push(i as u32);
                let tmp = Self::assemble_span(&table, m, &gens);
                span = tmp;
            }
        }
        (Self::assemble(name.to_string(), encodings, index, table, gens), embed)
    }

    fn assemble_span(table: &[u32], m: usize, gens: &[u32]) -> SubgroupHandle {
        let mut mask = vec![0u64; m.div_ceil(64)];
        mask[0] |= 1;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = table[x * m + g as usize] as usize;
                if mask[y / 64] >> (y % 64) & 1 == 0 {
                    mask[y / 64] |= 1 << (y % 64);
                    queue.push_back(y);
                }
            }
        }
        SubgroupHandle::from_mask(mask)
    }
}

fn letter_suffix(i: usize) -> String {
    let letters = b"abcdefghijklmnopqrstuvwxyz";
    if i < 26 {
        (letters[i] as char).to_string()
    } else {
        format!("_{i}")
    }
}

// -------------------------------------------------------------------- named groups

fn relabel_icosahedral(g: &mut FiniteGroup) -> Result<()> {
    let t = g.find(&[1, 1, 0, 1]).ok_or_else(|| Error::Group("missing [[1,1],[0,1]]".into()))?;
    let mt = g.find(&[4, 4, 0, 4]).ok_or_else(|| Error::Group("missing -[[1,1],[0,1]]".into()))?;
    let c5 = g.class_of(t);
    let c10 = g.class_of(mt);
    let by_order = |o: usize| -> Vec<usize> { (0..g.num_classes()).filter(|&c| g.class_order(c) == o).collect() };
    let pick = |o: usize| -> Result<usize> {
        let v = by_order(o);
        if v.len() == 1 {
            Ok(v[0])
        } else {
            Err(Error::Group(format!("expected one class of order {o}")))
        }
    };
    let other = |o: usize, not: usize| -> Result<usize> {
        by_order(o).into_iter().find(|&c| c != not).ok_or_else(|| Error::Group("missing class".into()))
    };
    let perm = vec![pick(1)?, pick(2)?, pick(4)?, pick(3)?, pick(6)?, c5, c10, other(5, c5)?, other(10, c10)?];
    let labels = ["C1", "C2", "C4", "C3", "C6", "C5", "C10", "C5'", "C10'"];
    g.set_class_order(&perm, labels.iter().map(|s| s.to_string()).collect())
}

/// Label the classes of a binary tetrahedral group: `C1 C2 C4 Ct Ct' Ct2 Ct2'`,
/// with `Ct` the class of the smallest-index element of order 3 and primes marking
/// the order-6 classes `-c`.
pub fn relabel_tetrahedral(g: &mut FiniteGroup) -> Result<()> {
    if g.order() != 24 || g.num_classes() != 7 {
        return Err(Error::Group("not a binary tetrahedral group".into()));
    }
    let z = g.center();
    let minus = *z.elements().iter().find(|&&x| x != 0).ok_or_else(|| Error::Group("trivial centre".into()))? as usize;
    let c = (0..g.order()).find(|&x| g.elem_order(x) == 3).unwrap();
    let c2 = g.mul(c, c);
    let cls = |x: usize| g.class_of(x);
    let single = |o: usize| (0..g.num_classes()).find(|&k| g.class_order(k) == o).unwrap();
    let perm = vec![
        single(1),
        single(2),
        single(4),
        cls(c),
        cls(g.mul(minus, c)),
        cls(c2),
        cls(g.mul(minus, c2)),
    ];
    let labels = ["C1", "C2", "C4", "Ct", "Ct'", "Ct2", "Ct2'"];
    g.set_class_order(&perm, labels.iter().map(|s| s.to_string()).collect())
}

/// Label the classes of a quaternion group: `C1 C-1 Ci Cj Cij`, with `i` the
/// smallest-index element of order 4 and `j` the next one outside `<i>`.
pub fn relabel_quaternion(g: &mut FiniteGroup) -> Result<()> {
    if g.order() != 8 || g.num_classes() != 5 {
        return Err(Error::Group("not a quaternion group".into()));
    }
    let i = (0..8).find(|&x| g.elem_order(x) == 4).unwrap();
    let ii = g.subgroup_generated(&[i]);
    let j = (0..8).find(|&x| g.elem_order(x) == 4 && !ii.contains(x)).unwrap();
    let m1 = (0..8).find(|&x| g.elem_order(x) == 2).unwrap();
    let perm = vec![g.class_of(0), g.class_of(m1), g.class_of(i), g.class_of(j), g.class_of(g.mul(i, j))];
    let labels = ["C1", "C-1", "Ci", "Cj", "Cij"];
    g.set_class_order(&perm, labels.iter().map(|s| s.to_string()).collect())
}

/// Names accepted by [`named_group`].
pub const GROUP_NAMES: &[&str] =
    &["sl2z5", "sl2z7", "sl2z3", "binary_tetrahedral", "quaternion", "trivial", "cyclic<N>"];

/// Bundled groups, with the conventional class labels and Schur multipliers.
pub fn named_group(name: &str) -> Result<FiniteGroup> {
    let mut g = match name {
        "sl2z5" | "binary_icosahedral" => {
            let mut g = FiniteGroup::build(&GroupSpec::sl2(5), DEFAULT_CAP)?.with_name("SL2(Z/5)");
            relabel_icosahedral(&mut g)?;
            g
        }
        "sl2z7" => FiniteGroup::build(&GroupSpec::sl2(7), DEFAULT_CAP)?.with_name("SL2(Z/7)"),
        "sl2z3" | "binary_tetrahedral" => {
            let mut g = FiniteGroup::build(&GroupSpec::sl2(3), DEFAULT_CAP)?.with_name("SL2(Z/3)");
            relabel_tetrahedral(&mut g)?;
            g
        }
        "quaternion" | "q8" => {
            let mut g = FiniteGroup::build(&GroupSpec::quaternion(), DEFAULT_CAP)?;
            relabel_quaternion(&mut g)?;
            g
        }
        "trivial" => FiniteGroup::build(&GroupSpec::cyclic(1), DEFAULT_CAP)?.with_name("1"),
        other => {
            if let Some(n) = other.strip_prefix("cyclic").and_then(|s| s.parse::<u32>().ok()) {
                if n == 0 {
                    return Err(Error::Config("cyclic group of order 0".into()));
                }
                FiniteGroup::build(&GroupSpec::cyclic(n), DEFAULT_CAP)?
            } else {
                return Err(Error::Config(format!("unknown group name '{other}'")));
            }
        }
    };
    // every bundled group has trivial Schur multiplier
    g.set_schur_multiplier(vec![]);
    Ok(g)
}

// -------------------------------------------------------------------- generation

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GenerationMode {
    /// Every noncentral `x` has a partner `g` with `<x, g> = G`.
    GuralnickKantor,
    /// Two elements of order prime to 6 generate `G`.
    GuralnickMalle,
    /// `<tau, H> = G` for every `tau` of the given order.
    Tower { order: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct GenerationReport {
    pub mode: GenerationMode,
    pub checked: usize,
    pub passed: usize,
    /// `(x, witness)` pairs (element indices).
    pub witnesses: Vec<(usize, usize)>,
    pub counterexamples: Vec<usize>,
    pub ok: bool,
}

pub fn verify_generation(
    g: &FiniteGroup,
    mode: GenerationMode,
    h: Option<&SubgroupHandle>,
) -> Result<GenerationReport> {
    match mode {
        GenerationMode::GuralnickKantor | GenerationMode::GuralnickMalle => {
            if !g.is_quasi_simple() {
                return Err(Error::Hypothesis(format!("{} is not quasi-simple", g.name())));
            }
        }
        GenerationMode::Tower { .. } => {}
    }
    let n = g.order();
    match mode {
        GenerationMode::GuralnickKantor => {
            let xs: Vec<usize> = (0..n).filter(|&x| !g.is_central(x)).collect();
            let res: Vec<(usize, Option<usize>)> = xs
                .par_iter()
                .map(|&x| (x, (0..n).find(|&y| g.generates(&[x, y]))))
                .collect();
            let witnesses: Vec<(usize, usize)> = res.iter().filter_map(|(x, w)| w.map(|w| (*x, w))).collect();
            let counterexamples: Vec<usize> = res.iter().filter(|(_, w)| w.is_none()).map(|(x, _)| *x).collect();
            Ok(GenerationReport {
                mode,
                checked: xs.len(),
                passed: witnesses.len(),
                ok: counterexamples.is_empty(),
                witnesses,
                counterexamples,
            })
        }
        GenerationMode::GuralnickMalle => {
            let good: Vec<usize> = (0..n).filter(|&x| g.elem_order(x).gcd(&6) == 1).collect();
            let pair = good
                .iter()
                .flat_map(|&a| good.iter().map(move |&b| (a, b)))
                .find(|&(a, b)| g.generates(&[a, b]));
            Ok(GenerationReport {
                mode,
                checked: 1,
                passed: pair.is_some() as usize,
                witnesses: pair.into_iter().collect(),
                counterexamples: vec![],
                ok: pair.is_some(),
            })
        }
        GenerationMode::Tower { order } => {
            let h = h.ok_or_else(|| Error::Config("tower mode needs a subgroup".into()))?;
            let hg: Vec<usize> = h.elements().iter().map(|&x| x as usize).collect();
            let taus: Vec<usize> = (0..n).filter(|&x| g.elem_order(x) == order).collect();
            let res: Vec<(usize, bool)> = taus
                .par_iter()
                .map(|&t| {
                    let mut gens = hg.clone();
                    gens.push(t);
                    (t, g.generates(&gens))
                })
                .collect();
            let witnesses: Vec<(usize, usize)> = res.iter().filter(|r| r.1).map(|r| (r.0, r.0)).collect();
            let counterexamples: Vec<usize> = res.iter().filter(|r| !r.1).map(|r| r.0).collect();
            Ok(GenerationReport {
                mode,
                checked: taus.len(),
                passed: witnesses.len(),
                ok: counterexamples.is_empty() && !taus.is_empty(),
                witnesses,
                counterexamples,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2z5_basics() {
        let g = named_group("sl2z5").unwrap();
        assert_eq!(g.order(), 120);
        assert_eq!(g.center().order(), 2);
        assert_eq!(g.num_classes(), 9);
        let sizes: Vec<usize> = (0..9).map(|c| g.class_size(c)).collect();
        assert_eq!(sizes, vec![1, 1, 30, 20, 20, 12, 12, 12, 12]);
        assert!(g.is_perfect());
        assert!(g.abelianization().is_empty());
        assert!(g.is_quasi_simple());
    }

    #[test]
    fn trivial_and_cyclic() {
        let t = FiniteGroup::build(
            &GroupSpec { name: "t".into(), arithmetic: Arithmetic::Mat2 { modulus: 5 }, generators: vec![] },
            DEFAULT_CAP,
        )
        .unwrap();
        assert_eq!(t.order(), 1);
        let c = named_group("cyclic6").unwrap();
        assert_eq!(c.num_classes(), 6);
        assert_eq!(c.abelianization(), vec![6]);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(FiniteGroup::build(&GroupSpec::sl2(7), 100), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn quaternion_labels() {
        let q = named_group("quaternion").unwrap();
        assert_eq!(q.order(), 8);
        assert_eq!(q.conjugacy_classes().labels, vec!["C1", "C-1", "Ci", "Cj", "Cij"]);
        assert_eq!(q.abelianization(), vec![2, 2]);
    }

    #[test]
    fn tetrahedral_abelianization() {
        let t = named_group("sl2z3").unwrap();
        assert_eq!(t.abelianization(), vec![3]);
    }

    #[test]
    fn frobenius_orbits_small() {
        let g = named_group("sl2z5").unwrap();
        let subs = g.all_subgroups_up_to_conjugacy();
        let a4 = subs.iter().find(|s| s.order() == 24).unwrap();
        assert_eq!(g.frobenius_orbit_sizes(a4, 0), vec![1; 5]);
        let t = g.find(&[1, 1, 0, 1]).unwrap();
        let s = g.frobenius_orbit_sizes(a4, t);
        assert!(s == vec![5] || s == vec![1; 5]);
        let three = (0..120).find(|&x| g.elem_order(x) == 3).unwrap();
        assert_eq!(g.frobenius_orbit_sizes(a4, three), vec![1, 1, 3]);
    }

    #[test]
    fn subgroup_counts() {
        let g = named_group("sl2z5").unwrap();
        let subs = g.all_subgroups_up_to_conjugacy();
        // SL2(5) has 12 conjugacy classes of subgroups
        assert_eq!(subs.len(), 12);
        assert_eq!(g.min_proper_index(), Some(5));
        let q = named_group("quaternion").unwrap();
        assert_eq!(q.all_subgroups_up_to_conjugacy().len(), 6);
    }

    #[test]
    fn direct_products() {
        let a = Arc::new(named_group("sl2z5").unwrap());
        let b = Arc::new(named_group("quaternion").unwrap());
        let p = FiniteGroup::direct_product(&a, &b).unwrap();
        assert_eq!(p.order(), 960);
        assert_eq!(p.num_classes(), 45);
        assert_eq!(p.schur_multiplier(), Some(&[][..]));
        assert_eq!(p.class_label(p.class_of(p.pair_index(0, 0))), "C1xC1");
    }
}
