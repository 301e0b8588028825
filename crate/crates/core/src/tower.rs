//! Towers `E >= F' >= F` modelled on finite groups.
//!
//! The ambient group is `G x T`: `G` plays `Gal(E/F)` for the icosahedral
//! (or other quasi-simple) part and `T` is an optional twist group whose
//! characters supply automorphic data living on `E` itself.  The levels are
//!
//! * `F`  <-> `G x T`
//! * `F'` <-> `H x T`
//! * `E`  <-> `1 x T`
//!
//! so with `T` trivial this is the plain Galois tower.  The element `tau` acts
//! through `(tau, 1)`.

use std::sync::Arc;

use serde::Serialize;

use crate::chars::{CharacterTable, ClassFunction, Embedding};
use crate::error::{Error, Result};
use crate::groups::{
    named_group, relabel_quaternion, relabel_tetrahedral, verify_generation, FiniteGroup, GenerationMode, SubgroupHandle,
};

/// One field of the tower, as a subgroup of the ambient group with its table.
#[derive(Clone, Debug)]
pub struct Level {
    pub name: String,
    pub embed: Embedding,
    pub table: Arc<CharacterTable>,
}

impl Level {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.embed.sub
    }

    fn new(name: &str, embed: Embedding) -> Result<Self> {
        let table = Arc::new(CharacterTable::compute(&embed.sub)?);
        Ok(Level { name: name.to_string(), embed, table })
    }
}

/// A place of a level above a base prime: an orbit of `<sigma>` on the right cosets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Place {
    /// Inertia degree (orbit size).
    pub f: usize,
    /// Coset representative `x` in the ambient group.
    pub rep: usize,
    /// Frobenius `x sigma^f x^{-1}` as an element of the level group.
    pub frob: usize,
    /// Index of the coset `J x` among the level's right cosets.
    pub coset: usize,
}

#[derive(Clone, Debug)]
pub struct Tower {
    pub base: Arc<FiniteGroup>,
    pub h: Arc<FiniteGroup>,
    pub h_in_base: Embedding,
    pub twist: Option<Arc<FiniteGroup>>,
    pub ambient: Arc<FiniteGroup>,
    /// `tau` as an element of the base group.
    pub tau: usize,
    pub f: Level,
    pub f_prime: Level,
    pub e: Level,
    /// Images of the ambient generators, cached for coset work.
    cosets: Vec<crate::groups::CosetSpace>,
}

/// Which subgroup of the base to use as `Gal(E/F')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupChoice {
    /// Lexicographically smallest subgroup of the given order.
    Order(usize),
    /// The binary tetrahedral subgroup (order 24) of SL2(Z/5).
    Tetrahedral,
    /// The quaternion subgroup (order 8) of the chosen tetrahedral subgroup.
    Quaternion,
    /// Subgroup generated by explicit element encodings.
    Generators(Vec<Vec<u32>>),
}

/// Lexicographically smallest subgroup (as a sorted element list) of the given order.
pub fn smallest_subgroup_of_order(g: &FiniteGroup, order: usize) -> Option<SubgroupHandle> {
    let reps = g.all_subgroups_up_to_conjugacy();
    let mut best: Option<SubgroupHandle> = None;
    for r in reps.iter().filter(|s| s.order() == order) {
        for x in 0..g.order() {
            let c = g.conjugate_subgroup(x, r);
            if best.as_ref().map(|b| c.elements() < b.elements()).unwrap_or(true) {
                best = Some(c);
            }
        }
    }
    best
}

/// Resolve a [`SubgroupChoice`] inside `g`.
pub fn choose_subgroup(g: &FiniteGroup, choice: &SubgroupChoice) -> Result<SubgroupHandle> {
    match choice {
        SubgroupChoice::Order(n) => smallest_subgroup_of_order(g, *n)
            .ok_or_else(|| Error::Config(format!("{} has no subgroup of order {n}", g.name()))),
        SubgroupChoice::Tetrahedral => smallest_subgroup_of_order(g, 24)
            .ok_or_else(|| Error::Config(format!("{} has no subgroup of order 24", g.name()))),
        SubgroupChoice::Quaternion => {
            let a4 = choose_subgroup(g, &SubgroupChoice::Tetrahedral)?;
            let els: Vec<usize> = a4.elements().iter().map(|&x| x as usize).collect();
            // the normal Sylow 2-subgroup: all elements of 2-power order
            let q: Vec<usize> = els.into_iter().filter(|&x| g.elem_order(x).is_power_of_two()).collect();
            let s = g.subgroup_from_elements(&q)?;
            if s.order() != 8 {
                return Err(Error::Config("tetrahedral subgroup has no quaternion Sylow subgroup".into()));
            }
            Ok(s)
        }
        SubgroupChoice::Generators(gens) => {
            let idx = gens
                .iter()
                .map(|e| g.find(e).ok_or_else(|| Error::Config(format!("{e:?} is not an element of {}", g.name()))))
                .collect::<Result<Vec<_>>>()?;
            Ok(g.subgroup_generated(&idx))
        }
    }
}

/// Turn a subgroup into a group with the conventional labels when it is recognisably
/// binary tetrahedral or quaternion.
pub fn subgroup_group(g: &FiniteGroup, s: &SubgroupHandle, name: &str) -> Result<(FiniteGroup, Vec<usize>)> {
    let (mut h, emb) = g.subgroup_as_group(s, name);
    let involutions = (0..h.order()).filter(|&x| h.elem_order(x) == 2).count();
    if h.order() == 24 && h.num_classes() == 7 && involutions == 1 {
        relabel_tetrahedral(&mut h)?;
        h.set_schur_multiplier(vec![]);
    } else if h.order() == 8 && h.num_classes() == 5 && involutions == 1 {
        relabel_quaternion(&mut h)?;
        h.set_schur_multiplier(vec![]);
    } else if h.abelianization().len() == 1 && h.abelianization()[0] as usize == h.order() {
        h.set_schur_multiplier(vec![]);
    } else if h.order() == 1 {
        h.set_schur_multiplier(vec![]);
    }
    Ok((h, emb))
}

impl Tower {
    /// Build the tower for base `G`, subgroup `H` and optional twist group `T`.
    pub fn new(
        base: Arc<FiniteGroup>,
        h_sub: &SubgroupHandle,
        h_name: &str,
        twist: Option<Arc<FiniteGroup>>,
        tau: usize,
    ) -> Result<Self> {
        if tau >= base.order() {
            return Err(Error::Config("tau is not an element of the base group".into()));
        }
        let (h, h_map) = subgroup_group(&base, h_sub, h_name)?;
        let h = Arc::new(h);
        let h_in_base = Embedding::new(h.clone(), base.clone(), h_map)?;
        let trivial = Arc::new(named_group("trivial")?);
        let (ambient, f, f_prime, e) = match &twist {
            None => {
                let ambient = base.clone();
                let f = Level::new("F", Embedding::identity(&ambient))?;
                let fp = Level::new("F'", h_in_base.clone())?;
                let e = Level::new("E", Embedding::new(trivial.clone(), ambient.clone(), vec![0])?)?;
                (ambient, f, fp, e)
            }
            Some(t) => {
                let ambient = Arc::new(FiniteGroup::direct_product(&base, t)?);
                let f = Level::new("F", Embedding::identity(&ambient))?;
                let hp = Arc::new(FiniteGroup::direct_product(&h, t)?);
                let nt = t.order();
                let map: Vec<usize> = (0..hp.order())
                    .map(|x| ambient.pair_index(h_in_base.map[x / nt], x % nt))
                    .collect();
                let fp = Level::new("F'", Embedding::new(hp, ambient.clone(), map)?)?;
                let map: Vec<usize> = (0..nt).map(|x| ambient.pair_index(0, x)).collect();
                let e = Level::new("E", Embedding::new(t.clone(), ambient.clone(), map)?)?;
                (ambient, f, fp, e)
            }
        };
        let cosets = vec![
            ambient.right_cosets(&f.embed.image()),
            ambient.right_cosets(&f_prime.embed.image()),
            ambient.right_cosets(&e.embed.image()),
        ];
        Ok(Tower { base, h, h_in_base, twist, ambient, tau, f, f_prime, e, cosets })
    }

    /// The icosahedral tower `SL2(Z/5) >= H` with the given twist group.
    pub fn icosahedral(h: SubgroupChoice, twist: Option<&str>) -> Result<Self> {
        let base = Arc::new(named_group("sl2z5")?);
        let sub = choose_subgroup(&base, &h)?;
        let name = match h {
            SubgroupChoice::Tetrahedral => "A4~",
            SubgroupChoice::Quaternion => "Q",
            _ => "H",
        };
        let twist = twist.map(named_group).transpose()?.map(Arc::new);
        let tau = default_tau(&base, &sub, 5)?;
        Tower::new(base, &sub, name, twist, tau)
    }

    /// Replace `tau` (an element of the base group).
    pub fn with_tau(mut self, tau: usize) -> Result<Self> {
        if tau >= self.base.order() {
            return Err(Error::Config("tau is not an element of the base group".into()));
        }
        self.tau = tau;
        Ok(self)
    }

    /// `(tau, 1)` in the ambient group.
    pub fn tau_ambient(&self) -> usize {
        match &self.twist {
            None => self.tau,
            Some(_) => self.ambient.pair_index(self.tau, 0),
        }
    }

    /// Does `<tau, H>` generate the base group?
    pub fn is_generating(&self) -> bool {
        let mut gens: Vec<usize> = self.h_in_base.map.clone();
        gens.push(self.tau);
        self.base.generates(&gens)
    }

    pub fn levels(&self) -> [&Level; 3] {
        [&self.f, &self.f_prime, &self.e]
    }

    fn level_slot(&self, level: &Level) -> usize {
        if Arc::ptr_eq(level.group(), self.f.group()) {
            0
        } else if Arc::ptr_eq(level.group(), self.f_prime.group()) {
            1
        } else {
            2
        }
    }

    /// Places of `level` above a base prime with Frobenius `sigma` (ambient element).
    pub fn places(&self, level: &Level, sigma: usize) -> Vec<Place> {
        let cosets = &self.cosets[self.level_slot(level)];
        let img = level.embed.image();
        self.ambient
            .coset_orbits(&img, cosets, sigma)
            .into_iter()
            .map(|o| {
                let x = o.rep;
                let s = self.ambient.pow(sigma, o.size as i64);
                let fr = self.ambient.mul(self.ambient.mul(x, s), self.ambient.inv(x));
                Place {
                    f: o.size,
                    rep: x,
                    frob: level.embed.preimage(fr).expect("Frobenius lies in the decomposition group"),
                    coset: cosets.coset_of[x] as usize,
                }
            })
            .collect()
    }

    /// Orbit sizes only.
    pub fn frobenius_orbits(&self, sigma: usize, level: &Level) -> Vec<usize> {
        let mut v: Vec<usize> = self.places(level, sigma).iter().map(|p| p.f).collect();
        v.sort_unstable();
        v
    }

    /// The place `w^tau` for an `E`-place `w` (given by its coset representative).
    pub fn tau_translate(&self, rep: usize) -> usize {
        self.ambient.mul(self.tau_ambient(), rep)
    }

    /// `Pi^tau(n) = Pi(tau n tau^{-1})` for a character of the `E` level.
    pub fn tau_twist(&self, pi: &ClassFunction) -> Result<ClassFunction> {
        let g = self.e.group();
        let t = self.tau_ambient();
        let values = (0..g.num_classes())
            .map(|c| {
                let n = self.e.embed.map[g.class_rep(c)];
                let m = self.ambient.conj(t, n);
                let local = self.e.embed.preimage(m).expect("E is normal");
                pi.value(g.class_of(local)).clone()
            })
            .collect();
        ClassFunction::new(g.clone(), values)
    }

    /// Level `K x T` for an intermediate subgroup `K` of the base containing nothing in particular.
    pub fn intermediate_level(&self, k: &SubgroupHandle, name: &str) -> Result<Level> {
        let (kg, kmap) = subgroup_group(&self.base, k, name)?;
        let kg = Arc::new(kg);
        match &self.twist {
            None => Level::new(name, Embedding::new(kg, self.ambient.clone(), kmap)?),
            Some(t) => {
                let kp = Arc::new(FiniteGroup::direct_product(&kg, t)?);
                let nt = t.order();
                let map = (0..kp.order()).map(|x| self.ambient.pair_index(kmap[x / nt], x % nt)).collect();
                Level::new(name, Embedding::new(kp, self.ambient.clone(), map)?)
            }
        }
    }

    /// Embedding of the `E` level into an arbitrary level containing it.
    pub fn e_into(&self, level: &Level) -> Result<Embedding> {
        let map = self
            .e
            .embed
            .map
            .iter()
            .map(|&x| level.embed.preimage(x).ok_or_else(|| Error::Group("E is not inside the level".into())))
            .collect::<Result<Vec<_>>>()?;
        Embedding::new(self.e.group().clone(), level.group().clone(), map)
    }

    /// Embedding of `F'` into `F`.
    pub fn f_prime_into_f(&self) -> Result<Embedding> {
        let map = self.f_prime.embed.map.iter().map(|&x| self.f.embed.preimage(x).unwrap()).collect();
        Embedding::new(self.f_prime.group().clone(), self.f.group().clone(), map)
    }

    /// Check `<tau, H> = G` in tower mode (for every element of tau's order).
    pub fn generation_report(&self) -> Result<crate::groups::GenerationReport> {
        let h = self.h_in_base.image();
        verify_generation(&self.base, GenerationMode::Tower { order: self.base.elem_order(self.tau) }, Some(&h))
    }

    /// A chain `H = H_0 > H_1 > ... > 1` with each link normal of prime index, if one exists.
    pub fn solvable_chain(&self) -> Option<Vec<usize>> {
        solvable_chain(&self.h)
    }
}

/// Orders of a composition series with prime-index normal links, if `g` is solvable.
pub fn solvable_chain(g: &FiniteGroup) -> Option<Vec<usize>> {
    let mut orders = vec![g.order()];
    let mut cur = g.whole();
    while cur.order() > 1 {
        let cur_elems: Vec<usize> = cur.elements().iter().map(|&x| x as usize).collect();
        let (sub, _) = g.subgroup_as_group(&cur, "link");
        let found = sub.all_subgroups_up_to_conjugacy().into_iter().find(|s| {
            let idx = sub.order() / s.order();
            s.order() < sub.order() && is_prime(idx) && sub.is_normal(s)
        })?;
        let els: Vec<usize> = found.elements().iter().map(|&x| cur_elems[x as usize]).collect();
        cur = g.subgroup_from_elements(&els).ok()?;
        orders.push(cur.order());
    }
    Some(orders)
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Smallest element of the given order with `<tau, H> = G`.
pub fn default_tau(g: &FiniteGroup, h: &SubgroupHandle, order: usize) -> Result<usize> {
    let hg: Vec<usize> = h.elements().iter().map(|&x| x as usize).collect();
    (0..g.order())
        .filter(|&x| g.elem_order(x) == order)
        .find(|&x| {
            let mut gens = hg.clone();
            gens.push(x);
            g.generates(&gens)
        })
        .ok_or_else(|| Error::Hypothesis(format!("no element of order {order} generates together with H")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn icosahedral_tower_levels() {
        let t = Tower::icosahedral(SubgroupChoice::Tetrahedral, None).unwrap();
        assert_eq!(t.h.order(), 24);
        assert_eq!(t.f_prime.table.labels()[1], "psi1");
        assert!(t.is_generating());
        assert_eq!(t.solvable_chain(), Some(vec![24, 8, 4, 2, 1]));
        // orbit sizes sum to the index at each level
        for sigma in 0..t.ambient.order() {
            for lv in t.levels() {
                let s: usize = t.frobenius_orbits(sigma, lv).iter().sum();
                assert_eq!(s, t.ambient.order() / lv.group().order());
            }
        }
    }

    #[test]
    fn quaternion_is_normal_in_tetrahedral() {
        let g = named_group("sl2z5").unwrap();
        let a4 = choose_subgroup(&g, &SubgroupChoice::Tetrahedral).unwrap();
        let q = choose_subgroup(&g, &SubgroupChoice::Quaternion).unwrap();
        assert!(q.is_subset_of(&a4));
        let (a4g, map) = g.subgroup_as_group(&a4, "A4~");
        let local: Vec<usize> = q.elements().iter().map(|&x| map.iter().position(|&y| y == x as usize).unwrap()).collect();
        let ql = a4g.subgroup_from_elements(&local).unwrap();
        assert!(a4g.is_normal(&ql));
        assert_eq!(a4g.order() / ql.order(), 3);
    }

    #[test]
    fn twisted_tower() {
        let t = Tower::icosahedral(SubgroupChoice::Tetrahedral, Some("quaternion")).unwrap();
        assert_eq!(t.ambient.order(), 960);
        assert_eq!(t.f_prime.group().order(), 192);
        assert_eq!(t.e.group().order(), 8);
        let th = t.e.table.by_label("Theta2").unwrap();
        assert_eq!(&t.tau_twist(th).unwrap(), th);
    }
}
