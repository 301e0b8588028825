//! Trace identities on Galois-type spectra.
//!
//! Each side of an identity is a weighted sum over the `n`-dimensional
//! irreducibles of one tower level.  An entry contributes its Hecke trace
//! times the normalised residue of `L(s, pi_E x pi_E^{tau v})`, and that
//! residue depends only on the restriction `pi_E`.  The sides are therefore
//! compared in two ways:
//!
//! * symbolically, as exact coefficient sums per restricted character;
//! * numerically, after multiplying each restricted character by Laurent
//!   data from a synthetic Chebotarev stream.

use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::{
    chebotarev_stream_with_prefix, hom_i_dim, laurent_at_1, pole_order_galois, residue_term, smoothed_sum, BumpKernel,
    EulerData, Orientation, PoleProfile, StreamPrime,
};
use crate::chars::{restrict, CharacterTable, ClassFunction, Embedding};
use crate::error::{Error, Result};
use crate::exactnum::{Cyclotomic, Rational};
use crate::groups::FiniteGroup;
use crate::hecke::{
    base_change_subst, dirichlet_via_euler, dirichlet_via_hecke, rankin_selberg_power_sums, satake_from_galois,
    EulerFactor, PlaceStructure, RankinSelbergPlace, SatakePoint, SymPoly,
};
use crate::params::{check_index_condition, descent_fibers, is_primitive, is_rho_type, twist_orbits, InductionSource};
use crate::tower::{Level, Tower};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Filters {
    pub primitive_only: bool,
    pub exclude_rho_type: bool,
}

impl Filters {
    pub const NONE: Filters = Filters { primitive_only: false, exclude_rho_type: false };
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumEntry {
    pub label: String,
    #[serde(skip)]
    pub chi: ClassFunction,
    pub orbit: usize,
    pub primitive: Option<bool>,
    pub rho_type: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumModel {
    pub level: String,
    pub n: usize,
    pub filters: Filters,
    pub entries: Vec<SpectrumEntry>,
    /// Twist orbits (by label) of all `n`-dimensional irreducibles before filtering.
    pub orbits: Vec<Vec<String>>,
}

/// Levels `K x T` for proper subgroups `K` of the level's base part with `[G_L : K] | n`.
pub fn e_intermediate_sources(tower: &Tower, level: &Level, n: usize) -> Result<Vec<InductionSource>> {
    let base_part: Vec<usize> = if Arc::ptr_eq(level.group(), tower.f.group()) {
        (0..tower.base.order()).collect()
    } else if Arc::ptr_eq(level.group(), tower.f_prime.group()) {
        tower.h_in_base.map.clone()
    } else {
        return Ok(Vec::new());
    };
    let (bg, bmap) = tower.base.subgroup_as_group(&tower.base.subgroup_from_elements(&base_part)?, "B");
    let mut out = Vec::new();
    for (i, k) in bg.all_subgroups_up_to_conjugacy().into_iter().enumerate() {
        let idx = bg.order() / k.order();
        if idx <= 1 || n % idx != 0 {
            continue;
        }
        let els: Vec<usize> = k.elements().iter().map(|&x| bmap[x as usize]).collect();
        let kk = tower.base.subgroup_from_elements(&els)?;
        let name = format!("K{}_{i}", k.order());
        let lv = tower.intermediate_level(&kk, &name)?;
        let map = lv
            .embed
            .map
            .iter()
            .map(|&x| level.embed.preimage(x).ok_or_else(|| Error::Group("intermediate level escapes".into())))
            .collect::<Result<Vec<_>>>()?;
        out.push(InductionSource { name, embed: Embedding::new(lv.group().clone(), level.group().clone(), map)?, table: lv.table });
    }
    Ok(out)
}

/// The `n`-dimensional irreducibles of a level, with certificates and filters applied.
pub fn build_spectrum(tower: &Tower, level: &Level, n: usize, filters: Filters) -> Result<SpectrumModel> {
    let table = &level.table;
    let idx = table.irreducibles_of_degree(n as i64);
    let e_in = tower.e_into(level)?;
    let orbit_sets = twist_orbits(&idx, table, &e_in)?;
    let sources = if filters.primitive_only { e_intermediate_sources(tower, level, n)? } else { Vec::new() };
    let mut entries = Vec::new();
    for &i in &idx {
        let chi = table.row(i).clone();
        let orbit = orbit_sets.iter().position(|o| o.contains(&i)).unwrap_or(0);
        let primitive = if filters.primitive_only { Some(is_primitive(&chi, table, &sources)?.primitive) } else { None };
        let rho_type = is_rho_type(&chi, table, &e_in)?;
        if primitive == Some(false) || (filters.exclude_rho_type && rho_type) {
            continue;
        }
        entries.push(SpectrumEntry { label: table.label(i).to_string(), chi, orbit, primitive, rho_type });
    }
    let orbits = orbit_sets.iter().map(|o| o.iter().map(|&i| table.label(i).to_string()).collect()).collect();
    Ok(SpectrumModel { level: level.name.clone(), n, filters, entries, orbits })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Theorem {
    /// Index-condition identity with `E`-primitive spectra.
    One,
    /// Icosahedral identity normalised by `D_3`.
    TwoA,
    /// Icosahedral identity over entries not of `rho`-type.
    TwoB,
    /// Identity with a Hecke insertion, normalised by `D_{n^2-1}`.
    Three,
    /// `n = 1` with no filters.
    Abelian,
}

impl Theorem {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "1" | "one" => Ok(Theorem::One),
            "2a" | "2A" | "two-a" => Ok(Theorem::TwoA),
            "2b" | "2B" | "two-b" => Ok(Theorem::TwoB),
            "3" | "three" => Ok(Theorem::Three),
            "abelian" | "0" => Ok(Theorem::Abelian),
            _ => Err(Error::Config(format!("unknown theorem selector '{s}'"))),
        }
    }
}

/// `X^{-1}` or `D_m^{-1}` with `D_m = d^m/ds^m (phi~(s) X^s)|_{s=1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Normalizer {
    X,
    D(usize),
}

impl Normalizer {
    /// Pole order an entry needs in order to survive the limit.
    pub fn pole_needed(&self) -> usize {
        match self {
            Normalizer::X => 1,
            Normalizer::D(m) => m + 1,
        }
    }
}

/// `scale * prod_{v' | v_1} (h_j(t[v']) + shift)` over the `F'`-places above a chosen base prime.
#[derive(Clone, Debug, Serialize)]
pub struct HeckeInsertion {
    pub frob_class: String,
    pub q: u64,
    pub j: usize,
    pub shift: i64,
    #[serde(serialize_with = "ser_rational")]
    pub scale: Rational,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StreamSpec {
    pub seed: u64,
    pub bound: u64,
}

#[derive(Clone, Debug)]
pub struct TraceIdentitySpec {
    pub theorem: Theorem,
    pub n: usize,
    pub tower: Arc<Tower>,
    pub hecke: Option<HeckeInsertion>,
    pub kernel: BumpKernel,
    pub stream: Option<StreamSpec>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub side: String,
    pub label: String,
    pub trace: String,
    pub trace_numeric: f64,
    pub hom_i_dim: usize,
    pub pole_order: usize,
    pub key: String,
    pub weight: String,
    pub weight_numeric: f64,
    /// Normalised limit of the entry's smoothed sum (numeric mode only).
    pub limit: Option<f64>,
    pub contribution: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct KeyRow {
    pub key: String,
    pub pole_order: usize,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
    pub limit: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberRow {
    pub lhs: String,
    pub members: Vec<String>,
    pub count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub theorem: Theorem,
    pub n: usize,
    pub normalizer: Normalizer,
    pub lhs_prefactor: String,
    pub rows: Vec<Row>,
    pub keys: Vec<KeyRow>,
    pub lhs_orbits: Vec<Vec<String>>,
    pub rhs_orbits: Vec<Vec<String>>,
    pub fibers: Vec<FiberRow>,
    /// `(rhs entry, lhs entry it restricts to)`.
    pub base_change_map: Vec<(String, Option<String>)>,
    pub symbolic_residual: f64,
    pub lhs_total: Option<f64>,
    pub rhs_total: Option<f64>,
    pub numeric_residual: Option<f64>,
    pub pass: bool,
}

const SYMBOLIC_TOL: f64 = 1e-6;
const NUMERIC_TOL: f64 = 1e-2;

fn check_hypotheses(spec: &TraceIdentitySpec) -> Result<()> {
    let t = &spec.tower;
    let n = spec.n;
    let g = &t.base;
    let need = |ok: bool, msg: String| if ok { Ok(()) } else { Err(Error::Hypothesis(msg)) };
    match spec.theorem {
        Theorem::One => {
            need(check_index_condition(g, n), format!("{} has a proper subgroup of index dividing {n}", g.name()))?;
            let table = CharacterTable::compute(g)?;
            let small = table.degrees().iter().filter(|&&d| d >= 1 && d as usize <= n).count();
            need(small == 1, format!("{} has a nontrivial irreducible of degree at most {n}", g.name()))?;
            need(num_integer::gcd(t.h.order(), n) == 1, format!("[E:F'] = {} is not coprime to {n}", t.h.order()))?;
            need(t.is_generating(), "<tau, H> is not the whole group".into())?;
        }
        Theorem::TwoA | Theorem::TwoB => {
            need(g.order() == 120 && g.is_perfect(), "the base must be SL2(Z/5)".into())?;
            need(t.h.order() == 24, "F' must be the fixed field of the binary tetrahedral group".into())?;
            need(n == 2, "this identity is stated for n = 2".into())?;
            need(g.elem_order(t.tau) == 5 && t.is_generating(), "tau must have order 5 and generate with H".into())?;
        }
        Theorem::Three => {
            need(g.order() == 120 && g.is_perfect(), "the base must be SL2(Z/5)".into())?;
            let want = match n {
                2 => 8,
                3 => 24,
                _ => return Err(Error::Hypothesis(format!("n = {n} has no designated subgroup"))),
            };
            need(t.h.order() == want, format!("n = {n} needs the subgroup of order {want}"))?;
            need(t.is_generating(), "<tau, H> is not the whole group".into())?;
        }
        Theorem::Abelian => {
            need(n == 1, "the abelian case has n = 1".into())?;
        }
    }
    Ok(())
}

fn theorem_shape(th: Theorem, n: usize, h_ab: u64) -> (Rational, Normalizer, Filters) {
    let r = |a: i64, b: i64| Rational::new(BigInt::from(a), BigInt::from(b));
    let hab = h_ab as i64;
    match th {
        Theorem::One => (r(1, hab), Normalizer::X, Filters { primitive_only: true, exclude_rho_type: false }),
        Theorem::TwoA => (r(2, hab), Normalizer::D(3), Filters::NONE),
        Theorem::TwoB => (r(1, hab), Normalizer::X, Filters { primitive_only: false, exclude_rho_type: true }),
        Theorem::Three => (r(2, 1), Normalizer::D(n * n - 1), Filters::NONE),
        Theorem::Abelian => (r(1, hab), Normalizer::X, Filters::NONE),
    }
}

/// Hecke polynomial and the place data it lives on.
struct Insertion {
    poly: SymPoly,
    split: PlaceStructure,
}

fn build_insertion(t: &Tower, h: &HeckeInsertion, n: usize) -> Result<Insertion> {
    let c = t
        .base
        .class_by_label(&h.frob_class)
        .ok_or_else(|| Error::Config(format!("unknown class '{}'", h.frob_class)))?;
    let rep = t.base.class_rep(c);
    let sigma = match &t.twist {
        None => rep,
        Some(_) => t.ambient.pair_index(rep, 0),
    };
    let split = PlaceStructure::new(&t.ambient, &[("F", &t.f.embed), ("F'", &t.f_prime.embed)], sigma, h.q)?;
    let mut poly = SymPoly::constant(Cyclotomic::from_rational(1, &h.scale));
    for v in &split.level("F'").unwrap().places {
        let block = [crate::hecke::Block { place: v.id.clone(), n }];
        let mut hj = SymPoly::zero();
        for e in compositions(h.j, n) {
            hj = hj.add(&SymPoly::monomial(&block, &e, Cyclotomic::one(1))?)?;
        }
        let factor = hj.add(&SymPoly::constant(Cyclotomic::from_int(1, h.shift)))?;
        poly = poly.mul(&factor)?;
    }
    Ok(Insertion { poly, split })
}

/// Exponent vectors of length `n` summing to `j` (the monomials of `h_j`).
fn compositions(j: usize, n: usize) -> Vec<Vec<i32>> {
    if n == 0 {
        return if j == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=j {
        for mut rest in compositions(j - first, n - 1) {
            rest.insert(0, first as i32);
            out.push(rest);
        }
    }
    out
}

fn hecke_trace(ins: Option<&Insertion>, level_name: &str, chi: &ClassFunction) -> Result<Cyclotomic> {
    let Some(ins) = ins else { return Ok(Cyclotomic::one(1)) };
    let poly = if level_name == "F'" { ins.poly.clone() } else { base_change_subst(&ins.poly, std::slice::from_ref(&ins.split), level_name)? };
    let mut x = SatakePoint::new();
    for v in &ins.split.level(level_name).ok_or_else(|| Error::Hecke(format!("no places at {level_name}")))?.places {
        x.insert_roots(&v.id, satake_from_galois(chi, v.frob)?);
    }
    poly.eval_at(&x)
}

/// Laurent data of `L(s, Pi x Pi2^v)` for characters of the `E` level, from a stream.
pub fn rankin_selberg_euler(tower: &Tower, pi: &ClassFunction, pi2: &ClassFunction, stream: &[StreamPrime], bound: u64) -> Result<EulerData> {
    let e = tower.e.group();
    EulerData::from_stream(stream, bound, |sp| {
        tower
            .places(&tower.e, sp.element)
            .into_iter()
            .map(|pl| {
                let o = e.elem_order(pl.frob);
                let traces = (0..o)
                    .map(|m| {
                        let y = e.pow(pl.frob, m as i64);
                        (pi.at_element(y) * &pi2.at_element(y).conj()).to_complex()
                    })
                    .collect();
                (pl.f as u32, e.class_label(e.class_of(pl.frob)).to_string(), traces)
            })
            .collect()
    })
}

struct KeyAcc {
    chi: ClassFunction,
    name: String,
    pole: usize,
    lhs: Cyclotomic,
    rhs: Cyclotomic,
    limit: Option<f64>,
}

/// Both sides of the selected identity, compared symbolically and (with a stream) numerically.
pub fn verify_identity(spec: &TraceIdentitySpec) -> Result<Report> {
    check_hypotheses(spec)?;
    let t = &spec.tower;
    let h_ab = t.h.abelianization().iter().product::<u64>().max(1);
    let (pref, norm, filters) = theorem_shape(spec.theorem, spec.n, h_ab);
    let lhs = build_spectrum(t, &t.f_prime, spec.n, filters)?;
    let rhs = build_spectrum(t, &t.f, spec.n, filters)?;
    let ins = spec.hecke.as_ref().map(|h| build_insertion(t, h, spec.n)).transpose()?;
    let pref_c = Cyclotomic::from_rational(1, &pref);
    let one = Cyclotomic::one(1);

    let mut keys: Vec<KeyAcc> = Vec::new();
    let mut rows = Vec::new();
    for (side, model, level, weight) in [("lhs", &lhs, &t.f_prime, &pref_c), ("rhs", &rhs, &t.f, &one)] {
        let e_in = tower_e_into(t, level)?;
        let computed: Vec<(ClassFunction, ClassFunction, Cyclotomic)> = model
            .entries
            .par_iter()
            .map(|en| {
                let pe = restrict(&en.chi, &e_in)?;
                let pt = t.tau_twist(&pe)?;
                let tr = hecke_trace(ins.as_ref(), &level.name, &en.chi)?;
                Ok((pe, pt, tr))
            })
            .collect::<Result<Vec<_>>>()?;
        for (en, (pe, pt, tr)) in model.entries.iter().zip(computed) {
            let pole = pole_order_galois(&pe, &pt)?;
            let constituents = |f: &ClassFunction| -> Result<Vec<ClassFunction>> {
                let m = t.e.table.decompose(f)?;
                Ok(m.support().iter().flat_map(|&(i, k)| std::iter::repeat_n(t.e.table.row(i).clone(), k as usize)).collect())
            };
            let dual_twist: Vec<ClassFunction> = constituents(&pt)?.iter().map(|c| c.dual()).collect();
            let hom = hom_i_dim(&constituents(&pe)?, &dual_twist);
            if hom != pole {
                return Err(Error::CheckFailed(format!("Hom_I count {hom} differs from the pole order {pole} for {}", en.label)));
            }
            if pole > norm.pole_needed() {
                return Err(Error::Analytic(format!(
                    "{} has a pole of order {pole}, so the normalised limit diverges",
                    en.label
                )));
            }
            let w = weight.try_mul(&tr)?;
            let name = t.e.table.name_of(&pe);
            if pole == norm.pole_needed() {
                let k = match keys.iter().position(|k| k.chi == pe) {
                    Some(k) => k,
                    None => {
                        keys.push(KeyAcc { chi: pe.clone(), name: name.clone(), pole, lhs: Cyclotomic::zero(1), rhs: Cyclotomic::zero(1), limit: None });
                        keys.len() - 1
                    }
                };
                if side == "lhs" {
                    keys[k].lhs = keys[k].lhs.try_add(&w)?;
                } else {
                    keys[k].rhs = keys[k].rhs.try_add(&w)?;
                }
            }
            rows.push(Row {
                side: side.into(),
                label: en.label.clone(),
                trace: tr.render_exact(),
                trace_numeric: tr.to_complex().re,
                hom_i_dim: hom,
                pole_order: pole,
                key: name,
                weight: w.render_exact(),
                weight_numeric: w.to_complex().re,
                limit: None,
                contribution: None,
            });
        }
    }

    // symbolic comparison
    let mut sym_res: f64 = 0.0;
    for k in &keys {
        let d = k.lhs.try_add(&-k.rhs.clone())?;
        if !d.is_zero() {
            sym_res = sym_res.max(d.to_complex().norm() / k.lhs.to_complex().norm().max(1e-300));
        }
    }

    // numeric comparison
    let (mut lt, mut rt, mut nres) = (None, None, None);
    if let Some(st) = spec.stream {
        let stream = chebotarev_stream_with_prefix(&t.ambient, st.seed, st.bound, &[]);
        let m = norm.pole_needed() - 1;
        let mut fact = 1.0;
        for i in 1..=m {
            fact *= i as f64;
        }
        let scale = match norm {
            Normalizer::X => spec.kernel.mellin(Complex64::new(1.0, 0.0))?.re,
            Normalizer::D(_) => 1.0,
        };
        let limits: Vec<f64> = keys
            .par_iter()
            .map(|k| {
                let pt = t.tau_twist(&k.chi)?;
                let ed = rankin_selberg_euler(t, &k.chi, &pt, &stream, st.bound)?;
                let prof = laurent_at_1(&ed, Some(k.pole))?;
                Ok(prof.c(-(m as i64 + 1)).re / fact * scale)
            })
            .collect::<Result<Vec<_>>>()?;
        let (mut l, mut r) = (0.0, 0.0);
        for (k, lim) in keys.iter_mut().zip(limits) {
            k.limit = Some(lim);
        }
        for row in rows.iter_mut() {
            let lim = keys.iter().find(|k| k.name == row.key && k.pole == row.pole_order).and_then(|k| k.limit).unwrap_or(0.0);
            let c = row.weight_numeric * lim;
            row.limit = Some(lim);
            row.contribution = Some(c);
            if row.side == "lhs" {
                l += c;
            } else {
                r += c;
            }
        }
        lt = Some(l);
        rt = Some(r);
        nres = Some((l - r).abs() / l.abs().max(1e-300));
    }

    // fibers and base change
    let fp_in_f = t.f_prime_into_f()?;
    let mut fibers = Vec::new();
    for en in &lhs.entries {
        let r = descent_fibers(&en.chi, &fp_in_f, &t.f.table, &en.label)?;
        fibers.push(FiberRow { lhs: en.label.clone(), members: r.members.iter().map(|m| m.label.clone()).collect(), count: r.count });
    }
    let mut bc = Vec::new();
    for en in &rhs.entries {
        let r = restrict(&en.chi, &fp_in_f)?;
        bc.push((en.label.clone(), lhs.entries.iter().find(|l| l.chi == r).map(|l| l.label.clone())));
    }

    let pass = sym_res <= SYMBOLIC_TOL && nres.map(|x| x <= NUMERIC_TOL).unwrap_or(true);
    Ok(Report {
        theorem: spec.theorem,
        n: spec.n,
        normalizer: norm,
        lhs_prefactor: pref.to_string(),
        rows,
        keys: keys
            .iter()
            .map(|k| KeyRow {
                key: k.name.clone(),
                pole_order: k.pole,
                lhs: k.lhs.render_exact(),
                rhs: k.rhs.render_exact(),
                equal: k.lhs == k.rhs,
                limit: k.limit,
            })
            .collect(),
        lhs_orbits: lhs.orbits,
        rhs_orbits: rhs.orbits,
        fibers,
        base_change_map: bc,
        symbolic_residual: sym_res,
        lhs_total: lt,
        rhs_total: rt,
        numeric_residual: nres,
        pass,
    })
}

fn tower_e_into(t: &Tower, level: &Level) -> Result<Embedding> {
    t.e_into(level)
}

/// Sum of the LHS and RHS rows for quick comparisons (symbolic weights).
pub fn lhs_trace_sum(r: &Report) -> Vec<(String, String)> {
    r.keys.iter().map(|k| (k.key.clone(), k.lhs.clone())).collect()
}

pub fn rhs_trace_sum(r: &Report) -> Vec<(String, String)> {
    r.keys.iter().map(|k| (k.key.clone(), k.rhs.clone())).collect()
}

// ------------------------------------------------------------------ scenarios

pub fn theorem2_spec(stream: Option<StreamSpec>, filtered: bool) -> Result<TraceIdentitySpec> {
    let t = Tower::icosahedral(crate::tower::SubgroupChoice::Tetrahedral, Some("quaternion"))?;
    Ok(TraceIdentitySpec {
        theorem: if filtered { Theorem::TwoB } else { Theorem::TwoA },
        n: 2,
        tower: Arc::new(t),
        hecke: None,
        kernel: BumpKernel::default(),
        stream,
    })
}

pub fn default_insertion() -> HeckeInsertion {
    HeckeInsertion { frob_class: "C4".into(), q: 11, j: 2, shift: 1, scale: Rational::from_integer(BigInt::from(1)) }
}

pub fn theorem3_spec(n: usize, hecke: Option<HeckeInsertion>, stream: Option<StreamSpec>) -> Result<TraceIdentitySpec> {
    let choice = match n {
        2 => crate::tower::SubgroupChoice::Quaternion,
        3 => crate::tower::SubgroupChoice::Tetrahedral,
        _ => return Err(Error::Config(format!("no designated tower for n = {n}"))),
    };
    Ok(TraceIdentitySpec {
        theorem: Theorem::Three,
        n,
        tower: Arc::new(Tower::icosahedral(choice, None)?),
        hecke,
        kernel: BumpKernel::default(),
        stream,
    })
}

/// `SL2(Z/7) x Q` with `H` generated by `[[1,1],[0,1]]`.
pub fn theorem1_tower() -> Result<Tower> {
    let g = Arc::new(crate::groups::named_group("sl2z7")?);
    let u = g.find(&[1, 1, 0, 1]).ok_or_else(|| Error::Group("unipotent element missing".into()))?;
    let h = g.subgroup_generated(&[u]);
    let t = Arc::new(crate::groups::named_group("quaternion")?);
    let tau = crate::tower::default_tau(&g, &h, 3)?;
    Tower::new(g, &h, "C7", Some(t), tau)
}

pub fn theorem1_spec(stream: Option<StreamSpec>) -> Result<TraceIdentitySpec> {
    Ok(TraceIdentitySpec { theorem: Theorem::One, n: 2, tower: Arc::new(theorem1_tower()?), hecke: None, kernel: BumpKernel::default(), stream })
}

// ------------------------------------------------------------------ Dirichlet identity

#[derive(Clone, Debug, Serialize)]
pub struct DirichletCheck {
    pub bound: u64,
    pub nonzero: usize,
    pub mismatches: Vec<u64>,
    pub classes_seen: Vec<String>,
    #[serde(skip)]
    pub hecke: Vec<Cyclotomic>,
    #[serde(skip)]
    pub euler: Vec<Cyclotomic>,
}

/// Tower `C5 x SL2(Z/5)` over `C5`: `E` is the twist factor and `tau` a generator of `C5`.
pub fn dirichlet_tower() -> Result<Tower> {
    let c5 = Arc::new(crate::groups::named_group("cyclic5")?);
    let t = Arc::new(crate::groups::named_group("sl2z5")?);
    let tau = (1..5).find(|&x| c5.elem_order(x) == 5).unwrap();
    Tower::new(c5.clone(), &c5.trivial_subgroup(), "1", Some(t), tau)
}

/// Stream whose first primes split completely in `C5` with Frobenius running over all `E` classes.
pub fn dirichlet_stream(t: &Tower, seed: u64, bound: u64) -> Vec<StreamPrime> {
    let e = t.e.group();
    let prefix: Vec<usize> = (0..e.num_classes()).map(|c| t.e.embed.map[e.class_rep(c)]).collect();
    chebotarev_stream_with_prefix(&t.ambient, seed, bound, &prefix)
}

/// `sum_m tr f(m) N m^{-s}` against the Euler product of `L(s, Pi x Pi^tau)`, coefficient by coefficient.
pub fn dirichlet_identity(t: &Tower, pi: &ClassFunction, stream: &[StreamPrime], bound: u64) -> Result<DirichletCheck> {
    let n = pi.degree_int().unwrap_or(0) as usize;
    let pi_tau = t.tau_twist(pi)?;
    let e = t.e.group();
    let mut places = Vec::new();
    let mut point = SatakePoint::new();
    let mut factors = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    let ta = t.tau_ambient();
    for sp in stream.iter().filter(|s| s.p <= bound) {
        // route one: explicit places, their tau-translates and Satake points
        let split = PlaceStructure::new(&t.ambient, &[("E", &t.e.embed)], sp.element, sp.p)?;
        for w in &split.level("E").unwrap().places {
            let q = sp.p.checked_pow(w.f as u32).filter(|&q| q <= bound);
            let Some(q) = q else { continue };
            let wt = split.place_containing("E", t.ambient.mul(ta, w.rep)).unwrap();
            point.insert_roots(&w.id, satake_from_galois(pi, w.frob)?);
            places.push(RankinSelbergPlace { w: w.id.clone(), w_tau: wt.id.clone(), q });
            seen.insert(e.class_label(e.class_of(w.frob)).to_string());
        }
        // route two: character values of Pi and Pi^tau at the Frobenius only
        for pl in t.places(&t.e, sp.element) {
            let Some(q) = sp.p.checked_pow(pl.f as u32).filter(|&q| q <= bound) else { continue };
            let mut kmax = 0;
            let mut qq = 1u64;
            while let Some(x) = qq.checked_mul(q).filter(|&x| x <= bound) {
                qq = x;
                kmax += 1;
            }
            factors.push(EulerFactor { q, power_sums: rankin_selberg_power_sums(pi, pl.frob, &pi_tau, pl.frob, kmax) });
        }
    }
    let hecke = dirichlet_via_hecke(&places, n, &point, bound)?;
    let euler = dirichlet_via_euler(&factors, bound)?;
    let mismatches: Vec<u64> = (1..=bound).filter(|&m| hecke[m as usize] != euler[m as usize]).collect();
    Ok(DirichletCheck {
        bound,
        nonzero: hecke.iter().skip(1).filter(|c| !c.is_zero()).count(),
        mismatches,
        classes_seen: seen.into_iter().collect(),
        hecke,
        euler,
    })
}

// ------------------------------------------------------------------ nonvanishing probe

#[derive(Clone, Debug, Serialize)]
pub struct ProbeRow {
    pub pairing: String,
    pub x: f64,
    pub pole_order: usize,
    pub smoothed_over_x: f64,
    pub residue_over_x: f64,
    pub ratio: Option<f64>,
}

/// `X^{-1} sum lambda(m) phi(m/X)` against `X^{-1} Res` for `Pi x Pi^v` and `Pi x Pi^{tau v}`.
pub fn conj_nonzero_probe(t: &Tower, entry: &ClassFunction, level: &Level, xs: &[f64], stream: StreamSpec, kernel: &BumpKernel) -> Result<Vec<ProbeRow>> {
    let pe = restrict(entry, &t.e_into(level)?)?;
    let pt = t.tau_twist(&pe)?;
    let xmax = xs.iter().cloned().fold(0.0, f64::max);
    let m = (xmax * (kernel.c + kernel.r)).ceil() as usize;
    if (m as u64) > stream.bound {
        return Err(Error::Config(format!("stream bound {} is below the largest support point {m}", stream.bound)));
    }
    let s = chebotarev_stream_with_prefix(&t.ambient, stream.seed, stream.bound, &[]);
    let mut out = Vec::new();
    for (name, other) in [("untwisted", &pe), ("twisted", &pt)] {
        let ed = rankin_selberg_euler(t, &pe, other, &s, stream.bound)?;
        let k = pole_order_galois(&pe, other)?;
        let prof = if k == 0 { PoleProfile::zero() } else { laurent_at_1(&ed, Some(k))? };
        let lam = ed.dirichlet(m);
        for &x in xs {
            let sm = smoothed_sum(&lam, kernel, x, Orientation::MOverX)?.re / x;
            let rs = residue_term(kernel, x, &prof)?.re / x;
            out.push(ProbeRow {
                pairing: name.into(),
                x,
                pole_order: k,
                smoothed_over_x: sm,
                residue_over_x: rs,
                ratio: (rs.abs() > 0.0).then(|| sm / rs),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct RatioRow {
    pub x: f64,
    pub smoothed: f64,
    pub residue: f64,
    pub ratio: f64,
    pub error: f64,
}

/// Ratio of the smoothed sum to its residue term for `Pi = m * 1` over the trivial tower.
///
/// Every prime splits completely, so the pairing `Pi x Pi^v` is `zeta^{m^2}` with pole order `m^2`.
pub fn smoothed_asymptotics(mult: i64, xs: &[f64], stream: StreamSpec, kernel: &BumpKernel) -> Result<(usize, Vec<RatioRow>)> {
    if mult < 1 {
        return Err(Error::Config("the multiplicity of the trivial character must be positive".into()));
    }
    let g = Arc::new(crate::groups::named_group("trivial")?);
    let t = Tower::new(g.clone(), &g.trivial_subgroup(), "1", None, 0)?;
    let pi = ClassFunction::trivial(t.e.group()).scale_int(mult);
    let k = pole_order_galois(&pi, &pi)?;
    let xmax = xs.iter().cloned().fold(0.0, f64::max);
    let m = (xmax * (kernel.c + kernel.r)).ceil() as usize;
    if (m as u64) > stream.bound {
        return Err(Error::Config(format!("stream bound {} is below the largest support point {m}", stream.bound)));
    }
    let s = chebotarev_stream_with_prefix(&t.ambient, stream.seed, stream.bound, &[]);
    let ed = rankin_selberg_euler(&t, &pi, &pi, &s, stream.bound)?;
    let prof = laurent_at_1(&ed, Some(k))?;
    let lam = ed.dirichlet(m);
    let rows = xs
        .iter()
        .map(|&x| {
            let sm = smoothed_sum(&lam, kernel, x, Orientation::MOverX)?.re;
            let rs = residue_term(kernel, x, &prof)?.re;
            Ok(RatioRow { x, smoothed: sm, residue: rs, ratio: sm / rs, error: (sm / rs - 1.0).abs() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((k, rows))
}

/// Element of `g` with the given class label, as an ambient element of `t`.
pub fn ambient_class_rep(t: &Tower, g: &FiniteGroup, label: &str) -> Option<usize> {
    let c = g.class_by_label(label)?;
    let x = g.class_rep(c);
    Some(match &t.twist {
        None => x,
        Some(_) => t.ambient.pair_index(x, 0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(m: &SpectrumModel) -> Vec<&str> {
        m.entries.iter().map(|e| e.label.as_str()).collect()
    }

    #[test]
    fn spectra() {
        let t = Tower::icosahedral(crate::tower::SubgroupChoice::Tetrahedral, None).unwrap();
        assert_eq!(labels(&build_spectrum(&t, &t.f, 2, Filters::NONE).unwrap()), vec!["theta2", "theta2'"]);
        assert_eq!(labels(&build_spectrum(&t, &t.f_prime, 2, Filters::NONE).unwrap()), vec!["psi2", "psi2psi1", "psi2psi1^2"]);
        let t1 = theorem1_tower().unwrap();
        let prim = Filters { primitive_only: true, exclude_rho_type: false };
        let g = Arc::new(crate::groups::named_group("sl2z7").unwrap());
        let solo = Tower::new(g.clone(), &g.trivial_subgroup(), "1", None, 1).unwrap();
        assert_eq!(labels(&build_spectrum(&solo, &solo.f, 1, prim).unwrap()), vec![solo.f.table.label(0)]);
        let s = build_spectrum(&t1, &t1.f_prime, 2, prim).unwrap();
        assert_eq!(s.entries.len(), 7);
    }

    #[test]
    fn theorem2_symbolic() {
        for filtered in [false, true] {
            let r = verify_identity(&theorem2_spec(None, filtered).unwrap()).unwrap();
            assert!(r.pass, "{:?}", r.keys);
            assert_eq!(r.keys.len(), if filtered { 1 } else { 4 });
            assert!(r.keys.iter().all(|k| k.equal));
        }
    }

    #[test]
    fn theorem3_symbolic() {
        let r = verify_identity(&theorem3_spec(2, None, None).unwrap()).unwrap();
        assert!(r.pass);
        assert_eq!(r.fibers[0].count, 2);
        let r = verify_identity(&theorem3_spec(3, Some(default_insertion()), None).unwrap()).unwrap();
        assert!(r.pass, "{:?}", r.keys);
        // orbits 1, 2, 2 of C4 on F'-cosets: (2 + 1)(6 + 1)(6 + 1) per entry
        assert_eq!(r.keys[0].lhs, "294");
        assert_eq!(r.keys[0].rhs, "294");
        assert!(r.base_change_map.iter().all(|(_, l)| l.as_deref() == Some("psi3")));
        // scaling the insertion scales both sides
        let mut h = default_insertion();
        h.scale = Rational::new(BigInt::from(3), BigInt::from(2));
        let r2 = verify_identity(&theorem3_spec(3, Some(h), None).unwrap()).unwrap();
        assert_eq!(r2.keys[0].rhs, "441");
    }

    #[test]
    fn theorem1_symbolic() {
        let r = verify_identity(&theorem1_spec(None).unwrap()).unwrap();
        assert!(r.pass, "{:?}", r.keys);
        assert_eq!(r.keys.len(), 1);
        assert_eq!(r.keys[0].lhs, "1");
    }

    #[test]
    fn abelian_case() {
        let t = Tower::icosahedral(crate::tower::SubgroupChoice::Tetrahedral, Some("quaternion")).unwrap();
        let spec = TraceIdentitySpec { theorem: Theorem::Abelian, n: 1, tower: Arc::new(t), hecke: None, kernel: BumpKernel::default(), stream: None };
        let r = verify_identity(&spec).unwrap();
        assert!(r.pass);
        assert_eq!(r.keys.len(), 4);
    }

    #[test]
    #[ignore]
    fn numeric_theorem2() {
        let t0 = std::time::Instant::now();
        for filtered in [false, true] {
            let r = verify_identity(&theorem2_spec(Some(StreamSpec { seed: 7, bound: 100_000 }), filtered).unwrap()).unwrap();
            eprintln!("{:?} {:?} {:?} {:?}", r.lhs_total, r.rhs_total, r.numeric_residual, r.keys.iter().map(|k| k.limit).collect::<Vec<_>>());
            assert!(r.pass);
        }
        eprintln!("{:?}", t0.elapsed());
    }

    #[test]
    fn dirichlet_routes_agree() {
        let t = dirichlet_tower().unwrap();
        let stream = dirichlet_stream(&t, 3, 200);
        let theta2 = t.e.table.by_label("theta2").unwrap().clone();
        let d = dirichlet_identity(&t, &theta2, &stream, 200).unwrap();
        assert!(d.mismatches.is_empty(), "{:?}", d.mismatches);
        assert_eq!(d.classes_seen.len(), 9);
        assert!(d.hecke[1].is_one());
        assert!(d.nonzero > 50);
    }

    #[test]
    fn probe_shapes() {
        let t = Tower::icosahedral(crate::tower::SubgroupChoice::Tetrahedral, Some("quaternion")).unwrap();
        let lv = t.e.clone();
        let chi = lv.table.irreducibles_of_degree(2).first().map(|&i| lv.table.row(i).clone()).unwrap();
        let rows = conj_nonzero_probe(&t, &chi, &lv, &[200.0], StreamSpec { seed: 1, bound: 400 }, &BumpKernel::default()).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.pole_order == 1 && r.smoothed_over_x.is_finite()));
    }

    #[test]
    fn zeta_ratio_small() {
        let (k, rows) = smoothed_asymptotics(1, &[100.0, 1000.0], StreamSpec { seed: 1, bound: 20_000 }, &BumpKernel::default()).unwrap();
        assert_eq!(k, 1);
        assert!(rows.iter().all(|r| r.error < 0.05), "{rows:?}");
        assert!(smoothed_asymptotics(1, &[1e5], StreamSpec { seed: 1, bound: 1000 }, &BumpKernel::default()).is_err());
    }

    #[test]
    fn hypotheses_are_checked() {
        let mut spec = theorem3_spec(2, None, None).unwrap();
        spec.n = 3;
        assert!(matches!(verify_identity(&spec), Err(Error::Hypothesis(_))));
    }
}
