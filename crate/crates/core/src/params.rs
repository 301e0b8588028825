//! Galois-type parameters: characters of tower levels, restriction as base
//! change, primitivity, descent fibers, extension and Clifford splitting.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::chars::{induce, inner_product_int, restrict, CharacterTable, ClassFunction, Embedding};
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::groups::{FiniteGroup, SubgroupHandle};
use crate::tower::{subgroup_group, Tower};

/// An `n`-dimensional parameter: a character of a tower level.
#[derive(Clone, Debug)]
pub struct GaloisParameter {
    pub label: String,
    pub level: String,
    pub chi: ClassFunction,
}

impl GaloisParameter {
    pub fn new(label: &str, level: &str, chi: ClassFunction) -> Result<Self> {
        let d = chi.degree_int().filter(|d| *d > 0);
        if d.is_none() {
            return Err(Error::Parameter(format!("{label} has no positive integral degree")));
        }
        Ok(GaloisParameter { label: label.into(), level: level.into(), chi })
    }

    pub fn dim(&self) -> usize {
        self.chi.degree_int().unwrap_or(0) as usize
    }
}

/// Restrict along `emb` (the parameter must live on `emb.parent`).
pub fn base_change(p: &GaloisParameter, emb: &Embedding, target_level: &str) -> Result<GaloisParameter> {
    if !Arc::ptr_eq(p.chi.group(), &emb.parent) {
        return Err(Error::Parameter(format!("{} does not live on the source of this base change", p.label)));
    }
    let chi = restrict(&p.chi, emb)?;
    Ok(GaloisParameter { label: format!("{}|{}", p.label, target_level), level: target_level.into(), chi })
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberMember {
    pub label: String,
    #[serde(skip)]
    pub chi: ClassFunction,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    pub base: String,
    pub members: Vec<FiberMember>,
    pub count: usize,
    /// `sum_members <member|_H, p>`, which equals `sum_members <Ind p, member>`.
    pub reciprocity_total: i64,
}

/// Irreducibles of `table.group()` restricting exactly to `p` along `emb`.
pub fn descent_fibers(p: &ClassFunction, emb: &Embedding, table: &CharacterTable, base_label: &str) -> Result<FiberReport> {
    if !Arc::ptr_eq(p.group(), &emb.sub) || !Arc::ptr_eq(table.group(), &emb.parent) {
        return Err(Error::Parameter("fiber scan over mismatched groups".into()));
    }
    let hits: Vec<Option<FiberMember>> = table
        .rows()
        .par_iter()
        .zip(table.labels().par_iter())
        .map(|(row, label)| {
            let r = restrict(row, emb).ok()?;
            (r == *p).then(|| FiberMember { label: label.clone(), chi: row.clone() })
        })
        .collect();
    let members: Vec<FiberMember> = hits.into_iter().flatten().collect();
    let mut total = 0;
    let ind = induce(p, emb)?;
    for m in &members {
        let a = inner_product_int(&restrict(&m.chi, emb)?, p)?;
        let b = inner_product_int(&ind, &m.chi)?;
        if a != b {
            return Err(Error::Parameter("Frobenius reciprocity failed in a fiber".into()));
        }
        total += a;
    }
    Ok(FiberReport { base: base_label.into(), count: members.len(), members, reciprocity_total: total })
}

/// Irreducibles of `G` whose restriction to the normal subgroup `H` is exactly `chi0`.
pub fn invariant_extension(chi0: &ClassFunction, emb: &Embedding, table: &CharacterTable, label: &str) -> Result<FiberReport> {
    let g = &emb.parent;
    let img = emb.image();
    if !g.is_normal(&img) {
        return Err(Error::Parameter(format!("{} is not normal", emb.sub.name())));
    }
    for x in img.elements().iter().map(|&x| x as usize) {
        let local = emb.preimage(x).unwrap();
        for gen in g.generators() {
            let y = emb.preimage(g.conj(gen, x)).unwrap();
            if chi0.at_element(local) != chi0.at_element(y) {
                return Err(Error::Parameter(format!("{label} is not invariant under conjugation by {}", g.name())));
            }
        }
    }
    descent_fibers(chi0, emb, table, label)
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimitivityCertificate {
    pub primitive: bool,
    /// `(subgroup name, subgroup order, character label)` with `Ind = p`.
    pub witness: Option<(String, usize, String)>,
    pub subgroups_checked: usize,
}

/// A candidate subgroup for induction, with its table.
#[derive(Clone, Debug)]
pub struct InductionSource {
    pub name: String,
    pub embed: Embedding,
    pub table: Arc<CharacterTable>,
}

/// Proper subgroups of `g` up to conjugacy, each with its table.
pub fn proper_subgroup_sources(g: &Arc<FiniteGroup>) -> Result<Vec<InductionSource>> {
    g.all_subgroups_up_to_conjugacy()
        .into_iter()
        .filter(|s| s.order() < g.order())
        .map(|s| source_for(g, &s))
        .collect()
}

pub fn source_for(g: &Arc<FiniteGroup>, s: &SubgroupHandle) -> Result<InductionSource> {
    let name = format!("K{}", s.order());
    let (k, map) = subgroup_group(g, s, &name)?;
    let k = Arc::new(k);
    let embed = Embedding::new(k.clone(), g.clone(), map)?;
    let table = Arc::new(CharacterTable::compute(&k)?);
    Ok(InductionSource { name, embed, table })
}

/// Scan the candidates for an irreducible `psi` with `Ind(psi) = p`.
pub fn is_primitive(p: &ClassFunction, table: &CharacterTable, sources: &[InductionSource]) -> Result<PrimitivityCertificate> {
    if !table.is_irreducible(p) {
        return Ok(PrimitivityCertificate { primitive: false, witness: None, subgroups_checked: 0 });
    }
    let d = p.degree_int().unwrap_or(0) as usize;
    let mut checked = 0;
    for src in sources {
        let idx = src.embed.index();
        if idx <= 1 || d % idx != 0 {
            continue;
        }
        checked += 1;
        for (row, label) in src.table.rows().iter().zip(src.table.labels()) {
            if row.degree_int() != Some((d / idx) as i64) {
                continue;
            }
            // Frobenius reciprocity screens before the full induction
            if inner_product_int(&restrict(p, &src.embed)?, row)? == 0 {
                continue;
            }
            if induce(row, &src.embed)? == *p {
                return Ok(PrimitivityCertificate {
                    primitive: false,
                    witness: Some((src.name.clone(), src.embed.sub.order(), label.clone())),
                    subgroups_checked: checked,
                });
            }
        }
    }
    Ok(PrimitivityCertificate { primitive: true, witness: None, subgroups_checked: checked })
}

/// True iff no proper subgroup has index dividing `n`.
pub fn check_index_condition(g: &FiniteGroup, n: usize) -> bool {
    g.all_subgroups_up_to_conjugacy()
        .iter()
        .filter(|s| s.order() < g.order())
        .all(|s| n % (g.order() / s.order()) != 0)
}

#[derive(Clone, Debug, Serialize)]
pub struct CliffordSplit {
    pub constituent: String,
    pub inertia_order: usize,
    /// `rho (x) phi1 = p` with `rho|_H` irreducible and `phi1` trivial on `H`.
    pub tensor: Option<(String, String)>,
    /// `Ind_K^G(psi) = p`.
    pub induced: Option<(String, usize, String)>,
}

/// Clifford decomposition of an irreducible `p` of `G` relative to a normal `H`.
pub fn clifford_split(
    p: &ClassFunction,
    emb: &Embedding,
    g_table: &CharacterTable,
    h_table: &CharacterTable,
    sources: &[InductionSource],
) -> Result<CliffordSplit> {
    let g = &emb.parent;
    if !g.is_normal(&emb.image()) {
        return Err(Error::Parameter("Clifford splitting needs a normal subgroup".into()));
    }
    if !g_table.is_irreducible(p) {
        return Err(Error::Parameter("Clifford splitting needs an irreducible character".into()));
    }
    let res = restrict(p, emb)?;
    let m = h_table.decompose(&res)?;
    let (ti, _) = m.support()[0];
    let theta = h_table.row(ti);
    // inertia group of theta
    let h = &emb.sub;
    let inertia: Vec<usize> = (0..g.order())
        .filter(|&x| {
            (0..h.num_classes()).all(|c| {
                let y = emb.map[h.class_rep(c)];
                let z = emb.preimage(g.conj(x, y)).unwrap();
                theta.at_element(z) == theta.value(c)
            })
        })
        .collect();
    let mut tensor = None;
    if inertia.len() == g.order() {
        'outer: for (ri, rho) in g_table.rows().iter().enumerate() {
            if restrict(rho, emb)? != *theta {
                continue;
            }
            for (fi, phi) in g_table.rows().iter().enumerate() {
                let pr = restrict(phi, emb)?;
                if pr != ClassFunction::trivial(h).scale_int(phi.degree_int().unwrap_or(0)) {
                    continue;
                }
                if rho.tensor(phi)? == *p {
                    tensor = Some((g_table.label(ri).to_string(), g_table.label(fi).to_string()));
                    break 'outer;
                }
            }
        }
    }
    let induced = is_primitive(p, g_table, sources)?.witness;
    if tensor.is_none() && induced.is_none() {
        return Err(Error::CheckFailed("neither Clifford branch could be verified".into()));
    }
    Ok(CliffordSplit { constituent: h_table.label(ti).to_string(), inertia_order: inertia.len(), tensor, induced })
}

/// Is `entry` of the form `rho (x) chi` with `rho` trivial on `E` and `chi` linear?
pub fn is_rho_type(entry: &ClassFunction, level_table: &CharacterTable, e_into_level: &Embedding) -> Result<bool> {
    let d = entry.degree_int().unwrap_or(0);
    let triv = ClassFunction::trivial(&e_into_level.sub).scale_int(d);
    for li in level_table.linear_characters() {
        let twisted = entry.tensor(&level_table.row(li).dual())?;
        if restrict(&twisted, e_into_level)? == triv {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Orbits of the listed irreducibles under tensoring with linear characters trivial on `E`.
pub fn twist_orbits(entries: &[usize], level_table: &CharacterTable, e_into_level: &Embedding) -> Result<Vec<Vec<usize>>> {
    let triv_e = ClassFunction::trivial(&e_into_level.sub);
    let twists: Vec<ClassFunction> = level_table
        .linear_characters()
        .into_iter()
        .map(|i| level_table.row(i).clone())
        .filter(|c| restrict(c, e_into_level).map(|r| r == triv_e).unwrap_or(false))
        .collect();
    let mut orbit_of = vec![usize::MAX; entries.len()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for (i, &e) in entries.iter().enumerate() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut orb = Vec::new();
        for t in &twists {
            let tw = level_table.row(e).tensor(t)?;
            if let Some(j) = entries.iter().position(|&x| *level_table.row(x) == tw) {
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = id;
                    orb.push(entries[j]);
                }
            }
        }
        orb.sort_unstable();
        orbits.push(orb);
    }
    Ok(orbits)
}

/// Two irreducibles of a perfect `G` with the same irreducible restriction to a normal
/// subgroup coincide.  Returns the number of (pair, subgroup) cases examined.
pub fn check_perfect_restriction_uniqueness(
    table: &CharacterTable,
    normals: &[(Embedding, Arc<CharacterTable>)],
) -> Result<usize> {
    let g = table.group();
    if !g.is_perfect() {
        return Err(Error::Hypothesis(format!("{} is not perfect", g.name())));
    }
    let mut cases = 0;
    for (emb, ht) in normals {
        for i in 0..table.len() {
            let ri = restrict(table.row(i), emb)?;
            if !ht.is_irreducible(&ri) {
                continue;
            }
            for j in (i + 1)..table.len() {
                cases += 1;
                if restrict(table.row(j), emb)? == ri {
                    return Err(Error::CheckFailed(format!(
                        "{} and {} share an irreducible restriction",
                        table.label(i),
                        table.label(j)
                    )));
                }
            }
        }
    }
    Ok(cases)
}

// ------------------------------------------------------------------ eigenvalue multisets

/// A root of unity `exp(2 pi i q)` stored as `q` in `[0, 1)`.
pub type Root = Rational;

fn frac(q: Rational) -> Rational {
    let f = q.floor();
    q - f
}

pub fn root(k: i64, n: i64) -> Root {
    frac(Rational::new(BigInt::from(k), BigInt::from(n)))
}

fn sorted(mut v: Vec<Root>) -> Vec<Root> {
    v.sort();
    v
}

/// Multiset `{x y : x in a, y in b}`.
pub fn tensor_roots(a: &[Root], b: &[Root]) -> Vec<Root> {
    sorted(a.iter().flat_map(|x| b.iter().map(move |y| frac(x + y))).collect())
}

/// Recover `a` from the multisets of `a (x) b` and `b`.
pub fn recover_from_tensor(ab: &[Root], b: &[Root]) -> Result<Vec<Root>> {
    if b.is_empty() || ab.len() % b.len() != 0 {
        return Err(Error::Parameter("tensor multiset size is not a multiple of |b|".into()));
    }
    let n = ab.len() / b.len();
    let target = sorted(ab.to_vec());
    let b0 = b[0].clone();
    fn search(rest: Vec<Root>, b: &[Root], b0: &Root, n: usize, acc: &mut Vec<Root>) -> bool {
        if acc.len() == n {
            return rest.is_empty();
        }
        let mut tried: Vec<Root> = Vec::new();
        for c in rest.iter() {
            let x = frac(c - b0);
            if tried.contains(&x) || acc.last().map(|l| &x < l).unwrap_or(false) {
                continue;
            }
            tried.push(x.clone());
            let mut r = rest.clone();
            let mut ok = true;
            for y in b {
                let prod = frac(&x + y);
                match r.iter().position(|z| *z == prod) {
                    Some(i) => {
                        r.remove(i);
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                acc.push(x);
                if search(r, b, b0, n, acc) {
                    return true;
                }
                acc.pop();
            }
        }
        false
    }
    let mut acc = Vec::new();
    if search(target.clone(), b, &b0, n, &mut acc) {
        debug_assert_eq!(tensor_roots(&acc, b), target);
        Ok(acc)
    } else {
        Err(Error::Parameter("no multiset a with a (x) b equal to the given data".into()))
    }
}

/// Eigenvalues of a character at a class, as roots.
pub fn eigen_roots(chi: &ClassFunction, class: usize) -> Result<Vec<Root>> {
    let (o, ex) = crate::chars::eigenvalue_exponents(chi, class)?;
    Ok(ex.iter().map(|&t| root(t as i64, o as i64)).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct DescentCase {
    pub class: String,
    pub orbit_sizes: Vec<usize>,
    pub f: usize,
    pub realised: bool,
    pub zeta: String,
    pub sym4_agree: bool,
    pub matches: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DescentCaseReport {
    pub cases: Vec<DescentCase>,
    pub excluded: Vec<String>,
    pub no_two_three_split: bool,
    pub ok: bool,
}

/// Exhaustive local check that a degree-2 class sharing its `Sym^4` spectrum with
/// `theta2(Frob)` after an `f`-th root twist is conjugate to `theta2` or `theta2'` there.
pub fn verify_icosahedral_descent_cases(tower: &Tower) -> Result<DescentCaseReport> {
    let g = &tower.base;
    let t = &tower.f.table;
    let th2 = t.by_label("theta2").ok_or_else(|| Error::Parameter("no theta2 row".into()))?;
    let th2p = t.by_label("theta2'").ok_or_else(|| Error::Parameter("no theta2' row".into()))?;
    if tower.twist.is_some() || tower.h.order() != 24 {
        return Err(Error::Hypothesis("descent cases need the untwisted tetrahedral tower".into()));
    }
    let mut cases = Vec::new();
    let mut excluded = Vec::new();
    let mut ok = true;
    let mut no_two_three = true;
    let unit = Rational::zero();
    for c in 0..g.num_classes() {
        let sizes = tower.frobenius_orbits(g.class_rep(c), &tower.f_prime);
        if sizes.iter().all(|&s| s > 1) && sizes != vec![5] {
            no_two_three = false;
        }
        let a = eigen_roots(th2, c)?;
        let ap = eigen_roots(th2p, c)?;
        // `a` and `a^{-1}` come as a pair; use the first as `a`
        let a0 = a[0].clone();
        for f in [1usize, 2, 3, 5] {
            let realised = sizes.contains(&f);
            if !realised {
                excluded.push(format!("{} f={f}: no place of that degree", g.class_label(c)));
            }
            for k in 0..f as i64 {
                let z = root(k, f as i64);
                let sym4 = |x: &Root, zz: &Root| -> Vec<Root> {
                    sorted(
                        [4i64, 2, 0, -2, -4]
                            .iter()
                            .map(|&e| frac((x + zz) * Rational::from_integer(BigInt::from(e))))
                            .collect(),
                    )
                };
                let agree = sym4(&a0, &z) == sym4(&a0, &unit);
                let twisted = sorted(vec![frac(&a0 + &z), frac(-(&a0 + &z))]);
                let matches = if twisted == sorted(a.clone()) {
                    "theta2"
                } else if twisted == sorted(ap.clone()) {
                    "theta2'"
                } else {
                    "none"
                };
                if agree && matches == "none" && realised {
                    ok = false;
                }
                cases.push(DescentCase {
                    class: g.class_label(c).to_string(),
                    orbit_sizes: sizes.clone(),
                    f,
                    realised,
                    zeta: format!("exp(2 pi i {z})"),
                    sym4_agree: agree,
                    matches: matches.into(),
                });
            }
        }
    }
    Ok(DescentCaseReport { cases, excluded, no_two_three_split: no_two_three, ok: ok && no_two_three })
}

/// `[G : G'] `, the order of the abelianization.
pub fn abelianization_order(g: &FiniteGroup) -> u64 {
    g.abelianization().iter().product::<u64>().max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::named_group;
    use crate::tower::SubgroupChoice;

    fn a4_tower() -> Tower {
        Tower::icosahedral(SubgroupChoice::Tetrahedral, None).unwrap()
    }

    #[test]
    fn fibers_over_psi2_and_psi3() {
        let t = a4_tower();
        for (lab, want) in [("psi2", vec!["theta2", "theta2'"]), ("psi3", vec!["theta3", "theta3'"]), ("1", vec!["1"])] {
            let p = t.f_prime.table.by_label(lab).unwrap();
            let r = descent_fibers(p, &t.f_prime.embed, &t.f.table, lab).unwrap();
            let got: Vec<&str> = r.members.iter().map(|m| m.label.as_str()).collect();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn primitivity() {
        let t = a4_tower();
        let g = t.base.clone();
        let sources = proper_subgroup_sources(&g).unwrap();
        let th2 = t.f.table.by_label("theta2").unwrap();
        assert!(is_primitive(th2, &t.f.table, &sources).unwrap().primitive);
        let th5 = t.f.table.by_label("theta5").unwrap();
        let cert = is_primitive(th5, &t.f.table, &sources).unwrap();
        assert!(!cert.primitive);
        assert_eq!(cert.witness.as_ref().unwrap().1, 24);
    }

    #[test]
    fn index_condition() {
        let g = named_group("sl2z5").unwrap();
        assert!(check_index_condition(&g, 2));
        assert!(!check_index_condition(&g, 5));
        assert!(check_index_condition(&g, 1));
    }

    #[test]
    fn tensor_recovery() {
        let a = vec![root(1, 5), root(4, 5)];
        let b = vec![root(2, 5), root(3, 5)];
        let ab = tensor_roots(&a, &b);
        let rec = recover_from_tensor(&ab, &b).unwrap();
        assert_eq!(tensor_roots(&rec, &b), ab);
        assert_eq!(recover_from_tensor(&[root(1, 3), root(2, 3)], &[root(0, 1)]).unwrap(), vec![root(1, 3), root(2, 3)]);
        assert!(recover_from_tensor(&[root(1, 3), root(1, 2)], &[root(0, 1), root(1, 4)]).is_err());

        let t = a4_tower();
        let c5 = t.base.class_by_label("C5").unwrap();
        let a = eigen_roots(t.f.table.by_label("theta2").unwrap(), c5).unwrap();
        let b = eigen_roots(t.f.table.by_label("theta2'").unwrap(), c5).unwrap();
        let ab = tensor_roots(&a, &b);
        assert_eq!(tensor_roots(&recover_from_tensor(&ab, &b).unwrap(), &b), ab);
    }

    #[test]
    fn descent_cases_pass() {
        let r = verify_icosahedral_descent_cases(&a4_tower()).unwrap();
        assert!(r.ok, "{:?}", r.cases.iter().filter(|c| c.sym4_agree && c.matches == "none").collect::<Vec<_>>());
        assert!(r.no_two_three_split);
    }

    fn survivors(r: &DescentCaseReport, class: &str, f: usize) -> Vec<String> {
        r.cases.iter().filter(|c| c.class == class && c.f == f && c.realised && c.sym4_agree).map(|c| c.zeta.clone()).collect()
    }

    #[test]
    fn descent_survivors() {
        let r = verify_icosahedral_descent_cases(&a4_tower()).unwrap();
        assert_eq!(survivors(&r, "C6", 3), vec!["exp(2 pi i 0)", "exp(2 pi i 2/3)"]);
        assert_eq!(survivors(&r, "C1", 1), vec!["exp(2 pi i 0)"]);
        for c in ["C5", "C10", "C5'", "C10'"] {
            // exactly one fifth root of unity is excluded
            assert_eq!(survivors(&r, c, 5).len(), 4, "{c}");
        }
        assert!(r.excluded.iter().any(|e| e.starts_with("C5 f=1")));
        assert_eq!(r.cases.len(), 99);
        // without a degree-2 place the sign twist -theta2 would survive; the orbit sizes rule it out
        let blocked: Vec<_> = r.cases.iter().filter(|c| !c.realised && c.sym4_agree && c.matches == "none").collect();
        assert_eq!(blocked.len(), 8);
        assert!(blocked.iter().all(|c| c.f == 2 && c.zeta == "exp(2 pi i 1/2)"));
    }

    #[test]
    fn quaternion_level_fibers() {
        let t = Tower::icosahedral(SubgroupChoice::Quaternion, None).unwrap();
        let th2 = t.f_prime.table.by_label("Theta2").unwrap();
        let r = descent_fibers(th2, &t.f_prime.embed, &t.f.table, "Theta2").unwrap();
        assert_eq!(r.count, 2);
        assert_eq!(r.reciprocity_total, 2);
        let two = ClassFunction::trivial(t.e.group()).scale_int(2);
        let r = descent_fibers(&two, &t.e_into(&t.f_prime).unwrap(), &t.f_prime.table, "1+1").unwrap();
        assert_eq!(r.members.iter().map(|m| m.label.as_str()).collect::<Vec<_>>(), vec!["Theta2"]);
    }

    #[test]
    fn extensions_from_quaternion_to_tetrahedral() {
        let t = a4_tower();
        let h = t.h.clone();
        let q = crate::tower::smallest_subgroup_of_order(&h, 8).unwrap();
        let src = source_for(&h, &q).unwrap();
        let h_table = CharacterTable::compute(&h).unwrap();
        let r = invariant_extension(&ClassFunction::trivial(&src.embed.sub), &src.embed, &h_table, "1").unwrap();
        assert_eq!(r.count, 3);
        assert_eq!(r.count as u64, abelianization_order(&h));
        let three = ClassFunction::trivial(t.e.group()).scale_int(3);
        let r = descent_fibers(&three, &t.e_into(&t.f_prime).unwrap(), &t.f_prime.table, "1+1+1").unwrap();
        assert_eq!(r.members.iter().map(|m| m.label.as_str()).collect::<Vec<_>>(), vec!["psi3"]);
        // Theta1 is not invariant under the order-3 elements
        let th1 = src.table.by_label("Theta1").unwrap();
        assert!(invariant_extension(th1, &src.embed, &h_table, "Theta1").is_err());
    }

    #[test]
    fn clifford_branches() {
        let t = a4_tower();
        let g = t.base.clone();
        let sources = proper_subgroup_sources(&g).unwrap();
        let whole = Embedding::identity(&g);
        let th2 = t.f.table.by_label("theta2").unwrap();
        let s = clifford_split(th2, &whole, &t.f.table, &t.f.table, &sources).unwrap();
        assert_eq!(s.tensor, Some(("theta2".into(), "1".into())));
        assert!(s.induced.is_none());

        let z = source_for(&g, &g.center()).unwrap();
        let th5 = t.f.table.by_label("theta5").unwrap();
        let s = clifford_split(th5, &z.embed, &t.f.table, &z.table, &sources).unwrap();
        assert_eq!(s.induced.as_ref().unwrap().1, 24);
        let one = t.f.table.by_label("1").unwrap();
        let s = clifford_split(one, &z.embed, &t.f.table, &z.table, &sources).unwrap();
        assert_eq!(s.tensor, Some(("1".into(), "1".into())));
    }

    #[test]
    fn base_change_is_transitive() {
        let t = a4_tower();
        let th2 = GaloisParameter::new("theta2", "F", t.f.table.by_label("theta2").unwrap().clone()).unwrap();
        let fp = base_change(&th2, &t.f_prime_into_f().unwrap(), "F'").unwrap();
        assert_eq!(fp.chi, *t.f_prime.table.by_label("psi2").unwrap());
        let e_in_f = t.e_into(&t.f).unwrap();
        let direct = base_change(&th2, &e_in_f, "E").unwrap();
        let two_step = base_change(&fp, &t.e_into(&t.f_prime).unwrap(), "E").unwrap();
        assert_eq!(direct.chi, two_step.chi);
        assert_eq!(direct.chi, ClassFunction::trivial(t.e.group()).scale_int(2));
    }

    #[test]
    fn perfect_restriction_uniqueness() {
        for name in ["sl2z5", "sl2z7"] {
            let g = Arc::new(named_group(name).unwrap());
            let table = CharacterTable::compute(&g).unwrap();
            let normals: Vec<_> = [g.center(), g.whole()]
                .iter()
                .map(|s| {
                    let src = source_for(&g, s).unwrap();
                    (src.embed, src.table)
                })
                .collect();
            assert!(check_perfect_restriction_uniqueness(&table, &normals).unwrap() > 0);
        }
    }

    #[test]
    fn sl2z7_hypotheses() {
        let g = Arc::new(named_group("sl2z7").unwrap());
        assert!(check_index_condition(&g, 2));
        let table = CharacterTable::compute(&g).unwrap();
        assert_eq!(table.degrees().iter().filter(|&&d| d <= 2).count(), 1);
    }
}
