//! Property checks shared by the proptest suite and the acceptance run.
#![allow(dead_code)]

use std::sync::OnceLock;

use galtrace::chars::{induce, inner_product, restrict, CharacterTable, ClassFunction};
use galtrace::exactnum::Cyclotomic;
use galtrace::hecke::{base_change_subst, sym_test_poly, Block, PlaceStructure, SatakePoint, SymPoly};
use galtrace::params::root;
use galtrace::sandbox::{dirichlet_tower, theorem1_tower};
use galtrace::tower::{SubgroupChoice, Tower};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn towers() -> &'static Vec<Tower> {
    static T: OnceLock<Vec<Tower>> = OnceLock::new();
    T.get_or_init(|| {
        vec![
            Tower::icosahedral(SubgroupChoice::Tetrahedral, None).unwrap(),
            Tower::icosahedral(SubgroupChoice::Quaternion, None).unwrap(),
            Tower::icosahedral(SubgroupChoice::Tetrahedral, Some("quaternion")).unwrap(),
        ]
    })
}

fn combo(table: &CharacterTable, coeffs: &[i64]) -> ClassFunction {
    let mut acc = ClassFunction::trivial(table.group()).scale_int(0);
    for (i, &c) in coeffs.iter().enumerate() {
        acc = acc.add(&table.row(i % table.len()).scale_int(c)).unwrap();
    }
    acc
}

fn poly(blocks: &[Block], terms: &[(Vec<i32>, i64)]) -> SymPoly {
    let mut p = SymPoly::zero();
    for (e, c) in terms {
        p = p.add(&SymPoly::monomial(blocks, e, Cyclotomic::from_int(1, *c)).unwrap()).unwrap();
    }
    p
}

fn terms_strategy(width: usize) -> impl Strategy<Value = Vec<(Vec<i32>, i64)>> {
    prop::collection::vec((prop::collection::vec(-2i32..=2, width), -3i64..=3), 1..5)
}

pub type ReciprocityCase = (usize, Vec<i64>, Vec<i64>);

pub fn reciprocity_cases() -> impl Strategy<Value = ReciprocityCase> {
    (0usize..3, prop::collection::vec(-3i64..=3, 1..8), prop::collection::vec(-3i64..=3, 1..10))
}

/// `<Ind psi, chi> = <psi, Res chi>` for integer combinations of irreducibles.
pub fn check_reciprocity((t, a, b): ReciprocityCase) -> Result<(), TestCaseError> {
    let tower = &towers()[t];
    let psi = combo(&tower.f_prime.table, &a);
    let chi = combo(&tower.f.table, &b);
    let emb = tower.f_prime_into_f().unwrap();
    let lhs = inner_product(&induce(&psi, &emb).unwrap(), &chi).unwrap();
    let rhs = inner_product(&psi, &restrict(&chi, &emb).unwrap()).unwrap();
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub type EvalCase = (Vec<(Vec<i32>, i64)>, Vec<(Vec<i32>, i64)>, Vec<i64>, Vec<i64>);

pub fn eval_cases() -> impl Strategy<Value = EvalCase> {
    (terms_strategy(4), terms_strategy(4), prop::collection::vec(0i64..12, 2), prop::collection::vec(0i64..12, 2))
}

pub fn check_eval_homomorphism((p, q, ra, rb): EvalCase) -> Result<(), TestCaseError> {
    let blocks = [Block { place: "a".into(), n: 2 }, Block { place: "b".into(), n: 2 }];
    let (p, q) = (poly(&blocks, &p), poly(&blocks, &q));
    let mut x = SatakePoint::new();
    x.insert_roots("a", ra.iter().map(|&k| root(k, 12)).collect());
    x.insert_roots("b", rb.iter().map(|&k| root(k, 12)).collect());
    let (ep, eq) = (p.eval_at(&x).unwrap(), q.eval_at(&x).unwrap());
    prop_assert_eq!(p.mul(&q).unwrap().eval_at(&x).unwrap(), ep.try_mul(&eq).unwrap());
    prop_assert_eq!(p.add(&q).unwrap().eval_at(&x).unwrap(), ep.try_add(&eq).unwrap());
    Ok(())
}

pub type SubstCase = (usize, Vec<usize>, Vec<(Vec<i32>, i64)>);

pub fn subst_cases() -> impl Strategy<Value = SubstCase> {
    (0usize..960, prop::collection::vec(0usize..1000, 1..4), terms_strategy(6))
}

/// `E -> F' -> F` equals `E -> F` on random polynomials over `E`-places of the twisted icosahedral tower.
pub fn check_subst_transitive((sigma, picks, raw): SubstCase) -> Result<(), TestCaseError> {
    let t = &towers()[2];
    let s = PlaceStructure::new(&t.ambient, &[("F", &t.f.embed), ("F'", &t.f_prime.embed), ("E", &t.e.embed)], sigma, 7).unwrap();
    let e = &s.level("E").unwrap().places;
    let mut ids: Vec<String> = picks.iter().map(|&k| e[k % e.len()].id.clone()).collect();
    ids.sort();
    ids.dedup();
    let blocks: Vec<Block> = ids.iter().map(|w| Block { place: w.clone(), n: 2 }).collect();
    let width = 2 * blocks.len();
    let terms: Vec<(Vec<i32>, i64)> = raw
        .into_iter()
        .map(|(mut v, c)| {
            v.resize(width, 0);
            (v, c)
        })
        .collect();
    let p = poly(&blocks, &terms);
    let splits = [s];
    let two_step = base_change_subst(&base_change_subst(&p, &splits, "F'").unwrap(), &splits, "F").unwrap();
    let direct = base_change_subst(&p, &splits, "F").unwrap();
    prop_assert_eq!(two_step, direct);
    Ok(())
}

fn power_sum(blocks: &[Block], k: i32, tau_side: bool) -> SymPoly {
    let n = blocks[0].n;
    let width: usize = blocks.iter().map(|b| b.n).sum();
    let off = if tau_side { n } else { 0 };
    let mut p = SymPoly::zero();
    for i in 0..n {
        let mut e = vec![0; width];
        e[off + i] = if tau_side { -k } else { k };
        p = p.add(&SymPoly::monomial(blocks, &e, Cyclotomic::one(1)).unwrap()).unwrap();
    }
    p
}

/// `j h_j = sum_{k=1..j} p_k h_{j-k}` for the variables of `h_j`, which is the
/// logarithmic derivative of `sum h_j t^j = prod (1 - x t)^{-1}`.
pub fn check_generating_function() -> usize {
    let mut checked = 0;
    for n in 1..=3 {
        for two_blocks in [false, true] {
            let (w, wt) = ("w", if two_blocks { "w'" } else { "w" });
            let blocks: Vec<Block> = if two_blocks {
                vec![Block { place: w.into(), n }, Block { place: wt.into(), n }]
            } else {
                vec![Block { place: w.into(), n }]
            };
            let h: Vec<SymPoly> = (0..=6).map(|j| sym_test_poly(n, j, w, wt).unwrap()).collect();
            for j in 1..=6 {
                let mut rhs = SymPoly::zero();
                for k in 1..=j {
                    // power sums of the ratios x_i / y_l factor as p_k(x) p_{-k}(y)
                    let pk = if two_blocks {
                        power_sum(&blocks, k as i32, false).mul(&power_sum(&blocks, k as i32, true)).unwrap()
                    } else {
                        let x = power_sum(&blocks, k as i32, false);
                        let mut inv = SymPoly::zero();
                        for i in 0..n {
                            let mut e = vec![0; n];
                            e[i] = -(k as i32);
                            inv = inv.add(&SymPoly::monomial(&blocks, &e, Cyclotomic::one(1)).unwrap()).unwrap();
                        }
                        x.mul(&inv).unwrap()
                    };
                    rhs = rhs.add(&pk.mul(&h[j - k]).unwrap()).unwrap();
                }
                assert_eq!(h[j].scale_int(j as i64), rhs, "n = {n}, j = {j}, two blocks = {two_blocks}");
                checked += 1;
            }
        }
    }
    checked
}

/// Sum of orbit sizes on cosets equals the index, for every element and level of every bundled tower.
pub fn check_orbit_sums() -> usize {
    let extra = [theorem1_tower().unwrap(), dirichlet_tower().unwrap()];
    let all: Vec<&Tower> = towers().iter().chain(extra.iter()).collect();
    let mut pairs = 0;
    for t in all {
        for level in t.levels() {
            let index = t.ambient.order() / level.group().order();
            for sigma in 0..t.ambient.order() {
                let total: usize = t.places(level, sigma).iter().map(|p| p.f).sum();
                assert_eq!(total, index, "{} at {}", t.ambient.name(), level.name);
                pairs += 1;
            }
        }
    }
    pairs
}
