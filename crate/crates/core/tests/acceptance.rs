//! One line per acceptance criterion, at the stated tolerance and time budget.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::sync::Arc;
use std::time::{Duration, Instant};

use galtrace::analytic::{chebotarev_stream, chi_square_statistic, class_counts, BumpKernel};
use galtrace::branching::{icosahedral_battery, IcosahedralContext};
use galtrace::chars::{CharacterTable, ClassFunction};
use galtrace::cli::run_command;
use galtrace::fixtures::{diff_table, GoldenTable};
use galtrace::groups::{named_group, verify_generation, GenerationMode};
use galtrace::params::{abelianization_order, descent_fibers, verify_icosahedral_descent_cases};
use galtrace::sandbox::{
    default_insertion, dirichlet_identity, dirichlet_stream, dirichlet_tower, smoothed_asymptotics, theorem1_spec, theorem2_spec,
    theorem3_spec, verify_identity, StreamSpec,
};
use galtrace::tower::{choose_subgroup, SubgroupChoice, Tower};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use statrs::distribution::{ChiSquared, ContinuousCDF};

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn run(id: u32, title: &str, budget: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let t0 = Instant::now();
    let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        ok(false, format!("panicked: {msg}"))
    });
    let dt = t0.elapsed();
    let in_time = budget.map(|b| dt <= b).unwrap_or(true);
    let pass = out.pass && in_time;
    let budget_note = budget.map(|b| format!(" / budget {:.0}s", b.as_secs_f64())).unwrap_or_default();
    println!(
        "[{}] criterion {id:>2}: {title} ({:.2}s{budget_note}) {}",
        if pass { "PASS" } else { "FAIL" },
        dt.as_secs_f64(),
        out.detail
    );
    pass
}

fn c1_tables() -> Outcome {
    let mut cells = 0;
    let mut diffs = Vec::new();
    for name in ["sl2z5", "sl2z3", "quaternion"] {
        let g = Arc::new(named_group(name).unwrap());
        let t = CharacterTable::compute(&g).unwrap();
        let golden = GoldenTable::bundled(name).unwrap();
        cells += t.len() * g.num_classes();
        diffs.extend(diff_table(&t, &golden));
    }
    // the subgroup tables inside the towers carry the same labels
    let tet = Tower::icosahedral(SubgroupChoice::Tetrahedral, None).unwrap();
    let quat = Tower::icosahedral(SubgroupChoice::Quaternion, None).unwrap();
    diffs.extend(diff_table(&tet.f_prime.table, &GoldenTable::bundled("sl2z3").unwrap()));
    diffs.extend(diff_table(&quat.f_prime.table, &GoldenTable::bundled("quaternion").unwrap()));
    ok(diffs.is_empty(), format!("9x9, 7x7, 5x5 and both subgroup tables: {cells} standalone cells, {} differences", diffs.len()))
}

fn c2_battery() -> Outcome {
    let ctx = IcosahedralContext::new().unwrap();
    let b = icosahedral_battery(&ctx).unwrap();
    let failed: Vec<String> = b.iter().filter(|c| !c.holds).map(|c| c.name.clone()).collect();
    ok(failed.is_empty(), format!("{}/{} identities hold {:?}", b.len() - failed.len(), b.len(), failed))
}

fn c3_fibers() -> Outcome {
    let tet = Tower::icosahedral(SubgroupChoice::Tetrahedral, None).unwrap();
    let quat = Tower::icosahedral(SubgroupChoice::Quaternion, None).unwrap();
    let over = |t: &Tower, l: &str| descent_fibers(t.f_prime.table.by_label(l).unwrap(), &t.f_prime_into_f().unwrap(), &t.f.table, l).unwrap().count;
    let psi2 = over(&tet, "psi2");
    let psi3 = over(&tet, "psi3");
    let th2 = over(&quat, "Theta2");
    let triv = |t: &Tower, k: i64| {
        let chi = ClassFunction::trivial(t.e.group()).scale_int(k);
        let r = descent_fibers(&chi, &t.e_into(&t.f_prime).unwrap(), &t.f_prime.table, "1").unwrap();
        (r.count, r.members.iter().map(|m| m.label.clone()).collect::<Vec<_>>())
    };
    let (u2, m2) = triv(&quat, 2);
    let (u3, m3) = triv(&tet, 3);
    let ab = abelianization_order(&tet.h);
    let pass = psi2 == 2 && psi3 == 2 && th2 == 2 && u2 == 1 && m2 == ["Theta2"] && u3 == 1 && m3 == ["psi3"] && ab == 3;
    ok(pass, format!("psi2 {psi2}, psi3 {psi3}, Theta2 {th2}, unique over Q {u2} {m2:?}, unique over A4~ {u3} {m3:?}, |A4~^ab| {ab}"))
}

fn c4_generation() -> Outcome {
    let g = Arc::new(named_group("sl2z5").unwrap());
    let a4 = choose_subgroup(&g, &SubgroupChoice::Tetrahedral).unwrap();
    let q = choose_subgroup(&g, &SubgroupChoice::Quaternion).unwrap();
    let with_a4 = verify_generation(&g, GenerationMode::Tower { order: 5 }, Some(&a4)).unwrap();
    let with_q = verify_generation(&g, GenerationMode::Tower { order: 5 }, Some(&q)).unwrap();
    let gk = verify_generation(&g, GenerationMode::GuralnickKantor, None).unwrap();
    let gm = verify_generation(&g, GenerationMode::GuralnickMalle, None).unwrap();
    let pass = with_a4.ok && with_a4.checked == 24 && with_q.passed > 0 && gk.ok && gk.checked == 118 && gm.ok;
    ok(
        pass,
        format!(
            "<tau,A4~> {}/{}, <tau,Q> {} of {}, noncentral partners {}/{}, coprime-to-6 pair {}",
            with_a4.passed, with_a4.checked, with_q.passed, with_q.checked, gk.passed, gk.checked, gm.ok
        ),
    )
}

fn c5_descent() -> Outcome {
    let r = verify_icosahedral_descent_cases(&Tower::icosahedral(SubgroupChoice::Tetrahedral, None).unwrap()).unwrap();
    let classes: std::collections::BTreeSet<&str> = r.cases.iter().map(|c| c.class.as_str()).collect();
    let realised = r.cases.iter().filter(|c| c.realised).count();
    let survivors = r.cases.iter().filter(|c| c.realised && c.sym4_agree).count();
    let blocked = r.cases.iter().filter(|c| !c.realised && c.sym4_agree && c.matches == "none").count();
    let pass = r.ok && r.no_two_three_split && classes.len() == 9 && r.cases.len() == 99;
    ok(
        pass,
        format!(
            "{} (class, f, zeta) cases over {} classes, {realised} realised by a place, {survivors} of those with equal Sym^4 spectra all matched, {} (class, f) pairs excluded by orbit sizes ({blocked} sign twists blocked there), no 2-3 split {}",
            r.cases.len(),
            classes.len(),
            r.excluded.len(),
            r.no_two_three_split
        ),
    )
}

fn c6_dirichlet() -> Outcome {
    let t = dirichlet_tower().unwrap();
    let theta2 = t.e.table.by_label("theta2").unwrap().clone();
    let stream = dirichlet_stream(&t, 20240601, 500);
    let d = dirichlet_identity(&t, &theta2, &stream, 500).unwrap();
    let tau_order = t.base.elem_order(t.tau);
    // the seeded sampler behind every stream reproduces the Chebotarev densities
    let g = named_group("sl2z5").unwrap();
    let big = chebotarev_stream(&g, 99, 200_000);
    let counts = class_counts(&g, &big);
    let stat = chi_square_statistic(&g, &counts);
    let p = 1.0 - ChiSquared::new((g.num_classes() - 1) as f64).unwrap().cdf(stat);
    let pass = d.mismatches.is_empty() && d.classes_seen.len() == 9 && tau_order == 5 && p >= 1e-3;
    ok(
        pass,
        format!(
            "{} coefficients up to 500 ({} nonzero) equal exactly, {} mismatches, classes covered {}, tau order {tau_order}; stream chi-square p = {p:.3}",
            d.hecke.len() - 1,
            d.nonzero,
            d.mismatches.len(),
            d.classes_seen.len()
        ),
    )
}

fn c7_zeta() -> Outcome {
    let (k, rows) = smoothed_asymptotics(1, &[100.0, 10_000.0], StreamSpec { seed: 11, bound: 1_000_000 }, &BumpKernel::default()).unwrap();
    let e = rows[1].error;
    ok(k == 1 && e <= 0.05, format!("pole order {k}, ratio {:.6} at X=1e4 (|r-1| = {e:.2e} <= 0.05)", rows[1].ratio))
}

fn c7_order4() -> Outcome {
    let (k, rows) = smoothed_asymptotics(2, &[100.0, 10_000.0], StreamSpec { seed: 11, bound: 1_000_000 }, &BumpKernel::default()).unwrap();
    let (e2, e4) = (rows[0].error, rows[1].error);
    let pass = k == 4 && e4 <= 0.15 && e2 >= 2.0 * e4;
    ok(pass, format!("pole order {k}, |r-1| = {e2:.2e} at X=1e2 and {e4:.2e} at X=1e4 (<= 0.15, improvement x{:.1e})", e2 / e4))
}

fn c8_identities() -> Outcome {
    let stream = Some(StreamSpec { seed: 7, bound: 100_000 });
    let cases = [
        ("2(A)", theorem2_spec(stream, false).unwrap()),
        ("2(B)", theorem2_spec(stream, true).unwrap()),
        ("3 n=2", theorem3_spec(2, None, stream).unwrap()),
        ("3 n=3 hecke", theorem3_spec(3, Some(default_insertion()), stream).unwrap()),
        ("1 SL2(7)", theorem1_spec(stream).unwrap()),
    ];
    let mut parts = Vec::new();
    let mut pass = true;
    for (name, spec) in cases {
        match verify_identity(&spec) {
            Ok(r) => {
                let num = r.numeric_residual.unwrap_or(f64::NAN);
                let this = r.pass && r.symbolic_residual <= 1e-6 && num <= 1e-2;
                pass &= this;
                parts.push(format!("{name}: sym {:.0e} num {:.0e} keys {}", r.symbolic_residual, num, r.keys.len()));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{name}: error {e}"));
            }
        }
    }
    ok(pass, parts.join("; "))
}

fn c9_properties() -> Outcome {
    let with = |cases: u32| {
        let cfg = Config { cases, failure_persistence: None, ..Config::default() };
        TestRunner::new_with_rng(cfg, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
    };
    let mut parts = Vec::new();
    let mut pass = true;
    let mut record = |name: &str, n: u32, res: Result<(), String>| {
        pass &= res.is_ok();
        parts.push(match res {
            Ok(()) => format!("{name} {n}/{n}"),
            Err(e) => format!("{name} failed: {e}"),
        });
    };
    record("reciprocity", 200, with(200).run(&common::reciprocity_cases(), common::check_reciprocity).map_err(|e| e.to_string()));
    record("eval homomorphism", 100, with(100).run(&common::eval_cases(), common::check_eval_homomorphism).map_err(|e| e.to_string()));
    record("substitution transitivity", 50, with(50).run(&common::subst_cases(), common::check_subst_transitive).map_err(|e| e.to_string()));
    let gf = common::check_generating_function();
    let orbits = common::check_orbit_sums();
    parts.push(format!("h_j generating function {gf} identities through j=6, orbit sums {orbits} (sigma, level) pairs"));
    ok(pass, parts.join(", "))
}

fn c10_determinism(started: Instant) -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let jobs = [
        ("chartab", "chartab"),
        ("branch", "branch"),
        ("fibers", "fibers_tetrahedral"),
        ("satake", "satake"),
        ("trace-identity", "theorem2a"),
        ("trace-identity", "theorem3_n3"),
    ];
    let mut same = 0;
    for (cmd, file) in jobs {
        let text = std::fs::read_to_string(dir.join(format!("{file}.toml"))).unwrap();
        let a = run_command(cmd, &text, None).unwrap();
        let b = run_command(cmd, &text, None).unwrap();
        if a.to_tsv() == b.to_tsv() && a.to_json() == b.to_json() {
            same += 1;
        }
    }
    let total = started.elapsed();
    let pass = same == jobs.len() && total <= Duration::from_secs(300);
    ok(pass, format!("{same}/{} scenario reports byte-identical on rerun; acceptance wall-clock {:.1}s <= 300s", jobs.len(), total.as_secs_f64()))
}

fn main() {
    let started = Instant::now();
    let s = |x: u64| Some(Duration::from_secs(x));
    let results = [
        run(1, "character tables", s(10), c1_tables),
        run(2, "branching battery", s(5), c2_battery),
        run(3, "fiber counts", None, c3_fibers),
        run(4, "generation", s(30), c4_generation),
        run(5, "root-of-unity case analysis", None, c5_descent),
        run(6, "Dirichlet identity", None, c6_dirichlet),
        run(7, "smoothed sum, pole order 1", s(60), c7_zeta),
        run(7, "smoothed sum, pole order 4", s(60), c7_order4),
        run(8, "trace identities", None, c8_identities),
        run(9, "property suites", None, c9_properties),
        run(10, "determinism and wall-clock", None, || c10_determinism(started)),
    ];
    let failed = results.iter().filter(|p| !**p).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
