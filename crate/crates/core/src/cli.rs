//! Batch driver behind the `galtrace` binary.
//!
//! A run reads one TOML scenario, dispatches to the library and writes a
//! report as a TSV file and a JSON mirror.  See `configs/SCHEMA.md` for the
//! accepted keys.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::analytic::BumpKernel;
use crate::branching::{icosahedral_battery, run_query, IcosahedralContext};
use crate::chars::CharacterTable;
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::fixtures::{diff_table, GoldenTable};
use crate::groups::named_group;
use crate::hecke::{sym_test_poly, test_function, ModulusIdeal};
use crate::params::descent_fibers;
use crate::sandbox::{
    dirichlet_identity, dirichlet_stream, dirichlet_tower, smoothed_asymptotics, verify_identity, HeckeInsertion, StreamSpec,
    Theorem, TraceIdentitySpec,
};
use crate::tower::{choose_subgroup, default_tau, SubgroupChoice, Tower};

#[derive(Parser, Debug)]
#[command(name = "galtrace", version, about = "Exact character-theoretic and analytic checks of base-change trace identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug, Clone)]
pub struct CommonArgs {
    /// Scenario file (TOML).
    #[arg(long)]
    pub config: PathBuf,
    /// Directory for `<command>.tsv` and `<command>.json`; the TSV goes to stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Directory of golden tables named `<group>.tsv`, overriding the bundled ones.
    #[arg(long)]
    pub fixture: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute character tables and diff them against golden fixtures.
    Chartab(CommonArgs),
    /// Restriction, induction, symmetric power and tensor queries.
    Branch(CommonArgs),
    /// Count irreducibles of the base restricting to given characters.
    Fibers(CommonArgs),
    /// Test-function expansions and the Dirichlet-series identity.
    Satake(CommonArgs),
    /// Smoothed-sum to residue ratios.
    Smoothsum(CommonArgs),
    /// Both sides of a trace identity.
    TraceIdentity(CommonArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Chartab(_) => "chartab",
            Command::Branch(_) => "branch",
            Command::Fibers(_) => "fibers",
            Command::Satake(_) => "satake",
            Command::Smoothsum(_) => "smoothsum",
            Command::TraceIdentity(_) => "trace-identity",
        }
    }

    pub fn args(&self) -> &CommonArgs {
        match self {
            Command::Chartab(a)
            | Command::Branch(a)
            | Command::Fibers(a)
            | Command::Satake(a)
            | Command::Smoothsum(a)
            | Command::TraceIdentity(a) => a,
        }
    }
}

// ------------------------------------------------------------------ configuration

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub chartab: Option<ChartabConfig>,
    pub branch: Option<BranchConfig>,
    pub fibers: Option<FibersConfig>,
    pub satake: Option<SatakeConfig>,
    pub smoothsum: Option<SmoothsumConfig>,
    pub identity: Option<IdentityConfig>,
    pub tower: Option<TowerConfig>,
    pub hecke: Option<HeckeConfig>,
    pub kernel: Option<KernelConfig>,
    pub stream: Option<StreamConfig>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartabConfig {
    pub groups: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchConfig {
    #[serde(default)]
    pub battery: bool,
    #[serde(default)]
    pub queries: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberQuery {
    pub character: String,
    pub expect: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FibersConfig {
    pub query: Vec<FiberQuery>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SatakeConfig {
    pub n: usize,
    pub j_max: usize,
    /// Character of `SL2(Z/5)` for the Dirichlet identity; skipped when absent.
    pub character: Option<String>,
    #[serde(default = "default_truncation")]
    pub truncation: u64,
}

fn default_truncation() -> u64 {
    500
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SmoothsumConfig {
    pub multiplicities: Vec<i64>,
    pub x: Vec<f64>,
    pub tolerance: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityConfig {
    pub theorem: String,
    pub n: usize,
    #[serde(default)]
    pub numeric: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerConfig {
    pub base: String,
    /// `tetrahedral`, `quaternion` or `order:N`.
    pub subgroup: Option<String>,
    /// Element encodings generating the subgroup, as an alternative to `subgroup`.
    pub generators: Option<Vec<Vec<u32>>>,
    pub subgroup_name: Option<String>,
    pub twist: Option<String>,
    /// Explicit `tau` as an element encoding.
    pub tau: Option<Vec<u32>>,
    /// Order of the default `tau` when none is given.
    pub tau_order: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeckeConfig {
    pub class: String,
    pub q: u64,
    pub j: usize,
    #[serde(default)]
    pub shift: i64,
    #[serde(default = "default_scale")]
    pub scale: String,
}

fn default_scale() -> String {
    "1".into()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelConfig {
    pub c: f64,
    pub r: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StreamConfig {
    pub seed: u64,
    pub bound: u64,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.into()));
        if let Some(s) = &self.stream {
            if s.bound < 2 {
                return bad("stream.bound must be at least 2");
            }
        }
        if let Some(s) = &self.satake {
            if s.n == 0 || s.truncation == 0 {
                return bad("satake.n and satake.truncation must be positive");
            }
        }
        if let Some(s) = &self.smoothsum {
            if s.x.is_empty() || s.x.iter().any(|&x| !(x > 0.0)) {
                return bad("smoothsum.x must be a nonempty list of positive numbers");
            }
        }
        if let Some(i) = &self.identity {
            if i.n == 0 {
                return bad("identity.n must be positive");
            }
        }
        if let Some(h) = &self.hecke {
            if h.q < 2 {
                return bad("hecke.q must be at least 2");
            }
        }
        self.kernel()?;
        Ok(())
    }

    pub fn kernel(&self) -> Result<BumpKernel> {
        match &self.kernel {
            Some(k) => BumpKernel::new(k.c, k.r),
            None => Ok(BumpKernel::default()),
        }
    }

    pub fn stream_spec(&self) -> Option<StreamSpec> {
        self.stream.as_ref().map(|s| StreamSpec { seed: s.seed, bound: s.bound })
    }

    fn section<'a, T>(v: &'a Option<T>, name: &str) -> Result<&'a T> {
        v.as_ref().ok_or_else(|| Error::Config(format!("missing [{name}] section")))
    }
}

pub fn build_tower(tc: &TowerConfig) -> Result<Tower> {
    let base = Arc::new(named_group(&tc.base)?);
    let (choice, default_name) = match (&tc.subgroup, &tc.generators) {
        (Some(_), Some(_)) => return Err(Error::Config("give either tower.subgroup or tower.generators".into())),
        (None, Some(g)) => (SubgroupChoice::Generators(g.clone()), "H"),
        (Some(s), None) => match s.as_str() {
            "tetrahedral" => (SubgroupChoice::Tetrahedral, "A4~"),
            "quaternion" => (SubgroupChoice::Quaternion, "Q"),
            "trivial" => (SubgroupChoice::Order(1), "1"),
            o => {
                let n = o
                    .strip_prefix("order:")
                    .and_then(|n| n.parse().ok())
                    .ok_or_else(|| Error::Config(format!("unknown subgroup '{o}'")))?;
                (SubgroupChoice::Order(n), "H")
            }
        },
        (None, None) => return Err(Error::Config("tower needs a subgroup".into())),
    };
    let sub = choose_subgroup(&base, &choice)?;
    let twist = tc.twist.as_deref().map(named_group).transpose()?.map(Arc::new);
    let tau = match &tc.tau {
        Some(enc) => base.find(enc).ok_or_else(|| Error::Config(format!("tau {enc:?} is not an element of {}", tc.base)))?,
        None => default_tau(&base, &sub, tc.tau_order.unwrap_or(5))?,
    };
    Tower::new(base, &sub, tc.subgroup_name.as_deref().unwrap_or(default_name), twist, tau)
}

// ------------------------------------------------------------------ reports

#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(name: &str, header: &[&str]) -> Self {
        Table { name: name.into(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    fn push<I: IntoIterator<Item = String>>(&mut self, row: I) {
        self.rows.push(row.into_iter().collect());
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Metadata {
    pub command: String,
    pub config_sha256: String,
    pub version: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub metadata: Metadata,
    pub tables: Vec<Table>,
    pub checks: Vec<Check>,
    pub data: Value,
    pub pass: bool,
}

impl ReportDocument {
    pub fn to_tsv(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# command\t{}", self.metadata.command);
        let _ = writeln!(s, "# config_sha256\t{}", self.metadata.config_sha256);
        let _ = writeln!(s, "# version\t{}", self.metadata.version);
        for t in &self.tables {
            let _ = writeln!(s, "\n## {}", t.name);
            let _ = writeln!(s, "{}", t.header.join("\t"));
            for r in &t.rows {
                let _ = writeln!(s, "{}", r.join("\t"));
            }
        }
        let _ = writeln!(s, "\n## checks\nname\tpass\tdetail");
        for c in &self.checks {
            let _ = writeln!(s, "{}\t{}\t{}", c.name, c.pass, c.detail);
        }
        let _ = writeln!(s, "\n# result\t{}", if self.pass { "pass" } else { "fail" });
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises") + "\n"
    }
}

pub fn config_hash(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

struct Builder {
    tables: Vec<Table>,
    checks: Vec<Check>,
    data: BTreeMap<String, Value>,
}

impl Builder {
    fn new() -> Self {
        Builder { tables: Vec::new(), checks: Vec::new(), data: BTreeMap::new() }
    }

    fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), pass, detail: detail.into() });
    }

    fn finish(self, command: &str, hash: String) -> ReportDocument {
        let pass = self.checks.iter().all(|c| c.pass);
        ReportDocument {
            metadata: Metadata { command: command.into(), config_sha256: hash, version: env!("CARGO_PKG_VERSION").into() },
            tables: self.tables,
            checks: self.checks,
            data: Value::Object(self.data.into_iter().collect()),
            pass,
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}

// ------------------------------------------------------------------ commands

fn golden_for(group: &str, fixture: Option<&Path>) -> Result<Option<GoldenTable>> {
    if let Some(dir) = fixture {
        let p = dir.join(format!("{group}.tsv"));
        return if p.exists() { GoldenTable::load(&p).map(Some) } else { Ok(None) };
    }
    Ok(GoldenTable::bundled(group))
}

fn cmd_chartab(cfg: &RunConfig, fixture: Option<&Path>, b: &mut Builder) -> Result<()> {
    let cc = RunConfig::section(&cfg.chartab, "chartab")?;
    for name in &cc.groups {
        let g = Arc::new(named_group(name)?);
        let t = CharacterTable::compute(&g)?;
        let mut tab = Table::new(&format!("table {name}"), &[]);
        tab.header = std::iter::once("char".to_string()).chain(g.conjugacy_classes().labels.iter().cloned()).collect();
        for i in 0..t.len() {
            tab.push(std::iter::once(t.label(i).to_string()).chain(t.row(i).values().iter().map(|v| v.render_exact())));
        }
        b.tables.push(tab);
        let orth = t.verify_orthogonality()?;
        b.check(&format!("{name} orthogonality"), orth, format!("{} x {}", t.len(), g.num_classes()));
        match golden_for(name, fixture)? {
            Some(gold) => {
                let diff = diff_table(&t, &gold);
                let mut dt = Table::new(&format!("diff {name}"), &["row", "class", "expected", "computed"]);
                for d in &diff {
                    dt.push([d.row.clone(), d.class.clone(), d.expected.clone(), d.computed.clone()]);
                }
                b.check(&format!("{name} matches golden"), diff.is_empty(), format!("{} differing cells", diff.len()));
                b.tables.push(dt);
                b.data.insert(format!("diff_{name}"), to_value(&diff));
            }
            None => b.check(&format!("{name} golden"), true, "no golden table; comparison skipped"),
        }
    }
    Ok(())
}

fn cmd_branch(cfg: &RunConfig, b: &mut Builder) -> Result<()> {
    let bc = RunConfig::section(&cfg.branch, "branch")?;
    let ctx = IcosahedralContext::new()?;
    if bc.battery {
        let bat = icosahedral_battery(&ctx)?;
        let mut t = Table::new("battery", &["identity", "lhs", "rhs", "holds"]);
        for c in &bat {
            t.push([c.name.clone(), c.lhs.clone(), c.rhs.clone(), c.holds.to_string()]);
        }
        let failed = bat.iter().filter(|c| !c.holds).count();
        b.check("battery", failed == 0, format!("{} of {} identities hold", bat.len() - failed, bat.len()));
        b.tables.push(t);
        b.data.insert("battery".into(), to_value(&bat));
    }
    let mut t = Table::new("queries", &["query", "name", "degree", "irreducible", "values"]);
    let mut out = Vec::new();
    for q in &bc.queries {
        let r = run_query(&ctx, q)?;
        t.push([r.query.clone(), r.name.clone(), r.degree.to_string(), r.irreducible.to_string(), r.values.join(" ")]);
        out.push(r);
    }
    b.tables.push(t);
    b.data.insert("queries".into(), to_value(&out));
    Ok(())
}

fn cmd_fibers(cfg: &RunConfig, b: &mut Builder) -> Result<()> {
    let fc = RunConfig::section(&cfg.fibers, "fibers")?;
    let tower = build_tower(RunConfig::section(&cfg.tower, "tower")?)?;
    let emb = tower.f_prime_into_f()?;
    let mut t = Table::new("fibers", &["character", "count", "members", "reciprocity_total"]);
    let mut out = Vec::new();
    for q in &fc.query {
        let chi = tower
            .f_prime
            .table
            .by_label(&q.character)
            .ok_or_else(|| Error::Config(format!("'{}' is not a character of {}", q.character, tower.h.name())))?;
        let r = descent_fibers(chi, &emb, &tower.f.table, &q.character)?;
        let names: Vec<String> = r.members.iter().map(|m| m.label.clone()).collect();
        t.push([q.character.clone(), r.count.to_string(), names.join(" "), r.reciprocity_total.to_string()]);
        if let Some(e) = q.expect {
            b.check(&format!("fiber over {}", q.character), r.count == e, format!("{} found, {e} expected", r.count));
        }
        out.push(r);
    }
    b.tables.push(t);
    b.data.insert("fibers".into(), to_value(&out));
    Ok(())
}

fn cmd_satake(cfg: &RunConfig, b: &mut Builder) -> Result<()> {
    let sc = RunConfig::section(&cfg.satake, "satake")?;
    let mut t = Table::new("expansions", &["n", "j", "terms", "polynomial"]);
    let mut exps = Vec::new();
    for j in 1..=sc.j_max {
        let p = sym_test_poly(sc.n, j, "w", "w'")?;
        let r = p.render().join(" + ");
        t.push([sc.n.to_string(), j.to_string(), p.num_terms().to_string(), r.clone()]);
        exps.push(json!({"j": j, "terms": p.num_terms(), "polynomial": r}));
    }
    b.tables.push(t);
    b.data.insert("expansions".into(), Value::Array(exps));
    let unit = test_function(&ModulusIdeal::unit(), sc.n, |w| format!("{w}'"))?;
    b.check("unit modulus gives 1", unit.render() == vec!["1".to_string()], unit.render().join(" + "));
    if let Some(label) = &sc.character {
        let tower = dirichlet_tower()?;
        let chi = tower.e.table.by_label(label).ok_or_else(|| Error::Config(format!("unknown character '{label}'")))?.clone();
        let seed = cfg.stream.as_ref().map(|s| s.seed).unwrap_or(0);
        let stream = dirichlet_stream(&tower, seed, sc.truncation);
        let d = dirichlet_identity(&tower, &chi, &stream, sc.truncation)?;
        let mut ct = Table::new("coefficients", &["m", "hecke", "euler"]);
        for m in 1..=sc.truncation as usize {
            if !(d.hecke[m].is_zero() && d.euler[m].is_zero()) {
                ct.push([m.to_string(), d.hecke[m].render_exact(), d.euler[m].render_exact()]);
            }
        }
        b.tables.push(ct);
        b.check(
            "dirichlet identity",
            d.mismatches.is_empty(),
            format!("{} nonzero coefficients up to {}, {} mismatches", d.nonzero, d.bound, d.mismatches.len()),
        );
        let all = d.classes_seen.len() == tower.e.group().num_classes();
        b.check("stream covers every class", all, d.classes_seen.join(" "));
        b.data.insert("dirichlet".into(), to_value(&d));
    }
    Ok(())
}

fn cmd_smoothsum(cfg: &RunConfig, b: &mut Builder) -> Result<()> {
    let sc = RunConfig::section(&cfg.smoothsum, "smoothsum")?;
    let stream = cfg.stream_spec().ok_or_else(|| Error::Config("missing [stream] section".into()))?;
    let kernel = cfg.kernel()?;
    let mut t = Table::new("ratios", &["multiplicity", "pole_order", "x", "smoothed", "residue", "ratio", "error"]);
    let mut out = Vec::new();
    for &m in &sc.multiplicities {
        let (k, rows) = smoothed_asymptotics(m, &sc.x, stream, &kernel)?;
        for r in &rows {
            t.push([m.to_string(), k.to_string(), format!("{}", r.x), fmt(r.smoothed), fmt(r.residue), fmt(r.ratio), fmt(r.error)]);
        }
        if let (Some(tol), Some(last)) = (sc.tolerance, rows.last()) {
            b.check(&format!("ratio for pole order {k}"), last.error <= tol, format!("|ratio - 1| = {} at X = {}", fmt(last.error), last.x));
        }
        out.push(json!({"multiplicity": m, "pole_order": k, "rows": rows}));
    }
    b.tables.push(t);
    b.data.insert("ratios".into(), Value::Array(out));
    Ok(())
}

fn fmt(x: f64) -> String {
    format!("{x:.12e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt).unwrap_or_else(|| "-".into())
}

pub fn identity_spec(cfg: &RunConfig) -> Result<TraceIdentitySpec> {
    let ic = RunConfig::section(&cfg.identity, "identity")?;
    let tower = build_tower(RunConfig::section(&cfg.tower, "tower")?)?;
    let hecke = match &cfg.hecke {
        None => None,
        Some(h) => {
            let scale: Rational = h.scale.parse().map_err(|_| Error::Config(format!("bad rational '{}'", h.scale)))?;
            Some(HeckeInsertion { frob_class: h.class.clone(), q: h.q, j: h.j, shift: h.shift, scale })
        }
    };
    let stream = if ic.numeric {
        Some(cfg.stream_spec().ok_or_else(|| Error::Config("numeric mode needs a [stream] section".into()))?)
    } else {
        None
    };
    Ok(TraceIdentitySpec { theorem: Theorem::parse(&ic.theorem)?, n: ic.n, tower: Arc::new(tower), hecke, kernel: cfg.kernel()?, stream })
}

fn cmd_trace_identity(cfg: &RunConfig, b: &mut Builder) -> Result<()> {
    let spec = identity_spec(cfg)?;
    let r = verify_identity(&spec)?;
    let mut t = Table::new("entries", &["side", "label", "trace", "hom_I", "pole", "key", "weight", "limit", "contribution"]);
    for row in &r.rows {
        t.push([
            row.side.clone(),
            row.label.clone(),
            row.trace.clone(),
            row.hom_i_dim.to_string(),
            row.pole_order.to_string(),
            row.key.clone(),
            row.weight.clone(),
            opt(row.limit),
            opt(row.contribution),
        ]);
    }
    b.tables.push(t);
    let mut k = Table::new("keys", &["key", "pole", "lhs", "rhs", "equal", "limit"]);
    for row in &r.keys {
        k.push([row.key.clone(), row.pole_order.to_string(), row.lhs.clone(), row.rhs.clone(), row.equal.to_string(), opt(row.limit)]);
    }
    b.tables.push(k);
    let mut f = Table::new("fibers", &["lhs", "count", "members"]);
    for row in &r.fibers {
        f.push([row.lhs.clone(), row.count.to_string(), row.members.join(" ")]);
    }
    b.tables.push(f);
    let mut m = Table::new("base change", &["rhs", "lhs"]);
    for (a, l) in &r.base_change_map {
        m.push([a.clone(), l.clone().unwrap_or_else(|| "-".into())]);
    }
    b.tables.push(m);
    b.check("symbolic residual", r.symbolic_residual <= 1e-6, format!("{:e}", r.symbolic_residual));
    if let Some(nr) = r.numeric_residual {
        b.check("numeric residual", nr <= 1e-2, format!("{nr:e} (lhs {}, rhs {})", opt(r.lhs_total), opt(r.rhs_total)));
    }
    b.data.insert("report".into(), to_value(&r));
    Ok(())
}

/// Run one command against config text and produce its report.
pub fn run_command(command: &str, config_text: &str, fixture: Option<&Path>) -> Result<ReportDocument> {
    let cfg = RunConfig::parse(config_text)?;
    let mut b = Builder::new();
    match command {
        "chartab" => cmd_chartab(&cfg, fixture, &mut b)?,
        "branch" => cmd_branch(&cfg, &mut b)?,
        "fibers" => cmd_fibers(&cfg, &mut b)?,
        "satake" => cmd_satake(&cfg, &mut b)?,
        "smoothsum" => cmd_smoothsum(&cfg, &mut b)?,
        "trace-identity" => cmd_trace_identity(&cfg, &mut b)?,
        other => return Err(Error::Config(format!("unknown command '{other}'"))),
    }
    Ok(b.finish(command, config_hash(config_text.as_bytes())))
}

/// Exit code for a library error.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::Hypothesis(_) | Error::Io(_) | Error::CapExceeded { .. } => 2,
        _ => 1,
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with(cli: Cli) -> i32 {
    let name = cli.command.name();
    let args = cli.command.args().clone();
    let text = match std::fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.config.display());
            return 2;
        }
    };
    let report = match run_command(name, &text, args.fixture.as_deref()) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return error_code(&e);
        }
    };
    match &args.out {
        Some(dir) => {
            let write = || -> std::io::Result<()> {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join(format!("{name}.tsv")), report.to_tsv())?;
                std::fs::write(dir.join(format!("{name}.json")), report.to_json())
            };
            if let Err(e) = write() {
                eprintln!("error: cannot write report: {e}");
                return 2;
            }
            eprintln!("{name}: {}", if report.pass { "pass" } else { "FAIL" });
        }
        None => print!("{}", report.to_tsv()),
    }
    if report.pass {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;

    #[test]
    fn chartab_runs_and_is_deterministic() {
        let cfg = "[chartab]\ngroups = [\"quaternion\", \"cyclic3\"]\n";
        let a = run_command("chartab", cfg, None).unwrap();
        assert!(a.pass);
        assert_eq!(a.tables[0].rows.len(), 5);
        let b = run_command("chartab", cfg, None).unwrap();
        assert_eq!(a.to_tsv(), b.to_tsv());
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn config_errors_map_to_two() {
        let e = run_command("chartab", "[chartab]\ngroups = [\"nosuch\"]\n", None).unwrap_err();
        assert_eq!(error_code(&e), 2);
        let e = run_command("chartab", "[chartab]\ngroupz = []\n", None).unwrap_err();
        assert_eq!(error_code(&e), 2);
        let e = run_command("branch", "", None).unwrap_err();
        assert_eq!(error_code(&e), 2);
    }

    #[test]
    fn misconfigured_tower_is_a_hypothesis_error() {
        let cfg = "[identity]\ntheorem = \"3\"\nn = 3\n[tower]\nbase = \"sl2z5\"\nsubgroup = \"quaternion\"\n";
        let e = run_command("trace-identity", cfg, None).unwrap_err();
        assert!(matches!(e, Error::Hypothesis(_)));
        assert_eq!(error_code(&e), 2);
    }

    #[test]
    fn empty_branch_query_list() {
        let r = run_command("branch", "[branch]\nqueries = []\n", None).unwrap();
        assert!(r.pass && r.checks.is_empty() && r.tables[0].rows.is_empty());
    }

    #[test]
    fn fibers_with_expectations() {
        let cfg = "[tower]\nbase = \"sl2z5\"\nsubgroup = \"tetrahedral\"\n[[fibers.query]]\ncharacter = \"psi2\"\nexpect = 2\n[[fibers.query]]\ncharacter = \"1\"\nexpect = 1\n";
        let r = run_command("fibers", cfg, None).unwrap();
        assert!(r.pass, "{:?}", r.checks);
    }

    #[test]
    fn unit_scale_parses() {
        let q: Rational = "3/2".parse().unwrap();
        assert_eq!(q, Rational::new(BigInt::from(3), BigInt::from(2)));
    }
}
