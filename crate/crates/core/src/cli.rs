//! The `gstar` command-line front end.
//!
//! Exit codes: 0 success, 2 verdict false, 3 capacity exceeded, 4 input error.

use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::algebra::{GStarAlgebra, Validation};
use crate::catalog::{all_keys, build_named, set_keys, SET_NAMES};
use crate::codim::{DegreeVector, Engine, Mode, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::group::FiniteAbelianGroup;
use crate::growth::{
    minimality_report, pairwise_incomparability, GrowthReport, DEFAULT_CODIM_DEGREE, DEFAULT_IDEAL_DEGREE,
};
use crate::poly::Polynomial;
use crate::rational::Q;
use crate::reptheory::cocharacter;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 2;
pub const EXIT_INPUT: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "gstar", version, about = "Codimensions, cocharacters and identities of graded algebras with involution")]
pub struct Cli {
    /// Grading group used when the algebra text carries no `@group` suffix.
    #[arg(long, global = true, default_value = "Z2")]
    pub group: String,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,
    /// Largest `n!` the engine will allocate for one block.
    #[arg(long = "cap-monomials", global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct AlgebraArg {
    /// Catalog key such as `A2star@Z2`, or a path to an algebra JSON file.
    #[arg(long)]
    pub algebra: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Codimension sequence; `--blocks` lists every degree vector.
    Codim {
        #[command(flatten)]
        a: AlgebraArg,
        /// Degree or range, e.g. `4` or `1..5`.
        #[arg(long, default_value = "1..6")]
        n: String,
        #[arg(long)]
        blocks: bool,
    },
    /// Cocharacter multiplicities per degree vector.
    Cochar {
        #[command(flatten)]
        a: AlgebraArg,
        #[arg(long, default_value = "1..4")]
        n: String,
    },
    /// Is the polynomial an identity?
    Identity {
        #[command(flatten)]
        a: AlgebraArg,
        polynomial: String,
    },
    /// Do the generators produce every identity up to degree N?
    IdealCheck {
        #[command(flatten)]
        a: AlgebraArg,
        #[arg(long = "N", default_value_t = DEFAULT_IDEAL_DEGREE)]
        big_n: usize,
        #[arg(required = true)]
        generators: Vec<String>,
    },
    /// Does var(algebra) contain `other` up to degree N?
    Contains {
        #[command(flatten)]
        a: AlgebraArg,
        #[arg(long)]
        other: String,
        #[arg(long = "N", default_value_t = DEFAULT_IDEAL_DEGREE)]
        big_n: usize,
    },
    /// Codimension profile, forbidden-set exclusion and radical bound.
    Growth {
        #[command(flatten)]
        a: AlgebraArg,
        #[arg(long = "N", default_value_t = DEFAULT_IDEAL_DEGREE)]
        big_n: usize,
        #[arg(long, default_value_t = DEFAULT_CODIM_DEGREE)]
        n: usize,
        #[arg(long, default_value = "E")]
        set: String,
    },
    /// Catalog matching for minimal varieties of linear or quadratic growth.
    Minimal {
        #[command(flatten)]
        a: AlgebraArg,
        #[arg(long = "N", default_value_t = DEFAULT_IDEAL_DEGREE)]
        big_n: usize,
        #[arg(long, default_value_t = DEFAULT_CODIM_DEGREE)]
        n: usize,
    },
    /// Containment matrix over a catalog set.
    Incomparable {
        #[arg(long)]
        set: String,
        #[arg(long = "N", default_value_t = DEFAULT_IDEAL_DEGREE)]
        big_n: usize,
    },
    /// Catalog listing.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Check the axioms of an algebra JSON file.
    Validate { path: String },
    /// Random multilinear identities from the kernel, re-checked by evaluation.
    Selfcheck {
        #[command(flatten)]
        a: AlgebraArg,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    /// Every catalog key, or the members of `--set`.
    List {
        #[arg(long)]
        set: Option<String>,
    },
    /// Basis, grading and involution of one algebra.
    Show { name: String },
}

/// Parses `4`, `1..5` or `2..=6`.
pub fn parse_range(text: &str) -> Result<Vec<usize>> {
    let bad = || Error::MalformedInput(format!("bad degree range {text:?}"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let k = num(text)?;
            (k, k)
        }
    };
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

pub fn load_algebra(text: &str, fallback: &FiniteAbelianGroup) -> Result<GStarAlgebra> {
    let path = Path::new(text);
    if text.ends_with(".json") || path.is_file() {
        let raw = std::fs::read_to_string(path).map_err(|e| Error::MalformedInput(format!("{text}: {e}")))?;
        let v: Value = serde_json::from_str(&raw).map_err(|e| Error::MalformedInput(format!("{text}: {e}")))?;
        let a = GStarAlgebra::from_json(&v)?;
        return match a.validate() {
            Validation::Pass => Ok(a),
            Validation::Fail { axiom, witness } => {
                Err(Error::Structural(format!("{text} violates {axiom} at basis indices {witness:?}")))
            }
        };
    }
    build_named(text, fallback)
}

struct Ctx {
    group: FiniteAbelianGroup,
    format: Format,
    cap: usize,
    seed: u64,
}

impl Ctx {
    fn engine(&self, text: &str) -> Result<Engine> {
        Engine::with_cap(&load_algebra(text, &self.group)?, self.cap)
    }
}

fn csv_string(rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

fn emit(out: &mut dyn Write, ctx: &Ctx, rows: Vec<Vec<String>>, js: Value) -> Result<()> {
    let text = match ctx.format {
        Format::Csv => csv_string(&rows),
        Format::Json => serde_json::to_string_pretty(&js).expect("json") + "\n",
    };
    out.write_all(text.as_bytes()).map_err(|e| Error::MalformedInput(format!("write failed: {e}")))
}

fn verdict(out: &mut dyn Write, ctx: &Ctx, holds: bool, mut extra: Value) -> Result<i32> {
    extra["holds"] = json!(holds);
    let mut rows = vec![vec!["holds".to_string(), holds.to_string()]];
    if let Value::Object(m) = &extra {
        for (k, v) in m {
            if k != "holds" {
                rows.push(vec![k.clone(), v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string())]);
            }
        }
    }
    emit(out, ctx, rows, extra)?;
    Ok(if holds { EXIT_OK } else { EXIT_FALSE })
}

fn cmd_codim(out: &mut dyn Write, ctx: &Ctx, algebra: &str, n: &str, blocks: bool) -> Result<i32> {
    let e = ctx.engine(algebra)?;
    let ns = parse_range(n)?;
    let mut rows = Vec::new();
    let mut js = Vec::new();
    if blocks {
        rows.push(vec!["n".into(), "block".into(), "multinomial".into(), "codim".into()]);
    } else {
        rows.push(vec!["n".into(), "c_gstar".into(), "c_star".into(), "c_graded".into(), "c_ordinary".into()]);
    }
    for &k in &ns {
        let full = e.blocks(Mode::Full, k)?;
        let total: u64 = full.iter().map(|b| b.multinomial * b.codim as u64).sum();
        let (star, graded, ord) = (e.star_codim(k)?, e.graded_codim(k)?, e.ordinary_codim(k)?);
        if blocks {
            for b in &full {
                rows.push(vec![k.to_string(), b.block.to_string(), b.multinomial.to_string(), b.codim.to_string()]);
            }
        } else {
            rows.push(vec![k.to_string(), total.to_string(), star.to_string(), graded.to_string(), ord.to_string()]);
        }
        let bl: Vec<Value> = full
            .iter()
            .map(|b| json!({"block": b.block.0, "multinomial": b.multinomial, "codim": b.codim}))
            .collect();
        let mut row = json!({"n": k, "c_gstar": total, "c_star": star, "c_graded": graded, "c_ordinary": ord});
        if blocks {
            row["blocks"] = Value::Array(bl);
        }
        js.push(row);
    }
    emit(out, ctx, rows, json!({"algebra": e.algebra().name(), "rows": js}))?;
    Ok(EXIT_OK)
}

fn cmd_cochar(out: &mut dyn Write, ctx: &Ctx, algebra: &str, n: &str) -> Result<i32> {
    let e = ctx.engine(algebra)?;
    let mut rows = vec![vec!["n".into(), "block".into(), "shape".into(), "m".into(), "dim".into()]];
    let mut js = Vec::new();
    for k in parse_range(n)? {
        for nv in DegreeVector::all(e.slot_count(Mode::Full), k) {
            for (mp, m) in cocharacter(&e, &nv)? {
                rows.push(vec![k.to_string(), nv.to_string(), mp.to_string(), m.to_string(), mp.dim().to_string()]);
                js.push(json!({"n": k, "block": nv.0, "shape": mp.to_string(), "m": m, "dim": mp.dim()}));
            }
        }
    }
    emit(out, ctx, rows, json!({"algebra": e.algebra().name(), "rows": js}))?;
    Ok(EXIT_OK)
}

fn cmd_identity(out: &mut dyn Write, ctx: &Ctx, algebra: &str, text: &str) -> Result<i32> {
    let e = ctx.engine(algebra)?;
    let p = Polynomial::parse(text, &ctx.group_of(&e))?;
    let r = e.is_identity(&p)?;
    let mut extra = json!({"algebra": e.algebra().name(), "polynomial": p.display(e.algebra().group())});
    if let Some(w) = &r.witness {
        let a = e.algebra();
        let assign: Vec<String> =
            w.assignment.iter().map(|(v, x)| format!("{}={}", v.display(a.group()), a.format_element(x))).collect();
        extra["witness"] = json!(assign.join("; "));
        extra["value"] = json!(a.format_element(&w.value));
    }
    verdict(out, ctx, r.holds, extra)
}

impl Ctx {
    fn group_of(&self, e: &Engine) -> FiniteAbelianGroup {
        e.algebra().group().clone()
    }
}

fn cmd_ideal(out: &mut dyn Write, ctx: &Ctx, algebra: &str, big_n: usize, gens: &[String]) -> Result<i32> {
    let e = ctx.engine(algebra)?;
    let g = ctx.group_of(&e);
    let polys: Vec<Polynomial> = gens.iter().map(|s| Polynomial::parse(s, &g)).collect::<Result<_>>()?;
    let r = e.ideal_generated_check(&polys, big_n)?;
    let mut extra = json!({"algebra": e.algebra().name(), "N": big_n, "blocks_checked": r.blocks_checked});
    if let Some(d) = &r.discrepancy {
        extra["block"] = json!(d.block.to_string());
        extra["kind"] = json!(format!("{:?}", d.kind));
        extra["consequence_dim"] = json!(d.consequence_dim);
        extra["kernel_dim"] = json!(d.kernel_dim);
        extra["polynomial"] = json!(d.polynomial.display(&g));
    }
    verdict(out, ctx, r.equal(), extra)
}

fn cmd_contains(out: &mut dyn Write, ctx: &Ctx, algebra: &str, other: &str, big_n: usize) -> Result<i32> {
    let e = ctx.engine(algebra)?;
    let f = Engine::with_cap(&load_algebra(other, e.algebra().group())?, ctx.cap)?;
    let r = e.var_contains(&f, big_n)?;
    let mut extra = json!({"algebra": e.algebra().name(), "other": f.algebra().name(), "N": big_n});
    if let Some((nv, p)) = &r.failing {
        extra["block"] = json!(nv.to_string());
        extra["separator"] = json!(p.display(e.algebra().group()));
    }
    verdict(out, ctx, r.holds, extra)
}

fn cmd_growth(out: &mut dyn Write, ctx: &Ctx, algebra: &str, big_n: usize, n: usize, set: &str) -> Result<i32> {
    let e = ctx.engine(algebra)?;
    let r = GrowthReport::compute(&e, set, n, big_n)?;
    let opt = |q: &Option<Q>| q.as_ref().map(Q::to_string).unwrap_or_default();
    let mut rows = vec![
        vec!["algebra".to_string(), r.algebra.clone()],
        vec!["prefix".into(), r.prefix.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")],
        vec!["degree".into(), r.profile.degree.map(|d| d.to_string()).unwrap_or_default()],
        vec!["leading".into(), opt(&r.profile.leading)],
        vec!["onset".into(), r.profile.onset.map(|d| d.to_string()).unwrap_or_default()],
        vec!["class".into(), r.class.to_string()],
        vec!["radical_bound".into(), r.radical_bound.to_string()],
        vec!["radical_bound_holds".into(), r.radical_bound_holds.to_string()],
    ];
    for x in &r.exclusions {
        rows.push(vec![x.algebra.clone(), x.label()]);
    }
    emit(out, ctx, rows, r.to_json())?;
    Ok(EXIT_OK)
}

fn cmd_minimal(out: &mut dyn Write, ctx: &Ctx, algebra: &str, big_n: usize, n: usize) -> Result<i32> {
    let e = ctx.engine(algebra)?;
    let v = minimality_report(&e, big_n, n)?;
    let mut js = serde_json::to_value(&v).expect("json");
    js["algebra"] = json!(e.algebra().name());
    let rows = vec![vec!["algebra".into(), "verdict".into()], vec![e.algebra().name().to_string(), v.to_string()]];
    emit(out, ctx, rows, js)?;
    Ok(EXIT_OK)
}

fn cmd_incomparable(out: &mut dyn Write, ctx: &Ctx, set: &str, big_n: usize) -> Result<i32> {
    let r = pairwise_incomparability(set, &ctx.group, big_n)?;
    match ctx.format {
        Format::Csv => out.write_all(r.to_csv().as_bytes()).map_err(|e| Error::MalformedInput(e.to_string()))?,
        Format::Json => {
            let s = serde_json::to_string_pretty(&r).expect("json") + "\n";
            out.write_all(s.as_bytes()).map_err(|e| Error::MalformedInput(e.to_string()))?
        }
    }
    Ok(if r.all_separated() { EXIT_OK } else { EXIT_FALSE })
}

fn cmd_catalog(out: &mut dyn Write, ctx: &Ctx, action: &CatalogAction) -> Result<i32> {
    match action {
        CatalogAction::List { set } => {
            let keys = match set {
                Some(s) => set_keys(s, &ctx.group)?,
                None => all_keys(&ctx.group),
            };
            let mut rows = vec![vec!["name".to_string(), "exponential".to_string()]];
            let mut js = Vec::new();
            for k in keys {
                let name = k.display(&ctx.group);
                rows.push(vec![name.clone(), k.is_exponential().to_string()]);
                js.push(json!({"name": name, "exponential": k.is_exponential()}));
            }
            let sets: Vec<&str> = SET_NAMES.to_vec();
            emit(out, ctx, rows, json!({"group": ctx.group.spec(), "sets": sets, "algebras": js}))?;
        }
        CatalogAction::Show { name } => {
            let a = build_named(name, &ctx.group)?;
            match ctx.format {
                Format::Json => {
                    let mut v = a.to_json();
                    v["name"] = json!(a.name());
                    emit(out, ctx, vec![], v)?;
                }
                Format::Csv => {
                    let mut rows = vec![vec!["index".to_string(), "label".into(), "degree".into(), "involution".into()]];
                    for i in 0..a.dim() {
                        let img = a.involute(&a.basis_vector(i))?;
                        rows.push(vec![
                            i.to_string(),
                            a.labels()[i].clone(),
                            a.group().name(a.grading()[i]),
                            a.format_element(&img),
                        ]);
                    }
                    emit(out, ctx, rows, Value::Null)?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_validate(out: &mut dyn Write, ctx: &Ctx, path: &str) -> Result<i32> {
    let raw = std::fs::read_to_string(path).map_err(|e| Error::MalformedInput(format!("{path}: {e}")))?;
    let v: Value = serde_json::from_str(&raw).map_err(|e| Error::MalformedInput(format!("{path}: {e}")))?;
    let a = GStarAlgebra::from_json(&v)?;
    match a.validate() {
        Validation::Pass => verdict(out, ctx, true, json!({"path": path, "dim": a.dim()})),
        Validation::Fail { axiom, witness } => verdict(
            out,
            ctx,
            false,
            json!({"path": path, "axiom": axiom.to_string(), "witness": format!("{witness:?}")}),
        ),
    }
}

/// Picks random identities from the kernel of random blocks and checks each
/// by evaluating at random homogeneous elements.
fn cmd_selfcheck(out: &mut dyn Write, ctx: &Ctx, algebra: &str, n: usize, trials: usize) -> Result<i32> {
    let e = ctx.engine(algebra)?;
    let a = e.algebra();
    let slots = e.slot_count(Mode::Full);
    let blocks = DegreeVector::all(slots, n);
    let mut rng = StdRng::seed_from_u64(ctx.seed);
    let comps: Vec<Vec<Vec<Q>>> = (0..slots)
        .map(|s| {
            let sign = if s % 2 == 0 { crate::algebra::Sign::Plus } else { crate::algebra::Sign::Minus };
            a.homogeneous_component(s / 2, sign).basis().to_vec()
        })
        .collect();
    let mut failures = 0;
    let mut checked = 0;
    for _ in 0..trials {
        let nv = &blocks[rng.gen_range(0..blocks.len())];
        let kernel = e.kernel_identity_basis(nv)?;
        if kernel.is_empty() {
            continue;
        }
        let mut f = Polynomial::zero();
        for p in &kernel {
            f = f.add(&p.scale(&Q::from_int(rng.gen_range(-3..=3))));
        }
        let vars: Vec<_> = nv.variables();
        let mut values = std::collections::BTreeMap::new();
        for v in &vars {
            let mut x = vec![Q::ZERO; a.dim()];
            for b in &comps[v.slot()] {
                let c = Q::from_int(rng.gen_range(-3..=3));
                for (xi, bi) in x.iter_mut().zip(b) {
                    xi.add_mul(&c, bi);
                }
            }
            values.insert(*v, x);
        }
        checked += 1;
        if f.evaluate(a, &values)?.iter().any(|c| !c.is_zero()) {
            failures += 1;
        }
    }
    let extra = json!({"algebra": a.name(), "seed": ctx.seed, "evaluations": checked, "failures": failures});
    verdict(out, ctx, failures == 0, extra)
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let ctx = Ctx { group: FiniteAbelianGroup::parse_spec(&cli.group)?, format: cli.format, cap: cli.cap, seed: cli.seed };
    match &cli.command {
        Command::Codim { a, n, blocks } => cmd_codim(out, &ctx, &a.algebra, n, *blocks),
        Command::Cochar { a, n } => cmd_cochar(out, &ctx, &a.algebra, n),
        Command::Identity { a, polynomial } => cmd_identity(out, &ctx, &a.algebra, polynomial),
        Command::IdealCheck { a, big_n, generators } => cmd_ideal(out, &ctx, &a.algebra, *big_n, generators),
        Command::Contains { a, other, big_n } => cmd_contains(out, &ctx, &a.algebra, other, *big_n),
        Command::Growth { a, big_n, n, set } => cmd_growth(out, &ctx, &a.algebra, *big_n, *n, set),
        Command::Minimal { a, big_n, n } => cmd_minimal(out, &ctx, &a.algebra, *big_n, *n),
        Command::Incomparable { set, big_n } => cmd_incomparable(out, &ctx, set, *big_n),
        Command::Catalog { action } => cmd_catalog(out, &ctx, action),
        Command::Validate { path } => cmd_validate(out, &ctx, path),
        Command::Selfcheck { a, n, trials } => cmd_selfcheck(out, &ctx, &a.algebra, *n, *trials),
    }
}

/// Runs one invocation; diagnostics go to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    if cli.workers > 0 {
        // the global pool can only be set once per process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build_global();
    }
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
