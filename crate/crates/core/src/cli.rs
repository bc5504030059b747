//! The `grsod` command line.
//!
//! Exit codes: 0 when every check passes, 1 when a verification check
//! fails, 2 on usage or input errors. One report per invocation goes to
//! stdout, diagnostics to stderr.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::time::Instant;

use clap::{error::ErrorKind, Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bott::Cohomology;
use crate::cache::ResultCache;
use crate::collections::{self, CollectionSpec};
use crate::error::{Error, Result};
use crate::homspaces::{Engine, KClass, DEFAULT_MAX_SYM_DEGREE};
use crate::mutation::{self, KCollection};
use crate::report::{Check, Verdict, VerificationReport};
use crate::syntax::{parse_object, ParsedObject};
use crate::tensor::lr_product;
use crate::young::{check_grassmannian, Partition, Weight, YoungBox};

pub const REPORT_SCHEMA_VERSION: &str = "1";

#[derive(Parser, Debug)]
#[command(name = "grsod", version, about = "Schur bundles on Grassmannians and Tot(U)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Highest symmetric degree summed for Hom between pullbacks.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_SYM_DEGREE)]
    max_sym_degree: usize,
    /// Persistent cache directory (overrides SOD_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<std::path::PathBuf>,
    /// Log cache statistics and progress to stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CollectionKind {
    Kapranov,
    Modified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MutationOp {
    Left,
    Right,
    RotateLeft,
    RotateRight,
}

#[derive(Args, Debug)]
struct Context {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cohomology of L_alpha U (x) L_beta Q by Borel-Weil-Bott.
    Bwb {
        #[command(flatten)]
        ctx: Context,
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        u_weight: String,
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        q_weight: String,
    },
    /// Littlewood-Richardson product of two diagrams.
    Lr {
        #[arg(long, default_value = "")]
        lambda: String,
        #[arg(long, default_value = "")]
        mu: String,
    },
    /// Graded Hom between two objects on Gr(k,n) or on Tot(U).
    Hom {
        #[command(flatten)]
        ctx: Context,
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
    },
    /// Check the Kapranov or the modified collection on Gr(k,n).
    VerifyGrassmannian {
        #[command(flatten)]
        ctx: Context,
        #[arg(long, value_enum, default_value_t = CollectionKind::Kapranov)]
        collection: CollectionKind,
        /// Swap two items (0-based) before verifying.
        #[arg(long, value_name = "I,J")]
        swap: Option<String>,
    },
    /// Check the semiorthogonal decomposition of Tot(U).
    VerifyTotalSpace {
        #[command(flatten)]
        ctx: Context,
        /// Swap two items (0-based) before verifying.
        #[arg(long, value_name = "I,J")]
        swap: Option<String>,
    },
    /// Check the resolutions and mutation equivalences, for one diagram or the whole box.
    VerifyMutations {
        #[command(flatten)]
        ctx: Context,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Mutate a collection in K_0 and print the classes in the Kapranov basis.
    Mutate {
        #[command(flatten)]
        ctx: Context,
        #[arg(long, value_enum, default_value_t = CollectionKind::Kapranov)]
        collection: CollectionKind,
        #[arg(long, value_enum)]
        op: MutationOp,
        /// Position of the pair (I, I+1) for left/right mutations.
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
}

/// The JSON document written for every successful invocation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub schema_version: String,
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub timings: BTreeMap<String, u64>,
    pub overall: Verdict,
    pub notes: Vec<String>,
    pub result: Value,
}

impl Report {
    fn new(command: &str) -> Self {
        Report {
            schema_version: REPORT_SCHEMA_VERSION.into(),
            command: command.into(),
            parameters: BTreeMap::new(),
            checks: Vec::new(),
            timings: BTreeMap::new(),
            overall: Verdict::Pass,
            notes: Vec::new(),
            result: Value::Null,
        }
    }

    fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.into(), value.to_string());
    }

    fn absorb(&mut self, v: VerificationReport) {
        self.parameters.extend(v.parameters);
        self.checks.extend(v.checks);
        self.notes.extend(v.notes);
    }

    fn finish(&mut self) {
        self.overall = Verdict::from_bool(self.checks.iter().all(|c| c.verdict == Verdict::Pass));
    }

    pub fn exit_code(&self) -> i32 {
        match self.overall {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
        }
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {}", self.command, self.overall);
        for (k, v) in &self.parameters {
            let _ = writeln!(out, "  {k} = {v}");
        }
        for c in &self.checks {
            let _ = writeln!(out, "  [{}] {}: {}", c.verdict, c.name, c.witness);
        }
        if !self.result.is_null() {
            let _ = writeln!(out, "result:");
            render_value(&mut out, &self.result, 1);
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        for (stage, ms) in &self.timings {
            let _ = writeln!(out, "time {stage}: {ms} ms");
        }
        out
    }
}

fn render_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if x.is_object() || x.is_array() {
                    let _ = writeln!(out, "{pad}{k}:");
                    render_value(out, x, depth + 1);
                } else {
                    let _ = writeln!(out, "{pad}{k}: {}", scalar(x));
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if x.is_object() || x.is_array() {
                    let _ = writeln!(out, "{pad}-");
                    render_value(out, x, depth + 1);
                } else {
                    let _ = writeln!(out, "{pad}- {}", scalar(x));
                }
            }
        }
        x => {
            let _ = writeln!(out, "{pad}{}", scalar(x));
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        x => x.to_string(),
    }
}

/// What [`run`] produced: exit code and the two output streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl std::fmt::Display) -> Self {
        let line = msg.to_string();
        let line = line.lines().find(|l| !l.trim().is_empty()).unwrap_or("usage error");
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("{}\n", line.trim()),
        }
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Outcome {
                code: 0,
                stdout: e.to_string(),
                stderr: String::new(),
            };
        }
        Err(e) => return Outcome::usage(e),
    };
    if cli.global.verbose {
        let _ = env_logger::Builder::new()
            .filter_level(log::LevelFilter::Debug)
            .try_init();
    }
    let cache = match &cli.global.cache_dir {
        Some(d) => ResultCache::on_disk(d),
        None => ResultCache::from_env(),
    };
    let engine = match cache {
        Ok(c) => Engine::with_cache(c),
        Err(e) => return Outcome::usage(format!("error: {e}")),
    };
    let report = match execute(&engine, &cli) {
        Ok(r) => r,
        Err(e) => return Outcome::usage(format!("error: {e}")),
    };
    let stats = engine.cache().stats();
    log::info!(
        "cache: {} memory hits, {} disk hits, {} computed",
        stats.memory_hits,
        stats.disk_hits,
        stats.computed
    );
    let stdout = match cli.global.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Format::Table => report.to_table(),
    };
    Outcome {
        code: report.exit_code(),
        stdout,
        stderr: String::new(),
    }
}

fn parse_swap(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("--swap expects I,J with 0-based indices, got '{s}'"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn timed<T>(report: &mut Report, stage: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
    let start = Instant::now();
    let out = f();
    report.timings.insert(stage.into(), start.elapsed().as_millis() as u64);
    out
}

fn execute(engine: &Engine, cli: &Cli) -> Result<Report> {
    let max_sym = cli.global.max_sym_degree;
    let mut report;
    match &cli.command {
        Command::Bwb {
            ctx,
            u_weight,
            q_weight,
        } => {
            report = Report::new("bwb");
            check_grassmannian(ctx.k, ctx.n)?;
            let alpha = Weight::parse_padded(u_weight, ctx.k)?;
            let beta = Weight::parse_padded(q_weight, ctx.n - ctx.k)?;
            report.param("k", ctx.k);
            report.param("n", ctx.n);
            report.param("u_weight", &alpha);
            report.param("q_weight", &beta);
            let c = timed(&mut report, "bwb", || engine.bwb(ctx.k, ctx.n, &alpha, &beta))?;
            report.result = match &c {
                Cohomology::Vanishes => json!({ "vanishes": true, "dimension": 0 }),
                Cohomology::Degree { degree, weight } => json!({
                    "vanishes": false,
                    "degree": degree,
                    "weight": weight.to_string(),
                    "dimension": c.dimension()?,
                }),
            };
        }
        Command::Lr { lambda, mu } => {
            report = Report::new("lr");
            let l: Partition = lambda.parse()?;
            let m: Partition = mu.parse()?;
            report.param("lambda", &l);
            report.param("mu", &m);
            let prod = timed(&mut report, "lr", || Ok(lr_product(&l, &m)))?;
            let mut out = serde_json::Map::new();
            for (nu, c) in prod.iter().rev() {
                out.insert(nu.to_string(), json!(c));
            }
            report.result = Value::Object(out);
        }
        Command::Hom { ctx, from, to } => {
            report = Report::new("hom");
            check_grassmannian(ctx.k, ctx.n)?;
            let f = parse_object(from, ctx.k, ctx.n)?;
            let e = parse_object(to, ctx.k, ctx.n)?;
            report.param("k", ctx.k);
            report.param("n", ctx.n);
            report.param("from", from.trim());
            report.param("to", to.trim());
            report.result = match (f, e) {
                (ParsedObject::Gr(f), ParsedObject::Gr(e)) => {
                    let h = timed(&mut report, "hom", || engine.ext_gr(&f, &e))?;
                    json!({ "space": "grassmannian", "total": h.to_string() })
                }
                (ParsedObject::Tot(f), ParsedObject::Tot(e)) => {
                    report.param("max_sym_degree", max_sym);
                    let h = timed(&mut report, "hom", || engine.hom_tot(&f, &e, max_sym))?;
                    json!({
                        "space": "total_space",
                        "total": h.total.to_string(),
                        "strata": h.strata.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                        "truncated": h.truncated,
                    })
                }
                _ => {
                    return Err(Error::Parse(
                        "both objects must live on the same space (prefix both or neither with push:/pull:)".into(),
                    ))
                }
            };
        }
        Command::VerifyGrassmannian { ctx, collection, swap } => {
            report = Report::new("verify-grassmannian");
            let mut spec = match collection {
                CollectionKind::Kapranov => collections::kapranov_collection(ctx.k, ctx.n)?,
                CollectionKind::Modified => collections::modified_collection(ctx.k, ctx.n)?,
            };
            report.param("collection", format!("{collection:?}").to_lowercase());
            spec = apply_swap(&mut report, spec, swap.as_deref())?;
            let v = timed(&mut report, "verify", || collections::verify(engine, &spec, max_sym))?;
            report.result = json!({ "items": item_names(&spec) });
            report.absorb(v);
        }
        Command::VerifyTotalSpace { ctx, swap } => {
            report = Report::new("verify-total-space");
            let spec = collections::total_space_collection(ctx.k, ctx.n)?;
            report.param("max_sym_degree", max_sym);
            let spec = apply_swap(&mut report, spec, swap.as_deref())?;
            let v = timed(&mut report, "verify", || collections::verify(engine, &spec, max_sym))?;
            report.result = json!({ "items": item_names(&spec) });
            report.absorb(v);
        }
        Command::VerifyMutations { ctx, lambda } => {
            report = Report::new("verify-mutations");
            let diagrams = YoungBox::for_grassmannian(ctx.k, ctx.n)?;
            let lambdas = match lambda {
                Some(l) => vec![l.parse::<Partition>()?],
                None => diagrams.members().to_vec(),
            };
            let reports = timed(&mut report, "verify", || {
                let mut out = Vec::new();
                for l in &lambdas {
                    out.push(mutation::verify_resolution(engine, l, ctx.k, ctx.n)?);
                    out.push(mutation::verify_mutation_equivalence(engine, l, ctx.k, ctx.n)?);
                }
                Ok(out)
            })?;
            for (i, v) in reports.into_iter().enumerate() {
                let l = &lambdas[i / 2];
                let kind = if i % 2 == 0 { "resolution" } else { "mutation" };
                for c in v.checks {
                    report.checks.push(Check {
                        name: format!("{kind}[{l}]/{}", c.name),
                        ..c
                    });
                }
            }
            report.param("k", ctx.k);
            report.param("n", ctx.n);
            if let Some(l) = lambda {
                report.param("lambda", l);
            }
            if lambda.is_none() {
                let per = timed(&mut report, "periodicity", || {
                    mutation::rotation_periodicity(engine, ctx.k, ctx.n)
                })?;
                report.notes.push(format!(
                    "report-only: {} right rotations return the original classes up to sign: {}; give the Serre-twisted classes: {}",
                    per.rotations, per.returns_to_original, per.matches_serre_twist
                ));
            }
        }
        Command::Mutate {
            ctx,
            collection,
            op,
            index,
        } => {
            report = Report::new("mutate");
            let spec = match collection {
                CollectionKind::Kapranov => collections::kapranov_collection(ctx.k, ctx.n)?,
                CollectionKind::Modified => collections::modified_collection(ctx.k, ctx.n)?,
            };
            report.param("k", ctx.k);
            report.param("n", ctx.n);
            report.param("collection", format!("{collection:?}").to_lowercase());
            report.param("op", format!("{op:?}").to_lowercase());
            let basis = engine.kbasis(ctx.k, ctx.n)?;
            let classes = spec
                .items
                .iter()
                .map(|it| engine.kclass(&it.object))
                .collect::<Result<Vec<_>>>()?;
            let coll = KCollection::new(classes);
            let out = timed(&mut report, "mutate", || mutate(&basis, &coll, *op, *index))?;
            if matches!(op, MutationOp::Left | MutationOp::Right) {
                report.param("index", index);
            }
            let coeffs = out
                .classes
                .iter()
                .map(|c| basis.expand(c).map(|v| fmt_coeffs(&v)))
                .collect::<Result<Vec<_>>>()?;
            let basis_names: Vec<String> = basis.diagrams().members().iter().map(|l| format!("U[{l}]")).collect();
            report.result = json!({ "basis": basis_names, "classes": coeffs });
        }
    }
    report.finish();
    Ok(report)
}

fn fmt_coeffs(v: &[i64]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn mutate(basis: &crate::homspaces::KBasis, coll: &KCollection, op: MutationOp, i: usize) -> Result<KCollection> {
    let pair = |i: usize| -> Result<(KClass, KClass)> {
        if i + 1 >= coll.len() {
            return Err(Error::Parse(format!(
                "--index {i} has no right neighbour in a collection of {} items",
                coll.len()
            )));
        }
        Ok((coll.classes[i].clone(), coll.classes[i + 1].clone()))
    };
    let mut classes = coll.classes.clone();
    match op {
        MutationOp::Right => {
            let (a, b) = pair(i)?;
            classes[i] = b.clone();
            classes[i + 1] = mutation::right_mutation_k(basis, &a, &b)?;
        }
        MutationOp::Left => {
            let (a, b) = pair(i)?;
            classes[i] = mutation::left_mutation_k(basis, &a, &b)?;
            classes[i + 1] = a;
        }
        MutationOp::RotateLeft => return mutation::rotate_left_k(basis, coll),
        MutationOp::RotateRight => return mutation::rotate_right_k(basis, coll),
    }
    Ok(KCollection::new(classes))
}

fn apply_swap(report: &mut Report, spec: CollectionSpec, swap: Option<&str>) -> Result<CollectionSpec> {
    match swap {
        Some(s) => {
            let (i, j) = parse_swap(s)?;
            report.param("swap", format!("{i},{j}"));
            spec.swapped(i, j)
        }
        None => Ok(spec),
    }
}

fn item_names(spec: &CollectionSpec) -> Vec<String> {
    spec.items.iter().map(|i| i.name()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("grsod").chain(args.iter().copied()))
    }

    fn json_of(o: &Outcome) -> Report {
        serde_json::from_str(&o.stdout).unwrap()
    }

    #[test]
    fn bwb_on_p1() {
        let o = go(&["bwb", "--k", "1", "--n", "2", "--u-weight", "2", "--q-weight", "0"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let r = json_of(&o);
        assert_eq!(r.result["degree"], 1);
        assert_eq!(r.result["dimension"], 1);
        let o = go(&["bwb", "--k", "1", "--n", "2", "--u-weight", "-2"]);
        assert_eq!(json_of(&o).result["dimension"], 3);
    }

    #[test]
    fn lr_table() {
        let o = go(&["lr", "--lambda", "2,1", "--mu", "2,1", "--format", "table"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("3,2,1: 2"), "{}", o.stdout);
    }

    #[test]
    fn hom_examples() {
        let o = go(&["hom", "--k", "2", "--n", "4", "--from", "O", "--to", "U[0,-2]"]);
        assert_eq!(json_of(&o).result["total"], "{0: 10}");
        let o = go(&[
            "hom",
            "--k",
            "2",
            "--n",
            "4",
            "--from",
            "pull:O",
            "--to",
            "pull:O",
            "--max-sym-degree",
            "2",
        ]);
        let r = json_of(&o);
        assert_eq!(r.result["strata"][2], "{0: 10}");
        assert_eq!(r.result["truncated"], true);
        let o = go(&["hom", "--k", "2", "--n", "4", "--from", "push:O", "--to", "O"]);
        assert_eq!(o.code, 2);
    }

    #[test]
    fn usage_errors_are_single_line() {
        for args in [
            vec!["bwb", "--k", "3", "--n", "3"],
            vec!["bwb", "--k", "1", "--n", "2", "--u-weight", "x"],
            vec!["lr", "--lambda", "1,2"],
            vec!["verify-total-space", "--k", "2", "--n", "4", "--bogus"],
            vec!["verify-total-space", "--k", "2", "--n", "4", "--swap", "0"],
            vec!["mutate", "--k", "1", "--n", "2", "--op", "right", "--index", "1"],
            vec!["frobnicate"],
        ] {
            let o = go(&args);
            assert_eq!(o.code, 2, "{args:?}");
            assert_eq!(o.stderr.lines().count(), 1, "{args:?}: {}", o.stderr);
            assert!(o.stdout.is_empty());
        }
    }

    #[test]
    fn mutate_on_p1() {
        let o = go(&["mutate", "--k", "1", "--n", "2", "--op", "rotate-right"]);
        let r = json_of(&o);
        assert_eq!(r.result["basis"], json!(["U[1]", "U[]"]));
        // <O(-1), O> rotated right is <+-O(-2), O(-1)>; O(-2) = 2 O(-1) - O
        let first = r.result["classes"][0].as_str().unwrap();
        assert!(first == "2,-1" || first == "-2,1", "{first}");
        assert_eq!(r.result["classes"][1], "1,0");
    }
}
