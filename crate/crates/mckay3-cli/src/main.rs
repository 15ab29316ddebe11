//! `mckay3`: McKay correspondence computations for finite subgroups of SL2
//! and SL3 from the command line.
//!
//! Exit status: 0 on success, 1 on invalid input, 2 on a failed internal
//! consistency check.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use mckay3::analysis::Analysis;
use mckay3::chartab::{character_table, CharacterTable};
use mckay3::expr::parse_cyclo;
use mckay3::grp::{ConjClassSet, FiniteMatrixGroup, GroupElement, DEFAULT_CAP};
use mckay3::mckay::{mckay_matrices, IMat, McKayData};
use mckay3::presets::{build, catalog};
use mckay3::roots::{min_partition, ReflectionSet};
use mckay3::series::{closed_form, molien, RationalBranchingSeries};
use mckay3::CycloNum;

#[derive(Parser)]
#[command(name = "mckay3", version, about = "McKay correspondence for finite subgroups of SL2 and SL3")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the group and its conjugacy classes.
    Enumerate(Job),
    /// Irreducible character table.
    Chartab(Job),
    /// McKay matrices A1, A2 and the eigenvalue list.
    Mckay(Job),
    /// Generalized Cartan matrix C = 2I - A1 - A1ᵀ + 2·Diag(A1).
    Cartan(Job),
    /// McKay graph.
    Graph(Job),
    /// Closed-form branching series and its expansion.
    Series {
        #[command(flatten)]
        job: Job,
        /// Only the closed form, without the expansion.
        #[arg(long)]
        closed: bool,
    },
    /// Molien series of the invariant ring.
    Molien(Job),
    /// Minimal partition of the simple reflections into orthogonal sets.
    Partition(Job),
    /// Run the full invariant suite.
    Verify(Job),
    /// List the built-in families.
    Catalog {
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Job {
    /// Built-in family, e.g. E8, A1, BDa, I.
    #[arg(long, required_unless_present = "gens", conflicts_with = "gens")]
    preset: Option<String>,
    /// Family parameter as k=v; repeatable.
    #[arg(long = "param", value_parser = parse_param)]
    params: Vec<(String, i64)>,
    /// JSON file with a list of generator matrices.
    #[arg(long)]
    gens: Option<PathBuf>,
    /// Expansion level, total degree m+n.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(0..=64))]
    level: u32,
    /// Write outputs into this directory instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory of cached character tables and series, keyed by generator hash.
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Also run the full invariant suite.
    #[arg(long)]
    verify: bool,
    /// Largest group order to enumerate.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Txt,
}

impl Format {
    fn ext(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Dot => "dot",
            Format::Txt => "txt",
        }
    }
}

/// Invalid command-line input; exits with status 1.
#[derive(Debug)]
struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn parse_param(s: &str) -> std::result::Result<(String, i64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected k=v, got {s:?}"))?;
    let v = v.trim().parse().map_err(|_| format!("parameter {k} is not an integer: {v:?}"))?;
    Ok((k.trim().to_string(), v))
}

/// Matrix entry in a generator file: a serialized cyclotomic number or an
/// expression such as "z5^2" or "-1/2".
#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Exact(CycloNum),
    Text(String),
    Int(i64),
}

fn read_generators(path: &Path) -> Result<Vec<GroupElement>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mats: Vec<Vec<Vec<Entry>>> =
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: not a list of matrices: {e}", path.display())))?;
    let mut out = Vec::with_capacity(mats.len());
    for m in mats {
        let rows = m
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|e| match e {
                        Entry::Exact(c) => Ok(c),
                        Entry::Text(s) => parse_cyclo(&s),
                        Entry::Int(v) => Ok(CycloNum::from_int(v)),
                    })
                    .collect::<mckay3::Result<Vec<_>>>()
            })
            .collect::<mckay3::Result<Vec<_>>>()?;
        out.push(GroupElement::from_rows(rows)?);
    }
    if out.is_empty() {
        return Err(usage(format!("{}: no generators", path.display())));
    }
    Ok(out)
}

#[derive(Default, Serialize, Deserialize)]
struct CacheEntry {
    hash: String,
    table: Option<CharacterTable>,
    series: Option<RationalBranchingSeries>,
}

/// Lazily evaluated pipeline for one group.
struct Pipeline<'a> {
    job: &'a Job,
    label: String,
    generators: Vec<GroupElement>,
    hash: String,
    cache: CacheEntry,
    dirty: bool,
    group: Option<(FiniteMatrixGroup, ConjClassSet)>,
}

impl<'a> Pipeline<'a> {
    fn new(job: &'a Job) -> Result<Self> {
        let (label, generators) = match (&job.preset, &job.gens) {
            (Some(name), None) => {
                let params: BTreeMap<String, i64> = job.params.iter().cloned().collect();
                let p = build(name, &params)?;
                (p.label(), p.generators)
            }
            (None, Some(path)) => {
                if !job.params.is_empty() {
                    return Err(usage("--param applies only to --preset"));
                }
                (path.display().to_string(), read_generators(path)?)
            }
            _ => return Err(usage("give exactly one of --preset and --gens")),
        };
        let hash = FiniteMatrixGroup::generator_hash(&generators);
        let mut cache = CacheEntry { hash: hash.clone(), ..Default::default() };
        if let Some(path) = Self::cache_path(job, &hash) {
            if let Ok(text) = fs::read_to_string(&path) {
                match serde_json::from_str::<CacheEntry>(&text) {
                    Ok(c) if c.hash == hash => cache = c,
                    _ => eprintln!("ignoring unreadable cache file {}", path.display()),
                }
            }
        }
        Ok(Pipeline { job, label, generators, hash, cache, dirty: false, group: None })
    }

    fn cache_path(job: &Job, hash: &str) -> Option<PathBuf> {
        job.cache.as_ref().map(|d| d.join(format!("{hash}.json")))
    }

    fn group(&mut self) -> Result<&(FiniteMatrixGroup, ConjClassSet)> {
        if self.group.is_none() {
            let g = FiniteMatrixGroup::enumerate(&self.generators, self.job.cap).context("stage enumerate")?;
            let cs = g.conjugacy_classes().context("stage classes")?;
            self.group = Some((g, cs));
        }
        Ok(self.group.as_ref().expect("just set"))
    }

    fn table(&mut self) -> Result<CharacterTable> {
        self.group()?;
        let (g, cs) = self.group.as_ref().expect("computed");
        if let Some(t) = &self.cache.table {
            if t.class_sizes == cs.sizes && t.check_rows(cs).is_ok() {
                return Ok(t.clone());
            }
            eprintln!("cached character table does not fit the classes; recomputing");
        }
        let t = character_table(g, cs).context("stage chartab")?;
        self.cache.table = Some(t.clone());
        self.dirty = true;
        Ok(t)
    }

    fn mckay(&mut self) -> Result<McKayData> {
        let t = self.table()?;
        let (_, cs) = self.group.as_ref().expect("computed");
        mckay_matrices(cs, &t).context("stage mckay")
    }

    fn series(&mut self) -> Result<RationalBranchingSeries> {
        if let Some(s) = &self.cache.series {
            return Ok(s.clone());
        }
        let t = self.table()?;
        let (_, cs) = self.group.as_ref().expect("computed");
        let s = closed_form(cs, &t).context("stage series")?;
        self.cache.series = Some(s.clone());
        self.dirty = true;
        Ok(s)
    }

    fn analysis(&mut self) -> Result<Analysis> {
        let series = self.series()?;
        let table = self.table()?;
        let (g, cs) = self.group.clone().expect("computed");
        Analysis::with_series(g, cs, table, series).context("stage analysis")
    }

    fn save_cache(&self) -> Result<()> {
        let Some(path) = Self::cache_path(self.job, &self.hash) else { return Ok(()) };
        if !self.dirty {
            return Ok(());
        }
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        let text = serde_json::to_string_pretty(&self.cache)? + "\n";
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
    }
}

/// Collected output artifacts, written in order.
struct Output {
    dir: Option<PathBuf>,
    files: Vec<(String, String)>,
}

impl Output {
    fn new(dir: Option<PathBuf>) -> Self {
        Output { dir, files: Vec::new() }
    }

    fn add(&mut self, name: &str, fmt: Format, content: String) {
        self.files.push((format!("{name}.{}", fmt.ext()), content));
    }

    fn json(&mut self, name: &str, v: &Value) -> Result<()> {
        self.add(name, Format::Json, serde_json::to_string_pretty(v)? + "\n");
        Ok(())
    }

    fn flush(self) -> Result<()> {
        match &self.dir {
            Some(dir) => {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                for (name, content) in &self.files {
                    let path = dir.join(name);
                    fs::write(&path, content).with_context(|| format!("writing {}", path.display()))?;
                    println!("{}", path.display());
                }
            }
            None => {
                for (_, content) in &self.files {
                    print!("{content}");
                }
            }
        }
        Ok(())
    }
}

fn check_format(cmd: &str, f: Format, allowed: &[Format]) -> Result<()> {
    if allowed.contains(&f) {
        Ok(())
    } else {
        let names: Vec<&str> = allowed.iter().map(|f| f.ext()).collect();
        Err(usage(format!("{cmd} supports --format {}", names.join("|"))))
    }
}

fn matrix_text(m: &IMat) -> String {
    let w = m.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1);
    m.iter().map(|r| r.iter().map(|v| format!("{v:>w$}")).collect::<Vec<_>>().join(" ") + "\n").collect()
}

fn matrix_csv(m: &IMat) -> String {
    m.iter().map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(",") + "\n").collect()
}

fn enumerate_out(p: &mut Pipeline, fmt: Format, out: &mut Output) -> Result<()> {
    check_format("enumerate", fmt, &[Format::Txt, Format::Json])?;
    let label = p.label.clone();
    let hash = p.hash.clone();
    let (g, cs) = p.group()?;
    if fmt == Format::Json {
        return out.json("group", &serde_json::to_value(g.dump(cs))?);
    }
    let mut s = format!(
        "group {label}\ndimension {}\norder {}\nclasses {}\nexponent {}\ngenerator hash {hash}\n",
        g.dim(),
        g.order(),
        cs.len(),
        cs.exponent
    );
    for j in 0..cs.len() {
        s.push_str(&format!("class {j}: size {}, order {}, trace {}\n", cs.sizes[j], cs.orders[j], cs.traces[j]));
    }
    out.add("group", fmt, s);
    Ok(())
}

fn chartab_out(p: &mut Pipeline, fmt: Format, out: &mut Output) -> Result<()> {
    check_format("chartab", fmt, &[Format::Txt, Format::Json, Format::Csv])?;
    let t = p.table()?;
    match fmt {
        Format::Json => out.json("chartab", &serde_json::to_value(&t)?)?,
        Format::Csv => {
            let mut s = String::from("character,degree");
            for j in 0..t.class_sizes.len() {
                s.push_str(&format!(",class{j}"));
            }
            s.push_str("\nsize,");
            for n in &t.class_sizes {
                s.push_str(&format!(",{n}"));
            }
            s.push('\n');
            for (i, row) in t.rows.iter().enumerate() {
                s.push_str(&format!("chi{i},{}", t.degrees[i]));
                for v in row {
                    s.push_str(&format!(",{v}"));
                }
                s.push('\n');
            }
            out.add("chartab", fmt, s);
        }
        _ => {
            let mut s = format!("class sizes: {:?}\nmethod: {:?}\n", t.class_sizes, t.method);
            for (i, row) in t.rows.iter().enumerate() {
                let vals: Vec<String> = row.iter().map(CycloNum::to_string).collect();
                s.push_str(&format!("chi{i} (degree {}): {}\n", t.degrees[i], vals.join(" | ")));
            }
            out.add("chartab", fmt, s);
        }
    }
    Ok(())
}

fn mckay_out(p: &mut Pipeline, fmt: Format, out: &mut Output) -> Result<()> {
    check_format("mckay", fmt, &[Format::Txt, Format::Json, Format::Csv])?;
    let m = p.mckay()?;
    match fmt {
        Format::Json => out.json("mckay", &serde_json::to_value(&m)?)?,
        Format::Csv => {
            out.add("a1", fmt, matrix_csv(&m.a1));
            out.add("a2", fmt, matrix_csv(&m.a2));
        }
        _ => {
            let theta: Vec<String> = m.theta.iter().map(CycloNum::to_string).collect();
            let s = format!(
                "A1 (rank {}):\n{}A2:\n{}theta: {}\n",
                m.rank_a1,
                matrix_text(&m.a1),
                matrix_text(&m.a2),
                theta.join(" | ")
            );
            out.add("mckay", fmt, s);
        }
    }
    Ok(())
}

fn cartan_out(p: &mut Pipeline, fmt: Format, out: &mut Output) -> Result<()> {
    check_format("cartan", fmt, &[Format::Txt, Format::Json, Format::Csv])?;
    let m = p.mckay()?;
    match fmt {
        Format::Json => out.json("cartan", &json!({ "c": m.c }))?,
        Format::Csv => out.add("cartan", fmt, matrix_csv(&m.c)),
        _ => out.add("cartan", fmt, matrix_text(&m.c)),
    }
    Ok(())
}

fn graph_out(p: &mut Pipeline, fmt: Format, out: &mut Output) -> Result<()> {
    check_format("graph", fmt, &[Format::Dot, Format::Json, Format::Txt])?;
    let m = p.mckay()?;
    let edges = m.edges();
    match fmt {
        Format::Json => {
            let e: Vec<Value> = edges.iter().map(|&(i, j, k)| json!([i, j, k])).collect();
            out.json("graph", &json!({ "vertices": m.len(), "edges": e }))?;
        }
        Format::Txt => {
            let mut s = format!("vertices {}\nedges {}\n", m.len(), edges.len());
            for (i, j, k) in edges {
                s.push_str(&format!("{i} -- {j} (multiplicity {k})\n"));
            }
            out.add("graph", fmt, s);
        }
        _ => {
            let labels: Vec<String> = (0..m.len()).map(|i| format!("chi{i}")).collect();
            out.add("graph", fmt, m.graph_dot(&labels));
        }
    }
    Ok(())
}

fn series_out(p: &mut Pipeline, fmt: Format, closed: bool, out: &mut Output) -> Result<()> {
    check_format("series", fmt, &[Format::Txt, Format::Json, Format::Csv])?;
    if fmt == Format::Csv && closed {
        return Err(usage("the closed form has no CSV rendering; use --format txt|json"));
    }
    let s = p.series()?;
    let level = p.job.level;
    let expansion = if closed { None } else { Some(s.expand(level).context("stage expand")?) };
    match fmt {
        Format::Json => {
            let mut v = json!({ "closed": s.to_json() });
            if let Some(e) = &expansion {
                v["expansion"] = e.to_json();
            }
            out.json("series", &v)?;
        }
        Format::Csv => out.add("expand", fmt, expansion.expect("not closed").to_csv()),
        _ => {
            out.add("series", fmt, s.to_text());
            if let Some(e) = expansion {
                out.add("expand", Format::Csv, e.to_csv());
            }
        }
    }
    Ok(())
}

fn molien_out(p: &mut Pipeline, fmt: Format, out: &mut Output) -> Result<()> {
    check_format("molien", fmt, &[Format::Txt, Format::Json])?;
    let (_, cs) = p.group()?;
    let m = molien(cs).context("stage molien")?;
    if fmt == Format::Json {
        out.json("molien", &json!({ "num": m.num, "den": {"phi": m.den.0} }))
    } else {
        out.add("molien", fmt, m.to_text());
        Ok(())
    }
}

fn partition_text(r: &ReflectionSet) -> String {
    let mut s = format!("p={}\ncertified minimal: {}\n", r.p, r.exact);
    for (k, set) in r.partition.iter().enumerate() {
        let names: Vec<String> = set.iter().map(|v| format!("s{v}")).collect();
        s.push_str(&format!("tau{k} = {}\n", names.join("·")));
    }
    s.push_str(&format!("C = {}I - {}\n", r.p, (0..r.p).map(|k| format!("tau{k}")).collect::<Vec<_>>().join(" - ")));
    s
}

fn partition_out(p: &mut Pipeline, fmt: Format, out: &mut Output) -> Result<()> {
    check_format("partition", fmt, &[Format::Txt, Format::Json, Format::Dot])?;
    let m = p.mckay()?;
    let r = min_partition(&m.c).context("stage partition")?;
    match fmt {
        Format::Json => out.json("partition", &serde_json::to_value(&r)?)?,
        Format::Dot => out.add("partition", fmt, r.dot(&m.c)),
        _ => out.add("partition", fmt, partition_text(&r)),
    }
    Ok(())
}

fn verify_out(p: &mut Pipeline, fmt: Format, out: &mut Output) -> Result<()> {
    check_format("verify", fmt, &[Format::Txt, Format::Json])?;
    let a = p.analysis()?;
    let lines = a.verify(p.job.level).context("stage verify")?;
    if fmt == Format::Json {
        out.json("verify", &json!({ "group": p.label, "level": p.job.level, "passed": lines }))
    } else {
        let s: String = lines.iter().map(|l| format!("ok  {l}\n")).collect();
        out.add("verify", fmt, format!("group {}\n{s}", p.label));
        Ok(())
    }
}

fn catalog_out(fmt: Format, out: &mut Output) -> Result<()> {
    check_format("catalog", fmt, &[Format::Txt, Format::Json])?;
    let cat = catalog();
    if fmt == Format::Json {
        return out.json("catalog", &serde_json::to_value(&cat)?);
    }
    let mut s = String::new();
    for e in &cat {
        for v in &e.variants {
            let params = if v.params.is_empty() { String::new() } else { format!("({})", v.params.join(",")) };
            s.push_str(&format!("{:<4} {:<4} {}{params}", e.group, e.class, v.name));
            if !v.reference.is_empty() {
                s.push_str(&format!("  [{} reference parameter sets]", v.reference.len()));
            }
            s.push('\n');
        }
    }
    out.add("catalog", fmt, s);
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let (job, default_fmt, closed) = match &cli.cmd {
        Command::Catalog { format, out } => {
            let mut o = Output::new(out.clone());
            catalog_out(format.unwrap_or(Format::Txt), &mut o)?;
            return o.flush();
        }
        Command::Graph(j) => (j, Format::Dot, false),
        Command::Series { job, closed } => (job, Format::Txt, *closed),
        Command::Enumerate(j)
        | Command::Chartab(j)
        | Command::Mckay(j)
        | Command::Cartan(j)
        | Command::Molien(j)
        | Command::Partition(j)
        | Command::Verify(j) => (j, Format::Txt, false),
    };
    let fmt = job.format.unwrap_or(default_fmt);
    let mut p = Pipeline::new(job)?;
    let mut out = Output::new(job.out.clone());
    let result = match &cli.cmd {
        Command::Enumerate(_) => enumerate_out(&mut p, fmt, &mut out),
        Command::Chartab(_) => chartab_out(&mut p, fmt, &mut out),
        Command::Mckay(_) => mckay_out(&mut p, fmt, &mut out),
        Command::Cartan(_) => cartan_out(&mut p, fmt, &mut out),
        Command::Graph(_) => graph_out(&mut p, fmt, &mut out),
        Command::Series { .. } => series_out(&mut p, fmt, closed, &mut out),
        Command::Molien(_) => molien_out(&mut p, fmt, &mut out),
        Command::Partition(_) => partition_out(&mut p, fmt, &mut out),
        Command::Verify(_) => verify_out(&mut p, fmt, &mut out),
        Command::Catalog { .. } => unreachable!("handled above"),
    };
    result.and_then(|()| {
        if job.verify && !matches!(cli.cmd, Command::Verify(_)) {
            let a = p.analysis()?;
            for line in a.verify(job.level).context("stage verify")? {
                eprintln!("ok  {line}");
            }
        }
        Ok(())
    })?;
    p.save_cache()?;
    out.flush()
}

/// 1 for invalid input, 2 for failed consistency checks.
fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<mckay3::Error>() {
            return if e.is_domain() { 1 } else { 2 };
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
