use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use qtk_core::emit::{self, Format, Renderer, TableKind};
use qtk_core::qmink::{Gauge, Table, TableFixtures};
use qtk_core::replib::TwistFamily;
use qtk_core::scalars::parse_scalar;
use qtk_core::suite::{run_suite, RunConfig, Suite};

#[derive(Parser)]
#[command(name = "qtk", version, about = "Exact verification of twisted sl2 / Lorentz structures and q-Minkowski space")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run verification suites and write a report.
    Verify(VerifyArgs),
    /// Emit exchange, relation, gamma or Clifford tables.
    Tables(TablesArgs),
    /// Emit a twist matrix with its twisted R-matrix and checks.
    Twist(TwistArgs),
}

#[derive(Args)]
struct Common {
    /// json or markdown
    #[arg(long)]
    format: Option<String>,
    /// Output file, written atomically. Defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Line-oriented key=value file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma list of hopf, rep, mink, dirac, all.
    #[arg(long)]
    suite: Option<String>,
    /// xi truncation order (>= 1).
    #[arg(long)]
    order: Option<usize>,
    /// Polynomial degree bound (>= 2).
    #[arg(long)]
    degree: Option<u32>,
    /// paper or symmetric-footnote
    #[arg(long)]
    gauge: Option<String>,
    /// JSON file with replacement a/b tables.
    #[arg(long)]
    fixtures: Option<PathBuf>,
    /// Count discrepancies with displayed formulas as failures.
    #[arg(long)]
    strict: bool,
    /// Write per-task wall times here.
    #[arg(long)]
    timings: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct TablesArgs {
    /// a, b, relations, quasi, gamma or clifford
    #[arg(long)]
    what: Option<String>,
    /// paper or symmetric-footnote; gamma and clifford need paper
    #[arg(long)]
    gauge: Option<String>,
    /// Parameter binding such as r=1; repeatable.
    #[arg(long = "param")]
    params: Vec<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct TwistArgs {
    /// abelian-cartan, cartan-pair, jordanian, lorentz-jordanian, rq-as-twist, rh, jordanian-cartan, identity
    #[arg(long)]
    family: Option<String>,
    /// Spins of the two legs, e.g. 1/2 or 1/2,1; Lorentz families take a:b.
    #[arg(long)]
    spins: Option<String>,
    /// xi truncation order of the jordanian universal element
    #[arg(long)]
    order: Option<usize>,
    /// Parameter binding such as xi=0; repeatable.
    #[arg(long = "param")]
    params: Vec<String>,
    /// full, or matrix for the bare twist matrix
    #[arg(long)]
    emit: Option<String>,
    #[command(flatten)]
    common: Common,
}

/// Failure exit codes: 1 for failed checks, 2 for usage or I/O problems.
enum Exit {
    Checks,
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for Exit {
    fn from(e: E) -> Self {
        Exit::Usage(e.to_string())
    }
}

type Res<T> = Result<T, Exit>;

/// Values from the optional config file.
#[derive(Default)]
struct FileConfig {
    values: BTreeMap<String, String>,
    params: Vec<String>,
}

const CONFIG_KEYS: [&str; 13] =
    ["suite", "order", "degree", "gauge", "format", "out", "fixtures", "strict", "timings", "what", "family", "spins", "emit"];

impl FileConfig {
    fn load(path: Option<&Path>) -> Res<Self> {
        let mut cfg = FileConfig::default();
        let Some(path) = path else { return Ok(cfg) };
        let text = fs::read_to_string(path).map_err(|e| format!("config {}: {e}", path.display()))?;
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| format!("config line {}: expected key=value", n + 1))?;
            let (k, v) = (k.trim(), v.trim());
            if let Some(p) = k.strip_prefix("param.") {
                cfg.params.push(format!("{p}={v}"));
            } else if CONFIG_KEYS.contains(&k) {
                cfg.values.insert(k.to_string(), v.to_string());
            } else {
                return Err(Exit::Usage(format!("config line {}: unknown key '{k}'", n + 1)));
            }
        }
        Ok(cfg)
    }

    fn get(&self, k: &str) -> Option<String> {
        self.values.get(k).cloned()
    }

    fn parsed<T: std::str::FromStr>(&self, k: &str) -> Res<Option<T>> {
        match self.values.get(k) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|_| Exit::Usage(format!("config: bad value for {k}: '{v}'"))),
        }
    }
}

fn format_of(flag: Option<String>, file: &FileConfig) -> Res<Format> {
    match flag.or_else(|| file.get("format")) {
        None => Ok(Format::Json),
        Some(f) => Format::from_name(&f).ok_or_else(|| Exit::Usage(format!("unknown format '{f}'"))),
    }
}

fn gauge_of(flag: Option<String>, file: &FileConfig) -> Res<Gauge> {
    match flag.or_else(|| file.get("gauge")) {
        None => Ok(Gauge::Paper),
        Some(g) => Gauge::from_name(&g).ok_or_else(|| Exit::Usage(format!("unknown gauge '{g}'"))),
    }
}

fn renderer(flags: &[String], file: &FileConfig) -> Res<Renderer> {
    // Flags win: apply file bindings first so later flag entries replace them.
    let mut b = Vec::new();
    for kv in file.params.iter().chain(flags) {
        let (var, val) = emit::parse_param(kv)?;
        b.retain(|(v, _)| *v != var);
        b.push((var, val));
    }
    Ok(Renderer::new(b))
}

/// Write `text` next to `path` and rename it into place.
fn write_atomic(path: &Path, text: &str) -> Res<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    tmp.write_all(text.as_bytes()).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    tmp.persist(path).map_err(|e| format!("cannot write {}: {}", path.display(), e.error))?;
    Ok(())
}

fn output(out: Option<PathBuf>, text: &str) -> Res<()> {
    match out {
        Some(p) => write_atomic(&p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_fixtures(path: &Path) -> Res<TableFixtures> {
    let text = fs::read_to_string(path).map_err(|e| format!("fixtures {}: {e}", path.display()))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| format!("fixtures {}: {e}", path.display()))?;
    let mut f = TableFixtures::default();
    for (name, slot) in [("a", &mut f.a), ("b", &mut f.b)] {
        if let Some(t) = v.get(name) {
            *slot = parse_table(t).map_err(|e| format!("fixtures {}: table {name}: {e}", path.display()))?;
        }
    }
    Ok(f)
}

fn parse_table(v: &Value) -> Result<Table, String> {
    let rows = v.as_array().filter(|r| r.len() == 4).ok_or("expected 4 rows")?;
    let mut t: Table = Default::default();
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().filter(|r| r.len() == 4).ok_or("expected 4 columns")?;
        for (j, x) in row.iter().enumerate() {
            let s = x.as_str().ok_or("entries must be strings")?;
            t[i][j] = parse_scalar(s).map_err(|e| e.to_string())?;
        }
    }
    Ok(t)
}

fn verify(a: VerifyArgs) -> Res<()> {
    let file = FileConfig::load(a.common.config.as_deref())?;
    let mut cfg = RunConfig::default();
    if let Some(s) = a.suite.or_else(|| file.get("suite")) {
        cfg.suites = Suite::parse_list(&s)?;
    }
    cfg.order = a.order.or(file.parsed("order")?).unwrap_or(cfg.order);
    cfg.degree = a.degree.or(file.parsed("degree")?).unwrap_or(cfg.degree);
    cfg.gauge = gauge_of(a.gauge, &file)?;
    cfg.strict = a.strict || file.parsed("strict")?.unwrap_or(false);
    if let Some(p) = a.fixtures.or_else(|| file.get("fixtures").map(PathBuf::from)) {
        cfg.fixtures = load_fixtures(&p)?;
    }
    let format = format_of(a.common.format, &file)?;
    let out = a.common.out.or_else(|| file.get("out").map(PathBuf::from));
    let timings = a.timings.or_else(|| file.get("timings").map(PathBuf::from));
    cfg.validate()?;

    let report = run_suite(&cfg)?;
    let text = match format {
        Format::Json => emit::canonical_json(&report.to_json()),
        Format::Markdown => report.to_markdown(),
    };
    output(out, &text)?;
    if let Some(p) = timings {
        let t: Vec<Value> = report.timings.iter().map(|(k, d)| json!({ "task": k, "seconds": d.as_secs_f64() })).collect();
        write_atomic(&p, &emit::canonical_json(&json!(t)))?;
    }
    for e in report.entries.iter().filter(|e| e.status == qtk_core::report::Status::Fail) {
        eprintln!("FAIL {}/{}: {} ({})", e.suite, e.anchor, e.check, e.witness.as_deref().unwrap_or(""));
    }
    if report.ok() {
        Ok(())
    } else {
        Err(Exit::Checks)
    }
}

fn tables(a: TablesArgs) -> Res<()> {
    let file = FileConfig::load(a.common.config.as_deref())?;
    let what = a.what.or_else(|| file.get("what")).ok_or_else(|| Exit::Usage("tables needs --what".into()))?;
    let kind = TableKind::from_name(&what)
        .ok_or_else(|| Exit::Usage(format!("unknown table '{what}' (expected one of {})", TableKind::NAMES.join(", "))))?;
    let gauge = gauge_of(a.gauge, &file)?;
    let r = renderer(&a.params, &file)?;
    let format = format_of(a.common.format, &file)?;
    let v = emit::emit_tables(kind, gauge, &r)?;
    let text = match format {
        Format::Json => emit::canonical_json(&v),
        Format::Markdown => emit::tables_markdown(&v),
    };
    output(a.common.out.or_else(|| file.get("out").map(PathBuf::from)), &text)
}

fn twist(a: TwistArgs) -> Res<()> {
    let file = FileConfig::load(a.common.config.as_deref())?;
    let fam = a.family.or_else(|| file.get("family")).ok_or_else(|| Exit::Usage("twist needs --family".into()))?;
    let family: TwistFamily =
        serde_json::from_value(json!(fam)).map_err(|_| Exit::Usage(format!("unsupported twist family '{fam}'")))?;
    let spins: Vec<String> = a
        .spins
        .or_else(|| file.get("spins"))
        .map(|s| s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect())
        .unwrap_or_default();
    let order = a.order.or(file.parsed("order")?).unwrap_or(6);
    if order < 1 {
        return Err(Exit::Usage("order must be at least 1".into()));
    }
    let r = renderer(&a.params, &file)?;
    let format = format_of(a.common.format, &file)?;
    let mode = a.emit.or_else(|| file.get("emit")).unwrap_or_else(|| "full".into());
    let v = emit::emit_twist(family, &spins, order, &r)?;
    let v = match mode.as_str() {
        "full" => v,
        "matrix" => v["matrix"].clone(),
        other => return Err(Exit::Usage(format!("unknown emit mode '{other}'"))),
    };
    let text = match (format, mode.as_str()) {
        (Format::Json, _) => emit::canonical_json(&v),
        (Format::Markdown, "full") => emit::twist_markdown(&v),
        (Format::Markdown, _) => emit::canonical_json(&v),
    };
    output(a.common.out.or_else(|| file.get("out").map(PathBuf::from)), &text)?;
    if v.get("status").and_then(Value::as_str) == Some("fail") {
        return Err(Exit::Checks);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let res = match cli.cmd {
        Cmd::Verify(a) => verify(a),
        Cmd::Tables(a) => tables(a),
        Cmd::Twist(a) => twist(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Exit::Checks) => ExitCode::from(1),
        Err(Exit::Usage(msg)) => {
            eprintln!("qtk: {msg}");
            ExitCode::from(2)
        }
    }
}
