use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wreath_fusion::algebra::AlgebraElement;
use wreath_fusion::fusion::{fusion_idempotent, jm_idempotent, FusionConfig};
use wreath_fusion::groups::{write_group_file, GroupData, GroupSpec};
use wreath_fusion::scalar::{Cyclotomic, Poly};
use wreath_fusion::shapes::{fg_product, hook_product, multipartitions, standard_tableaux, MultiPartition, StandardMultiTableau};
use wreath_fusion::verify::{verify_idempotent_system, verify_relations, Construction};
use wreath_fusion::Error;

/// Idempotents of wreath products `G wr S_n` by exact fusion.
#[derive(Parser, Debug)]
#[command(name = "wreath", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the idempotent of one standard multitableau, or of every
    /// standard tableau of a shape.
    Idempotent(IdempotentArgs),
    /// List multipartitions or standard multitableaux.
    Enumerate(EnumerateArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Validate a group and print its canonical group file.
    Group(GroupArgs),
    /// Print class eigenvalues and the polynomials g(v).
    Spectral(GroupArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GroupSource {
    /// Built-in group: trivial, C<k>, S<k>, D<k>, or products such as C2xS3.
    #[arg(long)]
    group: Option<String>,
    /// Group file (TOML) with a multiplication table and characters.
    #[arg(long)]
    group_file: Option<PathBuf>,
}

impl GroupSource {
    fn load(&self) -> Result<Arc<GroupData>, Error> {
        let spec = match (&self.group, &self.group_file) {
            (Some(s), _) => s.parse::<GroupSpec>()?,
            (None, Some(p)) => GroupSpec::File(p.clone()),
            (None, None) => unreachable!("clap requires one group source"),
        };
        GroupData::from_spec(&spec)
    }
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// `full` uses class sums; `abelian` uses generators of an abelian group.
    #[arg(long, value_enum, default_value_t = Mode::Full)]
    mode: Mode,
    /// Class indices (0-based) whose sums are used in full mode.
    #[arg(long, value_delimiter = ',')]
    classes: Option<Vec<usize>>,
    /// Element indices used as generators in abelian mode.
    #[arg(long, value_delimiter = ',')]
    generators: Option<Vec<usize>>,
}

impl FamilyArgs {
    fn config(&self, group: &Arc<GroupData>, n: usize) -> Result<FusionConfig, Error> {
        match self.mode {
            Mode::Full => {
                if self.generators.is_some() {
                    return Err(Error::InvalidConfig("--generators needs --mode abelian".into()));
                }
                match &self.classes {
                    Some(c) => FusionConfig::with_classes(group, n, c),
                    None => FusionConfig::full(group, n),
                }
            }
            Mode::Abelian => {
                if self.classes.is_some() {
                    return Err(Error::InvalidConfig("--classes needs --mode full".into()));
                }
                FusionConfig::abelian(group, n, self.generators.as_deref())
            }
        }
    }
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Write to this file instead of standard output. Relative paths are
    /// resolved against WREATH_OUTPUT_DIR when it is set.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, env = "WREATH_OUTPUT_DIR", hide_env_values = true)]
    output_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct IdempotentArgs {
    #[command(flatten)]
    source: GroupSource,
    /// Shape such as `[2],[],[1]`.
    #[arg(long)]
    shape: Option<String>,
    /// Tableau such as `1:(1,1,1) 2:(3,1,1) 3:(1,1,2)`; every tableau of the
    /// shape when omitted.
    #[arg(long)]
    tableau: Option<String>,
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, value_enum, default_value_t = Single::Fusion)]
    construction: Single,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long, value_enum)]
    what: What,
    /// Number of components; taken from the group when one is given.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Shape whose tableaux are listed.
    #[arg(long)]
    shape: Option<String>,
    #[arg(long)]
    group: Option<String>,
    #[arg(long, conflicts_with = "group")]
    group_file: Option<PathBuf>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[command(flatten)]
    source: GroupSource,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, value_enum, default_value_t = Constructions::Both)]
    construction: Constructions,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct GroupArgs {
    #[command(flatten)]
    source: GroupSource,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Full,
    Abelian,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Single {
    Fusion,
    Jm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Constructions {
    Fusion,
    Jm,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum What {
    Shapes,
    Tableaux,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    System,
    Relations,
}

/// Stable exit codes.
mod exit {
    pub const VERIFY_FAILED: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const UNSUPPORTED: u8 = 3;
    pub const POLE: u8 = 4;
    pub const CAP: u8 = 5;
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::UnsupportedGroup(_)
        | Error::NotAssociative(..)
        | Error::MissingIdentity
        | Error::InvalidGroup(_)
        | Error::CharacterTable(_) => exit::UNSUPPORTED,
        Error::Pole { .. } | Error::FusionPole { .. } => exit::POLE,
        Error::SizeCap { .. } => exit::CAP,
        _ => exit::INPUT,
    }
}

struct Output {
    text: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, out) = match &cli.command {
        Command::Idempotent(a) => (idempotent(a), &a.out),
        Command::Enumerate(a) => (enumerate(a), &a.out),
        Command::Verify(a) => (verify(a), &a.out),
        Command::Group(a) => (group(a), &a.out),
        Command::Spectral(a) => (spectral(a), &a.out),
    };
    match result.and_then(|o| emit(out, &o.text).map(|_| o.code)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn emit(out: &OutputArgs, text: &str) -> Result<(), Error> {
    match &out.output {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => {
            let path = match &out.output_dir {
                Some(dir) if path.is_relative() => dir.join(path),
                _ => path.clone(),
            };
            std::fs::write(&path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
        }
    }
}

fn ok(text: String) -> Result<Output, Error> {
    Ok(Output { text, code: 0 })
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn element_json(e: &AlgebraElement) -> Value {
    Value::Array(e.terms().iter().map(|(code, c)| json!([code, c.to_string()])).collect())
}

fn idempotent(a: &IdempotentArgs) -> Result<Output, Error> {
    let group = a.source.load()?;
    let m = group.num_classes();
    let tableaux = match (&a.tableau, &a.shape) {
        (Some(t), shape) => {
            let t = StandardMultiTableau::parse(t, m)?;
            if let Some(s) = shape {
                let s: MultiPartition = s.parse()?;
                if &s != t.shape() {
                    return Err(Error::Mismatch(format!("tableau has shape {}, not {s}", t.shape())));
                }
            }
            vec![t]
        }
        (None, Some(s)) => {
            let s: MultiPartition = s.parse()?;
            if s.m() != m {
                return Err(Error::Mismatch(format!("shape has {} components, group has {m} irreducibles", s.m())));
            }
            standard_tableaux(&s)
        }
        (None, None) => return Err(Error::InvalidConfig("give --shape or --tableau".into())),
    };
    let n = tableaux[0].size();
    let cfg = a.family.config(&group, n)?;
    let mut records = Vec::new();
    for t in &tableaux {
        let e = match a.construction {
            Single::Fusion => fusion_idempotent(t, &cfg)?,
            Single::Jm => jm_idempotent(t, &cfg)?,
        };
        records.push((t, e));
    }
    let construction = match a.construction {
        Single::Fusion => "fusion",
        Single::Jm => "jm",
    };
    let name = group.table.name();
    match a.out.format {
        Format::Human => {
            let mut s = format!("group: {name}  n: {n}  mode: {}  construction: {construction}\n", cfg.mode_label());
            for (t, e) in &records {
                s.push('\n');
                s.push_str(&format!("shape: {}  {}\n", t.shape().diagram(), t.shape()));
                s.push_str(&format!("tableau: {t}  {}\n", t.positions()));
                s.push_str(&format!(
                    "F = {}  F^G = {}  terms = {}\n",
                    hook_product(t.shape()),
                    fg_product(t.shape(), cfg.family()),
                    e.len()
                ));
                s.push_str(&format!("E = {e}\n"));
            }
            ok(s)
        }
        Format::Structured => {
            let items: Vec<Value> = records
                .iter()
                .map(|(t, e)| {
                    json!({
                        "shape": t.shape().to_string(),
                        "tableau": t.positions(),
                        "f": hook_product(t.shape()).to_string(),
                        "fg": fg_product(t.shape(), cfg.family()).to_string(),
                        "terms": e.len(),
                        "element": element_json(e),
                    })
                })
                .collect();
            ok(json_text(&json!({
                "group": name,
                "n": n,
                "mode": cfg.mode_label(),
                "construction": construction,
                "idempotents": items,
            })))
        }
    }
}

fn enumerate(a: &EnumerateArgs) -> Result<Output, Error> {
    let group_m = match (&a.group, &a.group_file) {
        (None, None) => None,
        (g, f) => Some(GroupSource { group: g.clone(), group_file: f.clone() }.load()?.num_classes()),
    };
    let m = match (a.m, group_m) {
        (Some(m), Some(g)) if m != g => {
            return Err(Error::Mismatch(format!("--m {m} but the group has {g} irreducibles")));
        }
        (Some(m), _) | (None, Some(m)) => Some(m),
        (None, None) => None,
    };
    let shape: Option<MultiPartition> = a.shape.as_deref().map(str::parse).transpose()?;
    let need = |what: &str| Error::InvalidConfig(format!("enumerate needs {what}"));
    let shapes: Vec<MultiPartition> = match (&shape, a.what) {
        (Some(s), What::Tableaux) => {
            if m.is_some_and(|m| m != s.m()) || a.n.is_some_and(|n| n != s.size()) {
                return Err(Error::Mismatch(format!("shape {s} disagrees with --m/--n")));
            }
            vec![s.clone()]
        }
        _ => {
            let m = m.ok_or_else(|| need("--m or a group"))?;
            let n = a.n.ok_or_else(|| need("--n"))?;
            multipartitions(m, n)
        }
    };
    let structured = a.out.format == Format::Structured;
    match a.what {
        What::Shapes => {
            if structured {
                let v: Vec<Value> = shapes
                    .iter()
                    .map(|s| json!({"shape": s.to_string(), "diagram": s.diagram(), "tableaux": standard_tableaux(s).len()}))
                    .collect();
                return ok(json_text(&Value::Array(v)));
            }
            ok(shapes.iter().map(|s| format!("{s}  {}\n", s.diagram())).collect())
        }
        What::Tableaux => {
            let all: Vec<StandardMultiTableau> = shapes.iter().flat_map(standard_tableaux).collect();
            if structured {
                let v: Vec<Value> = all
                    .iter()
                    .map(|t| json!({"shape": t.shape().to_string(), "tableau": t.positions(), "display": t.to_string()}))
                    .collect();
                return ok(json_text(&Value::Array(v)));
            }
            ok(all.iter().map(|t| format!("{t}  {}\n", t.positions())).collect())
        }
    }
}

fn verify(a: &VerifyArgs) -> Result<Output, Error> {
    let group = a.source.load()?;
    let cfg = a.family.config(&group, a.n)?;
    let report = match a.suite {
        Suite::System => {
            let c = match a.construction {
                Constructions::Fusion => Construction::Fusion,
                Constructions::Jm => Construction::Jm,
                Constructions::Both => Construction::Both,
            };
            verify_idempotent_system(&cfg, c)?
        }
        Suite::Relations => verify_relations(&cfg, a.trials, a.seed)?,
    };
    let text = match a.out.format {
        Format::Human => report.to_human(),
        Format::Structured => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
    };
    Ok(Output { text, code: if report.passed() { 0 } else { exit::VERIFY_FAILED } })
}

fn group(a: &GroupArgs) -> Result<Output, Error> {
    let g = a.source.load()?;
    if a.out.format == Format::Structured {
        return ok(write_group_file(&g.table, Some(&g)));
    }
    let t = &g.table;
    let mut s = format!("group: {}  order: {}  classes: {}\n", t.name(), t.order(), g.num_classes());
    s.push_str("elements:");
    for x in 0..t.order() {
        s.push_str(&format!(" {x}={}", t.label(x)));
    }
    s.push('\n');
    for (a, class) in g.classes.classes.iter().enumerate() {
        let labels: Vec<&str> = class.iter().map(|&x| t.label(x)).collect();
        s.push_str(&format!("class {a} (size {}): {}\n", class.len(), labels.join(" ")));
    }
    s.push_str("characters (rows: irreducibles, columns: classes):\n");
    for (nu, row) in g.characters.values.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        s.push_str(&format!("  chi{nu} (degree {}): {}\n", g.degrees()[nu], cells.join(" | ")));
    }
    ok(s)
}

/// `sum_i A_{i+1}(v) g^i` expanded into monomials `c * g^i v^j`.
fn g_of_v(a_polys: &[Poly]) -> String {
    let mut monos: Vec<(usize, usize, Cyclotomic)> = Vec::new();
    for (i, p) in a_polys.iter().enumerate() {
        for (j, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                monos.push((i, j, c.clone()));
            }
        }
    }
    monos.sort_by(|x, y| (y.0 + y.1, y.0).cmp(&(x.0 + x.1, x.0)));
    if monos.is_empty() {
        return "0".into();
    }
    let power = |var: &str, k: usize| match k {
        0 => None,
        1 => Some(var.to_string()),
        _ => Some(format!("{var}^{k}")),
    };
    monos
        .iter()
        .map(|(i, j, c)| {
            let vars: Vec<String> = [power("g", *i), power("v", *j)].into_iter().flatten().collect();
            let coef = if c.is_rational() { c.to_string() } else { format!("({c})") };
            match (vars.is_empty(), c.is_one()) {
                (true, _) => coef,
                (false, true) => vars.join("*"),
                (false, false) => format!("{coef}*{}", vars.join("*")),
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn spectral(a: &GroupArgs) -> Result<Output, Error> {
    let g = a.source.load()?;
    let sp = &g.spectral;
    let m = g.num_classes();
    let cell = |c: &Cyclotomic| c.to_string();
    if a.out.format == Format::Structured {
        let classes: Vec<Value> = (0..m)
            .map(|al| {
                json!({
                    "class": al,
                    "size": g.classes.classes[al].len(),
                    "xi": (0..m).map(|nu| cell(&sp.xi[nu][al])).collect::<Vec<_>>(),
                    "values": sp.values[al].iter().map(cell).collect::<Vec<_>>(),
                    "g_of_v": g_of_v(&sp.a_polys[al]),
                })
            })
            .collect();
        return ok(json_text(&json!({"group": g.table.name(), "classes": classes})));
    }
    let mut s = format!("group: {}  irreducibles: {m}  degrees: {:?}\n", g.table.name(), g.degrees());
    for al in 0..m {
        let xi: Vec<String> = (0..m).map(|nu| cell(&sp.xi[nu][al])).collect();
        let values: Vec<String> = sp.values[al].iter().map(cell).collect();
        s.push_str(&format!("class {al} (size {}):\n", g.classes.classes[al].len()));
        s.push_str(&format!("  xi: {}\n", xi.join(" | ")));
        s.push_str(&format!("  S: {{{}}}\n", values.join(", ")));
        s.push_str(&format!("  g(v) = {}\n", g_of_v(&sp.a_polys[al])));
    }
    ok(s)
}
