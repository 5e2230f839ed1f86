//! Command-line front end.
//!
//! [`run`] parses an argument vector, performs the computation and returns
//! the exit status together with the text destined for stdout and stderr, so
//! the binary is a thin wrapper and the behaviour is testable in-process.
//!
//! Exit status: `0` success, `1` invariant violation or failed self-check,
//! `2` usage error (the message names the offending flag).

use std::collections::BTreeMap;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::canonical::{BasisTable, CanonicalError, GlobalCache};
use crate::cartan::{parse_weight_name, sample_tags, AlgebraTag, Weight};
use crate::fock::{FockError, FockVector};
use crate::qlaurent::Poly;
use crate::wall::{LadderOrder, Space, Wall, WallError};

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }
}

#[derive(Parser, Debug)]
#[command(name = "youngwall", version, about = "Young-wall Fock spaces, crystals and global bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Crystal graph of B(Λ) up to a number of blocks.
    Graph {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, default_value_t = 9)]
        max_blocks: usize,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
    },
    /// Proper walls of a given weight `Λ - Σ k_i α_i`.
    Enumerate {
        #[command(flatten)]
        space: SpaceArgs,
        /// Comma-separated block counts `k_0,k_1,...`.
        #[arg(long)]
        weight_k: String,
        /// Keep only reduced walls.
        #[arg(long)]
        reduced: bool,
        #[arg(long, value_enum, default_value_t = ListFormat::Json)]
        format: ListFormat,
    },
    /// Apply `e_i`, `f_i` or `K_i = q^{h_i}` to a wall.
    Apply {
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        color: usize,
        #[command(flatten)]
        wall: WallArgs,
    },
    /// Apply a divided power `f_i^(r)` (or `e_i^(r)`) to a wall.
    Divided {
        #[arg(long, value_enum, default_value_t = DividedOp::F)]
        op: DividedOp,
        #[arg(long)]
        color: usize,
        #[arg(long)]
        power: usize,
        #[command(flatten)]
        wall: WallArgs,
    },
    /// The divided-power word `A(Y)` of a reduced wall.
    Aword {
        #[command(flatten)]
        wall: WallArgs,
        #[arg(long, value_enum, default_value_t = AwordFormat::Text)]
        format: AwordFormat,
    },
    /// Global basis of one weight space.
    Global {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        weight_k: String,
        /// Use the recursion that reuses lower global basis elements.
        #[arg(long)]
        modified: bool,
        #[arg(long, value_enum, default_value_t = TableFormat::Table)]
        format: TableFormat,
    },
    /// Built-in self-checks.
    Check {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Restrict to one algebra (required for `pm` only if a single tag is wanted).
        #[arg(long)]
        alg: Option<String>,
        /// Restrict to one weight `L<i>`.
        #[arg(long)]
        weight: Option<String>,
        /// Largest `m` for the `pm` suite.
        #[arg(long, default_value_t = 5)]
        m: i64,
        /// Number of random walls for the randomized suites.
        #[arg(long)]
        samples: Option<usize>,
        /// Maximal number of blocks of a random wall.
        #[arg(long)]
        max_blocks: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct SpaceArgs {
    /// Algebra tag such as `B1:3`.
    #[arg(long)]
    alg: String,
    /// Level-one weight such as `L0`.
    #[arg(long, default_value = "L0")]
    weight: String,
}

#[derive(Args, Debug)]
struct WallArgs {
    /// Wall as JSON or in compact form `c0.t0/c1.t1/...`.
    #[arg(long)]
    wall: String,
    /// Algebra tag, required with the compact form.
    #[arg(long)]
    alg: Option<String>,
    /// Weight, used with the compact form.
    #[arg(long, default_value = "L0")]
    weight: String,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ListFormat {
    Json,
    Compact,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum TableFormat {
    Table,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum AwordFormat {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Op {
    F,
    E,
    #[value(name = "K")]
    K,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DividedOp {
    F,
    E,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Suite {
    Commutator,
    Serre,
    Pm,
    Examples,
}

/// Failure of a command.
enum Failure {
    Usage { flag: &'static str, message: String },
    Invariant(String),
}

fn usage(flag: &'static str, message: impl ToString) -> Failure {
    Failure::Usage { flag, message: message.to_string() }
}

impl From<FockError> for Failure {
    fn from(e: FockError) -> Self {
        Failure::Invariant(e.to_string())
    }
}

impl From<CanonicalError> for Failure {
    fn from(e: CanonicalError) -> Self {
        Failure::Invariant(e.to_string())
    }
}

impl From<WallError> for Failure {
    fn from(e: WallError) -> Self {
        Failure::Invariant(e.to_string())
    }
}

/// Run the command line `argv` (including the program name).
pub fn run<S: AsRef<str>>(argv: &[S]) -> Outcome {
    let cli = match Cli::try_parse_from(argv.iter().map(|s| s.as_ref())) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome::ok(text)
                }
                _ => Outcome { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => out,
        Err(Failure::Usage { flag, message }) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: invalid value for '--{flag}': {message}\n"),
        },
        Err(Failure::Invariant(message)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        },
    }
}

fn dispatch(cmd: Command) -> Result<Outcome, Failure> {
    match cmd {
        Command::Graph { space, max_blocks, format } => {
            let sp = space.resolve()?;
            let g = sp.crystal_graph(max_blocks);
            Ok(Outcome::ok(match format {
                GraphFormat::Dot => g.to_dot(),
                GraphFormat::Json => pretty(&g.to_json()),
            }))
        }
        Command::Enumerate { space, weight_k, reduced, format } => {
            let sp = space.resolve()?;
            let w = parse_weight_k(&sp, &weight_k)?;
            let walls = if reduced { sp.enumerate_reduced(&w) } else { sp.enumerate_proper(&w) };
            Ok(Outcome::ok(wall_list(&walls, format)))
        }
        Command::Apply { op, color, wall } => {
            let (sp, y) = wall.resolve()?;
            check_color(&sp, color)?;
            let v = FockVector::from_wall(&sp, &y);
            let out = match op {
                Op::F => sp.f_apply(&v, color),
                Op::E => sp.e_apply(&v, color),
                Op::K => sp.k_apply(&v, color),
            };
            Ok(Outcome::ok(pretty(&out.to_json(&sp))))
        }
        Command::Divided { op, color, power, wall } => {
            let (sp, y) = wall.resolve()?;
            check_color(&sp, color)?;
            let v = FockVector::from_wall(&sp, &y);
            let out = match op {
                DividedOp::F => sp.f_divided(&v, color, power)?,
                DividedOp::E => sp.e_divided(&v, color, power)?,
            };
            Ok(Outcome::ok(pretty(&out.to_json(&sp))))
        }
        Command::Aword { wall, format } => {
            let (sp, y) = wall.resolve()?;
            if !sp.is_reduced(&y) {
                return Err(usage("wall", format!("NotReduced: {y} is not a reduced wall")));
            }
            let word = sp.a_word(&y)?;
            Ok(Outcome::ok(match format {
                AwordFormat::Text => format!("{word}\n"),
                AwordFormat::Json => pretty(&serde_json::json!({
                    "wall": y.to_json(),
                    "word": word.to_string(),
                    "factors": word.0.iter().map(|(i, r)| serde_json::json!({"color": i, "power": r})).collect::<Vec<_>>(),
                })),
            }))
        }
        Command::Global { space, weight_k, modified, format } => {
            let sp = space.resolve()?;
            let w = parse_weight_k(&sp, &weight_k)?;
            let table = if modified { modified_table(&sp, &w)? } else { sp.llt_weight_basis(&w)? };
            for g in &table.elements {
                sp.check_global(&g.head, &g.expansion)?;
            }
            Ok(Outcome::ok(match format {
                TableFormat::Table => table.to_table(&sp),
                TableFormat::Json => pretty(&table.to_json(&sp)),
            }))
        }
        Command::Check { suite, seed, alg, weight, m, samples, max_blocks } => {
            let spaces = check_spaces(alg.as_deref(), weight.as_deref())?;
            let report = match suite {
                Suite::Commutator => {
                    suite_commutator(&spaces, seed, samples.unwrap_or(600), max_blocks.unwrap_or(12))
                }
                Suite::Serre => suite_serre(&spaces, seed, samples.unwrap_or(150), max_blocks.unwrap_or(10))?,
                Suite::Pm => suite_pm(&spaces, m),
                Suite::Examples => suite_examples()?,
            };
            Ok(report.finish())
        }
    }
}

impl SpaceArgs {
    fn resolve(&self) -> Result<Space, Failure> {
        resolve_space(&self.alg, &self.weight)
    }
}

fn resolve_space(alg: &str, weight: &str) -> Result<Space, Failure> {
    let tag: AlgebraTag = alg.parse().map_err(|e| usage("alg", e))?;
    let lambda = parse_weight_name(weight).map_err(|e| usage("weight", e))?;
    Space::new(tag, lambda).map_err(|e| usage("weight", e))
}

impl WallArgs {
    fn resolve(&self) -> Result<(Space, Wall), Failure> {
        let text = self.wall.trim();
        let (sp, y) = if text.starts_with('{') {
            let y: Wall = serde_json::from_str(text).map_err(|e| usage("wall", format!("ParseError: {e}")))?;
            let sp = Space::new(y.tag, y.lambda).map_err(|e| usage("wall", e))?;
            (sp, y)
        } else {
            let alg = self
                .alg
                .as_deref()
                .ok_or_else(|| usage("alg", "required when --wall is given in compact form"))?;
            let sp = resolve_space(alg, &self.weight)?;
            let y = Wall::parse_compact(sp.tag(), sp.lambda(), text).map_err(|e| usage("wall", e))?;
            (sp, y)
        };
        sp.ensure_proper(&y).map_err(|e| usage("wall", e))?;
        Ok((sp, y))
    }
}

fn check_color(sp: &Space, color: usize) -> Result<(), Failure> {
    if color >= sp.data.size() {
        return Err(usage("color", format!("{color} is not a color of {} (0..{})", sp.tag(), sp.data.size() - 1)));
    }
    Ok(())
}

fn parse_weight_k(sp: &Space, s: &str) -> Result<Weight, Failure> {
    let k: Vec<i64> = s
        .split(',')
        .map(|p| p.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|e| usage("weight-k", format!("{s:?}: {e}")))?;
    if k.len() != sp.data.size() {
        return Err(usage("weight-k", format!("expected {} entries for {}, got {}", sp.data.size(), sp.tag(), k.len())));
    }
    if k.iter().any(|&x| x < 0) {
        return Err(usage("weight-k", "entries must be nonnegative"));
    }
    Ok(Weight { lambda: sp.lambda(), k })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn wall_list(walls: &[Wall], format: ListFormat) -> String {
    match format {
        ListFormat::Json => pretty(&Value::Array(walls.iter().map(Wall::to_json).collect())),
        ListFormat::Compact => walls.iter().map(|w| format!("{w}\n")).collect(),
    }
}

/// The weight space basis computed with the modified recursion.
fn modified_table(sp: &Space, w: &Weight) -> Result<BasisTable, Failure> {
    let mut heads = sp.enumerate_reduced(w);
    heads.sort_by(|a, b| sp.total_cmp(b, a));
    let mut cache = GlobalCache::new();
    let mut elements = Vec::new();
    let mut a_vectors = Vec::new();
    for y in &heads {
        elements.push(sp.llt_modified(y, &mut cache)?);
        a_vectors.push(sp.a_vector(y)?);
    }
    Ok(BasisTable { weight: w.clone(), elements, a_vectors })
}

fn check_spaces(alg: Option<&str>, weight: Option<&str>) -> Result<Vec<Space>, Failure> {
    let tags = match alg {
        Some(a) => vec![a.parse::<AlgebraTag>().map_err(|e| usage("alg", e))?],
        None => sample_tags(),
    };
    let mut out = Vec::new();
    for tag in tags {
        let lambdas = match weight {
            Some(w) => vec![parse_weight_name(w).map_err(|e| usage("weight", e))?],
            None => tag.supported_weights(),
        };
        for l in lambdas {
            out.push(Space::new(tag, l).map_err(|e| usage("weight", e))?);
        }
    }
    Ok(out)
}

/// Accumulated text of a self-check suite.
#[derive(Default)]
struct Report {
    text: String,
    failures: usize,
}

impl Report {
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn fail(&mut self, s: impl AsRef<str>) {
        self.failures += 1;
        self.line(format!("FAIL {}", s.as_ref()));
    }

    fn finish(mut self) -> Outcome {
        if self.failures == 0 {
            self.line("PASS");
            Outcome::ok(self.text)
        } else {
            let n = self.failures;
            self.line(format!("FAIL ({n} failures)"));
            Outcome { code: 1, stdout: self.text, stderr: String::new() }
        }
    }
}

fn name(sp: &Space) -> String {
    format!("{} L{}", sp.tag(), sp.lambda())
}

fn suite_commutator(spaces: &[Space], seed: u64, samples: usize, max_blocks: usize) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::default();
    let mut per_space = vec![(0usize, 0usize); spaces.len()];
    for s in 0..samples {
        let idx = s % spaces.len();
        let sp = &spaces[idx];
        let y = sp.random_wall(rng.gen_range(0..=max_blocks), &mut rng);
        for i in 0..sp.data.size() {
            for j in 0..sp.data.size() {
                per_space[idx].1 += 1;
                if !sp.check_commutator(&y, i, j) {
                    report.fail(format!("{}: [e_{i}, f_{j}] on {y}", name(sp)));
                }
            }
        }
        per_space[idx].0 += 1;
    }
    for (sp, (walls, checks)) in spaces.iter().zip(per_space) {
        report.line(format!("{}: {walls} walls, {checks} commutators", name(sp)));
    }
    report
}

fn suite_serre(spaces: &[Space], seed: u64, samples: usize, max_blocks: usize) -> Result<Report, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::default();
    let mut per_space = vec![(0usize, 0usize); spaces.len()];
    for s in 0..samples {
        let idx = s % spaces.len();
        let sp = &spaces[idx];
        let y = sp.random_wall(rng.gen_range(0..=max_blocks), &mut rng);
        for i in 0..sp.data.size() {
            for j in 0..sp.data.size() {
                if i == j {
                    continue;
                }
                per_space[idx].1 += 1;
                if !sp.check_serre(&y, i, j)? {
                    report.fail(format!("{}: Serre relation ({i}, {j}) on {y}", name(sp)));
                }
            }
        }
        per_space[idx].0 += 1;
    }
    for (sp, (walls, checks)) in spaces.iter().zip(per_space) {
        report.line(format!("{}: {walls} walls, {checks} Serre pairs", name(sp)));
    }
    Ok(report)
}

/// Number of partitions of `m`, by the standard recurrence over part sizes.
pub fn partition_count(m: usize) -> usize {
    let mut p = vec![0usize; m + 1];
    p[0] = 1;
    for part in 1..=m {
        for n in part..=m {
            p[n] += p[n - part];
        }
    }
    p[m]
}

fn suite_pm(spaces: &[Space], m: i64) -> Report {
    let mut report = Report::default();
    for sp in spaces {
        let got: Vec<usize> = (0..=m.max(0)).map(|k| sp.maximal_vector_count(k)).collect();
        let want: Vec<usize> = (0..=m.max(0) as usize).map(partition_count).collect();
        let shown = got.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        if got == want {
            report.line(format!("{}: {shown}", name(sp)));
        } else {
            let want = want.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
            report.fail(format!("{}: {shown} (expected {want})", name(sp)));
        }
    }
    report
}

const WORKED_EXAMPLES: &str = include_str!("../tests/fixtures/worked_examples.json");

fn suite_examples() -> Result<Report, Failure> {
    let data: Value = serde_json::from_str(WORKED_EXAMPLES).expect("embedded fixture is JSON");
    let mut report = Report::default();
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for (section, entries) in data.as_object().expect("fixture is an object") {
        for e in entries.as_array().into_iter().flatten() {
            *counts.entry(section.as_str()).or_default() += 1;
            if let Err(msg) = check_example(section, e) {
                report.fail(format!("{section}: {msg}"));
            }
        }
    }
    for (section, n) in counts {
        report.line(format!("{section}: {n} examples"));
    }
    Ok(report)
}

fn check_example(section: &str, e: &Value) -> Result<(), String> {
    let str_of = |k: &str| e[k].as_str().ok_or_else(|| format!("missing {k}"));
    let usize_of = |k: &str| e[k].as_u64().map(|x| x as usize).ok_or_else(|| format!("missing {k}"));
    let tag: AlgebraTag = str_of("alg")?.parse().map_err(|e| format!("{e}"))?;
    let sp = Space::new(tag, usize_of("lambda")?).map_err(|e| e.to_string())?;
    let wall = |s: &str| -> Result<Wall, String> {
        let y = Wall::parse_compact(tag, sp.lambda(), s).map_err(|e| e.to_string())?;
        sp.ensure_proper(&y).map_err(|e| e.to_string())?;
        Ok(y)
    };
    let poly = |s: &str| -> Result<Poly, String> { s.parse().map_err(|e| format!("{e}")) };
    let terms = |v: &Value| -> Result<BTreeMap<Wall, Poly>, String> {
        v.as_array()
            .ok_or("terms is not a list")?
            .iter()
            .map(|t| Ok((wall(t[0].as_str().ok_or("bad term")?)?, poly(t[1].as_str().ok_or("bad term")?)?)))
            .collect()
    };
    let expect = |ok: bool, what: String| if ok { Ok(()) } else { Err(what) };
    match section {
        "fock_action" => {
            let y = wall(str_of("wall")?)?;
            let i = usize_of("color")?;
            let v = if str_of("op")? == "e" { sp.e_wall(&y, i) } else { sp.f_wall(&y, i) };
            expect(v.terms == terms(&e["terms"])?, format!("{}_{i} on {y}", str_of("op")?))
        }
        "divided_power" => {
            let y = wall(str_of("wall")?)?;
            let z = wall(str_of("target")?)?;
            let (i, r) = (usize_of("color")?, usize_of("power")?);
            let v = sp.f_divided(&FockVector::from_wall(&sp, &y), i, r).map_err(|e| e.to_string())?;
            let want = poly(str_of("coeff")?)?;
            let closed = sp.q_closed_form(&y, &z, i, r).map_err(|e| e.to_string())?;
            expect(v.coeff(&z) == want && closed == want, format!("f_{i}^({r}) on {y}"))
        }
        "bar_step" => {
            let y = wall(str_of("wall")?)?;
            let (bar, i, r) = sp.bar_step(&y).map_err(|e| e.to_string())?;
            let ok = bar == wall(str_of("result")?)? && i == usize_of("color")? && r == usize_of("count")?;
            expect(ok, format!("bar step of {y}"))
        }
        "reduced_form" => {
            let y = wall(str_of("wall")?)?;
            let want = wall(str_of("result")?)?;
            let a = sp.reduced_form(&y).map_err(|e| e.to_string())?;
            let b = sp.reduced_form_with_order(&y, LadderOrder::TopDown).map_err(|e| e.to_string())?;
            expect(a == want && b == want, format!("reduced form of {y}"))
        }
        "a_word" => {
            let y = wall(str_of("wall")?)?;
            let w = sp.a_word(&y).map_err(|e| e.to_string())?;
            expect(w.to_string() == str_of("word")?, format!("A-word of {y}: {w}"))
        }
        "a_vector" => {
            let y = wall(str_of("wall")?)?;
            let a = sp.a_vector(&y).map_err(|e| e.to_string())?;
            expect(a.terms == terms(&e["terms"])?, format!("A({y})"))
        }
        "global_basis" => {
            let y = wall(str_of("head")?)?;
            let table = sp.llt_weight_basis(&sp.weight(&y)).map_err(|e| e.to_string())?;
            let g = table.elements.iter().find(|g| g.head == y).ok_or(format!("{y} is not a head"))?;
            expect(g.expansion.terms == terms(&e["terms"])?, format!("G({y})"))
        }
        other => Err(format!("unknown section {other}")),
    }
}
