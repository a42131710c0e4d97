//! The `subcyc` command line: argument model, dispatch and rendering.
//!
//! Every command renders either plain text or one JSON document whose
//! object keys are sorted, so output is byte-for-byte reproducible.

pub mod input;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use thiserror::Error;

use subcyc_core::cech::{graded_lc_dims, straightness_check};
use subcyc_core::corpus::{all_squarefree_ideals, random_squarefree_ideals};
use subcyc_core::invariants::{
    characteristic_cycle, complement_betti, cross_validate, extension_levels, hypercube,
    multiplicities, Flavor, MultiplicityTable,
};
use subcyc_core::koszul::{graded_betti, verify_dual_identity, BettiTable};
use subcyc_core::poset::{
    poset_from_ideal, poset_from_subspaces, AffineSubspace, IntersectionPoset,
};
use subcyc_core::{parse_ideal, FieldSpec, Matrix, MonomialIdeal, SignVector};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] subcyc_core::Error),
}

impl CliError {
    /// 1 for a disagreement between computational routes, 2 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(subcyc_core::Error::CrossRouteMismatch(_)) => 1,
            _ => 2,
        }
    }
}

impl From<subcyc_core::monomial::IdealError> for CliError {
    fn from(e: subcyc_core::monomial::IdealError) -> Self {
        CliError::Core(e.into())
    }
}

impl From<subcyc_core::poset::PosetError> for CliError {
    fn from(e: subcyc_core::poset::PosetError) -> Self {
        CliError::Core(e.into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    s.parse().map_err(|e| format!("{e}"))
}

/// Local cohomology of monomial ideals and subspace arrangements.
#[derive(Debug, Parser)]
#[command(name = "subcyc", version, about)]
pub struct JobConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Coefficient field: `q` or `fp:<prime>`.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    pub field: FieldSpec,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Default, Args)]
pub struct InputArgs {
    /// Ideal as comma-separated monomials, e.g. "x1*x2, x1*x3".
    #[arg(long, conflicts_with_all = ["input", "arrangement"])]
    pub ideal: Option<String>,
    /// File holding an ideal.
    #[arg(long, conflicts_with = "arrangement")]
    pub input: Option<PathBuf>,
    /// File holding affine subspaces as blocks of rows `a1 ... an | b`.
    #[arg(long)]
    pub arrangement: Option<PathBuf>,
    /// Number of variables; inferred from the input when omitted.
    #[arg(short = 'n', long = "nvars")]
    pub nvars: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Characteristic cycles CC(H^r) for every r.
    Cc(InputArgs),
    /// Graded dimensions of H^r in the degrees of {-1,0}^n, or in one degree.
    GradedDims {
        #[command(flatten)]
        input: InputArgs,
        /// Restrict to one cohomological degree.
        #[arg(short = 'r')]
        r: Option<usize>,
        /// A single multidegree, e.g. "-1,0,-2".
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<String>,
    },
    /// Alexander dual and the Betti number / multiplicity identity.
    Dual(InputArgs),
    /// Multigraded Betti numbers of the ideal.
    Betti(InputArgs),
    /// Reduced Betti numbers of the arrangement complement.
    Complement {
        #[command(flatten)]
        input: InputArgs,
        /// Complement in real space (default).
        #[arg(long, conflicts_with = "complex")]
        real: bool,
        /// Complement in complex space.
        #[arg(long)]
        complex: bool,
    },
    /// Vertices and multiplication maps of the hypercube of H^r.
    Hypercube {
        #[command(flatten)]
        input: InputArgs,
        #[arg(short = 'r')]
        r: usize,
    },
    /// Filtration quotients of H^r and whether each extension splits.
    Extensions {
        #[command(flatten)]
        input: InputArgs,
        #[arg(short = 'r')]
        r: usize,
    },
    /// Cross-validate the poset, Čech and Koszul routes.
    Check {
        #[command(flatten)]
        input: InputArgs,
        /// Every squarefree ideal in -n variables (n <= 5).
        #[arg(long, conflicts_with = "random")]
        all_squarefree: bool,
        /// This many random squarefree ideals in -n variables.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also check straightness on [-box, box]^n.
        #[arg(long = "box")]
        bound: Option<i64>,
    },
    /// Exhaustive n = 3 corpus plus named examples.
    Selftest,
}

/// Rendered output and the process exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub exit: u8,
}

enum Source {
    Ideal(MonomialIdeal),
    Arrangement(Vec<AffineSubspace>),
}

impl Source {
    fn echo(&self) -> Value {
        match self {
            Source::Ideal(i) => json!(i.to_string()),
            Source::Arrangement(s) => json!(s.iter().map(ToString::to_string).collect::<Vec<_>>()),
        }
    }

    fn poset(&self) -> Result<IntersectionPoset, CliError> {
        Ok(match self {
            Source::Ideal(i) => poset_from_ideal(i)?,
            Source::Arrangement(s) => poset_from_subspaces(s)?,
        })
    }
}

fn load(input: &InputArgs) -> Result<Source, CliError> {
    if let Some(text) = &input.ideal {
        return Ok(Source::Ideal(parse_ideal(text, input.nvars)?));
    }
    if let Some(path) = &input.input {
        return Ok(Source::Ideal(input::ideal_from_file(
            &input::read_file(path)?,
            input.nvars,
        )?));
    }
    if let Some(path) = &input.arrangement {
        let (_, spaces) = input::parse_arrangement(&input::read_file(path)?, input.nvars)?;
        return Ok(Source::Arrangement(spaces));
    }
    Err(CliError::Input(
        "no input: pass --ideal, --input or --arrangement".into(),
    ))
}

fn load_ideal(input: &InputArgs) -> Result<MonomialIdeal, CliError> {
    match load(input)? {
        Source::Ideal(i) => Ok(i),
        Source::Arrangement(..) => Err(CliError::Input(
            "this command needs a monomial ideal, not an arrangement".into(),
        )),
    }
}

/// Serialize a report; keys come out sorted.
pub fn emit_structured(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("JSON values serialize");
    s.push('\n');
    s
}

fn document(command: &str, field: FieldSpec, input: Value, body: Map<String, Value>) -> Value {
    let mut doc = body;
    doc.insert("version".into(), json!(VERSION));
    doc.insert("command".into(), json!(command));
    doc.insert("field".into(), json!(field.to_string()));
    doc.insert("input".into(), input);
    Value::Object(doc)
}

fn matrix_json(m: &Matrix) -> Value {
    json!((0..m.nrows())
        .map(|i| (0..m.ncols())
            .map(|j| m.get(i, j).to_string())
            .collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn matrix_text(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.nrows())
        .map(|i| {
            let cells: Vec<String> = (0..m.ncols()).map(|j| m.get(i, j).to_string()).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn degree_key(a: &[u32]) -> String {
    a.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn node_key(t: &MultiplicityTable, p: usize) -> String {
    let node = &t.nodes()[p];
    node.sign
        .map_or_else(|| node.label.clone(), |a| a.to_string())
}

fn multiplicity_json(t: &MultiplicityTable) -> Value {
    let m: Map<String, Value> = t
        .entries()
        .map(|(r, p, v)| (format!("{r}|{}", node_key(t, p)), json!(v)))
        .collect();
    Value::Object(m)
}

fn betti_json(t: &BettiTable) -> Value {
    let m: Map<String, Value> = t
        .entries()
        .map(|(i, a, b)| (format!("{i}|{}", degree_key(a)), json!(b)))
        .collect();
    Value::Object(m)
}

fn betti_lines(t: &BettiTable, out: &mut String) {
    for (i, a, b) in t.entries() {
        out.push_str(&format!("beta_{i} at {}: {b}\n", degree_key(a)));
    }
}

/// `b~0=0 b~1=5`: trailing zeros dropped, index 0 always shown.
pub fn complement_text(b: &[usize]) -> String {
    let last = b.iter().rposition(|&x| x != 0).unwrap_or(0);
    (0..=last)
        .map(|i| format!("b~{i}={}", b.get(i).copied().unwrap_or(0)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_degree(text: &str, n: usize) -> Result<Vec<i64>, CliError> {
    let d = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Input(format!("bad degree entry `{}`", t.trim())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if d.len() != n {
        return Err(CliError::Input(format!(
            "degree has {} entries, expected {n}",
            d.len()
        )));
    }
    Ok(d)
}

fn finish(
    cfg: &JobConfig,
    command: &str,
    input: Value,
    body: Map<String, Value>,
    text: String,
    exit: u8,
) -> Outcome {
    let stdout = match cfg.format {
        Format::Text => text,
        Format::Json => emit_structured(&document(command, cfg.field, input, body)),
    };
    Outcome { stdout, exit }
}

/// Execute one command.
pub fn run(cfg: &JobConfig) -> Result<Outcome, CliError> {
    let f = cfg.field;
    match &cfg.command {
        Command::Cc(input) => {
            let src = load(input)?;
            let poset = src.poset()?;
            let cc = characteristic_cycle(&poset)?;
            let table = multiplicities(&poset, FieldSpec::Rationals)?;
            let mut body = Map::new();
            let cycles: Map<String, Value> = cc
                .cycles
                .keys()
                .map(|r| (r.to_string(), json!(cc.formula(*r))))
                .collect();
            body.insert("cc".into(), Value::Object(cycles));
            body.insert("m".into(), multiplicity_json(&table));
            Ok(finish(cfg, "cc", src.echo(), body, cc.to_string(), 0))
        }
        Command::GradedDims { input, r, degree } => {
            let ideal = load_ideal(input)?;
            let n = ideal.nvars();
            let degrees: Vec<Vec<i64>> = match degree {
                Some(d) => vec![parse_degree(d, n)?],
                None => SignVector::all(n).iter().map(SignVector::degree).collect(),
            };
            let mut dims = Map::new();
            let mut text = String::new();
            for d in &degrees {
                let key = d.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
                for (k, v) in graded_lc_dims(&ideal, d, f).map_err(subcyc_core::Error::from)? {
                    if r.is_some_and(|r| r != k) {
                        continue;
                    }
                    text.push_str(&format!("H^{k} at {key}: {v}\n"));
                    dims.insert(format!("{k}|{key}"), json!(v));
                }
            }
            if text.is_empty() {
                text.push_str("all dimensions are zero\n");
            }
            let mut body = Map::new();
            body.insert("dims".into(), Value::Object(dims));
            Ok(finish(
                cfg,
                "graded-dims",
                json!(ideal.to_string()),
                body,
                text,
                0,
            ))
        }
        Command::Dual(input) => {
            let ideal = load_ideal(input)?;
            let rep = verify_dual_identity(&ideal, f)?;
            let verdict = if rep.passed() { "PASS" } else { "FAIL" };
            let mut text = format!("dual: {}\n", rep.dual);
            betti_lines(&rep.betti, &mut text);
            for m in &rep.mismatches {
                text.push_str(&format!(
                    "mismatch i={} alpha={}: beta {} vs m {}\n",
                    m.i, m.alpha, m.betti, m.multiplicity
                ));
            }
            for (i, a, b) in &rep.stray {
                text.push_str(&format!("stray beta_{i} at {}: {b}\n", degree_key(a)));
            }
            text.push_str(&format!("{verdict} ({} entries)\n", rep.entries_checked));
            let mismatches: Vec<Value> = rep
                .mismatches
                .iter()
                .map(|m| json!({"i": m.i, "alpha": m.alpha.to_string(), "betti": m.betti, "m": m.multiplicity}))
                .collect();
            let mut body = Map::new();
            body.insert("dual".into(), json!(rep.dual.to_string()));
            body.insert("betti".into(), betti_json(&rep.betti));
            body.insert("m".into(), multiplicity_json(&rep.multiplicities));
            body.insert("mismatches".into(), json!(mismatches));
            body.insert("verdict".into(), json!(verdict));
            let exit = u8::from(!rep.passed());
            Ok(finish(
                cfg,
                "dual",
                json!(ideal.to_string()),
                body,
                text,
                exit,
            ))
        }
        Command::Betti(input) => {
            let ideal = load_ideal(input)?;
            let t = graded_betti(&ideal, f)?;
            let mut text = String::new();
            betti_lines(&t, &mut text);
            let mut body = Map::new();
            body.insert("betti".into(), betti_json(&t));
            Ok(finish(
                cfg,
                "betti",
                json!(ideal.to_string()),
                body,
                text,
                0,
            ))
        }
        Command::Complement { input, complex, .. } => {
            let src = load(input)?;
            let flavor = if *complex {
                Flavor::Complex
            } else {
                Flavor::Real
            };
            let b = complement_betti(&src.poset()?, flavor)?;
            let name = if *complex { "complex" } else { "real" };
            let mut body = Map::new();
            body.insert("complement".into(), json!({"flavor": name, "betti": b}));
            let text = format!("{}\n", complement_text(&b));
            Ok(finish(cfg, "complement", src.echo(), body, text, 0))
        }
        Command::Hypercube { input, r } => {
            let ideal = load_ideal(input)?;
            let cube = hypercube(&ideal, *r, f)?;
            let mut text = format!("hypercube of H^{r}\n");
            let mut vertices = Map::new();
            for (a, d) in &cube.vertices {
                vertices.insert(a.to_string(), json!(d));
                if *d > 0 {
                    text.push_str(&format!("vertex {a}: {d}\n"));
                }
            }
            let mut maps = Map::new();
            for (i, a, m) in cube.nontrivial_maps() {
                maps.insert(format!("x{}|{a}", i + 1), matrix_json(m));
                text.push_str(&format!(
                    "x{} at {a} -> {}: {}\n",
                    i + 1,
                    a.raise(i),
                    matrix_text(m)
                ));
            }
            let mut body = Map::new();
            body.insert("r".into(), json!(r));
            body.insert("vertices".into(), Value::Object(vertices));
            body.insert("maps".into(), Value::Object(maps));
            Ok(finish(
                cfg,
                "hypercube",
                json!(ideal.to_string()),
                body,
                text,
                0,
            ))
        }
        Command::Extensions { input, r } => {
            let ideal = load_ideal(input)?;
            let levels = extension_levels(&hypercube(&ideal, *r, f)?, f)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for l in &levels {
                let verdict = if l.splits() { "splits" } else { "non-split" };
                let maps: Vec<String> = l
                    .nonzero_maps
                    .iter()
                    .map(|(i, a, rank)| format!("x{} at {a} rank {rank}", i + 1))
                    .collect();
                text.push_str(&format!(
                    "level {}: quotient {}, {verdict}",
                    l.level, l.quotient_dim
                ));
                if !maps.is_empty() {
                    text.push_str(&format!(" ({})", maps.join("; ")));
                }
                text.push('\n');
                rows.push(json!({
                    "level": l.level,
                    "quotient_dim": l.quotient_dim,
                    "splits": l.splits(),
                    "nonzero_maps": l.nonzero_maps.iter().map(|(i, a, rank)| json!({
                        "var": format!("x{}", i + 1),
                        "from": a.to_string(),
                        "rank": rank,
                    })).collect::<Vec<_>>(),
                }));
            }
            let mut body = Map::new();
            body.insert("r".into(), json!(r));
            body.insert("levels".into(), json!(rows));
            Ok(finish(
                cfg,
                "extensions",
                json!(ideal.to_string()),
                body,
                text,
                0,
            ))
        }
        Command::Check {
            input,
            all_squarefree,
            random,
            seed,
            bound,
        } => {
            let (ideals, echo) = if *all_squarefree || random.is_some() {
                let n = input
                    .nvars
                    .ok_or_else(|| CliError::Input("corpus checks need -n".into()))?;
                if *all_squarefree {
                    if !(1..=5).contains(&n) {
                        return Err(CliError::Input(format!(
                            "--all-squarefree supports 1 <= n <= 5, got {n}"
                        )));
                    }
                    (
                        all_squarefree_ideals(n),
                        json!({"corpus": "all-squarefree", "n": n}),
                    )
                } else {
                    let count = random.expect("checked above");
                    if !(1..=subcyc_core::monomial::MAX_VARS).contains(&n) {
                        return Err(CliError::Input(format!("bad -n {n}")));
                    }
                    (
                        random_squarefree_ideals(n, count, *seed),
                        json!({"corpus": "random", "n": n, "count": count, "seed": seed}),
                    )
                }
            } else {
                let ideal = load_ideal(input)?;
                let echo = json!(ideal.to_string());
                (vec![ideal], echo)
            };
            let summary = check_corpus(&ideals, f, *bound)?;
            let mut body = Map::new();
            body.insert("verdict".into(), json!(summary.verdict()));
            body.insert("ideals".into(), json!(ideals.len()));
            body.insert("failures".into(), json!(summary.failures));
            body.insert("checked".into(), json!(summary.checked));
            let text = summary.text(ideals.len());
            let exit = u8::from(!summary.failures.is_empty());
            Ok(finish(cfg, "check", echo, body, text, exit))
        }
        Command::Selftest => {
            let corpus = all_squarefree_ideals(3);
            let summary = check_corpus(&corpus, f, Some(2))?;
            let examples = named_examples()?;
            let mut failed: Vec<&str> = examples
                .iter()
                .filter(|(_, ok)| !ok)
                .map(|(n, _)| n.as_str())
                .collect();
            failed.sort_unstable();
            let pass = summary.failures.is_empty() && failed.is_empty();
            let verdict = if pass { "PASS" } else { "FAIL" };
            let mut text = summary.detail();
            for name in &failed {
                text.push_str(&format!("example {name} failed\n"));
            }
            text.push_str(&format!(
                "selftest {verdict} ({} ideals, {} examples)\n",
                corpus.len(),
                examples.len()
            ));
            let mut body = Map::new();
            body.insert("verdict".into(), json!(verdict));
            body.insert("ideals".into(), json!(corpus.len()));
            body.insert("failures".into(), json!(summary.failures));
            body.insert("checked".into(), json!(summary.checked));
            let ex: Map<String, Value> = examples
                .iter()
                .map(|(n, ok)| (n.clone(), json!(if *ok { "PASS" } else { "FAIL" })))
                .collect();
            body.insert("examples".into(), Value::Object(ex));
            Ok(finish(
                cfg,
                "selftest",
                json!("corpus n=3"),
                body,
                text,
                u8::from(!pass),
            ))
        }
    }
}

struct CheckSummary {
    failures: Vec<Value>,
    details: Vec<String>,
    checked: Map<String, Value>,
}

impl CheckSummary {
    fn verdict(&self) -> &'static str {
        if self.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        }
    }

    fn detail(&self) -> String {
        self.details.concat()
    }

    fn text(&self, total: usize) -> String {
        let mut s = self.detail();
        if self.failures.is_empty() {
            s.push_str(&format!("PASS ({total} ideals)\n"));
        } else {
            s.push_str(&format!(
                "FAIL ({} of {total} ideals)\n",
                self.failures.len()
            ));
        }
        s
    }
}

/// (detail text, passed, [graded, dual, straightness] entries checked)
type IdealCheck = (String, bool, [usize; 3]);

/// Cross-validate every ideal (in parallel), optionally with straightness
/// on [-bound, bound]^n. Results are assembled in corpus order.
fn check_corpus(
    ideals: &[MonomialIdeal],
    f: FieldSpec,
    bound: Option<i64>,
) -> Result<CheckSummary, CliError> {
    let results: Vec<Result<IdealCheck, CliError>> = ideals
        .par_iter()
        .map(|ideal| {
            let rep = cross_validate(ideal, f)?;
            let mut detail = if rep.passed() {
                String::new()
            } else {
                rep.to_string()
            };
            let mut ok = rep.passed();
            let mut straight = 0;
            if let Some(b) = bound {
                for r in 1..=ideal.nvars() {
                    let s = straightness_check(&rep.ideal, r, b, f)
                        .map_err(subcyc_core::Error::from)?;
                    straight += s.degrees_checked + s.maps_checked;
                    if !s.passed() {
                        ok = false;
                        detail.push_str(&format!(
                            "FAIL {} straightness r={r}: {} violations\n",
                            rep.ideal,
                            s.violations.len()
                        ));
                    }
                }
            }
            Ok((detail, ok, [rep.graded_checked, rep.dual_checked, straight]))
        })
        .collect();
    let mut failures = Vec::new();
    let mut details = Vec::new();
    let mut totals = [0usize; 3];
    for (ideal, res) in ideals.iter().zip(results) {
        let (detail, ok, counts) = res?;
        for (t, c) in totals.iter_mut().zip(counts) {
            *t += c;
        }
        if !ok {
            failures.push(json!({"ideal": ideal.to_string(), "report": detail}));
            details.push(detail);
        }
    }
    let mut checked = Map::new();
    checked.insert("graded".into(), json!(totals[0]));
    checked.insert("dual".into(), json!(totals[1]));
    if bound.is_some() {
        checked.insert("straightness".into(), json!(totals[2]));
    }
    Ok(CheckSummary {
        failures,
        details,
        checked,
    })
}

/// The worked examples with their expected values.
fn named_examples() -> Result<Vec<(String, bool)>, CliError> {
    let q = FieldSpec::Rationals;
    let ideal = |s: &str, n: usize| parse_ideal(s, Some(n));
    let mut out = Vec::new();

    let i = ideal("x1*x2, x1*x3", 3)?;
    let cc = characteristic_cycle(&poset_from_ideal(&i)?)?;
    out.push((
        "cc-two-components".to_string(),
        cc.formula(1) == "T*_{V(x1)}" && cc.formula(2) == "T*_{V(x2,x3)} + T*_{V(x1,x2,x3)}",
    ));
    let cube = hypercube(&i, 2, q)?;
    let levels = extension_levels(&cube, q)?;
    out.push((
        "hypercube-two-components".to_string(),
        cube.support().len() == 2
            && cube.nontrivial_maps().count() == 1
            && cube
                .nontrivial_maps()
                .all(|(i, _, m)| i == 0 && subcyc_core::linalg::rank(m, q) == Ok(1))
            && !levels[2].splits(),
    ));

    let axes = poset_from_ideal(&ideal("x1*x2, x2*x3, x1*x3", 3)?)?;
    out.push((
        "complement-axes".to_string(),
        complement_betti(&axes, Flavor::Real)? == vec![0, 5, 0],
    ));
    let plane = poset_from_ideal(&ideal("x1", 1)?)?;
    out.push((
        "complement-hyperplane".to_string(),
        complement_betti(&plane, Flavor::Real)? == vec![1]
            && complement_betti(&plane, Flavor::Complex)? == vec![0, 1],
    ));
    for n in 1..=6 {
        let gens: Vec<String> = (1..=n).map(|k| format!("x{k}")).collect();
        let m = ideal(&gens.join(","), n)?;
        let t = multiplicities(&poset_from_ideal(&m)?, q)?;
        let mut sphere = vec![0; 2 * n];
        sphere[2 * n - 1] = 1;
        out.push((
            format!("maximal-ideal-{n}"),
            t.entries().collect::<Vec<_>>() == vec![(n, 0, 1)]
                && complement_betti(&poset_from_ideal(&m)?, Flavor::Complex)? == sphere,
        ));
    }
    let dual = verify_dual_identity(&i, q)?;
    out.push((
        "dual-two-components".to_string(),
        dual.passed() && dual.dual.to_string() == "x1, x2*x3",
    ));
    Ok(out)
}
