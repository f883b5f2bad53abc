//! Command implementations behind the `simion` binary.
//!
//! Every command produces a [`Report`]; `main` renders it and maps the
//! outcome to an exit status.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use simion_core::cho::{verify_decomposition, zeta_apply, DECOMPOSITION_LIMIT};
use simion_core::delannoy::{
    balanced_words, dp, dp_inverse, multiset_of_digraph, valid_digraphs, word_of_multiset, DelannoyWord, Digraph,
};
use simion_core::legendre::{cone_volume, incidence_is_totally_unimodular_with_limit, TU_SCAN_LIMIT};
use simion_core::pulling::{
    is_valid_simion_order, make_order, minimal_nonfaces, pull_triangulate, random_order, random_simion_order,
    OrderScheme, PullOrder,
};
use simion_core::representation::{
    all_arrows, arrows_compatible, arrows_compatible_by_cases, bdiagonal_of_arrow, MAX_SET_N,
};
use simion_core::scalar::binomial;
use simion_core::simion::{
    enumerate_faces_with_limit, f_vector_of, facet_type, for_each_face, h_from_f, h_vector, satisfies_facet_conditions,
    FMode, HMode, ENUMERATION_LIMIT,
};
use simion_core::{Arrow, ArrowSet, Count, Error};

pub const TRIANGULATION_LIMIT: u32 = 5;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_SCALE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "simion", version, about = "Type-B associahedron, pulling triangulations and Delannoy words")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: GlobalOpts,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GlobalOpts {
    /// Dimension parameter: nodes are 1..=n+1.
    #[arg(long, global = true, default_value_t = 3)]
    pub n: u32,
    /// Restrict enumeration to faces of this dimension.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub dim: Option<i64>,
    /// lex, simion, revlex, random, random-simion or file:PATH.
    #[arg(long, global = true, default_value = "simion")]
    pub order: String,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Lift the default size limits.
    #[arg(long, global = true)]
    pub unsafe_scale: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Face numbers by formula and by enumeration, with both h-vectors.
    Fvector,
    /// All faces, or those of dimension --dim.
    Faces,
    /// Maximal faces with their types.
    Facets,
    /// Pulling triangulation of the boundary of P_n for --order.
    Triangulate,
    /// Digraph/word conversion.
    Delannoy {
        #[command(subcommand)]
        action: DelannoyAction,
    },
    /// Apply the cyclic shift to arrows, or report the facet orbits.
    Rotate {
        /// JSON list of [tail, head] pairs.
        #[arg(long)]
        arrows: Option<String>,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        power: i64,
    },
    /// Run the full invariant suite at this n.
    Verify,
}

#[derive(Debug, Clone, Subcommand)]
pub enum DelannoyAction {
    /// Digraph JSON {"nodes":[..],"arrows":[[t,h],..]} to word.
    Encode {
        /// Inline digraph JSON.
        #[arg(long, conflicts_with = "file")]
        digraph: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Word over U, D, H to digraph.
    Decode {
        #[arg(long)]
        word: String,
        /// Node list as JSON; defaults to 1..=len/2+1.
        #[arg(long)]
        nodes: Option<String>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{what} is limited to n <= {limit} (got n = {n}); pass --unsafe-scale to override")]
    Scale { what: String, n: u32, limit: u32 },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Scale { .. } => EXIT_SCALE,
            _ => EXIT_INVALID,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::UnsupportedScale { what, n, limit } => CliError::Scale {
                what: what.to_string(),
                n,
                limit,
            },
            other => CliError::Invalid(other.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// `None` when the check was skipped.
    pub passed: Option<bool>,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: Some(passed),
            detail: detail.into(),
        }
    }

    fn skipped(name: &str, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: None,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub config: GlobalOpts,
    pub result: Value,
    pub summary: Summary,
    pub timing: Timing,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.summary.passed {
            EXIT_OK
        } else {
            EXIT_CHECK_FAILED
        }
    }
}

fn finish(command: &str, cfg: &GlobalOpts, start: Instant, result: Value, checks: Vec<CheckResult>) -> Report {
    Report {
        command: command.into(),
        config: cfg.clone(),
        result,
        summary: Summary {
            passed: checks.iter().all(|c| c.passed != Some(false)),
            checks,
        },
        timing: Timing {
            elapsed_ms: start.elapsed().as_secs_f64() * 1000.0,
        },
    }
}

fn limit(cfg: &GlobalOpts, default: u32) -> u32 {
    if cfg.unsafe_scale {
        MAX_SET_N
    } else {
        default
    }
}

fn gate(cfg: &GlobalOpts, what: &str, default: u32) -> CliResult<()> {
    if cfg.n == 0 {
        return Err(CliError::Invalid("--n must be at least 1".into()));
    }
    let lim = limit(cfg, default);
    if cfg.n > lim {
        return Err(CliError::Scale {
            what: what.into(),
            n: cfg.n,
            limit: lim,
        });
    }
    if cfg.unsafe_scale && cfg.n > default {
        eprintln!("warning: {what} at n = {} is above the default limit {default} and may take a long time", cfg.n);
    }
    Ok(())
}

/// The pull order named by `--order`.
pub fn resolve_order(cfg: &GlobalOpts) -> CliResult<PullOrder> {
    let n = cfg.n;
    let order = match cfg.order.as_str() {
        "lex" => make_order(n, &OrderScheme::Lex)?,
        "simion" => make_order(n, &OrderScheme::SimionCanonical)?,
        "revlex" => make_order(n, &OrderScheme::RevlexBackwardFirst)?,
        "random" => random_order(n, cfg.seed)?,
        "random-simion" => random_simion_order(n, cfg.seed)?,
        other => {
            let Some(path) = other.strip_prefix("file:") else {
                return Err(CliError::Invalid(format!("unknown order {other:?}")));
            };
            let text = std::fs::read_to_string(path)?;
            let pairs: Vec<(u32, u32)> =
                serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("order file {path}: {e}")))?;
            let arrows = pairs
                .into_iter()
                .map(|(t, h)| Arrow::new(n, t, h))
                .collect::<simion_core::Result<Vec<_>>>()?;
            make_order(n, &OrderScheme::Explicit(arrows))?
        }
    };
    Ok(order)
}

fn counts_json(xs: &[Count]) -> Value {
    Value::Array(
        xs.iter()
            .map(|x| match i64::try_from(x.clone()) {
                Ok(v) => json!(v),
                Err(_) => json!(x.to_string()),
            })
            .collect(),
    )
}

pub fn cmd_fvector(cfg: &GlobalOpts) -> CliResult<Report> {
    let start = Instant::now();
    gate(cfg, "face enumeration", ENUMERATION_LIMIT)?;
    let lim = limit(cfg, ENUMERATION_LIMIT);
    let formula = f_vector_of::<Count>(cfg.n, FMode::Formula, lim)?;
    let enumerated = f_vector_of::<Count>(cfg.n, FMode::Enumerated, lim)?;
    let h_formula = h_vector(cfg.n, HMode::Formula)?;
    let h_enum = h_from_f(&enumerated);
    let f_agree = formula == enumerated;
    let h_agree = h_formula == h_enum;
    let result = json!({
        "f_formula": counts_json(&formula.entries()[1..]),
        "f_enumerated": counts_json(&enumerated.entries()[1..]),
        "h_formula": counts_json(&h_formula),
        "h_from_f": counts_json(&h_enum),
        "total_faces": counts_json(&[enumerated.total()])[0],
        "agree": f_agree && h_agree,
    });
    let checks = vec![
        CheckResult::new("f_formula_equals_enumerated", f_agree, ""),
        CheckResult::new("h_formula_equals_transform", h_agree, ""),
    ];
    Ok(finish("fvector", cfg, start, result, checks))
}

fn face_json(s: &ArrowSet) -> Value {
    json!({
        "dim": s.len() as i64 - 1,
        "arrows": s.pairs(),
        "bdiagonals": s.iter().map(|a| bdiagonal_of_arrow(&a)).collect::<Vec<_>>(),
    })
}

fn face_line(s: &ArrowSet, format: Format) -> String {
    let arrows: Vec<String> = s.iter().map(|a| a.to_string()).collect();
    match format {
        Format::Csv => format!("{},{}", s.len() as i64 - 1, arrows.join(" ")),
        _ => {
            if arrows.is_empty() {
                "{}".into()
            } else {
                format!("{{{}}}", arrows.join(", "))
            }
        }
    }
}

/// Writes one face per line in csv or text format as they are found.
pub fn stream_faces(cfg: &GlobalOpts, facets_only: bool, out: &mut dyn Write) -> CliResult<usize> {
    gate(cfg, "face enumeration", ENUMERATION_LIMIT)?;
    let dim = if facets_only { Some(cfg.n as i64 - 1) } else { cfg.dim };
    if cfg.format == Format::Csv {
        writeln!(out, "dim,arrows")?;
    }
    let mut count = 0;
    let mut failure = None;
    for_each_face(cfg.n, dim, limit(cfg, ENUMERATION_LIMIT), |s| {
        if failure.is_none() {
            if let Err(e) = writeln!(out, "{}", face_line(&s, cfg.format)) {
                failure = Some(e);
            }
            count += 1;
        }
    })?;
    if let Some(e) = failure {
        return Err(e.into());
    }
    Ok(count)
}

pub fn cmd_faces(cfg: &GlobalOpts) -> CliResult<Report> {
    let start = Instant::now();
    gate(cfg, "face enumeration", ENUMERATION_LIMIT)?;
    let faces = enumerate_faces_with_limit(cfg.n, cfg.dim, limit(cfg, ENUMERATION_LIMIT))?;
    let listed: Vec<Value> = faces.iter().map(|f| face_json(&f.arrows())).collect();
    let result = json!({ "count": faces.len(), "faces": listed });
    Ok(finish("faces", cfg, start, result, Vec::new()))
}

pub fn cmd_facets(cfg: &GlobalOpts) -> CliResult<Report> {
    let start = Instant::now();
    gate(cfg, "face enumeration", ENUMERATION_LIMIT)?;
    let facets = enumerate_faces_with_limit(cfg.n, Some(cfg.n as i64 - 1), limit(cfg, ENUMERATION_LIMIT))?;
    let mut listed = Vec::new();
    for f in &facets {
        let mut v = face_json(&f.arrows());
        v["type"] = json!(facet_type(&f.to_vec())?);
        listed.push(v);
    }
    let want = binomial::<Count>(2 * cfg.n as u64, cfg.n as u64);
    let ok = Count::from(facets.len()) == want;
    let result = json!({ "count": facets.len(), "facets": listed });
    let checks = vec![CheckResult::new("facet_count_is_central_binomial", ok, format!("expected {want}"))];
    Ok(finish("facets", cfg, start, result, checks))
}

fn facet_set(n: u32, lim: u32) -> CliResult<BTreeSet<ArrowSet>> {
    Ok(enumerate_faces_with_limit(n, Some(n as i64 - 1), lim)?
        .into_iter()
        .map(|f| f.arrows())
        .collect())
}

pub fn cmd_triangulate(cfg: &GlobalOpts) -> CliResult<Report> {
    let start = Instant::now();
    gate(cfg, "triangulation", TRIANGULATION_LIMIT)?;
    let order = resolve_order(cfg)?;
    let complex = pull_triangulate(cfg.n, &order)?;
    let simion_valid = is_valid_simion_order(&order);
    let mut checks = Vec::new();
    let equality = if simion_valid {
        let gamma = facet_set(cfg.n, limit(cfg, ENUMERATION_LIMIT))?;
        let same = complex.facets().iter().copied().collect::<BTreeSet<_>>() == gamma;
        checks.push(CheckResult::new("equals_associahedron_facets", same, ""));
        Value::Bool(same)
    } else {
        checks.push(CheckResult::skipped("equals_associahedron_facets", "order is not Simion-valid"));
        Value::Null
    };
    let result = json!({
        "order": order,
        "simion_valid": simion_valid,
        "simplices": complex.facets().len(),
        "f_vector": complex.f_vector()[1..],
        "equality": equality,
        "complex": complex,
    });
    Ok(finish("triangulate", cfg, start, result, checks))
}

/// Input to [`cmd_delannoy`].
pub enum DelannoyInput {
    Encode(Digraph),
    Decode { word: DelannoyWord, nodes: Option<BTreeSet<u32>> },
}

pub fn parse_digraph(text: &str) -> CliResult<Digraph> {
    serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("digraph: {e}")))
}

pub fn parse_word(text: &str) -> CliResult<DelannoyWord> {
    if let Some((i, c)) = text.char_indices().find(|(_, c)| !matches!(c, 'U' | 'D' | 'H')) {
        return Err(CliError::Invalid(format!(
            "unexpected {c:?} at position {i}; words use uppercase U, D, H"
        )));
    }
    Ok(text.parse()?)
}

pub fn cmd_delannoy(cfg: &GlobalOpts, input: DelannoyInput) -> CliResult<Report> {
    let start = Instant::now();
    match input {
        DelannoyInput::Encode(a) => {
            if !a.is_valid() {
                return Err(CliError::Invalid("digraph is not valid".into()));
            }
            let recursive = dp(&a)?;
            let multiset = multiset_of_digraph(&a)?;
            let direct = word_of_multiset(&multiset);
            let back = dp_inverse(&recursive, a.nodes())?;
            let result = json!({
                "digraph": a,
                "word": recursive,
                "multiset_word": direct,
                "multiset": multiset,
                "methods_agree": recursive == direct,
            });
            let checks = vec![
                CheckResult::new("methods_agree", recursive == direct, ""),
                CheckResult::new("roundtrip", back == a, ""),
            ];
            Ok(finish("delannoy encode", cfg, start, result, checks))
        }
        DelannoyInput::Decode { word, nodes } => {
            let nodes = nodes.unwrap_or_else(|| (1..=word.length() as u32 / 2 + 1).collect());
            let a = dp_inverse(&word, &nodes)?;
            let again = dp(&a)?;
            let result = json!({ "word": word, "digraph": a, "arrows": a.arrows().len() });
            let checks = vec![CheckResult::new("roundtrip", again == word, "")];
            Ok(finish("delannoy decode", cfg, start, result, checks))
        }
    }
}

pub fn cmd_rotate(cfg: &GlobalOpts, arrows: Option<&str>, power: i64) -> CliResult<Report> {
    let start = Instant::now();
    if let Some(text) = arrows {
        let pairs: Vec<(u32, u32)> =
            serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("arrows: {e}")))?;
        let input = pairs
            .iter()
            .map(|&(t, h)| Arrow::new(cfg.n, t, h))
            .collect::<simion_core::Result<Vec<_>>>()?;
        let image: Vec<Arrow> = input.iter().map(|a| zeta_apply(a, power)).collect();
        let result = json!({ "power": power, "arrows": input, "image": image });
        return Ok(finish("rotate", cfg, start, result, Vec::new()));
    }
    gate(cfg, "decomposition check", DECOMPOSITION_LIMIT)?;
    let report = verify_decomposition(cfg.n)?;
    let checks = vec![CheckResult::new(
        "decomposition",
        report.passed,
        report.counterexamples.join("; "),
    )];
    let result = serde_json::to_value(&report).expect("serializable");
    Ok(finish("rotate", cfg, start, result, checks))
}

fn check(name: &str, f: impl FnOnce() -> CliResult<(bool, String)>) -> CliResult<CheckResult> {
    let (ok, detail) = f()?;
    Ok(CheckResult::new(name, ok, detail))
}

pub fn cmd_verify(cfg: &GlobalOpts) -> CliResult<Report> {
    let start = Instant::now();
    gate(cfg, "triangulation", TRIANGULATION_LIMIT)?;
    let n = cfg.n;
    let lim = limit(cfg, ENUMERATION_LIMIT);
    let order = resolve_order(cfg)?;
    let complex = pull_triangulate(n, &order)?;
    let gamma = facet_set(n, lim)?;
    let mut checks = Vec::new();

    checks.push(CheckResult::new(
        "order_is_simion_valid",
        is_valid_simion_order(&order),
        cfg.order.clone(),
    ));
    checks.push(check("triangulation_equals_associahedron", || {
        let got: BTreeSet<ArrowSet> = complex.facets().iter().copied().collect();
        let missing = gamma.difference(&got).count();
        let extra = got.difference(&gamma).count();
        Ok((missing == 0 && extra == 0, format!("{missing} missing, {extra} extra")))
    })?);
    checks.push(check("triangulation_is_flag", || {
        let big: Vec<String> = minimal_nonfaces(&complex)
            .iter()
            .filter(|s| s.len() != 2)
            .map(|s| s.to_string())
            .collect();
        Ok((big.is_empty(), big.join(" ")))
    })?);
    checks.push(check("f_and_h_vectors", || {
        let f = f_vector_of::<Count>(n, FMode::Formula, lim)?;
        let e = f_vector_of::<Count>(n, FMode::Enumerated, lim)?;
        let tri: Vec<Count> = complex.f_vector().into_iter().map(Count::from).collect();
        let h_ok = h_from_f(&e) == h_vector(n, HMode::Formula)?;
        Ok((f == e && tri == f.entries() && h_ok, String::new()))
    })?);
    checks.push(check("diameter_uniqueness_and_facet_conditions", || {
        let bad = gamma
            .iter()
            .filter(|s| {
                let v = s.to_vec();
                v.iter().filter(|a| a.is_diameter()).count() != 1 || !satisfies_facet_conditions(&v)
            })
            .count();
        Ok((bad == 0, format!("{} facets, {bad} failing", gamma.len())))
    })?);
    if n <= DECOMPOSITION_LIMIT {
        checks.push(check("cyclic_refinement", || {
            let r = verify_decomposition(n)?;
            let sizes: Vec<String> = r.classes.iter().map(|c| format!("k={}:{}", c.k, c.count)).collect();
            Ok((r.passed, sizes.join(" ")))
        })?);
    } else {
        checks.push(CheckResult::skipped("cyclic_refinement", "n above limit"));
    }
    checks.push(check("unimodular_cones", || {
        let mut bad = 0;
        for s in complex.facets() {
            if cone_volume::<i64>(&s.to_vec())? != 1 {
                bad += 1;
            }
        }
        Ok((bad == 0, format!("{bad} cones with volume != 1")))
    })?);
    if n <= limit(cfg, TU_SCAN_LIMIT) {
        checks.push(check("total_unimodularity", || {
            Ok((incidence_is_totally_unimodular_with_limit(n, limit(cfg, TU_SCAN_LIMIT))?, String::new()))
        })?);
    } else {
        checks.push(CheckResult::skipped("total_unimodularity", format!("n > {TU_SCAN_LIMIT}")));
    }
    checks.push(check("predicate_equivalence", || {
        let arrows = all_arrows(n);
        let mut bad = 0;
        for a in &arrows {
            for b in arrows.iter().filter(|b| *b != a) {
                let x = arrows_compatible(a, b)?;
                let z = arrows_compatible(&zeta_apply(a, 1), &zeta_apply(b, 1))?;
                if x != arrows_compatible_by_cases(a, b)? || x != z {
                    bad += 1;
                }
            }
        }
        Ok((bad == 0, format!("{bad} disagreeing pairs")))
    })?);
    checks.push(check("delannoy_bijection", || {
        let nodes: BTreeSet<u32> = (1..=n + 1).collect();
        let digraphs = valid_digraphs(n + 1, lim)?;
        let mut words = BTreeSet::new();
        let mut bad = 0;
        for a in &digraphs {
            let w = dp(a)?;
            if dp_inverse(&w, &nodes)? != *a || word_of_multiset(&multiset_of_digraph(a)?) != w {
                bad += 1;
            }
            words.insert(w);
        }
        let all: BTreeSet<DelannoyWord> = balanced_words(n as usize).into_iter().collect();
        Ok((bad == 0 && words == all, format!("{} digraphs, {bad} failing", digraphs.len())))
    })?);

    let result = json!({
        "order": order,
        "facets": gamma.len(),
        "simplices": complex.facets().len(),
    });
    Ok(finish("verify", cfg, start, result, checks))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Renders a report. JSON is the full document; csv and text list the
/// top-level result fields and the checks.
pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(report).expect("serializable") + "\n",
        Format::Csv => {
            let mut s = String::from("section,key,value\n");
            if let Value::Object(map) = &report.result {
                for (k, v) in map {
                    let _ = writeln!(s, "result,{},{}", csv_field(k), csv_field(&scalar_text(v)));
                }
            }
            for c in &report.summary.checks {
                let status = match c.passed {
                    Some(true) => "pass",
                    Some(false) => "fail",
                    None => "skip",
                };
                let _ = writeln!(s, "check,{},{}", csv_field(&c.name), csv_field(format!("{status} {}", c.detail).trim_end()));
            }
            let _ = writeln!(s, "summary,passed,{}", report.summary.passed);
            s
        }
        Format::Text => {
            let mut s = format!("{} (n = {})\n", report.command, report.config.n);
            if let Value::Object(map) = &report.result {
                for (k, v) in map {
                    let _ = writeln!(s, "  {k}: {}", scalar_text(v));
                }
            }
            for c in &report.summary.checks {
                let status = match c.passed {
                    Some(true) => "PASS",
                    Some(false) => "FAIL",
                    None => "SKIP",
                };
                let _ = writeln!(s, "  [{status}] {} {}", c.name, c.detail);
            }
            let _ = writeln!(s, "  {}", if report.summary.passed { "all checks passed" } else { "some checks failed" });
            s
        }
    }
}

/// Runs a parsed command line, writing output to `out`; returns the exit status.
pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<i32> {
    let cfg = &cli.opts;
    let report = match &cli.command {
        Command::Fvector => cmd_fvector(cfg)?,
        Command::Faces | Command::Facets if cfg.format != Format::Json => {
            stream_faces(cfg, matches!(cli.command, Command::Facets), out)?;
            return Ok(EXIT_OK);
        }
        Command::Faces => cmd_faces(cfg)?,
        Command::Facets => cmd_facets(cfg)?,
        Command::Triangulate => cmd_triangulate(cfg)?,
        Command::Delannoy { action } => {
            let input = match action {
                DelannoyAction::Encode { digraph, file } => {
                    let text = match (digraph, file) {
                        (Some(t), _) => t.clone(),
                        (None, Some(p)) => std::fs::read_to_string(p)?,
                        (None, None) => return Err(CliError::Invalid("pass --digraph or --file".into())),
                    };
                    DelannoyInput::Encode(parse_digraph(&text)?)
                }
                DelannoyAction::Decode { word, nodes } => {
                    let nodes = match nodes {
                        Some(t) => Some(
                            serde_json::from_str::<BTreeSet<u32>>(t)
                                .map_err(|e| CliError::Invalid(format!("nodes: {e}")))?,
                        ),
                        None => None,
                    };
                    DelannoyInput::Decode {
                        word: parse_word(word)?,
                        nodes,
                    }
                }
            };
            cmd_delannoy(cfg, input)?
        }
        Command::Rotate { arrows, power } => cmd_rotate(cfg, arrows.as_deref(), *power)?,
        Command::Verify => cmd_verify(cfg)?,
    };
    out.write_all(render(&report, cfg.format).as_bytes())?;
    Ok(report.exit_code())
}
