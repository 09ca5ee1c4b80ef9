//! The `omegadyn` command line: classify presentations, analyze finite
//! systems, build and check sequences, and search for quotients.
//!
//! Exit codes: 0 success, 1 the answer is "none" or "fails", 2 input error,
//! 3 search budget exhausted.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::chaindyn::{self, Resolution, DEFAULT_ORACLE_BOUND};
use crate::permalg::{
    self, catalog, embeds_in, AxiomTag, CatalogName, EmbedTarget, PermPresentation, Relation, Status, Verdict,
};
use crate::quotients::{self, SearchOutcome};
use crate::seqbuild::{self, ActionRule, GroupKind, IndexScheme, IndexedSequence};
use crate::system::{parse_rational, FiniteSystem};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "omegadyn", version, about = "Trivial automorphisms of P(ω)/fin and chain dynamics on finite systems")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify a mod-finite permutation given by catalog name or JSON file.
    Classify {
        /// Catalog name (s, s_inv, r, t, z, c_5, t_join_r, ...) or a presentation file.
        input: String,
        /// Length parameter for `c`.
        #[arg(long)]
        param: Option<u64>,
    },
    /// Chain transitivity and recurrence of a finite system.
    Analyze(AnalyzeArgs),
    /// Build, verify and read chains off indexed sequences.
    #[command(subcommand)]
    Sequence(SequenceCommand),
    /// Search for an equivariant map between two finite systems.
    Quotient {
        source: PathBuf,
        target: PathBuf,
        /// Drop the surjectivity requirement.
        #[arg(long)]
        subquotient: bool,
        /// Maximum number of value trials.
        #[arg(long)]
        budget: Option<u64>,
        /// Write the witness as a Graphviz file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Look up whether TARGET* is a quotient of SOURCE* in the fact table.
    Relation {
        source: String,
        target: String,
        #[arg(long)]
        subquotient: bool,
        #[arg(long, default_value = "ZFC", value_parser = parse_axiom)]
        axiom: AxiomTag,
    },
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    system: PathBuf,
    /// ε resolutions to analyze (repeatable).
    #[arg(long, value_parser = parse_rat)]
    eps: Vec<Rational64>,
    /// Named covers to analyze (repeatable).
    #[arg(long)]
    cover: Vec<String>,
    /// Cross-check against the subset-enumerating oracles.
    #[arg(long)]
    oracle: bool,
    #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
    oracle_bound: usize,
    /// Write the chain graph of the first requested resolution as Graphviz.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Builder {
    /// Group translates of a dense sequence.
    Group,
    /// Backward recursion along ω × ℤ.
    T,
    /// Chains between consecutive dense points.
    S,
    /// Self-chains laid along factorial cycles.
    R,
}

#[derive(Subcommand, Debug)]
pub enum SequenceCommand {
    /// Build a sequence and write it as JSON.
    Build {
        #[arg(value_enum)]
        kind: Builder,
        system: PathBuf,
        /// Comma-separated dense sequence of state labels.
        /// Default: every state (twice for `s`).
        #[arg(long, value_delimiter = ',')]
        dense: Vec<String>,
        /// ε schedule (repeatable, non-increasing).
        #[arg(long, value_parser = parse_rat)]
        eps: Vec<Rational64>,
        /// Window: rows:RxW for `t`, fact:N for `r`.
        #[arg(long, value_parser = parse_window)]
        window: Option<IndexScheme>,
        /// Group action file, for `group`.
        #[arg(long)]
        action: Option<PathBuf>,
        /// Output file; standard output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the steps where a sequence strays by ε or more from its rules.
    Verify {
        system: PathBuf,
        sequence: PathBuf,
        #[arg(long, value_parser = parse_rat)]
        eps: Rational64,
        /// Rules to check (s, t, r, u, g1, g-1, ...); default: the window's own.
        #[arg(long)]
        rule: Vec<String>,
        /// Group action file, for group windows.
        #[arg(long)]
        action: Option<PathBuf>,
    },
    /// Read an ε-chain off an s-like (from/to) or r-like (from only) sequence.
    Extract {
        system: PathBuf,
        sequence: PathBuf,
        #[arg(long, value_parser = parse_rat)]
        eps: Rational64,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: Option<String>,
    },
    /// Whether every cover block meets the sequence after a prefix.
    TailDense {
        system: PathBuf,
        sequence: PathBuf,
        #[arg(long)]
        cover: String,
        #[arg(long)]
        prefix: usize,
    },
}

fn parse_rat(s: &str) -> Result<Rational64, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_window(s: &str) -> Result<IndexScheme, String> {
    s.parse().map_err(|e: seqbuild::SeqError| e.to_string())
}

fn parse_axiom(s: &str) -> Result<AxiomTag, String> {
    AxiomTag::parse(s).ok_or_else(|| format!("unknown axiom `{s}` (ZFC, CH, OCA_MA)"))
}

/// One predicate of a report: a theorem-backed verdict or a plain value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub predicate: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub subject: String,
    pub lines: Vec<Line>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report {
            subject: subject.into(),
            lines: Vec::new(),
        }
    }

    pub fn verdict(&mut self, predicate: impl Into<String>, verdict: Verdict) {
        self.lines.push(Line {
            predicate: predicate.into(),
            verdict: Some(verdict),
            value: None,
        });
    }

    pub fn value(&mut self, predicate: impl Into<String>, value: impl Into<Value>) {
        self.lines.push(Line {
            predicate: predicate.into(),
            verdict: None,
            value: Some(value.into()),
        });
    }

    pub fn get(&self, predicate: &str) -> Option<&Line> {
        self.lines.iter().find(|l| l.predicate == predicate)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(render_value).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for line in &self.lines {
            match (&line.verdict, &line.value) {
                (Some(v), _) => writeln!(f, "  {} = {v}", line.predicate)?,
                (None, Some(Value::Object(map))) => {
                    writeln!(f, "  {}:", line.predicate)?;
                    for (k, v) in map {
                        writeln!(f, "    {k} -> {}", render_value(v))?;
                    }
                }
                (None, Some(v)) => writeln!(f, "  {}: {}", line.predicate, render_value(v))?,
                (None, None) => writeln!(f, "  {}", line.predicate)?,
            }
        }
        Ok(())
    }
}

/// An error with the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn input_error(e: impl fmt::Display) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: e.to_string(),
    }
}

/// Parses `args` and runs the command, writing results to `out` and
/// diagnostics to standard error. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn emit(out: &mut dyn Write, format: Format, report: &Report) -> Result<(), Failure> {
    let text = match format {
        Format::Text => report.to_string(),
        Format::Json => report.to_json() + "\n",
    };
    out.write_all(text.as_bytes()).map_err(input_error)
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_system(path: &Path) -> Result<FiniteSystem, Failure> {
    FiniteSystem::from_json(&read(path)?).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match &cli.command {
        Command::Classify { input, param } => {
            let report = cmd_classify(input, *param).map_err(input_error)?;
            emit(out, cli.format, &report)?;
            Ok(EXIT_OK)
        }
        Command::Analyze(args) => cmd_analyze(args, cli.format, out),
        Command::Sequence(cmd) => cmd_sequence(cmd, cli.format, out),
        Command::Quotient {
            source,
            target,
            subquotient,
            budget,
            dot,
        } => {
            let g = load_system(source)?;
            let f = load_system(target)?;
            let (report, code, witness) = cmd_quotient(&g, &f, *subquotient, *budget);
            if let (Some(path), Some(m)) = (dot, witness) {
                write_file(path, &m.to_dot())?;
            }
            emit(out, cli.format, &report)?;
            Ok(code)
        }
        Command::Relation {
            source,
            target,
            subquotient,
            axiom,
        } => {
            let relation = if *subquotient {
                Relation::Subquotient
            } else {
                Relation::Quotient
            };
            let v = permalg::known_relation_by_name(source, target, relation, *axiom).map_err(input_error)?;
            let mut report = Report::new(format!("{source} ↠ {target} ({relation}, {axiom})"));
            let code = if v.status == Status::Fails { EXIT_NEGATIVE } else { EXIT_OK };
            report.verdict(relation.to_string(), v);
            emit(out, cli.format, &report)?;
            Ok(code)
        }
    }
}

/// Reads a presentation: a catalog name, or a JSON file in explicit or named form.
pub fn load_presentation(input: &str, param: Option<u64>) -> Result<(String, PermPresentation), String> {
    let path = Path::new(input);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{input}: {e}"))?;
        let p: PermPresentation = serde_json::from_str(&text).map_err(|e| format!("{input}: {e}"))?;
        return Ok((input.to_string(), p));
    }
    let name = CatalogName::parse(input, param).map_err(|e| e.to_string())?;
    let p = catalog(&name).map_err(|e| e.to_string())?;
    Ok((name.to_string(), p))
}

/// Every classifier on one presentation, in a fixed order.
pub fn classify_report(subject: &str, p: &PermPresentation) -> Report {
    let normal = p.normalize();
    let mut r = Report::new(format!("classify {subject}"));
    r.value("normal-form", normal.to_string());
    r.value("index", p.index().to_string());
    r.value("pan-divisible", p.is_pan_divisible());
    r.value("acyclic", p.is_acyclic());
    r.value("cyclic", p.is_cyclic());
    r.verdict("universal", permalg::is_universal_ch(p));
    r.verdict("chain-transitive*", permalg::is_chain_transitive_star(p));
    r.verdict("chain-recurrent*", permalg::is_chain_recurrent_star(p));
    for target in EmbedTarget::ALL {
        for axiom in [AxiomTag::Zfc, AxiomTag::Ch, AxiomTag::OcaMa] {
            r.verdict(format!("embeds-in-{target}[{axiom}]"), embeds_in(p, target, axiom));
        }
    }
    let (witness, v) = permalg::jointly_universal_witness(p);
    r.verdict(format!("jointly-universal-witness({witness})"), v);
    r.value("inverse", p.inverse().to_string());
    r
}

pub fn cmd_classify(input: &str, param: Option<u64>) -> Result<Report, String> {
    let (subject, p) = load_presentation(input, param)?;
    Ok(classify_report(&subject, &p))
}

fn labels(sys: &FiniteSystem, set: impl IntoIterator<Item = usize>) -> Value {
    Value::from(set.into_iter().map(|x| sys.label(x).to_string()).collect::<Vec<_>>())
}

/// Chain analysis of one system at the singleton cover and every requested resolution.
pub fn analyze_report(
    sys: &FiniteSystem,
    subject: &str,
    resolutions: &[Resolution],
    oracle_bound: Option<usize>,
) -> Result<Report, chaindyn::ChainError> {
    let mut r = Report::new(format!("analyze {subject}"));
    r.value("states", sys.len());
    r.value("map", sys.to_string());
    let mut all = vec![Resolution::Singleton];
    all.extend(resolutions.iter().filter(|res| **res != Resolution::Singleton).cloned());
    for res in &all {
        let graph = chaindyn::chain_graph(sys, res)?;
        r.value(format!("edges[{res}]"), graph.edge_count());
        r.value(format!("components[{res}]"), graph.sccs().len());
        r.value(format!("chain-transitive[{res}]"), chaindyn::is_chain_transitive(sys, res)?);
        r.value(format!("chain-recurrent[{res}]"), chaindyn::is_chain_recurrent(sys, res)?);
        r.value(
            format!("chain-recurrent-set[{res}]"),
            labels(sys, chaindyn::chain_recurrent_set(sys, res)?),
        );
    }
    r.value("minimal-subsystem", labels(sys, chaindyn::minimal_subsystem(sys)));
    if let Some(bound) = oracle_bound {
        match (
            chaindyn::clopen_transitive_oracle(sys, bound),
            chaindyn::clopen_recurrent_oracle(sys, bound),
        ) {
            (Ok(t), Ok(rec)) => {
                r.value("oracle-transitive", t);
                r.value("oracle-recurrent", rec);
                let agrees = t == chaindyn::is_chain_transitive(sys, &Resolution::Singleton)?
                    && rec == chaindyn::is_chain_recurrent(sys, &Resolution::Singleton)?;
                r.value("oracle-agrees", agrees);
            }
            (Err(e), _) | (_, Err(e)) => r.value("oracle", format!("refused: {e}")),
        }
    }
    Ok(r)
}

fn cmd_analyze(args: &AnalyzeArgs, format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    let sys = load_system(&args.system)?;
    let mut resolutions: Vec<Resolution> = args.eps.iter().map(|e| Resolution::Epsilon(*e)).collect();
    resolutions.extend(args.cover.iter().cloned().map(Resolution::Cover));
    let bound = args.oracle.then_some(args.oracle_bound);
    let report = analyze_report(&sys, &args.system.display().to_string(), &resolutions, bound).map_err(input_error)?;
    if let Some(path) = &args.dot {
        let res = resolutions.first().cloned().unwrap_or(Resolution::Singleton);
        let graph = chaindyn::chain_graph(&sys, &res).map_err(input_error)?;
        write_file(path, &graph.to_dot())?;
    }
    emit(out, format, &report)?;
    Ok(EXIT_OK)
}

/// A group action on a system's states, as read from an action file:
/// `{"group": {"type": "abelian", "orders": [null]}, "word_len": 2,
///   "generators": [{"a": "b", "b": "a"}]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionFile {
    pub group: GroupKind,
    pub word_len: usize,
    pub generators: Vec<std::collections::BTreeMap<String, String>>,
}

impl ActionFile {
    /// Generator maps as state-index vectors on `sys`.
    pub fn flows(&self, sys: &FiniteSystem) -> Result<Vec<Vec<usize>>, String> {
        self.generators
            .iter()
            .enumerate()
            .map(|(i, g)| {
                sys.labels()
                    .iter()
                    .map(|l| {
                        let img = g.get(l).ok_or_else(|| format!("generator {} has no image for `{l}`", i + 1))?;
                        sys.state(img).map_err(|e| e.to_string())
                    })
                    .collect()
            })
            .collect()
    }
}

fn load_action(path: Option<&PathBuf>) -> Result<ActionFile, Failure> {
    let path = path.ok_or_else(|| input_error("group sequences need --action FILE"))?;
    serde_json::from_str(&read(path)?).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn invert(map: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; map.len()];
    for (x, &y) in map.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

fn dense_states(sys: &FiniteSystem, dense: &[String], default_passes: usize) -> Result<Vec<usize>, Failure> {
    if dense.is_empty() {
        return Ok((0..default_passes).flat_map(|_| 0..sys.len()).collect());
    }
    dense.iter().map(|l| sys.state(l).map_err(input_error)).collect()
}

fn cmd_sequence(cmd: &SequenceCommand, format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        SequenceCommand::Build {
            kind,
            system,
            dense,
            eps,
            window,
            action,
            out: out_path,
        } => {
            let sys = load_system(system)?;
            let passes = if *kind == Builder::S { 2 } else { 1 };
            let d = dense_states(&sys, dense, passes)?;
            let schedule = if eps.is_empty() { vec![Rational64::new(1, 2)] } else { eps.clone() };
            let mut report = Report::new(format!("sequence build {kind:?}").to_lowercase());
            let seq = match kind {
                Builder::Group => {
                    let act = load_action(action.as_ref())?;
                    let flows = act.flows(&sys).map_err(input_error)?;
                    let scheme = IndexScheme::GroupCross {
                        generators: flows.len(),
                        word_len: act.word_len,
                        horizon: d.len(),
                        group: act.group.clone(),
                    };
                    seqbuild::build_group_like(&sys, &flows, &d, scheme).map_err(input_error)?
                }
                Builder::T => {
                    let scheme = window.clone().unwrap_or(IndexScheme::RowsByZ {
                        rows: d.len(),
                        window: 3,
                    });
                    seqbuild::build_t_like(&sys, &d, scheme).map_err(input_error)?
                }
                Builder::S => {
                    let built = seqbuild::build_s_like(&sys, &d, &schedule).map_err(input_error)?;
                    report.value("segment-lengths", built.lengths.clone());
                    built.sequence
                }
                Builder::R => {
                    let max_n = match window {
                        None => 6,
                        Some(IndexScheme::FactorialCycles { max_n }) => *max_n,
                        Some(other) => return Err(input_error(format!("r-like sequences need a fact:N window, got {other}"))),
                    };
                    let built = seqbuild::build_r_like(&sys, &d, &schedule, max_n).map_err(input_error)?;
                    report.value("periods", built.lengths.clone());
                    built.sequence
                }
            };
            let text = seq.to_json(&sys);
            match out_path {
                Some(path) => {
                    write_file(path, &text)?;
                    report.value("window", seq.scheme().to_string());
                    report.value("entries", seq.len());
                    report.value("written", path.display().to_string());
                    emit(out, format, &report)?;
                }
                None => out.write_all((text + "\n").as_bytes()).map_err(input_error)?,
            }
            Ok(EXIT_OK)
        }
        SequenceCommand::Verify {
            system,
            sequence,
            eps,
            rule,
            action,
        } => {
            let sys = load_system(system)?;
            let seq = IndexedSequence::from_json(&read(sequence)?, &sys).map_err(input_error)?;
            let rules: Vec<ActionRule> = if rule.is_empty() {
                match seq.scheme() {
                    IndexScheme::GroupCross { generators, .. } => {
                        (1..=*generators as i32).flat_map(|g| [ActionRule::Generator(g), ActionRule::Generator(-g)]).collect()
                    }
                    scheme => seqbuild::default_rules(scheme),
                }
            } else {
                rule.iter().map(|r| r.parse().map_err(input_error)).collect::<Result<_, _>>()?
            };
            let mut systems = Vec::new();
            if let IndexScheme::GroupCross { .. } = seq.scheme() {
                let flows = load_action(action.as_ref())?.flows(&sys).map_err(input_error)?;
                for r in &rules {
                    let ActionRule::Generator(a) = r else {
                        return Err(input_error(format!("rule {r} does not act on group windows")));
                    };
                    let i = a.unsigned_abs() as usize - 1;
                    let flow = flows.get(i).ok_or_else(|| input_error(format!("no generator {i}")))?;
                    let map = if *a > 0 { flow.clone() } else { invert(flow) };
                    systems.push(sys.with_map(map).map_err(input_error)?);
                }
            } else {
                systems = rules.iter().map(|_| sys.clone()).collect();
            }
            let bindings: Vec<(ActionRule, &FiniteSystem)> = rules.iter().copied().zip(systems.iter()).collect();
            let rep = seqbuild::verify_phi_like(&seq, &bindings, *eps).map_err(input_error)?;
            match format {
                Format::Json => {
                    let text = serde_json::to_string_pretty(&rep).expect("report serializes");
                    out.write_all((text + "\n").as_bytes()).map_err(input_error)?;
                }
                Format::Text => {
                    let mut r = Report::new(format!("sequence verify {}", sequence.display()));
                    r.value("eps", rep.eps.clone());
                    r.value("checked", rep.checked);
                    r.value("out-of-window", rep.out_of_window);
                    r.value("violations", rep.violations.len());
                    for v in &rep.violations {
                        r.value(
                            format!("violation {} {}", v.rule, render_value(&v.index)),
                            format!("distance {}", v.distance),
                        );
                    }
                    r.value("tail-ok-from", rep.tail_ok_from.map_or(Value::Null, Value::from));
                    emit(out, format, &r)?;
                }
            }
            Ok(if rep.is_clean() { EXIT_OK } else { EXIT_NEGATIVE })
        }
        SequenceCommand::Extract {
            system,
            sequence,
            eps,
            from,
            to,
        } => {
            let sys = load_system(system)?;
            let seq = IndexedSequence::from_json(&read(sequence)?, &sys).map_err(input_error)?;
            let a = sys.state(from).map_err(input_error)?;
            let result = match (seq.scheme(), to) {
                (IndexScheme::FactorialCycles { .. }, None) => seqbuild::extract_self_chain(&seq, &sys, a, *eps),
                (IndexScheme::Nat { .. }, Some(b)) => {
                    let b = sys.state(b).map_err(input_error)?;
                    seqbuild::extract_chain(&seq, &sys, a, b, *eps)
                }
                (IndexScheme::Nat { .. }, None) => return Err(input_error("s-like extraction needs --to")),
                (scheme, _) => {
                    return Err(input_error(format!(
                        "extraction reads nat windows (with --to) or fact windows (without), got {scheme}"
                    )))
                }
            };
            let mut r = Report::new(format!("sequence extract {}", sequence.display()));
            let code = match result {
                Ok(chain) => {
                    r.value("chain", labels(&sys, chain.points.iter().copied()));
                    r.value("steps", chain.steps());
                    r.value("valid", chain.validate(&sys));
                    EXIT_OK
                }
                Err(seqbuild::SeqError::NotFound(msg)) => {
                    r.value("chain", Value::Null);
                    r.value("reason", msg);
                    EXIT_NEGATIVE
                }
                Err(e) => return Err(input_error(e)),
            };
            emit(out, format, &r)?;
            Ok(code)
        }
        SequenceCommand::TailDense {
            system,
            sequence,
            cover,
            prefix,
        } => {
            let sys = load_system(system)?;
            let seq = IndexedSequence::from_json(&read(sequence)?, &sys).map_err(input_error)?;
            let dense = seqbuild::tail_dense_check(&seq, &sys, cover, *prefix).map_err(input_error)?;
            let mut r = Report::new(format!("sequence tail-dense {}", sequence.display()));
            r.value("cover", cover.clone());
            r.value("prefix", *prefix);
            r.value("tail-dense", dense);
            emit(out, format, &r)?;
            Ok(if dense { EXIT_OK } else { EXIT_NEGATIVE })
        }
    }
}

/// Runs the search and reports it; also returns the exit code and witness.
pub fn cmd_quotient(
    g: &FiniteSystem,
    f: &FiniteSystem,
    subquotient: bool,
    budget: Option<u64>,
) -> (Report, i32, Option<quotients::EquivariantMap>) {
    let kind = if subquotient { "subquotient" } else { "quotient" };
    let mut r = Report::new(format!("{kind} search"));
    match quotients::search(g, f, !subquotient, budget) {
        SearchOutcome::Found(m) => {
            r.value("status", "found");
            r.value("surjective", m.surjective);
            r.value("verified", quotients::verify_equivariant(&m));
            let assignment: serde_json::Map<String, Value> = m
                .assignment
                .iter()
                .enumerate()
                .map(|(x, &y)| (g.label(x).to_string(), json!(f.label(y))))
                .collect();
            r.value("assignment", Value::Object(assignment));
            (r, EXIT_OK, Some(m))
        }
        SearchOutcome::None => {
            r.value("status", "none");
            (r, EXIT_NEGATIVE, None)
        }
        SearchOutcome::BudgetExhausted => {
            r.value("status", "budget-exhausted");
            (r, EXIT_BUDGET, None)
        }
    }
}
