//! The `ensembles` command-line tool.
//!
//! Exit codes: 0 when the command ran and the checked property holds, 1 when
//! it fails (an invalid table, an incompletable boundary, a violation), and
//! 2 for usage, parse and IO errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use ensembles_core::{
    candidate_table, complete_boundary, cyclic_witnesses, derive_orientations, detect_structures, marked_to_matching,
    matching_to_marked, matchings_from_trees, repeated_full, system_acyclic, validate_matching_collection,
    validate_table, AcyclicityMethod, CandidateTable, CompletionResult, CyclicPatternCatalog, Delivery, EnsembleTable,
    EnumerationStats, Enumerator, LemmaClass, LinkageFailure, MarkedPermutation, Matching, PartialTable,
};
use serde::Serialize;

use crate::format::{self, TableJson};
use crate::parallel;
use crate::report::*;
use crate::Error;

#[derive(Parser, Debug)]
#[command(name = "ensembles", version, about = "Permutation ensembles, boundary systems and exhaustive checks")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
pub enum Method {
    /// Scan every triangle for a label pair in the same cyclic order.
    Direct,
    /// Right linkage of the admitted 2-matchings.
    Linkage,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check forced entry, linkage and compatibility of a table.
    Validate { table: PathBuf },
    /// List 22-squares, 22-rectangles, 22-halfsquares and 33-cyclic patterns.
    Detect { table: PathBuf },
    /// Word multiplicities and the words present in every row.
    Repeated { table: PathBuf },
    /// Edge orientations and the candidate table of a boundary system.
    Derive { system: PathBuf },
    /// The candidate table of a boundary system.
    Candidates { system: PathBuf },
    /// Whether a boundary system is acyclic.
    Acyclic {
        system: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Direct)]
        method: Method,
    },
    /// Try every selection of candidates for a boundary system.
    Complete { system: PathBuf },
    /// Enumerate ensembles exhaustively.
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(u8).range(3..=4))]
        n: u8,
        /// Keep one representative per row/column orbit.
        #[arg(long)]
        canonical: bool,
        /// Only tables extending this partial table (text or JSON, `*` for unknown cells).
        #[arg(long)]
        fixed: Option<PathBuf>,
        /// Write every visited table here, blank-line separated.
        #[arg(long)]
        emit_tables: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Check the repeated-word characterisation over every ensemble.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u8).range(3..=4))]
        n: u8,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Check the structure lemmas over every acyclic 4 x 4 ensemble.
    Lemmas {
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Check the matching-ensemble axioms on the matchings of spanning trees.
    Matchings { trees: PathBuf },
    /// Convert between representations.
    Convert {
        #[command(subcommand)]
        what: Convert,
    },
}

#[derive(Subcommand, Debug)]
pub enum Convert {
    /// Table text to table JSON.
    TableToJson { table: PathBuf },
    /// Table JSON to table text.
    JsonToTable { json: PathBuf },
    /// A marked permutation such as `2[3]41` to its matching.
    MarkedToMatching { token: String },
    /// A matching such as `{(1,2),(3,4),(4,1)}` to a marked permutation.
    MatchingToMarked {
        matching: String,
        #[arg(long)]
        n: usize,
    },
}

enum Outcome {
    Holds,
    Fails,
}

impl From<bool> for Outcome {
    fn from(holds: bool) -> Self {
        if holds {
            Outcome::Holds
        } else {
            Outcome::Fails
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
                2
            } else {
                let _ = out.write_all(rendered.as_bytes());
                0
            };
        }
    };
    match execute(&cli, out, err) {
        Ok(Outcome::Holds) => 0,
        Ok(Outcome::Fails) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

fn io(e: std::io::Error) -> Error {
    Error::Io { path: "<output>".into(), source: e }
}

fn emit<T: Serialize>(fmt: OutputFormat, out: &mut dyn Write, json: &T, text: impl FnOnce() -> String) -> Result<(), Error> {
    match fmt {
        OutputFormat::Json => {
            let s = serde_json::to_string_pretty(json)?;
            writeln!(out, "{s}").map_err(io)
        }
        OutputFormat::Text => out.write_all(text().as_bytes()).map_err(io),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn ok_fail(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAIL"
    }
}

fn describe_failure(t: &EnsembleTable, f: &LinkageFailure) -> String {
    let along = match f.axis {
        ensembles_core::Axis::Row => "row",
        ensembles_core::Axis::Column => "column",
    };
    format!("linkage fails on {} at ({},{}): nothing linked in its {along}", t.cell(f.cell.0, f.cell.1), f.cell.0, f.cell.1)
}

/// Candidate cells as an aligned grid, options comma-separated, `-` if empty.
pub fn render_candidates(c: &CandidateTable) -> String {
    let n = c.n();
    let texts: Vec<String> = c
        .cells()
        .iter()
        .map(|cands| {
            if cands.is_empty() {
                "-".to_string()
            } else {
                cands.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
            }
        })
        .collect();
    let widths: Vec<usize> = (0..n).map(|j| (0..n).map(|i| texts[i * n + j].len()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for i in 0..n {
        let line: Vec<String> = (0..n).map(|j| format!("{:<w$}", texts[i * n + j], w = widths[j])).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("  {l}\n")).collect()
}

fn render_completion(r: &CompletionResult) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "status: {}", status_name(r.status));
    let _ = writeln!(s, "candidates:");
    s.push_str(&indent(&render_candidates(&r.candidates)));
    let _ = writeln!(
        s,
        "selections: {}, solutions: {}, rejected: {}",
        r.candidates.selection_count(),
        r.solutions.len(),
        r.rejected_count
    );
    for (k, sol) in r.solutions.iter().enumerate() {
        let _ = writeln!(s, "solution {}:", k + 1);
        s.push_str(&indent(&format::write_table(&sol.table)));
        let repeated: Vec<String> = sol.repeated.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "  repeated in every row: {}", if repeated.is_empty() { "none".into() } else { repeated.join(" ") });
        for p in &sol.cyclic_patterns {
            let members: Vec<String> = p.members.iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "  33-cyclic pattern: {}", members.join(" "));
        }
        if sol.table.n() == 4 {
            let _ = writeln!(s, "  acyclic: {}", yes_no(sol.is_acyclic()));
        }
    }
    for (k, rej) in r.rejected.iter().enumerate() {
        let _ = writeln!(s, "rejected selection {}:", k + 1);
        s.push_str(&indent(&format::write_table(&rej.table)));
        for f in &rej.linkage_failures {
            let _ = writeln!(s, "  {}", describe_failure(&rej.table, f));
        }
    }
    s
}

fn threads_or_default(t: Option<usize>) -> usize {
    t.unwrap_or_else(parallel::default_threads).max(1)
}

fn seconds(d: Duration) -> String {
    format!("{:.3} s", d.as_secs_f64())
}

fn render_stats(s: &EnumerationStats) -> String {
    format!(
        "nodes visited: {}\npruned by compatibility: {}\npruned by linkage: {}\nvalid tables: {}\ncanonical classes: {}\n",
        s.nodes_visited, s.pruned_by_compatibility, s.pruned_by_linkage, s.valid_tables, s.canonical_classes
    )
}

#[derive(Default)]
struct Tally {
    visited: u64,
    total: u64,
    acyclic: u64,
    with_repeat: u64,
    acyclic_without_repeat: u64,
    tables: Vec<(EnsembleTable, usize)>,
}

impl Tally {
    fn observe(&mut self, catalog: Option<&CyclicPatternCatalog>, keep: bool, t: &EnsembleTable, weight: usize) {
        let weight64 = weight as u64;
        self.visited += 1;
        self.total += weight64;
        let repeated = !repeated_full(t).is_empty();
        if repeated {
            self.with_repeat += weight64;
        }
        if let Some(cat) = catalog {
            if cat.is_acyclic(t).expect("size 4") {
                self.acyclic += weight64;
                if !repeated {
                    self.acyclic_without_repeat += weight64;
                }
            }
        }
        if keep {
            self.tables.push((t.clone(), weight));
        }
    }

    fn merge(&mut self, o: Tally) {
        self.visited += o.visited;
        self.total += o.total;
        self.acyclic += o.acyclic;
        self.with_repeat += o.with_repeat;
        self.acyclic_without_repeat += o.acyclic_without_repeat;
        self.tables.extend(o.tables);
    }
}

fn write_tables(path: &Path, tables: &[(EnsembleTable, usize)], canonical: bool) -> Result<(), Error> {
    let mut text = String::new();
    for (k, (t, orbit)) in tables.iter().enumerate() {
        if k > 0 {
            text.push('\n');
        }
        if canonical {
            let _ = writeln!(text, "# orbit size {orbit}");
        }
        text.push_str(&format::write_table(t));
    }
    write_file(path, &text)
}

fn lemma_line(name: &str, c: &LemmaClass) -> String {
    format!(
        "{name}: {} acyclic ensembles in {} classes, {} violations\n",
        c.acyclic_count,
        c.acyclic_classes,
        c.violations.len()
    )
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome, Error> {
    let fmt = cli.format;
    match &cli.command {
        Command::Validate { table } => {
            let t = format::read_table_any(&read(table)?)?;
            let r = validate_table(&t);
            let json = ValidationJson::new(&t, &r);
            emit(fmt, out, &json, || {
                let mut s = format!(
                    "forced entry: {}\nlinkage: {}\ncompatibility: {}\nS_{}-ensemble: {}\n",
                    ok_fail(r.forced_entry_ok),
                    ok_fail(r.linkage_ok),
                    ok_fail(r.compatibility_ok),
                    t.n(),
                    yes_no(r.is_ensemble())
                );
                for f in &r.linkage_failures {
                    let _ = writeln!(s, "{}", describe_failure(&t, f));
                }
                for c in &r.compatibility_conflicts {
                    let _ = writeln!(
                        s,
                        "compatibility fails between {} at ({},{}) and {} at ({},{}) on positions {:?} and values {:?}",
                        t.cell(c.first.0, c.first.1),
                        c.first.0,
                        c.first.1,
                        t.cell(c.second.0, c.second.1),
                        c.second.0,
                        c.second.1,
                        c.positions.iter().collect::<Vec<_>>(),
                        c.values.iter().collect::<Vec<_>>()
                    );
                }
                s
            })?;
            Ok(r.is_ensemble().into())
        }
        Command::Detect { table } => {
            let t = format::read_table_any(&read(table)?)?;
            let s = detect_structures(&t);
            let patterns = (t.n() == 4).then(|| CyclicPatternCatalog::new().detect(&t)).transpose()?;
            let json = DetectJson {
                structures: StructuresJson::from(&s),
                cyclic_patterns: patterns.as_ref().map(|ps| ps.iter().map(PatternJson::from).collect()),
                acyclic: patterns.as_ref().map(Vec::is_empty),
            };
            emit(fmt, out, &json, || {
                let mut text = String::new();
                for q in &s.squares {
                    let _ = writeln!(text, "22-square: rows {} {}, columns {} {}", q.rows.0, q.rows.1, q.cols.0, q.cols.1);
                }
                for q in &s.rectangles {
                    let _ = writeln!(text, "22-rectangle: rows {} {}, columns {} {}", q.rows.0, q.rows.1, q.cols.0, q.cols.1);
                }
                for h in &s.halfsquares {
                    let ((a, b), c) = (h.diagonal, h.corner);
                    let _ = writeln!(
                        text,
                        "22-halfsquare: equal cells ({},{}) ({},{}), corner ({},{})",
                        a.0, a.1, b.0, b.1, c.0, c.1
                    );
                }
                if let Some(ps) = &patterns {
                    for p in ps {
                        let members: Vec<String> = p.members.iter().map(ToString::to_string).collect();
                        let indices: Vec<String> = p.indices.iter().map(|i| format!("({},{})", i.word, i.order)).collect();
                        let _ = writeln!(text, "33-cyclic pattern: {} indexed by {}", members.join(" "), indices.join(" "));
                    }
                    let _ = writeln!(text, "acyclic: {}", yes_no(ps.is_empty()));
                }
                if text.is_empty() {
                    text.push_str("no structures found\n");
                }
                text
            })?;
            Ok(Outcome::Holds)
        }
        Command::Repeated { table } => {
            let t = format::read_table_any(&read(table)?)?;
            let json = RepeatedJson::new(&t);
            emit(fmt, out, &json, || {
                let mut s = String::new();
                for m in &json.multiplicities {
                    let _ = writeln!(s, "{} x{}", m.word, m.count);
                }
                let _ = writeln!(
                    s,
                    "in every row: {}",
                    if json.repeated.is_empty() { "none".to_string() } else { json.repeated.join(" ") }
                );
                s
            })?;
            Ok(Outcome::Holds)
        }
        Command::Derive { system } => {
            let s = format::parse_system(&read(system)?)?;
            let c = candidate_table(&s)?;
            let registry = derive_orientations(&s);
            let json = DeriveJson {
                system: system_json(&s),
                two_matchings: registry.two_matchings().map(|m| m.to_string()).collect(),
                candidates: CandidatesJson::from(&c),
            };
            emit(fmt, out, &json, || {
                let mut text = String::from("edges:\n");
                for (x, y, w) in s.edges() {
                    let _ = writeln!(text, "  {x} {y} : {w}");
                }
                text.push_str("candidates:\n");
                text.push_str(&indent(&render_candidates(&c)));
                text
            })?;
            Ok(Outcome::Holds)
        }
        Command::Candidates { system } => {
            let s = format::parse_system(&read(system)?)?;
            let c = candidate_table(&s)?;
            emit(fmt, out, &CandidatesJson::from(&c), || render_candidates(&c))?;
            Ok(Outcome::Holds)
        }
        Command::Acyclic { system, method } => {
            let s = format::parse_system(&read(system)?)?;
            let (m, name) = match method {
                Method::Direct => (AcyclicityMethod::Direct, "direct"),
                Method::Linkage => (AcyclicityMethod::Linkage, "linkage"),
            };
            let acyclic = system_acyclic(&s, m)?;
            let witnesses = cyclic_witnesses(&s);
            let json = AcyclicJson {
                method: name.to_string(),
                acyclic,
                witnesses: witnesses.iter().map(WitnessJson::from).collect(),
            };
            emit(fmt, out, &json, || {
                let mut text = format!("acyclic ({name}): {}\n", yes_no(acyclic));
                for w in &witnesses {
                    let (x, y, z) = w.vertices;
                    let _ = writeln!(
                        text,
                        "cyclic: {}{} read in that order on {x}->{y}, {y}->{z}, {z}->{x}",
                        w.first, w.second
                    );
                }
                text
            })?;
            Ok(acyclic.into())
        }
        Command::Complete { system } => {
            let s = format::parse_system(&read(system)?)?;
            let r = complete_boundary(&s)?;
            emit(fmt, out, &CompletionJson::from(&r), || render_completion(&r))?;
            Ok((r.status == ensembles_core::CompletionStatus::Completable).into())
        }
        Command::Enumerate { n, canonical, fixed, emit_tables, threads } => {
            let n = *n as usize;
            let fixed = fixed.as_deref().map(|p| read(p).and_then(|t| format::read_partial_any(&t))).transpose()?;
            if fixed.is_some() && *canonical {
                return Err(ensembles_core::Error::FixedWithSymmetry.into());
            }
            let keep = emit_tables.is_some();
            let started = Instant::now();
            let catalog = (n == 4).then(CyclicPatternCatalog::new);
            let (tally, stats) = enumerate_tally(n, *canonical, fixed.as_ref(), keep, catalog.as_ref(), threads_or_default(*threads))?;
            let elapsed = started.elapsed();
            if let Some(path) = emit_tables {
                write_tables(path, &tally.tables, *canonical)?;
            }
            let json = EnumerateJson {
                n,
                canonical: *canonical,
                fixed: fixed.as_ref().map(TableJson::from),
                visited: tally.visited,
                total: tally.total,
                acyclic: catalog.as_ref().map(|_| tally.acyclic),
                with_repeat: tally.with_repeat,
                acyclic_without_repeat: catalog.as_ref().map(|_| tally.acyclic_without_repeat),
                stats: StatsJson::from(&stats),
            };
            if fmt == OutputFormat::Json {
                let _ = writeln!(err, "elapsed: {}", seconds(elapsed));
            }
            emit(fmt, out, &json, || {
                let mut s = format!("n: {n}\nvisited: {}\ntotal (orbit-weighted): {}\n", tally.visited, tally.total);
                if catalog.is_some() {
                    let _ = writeln!(s, "acyclic: {}", tally.acyclic);
                }
                let _ = writeln!(s, "with a word in every row: {}", tally.with_repeat);
                if catalog.is_some() {
                    let _ = writeln!(s, "acyclic without such a word: {}", tally.acyclic_without_repeat);
                }
                s.push_str(&render_stats(&stats));
                let _ = writeln!(s, "elapsed: {}", seconds(elapsed));
                s
            })?;
            Ok(Outcome::Holds)
        }
        Command::Verify { n, threads } => {
            let n = *n as usize;
            let started = Instant::now();
            let r = parallel::theorem(n, threads_or_default(*threads))?;
            let elapsed = started.elapsed();
            if fmt == OutputFormat::Json {
                let _ = writeln!(err, "elapsed: {}", seconds(elapsed));
            }
            emit(fmt, out, &TheoremJson::from(&r), || {
                let mut s = format!("n: {n}\nensembles: {} in {} classes\n", r.total, r.classes);
                if let Some(a) = r.acyclic_count {
                    let _ = writeln!(s, "acyclic: {a}");
                }
                let _ = writeln!(s, "with a word in every row: {}", r.with_repeat_count);
                let _ = writeln!(s, "violations: {}", r.violations.len());
                for v in &r.violations {
                    s.push_str(&indent(&format::write_table(v)));
                }
                s.push_str(&render_stats(&r.stats));
                let _ = writeln!(s, "elapsed: {}", seconds(elapsed));
                s
            })?;
            Ok(r.holds().into())
        }
        Command::Lemmas { threads } => {
            let started = Instant::now();
            let r = parallel::lemmas(threads_or_default(*threads))?;
            let elapsed = started.elapsed();
            if fmt == OutputFormat::Json {
                let _ = writeln!(err, "elapsed: {}", seconds(elapsed));
            }
            emit(fmt, out, &LemmaJson::from(&r), || {
                let mut s = format!("acyclic ensembles: {}\n", r.acyclic_total);
                s.push_str(&lemma_line("22-square", &r.square));
                s.push_str(&lemma_line("22-rectangle", &r.rectangle));
                s.push_str(&lemma_line("22-halfsquare", &r.halfsquare));
                s.push_str(&lemma_line("word in three cells", &r.triple_repeat));
                let _ = writeln!(s, "elapsed: {}", seconds(elapsed));
                s
            })?;
            Ok(r.holds().into())
        }
        Command::Matchings { trees } => {
            let trees = format::parse_trees(&read(trees)?)?;
            let c = matchings_from_trees(&trees)?;
            let r = validate_matching_collection(&c);
            let (n, d) = c.sizes();
            let json = MatchingsJson::new(n, d, trees.len(), c.len(), &r);
            emit(fmt, out, &json, || {
                let mut s = format!(
                    "{} trees, {} matchings in K_{{{n},{d}}}\nuniqueness: {}\nclosure: {}\nleft linkage: {}\nright linkage: {}\nmatching ensemble: {}\n",
                    trees.len(),
                    c.len(),
                    ok_fail(r.uniqueness_ok),
                    ok_fail(r.closure_ok),
                    ok_fail(r.left_linkage_ok),
                    ok_fail(r.right_linkage_ok),
                    yes_no(r.is_matching_ensemble())
                );
                for v in &r.violations {
                    let _ = writeln!(s, "{v}");
                }
                s
            })?;
            Ok(r.is_matching_ensemble().into())
        }
        Command::Convert { what } => convert(what, out),
    }
}

fn enumerate_tally(
    n: usize,
    canonical: bool,
    fixed: Option<&PartialTable>,
    keep: bool,
    catalog: Option<&CyclicPatternCatalog>,
    threads: usize,
) -> Result<(Tally, EnumerationStats), Error> {
    let e = Enumerator::new(n)?;
    if let Some(p) = fixed {
        let mut tally = Tally::default();
        let stats = e.run_completions(p, &mut |t, _| tally.observe(catalog, keep, t, 1))?;
        return Ok((tally, stats));
    }
    let delivery = if canonical { Delivery::Canonical } else { Delivery::All };
    let parts = parallel::fold_branches(&e, delivery, threads, Tally::default, |acc, t, orbit| {
        acc.observe(catalog, keep, t, if canonical { orbit } else { 1 })
    });
    let mut tally = Tally::default();
    let mut stats = EnumerationStats::default();
    for (part, s) in parts {
        tally.merge(part);
        stats.merge(&s);
    }
    Ok((tally, stats))
}

fn convert(what: &Convert, out: &mut dyn Write) -> Result<Outcome, Error> {
    let text = match what {
        Convert::TableToJson { table } => {
            let p = format::read_partial_any(&read(table)?)?;
            let mut s = serde_json::to_string(&TableJson::from(&p))?;
            s.push('\n');
            s
        }
        Convert::JsonToTable { json } => {
            let j: TableJson = serde_json::from_str(&read(json)?)?;
            format::write_partial_table(&j.to_partial()?)
        }
        Convert::MarkedToMatching { token } => {
            let mp: MarkedPermutation = token.parse()?;
            format!("{}\n", marked_to_matching(&mp))
        }
        Convert::MatchingToMarked { matching, n } => {
            let m: Matching = matching.parse()?;
            format!("{}\n", matching_to_marked(&m, *n)?)
        }
    };
    out.write_all(text.as_bytes()).map_err(io)?;
    Ok(Outcome::Holds)
}
