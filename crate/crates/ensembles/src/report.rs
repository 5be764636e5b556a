//! JSON report shapes for every command.
//!
//! Reports carry only values that depend on the input, so repeated runs
//! serialise byte-identically; timings are printed separately.

use ensembles_core::{
    Axis, CandidateTable, CompatibilityConflict, CompletionResult, CompletionStatus, CyclicWitness, EnsembleTable,
    EnumerationStats, HalfSquare, IndexSet, LemmaClass, LemmaReport, LinkageFailure, MeReport, PatternTriple,
    PermutationSystem, Quad, StructureFindings, TheoremReport, ValidationReport,
};
use serde::{Deserialize, Serialize};

use crate::format::TableJson;

fn set(s: IndexSet) -> Vec<u8> {
    s.iter().collect()
}

fn cell((i, j): (u8, u8)) -> [u8; 2] {
    [i, j]
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LinkageFailureJson {
    pub cell: [u8; 2],
    pub token: String,
    /// `row` or `column`.
    pub axis: String,
}

fn linkage_failure(t: &EnsembleTable, f: &LinkageFailure) -> LinkageFailureJson {
    LinkageFailureJson {
        cell: cell(f.cell),
        token: t.cell(f.cell.0, f.cell.1).to_string(),
        axis: match f.axis {
            Axis::Row => "row",
            Axis::Column => "column",
        }
        .to_string(),
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ConflictJson {
    pub positions: Vec<u8>,
    pub values: Vec<u8>,
    pub first: [u8; 2],
    pub second: [u8; 2],
}

impl From<&CompatibilityConflict> for ConflictJson {
    fn from(c: &CompatibilityConflict) -> Self {
        ConflictJson { positions: set(c.positions), values: set(c.values), first: cell(c.first), second: cell(c.second) }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ValidationJson {
    pub n: usize,
    pub forced_entry_ok: bool,
    pub linkage_ok: bool,
    pub compatibility_ok: bool,
    pub is_ensemble: bool,
    pub linkage_failures: Vec<LinkageFailureJson>,
    pub compatibility_conflicts: Vec<ConflictJson>,
}

impl ValidationJson {
    pub fn new(t: &EnsembleTable, r: &ValidationReport) -> Self {
        ValidationJson {
            n: t.n(),
            forced_entry_ok: r.forced_entry_ok,
            linkage_ok: r.linkage_ok,
            compatibility_ok: r.compatibility_ok,
            is_ensemble: r.is_ensemble(),
            linkage_failures: r.linkage_failures.iter().map(|f| linkage_failure(t, f)).collect(),
            compatibility_conflicts: r.compatibility_conflicts.iter().map(ConflictJson::from).collect(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct QuadJson {
    pub rows: [u8; 2],
    pub cols: [u8; 2],
}

impl From<&Quad> for QuadJson {
    fn from(q: &Quad) -> Self {
        QuadJson { rows: [q.rows.0, q.rows.1], cols: [q.cols.0, q.cols.1] }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HalfSquareJson {
    pub diagonal: [[u8; 2]; 2],
    pub corner: [u8; 2],
}

impl From<&HalfSquare> for HalfSquareJson {
    fn from(h: &HalfSquare) -> Self {
        HalfSquareJson { diagonal: [cell(h.diagonal.0), cell(h.diagonal.1)], corner: cell(h.corner) }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StructuresJson {
    pub squares: Vec<QuadJson>,
    pub rectangles: Vec<QuadJson>,
    pub halfsquares: Vec<HalfSquareJson>,
}

impl From<&StructureFindings> for StructuresJson {
    fn from(s: &StructureFindings) -> Self {
        StructuresJson {
            squares: s.squares.iter().map(QuadJson::from).collect(),
            rectangles: s.rectangles.iter().map(QuadJson::from).collect(),
            halfsquares: s.halfsquares.iter().map(HalfSquareJson::from).collect(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IndexJson {
    pub word: String,
    pub order: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PatternJson {
    pub members: Vec<String>,
    pub indices: Vec<IndexJson>,
}

impl From<&PatternTriple> for PatternJson {
    fn from(p: &PatternTriple) -> Self {
        PatternJson {
            members: p.members.iter().map(ToString::to_string).collect(),
            indices: p.indices.iter().map(|i| IndexJson { word: i.word.to_string(), order: i.order.to_string() }).collect(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DetectJson {
    pub structures: StructuresJson,
    /// Present for `n = 4` only.
    pub cyclic_patterns: Option<Vec<PatternJson>>,
    pub acyclic: Option<bool>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MultiplicityJson {
    pub word: String,
    pub count: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RepeatedJson {
    pub n: usize,
    pub multiplicities: Vec<MultiplicityJson>,
    /// Words appearing in every row and column.
    pub repeated: Vec<String>,
}

impl RepeatedJson {
    pub fn new(t: &EnsembleTable) -> Self {
        RepeatedJson {
            n: t.n(),
            multiplicities: t
                .multiplicities()
                .into_iter()
                .map(|(w, count)| MultiplicityJson { word: w.to_string(), count })
                .collect(),
            repeated: ensembles_core::repeated_full(t).iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EdgeJson {
    pub x: u8,
    pub y: u8,
    pub word: String,
}

pub fn system_json(s: &PermutationSystem) -> Vec<EdgeJson> {
    s.edges().map(|(x, y, w)| EdgeJson { x, y, word: w.to_string() }).collect()
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CandidatesJson {
    pub n: usize,
    /// Row-major; each cell lists its candidate tokens.
    pub cells: Vec<Vec<Vec<String>>>,
    pub empty_cells: Vec<[u8; 2]>,
    pub open_cells: Vec<[u8; 2]>,
    pub selection_count: u64,
}

impl From<&CandidateTable> for CandidatesJson {
    fn from(c: &CandidateTable) -> Self {
        let n = c.n();
        CandidatesJson {
            n,
            cells: c.cells().chunks(n).map(|row| row.iter().map(|cands| cands.iter().map(ToString::to_string).collect()).collect()).collect(),
            empty_cells: c.empty_cells().into_iter().map(cell).collect(),
            open_cells: c.open_cells().into_iter().map(cell).collect(),
            selection_count: c.selection_count(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DeriveJson {
    pub system: Vec<EdgeJson>,
    /// Every admitted 2-matching as `{(vertex,label),(vertex,label)}`.
    pub two_matchings: Vec<String>,
    pub candidates: CandidatesJson,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct WitnessJson {
    pub vertices: [u8; 3],
    pub first: u8,
    pub second: u8,
}

impl From<&CyclicWitness> for WitnessJson {
    fn from(w: &CyclicWitness) -> Self {
        WitnessJson { vertices: [w.vertices.0, w.vertices.1, w.vertices.2], first: w.first, second: w.second }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AcyclicJson {
    pub method: String,
    pub acyclic: bool,
    pub witnesses: Vec<WitnessJson>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SolutionJson {
    pub table: TableJson,
    pub repeated: Vec<String>,
    pub cyclic_patterns: Vec<PatternJson>,
    pub acyclic: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RejectedJson {
    pub table: TableJson,
    pub linkage_failures: Vec<LinkageFailureJson>,
}

pub fn status_name(s: CompletionStatus) -> &'static str {
    match s {
        CompletionStatus::Completable => "completable",
        CompletionStatus::InfeasibleLinkage => "boundary-infeasible-linkage",
        CompletionStatus::InfeasibleEmptyCell => "boundary-infeasible-empty-cell",
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CompletionJson {
    pub status: String,
    pub candidates: CandidatesJson,
    pub solutions: Vec<SolutionJson>,
    pub rejected: Vec<RejectedJson>,
    pub rejected_count: u64,
}

impl From<&CompletionResult> for CompletionJson {
    fn from(r: &CompletionResult) -> Self {
        CompletionJson {
            status: status_name(r.status).to_string(),
            candidates: CandidatesJson::from(&r.candidates),
            solutions: r
                .solutions
                .iter()
                .map(|s| SolutionJson {
                    table: TableJson::from(&s.table),
                    repeated: s.repeated.iter().map(ToString::to_string).collect(),
                    cyclic_patterns: s.cyclic_patterns.iter().map(PatternJson::from).collect(),
                    acyclic: s.is_acyclic(),
                })
                .collect(),
            rejected: r
                .rejected
                .iter()
                .map(|s| RejectedJson {
                    table: TableJson::from(&s.table),
                    linkage_failures: s.linkage_failures.iter().map(|f| linkage_failure(&s.table, f)).collect(),
                })
                .collect(),
            rejected_count: r.rejected_count,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StatsJson {
    pub nodes_visited: u64,
    pub pruned_by_compatibility: u64,
    pub pruned_by_linkage: u64,
    pub valid_tables: u64,
    pub canonical_classes: u64,
}

impl From<&EnumerationStats> for StatsJson {
    fn from(s: &EnumerationStats) -> Self {
        StatsJson {
            nodes_visited: s.nodes_visited,
            pruned_by_compatibility: s.pruned_by_compatibility,
            pruned_by_linkage: s.pruned_by_linkage,
            valid_tables: s.valid_tables,
            canonical_classes: s.canonical_classes,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TheoremJson {
    pub n: usize,
    pub total: u64,
    pub classes: u64,
    pub acyclic_count: Option<u64>,
    pub with_repeat_count: u64,
    pub holds: bool,
    pub violations: Vec<TableJson>,
    pub stats: StatsJson,
}

impl From<&TheoremReport> for TheoremJson {
    fn from(r: &TheoremReport) -> Self {
        TheoremJson {
            n: r.n,
            total: r.total,
            classes: r.classes,
            acyclic_count: r.acyclic_count,
            with_repeat_count: r.with_repeat_count,
            holds: r.holds(),
            violations: r.violations.iter().map(TableJson::from).collect(),
            stats: StatsJson::from(&r.stats),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LemmaClassJson {
    pub acyclic_count: u64,
    pub acyclic_classes: u64,
    pub violations: Vec<TableJson>,
}

impl From<&LemmaClass> for LemmaClassJson {
    fn from(c: &LemmaClass) -> Self {
        LemmaClassJson {
            acyclic_count: c.acyclic_count,
            acyclic_classes: c.acyclic_classes,
            violations: c.violations.iter().map(TableJson::from).collect(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LemmaJson {
    pub acyclic_total: u64,
    pub square: LemmaClassJson,
    pub rectangle: LemmaClassJson,
    pub halfsquare: LemmaClassJson,
    pub triple_repeat: LemmaClassJson,
    pub holds: bool,
    pub stats: StatsJson,
}

impl From<&LemmaReport> for LemmaJson {
    fn from(r: &LemmaReport) -> Self {
        LemmaJson {
            acyclic_total: r.acyclic_total,
            square: LemmaClassJson::from(&r.square),
            rectangle: LemmaClassJson::from(&r.rectangle),
            halfsquare: LemmaClassJson::from(&r.halfsquare),
            triple_repeat: LemmaClassJson::from(&r.triple_repeat),
            holds: r.holds(),
            stats: StatsJson::from(&r.stats),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EnumerateJson {
    pub n: usize,
    pub canonical: bool,
    /// Cells every visited table must extend.
    pub fixed: Option<TableJson>,
    /// Tables visited: orbit representatives in canonical mode.
    pub visited: u64,
    /// Visited tables weighted by orbit size in canonical mode.
    pub total: u64,
    /// `None` for `n = 3`.
    pub acyclic: Option<u64>,
    pub with_repeat: u64,
    /// Acyclic tables without a word in every row and column.
    pub acyclic_without_repeat: Option<u64>,
    pub stats: StatsJson,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MatchingsJson {
    pub n: usize,
    pub d: usize,
    pub trees: usize,
    pub matchings: usize,
    pub uniqueness_ok: bool,
    pub closure_ok: bool,
    pub left_linkage_ok: bool,
    pub right_linkage_ok: bool,
    pub is_matching_ensemble: bool,
    pub violations: Vec<String>,
}

impl MatchingsJson {
    pub fn new(n: usize, d: usize, trees: usize, matchings: usize, r: &MeReport) -> Self {
        MatchingsJson {
            n,
            d,
            trees,
            matchings,
            uniqueness_ok: r.uniqueness_ok,
            closure_ok: r.closure_ok,
            left_linkage_ok: r.left_linkage_ok,
            right_linkage_ok: r.right_linkage_ok,
            is_matching_ensemble: r.is_matching_ensemble(),
            violations: r.violations.iter().map(ToString::to_string).collect(),
        }
    }
}
