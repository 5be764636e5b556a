//! Text and JSON file formats.
//!
//! * Table files hold `n` lines of `n` whitespace-separated marked tokens.
//!   `#` starts a comment and `*` marks an unknown cell of a partial table.
//!   Several tables in one file are separated by blank lines.
//! * Table JSON is `{"n":4,"cells":[["[1]324", ...], ...]}`, with `"*"` for
//!   unknown cells.
//! * System files hold one `x y : word` line per edge of the simplex, in any
//!   order and direction.
//! * Tree files hold one spanning tree per line as `label-vertex'` edges.

use ensembles_core::{
    EnsembleTable, MarkedPermutation, PartialTable, Permutation, PermutationSystem, SpanningTree,
};
use serde::{Deserialize, Serialize};

use crate::Error;

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(keep, _)| keep).trim()
}

fn core_at(line: usize) -> impl Fn(ensembles_core::Error) -> Error {
    move |source| Error::Line { line, source }
}

type PartialRows = Vec<Vec<Option<MarkedPermutation>>>;

/// Splits a table file into blocks of rows.
fn table_blocks(text: &str) -> Result<Vec<PartialRows>, Error> {
    let mut blocks = Vec::new();
    let mut current: PartialRows = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = strip_comment(raw);
        if content.is_empty() {
            // Comment-only lines do not end a block.
            if raw.trim().is_empty() && !current.is_empty() {
                blocks.push(std::mem::take(&mut current));
            }
            continue;
        }
        let row = content
            .split_whitespace()
            .map(|tok| if tok == "*" { Ok(None) } else { tok.parse().map(Some).map_err(core_at(line)) })
            .collect::<Result<Vec<_>, _>>()?;
        current.push(row);
    }
    if !current.is_empty() {
        blocks.push(current);
    }
    Ok(blocks)
}

fn single_block(text: &str) -> Result<PartialRows, Error> {
    let mut blocks = table_blocks(text)?;
    match blocks.len() {
        0 => Err(Error::Invalid("no table found".into())),
        1 => Ok(blocks.pop().expect("one block")),
        k => Err(Error::Invalid(format!("expected one table, found {k}"))),
    }
}

fn complete_rows(rows: PartialRows) -> Result<Vec<Vec<MarkedPermutation>>, Error> {
    rows.into_iter()
        .enumerate()
        .map(|(i, row)| {
            row.into_iter()
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Invalid(format!("row {} has an unknown cell", i + 1)))
        })
        .collect()
}

pub fn parse_table(text: &str) -> Result<EnsembleTable, Error> {
    Ok(EnsembleTable::new(complete_rows(single_block(text)?)?)?)
}

pub fn parse_partial_table(text: &str) -> Result<PartialTable, Error> {
    Ok(PartialTable::new(single_block(text)?)?)
}

/// Every table in a file of blank-line-separated blocks.
pub fn parse_tables(text: &str) -> Result<Vec<EnsembleTable>, Error> {
    table_blocks(text)?.into_iter().map(|rows| Ok(EnsembleTable::new(complete_rows(rows)?)?)).collect()
}

pub fn write_table(t: &EnsembleTable) -> String {
    let mut out = String::new();
    for row in t.rows() {
        let tokens: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&tokens.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_partial_table(t: &PartialTable) -> String {
    let mut out = String::new();
    for row in t.cells().chunks(t.n()) {
        let tokens: Vec<String> = row.iter().map(|c| c.as_ref().map_or_else(|| "*".to_string(), |m| m.to_string())).collect();
        out.push_str(&tokens.join(" "));
        out.push('\n');
    }
    out
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TableJson {
    pub n: usize,
    pub cells: Vec<Vec<String>>,
}

impl From<&EnsembleTable> for TableJson {
    fn from(t: &EnsembleTable) -> Self {
        TableJson { n: t.n(), cells: t.rows().map(|r| r.iter().map(ToString::to_string).collect()).collect() }
    }
}

impl From<&PartialTable> for TableJson {
    fn from(t: &PartialTable) -> Self {
        let cells = t
            .cells()
            .chunks(t.n())
            .map(|r| r.iter().map(|c| c.as_ref().map_or_else(|| "*".to_string(), |m| m.to_string())).collect())
            .collect();
        TableJson { n: t.n(), cells }
    }
}

impl TableJson {
    fn rows(&self) -> Result<PartialRows, Error> {
        if self.cells.len() != self.n || self.cells.iter().any(|r| r.len() != self.n) {
            return Err(Error::Invalid(format!("`cells` must be {0} rows of {0} tokens", self.n)));
        }
        self.cells
            .iter()
            .map(|r| r.iter().map(|tok| if tok == "*" { Ok(None) } else { Ok(Some(tok.parse()?)) }).collect())
            .collect()
    }

    pub fn to_table(&self) -> Result<EnsembleTable, Error> {
        Ok(EnsembleTable::new(complete_rows(self.rows()?)?)?)
    }

    pub fn to_partial(&self) -> Result<PartialTable, Error> {
        Ok(PartialTable::new(self.rows()?)?)
    }
}

/// Table text or table JSON, told apart by a leading `{`.
pub fn read_partial_any(text: &str) -> Result<PartialTable, Error> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str::<TableJson>(text)?.to_partial()
    } else {
        parse_partial_table(text)
    }
}

pub fn read_table_any(text: &str) -> Result<EnsembleTable, Error> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str::<TableJson>(text)?.to_table()
    } else {
        parse_table(text)
    }
}

pub fn parse_system(text: &str) -> Result<PermutationSystem, Error> {
    let mut edges = Vec::new();
    let mut d = 0u8;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = strip_comment(raw);
        if content.is_empty() {
            continue;
        }
        let syntax = |message: &str| Error::Syntax { line, message: message.to_string() };
        let (head, word) = content.split_once(':').ok_or_else(|| syntax("expected `x y : word`"))?;
        let mut ends = head.split_whitespace().map(str::parse::<u8>);
        let (Some(Ok(x)), Some(Ok(y)), None) = (ends.next(), ends.next(), ends.next()) else {
            return Err(syntax("expected two vertex numbers before `:`"));
        };
        let word: Permutation = word.trim().parse().map_err(core_at(line))?;
        d = d.max(x).max(y);
        edges.push((x, y, word));
    }
    Ok(PermutationSystem::new(d as usize, edges)?)
}

pub fn write_system(s: &PermutationSystem) -> String {
    s.edges().map(|(x, y, w)| format!("{x} {y} : {w}\n")).collect()
}

pub fn parse_trees(text: &str) -> Result<Vec<SpanningTree>, Error> {
    text.lines()
        .enumerate()
        .filter_map(|(k, raw)| {
            let content = strip_comment(raw);
            (!content.is_empty()).then(|| content.parse().map_err(core_at(k + 1)))
        })
        .collect()
}

pub fn write_trees(trees: &[SpanningTree]) -> String {
    trees.iter().map(|t| format!("{t}\n")).collect()
}
