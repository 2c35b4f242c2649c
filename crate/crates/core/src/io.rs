// SPDX-License-Identifier: Apache-2.0

//! graph6 and edge-list readers/writers, and deterministic JSON/CSV reports.
//!
//! graph6 packs the upper triangle of the adjacency matrix column by column
//! (`(0,1), (0,2), (1,2), (0,3), ...`) into 6-bit groups, each written as the
//! byte `63 + group`. The first byte is `63 + n`; only the single-byte size
//! header (`n <= 62`) is supported.

use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::graph::{Graph, GraphError};

/// Largest vertex count expressible with a one-byte graph6 header.
pub const GRAPH6_MAX_N: usize = 62;

const GRAPH6_PREFIX: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("malformed graph6 header: {0}")]
    MalformedHeader(String),
    #[error("truncated graph6 payload: expected {expected} bytes, found {found}")]
    TruncatedPayload { expected: usize, found: usize },
    #[error("trailing garbage after graph6 payload: {0:?}")]
    TrailingGarbage(String),
    #[error("invalid graph6 payload byte {byte:#04x} at offset {offset}")]
    InvalidPayloadByte { byte: u8, offset: usize },
    #[error("nonzero padding bits in the last graph6 byte")]
    NonZeroPadding,
    #[error("graph with {0} vertices needs an extended graph6 header")]
    TooLarge(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn payload_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(GRAPH6_PREFIX).unwrap_or(text);
    let bytes = text.as_bytes();
    let Some(&header) = bytes.first() else {
        return Err(Graph6Error::MalformedHeader("empty input".into()));
    };
    if header == 126 {
        return Err(Graph6Error::MalformedHeader("extended size headers are not supported".into()));
    }
    if !(63..126).contains(&header) {
        return Err(Graph6Error::MalformedHeader(format!("size byte {header:#04x} out of range")));
    }
    let n = (header - 63) as usize;
    let expected = payload_len(n);
    let payload = &bytes[1..];
    if payload.len() < expected {
        return Err(Graph6Error::TruncatedPayload { expected, found: payload.len() });
    }
    if payload.len() > expected {
        return Err(Graph6Error::TrailingGarbage(String::from_utf8_lossy(&payload[expected..]).into_owned()));
    }
    let mut groups = Vec::with_capacity(expected);
    for (offset, &byte) in payload.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::InvalidPayloadByte { byte, offset: offset + 1 });
        }
        groups.push(byte - 63);
    }

    let mut edges = Vec::new();
    let mut bit = 0usize;
    for v in 1..n {
        for u in 0..v {
            if groups[bit / 6] >> (5 - bit % 6) & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    if !bit.is_multiple_of(6) && groups[bit / 6] & ((1 << (6 - bit % 6)) - 1) != 0 {
        return Err(Graph6Error::NonZeroPadding);
    }
    Ok(Graph::new(n, &edges)?)
}

pub fn encode_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.n();
    if n > GRAPH6_MAX_N {
        return Err(Graph6Error::TooLarge(n));
    }
    let mut groups = vec![0u8; payload_len(n)];
    let mut bit = 0usize;
    for v in 1..n {
        for u in 0..v {
            if g.has_edge(u, v) {
                groups[bit / 6] |= 1 << (5 - bit % 6);
            }
            bit += 1;
        }
    }
    let mut out = String::with_capacity(groups.len() + 1);
    out.push((63 + n as u8) as char);
    out.extend(groups.into_iter().map(|g| (g + 63) as char));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgeListError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
}

/// Parses `"n m"` followed by `m` lines `"u v"`. Blank lines and `#` comments are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());

    let malformed = |line: usize, message: &str| EdgeListError::Malformed { line, message: message.to_owned() };
    let (header_line, header) = lines.next().ok_or_else(|| malformed(1, "missing \"n m\" header"))?;
    let (n, m) = parse_pair::<usize>(header).ok_or_else(|| malformed(header_line, "expected \"n m\""))?;

    let mut edges = Vec::with_capacity(m);
    let mut edge_lines = Vec::with_capacity(m);
    for (line, content) in lines {
        let pair = parse_pair::<usize>(content).ok_or_else(|| malformed(line, "expected \"u v\""))?;
        edges.push(pair);
        edge_lines.push(line);
    }
    if edges.len() != m {
        return Err(EdgeListError::EdgeCount { expected: m, found: edges.len() });
    }
    Graph::new(n, &[]).map_err(|source| EdgeListError::Graph { line: header_line, source })?;
    Graph::new(n, &edges).map_err(|source| {
        // Replay to find the first edge that fails.
        let k =
            (0..edges.len()).find(|&k| Graph::new(n, &edges[..=k]).is_err()).expect("some prefix reproduces the error");
        EdgeListError::Graph { line: edge_lines[k], source }
    })
}

fn parse_pair<T: FromStr>(line: &str) -> Option<(T, T)> {
    let mut parts = line.split_whitespace();
    let a = parts.next()?.parse().ok()?;
    let b = parts.next()?.parse().ok()?;
    parts.next().is_none().then_some((a, b))
}

pub fn write_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub const SCHEMA_VERSION: &str = "1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Fixed CSV column order for survey reports.
pub const SURVEY_CSV_COLUMNS: [&str; 12] = [
    "graph6",
    "n",
    "m",
    "connected",
    "bipartite",
    "tree",
    "block",
    "cactus",
    "equilibrium",
    "diameter",
    "witness_deviation",
    "claim_violations",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportKind {
    Survey,
    Check,
    Analyze,
    Theory,
    Dynamics,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, ReportError> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(ReportError::UnsupportedFormat(other.to_owned())),
        }
    }
}

/// A serialisable report. `serde_json::Value` objects keep keys sorted, so output is stable.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub tool_version: String,
    pub kind: ReportKind,
    pub config: Value,
    pub records: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<Value>,
}

impl ReportDocument {
    pub fn new(kind: ReportKind, config: Value) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION.to_owned(),
            tool_version: TOOL_VERSION.to_owned(),
            kind,
            config,
            records: Vec::new(),
            summary: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("unsupported report format {0:?}")]
    UnsupportedFormat(String),
    #[error("CSV output is only defined for survey reports")]
    CsvNotSupported,
    #[error("record {index} lacks column {column}")]
    MissingColumn { index: usize, column: &'static str },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub fn write_report(doc: &ReportDocument, format: ReportFormat) -> Result<Vec<u8>, ReportError> {
    match format {
        ReportFormat::Json => {
            let mut out = serde_json::to_vec_pretty(doc)?;
            out.push(b'\n');
            Ok(out)
        }
        ReportFormat::Csv => write_survey_csv(doc),
    }
}

fn csv_cell(value: &Value) -> String {
    match value {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(csv_cell).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    }
}

fn write_survey_csv(doc: &ReportDocument) -> Result<Vec<u8>, ReportError> {
    if doc.kind != ReportKind::Survey {
        return Err(ReportError::CsvNotSupported);
    }
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(SURVEY_CSV_COLUMNS)?;
    for (index, record) in doc.records.iter().enumerate() {
        let row = SURVEY_CSV_COLUMNS
            .iter()
            .map(|&column| record.get(column).map(csv_cell).ok_or(ReportError::MissingColumn { index, column }))
            .collect::<Result<Vec<_>, _>>()?;
        writer.write_record(row)?;
    }
    writer.into_inner().map_err(|e| ReportError::Io(e.into_error()))
}
