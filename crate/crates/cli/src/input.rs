// SPDX-License-Identifier: Apache-2.0

use std::io::Read;
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use sumeq::io::{parse_edge_list, parse_graph6};
use sumeq::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    /// One graph6 string.
    G6,
    /// `n m` header followed by `m` lines `u v`.
    Edges,
}

pub fn read_source(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).context("reading standard input")?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn detect(path: &Path, text: &str) -> GraphFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some("g6" | "graph6") => return GraphFormat::G6,
        Some("edges" | "el" | "txt") => return GraphFormat::Edges,
        _ => {}
    }
    let first = text.lines().map(|l| l.split('#').next().unwrap().trim()).find(|l| !l.is_empty());
    match first {
        Some(line) if !line.contains(char::is_whitespace) => GraphFormat::G6,
        _ => GraphFormat::Edges,
    }
}

pub fn load_graph(path: &Path, format: Option<GraphFormat>) -> Result<Graph> {
    let text = read_source(path)?;
    match format.unwrap_or_else(|| detect(path, &text)) {
        GraphFormat::G6 => {
            let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
            match lines.as_slice() {
                [line] => parse_graph6(line).with_context(|| format!("invalid graph6 string {line:?}")),
                [] => bail!("no graph6 string in input"),
                _ => bail!("expected a single graph6 string, found {} lines", lines.len()),
            }
        }
        GraphFormat::Edges => parse_edge_list(&text).context("invalid edge list"),
    }
}
