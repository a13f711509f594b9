//! Text formats for games and energy functions.
//!
//! Game files:
//!
//! ```text
//! # comment
//! p eg <n> <m>
//! v <id> <A|B>
//! e <src> <dst> <weight>
//! ```
//!
//! Energy files hold one `v <id> <value|inf>` line per node, sorted by id.
//! Emitted files are canonical: no comments, nodes in id order, edges in
//! graph order, single spaces, trailing newline.

use std::fmt::Write as _;

use egame_core::{Edge, Energy, EnergyFunction, GameGraph, Player};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

fn number<T: std::str::FromStr>(token: Option<&str>, what: &str, line: usize) -> Result<T, ParseError> {
    match token {
        None => fail(line, format!("missing {what}")),
        Some(t) => t.parse().or_else(|_| fail(line, format!("bad {what} '{t}'"))),
    }
}

fn no_trailing<'a>(mut tokens: impl Iterator<Item = &'a str>, line: usize) -> Result<(), ParseError> {
    match tokens.next() {
        None => Ok(()),
        Some(t) => fail(line, format!("unexpected trailing token '{t}'")),
    }
}

/// Meaningful lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_game(text: &str) -> Result<GameGraph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut owners: Vec<Option<Player>> = Vec::new();
    let mut edges: Vec<Edge> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut last_line = 0;

    for (line, content) in content_lines(text) {
        last_line = line;
        let mut tokens = content.split_whitespace();
        let kind = tokens.next().unwrap_or_default();
        if kind != "p" && header.is_none() {
            return fail(line, "expected header 'p eg <n> <m>' before any other line");
        }
        match kind {
            "p" => {
                if header.is_some() {
                    return fail(line, "duplicate header");
                }
                if tokens.next() != Some("eg") {
                    return fail(line, "header must start with 'p eg'");
                }
                let n: usize = number(tokens.next(), "node count", line)?;
                let m: usize = number(tokens.next(), "edge count", line)?;
                no_trailing(tokens, line)?;
                header = Some((n, m));
                owners = vec![None; n];
            }
            "v" => {
                let id: usize = number(tokens.next(), "node id", line)?;
                let owner = match tokens.next() {
                    Some("A") => Player::Alice,
                    Some("B") => Player::Bob,
                    Some(t) => return fail(line, format!("owner must be A or B, got '{t}'")),
                    None => return fail(line, "missing owner"),
                };
                no_trailing(tokens, line)?;
                let slot = match owners.get_mut(id) {
                    Some(slot) => slot,
                    None => return fail(line, format!("unknown node id {id}")),
                };
                if slot.is_some() {
                    return fail(line, format!("duplicate node {id}"));
                }
                *slot = Some(owner);
            }
            "e" => {
                let n = owners.len();
                let source: usize = number(tokens.next(), "edge source", line)?;
                let target: usize = number(tokens.next(), "edge target", line)?;
                let weight: i64 = number(tokens.next(), "edge weight", line)?;
                no_trailing(tokens, line)?;
                for id in [source, target] {
                    if id >= n {
                        return fail(line, format!("unknown node id {id}"));
                    }
                }
                if !seen.insert((source, target)) {
                    return fail(line, format!("duplicate edge {source} -> {target}"));
                }
                edges.push(Edge::new(source, target, weight));
            }
            other => return fail(line, format!("unknown line type '{other}'")),
        }
    }

    let Some((_, m)) = header else {
        return fail(last_line.max(1), "missing header 'p eg <n> <m>'");
    };
    if let Some(id) = owners.iter().position(Option::is_none) {
        return fail(last_line, format!("node {id} has no 'v' line"));
    }
    if edges.len() != m {
        return fail(last_line, format!("header promises {m} edges, found {}", edges.len()));
    }
    let owners = owners.into_iter().flatten().collect();
    GameGraph::new(owners, edges).or_else(|e| fail(last_line, e.to_string()))
}

pub fn emit_game(graph: &GameGraph) -> String {
    let mut out = String::new();
    writeln!(out, "p eg {} {}", graph.node_count(), graph.edge_count()).unwrap();
    for (v, owner) in graph.owners().iter().enumerate() {
        let tag = match owner {
            Player::Alice => 'A',
            Player::Bob => 'B',
        };
        writeln!(out, "v {v} {tag}").unwrap();
    }
    for e in graph.edges() {
        writeln!(out, "e {} {} {}", e.source, e.target, e.weight).unwrap();
    }
    out
}

/// Parses an energy file for a graph with `n` nodes.
pub fn parse_energies(text: &str, n: usize) -> Result<EnergyFunction, ParseError> {
    let mut values: Vec<Option<Energy>> = vec![None; n];
    let mut last_line = 0;
    for (line, content) in content_lines(text) {
        last_line = line;
        let mut tokens = content.split_whitespace();
        if tokens.next() != Some("v") {
            return fail(line, "expected 'v <id> <value|inf>'");
        }
        let id: usize = number(tokens.next(), "node id", line)?;
        let value = match tokens.next() {
            Some("inf") => Energy::Infinite,
            token => {
                let x: i64 = number(token, "energy", line)?;
                if x < 0 {
                    return fail(line, format!("energy {x} is negative"));
                }
                Energy::Finite(x)
            }
        };
        no_trailing(tokens, line)?;
        match values.get_mut(id) {
            None => return fail(line, format!("unknown node id {id}")),
            Some(Some(_)) => return fail(line, format!("duplicate node {id}")),
            Some(slot) => *slot = Some(value),
        }
    }
    if let Some(id) = values.iter().position(Option::is_none) {
        return fail(last_line.max(1), format!("no value for node {id}"));
    }
    Ok(EnergyFunction::new(values.into_iter().flatten().collect()))
}

pub fn emit_energies(e: &EnergyFunction) -> String {
    let mut out = String::new();
    for (v, x) in e.iter().enumerate() {
        match x {
            Energy::Finite(x) => writeln!(out, "v {v} {x}").unwrap(),
            Energy::Infinite => writeln!(out, "v {v} inf").unwrap(),
        }
    }
    out
}
