//! Text formats: `.cam` models, `.g` edge lists.

use thiserror::Error;

use crate::graph::Graph;
use crate::model::{CircularArcModel, Extreme, ExtremeKind, ModelError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}, token {token}: {msg}")]
    Token { line: usize, token: usize, msg: String },
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

/// Non-blank lines with `#` comments stripped, tagged by 1-based line number.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_count(line: usize, tok: &str, what: &str) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| syntax(line, format!("expected {what}, found `{tok}`")))
}

pub fn parse_model(text: &str) -> Result<CircularArcModel, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| syntax(1, "missing arc count"))?;
    let mut head = header.split_whitespace();
    let n = parse_count(hline, head.next().unwrap_or(""), "arc count")?;
    if let Some(extra) = head.next() {
        return Err(syntax(hline, format!("unexpected `{extra}` after arc count")));
    }
    let mut order = Vec::with_capacity(2 * n);
    let mut seen_s = vec![false; n];
    let mut seen_t = vec![false; n];
    let mut last_line = hline;
    for (line, body) in lines {
        last_line = line;
        for (idx, tok) in body.split_whitespace().enumerate() {
            let bad = |msg: String| ParseError::Token { line, token: idx + 1, msg };
            let kind = match tok.as_bytes().first() {
                Some(b's') => ExtremeKind::Beginning,
                Some(b't') => ExtremeKind::Ending,
                _ => return Err(bad(format!("expected s<i> or t<i>, found `{tok}`"))),
            };
            let arc: usize = tok[1..].parse().map_err(|_| bad(format!("bad arc id in `{tok}`")))?;
            if arc >= n {
                return Err(bad(format!("arc {arc} out of range for n = {n}")));
            }
            let seen = if kind == ExtremeKind::Beginning { &mut seen_s } else { &mut seen_t };
            if seen[arc] {
                return Err(bad(format!("duplicate extreme `{tok}`")));
            }
            seen[arc] = true;
            order.push(Extreme { arc, kind });
        }
    }
    if let Some(a) = (0..n).find(|&a| !seen_s[a] || !seen_t[a]) {
        let which = if !seen_s[a] { 's' } else { 't' };
        return Err(syntax(last_line, format!("missing extreme {which}{a}")));
    }
    CircularArcModel::new(order).map_err(|e: ModelError| syntax(last_line, e.to_string()))
}

pub fn write_model(model: &CircularArcModel) -> String {
    format!("{}\n{}\n", model.n(), model)
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| syntax(1, "missing header `n m`"))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 2 {
        return Err(syntax(hline, "header must be `n m`"));
    }
    let n = parse_count(hline, head[0], "vertex count")?;
    let m = parse_count(hline, head[1], "edge count")?;
    let mut g = Graph::new(n);
    let mut count = 0;
    for (line, body) in lines {
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(syntax(line, "edge line must be `u v`"));
        }
        let mut ends = [0usize; 2];
        for (i, tok) in toks.iter().enumerate() {
            let v: usize = tok
                .parse()
                .map_err(|_| ParseError::Token { line, token: i + 1, msg: format!("bad vertex `{tok}`") })?;
            if v >= n {
                return Err(ParseError::Token { line, token: i + 1, msg: format!("vertex {v} out of range") });
            }
            ends[i] = v;
        }
        if ends[0] == ends[1] {
            return Err(syntax(line, "self-loop"));
        }
        if g.adjacent(ends[0], ends[1]) {
            return Err(syntax(line, "duplicate edge"));
        }
        g.add_edge(ends[0], ends[1]);
        count += 1;
    }
    if count != m {
        return Err(syntax(hline, format!("header declares {m} edges, found {count}")));
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_round_trip() {
        let m = parse_model("3\ns0 s1 t0 s2 t1 t2\n").unwrap();
        assert_eq!(parse_model(&write_model(&m)).unwrap(), m);
        assert_eq!(parse_model("0\n").unwrap().n(), 0);
    }

    #[test]
    fn model_errors_are_positioned() {
        let e = parse_model("2\ns0 t0 s0 t1").unwrap_err();
        assert_eq!(e, ParseError::Token { line: 2, token: 3, msg: "duplicate extreme `s0`".into() });
        assert!(matches!(parse_model("2\ns0 t0 s1"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_model("1\ns0 t3"), Err(ParseError::Token { token: 2, .. })));
        assert!(matches!(parse_model("x\n"), Err(ParseError::Syntax { line: 1, .. })));
        assert!(matches!(parse_model("1\ns0 q0"), Err(ParseError::Token { .. })));
    }

    #[test]
    fn graph_round_trip() {
        let g = parse_graph("3 2\n0 1\n# comment\n1 2\n").unwrap();
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        assert!(parse_graph("2 1\n0 0\n").is_err());
        assert!(parse_graph("2 2\n0 1\n").is_err());
        assert!(matches!(parse_graph("2 1\n0 5\n"), Err(ParseError::Token { line: 2, token: 2, .. })));
    }
}
