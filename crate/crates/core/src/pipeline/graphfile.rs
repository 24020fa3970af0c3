//! Edge-list graph files: first line `n=<count>`, then one `i j` pair per
//! line (0-based). Blank lines and `#` comments are ignored.

use super::PipelineError;
use crate::topology::Graph;

pub fn parse_graph(text: &str) -> Result<Graph, PipelineError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i as u64 + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (line, first) = lines.next().ok_or(PipelineError::Parse { line: 1, msg: "empty graph file".into() })?;
    let n: usize = first
        .strip_prefix("n=")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| PipelineError::Parse { line, msg: format!("expected `n=<count>`, found {first:?}") })?;

    let mut edges = Vec::new();
    for (line, l) in lines {
        let mut parts = l.split_whitespace().map(str::parse::<usize>);
        match (parts.next(), parts.next(), parts.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) => edges.push((a, b)),
            _ => return Err(PipelineError::Parse { line, msg: format!("expected `i j`, found {l:?}") }),
        }
    }
    Graph::new(n, edges).map_err(|e| PipelineError::Parse { line: 0, msg: e.to_string() })
}

pub fn format_graph(g: &Graph) -> String {
    let mut out = format!("n={}\n", g.n());
    for (a, b) in g.edges() {
        out.push_str(&format!("{a} {b}\n"));
    }
    out
}
