//! Edge-list text format: the first significant line holds `n`, every
//! following non-empty line holds one edge `u v`. Lines starting with `#`
//! are comments.

use super::Graph;
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let Some((first, header)) = lines.next() else {
        return Err(Error::Parse {
            line: 1,
            message: "missing vertex count".into(),
        });
    };
    let n: usize = header.parse().map_err(|_| Error::Parse {
        line: first,
        message: format!("expected vertex count, found {header:?}"),
    })?;

    let mut g = Graph::edgeless(n);
    for (line, body) in lines {
        let parse_err = |message: String| Error::Parse { line, message };
        let mut fields = body.split_whitespace();
        let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(parse_err(format!(
                "expected two vertex labels, found {body:?}"
            )));
        };
        let u: usize = a
            .parse()
            .map_err(|_| parse_err(format!("bad vertex label {a:?}")))?;
        let v: usize = b
            .parse()
            .map_err(|_| parse_err(format!("bad vertex label {b:?}")))?;
        for w in [u, v] {
            if w == 0 || w > n {
                return Err(parse_err(format!("vertex {w} outside 1..={n}")));
            }
        }
        if u == v {
            return Err(parse_err(format!("self-loop at vertex {u}")));
        }
        g.link(u - 1, v - 1);
    }
    Ok(g)
}

/// Canonical form: `n`, then each edge once as `u v` with `u < v`, sorted.
pub fn serialize_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
