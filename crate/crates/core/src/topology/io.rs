//! Plain-text edge lists: a header line `n m`, then one `u v cost` line per
//! edge in canonical order.

use std::io::{BufRead, Write};

use super::Graph;
use crate::error::{Error, Result};
use crate::format::sig9;

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.node_count(), g.edge_count());
    for (&(u, v), &c) in g.edges().iter().zip(g.costs()) {
        out.push_str(&format!("{u} {v} {}\n", sig9(c)));
    }
    out
}

pub fn write_edge_list(g: &Graph, mut w: impl Write) -> Result<()> {
    w.write_all(to_edge_list(g).as_bytes())?;
    Ok(())
}

pub fn read_edge_list(r: impl BufRead) -> Result<Graph> {
    let mut text = String::new();
    for line in r.lines() {
        text.push_str(&line?);
        text.push('\n');
    }
    parse_edge_list(&text)
}

/// Parses an edge list and validates it into a [`Graph`]. Blank lines are
/// ignored; the edge count in the header must match the body.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 2 {
        return Err(Error::Parse { line: hline, msg: "header must be `n m`".into() });
    }
    let n: usize = parse_field(hline, head[0], "n")?;
    let m: usize = parse_field(hline, head[1], "m")?;

    let mut edges = Vec::with_capacity(m);
    for (line, body) in lines {
        let f: Vec<&str> = body.split_whitespace().collect();
        if f.len() != 3 {
            return Err(Error::Parse { line, msg: "edge line must be `u v cost`".into() });
        }
        edges.push((
            parse_field::<usize>(line, f[0], "u")?,
            parse_field::<usize>(line, f[1], "v")?,
            parse_field::<f64>(line, f[2], "cost")?,
        ));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: hline,
            msg: format!("header declares {m} edges but {} were listed", edges.len()),
        });
    }
    Graph::with_costs(n, edges)
}

fn parse_field<T: std::str::FromStr>(line: usize, raw: &str, what: &str) -> Result<T> {
    raw.parse().map_err(|_| Error::Parse { line, msg: format!("invalid {what}: `{raw}`") })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{gen_clustered, gen_uniform};

    #[test]
    fn round_trip_keeps_canonical_order() {
        for g in [gen_uniform(30, 4, 1).unwrap(), gen_clustered(2).unwrap()] {
            let text = to_edge_list(&g);
            let back = parse_edge_list(&text).unwrap();
            assert_eq!(back, g);
            assert_eq!(to_edge_list(&back), text);
        }
    }

    #[test]
    fn preserves_costs() {
        let g = Graph::with_costs(3, [(0, 1, 2.5), (1, 2, 0.125)]).unwrap();
        let text = to_edge_list(&g);
        assert_eq!(text, "3 2\n0 1 2.5\n1 2 0.125\n");
        assert_eq!(parse_edge_list(&text).unwrap().costs(), &[2.5, 0.125]);
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(matches!(parse_edge_list(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list("3 2\n0 1 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list("3 1\n0 x 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("3 1\n0 0 1\n"), Err(Error::InvalidGraph(_))));
        assert!(matches!(parse_edge_list("2 1\n0 5 1\n"), Err(Error::UnknownNode { .. })));
    }
}
