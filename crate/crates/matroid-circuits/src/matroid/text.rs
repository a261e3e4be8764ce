//! The matroid text format.
//!
//! ```text
//! matroid <name> rank=<r> n=<n>
//! bases:
//! a b
//! a c
//! ```
//!
//! or `binary:` followed by r rows of 0/1 digits and a `cols <labels…>` line,
//! or `graph:` followed by one `label u v` line per edge. The parser rejects
//! rank mismatches between the header and the body.

use crate::gf2::Gf2Matrix;
use crate::matroid::{Graph, Matroid, MatroidError, Result};

pub fn format_matroid(m: &Matroid) -> String {
    let mut out = format!("matroid {} rank={} n={}\n", m.name(), m.rank(), m.n());
    match m.backing() {
        crate::matroid::Backing::Binary(mat) => {
            out.push_str("binary:\n");
            for i in 0..mat.nrows() {
                let row: String = (0..mat.ncols())
                    .map(|j| if mat.entry(i, j) == 1 { '1' } else { '0' })
                    .collect();
                out.push_str(&row);
                out.push('\n');
            }
            out.push_str(&format!("cols {}\n", m.ground().join(" ")));
        }
        crate::matroid::Backing::Graph(g) => {
            out.push_str("graph:\n");
            for e in g.edges() {
                out.push_str(&format!(
                    "{} {} {}\n",
                    e.label,
                    g.vertex_names()[e.u],
                    g.vertex_names()[e.v]
                ));
            }
        }
        _ => {
            out.push_str("bases:\n");
            for b in m.enumerate_bases().expect("fits the enumeration guard") {
                out.push_str(&b.join(" "));
                out.push('\n');
            }
        }
    }
    out
}

pub fn parse_matroid(text: &str) -> Result<Matroid> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| MatroidError::Parse("empty matroid file".into()))?;
    let mut parts = header.split_whitespace();
    if parts.next() != Some("matroid") {
        return Err(MatroidError::Parse(
            "matroid file must start with 'matroid <name> rank=<r> n=<n>'".into(),
        ));
    }
    let name = parts
        .next()
        .ok_or_else(|| MatroidError::Parse("missing matroid name".into()))?;
    let mut rank: Option<usize> = None;
    let mut n: Option<usize> = None;
    for p in parts {
        if let Some(v) = p.strip_prefix("rank=") {
            rank = Some(parse_usize(v)?);
        } else if let Some(v) = p.strip_prefix("n=") {
            n = Some(parse_usize(v)?);
        } else {
            return Err(MatroidError::Parse(format!("unexpected header token {p:?}")));
        }
    }
    let rank = rank.ok_or_else(|| MatroidError::Parse("missing rank= in header".into()))?;
    let n = n.ok_or_else(|| MatroidError::Parse("missing n= in header".into()))?;

    let section = lines
        .next()
        .ok_or_else(|| MatroidError::Parse("missing body section".into()))?;
    let body: Vec<&str> = lines.collect();
    let m = match section {
        "bases:" => {
            let bases: Vec<Vec<String>> = body
                .iter()
                .map(|l| l.split_whitespace().map(str::to_string).collect())
                .collect();
            let mut ground: Vec<String> = Vec::new();
            for b in &bases {
                for e in b {
                    if !ground.contains(e) {
                        ground.push(e.clone());
                    }
                }
            }
            ground.sort();
            if ground.len() != n {
                return Err(MatroidError::Parse(format!(
                    "header says n={n} but bases mention {} elements; \
                     elements outside every basis need a binary or graph encoding",
                    ground.len()
                )));
            }
            Matroid::from_bases(name, ground, bases)?
        }
        "binary:" => {
            let mut rows: Vec<Vec<u8>> = Vec::new();
            let mut cols: Option<Vec<String>> = None;
            for l in body {
                if let Some(c) = l.strip_prefix("cols") {
                    cols = Some(c.split_whitespace().map(str::to_string).collect());
                } else {
                    let row: Option<Vec<u8>> = l
                        .chars()
                        .map(|c| match c {
                            '0' => Some(0),
                            '1' => Some(1),
                            _ => None,
                        })
                        .collect();
                    rows.push(row.ok_or_else(|| {
                        MatroidError::Parse(format!("bad binary row {l:?}"))
                    })?);
                }
            }
            if rows.len() != rank {
                return Err(MatroidError::Parse(format!(
                    "header says rank={rank} but found {} binary rows",
                    rows.len()
                )));
            }
            let ground = cols.ok_or_else(|| {
                MatroidError::Parse("binary section needs a 'cols <labels…>' line".into())
            })?;
            if ground.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(MatroidError::Parse(format!(
                    "binary section width disagrees with n={n}"
                )));
            }
            Matroid::from_binary(name, ground, Gf2Matrix::from_rows(&rows))?
        }
        "graph:" => {
            let mut triples = Vec::new();
            for l in body {
                let parts: Vec<&str> = l.split_whitespace().collect();
                if parts.len() != 3 {
                    return Err(MatroidError::Parse(format!(
                        "graph edge line must be 'label u v', got {l:?}"
                    )));
                }
                triples.push((parts[0], parts[1], parts[2]));
            }
            if triples.len() != n {
                return Err(MatroidError::Parse(format!(
                    "header says n={n} but found {} edges",
                    triples.len()
                )));
            }
            Matroid::from_graph(name, Graph::from_edges(&triples)?)?
        }
        other => {
            return Err(MatroidError::Parse(format!(
                "unknown section {other:?} (expected bases:, binary:, or graph:)"
            )))
        }
    };
    if m.rank() != rank {
        return Err(MatroidError::Parse(format!(
            "header says rank={rank} but body has rank {}",
            m.rank()
        )));
    }
    if m.n() != n {
        return Err(MatroidError::Parse(format!(
            "header says n={n} but body has {} elements",
            m.n()
        )));
    }
    Ok(m)
}

fn parse_usize(s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| MatroidError::Parse(format!("bad integer {s:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn graph_round_trip() {
        let m = fixtures::k_graph(4).to_matroid().unwrap();
        let text = format_matroid(&m);
        let back = parse_matroid(&text).unwrap();
        assert!(back.bases_equal(&m));
    }

    #[test]
    fn binary_round_trip() {
        let m = fixtures::r10();
        let text = format_matroid(&m);
        let back = parse_matroid(&text).unwrap();
        assert!(back.bases_equal(&m));
        assert_eq!(back.rank(), 5);
    }

    #[test]
    fn bases_round_trip() {
        let m = Matroid::from_bases(
            "c4",
            vec!["a", "b", "c", "e"],
            vec![
                vec!["a".into(), "b".into(), "c".into()],
                vec!["a".into(), "b".into(), "e".into()],
                vec!["a".into(), "c".into(), "e".into()],
                vec!["b".into(), "c".into(), "e".into()],
            ],
        )
        .unwrap();
        let back = parse_matroid(&format_matroid(&m)).unwrap();
        assert!(back.bases_equal(&m));
    }

    #[test]
    fn rank_mismatch_is_rejected() {
        let text = "matroid bad rank=3 n=3\nbases:\na b\nb c\n";
        assert!(matches!(parse_matroid(text), Err(MatroidError::Parse(_))));
    }
}
