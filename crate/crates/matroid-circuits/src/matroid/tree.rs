//! Declared decomposition trees and their s-expression text format.
//!
//! A tree is a recipe: leaves name base matroids (graphic, cographic, R10,
//! F7, or an explicit matroid file), inner nodes join them by 1-, 2-, Δ-, or
//! Δ⁺-sums on declared glue elements. `recompose` replays the recipe through
//! the matroid sum operations, which check every interface precondition.
//!
//! Grammar, one node per parenthesized form:
//!
//! ```text
//! (1sum T1 T2)
//! (2sum T1 T2 glue=d)
//! (dsum T1 T2 triangle=p,q,r)
//! (dsum+ T1 T2 triangle=p,q,r)
//! (graphic K4 a b c d e f)            edge labels in lexicographic pair order
//! (graphic (edge a v1 v2) (edge b v1 v3) ...)
//! (cographic ...)                      same forms as graphic
//! (explicit path/to/file.mtx)
//! r10 | (r10 l1 ... l10) | f7 | (f7 l1 ... l7) | r12
//! ```
//!
//! The bare leaf `r12` expands to its fixed Δ-sum of two graph leaves.

use crate::matroid::{sums, Graph, Matroid, MatroidError, Result};

#[derive(Clone, Debug)]
pub enum Leaf {
    Graphic(Graph),
    Cographic(Graph),
    /// R10 with the ten elements mapped onto these labels, column order.
    R10 { labels: Vec<String> },
    /// F7 (the Fano matroid, the MFMC leaf) with seven labels.
    F7 { labels: Vec<String> },
    Explicit(Matroid),
}

#[derive(Clone, Debug)]
pub enum DecompositionTree {
    Leaf(Leaf),
    OneSum(Box<DecompositionTree>, Box<DecompositionTree>),
    TwoSum(Box<DecompositionTree>, Box<DecompositionTree>, String),
    DeltaSum(
        Box<DecompositionTree>,
        Box<DecompositionTree>,
        [String; 3],
    ),
    DeltaSumPlus(
        Box<DecompositionTree>,
        Box<DecompositionTree>,
        [String; 3],
    ),
}

impl Leaf {
    pub fn matroid(&self) -> Result<Matroid> {
        match self {
            Leaf::Graphic(g) => g.to_matroid(),
            Leaf::Cographic(g) => g.to_matroid()?.dual(),
            Leaf::R10 { labels } => relabeled(crate::fixtures::r10(), labels),
            Leaf::F7 { labels } => relabeled(crate::fixtures::f7(), labels),
            Leaf::Explicit(m) => Ok(m.clone()),
        }
    }
}

fn relabeled(m: Matroid, labels: &[String]) -> Result<Matroid> {
    if labels.len() != m.n() {
        return Err(MatroidError::Parse(format!(
            "{} labels given for {} elements",
            labels.len(),
            m.n()
        )));
    }
    let map = m
        .ground()
        .iter()
        .cloned()
        .zip(labels.iter().cloned())
        .collect();
    let name = m.name().to_string();
    m.relabel(&map).map(|x| x.renamed(&name))
}

impl DecompositionTree {
    pub fn leaf(l: Leaf) -> Self {
        DecompositionTree::Leaf(l)
    }

    /// Replays the recipe into a matroid, enforcing all interface invariants.
    pub fn recompose(&self) -> Result<Matroid> {
        match self {
            DecompositionTree::Leaf(l) => l.matroid(),
            DecompositionTree::OneSum(a, b) => sums::one_sum(&a.recompose()?, &b.recompose()?),
            DecompositionTree::TwoSum(a, b, d) => {
                sums::two_sum(&a.recompose()?, &b.recompose()?, d)
            }
            DecompositionTree::DeltaSum(a, b, d) => {
                sums::delta_sum(&a.recompose()?, &b.recompose()?, d)
            }
            DecompositionTree::DeltaSumPlus(a, b, d) => {
                sums::delta_sum_plus(&a.recompose()?, &b.recompose()?, d)
            }
        }
    }

    /// Number of elements of the composed matroid, without recomposing.
    pub fn n_elements(&self) -> usize {
        match self {
            DecompositionTree::Leaf(l) => match l {
                Leaf::Graphic(g) | Leaf::Cographic(g) => g.edge_count(),
                Leaf::R10 { .. } => 10,
                Leaf::F7 { .. } => 7,
                Leaf::Explicit(m) => m.n(),
            },
            DecompositionTree::OneSum(a, b) => a.n_elements() + b.n_elements(),
            DecompositionTree::TwoSum(a, b, _) => a.n_elements() + b.n_elements() - 2,
            DecompositionTree::DeltaSum(a, b, _) => a.n_elements() + b.n_elements() - 6,
            DecompositionTree::DeltaSumPlus(a, b, _) => a.n_elements() + b.n_elements() - 3,
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            DecompositionTree::Leaf(l) => leaf_text(l),
            DecompositionTree::OneSum(a, b) => {
                format!("(1sum {} {})", a.to_text(), b.to_text())
            }
            DecompositionTree::TwoSum(a, b, d) => {
                format!("(2sum {} {} glue={d})", a.to_text(), b.to_text())
            }
            DecompositionTree::DeltaSum(a, b, d) => format!(
                "(dsum {} {} triangle={},{},{})",
                a.to_text(),
                b.to_text(),
                d[0],
                d[1],
                d[2]
            ),
            DecompositionTree::DeltaSumPlus(a, b, d) => format!(
                "(dsum+ {} {} triangle={},{},{})",
                a.to_text(),
                b.to_text(),
                d[0],
                d[1],
                d[2]
            ),
        }
    }
}

fn leaf_text(l: &Leaf) -> String {
    match l {
        Leaf::Graphic(g) => format!("(graphic {})", graph_text(g)),
        Leaf::Cographic(g) => format!("(cographic {})", graph_text(g)),
        Leaf::R10 { labels } => format!("(r10 {})", labels.join(" ")),
        Leaf::F7 { labels } => format!("(f7 {})", labels.join(" ")),
        Leaf::Explicit(m) => format!("(explicit-inline {})", m.name()),
    }
}

fn graph_text(g: &Graph) -> String {
    // prefer the compact K-form when the graph is a canonically named clique
    if let Some(l) = complete_order(g) {
        let labels: Vec<&str> = g.edge_labels().collect();
        return format!("K{l} {}", labels.join(" "));
    }
    g.edges()
        .iter()
        .map(|e| {
            format!(
                "(edge {} {} {})",
                e.label,
                g.vertex_names()[e.u],
                g.vertex_names()[e.v]
            )
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn complete_order(g: &Graph) -> Option<usize> {
    let l = g.vertex_count();
    if g.edge_count() != l * (l - 1) / 2 {
        return None;
    }
    let mut k = 0;
    for i in 0..l {
        for j in i + 1..l {
            let e = &g.edges()[k];
            if (e.u, e.v) != (i, j) {
                return None;
            }
            k += 1;
        }
    }
    (g.vertex_names() == (1..=l).map(|i| format!("v{i}")).collect::<Vec<_>>()).then_some(l)
}

// ---------------------------------------------------------------------------
// parsing

#[derive(Debug, Clone)]
enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

fn tokenize(src: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut cur = String::new();
    for ch in src.chars() {
        match ch {
            '(' | ')' => {
                if !cur.is_empty() {
                    tokens.push(std::mem::take(&mut cur));
                }
                tokens.push(ch.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    tokens.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        tokens.push(cur);
    }
    tokens
}

fn parse_sexp(tokens: &[String], pos: &mut usize) -> Result<Sexp> {
    if *pos >= tokens.len() {
        return Err(MatroidError::Parse("unexpected end of tree text".into()));
    }
    let t = &tokens[*pos];
    *pos += 1;
    match t.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                if *pos >= tokens.len() {
                    return Err(MatroidError::Parse("unbalanced parenthesis".into()));
                }
                if tokens[*pos] == ")" {
                    *pos += 1;
                    return Ok(Sexp::List(items));
                }
                items.push(parse_sexp(tokens, pos)?);
            }
        }
        ")" => Err(MatroidError::Parse("unexpected ')'".into())),
        atom => Ok(Sexp::Atom(atom.to_string())),
    }
}

/// Parses a decomposition tree from its s-expression text. Paths inside
/// `(explicit …)` are read relative to the process working directory.
pub fn parse_tree(src: &str) -> Result<DecompositionTree> {
    let tokens = tokenize(src);
    let mut pos = 0;
    let sexp = parse_sexp(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(MatroidError::Parse(format!(
            "trailing tokens after tree: {:?}",
            &tokens[pos..]
        )));
    }
    tree_from_sexp(&sexp)
}

fn atom(s: &Sexp) -> Result<&str> {
    match s {
        Sexp::Atom(a) => Ok(a),
        Sexp::List(_) => Err(MatroidError::Parse("expected atom, found list".into())),
    }
}

fn tree_from_sexp(s: &Sexp) -> Result<DecompositionTree> {
    match s {
        Sexp::Atom(a) => match a.as_str() {
            "r10" => Ok(DecompositionTree::Leaf(Leaf::R10 {
                labels: crate::fixtures::r10().ground().to_vec(),
            })),
            "f7" => Ok(DecompositionTree::Leaf(Leaf::F7 {
                labels: crate::fixtures::f7().ground().to_vec(),
            })),
            "r12" => Ok(crate::fixtures::r12_tree()),
            other => Err(MatroidError::Parse(format!("unknown leaf {other:?}"))),
        },
        Sexp::List(items) => {
            let head = atom(items.first().ok_or_else(|| {
                MatroidError::Parse("empty parenthesized form".into())
            })?)?;
            match head {
                "1sum" => {
                    expect_len(items, 3, "1sum")?;
                    Ok(DecompositionTree::OneSum(
                        Box::new(tree_from_sexp(&items[1])?),
                        Box::new(tree_from_sexp(&items[2])?),
                    ))
                }
                "2sum" => {
                    expect_len(items, 4, "2sum")?;
                    let glue = keyed(atom(&items[3])?, "glue")?;
                    Ok(DecompositionTree::TwoSum(
                        Box::new(tree_from_sexp(&items[1])?),
                        Box::new(tree_from_sexp(&items[2])?),
                        glue.to_string(),
                    ))
                }
                "dsum" | "dsum+" => {
                    expect_len(items, 4, head)?;
                    let tri = keyed(atom(&items[3])?, "triangle")?;
                    let parts: Vec<String> = tri.split(',').map(str::to_string).collect();
                    let [a, b, c]: [String; 3] = parts.try_into().map_err(|_| {
                        MatroidError::Parse("triangle= needs three comma-separated labels".into())
                    })?;
                    let l = Box::new(tree_from_sexp(&items[1])?);
                    let r = Box::new(tree_from_sexp(&items[2])?);
                    if head == "dsum" {
                        Ok(DecompositionTree::DeltaSum(l, r, [a, b, c]))
                    } else {
                        Ok(DecompositionTree::DeltaSumPlus(l, r, [a, b, c]))
                    }
                }
                "graphic" | "cographic" => {
                    let g = graph_from_sexp(&items[1..])?;
                    Ok(DecompositionTree::Leaf(if head == "graphic" {
                        Leaf::Graphic(g)
                    } else {
                        Leaf::Cographic(g)
                    }))
                }
                "r10" => Ok(DecompositionTree::Leaf(Leaf::R10 {
                    labels: label_list(&items[1..], 10)?,
                })),
                "f7" => Ok(DecompositionTree::Leaf(Leaf::F7 {
                    labels: label_list(&items[1..], 7)?,
                })),
                "explicit" => {
                    expect_len(items, 2, "explicit")?;
                    let path = atom(&items[1])?;
                    let text = std::fs::read_to_string(path).map_err(|e| {
                        MatroidError::Parse(format!("cannot read {path}: {e}"))
                    })?;
                    Ok(DecompositionTree::Leaf(Leaf::Explicit(
                        crate::matroid::text::parse_matroid(&text)?,
                    )))
                }
                other => Err(MatroidError::Parse(format!("unknown node {other:?}"))),
            }
        }
    }
}

fn expect_len(items: &[Sexp], want: usize, what: &str) -> Result<()> {
    if items.len() != want {
        return Err(MatroidError::Parse(format!(
            "{what} takes {} arguments, got {}",
            want - 1,
            items.len() - 1
        )));
    }
    Ok(())
}

fn keyed<'a>(token: &'a str, key: &str) -> Result<&'a str> {
    token
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| MatroidError::Parse(format!("expected {key}=..., got {token:?}")))
}

fn label_list(items: &[Sexp], want: usize) -> Result<Vec<String>> {
    let labels: Vec<String> = items
        .iter()
        .map(|s| atom(s).map(str::to_string))
        .collect::<Result<_>>()?;
    if labels.len() != want {
        return Err(MatroidError::Parse(format!(
            "expected {want} labels, got {}",
            labels.len()
        )));
    }
    Ok(labels)
}

fn graph_from_sexp(items: &[Sexp]) -> Result<Graph> {
    match items.first() {
        Some(Sexp::Atom(a)) if a.starts_with('K') => {
            let l: usize = a[1..]
                .parse()
                .map_err(|_| MatroidError::Parse(format!("bad complete-graph name {a:?}")))?;
            let labels: Vec<String> = items[1..]
                .iter()
                .map(|s| atom(s).map(str::to_string))
                .collect::<Result<_>>()?;
            Graph::complete(l, &labels)
        }
        Some(Sexp::List(_)) => {
            let mut triples = Vec::new();
            for item in items {
                let Sexp::List(parts) = item else {
                    return Err(MatroidError::Parse("expected (edge label u v)".into()));
                };
                if parts.len() != 4 || atom(&parts[0])? != "edge" {
                    return Err(MatroidError::Parse("expected (edge label u v)".into()));
                }
                triples.push((
                    atom(&parts[1])?.to_string(),
                    atom(&parts[2])?.to_string(),
                    atom(&parts[3])?.to_string(),
                ));
            }
            Graph::from_edges(&triples)
        }
        _ => Err(MatroidError::Parse(
            "graphic leaf needs K<l> labels... or (edge ...) forms".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_two_sum_fixture() {
        let t = parse_tree("(2sum (graphic K3 a b d) (graphic K3 d c e) glue=d)").unwrap();
        let m = t.recompose().unwrap();
        assert_eq!(m.n(), 4);
        assert_eq!(m.basis_count().unwrap(), 4);
        assert_eq!(t.n_elements(), 4);
    }

    #[test]
    fn text_round_trip() {
        let src = "(1sum (graphic K3 a b c) (dsum (graphic K4 p q s1 r s2 s3) (graphic K4 p q t1 r t2 t3) triangle=p,q,r))";
        let t = parse_tree(src).unwrap();
        let printed = t.to_text();
        let t2 = parse_tree(&printed).unwrap();
        assert!(t.recompose().unwrap().bases_equal(&t2.recompose().unwrap()));
        assert_eq!(printed, t2.to_text());
    }

    #[test]
    fn edge_form_graphs() {
        let t = parse_tree(
            "(graphic (edge a x y) (edge b y z) (edge c z x) (edge d x w) (edge e w y))",
        )
        .unwrap();
        let m = t.recompose().unwrap();
        assert_eq!(m.n(), 5);
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn r10_leaf_has_ten_elements() {
        let t = parse_tree("r10").unwrap();
        assert_eq!(t.recompose().unwrap().basis_count().unwrap(), 162);
    }

    #[test]
    fn parse_errors_are_reported() {
        assert!(parse_tree("(2sum (graphic K3 a b d))").is_err());
        assert!(parse_tree("(dsum (graphic K3 a b c) (graphic K3 a b c) triangle=a,b)").is_err());
        assert!(parse_tree("(bogus)").is_err());
    }
}
