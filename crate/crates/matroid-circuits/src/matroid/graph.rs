//! Labeled multigraphs backing graphic matroids.
//!
//! Edges carry the matroid element labels. Parallel edges and loops are
//! allowed because they arise under contraction; the cycle matroid handles
//! them through the GF(2) incidence matrix (a loop is a zero column).

use std::collections::BTreeMap;

use crate::gf2::Gf2Matrix;
use crate::matroid::{Matroid, MatroidError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub label: String,
    pub u: usize,
    pub v: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vnames: Vec<String>,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a graph from `(label, u, v)` triples over named vertices.
    /// Vertices are created in order of first appearance.
    pub fn from_edges<S: AsRef<str>>(edges: &[(S, S, S)]) -> Result<Self> {
        let mut vnames: Vec<String> = Vec::new();
        let mut vindex: BTreeMap<String, usize> = BTreeMap::new();
        let mut out = Vec::with_capacity(edges.len());
        let mut seen = BTreeMap::new();
        for (label, u, v) in edges {
            let label = label.as_ref().to_string();
            if seen.insert(label.clone(), ()).is_some() {
                return Err(MatroidError::DuplicateLabel(label));
            }
            let mut vid = |name: &str| -> usize {
                *vindex.entry(name.to_string()).or_insert_with(|| {
                    vnames.push(name.to_string());
                    vnames.len() - 1
                })
            };
            let (u, v) = (vid(u.as_ref()), vid(v.as_ref()));
            out.push(Edge { label, u, v });
        }
        Ok(Graph {
            vnames,
            edges: out,
        })
    }

    /// The complete graph on `l` vertices `v1..vl`, edges in lexicographic
    /// vertex-pair order with the given labels (exactly `l*(l-1)/2` of them).
    pub fn complete(l: usize, labels: &[String]) -> Result<Self> {
        assert!(l >= 2);
        let want = l * (l - 1) / 2;
        if labels.len() != want {
            return Err(MatroidError::Parse(format!(
                "K{l} needs {want} edge labels, got {}",
                labels.len()
            )));
        }
        let mut triples = Vec::new();
        let mut k = 0;
        for i in 1..=l {
            for j in i + 1..=l {
                triples.push((labels[k].clone(), format!("v{i}"), format!("v{j}")));
                k += 1;
            }
        }
        Graph::from_edges(&triples)
    }

    pub fn vertex_count(&self) -> usize {
        self.vnames.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vnames
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_labels(&self) -> impl Iterator<Item = &str> {
        self.edges.iter().map(|e| e.label.as_str())
    }

    pub fn find_edge(&self, label: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.label == label)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.u != e.v && (e.u == v || e.v == v))
            .count()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                for w in [e.u, e.v] {
                    let other = if w == e.u { e.v } else { e.u };
                    if w == v && !seen[other] {
                        seen[other] = true;
                        stack.push(other);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Removes one edge by label. The vertex set is unchanged, so a bridge
    /// deletion yields a disconnected graph.
    pub fn delete_edge(&self, label: &str) -> Result<Graph> {
        if self.find_edge(label).is_none() {
            return Err(MatroidError::UnknownElement(label.to_string()));
        }
        Ok(Graph {
            vnames: self.vnames.clone(),
            edges: self
                .edges
                .iter()
                .filter(|e| e.label != label)
                .cloned()
                .collect(),
        })
    }

    /// Contracts one edge by label: its endpoints merge (keeping the smaller
    /// index), the edge disappears, and other edges between the endpoints
    /// become loops.
    pub fn contract_edge(&self, label: &str) -> Result<Graph> {
        let e = self
            .find_edge(label)
            .ok_or_else(|| MatroidError::UnknownElement(label.to_string()))?;
        if e.u == e.v {
            return Err(MatroidError::EmptyBasisSet {
                op: "contraction",
                element: label.to_string(),
            });
        }
        let (keep, gone) = (e.u.min(e.v), e.u.max(e.v));
        let remap = |x: usize| -> usize {
            if x == gone {
                keep
            } else if x > gone {
                x - 1
            } else {
                x
            }
        };
        let mut vnames = self.vnames.clone();
        vnames.remove(gone);
        Ok(Graph {
            vnames,
            edges: self
                .edges
                .iter()
                .filter(|f| f.label != label)
                .map(|f| Edge {
                    label: f.label.clone(),
                    u: remap(f.u),
                    v: remap(f.v),
                })
                .collect(),
        })
    }

    /// GF(2) incidence matrix with the last vertex row dropped. For a
    /// connected graph this has full row rank and its column matroid is the
    /// cycle matroid (loops become zero columns).
    pub fn reduced_incidence(&self) -> Gf2Matrix {
        let nv = self.vertex_count();
        let mut cols = vec![0u64; self.edges.len()];
        for (j, e) in self.edges.iter().enumerate() {
            if e.u == e.v {
                continue;
            }
            for w in [e.u, e.v] {
                if w + 1 < nv {
                    cols[j] |= 1 << w;
                }
            }
        }
        Gf2Matrix::new(nv - 1, cols)
    }

    pub fn to_matroid(&self) -> Result<Matroid> {
        Matroid::from_graph(&format!("M(G{})", self.vertex_count()), self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        let labels: Vec<String> = ["e12", "e13", "e14", "e23", "e24", "e34"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        Graph::complete(4, &labels).unwrap()
    }

    #[test]
    fn k4_spanning_trees() {
        let m = k4().to_matroid().unwrap();
        assert_eq!(m.rank(), 3);
        assert_eq!(m.basis_count().unwrap(), 16);
    }

    #[test]
    fn contraction_creates_parallels_and_loops() {
        let g = k4();
        let c = g.contract_edge("e12").unwrap();
        assert_eq!(c.vertex_count(), 3);
        assert_eq!(c.edge_count(), 5);
        // contracting a parallel edge then gives a loop
        let cc = c.contract_edge("e13").unwrap();
        assert!(cc.edges().iter().any(|e| e.u == e.v));
        // loops are dependent: rank drops to 1
        let m = cc.to_matroid().unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn bridge_deletion_disconnects() {
        let g = Graph::from_edges(&[("a", "x", "y"), ("b", "y", "z")]).unwrap();
        assert!(g.is_connected());
        assert!(!g.delete_edge("a").unwrap().is_connected());
    }
}
