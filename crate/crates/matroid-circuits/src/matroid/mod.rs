//! Matroids under several encodings: explicit basis lists, independence
//! oracles, GF(2) representation matrices, and graphs.
//!
//! Everything here is desk scale by design. Bases are enumerated eagerly (but
//! lazily cached) as bitmasks over the ground-set order, and all structural
//! operations — duality, minors, circuits, separations, sums — go through that
//! basis set. Guards keep the combinatorics honest: enumeration is refused
//! beyond a configurable ground size.

pub mod graph;
pub mod rep;
pub mod sums;
pub mod text;
pub mod tree;

pub use graph::Graph;
pub use tree::{DecompositionTree, Leaf};

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::gf2::Gf2Matrix;

/// Search-size guards. The defaults are deliberately conservative; callers
/// that know better can raise them per matroid.
#[derive(Clone, Copy, Debug)]
pub struct Guards {
    /// Largest ground set for which bases are enumerated.
    pub enumerate_max_n: usize,
    /// Largest ground set for which separations are searched exhaustively.
    pub separation_max_n: usize,
    /// Largest ground set for which the exchange axiom is verified on
    /// construction from an explicit basis list.
    pub axiom_check_max_n: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            enumerate_max_n: 24,
            separation_max_n: 20,
            axiom_check_max_n: 14,
        }
    }
}

#[derive(Debug, Error)]
pub enum MatroidError {
    #[error("ground set of size {n} exceeds the guard ({limit})")]
    GroundTooLarge { n: usize, limit: usize },
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("{op} of {element:?} leaves no bases")]
    EmptyBasisSet { op: &'static str, element: String },
    #[error("bad sum interface: {0}")]
    BadInterface(String),
    #[error("bad triangle: {0}")]
    BadTriangle(String),
    #[error("{0:?} is not a cocircuit")]
    NotACocircuit(String),
    #[error("matroid is not binary: {0}")]
    NotBinary(String),
    #[error("invalid basis list: {0}")]
    InvalidBases(String),
    #[error("graph is not connected")]
    DisconnectedGraph,
    #[error("representation error: {0}")]
    BadRepresentation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, MatroidError>;

/// Independence predicate on element bitmasks (bit i = ground element i).
pub type IndependencePredicate = Arc<dyn Fn(u64) -> bool + Send + Sync>;

#[derive(Clone)]
pub enum Backing {
    /// Bases given explicitly; stored directly in the cache.
    BasisList,
    /// Independence oracle plus the rank.
    Oracle(IndependencePredicate),
    /// Full-row-rank matrix over GF(2), columns aligned with the ground set.
    Binary(Gf2Matrix),
    /// Connected graph; bases are the spanning trees.
    Graph(Graph),
}

impl std::fmt::Debug for Backing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Backing::BasisList => write!(f, "BasisList"),
            Backing::Oracle(_) => write!(f, "Oracle"),
            Backing::Binary(m) => write!(f, "Binary({}x{})", m.nrows(), m.ncols()),
            Backing::Graph(g) => write!(f, "Graph({}v {}e)", g.vertex_count(), g.edge_count()),
        }
    }
}

/// A matroid: an ordered ground set plus one backing representation.
///
/// Immutable after construction; the basis cache is filled at most once and
/// the value is safe to share across threads.
#[derive(Clone, Debug)]
pub struct Matroid {
    name: String,
    ground: Vec<String>,
    index: BTreeMap<String, usize>,
    rank: usize,
    backing: Backing,
    guards: Guards,
    bases: Arc<OnceLock<Vec<u64>>>,
}

fn build_index(ground: &[String]) -> Result<BTreeMap<String, usize>> {
    let mut index = BTreeMap::new();
    for (i, l) in ground.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(MatroidError::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

impl Matroid {
    pub fn from_bases<S: Into<String>>(
        name: &str,
        ground: Vec<S>,
        bases: Vec<Vec<String>>,
    ) -> Result<Self> {
        let ground: Vec<String> = ground.into_iter().map(Into::into).collect();
        let index = build_index(&ground)?;
        if bases.is_empty() {
            return Err(MatroidError::InvalidBases("no bases given".into()));
        }
        let mut masks = Vec::with_capacity(bases.len());
        for b in &bases {
            let mut m = 0u64;
            for l in b {
                let i = *index
                    .get(l.as_str())
                    .ok_or_else(|| MatroidError::UnknownElement(l.clone()))?;
                m |= 1 << i;
            }
            if (m.count_ones() as usize) != b.len() {
                return Err(MatroidError::InvalidBases(format!(
                    "repeated element in basis {b:?}"
                )));
            }
            masks.push(m);
        }
        Self::from_basis_masks(name, ground, masks)
    }

    /// Internal constructor from basis bitmasks.
    pub fn from_basis_masks(name: &str, ground: Vec<String>, mut masks: Vec<u64>) -> Result<Self> {
        if ground.len() > 64 {
            return Err(MatroidError::GroundTooLarge {
                n: ground.len(),
                limit: 64,
            });
        }
        let index = build_index(&ground)?;
        masks.sort_unstable();
        masks.dedup();
        if masks.is_empty() {
            return Err(MatroidError::InvalidBases("no bases given".into()));
        }
        let rank = masks[0].count_ones() as usize;
        if masks.iter().any(|m| m.count_ones() as usize != rank) {
            return Err(MatroidError::InvalidBases(
                "bases have differing cardinalities".into(),
            ));
        }
        let guards = Guards::default();
        if ground.len() <= guards.axiom_check_max_n {
            check_exchange_axiom(&masks)?;
        }
        let cache = OnceLock::new();
        cache.set(masks).unwrap();
        Ok(Matroid {
            name: name.to_string(),
            ground,
            index,
            rank,
            backing: Backing::BasisList,
            guards,
            bases: Arc::new(cache),
        })
    }

    pub fn from_binary(name: &str, ground: Vec<String>, matrix: Gf2Matrix) -> Result<Self> {
        if matrix.ncols() != ground.len() {
            return Err(MatroidError::BadRepresentation(format!(
                "matrix has {} columns for {} elements",
                matrix.ncols(),
                ground.len()
            )));
        }
        if matrix.rank() != matrix.nrows() {
            return Err(MatroidError::BadRepresentation(
                "matrix does not have full row rank".into(),
            ));
        }
        let index = build_index(&ground)?;
        Ok(Matroid {
            name: name.to_string(),
            rank: matrix.nrows(),
            backing: Backing::Binary(matrix),
            ground,
            index,
            guards: Guards::default(),
            bases: Arc::new(OnceLock::new()),
        })
    }

    pub fn from_graph(name: &str, graph: Graph) -> Result<Self> {
        if !graph.is_connected() {
            return Err(MatroidError::DisconnectedGraph);
        }
        let ground: Vec<String> = graph.edge_labels().map(str::to_string).collect();
        let index = build_index(&ground)?;
        Ok(Matroid {
            name: name.to_string(),
            rank: graph.vertex_count() - 1,
            backing: Backing::Graph(graph),
            ground,
            index,
            guards: Guards::default(),
            bases: Arc::new(OnceLock::new()),
        })
    }

    pub fn from_oracle<S: Into<String>>(
        name: &str,
        ground: Vec<S>,
        rank: usize,
        predicate: IndependencePredicate,
    ) -> Result<Self> {
        let ground: Vec<String> = ground.into_iter().map(Into::into).collect();
        let index = build_index(&ground)?;
        Ok(Matroid {
            name: name.to_string(),
            ground,
            index,
            rank,
            backing: Backing::Oracle(predicate),
            guards: Guards::default(),
            bases: Arc::new(OnceLock::new()),
        })
    }

    pub fn with_guards(mut self, guards: Guards) -> Self {
        self.guards = guards;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn backing(&self) -> &Backing {
        &self.backing
    }

    pub fn guards(&self) -> Guards {
        self.guards
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| MatroidError::UnknownElement(label.to_string()))
    }

    pub fn full_mask(&self) -> u64 {
        if self.n() >= 64 {
            u64::MAX
        } else {
            (1u64 << self.n()) - 1
        }
    }

    pub fn mask_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<u64> {
        let mut m = 0u64;
        for l in labels {
            m |= 1 << self.index_of(l.as_ref())?;
        }
        Ok(m)
    }

    pub fn labels_of(&self, mask: u64) -> Vec<String> {
        (0..self.n())
            .filter(|i| (mask >> i) & 1 == 1)
            .map(|i| self.ground[i].clone())
            .collect()
    }

    /// The basis set as bitmasks, enumerated on first use.
    pub fn basis_masks(&self) -> Result<&[u64]> {
        if let Some(b) = self.bases.get() {
            return Ok(b);
        }
        if self.n() > self.guards.enumerate_max_n {
            return Err(MatroidError::GroundTooLarge {
                n: self.n(),
                limit: self.guards.enumerate_max_n,
            });
        }
        let mut computed = match &self.backing {
            Backing::BasisList => unreachable!("basis lists are cached at construction"),
            Backing::Binary(m) => m.enumerate_bases(),
            Backing::Graph(g) => g.reduced_incidence().enumerate_bases(),
            Backing::Oracle(pred) => enumerate_by_oracle(self.n(), self.rank, pred),
        };
        computed.sort_unstable();
        if computed.is_empty() {
            return Err(MatroidError::InvalidBases(
                "backing produced no bases".into(),
            ));
        }
        if computed
            .iter()
            .any(|m| m.count_ones() as usize != self.rank)
        {
            return Err(MatroidError::InvalidBases(
                "backing produced bases of unexpected rank".into(),
            ));
        }
        Ok(self.bases.get_or_init(|| computed))
    }

    /// The basis set as label sets, sorted.
    pub fn enumerate_bases(&self) -> Result<Vec<Vec<String>>> {
        Ok(self
            .basis_masks()?
            .iter()
            .map(|&m| self.labels_of(m))
            .collect())
    }

    pub fn basis_count(&self) -> Result<usize> {
        Ok(self.basis_masks()?.len())
    }

    /// Rank of a subset: `max over bases of |B ∩ X|`.
    pub fn rank_of_mask(&self, x: u64) -> Result<usize> {
        if x & !self.full_mask() != 0 {
            return Err(MatroidError::UnknownElement(format!(
                "mask {x:#b} outside ground set"
            )));
        }
        Ok(self
            .basis_masks()?
            .iter()
            .map(|&b| (b & x).count_ones() as usize)
            .max()
            .unwrap_or(0))
    }

    pub fn rank_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<usize> {
        let m = self.mask_of(labels)?;
        self.rank_of_mask(m)
    }

    pub fn is_independent_mask(&self, x: u64) -> Result<bool> {
        Ok(self.rank_of_mask(x)? == x.count_ones() as usize)
    }

    pub fn is_loop(&self, label: &str) -> Result<bool> {
        let i = self.index_of(label)?;
        Ok(self.basis_masks()?.iter().all(|b| (b >> i) & 1 == 0))
    }

    pub fn is_coloop(&self, label: &str) -> Result<bool> {
        let i = self.index_of(label)?;
        Ok(self.basis_masks()?.iter().all(|b| (b >> i) & 1 == 1))
    }

    /// Dual matroid: same ground set, complemented bases. A binary backing
    /// dualizes at the matrix level into the standard-form dual representation.
    pub fn dual(&self) -> Result<Matroid> {
        let name = format!("{}*", self.name);
        if let Backing::Binary(m) = &self.backing {
            return Matroid::from_binary(&name, self.ground.clone(), m.dual_rep());
        }
        let full = self.full_mask();
        let co: Vec<u64> = self.basis_masks()?.iter().map(|&b| full ^ b).collect();
        Matroid::from_basis_masks(&name, self.ground.clone(), co)
    }

    /// Deletion `M \ e`: bases not containing `e`, on the smaller ground set.
    /// Deleting a coloop would leave no bases and is an error.
    pub fn delete(&self, label: &str) -> Result<Matroid> {
        let i = self.index_of(label)?;
        let kept: Vec<u64> = self
            .basis_masks()?
            .iter()
            .filter(|&&b| (b >> i) & 1 == 0)
            .map(|&b| drop_bit(b, i))
            .collect();
        if kept.is_empty() {
            return Err(MatroidError::EmptyBasisSet {
                op: "deletion",
                element: label.to_string(),
            });
        }
        let mut ground = self.ground.clone();
        ground.remove(i);
        Matroid::from_basis_masks(&format!("{}\\{label}", self.name), ground, kept)
    }

    /// Contraction `M / e`: bases containing `e`, with `e` removed. Contracting
    /// a loop would leave no bases and is an error.
    pub fn contract(&self, label: &str) -> Result<Matroid> {
        let i = self.index_of(label)?;
        let kept: Vec<u64> = self
            .basis_masks()?
            .iter()
            .filter(|&&b| (b >> i) & 1 == 1)
            .map(|&b| drop_bit(b, i))
            .collect();
        if kept.is_empty() {
            return Err(MatroidError::EmptyBasisSet {
                op: "contraction",
                element: label.to_string(),
            });
        }
        let mut ground = self.ground.clone();
        ground.remove(i);
        Matroid::from_basis_masks(&format!("{}/{label}", self.name), ground, kept)
    }

    pub fn delete_all<S: AsRef<str>>(&self, labels: &[S]) -> Result<Matroid> {
        let mut m = self.clone();
        for l in labels {
            m = m.delete(l.as_ref())?;
        }
        Ok(m)
    }

    /// Circuit test: dependent, but every proper one-element-removed subset is
    /// independent.
    pub fn is_circuit_mask(&self, c: u64) -> Result<bool> {
        if c == 0 || self.is_independent_mask(c)? {
            return Ok(false);
        }
        for i in 0..self.n() {
            if (c >> i) & 1 == 1 && !self.is_independent_mask(c & !(1 << i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_circuit<S: AsRef<str>>(&self, labels: &[S]) -> Result<bool> {
        let m = self.mask_of(labels)?;
        self.is_circuit_mask(m)
    }

    /// Cocircuit test: circuit of the dual, i.e. a minimal set meeting every
    /// basis.
    pub fn is_cocircuit_mask(&self, c: u64) -> Result<bool> {
        if c == 0 {
            return Ok(false);
        }
        let bases = self.basis_masks()?;
        if bases.iter().any(|&b| b & c == 0) {
            return Ok(false);
        }
        for i in 0..self.n() {
            if (c >> i) & 1 == 1 {
                let smaller = c & !(1 << i);
                if smaller != 0 && bases.iter().all(|&b| b & smaller != 0) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_cocircuit<S: AsRef<str>>(&self, labels: &[S]) -> Result<bool> {
        let m = self.mask_of(labels)?;
        self.is_cocircuit_mask(m)
    }

    /// Whether any nonempty subset of `mask` is a cocircuit.
    pub fn contains_cocircuit(&self, mask: u64) -> Result<bool> {
        let mut sub = mask;
        loop {
            if sub != 0 && self.is_cocircuit_mask(sub)? {
                return Ok(true);
            }
            if sub == 0 {
                return Ok(false);
            }
            sub = (sub - 1) & mask;
        }
    }

    /// Exhaustive search for a k-separation (k ∈ {1, 2}): a partition
    /// (X, E∖X) with r(X) + r(E∖X) − r(M) ≤ k−1 and min(|X|, |E∖X|) ≥ k.
    /// Returns the lexicographically smallest X found, or None.
    pub fn find_separation(&self, k: usize) -> Result<Option<(Vec<String>, Vec<String>)>> {
        assert!(k == 1 || k == 2, "only 1- and 2-separations are searched");
        if self.n() > self.guards.separation_max_n {
            return Err(MatroidError::GroundTooLarge {
                n: self.n(),
                limit: self.guards.separation_max_n,
            });
        }
        Ok(self
            .find_separation_mask(k)?
            .map(|x| (self.labels_of(x), self.labels_of(self.full_mask() ^ x))))
    }

    pub(crate) fn find_separation_mask(&self, k: usize) -> Result<Option<u64>> {
        let full = self.full_mask();
        let n = self.n();
        let r = self.rank as isize;
        // fix element 0 on the complement side so each partition is seen once
        for x in 1u64..(1 << (n - 1)) {
            let x = x << 1;
            let y = full ^ x;
            if (x.count_ones() as usize) < k || (y.count_ones() as usize) < k {
                continue;
            }
            let rx = self.rank_of_mask(x)? as isize;
            let ry = self.rank_of_mask(y)? as isize;
            if rx + ry - r <= (k as isize) - 1 {
                // prefer the smaller side as X, tie broken by mask order
                let small = if x.count_ones() <= y.count_ones() { x } else { y };
                return Ok(Some(small));
            }
        }
        Ok(None)
    }

    /// Basis-set equality after aligning the other matroid's labels onto this
    /// ground set. Differing ground sets are never equal.
    pub fn bases_equal(&self, other: &Matroid) -> bool {
        if self.n() != other.n() || self.rank != other.rank {
            return false;
        }
        let mut perm = Vec::with_capacity(other.n());
        for l in &other.ground {
            match self.index.get(l) {
                Some(&i) => perm.push(i),
                None => return false,
            }
        }
        let (Ok(mine), Ok(theirs)) = (self.basis_masks(), other.basis_masks()) else {
            return false;
        };
        let mut mapped: Vec<u64> = theirs
            .iter()
            .map(|&b| {
                let mut m = 0u64;
                for (j, &i) in perm.iter().enumerate() {
                    if (b >> j) & 1 == 1 {
                        m |= 1 << i;
                    }
                }
                m
            })
            .collect();
        mapped.sort_unstable();
        mine == mapped.as_slice()
    }

    /// Relabels elements through `map` (old → new); unmapped labels persist.
    pub fn relabel(&self, map: &BTreeMap<String, String>) -> Result<Matroid> {
        let ground: Vec<String> = self
            .ground
            .iter()
            .map(|l| map.get(l).cloned().unwrap_or_else(|| l.clone()))
            .collect();
        let masks = self.basis_masks()?.to_vec();
        Matroid::from_basis_masks(&self.name, ground, masks)
    }

    /// Expresses this matroid as a GF(2) representation matrix with columns in
    /// ground order, via fundamental circuits with respect to the first basis.
    /// Errors with `NotBinary` if the resulting matrix does not reproduce the
    /// basis set.
    pub fn binary_rep(&self) -> Result<Gf2Matrix> {
        match &self.backing {
            Backing::Binary(m) => Ok(m.clone()),
            Backing::Graph(g) => Ok(g.reduced_incidence()),
            _ => {
                let rep = rep::standard_rep(self)?;
                let check = Matroid::from_binary("check", self.ground.clone(), rep.clone())?;
                if !check.bases_equal(self) {
                    return Err(MatroidError::NotBinary(self.name.clone()));
                }
                Ok(rep)
            }
        }
    }

    /// The backing graph, if this matroid was built from one.
    pub fn graph(&self) -> Option<&Graph> {
        match &self.backing {
            Backing::Graph(g) => Some(g),
            _ => None,
        }
    }
}

pub(crate) fn drop_bit(mask: u64, i: usize) -> u64 {
    let low = mask & ((1u64 << i) - 1);
    let high = mask >> (i + 1);
    low | (high << i)
}

fn enumerate_by_oracle(n: usize, rank: usize, pred: &IndependencePredicate) -> Vec<u64> {
    fn rec(n: usize, rank: usize, pred: &IndependencePredicate, next: usize, cur: u64, out: &mut Vec<u64>) {
        let have = cur.count_ones() as usize;
        if have == rank {
            out.push(cur);
            return;
        }
        for j in next..n {
            if n - j < rank - have {
                break;
            }
            let ext = cur | (1 << j);
            if pred(ext) {
                rec(n, rank, pred, j + 1, ext, out);
            }
        }
    }
    let mut out = Vec::new();
    rec(n, rank, pred, 0, 0, &mut out);
    out
}

/// Exhaustive basis-exchange check: for every ordered pair of distinct bases
/// and every b ∈ B1∖B2 there must be b' ∈ B2∖B1 with B1 − b + b' a basis.
fn check_exchange_axiom(masks: &[u64]) -> Result<()> {
    use std::collections::BTreeSet;
    let set: BTreeSet<u64> = masks.iter().copied().collect();
    for &b1 in masks {
        for &b2 in masks {
            if b1 == b2 {
                continue;
            }
            let mut out = b1 & !b2;
            while out != 0 {
                let b = out & out.wrapping_neg();
                out ^= b;
                let mut cand = b2 & !b1;
                let mut ok = false;
                while cand != 0 {
                    let bp = cand & cand.wrapping_neg();
                    cand ^= bp;
                    if set.contains(&((b1 & !b) | bp)) {
                        ok = true;
                        break;
                    }
                }
                if !ok {
                    return Err(MatroidError::InvalidBases(
                        "basis-exchange axiom fails".into(),
                    ));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn k3() -> Matroid {
        fixtures::k_graph(3).to_matroid().unwrap()
    }

    #[test]
    fn k3_has_three_bases() {
        let m = k3();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.basis_count().unwrap(), 3);
    }

    #[test]
    fn r10_has_162_bases() {
        let m = fixtures::r10();
        assert_eq!(m.rank(), 5);
        assert_eq!(m.basis_count().unwrap(), 162);
        // no loops: every single element has rank 1
        for l in m.ground().to_vec() {
            assert_eq!(m.rank_of(&[l]).unwrap(), 1);
        }
    }

    #[test]
    fn f7_has_28_bases() {
        // oracle: brute force over all 35 3-subsets of the Fano ground set,
        // counting GF(2)-independent column triples
        let m = fixtures::f7();
        let rep = m.binary_rep().unwrap();
        let mut by_rank = 0;
        for a in 0..7u64 {
            for b in a + 1..7 {
                for c in b + 1..7 {
                    let mask = (1 << a) | (1 << b) | (1 << c);
                    if rep.cols_independent(mask) {
                        by_rank += 1;
                    }
                }
            }
        }
        assert_eq!(by_rank, 28);
        assert_eq!(m.basis_count().unwrap(), 28);
    }

    #[test]
    fn rank_of_examples() {
        let m = k3();
        assert_eq!(m.rank_of::<&str>(&[]).unwrap(), 0);
        assert_eq!(m.rank_of(&m.ground().to_vec()).unwrap(), 2);
        assert!(matches!(
            m.rank_of(&["nope"]),
            Err(MatroidError::UnknownElement(_))
        ));
    }

    #[test]
    fn dual_is_involution() {
        let m = fixtures::r10();
        let dd = m.dual().unwrap().dual().unwrap();
        assert!(m.bases_equal(&dd));

        let k = k3();
        let d = k.dual().unwrap();
        assert_eq!(d.rank(), 1);
        assert_eq!(d.basis_count().unwrap(), 3);
    }

    #[test]
    fn binary_dual_is_matrix_level() {
        let m = fixtures::r10();
        let d = m.dual().unwrap();
        assert!(matches!(d.backing(), Backing::Binary(_)));
        assert!(d.dual().unwrap().bases_equal(&m));
    }

    #[test]
    fn delete_contract_k3() {
        let m = k3();
        let e = m.ground()[2].clone();
        let del = m.delete(&e).unwrap();
        assert_eq!(del.basis_count().unwrap(), 1);
        let con = m.contract(&e).unwrap();
        assert_eq!(con.rank(), 1);
        assert_eq!(con.basis_count().unwrap(), 2);
    }

    #[test]
    fn delete_contract_commute_on_r10() {
        let m = fixtures::r10();
        let (a, b) = (m.ground()[2].clone(), m.ground()[7].clone());
        let x = m.delete(&a).unwrap().contract(&b).unwrap();
        let y = m.contract(&b).unwrap().delete(&a).unwrap();
        assert!(x.bases_equal(&y));
    }

    #[test]
    fn coloop_deletion_errors() {
        // single edge: a coloop
        let m = Matroid::from_bases("coloop", vec!["a"], vec![vec!["a".into()]]).unwrap();
        assert!(matches!(
            m.delete("a"),
            Err(MatroidError::EmptyBasisSet { .. })
        ));
    }

    #[test]
    fn circuits_and_cocircuits_of_k3() {
        let m = k3();
        let g: Vec<String> = m.ground().to_vec();
        assert!(m.is_circuit(&g).unwrap());
        assert!(!m.is_circuit(&[&g[0], &g[1]]).unwrap());
        assert!(m.is_cocircuit(&[&g[0], &g[1]]).unwrap());
        assert!(!m.is_cocircuit(&g).unwrap());
    }

    #[test]
    fn r10_has_no_triangles() {
        let m = fixtures::r10();
        for a in 0..10 {
            for b in a + 1..10 {
                for c in b + 1..10 {
                    let mask = (1u64 << a) | (1 << b) | (1 << c);
                    assert!(!m.is_circuit_mask(mask).unwrap());
                }
            }
        }
    }

    #[test]
    fn r10_is_three_connected() {
        let m = fixtures::r10();
        assert!(m.find_separation(1).unwrap().is_none());
        assert!(m.find_separation(2).unwrap().is_none());
    }

    #[test]
    fn exchange_axiom_rejects_non_matroid() {
        // {a,b} and {c,d}: exchange fails
        let r = Matroid::from_bases(
            "bad",
            vec!["a", "b", "c", "d"],
            vec![
                vec!["a".into(), "b".into()],
                vec!["c".into(), "d".into()],
            ],
        );
        assert!(matches!(r, Err(MatroidError::InvalidBases(_))));
    }

    #[test]
    fn oracle_backing_enumerates() {
        // uniform matroid U(2,4) via predicate
        let pred: IndependencePredicate = Arc::new(|m: u64| m.count_ones() <= 2);
        let m = Matroid::from_oracle("u24", vec!["a", "b", "c", "d"], 2, pred).unwrap();
        assert_eq!(m.basis_count().unwrap(), 6);
        // hereditary sampling: subsets of independent sets are independent
        for b in m.basis_masks().unwrap().to_vec() {
            let mut sub = b;
            loop {
                assert!(m.is_independent_mask(sub).unwrap());
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & b;
            }
        }
    }
}
