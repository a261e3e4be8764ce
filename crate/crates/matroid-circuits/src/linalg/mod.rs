//! Exact integer and rational linear algebra over small dense matrices:
//! total-unimodularity checking, fraction-free determinants, weighted Gram
//! matrices, and the generalized star-mesh transformation on {0,±1} matrices.

pub mod camion;

pub use camion::camion_sign;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::Rat;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix of size {r}x{n} exceeds the exhaustive TU guard (min side {limit})")]
    MatrixTooLarge { r: usize, n: usize, limit: usize },
    #[error("no totally unimodular signing exists: {0}")]
    NotRegular(String),
    #[error("row {0} is all zero")]
    ZeroRow(usize),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("entry {0} out of range for a signed {{0,±1}} matrix")]
    EntryOutOfRange(i64),
}

pub type Result<T> = std::result::Result<T, LinalgError>;

/// Dense row-major integer matrix. The star-mesh transformation can push
/// entries of general {0,±1} inputs out to ±2, so this type carries plain
/// `i64` entries; [`SignedMatrix`] adds the {0,±1} guarantee.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(nrows: usize, ncols: usize, data: Vec<i64>) -> Self {
        assert_eq!(data.len(), nrows * ncols);
        IntMatrix {
            nrows,
            ncols,
            data,
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged row");
            data.extend_from_slice(r);
        }
        IntMatrix {
            nrows,
            ncols,
            data,
        }
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        IntMatrix {
            nrows,
            ncols,
            data: vec![0; nrows * ncols],
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn at(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.ncols {
            let v = self.at(i, j);
            self.set(i, j, -v);
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.nrows {
            let v = self.at(i, j);
            self.set(i, j, -v);
        }
    }
}

/// A {0,±1} matrix, optionally with column labels tied to a matroid ground
/// set. Construction validates the entry range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedMatrix {
    mat: IntMatrix,
    pub col_labels: Option<Vec<String>>,
}

impl SignedMatrix {
    pub fn new(mat: IntMatrix) -> Result<Self> {
        for &v in &mat.data {
            if !(-1..=1).contains(&v) {
                return Err(LinalgError::EntryOutOfRange(v));
            }
        }
        Ok(SignedMatrix {
            mat,
            col_labels: None,
        })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        SignedMatrix::new(IntMatrix::from_rows(rows))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.mat.ncols());
        self.col_labels = Some(labels);
        self
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.mat
    }

    /// Support comparison against a GF(2) matrix of the same shape.
    pub fn same_support(&self, b: &crate::gf2::Gf2Matrix) -> bool {
        self.nrows() == b.nrows()
            && self.ncols() == b.ncols()
            && (0..self.nrows()).all(|i| {
                (0..self.ncols()).all(|j| (self.at(i, j) != 0) == (b.entry(i, j) == 1))
            })
    }
}

impl std::ops::Deref for SignedMatrix {
    type Target = IntMatrix;
    fn deref(&self) -> &IntMatrix {
        &self.mat
    }
}

/// Exact determinant of a square rational matrix.
///
/// Rows are scaled to integers first, then a Bareiss fraction-free
/// elimination runs over BigInt; the row scales divide back out at the end.
pub fn det_exact(m: &[Vec<Rat>]) -> Result<Rat> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(LinalgError::NotSquare(n, row.len()));
        }
    }
    if n == 0 {
        return Ok(Rat::one());
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for row in m {
        let mut l = BigInt::one();
        for v in row {
            l = l.lcm(v.denom());
        }
        a.push(row.iter().map(|v| v.numer() * (&l / v.denom())).collect());
        scale *= l;
    }
    let det = det_bareiss(a);
    Ok(Rat::new(det, scale))
}

/// Bareiss fraction-free elimination over BigInt. Consumes the matrix.
pub fn det_bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

pub(crate) fn det_i128(rows: &mut Vec<Vec<i128>>) -> i128 {
    // plain fraction-free Bareiss on machine integers; fine for the tiny
    // submatrices of the TU check
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if rows[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| rows[i][k] != 0) else {
                return 0;
            };
            rows.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) / prev;
            }
            rows[i][k] = 0;
        }
        prev = rows[k][k];
    }
    sign * rows[n - 1][n - 1]
}

/// Default guard for the exhaustive subdeterminant enumeration.
pub const TU_GUARD: usize = 8;

/// Exhaustive total-unimodularity test: every square subdeterminant must lie
/// in {−1, 0, 1}. Guarded by `min(r, n) ≤ 8`.
pub fn is_tu(a: &IntMatrix) -> Result<bool> {
    is_tu_with_guard(a, TU_GUARD)
}

pub fn is_tu_with_guard(a: &IntMatrix, guard: usize) -> Result<bool> {
    let (r, n) = (a.nrows(), a.ncols());
    if r.min(n) > guard {
        return Err(LinalgError::MatrixTooLarge {
            r,
            n,
            limit: guard,
        });
    }
    // 1x1 first: cheap rejection of out-of-range entries
    for i in 0..r {
        for j in 0..n {
            if a.at(i, j).abs() > 1 {
                return Ok(false);
            }
        }
    }
    for k in 2..=r.min(n) {
        let row_sets = subsets_of_size(r, k);
        let col_sets = subsets_of_size(n, k);
        for rs in &row_sets {
            for cs in &col_sets {
                let mut sub: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| a.at(i, j) as i128).collect())
                    .collect();
                if det_i128(&mut sub).abs() > 1 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// The weighted Gram matrix `L = A · diag(z) · Aᵀ` with its provenance.
#[derive(Clone, Debug)]
pub struct WeightedGram {
    pub l: Vec<Vec<Rat>>,
    pub a: IntMatrix,
    pub z: Vec<Rat>,
}

pub fn weighted_gram(a: &IntMatrix, z: &[Rat]) -> WeightedGram {
    assert_eq!(z.len(), a.ncols(), "one weight per column");
    let r = a.nrows();
    let mut l = vec![vec![Rat::zero(); r]; r];
    for i in 0..r {
        for j in i..r {
            let mut acc = Rat::zero();
            for (k, zk) in z.iter().enumerate() {
                let c = a.at(i, k) * a.at(j, k);
                if c != 0 {
                    acc += zk * Rat::from_integer(BigInt::from(c));
                }
            }
            l[i][j] = acc.clone();
            l[j][i] = acc;
        }
    }
    WeightedGram {
        l,
        a: a.clone(),
        z: z.to_vec(),
    }
}

impl WeightedGram {
    pub fn det(&self) -> Rat {
        det_exact(&self.l).expect("gram matrices are square")
    }
}

/// Column identity of a star-mesh output: either an untouched original
/// column or a fused pair from the eliminated row's support.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarMeshCol {
    Orig(usize),
    Pair(usize, usize),
}

#[derive(Clone, Debug)]
pub struct StarMesh {
    pub matrix: IntMatrix,
    pub cols: Vec<StarMeshCol>,
    /// Support of the eliminated row (the y-sum index set N1).
    pub support: Vec<usize>,
}

/// Star-mesh transformation of `a` with respect to `row`.
///
/// With N1 the support of the row and N0 the rest, the output has one column
/// per N0 index (copied, minus the eliminated row) and one per N1 pair
/// `(j,k), j<k`, with entries `A[i,j] − A[row,j]·A[row,k]·A[i,k]`. Column
/// order: N0 in original order, then pairs lexicographically.
pub fn star_mesh(a: &IntMatrix, row: usize) -> Result<StarMesh> {
    let (r, n) = (a.nrows(), a.ncols());
    assert!(row < r);
    let support: Vec<usize> = (0..n).filter(|&j| a.at(row, j) != 0).collect();
    if support.is_empty() {
        return Err(LinalgError::ZeroRow(row));
    }
    let n0: Vec<usize> = (0..n).filter(|&j| a.at(row, j) == 0).collect();
    let mut cols = Vec::new();
    for &j in &n0 {
        cols.push(StarMeshCol::Orig(j));
    }
    for x in 0..support.len() {
        for y in x + 1..support.len() {
            cols.push(StarMeshCol::Pair(support[x], support[y]));
        }
    }
    let keep_rows: Vec<usize> = (0..r).filter(|&i| i != row).collect();
    let mut out = IntMatrix::zeros(keep_rows.len(), cols.len());
    for (ii, &i) in keep_rows.iter().enumerate() {
        for (jj, c) in cols.iter().enumerate() {
            let v = match *c {
                StarMeshCol::Orig(j) => a.at(i, j),
                StarMeshCol::Pair(j, k) => a.at(i, j) - a.at(row, j) * a.at(row, k) * a.at(i, k),
            };
            out.set(ii, jj, v);
        }
    }
    Ok(StarMesh {
        matrix: out,
        cols,
        support,
    })
}

/// Weights for the star-mesh output: `y = Σ_{i∈N1} z_i`, original columns
/// keep their weight, pair columns get `z_α z_β / y`.
pub fn star_mesh_weights(sm: &StarMesh, z: &[Rat]) -> (Rat, Vec<Rat>) {
    let y: Rat = sm
        .support
        .iter()
        .fold(Rat::zero(), |acc, &i| acc + z[i].clone());
    let zp: Vec<Rat> = sm
        .cols
        .iter()
        .map(|c| match *c {
            StarMeshCol::Orig(j) => z[j].clone(),
            StarMeshCol::Pair(a, b) => &z[a] * &z[b] / y.clone(),
        })
        .collect();
    (y, zp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    #[test]
    fn det_examples() {
        let id3 = vec![
            vec![rat(1), rat(0), rat(0)],
            vec![rat(0), rat(1), rat(0)],
            vec![rat(0), rat(0), rat(1)],
        ];
        assert_eq!(det_exact(&id3).unwrap(), rat(1));
        let swap = vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]];
        assert_eq!(det_exact(&swap).unwrap(), rat(-1));
        let frac = vec![
            vec![ratio(1, 2), ratio(1, 3)],
            vec![ratio(1, 5), ratio(1, 7)],
        ];
        assert_eq!(det_exact(&frac).unwrap(), ratio(1, 210));
    }

    #[test]
    fn det_on_integer_matrices_is_integral() {
        let m = vec![
            vec![rat(2), rat(3), rat(5)],
            vec![rat(7), rat(11), rat(13)],
            vec![rat(17), rat(19), rat(23)],
        ];
        let d = det_exact(&m).unwrap();
        assert!(d.is_integer());
        assert_eq!(d, rat(-78));
    }

    #[test]
    fn tu_examples() {
        let id = SignedMatrix::from_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert!(is_tu(&id).unwrap());
        let bad = SignedMatrix::from_rows(&[vec![1, 1], vec![-1, 1]]).unwrap();
        assert!(!is_tu(&bad).unwrap());
        let wide = SignedMatrix::from_rows(&[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        assert!(is_tu(&wide).unwrap());
    }

    #[test]
    fn tu_guard_fires() {
        let big = IntMatrix::zeros(9, 9);
        assert!(matches!(
            is_tu(&big),
            Err(LinalgError::MatrixTooLarge { .. })
        ));
    }

    #[test]
    fn gram_examples() {
        // A = I2: the gram is diag(z)
        let a = IntMatrix::from_rows(&[vec![1, 0], vec![0, 1]]);
        let g = weighted_gram(&a, &[rat(3), rat(5)]);
        assert_eq!(g.l[0][0], rat(3));
        assert_eq!(g.l[1][1], rat(5));
        assert_eq!(g.l[0][1], rat(0));
        // single all-ones row: [[n]]
        let a = IntMatrix::from_rows(&[vec![1, 1, 1, 1]]);
        let g = weighted_gram(&a, &[rat(1), rat(1), rat(1), rat(1)]);
        assert_eq!(g.det(), rat(4));
    }

    #[test]
    fn star_mesh_identity_on_i2() {
        // eliminating the second row of I2 leaves a single original column
        let a = IntMatrix::from_rows(&[vec![1, 0], vec![0, 1]]);
        let sm = star_mesh(&a, 1).unwrap();
        assert_eq!(sm.cols, vec![StarMeshCol::Orig(0)]);
        assert_eq!(sm.matrix.at(0, 0), 1);
        let z = [rat(7), rat(11)];
        let lhs = weighted_gram(&a, &z).det();
        let (y, zp) = star_mesh_weights(&sm, &z);
        let rhs = y * weighted_gram(&sm.matrix, &zp).det();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn star_mesh_rejects_zero_row() {
        let a = IntMatrix::from_rows(&[vec![1, 1], vec![0, 0]]);
        assert!(matches!(star_mesh(&a, 1), Err(LinalgError::ZeroRow(1))));
    }

    #[test]
    fn negating_rows_and_columns_preserves_tu() {
        let base = SignedMatrix::from_rows(&[
            vec![1, 0, 1, 0, 1],
            vec![1, 1, 0, 0, 1],
            vec![0, 1, 1, 1, 0],
        ])
        .unwrap();
        let before = is_tu(&base).unwrap();
        for i in 0..3 {
            let mut m = base.matrix().clone();
            m.negate_row(i);
            assert_eq!(is_tu(&m).unwrap(), before);
        }
        for j in 0..5 {
            let mut m = base.matrix().clone();
            m.negate_col(j);
            assert_eq!(is_tu(&m).unwrap(), before);
        }
    }
}
