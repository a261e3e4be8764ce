//! Dense GF(2) matrices, column-major over `u64` bit rows.
//!
//! Used as the backing for binary matroid representations. A column is a bit
//! vector indexed by row; linear algebra is plain Gaussian elimination on
//! machine words, which is all that desk-scale verification needs.

/// A matrix over the two-element field with at most 64 rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    nrows: usize,
    /// cols[j] has bit i set iff entry (i, j) is 1.
    cols: Vec<u64>,
}

impl Gf2Matrix {
    pub fn new(nrows: usize, cols: Vec<u64>) -> Self {
        assert!(nrows <= 64, "GF(2) matrices are capped at 64 rows");
        for &c in &cols {
            assert!(
                nrows == 64 || c < (1u64 << nrows),
                "column has bits outside the row range"
            );
        }
        Gf2Matrix { nrows, cols }
    }

    /// Builds from row-major 0/1 entries.
    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut cols = vec![0u64; ncols];
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged row");
            for (j, &e) in row.iter().enumerate() {
                assert!(e <= 1, "entry not in GF(2)");
                if e == 1 {
                    cols[j] |= 1 << i;
                }
            }
        }
        Gf2Matrix::new(nrows, cols)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> u64 {
        self.cols[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> u8 {
        ((self.cols[j] >> i) & 1) as u8
    }

    pub fn row_mask(&self, i: usize) -> u64 {
        let mut m = 0u64;
        for (j, &c) in self.cols.iter().enumerate() {
            if (c >> i) & 1 == 1 {
                m |= 1 << j;
            }
        }
        m
    }

    /// Rank of the column set `selected` (bitmask over column indices).
    pub fn rank_of_cols(&self, selected: u64) -> usize {
        let mut pivots: Vec<u64> = Vec::new();
        for j in 0..self.ncols() {
            if (selected >> j) & 1 == 0 {
                continue;
            }
            if let Some(reduced) = reduce(self.cols[j], &pivots) {
                pivots.push(reduced);
            }
        }
        pivots.len()
    }

    pub fn rank(&self) -> usize {
        self.rank_of_cols(if self.ncols() >= 64 {
            u64::MAX
        } else {
            (1u64 << self.ncols()) - 1
        })
    }

    /// Whether the selected columns are linearly independent.
    pub fn cols_independent(&self, selected: u64) -> bool {
        self.rank_of_cols(selected) == (selected.count_ones() as usize)
    }

    /// All maximal independent column sets, as bitmasks, in ascending order.
    ///
    /// Walks the column indices with pruning: a partial selection is extended
    /// only while it stays independent and enough columns remain.
    pub fn enumerate_bases(&self) -> Vec<u64> {
        let r = self.rank();
        let n = self.ncols();
        let mut out = Vec::new();
        let mut pivots: Vec<u64> = Vec::new();
        let mut chosen: u64 = 0;
        self.enumerate_rec(0, r, n, &mut pivots, &mut chosen, &mut out);
        out
    }

    fn enumerate_rec(
        &self,
        next: usize,
        r: usize,
        n: usize,
        pivots: &mut Vec<u64>,
        chosen: &mut u64,
        out: &mut Vec<u64>,
    ) {
        if pivots.len() == r {
            out.push(*chosen);
            return;
        }
        let needed = r - pivots.len();
        for j in next..n {
            if n - j < needed {
                break;
            }
            if let Some(reduced) = reduce(self.cols[j], pivots) {
                pivots.push(reduced);
                *chosen |= 1 << j;
                self.enumerate_rec(j + 1, r, n, pivots, chosen, out);
                *chosen &= !(1 << j);
                pivots.pop();
            }
        }
    }

    /// Standard-form dual representation.
    ///
    /// Row-reduces to identify pivot columns P and coefficient columns Q, then
    /// emits the matrix with an identity on Q and the transposed coefficients
    /// on P, which represents the dual matroid on the same column order.
    pub fn dual_rep(&self) -> Gf2Matrix {
        let n = self.ncols();
        let (pivot_cols, rref) = self.rref();
        let r = pivot_cols.len();
        let non_pivots: Vec<usize> = (0..n).filter(|j| !pivot_cols.contains(j)).collect();
        let m = n - r;
        let mut cols = vec![0u64; n];
        // identity on the non-pivot columns
        for (k, &j) in non_pivots.iter().enumerate() {
            cols[j] |= 1 << k;
        }
        // transposed coefficients on the pivot columns: dual entry (k, pivot i)
        // is rref entry (i, non_pivot k)
        for (i, &pj) in pivot_cols.iter().enumerate() {
            for (k, &qj) in non_pivots.iter().enumerate() {
                if rref.entry(i, qj) == 1 {
                    cols[pj] |= 1 << k;
                }
            }
        }
        Gf2Matrix::new(m, cols)
    }

    /// Reduced row echelon form; returns (pivot column indices, matrix).
    pub fn rref(&self) -> (Vec<usize>, Gf2Matrix) {
        let mut rows: Vec<u64> = (0..self.nrows).map(|i| self.row_mask(i)).collect();
        let mut pivot_cols = Vec::new();
        let mut rank = 0usize;
        for j in 0..self.ncols() {
            let Some(p) = (rank..rows.len()).find(|&i| (rows[i] >> j) & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot_row = rows[rank];
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && (*row >> j) & 1 == 1 {
                    *row ^= pivot_row;
                }
            }
            pivot_cols.push(j);
            rank += 1;
        }
        rows.truncate(rank);
        let mut cols = vec![0u64; self.ncols()];
        for (i, &row) in rows.iter().enumerate() {
            for (j, col) in cols.iter_mut().enumerate() {
                if (row >> j) & 1 == 1 {
                    *col |= 1 << i;
                }
            }
        }
        (pivot_cols, Gf2Matrix::new(rank, cols))
    }
}

fn reduce(mut v: u64, pivots: &[u64]) -> Option<u64> {
    for &p in pivots {
        let low = p & p.wrapping_neg();
        if v & low != 0 {
            v ^= p;
        }
    }
    if v == 0 {
        None
    } else {
        Some(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_independence() {
        // I2 with an extra dependent column (1,1)
        let m = Gf2Matrix::from_rows(&[vec![1, 0, 1], vec![0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        assert!(m.cols_independent(0b011));
        assert!(m.cols_independent(0b101));
        assert!(!m.cols_independent(0b111));
    }

    #[test]
    fn triangle_bases() {
        // reduced incidence of K3: all 2-subsets are bases
        let m = Gf2Matrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1]]);
        assert_eq!(m.enumerate_bases(), vec![0b011, 0b101, 0b110]);
    }

    #[test]
    fn dual_rep_complements_bases() {
        let m = Gf2Matrix::from_rows(&[vec![1, 0, 1, 1], vec![0, 1, 1, 0]]);
        let d = m.dual_rep();
        assert_eq!(d.nrows(), 2);
        let full = 0b1111u64;
        let bases: Vec<u64> = m.enumerate_bases();
        let mut co: Vec<u64> = bases.iter().map(|b| full ^ b).collect();
        co.sort_unstable();
        assert_eq!(d.enumerate_bases(), co);
    }
}
