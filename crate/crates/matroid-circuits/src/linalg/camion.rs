//! Camion signing: turning a binary representation matrix into a totally
//! unimodular {0,±1} matrix when one exists.
//!
//! Signs live on the support entries, viewed as edges of the bipartite
//! row/column graph. In any TU matrix, a chordless cycle through m rows is a
//! pure cycle submatrix and must be singular, which pins the product of its
//! 2m entries to (−1)^m; equivalently the number of negative entries on the
//! cycle is m mod 2. The signing is unique up to row and column negations,
//! so fixing a spanning forest of the support graph to +1 leaves a GF(2)
//! linear system over the entries: one parity equation per shortest induced
//! cycle through each entry. The solved signing is then verified — within
//! the guard by the exhaustive TU check, beyond it by seeded minor sampling.
//! A support with no TU signing either makes the system inconsistent or
//! fails the final check; both report `NotRegular`.

use std::collections::VecDeque;

use crate::gf2::Gf2Matrix;
use crate::linalg::{is_tu_with_guard, IntMatrix, LinalgError, Result, SignedMatrix, TU_GUARD};

/// Signs a binary matrix; errors with `NotRegular` if no TU signing exists.
pub fn camion_sign(b: &Gf2Matrix) -> Result<SignedMatrix> {
    let (r, n) = (b.nrows(), b.ncols());
    let entries: Vec<(usize, usize)> = (0..r)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| b.entry(i, j) == 1)
        .collect();
    // bipartite support graph: nodes 0..r rows, r..r+n columns
    let total = r + n;
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); total]; // (node, entry id)
    for (k, &(i, j)) in entries.iter().enumerate() {
        adj[i].push((r + j, k));
        adj[r + j].push((i, k));
    }

    // spanning forest by BFS; forest entries are fixed to +1
    let mut visited = vec![false; total];
    let mut forest = vec![false; entries.len()];
    for start in 0..total {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        let mut q = VecDeque::from([start]);
        while let Some(v) = q.pop_front() {
            for &(w, k) in &adj[v] {
                if !visited[w] {
                    visited[w] = true;
                    forest[k] = true;
                    q.push_back(w);
                }
            }
        }
    }

    // parity system over GF(2): unknown x_k = 1 iff entry k is negative.
    // Rows are (coefficient bitmask over entries, rhs).
    let mut system: Vec<(Vec<u64>, u8)> = Vec::new();
    let words = entries.len().div_ceil(64);
    let mut push_eq = |mask: Vec<u64>, rhs: u8, system: &mut Vec<(Vec<u64>, u8)>| {
        system.push((mask, rhs));
    };
    for (k, &f) in forest.iter().enumerate() {
        if f {
            let mut mask = vec![0u64; words];
            mask[k / 64] |= 1 << (k % 64);
            push_eq(mask, 0, &mut system);
        }
    }
    // one equation per entry: its shortest induced cycle
    for (k, &(i, j)) in entries.iter().enumerate() {
        if let Some(path) = shortest_path(&adj, i, r + j, k, total) {
            let mut mask = vec![0u64; words];
            mask[k / 64] |= 1 << (k % 64);
            let mut row_count = 1usize; // row i of the entry itself
            for &(node, ek) in &path {
                mask[ek / 64] |= 1 << (ek % 64);
                if node < r && node != i {
                    row_count += 1;
                }
            }
            push_eq(mask, (row_count % 2) as u8, &mut system);
        }
    }

    let negatives = match solve_gf2(system, entries.len()) {
        Some(sol) => sol,
        None => {
            return Err(LinalgError::NotRegular(
                "induced-cycle parity system is inconsistent".into(),
            ))
        }
    };

    let mut signs = IntMatrix::zeros(r, n);
    for (k, &(i, j)) in entries.iter().enumerate() {
        signs.set(i, j, if negatives[k] { -1 } else { 1 });
    }

    let ok = if r.min(n) <= TU_GUARD {
        is_tu_with_guard(&signs, TU_GUARD)?
    } else {
        sampled_tu(&signs)
    };
    if !ok {
        return Err(LinalgError::NotRegular(format!(
            "forced signing of a {r}x{n} support is not totally unimodular"
        )));
    }
    SignedMatrix::new(signs)
}

/// Shortest path between two nodes avoiding one entry-edge; the returned
/// path plus that edge is an induced cycle of the support graph. Nodes come
/// back in order from `from` exclusive to `to` inclusive, with the entry ids
/// walked.
fn shortest_path(
    adj: &[Vec<(usize, usize)>],
    from: usize,
    to: usize,
    skip_entry: usize,
    total: usize,
) -> Option<Vec<(usize, usize)>> {
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; total];
    let mut seen = vec![false; total];
    seen[from] = true;
    let mut q = VecDeque::from([from]);
    while let Some(v) = q.pop_front() {
        if v == to {
            break;
        }
        for &(w, k) in &adj[v] {
            if k != skip_entry && !seen[w] {
                seen[w] = true;
                prev[w] = Some((v, k));
                q.push_back(w);
            }
        }
    }
    if !seen[to] {
        return None;
    }
    let mut path = Vec::new();
    let mut cur = to;
    while cur != from {
        let (p, k) = prev[cur].expect("walked from the source");
        path.push((cur, k));
        cur = p;
    }
    path.reverse();
    Some(path)
}

/// Gaussian elimination over GF(2); free variables default to 0 (positive).
fn solve_gf2(mut system: Vec<(Vec<u64>, u8)>, vars: usize) -> Option<Vec<bool>> {
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (equation index, var)
    let mut used = 0usize;
    for var in 0..vars {
        let (w, b) = (var / 64, var % 64);
        let Some(p) = (used..system.len()).find(|&e| (system[e].0[w] >> b) & 1 == 1) else {
            continue;
        };
        system.swap(used, p);
        let (pivot_mask, pivot_rhs) = system[used].clone();
        for (e, (mask, rhs)) in system.iter_mut().enumerate() {
            if e != used && (mask[w] >> b) & 1 == 1 {
                for (mw, pw) in mask.iter_mut().zip(&pivot_mask) {
                    *mw ^= pw;
                }
                *rhs ^= pivot_rhs;
            }
        }
        pivots.push((used, var));
        used += 1;
    }
    // inconsistent: zero row with rhs 1
    for (mask, rhs) in &system[used..] {
        if *rhs == 1 && mask.iter().all(|&w| w == 0) {
            return None;
        }
    }
    let mut sol = vec![false; vars];
    for &(e, var) in &pivots {
        // after full elimination each pivot equation has exactly its pivot
        // among the leading vars; free vars stay 0, so rhs decides
        let (mask, rhs) = &system[e];
        let mut value = *rhs;
        for other in var + 1..vars {
            if (mask[other / 64] >> (other % 64)) & 1 == 1 && sol[other] {
                value ^= 1;
            }
        }
        sol[var] = value == 1;
    }
    Some(sol)
}

/// Seeded random minor sampling for matrices beyond the exhaustive guard.
fn sampled_tu(a: &IntMatrix) -> bool {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x7355_70c4);
    let (r, n) = (a.nrows(), a.ncols());
    let kmax = r.min(n).min(TU_GUARD);
    let rows: Vec<usize> = (0..r).collect();
    let cols: Vec<usize> = (0..n).collect();
    for _ in 0..2000 {
        let k = 2 + rand::Rng::random_range(&mut rng, 0..kmax - 1);
        let mut rs = rows.clone();
        let mut cs = cols.clone();
        rs.partial_shuffle(&mut rng, k);
        cs.partial_shuffle(&mut rng, k);
        let mut sub: Vec<Vec<i128>> = rs[..k]
            .iter()
            .map(|&i| cs[..k].iter().map(|&j| a.at(i, j) as i128).collect())
            .collect();
        if super::det_i128(&mut sub).abs() > 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::is_tu;

    #[test]
    fn already_tu_matrix_is_unchanged() {
        let b = Gf2Matrix::from_rows(&[vec![1, 0, 1], vec![0, 1, 1]]);
        let s = camion_sign(&b).unwrap();
        for i in 0..2 {
            for j in 0..3 {
                assert_eq!(s.at(i, j), b.entry(i, j) as i64);
            }
        }
        assert!(is_tu(&s).unwrap());
    }

    #[test]
    fn odd_cycle_incidence_gets_a_sign_flip() {
        // as a 0/1 matrix this has determinant 2; the forced signing fixes it
        let b = Gf2Matrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        let s = camion_sign(&b).unwrap();
        assert!(s.same_support(&b));
        assert!(is_tu(&s).unwrap());
        let negatives = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .filter(|&(i, j)| s.at(i, j) < 0)
            .count();
        assert!(negatives >= 1);
    }

    #[test]
    fn k4_incidence_signs_to_tu() {
        let g = fixtures::k_graph(4);
        let s = camion_sign(&g.reduced_incidence()).unwrap();
        assert!(is_tu(&s).unwrap());
    }

    #[test]
    fn k7_incidence_signs_to_tu() {
        let g = fixtures::k_graph(7);
        let s = camion_sign(&g.reduced_incidence()).unwrap();
        assert!(is_tu(&s).unwrap());
    }

    #[test]
    fn r10_signs_to_tu() {
        let m = fixtures::r10();
        let s = camion_sign(&m.binary_rep().unwrap()).unwrap();
        assert!(is_tu(&s).unwrap());
    }

    #[test]
    fn r12_signs_to_tu() {
        let m = fixtures::r12();
        let s = camion_sign(&m.binary_rep().unwrap()).unwrap();
        assert!(is_tu(&s).unwrap());
    }

    #[test]
    fn fano_is_rejected() {
        let m = fixtures::f7();
        assert!(matches!(
            camion_sign(&m.binary_rep().unwrap()),
            Err(LinalgError::NotRegular(_))
        ));
    }
}
