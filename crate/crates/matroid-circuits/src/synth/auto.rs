//! Exhaustive desk-scale decomposition of small matroids into sum trees.
//!
//! The search order: 1-separations, then 2-separations, then leaf matching
//! (graphic witness, cographic witness, R10, F7), then Δ-sum splits along
//! exact 3-separations. Every split is verified by recomposition before it is
//! accepted, and the final tree is verified against the input basis set, so a
//! returned tree is correct by construction. This is a stand-in for
//! polynomial-time decomposition, not a reproduction of it.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use crate::gf2::Gf2Matrix;
use crate::matroid::tree::Leaf;
use crate::matroid::{sums, DecompositionTree, Graph, Matroid};
use crate::synth::{Result, SynthError};

/// Largest ground set the exhaustive decomposer accepts.
pub const AUTO_MAX_N: usize = 12;

pub fn auto_decompose(m: &Matroid) -> Result<DecompositionTree> {
    let mut counter = 0usize;
    let tree = auto_rec(m, &mut counter)?;
    let back = tree.recompose()?;
    if !back.bases_equal(m) {
        return Err(SynthError::NotDecomposable(
            "recomposition does not match the input".into(),
        ));
    }
    Ok(tree)
}

fn auto_rec(m: &Matroid, counter: &mut usize) -> Result<DecompositionTree> {
    if m.n() > AUTO_MAX_N {
        return Err(SynthError::GroundTooLarge {
            n: m.n(),
            limit: AUTO_MAX_N,
        });
    }

    // 1-separations: direct sums split without glue
    if let Some(x) = m.find_separation_mask(1)? {
        let m1 = restrict(m, x)?;
        let m2 = restrict(m, m.full_mask() ^ x)?;
        let t1 = auto_rec(&m1, counter)?;
        let t2 = auto_rec(&m2, counter)?;
        return Ok(DecompositionTree::OneSum(Box::new(t1), Box::new(t2)));
    }

    // 2-separations, lexicographically smallest X first
    for x in exact_separation_masks(m, 2, 2)? {
        let Some((m1, m2, glue)) = try_two_split(m, x, counter) else {
            continue;
        };
        let (Ok(t1), Ok(t2)) = (auto_rec(&m1, counter), auto_rec(&m2, counter)) else {
            continue;
        };
        return Ok(DecompositionTree::TwoSum(Box::new(t1), Box::new(t2), glue));
    }

    // leaf matching
    if let Some(g) = find_graph_witness(m) {
        return Ok(DecompositionTree::Leaf(Leaf::Graphic(g)));
    }
    if let Ok(dual) = m.dual() {
        if let Some(g) = find_graph_witness(&dual) {
            return Ok(DecompositionTree::Leaf(Leaf::Cographic(g)));
        }
    }
    if m.n() == 10 {
        if let Some(perm) = find_isomorphism(m, &crate::fixtures::r10()) {
            let labels = perm.iter().map(|&i| m.ground()[i].clone()).collect();
            return Ok(DecompositionTree::Leaf(Leaf::R10 { labels }));
        }
    }
    if m.n() == 7 {
        if let Some(perm) = find_isomorphism(m, &crate::fixtures::f7()) {
            let labels = perm.iter().map(|&i| m.ground()[i].clone()).collect();
            return Ok(DecompositionTree::Leaf(Leaf::F7 { labels }));
        }
    }

    // Δ-sums along exact 3-separations; both sides must shrink
    for x in exact_separation_masks(m, 3, 4)? {
        let Some((m1, m2, d)) = try_delta_split(m, x, counter) else {
            continue;
        };
        let (Ok(t1), Ok(t2)) = (auto_rec(&m1, counter), auto_rec(&m2, counter)) else {
            continue;
        };
        return Ok(DecompositionTree::DeltaSum(
            Box::new(t1),
            Box::new(t2),
            d,
        ));
    }

    Err(SynthError::NotDecomposable(format!(
        "{} ({} elements) matches no leaf and admits no verified split",
        m.name(),
        m.n()
    )))
}

/// Restriction to a separation side: bases are the traces `B ∩ X`.
fn restrict(m: &Matroid, mask: u64) -> Result<Matroid> {
    let keep: Vec<usize> = (0..m.n()).filter(|&i| (mask >> i) & 1 == 1).collect();
    let ground: Vec<String> = keep.iter().map(|&i| m.ground()[i].clone()).collect();
    let mut traces = BTreeSet::new();
    for &b in m.basis_masks()? {
        let mut t = 0u64;
        for (new, &old) in keep.iter().enumerate() {
            if (b >> old) & 1 == 1 {
                t |= 1 << new;
            }
        }
        traces.insert(t);
    }
    Ok(Matroid::from_basis_masks(
        &format!("{}|X", m.name()),
        ground,
        traces.into_iter().collect(),
    )?)
}

/// All X masks with `r(X) + r(E∖X) − r = k−1` and both sides of size at
/// least `min_side`, ascending.
fn exact_separation_masks(m: &Matroid, k: usize, min_side: usize) -> Result<Vec<u64>> {
    let full = m.full_mask();
    let r = m.rank() as isize;
    let mut out = Vec::new();
    for x in 1u64..full {
        let y = full ^ x;
        if (x.count_ones() as usize) < min_side || (y.count_ones() as usize) < min_side {
            continue;
        }
        let rx = m.rank_of_mask(x)? as isize;
        let ry = m.rank_of_mask(y)? as isize;
        if rx + ry - r == (k as isize) - 1 {
            out.push(x);
        }
    }
    Ok(out)
}

/// Row-reduces the representation so the X-block is confined to the top
/// `r(X)` rows, then concentrates the Y-block's top part into the requested
/// number of final top rows. Returns (rows as column masks, r1) on success.
fn block_reduce(
    rep: &Gf2Matrix,
    xmask: u64,
    quotient_dim: usize,
) -> Option<(Vec<u64>, usize, Vec<u64>)> {
    let r = rep.nrows();
    let n = rep.ncols();
    let mut rows: Vec<u64> = (0..r).map(|i| rep.row_mask(i)).collect();
    let ymask = (if n >= 64 { u64::MAX } else { (1u64 << n) - 1 }) ^ xmask;

    // RREF restricted to the X columns
    let mut top = 0usize;
    for j in 0..n {
        if (xmask >> j) & 1 == 0 {
            continue;
        }
        let Some(p) = (top..r).find(|&i| (rows[i] >> j) & 1 == 1) else {
            continue;
        };
        rows.swap(top, p);
        let pivot = rows[top];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != top && (*row >> j) & 1 == 1 {
                *row ^= pivot;
            }
        }
        top += 1;
    }
    let r1 = top;
    if r1 < quotient_dim {
        return None;
    }

    // echelonize the bottom rows (pure Y) and reduce every top row by them
    let mut ech: Vec<u64> = rows[r1..].to_vec();
    echelonize(&mut ech);
    for row in rows.iter_mut().take(r1) {
        *row = reduce_by(*row, &ech);
    }

    // Gaussian elimination in the quotient: collect pivot rows whose Y-part
    // residues span the quotient space
    let mut pivots: Vec<usize> = Vec::new();
    for i in 0..r1 {
        let mut residue = rows[i] & ymask;
        for &p in &pivots {
            let pres = rows[p] & ymask;
            if residue & (pres & pres.wrapping_neg()) != 0 {
                rows[i] ^= rows[p];
                residue = rows[i] & ymask;
            }
        }
        if residue != 0 {
            pivots.push(i);
        }
    }
    if pivots.len() != quotient_dim {
        return None;
    }
    // move pivot rows to the bottom of the top block
    for (offset, target) in (0..quotient_dim).map(|q| (q, r1 - quotient_dim + q)) {
        let from = pivots[offset];
        if from != target {
            rows.swap(from, target);
            for p in pivots.iter_mut().skip(offset + 1) {
                if *p == target {
                    *p = from;
                }
            }
        }
    }
    Some((rows, r1, ech))
}

fn echelonize(rows: &mut Vec<u64>) {
    let mut out: Vec<u64> = Vec::new();
    for &r in rows.iter() {
        if let Some(x) = reduce_opt(r, &out) {
            out.push(x);
        }
    }
    *rows = out;
}

fn reduce_opt(mut v: u64, pivots: &[u64]) -> Option<u64> {
    for &p in pivots {
        if v & (p & p.wrapping_neg()) != 0 {
            v ^= p;
        }
    }
    (v != 0).then_some(v)
}

fn reduce_by(mut v: u64, pivots: &[u64]) -> u64 {
    for &p in pivots {
        if v & (p & p.wrapping_neg()) != 0 {
            v ^= p;
        }
    }
    v
}

fn cols_from_rows(rows: &[u64], col_ids: &[usize], extra: &[u64]) -> Gf2Matrix {
    // columns: selected original columns followed by explicit extra columns
    let nrows = rows.len();
    let mut cols: Vec<u64> = Vec::with_capacity(col_ids.len() + extra.len());
    for &j in col_ids {
        let mut c = 0u64;
        for (i, row) in rows.iter().enumerate() {
            if (row >> j) & 1 == 1 {
                c |= 1 << i;
            }
        }
        cols.push(c);
    }
    cols.extend_from_slice(extra);
    Gf2Matrix::new(nrows, cols)
}

/// Splits `m` as a verified 2-sum along the exact 2-separation X.
fn try_two_split(m: &Matroid, xmask: u64, counter: &mut usize) -> Option<(Matroid, Matroid, String)> {
    let rep = m.binary_rep().ok()?;
    let (rows, r1, _) = block_reduce(&rep, xmask, 1)?;
    let r = rep.nrows();
    let xcols: Vec<usize> = (0..m.n()).filter(|&j| (xmask >> j) & 1 == 1).collect();
    let ycols: Vec<usize> = (0..m.n()).filter(|&j| (xmask >> j) & 1 == 0).collect();

    *counter += 1;
    let glue = format!("~g{}", *counter);

    // M1: top block on X plus the glue unit column
    let top_rows = &rows[..r1];
    let m1_rep = cols_from_rows(top_rows, &xcols, &[1u64 << (r1 - 1)]);
    let mut g1: Vec<String> = xcols.iter().map(|&j| m.ground()[j].clone()).collect();
    g1.push(glue.clone());
    let m1 = Matroid::from_binary("auto2-left", g1, m1_rep).ok()?;

    // M2: the marked row and the bottom block on Y, glue column e_0
    let mut m2_rows: Vec<u64> = vec![rows[r1 - 1]];
    m2_rows.extend_from_slice(&rows[r1..]);
    let m2_rep = {
        let body = cols_from_rows(&m2_rows, &ycols, &[]);
        let mut cols = vec![1u64];
        for j in 0..body.ncols() {
            cols.push(body.col(j));
        }
        Gf2Matrix::new(r - r1 + 1, cols)
    };
    let mut g2: Vec<String> = vec![glue.clone()];
    g2.extend(ycols.iter().map(|&j| m.ground()[j].clone()));
    let m2 = Matroid::from_binary("auto2-right", g2, m2_rep).ok()?;

    let composed = sums::two_sum(&m1, &m2, &glue).ok()?;
    composed.bases_equal(m).then_some((m1, m2, glue))
}

/// Splits `m` as a verified Δ-sum along the exact 3-separation X.
fn try_delta_split(
    m: &Matroid,
    xmask: u64,
    counter: &mut usize,
) -> Option<(Matroid, Matroid, [String; 3])> {
    let rep = m.binary_rep().ok()?;
    let (rows, r1, _) = block_reduce(&rep, xmask, 2)?;
    let r = rep.nrows();
    let xcols: Vec<usize> = (0..m.n()).filter(|&j| (xmask >> j) & 1 == 1).collect();
    let ycols: Vec<usize> = (0..m.n()).filter(|&j| (xmask >> j) & 1 == 0).collect();

    *counter += 1;
    let d: [String; 3] = [
        format!("~d{}a", *counter),
        format!("~d{}b", *counter),
        format!("~d{}c", *counter),
    ];

    // M1: top block on X plus the triangle u, v, u+v on the last two rows
    let top_rows = &rows[..r1];
    let e1 = 1u64 << (r1 - 2);
    let e2 = 1u64 << (r1 - 1);
    let m1_rep = cols_from_rows(top_rows, &xcols, &[e1, e2, e1 | e2]);
    let mut g1: Vec<String> = xcols.iter().map(|&j| m.ground()[j].clone()).collect();
    g1.extend(d.iter().cloned());
    let m1 = Matroid::from_binary("autoΔ-left", g1, m1_rep).ok()?;

    // M2: the two marked rows and the bottom block on Y, triangle first
    let mut m2_rows: Vec<u64> = vec![rows[r1 - 2], rows[r1 - 1]];
    m2_rows.extend_from_slice(&rows[r1..]);
    let body = cols_from_rows(&m2_rows, &ycols, &[]);
    let mut cols = vec![1u64, 2u64, 3u64];
    for j in 0..body.ncols() {
        cols.push(body.col(j));
    }
    let m2_rep = Gf2Matrix::new(r - r1 + 2, cols);
    let mut g2: Vec<String> = d.to_vec();
    g2.extend(ycols.iter().map(|&j| m.ground()[j].clone()));
    let m2 = Matroid::from_binary("autoΔ-right", g2, m2_rep).ok()?;

    let composed = sums::delta_sum(&m1, &m2, &d).ok()?;
    composed.bases_equal(m).then_some((m1, m2, d))
}

/// Graphic witness search via cocircuit covers: a connected graph's vertex
/// stars are cocircuits, each edge lies in the stars of its two endpoints,
/// and a connected matroid of rank r needs exactly r+1 of them. The search
/// picks covers by backtracking and accepts only if the built graph's cycle
/// matroid reproduces the basis set.
pub fn find_graph_witness(m: &Matroid) -> Option<Graph> {
    let n = m.n();
    if n > AUTO_MAX_N || n == 0 {
        return None;
    }
    let cocircuits = all_cocircuits(m)?;
    let want = m.rank() + 1;
    let mut counts = vec![0u8; n];
    let mut chosen: Vec<usize> = Vec::new();
    let mut budget = 1_000_000u64;
    search_cover(
        m,
        &cocircuits,
        want,
        &mut counts,
        &mut chosen,
        &mut budget,
    )
}

fn all_cocircuits(m: &Matroid) -> Option<Vec<u64>> {
    let n = m.n();
    let full = m.full_mask();
    let r = m.rank();
    // meets[x]: X intersects every basis, i.e. the complement is not spanning
    let total = 1usize << n;
    let mut meets = vec![false; total];
    for x in 1..total {
        let xm = x as u64;
        meets[x] = m.rank_of_mask(full ^ xm).ok()? < r;
    }
    let mut out = Vec::new();
    for x in 1..total {
        if !meets[x] {
            continue;
        }
        let xm = x as u64;
        let minimal = (0..n)
            .filter(|&i| (xm >> i) & 1 == 1)
            .all(|i| !meets[(xm & !(1 << i)) as usize]);
        if minimal {
            out.push(xm);
        }
    }
    Some(out)
}

fn search_cover(
    m: &Matroid,
    cocircuits: &[u64],
    want: usize,
    counts: &mut Vec<u8>,
    chosen: &mut Vec<usize>,
    budget: &mut u64,
) -> Option<Graph> {
    if *budget == 0 {
        return None;
    }
    *budget -= 1;
    let n = m.n();
    let deficient = (0..n).find(|&i| counts[i] < 2);
    match deficient {
        None => {
            if chosen.len() != want {
                return None;
            }
            build_and_verify(m, cocircuits, chosen)
        }
        Some(e) => {
            if chosen.len() >= want {
                return None;
            }
            for (ci, &c) in cocircuits.iter().enumerate() {
                if (c >> e) & 1 == 0 {
                    continue;
                }
                // the two stars of an element come in index order
                if counts[e] == 1 {
                    let first = chosen
                        .iter()
                        .rev()
                        .find(|&&x| (cocircuits[x] >> e) & 1 == 1)
                        .copied();
                    if let Some(f) = first {
                        if ci < f {
                            continue;
                        }
                    }
                }
                if (0..n).any(|i| (c >> i) & 1 == 1 && counts[i] >= 2) {
                    continue;
                }
                for i in 0..n {
                    if (c >> i) & 1 == 1 {
                        counts[i] += 1;
                    }
                }
                chosen.push(ci);
                if let Some(g) = search_cover(m, cocircuits, want, counts, chosen, budget) {
                    return Some(g);
                }
                chosen.pop();
                for i in 0..n {
                    if (c >> i) & 1 == 1 {
                        counts[i] -= 1;
                    }
                }
            }
            None
        }
    }
}

fn build_and_verify(m: &Matroid, cocircuits: &[u64], chosen: &[usize]) -> Option<Graph> {
    let n = m.n();
    let mut triples: Vec<(String, String, String)> = Vec::new();
    for i in 0..n {
        let stars: Vec<usize> = chosen
            .iter()
            .enumerate()
            .filter(|(_, &c)| (cocircuits[c] >> i) & 1 == 1)
            .map(|(pos, _)| pos)
            .collect();
        if stars.len() != 2 {
            return None;
        }
        triples.push((
            m.ground()[i].clone(),
            format!("w{}", stars[0]),
            format!("w{}", stars[1]),
        ));
    }
    let g = Graph::from_edges(&triples.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect::<Vec<_>>()).ok()?;
    if !g.is_connected() || g.vertex_count() != chosen.len() {
        return None;
    }
    let gm = g.to_matroid().ok()?;
    gm.bases_equal(m).then_some(g)
}

/// Backtracking isomorphism search between equal-size matroids, pruned by
/// basis-membership counts of singletons and pairs. Returns, for each target
/// position, the matching index in `m`.
pub fn find_isomorphism(m: &Matroid, target: &Matroid) -> Option<Vec<usize>> {
    let n = m.n();
    if n != target.n() || m.rank() != target.rank() {
        return None;
    }
    let (bm, bt) = (m.basis_masks().ok()?, target.basis_masks().ok()?);
    if bm.len() != bt.len() {
        return None;
    }
    let singles = |bases: &[u64]| -> Vec<usize> {
        (0..n)
            .map(|i| bases.iter().filter(|&&b| (b >> i) & 1 == 1).count())
            .collect()
    };
    let pairs = |bases: &[u64]| -> Vec<Vec<usize>> {
        let mut p = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let c = bases
                    .iter()
                    .filter(|&&b| (b >> i) & 1 == 1 && (b >> j) & 1 == 1)
                    .count();
                p[i][j] = c;
                p[j][i] = c;
            }
        }
        p
    };
    let (sm, st) = (singles(bm), singles(bt));
    let (pm, pt) = (pairs(bm), pairs(bt));
    let mut assign: Vec<Option<usize>> = vec![None; n]; // target index → m index
    let mut used = vec![false; n];

    fn rec(
        pos: usize,
        n: usize,
        sm: &[usize],
        st: &[usize],
        pm: &[Vec<usize>],
        pt: &[Vec<usize>],
        assign: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        bm: &[u64],
        bt: &[u64],
    ) -> bool {
        if pos == n {
            // full verification: mapped target bases equal m's bases
            let mut mapped: Vec<u64> = bt
                .iter()
                .map(|&b| {
                    let mut x = 0u64;
                    for (t, a) in assign.iter().enumerate() {
                        if (b >> t) & 1 == 1 {
                            x |= 1 << a.unwrap();
                        }
                    }
                    x
                })
                .collect();
            mapped.sort_unstable();
            return mapped == bm;
        }
        for cand in 0..n {
            if used[cand] || sm[cand] != st[pos] {
                continue;
            }
            if (0..pos).any(|q| pm[cand][assign[q].unwrap()] != pt[pos][q]) {
                continue;
            }
            assign[pos] = Some(cand);
            used[cand] = true;
            if rec(pos + 1, n, sm, st, pm, pt, assign, used, bm, bt) {
                return true;
            }
            used[cand] = false;
            assign[pos] = None;
        }
        false
    }

    rec(0, n, &sm, &st, &pm, &pt, &mut assign, &mut used, bm, bt)
        .then(|| assign.into_iter().map(Option::unwrap).collect())
}

/// The frozen R12 Δ-sum split, computed once by `auto_decompose` on the
/// `(I6 A12)` matroid and verified against it by the test suite.
pub fn r12_split_tree() -> DecompositionTree {
    static CACHE: OnceLock<DecompositionTree> = OnceLock::new();
    CACHE
        .get_or_init(|| {
            auto_decompose(&crate::fixtures::r12()).expect("R12 decomposes as a Δ-sum")
        })
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn four_cycle_splits_as_two_sum() {
        let c4 = fixtures::c4_2sum_tree().recompose().unwrap();
        let as_bases =
            Matroid::from_basis_masks("c4", c4.ground().to_vec(), c4.basis_masks().unwrap().to_vec())
                .unwrap();
        let t = auto_decompose(&as_bases).unwrap();
        assert!(t.recompose().unwrap().bases_equal(&c4));
    }

    #[test]
    fn r10_is_recognized_as_a_leaf() {
        // run from a scrambled basis list so nothing about the matrix leaks in
        let r10 = fixtures::r10();
        let relabeled = {
            let map: std::collections::BTreeMap<String, String> = r10
                .ground()
                .iter()
                .enumerate()
                .map(|(i, l)| (l.clone(), format!("q{}", (i * 7) % 10)))
                .collect();
            r10.relabel(&map).unwrap()
        };
        let t = auto_decompose(&relabeled).unwrap();
        assert!(matches!(
            t,
            DecompositionTree::Leaf(Leaf::R10 { .. })
        ));
        assert!(t.recompose().unwrap().bases_equal(&relabeled));
    }

    #[test]
    fn f7_is_recognized_as_a_leaf() {
        let f7 = fixtures::f7();
        let as_bases = Matroid::from_basis_masks(
            "fano",
            f7.ground().to_vec(),
            f7.basis_masks().unwrap().to_vec(),
        )
        .unwrap();
        let t = auto_decompose(&as_bases).unwrap();
        assert!(matches!(t, DecompositionTree::Leaf(Leaf::F7 { .. })));
    }

    #[test]
    fn graphic_witness_for_k4() {
        let m = fixtures::k_graph(4).to_matroid().unwrap();
        let g = find_graph_witness(&m).expect("K4 is graphic");
        assert!(g.to_matroid().unwrap().bases_equal(&m));
    }

    #[test]
    fn cographic_dual_of_k33_is_not_graphic() {
        // M*(K3,3) must fail the graphic witness search but pass on its dual
        let k33 = Graph::from_edges(&[
            ("a1", "u1", "v1"),
            ("a2", "u1", "v2"),
            ("a3", "u1", "v3"),
            ("b1", "u2", "v1"),
            ("b2", "u2", "v2"),
            ("b3", "u2", "v3"),
            ("c1", "u3", "v1"),
            ("c2", "u3", "v2"),
            ("c3", "u3", "v3"),
        ])
        .unwrap();
        let m = k33.to_matroid().unwrap().dual().unwrap();
        assert!(find_graph_witness(&m).is_none());
        assert!(find_graph_witness(&m.dual().unwrap()).is_some());
    }

    #[test]
    fn r12_splits_and_recomposes() {
        let t = r12_split_tree();
        let m = t.recompose().unwrap();
        assert!(m.bases_equal(&fixtures::r12()));
        // the split is a Δ-sum at the top
        assert!(matches!(t, DecompositionTree::DeltaSum(..)));
    }
}
