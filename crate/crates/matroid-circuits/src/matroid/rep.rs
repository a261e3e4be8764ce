//! Binary representation matrices built from fundamental circuits.
//!
//! `rep_with_cocircuit_row` produces a GF(2) representation whose last row is
//! supported exactly on a prescribed cocircuit. The construction goes through
//! the dual: pick d ∈ D, extend D − d to a dual basis B*, build the dual's
//! standard representation (I C) from fundamental circuits with d's column
//! last, and transpose back.

use crate::gf2::Gf2Matrix;
use crate::matroid::{Matroid, MatroidError, Result};

/// Fundamental circuit of `e ∉ B` with respect to basis `B` (all as masks):
/// `{e} ∪ {b ∈ B : B − b + e is a basis}`.
fn fundamental_circuit(m: &Matroid, basis: u64, e: usize) -> Result<u64> {
    let bases = m.basis_masks()?;
    let mut circuit = 1u64 << e;
    let mut b = basis;
    while b != 0 {
        let bit = b & b.wrapping_neg();
        b ^= bit;
        let swapped = (basis & !bit) | (1 << e);
        if bases.binary_search(&swapped).is_ok() {
            circuit |= bit;
        }
    }
    Ok(circuit)
}

/// Standard-form representation (identity on the first basis, fundamental
/// circuit incidence elsewhere), columns in ground order. Only meaningful for
/// binary matroids; callers verify.
pub fn standard_rep(m: &Matroid) -> Result<Gf2Matrix> {
    let basis = *m
        .basis_masks()?
        .first()
        .ok_or_else(|| MatroidError::InvalidBases("no bases".into()))?;
    rep_from_basis(m, basis)
}

fn rep_from_basis(m: &Matroid, basis: u64) -> Result<Gf2Matrix> {
    let r = m.rank();
    let basis_elems: Vec<usize> = (0..m.n()).filter(|i| (basis >> i) & 1 == 1).collect();
    let row_of: std::collections::BTreeMap<usize, usize> = basis_elems
        .iter()
        .enumerate()
        .map(|(row, &elem)| (elem, row))
        .collect();
    let mut cols = vec![0u64; m.n()];
    for j in 0..m.n() {
        if let Some(&row) = row_of.get(&j) {
            cols[j] = 1 << row;
        } else {
            let circuit = fundamental_circuit(m, basis, j)?;
            for (&elem, &row) in &row_of {
                if (circuit >> elem) & 1 == 1 {
                    cols[j] |= 1 << row;
                }
            }
        }
    }
    Ok(Gf2Matrix::new(r, cols))
}

/// A representation of `M` (columns in ground order) whose row `r` has support
/// exactly `D`. `D` must be a cocircuit. The result is verified to represent
/// `M`; failure means the matroid is not binary.
pub fn rep_with_cocircuit_row<S: AsRef<str>>(m: &Matroid, d_labels: &[S]) -> Result<Gf2Matrix> {
    let dmask = m.mask_of(d_labels)?;
    if !m.is_cocircuit_mask(dmask)? {
        return Err(MatroidError::NotACocircuit(format!(
            "{:?}",
            m.labels_of(dmask)
        )));
    }
    let dual = m.dual()?;
    let n = m.n();
    let r = m.rank();

    // smallest element of D, then greedily extend D − d to a dual basis
    let d = dmask.trailing_zeros() as usize;
    let seed = dmask & !(1u64 << d);
    let mut bstar = seed;
    for e in 0..n {
        if (bstar >> e) & 1 == 1 {
            continue;
        }
        let cand = bstar | (1 << e);
        if dual.rank_of_mask(cand)? == cand.count_ones() as usize {
            bstar = cand;
        }
        if bstar.count_ones() as usize == n - r {
            break;
        }
    }
    debug_assert_eq!(bstar.count_ones() as usize, n - r);
    debug_assert_eq!(bstar & dmask, seed);

    // dual standard rep w.r.t. B*; the fundamental circuit of d is D itself
    let dual_rep = rep_from_basis(&dual, bstar)?;

    // rows of the primal matrix = non-B* elements with d last
    let mut row_elems: Vec<usize> = (0..n)
        .filter(|&e| (bstar >> e) & 1 == 0 && e != d)
        .collect();
    row_elems.push(d);
    debug_assert_eq!(row_elems.len(), r);
    let bstar_elems: Vec<usize> = (0..n).filter(|&e| (bstar >> e) & 1 == 1).collect();

    // primal column of a B* element carries the transposed dual coefficients;
    // a non-B* element gets the unit vector of its own row
    let dual_row_of: std::collections::BTreeMap<usize, usize> = bstar_elems
        .iter()
        .enumerate()
        .map(|(row, &e)| (e, row))
        .collect();
    let mut cols = vec![0u64; n];
    for (row, &e) in row_elems.iter().enumerate() {
        cols[e] = 1 << row;
    }
    for &e in &bstar_elems {
        let drow = dual_row_of[&e];
        for (row, &f) in row_elems.iter().enumerate() {
            if dual_rep.entry(drow, f) == 1 {
                cols[e] |= 1 << row;
            }
        }
    }
    let rep = Gf2Matrix::new(r, cols);

    // the row-r support must be D, and the matrix must reproduce M
    let support = rep.row_mask(r - 1);
    if support != dmask {
        return Err(MatroidError::BadRepresentation(format!(
            "row support {:?} differs from cocircuit {:?}",
            m.labels_of(support),
            m.labels_of(dmask)
        )));
    }
    let check = Matroid::from_binary("check", m.ground().to_vec(), rep.clone())?;
    if !check.bases_equal(m) {
        return Err(MatroidError::NotBinary(m.name().to_string()));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matroid::Graph;

    #[test]
    fn cocircuit_row_for_k3() {
        let m = Graph::complete(3, &["a".into(), "b".into(), "c".into()])
            .unwrap()
            .to_matroid()
            .unwrap();
        let rep = rep_with_cocircuit_row(&m, &["a", "b"]).unwrap();
        assert_eq!(rep.nrows(), 2);
        assert_eq!(rep.ncols(), 3);
        let support = m.labels_of(rep.row_mask(1));
        assert_eq!(support, vec!["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn cocircuit_row_rejects_circuits() {
        let m = Graph::complete(3, &["a".into(), "b".into(), "c".into()])
            .unwrap()
            .to_matroid()
            .unwrap();
        assert!(matches!(
            rep_with_cocircuit_row(&m, &["a", "b", "c"]),
            Err(MatroidError::NotACocircuit(_))
        ));
    }

    #[test]
    fn cocircuit_row_for_r10() {
        let m = fixtures::r10();
        // find some 4-element cocircuit by search
        let mut found = None;
        'outer: for a in 0..10u64 {
            for b in a + 1..10 {
                for c in b + 1..10 {
                    for d in c + 1..10 {
                        let mask = (1 << a) | (1 << b) | (1 << c) | (1 << d);
                        if m.is_cocircuit_mask(mask).unwrap() {
                            found = Some(mask);
                            break 'outer;
                        }
                    }
                }
            }
        }
        let mask = found.expect("R10 has 4-element cocircuits");
        let labels = m.labels_of(mask);
        let rep = rep_with_cocircuit_row(&m, &labels).unwrap();
        assert_eq!(rep.nrows(), 5);
        assert_eq!(rep.row_mask(4), mask);
    }

    #[test]
    fn standard_rep_round_trips_graphic() {
        let g = fixtures::k_graph(4);
        let m = g.to_matroid().unwrap();
        let rep = standard_rep(&m).unwrap();
        let back = Matroid::from_binary("back", m.ground().to_vec(), rep).unwrap();
        assert!(back.bases_equal(&m));
    }
}
