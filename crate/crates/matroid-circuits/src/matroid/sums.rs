//! Matroid composition: 1-, 2-, Δ-, and Δ⁺-sums, parallel extension, and
//! Δ-Y / Y-Δ exchanges.
//!
//! All sums are defined directly on basis sets. The preconditions on the
//! interface (ground-set intersection, circuit/cocircuit structure of the
//! shared triangle) are checked by enumeration before any bases are combined.

use std::collections::{BTreeMap, BTreeSet};

use crate::matroid::{Matroid, MatroidError, Result};

fn shared_labels(m1: &Matroid, m2: &Matroid) -> Vec<String> {
    let s1: BTreeSet<&String> = m1.ground().iter().collect();
    let mut out: Vec<String> = m2
        .ground()
        .iter()
        .filter(|l| s1.contains(l))
        .cloned()
        .collect();
    out.sort();
    out
}

/// Ground set of a sum: `E1 ∖ shared` in M1 order, then `E2 ∖ shared` in M2
/// order.
fn joint_ground(m1: &Matroid, m2: &Matroid, shared: &BTreeSet<String>) -> Vec<String> {
    let mut g: Vec<String> = m1
        .ground()
        .iter()
        .filter(|l| !shared.contains(*l))
        .cloned()
        .collect();
    g.extend(
        m2.ground()
            .iter()
            .filter(|l| !shared.contains(*l))
            .cloned(),
    );
    g
}

/// Translates a basis mask of an operand into the joint ground, dropping the
/// shared elements.
fn lift(m: &Matroid, mask: u64, joint: &BTreeMap<&str, usize>) -> u64 {
    let mut out = 0u64;
    for (i, l) in m.ground().iter().enumerate() {
        if (mask >> i) & 1 == 1 {
            if let Some(&j) = joint.get(l.as_str()) {
                out |= 1 << j;
            }
        }
    }
    out
}

/// 1-sum: disjoint ground sets, bases are unions.
pub fn one_sum(m1: &Matroid, m2: &Matroid) -> Result<Matroid> {
    let shared = shared_labels(m1, m2);
    if !shared.is_empty() {
        return Err(MatroidError::BadInterface(format!(
            "1-sum operands share {shared:?}"
        )));
    }
    let ground = joint_ground(m1, m2, &BTreeSet::new());
    let joint: BTreeMap<&str, usize> = ground
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let mut bases = Vec::new();
    for &b1 in m1.basis_masks()? {
        let l1 = lift(m1, b1, &joint);
        for &b2 in m2.basis_masks()? {
            bases.push(l1 | lift(m2, b2, &joint));
        }
    }
    Matroid::from_basis_masks(&format!("{}+{}", m1.name(), m2.name()), ground, bases)
}

/// 2-sum at the unique shared element `d`:
/// bases are `(B1 ∪ B2) − d` over pairs with `d ∈ B1 △ B2`.
pub fn two_sum(m1: &Matroid, m2: &Matroid, d: &str) -> Result<Matroid> {
    let shared = shared_labels(m1, m2);
    if shared != [d.to_string()] {
        return Err(MatroidError::BadInterface(format!(
            "2-sum needs shared ground exactly {{{d}}}, found {shared:?}"
        )));
    }
    for (m, side) in [(m1, "left"), (m2, "right")] {
        if m.is_loop(d)? || m.is_coloop(d)? {
            return Err(MatroidError::BadInterface(format!(
                "glue element {d:?} is a loop or coloop of the {side} operand"
            )));
        }
    }
    let shared_set: BTreeSet<String> = [d.to_string()].into();
    let ground = joint_ground(m1, m2, &shared_set);
    let joint: BTreeMap<&str, usize> = ground
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let i1 = m1.index_of(d)?;
    let i2 = m2.index_of(d)?;
    let mut bases = Vec::new();
    for &b1 in m1.basis_masks()? {
        for &b2 in m2.basis_masks()? {
            let in1 = (b1 >> i1) & 1 == 1;
            let in2 = (b2 >> i2) & 1 == 1;
            if in1 != in2 {
                bases.push(lift(m1, b1, &joint) | lift(m2, b2, &joint));
            }
        }
    }
    Matroid::from_basis_masks(
        &format!("{}+2+{}", m1.name(), m2.name()),
        ground,
        bases,
    )
}

/// Checks the Δ-interface: the three shared elements form a circuit of both
/// operands and contain no cocircuit of either.
fn check_delta_interface(m1: &Matroid, m2: &Matroid, d: &[String; 3]) -> Result<()> {
    let shared = shared_labels(m1, m2);
    let mut want: Vec<String> = d.to_vec();
    want.sort();
    if shared != want {
        return Err(MatroidError::BadInterface(format!(
            "Δ-sum needs shared ground exactly {want:?}, found {shared:?}"
        )));
    }
    for (m, side) in [(m1, "left"), (m2, "right")] {
        let mask = m.mask_of(d)?;
        if !m.is_circuit_mask(mask)? {
            return Err(MatroidError::BadTriangle(format!(
                "{d:?} is not a circuit of the {side} operand"
            )));
        }
        if m.contains_cocircuit(mask)? {
            return Err(MatroidError::BadTriangle(format!(
                "{d:?} contains a cocircuit of the {side} operand"
            )));
        }
    }
    Ok(())
}

/// Δ-sum at the shared triangle `D = {d1,d2,d3}`.
///
/// `B = (B1 ∪ B2) ∖ D` is a basis when `B1 ∩ B2 = ∅` and either one side
/// meets D twice and the other not at all, or each side meets D once, in
/// distinct elements `d_i, d_j`, and the exchanged sets `B1 △ (D − d_j)` and
/// `B2 △ (D − d_i)` are bases of their respective operands.
pub fn delta_sum(m1: &Matroid, m2: &Matroid, d: &[String; 3]) -> Result<Matroid> {
    check_delta_interface(m1, m2, d)?;
    let shared_set: BTreeSet<String> = d.iter().cloned().collect();
    let ground = joint_ground(m1, m2, &shared_set);
    let joint: BTreeMap<&str, usize> = ground
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();

    let d1: Vec<usize> = d.iter().map(|l| m1.index_of(l)).collect::<Result<_>>()?;
    let d2: Vec<usize> = d.iter().map(|l| m2.index_of(l)).collect::<Result<_>>()?;
    let dmask1: u64 = d1.iter().map(|&i| 1u64 << i).sum();
    let dmask2: u64 = d2.iter().map(|&i| 1u64 << i).sum();
    let b1set: BTreeSet<u64> = m1.basis_masks()?.iter().copied().collect();
    let b2set: BTreeSet<u64> = m2.basis_masks()?.iter().copied().collect();

    let mut bases = BTreeSet::new();
    for &b1 in m1.basis_masks()? {
        let t1 = b1 & dmask1;
        for &b2 in m2.basis_masks()? {
            let t2 = b2 & dmask2;
            // B1 ∩ B2 lives inside D; compare triangle incidence patterns
            let pat1: Vec<bool> = d1.iter().map(|&i| (b1 >> i) & 1 == 1).collect();
            let pat2: Vec<bool> = d2.iter().map(|&i| (b2 >> i) & 1 == 1).collect();
            if pat1.iter().zip(&pat2).any(|(a, b)| *a && *b) {
                continue;
            }
            let c1 = t1.count_ones();
            let c2 = t2.count_ones();
            let ok = match (c1, c2) {
                (0, 2) | (2, 0) => true,
                (1, 1) => {
                    let i = pat1.iter().position(|&x| x).unwrap();
                    let j = pat2.iter().position(|&x| x).unwrap();
                    // i ≠ j is already enforced by disjointness
                    let ex1 = b1 ^ (dmask1 & !(1u64 << d1[j]));
                    let ex2 = b2 ^ (dmask2 & !(1u64 << d2[i]));
                    b1set.contains(&ex1) && b2set.contains(&ex2)
                }
                _ => false,
            };
            if ok {
                bases.insert(lift(m1, b1, &joint) | lift(m2, b2, &joint));
            }
        }
    }
    Matroid::from_basis_masks(
        &format!("{}+Δ+{}", m1.name(), m2.name()),
        ground,
        bases.into_iter().collect(),
    )
}

/// Adds a parallel copy of `element` under the label `copy`.
pub fn parallel_extend(m: &Matroid, element: &str, copy: &str) -> Result<Matroid> {
    let i = m.index_of(element)?;
    if m.index_of(copy).is_ok() {
        return Err(MatroidError::DuplicateLabel(copy.to_string()));
    }
    let mut ground = m.ground().to_vec();
    ground.push(copy.to_string());
    let cbit = 1u64 << (ground.len() - 1);
    let mut bases = Vec::new();
    for &b in m.basis_masks()? {
        bases.push(b);
        if (b >> i) & 1 == 1 {
            bases.push((b & !(1 << i)) | cbit);
        }
    }
    Matroid::from_basis_masks(m.name(), ground, bases)
}

/// Δ⁺-sum: the left operand is parallel-extended on the triangle before the
/// Δ-sum, so the triangle survives into the result. The surviving copies keep
/// the original `d_i` labels, which makes deleting them recover the plain
/// Δ-sum on the same ground set.
pub fn delta_sum_plus(m1: &Matroid, m2: &Matroid, d: &[String; 3]) -> Result<Matroid> {
    let mut extended = m1.clone();
    let mut temps = Vec::new();
    for di in d {
        let temp = format!("{di}~copy");
        extended = parallel_extend(&extended, di, &temp)?;
        temps.push(temp);
    }
    let summed = delta_sum(&extended, m2, d)?;
    let map: BTreeMap<String, String> = temps.into_iter().zip(d.iter().cloned()).collect();
    Ok(summed
        .relabel(&map)?
        .renamed(&format!("{}+Δ⁺+{}", m1.name(), m2.name())))
}

/// Δ-Y exchange at a triangle `D` (a circuit containing no cocircuit).
///
/// The exchanged matroid has rank r+1; its bases are read off the original
/// basis set case by case on `|B ∩ D|`.
pub fn delta_y_exchange(m: &Matroid, d: &[String; 3]) -> Result<Matroid> {
    let dmask = m.mask_of(d)?;
    if !m.is_circuit_mask(dmask)? {
        return Err(MatroidError::BadTriangle(format!(
            "{d:?} is not a circuit"
        )));
    }
    if m.contains_cocircuit(dmask)? {
        return Err(MatroidError::BadTriangle(format!(
            "{d:?} contains a cocircuit"
        )));
    }
    let dbits: Vec<u64> = d
        .iter()
        .map(|l| m.index_of(l).map(|i| 1u64 << i))
        .collect::<Result<_>>()?;
    let mut out = BTreeSet::new();
    for &b in m.basis_masks()? {
        let t = b & dmask;
        match t.count_ones() {
            // B ∩ D = ∅: add any one d_i
            0 => {
                for &bit in &dbits {
                    out.insert(b | bit);
                }
            }
            // B ∩ D = {d_k}: exchange to the other two
            1 => {
                out.insert(b ^ dmask);
            }
            // |B ∩ D| = 2: complete the triangle
            2 => {
                out.insert(b | dmask);
            }
            _ => unreachable!("D is a circuit, no basis contains it"),
        }
    }
    Matroid::from_basis_masks(
        &format!("Y({})", m.name()),
        m.ground().to_vec(),
        out.into_iter().collect(),
    )
}

/// Y-Δ exchange at a triad `D` (a cocircuit containing no circuit), defined
/// by duality: `Δ_D(M) = (Y_D(M*))*`.
pub fn y_delta_exchange(m: &Matroid, d: &[String; 3]) -> Result<Matroid> {
    let dual = m.dual()?;
    let exchanged = delta_y_exchange(&dual, d)?;
    Ok(exchanged
        .dual()?
        .renamed(&format!("Δ({})", m.name())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matroid::Graph;

    fn triangle(labels: [&str; 3]) -> Matroid {
        // triangle on edges labeled (v1v2, v1v3, v2v3)
        let g = Graph::complete(3, &labels.map(String::from)).unwrap();
        g.to_matroid().unwrap()
    }

    #[test]
    fn one_sum_multiplies_basis_counts() {
        let a = triangle(["a", "b", "c"]);
        let b = triangle(["x", "y", "z"]);
        let s = one_sum(&a, &b).unwrap();
        assert_eq!(s.basis_count().unwrap(), 9);
        assert!(matches!(
            one_sum(&a, &a),
            Err(MatroidError::BadInterface(_))
        ));
    }

    #[test]
    fn two_sum_of_triangles_is_four_cycle() {
        let a = triangle(["a", "b", "d"]);
        let b = triangle(["d", "c", "e"]);
        let s = two_sum(&a, &b, "d").unwrap();
        assert_eq!(s.n(), 4);
        assert_eq!(s.basis_count().unwrap(), 4);
        // the 4-cycle as a graph, for comparison
        let c4 = Graph::from_edges(&[
            ("a", "p", "q"),
            ("b", "q", "r"),
            ("c", "r", "s"),
            ("e", "s", "p"),
        ])
        .unwrap()
        .to_matroid()
        .unwrap();
        assert_eq!(c4.basis_count().unwrap(), 4);
        assert_eq!(s.rank(), c4.rank());
    }

    #[test]
    fn two_sum_split_cases_partition_bases() {
        // every basis of a 2-sum comes from exactly one of the two split
        // families (glue on the left vs glue on the right)
        let m1 = triangle(["a", "b", "d"]);
        let m2 = triangle(["d", "c", "e"]);
        let s = two_sum(&m1, &m2, "d").unwrap();
        let i1 = m1.index_of("d").unwrap();
        let i2 = m2.index_of("d").unwrap();
        let mut left = BTreeSet::new();
        let mut right = BTreeSet::new();
        for b in s.enumerate_bases().unwrap() {
            let b1: Vec<String> = b.iter().filter(|l| *l == "a" || *l == "b").cloned().collect();
            let b2: Vec<String> = b.iter().filter(|l| *l == "c" || *l == "e").cloned().collect();
            // B ∈ left family iff (B∩E1)+d is a basis of M1 and B∩E2 of M2
            let m1mask = m1.mask_of(&b1).unwrap();
            let m2mask = m2.mask_of(&b2).unwrap();
            let in_left = m1.basis_masks().unwrap().contains(&(m1mask | (1 << i1)))
                && m2.basis_masks().unwrap().contains(&m2mask);
            let in_right = m2.basis_masks().unwrap().contains(&(m2mask | (1 << i2)))
                && m1.basis_masks().unwrap().contains(&m1mask);
            assert!(in_left ^ in_right, "basis {b:?} must be in exactly one family");
            if in_left {
                left.insert(b);
            } else {
                right.insert(b);
            }
        }
        assert_eq!(left.len() + right.len(), 4);
    }

    fn k4_with_triangle(tri: [&str; 3], spokes: [&str; 3]) -> Matroid {
        // edge order of K4: (12),(13),(14),(23),(24),(34); triangle on v1v2v3
        let labels = [tri[0], tri[1], spokes[0], tri[2], spokes[1], spokes[2]];
        Graph::complete(4, &labels.map(String::from))
            .unwrap()
            .to_matroid()
            .unwrap()
    }

    #[test]
    fn delta_sum_of_two_k4_is_k23() {
        let m1 = k4_with_triangle(["p", "q", "r"], ["s1", "s2", "s3"]);
        let m2 = k4_with_triangle(["p", "q", "r"], ["t1", "t2", "t3"]);
        let d = ["p".to_string(), "q".to_string(), "r".to_string()];
        let s = delta_sum(&m1, &m2, &d).unwrap();
        assert_eq!(s.n(), 6);
        assert_eq!(s.rank(), 4);
        // gluing two K4 on a triangle and removing it leaves K_{2,3}:
        // 2^2 * 3^1 = 12 spanning trees
        assert_eq!(s.basis_count().unwrap(), 12);
    }

    #[test]
    fn delta_plus_then_delete_is_delta() {
        let m1 = k4_with_triangle(["p", "q", "r"], ["s1", "s2", "s3"]);
        let m2 = k4_with_triangle(["p", "q", "r"], ["t1", "t2", "t3"]);
        let d = ["p".to_string(), "q".to_string(), "r".to_string()];
        let plus = delta_sum_plus(&m1, &m2, &d).unwrap();
        assert_eq!(plus.n(), 9);
        let deleted = plus.delete_all(&d).unwrap();
        let plain = delta_sum(&m1, &m2, &d).unwrap();
        assert!(deleted.bases_equal(&plain));
    }

    #[test]
    fn delta_y_on_k4_matches_delta_sum_with_k4() {
        // Y_D(M) ≅ M ⊕_Δ M(K4) under the map d_i ↦ y_i, identity elsewhere,
        // where y_i is the K4 spoke not adjacent to d_i
        let m = k4_with_triangle(["d1", "d2", "d3"], ["s1", "s2", "s3"]);
        let d = ["d1".to_string(), "d2".to_string(), "d3".to_string()];
        let y = delta_y_exchange(&m, &d).unwrap();
        assert_eq!(y.rank(), m.rank() + 1);

        // the second K4: triangle d1,d2,d3 on v1v2v3; spoke y_i = v_i v4 is
        // adjacent to d_j for j ≠ i when d_i is the triangle edge opposite v_i
        // with edge order (12),(13),(23) ↦ (d3, d2, d1)
        let labels = ["d3", "d2", "y1", "d1", "y2", "y3"].map(String::from);
        let k4 = Graph::complete(4, &labels).unwrap().to_matroid().unwrap();
        let s = delta_sum(&m, &k4, &d).unwrap();

        // apply φ to Y_D(M): d_i ↦ y_i
        let map: BTreeMap<String, String> = [
            ("d1".to_string(), "y1".to_string()),
            ("d2".to_string(), "y2".to_string()),
            ("d3".to_string(), "y3".to_string()),
        ]
        .into();
        let mapped = y.relabel(&map).unwrap();
        assert!(mapped.bases_equal(&s));
    }

    #[test]
    fn delta_y_cases_are_exhaustive() {
        let m = k4_with_triangle(["d1", "d2", "d3"], ["s1", "s2", "s3"]);
        let d = ["d1".to_string(), "d2".to_string(), "d3".to_string()];
        let y = delta_y_exchange(&m, &d).unwrap();
        let dmask = y.mask_of(&d).unwrap();
        let bset: BTreeSet<u64> = m.basis_masks().unwrap().iter().copied().collect();
        for &bp in y.basis_masks().unwrap() {
            let t = (bp & dmask).count_ones();
            assert!(t >= 1 && t <= 3);
            match t {
                1 | 3 => {
                    // some d_i removal gives a basis of M
                    let mut ok = false;
                    for l in &d {
                        let i = y.index_of(l).unwrap();
                        if (bp >> i) & 1 == 1 && bset.contains(&(bp & !(1 << i))) {
                            ok = true;
                        }
                    }
                    assert!(ok);
                }
                2 => assert!(bset.contains(&(bp ^ dmask))),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn delta_y_rejects_triangle_containing_cocircuit() {
        let m = triangle(["a", "b", "c"]);
        let d = ["a".to_string(), "b".to_string(), "c".to_string()];
        // {a,b} is a cocircuit inside D = E
        assert!(matches!(
            delta_y_exchange(&m, &d),
            Err(MatroidError::BadTriangle(_))
        ));
    }

    #[test]
    fn cut_cocircuit_in_delta_plus_sums() {
        // edge star of the last K_ℓ vertex stays a cocircuit of M1 ⊕Δ⁺ M(Kℓ)
        let m1 = k4_with_triangle(["p", "q", "r"], ["s1", "s2", "s3"]);
        let d = ["p".to_string(), "q".to_string(), "r".to_string()];
        for l in [4usize, 5] {
            let count = l * (l - 1) / 2;
            let mut labels = Vec::new();
            let mut k = 0;
            for i in 1..=l {
                for j in i + 1..=l {
                    let name = match (i, j) {
                        (1, 2) => "p".to_string(),
                        (1, 3) => "q".to_string(),
                        (2, 3) => "r".to_string(),
                        _ => {
                            k += 1;
                            format!("t{k}")
                        }
                    };
                    labels.push(name);
                }
            }
            assert_eq!(labels.len(), count);
            let kl = Graph::complete(l, &labels).unwrap();
            let star: Vec<String> = kl
                .edges()
                .iter()
                .filter(|e| e.u == l - 1 || e.v == l - 1)
                .map(|e| e.label.clone())
                .collect();
            let m = delta_sum_plus(&m1, &kl.to_matroid().unwrap(), &d).unwrap();
            let star_in_m: Vec<String> = star
                .into_iter()
                .filter(|s| m.index_of(s).is_ok())
                .collect();
            assert_eq!(star_in_m.len(), l - 1);
            assert!(m.is_cocircuit(&star_in_m).unwrap());
        }
    }
}
