//! Independent brute-force ground truth: basis polynomial evaluation, greedy
//! basis maximization, Kirchhoff tree counting, and randomized circuit
//! identity testing. Everything compares exactly; there are no tolerances.

pub mod suites;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::circuit::Circuit;
use crate::matroid::{Graph, Matroid, MatroidError};
use crate::rational::{fmt_rat, Rat};

/// A named evaluation point with the seed that produced it.
#[derive(Clone, Debug)]
pub struct TestPoint {
    pub assignment: BTreeMap<String, Rat>,
    pub seed: u64,
}

/// Strictly positive rational points (numerators and denominators up to
/// 10⁴), deterministic in the seed.
pub fn positive_points(vars: &[String], trials: usize, seed: u64) -> Vec<TestPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            let assignment = vars
                .iter()
                .map(|v| {
                    let num = rng.random_range(1..=10_000i64);
                    let den = rng.random_range(1..=10_000i64);
                    (v.clone(), Rat::new(BigInt::from(num), BigInt::from(den)))
                })
                .collect();
            TestPoint { assignment, seed }
        })
        .collect()
}

/// Integer weight vectors in [−100, 100], deterministic in the seed.
pub fn integer_weights(vars: &[String], trials: usize, seed: u64) -> Vec<BTreeMap<String, i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            vars.iter()
                .map(|v| (v.clone(), rng.random_range(-100..=100i64)))
                .collect()
        })
        .collect()
}

/// `Σ_B Π_{e∈B} x_e` computed directly over the enumerated bases.
pub fn brute_bgp_eval(
    m: &Matroid,
    assignment: &BTreeMap<String, Rat>,
) -> Result<Rat, MatroidError> {
    let values: Vec<Rat> = m
        .ground()
        .iter()
        .map(|e| {
            assignment
                .get(e)
                .cloned()
                .ok_or_else(|| MatroidError::UnknownElement(e.clone()))
        })
        .collect::<Result<_, _>>()?;
    let mut acc = Rat::zero();
    for &b in m.basis_masks()? {
        let mut term = Rat::one();
        for (i, v) in values.iter().enumerate() {
            if (b >> i) & 1 == 1 {
                term *= v;
            }
        }
        acc += term;
    }
    Ok(acc)
}

/// Greedy maximum-weight basis. Elements are taken in order of decreasing
/// weight (ties broken by ground position) whenever they keep the set
/// independent; for a matroid this yields a maximum-weight basis even with
/// negative weights, since bases all have size r.
pub fn greedy_max_basis(
    m: &Matroid,
    weights: &BTreeMap<String, i64>,
) -> Result<(Vec<String>, i64), MatroidError> {
    let mut order: Vec<usize> = (0..m.n()).collect();
    let w = |i: usize| -> i64 { *weights.get(&m.ground()[i]).unwrap_or(&0) };
    order.sort_by_key(|&i| (-w(i), i));
    let mut chosen = 0u64;
    for &i in &order {
        let cand = chosen | (1 << i);
        if m.is_independent_mask(cand)? {
            chosen = cand;
        }
        if chosen.count_ones() as usize == m.rank() {
            break;
        }
    }
    let total: i64 = (0..m.n()).filter(|&i| (chosen >> i) & 1 == 1).map(w).sum();
    Ok((m.labels_of(chosen), total))
}

/// Spanning tree count via the determinant of the reduced Laplacian.
pub fn kirchhoff_count(g: &Graph) -> Result<BigInt, MatroidError> {
    if !g.is_connected() {
        return Err(MatroidError::DisconnectedGraph);
    }
    let ones: BTreeMap<String, Rat> = g
        .edge_labels()
        .map(|l| (l.to_string(), Rat::one()))
        .collect();
    let det = kirchhoff_weighted(g, &ones)?;
    debug_assert!(det.is_integer());
    Ok(det.numer().clone())
}

/// Weighted Kirchhoff: determinant of the reduced weighted Laplacian, which
/// equals the spanning tree polynomial of the graph at the given weights.
pub fn kirchhoff_weighted(
    g: &Graph,
    weights: &BTreeMap<String, Rat>,
) -> Result<Rat, MatroidError> {
    if !g.is_connected() {
        return Err(MatroidError::DisconnectedGraph);
    }
    let nv = g.vertex_count();
    if nv == 1 {
        return Ok(Rat::one());
    }
    let k = nv - 1;
    let mut l = vec![vec![Rat::zero(); k]; k];
    for e in g.edges() {
        if e.u == e.v {
            continue;
        }
        let w = weights
            .get(&e.label)
            .cloned()
            .ok_or_else(|| MatroidError::UnknownElement(e.label.clone()))?;
        if e.u < k {
            l[e.u][e.u] += &w;
        }
        if e.v < k {
            l[e.v][e.v] += &w;
        }
        if e.u < k && e.v < k {
            l[e.u][e.v] -= &w;
            l[e.v][e.u] -= &w;
        }
    }
    Ok(crate::linalg::det_exact(&l).expect("square by construction"))
}

/// Outcome of a randomized identity test.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub pass: bool,
    pub trials: usize,
    pub seed: u64,
    pub failure: Option<Failure>,
}

#[derive(Clone, Debug)]
pub struct Failure {
    pub point: String,
    pub expected: String,
    pub got: String,
}

/// Compares circuit evaluation against the brute-force basis polynomial at
/// seeded strictly positive rational points, exactly. Trials run in
/// parallel; the reported counterexample is the earliest failing trial.
pub fn identity_test(c: &Circuit, m: &Matroid, trials: usize, seed: u64) -> Verdict {
    let points = positive_points(m.ground(), trials, seed);
    let failures: Vec<(usize, Failure)> = points
        .par_iter()
        .enumerate()
        .filter_map(|(i, p)| {
            let expected = match brute_bgp_eval(m, &p.assignment) {
                Ok(v) => v,
                Err(e) => {
                    return Some((
                        i,
                        Failure {
                            point: format_point_inline(&p.assignment),
                            expected: format!("oracle error: {e}"),
                            got: String::new(),
                        },
                    ))
                }
            };
            let got = match c.eval(&p.assignment) {
                Ok(v) => v,
                Err(e) => {
                    return Some((
                        i,
                        Failure {
                            point: format_point_inline(&p.assignment),
                            expected: fmt_rat(&expected),
                            got: format!("circuit error: {e}"),
                        },
                    ))
                }
            };
            (expected != got).then(|| {
                (
                    i,
                    Failure {
                        point: format_point_inline(&p.assignment),
                        expected: fmt_rat(&expected),
                        got: fmt_rat(&got),
                    },
                )
            })
        })
        .collect();
    let first = failures.into_iter().min_by_key(|(i, _)| *i);
    Verdict {
        pass: first.is_none(),
        trials,
        seed,
        failure: first.map(|(_, f)| f),
    }
}

pub fn format_point_inline(assignment: &BTreeMap<String, Rat>) -> String {
    assignment
        .iter()
        .map(|(k, v)| format!("{k}={}", fmt_rat(v)))
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::naive_from_bases;
    use crate::fixtures;
    use crate::rational::rat;

    #[test]
    fn brute_eval_examples() {
        let k3 = fixtures::k_graph(3).to_matroid().unwrap();
        let ones: BTreeMap<String, Rat> =
            k3.ground().iter().map(|e| (e.clone(), rat(1))).collect();
        assert_eq!(brute_bgp_eval(&k3, &ones).unwrap(), rat(3));

        let r10 = fixtures::r10();
        let ones: BTreeMap<String, Rat> =
            r10.ground().iter().map(|e| (e.clone(), rat(1))).collect();
        assert_eq!(brute_bgp_eval(&r10, &ones).unwrap(), rat(162));

        // homogeneity: all-twos on M(K4) gives 16·2³
        let k4 = fixtures::k_graph(4).to_matroid().unwrap();
        let twos: BTreeMap<String, Rat> =
            k4.ground().iter().map(|e| (e.clone(), rat(2))).collect();
        assert_eq!(brute_bgp_eval(&k4, &twos).unwrap(), rat(128));
    }

    #[test]
    fn greedy_matches_exhaustive_max() {
        let r10 = fixtures::r10();
        for weights in integer_weights(r10.ground(), 20, 7) {
            let (_, greedy) = greedy_max_basis(&r10, &weights).unwrap();
            let exhaustive = r10
                .basis_masks()
                .unwrap()
                .iter()
                .map(|&b| {
                    (0..r10.n())
                        .filter(|&i| (b >> i) & 1 == 1)
                        .map(|i| weights[&r10.ground()[i]])
                        .sum::<i64>()
                })
                .max()
                .unwrap();
            assert_eq!(greedy, exhaustive);
        }
    }

    #[test]
    fn greedy_simple_example() {
        let k3 = fixtures::k_graph(3).to_matroid().unwrap();
        let w: BTreeMap<String, i64> = [
            ("e12".to_string(), 5),
            ("e13".to_string(), 2),
            ("e23".to_string(), 1),
        ]
        .into();
        let (basis, total) = greedy_max_basis(&k3, &w).unwrap();
        assert_eq!(total, 7);
        assert_eq!(basis, vec!["e12".to_string(), "e13".to_string()]);
    }

    #[test]
    fn kirchhoff_examples() {
        assert_eq!(kirchhoff_count(&fixtures::k_graph(4)).unwrap(), 16.into());
        assert_eq!(kirchhoff_count(&fixtures::k_graph(5)).unwrap(), 125.into());
        let tree = Graph::from_edges(&[("a", "x", "y"), ("b", "y", "z"), ("c", "z", "w")])
            .unwrap();
        assert_eq!(kirchhoff_count(&tree).unwrap(), 1.into());
    }

    #[test]
    fn kirchhoff_agrees_with_enumeration() {
        for l in 3..=6 {
            let g = fixtures::k_graph(l);
            let count = g.to_matroid().unwrap().basis_count().unwrap();
            assert_eq!(kirchhoff_count(&g).unwrap(), BigInt::from(count));
        }
    }

    #[test]
    fn identity_test_passes_on_honest_circuit() {
        let k4 = fixtures::k_graph(4).to_matroid().unwrap();
        let c = naive_from_bases(&k4.enumerate_bases().unwrap()).unwrap();
        let v = identity_test(&c, &k4, 25, 42);
        assert!(v.pass);
    }

    #[test]
    fn identity_test_catches_corruption() {
        // swap one gate: the naive K4 circuit with one Mul turned into Add
        let k4 = fixtures::k_graph(4).to_matroid().unwrap();
        let c = naive_from_bases(&k4.enumerate_bases().unwrap()).unwrap();
        let text = crate::circuit::text::format_circuit(&c);
        let corrupted = text.replacen("mul", "add", 1);
        let bad = crate::circuit::text::parse_circuit(&corrupted).unwrap();
        let v = identity_test(&bad, &k4, 50, 42);
        assert!(!v.pass);
        assert!(v.failure.is_some());
    }

    #[test]
    fn dualization_identity_at_oracle_level() {
        // f_{M*}(p) = Πp · f_M(1/p)
        let m = fixtures::k_graph(4).to_matroid().unwrap();
        let dual = m.dual().unwrap();
        for p in positive_points(m.ground(), 10, 99) {
            let lhs = brute_bgp_eval(&dual, &p.assignment).unwrap();
            let prod = p
                .assignment
                .values()
                .fold(Rat::one(), |acc, v| acc * v);
            let inv: BTreeMap<String, Rat> = p
                .assignment
                .iter()
                .map(|(k, v)| (k.clone(), v.recip()))
                .collect();
            let rhs = prod * brute_bgp_eval(&m, &inv).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
