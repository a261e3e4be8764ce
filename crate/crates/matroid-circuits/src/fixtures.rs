//! The standard fixture matroids and decomposition trees used by the
//! verification suites, the CLI `gen` command, and the tests.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::gf2::Gf2Matrix;
use crate::matroid::tree::Leaf;
use crate::matroid::{DecompositionTree, Graph, Matroid};

/// The ten non-identity columns of the R10 representation.
pub const A10: [[u8; 5]; 5] = [
    [1, 0, 0, 1, 1],
    [1, 1, 0, 0, 1],
    [0, 1, 1, 0, 1],
    [0, 0, 1, 1, 1],
    [1, 1, 1, 1, 1],
];

/// The six non-identity columns of the R12 representation.
pub const A12: [[u8; 6]; 6] = [
    [1, 0, 1, 1, 0, 0],
    [0, 1, 1, 1, 0, 0],
    [1, 0, 1, 0, 1, 1],
    [0, 1, 0, 1, 1, 1],
    [1, 0, 1, 0, 1, 0],
    [0, 1, 0, 1, 0, 1],
];

/// The four non-identity columns of the Fano representation.
pub const A7: [[u8; 4]; 3] = [[1, 0, 1, 1], [1, 1, 0, 1], [0, 1, 1, 1]];

fn standard_form<const R: usize, const C: usize>(a: &[[u8; C]; R]) -> Gf2Matrix {
    let rows: Vec<Vec<u8>> = (0..R)
        .map(|i| {
            let mut row = vec![0u8; R + C];
            row[i] = 1;
            row[R..].copy_from_slice(&a[i]);
            row
        })
        .collect();
    Gf2Matrix::from_rows(&rows)
}

fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

/// R10 as the column matroid of `(I5 A10)`, elements `e1..e10`.
pub fn r10() -> Matroid {
    Matroid::from_binary("r10", labels(10), standard_form(&A10)).unwrap()
}

/// R12 as the column matroid of `(I6 A12)`, elements `e1..e12`.
pub fn r12() -> Matroid {
    Matroid::from_binary("r12", labels(12), standard_form(&A12)).unwrap()
}

/// The Fano matroid F7 as the column matroid of `(I3 A7)`, elements `e1..e7`.
pub fn f7() -> Matroid {
    Matroid::from_binary("f7", labels(7), standard_form(&A7)).unwrap()
}

/// Complete graph K_ℓ on vertices `v1..vℓ` with edges `eij` in lexicographic
/// pair order.
pub fn k_graph(l: usize) -> Graph {
    let mut names = Vec::new();
    for i in 1..=l {
        for j in i + 1..=l {
            names.push(format!("e{i}{j}"));
        }
    }
    Graph::complete(l, &names).unwrap()
}

/// Complete graph K_ℓ whose triangle on v1,v2,v3 carries the given labels
/// (in edge order v1v2, v1v3, v2v3); remaining edges are labeled `t1, t2, …`.
pub fn k_graph_with_triangle(l: usize, tri: [&str; 3]) -> Graph {
    let mut names = Vec::new();
    let mut k = 0;
    for i in 1..=l {
        for j in i + 1..=l {
            let name = match (i, j) {
                (1, 2) => tri[0].to_string(),
                (1, 3) => tri[1].to_string(),
                (2, 3) => tri[2].to_string(),
                _ => {
                    k += 1;
                    format!("t{k}")
                }
            };
            names.push(name);
        }
    }
    Graph::complete(l, &names).unwrap()
}

pub fn r10_tree() -> DecompositionTree {
    DecompositionTree::Leaf(Leaf::R10 { labels: labels(10) })
}

pub fn f7_tree() -> DecompositionTree {
    DecompositionTree::Leaf(Leaf::F7 { labels: labels(7) })
}

pub fn k_graphic_tree(l: usize) -> DecompositionTree {
    DecompositionTree::Leaf(Leaf::Graphic(k_graph(l)))
}

pub fn k_cographic_tree(l: usize) -> DecompositionTree {
    DecompositionTree::Leaf(Leaf::Cographic(k_graph(l)))
}

/// The 4-cycle expressed as a 2-sum of two triangles glued at `d`.
pub fn c4_2sum_tree() -> DecompositionTree {
    crate::matroid::tree::parse_tree("(2sum (graphic K3 a b d) (graphic K3 d c e) glue=d)")
        .unwrap()
}

/// Two K4 joined by a Δ-sum on a shared triangle `p,q,r`; the composed
/// matroid is the cycle matroid of K_{2,3}.
pub fn k4_dsum_k4_tree() -> DecompositionTree {
    crate::matroid::tree::parse_tree(
        "(dsum (graphic K4 p q s1 r s2 s3) (graphic K4 p q t1 r t2 t3) triangle=p,q,r)",
    )
    .unwrap()
}

/// R12 as a Δ-sum of two graph leaves. The split was computed once by the
/// exhaustive auto-decomposer on `(I6 A12)` and frozen here; the test suite
/// re-verifies that the recomposition matches the matrix matroid exactly.
pub fn r12_tree() -> DecompositionTree {
    crate::synth::auto::r12_split_tree()
}

/// Seeded random composite: a chain of 1- and 2-sums over small complete
/// graph leaves. Deterministic for a given seed.
pub fn random_composite(seed: u64) -> DecompositionTree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counter = 0usize;
    let mut fresh = |k: usize, rng: &mut ChaCha8Rng, shared: Option<String>| -> Graph {
        // complete graph leaf; one edge label may be forced to a shared glue
        let l = k;
        let count = l * (l - 1) / 2;
        let glue_pos = shared.as_ref().map(|_| rng.random_range(0..count));
        let mut names = Vec::new();
        for idx in 0..count {
            if Some(idx) == glue_pos {
                names.push(shared.clone().unwrap());
            } else {
                counter += 1;
                names.push(format!("x{seed}n{counter}"));
            }
        }
        Graph::complete(l, &names).unwrap()
    };

    let first = fresh(if seed % 2 == 0 { 4 } else { 3 }, &mut rng, None);
    let mut tree = DecompositionTree::Leaf(Leaf::Graphic(first));
    let steps = 2 + (seed % 2) as usize;
    for _ in 0..steps {
        let k = if rng.random_range(0..2u32) == 0 { 3 } else { 4 };
        let ground = tree.recompose().expect("composite stays valid").ground().to_vec();
        match rng.random_range(0..3u32) {
            0 => {
                let leaf = DecompositionTree::Leaf(Leaf::Graphic(fresh(k, &mut rng, None)));
                tree = DecompositionTree::OneSum(Box::new(tree), Box::new(leaf));
            }
            1 => {
                let d = ground[rng.random_range(0..ground.len())].clone();
                let leaf =
                    DecompositionTree::Leaf(Leaf::Graphic(fresh(k, &mut rng, Some(d.clone()))));
                tree = DecompositionTree::TwoSum(Box::new(tree), Box::new(leaf), d);
            }
            _ => {
                let d = ground[rng.random_range(0..ground.len())].clone();
                let leaf =
                    DecompositionTree::Leaf(Leaf::Graphic(fresh(k, &mut rng, Some(d.clone()))));
                // glue on the other side, so both 2-sum orientations occur
                tree = DecompositionTree::TwoSum(Box::new(leaf), Box::new(tree), d);
            }
        }
    }
    tree
}

/// One named fixture of the verification suites.
pub struct Fixture {
    pub name: String,
    pub tree: DecompositionTree,
}

/// The fixture list exercised by the identity, tropical, and ReLU suites.
pub fn suite_fixtures() -> Vec<Fixture> {
    let mut out = Vec::new();
    for l in 3..=6 {
        out.push(Fixture {
            name: format!("graphic-k{l}"),
            tree: k_graphic_tree(l),
        });
    }
    for l in 3..=6 {
        out.push(Fixture {
            name: format!("cographic-k{l}"),
            tree: k_cographic_tree(l),
        });
    }
    out.push(Fixture {
        name: "r10".into(),
        tree: DecompositionTree::Leaf(Leaf::R10 {
            labels: labels(10),
        }),
    });
    out.push(Fixture {
        name: "f7".into(),
        tree: DecompositionTree::Leaf(Leaf::F7 { labels: labels(7) }),
    });
    out.push(Fixture {
        name: "c4-2sum".into(),
        tree: c4_2sum_tree(),
    });
    out.push(Fixture {
        name: "k4-dsum-k4".into(),
        tree: k4_dsum_k4_tree(),
    });
    out.push(Fixture {
        name: "r12-dsum".into(),
        tree: r12_tree(),
    });
    for seed in 1..=3u64 {
        out.push(Fixture {
            name: format!("composite-{seed}"),
            tree: random_composite(seed),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_matrices_have_full_rank() {
        assert_eq!(r10().rank(), 5);
        assert_eq!(r12().rank(), 6);
        assert_eq!(f7().rank(), 3);
    }

    #[test]
    fn k4_dsum_k4_is_k23() {
        let m = k4_dsum_k4_tree().recompose().unwrap();
        assert_eq!(m.basis_count().unwrap(), 12);
    }

    #[test]
    fn random_composites_are_deterministic_and_small() {
        for seed in 1..=3 {
            let a = random_composite(seed).recompose().unwrap();
            let b = random_composite(seed).recompose().unwrap();
            assert!(a.bases_equal(&b));
            assert!(a.n() <= 20, "composite too large: {}", a.n());
        }
    }
}
