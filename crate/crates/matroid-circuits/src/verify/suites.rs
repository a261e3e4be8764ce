//! Named verification suites, the engine behind `verify <suite>` and the
//! acceptance tests. Every check emits one line:
//! `PASS <name> trials=<t> seed=<s>` or `FAIL <name> …` with the first
//! counterexample.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::circuit::{lower_to_relu, tropicalize};
use crate::fixtures;
use crate::linalg::{camion_sign, is_tu, star_mesh, star_mesh_weights, weighted_gram, IntMatrix};
use crate::matroid::{sums, Matroid};
use crate::rational::{rat, Rat};
use crate::synth::{synth, Rule};
use crate::verify::{
    brute_bgp_eval, greedy_max_basis, identity_test, integer_weights, kirchhoff_count,
    positive_points,
};

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub trials: usize,
    pub seed: u64,
    pub detail: String,
}

impl CheckResult {
    fn pass(name: impl Into<String>, trials: usize, seed: u64) -> Self {
        CheckResult {
            name: name.into(),
            pass: true,
            trials,
            seed,
            detail: String::new(),
        }
    }

    fn fail(name: impl Into<String>, trials: usize, seed: u64, detail: String) -> Self {
        CheckResult {
            name: name.into(),
            pass: false,
            trials,
            seed,
            detail,
        }
    }

    pub fn line(&self) -> String {
        if self.pass {
            format!("PASS {} trials={} seed={}", self.name, self.trials, self.seed)
        } else {
            format!("FAIL {} {}", self.name, self.detail)
        }
    }
}

fn check<F: FnOnce() -> Result<(), String>>(
    name: &str,
    trials: usize,
    seed: u64,
    f: F,
) -> CheckResult {
    match f() {
        Ok(()) => CheckResult::pass(name, trials, seed),
        Err(d) => CheckResult::fail(name, trials, seed, d),
    }
}

fn all_ones(m: &Matroid) -> BTreeMap<String, Rat> {
    m.ground().iter().map(|e| (e.clone(), rat(1))).collect()
}

pub fn known_suites() -> &'static [&'static str] {
    &["core", "tropical", "matrices", "structure", "all"]
}

pub fn run_suite(name: &str, seed: u64, trials: usize) -> Result<Vec<CheckResult>, String> {
    match name {
        "core" => Ok(core_suite(seed, trials)),
        "tropical" => Ok(tropical_suite(seed, trials)),
        "matrices" => Ok(matrices_suite(seed, trials)),
        "structure" => Ok(structure_suite(seed)),
        "all" => {
            let mut out = core_suite(seed, trials);
            out.extend(tropical_suite(seed, trials));
            out.extend(matrices_suite(seed, trials));
            out.extend(structure_suite(seed));
            Ok(out)
        }
        other => Err(format!(
            "unknown suite {other:?}; known: {}",
            known_suites().join(", ")
        )),
    }
}

/// R10 golden values, the graphic ladder, per-fixture identity tests, and
/// the size-bound/ledger arithmetic.
pub fn core_suite(seed: u64, trials: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();

    out.push(check("r10-golden", 1, seed, || {
        let r = synth(&fixtures::r10_tree()).map_err(|e| e.to_string())?;
        if r.size != 809 {
            return Err(format!("naive size {} ≠ 809", r.size));
        }
        let v = r
            .circuit
            .eval(&all_ones(&fixtures::r10()))
            .map_err(|e| e.to_string())?;
        if v != rat(162) {
            return Err(format!("all-ones value {v} ≠ 162"));
        }
        Ok(())
    }));

    for l in 3..=7usize {
        out.push(check(&format!("graphic-k{l}"), 1, seed, || {
            let g = fixtures::k_graph(l);
            let r = synth(&fixtures::k_graphic_tree(l)).map_err(|e| e.to_string())?;
            let m = g.to_matroid().map_err(|e| e.to_string())?;
            let v = r.circuit.eval(&all_ones(&m)).map_err(|e| e.to_string())?;
            let cayley = BigInt::from(l).pow(l as u32 - 2);
            let kirchhoff = kirchhoff_count(&g).map_err(|e| e.to_string())?;
            if kirchhoff != cayley {
                return Err(format!("kirchhoff {kirchhoff} ≠ cayley {cayley}"));
            }
            if l <= 6 {
                let enumerated = m.basis_count().map_err(|e| e.to_string())?;
                if BigInt::from(enumerated) != cayley {
                    return Err(format!("enumeration {enumerated} ≠ {cayley}"));
                }
            }
            if v != Rat::from_integer(cayley.clone()) {
                return Err(format!("circuit value {v} ≠ {cayley}"));
            }
            let n = m.n();
            if 2 * r.size > n * n * n {
                return Err(format!("size {} exceeds n³/2 = {}", r.size, n * n * n / 2));
            }
            Ok(())
        }));
    }

    for fixture in fixtures::suite_fixtures() {
        out.push(check(
            &format!("identity-{}", fixture.name),
            trials,
            seed,
            || {
                let m = fixture.tree.recompose().map_err(|e| e.to_string())?;
                let r = synth(&fixture.tree).map_err(|e| e.to_string())?;
                let v = identity_test(&r.circuit, &m, trials, seed);
                if v.pass {
                    Ok(())
                } else {
                    let f = v.failure.unwrap();
                    Err(format!(
                        "point={} expected={} got={}",
                        f.point, f.expected, f.got
                    ))
                }
            },
        ));
    }

    for fixture in fixtures::suite_fixtures() {
        out.push(check(
            &format!("size-bound-{}", fixture.name),
            1,
            seed,
            || {
                let r = synth(&fixture.tree).map_err(|e| e.to_string())?;
                if r.size > r.bound {
                    return Err(format!("size {} > n³ = {}", r.size, r.bound));
                }
                if r.ledger_total() != r.size as i64 {
                    return Err(format!(
                        "ledger total {} ≠ size {}",
                        r.ledger_total(),
                        r.size
                    ));
                }
                for e in &r.ledger {
                    let ok = match e.rule {
                        Rule::OneSum => e.gates == 1,
                        Rule::TwoSum => e.gates == 2,
                        Rule::DualWrap { n } => e.gates == 2 * n as i64,
                        Rule::StarMeshStep { live } => {
                            let l = live as i64;
                            e.gates <= (l - 2) + 3 * (l - 1) * (l - 2) / 2 + 1
                        }
                        Rule::ParallelMerge { class_size } => e.gates == class_size as i64 - 1,
                        Rule::NaiveLeaf { bases, rank } => {
                            e.gates == (bases * (rank - 1) + bases - 1) as i64
                        }
                        Rule::BaseEdge => e.gates <= 1,
                        Rule::DeltaSplice { .. } => e.gates <= 1,
                        Rule::ZeroRewrite => e.gates <= 0,
                    };
                    if !ok {
                        return Err(format!(
                            "ledger entry {:?} with {} gates breaks its rule arithmetic",
                            e.rule, e.gates
                        ));
                    }
                }
                Ok(())
            },
        ));
    }

    out
}

/// Tropicalized circuits against the greedy maximum-weight-basis oracle.
pub fn tropical_suite(seed: u64, trials: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for fixture in fixtures::suite_fixtures() {
        out.push(check(
            &format!("tropical-{}", fixture.name),
            trials,
            seed,
            || {
                let m = fixture.tree.recompose().map_err(|e| e.to_string())?;
                let r = synth(&fixture.tree).map_err(|e| e.to_string())?;
                let t = tropicalize(&r.circuit);
                if t.size() != r.circuit.size() {
                    return Err("tropicalization changed the size".into());
                }
                for w in integer_weights(m.ground(), trials, seed) {
                    let (_, best) = greedy_max_basis(&m, &w).map_err(|e| e.to_string())?;
                    let assignment: BTreeMap<String, Rat> =
                        w.iter().map(|(k, v)| (k.clone(), rat(*v))).collect();
                    let got = t.eval(&assignment).map_err(|e| e.to_string())?;
                    if got != rat(best) {
                        return Err(format!(
                            "weights={w:?} greedy={best} tropical={got}"
                        ));
                    }
                }
                Ok(())
            },
        ));
    }
    out.extend(relu_checks(seed, trials));
    out
}

fn relu_checks(seed: u64, trials: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for fixture in fixtures::suite_fixtures() {
        out.push(check(
            &format!("relu-{}", fixture.name),
            trials,
            seed,
            || {
                let m = fixture.tree.recompose().map_err(|e| e.to_string())?;
                let r = synth(&fixture.tree).map_err(|e| e.to_string())?;
                let t = tropicalize(&r.circuit);
                let net = lower_to_relu(&t);
                if net.size() > 3 * t.size() {
                    return Err(format!(
                        "{} neurons exceed 3·size = {}",
                        net.size(),
                        3 * t.size()
                    ));
                }
                if !net.weights_in_unit_range() {
                    return Err("weights leave {−1,0,1}".into());
                }
                for w in integer_weights(m.ground(), trials, seed) {
                    let assignment: BTreeMap<String, Rat> =
                        w.iter().map(|(k, v)| (k.clone(), rat(*v))).collect();
                    let expect = t.eval(&assignment).map_err(|e| e.to_string())?;
                    let got = net.forward(&assignment).map_err(|e| e.to_string())?;
                    if got != expect {
                        return Err(format!(
                            "weights={w:?} tropical={expect} forward={got}"
                        ));
                    }
                }
                Ok(())
            },
        ));
    }
    out
}

/// The star-mesh determinant identity, Maurer's theorem, and Camion signing.
pub fn matrices_suite(seed: u64, trials: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();

    out.push(check("star-mesh-identity", trials.max(100), seed, || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for trial in 0..trials.max(100) {
            let r = rng.random_range(2..=5usize);
            let n = rng.random_range(r..=8usize);
            let mut a = IntMatrix::zeros(r, n);
            for i in 0..r {
                for j in 0..n {
                    a.set(i, j, rng.random_range(-1..=1i64));
                }
            }
            // nonzero last row
            if (0..n).all(|j| a.at(r - 1, j) == 0) {
                let j = rng.random_range(0..n);
                a.set(r - 1, j, if rng.random_range(0..2) == 0 { 1 } else { -1 });
            }
            let z: Vec<Rat> = (0..n)
                .map(|_| {
                    Rat::new(
                        BigInt::from(rng.random_range(1..=10_000i64)),
                        BigInt::from(rng.random_range(1..=10_000i64)),
                    )
                })
                .collect();
            let lhs = weighted_gram(&a, &z).det();
            let sm = star_mesh(&a, r - 1).map_err(|e| e.to_string())?;
            let (y, zp) = star_mesh_weights(&sm, &z);
            let rhs = y * weighted_gram(&sm.matrix, &zp).det();
            if lhs != rhs {
                return Err(format!("trial {trial}: det identity fails on {a:?} z={z:?}"));
            }
        }
        Ok(())
    }));

    for l in 3..=6usize {
        out.push(check(&format!("maurer-k{l}"), 1, seed, || {
            let g = fixtures::k_graph(l);
            let m = g.to_matroid().map_err(|e| e.to_string())?;
            let signed = camion_sign(&g.reduced_incidence()).map_err(|e| e.to_string())?;
            let ones: Vec<Rat> = vec![rat(1); m.n()];
            let det = weighted_gram(signed.matrix(), &ones).det();
            let count = m.basis_count().map_err(|e| e.to_string())?;
            if det != rat(count as i64) {
                return Err(format!("det {det} ≠ basis count {count}"));
            }
            Ok(())
        }));
    }
    out.push(check("maurer-r10", 1, seed, || {
        let m = fixtures::r10();
        let rep = m.binary_rep().map_err(|e| e.to_string())?;
        let signed = camion_sign(&rep).map_err(|e| e.to_string())?;
        let ones: Vec<Rat> = vec![rat(1); 10];
        let det = weighted_gram(signed.matrix(), &ones).det();
        if det != rat(162) {
            return Err(format!("det {det} ≠ 162"));
        }
        Ok(())
    }));

    for l in 3..=6usize {
        out.push(check(&format!("signing-k{l}"), 1, seed, || {
            let signed =
                camion_sign(&fixtures::k_graph(l).reduced_incidence()).map_err(|e| e.to_string())?;
            if !is_tu(&signed).map_err(|e| e.to_string())? {
                return Err("signed matrix is not TU".into());
            }
            Ok(())
        }));
    }
    out.push(check("signing-r10", 1, seed, || {
        let rep = fixtures::r10().binary_rep().map_err(|e| e.to_string())?;
        let signed = camion_sign(&rep).map_err(|e| e.to_string())?;
        if !is_tu(&signed).map_err(|e| e.to_string())? {
            return Err("signed matrix is not TU".into());
        }
        Ok(())
    }));
    out.push(check("signing-f7-rejected", 1, seed, || {
        let rep = fixtures::f7().binary_rep().map_err(|e| e.to_string())?;
        match camion_sign(&rep) {
            Err(crate::linalg::LinalgError::NotRegular(_)) => Ok(()),
            Err(e) => Err(format!("unexpected error {e}")),
            Ok(_) => Err("Fano accepted a TU signing".into()),
        }
    }));

    out
}

/// Structural lemmas: Δ⁺-then-delete, Δ-Y against the Δ-sum with K4, the
/// cut cocircuit of Δ⁺-sums, and the dualization identity at the oracle
/// level.
pub fn structure_suite(seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let k4_tri = |tri: [&str; 3], spokes: [&str; 3]| -> Matroid {
        let labels = [tri[0], tri[1], spokes[0], tri[2], spokes[1], spokes[2]].map(String::from);
        crate::matroid::Graph::complete(4, &labels)
            .unwrap()
            .to_matroid()
            .unwrap()
    };
    let d = ["p".to_string(), "q".to_string(), "r".to_string()];

    out.push(check("delta-plus-then-delete", 1, seed, || {
        for l in [4usize, 5] {
            let m1 = k4_tri(["p", "q", "r"], ["s1", "s2", "s3"]);
            let m2 = fixtures::k_graph_with_triangle(l, ["p", "q", "r"]);
            let m2 = m2.to_matroid().map_err(|e| e.to_string())?;
            let plus = sums::delta_sum_plus(&m1, &m2, &d).map_err(|e| e.to_string())?;
            let deleted = plus.delete_all(&d).map_err(|e| e.to_string())?;
            let plain = sums::delta_sum(&m1, &m2, &d).map_err(|e| e.to_string())?;
            if !deleted.bases_equal(&plain) {
                return Err(format!("Δ⁺ minus copies ≠ Δ for K{l}"));
            }
        }
        Ok(())
    }));

    out.push(check("delta-wye-k4", 1, seed, || {
        delta_wye_instance(&k4_tri(["d1", "d2", "d3"], ["s1", "s2", "s3"]))
    }));
    out.push(check("delta-wye-k5", 1, seed, || {
        let g = fixtures::k_graph_with_triangle(5, ["d1", "d2", "d3"]);
        delta_wye_instance(&g.to_matroid().map_err(|e| e.to_string())?)
    }));

    out.push(check("cut-cocircuit", 1, seed, || {
        for l in [4usize, 5] {
            let m1 = k4_tri(["p", "q", "r"], ["s1", "s2", "s3"]);
            let kl = fixtures::k_graph_with_triangle(l, ["p", "q", "r"]);
            let star: Vec<String> = kl
                .edges()
                .iter()
                .filter(|e| e.u == l - 1 || e.v == l - 1)
                .map(|e| e.label.clone())
                .collect();
            let m = sums::delta_sum_plus(&m1, &kl.to_matroid().map_err(|e| e.to_string())?, &d)
                .map_err(|e| e.to_string())?;
            if !m.is_cocircuit(&star).map_err(|e| e.to_string())? {
                return Err(format!("edge star of v{l} is not a cocircuit"));
            }
        }
        Ok(())
    }));

    for fixture in fixtures::suite_fixtures() {
        out.push(check(
            &format!("dual-identity-{}", fixture.name),
            10,
            seed,
            || {
                let m = fixture.tree.recompose().map_err(|e| e.to_string())?;
                let dual = m.dual().map_err(|e| e.to_string())?;
                for p in positive_points(m.ground(), 10, seed) {
                    let lhs = brute_bgp_eval(&dual, &p.assignment).map_err(|e| e.to_string())?;
                    let prod = p
                        .assignment
                        .values()
                        .fold(rat(1), |acc, v| acc * v);
                    let inv: BTreeMap<String, Rat> = p
                        .assignment
                        .iter()
                        .map(|(k, v)| (k.clone(), v.recip()))
                        .collect();
                    let rhs = prod * brute_bgp_eval(&m, &inv).map_err(|e| e.to_string())?;
                    if lhs != rhs {
                        return Err(format!(
                            "dualization identity fails at {}",
                            crate::verify::format_point_inline(&p.assignment)
                        ));
                    }
                }
                Ok(())
            },
        ));
    }

    out
}

fn delta_wye_instance(m: &Matroid) -> Result<(), String> {
    let d = ["d1".to_string(), "d2".to_string(), "d3".to_string()];
    let y = sums::delta_y_exchange(m, &d).map_err(|e| e.to_string())?;
    // K4 with the triangle labeled so that spoke y_i avoids d_i
    let labels = ["d3", "d2", "y1", "d1", "y2", "y3"].map(String::from);
    let k4 = crate::matroid::Graph::complete(4, &labels)
        .unwrap()
        .to_matroid()
        .map_err(|e| e.to_string())?;
    let s = sums::delta_sum(m, &k4, &d).map_err(|e| e.to_string())?;
    let map: BTreeMap<String, String> = [
        ("d1".to_string(), "y1".to_string()),
        ("d2".to_string(), "y2".to_string()),
        ("d3".to_string(), "y3".to_string()),
    ]
    .into();
    let mapped = y.relabel(&map).map_err(|e| e.to_string())?;
    if !mapped.bases_equal(&s) {
        return Err("Y_D(M) and M ⊕_Δ M(K4) disagree under φ".into());
    }
    Ok(())
}
