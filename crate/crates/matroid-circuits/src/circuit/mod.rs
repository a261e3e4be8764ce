//! The circuit intermediate representation.
//!
//! A `Circuit` is a DAG of input/add/mul/div gates with one designated output
//! and no constants; every coefficient the computed rational function has
//! arises from accumulated additions. Size is the number of non-input gates.
//! Gate fan-out is unrestricted: the synthesizer relies on sharing (a divisor
//! reused by many gates counts once).

pub mod poly;
pub mod relu;
pub mod text;
pub mod tropical;

pub use poly::{expand_symbolic, SparsePolynomial};
pub use relu::{lower_to_relu, NetRef, ReluNetwork};
pub use tropical::{tropicalize, TropGate, TropicalCircuit};

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use thiserror::Error;

use crate::rational::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GateId(pub u32);

impl GateId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gate {
    Input(String),
    Add(GateId, GateId),
    Mul(GateId, GateId),
    Div(GateId, GateId),
}

#[derive(Debug, Error)]
pub enum CircuitError {
    #[error("division by zero at gate g{gate}")]
    DivisionByZero { gate: usize },
    #[error("no value assigned to input {0:?}")]
    MissingVariable(String),
    #[error("formal zero denominator at gate g{gate}")]
    PoleAtZero { gate: usize },
    #[error("elimination reduced the circuit to the constant zero")]
    ZeroCircuit,
    #[error("expansion guard exceeded: {0}")]
    TooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, CircuitError>;

/// A subtraction-free arithmetic circuit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    gates: Vec<Gate>,
    output: GateId,
}

impl Circuit {
    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn output(&self) -> GateId {
        self.output
    }

    /// Number of non-input gates.
    pub fn size(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| !matches!(g, Gate::Input(_)))
            .count()
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    /// Input variable names in gate order.
    pub fn input_vars(&self) -> Vec<String> {
        self.gates
            .iter()
            .filter_map(|g| match g {
                Gate::Input(v) => Some(v.clone()),
                _ => None,
            })
            .collect()
    }

    /// Exact evaluation, gate by gate in topological order.
    pub fn eval(&self, assignment: &BTreeMap<String, Rat>) -> Result<Rat> {
        let mut values: Vec<Rat> = Vec::with_capacity(self.gates.len());
        for (idx, gate) in self.gates.iter().enumerate() {
            let v = match gate {
                Gate::Input(name) => assignment
                    .get(name)
                    .cloned()
                    .ok_or_else(|| CircuitError::MissingVariable(name.clone()))?,
                Gate::Add(a, b) => &values[a.index()] + &values[b.index()],
                Gate::Mul(a, b) => &values[a.index()] * &values[b.index()],
                Gate::Div(a, b) => {
                    let d = &values[b.index()];
                    if d.is_zero() {
                        return Err(CircuitError::DivisionByZero { gate: idx });
                    }
                    &values[a.index()] / d
                }
            };
            values.push(v);
        }
        Ok(values[self.output.index()].clone())
    }

    /// Evaluation from a label → value list.
    pub fn eval_pairs(&self, pairs: &[(String, Rat)]) -> Result<Rat> {
        let map: BTreeMap<String, Rat> = pairs.iter().cloned().collect();
        self.eval(&map)
    }

    /// Retains only gates reachable from the output, preserving order.
    pub fn pruned(&self) -> Circuit {
        let mut live = vec![false; self.gates.len()];
        let mut stack = vec![self.output];
        while let Some(g) = stack.pop() {
            if live[g.index()] {
                continue;
            }
            live[g.index()] = true;
            match &self.gates[g.index()] {
                Gate::Input(_) => {}
                Gate::Add(a, b) | Gate::Mul(a, b) | Gate::Div(a, b) => {
                    stack.push(*a);
                    stack.push(*b);
                }
            }
        }
        let mut remap = vec![GateId(0); self.gates.len()];
        let mut gates = Vec::new();
        for (i, gate) in self.gates.iter().enumerate() {
            if !live[i] {
                continue;
            }
            let mapped = match gate {
                Gate::Input(v) => Gate::Input(v.clone()),
                Gate::Add(a, b) => Gate::Add(remap[a.index()], remap[b.index()]),
                Gate::Mul(a, b) => Gate::Mul(remap[a.index()], remap[b.index()]),
                Gate::Div(a, b) => Gate::Div(remap[a.index()], remap[b.index()]),
            };
            remap[i] = GateId(gates.len() as u32);
            gates.push(mapped);
        }
        Circuit {
            output: remap[self.output.index()],
            gates,
        }
    }

    pub fn depth(&self) -> usize {
        let mut d = vec![0usize; self.gates.len()];
        for (i, gate) in self.gates.iter().enumerate() {
            d[i] = match gate {
                Gate::Input(_) => 0,
                Gate::Add(a, b) | Gate::Mul(a, b) | Gate::Div(a, b) => {
                    1 + d[a.index()].max(d[b.index()])
                }
            };
        }
        d[self.output.index()]
    }
}

/// Incremental circuit builder. Input gates are deduplicated by name.
#[derive(Default, Clone, Debug)]
pub struct CircuitBuilder {
    gates: Vec<Gate>,
    inputs: BTreeMap<String, GateId>,
}

impl CircuitBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn push(&mut self, g: Gate) -> GateId {
        let id = GateId(self.gates.len() as u32);
        self.gates.push(g);
        id
    }

    pub fn input(&mut self, name: &str) -> GateId {
        if let Some(&id) = self.inputs.get(name) {
            return id;
        }
        let id = self.push(Gate::Input(name.to_string()));
        self.inputs.insert(name.to_string(), id);
        id
    }

    pub fn add(&mut self, a: GateId, b: GateId) -> GateId {
        self.push(Gate::Add(a, b))
    }

    pub fn mul(&mut self, a: GateId, b: GateId) -> GateId {
        self.push(Gate::Mul(a, b))
    }

    pub fn div(&mut self, a: GateId, b: GateId) -> GateId {
        self.push(Gate::Div(a, b))
    }

    /// Left-folded sum of one or more gates.
    pub fn add_chain(&mut self, ids: &[GateId]) -> GateId {
        assert!(!ids.is_empty());
        let mut acc = ids[0];
        for &x in &ids[1..] {
            acc = self.add(acc, x);
        }
        acc
    }

    /// Left-folded product of one or more gates.
    pub fn mul_chain(&mut self, ids: &[GateId]) -> GateId {
        assert!(!ids.is_empty());
        let mut acc = ids[0];
        for &x in &ids[1..] {
            acc = self.mul(acc, x);
        }
        acc
    }

    /// Number of non-input gates so far.
    pub fn size(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| !matches!(g, Gate::Input(_)))
            .count()
    }

    /// Copies another circuit's gates into this builder. Input gates unify
    /// with existing inputs by name unless overridden, in which case the
    /// override gate stands in for the variable. Returns the mapped output.
    pub fn splice(&mut self, c: &Circuit, overrides: &BTreeMap<String, GateId>) -> GateId {
        let mut remap: Vec<GateId> = Vec::with_capacity(c.gates.len());
        for gate in &c.gates {
            let id = match gate {
                Gate::Input(v) => match overrides.get(v) {
                    Some(&o) => o,
                    None => self.input(v),
                },
                Gate::Add(a, b) => self.add(remap[a.index()], remap[b.index()]),
                Gate::Mul(a, b) => self.mul(remap[a.index()], remap[b.index()]),
                Gate::Div(a, b) => self.div(remap[a.index()], remap[b.index()]),
            };
            remap.push(id);
        }
        remap[c.output.index()]
    }

    pub fn finish(self, output: GateId) -> Circuit {
        assert!(output.index() < self.gates.len());
        Circuit {
            gates: self.gates,
            output,
        }
    }
}

/// Splices bound subcircuits into `c` at their variables, each instantiated
/// once and shared across every occurrence. The result's size is the sum of
/// the sizes.
pub fn substitute(c: &Circuit, bindings: &BTreeMap<String, Circuit>) -> Circuit {
    let mut b = CircuitBuilder::new();
    let mut overrides = BTreeMap::new();
    for (var, sub) in bindings {
        let out = b.splice(sub, &BTreeMap::new());
        overrides.insert(var.clone(), out);
    }
    let out = b.splice(c, &overrides);
    b.finish(out)
}

/// Rewrites the circuit with the given variables as formal zeros:
/// `0+a → a`, `0·a → 0`, `0/a → 0`, and `a/0` is a hard `PoleAtZero` error.
/// The result contains no gate mentioning a zeroed variable and evaluates
/// like `c` with zeros substituted wherever `c`'s evaluation was defined.
pub fn eliminate_zero(c: &Circuit, zeroed: &BTreeSet<String>) -> Result<Circuit> {
    let mut b = CircuitBuilder::new();
    let mut mapped: Vec<Option<GateId>> = Vec::with_capacity(c.gates.len());
    for (idx, gate) in c.gates.iter().enumerate() {
        let m = match gate {
            Gate::Input(v) => {
                if zeroed.contains(v) {
                    None
                } else {
                    Some(b.input(v))
                }
            }
            Gate::Add(x, y) => match (mapped[x.index()], mapped[y.index()]) {
                (None, None) => None,
                (Some(a), None) | (None, Some(a)) => Some(a),
                (Some(a), Some(c)) => Some(b.add(a, c)),
            },
            Gate::Mul(x, y) => match (mapped[x.index()], mapped[y.index()]) {
                (Some(a), Some(c)) => Some(b.mul(a, c)),
                _ => None,
            },
            Gate::Div(x, y) => match (mapped[x.index()], mapped[y.index()]) {
                (_, None) => return Err(CircuitError::PoleAtZero { gate: idx }),
                (None, Some(_)) => None,
                (Some(a), Some(c)) => Some(b.div(a, c)),
            },
        };
        mapped.push(m);
    }
    let out = mapped[c.output.index()].ok_or(CircuitError::ZeroCircuit)?;
    Ok(b.finish(out).pruned())
}

/// The naive circuit `Σ_B Π_{e∈B} x_e` over an explicit basis list:
/// `k−1` multiplications per basis plus `|bases|−1` additions, for a total
/// size of `|bases|·(k−1) + |bases| − 1`.
pub fn naive_from_bases(bases: &[Vec<String>]) -> Result<Circuit> {
    if bases.is_empty() {
        return Err(CircuitError::Parse("no bases".into()));
    }
    let k = bases[0].len();
    if k == 0 || bases.iter().any(|b| b.len() != k) {
        return Err(CircuitError::Parse(
            "bases must be non-empty and of uniform size".into(),
        ));
    }
    let mut sorted: Vec<Vec<String>> = bases.to_vec();
    for b in &mut sorted {
        b.sort();
    }
    sorted.sort();
    let mut builder = CircuitBuilder::new();
    let mut terms = Vec::with_capacity(sorted.len());
    for basis in &sorted {
        let ids: Vec<GateId> = basis.iter().map(|e| builder.input(e)).collect();
        terms.push(builder.mul_chain(&ids));
    }
    let out = builder.add_chain(&terms);
    Ok(builder.finish(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn xy_sum() -> Circuit {
        let mut b = CircuitBuilder::new();
        let x = b.input("x");
        let y = b.input("y");
        let s = b.add(x, y);
        b.finish(s)
    }

    #[test]
    fn eval_add() {
        let c = xy_sum();
        assert_eq!(
            c.eval_pairs(&[("x".into(), rat(2)), ("y".into(), rat(3))])
                .unwrap(),
            rat(5)
        );
        assert_eq!(c.size(), 1);
    }

    #[test]
    fn eval_reports_division_by_zero() {
        let mut b = CircuitBuilder::new();
        let x = b.input("x");
        let y = b.input("y");
        let d = b.div(x, y);
        let c = b.finish(d);
        let err = c
            .eval_pairs(&[("x".into(), rat(1)), ("y".into(), rat(0))])
            .unwrap_err();
        assert!(matches!(err, CircuitError::DivisionByZero { gate: 2 }));
    }

    #[test]
    fn missing_variable_is_named() {
        let c = xy_sum();
        let err = c.eval_pairs(&[("x".into(), rat(1))]).unwrap_err();
        assert!(matches!(err, CircuitError::MissingVariable(v) if v == "y"));
    }

    #[test]
    fn substitute_shares_bound_circuit() {
        // x ↦ (u+v) in x·x: one add, one mul; both mul arms reuse the add
        let mut b = CircuitBuilder::new();
        let x = b.input("x");
        let m = b.mul(x, x);
        let square = b.finish(m);

        let binding = xy_sum();
        let mut map = BTreeMap::new();
        map.insert(
            "x".to_string(),
            substitute_rename(&binding, &[("x", "u"), ("y", "v")]),
        );
        let c = substitute(&square, &map);
        assert_eq!(c.size(), 2);
        let v = c
            .eval_pairs(&[("u".into(), rat(2)), ("v".into(), rat(3))])
            .unwrap();
        assert_eq!(v, rat(25));
    }

    fn substitute_rename(c: &Circuit, renames: &[(&str, &str)]) -> Circuit {
        let mut b = CircuitBuilder::new();
        let mut overrides = BTreeMap::new();
        for (old, new) in renames {
            let id = b.input(new);
            overrides.insert(old.to_string(), id);
        }
        let out = b.splice(c, &overrides);
        b.finish(out).pruned()
    }

    #[test]
    fn eliminate_zero_examples() {
        // (x+y)·z with y zeroed → x·z
        let mut b = CircuitBuilder::new();
        let x = b.input("x");
        let y = b.input("y");
        let z = b.input("z");
        let s = b.add(x, y);
        let m = b.mul(s, z);
        let c = b.finish(m);
        let r = eliminate_zero(&c, &BTreeSet::from(["y".to_string()])).unwrap();
        assert_eq!(r.size(), 1);
        assert_eq!(r.input_vars(), vec!["x".to_string(), "z".to_string()]);
        assert_eq!(
            r.eval_pairs(&[("x".into(), rat(4)), ("z".into(), rat(5))])
                .unwrap(),
            rat(20)
        );

        // x/y with y zeroed → pole
        let mut b = CircuitBuilder::new();
        let x = b.input("x");
        let y = b.input("y");
        let d = b.div(x, y);
        let c = b.finish(d);
        assert!(matches!(
            eliminate_zero(&c, &BTreeSet::from(["y".to_string()])),
            Err(CircuitError::PoleAtZero { .. })
        ));
    }

    #[test]
    fn naive_sizes() {
        let single = naive_from_bases(&[vec!["a".into(), "b".into()]]).unwrap();
        assert_eq!(single.size(), 1);

        let bases: Vec<Vec<String>> = vec![
            vec!["a".into(), "b".into()],
            vec!["a".into(), "c".into()],
            vec!["b".into(), "c".into()],
        ];
        let c = naive_from_bases(&bases).unwrap();
        assert_eq!(c.size(), 3 * 1 + 2);
        let v = c
            .eval_pairs(&[
                ("a".into(), rat(5)),
                ("b".into(), rat(2)),
                ("c".into(), rat(1)),
            ])
            .unwrap();
        assert_eq!(v, rat(5 * 2 + 5 + 2));
    }

    #[test]
    fn positive_points_keep_gates_positive() {
        // subtraction-freeness: all gates positive at positive inputs
        let bases: Vec<Vec<String>> = vec![
            vec!["a".into(), "b".into()],
            vec!["b".into(), "c".into()],
        ];
        let c = naive_from_bases(&bases).unwrap();
        let v = c
            .eval_pairs(&[
                ("a".into(), ratio(1, 7)),
                ("b".into(), ratio(2, 3)),
                ("c".into(), ratio(5, 11)),
            ])
            .unwrap();
        assert!(crate::rational::is_positive(&v));
    }
}
