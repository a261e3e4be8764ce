//! Tropicalization: the gate-for-gate image of a circuit in the (max,+,−)
//! semiring. Addition becomes max, multiplication becomes addition, division
//! becomes subtraction; sizes are preserved exactly.

use std::collections::BTreeMap;

use crate::circuit::{Circuit, CircuitError, Gate, GateId, Result};
use crate::rational::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TropGate {
    Input(String),
    Max(GateId, GateId),
    Add(GateId, GateId),
    Sub(GateId, GateId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalCircuit {
    gates: Vec<TropGate>,
    output: GateId,
}

impl TropicalCircuit {
    pub fn new(gates: Vec<TropGate>, output: GateId) -> Self {
        assert!(output.index() < gates.len());
        TropicalCircuit { gates, output }
    }

    pub fn gates(&self) -> &[TropGate] {
        &self.gates
    }

    pub fn output(&self) -> GateId {
        self.output
    }

    pub fn size(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| !matches!(g, TropGate::Input(_)))
            .count()
    }

    pub fn input_vars(&self) -> Vec<String> {
        self.gates
            .iter()
            .filter_map(|g| match g {
                TropGate::Input(v) => Some(v.clone()),
                _ => None,
            })
            .collect()
    }

    /// Exact (max,+,−) evaluation.
    pub fn eval(&self, assignment: &BTreeMap<String, Rat>) -> Result<Rat> {
        let mut values: Vec<Rat> = Vec::with_capacity(self.gates.len());
        for gate in &self.gates {
            let v = match gate {
                TropGate::Input(name) => assignment
                    .get(name)
                    .cloned()
                    .ok_or_else(|| CircuitError::MissingVariable(name.clone()))?,
                TropGate::Max(a, b) => values[a.index()].clone().max(values[b.index()].clone()),
                TropGate::Add(a, b) => &values[a.index()] + &values[b.index()],
                TropGate::Sub(a, b) => &values[a.index()] - &values[b.index()],
            };
            values.push(v);
        }
        Ok(values[self.output.index()].clone())
    }

    pub fn eval_pairs(&self, pairs: &[(String, Rat)]) -> Result<Rat> {
        let map: BTreeMap<String, Rat> = pairs.iter().cloned().collect();
        self.eval(&map)
    }
}

/// Gate-for-gate tropicalization; the result has the same size.
pub fn tropicalize(c: &Circuit) -> TropicalCircuit {
    let gates = c
        .gates()
        .iter()
        .map(|g| match g {
            Gate::Input(v) => TropGate::Input(v.clone()),
            Gate::Add(a, b) => TropGate::Max(*a, *b),
            Gate::Mul(a, b) => TropGate::Add(*a, *b),
            Gate::Div(a, b) => TropGate::Sub(*a, *b),
        })
        .collect();
    TropicalCircuit::new(gates, c.output())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::CircuitBuilder;
    use crate::rational::rat;

    #[test]
    fn max_of_two() {
        let mut b = CircuitBuilder::new();
        let x = b.input("x");
        let y = b.input("y");
        let s = b.add(x, y);
        let t = tropicalize(&b.finish(s));
        assert_eq!(t.size(), 1);
        assert_eq!(
            t.eval_pairs(&[("x".into(), rat(3)), ("y".into(), rat(5))])
                .unwrap(),
            rat(5)
        );
    }

    #[test]
    fn division_becomes_subtraction() {
        // (x·x + x·y)/x tropicalizes to max(2x, x+y) − x = max(x, y)
        let mut b = CircuitBuilder::new();
        let x = b.input("x");
        let y = b.input("y");
        let xx = b.mul(x, x);
        let xy = b.mul(x, y);
        let s = b.add(xx, xy);
        let d = b.div(s, x);
        let c = b.finish(d);
        let t = tropicalize(&c);
        assert_eq!(t.size(), c.size());
        for (xv, yv) in [(0i64, 0), (3, 5), (5, 3), (-2, -7), (10, -10)] {
            let got = t
                .eval_pairs(&[("x".into(), rat(xv)), ("y".into(), rat(yv))])
                .unwrap();
            assert_eq!(got, rat(xv.max(yv)));
        }
    }

    #[test]
    fn idempotent_addition() {
        // x + x tropicalizes to max(x,x) = x
        let mut b = CircuitBuilder::new();
        let x = b.input("x");
        let s = b.add(x, x);
        let t = tropicalize(&b.finish(s));
        assert_eq!(t.eval_pairs(&[("x".into(), rat(7))]).unwrap(), rat(7));
    }
}
