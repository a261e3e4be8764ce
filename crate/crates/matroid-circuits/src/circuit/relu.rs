//! Lowering tropical circuits to ReLU network descriptions.
//!
//! Values travel between gates as signed linear combinations of rectifier
//! outputs and inputs; add/sub gates merge combinations without any neurons,
//! and each max gate spends exactly three: `max(a,b) = max{0, a−b} +
//! max{0, b} − max{0, −b}`. The final readout is a plain weighted sum. All
//! weights produced this way stay in {−1, 0, 1}.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::circuit::{CircuitError, Result, TropGate, TropicalCircuit};
use crate::rational::Rat;

/// Reference into the network: an input variable or an earlier neuron.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum NetRef {
    Input(usize),
    Neuron(usize),
}

/// A weighted sum used by a neuron or the readout.
pub type LinComb = Vec<(Rat, NetRef)>;

#[derive(Clone, Debug)]
pub struct ReluNetwork {
    pub inputs: Vec<String>,
    /// Each neuron computes `max{0, Σ w_i · ref_i}`.
    pub neurons: Vec<LinComb>,
    pub readout: LinComb,
}

impl ReluNetwork {
    pub fn size(&self) -> usize {
        self.neurons.len()
    }

    /// Exact forward pass.
    pub fn forward(&self, assignment: &BTreeMap<String, Rat>) -> Result<Rat> {
        let inputs: Vec<Rat> = self
            .inputs
            .iter()
            .map(|name| {
                assignment
                    .get(name)
                    .cloned()
                    .ok_or_else(|| CircuitError::MissingVariable(name.clone()))
            })
            .collect::<Result<_>>()?;
        let mut values: Vec<Rat> = Vec::with_capacity(self.neurons.len());
        let eval_comb = |comb: &LinComb, values: &[Rat]| -> Rat {
            comb.iter().fold(Rat::zero(), |acc, (w, r)| {
                let v = match r {
                    NetRef::Input(i) => &inputs[*i],
                    NetRef::Neuron(i) => &values[*i],
                };
                acc + w * v
            })
        };
        for comb in &self.neurons {
            let pre = eval_comb(comb, &values);
            values.push(pre.max(Rat::zero()));
        }
        Ok(eval_comb(&self.readout, &values))
    }

    pub fn forward_pairs(&self, pairs: &[(String, Rat)]) -> Result<Rat> {
        let map: BTreeMap<String, Rat> = pairs.iter().cloned().collect();
        self.forward(&map)
    }

    /// True when every weight lies in {−1, 0, 1}.
    pub fn weights_in_unit_range(&self) -> bool {
        self.neurons
            .iter()
            .chain(std::iter::once(&self.readout))
            .flatten()
            .all(|(w, _)| {
                let one = Rat::from_integer(1.into());
                w == &one || w == &(-one.clone()) || w.is_zero()
            })
    }
}

type Form = BTreeMap<NetRef, Rat>;

fn form_add(a: &Form, b: &Form, sign: i64) -> Form {
    let mut out = a.clone();
    let s = Rat::from_integer(sign.into());
    for (r, w) in b {
        let e = out.entry(*r).or_insert_with(Rat::zero);
        *e += &s * w;
        if e.is_zero() {
            out.remove(r);
        }
    }
    out
}

fn form_neg(a: &Form) -> Form {
    a.iter().map(|(r, w)| (*r, -w.clone())).collect()
}

fn to_comb(f: &Form) -> LinComb {
    f.iter().map(|(r, w)| (w.clone(), *r)).collect()
}

/// Lowers a tropical circuit to a ReLU network computing the same function at
/// every point. Each max gate becomes three neurons; add and sub gates are
/// absorbed into the linear combinations, so the network has at most
/// `3 · size(T)` neurons.
pub fn lower_to_relu(t: &TropicalCircuit) -> ReluNetwork {
    let mut inputs: Vec<String> = Vec::new();
    let mut neurons: Vec<LinComb> = Vec::new();
    let mut forms: Vec<Form> = Vec::with_capacity(t.gates().len());
    for gate in t.gates() {
        let form = match gate {
            TropGate::Input(name) => {
                let idx = inputs.len();
                inputs.push(name.clone());
                Form::from([(NetRef::Input(idx), Rat::from_integer(1.into()))])
            }
            TropGate::Add(a, b) => form_add(&forms[a.index()], &forms[b.index()], 1),
            TropGate::Sub(a, b) => form_add(&forms[a.index()], &forms[b.index()], -1),
            TropGate::Max(a, b) => {
                let fa = &forms[a.index()];
                let fb = &forms[b.index()];
                let n1 = NetRef::Neuron(neurons.len());
                neurons.push(to_comb(&form_add(fa, fb, -1))); // max{0, a−b}
                let n2 = NetRef::Neuron(neurons.len());
                neurons.push(to_comb(fb)); // max{0, b}
                let n3 = NetRef::Neuron(neurons.len());
                neurons.push(to_comb(&form_neg(fb))); // max{0, −b}
                let one = Rat::from_integer(1.into());
                Form::from([(n1, one.clone()), (n2, one.clone()), (n3, -one)])
            }
        };
        forms.push(form);
    }
    ReluNetwork {
        inputs,
        neurons,
        readout: to_comb(&forms[t.output().index()]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{tropicalize, CircuitBuilder};
    use crate::rational::rat;

    #[test]
    fn max_gate_lowers_to_three_neurons() {
        let mut b = CircuitBuilder::new();
        let x = b.input("x");
        let y = b.input("y");
        let s = b.add(x, y);
        let t = tropicalize(&b.finish(s));
        let net = lower_to_relu(&t);
        assert_eq!(net.size(), 3);
        assert!(net.weights_in_unit_range());
        for (xv, yv) in [(3i64, 5), (5, 3), (-2, -7)] {
            let got = net
                .forward_pairs(&[("x".into(), rat(xv)), ("y".into(), rat(yv))])
                .unwrap();
            assert_eq!(got, rat(xv.max(yv)));
        }
    }

    #[test]
    fn chain_cancellation_keeps_unit_weights() {
        // (x·y)/y: the subtraction cancels y's coefficient entirely
        let mut b = CircuitBuilder::new();
        let x = b.input("x");
        let y = b.input("y");
        let m = b.mul(x, y);
        let d = b.div(m, y);
        let t = tropicalize(&b.finish(d));
        let net = lower_to_relu(&t);
        assert_eq!(net.size(), 0);
        assert!(net.weights_in_unit_range());
        assert_eq!(
            net.forward_pairs(&[("x".into(), rat(9)), ("y".into(), rat(-4))])
                .unwrap(),
            rat(9)
        );
    }
}
