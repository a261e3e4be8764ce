//! Line-oriented text formats for circuits, tropical circuits, and ReLU
//! networks.
//!
//! ```text
//! g0 = input x
//! g1 = input y
//! g2 = add g0 g1
//! output g2
//! ```
//!
//! Tropical circuits use `max`/`add`/`sub` gate kinds. ReLU networks list one
//! neuron per line, `n0 = relu 1*x -1*y`, with a final `readout …` line;
//! weights print as exact rationals (`p/q`, or a bare integer).

use std::collections::BTreeMap;

use crate::circuit::{
    Circuit, CircuitBuilder, CircuitError, Gate, GateId, NetRef, ReluNetwork, Result, TropGate,
    TropicalCircuit,
};
use crate::rational::{fmt_rat, parse_rat};

pub fn format_circuit(c: &Circuit) -> String {
    let mut out = String::new();
    for (i, g) in c.gates().iter().enumerate() {
        let line = match g {
            Gate::Input(v) => format!("g{i} = input {v}"),
            Gate::Add(a, b) => format!("g{i} = add g{} g{}", a.index(), b.index()),
            Gate::Mul(a, b) => format!("g{i} = mul g{} g{}", a.index(), b.index()),
            Gate::Div(a, b) => format!("g{i} = div g{} g{}", a.index(), b.index()),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str(&format!("output g{}\n", c.output().index()));
    out
}

pub fn format_tropical(t: &TropicalCircuit) -> String {
    let mut out = String::new();
    for (i, g) in t.gates().iter().enumerate() {
        let line = match g {
            TropGate::Input(v) => format!("g{i} = input {v}"),
            TropGate::Max(a, b) => format!("g{i} = max g{} g{}", a.index(), b.index()),
            TropGate::Add(a, b) => format!("g{i} = add g{} g{}", a.index(), b.index()),
            TropGate::Sub(a, b) => format!("g{i} = sub g{} g{}", a.index(), b.index()),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str(&format!("output g{}\n", t.output().index()));
    out
}

enum AnyGate {
    Input(String),
    Op(&'static str, GateId, GateId),
}

fn parse_lines(text: &str) -> Result<(Vec<AnyGate>, GateId)> {
    let mut ids: BTreeMap<String, GateId> = BTreeMap::new();
    let mut gates: Vec<AnyGate> = Vec::new();
    let mut output: Option<GateId> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: &str| CircuitError::Parse(format!("line {}: {msg}", lineno + 1));
        if let Some(rest) = line.strip_prefix("output ") {
            let id = ids
                .get(rest.trim())
                .copied()
                .ok_or_else(|| err("output references unknown gate"))?;
            output = Some(id);
            continue;
        }
        let (lhs, rhs) = line
            .split_once('=')
            .ok_or_else(|| err("expected 'g<id> = …'"))?;
        let name = lhs.trim().to_string();
        if ids.contains_key(&name) {
            return Err(err("gate redefined"));
        }
        let toks: Vec<&str> = rhs.split_whitespace().collect();
        let gate = match toks.as_slice() {
            ["input", v] => AnyGate::Input((*v).to_string()),
            [kind @ ("add" | "mul" | "div" | "max" | "sub"), a, b] => {
                let ga = ids.get(*a).copied().ok_or_else(|| err("unknown operand"))?;
                let gb = ids.get(*b).copied().ok_or_else(|| err("unknown operand"))?;
                let k = match *kind {
                    "add" => "add",
                    "mul" => "mul",
                    "div" => "div",
                    "max" => "max",
                    "sub" => "sub",
                    _ => unreachable!(),
                };
                AnyGate::Op(k, ga, gb)
            }
            _ => return Err(err("unrecognized gate line")),
        };
        ids.insert(name, GateId(gates.len() as u32));
        gates.push(gate);
    }
    let output = output.ok_or_else(|| CircuitError::Parse("missing output line".into()))?;
    Ok((gates, output))
}

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let (gates, output) = parse_lines(text)?;
    let mut b = CircuitBuilder::new();
    let mut map: Vec<GateId> = Vec::with_capacity(gates.len());
    for g in &gates {
        let id = match g {
            AnyGate::Input(v) => {
                // preserve duplicate input lines as distinct ids only if the
                // file had them; the builder dedups by name, which is the
                // canonical form the serializer emits
                b.input(v)
            }
            AnyGate::Op("add", x, y) => b.add(map[x.index()], map[y.index()]),
            AnyGate::Op("mul", x, y) => b.mul(map[x.index()], map[y.index()]),
            AnyGate::Op("div", x, y) => b.div(map[x.index()], map[y.index()]),
            AnyGate::Op(k, _, _) => {
                return Err(CircuitError::Parse(format!(
                    "gate kind {k:?} is tropical; this file is not a (+,×,/) circuit"
                )))
            }
        };
        map.push(id);
    }
    Ok(b.finish(map[output.index()]))
}

pub fn parse_tropical(text: &str) -> Result<TropicalCircuit> {
    let (gates, output) = parse_lines(text)?;
    let mut out: Vec<TropGate> = Vec::with_capacity(gates.len());
    for g in &gates {
        let t = match g {
            AnyGate::Input(v) => TropGate::Input(v.clone()),
            AnyGate::Op("max", x, y) => TropGate::Max(*x, *y),
            AnyGate::Op("add", x, y) => TropGate::Add(*x, *y),
            AnyGate::Op("sub", x, y) => TropGate::Sub(*x, *y),
            AnyGate::Op(k, _, _) => {
                return Err(CircuitError::Parse(format!(
                    "gate kind {k:?} is rational; this file is not a (max,+,−) circuit"
                )))
            }
        };
        out.push(t);
    }
    Ok(TropicalCircuit::new(out, output))
}

pub fn format_relu(net: &ReluNetwork) -> String {
    let term = |w: &crate::rational::Rat, r: &NetRef| -> String {
        let name = match r {
            NetRef::Input(i) => net.inputs[*i].clone(),
            NetRef::Neuron(i) => format!("n{i}"),
        };
        format!("{}*{}", fmt_rat(w), name)
    };
    let mut out = String::new();
    for (i, comb) in net.neurons.iter().enumerate() {
        let terms: Vec<String> = comb.iter().map(|(w, r)| term(w, r)).collect();
        out.push_str(&format!("n{i} = relu {}\n", terms.join(" ")));
    }
    let terms: Vec<String> = net.readout.iter().map(|(w, r)| term(w, r)).collect();
    out.push_str(&format!("readout {}\n", terms.join(" ")));
    out
}

pub fn parse_relu(text: &str) -> Result<ReluNetwork> {
    let mut inputs: Vec<String> = Vec::new();
    let mut neurons: Vec<Vec<(crate::rational::Rat, NetRef)>> = Vec::new();
    let mut readout = None;
    let mut parse_terms = |toks: &[&str], defined: usize| -> Result<Vec<(crate::rational::Rat, NetRef)>> {
        let mut comb = Vec::new();
        for t in toks {
            let (w, name) = t
                .split_once('*')
                .ok_or_else(|| CircuitError::Parse(format!("bad term {t:?}")))?;
            let weight =
                parse_rat(w).map_err(CircuitError::Parse)?;
            let r = if let Some(num) = name.strip_prefix('n') {
                match num.parse::<usize>() {
                    Ok(i) if i < defined => NetRef::Neuron(i),
                    _ => input_ref(&mut inputs, name),
                }
            } else {
                input_ref(&mut inputs, name)
            };
            comb.push((weight, r));
        }
        Ok(comb)
    };
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("readout") {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            readout = Some(parse_terms(&toks, neurons.len())?);
            continue;
        }
        let (_lhs, rhs) = line.split_once('=').ok_or_else(|| {
            CircuitError::Parse(format!("line {}: expected 'n<id> = relu …'", lineno + 1))
        })?;
        let toks: Vec<&str> = rhs.split_whitespace().collect();
        if toks.first() != Some(&"relu") {
            return Err(CircuitError::Parse(format!(
                "line {}: expected relu neuron",
                lineno + 1
            )));
        }
        let comb = parse_terms(&toks[1..], neurons.len())?;
        neurons.push(comb);
    }
    Ok(ReluNetwork {
        inputs,
        neurons,
        readout: readout.ok_or_else(|| CircuitError::Parse("missing readout line".into()))?,
    })
}

fn input_ref(inputs: &mut Vec<String>, name: &str) -> NetRef {
    if let Some(i) = inputs.iter().position(|x| x == name) {
        NetRef::Input(i)
    } else {
        inputs.push(name.to_string());
        NetRef::Input(inputs.len() - 1)
    }
}

/// Point files: one `<var> <rational>` pair per line.
pub fn parse_point(text: &str) -> Result<BTreeMap<String, crate::rational::Rat>> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(var), Some(val), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(CircuitError::Parse(format!(
                "line {}: expected '<var> <value>'",
                lineno + 1
            )));
        };
        let v = parse_rat(val).map_err(CircuitError::Parse)?;
        out.insert(var.to_string(), v);
    }
    Ok(out)
}

pub fn format_point(assignment: &BTreeMap<String, crate::rational::Rat>) -> String {
    let mut out = String::new();
    for (k, v) in assignment {
        out.push_str(&format!("{k} {}\n", fmt_rat(v)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{naive_from_bases, tropicalize};
    use crate::rational::rat;

    #[test]
    fn circuit_round_trip_is_gate_identical() {
        let bases: Vec<Vec<String>> = vec![
            vec!["a".into(), "b".into()],
            vec!["a".into(), "c".into()],
            vec!["b".into(), "c".into()],
        ];
        let c = naive_from_bases(&bases).unwrap();
        let text = format_circuit(&c);
        let back = parse_circuit(&text).unwrap();
        assert_eq!(c, back);
    }

    #[test]
    fn tropical_round_trip() {
        let bases: Vec<Vec<String>> =
            vec![vec!["a".into(), "b".into()], vec!["b".into(), "c".into()]];
        let t = tropicalize(&naive_from_bases(&bases).unwrap());
        let back = parse_tropical(&format_tropical(&t)).unwrap();
        assert_eq!(t, back);
    }

    #[test]
    fn rational_parser_rejects_tropical_gates() {
        let text = "g0 = input x\ng1 = max g0 g0\noutput g1\n";
        assert!(parse_circuit(text).is_err());
        assert!(parse_tropical(text).is_ok());
    }

    #[test]
    fn relu_round_trip_preserves_forward() {
        let bases: Vec<Vec<String>> =
            vec![vec!["a".into(), "b".into()], vec!["b".into(), "c".into()]];
        let t = tropicalize(&naive_from_bases(&bases).unwrap());
        let net = crate::circuit::lower_to_relu(&t);
        let back = parse_relu(&format_relu(&net)).unwrap();
        let point = [
            ("a".to_string(), rat(4)),
            ("b".to_string(), rat(-1)),
            ("c".to_string(), rat(2)),
        ];
        assert_eq!(
            net.forward_pairs(&point).unwrap(),
            back.forward_pairs(&point).unwrap()
        );
    }

    #[test]
    fn point_round_trip() {
        let text = "a 3\nb 5/7\n";
        let p = parse_point(text).unwrap();
        assert_eq!(p["a"], rat(3));
        assert_eq!(format_point(&p), text);
    }
}
