//! Tiny-scale symbolic expansion of circuits into quotient normal form.
//!
//! A subtraction-free circuit computes a quotient of two polynomials with
//! strictly positive integer coefficients. This module expands that pair
//! cancellation-free (`x/x` expands to `(x, x)`, never `(1, 1)`), guarded to
//! small circuits; it exists as an oracle for tropicalization, not as a
//! normal form.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::circuit::{Circuit, CircuitError, Gate, Result};
use crate::rational::Rat;

/// Guard: largest circuit size expanded symbolically.
pub const EXPAND_MAX_SIZE: usize = 60;
/// Guard: largest total degree allowed to appear during expansion.
pub const EXPAND_MAX_DEGREE: u32 = 12;

/// Multivariate polynomial with positive integer coefficients, exponents
/// indexed by a shared sorted variable list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePolynomial {
    pub vars: Vec<String>,
    pub terms: BTreeMap<Vec<u32>, BigUint>,
}

impl SparsePolynomial {
    fn constant_one(vars: &[String]) -> Self {
        SparsePolynomial {
            vars: vars.to_vec(),
            terms: BTreeMap::from([(vec![0; vars.len()], BigUint::from(1u32))]),
        }
    }

    fn variable(vars: &[String], idx: usize) -> Self {
        let mut exp = vec![0u32; vars.len()];
        exp[idx] = 1;
        SparsePolynomial {
            vars: vars.to_vec(),
            terms: BTreeMap::from([(exp, BigUint::from(1u32))]),
        }
    }

    fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            *terms.entry(e.clone()).or_insert_with(BigUint::zero) += c;
        }
        SparsePolynomial {
            vars: self.vars.clone(),
            terms,
        }
    }

    fn mul(&self, other: &Self) -> Result<Self> {
        let mut terms: BTreeMap<Vec<u32>, BigUint> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                if e.iter().sum::<u32>() > EXPAND_MAX_DEGREE {
                    return Err(CircuitError::TooLarge(format!(
                        "total degree exceeds {EXPAND_MAX_DEGREE}"
                    )));
                }
                *terms.entry(e).or_insert_with(BigUint::zero) += c1 * c2;
            }
        }
        Ok(SparsePolynomial {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// Tropical value of this polynomial at `w`: the maximum over monomials
    /// of the exponent-weighted sum, ignoring coefficients.
    pub fn tropical_value(&self, w: &BTreeMap<String, Rat>) -> Result<Rat> {
        let vals: Vec<Rat> = self
            .vars
            .iter()
            .map(|v| {
                w.get(v)
                    .cloned()
                    .ok_or_else(|| CircuitError::MissingVariable(v.clone()))
            })
            .collect::<Result<_>>()?;
        self.terms
            .keys()
            .map(|e| {
                e.iter()
                    .zip(&vals)
                    .fold(Rat::zero(), |acc, (&k, v)| acc + v * Rat::from_integer(k.into()))
            })
            .max()
            .ok_or_else(|| CircuitError::Parse("empty polynomial".into()))
    }

    /// Exact evaluation including coefficients.
    pub fn eval(&self, w: &BTreeMap<String, Rat>) -> Result<Rat> {
        let vals: Vec<Rat> = self
            .vars
            .iter()
            .map(|v| {
                w.get(v)
                    .cloned()
                    .ok_or_else(|| CircuitError::MissingVariable(v.clone()))
            })
            .collect::<Result<_>>()?;
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = Rat::from_integer(num_bigint::BigInt::from(c.clone()));
            for (&k, v) in e.iter().zip(&vals) {
                for _ in 0..k {
                    term *= v;
                }
            }
            acc += term;
        }
        Ok(acc)
    }
}

/// Expands a circuit into a cancellation-free (numerator, denominator) pair
/// with positive integer coefficients. Guarded by size and total degree.
pub fn expand_symbolic(c: &Circuit) -> Result<(SparsePolynomial, SparsePolynomial)> {
    if c.size() > EXPAND_MAX_SIZE {
        return Err(CircuitError::TooLarge(format!(
            "circuit size {} exceeds {EXPAND_MAX_SIZE}",
            c.size()
        )));
    }
    let mut vars = c.input_vars();
    vars.sort();
    vars.dedup();
    let mut pairs: Vec<(SparsePolynomial, SparsePolynomial)> = Vec::with_capacity(c.gates().len());
    for gate in c.gates() {
        let pq = match gate {
            Gate::Input(v) => {
                let idx = vars.binary_search(v).expect("collected above");
                (
                    SparsePolynomial::variable(&vars, idx),
                    SparsePolynomial::constant_one(&vars),
                )
            }
            Gate::Add(a, b) => {
                let (p1, q1) = &pairs[a.index()];
                let (p2, q2) = &pairs[b.index()];
                (p1.mul(q2)?.add(&p2.mul(q1)?), q1.mul(q2)?)
            }
            Gate::Mul(a, b) => {
                let (p1, q1) = &pairs[a.index()];
                let (p2, q2) = &pairs[b.index()];
                (p1.mul(p2)?, q1.mul(q2)?)
            }
            Gate::Div(a, b) => {
                let (p1, q1) = &pairs[a.index()];
                let (p2, q2) = &pairs[b.index()];
                (p1.mul(q2)?, q1.mul(p2)?)
            }
        };
        pairs.push(pq);
    }
    Ok(pairs[c.output().index()].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::CircuitBuilder;
    use crate::rational::rat;

    #[test]
    fn sum_expands_with_unit_denominator() {
        let mut b = CircuitBuilder::new();
        let x = b.input("x");
        let y = b.input("y");
        let s = b.add(x, y);
        let (p, q) = expand_symbolic(&b.finish(s)).unwrap();
        assert_eq!(p.terms.len(), 2);
        assert_eq!(q.terms.len(), 1);
        assert_eq!(q.total_degree(), 0);
    }

    #[test]
    fn x_over_x_is_not_cancelled() {
        let mut b = CircuitBuilder::new();
        let x = b.input("x");
        let d = b.div(x, x);
        let (p, q) = expand_symbolic(&b.finish(d)).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.total_degree(), 1);
    }

    #[test]
    fn coefficients_accumulate_from_additions() {
        let mut b = CircuitBuilder::new();
        let x = b.input("x");
        let s = b.add(x, x);
        let (p, _) = expand_symbolic(&b.finish(s)).unwrap();
        assert_eq!(p.terms.values().next().unwrap(), &BigUint::from(2u32));
    }

    #[test]
    fn degree_guard_fires() {
        let mut b = CircuitBuilder::new();
        let x = b.input("x");
        let mut acc = x;
        for _ in 0..13 {
            acc = b.mul(acc, x);
        }
        assert!(matches!(
            expand_symbolic(&b.finish(acc)),
            Err(CircuitError::TooLarge(_))
        ));
    }

    #[test]
    fn quotient_matches_circuit_value() {
        // one star-mesh step on the triangle: f = (a+b)·(c + a·b/(a+b))
        let mut b = CircuitBuilder::new();
        let a = b.input("a");
        let bb = b.input("b");
        let c = b.input("c");
        let y = b.add(a, bb);
        let m = b.mul(a, bb);
        let d = b.div(m, y);
        let s = b.add(c, d);
        let f = b.mul(y, s);
        let circ = b.finish(f);
        let (p, q) = expand_symbolic(&circ).unwrap();
        // denominator is (a+b), not cancelled
        assert_eq!(q.total_degree(), 1);
        let w: BTreeMap<String, Rat> = [
            ("a".to_string(), rat(5)),
            ("b".to_string(), rat(7)),
            ("c".to_string(), rat(11)),
        ]
        .into();
        let direct = circ.eval(&w).unwrap();
        let expanded = p.eval(&w).unwrap() / q.eval(&w).unwrap();
        assert_eq!(direct, expanded);
        // ab + ac + bc at (5,7,11)
        assert_eq!(direct, rat(5 * 7 + 5 * 11 + 7 * 11));
    }
}
