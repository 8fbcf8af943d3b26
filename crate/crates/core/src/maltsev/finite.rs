//! Brute-force checking of identities in small finite algebras.

use std::collections::HashMap;

use super::condition::{parse_condition, CondTerm, MaltsevCondition};
use crate::error::{Error, Result};

type Op<'a> = Box<dyn Fn(&[usize]) -> usize + Send + Sync + 'a>;

/// A finite algebra on `{0, …, size-1}` with named operations.
pub struct FiniteAlgebra<'a> {
    size: usize,
    ops: HashMap<String, (usize, Op<'a>)>,
}

impl<'a> FiniteAlgebra<'a> {
    pub fn new(size: usize) -> Self {
        FiniteAlgebra {
            size,
            ops: HashMap::new(),
        }
    }

    pub fn with_op(mut self, name: &str, arity: usize, op: impl Fn(&[usize]) -> usize + Send + Sync + 'a) -> Self {
        self.ops.insert(name.to_string(), (arity, Box::new(op)));
        self
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn eval(&self, term: &CondTerm, valuation: &HashMap<&str, usize>) -> Result<usize> {
        match term {
            CondTerm::Var(v) => valuation
                .get(v.as_str())
                .copied()
                .ok_or_else(|| Error::UnboundVariable(v.clone())),
            CondTerm::App(s, args) => {
                let (arity, op) = self.ops.get(s).ok_or_else(|| Error::UnassignedSymbol(s.clone()))?;
                if *arity != args.len() {
                    return Err(Error::InconsistentArity {
                        symbol: s.clone(),
                        expected: *arity,
                        found: args.len(),
                    });
                }
                let vals = args
                    .iter()
                    .map(|a| self.eval(a, valuation))
                    .collect::<Result<Vec<_>>>()?;
                Ok(op(&vals))
            }
        }
    }
}

/// A failing instance: which identity, and the valuation that breaks it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub identity: usize,
    pub valuation: Vec<(String, usize)>,
}

/// Tries every valuation of every identity; `None` means all identities hold.
pub fn find_counterexample(cond: &MaltsevCondition, alg: &FiniteAlgebra<'_>) -> Result<Option<Counterexample>> {
    for (n, id) in cond.identities.iter().enumerate() {
        let mut vars = id.lhs.variables();
        for v in id.rhs.variables() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        let mut digits = vec![0usize; vars.len()];
        loop {
            let valuation: HashMap<&str, usize> = vars.iter().copied().zip(digits.iter().copied()).collect();
            if alg.eval(&id.lhs, &valuation)? != alg.eval(&id.rhs, &valuation)? {
                return Ok(Some(Counterexample {
                    identity: n,
                    valuation: vars.iter().map(|v| v.to_string()).zip(digits).collect(),
                }));
            }
            let Some(p) = digits.iter().rposition(|&d| d + 1 < alg.size) else {
                break;
            };
            digits[p] += 1;
            digits[p + 1..].iter_mut().for_each(|d| *d = 0);
        }
    }
    Ok(None)
}

/// The k-ary weak near-unanimity identities for `symbol`:
/// idempotence and `symbol(y,x,…,x) = symbol(x,y,x,…,x) = … = symbol(x,…,x,y)`.
pub fn wnu_identities(symbol: &str, k: usize) -> Result<MaltsevCondition> {
    let row = |odd: Option<usize>| {
        let args: Vec<&str> = (0..k).map(|i| if Some(i) == odd { "y" } else { "x" }).collect();
        format!("{symbol}({})", args.join(","))
    };
    let mut text = format!("{} = x", row(None));
    for i in 0..k.saturating_sub(1) {
        text.push_str(&format!("; {} = {}", row(Some(i)), row(Some(i + 1))));
    }
    parse_condition(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wnu_identity_text() {
        let c = wnu_identities("w", 3).unwrap();
        assert_eq!(c.to_string(), "w(x,x,x) = x; w(y,x,x) = w(x,y,x); w(x,y,x) = w(x,x,y)");
    }

    #[test]
    fn parity_is_a_3_wnu() {
        let z2 = FiniteAlgebra::new(2).with_op("w", 3, |a| (a[0] + a[1] + a[2]) % 2);
        assert_eq!(
            find_counterexample(&wnu_identities("w", 3).unwrap(), &z2).unwrap(),
            None
        );
    }

    #[test]
    fn first_projection_is_not_a_wnu() {
        let p = FiniteAlgebra::new(2).with_op("w", 3, |a| a[0]);
        let cx = find_counterexample(&wnu_identities("w", 3).unwrap(), &p)
            .unwrap()
            .unwrap();
        assert_eq!(cx.identity, 1);
    }

    #[test]
    fn majority_is_a_wnu_at_every_arity() {
        for k in 3..7 {
            let maj = FiniteAlgebra::new(2).with_op("w", k, move |a| usize::from(a.iter().sum::<usize>() * 2 > k));
            assert_eq!(
                find_counterexample(&wnu_identities("w", k).unwrap(), &maj).unwrap(),
                None
            );
        }
    }

    #[test]
    fn missing_operation() {
        let empty = FiniteAlgebra::new(2);
        assert!(matches!(
            find_counterexample(&wnu_identities("w", 3).unwrap(), &empty),
            Err(Error::UnassignedSymbol(_))
        ));
    }
}
