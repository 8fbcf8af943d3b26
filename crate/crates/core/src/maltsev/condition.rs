use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::term::Parser;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OpSymbol {
    pub name: String,
    pub arity: usize,
}

/// A term of a Maltsev condition: a variable or an operation symbol applied
/// to arguments. Composition is allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CondTerm {
    Var(String),
    App(String, Vec<CondTerm>),
}

impl CondTerm {
    pub fn var(name: &str) -> Self {
        CondTerm::Var(name.to_string())
    }

    pub fn app(symbol: &str, args: Vec<CondTerm>) -> Self {
        CondTerm::App(symbol.to_string(), args)
    }

    /// A variable, or a symbol applied to variables only.
    pub fn is_linear(&self) -> bool {
        match self {
            CondTerm::Var(_) => true,
            CondTerm::App(_, args) => args.iter().all(|a| matches!(a, CondTerm::Var(_))),
        }
    }

    pub fn variables(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            CondTerm::Var(v) => {
                if !out.contains(&v.as_str()) {
                    out.push(v);
                }
            }
            CondTerm::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }
}

impl fmt::Display for CondTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CondTerm::Var(v) => f.write_str(v),
            CondTerm::App(s, args) => {
                write!(f, "{s}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Identity {
    pub lhs: CondTerm,
    pub rhs: CondTerm,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// A finite list of identities over operation symbols. Symbols are listed in
/// order of first occurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaltsevCondition {
    pub symbols: Vec<OpSymbol>,
    pub identities: Vec<Identity>,
}

impl MaltsevCondition {
    pub fn symbol(&self, name: &str) -> Option<&OpSymbol> {
        self.symbols.iter().find(|s| s.name == name)
    }

    pub fn symbol_index(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }
}

impl fmt::Display for MaltsevCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, id) in self.identities.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{id}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for MaltsevCondition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_condition(s)
    }
}

/// Parses `identity (";" identity)*`, inferring each symbol's arity from its
/// first occurrence. `=` and `≈` are both accepted; a trailing `;` is allowed.
pub fn parse_condition(text: &str) -> Result<MaltsevCondition> {
    ConditionParser::new(text, None).run()
}

/// Like [`parse_condition`], but every symbol must appear in `declared` with
/// the arity given there.
pub fn parse_condition_strict(text: &str, declared: &[OpSymbol]) -> Result<MaltsevCondition> {
    ConditionParser::new(text, Some(declared)).run()
}

struct ConditionParser<'a> {
    p: Parser<'a>,
    declared: Option<&'a [OpSymbol]>,
    arities: HashMap<String, usize>,
    symbols: Vec<OpSymbol>,
}

impl<'a> ConditionParser<'a> {
    fn new(text: &'a str, declared: Option<&'a [OpSymbol]>) -> Self {
        ConditionParser {
            p: Parser::new(text),
            declared,
            arities: HashMap::new(),
            symbols: Vec::new(),
        }
    }

    fn run(mut self) -> Result<MaltsevCondition> {
        let mut identities = Vec::new();
        loop {
            let lhs = self.term()?;
            if !(self.p.eat('=') || self.p.eat('≈')) {
                self.p.skip_ws();
                return Err(match self.p.peek() {
                    Some((pos, c)) => Error::syntax(pos, format!("expected `=`, found `{c}`")),
                    None => Error::syntax(self.p.offset(), "expected `=`, found end of input"),
                });
            }
            let rhs = self.term()?;
            identities.push(Identity { lhs, rhs });
            if !self.p.eat(';') {
                break;
            }
            self.p.skip_ws();
            if self.p.peek().is_none() {
                break;
            }
        }
        self.p.skip_ws();
        if let Some((pos, c)) = self.p.peek() {
            return Err(Error::syntax(pos, format!("unexpected `{c}`")));
        }
        if let Some(declared) = self.declared {
            // keep declared symbols that were never used, after the used ones
            for s in declared {
                if !self.arities.contains_key(&s.name) {
                    self.symbols.push(s.clone());
                }
            }
        }
        Ok(MaltsevCondition {
            symbols: self.symbols,
            identities,
        })
    }

    fn term(&mut self) -> Result<CondTerm> {
        let (_, name) = self.p.ident()?;
        if !self.p.eat('(') {
            return Ok(CondTerm::var(name));
        }
        let mut args = Vec::new();
        loop {
            args.push(self.term()?);
            if self.p.eat(',') {
                continue;
            }
            self.p.expect(')')?;
            break;
        }
        self.record(name, args.len())?;
        Ok(CondTerm::App(name.to_string(), args))
    }

    fn record(&mut self, name: &str, arity: usize) -> Result<()> {
        if let Some(declared) = self.declared {
            let Some(d) = declared.iter().find(|d| d.name == name) else {
                return Err(Error::UndeclaredSymbol(name.to_string()));
            };
            if d.arity != arity {
                return Err(Error::InconsistentArity {
                    symbol: name.to_string(),
                    expected: d.arity,
                    found: arity,
                });
            }
        }
        match self.arities.get(name) {
            Some(&expected) if expected != arity => Err(Error::InconsistentArity {
                symbol: name.to_string(),
                expected,
                found: arity,
            }),
            Some(_) => Ok(()),
            None => {
                self.arities.insert(name.to_string(), arity);
                self.symbols.push(OpSymbol {
                    name: name.to_string(),
                    arity,
                });
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn siggers_parses() {
        let c = parse_condition("t(r,a,r,e) = t(a,r,e,a)").unwrap();
        assert_eq!(
            c.symbols,
            vec![OpSymbol {
                name: "t".into(),
                arity: 4
            }]
        );
        assert_eq!(c.identities.len(), 1);
        assert!(c.identities[0].lhs.is_linear());
        assert_eq!(c.to_string(), "t(r,a,r,e) = t(a,r,e,a)");
    }

    #[test]
    fn composition_parses() {
        let c = parse_condition("t(t(x,y,z),y,z) ≈ t(x,x,z)").unwrap();
        assert_eq!(c.symbols.len(), 1);
        assert_eq!(c.symbols[0].arity, 3);
        assert!(!c.identities[0].lhs.is_linear());
        assert!(c.identities[0].rhs.is_linear());
    }

    #[test]
    fn several_identities_and_bare_variables() {
        let c = parse_condition("m(x,x,y) = y; m(y,x,x) = y;").unwrap();
        assert_eq!(c.identities.len(), 2);
        assert_eq!(c.identities[1].rhs, CondTerm::var("y"));
        let c = parse_condition("x = y").unwrap();
        assert!(c.symbols.is_empty());
    }

    #[test]
    fn arity_conflicts() {
        assert_eq!(
            parse_condition("t(x,y) = s(y); s(x,y) = x"),
            Err(Error::InconsistentArity {
                symbol: "s".into(),
                expected: 1,
                found: 2
            })
        );
        assert!(matches!(
            parse_condition("t(t(x),y) = x"),
            Err(Error::InconsistentArity { .. })
        ));
    }

    #[test]
    fn strict_mode() {
        let decl = [OpSymbol {
            name: "t".into(),
            arity: 2,
        }];
        assert!(parse_condition_strict("t(x,y) = t(y,x)", &decl).is_ok());
        assert_eq!(
            parse_condition_strict("s(x,y) = t(y,x)", &decl),
            Err(Error::UndeclaredSymbol("s".into()))
        );
        assert!(matches!(
            parse_condition_strict("t(x,y,z) = x", &decl),
            Err(Error::InconsistentArity { .. })
        ));
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(parse_condition("t(x,y)"), Err(Error::Syntax { pos: 6, .. })));
        assert!(matches!(parse_condition("t(x,y) = "), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_condition("t(x,y = x"),
            Err(Error::Syntax { pos: 6, .. })
        ));
        assert!(matches!(parse_condition(""), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_condition("t() = x"), Err(Error::Syntax { pos: 2, .. })));
    }

    #[test]
    fn w_may_be_a_variable_or_a_symbol() {
        let c = parse_condition("t(x,y,z) = t(w,y,u)").unwrap();
        assert_eq!(c.identities[0].rhs.variables(), vec!["w", "y", "u"]);
        let c = parse_condition("w(x,y) = w(y,x)").unwrap();
        assert_eq!(c.symbols[0].name, "w");
    }
}
