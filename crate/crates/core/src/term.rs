//! Hash-consed terms over a variable set and the single k-ary symbol `w`.
//!
//! Every structurally distinct term is stored once in a [`TermStore`], so term
//! equality is a comparison of [`TermRef`] handles. Nothing at this layer
//! applies the wnu identities: `w(x,x,x)` and `x` are different terms here.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use parking_lot::RwLock;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// The reserved operation symbol.
pub const SYMBOL: &str = "w";

/// Arity of the wnu operation. Always at least 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Arity(usize);

impl Arity {
    pub fn new(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::UnsupportedArity(k));
        }
        Ok(Arity(k))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

impl TryFrom<usize> for Arity {
    type Error = Error;
    fn try_from(k: usize) -> Result<Self> {
        Arity::new(k)
    }
}

impl From<Arity> for usize {
    fn from(a: Arity) -> usize {
        a.0
    }
}

impl std::fmt::Display for Arity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Handle to an interned term. Only meaningful relative to the store that
/// produced it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TermRef(u32);

impl TermRef {
    pub fn id(self) -> u32 {
        self.0
    }
}

pub type Children = SmallVec<[TermRef; 6]>;

/// The shape of a single node, with children as handles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Leaf(Arc<str>),
    App(Children),
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Key {
    Var(Arc<str>),
    App(Children),
}

struct Entry {
    key: Key,
    w_count: u64,
    height: u32,
}

#[derive(Default)]
struct Inner {
    entries: Vec<Entry>,
    index: HashMap<Key, TermRef>,
}

/// Interner for the terms of one fixed arity.
///
/// Lookups take a shared lock and inserts re-check under the exclusive lock,
/// so concurrent interning of equal terms always returns the same handle.
pub struct TermStore {
    arity: Arity,
    inner: RwLock<Inner>,
}

impl std::fmt::Debug for TermStore {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TermStore")
            .field("arity", &self.arity)
            .field("len", &self.len())
            .finish()
    }
}

pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_')
}

impl TermStore {
    pub fn new(arity: Arity) -> Self {
        TermStore {
            arity,
            inner: RwLock::new(Inner::default()),
        }
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    /// Number of distinct nodes interned so far.
    pub fn len(&self) -> usize {
        self.inner.read().entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn intern(&self, key: Key) -> TermRef {
        if let Some(&t) = self.inner.read().index.get(&key) {
            return t;
        }
        let mut inner = self.inner.write();
        if let Some(&t) = inner.index.get(&key) {
            return t;
        }
        let (w_count, height) = match &key {
            Key::Var(_) => (0, 0),
            Key::App(children) => children.iter().fold((1u64, 0u32), |(w, h), c| {
                let e = &inner.entries[c.0 as usize];
                (w.saturating_add(e.w_count), h.max(e.height + 1))
            }),
        };
        let id = u32::try_from(inner.entries.len()).expect("term store exhausted u32 ids");
        let t = TermRef(id);
        inner.entries.push(Entry {
            key: key.clone(),
            w_count,
            height,
        });
        inner.index.insert(key, t);
        t
    }

    /// Interns the variable `name`.
    pub fn variable(&self, name: &str) -> Result<TermRef> {
        if name == SYMBOL {
            return Err(Error::ReservedName);
        }
        if !is_identifier(name) {
            return Err(Error::InvalidIdentifier(name.to_string()));
        }
        Ok(self.intern(Key::Var(Arc::from(name))))
    }

    /// Interns the syntactic application `w(children)`. No identity is applied.
    pub fn app(&self, children: &[TermRef]) -> Result<TermRef> {
        if children.len() != self.arity.0 {
            return Err(Error::ArityMismatch {
                expected: self.arity.0,
                found: children.len(),
            });
        }
        Ok(self.intern(Key::App(children.iter().copied().collect())))
    }

    pub fn shape(&self, t: TermRef) -> Shape {
        match &self.inner.read().entries[t.0 as usize].key {
            Key::Var(name) => Shape::Leaf(name.clone()),
            Key::App(children) => Shape::App(children.clone()),
        }
    }

    /// Children of an application, `None` for a variable.
    pub fn children(&self, t: TermRef) -> Option<Children> {
        match &self.inner.read().entries[t.0 as usize].key {
            Key::Var(_) => None,
            Key::App(children) => Some(children.clone()),
        }
    }

    pub fn is_variable(&self, t: TermRef) -> bool {
        matches!(self.inner.read().entries[t.0 as usize].key, Key::Var(_))
    }

    pub fn variable_name(&self, t: TermRef) -> Option<Arc<str>> {
        match &self.inner.read().entries[t.0 as usize].key {
            Key::Var(name) => Some(name.clone()),
            Key::App(_) => None,
        }
    }

    /// Occurrences of `w` in the term tree (sharing expanded). Saturates at
    /// `u64::MAX`.
    pub fn w_count(&self, t: TermRef) -> u64 {
        self.inner.read().entries[t.0 as usize].w_count
    }

    /// Depth of the term: 0 for a variable.
    pub fn height(&self, t: TermRef) -> u32 {
        self.inner.read().entries[t.0 as usize].height
    }

    pub fn render(&self, t: TermRef) -> String {
        let mut out = String::new();
        self.render_into(t, &mut out);
        out
    }

    fn render_into(&self, t: TermRef, out: &mut String) {
        match self.shape(t) {
            Shape::Leaf(name) => out.push_str(&name),
            Shape::App(children) => {
                out.push_str(SYMBOL);
                out.push('(');
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    self.render_into(*c, out);
                }
                out.push(')');
            }
        }
    }

    /// Parses `text` according to the term grammar and interns the result.
    pub fn parse(&self, text: &str) -> Result<TermRef> {
        let mut p = Parser::new(text);
        let t = p.term(self)?;
        p.skip_ws();
        if let Some((pos, c)) = p.peek() {
            return Err(Error::syntax(pos, format!("unexpected `{c}` after term")));
        }
        Ok(t)
    }
}

pub(crate) struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Parser { text, pos: 0 }
    }

    pub(crate) fn offset(&self) -> usize {
        self.pos
    }

    pub(crate) fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    pub(crate) fn peek(&self) -> Option<(usize, char)> {
        self.text[self.pos..].chars().next().map(|c| (self.pos, c))
    }

    pub(crate) fn eat(&mut self, expected: char) -> bool {
        self.skip_ws();
        match self.peek() {
            Some((_, c)) if c == expected => {
                self.pos += c.len_utf8();
                true
            }
            _ => false,
        }
    }

    pub(crate) fn expect(&mut self, expected: char) -> Result<()> {
        if self.eat(expected) {
            return Ok(());
        }
        Err(match self.peek() {
            Some((pos, c)) => Error::syntax(pos, format!("expected `{expected}`, found `{c}`")),
            None => Error::syntax(self.pos, format!("expected `{expected}`, found end of input")),
        })
    }

    pub(crate) fn ident(&mut self) -> Result<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let len = rest
            .char_indices()
            .find(|&(_, c)| !(c.is_alphanumeric() || c == '_'))
            .map_or(rest.len(), |(i, _)| i);
        let name = &rest[..len];
        if name.is_empty() {
            return Err(match rest.chars().next() {
                Some(c) => Error::syntax(start, format!("expected identifier, found `{c}`")),
                None => Error::syntax(start, "expected identifier, found end of input"),
            });
        }
        if !is_identifier(name) {
            return Err(Error::syntax(start, format!("invalid identifier `{name}`")));
        }
        self.pos += len;
        Ok((start, name))
    }

    fn term(&mut self, store: &TermStore) -> Result<TermRef> {
        let (start, name) = self.ident()?;
        self.skip_ws();
        let applied = matches!(self.peek(), Some((_, '(')));
        if name != SYMBOL {
            if applied {
                return Err(Error::syntax(
                    start,
                    format!("unknown operation symbol `{name}`; only `{SYMBOL}` may be applied"),
                ));
            }
            return store.variable(name);
        }
        if !applied {
            return Err(Error::syntax(start, "`w` must be applied to arguments"));
        }
        self.expect('(')?;
        let mut children: Children = SmallVec::new();
        loop {
            children.push(self.term(store)?);
            if self.eat(',') {
                continue;
            }
            self.expect(')')?;
            break;
        }
        store.app(&children)
    }
}

/// Renders a list of terms as `[a, b, ...]`.
pub fn render_list(store: &TermStore, terms: &[TermRef]) -> String {
    let mut out = String::from("[");
    for (i, t) in terms.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{}", store.render(*t));
    }
    out.push(']');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn store(k: usize) -> TermStore {
        TermStore::new(Arity::new(k).unwrap())
    }

    #[test]
    fn arity_two_is_rejected() {
        assert_eq!(Arity::new(2), Err(Error::UnsupportedArity(2)));
        assert!(Arity::new(3).is_ok());
    }

    #[test]
    fn variables_are_interned_once() {
        let s = store(3);
        let x = s.variable("x").unwrap();
        assert_eq!(x, s.variable("x").unwrap());
        let x1 = s.variable("x1").unwrap();
        assert_ne!(x, x1);
        assert_eq!(s.shape(x), Shape::Leaf(Arc::from("x")));
    }

    #[test]
    fn reserved_and_invalid_names() {
        let s = store(3);
        assert_eq!(s.variable("w"), Err(Error::ReservedName));
        assert!(matches!(s.variable("1x"), Err(Error::InvalidIdentifier(_))));
        assert!(matches!(s.variable(""), Err(Error::InvalidIdentifier(_))));
        assert!(s.variable("w1").is_ok());
        assert!(s.variable("_tmp").is_ok());
    }

    #[test]
    fn app_does_not_normalize() {
        let s = store(3);
        let x = s.variable("x").unwrap();
        let xxx = s.app(&[x, x, x]).unwrap();
        assert_ne!(xxx, x);
        assert_eq!(s.render(xxx), "w(x,x,x)");

        let y = s.variable("y").unwrap();
        let z = s.variable("z").unwrap();
        let xyz = s.app(&[x, y, z]).unwrap();
        let t = s.app(&[y, xyz, y]).unwrap();
        assert_eq!(s.render(t), "w(y,w(x,y,z),y)");
        assert_eq!(s.app(&[x, y]), Err(Error::ArityMismatch { expected: 3, found: 2 }));
    }

    #[test]
    fn parse_examples() {
        let s = store(3);
        let t = s.parse("w(w(x,y,z),y,y)").unwrap();
        let kids = s.children(t).unwrap();
        assert_eq!(s.render(kids[0]), "w(x,y,z)");
        assert_eq!(kids[1], s.variable("y").unwrap());
        assert_eq!(kids[2], kids[1]);
        assert_eq!(s.parse("x").unwrap(), s.variable("x").unwrap());
        assert_eq!(s.parse("w(x,y)"), Err(Error::ArityMismatch { expected: 3, found: 2 }));
        assert_eq!(s.parse(" w ( x , y ,z ) ").unwrap(), s.parse("w(x,y,z)").unwrap());
    }

    #[test]
    fn parse_errors_carry_positions() {
        let s = store(3);
        assert!(matches!(s.parse("w(x,y,z"), Err(Error::Syntax { pos: 7, .. })));
        assert!(matches!(s.parse("f(x,y,z)"), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(s.parse("w(x,,z)"), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(s.parse("x y"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(s.parse("w"), Err(Error::Syntax { .. })));
        assert!(matches!(s.parse(""), Err(Error::Syntax { .. })));
    }

    #[test]
    fn w_count_examples() {
        let s = store(3);
        assert_eq!(s.w_count(s.parse("x").unwrap()), 0);
        assert_eq!(s.w_count(s.parse("w(x,y,z)").unwrap()), 1);
        assert_eq!(s.w_count(s.parse("w(w(x,y,z),y,y)").unwrap()), 2);
        // sharing is expanded
        assert_eq!(s.w_count(s.parse("w(w(x,y,z),w(x,y,z),w(x,y,z))").unwrap()), 4);
    }

    #[test]
    fn concurrent_interning_agrees() {
        let s = store(3);
        let texts: Vec<String> = (0..50)
            .map(|i| format!("w(w(x{i},y,z),y{},w(a,b,x{i}))", i % 7))
            .collect();
        let results: Vec<Vec<TermRef>> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..8)
                .map(|_| scope.spawn(|| texts.iter().map(|t| s.parse(t).unwrap()).collect()))
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for r in &results[1..] {
            assert_eq!(r, &results[0]);
        }
        for (t, text) in results[0].iter().zip(&texts) {
            assert_eq!(&s.render(*t), text);
        }
    }

    fn arb_term_text(k: usize) -> impl Strategy<Value = String> {
        let leaf = prop::sample::select(vec!["x", "y", "z", "u", "v1"]).prop_map(String::from);
        leaf.prop_recursive(4, 40, 4, move |inner| {
            prop::collection::vec(inner, k).prop_map(|kids| format!("w({})", kids.join(",")))
        })
    }

    proptest! {
        #[test]
        fn parse_render_round_trip((k, text) in (3usize..6).prop_flat_map(|k| (Just(k), arb_term_text(k)))) {
            let s = store(k);
            let t = s.parse(&text).unwrap();
            prop_assert_eq!(s.render(t), text.clone());
            prop_assert_eq!(s.parse(&s.render(t)).unwrap(), t);
        }

        #[test]
        fn interning_matches_rendering(a in arb_term_text(3), b in arb_term_text(3)) {
            let s = store(3);
            let ta = s.parse(&a).unwrap();
            let tb = s.parse(&b).unwrap();
            prop_assert_eq!(ta == tb, s.render(ta) == s.render(tb));
        }

        #[test]
        fn w_count_matches_textual_count(a in arb_term_text(4)) {
            let s = store(4);
            let t = s.parse(&a).unwrap();
            prop_assert_eq!(s.w_count(t) as usize, s.render(t).matches("w(").count());
        }
    }
}
