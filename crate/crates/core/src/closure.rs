//! Bounded subalgebras of the square of the free algebra.
//!
//! [`close_pairs`] closes a set of pairs of normal terms under coordinatewise
//! `wA`, keeping only pairs whose coordinates both stay within a w-count
//! budget. Rounds are evaluated semi-naively: a round only looks at tuples
//! that use at least one pair found in the previous round.
//!
//! Within a budget `B` a tuple can only contribute when, in each coordinate,
//! either all entries agree (`wA` returns that entry) or the entries' w-counts
//! sum to at most `B - 1` (`wA` adds exactly one `w`). Tuples are drawn from
//! buckets indexed by those counts, so the enumeration never visits a tuple
//! that is bound to overflow.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::normal::{FreeAlgebra, NormalTerm};
use crate::term::TermRef;

pub type Pair = (NormalTerm, NormalTerm);

fn key(p: &Pair) -> (TermRef, TermRef) {
    (p.0.term(), p.1.term())
}

/// Generators of a subalgebra of the squared free algebra, deduplicated and
/// in first-seen order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairGeneratorSet {
    pairs: Vec<Pair>,
}

impl PairGeneratorSet {
    pub fn new(pairs: impl IntoIterator<Item = Pair>) -> Self {
        let mut seen = HashSet::new();
        let pairs = pairs.into_iter().filter(|p| seen.insert(key(p))).collect();
        PairGeneratorSet { pairs }
    }

    /// Every ordered pair `(x, y)` of distinct variables from `vars`, with
    /// `vars` sorted by name first.
    pub fn distinct_variables(alg: &FreeAlgebra, vars: &[&str]) -> Result<Self> {
        let mut names: Vec<&str> = vars.to_vec();
        names.sort_unstable();
        names.dedup();
        let terms = names.iter().map(|v| alg.variable(v)).collect::<Result<Vec<_>>>()?;
        let mut pairs = Vec::new();
        for &a in &terms {
            for &b in &terms {
                if a != b {
                    pairs.push((a, b));
                }
            }
        }
        Ok(PairGeneratorSet { pairs })
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureBudget {
    pub max_rounds: usize,
    pub max_pairs: usize,
    pub max_w_per_coordinate: u64,
}

impl Default for ClosureBudget {
    fn default() -> Self {
        ClosureBudget {
            max_rounds: 64,
            max_pairs: 100_000,
            max_w_per_coordinate: 2,
        }
    }
}

impl ClosureBudget {
    pub fn validate(&self) -> Result<()> {
        let ClosureBudget {
            max_rounds,
            max_pairs,
            max_w_per_coordinate,
        } = *self;
        if max_rounds == 0 {
            return Err(Error::InvalidBudget("max_rounds must be positive".into()));
        }
        if max_pairs == 0 {
            return Err(Error::InvalidBudget("max_pairs must be positive".into()));
        }
        if max_w_per_coordinate == 0 {
            return Err(Error::InvalidBudget("max_w_per_coordinate must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    Saturated,
    MaxRounds,
    MaxPairs,
}

/// Result of a closure run. Pairs are kept in discovery order: generators
/// first, then each round's additions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureSet {
    pairs: Vec<Pair>,
    round_ends: Vec<usize>,
    rounds_completed: usize,
    stop: StopReason,
}

impl ClosureSet {
    /// Wraps an arbitrary pair list, e.g. to run the checks on a handmade set.
    pub fn from_pairs(pairs: Vec<Pair>) -> Self {
        let n = pairs.len();
        ClosureSet {
            pairs,
            round_ends: vec![n],
            rounds_completed: 0,
            stop: StopReason::Saturated,
        }
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn rounds_completed(&self) -> usize {
        self.rounds_completed
    }

    /// True iff the last completed round added nothing.
    pub fn saturated(&self) -> bool {
        self.stop == StopReason::Saturated
    }

    pub fn stop_reason(&self) -> StopReason {
        self.stop
    }

    /// The set as it stood after `round` complete rounds (round 0 is the
    /// generators).
    pub fn after_round(&self, round: usize) -> &[Pair] {
        let end = self.round_ends[round.min(self.round_ends.len() - 1)];
        &self.pairs[..end]
    }

    pub fn contains(&self, p: &Pair) -> bool {
        self.pairs.contains(p)
    }

    pub fn key_set(&self) -> HashSet<(TermRef, TermRef)> {
        self.pairs.iter().map(key).collect()
    }
}

fn check_generators(alg: &FreeAlgebra, gen: &PairGeneratorSet, budget: &ClosureBudget) -> Result<()> {
    budget.validate()?;
    if gen.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let cap = budget.max_w_per_coordinate;
    if let Some(p) = gen
        .pairs
        .iter()
        .find(|p| alg.w_count(p.0) > cap || alg.w_count(p.1) > cap)
    {
        return Err(Error::GeneratorOverBudget(alg.render(p.0), alg.render(p.1)));
    }
    Ok(())
}

/// Weight-bucketed indexes over the pairs found so far.
#[derive(Default)]
struct Buckets {
    /// Pairs with both weights below the cap, keyed by `(wl, wr)`.
    small: BTreeMap<(u64, u64), Vec<usize>>,
    /// Pairs whose right weight is below the cap, grouped by left term.
    by_left: HashMap<TermRef, BTreeMap<u64, Vec<usize>>>,
    left_order: Vec<TermRef>,
    /// Pairs whose left weight is below the cap, grouped by right term.
    by_right: HashMap<TermRef, BTreeMap<u64, Vec<usize>>>,
    right_order: Vec<TermRef>,
}

impl Buckets {
    fn add(&mut self, idx: usize, p: &Pair, wl: u64, wr: u64, open: u64) {
        if wl <= open && wr <= open {
            self.small.entry((wl, wr)).or_default().push(idx);
        }
        if wr <= open {
            let l = p.0.term();
            let entry = self.by_left.entry(l).or_insert_with(|| {
                self.left_order.push(l);
                BTreeMap::new()
            });
            entry.entry(wr).or_default().push(idx);
        }
        if wl <= open {
            let r = p.1.term();
            let entry = self.by_right.entry(r).or_insert_with(|| {
                self.right_order.push(r);
                BTreeMap::new()
            });
            entry.entry(wl).or_default().push(idx);
        }
    }
}

/// One bucket as seen by the tuple enumerator: effective weights and indices.
struct Slot<'a> {
    wl: u64,
    wr: u64,
    items: &'a [usize],
}

#[derive(Clone, Copy)]
enum Shape {
    /// Neither coordinate constant.
    Mixed,
    /// Left coordinate constant, right free.
    LeftConstant,
    /// Right coordinate constant, left free.
    RightConstant,
}

struct Round<'a> {
    alg: &'a FreeAlgebra,
    pairs: &'a [Pair],
    k: usize,
    old_len: usize,
    open: u64,
    cap: u64,
    limit: usize,
    seen: &'a mut HashSet<(TermRef, TermRef)>,
    fresh: Vec<Pair>,
    tuple: Vec<usize>,
    lefts: Vec<NormalTerm>,
    rights: Vec<NormalTerm>,
    full: bool,
}

impl Round<'_> {
    fn enumerate(&mut self, slots: &[Slot<'_>], shape: Shape, pos: usize, rl: u64, rr: u64, has_delta: bool) {
        if self.full {
            return;
        }
        if pos == self.k {
            self.emit(shape);
            return;
        }
        let last = pos + 1 == self.k;
        for slot in slots {
            if slot.wl > rl || slot.wr > rr {
                continue;
            }
            let items = if last && !has_delta {
                let start = slot.items.partition_point(|&i| i < self.old_len);
                &slot.items[start..]
            } else {
                slot.items
            };
            for &i in items {
                self.tuple.push(i);
                self.enumerate(
                    slots,
                    shape,
                    pos + 1,
                    rl - slot.wl,
                    rr - slot.wr,
                    has_delta || i >= self.old_len,
                );
                self.tuple.pop();
                if self.full {
                    return;
                }
            }
        }
    }

    fn emit(&mut self, shape: Shape) {
        self.lefts.clear();
        self.rights.clear();
        for &i in &self.tuple {
            self.lefts.push(self.pairs[i].0);
            self.rights.push(self.pairs[i].1);
        }
        let left_const = self.lefts.iter().all(|&l| l == self.lefts[0]);
        let right_const = self.rights.iter().all(|&r| r == self.rights[0]);
        let wanted = match shape {
            Shape::Mixed => !left_const && !right_const,
            Shape::LeftConstant => left_const && !right_const,
            Shape::RightConstant => right_const && !left_const,
        };
        if !wanted {
            return;
        }
        let l = self.alg.wa(&self.lefts).expect("arity");
        let r = self.alg.wa(&self.rights).expect("arity");
        if self.alg.w_count(l) > self.cap || self.alg.w_count(r) > self.cap {
            return;
        }
        if self.seen.insert((l.term(), r.term())) {
            self.fresh.push((l, r));
            if self.pairs.len() + self.fresh.len() >= self.limit {
                self.full = true;
            }
        }
    }
}

fn slice_below(items: &[usize], end: usize) -> &[usize] {
    &items[..items.partition_point(|&i| i < end)]
}

/// Closes `gen` under coordinatewise `wA` within `budget`.
pub fn close_pairs(alg: &FreeAlgebra, gen: &PairGeneratorSet, budget: &ClosureBudget) -> Result<ClosureSet> {
    check_generators(alg, gen, budget)?;
    let cap = budget.max_w_per_coordinate;
    let open = cap - 1;
    let k = alg.k();

    let mut pairs: Vec<Pair> = gen.pairs.clone();
    let mut seen: HashSet<(TermRef, TermRef)> = pairs.iter().map(key).collect();
    let mut buckets = Buckets::default();
    for (i, p) in pairs.iter().enumerate() {
        buckets.add(i, p, alg.w_count(p.0), alg.w_count(p.1), open);
    }
    let mut round_ends = vec![pairs.len()];
    let mut rounds_completed = 0;
    if pairs.len() >= budget.max_pairs {
        return Ok(ClosureSet {
            pairs,
            round_ends,
            rounds_completed,
            stop: StopReason::MaxPairs,
        });
    }

    let mut old_len = 0;
    let stop = loop {
        if rounds_completed == budget.max_rounds {
            break StopReason::MaxRounds;
        }
        let end = pairs.len();
        let mut round = Round {
            alg,
            pairs: &pairs,
            k,
            old_len,
            open,
            cap,
            limit: budget.max_pairs,
            seen: &mut seen,
            fresh: Vec::new(),
            tuple: Vec::with_capacity(k),
            lefts: Vec::with_capacity(k),
            rights: Vec::with_capacity(k),
            full: false,
        };

        let mixed: Vec<Slot<'_>> = buckets
            .small
            .iter()
            .map(|(&(wl, wr), items)| Slot {
                wl,
                wr,
                items: slice_below(items, end),
            })
            .collect();
        round.enumerate(&mixed, Shape::Mixed, 0, round.open, round.open, false);

        for l in &buckets.left_order {
            let slots: Vec<Slot<'_>> = buckets.by_left[l]
                .iter()
                .map(|(&wr, items)| Slot {
                    wl: 0,
                    wr,
                    items: slice_below(items, end),
                })
                .collect();
            round.enumerate(&slots, Shape::LeftConstant, 0, 0, round.open, false);
        }
        for r in &buckets.right_order {
            let slots: Vec<Slot<'_>> = buckets.by_right[r]
                .iter()
                .map(|(&wl, items)| Slot {
                    wl,
                    wr: 0,
                    items: slice_below(items, end),
                })
                .collect();
            round.enumerate(&slots, Shape::RightConstant, 0, round.open, 0, false);
        }

        let full = round.full;
        let fresh = std::mem::take(&mut round.fresh);
        drop(round);
        if full {
            pairs.extend(fresh);
            break StopReason::MaxPairs;
        }
        rounds_completed += 1;
        let added = !fresh.is_empty();
        for p in fresh {
            buckets.add(pairs.len(), &p, alg.w_count(p.0), alg.w_count(p.1), open);
            pairs.push(p);
        }
        round_ends.push(pairs.len());
        if !added {
            break StopReason::Saturated;
        }
        old_len = end;
    };

    Ok(ClosureSet {
        pairs,
        round_ends,
        rounds_completed,
        stop,
    })
}

/// Reference closure: every round applies `wA` to every k-tuple of the
/// current set. Exponentially slower than [`close_pairs`]; for cross-checks
/// on tiny budgets.
pub fn close_pairs_naive(alg: &FreeAlgebra, gen: &PairGeneratorSet, budget: &ClosureBudget) -> Result<ClosureSet> {
    check_generators(alg, gen, budget)?;
    let cap = budget.max_w_per_coordinate;
    let k = alg.k();
    let mut pairs = gen.pairs.clone();
    let mut seen: HashSet<(TermRef, TermRef)> = pairs.iter().map(key).collect();
    let mut round_ends = vec![pairs.len()];
    let mut rounds_completed = 0;
    if pairs.len() >= budget.max_pairs {
        return Ok(ClosureSet {
            pairs,
            round_ends,
            rounds_completed,
            stop: StopReason::MaxPairs,
        });
    }
    let stop = 'rounds: loop {
        if rounds_completed == budget.max_rounds {
            break StopReason::MaxRounds;
        }
        let n = pairs.len();
        let mut fresh = Vec::new();
        let mut idx = vec![0usize; k];
        'tuples: loop {
            let lefts: Vec<NormalTerm> = idx.iter().map(|&i| pairs[i].0).collect();
            let rights: Vec<NormalTerm> = idx.iter().map(|&i| pairs[i].1).collect();
            let l = alg.wa(&lefts)?;
            let r = alg.wa(&rights)?;
            if alg.w_count(l) <= cap && alg.w_count(r) <= cap && seen.insert((l.term(), r.term())) {
                fresh.push((l, r));
                if n + fresh.len() >= budget.max_pairs {
                    pairs.extend(fresh);
                    break 'rounds StopReason::MaxPairs;
                }
            }
            // odometer over all n^k tuples
            let mut p = k;
            while p > 0 {
                p -= 1;
                idx[p] += 1;
                if idx[p] < n {
                    continue 'tuples;
                }
                idx[p] = 0;
            }
            break;
        }
        rounds_completed += 1;
        let added = !fresh.is_empty();
        pairs.extend(fresh);
        round_ends.push(pairs.len());
        if !added {
            break StopReason::Saturated;
        }
    };
    Ok(ClosureSet {
        pairs,
        round_ends,
        rounds_completed,
        stop,
    })
}

/// The first pair with equal coordinates, if any.
pub fn diagonal_witness(c: &ClosureSet) -> Option<Pair> {
    c.pairs.iter().copied().find(|(a, b)| a == b)
}

/// All pairs of `c` that are not in S.
pub fn verify_pairs_in_s(alg: &FreeAlgebra, c: &ClosureSet) -> Vec<Pair> {
    c.pairs.iter().copied().filter(|&(a, b)| !alg.in_s(a, b)).collect()
}

/// JSON-facing summary of a closure run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub k: usize,
    pub generators: Vec<[String; 2]>,
    pub budget: ClosureBudget,
    pub rounds_completed: usize,
    pub saturated: bool,
    pub stop_reason: StopReason,
    pub pair_count: usize,
    pub diagonal_witness: Option<[String; 2]>,
    pub s_violations: Vec<[String; 2]>,
    /// Generators that are themselves outside S.
    pub generator_violations: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<[String; 2]>>,
}

pub fn render_pair(alg: &FreeAlgebra, p: &Pair) -> [String; 2] {
    [alg.render(p.0), alg.render(p.1)]
}

impl ClosureReport {
    pub fn build(
        alg: &FreeAlgebra,
        gen: &PairGeneratorSet,
        budget: &ClosureBudget,
        c: &ClosureSet,
        list_pairs: bool,
    ) -> Self {
        let render_all = |ps: &[Pair]| ps.iter().map(|p| render_pair(alg, p)).collect::<Vec<_>>();
        let generator_violations: Vec<Pair> = gen.pairs.iter().copied().filter(|&(a, b)| !alg.in_s(a, b)).collect();
        ClosureReport {
            k: alg.k(),
            generators: render_all(&gen.pairs),
            budget: *budget,
            rounds_completed: c.rounds_completed,
            saturated: c.saturated(),
            stop_reason: c.stop,
            pair_count: c.len(),
            diagonal_witness: diagonal_witness(c).map(|p| render_pair(alg, &p)),
            s_violations: render_all(&verify_pairs_in_s(alg, c)),
            generator_violations: render_all(&generator_violations),
            pairs: list_pairs.then(|| render_all(&c.pairs)),
        }
    }

    /// No diagonal pair and every pair in S.
    pub fn clean(&self) -> bool {
        self.diagonal_witness.is_none() && self.s_violations.is_empty() && self.generator_violations.is_empty()
    }
}

/// Runs [`close_pairs`] and summarizes the result.
pub fn closure_report(
    alg: &FreeAlgebra,
    gen: &PairGeneratorSet,
    budget: &ClosureBudget,
    list_pairs: bool,
) -> Result<ClosureReport> {
    let c = close_pairs(alg, gen, budget)?;
    Ok(ClosureReport::build(alg, gen, budget, &c, list_pairs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(k: usize) -> FreeAlgebra {
        FreeAlgebra::with_arity(k).unwrap()
    }

    fn n(a: &FreeAlgebra, text: &str) -> NormalTerm {
        a.certify(a.parse(text).unwrap()).unwrap()
    }

    fn pair(a: &FreeAlgebra, l: &str, r: &str) -> Pair {
        (n(a, l), n(a, r))
    }

    fn budget(rounds: usize, w: u64) -> ClosureBudget {
        ClosureBudget {
            max_rounds: rounds,
            max_pairs: 1_000_000,
            max_w_per_coordinate: w,
        }
    }

    #[test]
    fn one_round_from_swapped_pair() {
        let a = alg(3);
        let gen = PairGeneratorSet::new([pair(&a, "x", "y"), pair(&a, "y", "x")]);
        let c = close_pairs(&a, &gen, &budget(1, 2)).unwrap();
        assert!(c.contains(&pair(&a, "w(y,x,x)", "w(x,y,y)")));
        assert_eq!(c.rounds_completed(), 1);
        assert_eq!(c.stop_reason(), StopReason::MaxRounds);
        assert!(!c.saturated());
    }

    #[test]
    fn single_pair_is_already_closed() {
        let a = alg(3);
        let gen = PairGeneratorSet::new([pair(&a, "x", "y")]);
        let c = close_pairs(&a, &gen, &budget(10, 3)).unwrap();
        assert_eq!(c.pairs(), &[pair(&a, "x", "y")]);
        assert!(c.saturated());
        assert_eq!(c.rounds_completed(), 1);
        assert_eq!(diagonal_witness(&c), None);
    }

    #[test]
    fn detectors_on_handmade_sets() {
        let a = alg(3);
        let c = ClosureSet::from_pairs(vec![pair(&a, "x", "x")]);
        assert_eq!(diagonal_witness(&c), Some(pair(&a, "x", "x")));

        let c = ClosureSet::from_pairs(vec![pair(&a, "x", "w(y,x,x)")]);
        assert_eq!(verify_pairs_in_s(&a, &c), vec![pair(&a, "x", "w(y,x,x)")]);
    }

    #[test]
    fn closure_of_incomparable_compound_pair_stays_in_s() {
        let a = alg(3);
        let gen = PairGeneratorSet::new([pair(&a, "w(x,y,y)", "w(y,x,x)")]);
        assert!(a.in_s(gen.pairs()[0].0, gen.pairs()[0].1));
        let c = close_pairs(&a, &gen, &budget(10, 4)).unwrap();
        assert!(verify_pairs_in_s(&a, &c).is_empty());
    }

    #[test]
    fn semi_naive_matches_naive_per_round() {
        // the naive rule is n^k per round; keep n small
        for (k, w) in [(3, 1), (3, 2), (4, 1)] {
            let a = alg(k);
            let gen = PairGeneratorSet::distinct_variables(&a, &["x", "y"]).unwrap();
            {
                let b = budget(8, w);
                let fast = close_pairs(&a, &gen, &b).unwrap();
                let slow = close_pairs_naive(&a, &gen, &b).unwrap();
                assert_eq!(fast.rounds_completed(), slow.rounds_completed(), "k={k} w={w}");
                assert_eq!(fast.stop_reason(), slow.stop_reason());
                for r in 0..=fast.rounds_completed() {
                    let f: HashSet<_> = fast.after_round(r).iter().map(key).collect();
                    let s: HashSet<_> = slow.after_round(r).iter().map(key).collect();
                    assert_eq!(f, s, "k={k} w={w} round={r}");
                }
            }
        }
    }

    #[test]
    fn three_variables_cross_check() {
        let a = alg(3);
        let gen = PairGeneratorSet::distinct_variables(&a, &["x", "y", "z"]).unwrap();
        let b = budget(8, 1);
        let fast = close_pairs(&a, &gen, &b).unwrap();
        let slow = close_pairs_naive(&a, &gen, &b).unwrap();
        assert_eq!(fast.key_set(), slow.key_set());
        assert!(fast.saturated());
    }

    #[test]
    fn rounds_are_monotone_and_deterministic() {
        let a = alg(3);
        let gen = PairGeneratorSet::distinct_variables(&a, &["x", "y", "z"]).unwrap();
        let b = budget(3, 2);
        let c1 = close_pairs(&a, &gen, &b).unwrap();
        let c2 = close_pairs(&a, &gen, &b).unwrap();
        assert_eq!(c1, c2);
        for r in 1..=c1.rounds_completed() {
            let before = c1.after_round(r - 1);
            assert_eq!(&c1.after_round(r)[..before.len()], before);
        }
        assert_eq!(diagonal_witness(&c1), None);
        assert!(verify_pairs_in_s(&a, &c1).is_empty());
    }

    #[test]
    fn pair_cap_stops_early() {
        let a = alg(3);
        let gen = PairGeneratorSet::distinct_variables(&a, &["x", "y", "z"]).unwrap();
        let b = ClosureBudget {
            max_rounds: 10,
            max_pairs: 20,
            max_w_per_coordinate: 2,
        };
        let c = close_pairs(&a, &gen, &b).unwrap();
        assert_eq!(c.stop_reason(), StopReason::MaxPairs);
        assert_eq!(c.len(), 20);
        assert!(!c.saturated());
    }

    #[test]
    fn invalid_inputs() {
        let a = alg(3);
        let gen = PairGeneratorSet::new([pair(&a, "x", "y")]);
        assert!(matches!(
            close_pairs(&a, &PairGeneratorSet::default(), &budget(1, 1)),
            Err(Error::EmptyGenerators)
        ));
        assert!(matches!(
            close_pairs(&a, &gen, &budget(0, 1)),
            Err(Error::InvalidBudget(_))
        ));
        assert!(matches!(
            close_pairs(&a, &gen, &budget(1, 0)),
            Err(Error::InvalidBudget(_))
        ));
        let big = PairGeneratorSet::new([pair(&a, "w(w(x,y,z),y,y)", "y")]);
        assert!(matches!(
            close_pairs(&a, &big, &budget(1, 1)),
            Err(Error::GeneratorOverBudget(..))
        ));
    }

    #[test]
    fn report_flags_bad_generators() {
        let a = alg(3);
        let gen = PairGeneratorSet::new([pair(&a, "x", "x")]);
        let r = closure_report(&a, &gen, &budget(2, 2), false).unwrap();
        assert_eq!(r.generator_violations, vec![["x".to_string(), "x".to_string()]]);
        assert_eq!(r.diagonal_witness, Some(["x".to_string(), "x".to_string()]));
        assert!(!r.clean());
    }
}
