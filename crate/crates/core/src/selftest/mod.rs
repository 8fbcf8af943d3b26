//! The executable property suites behind `wnu selftest` and the acceptance
//! tests. Each criterion draws from its own seeded stream, so results do not
//! depend on which criteria run or in what order.

pub mod gen;
pub mod oracle;

use std::collections::HashSet;
use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::closure::{close_pairs, diagonal_witness, verify_pairs_in_s, ClosureBudget, PairGeneratorSet};
use crate::maltsev::{
    classify_slemc, find_counterexample, formal_variables, is_trivial, parse_condition, satisfies, search_wnu_witness,
    wnu_identities, FiniteAlgebra, Slemc, Verdict,
};
use crate::normal::{FreeAlgebra, NormalTerm};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Iteration counts and wall-clock limits for each criterion.
pub mod limits {
    use std::time::Duration;

    pub const C1_TERMS: usize = 10_000;
    pub const C1_MAX_W: u64 = 12;
    pub const C1_MAX_VARS: usize = 5;
    pub const C1_MAX_REWRITES: usize = 10;
    pub const C1_TIME: Duration = Duration::from_secs(30);

    pub const C2_PAIRS: usize = 1_000;
    pub const C2_MAX_W: u64 = 4;
    pub const C2_TIME: Duration = Duration::from_secs(5);

    pub const C3_SAMPLES: usize = 10_000;
    pub const C3_MAX_W: u64 = 5;
    pub const C3_TIME: Duration = Duration::from_secs(30);

    pub const C4_TUPLES: usize = 10_000;
    pub const C4_MAX_W: u64 = 6;
    pub const C4_TIME: Duration = Duration::from_secs(60);

    pub const C5_MAX_W: u64 = 2;
    pub const C5_MAX_PAIRS: usize = 100_000;
    pub const C5_MAX_ROUNDS: usize = 64;
    pub const C5_TIME: Duration = Duration::from_secs(120);

    pub const C6_CONDITIONS: usize = 1_000;
    pub const C6_MAX_ARITY: usize = 6;
    pub const C6_MAX_VARS: usize = 8;
    pub const C6_TIME: Duration = Duration::from_secs(5);

    pub const C8_MAX_W: usize = 2;
    pub const C8_TIME: Duration = Duration::from_secs(120);

    pub const C9_MAX_W: usize = 3;
    pub const C9_MAX_VARS: usize = 3;
    pub const C9_TIME: Duration = Duration::from_secs(60);

    pub const C10_TIME: Duration = Duration::from_secs(1);
}

/// Failures kept per criterion; the count is always exact.
const FAILURES_SHOWN: usize = 5;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    /// Number of individual checks performed.
    pub checked: usize,
    pub failure_count: usize,
    pub failures: Vec<String>,
    pub detail: String,
    pub elapsed_ms: u64,
    pub limit_ms: u64,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} criterion {:>2}: {} ({} checks, {} failures, {} ms / {} ms limit) {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.checked,
            self.failure_count,
            self.elapsed_ms,
            self.limit_ms,
            self.detail
        )?;
        for msg in &self.failures {
            write!(f, "\n    {msg}")?;
        }
        Ok(())
    }
}

struct Tally {
    id: u32,
    title: &'static str,
    limit: Duration,
    start: Instant,
    checked: usize,
    failure_count: usize,
    failures: Vec<String>,
    detail: String,
}

impl Tally {
    fn new(id: u32, title: &'static str, limit: Duration) -> Self {
        Tally {
            id,
            title,
            limit,
            start: Instant::now(),
            checked: 0,
            failure_count: 0,
            failures: Vec::new(),
            detail: String::new(),
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < FAILURES_SHOWN {
                self.failures.push(msg());
            }
        }
    }

    fn finish(self) -> CriterionResult {
        let elapsed = self.start.elapsed();
        let mut failures = self.failures;
        let mut failure_count = self.failure_count;
        if elapsed > self.limit {
            failure_count += 1;
            failures.push(format!("took {elapsed:?}, limit {:?}", self.limit));
        }
        CriterionResult {
            id: self.id,
            title: self.title,
            passed: failure_count == 0 && self.checked > 0,
            checked: self.checked,
            failure_count,
            failures,
            detail: self.detail,
            elapsed_ms: elapsed.as_millis() as u64,
            limit_ms: self.limit.as_millis() as u64,
        }
    }
}

fn rng_for(seed: u64, criterion: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::from(criterion));
    rng
}

fn algebra(k: usize) -> FreeAlgebra {
    FreeAlgebra::with_arity(k).expect("k >= 3")
}

/// Rewriting a term with single wnu identities never changes its normal form.
pub fn criterion_1(seed: u64) -> CriterionResult {
    use limits::*;
    let mut t = Tally::new(1, "normal forms are invariant under wnu rewrites", C1_TIME);
    let mut rng = rng_for(seed, 1);
    let alg = algebra(3);
    let store = alg.store();
    let mut total_rewrites = 0;
    for _ in 0..C1_TERMS {
        let vars = gen::variables(store, rng.random_range(1..=C1_MAX_VARS));
        let original = gen::bounded_term(store, &mut rng, &vars, C1_MAX_W);
        let want = alg.normalize(original);
        let mut cur = original;
        let steps = rng.random_range(0..=C1_MAX_REWRITES);
        for _ in 0..steps {
            cur = gen::rewrite_once(store, &mut rng, cur, C1_MAX_W + C1_MAX_REWRITES as u64);
        }
        total_rewrites += steps;
        let got = alg.normalize(cur);
        t.check(got == want, || {
            format!(
                "{} rewrote to {}: normal forms {} vs {}",
                alg.render(original),
                alg.render(cur),
                alg.render(want),
                alg.render(got)
            )
        });
    }
    t.detail = format!("{total_rewrites} rewrites applied");
    t.finish()
}

/// wA is idempotent and every single-odd placement gives the same value.
pub fn criterion_2(seed: u64) -> CriterionResult {
    use limits::*;
    let mut t = Tally::new(2, "wA satisfies the k-wnu identities", C2_TIME);
    let mut rng = rng_for(seed, 2);
    for k in [3, 4, 5] {
        let alg = algebra(k);
        let vars = gen::variables(alg.store(), 3);
        for _ in 0..C2_PAIRS {
            let a = gen::normal_term(&alg, &mut rng, &vars, C2_MAX_W);
            let b = loop {
                let b = gen::normal_term(&alg, &mut rng, &vars, C2_MAX_W);
                if b != a {
                    break b;
                }
            };
            let all_a = vec![a; k];
            t.check(alg.wa(&all_a).expect("normal") == a, || {
                format!("k={k}: wA(a,…,a) ≠ a for a={}", alg.render(a))
            });
            let placed: Vec<NormalTerm> = (0..k)
                .map(|i| {
                    let mut args = all_a.clone();
                    args[i] = b;
                    alg.wa(&args).expect("normal")
                })
                .collect();
            t.check(placed.iter().all(|p| *p == placed[0]), || {
                format!(
                    "k={k}: a={}, b={}: placements give {:?}",
                    alg.render(a),
                    alg.render(b),
                    placed.iter().map(|p| alg.render(*p)).collect::<Vec<_>>()
                )
            });
        }
    }
    t.finish()
}

/// The four structural facts about ⪯ and wA.
pub fn criterion_3(seed: u64) -> CriterionResult {
    use limits::*;
    let mut t = Tally::new(3, "structural facts about the subterm order and wA", C3_TIME);
    let mut rng = rng_for(seed, 3);
    let mut nonvacuous_d = 0;
    let mut nonvacuous_c = 0;
    for k in [3, 4] {
        let alg = algebra(k);
        let store = alg.store();
        let vars = gen::variables(store, 4);
        let names = &gen::VARIABLES[..4];
        for _ in 0..C3_SAMPLES {
            // (a) distinct variables are incomparable
            let x = *names.choose(&mut rng).unwrap();
            let y = *names.choose(&mut rng).unwrap();
            let (vx, vy) = (alg.variable(x).unwrap(), alg.variable(y).unwrap());
            t.check(alg.is_subterm(vx, vy) == (x == y), || {
                format!("(a) k={k}: {x} ⪯ {y} is wrong")
            });

            let args: Vec<NormalTerm> = (0..k)
                .map(|_| gen::normal_term(&alg, &mut rng, &vars, C3_MAX_W))
                .collect();
            let b = gen::normal_term(&alg, &mut rng, &vars, C3_MAX_W);
            let a = alg
                .certify(gen::random_subterm(store, &mut rng, b.term()))
                .expect("subterms of normal terms are normal");
            for i in 0..k {
                let mut with_b = args.clone();
                with_b[i] = b;
                let image = alg.wa(&with_b).expect("normal");
                // (b) an argument is below the image
                t.check(alg.is_subterm(b, image), || {
                    format!("(b) k={k}: {} not ⪯ {}", alg.render(b), alg.render(image))
                });
                // (c) anything below an argument is below the image
                if a != b {
                    nonvacuous_c += 1;
                }
                t.check(alg.is_subterm(a, image), || {
                    format!(
                        "(c) k={k}: {} ⪯ {} but not ⪯ {}",
                        alg.render(a),
                        alg.render(b),
                        alg.render(image)
                    )
                });
            }

            // (d) below the image but below no argument means equal to it
            let image = alg.wa(&args).expect("normal");
            let below = alg
                .certify(gen::random_subterm(store, &mut rng, image.term()))
                .expect("subterms of normal terms are normal");
            let d_cases = [below, b];
            for c in d_cases {
                if alg.is_subterm(c, image) && args.iter().all(|&arg| !alg.is_subterm(c, arg)) {
                    nonvacuous_d += 1;
                    t.check(c == image, || {
                        format!(
                            "(d) k={k}: {} ⪯ {} and below no argument",
                            alg.render(c),
                            alg.render(image)
                        )
                    });
                } else {
                    t.check(true, String::new);
                }
            }
        }
    }
    t.detail = format!("{nonvacuous_c} strict (c) instances, {nonvacuous_d} non-vacuous (d) instances");
    t.finish()
}

/// Draws a pair in S from a small pool, so images often share material.
fn s_pair<R: Rng>(alg: &FreeAlgebra, rng: &mut R, pool: &[NormalTerm]) -> Option<(NormalTerm, NormalTerm)> {
    for _ in 0..32 {
        let a = *pool.choose(rng).unwrap();
        let b = *pool.choose(rng).unwrap();
        if alg.in_s(a, b) {
            return Some((a, b));
        }
    }
    None
}

/// The coordinatewise wA image of S-pairs stays in S.
pub fn criterion_4(seed: u64) -> CriterionResult {
    use limits::*;
    let mut t = Tally::new(4, "S is closed under coordinatewise wA", C4_TIME);
    let mut rng = rng_for(seed, 4);
    let mut from_permutations = 0;
    for k in [3, 4] {
        let alg = algebra(k);
        let vars = gen::variables(alg.store(), 4);
        let mut done = 0;
        while done < C4_TUPLES {
            let pool: Vec<NormalTerm> = (0..rng.random_range(2..=k + 1))
                .map(|_| gen::normal_term(&alg, &mut rng, &vars, C4_MAX_W))
                .collect();
            let Some(first) = s_pair(&alg, &mut rng, &pool) else {
                continue;
            };
            let mut tuple = vec![first];
            while tuple.len() < k {
                // half the time reuse a pair, swapped or not, from the tuple so far
                let next = if rng.random_bool(0.5) {
                    let &(a, b) = tuple.choose(&mut rng).unwrap();
                    if rng.random_bool(0.5) {
                        Some((b, a))
                    } else {
                        Some((a, b))
                    }
                } else {
                    s_pair(&alg, &mut rng, &pool)
                };
                if let Some(p) = next {
                    tuple.push(p);
                }
            }
            if rng.random_bool(0.3) {
                from_permutations += 1;
                let perm: Vec<usize> = {
                    let mut p: Vec<usize> = (0..k).collect();
                    rand::seq::SliceRandom::shuffle(p.as_mut_slice(), &mut rng);
                    p
                };
                let base = tuple.clone();
                for (i, &j) in perm.iter().enumerate() {
                    tuple[i] = (base[i].0, base[j].1);
                }
                if !tuple.iter().all(|&(a, b)| alg.in_s(a, b)) {
                    continue;
                }
            }
            let lefts: Vec<NormalTerm> = tuple.iter().map(|p| p.0).collect();
            let rights: Vec<NormalTerm> = tuple.iter().map(|p| p.1).collect();
            let l = alg.wa(&lefts).expect("normal");
            let r = alg.wa(&rights).expect("normal");
            t.check(alg.in_s(l, r), || {
                format!(
                    "k={k}: wA image ({}, {}) of {:?} is comparable",
                    alg.render(l),
                    alg.render(r),
                    tuple
                        .iter()
                        .map(|p| (alg.render(p.0), alg.render(p.1)))
                        .collect::<Vec<_>>()
                )
            });
            done += 1;
        }
    }
    t.detail = format!("{from_permutations} permuted rebuilds attempted (kept only if still in S)");
    t.finish()
}

/// The bounded closure of the distinct variable pairs misses the diagonal.
pub fn criterion_5(_seed: u64) -> CriterionResult {
    use limits::*;
    let mut t = Tally::new(5, "bounded closure of variable pairs avoids the diagonal", C5_TIME);
    let alg = algebra(3);
    let gens = PairGeneratorSet::distinct_variables(&alg, &["x", "y", "z", "u"]).expect("valid names");
    t.check(gens.len() == 12, || {
        format!("expected 12 generators, got {}", gens.len())
    });
    let budget = ClosureBudget {
        max_rounds: C5_MAX_ROUNDS,
        max_pairs: C5_MAX_PAIRS,
        max_w_per_coordinate: C5_MAX_W,
    };
    let closure = close_pairs(&alg, &gens, &budget).expect("valid budget");
    let diag = diagonal_witness(&closure);
    t.check(diag.is_none(), || {
        let (a, b) = diag.unwrap();
        format!("diagonal pair ({}, {})", alg.render(a), alg.render(b))
    });
    let bad = verify_pairs_in_s(&alg, &closure);
    for (a, b) in &bad {
        t.check(false, || {
            format!("({}, {}) is not in S", alg.render(*a), alg.render(*b))
        });
    }
    t.checked += closure.len();
    t.detail = format!(
        "{} pairs after {} rounds, stopped: {:?}",
        closure.len(),
        closure.rounds_completed(),
        closure.stop_reason()
    );
    t.finish()
}

/// Projection triviality of `t(x̄) = t(ȳ)` against the shared-coordinate test.
pub fn criterion_6(seed: u64) -> CriterionResult {
    use limits::*;
    let mut t = Tally::new(6, "projection search matches the shared-coordinate test", C6_TIME);
    let mut rng = rng_for(seed, 6);
    let mut trivial = 0;
    for _ in 0..C6_CONDITIONS {
        let m = rng.random_range(1..=C6_MAX_ARITY);
        let n = rng.random_range(1..=C6_MAX_VARS);
        let names = &gen::VARIABLES[..n];
        let xs: Vec<&str> = (0..m).map(|_| *names.choose(&mut rng).unwrap()).collect();
        let ys: Vec<&str> = (0..m).map(|_| *names.choose(&mut rng).unwrap()).collect();
        let slemc = Slemc::new("t", &xs, &ys).expect("same length");
        let cond = slemc.to_condition();
        let shared = (0..m).any(|i| xs[i] == ys[i]);
        let found = is_trivial(&cond);
        trivial += usize::from(found.is_some());
        t.check(found.is_some() == shared, || {
            format!("{slemc}: witness {found:?}, shared coordinate {shared}")
        });
        if let Some(asg) = &found {
            let id = &cond.identities[0];
            t.check(satisfies(&cond, asg).unwrap_or(false), || {
                format!("{slemc}: {asg} fails project_eval")
            });
            t.check(oracle::agree_on_two_elements(&id.lhs, &id.rhs, asg), || {
                format!("{slemc}: {asg} fails on the two-element projection algebra")
            });
        }
        match classify_slemc(&cond) {
            Ok(c) => {
                let want = if shared {
                    Verdict::Trivial
                } else {
                    Verdict::CandidateNontrivial
                };
                t.check(c.verdict == want, || format!("{slemc}: classified {c}"));
                t.check(c.witness == found, || {
                    format!("{slemc}: classify witness {:?} vs {found:?}", c.witness)
                });
            }
            Err(e) => t.check(false, || format!("{slemc}: {e}")),
        }
    }
    t.detail = format!("{trivial} of {C6_CONDITIONS} trivial");
    t.finish()
}

/// The three concrete conditions with known verdicts.
pub fn criterion_7(_seed: u64) -> CriterionResult {
    let mut t = Tally::new(7, "concrete verdicts", Duration::from_secs(1));
    let nested = parse_condition("t(t(x,y,z),y,z) = t(x,x,z)").expect("parses");
    let w = is_trivial(&nested);
    t.check(w.as_ref().and_then(|a| a.get("t")) == Some(3), || {
        format!("nested: witness {w:?}, want t↦π3")
    });
    if let Some(asg) = &w {
        t.check(satisfies(&nested, asg).unwrap_or(false), || {
            "nested: witness fails".into()
        });
    }

    let siggers = parse_condition("t(r,a,r,e) = t(a,r,e,a)").expect("parses");
    match classify_slemc(&siggers) {
        Ok(c) => t.check(c.verdict == Verdict::CandidateNontrivial && c.witness.is_none(), || {
            format!("siggers: classified {c}")
        }),
        Err(e) => t.check(false, || format!("siggers: {e}")),
    }
    t.check(is_trivial(&siggers).is_none(), || {
        "siggers: is_trivial found a witness".into()
    });

    let comm = parse_condition("w(x,y) = w(y,x)").expect("parses");
    t.check(is_trivial(&comm).is_none(), || {
        "commutativity: is_trivial found a witness".into()
    });
    t.finish()
}

/// No Siggers witness with at most two occurrences of w, and the number of
/// candidates tried is the oracle's count of normal terms.
pub fn criterion_8(_seed: u64) -> CriterionResult {
    use limits::*;
    let mut t = Tally::new(8, "bounded Siggers witness search", C8_TIME);
    let slemc = Slemc::new("t", &["r", "a", "r", "e"], &["a", "r", "e", "a"]).expect("same length");
    let formals = formal_variables(4);
    let names: Vec<&str> = formals.iter().map(String::as_str).collect();
    let mut detail = Vec::new();
    for k in [3, 4] {
        let alg = algebra(k);
        let out = search_wnu_witness(&alg, &slemc, C8_MAX_W).expect("valid search");
        t.check(out.witness.is_none(), || {
            format!("k={k}: witness {}", alg.render(out.witness.unwrap()))
        });
        let want = oracle::brute_force_normal_count(&names, k, C8_MAX_W);
        t.check(out.candidates_examined == want, || {
            format!(
                "k={k}: examined {} candidates, oracle counts {want}",
                out.candidates_examined
            )
        });
        detail.push(format!("k={k}: {} candidates", out.candidates_examined));
    }
    t.detail = detail.join(", ");
    t.finish()
}

/// The enumerator yields exactly the brute-force normal terms.
pub fn criterion_9(_seed: u64) -> CriterionResult {
    use limits::*;
    let mut t = Tally::new(9, "enumeration agrees with generate-and-filter", C9_TIME);
    let mut largest = 0;
    for k in [3, 4] {
        let alg = algebra(k);
        for n in 1..=C9_MAX_VARS {
            let names = &gen::VARIABLES[..n];
            for max_w in 0..=C9_MAX_W {
                let want = oracle::brute_force_normal(names, k, max_w);
                let mut got = HashSet::with_capacity(want.len());
                let mut dup = 0;
                for term in alg.enumerate_normal(names, max_w).expect("nonempty") {
                    if !got.insert(alg.render(term)) {
                        dup += 1;
                    }
                }
                largest = largest.max(want.len());
                t.check(dup == 0 && got == want, || {
                    format!(
                        "k={k}, {n} vars, max_w={max_w}: {} yielded ({dup} repeated), {} expected, {} missing, {} extra",
                        got.len(),
                        want.len(),
                        want.difference(&got).count(),
                        got.difference(&want).count()
                    )
                });
            }
        }
    }
    t.detail = format!("largest set {largest} terms");
    t.finish()
}

/// ({0,1}, x+y+z mod 2) satisfies the 3-wnu identities.
pub fn criterion_10(_seed: u64) -> CriterionResult {
    use limits::*;
    let mut t = Tally::new(10, "parity on {0,1} is a 3-wnu", C10_TIME);
    let z2 = FiniteAlgebra::new(2).with_op("w", 3, |a| (a[0] + a[1] + a[2]) % 2);
    let ids = wnu_identities("w", 3).expect("parses");
    t.check(matches!(find_counterexample(&ids, &z2), Ok(None)), || {
        "checker found a counterexample".into()
    });
    // the same fact by direct enumeration of the 2^3 valuations
    for bits in 0..8usize {
        let (x, y) = (bits & 1, (bits >> 1) & 1);
        let w = |a: usize, b: usize, c: usize| (a + b + c) % 2;
        t.check(w(x, x, x) == x, || format!("w({x},{x},{x})"));
        t.check(w(y, x, x) == w(x, y, x) && w(x, y, x) == w(x, x, y), || {
            format!("x={x}, y={y}")
        });
    }
    // and the checker must reject an operation that is not a wnu
    let first = FiniteAlgebra::new(2).with_op("w", 3, |a| a[0]);
    t.check(matches!(find_counterexample(&ids, &first), Ok(Some(_))), || {
        "projection accepted".into()
    });
    t.finish()
}

pub type Criterion = fn(u64) -> CriterionResult;

pub const CRITERIA: [Criterion; 10] = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
];

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|c| c(seed)).collect()
}
