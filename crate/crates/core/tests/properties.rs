use std::collections::HashMap;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wnu_core::maltsev::{
    is_trivial, parse_condition, refute_via_s, satisfies, search_wnu_witness, Outcome, ProjectionAssignment, Slemc,
};
use wnu_core::selftest::{gen, oracle};
use wnu_core::{close_pairs, close_pairs_naive, ClosureBudget, FreeAlgebra, NormalTerm, PairGeneratorSet};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn subterm_order_matches_explicit_closure() {
    let mut rng = rng(11);
    for k in [3, 4] {
        let alg = FreeAlgebra::with_arity(k).unwrap();
        let vars = gen::variables(alg.store(), 3);
        for _ in 0..40 {
            let roots: Vec<NormalTerm> = (0..4).map(|_| gen::normal_term(&alg, &mut rng, &vars, 5)).collect();
            let (nodes, rel) = oracle::explicit_subterm_closure(&alg, &roots);
            for (i, &a) in nodes.iter().enumerate() {
                for (j, &b) in nodes.iter().enumerate() {
                    let (a, b) = (alg.certify(a).unwrap(), alg.certify(b).unwrap());
                    assert_eq!(alg.is_subterm(a, b), rel[i][j], "{} ⪯ {}", alg.render(a), alg.render(b));
                }
            }
        }
    }
}

#[test]
fn subterm_order_is_a_partial_order() {
    let mut rng = rng(12);
    let alg = FreeAlgebra::with_arity(3).unwrap();
    let vars = gen::variables(alg.store(), 3);
    for _ in 0..2000 {
        let c = gen::normal_term(&alg, &mut rng, &vars, 6);
        let b = alg
            .certify(gen::random_subterm(alg.store(), &mut rng, c.term()))
            .unwrap();
        let a = alg
            .certify(gen::random_subterm(alg.store(), &mut rng, b.term()))
            .unwrap();
        assert!(alg.is_subterm(a, a));
        assert!(alg.is_subterm(a, b) && alg.is_subterm(b, c) && alg.is_subterm(a, c));
        if a != b {
            assert!(!alg.is_subterm(b, a));
        }
    }
}

#[test]
fn normal_terms_are_fixed_and_images_are_normal() {
    for k in [3, 4] {
        let alg = FreeAlgebra::with_arity(k).unwrap();
        let normal: Vec<NormalTerm> = alg.enumerate_normal(&["x", "y"], 2).unwrap().collect();
        for &t in &normal {
            assert_eq!(alg.normalize(t.term()), t);
        }
        let mut rng = rng(13);
        for _ in 0..2000 {
            let args: Vec<NormalTerm> = (0..k).map(|_| *normal.choose(&mut rng).unwrap()).collect();
            let image = alg.wa(&args).unwrap();
            assert!(alg.is_normal(image.term()));
        }
    }
}

/// Substitution agrees with textual replacement followed by normalization.
#[test]
fn substitution_matches_textual_replacement() {
    let mut rng = rng(14);
    let alg = FreeAlgebra::with_arity(3).unwrap();
    let store = alg.store();
    let vars = gen::variables(store, 3);
    for _ in 0..500 {
        let body = gen::bounded_term(store, &mut rng, &vars, 4);
        let images: Vec<NormalTerm> = (0..3).map(|_| gen::normal_term(&alg, &mut rng, &vars, 3)).collect();
        let env: Vec<(&str, NormalTerm)> = gen::VARIABLES[..3]
            .iter()
            .copied()
            .zip(images.iter().copied())
            .collect();
        let text = alg.render(body);
        let mut replaced = String::new();
        for ch in text.chars() {
            match env.iter().find(|(v, _)| *v == ch.encode_utf8(&mut [0; 4])) {
                Some((_, t)) => replaced.push_str(&alg.render(*t)),
                None => replaced.push(ch),
            }
        }
        let want = alg.normalize(alg.parse(&replaced).unwrap());
        assert_eq!(alg.substitute_named(body, &env).unwrap(), want, "{text}");
    }
}

#[test]
fn satisfies_agrees_with_two_element_evaluation() {
    let mut rng = rng(15);
    let names = ["x", "y", "z"];
    for _ in 0..500 {
        let arity = rng.random_range(1..=4);
        let term = |rng: &mut ChaCha8Rng| {
            let args: Vec<&str> = (0..arity).map(|_| *names.choose(rng).unwrap()).collect();
            format!("f({})", args.join(","))
        };
        let lhs = term(&mut rng);
        let rhs = if rng.random_bool(0.2) {
            names.choose(&mut rng).unwrap().to_string()
        } else {
            term(&mut rng)
        };
        let cond = parse_condition(&format!("{lhs} = {rhs}")).unwrap();
        let c = rng.random_range(1..=arity);
        let asg = ProjectionAssignment::new().with("f", c);
        let id = &cond.identities[0];
        assert_eq!(
            satisfies(&cond, &asg).unwrap(),
            oracle::agree_on_two_elements(&id.lhs, &id.rhs, &asg),
            "{cond} under {asg}"
        );
        if let Some(w) = is_trivial(&cond) {
            assert!(oracle::agree_on_two_elements(&id.lhs, &id.rhs, &w));
        }
    }
}

/// Without a shared coordinate no bounded witness exists and the relation
/// generated by the argument pairs stays off the diagonal.
#[test]
fn nontrivial_same_symbol_conditions_are_refuted() {
    let mut rng = rng(16);
    let alg = FreeAlgebra::with_arity(3).unwrap();
    let names = &gen::VARIABLES[..4];
    let budget = ClosureBudget {
        max_rounds: 4,
        max_pairs: 5_000,
        max_w_per_coordinate: 1,
    };
    let mut tried = 0;
    while tried < 60 {
        let m = rng.random_range(2..=5);
        let xs: Vec<&str> = (0..m).map(|_| *names.choose(&mut rng).unwrap()).collect();
        let ys: Vec<&str> = (0..m).map(|_| *names.choose(&mut rng).unwrap()).collect();
        let slemc = Slemc::new("t", &xs, &ys).unwrap();
        if slemc.shared_coordinate().is_some() {
            continue;
        }
        tried += 1;
        let max_w = if m <= 3 { 2 } else { 1 };
        let out = search_wnu_witness(&alg, &slemc, max_w).unwrap();
        assert_eq!(out.witness, None, "{slemc}");
        let r = refute_via_s(&alg, &slemc, &budget).unwrap();
        assert_eq!(r.outcome, Outcome::ConfirmedAtBudget, "{slemc}: {}", r.note);
    }
}

#[test]
fn trivial_conditions_have_a_projection_witness_at_zero() {
    let alg = FreeAlgebra::with_arity(4).unwrap();
    let slemc = Slemc::new("t", &["x", "y", "z"], &["y", "x", "z"]).unwrap();
    let out = search_wnu_witness(&alg, &slemc, 0).unwrap();
    assert_eq!(out.witness.map(|t| alg.render(t)).as_deref(), Some("p3"));
}

#[test]
fn semi_naive_and_naive_closures_agree() {
    let alg = FreeAlgebra::with_arity(3).unwrap();
    let gens = PairGeneratorSet::distinct_variables(&alg, &["x", "y", "z"]).unwrap();
    let budget = ClosureBudget {
        max_rounds: 8,
        max_pairs: 1_000_000,
        max_w_per_coordinate: 1,
    };
    let fast = close_pairs(&alg, &gens, &budget).unwrap();
    let slow = close_pairs_naive(&alg, &gens, &budget).unwrap();
    assert_eq!(fast.key_set(), slow.key_set());
    assert!(fast.saturated());
    assert_eq!(fast.len(), 126);
}

#[test]
fn enumeration_is_ordered_by_weight_then_text() {
    let alg = FreeAlgebra::with_arity(3).unwrap();
    let terms: Vec<(u64, String)> = alg
        .enumerate_normal(&["x", "y", "z"], 2)
        .unwrap()
        .map(|t| (alg.w_count(t), alg.render(t)))
        .collect();
    let mut sorted = terms.clone();
    sorted.sort();
    assert_eq!(terms, sorted);
    let counts: HashMap<u64, usize> = terms.iter().fold(HashMap::new(), |mut m, (w, _)| {
        *m.entry(*w).or_default() += 1;
        m
    });
    assert_eq!(counts[&0], 3);
    assert_eq!(counts[&1], 12);
}

/// At small sizes the image of wA is exactly the set of normal terms, with
/// normality judged on the rendered text.
#[test]
fn image_of_wa_is_exactly_the_normal_terms() {
    for k in [3, 4] {
        let alg = FreeAlgebra::with_arity(k).unwrap();
        let names = ["x", "y", "z"];
        let small: Vec<NormalTerm> = alg.enumerate_normal(&names[..2], 1).unwrap().collect();
        let mut image = std::collections::HashSet::new();
        let mut idx = vec![0usize; k];
        loop {
            let args: Vec<NormalTerm> = idx.iter().map(|&i| small[i]).collect();
            let t = alg.render(alg.wa(&args).unwrap());
            assert!(oracle::normal_text(&t), "k={k}: wA image {t} is not normal");
            image.insert(t);
            let Some(p) = idx.iter().rposition(|&i| i + 1 < small.len()) else {
                break;
            };
            idx[p] += 1;
            idx[p + 1..].iter_mut().for_each(|i| *i = 0);
        }
        // every normal term is the image of its own arguments
        for t in alg.enumerate_normal(&names, 3).unwrap() {
            let Some(children) = alg.store().children(t.term()) else {
                continue;
            };
            let args: Vec<NormalTerm> = children.iter().map(|&c| alg.certify(c).unwrap()).collect();
            assert_eq!(alg.wa(&args).unwrap(), t);
        }
        assert!(image.len() > small.len());
    }
}
