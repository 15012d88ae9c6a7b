//! Expected values for the trickier operations, computed first with the
//! independent Laplacian-based oracle in `common` and then frozen against
//! the library implementations.

mod common;

use std::collections::BTreeMap;

use common::{banana, comb_of, dumbbell, graph, k4, ladder_p2, Comb};
use hyperell::divisor::{is_hyperelliptic_by_rank, rank, reduce, subdivide, Divisor};
use hyperell::graph::Model;
use hyperell::harmonic::{is_hyperelliptic, tree_quotient_involutions};
use hyperell::rational::rat;

#[test]
fn reduce_on_two_cycle_matches_exhaustive_class() {
    // the class of 2v on the 2-cycle: the independent oracle lists every
    // effective representative; the u-reduced one is the divisor that no
    // nonempty subset away from u can fire legally
    let comb = Comb {
        n: 2,
        edges: vec![(0, 1), (0, 1)],
    };
    let d = vec![0i64, 2];
    let representatives: Vec<Vec<i64>> = comb
        .effective(2)
        .into_iter()
        .filter(|e| comb.equivalent(&d, e))
        .collect();
    assert_eq!(representatives, vec![vec![0, 2], vec![2, 0]]);
    // of these, only (2,0) is u-reduced: firing {v} from (0,2) is legal
    let c2 = Model::from_parts_unchecked(
        graph(&["u", "v"], &[("e1", "u", "v"), ("e2", "u", "v")]),
        vec![rat(1), rat(1)],
        vec![0, 0],
    );
    let sub = subdivide(&c2, 1);
    let reduced = reduce(&sub, &Divisor { chips: vec![0, 2] }, 0);
    assert_eq!(reduced.chips, vec![2, 0]);
}

#[test]
fn k4_canonical_divisor_rank_from_definition() {
    let (comb, index) = comb_of(&k4(), 1);
    let mut d = vec![0i64; comb.n];
    for i in 1..=4 {
        d[index[&format!("v{}", i)]] = 1;
    }
    // independent definition-level rank
    assert_eq!(comb.rank(&d), 2);
    // the library agrees, including the refinement guard
    let chips: BTreeMap<String, i64> = (1..=4).map(|i| (format!("v{}", i), 1)).collect();
    assert_eq!(rank(&k4(), &chips).unwrap(), 2);
    // Riemann-Roch sanity: rank(K) - rank(0) = deg K - g + 1 = 2
    assert_eq!(rank(&k4(), &BTreeMap::new()).unwrap(), 0);
}

#[test]
fn k4_degree_2_divisors_all_have_rank_at_most_0() {
    let (comb, _) = comb_of(&k4(), 1);
    for e in comb.effective(2) {
        assert!(comb.rank(&e) <= 0, "unexpected rank-1 divisor {:?}", e);
    }
    assert!(!is_hyperelliptic_by_rank(&k4()).unwrap().hyperelliptic);
}

#[test]
fn theta_has_a_rank_1_divisor() {
    let theta = banana(3);
    let (comb, index) = comb_of(&theta, 1);
    let mut d = vec![0i64; comb.n];
    d[index["u"]] = 1;
    d[index["v"]] = 1;
    assert_eq!(comb.rank(&d), 1);
    let decision = is_hyperelliptic_by_rank(&theta).unwrap();
    assert!(decision.hyperelliptic);
    assert!(decision.witness.is_some());
}

#[test]
fn banana_b4_hyperelliptic_both_ways() {
    let b4 = banana(4);
    assert!(is_hyperelliptic(&b4).unwrap().hyperelliptic);
    assert!(is_hyperelliptic_by_rank(&b4).unwrap().hyperelliptic);
}

#[test]
fn dumbbell_hyperelliptic_both_ways() {
    let d = dumbbell();
    let inv = is_hyperelliptic(&d).unwrap();
    assert!(inv.hyperelliptic);
    assert!(is_hyperelliptic_by_rank(&d).unwrap().hyperelliptic);
}

#[test]
fn ladder_quotient_multiplicities() {
    // the degree-2 quotient of the genus-3 ladder has horizontal
    // multiplicity 1 at every vertex (trivial stabilizers)
    let dec = is_hyperelliptic(&ladder_p2()).unwrap();
    let phi = dec.morphism.unwrap();
    for v in 0..phi.domain().graph().n_vertices() {
        assert_eq!(phi.horizontal_multiplicity(v).unwrap(), 1);
    }
    assert_eq!(phi.degree().unwrap(), 2);
}

#[test]
fn generic_rail_lengths_keep_the_witness_unique() {
    // ladder with distinct rail lengths: still hyperelliptic, with exactly
    // one tree-quotient involution
    let m = Model::new(
        graph(
            &["v1", "v2", "w1", "w2"],
            &[
                ("rail_v", "v1", "v2"),
                ("rail_w", "w1", "w2"),
                ("r1a", "v1", "w1"),
                ("r1b", "v1", "w1"),
                ("r2a", "v2", "w2"),
                ("r2b", "v2", "w2"),
            ],
        ),
        vec![rat(2), rat(2), rat(1), rat(1), rat(3), rat(3)],
    )
    .unwrap();
    let cl = m.canonical_loopless_model();
    assert_eq!(tree_quotient_involutions(&cl).len(), 1);
}
