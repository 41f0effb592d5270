mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use skewlat::algebra::{classify, verify_skew_lattice};
use skewlat::category::categorical_verdict;
use skewlat::coset::hom_equivalence_check;
use skewlat::io::{
    export_dot, find_isomorphism, fixtures, parse_algebra, report, serialize_algebra,
};
use skewlat::matrix::{
    build_block_triple, closure, lemma16_check, mat_circ, mat_leq, mat_nabla, prop21_check,
    BlockTriple, ExactMatrix, MatrixError, ScalarSpec, ThreeBlock, BLOCK_NAMES,
};
use skewlat::{CayleyAlgebra, ClassId, SkewLattice};

fn small_fixture() -> impl Strategy<Value = CayleyAlgebra> {
    prop_oneof![
        Just(fixtures::fig1()),
        Just(fixtures::x2()),
        Just(fixtures::ex13()),
    ]
}

fn relabelled() -> impl Strategy<Value = (CayleyAlgebra, Vec<usize>)> {
    small_fixture().prop_flat_map(|alg| {
        let n = alg.size();
        (Just(alg), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

/// The rectangular skew lattice on `I × J`: `(i, j) ∧ (k, l) = (i, l)` and
/// `x ∨ y = y ∧ x`.
fn rectangular_band(rows: usize, cols: usize) -> CayleyAlgebra {
    let n = rows * cols;
    let meet: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).map(|y| (x / cols) * cols + y % cols).collect())
        .collect();
    let join = (0..n)
        .map(|x| (0..n).map(|y| meet[y][x]).collect())
        .collect();
    CayleyAlgebra::new(meet, join).unwrap()
}

fn gf(p: u64) -> ScalarSpec {
    ScalarSpec::Prime(p)
}

fn block(scalar: ScalarSpec, r: usize, c: usize, entries: &[u32]) -> ExactMatrix {
    ExactMatrix::from_entries(
        scalar,
        r,
        c,
        entries[..r * c].iter().map(|&e| BigInt::from(e)).collect(),
    )
    .unwrap()
}

/// A chain `a ≥ b ≥ c` in 4-block form with the relations imposed.
fn chain_triple(p: u64, sizes: [usize; 4], seed: &[u32]) -> BlockTriple {
    let f = gf(p);
    let mut t = BlockTriple::zero(f, sizes);
    let mut at = 0;
    let idx = |n: &str| BLOCK_NAMES.iter().position(|&b| b == n).unwrap();
    for name in ["a14", "a24", "a34", "b13", "b23", "c12"] {
        let (r, c) = t.block_by_name(name).unwrap().shape();
        t.set_block(idx(name), block(f, r, c, &seed[at..])).unwrap();
        at += r * c;
    }
    let g = |t: &BlockTriple, n: &str| t.block_by_name(n).unwrap().clone();
    let b14 = g(&t, "a14")
        .add(&g(&t, "b13").mul(&g(&t, "a34")).unwrap())
        .unwrap();
    let b24 = g(&t, "a24")
        .add(&g(&t, "b23").mul(&g(&t, "a34")).unwrap())
        .unwrap();
    let c13 = g(&t, "b13")
        .add(&g(&t, "c12").mul(&g(&t, "b23")).unwrap())
        .unwrap();
    let c14 = b14.add(&g(&t, "c12").mul(&b24).unwrap()).unwrap();
    for (n, m) in [("b14", b14), ("b24", b24), ("c13", c13), ("c14", c14)] {
        t.set_block(idx(n), m).unwrap();
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabelling_preserves_every_report_line((alg, perm) in relabelled()) {
        let moved = alg.permuted(&perm).unwrap();
        let (r0, r1) = (report(&alg), report(&moved));
        for key in ["skew_lattice", "left_handed", "right_handed", "normal", "conormal",
                    "symmetric", "meet_distributive", "d_class_count", "categorical",
                    "strictly_categorical"] {
            prop_assert_eq!(r0.get(key), r1.get(key), "{}", key);
        }
        let iso = find_isomorphism(&alg, &moved).unwrap();
        prop_assert!(iso.is_some());
    }

    #[test]
    fn serialization_round_trips((alg, perm) in relabelled()) {
        let moved = alg.permuted(&perm).unwrap();
        let text = serialize_algebra(&moved);
        prop_assert_eq!(parse_algebra(&text).unwrap(), moved);
    }

    #[test]
    fn identities_pass_to_subalgebras(seed in proptest::collection::btree_set(0usize..9, 1..5)) {
        let fig3 = fixtures::fig3();
        let mut set: Vec<usize> = seed.into_iter().collect();
        loop {
            let mut next = set.clone();
            for &x in &set {
                for &y in &set {
                    next.push(fig3.meet(x, y));
                    next.push(fig3.join(x, y));
                }
            }
            next.sort_unstable();
            next.dedup();
            if next == set {
                break;
            }
            set = next;
        }
        let sub = fig3.subalgebra(&set).unwrap().algebra;
        prop_assert!(verify_skew_lattice(&sub).is_skew_lattice());
        let (p, s) = (classify(&fig3), classify(&sub));
        for ((k, parent), (_, child)) in p.entries().into_iter().zip(s.entries()) {
            if parent.holds() {
                prop_assert!(child.holds(), "{} lost in {:?}", k, set);
            }
        }
    }

    #[test]
    fn dot_output_is_stable((alg, perm) in relabelled()) {
        let sl = SkewLattice::new(alg.permuted(&perm).unwrap()).unwrap();
        prop_assert_eq!(export_dot(&sl), export_dot(&sl.clone()));
    }

    #[test]
    fn rectangular_maps_respect_both_operations_or_neither(rows in 1usize..=2, cols in 1usize..=2) {
        let sl = SkewLattice::new(rectangular_band(rows, cols)).unwrap();
        let class = sl.class(ClassId(0)).to_vec();
        prop_assert_eq!(sl.structure().class_count(), 1);
        let n = class.len();
        let mut non_hom = 0;
        for code in 0..n.pow(n as u32) {
            let map: Vec<(usize, usize)> = (0..n).map(|i| (class[i], class[code / n.pow(i as u32) % n])).collect();
            let h = hom_equivalence_check(&sl, ClassId(0), ClassId(0), &map).unwrap();
            prop_assert_eq!(h.meet_hom.holds(), h.join_hom.holds());
            if !h.meet_hom.holds() {
                non_hom += 1;
            }
        }
        if rows == 2 && cols == 2 {
            prop_assert!(non_hom > 0);
        }
    }

    #[test]
    fn imposed_relations_give_a_chain(
        p in prop_oneof![Just(2u64), Just(3), Just(5)],
        sizes in proptest::array::uniform4(1usize..=2),
        seed in proptest::collection::vec(0u32..5, 24),
    ) {
        let t = chain_triple(p, sizes, &seed);
        prop_assert!(lemma16_check(&t).unwrap().all());
        let (a, b, c) = build_block_triple(&t).unwrap();
        prop_assert!(mat_leq(&b, &a).unwrap() && mat_leq(&c, &b).unwrap());
        for (x, y) in [(&a, &b), (&b, &c), (&a, &c), (&c, &a)] {
            let circ = mat_circ(x, y).unwrap();
            prop_assert_eq!(mat_nabla(x, y).unwrap(), circ.mul(&circ).unwrap());
        }
        match closure(&[a, b, c], 256) {
            Ok(l) => {
                let sl = SkewLattice::new(l.algebra().clone()).unwrap();
                prop_assert!(common::ring_properties(&sl).is_ok());
            }
            Err(MatrixError::CapExceeded { .. }) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn block_and_abstract_normality_agree(
        uppers in proptest::collection::vec((0u32..3, 0u32..3), 1..3),
        lowers in proptest::collection::vec((0u32..3, 0u32..3), 1..3),
    ) {
        let f = gf(3);
        let one = |v: u32| block(f, 1, 1, &[v]);
        let up: Vec<ExactMatrix> = uppers.iter()
            .map(|&(p, q)| ThreeBlock::Upper { p: one(p), q: one(q) }.assemble([1, 1, 1]))
            .collect();
        let lo: Vec<ExactMatrix> = lowers.iter()
            .map(|&(x, y)| ThreeBlock::Lower { x: one(x), y: one(y) }.assemble([1, 1, 1]))
            .collect();
        match prop21_check(&up, &lo, [1, 1, 1]) {
            Ok(r) => {
                prop_assert_eq!(r.normal, r.block_normal);
                prop_assert_eq!(r.conormal, r.block_conormal);
            }
            Err(MatrixError::CriteriaDisagree(why)) => prop_assert!(false, "{}", why),
            Err(_) => {}
        }
    }
}

#[test]
fn every_report_of_every_small_subalgebra_is_deterministic() {
    for (name, sl) in common::corpus(4) {
        let v = categorical_verdict(&sl).unwrap();
        assert!(!v.strictly_categorical || v.categorical, "{name}");
        assert_eq!(
            report(sl.algebra()).to_string(),
            report(sl.algebra()).to_string(),
            "{name}"
        );
    }
}
