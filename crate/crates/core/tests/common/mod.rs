#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use skewlat::algebra::classify;
use skewlat::category::{antichain_union_check, categorical_verdict};
use skewlat::coset::{
    conormal_by_cosets, coset_bijection, coset_congruence, coset_down, coset_equal,
    coset_partition, coset_up, hom_equivalence_check, image_set, normal_by_cosets, Side,
};
use skewlat::io::fixtures;
use skewlat::matrix::{example19, example20, ScalarSpec};
use skewlat::{CayleyAlgebra, ClassId, Element, Op, SkewLattice};

/// Named fixtures, both built from tables and induced by matrices.
pub fn fixtures() -> Vec<(String, CayleyAlgebra)> {
    let mut out = vec![
        ("fig1".to_string(), fixtures::fig1()),
        ("fig3".to_string(), fixtures::fig3()),
        ("x2".to_string(), fixtures::x2()),
        ("ex13".to_string(), fixtures::ex13()),
    ];
    out.extend(matrix_fixtures());
    out
}

pub fn matrix_fixtures() -> Vec<(String, CayleyAlgebra)> {
    let mut out = Vec::new();
    for scalar in [
        ScalarSpec::Integers,
        ScalarSpec::Prime(2),
        ScalarSpec::Prime(3),
    ] {
        let l = example19(scalar).expect("example 19 closes");
        out.push((format!("ex19/{scalar}"), l.algebra().clone()));
    }
    let l = example20(ScalarSpec::Integers).expect("example 20 closes");
    out.push(("ex20/Z".to_string(), l.algebra().clone()));
    out
}

/// Every fixture followed by each of its proper closed subsets of size at
/// most `max`.
pub fn corpus(max: usize) -> Vec<(String, SkewLattice)> {
    let mut out = Vec::new();
    for (name, alg) in fixtures() {
        for k in 1..=max.min(alg.size()) {
            for subset in alg.elements().combinations(k) {
                if k == alg.size() || !alg.is_closed(&subset) {
                    continue;
                }
                let sub = alg.subalgebra(&subset).expect("closed").algebra;
                let sl =
                    SkewLattice::new(sub).expect("subalgebras of skew lattices are skew lattices");
                out.push((format!("{name}{subset:?}"), sl));
            }
        }
        out.push((
            name,
            SkewLattice::new(alg).expect("fixture is a skew lattice"),
        ));
    }
    out
}

fn is_partition(blocks: &[Vec<Element>], class: &[Element]) -> bool {
    let total: usize = blocks.iter().map(Vec::len).sum();
    let union: BTreeSet<Element> = blocks.iter().flatten().copied().collect();
    total == class.len() && union == class.iter().copied().collect()
}

fn rectangular(sl: &SkewLattice, members: &[Element]) -> bool {
    members.iter().all(|&x| {
        members.iter().all(|&y| {
            members.contains(&sl.meet(x, y))
                && members.contains(&sl.join(x, y))
                && sl.sandwich(Op::Meet, x, y) == x
        })
    })
}

type Res = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Res {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn comparable_pairs(sl: &SkewLattice) -> Vec<(ClassId, ClassId)> {
    sl.structure()
        .chains(2)
        .into_iter()
        .map(|c| (c[0], c[1]))
        .collect()
}

/// Coset partitions of both classes, equal block sizes, image sets as
/// transversals.
pub fn coset_partitions(sl: &SkewLattice) -> Res {
    for (a, b) in comparable_pairs(sl) {
        let p = coset_partition(sl, a, b).map_err(|e| e.to_string())?;
        ensure(is_partition(&p.down_cosets, sl.class(b)), || {
            format!("down cosets {a}>{b}")
        })?;
        ensure(is_partition(&p.up_cosets, sl.class(a)), || {
            format!("up cosets {a}>{b}")
        })?;
        let sizes: BTreeSet<usize> = p
            .up_cosets
            .iter()
            .chain(&p.down_cosets)
            .map(Vec::len)
            .collect();
        ensure(sizes.len() == 1, || format!("unequal coset sizes {a}>{b}"))?;
        for (from, blocks, target) in [(a, &p.down_cosets, b), (b, &p.up_cosets, a)] {
            for &x in sl.class(from) {
                let img = image_set(sl, x, target).map_err(|e| e.to_string())?.members;
                for block in blocks {
                    let hits = block.iter().filter(|y| img.contains(y)).count();
                    ensure(hits == 1, || {
                        format!("image set of {x} meets {block:?} {hits} times")
                    })?;
                }
            }
        }
    }
    Ok(())
}

/// Cosets are rectangular subalgebras; coset bijections are order-compatible
/// isomorphisms between the expected cosets.
pub fn cosets_and_bijections(sl: &SkewLattice) -> Res {
    for (a, b) in comparable_pairs(sl) {
        for &x in sl.class(a) {
            let up = coset_up(sl, a, b, x).map_err(|e| e.to_string())?;
            ensure(rectangular(sl, &up.members), || format!("up coset of {x}"))?;
            for &y in sl.class(b) {
                let down = coset_down(sl, a, b, y).map_err(|e| e.to_string())?;
                ensure(rectangular(sl, &down.members), || {
                    format!("down coset of {y}")
                })?;
                let phi = coset_bijection(sl, x, y).map_err(|e| e.to_string())?;
                ensure(
                    phi.domain == up.members && phi.image == down.members,
                    || format!("phi_{x},{y} has the wrong cosets"),
                )?;
                let images: BTreeSet<Element> = phi.graph.iter().map(|p| p.1).collect();
                ensure(
                    images.len() == phi.graph.len() && images.len() == down.members.len(),
                    || format!("phi_{x},{y} is not a bijection"),
                )?;
                for &(u, v) in &phi.graph {
                    ensure(sl.natural_leq(v, u), || {
                        format!("phi_{x},{y}: {u} is not above {v}")
                    })?;
                }
                let f = |u| phi.apply(u).expect("in domain");
                for &u in &phi.domain {
                    for &w in &phi.domain {
                        ensure(
                            f(sl.meet(u, w)) == sl.meet(f(u), f(w))
                                && f(sl.join(u, w)) == sl.join(f(u), f(w)),
                            || format!("phi_{x},{y} is not a homomorphism at ({u}, {w})"),
                        )?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// The three coset-equality criteria agree with plain set equality, and
/// `φ_{a,b}` depends only on the cosets of `a` and `b`.
pub fn coset_equality_criteria(sl: &SkewLattice) -> Res {
    for (a, b) in comparable_pairs(sl) {
        for &y in sl.class(b) {
            let cy = coset_down(sl, a, b, y).map_err(|e| e.to_string())?.members;
            for &y2 in sl.class(b) {
                let cy2 = coset_down(sl, a, b, y2).map_err(|e| e.to_string())?.members;
                let eq = coset_equal(sl, a, y, y2).map_err(|e| e.to_string())?;
                ensure(eq == (cy == cy2), || {
                    format!("coset_equal({y}, {y2}) in {a}")
                })?;
            }
        }
        for &x in sl.class(a) {
            for &x2 in sl.class(a) {
                let same_up = coset_up(sl, a, b, x).map_err(|e| e.to_string())?
                    == coset_up(sl, a, b, x2).map_err(|e| e.to_string())?;
                for &y in sl.class(b) {
                    for &y2 in sl.class(b) {
                        let same_down = coset_down(sl, a, b, y).map_err(|e| e.to_string())?
                            == coset_down(sl, a, b, y2).map_err(|e| e.to_string())?;
                        let same_map = coset_bijection(sl, x, y).map_err(|e| e.to_string())?
                            == coset_bijection(sl, x2, y2).map_err(|e| e.to_string())?;
                        ensure(same_map == (same_up && same_down), || {
                            format!("phi_{x},{y} vs phi_{x2},{y2}")
                        })?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// Both coset partitions are congruences of their class.
pub fn coset_congruences(sl: &SkewLattice) -> Res {
    for (a, b) in comparable_pairs(sl) {
        let p = coset_partition(sl, a, b).map_err(|e| e.to_string())?;
        for (side, blocks) in [(Side::Upper, &p.up_cosets), (Side::Lower, &p.down_cosets)] {
            let c = coset_congruence(sl, a, b, side).map_err(|e| e.to_string())?;
            ensure(&c.blocks == blocks && c.congruence.holds(), || {
                format!(
                    "{side:?} congruence for {a}>{b}: {:?}",
                    c.congruence.witness()
                )
            })?;
        }
    }
    Ok(())
}

/// `x ∧ y = y ∨ x` inside every class.
pub fn within_class_identity(sl: &SkewLattice) -> Res {
    for class in sl.structure().classes() {
        for &x in class {
            for &y in class {
                ensure(sl.meet(x, y) == sl.join(y, x), || format!("x={x} y={y}"))?;
            }
        }
    }
    Ok(())
}

/// Every total map between two classes of size at most 4 is a
/// `∧`-homomorphism exactly when it is a `∨`-homomorphism.
pub fn hom_equivalence(sl: &SkewLattice) -> Res {
    let s = sl.structure();
    for a in s.class_ids() {
        for b in s.class_ids() {
            let (src, dst) = (s.class(a), s.class(b));
            if src.len() > 4 || dst.len() > 4 {
                continue;
            }
            for images in
                itertools::repeat_n(dst.iter().copied(), src.len()).multi_cartesian_product()
            {
                let map: Vec<(Element, Element)> = src.iter().copied().zip(images).collect();
                let h = hom_equivalence_check(sl, a, b, &map).map_err(|e| e.to_string())?;
                ensure(h.meet_hom.holds() == h.join_hom.holds(), || {
                    format!("map {map:?}")
                })?;
            }
        }
    }
    Ok(())
}

/// The coset bijections `A → B` tile the order relation on `A × B`.
pub fn bijections_tile_the_order(sl: &SkewLattice) -> Res {
    let s = sl.structure();
    for a in s.class_ids() {
        for b in s.class_ids() {
            if a == b || s.is_above(a, b) {
                let ok = antichain_union_check(sl, a, b).map_err(|e| e.to_string())?;
                ensure(ok, || format!("union of bijections {a}->{b}"))?;
            }
        }
    }
    Ok(())
}

/// Normality and conormality from the identities and from the cosets.
pub fn normality_by_cosets(sl: &SkewLattice) -> Res {
    let flags = classify(sl.algebra());
    let n = normal_by_cosets(sl).map_err(|e| e.to_string())?;
    let c = conormal_by_cosets(sl).map_err(|e| e.to_string())?;
    ensure(flags.normal.holds() == n.holds(), || "normal".into())?;
    ensure(flags.conormal.holds() == c.holds(), || "conormal".into())
}

pub type Property = fn(&SkewLattice) -> Res;

pub const STRUCTURAL: [(&str, Property); 8] = [
    ("coset_partitions", coset_partitions),
    ("cosets_and_bijections", cosets_and_bijections),
    ("coset_congruences", coset_congruences),
    ("coset_equality_criteria", coset_equality_criteria),
    ("within_class_identity", within_class_identity),
    ("hom_equivalence", hom_equivalence),
    ("bijections_tile_the_order", bijections_tile_the_order),
    ("normality_by_cosets", normality_by_cosets),
];

/// `∧`-distributive iff symmetric, normal and with a distributive lattice
/// of classes.
pub fn meet_distributive_characterisation(sl: &SkewLattice) -> Res {
    let f = classify(sl.algebra());
    let rhs = f.symmetric.holds() && f.normal.holds() && sl.structure().quotient_is_distributive();
    ensure(f.meet_distributive.holds() == rhs, || {
        format!(
            "meet_distributive={} but symmetric∧normal∧distributive={rhs}",
            f.meet_distributive.holds()
        )
    })
}

/// Properties every skew lattice of matrices has.
pub fn ring_properties(sl: &SkewLattice) -> Res {
    let f = classify(sl.algebra());
    ensure(f.symmetric.holds(), || "not symmetric".into())?;
    ensure(f.sandwiched_distributive.holds(), || {
        "not sandwiched distributive".into()
    })?;
    let v = categorical_verdict(sl).map_err(|e| e.to_string())?;
    ensure(v.categorical, || "not categorical".into())
}
