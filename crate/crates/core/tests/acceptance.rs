//! Acceptance criteria AC1 to AC10. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use skewlat::algebra::{classify, verify_skew_lattice};
use skewlat::category::{
    associativity_audit, cross_product, empty_composite, is_categorical, is_strictly_categorical,
    CrossProduct, NonStrictWitness,
};
use skewlat::coset::{coset_bijection, coset_down, coset_up};
use skewlat::io::fixtures;
use skewlat::matrix::{
    example19, example19_generators, example20, is_idempotent, lemma16_check, mat_nabla,
    order_preconditions, prop21_check, BlockTriple, ExactMatrix, ScalarSpec, BLOCK_NAMES,
};
use skewlat::{ClassId, Element, SkewLattice};

type Res = Result<String, String>;
type Criterion = fn() -> Res;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn class(sl: &SkewLattice, members: &[Element]) -> Result<ClassId, String> {
    sl.structure()
        .find_class(members)
        .ok_or_else(|| format!("{members:?} is not a class"))
}

fn skew(alg: skewlat::CayleyAlgebra) -> Result<SkewLattice, String> {
    let v = verify_skew_lattice(&alg);
    ensure(v.is_skew_lattice(), format!("not a skew lattice: {v}"))?;
    SkewLattice::new(alg).map_err(|e| e.to_string())
}

fn ac1() -> Res {
    let sl = skew(fixtures::fig1())?;
    ensure(classify(&sl).right_handed.holds(), "not right-handed")?;
    let s = sl.structure();
    let (top, mid, bot) = (class(&sl, &[1])?, class(&sl, &[2, 3])?, class(&sl, &[0])?);
    ensure(
        s.class_count() == 3 && s.is_above(top, mid) && s.is_above(mid, bot),
        "classes do not form {1} > {2,3} > {0}",
    )?;
    let (cat, _) = is_categorical(&sl).map_err(|e| e.to_string())?;
    ensure(cat, "not categorical")?;
    let (strict, w) = is_strictly_categorical(&sl).map_err(|e| e.to_string())?;
    ensure(!strict, "strictly categorical")?;
    ensure(
        w == Some(NonStrictWitness::Midpoints {
            a: 1,
            b: 2,
            b2: 3,
            c: 0,
        }),
        format!("witness {w:?}"),
    )?;
    let (phi, psi) = empty_composite(&sl)
        .map_err(|e| e.to_string())?
        .ok_or("no empty composite")?;
    Ok(format!(
        "chain {{1}}>{{2,3}}>{{0}}, witness (1,2,3,0), empty composite {:?} after {:?}",
        psi.graph, phi.graph
    ))
}

fn ac2() -> Res {
    let sl = skew(fixtures::fig3())?;
    ensure(classify(&sl).left_handed.holds(), "not left-handed")?;
    let letters = [
        ('A', class(&sl, &[0, 4])?),
        ('B', class(&sl, &[1, 3, 6, 7])?),
        ('C', class(&sl, &[2, 5])?),
        ('D', class(&sl, &[8])?),
    ];
    let letter = |c: char| letters.iter().find(|l| l.0 == c).map(|l| l.1).unwrap();
    // (operation, other class, elements, coset)
    let listed: [(char, char, &[Element], &[Element]); 19] = [
        ('v', 'B', &[0, 4], &[0, 4]),
        ('^', 'A', &[3, 1], &[1, 3]),
        ('^', 'A', &[6, 7], &[6, 7]),
        ('v', 'C', &[3, 7], &[3, 7]),
        ('v', 'C', &[6, 1], &[1, 6]),
        ('^', 'B', &[2, 5], &[2, 5]),
        ('v', 'D', &[2], &[2]),
        ('v', 'D', &[5], &[5]),
        ('^', 'C', &[8], &[8]),
        ('v', 'C', &[0, 4], &[0, 4]),
        ('^', 'A', &[2, 5], &[2, 5]),
        ('v', 'D', &[3], &[3]),
        ('v', 'D', &[6], &[6]),
        ('v', 'D', &[1], &[1]),
        ('v', 'D', &[7], &[7]),
        ('^', 'B', &[8], &[8]),
        ('v', 'D', &[0], &[0]),
        ('v', 'D', &[4], &[4]),
        ('^', 'A', &[8], &[8]),
    ];
    for (op, other, elems, want) in listed {
        for &x in elems {
            let own = sl.class_of(x);
            let got = if op == 'v' {
                coset_up(&sl, own, letter(other), x)
            } else {
                coset_down(&sl, letter(other), own, x)
            }
            .map_err(|e| e.to_string())?
            .members;
            ensure(
                got == want,
                format!("{other} {op} {x} {op} {other} = {got:?}, expected {want:?}"),
            )?;
        }
    }
    Ok("left-handed, 19 listed coset equalities reproduced".into())
}

fn ac3() -> Res {
    let sl = skew(fixtures::fig3())?;
    let phi = |a, b| coset_bijection(&sl, a, b).map_err(|e| e.to_string());
    let cross = |p, q| cross_product(&sl, p, q).map_err(|e| e.to_string());
    let (p06, p32, p28) = (phi(0, 6)?, phi(3, 2)?, phi(2, 8)?);
    ensure(p06.graph == [(0, 6), (4, 7)], "phi_0,6")?;
    ensure(p32.graph == [(3, 2), (7, 5)], "phi_3,2")?;
    ensure(p28.graph == [(2, 8)], "phi_2,8")?;
    let inner = cross(&p32, &p06)?;
    ensure(
        inner.graph() == [(0, 2), (4, 5)],
        format!("phi_3,2 x phi_0,6 = {inner}"),
    )?;
    let left = cross(&p28, inner.bijection().ok_or("empty inner product")?)?;
    ensure(left.graph() == [(0, 8)], format!("left side {left}"))?;
    let outer = cross(&p28, &p32)?;
    ensure(
        outer.graph() == [(3, 8)],
        format!("phi_2,8 x phi_3,2 = {outer}"),
    )?;
    let right = cross(outer.bijection().ok_or("empty product")?, &p06)?;
    ensure(right == CrossProduct::Empty, format!("right side {right}"))?;
    ensure(left != right, "sides agree")?;
    let audit = associativity_audit(&sl).map_err(|e| e.to_string())?;
    ensure(
        audit
            .witnesses
            .iter()
            .any(|w| w.delta == p28 && w.psi == p32 && w.phi == p06 && w.left == left),
        "audit misses (phi_2,8, phi_3,2, phi_0,6)",
    )?;
    ensure(
        audit.witnesses.len() == 4
            && audit
                .witnesses
                .iter()
                .all(|w| !w.left.is_empty() && w.right.is_empty()),
        format!("audit has {} witnesses", audit.witnesses.len()),
    )?;
    Ok("{0->8} != Empty; audit: 4 witnesses, all nonempty vs Empty".into())
}

fn ac4() -> Res {
    let sl = skew(fixtures::x2())?;
    let (cat, w) = is_categorical(&sl).map_err(|e| e.to_string())?;
    ensure(!cat, "X2 is categorical")?;
    let w = w.ok_or("no witness")?;
    ensure(
        !w.composite.domain().contains(&0),
        "0 has an image under the composite",
    )?;
    ensure(
        sl.class(w.chi.upper) == [0, 4] && sl.class(w.chi.lower) == [2, 5],
        "chi is not {0,4} -> {2,5}",
    )?;
    ensure(w.composite.graph != w.chi.graph, "composite equals chi")?;
    Ok(format!(
        "composite {:?} strictly inside chi {:?}",
        w.composite.graph, w.chi.graph
    ))
}

fn ac5() -> Res {
    let f1 = fixtures::fig1();
    let sub = f1.subalgebra(&[1, 2, 3]).map_err(|e| e.to_string())?;
    let sl = skew(sub.algebra.clone())?;
    let (strict, _) = is_strictly_categorical(&sl).map_err(|e| e.to_string())?;
    ensure(strict, "not strictly categorical")?;
    ensure(!classify(&sl).normal.holds(), "normal")?;
    let (one, two, three) = (
        sub.local(1).unwrap(),
        sub.local(2).unwrap(),
        sub.local(3).unwrap(),
    );
    let (a, b) = (sl.class_of(one), sl.class_of(two));
    let c2 = coset_down(&sl, a, b, two)
        .map_err(|e| e.to_string())?
        .members;
    let c3 = coset_down(&sl, a, b, three)
        .map_err(|e| e.to_string())?
        .members;
    ensure(
        c2 == [two] && c3 == [three],
        format!("cosets {c2:?} {c3:?}"),
    )?;
    Ok("strictly categorical, not normal, A^2^A={2} != {3}=A^3^A".into())
}

fn ac6() -> Res {
    let fig1 = fixtures::fig1();
    let mut over = Vec::new();
    for scalar in [ScalarSpec::Integers, ScalarSpec::Prime(2)] {
        let gens = example19_generators(scalar);
        ensure(
            gens.iter().all(|(_, m)| is_idempotent(m)),
            "a generator is not idempotent",
        )?;
        let l = example19(scalar).map_err(|e| e.to_string())?;
        ensure(
            l.len() == 4,
            format!("closure over {scalar} has {} elements", l.len()),
        )?;
        let alg = l.algebra();
        let idx = |name: &str| alg.index_of_label(name).ok_or(format!("no element {name}"));
        // fig1 element i goes to perm[i]
        let perm = [idx("c")?, idx("a")?, idx("b")?, idx("b'")?];
        for x in 0..4 {
            for y in 0..4 {
                ensure(
                    perm[fig1.meet(x, y)] == alg.meet(perm[x], perm[y])
                        && perm[fig1.join(x, y)] == alg.join(perm[x], perm[y]),
                    format!("1->a, 2->b, 3->b', 0->c is not an isomorphism over {scalar}"),
                )?;
            }
        }
        let sl = skew(alg.clone())?;
        let (strict, w) = is_strictly_categorical(&sl).map_err(|e| e.to_string())?;
        ensure(!strict, format!("strictly categorical over {scalar}"))?;
        let Some(NonStrictWitness::Midpoints { a, b, b2, c }) = w else {
            return Err(format!("witness {w:?}"));
        };
        let mids: BTreeSet<Element> = [b, b2].into();
        ensure(
            a == perm[1] && c == perm[0] && mids == BTreeSet::from([perm[2], perm[3]]),
            format!("witness ({a},{b},{b2},{c}) over {scalar}"),
        )?;
        over.push(scalar.to_string());
    }
    Ok(format!(
        "isomorphic to fig1, not strict, over {}",
        over.join(" and ")
    ))
}

fn ac7() -> Res {
    let l = example20(ScalarSpec::Integers).map_err(|e| e.to_string())?;
    let sl = skew(l.algebra().clone())?;
    let s = sl.structure();
    ensure(s.class_count() == 2, format!("{} classes", s.class_count()))?;
    let (strict, _) = is_strictly_categorical(&sl).map_err(|e| e.to_string())?;
    ensure(strict, "not strictly categorical")?;
    let normal = classify(&sl).normal.holds();
    ensure(!normal, "normal")?;
    let pair = s.chains(2);
    let (top, bot) = (pair[0][0], pair[0][1]);
    let mats = |c: ClassId| -> Vec<ExactMatrix> {
        sl.class(c).iter().map(|&i| l.element(i).clone()).collect()
    };
    let report = prop21_check(&mats(top), &mats(bot), [2, 1, 1]).map_err(|e| e.to_string())?;
    ensure(
        report.block_normal == normal,
        "block condition disagrees with normality",
    )?;
    Ok(format!(
        "2 classes, strict, normal={normal}, block_normal={}",
        report.block_normal
    ))
}

fn random_block(rng: &mut ChaCha8Rng, scalar: ScalarSpec, r: usize, c: usize) -> ExactMatrix {
    let entries = (0..r * c)
        .map(|_| BigInt::from(rng.random_range(0..5u32)))
        .collect();
    ExactMatrix::from_entries(scalar, r, c, entries).expect("shape")
}

fn ac8() -> Res {
    let f = ScalarSpec::Prime(5);
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let (mut mutations, mut broken) = (0, 0);
    let idx = |n: &str| BLOCK_NAMES.iter().position(|&b| b == n).unwrap();
    for trial in 0..100 {
        let sizes: [usize; 4] = std::array::from_fn(|_| rng.random_range(1..=2));
        let mut t = BlockTriple::zero(f, sizes);
        for name in ["a14", "a24", "a34", "b13", "b23", "c12"] {
            let (r, c) = t.block_by_name(name).unwrap().shape();
            let m = random_block(&mut rng, f, r, c);
            t.set_block(idx(name), m).map_err(|e| e.to_string())?;
        }
        let g = |t: &BlockTriple, n: &str| t.block_by_name(n).unwrap().clone();
        let mul = |x: ExactMatrix, y: ExactMatrix| x.mul(&y).unwrap();
        let add = |x: ExactMatrix, y: ExactMatrix| x.add(&y).unwrap();
        let b14 = add(g(&t, "a14"), mul(g(&t, "b13"), g(&t, "a34")));
        let b24 = add(g(&t, "a24"), mul(g(&t, "b23"), g(&t, "a34")));
        let c13 = add(g(&t, "b13"), mul(g(&t, "c12"), g(&t, "b23")));
        let c14 = add(b14.clone(), mul(g(&t, "c12"), b24.clone()));
        for (n, m) in [("b14", b14), ("b24", b24), ("c13", c13), ("c14", c14)] {
            t.set_block(idx(n), m).map_err(|e| e.to_string())?;
        }
        let rel = lemma16_check(&t).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure(rel.all(), format!("trial {trial}: relations {rel:?}"))?;
        let pre = order_preconditions(&t).map_err(|e| e.to_string())?;
        ensure(
            pre.ba_eq_b && pre.cb_eq_c,
            format!("trial {trial}: {pre:?}"),
        )?;
        for (i, name) in BLOCK_NAMES.iter().enumerate() {
            let mut m = t.block(i).clone();
            let (r, c) = m.shape();
            let (i0, j0) = (rng.random_range(0..r), rng.random_range(0..c));
            let delta = BigInt::from(rng.random_range(1..5u32));
            m.set(i0, j0, f.reduce(m.get(i0, j0) + delta));
            let mut bad = t.clone();
            bad.set_block(i, m).map_err(|e| e.to_string())?;
            let r = bad.relations().map_err(|e| e.to_string())?.0;
            let mut expected = Vec::new();
            if !(r[0] && r[1]) {
                expected.push("ba=b");
            }
            if !(r[2] && r[3]) {
                expected.push("cb=c");
            }
            let got = order_preconditions(&bad)
                .map_err(|e| e.to_string())?
                .failures();
            ensure(
                got == expected,
                format!("trial {trial}, mutated {name}: relations {r:?}, failing {got:?}"),
            )?;
            mutations += 1;
            if !expected.is_empty() {
                broken += 1;
            }
        }
    }
    Ok(format!(
        "100 triples hold; {broken}/{mutations} single-block mutations broke a relation, each failing exactly its precondition"
    ))
}

fn ac9() -> Res {
    let corpus = common::corpus(6);
    for (name, sl) in &corpus {
        for (law, check) in common::STRUCTURAL {
            check(sl).map_err(|e| format!("{name}: {law}: {e}"))?;
        }
    }
    Ok(format!(
        "{} algebras, {} properties each",
        corpus.len(),
        common::STRUCTURAL.len()
    ))
}

fn ac10() -> Res {
    let corpus = common::corpus(6);
    for (name, sl) in &corpus {
        common::meet_distributive_characterisation(sl).map_err(|e| format!("{name}: {e}"))?;
    }
    let ring = common::matrix_fixtures();
    for (name, alg) in &ring {
        let sl = skew(alg.clone())?;
        common::ring_properties(&sl).map_err(|e| format!("{name}: {e}"))?;
    }
    let nabla_ok = example19(ScalarSpec::Integers)
        .map_err(|e| e.to_string())?
        .elements()
        .iter()
        .all(|x| mat_nabla(x, x).is_ok_and(|y| &y == x));
    ensure(nabla_ok, "x nabla x != x")?;
    Ok(format!(
        "biconditional on {} algebras; {} matrix algebras symmetric, sandwiched distributive, categorical",
        corpus.len(),
        ring.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 10] = [
        ("AC1", ac1),
        ("AC2", ac2),
        ("AC3", ac3),
        ("AC4", ac4),
        ("AC5", ac5),
        ("AC6", ac6),
        ("AC7", ac7),
        ("AC8", ac8),
        ("AC9", ac9),
        ("AC10", ac10),
    ];
    let mut failed = 0;
    for (id, run) in criteria {
        match run() {
            Ok(detail) => println!("{id} PASS {detail}"),
            Err(why) => {
                failed += 1;
                println!("{id} FAIL {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
