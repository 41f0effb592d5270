//! Block standard forms for chains of idempotent matrices.
//!
//! With respect to a decomposition `n = n1 + n2 + n3 + n4`, a chain
//! `a > b > c` can be written as
//!
//! ```text
//!     | I 0 0 a14 |        | I 0 b13 b14 |        | I c12 c13 c14 |
//! a = | 0 I 0 a24 |    b = | 0 I b23 b24 |    c = | 0  0   0   0 |
//!     | 0 0 I a34 |        | 0 0  0   0  |        | 0  0   0   0 |
//!     | 0 0 0  0  |        | 0 0  0   0  |        | 0  0   0   0 |
//! ```
//!
//! and two comparable classes `A > B` as
//!
//! ```text
//!     | I 0 p |        | I x y |
//! u = | 0 I q |    v = | 0 0 0 |
//!     | 0 0 0 |        | 0 0 0 |
//! ```
//!
//! The order itself is always recomputed by multiplication; block forms
//! only serve to build examples and to evaluate block criteria.

use std::collections::BTreeSet;

use super::{
    closure, mat_nabla, ExactMatrix, MatrixError, MatrixSkewLattice, ScalarSpec, DEFAULT_CAP,
};
use crate::algebra::{classify, Element, SkewLattice};
use crate::category::is_strictly_categorical;
use crate::coset::{coset_bijection, coset_up, CosetBijection};
use crate::ClassId;

/// Names of the free blocks of a [`BlockTriple`], in storage order.
pub const BLOCK_NAMES: [&str; 10] = [
    "a14", "a24", "a34", "b13", "b23", "b14", "b24", "c12", "c13", "c14",
];

/// Block row and column of each free block.
const BLOCK_POS: [(usize, usize); 10] = [
    (0, 3),
    (1, 3),
    (2, 3),
    (0, 2),
    (1, 2),
    (0, 3),
    (1, 3),
    (0, 1),
    (0, 2),
    (0, 3),
];

const A14: usize = 0;
const A24: usize = 1;
const A34: usize = 2;
const B13: usize = 3;
const B23: usize = 4;
const B14: usize = 5;
const B24: usize = 6;
const C12: usize = 7;
const C13: usize = 8;
const C14: usize = 9;

/// The free blocks of a chain `a > b > c` in 4-block form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockTriple {
    scalar: ScalarSpec,
    sizes: [usize; 4],
    blocks: Vec<ExactMatrix>,
}

fn offsets<const K: usize>(sizes: &[usize; K]) -> [usize; K] {
    let mut o = [0; K];
    for k in 1..K {
        o[k] = o[k - 1] + sizes[k - 1];
    }
    o
}

impl BlockTriple {
    pub fn zero(scalar: ScalarSpec, sizes: [usize; 4]) -> Self {
        let blocks = BLOCK_POS
            .iter()
            .map(|&(r, c)| ExactMatrix::zeros(scalar, sizes[r], sizes[c]))
            .collect();
        BlockTriple {
            scalar,
            sizes,
            blocks,
        }
    }

    /// Blocks in the order of [`BLOCK_NAMES`].
    pub fn new(
        scalar: ScalarSpec,
        sizes: [usize; 4],
        blocks: Vec<ExactMatrix>,
    ) -> Result<Self, MatrixError> {
        let mut t = Self::zero(scalar, sizes);
        if blocks.len() != BLOCK_NAMES.len() {
            return Err(MatrixError::ShapeMismatch(format!(
                "expected {} blocks, got {}",
                BLOCK_NAMES.len(),
                blocks.len()
            )));
        }
        for (i, b) in blocks.into_iter().enumerate() {
            t.set_block(i, b)?;
        }
        Ok(t)
    }

    /// Reads the free blocks off assembled matrices, checking that every
    /// fixed block has the displayed value.
    pub fn from_matrices(
        a: &ExactMatrix,
        b: &ExactMatrix,
        c: &ExactMatrix,
        sizes: [usize; 4],
    ) -> Result<Self, MatrixError> {
        let scalar = a.scalar();
        let mut t = Self::zero(scalar, sizes);
        for (i, &(r, col)) in BLOCK_POS.iter().enumerate() {
            let src = match i {
                A14..=A34 => a,
                B13..=B24 => b,
                _ => c,
            };
            t.blocks[i] = extract(src, &sizes, r, col)?;
        }
        let (a2, b2, c2) = build_block_triple(&t)?;
        for (name, given, rebuilt) in [("a", a, a2), ("b", b, b2), ("c", c, c2)] {
            if given != &rebuilt {
                return Err(MatrixError::ShapeMismatch(format!(
                    "{name} is not in the 4-block form"
                )));
            }
        }
        Ok(t)
    }

    pub fn scalar(&self) -> ScalarSpec {
        self.scalar
    }

    pub fn sizes(&self) -> [usize; 4] {
        self.sizes
    }

    pub fn block(&self, i: usize) -> &ExactMatrix {
        &self.blocks[i]
    }

    pub fn block_by_name(&self, name: &str) -> Option<&ExactMatrix> {
        BLOCK_NAMES
            .iter()
            .position(|&n| n == name)
            .map(|i| &self.blocks[i])
    }

    pub fn set_block(&mut self, i: usize, block: ExactMatrix) -> Result<(), MatrixError> {
        let (r, c) = BLOCK_POS[i];
        let want = (self.sizes[r], self.sizes[c]);
        if block.shape() != want || block.scalar() != self.scalar {
            return Err(MatrixError::ShapeMismatch(format!(
                "{} must be {}x{} over {}, got {}x{} over {}",
                BLOCK_NAMES[i],
                want.0,
                want.1,
                self.scalar,
                block.rows(),
                block.cols(),
                block.scalar()
            )));
        }
        self.blocks[i] = block;
        Ok(())
    }

    /// The four block relations implied by `ba = b` and `cb = c`.
    pub fn relations(&self) -> Result<BlockRelations, MatrixError> {
        let b = &self.blocks;
        let r1 = b[A14].add(&b[B13].mul(&b[A34])?)? == b[B14];
        let r2 = b[A24].add(&b[B23].mul(&b[A34])?)? == b[B24];
        let r3 = b[B13].add(&b[C12].mul(&b[B23])?)? == b[C13];
        let r4 = b[B14].add(&b[C12].mul(&b[B24])?)? == b[C14];
        Ok(BlockRelations([r1, r2, r3, r4]))
    }
}

fn extract(
    m: &ExactMatrix,
    sizes: &[usize],
    r: usize,
    c: usize,
) -> Result<ExactMatrix, MatrixError> {
    let n: usize = sizes.iter().sum();
    if m.shape() != (n, n) {
        return Err(MatrixError::ShapeMismatch(format!(
            "matrix is {}x{}, block sizes sum to {n}",
            m.rows(),
            m.cols()
        )));
    }
    let o: usize = sizes[..r].iter().sum();
    let p: usize = sizes[..c].iter().sum();
    Ok(m.block(o, p, sizes[r], sizes[c]))
}

fn place_identity(m: &mut ExactMatrix, at: usize, size: usize) {
    m.set_block(at, at, &ExactMatrix::identity(m.scalar(), size));
}

/// Assembles `(a, b, c)` from their free blocks.
pub fn build_block_triple(
    t: &BlockTriple,
) -> Result<(ExactMatrix, ExactMatrix, ExactMatrix), MatrixError> {
    let n: usize = t.sizes.iter().sum();
    let o = offsets(&t.sizes);
    let mut mats = [
        ExactMatrix::zeros(t.scalar, n, n),
        ExactMatrix::zeros(t.scalar, n, n),
        ExactMatrix::zeros(t.scalar, n, n),
    ];
    for (k, m) in mats.iter_mut().enumerate() {
        for (&at, &size) in o.iter().zip(&t.sizes).take(3 - k) {
            place_identity(m, at, size);
        }
    }
    for (i, &(r, c)) in BLOCK_POS.iter().enumerate() {
        let which = match i {
            A14..=A34 => 0,
            B13..=B24 => 1,
            _ => 2,
        };
        mats[which].set_block(o[r], o[c], &t.blocks[i]);
    }
    let [a, b, c] = mats;
    Ok((a, b, c))
}

/// Truth values of the relations
/// `a14 + b13·a34 = b14`, `a24 + b23·a34 = b24`,
/// `b13 + c12·b23 = c13` and `b14 + c12·b24 = c14`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockRelations(pub [bool; 4]);

impl BlockRelations {
    pub const NAMES: [&'static str; 4] = [
        "a14+b13*a34=b14",
        "a24+b23*a34=b24",
        "b13+c12*b23=c13",
        "b14+c12*b24=c14",
    ];

    pub fn all(&self) -> bool {
        self.0.iter().all(|&r| r)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        Self::NAMES
            .iter()
            .zip(self.0)
            .filter(|(_, ok)| !ok)
            .map(|(n, _)| *n)
            .collect()
    }
}

/// The products witnessing `a ≥ b ≥ c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderPreconditions {
    pub ab_eq_b: bool,
    pub ba_eq_b: bool,
    pub bc_eq_c: bool,
    pub cb_eq_c: bool,
}

impl OrderPreconditions {
    pub fn hold(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<&'static str> {
        [
            ("ab=b", self.ab_eq_b),
            ("ba=b", self.ba_eq_b),
            ("bc=c", self.bc_eq_c),
            ("cb=c", self.cb_eq_c),
        ]
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| n)
        .collect()
    }
}

pub fn order_preconditions(t: &BlockTriple) -> Result<OrderPreconditions, MatrixError> {
    let (a, b, c) = build_block_triple(t)?;
    Ok(OrderPreconditions {
        ab_eq_b: a.mul(&b)? == b,
        ba_eq_b: b.mul(&a)? == b,
        bc_eq_c: b.mul(&c)? == c,
        cb_eq_c: c.mul(&b)? == c,
    })
}

/// Verifies `a ≥ b ≥ c` by multiplication and then the four block
/// relations, which must all hold.
pub fn lemma16_check(t: &BlockTriple) -> Result<BlockRelations, MatrixError> {
    let order = order_preconditions(t)?;
    if !order.hold() {
        return Err(MatrixError::OrderPreconditionFailed(order.failures()));
    }
    let rel = t.relations()?;
    if let Some(name) = rel.failures().first() {
        return Err(MatrixError::RelationViolated(name));
    }
    Ok(rel)
}

/// Verdicts on strict categoricity of a chain `A > B > C` of block matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma17Report {
    /// The displayed block criterion: for all `a, b, c` some `b′` satisfies
    /// (i)–(iii).
    pub block_criterion: bool,
    /// Indices into `A`, `B`, `C` for which no `b′` exists.
    pub block_witness: Option<(usize, usize, usize)>,
    /// `(A ∧ b ∧ A) ∩ (C ∨ b′ ∨ C) ≠ ∅` for all `b, b′`, computed in the ring.
    pub intersection_criterion: bool,
    /// Indices into `B` of a disjoint pair.
    pub intersection_witness: Option<(usize, usize)>,
    /// Midpoint uniqueness on the induced finite algebra.
    pub strictly_categorical: bool,
}

impl Lemma17Report {
    pub fn block_agrees(&self) -> bool {
        self.block_criterion == self.strictly_categorical
    }

    pub fn intersection_agrees(&self) -> bool {
        self.intersection_criterion == self.strictly_categorical
    }
}

/// The classes `A`, `B`, `C` of the closure of the three lists, top first.
fn chain_classes(
    lattice: &MatrixSkewLattice,
    lists: &[&[ExactMatrix]],
) -> Result<(SkewLattice, Vec<ClassId>), MatrixError> {
    let sl = SkewLattice::new(lattice.algebra().clone())?;
    let mut ids = Vec::new();
    for list in lists {
        let idx: BTreeSet<Element> = list
            .iter()
            .map(|m| lattice.index_of(m).ok_or(MatrixError::NotAnElement))
            .collect::<Result<_, _>>()?;
        let class = idx
            .first()
            .map(|&x| sl.class_of(x))
            .ok_or_else(|| MatrixError::NotASkewChain("a class is empty".into()))?;
        let members: BTreeSet<Element> = sl.class(class).iter().copied().collect();
        if members != idx {
            return Err(MatrixError::NotASkewChain(format!(
                "listed matrices {idx:?} do not form the D-class {members:?}"
            )));
        }
        ids.push(class);
    }
    if sl.structure().class_count() != lists.len()
        || ids.windows(2).any(|w| !sl.structure().is_above(w[0], w[1]))
    {
        return Err(MatrixError::NotASkewChain(
            "the lists are not the classes of a chain, top first".into(),
        ));
    }
    Ok((sl, ids))
}

fn top_blocks(m: &ExactMatrix, sizes: &[usize; 4]) -> Result<[ExactMatrix; 3], MatrixError> {
    Ok([
        extract(m, sizes, 0, 3)?,
        extract(m, sizes, 1, 3)?,
        extract(m, sizes, 2, 3)?,
    ])
}

fn middle_blocks(m: &ExactMatrix, sizes: &[usize; 4]) -> Result<[ExactMatrix; 4], MatrixError> {
    Ok([
        extract(m, sizes, 0, 2)?,
        extract(m, sizes, 1, 2)?,
        extract(m, sizes, 0, 3)?,
        extract(m, sizes, 1, 3)?,
    ])
}

fn bottom_blocks(m: &ExactMatrix, sizes: &[usize; 4]) -> Result<[ExactMatrix; 3], MatrixError> {
    Ok([
        extract(m, sizes, 0, 1)?,
        extract(m, sizes, 0, 2)?,
        extract(m, sizes, 0, 3)?,
    ])
}

/// Evaluates the block criterion for strict categoricity of a chain
/// `A > B > C` alongside two independent tests: the coset intersection
/// condition computed with matrix products, and midpoint uniqueness on the
/// induced finite algebra. Disagreements are reported, not raised.
pub fn lemma17_check(
    upper: &[ExactMatrix],
    middle: &[ExactMatrix],
    lower: &[ExactMatrix],
    sizes: [usize; 4],
) -> Result<Lemma17Report, MatrixError> {
    let mut gens: Vec<ExactMatrix> = upper.to_vec();
    gens.extend_from_slice(middle);
    gens.extend_from_slice(lower);
    let lattice = closure(&gens, DEFAULT_CAP)?;
    let (sl, _) = chain_classes(&lattice, &[upper, middle, lower])?;

    for a in upper {
        for b in middle {
            for c in lower {
                BlockTriple::from_matrices(a, b, c, sizes)?;
            }
        }
    }

    let ups: Vec<[ExactMatrix; 3]> = upper
        .iter()
        .map(|m| top_blocks(m, &sizes))
        .collect::<Result<_, _>>()?;
    let mids: Vec<[ExactMatrix; 4]> = middle
        .iter()
        .map(|m| middle_blocks(m, &sizes))
        .collect::<Result<_, _>>()?;
    let lows: Vec<[ExactMatrix; 3]> = lower
        .iter()
        .map(|m| bottom_blocks(m, &sizes))
        .collect::<Result<_, _>>()?;

    let mut block_witness = None;
    'outer: for (ia, [a14, a24, a34]) in ups.iter().enumerate() {
        for (ib, [b13, b23, _, _]) in mids.iter().enumerate() {
            for (ic, [c12, c13, c14]) in lows.iter().enumerate() {
                let mut found = false;
                for [_, b23p, _, b24p] in &mids {
                    let i = &b13.add(&c12.mul(b23p)?)? == c13;
                    let ii = &a24.add(&b23.mul(a34)?)? == b24p;
                    let iii = a14.add(&b13.mul(a34)?)? == c14.sub(&c12.mul(b24p)?)?;
                    if i && ii && iii {
                        found = true;
                        break;
                    }
                }
                if !found {
                    block_witness = Some((ia, ib, ic));
                    break 'outer;
                }
            }
        }
    }

    let mut intersection_witness = None;
    'pairs: for (ib, b) in middle.iter().enumerate() {
        let down: BTreeSet<ExactMatrix> = upper
            .iter()
            .map(|a| a.mul(b)?.mul(a))
            .collect::<Result<_, _>>()?;
        for (ib2, b2) in middle.iter().enumerate() {
            let mut meets = false;
            for c in lower {
                if down.contains(&mat_nabla(&mat_nabla(c, b2)?, c)?) {
                    meets = true;
                    break;
                }
            }
            if !meets {
                intersection_witness = Some((ib, ib2));
                break 'pairs;
            }
        }
    }

    let (strictly_categorical, _) = is_strictly_categorical(&sl)?;
    Ok(Lemma17Report {
        block_criterion: block_witness.is_none(),
        block_witness,
        intersection_criterion: intersection_witness.is_none(),
        intersection_witness,
        strictly_categorical,
    })
}

/// Free blocks of a matrix in one of the two 3-block forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThreeBlock {
    /// `[[I, 0, p], [0, I, q], [0, 0, 0]]`
    Upper { p: ExactMatrix, q: ExactMatrix },
    /// `[[I, x, y], [0, 0, 0], [0, 0, 0]]`
    Lower { x: ExactMatrix, y: ExactMatrix },
}

impl ThreeBlock {
    pub fn assemble(&self, sizes: [usize; 3]) -> ExactMatrix {
        let o = offsets(&sizes);
        let n: usize = sizes.iter().sum();
        match self {
            ThreeBlock::Upper { p, q } => {
                let mut m = ExactMatrix::zeros(p.scalar(), n, n);
                place_identity(&mut m, o[0], sizes[0]);
                place_identity(&mut m, o[1], sizes[1]);
                m.set_block(o[0], o[2], p);
                m.set_block(o[1], o[2], q);
                m
            }
            ThreeBlock::Lower { x, y } => {
                let mut m = ExactMatrix::zeros(x.scalar(), n, n);
                place_identity(&mut m, o[0], sizes[0]);
                m.set_block(o[0], o[1], x);
                m.set_block(o[0], o[2], y);
                m
            }
        }
    }

    pub fn upper(m: &ExactMatrix, sizes: [usize; 3]) -> Result<Self, MatrixError> {
        let t = ThreeBlock::Upper {
            p: extract(m, &sizes, 0, 2)?,
            q: extract(m, &sizes, 1, 2)?,
        };
        Self::confirm(t, m, sizes)
    }

    pub fn lower(m: &ExactMatrix, sizes: [usize; 3]) -> Result<Self, MatrixError> {
        let t = ThreeBlock::Lower {
            x: extract(m, &sizes, 0, 1)?,
            y: extract(m, &sizes, 0, 2)?,
        };
        Self::confirm(t, m, sizes)
    }

    fn confirm(t: Self, m: &ExactMatrix, sizes: [usize; 3]) -> Result<Self, MatrixError> {
        if &t.assemble(sizes) != m {
            return Err(MatrixError::ShapeMismatch(format!(
                "matrix is not in the {} 3-block form",
                match t {
                    ThreeBlock::Upper { .. } => "upper",
                    ThreeBlock::Lower { .. } => "lower",
                }
            )));
        }
        Ok(t)
    }
}

/// Normality and conormality of a two-class skew lattice `A > B`, from the
/// block forms and from the abstract identities.
#[derive(Clone, Debug)]
pub struct Prop21Report {
    pub normal: bool,
    pub conormal: bool,
    /// All members of `B` share the `x` block.
    pub block_normal: bool,
    /// All members of `A` share the `q` block.
    pub block_conormal: bool,
    pub lattice: MatrixSkewLattice,
}

fn all_equal<T: PartialEq>(items: &[T]) -> bool {
    items.windows(2).all(|w| w[0] == w[1])
}

/// Closes `upper ∪ lower`, requires exactly two classes with `upper` in
/// the top one and `lower` in the bottom one, and compares the block
/// conditions with the abstract normal / conormal identities.
pub fn prop21_check(
    upper: &[ExactMatrix],
    lower: &[ExactMatrix],
    sizes: [usize; 3],
) -> Result<Prop21Report, MatrixError> {
    let gens: Vec<ExactMatrix> = upper.iter().chain(lower).cloned().collect();
    let lattice = closure(&gens, DEFAULT_CAP)?;
    let sl = SkewLattice::new(lattice.algebra().clone())?;
    let s = sl.structure();
    let locate = |list: &[ExactMatrix]| -> Result<BTreeSet<ClassId>, MatrixError> {
        list.iter()
            .map(|m| {
                lattice
                    .index_of(m)
                    .map(|i| sl.class_of(i))
                    .ok_or(MatrixError::NotAnElement)
            })
            .collect()
    };
    let (tops, bottoms) = (locate(upper)?, locate(lower)?);
    let (Some(&top), Some(&bottom)) = (tops.first(), bottoms.first()) else {
        return Err(MatrixError::NotComparable("a class is empty".into()));
    };
    if s.class_count() != 2 || tops.len() != 1 || bottoms.len() != 1 || !s.is_above(top, bottom) {
        return Err(MatrixError::NotComparable(format!(
            "closure has {} classes; the lists do not form a chain A > B",
            s.class_count()
        )));
    }
    let mut qs = Vec::new();
    for &i in s.class(top) {
        if let ThreeBlock::Upper { q, .. } = ThreeBlock::upper(lattice.element(i), sizes)? {
            qs.push(q);
        }
    }
    let mut xs = Vec::new();
    for &i in s.class(bottom) {
        if let ThreeBlock::Lower { x, .. } = ThreeBlock::lower(lattice.element(i), sizes)? {
            xs.push(x);
        }
    }
    let (block_normal, block_conormal) = (all_equal(&xs), all_equal(&qs));
    let flags = classify(sl.algebra());
    let (normal, conormal) = (flags.normal.holds(), flags.conormal.holds());
    if normal != block_normal || conormal != block_conormal {
        return Err(MatrixError::CriteriaDisagree(format!(
            "normal {normal} vs block {block_normal}, conormal {conormal} vs block {block_conormal}"
        )));
    }
    Ok(Prop21Report {
        normal,
        conormal,
        block_normal,
        block_conormal,
        lattice,
    })
}

/// The coset bijection `φ_{a,b}` of a two-class lattice in 3-block form,
/// computed by block substitution `u ↦ [[I, x_b, p_u + x_b q_u], 0, 0]` on
/// the coset of `a`, and checked against the abstract coset bijection.
pub fn remark18_maps(
    lattice: &MatrixSkewLattice,
    a: Element,
    b: Element,
    sizes: [usize; 3],
) -> Result<CosetBijection, MatrixError> {
    let sl = SkewLattice::new(lattice.algebra().clone())?;
    let (ca, cb) = (sl.class_of(a), sl.class_of(b));
    if !sl.structure().is_above(ca, cb) {
        return Err(MatrixError::NotComparable(format!(
            "class of {a} is not above class of {b}"
        )));
    }
    let ThreeBlock::Lower { x: xb, .. } = ThreeBlock::lower(lattice.element(b), sizes)? else {
        unreachable!("lower() yields the lower form")
    };
    let domain = coset_up(&sl, ca, cb, a)?.members;
    let mut graph = Vec::with_capacity(domain.len());
    for u in domain {
        let ThreeBlock::Upper { p, q } = ThreeBlock::upper(lattice.element(u), sizes)? else {
            unreachable!("upper() yields the upper form")
        };
        let image = ThreeBlock::Lower {
            y: p.add(&xb.mul(&q)?)?,
            x: xb.clone(),
        }
        .assemble(sizes);
        let v = lattice.index_of(&image).ok_or(MatrixError::NotAnElement)?;
        graph.push((u, v));
    }
    graph.sort_unstable();
    let phi = coset_bijection(&sl, a, b)?;
    if phi.graph != graph {
        return Err(MatrixError::CriteriaDisagree(format!(
            "block substitution gives {graph:?}, coset bijection gives {:?}",
            phi.graph
        )));
    }
    Ok(phi)
}
