//! Cosets, image sets and coset bijections between comparable `D`-classes.
//!
//! For classes `A > B`, the cosets of `A` in `B` are the sets
//! `A ∧ b ∧ A = {a ∧ b ∧ a : a ∈ A}` ("down" cosets, inside `B`) and the
//! cosets of `B` in `A` are `B ∨ a ∨ B` ("up" cosets, inside `A`). Each side
//! partitions its class, and every up-coset is matched with every
//! down-coset by the bijection `φ_{a,b}(x) = x ∧ b ∧ x`.
//!
//! Every operation here re-derives the structural facts it relies on and
//! returns an error when they fail, which only happens for inputs that are
//! not skew lattices.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::algebra::{CayleyAlgebra, Check, ClassId, ClassOrder, Element, Op, SkewLattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CosetError {
    #[error("class {upper} is not strictly above class {lower}")]
    NotComparable { upper: ClassId, lower: ClassId },
    #[error("element {element} does not lie in class {class}")]
    ElementNotInClass { element: Element, class: ClassId },
    #[error("element {0} is out of range")]
    ElementOutOfRange(Element),
    #[error("coset {0:?} is not a rectangular subalgebra")]
    NotRectangular(Vec<Element>),
    #[error("image set of {element}: sandwich gives {sandwich:?}, order filter gives {filter:?}")]
    ImageSetMismatch {
        element: Element,
        sandwich: Vec<Element>,
        filter: Vec<Element>,
    },
    #[error("coset partition failure: {0}")]
    PartitionFailure(String),
    #[error("coset bijection failure: {0}")]
    BijectionFailure(String),
    #[error("criteria disagree: {0}")]
    CriteriaDisagree(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
}

/// Which class a coset lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// `A ∧ b ∧ A`, a subset of the lower class.
    Down,
    /// `B ∨ a ∨ B`, a subset of the upper class.
    Up,
}

/// A coset between classes `upper > lower`. Two cosets are equal when they
/// have the same classes, direction and members; the defining element is
/// kept only as provenance.
#[derive(Clone, Debug, Eq)]
pub struct Coset {
    pub upper: ClassId,
    pub lower: ClassId,
    pub direction: Direction,
    pub defining_element: Element,
    pub members: Vec<Element>,
}

impl PartialEq for Coset {
    fn eq(&self, other: &Self) -> bool {
        self.upper == other.upper
            && self.lower == other.lower
            && self.direction == other.direction
            && self.members == other.members
    }
}

/// `a ∧ B ∧ a` (target below) or `b ∨ A ∨ b` (target above).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageSet {
    pub element: Element,
    pub target_class: ClassId,
    pub members: Vec<Element>,
}

/// Both coset partitions for a pair `upper > lower`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetPartition {
    pub upper: ClassId,
    pub lower: ClassId,
    /// Cosets of the lower class in the upper class.
    pub up_cosets: Vec<Vec<Element>>,
    /// Cosets of the upper class in the lower class.
    pub down_cosets: Vec<Vec<Element>>,
}

/// The bijection `φ_{a,b} : B ∨ a ∨ B → A ∧ b ∧ A`, `x ↦ x ∧ b ∧ x`.
///
/// Ordered by classes and then by graph, which determines the rest.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetBijection {
    pub upper: ClassId,
    pub lower: ClassId,
    pub graph: Vec<(Element, Element)>,
    pub domain: Vec<Element>,
    pub image: Vec<Element>,
}

impl CosetBijection {
    pub fn apply(&self, x: Element) -> Option<Element> {
        self.graph.iter().find(|p| p.0 == x).map(|p| p.1)
    }

    pub fn contains(&self, pair: (Element, Element)) -> bool {
        self.graph.binary_search(&pair).is_ok()
    }
}

/// Which class [`coset_congruence`] partitions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// The upper class, into up-cosets.
    Upper,
    /// The lower class, into down-cosets.
    Lower,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetCongruence {
    pub upper: ClassId,
    pub lower: ClassId,
    pub side: Side,
    pub blocks: Vec<Vec<Element>>,
    /// Witness `[x, y, z, w]` with `x θ y`, `z θ w` but a product unrelated.
    pub congruence: Check,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomCheck {
    pub meet_hom: Check,
    pub join_hom: Check,
}

fn require_above(sl: &SkewLattice, upper: ClassId, lower: ClassId) -> Result<(), CosetError> {
    let k = sl.structure().class_count();
    if upper.0 >= k || lower.0 >= k || !sl.structure().is_above(upper, lower) {
        return Err(CosetError::NotComparable { upper, lower });
    }
    Ok(())
}

fn require_member(sl: &SkewLattice, x: Element, class: ClassId) -> Result<(), CosetError> {
    if x >= sl.size() {
        return Err(CosetError::ElementOutOfRange(x));
    }
    if sl.class_of(x) != class {
        return Err(CosetError::ElementNotInClass { element: x, class });
    }
    Ok(())
}

fn sorted_set(it: impl IntoIterator<Item = Element>) -> Vec<Element> {
    it.into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Closed under both operations and satisfying `x ∧ y ∧ x = x`.
pub(crate) fn is_rectangular_subset(alg: &CayleyAlgebra, members: &[Element]) -> bool {
    members.iter().all(|&x| {
        members.iter().all(|&y| {
            members.binary_search(&alg.meet(x, y)).is_ok()
                && members.binary_search(&alg.join(x, y)).is_ok()
                && alg.sandwich(Op::Meet, x, y) == x
        })
    })
}

pub fn comparable_classes(sl: &SkewLattice, a: ClassId, b: ClassId) -> ClassOrder {
    sl.structure().compare(a, b)
}

fn build_coset(
    sl: &SkewLattice,
    upper: ClassId,
    lower: ClassId,
    direction: Direction,
    defining_element: Element,
) -> Result<Coset, CosetError> {
    let members = match direction {
        Direction::Down => sorted_set(
            sl.class(upper)
                .iter()
                .map(|&a| sl.sandwich(Op::Meet, a, defining_element)),
        ),
        Direction::Up => sorted_set(
            sl.class(lower)
                .iter()
                .map(|&b| sl.sandwich(Op::Join, b, defining_element)),
        ),
    };
    if !is_rectangular_subset(sl, &members) {
        return Err(CosetError::NotRectangular(members));
    }
    Ok(Coset {
        upper,
        lower,
        direction,
        defining_element,
        members,
    })
}

/// The coset `A ∧ b ∧ A` of `upper` in `lower`.
pub fn coset_down(
    sl: &SkewLattice,
    upper: ClassId,
    lower: ClassId,
    b: Element,
) -> Result<Coset, CosetError> {
    require_above(sl, upper, lower)?;
    require_member(sl, b, lower)?;
    build_coset(sl, upper, lower, Direction::Down, b)
}

/// The coset `B ∨ a ∨ B` of `lower` in `upper`.
pub fn coset_up(
    sl: &SkewLattice,
    upper: ClassId,
    lower: ClassId,
    a: Element,
) -> Result<Coset, CosetError> {
    require_above(sl, upper, lower)?;
    require_member(sl, a, upper)?;
    build_coset(sl, upper, lower, Direction::Up, a)
}

/// The image set of `e` in `target`, computed both as a sandwich and as an
/// order filter; the two must agree.
pub fn image_set(sl: &SkewLattice, e: Element, target: ClassId) -> Result<ImageSet, CosetError> {
    if e >= sl.size() {
        return Err(CosetError::ElementOutOfRange(e));
    }
    let own = sl.class_of(e);
    let members = sl.class(target);
    let (sandwich, filter) = match sl.structure().compare(own, target) {
        ClassOrder::Above => (
            sorted_set(members.iter().map(|&t| sl.sandwich(Op::Meet, e, t))),
            sorted_set(members.iter().copied().filter(|&t| sl.natural_lt(t, e))),
        ),
        ClassOrder::Below => (
            sorted_set(members.iter().map(|&t| sl.sandwich(Op::Join, e, t))),
            sorted_set(members.iter().copied().filter(|&t| sl.natural_lt(e, t))),
        ),
        _ => {
            return Err(CosetError::NotComparable {
                upper: own,
                lower: target,
            })
        }
    };
    if sandwich != filter {
        return Err(CosetError::ImageSetMismatch {
            element: e,
            sandwich,
            filter,
        });
    }
    Ok(ImageSet {
        element: e,
        target_class: target,
        members: sandwich,
    })
}

fn check_partition(
    class: &[Element],
    blocks: &[Vec<Element>],
    what: &str,
) -> Result<(), CosetError> {
    let mut seen: Vec<Element> = blocks.iter().flatten().copied().collect();
    seen.sort_unstable();
    if seen != class {
        return Err(CosetError::PartitionFailure(format!(
            "{what} {blocks:?} do not partition {class:?}"
        )));
    }
    if let Some(b) = blocks.iter().find(|b| b.len() != blocks[0].len()) {
        return Err(CosetError::PartitionFailure(format!(
            "{what} have unequal sizes: {:?} vs {b:?}",
            blocks[0]
        )));
    }
    Ok(())
}

fn check_transversal(
    image: &[Element],
    blocks: &[Vec<Element>],
    e: Element,
) -> Result<(), CosetError> {
    for block in blocks {
        let hits = image
            .iter()
            .filter(|x| block.binary_search(x).is_ok())
            .count();
        if hits != 1 {
            return Err(CosetError::PartitionFailure(format!(
                "image set {image:?} of {e} meets coset {block:?} {hits} times"
            )));
        }
    }
    Ok(())
}

/// Both coset partitions of `upper > lower`, with the transversal property
/// of image sets checked on both sides.
pub fn coset_partition(
    sl: &SkewLattice,
    upper: ClassId,
    lower: ClassId,
) -> Result<CosetPartition, CosetError> {
    require_above(sl, upper, lower)?;
    let collect = |class: ClassId, dir: Direction| -> Result<Vec<Vec<Element>>, CosetError> {
        let mut blocks = BTreeSet::new();
        for &x in sl.class(class) {
            blocks.insert(build_coset(sl, upper, lower, dir, x)?.members);
        }
        Ok(blocks.into_iter().collect())
    };
    let down_cosets = collect(lower, Direction::Down)?;
    let up_cosets = collect(upper, Direction::Up)?;
    check_partition(sl.class(lower), &down_cosets, "down-cosets")?;
    check_partition(sl.class(upper), &up_cosets, "up-cosets")?;
    if up_cosets[0].len() != down_cosets[0].len() {
        return Err(CosetError::PartitionFailure(format!(
            "up-coset {:?} and down-coset {:?} differ in size",
            up_cosets[0], down_cosets[0]
        )));
    }
    for &a in sl.class(upper) {
        check_transversal(&image_set(sl, a, lower)?.members, &down_cosets, a)?;
    }
    for &b in sl.class(lower) {
        check_transversal(&image_set(sl, b, upper)?.members, &up_cosets, b)?;
    }
    Ok(CosetPartition {
        upper,
        lower,
        up_cosets,
        down_cosets,
    })
}

/// `φ_{a,b}` for `a` in a class strictly above the class of `b`. Checks that
/// it is a bijection onto `A ∧ b ∧ A` pairing each `x` with the unique
/// `y ≤ x` there, and that it preserves both operations.
pub fn coset_bijection(
    sl: &SkewLattice,
    a: Element,
    b: Element,
) -> Result<CosetBijection, CosetError> {
    for x in [a, b] {
        if x >= sl.size() {
            return Err(CosetError::ElementOutOfRange(x));
        }
    }
    let (upper, lower) = (sl.class_of(a), sl.class_of(b));
    require_above(sl, upper, lower)?;
    let domain = build_coset(sl, upper, lower, Direction::Up, a)?.members;
    let image = build_coset(sl, upper, lower, Direction::Down, b)?.members;
    let graph: Vec<(Element, Element)> = domain
        .iter()
        .map(|&x| (x, sl.sandwich(Op::Meet, x, b)))
        .collect();
    let fail = |msg: String| Err(CosetError::BijectionFailure(msg));

    if sorted_set(graph.iter().map(|p| p.1)) != image || image.len() != domain.len() {
        return fail(format!("φ_{{{a},{b}}} = {graph:?} is not onto {image:?}"));
    }
    for &(x, y) in &graph {
        let below: Vec<Element> = image
            .iter()
            .copied()
            .filter(|&z| sl.natural_leq(z, x))
            .collect();
        if below != [y] {
            return fail(format!(
                "elements of {image:?} below {x} are {below:?}, expected [{y}]"
            ));
        }
    }
    let f = |x: Element| graph[domain.binary_search(&x).expect("in domain")].1;
    for &x in &domain {
        for &y in &domain {
            for op in [Op::Meet, Op::Join] {
                if f(sl.apply(op, x, y)) != sl.apply(op, f(x), f(y)) {
                    return fail(format!(
                        "φ_{{{a},{b}}} does not preserve {op} at ({x}, {y})"
                    ));
                }
            }
        }
    }
    Ok(CosetBijection {
        upper,
        lower,
        graph,
        domain,
        image,
    })
}

/// All coset bijections from `upper` to `lower`, one per pair of an
/// up-coset and a down-coset, sorted.
pub fn coset_bijections(
    sl: &SkewLattice,
    upper: ClassId,
    lower: ClassId,
) -> Result<Vec<CosetBijection>, CosetError> {
    let partition = coset_partition(sl, upper, lower)?;
    let mut out = Vec::with_capacity(partition.up_cosets.len() * partition.down_cosets.len());
    for up in &partition.up_cosets {
        for down in &partition.down_cosets {
            out.push(coset_bijection(sl, up[0], down[0])?);
        }
    }
    out.sort();
    Ok(out)
}

/// Whether `A ∧ y ∧ A = A ∧ y2 ∧ A`, decided by set equality, by
/// `x ∧ y ∧ x = x ∧ y2 ∧ x` for all `x ∈ A`, and for some `x ∈ A`. The
/// three verdicts must agree.
pub fn coset_equal(
    sl: &SkewLattice,
    upper: ClassId,
    y: Element,
    y2: Element,
) -> Result<bool, CosetError> {
    if y >= sl.size() {
        return Err(CosetError::ElementOutOfRange(y));
    }
    let lower = sl.class_of(y);
    require_above(sl, upper, lower)?;
    require_member(sl, y2, lower)?;
    let by_sets = coset_down(sl, upper, lower, y)? == coset_down(sl, upper, lower, y2)?;
    let agree = |x| sl.sandwich(Op::Meet, x, y) == sl.sandwich(Op::Meet, x, y2);
    let for_all = sl.class(upper).iter().all(|&x| agree(x));
    let exists = sl.class(upper).iter().any(|&x| agree(x));
    if by_sets != for_all || for_all != exists {
        return Err(CosetError::CriteriaDisagree(format!(
            "cosets of {y} and {y2}: set equality {by_sets}, for-all {for_all}, exists {exists}"
        )));
    }
    Ok(by_sets)
}

/// The partition of one class of `upper > lower` into cosets determined by
/// the other, and whether it is a congruence of that class.
pub fn coset_congruence(
    sl: &SkewLattice,
    upper: ClassId,
    lower: ClassId,
    side: Side,
) -> Result<CosetCongruence, CosetError> {
    let partition = coset_partition(sl, upper, lower)?;
    let (class, blocks) = match side {
        Side::Upper => (sl.class(upper), partition.up_cosets),
        Side::Lower => (sl.class(lower), partition.down_cosets),
    };
    let block_of = |x: Element| blocks.iter().position(|b| b.binary_search(&x).is_ok());
    let k = class.len();
    let congruence = Check::exhaustive::<4>(k, |[x, y, z, w]| {
        let (x, y, z, w) = (class[x], class[y], class[z], class[w]);
        if block_of(x) != block_of(y) || block_of(z) != block_of(w) {
            return true;
        }
        [Op::Meet, Op::Join]
            .iter()
            .all(|&op| block_of(sl.apply(op, x, z)) == block_of(sl.apply(op, y, w)))
    });
    // Report the witness in element indices rather than class positions.
    let congruence = match congruence.witness() {
        Some(w) => Check::fail(w.iter().map(|&i| class[i]).collect()),
        None => congruence,
    };
    Ok(CosetCongruence {
        upper,
        lower,
        side,
        blocks,
        congruence,
    })
}

/// Whether a total map `source → target` between two classes preserves `∧`
/// and `∨`. The two answers always coincide on skew lattices.
pub fn hom_equivalence_check(
    sl: &SkewLattice,
    source: ClassId,
    target: ClassId,
    map: &[(Element, Element)],
) -> Result<HomCheck, CosetError> {
    let k = sl.structure().class_count();
    if source.0 >= k || target.0 >= k {
        return Err(CosetError::InvalidMap("unknown class".into()));
    }
    let domain = sl.class(source);
    let mut f = Vec::with_capacity(domain.len());
    for &x in domain {
        let images: Vec<Element> = map.iter().filter(|p| p.0 == x).map(|p| p.1).collect();
        match images[..] {
            [y] if sl.class(target).contains(&y) => f.push(y),
            [y] => {
                return Err(CosetError::InvalidMap(format!(
                    "{x} ↦ {y} leaves the target class"
                )))
            }
            _ => {
                return Err(CosetError::InvalidMap(format!(
                    "{x} has {} images",
                    images.len()
                )))
            }
        }
    }
    if map.len() != domain.len() {
        return Err(CosetError::InvalidMap(
            "map has entries outside the source class".into(),
        ));
    }
    let at = |x: Element| f[domain.binary_search(&x).expect("class is closed")];
    let hom = |op| {
        let c = Check::exhaustive::<2>(domain.len(), |[i, j]| {
            let (x, y) = (domain[i], domain[j]);
            at(sl.apply(op, x, y)) == sl.apply(op, at(x), at(y))
        });
        match c.witness() {
            Some(w) => Check::fail(w.iter().map(|&i| domain[i]).collect()),
            None => c,
        }
    };
    let result = HomCheck {
        meet_hom: hom(Op::Meet),
        join_hom: hom(Op::Join),
    };
    if result.meet_hom.holds() != result.join_hom.holds() {
        return Err(CosetError::CriteriaDisagree(format!(
            "map {map:?}: ∧-hom {} but ∨-hom {}",
            result.meet_hom.holds(),
            result.join_hom.holds()
        )));
    }
    Ok(result)
}

/// Normality via cosets: for every `A > B`, `B` is a single coset of `A`.
/// Witness `[a, x, x2]` with `A ∧ x ∧ A ≠ A ∧ x2 ∧ A` and `a = min A`.
pub fn normal_by_cosets(sl: &SkewLattice) -> Result<Check, CosetError> {
    single_coset_check(sl, Side::Lower)
}

/// Conormality via cosets: for every `A > B`, `A` is a single coset of `B`.
/// Witness `[b, x, x2]` with `B ∨ x ∨ B ≠ B ∨ x2 ∨ B` and `b = min B`.
pub fn conormal_by_cosets(sl: &SkewLattice) -> Result<Check, CosetError> {
    single_coset_check(sl, Side::Upper)
}

fn single_coset_check(sl: &SkewLattice, side: Side) -> Result<Check, CosetError> {
    for pair in sl.structure().chains(2) {
        let (upper, lower) = (pair[0], pair[1]);
        let p = coset_partition(sl, upper, lower)?;
        let (blocks, other) = match side {
            Side::Lower => (&p.down_cosets, sl.class(upper)),
            Side::Upper => (&p.up_cosets, sl.class(lower)),
        };
        if blocks.len() > 1 {
            return Ok(Check::fail(vec![other[0], blocks[0][0], blocks[1][0]]));
        }
    }
    Ok(Check::pass())
}
