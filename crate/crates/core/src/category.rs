//! Composition of coset bijections and the coset category.
//!
//! Coset bijections `φ : A → B` and `ψ : B → C` along a chain `A > B > C`
//! compose as partial maps. The composite `ψφ` is either empty or contained
//! in a unique coset bijection `ψ × φ : A → C`. A skew lattice is
//! *categorical* when every nonempty composite already is a coset
//! bijection, and *strictly categorical* when in addition no composite is
//! empty. Only then do the coset bijections form a category; in general `×`
//! fails to be associative, which [`associativity_audit`] records.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::algebra::{ClassId, Element, Op, SkewLattice};
use crate::coset::{
    coset_bijection, coset_bijections, coset_down, coset_up, CosetBijection, CosetError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("cannot compose: first map ends in {phi_target}, second starts in {psi_source}")]
    ClassMismatch {
        phi_target: ClassId,
        psi_source: ClassId,
    },
    #[error("classes {0}, {1}, {2} do not form a chain")]
    NotAChain(ClassId, ClassId, ClassId),
    #[error("the skew lattice is not categorical")]
    NotCategorical,
    #[error("criteria disagree: {0}")]
    CriteriaDisagree(String),
    #[error("× product is not well defined: {0}")]
    CrossProduct(String),
    #[error("coset category law fails: {0}")]
    LawFailure(String),
    #[error(transparent)]
    Coset(#[from] CosetError),
}

/// A partial bijection between two `D`-classes. Equality compares source,
/// target and graph, so empty maps between different classes are distinct.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialBijection {
    pub source: ClassId,
    pub target: ClassId,
    pub graph: Vec<(Element, Element)>,
}

impl PartialBijection {
    pub fn empty(source: ClassId, target: ClassId) -> Self {
        PartialBijection {
            source,
            target,
            graph: Vec::new(),
        }
    }

    pub fn identity(class: ClassId, members: &[Element]) -> Self {
        PartialBijection {
            source: class,
            target: class,
            graph: members.iter().map(|&x| (x, x)).collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn domain(&self) -> Vec<Element> {
        self.graph.iter().map(|p| p.0).collect()
    }

    pub fn apply(&self, x: Element) -> Option<Element> {
        self.graph.iter().find(|p| p.0 == x).map(|p| p.1)
    }
}

impl From<&CosetBijection> for PartialBijection {
    fn from(b: &CosetBijection) -> Self {
        PartialBijection {
            source: b.upper,
            target: b.lower,
            graph: b.graph.clone(),
        }
    }
}

impl fmt::Display for PartialBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}→{} {{", self.source, self.target)?;
        for (i, (x, y)) in self.graph.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}↦{y}")?;
        }
        f.write_str("}")
    }
}

/// `ψ ∘ φ` (apply `phi` first).
pub fn compose(
    psi: &PartialBijection,
    phi: &PartialBijection,
) -> Result<PartialBijection, CategoryError> {
    if phi.target != psi.source {
        return Err(CategoryError::ClassMismatch {
            phi_target: phi.target,
            psi_source: psi.source,
        });
    }
    let mut graph: Vec<(Element, Element)> = phi
        .graph
        .iter()
        .filter_map(|&(x, y)| psi.apply(y).map(|z| (x, z)))
        .collect();
    graph.sort_unstable();
    Ok(PartialBijection {
        source: phi.source,
        target: psi.target,
        graph,
    })
}

/// `ψ × φ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CrossProduct {
    Empty,
    Bijection {
        chi: CosetBijection,
        composite: PartialBijection,
    },
}

impl CrossProduct {
    pub fn bijection(&self) -> Option<&CosetBijection> {
        match self {
            CrossProduct::Empty => None,
            CrossProduct::Bijection { chi, .. } => Some(chi),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, CrossProduct::Empty)
    }

    pub fn graph(&self) -> &[(Element, Element)] {
        self.bijection().map_or(&[], |b| &b.graph)
    }
}

impl fmt::Display for CrossProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.bijection() {
            None => f.write_str("∅"),
            Some(chi) => write!(f, "{}", PartialBijection::from(chi)),
        }
    }
}

/// The coset bijection containing `ψφ`, or [`CrossProduct::Empty`] when the
/// composite is empty. The containing bijection is named by the smallest pair
/// of the composite and checked to be the same for every pair.
pub fn cross_product(
    sl: &SkewLattice,
    psi: &CosetBijection,
    phi: &CosetBijection,
) -> Result<CrossProduct, CategoryError> {
    let composite = compose(&psi.into(), &phi.into())?;
    let s = sl.structure();
    if !(s.is_above(phi.upper, phi.lower) && s.is_above(psi.upper, psi.lower))
        || !s.is_above(phi.upper, psi.lower)
    {
        return Err(CategoryError::NotAChain(phi.upper, phi.lower, psi.lower));
    }
    let Some(&(a, c)) = composite.graph.first() else {
        return Ok(CrossProduct::Empty);
    };
    let chi = coset_bijection(sl, a, c)?;
    for &(a2, c2) in &composite.graph {
        if !chi.contains((a2, c2)) {
            return Err(CategoryError::CrossProduct(format!(
                "{chi:?} does not contain ({a2}, {c2}) of the composite"
            )));
        }
        if coset_bijection(sl, a2, c2)? != chi {
            return Err(CategoryError::CrossProduct(format!(
                "pairs ({a}, {c}) and ({a2}, {c2}) name different bijections"
            )));
        }
    }
    Ok(CrossProduct::Bijection { chi, composite })
}

/// A nonempty composite `ψφ` strictly smaller than `χ = ψ × φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonCategoricalWitness {
    pub phi: CosetBijection,
    pub psi: CosetBijection,
    pub composite: PartialBijection,
    pub chi: CosetBijection,
}

/// Why a skew lattice fails to be strictly categorical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonStrictWitness {
    /// `a > b > c` and `a > b2 > c` with `b ≠ b2`.
    Midpoints {
        a: Element,
        b: Element,
        b2: Element,
        c: Element,
    },
    /// Nonempty coset bijections with an empty composite `ψφ`.
    EmptyComposite {
        phi: CosetBijection,
        psi: CosetBijection,
    },
    /// `(A ∧ b ∧ A) ∩ (C ∨ b2 ∨ C) = ∅`.
    DisjointCosets { b: Element, b2: Element },
    /// The skew lattice is not even categorical.
    NotCategorical,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoricalVerdict {
    pub categorical: bool,
    pub strictly_categorical: bool,
    pub non_categorical: Option<NonCategoricalWitness>,
    pub non_strict: Option<NonStrictWitness>,
}

fn bijections_along(
    sl: &SkewLattice,
    chain: &[ClassId],
) -> Result<Vec<Vec<CosetBijection>>, CategoryError> {
    chain
        .windows(2)
        .map(|w| coset_bijections(sl, w[0], w[1]).map_err(Into::into))
        .collect()
}

/// Direct test: every nonempty composite of coset bijections along a chain
/// `A > B > C` is itself a coset bijection.
fn categorical_direct(sl: &SkewLattice) -> Result<Option<NonCategoricalWitness>, CategoryError> {
    for chain in sl.structure().chains(3) {
        let maps = bijections_along(sl, &chain)?;
        for phi in &maps[0] {
            for psi in &maps[1] {
                if let CrossProduct::Bijection { chi, composite } = cross_product(sl, psi, phi)? {
                    if composite.graph != chi.graph {
                        return Ok(Some(NonCategoricalWitness {
                            phi: phi.clone(),
                            psi: psi.clone(),
                            composite,
                            chi,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn set_of(it: impl IntoIterator<Item = Element>) -> BTreeSet<Element> {
    it.into_iter().collect()
}

/// Coset criterion: for all `a > b > c` along a chain `A > B > C`,
/// `(A∧b∧A) ∩ (C∨b∨C)` equals both `(C∨a∨C) ∧ b ∧ (C∨a∨C)` and
/// `(A∧c∧A) ∨ b ∨ (A∧c∧A)`.
fn categorical_by_cosets(sl: &SkewLattice) -> Result<bool, CategoryError> {
    for chain in sl.structure().chains(3) {
        let (ca, cb, cc) = (chain[0], chain[1], chain[2]);
        for &a in sl.class(ca) {
            for &b in sl.class(cb) {
                if !sl.natural_lt(b, a) {
                    continue;
                }
                for &c in sl.class(cc) {
                    if !sl.natural_lt(c, b) {
                        continue;
                    }
                    let down_b = set_of(coset_down(sl, ca, cb, b)?.members);
                    let up_b = set_of(coset_up(sl, cb, cc, b)?.members);
                    let lhs: BTreeSet<_> = down_b.intersection(&up_b).copied().collect();
                    let up_a = coset_up(sl, ca, cc, a)?.members;
                    let first = set_of(up_a.iter().flat_map(|&x| {
                        up_a.iter()
                            .map(move |&y| sl.apply(Op::Meet, sl.meet(x, b), y))
                    }));
                    let down_c = coset_down(sl, ca, cc, c)?.members;
                    let second = set_of(down_c.iter().flat_map(|&x| {
                        down_c
                            .iter()
                            .map(move |&y| sl.apply(Op::Join, sl.join(x, b), y))
                    }));
                    if (lhs == first) != (lhs == second) {
                        return Err(CategoryError::CriteriaDisagree(format!(
                            "the two coset criteria split at a={a}, b={b}, c={c}"
                        )));
                    }
                    if lhs != first {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Decides categoricity directly and by the coset criterion; the two must
/// agree. Returns the smallest non-categorical witness, if any.
pub fn is_categorical(
    sl: &SkewLattice,
) -> Result<(bool, Option<NonCategoricalWitness>), CategoryError> {
    let witness = categorical_direct(sl)?;
    let by_cosets = categorical_by_cosets(sl)?;
    if witness.is_none() != by_cosets {
        return Err(CategoryError::CriteriaDisagree(format!(
            "direct composite test says {}, coset criterion says {by_cosets}",
            witness.is_none()
        )));
    }
    Ok((witness.is_none(), witness))
}

/// Midpoint uniqueness: no `a > b > c` and `a > b2 > c` with `b ≠ b2`.
fn strict_by_midpoints(sl: &SkewLattice) -> Option<NonStrictWitness> {
    let mut best: Option<(Element, Element, Element, Element)> = None;
    for chain in sl.structure().chains(3) {
        for &a in sl.class(chain[0]) {
            for &c in sl.class(chain[2]) {
                let mids: Vec<Element> = sl
                    .class(chain[1])
                    .iter()
                    .copied()
                    .filter(|&b| sl.natural_lt(b, a) && sl.natural_lt(c, b))
                    .collect();
                if let [b, b2, ..] = mids[..] {
                    let t = (a, b, b2, c);
                    if best.is_none_or(|cur| t < cur) {
                        best = Some(t);
                    }
                }
            }
        }
    }
    best.map(|(a, b, b2, c)| NonStrictWitness::Midpoints { a, b, b2, c })
}

/// Categorical plus `(A∧b∧A) ∩ (C∨b2∨C) ≠ ∅` for all `b, b2 ∈ B`.
fn strict_by_cosets(sl: &SkewLattice) -> Result<Option<NonStrictWitness>, CategoryError> {
    if !categorical_by_cosets(sl)? {
        return Ok(Some(NonStrictWitness::NotCategorical));
    }
    for chain in sl.structure().chains(3) {
        let (ca, cb, cc) = (chain[0], chain[1], chain[2]);
        for &b in sl.class(cb) {
            let down = set_of(coset_down(sl, ca, cb, b)?.members);
            for &b2 in sl.class(cb) {
                let up = coset_up(sl, cb, cc, b2)?.members;
                if up.iter().all(|x| !down.contains(x)) {
                    return Ok(Some(NonStrictWitness::DisjointCosets { b, b2 }));
                }
            }
        }
    }
    Ok(None)
}

/// Decides strict categoricity by midpoint uniqueness and by the coset
/// criterion; the two must agree. The returned witness is the smallest
/// midpoint witness `(a, b, b2, c)`.
pub fn is_strictly_categorical(
    sl: &SkewLattice,
) -> Result<(bool, Option<NonStrictWitness>), CategoryError> {
    let midpoints = strict_by_midpoints(sl);
    let cosets = strict_by_cosets(sl)?;
    if midpoints.is_none() != cosets.is_none() {
        return Err(CategoryError::CriteriaDisagree(format!(
            "midpoint test gives {midpoints:?}, coset test gives {cosets:?}"
        )));
    }
    Ok((midpoints.is_none(), midpoints))
}

/// First pair of nonempty coset bijections along a chain whose composite is
/// empty.
pub fn empty_composite(
    sl: &SkewLattice,
) -> Result<Option<(CosetBijection, CosetBijection)>, CategoryError> {
    for chain in sl.structure().chains(3) {
        let maps = bijections_along(sl, &chain)?;
        for phi in &maps[0] {
            for psi in &maps[1] {
                if compose(&psi.into(), &phi.into())?.is_empty() {
                    return Ok(Some((phi.clone(), psi.clone())));
                }
            }
        }
    }
    Ok(None)
}

pub fn categorical_verdict(sl: &SkewLattice) -> Result<CategoricalVerdict, CategoryError> {
    let (categorical, non_categorical) = is_categorical(sl)?;
    let (strictly_categorical, non_strict) = is_strictly_categorical(sl)?;
    if strictly_categorical && !categorical {
        return Err(CategoryError::CriteriaDisagree(
            "strictly categorical but not categorical".into(),
        ));
    }
    Ok(CategoricalVerdict {
        categorical,
        strictly_categorical,
        non_categorical,
        non_strict,
    })
}

/// Index of a morphism in a [`CosetCategory`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorphismId(pub usize);

/// The category whose objects are the `D`-classes and whose morphisms
/// `A → B` (for `A ≥ B`) are the identity, the coset bijections and, when
/// the skew lattice is not strictly categorical, a labelled empty map.
#[derive(Clone, Debug)]
pub struct CosetCategory {
    objects: Vec<ClassId>,
    morphisms: Vec<PartialBijection>,
    hom: BTreeMap<(ClassId, ClassId), Vec<MorphismId>>,
    composition: HashMap<(MorphismId, MorphismId), MorphismId>,
    strict: bool,
}

impl CosetCategory {
    pub fn objects(&self) -> &[ClassId] {
        &self.objects
    }

    pub fn morphism(&self, id: MorphismId) -> &PartialBijection {
        &self.morphisms[id.0]
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    /// Morphisms `source → target`; empty when `source ≱ target`.
    pub fn hom(&self, source: ClassId, target: ClassId) -> &[MorphismId] {
        self.hom.get(&(source, target)).map_or(&[], Vec::as_slice)
    }

    pub fn identity(&self, object: ClassId) -> MorphismId {
        self.hom(object, object)
            .iter()
            .copied()
            .find(|&m| !self.morphisms[m.0].is_empty())
            .expect("every object has an identity")
    }

    /// `psi ∘ phi`, if composable.
    pub fn compose(&self, psi: MorphismId, phi: MorphismId) -> Option<MorphismId> {
        self.composition.get(&(psi, phi)).copied()
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    /// Whether any hom-set carries an empty morphism.
    pub fn has_empty_morphisms(&self) -> bool {
        self.morphisms.iter().any(PartialBijection::is_empty)
    }

    /// Sizes of all nonempty hom-sets.
    pub fn hom_sizes(&self) -> Vec<((ClassId, ClassId), usize)> {
        self.hom.iter().map(|(k, v)| (*k, v.len())).collect()
    }
}

/// Builds the coset category of a categorical skew lattice and verifies
/// closure, identity and associativity laws exhaustively.
pub fn build_coset_category(sl: &SkewLattice) -> Result<CosetCategory, CategoryError> {
    let verdict = categorical_verdict(sl)?;
    if !verdict.categorical {
        return Err(CategoryError::NotCategorical);
    }
    let strict = verdict.strictly_categorical;
    let s = sl.structure();
    let objects: Vec<ClassId> = s.class_ids().collect();
    let mut morphisms = Vec::new();
    let mut hom: BTreeMap<(ClassId, ClassId), Vec<MorphismId>> = BTreeMap::new();
    let mut add = |m: PartialBijection, morphisms: &mut Vec<PartialBijection>| {
        let id = MorphismId(morphisms.len());
        hom.entry((m.source, m.target)).or_default().push(id);
        morphisms.push(m);
    };
    for &a in &objects {
        for &b in &objects {
            if a == b {
                add(PartialBijection::identity(a, s.class(a)), &mut morphisms);
            } else if s.is_above(a, b) {
                for phi in coset_bijections(sl, a, b)? {
                    add((&phi).into(), &mut morphisms);
                }
            } else {
                continue;
            }
            if !strict {
                add(PartialBijection::empty(a, b), &mut morphisms);
            }
        }
    }

    let lookup: HashMap<&PartialBijection, MorphismId> = morphisms
        .iter()
        .enumerate()
        .map(|(i, m)| (m, MorphismId(i)))
        .collect();
    let mut composition = HashMap::new();
    for (i, phi) in morphisms.iter().enumerate() {
        for (j, psi) in morphisms.iter().enumerate() {
            if phi.target != psi.source {
                continue;
            }
            let c = compose(psi, phi)?;
            let Some(&id) = lookup.get(&c) else {
                return Err(CategoryError::LawFailure(format!(
                    "composite {c} of {psi} after {phi} is not a morphism"
                )));
            };
            composition.insert((MorphismId(j), MorphismId(i)), id);
        }
    }
    let category = CosetCategory {
        objects,
        morphisms,
        hom,
        composition,
        strict,
    };
    check_category_laws(&category)?;
    Ok(category)
}

fn check_category_laws(cat: &CosetCategory) -> Result<(), CategoryError> {
    let n = cat.morphism_count();
    for i in 0..n {
        let f = MorphismId(i);
        let m = cat.morphism(f);
        let (ids, idt) = (cat.identity(m.source), cat.identity(m.target));
        if cat.compose(f, ids) != Some(f) || cat.compose(idt, f) != Some(f) {
            return Err(CategoryError::LawFailure(format!(
                "identities are not neutral for {m}"
            )));
        }
    }
    for f in (0..n).map(MorphismId) {
        for g in (0..n).map(MorphismId) {
            let Some(gf) = cat.compose(g, f) else {
                continue;
            };
            for h in (0..n).map(MorphismId) {
                let Some(hg) = cat.compose(h, g) else {
                    continue;
                };
                if cat.compose(h, gf) != cat.compose(hg, f) {
                    return Err(CategoryError::LawFailure(format!(
                        "composition is not associative at {}, {}, {}",
                        cat.morphism(h),
                        cat.morphism(g),
                        cat.morphism(f)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// A triple where `δ × (ψ × φ) ≠ (δ × ψ) × φ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AuditWitness {
    pub delta: CosetBijection,
    pub psi: CosetBijection,
    pub phi: CosetBijection,
    pub left: CrossProduct,
    pub right: CrossProduct,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AssociativityAudit {
    pub witnesses: Vec<AuditWitness>,
}

impl AssociativityAudit {
    pub fn is_associative(&self) -> bool {
        self.witnesses.is_empty()
    }
}

fn cross_opt(
    sl: &SkewLattice,
    psi: Option<&CosetBijection>,
    phi: Option<&CosetBijection>,
) -> Result<CrossProduct, CategoryError> {
    match (psi, phi) {
        (Some(psi), Some(phi)) => cross_product(sl, psi, phi),
        _ => Ok(CrossProduct::Empty),
    }
}

/// Compares both bracketings of `δ × ψ × φ` over every chain of four
/// classes and every triple of coset bijections along it.
pub fn associativity_audit(sl: &SkewLattice) -> Result<AssociativityAudit, CategoryError> {
    let mut witnesses = Vec::new();
    for chain in sl.structure().chains(4) {
        let maps = bijections_along(sl, &chain)?;
        for phi in &maps[0] {
            for psi in &maps[1] {
                let inner_right = cross_product(sl, psi, phi)?;
                for delta in &maps[2] {
                    let left = cross_opt(sl, Some(delta), inner_right.bijection())?;
                    let inner_left = cross_product(sl, delta, psi)?;
                    let right = cross_opt(sl, inner_left.bijection(), Some(phi))?;
                    if left != right {
                        witnesses.push(AuditWitness {
                            delta: delta.clone(),
                            psi: psi.clone(),
                            phi: phi.clone(),
                            left,
                            right,
                        });
                    }
                }
            }
        }
    }
    witnesses.sort();
    Ok(AssociativityAudit { witnesses })
}

/// For `A ≥ B`: the coset bijections `A → B` have pairwise disjoint graphs
/// whose union is `{(x, y) ∈ A × B : x ≥ y}`, and no two distinct members of
/// any class are comparable.
pub fn antichain_union_check(
    sl: &SkewLattice,
    upper: ClassId,
    lower: ClassId,
) -> Result<bool, CategoryError> {
    let s = sl.structure();
    let k = s.class_count();
    if upper.0 >= k || lower.0 >= k {
        return Err(CosetError::NotComparable { upper, lower }.into());
    }
    let graphs: Vec<Vec<(Element, Element)>> = if upper == lower {
        vec![PartialBijection::identity(upper, s.class(upper)).graph]
    } else if s.is_above(upper, lower) {
        coset_bijections(sl, upper, lower)?
            .into_iter()
            .map(|b| b.graph)
            .collect()
    } else {
        return Err(CosetError::NotComparable { upper, lower }.into());
    };
    let total: usize = graphs.iter().map(Vec::len).sum();
    let union: BTreeSet<(Element, Element)> = graphs.into_iter().flatten().collect();
    let disjoint = union.len() == total;
    let order: BTreeSet<(Element, Element)> = s
        .class(upper)
        .iter()
        .flat_map(|&x| s.class(lower).iter().map(move |&y| (x, y)))
        .filter(|&(x, y)| sl.natural_leq(y, x))
        .collect();
    let antichains = s.classes().iter().all(|c| {
        c.iter()
            .all(|&x| c.iter().all(|&y| x == y || !sl.natural_leq(x, y)))
    });
    Ok(disjoint && union == order && antichains)
}
