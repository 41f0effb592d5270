use std::fmt;

use super::laws::{rectangular_identity_check, verify_skew_lattice};
use super::{AlgebraError, CayleyAlgebra, Element, Op};

/// A partition of `0..n` into sorted blocks, ordered by their minimum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<Element>>,
    block_of: Vec<usize>,
}

impl Partition {
    /// Classes of an equivalence relation given as a predicate.
    pub fn from_relation(
        n: usize,
        name: &'static str,
        related: impl Fn(Element, Element) -> bool,
    ) -> Result<Self, AlgebraError> {
        let mut block_of = vec![usize::MAX; n];
        let mut blocks: Vec<Vec<Element>> = Vec::new();
        for x in 0..n {
            if block_of[x] != usize::MAX {
                continue;
            }
            let block: Vec<Element> = (x..n).filter(|&y| related(x, y)).collect();
            if block.first() != Some(&x) {
                return Err(AlgebraError::NotAnEquivalence {
                    relation: name,
                    x,
                    y: x,
                });
            }
            for &y in &block {
                if block_of[y] != usize::MAX {
                    return Err(AlgebraError::NotAnEquivalence {
                        relation: name,
                        x,
                        y,
                    });
                }
                block_of[y] = blocks.len();
            }
            blocks.push(block);
        }
        let p = Partition { blocks, block_of };
        // Symmetry and transitivity within blocks; no relations across them.
        for x in 0..n {
            for y in 0..n {
                if related(x, y) != (p.block_of[x] == p.block_of[y]) {
                    return Err(AlgebraError::NotAnEquivalence {
                        relation: name,
                        x,
                        y,
                    });
                }
            }
        }
        Ok(p)
    }

    pub fn blocks(&self) -> &[Vec<Element>] {
        &self.blocks
    }

    pub fn block_of(&self, x: Element) -> usize {
        self.block_of[x]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn same_block(&self, x: Element, y: Element) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    /// Whether every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&y| coarser.same_block(b[0], y)))
    }
}

/// Green's relations of a skew lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenRelations {
    pub r: Partition,
    pub l: Partition,
    pub d: Partition,
}

impl GreenRelations {
    /// Computes `R`, `L` and `D` from `∧` and checks them against their `∨`
    /// descriptions `R = L_∨`, `L = R_∨`, `D = D_∨`.
    pub fn compute(alg: &CayleyAlgebra) -> Result<Self, AlgebraError> {
        let n = alg.size();
        let (m, j) = (|x, y| alg.meet(x, y), |x, y| alg.join(x, y));
        let r_meet = |x, y| m(x, y) == y && m(y, x) == x;
        let l_meet = |x, y| m(x, y) == x && m(y, x) == y;
        let l_join = |x, y| j(x, y) == x && j(y, x) == y;
        let r_join = |x, y| j(x, y) == y && j(y, x) == x;
        let d_meet = |x, y| alg.natural_preceq(x, y) && alg.natural_preceq(y, x);
        let d_join = |x, y| alg.natural_preceq_by_join(x, y) && alg.natural_preceq_by_join(y, x);

        type Rel<'a> = &'a dyn Fn(Element, Element) -> bool;
        let pairs: [(&str, Rel, Rel); 3] = [
            ("R", &r_meet, &l_join),
            ("L", &l_meet, &r_join),
            ("D", &d_meet, &d_join),
        ];
        for (name, lhs, rhs) in pairs {
            if let Some([x, y]) = super::first_tuple::<2>(n, |[x, y]| lhs(x, y) != rhs(x, y)) {
                return Err(AlgebraError::GreenMismatch {
                    relation: name,
                    x,
                    y,
                });
            }
        }
        let r = Partition::from_relation(n, "R", r_meet)?;
        let l = Partition::from_relation(n, "L", l_meet)?;
        let d = Partition::from_relation(n, "D", d_meet)?;

        // D is the join of R and L: x D y iff x R z L y for some z.
        let joined = |x, y| (0..n).any(|z| r.same_block(x, z) && l.same_block(z, y));
        if let Some([x, y]) =
            super::first_tuple::<2>(n, |[x, y]| d.same_block(x, y) != joined(x, y))
        {
            return Err(AlgebraError::GreenMismatch {
                relation: "D = R ∨ L",
                x,
                y,
            });
        }
        Ok(GreenRelations { r, l, d })
    }
}

/// Index of a `D`-class in the canonical order (sorted by minimum member).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassId(pub usize);

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D{}", self.0)
    }
}

/// Position of one `D`-class relative to another in `S/D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassOrder {
    Above,
    Below,
    Equal,
    Incomparable,
}

/// The `D`-class decomposition and the lattice reflection `S/D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DClassStructure {
    classes: Vec<Vec<Element>>,
    class_of: Vec<ClassId>,
    quotient_meet: Vec<Vec<ClassId>>,
    quotient_join: Vec<Vec<ClassId>>,
    is_lattice: bool,
}

impl DClassStructure {
    /// Decomposes a skew lattice into its `D`-classes. Checks that `D` is a
    /// congruence, that `S/D` is a lattice and that every class is a
    /// rectangular subalgebra.
    pub fn compute(alg: &CayleyAlgebra) -> Result<Self, AlgebraError> {
        let n = alg.size();
        let d = Partition::from_relation(n, "D", |x, y| {
            alg.natural_preceq(x, y) && alg.natural_preceq(y, x)
        })?;
        for op in [Op::Meet, Op::Join] {
            let broken = super::first_tuple::<4>(n, |[x, x2, y, y2]| {
                d.same_block(x, x2)
                    && d.same_block(y, y2)
                    && !d.same_block(alg.apply(op, x, y), alg.apply(op, x2, y2))
            });
            if let Some(witness) = broken {
                return Err(AlgebraError::CongruenceFailure { op, witness });
            }
        }
        let classes = d.blocks().to_vec();
        let class_of = (0..n).map(|x| ClassId(d.block_of(x))).collect::<Vec<_>>();
        let k = classes.len();
        let table = |op| {
            (0..k)
                .map(|a| {
                    (0..k)
                        .map(|b| class_of[alg.apply(op, classes[a][0], classes[b][0])])
                        .collect()
                })
                .collect::<Vec<Vec<ClassId>>>()
        };
        let quotient_meet = table(Op::Meet);
        let quotient_join = table(Op::Join);

        let qm = |a: usize, b: usize| quotient_meet[a][b].0;
        let qj = |a: usize, b: usize| quotient_join[a][b].0;
        let is_lattice = (0..k).all(|a| {
            qm(a, a) == a
                && qj(a, a) == a
                && (0..k).all(|b| {
                    qm(a, b) == qm(b, a)
                        && qj(a, b) == qj(b, a)
                        && qm(a, qj(a, b)) == a
                        && qj(a, qm(a, b)) == a
                        && (0..k).all(|c| {
                            qm(qm(a, b), c) == qm(a, qm(b, c)) && qj(qj(a, b), c) == qj(a, qj(b, c))
                        })
                })
        });

        for (i, class) in classes.iter().enumerate() {
            let rect = alg
                .subalgebra(class)
                .ok()
                .and_then(|s| rectangular_identity_check(&s.algebra).ok())
                .is_some_and(|c| c.holds());
            if !rect {
                return Err(AlgebraError::ClassNotRectangular(i));
            }
        }

        Ok(DClassStructure {
            classes,
            class_of,
            quotient_meet,
            quotient_join,
            is_lattice,
        })
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_ids(&self) -> impl Iterator<Item = ClassId> {
        (0..self.classes.len()).map(ClassId)
    }

    pub fn classes(&self) -> &[Vec<Element>] {
        &self.classes
    }

    pub fn class(&self, id: ClassId) -> &[Element] {
        &self.classes[id.0]
    }

    pub fn class_of(&self, x: Element) -> ClassId {
        self.class_of[x]
    }

    /// Class containing exactly the members of `elements` (in any order).
    pub fn find_class(&self, elements: &[Element]) -> Option<ClassId> {
        let mut sorted = elements.to_vec();
        sorted.sort_unstable();
        self.classes.iter().position(|c| *c == sorted).map(ClassId)
    }

    pub fn quotient_meet(&self, a: ClassId, b: ClassId) -> ClassId {
        self.quotient_meet[a.0][b.0]
    }

    pub fn quotient_join(&self, a: ClassId, b: ClassId) -> ClassId {
        self.quotient_join[a.0][b.0]
    }

    pub fn is_lattice(&self) -> bool {
        self.is_lattice
    }

    pub fn compare(&self, a: ClassId, b: ClassId) -> ClassOrder {
        if a == b {
            ClassOrder::Equal
        } else if self.quotient_meet(a, b) == b {
            ClassOrder::Above
        } else if self.quotient_meet(a, b) == a {
            ClassOrder::Below
        } else {
            ClassOrder::Incomparable
        }
    }

    /// `a > b` strictly in `S/D`.
    pub fn is_above(&self, a: ClassId, b: ClassId) -> bool {
        self.compare(a, b) == ClassOrder::Above
    }

    /// All strictly descending chains `c0 > c1 > ... ` of `len` classes, in
    /// lexicographic order of class indices.
    pub fn chains(&self, len: usize) -> Vec<Vec<ClassId>> {
        fn extend(
            s: &DClassStructure,
            len: usize,
            acc: &mut Vec<ClassId>,
            out: &mut Vec<Vec<ClassId>>,
        ) {
            if acc.len() == len {
                out.push(acc.clone());
                return;
            }
            for c in s.class_ids() {
                if acc.last().is_none_or(|&top| s.is_above(top, c)) {
                    acc.push(c);
                    extend(s, len, acc, out);
                    acc.pop();
                }
            }
        }
        let mut out = Vec::new();
        if len > 0 {
            extend(self, len, &mut Vec::new(), &mut out);
        }
        out
    }

    /// Whether `S/D` is a chain.
    pub fn is_chain(&self) -> bool {
        self.class_ids().all(|a| {
            self.class_ids()
                .all(|b| self.compare(a, b) != ClassOrder::Incomparable)
        })
    }

    /// Whether the lattice `S/D` is distributive.
    pub fn quotient_is_distributive(&self) -> bool {
        let k = self.class_count();
        let (m, j) = (
            |a, b| self.quotient_meet(a, b),
            |a, b| self.quotient_join(a, b),
        );
        super::first_tuple::<3>(k, |[a, b, c]| {
            let (a, b, c) = (ClassId(a), ClassId(b), ClassId(c));
            m(a, j(b, c)) != j(m(a, b), m(a, c))
        })
        .is_none()
    }
}

/// A finite algebra that has passed [`verify_skew_lattice`], bundled with
/// its `D`-class decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewLattice {
    algebra: CayleyAlgebra,
    green: GreenRelations,
    structure: DClassStructure,
}

impl SkewLattice {
    pub fn new(algebra: CayleyAlgebra) -> Result<Self, AlgebraError> {
        let report = verify_skew_lattice(&algebra);
        if !report.is_skew_lattice() {
            return Err(AlgebraError::NotASkewLattice(Box::new(report)));
        }
        let green = GreenRelations::compute(&algebra)?;
        let structure = DClassStructure::compute(&algebra)?;
        if !structure.is_lattice() {
            return Err(AlgebraError::CriteriaDisagree(
                "S/D is not a lattice".to_string(),
            ));
        }
        Ok(SkewLattice {
            algebra,
            green,
            structure,
        })
    }

    pub fn algebra(&self) -> &CayleyAlgebra {
        &self.algebra
    }

    pub fn green(&self) -> &GreenRelations {
        &self.green
    }

    pub fn structure(&self) -> &DClassStructure {
        &self.structure
    }

    pub fn class(&self, id: ClassId) -> &[Element] {
        self.structure.class(id)
    }

    pub fn class_of(&self, x: Element) -> ClassId {
        self.structure.class_of(x)
    }

    pub fn into_algebra(self) -> CayleyAlgebra {
        self.algebra
    }
}

impl std::ops::Deref for SkewLattice {
    type Target = CayleyAlgebra;

    fn deref(&self) -> &CayleyAlgebra {
        &self.algebra
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::fixtures;

    fn blocks(p: &Partition) -> Vec<Vec<Element>> {
        p.blocks().to_vec()
    }

    #[test]
    fn green_relations_of_fig1() {
        let g = GreenRelations::compute(&fixtures::fig1()).unwrap();
        assert_eq!(blocks(&g.d), vec![vec![0], vec![1], vec![2, 3]]);
        // right-handed: R = D
        assert_eq!(g.r, g.d);
        assert_eq!(blocks(&g.l), vec![vec![0], vec![1], vec![2], vec![3]]);
        assert!(g.r.refines(&g.d) && g.l.refines(&g.d));
    }

    #[test]
    fn green_relations_of_fig3() {
        let g = GreenRelations::compute(&fixtures::fig3()).unwrap();
        assert_eq!(
            blocks(&g.d),
            vec![vec![0, 4], vec![1, 3, 6, 7], vec![2, 5], vec![8]]
        );
        assert_eq!(g.l, g.d);
    }

    #[test]
    fn trivial_algebra_has_singleton_partitions() {
        let g = GreenRelations::compute(&CayleyAlgebra::trivial()).unwrap();
        for p in [&g.r, &g.l, &g.d] {
            assert_eq!(blocks(p), vec![vec![0]]);
        }
    }

    #[test]
    fn fig1_is_a_three_class_chain() {
        let s = DClassStructure::compute(&fixtures::fig1()).unwrap();
        let id = |xs: &[Element]| s.find_class(xs).unwrap();
        assert!(s.is_lattice() && s.is_chain());
        assert!(s.is_above(id(&[1]), id(&[2, 3])));
        assert!(s.is_above(id(&[2, 3]), id(&[0])));
        assert_eq!(s.chains(3), vec![vec![id(&[1]), id(&[2, 3]), id(&[0])]]);
    }

    #[test]
    fn fig3_is_a_four_class_chain() {
        let s = DClassStructure::compute(&fixtures::fig3()).unwrap();
        let ids: Vec<ClassId> = [&[0, 4][..], &[1, 3, 6, 7], &[2, 5], &[8]]
            .iter()
            .map(|c| s.find_class(c).unwrap())
            .collect();
        assert_eq!(s.chains(4), vec![ids.clone()]);
        assert_eq!(s.compare(ids[0], ids[2]), ClassOrder::Above);
        assert_eq!(s.compare(ids[1], ids[0]), ClassOrder::Below);
        assert_eq!(s.compare(ids[1], ids[1]), ClassOrder::Equal);
    }

    #[test]
    fn lattices_have_singleton_classes() {
        // The four-element Boolean lattice {0, a, b, 1}.
        let meet = vec![
            vec![0, 0, 0, 0],
            vec![0, 1, 0, 1],
            vec![0, 0, 2, 2],
            vec![0, 1, 2, 3],
        ];
        let join = vec![
            vec![0, 1, 2, 3],
            vec![1, 1, 3, 3],
            vec![2, 3, 2, 3],
            vec![3, 3, 3, 3],
        ];
        let alg = CayleyAlgebra::new(meet, join).unwrap();
        let s = DClassStructure::compute(&alg).unwrap();
        assert_eq!(s.class_count(), 4);
        assert!(!s.is_chain());
        assert_eq!(s.compare(ClassId(1), ClassId(2)), ClassOrder::Incomparable);
        assert!(s.quotient_is_distributive());
    }

    #[test]
    fn non_skew_lattices_are_rejected() {
        let alg =
            CayleyAlgebra::new(vec![vec![0, 0], vec![0, 1]], vec![vec![0, 0], vec![0, 1]]).unwrap();
        assert!(matches!(
            SkewLattice::new(alg),
            Err(AlgebraError::NotASkewLattice(_))
        ));
    }
}
