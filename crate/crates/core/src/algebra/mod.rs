//! Finite double bands given by Cayley tables.
//!
//! Elements are 0-based indices into the tables. Construction only checks
//! that every table entry is in range; the algebraic laws are checked by
//! [`verify_skew_lattice`] so that broken tables can still be loaded and
//! reported on.

mod green;
mod laws;

use std::borrow::Cow;
use std::fmt;

use thiserror::Error;

pub use green::{ClassId, ClassOrder, DClassStructure, GreenRelations, Partition, SkewLattice};
pub use laws::{
    band_properties, classify, rectangular_identity_check, verify_skew_lattice, BandProperties,
    ClassificationFlags, Law, VerificationReport,
};

/// Index of an element of a finite algebra.
pub type Element = usize;

/// One of the two binary operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Meet,
    Join,
}

impl Op {
    pub fn dual(self) -> Op {
        match self {
            Op::Meet => Op::Join,
            Op::Join => Op::Meet,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Op::Meet => "∧",
            Op::Join => "∨",
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Op::Meet => "meet",
            Op::Join => "join",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("an algebra needs at least one element")]
    Empty,
    #[error("{op} table has {found} entries in row {row}, expected {expected}")]
    RaggedTable {
        op: Op,
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("{op} table has {found} rows, expected {expected}")]
    WrongRowCount {
        op: Op,
        found: usize,
        expected: usize,
    },
    #[error("{op} table entry at ({x}, {y}) is {value}, outside 0..{size}")]
    IndexOutOfRange {
        op: Op,
        x: Element,
        y: Element,
        value: Element,
        size: usize,
    },
    #[error("invalid labels: {0}")]
    InvalidLabels(String),
    #[error("element {0} is out of range")]
    ElementOutOfRange(Element),
    #[error("subset is empty")]
    EmptySubset,
    #[error("subset is not closed: {x} {op} {y} escapes it")]
    NotClosed { x: Element, y: Element, op: Op },
    #[error("the {op} reduct is not a band (witness {witness:?})")]
    NotABand { op: Op, witness: Vec<Element> },
    #[error("not a skew lattice: {0}")]
    NotASkewLattice(Box<VerificationReport>),
    #[error("{relation} computed from meet differs from join side at ({x}, {y})")]
    GreenMismatch {
        relation: &'static str,
        x: Element,
        y: Element,
    },
    #[error("relation {relation} is not an equivalence (witness {x}, {y})")]
    NotAnEquivalence {
        relation: &'static str,
        x: Element,
        y: Element,
    },
    #[error("D is not a congruence for {op}: witness {witness:?}")]
    CongruenceFailure { op: Op, witness: [Element; 4] },
    #[error("D-class {0} is not a rectangular subalgebra")]
    ClassNotRectangular(usize),
    #[error("criteria disagree: {0}")]
    CriteriaDisagree(String),
}

/// Outcome of checking a universally quantified law.
///
/// `witness` is the lexicographically smallest tuple violating the law, and
/// is present exactly when the law fails.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Check {
    witness: Option<Vec<Element>>,
}

impl Check {
    pub fn pass() -> Self {
        Check { witness: None }
    }

    pub fn fail(witness: Vec<Element>) -> Self {
        Check {
            witness: Some(witness),
        }
    }

    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }

    pub fn witness(&self) -> Option<&[Element]> {
        self.witness.as_deref()
    }

    /// Checks `law` on every `K`-tuple over `0..n` in lexicographic order.
    pub fn exhaustive<const K: usize>(n: usize, mut law: impl FnMut([Element; K]) -> bool) -> Self {
        match first_tuple(n, |t| !law(t)) {
            Some(t) => Check::fail(t.to_vec()),
            None => Check::pass(),
        }
    }

    /// Both checks must hold; the first failure wins.
    pub fn and(self, other: Check) -> Check {
        if self.holds() {
            other
        } else {
            self
        }
    }
}

/// Lexicographically first `K`-tuple over `0..n` satisfying `pred`.
pub(crate) fn first_tuple<const K: usize>(
    n: usize,
    mut pred: impl FnMut([Element; K]) -> bool,
) -> Option<[Element; K]> {
    if n == 0 {
        return None;
    }
    let mut t = [0; K];
    loop {
        if pred(t) {
            return Some(t);
        }
        let mut i = K;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < n {
                break;
            }
            t[i] = 0;
        }
    }
}

/// A finite carrier `0..n` with two total binary operations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CayleyAlgebra {
    size: usize,
    meet: Vec<Element>,
    join: Vec<Element>,
    labels: Option<Vec<String>>,
}

impl CayleyAlgebra {
    /// Builds an algebra from row-major tables; row `x`, column `y` holds
    /// `x ∧ y` (resp. `x ∨ y`).
    pub fn new(meet: Vec<Vec<Element>>, join: Vec<Vec<Element>>) -> Result<Self, AlgebraError> {
        let size = meet.len();
        let flatten = |op: Op, rows: Vec<Vec<Element>>| {
            if rows.len() != size {
                return Err(AlgebraError::WrongRowCount {
                    op,
                    found: rows.len(),
                    expected: size,
                });
            }
            let mut flat = Vec::with_capacity(size * size);
            for (row, r) in rows.into_iter().enumerate() {
                if r.len() != size {
                    return Err(AlgebraError::RaggedTable {
                        op,
                        row,
                        found: r.len(),
                        expected: size,
                    });
                }
                flat.extend(r);
            }
            Ok(flat)
        };
        let meet = flatten(Op::Meet, meet)?;
        let join = flatten(Op::Join, join)?;
        Self::from_flat(size, meet, join)
    }

    /// Builds an algebra from flat row-major tables of length `size²`.
    pub fn from_flat(
        size: usize,
        meet: Vec<Element>,
        join: Vec<Element>,
    ) -> Result<Self, AlgebraError> {
        if size == 0 {
            return Err(AlgebraError::Empty);
        }
        for (op, table) in [(Op::Meet, &meet), (Op::Join, &join)] {
            if table.len() != size * size {
                return Err(AlgebraError::WrongRowCount {
                    op,
                    found: table.len() / size,
                    expected: size,
                });
            }
            if let Some(pos) = table.iter().position(|&v| v >= size) {
                return Err(AlgebraError::IndexOutOfRange {
                    op,
                    x: pos / size,
                    y: pos % size,
                    value: table[pos],
                    size,
                });
            }
        }
        Ok(CayleyAlgebra {
            size,
            meet,
            join,
            labels: None,
        })
    }

    /// Attaches display labels. Labels equal to the plain index strings are
    /// dropped so that equal algebras serialize identically.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, AlgebraError> {
        if labels.len() != self.size {
            return Err(AlgebraError::InvalidLabels(format!(
                "expected {} labels, got {}",
                self.size,
                labels.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(AlgebraError::InvalidLabels(format!("bad label {l:?}")));
            }
            if !seen.insert(l.as_str()) {
                return Err(AlgebraError::InvalidLabels(format!(
                    "duplicate label {l:?}"
                )));
            }
        }
        let is_default = labels.iter().enumerate().all(|(i, l)| *l == i.to_string());
        self.labels = if is_default { None } else { Some(labels) };
        Ok(self)
    }

    /// The 1-element algebra.
    pub fn trivial() -> Self {
        CayleyAlgebra {
            size: 1,
            meet: vec![0],
            join: vec![0],
            labels: None,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.size
    }

    #[inline]
    pub fn meet(&self, x: Element, y: Element) -> Element {
        self.meet[x * self.size + y]
    }

    #[inline]
    pub fn join(&self, x: Element, y: Element) -> Element {
        self.join[x * self.size + y]
    }

    #[inline]
    pub fn apply(&self, op: Op, x: Element, y: Element) -> Element {
        match op {
            Op::Meet => self.meet(x, y),
            Op::Join => self.join(x, y),
        }
    }

    /// Left-to-right product `x0 op x1 op ... op xk`.
    pub fn fold(&self, op: Op, xs: &[Element]) -> Element {
        let (&first, rest) = xs.split_first().expect("fold over an empty sequence");
        rest.iter().fold(first, |acc, &x| self.apply(op, acc, x))
    }

    /// `x op y op x`.
    #[inline]
    pub fn sandwich(&self, op: Op, x: Element, y: Element) -> Element {
        let xy = self.apply(op, x, y);
        self.apply(op, xy, x)
    }

    pub fn meet_row(&self, x: Element) -> &[Element] {
        &self.meet[x * self.size..(x + 1) * self.size]
    }

    pub fn join_row(&self, x: Element) -> &[Element] {
        &self.join[x * self.size..(x + 1) * self.size]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: Element) -> Cow<'_, str> {
        match &self.labels {
            Some(ls) => Cow::Borrowed(ls[x].as_str()),
            None => Cow::Owned(x.to_string()),
        }
    }

    /// Finds the element with the given display label.
    pub fn index_of_label(&self, label: &str) -> Option<Element> {
        self.elements().find(|&x| self.label(x) == label)
    }

    pub fn check_element(&self, x: Element) -> Result<(), AlgebraError> {
        if x < self.size {
            Ok(())
        } else {
            Err(AlgebraError::ElementOutOfRange(x))
        }
    }

    /// Natural partial order: `x ≤ y` iff `x ∧ y = x = y ∧ x`.
    pub fn natural_leq(&self, x: Element, y: Element) -> bool {
        self.meet(x, y) == x && self.meet(y, x) == x
    }

    /// The `∨` formulation of [`natural_leq`](Self::natural_leq):
    /// `x ≤ y` iff `x ∨ y = y = y ∨ x`.
    pub fn natural_leq_by_join(&self, x: Element, y: Element) -> bool {
        self.join(x, y) == y && self.join(y, x) == y
    }

    /// Strict natural order `x < y`.
    pub fn natural_lt(&self, x: Element, y: Element) -> bool {
        x != y && self.natural_leq(x, y)
    }

    /// Natural preorder: `x ⪯ y` iff `x ∧ y ∧ x = x`.
    pub fn natural_preceq(&self, x: Element, y: Element) -> bool {
        self.sandwich(Op::Meet, x, y) == x
    }

    /// The `∨` formulation: `x ⪯ y` iff `y ∨ x ∨ y = y`.
    pub fn natural_preceq_by_join(&self, x: Element, y: Element) -> bool {
        self.sandwich(Op::Join, y, x) == y
    }

    /// Restricts the algebra to `subset`, which must be closed under both
    /// operations. Element `i` of the result is `elements[i]` of `self`.
    pub fn subalgebra(&self, subset: &[Element]) -> Result<Subalgebra, AlgebraError> {
        let mut elements = subset.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if elements.is_empty() {
            return Err(AlgebraError::EmptySubset);
        }
        for &x in &elements {
            self.check_element(x)?;
        }
        let mut position = vec![usize::MAX; self.size];
        for (i, &x) in elements.iter().enumerate() {
            position[x] = i;
        }
        let k = elements.len();
        let mut meet = Vec::with_capacity(k * k);
        let mut join = Vec::with_capacity(k * k);
        for &x in &elements {
            for &y in &elements {
                for (op, table) in [(Op::Meet, &mut meet), (Op::Join, &mut join)] {
                    let v = position[self.apply(op, x, y)];
                    if v == usize::MAX {
                        return Err(AlgebraError::NotClosed { x, y, op });
                    }
                    table.push(v);
                }
            }
        }
        let labels = elements
            .iter()
            .map(|&x| self.label(x).into_owned())
            .collect();
        let algebra = CayleyAlgebra::from_flat(k, meet, join)?.with_labels(labels)?;
        Ok(Subalgebra { algebra, elements })
    }

    /// Whether `subset` is closed under both operations.
    pub fn is_closed(&self, subset: &[Element]) -> bool {
        let mut member = vec![false; self.size];
        for &x in subset {
            if x >= self.size {
                return false;
            }
            member[x] = true;
        }
        subset.iter().all(|&x| {
            subset
                .iter()
                .all(|&y| member[self.meet(x, y)] && member[self.join(x, y)])
        })
    }

    /// Applies a relabelling `perm` (old index → new index) to the tables.
    pub fn permuted(&self, perm: &[Element]) -> Result<CayleyAlgebra, AlgebraError> {
        let n = self.size;
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                meet[perm[x] * n + perm[y]] = perm[self.meet(x, y)];
                join[perm[x] * n + perm[y]] = perm[self.join(x, y)];
            }
        }
        CayleyAlgebra::from_flat(n, meet, join)
    }
}

/// A closed subset viewed as an algebra in its own right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    pub algebra: CayleyAlgebra,
    /// `elements[i]` is the parent index of local element `i`.
    pub elements: Vec<Element>,
}

impl Subalgebra {
    pub fn local(&self, parent: Element) -> Option<Element> {
        self.elements.binary_search(&parent).ok()
    }
}
