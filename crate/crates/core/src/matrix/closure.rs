use std::collections::HashMap;

use super::{mat_circ, mat_nabla, ExactMatrix, MatrixError};
use crate::algebra::{verify_skew_lattice, CayleyAlgebra, Element};

pub const DEFAULT_CAP: usize = 4096;

/// A finite set of idempotent matrices closed under `·` and `∇`, with the
/// Cayley tables it induces (`∧ = ·`, `∨ = ∇`).
#[derive(Clone, Debug)]
pub struct MatrixSkewLattice {
    elements: Vec<ExactMatrix>,
    index: HashMap<ExactMatrix, Element>,
    generators: usize,
    algebra: CayleyAlgebra,
    circ_equals_nabla: bool,
}

impl MatrixSkewLattice {
    pub fn elements(&self) -> &[ExactMatrix] {
        &self.elements
    }

    pub fn element(&self, i: Element) -> &ExactMatrix {
        &self.elements[i]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements `0..generator_count()` are the deduplicated generators in
    /// their given order.
    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn index_of(&self, m: &ExactMatrix) -> Option<Element> {
        self.index.get(m).copied()
    }

    pub fn algebra(&self) -> &CayleyAlgebra {
        &self.algebra
    }

    /// Whether `x ∘ y = x ∇ y` for every pair of elements.
    pub fn circ_equals_nabla(&self) -> bool {
        self.circ_equals_nabla
    }
}

/// Least set containing `gens` closed under `·` and `∇`.
///
/// Elements are discovered by a worklist in a fixed order, so indices are
/// reproducible. Fails once more than `cap` elements have been found.
pub fn closure(gens: &[ExactMatrix], cap: usize) -> Result<MatrixSkewLattice, MatrixError> {
    let first = gens.first().ok_or(MatrixError::NoGenerators)?;
    for (i, g) in gens.iter().enumerate() {
        if g.scalar() != first.scalar() {
            return Err(MatrixError::ScalarMismatch(first.scalar(), g.scalar()));
        }
        if g.shape() != first.shape() {
            return Err(MatrixError::DimMismatch {
                left: first.shape(),
                right: g.shape(),
            });
        }
        if !g.is_idempotent() {
            return Err(MatrixError::NotIdempotentGenerator(i));
        }
    }

    let mut elements: Vec<ExactMatrix> = Vec::new();
    let mut index: HashMap<ExactMatrix, Element> = HashMap::new();
    let mut insert = |m: ExactMatrix, elements: &mut Vec<ExactMatrix>| -> Result<(), MatrixError> {
        if !index.contains_key(&m) {
            if elements.len() == cap {
                return Err(MatrixError::CapExceeded { cap });
            }
            index.insert(m.clone(), elements.len());
            elements.push(m);
        }
        Ok(())
    };
    for g in gens {
        insert(g.clone(), &mut elements)?;
    }
    let generators = elements.len();
    let mut i = 0;
    while i < elements.len() {
        for j in 0..=i {
            for (x, y) in [(i, j), (j, i)] {
                let p = elements[x].mul(&elements[y])?;
                insert(p, &mut elements)?;
                let n = mat_nabla(&elements[x], &elements[y])?;
                insert(n, &mut elements)?;
            }
        }
        i += 1;
    }

    let index: HashMap<ExactMatrix, Element> = elements
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    let n = elements.len();
    let mut meet = vec![vec![0; n]; n];
    let mut join = vec![vec![0; n]; n];
    let mut circ_equals_nabla = true;
    for x in 0..n {
        for y in 0..n {
            meet[x][y] = index[&elements[x].mul(&elements[y])?];
            let nabla = mat_nabla(&elements[x], &elements[y])?;
            join[x][y] = index[&nabla];
            if circ_equals_nabla && mat_circ(&elements[x], &elements[y])? != nabla {
                circ_equals_nabla = false;
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let xy = join[x][y];
            for z in 0..n {
                if join[xy][z] != join[x][join[y][z]] {
                    return Err(MatrixError::NablaNotAssociative([x, y, z]));
                }
            }
        }
    }
    let algebra = CayleyAlgebra::new(meet, join)?;
    let report = verify_skew_lattice(&algebra);
    if !report.is_skew_lattice() {
        return Err(MatrixError::InducedAlgebraInvalid(Box::new(report)));
    }
    Ok(MatrixSkewLattice {
        elements,
        index,
        generators,
        algebra,
        circ_equals_nabla,
    })
}

/// [`closure`] with the generators' names attached as labels; other
/// elements are labelled `m<index>`.
pub fn closure_named(
    gens: &[(String, ExactMatrix)],
    cap: usize,
) -> Result<MatrixSkewLattice, MatrixError> {
    let mats: Vec<ExactMatrix> = gens.iter().map(|(_, m)| m.clone()).collect();
    let mut lattice = closure(&mats, cap)?;
    let mut labels: Vec<Option<String>> = vec![None; lattice.len()];
    for (name, m) in gens {
        let i = lattice.index[m];
        labels[i].get_or_insert_with(|| name.clone());
    }
    let labels = labels
        .into_iter()
        .enumerate()
        .map(|(i, l)| l.unwrap_or_else(|| format!("m{i}")))
        .collect();
    lattice.algebra = lattice.algebra.clone().with_labels(labels)?;
    Ok(lattice)
}
