//! Skew lattices of idempotent matrices.
//!
//! In a ring, idempotents carry `x ∧ y = xy` and `x ∇ y = (x ∘ y)²` where
//! `x ∘ y = x + y − xy`. A set of idempotent matrices closed under both is
//! a skew lattice once `∇` is associative on it. Arithmetic is exact, over
//! the integers or a prime field.

mod blocks;
mod closure;
mod examples;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::category::CategoryError;
use crate::coset::CosetError;
use crate::VerificationReport;

pub use blocks::{
    build_block_triple, lemma16_check, lemma17_check, order_preconditions, prop21_check,
    remark18_maps, BlockRelations, BlockTriple, Lemma17Report, OrderPreconditions, Prop21Report,
    ThreeBlock, BLOCK_NAMES,
};
pub use closure::{closure, closure_named, MatrixSkewLattice, DEFAULT_CAP};
pub use examples::{example19, example19_generators, example20, example20_generators};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("dimension mismatch: {left:?} against {right:?}")]
    DimMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("scalar mismatch: {0} against {1}")]
    ScalarMismatch(ScalarSpec, ScalarSpec),
    #[error("matrix rows have unequal lengths")]
    Ragged,
    #[error("matrix must be square")]
    NotSquare,
    #[error("block shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("closure exceeded {cap} elements")]
    CapExceeded { cap: usize },
    #[error("no generators")]
    NoGenerators,
    #[error("generator {0} is not idempotent")]
    NotIdempotentGenerator(usize),
    #[error("∇ is not associative at {0:?}")]
    NablaNotAssociative([usize; 3]),
    #[error("the two formulas for ∇ disagree")]
    NablaFormulaMismatch,
    #[error("induced algebra is not a skew lattice: {0}")]
    InducedAlgebraInvalid(Box<VerificationReport>),
    #[error("order precondition fails: {}", .0.join(", "))]
    OrderPreconditionFailed(Vec<&'static str>),
    #[error("relation {0} fails although the order holds")]
    RelationViolated(&'static str),
    #[error("not a skew chain: {0}")]
    NotASkewChain(String),
    #[error("classes are not comparable: {0}")]
    NotComparable(String),
    #[error("criteria disagree: {0}")]
    CriteriaDisagree(String),
    #[error("matrix is not an element of the skew lattice")]
    NotAnElement,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

/// Characteristic of the scalars: exact integers or the field with `p`
/// elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScalarSpec {
    Integers,
    Prime(u64),
}

impl ScalarSpec {
    /// `0` gives the integers, a prime `p` gives GF(p).
    pub fn from_characteristic(c: u64) -> Result<Self, MatrixError> {
        match c {
            0 => Ok(ScalarSpec::Integers),
            p if is_prime(p) => Ok(ScalarSpec::Prime(p)),
            p => Err(MatrixError::NotPrime(p)),
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            ScalarSpec::Integers => 0,
            ScalarSpec::Prime(p) => p,
        }
    }

    pub fn reduce(self, x: BigInt) -> BigInt {
        match self {
            ScalarSpec::Integers => x,
            ScalarSpec::Prime(p) => x.mod_floor(&BigInt::from(p)),
        }
    }
}

impl fmt::Display for ScalarSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarSpec::Integers => f.write_str("Z"),
            ScalarSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// A dense matrix of exact scalars, reduced modulo the characteristic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactMatrix {
    scalar: ScalarSpec,
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn from_entries(
        scalar: ScalarSpec,
        rows: usize,
        cols: usize,
        entries: Vec<BigInt>,
    ) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::Ragged);
        }
        let entries = entries.into_iter().map(|x| scalar.reduce(x)).collect();
        Ok(ExactMatrix {
            scalar,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(
        scalar: ScalarSpec,
        rows: &[Vec<T>],
    ) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(MatrixError::Ragged);
        }
        let entries = rows.iter().flatten().cloned().map(Into::into).collect();
        Self::from_entries(scalar, rows.len(), cols, entries)
    }

    pub fn zeros(scalar: ScalarSpec, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            scalar,
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(scalar: ScalarSpec, n: usize) -> Self {
        let mut m = Self::zeros(scalar, n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn scalar(&self) -> ScalarSpec {
        self.scalar
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.cols + j] = self.scalar.reduce(value);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn row_vec(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// The `h × w` submatrix with top-left corner `(r, c)`.
    pub fn block(&self, r: usize, c: usize, h: usize, w: usize) -> ExactMatrix {
        let mut entries = Vec::with_capacity(h * w);
        for i in r..r + h {
            entries.extend_from_slice(&self.entries[i * self.cols + c..i * self.cols + c + w]);
        }
        ExactMatrix {
            scalar: self.scalar,
            rows: h,
            cols: w,
            entries,
        }
    }

    pub fn set_block(&mut self, r: usize, c: usize, block: &ExactMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.entries[(r + i) * self.cols + c + j] = block.get(i, j).clone();
            }
        }
    }

    fn same_scalar(&self, other: &ExactMatrix) -> Result<(), MatrixError> {
        if self.scalar != other.scalar {
            return Err(MatrixError::ScalarMismatch(self.scalar, other.scalar));
        }
        Ok(())
    }

    fn mismatch(&self, other: &ExactMatrix) -> MatrixError {
        MatrixError::DimMismatch {
            left: self.shape(),
            right: other.shape(),
        }
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix, MatrixError> {
        self.zip(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<ExactMatrix, MatrixError> {
        self.zip(other, |x, y| x - y)
    }

    fn zip(
        &self,
        other: &ExactMatrix,
        f: impl Fn(&BigInt, &BigInt) -> BigInt,
    ) -> Result<ExactMatrix, MatrixError> {
        self.same_scalar(other)?;
        if self.shape() != other.shape() {
            return Err(self.mismatch(other));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| self.scalar.reduce(f(x, y)))
            .collect();
        Ok(ExactMatrix {
            entries,
            ..self.clone_shape()
        })
    }

    fn clone_shape(&self) -> ExactMatrix {
        ExactMatrix {
            scalar: self.scalar,
            rows: self.rows,
            cols: self.cols,
            entries: Vec::new(),
        }
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, MatrixError> {
        self.same_scalar(other)?;
        if self.cols != other.rows {
            return Err(self.mismatch(other));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut s = BigInt::zero();
                for k in 0..self.cols {
                    let x = self.get(i, k);
                    if !x.is_zero() {
                        s += x * other.get(k, j);
                    }
                }
                entries.push(self.scalar.reduce(s));
            }
        }
        Ok(ExactMatrix {
            scalar: self.scalar,
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    fn require_square_pair(&self, other: &ExactMatrix) -> Result<(), MatrixError> {
        self.same_scalar(other)?;
        if self.shape() != other.shape() {
            return Err(self.mismatch(other));
        }
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare);
        }
        Ok(())
    }

    pub fn is_idempotent(&self) -> bool {
        self.rows == self.cols && self.mul(self).is_ok_and(|sq| &sq == self)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row_vec(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// `x ∧ y = xy`.
pub fn mat_meet(x: &ExactMatrix, y: &ExactMatrix) -> Result<ExactMatrix, MatrixError> {
    x.require_square_pair(y)?;
    x.mul(y)
}

/// `x ∘ y = x + y − xy`.
pub fn mat_circ(x: &ExactMatrix, y: &ExactMatrix) -> Result<ExactMatrix, MatrixError> {
    x.require_square_pair(y)?;
    x.add(y)?.sub(&x.mul(y)?)
}

/// `x ∇ y`, computed as `(x ∘ y)²` and as `x + y + yx − xyx − yxy`; the two
/// must agree (they do whenever `x` and `y` are idempotent).
pub fn mat_nabla(x: &ExactMatrix, y: &ExactMatrix) -> Result<ExactMatrix, MatrixError> {
    let circ = mat_circ(x, y)?;
    let squared = circ.mul(&circ)?;
    let yx = y.mul(x)?;
    let expanded = x.add(y)?.add(&yx)?.sub(&x.mul(&yx)?)?.sub(&yx.mul(y)?)?;
    if squared != expanded {
        return Err(MatrixError::NablaFormulaMismatch);
    }
    Ok(squared)
}

pub fn is_idempotent(x: &ExactMatrix) -> bool {
    x.is_idempotent()
}

/// `x ≤ y` in the natural partial order: `xy = x = yx`.
pub fn mat_leq(x: &ExactMatrix, y: &ExactMatrix) -> Result<bool, MatrixError> {
    Ok(&x.mul(y)? == x && &y.mul(x)? == x)
}
