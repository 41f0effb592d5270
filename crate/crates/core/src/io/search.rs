//! Enumeration of closed subsets and brute-force isomorphism search.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use thiserror::Error;

use crate::algebra::{classify, verify_skew_lattice, CayleyAlgebra, Element, SkewLattice};
use crate::category::categorical_verdict;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("isomorphism search is limited to 8 elements, got {0}")]
    TooLarge(usize),
}

/// A basic property of a finite algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Atom {
    Any,
    SkewLattice,
    SkewChain,
    Rectangular,
    LeftHanded,
    RightHanded,
    Normal,
    Conormal,
    Symmetric,
    MeetDistributive,
    SandwichedDistributive,
    Categorical,
    StrictlyCategorical,
}

const ATOMS: [(&str, Atom); 13] = [
    ("any", Atom::Any),
    ("skew-lattice", Atom::SkewLattice),
    ("skew-chain", Atom::SkewChain),
    ("rectangular", Atom::Rectangular),
    ("left-handed", Atom::LeftHanded),
    ("right-handed", Atom::RightHanded),
    ("normal", Atom::Normal),
    ("conormal", Atom::Conormal),
    ("symmetric", Atom::Symmetric),
    ("meet-distributive", Atom::MeetDistributive),
    ("sandwiched-distributive", Atom::SandwichedDistributive),
    ("categorical", Atom::Categorical),
    ("strictly-categorical", Atom::StrictlyCategorical),
];

/// A conjunction of possibly negated atoms, written like
/// `strictly-categorical-and-not-normal`. `non-` is accepted for `not-`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Predicate {
    terms: Vec<(bool, Atom)>,
}

impl FromStr for Predicate {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let terms = s
            .split("-and-")
            .map(|part| {
                let (positive, name) = match part
                    .strip_prefix("not-")
                    .or_else(|| part.strip_prefix("non-"))
                {
                    Some(rest) => (false, rest),
                    None => (true, part),
                };
                ATOMS
                    .iter()
                    .find(|(n, _)| *n == name)
                    .map(|&(_, a)| (positive, a))
                    .ok_or_else(|| SearchError::UnknownPredicate(s.to_string()))
            })
            .collect::<Result<_, _>>()?;
        Ok(Predicate { terms })
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|&(pos, a)| {
                let name = ATOMS.iter().find(|(_, x)| *x == a).map_or("?", |(n, _)| n);
                if pos {
                    name.to_string()
                } else {
                    format!("not-{name}")
                }
            })
            .collect();
        f.write_str(&parts.join("-and-"))
    }
}

impl Predicate {
    /// Evaluates the predicate. Properties of skew lattices are false on
    /// algebras that are not skew lattices.
    pub fn eval(&self, alg: &CayleyAlgebra) -> bool {
        let sl = SkewLattice::new(alg.clone()).ok();
        let flags = sl.as_ref().map(|_| classify(alg));
        let verdict = sl.as_ref().and_then(|s| categorical_verdict(s).ok());
        self.terms.iter().all(|&(positive, atom)| {
            let value = match atom {
                Atom::Any => true,
                Atom::SkewLattice => verify_skew_lattice(alg).is_skew_lattice(),
                Atom::SkewChain => sl.as_ref().is_some_and(|s| s.structure().is_chain()),
                Atom::Categorical => verdict.as_ref().is_some_and(|v| v.categorical),
                Atom::StrictlyCategorical => {
                    verdict.as_ref().is_some_and(|v| v.strictly_categorical)
                }
                _ => flags.as_ref().is_some_and(|f| {
                    match atom {
                        Atom::Rectangular => &f.rectangular,
                        Atom::LeftHanded => &f.left_handed,
                        Atom::RightHanded => &f.right_handed,
                        Atom::Normal => &f.normal,
                        Atom::Conormal => &f.conormal,
                        Atom::Symmetric => &f.symmetric,
                        Atom::MeetDistributive => &f.meet_distributive,
                        _ => &f.sandwiched_distributive,
                    }
                    .holds()
                }),
            };
            value == positive
        })
    }
}

/// All closed subsets with at most `max_size` elements satisfying `pred`,
/// ordered by size and then lexicographically.
pub fn search_subalgebras(
    alg: &CayleyAlgebra,
    max_size: usize,
    pred: &Predicate,
) -> Vec<Vec<Element>> {
    let mut out = Vec::new();
    for k in 1..=max_size.min(alg.size()) {
        for subset in alg.elements().combinations(k) {
            if !alg.is_closed(&subset) {
                continue;
            }
            let sub = alg.subalgebra(&subset).expect("closed subset").algebra;
            if pred.eval(&sub) {
                out.push(subset);
            }
        }
    }
    out
}

/// A bijection `p` with `p(x ∧ y) = p(x) ∧ p(y)` and `p(x ∨ y) = p(x) ∨ p(y)`
/// from `a` onto `b`, searched over all permutations.
pub fn find_isomorphism(
    a: &CayleyAlgebra,
    b: &CayleyAlgebra,
) -> Result<Option<Vec<Element>>, SearchError> {
    let n = a.size();
    if n > 8 {
        return Err(SearchError::TooLarge(n));
    }
    if b.size() != n {
        return Ok(None);
    }
    Ok((0..n).permutations(n).find(|p| {
        (0..n).all(|x| {
            (0..n).all(|y| {
                p[a.meet(x, y)] == b.meet(p[x], p[y]) && p[a.join(x, y)] == b.join(p[x], p[y])
            })
        })
    }))
}
