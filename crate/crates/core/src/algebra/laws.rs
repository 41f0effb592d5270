use std::fmt;

use super::{AlgebraError, CayleyAlgebra, Check, Element, Op};

/// The eight defining laws of a skew lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    /// `x ∧ x = x`
    MeetIdempotent,
    /// `x ∨ x = x`
    JoinIdempotent,
    /// `(x ∧ y) ∧ z = x ∧ (y ∧ z)`
    MeetAssociative,
    /// `(x ∨ y) ∨ z = x ∨ (y ∨ z)`
    JoinAssociative,
    /// `x ∧ (x ∨ y) = x`
    MeetAbsorbsLeft,
    /// `(y ∨ x) ∧ x = x`
    MeetAbsorbsRight,
    /// `x ∨ (x ∧ y) = x`
    JoinAbsorbsLeft,
    /// `(y ∧ x) ∨ x = x`
    JoinAbsorbsRight,
}

impl Law {
    pub const ALL: [Law; 8] = [
        Law::MeetIdempotent,
        Law::JoinIdempotent,
        Law::MeetAssociative,
        Law::JoinAssociative,
        Law::MeetAbsorbsLeft,
        Law::MeetAbsorbsRight,
        Law::JoinAbsorbsLeft,
        Law::JoinAbsorbsRight,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Law::MeetIdempotent => "meet_idempotent",
            Law::JoinIdempotent => "join_idempotent",
            Law::MeetAssociative => "meet_associative",
            Law::JoinAssociative => "join_associative",
            Law::MeetAbsorbsLeft => "absorption_meet_left",
            Law::MeetAbsorbsRight => "absorption_meet_right",
            Law::JoinAbsorbsLeft => "absorption_join_left",
            Law::JoinAbsorbsRight => "absorption_join_right",
        }
    }

    /// Whether the law holds at `t` (only the first `arity` coordinates are used).
    pub fn holds_at(self, alg: &CayleyAlgebra, t: &[Element]) -> bool {
        let m = |x, y| alg.meet(x, y);
        let j = |x, y| alg.join(x, y);
        match self {
            Law::MeetIdempotent => m(t[0], t[0]) == t[0],
            Law::JoinIdempotent => j(t[0], t[0]) == t[0],
            Law::MeetAssociative => m(m(t[0], t[1]), t[2]) == m(t[0], m(t[1], t[2])),
            Law::JoinAssociative => j(j(t[0], t[1]), t[2]) == j(t[0], j(t[1], t[2])),
            Law::MeetAbsorbsLeft => m(t[0], j(t[0], t[1])) == t[0],
            Law::MeetAbsorbsRight => m(j(t[1], t[0]), t[0]) == t[0],
            Law::JoinAbsorbsLeft => j(t[0], m(t[0], t[1])) == t[0],
            Law::JoinAbsorbsRight => j(m(t[1], t[0]), t[0]) == t[0],
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Law::MeetIdempotent | Law::JoinIdempotent => 1,
            Law::MeetAssociative | Law::JoinAssociative => 3,
            _ => 2,
        }
    }

    fn check(self, alg: &CayleyAlgebra) -> Check {
        let n = alg.size();
        match self.arity() {
            1 => Check::exhaustive::<1>(n, |t| self.holds_at(alg, &t)),
            2 => Check::exhaustive::<2>(n, |t| self.holds_at(alg, &t)),
            _ => Check::exhaustive::<3>(n, |t| self.holds_at(alg, &t)),
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// Result of checking all eight skew lattice laws.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    checks: Vec<(Law, Check)>,
}

impl VerificationReport {
    pub fn check(&self, law: Law) -> &Check {
        &self
            .checks
            .iter()
            .find(|(l, _)| *l == law)
            .expect("every law is checked")
            .1
    }

    pub fn holds(&self, law: Law) -> bool {
        self.check(law).holds()
    }

    pub fn witness(&self, law: Law) -> Option<&[Element]> {
        self.check(law).witness()
    }

    pub fn is_skew_lattice(&self) -> bool {
        self.checks.iter().all(|(_, c)| c.holds())
    }

    pub fn iter(&self) -> impl Iterator<Item = (Law, &Check)> {
        self.checks.iter().map(|(l, c)| (*l, c))
    }

    pub fn failures(&self) -> impl Iterator<Item = (Law, &[Element])> {
        self.checks
            .iter()
            .filter_map(|(l, c)| c.witness().map(|w| (*l, w)))
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed: Vec<String> = self
            .failures()
            .map(|(l, w)| format!("{l} fails at {w:?}"))
            .collect();
        if failed.is_empty() {
            f.write_str("all laws hold")
        } else {
            f.write_str(&failed.join("; "))
        }
    }
}

/// Checks idempotency, associativity and the four absorption laws by
/// exhaustive enumeration.
pub fn verify_skew_lattice(alg: &CayleyAlgebra) -> VerificationReport {
    VerificationReport {
        checks: Law::ALL.iter().map(|&l| (l, l.check(alg))).collect(),
    }
}

/// Band identities of one reduct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandProperties {
    /// `xyxzx = xyzx`
    pub regular: Check,
    /// `xyzw = xzyw`
    pub normal: Check,
    /// `xyx = x`
    pub rectangular: Check,
}

fn is_band(alg: &CayleyAlgebra, op: Op) -> Check {
    let n = alg.size();
    Check::exhaustive::<1>(n, |[x]| alg.apply(op, x, x) == x)
        .and(Check::exhaustive::<3>(n, |[x, y, z]| {
            alg.apply(op, alg.apply(op, x, y), z) == alg.apply(op, x, alg.apply(op, y, z))
        }))
}

fn regular(alg: &CayleyAlgebra, op: Op) -> Check {
    Check::exhaustive::<3>(alg.size(), |[x, y, z]| {
        alg.fold(op, &[x, y, x, z, x]) == alg.fold(op, &[x, y, z, x])
    })
}

fn normal(alg: &CayleyAlgebra, op: Op) -> Check {
    Check::exhaustive::<4>(alg.size(), |[x, y, z, w]| {
        alg.fold(op, &[x, y, z, w]) == alg.fold(op, &[x, z, y, w])
    })
}

fn rectangular(alg: &CayleyAlgebra, op: Op) -> Check {
    Check::exhaustive::<2>(alg.size(), |[x, y]| alg.sandwich(op, x, y) == x)
}

/// Regularity, normality and rectangularity of the `which` reduct, which
/// must be a band.
pub fn band_properties(alg: &CayleyAlgebra, which: Op) -> Result<BandProperties, AlgebraError> {
    if let Some(w) = is_band(alg, which).witness() {
        return Err(AlgebraError::NotABand {
            op: which,
            witness: w.to_vec(),
        });
    }
    Ok(BandProperties {
        regular: regular(alg, which),
        normal: normal(alg, which),
        rectangular: rectangular(alg, which),
    })
}

/// Variety membership of a skew lattice, one [`Check`] per predicate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationFlags {
    /// `x ∧ y ∧ x = x`
    pub rectangular: Check,
    /// `L = D`; witness `(x, y)` with `x D y` but not `x L y`.
    pub left_handed: Check,
    /// `R = D`; witness as for `left_handed`.
    pub right_handed: Check,
    /// `(S, ∧)` is a normal band.
    pub normal: Check,
    /// `(S, ∨)` is a normal band.
    pub conormal: Check,
    /// `x ∧ y = y ∧ x` iff `x ∨ y = y ∨ x`.
    pub symmetric: Check,
    pub regular_meet_band: Check,
    pub regular_join_band: Check,
    /// `x∧(y∨z) = (x∧y)∨(x∧z)` and `(y∨z)∧x = (y∧x)∨(z∧x)`.
    pub meet_distributive: Check,
    /// `x∧(y∨z)∧x = (x∧y∧x)∨(x∧z∧x)` and `x∨(y∧z)∨x = (x∨y∨x)∧(x∨z∨x)`.
    pub sandwiched_distributive: Check,
}

impl ClassificationFlags {
    /// `(key, check)` pairs in a fixed order.
    pub fn entries(&self) -> [(&'static str, &Check); 10] {
        [
            ("rectangular", &self.rectangular),
            ("left_handed", &self.left_handed),
            ("right_handed", &self.right_handed),
            ("normal", &self.normal),
            ("conormal", &self.conormal),
            ("symmetric", &self.symmetric),
            ("regular_meet_band", &self.regular_meet_band),
            ("regular_join_band", &self.regular_join_band),
            ("meet_distributive", &self.meet_distributive),
            ("sandwiched_distributive", &self.sandwiched_distributive),
        ]
    }
}

pub fn classify(alg: &CayleyAlgebra) -> ClassificationFlags {
    let n = alg.size();
    let m = |x, y| alg.meet(x, y);
    let j = |x, y| alg.join(x, y);
    let d = |x, y| alg.natural_preceq(x, y) && alg.natural_preceq(y, x);
    ClassificationFlags {
        rectangular: rectangular(alg, Op::Meet),
        left_handed: Check::exhaustive::<2>(n, |[x, y]| !d(x, y) || (m(x, y) == x && m(y, x) == y)),
        right_handed: Check::exhaustive::<2>(n, |[x, y]| {
            !d(x, y) || (m(x, y) == y && m(y, x) == x)
        }),
        normal: normal(alg, Op::Meet),
        conormal: normal(alg, Op::Join),
        symmetric: Check::exhaustive::<2>(n, |[x, y]| (m(x, y) == m(y, x)) == (j(x, y) == j(y, x))),
        regular_meet_band: regular(alg, Op::Meet),
        regular_join_band: regular(alg, Op::Join),
        meet_distributive: Check::exhaustive::<3>(n, |[x, y, z]| {
            m(x, j(y, z)) == j(m(x, y), m(x, z)) && m(j(y, z), x) == j(m(y, x), m(z, x))
        }),
        sandwiched_distributive: Check::exhaustive::<3>(n, |[x, y, z]| {
            let ms = |u| alg.sandwich(Op::Meet, x, u);
            let js = |u| alg.sandwich(Op::Join, x, u);
            ms(j(y, z)) == j(ms(y), ms(z)) && js(m(y, z)) == m(js(y), js(z))
        }),
    }
}

/// The identity `x ∧ y = y ∨ x`, cross-checked against rectangularity.
pub fn rectangular_identity_check(alg: &CayleyAlgebra) -> Result<Check, AlgebraError> {
    let identity = Check::exhaustive::<2>(alg.size(), |[x, y]| alg.meet(x, y) == alg.join(y, x));
    let rect = rectangular(alg, Op::Meet);
    if identity.holds() != rect.holds() {
        return Err(AlgebraError::CriteriaDisagree(format!(
            "x∧y = y∨x gives {} but rectangularity gives {}",
            identity.holds(),
            rect.holds()
        )));
    }
    Ok(identity)
}
