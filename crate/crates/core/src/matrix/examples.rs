use super::{closure_named, ExactMatrix, MatrixError, MatrixSkewLattice, ScalarSpec, DEFAULT_CAP};

fn diag(scalar: ScalarSpec, d: [i64; 4]) -> ExactMatrix {
    let rows: Vec<Vec<i64>> = (0..4)
        .map(|i| (0..4).map(|j| if i == j { d[i] } else { 0 }).collect())
        .collect();
    ExactMatrix::from_rows(scalar, &rows).expect("square rows")
}

/// The 4×4 chain `a > b, b′ > c`: `a`, `b`, `c` diagonal and `b′` equal to
/// `b` plus a single 1 at row 2, column 3.
pub fn example19_generators(scalar: ScalarSpec) -> Vec<(String, ExactMatrix)> {
    let a = diag(scalar, [1, 1, 1, 0]);
    let b = diag(scalar, [1, 1, 0, 0]);
    let mut b2 = b.clone();
    b2.set(1, 2, 1.into());
    let c = diag(scalar, [1, 0, 0, 0]);
    vec![
        ("a".into(), a),
        ("b".into(), b),
        ("b'".into(), b2),
        ("c".into(), c),
    ]
}

/// `{a, b, b′}` from [`example19_generators`].
pub fn example20_generators(scalar: ScalarSpec) -> Vec<(String, ExactMatrix)> {
    let mut g = example19_generators(scalar);
    g.truncate(3);
    g
}

/// Closure of [`example19_generators`]; the generators are indices 0..4.
pub fn example19(scalar: ScalarSpec) -> Result<MatrixSkewLattice, MatrixError> {
    closure_named(&example19_generators(scalar), DEFAULT_CAP)
}

/// Closure of [`example20_generators`]; the generators are indices 0..3.
pub fn example20(scalar: ScalarSpec) -> Result<MatrixSkewLattice, MatrixError> {
    closure_named(&example20_generators(scalar), DEFAULT_CAP)
}
