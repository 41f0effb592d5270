//! Built-in example algebras and their canonical file text.

use crate::algebra::CayleyAlgebra;
use crate::io::format::{serialize_algebra, serialize_matrices, MatrixFile};
use crate::matrix::{example19_generators, example20_generators, ScalarSpec};

/// Names accepted by [`fixture_text`].
pub const FIXTURE_NAMES: [&str; 5] = ["fig1", "fig3", "x2", "example19", "example20"];

/// A right-handed skew chain `{1} > {2, 3} > {0}` with `1` on top and `0`
/// at the bottom. Indices coincide with element names.
pub fn fig1() -> CayleyAlgebra {
    CayleyAlgebra::new(
        vec![
            vec![0, 0, 0, 0],
            vec![0, 1, 2, 3],
            vec![0, 2, 2, 3],
            vec![0, 3, 2, 3],
        ],
        vec![
            vec![0, 1, 2, 3],
            vec![1, 1, 1, 1],
            vec![2, 1, 2, 2],
            vec![3, 1, 3, 3],
        ],
    )
    .expect("fig1 tables are well formed")
}

/// A left-handed, non-categorical skew chain
/// `{0, 4} > {1, 3, 6, 7} > {2, 5} > {8}`.
pub fn fig3() -> CayleyAlgebra {
    CayleyAlgebra::new(
        vec![
            vec![0, 3, 2, 3, 0, 2, 6, 6, 8],
            vec![1, 1, 5, 1, 1, 5, 1, 1, 8],
            vec![2, 2, 2, 2, 2, 2, 2, 2, 8],
            vec![3, 3, 2, 3, 3, 2, 3, 3, 8],
            vec![4, 1, 5, 1, 4, 5, 7, 7, 8],
            vec![5, 5, 5, 5, 5, 5, 5, 5, 8],
            vec![6, 6, 2, 6, 6, 2, 6, 6, 8],
            vec![7, 7, 5, 7, 7, 5, 7, 7, 8],
            vec![8, 8, 8, 8, 8, 8, 8, 8, 8],
        ],
        vec![
            vec![0, 4, 0, 0, 4, 4, 0, 4, 0],
            vec![0, 1, 6, 3, 4, 1, 6, 7, 1],
            vec![0, 1, 2, 3, 4, 5, 6, 7, 2],
            vec![0, 1, 3, 3, 4, 7, 6, 7, 3],
            vec![0, 4, 0, 0, 4, 4, 0, 4, 4],
            vec![0, 1, 2, 3, 4, 5, 6, 7, 5],
            vec![0, 1, 6, 3, 4, 1, 6, 7, 6],
            vec![0, 1, 3, 3, 4, 7, 6, 7, 7],
            vec![0, 1, 2, 3, 4, 5, 6, 7, 8],
        ],
    )
    .expect("fig3 tables are well formed")
}

/// [`fig3`] without its bottom element `8`.
pub fn x2() -> CayleyAlgebra {
    fig3()
        .subalgebra(&[0, 1, 2, 3, 4, 5, 6, 7])
        .expect("{0..7} is closed in fig3")
        .algebra
}

/// The three-element chain `{1} > {2, 3}` inside [`fig1`].
pub fn ex13() -> CayleyAlgebra {
    fig1()
        .subalgebra(&[1, 2, 3])
        .expect("{1, 2, 3} is closed in fig1")
        .algebra
}

/// Canonical file contents of a named fixture.
pub fn fixture_text(name: &str) -> Option<String> {
    let matrices = |gens: Vec<(String, crate::matrix::ExactMatrix)>| {
        serialize_matrices(&MatrixFile {
            scalar: ScalarSpec::Integers,
            dim: 4,
            matrices: gens,
        })
    };
    Some(match name {
        "fig1" => serialize_algebra(&fig1()),
        "fig3" => serialize_algebra(&fig3()),
        "x2" => serialize_algebra(&x2()),
        "example19" => matrices(example19_generators(ScalarSpec::Integers)),
        "example20" => matrices(example20_generators(ScalarSpec::Integers)),
        _ => return None,
    })
}
