//! Text formats, DOT export, reports, fixtures and subalgebra search.

pub mod dot;
pub mod fixtures;
pub mod format;
pub mod report;
pub mod search;

pub use dot::export_dot;
pub use format::{
    parse_algebra, parse_matrices, serialize_algebra, serialize_matrices, FormatError, MatrixFile,
};
pub use report::{report, Report};
pub use search::{find_isomorphism, search_subalgebras, Predicate, SearchError};
