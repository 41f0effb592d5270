//! Admissible Hasse diagrams in Graphviz DOT.

use std::fmt::Write as _;

use crate::algebra::SkewLattice;

/// Solid edges `y -> x` for every cover `x > y` of the natural partial
/// order, dashed undirected edges between `D`-equivalent elements. Output
/// is in ascending index order and therefore stable.
pub fn export_dot(sl: &SkewLattice) -> String {
    let n = sl.size();
    let mut s = String::from("digraph skewlattice {\n  rankdir=BT;\n");
    for x in 0..n {
        let label = sl.label(x).replace('\\', "\\\\").replace('"', "\\\"");
        let _ = writeln!(s, "  {x} [label=\"{label}\"];");
    }
    for y in 0..n {
        for x in 0..n {
            if sl.natural_lt(y, x) && !(0..n).any(|z| sl.natural_lt(y, z) && sl.natural_lt(z, x)) {
                let _ = writeln!(s, "  {y} -> {x};");
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if sl.class_of(i) == sl.class_of(j) {
                let _ = writeln!(s, "  {i} -> {j} [dir=none, style=dashed];");
            }
        }
    }
    s.push_str("}\n");
    s
}
