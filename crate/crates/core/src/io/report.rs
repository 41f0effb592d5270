//! Plain `key: value` summaries of an algebra.

use std::fmt;

use crate::algebra::{classify, verify_skew_lattice, CayleyAlgebra, Element, SkewLattice};
use crate::category::{categorical_verdict, NonStrictWitness, PartialBijection};

/// Ordered `key: value` lines. `valid` is false when the input is not a
/// skew lattice or an internal cross-check failed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Report {
    lines: Vec<(String, String)>,
    valid: bool,
}

impl Report {
    pub fn push(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.lines.push((key.into(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn lines(&self) -> &[(String, String)] {
        &self.lines
    }

    pub fn is_valid(&self) -> bool {
        self.valid
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.lines {
            writeln!(f, "{k}: {v}")?;
        }
        Ok(())
    }
}

/// Space-separated labels.
pub fn tuple(alg: &CayleyAlgebra, xs: &[Element]) -> String {
    xs.iter()
        .map(|&x| alg.label(x).into_owned())
        .collect::<Vec<_>>()
        .join(" ")
}

/// `{x,y,...}` by label.
pub fn set(alg: &CayleyAlgebra, xs: &[Element]) -> String {
    let inner: Vec<String> = xs.iter().map(|&x| alg.label(x).into_owned()).collect();
    format!("{{{}}}", inner.join(","))
}

/// `{x->y,...}` by label.
pub fn graph(alg: &CayleyAlgebra, g: &[(Element, Element)]) -> String {
    let inner: Vec<String> = g
        .iter()
        .map(|&(x, y)| format!("{}->{}", alg.label(x), alg.label(y)))
        .collect();
    format!("{{{}}}", inner.join(","))
}

fn push_check(r: &mut Report, alg: &CayleyAlgebra, key: &str, witness: Option<&[Element]>) {
    r.push(key, witness.is_none());
    if let Some(w) = witness {
        r.push(format!("{key}_witness"), tuple(alg, w));
    }
}

/// Verification, classification, `D`-structure and categorical verdicts.
pub fn report(alg: &CayleyAlgebra) -> Report {
    let mut r = Report::default();
    r.push("size", alg.size());
    let verification = verify_skew_lattice(alg);
    for (law, check) in verification.iter() {
        push_check(&mut r, alg, law.key(), check.witness());
    }
    r.push("skew_lattice", verification.is_skew_lattice());
    let sl = match SkewLattice::new(alg.clone()) {
        Ok(sl) => sl,
        Err(e) => {
            if verification.is_skew_lattice() {
                r.push("error", e);
            }
            return r;
        }
    };
    for (key, check) in classify(alg).entries() {
        push_check(&mut r, alg, key, check.witness());
    }
    let s = sl.structure();
    r.push("d_class_count", s.class_count());
    let classes: Vec<String> = s.classes().iter().map(|c| set(alg, c)).collect();
    r.push("d_classes", classes.join(" "));
    r.push("skew_chain", s.is_chain());
    r.push(
        "lattice_reflection_distributive",
        s.quotient_is_distributive(),
    );
    match categorical_verdict(&sl) {
        Ok(v) => {
            r.push("categorical", v.categorical);
            if let Some(w) = &v.non_categorical {
                r.push(
                    "categorical_witness",
                    format!(
                        "phi={} psi={} composite={} chi={}",
                        graph(alg, &w.phi.graph),
                        graph(alg, &w.psi.graph),
                        graph(alg, &w.composite.graph),
                        graph(alg, &w.chi.graph)
                    ),
                );
            }
            r.push("strictly_categorical", v.strictly_categorical);
            if let Some(w) = &v.non_strict {
                r.push("strictly_categorical_witness", non_strict(alg, w));
            }
            r.valid = true;
        }
        Err(e) => r.push("error", e),
    }
    r
}

pub fn non_strict(alg: &CayleyAlgebra, w: &NonStrictWitness) -> String {
    let l = |x: Element| alg.label(x).into_owned();
    match w {
        NonStrictWitness::Midpoints { a, b, b2, c } => {
            format!("a={} b={} b'={} c={}", l(*a), l(*b), l(*b2), l(*c))
        }
        NonStrictWitness::EmptyComposite { phi, psi } => format!(
            "phi={} psi={} composite={{}}",
            graph(alg, &phi.graph),
            graph(alg, &psi.graph)
        ),
        NonStrictWitness::DisjointCosets { b, b2 } => format!("b={} b'={}", l(*b), l(*b2)),
        NonStrictWitness::NotCategorical => "not categorical".into(),
    }
}

pub fn morphism(alg: &CayleyAlgebra, m: &PartialBijection) -> String {
    format!("{}->{} {}", m.source, m.target, graph(alg, &m.graph))
}
