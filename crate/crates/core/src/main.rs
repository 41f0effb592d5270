use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use skewlat::algebra::{verify_skew_lattice, ClassOrder};
use skewlat::category::{
    associativity_audit, build_coset_category, categorical_verdict, CategoryError,
};
use skewlat::coset::{coset_bijections, coset_partition, image_set};
use skewlat::io::report::{graph, morphism, non_strict, set};
use skewlat::io::{
    export_dot, fixtures, parse_algebra, parse_matrices, report, search_subalgebras,
    serialize_algebra, Predicate,
};
use skewlat::matrix::{closure_named, MatrixError};
use skewlat::{CayleyAlgebra, ClassId, SkewLattice};

#[derive(Parser)]
#[command(
    name = "skewlat",
    version,
    about = "Finite skew lattices from Cayley tables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the skew lattice laws.
    Check { file: PathBuf },
    /// Full report: laws, variety flags, D-classes, categorical verdicts.
    Classify { file: PathBuf },
    /// D-classes and their order.
    Dclasses { file: PathBuf },
    /// Cosets and coset bijections between two comparable D-classes.
    Cosets {
        file: PathBuf,
        #[arg(long)]
        upper: usize,
        #[arg(long)]
        lower: usize,
    },
    /// Categorical verdicts and, when it exists, the coset category.
    Category {
        file: PathBuf,
        /// Also list triples where the × product is not associative.
        #[arg(long)]
        audit_assoc: bool,
    },
    /// Admissible Hasse diagram in DOT.
    Dot { file: PathBuf },
    /// Restrict to a closed subset, printed as an algebra file.
    Sub {
        file: PathBuf,
        /// Comma-separated element indices.
        #[arg(long, value_delimiter = ',', required = true)]
        elements: Vec<usize>,
    },
    /// Closed subsets satisfying a predicate such as `not-normal`.
    Search {
        file: PathBuf,
        #[arg(long)]
        max: usize,
        #[arg(long)]
        pred: Predicate,
    },
    /// Print a built-in fixture file.
    Fixture { name: String },
    /// Close a set of idempotent matrices under · and ∇.
    Closure {
        file: PathBuf,
        #[arg(long, default_value_t = skewlat::matrix::DEFAULT_CAP)]
        cap: usize,
    },
}

/// Exit status 1: a checked property fails. Exit status 2: bad input.
enum Failure {
    Property(String),
    Input(String),
}

type Outcome = Result<String, Failure>;

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &PathBuf) -> Result<CayleyAlgebra, Failure> {
    parse_algebra(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_skew(path: &PathBuf) -> Result<SkewLattice, Failure> {
    let alg = load(path)?;
    let verification = verify_skew_lattice(&alg);
    if !verification.is_skew_lattice() {
        return Err(Failure::Property(format!(
            "not a skew lattice\n{verification}"
        )));
    }
    SkewLattice::new(alg).map_err(|e| Failure::Property(e.to_string()))
}

fn class_arg(sl: &SkewLattice, i: usize) -> Result<ClassId, Failure> {
    if i < sl.structure().class_count() {
        Ok(ClassId(i))
    } else {
        Err(Failure::Input(format!(
            "class index {i} out of range 0..{}",
            sl.structure().class_count()
        )))
    }
}

fn check(file: &PathBuf) -> Outcome {
    let alg = load(file)?;
    let v = verify_skew_lattice(&alg);
    let mut out = String::new();
    for (law, c) in v.iter() {
        let _ = writeln!(out, "{}: {}", law.key(), c.holds());
        if let Some(w) = c.witness() {
            let _ = writeln!(
                out,
                "{}_witness: {}",
                law.key(),
                skewlat::io::report::tuple(&alg, w)
            );
        }
    }
    let _ = writeln!(out, "skew_lattice: {}", v.is_skew_lattice());
    if v.is_skew_lattice() {
        Ok(out)
    } else {
        Err(Failure::Property(out))
    }
}

fn classify(file: &PathBuf) -> Outcome {
    let r = report(&load(file)?);
    if r.is_valid() {
        Ok(r.to_string())
    } else {
        Err(Failure::Property(r.to_string()))
    }
}

fn dclasses(file: &PathBuf) -> Outcome {
    let sl = load_skew(file)?;
    let s = sl.structure();
    let mut out = String::new();
    for id in s.class_ids() {
        let _ = writeln!(out, "{id}: {}", set(&sl, s.class(id)));
    }
    for a in s.class_ids() {
        for b in s.class_ids() {
            if s.compare(a, b) == ClassOrder::Above {
                let _ = writeln!(out, "{a} > {b}");
            }
        }
    }
    let _ = writeln!(out, "skew_chain: {}", s.is_chain());
    Ok(out)
}

fn cosets(file: &PathBuf, upper: usize, lower: usize) -> Outcome {
    let sl = load_skew(file)?;
    let (a, b) = (class_arg(&sl, upper)?, class_arg(&sl, lower)?);
    let input = |e: skewlat::coset::CosetError| Failure::Input(e.to_string());
    let p = coset_partition(&sl, a, b).map_err(input)?;
    let mut out = String::new();
    let _ = writeln!(out, "upper: {a} {}", set(&sl, sl.class(a)));
    let _ = writeln!(out, "lower: {b} {}", set(&sl, sl.class(b)));
    for c in &p.down_cosets {
        let _ = writeln!(out, "down_coset: {}", set(&sl, c));
    }
    for c in &p.up_cosets {
        let _ = writeln!(out, "up_coset: {}", set(&sl, c));
    }
    for &x in sl.class(a) {
        let img = image_set(&sl, x, b).map_err(input)?;
        let _ = writeln!(out, "image_set {}: {}", sl.label(x), set(&sl, &img.members));
    }
    for phi in coset_bijections(&sl, a, b).map_err(input)? {
        let _ = writeln!(out, "bijection: {}", graph(&sl, &phi.graph));
    }
    Ok(out)
}

fn category(file: &PathBuf, audit: bool) -> Outcome {
    let sl = load_skew(file)?;
    let internal = |e: CategoryError| Failure::Property(e.to_string());
    let v = categorical_verdict(&sl).map_err(internal)?;
    let mut out = String::new();
    let _ = writeln!(out, "categorical: {}", v.categorical);
    if let Some(w) = &v.non_categorical {
        let _ = writeln!(
            out,
            "categorical_witness: phi={} psi={} composite={} chi={}",
            graph(&sl, &w.phi.graph),
            graph(&sl, &w.psi.graph),
            graph(&sl, &w.composite.graph),
            graph(&sl, &w.chi.graph)
        );
    }
    let _ = writeln!(out, "strictly_categorical: {}", v.strictly_categorical);
    if let Some(w) = &v.non_strict {
        let _ = writeln!(out, "strictly_categorical_witness: {}", non_strict(&sl, w));
    }
    if v.categorical {
        let cat = build_coset_category(&sl).map_err(internal)?;
        let _ = writeln!(out, "objects: {}", cat.objects().len());
        for ((a, b), n) in cat.hom_sizes() {
            let _ = writeln!(out, "hom {a} {b}: {n}");
        }
        for i in 0..cat.morphism_count() {
            let m = cat.morphism(skewlat::category::MorphismId(i));
            let _ = writeln!(out, "morphism: {}", morphism(&sl, m));
        }
    }
    if audit {
        let a = associativity_audit(&sl).map_err(internal)?;
        let _ = writeln!(out, "audit_witnesses: {}", a.witnesses.len());
        for w in &a.witnesses {
            let _ = writeln!(
                out,
                "audit: delta={} psi={} phi={} left={} right={}",
                graph(&sl, &w.delta.graph),
                graph(&sl, &w.psi.graph),
                graph(&sl, &w.phi.graph),
                graph(&sl, w.left.graph()),
                graph(&sl, w.right.graph())
            );
        }
    }
    Ok(out)
}

fn sub(file: &PathBuf, elements: &[usize]) -> Outcome {
    let alg = load(file)?;
    if let Some(&x) = elements.iter().find(|&&x| x >= alg.size()) {
        return Err(Failure::Input(format!(
            "element {x} out of range 0..{}",
            alg.size()
        )));
    }
    alg.subalgebra(elements)
        .map(|s| serialize_algebra(&s.algebra))
        .map_err(|e| Failure::Property(e.to_string()))
}

fn search(file: &PathBuf, max: usize, pred: &Predicate) -> Outcome {
    let alg = load(file)?;
    let mut out = String::new();
    for s in search_subalgebras(&alg, max, pred) {
        let cells: Vec<String> = s.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
    Ok(out)
}

fn fixture(name: &str) -> Outcome {
    fixtures::fixture_text(name).ok_or_else(|| {
        Failure::Input(format!(
            "unknown fixture {name}; expected one of {}",
            fixtures::FIXTURE_NAMES.join(", ")
        ))
    })
}

fn closure(file: &PathBuf, cap: usize) -> Outcome {
    let text = read(file)?;
    let mf =
        parse_matrices(&text).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    let lattice = closure_named(&mf.matrices, cap).map_err(|e| match e {
        MatrixError::ScalarMismatch(..) | MatrixError::DimMismatch { .. } => {
            Failure::Input(e.to_string())
        }
        e => Failure::Property(e.to_string()),
    })?;
    let mut out = format!(
        "# elements: {}\n# circ_equals_nabla: {}\n",
        lattice.len(),
        lattice.circ_equals_nabla()
    );
    for (i, m) in lattice.elements().iter().enumerate() {
        let _ = writeln!(out, "# {}:", lattice.algebra().label(i));
        for line in m.to_string().lines() {
            let _ = writeln!(out, "#   {line}");
        }
    }
    out.push_str(&serialize_algebra(lattice.algebra()));
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Check { file } => check(file),
        Command::Classify { file } => classify(file),
        Command::Dclasses { file } => dclasses(file),
        Command::Cosets { file, upper, lower } => cosets(file, *upper, *lower),
        Command::Category { file, audit_assoc } => category(file, *audit_assoc),
        Command::Dot { file } => load_skew(file).map(|sl| export_dot(&sl)),
        Command::Sub { file, elements } => sub(file, elements),
        Command::Search { file, max, pred } => search(file, *max, pred),
        Command::Fixture { name } => fixture(name),
        Command::Closure { file, cap } => closure(file, *cap),
    };
    match outcome {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Property(msg)) => {
            print!("{msg}");
            if !msg.ends_with('\n') {
                println!();
            }
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
