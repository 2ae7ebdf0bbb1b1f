//! Command-line front end for the ortholab library.
//!
//! Exit codes: 0 success or property holds, 1 property fails, 2 input error,
//! 3 resource cap exceeded.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use ortholab::enumeration::{
    counterexample_search, enumerate, is_isomorphic, AlgebraClass, SearchGoal,
};
use ortholab::io::{fixture_names, fixture_text, parse_algebra_with, serialize_algebra};
use ortholab::orthospace::{
    associated_orthospace, blocks, cl_algebra, enumerate_orthoclosed, is_dacey, is_normal,
    OrthoSpace,
};
use ortholab::sasaki::{
    center, commutes, has_full_sasaki_set, is_sasaki_space, sasaki_maps, sasaki_projection,
};
use ortholab::theorems::{run_all, run_check};
use ortholab::{check_axiom, CheckResult, ElementId, Error, FiniteAlgebra, Limits};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "ortholab",
    version,
    about = "Finite implication algebras, orthogonality spaces and Sasaki maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a document and check the BE axioms.
    Validate { file: String },
    /// Report class membership.
    Classify {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Print a derived operation or order as a full table.
    Derive {
        file: String,
        #[arg(long, value_enum)]
        op: DerivedOp,
    },
    /// Reports on the orthogonality space of nonzero elements.
    Ortho {
        file: String,
        /// Closed sets and their arrow table.
        #[arg(long)]
        cl: bool,
        #[arg(long)]
        dacey: bool,
        #[arg(long)]
        blocks: bool,
        #[arg(long)]
        normal: bool,
        #[arg(long)]
        sasaki_space: bool,
        #[arg(long)]
        json: bool,
    },
    /// Sasaki projections, commutation, center and full Sasaki sets.
    Sasaki {
        file: String,
        #[arg(long)]
        projections: bool,
        #[arg(long)]
        commute: bool,
        #[arg(long)]
        center: bool,
        #[arg(long)]
        full_set: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run the theorem registry; exit 0 iff nothing fails.
    Theorems {
        file: String,
        /// Check ids to run; all when absent.
        #[arg(long, num_args = 1..)]
        filter: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Stream every algebra of a class and size, one document per line.
    Enumerate {
        #[arg(long)]
        size: usize,
        #[arg(long, value_parser = parse_class)]
        class: AlgebraClass,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        count_only: bool,
    },
    /// Print an isomorphism or "non-isomorphic".
    Iso { file1: String, file2: String },
    /// Print a built-in document.
    Fixture { name: String },
    /// Smallest algebra satisfying every required axiom and violating every
    /// forbidden one.
    Search {
        #[arg(long, value_delimiter = ',')]
        require: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        forbid: Vec<String>,
        #[arg(long)]
        max_size: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum DerivedOp {
    Star,
    Arrow,
    WedgeQ,
    VeeQ,
    WedgeP,
    VeeP,
    Le,
    LeL,
    LeQ,
}

fn parse_class(s: &str) -> std::result::Result<AlgebraClass, String> {
    AlgebraClass::parse(s).map_err(|e| e.to_string())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Holds,
    Fails,
}

impl Outcome {
    fn from_checks<'a>(results: impl IntoIterator<Item = &'a CheckResult>) -> Self {
        if results.into_iter().any(CheckResult::failed) {
            Outcome::Fails
        } else {
            Outcome::Holds
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits::from_env();
    match run(cli.command, &limits) {
        Ok(Outcome::Holds) => ExitCode::SUCCESS,
        Ok(Outcome::Fails) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::ResourceCap(_) | Error::TooLarge { .. }) => 3,
        _ => 2,
    }
}

/// `-` reads standard input.
fn load(path: &str, limits: &Limits) -> Result<FiniteAlgebra> {
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading standard input")?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))?
    };
    let source = if path == "-" { "standard input" } else { path };
    parse_algebra_with(&text, limits).map_err(|e| anyhow::Error::new(e).context(source.to_string()))
}

fn print_json(v: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("json value serializes")
    );
}

fn run(command: Command, limits: &Limits) -> Result<Outcome> {
    match command {
        Command::Validate { file } => validate(&load(&file, limits)?),
        Command::Classify { file, json } => {
            let alg = load(&file, limits)?;
            let label = alg.classify();
            if json {
                let mut v = serde_json::to_value(label)?;
                v["class"] = json!(label.class_name());
                print_json(&v);
            } else {
                println!("class: {}", label.class_name());
                for (flag, value) in [
                    ("BE", label.is_be),
                    ("bounded", label.is_bounded),
                    ("involutive", label.is_involutive),
                    ("i-OL", label.is_iol),
                    ("i-OML", label.is_ioml),
                    ("i-Boolean", label.is_iboolean),
                    ("distributive", label.is_distributive),
                ] {
                    println!("{flag:<13} {}", if value { "yes" } else { "no" });
                }
            }
            Ok(Outcome::Holds)
        }
        Command::Derive { file, op } => {
            derive(&load(&file, limits)?, op);
            Ok(Outcome::Holds)
        }
        Command::Ortho {
            file,
            cl,
            dacey,
            blocks,
            normal,
            sasaki_space,
            json,
        } => {
            let alg = load(&file, limits)?;
            let space = associated_orthospace(&alg)?;
            let flags = OrthoFlags {
                cl,
                dacey,
                blocks,
                normal,
                sasaki_space,
            };
            ortho(&space, flags, json, limits)
        }
        Command::Sasaki {
            file,
            projections,
            commute,
            center,
            full_set,
            json,
        } => {
            let alg = load(&file, limits)?;
            let flags = SasakiFlags {
                projections,
                commute,
                center,
                full_set,
            };
            sasaki(&alg, flags, json)
        }
        Command::Theorems { file, filter, json } => {
            let alg = load(&file, limits)?;
            let results = if filter.is_empty() {
                run_all(&alg, limits)?
            } else {
                filter
                    .iter()
                    .map(|id| run_check(&alg, id, limits))
                    .collect::<ortholab::Result<Vec<_>>>()?
            };
            if json {
                print_json(&serde_json::to_value(&results)?);
            } else {
                for r in &results {
                    println!("{}", r.summary());
                }
                let count = |f: fn(&CheckResult) -> bool| results.iter().filter(|r| f(r)).count();
                println!(
                    "{} checks: {} pass, {} fail, {} skipped",
                    results.len(),
                    count(CheckResult::passed),
                    count(CheckResult::failed),
                    count(|r| !r.passed() && !r.failed()),
                );
            }
            Ok(Outcome::from_checks(&results))
        }
        Command::Enumerate {
            size,
            class,
            limit,
            count_only,
        } => {
            let found = enumerate(size, class, limit, limits)?;
            if count_only {
                println!("{}", found.len());
            } else {
                let mut out = io::stdout().lock();
                for alg in &found {
                    writeln!(out, "{}", serialize_algebra(alg))?;
                }
            }
            Ok(Outcome::Holds)
        }
        Command::Iso { file1, file2 } => {
            let (a, b) = (load(&file1, limits)?, load(&file2, limits)?);
            match is_isomorphic(&a, &b) {
                Some(p) => {
                    for x in a.ids() {
                        println!("{} -> {}", a.name(x), b.name(p[x.0]));
                    }
                    Ok(Outcome::Holds)
                }
                None => {
                    println!("non-isomorphic");
                    Ok(Outcome::Fails)
                }
            }
        }
        Command::Fixture { name } => {
            let text = fixture_text(&name)
                .map_err(|e| anyhow::anyhow!("{e} (available: {})", fixture_names().join(", ")))?;
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(Outcome::Holds)
        }
        Command::Search {
            require,
            forbid,
            max_size,
        } => {
            let goal = SearchGoal {
                require,
                forbid,
                max_size,
            };
            match counterexample_search(&goal, limits)? {
                Some(alg) => {
                    println!("{}", serialize_algebra(&alg));
                    Ok(Outcome::Holds)
                }
                None => {
                    println!("none with at most {max_size} elements");
                    Ok(Outcome::Fails)
                }
            }
        }
    }
}

fn validate(alg: &FiniteAlgebra) -> Result<Outcome> {
    for id in ["BE1", "BE2", "BE3", "BE4", "bounded"] {
        let r = check_axiom(alg, id)?;
        if r.failed() {
            anyhow::bail!("{}", r.summary());
        }
    }
    println!(
        "valid: {} elements, {}",
        alg.len(),
        alg.classify().class_name()
    );
    Ok(Outcome::Holds)
}

fn derive(alg: &FiniteAlgebra, op: DerivedOp) {
    if let DerivedOp::Star = op {
        for x in alg.ids() {
            println!("{} {}", alg.name(x), alg.name(alg.star(x)));
        }
        return;
    }
    let cell = |x: ElementId, y: ElementId| -> String {
        let flag = |b: bool| if b { "1" } else { "0" }.to_string();
        match op {
            DerivedOp::Star => unreachable!(),
            DerivedOp::Arrow => alg.name(alg.imp(x, y)).into(),
            DerivedOp::WedgeQ => alg.name(alg.wedge_q(x, y)).into(),
            DerivedOp::VeeQ => alg.name(alg.vee_q(x, y)).into(),
            DerivedOp::WedgeP => alg.name(alg.wedge_p(x, y)).into(),
            DerivedOp::VeeP => alg.name(alg.vee_p(x, y)).into(),
            DerivedOp::Le => flag(alg.le(x, y)),
            DerivedOp::LeL => flag(alg.le_l(x, y)),
            DerivedOp::LeQ => flag(alg.le_q(x, y)),
        }
    };
    let rows: Vec<Vec<String>> = alg
        .ids()
        .map(|x| alg.ids().map(|y| cell(x, y)).collect())
        .collect();
    print_grid(alg.elements(), alg.elements(), &rows);
}

/// Table with a header row and a label column, columns padded to width.
fn print_grid(row_labels: &[String], col_labels: &[String], rows: &[Vec<String>]) {
    let width = row_labels
        .iter()
        .chain(col_labels)
        .chain(rows.iter().flatten())
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(1);
    let line = |head: &str, cells: &[String]| {
        let mut s = format!("{head:>width$} |");
        for c in cells {
            s.push_str(&format!(" {c:>width$}"));
        }
        println!("{}", s.trim_end());
    };
    line("", col_labels);
    println!("{}", "-".repeat(width + 2 + (width + 1) * col_labels.len()));
    for (label, row) in row_labels.iter().zip(rows) {
        line(label, row);
    }
}

#[derive(Clone, Copy)]
struct OrthoFlags {
    cl: bool,
    dacey: bool,
    blocks: bool,
    normal: bool,
    sasaki_space: bool,
}

fn ortho(space: &OrthoSpace, f: OrthoFlags, as_json: bool, limits: &Limits) -> Result<Outcome> {
    let mut report = serde_json::Map::new();
    let mut checks = Vec::new();

    let perps: Vec<(String, String)> = (0..space.len())
        .map(|p| {
            let name = &space.names()[p];
            (name.clone(), space.format(space.neighbours(p)))
        })
        .collect();
    report.insert("perps".into(), json!(perps));
    if !as_json {
        println!("points: {}", space.names().join(" "));
        for (p, perp) in &perps {
            println!("{{{p}}}^perp = {perp}");
        }
    }

    if f.cl {
        let family = enumerate_orthoclosed(space, limits)?;
        let cl = cl_algebra(space, limits)?;
        let names: Vec<String> = family.members().iter().map(|m| space.format(m)).collect();
        let rows: Vec<Vec<String>> = cl
            .ids()
            .map(|x| {
                cl.ids()
                    .map(|y| cl.name(cl.imp(x, y)).to_string())
                    .collect()
            })
            .collect();
        report.insert("closed_sets".into(), json!(names));
        report.insert("arrow".into(), json!(rows));
        if !as_json {
            println!("closed sets ({}): {}", names.len(), names.join(" "));
            print_grid(cl.elements(), cl.elements(), &rows);
        }
    }
    if f.blocks {
        let found: Vec<String> = blocks(space, limits)?
            .iter()
            .map(|b| space.format(b))
            .collect();
        report.insert("blocks".into(), json!(found));
        if !as_json {
            println!("blocks ({}): {}", found.len(), found.join(" "));
        }
    }
    if f.dacey {
        checks.push(is_dacey(space, limits)?);
    }
    if f.normal {
        checks.push(is_normal(space, limits)?);
    }
    if f.sasaki_space {
        let maps = sasaki_maps(space, limits)?;
        let rendered: Vec<(String, Option<String>)> = maps
            .iter()
            .map(|(a, m)| {
                // the empty set has the empty map
                let shown = m.as_ref().map(|m| {
                    if m.domain.is_empty() {
                        "empty".into()
                    } else {
                        m.render(space)
                    }
                });
                (space.format(a), shown)
            })
            .collect();
        report.insert("sasaki_maps".into(), json!(rendered));
        if !as_json {
            for (a, m) in &rendered {
                println!("map for {a}: {}", m.as_deref().unwrap_or("none"));
            }
        }
        checks.push(is_sasaki_space(space, limits)?);
    }
    emit_checks(report, &checks, as_json)
}

fn emit_checks(
    mut report: serde_json::Map<String, Value>,
    checks: &[CheckResult],
    as_json: bool,
) -> Result<Outcome> {
    if as_json {
        report.insert("checks".into(), serde_json::to_value(checks)?);
        print_json(&Value::Object(report));
    } else {
        for c in checks {
            println!("{}", c.summary());
        }
    }
    Ok(Outcome::from_checks(checks))
}

#[derive(Clone, Copy)]
struct SasakiFlags {
    projections: bool,
    commute: bool,
    center: bool,
    full_set: bool,
}

fn sasaki(alg: &FiniteAlgebra, f: SasakiFlags, as_json: bool) -> Result<Outcome> {
    let mut report = serde_json::Map::new();
    let mut checks = Vec::new();
    let none_selected = !(f.projections || f.commute || f.center || f.full_set);

    if f.projections || none_selected {
        let rows: Vec<Vec<String>> = alg
            .ids()
            .map(|a| {
                sasaki_projection(alg, a)
                    .map(|p| p.image.iter().map(|&x| alg.name(x).to_string()).collect())
            })
            .collect::<ortholab::Result<_>>()?;
        if as_json {
            let named: serde_json::Map<String, Value> = alg
                .elements()
                .iter()
                .cloned()
                .zip(rows.iter().map(|r| json!(r)))
                .collect();
            report.insert("projections".into(), Value::Object(named));
        } else {
            println!("projections (row a: x -> x meet_q a)");
            print_grid(alg.elements(), alg.elements(), &rows);
        }
    }
    if f.commute {
        let rows: Vec<Vec<String>> = alg
            .ids()
            .map(|x| {
                alg.ids()
                    .map(|y| commutes(alg, x, y).map(|c| if c { "1" } else { "0" }.to_string()))
                    .collect()
            })
            .collect::<ortholab::Result<_>>()?;
        report.insert("commute".into(), json!(rows));
        if !as_json {
            println!("commutes (row x, column y: x C y)");
            print_grid(alg.elements(), alg.elements(), &rows);
        }
    }
    if f.center {
        let c = center(alg)?;
        let members: Vec<&str> = c.members.iter().map(|i| alg.name(ElementId(i))).collect();
        report.insert("center".into(), json!(members));
        if !as_json {
            println!("center: {{{}}}", members.join(","));
            if !c.is_ioml {
                println!("note: not an i-OML, the center need not be i-Boolean");
            }
        }
    }
    if f.full_set {
        checks.push(has_full_sasaki_set(alg)?);
    }
    emit_checks(report, &checks, as_json)
}
