//! Command-line front end for `lrtab`.

pub mod verify;
pub mod wire;

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lrtab::hash::{compare_strategies, hash_product_with, Strategy};
use lrtab::lab::{explore_correspondence, shape_census};
use lrtab::tableau::{count_tableaux, enumerate_tableaux, Shape};
use lrtab::{canopy, catalan, enumerate_trees, fiber, lr_product, mr_product, psi, updown, BinaryTree, Permutation, SignWord, Tableau};

use crate::verify::{VerifyConfig, DEFAULT_SEED};
use crate::wire::*;

#[derive(Debug, Parser)]
#[command(name = "lrtab", version, about = "Permutations, binary trees and Catalan alternative tableaux")]
pub struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Identity,
    Shift,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Identity => Strategy::Identity,
            StrategyArg::Shift => Strategy::Shift,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List trees of a size or tableaux of a size.
    Enumerate {
        #[command(subcommand)]
        what: EnumerateWhat,
    },
    /// Multiply two basis elements.
    Product {
        #[command(subcommand)]
        which: ProductKind,
    },
    /// The fiber of a tree: all permutations projecting onto it.
    Fiber { tree: String },
    /// Canopy of a tree.
    Canopy { tree: String },
    /// Tree and Up-Down word of a permutation.
    Psi { perm: String },
    /// Per-shape tree and tableau counts.
    Census { n: usize },
    /// Run every verification suite; exits 1 on any failure.
    Verify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Random triples per total size in the sampled checks.
        #[arg(long, default_value_t = 40)]
        samples: usize,
    },
    /// Search for a tree-tableau correspondence compatible with products.
    Explore {
        n_max: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Identity)]
        strategy: StrategyArg,
    },
    /// Associativity sweep of every `#` embedding strategy.
    Compare {
        #[arg(long, default_value_t = 6)]
        max_total: usize,
    },
    /// JSON tree to string encoding.
    Encode { json: String },
    /// String encoding to JSON tree.
    Decode { tree: String },
}

#[derive(Debug, Subcommand)]
pub enum EnumerateWhat {
    Trees {
        n: usize,
        #[arg(long)]
        count: bool,
    },
    Tableaux {
        m: usize,
        /// Restrict to one shape, e.g. `+-+-`.
        #[arg(long)]
        shape: Option<String>,
        #[arg(long)]
        count: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum ProductKind {
    /// Malvenuto–Reutenauer product of two permutations.
    Mr { left: String, right: String },
    /// Loday–Ronco product; trees as `(..)` strings, JSON, or permutations
    /// (replaced by their tree).
    Lr { left: String, right: String },
    /// `#` product of two tableaux (`+-:R@1,2` text or JSON).
    Hash {
        left: String,
        right: String,
        #[arg(long, value_enum, default_value_t = StrategyArg::Identity)]
        strategy: StrategyArg,
    },
}

/// Failure categories mapped to exit codes.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments or input; exit code 2.
    Usage(String),
    /// A verification suite failed; exit code 1.
    Verification,
}

impl From<lrtab::Error> for Failure {
    fn from(e: lrtab::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

pub fn parse_tree(s: &str) -> Result<BinaryTree, Failure> {
    let t = s.trim();
    if t.starts_with('[') || t == "null" {
        return serde_json::from_str(t).map_err(|e| Failure::Usage(format!("bad JSON tree: {e}")));
    }
    match t.parse::<BinaryTree>() {
        Ok(tree) => Ok(tree),
        Err(tree_err) => match t.parse::<Permutation>() {
            Ok(p) => Ok(psi(&p)),
            Err(_) => Err(tree_err.into()),
        },
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> std::io::Result<()> {
    writeln!(out, "{}", serde_json::to_string(value).expect("wire types serialize"))
}

/// Parses `argv` (including the program name) and runs the command.
/// Returns the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Verification) => {
            let _ = writeln!(err, "verification failed");
            1
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let json = cli.format == Format::Json;
    let io = |e: std::io::Error| Failure::Usage(format!("write failed: {e}"));
    match &cli.command {
        Command::Enumerate { what: EnumerateWhat::Trees { n, count } } => {
            if *count {
                let c = if *n <= 11 { enumerate_trees(*n).len() as u64 } else { catalan(*n as u64) };
                if json {
                    emit(out, &TreeList { n: *n, count: c, trees: None }).map_err(io)?;
                } else {
                    writeln!(out, "{c}").map_err(io)?;
                }
                return Ok(());
            }
            if *n > 14 {
                return Err(Failure::Usage(format!("refusing to list {} trees; use --count", catalan(*n as u64))));
            }
            let trees = enumerate_trees(*n);
            if json {
                let list = TreeList { n: *n, count: trees.len() as u64, trees: Some(trees.iter().map(|t| t.encode()).collect()) };
                emit(out, &list).map_err(io)?;
            } else {
                for t in &trees {
                    writeln!(out, "{t}").map_err(io)?;
                }
            }
        }
        Command::Enumerate { what: EnumerateWhat::Tableaux { m, shape, count } } => {
            let shapes = match shape {
                Some(s) => {
                    let shape: Shape = s.parse()?;
                    if shape.len() != *m {
                        return Err(Failure::Usage(format!("shape {shape} has size {}, not {m}", shape.len())));
                    }
                    vec![shape]
                }
                None => Shape::all(*m),
            };
            if *count {
                let c: u64 = shapes.iter().map(count_tableaux).sum();
                if json {
                    let list = TableauList { m: *m, shape: shape.as_ref().map(|_| shapes[0].word().clone()), count: c, tableaux: None };
                    emit(out, &list).map_err(io)?;
                } else {
                    writeln!(out, "{c}").map_err(io)?;
                }
                return Ok(());
            }
            if *m > 12 {
                return Err(Failure::Usage("refusing to list tableaux above size 12; use --count".into()));
            }
            let all: Vec<Tableau> = shapes.iter().flat_map(enumerate_tableaux).collect();
            if json {
                let list = TableauList {
                    m: *m,
                    shape: shape.as_ref().map(|_| shapes[0].word().clone()),
                    count: all.len() as u64,
                    tableaux: Some(all),
                };
                emit(out, &list).map_err(io)?;
            } else {
                for t in &all {
                    writeln!(out, "{t}").map_err(io)?;
                }
            }
        }
        Command::Product { which: ProductKind::Mr { left, right } } => {
            let (a, b): (Permutation, Permutation) = (left.parse()?, right.parse()?);
            let p = mr_product(&a, &b);
            if json {
                emit(out, &Terms::from(&p)).map_err(io)?;
            } else {
                writeln!(out, "{p}").map_err(io)?;
            }
        }
        Command::Product { which: ProductKind::Lr { left, right } } => {
            let (a, b) = (parse_tree(left)?, parse_tree(right)?);
            let p = lr_product(&a, &b)?;
            if json {
                emit(out, &Terms::from(&p)).map_err(io)?;
            } else {
                writeln!(out, "{p}").map_err(io)?;
            }
        }
        Command::Product { which: ProductKind::Hash { left, right, strategy } } => {
            let (a, b): (Tableau, Tableau) = (left.parse()?, right.parse()?);
            for t in [&a, &b] {
                if !t.is_valid() {
                    return Err(Failure::Usage(format!("{t} is not a valid tableau")));
                }
            }
            let p = hash_product_with(&Strategy::from(*strategy), &a, &b);
            if json {
                emit(out, &Terms::from(&p)).map_err(io)?;
            } else {
                writeln!(out, "{p}").map_err(io)?;
            }
        }
        Command::Fiber { tree } => {
            let t = parse_tree(tree)?;
            let f = fiber(&t);
            if json {
                emit(out, &FiberOut { tree: t.encode(), size: f.len(), perms: f.perms.into_iter().collect() }).map_err(io)?;
            } else {
                let words: Vec<String> = f.perms.iter().map(|p| p.to_string()).collect();
                writeln!(out, "{}", words.join(" + ")).map_err(io)?;
            }
        }
        Command::Canopy { tree } => {
            let t = parse_tree(tree)?;
            let q = canopy(&t)?;
            if json {
                emit(out, &CanopyOut { tree: t.encode(), canopy: q }).map_err(io)?;
            } else {
                writeln!(out, "{q}").map_err(io)?;
            }
        }
        Command::Psi { perm } => {
            let p: Permutation = perm.parse()?;
            let t = psi(&p);
            let q = if p.is_empty() { SignWord::empty() } else { updown(&p)? };
            if json {
                emit(out, &PsiOut { perm: p, tree: t.encode(), updown: q }).map_err(io)?;
            } else {
                writeln!(out, "{t} {q}").map_err(io)?;
            }
        }
        Command::Census { n } => {
            let c = shape_census(*n)?;
            if json {
                emit(out, &c).map_err(io)?;
            } else {
                for s in &c.shapes {
                    let mark = if s.trees == s.tableaux { "=" } else { "!=" };
                    writeln!(out, "{:<12} trees {:>6} {mark} tableaux {:>6}", s.shape.to_string(), s.trees, s.tableaux).map_err(io)?;
                }
                writeln!(out, "total        trees {:>6}   tableaux {:>6}", c.total_trees, c.total_tableaux).map_err(io)?;
            }
            if !c.all_equal() {
                return Err(Failure::Verification);
            }
        }
        Command::Verify { seed, samples } => {
            let config = VerifyConfig { seed: *seed, samples: *samples };
            let suites = verify::run_all(&config);
            let passed = suites.iter().all(|s| s.passed);
            if json {
                emit(out, &VerifyOut { passed, seed: *seed, suites }).map_err(io)?;
            } else {
                for s in &suites {
                    writeln!(out, "{} {}: {}", if s.passed { "PASS" } else { "FAIL" }, s.name, s.detail).map_err(io)?;
                }
            }
            if !passed {
                return Err(Failure::Verification);
            }
        }
        Command::Explore { n_max, strategy } => {
            if *n_max > 6 {
                return Err(Failure::Usage("explore supports n_max <= 6".into()));
            }
            let report = explore_correspondence(*n_max, Strategy::from(*strategy))?;
            if json {
                emit(out, &report).map_err(io)?;
            } else {
                writeln!(out, "strategy {} up to size {}", report.strategy, report.n_max).map_err(io)?;
                for s in &report.sizes {
                    writeln!(
                        out,
                        "size {}: {} branch(es) in, {} surviving, {} constraints, {} contradictions",
                        s.size, s.branches_examined, s.branches_surviving, s.constraints_examined, s.contradiction_count
                    )
                    .map_err(io)?;
                    for f in s.shapes.iter().filter(|f| f.status != "unique") {
                        writeln!(
                            out,
                            "  {:<10} {} trees, {} tableaux, bijections min {} max {}: {}",
                            f.shape.to_string(), f.trees, f.tableaux, f.min_bijections, f.max_bijections, f.status
                        )
                        .map_err(io)?;
                    }
                    for c in &s.contradictions {
                        writeln!(
                            out,
                            "  contradiction: {} * {} connector {:+}: class {} vs {} completions",
                            c.left, c.right, c.connector, c.oracle_class_size, c.candidate_size
                        )
                        .map_err(io)?;
                    }
                }
                writeln!(out, "surviving assignments: {}{}", report.surviving_assignments, if report.truncated { " (truncated)" } else { "" })
                    .map_err(io)?;
            }
        }
        Command::Compare { max_total } => {
            if *max_total > 7 {
                return Err(Failure::Usage("compare supports --max-total <= 7".into()));
            }
            let cmp = compare_strategies(*max_total);
            if json {
                emit(out, &cmp).map_err(io)?;
            } else {
                writeln!(out, "default strategy: {}", cmp.default_strategy).map_err(io)?;
                for r in &cmp.reports {
                    write!(out, "{}: {} of {} triples fail (total <= {})", r.strategy, r.failures, r.triples, r.max_total_size).map_err(io)?;
                    match &r.first_failure {
                        Some(w) => writeln!(
                            out,
                            "; first: ({} # {}) # {} has {} terms, the other bracketing {}",
                            w.first, w.second, w.third, w.left_bracketing_terms, w.right_bracketing_terms
                        )
                        .map_err(io)?,
                        None => writeln!(out).map_err(io)?,
                    }
                }
            }
        }
        Command::Encode { json: input } => {
            let t: BinaryTree = serde_json::from_str(input).map_err(|e| Failure::Usage(format!("bad JSON tree: {e}")))?;
            if json {
                emit(out, &t.encode()).map_err(io)?;
            } else {
                writeln!(out, "{t}").map_err(io)?;
            }
        }
        Command::Decode { tree } => {
            let t = BinaryTree::decode(tree)?;
            emit(out, &t).map_err(io)?;
        }
    }
    Ok(())
}
