//! The `verify` suites. Each suite returns one outcome line; suites run in
//! order so the log is deterministic, and parallelize internally.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use lrtab::hash::{compare_strategies, sizes};
use lrtab::lab::{shape_census, verify_canopy_splitting};
use lrtab::lr::LrEngine;
use lrtab::perm::mr_product_sum;
use lrtab::tableau::{enumerate_all, enumerate_tableaux, Shape};
use lrtab::tree::trees_up_to;
use lrtab::{
    binomial, canopy, catalan, factorial, fiber, hash_product, lr_product, mr_product, psi, updown, BinaryTree,
    FormalSum, Permutation, Tableau, TreeSum,
};

use crate::wire::SuiteOutcome;

pub const DEFAULT_SEED: u64 = 0x5eed_1ab5;

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random triples per total size for the sampled associativity checks.
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: DEFAULT_SEED, samples: 40 }
    }
}

type Suite = fn(&VerifyConfig) -> Result<String, String>;

pub const SUITES: [(&str, Suite); 9] = [
    ("mr-structure", mr_structure),
    ("catalan-counts", catalan_counts),
    ("fibers", fibers),
    ("lr-closure", lr_closure),
    ("lr-laws", lr_laws),
    ("canopy-splitting", canopy_splitting),
    ("census", census),
    ("hash-laws", hash_laws),
    ("transpose", transpose),
];

pub fn run_all(config: &VerifyConfig) -> Vec<SuiteOutcome> {
    SUITES
        .iter()
        .map(|(name, suite)| {
            let start = Instant::now();
            let (passed, detail) = match suite(config) {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            SuiteOutcome {
                name: name.to_string(),
                passed,
                detail: format!("{detail} [{:.2}s]", start.elapsed().as_secs_f64()),
            }
        })
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_perm(rng: &mut StdRng, n: usize) -> Permutation {
    let mut w: Vec<u32> = (1..=n as u32).collect();
    w.shuffle(rng);
    Permutation::new(w).expect("shuffled identity")
}

fn mr_assoc(a: &Permutation, b: &Permutation, c: &Permutation) -> Result<(), String> {
    let ab = mr_product(a, b);
    let left = mr_product_sum(&ab, &FormalSum::term(c.clone())).map_err(|e| e.to_string())?;
    let right = mr_product_sum(&FormalSum::term(a.clone()), &mr_product(b, c)).map_err(|e| e.to_string())?;
    ensure(left == right, || format!("({a}*{b})*{c} != {a}*({b}*{c})"))
}

fn mr_structure(config: &VerifyConfig) -> Result<String, String> {
    let perms: Vec<Vec<Permutation>> = (0..=6).map(Permutation::all).collect();
    let mut pairs = 0u64;
    for k in 0..=6 {
        for l in 0..=6 - k {
            for a in &perms[k] {
                for b in &perms[l] {
                    let p = mr_product(a, b);
                    ensure(p.len() as u64 == binomial((k + l) as u64, k as u64) && p.iter().all(|(_, c)| c == 1), || {
                        format!("{a}*{b} has {} terms", p.len())
                    })?;
                    pairs += 1;
                }
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(config.seed);
    for total in 7..=8usize {
        for _ in 0..config.samples {
            let k = rng.gen_range(0..=total);
            let (a, b) = (random_perm(&mut rng, k), random_perm(&mut rng, total - k));
            let p = mr_product(&a, &b);
            ensure(p.len() as u64 == binomial(total as u64, k as u64), || format!("{a}*{b} has {} terms", p.len()))?;
        }
    }
    let mut triples = 0u64;
    for a_n in 0..=6 {
        for b_n in 0..=6 - a_n {
            for c_n in 0..=6 - a_n - b_n {
                for a in &perms[a_n] {
                    for b in &perms[b_n] {
                        for c in &perms[c_n] {
                            mr_assoc(a, b, c)?;
                            triples += 1;
                        }
                    }
                }
            }
        }
    }
    let mut sampled = 0;
    for total in 7..=8usize {
        for _ in 0..config.samples {
            let x = rng.gen_range(0..=total);
            let y = rng.gen_range(0..=total - x);
            let (a, b, c) = (random_perm(&mut rng, x), random_perm(&mut rng, y), random_perm(&mut rng, total - x - y));
            mr_assoc(&a, &b, &c)?;
            sampled += 1;
        }
    }
    Ok(format!(
        "{pairs} pairs with binomial term counts; associativity on {triples} triples (total <= 6) and {sampled} sampled triples (total 7-8)"
    ))
}

fn catalan_counts(_: &VerifyConfig) -> Result<String, String> {
    let trees = trees_up_to(11);
    for (n, level) in trees.iter().enumerate() {
        ensure(level.len() as u64 == catalan(n as u64), || format!("{} trees of size {n}", level.len()))?;
    }
    for m in 0..=10 {
        let count: u64 = Shape::all(m).iter().map(lrtab::tableau::count_tableaux).sum();
        ensure(count == catalan(m as u64 + 1), || format!("{count} tableaux of size {m}"))?;
    }
    Ok("trees n <= 11 and tableaux m <= 10 match Catalan numbers".into())
}

fn fibers(_: &VerifyConfig) -> Result<String, String> {
    let trees = trees_up_to(7);
    for (n, level) in trees.iter().enumerate() {
        let mut seen = BTreeSet::new();
        let mut total = 0u64;
        for t in level {
            let f = fiber(t);
            let q = if n > 0 { Some(canopy(t).map_err(|e| e.to_string())?) } else { None };
            for s in &f.perms {
                ensure(&psi(s) == t, || format!("{s} in fiber of {t} maps to {}", psi(s)))?;
                ensure(seen.insert(s.clone()), || format!("{s} in two fibers"))?;
                if let Some(q) = &q {
                    ensure(&updown(s).map_err(|e| e.to_string())? == q, || format!("updown({s}) != canopy({t})"))?;
                }
            }
            total += f.len() as u64;
        }
        ensure(total == factorial(n as u64), || format!("fibers of size {n} cover {total} permutations"))?;
    }
    Ok("fibers partition S_n with constant Up-Down word equal to the canopy, n <= 7".into())
}

fn lr_closure(_: &VerifyConfig) -> Result<String, String> {
    let trees = trees_up_to(7);
    let mut pairs = 0u64;
    let mut unit_coeffs = true;
    for n1 in 0..=7 {
        for n2 in 0..=7 - n1 {
            for a in &trees[n1] {
                for b in &trees[n2] {
                    let p = lr_product(a, b).map_err(|e| e.to_string())?;
                    ensure(p.iter().all(|(_, c)| c > 0), || format!("{a}*{b} has a non-positive coefficient"))?;
                    unit_coeffs &= p.iter().all(|(_, c)| c == 1);
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} pairs closed under fibers, total <= 7; all coefficients 1: {unit_coeffs}"))
}

fn lr_laws(_: &VerifyConfig) -> Result<String, String> {
    let trees = trees_up_to(7);
    let mut engine = LrEngine::new();
    let mut triples = 0u64;
    for n1 in 0..=7 {
        for n2 in 0..=7 - n1 {
            for a in &trees[n1] {
                for b in &trees[n2] {
                    let ab = engine.product(a, b).map_err(|e| e.to_string())?;
                    ensure(ab.basis().all(|t| t.size() == n1 + n2), || format!("{a}*{b} leaves degree {}", n1 + n2))?;
                    for cs in &trees[..=7 - n1 - n2] {
                        for c in cs {
                            let left = engine.product_sum(&ab, &TreeSum::term(c.clone())).map_err(|e| e.to_string())?;
                            let bc = engine.product(b, c).map_err(|e| e.to_string())?;
                            let right = engine.product_sum(&TreeSum::term(a.clone()), &bc).map_err(|e| e.to_string())?;
                            ensure(left == right, || format!("({a}*{b})*{c} != {a}*({b}*{c})"))?;
                            triples += 1;
                        }
                    }
                }
            }
        }
    }
    for level in &trees {
        for t in level {
            let unit = TreeSum::term(t.clone());
            ensure(engine.product(&BinaryTree::Leaf, t).map_err(|e| e.to_string())? == unit, || format!("leaf * {t}"))?;
            ensure(engine.product(t, &BinaryTree::Leaf).map_err(|e| e.to_string())? == unit, || format!("{t} * leaf"))?;
        }
    }
    Ok(format!("associativity on {triples} triples (total <= 7), leaf unit, grading"))
}

fn canopy_splitting(_: &VerifyConfig) -> Result<String, String> {
    let r = verify_canopy_splitting(7).map_err(|e| e.to_string())?;
    ensure(r.tableau_bound_holds, || "a connector class exceeds its tableau count".into())?;
    Ok(format!(
        "{} pairs, {} terms, every canopy Q1·(±1)·Q2; both connectors always present: {}; multiplicity-free: {}",
        r.pairs, r.terms, r.both_connectors_always, r.multiplicity_free
    ))
}

fn census(_: &VerifyConfig) -> Result<String, String> {
    for n in 1..=10 {
        let c = shape_census(n).map_err(|e| e.to_string())?;
        if let Some(bad) = c.shapes.iter().find(|s| s.trees != s.tableaux) {
            return Err(format!("n={n} shape {}: {} trees vs {} tableaux", bad.shape, bad.trees, bad.tableaux));
        }
        ensure(c.total_trees == catalan(n as u64), || format!("n={n} totals {}", c.total_trees))?;
    }
    Ok("per-shape tree and tableau counts agree for n <= 10".into())
}

fn hash_laws(_: &VerifyConfig) -> Result<String, String> {
    let cmp = compare_strategies(6);
    let default = cmp.reports.iter().find(|r| r.strategy == cmp.default_strategy).expect("default strategy is swept");
    ensure(default.passed(), || format!("default strategy fails {} of {} triples", default.failures, default.triples))?;
    let other = cmp.reports.iter().filter(|r| r.strategy != cmp.default_strategy);
    let discriminating = other.clone().any(|r| !r.passed());
    ensure(discriminating, || "no comparison strategy fails; the sweep cannot tell strategies apart".into())?;
    for m in 0..=6 {
        for t in enumerate_all(m) {
            let unit = FormalSum::term(t.clone());
            ensure(hash_product(&Tableau::empty(), &t) == unit && hash_product(&t, &Tableau::empty()) == unit, || {
                format!("empty tableau is not a unit for {t}")
            })?;
        }
    }
    for a in 0..=3 {
        for b in 0..=3 {
            for x in enumerate_all(a) {
                for y in enumerate_all(b) {
                    let s = sizes(&hash_product(&x, &y));
                    ensure(s.iter().all(|&k| k == a + b), || format!("{x} # {y} has sizes {s:?}"))?;
                }
            }
        }
    }
    let summary: Vec<String> =
        cmp.reports.iter().map(|r| format!("{}: {}/{} failing", r.strategy, r.failures, r.triples)).collect();
    Ok(format!("default {} associative (total <= 6); unit; grading; {}", cmp.default_strategy, summary.join(", ")))
}

fn transpose(_: &VerifyConfig) -> Result<String, String> {
    let mut checked = 0u64;
    for m in 0..=8 {
        for s in Shape::all(m) {
            let image: BTreeSet<Tableau> = enumerate_tableaux(&s.transpose()).into_iter().collect();
            for t in enumerate_tableaux(&s) {
                let tt = t.transpose();
                ensure(tt.is_valid() && image.contains(&tt), || format!("transpose of {t} is invalid"))?;
                ensure(tt.transpose() == t, || format!("transpose is not an involution on {t}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} tableaux (m <= 8): transpose valid and involutive"))
}
