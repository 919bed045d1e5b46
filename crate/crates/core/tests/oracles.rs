use std::collections::BTreeSet;

use proptest::prelude::*;

use lrtab::hash::hash_product;
use lrtab::lr::psi_star;
use lrtab::perm::mr_product_sum;
use lrtab::tableau::{enumerate_all, enumerate_tableaux, Shape};
use lrtab::tree::trees_up_to;
use lrtab::{lr_product, mr_product, psi, BinaryTree, FormalSum, Permutation, Tableau};

fn standardized(w: &[u32]) -> Vec<u32> {
    w.iter().map(|&x| 1 + w.iter().filter(|&&y| y < x).count() as u32).collect()
}

#[test]
fn mr_product_is_the_set_of_compatible_permutations() {
    for n in 0..=6 {
        for k in 0..=n {
            for a in Permutation::all(k) {
                for b in Permutation::all(n - k) {
                    let expected: BTreeSet<Permutation> = Permutation::all(n)
                        .into_iter()
                        .filter(|p| standardized(&p.word()[..k]) == a.word() && standardized(&p.word()[k..]) == b.word())
                        .collect();
                    let got = mr_product(&a, &b);
                    assert!(got.iter().all(|(_, c)| c == 1));
                    assert_eq!(got.basis().cloned().collect::<BTreeSet<_>>(), expected, "{a} * {b}");
                }
            }
        }
    }
}

#[test]
fn lr_product_lifts_to_the_mr_product() {
    let trees = trees_up_to(5);
    for k in 0..=5 {
        for l in 0..=5 - k {
            for a in &trees[k] {
                for b in &trees[l] {
                    let lifted = mr_product_sum(&psi_star(a), &psi_star(b)).unwrap();
                    let mut expected = FormalSum::zero();
                    for (t, c) in lr_product(a, b).unwrap().iter() {
                        expected.add_scaled(&psi_star(t), c).unwrap();
                    }
                    assert_eq!(lifted, expected, "{a} * {b}");
                }
            }
        }
    }
}

fn brute_count(shape: &Shape) -> usize {
    let cells = shape.cells();
    let mut count = 0;
    for code in 0..3usize.pow(cells.len() as u32) {
        let mut x = code;
        let mut dots = Vec::new();
        for &cell in &cells {
            match x % 3 {
                1 => dots.push((cell, lrtab::Color::Red)),
                2 => dots.push((cell, lrtab::Color::Blue)),
                _ => {}
            }
            x /= 3;
        }
        let covered = |cell: lrtab::Cell| {
            dots.iter().any(|&(d, color)| match color {
                lrtab::Color::Red => d.row == cell.row && d.col < cell.col,
                lrtab::Color::Blue => d.col == cell.col && d.row > cell.row,
            })
        };
        let dotted = |cell: lrtab::Cell| dots.iter().any(|&(d, _)| d == cell);
        if cells.iter().all(|&c| covered(c) != dotted(c)) {
            count += 1;
        }
    }
    count
}

#[test]
fn tableau_enumeration_matches_brute_force() {
    for m in 0..=6 {
        for shape in Shape::all(m) {
            let listed = enumerate_tableaux(&shape);
            assert_eq!(listed.len(), brute_count(&shape), "{shape}");
            assert!(listed.windows(2).all(|w| w[0] < w[1]));
        }
    }
}

#[test]
fn hash_product_is_the_set_of_tableaux_restricting_to_its_factors() {
    let by_size: Vec<Vec<Tableau>> = (0..=5).map(enumerate_all).collect();
    for k in 0..=5 {
        for l in 0..=5 - k {
            for a in &by_size[k] {
                for b in &by_size[l] {
                    let got: BTreeSet<Tableau> = hash_product(a, b).basis().cloned().collect();
                    let expected: BTreeSet<Tableau> = by_size[k + l]
                        .iter()
                        .filter(|t| t.restrict(1, k) == *a && t.restrict(k + 1, l) == *b)
                        .cloned()
                        .collect();
                    assert_eq!(got, expected, "{a} # {b}");
                }
            }
        }
    }
}

fn arb_perm() -> impl Strategy<Value = Permutation> {
    (0usize..10).prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle()).prop_map(|w| Permutation::new(w).unwrap())
}

proptest! {
    #[test]
    fn text_forms_round_trip(p in arb_perm()) {
        prop_assert_eq!(p.to_string().parse::<Permutation>().unwrap(), p.clone());
        let t = psi(&p);
        prop_assert_eq!(t.to_string().parse::<BinaryTree>().unwrap(), t.clone());
        prop_assert_eq!(BinaryTree::decode(&t.encode()).unwrap(), t);
    }
}
