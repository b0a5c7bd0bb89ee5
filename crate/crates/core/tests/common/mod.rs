//! Shared helpers and independent oracles for the integration suites.
//!
//! Everything here deliberately avoids the library code paths it is used to
//! check: tree counts come from integer arithmetic over partition shapes,
//! refinement comes from explicit edge-collapse enumeration, and the MAST/MCT
//! oracles enumerate candidate trees instead of comparing restrictions.

#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use mastkit::agreement::{is_agreement_subtree, is_compatible_with};
use mastkit::tree::{enumerate_trees, Label, PhyloTree, TreeCollection};

/// Number of rooted unordered leaf-labeled trees on n labels, computed purely
/// arithmetically: sum over integer partitions of n into at least two parts
/// of (number of set partitions with that shape) x (product of counts per
/// block).
pub fn tree_count_oracle(n: usize) -> u64 {
    fn factorial(n: usize) -> u64 {
        (1..=n as u64).product()
    }

    fn count(n: usize, memo: &mut Vec<Option<u64>>) -> u64 {
        if let Some(v) = memo[n] {
            return v;
        }
        let result = if n == 1 {
            1
        } else {
            let mut total = 0u64;
            for shape in integer_partitions(n) {
                if shape.len() < 2 {
                    continue;
                }
                // Set partitions of this shape: n! / (prod part!^mult * prod mult!).
                let mut ways = factorial(n);
                for &part in &shape {
                    ways /= factorial(part);
                }
                let mut run = 1;
                for i in 1..=shape.len() {
                    if i < shape.len() && shape[i] == shape[i - 1] {
                        run += 1;
                    } else {
                        ways /= factorial(run);
                        run = 1;
                    }
                }
                let per_blocks: u64 = shape.iter().map(|&part| count(part, memo)).product();
                total += ways * per_blocks;
            }
            total
        };
        memo[n] = Some(result);
        result
    }

    let mut memo = vec![None; n + 1];
    count(n, &mut memo)
}

/// All integer partitions of n, each sorted descending.
fn integer_partitions(n: usize) -> Vec<Vec<usize>> {
    fn recurse(rest: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(current.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            current.push(part);
            recurse(rest - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    recurse(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every tree obtainable from `t` by collapsing a subset of its internal
/// edges, by direct structural surgery.
pub fn all_edge_collapses(t: &PhyloTree) -> BTreeSet<PhyloTree> {
    if t.is_leaf() {
        return BTreeSet::from([t.clone()]);
    }
    // Per child: each collapsed variant either stays a child (edge kept) or,
    // when internal, has its children spliced in (edge collapsed).
    let options: Vec<Vec<Vec<PhyloTree>>> = t
        .children()
        .iter()
        .map(|child| {
            let mut opts = Vec::new();
            for variant in all_edge_collapses(child) {
                if !variant.is_leaf() {
                    opts.push(variant.children());
                }
                opts.push(vec![variant]);
            }
            opts
        })
        .collect();
    options
        .iter()
        .multi_cartesian_product()
        .map(|combo| {
            let children: Vec<PhyloTree> = combo.into_iter().flatten().cloned().collect();
            PhyloTree::node(children).expect("collapsing keeps labels disjoint")
        })
        .collect()
}

/// MAST size by candidate-tree enumeration: the largest |X| such that some
/// tree on X is an agreement subtree.
pub fn mast_size_by_enumeration(coll: &TreeCollection) -> usize {
    let labels: Vec<Label> = coll.leaf_set().iter().cloned().collect();
    for size in (1..=labels.len()).rev() {
        for subset in labels.iter().combinations(size) {
            let x: BTreeSet<Label> = subset.into_iter().cloned().collect();
            for candidate in enumerate_trees(&x, labels.len()).unwrap() {
                if is_agreement_subtree(&candidate, coll).unwrap() {
                    return size;
                }
            }
        }
    }
    unreachable!("a single leaf always agrees");
}

/// MCT size by candidate-tree enumeration.
pub fn mct_size_by_enumeration(coll: &TreeCollection) -> usize {
    let labels: Vec<Label> = coll.leaf_set().iter().cloned().collect();
    for size in (1..=labels.len()).rev() {
        for subset in labels.iter().combinations(size) {
            let x: BTreeSet<Label> = subset.into_iter().cloned().collect();
            for candidate in enumerate_trees(&x, labels.len()).unwrap() {
                if is_compatible_with(&candidate, coll).unwrap() {
                    return size;
                }
            }
        }
    }
    unreachable!("a single leaf is always compatible");
}

/// All subsets of the given labels with the given size.
pub fn subsets_of_size(labels: &BTreeSet<Label>, size: usize) -> Vec<BTreeSet<Label>> {
    labels
        .iter()
        .combinations(size)
        .map(|c| c.into_iter().cloned().collect())
        .collect()
}

/// Asserts the structural tree invariant: every internal node has at least
/// two children and leaf labels are unique.
pub fn assert_well_formed(t: &PhyloTree) {
    fn walk(t: &PhyloTree, seen: &mut BTreeSet<Label>) {
        if let Some(l) = t.leaf_label() {
            assert!(seen.insert(l.clone()), "duplicate label {l}");
            return;
        }
        let children = t.children();
        assert!(children.len() >= 2, "internal node of degree {}", children.len());
        for c in &children {
            walk(c, seen);
        }
    }
    walk(t, &mut BTreeSet::new());
}
