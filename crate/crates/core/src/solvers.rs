//! Exact solvers for maximum agreement subtrees and maximum compatible
//! trees: brute-force oracles over leaf subsets, fixed-size decision
//! variants, and leaf-deletion branching solvers parameterized by the number
//! of deleted leaves.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;
use thiserror::Error;

use crate::agreement::{compatible_exists, find_conflict_triple, find_disagreement_triple};
use crate::tree::{Label, PhyloTree, TreeCollection, TreeError};

/// Default leaf-count cap for [`mast_bruteforce`].
pub const DEFAULT_MAST_CAP: usize = 20;
/// Default leaf-count cap for [`mct_bruteforce`].
pub const DEFAULT_MCT_CAP: usize = 18;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("brute-force cap exceeded: {reason}")]
    CapExceeded { reason: String },
    #[error(transparent)]
    Tree(#[from] TreeError),
}

impl SolveError {
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, SolveError::CapExceeded { .. })
    }
}

/// Exact maximum agreement subtree by subset enumeration.
///
/// Scans leaf subsets by decreasing cardinality, lexicographically within a
/// cardinality, so the first hit is the optimum with the lexicographically
/// smallest leaf set. Fails when the collection has more than `cap` leaves.
pub fn mast_bruteforce(
    coll: &TreeCollection,
    cap: usize,
) -> Result<(usize, PhyloTree), SolveError> {
    check_cap(coll, cap, "mast")?;
    let n = coll.leaf_count();
    for size in (1..=n).rev() {
        if let Some(witness) = agreement_subtree_of_size(coll, size)? {
            return Ok((size, witness));
        }
    }
    unreachable!("every single leaf is an agreement subtree");
}

/// Exact maximum compatible tree by subset enumeration; the witness is the
/// canonical tree built from the laminar cluster family.
pub fn mct_bruteforce(coll: &TreeCollection, cap: usize) -> Result<(usize, PhyloTree), SolveError> {
    check_cap(coll, cap, "mct")?;
    let n = coll.leaf_count();
    for size in (1..=n).rev() {
        if let Some(witness) = compatible_tree_of_size(coll, size)? {
            return Ok((size, witness));
        }
    }
    unreachable!("every single leaf is a compatible tree");
}

fn check_cap(coll: &TreeCollection, cap: usize, what: &str) -> Result<(), SolveError> {
    let n = coll.leaf_count();
    if n > cap {
        return Err(SolveError::CapExceeded {
            reason: format!("{what}: {n} leaves exceed the cap of {cap}"),
        });
    }
    Ok(())
}

/// Brute-force decision: an agreement subtree on exactly `size` leaves, or
/// `None`. Restriction closure makes this equivalent to "maximum >= size".
pub fn agreement_subtree_of_size(
    coll: &TreeCollection,
    size: usize,
) -> Result<Option<PhyloTree>, SolveError> {
    if size == 0 || size > coll.leaf_count() {
        return Ok(None);
    }
    let labels: Vec<Label> = coll.leaf_set().iter().cloned().collect();
    for subset in labels.iter().combinations(size) {
        let x: BTreeSet<Label> = subset.into_iter().cloned().collect();
        if let Some(witness) = restrictions_all_equal(coll, &x) {
            return Ok(Some(witness));
        }
    }
    Ok(None)
}

/// Brute-force decision: a tree on exactly `size` leaves compatible with the
/// collection, or `None`.
pub fn compatible_tree_of_size(
    coll: &TreeCollection,
    size: usize,
) -> Result<Option<PhyloTree>, SolveError> {
    if size == 0 || size > coll.leaf_count() {
        return Ok(None);
    }
    let labels: Vec<Label> = coll.leaf_set().iter().cloned().collect();
    for subset in labels.iter().combinations(size) {
        let x: BTreeSet<Label> = subset.into_iter().cloned().collect();
        if let Some(witness) = compatible_exists(coll, &x)? {
            return Ok(Some(witness));
        }
    }
    Ok(None)
}

fn restrictions_all_equal(coll: &TreeCollection, x: &BTreeSet<Label>) -> Option<PhyloTree> {
    let mut members = coll.trees().iter();
    let first = members
        .next()
        .expect("collections are nonempty")
        .restrict_within(x)
        .expect("x is nonempty");
    for member in members {
        if member.restrict_within(x).expect("x is nonempty") != first {
            return None;
        }
    }
    Some(first)
}

/// Agreement subtree on at least `n - p` leaves, or `None`.
///
/// Branching: while some 3-leaf disagreement exists, one of its leaves must be
/// deleted; each search node branches three ways, to depth at most `p`.
/// Visited leaf-set states are memoized across branches.
pub fn mast_fpt(coll: &TreeCollection, p: usize) -> Option<PhyloTree> {
    branch_and_delete(coll, p, &|coll, x| {
        find_disagreement_triple(coll, x).expect("x is a subset of the common leaf set")
    })
    .map(|x| {
        coll.trees()[0]
            .restrict(&x)
            .expect("x is a subset of the leaf set")
            .expect("x is nonempty")
    })
}

/// Compatible tree on at least `n - p` leaves, or `None`.
///
/// Same branching scheme over hard-conflict triples; when none remains the
/// witness is the canonical compatible tree on the surviving leaves.
pub fn mct_fpt(coll: &TreeCollection, p: usize) -> Option<PhyloTree> {
    branch_and_delete(coll, p, &|coll, x| {
        find_conflict_triple(coll, x).expect("x is a subset of the common leaf set")
    })
    .map(|x| {
        compatible_exists(coll, &x)
            .expect("x is a subset of the common leaf set")
            .expect("no conflict triple remains")
    })
}

type TripleFinder = dyn Fn(&TreeCollection, &BTreeSet<Label>) -> Option<[Label; 3]>;

/// Core of the branching solvers: returns the surviving leaf set of the first
/// success in deterministic depth-first order.
fn branch_and_delete(
    coll: &TreeCollection,
    p: usize,
    find_obstruction: &TripleFinder,
) -> Option<BTreeSet<Label>> {
    let full: Vec<Label> = coll.leaf_set().iter().cloned().collect();

    fn search(
        coll: &TreeCollection,
        x: &BTreeSet<Label>,
        budget: usize,
        find_obstruction: &TripleFinder,
        failed: &mut HashSet<Vec<u32>>,
        full: &[Label],
    ) -> Option<BTreeSet<Label>> {
        // A leaf set is reached after a fixed number of deletions, so its
        // remaining budget is a function of the set alone and failed states
        // can be skipped wholesale.
        let key: Vec<u32> = full
            .iter()
            .enumerate()
            .filter(|(_, l)| x.contains(l))
            .map(|(i, _)| i as u32)
            .collect();
        if failed.contains(&key) {
            return None;
        }
        match find_obstruction(coll, x) {
            None => Some(x.clone()),
            Some(triple) => {
                if budget > 0 {
                    for leaf in &triple {
                        let mut smaller = x.clone();
                        smaller.remove(leaf);
                        let found =
                            search(coll, &smaller, budget - 1, find_obstruction, failed, full);
                        if found.is_some() {
                            return found;
                        }
                    }
                }
                failed.insert(key);
                None
            }
        }
    }

    let mut failed = HashSet::new();
    search(
        coll,
        coll.leaf_set(),
        p,
        find_obstruction,
        &mut failed,
        &full,
    )
}
