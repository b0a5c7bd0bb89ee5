//! Agreement and compatibility predicates over tree collections.
//!
//! A tree T is an agreement subtree of a collection when T equals every
//! member's restriction to L(T); it is compatible when it refines every such
//! restriction. Compatibility over a leaf subset is decided by laminarity of
//! the union of the restrictions' clusters: a common refinement on X exists
//! exactly when no two clusters properly overlap, and the laminar family
//! itself yields the canonical witness.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::tree::{Label, PhyloTree, TreeCollection, TreeError};

/// Whether `t` equals every member's restriction to `L(t)`.
pub fn is_agreement_subtree(t: &PhyloTree, coll: &TreeCollection) -> Result<bool, TreeError> {
    let leaves = t.labels();
    for member in coll.trees() {
        let restricted = member.restrict(&leaves)?.expect("L(t) is nonempty");
        if restricted != *t {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `t` refines every member's restriction to `L(t)`.
pub fn is_compatible_with(t: &PhyloTree, coll: &TreeCollection) -> Result<bool, TreeError> {
    let leaves = t.labels();
    for member in coll.trees() {
        let restricted = member.restrict(&leaves)?.expect("L(t) is nonempty");
        if !t.refines(&restricted)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decides whether some tree on `x` refines every member's restriction to
/// `x`; on success returns the canonical witness.
///
/// Clusters are accumulated member by member with an incremental laminarity
/// check, so an incompatible collection fails as soon as two clusters
/// properly overlap.
pub fn compatible_exists(
    coll: &TreeCollection,
    x: &BTreeSet<Label>,
) -> Result<Option<PhyloTree>, TreeError> {
    if x.is_empty() {
        return Err(TreeError::EmptyInput);
    }
    for l in x {
        if !coll.leaf_set().contains(l) {
            return Err(TreeError::UnknownLabel(l.clone()));
        }
    }
    let mut family: BTreeSet<BTreeSet<Label>> = BTreeSet::new();
    for member in coll.trees() {
        let restricted = member
            .restrict_within(x)
            .expect("x is nonempty and a subset of the common leaf set");
        for cluster in restricted.clusters() {
            if family.contains(&cluster) {
                continue;
            }
            if family.iter().any(|c| properly_overlap(c, &cluster)) {
                return Ok(None);
            }
            family.insert(cluster);
        }
    }
    Ok(Some(tree_from_laminar_family(x, &family)))
}

/// Some 3-element subset of `x` on which two members' restrictions differ, or
/// `None` exactly when all restrictions to `x` are pairwise equal.
///
/// The scan is deterministic: triples in lexicographic label order, members in
/// collection order.
pub fn find_disagreement_triple(
    coll: &TreeCollection,
    x: &BTreeSet<Label>,
) -> Result<Option<[Label; 3]>, TreeError> {
    scan_triples(coll, x, |restrictions| {
        let first = &restrictions[0];
        restrictions[1..].iter().any(|r| r != first)
    })
}

/// Some 3-element subset of `x` on which two members restrict to distinct
/// binary trees, or `None` exactly when a compatible tree on `x` exists.
pub fn find_conflict_triple(
    coll: &TreeCollection,
    x: &BTreeSet<Label>,
) -> Result<Option<[Label; 3]>, TreeError> {
    scan_triples(coll, x, |restrictions| {
        let mut binary = restrictions.iter().filter(|r| r.max_degree() == 2);
        match binary.next() {
            None => false,
            Some(first) => binary.any(|r| r != first),
        }
    })
}

fn scan_triples(
    coll: &TreeCollection,
    x: &BTreeSet<Label>,
    is_bad: impl Fn(&[PhyloTree]) -> bool,
) -> Result<Option<[Label; 3]>, TreeError> {
    for l in x {
        if !coll.leaf_set().contains(l) {
            return Err(TreeError::UnknownLabel(l.clone()));
        }
    }
    let labels: Vec<&Label> = x.iter().collect();
    for triple in labels.iter().combinations(3) {
        let set: BTreeSet<Label> = triple.iter().map(|l| (**l).clone()).collect();
        let restrictions: Vec<PhyloTree> = coll
            .trees()
            .iter()
            .map(|t| t.restrict_within(&set).expect("triple is nonempty"))
            .collect();
        if is_bad(&restrictions) {
            let mut it = set.into_iter();
            return Ok(Some([
                it.next().unwrap(),
                it.next().unwrap(),
                it.next().unwrap(),
            ]));
        }
    }
    Ok(None)
}

fn properly_overlap(a: &BTreeSet<Label>, b: &BTreeSet<Label>) -> bool {
    let mut shared = false;
    let mut a_only = false;
    for l in a {
        if b.contains(l) {
            shared = true;
        } else {
            a_only = true;
        }
        if shared && a_only {
            break;
        }
    }
    if !(shared && a_only) {
        return false;
    }
    b.iter().any(|l| !a.contains(l))
}

/// Builds the unique tree whose clusters are exactly the laminar family plus
/// all singletons and the full set.
fn tree_from_laminar_family(
    x: &BTreeSet<Label>,
    family: &BTreeSet<BTreeSet<Label>>,
) -> PhyloTree {
    fn build(set: &BTreeSet<Label>, family: &BTreeSet<BTreeSet<Label>>) -> PhyloTree {
        if set.len() == 1 {
            return PhyloTree::leaf(set.iter().next().unwrap().clone());
        }
        // Maximal proper subsets of `set` within the family; with all
        // singletons present they partition `set` into >= 2 blocks.
        let mut inside: Vec<&BTreeSet<Label>> = family
            .iter()
            .filter(|c| c.len() < set.len() && c.is_subset(set))
            .collect();
        inside.sort_by_key(|c| std::cmp::Reverse(c.len()));
        let mut blocks: Vec<&BTreeSet<Label>> = Vec::new();
        let mut covered: BTreeSet<Label> = BTreeSet::new();
        for c in inside {
            // Visiting larger sets first, a candidate whose minimum is covered
            // is nested inside a chosen block and all of it is covered.
            if !covered.contains(c.first().expect("family members are nonempty")) {
                blocks.push(c);
                covered.extend(c.iter().cloned());
            }
        }
        debug_assert_eq!(covered, *set);
        let children: Vec<PhyloTree> = blocks.into_iter().map(|b| build(b, family)).collect();
        PhyloTree::node(children).expect("laminar blocks partition the set")
    }

    let mut family = family.clone();
    family.insert(x.clone());
    for l in x {
        family.insert(BTreeSet::from([l.clone()]));
    }
    build(x, &family)
}
