//! Named tree constructions: caterpillars, minimum-height binary trees, and
//! exhaustive enumeration of small trees.

use std::collections::BTreeSet;

use itertools::Itertools;

use super::{Label, PhyloTree, TreeError};

/// Default cap for [`enumerate_trees`]; tree counts explode combinatorially.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 6;

fn check_distinct(labels: &[Label]) -> Result<(), TreeError> {
    if labels.is_empty() {
        return Err(TreeError::EmptyInput);
    }
    let mut seen = BTreeSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(TreeError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

/// The left-deep binary caterpillar over the given leaf order: the first two
/// labels are deepest, each later label joins one level higher.
pub fn caterpillar(labels: &[Label]) -> Result<PhyloTree, TreeError> {
    check_distinct(labels)?;
    let mut iter = labels.iter();
    let mut tree = PhyloTree::leaf(iter.next().unwrap().clone());
    for l in iter {
        tree = PhyloTree::node(vec![tree, PhyloTree::leaf(l.clone())])
            .expect("two children with distinct labels");
    }
    Ok(tree)
}

/// The canonical minimum-height binary tree over the given leaf order:
/// recursive halving, the left child taking the first ⌈k/2⌉ labels. Its height
/// is exactly ⌈log2 k⌉.
pub fn min_height_binary(labels: &[Label]) -> Result<PhyloTree, TreeError> {
    check_distinct(labels)?;
    fn build(labels: &[Label]) -> PhyloTree {
        if labels.len() == 1 {
            return PhyloTree::leaf(labels[0].clone());
        }
        let mid = labels.len().div_ceil(2);
        let (left, right) = labels.split_at(mid);
        PhyloTree::node(vec![build(left), build(right)])
            .expect("two children with distinct labels")
    }
    Ok(build(labels))
}

/// All distinct rooted unordered leaf-labeled trees on exactly the given
/// label set, in canonical order.
pub fn enumerate_trees(
    labels: &BTreeSet<Label>,
    limit: usize,
) -> Result<Vec<PhyloTree>, TreeError> {
    if labels.is_empty() {
        return Err(TreeError::EmptyInput);
    }
    if labels.len() > limit {
        return Err(TreeError::EnumerationLimit {
            got: labels.len(),
            limit,
        });
    }
    let items: Vec<Label> = labels.iter().cloned().collect();
    Ok(enumerate(&items))
}

fn enumerate(labels: &[Label]) -> Vec<PhyloTree> {
    if labels.len() == 1 {
        return vec![PhyloTree::leaf(labels[0].clone())];
    }
    let mut out = BTreeSet::new();
    for blocks in set_partitions(labels) {
        if blocks.len() < 2 {
            continue;
        }
        let per_block: Vec<Vec<PhyloTree>> = blocks.iter().map(|b| enumerate(b)).collect();
        for choice in per_block.iter().multi_cartesian_product() {
            let children = choice.into_iter().cloned().collect();
            out.insert(PhyloTree::node(children).expect("blocks partition the label set"));
        }
    }
    out.into_iter().collect()
}

/// All set partitions of `items`, each partition a list of blocks. Every
/// partition is produced exactly once.
fn set_partitions(items: &[Label]) -> Vec<Vec<Vec<Label>>> {
    let mut out = Vec::new();
    let mut current: Vec<Vec<Label>> = Vec::new();
    fn recurse(rest: &[Label], current: &mut Vec<Vec<Label>>, out: &mut Vec<Vec<Vec<Label>>>) {
        let Some((first, rest)) = rest.split_first() else {
            out.push(current.clone());
            return;
        };
        for i in 0..current.len() {
            current[i].push(first.clone());
            recurse(rest, current, out);
            current[i].pop();
        }
        current.push(vec![first.clone()]);
        recurse(rest, current, out);
        current.pop();
    }
    recurse(items, &mut current, &mut out);
    out
}
