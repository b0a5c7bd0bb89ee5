//! Seeded random instance generators for graphs and tree collections.
//!
//! Everything is driven by a ChaCha stream cipher RNG, so a fixed seed yields
//! identical instances on every platform and run.

use rand::seq::SliceRandom;
use rand::Rng;
pub use rand_chacha::ChaCha8Rng;
use rand_chacha::rand_core::SeedableRng;

use crate::graph::{Graph, GraphError};
use crate::tree::{Label, PhyloTree, TreeCollection};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A graph on `n` vertices with `m` edges sampled uniformly without
/// replacement from all vertex pairs.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, m: usize) -> Result<Graph, GraphError> {
    let mut pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| ((u + 1)..=n).map(move |v| (u, v)))
        .collect();
    if m > pairs.len() {
        return Err(GraphError::CapExceeded {
            reason: format!("{m} edges requested but only {} pairs exist", pairs.len()),
        });
    }
    pairs.partial_shuffle(rng, m);
    Graph::new(n, pairs.into_iter().take(m))
}

/// A random graph on `n` vertices whose edge count is itself uniform over
/// `0..=n(n-1)/2`, so sparse and dense instances are equally likely.
pub fn random_graph_any_density<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let max_edges = n * (n - 1) / 2;
    let m = rng.random_range(0..=max_edges);
    random_graph(rng, n, m).expect("m is at most the number of vertex pairs")
}

/// A uniform-ish random tree on the given labels: the root's child count is
/// drawn first, then labels are scattered over the child blocks.
pub fn random_tree<R: Rng>(rng: &mut R, labels: &[Label]) -> PhyloTree {
    assert!(!labels.is_empty(), "need at least one label");
    if labels.len() == 1 {
        return PhyloTree::leaf(labels[0].clone());
    }
    let degree = rng.random_range(2..=labels.len());
    let mut shuffled: Vec<Label> = labels.to_vec();
    shuffled.shuffle(rng);
    // One label per block up front keeps every block nonempty.
    let mut blocks: Vec<Vec<Label>> = shuffled[..degree].iter().map(|l| vec![l.clone()]).collect();
    for l in &shuffled[degree..] {
        blocks[rng.random_range(0..degree)].push(l.clone());
    }
    let children: Vec<PhyloTree> = blocks.iter().map(|b| random_tree(rng, b)).collect();
    PhyloTree::node(children).expect("blocks partition the labels")
}

/// A collection of `k` random trees sharing the leaf set `1..=n`.
pub fn random_collection<R: Rng>(rng: &mut R, n: usize, k: usize) -> TreeCollection {
    assert!(n >= 1 && k >= 1, "need at least one leaf and one tree");
    let labels: Vec<Label> = (1..=n).map(Label::from).collect();
    let trees: Vec<PhyloTree> = (0..k).map(|_| random_tree(rng, &labels)).collect();
    TreeCollection::new(trees).expect("all trees share the label set")
}
