//! Executable gadget reductions from Independent Set to the decision versions
//! of the agreement-subtree and compatible-tree problems, plus the padding
//! step between partitioned instances and an end-to-end verification harness.
//!
//! Every construction is deterministic: parts are processed in order, part
//! members in ascending vertex order, pairs and edges in sorted order, so a
//! given instance always yields byte-identical collections.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::agreement::{is_agreement_subtree, is_compatible_with};
use crate::graph::{
    max_independent_set, Graph, GraphError, PartitionedInstance, DEFAULT_IS_CAP,
};
use crate::solvers::{agreement_subtree_of_size, compatible_tree_of_size, SolveError};
use crate::tree::{caterpillar, min_height_binary, Label, PhyloTree, TreeCollection, TreeError};

/// Default cap on the number of leaf subsets the verification harness may
/// scan on the gadget side.
pub const DEFAULT_VERIFY_CAP: u128 = 1 << 22;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReduceError {
    #[error("construction requires multiplicity p = {expected}, got {got}")]
    WrongMultiplicity { expected: usize, got: usize },
    #[error("construction requires at least {needed} parts, got {got}")]
    TooFewParts { needed: usize, got: usize },
    #[error("construction requires part size at least {needed}, got {got}")]
    PartTooSmall { needed: usize, got: usize },
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("verification cap exceeded: {reason}")]
    CapExceeded { reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

impl ReduceError {
    pub fn is_cap_exceeded(&self) -> bool {
        match self {
            ReduceError::CapExceeded { .. } => true,
            ReduceError::Graph(e) => e.is_cap_exceeded(),
            _ => false,
        }
    }
}

impl From<SolveError> for ReduceError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::CapExceeded { reason } => ReduceError::CapExceeded { reason },
            SolveError::Tree(e) => ReduceError::Tree(e),
        }
    }
}

/// Provenance record for a produced gadget collection, with degree and size
/// certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReport {
    pub construction: &'static str,
    pub source_digest: String,
    pub produced_digest: String,
    /// Target size for the decision question on the produced collection.
    pub q: usize,
    /// Number of parts of the source instance.
    pub k: usize,
    /// Maximum degree over the produced collection, recomputed from the trees.
    pub max_degree: usize,
    /// The degree bound the construction certifies.
    pub degree_bound: usize,
    pub tree_count: usize,
    pub leaf_count: usize,
}

impl ReductionReport {
    /// Flat key=value text block.
    pub fn to_text(&self) -> String {
        format!(
            "construction={}\nsource=fnv1a64:{}\nproduced=fnv1a64:{}\nq={}\nk={}\nD={}\ndegree_bound={}\ntrees={}\nleaves={}\n",
            self.construction,
            self.source_digest,
            self.produced_digest,
            self.q,
            self.k,
            self.max_degree,
            self.degree_bound,
            self.tree_count,
            self.leaf_count,
        )
    }
}

/// Serializes a gadget collection: a `q <q> k <k> D <D>` header line, then
/// one canonical tree expression per line.
pub fn write_gadget(q: usize, k: usize, coll: &TreeCollection) -> String {
    let mut out = format!("q {q} k {k} D {}\n", coll.max_degree());
    for tree in coll.trees() {
        out.push_str(&tree.to_string());
        out.push('\n');
    }
    out
}

fn fnv1a64(text: &str) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for b in text.as_bytes() {
        hash ^= u64::from(*b);
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}

fn vertex_label(v: usize) -> Label {
    Label::from(v)
}

fn part_labels_ascending(part: &BTreeSet<usize>) -> Vec<Label> {
    part.iter().map(|&v| vertex_label(v)).collect()
}

/// Product construction: Independent Set with target `k` to a partitioned
/// instance with multiplicity 1.
///
/// The produced graph lives on `k` stacked copies of V; copy `i` occupies the
/// dense range `(i-1)*|V| + 1 ..= i*|V|` and forms part i. Vertices in
/// different copies are adjacent when they stand for adjacent-or-equal
/// source vertices, so picking one vertex per copy picks `k` pairwise
/// distinct, pairwise non-adjacent source vertices.
pub fn is_to_pis1(k: usize, g: &Graph) -> Result<PartitionedInstance, ReduceError> {
    if k < 1 {
        return Err(ReduceError::TooFewParts { needed: 1, got: k });
    }
    let nv = g.vertex_count();
    if nv == 0 {
        return Err(ReduceError::EmptyGraph);
    }
    let vertex = |u: usize, i: usize| (i - 1) * nv + u;
    let mut edges = Vec::new();
    for i in 1..=k {
        for j in (i + 1)..=k {
            // Ordered (u, v) pairs: {(u,i),(v,j)} and {(v,i),(u,j)} are
            // different edges of the product graph.
            for u in 1..=nv {
                for v in 1..=nv {
                    if u == v || g.has_edge(u, v) {
                        edges.push((vertex(u, i), vertex(v, j)));
                    }
                }
            }
        }
    }
    let graph = Graph::new(k * nv, edges)?;
    let parts: Vec<BTreeSet<usize>> = (1..=k)
        .map(|i| ((i - 1) * nv + 1..=i * nv).collect())
        .collect();
    Ok(PartitionedInstance::new(graph, parts, 1)?)
}

/// Padding step: one fresh isolated vertex per part, multiplicity `p + 1`.
///
/// Part `i` gains vertex `n + i`. The padded instance is solvable at `p + 1`
/// exactly when the original is solvable at `p`.
pub fn pis_pad(inst: &PartitionedInstance) -> PartitionedInstance {
    let n = inst.graph().vertex_count();
    let k = inst.part_count();
    let graph = Graph::new(n + k, inst.graph().edges()).expect("edges unchanged");
    let parts: Vec<BTreeSet<usize>> = inst
        .parts()
        .iter()
        .enumerate()
        .map(|(idx, part)| {
            let mut part = part.clone();
            part.insert(n + idx + 1);
            part
        })
        .collect();
    PartitionedInstance::new(graph, parts, inst.multiplicity() + 1)
        .expect("padding preserves the instance invariants")
}

/// Gadget construction from a multiplicity-1 instance to the agreement
/// subtree question with target `q = k`.
///
/// One binary control tree per part assembles into the control star C; every
/// vertex pair yields a tree re-grafting both vertices at the root; every
/// edge yields a selection tree re-grafting the adjacent pair as a cherry.
/// Requires `k >= 3` and all parts of size at least 3.
pub fn pis1_to_ast(
    inst: &PartitionedInstance,
) -> Result<(usize, TreeCollection, ReductionReport), ReduceError> {
    if inst.multiplicity() != 1 {
        return Err(ReduceError::WrongMultiplicity {
            expected: 1,
            got: inst.multiplicity(),
        });
    }
    let k = inst.part_count();
    if k < 3 {
        return Err(ReduceError::TooFewParts { needed: 3, got: k });
    }
    if inst.part_size() < 3 {
        return Err(ReduceError::PartTooSmall {
            needed: 3,
            got: inst.part_size(),
        });
    }
    let n = inst.graph().vertex_count();
    let binaries: Vec<PhyloTree> = inst
        .parts()
        .iter()
        .map(|part| caterpillar(&part_labels_ascending(part)))
        .collect::<Result<_, _>>()?;

    // Children of the root after deleting `removed` from every part tree;
    // parts of size >= 3 never restrict away entirely.
    let restricted_parts = |removed: [usize; 2]| -> Vec<PhyloTree> {
        let removed: BTreeSet<Label> = removed.iter().map(|&v| vertex_label(v)).collect();
        inst.parts()
            .iter()
            .zip(&binaries)
            .map(|(part, tree)| {
                let keep: BTreeSet<Label> = part
                    .iter()
                    .map(|&v| vertex_label(v))
                    .filter(|l| !removed.contains(l))
                    .collect();
                tree.restrict(&keep)
                    .expect("keep is a subset of the part")
                    .expect("parts of size >= 3 lose at most 2 leaves")
            })
            .collect()
    };

    let control = PhyloTree::node(binaries.clone()).expect("k >= 3 disjoint parts");
    let mut trees = vec![control];
    for a in 1..=n {
        for b in (a + 1)..=n {
            let mut children = restricted_parts([a, b]);
            children.push(PhyloTree::leaf(vertex_label(a)));
            children.push(PhyloTree::leaf(vertex_label(b)));
            trees.push(PhyloTree::node(children).expect("re-grafted leaves were removed"));
        }
    }
    for (a, b) in inst.graph().edges() {
        let mut children = restricted_parts([a, b]);
        let cherry = PhyloTree::node(vec![
            PhyloTree::leaf(vertex_label(a)),
            PhyloTree::leaf(vertex_label(b)),
        ])
        .expect("edge endpoints are distinct");
        children.push(cherry);
        trees.push(PhyloTree::node(children).expect("re-grafted pair was removed"));
    }

    let collection = TreeCollection::new(trees)?;
    let q = k;
    let report = make_report(
        "pis1_to_ast",
        inst,
        q,
        k,
        k + 2,
        &collection,
    );
    debug_assert_eq!(report.max_degree, k + 2);
    Ok((q, collection, report))
}

/// Gadget construction from a multiplicity-2 instance to the compatible tree
/// question with target `q = 2k`.
///
/// Each part becomes a caterpillar and its reversal; a minimum-height binary
/// tree over the parts assembles the two control trees. Each edge collapses
/// the spine path between its endpoint parts and re-grafts the endpoint pair
/// below the merged node. With `repair`, an extra control tree pins the
/// collection's maximum degree to exactly `2*ceil(log2 k) + 1`.
pub fn pis2_to_ct(
    inst: &PartitionedInstance,
    repair: bool,
) -> Result<(usize, TreeCollection, ReductionReport), ReduceError> {
    if inst.multiplicity() != 2 {
        return Err(ReduceError::WrongMultiplicity {
            expected: 2,
            got: inst.multiplicity(),
        });
    }
    let k = inst.part_count();
    if k < 2 {
        return Err(ReduceError::TooFewParts { needed: 2, got: k });
    }
    let bound = 2 * ceil_log2(k) + 1;
    let min_part = if repair { bound } else { 2 };
    if inst.part_size() < min_part {
        return Err(ReduceError::PartTooSmall {
            needed: min_part,
            got: inst.part_size(),
        });
    }

    let ascending: Vec<Vec<Label>> = inst.parts().iter().map(part_labels_ascending).collect();
    let forward: Vec<PhyloTree> = ascending
        .iter()
        .map(|ls| caterpillar(ls))
        .collect::<Result<_, _>>()?;
    let backward: Vec<PhyloTree> = ascending
        .iter()
        .map(|ls| {
            let rev: Vec<Label> = ls.iter().rev().cloned().collect();
            caterpillar(&rev)
        })
        .collect::<Result<_, _>>()?;

    let spine_labels: Vec<Label> = (1..=k).map(Label::from).collect();
    let spine = min_height_binary(&spine_labels)?;
    let control = spine.substitute(&forward)?;
    let control_rev = spine.substitute(&backward)?;

    let mut trees = vec![control, control_rev];
    if repair {
        // Collapse the deepest run of consecutive internal edges of the first
        // part tree, producing one node of degree exactly `bound`.
        let edges_to_collapse = bound - 2;
        let labels = &ascending[0];
        let fan: Vec<PhyloTree> = labels[..edges_to_collapse + 2]
            .iter()
            .map(|l| PhyloTree::leaf(l.clone()))
            .collect();
        let mut collapsed = PhyloTree::node(fan).expect("part labels are distinct");
        for l in &labels[edges_to_collapse + 2..] {
            collapsed = PhyloTree::node(vec![collapsed, PhyloTree::leaf(l.clone())])
                .expect("part labels are distinct");
        }
        let mut parts_with_collapsed = forward.clone();
        parts_with_collapsed[0] = collapsed;
        trees.push(spine.substitute(&parts_with_collapsed)?);
    }

    let part_index = |v: usize| -> usize {
        inst.parts()
            .iter()
            .position(|p| p.contains(&v))
            .expect("parts cover all vertices")
            + 1
    };
    for (a, b) in inst.graph().edges() {
        let (i, j) = (part_index(a), part_index(b));
        debug_assert_ne!(i, j, "parts are independent sets");
        let (collapsed_spine, spine_cluster) =
            spine.collapse_leaf_path(&Label::from(i), &Label::from(j))?;
        let grafted_host = collapsed_spine.substitute(&forward)?;
        // The merged node's cluster in the substituted tree is the union of
        // the parts below it.
        let mut target: BTreeSet<Label> = spine_cluster
            .iter()
            .flat_map(|l| {
                let idx: usize = l.as_str().parse().expect("spine labels are part indices");
                ascending[idx - 1].iter().cloned()
            })
            .collect();
        let removed = [vertex_label(a), vertex_label(b)];
        let keep: BTreeSet<Label> = grafted_host
            .labels()
            .into_iter()
            .filter(|l| !removed.contains(l))
            .collect();
        let trimmed = grafted_host
            .restrict(&keep)?
            .expect("parts keep at least one leaf each");
        for l in &removed {
            target.remove(l);
        }
        let cherry = PhyloTree::node(vec![
            PhyloTree::leaf(removed[0].clone()),
            PhyloTree::leaf(removed[1].clone()),
        ])
        .expect("edge endpoints are distinct");
        trees.push(graft_at_cluster(&trimmed, &target, cherry));
    }

    let collection = TreeCollection::new(trees)?;
    let q = 2 * k;
    let report = make_report(
        if repair { "pis2_to_ct_repair" } else { "pis2_to_ct" },
        inst,
        q,
        k,
        bound,
        &collection,
    );
    debug_assert!(report.max_degree <= bound);
    debug_assert!(!repair || report.max_degree == bound);
    Ok((q, collection, report))
}

fn make_report(
    construction: &'static str,
    source: &PartitionedInstance,
    q: usize,
    k: usize,
    degree_bound: usize,
    collection: &TreeCollection,
) -> ReductionReport {
    ReductionReport {
        construction,
        source_digest: fnv1a64(&source.to_text()),
        produced_digest: fnv1a64(&write_gadget(q, k, collection)),
        q,
        k,
        max_degree: collection.max_degree(),
        degree_bound,
        tree_count: collection.len(),
        leaf_count: collection.leaf_count(),
    }
}

fn ceil_log2(k: usize) -> usize {
    if k <= 1 {
        0
    } else {
        ((k - 1).ilog2() + 1) as usize
    }
}

/// Adds `graft` as an extra child of the node whose cluster is `target`.
fn graft_at_cluster(tree: &PhyloTree, target: &BTreeSet<Label>, graft: PhyloTree) -> PhyloTree {
    if tree.labels() == *target {
        let mut children = tree.children();
        children.push(graft);
        return PhyloTree::node(children).expect("grafted leaves are disjoint from the host");
    }
    let mut children = tree.children();
    let pos = children
        .iter()
        .position(|c| target.is_subset(&c.labels()))
        .expect("target is a cluster of the host");
    children[pos] = graft_at_cluster(&children[pos], target, graft);
    PhyloTree::node(children).expect("children stay disjoint")
}

/// Which gadget pipeline the verification harness runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    Mast,
    Mct,
}

impl VerifyMode {
    pub fn name(self) -> &'static str {
        match self {
            VerifyMode::Mast => "mast",
            VerifyMode::Mct => "mct",
        }
    }
}

/// Outcome of one end-to-end verification run.
#[derive(Debug, Clone)]
pub struct VerificationRecord {
    pub mode: VerifyMode,
    pub k: usize,
    pub q: usize,
    /// Exact maximum independent set size of the source graph.
    pub is_size: usize,
    pub is_answer: bool,
    pub is_witness: Vec<usize>,
    pub gadget_answer: bool,
    /// The headline flag: source answer equals gadget answer.
    pub equivalent: bool,
    pub gadget_witness: Option<PhyloTree>,
    /// Source-graph vertices spelled by the gadget witness's leaves.
    pub selected_vertices: Option<Vec<usize>>,
    /// Gadget tree built from the independent-set witness.
    pub forward_witness: Option<PhyloTree>,
    /// Whether the forward witness passes its gadget-side checker.
    pub forward_witness_ok: Option<bool>,
    pub source_digest: String,
    pub produced_digest: String,
}

impl VerificationRecord {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("mode={}\n", self.mode.name()));
        out.push_str(&format!("k={}\nq={}\n", self.k, self.q));
        out.push_str(&format!(
            "is_size={}\nis_answer={}\n",
            self.is_size, self.is_answer
        ));
        out.push_str(&format!("gadget_answer={}\n", self.gadget_answer));
        out.push_str(&format!("equivalent={}\n", self.equivalent));
        if let Some(w) = &self.gadget_witness {
            out.push_str(&format!("gadget_witness={w}\n"));
        }
        if let Some(vs) = &self.selected_vertices {
            let rendered: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("selected_vertices={}\n", rendered.join(" ")));
        }
        if let Some(w) = &self.forward_witness {
            out.push_str(&format!("forward_witness={w}\n"));
        }
        if let Some(ok) = self.forward_witness_ok {
            out.push_str(&format!("forward_witness_ok={ok}\n"));
        }
        out.push_str(&format!("source=fnv1a64:{}\n", self.source_digest));
        out.push_str(&format!("produced=fnv1a64:{}\n", self.produced_digest));
        out
    }
}

/// Runs the full pipeline on a source graph and target `k`, solves the source
/// by exact independent set and the gadget by brute force, and reports both
/// answers, the equivalence flag, and witness translations both ways.
pub fn verify_reduction(
    k: usize,
    g: &Graph,
    mode: VerifyMode,
    subset_cap: u128,
) -> Result<VerificationRecord, ReduceError> {
    let (is_size, is_witness_set) = max_independent_set(g, DEFAULT_IS_CAP)?;
    let is_answer = is_size >= k;
    let is_witness: Vec<usize> = is_witness_set.iter().copied().collect();
    let nv = g.vertex_count();
    let pis1 = is_to_pis1(k, g)?;

    let (q, collection, report, gadget_witness) = match mode {
        VerifyMode::Mast => {
            let (q, collection, report) = pis1_to_ast(&pis1)?;
            check_subset_cap(collection.leaf_count(), q, subset_cap)?;
            let witness = agreement_subtree_of_size(&collection, q)?;
            (q, collection, report, witness)
        }
        VerifyMode::Mct => {
            let pis2 = pis_pad(&pis1);
            let (q, collection, report) = pis2_to_ct(&pis2, false)?;
            check_subset_cap(collection.leaf_count(), q, subset_cap)?;
            let witness = compatible_tree_of_size(&collection, q)?;
            (q, collection, report, witness)
        }
    };
    let gadget_answer = gadget_witness.is_some();

    // Gadget leaves name product-instance vertices; fold copies back onto the
    // source vertex range and drop padding vertices.
    let selected_vertices = gadget_witness.as_ref().map(|w| {
        let mut vs: Vec<usize> = w
            .labels()
            .iter()
            .map(|l| l.as_str().parse::<usize>().expect("gadget leaves are vertex numbers"))
            .filter(|&x| x <= k * nv)
            .map(|x| (x - 1) % nv + 1)
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    });

    let (forward_witness, forward_witness_ok) = if is_answer {
        let chosen: Vec<usize> = is_witness.iter().copied().take(k).collect();
        match mode {
            VerifyMode::Mast => {
                let leaves: Vec<PhyloTree> = chosen
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| PhyloTree::leaf(vertex_label(i * nv + v)))
                    .collect();
                let tree = PhyloTree::node(leaves).expect("k >= 3 distinct vertices");
                let ok = is_agreement_subtree(&tree, &collection)?;
                (Some(tree), Some(ok))
            }
            VerifyMode::Mct => {
                let pairs: Vec<PhyloTree> = chosen
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| {
                        PhyloTree::node(vec![
                            PhyloTree::leaf(vertex_label(i * nv + v)),
                            PhyloTree::leaf(vertex_label(k * nv + i + 1)),
                        ])
                        .expect("real and padding vertices differ")
                    })
                    .collect();
                let spine_labels: Vec<Label> = (1..=k).map(Label::from).collect();
                let tree = min_height_binary(&spine_labels)?.substitute(&pairs)?;
                let ok = is_compatible_with(&tree, &collection)?;
                (Some(tree), Some(ok))
            }
        }
    } else {
        (None, None)
    };

    Ok(VerificationRecord {
        mode,
        k,
        q,
        is_size,
        is_answer,
        is_witness,
        gadget_answer,
        equivalent: is_answer == gadget_answer,
        gadget_witness,
        selected_vertices,
        forward_witness,
        forward_witness_ok,
        source_digest: fnv1a64(&g.to_text()),
        produced_digest: report.produced_digest.clone(),
    })
}

fn check_subset_cap(n: usize, q: usize, cap: u128) -> Result<(), ReduceError> {
    let mut subsets: u128 = 1;
    for i in 0..q.min(n) {
        subsets = subsets.saturating_mul((n - i) as u128) / (i + 1) as u128;
        if subsets > cap {
            return Err(ReduceError::CapExceeded {
                reason: format!("C({n}, {q}) subsets exceed the cap of {cap}"),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{solve_pis, DEFAULT_PIS_CAP};
    use crate::tree::label_set;

    fn t(s: &str) -> PhyloTree {
        s.parse().unwrap()
    }

    fn triangle() -> Graph {
        Graph::new(3, [(1, 2), (2, 3), (1, 3)]).unwrap()
    }

    #[test]
    fn product_instance_shape() {
        let g = Graph::new(2, [(1, 2)]).unwrap();
        let inst = is_to_pis1(3, &g).unwrap();
        assert_eq!(inst.graph().vertex_count(), 6);
        assert_eq!(inst.part_count(), 3);
        assert_eq!(inst.part_size(), 2);
        assert_eq!(inst.multiplicity(), 1);
        // Same-vertex copies are adjacent, adjacent copies are adjacent,
        // nothing inside a part.
        assert!(inst.graph().has_edge(1, 3));
        assert!(inst.graph().has_edge(1, 4));
        assert!(!inst.graph().has_edge(1, 2));
    }

    #[test]
    fn product_single_vertex_is_solvable() {
        let g = Graph::new(1, []).unwrap();
        let inst = is_to_pis1(1, &g).unwrap();
        assert_eq!(inst.graph().vertex_count(), 1);
        assert_eq!(inst.graph().edge_count(), 0);
        assert_eq!(
            solve_pis(&inst, DEFAULT_PIS_CAP).unwrap(),
            Some(BTreeSet::from([1]))
        );
    }

    #[test]
    fn product_preserves_answer_on_small_grid() {
        // Cross-checked exhaustively in the acceptance suite; spot-check here.
        for (g, k, expect) in [
            (triangle(), 2, false),
            (triangle(), 1, true),
            (Graph::new(3, [(1, 2)]).unwrap(), 2, true),
        ] {
            let inst = is_to_pis1(k, &g).unwrap();
            let solvable = solve_pis(&inst, DEFAULT_PIS_CAP).unwrap().is_some();
            assert_eq!(solvable, expect, "k = {k}");
            let (size, _) = max_independent_set(&g, DEFAULT_IS_CAP).unwrap();
            assert_eq!(solvable, size >= k);
        }
    }

    #[test]
    fn padding_adds_one_isolated_vertex_per_part() {
        let inst = is_to_pis1(2, &Graph::new(2, [(1, 2)]).unwrap()).unwrap();
        let padded = pis_pad(&inst);
        assert_eq!(padded.multiplicity(), 2);
        assert_eq!(padded.part_size(), inst.part_size() + 1);
        assert_eq!(padded.graph().edge_count(), inst.graph().edge_count());
        assert_eq!(
            padded.graph().vertex_count(),
            inst.graph().vertex_count() + 2
        );
        // Padded parts contain the fresh vertices 5 and 6.
        assert!(padded.parts()[0].contains(&5));
        assert!(padded.parts()[1].contains(&6));
    }

    #[test]
    fn padding_preserves_solvability_both_ways() {
        for edges in [vec![], vec![(1, 2)], vec![(1, 2), (1, 3), (2, 3)]] {
            let g = Graph::new(3, edges).unwrap();
            let inst = is_to_pis1(2, &g).unwrap();
            let before = solve_pis(&inst, DEFAULT_PIS_CAP).unwrap().is_some();
            let after = solve_pis(&pis_pad(&inst), DEFAULT_PIS_CAP).unwrap().is_some();
            assert_eq!(before, after);
        }
    }

    fn three_part_worked_instance() -> PartitionedInstance {
        // Three parts of four vertices, one edge across the first two parts.
        let g = Graph::new(12, [(3, 6)]).unwrap();
        PartitionedInstance::new(
            g,
            vec![
                (1..=4).collect(),
                (5..=8).collect(),
                (9..=12).collect(),
            ],
            1,
        )
        .unwrap()
    }

    #[test]
    fn ast_gadget_shape_and_degrees() {
        let inst = three_part_worked_instance();
        let (q, coll, report) = pis1_to_ast(&inst).unwrap();
        assert_eq!(q, 3);
        // 1 control + C(12,2) pair trees + 1 selection tree.
        assert_eq!(coll.len(), 1 + 66 + 1);
        assert_eq!(coll.max_degree(), 5);
        assert_eq!(report.max_degree, 5);
        assert_eq!(report.degree_bound, 5);
        assert_eq!(report.leaf_count, 12);

        let control = &coll.trees()[0];
        assert_eq!(
            control,
            &t("((((1,2),3),4),(((5,6),7),8),(((9,10),11),12));")
        );
        // Root degrees: control k, pair trees k+2, selection trees k+1.
        assert_eq!(control.children().len(), 3);
        assert_eq!(coll.trees()[1].children().len(), 5);
        let selection = coll.trees().last().unwrap();
        assert_eq!(selection.children().len(), 4);
        assert_eq!(
            selection,
            &t("(((1,2),4),(3,6),((5,7),8),(((9,10),11),12));")
        );
    }

    #[test]
    fn ast_gadget_preconditions() {
        let g = Graph::new(2, []).unwrap();
        let inst = is_to_pis1(2, &g).unwrap();
        assert!(matches!(
            pis1_to_ast(&inst),
            Err(ReduceError::TooFewParts { needed: 3, .. })
        ));
        let inst = is_to_pis1(3, &g).unwrap();
        assert!(matches!(
            pis1_to_ast(&inst),
            Err(ReduceError::PartTooSmall { needed: 3, .. })
        ));
    }

    #[test]
    fn ct_gadget_controls_are_binary_and_q_is_2k() {
        let g = Graph::new(4, [(1, 2)]).unwrap();
        let inst = pis_pad(&is_to_pis1(2, &g).unwrap());
        let (q, coll, report) = pis2_to_ct(&inst, false).unwrap();
        assert_eq!(q, 4);
        assert_eq!(report.k, 2);
        assert_eq!(coll.trees()[0].max_degree(), 2);
        assert_eq!(coll.trees()[1].max_degree(), 2);
        assert!(report.max_degree <= report.degree_bound);
    }

    #[test]
    fn ct_gadget_selection_tree_regrafts_at_merged_node() {
        // Two parts of two vertices each; the single edge joins the parts.
        let g = Graph::new(4, [(1, 3)]).unwrap();
        let inst = PartitionedInstance::new(
            g,
            vec![BTreeSet::from([1, 2]), BTreeSet::from([3, 4])],
            2,
        )
        .unwrap();
        let (q, coll, _) = pis2_to_ct(&inst, false).unwrap();
        assert_eq!(q, 4);
        assert_eq!(coll.len(), 3);
        assert_eq!(coll.trees()[0], t("((1,2),(3,4));"));
        assert_eq!(coll.trees()[1], t("((1,2),(3,4));"));
        // Spine collapsed, endpoints re-grafted as a cherry under the root.
        assert_eq!(coll.trees()[2], t("((1,3),2,4);"));
    }

    #[test]
    fn ct_gadget_repair_pins_max_degree() {
        for k in [2usize, 3, 5, 8] {
            let bound = 2 * ceil_log2(k) + 1;
            let part = bound;
            let g = Graph::new(k * part, []).unwrap();
            let parts: Vec<BTreeSet<usize>> = (0..k)
                .map(|i| (i * part + 1..=(i + 1) * part).collect())
                .collect();
            let inst = PartitionedInstance::new(g, parts, 2).unwrap();
            let (_, coll, report) = pis2_to_ct(&inst, true).unwrap();
            assert_eq!(coll.max_degree(), bound, "k = {k}");
            assert_eq!(report.max_degree, bound);
            assert_eq!(report.degree_bound, bound);
        }
    }

    #[test]
    fn ct_gadget_repair_requires_large_parts() {
        let g = Graph::new(4, []).unwrap();
        let inst = PartitionedInstance::new(
            g,
            vec![BTreeSet::from([1, 2]), BTreeSet::from([3, 4])],
            2,
        )
        .unwrap();
        assert!(matches!(
            pis2_to_ct(&inst, true),
            Err(ReduceError::PartTooSmall { needed: 3, .. })
        ));
    }

    #[test]
    fn verify_triangle_is_a_no_instance_both_modes() {
        for mode in [VerifyMode::Mast, VerifyMode::Mct] {
            let record = verify_reduction(3, &triangle(), mode, DEFAULT_VERIFY_CAP).unwrap();
            assert_eq!(record.is_size, 1);
            assert!(!record.is_answer);
            assert!(!record.gadget_answer);
            assert!(record.equivalent);
        }
    }

    #[test]
    fn verify_edgeless_is_a_yes_instance_both_modes() {
        let g = Graph::new(3, []).unwrap();
        for mode in [VerifyMode::Mast, VerifyMode::Mct] {
            let record = verify_reduction(3, &g, mode, DEFAULT_VERIFY_CAP).unwrap();
            assert!(record.is_answer);
            assert!(record.gadget_answer);
            assert!(record.equivalent);
            assert_eq!(record.forward_witness_ok, Some(true));
            let witness = record.gadget_witness.unwrap();
            assert_eq!(witness.size(), record.q);
            // Every selected source vertex comes from the 3-vertex graph.
            let selected = record.selected_vertices.unwrap();
            assert!(selected.iter().all(|&v| (1..=3).contains(&v)));
        }
    }

    #[test]
    fn graft_at_cluster_inserts_below_the_right_node() {
        let host = t("((a,b),(c,d));");
        let grafted = graft_at_cluster(&host, &label_set(&["c", "d"]), t("(x,y);"));
        assert_eq!(grafted, t("((a,b),(c,d,(x,y)));"));
    }

    #[test]
    fn ceil_log2_values() {
        let expected = [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (8, 3), (9, 4), (16, 4), (17, 5)];
        for (k, want) in expected {
            assert_eq!(ceil_log2(k), want, "k = {k}");
        }
    }
}
