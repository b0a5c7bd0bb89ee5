//! Rooted, unordered, bijectively leaf-labeled trees.
//!
//! Trees are kept in canonical form: the children of every internal node are
//! ordered by their smallest descendant leaf label. Equality, ordering and
//! serialization therefore all agree with equality of unordered trees.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

mod construct;
mod parse;

pub use construct::{caterpillar, enumerate_trees, min_height_binary, DEFAULT_ENUMERATION_LIMIT};
pub use parse::parse_tree;

/// Errors raised by tree construction, parsing and tree operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("duplicate leaf label `{0}`")]
    DuplicateLabel(Label),
    #[error("internal node with fewer than two children")]
    UnderfullNode,
    #[error("invalid label `{0}`: labels are nonempty tokens over [A-Za-z0-9_]")]
    InvalidLabel(String),
    #[error("label `{0}` is not a leaf of the tree")]
    UnknownLabel(Label),
    #[error("leaf sets differ")]
    LeafSetMismatch,
    #[error("leaf arguments must be distinct")]
    LeavesNotDistinct,
    #[error("substitution host must be a tree on labels 1..={expected}")]
    BadSubstitutionHost { expected: usize },
    #[error("part leaf sets overlap on `{0}`")]
    OverlappingParts(Label),
    #[error("empty input")]
    EmptyInput,
    #[error("{got} labels exceed the enumeration limit {limit}")]
    EnumerationLimit { got: usize, limit: usize },
    #[error("collection is empty")]
    EmptyCollection,
}

/// A leaf label: a nonempty token over `[A-Za-z0-9_]`.
///
/// Labels order lexicographically by their text, which is the order used for
/// canonical child ordering and every deterministic scan in the crate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(String);

impl Label {
    pub fn new(name: impl Into<String>) -> Result<Self, TreeError> {
        let name = name.into();
        if name.is_empty() || !name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_') {
            return Err(TreeError::InvalidLabel(name));
        }
        Ok(Label(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<usize> for Label {
    fn from(n: usize) -> Self {
        Label(n.to_string())
    }
}

impl FromStr for Label {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Label::new(s)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Label({})", self.0)
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Node {
    Leaf(Label),
    Internal(Vec<Node>),
}

impl Node {
    /// Smallest descendant leaf label. With canonical child order this is the
    /// leftmost leaf.
    fn min_label(&self) -> &Label {
        match self {
            Node::Leaf(l) => l,
            Node::Internal(children) => children[0].min_label(),
        }
    }

    fn contains(&self, label: &Label) -> bool {
        match self {
            Node::Leaf(l) => l == label,
            Node::Internal(children) => children.iter().any(|c| c.contains(label)),
        }
    }

    fn collect_labels(&self, out: &mut BTreeSet<Label>) {
        match self {
            Node::Leaf(l) => {
                out.insert(l.clone());
            }
            Node::Internal(children) => {
                for c in children {
                    c.collect_labels(out);
                }
            }
        }
    }
}

/// Restores canonical child order after children were built or rewritten.
fn sort_children(children: &mut [Node]) {
    children.sort_by(|a, b| a.min_label().cmp(b.min_label()));
}

/// Size, maximum degree and height of a tree.
///
/// The degree of a node is its number of children; leaves have degree 0 and
/// height 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeStats {
    pub leaf_count: usize,
    pub max_degree: usize,
    pub height: usize,
}

/// A rooted evolutionary tree: unordered, bijectively leaf-labeled, every
/// internal node with at least two children.
///
/// Values are immutable and canonical, so `==` decides equality of unordered
/// leaf-labeled trees and [`fmt::Display`] yields the canonical serialization.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PhyloTree {
    root: Node,
}

impl PhyloTree {
    /// The single-leaf tree.
    pub fn leaf(label: Label) -> Self {
        PhyloTree {
            root: Node::Leaf(label),
        }
    }

    /// A tree whose root has the given child subtrees.
    ///
    /// Fails when fewer than two children are given or when the children's
    /// leaf sets are not pairwise disjoint.
    pub fn node(children: Vec<PhyloTree>) -> Result<Self, TreeError> {
        if children.len() < 2 {
            return Err(TreeError::UnderfullNode);
        }
        let mut seen = BTreeSet::new();
        for child in &children {
            for label in child.labels() {
                if !seen.insert(label.clone()) {
                    return Err(TreeError::DuplicateLabel(label));
                }
            }
        }
        let mut nodes: Vec<Node> = children.into_iter().map(|t| t.root).collect();
        sort_children(&mut nodes);
        Ok(PhyloTree {
            root: Node::Internal(nodes),
        })
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self.root, Node::Leaf(_))
    }

    /// The label when the tree is a single leaf.
    pub fn leaf_label(&self) -> Option<&Label> {
        match &self.root {
            Node::Leaf(l) => Some(l),
            Node::Internal(_) => None,
        }
    }

    /// The root's child subtrees, in canonical order. Empty for a leaf.
    pub fn children(&self) -> Vec<PhyloTree> {
        match &self.root {
            Node::Leaf(_) => Vec::new(),
            Node::Internal(children) => children
                .iter()
                .map(|n| PhyloTree { root: n.clone() })
                .collect(),
        }
    }

    /// The leaf label set L(T).
    pub fn labels(&self) -> BTreeSet<Label> {
        let mut out = BTreeSet::new();
        self.root.collect_labels(&mut out);
        out
    }

    pub fn contains_label(&self, label: &Label) -> bool {
        self.root.contains(label)
    }

    /// Number of leaves.
    pub fn size(&self) -> usize {
        fn count(n: &Node) -> usize {
            match n {
                Node::Leaf(_) => 1,
                Node::Internal(children) => children.iter().map(count).sum(),
            }
        }
        count(&self.root)
    }

    /// Largest degree over all nodes; 0 for a single leaf.
    pub fn max_degree(&self) -> usize {
        fn walk(n: &Node) -> usize {
            match n {
                Node::Leaf(_) => 0,
                Node::Internal(children) => children
                    .len()
                    .max(children.iter().map(walk).max().unwrap_or(0)),
            }
        }
        walk(&self.root)
    }

    pub fn height(&self) -> usize {
        fn walk(n: &Node) -> usize {
            match n {
                Node::Leaf(_) => 0,
                Node::Internal(children) => 1 + children.iter().map(walk).max().unwrap_or(0),
            }
        }
        walk(&self.root)
    }

    pub fn stats(&self) -> TreeStats {
        TreeStats {
            leaf_count: self.size(),
            max_degree: self.max_degree(),
            height: self.height(),
        }
    }

    /// Topological restriction T|X.
    ///
    /// Keeps exactly the leaves in `X`, suppressing internal nodes left with a
    /// single child. Returns `None` for `X = ∅` and an error when `X` is not a
    /// subset of the leaf set.
    pub fn restrict(&self, x: &BTreeSet<Label>) -> Result<Option<PhyloTree>, TreeError> {
        let labels = self.labels();
        if let Some(missing) = x.iter().find(|l| !labels.contains(*l)) {
            return Err(TreeError::UnknownLabel(missing.clone()));
        }
        Ok(restrict_node(&self.root, x).map(|root| PhyloTree { root }))
    }

    /// Restriction without the subset precondition check, for internal loops
    /// where `x` is already known to be a subset of the leaf set.
    pub(crate) fn restrict_within(&self, x: &BTreeSet<Label>) -> Option<PhyloTree> {
        restrict_node(&self.root, x).map(|root| PhyloTree { root })
    }

    /// All clusters of the tree: the leaf set below every node, so every
    /// singleton and the full leaf set are always present.
    pub fn clusters(&self) -> BTreeSet<BTreeSet<Label>> {
        fn walk(n: &Node, out: &mut BTreeSet<BTreeSet<Label>>) -> BTreeSet<Label> {
            let set = match n {
                Node::Leaf(l) => BTreeSet::from([l.clone()]),
                Node::Internal(children) => {
                    let mut set = BTreeSet::new();
                    for c in children {
                        set.extend(walk(c, out));
                    }
                    set
                }
            };
            out.insert(set.clone());
            set
        }
        let mut out = BTreeSet::new();
        walk(&self.root, &mut out);
        out
    }

    /// Whether `self` refines `other`: `other` can be obtained from `self` by
    /// collapsing internal edges, equivalently every cluster of `other` is a
    /// cluster of `self`. Both trees must share one leaf set.
    pub fn refines(&self, other: &PhyloTree) -> Result<bool, TreeError> {
        if self.labels() != other.labels() {
            return Err(TreeError::LeafSetMismatch);
        }
        let own = self.clusters();
        Ok(other.clusters().is_subset(&own))
    }

    /// Replaces leaf `i` of a tree on 1..=n with `parts[i-1]`.
    ///
    /// The parts must have pairwise disjoint leaf sets.
    pub fn substitute(&self, parts: &[PhyloTree]) -> Result<PhyloTree, TreeError> {
        let n = parts.len();
        let expected: BTreeSet<Label> = (1..=n).map(Label::from).collect();
        if self.labels() != expected {
            return Err(TreeError::BadSubstitutionHost { expected: n });
        }
        let mut seen: BTreeSet<Label> = BTreeSet::new();
        for part in parts {
            for label in part.labels() {
                if !seen.insert(label.clone()) {
                    return Err(TreeError::OverlappingParts(label));
                }
            }
        }
        let by_label: BTreeMap<Label, &PhyloTree> = (1..=n)
            .map(Label::from)
            .zip(parts.iter())
            .collect();

        fn subst(n: &Node, parts: &BTreeMap<Label, &PhyloTree>) -> Node {
            match n {
                Node::Leaf(l) => parts[l].root.clone(),
                Node::Internal(children) => {
                    let mut rebuilt: Vec<Node> =
                        children.iter().map(|c| subst(c, parts)).collect();
                    sort_children(&mut rebuilt);
                    Node::Internal(rebuilt)
                }
            }
        }
        Ok(PhyloTree {
            root: subst(&self.root, &by_label),
        })
    }

    /// Collapses every internal edge on the path between leaves `a` and `b`.
    ///
    /// All internal nodes on that path merge into a single node, the least
    /// common ancestor of `a` and `b` in the result. Returns the rewritten
    /// tree together with the cluster of that merged node, which identifies it
    /// canonically.
    pub fn collapse_leaf_path(
        &self,
        a: &Label,
        b: &Label,
    ) -> Result<(PhyloTree, BTreeSet<Label>), TreeError> {
        if a == b {
            return Err(TreeError::LeavesNotDistinct);
        }
        for l in [a, b] {
            if !self.root.contains(l) {
                return Err(TreeError::UnknownLabel(l.clone()));
            }
        }
        // A leaf root cannot hold two distinct leaves, so the root is internal
        // from here on.

        // Collects the merged node's children along one arm of the path: every
        // subtree hanging off the arm plus the endpoint leaf itself.
        fn collect_arm(n: &Node, target: &Label) -> Vec<Node> {
            match n {
                Node::Leaf(_) => vec![n.clone()],
                Node::Internal(children) => {
                    let mut out = Vec::new();
                    for c in children {
                        if c.contains(target) {
                            out.extend(collect_arm(c, target));
                        } else {
                            out.push(c.clone());
                        }
                    }
                    out
                }
            }
        }

        fn rebuild(n: &Node, a: &Label, b: &Label, lca_cluster: &mut BTreeSet<Label>) -> Node {
            let Node::Internal(children) = n else {
                unreachable!("descent stops at the node separating a and b");
            };
            let pos_a = children.iter().position(|c| c.contains(a)).unwrap();
            let pos_b = children.iter().position(|c| c.contains(b)).unwrap();
            if pos_a == pos_b {
                let mut rebuilt: Vec<Node> = children.clone();
                rebuilt[pos_a] = rebuild(&children[pos_a], a, b, lca_cluster);
                sort_children(&mut rebuilt);
                return Node::Internal(rebuilt);
            }
            // This node is the LCA; merge both arms into it.
            n.collect_labels(lca_cluster);
            let mut merged: Vec<Node> = Vec::new();
            for (i, c) in children.iter().enumerate() {
                if i == pos_a {
                    merged.extend(collect_arm(c, a));
                } else if i == pos_b {
                    merged.extend(collect_arm(c, b));
                } else {
                    merged.push(c.clone());
                }
            }
            sort_children(&mut merged);
            Node::Internal(merged)
        }

        let mut lca_cluster = BTreeSet::new();
        let root = rebuild(&self.root, a, b, &mut lca_cluster);
        Ok((PhyloTree { root }, lca_cluster))
    }
}

fn restrict_node(n: &Node, x: &BTreeSet<Label>) -> Option<Node> {
    match n {
        Node::Leaf(l) => x.contains(l).then(|| Node::Leaf(l.clone())),
        Node::Internal(children) => {
            let mut kept: Vec<Node> = children.iter().filter_map(|c| restrict_node(c, x)).collect();
            match kept.len() {
                0 => None,
                1 => kept.pop(),
                _ => {
                    sort_children(&mut kept);
                    Some(Node::Internal(kept))
                }
            }
        }
    }
}

impl fmt::Display for PhyloTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn write_node(n: &Node, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match n {
                Node::Leaf(l) => f.write_str(l.as_str()),
                Node::Internal(children) => {
                    f.write_str("(")?;
                    for (i, c) in children.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write_node(c, f)?;
                    }
                    f.write_str(")")
                }
            }
        }
        write_node(&self.root, f)?;
        f.write_str(";")
    }
}

impl fmt::Debug for PhyloTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PhyloTree({})", self)
    }
}

impl FromStr for PhyloTree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_tree(s)
    }
}

/// An ordered collection of trees sharing one leaf set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeCollection {
    trees: Vec<PhyloTree>,
    leaf_set: BTreeSet<Label>,
    max_degree: usize,
}

impl TreeCollection {
    pub fn new(trees: Vec<PhyloTree>) -> Result<Self, TreeError> {
        let Some(first) = trees.first() else {
            return Err(TreeError::EmptyCollection);
        };
        let leaf_set = first.labels();
        if trees.iter().skip(1).any(|t| t.labels() != leaf_set) {
            return Err(TreeError::LeafSetMismatch);
        }
        let max_degree = trees.iter().map(|t| t.max_degree()).max().unwrap_or(0);
        Ok(TreeCollection {
            trees,
            leaf_set,
            max_degree,
        })
    }

    pub fn trees(&self) -> &[PhyloTree] {
        &self.trees
    }

    /// The common leaf set.
    pub fn leaf_set(&self) -> &BTreeSet<Label> {
        &self.leaf_set
    }

    /// Number of leaves in the common leaf set.
    pub fn leaf_count(&self) -> usize {
        self.leaf_set.len()
    }

    /// Number of member trees.
    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// The maximum degree D over all members.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// One canonical tree expression per line. Gadget files produced by the
    /// reductions carry an extra `q .. k .. D ..` header line on top of this.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for tree in &self.trees {
            out.push_str(&tree.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses a collection file: one tree expression per line, skipping an
    /// optional leading `q .. k .. D ..` header and blank lines.
    pub fn from_text(text: &str) -> Result<Self, TreeError> {
        let mut trees = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (i == 0 && line.starts_with("q ")) {
                continue;
            }
            trees.push(parse_tree(line)?);
        }
        TreeCollection::new(trees)
    }
}

/// Convenience for tests and construction code: labels from display strings.
///
/// Panics on invalid label text, so only use with literals.
pub fn label(name: &str) -> Label {
    Label::new(name).expect("valid label literal")
}

/// Label set from display strings. Panics on invalid text.
pub fn label_set(names: &[&str]) -> BTreeSet<Label> {
    names.iter().map(|n| label(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> PhyloTree {
        s.parse().unwrap()
    }

    #[test]
    fn trees_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<PhyloTree>();
        assert_send_sync::<TreeCollection>();
        assert_send_sync::<Label>();
    }

    #[test]
    fn labels_validate_token_alphabet() {
        assert!(Label::new("abc_01").is_ok());
        assert_eq!(Label::new(""), Err(TreeError::InvalidLabel(String::new())));
        assert!(matches!(Label::new("a b"), Err(TreeError::InvalidLabel(_))));
        assert!(matches!(Label::new("a-b"), Err(TreeError::InvalidLabel(_))));
    }

    #[test]
    fn node_requires_two_children() {
        let leaf = PhyloTree::leaf(label("a"));
        assert_eq!(PhyloTree::node(vec![leaf]), Err(TreeError::UnderfullNode));
    }

    #[test]
    fn node_rejects_duplicate_labels() {
        let a1 = PhyloTree::leaf(label("a"));
        let a2 = PhyloTree::leaf(label("a"));
        assert_eq!(
            PhyloTree::node(vec![a1, a2]),
            Err(TreeError::DuplicateLabel(label("a")))
        );
    }

    #[test]
    fn children_are_unordered() {
        assert_eq!(t("(a,b);"), t("(b,a);"));
        assert_eq!(t("((c,b),a);"), t("(a,(b,c));"));
        let x = t("((a,b),c);");
        assert_eq!(x, x);
    }

    #[test]
    fn star_and_binary_resolution_differ() {
        assert_ne!(t("((a,b),c);"), t("(a,b,c);"));
    }

    #[test]
    fn stats_of_named_shapes() {
        let leaf = t("x;");
        assert_eq!(
            leaf.stats(),
            TreeStats {
                leaf_count: 1,
                max_degree: 0,
                height: 0
            }
        );
        let star = t("(a,b,c);");
        assert_eq!(
            star.stats(),
            TreeStats {
                leaf_count: 3,
                max_degree: 3,
                height: 1
            }
        );
        // Left-deep binary caterpillar on five leaves.
        let r5 = t("((((1,2),3),4),5);");
        assert_eq!(
            r5.stats(),
            TreeStats {
                leaf_count: 5,
                max_degree: 2,
                height: 4
            }
        );
    }

    #[test]
    fn restrict_leaf_basis() {
        let leaf = t("x;");
        let out = leaf.restrict(&label_set(&["x"])).unwrap();
        assert_eq!(out, Some(t("x;")));
    }

    #[test]
    fn restrict_to_empty_set_is_empty() {
        for s in ["x;", "(a,b,c);", "((a,b),(c,d));"] {
            assert_eq!(t(s).restrict(&BTreeSet::new()).unwrap(), None);
        }
    }

    #[test]
    fn restrict_inductive_step() {
        let tree = t("((a,b),(c,d));");
        let out = tree.restrict(&label_set(&["a", "c", "d"])).unwrap().unwrap();
        assert_eq!(out, t("(a,(c,d));"));
    }

    #[test]
    fn restrict_rejects_foreign_labels() {
        let tree = t("(a,b);");
        assert_eq!(
            tree.restrict(&label_set(&["a", "z"])),
            Err(TreeError::UnknownLabel(label("z")))
        );
    }

    #[test]
    fn restrict_full_set_is_identity() {
        let tree = t("((a,b),(c,(d,e,f)));");
        assert_eq!(tree.restrict(&tree.labels()).unwrap(), Some(tree.clone()));
    }

    #[test]
    fn clusters_read_off() {
        let tree = t("((a,b),c);");
        let expected: BTreeSet<BTreeSet<Label>> = [
            label_set(&["a"]),
            label_set(&["b"]),
            label_set(&["c"]),
            label_set(&["a", "b"]),
            label_set(&["a", "b", "c"]),
        ]
        .into_iter()
        .collect();
        assert_eq!(tree.clusters(), expected);

        assert_eq!(t("x;").clusters().len(), 1);
    }

    #[test]
    fn binary_tree_has_2n_minus_1_clusters() {
        let tree = t("(((a,b),(c,d)),(e,f));");
        assert_eq!(tree.clusters().len(), 2 * 6 - 1);
    }

    #[test]
    fn refines_examples() {
        let binary = t("((a,b),c);");
        let star = t("(a,b,c);");
        assert!(binary.refines(&binary).unwrap());
        assert!(binary.refines(&star).unwrap());
        assert!(!star.refines(&binary).unwrap());
        // {a,c} is not a cluster of ((a,b),c).
        assert!(!binary.refines(&t("((a,c),b);")).unwrap());
        assert_eq!(
            binary.refines(&t("(a,b);")),
            Err(TreeError::LeafSetMismatch)
        );
    }

    #[test]
    fn substitute_worked_example() {
        let host = t("((1,2),(3,(4,5)),6);");
        let parts = [
            t("(2,3);"),
            t("1;"),
            t("(6,7,8);"),
            t("4;"),
            t("5;"),
            t("((9,11),10);"),
        ];
        let out = host.substitute(&parts).unwrap();
        assert_eq!(out, t("((1,(2,3)),((4,5),(6,7,8)),((9,11),10));"));
    }

    #[test]
    fn substitute_identity_and_pair() {
        let single = t("1;");
        let sub = t("(x,(y,z));");
        assert_eq!(single.substitute(std::slice::from_ref(&sub)).unwrap(), sub);

        let pair = t("(1,2);");
        let out = pair.substitute(&[t("x;"), t("y;")]).unwrap();
        assert_eq!(out, t("(x,y);"));
    }

    #[test]
    fn substitute_rejects_bad_host_and_overlap() {
        let host = t("(a,b);");
        assert_eq!(
            host.substitute(&[t("x;"), t("y;")]),
            Err(TreeError::BadSubstitutionHost { expected: 2 })
        );
        let host = t("(1,2);");
        assert_eq!(
            host.substitute(&[t("(x,y);"), t("(y,z);")]),
            Err(TreeError::OverlappingParts(label("y")))
        );
    }

    #[test]
    fn collapse_leaf_path_examples() {
        // Balanced shapes used by the gadget constructions.
        let h5 = t("(((1,2),(3,4)),5);");
        let (out, lambda) = h5.collapse_leaf_path(&label("1"), &label("4")).unwrap();
        assert_eq!(out, t("((1,2,3,4),5);"));
        assert_eq!(lambda, label_set(&["1", "2", "3", "4"]));

        // The 3-5 path runs through the root, so every internal node on it
        // merges into the root.
        let h8 = t("(((1,2),(3,4)),((5,6),(7,8)));");
        let (out, lambda) = h8.collapse_leaf_path(&label("3"), &label("5")).unwrap();
        assert_eq!(out, t("((1,2),3,4,5,6,(7,8));"));
        assert_eq!(lambda, label_set(&["1", "2", "3", "4", "5", "6", "7", "8"]));

        let (out, lambda) = h8.collapse_leaf_path(&label("1"), &label("4")).unwrap();
        assert_eq!(out, t("((1,2,3,4),((5,6),(7,8)));"));
        assert_eq!(lambda, label_set(&["1", "2", "3", "4"]));
    }

    #[test]
    fn collapse_siblings_is_identity() {
        let h = t("(((1,2),(3,4)),5);");
        let (out, lambda) = h.collapse_leaf_path(&label("1"), &label("2")).unwrap();
        assert_eq!(out, h);
        assert_eq!(lambda, label_set(&["1", "2"]));
    }

    #[test]
    fn collapse_rejects_bad_leaves() {
        let h = t("((1,2),3);");
        assert_eq!(
            h.collapse_leaf_path(&label("1"), &label("1")),
            Err(TreeError::LeavesNotDistinct)
        );
        assert_eq!(
            h.collapse_leaf_path(&label("1"), &label("9")),
            Err(TreeError::UnknownLabel(label("9")))
        );
    }

    #[test]
    fn collection_checks_common_leaf_set() {
        let coll = TreeCollection::new(vec![t("((a,b),c);"), t("(a,b,c);")]).unwrap();
        assert_eq!(coll.len(), 2);
        assert_eq!(coll.leaf_count(), 3);
        assert_eq!(coll.max_degree(), 3);

        assert_eq!(
            TreeCollection::new(vec![t("(a,b);"), t("(a,c);")]),
            Err(TreeError::LeafSetMismatch)
        );
        assert_eq!(TreeCollection::new(vec![]), Err(TreeError::EmptyCollection));
    }
}
