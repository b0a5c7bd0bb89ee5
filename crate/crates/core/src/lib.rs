//! Toolkit for comparing rooted leaf-labeled trees.
//!
//! The crate provides:
//!
//! - a tree kernel (parsing, canonical serialization, restriction,
//!   refinement, the standard caterpillar/balanced constructions),
//! - agreement and compatibility predicates over tree collections,
//! - exact solvers for Maximum Agreement SubTree (MAST), Maximum Compatible
//!   Tree (MCT) and Independent Set: brute-force oracles plus
//!   leaf-deletion branching solvers,
//! - executable gadget reductions from (partitioned) Independent Set to the
//!   decision versions of MAST and MCT, with degree certificates and an
//!   end-to-end verification harness.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything here is safe to share across threads.
//!
//! ```
//! use mastkit::solvers::{mast_bruteforce, mct_bruteforce, DEFAULT_MAST_CAP, DEFAULT_MCT_CAP};
//! use mastkit::tree::TreeCollection;
//!
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! let coll = TreeCollection::from_text("((a,b),c);\n(a,b,c);\n")?;
//!
//! // The star disagrees with the binary tree on the full leaf set...
//! let (mast_size, mast_witness) = mast_bruteforce(&coll, DEFAULT_MAST_CAP)?;
//! assert_eq!((mast_size, mast_witness.to_string().as_str()), (2, "(a,b);"));
//!
//! // ...but the binary tree refines it.
//! let (mct_size, mct_witness) = mct_bruteforce(&coll, DEFAULT_MCT_CAP)?;
//! assert_eq!((mct_size, mct_witness.to_string().as_str()), (3, "((a,b),c);"));
//! # Ok(())
//! # }
//! ```

pub mod agreement;
pub mod generate;
pub mod graph;
pub mod reductions;
pub mod solvers;
pub mod tree;

pub use graph::{Graph, GraphError, PartitionedInstance};
pub use tree::{Label, PhyloTree, TreeCollection, TreeError};
