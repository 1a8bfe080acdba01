//! Z2 homology annotations for simplicial complexes.
//!
//! An annotation assigns every p-simplex a vector in `(Z2)^g`, `g = beta_p`,
//! so that the annotation of a cycle (sum over its simplices) is its class
//! coordinate in a fixed homology basis. Once built, homology queries reduce
//! to small linear algebra on annotation vectors.

pub mod annotate;
pub mod bits;
pub mod cli;
pub mod complex;
pub mod error;
pub mod generate;
pub mod optbasis;
pub mod opthom;
pub mod oracle;
pub mod queries;
pub mod z2;

pub use annotate::{annotate_cycle, build_annotation_index, AnnotationIndex, SentinelMethod, SentinelStructure};
pub use bits::BitVec;
pub use complex::{
    betti, boundary_matrix, is_cycle, parse_chain, parse_complex, Chain, ParseOptions, SimplicialComplex,
};
pub use error::{Error, Result};
pub use optbasis::{shortest_homology_basis, HomologyBasis};
pub use opthom::{all_class_optima, shortest_homologous_cycle, ClassOptima};
pub use queries::{are_homologous, is_null_homologous, max_independent_subset};
pub use z2::Z2Matrix;
