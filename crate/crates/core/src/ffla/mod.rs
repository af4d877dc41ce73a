//! Exact linear algebra over prime fields and cohomology of finite complex slices.

mod complex;
mod echelon;
mod field;
mod sparse;

pub use complex::{chain_section, homology, homology_from_maps, ComplexSlice, HomologySlice};
pub use echelon::{dense_rank, rank_kernel_image, Echelon, Eliminator, RankKernel, Reduction};
pub use field::{FieldScalar, Fp};
pub use sparse::{Accumulator, SparseMatrix, SparseVec};
