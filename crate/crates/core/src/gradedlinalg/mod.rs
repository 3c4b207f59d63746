//! Degreewise exact linear algebra over the polynomial ring: congruence
//! systems are solved one homogeneous slice at a time.

mod generators;
mod layout;
mod sparse;

pub use generators::{
    condition_rref, generators_of_system, membership, membership_ordered, minimal_generators, solve_slice, Generator,
    GeneratorSet, SliceBasis,
};
pub use layout::{Congruence, GradedLayout, SliceColumns, Slot};
pub use sparse::{axpy, solve_linear, sparse_from_map, Rref, SparseVec};
