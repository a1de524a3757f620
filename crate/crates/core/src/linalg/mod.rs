//! Exact dense matrices and the transition matrices `B_n` from the
//! q-fundamental basis to the enriched q-monomial basis.

mod matrix;
mod transition;

pub use matrix::{fraction_free_rank, ExactMatrix};
pub use transition::{
    a_block, build_b_direct, build_b_recursive, coefficient_closed_form, coefficient_sequence,
    kernel_block_identity, kernel_dimension_table, subset_order, CoefficientPair, KernelRow,
};
