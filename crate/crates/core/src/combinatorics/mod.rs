//! Subsets, compositions, permutations and their descent/peak statistics.

mod composition;
mod index_set;
mod peaks;
mod permutation;

pub use composition::Composition;
pub use index_set::{IndexSet, MAX_AMBIENT};
pub use peaks::{
    binomial, count_extended_peak_sets, count_lacunar_subsets, enumerate_extended_peak_sets,
    extended_peak_statistic, is_extended_peak_set, peak_set_of_subset,
};
pub use permutation::{
    canonical_permutation_with_descents, coshuffles, descent_set, peak_set, standardize, Permutation,
};
