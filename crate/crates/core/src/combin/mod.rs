//! Partitions, multi-indices, permutations and the tableau sets indexing the bases.

mod cosets;
mod multiindex;
mod partition;
mod perm;
mod tableaux;

pub use cosets::{
    brauer_rank_sum, coset_reps_d_f, coset_reps_d_nu, d_0, d_0_word, d_j, d_j_word, double_factorial_odd,
    factor_through_d_j, in_d_nu, subsets, EnyangCosetData,
};
pub use multiindex::{all_multi_indices, bwt, prime, symplectic_length, wt, MultiIndex};
pub use partition::{
    lambda_n, order_prec, partitions_bounded, std_count, CombinError, Partition, PrecOrder,
};
pub use perm::{all_permutations, word_string, Permutation};
pub use tableaux::{column_cells, hat_i_lambda, i_lambda, mys_tableaux, weyl_dim_sp};
