//! Distribution diagnostics: ranks over `F_p`, `t`-values, net checks, box
//! counts and exact star discrepancy. All arithmetic is exact.

mod boxes;
mod disc;
mod matrix;
mod net;

pub use boxes::{count_in_box, extreme_disc_lower_bound, Bound, Box, Side};
pub use disc::{
    extreme_upper_from_star, star_disc_1d, star_disc_exact, star_disc_exact_capped,
    STAR_DISC_MAX_DIM, STAR_DISC_MAX_POINTS,
};
pub use matrix::{rank_fp, FpMatrix};
pub use net::{
    compositions, is_net, stacked_full_rank, t_param, t_param_truncated, NetReport, Violation,
    T_PARAM_MAX_DIM, T_PARAM_MAX_M,
};
