//! Evaluators for eigenvalue inequalities. Each returns a [`BoundReport`]
//! with the left side, the constant-free right side and, where the
//! constant is known, whether the inequality holds.

mod operators;
mod report;
mod sums;

pub use operators::{
    birman_schwinger_zeros, check_bs_principle, check_bssobolev, check_frsa_endpoint, check_hansmann_chain, check_kss,
    check_prop_res, check_resolvent_identity, check_trivial_resolvent, momentum_integral, weighted_resolvent, BsCheck,
    HansmannChain, BS_TOLERANCE,
};
pub use report::{read_reports_csv, write_reports_csv, write_reports_json, BoundReport, ConstantUsed, ReportParams};
pub use sums::{
    check_davies, check_dhk, check_dn, check_ltfrsa, check_main1, check_main1cor, check_main2, check_main3,
    check_main3_corollary, check_main3proofkey, dhk_comparison_terms, pointwise_reports,
};
