//! Reach probabilities, exact oracles, theoretical constants and empirical
//! checks of the collision bounds.

pub mod exact;
pub mod lemmas;
pub mod params;
pub mod reach;

pub use exact::{exact_rbfs_oracle, exact_stream_oracle, Distribution};
pub use lemmas::{verify_lemmas, verify_lemmas_exact, ExactLemmaReport, LemmaCheck, LemmaReport};
pub use params::{theoretical_params, HqSize, Params};
pub use reach::{
    estimate_reach_vertex, exact_reach_vertex, extract_v_alpha, monte_carlo_stream_lower_bound,
    verify_stream_lower_bound, CstReport, McCstReport, ReachEstimate, VAlphaReport,
};
