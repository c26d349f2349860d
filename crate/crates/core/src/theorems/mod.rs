//! Experiment drivers. Each function instantiates one distribution claim as
//! an exact or seed-pinned statistical check and returns a structured result
//! that renders as a line-oriented [`Report`](crate::report::Report).

mod example2;
mod fair;
mod lemmas;
mod mc;
mod prop;
mod thm2;
mod thm3;

pub use example2::{example2_check, nets_check, quadratic_identity_residuals};
pub use fair::{minimal_u, stacked_rank, thm1_fair_count, thm1_sweep, FairCount, FairCountQuery};
pub use lemmas::{lemma56_sweep, lemma5_check, lemma6_check, Lemma6Outcome};
pub use mc::{
    growth_study, lemma3_mc, lemma4_mc, sample_seed, CylinderSpec, Lemma3Result, Lemma4Result,
};
pub use prop::{
    prop1_check, prop2_bound, Prop1Report, Prop1Row, Prop2Bound, Prop2Term, PROP1_NET_MAX_M,
};
pub use thm2::{growth_flag, thm2_normalizer, thm2_scaling, Thm2Row, Thm2Table};
pub use thm3::{thm3_witness, Thm3Witness};
