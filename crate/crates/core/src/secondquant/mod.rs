//! Second quantization proper: the lifts `q` and `Q`, quasi-free
//! representations, normal ordering, Schwinger terms and the boson
//! Bogoliubov picture.

mod anomaly;
mod kg;
mod lift;
mod quasifree;

pub use anomaly::{
    cocycle_check, commutator_anomaly_check, projective_phase, schwinger_term, ProjectivePhase, SchwingerResult,
    BRANCH_CUT_TOL,
};
pub use kg::{
    bogoliubov_normal_ordered_q, boson_commutator_probe, commutator_form, kg_rep_zero, BogoliubovNormalOrdered,
    CommutatorForm, KgRepZero, ProbeResult, PAIR_MARGIN,
};
pub use lift::{big_q_of, big_q_with, normalized_q, number_operator, q_of, LinearFunctional};
pub use quasifree::{normal_ordered_q, offdiagonal_hs_norms, quasifree_fields, QuasiFreeRep};
