//! Formulas over typed statements, the Hilbert system, and proof search.

mod axioms;
mod builder;
mod deduction;
mod formula;
mod proof;
mod propositional;
mod search;

pub use axioms::{
    ax4, ax6, ax7, ax8, extract, instantiate, match_axiom, match_axiom_as, AxiomId, AxiomMatch,
    Binding, EqualityCheck, Instantiation, SideConditionReport, TypabilityCheck,
};
pub use deduction::{deduction_transform, theorem_identity};
pub use formula::{wf_formula, Formula, Wf};
pub use proof::{
    check_proof, proves, HilbertProof, Justification, LineReport, LineStatus, ProofLine,
    ProofReport, ProofVerdict,
};
pub use propositional::{
    synthesize_proof, truth_table_valid, Countervaluation, TruthTable, MAX_SYNTHESIS_ATOMS,
};
pub use search::{
    consistent, entails, saturate, saturate_axioms, theory_basis, Entailment, Instance, Saturation,
    MAX_FALLBACK_ATOMS,
};
