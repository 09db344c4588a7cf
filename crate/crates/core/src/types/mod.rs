//! Simple types and type assignment for combinatory terms.

mod infer;
mod ty;

pub use infer::{
    atom_in_cl, check_typing, check_typing_eq, derive_atom, derive_typing, infer_type,
    typing_eq_witness, EqTyping, TypeError, TypingDerivation,
};
pub use ty::{
    is_instance, restrict_basis, unify, Basis, SimpleType, Statement, TypeSubstitution, UnifyError,
};
