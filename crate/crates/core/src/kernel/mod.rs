//! Untyped combinatory logic: terms, reduction, equality.

mod eqderiv;
mod equality;
mod reduce;
mod term;

pub use eqderiv::{check_eq_derivation, EqCheck, EqDerivation, EqRule};
pub use equality::{abstract_var, ext_equal, ext_normal_form, weak_equal, EnfError, TriBool};
pub use reduce::{
    contract, find_redexes, is_normal, normal_form, normalize, reduce_step, replace_at,
    Normalization, RedexKind, RedexSite, Side, MAX_NODES,
};
pub use term::{free_vars, is_var_name, substitute, Combinator, FreshVars, Term};
