//! Symbolic toolkit for typed combinatory logic and its propositional
//! extension.
//!
//! The crate is organised in layers:
//!
//! * [`kernel`]: SKI terms, redexes, leftmost-outermost normalisation,
//!   bounded weak and extensional equality, equational derivation checking.
//! * [`types`]: simple types, bases, principal typing by unification, and
//!   typing modulo extensional equality.
//! * [`logic`]: formulas over typed statements, the eight axiom schemes with
//!   modus ponens, proof checking, the deduction transformation, truth tables,
//!   proof synthesis and bounded entailment.
//! * [`semantics`]: applicative structures, environments, term models and
//!   three-valued satisfaction.
//! * [`cli`]: the `lcl` command line front end.
//!
//! Every relation that is undecidable in general (weak equality, extensional
//! equality, typability modulo equality) is exposed through [`TriBool`] with
//! explicit resource [`Bounds`].

pub mod cli;
pub mod error;
pub mod kernel;
pub mod logic;
pub mod semantics;
pub mod syntax;
pub mod types;

pub use error::{Error, ParseError, Result};
pub use kernel::{Term, TriBool};
pub use logic::{Formula, HilbertProof};
pub use types::{Basis, SimpleType, Statement};

use serde::{Deserialize, Serialize};

/// Resource limits applied to every bounded decision procedure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bounds {
    /// Maximum number of contraction steps per normalisation.
    pub fuel: u64,
    /// Maximum number of fresh arguments applied when testing extensional
    /// equality.
    pub arity: usize,
    /// Number of saturation rounds used by bounded entailment.
    pub depth: usize,
}

impl Bounds {
    pub const DEFAULT_FUEL: u64 = 10_000;
    pub const DEFAULT_ARITY: usize = 3;
    pub const DEFAULT_DEPTH: usize = 2;

    pub fn new(fuel: u64, arity: usize, depth: usize) -> Self {
        Bounds { fuel, arity, depth }
    }
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            fuel: Self::DEFAULT_FUEL,
            arity: Self::DEFAULT_ARITY,
            depth: Self::DEFAULT_DEPTH,
        }
    }
}

impl std::fmt::Display for Bounds {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "fuel={}, arity={}, depth={}",
            self.fuel, self.arity, self.depth
        )
    }
}
