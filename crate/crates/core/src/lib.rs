#![no_std]
#![warn(missing_docs)]

//! Lattice operations on first-order terms over similarity signatures.
//!
//! Terms are ordered by subsumption. Unification computes the greatest lower
//! bound of two terms and generalization (anti-unification) the least upper
//! bound. Both operations come in a crisp flavour and in fuzzy flavours where
//! functor symbols may be similar to a degree in `[0, 1]`, possibly with
//! different arities and a mapping between argument positions.
//!
//! Everything here is driven by declarative normalization rules and records a
//! derivation trace naming the rule fired at each step. The [`oracle`] module
//! carries brute-force reference procedures used to check the engines.
//!
//! The crate only needs `alloc`. File formats, JSON output and the command
//! line live in the companion `termlat` crate.

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod generalize;
pub mod matching;
pub mod oracle;
pub mod parse;
pub mod signature;
pub mod subst;
pub mod term;
pub mod unify;

pub use generalize::{
    fuzzy_unapply, generalize, generalize_in, unapply, GenConfig, GenError, GenMode, GenResult,
    GenRule, GenStep, SharedVars,
};
pub use oracle::{
    enumerate_terms, naive_similarity, oracle_generalizers, oracle_unifiers, OracleError, TermSpace,
};
pub use matching::{rename_apart, subsumes, variant_equal, FreshVars};
pub use parse::{parse_term, parse_term_with, parse_terms, ParseError, ParseErrorKind, ParseOptions};
pub use signature::{
    term_similarity, ArgMapping, Degree, Lookup, MappingError, SignatureError, SimilarityEntry, SimilarityMode,
    SimilaritySignature, TNorm,
};
pub use subst::{apply, compose, Substitution};
pub use term::{print_term, vars_of, Symbol, Term, Var};
pub use unify::{
    applicable, reorient_check, step, step_at, step_limit, unify, Equation, EquationSystem, Failure, UnifyConfig, UnifyError,
    UnifyMode, UnifyOutcome, UnifyRule, UnifyStatus, TraceStep,
};
