//! Brute-force reference procedures.
//!
//! Everything here is plain recursion and enumeration over bounded term
//! spaces. Nothing calls into the rule engines, the matcher or the signature
//! lookup, so the engines can be checked against it.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::signature::{Degree, SimilarityMode, SimilaritySignature};
use crate::subst::Substitution;
use crate::term::{Symbol, Term, Var};

/// Largest space (and largest assignment count) the oracle will enumerate.
pub const MAX_SPACE: u128 = 1_000_000;

/// A bounded set of terms: every term of depth at most `max_depth` built from
/// `symbols` and `variables`. Depth counts a leaf as 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermSpace {
    /// Function and constant symbols, in enumeration order.
    pub symbols: Vec<Symbol>,
    /// Maximum depth, at least 1.
    pub max_depth: usize,
    /// Variables, enumerated before constants.
    pub variables: Vec<Var>,
}

/// Refusal to enumerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    /// The space (or the assignment set over it) exceeds [`MAX_SPACE`].
    SpaceTooLarge {
        /// The computed size, saturated at `u128::MAX`.
        cardinality: u128,
    },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::SpaceTooLarge { cardinality } => {
                write!(f, "search space has {cardinality} elements, above the limit of {MAX_SPACE}")
            }
        }
    }
}

impl core::error::Error for OracleError {}

impl TermSpace {
    /// A space over the given symbols and variables.
    pub fn new(symbols: Vec<Symbol>, max_depth: usize, variables: Vec<Var>) -> Self {
        TermSpace { symbols, max_depth, variables }
    }

    /// Ground terms only.
    pub fn ground(symbols: Vec<Symbol>, max_depth: usize) -> Self {
        TermSpace::new(symbols, max_depth, Vec::new())
    }

    /// Number of terms, computed without enumerating.
    pub fn cardinality(&self) -> u128 {
        if self.max_depth == 0 {
            return 0;
        }
        // terms of depth <= d: leaves plus f(args) with args of depth <= d - 1
        let leaves = (self.variables.len() + self.symbols.iter().filter(|s| s.arity() == 0).count()) as u128;
        let mut cur = leaves;
        for _ in 1..self.max_depth {
            let mut next = leaves;
            for s in self.symbols.iter().filter(|s| s.arity() > 0) {
                next = next.saturating_add(sat_pow(cur, s.arity()));
            }
            cur = next;
        }
        cur
    }
}

fn sat_pow(base: u128, exp: usize) -> u128 {
    let mut acc = 1u128;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

/// Every term of the space exactly once: by depth, then symbol order, then
/// lexicographic argument tuples. Depth-1 terms list variables before
/// constants.
pub fn enumerate_terms(space: &TermSpace) -> Result<Vec<Term>, OracleError> {
    let cardinality = space.cardinality();
    if cardinality > MAX_SPACE {
        return Err(OracleError::SpaceTooLarge { cardinality });
    }
    if space.max_depth == 0 {
        return Ok(Vec::new());
    }
    // layers[d] holds the terms of depth exactly d + 1
    let mut layers: Vec<Vec<Term>> = Vec::new();
    let mut first: Vec<Term> = space.variables.iter().map(|v| Term::Var(v.clone())).collect();
    for s in space.symbols.iter().filter(|s| s.arity() == 0) {
        first.push(Term::App(s.clone(), Vec::new()));
    }
    layers.push(first);
    for d in 1..space.max_depth {
        let below: Vec<&Term> = layers.iter().flatten().collect();
        let top = layers[d - 1].len();
        let offset = below.len() - top;
        let mut layer = Vec::new();
        for s in space.symbols.iter().filter(|s| s.arity() > 0) {
            if below.is_empty() {
                continue;
            }
            // odometer over indices into `below`, keeping tuples that reach
            // the previous layer
            let mut idx = vec![0usize; s.arity()];
            'odometer: loop {
                if idx.iter().any(|&i| i >= offset) {
                    let args = idx.iter().map(|&i| below[i].clone()).collect();
                    layer.push(Term::App(s.clone(), args));
                }
                for k in (0..idx.len()).rev() {
                    idx[k] += 1;
                    if idx[k] < below.len() {
                        continue 'odometer;
                    }
                    idx[k] = 0;
                }
                break;
            }
        }
        layers.push(layer);
    }
    Ok(layers.into_iter().flatten().collect())
}

fn first_occurrence_vars(t: &Term, out: &mut Vec<Var>) {
    match t {
        Term::Var(v) => {
            if !out.contains(v) {
                out.push(v.clone());
            }
        }
        Term::App(_, args) => args.iter().for_each(|a| first_occurrence_vars(a, out)),
    }
}

fn instantiate(t: &Term, vars: &[Var], values: &[&Term]) -> Term {
    match t {
        Term::Var(v) => match vars.iter().position(|w| w == v) {
            Some(i) => values[i].clone(),
            None => t.clone(),
        },
        Term::App(s, args) => {
            Term::App(s.clone(), args.iter().map(|a| instantiate(a, vars, values)).collect())
        }
    }
}

/// Every substitution over the variables of `t1` and `t2` with range in
/// `range` that makes the two terms equal. Order follows the odometer over
/// the variables in first-occurrence order (`t1` then `t2`).
pub fn oracle_unifiers(t1: &Term, t2: &Term, range: &TermSpace) -> Result<Vec<Substitution>, OracleError> {
    let terms = enumerate_terms(range)?;
    let mut vars = Vec::new();
    first_occurrence_vars(t1, &mut vars);
    first_occurrence_vars(t2, &mut vars);
    let cardinality = sat_pow(terms.len() as u128, vars.len());
    if cardinality > MAX_SPACE {
        return Err(OracleError::SpaceTooLarge { cardinality });
    }
    let mut out = Vec::new();
    if vars.is_empty() {
        if t1 == t2 {
            out.push(Substitution::new());
        }
        return Ok(out);
    }
    if terms.is_empty() {
        return Ok(out);
    }
    let mut idx = vec![0usize; vars.len()];
    'odometer: loop {
        let values: Vec<&Term> = idx.iter().map(|&i| &terms[i]).collect();
        if instantiate(t1, &vars, &values) == instantiate(t2, &vars, &values) {
            out.push(vars.iter().cloned().zip(values.into_iter().cloned()).collect());
        }
        for k in (0..idx.len()).rev() {
            idx[k] += 1;
            if idx[k] < terms.len() {
                continue 'odometer;
            }
            idx[k] = 0;
        }
        break;
    }
    Ok(out)
}

// Naive one-sided matching, independent of the library matcher.
fn naive_match(pattern: &Term, target: &Term, acc: &mut Vec<(Var, Term)>) -> bool {
    match pattern {
        Term::Var(v) => {
            for (w, bound) in acc.iter() {
                if w == v {
                    return bound == target;
                }
            }
            acc.push((v.clone(), target.clone()));
            true
        }
        Term::App(f, fa) => match target {
            Term::App(g, ga) => {
                f == g && fa.len() == ga.len() && fa.iter().zip(ga).all(|(p, t)| naive_match(p, t, acc))
            }
            Term::Var(_) => false,
        },
    }
}

/// Every term `u` of the space with substitutions `d1`, `d2` such that
/// `d1(u) == t1` and `d2(u) == t2`, in enumeration order.
pub fn oracle_generalizers(
    t1: &Term,
    t2: &Term,
    space: &TermSpace,
) -> Result<Vec<(Term, Substitution, Substitution)>, OracleError> {
    let mut out = Vec::new();
    for u in enumerate_terms(space)? {
        let mut m1 = Vec::new();
        let mut m2 = Vec::new();
        if naive_match(&u, t1, &mut m1) && naive_match(&u, t2, &mut m2) {
            out.push((u, m1.into_iter().collect(), m2.into_iter().collect()));
        }
    }
    Ok(out)
}

/// Term similarity by direct recursion, scanning the signature's entries for
/// each symbol pair.
pub fn naive_similarity(sig: &SimilaritySignature, t1: &Term, t2: &Term, mode: SimilarityMode) -> Degree {
    match (t1, t2) {
        (Term::Var(x), Term::Var(y)) if x == y => Degree::ONE,
        (Term::App(f, fa), Term::App(g, ga)) => {
            if mode == SimilarityMode::EqualArity && fa.len() != ga.len() {
                return Degree::ZERO;
            }
            // argument pairs as (position in t1, position in t2)
            let (degree, pairs): (Degree, Vec<(usize, usize)>) = if f == g {
                (Degree::ONE, (0..fa.len()).map(|i| (i, i)).collect())
            } else {
                let mut found = None;
                for e in sig.entries() {
                    if e.lo() == f && e.hi() == g {
                        found = Some((e.degree(), e.mapping().pairs().map(|(i, j)| (i - 1, j - 1)).collect()));
                    } else if e.lo() == g && e.hi() == f {
                        found = Some((e.degree(), e.mapping().pairs().map(|(i, j)| (j - 1, i - 1)).collect()));
                    }
                }
                match found {
                    Some(x) => x,
                    None => return Degree::ZERO,
                }
            };
            let mut d = degree;
            for (i, j) in pairs {
                d = sig.tnorm().and(d, naive_similarity(sig, &fa[i], &ga[j], mode));
            }
            d
        }
        _ => Degree::ZERO,
    }
}
