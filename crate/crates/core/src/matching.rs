//! Matching, subsumption, variants and renaming apart.

use alloc::format;
use alloc::vec::Vec;

use crate::subst::Substitution;
use crate::term::{Term, Var};

/// Per-session supply of fresh variables `_G0`, `_G1`, ...
///
/// User variables may not take these names, so fresh variables never
/// collide with input variables. A supply is plain state; give each thread
/// its own.
#[derive(Clone, Debug, Default)]
pub struct FreshVars {
    next: u64,
}

impl FreshVars {
    /// A supply starting at `_G0`.
    pub fn new() -> Self {
        FreshVars { next: 0 }
    }

    /// Hands out the next variable.
    pub fn fresh(&mut self) -> Var {
        let v = Var::new(&format!("_G{}", self.next));
        self.next += 1;
        v
    }

    /// How many variables were handed out.
    pub fn issued(&self) -> u64 {
        self.next
    }
}

/// One-sided matching: finds `s` with `s(general) == specific`. Variables of
/// `specific` are treated as constants.
pub fn subsumes(general: &Term, specific: &Term) -> Option<Substitution> {
    raw_matcher(general, specific).map(Substitution::from_bindings)
}

/// Equality up to a bijective renaming of variables.
pub fn variant_equal(t1: &Term, t2: &Term) -> bool {
    let Some(m) = raw_matcher(t1, t2) else {
        return false;
    };
    let mut seen: Vec<&Var> = Vec::new();
    for (_, image) in &m {
        match image.as_var() {
            Some(w) if !seen.contains(&w) => seen.push(w),
            _ => return false,
        }
    }
    true
}

// Matcher that keeps `X -> X` pairs, so repeated occurrences stay consistent
// and injectivity can be checked.
fn raw_matcher(general: &Term, specific: &Term) -> Option<Vec<(Var, Term)>> {
    fn go(g: &Term, s: &Term, acc: &mut Vec<(Var, Term)>) -> bool {
        match g {
            Term::Var(v) => match acc.iter().find(|(w, _)| w == v) {
                Some((_, bound)) => bound == s,
                None => {
                    acc.push((v.clone(), s.clone()));
                    true
                }
            },
            Term::App(f, fargs) => match s {
                Term::App(h, hargs) if f == h => fargs.iter().zip(hargs).all(|(a, b)| go(a, b, acc)),
                _ => false,
            },
        }
    }
    let mut acc = Vec::new();
    go(general, specific, &mut acc).then_some(acc)
}

/// Renames the variables of `t2` that also occur in `t1` to fresh ones.
/// Returns both terms and both renamings; the first renaming is always empty
/// and nothing changes when the terms are already variable-disjoint.
pub fn rename_apart(
    t1: &Term,
    t2: &Term,
    fresh: &mut FreshVars,
) -> (Term, Term, Substitution, Substitution) {
    let left = t1.vars();
    let mut renaming = Substitution::new();
    for v in t2.vars() {
        if left.contains(&v) {
            renaming.insert(v, Term::Var(fresh.fresh()));
        }
    }
    let t2 = renaming.apply(t2);
    (t1.clone(), t2, Substitution::new(), renaming)
}
