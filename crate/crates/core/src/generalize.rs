//! Generalization (anti-unification) by generalization judgements.
//!
//! A judgement relates prior substitutions `(s1, s2)` and a prior degree, a
//! pair of terms, and the posterior generalizer, substitutions and degree.
//! Axioms cover variables and mismatching functors; the functor rule threads
//! the substitutions and the degree through the argument pairs left to right.
//! Before an argument pair is generalized it is *unapplied*: if some
//! generalizer variable is already bound to (terms similar to) both sides,
//! that variable is reused, which is what makes `f(a,a)` and `f(b,b)`
//! generalize to `f(X,X)` rather than `f(X,Y)`.
//!
//! Three modes are available. [`GenMode::Crisp`] is Reynolds–Plotkin
//! generalization. [`GenMode::FunctorWeak`] lets similar functors of equal
//! arity share a generalizer root. [`GenMode::Full`] also lets similar
//! functors of different arities do so: the root is the lower-arity functor
//! and the other term's unmapped arguments are dropped.

use alloc::vec::Vec;
use core::fmt;

use crate::matching::{rename_apart, FreshVars};
use crate::signature::{term_similarity, Degree, SimilarityEntry, SimilarityMode, SimilaritySignature};
use crate::subst::Substitution;
use crate::term::{Term, Var};

/// Which rule set to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenMode {
    /// Syntactic generalization.
    Crisp,
    /// Similar functors of equal arity.
    FunctorWeak,
    /// Similar functors of any arity, through position mappings.
    Full,
}

impl GenMode {
    /// Term similarity used by fuzzy unapply and by the validity check.
    pub fn similarity_mode(self) -> SimilarityMode {
        match self {
            GenMode::Crisp | GenMode::FunctorWeak => SimilarityMode::EqualArity,
            GenMode::Full => SimilarityMode::Mapped,
        }
    }
}

/// What to do with variables occurring in both input terms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SharedVars {
    /// Keep them; where both sides hold the same variable it generalizes to
    /// itself.
    #[default]
    Keep,
    /// Rename the second term apart first and report the renaming.
    Rename,
    /// Refuse the problem.
    Reject,
}

/// Engine configuration.
#[derive(Clone, Copy, Debug)]
pub struct GenConfig<'a> {
    /// Rule set.
    pub mode: GenMode,
    /// Similarity signature; ignored in crisp mode.
    pub signature: &'a SimilaritySignature,
    /// Shared-variable policy.
    pub shared_vars: SharedVars,
}

impl GenConfig<'static> {
    /// Crisp generalization.
    pub fn crisp() -> Self {
        GenConfig {
            mode: GenMode::Crisp,
            signature: SimilaritySignature::empty(),
            shared_vars: SharedVars::Keep,
        }
    }
}

impl<'a> GenConfig<'a> {
    /// Functor-weak generalization over an equal-arity signature.
    pub fn functor_weak(signature: &'a SimilaritySignature) -> Self {
        GenConfig { mode: GenMode::FunctorWeak, signature, shared_vars: SharedVars::Keep }
    }

    /// Functor/arity-weak generalization.
    pub fn full(signature: &'a SimilaritySignature) -> Self {
        GenConfig { mode: GenMode::Full, signature, shared_vars: SharedVars::Keep }
    }

    /// Same configuration, different shared-variable policy.
    pub fn with_shared_vars(mut self, policy: SharedVars) -> Self {
        self.shared_vars = policy;
        self
    }
}

/// Axioms and rules, named as they appear in traces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenRule {
    /// `X` and `X` generalize to `X`.
    EqualVariables,
    /// One side a variable: fresh generalizer variable.
    VariableTerm,
    /// Different functors: fresh generalizer variable.
    UnequalFunctors,
    /// Same functor: generalize the arguments.
    EqualFunctors,
    /// Fuzzy `X`/`X`.
    FuzzyEqualVariables,
    /// Fuzzy variable/term.
    FuzzyVariableTerm,
    /// Unrelated functors.
    DissimilarFunctors,
    /// Similar functors of equal arity.
    SimilarFunctors,
    /// Root taken from the first term (its arity is not larger).
    FunctorAritySimilarityLeft,
    /// Root taken from the second term (its arity is smaller).
    FunctorAritySimilarityRight,
}

impl GenRule {
    /// Name as printed in traces.
    pub fn name(self) -> &'static str {
        match self {
            GenRule::EqualVariables => "Equal Variables",
            GenRule::VariableTerm => "Variable-Term",
            GenRule::UnequalFunctors => "Unequal Functors",
            GenRule::EqualFunctors => "Equal Functors",
            GenRule::FuzzyEqualVariables => "Fuzzy Equal Variables",
            GenRule::FuzzyVariableTerm => "Fuzzy Variable-Term",
            GenRule::DissimilarFunctors => "Dissimilar Functors",
            GenRule::SimilarFunctors => "Similar Functors",
            GenRule::FunctorAritySimilarityLeft => "Functor/Arity Similarity Left",
            GenRule::FunctorAritySimilarityRight => "Functor/Arity Similarity Right",
        }
    }
}

impl fmt::Display for GenRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One judgement in the derivation, in pre-order.
#[derive(Clone, Debug, PartialEq)]
pub struct GenStep {
    /// Rule or axiom used.
    pub rule: GenRule,
    /// Nesting depth, 0 for the root judgement.
    pub depth: usize,
    /// First term of the judgement (after unapply).
    pub left: Term,
    /// Second term of the judgement (after unapply).
    pub right: Term,
    /// The pair before unapply replaced it by a generalizer variable.
    pub unapplied_from: Option<(Term, Term)>,
    /// Posterior generalizer.
    pub generalizer: Term,
    /// Prior degree.
    pub degree_before: Degree,
    /// Posterior degree.
    pub degree_after: Degree,
    /// Arguments left out by a functor/arity rule.
    pub dropped: Vec<Term>,
}

impl fmt::Display for GenStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ^ {} => {} [{} -> {}]",
            self.rule, self.left, self.right, self.generalizer, self.degree_before, self.degree_after
        )?;
        if let Some((a, b)) = &self.unapplied_from {
            write!(f, " unapplied from {a} ^ {b}")?;
        }
        if !self.dropped.is_empty() {
            f.write_str(" dropped:")?;
            for t in &self.dropped {
                write!(f, " {t}")?;
            }
        }
        Ok(())
    }
}

/// Generalizer with its witnessing substitutions.
#[derive(Clone, Debug, PartialEq)]
pub struct GenResult {
    /// The generalizer.
    pub generalizer: Term,
    /// Maps generalizer variables to subterms of the first input.
    pub sigma1: Substitution,
    /// Maps generalizer variables to subterms of the second input.
    pub sigma2: Substitution,
    /// Degree to which the instances approximate the inputs.
    pub degree: Degree,
    /// Derivation, root judgement first.
    pub trace: Vec<GenStep>,
    /// Renaming applied to the first input (always empty).
    pub renaming1: Substitution,
    /// Renaming applied to the second input under [`SharedVars::Rename`].
    pub renaming2: Substitution,
    /// The inputs actually generalized, after any renaming.
    pub inputs: (Term, Term),
}

impl GenResult {
    /// Every argument dropped anywhere in the derivation.
    pub fn dropped_args(&self) -> Vec<Term> {
        self.trace.iter().flat_map(|s| s.dropped.iter().cloned()).collect()
    }
}

/// Configuration errors.
#[derive(Clone, Debug, PartialEq)]
pub enum GenError {
    /// Inputs share variables and the policy is [`SharedVars::Reject`].
    SharedVariables(Vec<Var>),
    /// Functor-weak mode was given an entry relating different arities.
    UnequalArityEntry(SimilarityEntry),
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenError::SharedVariables(vs) => {
                f.write_str("input terms share variables:")?;
                for v in vs {
                    write!(f, " {v}")?;
                }
                Ok(())
            }
            GenError::UnequalArityEntry(e) => write!(
                f,
                "functor-weak mode requires equal arities, but {} and {} differ",
                e.lo(),
                e.hi()
            ),
        }
    }
}

impl core::error::Error for GenError {}

/// Crisp unapply: `(X, X)` for the first `X` (in binding order) with
/// `s1(X) == t1` and `s2(X) == t2`, otherwise the pair unchanged.
pub fn unapply(t1: &Term, t2: &Term, s1: &Substitution, s2: &Substitution) -> (Term, Term) {
    for (x, b1) in s1.iter() {
        if b1 == t1 && s2.get(x) == Some(t2) {
            return (Term::Var(x.clone()), Term::Var(x.clone()));
        }
    }
    (t1.clone(), t2.clone())
}

/// Fuzzy unapply: `(X, X)` for the first `X` whose bindings are at least
/// `alpha`-similar to `t1` and `t2` respectively.
pub fn fuzzy_unapply(
    t1: &Term,
    t2: &Term,
    s1: &Substitution,
    s2: &Substitution,
    alpha: Degree,
    sig: &SimilaritySignature,
    mode: SimilarityMode,
) -> (Term, Term) {
    for (x, b1) in s1.iter() {
        let Some(b2) = s2.get(x) else { continue };
        if term_similarity(sig, t1, b1, mode) >= alpha && term_similarity(sig, t2, b2, mode) >= alpha {
            return (Term::Var(x.clone()), Term::Var(x.clone()));
        }
    }
    (t1.clone(), t2.clone())
}

/// Generalizes `t1` and `t2` with a fresh-variable supply starting at `_G0`.
pub fn generalize(t1: &Term, t2: &Term, cfg: &GenConfig<'_>) -> Result<GenResult, GenError> {
    generalize_in(&mut FreshVars::new(), t1, t2, cfg)
}

/// Generalizes `t1` and `t2`, drawing fresh variables from `fresh`.
pub fn generalize_in(
    fresh: &mut FreshVars,
    t1: &Term,
    t2: &Term,
    cfg: &GenConfig<'_>,
) -> Result<GenResult, GenError> {
    if cfg.mode == GenMode::FunctorWeak {
        if let Some(e) = cfg.signature.entries().iter().find(|e| !e.equal_arity()) {
            return Err(GenError::UnequalArityEntry(e.clone()));
        }
    }
    let (t1, t2, renaming1, renaming2) = match cfg.shared_vars {
        SharedVars::Keep => (t1.clone(), t2.clone(), Substitution::new(), Substitution::new()),
        SharedVars::Rename => rename_apart(t1, t2, fresh),
        SharedVars::Reject => {
            let left = t1.vars();
            let shared: Vec<Var> = t2.vars().into_iter().filter(|v| left.contains(v)).collect();
            if !shared.is_empty() {
                return Err(GenError::SharedVariables(shared));
            }
            (t1.clone(), t2.clone(), Substitution::new(), Substitution::new())
        }
    };
    let mut engine = Engine {
        cfg,
        fresh,
        sigma1: Substitution::new(),
        sigma2: Substitution::new(),
        degree: Degree::ONE,
        trace: Vec::new(),
    };
    let generalizer = engine.judge(&t1, &t2, None, 0);
    Ok(GenResult {
        generalizer,
        sigma1: engine.sigma1,
        sigma2: engine.sigma2,
        degree: engine.degree,
        trace: engine.trace,
        renaming1,
        renaming2,
        inputs: (t1, t2),
    })
}

struct Engine<'c, 'a, 'f> {
    cfg: &'c GenConfig<'a>,
    fresh: &'f mut FreshVars,
    sigma1: Substitution,
    sigma2: Substitution,
    degree: Degree,
    trace: Vec<GenStep>,
}

impl Engine<'_, '_, '_> {
    fn fuzzy(&self) -> bool {
        self.cfg.mode != GenMode::Crisp
    }

    fn record(&mut self, rule: GenRule, t1: &Term, t2: &Term, from: Option<(Term, Term)>, depth: usize) -> usize {
        self.trace.push(GenStep {
            rule,
            depth,
            left: t1.clone(),
            right: t2.clone(),
            unapplied_from: from,
            generalizer: Term::constant("?"),
            degree_before: self.degree,
            degree_after: self.degree,
            dropped: Vec::new(),
        });
        self.trace.len() - 1
    }

    fn finish(&mut self, at: usize, generalizer: &Term) {
        self.trace[at].generalizer = generalizer.clone();
        self.trace[at].degree_after = self.degree;
    }

    // Fresh variable bound to t1 and t2.
    fn bind_fresh(&mut self, t1: &Term, t2: &Term) -> Term {
        let x = self.fresh.fresh();
        self.sigma1.insert(x.clone(), t1.clone());
        self.sigma2.insert(x.clone(), t2.clone());
        Term::Var(x)
    }

    fn judge(&mut self, t1: &Term, t2: &Term, from: Option<(Term, Term)>, depth: usize) -> Term {
        let fuzzy = self.fuzzy();
        match (t1, t2) {
            (Term::Var(x), Term::Var(y)) if x == y => {
                let rule = if fuzzy { GenRule::FuzzyEqualVariables } else { GenRule::EqualVariables };
                let at = self.record(rule, t1, t2, from, depth);
                self.finish(at, t1);
                t1.clone()
            }
            (Term::Var(_), _) | (_, Term::Var(_)) => {
                let rule = if fuzzy { GenRule::FuzzyVariableTerm } else { GenRule::VariableTerm };
                let at = self.record(rule, t1, t2, from, depth);
                let x = self.bind_fresh(t1, t2);
                self.finish(at, &x);
                x
            }
            (Term::App(f, ss), Term::App(g, ts)) => {
                let sig = self.cfg.signature;
                let related = match self.cfg.mode {
                    GenMode::Crisp => (f == g).then_some((Degree::ONE, None)),
                    GenMode::FunctorWeak => {
                        if f.arity() == g.arity() {
                            sig.lookup(f, g).map(|l| (l.degree, Some(l)))
                        } else {
                            None
                        }
                    }
                    GenMode::Full => sig.lookup(f, g).map(|l| (l.degree, Some(l))),
                };
                let Some((beta, lookup)) = related else {
                    let rule =
                        if fuzzy { GenRule::DissimilarFunctors } else { GenRule::UnequalFunctors };
                    let at = self.record(rule, t1, t2, from, depth);
                    let x = self.bind_fresh(t1, t2);
                    self.finish(at, &x);
                    return x;
                };
                // Argument pairs (first side, second side) and the root.
                let left_root = f.arity() <= g.arity();
                let image = |k: usize| lookup.map_or(k, |l| l.image(k));
                let (root, pairs, dropped): (_, Vec<(&Term, &Term)>, Vec<Term>) = if left_root {
                    let pairs = (0..ss.len()).map(|k| (&ss[k], &ts[image(k)])).collect();
                    let used: Vec<usize> = (0..ss.len()).map(image).collect();
                    let dropped = unused(ts, &used);
                    (f.clone(), pairs, dropped)
                } else {
                    let pairs = (0..ts.len()).map(|k| (&ss[image(k)], &ts[k])).collect();
                    let used: Vec<usize> = (0..ts.len()).map(image).collect();
                    let dropped = unused(ss, &used);
                    (g.clone(), pairs, dropped)
                };
                let rule = match self.cfg.mode {
                    GenMode::Crisp => GenRule::EqualFunctors,
                    GenMode::FunctorWeak => GenRule::SimilarFunctors,
                    GenMode::Full if left_root => GenRule::FunctorAritySimilarityLeft,
                    GenMode::Full => GenRule::FunctorAritySimilarityRight,
                };
                let at = self.record(rule, t1, t2, from, depth);
                self.trace[at].dropped = dropped;
                self.degree = sig.and(self.degree, beta);
                let mut args = Vec::with_capacity(pairs.len());
                for (s, t) in pairs {
                    let (u1, u2) = if fuzzy {
                        fuzzy_unapply(
                            s,
                            t,
                            &self.sigma1,
                            &self.sigma2,
                            self.degree,
                            sig,
                            self.cfg.mode.similarity_mode(),
                        )
                    } else {
                        unapply(s, t, &self.sigma1, &self.sigma2)
                    };
                    let from = (u1 != *s || u2 != *t).then(|| (s.clone(), t.clone()));
                    args.push(self.judge(&u1, &u2, from, depth + 1));
                }
                let u = Term::App(root, args);
                self.finish(at, &u);
                u
            }
        }
    }
}

fn unused(args: &[Term], used: &[usize]) -> Vec<Term> {
    args.iter()
        .enumerate()
        .filter(|(j, _)| !used.contains(j))
        .map(|(_, t)| t.clone())
        .collect()
}
