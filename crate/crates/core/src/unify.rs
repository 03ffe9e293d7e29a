//! Unification by equation normalization.
//!
//! A system of equations with a truth degree is rewritten one rule at a time
//! until no rule applies. Three rule sets are available:
//!
//! * [`UnifyMode::Crisp`]: Term Decomposition, Variable Erasure, Variable
//!   Elimination and Equation Orientation.
//! * [`UnifyMode::Weak`]: the same, with decomposition tolerating similar
//!   functors of equal arity (Fuzzy Term Decomposition). Each decomposition
//!   combines the system degree with the functor degree.
//! * [`UnifyMode::Full`]: decomposition also tolerates arity mismatches
//!   through the signature's position mapping (Generic Weak Term
//!   Decomposition), preceded by Fuzzy Equation Reorientation so that the
//!   lower-arity side is on the left. Unmapped arguments of the larger term
//!   are dropped.
//!
//! The default strategy picks the leftmost equation to which a rule applies.
//! Every rule is solution-preserving, so [`step_at`] lets callers drive any
//! other order.

use alloc::vec::Vec;
use core::fmt;

use crate::signature::{Degree, SimilarityEntry, SimilarityMode, SimilaritySignature};
use crate::subst::Substitution;
use crate::term::{Term, Var};

/// Which rule set to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnifyMode {
    /// Syntactic unification.
    Crisp,
    /// Similar functors of equal arity only.
    Weak,
    /// Similar functors of any arity, with position mappings.
    Full,
}

impl UnifyMode {
    /// The term similarity whose value a solved outcome reports.
    pub fn similarity_mode(self) -> SimilarityMode {
        match self {
            UnifyMode::Crisp | UnifyMode::Weak => SimilarityMode::EqualArity,
            UnifyMode::Full => SimilarityMode::Mapped,
        }
    }
}

/// Engine configuration.
#[derive(Clone, Copy, Debug)]
pub struct UnifyConfig<'a> {
    /// Rule set.
    pub mode: UnifyMode,
    /// Refuse `X = t` when `X` occurs in `t`.
    pub occurs_check: bool,
    /// Similarity signature; ignored in crisp mode.
    pub signature: &'a SimilaritySignature,
}

impl UnifyConfig<'static> {
    /// Crisp unification with occurs check.
    pub fn crisp() -> Self {
        UnifyConfig {
            mode: UnifyMode::Crisp,
            occurs_check: true,
            signature: SimilaritySignature::empty(),
        }
    }
}

impl<'a> UnifyConfig<'a> {
    /// Weak unification over an equal-arity signature.
    pub fn weak(signature: &'a SimilaritySignature) -> Self {
        UnifyConfig { mode: UnifyMode::Weak, occurs_check: true, signature }
    }

    /// Functor/arity-weak unification.
    pub fn full(signature: &'a SimilaritySignature) -> Self {
        UnifyConfig { mode: UnifyMode::Full, occurs_check: true, signature }
    }

    /// Same configuration, occurs check switched on or off.
    pub fn with_occurs_check(mut self, on: bool) -> Self {
        self.occurs_check = on;
        self
    }

    /// Checks mode-specific signature restrictions.
    pub fn validate(&self) -> Result<(), UnifyError> {
        if self.mode == UnifyMode::Weak {
            if let Some(e) = self.signature.entries().iter().find(|e| !e.equal_arity()) {
                return Err(UnifyError::UnequalArityEntry(e.clone()));
            }
        }
        Ok(())
    }
}

/// Normalization rules, named as they appear in traces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnifyRule {
    /// `f(s..) = f(t..)` into argument equations.
    TermDecomposition,
    /// `f(s..) = g(t..)` with `f ~ g` of equal arity.
    FuzzyTermDecomposition,
    /// `f(s1..sm) = g(t1..tn)` with `f ~p g`, `m <= n`.
    GenericWeakTermDecomposition,
    /// Drops `X = X`.
    VariableErasure,
    /// Substitutes `t` for `X` in the rest of the system.
    VariableElimination,
    /// `t = X` into `X = t`.
    EquationOrientation,
    /// Puts the lower-arity side on the left.
    FuzzyEquationReorientation,
}

impl UnifyRule {
    /// Rule name as printed in traces.
    pub fn name(self) -> &'static str {
        match self {
            UnifyRule::TermDecomposition => "Term Decomposition",
            UnifyRule::FuzzyTermDecomposition => "Fuzzy Term Decomposition",
            UnifyRule::GenericWeakTermDecomposition => "Generic Weak Term Decomposition",
            UnifyRule::VariableErasure => "Variable Erasure",
            UnifyRule::VariableElimination => "Variable Elimination",
            UnifyRule::EquationOrientation => "Equation Orientation",
            UnifyRule::FuzzyEquationReorientation => "Fuzzy Equation Reorientation",
        }
    }
}

impl fmt::Display for UnifyRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `lhs = rhs`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    /// Left-hand side.
    pub lhs: Term,
    /// Right-hand side.
    pub rhs: Term,
}

impl Equation {
    /// Builds an equation.
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs }
    }

    fn size(&self) -> usize {
        self.lhs.size() + self.rhs.size()
    }

    fn contains_var(&self, v: &Var) -> bool {
        self.lhs.contains_var(v) || self.rhs.contains_var(v)
    }

    fn replace_var(&self, v: &Var, by: &Term) -> Equation {
        Equation { lhs: self.lhs.replace_var(v, by), rhs: self.rhs.replace_var(v, by) }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl fmt::Debug for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An ordered multiset of equations with its accumulated degree.
#[derive(Clone, Debug, PartialEq)]
pub struct EquationSystem {
    /// Equations, in strategy order.
    pub equations: Vec<Equation>,
    /// Accumulated truth degree.
    pub degree: Degree,
}

impl EquationSystem {
    /// `{t1 = t2}` at degree 1.
    pub fn initial(t1: &Term, t2: &Term) -> Self {
        EquationSystem {
            equations: alloc::vec![Equation::new(t1.clone(), t2.clone())],
            degree: Degree::ONE,
        }
    }

    /// Total term size.
    pub fn size(&self) -> usize {
        self.equations.iter().map(Equation::size).sum()
    }

    fn occurs_elsewhere(&self, skip: usize, v: &Var) -> bool {
        self.equations.iter().enumerate().any(|(j, e)| j != skip && e.contains_var(v))
    }
}

impl fmt::Display for EquationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.equations.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}_{}", self.degree)
    }
}

/// One rule application.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceStep {
    /// Rule fired.
    pub rule: UnifyRule,
    /// Equation the rule was applied to.
    pub consumed: Equation,
    /// Equations it produced. For Variable Elimination these are the
    /// rewritten equations followed by the retained binding.
    pub produced: Vec<Equation>,
    /// System degree before the step.
    pub degree_before: Degree,
    /// System degree after the step.
    pub degree_after: Degree,
    /// Arguments of the larger term left out by a mapped decomposition.
    pub dropped: Vec<Term>,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ==> ", self.rule, self.consumed)?;
        if self.produced.is_empty() {
            f.write_str("{}")?;
        }
        for (i, e) in self.produced.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, " [{} -> {}]", self.degree_before, self.degree_after)?;
        if !self.dropped.is_empty() {
            f.write_str(" dropped:")?;
            for t in &self.dropped {
                write!(f, " {t}")?;
            }
        }
        Ok(())
    }
}

/// Final verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnifyStatus {
    /// A solved form was reached.
    Solved,
    /// Two different functors met in crisp mode.
    Clash,
    /// `X = t` with `X` inside `t`.
    OccursFail,
    /// Two unrelated functors met in a fuzzy mode.
    DegreeZero,
}

impl UnifyStatus {
    /// Upper-case name used in output.
    pub fn name(self) -> &'static str {
        match self {
            UnifyStatus::Solved => "SOLVED",
            UnifyStatus::Clash => "CLASH",
            UnifyStatus::OccursFail => "OCCURS_FAIL",
            UnifyStatus::DegreeZero => "DEGREE_ZERO",
        }
    }
}

impl fmt::Display for UnifyStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Why unification failed.
#[derive(Clone, Debug, PartialEq)]
pub enum Failure {
    /// The equation whose functors are unrelated.
    Clash(Equation),
    /// Variable occurring in its own binding.
    Occurs {
        /// The variable.
        var: Var,
        /// The term containing it.
        term: Term,
    },
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Clash(e) => write!(f, "unrelated functors in {e}"),
            Failure::Occurs { var, term } => write!(f, "{var} occurs in {term}"),
        }
    }
}

/// What [`unify`] returns.
#[derive(Clone, Debug, PartialEq)]
pub struct UnifyOutcome {
    /// Verdict.
    pub status: UnifyStatus,
    /// Solved form read as a substitution; empty unless solved.
    pub substitution: Substitution,
    /// Unification degree; 0 unless solved.
    pub degree: Degree,
    /// Rules fired, in order.
    pub trace: Vec<TraceStep>,
    /// Failure detail when not solved.
    pub failure: Option<Failure>,
}

impl UnifyOutcome {
    /// True for [`UnifyStatus::Solved`].
    pub fn is_solved(&self) -> bool {
        self.status == UnifyStatus::Solved
    }

    /// Reads the outcome off a system in normal form.
    pub fn from_normal_form(system: &EquationSystem, cfg: &UnifyConfig<'_>, trace: Vec<TraceStep>) -> Self {
        let failed = |status, failure| UnifyOutcome {
            status,
            substitution: Substitution::new(),
            degree: Degree::ZERO,
            trace: trace.clone(),
            failure: Some(failure),
        };
        if let Some(e) = find_clash(system, cfg) {
            let status = match cfg.mode {
                UnifyMode::Crisp => UnifyStatus::Clash,
                _ => UnifyStatus::DegreeZero,
            };
            return failed(status, Failure::Clash(e.clone()));
        }
        if cfg.occurs_check {
            for e in &system.equations {
                if let Term::Var(x) = &e.lhs {
                    if e.rhs.as_var() != Some(x) && e.rhs.contains_var(x) {
                        return failed(
                            UnifyStatus::OccursFail,
                            Failure::Occurs { var: x.clone(), term: e.rhs.clone() },
                        );
                    }
                }
            }
        }
        if system.degree.is_zero() {
            let e = system.equations.first().cloned();
            let e = e.unwrap_or_else(|| Equation::new(Term::constant("true"), Term::constant("true")));
            return failed(UnifyStatus::DegreeZero, Failure::Clash(e));
        }
        let mut substitution = Substitution::new();
        for e in &system.equations {
            if let Term::Var(x) = &e.lhs {
                if !substitution.binds(x) {
                    substitution.insert(x.clone(), e.rhs.clone());
                }
            }
        }
        UnifyOutcome {
            status: UnifyStatus::Solved,
            substitution,
            degree: system.degree,
            trace,
            failure: None,
        }
    }
}

/// Configuration or resource errors, as opposed to unification failure.
#[derive(Clone, Debug, PartialEq)]
pub enum UnifyError {
    /// Weak mode was given an entry relating different arities.
    UnequalArityEntry(SimilarityEntry),
    /// The step ceiling was reached (only possible without occurs check).
    StepLimit(usize),
}

impl fmt::Display for UnifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnifyError::UnequalArityEntry(e) => write!(
                f,
                "weak mode requires equal arities, but {} and {} differ",
                e.lo(),
                e.hi()
            ),
            UnifyError::StepLimit(n) => write!(f, "no normal form within {n} steps"),
        }
    }
}

impl core::error::Error for UnifyError {}

enum Action {
    Rule(UnifyRule),
    Clash,
    Rest,
}

fn action(system: &EquationSystem, i: usize, cfg: &UnifyConfig<'_>) -> Action {
    let e = &system.equations[i];
    match (&e.lhs, &e.rhs) {
        (Term::Var(x), Term::Var(y)) if x == y => Action::Rule(UnifyRule::VariableErasure),
        (Term::App(..), Term::Var(_)) => Action::Rule(UnifyRule::EquationOrientation),
        (Term::Var(x), t) => {
            if t.contains_var(x) {
                // only reachable without occurs check: merge other equations
                // with the same left-hand side (other than X = X)
                let merge = !cfg.occurs_check
                    && system
                        .equations
                        .iter()
                        .enumerate()
                        .any(|(j, o)| j != i && o.lhs.as_var() == Some(x) && o.rhs.as_var() != Some(x));
                if merge {
                    Action::Rule(UnifyRule::VariableElimination)
                } else {
                    Action::Rest
                }
            } else if system.occurs_elsewhere(i, x) {
                Action::Rule(UnifyRule::VariableElimination)
            } else {
                Action::Rest
            }
        }
        (Term::App(f, _), Term::App(g, _)) => match cfg.mode {
            UnifyMode::Crisp if f == g => Action::Rule(UnifyRule::TermDecomposition),
            UnifyMode::Crisp => Action::Clash,
            UnifyMode::Weak => {
                if f.arity() == g.arity() && cfg.signature.lookup(f, g).is_some() {
                    Action::Rule(UnifyRule::FuzzyTermDecomposition)
                } else {
                    Action::Clash
                }
            }
            UnifyMode::Full => {
                if cfg.signature.lookup(f, g).is_none() {
                    Action::Clash
                } else if f.arity() > g.arity() {
                    Action::Rule(UnifyRule::FuzzyEquationReorientation)
                } else {
                    Action::Rule(UnifyRule::GenericWeakTermDecomposition)
                }
            }
        },
    }
}

fn find_clash<'s>(system: &'s EquationSystem, cfg: &UnifyConfig<'_>) -> Option<&'s Equation> {
    (0..system.equations.len())
        .find(|&i| matches!(action(system, i, cfg), Action::Clash))
        .map(|i| &system.equations[i])
}

/// Indices of equations a rule applies to. Empty when the system is in normal
/// form, which includes every system holding a clash.
pub fn applicable(system: &EquationSystem, cfg: &UnifyConfig<'_>) -> Vec<usize> {
    let mut out = Vec::new();
    for i in 0..system.equations.len() {
        match action(system, i, cfg) {
            Action::Clash => return Vec::new(),
            Action::Rule(_) => out.push(i),
            Action::Rest => {}
        }
    }
    out
}

/// One step of the default strategy: the leftmost equation a rule applies
/// to. `None` once the system is in normal form.
pub fn step(system: &EquationSystem, cfg: &UnifyConfig<'_>) -> Option<(EquationSystem, TraceStep)> {
    let mut first = None;
    for i in 0..system.equations.len() {
        match action(system, i, cfg) {
            Action::Clash => return None,
            Action::Rule(r) if first.is_none() => first = Some((i, r)),
            _ => {}
        }
    }
    let (i, rule) = first?;
    Some(apply_rule(system, i, rule, cfg))
}

/// Applies the rule for equation `index`, if one applies and the system holds
/// no clash.
pub fn step_at(
    system: &EquationSystem,
    index: usize,
    cfg: &UnifyConfig<'_>,
) -> Option<(EquationSystem, TraceStep)> {
    if index >= system.equations.len() || find_clash(system, cfg).is_some() {
        return None;
    }
    match action(system, index, cfg) {
        Action::Rule(rule) => Some(apply_rule(system, index, rule, cfg)),
        _ => None,
    }
}

/// Flips `f(s1..sm) = g(t1..tn)` when `m > n`; `None` otherwise or when
/// either side is a variable.
pub fn reorient_check(eq: &Equation, cfg: &UnifyConfig<'_>) -> Option<Equation> {
    if cfg.mode != UnifyMode::Full || eq.lhs.is_var() || eq.rhs.is_var() {
        return None;
    }
    (eq.lhs.arity() > eq.rhs.arity()).then(|| Equation::new(eq.rhs.clone(), eq.lhs.clone()))
}

fn apply_rule(
    system: &EquationSystem,
    i: usize,
    rule: UnifyRule,
    cfg: &UnifyConfig<'_>,
) -> (EquationSystem, TraceStep) {
    let consumed = system.equations[i].clone();
    let degree_before = system.degree;
    let mut degree = system.degree;
    let mut equations = system.equations.clone();
    let mut dropped = Vec::new();
    let produced = match rule {
        UnifyRule::VariableErasure => {
            equations.remove(i);
            Vec::new()
        }
        UnifyRule::EquationOrientation | UnifyRule::FuzzyEquationReorientation => {
            let flipped = Equation::new(consumed.rhs.clone(), consumed.lhs.clone());
            equations[i] = flipped.clone();
            alloc::vec![flipped]
        }
        UnifyRule::VariableElimination => {
            let Term::Var(x) = &consumed.lhs else { unreachable!() };
            let t = &consumed.rhs;
            let cyclic = t.contains_var(x);
            let mut produced = Vec::new();
            for (j, e) in equations.iter_mut().enumerate() {
                if j == i {
                    continue;
                }
                let rewritten = if cyclic {
                    if e.lhs.as_var() != Some(x) || e.rhs.as_var() == Some(x) {
                        continue;
                    }
                    Equation::new(t.clone(), e.rhs.clone())
                } else {
                    if !e.contains_var(x) {
                        continue;
                    }
                    e.replace_var(x, t)
                };
                *e = rewritten.clone();
                produced.push(rewritten);
            }
            produced.push(consumed.clone());
            produced
        }
        UnifyRule::TermDecomposition
        | UnifyRule::FuzzyTermDecomposition
        | UnifyRule::GenericWeakTermDecomposition => {
            let (Term::App(f, ss), Term::App(g, ts)) = (&consumed.lhs, &consumed.rhs) else {
                unreachable!()
            };
            let parts: Vec<Equation> = if rule == UnifyRule::TermDecomposition {
                ss.iter().zip(ts).map(|(s, t)| Equation::new(s.clone(), t.clone())).collect()
            } else {
                let l = cfg.signature.lookup(f, g).expect("related functors");
                degree = cfg.signature.and(degree, l.degree);
                let parts: Vec<Equation> = ss
                    .iter()
                    .enumerate()
                    .map(|(k, s)| Equation::new(s.clone(), ts[l.image(k)].clone()))
                    .collect();
                let used: Vec<usize> = (0..ss.len()).map(|k| l.image(k)).collect();
                dropped = ts
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| !used.contains(j))
                    .map(|(_, t)| t.clone())
                    .collect();
                parts
            };
            equations.splice(i..=i, parts.iter().cloned());
            parts
        }
    };
    let step = TraceStep {
        rule,
        consumed,
        produced,
        degree_before,
        degree_after: degree,
        dropped,
    };
    (EquationSystem { equations, degree }, step)
}

/// Step ceiling for a problem of the given size.
pub fn step_limit(size: usize) -> usize {
    10 * size.max(4) * size.max(4)
}

/// Unifies `t1` and `t2` under `cfg` with the default strategy.
pub fn unify(t1: &Term, t2: &Term, cfg: &UnifyConfig<'_>) -> Result<UnifyOutcome, UnifyError> {
    cfg.validate()?;
    let mut system = EquationSystem::initial(t1, t2);
    let limit = step_limit(system.size());
    let mut trace = Vec::new();
    while let Some((next, s)) = step(&system, cfg) {
        if trace.len() >= limit {
            return Err(UnifyError::StepLimit(limit));
        }
        trace.push(s);
        system = next;
    }
    Ok(UnifyOutcome::from_normal_form(&system, cfg, trace))
}
