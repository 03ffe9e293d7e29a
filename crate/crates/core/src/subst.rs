//! Substitutions: finite maps from variables to terms.

use alloc::vec::Vec;
use core::fmt;

use crate::term::{Term, Var};

/// A finite variable-to-term map. Bindings keep their insertion order, which
/// is what "first qualifying variable" means wherever a choice has to be made.
/// Identity bindings `X -> X` are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Substitution {
    bindings: Vec<(Var, Term)>,
}

impl Substitution {
    /// The empty substitution.
    pub fn new() -> Self {
        Substitution { bindings: Vec::new() }
    }

    /// Builds a substitution from bindings, later bindings overriding earlier
    /// ones for the same variable.
    pub fn from_bindings<I: IntoIterator<Item = (Var, Term)>>(bindings: I) -> Self {
        let mut s = Substitution::new();
        for (v, t) in bindings {
            s.insert(v, t);
        }
        s
    }

    /// Binds `var` to `term`, replacing any previous binding in place.
    /// Binding a variable to itself removes it.
    pub fn insert(&mut self, var: Var, term: Term) {
        let pos = self.bindings.iter().position(|(v, _)| *v == var);
        if term.as_var() == Some(&var) {
            if let Some(i) = pos {
                self.bindings.remove(i);
            }
            return;
        }
        match pos {
            Some(i) => self.bindings[i].1 = term,
            None => self.bindings.push((var, term)),
        }
    }

    /// Image of `var`, if bound.
    pub fn get(&self, var: &Var) -> Option<&Term> {
        self.bindings.iter().find(|(v, _)| v == var).map(|(_, t)| t)
    }

    /// True if `var` is in the domain.
    pub fn binds(&self, var: &Var) -> bool {
        self.get(var).is_some()
    }

    /// Bindings in insertion order.
    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.bindings.iter().map(|(v, t)| (v, t))
    }

    /// Domain in insertion order.
    pub fn domain(&self) -> impl Iterator<Item = &Var> {
        self.bindings.iter().map(|(v, _)| v)
    }

    /// Number of bindings.
    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    /// True for the empty substitution.
    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    /// Simultaneous single-pass application: each domain variable is replaced
    /// by its image and images are not substituted into again.
    pub fn apply(&self, t: &Term) -> Term {
        if self.is_empty() {
            return t.clone();
        }
        match t {
            Term::Var(v) => self.get(v).cloned().unwrap_or_else(|| t.clone()),
            Term::App(s, args) => Term::App(s.clone(), args.iter().map(|a| self.apply(a)).collect()),
        }
    }

    /// `self` followed by `then`: applying the result equals applying `self`
    /// and then `then`.
    pub fn compose(&self, then: &Substitution) -> Substitution {
        let mut out = Substitution::new();
        for (v, t) in &self.bindings {
            out.insert(v.clone(), then.apply(t));
        }
        for (v, t) in &then.bindings {
            if !self.binds(v) {
                out.insert(v.clone(), t.clone());
            }
        }
        out
    }

    /// No domain variable occurs in any image.
    pub fn is_idempotent(&self) -> bool {
        self.bindings
            .iter()
            .all(|(_, t)| self.bindings.iter().all(|(v, _)| !t.contains_var(v)))
    }

    /// Restriction to the given variables.
    pub fn restrict(&self, vars: &[Var]) -> Substitution {
        Substitution {
            bindings: self.bindings.iter().filter(|(v, _)| vars.contains(v)).cloned().collect(),
        }
    }

    /// Same bindings regardless of insertion order.
    pub fn same_bindings(&self, other: &Substitution) -> bool {
        self.len() == other.len() && self.iter().all(|(v, t)| other.get(v) == Some(t))
    }
}

/// Applies `sigma` to `t`.
pub fn apply(sigma: &Substitution, t: &Term) -> Term {
    sigma.apply(t)
}

/// Composition: `apply(compose(s, th), t) == apply(th, apply(s, t))`.
pub fn compose(sigma: &Substitution, theta: &Substitution) -> Substitution {
    sigma.compose(theta)
}

impl FromIterator<(Var, Term)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (Var, Term)>>(iter: I) -> Self {
        Substitution::from_bindings(iter)
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v} -> {t}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
