//! First-order terms, functor symbols and variables.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

/// A functor symbol, identified by its name *and* its arity: `f/2` and `f/3`
/// are distinct symbols.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    name: Arc<str>,
    arity: usize,
}

impl Symbol {
    /// Builds a symbol. The name is not checked against the concrete syntax;
    /// the parser does that.
    pub fn new(name: &str, arity: usize) -> Self {
        Symbol { name: Arc::from(name), arity }
    }

    /// The symbol name.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of arguments.
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// True for symbols of arity zero.
    pub fn is_constant(&self) -> bool {
        self.arity == 0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A logic variable, written with a leading uppercase letter or underscore.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(Arc<str>);

impl Var {
    /// Builds a variable with the given name.
    pub fn new(name: &str) -> Self {
        Var(Arc::from(name))
    }

    /// The variable name.
    pub fn name(&self) -> &str {
        &self.0
    }

    /// Names of the form `_G<digits...>` belong to the fresh-variable supply.
    pub fn is_reserved(&self) -> bool {
        is_reserved_name(&self.0)
    }
}

pub(crate) fn is_reserved_name(name: &str) -> bool {
    name.strip_prefix("_G")
        .and_then(|rest| rest.bytes().next())
        .is_some_and(|b| b.is_ascii_digit())
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A first-order term: a variable or a functor applied to exactly
/// `arity` arguments.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    /// A variable occurrence.
    Var(Var),
    /// `f(t1, ..., tn)`; constants have no arguments.
    App(Symbol, Vec<Term>),
}

impl Term {
    /// A variable term.
    pub fn var(name: &str) -> Term {
        Term::Var(Var::new(name))
    }

    /// A constant `c`.
    pub fn constant(name: &str) -> Term {
        Term::App(Symbol::new(name, 0), Vec::new())
    }

    /// `name(args...)`, with the arity taken from the argument count.
    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::App(Symbol::new(name, args.len()), args)
    }

    /// Returns the variable if this term is one.
    pub fn as_var(&self) -> Option<&Var> {
        match self {
            Term::Var(v) => Some(v),
            Term::App(..) => None,
        }
    }

    /// True if this term is a variable.
    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    /// Root symbol, if any.
    pub fn symbol(&self) -> Option<&Symbol> {
        match self {
            Term::Var(_) => None,
            Term::App(s, _) => Some(s),
        }
    }

    /// Arguments of an application; empty for variables and constants.
    pub fn args(&self) -> &[Term] {
        match self {
            Term::Var(_) => &[],
            Term::App(_, args) => args,
        }
    }

    /// Arity of the root symbol, zero for variables.
    pub fn arity(&self) -> usize {
        self.args().len()
    }

    /// Variables in left-to-right order of first occurrence.
    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut Vec<Var>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// True if `v` occurs anywhere in the term.
    pub fn contains_var(&self, v: &Var) -> bool {
        match self {
            Term::Var(w) => w == v,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(v)),
        }
    }

    /// True if the term has no variables.
    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Number of symbol and variable occurrences.
    pub fn size(&self) -> usize {
        1 + self.args().iter().map(Term::size).sum::<usize>()
    }

    /// Height of the tree; variables and constants have depth 1.
    pub fn depth(&self) -> usize {
        1 + self.args().iter().map(Term::depth).max().unwrap_or(0)
    }

    /// Checks that every application carries as many arguments as its
    /// symbol's arity.
    pub fn is_well_formed(&self) -> bool {
        match self {
            Term::Var(_) => true,
            Term::App(s, args) => s.arity == args.len() && args.iter().all(Term::is_well_formed),
        }
    }

    /// Replaces every occurrence of `v` by `by`.
    pub fn replace_var(&self, v: &Var, by: &Term) -> Term {
        match self {
            Term::Var(w) if w == v => by.clone(),
            Term::Var(_) => self.clone(),
            Term::App(s, args) => {
                Term::App(s.clone(), args.iter().map(|a| a.replace_var(v, by)).collect())
            }
        }
    }
}

/// Variables of `t` in first-occurrence order.
pub fn vars_of(t: &Term) -> Vec<Var> {
    t.vars()
}

/// Renders a term in the concrete syntax: `f(X,a)`, constants without
/// parentheses.
pub fn print_term(t: &Term) -> alloc::string::String {
    alloc::format!("{t}")
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v.name()),
            Term::App(s, args) => {
                f.write_str(s.name())?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        fmt::Display::fmt(a, f)?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
