#![allow(dead_code)]

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use termlat_core::*;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn t(s: &str) -> Term {
    parse_term(s).unwrap()
}

pub fn sym(s: &str) -> Symbol {
    let (n, a) = s.split_once('/').unwrap();
    Symbol::new(n, a.parse().unwrap())
}

pub fn syms(list: &[&str]) -> Vec<Symbol> {
    list.iter().map(|s| sym(s)).collect()
}

pub fn vars(list: &[&str]) -> Vec<Var> {
    list.iter().map(|v| Var::new(v)).collect()
}

/// Six symbols with two arities colliding, used by the crisp corpus.
pub fn crisp_symbols() -> Vec<Symbol> {
    syms(&["a/0", "b/0", "c/0", "f/1", "g/2", "h/2"])
}

/// Six symbols spread over arities 0..=3, used by the fuzzy corpora.
pub fn fuzzy_symbols() -> Vec<Symbol> {
    syms(&["a/0", "b/0", "c/0", "f/2", "g/2", "h/3"])
}

pub fn random_term(rng: &mut TestRng, symbols: &[Symbol], vars: &[Var], max_depth: usize) -> Term {
    let leaves: Vec<Term> = vars
        .iter()
        .map(|v| Term::Var(v.clone()))
        .chain(symbols.iter().filter(|s| s.arity() == 0).map(|s| Term::App(s.clone(), vec![])))
        .collect();
    let branches: Vec<&Symbol> = symbols.iter().filter(|s| s.arity() > 0).collect();
    if max_depth <= 1 || branches.is_empty() || rng.gen_bool(0.3) {
        return leaves.choose(rng).unwrap().clone();
    }
    let f = *branches.choose(rng).unwrap();
    let args = (0..f.arity()).map(|_| random_term(rng, symbols, vars, max_depth - 1)).collect();
    Term::App(f.clone(), args)
}

/// Pair of terms; `disjoint` draws the second term's variables from a
/// separate pool.
pub fn random_pair(
    rng: &mut TestRng,
    symbols: &[Symbol],
    max_depth: usize,
    disjoint: bool,
) -> (Term, Term) {
    let left = vars(&["X", "Y", "Z"]);
    let right = if disjoint { vars(&["U", "V", "W"]) } else { left.clone() };
    (random_term(rng, symbols, &left, max_depth), random_term(rng, symbols, &right, max_depth))
}

fn random_degree(rng: &mut TestRng) -> f64 {
    f64::from(rng.gen_range(1..=10u32)) / 10.0
}

fn random_mapping(rng: &mut TestRng, lo: usize, hi: usize) -> Vec<(usize, usize)> {
    let mut targets: Vec<usize> = (1..=hi).collect();
    targets.shuffle(rng);
    (1..=lo).zip(targets).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigKind {
    /// Any pairs, any injective mappings.
    Any,
    /// Equal arities only, with random permutations.
    EqualArity,
    /// Equal arities only, identity mappings.
    EqualArityIdentity,
}

pub fn random_signature(rng: &mut TestRng, symbols: &[Symbol], tnorm: TNorm, kind: SigKind) -> SimilaritySignature {
    let mut sig = SimilaritySignature::new(tnorm);
    for (i, f) in symbols.iter().enumerate() {
        for g in &symbols[i + 1..] {
            if kind != SigKind::Any && f.arity() != g.arity() {
                continue;
            }
            if !rng.gen_bool(0.45) {
                continue;
            }
            let (lo, hi) = if f.arity() <= g.arity() { (f, g) } else { (g, f) };
            let mapping = match kind {
                SigKind::EqualArityIdentity => None,
                _ => Some(random_mapping(rng, lo.arity(), hi.arity())),
            };
            sig.add(lo.clone(), hi.clone(), random_degree(rng), mapping.as_deref()).unwrap();
        }
    }
    sig
}

/// Min-transitive signature: symbols of equal arity fall into random
/// clusters; within a cluster the degree is `inner`, across clusters `outer`
/// (or unrelated). Mappings are identities.
pub fn ultrametric_signature(rng: &mut TestRng, symbols: &[Symbol]) -> SimilaritySignature {
    let mut sig = SimilaritySignature::new(TNorm::Min);
    let inner = f64::from(rng.gen_range(5..=9u32)) / 10.0;
    let outer = if rng.gen_bool(0.5) { Some(f64::from(rng.gen_range(1..=4u32)) / 10.0) } else { None };
    let cluster: Vec<u32> = symbols.iter().map(|_| rng.gen_range(0..2)).collect();
    for (i, f) in symbols.iter().enumerate() {
        for (j, g) in symbols.iter().enumerate().skip(i + 1) {
            if f.arity() != g.arity() {
                continue;
            }
            let d = if cluster[i] == cluster[j] { Some(inner) } else { outer };
            if let Some(d) = d {
                sig.add(f.clone(), g.clone(), d, None).unwrap();
            }
        }
    }
    sig
}

/// Drives the rule engine choosing uniformly among applicable equations.
pub fn unify_randomly(t1: &Term, t2: &Term, cfg: &UnifyConfig<'_>, rng: &mut TestRng) -> UnifyOutcome {
    let mut system = EquationSystem::initial(t1, t2);
    let limit = step_limit(system.size());
    let mut trace = Vec::new();
    loop {
        let choices = applicable(&system, cfg);
        let Some(&i) = choices.choose(rng) else { break };
        let (next, s) = step_at(&system, i, cfg).expect("applicable index must step");
        trace.push(s);
        assert!(trace.len() <= limit, "step limit exceeded");
        system = next;
    }
    UnifyOutcome::from_normal_form(&system, cfg, trace)
}

/// Renames function symbols by name, keeping arities.
pub fn rename_symbols(term: &Term, names: &[(&str, &str)]) -> Term {
    match term {
        Term::Var(_) => term.clone(),
        Term::App(s, args) => {
            let name = names.iter().find(|(from, _)| *from == s.name()).map_or(s.name(), |p| p.1);
            Term::App(Symbol::new(name, s.arity()), args.iter().map(|a| rename_symbols(a, names)).collect())
        }
    }
}

/// Replaces every function symbol by `s<arity>`, so terms differing only in
/// functor names compare equal.
pub fn skeleton(term: &Term) -> Term {
    match term {
        Term::Var(_) => term.clone(),
        Term::App(s, args) => Term::App(
            Symbol::new(&format!("s{}", s.arity()), s.arity()),
            args.iter().map(skeleton).collect(),
        ),
    }
}

pub fn close(a: Degree, b: Degree) -> bool {
    (a.value() - b.value()).abs() < 1e-9
}

// Proptest strategies.

/// Terms of depth at most `depth`.
pub fn arb_term_over(symbols: Vec<Symbol>, var_names: &'static [&'static str], depth: u32) -> BoxedStrategy<Term> {
    let mut leaves: Vec<Term> = var_names.iter().map(|v| Term::var(v)).collect();
    leaves.extend(symbols.iter().filter(|s| s.arity() == 0).map(|s| Term::App(s.clone(), vec![])));
    let branches: Vec<Symbol> = symbols.into_iter().filter(|s| s.arity() > 0).collect();
    let leaf = prop::sample::select(leaves);
    leaf.prop_recursive(depth.saturating_sub(1), 64, 3, move |inner| {
        prop::sample::select(branches.clone()).prop_flat_map(move |f| {
            prop::collection::vec(inner.clone(), f.arity()).prop_map(move |args| Term::App(f.clone(), args))
        })
    })
    .boxed()
}

pub fn arb_term() -> BoxedStrategy<Term> {
    arb_term_over(crisp_symbols(), &["X", "Y", "Z"], 4)
}

pub fn arb_fuzzy_term() -> BoxedStrategy<Term> {
    arb_term_over(fuzzy_symbols(), &["X", "Y", "Z"], 4)
}

pub fn arb_fuzzy_term_right() -> BoxedStrategy<Term> {
    arb_term_over(fuzzy_symbols(), &["U", "V", "W"], 4)
}
