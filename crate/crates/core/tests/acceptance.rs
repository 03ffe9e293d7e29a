//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

mod common;

use std::time::{Duration, Instant};

use common::*;
use termlat_core::*;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn mixed_arity_signature() -> SimilaritySignature {
    let mut sig = SimilaritySignature::new(TNorm::Min);
    sig.add(sym("a/0"), sym("b/0"), 0.7, None).unwrap();
    sig.add(sym("c/0"), sym("d/0"), 0.6, None).unwrap();
    sig.add(sym("f/2"), sym("g/2"), 0.9, Some(&[(1, 2), (2, 1)])).unwrap();
    sig.add(sym("l/2"), sym("h/3"), 0.8, Some(&[(1, 2), (2, 3)])).unwrap();
    sig
}

const GIFT_NAMES: [(&str, &str); 8] = [
    ("a", "violet"),
    ("b", "lilac"),
    ("c", "chocolate"),
    ("d", "candy"),
    ("f", "pair"),
    ("g", "couple"),
    ("l", "smallgiftbag"),
    ("h", "smallgiftbox"),
];

fn gift_signature() -> SimilaritySignature {
    let mut sig = SimilaritySignature::new(TNorm::Min);
    sig.add(sym("violet/0"), sym("lilac/0"), 0.7, None).unwrap();
    sig.add(sym("chocolate/0"), sym("candy/0"), 0.6, None).unwrap();
    sig.add(sym("pair/2"), sym("couple/2"), 0.9, Some(&[(1, 2), (2, 1)])).unwrap();
    sig.add(sym("smallgiftbag/2"), sym("smallgiftbox/3"), 0.8, Some(&[(1, 2), (2, 3)])).unwrap();
    sig
}

const WALKTHROUGH_RULES: [UnifyRule; 8] = [
    UnifyRule::FuzzyEquationReorientation,
    UnifyRule::GenericWeakTermDecomposition,
    UnifyRule::GenericWeakTermDecomposition,
    UnifyRule::GenericWeakTermDecomposition,
    UnifyRule::GenericWeakTermDecomposition,
    UnifyRule::GenericWeakTermDecomposition,
    UnifyRule::EquationOrientation,
    UnifyRule::VariableElimination,
];

const WALKTHROUGH_SYSTEMS: [&str; 9] = [
    "{h(X,g(Y,b),f(Y,c)) = l(f(a,Z),g(d,c))}_1",
    "{l(f(a,Z),g(d,c)) = h(X,g(Y,b),f(Y,c))}_1",
    "{f(a,Z) = g(Y,b), g(d,c) = f(Y,c)}_0.8",
    "{a = b, Z = Y, g(d,c) = f(Y,c)}_0.8",
    "{Z = Y, g(d,c) = f(Y,c)}_0.7",
    "{Z = Y, d = c, c = Y}_0.7",
    "{Z = Y, c = Y}_0.6",
    "{Z = Y, Y = c}_0.6",
    "{Z = c, Y = c}_0.6",
];

const WALKTHROUGH_DEGREES: [f64; 9] = [1.0, 1.0, 0.8, 0.8, 0.7, 0.7, 0.6, 0.6, 0.6];

// Systems visited by the default strategy, initial system first.
fn replay(t1: &Term, t2: &Term, cfg: &UnifyConfig<'_>) -> (Vec<EquationSystem>, Vec<TraceStep>) {
    let mut systems = vec![EquationSystem::initial(t1, t2)];
    let mut steps = Vec::new();
    while let Some((next, s)) = step(systems.last().unwrap(), cfg) {
        systems.push(next);
        steps.push(s);
    }
    (systems, steps)
}

fn criterion_1() -> Verdict {
    let sig = mixed_arity_signature();
    let cfg = UnifyConfig::full(&sig);
    let (t1, t2) = (t("h(X,g(Y,b),f(Y,c))"), t("l(f(a,Z),g(d,c))"));
    let mut slowest = Duration::ZERO;
    let mut outcome = None;
    for _ in 0..5 {
        let start = Instant::now();
        let o = unify(&t1, &t2, &cfg).map_err(|e| e.to_string())?;
        slowest = slowest.max(start.elapsed());
        outcome = Some(o);
    }
    let o = outcome.unwrap();
    ensure(o.status == UnifyStatus::Solved, || format!("status {}", o.status.name()))?;
    let expected = Substitution::from_bindings([(Var::new("Y"), t("c")), (Var::new("Z"), t("c"))]);
    ensure(o.substitution.same_bindings(&expected), || format!("substitution {}", o.substitution))?;
    ensure((o.degree.value() - 0.6).abs() <= 1e-9, || format!("degree {}", o.degree.value()))?;
    let rules: Vec<UnifyRule> = o.trace.iter().map(|s| s.rule).collect();
    ensure(rules == WALKTHROUGH_RULES, || format!("rules {rules:?}"))?;
    let mut degrees = vec![o.trace[0].degree_before.value()];
    degrees.extend(o.trace.iter().map(|s| s.degree_after.value()));
    ensure(
        degrees.iter().zip(WALKTHROUGH_DEGREES).all(|(a, b)| (a - b).abs() <= 1e-9),
        || format!("degrees {degrees:?}"),
    )?;
    let (systems, _) = replay(&t1, &t2, &cfg);
    let shown: Vec<String> = systems.iter().map(|s| s.to_string()).collect();
    ensure(shown == WALKTHROUGH_SYSTEMS, || format!("systems {shown:?}"))?;
    ensure(slowest < Duration::from_millis(10), || format!("runtime {slowest:?}"))?;
    Ok(format!("8 steps, degree {}, slowest run {slowest:?}", o.degree))
}

fn criterion_2() -> Verdict {
    let sig = mixed_arity_signature();
    let gift = gift_signature();
    let (t1, t2) = (t("h(X,g(Y,b),f(Y,c))"), t("l(f(a,Z),g(d,c))"));
    let (g1, g2) = (rename_symbols(&t1, &GIFT_NAMES), rename_symbols(&t2, &GIFT_NAMES));
    ensure(g1 == t("smallgiftbox(X,couple(Y,lilac),pair(Y,chocolate))"), || format!("t1 {g1}"))?;
    ensure(g2 == t("smallgiftbag(pair(violet,Z),couple(candy,chocolate))"), || format!("t2 {g2}"))?;
    let o = unify(&g1, &g2, &UnifyConfig::full(&gift)).map_err(|e| e.to_string())?;
    ensure(o.status == UnifyStatus::Solved, || format!("status {}", o.status.name()))?;
    let expected =
        Substitution::from_bindings([(Var::new("Y"), t("chocolate")), (Var::new("Z"), t("chocolate"))]);
    ensure(o.substitution.same_bindings(&expected), || format!("substitution {}", o.substitution))?;
    ensure((o.degree.value() - 0.6).abs() <= 1e-9, || format!("degree {}", o.degree.value()))?;
    let (plain, _) = replay(&t1, &t2, &UnifyConfig::full(&sig));
    let (renamed, _) = replay(&g1, &g2, &UnifyConfig::full(&gift));
    ensure(plain.len() == renamed.len(), || format!("{} vs {} systems", plain.len(), renamed.len()))?;
    let back: Vec<(&str, &str)> = GIFT_NAMES.iter().map(|&(a, b)| (b, a)).collect();
    for (p, r) in plain.iter().zip(&renamed) {
        let mapped: Vec<Equation> = r
            .equations
            .iter()
            .map(|e| Equation::new(rename_symbols(&e.lhs, &back), rename_symbols(&e.rhs, &back)))
            .collect();
        ensure(mapped == p.equations && r.degree == p.degree, || format!("{r} differs from {p}"))?;
    }
    let a: Vec<String> = o.trace.iter().map(|s| format!("{} {} {}", s.rule, s.degree_before, s.degree_after)).collect();
    let base = unify(&t1, &t2, &UnifyConfig::full(&sig)).unwrap();
    let b: Vec<String> = base.trace.iter().map(|s| format!("{} {} {}", s.rule, s.degree_before, s.degree_after)).collect();
    ensure(a == b, || "trace shapes differ".into())?;
    Ok(format!("{} steps identical up to symbol names, degree {}", o.trace.len(), o.degree))
}

fn criterion_3() -> Verdict {
    let mut sig = SimilaritySignature::new(TNorm::Min);
    sig.add(sym("f/2"), sym("g/2"), 0.9, None).unwrap();
    let t1 = t("h(f(a,X1),g(X1,b),f(Y1,Y1))");
    let t2 = t("h(X2,X2,g(c,d))");
    let r = generalize(&t1, &t2, &GenConfig::functor_weak(&sig)).map_err(|e| e.to_string())?;
    ensure((r.degree.value() - 0.9).abs() <= 1e-9, || format!("degree {}", r.degree.value()))?;
    let expected = t("h(X,Y,f(Z,U))");
    ensure(variant_equal(&r.generalizer, &expected), || format!("generalizer {}", r.generalizer))?;
    let sigma1 = Substitution::from_bindings([
        (Var::new("X"), t("f(a,X1)")),
        (Var::new("Y"), t("g(X1,b)")),
        (Var::new("Z"), t("Y1")),
        (Var::new("U"), t("Y1")),
    ]);
    let sigma2 = Substitution::from_bindings([
        (Var::new("X"), t("X2")),
        (Var::new("Y"), t("X2")),
        (Var::new("Z"), t("c")),
        (Var::new("U"), t("d")),
    ]);
    let renaming = subsumes(&r.generalizer, &expected).ok_or("no renaming")?;
    for v in vars_of(&r.generalizer) {
        let x = Term::Var(v.clone());
        let named = renaming.apply(&x);
        ensure(r.sigma1.apply(&x) == sigma1.apply(&named), || format!("sigma1 at {v}: {}", r.sigma1))?;
        ensure(r.sigma2.apply(&x) == sigma2.apply(&named), || format!("sigma2 at {v}: {}", r.sigma2))?;
    }
    ensure(r.sigma1.len() == 4 && r.sigma2.len() == 4, || "extra bindings".into())?;
    Ok(format!("generalizer {}, degree {}", r.generalizer, r.degree))
}

fn criterion_4() -> Verdict {
    let start = Instant::now();
    let mut rng = rng(4);
    let symbols = crisp_symbols();
    let n = 5000;
    for _ in 0..n {
        let (a, b) = random_pair(&mut rng, &symbols, 4, true);
        let r = generalize(&a, &b, &GenConfig::crisp()).map_err(|e| e.to_string())?;
        ensure(r.sigma1.apply(&r.generalizer) == a && r.sigma2.apply(&r.generalizer) == b, || {
            format!("instances differ for {a} / {b}")
        })?;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(30), || format!("runtime {took:?}"))?;
    Ok(format!("{n}/{n} pairs, {took:?}"))
}

fn criterion_5() -> Verdict {
    let mut rng = rng(5);
    let symbols = fuzzy_symbols();
    let n = 5000;
    let (mut solved_full, mut solved_crisp) = (0, 0);
    for _ in 0..n {
        let sig = random_signature(&mut rng, &symbols, TNorm::Min, SigKind::Any);
        let (a, b) = random_pair(&mut rng, &symbols, 4, false);
        let o = unify(&a, &b, &UnifyConfig::full(&sig)).map_err(|e| e.to_string())?;
        if o.is_solved() {
            solved_full += 1;
            let d = term_similarity(&sig, &o.substitution.apply(&a), &o.substitution.apply(&b), SimilarityMode::Mapped);
            ensure(close(d, o.degree), || format!("{a} / {b}: similarity {d} vs degree {}", o.degree))?;
        }
        let c = unify(&a, &b, &UnifyConfig::crisp()).map_err(|e| e.to_string())?;
        if c.is_solved() {
            solved_crisp += 1;
            ensure(c.substitution.apply(&a) == c.substitution.apply(&b), || format!("{a} / {b}"))?;
        }
    }
    ensure(solved_full > 0 && solved_crisp > 0, || "no solved problems".into())?;
    Ok(format!("{n} pairs, {solved_full} fuzzy and {solved_crisp} crisp solutions checked"))
}

fn criterion_6() -> Verdict {
    let mut rng = rng(6);
    let symbols = fuzzy_symbols();
    let n = 2000;
    let mut below_one = 0;
    for i in 0..2 * n {
        let (a, b) = random_pair(&mut rng, &symbols, 4, true);
        let (kind, mode) = if i % 2 == 0 {
            (SigKind::EqualArity, GenMode::FunctorWeak)
        } else {
            (SigKind::Any, GenMode::Full)
        };
        let sig = random_signature(&mut rng, &symbols, TNorm::Min, kind);
        let cfg = GenConfig { mode, signature: &sig, shared_vars: SharedVars::Keep };
        let r = generalize(&a, &b, &cfg).map_err(|e| e.to_string())?;
        if r.degree < Degree::ONE {
            below_one += 1;
        }
        for (sigma, input) in [(&r.sigma1, &a), (&r.sigma2, &b)] {
            let d = term_similarity(&sig, &sigma.apply(&r.generalizer), input, mode.similarity_mode());
            ensure(d >= r.degree, || format!("{a} / {b}: similarity {d} below degree {}", r.degree))?;
        }
    }
    Ok(format!("{n} functor-weak and {n} full pairs, {below_one} with degree below 1"))
}

fn same_failure_class(a: UnifyStatus, b: UnifyStatus) -> bool {
    let class = |s| match s {
        UnifyStatus::DegreeZero => UnifyStatus::Clash,
        s => s,
    };
    class(a) == class(b)
}

fn same_outcome(a: &UnifyOutcome, b: &UnifyOutcome, t1: &Term, t2: &Term) -> bool {
    same_failure_class(a.status, b.status)
        && a.degree == b.degree
        && variant_equal(&a.substitution.apply(t1), &b.substitution.apply(t1))
        && variant_equal(&a.substitution.apply(t2), &b.substitution.apply(t2))
}

fn criterion_7() -> Verdict {
    let mut rng = rng(7);
    let symbols = fuzzy_symbols();
    let n = 5000;
    let empty = SimilaritySignature::new(TNorm::Min);
    for _ in 0..n {
        let (a, b) = random_pair(&mut rng, &symbols, 4, false);
        let c = unify(&a, &b, &UnifyConfig::crisp()).map_err(|e| e.to_string())?;
        let f = unify(&a, &b, &UnifyConfig::full(&empty)).map_err(|e| e.to_string())?;
        ensure(same_outcome(&c, &f, &a, &b), || format!("crisp/full differ on {a} / {b}"))?;
    }
    let mut fuzzy_solved = 0;
    for _ in 0..n {
        let sig = random_signature(&mut rng, &symbols, TNorm::Min, SigKind::EqualArityIdentity);
        let (a, b) = random_pair(&mut rng, &symbols, 4, false);
        let w = unify(&a, &b, &UnifyConfig::weak(&sig)).map_err(|e| e.to_string())?;
        let f = unify(&a, &b, &UnifyConfig::full(&sig)).map_err(|e| e.to_string())?;
        ensure(w.status == f.status && same_outcome(&w, &f, &a, &b), || format!("weak/full differ on {a} / {b}"))?;
        if w.is_solved() && w.degree < Degree::ONE {
            fuzzy_solved += 1;
        }
    }
    Ok(format!("{n} + {n} pairs agree, {fuzzy_solved} weak solutions below degree 1"))
}

fn criterion_8() -> Verdict {
    let start = Instant::now();
    let symbols = syms(&["a/0", "b/0", "f/1", "g/2"]);
    let space = TermSpace::new(symbols.clone(), 2, vars(&["X", "Y", "Z"]));
    let terms = enumerate_terms(&space).map_err(|e| e.to_string())?;
    let range = TermSpace::ground(symbols.clone(), 2);
    let candidates = TermSpace::new(symbols, 2, vars(&["U", "V"]));
    let mut unifiers = 0usize;
    for a in &terms {
        for b in &terms {
            let o = unify(a, b, &UnifyConfig::crisp()).map_err(|e| e.to_string())?;
            let found = oracle_unifiers(a, b, &range).map_err(|e| e.to_string())?;
            ensure(o.is_solved() == !found.is_empty(), || format!("solvability differs on {a} / {b}"))?;
            for theta in &found {
                unifiers += 1;
                let factored = compose(&o.substitution, theta);
                let agrees = vars_of(a)
                    .into_iter()
                    .chain(vars_of(b))
                    .all(|v| factored.apply(&Term::Var(v.clone())) == theta.apply(&Term::Var(v)));
                ensure(agrees, || format!("{} does not factor {theta} on {a} / {b}", o.substitution))?;
            }
            let r = generalize(a, b, &GenConfig::crisp()).map_err(|e| e.to_string())?;
            for (u, ..) in oracle_generalizers(a, b, &candidates).map_err(|e| e.to_string())? {
                ensure(subsumes(&u, &r.generalizer).is_some(), || {
                    format!("{u} is strictly below {} for {a} / {b}", r.generalizer)
                })?;
            }
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(60), || format!("runtime {took:?}"))?;
    Ok(format!("{} terms, {} pairs, {unifiers} oracle unifiers factored, {took:?}", terms.len(), terms.len().pow(2)))
}

fn criterion_9() -> Verdict {
    let mut rng = rng(9);
    let problems = 200;
    let orders = 100;
    let crisp = UnifyConfig::crisp();
    let symbols = crisp_symbols();
    for _ in 0..problems {
        let (a, b) = random_pair(&mut rng, &symbols, 4, false);
        let reference = unify(&a, &b, &crisp).map_err(|e| e.to_string())?;
        for _ in 0..orders {
            let o = unify_randomly(&a, &b, &crisp, &mut rng);
            ensure(o.status == reference.status && same_outcome(&o, &reference, &a, &b), || {
                format!("crisp order dependence on {a} / {b}")
            })?;
        }
    }
    let symbols = fuzzy_symbols();
    for _ in 0..problems {
        let sig = ultrametric_signature(&mut rng, &symbols);
        let cfg = UnifyConfig::full(&sig);
        let (a, b) = random_pair(&mut rng, &symbols, 4, false);
        let reference = unify(&a, &b, &cfg).map_err(|e| e.to_string())?;
        for _ in 0..orders {
            let o = unify_randomly(&a, &b, &cfg, &mut rng);
            ensure(o.status == reference.status && o.degree == reference.degree, || {
                format!("fuzzy order dependence on {a} / {b}")
            })?;
        }
    }
    Ok(format!("{problems} crisp and {problems} fuzzy problems x {orders} orders"))
}

fn runtime_ratio() -> Verdict {
    let mut rng = rng(10);
    let symbols = fuzzy_symbols();
    let corpus: Vec<(SimilaritySignature, Term, Term)> = (0..5000)
        .map(|_| {
            let sig = random_signature(&mut rng, &symbols, TNorm::Min, SigKind::Any);
            let (a, b) = random_pair(&mut rng, &symbols, 4, false);
            (sig, a, b)
        })
        .collect();
    let time = |full: bool| {
        let start = Instant::now();
        for (sig, a, b) in &corpus {
            let cfg = if full { UnifyConfig::full(sig) } else { UnifyConfig::crisp() };
            std::hint::black_box(unify(a, b, &cfg).unwrap());
        }
        start.elapsed()
    };
    let best = |full| (0..3).map(|_| time(full)).min().unwrap();
    let (crisp, full) = (best(false), best(true));
    let ratio = full.as_secs_f64() / crisp.as_secs_f64();
    ensure(ratio <= 3.0, || format!("full {full:?} vs crisp {crisp:?}, ratio {ratio:.2}"))?;
    Ok(format!("full {full:?} vs crisp {crisp:?}, ratio {ratio:.2}"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 mixed-arity fuzzy unification walkthrough", criterion_1),
        ("2 same walkthrough with renamed symbols", criterion_2),
        ("3 functor-weak generalization walkthrough", criterion_3),
        ("4 crisp generalizers instantiate to the inputs", criterion_4),
        ("5 solved degrees equal instance similarity", criterion_5),
        ("6 fuzzy generalizers approximate the inputs", criterion_6),
        ("7 full mode reduces to crisp and weak", criterion_7),
        ("8 lattice checks against the oracle", criterion_8),
        ("9 strategy independence", criterion_9),
        ("complexity full within 3x crisp", runtime_ratio),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
