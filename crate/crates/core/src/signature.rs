//! Similarity signatures.
//!
//! A signature relates pairs of functor symbols with a degree in `(0, 1]` and
//! an injective mapping from the argument positions of the lower-arity symbol
//! to those of the higher-arity one. Reflexivity and symmetry are implicit:
//! every symbol is similar to itself with degree 1, and a stored entry answers
//! lookups in both orientations.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::term::{Symbol, Term};

/// A truth value in `[0, 1]`.
#[derive(Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Degree(f64);

impl Degree {
    /// Full truth.
    pub const ONE: Degree = Degree(1.0);
    /// No similarity at all.
    pub const ZERO: Degree = Degree(0.0);

    /// Wraps a value, or `None` if it lies outside `[0, 1]` or is NaN.
    pub fn new(value: f64) -> Option<Degree> {
        (0.0..=1.0).contains(&value).then_some(Degree(value))
    }

    /// The raw value.
    pub fn value(self) -> f64 {
        self.0
    }

    /// True for degree 0.
    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// At most 6 decimals, trailing zeros trimmed: `1`, `0.6`, `0.63`.
impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = alloc::format!("{:.6}", self.0);
        let s = s.trim_end_matches('0').trim_end_matches('.');
        f.write_str(if s == "-0" { "0" } else { s })
    }
}

/// The conjunction used to combine degrees.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TNorm {
    /// `min(x, y)`.
    #[default]
    Min,
    /// `x * y`.
    Product,
}

impl TNorm {
    /// Combines two degrees.
    pub fn and(self, x: Degree, y: Degree) -> Degree {
        match self {
            TNorm::Min => Degree(x.0.min(y.0)),
            TNorm::Product => Degree(x.0 * y.0),
        }
    }

    /// Name used in signature files.
    pub fn name(self) -> &'static str {
        match self {
            TNorm::Min => "min",
            TNorm::Product => "product",
        }
    }
}

/// Injective map from the argument positions of a lower-arity symbol to the
/// positions of a higher-arity one. Positions are 1-based at the API surface.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ArgMapping {
    // images[i] is the 0-based image of 0-based position i
    images: Vec<usize>,
}

impl ArgMapping {
    /// The identity on `n` positions.
    pub fn identity(n: usize) -> Self {
        ArgMapping { images: (0..n).collect() }
    }

    /// Builds a mapping from 1-based `(from, to)` pairs, checking that it is
    /// total on `1..=lo_arity`, lands in `1..=hi_arity` and is injective.
    pub fn from_pairs(
        pairs: &[(usize, usize)],
        lo_arity: usize,
        hi_arity: usize,
    ) -> Result<Self, MappingError> {
        let mut images: Vec<Option<usize>> = alloc::vec![None; lo_arity];
        for &(from, to) in pairs {
            if from == 0 || from > lo_arity {
                return Err(MappingError::SourceOutOfRange { position: from, arity: lo_arity });
            }
            if to == 0 || to > hi_arity {
                return Err(MappingError::TargetOutOfRange { position: to, arity: hi_arity });
            }
            if images[from - 1].is_some() {
                return Err(MappingError::DuplicateSource(from));
            }
            if images.iter().flatten().any(|&j| j == to - 1) {
                return Err(MappingError::NotInjective(to));
            }
            images[from - 1] = Some(to - 1);
        }
        if let Some(missing) = images.iter().position(Option::is_none) {
            return Err(MappingError::NotTotal(missing + 1));
        }
        Ok(ArgMapping { images: images.into_iter().flatten().collect() })
    }

    /// Number of mapped positions (the lower arity).
    pub fn len(&self) -> usize {
        self.images.len()
    }

    /// True when no position is mapped (constants).
    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// 0-based image of a 0-based position.
    pub fn image(&self, position: usize) -> usize {
        self.images[position]
    }

    /// 1-based `(from, to)` pairs in source order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.images.iter().enumerate().map(|(i, &j)| (i + 1, j + 1))
    }

    /// True when every position maps to itself.
    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Inverse of a mapping between equal arities.
    fn inverse(&self) -> ArgMapping {
        let mut images = alloc::vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        ArgMapping { images }
    }
}

impl fmt::Display for ArgMapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, (i, j)) in self.pairs().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{i}->{j}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for ArgMapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Why a position mapping is malformed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MappingError {
    /// Source position outside the lower arity.
    SourceOutOfRange {
        /// Offending position.
        position: usize,
        /// Lower arity.
        arity: usize,
    },
    /// Target position outside the higher arity.
    TargetOutOfRange {
        /// Offending position.
        position: usize,
        /// Higher arity.
        arity: usize,
    },
    /// Source position listed twice.
    DuplicateSource(usize),
    /// Two sources share this image.
    NotInjective(usize),
    /// This source position has no image.
    NotTotal(usize),
}

impl fmt::Display for MappingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MappingError::SourceOutOfRange { position, arity } => {
                write!(f, "source position {position} out of range 1..{arity}")
            }
            MappingError::TargetOutOfRange { position, arity } => {
                write!(f, "target position {position} out of range 1..{arity}")
            }
            MappingError::DuplicateSource(p) => write!(f, "source position {p} mapped twice"),
            MappingError::NotInjective(p) => {
                write!(f, "mapping not injective: two positions map to {p}")
            }
            MappingError::NotTotal(p) => write!(f, "source position {p} is not mapped"),
        }
    }
}

/// A stored similarity `lo ~ hi` with `arity(lo) <= arity(hi)`.
#[derive(Clone, PartialEq)]
pub struct SimilarityEntry {
    lo: Symbol,
    hi: Symbol,
    degree: Degree,
    mapping: ArgMapping,
}

impl SimilarityEntry {
    /// Validates and builds an entry. `mapping: None` means the identity and
    /// is only legal for equal arities.
    pub fn new(
        lo: Symbol,
        hi: Symbol,
        degree: f64,
        mapping: Option<ArgMapping>,
    ) -> Result<Self, SignatureError> {
        let pair = || (lo.clone(), hi.clone());
        if lo == hi {
            return Err(SignatureError::SelfSimilarity(lo.clone()));
        }
        if lo.arity() > hi.arity() {
            let (lo, hi) = pair();
            return Err(SignatureError::WrongDirection { lo, hi });
        }
        if !(degree > 0.0 && degree <= 1.0) {
            let (lo, hi) = pair();
            return Err(SignatureError::DegreeOutOfRange { lo, hi, degree });
        }
        let mapping = match mapping {
            Some(m) => m,
            None if lo.arity() == hi.arity() => ArgMapping::identity(lo.arity()),
            None => {
                let (lo, hi) = pair();
                return Err(SignatureError::MissingMapping { lo, hi });
            }
        };
        let consistent = mapping.len() == lo.arity()
            && mapping.images.iter().all(|&j| j < hi.arity())
            && {
                let mut seen = mapping.images.clone();
                seen.sort_unstable();
                seen.windows(2).all(|w| w[0] != w[1])
            };
        if !consistent {
            let (lo, hi) = pair();
            return Err(SignatureError::BadMapping {
                lo,
                hi,
                reason: MappingError::NotTotal(mapping.len() + 1),
            });
        }
        Ok(SimilarityEntry { lo, hi, degree: Degree(degree), mapping })
    }

    /// Lower-arity symbol.
    pub fn lo(&self) -> &Symbol {
        &self.lo
    }

    /// Higher-arity symbol.
    pub fn hi(&self) -> &Symbol {
        &self.hi
    }

    /// Similarity degree.
    pub fn degree(&self) -> Degree {
        self.degree
    }

    /// Position mapping from `lo` to `hi`.
    pub fn mapping(&self) -> &ArgMapping {
        &self.mapping
    }

    /// True when both symbols have the same arity.
    pub fn equal_arity(&self) -> bool {
        self.lo.arity() == self.hi.arity()
    }
}

impl fmt::Debug for SimilarityEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sim {} {} : {} {}", self.lo, self.hi, self.degree, self.mapping)
    }
}

/// Validation failures.
#[derive(Clone, Debug, PartialEq)]
pub enum SignatureError {
    /// A symbol declared similar to itself.
    SelfSimilarity(Symbol),
    /// First symbol has the higher arity.
    WrongDirection {
        /// First symbol as written.
        lo: Symbol,
        /// Second symbol as written.
        hi: Symbol,
    },
    /// Degree outside `(0, 1]`.
    DegreeOutOfRange {
        /// First symbol.
        lo: Symbol,
        /// Second symbol.
        hi: Symbol,
        /// Offending degree.
        degree: f64,
    },
    /// Unequal arities and no mapping.
    MissingMapping {
        /// First symbol.
        lo: Symbol,
        /// Second symbol.
        hi: Symbol,
    },
    /// Mapping malformed for these arities.
    BadMapping {
        /// First symbol.
        lo: Symbol,
        /// Second symbol.
        hi: Symbol,
        /// What is wrong.
        reason: MappingError,
    },
    /// The unordered pair is already declared.
    DuplicatePair {
        /// First symbol.
        lo: Symbol,
        /// Second symbol.
        hi: Symbol,
    },
}

impl fmt::Display for SignatureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignatureError::SelfSimilarity(s) => {
                write!(f, "entry {s} {s}: a symbol is implicitly similar to itself")
            }
            SignatureError::WrongDirection { lo, hi } => write!(
                f,
                "entry {lo} {hi}: first symbol must not have a higher arity than the second"
            ),
            SignatureError::DegreeOutOfRange { lo, hi, degree } => {
                write!(f, "entry {lo} {hi}: degree {degree} outside (0,1]")
            }
            SignatureError::MissingMapping { lo, hi } => {
                write!(f, "entry {lo} {hi}: a position mapping is required for unequal arities")
            }
            SignatureError::BadMapping { lo, hi, reason } => write!(f, "entry {lo} {hi}: {reason}"),
            SignatureError::DuplicatePair { lo, hi } => {
                write!(f, "entry {lo} {hi}: pair declared more than once")
            }
        }
    }
}

impl core::error::Error for SignatureError {}

/// Result of looking up two symbols.
#[derive(Clone, Copy, Debug)]
pub struct Lookup<'a> {
    /// Similarity degree, 1 for identical symbols.
    pub degree: Degree,
    /// Mapping from the lower-arity symbol's positions to the other's. For
    /// equal arities it always goes from the first queried symbol to the
    /// second. `None` is the identity.
    pub mapping: Option<&'a ArgMapping>,
    /// True when the first queried symbol is the mapping's source side.
    pub first_is_lower: bool,
}

impl Lookup<'_> {
    /// 0-based image of a 0-based source position.
    pub fn image(&self, position: usize) -> usize {
        self.mapping.map_or(position, |m| m.image(position))
    }
}

/// A set of similarity entries together with the t-norm that combines
/// degrees.
#[derive(Clone, Debug, Default)]
pub struct SimilaritySignature {
    entries: Vec<SimilarityEntry>,
    // (first, second) -> (entry index, inverted mapping for equal arities)
    index: BTreeMap<(Symbol, Symbol), (usize, Option<ArgMapping>)>,
    tnorm: TNorm,
}

static EMPTY: SimilaritySignature = SimilaritySignature::EMPTY;

impl SimilaritySignature {
    /// Crisp signature: no entries, min t-norm.
    pub const EMPTY: SimilaritySignature =
        SimilaritySignature { entries: Vec::new(), index: BTreeMap::new(), tnorm: TNorm::Min };

    /// A shared empty signature.
    pub fn empty() -> &'static SimilaritySignature {
        &EMPTY
    }

    /// Empty signature with the given t-norm.
    pub fn new(tnorm: TNorm) -> Self {
        SimilaritySignature { tnorm, ..Default::default() }
    }

    /// Builds a signature from entries, rejecting duplicate pairs.
    pub fn from_entries<I>(tnorm: TNorm, entries: I) -> Result<Self, SignatureError>
    where
        I: IntoIterator<Item = SimilarityEntry>,
    {
        let mut sig = SimilaritySignature::new(tnorm);
        for e in entries {
            sig.insert(e)?;
        }
        Ok(sig)
    }

    /// Adds a validated entry.
    pub fn insert(&mut self, entry: SimilarityEntry) -> Result<(), SignatureError> {
        let key = (entry.lo.clone(), entry.hi.clone());
        let rev = (entry.hi.clone(), entry.lo.clone());
        if self.index.contains_key(&key) || self.index.contains_key(&rev) {
            return Err(SignatureError::DuplicatePair { lo: entry.lo, hi: entry.hi });
        }
        let i = self.entries.len();
        let inverse = entry.equal_arity().then(|| entry.mapping.inverse());
        self.index.insert(key, (i, None));
        self.index.insert(rev, (i, inverse));
        self.entries.push(entry);
        Ok(())
    }

    /// Convenience for tests and examples: builds and inserts an entry.
    pub fn add(
        &mut self,
        lo: Symbol,
        hi: Symbol,
        degree: f64,
        mapping: Option<&[(usize, usize)]>,
    ) -> Result<(), SignatureError> {
        let mapping = match mapping {
            Some(pairs) => Some(ArgMapping::from_pairs(pairs, lo.arity(), hi.arity()).map_err(
                |reason| SignatureError::BadMapping { lo: lo.clone(), hi: hi.clone(), reason },
            )?),
            None => None,
        };
        self.insert(SimilarityEntry::new(lo, hi, degree, mapping)?)
    }

    /// The t-norm in use.
    pub fn tnorm(&self) -> TNorm {
        self.tnorm
    }

    /// Same entries, different t-norm.
    pub fn with_tnorm(mut self, tnorm: TNorm) -> Self {
        self.tnorm = tnorm;
        self
    }

    /// Combines two degrees with the signature's t-norm.
    pub fn and(&self, x: Degree, y: Degree) -> Degree {
        self.tnorm.and(x, y)
    }

    /// Stored entries in insertion order.
    pub fn entries(&self) -> &[SimilarityEntry] {
        &self.entries
    }

    /// True when no entry relates symbols of different arities.
    pub fn is_equal_arity(&self) -> bool {
        self.entries.iter().all(SimilarityEntry::equal_arity)
    }

    /// How similar `f` is to `g`, or `None` when they are unrelated.
    pub fn lookup(&self, f: &Symbol, g: &Symbol) -> Option<Lookup<'_>> {
        if f == g {
            return Some(Lookup { degree: Degree::ONE, mapping: None, first_is_lower: true });
        }
        let (i, inverse) = self.index.get(&(f.clone(), g.clone()))?;
        let e = &self.entries[*i];
        let first_is_lower = e.lo == *f;
        let mapping = match inverse {
            Some(inv) => inv,
            None => &e.mapping,
        };
        Some(Lookup {
            degree: e.degree,
            mapping: Some(mapping),
            first_is_lower: first_is_lower || e.equal_arity(),
        })
    }

    /// Degree of `f ~ g`, 0 when unrelated.
    pub fn degree(&self, f: &Symbol, g: &Symbol) -> Degree {
        self.lookup(f, g).map_or(Degree::ZERO, |l| l.degree)
    }

    /// Triples `(f, g, h)` breaking min-transitivity:
    /// `deg(f, h) < min(deg(f, g), deg(g, h))`. Each unordered outer pair is
    /// reported once.
    pub fn transitivity_violations(&self) -> Vec<(Symbol, Symbol, Symbol)> {
        let mut symbols: Vec<&Symbol> =
            self.entries.iter().flat_map(|e| [&e.lo, &e.hi]).collect();
        symbols.sort();
        symbols.dedup();
        let mut out = Vec::new();
        for (a, f) in symbols.iter().enumerate() {
            for h in &symbols[a + 1..] {
                let direct = self.degree(f, h);
                for g in &symbols {
                    if g == f || g == h {
                        continue;
                    }
                    let via = Degree(self.degree(f, g).0.min(self.degree(g, h).0));
                    if direct.0 < via.0 {
                        out.push(((*f).clone(), (*g).clone(), (*h).clone()));
                    }
                }
            }
        }
        out
    }
}

/// How similarity extends from symbols to terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimilarityMode {
    /// Only equal arities are comparable; any arity mismatch gives 0.
    EqualArity,
    /// Symbols of different arities are compared through their position
    /// mapping; unmapped arguments of the larger term are ignored.
    Mapped,
}

/// Similarity degree of two terms: 1 for the same variable, 0 when exactly one
/// side is a variable or the variables differ, and for applications the
/// symbol degree combined with the degrees of the corresponding arguments.
pub fn term_similarity(
    sig: &SimilaritySignature,
    t1: &Term,
    t2: &Term,
    mode: SimilarityMode,
) -> Degree {
    match (t1, t2) {
        (Term::Var(x), Term::Var(y)) => {
            if x == y {
                Degree::ONE
            } else {
                Degree::ZERO
            }
        }
        (Term::Var(_), _) | (_, Term::Var(_)) => Degree::ZERO,
        (Term::App(f, _), Term::App(g, _)) => {
            let (lo, hi) = match mode {
                SimilarityMode::EqualArity if f.arity() != g.arity() => return Degree::ZERO,
                SimilarityMode::Mapped if f.arity() > g.arity() => (t2, t1),
                _ => (t1, t2),
            };
            let (Some(fl), Some(fh)) = (lo.symbol(), hi.symbol()) else {
                unreachable!()
            };
            let Some(l) = sig.lookup(fl, fh) else {
                return Degree::ZERO;
            };
            let mut d = l.degree;
            for (i, s) in lo.args().iter().enumerate() {
                if d.is_zero() {
                    break;
                }
                d = sig.and(d, term_similarity(sig, s, &hi.args()[l.image(i)], mode));
            }
            d
        }
    }
}
