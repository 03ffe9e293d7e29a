//! Results of one problem, rendered for people or as JSON.

use serde::Serialize;
use serde_json::{json, Map, Value};
use termlat_core::{Degree, GenResult, GenStep, Substitution, Term, TraceStep, UnifyOutcome};

/// Everything printed for one problem.
#[derive(Clone, Debug)]
pub struct Report {
    /// Command name.
    pub command: &'static str,
    /// Upper-case verdict, e.g. `SOLVED`.
    pub status: String,
    /// Whether the verdict counts as success (exit 0).
    pub success: bool,
    /// Degree of the answer.
    pub degree: Degree,
    /// Unifier or matcher.
    pub substitution: Substitution,
    /// Generalize only.
    pub generalization: Option<Generalization>,
    /// Rendered trace records.
    pub trace: Vec<TraceRecord>,
    /// Arguments dropped by mixed-arity rules.
    pub dropped_args: Vec<Term>,
}

/// Generalizer and its witnesses.
#[derive(Clone, Debug)]
pub struct Generalization {
    /// The generalizer.
    pub generalizer: Term,
    /// Witness for the first term.
    pub sigma1: Substitution,
    /// Witness for the second term.
    pub sigma2: Substitution,
    /// Renaming applied to the second term, if any.
    pub renaming: Substitution,
}

/// One trace line, kept both as text and as a JSON record.
#[derive(Clone, Debug)]
pub struct TraceRecord {
    /// Human form.
    pub text: String,
    /// JSON form.
    pub json: Value,
}

/// Degree as a JSON number rounded to 6 decimals, matching the human form.
pub fn degree_value(d: Degree) -> f64 {
    (d.value() * 1e6).round() / 1e6
}

/// Substitution as a JSON object in binding order.
pub fn substitution_json(s: &Substitution) -> Map<String, Value> {
    s.iter().map(|(v, t)| (v.name().to_string(), Value::String(t.to_string()))).collect()
}

fn terms_json(ts: &[Term]) -> Vec<String> {
    ts.iter().map(Term::to_string).collect()
}

impl From<&TraceStep> for TraceRecord {
    fn from(s: &TraceStep) -> Self {
        TraceRecord {
            text: s.to_string(),
            json: json!({
                "rule": s.rule.name(),
                "consumed": s.consumed.to_string(),
                "produced": s.produced.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                "degree_before": degree_value(s.degree_before),
                "degree_after": degree_value(s.degree_after),
                "dropped": terms_json(&s.dropped),
            }),
        }
    }
}

impl From<&GenStep> for TraceRecord {
    fn from(s: &GenStep) -> Self {
        TraceRecord {
            text: format!("{}{}", "  ".repeat(s.depth), s),
            json: json!({
                "rule": s.rule.name(),
                "depth": s.depth,
                "left": s.left.to_string(),
                "right": s.right.to_string(),
                "unapplied_from": s.unapplied_from.as_ref().map(|(a, b)| vec![a.to_string(), b.to_string()]),
                "generalizer": s.generalizer.to_string(),
                "degree_before": degree_value(s.degree_before),
                "degree_after": degree_value(s.degree_after),
                "dropped": terms_json(&s.dropped),
            }),
        }
    }
}

impl Report {
    /// Report for a unification outcome.
    pub fn unify(o: &UnifyOutcome) -> Self {
        Report {
            command: "unify",
            status: o.status.name().to_string(),
            success: o.is_solved(),
            degree: o.degree,
            substitution: o.substitution.clone(),
            generalization: None,
            trace: o.trace.iter().map(TraceRecord::from).collect(),
            dropped_args: o.trace.iter().flat_map(|s| s.dropped.iter().cloned()).collect(),
        }
    }

    /// Report for a generalization.
    pub fn generalize(r: &GenResult) -> Self {
        Report {
            command: "generalize",
            status: "GENERALIZED".into(),
            success: true,
            degree: r.degree,
            substitution: Substitution::new(),
            generalization: Some(Generalization {
                generalizer: r.generalizer.clone(),
                sigma1: r.sigma1.clone(),
                sigma2: r.sigma2.clone(),
                renaming: r.renaming2.clone(),
            }),
            trace: r.trace.iter().map(TraceRecord::from).collect(),
            dropped_args: r.dropped_args(),
        }
    }

    /// Report for a similarity query.
    pub fn similarity(d: Degree) -> Self {
        Report {
            command: "similarity",
            status: if d.is_zero() { "DISSIMILAR" } else { "SIMILAR" }.into(),
            success: !d.is_zero(),
            degree: d,
            substitution: Substitution::new(),
            generalization: None,
            trace: Vec::new(),
            dropped_args: Vec::new(),
        }
    }

    /// Report for a subsumption query.
    pub fn subsumes(m: Option<&Substitution>) -> Self {
        Report {
            command: "subsumes",
            status: if m.is_some() { "SUBSUMES" } else { "NO_MATCH" }.into(),
            success: m.is_some(),
            degree: if m.is_some() { Degree::ONE } else { Degree::ZERO },
            substitution: m.cloned().unwrap_or_default(),
            generalization: None,
            trace: Vec::new(),
            dropped_args: Vec::new(),
        }
    }

    /// JSON object with the stable key set.
    pub fn to_json(&self) -> Value {
        #[derive(Serialize)]
        struct Out<'a> {
            command: &'a str,
            status: &'a str,
            degree: f64,
            substitution: Map<String, Value>,
            #[serde(skip_serializing_if = "Option::is_none")]
            generalizer: Option<String>,
            #[serde(skip_serializing_if = "Option::is_none")]
            sigma1: Option<Map<String, Value>>,
            #[serde(skip_serializing_if = "Option::is_none")]
            sigma2: Option<Map<String, Value>>,
            #[serde(skip_serializing_if = "Option::is_none")]
            renaming: Option<Map<String, Value>>,
            trace: Vec<&'a Value>,
            dropped_args: Vec<String>,
        }
        let g = self.generalization.as_ref();
        let out = Out {
            command: self.command,
            status: &self.status,
            degree: degree_value(self.degree),
            substitution: substitution_json(&self.substitution),
            generalizer: g.map(|g| g.generalizer.to_string()),
            sigma1: g.map(|g| substitution_json(&g.sigma1)),
            sigma2: g.map(|g| substitution_json(&g.sigma2)),
            renaming: g.filter(|g| !g.renaming.is_empty()).map(|g| substitution_json(&g.renaming)),
            trace: self.trace.iter().map(|r| &r.json).collect(),
            dropped_args: terms_json(&self.dropped_args),
        };
        serde_json::to_value(out).expect("report serializes")
    }

    /// Multi-line human form.
    pub fn to_text(&self, with_trace: bool) -> String {
        let mut s = String::new();
        if with_trace {
            s.push_str("trace:\n");
            for (i, r) in self.trace.iter().enumerate() {
                s.push_str(&format!("  {}. {}\n", i + 1, r.text));
            }
        }
        s.push_str(&format!("status: {}\n", self.status));
        if let Some(g) = &self.generalization {
            if !g.renaming.is_empty() {
                s.push_str(&format!("renamed: {}\n", g.renaming));
            }
            s.push_str(&format!("generalizer: {}\n", g.generalizer));
            s.push_str(&format!("sigma1: {}\n", g.sigma1));
            s.push_str(&format!("sigma2: {}\n", g.sigma2));
        } else if self.command != "similarity" && self.success {
            s.push_str(&format!("substitution: {}\n", self.substitution));
        }
        s.push_str(&format!("degree: {}\n", self.degree));
        if !self.dropped_args.is_empty() {
            s.push_str(&format!("dropped: {}\n", terms_json(&self.dropped_args).join(", ")));
        }
        s
    }

    /// Single-line form used in batch output.
    pub fn to_line(&self) -> String {
        let detail = match &self.generalization {
            Some(g) => format!("{} {} {}", g.generalizer, g.sigma1, g.sigma2),
            None if self.command == "similarity" => String::new(),
            None => self.substitution.to_string(),
        };
        format!("{} {} degree={} {}", self.command, self.status, self.degree, detail).trim_end().to_string()
    }
}
