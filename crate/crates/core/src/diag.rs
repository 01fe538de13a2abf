//! Validation diagnostics shared by the annotation and alignment checks.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Warning,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Warning => "warning",
            Severity::Error => "error",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    Unbound,
    EmptySpan,
    ExclNotDominated,
    Recursion,
    RoleNotInGroup,
    DupRole,
    UnknownTag,
    DanglingRef,
    ArgWithoutPredAlign,
    DupAlign,
    PairNotRegistered,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::Unbound => "UNBOUND",
            Rule::EmptySpan => "EMPTY_SPAN",
            Rule::ExclNotDominated => "EXCL_NOT_DOMINATED",
            Rule::Recursion => "RECURSION",
            Rule::RoleNotInGroup => "ROLE_NOT_IN_GROUP",
            Rule::DupRole => "DUP_ROLE",
            Rule::UnknownTag => "UNKNOWN_TAG",
            Rule::DanglingRef => "DANGLING_REF",
            Rule::ArgWithoutPredAlign => "ARG_WITHOUT_PRED_ALIGN",
            Rule::DupAlign => "DUP_ALIGN",
            Rule::PairNotRegistered => "PAIR_NOT_REGISTERED",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Where a diagnostic points, rendered like `en:3 P1.A2` or `doc:326 P1~P2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    Sentence {
        lang: String,
        sid: u32,
        element: Option<String>,
    },
    Pair {
        pair: String,
        element: Option<String>,
    },
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (head, element) = match self {
            Location::Sentence { lang, sid, element } => (format!("{lang}:{sid}"), element),
            Location::Pair { pair, element } => (pair.clone(), element),
        };
        match element {
            Some(e) => write!(f, "{head} {e}"),
            None => f.write_str(&head),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub rule: Rule,
    pub severity: Severity,
    pub location: Location,
    pub message: String,
}

impl Diagnostic {
    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[{}] {}: {}",
            self.severity, self.rule, self.location, self.message
        )
    }
}

pub fn error_count(diags: &[Diagnostic]) -> usize {
    diags.iter().filter(|d| d.is_error()).count()
}
