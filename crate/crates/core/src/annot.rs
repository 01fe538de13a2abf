//! Predicate-argument structures and the binding layer that attaches them to
//! constituent trees.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::diag::{Diagnostic, Location, Rule, Severity};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::tree::{is_word, NodeRef, OriginRef, SentenceTree};
use crate::vocab::{Vocab, VocabKind};

macro_rules! prefixed_id {
    ($name:ident, $prefix:literal) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(pub u32);

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, concat!($prefix, "{}"), self.0)
            }
        }

        impl FromStr for $name {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, String> {
                s.strip_prefix($prefix)
                    .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
                    .and_then(|d| d.parse().ok())
                    .filter(|&k| k >= 1)
                    .map($name)
                    .ok_or_else(|| {
                        format!(
                            concat!("malformed id `{}`, expected ", $prefix, "<k> with k >= 1"),
                            s
                        )
                    })
            }
        }
    };
}

prefixed_id!(Pid, "P");
prefixed_id!(Aid, "A");

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PredicateEntry {
    /// Capitalised citation form, e.g. `NOMINATE`.
    pub name: String,
    pub dis: u32,
    pub class: String,
    pub group: String,
}

impl PredicateEntry {
    /// Lexicon key: case-folded name plus disambiguator.
    pub fn key(&self) -> (String, u32) {
        (fold(&self.name), self.dis)
    }
}

/// Attachment of a predicate or argument to tree nodes: the union of the
/// included yields minus the union of the excluded yields.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Binding {
    pub included: Vec<NodeRef>,
    pub excluded: Vec<NodeRef>,
    pub tags: Vec<String>,
}

impl Binding {
    pub fn to(included: impl IntoIterator<Item = NodeRef>) -> Self {
        Binding {
            included: included.into_iter().collect(),
            ..Binding::default()
        }
    }

    pub fn excluding(mut self, excluded: impl IntoIterator<Item = NodeRef>) -> Self {
        self.excluded.extend(excluded);
        self
    }

    pub fn tagged(mut self, tags: impl IntoIterator<Item = impl Into<String>>) -> Self {
        self.tags.extend(tags.into_iter().map(Into::into));
        self
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t == tag)
    }

    fn nodes(&self) -> impl Iterator<Item = NodeRef> + '_ {
        self.included.iter().chain(&self.excluded).copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Argument {
    pub aid: Aid,
    pub role: String,
    pub binding: Binding,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredArgStructure {
    pub pid: Pid,
    pub predicate: PredicateEntry,
    pub binding: Binding,
    pub arguments: Vec<Argument>,
}

impl PredArgStructure {
    pub fn argument(&self, aid: Aid) -> Option<&Argument> {
        self.arguments.iter().find(|a| a.aid == aid)
    }
}

/// All structures annotated on one sentence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SentenceAnnotation {
    pub origin: OriginRef,
    pub sid: u32,
    pub structures: Vec<PredArgStructure>,
}

impl SentenceAnnotation {
    pub fn structure(&self, pid: Pid) -> Option<&PredArgStructure> {
        self.structures.iter().find(|s| s.pid == pid)
    }
}

pub(crate) fn fold(s: &str) -> String {
    s.to_uppercase()
}

/// Key under which near-miss role names collide.
fn normalise_role(s: &str) -> String {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .to_uppercase()
}

pub(crate) fn check_role(role: &str) -> Result<(), String> {
    let folded = fold(role);
    if folded.is_empty()
        || !folded
            .bytes()
            .all(|b| b.is_ascii_uppercase() || b.is_ascii_digit() || b == b'_')
    {
        return Err(format!(
            "role `{role}` is not registrable (expected [A-Z0-9_]+ after case folding)"
        ));
    }
    Ok(())
}

pub(crate) fn check_predicate(p: &PredicateEntry, vocab: &Vocab) -> Result<(), String> {
    if !is_word(&p.name) || fold(&p.name).is_empty() {
        return Err(format!("malformed predicate name `{}`", p.name));
    }
    if p.dis == 0 {
        return Err("disambiguator must be positive".into());
    }
    if !vocab.contains(VocabKind::Class, &p.class) {
        return Err(format!("class `{}` is not in the class vocabulary", p.class));
    }
    if !is_word(&p.group) {
        return Err(format!("malformed group `{}`", p.group));
    }
    Ok(())
}

/// Tokens covered by a binding, sorted ascending.
pub fn resolve_binding(binding: &Binding, tree: &SentenceTree) -> Result<Vec<usize>> {
    let mut mark = vec![false; tree.tokens().len()];
    for &r in &binding.included {
        for &t in tree.yield_of(r)? {
            mark[t] = true;
        }
    }
    for &r in &binding.excluded {
        for &t in tree.yield_of(r)? {
            mark[t] = false;
        }
    }
    let span: Vec<usize> = mark.iter().enumerate().filter_map(|(i, &m)| m.then_some(i)).collect();
    if span.is_empty() {
        return Err(Error::EmptyResolution);
    }
    Ok(span)
}

/// Predicate lexicon keyed by (case-folded name, disambiguator).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Lexicon {
    entries: BTreeMap<(String, u32), PredicateEntry>,
}

impl Lexicon {
    /// Fails if one (name, dis) key appears with two different classes or groups.
    pub fn build(annotations: &[SentenceAnnotation]) -> Result<Self> {
        let mut entries: BTreeMap<(String, u32), PredicateEntry> = BTreeMap::new();
        for sa in annotations {
            for s in &sa.structures {
                let p = &s.predicate;
                match entries.get(&p.key()) {
                    Some(e) if e.class != p.class || e.group != p.group => {
                        return Err(Error::Duplicate(format!(
                            "lexicon entry {}/{} with conflicting class or group (sentence {}, {})",
                            p.name, p.dis, sa.sid, s.pid
                        )));
                    }
                    Some(_) => {}
                    None => {
                        entries.insert(p.key(), p.clone());
                    }
                }
            }
        }
        Ok(Lexicon { entries })
    }

    pub fn get(&self, name: &str, dis: u32) -> Option<&PredicateEntry> {
        self.entries.get(&(fold(name), dis))
    }

    pub fn entries(&self) -> impl Iterator<Item = &PredicateEntry> + '_ {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Role names used per predicate group.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Inventories {
    groups: BTreeMap<String, BTreeSet<String>>,
}

impl Inventories {
    pub fn build(annotations: &[SentenceAnnotation]) -> Self {
        let mut groups: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for s in annotations.iter().flat_map(|sa| &sa.structures) {
            let roles = groups.entry(s.predicate.group.clone()).or_default();
            roles.extend(s.arguments.iter().map(|a| a.role.clone()));
        }
        Inventories { groups }
    }

    /// Empty for an unknown group.
    pub fn roles(&self, group: &str) -> BTreeSet<String> {
        self.groups.get(group).cloned().unwrap_or_default()
    }

    pub fn groups(&self) -> impl Iterator<Item = &str> + '_ {
        self.groups.keys().map(String::as_str)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValidationConfig {
    /// Severity of an argument overlapping its own predicate.
    pub recursion: Severity,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        ValidationConfig {
            recursion: Severity::Error,
        }
    }
}

/// Runs every annotation rule over one language's structures.
pub fn validate_annotation(
    lang: &str,
    trees: &[SentenceTree],
    annotations: &[SentenceAnnotation],
    vocab: &Vocab,
    config: ValidationConfig,
    exec: Exec,
) -> Vec<Diagnostic> {
    let by_sid: HashMap<u32, &SentenceTree> = trees.iter().map(|t| (t.sid(), t)).collect();

    // First spelling of each normalised role per group is the canonical one.
    let mut canonical: HashMap<(&str, String), &str> = HashMap::new();
    for s in annotations.iter().flat_map(|sa| &sa.structures) {
        for a in &s.arguments {
            canonical
                .entry((s.predicate.group.as_str(), normalise_role(&a.role)))
                .or_insert(a.role.as_str());
        }
    }

    let ctx = Ctx {
        lang,
        vocab,
        config,
        canonical: &canonical,
    };
    exec.flat_map(annotations, |sa| ctx.sentence(sa, by_sid.get(&sa.sid).copied()))
}

struct Ctx<'a> {
    lang: &'a str,
    vocab: &'a Vocab,
    config: ValidationConfig,
    canonical: &'a HashMap<(&'a str, String), &'a str>,
}

impl Ctx<'_> {
    fn diag(&self, out: &mut Vec<Diagnostic>, rule: Rule, severity: Severity, sid: u32, element: String, msg: String) {
        out.push(Diagnostic {
            rule,
            severity,
            location: Location::Sentence {
                lang: self.lang.to_string(),
                sid,
                element: Some(element),
            },
            message: msg,
        });
    }

    fn sentence(&self, sa: &SentenceAnnotation, tree: Option<&SentenceTree>) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let Some(tree) = tree else {
            out.push(Diagnostic {
                rule: Rule::DanglingRef,
                severity: Severity::Error,
                location: Location::Sentence {
                    lang: self.lang.to_string(),
                    sid: sa.sid,
                    element: None,
                },
                message: format!("annotated sentence {} has no tree", sa.origin),
            });
            return out;
        };
        for s in &sa.structures {
            let pspan = self.binding(&mut out, tree, &s.binding, format!("{}", s.pid));
            let mut roles_seen = BTreeSet::new();
            for a in &s.arguments {
                let element = format!("{}.{}", s.pid, a.aid);
                let aspan = self.binding(&mut out, tree, &a.binding, element.clone());
                if let (Some(p), Some(x)) = (&pspan, &aspan) {
                    if x.iter().any(|t| p.binary_search(t).is_ok()) {
                        let msg = format!(
                            "argument {} of {} covers its own predicate's tokens; exclude the constituent containing the predicate",
                            a.role, s.predicate.name
                        );
                        self.diag(
                            &mut out,
                            Rule::Recursion,
                            self.config.recursion,
                            sa.sid,
                            element.clone(),
                            msg,
                        );
                    }
                }
                if !roles_seen.insert(a.role.as_str()) {
                    let msg = format!("role {} occurs more than once in {}", a.role, s.predicate.name);
                    self.diag(&mut out, Rule::DupRole, Severity::Error, sa.sid, element.clone(), msg);
                }
                let key = (s.predicate.group.as_str(), normalise_role(&a.role));
                if let Some(&canon) = self.canonical.get(&key) {
                    if canon != a.role {
                        let msg = format!(
                            "role {} differs from {} in group {} only by case or whitespace",
                            a.role, canon, s.predicate.group
                        );
                        self.diag(&mut out, Rule::RoleNotInGroup, Severity::Warning, sa.sid, element, msg);
                    }
                }
            }
        }
        out
    }

    /// Checks one binding; returns its span when it resolves.
    fn binding(
        &self,
        out: &mut Vec<Diagnostic>,
        tree: &SentenceTree,
        b: &Binding,
        element: String,
    ) -> Option<Vec<usize>> {
        let sid = tree.sid();
        for tag in &b.tags {
            if !self.vocab.contains(VocabKind::Binding, tag) {
                let msg = format!("binding tag `{tag}` is not declared");
                self.diag(out, Rule::UnknownTag, Severity::Error, sid, element.clone(), msg);
            }
        }
        if b.included.is_empty() {
            let msg = "element is not bound to any node".to_string();
            self.diag(out, Rule::Unbound, Severity::Error, sid, element, msg);
            return None;
        }
        let missing: Vec<String> = b
            .nodes()
            .filter(|&r| !tree.contains(r))
            .map(|r| r.to_string())
            .collect();
        if !missing.is_empty() {
            let msg = format!("binding references unknown node(s) {}", missing.join(","));
            self.diag(out, Rule::DanglingRef, Severity::Error, sid, element, msg);
            return None;
        }
        for &x in &b.excluded {
            let covered = b.included.iter().any(|&i| tree.dominates(i, x).expect("nodes checked"));
            if !covered {
                let msg = format!("excluded node {x} is not dominated by an included node");
                self.diag(out, Rule::ExclNotDominated, Severity::Error, sid, element.clone(), msg);
            }
        }
        match resolve_binding(b, tree) {
            Ok(span) => Some(span),
            Err(_) => {
                let msg = "exclusions remove every token of the binding".to_string();
                self.diag(out, Rule::EmptySpan, Severity::Error, sid, element, msg);
                None
            }
        }
    }
}
