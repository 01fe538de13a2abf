//! The alignment layer: predicate alignments between the two languages of a
//! set, each carrying nested argument alignments by corresponding role.
//!
//! ```text
//! #PAIR <document>:<sentence_number> <lang_a> <lang_b>
//! PALIGN <pid_a> <pid_b> tags=<tag,...|->
//! AALIGN <pid_a>.<aid_a> <pid_b>.<aid_b> tags=<tag,...|->
//! #END
//! ```

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::annot::{Aid, Pid, PredArgStructure, SentenceAnnotation};
use crate::diag::{Diagnostic, Location, Rule, Severity};
use crate::error::{Error, Result};
use crate::paa::{join_list, parse_list};
use crate::tree::is_word;
use crate::vocab::{Vocab, VocabKind};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SentencePair {
    pub document: String,
    pub sentence_number: u32,
    pub lang_a: String,
    pub lang_b: String,
}

impl SentencePair {
    pub fn new(
        document: impl Into<String>,
        sentence_number: u32,
        lang_a: impl Into<String>,
        lang_b: impl Into<String>,
    ) -> Self {
        SentencePair {
            document: document.into(),
            sentence_number,
            lang_a: lang_a.into(),
            lang_b: lang_b.into(),
        }
    }

    pub fn reversed(&self) -> Self {
        SentencePair {
            lang_a: self.lang_b.clone(),
            lang_b: self.lang_a.clone(),
            ..self.clone()
        }
    }

    fn key(&self) -> (&str, u32) {
        (&self.document, self.sentence_number)
    }
}

/// Renders as `<document>:<sentence_number>`.
impl fmt::Display for SentencePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.document, self.sentence_number)
    }
}

/// `P<k>.A<k>`: one argument of one structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArgRef {
    pub pid: Pid,
    pub aid: Aid,
}

impl fmt::Display for ArgRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.pid, self.aid)
    }
}

impl FromStr for ArgRef {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (p, a) = s
            .split_once('.')
            .ok_or_else(|| format!("malformed argument reference `{s}`, expected P<k>.A<k>"))?;
        Ok(ArgRef {
            pid: p.parse()?,
            aid: a.parse()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArgAlignment {
    pub a: ArgRef,
    pub b: ArgRef,
    pub tags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredicateAlignment {
    pub a: Pid,
    pub b: Pid,
    pub tags: Vec<String>,
    pub arg_links: Vec<ArgAlignment>,
}

impl PredicateAlignment {
    pub fn new(a: Pid, b: Pid) -> Self {
        PredicateAlignment {
            a,
            b,
            tags: Vec::new(),
            arg_links: Vec::new(),
        }
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t == tag)
    }

    /// Adds an argument link nested under this alignment.
    pub fn link(mut self, aid_a: Aid, aid_b: Aid, tags: &[&str]) -> Self {
        self.arg_links.push(ArgAlignment {
            a: ArgRef {
                pid: self.a,
                aid: aid_a,
            },
            b: ArgRef {
                pid: self.b,
                aid: aid_b,
            },
            tags: tags.iter().map(|t| t.to_string()).collect(),
        });
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairAlignments {
    pub pair: SentencePair,
    pub alignments: Vec<PredicateAlignment>,
}

/// All alignment blocks of one set, in file order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlignmentStore {
    pub lang_a: String,
    pub lang_b: String,
    pub blocks: Vec<PairAlignments>,
}

impl AlignmentStore {
    pub fn new(lang_a: impl Into<String>, lang_b: impl Into<String>) -> Self {
        AlignmentStore {
            lang_a: lang_a.into(),
            lang_b: lang_b.into(),
            blocks: Vec::new(),
        }
    }

    /// Appends an alignment, opening a block for the pair if needed.
    pub fn add(&mut self, pair: SentencePair, alignment: PredicateAlignment) {
        match self.blocks.iter_mut().find(|b| b.pair == pair) {
            Some(block) => block.alignments.push(alignment),
            None => self.blocks.push(PairAlignments {
                pair,
                alignments: vec![alignment],
            }),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SentencePair, &PredicateAlignment)> + '_ {
        self.blocks
            .iter()
            .flat_map(|b| b.alignments.iter().map(move |a| (&b.pair, a)))
    }

    /// The same alignments seen from the other language.
    pub fn reversed(&self) -> Self {
        let flip = |l: &ArgAlignment| ArgAlignment {
            a: l.b,
            b: l.a,
            tags: l.tags.clone(),
        };
        AlignmentStore {
            lang_a: self.lang_b.clone(),
            lang_b: self.lang_a.clone(),
            blocks: self
                .blocks
                .iter()
                .map(|b| PairAlignments {
                    pair: b.pair.reversed(),
                    alignments: b
                        .alignments
                        .iter()
                        .map(|p| PredicateAlignment {
                            a: p.b,
                            b: p.a,
                            tags: p.tags.clone(),
                            arg_links: p.arg_links.iter().map(flip).collect(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Parses the alignment file of a set whose languages are `lang_a`, `lang_b`.
/// Only syntax and nesting are checked here; cross-file references are
/// checked by [`validate_alignment`].
pub fn parse_aln(input: &str, lang_a: &str, lang_b: &str) -> Result<AlignmentStore> {
    let mut store = AlignmentStore::new(lang_a, lang_b);
    let mut seen = HashSet::new();
    let mut open: Option<PairAlignments> = None;
    let mut last_line = 0;

    for (i, line) in input.lines().enumerate() {
        let lineno = i + 1;
        last_line = lineno;
        let perr = |m: String| Error::parse(lineno, m);
        if let Some(rest) = line.strip_prefix("#PAIR ") {
            if open.is_some() {
                return Err(perr("#PAIR inside an open block (missing #END)".into()));
            }
            let fields: Vec<&str> = rest.split(' ').collect();
            let [sentence, a, b] = fields[..] else {
                return Err(perr("expected `#PAIR <document>:<number> <lang_a> <lang_b>`".into()));
            };
            let (document, number) = sentence
                .rsplit_once(':')
                .ok_or_else(|| perr(format!("malformed sentence reference `{sentence}`")))?;
            let sentence_number: u32 = number
                .parse()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| perr(format!("malformed sentence number `{number}`")))?;
            if !is_word(document) {
                return Err(perr("empty document name".into()));
            }
            if (a, b) != (lang_a, lang_b) {
                return Err(perr(format!(
                    "pair languages {a} {b} do not match the set ({lang_a} {lang_b})"
                )));
            }
            let pair = SentencePair::new(document, sentence_number, a, b);
            if !seen.insert(pair.clone()) {
                return Err(Error::Duplicate(format!("line {lineno}: second block for pair {pair}")));
            }
            open = Some(PairAlignments {
                pair,
                alignments: Vec::new(),
            });
            continue;
        }
        if line == "#END" {
            let block = open.take().ok_or_else(|| perr("#END without #PAIR".into()))?;
            store.blocks.push(block);
            continue;
        }
        let block = open.as_mut().ok_or_else(|| perr("expected #PAIR".into()))?;
        let fields: Vec<&str> = line.split(' ').collect();
        match fields[..] {
            ["PALIGN", a, b, tags] => {
                block.alignments.push(PredicateAlignment {
                    a: a.parse().map_err(perr)?,
                    b: b.parse().map_err(perr)?,
                    tags: parse_tags(tags, lineno)?,
                    arg_links: Vec::new(),
                });
            }
            ["AALIGN", a, b, tags] => {
                let a: ArgRef = a.parse().map_err(perr)?;
                let b: ArgRef = b.parse().map_err(perr)?;
                let parent = block
                    .alignments
                    .last_mut()
                    .ok_or_else(|| perr("AALIGN before any PALIGN".into()))?;
                if a.pid != parent.a || b.pid != parent.b {
                    return Err(perr(format!(
                        "AALIGN {a} {b} does not belong to the preceding PALIGN {} {}",
                        parent.a, parent.b
                    )));
                }
                parent.arg_links.push(ArgAlignment {
                    a,
                    b,
                    tags: parse_tags(tags, lineno)?,
                });
            }
            _ => return Err(perr(format!("malformed alignment record `{line}`"))),
        }
    }
    if open.is_some() {
        return Err(Error::parse(last_line, "unterminated block (missing #END)"));
    }
    Ok(store)
}

fn parse_tags(field: &str, lineno: usize) -> Result<Vec<String>> {
    let list = field
        .strip_prefix("tags=")
        .ok_or_else(|| Error::parse(lineno, format!("expected `tags=<tag,...|->`, found `{field}`")))?;
    Ok(parse_list(list, lineno)?.into_iter().map(str::to_string).collect())
}

pub fn write_aln(store: &AlignmentStore) -> String {
    let mut out = String::new();
    for block in &store.blocks {
        let p = &block.pair;
        let _ = writeln!(
            out,
            "#PAIR {}:{} {} {}",
            p.document, p.sentence_number, p.lang_a, p.lang_b
        );
        for a in &block.alignments {
            let _ = writeln!(out, "PALIGN {} {} tags={}", a.a, a.b, join_list(&a.tags));
            for l in &a.arg_links {
                let _ = writeln!(out, "AALIGN {} {} tags={}", l.a, l.b, join_list(&l.tags));
            }
        }
        out.push_str("#END\n");
    }
    out
}

/// Annotated sentences of one language keyed by (document, number).
pub(crate) struct Side<'a> {
    pub lang: &'a str,
    sentences: HashMap<(&'a str, u32), &'a SentenceAnnotation>,
}

impl<'a> Side<'a> {
    pub fn new(lang: &'a str, annotations: &'a [SentenceAnnotation]) -> Self {
        Side {
            lang,
            sentences: annotations
                .iter()
                .map(|sa| ((sa.origin.document.as_str(), sa.origin.sentence_number), sa))
                .collect(),
        }
    }

    pub fn sentence(&self, pair: &SentencePair) -> Option<&'a SentenceAnnotation> {
        self.sentences.get(&pair.key()).copied()
    }

    pub fn structure(&self, pair: &SentencePair, pid: Pid) -> Option<&'a PredArgStructure> {
        self.sentence(pair).and_then(|sa| sa.structure(pid))
    }
}

/// Checks every alignment against both annotation layers and the registry.
pub fn validate_alignment(
    store: &AlignmentStore,
    annotations_a: &[SentenceAnnotation],
    annotations_b: &[SentenceAnnotation],
    registry: &BTreeSet<SentencePair>,
    vocab: &Vocab,
) -> Vec<Diagnostic> {
    let side_a = Side::new(&store.lang_a, annotations_a);
    let side_b = Side::new(&store.lang_b, annotations_b);
    let mut out = Vec::new();
    for block in &store.blocks {
        let pair = &block.pair;
        let mut diag = |rule: Rule, element: Option<String>, message: String| {
            out.push(Diagnostic {
                rule,
                severity: Severity::Error,
                location: Location::Pair {
                    pair: pair.to_string(),
                    element,
                },
                message,
            })
        };
        if !registry.contains(pair) {
            diag(
                Rule::PairNotRegistered,
                None,
                format!("no sentence pair {pair} ({} {}) in this set", pair.lang_a, pair.lang_b),
            );
            continue;
        }
        let mut pairs_seen = HashSet::new();
        for pa in &block.alignments {
            let element = format!("{}~{}", pa.a, pa.b);
            if !pairs_seen.insert((pa.a, pa.b)) {
                diag(
                    Rule::DupAlign,
                    Some(element.clone()),
                    format!("{} and {} are aligned more than once", pa.a, pa.b),
                );
            }
            for tag in &pa.tags {
                if !vocab.contains(VocabKind::Align, tag) {
                    diag(
                        Rule::UnknownTag,
                        Some(element.clone()),
                        format!("alignment tag `{tag}` is not declared"),
                    );
                }
            }
            let sa = side_a.structure(pair, pa.a);
            let sb = side_b.structure(pair, pa.b);
            for (lang, pid, found) in [(&store.lang_a, pa.a, sa.is_some()), (&store.lang_b, pa.b, sb.is_some())] {
                if !found {
                    diag(
                        Rule::DanglingRef,
                        Some(element.clone()),
                        format!("{lang} sentence has no structure {pid}"),
                    );
                }
            }
            let mut links_seen = HashSet::new();
            for link in &pa.arg_links {
                let element = format!("{}~{}", link.a, link.b);
                if link.a.pid != pa.a || link.b.pid != pa.b {
                    diag(
                        Rule::ArgWithoutPredAlign,
                        Some(element.clone()),
                        format!(
                            "argument link is not nested in an alignment of {} and {}",
                            link.a.pid, link.b.pid
                        ),
                    );
                    continue;
                }
                if !links_seen.insert((link.a.aid, link.b.aid)) {
                    diag(
                        Rule::DupAlign,
                        Some(element.clone()),
                        "argument link repeated".to_string(),
                    );
                }
                for tag in &link.tags {
                    if !vocab.contains(VocabKind::Align, tag) {
                        diag(
                            Rule::UnknownTag,
                            Some(element.clone()),
                            format!("alignment tag `{tag}` is not declared"),
                        );
                    }
                }
                let sides = [(&store.lang_a, sa, link.a), (&store.lang_b, sb, link.b)];
                for (lang, s, r) in sides {
                    if let Some(s) = s {
                        if s.argument(r.aid).is_none() {
                            diag(
                                Rule::DanglingRef,
                                Some(element.clone()),
                                format!("{lang} structure {} has no argument {}", r.pid, r.aid),
                            );
                        }
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DanglingPredicate {
    pub lang: String,
    pub sid: u32,
    pub pid: Pid,
    pub name: String,
}

/// An argument left unlinked inside an aligned structure pair.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DanglingArgument {
    pub lang: String,
    pub sid: u32,
    pub pid: Pid,
    pub aid: Aid,
    pub role: String,
    /// The structure on the other side of the alignment.
    pub counterpart: Pid,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DanglingReport {
    pub predicates: Vec<DanglingPredicate>,
    pub arguments: Vec<DanglingArgument>,
}

pub fn dangling_report(
    store: &AlignmentStore,
    annotations_a: &[SentenceAnnotation],
    annotations_b: &[SentenceAnnotation],
) -> DanglingReport {
    let side_a = Side::new(&store.lang_a, annotations_a);
    let side_b = Side::new(&store.lang_b, annotations_b);
    let mut aligned: HashSet<(&str, &str, u32, Pid)> = HashSet::new();
    let mut arguments = Vec::new();

    for (pair, pa) in store.iter() {
        let (Some(sa), Some(sb)) = (side_a.sentence(pair), side_b.sentence(pair)) else {
            continue;
        };
        let (Some(xa), Some(xb)) = (sa.structure(pa.a), sb.structure(pa.b)) else {
            continue;
        };
        aligned.insert((side_a.lang, &sa.origin.document, sa.origin.sentence_number, pa.a));
        aligned.insert((side_b.lang, &sb.origin.document, sb.origin.sentence_number, pa.b));
        let linked_a: HashSet<Aid> = pa.arg_links.iter().map(|l| l.a.aid).collect();
        let linked_b: HashSet<Aid> = pa.arg_links.iter().map(|l| l.b.aid).collect();
        for (lang, sid, s, linked, other) in [
            (side_a.lang, sa.sid, xa, &linked_a, pa.b),
            (side_b.lang, sb.sid, xb, &linked_b, pa.a),
        ] {
            for arg in s.arguments.iter().filter(|a| !linked.contains(&a.aid)) {
                arguments.push(DanglingArgument {
                    lang: lang.to_string(),
                    sid,
                    pid: s.pid,
                    aid: arg.aid,
                    role: arg.role.clone(),
                    counterpart: other,
                });
            }
        }
    }

    let mut predicates = Vec::new();
    for (lang, anns) in [(side_a.lang, annotations_a), (side_b.lang, annotations_b)] {
        for sa in anns {
            for s in &sa.structures {
                if !aligned.contains(&(lang, sa.origin.document.as_str(), sa.origin.sentence_number, s.pid)) {
                    predicates.push(DanglingPredicate {
                        lang: lang.to_string(),
                        sid: sa.sid,
                        pid: s.pid,
                        name: s.predicate.name.clone(),
                    });
                }
            }
        }
    }
    predicates.sort();
    arguments.sort();
    arguments.dedup();
    DanglingReport { predicates, arguments }
}
