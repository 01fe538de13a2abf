//! Reader and writer for predicate-argument annotation files.
//!
//! ```text
//! #SENT <document>:<sentence_number>:<lang>
//! PRED <pid> name=<NAME> dis=<n> class=<CLASS> group=<GROUP>
//! PBIND <pid> nodes=<ref,...> excl=<ref,...|-> tags=<tag,...|->
//! ARG <pid> <aid> role=<ROLE>
//! ABIND <pid> <aid> nodes=<ref,...> excl=<ref,...|-> tags=<tag,...|->
//! #END
//! ```
//!
//! Structures are written back in PRED order, each followed by its PBIND and
//! then one ARG/ABIND pair per argument.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::annot::{
    check_predicate, check_role, Aid, Argument, Binding, Lexicon, Pid, PredArgStructure, PredicateEntry,
    SentenceAnnotation,
};
use crate::error::{Error, Result};
use crate::tree::{NodeRef, OriginRef, SentenceTree};
use crate::vocab::Vocab;

pub const EMPTY_SET: &str = "-";

struct Draft {
    pid: Pid,
    predicate: PredicateEntry,
    binding: Option<Binding>,
    args: Vec<(Aid, String, Option<Binding>)>,
}

struct Open<'t> {
    origin: OriginRef,
    tree: &'t SentenceTree,
    drafts: Vec<Draft>,
}

/// Parses annotation blocks against the trees of the store they belong to.
/// Sentence and node references must resolve; the predicate lexicon must be
/// consistent.
pub fn parse_paa(input: &str, lang: &str, trees: &[SentenceTree], vocab: &Vocab) -> Result<Vec<SentenceAnnotation>> {
    let by_origin: HashMap<&OriginRef, &SentenceTree> = trees.iter().map(|t| (t.origin(), t)).collect();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut open: Option<Open> = None;
    let mut last_line = 0;

    for (i, line) in input.lines().enumerate() {
        let lineno = i + 1;
        last_line = lineno;
        let perr = |m: String| Error::parse(lineno, m);
        if let Some(rest) = line.strip_prefix("#SENT ") {
            if open.is_some() {
                return Err(perr("#SENT inside an open block (missing #END)".into()));
            }
            let origin: OriginRef = rest.parse().map_err(perr)?;
            if origin.lang != lang {
                return Err(perr(format!("sentence {origin} does not belong to the `{lang}` store")));
            }
            let tree = *by_origin
                .get(&origin)
                .ok_or_else(|| Error::Dangling(format!("line {lineno}: no tree for sentence {origin}")))?;
            if !seen.insert(origin.clone()) {
                return Err(Error::Duplicate(format!(
                    "line {lineno}: second block for sentence {origin}"
                )));
            }
            open = Some(Open {
                origin,
                tree,
                drafts: Vec::new(),
            });
            continue;
        }
        if line == "#END" {
            let block = open.take().ok_or_else(|| perr("#END without #SENT".into()))?;
            out.push(finish(block, lineno)?);
            continue;
        }
        let block = open.as_mut().ok_or_else(|| perr("expected #SENT".into()))?;
        let fields: Vec<&str> = line.split(' ').collect();
        match fields[0] {
            "PRED" => {
                let [_, pid, name, dis, class, group] = fields[..] else {
                    return Err(perr("expected `PRED <pid> name= dis= class= group=`".into()));
                };
                let pid: Pid = pid.parse().map_err(perr)?;
                if block.drafts.iter().any(|d| d.pid == pid) {
                    return Err(Error::Duplicate(format!(
                        "line {lineno}: pid {pid} in sentence {}",
                        block.origin
                    )));
                }
                let dis = value(dis, "dis", lineno)?;
                let predicate = PredicateEntry {
                    name: value(name, "name", lineno)?.to_string(),
                    dis: dis
                        .parse()
                        .map_err(|_| perr(format!("malformed disambiguator `{dis}`")))?,
                    class: value(class, "class", lineno)?.to_string(),
                    group: value(group, "group", lineno)?.to_string(),
                };
                check_predicate(&predicate, vocab).map_err(perr)?;
                block.drafts.push(Draft {
                    pid,
                    predicate,
                    binding: None,
                    args: Vec::new(),
                });
            }
            "PBIND" => {
                let [_, pid, nodes, excl, tags] = fields[..] else {
                    return Err(perr("expected `PBIND <pid> nodes= excl= tags=`".into()));
                };
                let pid: Pid = pid.parse().map_err(perr)?;
                let binding = parse_binding(nodes, excl, tags, lineno, block)?;
                let draft = draft_mut(block, pid, lineno)?;
                if draft.binding.replace(binding).is_some() {
                    return Err(Error::Duplicate(format!("line {lineno}: second PBIND for {pid}")));
                }
            }
            "ARG" => {
                let [_, pid, aid, role] = fields[..] else {
                    return Err(perr("expected `ARG <pid> <aid> role=`".into()));
                };
                let pid: Pid = pid.parse().map_err(perr)?;
                let aid: Aid = aid.parse().map_err(perr)?;
                let role = value(role, "role", lineno)?;
                check_role(role).map_err(perr)?;
                let draft = draft_mut(block, pid, lineno)?;
                if draft.args.iter().any(|a| a.0 == aid) {
                    return Err(Error::Duplicate(format!("line {lineno}: aid {pid}.{aid}")));
                }
                draft.args.push((aid, role.to_string(), None));
            }
            "ABIND" => {
                let [_, pid, aid, nodes, excl, tags] = fields[..] else {
                    return Err(perr("expected `ABIND <pid> <aid> nodes= excl= tags=`".into()));
                };
                let pid: Pid = pid.parse().map_err(perr)?;
                let aid: Aid = aid.parse().map_err(perr)?;
                let binding = parse_binding(nodes, excl, tags, lineno, block)?;
                let draft = draft_mut(block, pid, lineno)?;
                let arg = draft
                    .args
                    .iter_mut()
                    .find(|a| a.0 == aid)
                    .ok_or_else(|| perr(format!("ABIND for undeclared argument {pid}.{aid}")))?;
                if arg.2.replace(binding).is_some() {
                    return Err(Error::Duplicate(format!("line {lineno}: second ABIND for {pid}.{aid}")));
                }
            }
            other => return Err(perr(format!("unknown record `{other}`"))),
        }
    }
    if open.is_some() {
        return Err(Error::parse(last_line, "unterminated block (missing #END)"));
    }
    Lexicon::build(&out)?;
    Ok(out)
}

fn draft_mut<'a>(block: &'a mut Open, pid: Pid, lineno: usize) -> Result<&'a mut Draft> {
    block
        .drafts
        .iter_mut()
        .find(|d| d.pid == pid)
        .ok_or_else(|| Error::parse(lineno, format!("reference to undeclared predicate {pid}")))
}

fn finish(block: Open, lineno: usize) -> Result<SentenceAnnotation> {
    let mut structures = Vec::with_capacity(block.drafts.len());
    for d in block.drafts {
        let binding = d
            .binding
            .ok_or_else(|| Error::parse(lineno, format!("predicate {} has no PBIND", d.pid)))?;
        let mut arguments = Vec::with_capacity(d.args.len());
        for (aid, role, b) in d.args {
            let binding = b.ok_or_else(|| Error::parse(lineno, format!("argument {}.{aid} has no ABIND", d.pid)))?;
            arguments.push(Argument { aid, role, binding });
        }
        structures.push(PredArgStructure {
            pid: d.pid,
            predicate: d.predicate,
            binding,
            arguments,
        });
    }
    Ok(SentenceAnnotation {
        sid: block.tree.sid(),
        origin: block.origin,
        structures,
    })
}

fn value<'a>(field: &'a str, key: &str, lineno: usize) -> Result<&'a str> {
    field
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .filter(|v| !v.is_empty())
        .ok_or_else(|| Error::parse(lineno, format!("expected `{key}=<value>`, found `{field}`")))
}

/// Comma-separated list, `-` for empty; duplicates are rejected.
pub(crate) fn parse_list(s: &str, lineno: usize) -> Result<Vec<&str>> {
    if s == EMPTY_SET {
        return Ok(Vec::new());
    }
    let items: Vec<&str> = s.split(',').collect();
    let mut seen = HashSet::new();
    for item in &items {
        if item.is_empty() {
            return Err(Error::parse(lineno, format!("empty item in list `{s}`")));
        }
        if !seen.insert(*item) {
            return Err(Error::parse(lineno, format!("repeated item `{item}` in list `{s}`")));
        }
    }
    Ok(items)
}

fn parse_binding(nodes: &str, excl: &str, tags: &str, lineno: usize, block: &Open) -> Result<Binding> {
    let refs = |field: &str, key: &str| -> Result<Vec<NodeRef>> {
        let mut out = Vec::new();
        for item in parse_list(value(field, key, lineno)?, lineno)? {
            let r: NodeRef = item.parse().map_err(|m| Error::parse(lineno, m))?;
            if !block.tree.contains(r) {
                return Err(Error::Dangling(format!(
                    "line {lineno}: sentence {} ({}) has no node {r}",
                    block.tree.sid(),
                    block.origin
                )));
            }
            out.push(r);
        }
        Ok(out)
    };
    let included = refs(nodes, "nodes")?;
    if included.is_empty() {
        return Err(Error::parse(lineno, "a binding must include at least one node"));
    }
    let excluded = refs(excl, "excl")?;
    let tags = parse_list(value(tags, "tags", lineno)?, lineno)?
        .into_iter()
        .map(str::to_string)
        .collect();
    Ok(Binding {
        included,
        excluded,
        tags,
    })
}

pub(crate) fn join_list<T: ToString>(items: &[T]) -> String {
    if items.is_empty() {
        EMPTY_SET.to_string()
    } else {
        items.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }
}

fn write_binding(out: &mut String, b: &Binding) {
    let _ = write!(
        out,
        "nodes={} excl={} tags={}",
        join_list(&b.included),
        join_list(&b.excluded),
        join_list(&b.tags)
    );
}

pub fn write_paa(annotations: &[SentenceAnnotation]) -> String {
    let mut out = String::new();
    for sa in annotations {
        let _ = writeln!(out, "#SENT {}", sa.origin);
        for s in &sa.structures {
            let p = &s.predicate;
            let _ = writeln!(
                out,
                "PRED {} name={} dis={} class={} group={}",
                s.pid, p.name, p.dis, p.class, p.group
            );
            let _ = write!(out, "PBIND {} ", s.pid);
            write_binding(&mut out, &s.binding);
            out.push('\n');
            for a in &s.arguments {
                let _ = writeln!(out, "ARG {} {} role={}", s.pid, a.aid, a.role);
                let _ = write!(out, "ABIND {} {} ", s.pid, a.aid);
                write_binding(&mut out, &a.binding);
                out.push('\n');
            }
        }
        out.push_str("#END\n");
    }
    out
}
