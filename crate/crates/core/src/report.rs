//! Rendering of query results as TSV or as line-oriented text.

use std::fmt::{Display, Write};
use std::str::FromStr;

use crate::analysis::{FrameSummary, PredicateCluster, RealisationRecord, Stats, TagHit};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Tsv,
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "tsv" => Ok(Format::Tsv),
            "text" => Ok(Format::Text),
            _ => Err(format!("unknown format `{s}` (expected tsv or text)")),
        }
    }
}

fn list<T: Display>(items: &[T]) -> String {
    if items.is_empty() {
        return "-".into();
    }
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub fn realisations(records: &[RealisationRecord], format: Format) -> String {
    let mut out = String::new();
    for r in records {
        let _ = match format {
            Format::Tsv => writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.lang,
                r.sid,
                r.pid,
                r.aid,
                r.predicate,
                r.class,
                r.role,
                list(&r.span),
                list(&r.nodes),
                list(&r.categories),
                list(&r.functions),
                list(&r.tags),
            ),
            Format::Text => {
                let nodes: Vec<String> = r
                    .nodes
                    .iter()
                    .zip(r.categories.iter().zip(&r.functions))
                    .map(|(n, (c, f))| format!("{n} {c}/{f}"))
                    .collect();
                writeln!(
                    out,
                    "{}:{} {}.{} {}[{}] {}: {} \"{}\" tags={}",
                    r.lang,
                    r.sid,
                    r.pid,
                    r.aid,
                    r.predicate,
                    r.class,
                    r.role,
                    nodes.join(", "),
                    r.words.join(" "),
                    list(&r.tags),
                )
            }
        };
    }
    out
}

pub fn frames(summaries: &[FrameSummary], format: Format) -> String {
    let mut out = String::new();
    for s in summaries {
        let roles: Vec<&String> = s.roles.iter().collect();
        let counts: Vec<String> = s.arg_counts.iter().map(|(n, c)| format!("{n}:{c}")).collect();
        let _ = match format {
            Format::Tsv => writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                s.lang,
                s.name,
                s.dis,
                s.class,
                s.occurrences,
                list(&roles),
                list(&counts)
            ),
            Format::Text => writeln!(
                out,
                "{} {}/{} [{}] x{}: roles {}; argument counts {}",
                s.lang,
                s.name,
                s.dis,
                s.class,
                s.occurrences,
                list(&roles),
                list(&counts)
            ),
        };
    }
    out
}

pub fn tag_hits(hits: &[TagHit], format: Format) -> String {
    let mut out = String::new();
    for h in hits {
        let pa = h.predicate_a.as_deref().unwrap_or("-");
        let pb = h.predicate_b.as_deref().unwrap_or("-");
        let (ra, rb) = h.roles.as_ref().map_or(("-", "-"), |(a, b)| (a.as_str(), b.as_str()));
        let _ = match format {
            Format::Tsv => writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                h.pair, h.pid_a, h.pid_b, h.level, pa, pb, ra, rb
            ),
            Format::Text => match &h.roles {
                None => writeln!(out, "{} {} {}~{}: {pa} ~ {pb}", h.pair, h.level, h.pid_a, h.pid_b),
                Some(_) => writeln!(
                    out,
                    "{} {} {}~{}: {pa}.{ra} ~ {pb}.{rb}",
                    h.pair, h.level, h.pid_a, h.pid_b
                ),
            },
        };
    }
    out
}

/// All clusters first, then the role classes of each.
pub fn clusters(clusters: &[PredicateCluster], format: Format) -> String {
    let mut out = String::new();
    for (i, c) in clusters.iter().enumerate() {
        let _ = match format {
            Format::Tsv => writeln!(out, "cluster\t{}\t{}", i + 1, list(&c.members)),
            Format::Text => writeln!(out, "cluster {}: {}", i + 1, list(&c.members).replace(',', " ")),
        };
    }
    for (i, c) in clusters.iter().enumerate() {
        for (j, class) in c.role_classes.iter().enumerate() {
            let _ = match format {
                Format::Tsv => writeln!(out, "roles\t{}\t{}\t{}", i + 1, j + 1, list(class)),
                Format::Text => writeln!(
                    out,
                    "cluster {} roles {}: {}",
                    i + 1,
                    j + 1,
                    list(class).replace(',', " ")
                ),
            };
        }
    }
    out
}

pub fn stats(s: &Stats, format: Format) -> String {
    let mut rows: Vec<(String, String, usize)> = Vec::new();
    for (lang, c) in s
        .per_lang
        .iter()
        .map(|(l, c)| (l.as_str(), c))
        .chain([("total", &s.total)])
    {
        rows.extend(
            c.fields()
                .into_iter()
                .map(|(k, v)| (lang.to_string(), k.to_string(), v)),
        );
    }
    rows.push(("set".into(), "pairs".into(), s.pairs));
    rows.push(("set".into(), "predicate_alignments".into(), s.predicate_alignments));
    rows.push(("set".into(), "argument_alignments".into(), s.argument_alignments));
    rows.extend(
        s.align_tags
            .iter()
            .map(|(t, n)| ("set".to_string(), format!("tag:{t}"), *n)),
    );
    let mut out = String::new();
    for (scope, key, value) in rows {
        let _ = match format {
            Format::Tsv => writeln!(out, "{scope}\t{key}\t{value}"),
            Format::Text => writeln!(out, "{scope:<6} {key:<26} {value}"),
        };
    }
    out
}
