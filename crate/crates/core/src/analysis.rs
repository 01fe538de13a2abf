//! Queries over a loaded set: paradigmatic realisations of a role,
//! syntagmatic frame summaries, alignment-tag search, the translation graph
//! and the predicate clusters derived from it.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::align::{SentencePair, Side};
use crate::annot::{fold, resolve_binding, Aid, Argument, Pid, PredArgStructure, SentenceAnnotation};
use crate::exec::Exec;
use crate::store::{ParallelSet, TreebankStore};
use crate::tree::{NodeRef, ABSENT};
use crate::vocab::VocabKind;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Filters {
    pub lang: Option<String>,
    /// Drop arguments whose own binding carries one of these tags.
    pub skip_binding_tags: BTreeSet<String>,
    /// Drop whole structures whose predicate binding carries one of these.
    pub skip_pred_tags: BTreeSet<String>,
    /// Drop structures or arguments aligned under one of these tags.
    pub skip_align_tags: BTreeSet<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealisationRecord {
    pub lang: String,
    pub sid: u32,
    pub pid: Pid,
    pub aid: Aid,
    pub predicate: String,
    pub class: String,
    pub role: String,
    pub span: Vec<usize>,
    /// Included nodes of the argument binding.
    pub nodes: Vec<NodeRef>,
    /// Category (or POS tag) of each bound node.
    pub categories: Vec<String>,
    /// Functional label of each bound node.
    pub functions: Vec<String>,
    pub tags: Vec<String>,
    /// Surface forms of the span.
    pub words: Vec<String>,
}

fn intersects(tags: &[String], skip: &BTreeSet<String>) -> bool {
    tags.iter().any(|t| skip.contains(t))
}

type StructKey<'a> = (&'a str, &'a str, u32, Pid);
type ArgKey<'a> = (&'a str, &'a str, u32, Pid, Aid);

/// Structures and arguments touched by an alignment carrying a skipped tag.
fn align_skips<'a>(set: &'a ParallelSet, skip: &BTreeSet<String>) -> (HashSet<StructKey<'a>>, HashSet<ArgKey<'a>>) {
    let mut structs = HashSet::new();
    let mut args = HashSet::new();
    if skip.is_empty() {
        return (structs, args);
    }
    let aln = set.alignment();
    let (la, lb) = (aln.lang_a.as_str(), aln.lang_b.as_str());
    for (pair, pa) in aln.iter() {
        let doc = pair.document.as_str();
        let n = pair.sentence_number;
        if intersects(&pa.tags, skip) {
            structs.insert((la, doc, n, pa.a));
            structs.insert((lb, doc, n, pa.b));
        }
        for l in pa.arg_links.iter().filter(|l| intersects(&l.tags, skip)) {
            args.insert((la, doc, n, l.a.pid, l.a.aid));
            args.insert((lb, doc, n, l.b.pid, l.b.aid));
        }
    }
    (structs, args)
}

/// Every realisation of `role` among the predicates of `group`, ordered by
/// (lang, sid, pid, aid). Unknown groups or roles give an empty result.
pub fn realisations(
    set: &ParallelSet,
    group: &str,
    role: &str,
    filters: &Filters,
    exec: Exec,
) -> Vec<RealisationRecord> {
    let (skip_structs, skip_args) = align_skips(set, &filters.skip_align_tags);
    let mut out = Vec::new();
    for store in set.stores() {
        if filters.lang.as_deref().is_some_and(|l| l != store.lang()) {
            continue;
        }
        let lang = store.lang();
        out.extend(exec.flat_map(store.annotations(), |sa| {
            let Some(tree) = store.tree(sa.sid) else {
                return Vec::new();
            };
            let doc = sa.origin.document.as_str();
            let n = sa.origin.sentence_number;
            let mut recs = Vec::new();
            for s in &sa.structures {
                if s.predicate.group != group
                    || intersects(&s.binding.tags, &filters.skip_pred_tags)
                    || skip_structs.contains(&(lang, doc, n, s.pid))
                {
                    continue;
                }
                for a in s.arguments.iter().filter(|a| a.role == role) {
                    if intersects(&a.binding.tags, &filters.skip_binding_tags)
                        || skip_args.contains(&(lang, doc, n, s.pid, a.aid))
                    {
                        continue;
                    }
                    let Ok(span) = resolve_binding(&a.binding, tree) else {
                        continue;
                    };
                    recs.push(record(store, sa, s, a, span));
                }
            }
            recs
        }));
    }
    out.sort_by(|x, y| (&x.lang, x.sid, x.pid, x.aid).cmp(&(&y.lang, y.sid, y.pid, y.aid)));
    out
}

fn record(
    store: &TreebankStore,
    sa: &SentenceAnnotation,
    s: &PredArgStructure,
    a: &Argument,
    span: Vec<usize>,
) -> RealisationRecord {
    let tree = store.tree(sa.sid).expect("caller checked");
    let nodes = a.binding.included.clone();
    let categories = nodes
        .iter()
        .map(|&r| tree.category(r).unwrap_or(ABSENT).to_string())
        .collect();
    let functions = nodes
        .iter()
        .map(|&r| tree.label(r).ok().flatten().unwrap_or(ABSENT).to_string())
        .collect();
    let words = span.iter().map(|&i| tree.tokens()[i].form.clone()).collect();
    RealisationRecord {
        lang: store.lang().to_string(),
        sid: sa.sid,
        pid: s.pid,
        aid: a.aid,
        predicate: s.predicate.name.clone(),
        class: s.predicate.class.clone(),
        role: a.role.clone(),
        span,
        nodes,
        categories,
        functions,
        tags: a.binding.tags.clone(),
        words,
    }
}

/// Argument structure of one predicate within a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameSummary {
    pub lang: String,
    pub name: String,
    pub dis: u32,
    pub class: String,
    pub occurrences: usize,
    pub roles: BTreeSet<String>,
    /// Number of arguments -> number of occurrences with that many.
    pub arg_counts: BTreeMap<usize, usize>,
}

/// One summary per (name, dis) of the group, ordered by (lang, class, name, dis).
pub fn frames(set: &ParallelSet, lang: Option<&str>, group: &str) -> Vec<FrameSummary> {
    let mut by_key: BTreeMap<(String, String, String, u32), FrameSummary> = BTreeMap::new();
    for store in set.stores() {
        if lang.is_some_and(|l| l != store.lang()) {
            continue;
        }
        for s in store.annotations().iter().flat_map(|sa| &sa.structures) {
            let p = &s.predicate;
            if p.group != group {
                continue;
            }
            let key = (store.lang().to_string(), p.class.clone(), fold(&p.name), p.dis);
            let summary = by_key.entry(key).or_insert_with(|| FrameSummary {
                lang: store.lang().to_string(),
                name: p.name.clone(),
                dis: p.dis,
                class: p.class.clone(),
                occurrences: 0,
                roles: BTreeSet::new(),
                arg_counts: BTreeMap::new(),
            });
            summary.occurrences += 1;
            summary.roles.extend(s.arguments.iter().map(|a| a.role.clone()));
            *summary.arg_counts.entry(s.arguments.len()).or_default() += 1;
        }
    }
    by_key.into_values().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Level {
    Predicate,
    Argument,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Predicate => "predicate",
            Level::Argument => "argument",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TagHit {
    pub pair: SentencePair,
    pub pid_a: Pid,
    pub pid_b: Pid,
    pub predicate_a: Option<String>,
    pub predicate_b: Option<String>,
    pub level: Level,
    /// Linked roles for argument-level hits.
    pub roles: Option<(String, String)>,
}

/// Alignments of either level carrying `tag`, in file order. A tag outside
/// the alignment vocabulary yields nothing.
pub fn find_by_align_tag(set: &ParallelSet, tag: &str) -> Vec<TagHit> {
    if !set.vocab().contains(VocabKind::Align, tag) {
        return Vec::new();
    }
    let aln = set.alignment();
    let side_a = Side::new(&aln.lang_a, set.store_a().annotations());
    let side_b = Side::new(&aln.lang_b, set.store_b().annotations());
    let mut out = Vec::new();
    for (pair, pa) in aln.iter() {
        let sa = side_a.structure(pair, pa.a);
        let sb = side_b.structure(pair, pa.b);
        let hit = |level, roles| TagHit {
            pair: pair.clone(),
            pid_a: pa.a,
            pid_b: pa.b,
            predicate_a: sa.map(|s| s.predicate.name.clone()),
            predicate_b: sb.map(|s| s.predicate.name.clone()),
            level,
            roles,
        };
        if pa.has_tag(tag) {
            out.push(hit(Level::Predicate, None));
        }
        for l in pa.arg_links.iter().filter(|l| l.tags.iter().any(|t| t == tag)) {
            let role = |s: Option<&PredArgStructure>, aid| {
                s.and_then(|s| s.argument(aid))
                    .map_or_else(|| aid.to_string(), |a| a.role.clone())
            };
            out.push(hit(Level::Argument, Some((role(sa, l.a.aid), role(sb, l.b.aid)))));
        }
    }
    out
}

/// A predicate vertex: language, case-folded name, disambiguator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PredKey {
    pub lang: String,
    pub name: String,
    pub dis: u32,
}

impl PredKey {
    pub fn new(lang: impl Into<String>, name: &str, dis: u32) -> Self {
        PredKey {
            lang: lang.into(),
            name: fold(name),
            dis,
        }
    }
}

impl fmt::Display for PredKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}/{}", self.lang, self.name, self.dis)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RoleKey {
    pub pred: PredKey,
    pub role: String,
}

impl fmt::Display for RoleKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.pred, self.role)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RoleEdge {
    pub count: usize,
    /// Alignment tag -> number of links carrying it.
    pub tags: BTreeMap<String, usize>,
}

/// Bipartite graph of predicates linked by observed alignments.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TranslationGraph {
    pub vertices: BTreeSet<PredKey>,
    pub edges: BTreeMap<(PredKey, PredKey), usize>,
    pub role_edges: BTreeMap<(RoleKey, RoleKey), RoleEdge>,
}

impl TranslationGraph {
    pub fn add_edge(&mut self, a: PredKey, b: PredKey, count: usize) {
        self.vertices.insert(a.clone());
        self.vertices.insert(b.clone());
        *self.edges.entry((a, b)).or_default() += count;
    }

    pub fn add_role_edge(&mut self, a: RoleKey, b: RoleKey, count: usize, tags: &[String]) {
        let e = self.role_edges.entry((a, b)).or_default();
        e.count += count;
        for t in tags {
            *e.tags.entry(t.clone()).or_default() += count;
        }
    }
}

/// Aggregates every alignment of the set whose tags avoid `exclude`. An
/// excluded predicate alignment drops its argument links as well.
pub fn build_graph(set: &ParallelSet, exclude: &BTreeSet<String>) -> TranslationGraph {
    let mut g = TranslationGraph::default();
    for store in set.stores() {
        g.vertices.extend(
            store
                .lexicon()
                .entries()
                .map(|e| PredKey::new(store.lang(), &e.name, e.dis)),
        );
    }
    let aln = set.alignment();
    let side_a = Side::new(&aln.lang_a, set.store_a().annotations());
    let side_b = Side::new(&aln.lang_b, set.store_b().annotations());
    for (pair, pa) in aln.iter() {
        if intersects(&pa.tags, exclude) {
            continue;
        }
        let (Some(sa), Some(sb)) = (side_a.structure(pair, pa.a), side_b.structure(pair, pa.b)) else {
            continue;
        };
        let ka = PredKey::new(&aln.lang_a, &sa.predicate.name, sa.predicate.dis);
        let kb = PredKey::new(&aln.lang_b, &sb.predicate.name, sb.predicate.dis);
        g.add_edge(ka.clone(), kb.clone(), 1);
        for l in &pa.arg_links {
            if intersects(&l.tags, exclude) || l.a.pid != pa.a || l.b.pid != pa.b {
                continue;
            }
            let (Some(ra), Some(rb)) = (sa.argument(l.a.aid), sb.argument(l.b.aid)) else {
                continue;
            };
            let role_a = RoleKey {
                pred: ka.clone(),
                role: ra.role.clone(),
            };
            let role_b = RoleKey {
                pred: kb.clone(),
                role: rb.role.clone(),
            };
            g.add_role_edge(role_a, role_b, 1, &l.tags);
        }
    }
    g
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredicateCluster {
    pub members: Vec<PredKey>,
    pub role_classes: Vec<Vec<RoleKey>>,
}

struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        match self.rank[a].cmp(&self.rank[b]) {
            std::cmp::Ordering::Less => self.parent[a] = b,
            std::cmp::Ordering::Greater => self.parent[b] = a,
            std::cmp::Ordering::Equal => {
                self.parent[b] = a;
                self.rank[a] = self.rank[a].saturating_add(1);
            }
        }
    }
}

/// Connected components of the predicate graph over edges with
/// `count >= min_count`, singletons dropped. Within a cluster, roles are
/// partitioned by the components of the role graph under the same threshold.
/// Clusters and classes are sorted by their smallest member.
pub fn derive_clusters(graph: &TranslationGraph, min_count: usize) -> Vec<PredicateCluster> {
    let verts: Vec<&PredKey> = graph.vertices.iter().collect();
    let index: HashMap<&PredKey, usize> = verts.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut preds = DisjointSet::new(verts.len());
    for ((a, b), &count) in &graph.edges {
        if count >= min_count {
            preds.union(index[a], index[b]);
        }
    }
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..verts.len() {
        members.entry(preds.find(i)).or_default().push(i);
    }
    let cluster_of: HashMap<usize, usize> = members
        .values()
        .filter(|m| m.len() > 1)
        .flat_map(|m| m.iter().map(move |&i| (i, m[0])))
        .collect();

    // Roles of edges lying inside one cluster.
    let mut roles: BTreeSet<&RoleKey> = BTreeSet::new();
    let inside = |a: &RoleKey, b: &RoleKey| -> Option<usize> {
        let ca = cluster_of.get(index.get(&a.pred)?)?;
        let cb = cluster_of.get(index.get(&b.pred)?)?;
        (ca == cb).then_some(*ca)
    };
    for (a, b) in graph.role_edges.keys() {
        if inside(a, b).is_some() {
            roles.insert(a);
            roles.insert(b);
        }
    }
    let role_list: Vec<&RoleKey> = roles.into_iter().collect();
    let role_index: HashMap<&RoleKey, usize> = role_list.iter().enumerate().map(|(i, r)| (*r, i)).collect();
    let mut role_sets = DisjointSet::new(role_list.len());
    for ((a, b), e) in &graph.role_edges {
        if e.count >= min_count && inside(a, b).is_some() {
            role_sets.union(role_index[a], role_index[b]);
        }
    }

    let mut classes: HashMap<usize, BTreeMap<usize, Vec<RoleKey>>> = HashMap::new();
    for (i, r) in role_list.iter().enumerate() {
        let cluster = cluster_of[&index[&r.pred]];
        classes
            .entry(cluster)
            .or_default()
            .entry(role_sets.find(i))
            .or_default()
            .push((*r).clone());
    }

    let mut out: Vec<PredicateCluster> = members
        .values()
        .filter(|m| m.len() > 1)
        .map(|m| {
            let mut role_classes: Vec<Vec<RoleKey>> = classes.remove(&m[0]).unwrap_or_default().into_values().collect();
            for c in &mut role_classes {
                c.sort();
            }
            role_classes.sort();
            PredicateCluster {
                members: m.iter().map(|&i| verts[i].clone()).collect(),
                role_classes,
            }
        })
        .collect();
    out.sort_by(|a, b| a.members[0].cmp(&b.members[0]));
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Counts {
    pub sentences: usize,
    pub tokens: usize,
    pub structures: usize,
    pub arguments: usize,
    pub bindings_with_exclusions: usize,
    pub dangling_predicates: usize,
    pub dangling_arguments: usize,
}

impl Counts {
    fn add(&mut self, o: &Counts) {
        self.sentences += o.sentences;
        self.tokens += o.tokens;
        self.structures += o.structures;
        self.arguments += o.arguments;
        self.bindings_with_exclusions += o.bindings_with_exclusions;
        self.dangling_predicates += o.dangling_predicates;
        self.dangling_arguments += o.dangling_arguments;
    }

    pub fn fields(&self) -> [(&'static str, usize); 7] {
        [
            ("sentences", self.sentences),
            ("tokens", self.tokens),
            ("structures", self.structures),
            ("arguments", self.arguments),
            ("bindings_with_exclusions", self.bindings_with_exclusions),
            ("dangling_predicates", self.dangling_predicates),
            ("dangling_arguments", self.dangling_arguments),
        ]
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub per_lang: Vec<(String, Counts)>,
    pub total: Counts,
    pub pairs: usize,
    pub predicate_alignments: usize,
    pub argument_alignments: usize,
    /// Alignment tag -> links carrying it (both levels).
    pub align_tags: BTreeMap<String, usize>,
}

pub fn stats(set: &ParallelSet) -> Stats {
    let report = set.dangling_report();
    let mut s = Stats {
        pairs: set.registry().len(),
        ..Stats::default()
    };
    for store in set.stores() {
        let lang = store.lang();
        let structs = || store.annotations().iter().flat_map(|sa| &sa.structures);
        let bindings =
            structs().flat_map(|x| std::iter::once(&x.binding).chain(x.arguments.iter().map(|a| &a.binding)));
        let c = Counts {
            sentences: store.trees().len(),
            tokens: store.trees().iter().map(|t| t.tokens().len()).sum(),
            structures: structs().count(),
            arguments: structs().map(|x| x.arguments.len()).sum(),
            bindings_with_exclusions: bindings.filter(|b| !b.excluded.is_empty()).count(),
            dangling_predicates: report.predicates.iter().filter(|d| d.lang == lang).count(),
            dangling_arguments: report.arguments.iter().filter(|d| d.lang == lang).count(),
        };
        s.total.add(&c);
        s.per_lang.push((lang.to_string(), c));
    }
    for (_, pa) in set.alignment().iter() {
        s.predicate_alignments += 1;
        s.argument_alignments += pa.arg_links.len();
        for t in pa.tags.iter().chain(pa.arg_links.iter().flat_map(|l| &l.tags)) {
            *s.align_tags.entry(t.clone()).or_default() += 1;
        }
    }
    s
}
