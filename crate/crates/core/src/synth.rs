//! Seeded generators for random trees, bindings and whole parallel sets.
//! Used by the property tests, the benches and the throughput check.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::align::{AlignmentStore, PredicateAlignment, SentencePair};
use crate::annot::{Aid, Argument, Binding, Pid, PredArgStructure, PredicateEntry, SentenceAnnotation};
use crate::error::Result;
use crate::store::{Ingested, ParallelSet, TreebankStore};
use crate::tree::{NodeRef, NonTerminal, OriginRef, Parent, SentenceTree, Token, FIRST_NODE_ID};
use crate::vocab::{Vocab, VocabKind};

const WORDS: &[&str] = &[
    "a",
    "the",
    "house",
    "buys",
    "Recht",
    "der",
    "Kommission",
    "über",
    "ça",
    "42",
    "-",
    ".",
];
const POS: &[&str] = &["NN", "VV", "ART", "ADJA", "APPR", "$."];
const CATEGORIES: &[&str] = &["S", "NP", "PP", "VP", "IPA", "AP"];
const LABELS: &[&str] = &["SB", "OA", "OD", "HD", "MO", "AG", "NK", "OC"];

/// A random tree with `1..=max_tokens` tokens. Non-terminals group random,
/// possibly non-adjacent, subsets of the current roots, so constituents are
/// often discontinuous.
pub fn random_tree<R: Rng>(rng: &mut R, sid: u32, origin: OriginRef, max_tokens: usize) -> SentenceTree {
    let n = rng.gen_range(1..=max_tokens.max(1));
    let mut parents = vec![Parent::Root; n];
    let mut roots: Vec<NodeRef> = (0..n).map(NodeRef::Token).collect();
    let mut node_parents: Vec<Parent> = Vec::new();
    let n_nodes = rng.gen_range(0..=n);
    for k in 0..n_nodes {
        let id = FIRST_NODE_ID + k as u32;
        let take = rng.gen_range(1..=roots.len().min(3));
        roots.shuffle(rng);
        for child in roots.drain(..take) {
            match child {
                NodeRef::Token(i) => parents[i] = Parent::Node(id),
                NodeRef::Node(c) => node_parents[(c - FIRST_NODE_ID) as usize] = Parent::Node(id),
            }
        }
        node_parents.push(Parent::Root);
        roots.push(NodeRef::Node(id));
    }
    let label = |rng: &mut R| rng.gen_bool(0.7).then(|| LABELS.choose(rng).unwrap().to_string());
    let tokens = parents
        .into_iter()
        .enumerate()
        .map(|(index, parent)| Token {
            index,
            form: WORDS.choose(rng).unwrap().to_string(),
            pos: POS.choose(rng).unwrap().to_string(),
            label: label(rng),
            parent,
        })
        .collect();
    let nodes = node_parents
        .into_iter()
        .enumerate()
        .map(|(k, parent)| NonTerminal {
            id: FIRST_NODE_ID + k as u32,
            category: CATEGORIES.choose(rng).unwrap().to_string(),
            label: label(rng),
            parent,
        })
        .collect();
    SentenceTree::new(sid, origin, tokens, nodes).expect("generated tree is well formed")
}

fn all_refs(tree: &SentenceTree) -> Vec<NodeRef> {
    (0..tree.tokens().len())
        .map(NodeRef::Token)
        .chain(tree.nodes().iter().map(|n| NodeRef::Node(n.id)))
        .collect()
}

/// Arbitrary include/exclude sets over the tree's nodes. The result may
/// resolve to nothing, and exclusions need not be dominated.
pub fn random_binding<R: Rng>(rng: &mut R, tree: &SentenceTree) -> Binding {
    let refs = all_refs(tree);
    let inc = rng.gen_range(1..=refs.len().min(3));
    let exc = rng.gen_range(0..=refs.len().min(2));
    let included: Vec<NodeRef> = refs.choose_multiple(rng, inc).copied().collect();
    let excluded: Vec<NodeRef> = refs.choose_multiple(rng, exc).copied().collect();
    Binding::to(included).excluding(excluded)
}

/// A well-formed binding: one included node, optionally minus one node it
/// properly dominates.
fn clean_binding<R: Rng>(rng: &mut R, tree: &SentenceTree) -> Binding {
    let refs = all_refs(tree);
    let top = *refs.choose(rng).unwrap();
    let below: Vec<NodeRef> = refs
        .iter()
        .copied()
        .filter(|&r| tree.dominates(top, r).unwrap_or(false))
        .collect();
    let mut b = Binding::to([top]);
    if let Some(&x) = below.choose(rng) {
        if rng.gen_bool(0.3) && tree.yield_of(x).unwrap().len() < tree.yield_of(top).unwrap().len() {
            b = b.excluding([x]);
        }
    }
    b
}

struct Lemma {
    name: &'static str,
    dis: u32,
    class: &'static str,
    group: &'static str,
    roles: &'static [&'static str],
}

const LEMMAS_A: &[Lemma] = &[
    Lemma {
        name: "BUY",
        dis: 1,
        class: "V",
        group: "BUY-G",
        roles: &["BUYER", "ENT_BOUGHT", "SELLER"],
    },
    Lemma {
        name: "PURCHASE",
        dis: 1,
        class: "V",
        group: "BUY-G",
        roles: &["PURCHASER", "ENT_PURCHASED"],
    },
    Lemma {
        name: "NOMINATE",
        dis: 1,
        class: "V",
        group: "NOMINATE-G",
        roles: &["NOMINATOR", "ENT_NOMINATED"],
    },
    Lemma {
        name: "NOMINATION",
        dis: 1,
        class: "N",
        group: "NOMINATE-G",
        roles: &["NOMINATOR", "ENT_NOMINATED"],
    },
    Lemma {
        name: "RAISE",
        dis: 2,
        class: "V",
        group: "RAISE-G",
        roles: &["RAISER", "ENT_RAISED"],
    },
];

const LEMMAS_B: &[Lemma] = &[
    Lemma {
        name: "KAUFEN",
        dis: 1,
        class: "V",
        group: "KAUFEN-G",
        roles: &["KAEUFER", "GEKAUFTES"],
    },
    Lemma {
        name: "NOMINIERUNG",
        dis: 1,
        class: "N",
        group: "NOMINATE-G",
        roles: &["NOMINATOR", "ENT_NOMINATED"],
    },
    Lemma {
        name: "ANWENDBAR",
        dis: 1,
        class: "A",
        group: "ANWENDBAR-G",
        roles: &["ENT_ANWENDBAR", "DOMAIN"],
    },
    Lemma {
        name: "ERHEBEN",
        dis: 1,
        class: "V",
        group: "RAISE-G",
        roles: &["RAISER", "ENT_RAISED"],
    },
];

const BINDING_TAGS: &[&str] = &["pv", "oc", "oc-case", "ext"];
const ALIGN_TAGS: &[&str] = &["incomp", "abs-opp", "loose"];

fn some_tags<R: Rng>(rng: &mut R, pool: &[&str], p: f64) -> Vec<String> {
    if !rng.gen_bool(p) {
        return Vec::new();
    }
    let k = rng.gen_range(1..=2);
    pool.choose_multiple(rng, k).map(|t| t.to_string()).collect()
}

fn random_annotation<R: Rng>(rng: &mut R, tree: &SentenceTree, lemmas: &[Lemma]) -> SentenceAnnotation {
    let n = rng.gen_range(0..=3);
    let structures = (1..=n)
        .map(|k| {
            let l = lemmas.choose(rng).unwrap();
            let n_args = rng.gen_range(0..=l.roles.len());
            let arguments = l
                .roles
                .choose_multiple(rng, n_args)
                .enumerate()
                .map(|(i, role)| Argument {
                    aid: Aid(i as u32 + 1),
                    role: role.to_string(),
                    binding: clean_binding(rng, tree).tagged(some_tags(rng, BINDING_TAGS, 0.2)),
                })
                .collect();
            PredArgStructure {
                pid: Pid(k),
                predicate: PredicateEntry {
                    name: l.name.into(),
                    dis: l.dis,
                    class: l.class.into(),
                    group: l.group.into(),
                },
                binding: clean_binding(rng, tree).tagged(some_tags(rng, BINDING_TAGS, 0.2)),
                arguments,
            }
        })
        .collect();
    SentenceAnnotation {
        origin: tree.origin().clone(),
        sid: tree.sid(),
        structures,
    }
}

fn random_alignment<R: Rng>(rng: &mut R, a: &SentenceAnnotation, b: &SentenceAnnotation) -> Vec<PredicateAlignment> {
    let mut out = Vec::new();
    let mut used_b: Vec<Pid> = Vec::new();
    for sa in &a.structures {
        let free: Vec<&PredArgStructure> = b.structures.iter().filter(|s| !used_b.contains(&s.pid)).collect();
        let Some(sb) = free.choose(rng) else { break };
        if rng.gen_bool(0.25) {
            continue;
        }
        used_b.push(sb.pid);
        let mut pa = PredicateAlignment::new(sa.pid, sb.pid);
        pa.tags = some_tags(rng, ALIGN_TAGS, 0.15);
        let mut bs: Vec<Aid> = sb.arguments.iter().map(|x| x.aid).collect();
        bs.shuffle(rng);
        for (x, y) in sa.arguments.iter().zip(bs) {
            if rng.gen_bool(0.8) {
                let tags = some_tags(rng, ALIGN_TAGS, 0.15);
                let tags: Vec<&str> = tags.iter().map(String::as_str).collect();
                pa = pa.link(x.aid, y, &tags);
            }
        }
        out.push(pa);
    }
    out
}

/// A random set of `pairs` sentence pairs in languages `en`/`de`, with valid
/// references throughout. Some sentences are left unpaired and some
/// structures unaligned.
pub fn random_set<R: Rng>(rng: &mut R, name: &str, pairs: usize) -> ParallelSet {
    let mut vocab = Vocab::default();
    vocab.extend(VocabKind::Binding, "ext");
    vocab.extend(VocabKind::Align, "loose");
    let doc = format!("ep-{:02}.al", rng.gen_range(0..100));
    let mut trees = (Vec::new(), Vec::new());
    let mut anns = (Vec::new(), Vec::new());
    let mut alignment = AlignmentStore::new("en", "de");
    for i in 0..pairs {
        let number = i as u32 + 1;
        let ta = random_tree(rng, number, OriginRef::new(&doc, number, "en"), 8);
        // A gap in the B numbering leaves the odd sentence unpaired.
        let nb = if rng.gen_bool(0.1) { number + 10_000 } else { number };
        let tb = random_tree(rng, number, OriginRef::new(&doc, nb, "de"), 8);
        let aa = random_annotation(rng, &ta, LEMMAS_A);
        let ab = random_annotation(rng, &tb, LEMMAS_B);
        if nb == number {
            let pair = SentencePair::new(&doc, number, "en", "de");
            for pa in random_alignment(rng, &aa, &ab) {
                alignment.add(pair.clone(), pa);
            }
        }
        for (v, a) in [(&mut anns.0, aa), (&mut anns.1, ab)] {
            if !a.structures.is_empty() {
                v.push(a);
            }
        }
        trees.0.push(ta);
        trees.1.push(tb);
    }
    let a = TreebankStore::new("en", trees.0, anns.0).expect("generated store is valid");
    let b = TreebankStore::new("de", trees.1, anns.1).expect("generated store is valid");
    ParallelSet::new(name, Arc::new(a), Arc::new(b), alignment, vocab).expect("generated set is valid")
}

/// Two line-aligned texts of `lines` random sentences each.
pub fn parallel_texts<R: Rng>(rng: &mut R, lines: usize) -> (String, String) {
    let mut text = |_| {
        let mut s = String::new();
        for _ in 0..lines {
            let n = rng.gen_range(3..=25);
            let words: Vec<&str> = (0..n).map(|_| *WORDS.choose(rng).unwrap()).collect();
            s.push_str(&words.join(" "));
            s.push('\n');
        }
        s
    };
    (text(0), text(1))
}

/// Adds `per_tree` flat structures to every skeleton tree and aligns the
/// structures of each pair one to one.
pub fn annotate_skeleton<R: Rng>(rng: &mut R, ingested: Ingested, name: &str, per_tree: usize) -> Result<ParallelSet> {
    let flat = |rng: &mut R, tree: &SentenceTree, lemmas: &[Lemma]| SentenceAnnotation {
        origin: tree.origin().clone(),
        sid: tree.sid(),
        structures: (1..=per_tree as u32)
            .map(|k| {
                let l = &lemmas[rng.gen_range(0..lemmas.len())];
                let n = tree.tokens().len();
                let t = |rng: &mut R| Binding::to([NodeRef::Token(rng.gen_range(0..n))]);
                PredArgStructure {
                    pid: Pid(k),
                    predicate: PredicateEntry {
                        name: l.name.into(),
                        dis: l.dis,
                        class: l.class.into(),
                        group: l.group.into(),
                    },
                    binding: t(rng),
                    arguments: vec![Argument {
                        aid: Aid(1),
                        role: l.roles[0].into(),
                        binding: t(rng),
                    }],
                }
            })
            .collect(),
    };
    let ann_a: Vec<_> = ingested.trees_a.iter().map(|t| flat(rng, t, LEMMAS_A)).collect();
    let ann_b: Vec<_> = ingested.trees_b.iter().map(|t| flat(rng, t, LEMMAS_B)).collect();
    let (la, lb) = ingested
        .pairs
        .first()
        .map(|p| (p.lang_a.clone(), p.lang_b.clone()))
        .unwrap_or_else(|| ("en".into(), "de".into()));
    let mut alignment = AlignmentStore::new(&la, &lb);
    for pair in &ingested.pairs {
        for k in 1..=per_tree as u32 {
            alignment.add(
                pair.clone(),
                PredicateAlignment::new(Pid(k), Pid(k)).link(Aid(1), Aid(1), &[]),
            );
        }
    }
    let a = TreebankStore::new(&la, ingested.trees_a, ann_a)?;
    let b = TreebankStore::new(&lb, ingested.trees_b, ann_b)?;
    ParallelSet::new(name, Arc::new(a), Arc::new(b), alignment, Vocab::default())
}
