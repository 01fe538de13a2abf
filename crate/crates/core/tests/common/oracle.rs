//! Brute-force reference implementations. Deliberately naive: every answer
//! is recomputed from parent pointers or plain DFS.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use fuse_core::analysis::{PredKey, RoleKey, TranslationGraph};
use fuse_core::annot::Binding;
use fuse_core::tree::{NodeRef, Parent, SentenceTree};
use rand::Rng;

/// `anc` is `r` itself or reachable from `r` by following parents.
pub fn reaches(tree: &SentenceTree, r: NodeRef, anc: NodeRef) -> bool {
    let mut cur = r;
    loop {
        if cur == anc {
            return true;
        }
        match tree.parent(cur).unwrap() {
            Parent::Root => return false,
            Parent::Node(id) => cur = NodeRef::Node(id),
        }
    }
}

pub fn yield_oracle(tree: &SentenceTree, r: NodeRef) -> BTreeSet<usize> {
    (0..tree.tokens().len())
        .filter(|&i| reaches(tree, NodeRef::Token(i), r))
        .collect()
}

/// Tokens under some included node and under no excluded node; `None` when
/// nothing is left.
pub fn resolve_oracle(tree: &SentenceTree, b: &Binding) -> Option<BTreeSet<usize>> {
    let span: BTreeSet<usize> = (0..tree.tokens().len())
        .filter(|&i| {
            let t = NodeRef::Token(i);
            b.included.iter().any(|&x| reaches(tree, t, x)) && !b.excluded.iter().any(|&x| reaches(tree, t, x))
        })
        .collect();
    (!span.is_empty()).then_some(span)
}

/// A random bipartite graph over at most `max_vertices` predicates with
/// random predicate and role edges.
pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize) -> TranslationGraph {
    let n = rng.gen_range(2..=max_vertices.max(2));
    let n_a = rng.gen_range(1..n);
    let key = |i: usize| {
        if i < n_a {
            PredKey::new("en", &format!("P{i}"), 1)
        } else {
            PredKey::new("de", &format!("Q{i}"), 1)
        }
    };
    let mut g = TranslationGraph::default();
    for i in 0..n {
        g.vertices.insert(key(i));
    }
    let density = rng.gen_range(0.2..1.5);
    let n_edges = (n as f64 * density) as usize;
    for _ in 0..n_edges {
        let a = key(rng.gen_range(0..n_a));
        let b = key(rng.gen_range(n_a..n));
        let count = rng.gen_range(1..=4);
        g.add_edge(a.clone(), b.clone(), count);
        for _ in 0..rng.gen_range(0..3) {
            let ra = RoleKey {
                pred: a.clone(),
                role: format!("R{}", rng.gen_range(0..3)),
            };
            let rb = RoleKey {
                pred: b.clone(),
                role: format!("S{}", rng.gen_range(0..3)),
            };
            g.add_role_edge(ra, rb, rng.gen_range(1..=4), &[]);
        }
    }
    g
}

fn components<T: Ord + Clone>(nodes: &BTreeSet<T>, edges: &[(T, T)]) -> Vec<Vec<T>> {
    let mut adj: BTreeMap<&T, Vec<&T>> = nodes.iter().map(|n| (n, Vec::new())).collect();
    for (a, b) in edges {
        adj.get_mut(a).unwrap().push(b);
        adj.get_mut(b).unwrap().push(a);
    }
    let mut seen: BTreeSet<&T> = BTreeSet::new();
    let mut out = Vec::new();
    for start in nodes {
        if seen.contains(start) {
            continue;
        }
        let mut comp = Vec::new();
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(x) = stack.pop() {
            comp.push(x.clone());
            for &y in &adj[x] {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        comp.sort();
        out.push(comp);
    }
    out
}

/// Clusters as (members, role classes), both sorted.
pub fn clusters_oracle(g: &TranslationGraph, min_count: usize) -> Vec<(Vec<PredKey>, Vec<Vec<RoleKey>>)> {
    let edges: Vec<(PredKey, PredKey)> = g
        .edges
        .iter()
        .filter(|(_, &c)| c >= min_count)
        .map(|(k, _)| k.clone())
        .collect();
    let mut out: Vec<(Vec<PredKey>, Vec<Vec<RoleKey>>)> = components(&g.vertices, &edges)
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|members| {
            let inside = |r: &RoleKey| members.contains(&r.pred);
            let pairs: Vec<(&(RoleKey, RoleKey), usize)> = g
                .role_edges
                .iter()
                .filter(|((a, b), _)| inside(a) && inside(b))
                .map(|(k, e)| (k, e.count))
                .collect();
            let roles: BTreeSet<RoleKey> = pairs.iter().flat_map(|((a, b), _)| [a.clone(), b.clone()]).collect();
            let strong: Vec<(RoleKey, RoleKey)> = pairs
                .iter()
                .filter(|(_, c)| *c >= min_count)
                .map(|(k, _)| (*k).clone())
                .collect();
            let mut classes = components(&roles, &strong);
            classes.sort();
            (members, classes)
        })
        .collect();
    out.sort();
    out
}
