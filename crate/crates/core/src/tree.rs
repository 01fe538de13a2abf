//! Monolingual constituent trees.
//!
//! A sentence is a sequence of tokens plus a set of non-terminal nodes
//! (ids >= 500) connected by labelled edges. Crossing branches are allowed,
//! so the yield of a node is a set of token indices and not necessarily an
//! interval.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Smallest id a non-terminal may carry.
pub const FIRST_NODE_ID: u32 = 500;

/// Marker written for an absent edge label or POS tag.
pub const ABSENT: &str = "--";

/// A terminal (`t<index>`) or non-terminal (`n<id>`) node of one sentence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeRef {
    Token(usize),
    Node(u32),
}

impl fmt::Display for NodeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeRef::Token(i) => write!(f, "t{i}"),
            NodeRef::Node(id) => write!(f, "n{id}"),
        }
    }
}

impl FromStr for NodeRef {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("malformed node reference `{s}`");
        let (kind, digits) = s.split_at_checked(1).ok_or_else(bad)?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        match kind {
            "t" => digits.parse().map(NodeRef::Token).map_err(|_| bad()),
            "n" => digits.parse().map(NodeRef::Node).map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parent {
    Root,
    Node(u32),
}

impl fmt::Display for Parent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parent::Root => f.write_str("0"),
            Parent::Node(id) => write!(f, "{id}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub index: usize,
    pub form: String,
    pub pos: String,
    /// Functional label of the edge to `parent`.
    pub label: Option<String>,
    pub parent: Parent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonTerminal {
    pub id: u32,
    pub category: String,
    pub label: Option<String>,
    pub parent: Parent,
}

/// One edge of the constituent structure, borrowed from its tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge<'a> {
    pub child: NodeRef,
    pub parent: Parent,
    pub label: Option<&'a str>,
}

/// Where a sentence comes from, e.g. `de-en/ep-00-02-15.al:326:en`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OriginRef {
    pub document: String,
    pub sentence_number: u32,
    pub lang: String,
}

impl OriginRef {
    pub fn new(document: impl Into<String>, sentence_number: u32, lang: impl Into<String>) -> Self {
        OriginRef {
            document: document.into(),
            sentence_number,
            lang: lang.into(),
        }
    }

    pub(crate) fn check(&self) -> Result<(), String> {
        if self.document.is_empty() || self.document.contains(char::is_whitespace) {
            return Err(format!("invalid document name `{}`", self.document));
        }
        if self.sentence_number == 0 {
            return Err("sentence number must be >= 1".into());
        }
        if !is_word(&self.lang) || self.lang.contains(':') {
            return Err(format!("invalid language code `{}`", self.lang));
        }
        Ok(())
    }
}

impl fmt::Display for OriginRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.document, self.sentence_number, self.lang)
    }
}

impl FromStr for OriginRef {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut parts = s.rsplitn(3, ':');
        let (Some(lang), Some(num), Some(document)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(format!("malformed origin `{s}`, expected <document>:<number>:<lang>"));
        };
        let sentence_number = num.parse().map_err(|_| format!("malformed sentence number `{num}`"))?;
        let origin = OriginRef::new(document, sentence_number, lang);
        origin.check()?;
        Ok(origin)
    }
}

/// Non-empty and free of whitespace, so it survives a field-separated line.
pub(crate) fn is_word(s: &str) -> bool {
    !s.is_empty() && !s.contains(char::is_whitespace)
}

fn is_field(s: &str) -> bool {
    !s.is_empty() && !s.contains(['\t', '\n', '\r'])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SentenceTree {
    sid: u32,
    origin: OriginRef,
    tokens: Vec<Token>,
    nodes: Vec<NonTerminal>,
    // Indexed like `nodes`.
    children: Vec<Vec<NodeRef>>,
    yields: Vec<Vec<usize>>,
    // 0..tokens.len(), so token yields can be borrowed as slices.
    positions: Vec<usize>,
}

impl SentenceTree {
    /// Builds a tree and checks every structural invariant: token indices
    /// match positions, node ids are >= 500 and strictly ascending, parents
    /// exist, the parent relation is acyclic and no node has an empty yield.
    pub fn new(sid: u32, origin: OriginRef, tokens: Vec<Token>, nodes: Vec<NonTerminal>) -> Result<Self> {
        let fail = |m: String| Error::invariant(sid, m);
        if sid == 0 {
            return Err(fail("sid must be positive".into()));
        }
        origin.check().map_err(fail)?;
        if tokens.is_empty() {
            return Err(fail("sentence has no tokens".into()));
        }
        for (pos, tok) in tokens.iter().enumerate() {
            if tok.index != pos {
                return Err(fail(format!("token at position {pos} carries index {}", tok.index)));
            }
            if !is_field(&tok.form) || !is_field(&tok.pos) {
                return Err(fail(format!("token {pos} has an empty or malformed form/tag")));
            }
        }
        let mut prev = None;
        for node in &nodes {
            if node.id < FIRST_NODE_ID {
                return Err(fail(format!("node id {} is below {FIRST_NODE_ID}", node.id)));
            }
            if let Some(p) = prev {
                if node.id == p {
                    return Err(fail(format!("duplicate node id {}", node.id)));
                }
                if node.id < p {
                    return Err(fail(format!("node ids not ascending ({} after {p})", node.id)));
                }
            }
            prev = Some(node.id);
            if !is_field(&node.category) {
                return Err(fail(format!("node {} has an empty category", node.id)));
            }
        }
        let labels = tokens
            .iter()
            .map(|t| (NodeRef::Token(t.index), &t.label))
            .chain(nodes.iter().map(|n| (NodeRef::Node(n.id), &n.label)));
        for (r, label) in labels {
            if let Some(l) = label {
                if !is_field(l) || l == ABSENT {
                    return Err(fail(format!("{r} has a malformed edge label `{l}`")));
                }
            }
        }

        let index_of = |id: u32| nodes.binary_search_by_key(&id, |n| n.id).ok();
        let mut children = vec![Vec::new(); nodes.len()];
        let edges = tokens
            .iter()
            .map(|t| (NodeRef::Token(t.index), t.parent))
            .chain(nodes.iter().map(|n| (NodeRef::Node(n.id), n.parent)));
        for (child, parent) in edges {
            if let Parent::Node(pid) = parent {
                if pid < FIRST_NODE_ID {
                    return Err(fail(format!("{child} has parent {pid} below {FIRST_NODE_ID}")));
                }
                let Some(pi) = index_of(pid) else {
                    return Err(fail(format!("{child} has unknown parent {pid}")));
                };
                children[pi].push(child);
            }
        }

        // Walking up from any node must reach ROOT within |nodes| steps.
        for node in &nodes {
            let mut cur = node.parent;
            let mut steps = 0;
            while let Parent::Node(pid) = cur {
                steps += 1;
                if pid == node.id || steps > nodes.len() {
                    return Err(fail(format!("cycle through node {}", node.id)));
                }
                cur = nodes[index_of(pid).expect("parent checked above")].parent;
            }
        }

        let mut yields: Vec<Option<Vec<usize>>> = vec![None; nodes.len()];
        for i in 0..nodes.len() {
            compute_yield(i, &nodes, &children, &mut yields);
        }
        let yields: Vec<Vec<usize>> = yields.into_iter().map(|y| y.expect("computed")).collect();
        if let Some(i) = yields.iter().position(Vec::is_empty) {
            return Err(fail(format!("node {} dominates no token", nodes[i].id)));
        }

        let positions = (0..tokens.len()).collect();
        Ok(SentenceTree {
            sid,
            origin,
            tokens,
            nodes,
            children,
            yields,
            positions,
        })
    }

    pub fn sid(&self) -> u32 {
        self.sid
    }

    pub fn origin(&self) -> &OriginRef {
        &self.origin
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn nodes(&self) -> &[NonTerminal] {
        &self.nodes
    }

    pub fn node(&self, id: u32) -> Option<&NonTerminal> {
        self.node_index(id).map(|i| &self.nodes[i])
    }

    fn node_index(&self, id: u32) -> Option<usize> {
        self.nodes.binary_search_by_key(&id, |n| n.id).ok()
    }

    pub fn contains(&self, r: NodeRef) -> bool {
        match r {
            NodeRef::Token(i) => i < self.tokens.len(),
            NodeRef::Node(id) => self.node_index(id).is_some(),
        }
    }

    fn check(&self, r: NodeRef) -> Result<()> {
        if self.contains(r) {
            Ok(())
        } else {
            Err(Error::UnknownNode(r))
        }
    }

    /// Immediate children in file order (tokens first, then non-terminals).
    pub fn children(&self, r: NodeRef) -> Result<&[NodeRef]> {
        self.check(r)?;
        Ok(match r {
            NodeRef::Token(_) => &[],
            NodeRef::Node(id) => &self.children[self.node_index(id).expect("checked")],
        })
    }

    pub fn parent(&self, r: NodeRef) -> Result<Parent> {
        self.check(r)?;
        Ok(match r {
            NodeRef::Token(i) => self.tokens[i].parent,
            NodeRef::Node(id) => self.node(id).expect("checked").parent,
        })
    }

    /// Functional label on the edge above `r`.
    pub fn label(&self, r: NodeRef) -> Result<Option<&str>> {
        self.check(r)?;
        Ok(match r {
            NodeRef::Token(i) => self.tokens[i].label.as_deref(),
            NodeRef::Node(id) => self.node(id).expect("checked").label.as_deref(),
        })
    }

    /// Phrasal category of a non-terminal, or the POS tag of a token.
    pub fn category(&self, r: NodeRef) -> Result<&str> {
        self.check(r)?;
        Ok(match r {
            NodeRef::Token(i) => &self.tokens[i].pos,
            NodeRef::Node(id) => &self.node(id).expect("checked").category,
        })
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge<'_>> + '_ {
        let toks = self.tokens.iter().map(|t| Edge {
            child: NodeRef::Token(t.index),
            parent: t.parent,
            label: t.label.as_deref(),
        });
        let nodes = self.nodes.iter().map(|n| Edge {
            child: NodeRef::Node(n.id),
            parent: n.parent,
            label: n.label.as_deref(),
        });
        toks.chain(nodes)
    }

    /// Nodes attached directly to ROOT.
    pub fn roots(&self) -> impl Iterator<Item = NodeRef> + '_ {
        self.edges().filter(|e| e.parent == Parent::Root).map(|e| e.child)
    }

    /// Sorted token indices dominated by `r` (a token yields itself).
    pub fn yield_of(&self, r: NodeRef) -> Result<&[usize]> {
        self.check(r)?;
        Ok(match r {
            NodeRef::Token(i) => &self.positions[i..=i],
            NodeRef::Node(id) => &self.yields[self.node_index(id).expect("checked")],
        })
    }

    /// Proper dominance: `b` is reachable from `a` by one or more downward edges.
    pub fn dominates(&self, a: NodeRef, b: NodeRef) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        let NodeRef::Node(target) = a else {
            return Ok(false);
        };
        let mut cur = self.parent(b)?;
        while let Parent::Node(id) = cur {
            if id == target {
                return Ok(true);
            }
            cur = self.node(id).expect("parents are validated").parent;
        }
        Ok(false)
    }
}

fn compute_yield(i: usize, nodes: &[NonTerminal], children: &[Vec<NodeRef>], yields: &mut Vec<Option<Vec<usize>>>) {
    if yields[i].is_some() {
        return;
    }
    let mut out = Vec::new();
    for child in &children[i] {
        match *child {
            NodeRef::Token(t) => out.push(t),
            NodeRef::Node(id) => {
                let ci = nodes.binary_search_by_key(&id, |n| n.id).expect("child exists");
                compute_yield(ci, nodes, children, yields);
                out.extend_from_slice(yields[ci].as_ref().expect("computed"));
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    yields[i] = Some(out);
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn tok(index: usize, form: &str, parent: Parent) -> Token {
        Token {
            index,
            form: form.into(),
            pos: "X".into(),
            label: None,
            parent,
        }
    }

    pub(crate) fn nt(id: u32, category: &str, parent: Parent) -> NonTerminal {
        NonTerminal {
            id,
            category: category.into(),
            label: None,
            parent,
        }
    }

    /// t0..t9; n525 ⊃ {t3, t4, n517}; n517 ⊃ {t5..t8}; n530 ⊃ {t0..t2, n525}.
    pub(crate) fn synthetic() -> SentenceTree {
        use Parent::*;
        let tokens = (0..10)
            .map(|i| {
                let parent = match i {
                    0..=2 => Node(530),
                    3 | 4 => Node(525),
                    5..=8 => Node(517),
                    _ => Root,
                };
                tok(i, &format!("w{i}"), parent)
            })
            .collect();
        let nodes = vec![nt(517, "IPA", Node(525)), nt(525, "NP", Node(530)), nt(530, "S", Root)];
        SentenceTree::new(1, OriginRef::new("doc", 1, "en"), tokens, nodes).unwrap()
    }

    #[test]
    fn token_yield_is_singleton() {
        let t = synthetic();
        assert_eq!(t.yield_of(NodeRef::Token(4)).unwrap(), &[4]);
    }

    #[test]
    fn nested_yield() {
        let t = synthetic();
        assert_eq!(t.yield_of(NodeRef::Node(525)).unwrap(), &[3, 4, 5, 6, 7, 8]);
        assert_eq!(t.yield_of(NodeRef::Node(530)).unwrap(), &[0, 1, 2, 3, 4, 5, 6, 7, 8]);
    }

    #[test]
    fn dominance() {
        let t = synthetic();
        assert!(t.dominates(NodeRef::Node(525), NodeRef::Node(517)).unwrap());
        assert!(t.dominates(NodeRef::Node(530), NodeRef::Token(6)).unwrap());
        assert!(!t.dominates(NodeRef::Node(517), NodeRef::Node(525)).unwrap());
        assert!(!t.dominates(NodeRef::Node(525), NodeRef::Node(525)).unwrap());
        assert!(!t.dominates(NodeRef::Token(4), NodeRef::Node(517)).unwrap());
        assert!(!t.dominates(NodeRef::Token(4), NodeRef::Token(4)).unwrap());
    }

    #[test]
    fn unknown_nodes_are_errors() {
        let t = synthetic();
        assert!(matches!(t.yield_of(NodeRef::Node(999)), Err(Error::UnknownNode(_))));
        assert!(matches!(t.yield_of(NodeRef::Token(10)), Err(Error::UnknownNode(_))));
        assert!(t.dominates(NodeRef::Node(525), NodeRef::Node(600)).is_err());
    }

    #[test]
    fn rejects_cycles() {
        use Parent::*;
        let tokens = vec![tok(0, "a", Node(500))];
        let nodes = vec![nt(500, "X", Node(501)), nt(501, "Y", Node(500))];
        let err = SentenceTree::new(3, OriginRef::new("d", 1, "en"), tokens, nodes).unwrap_err();
        assert!(matches!(err, Error::Invariant { sid: 3, .. }), "{err}");
        assert!(err.to_string().contains("cycle"));
    }

    #[test]
    fn rejects_empty_yield_and_low_ids() {
        use Parent::*;
        let o = || OriginRef::new("d", 1, "en");
        let err = SentenceTree::new(1, o(), vec![tok(0, "a", Root)], vec![nt(500, "X", Root)]).unwrap_err();
        assert!(err.to_string().contains("dominates no token"));
        let err = SentenceTree::new(1, o(), vec![tok(0, "a", Node(499))], vec![]).unwrap_err();
        assert!(err.to_string().contains("below 500"));
        let err = SentenceTree::new(
            1,
            o(),
            vec![tok(0, "a", Node(501))],
            vec![nt(501, "X", Root), nt(500, "Y", Root)],
        )
        .unwrap_err();
        assert!(err.to_string().contains("ascending"));
    }

    #[test]
    fn discontinuous_yield() {
        use Parent::*;
        let tokens = vec![tok(0, "a", Node(500)), tok(1, "b", Root), tok(2, "c", Node(500))];
        let t = SentenceTree::new(1, OriginRef::new("d", 1, "en"), tokens, vec![nt(500, "X", Root)]).unwrap();
        assert_eq!(t.yield_of(NodeRef::Node(500)).unwrap(), &[0, 2]);
        assert_eq!(
            t.roots().collect::<Vec<_>>(),
            vec![NodeRef::Token(1), NodeRef::Node(500)]
        );
    }

    #[test]
    fn node_ref_syntax() {
        assert_eq!("t4".parse::<NodeRef>().unwrap(), NodeRef::Token(4));
        assert_eq!("n508".parse::<NodeRef>().unwrap(), NodeRef::Node(508));
        for bad in ["", "t", "x4", "n-1", "n5x", "T4"] {
            assert!(bad.parse::<NodeRef>().is_err(), "{bad}");
        }
        assert_eq!(NodeRef::Node(508).to_string(), "n508");
    }

    #[test]
    fn origin_syntax() {
        let o: OriginRef = "de-en/ep-00-02-15.al:326:en".parse().unwrap();
        assert_eq!(o, OriginRef::new("de-en/ep-00-02-15.al", 326, "en"));
        assert_eq!(o.to_string(), "de-en/ep-00-02-15.al:326:en");
        assert!("doc:0:en".parse::<OriginRef>().is_err());
        assert!("doc:1".parse::<OriginRef>().is_err());
    }
}
