use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// Which closed tag set a manifest `VOCAB` line extends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VocabKind {
    Class,
    Binding,
    Align,
}

impl VocabKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VocabKind::Class => "class",
            VocabKind::Binding => "binding",
            VocabKind::Align => "align",
        }
    }
}

impl fmt::Display for VocabKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for VocabKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "class" => Ok(VocabKind::Class),
            "binding" => Ok(VocabKind::Binding),
            "align" => Ok(VocabKind::Align),
            _ => Err(format!("unknown vocabulary `{s}` (expected class, binding or align)")),
        }
    }
}

/// Predicate classes, binding tags and alignment tags in force for a set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vocab {
    classes: BTreeSet<String>,
    binding_tags: BTreeSet<String>,
    align_tags: BTreeSet<String>,
    // Additions beyond the defaults, in declaration order.
    extensions: Vec<(VocabKind, String)>,
}

pub const DEFAULT_CLASSES: [&str; 3] = ["V", "N", "A"];
pub const DEFAULT_BINDING_TAGS: [&str; 3] = ["pv", "oc", "oc-case"];
pub const DEFAULT_ALIGN_TAGS: [&str; 2] = ["incomp", "abs-opp"];

impl Default for Vocab {
    fn default() -> Self {
        let set = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect();
        Vocab {
            classes: set(&DEFAULT_CLASSES),
            binding_tags: set(&DEFAULT_BINDING_TAGS),
            align_tags: set(&DEFAULT_ALIGN_TAGS),
            extensions: Vec::new(),
        }
    }
}

impl Vocab {
    pub fn extend(&mut self, kind: VocabKind, tag: impl Into<String>) {
        let tag = tag.into();
        let set = match kind {
            VocabKind::Class => &mut self.classes,
            VocabKind::Binding => &mut self.binding_tags,
            VocabKind::Align => &mut self.align_tags,
        };
        if set.insert(tag.clone()) {
            self.extensions.push((kind, tag));
        }
    }

    pub fn contains(&self, kind: VocabKind, tag: &str) -> bool {
        match kind {
            VocabKind::Class => self.classes.contains(tag),
            VocabKind::Binding => self.binding_tags.contains(tag),
            VocabKind::Align => self.align_tags.contains(tag),
        }
    }

    pub fn extensions(&self) -> &[(VocabKind, String)] {
        &self.extensions
    }
}
