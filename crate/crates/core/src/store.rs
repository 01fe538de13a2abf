//! Treebank stores, parallel sets and the manifest that declares them.
//!
//! A treebank store holds one language's trees (FTB) and annotations (PAA).
//! A parallel set fuses two stores of different languages with one alignment
//! file (ALN). The manifest lists sets line by line:
//!
//! ```text
//! SET <name> A=<lang>:<ftb>:<paa> B=<lang>:<ftb>:<paa> ALIGN=<aln>
//! VOCAB <class|binding|align> += <tag>
//! ```
//!
//! Paths are relative to the manifest. Blank lines and `#` comments are
//! ignored.

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::align::{self, AlignmentStore, DanglingReport, PredicateAlignment, SentencePair};
use crate::annot::{self, Inventories, Lexicon, SentenceAnnotation, ValidationConfig};
use crate::diag::{self, Diagnostic, Rule};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::ftb;
use crate::paa;
use crate::tree::{is_word, OriginRef, Parent, SentenceTree, Token};
use crate::vocab::{Vocab, VocabKind};

pub const MANIFEST_FILE: &str = "manifest.fuse";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreebankStore {
    lang: String,
    trees: Vec<SentenceTree>,
    annotations: Vec<SentenceAnnotation>,
    lexicon: Lexicon,
    inventories: Inventories,
}

impl TreebankStore {
    pub fn new(
        lang: impl Into<String>,
        trees: Vec<SentenceTree>,
        annotations: Vec<SentenceAnnotation>,
    ) -> Result<Self> {
        let lang = lang.into();
        if !is_word(&lang) || lang.contains(':') {
            return Err(Error::Dangling(format!("invalid language code `{lang}`")));
        }
        let mut sids = BTreeSet::new();
        let mut origins = HashMap::new();
        for t in &trees {
            if t.origin().lang != lang {
                return Err(Error::invariant(
                    t.sid(),
                    format!("sentence {} is not in language {lang}", t.origin()),
                ));
            }
            if !sids.insert(t.sid()) {
                return Err(Error::invariant(t.sid(), "duplicate sid"));
            }
            if origins.insert(t.origin().clone(), t.sid()).is_some() {
                return Err(Error::invariant(
                    t.sid(),
                    format!("sentence {} occurs twice", t.origin()),
                ));
            }
        }
        for sa in &annotations {
            if origins.get(&sa.origin) != Some(&sa.sid) {
                return Err(Error::Dangling(format!(
                    "annotated sentence {} (sid {}) has no tree",
                    sa.origin, sa.sid
                )));
            }
        }
        let lexicon = Lexicon::build(&annotations)?;
        let inventories = Inventories::build(&annotations);
        Ok(TreebankStore {
            lang,
            trees,
            annotations,
            lexicon,
            inventories,
        })
    }

    /// Parses a store from its FTB and PAA texts.
    pub fn parse(lang: &str, ftb_text: &str, paa_text: &str, vocab: &Vocab) -> Result<Self> {
        let trees = ftb::parse_treebank(ftb_text)?;
        let annotations = paa::parse_paa(paa_text, lang, &trees, vocab)?;
        TreebankStore::new(lang, trees, annotations)
    }

    fn read(lang: &str, ftb_path: &Path, paa_path: &Path, vocab: &Vocab) -> Result<Self> {
        let ftb_text = read_file(ftb_path)?;
        let paa_text = read_file(paa_path)?;
        let trees = ftb::parse_treebank(&ftb_text).map_err(|e| e.in_file(ftb_path))?;
        let annotations = paa::parse_paa(&paa_text, lang, &trees, vocab).map_err(|e| e.in_file(paa_path))?;
        TreebankStore::new(lang, trees, annotations).map_err(|e| e.in_file(ftb_path))
    }

    pub fn lang(&self) -> &str {
        &self.lang
    }

    pub fn trees(&self) -> &[SentenceTree] {
        &self.trees
    }

    pub fn annotations(&self) -> &[SentenceAnnotation] {
        &self.annotations
    }

    pub fn tree(&self, sid: u32) -> Option<&SentenceTree> {
        // Trees are usually stored in sid order; fall back to a scan otherwise.
        match self.trees.binary_search_by_key(&sid, |t| t.sid()) {
            Ok(i) => Some(&self.trees[i]),
            Err(_) => self.trees.iter().find(|t| t.sid() == sid),
        }
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn inventories(&self) -> &Inventories {
        &self.inventories
    }

    /// Roles used across the group; empty for an unknown group.
    pub fn role_inventory(&self, group: &str) -> BTreeSet<String> {
        self.inventories.roles(group)
    }

    pub fn ftb_text(&self) -> String {
        ftb::write_treebank(&self.trees)
    }

    pub fn paa_text(&self) -> String {
        paa::write_paa(&self.annotations)
    }

    pub fn validate(&self, vocab: &Vocab, config: ValidationConfig, exec: Exec) -> Vec<Diagnostic> {
        annot::validate_annotation(&self.lang, &self.trees, &self.annotations, vocab, config, exec)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StoreDecl {
    pub lang: String,
    pub ftb: PathBuf,
    pub paa: PathBuf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetDecl {
    pub name: String,
    pub a: StoreDecl,
    pub b: StoreDecl,
    pub align: PathBuf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifest {
    pub sets: Vec<SetDecl>,
    pub vocab: Vocab,
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Self> {
        let mut sets: Vec<SetDecl> = Vec::new();
        let mut vocab = Vocab::default();
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            let perr = |m: String| Error::parse(lineno, m);
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            match fields[..] {
                ["SET", name, a, b, aln] => {
                    if !is_word(name) {
                        return Err(perr(format!("malformed set name `{name}`")));
                    }
                    if sets.iter().any(|s| s.name == name) {
                        return Err(Error::Duplicate(format!("line {lineno}: set `{name}`")));
                    }
                    let a = store_decl(a, "A=", lineno)?;
                    let b = store_decl(b, "B=", lineno)?;
                    if a.lang == b.lang {
                        return Err(perr(format!("both stores of set `{name}` are in language {}", a.lang)));
                    }
                    let align = aln
                        .strip_prefix("ALIGN=")
                        .filter(|p| !p.is_empty())
                        .ok_or_else(|| perr(format!("expected `ALIGN=<path>`, found `{aln}`")))?;
                    sets.push(SetDecl {
                        name: name.to_string(),
                        a,
                        b,
                        align: PathBuf::from(align),
                    });
                }
                ["VOCAB", which, "+=", tag] => {
                    let kind: VocabKind = which.parse().map_err(perr)?;
                    vocab.extend(kind, tag);
                }
                _ => return Err(perr(format!("malformed manifest line `{trimmed}`"))),
            }
        }
        Ok(Manifest { sets, vocab })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = read_file(path)?;
        let mut m = Manifest::parse(&text).map_err(|e| e.in_file(path))?;
        let base = path.parent().unwrap_or(Path::new(""));
        for s in &mut m.sets {
            for p in [&mut s.a.ftb, &mut s.a.paa, &mut s.b.ftb, &mut s.b.paa, &mut s.align] {
                *p = base.join(&*p);
            }
        }
        Ok(m)
    }

    pub fn set(&self, name: &str) -> Result<&SetDecl> {
        self.sets
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::UnknownSet(name.to_string()))
    }

    pub fn write(&self) -> String {
        let mut out = String::new();
        for (kind, tag) in self.vocab.extensions() {
            out.push_str(&format!("VOCAB {kind} += {tag}\n"));
        }
        for s in &self.sets {
            let store = |d: &StoreDecl| format!("{}:{}:{}", d.lang, d.ftb.display(), d.paa.display());
            out.push_str(&format!(
                "SET {} A={} B={} ALIGN={}\n",
                s.name,
                store(&s.a),
                store(&s.b),
                s.align.display()
            ));
        }
        out
    }
}

fn store_decl(field: &str, prefix: &str, lineno: usize) -> Result<StoreDecl> {
    let bad = || {
        Error::parse(
            lineno,
            format!("expected `{prefix}<lang>:<ftb>:<paa>`, found `{field}`"),
        )
    };
    let spec = field.strip_prefix(prefix).ok_or_else(bad)?;
    let mut parts = spec.splitn(3, ':');
    match (parts.next(), parts.next(), parts.next()) {
        (Some(lang), Some(ftb), Some(paa)) if !lang.is_empty() && !ftb.is_empty() && !paa.is_empty() => Ok(StoreDecl {
            lang: lang.to_string(),
            ftb: PathBuf::from(ftb),
            paa: PathBuf::from(paa),
        }),
        _ => Err(bad()),
    }
}

/// Two monolingual stores fused by one alignment store.
#[derive(Clone, Debug)]
pub struct ParallelSet {
    pub name: String,
    store_a: Arc<TreebankStore>,
    store_b: Arc<TreebankStore>,
    alignment: AlignmentStore,
    registry: BTreeSet<SentencePair>,
    vocab: Vocab,
    config: ValidationConfig,
    source: Option<SetDecl>,
}

impl ParallelSet {
    pub fn new(
        name: impl Into<String>,
        store_a: Arc<TreebankStore>,
        store_b: Arc<TreebankStore>,
        alignment: AlignmentStore,
        vocab: Vocab,
    ) -> Result<Self> {
        let name = name.into();
        if store_a.lang() == store_b.lang() {
            return Err(Error::Dangling(format!(
                "set `{name}`: both stores are in language {}",
                store_a.lang()
            )));
        }
        if (alignment.lang_a.as_str(), alignment.lang_b.as_str()) != (store_a.lang(), store_b.lang()) {
            return Err(Error::Dangling(format!(
                "set `{name}`: alignment languages {} {} do not match stores {} {}",
                alignment.lang_a,
                alignment.lang_b,
                store_a.lang(),
                store_b.lang()
            )));
        }
        let registry = derive_registry(&store_a, &store_b);
        Ok(ParallelSet {
            name,
            store_a,
            store_b,
            alignment,
            registry,
            vocab,
            config: ValidationConfig::default(),
            source: None,
        })
    }

    pub fn store_a(&self) -> &TreebankStore {
        &self.store_a
    }

    pub fn store_b(&self) -> &TreebankStore {
        &self.store_b
    }

    pub fn shared_store_a(&self) -> &Arc<TreebankStore> {
        &self.store_a
    }

    pub fn shared_store_b(&self) -> &Arc<TreebankStore> {
        &self.store_b
    }

    pub fn stores(&self) -> [&TreebankStore; 2] {
        [&self.store_a, &self.store_b]
    }

    pub fn alignment(&self) -> &AlignmentStore {
        &self.alignment
    }

    pub fn registry(&self) -> &BTreeSet<SentencePair> {
        &self.registry
    }

    pub fn vocab(&self) -> &Vocab {
        &self.vocab
    }

    pub fn source(&self) -> Option<&SetDecl> {
        self.source.as_ref()
    }

    pub fn with_config(mut self, config: ValidationConfig) -> Self {
        self.config = config;
        self
    }

    pub fn add_alignment(&mut self, pair: SentencePair, alignment: PredicateAlignment) {
        self.alignment.add(pair, alignment);
    }

    /// Annotation diagnostics for both stores, then alignment diagnostics.
    pub fn diagnostics(&self, exec: Exec) -> Vec<Diagnostic> {
        let (mut a, b) = exec.join(
            || self.store_a.validate(&self.vocab, self.config, exec),
            || self.store_b.validate(&self.vocab, self.config, exec),
        );
        a.extend(b);
        a.extend(self.alignment_diagnostics());
        a
    }

    pub fn alignment_diagnostics(&self) -> Vec<Diagnostic> {
        align::validate_alignment(
            &self.alignment,
            self.store_a.annotations(),
            self.store_b.annotations(),
            &self.registry,
            &self.vocab,
        )
    }

    pub fn dangling_report(&self) -> DanglingReport {
        align::dangling_report(&self.alignment, self.store_a.annotations(), self.store_b.annotations())
    }

    /// Parses an alignment file for this set, failing on the first
    /// reference, duplicate, tag or registry problem.
    pub fn parse_alignment(&self, text: &str) -> Result<AlignmentStore> {
        let store = align::parse_aln(text, self.store_a.lang(), self.store_b.lang())?;
        let diags = align::validate_alignment(
            &store,
            self.store_a.annotations(),
            self.store_b.annotations(),
            &self.registry,
            &self.vocab,
        );
        if let Some(d) = diags.into_iter().find(Diagnostic::is_error) {
            let at = d.location.to_string();
            return Err(match d.rule {
                Rule::DupAlign => Error::Duplicate(format!("alignment at {at}")),
                Rule::UnknownTag => Error::UnknownTag {
                    tag: d.message,
                    vocab: "align",
                },
                Rule::PairNotRegistered => Error::PairNotRegistered(at),
                _ => Error::Dangling(format!("{at}: {}", d.message)),
            });
        }
        Ok(store)
    }

    /// The mirror image: store B becomes store A and every link is flipped.
    pub fn reversed(&self) -> Self {
        ParallelSet {
            name: self.name.clone(),
            store_a: Arc::clone(&self.store_b),
            store_b: Arc::clone(&self.store_a),
            alignment: self.alignment.reversed(),
            registry: self.registry.iter().map(SentencePair::reversed).collect(),
            vocab: self.vocab.clone(),
            config: self.config,
            source: None,
        }
    }

    /// Canonical text of every file in the standard directory layout.
    pub fn files(&self) -> Vec<(PathBuf, String)> {
        let (a, b) = (self.store_a.lang(), self.store_b.lang());
        let decl = SetDecl {
            name: self.name.clone(),
            a: StoreDecl {
                lang: a.to_string(),
                ftb: format!("{a}.ftb").into(),
                paa: format!("{a}.paa").into(),
            },
            b: StoreDecl {
                lang: b.to_string(),
                ftb: format!("{b}.ftb").into(),
                paa: format!("{b}.paa").into(),
            },
            align: format!("{a}-{b}.aln").into(),
        };
        let manifest = Manifest {
            sets: vec![decl.clone()],
            vocab: self.vocab.clone(),
        };
        vec![
            (decl.a.ftb, self.store_a.ftb_text()),
            (decl.a.paa, self.store_a.paa_text()),
            (decl.b.ftb, self.store_b.ftb_text()),
            (decl.b.paa, self.store_b.paa_text()),
            (decl.align, align::write_aln(&self.alignment)),
            (PathBuf::from(MANIFEST_FILE), manifest.write()),
        ]
    }
}

fn derive_registry(a: &TreebankStore, b: &TreebankStore) -> BTreeSet<SentencePair> {
    let in_b: BTreeSet<(&str, u32)> = b
        .trees()
        .iter()
        .map(|t| (t.origin().document.as_str(), t.origin().sentence_number))
        .collect();
    a.trees()
        .iter()
        .map(|t| t.origin())
        .filter(|o| in_b.contains(&(o.document.as_str(), o.sentence_number)))
        .map(|o| SentencePair::new(o.document.clone(), o.sentence_number, a.lang(), b.lang()))
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LoadOptions {
    /// Fail on any error-severity diagnostic instead of reporting it.
    pub strict: bool,
    pub exec: Exec,
    pub config: ValidationConfig,
}

/// A loaded set plus the diagnostics found while loading it.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub set: ParallelSet,
    pub diagnostics: Vec<Diagnostic>,
}

/// Loads one set from a manifest. Nothing is returned unless every file
/// parses and every cross-file reference resolves.
pub fn load_set(manifest_path: &Path, name: &str, opts: LoadOptions) -> Result<Loaded> {
    let manifest = Manifest::read(manifest_path)?;
    let decl = manifest.set(name)?;
    load_decl(decl, &manifest.vocab, opts, &mut HashMap::new())
}

/// Loads every set in a manifest. Sets naming the same store files share one
/// read-only store.
pub fn load_all(manifest_path: &Path, opts: LoadOptions) -> Result<Vec<Loaded>> {
    let manifest = Manifest::read(manifest_path)?;
    let mut cache = HashMap::new();
    manifest
        .sets
        .iter()
        .map(|d| load_decl(d, &manifest.vocab, opts, &mut cache))
        .collect()
}

type StoreCache = HashMap<StoreKey, Arc<TreebankStore>>;
type StoreKey = (String, PathBuf, PathBuf);

fn load_decl(decl: &SetDecl, vocab: &Vocab, opts: LoadOptions, cache: &mut StoreCache) -> Result<Loaded> {
    let key = |d: &StoreDecl| (d.lang.clone(), d.ftb.clone(), d.paa.clone());
    let load = |d: &StoreDecl, cache: &StoreCache| -> Result<Arc<TreebankStore>> {
        match cache.get(&key(d)) {
            Some(s) => Ok(Arc::clone(s)),
            None => TreebankStore::read(&d.lang, &d.ftb, &d.paa, vocab).map(Arc::new),
        }
    };
    let (a, b) = opts.exec.join(|| load(&decl.a, cache), || load(&decl.b, cache));
    let (a, b) = (a?, b?);
    let aln_text = read_file(&decl.align)?;
    let alignment = align::parse_aln(&aln_text, &decl.a.lang, &decl.b.lang).map_err(|e| e.in_file(&decl.align))?;
    cache.insert(key(&decl.a), Arc::clone(&a));
    cache.insert(key(&decl.b), Arc::clone(&b));

    let mut set = ParallelSet::new(&decl.name, a, b, alignment, vocab.clone())?.with_config(opts.config);
    set.source = Some(decl.clone());
    if let Some(d) = set
        .alignment_diagnostics()
        .into_iter()
        .find(|d| d.rule == Rule::DanglingRef)
    {
        return Err(Error::Dangling(format!("{}: {}", d.location, d.message)).in_file(&decl.align));
    }
    let diagnostics = set.diagnostics(opts.exec);
    if opts.strict && diag::error_count(&diagnostics) > 0 {
        return Err(Error::Strict { diagnostics });
    }
    Ok(Loaded { set, diagnostics })
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Writes the set in the standard layout under `dir` (created if missing).
/// Files are staged next to their targets and only renamed into place once
/// all of them were written, so a failure while writing leaves the targets untouched.
pub fn save_set(set: &ParallelSet, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let files: Vec<(PathBuf, String)> = set.files().into_iter().map(|(p, c)| (dir.join(p), c)).collect();
    write_atomically(&files)?;
    Ok(files.into_iter().map(|(p, _)| p).collect())
}

/// Rewrites a loaded set's own source files in canonical form. The manifest
/// is left untouched.
pub fn save_in_place(set: &ParallelSet) -> Result<Vec<PathBuf>> {
    let decl = set
        .source()
        .ok_or_else(|| Error::UnknownSet(format!("{} (not loaded from a manifest)", set.name)))?;
    let files = vec![
        (decl.a.ftb.clone(), set.store_a().ftb_text()),
        (decl.a.paa.clone(), set.store_a().paa_text()),
        (decl.b.ftb.clone(), set.store_b().ftb_text()),
        (decl.b.paa.clone(), set.store_b().paa_text()),
        (decl.align.clone(), align::write_aln(set.alignment())),
    ];
    write_atomically(&files)?;
    Ok(files.into_iter().map(|(p, _)| p).collect())
}

pub(crate) fn write_atomically(files: &[(PathBuf, String)]) -> Result<()> {
    if let Some((path, _)) = files.iter().find(|(p, _)| p.is_dir()) {
        return Err(Error::io(path, std::io::Error::other("target is a directory")));
    }
    let mut staged = Vec::with_capacity(files.len());
    for (path, content) in files {
        let dir = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p,
            _ => Path::new("."),
        };
        let mut tmp = tempfile::Builder::new()
            .prefix(".fuse-")
            .tempfile_in(dir)
            .map_err(|e| Error::io(dir, e))?;
        tmp.write_all(content.as_bytes())
            .map_err(|e| Error::io(tmp.path(), e))?;
        #[cfg(unix)]
        {
            use std::os::unix::fs::PermissionsExt;
            tmp.as_file()
                .set_permissions(fs::Permissions::from_mode(0o644))
                .map_err(|e| Error::io(tmp.path(), e))?;
        }
        staged.push((tmp, path));
    }
    for (tmp, path) in staged {
        tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    }
    Ok(())
}

/// Skeleton stores built from two line-aligned plain-text files.
#[derive(Clone, Debug)]
pub struct Ingested {
    pub pairs: Vec<SentencePair>,
    pub trees_a: Vec<SentenceTree>,
    pub trees_b: Vec<SentenceTree>,
}

impl Ingested {
    /// A set with the skeleton trees, no annotations and no alignments.
    pub fn into_set(self, name: &str) -> Result<ParallelSet> {
        let (lang_a, lang_b) = match self.pairs.first() {
            Some(p) => (p.lang_a.clone(), p.lang_b.clone()),
            None => return Err(Error::Dangling("nothing was ingested".into())),
        };
        let a = TreebankStore::new(&lang_a, self.trees_a, Vec::new())?;
        let b = TreebankStore::new(&lang_b, self.trees_b, Vec::new())?;
        let alignment = AlignmentStore::new(&lang_a, &lang_b);
        ParallelSet::new(name, Arc::new(a), Arc::new(b), alignment, Vocab::default())
    }
}

pub struct IngestSource<'a> {
    pub label: &'a str,
    pub text: &'a str,
    pub lang: &'a str,
}

/// Turns 1:1 line-aligned texts into sentence pairs and token-only trees.
/// Line `k` (1-based) becomes sentence number `first_number + k - 1`.
pub fn ingest_texts(a: IngestSource, b: IngestSource, document: &str, first_number: u32) -> Result<Ingested> {
    let lines_a: Vec<&str> = a.text.lines().collect();
    let lines_b: Vec<&str> = b.text.lines().collect();
    if lines_a.len() != lines_b.len() {
        return Err(Error::LineCountMismatch {
            left: a.label.to_string(),
            left_lines: lines_a.len(),
            right: b.label.to_string(),
            right_lines: lines_b.len(),
        });
    }
    if first_number == 0 {
        return Err(Error::Dangling("sentence numbers start at 1".into()));
    }
    let skeleton = |src: &IngestSource, lines: &[&str]| -> Result<Vec<SentenceTree>> {
        lines
            .iter()
            .enumerate()
            .map(|(i, line)| {
                let forms: Vec<&str> = line.split_whitespace().collect();
                if forms.is_empty() {
                    return Err(Error::EmptyLine {
                        path: src.label.to_string(),
                        line: i + 1,
                    });
                }
                if let Some(f) = forms.iter().find(|f| is_node_marker(f)) {
                    return Err(Error::parse(
                        i + 1,
                        format!("{}: token `{f}` collides with the node-line syntax", src.label),
                    ));
                }
                let tokens = forms
                    .iter()
                    .enumerate()
                    .map(|(index, form)| Token {
                        index,
                        form: form.to_string(),
                        pos: crate::tree::ABSENT.to_string(),
                        label: None,
                        parent: Parent::Root,
                    })
                    .collect();
                let number = first_number + i as u32;
                SentenceTree::new(
                    i as u32 + 1,
                    OriginRef::new(document, number, src.lang),
                    tokens,
                    Vec::new(),
                )
            })
            .collect()
    };
    let trees_a = skeleton(&a, &lines_a)?;
    let trees_b = skeleton(&b, &lines_b)?;
    let pairs = (0..lines_a.len())
        .map(|i| SentencePair::new(document, first_number + i as u32, a.lang, b.lang))
        .collect();
    Ok(Ingested {
        pairs,
        trees_a,
        trees_b,
    })
}

fn is_node_marker(form: &str) -> bool {
    form.strip_prefix('#')
        .is_some_and(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
}

pub fn ingest_pairs(
    path_a: &Path,
    path_b: &Path,
    document: &str,
    lang_a: &str,
    lang_b: &str,
    first_number: u32,
) -> Result<Ingested> {
    let text_a = read_file(path_a)?;
    let text_b = read_file(path_b)?;
    let label_a = path_a.display().to_string();
    let label_b = path_b.display().to_string();
    ingest_texts(
        IngestSource {
            label: &label_a,
            text: &text_a,
            lang: lang_a,
        },
        IngestSource {
            label: &label_b,
            text: &text_b,
            lang: lang_b,
        },
        document,
        first_number,
    )
}
