use std::collections::BTreeSet;
use std::error::Error as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fuse_core::analysis::{self, Filters};
use fuse_core::annot::ValidationConfig;
use fuse_core::diag::{self, Diagnostic, Severity};
use fuse_core::report::{self, Format};
use fuse_core::store::{self, LoadOptions, Loaded, Manifest, ParallelSet};
use fuse_core::{Error, Exec};

/// Parallel treebank toolkit: import, validate, query and cluster annotated
/// sentence pairs.
#[derive(Parser, Debug)]
#[command(name = "fuse", version)]
struct Cli {
    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Load a set and rewrite its files in canonical form.
    Import {
        #[command(flatten)]
        set: SetArgs,
        /// Exit 1 without writing if any error diagnostic is found.
        #[arg(long)]
        strict: bool,
        /// Write the standard layout into this directory instead of in place.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
    /// Print every diagnostic of a set.
    Validate {
        #[command(flatten)]
        set: SetArgs,
    },
    /// Run a read-only query against a set.
    Query {
        #[command(subcommand)]
        query: Query,
    },
    /// Derive predicate clusters from the translation graph.
    Cluster {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        min_count: u64,
        #[arg(long, value_delimiter = ',')]
        exclude_align_tags: Vec<String>,
        #[arg(long, value_enum, default_value_t = OutFormat::Tsv)]
        format: OutFormat,
    },
    /// Build skeleton stores from two line-aligned plain-text files.
    Ingest {
        #[arg(long)]
        src: PathBuf,
        #[arg(long)]
        tgt: PathBuf,
        #[arg(long)]
        doc: String,
        #[arg(long)]
        lang_a: String,
        #[arg(long)]
        lang_b: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        force: bool,
        #[arg(long, default_value_t = 1)]
        first_number: u32,
        /// Name of the set in the generated manifest.
        #[arg(long = "set", default_value = "main")]
        set_name: String,
    },
}

#[derive(Subcommand, Debug)]
enum Query {
    /// All realisations of one role across a predicate group.
    Realisations {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        group: String,
        #[arg(long)]
        role: String,
        #[arg(long)]
        lang: Option<String>,
        /// Skip arguments whose binding carries one of these tags.
        #[arg(long, value_delimiter = ',')]
        skip_tags: Vec<String>,
        /// Skip structures whose predicate binding carries one of these tags.
        #[arg(long, value_delimiter = ',')]
        skip_pred_tags: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        exclude_align_tags: Vec<String>,
        #[arg(long, value_enum, default_value_t = OutFormat::Tsv)]
        format: OutFormat,
    },
    /// Argument structure of each predicate in a group.
    Frames {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        group: String,
        #[arg(long)]
        lang: Option<String>,
        #[arg(long, value_enum, default_value_t = OutFormat::Tsv)]
        format: OutFormat,
    },
    /// Alignments carrying a tag.
    Aligntag {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        tag: String,
        #[arg(long, value_enum, default_value_t = OutFormat::Tsv)]
        format: OutFormat,
    },
    /// Corpus counts per language and for the whole set.
    Stats {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, value_enum, default_value_t = OutFormat::Tsv)]
        format: OutFormat,
    },
}

#[derive(Args, Debug)]
struct SetArgs {
    #[arg(long, env = "FUSE_MANIFEST")]
    manifest: PathBuf,
    /// Set name; may be omitted when the manifest declares exactly one.
    #[arg(long)]
    set: Option<String>,
    #[arg(long, value_enum, default_value_t = Level::Error)]
    recursion: Level,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Level {
    Warning,
    Error,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Tsv,
    Text,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Tsv => Format::Tsv,
            OutFormat::Text => Format::Text,
        }
    }
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    match run(cli.command, exec) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            report_error(&e);
            ExitCode::from(if matches!(e, Error::Strict { .. }) { 1 } else { 2 })
        }
    }
}

fn report_error(e: &Error) {
    if let Error::Strict { diagnostics } = e {
        print_diagnostics(diagnostics);
    }
    let mut msg = e.to_string();
    let mut source = e.source();
    while let Some(s) = source {
        // InFile and Io already embed their source in the message.
        if !msg.ends_with(&s.to_string()) {
            msg.push_str(&format!(": {s}"));
        }
        source = s.source();
    }
    eprintln!("error: {msg}");
}

fn print_diagnostics(diags: &[Diagnostic]) {
    let mut err = std::io::stderr().lock();
    for d in diags {
        let _ = writeln!(err, "{d}");
    }
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
}

fn load(args: &SetArgs, strict: bool, exec: Exec) -> Result<Loaded, Failure> {
    let name = match &args.set {
        Some(n) => n.clone(),
        None => {
            let manifest = Manifest::read(&args.manifest)?;
            match manifest.sets.as_slice() {
                [one] => one.name.clone(),
                sets => {
                    return Err(Failure::Usage(format!(
                        "--set is required: the manifest declares {} sets",
                        sets.len()
                    )))
                }
            }
        }
    };
    let config = ValidationConfig {
        recursion: match args.recursion {
            Level::Warning => Severity::Warning,
            Level::Error => Severity::Error,
        },
    };
    Ok(store::load_set(
        &args.manifest,
        &name,
        LoadOptions { strict, exec, config },
    )?)
}

/// Loads a set for a read-only command, reporting diagnostics on stderr.
fn load_quiet(args: &SetArgs, exec: Exec) -> Result<ParallelSet, Failure> {
    let loaded = load(args, false, exec)?;
    print_diagnostics(&loaded.diagnostics);
    Ok(loaded.set)
}

fn refuse_overwrite(set: &ParallelSet, dir: &Path, force: bool) -> Result<(), Failure> {
    if force {
        return Ok(());
    }
    match set.files().into_iter().map(|(p, _)| dir.join(p)).find(|p| p.exists()) {
        Some(p) => Err(Error::WouldOverwrite(p).into()),
        None => Ok(()),
    }
}

fn tags(v: Vec<String>) -> BTreeSet<String> {
    v.into_iter().filter(|t| !t.is_empty()).collect()
}

fn run(command: Command, exec: Exec) -> Result<u8, Failure> {
    match command {
        Command::Import {
            set,
            strict,
            out,
            force,
        } => {
            let loaded = load(&set, strict, exec)?;
            print_diagnostics(&loaded.diagnostics);
            let written = match out {
                Some(dir) => {
                    refuse_overwrite(&loaded.set, &dir, force)?;
                    store::save_set(&loaded.set, &dir)?
                }
                None => store::save_in_place(&loaded.set)?,
            };
            eprintln!("wrote {} file(s)", written.len());
            Ok(0)
        }
        Command::Validate { set } => {
            let loaded = load(&set, false, exec)?;
            print_diagnostics(&loaded.diagnostics);
            let errors = diag::error_count(&loaded.diagnostics);
            let warnings = loaded.diagnostics.len() - errors;
            eprintln!("{errors} error(s), {warnings} warning(s)");
            Ok(u8::from(errors > 0))
        }
        Command::Query { query } => {
            let text = match query {
                Query::Realisations {
                    set,
                    group,
                    role,
                    lang,
                    skip_tags,
                    skip_pred_tags,
                    exclude_align_tags,
                    format,
                } => {
                    let s = load_quiet(&set, exec)?;
                    let filters = Filters {
                        lang,
                        skip_binding_tags: tags(skip_tags),
                        skip_pred_tags: tags(skip_pred_tags),
                        skip_align_tags: tags(exclude_align_tags),
                    };
                    report::realisations(
                        &analysis::realisations(&s, &group, &role, &filters, exec),
                        format.into(),
                    )
                }
                Query::Frames {
                    set,
                    group,
                    lang,
                    format,
                } => {
                    let s = load_quiet(&set, exec)?;
                    report::frames(&analysis::frames(&s, lang.as_deref(), &group), format.into())
                }
                Query::Aligntag { set, tag, format } => {
                    let s = load_quiet(&set, exec)?;
                    report::tag_hits(&analysis::find_by_align_tag(&s, &tag), format.into())
                }
                Query::Stats { set, format } => {
                    let s = load_quiet(&set, exec)?;
                    report::stats(&analysis::stats(&s), format.into())
                }
            };
            emit(&text);
            Ok(0)
        }
        Command::Cluster {
            set,
            min_count,
            exclude_align_tags,
            format,
        } => {
            let s = load_quiet(&set, exec)?;
            let graph = analysis::build_graph(&s, &tags(exclude_align_tags));
            let min = usize::try_from(min_count).unwrap_or(usize::MAX);
            emit(&report::clusters(
                &analysis::derive_clusters(&graph, min),
                format.into(),
            ));
            Ok(0)
        }
        Command::Ingest {
            src,
            tgt,
            doc,
            lang_a,
            lang_b,
            out,
            force,
            first_number,
            set_name,
        } => {
            let ingested = store::ingest_pairs(&src, &tgt, &doc, &lang_a, &lang_b, first_number)?;
            let pairs = ingested.pairs.len();
            let set = ingested.into_set(&set_name)?;
            refuse_overwrite(&set, &out, force)?;
            store::save_set(&set, &out)?;
            eprintln!("ingested {pairs} sentence pair(s) into {}", out.display());
            Ok(0)
        }
    }
}
