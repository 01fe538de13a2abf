use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;

use fuse_core::align::AlignmentStore;
use fuse_core::analysis::{self, build_graph, derive_clusters, Filters, Level, PredKey};
use fuse_core::store::{self, LoadOptions, ParallelSet, TreebankStore, MANIFEST_FILE};
use fuse_core::tree::NodeRef;
use fuse_core::vocab::Vocab;
use fuse_core::Exec;

fn set(name: &str) -> ParallelSet {
    let m = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .join(MANIFEST_FILE);
    store::load_set(&m, name, LoadOptions::default()).unwrap().set
}

fn tags(t: &[&str]) -> BTreeSet<String> {
    t.iter().map(|s| s.to_string()).collect()
}

fn count(set: &ParallelSet, group: &str, role: &str, f: &Filters) -> usize {
    analysis::realisations(set, group, role, f, Exec::default()).len()
}

#[test]
fn direct_object_and_genitive_attribute() {
    let recs = analysis::realisations(
        &set("nominate"),
        "NOMINATE-G",
        "ENT_NOMINATED",
        &Filters::default(),
        Exec::default(),
    );
    let got: Vec<_> = recs
        .iter()
        .map(|r| {
            (
                r.lang.as_str(),
                r.nodes.clone(),
                r.categories.clone(),
                r.functions.clone(),
            )
        })
        .collect();
    assert_eq!(
        got,
        vec![
            (
                "de",
                vec![NodeRef::Node(505)],
                vec!["NP".to_string()],
                vec!["AG".to_string()]
            ),
            (
                "en",
                vec![NodeRef::Node(508)],
                vec!["NP".to_string()],
                vec!["OD".to_string()]
            ),
        ]
    );
    assert_eq!(recs[1].words.join(" "), "a member of the European Commission");
}

#[test]
fn language_filter() {
    let f = Filters {
        lang: Some("en".into()),
        ..Filters::default()
    };
    assert_eq!(count(&set("nominate"), "NOMINATE-G", "ENT_NOMINATED", &f), 1);
    assert_eq!(count(&set("nominate"), "NOMINATE-G", "NOBODY", &Filters::default()), 0);
    assert_eq!(count(&set("nominate"), "NO-G", "ENT_NOMINATED", &Filters::default()), 0);
}

#[test]
fn excluded_participle_clause() {
    let recs = analysis::realisations(
        &set("raise"),
        "RAISE-G",
        "ENT_RAISED",
        &Filters::default(),
        Exec::default(),
    );
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0].span, vec![3, 4]);
}

#[test]
fn object_control_filters() {
    let s = set("propose");
    assert_eq!(count(&s, "PROPOSE-G", "PROPOSAL", &Filters::default()), 1);
    let skip_pred = Filters {
        skip_pred_tags: tags(&["oc"]),
        ..Filters::default()
    };
    assert_eq!(count(&s, "PROPOSE-G", "PROPOSAL", &skip_pred), 0);
    assert_eq!(count(&s, "PROPOSE-G", "PROPOSER", &skip_pred), 0);
    let skip_arg = Filters {
        skip_binding_tags: tags(&["oc-case"]),
        ..Filters::default()
    };
    assert_eq!(count(&s, "PROPOSE-G", "PROPOSER", &skip_arg), 0);
    assert_eq!(count(&s, "PROPOSE-G", "PROPOSAL", &skip_arg), 1);
}

#[test]
fn alignment_tag_filter() {
    let s = set("divergence");
    let skip = Filters {
        skip_align_tags: tags(&["incomp"]),
        ..Filters::default()
    };
    assert_eq!(count(&s, "GIVE-G", "GIVER", &Filters::default()), 1);
    assert_eq!(count(&s, "GIVE-G", "GIVER", &skip), 0);
    assert_eq!(count(&s, "GIVE-G", "RECIPIENT", &skip), 1);
    let opp = Filters {
        skip_align_tags: tags(&["abs-opp"]),
        ..Filters::default()
    };
    assert_eq!(count(&s, "ANWENDBAR-G", "DOMAIN", &opp), 0);
}

const NOMINATION_FTB: &str = "\
#BOS 1 d:1:en
they\tPPER\tSB\t0
nominate\tVV\tHD\t0
her\tPPER\tOA\t0
#EOS 1
#BOS 2 d:2:en
her\tPPOSAT\tNK\t0
nomination\tNN\tNK\t0
#EOS 2
#BOS 3 d:3:en
nominate\tVV\tHD\t0
#EOS 3
";

const NOMINATION_PAA: &str = "\
#SENT d:1:en
PRED P1 name=NOMINATE dis=1 class=V group=NOMINATE-G
PBIND P1 nodes=t1 excl=- tags=-
ARG P1 A1 role=NOMINATOR
ABIND P1 A1 nodes=t0 excl=- tags=-
ARG P1 A2 role=ENT_NOMINATED
ABIND P1 A2 nodes=t2 excl=- tags=-
#END
#SENT d:2:en
PRED P1 name=NOMINATION dis=1 class=N group=NOMINATE-G
PBIND P1 nodes=t1 excl=- tags=-
ARG P1 A1 role=ENT_NOMINATED
ABIND P1 A1 nodes=t0 excl=- tags=-
#END
#SENT d:3:en
PRED P1 name=NOMINATE dis=1 class=V group=NOMINATE-G
PBIND P1 nodes=t0 excl=- tags=-
ARG P1 A1 role=ENT_NOMINATED
ABIND P1 A1 nodes=t0 excl=- tags=-
#END
";

fn monolingual(ftb: &str, paa: &str) -> ParallelSet {
    let vocab = Vocab::default();
    let a = TreebankStore::parse("en", ftb, paa, &vocab).unwrap();
    let b = TreebankStore::new("de", Vec::new(), Vec::new()).unwrap();
    ParallelSet::new("mono", Arc::new(a), Arc::new(b), AlignmentStore::new("en", "de"), vocab).unwrap()
}

#[test]
fn frames_by_class() {
    let s = monolingual(NOMINATION_FTB, NOMINATION_PAA);
    let f = analysis::frames(&s, Some("en"), "NOMINATE-G");
    assert_eq!(f.len(), 2);
    assert_eq!((f[0].name.as_str(), f[0].class.as_str()), ("NOMINATION", "N"));
    assert_eq!((f[1].name.as_str(), f[1].class.as_str()), ("NOMINATE", "V"));
    assert!(f.iter().all(|x| x.roles.contains("ENT_NOMINATED")));
    assert_eq!(f[1].occurrences, 2);
    assert_eq!(f[1].arg_counts, BTreeMap::from([(1, 1), (2, 1)]));
    assert!(analysis::frames(&s, None, "EMPTY-G").is_empty());
}

#[test]
fn frame_argument_distribution() {
    let f = analysis::frames(&set("buy"), Some("de"), "KAUFEN-G");
    assert_eq!(f.len(), 1);
    assert_eq!(f[0].arg_counts, BTreeMap::from([(2, 3)]));
    let s = monolingual(
        "#BOS 1 d:1:en\na\tX\t--\t0\nb\tX\t--\t0\n#EOS 1\n#BOS 2 d:2:en\na\tX\t--\t0\nb\tX\t--\t0\n#EOS 2\n#BOS 3 d:3:en\na\tX\t--\t0\nb\tX\t--\t0\n#EOS 3\n",
        "#SENT d:1:en\nPRED P1 name=GO dis=1 class=V group=GO-G\nPBIND P1 nodes=t0 excl=- tags=-\nARG P1 A1 role=GOER\nABIND P1 A1 nodes=t1 excl=- tags=-\n#END\n\
#SENT d:2:en\nPRED P1 name=GO dis=1 class=V group=GO-G\nPBIND P1 nodes=t0 excl=- tags=-\nARG P1 A1 role=GOER\nABIND P1 A1 nodes=t1 excl=- tags=-\nARG P1 A2 role=GOAL\nABIND P1 A2 nodes=t0 excl=- tags=-\n#END\n\
#SENT d:3:en\nPRED P1 name=GO dis=1 class=V group=GO-G\nPBIND P1 nodes=t0 excl=- tags=-\nARG P1 A1 role=GOER\nABIND P1 A1 nodes=t1 excl=- tags=-\nARG P1 A2 role=GOAL\nABIND P1 A2 nodes=t1 excl=- tags=-\n#END\n",
    );
    let f = analysis::frames(&s, Some("en"), "GO-G");
    assert_eq!(f[0].arg_counts, BTreeMap::from([(1, 1), (2, 2)]));
}

#[test]
fn alignment_tag_search() {
    let s = set("divergence");
    let incomp = analysis::find_by_align_tag(&s, "incomp");
    assert_eq!(incomp.len(), 1);
    assert_eq!(incomp[0].level, Level::Argument);
    assert_eq!(incomp[0].predicate_a.as_deref(), Some("GIVE"));
    assert_eq!(incomp[0].roles, Some(("GIVER".into(), "MITGEBER".into())));
    let opp = analysis::find_by_align_tag(&s, "abs-opp");
    assert_eq!(opp.len(), 1);
    assert_eq!(opp[0].level, Level::Predicate);
    assert_eq!(opp[0].predicate_b.as_deref(), Some("ANWENDBAR"));
    assert!(analysis::find_by_align_tag(&s, "pv").is_empty());
}

#[test]
fn translation_graph_counts() {
    let g = build_graph(&set("buy"), &BTreeSet::new());
    assert_eq!(g.vertices.len(), 3);
    let counts: Vec<usize> = g.edges.values().copied().collect();
    assert_eq!(counts, vec![2, 1]);
    assert_eq!(
        g.edges[&(PredKey::new("en", "BUY", 1), PredKey::new("de", "KAUFEN", 1))],
        2
    );

    let empty = build_graph(&set("raise"), &BTreeSet::new());
    assert_eq!(empty.vertices.len(), 1);
    assert!(empty.edges.is_empty());

    let s = set("divergence");
    let all = build_graph(&s, &BTreeSet::new());
    let giver = |g: &analysis::TranslationGraph| {
        g.role_edges
            .keys()
            .any(|(a, b)| a.role == "GIVER" && b.role == "MITGEBER")
    };
    assert!(giver(&all));
    assert_eq!(
        all.role_edges
            .values()
            .filter(|e| e.tags.contains_key("incomp"))
            .count(),
        1
    );
    let g = build_graph(&s, &tags(&["incomp"]));
    assert!(!giver(&g));
    assert!(g
        .edges
        .contains_key(&(PredKey::new("en", "GIVE", 1), PredKey::new("de", "MITGEBEN", 1))));
    let g = build_graph(&s, &tags(&["abs-opp"]));
    assert_eq!(g.edges.len(), 1);
    assert!(g.role_edges.keys().all(|(a, _)| a.pred.name == "GIVE"));
}

#[test]
fn buy_and_purchase_cluster_with_kaufen() {
    let g = build_graph(&set("buy"), &BTreeSet::new());
    let c = derive_clusters(&g, 1);
    assert_eq!(c.len(), 1);
    let names: Vec<&str> = c[0].members.iter().map(|k| k.name.as_str()).collect();
    assert_eq!(names, ["KAUFEN", "BUY", "PURCHASE"]);
    let classes: Vec<Vec<&str>> = c[0]
        .role_classes
        .iter()
        .map(|cl| cl.iter().map(|r| r.role.as_str()).collect())
        .collect();
    assert_eq!(
        classes,
        vec![
            vec!["GEKAUFTES", "ENT_BOUGHT", "ENT_PURCHASED"],
            vec!["KAEUFER", "BUYER", "PURCHASER"]
        ]
    );
    assert!(derive_clusters(&g, 3).is_empty());
}

#[test]
fn stats_and_dangling() {
    let s = analysis::stats(&set("nominate"));
    assert_eq!(s.pairs, 1);
    assert_eq!(s.total.structures, 2);
    assert_eq!(s.total.arguments, 2);
    assert_eq!((s.predicate_alignments, s.argument_alignments), (1, 1));

    let harmonise = set("harmonise");
    let report = harmonise.dangling_report();
    assert_eq!(report.predicates.len(), 1);
    assert_eq!(
        (report.predicates[0].lang.as_str(), report.predicates[0].name.as_str()),
        ("de", "ERFORDERLICH")
    );
    assert!(report.arguments.is_empty());
    assert_eq!(analysis::stats(&harmonise).total.dangling_predicates, 1);

    let s = analysis::stats(&set("raise"));
    assert_eq!(s.total.bindings_with_exclusions, 1);
    assert_eq!(s.pairs, 0);

    let s = analysis::stats(&set("divergence"));
    assert_eq!(
        s.align_tags,
        BTreeMap::from([("abs-opp".into(), 1), ("incomp".into(), 1)])
    );

    let empty = monolingual("", "");
    let s = analysis::stats(&empty);
    assert_eq!(s.total, analysis::Counts::default());
    assert_eq!((s.pairs, s.predicate_alignments, s.argument_alignments), (0, 0, 0));
}
