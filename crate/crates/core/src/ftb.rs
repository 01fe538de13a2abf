//! Reader and writer for the line-oriented treebank format.
//!
//! ```text
//! #BOS <sid> <document>:<sentence_number>:<lang>
//! <form>\t<pos>\t<edge-label>\t<parent>        one line per token
//! #<nid>\t<category>\t<edge-label>\t<parent>   nid >= 500, ascending
//! #EOS <sid>
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::tree::{NonTerminal, OriginRef, Parent, SentenceTree, Token, ABSENT};

struct Open {
    sid: u32,
    origin: OriginRef,
    tokens: Vec<Token>,
    nodes: Vec<NonTerminal>,
}

/// Parses every sentence block in file order.
pub fn parse_treebank(input: &str) -> Result<Vec<SentenceTree>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut open: Option<Open> = None;
    let mut last_line = 0;

    for (i, line) in input.lines().enumerate() {
        let lineno = i + 1;
        last_line = lineno;
        if let Some(rest) = line.strip_prefix("#BOS ") {
            if open.is_some() {
                return Err(Error::parse(lineno, "#BOS inside an open sentence (missing #EOS)"));
            }
            let (sid, origin) = rest
                .split_once(' ')
                .ok_or_else(|| Error::parse(lineno, "expected `#BOS <sid> <document>:<number>:<lang>`"))?;
            let sid = parse_sid(sid, lineno)?;
            let origin = origin.parse::<OriginRef>().map_err(|m| Error::parse(lineno, m))?;
            open = Some(Open {
                sid,
                origin,
                tokens: Vec::new(),
                nodes: Vec::new(),
            });
        } else if let Some(rest) = line.strip_prefix("#EOS ") {
            let block = open
                .take()
                .ok_or_else(|| Error::parse(lineno, "#EOS without matching #BOS"))?;
            let sid = parse_sid(rest, lineno)?;
            if sid != block.sid {
                return Err(Error::parse(
                    lineno,
                    format!("#EOS {sid} closes sentence {}", block.sid),
                ));
            }
            if !seen.insert(sid) {
                return Err(Error::invariant(sid, "duplicate sid"));
            }
            out.push(SentenceTree::new(block.sid, block.origin, block.tokens, block.nodes)?);
        } else {
            let block = open.as_mut().ok_or_else(|| Error::parse(lineno, "expected #BOS"))?;
            parse_body_line(line, lineno, block)?;
        }
    }
    if open.is_some() {
        return Err(Error::parse(last_line, "unterminated sentence (missing #EOS)"));
    }
    Ok(out)
}

fn parse_sid(s: &str, lineno: usize) -> Result<u32> {
    match s.parse::<u32>() {
        Ok(sid) if sid > 0 && s.bytes().all(|b| b.is_ascii_digit()) => Ok(sid),
        _ => Err(Error::parse(lineno, format!("malformed sid `{s}`"))),
    }
}

fn parse_body_line(line: &str, lineno: usize, block: &mut Open) -> Result<()> {
    let fields: Vec<&str> = line.split('\t').collect();
    let [first, tag, label, parent] = fields[..] else {
        return Err(Error::parse(
            lineno,
            format!("expected 4 tab-separated fields, found {}", fields.len()),
        ));
    };
    let label = match label {
        ABSENT => None,
        "" => return Err(Error::parse(lineno, "empty edge label (use `--`)")),
        l => Some(l.to_string()),
    };
    if parent.is_empty() || !parent.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(lineno, format!("malformed parent `{parent}`")));
    }
    let parent = match parent
        .parse::<u32>()
        .map_err(|_| Error::parse(lineno, format!("parent `{parent}` out of range")))?
    {
        0 => Parent::Root,
        id => Parent::Node(id),
    };

    let node_id = first
        .strip_prefix('#')
        .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()));
    match node_id {
        Some(digits) => {
            let id = digits
                .parse()
                .map_err(|_| Error::parse(lineno, format!("node id `{digits}` out of range")))?;
            block.nodes.push(NonTerminal {
                id,
                category: tag.to_string(),
                label,
                parent,
            });
        }
        None => {
            if !block.nodes.is_empty() {
                return Err(Error::parse(lineno, "token line after non-terminal lines"));
            }
            if first.is_empty() {
                return Err(Error::parse(lineno, "empty token form"));
            }
            block.tokens.push(Token {
                index: block.tokens.len(),
                form: first.to_string(),
                pos: tag.to_string(),
                label,
                parent,
            });
        }
    }
    Ok(())
}

pub fn write_treebank(trees: &[SentenceTree]) -> String {
    let mut out = String::new();
    for tree in trees {
        write_tree(&mut out, tree);
    }
    out
}

pub(crate) fn write_tree(out: &mut String, tree: &SentenceTree) {
    let label = |l: &Option<String>| l.as_deref().unwrap_or(ABSENT).to_string();
    let _ = writeln!(out, "#BOS {} {}", tree.sid(), tree.origin());
    for t in tree.tokens() {
        let _ = writeln!(out, "{}\t{}\t{}\t{}", t.form, t.pos, label(&t.label), t.parent);
    }
    for n in tree.nodes() {
        let _ = writeln!(out, "#{}\t{}\t{}\t{}", n.id, n.category, label(&n.label), n.parent);
    }
    let _ = writeln!(out, "#EOS {}", tree.sid());
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::NodeRef;

    const NOMINATE: &str = "\
#BOS 1 de-en/ep-00-02-15.al:326:en
their\tPPOSAT\tNK\t511
automatic\tADJA\tNK\t511
right\tNN\tNK\t511
to\tPTKZU\tPM\t509
nominate\tVV\tHD\t509
a\tART\tNK\t508
member\tNN\tNK\t508
of\tAPPR\tAC\t505
the\tART\tNK\t505
European\tADJA\tNK\t505
Commission\tNN\tNK\t505
#505\tPP\tMNR\t508
#508\tNP\tOD\t510
#509\tVZ\tHD\t510
#510\tIE\tOC\t511
#511\tNP\t--\t0
#EOS 1
";

    #[test]
    fn parses_direct_object_np() {
        let trees = parse_treebank(NOMINATE).unwrap();
        assert_eq!(trees.len(), 1);
        let t = &trees[0];
        assert_eq!(t.tokens().len(), 11);
        assert_eq!(t.tokens()[10].form, "Commission");
        assert_eq!(t.category(NodeRef::Node(508)).unwrap(), "NP");
        assert_eq!(t.label(NodeRef::Node(508)).unwrap(), Some("OD"));
        assert_eq!(t.label(NodeRef::Node(511)).unwrap(), None);
        assert_eq!(write_treebank(&trees), NOMINATE);
    }

    #[test]
    fn empty_input() {
        assert!(parse_treebank("").unwrap().is_empty());
    }

    #[test]
    fn minimal_block() {
        let src = "#BOS 1 d:1:en\nx\tTAG\t--\t0\n#EOS 1\n";
        let trees = parse_treebank(src).unwrap();
        assert_eq!(trees[0].tokens().len(), 1);
        assert!(trees[0].nodes().is_empty());
        assert_eq!(write_treebank(&trees), src);
    }

    fn line_of(err: Error) -> usize {
        match err {
            Error::Parse { line, .. } => line,
            other => panic!("expected parse error, got {other}"),
        }
    }

    #[test]
    fn malformed_lines_report_line_numbers() {
        assert_eq!(line_of(parse_treebank("x\tA\t--\t0\n").unwrap_err()), 1);
        assert_eq!(
            line_of(parse_treebank("#BOS 1 d:1:en\nx\tA\t--\n#EOS 1\n").unwrap_err()),
            2
        );
        assert_eq!(
            line_of(parse_treebank("#BOS 1 d:1:en\nx\tA\t\t0\n#EOS 1\n").unwrap_err()),
            2
        );
        assert_eq!(
            line_of(parse_treebank("#BOS 1 d:1:en\nx\tA\t--\t0\n#EOS 2\n").unwrap_err()),
            3
        );
        assert_eq!(line_of(parse_treebank("#BOS 1 d:1:en\nx\tA\t--\t0\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_treebank("#BOS x d:1:en\n").unwrap_err()), 1);
        assert_eq!(
            line_of(parse_treebank("#BOS 1 d:1:en\n#500\tX\t--\t0\nx\tA\t--\t500\n#EOS 1\n").unwrap_err()),
            3
        );
    }

    #[test]
    fn invariant_errors_name_the_sentence() {
        let dup = "#BOS 7 d:1:en\nx\tA\t--\t500\n#500\tX\t--\t0\n#500\tY\t--\t0\n#EOS 7\n";
        assert!(matches!(parse_treebank(dup), Err(Error::Invariant { sid: 7, .. })));
        let low = "#BOS 8 d:1:en\nx\tA\t--\t12\n#EOS 8\n";
        assert!(matches!(parse_treebank(low), Err(Error::Invariant { sid: 8, .. })));
        let cyc = "#BOS 9 d:1:en\nx\tA\t--\t500\n#500\tX\t--\t501\n#501\tY\t--\t500\n#EOS 9\n";
        assert!(matches!(parse_treebank(cyc), Err(Error::Invariant { sid: 9, .. })));
        let twice = "#BOS 1 d:1:en\nx\tA\t--\t0\n#EOS 1\n#BOS 1 d:2:en\ny\tA\t--\t0\n#EOS 1\n";
        assert!(matches!(parse_treebank(twice), Err(Error::Invariant { sid: 1, .. })));
    }
}
