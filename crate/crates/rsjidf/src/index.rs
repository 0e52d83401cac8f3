//! Tokenization, inverted-index construction, corpus readers, and the
//! versioned on-disk index format.
//!
//! The index file is line-oriented text:
//!
//! ```text
//! RSJIDX 1
//! N <corpus size>
//! D <ordinal> <doc id>        (one per document, in ordinal order)
//! T <term> <df> <ord,ord,..>  (one per term, terms sorted, ordinals ascending)
//! ```

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::weighting::TermStats;

pub const INDEX_MAGIC: &str = "RSJIDX";
pub const INDEX_VERSION: &str = "1";

/// Errors from corpus reading, index construction, and index I/O.
#[derive(Debug, thiserror::Error)]
pub enum IndexError {
    #[error("duplicate document id {doc_id:?}")]
    DuplicateDocId { doc_id: String },
    #[error("malformed index file at line {line}: {message}")]
    MalformedIndexFile { line: usize, message: String },
    #[error("unsupported index version {found:?} (this build reads version {INDEX_VERSION})")]
    VersionMismatch { found: String },
    #[error("malformed corpus file at line {line}: {message}")]
    MalformedCorpus { line: usize, message: String },
    #[error("unsupported corpus extension {extension:?} (expected .tsv or .jsonl)")]
    UnsupportedCorpusFormat { extension: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// One input document: an external id and its raw text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub doc_id: String,
    pub text: String,
}

impl Document {
    pub fn new(doc_id: impl Into<String>, text: impl Into<String>) -> Self {
        Self { doc_id: doc_id.into(), text: text.into() }
    }
}

/// Lowercases and splits on every non-alphanumeric character, dropping
/// empty pieces. Order and multiplicity are preserved; indexing collapses
/// duplicates per document.
pub fn tokenize(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|piece| !piece.is_empty())
        .map(str::to_string)
        .collect()
}

/// Immutable term-to-documents map over a fixed corpus.
///
/// Documents are stored by dense ordinal (their position in input order);
/// postings hold ascending ordinals. Terms iterate in sorted order, so
/// every walk over the index is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvertedIndex {
    doc_ids: Vec<String>,
    postings: BTreeMap<String, Vec<u32>>,
}

impl InvertedIndex {
    /// Builds from documents in input order. Document ids must be unique.
    pub fn build(docs: &[Document]) -> Result<Self, IndexError> {
        let mut seen: HashSet<&str> = HashSet::with_capacity(docs.len());
        let mut doc_ids = Vec::with_capacity(docs.len());
        let mut postings: BTreeMap<String, Vec<u32>> = BTreeMap::new();
        for (ordinal, doc) in docs.iter().enumerate() {
            if !seen.insert(doc.doc_id.as_str()) {
                return Err(IndexError::DuplicateDocId { doc_id: doc.doc_id.clone() });
            }
            doc_ids.push(doc.doc_id.clone());
            let distinct: BTreeSet<String> = tokenize(&doc.text).into_iter().collect();
            for term in distinct {
                postings.entry(term).or_default().push(ordinal as u32);
            }
        }
        Ok(Self { doc_ids, postings })
    }

    pub fn corpus_size(&self) -> u64 {
        self.doc_ids.len() as u64
    }

    pub fn vocab_size(&self) -> usize {
        self.postings.len()
    }

    pub fn doc_id(&self, ordinal: u32) -> &str {
        &self.doc_ids[ordinal as usize]
    }

    pub fn doc_ids(&self) -> &[String] {
        &self.doc_ids
    }

    /// Terms in sorted order.
    pub fn terms(&self) -> impl Iterator<Item = &str> {
        self.postings.keys().map(String::as_str)
    }

    /// Ascending document ordinals for a term; `None` if unseen.
    pub fn posting(&self, term: &str) -> Option<&[u32]> {
        self.postings.get(term).map(Vec::as_slice)
    }

    pub fn df(&self, term: &str) -> u64 {
        self.posting(term).map_or(0, |p| p.len() as u64)
    }

    pub fn contains(&self, term: &str, ordinal: u32) -> bool {
        self.posting(term)
            .is_some_and(|p| p.binary_search(&ordinal).is_ok())
    }

    /// Document-frequency statistics for a term; `df = 0` if unseen.
    ///
    /// Panics if the index holds no documents (statistics need `N >= 1`).
    pub fn term_stats(&self, term: &str) -> TermStats {
        TermStats::new(self.df(term), self.corpus_size())
            .expect("index must hold at least one document")
    }

    /// Writes the versioned text format.
    pub fn save(&self, w: &mut impl Write) -> io::Result<()> {
        writeln!(w, "{INDEX_MAGIC} {INDEX_VERSION}")?;
        writeln!(w, "N {}", self.doc_ids.len())?;
        for (ordinal, doc_id) in self.doc_ids.iter().enumerate() {
            writeln!(w, "D {ordinal} {doc_id}")?;
        }
        for (term, posting) in &self.postings {
            write!(w, "T {term} {} ", posting.len())?;
            for (i, ordinal) in posting.iter().enumerate() {
                if i > 0 {
                    w.write_all(b",")?;
                }
                write!(w, "{ordinal}")?;
            }
            w.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn save_to_path(&self, path: &Path) -> Result<(), IndexError> {
        let mut w = BufWriter::new(File::create(path)?);
        self.save(&mut w)?;
        w.flush()?;
        Ok(())
    }

    /// Reads the versioned text format, validating structure line by line.
    pub fn load(r: impl BufRead) -> Result<Self, IndexError> {
        let mut lines = r.lines().enumerate();
        let mut next_line = || -> Result<Option<(usize, String)>, IndexError> {
            match lines.next() {
                None => Ok(None),
                Some((i, line)) => Ok(Some((i + 1, line?))),
            }
        };
        let malformed = |line: usize, message: &str| IndexError::MalformedIndexFile {
            line,
            message: message.to_string(),
        };

        let Some((lineno, header)) = next_line()? else {
            return Err(malformed(1, "empty file"));
        };
        let mut header_fields = header.split(' ');
        if header_fields.next() != Some(INDEX_MAGIC) {
            return Err(malformed(lineno, "missing RSJIDX header"));
        }
        match header_fields.next() {
            None => return Err(malformed(lineno, "missing version")),
            Some(v) if v != INDEX_VERSION => {
                return Err(IndexError::VersionMismatch { found: v.to_string() });
            }
            Some(_) => {}
        }
        if header_fields.next().is_some() {
            return Err(malformed(lineno, "trailing fields after version"));
        }

        let Some((lineno, count_line)) = next_line()? else {
            return Err(malformed(2, "missing corpus size line"));
        };
        let corpus_size: usize = count_line
            .strip_prefix("N ")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| malformed(lineno, "expected `N <corpus size>`"))?;

        let mut doc_ids = Vec::with_capacity(corpus_size);
        let mut seen: HashSet<String> = HashSet::with_capacity(corpus_size);
        for _ in 0..corpus_size {
            let Some((lineno, line)) = next_line()? else {
                return Err(malformed(2 + doc_ids.len() + 1, "missing document line"));
            };
            let rest = line
                .strip_prefix("D ")
                .ok_or_else(|| malformed(lineno, "expected `D <ordinal> <doc id>`"))?;
            let (ordinal, doc_id) = rest
                .split_once(' ')
                .ok_or_else(|| malformed(lineno, "expected `D <ordinal> <doc id>`"))?;
            let ordinal: usize = ordinal
                .parse()
                .map_err(|_| malformed(lineno, "document ordinal is not a number"))?;
            if ordinal != doc_ids.len() {
                return Err(malformed(lineno, "document ordinal out of sequence"));
            }
            if doc_id.is_empty() {
                return Err(malformed(lineno, "empty document id"));
            }
            if !seen.insert(doc_id.to_string()) {
                return Err(malformed(lineno, "duplicate document id"));
            }
            doc_ids.push(doc_id.to_string());
        }

        let mut postings: BTreeMap<String, Vec<u32>> = BTreeMap::new();
        while let Some((lineno, line)) = next_line()? {
            let rest = line
                .strip_prefix("T ")
                .ok_or_else(|| malformed(lineno, "expected `T <term> <df> <ordinals>`"))?;
            let mut fields = rest.splitn(3, ' ');
            let (Some(term), Some(df), Some(ordinals)) =
                (fields.next(), fields.next(), fields.next())
            else {
                return Err(malformed(lineno, "expected `T <term> <df> <ordinals>`"));
            };
            let df: usize = df
                .parse()
                .map_err(|_| malformed(lineno, "df is not a number"))?;
            if df == 0 {
                return Err(malformed(lineno, "empty posting list"));
            }
            let mut posting = Vec::with_capacity(df);
            for piece in ordinals.split(',') {
                let ordinal: u32 = piece
                    .parse()
                    .map_err(|_| malformed(lineno, "posting ordinal is not a number"))?;
                if (ordinal as usize) >= doc_ids.len() {
                    return Err(malformed(lineno, "posting ordinal out of range"));
                }
                if posting.last().is_some_and(|&prev| prev >= ordinal) {
                    return Err(malformed(lineno, "posting ordinals not strictly ascending"));
                }
                posting.push(ordinal);
            }
            if posting.len() != df {
                return Err(malformed(lineno, "df does not match posting length"));
            }
            if postings.insert(term.to_string(), posting).is_some() {
                return Err(malformed(lineno, "duplicate term"));
            }
        }

        Ok(Self { doc_ids, postings })
    }

    pub fn load_from_path(path: &Path) -> Result<Self, IndexError> {
        Self::load(BufReader::new(File::open(path)?))
    }
}

#[derive(serde::Deserialize)]
struct JsonDoc {
    id: String,
    text: String,
}

/// Reads a corpus file, dispatching on extension: `.tsv` holds
/// `<doc id>\t<text>` lines, `.jsonl` holds one `{"id", "text"}` object
/// per line. Blank lines are skipped.
pub fn read_corpus(path: &Path) -> Result<Vec<Document>, IndexError> {
    let extension = path
        .extension()
        .and_then(|e| e.to_str())
        .unwrap_or("")
        .to_ascii_lowercase();
    let reader = BufReader::new(File::open(path)?);
    match extension.as_str() {
        "tsv" => read_tsv_corpus(reader),
        "jsonl" => read_jsonl_corpus(reader),
        other => Err(IndexError::UnsupportedCorpusFormat { extension: other.to_string() }),
    }
}

pub fn read_tsv_corpus(r: impl BufRead) -> Result<Vec<Document>, IndexError> {
    let mut docs = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        let Some((doc_id, text)) = line.split_once('\t') else {
            return Err(IndexError::MalformedCorpus {
                line: i + 1,
                message: "expected `<doc id>\\t<text>`".to_string(),
            });
        };
        if doc_id.is_empty() {
            return Err(IndexError::MalformedCorpus {
                line: i + 1,
                message: "empty document id".to_string(),
            });
        }
        docs.push(Document::new(doc_id, text));
    }
    Ok(docs)
}

pub fn read_jsonl_corpus(r: impl BufRead) -> Result<Vec<Document>, IndexError> {
    let mut docs = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let doc: JsonDoc =
            serde_json::from_str(&line).map_err(|e| IndexError::MalformedCorpus {
                line: i + 1,
                message: e.to_string(),
            })?;
        docs.push(Document::new(doc.id, doc.text));
    }
    Ok(docs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_doc_index() -> InvertedIndex {
        InvertedIndex::build(&[
            Document::new("d1", "a b"),
            Document::new("d2", "b c"),
            Document::new("d3", "c d"),
        ])
        .unwrap()
    }

    #[test]
    fn tokenize_lowercases_and_splits_on_non_alphanumerics() {
        assert_eq!(tokenize("The IDF, revisited!"), ["the", "idf", "revisited"]);
        assert_eq!(tokenize("a-b  a"), ["a", "b", "a"]);
        assert_eq!(tokenize("x2!y3"), ["x2", "y3"]);
        assert!(tokenize("").is_empty());
        assert!(tokenize("--- !!").is_empty());
    }

    #[test]
    fn tokenize_is_idempotent_on_its_own_output() {
        for text in ["The IDF, revisited!", "a-b c_d", "Grüße, WELT"] {
            let once = tokenize(text);
            let twice = tokenize(&once.join(" "));
            assert_eq!(once, twice, "{text:?}");
        }
    }

    #[test]
    fn build_counts_each_document_once_per_term() {
        let index = InvertedIndex::build(&[
            Document::new("d1", "a a a b"),
            Document::new("d2", "b"),
        ])
        .unwrap();
        assert_eq!(index.df("a"), 1);
        assert_eq!(index.df("b"), 2);
        assert_eq!(index.df("zzz"), 0);
        assert_eq!(index.corpus_size(), 2);
        assert_eq!(index.vocab_size(), 2);
    }

    #[test]
    fn build_rejects_duplicate_document_ids() {
        let err = InvertedIndex::build(&[
            Document::new("d1", "a"),
            Document::new("d1", "b"),
        ])
        .unwrap_err();
        assert!(matches!(err, IndexError::DuplicateDocId { doc_id } if doc_id == "d1"));
    }

    #[test]
    fn ubiquitous_term_has_df_equal_to_corpus_size() {
        let docs: Vec<Document> = (0..100)
            .map(|i| Document::new(format!("d{i}"), "shared"))
            .collect();
        let index = InvertedIndex::build(&docs).unwrap();
        let stats = index.term_stats("shared");
        assert_eq!(stats.df(), 100);
        assert_eq!(stats.corpus_size(), 100);
    }

    #[test]
    fn term_stats_returns_zero_df_for_unseen_terms() {
        let index = three_doc_index();
        assert_eq!(index.term_stats("zzz").df(), 0);
        assert_eq!(index.term_stats("b").df(), 2);
    }

    #[test]
    fn save_writes_the_documented_format() {
        let index = InvertedIndex::build(&[
            Document::new("d1", "a b"),
            Document::new("d2", "b c"),
        ])
        .unwrap();
        let mut out = Vec::new();
        index.save(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(
            text,
            "RSJIDX 1\nN 2\nD 0 d1\nD 1 d2\nT a 1 0\nT b 2 0,1\nT c 1 1\n"
        );
    }

    #[test]
    fn save_load_round_trips() {
        let index = three_doc_index();
        let mut out = Vec::new();
        index.save(&mut out).unwrap();
        let loaded = InvertedIndex::load(out.as_slice()).unwrap();
        assert_eq!(loaded, index);
    }

    #[test]
    fn load_rejects_foreign_and_future_files() {
        let err = InvertedIndex::load("garbage\n".as_bytes()).unwrap_err();
        assert!(matches!(err, IndexError::MalformedIndexFile { line: 1, .. }), "{err}");

        let err = InvertedIndex::load("RSJIDX 99\nN 0\n".as_bytes()).unwrap_err();
        assert!(matches!(err, IndexError::VersionMismatch { found } if found == "99"));

        let err = InvertedIndex::load("RSJIDX 1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, IndexError::MalformedIndexFile { line: 2, .. }), "{err}");
    }

    #[test]
    fn load_rejects_structural_corruption() {
        let cases: &[(&str, usize)] = &[
            ("RSJIDX 1\nN 1\nD 1 d1\n", 3),                   // ordinal out of sequence
            ("RSJIDX 1\nN 2\nD 0 d1\nD 1 d1\n", 4),           // duplicate doc id
            ("RSJIDX 1\nN 1\nD 0 d1\nT a 2 0\n", 4),          // df mismatch
            ("RSJIDX 1\nN 1\nD 0 d1\nT a 1 5\n", 4),          // ordinal out of range
            ("RSJIDX 1\nN 2\nD 0 d1\nD 1 d2\nT a 2 1,0\n", 5), // not ascending
            ("RSJIDX 1\nN 1\nD 0 d1\nX what\n", 4),           // unknown record
            ("RSJIDX 1\nN 1\nD 0 d1\nT a 1 0\nT a 1 0\n", 5), // duplicate term
        ];
        for (text, want_line) in cases {
            let err = InvertedIndex::load(text.as_bytes()).unwrap_err();
            match err {
                IndexError::MalformedIndexFile { line, .. } => {
                    assert_eq!(line, *want_line, "{text:?}");
                }
                other => panic!("{text:?}: {other}"),
            }
        }
    }

    #[test]
    fn tsv_and_jsonl_corpora_parse_to_the_same_documents() {
        let tsv = "d1\ta b\nd2\tb c\n";
        let jsonl = r#"{"id":"d1","text":"a b"}
{"id":"d2","text":"b c"}
"#;
        let from_tsv = read_tsv_corpus(tsv.as_bytes()).unwrap();
        let from_jsonl = read_jsonl_corpus(jsonl.as_bytes()).unwrap();
        assert_eq!(from_tsv, from_jsonl);
    }

    #[test]
    fn corpus_readers_report_the_offending_line() {
        let err = read_tsv_corpus("d1\ta\nno tab here\n".as_bytes()).unwrap_err();
        assert!(matches!(err, IndexError::MalformedCorpus { line: 2, .. }), "{err}");

        let err = read_jsonl_corpus("{\"id\":\"d1\",\"text\":\"a\"}\n{broken\n".as_bytes())
            .unwrap_err();
        assert!(matches!(err, IndexError::MalformedCorpus { line: 2, .. }), "{err}");

        let err = read_tsv_corpus("\tmissing id\n".as_bytes()).unwrap_err();
        assert!(matches!(err, IndexError::MalformedCorpus { line: 1, .. }), "{err}");
    }

    #[test]
    fn document_order_does_not_affect_term_statistics() {
        let docs = [
            Document::new("d1", "a b"),
            Document::new("d2", "b c"),
            Document::new("d3", "c d"),
        ];
        let forward = InvertedIndex::build(&docs).unwrap();
        let mut reversed = docs.to_vec();
        reversed.reverse();
        let backward = InvertedIndex::build(&reversed).unwrap();
        for term in ["a", "b", "c", "d", "zzz"] {
            assert_eq!(forward.term_stats(term), backward.term_stats(term), "{term}");
        }
    }
}
