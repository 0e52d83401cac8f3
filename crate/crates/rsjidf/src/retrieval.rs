//! Query scoring, deterministic ranking, and TREC-style run output.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use crate::index::{tokenize, InvertedIndex};
use crate::scheme::WeightingScheme;
use crate::weighting::WeightError;

/// A query reduced to its set of distinct normalized terms. The model is
/// binary per term, so repeated query terms carry no extra signal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    query_id: String,
    raw_text: String,
    terms: BTreeSet<String>,
}

impl Query {
    pub fn new(query_id: impl Into<String>, text: impl Into<String>) -> Self {
        let raw_text = text.into();
        let terms = tokenize(&raw_text).into_iter().collect();
        Self { query_id: query_id.into(), raw_text, terms }
    }

    pub fn query_id(&self) -> &str {
        &self.query_id
    }

    pub fn raw_text(&self) -> &str {
        &self.raw_text
    }

    /// Distinct terms in sorted order.
    pub fn terms(&self) -> impl Iterator<Item = &str> {
        self.terms.iter().map(String::as_str)
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }
}

/// A query term whose weight is undefined under the chosen scheme.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("query term {term:?}: {source}")]
pub struct ScoreError {
    pub term: String,
    #[source]
    pub source: WeightError,
}

/// One ranked result; ranks start at 1.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedEntry {
    pub doc_id: String,
    pub score: f64,
    pub rank: u32,
}

/// Ranked results for one query: scores strictly decreasing or tied, ties
/// ordered by ascending document id, no duplicates.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedList {
    pub query_id: String,
    pub entries: Vec<RankedEntry>,
}

/// Sum of scheme weights over the query terms the document contains.
/// A document sharing no term with the query scores exactly zero. Terms
/// are visited in sorted order, so the floating-point sum is reproducible.
pub fn score_document(
    index: &InvertedIndex,
    ordinal: u32,
    query: &Query,
    scheme: &WeightingScheme,
) -> Result<f64, ScoreError> {
    let mut score = 0.0;
    for term in query.terms() {
        if index.contains(term, ordinal) {
            let weight = scheme
                .weight(index.term_stats(term))
                .map_err(|source| ScoreError { term: term.to_string(), source })?;
            score += weight;
        }
    }
    Ok(score)
}

/// Top-`k` documents by score, ties broken by ascending document id;
/// documents scoring zero or below are omitted. Equivalent to scoring
/// every document and sorting, but only candidates from the query terms'
/// postings are touched.
pub fn rank(
    index: &InvertedIndex,
    query: &Query,
    scheme: &WeightingScheme,
    k: usize,
) -> Result<RankedList, ScoreError> {
    assert!(k >= 1, "k must be at least 1");
    let mut candidates: BTreeSet<u32> = BTreeSet::new();
    for term in query.terms() {
        if let Some(posting) = index.posting(term) {
            candidates.extend(posting.iter().copied());
        }
    }
    let mut scored: Vec<(String, f64)> = Vec::with_capacity(candidates.len());
    for &ordinal in &candidates {
        let score = score_document(index, ordinal, query, scheme)?;
        if score > 0.0 {
            scored.push((index.doc_id(ordinal).to_string(), score));
        }
    }
    scored.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    scored.truncate(k);
    let entries = scored
        .into_iter()
        .enumerate()
        .map(|(i, (doc_id, score))| RankedEntry { doc_id, score, rank: i as u32 + 1 })
        .collect();
    Ok(RankedList { query_id: query.query_id.clone(), entries })
}

/// Writes ranked lists in the six-column TREC run format
/// (`<query> Q0 <doc> <rank> <score> <tag>`), scores with six decimals,
/// queries in the order given.
pub fn write_run(lists: &[RankedList], run_tag: &str, w: &mut impl Write) -> io::Result<()> {
    for list in lists {
        for entry in &list.entries {
            writeln!(
                w,
                "{} Q0 {} {} {:.6} {}",
                list.query_id, entry.doc_id, entry.rank, entry.score, run_tag
            )?;
        }
    }
    Ok(())
}

/// Errors from reading a query file.
#[derive(Debug, thiserror::Error)]
pub enum QueryReadError {
    #[error("malformed query file at line {line}: expected `<query id>\\t<text>`")]
    Malformed { line: usize },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Reads `<query id>\t<query text>` lines; blank lines are skipped.
pub fn read_queries(r: impl BufRead) -> Result<Vec<Query>, QueryReadError> {
    let mut queries = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        let Some((query_id, text)) = line.split_once('\t') else {
            return Err(QueryReadError::Malformed { line: i + 1 });
        };
        if query_id.is_empty() {
            return Err(QueryReadError::Malformed { line: i + 1 });
        }
        queries.push(Query::new(query_id, text));
    }
    Ok(queries)
}

pub fn read_queries_from_path(path: &Path) -> Result<Vec<Query>, QueryReadError> {
    read_queries(BufReader::new(File::open(path)?))
}
