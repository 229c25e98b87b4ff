//! AMR corpus files: blank-line-separated blocks of `# ::key value`
//! metadata lines followed by a Penman graph.

use amr_core::penman;
use amr_core::AmrGraph;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusEntry {
    /// Metadata in file order, `::id` and `::snt` included.
    pub meta: Vec<(String, String)>,
    pub graph: AmrGraph,
}

impl CorpusEntry {
    pub fn new(graph: AmrGraph) -> Self {
        CorpusEntry {
            meta: Vec::new(),
            graph,
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.meta
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn id(&self) -> Option<&str> {
        self.get("id")
    }

    pub fn sentence(&self) -> Option<&str> {
        self.get("snt")
    }
}

/// The id used in reports: `::id` when present, else the block index.
pub fn entry_id(entry: &CorpusEntry, index: usize) -> String {
    entry
        .id()
        .map(str::to_string)
        .unwrap_or_else(|| index.to_string())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SkippedBlock {
    pub index: usize,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CorpusRead {
    pub entries: Vec<CorpusEntry>,
    pub skipped: Vec<SkippedBlock>,
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum CorpusError {
    #[error("block {index}: {message}")]
    Block { index: usize, message: String },
}

/// One blank-line-delimited block split into metadata and graph text.
#[derive(Clone, Debug, PartialEq)]
pub struct RawBlock {
    pub meta: Vec<(String, String)>,
    pub body: String,
}

/// Parse `# ::key value ::key2 value2` lines; `#` lines without `::` are
/// file comments and are dropped.
fn parse_meta_line(line: &str) -> Vec<(String, String)> {
    let rest = line.trim_start_matches('#').trim_start();
    if !rest.starts_with("::") {
        return Vec::new();
    }
    let mut pairs = Vec::new();
    for segment in rest.split(" ::") {
        let segment = segment.trim_start_matches("::").trim();
        if segment.is_empty() {
            continue;
        }
        match segment.split_once(char::is_whitespace) {
            Some((key, value)) => pairs.push((key.to_string(), value.trim().to_string())),
            None => pairs.push((segment.to_string(), String::new())),
        }
    }
    pairs
}

/// Split a corpus file into raw blocks without parsing the graphs.
pub fn raw_blocks(text: &str) -> Vec<RawBlock> {
    let mut blocks = Vec::new();
    let mut meta: Vec<(String, String)> = Vec::new();
    let mut body_lines: Vec<&str> = Vec::new();

    let mut flush = |meta: &mut Vec<(String, String)>, body_lines: &mut Vec<&str>| {
        if meta.is_empty() && body_lines.is_empty() {
            return;
        }
        blocks.push(RawBlock {
            meta: std::mem::take(meta),
            body: body_lines.join("\n"),
        });
        body_lines.clear();
    };

    for line in text.lines() {
        if line.trim().is_empty() {
            flush(&mut meta, &mut body_lines);
        } else if line.trim_start().starts_with('#') {
            meta.extend(parse_meta_line(line));
        } else {
            body_lines.push(line);
        }
    }
    flush(&mut meta, &mut body_lines);
    blocks
}

/// Read a corpus. In lenient mode blocks that fail to parse are skipped and
/// reported; otherwise the first failure aborts with its block index.
///
/// `::id` values must be unique within the file and `::snt` values non-empty
/// when present.
pub fn read_corpus(text: &str, lenient: bool) -> Result<CorpusRead, CorpusError> {
    let mut read = CorpusRead::default();
    let mut seen_ids = std::collections::BTreeSet::new();
    for (index, block) in raw_blocks(text).into_iter().enumerate() {
        let outcome = parse_block(&block, &mut seen_ids);
        match outcome {
            Ok(entry) => read.entries.push(entry),
            Err(message) if lenient => read.skipped.push(SkippedBlock { index, message }),
            Err(message) => return Err(CorpusError::Block { index, message }),
        }
    }
    Ok(read)
}

fn parse_block(
    block: &RawBlock,
    seen_ids: &mut std::collections::BTreeSet<String>,
) -> Result<CorpusEntry, String> {
    if block.body.trim().is_empty() {
        return Err("missing graph text".to_string());
    }
    let graph = penman::parse(&block.body).map_err(|e| e.to_string())?;
    let entry = CorpusEntry {
        meta: block.meta.clone(),
        graph,
    };
    if let Some(id) = entry.id() {
        if !seen_ids.insert(id.to_string()) {
            return Err(format!("duplicate ::id `{id}`"));
        }
    }
    if let Some(sentence) = entry.sentence() {
        if sentence.trim().is_empty() {
            return Err("empty ::snt".to_string());
        }
    }
    Ok(entry)
}

/// Write entries back out; graphs are serialized as single-line Penman with
/// variables. Reading the result yields entry-identical data.
pub fn write_corpus(entries: &[CorpusEntry]) -> String {
    let config = amr_core::PenmanConfig::default();
    let blocks: Vec<String> = entries
        .iter()
        .map(|entry| {
            let mut lines: Vec<String> = entry
                .meta
                .iter()
                .map(|(key, value)| {
                    if value.is_empty() {
                        format!("# ::{key}")
                    } else {
                        format!("# ::{key} {value}")
                    }
                })
                .collect();
            lines.push(penman::serialize(&entry.graph, &config));
            lines.join("\n")
        })
        .collect();
    let mut out = blocks.join("\n\n");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const CHINA_BLOCK: &str = "# ::id test.1 ::date 2012-12-04\n# ::snt There are too many traitors of China!\n(p / person :ARG0-of (b / betray-01 :ARG1 (c / country :name \"China\"))\n       :ARG1-of (h / have-quant-91 :ARG2 (m / many) :ARG3 (t / too)))\n";

    #[test]
    fn reads_a_block_with_metadata() {
        let read = read_corpus(CHINA_BLOCK, false).unwrap();
        assert_eq!(read.entries.len(), 1);
        let entry = &read.entries[0];
        assert_eq!(entry.id(), Some("test.1"));
        assert_eq!(
            entry.sentence(),
            Some("There are too many traitors of China!")
        );
        assert_eq!(entry.get("date"), Some("2012-12-04"));
        assert_eq!(entry.graph.variable_count(), 6);
        assert_eq!(entry.graph.edges().len(), 6);
    }

    #[test]
    fn empty_file_reads_as_empty_corpus() {
        let read = read_corpus("", false).unwrap();
        assert!(read.entries.is_empty());
        assert!(read.skipped.is_empty());
        assert!(read_corpus("\n\n\n", false).unwrap().entries.is_empty());
    }

    #[test]
    fn lenient_mode_skips_malformed_blocks() {
        let text = format!("{CHINA_BLOCK}\n# ::id bad.1\n(x / broken\n");
        let strict = read_corpus(&text, false);
        assert!(matches!(strict, Err(CorpusError::Block { index: 1, .. })));

        let lenient = read_corpus(&text, true).unwrap();
        assert_eq!(lenient.entries.len(), 1);
        assert_eq!(lenient.skipped.len(), 1);
        assert_eq!(lenient.skipped[0].index, 1);
    }

    #[test]
    fn duplicate_ids_and_empty_sentences_are_rejected() {
        let text = "# ::id twin\n(a / any)\n\n# ::id twin\n(b / other)\n";
        let err = read_corpus(text, false).unwrap_err();
        assert!(matches!(err, CorpusError::Block { index: 1, .. }));
        let lenient = read_corpus(text, true).unwrap();
        assert_eq!(lenient.entries.len(), 1);
        assert_eq!(lenient.skipped.len(), 1);

        let text = "# ::id x ::snt\n(a / any)\n";
        assert!(read_corpus(text, false).is_err());
    }

    #[test]
    fn value_free_keys_and_comments() {
        let text = "# AMR release v3.0\n# ::id x.1 ::preferred\n# ::snt Hi\n(h / hi)\n";
        let read = read_corpus(text, false).unwrap();
        let entry = &read.entries[0];
        assert_eq!(entry.get("preferred"), Some(""));
        assert_eq!(entry.meta.len(), 3);
    }

    #[test]
    fn write_then_read_is_entry_identical() {
        let text = format!(
            "{CHINA_BLOCK}\n# ::id test.2 ::preferred\n# ::snt We never seem to see it.\n(s / seem-01 :polarity - :ARG1 (s2 / see-01 :ARG0 w :ARG1 (i / it)) :ARG2 (w / we))\n"
        );
        let first = read_corpus(&text, false).unwrap();
        let written = write_corpus(&first.entries);
        let second = read_corpus(&written, false).unwrap();
        assert_eq!(first.entries, second.entries);
        // And the writer is a fixpoint once the text is canonical.
        assert_eq!(write_corpus(&second.entries), written);
    }
}
