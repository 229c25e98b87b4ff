//! Corpus-level Smatch: per-pair scores plus micro-averaged totals.

use amr_core::smatch::{self, SmatchOptions, SmatchResult, SmatchTripleSet};
use amr_core::AmrGraph;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusScore {
    /// One result per pair, in input order; unparseable hypotheses carry the
    /// zero score against the full reference total.
    pub pairs: Vec<SmatchResult>,
    /// Per-pair hypothesis parse error, aligned with `pairs`.
    pub errors: Vec<Option<String>>,
    pub matched: usize,
    pub total_hyp: usize,
    pub total_ref: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub unparseable: usize,
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum ScoreError {
    #[error("reference and hypothesis counts differ: {refs} vs {hyps}")]
    CountMismatch { refs: usize, hyps: usize },
}

/// Micro-averaged corpus score: sums of matched and total triples across
/// order-aligned pairs.
pub fn score_corpus(
    refs: &[AmrGraph],
    hyps: &[Result<AmrGraph, String>],
    opts: &SmatchOptions,
) -> Result<CorpusScore, ScoreError> {
    if refs.len() != hyps.len() {
        return Err(ScoreError::CountMismatch {
            refs: refs.len(),
            hyps: hyps.len(),
        });
    }

    let mut pairs = Vec::with_capacity(refs.len());
    let mut errors = Vec::with_capacity(refs.len());
    for (reference, hypothesis) in refs.iter().zip(hyps) {
        match hypothesis {
            Ok(hypothesis) => {
                pairs.push(smatch::score_pair(reference, hypothesis, opts));
                errors.push(None);
            }
            Err(message) => {
                let total_ref = SmatchTripleSet::with_canonicalization(
                    reference,
                    opts.canonicalize_inverse_roles,
                )
                .len();
                pairs.push(SmatchResult::empty_hypothesis(total_ref));
                errors.push(Some(message.clone()));
            }
        }
    }

    let matched: usize = pairs.iter().map(|p| p.matched).sum();
    let total_hyp: usize = pairs.iter().map(|p| p.total_hyp).sum();
    let total_ref: usize = pairs.iter().map(|p| p.total_ref).sum();
    let precision = if total_hyp == 0 {
        0.0
    } else {
        matched as f64 / total_hyp as f64
    };
    let recall = if total_ref == 0 {
        0.0
    } else {
        matched as f64 / total_ref as f64
    };
    let f1 = if matched == 0 {
        0.0
    } else {
        2.0 * matched as f64 / (total_hyp + total_ref) as f64
    };
    let unparseable = errors.iter().filter(|e| e.is_some()).count();

    Ok(CorpusScore {
        pairs,
        errors,
        matched,
        total_hyp,
        total_ref,
        precision,
        recall,
        f1,
        unparseable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use amr_core::penman;

    fn china() -> AmrGraph {
        penman::parse(
            "( p / person :ARG0-of ( b / betray-01 :ARG1 ( c / country :name \" China \" ) ) :ARG1-of ( h / have-quant-91 :ARG2 ( m / many ) :ARG3 ( t / too ) ) )",
        )
        .unwrap()
    }

    #[test]
    fn identical_corpora_score_one() {
        let refs = vec![china(), china()];
        let hyps: Vec<Result<AmrGraph, String>> = refs.iter().cloned().map(Ok).collect();
        let score = score_corpus(&refs, &hyps, &SmatchOptions::default()).unwrap();
        assert_eq!((score.precision, score.recall, score.f1), (1.0, 1.0, 1.0));
        assert_eq!(score.unparseable, 0);
    }

    #[test]
    fn micro_average_matches_the_worked_example() {
        // One perfect pair plus one China-minus-one-edge pair:
        // matched 13 + 12 = 25, hyp 13 + 12 = 25, ref 13 + 13 = 26,
        // so P = 1, R = 25/26, F1 = 50/51. The 12-triple hypothesis keeps
        // the stranded `t` instance, so it lives at the triple-set level.
        let china = china();
        let reference = SmatchTripleSet::of_graph(&china);
        let mut minus = reference.clone();
        minus
            .relations
            .retain(|(s, _, t)| !(s.as_str() == "h" && t.as_str() == "t"));
        let opts = SmatchOptions::default();
        let perfect = smatch::exact_sets(&reference, &reference, &opts).unwrap();
        let partial = smatch::exact_sets(&reference, &minus, &opts).unwrap();

        let matched = perfect.matched + partial.matched;
        let total_hyp = perfect.total_hyp + partial.total_hyp;
        let total_ref = perfect.total_ref + partial.total_ref;
        assert_eq!((matched, total_hyp, total_ref), (25, 25, 26));
        let f1 = 2.0 * matched as f64 / (total_hyp + total_ref) as f64;
        assert_eq!(f1, 50.0 / 51.0);

        // The graph-level corpus scorer applies the same sums; dropping the
        // edge at the graph level also drops the stranded instance.
        let minus_graph = penman::parse(
            "( p / person :ARG0-of ( b / betray-01 :ARG1 ( c / country :name \" China \" ) ) :ARG1-of ( h / have-quant-91 :ARG2 ( m / many ) ) )",
        )
        .unwrap();
        let refs = vec![china.clone(), china.clone()];
        let hyps = vec![Ok(china), Ok(minus_graph)];
        let score = score_corpus(&refs, &hyps, &opts).unwrap();
        assert_eq!(score.matched, 13 + 11);
        assert_eq!(score.total_hyp, 13 + 11);
        assert_eq!(score.total_ref, 26);
        assert_eq!(score.precision, 1.0);
        assert_eq!(score.f1, 48.0 / 50.0);
    }

    #[test]
    fn unparseable_hypotheses_score_zero_but_count() {
        let refs = vec![china(), china()];
        let hyps = vec![Ok(china()), Err("unbalanced parentheses".to_string())];
        let score = score_corpus(&refs, &hyps, &SmatchOptions::default()).unwrap();
        assert_eq!(score.unparseable, 1);
        assert_eq!(score.pairs[1].matched, 0);
        assert_eq!(score.pairs[1].total_hyp, 0);
        assert_eq!(score.pairs[1].total_ref, 13);
        assert_eq!(score.pairs[1].f1, 0.0);
        assert_eq!(score.matched, 13);
        assert_eq!(score.total_hyp, 13);
        assert_eq!(score.total_ref, 26);
        assert_eq!(score.precision, 1.0);
        assert_eq!(score.recall, 0.5);
    }

    #[test]
    fn count_mismatch_is_an_error() {
        let refs = vec![china()];
        let hyps: Vec<Result<AmrGraph, String>> = vec![];
        assert_eq!(
            score_corpus(&refs, &hyps, &SmatchOptions::default()),
            Err(ScoreError::CountMismatch { refs: 1, hyps: 0 })
        );
    }
}
