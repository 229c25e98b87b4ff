//! Corpus diagnostics: linearization lengths, score breakdowns by depth and
//! length, parent-child token distances, and the relation-role census.
//!
//! Lengths and distances count whitespace-separated tokens of this crate's
//! canonical serializations.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::graph::{AmrGraph, Role};
use crate::linearize::{self, LinearizationConfig};
use crate::smatch::{self, SmatchOptions, SmatchResult};
use crate::{penman, triple};

/// Number of whitespace-separated tokens.
pub fn token_count(text: &str) -> usize {
    text.split_whitespace().count()
}

/// Mean scores for one bucket of reference/hypothesis pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct BucketReport {
    pub key: usize,
    pub count: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Group keyed results and average each bucket; keys come out sorted.
pub fn bucket_reports(keyed: Vec<(usize, SmatchResult)>) -> Vec<BucketReport> {
    let mut buckets: BTreeMap<usize, Vec<SmatchResult>> = BTreeMap::new();
    for (key, result) in keyed {
        buckets.entry(key).or_default().push(result);
    }
    buckets
        .into_iter()
        .map(|(key, results)| {
            let count = results.len();
            let mean =
                |f: fn(&SmatchResult) -> f64| results.iter().map(f).sum::<f64>() / count as f64;
            BucketReport {
                key,
                count,
                precision: mean(|r| r.precision),
                recall: mean(|r| r.recall),
                f1: mean(|r| r.f1),
            }
        })
        .collect()
}

/// Group pairs by reference graph depth; one report per occupied depth.
pub fn smatch_by_depth(pairs: &[(AmrGraph, AmrGraph)], opts: &SmatchOptions) -> Vec<BucketReport> {
    bucket_reports(
        pairs
            .iter()
            .map(|(reference, hypothesis)| {
                (
                    reference.depth(),
                    smatch::score_pair(reference, hypothesis, opts),
                )
            })
            .collect(),
    )
}

/// Group pairs by `floor(length / bucket_size)` of the reference
/// linearization under the given config.
pub fn smatch_by_length(
    pairs: &[(AmrGraph, AmrGraph)],
    config: &LinearizationConfig,
    bucket_size: usize,
    opts: &SmatchOptions,
) -> Vec<BucketReport> {
    let width = bucket_size.max(1);
    bucket_reports(
        pairs
            .iter()
            .map(|(reference, hypothesis)| {
                let length = token_count(&linearize::encode(reference, config));
                (
                    length / width,
                    smatch::score_pair(reference, hypothesis, opts),
                )
            })
            .collect(),
    )
}

/// Per-edge token distances between source and target surface tokens in a
/// linearization, one entry per stored edge.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceReport {
    pub distances: Vec<usize>,
    pub mean: f64,
    pub max: usize,
}

/// Distances between each edge's source token (at its defining occurrence)
/// and the token realizing that edge's target. Triple encodings keep every
/// pair within two token positions.
pub fn parent_child_distances(graph: &AmrGraph, config: &LinearizationConfig) -> DistanceReport {
    let anchors = match config {
        LinearizationConfig::Penman(c) => penman::tokens(graph, c).edge_anchors,
        LinearizationConfig::Triple(c) => triple::tokens_with_anchors(graph, c).1,
    };
    let distances: Vec<usize> = anchors.iter().map(|(s, t)| s.abs_diff(*t)).collect();
    let max = distances.iter().copied().max().unwrap_or(0);
    let mean = if distances.is_empty() {
        0.0
    } else {
        distances.iter().sum::<usize>() as f64 / distances.len() as f64
    };
    DistanceReport {
        distances,
        mean,
        max,
    }
}

/// Count relation-role occurrences across a corpus, before or after
/// reversing non-exempt inverse roles.
pub fn role_census(graphs: &[AmrGraph], normalized: bool) -> BTreeMap<Role, usize> {
    let mut census = BTreeMap::new();
    for graph in graphs {
        for edge in graph.edges() {
            let role = if normalized && edge.role.is_inverse() {
                edge.role
                    .inverted()
                    .expect("edge roles are never `instance`")
            } else {
                edge.role.clone()
            };
            *census.entry(role).or_insert(0) += 1;
        }
    }
    census
}
