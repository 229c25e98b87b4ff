//! CSV and plain-table rendering for diagnostics reports.

use std::collections::BTreeMap;

use amr_core::analysis::{BucketReport, DistanceReport};
use amr_core::graph::Role;

use crate::scoring::CorpusScore;

pub fn buckets_csv(reports: &[BucketReport]) -> String {
    let mut out = String::from("bucket_key,count,precision,recall,f1\n");
    for r in reports {
        out.push_str(&format!(
            "{},{},{:.4},{:.4},{:.4}\n",
            r.key, r.count, r.precision, r.recall, r.f1
        ));
    }
    out
}

pub fn buckets_table(key_label: &str, reports: &[BucketReport]) -> String {
    let mut out = format!(
        "{key_label:>10} {:>7} {:>9} {:>9} {:>9}\n",
        "count", "precision", "recall", "f1"
    );
    for r in reports {
        out.push_str(&format!(
            "{:>10} {:>7} {:>9.4} {:>9.4} {:>9.4}\n",
            r.key, r.count, r.precision, r.recall, r.f1
        ));
    }
    out
}

pub fn census_csv(census: &BTreeMap<Role, usize>) -> String {
    let mut out = String::from("role,count\n");
    for (role, count) in census {
        out.push_str(&format!("{role},{count}\n"));
    }
    out
}

pub fn census_table(census: &BTreeMap<Role, usize>) -> String {
    let mut out = format!("{:<24} {:>7}\n", "role", "count");
    for (role, count) in census {
        out.push_str(&format!("{:<24} {:>7}\n", role.as_str(), count));
    }
    out.push_str(&format!("distinct roles: {}\n", census.len()));
    out
}

pub fn distances_csv(rows: &[(String, DistanceReport)]) -> String {
    let mut out = String::from("id,edges,mean_distance,max_distance\n");
    for (id, report) in rows {
        out.push_str(&format!(
            "{},{},{:.4},{}\n",
            id,
            report.distances.len(),
            report.mean,
            report.max
        ));
    }
    out
}

pub fn distances_table(rows: &[(String, DistanceReport)]) -> String {
    let mut out = format!("{:<16} {:>6} {:>9} {:>5}\n", "id", "edges", "mean", "max");
    let mut all = Vec::new();
    for (id, report) in rows {
        all.extend(report.distances.iter().copied());
        out.push_str(&format!(
            "{:<16} {:>6} {:>9.4} {:>5}\n",
            id,
            report.distances.len(),
            report.mean,
            report.max
        ));
    }
    let max = all.iter().copied().max().unwrap_or(0);
    let mean = if all.is_empty() {
        0.0
    } else {
        all.iter().sum::<usize>() as f64 / all.len() as f64
    };
    out.push_str(&format!(
        "corpus: {} edges, mean {:.4}, max {}\n",
        all.len(),
        mean,
        max
    ));
    out
}

pub fn pairs_csv(ids: &[String], score: &CorpusScore) -> String {
    let mut out = String::from("index,id,precision,recall,f1,matched,total_hyp,total_ref,error\n");
    for (i, (pair, error)) in score.pairs.iter().zip(&score.errors).enumerate() {
        out.push_str(&format!(
            "{},{},{:.4},{:.4},{:.4},{},{},{},{}\n",
            i,
            ids[i],
            pair.precision,
            pair.recall,
            pair.f1,
            pair.matched,
            pair.total_hyp,
            pair.total_ref,
            error.as_deref().unwrap_or("")
        ));
    }
    out
}

pub fn pairs_table(ids: &[String], score: &CorpusScore) -> String {
    let mut out = String::new();
    for (i, (pair, error)) in score.pairs.iter().zip(&score.errors).enumerate() {
        match error {
            Some(message) => out.push_str(&format!(
                "pair {i} ({}): unparseable hypothesis ({message}); scored 0\n",
                ids[i]
            )),
            None => out.push_str(&format!(
                "pair {i} ({}): P={:.4} R={:.4} F1={:.4} ({}/{}/{})\n",
                ids[i],
                pair.precision,
                pair.recall,
                pair.f1,
                pair.matched,
                pair.total_hyp,
                pair.total_ref
            )),
        }
    }
    out.push_str(&summary_line(score));
    out
}

pub fn summary_line(score: &CorpusScore) -> String {
    format!(
        "corpus: P={:.4} R={:.4} F1={:.4} matched={} hyp={} ref={} pairs={} unparseable={}\n",
        score.precision,
        score.recall,
        score.f1,
        score.matched,
        score.total_hyp,
        score.total_ref,
        score.pairs.len(),
        score.unparseable
    )
}
