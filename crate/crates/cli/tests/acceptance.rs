//! Acceptance suite: one test per criterion, each printing a PASS line when
//! it holds (run with `cargo test --test acceptance -- --nocapture` to see
//! them; the per-test ok/FAILED lines carry the same information).

use std::fs;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

use amr_cli::corpus;
use amr_core::analysis;
use amr_core::linearize::{self, LinearizationConfig};
use amr_core::penman::{self, PenmanConfig};
use amr_core::smatch::{self, SmatchOptions, SmatchTripleSet};
use amr_core::synth::{perturb, random_graph, SynthConfig};
use amr_core::triple::{self, TripleConfig};
use amr_core::AmrGraph;

const CHINA_PENMAN: &str = "( p / person :ARG0-of ( b / betray-01 :ARG1 ( c / country :name \" China \" ) ) :ARG1-of ( h / have-quant-91 :ARG2 ( m / many ) :ARG3 ( t / too ) ) )";

const CHINA_PENMAN_NOVAR: &str = "( person :ARG0-of ( betray-01 :ARG1 ( country :name \" China \" ) ) :ARG1-of ( have-quant-91 :ARG2 ( many ) :ARG3 ( too ) ) )";

const CHINA_TRIPLE_X_VAR_X_INVROLE: &str = "betray-01 ARG0 person | betray-01 ARG1 country | country name \" China \" | have-quant-91 ARG1 person | have-quant-91 ARG2 many | have-quant-91 ARG3 too";

const CHINA_TRIPLE_X_VAR_O_INVROLE: &str = "person ARG0-of betray-01 | betray-01 ARG1 country | country name \" China \" | person ARG1-of have-quant-91 | have-quant-91 ARG2 many | have-quant-91 ARG3 too";

const CHINA_TRIPLE_O_VAR_O_INVROLE: &str = "p instance person | b instance betray-01 | c instance country | h instance have-quant-91 | m instance many | t instance too | p ARG0-of b | b ARG1 c | c name \" China \" | p ARG1-of h | h ARG2 m | h ARG3 t";

const CHINA_TRIPLE_O_VAR_X_INVROLE: &str = "p instance person | b instance betray-01 | c instance country | h instance have-quant-91 | m instance many | t instance too | b ARG0 p | b ARG1 c | c name \" China \" | h ARG1 p | h ARG2 m | h ARG3 t";

const FIG2_PENMAN: &str = r#"(s / seem-01 :polarity -
        :ARG1 (s2 / see-01
            :ARG0 w
            :ARG1 (p / person
                    :mod (a / any)
                    :mod (n / nutter)
                    :ARG0-of (d / dig-01)
                    :ARG0-of (a2 / acknowledge-01
                        :ARG1 (t / thing
                                :ARG1-of (t2 / true-01
                                    :location (i / it))))))
        :ARG2 (w / we)
        :time (e / ever))"#;

fn china() -> AmrGraph {
    penman::parse(CHINA_PENMAN).expect("golden source parses")
}

fn fig2() -> AmrGraph {
    penman::parse(FIG2_PENMAN).expect("golden source parses")
}

fn triple_config(keep_variables: bool, keep_inverse_roles: bool) -> TripleConfig {
    TripleConfig {
        keep_variables,
        keep_inverse_roles,
    }
}

/// Golden encodings: the China graph reproduces all four triple strings
/// (header-corrected) and the variable-free Penman string token-for-token,
/// in under a second.
#[test]
fn golden_encodings() {
    let start = Instant::now();
    let g = china();

    assert_eq!(
        triple::encode(&g, &triple_config(false, false)),
        CHINA_TRIPLE_X_VAR_X_INVROLE
    );
    assert_eq!(
        triple::encode(&g, &triple_config(false, true)),
        CHINA_TRIPLE_X_VAR_O_INVROLE
    );
    assert_eq!(
        triple::encode(&g, &triple_config(true, true)),
        CHINA_TRIPLE_O_VAR_O_INVROLE
    );
    assert_eq!(
        triple::encode(&g, &triple_config(true, false)),
        CHINA_TRIPLE_O_VAR_X_INVROLE
    );
    assert_eq!(
        penman::serialize(
            &g,
            &PenmanConfig {
                keep_variables: false
            }
        ),
        CHINA_PENMAN_NOVAR
    );
    // And the with-variables serialization is a fixpoint of the source text.
    assert_eq!(
        penman::serialize(
            &g,
            &PenmanConfig {
                keep_variables: true
            }
        ),
        CHINA_PENMAN
    );

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("ACCEPTANCE golden_encodings: PASS ({elapsed:?})");
}

/// Round-trip: decode(encode(g)) scores exact-Smatch F1 = 1.0 under both
/// variable-keeping triple configs for the two paper graphs and 1,000
/// seeded random graphs of up to 12 nodes.
#[test]
fn round_trip_f1_is_one() {
    let start = Instant::now();
    let opts = SmatchOptions {
        max_vars: 12,
        ..SmatchOptions::default()
    };
    let configs = [triple_config(true, true), triple_config(true, false)];

    let mut graphs = vec![fig2(), china()];
    let synth = SynthConfig::default(); // up to 12 variables
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    graphs.extend((0..1000).map(|_| random_graph(&mut rng, &synth)));

    for (index, graph) in graphs.iter().enumerate() {
        for config in &configs {
            let decoded = triple::decode(&triple::encode(graph, config), config)
                .unwrap_or_else(|e| panic!("graph {index} failed to decode: {e}"));
            let score = smatch::exact(graph, &decoded, &opts).expect("within variable budget");
            assert_eq!(
                score.f1,
                1.0,
                "graph {index} under {} scored {}",
                config.model_name(),
                score.f1
            );
        }
    }
    println!(
        "ACCEPTANCE round_trip_f1_is_one: PASS ({} graphs, {:?})",
        graphs.len(),
        start.elapsed()
    );
}

/// Inverse-role elimination: normalization leaves no non-exempt `-of`
/// roles, reproduces the reversed triples of the running example, and
/// strictly shrinks the distinct-role census on corpora containing
/// inverse roles.
#[test]
fn inverse_roles_are_eliminated() {
    let g = fig2();
    let normalized = g.normalize_inverse_roles().expect("no inverse attributes");
    assert!(normalized.edges().iter().all(|e| !e.role.is_inverse()));

    let encoded = triple::encode(&g, &triple_config(true, false));
    for needle in ["d ARG0 p", "a2 ARG0 p", "t2 ARG1 t"] {
        assert!(encoded.contains(needle), "missing `{needle}` in {encoded}");
    }

    // Distinct-role census strictly decreases on any corpus with inverse
    // roles (the training-data 155 -> 115 reduction is not reproducible
    // without the licensed corpus; this property replaces it).
    let corpus = vec![fig2(), china()];
    let raw = analysis::role_census(&corpus, false);
    let normalized_census = analysis::role_census(&corpus, true);
    assert!(
        normalized_census.len() < raw.len(),
        "census must strictly shrink: {} vs {}",
        normalized_census.len(),
        raw.len()
    );
    println!("ACCEPTANCE inverse_roles_are_eliminated: PASS");
}

/// Oracle agreement: restart hill-climbing equals the exhaustive matcher on
/// at least 95% of 1,000 random pairs with at most 6 variables, never
/// exceeds it, and finishes within a minute.
#[test]
fn hill_climb_agrees_with_the_oracle() {
    let start = Instant::now();
    let synth = SynthConfig {
        max_variables: 6,
        ..SynthConfig::default()
    };
    let opts = SmatchOptions::default(); // 4 restarts, fixed seed
    let mut rng = ChaCha8Rng::seed_from_u64(97);

    let mut agree = 0usize;
    const PAIRS: usize = 1000;
    for index in 0..PAIRS {
        let reference = random_graph(&mut rng, &synth);
        // Half the pairs are perturbed copies (parser-like hypotheses), half
        // are independent graphs (the harder matching problems).
        let hypothesis = if index % 2 == 0 {
            perturb(&mut rng, &reference)
        } else {
            random_graph(&mut rng, &synth)
        };
        let exact = smatch::exact(&reference, &hypothesis, &opts).expect("within budget");
        let climbed = smatch::hill_climb(&reference, &hypothesis, &opts);
        assert!(
            climbed.matched <= exact.matched,
            "pair {index}: hill-climb {} exceeded exact {}",
            climbed.matched,
            exact.matched
        );
        if climbed.matched == exact.matched {
            agree += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(
        agree * 100 >= PAIRS * 95,
        "agreement {agree}/{PAIRS} below 95%"
    );
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    println!(
        "ACCEPTANCE hill_climb_agrees_with_the_oracle: PASS ({agree}/{PAIRS} agree, {elapsed:?})"
    );
}

/// Derived score check: China versus China minus the (h, ARG3, t) edge
/// scores F1 = 24/25 = 0.96 exactly under both matchers.
#[test]
fn derived_score_check() {
    let reference = SmatchTripleSet::of_graph(&china());
    let mut hypothesis = reference.clone();
    hypothesis.relations.retain(|(s, role, t)| {
        !(s.as_str() == "h" && role.as_str() == "ARG3" && t.as_str() == "t")
    });
    assert_eq!(hypothesis.len(), 12);

    let opts = SmatchOptions::default();
    let exact = smatch::exact_sets(&reference, &hypothesis, &opts).expect("within budget");
    assert_eq!(exact.precision, 1.0);
    assert_eq!(exact.recall, 12.0 / 13.0);
    assert_eq!(exact.f1, 24.0 / 25.0);

    let climbed = smatch::hill_climb_sets(&reference, &hypothesis, &opts);
    assert_eq!(climbed.f1, 24.0 / 25.0);
    println!("ACCEPTANCE derived_score_check: PASS");
}

/// Adjacency: across 1,000 random graphs every triple encoding keeps each
/// edge's source and target within two token positions, while Penman on the
/// Figure 2 graph pushes a parent-child pair beyond 20 tokens.
#[test]
fn triple_encodings_keep_parents_adjacent() {
    let start = Instant::now();
    let synth = SynthConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    let configs = [
        LinearizationConfig::triple(true, true),
        LinearizationConfig::triple(true, false),
        LinearizationConfig::triple(false, true),
        LinearizationConfig::triple(false, false),
    ];
    for index in 0..1000 {
        let graph = random_graph(&mut rng, &synth);
        for config in &configs {
            let report = analysis::parent_child_distances(&graph, config);
            assert!(
                report.max <= 2,
                "graph {index} under {} has distance {}",
                config.model_name(),
                report.max
            );
        }
    }

    let penman_report =
        analysis::parent_child_distances(&fig2(), &LinearizationConfig::penman(true));
    assert!(
        penman_report.max > 20,
        "expected a distant parent-child pair, got {}",
        penman_report.max
    );
    println!(
        "ACCEPTANCE triple_encodings_keep_parents_adjacent: PASS (penman max {}, {:?})",
        penman_report.max,
        start.elapsed()
    );
}

/// Dataset determinism: the same corpus and seed produce byte-identical
/// multi-task files with exactly two records per entry.
#[test]
fn dataset_preparation_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let synth = SynthConfig {
        min_variables: 2,
        max_variables: 8,
        ..SynthConfig::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut entries = Vec::new();
    for i in 0..25 {
        let graph = random_graph(&mut rng, &synth);
        let mut entry = corpus::CorpusEntry::new(graph);
        entry.meta.push(("id".to_string(), format!("synth.{i}")));
        entry
            .meta
            .push(("snt".to_string(), format!("Synthetic sentence {i}.")));
        entries.push(entry);
    }
    let corpus_path = dir.path().join("synth.amr");
    fs::write(&corpus_path, corpus::write_corpus(&entries)).unwrap();

    let run = |seed: &str| {
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_amr"))
            .args(["prepare", corpus_path.to_str().unwrap(), "--multitask"])
            .args(["--seed", seed])
            .env_remove("AMR_SEED")
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    let first = run("42");
    let second = run("42");
    assert_eq!(first, second, "same seed must be byte-identical");
    assert_eq!(first.lines().count(), 2 * entries.len());
    println!("ACCEPTANCE dataset_preparation_is_deterministic: PASS");
}

/// Substitute for the non-reproducible trained-model tables: `stats`
/// produces correctly bucketed CSV on synthetic prediction files, with
/// bucket counts summing to the corpus size.
#[test]
fn stats_buckets_synthetic_predictions() {
    let dir = TempDir::new().unwrap();
    let synth = SynthConfig {
        min_variables: 2,
        max_variables: 8,
        ..SynthConfig::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut entries = Vec::new();
    let mut predictions = Vec::new();
    for i in 0..40 {
        let graph = random_graph(&mut rng, &synth);
        let prediction = perturb(&mut rng, &graph);
        let mut entry = corpus::CorpusEntry::new(graph);
        entry.meta.push(("id".to_string(), format!("synth.{i}")));
        entry
            .meta
            .push(("snt".to_string(), format!("Synthetic sentence {i}.")));
        entries.push(entry);
        predictions.push(linearize::encode(
            &prediction,
            &LinearizationConfig::penman(true),
        ));
    }
    let refs_path = dir.path().join("refs.amr");
    fs::write(&refs_path, corpus::write_corpus(&entries)).unwrap();
    let hyps_path = dir.path().join("hyps.amr");
    fs::write(&hyps_path, predictions.join("\n\n") + "\n").unwrap();

    for by in ["depth", "length"] {
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_amr"))
            .args(["stats", "--refs", refs_path.to_str().unwrap()])
            .args(["--hyps", hyps_path.to_str().unwrap()])
            .args(["--by", by, "--bucket-size", "50", "--csv"])
            .output()
            .unwrap();
        assert!(out.status.success());
        let text = String::from_utf8(out.stdout).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "bucket_key,count,precision,recall,f1"
        );
        let mut total = 0usize;
        for line in lines {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields.len(), 5);
            total += fields[1].parse::<usize>().unwrap();
            let f1: f64 = fields[4].parse().unwrap();
            assert!((0.0..=1.0).contains(&f1));
        }
        assert_eq!(
            total,
            entries.len(),
            "bucket counts must sum to corpus size"
        );
    }
    println!("ACCEPTANCE stats_buckets_synthetic_predictions: PASS");
}
