use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};

use amr_cli::corpus::{self, CorpusEntry};
use amr_cli::dataset;
use amr_cli::report;
use amr_cli::scoring;
use amr_core::analysis;
use amr_core::linearize::{self, LinearizationConfig};
use amr_core::smatch::{SmatchOptions, DEFAULT_RESTARTS, DEFAULT_SEED};
use amr_core::AmrGraph;

#[derive(Parser)]
#[command(
    name = "amr",
    version,
    about = "AMR graph linearization, Smatch scoring, and seq2seq dataset tooling"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Penman,
    Triple,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BucketBy {
    Depth,
    Length,
}

#[derive(Args, Clone)]
struct FormatArgs {
    /// Linearization family.
    #[arg(long, value_enum, default_value_t = Format::Penman)]
    format: Format,
    /// Keep variables (true) or strip them (false).
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    keep_variables: bool,
    /// Keep inverse roles (true) or reverse them (false; triple only).
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    keep_inverse_roles: bool,
}

impl FormatArgs {
    fn config(&self) -> Result<LinearizationConfig> {
        match self.format {
            Format::Penman => {
                if !self.keep_inverse_roles {
                    bail!("inverse roles cannot be removed from Penman encodings; use --format triple");
                }
                Ok(LinearizationConfig::penman(self.keep_variables))
            }
            Format::Triple => Ok(LinearizationConfig::triple(
                self.keep_variables,
                self.keep_inverse_roles,
            )),
        }
    }
}

#[derive(Args, Clone)]
struct ScoreArgs {
    /// Hill-climbing restarts.
    #[arg(long, default_value_t = DEFAULT_RESTARTS)]
    restarts: usize,
    /// Seed for scorer restarts. Defaults to the AMR_SEED environment
    /// variable, then to the built-in constant.
    #[arg(long)]
    seed: Option<u64>,
    /// Use the exhaustive matcher for pairs whose smaller graph has at most
    /// this many variables (0 = always hill-climb).
    #[arg(long, default_value_t = 0)]
    exact_max_vars: usize,
    /// Score stored roles as-is instead of reversing inverse roles first.
    #[arg(long)]
    no_canonicalize: bool,
}

impl ScoreArgs {
    fn options(&self) -> Result<SmatchOptions> {
        Ok(SmatchOptions {
            canonicalize_inverse_roles: !self.no_canonicalize,
            restarts: self.restarts,
            seed: resolve_seed(self.seed)?,
            max_vars: self.exact_max_vars,
            exact_max_vars: self.exact_max_vars,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Linearize corpus entries, one encoding per line.
    Encode {
        input: PathBuf,
        #[command(flatten)]
        format: FormatArgs,
        /// Write here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Skip corpus blocks that fail to parse (reported on stderr).
        #[arg(long)]
        lenient: bool,
    },
    /// Decode linearizations (one per line) into corpus blocks.
    Decode {
        input: PathBuf,
        #[command(flatten)]
        format: FormatArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Encode, decode back, and self-score every corpus entry.
    Roundtrip {
        input: PathBuf,
        #[command(flatten)]
        format: FormatArgs,
        #[command(flatten)]
        score: ScoreArgs,
        #[arg(long)]
        lenient: bool,
        /// Emit CSV instead of a table.
        #[arg(long)]
        csv: bool,
    },
    /// Score hypothesis graphs against references, micro-averaged.
    Smatch {
        /// Reference corpus (Penman blocks with metadata).
        #[arg(long)]
        refs: PathBuf,
        /// Hypothesis file: blank-line-separated blocks in the configured
        /// format.
        #[arg(long)]
        hyps: PathBuf,
        #[command(flatten)]
        format: FormatArgs,
        #[command(flatten)]
        score: ScoreArgs,
        /// Score unparseable hypotheses 0 instead of aborting.
        #[arg(long)]
        lenient: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Corpus diagnostics: bucketed scores, token distances, role census.
    Stats {
        #[arg(long)]
        refs: PathBuf,
        /// Hypotheses, required for --by bucketed scoring.
        #[arg(long)]
        hyps: Option<PathBuf>,
        /// Bucket scored pairs by reference depth or linearization length.
        #[arg(long, value_enum)]
        by: Option<BucketBy>,
        /// Length bucket width in tokens.
        #[arg(long, default_value_t = 50)]
        bucket_size: usize,
        /// Report parent-child token distances over the references.
        #[arg(long)]
        distances: bool,
        /// Report relation-role counts over the references.
        #[arg(long)]
        role_census: bool,
        /// Census after reversing inverse roles.
        #[arg(long)]
        normalized: bool,
        #[command(flatten)]
        format: FormatArgs,
        #[command(flatten)]
        score: ScoreArgs,
        #[arg(long)]
        lenient: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Build a seq2seq training file (TSV or JSONL).
    Prepare {
        input: PathBuf,
        /// Emit one Penman and one Triple record per entry, shuffled.
        #[arg(long)]
        multitask: bool,
        #[command(flatten)]
        format: FormatArgs,
        /// Shuffle seed. Defaults to AMR_SEED, then the built-in constant.
        #[arg(long)]
        seed: Option<u64>,
        /// One JSON object per line instead of TSV.
        #[arg(long)]
        jsonl: bool,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        lenient: bool,
    },
}

fn resolve_seed(cli: Option<u64>) -> Result<u64> {
    if let Some(seed) = cli {
        return Ok(seed);
    }
    match std::env::var("AMR_SEED") {
        Ok(value) => value
            .trim()
            .parse()
            .with_context(|| format!("invalid AMR_SEED value `{value}`")),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn read_entries(path: &PathBuf, lenient: bool) -> Result<Vec<CorpusEntry>> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let read = corpus::read_corpus(&text, lenient)
        .with_context(|| format!("cannot parse {}", path.display()))?;
    for skipped in &read.skipped {
        eprintln!(
            "skipped block {} of {}: {}",
            skipped.index,
            path.display(),
            skipped.message
        );
    }
    if !read.skipped.is_empty() {
        eprintln!("skipped {} block(s)", read.skipped.len());
    }
    Ok(read.entries)
}

/// Hypothesis blocks decoded under the configured format; parse failures
/// become per-pair error messages in lenient mode.
fn read_hypotheses(
    path: &PathBuf,
    config: &LinearizationConfig,
    lenient: bool,
) -> Result<Vec<Result<AmrGraph, String>>> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let mut out = Vec::new();
    for (index, block) in corpus::raw_blocks(&text).into_iter().enumerate() {
        let body = block.body.trim();
        let decoded = if body.is_empty() {
            Err("missing graph text".to_string())
        } else {
            linearize::decode(body, config).map_err(|e| e.to_string())
        };
        match decoded {
            Ok(graph) => out.push(Ok(graph)),
            Err(message) if lenient => out.push(Err(message)),
            Err(message) => bail!("hypothesis block {index}: {message}"),
        }
    }
    Ok(out)
}

fn emit(output: Option<&PathBuf>, content: &str) -> Result<()> {
    match output {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("cannot write {}", path.display()))?
        }
        None => print!("{content}"),
    }
    Ok(())
}

fn main() {
    if let Err(err) = run() {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

fn run() -> Result<()> {
    match Cli::parse().command {
        Command::Encode {
            input,
            format,
            output,
            lenient,
        } => {
            let config = format.config()?;
            let entries = read_entries(&input, lenient)?;
            let mut out = String::new();
            for entry in &entries {
                out.push_str(&linearize::encode(&entry.graph, &config));
                out.push('\n');
            }
            emit(output.as_ref(), &out)
        }
        Command::Decode {
            input,
            format,
            output,
        } => {
            let config = format.config()?;
            let text = fs::read_to_string(&input)
                .with_context(|| format!("cannot read {}", input.display()))?;
            let mut entries = Vec::new();
            for (number, line) in text.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let graph = linearize::decode(line.trim(), &config)
                    .with_context(|| format!("line {}", number + 1))?;
                let mut entry = CorpusEntry::new(graph);
                entry
                    .meta
                    .push(("id".to_string(), entries.len().to_string()));
                entries.push(entry);
            }
            emit(output.as_ref(), &corpus::write_corpus(&entries))
        }
        Command::Roundtrip {
            input,
            format,
            score,
            lenient,
            csv,
        } => {
            let config = format.config()?;
            let opts = score.options()?;
            let entries = read_entries(&input, lenient)?;
            let refs: Vec<AmrGraph> = entries.iter().map(|e| e.graph.clone()).collect();
            let hyps: Vec<Result<AmrGraph, String>> = entries
                .iter()
                .map(|entry| {
                    let encoded = linearize::encode(&entry.graph, &config);
                    linearize::decode(&encoded, &config).map_err(|e| e.to_string())
                })
                .collect();
            let corpus_score = scoring::score_corpus(&refs, &hyps, &opts)?;
            let ids: Vec<String> = entries
                .iter()
                .enumerate()
                .map(|(i, e)| corpus::entry_id(e, i))
                .collect();
            let duplicates = entries
                .iter()
                .filter(|e| e.graph.has_duplicate_concepts())
                .count();
            if csv {
                print!("{}", report::pairs_csv(&ids, &corpus_score));
            } else {
                print!("{}", report::pairs_table(&ids, &corpus_score));
            }
            println!(
                "graphs with duplicated concept labels (lossy without variables): {duplicates}"
            );
            Ok(())
        }
        Command::Smatch {
            refs,
            hyps,
            format,
            score,
            lenient,
            csv,
        } => {
            let config = format.config()?;
            let opts = score.options()?;
            let ref_entries = read_entries(&refs, false)?;
            let ref_graphs: Vec<AmrGraph> = ref_entries.iter().map(|e| e.graph.clone()).collect();
            let hyp_graphs = read_hypotheses(&hyps, &config, lenient)?;
            let corpus_score = scoring::score_corpus(&ref_graphs, &hyp_graphs, &opts)?;
            let ids: Vec<String> = ref_entries
                .iter()
                .enumerate()
                .map(|(i, e)| corpus::entry_id(e, i))
                .collect();
            if csv {
                print!("{}", report::pairs_csv(&ids, &corpus_score));
                print!("{}", report::summary_line(&corpus_score));
            } else {
                print!("{}", report::pairs_table(&ids, &corpus_score));
            }
            Ok(())
        }
        Command::Stats {
            refs,
            hyps,
            by,
            bucket_size,
            distances,
            role_census,
            normalized,
            format,
            score,
            lenient,
            csv,
        } => {
            let modes = by.is_some() as usize + distances as usize + role_census as usize;
            if modes != 1 {
                bail!("choose exactly one of --by, --distances, --role-census");
            }
            let config = format.config()?;
            let ref_entries = read_entries(&refs, lenient)?;

            if let Some(by) = by {
                let hyps =
                    hyps.ok_or_else(|| anyhow::anyhow!("--by needs --hyps to score against"))?;
                let opts = score.options()?;
                let ref_graphs: Vec<AmrGraph> =
                    ref_entries.iter().map(|e| e.graph.clone()).collect();
                let hyp_graphs = read_hypotheses(&hyps, &config, lenient)?;
                let corpus_score = scoring::score_corpus(&ref_graphs, &hyp_graphs, &opts)?;
                let keyed: Vec<(usize, amr_core::smatch::SmatchResult)> = ref_graphs
                    .iter()
                    .zip(corpus_score.pairs)
                    .map(|(reference, result)| {
                        let key = match by {
                            BucketBy::Depth => reference.depth(),
                            BucketBy::Length => {
                                analysis::token_count(&linearize::encode(reference, &config))
                                    / bucket_size.max(1)
                            }
                        };
                        (key, result)
                    })
                    .collect();
                let reports = analysis::bucket_reports(keyed);
                if csv {
                    print!("{}", report::buckets_csv(&reports));
                } else {
                    let label = match by {
                        BucketBy::Depth => "depth",
                        BucketBy::Length => "bucket",
                    };
                    print!("{}", report::buckets_table(label, &reports));
                }
            } else if distances {
                let rows: Vec<(String, analysis::DistanceReport)> = ref_entries
                    .iter()
                    .enumerate()
                    .map(|(i, entry)| {
                        (
                            corpus::entry_id(entry, i),
                            analysis::parent_child_distances(&entry.graph, &config),
                        )
                    })
                    .collect();
                if csv {
                    print!("{}", report::distances_csv(&rows));
                } else {
                    print!("{}", report::distances_table(&rows));
                }
            } else {
                let graphs: Vec<AmrGraph> = ref_entries.iter().map(|e| e.graph.clone()).collect();
                let census = analysis::role_census(&graphs, normalized);
                if csv {
                    print!("{}", report::census_csv(&census));
                } else {
                    print!("{}", report::census_table(&census));
                }
            }
            Ok(())
        }
        Command::Prepare {
            input,
            multitask,
            format,
            seed,
            jsonl,
            output,
            lenient,
        } => {
            let entries = read_entries(&input, lenient)?;
            let seed = resolve_seed(seed)?;
            let configs = if multitask {
                vec![
                    LinearizationConfig::penman(format.keep_variables),
                    LinearizationConfig::triple(format.keep_variables, format.keep_inverse_roles),
                ]
            } else {
                vec![format.config()?]
            };
            let records = dataset::build_dataset(&entries, &configs, multitask, seed)?;
            let content = if jsonl {
                dataset::to_jsonl(&records)
            } else {
                dataset::to_tsv(&records)
            };
            emit(output.as_ref(), &content)?;
            eprintln!("wrote {} record(s)", records.len());
            Ok(())
        }
    }
}
