use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::Path;

use anyhow::{anyhow, Context};
use triad_balance::generate::random_signed_digraph_m;
use triad_balance::labeler::SAMPLE_NEGATIONS;
use triad_balance::metrics::descriptive_stats;
use triad_balance::oracle::{brute_force_balance, brute_force_census};
use triad_balance::records::{read_edgelist, read_jsonl, write_edgelist};
use triad_balance::report::{
    balance_csv, balance_json, balance_table, census_json, census_table, stats_csv, stats_json,
    stats_table,
};
use triad_balance::{
    build_graph, drop_neutral, full_census, label_survey_edges, network_balance, prune,
    with_threads, AliasMap, Error, Lexicon, Payload, PruneOptions, RawEdgeRecord, SignedDigraph,
    TextLabeler,
};

use crate::{AnalyzeArgs, Cli, Command, Format, GenerateArgs, GraphArgs, LabelArgs, Output};

const USAGE: u8 = 2;
const ANALYSIS: u8 = 1;

pub struct Failure {
    pub status: u8,
    pub error: anyhow::Error,
}

type Outcome<T = ()> = Result<T, Failure>;

fn usage(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        status: USAGE,
        error: error.into(),
    }
}

fn analysis(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        status: ANALYSIS,
        error: error.into(),
    }
}

/// Input and parsing problems are usage errors; everything else raised by
/// the library is an analysis failure.
fn classify(error: Error, path: &Path) -> Failure {
    let status = match error {
        Error::Io(_) | Error::Csv(_) | Error::Json(_) | Error::MalformedLine { .. } => USAGE,
        _ => ANALYSIS,
    };
    Failure {
        status,
        error: anyhow::Error::new(error).context(path.display().to_string()),
    }
}

fn open(path: &Path) -> Outcome<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .with_context(|| format!("cannot open {}", path.display()))
        .map_err(usage)
}

fn is_jsonl(path: &Path) -> bool {
    matches!(
        path.extension().and_then(|e| e.to_str()),
        Some("jsonl" | "json" | "ndjson")
    )
}

fn emit(out: &Output, body: &str) -> Outcome {
    match &out.output {
        Some(path) => std::fs::write(path, body)
            .with_context(|| format!("cannot write {}", path.display()))
            .map_err(usage),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .and_then(|_| stdout.flush())
                .context("cannot write to stdout")
                .map_err(usage)
        }
    }
}

pub fn dispatch(cli: Cli) -> Outcome {
    let threads = cli.threads;
    if threads == Some(0) {
        return Err(usage(anyhow!("--threads must be at least 1")));
    }
    with_threads(threads, move || match cli.command {
        Command::Label(args) => label(&args),
        Command::Analyze(args) => analyze(&args),
        Command::Census(args) => census(&args),
        Command::Stats(args) => stats(&args),
        Command::OracleCheck(args) => oracle_check(&args),
        Command::Generate(args) => generate(&args),
    })
    .map_err(analysis)?
}

fn load_lexicon(source: &str, negations: Option<&Path>) -> Outcome<Lexicon> {
    let mut lex = match source {
        "builtin:sentiment" => Lexicon::sample_sentiment(),
        "builtin:virtue-vice" => Lexicon::sample_virtue_vice(),
        path => {
            let path = Path::new(path);
            let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("lexicon");
            let mut lex = Lexicon::from_tsv(name, open(path)?).map_err(|e| classify(e, path))?;
            lex.load_negations(SAMPLE_NEGATIONS.as_bytes())
                .expect("bundled negations parse");
            lex
        }
    };
    if let Some(path) = negations {
        lex.clear_negations();
        lex.load_negations(open(path)?).map_err(|e| classify(e, path))?;
    }
    Ok(lex)
}

fn label(args: &LabelArgs) -> Outcome {
    let records = read_jsonl(open(&args.input)?).map_err(|e| classify(e, &args.input))?;
    let labeled: Vec<RawEdgeRecord> = if args.survey {
        label_survey_edges(&records, args.threshold)
            .map_err(|e| classify(e, &args.input))?
            .into_iter()
            .map(|e| {
                let rec = RawEdgeRecord::score(e.source(), e.target(), e.weight());
                match e.timestamp() {
                    Some(t) => rec.with_timestamp(t),
                    None => rec,
                }
            })
            .collect()
    } else {
        let source = args.lexicon.as_deref().expect("clap enforces --lexicon");
        let mut labeler = TextLabeler::new(load_lexicon(source, args.negations.as_deref())?);
        labeler.strip_marker = args.strip_quoted.clone();
        labeler.tagged = args.tagged;
        labeler.label(&records).map_err(|e| classify(e, &args.input))?
    };
    let mut buf = Vec::new();
    write_edgelist(&mut buf, &labeled).map_err(|e| classify(e, &args.input))?;
    emit(&args.out, &String::from_utf8(buf).expect("edgelist is utf-8"))
}

fn read_records(path: &Path) -> Outcome<Vec<RawEdgeRecord>> {
    let reader = open(path)?;
    let records = if is_jsonl(path) {
        read_jsonl(reader)
    } else {
        read_edgelist(reader)
    }
    .map_err(|e| classify(e, path))?;
    if let Some(index) = records.iter().position(|r| !matches!(r.payload, Payload::Score(_))) {
        return Err(usage(anyhow!(
            "{}: record {index} carries a {} payload; run `triadbal label` first",
            path.display(),
            records[index].payload.kind()
        )));
    }
    Ok(records)
}

/// Reads, aliases, drops neutral edges, aggregates and prunes.
fn prepare(args: &GraphArgs) -> Outcome<SignedDigraph> {
    let mut records = read_records(&args.input)?;
    if let Some(path) = &args.alias_map {
        let aliases = AliasMap::from_tsv(open(path)?).map_err(|e| classify(e, path))?;
        aliases.apply(&mut records);
    }
    let edges = drop_neutral(&records).map_err(|e| classify(e, &args.input))?;
    let graph = build_graph(edges, args.policy).map_err(|e| classify(e, &args.input))?;
    let opts = if args.no_prune {
        PruneOptions::NONE
    } else {
        PruneOptions {
            pendants: !args.no_prune_pendants,
            ..PruneOptions::ALL
        }
    };
    let graph = prune(&graph, opts);
    if let Some(path) = &args.dot {
        std::fs::write(path, graph.to_dot())
            .with_context(|| format!("cannot write {}", path.display()))
            .map_err(usage)?;
    }
    Ok(graph)
}

fn analyze(args: &AnalyzeArgs) -> Outcome {
    let graph = prepare(&args.graph)?;
    let report = network_balance(&graph);
    if args.strict && report.triad_count() == 0 {
        return Err(analysis(anyhow!(
            "{}: no transitive triads (030T, 120D, 120U, 300) in the prepared graph",
            args.graph.input.display()
        )));
    }
    let body = match args.graph.format {
        Format::Json => balance_json(&report),
        Format::Csv => balance_csv(&report),
        Format::Table => balance_table(&report),
    };
    emit(&args.graph.out, &body)
}

fn census(args: &GraphArgs) -> Outcome {
    let table = full_census(&prepare(args)?);
    let body = match args.format {
        Format::Json => census_json(&table),
        Format::Csv => table.to_csv(),
        Format::Table => census_table(&table),
    };
    emit(&args.out, &body)
}

fn stats(args: &GraphArgs) -> Outcome {
    let stats = descriptive_stats(&prepare(args)?);
    let body = match args.format {
        Format::Json => stats_json(&stats),
        Format::Csv => stats_csv(&stats),
        Format::Table => stats_table(&stats),
    };
    emit(&args.out, &body)
}

fn oracle_check(args: &GraphArgs) -> Outcome {
    let graph = prepare(args)?;
    let census_ref = brute_force_census(&graph).map_err(|e| classify(e, &args.input))?;
    let balance_ref = brute_force_balance(&graph).map_err(|e| classify(e, &args.input))?;
    let census_ok = full_census(&graph) == census_ref;
    let fast = network_balance(&graph);
    let balance_ok = fast == balance_ref;
    let verdict = |ok: bool| if ok { "ok" } else { "MISMATCH" };
    let mut body = format!(
        "census: {}\nbalance: {}\n",
        verdict(census_ok),
        verdict(balance_ok)
    );
    if !balance_ok {
        body.push_str("--- production\n");
        body.push_str(&balance_json(&fast));
        body.push_str("--- reference\n");
        body.push_str(&balance_json(&balance_ref));
    }
    emit(&args.out, &body)?;
    if census_ok && balance_ok {
        Ok(())
    } else {
        Err(analysis(anyhow!("engines disagree on {}", args.input.display())))
    }
}

fn generate(args: &GenerateArgs) -> Outcome {
    let max = args.nodes.saturating_mul(args.nodes.saturating_sub(1));
    if args.edges > max {
        return Err(usage(anyhow!("{} edges do not fit on {} nodes", args.edges, args.nodes)));
    }
    if !(0.0..=1.0).contains(&args.positive) {
        return Err(usage(anyhow!("--positive must lie in [0, 1]")));
    }
    let g = random_signed_digraph_m(args.nodes, args.edges, args.positive, args.seed);
    let records: Vec<RawEdgeRecord> = g
        .edges()
        .map(|(s, t, w)| RawEdgeRecord::score(g.name(s), g.name(t), w))
        .collect();
    let mut buf = Vec::new();
    write_edgelist(&mut buf, &records).map_err(analysis)?;
    emit(&args.out, &String::from_utf8(buf).expect("edgelist is utf-8"))
}
