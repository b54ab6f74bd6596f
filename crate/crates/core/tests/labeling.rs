use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use triad_balance::labeler::{tokenize_tagged, DEFAULT_TRUST_THRESHOLD};
use triad_balance::records::read_jsonl;
use triad_balance::{
    drop_neutral, label_survey_edges, label_text_edges, score_document, with_threads, Error,
    Lexicon, Payload, RawEdgeRecord, TextLabeler,
};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn messages() -> Vec<RawEdgeRecord> {
    read_jsonl(BufReader::new(File::open(fixture("messages.jsonl")).unwrap())).unwrap()
}

fn golden() -> Vec<(String, String, i64, u32)> {
    let mut rdr = csv::Reader::from_path(fixture("golden_scores.csv")).unwrap();
    rdr.deserialize().map(|r| r.unwrap()).collect()
}

fn score_of(r: &RawEdgeRecord) -> f64 {
    match r.payload {
        Payload::Score(s) => s,
        ref other => panic!("unexpected payload {other:?}"),
    }
}

#[test]
fn golden_scores_are_exact() {
    let labeled = label_text_edges(&messages(), &Lexicon::sample_sentiment()).unwrap();
    let expected = golden();
    assert_eq!(labeled.len(), expected.len());
    for (rec, (s, t, sum, sentences)) in labeled.iter().zip(&expected) {
        assert_eq!((&rec.source, &rec.target), (s, t));
        let want = if *sentences == 0 { 0.0 } else { *sum as f64 / *sentences as f64 };
        assert_eq!(score_of(rec), want, "{s}->{t}");
    }
}

#[test]
fn labeled_order_and_timestamps_survive() {
    let input = messages();
    let labeled = label_text_edges(&input, &Lexicon::sample_sentiment()).unwrap();
    for (a, b) in input.iter().zip(&labeled) {
        assert_eq!(a.timestamp, b.timestamp);
    }
}

#[test]
fn zero_scores_are_dropped_as_neutral() {
    let labeled = label_text_edges(&messages(), &Lexicon::sample_sentiment()).unwrap();
    let nonzero = golden().iter().filter(|g| g.2 != 0).count();
    let edges = drop_neutral(&labeled).unwrap();
    assert_eq!(edges.len(), nonzero);
}

#[test]
fn scores_stay_in_unit_interval() {
    let lex = Lexicon::sample_sentiment();
    for rec in messages() {
        let Payload::Text(text) = &rec.payload else { unreachable!() };
        let s = score_document(text, &lex);
        assert!((-1.0..=1.0).contains(&s));
    }
}

#[test]
fn labeling_is_deterministic_and_chunk_independent() {
    let lex = Lexicon::sample_sentiment();
    let input = messages();
    let whole = label_text_edges(&input, &lex).unwrap();
    let single = with_threads(Some(1), || label_text_edges(&input, &lex).unwrap()).unwrap();
    assert_eq!(whole, single);
    for size in [1, 3, 7] {
        let chunked: Vec<_> = input
            .chunks(size)
            .flat_map(|c| label_text_edges(c, &lex).unwrap())
            .collect();
        assert_eq!(chunked, whole);
    }
}

#[test]
fn negation_flips_and_ties_are_neutral() {
    let lex = Lexicon::sample_sentiment();
    assert_eq!(score_document("This is good.", &lex), 1.0);
    assert_eq!(score_document("This is not good.", &lex), -1.0);
    assert_eq!(score_document("Not bad.", &lex), 1.0);
    assert_eq!(score_document("Good and bad.", &lex), 0.0);
    assert_eq!(score_document("Not good and not bad.", &lex), 0.0);
}

#[test]
fn pos_specific_entries_need_tags() {
    let lex = Lexicon::sample_sentiment();
    let plain = TextLabeler::new(lex.clone());
    let mut tagged = TextLabeler::new(lex);
    tagged.tagged = true;
    assert_eq!(plain.score("I like it."), 0.0);
    assert_eq!(tagged.score("I/PRP like/VB it/PRP ./."), 1.0);
    assert_eq!(tagged.score("things/NNS like/IN that/DT ./."), 0.0);
    assert_eq!(tokenize_tagged("a/DT b/NN ./. c/NN").len(), 2);
}

#[test]
fn quoted_threads_are_ignored_when_asked() {
    let mut labeler = TextLabeler::new(Lexicon::sample_sentiment());
    let text = "Thanks, great.\n-----Original Message-----\nThis is terrible and awful.";
    labeler.strip_marker = Some("-----Original Message-----".into());
    assert_eq!(labeler.score(text), 1.0);
}

#[test]
fn virtue_vice_lexicon() {
    let lex = Lexicon::sample_virtue_vice();
    assert_eq!(score_document("They were honest and fair with us.", &lex), 1.0);
    assert_eq!(score_document("Do not cheat.", &lex), 1.0);
    assert_eq!(score_document("That was a fraud to harm people.", &lex), -1.0);
}

#[test]
fn survey_threshold() {
    let records = read_jsonl(BufReader::new(File::open(fixture("ratings.jsonl")).unwrap())).unwrap();
    let edges = label_survey_edges(&records, DEFAULT_TRUST_THRESHOLD).unwrap();
    for (rec, edge) in records.iter().zip(&edges) {
        let Payload::Rating(r) = rec.payload else { unreachable!() };
        let expected = if r >= 3 { 1.0 } else { -1.0 };
        assert_eq!(edge.weight(), expected, "rating {r}");
    }
    for rating in [0, 6, -1] {
        let bad = [RawEdgeRecord::new("a", "b", Payload::Rating(rating))];
        assert!(matches!(
            label_survey_edges(&bad, 3),
            Err(Error::RatingOutOfRange { index: 0, .. })
        ));
    }
    let text = [RawEdgeRecord::new("a", "b", Payload::Text("hi".into()))];
    assert!(matches!(label_survey_edges(&text, 3), Err(Error::PayloadKind { .. })));
}
