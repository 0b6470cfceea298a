use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn lexsent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lexsent"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Fixture {
        let f = Fixture {
            dir: TempDir::new().unwrap(),
        };
        f.file(
            "lex.tsv",
            "хороший\t3\nплохой\t-3\nотличный\t4\nужасный\t-4\n",
        );
        f.file("modifiers.tsv", "очень\t0.25\n");
        f.file("negations.txt", "не\n");
        f.file("irrealis.txt", "бы\n");
        f.file(
            "corpus.jsonl",
            concat!(
                "{\"id\":\"1\",\"text\":\"Очень хороший фильм.\",\"label\":\"positive\"}\n",
                "{\"id\":\"2\",\"text\":\"Плохой фильм.\",\"label\":\"negative\"}\n",
                "{\"id\":\"3\",\"text\":\"Фильм идёт.\",\"label\":\"neutral\"}\n",
                "{\"id\":\"4\",\"text\":\"Ужасный сюжет.\",\"label\":\"negative\"}\n",
                "{\"id\":\"5\",\"text\":\"Отличный финал!\",\"label\":\"positive\"}\n",
                "{\"id\":\"6\",\"text\":\"Зал был полон.\",\"label\":\"neutral\"}\n",
            ),
        );
        f
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn p(&self, name: &str) -> String {
        self.path(name).to_string_lossy().into_owned()
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let p = self.path(name);
        fs::write(&p, contents).unwrap();
        p
    }

    fn read(&self, name: &str) -> String {
        fs::read_to_string(self.path(name)).unwrap()
    }

    fn json(&self, name: &str) -> Value {
        serde_json::from_str(&self.read(name)).unwrap()
    }

    fn markers(&self) -> Vec<String> {
        vec![
            "--modifiers".into(),
            self.p("modifiers.tsv"),
            "--negations".into(),
            self.p("negations.txt"),
            "--irrealis".into(),
            self.p("irrealis.txt"),
        ]
    }

    fn run(&self, args: &[&str], with_markers: bool) -> Output {
        let mut all: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        if with_markers {
            all.extend(self.markers());
        }
        let refs: Vec<&str> = all.iter().map(String::as_str).collect();
        lexsent(&refs)
    }
}

fn snapshot(dir: &Path) -> Vec<(PathBuf, Vec<u8>)> {
    let mut v: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.is_file())
        .map(|p| {
            let bytes = fs::read(&p).unwrap();
            (p, bytes)
        })
        .collect();
    v.sort();
    v
}

fn jsonl_labels(text: &str) -> Vec<(String, String)> {
    text.lines()
        .map(|l| {
            let v: Value = serde_json::from_str(l).unwrap();
            (
                v["id"].as_str().unwrap().to_string(),
                v["label"].as_str().unwrap().to_string(),
            )
        })
        .collect()
}

#[test]
fn lexicon_clean_counts_latin_entries() {
    let f = Fixture::new();
    f.file("mixed.tsv", "хороший\t3\ngood\t2\nплохой\t0\n");
    let out = f.run(
        &[
            "lexicon",
            "clean",
            "--lexicon",
            &f.p("mixed.tsv"),
            "--out",
            &f.p("clean"),
        ],
        false,
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report = f.read("clean/mixed.report.tsv");
    let latin: usize = report
        .lines()
        .find_map(|l| l.strip_prefix("latin\t"))
        .unwrap()
        .parse()
        .unwrap();
    assert!(latin >= 1);
    assert_eq!(f.read("clean/mixed.tsv"), "хороший\t3\n");
}

#[test]
fn lexicon_stats_of_empty_lexicon_is_a_zero_row() {
    let f = Fixture::new();
    f.file("empty.tsv", "");
    let out = f.run(&["lexicon", "stats", "--lexicon", &f.p("empty.tsv")], false);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "Lexicon\tTotal\tPositive #\tPositive %\tNegative #\tNegative %\nempty\t0\t0\t—\t0\t—\n"
    );
}

#[test]
fn lexicon_stats_writes_json_and_tsv() {
    let f = Fixture::new();
    let out = f.run(
        &[
            "lexicon",
            "stats",
            "--lexicon",
            &f.p("lex.tsv"),
            "--out",
            &f.p("stats.json"),
        ],
        false,
    );
    assert_eq!(code(&out), 0);
    assert_eq!(f.json("stats.json")[0]["total"], 4);
    assert!(f.read("stats.tsv").contains("lex\t4\t2\t50.0%\t2\t50.0%"));
}

#[test]
fn lexicon_format_error_reports_line() {
    let f = Fixture::new();
    f.file("bad.tsv", "хороший\t3\nплохой\tminus\n");
    let out = f.run(&["lexicon", "stats", "--lexicon", &f.p("bad.tsv")], false);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
    assert!(stderr(&out).contains("bad.tsv"));
}

#[test]
fn lexicon_combine_nine_toy_lexicons() {
    let f = Fixture::new();
    let vocab = [
        "добрый",
        "злой",
        "милый",
        "гадкий",
        "смелый",
        "трусливый",
        "яркий",
        "тусклый",
        "тёплый",
        "холодный",
    ];
    let mut paths = Vec::new();
    let mut memberships: Vec<BTreeSet<&str>> = Vec::new();
    for i in 0..9 {
        // lexicon i holds every word whose index is at most i + 1
        let mut text = String::new();
        let mut keys = BTreeSet::new();
        for (j, w) in vocab.iter().enumerate() {
            if j <= i + 1 {
                let weight = if j % 2 == 0 { 2 } else { -2 };
                text.push_str(&format!("{w}\t{weight}\n"));
                keys.insert(*w);
            }
        }
        let name = format!("src{i}.tsv");
        f.file(&name, &text);
        paths.push(f.p(&name));
        memberships.push(keys);
    }
    let mut args = vec![
        "lexicon".to_string(),
        "combine".into(),
        "--out".into(),
        f.p("combined"),
    ];
    for p in &paths {
        args.push("--lexicon".into());
        args.push(p.clone());
    }
    let out = f.run(&args.iter().map(String::as_str).collect::<Vec<_>>(), false);
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    let stats = f.json("combined/stats.json");
    let totals: Vec<u64> = stats
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["total"].as_u64().unwrap())
        .collect();
    assert_eq!(totals.len(), 9);
    assert!(totals.windows(2).all(|w| w[0] >= w[1]));
    for n in 1..=9 {
        let content = f.read(&format!("combined/Lex{n}.tsv"));
        let got: BTreeSet<String> = content
            .lines()
            .map(|l| l.split('\t').next().unwrap().to_string())
            .collect();
        let expected: BTreeSet<String> = vocab
            .iter()
            .filter(|w| memberships.iter().filter(|m| m.contains(*w)).count() >= n)
            .map(|w| w.replace('ё', "е"))
            .collect();
        assert_eq!(got, expected, "Lex{n}");
        assert_eq!(totals[n - 1] as usize, expected.len());
    }
    assert!(f
        .read("combined/stats.tsv")
        .starts_with("Lexicon\tTotal\tPositive #"));
}

fn classify_args(f: &Fixture, engine: &str) -> Vec<String> {
    vec![
        "classify".into(),
        "--engine".into(),
        engine.into(),
        "--lexicon".into(),
        f.p("lex.tsv"),
        "--corpus".into(),
        f.p("corpus.jsonl"),
        "--fallback-tokenize".into(),
    ]
}

fn run_owned(f: &Fixture, args: Vec<String>, extra: &[&str]) -> Output {
    let mut all = args;
    all.extend(extra.iter().map(|s| s.to_string()));
    all.extend(f.markers());
    lexsent(&all.iter().map(String::as_str).collect::<Vec<_>>())
}

#[test]
fn classify_socal_covers_corpus() {
    let f = Fixture::new();
    let out = run_owned(
        &f,
        classify_args(&f, "socal"),
        &[
            "--t-pos",
            "0.5",
            "--t-neg",
            "-0.5",
            "--out",
            &f.p("p.jsonl"),
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let preds = jsonl_labels(&f.read("p.jsonl"));
    let ids: Vec<&str> = preds.iter().map(|(id, _)| id.as_str()).collect();
    assert_eq!(ids, ["1", "2", "3", "4", "5", "6"]);
    let labels: Vec<&str> = preds.iter().map(|(_, l)| l.as_str()).collect();
    assert_eq!(
        labels,
        ["positive", "negative", "neutral", "negative", "positive", "neutral"]
    );

    let eval = lexsent(&[
        "eval",
        "--corpus",
        &f.p("corpus.jsonl"),
        "--predictions",
        &f.p("p.jsonl"),
    ]);
    assert_eq!(code(&eval), 0, "{}", stderr(&eval));
}

#[test]
fn classify_is_byte_identical_across_runs() {
    let f = Fixture::new();
    let a = run_owned(
        &f,
        classify_args(&f, "socal"),
        &["--t-pos", "0.5", "--t-neg", "-0.5", "--verbose"],
    );
    let b = run_owned(
        &f,
        classify_args(&f, "socal"),
        &["--t-pos", "0.5", "--t-neg", "-0.5", "--verbose"],
    );
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let first: Value = serde_json::from_str(stdout(&a).lines().next().unwrap()).unwrap();
    assert_eq!(first["system"], "socal");
    assert_eq!(first["score"]["value"], 3.75);
}

#[test]
fn classify_sentistrength_needs_thresholds() {
    let f = Fixture::new();
    let out = run_owned(&f, classify_args(&f, "sentistrength"), &[]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("tune"), "{}", stderr(&out));
    let half = run_owned(&f, classify_args(&f, "sentistrength"), &["--k", "1"]);
    assert_eq!(code(&half), 2);
}

#[test]
fn classify_sentistrength_with_flags() {
    let f = Fixture::new();
    let out = run_owned(
        &f,
        classify_args(&f, "sentistrength"),
        &["--k-neut", "0.6", "--k", "1.1", "--verbose"],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let first: Value = serde_json::from_str(stdout(&out).lines().next().unwrap()).unwrap();
    assert_eq!(first["label"], "positive");
    assert_eq!(first["score"]["s_pos"], 4);
}

#[test]
fn classify_rejects_invalid_thresholds() {
    let f = Fixture::new();
    let out = run_owned(
        &f,
        classify_args(&f, "socal"),
        &["--t-pos", "-1", "--t-neg", "1"],
    );
    assert_eq!(code(&out), 2);
}

#[test]
fn classify_without_annotation_or_fallback_fails() {
    let f = Fixture::new();
    let out = lexsent(&[
        "classify",
        "--engine",
        "socal",
        "--lexicon",
        &f.p("lex.tsv"),
        "--corpus",
        &f.p("corpus.jsonl"),
        "--t-pos",
        "1",
        "--t-neg",
        "-1",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("--fallback-tokenize"));
}

#[test]
fn classify_uses_annotated_documents() {
    let f = Fixture::new();
    f.file(
        "docs.conll",
        concat!(
            "# doc = a\n",
            "1\tХорошие\tхороший\tADJ\t_\t_\t_\t_\t_\t_\n",
            "2\tновости\tновость\tNOUN\t_\t_\t_\t_\t_\t_\n",
            "\n",
            "# doc = b\n",
            "1\tХороший\tхороший\tNOUN\t_\t_\t_\t_\t_\t_\n",
            "\n",
        ),
    );
    f.file(
        "ann.jsonl",
        "{\"id\":\"a\",\"text\":\"Хорошие новости\",\"annotated\":\"docs.conll\"}\n{\"id\":\"b\",\"text\":\"Хороший\"}\n",
    );
    let out = lexsent(&[
        "classify",
        "--engine",
        "socal",
        "--lexicon",
        &f.p("lex.tsv"),
        "--corpus",
        &f.p("ann.jsonl"),
        "--annotations",
        &f.p("docs.conll"),
        "--t-pos",
        "1",
        "--t-neg",
        "-1",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    // document b is not in its own file but resolves through --annotations
    let labels: Vec<String> = jsonl_labels(&stdout(&out))
        .into_iter()
        .map(|(_, l)| l)
        .collect();
    assert_eq!(labels, ["positive", "positive"]);
}

#[test]
fn tune_one_lexicon_reaches_perfect_f1_and_feeds_classify() {
    let f = Fixture::new();
    let out = f.run(
        &[
            "tune",
            "--engine",
            "socal",
            "--lexicon",
            &f.p("lex.tsv"),
            "--corpus",
            &f.p("corpus.jsonl"),
            "--fallback-tokenize",
            "--out",
            &f.p("tune.json"),
        ],
        true,
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report = f.json("tune.json");
    assert_eq!(report["best"]["macro_f1"], 1.0);
    assert_eq!(report["best"]["lexicon"], "lex");
    assert_eq!(report["lexicons"][0]["result"]["documents_scored"], 6);
    assert_eq!(
        report["lexicons"][0]["result"]["trace"]
            .as_array()
            .unwrap()
            .len(),
        31 * 31
    );
    assert!(f
        .read("tune.tsv")
        .starts_with("lexicon\tentries\tt_pos\tt_neg\tmacro_F1\nlex\t4\t"));

    let classify = run_owned(
        &f,
        classify_args(&f, "socal"),
        &["--thresholds", &f.p("tune.json")],
    );
    assert_eq!(code(&classify), 0, "{}", stderr(&classify));
    let wrong_engine = run_owned(
        &f,
        classify_args(&f, "sentistrength"),
        &["--thresholds", &f.p("tune.json")],
    );
    assert_eq!(code(&wrong_engine), 2);
}

#[test]
fn tune_sentistrength_grid_flags() {
    let f = Fixture::new();
    let out = f.run(
        &[
            "tune",
            "--engine",
            "sentistrength",
            "--lexicon",
            &f.p("lex.tsv"),
            "--corpus",
            &f.p("corpus.jsonl"),
            "--fallback-tokenize",
            "--k-neut-grid",
            "0:1:0.5",
            "--k-grid",
            "0.5:1.5:0.5",
            "--out",
            &f.p("t.json"),
        ],
        true,
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report = f.json("t.json");
    assert_eq!(report["decision_scale"], "offset");
    assert_eq!(
        report["lexicons"][0]["result"]["trace"]
            .as_array()
            .unwrap()
            .len(),
        9
    );
    assert_eq!(report["best"]["macro_f1"], 1.0);
}

#[test]
fn tune_grid_file() {
    let f = Fixture::new();
    f.file(
        "grid.json",
        r#"{"t_pos": {"start": 1.0, "end": 2.0, "step": 0.5}}"#,
    );
    let out = f.run(
        &[
            "tune",
            "--engine",
            "socal",
            "--lexicon",
            &f.p("lex.tsv"),
            "--corpus",
            &f.p("corpus.jsonl"),
            "--fallback-tokenize",
            "--grid",
            &f.p("grid.json"),
            "--t-neg-grid",
            "-1:0:1",
            "--out",
            &f.p("t.json"),
        ],
        true,
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(
        f.json("t.json")["lexicons"][0]["result"]["trace"]
            .as_array()
            .unwrap()
            .len(),
        6
    );
    f.file(
        "bad_grid.json",
        r#"{"t_pos": {"start": 2.0, "end": 1.0, "step": 0.5}}"#,
    );
    let bad = f.run(
        &[
            "tune",
            "--engine",
            "socal",
            "--lexicon",
            &f.p("lex.tsv"),
            "--corpus",
            &f.p("corpus.jsonl"),
            "--fallback-tokenize",
            "--grid",
            &f.p("bad_grid.json"),
        ],
        true,
    );
    assert_eq!(code(&bad), 2);
}

#[test]
fn tune_picks_the_covering_lexicon() {
    let f = Fixture::new();
    f.file("other.tsv", "прекрасный\t3\nскверный\t-3\n");
    let out = f.run(
        &[
            "tune",
            "--engine",
            "socal",
            "--lexicon",
            &f.p("other.tsv"),
            "--lexicon",
            &f.p("lex.tsv"),
            "--corpus",
            &f.p("corpus.jsonl"),
            "--fallback-tokenize",
            "--out",
            &f.p("t.json"),
        ],
        true,
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report = f.json("t.json");
    assert_eq!(report["best"]["lexicon"], "lex");
    assert!(
        report["lexicons"][0]["result"]["best_macro_f1"]
            .as_f64()
            .unwrap()
            < 1.0
    );
}

#[test]
fn tune_without_lexicons_or_labels_exits_two() {
    let f = Fixture::new();
    let none = f.run(
        &[
            "tune",
            "--engine",
            "socal",
            "--corpus",
            &f.p("corpus.jsonl"),
            "--fallback-tokenize",
        ],
        true,
    );
    assert_eq!(code(&none), 2);
    f.file(
        "unlabeled.jsonl",
        "{\"id\":\"1\",\"text\":\"Хороший фильм\"}\n",
    );
    let unlabeled = f.run(
        &[
            "tune",
            "--engine",
            "socal",
            "--lexicon",
            &f.p("lex.tsv"),
            "--corpus",
            &f.p("unlabeled.jsonl"),
            "--fallback-tokenize",
        ],
        true,
    );
    assert_eq!(code(&unlabeled), 2);
    assert!(stderr(&unlabeled).contains("label"));
}

fn write_preds(f: &Fixture, name: &str, labels: &[&str]) -> String {
    let text: String = labels
        .iter()
        .enumerate()
        .map(|(i, l)| format!("{{\"id\":\"{}\",\"label\":\"{l}\"}}\n", i + 1))
        .collect();
    f.file(name, &text);
    f.p(name)
}

const GOLD: [&str; 6] = [
    "positive", "negative", "neutral", "negative", "positive", "neutral",
];

#[test]
fn eval_perfect_predictions() {
    let f = Fixture::new();
    let p = write_preds(&f, "gold.jsonl", &GOLD);
    let out = lexsent(&[
        "eval",
        "--corpus",
        &f.p("corpus.jsonl"),
        "--predictions",
        &p,
        "--out",
        &f.p("e.json"),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(f.json("e.json")[0]["macro_f1"], 1.0);
    let tsv = f.read("e.tsv");
    assert!(tsv.starts_with("system\tclass\tprecision\trecall\tF1\n"));
    assert!(tsv.contains("gold\tmacro\t\t\t1.0000"));
}

#[test]
fn eval_reports_missing_ids() {
    let f = Fixture::new();
    let p = write_preds(&f, "half.jsonl", &GOLD[..3]);
    let out = lexsent(&[
        "eval",
        "--corpus",
        &f.p("corpus.jsonl"),
        "--predictions",
        &p,
    ]);
    assert_eq!(code(&out), 2);
    let err = stderr(&out);
    assert!(
        err.contains('4') && err.contains('5') && err.contains('6'),
        "{err}"
    );
}

#[test]
fn compare_identical_files() {
    let f = Fixture::new();
    let p = write_preds(&f, "same.jsonl", &GOLD);
    let out = lexsent(&[
        "compare",
        "--corpus",
        &f.p("corpus.jsonl"),
        "--predictions",
        &p,
        "--predictions",
        &p,
        "--predictions",
        &p,
        "--systems",
        "SO-CAL,SentiStrength,RuBERT",
        "--out",
        &f.p("c.json"),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report = f.json("c.json");
    assert_eq!(report["subsets"][0]["size"], 6);
    assert_eq!(report["subsets"][0]["percent"], 100.0);
    let tsv = f.read("c.tsv");
    assert_eq!(
        tsv.lines().next().unwrap(),
        "Set\tRuBERT\tSentiStrength\tSO-CAL\tSet size\tAverage text length, sym."
    );
}

#[test]
fn compare_partitions_match_brute_force() {
    let f = Fixture::new();
    let a = [
        "positive", "negative", "neutral", "negative", "positive", "neutral",
    ];
    let b = [
        "positive", "negative", "positive", "neutral", "negative", "neutral",
    ];
    let c = [
        "negative", "positive", "neutral", "neutral", "neutral", "positive",
    ];
    let pa = write_preds(&f, "a.jsonl", &a);
    let pb = write_preds(&f, "b.jsonl", &b);
    let pc = write_preds(&f, "c.jsonl", &c);
    let out = lexsent(&[
        "compare",
        "--corpus",
        &f.p("corpus.jsonl"),
        "--predictions",
        &pa,
        "--predictions",
        &pb,
        "--predictions",
        &pc,
        "--out",
        &f.p("cmp.json"),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let mut expected = [0u64; 5];
    for i in 0..6 {
        let slot = if a[i] == b[i] && b[i] == c[i] {
            0
        } else if a[i] == b[i] {
            1
        } else if c[i] == a[i] {
            2
        } else if c[i] == b[i] {
            3
        } else {
            4
        };
        expected[slot] += 1;
    }
    let report = f.json("cmp.json");
    let sizes: Vec<u64> = report["subsets"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["size"].as_u64().unwrap())
        .collect();
    assert_eq!(sizes, expected);
    assert_eq!(sizes.iter().sum::<u64>(), 6);
}

#[test]
fn compare_needs_three_files() {
    let f = Fixture::new();
    let p = write_preds(&f, "same.jsonl", &GOLD);
    let out = lexsent(&[
        "compare",
        "--corpus",
        &f.p("corpus.jsonl"),
        "--predictions",
        &p,
        "--predictions",
        &p,
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn commands_leave_inputs_untouched() {
    let f = Fixture::new();
    let p = write_preds(&f, "gold.jsonl", &GOLD);
    let before = snapshot(f.dir.path());
    let runs = [
        f.run(&["lexicon", "stats", "--lexicon", &f.p("lex.tsv")], false),
        run_owned(
            &f,
            classify_args(&f, "socal"),
            &["--t-pos", "1", "--t-neg", "-1"],
        ),
        f.run(
            &[
                "tune",
                "--engine",
                "socal",
                "--lexicon",
                &f.p("lex.tsv"),
                "--corpus",
                &f.p("corpus.jsonl"),
                "--fallback-tokenize",
            ],
            true,
        ),
        lexsent(&[
            "eval",
            "--corpus",
            &f.p("corpus.jsonl"),
            "--predictions",
            &p,
        ]),
        lexsent(&[
            "compare",
            "--corpus",
            &f.p("corpus.jsonl"),
            "--predictions",
            &p,
            "--predictions",
            &p,
            "--predictions",
            &p,
        ]),
    ];
    for r in &runs {
        assert_eq!(code(r), 0, "{}", stderr(r));
    }
    assert_eq!(snapshot(f.dir.path()), before);
}

#[test]
fn help_exits_zero() {
    assert_eq!(code(&lexsent(&["--help"])), 0);
    assert_eq!(code(&lexsent(&["tune", "--help"])), 0);
}
