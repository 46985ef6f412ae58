//! The `balab` command line.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::affine::{reduced_words, AffinePermutation};
use crate::content::find_content;
use crate::diagram::{rothe_diagram, AffineDiagram, DiagramJson};
use crate::error::{Error, Result};
use crate::labelling::{decode, enumerate_column_strict, enumerate_injective, Labelling, LabellingJson};
use crate::selftest::{self, Config};
use crate::set_valued::{enumerate_column_strict_sv, enumerate_injective_sv, sv_decode, SetValuedJson, SetValuedLabelling};
use crate::symfunc::{
    grothendieck_polynomial, grothendieck_stable_via_factorizations, grothendieck_stable_via_labellings,
    grothendieck_via_flagged_factorizations, schubert_polynomial, stanley_via_factorizations, stanley_via_labellings,
    SparsePolynomial,
};
use crate::wiring::recognize;

#[derive(Parser, Debug)]
#[command(name = "balab", version, about = "Balanced labellings of affine permutation diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Window {
    /// Window notation, e.g. "[2,5,0,7,3,4]".
    #[arg(short = 'w', long = "window", allow_hyphen_values = true)]
    window: String,
}

impl Window {
    fn parse(&self) -> Result<AffinePermutation> {
        self.window.parse()
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Via {
    Labellings,
    Factorizations,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coxeter length.
    Length(Window),
    /// Reduced words, one per line.
    ReducedWords {
        #[command(flatten)]
        w: Window,
        #[arg(long)]
        count: bool,
    },
    /// Diagram as JSON.
    Diagram(Window),
    /// Enumerates balanced labellings, one JSON object per line.
    Labellings {
        #[command(flatten)]
        w: Window,
        #[arg(long, conflicts_with = "column_strict")]
        injective: bool,
        #[arg(long, requires = "max_label")]
        column_strict: bool,
        #[arg(short = 'm', long = "max-label")]
        max_label: Option<u32>,
        #[arg(long)]
        set_valued: bool,
        /// Total number of labels for set-valued injective labellings
        /// (defaults to the length).
        #[arg(long)]
        size: Option<usize>,
        #[arg(long)]
        count: bool,
    },
    /// Decodes an injective balanced labelling into a word.
    Decode {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Affine Stanley symmetric function in m variables.
    Stanley {
        #[command(flatten)]
        w: Window,
        #[arg(short = 'm')]
        m: usize,
        #[arg(long, value_enum, default_value = "labellings")]
        via: Via,
        #[arg(long)]
        json: bool,
    },
    /// Affine stable Grothendieck polynomial or Grothendieck polynomial.
    Grothendieck {
        #[command(flatten)]
        w: Window,
        #[arg(long, requires = "m", conflicts_with = "polynomial")]
        stable: bool,
        #[arg(short = 'm')]
        m: Option<usize>,
        #[arg(long)]
        polynomial: bool,
        #[arg(long, value_enum, default_value = "labellings")]
        via: Via,
        #[arg(long)]
        json: bool,
    },
    /// Schubert polynomial of a finite permutation.
    Schubert {
        #[command(flatten)]
        w: Window,
        #[arg(long)]
        json: bool,
    },
    /// Content map of a diagram.
    Content {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Recovers the permutation of a diagram, or rejects it.
    Recognize {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Runs the built-in property checks.
    Selftest {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

fn read_diagram(path: &PathBuf) -> Result<AffineDiagram> {
    AffineDiagram::try_from(parse_json::<DiagramJson>(&read_input(path)?)?)
}

fn polynomial_text(p: &SparsePolynomial, as_json: bool) -> String {
    if as_json {
        serde_json::to_string(&crate::symfunc::PolynomialJson::from(p)).unwrap()
    } else {
        p.to_string()
    }
}

fn lines<T: serde::Serialize>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| serde_json::to_string(&x).unwrap() + "\n").collect()
}

fn cells_json(cells: &[crate::diagram::Cell]) -> Value {
    Value::Array(cells.iter().map(|c| json!([c.row, c.col])).collect())
}

/// Executes a parsed command; the returned text is written to stdout.
fn execute(command: Command) -> Result<(String, i32)> {
    let text = match command {
        Command::Length(w) => format!("{}\n", w.parse()?.length()),
        Command::ReducedWords { w, count } => {
            let words = reduced_words(&w.parse()?);
            if count {
                format!("{}\n", words.len())
            } else {
                words.iter().map(|a| format!("{a}\n")).collect()
            }
        }
        Command::Diagram(w) => {
            format!("{}\n", serde_json::to_string(&DiagramJson::from(&rothe_diagram(&w.parse()?))).unwrap())
        }
        Command::Labellings { w, injective, column_strict, max_label, set_valued, size, count } => {
            let w = w.parse()?;
            if !injective && !column_strict {
                return Err(Error::Parse("one of --injective or --column-strict is required".into()));
            }
            let found: Vec<Value> = match (set_valued, injective) {
                (false, true) => enumerate_injective(&w).iter().map(|t| json!(LabellingJson::from(t))).collect(),
                (false, false) => {
                    let mut ts = enumerate_column_strict(&w, max_label.unwrap());
                    ts.sort_by(|a, b| a.values().cmp(b.values()));
                    ts.iter().map(|t| json!(LabellingJson::from(t))).collect()
                }
                (true, true) => enumerate_injective_sv(&w, size.unwrap_or(w.length()))
                    .iter()
                    .map(|t| json!(SetValuedJson::from(t)))
                    .collect(),
                (true, false) => {
                    let mut ts = enumerate_column_strict_sv(&w, max_label.unwrap());
                    ts.sort();
                    ts.iter().map(|t| json!(SetValuedJson::from(t))).collect()
                }
            };
            if count {
                format!("{}\n", found.len())
            } else {
                lines(found)
            }
        }
        Command::Decode { input } => {
            let raw: Value = parse_json(&read_input(&input)?)?;
            let set_valued = raw["cells"].as_array().is_some_and(|cs| cs.iter().any(|c| c[2].is_array()));
            if set_valued {
                let t = SetValuedLabelling::try_from(parse_json::<SetValuedJson>(&raw.to_string())?)?;
                format!("{}\n", sv_decode(&t)?)
            } else {
                let t = Labelling::try_from(parse_json::<LabellingJson>(&raw.to_string())?)?;
                format!("{}\n", decode(&t)?)
            }
        }
        Command::Stanley { w, m, via, json } => {
            let w = w.parse()?;
            let p = match via {
                Via::Labellings => stanley_via_labellings(&w, m),
                Via::Factorizations => stanley_via_factorizations(&w, m),
            };
            format!("{}\n", polynomial_text(&p, json))
        }
        Command::Grothendieck { w, stable, m, polynomial, via, json } => {
            let w = w.parse()?;
            let p = match (stable, polynomial, via) {
                (true, _, Via::Labellings) => grothendieck_stable_via_labellings(&w, m.unwrap()),
                (true, _, Via::Factorizations) => grothendieck_stable_via_factorizations(&w, m.unwrap()),
                (false, true, Via::Labellings) => grothendieck_polynomial(&w)?,
                (false, true, Via::Factorizations) => grothendieck_via_flagged_factorizations(&w)?,
                (false, false, _) => return Err(Error::Parse("one of --stable or --polynomial is required".into())),
            };
            format!("{}\n", polynomial_text(&p, json))
        }
        Command::Schubert { w, json } => format!("{}\n", polynomial_text(&schubert_polynomial(&w.parse()?)?, json)),
        Command::Content { input } => {
            let d = read_diagram(&input)?;
            let out = match find_content(&d) {
                Ok(c) => json!({
                    "period": d.period(),
                    "cells": c.values().iter().map(|(b, k)| json!([b.row, b.col, k])).collect::<Vec<_>>(),
                }),
                Err(r) => json!({"reject": {"rule": r.rule.to_string(), "cells": cells_json(&r.cells)}}),
            };
            format!("{out}\n")
        }
        Command::Recognize { input } => {
            let d = read_diagram(&input)?;
            let out = match recognize(&d) {
                Ok(w) => json!({"window": w.window(), "period": w.period()}),
                Err(Error::Rejected(r)) => json!({"reject": {"rule": r.rule.to_string(), "cells": cells_json(&r.cells)}}),
                Err(e) => return Err(e),
            };
            format!("{out}\n")
        }
        Command::Selftest { max_n, max_len } => {
            let outcomes = selftest::run(&Config { max_n, max_len });
            let mut text = String::new();
            for o in &outcomes {
                let mark = if o.passed { "PASS" } else { "FAIL" };
                text += &format!("{mark} {:>2} {}", o.id, o.name);
                if !o.passed {
                    text += &format!(": {}", o.detail);
                }
                text.push('\n');
            }
            let code = if outcomes.iter().all(|o| o.passed) { 0 } else { 1 };
            return Ok((text, code));
        }
    };
    Ok((text, 0))
}

fn error_object(e: &Error) -> String {
    json!({"error": e.kind(), "message": e.to_string()}).to_string()
}

/// Runs the command line `argv` (program name first). Returns the exit
/// code: 0 on success, 1 on invalid input, 2 on a broken internal invariant.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = writeln!(err, "{}", json!({"error": "Usage", "message": e.to_string()}));
            return 1;
        }
    };
    match execute(cli.command) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "{}", error_object(&e));
            if e.is_internal() {
                2
            } else {
                1
            }
        }
    }
}

/// Runs `argv` and collects `(exit code, stdout, stderr)`.
pub fn capture(argv: &[String]) -> (i32, Vec<u8>, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(argv, &mut out, &mut err);
    (code, out, err)
}

/// One invocation of every subcommand except `selftest`, with input files
/// written to the temporary directory.
pub fn sample_invocations() -> Vec<Vec<String>> {
    let dir = std::env::temp_dir().join(format!("balab-samples-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temporary directory");
    let w = AffinePermutation::new(vec![2, 6, 1, 4, 3, 7, 8, 5, 9]).unwrap();
    let labelling = crate::content::oriental_labelling_of(&w);
    let files: BTreeMap<&str, String> = BTreeMap::from([
        ("labelling.json", serde_json::to_string(&LabellingJson::from(&labelling)).unwrap()),
        ("diagram.json", serde_json::to_string(&DiagramJson::from(&rothe_diagram(&w))).unwrap()),
        ("bad.json", r#"{"period": 2, "cells": [[1, 1], [1, 2], [2, 2]]}"#.to_string()),
    ]);
    for (name, body) in &files {
        std::fs::write(dir.join(name), body).expect("write sample input");
    }
    let path = |name: &str| dir.join(name).display().to_string();
    let cmds: Vec<Vec<String>> = vec![
        vec!["length", "-w", "[2,5,0,7,3,4]"].into_iter().map(String::from).collect(),
        ["reduced-words", "-w", "[0,4,2]"].map(String::from).to_vec(),
        ["diagram", "-w", "[3,1,-2,8]"].map(String::from).to_vec(),
        ["labellings", "-w", "[4,2,3,1]", "--injective"].map(String::from).to_vec(),
        ["labellings", "-w", "[0,4,2]", "--column-strict", "-m", "2", "--set-valued"].map(String::from).to_vec(),
        ["labellings", "-w", "[3,2,1]", "--column-strict", "-m", "3", "--count"].map(String::from).to_vec(),
        vec!["decode".into(), "--in".into(), path("labelling.json")],
        ["stanley", "-w", "[2,5,0,7,3,4]", "-m", "3"].map(String::from).to_vec(),
        ["stanley", "-w", "[0,4,2]", "-m", "2", "--via", "factorizations", "--json"].map(String::from).to_vec(),
        ["grothendieck", "-w", "[0,4,2]", "--stable", "-m", "2"].map(String::from).to_vec(),
        ["grothendieck", "-w", "[1,3,2]", "--polynomial"].map(String::from).to_vec(),
        ["schubert", "-w", "[1,4,3,2]"].map(String::from).to_vec(),
        vec!["content".into(), "--in".into(), path("diagram.json")],
        vec!["recognize".into(), "--in".into(), path("diagram.json")],
        vec!["recognize".into(), "--in".into(), path("bad.json")],
        ["length", "-w", "[1,1]"].map(String::from).to_vec(),
    ];
    cmds.into_iter().map(|c| std::iter::once("balab".to_string()).chain(c).collect()).collect()
}
