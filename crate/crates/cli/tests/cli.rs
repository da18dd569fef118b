//! End-to-end runs of the `covmat` binary on the shipped data files.

use std::path::PathBuf;
use std::process::{Command, Output};

use covmat_cli::render::LatticeDoc;
use covmat_cli::report::{AnalysisReport, MatroidStats};
use covmat_cli::{ClosureOutput, RandomRun};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name]
        .iter()
        .collect();
    p.to_str().unwrap().to_string()
}

fn covmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_covmat"))
        .args(args)
        .env_remove("COVMAT_MAX_LATTICE_SIZE")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = covmat(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

/// Minimal DOT grammar: `digraph ID? { stmt* }` with node, edge, attribute
/// and subgraph statements.
mod dot {
    #[derive(Debug, Clone, PartialEq)]
    enum Tok {
        Id(String),
        Sym(&'static str),
    }

    fn lex(s: &str) -> Result<Vec<Tok>, String> {
        let cs: Vec<char> = s.chars().collect();
        let mut i = 0;
        let mut out = Vec::new();
        while i < cs.len() {
            let c = cs[i];
            if c.is_whitespace() {
                i += 1;
            } else if c == '"' {
                let mut v = String::new();
                i += 1;
                loop {
                    match cs.get(i) {
                        None => return Err("unterminated string".into()),
                        Some('\\') => {
                            v.push(*cs.get(i + 1).ok_or("dangling escape")?);
                            i += 2;
                        }
                        Some('"') => {
                            i += 1;
                            break;
                        }
                        Some(&ch) => {
                            v.push(ch);
                            i += 1;
                        }
                    }
                }
                out.push(Tok::Id(v));
            } else if c == '-' && cs.get(i + 1) == Some(&'>') {
                out.push(Tok::Sym("->"));
                i += 2;
            } else if let Some(sym) = ["{", "}", "[", "]", ";", "=", ","]
                .into_iter()
                .find(|p| p.starts_with(c))
            {
                out.push(Tok::Sym(sym));
                i += 1;
            } else if c.is_alphanumeric() || c == '_' {
                let start = i;
                while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_' || cs[i] == '.') {
                    i += 1;
                }
                out.push(Tok::Id(cs[start..i].iter().collect()));
            } else {
                return Err(format!("unexpected character {c:?}"));
            }
        }
        Ok(out)
    }

    struct P {
        toks: Vec<Tok>,
        pos: usize,
    }

    impl P {
        fn peek(&self) -> Option<&Tok> {
            self.toks.get(self.pos)
        }
        fn sym(&mut self, s: &str) -> bool {
            if matches!(self.peek(), Some(Tok::Sym(x)) if *x == s) {
                self.pos += 1;
                true
            } else {
                false
            }
        }
        fn expect(&mut self, s: &str) -> Result<(), String> {
            if self.sym(s) {
                Ok(())
            } else {
                Err(format!(
                    "expected `{s}` at token {}, found {:?}",
                    self.pos,
                    self.peek()
                ))
            }
        }
        fn id(&mut self) -> Option<String> {
            if let Some(Tok::Id(v)) = self.peek() {
                let v = v.clone();
                self.pos += 1;
                Some(v)
            } else {
                None
            }
        }
        fn attr_list(&mut self) -> Result<(), String> {
            while self.sym("[") {
                while !self.sym("]") {
                    self.id().ok_or("attribute name")?;
                    self.expect("=")?;
                    self.id().ok_or("attribute value")?;
                    self.sym(",");
                    self.sym(";");
                }
            }
            Ok(())
        }
        fn stmts(&mut self) -> Result<(), String> {
            while !self.sym("}") {
                self.stmt()?;
                self.sym(";");
            }
            Ok(())
        }
        fn stmt(&mut self) -> Result<(), String> {
            let first = self
                .id()
                .ok_or_else(|| format!("statement expected, found {:?}", self.peek()))?;
            match first.as_str() {
                "subgraph" => {
                    self.id();
                    self.expect("{")?;
                    self.stmts()
                }
                "graph" | "node" | "edge" => self.attr_list(),
                _ => {
                    if self.sym("=") {
                        self.id().ok_or("value after `=`")?;
                        return Ok(());
                    }
                    while self.sym("->") {
                        self.id().ok_or("edge target")?;
                    }
                    self.attr_list()
                }
            }
        }
    }

    pub fn validate(s: &str) -> Result<(), String> {
        let mut p = P {
            toks: lex(s)?,
            pos: 0,
        };
        if p.id().as_deref() != Some("digraph") {
            return Err("expected `digraph`".into());
        }
        p.id();
        p.expect("{")?;
        p.stmts()?;
        if p.pos != p.toks.len() {
            return Err("trailing tokens".into());
        }
        Ok(())
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(validate("digraph { a -> ; }").is_err());
        assert!(validate("digraph g { a [label=\"x\"]").is_err());
        assert!(validate("graph g { }").is_err());
        assert!(validate("digraph g { subgraph c { rank=same; a; } a -> b; }").is_ok());
    }
}

#[test]
fn check_reports_closure_verdicts() {
    let out = ok(&["check", &data("two_components.cov"), "--format", "json"]);
    let r: AnalysisReport = serde_json::from_str(&out).unwrap();
    assert!(!r.covering.is_partition);
    assert!(r.tra);
    let sh = &r.operators[0];
    assert!(sh.closure_operator);
    assert_eq!(sh.classes, vec![vec!["1", "2", "3"], vec!["4", "5"]]);
    let again: AnalysisReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(again, r);
    assert_eq!(r.lattice.as_ref().unwrap().flats, 16);

    let text = ok(&["check", &data("two_components.cov")]);
    assert_eq!(text, ok(&["check", &data("two_components.cov")]));
    assert!(text.contains("SH closure operator: true"));
}

#[test]
fn check_lists_immured_blocks() {
    let r: AnalysisReport = serde_json::from_str(&ok(&[
        "check",
        &data("nested_singletons.cov"),
        "--format",
        "json",
    ]))
    .unwrap();
    assert!(r.operators[1].closure_operator);
    assert!(r.immured.contains(&"K1".to_string()));

    let r: AnalysisReport =
        serde_json::from_str(&ok(&["check", &data("partition.cov"), "--format", "json"])).unwrap();
    assert!(r.covering.is_partition);
    assert!(r.operators.iter().all(|o| o.closure_operator));
}

#[test]
fn matroid_stats() {
    let sh: MatroidStats = serde_json::from_str(&ok(&[
        "matroid",
        &data("two_components.cov"),
        "--kind",
        "sh",
        "--format",
        "json",
    ]))
    .unwrap();
    assert_eq!(sh.base_count, 6);
    let tm: MatroidStats = serde_json::from_str(&ok(&[
        "matroid",
        &data("two_components.cov"),
        "--format",
        "json",
    ]))
    .unwrap();
    assert_eq!(tm.rank, 4);
    assert_eq!(tm.circuits, vec![vec!["4", "5"]]);
    assert!(!tm.simple);

    let fam: MatroidStats = serde_json::from_str(&ok(&[
        "matroid",
        &data("transversal_family.cov"),
        "--format",
        "json",
    ]))
    .unwrap();
    assert_eq!(fam.loops, vec!["1"]);
    assert!(fam.ab_decomposition.is_none());

    let o = covmat(&["matroid", &data("union_block.cov"), "--kind", "xh"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn lattice_outputs() {
    let doc: LatticeDoc = serde_json::from_str(&ok(&[
        "lattice",
        &data("two_components.cov"),
        "--kind",
        "sh",
        "--format",
        "json",
    ]))
    .unwrap();
    assert_eq!(doc.flats.len(), 4);
    assert_eq!(doc.heights, vec![0, 1, 1, 2]);
    assert_eq!(doc.edges.len(), 4);

    let doc: LatticeDoc = serde_json::from_str(&ok(&[
        "lattice",
        &data("two_components.cov"),
        "--format",
        "json",
    ]))
    .unwrap();
    assert_eq!(doc.flats.len(), 16);
    for [a, b] in &doc.edges {
        assert_eq!(doc.heights[*b], doc.heights[*a] + 1);
    }

    for file in [
        "two_components.cov",
        "nine_elements.cov",
        "transversal_family.cov",
        "partition.cov",
    ] {
        let out = ok(&["lattice", &data(file), "--format", "dot"]);
        dot::validate(&out).unwrap_or_else(|e| panic!("{file}: {e}\n{out}"));
        let nodes = out.lines().filter(|l| l.contains("[label=")).count();
        let doc: LatticeDoc =
            serde_json::from_str(&ok(&["lattice", &data(file), "--format", "json"])).unwrap();
        assert_eq!(nodes, doc.flats.len());
        assert_eq!(out.matches(" -> ").count(), doc.edges.len());
    }
    let out = ok(&[
        "lattice",
        &data("two_components.cov"),
        "--kind",
        "xh",
        "--format",
        "dot",
    ]);
    dot::validate(&out).unwrap();
    assert_eq!(out.matches("subgraph cluster_rank").count(), 5);
}

#[test]
fn lattice_guard() {
    let o = covmat(&[
        "lattice",
        &data("two_components.cov"),
        "--max-lattice-size",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("limit of 5"));

    let o = Command::new(env!("CARGO_BIN_EXE_covmat"))
        .args(["lattice", &data("two_components.cov")])
        .env("COVMAT_MAX_LATTICE_SIZE", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_covmat"))
        .args([
            "lattice",
            &data("two_components.cov"),
            "--max-lattice-size",
            "16",
        ])
        .env("COVMAT_MAX_LATTICE_SIZE", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn closure_images() {
    assert_eq!(
        ok(&[
            "closure",
            &data("nine_elements.cov"),
            "--operator",
            "xh",
            "--set",
            "a b i"
        ]),
        "{a, b, i}\n"
    );
    assert_eq!(
        ok(&[
            "closure",
            &data("nine_elements.cov"),
            "--operator",
            "vh",
            "--set",
            "b"
        ]),
        "{a, b}\n"
    );
    let out = ok(&[
        "closure",
        &data("union_block.cov"),
        "--operator",
        "sh",
        "--set",
        "2",
        "--format",
        "json",
    ]);
    let c: ClosureOutput = serde_json::from_str(&out).unwrap();
    assert_eq!(c.image, vec!["1", "2", "3"]);
    let o = covmat(&[
        "closure",
        &data("union_block.cov"),
        "--operator",
        "sh",
        "--set",
        "9",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn compare_reports_claims() {
    let out = ok(&["compare", &data("nine_elements.cov")]);
    assert!(out.contains("HOLDS"));
    assert!(!out.contains("VIOLATED"));
    let json = ok(&["compare", &data("two_components.cov"), "--format", "json"]);
    let r: covmat::RelationReport = serde_json::from_str(&json).unwrap();
    assert!(r.all_hold());
}

#[test]
fn reduce_writes_coverings() {
    let out = ok(&["reduce", &data("union_block.cov"), "--mode", "reduct"]);
    assert_eq!(out, "universe: 1 2 3\nblock K1: 1 2\nblock K2: 1 3\n");
    let out = ok(&["reduce", &data("nested_chain.cov"), "--mode", "exclusion"]);
    assert_eq!(out, "universe: 1 2 3\nblock K4: 1 2 3\n");

    let dir = std::env::temp_dir().join(format!("covmat-reduce-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.cov");
    ok(&[
        "reduce",
        &data("union_block.cov"),
        "--output",
        path.to_str().unwrap(),
    ]);
    let written = covmat::Covering::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written.len(), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_file_and_random() {
    let out = ok(&["verify", &data("two_components.cov")]);
    assert!(out.lines().all(|l| l.starts_with("PASS")), "{out}");
    let out = ok(&["verify", &data("two_components.cov"), "--round-trip"]);
    assert_eq!(out.lines().count(), 3);

    let out = ok(&[
        "verify", "--random", "40", "--seed", "42", "--max-n", "6", "--format", "json",
    ]);
    let run: RandomRun = serde_json::from_str(&out).unwrap();
    assert_eq!(run.count, 40);
    assert!(run.failures.is_empty());
    let text = ok(&["verify", "--random", "10", "--seed", "42", "--max-n", "5"]);
    assert!(text.starts_with("PASS 10 of 10"));
}

#[test]
fn input_errors_exit_two() {
    let dir = std::env::temp_dir().join(format!("covmat-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.cov");
    std::fs::write(&bad, "universe: 1 2\nblock: 1 3\n").unwrap();
    for args in [
        vec!["check", bad.to_str().unwrap()],
        vec!["verify", bad.to_str().unwrap()],
        vec!["check", "/nonexistent/file.cov"],
        vec!["check", &data("transversal_family.cov")],
        vec!["check", &data("two_components.cov"), "--format", "dot"],
        vec!["lattice", &data("nine_elements.cov"), "--kind", "sh"],
        vec!["frobnicate"],
    ] {
        let o = covmat(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
    std::fs::remove_dir_all(&dir).unwrap();
}
