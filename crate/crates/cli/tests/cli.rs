use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use allperm_core::lcp::LcpInstance;
use allperm_core::matching::MatchingInstance;
use allperm_core::reductions::{CnfFormula, ReductionLayout};
use allperm_core::Word;
use tempfile::TempDir;

fn allperm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_allperm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const SEVEN: &str = "word 3 7\n1 2 3 1 2 1 3\n";
const TRUNCATED: &str = "word 3 6\n1 2 3 1 2 1\n";
const UNSAT: &str = "p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n";

#[test]
fn check_and_witness() {
    let dir = TempDir::new().unwrap();
    let seven = file(&dir, "seven", SEVEN);
    let short = file(&dir, "short", TRUNCATED);

    let o = allperm(&["check", s(&seven)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "universal n=3 |T|=7\n");

    let o = allperm(&["witness", s(&short)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness: 2 1 3"), "{}", stdout(&o));

    let o = allperm(&["--quiet", "check", s(&short)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "not-universal\n");
}

#[test]
fn kcheck_and_minsearch() {
    let dir = TempDir::new().unwrap();
    let seven = file(&dir, "seven", SEVEN);
    assert_eq!(allperm(&["kcheck", "--k", "2", s(&seven)]).status.code(), Some(0));
    // `3 3 3` needs three 3s.
    let o = allperm(&["kcheck", "--k", "3", s(&seven)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("largest covered length: 2"));

    let o = allperm(&["minsearch", "--n", "3", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("n=3: 7"));
    let parallel = allperm(&["minsearch", "--n", "4", "--budget", "12", "--jobs", "3"]);
    let sequential = allperm(&["minsearch", "--n", "4", "--budget", "12"]);
    assert_eq!(stdout(&parallel), stdout(&sequential));
    assert_eq!(
        allperm(&["-q", "minsearch", "--n", "3", "--budget", "6"]).status.code(),
        Some(1)
    );
    let o = allperm(&["minsearch", "--n", "6", "--budget", "40"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cap of 5"), "{}", stderr(&o));
}

#[test]
fn resource_cap_override() {
    let dir = TempDir::new().unwrap();
    let seven = file(&dir, "seven", SEVEN);
    let o = allperm(&["--frontier-max-n", "2", "check", s(&seven)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cap of 2"), "{}", stderr(&o));
}

#[test]
fn parse_errors_name_file_and_line() {
    let dir = TempDir::new().unwrap();
    let bad = file(&dir, "bad.word", "word 3 2\n1 5\n");
    let o = allperm(&["check", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(
        err.contains("bad.word") && err.contains("line 2") && err.contains("index 2"),
        "{err}"
    );

    let cnf = file(&dir, "two.cnf", "p cnf 2 1\n1 2 0\n");
    let o = allperm(&["reduce", "sat2lcp", s(&cnf)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("two.cnf: line 2"), "{}", stderr(&o));

    let o = allperm(&["check", s(&dir.path().join("missing"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unsat_formula_pipeline() {
    let dir = TempDir::new().unwrap();
    let cnf = file(&dir, "unsat.cnf", UNSAT);
    let out = dir.path().join("w");
    let o = allperm(&["reduce", "sat2word", s(&cnf), "-o", s(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let word: Word = fs::read_to_string(&out).unwrap().parse().unwrap();
    let lcp_path = dir.path().join("w.lcp");
    let inst: LcpInstance = fs::read_to_string(&lcp_path).unwrap().parse().unwrap();
    let _: ReductionLayout = fs::read_to_string(dir.path().join("w.layout"))
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(word.alphabet_size() as usize, inst.n());

    assert_eq!(allperm(&["lcp", "solve", s(&lcp_path)]).status.code(), Some(1));
}

#[test]
fn sat_formula_pipeline() {
    let dir = TempDir::new().unwrap();
    let cnf = file(&dir, "f.cnf", "p cnf 3 1\n1 2 -3 0\n");
    let out = dir.path().join("f.lcp");
    assert_eq!(
        allperm(&["reduce", "sat2lcp", s(&cnf), "-o", s(&out)]).status.code(),
        Some(0)
    );
    let layout = dir.path().join("f.lcp.layout");

    let o = allperm(&["-q", "reduce", "embed", s(&layout), "--assignment", "1 0 0"]);
    assert_eq!(o.status.code(), Some(0));
    let perm = stdout(&o).trim().to_string();
    assert_eq!(
        allperm(&["lcp", "check", s(&out), "--perm", &perm]).status.code(),
        Some(0)
    );
    let o = allperm(&["-q", "reduce", "extract", s(&out), s(&layout), "--perm", &perm]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1 0 0");

    let o = allperm(&["reduce", "embed", s(&layout), "--assignment", "0 0 1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("clause 1"));

    let o = allperm(&["lcp", "solve", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn lcp_commands() {
    let dir = TempDir::new().unwrap();
    let inst = file(&dir, "i.lcp", "lcp 2\nallowed 1: 1\nallowed 2: 1 2\norder 1: 1 2\n");
    assert_eq!(
        allperm(&["lcp", "check", s(&inst), "--perm", "1 2"]).status.code(),
        Some(0)
    );
    assert_eq!(
        allperm(&["lcp", "check", s(&inst), "--perm", "2 1"]).status.code(),
        Some(1)
    );
    assert_eq!(
        allperm(&["lcp", "check", s(&inst), "--perm", "1 2 3"]).status.code(),
        Some(2)
    );
    let o = allperm(&["lcp", "to-word", s(&inst)]);
    assert_eq!(stdout(&o), "word 2 3\n2 2 1\n");

    let free = file(&dir, "free.lcp", "lcp 2\nallowed 1: 1\nallowed 2: 2\norder 1: free\n");
    assert_eq!(allperm(&["lcp", "to-word", s(&free)]).status.code(), Some(2));
    let done = dir.path().join("done.lcp");
    assert_eq!(
        allperm(&["lcp", "complete", s(&free), "-o", s(&done)]).status.code(),
        Some(0)
    );
    let completed: LcpInstance = fs::read_to_string(&done).unwrap().parse().unwrap();
    assert_eq!(completed.n(), 3);
    assert_eq!(allperm(&["lcp", "to-word", s(&done)]).status.code(), Some(0));
    assert_eq!(allperm(&["lcp", "solve", s(&done)]).status.code(), Some(0));
}

#[test]
fn pip_and_matching_commands() {
    let dir = TempDir::new().unwrap();
    let cnf = file(&dir, "f.cnf", "p cnf 1 1\n1 1 -1 0\n");
    let pip = dir.path().join("f.pip");
    assert_eq!(
        allperm(&["reduce", "pip-normal", s(&cnf), "-o", s(&pip)]).status.code(),
        Some(0)
    );
    let m = dir.path().join("f.match");
    assert_eq!(
        allperm(&["reduce", "pip2match", s(&pip), "-o", s(&m)]).status.code(),
        Some(0)
    );
    let _: MatchingInstance = fs::read_to_string(&m).unwrap().parse().unwrap();
    let o = allperm(&["match", "solve", s(&m)]);
    assert_eq!(o.status.code(), Some(0));

    // Not prefix-increasing.
    let lcp = file(&dir, "x.lcp", "lcp 2\nallowed 1: 1 2\nallowed 2: 1 2\norder 1: 2 1\n");
    assert_eq!(allperm(&["reduce", "pip2match", s(&lcp)]).status.code(), Some(2));

    let crossing = file(&dir, "c.match", "match 2\nrestricted: 1 2\nedge 1 2\nedge 2 1\n");
    assert_eq!(allperm(&["-q", "match", "solve", s(&crossing)]).status.code(), Some(1));
    let pairs = file(&dir, "p.txt", "pair 1 2\npair 2 1\n");
    assert_eq!(
        allperm(&["match", "verify", s(&crossing), s(&pairs)]).status.code(),
        Some(1)
    );
    let loose = file(&dir, "l.match", "match 2\nrestricted: 1\nedge 1 2\nedge 2 1\n");
    assert_eq!(
        allperm(&["match", "verify", s(&loose), s(&pairs)]).status.code(),
        Some(0)
    );
    let o = allperm(&["match", "solve", s(&loose)]);
    assert_eq!(stdout(&o), "solvable n=2\npair 1 2\npair 2 1\n");

    let uneven = file(&dir, "u.match", "match 2 3\nrestricted:\n");
    assert_eq!(allperm(&["match", "solve", s(&uneven)]).status.code(), Some(2));
}

#[test]
fn generators_are_deterministic_and_parse_back() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for p in [&a, &b] {
        assert_eq!(
            allperm(&["gen", "word", "--n", "3", "--len", "7", "--seed", "1", "-o", s(p)])
                .status
                .code(),
            Some(0)
        );
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let lcp = stdout(&allperm(&["gen", "lcp", "--n", "5", "--seed", "7"]));
    let inst: LcpInstance = lcp.parse().unwrap();
    assert_eq!(inst.to_string(), lcp);

    let cnf = stdout(&allperm(&["gen", "cnf", "--m", "4", "--d", "3", "--seed", "7"]));
    let f: CnfFormula = cnf.parse().unwrap();
    assert_eq!(f.clauses().len(), 3);
    assert!(cnf.starts_with("p cnf 4 3\n"));

    let m = stdout(&allperm(&["gen", "match", "--n", "4"]));
    assert_eq!(m, stdout(&allperm(&["gen", "match", "--n", "4", "--seed", "0"])));
    let inst: MatchingInstance = m.parse().unwrap();
    assert_eq!(inst.to_string(), m);

    assert_eq!(
        allperm(&["gen", "word", "--n", "0", "--len", "3"]).status.code(),
        Some(2)
    );
}

#[test]
fn version_and_usage_errors() {
    let o = allperm(&["--version"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("formats: word-1 lcp-1"));
    assert_eq!(allperm(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(allperm(&["kcheck", "x"]).status.code(), Some(2));
}
