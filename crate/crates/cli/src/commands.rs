use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use allperm_core::gen::{random_cnf, random_lcp, random_matching, random_word, SeededRng};
use allperm_core::lcp::{LcpInstance, PipInstance};
use allperm_core::matching::{pip_to_matching, Matching, MatchingInstance};
use allperm_core::reductions::{
    embed_assignment, extract_assignment, prefix_increasing_normal_form, sat_to_lcp, sat_to_word, Assignment,
    CnfFormula, ReductionLayout,
};
use allperm_core::universality::{
    all_words_universal, find_missing_permutation, max_covered_word_length, min_universal_length,
};
use allperm_core::{Error, Limits, Permutation, Word};
use anyhow::{bail, Context, Result};

use crate::{Cli, Command, GenCommand, GenOut, LcpCommand, MatchCommand, ReduceCommand};

/// Doubles as the process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Answer {
    Yes = 0,
    No = 1,
}

struct Out {
    quiet: bool,
}

impl Out {
    fn line(&self, text: impl AsRef<str>) {
        if !self.quiet {
            println!("{}", text.as_ref());
        }
    }

    /// Prints the report lines, or only `token` in quiet mode.
    fn verdict(&self, token: &str, lines: &[String]) {
        if self.quiet {
            println!("{token}");
        } else {
            for l in lines {
                println!("{l}");
            }
        }
    }

    /// Writes `text` to `path`, or to stdout when no path is given.
    fn emit(&self, path: Option<&Path>, text: &str) -> Result<()> {
        match path {
            Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn read<T: FromStr<Err = Error>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    text.parse::<T>().with_context(|| path.display().to_string())
}

fn sidecar(path: &Path, extension: &str) -> PathBuf {
    let mut s = OsString::from(path.as_os_str());
    s.push(".");
    s.push(extension);
    PathBuf::from(s)
}

fn permutation(arg: &str) -> Result<Permutation> {
    arg.parse().context("--perm")
}

pub fn run(cli: &Cli) -> Result<Answer> {
    let out = Out { quiet: cli.quiet };
    let limits = cli.caps.limits();
    match &cli.command {
        Command::Check { word } => check(&out, &read(word)?, &limits, false),
        Command::Witness { word } => check(&out, &read(word)?, &limits, true),
        Command::Kcheck { k, word } => kcheck(&out, &read(word)?, *k),
        Command::Minsearch { n, budget, jobs } => minsearch(&out, *n, *budget, *jobs, &limits),
        Command::Lcp(cmd) => lcp(&out, cmd),
        Command::Reduce(cmd) => reduce(&out, cmd),
        Command::Match(cmd) => matching(&out, cmd),
        Command::Gen(cmd) => gen(&out, cmd),
    }
}

fn check(out: &Out, w: &Word, limits: &Limits, with_witness: bool) -> Result<Answer> {
    let verdict = find_missing_permutation(w, limits)?;
    let shape = format!("n={} |T|={}", w.alphabet_size(), w.len());
    if verdict.universal {
        out.verdict("universal", &[format!("universal {shape}")]);
        return Ok(Answer::Yes);
    }
    let mut lines = vec![format!("not universal {shape}")];
    if with_witness {
        let missing = verdict.witness.expect("negative verdicts carry a witness");
        lines.push(format!("witness: {missing}"));
    }
    out.verdict("not-universal", &lines);
    Ok(Answer::No)
}

fn kcheck(out: &Out, w: &Word, k: usize) -> Result<Answer> {
    let shape = format!("k={k} n={} |T|={}", w.alphabet_size(), w.len());
    if all_words_universal(w, k) {
        out.verdict("universal", &[format!("{k}-universal {shape}")]);
        Ok(Answer::Yes)
    } else {
        let longest = max_covered_word_length(w);
        out.verdict(
            "not-universal",
            &[
                format!("not {k}-universal {shape}"),
                format!("largest covered length: {longest}"),
            ],
        );
        Ok(Answer::No)
    }
}

fn minsearch(out: &Out, n: usize, budget: usize, jobs: usize, limits: &Limits) -> Result<Answer> {
    match min_universal_length(n, budget, jobs, limits) {
        Ok(found) => {
            let example = found
                .example
                .symbols()
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            out.verdict(
                &found.length.to_string(),
                &[
                    format!("shortest universal length n={n}: {}", found.length),
                    format!("example: {example}"),
                ],
            );
            Ok(Answer::Yes)
        }
        Err(Error::BudgetExhausted { .. }) => {
            out.verdict("none", &[format!("no universal word of length <= {budget} for n={n}")]);
            Ok(Answer::No)
        }
        Err(e) => Err(e.into()),
    }
}

fn lcp(out: &Out, cmd: &LcpCommand) -> Result<Answer> {
    match cmd {
        LcpCommand::Solve { instance } => {
            let inst: LcpInstance = read(instance)?;
            match inst.solve() {
                Some(pi) => {
                    out.verdict(
                        "solvable",
                        &[format!("solvable n={}", inst.n()), format!("solution: {pi}")],
                    );
                    Ok(Answer::Yes)
                }
                None => {
                    out.verdict("unsolvable", &[format!("unsolvable n={}", inst.n())]);
                    Ok(Answer::No)
                }
            }
        }
        LcpCommand::Check { instance, perm } => {
            let inst: LcpInstance = read(instance)?;
            let pi = permutation(perm)?;
            if pi.n() != inst.n() {
                bail!("--perm has {} values, the instance has {} positions", pi.n(), inst.n());
            }
            if inst.check_solution(&pi) {
                out.verdict("valid", &["valid solution".to_string()]);
                Ok(Answer::Yes)
            } else {
                out.verdict("invalid", &["not a solution".to_string()]);
                Ok(Answer::No)
            }
        }
        LcpCommand::Complete { instance, output } => {
            let inst: LcpInstance = read(instance)?;
            let done = inst.complete_free_orders();
            out.emit(output.as_deref(), &done.to_string())?;
            if output.is_some() {
                out.line(format!("completed n={} -> n={}", inst.n(), done.n()));
            }
            Ok(Answer::Yes)
        }
        LcpCommand::ToWord { instance, output } => {
            let inst: LcpInstance = read(instance)?;
            let w = allperm_core::reductions::lcp_to_word(&inst).with_context(|| instance.display().to_string())?;
            out.emit(output.as_deref(), &w.to_string())?;
            if output.is_some() {
                out.line(format!("word n={} |W|={}", w.alphabet_size(), w.len()));
            }
            Ok(Answer::Yes)
        }
    }
}

fn write_layout(out: &Out, output: Option<&Path>, layout: &ReductionLayout) -> Result<()> {
    if let Some(p) = output {
        out.emit(Some(&sidecar(p, "layout")), &layout.to_string())?;
    }
    Ok(())
}

fn reduce(out: &Out, cmd: &ReduceCommand) -> Result<Answer> {
    match cmd {
        ReduceCommand::Sat2lcp { cnf, output } => {
            let f: CnfFormula = read(cnf)?;
            let (inst, layout) = sat_to_lcp(&f);
            out.emit(output.as_deref(), &inst.to_string())?;
            write_layout(out, output.as_deref(), &layout)?;
            if output.is_some() {
                out.line(format!(
                    "m={} d={} -> lcp n={}",
                    f.num_vars(),
                    f.clauses().len(),
                    inst.n()
                ));
            }
        }
        ReduceCommand::Sat2word { cnf, output } => {
            let f: CnfFormula = read(cnf)?;
            let w = sat_to_word(&f);
            out.emit(output.as_deref(), &w.word.to_string())?;
            if let Some(p) = output {
                out.emit(Some(&sidecar(p, "lcp")), &w.instance.to_string())?;
                write_layout(out, Some(p), &w.layout)?;
                out.line(format!(
                    "m={} d={} -> word n={} |W|={}",
                    f.num_vars(),
                    f.clauses().len(),
                    w.word.alphabet_size(),
                    w.word.len()
                ));
            }
        }
        ReduceCommand::PipNormal { cnf, output } => {
            let f: CnfFormula = read(cnf)?;
            let nf = prefix_increasing_normal_form(&f);
            out.emit(output.as_deref(), &nf.instance.to_lcp().to_string())?;
            write_layout(out, output.as_deref(), &nf.layout)?;
            if output.is_some() {
                out.line(format!(
                    "m={} d={} -> prefix-increasing n={} k={}",
                    f.num_vars(),
                    f.clauses().len(),
                    nf.instance.n(),
                    nf.instance.k()
                ));
            }
        }
        ReduceCommand::Pip2match { instance, output } => {
            let inst: LcpInstance = read(instance)?;
            let pip = PipInstance::from_lcp(&inst).with_context(|| instance.display().to_string())?;
            let m = pip_to_matching(&pip);
            out.emit(output.as_deref(), &m.to_string())?;
            if output.is_some() {
                out.line(format!(
                    "n={} k={} -> match n={} restricted={}",
                    pip.n(),
                    pip.k(),
                    m.n(),
                    m.restricted().len()
                ));
            }
        }
        ReduceCommand::Embed { layout, assignment } => {
            let layout: ReductionLayout = read(layout)?;
            let a: Assignment = assignment.parse().context("--assignment")?;
            return match embed_assignment(&layout, &a) {
                Ok(pi) => {
                    out.verdict(&pi.to_string(), &[format!("solution: {pi}")]);
                    Ok(Answer::Yes)
                }
                Err(Error::UnsatisfiedClause { clause }) => {
                    out.verdict("unsatisfied", &[format!("clause {clause} is not satisfied")]);
                    Ok(Answer::No)
                }
                Err(e) => Err(e.into()),
            };
        }
        ReduceCommand::Extract { instance, layout, perm } => {
            let inst: LcpInstance = read(instance)?;
            let layout: ReductionLayout = read(layout)?;
            let pi = permutation(perm)?;
            if pi.n() != inst.n() {
                bail!("--perm has {} values, the instance has {} positions", pi.n(), inst.n());
            }
            if !inst.check_solution(&pi) {
                out.verdict("invalid", &["not a solution".to_string()]);
                return Ok(Answer::No);
            }
            let a = extract_assignment(&inst, &layout, &pi)?;
            out.verdict(&a.to_string(), &[format!("assignment: {a}")]);
        }
    }
    Ok(Answer::Yes)
}

fn matching(out: &Out, cmd: &MatchCommand) -> Result<Answer> {
    match cmd {
        MatchCommand::Solve { instance } => {
            let inst: MatchingInstance = read(instance)?;
            match inst.solve() {
                Some(m) => {
                    out.verdict("solvable", &[format!("solvable n={}", inst.n())]);
                    if !out.quiet {
                        print!("{m}");
                    }
                    Ok(Answer::Yes)
                }
                None => {
                    out.verdict("unsolvable", &[format!("unsolvable n={}", inst.n())]);
                    Ok(Answer::No)
                }
            }
        }
        MatchCommand::Verify { instance, matching } => {
            let inst: MatchingInstance = read(instance)?;
            let m: Matching = read(matching)?;
            if inst.verify(&m) {
                out.verdict("valid", &["valid matching".to_string()]);
                Ok(Answer::Yes)
            } else {
                out.verdict("invalid", &["not a valid matching".to_string()]);
                Ok(Answer::No)
            }
        }
    }
}

fn positive(name: &str, value: usize) -> Result<()> {
    if value == 0 {
        bail!("--{name} must be positive");
    }
    Ok(())
}

fn gen(out: &Out, cmd: &GenCommand) -> Result<Answer> {
    let emit = |o: &GenOut, text: String| {
        out.emit(o.output.as_deref(), &text)?;
        if let Some(p) = &o.output {
            out.line(format!("wrote {} (seed {})", p.display(), o.seed));
        }
        Ok(Answer::Yes)
    };
    match cmd {
        GenCommand::Word { n, len, out: o } => {
            positive("n", *n as usize)?;
            emit(o, random_word(*n, *len, &mut SeededRng::new(o.seed)).to_string())
        }
        GenCommand::Lcp { n, out: o } => {
            positive("n", *n)?;
            emit(o, random_lcp(*n, &mut SeededRng::new(o.seed)).to_string())
        }
        GenCommand::Cnf { m, d, out: o } => {
            positive("m", *m)?;
            positive("d", *d)?;
            emit(o, random_cnf(*m, *d, &mut SeededRng::new(o.seed)).to_string())
        }
        GenCommand::Match { n, out: o } => {
            positive("n", *n)?;
            emit(o, random_matching(*n, &mut SeededRng::new(o.seed)).to_string())
        }
    }
}
