//! Command-line front end for the steinecc library.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use steinecc::enumerate::free_trees;
use steinecc::families::{
    balanced_starlike, broom, caterpillar, central_caterpillar, double_comet, path, star, starlike,
    CaterpillarSignature, StarlikeSignature,
};
use steinecc::metrics::{avg_steiner_kl_ecc, steiner_kl_eccentricity, steiner_wiener};
use steinecc::scalar::{decimal_string, ratio_string};
use steinecc::transforms::{
    apply_pq, apply_sigma, apply_sigma_inverse, find_pq_sites, find_sigma_forms,
    find_sigma_inverse_forms, normalize_to_path, normalize_to_star, SigmaVariant,
};
use steinecc::verify::{run_sweep, Status, Suite, SweepSpec, VerificationReport};
use steinecc::{KLParams, Rational, Tree, VertexSet};

/// Exact Steiner (k,l)-eccentricity tools for trees.
#[derive(Debug, Parser)]
#[command(name = "steinecc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Average (k,l)-eccentricity of a tree, or the eccentricity of one set.
    Compute {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        /// Comma-separated vertex set of size l.
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<usize>>,
    },
    /// Steiner k-Wiener index.
    Sw {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Writes a member of an extremal family as an edge list.
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        delta: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        /// Arm lengths (starlike) or spine attachment counts (caterpillar).
        #[arg(long, value_delimiter = ',')]
        sig: Option<Vec<usize>>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Applies one rewrite to a tree.
    Transform {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        op: Op,
        #[arg(long, default_value = "plain")]
        variant: SigmaVariant,
        /// Drop the size condition on sigma forms.
        #[arg(long)]
        relaxed: bool,
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Print every applicable form instead of rewriting.
        #[arg(long)]
        list: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rewrites a tree step by step into the star or the path.
    Normalize {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        target: Target,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Where to write the final tree.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Lists the non-isomorphic trees of order n.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count_only: bool,
        /// Directory for one edge-list file per tree.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sweeps every tree up to the given order and checks the extremal bounds.
    Verify {
        /// `all` or a comma-separated list of suites.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        max_k: Option<usize>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Skip the summary table.
        #[arg(long)]
        quiet: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    Path,
    Star,
    Broom,
    Bs,
    Starlike,
    Caterpillar,
    Central,
    Dcomet,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Op {
    Sigma,
    SigmaInv,
    Pq,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Target {
    Star,
    Path,
}

/// Runs the command line `args` (program name first) and returns the exit
/// status: 0 on success, 1 on malformed input, 2 when a sweep finds a failure.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

fn execute(command: Command) -> Result<u8> {
    match command {
        Command::Compute { tree, k, l, set } => {
            let t = read_tree(&tree)?;
            let p = params(&t, k, l)?;
            match set {
                None => {
                    let avg: Rational = avg_steiner_kl_ecc(&t, p)?;
                    println!("{} ≈ {}", ratio_string(&avg), decimal_string(&avg, 6));
                }
                Some(members) => {
                    let s = VertexSet::new(members)?;
                    let r = steiner_kl_eccentricity(&t, &s, p)?;
                    println!("{}", r.value);
                    println!("witness {}", r.witness);
                }
            }
        }
        Command::Sw { tree, k } => {
            let t = read_tree(&tree)?;
            println!("{}", steiner_wiener(&t, k)?);
        }
        Command::Gen { family, n, delta, p, d, s, sig, output } => {
            let t = generate(family, n, delta, p, d, s, sig)?;
            emit(output.as_deref(), &t.to_edge_list())?;
        }
        Command::Transform { tree, op, variant, relaxed, index, list, output } => {
            let t = read_tree(&tree)?;
            let (forms, rewritten) = match op {
                Op::Sigma | Op::SigmaInv => {
                    let forms = if matches!(op, Op::Sigma) {
                        find_sigma_forms(&t, variant, relaxed)
                    } else {
                        find_sigma_inverse_forms(&t, variant, relaxed)
                    };
                    let labels: Vec<String> = forms.iter().map(|f| f.to_string()).collect();
                    let result = forms.get(index).map(|f| match op {
                        Op::Sigma => apply_sigma(f),
                        _ => apply_sigma_inverse(f),
                    });
                    (labels, result)
                }
                Op::Pq => {
                    let sites = find_pq_sites(&t);
                    let labels: Vec<String> = sites.iter().map(|s| s.to_string()).collect();
                    (labels, sites.get(index).map(apply_pq))
                }
            };
            if list {
                for (i, label) in forms.iter().enumerate() {
                    println!("{i}: {label}");
                }
                return Ok(0);
            }
            let Some(result) = rewritten else {
                bail!("index {index} out of range: {} applicable form(s)", forms.len());
            };
            emit(output.as_deref(), &result?.to_edge_list())?;
        }
        Command::Normalize { tree, target, k, l, trace, output } => {
            let t = read_tree(&tree)?;
            let p = params(&t, k, l)?;
            let run = match target {
                Target::Star => normalize_to_star(&t, p)?,
                Target::Path => normalize_to_path(&t, p)?,
            };
            println!("start {}", ratio_string(&run.initial_value));
            for (i, step) in run.steps.iter().enumerate() {
                println!("{} {} {}", i + 1, ratio_string(&step.value), step.descriptor);
            }
            if let Some(path) = trace {
                let json = serde_json::to_string_pretty(&run)?;
                fs::write(&path, json + "\n").with_context(|| format!("writing {}", path.display()))?;
            }
            if let Some(path) = output {
                emit(Some(&path), &run.terminal.to_edge_list())?;
            }
        }
        Command::Enumerate { n, count_only, output } => {
            if n == 0 {
                bail!("n must be at least 1");
            }
            if count_only {
                println!("{}", free_trees(n).count());
                return Ok(0);
            }
            match output {
                Some(dir) => {
                    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
                    let mut count = 0;
                    for (i, t) in free_trees(n).enumerate() {
                        let file = dir.join(format!("tree-{n}-{:05}.txt", i + 1));
                        fs::write(&file, t.to_edge_list()).with_context(|| format!("writing {}", file.display()))?;
                        count += 1;
                    }
                    println!("{count}");
                }
                None => {
                    let mut out = std::io::stdout().lock();
                    for (i, t) in free_trees(n).enumerate() {
                        writeln!(out, "# tree {}", i + 1)?;
                        write!(out, "{}", t.to_edge_list())?;
                    }
                }
            }
        }
        Command::Verify { suite, min_n, max_n, k, l, max_k, json, csv, workers, quiet } => {
            let suites = parse_suites(&suite)?;
            let spec = SweepSpec { suites, min_n, max_n, k, l, max_k, workers };
            let report = run_sweep(&spec)?;
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&report)?;
                fs::write(&path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
            }
            if let Some(path) = csv {
                write_csv(&path, &report)?;
            }
            if !quiet {
                print_summary(&report);
            }
            if report.status() == Status::Fail {
                return Ok(2);
            }
        }
    }
    Ok(0)
}

fn read_tree(path: &Path) -> Result<Tree> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Tree::parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn params(t: &Tree, k: usize, l: usize) -> Result<KLParams> {
    let p = KLParams::new(k, l)?;
    p.check_order(t.order())?;
    Ok(p)
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn need(value: Option<usize>, flag: &str, family: Family) -> Result<usize> {
    value.with_context(|| format!("--{flag} is required for {family:?}").to_lowercase())
}

fn generate(
    family: Family,
    n: Option<usize>,
    delta: Option<usize>,
    p: Option<usize>,
    d: Option<usize>,
    s: Option<usize>,
    sig: Option<Vec<usize>>,
) -> Result<Tree> {
    let tree = match family {
        Family::Path => path(need(n, "n", family)?)?,
        Family::Star => star(need(n, "n", family)?)?,
        Family::Broom => broom(need(n, "n", family)?, need(delta, "delta", family)?)?,
        Family::Bs => balanced_starlike(need(n, "n", family)?, need(p, "p", family)?)?,
        Family::Starlike => {
            let arms = sig.context("--sig is required for starlike")?;
            let sig = StarlikeSignature::new(arms)?;
            if let Some(n) = n {
                if n != sig.order() {
                    bail!("--n {n} does not match the signature order {}", sig.order());
                }
            }
            starlike(&sig)?
        }
        Family::Caterpillar => {
            let attach = sig.context("--sig is required for caterpillar")?;
            let d = d.unwrap_or(attach.len() + 1);
            let sig = CaterpillarSignature::new(d, attach)?;
            caterpillar(n.unwrap_or(sig.order()), &sig)?
        }
        Family::Central => central_caterpillar(need(n, "n", family)?, need(d, "d", family)?, s)?,
        Family::Dcomet => double_comet(need(n, "n", family)?, need(d, "d", family)?, s)?,
    };
    Ok(tree)
}

fn parse_suites(text: &str) -> Result<Vec<Suite>> {
    if text == "all" {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|name| name.trim().parse::<Suite>().map_err(anyhow::Error::from))
        .collect()
}

fn write_csv(path: &Path, report: &VerificationReport) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
    w.write_record(["suite", "n", "k", "l", "status", "cases", "claim", "lhs", "relation", "rhs"])?;
    let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
    for row in &report.results {
        let example = row.counterexample.as_ref().or(row.finding.as_ref());
        let (claim, lhs, relation, rhs) = match example {
            Some(c) => (
                c.claim.clone(),
                c.lhs.clone(),
                c.relation.symbol().to_string(),
                c.rhs.clone(),
            ),
            None => Default::default(),
        };
        w.write_record([
            row.suite.name().to_string(),
            row.n.to_string(),
            opt(row.k),
            opt(row.l),
            row.status.name().to_string(),
            row.cases.to_string(),
            claim,
            lhs,
            relation,
            rhs,
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn print_summary(report: &VerificationReport) {
    for suite in Suite::ALL {
        let rows: Vec<_> = report.rows(suite).collect();
        if rows.is_empty() {
            continue;
        }
        let count = |s: Status| rows.iter().filter(|r| r.status == s).count();
        let cases: u64 = rows.iter().map(|r| r.cases).sum();
        println!(
            "{:<14} {:>10} cases  {:>4} pass  {:>4} finding  {:>4} fail",
            suite.name(),
            cases,
            count(Status::Pass),
            count(Status::Finding),
            count(Status::Fail)
        );
    }
    if let Some(row) = report.first_failure() {
        if let Some(c) = &row.counterexample {
            let opt = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
            println!(
                "first failure: {} n={} k={} l={}: {} ({} {} {}) edges {:?}",
                row.suite,
                row.n,
                opt(row.k),
                opt(row.l),
                c.claim,
                c.lhs,
                c.relation.symbol(),
                c.rhs,
                c.edges
            );
        }
    }
    println!("status {}", report.status().name());
}
