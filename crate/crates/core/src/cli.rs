//! Command-line front end. Every command writes line-oriented `key value`
//! text to stdout; diagnostics go to stderr.
//!
//! Exit codes: 0 on success, 2 when a solve is infeasible, 1 on usage or
//! validation errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::birep::{bg, is_proper_interval_bigraph, BipartiteGraph, PibCheck, FORBIDDEN_SEARCH_GUARD};
use crate::classify::{
    classify_general, classify_reflexive_mpt, classify_tournament_wpl, classify_tt4_minus_13, enumerate_reflexive_mpts,
    find_witness, tt4_minus_13, Classification, LoopSet, Verdict,
};
use crate::digraph::{as_directed_cycle, make_cycle, make_tt, make_tt_minus, reflexive_closure, Digraph};
use crate::error::{Error, Result};
use crate::format::{parse_bipartite, parse_costs, parse_digraph, write_bipartite, write_costs, write_digraph, write_solution};
use crate::minmax::{find_minmax, find_violation, Family, Ordering, MINMAX_SEARCH_GUARD};
use crate::solver::{solve_auto, solve_bruteforce, solve_cycle, solve_minmax, CostMatrix, Outcome, SolveLimits, SolveResult};

#[derive(Debug, Parser)]
#[command(name = "minhom", version, about = "Minimum cost digraph homomorphisms and target classification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve a minimum cost homomorphism instance.
    Solve(SolveArgs),
    /// Classify a reflexive multipartite tournament.
    ClassifyRmpt(TargetArgs),
    /// Classify a tournament with possible loops.
    ClassifyTournament(TargetArgs),
    /// Classify TT_4 without the arc 1->3, with loops B.
    ClassifyT5(LoopArgs),
    /// Classify an arbitrary target by sufficient conditions.
    ClassifyGeneral(GuardedTargetArgs),
    /// Print the bipartite representation of a target.
    Bg(TargetArgs),
    /// Check whether a bipartite graph is a proper interval bigraph.
    PibCheck(PibArgs),
    /// Check an ordering for the Min-Max property.
    MinmaxVerify(VerifyArgs),
    /// Search for a Min-Max ordering.
    MinmaxFind(GuardedTargetArgs),
    /// Search for a hardness witness.
    Witness(TargetArgs),
    /// Enumerate and classify reflexive multipartite tournaments.
    EnumerateRmpt(EnumerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Minmax,
    Cycle,
    Brute,
}

#[derive(Debug, Args)]
struct TargetArgs {
    /// Digraph file or built-in name (rc_tt<k>, rc_ttminus<k>, rc_k12, rc_k21, cycle<k>, t5_<B>).
    #[arg(long)]
    target: String,
}

#[derive(Debug, Args)]
struct GuardedTargetArgs {
    #[arg(long)]
    target: String,
    /// Largest target size for the Min-Max search.
    #[arg(long, default_value_t = MINMAX_SEARCH_GUARD)]
    guard: usize,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long)]
    target: String,
    /// Input digraph file. Without it, `--seed` generates one.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Cost file; unlisted entries are 0.
    #[arg(long)]
    costs: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    /// Comma-separated Min-Max ordering of the target (method minmax).
    #[arg(long)]
    ordering: Option<String>,
    /// Seed for a random input digraph and costs when `--input` is absent.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = MINMAX_SEARCH_GUARD)]
    guard: usize,
}

#[derive(Debug, Args)]
struct LoopArgs {
    /// Loop set such as `11,33`; empty or `none` for no loops.
    #[arg(long, default_value = "")]
    b: String,
}

#[derive(Debug, Args)]
struct PibArgs {
    /// Digraph whose bipartite representation is checked.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    target: Option<String>,
    /// Bipartite graph file (`p1`, `p2`, `e` lines).
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = FORBIDDEN_SEARCH_GUARD)]
    guard: usize,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    target: String,
    #[arg(long)]
    ordering: String,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    /// Largest vertex count to enumerate (at least 2).
    #[arg(long, default_value_t = 5)]
    vertices: usize,
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut report = String::new();
    match execute(cli.command, &mut report, err) {
        Ok(code) => {
            if out.write_all(report.as_bytes()).is_err() {
                return 1;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn in_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })
}

fn load_digraph(path: &Path) -> Result<Digraph> {
    let text = read_file(path)?;
    in_file(path, parse_digraph(&text))
}

fn numeric_suffix(name: &str, prefix: &str) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

/// Expands a built-in target name, or `None` when `name` is not one.
pub fn builtin_target(name: &str) -> Option<Result<Digraph>> {
    if let Some(k) = numeric_suffix(name, "rc_ttminus") {
        return Some(make_tt_minus(k).map(|h| reflexive_closure(&h)));
    }
    if let Some(k) = numeric_suffix(name, "rc_tt") {
        return Some(make_tt(k).map(|h| reflexive_closure(&h)));
    }
    if let Some(k) = numeric_suffix(name, "cycle") {
        return Some(make_cycle(k));
    }
    match name {
        "rc_k12" => return Some(Family::RcK12.digraph()),
        "rc_k21" => return Some(Family::RcK21.digraph()),
        _ => {}
    }
    let loops = name.strip_prefix("t5_")?;
    let compact: String = loops.chars().filter(|&c| c != ',').collect();
    let list = if compact == "none" || compact.is_empty() {
        String::new()
    } else if compact.len().is_multiple_of(2) && compact.is_ascii() {
        (0..compact.len() / 2)
            .map(|i| &compact[2 * i..2 * i + 2])
            .collect::<Vec<_>>()
            .join(",")
    } else {
        return Some(Err(Error::InvalidParameter(format!("bad loop set in target {name:?}"))));
    };
    Some(LoopSet::parse(&list).map(tt4_minus_13))
}

/// A digraph file path, or a built-in target name when no such file exists.
pub fn resolve_target(name: &str) -> Result<Digraph> {
    let path = Path::new(name);
    if path.is_file() {
        return load_digraph(path);
    }
    builtin_target(name).unwrap_or_else(|| {
        Err(Error::InvalidParameter(format!(
            "{name:?} is neither a readable file nor a built-in target"
        )))
    })
}

/// Random input for `solve --seed`: up to 8 vertices, arcs and loops, costs
/// in `[-9, 9]` over `target`.
pub fn random_instance(seed: u64, target: &Digraph) -> (Digraph, CostMatrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=8usize);
    let names: Vec<String> = (1..=n).map(|i| format!("d{i}")).collect();
    let mut d = Digraph::with_vertices(&names).expect("generated names are valid");
    for u in 0..n {
        for v in 0..n {
            let p = if u == v { 0.15 } else { 0.3 };
            if rng.gen_bool(p) {
                d.add_arc(u, v).expect("ids in range");
            }
        }
    }
    let costs = CostMatrix::from_fn(n, target.vertex_count(), |_, _| rng.gen_range(-9..=9));
    (d, costs)
}

fn push_lines(report: &mut String, lines: &[String]) {
    for line in lines {
        report.push_str(line);
        report.push('\n');
    }
}

fn commented(text: &str) -> String {
    text.lines().map(|l| format!("# {l}\n")).collect()
}

fn execute(command: Command, report: &mut String, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Solve(args) => solve(args, report, err),
        Command::ClassifyRmpt(args) => {
            let h = resolve_target(&args.target)?;
            push_lines(report, &classify_reflexive_mpt(&h)?.report(&h));
            Ok(0)
        }
        Command::ClassifyTournament(args) => {
            let h = resolve_target(&args.target)?;
            push_lines(report, &classify_tournament_wpl(&h)?.report(&h));
            Ok(0)
        }
        Command::ClassifyT5(args) => {
            let b = LoopSet::parse(&args.b)?;
            let h = tt4_minus_13(b);
            push_lines(report, &classify_tt4_minus_13(b).report(&h));
            Ok(0)
        }
        Command::ClassifyGeneral(args) => {
            let h = resolve_target(&args.target)?;
            push_lines(report, &classify_general(&h, args.guard).report(&h));
            Ok(0)
        }
        Command::Bg(args) => {
            let h = resolve_target(&args.target)?;
            report.push_str(&write_bipartite(&bg(&h)));
            Ok(0)
        }
        Command::PibCheck(args) => {
            let g: BipartiteGraph = match (&args.target, &args.input) {
                (_, Some(path)) => in_file(path, parse_bipartite(&read_file(path)?))?,
                (Some(t), None) => bg(&resolve_target(t)?),
                (None, None) => return Err(Error::InvalidParameter("pass --target or --input".into())),
            };
            match is_proper_interval_bigraph(&g, args.guard)? {
                PibCheck::ProperIntervalBigraph => report.push_str("verdict true\n"),
                PibCheck::Forbidden(s) => {
                    report.push_str("verdict false\n");
                    report.push_str(&format!("witness {} {}\n", s.kind.tag(), s.vertex_names(&g).join(" ")));
                }
            }
            Ok(0)
        }
        Command::MinmaxVerify(args) => {
            let h = resolve_target(&args.target)?;
            let ord = Ordering::parse(&h, &args.ordering)?;
            match find_violation(&h, &ord)? {
                None => report.push_str("verdict true\n"),
                Some(pair) => {
                    report.push_str("verdict false\n");
                    report.push_str(&format!("violation {}\n", describe_pair(&h, &pair)));
                }
            }
            Ok(0)
        }
        Command::MinmaxFind(args) => {
            let h = resolve_target(&args.target)?;
            match find_minmax(&h, args.guard)? {
                Some(ord) => report.push_str(&format!("ordering {}\n", ord.display(&h))),
                None => report.push_str("ordering none\n"),
            }
            Ok(0)
        }
        Command::Witness(args) => {
            let h = resolve_target(&args.target)?;
            match find_witness(&h) {
                Some(w) => report.push_str(&format!("witness {}\n", w.describe(&h))),
                None => report.push_str("witness none\n"),
            }
            Ok(0)
        }
        Command::EnumerateRmpt(args) => {
            if args.vertices < 2 {
                return Err(Error::InvalidParameter("--vertices must be at least 2".into()));
            }
            let mut total = 0;
            for n in 2..=args.vertices {
                for (i, h) in enumerate_reflexive_mpts(n)?.iter().enumerate() {
                    total += 1;
                    report.push_str(&enumeration_line(n, i + 1, h, &classify_reflexive_mpt(h)?));
                }
            }
            report.push_str(&format!("total {total}\n"));
            Ok(0)
        }
    }
}

fn describe_pair(h: &Digraph, pair: &crate::minmax::ArcPair) -> String {
    let arc = |(u, v): (usize, usize)| format!("{}>{}", h.name(u), h.name(v));
    format!("{} {}", arc(pair.e), arc(pair.f))
}

fn enumeration_line(n: usize, index: usize, h: &Digraph, c: &Classification) -> String {
    let arcs: Vec<String> = h
        .arcs()
        .filter(|(u, v)| u != v)
        .map(|(u, v)| format!("{}>{}", h.name(u), h.name(v)))
        .collect();
    let cert = match (c.verdict, c.ordering(), c.witness()) {
        (_, Some(o), _) => format!(" ordering {}", o.display(h)),
        (_, _, Some(w)) => format!(" witness {}", w.describe(h)),
        (Verdict::NpHard, None, None) => " witness none".to_string(),
        _ => String::new(),
    };
    format!(
        "rmpt {n}.{index} arcs {} verdict {} rule {}{cert}\n",
        arcs.join(","),
        c.verdict,
        c.rule.tag()
    )
}

fn solve(args: SolveArgs, report: &mut String, err: &mut dyn Write) -> Result<i32> {
    let h = resolve_target(&args.target)?;
    let (d, costs) = match (&args.input, args.seed) {
        (Some(path), _) => {
            let d = load_digraph(path)?;
            let costs = match &args.costs {
                Some(c) => in_file(c, parse_costs(&read_file(c)?, &d, &h))?,
                None => CostMatrix::zeros(d.vertex_count(), h.vertex_count()),
            };
            (d, costs)
        }
        (None, Some(seed)) => {
            let (d, mut costs) = random_instance(seed, &h);
            if let Some(c) = &args.costs {
                costs = in_file(c, parse_costs(&read_file(c)?, &d, &h))?;
            }
            report.push_str(&commented(&write_digraph(&d)));
            report.push_str(&commented(&write_costs(&costs, &d, &h)));
            (d, costs)
        }
        (None, None) => return Err(Error::InvalidParameter("solve needs --input or --seed".into())),
    };
    let result: SolveResult = match args.method {
        MethodArg::Auto => solve_auto(
            &d,
            &h,
            &costs,
            SolveLimits {
                minmax_guard: args.guard,
                ..SolveLimits::default()
            },
        )?,
        MethodArg::Brute => solve_bruteforce(&d, &h, &costs, crate::solver::DEFAULT_NODE_BUDGET)?,
        MethodArg::Minmax => {
            let ord = match &args.ordering {
                Some(text) => Ordering::parse(&h, text)?,
                None => find_minmax(&h, args.guard)?
                    .ok_or_else(|| Error::NotMinMax("target has no Min-Max ordering".into()))?,
            };
            solve_minmax(&d, &h, &ord, &costs)?
        }
        MethodArg::Cycle => {
            let order = as_directed_cycle(&h)
                .ok_or_else(|| Error::InvalidParameter("method cycle needs a directed cycle target".into()))?;
            let shifted = CostMatrix::from_fn(d.vertex_count(), order.len(), |u, pos| costs.get(u, order[pos]));
            let mut r = solve_cycle(&d, order.len(), &shifted)?;
            if let Outcome::Optimal(hom) = &mut r.outcome {
                for x in hom.map.iter_mut() {
                    *x = order[*x];
                }
            }
            r
        }
    };
    let _ = writeln!(err, "method {}", result.method);
    report.push_str(&write_solution(&d, &h, &result));
    Ok(if result.is_feasible() { 0 } else { 2 })
}
