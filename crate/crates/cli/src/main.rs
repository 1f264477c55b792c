use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use bruhat_chains::compat::DEFAULT_ENUMERATION_CAP;
use bruhat_chains::typed::conjecture::DEFAULT_CONJECTURE_CAP;
use bruhat_chains::typed::{
    is_smooth_d, verify_conjecture_d, ConjectureOptions, ConjectureReport, RootSystem, SignedPermutation,
    SimpleRootOrder, TypeD, WeylGroupD,
};
use bruhat_chains::{
    c_t, c23, construct_compatible_order, enumerate_compatible_orders, is_smooth_length, is_smooth_pattern,
    move_graph_dot, run_sweep, verify_theorem, Permutation, ReflectionOrder, SweepConfig, SweepMode,
    VerificationReport,
};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "bruhat-chains", version, about = "Smooth permutations, compatible orders and Bruhat chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Smoothness of a permutation by pattern avoidance and by length.
    Smooth {
        /// One-line notation, e.g. 35142 or 3,5,1,4,2.
        perm: String,
        #[arg(long)]
        json: bool,
    },
    /// Construct and verify a compatible order on C_T(w).
    Order(OrderArgs),
    /// Run a sweep over S_n, or the type D conjecture check.
    Sweep(SweepArgs),
    /// Type D commands.
    Typed {
        #[command(subcommand)]
        command: TypedCommand,
    },
}

#[derive(Args, Debug)]
struct OrderArgs {
    perm: String,
    /// List every compatible order.
    #[arg(long)]
    enumerate: bool,
    /// Verify the order in FILE (one `T(i,j)` per line) instead of
    /// constructing one.
    #[arg(long, value_name = "FILE")]
    verify: Option<PathBuf>,
    /// Write the move graph of compatible orders as DOT.
    #[arg(long, value_name = "FILE")]
    dot: Option<PathBuf>,
    /// Write the prefix chain of the order as DOT.
    #[arg(long, value_name = "FILE")]
    chain_dot: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    max_reflections: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, value_parser = parse_mode)]
    mode: SweepMode,
    /// Degree for the type A modes.
    #[arg(long, conflicts_with = "rank")]
    n: Option<usize>,
    /// Rank for conjecture-d.
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long, env = "BRUHAT_CHAINS_WORKERS", default_value_t = 1)]
    workers: usize,
    /// Check this many seeded random elements instead of all of them.
    #[arg(long, requires = "seed")]
    sample: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_reflections: Option<usize>,
    #[arg(long, default_value = "index-ascending", value_parser = parse_simple_order)]
    simple_order: SimpleRootOrder,
    #[arg(long)]
    json: bool,
    /// Also write the JSON report to FILE.
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum TypedCommand {
    /// Roots, simple roots, positive roots and root poset covers of D_n.
    Roots {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        json: bool,
    },
    /// Length, rank generating function and smoothness of an element.
    Smooth {
        /// Comma-separated signed window, e.g. -2,-1,3,4.
        #[arg(allow_hyphen_values = true)]
        element: String,
        #[arg(long)]
        json: bool,
    },
    /// C(w), its admissibility, and its compatible orders.
    Order {
        #[arg(allow_hyphen_values = true)]
        element: String,
        #[arg(long, default_value = "index-ascending", value_parser = parse_simple_order)]
        simple_order: SimpleRootOrder,
        #[arg(long)]
        enumerate: bool,
        #[arg(long, default_value_t = DEFAULT_CONJECTURE_CAP)]
        max_reflections: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check the conjecture on every smooth element of D_n.
    Conjecture {
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value = "index-ascending", value_parser = parse_simple_order)]
        simple_order: SimpleRootOrder,
        #[arg(long, env = "BRUHAT_CHAINS_WORKERS", default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = DEFAULT_CONJECTURE_CAP)]
        max_reflections: usize,
        /// Include a verdict for every smooth element in the JSON.
        #[arg(long)]
        verbose: bool,
        #[arg(long)]
        json: bool,
    },
}

fn parse_mode(s: &str) -> Result<SweepMode, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = SweepMode::ALL.iter().map(|m| m.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

fn parse_simple_order(s: &str) -> Result<SimpleRootOrder, String> {
    s.parse().map_err(|e| format!("{e}; expected index-ascending, index-descending or roots joined by '<'"))
}

/// Whether the command found what it checked to hold.
#[derive(Debug, PartialEq, Eq)]
enum Outcome {
    Ok,
    Violations,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    match execute(cli, &mut stdout.lock()) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Violations) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<Outcome> {
    match cli.command {
        Command::Smooth { perm, json } => smooth(&perm, json, out),
        Command::Order(args) => order(args, out),
        Command::Sweep(args) => sweep(args, out),
        Command::Typed { command } => typed(command, out),
    }
}

fn parse_perm(text: &str) -> Result<Permutation> {
    Permutation::parse(text).with_context(|| format!("invalid permutation {text:?}"))
}

fn smooth(text: &str, json: bool, out: &mut dyn Write) -> Result<Outcome> {
    let w = parse_perm(text)?;
    let by_pattern = is_smooth_pattern(&w);
    let by_length = is_smooth_length(&w);
    let reflections = c_t(&w).len();
    let witness = ["3412", "4231"].into_iter().find_map(|p| {
        let pattern = Permutation::parse(p).expect("valid pattern");
        w.find_pattern(&pattern).map(|positions| (p, positions))
    });
    if json {
        let value = json!({
            "schema": "bruhat-chains/smooth/v1",
            "element": w,
            "smooth_by_pattern": by_pattern,
            "smooth_by_length": by_length,
            "length": w.length(),
            "reflections_below": reflections,
            "witness": witness.as_ref().map(|(p, pos)| json!({"pattern": p, "positions": pos})),
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
    } else {
        let verdict = |s: bool| if s { "smooth" } else { "not smooth" };
        writeln!(out, "w = {w}")?;
        writeln!(out, "pattern avoidance: {}", verdict(by_pattern))?;
        writeln!(out, "length criterion:  {}", verdict(by_length))?;
        writeln!(out, "length: {}", w.length())?;
        writeln!(out, "|C_T(w)|: {reflections}")?;
        if let Some((p, positions)) = &witness {
            let pos: Vec<String> = positions.iter().map(|p| p.to_string()).collect();
            writeln!(out, "pattern {p} at positions ({})", pos.join(","))?;
        }
    }
    Ok(if by_pattern == by_length { Outcome::Ok } else { Outcome::Violations })
}

fn chain_text(report: &VerificationReport, suffix: bool) -> String {
    let (chain, saturated, first) = if suffix {
        (&report.suffix_chain, report.suffix_saturated, report.suffix_first_non_cover)
    } else {
        (&report.prefix_chain, report.prefix_saturated, report.prefix_first_non_cover)
    };
    let steps: Vec<String> = chain.elements().iter().map(|p| p.to_string()).collect();
    let status = match first {
        None if saturated => "saturated".to_string(),
        Some(step) => format!("not saturated, first non-cover at step {step}"),
        None => "not saturated".to_string(),
    };
    format!("{} ({status})", steps.join(" -> "))
}

fn write_report(report: &VerificationReport, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "order: {}", report.order)?;
    let ok = if report.product_ok { "equals w" } else { "differs from w" };
    writeln!(out, "product: {} ({ok})", report.product)?;
    writeln!(out, "prefix chain: {}", chain_text(report, false))?;
    writeln!(out, "suffix chain: {}", chain_text(report, true))
}

fn order(args: OrderArgs, out: &mut dyn Write) -> Result<Outcome> {
    let w = parse_perm(&args.perm)?;
    let n = w.degree();
    let (order, constructed) = match &args.verify {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            (ReflectionOrder::parse(n, &text).with_context(|| format!("parsing {}", path.display()))?, false)
        }
        None => {
            if !is_smooth_pattern(&w) {
                bail!("{w} is not smooth; pass --verify FILE to check an explicit order");
            }
            (construct_compatible_order(&w)?, true)
        }
    };
    let report = verify_theorem(&w, &order)?;
    let all = if args.enumerate {
        if !is_smooth_pattern(&w) {
            bail!("--enumerate needs a smooth permutation");
        }
        Some(enumerate_compatible_orders(&c23(&w), args.max_reflections)?)
    } else {
        None
    };
    if let Some(path) = &args.dot {
        if !is_smooth_pattern(&w) {
            bail!("--dot needs a smooth permutation");
        }
        fs::write(path, move_graph_dot(&c23(&w))?).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &args.chain_dot {
        fs::write(path, report.prefix_chain.to_dot("prefix_chain"))
            .with_context(|| format!("writing {}", path.display()))?;
    }

    if args.json {
        let value = json!({
            "schema": "bruhat-chains/order/v1",
            "constructed": constructed,
            "report": report,
            "compatible_orders": all,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
    } else {
        writeln!(out, "w = {w}")?;
        write_report(&report, out)?;
        if let Some(all) = &all {
            writeln!(out, "compatible orders: {}", all.len())?;
            for o in all {
                writeln!(out, "  {o}")?;
            }
        }
    }
    // an explicit order is a query, not a claim
    Ok(if !constructed || report.all_ok() { Outcome::Ok } else { Outcome::Violations })
}

fn sweep(args: SweepArgs, out: &mut dyn Write) -> Result<Outcome> {
    let size = match (args.mode, args.n, args.rank) {
        (SweepMode::ConjectureD, _, Some(r)) => r,
        (SweepMode::ConjectureD, _, None) => bail!("conjecture-d needs --rank"),
        (_, Some(n), None) => n,
        (_, _, Some(_)) => bail!("--rank only applies to conjecture-d; use --n"),
        (_, None, None) => bail!("{} needs --n", args.mode),
    };
    let mut config = SweepConfig::new(args.mode, size);
    config.workers = args.workers;
    config.sample = args.sample;
    config.seed = args.seed;
    config.simple_order = args.simple_order;
    if let Some(cap) = args.max_reflections {
        config.max_reflections = cap;
    }
    let report = run_sweep(&config)?;
    let json_text = report.to_json();
    if let Some(path) = &args.output {
        fs::write(path, format!("{json_text}\n")).with_context(|| format!("writing {}", path.display()))?;
    }
    if args.json {
        writeln!(out, "{json_text}")?;
    } else {
        let c = &report.counts;
        writeln!(out, "mode: {} size: {}", report.mode, report.size)?;
        if let (Some(k), Some(seed)) = (report.sample, report.seed) {
            writeln!(out, "sample: {k} elements, seed {seed}")?;
        }
        if let Some(order) = &report.simple_root_order {
            writeln!(out, "simple-root order: {order}")?;
        }
        writeln!(out, "elements: {} smooth: {} orders: {} moves: {} wedges: {}", c.elements, c.smooth, c.orders, c.moves, c.wedges)?;
        writeln!(out, "violations: {}", report.violations.len())?;
        for v in &report.violations {
            writeln!(out, "  {}: {}", v.element, v.detail)?;
        }
    }
    Ok(if report.passed { Outcome::Ok } else { Outcome::Violations })
}

fn typed(command: TypedCommand, out: &mut dyn Write) -> Result<Outcome> {
    match command {
        TypedCommand::Roots { rank, json } => {
            let system = RootSystem::new(rank)?;
            let covers = system.root_poset_covers();
            if json {
                let pairs: Vec<_> = covers.iter().map(|(a, b)| json!([a, b])).collect();
                let value = json!({
                    "schema": "bruhat-chains/roots-d/v1",
                    "rank": rank,
                    "roots": system.roots,
                    "simple": system.simple,
                    "positive": system.positive,
                    "root_poset_covers": pairs,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
            } else {
                let list = |v: &[bruhat_chains::typed::RootD]| {
                    v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ")
                };
                writeln!(out, "D{rank}: |R| = {}, |R+| = {}, |Pi| = {}", system.roots.len(), system.positive.len(), system.simple.len())?;
                writeln!(out, "simple: {}", list(&system.simple))?;
                writeln!(out, "positive: {}", list(&system.positive))?;
                writeln!(out, "root poset covers: {}", covers.len())?;
            }
            Ok(Outcome::Ok)
        }
        TypedCommand::Smooth { element, json } => {
            let w = SignedPermutation::parse(&element)?;
            let group = WeylGroupD::new(w.rank())?;
            let k = group.index_of(&w)?;
            let rgf = group.rank_generating_function(k);
            let smooth = is_smooth_d(&group, k);
            if json {
                let value = json!({
                    "schema": "bruhat-chains/smooth-d/v1",
                    "element": w,
                    "length": group.length(k),
                    "rank_generating_function": rgf,
                    "smooth": smooth,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
            } else {
                writeln!(out, "w = {w}")?;
                writeln!(out, "length: {}", group.length(k))?;
                writeln!(out, "rank generating function: {rgf:?}")?;
                writeln!(out, "{}", if smooth { "smooth" } else { "not smooth" })?;
            }
            Ok(Outcome::Ok)
        }
        TypedCommand::Order { element, simple_order, enumerate, max_reflections, json } => {
            let w = SignedPermutation::parse(&element)?;
            let ctx = TypeD::new(w.rank(), simple_order)?;
            typed_order(&ctx, &w, enumerate, max_reflections, json, out)
        }
        TypedCommand::Conjecture { rank, simple_order, workers, max_reflections, verbose, json } => {
            let pool = rayon_pool(workers)?;
            let options = ConjectureOptions { simple_order, cap: max_reflections };
            let report = pool.install(|| verify_conjecture_d(rank, options))?;
            write_conjecture(&report, verbose, json, out)?;
            Ok(if report.passed { Outcome::Ok } else { Outcome::Violations })
        }
    }
}

fn rayon_pool(workers: usize) -> Result<rayon::ThreadPool> {
    if workers == 0 {
        bail!("workers must be at least 1");
    }
    Ok(rayon::ThreadPoolBuilder::new().num_threads(workers).build()?)
}

fn typed_order(
    ctx: &TypeD,
    w: &SignedPermutation,
    enumerate: bool,
    cap: usize,
    json: bool,
    out: &mut dyn Write,
) -> Result<Outcome> {
    let group = ctx.group();
    let k = group.index_of(w)?;
    let a = ctx.c23(k);
    let (violation, _) = ctx.admissibility_violation(&a);
    let (roots, system) = ctx.constraint_system(&a);
    if roots.len() > cap {
        bail!("{} reflections exceed the cap {cap}", roots.len());
    }
    let mut orders = Vec::new();
    let _ = system.for_each_order(|indices| {
        orders.push(indices.iter().map(|&i| roots[i].clone()).collect::<Vec<_>>());
        if enumerate {
            std::ops::ControlFlow::Continue(())
        } else {
            std::ops::ControlFlow::Break(())
        }
    });
    let products: Vec<bool> =
        orders.iter().map(|o| ctx.product(o).map(|p| p == k)).collect::<bruhat_chains::Result<_>>()?;
    if json {
        let value = json!({
            "schema": "bruhat-chains/order-d/v1",
            "element": w,
            "simple_root_order": ctx.simple_order(),
            "smooth": is_smooth_d(group, k),
            "c23": a,
            "admissibility_violation": violation,
            "orders": orders,
            "products_equal_w": products,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
    } else {
        writeln!(out, "w = {w} ({})", if is_smooth_d(group, k) { "smooth" } else { "not smooth" })?;
        writeln!(out, "simple-root order: {}", ctx.simple_order())?;
        let members: Vec<String> = a.iter().map(|m| m.to_string()).collect();
        writeln!(out, "C(w): {} members", members.len())?;
        for m in &members {
            writeln!(out, "  {m}")?;
        }
        match &violation {
            None => writeln!(out, "admissible")?,
            Some(v) => writeln!(out, "not admissible: {v}")?,
        }
        if orders.is_empty() {
            writeln!(out, "no compatible order")?;
        }
        for (o, ok) in orders.iter().zip(&products) {
            let names: Vec<String> = o.iter().map(|r| format!("t({r})")).collect();
            writeln!(out, "order: {} (product {})", names.join(" "), if *ok { "equals w" } else { "differs" })?;
        }
    }
    let ok = violation.is_none() && !orders.is_empty() && products.iter().all(|&p| p);
    Ok(if ok { Outcome::Ok } else { Outcome::Violations })
}

fn write_conjecture(report: &ConjectureReport, verbose: bool, json: bool, out: &mut dyn Write) -> Result<()> {
    if json {
        let mut value = serde_json::to_value(report)?;
        if !verbose {
            let failing: Vec<_> = report.counterexample_elements().collect();
            value["verdicts"] = serde_json::to_value(failing)?;
        }
        writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
        return Ok(());
    }
    writeln!(out, "D{}: {} elements, {} smooth", report.rank, report.group_order, report.smooth_elements)?;
    writeln!(out, "simple-root order: {}", report.simple_root_order)?;
    writeln!(out, "compatible orders checked: {} (saturated: {})", report.orders_checked, report.saturated_orders)?;
    writeln!(out, "undecided comparisons: {}", report.incomparable_comparisons)?;
    writeln!(out, "counterexamples: {}", report.counterexamples)?;
    for v in report.counterexample_elements() {
        let why = v.admissibility_violation.clone().unwrap_or_else(|| {
            format!("orders={} wrong_products={}", v.compatible_orders, v.wrong_products)
        });
        writeln!(out, "  {}: {why}", v.element)?;
    }
    writeln!(out, "{}", if report.passed { "pass" } else { "fail" })?;
    Ok(())
}
