use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use satforge::campaign::{run_campaign, CampaignError, CampaignParams, CAMPAIGNS};
use satforge::constructions::{
    make_erdos_kp, make_g0, make_h0, make_h0_at, make_join_extremal, make_small_tree, make_star, make_t0k, make_t1k,
    make_tk, saturated_tree_of_order, SmallTree,
};
use satforge::formulas::{
    linear_forest_sat_bounds, order_constant, sat_join_k1, sat_k3_cup_pk_bounds, sat_k3_pk, sat_kp, sat_pk, OrderKind,
};
use satforge::io::{decode_all, encode, Format};
use satforge::saturation::{check_saturated, ForbiddenFamily, SaturationVerdict};
use satforge::search::{
    min_saturated_tree_order_with, sat_bruteforce_with, scan_saturated_trees_with, Budget, ScanOptions, Shard,
};
use satforge::Graph;

const EXIT_CAMPAIGN_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CONTAINS: u8 = 3;
const EXIT_MISSING: u8 = 4;

#[derive(Parser)]
#[command(name = "satforge", version, about = "Graph saturation constructions, checks and exhaustive verification")]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Enumeration caps: "trees=N,graphs=M", or a bare graph order.
    #[arg(long, global = true)]
    budget: Option<String>,
    /// Print machine-readable JSON instead of text summaries.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a named graph and write it out.
    Construct(ConstructArgs),
    /// Decide F-saturation for the graphs in a file ("-" for stdin).
    Check(CheckArgs),
    /// Exhaustive minimum over all graphs of order n.
    Bruteforce(BruteArgs),
    /// Run a verification campaign and print its report.
    Verify(VerifyArgs),
    /// Evaluate a closed-form saturation number.
    Formula(FormulaArgs),
    /// Scan saturated trees for uncovered non-star examples.
    Scan(ScanArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Tk,
    T0k,
    T1k,
    G0,
    H0,
    Tree,
    Star,
    Erdos,
    Small,
    Join,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Graph6,
    Edgelist,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Format {
        match f {
            OutFormat::Graph6 => Format::Graph6,
            OutFormat::Edgelist => Format::EdgeList,
        }
    }
}

#[derive(Args)]
struct ConstructArgs {
    kind: Kind,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Clique order for `erdos`.
    #[arg(long)]
    p: Option<usize>,
    /// Small tree id for `small` (T1, T2, T3).
    #[arg(long)]
    tree: Option<SmallTree>,
    /// Attachment vertex for `h0` (default: first checker-certified one).
    #[arg(long)]
    attachment: Option<usize>,
    /// Base graph file for `join`.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(short, long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "graph6")]
    format: OutFormat,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    family: ForbiddenFamily,
    /// Graph file; graph6 (one per line) or an edge list.
    file: PathBuf,
    #[arg(long, value_enum)]
    format: Option<OutFormat>,
}

#[derive(Args)]
struct BruteArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    family: ForbiddenFamily,
}

#[derive(Args)]
struct VerifyArgs {
    /// Campaign id; see --list.
    #[arg(required_unless_present = "list")]
    campaign: Option<String>,
    #[arg(long)]
    list: bool,
    /// k values: "10", "9..14", or "9,11,13".
    #[arg(long, value_parser = parse_list)]
    k: Option<List>,
    /// n values (or tree orders), same syntax as --k.
    #[arg(long, value_parser = parse_list)]
    n: Option<List>,
    #[arg(long)]
    no_prefilter: bool,
    /// Omit wall time and timestamp so reports are byte-reproducible.
    #[arg(long)]
    no_timestamp: bool,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulaName {
    OrderConstant,
    SatPk,
    SatK3Pk,
    SatKp,
    SatK3CupPk,
    SatJoinK1,
    LinearForest,
}

#[derive(Args)]
struct FormulaArgs {
    name: FormulaName,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    /// a, a0 or a1 for `order-constant`.
    #[arg(long, default_value = "a1")]
    kind: OrderKind,
    /// sat(n-1, F) for `sat-join-k1`.
    #[arg(long)]
    sat_f: Option<usize>,
    /// Path orders for `linear-forest`, descending: "6,4".
    #[arg(long, value_delimiter = ',')]
    orders: Vec<usize>,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    k: usize,
    /// Tree orders, e.g. "6..17"; omitted with --min to search upward.
    #[arg(long, value_parser = parse_list)]
    n: Option<List>,
    /// Find the smallest order with a saturated non-star tree, up to this cap.
    #[arg(long)]
    min: Option<usize>,
    #[arg(long)]
    no_prefilter: bool,
    #[arg(long)]
    include_stars: bool,
    /// Shard "i/c": only every c-th block of trees, starting at block i.
    #[arg(long)]
    shard: Option<String>,
}

#[derive(Clone)]
struct List(Vec<usize>);

/// "7", "9..14" or "9..=14" (both inclusive), or a comma list of those.
fn parse_list(s: &str) -> Result<List, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let b = b.strip_prefix('=').unwrap_or(b);
            let a: usize = a.trim().parse().map_err(|_| format!("bad range `{part}`"))?;
            let b: usize = b.trim().parse().map_err(|_| format!("bad range `{part}`"))?;
            if a > b {
                return Err(format!("empty range `{part}`"));
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| format!("bad number `{part}`"))?);
        }
    }
    if out.is_empty() {
        return Err("empty list".into());
    }
    Ok(List(out))
}

struct Failure {
    code: u8,
    msg: String,
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_USAGE, msg: e.to_string() }
}

fn io_fail(e: io::Error) -> Failure {
    // A closed pipe (`satforge ... | head`) is a normal way to stop reading.
    if e.kind() == io::ErrorKind::BrokenPipe {
        return Failure { code: 0, msg: String::new() };
    }
    Failure { code: EXIT_USAGE, msg: e.to_string() }
}

fn say(line: impl std::fmt::Display) -> Result<(), Failure> {
    writeln!(io::stdout(), "{line}").map_err(io_fail)
}

fn need(v: Option<usize>, flag: &str) -> Result<usize, Failure> {
    v.ok_or_else(|| usage(format!("--{flag} is required here")))
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(io_fail),
        None => io::stdout().write_all(text.as_bytes()).map_err(io_fail),
    }
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_fail)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
    }
}

fn summary(g: &Graph) -> String {
    let comps = g.connected_components().len();
    if comps > 1 {
        format!("components={comps} edges={}", g.edge_count())
    } else {
        format!("order={} edges={} diam={}", g.order(), g.edge_count(), g.diameter())
    }
}

fn construct(a: &ConstructArgs, json_out: bool) -> Result<(), Failure> {
    let g = match a.kind {
        Kind::Tk => make_tk(need(a.k, "k")?).map_err(usage)?,
        Kind::T0k => make_t0k(need(a.k, "k")?).map_err(usage)?,
        Kind::T1k => make_t1k(need(a.k, "k")?).map_err(usage)?,
        Kind::G0 => make_g0(need(a.n, "n")?, need(a.k, "k")?).map_err(usage)?,
        Kind::H0 => {
            let (n, k) = (need(a.n, "n")?, need(a.k, "k")?);
            match a.attachment {
                Some(v) => make_h0_at(n, k, v).map_err(usage)?,
                None => make_h0(n, k).map_err(usage)?,
            }
        }
        Kind::Tree => saturated_tree_of_order(need(a.n, "n")?, need(a.k, "k")?).map_err(usage)?,
        Kind::Star => make_star(need(a.n, "n")?).map_err(usage)?,
        Kind::Erdos => make_erdos_kp(need(a.n, "n")?, need(a.p, "p")?).map_err(usage)?,
        Kind::Small => make_small_tree(a.tree.ok_or_else(|| usage("--tree is required for `small`"))?),
        Kind::Join => {
            let path = a.input.as_ref().ok_or_else(|| usage("--input is required for `join`"))?;
            let base = decode_all(&read_input(path)?, None).map_err(usage)?;
            make_join_extremal(&base[0])
        }
    };
    let text = encode(&g, a.format.into());
    let line = if json_out {
        json!({
            "order": g.order(),
            "edges": g.edge_count(),
            "components": g.connected_components().len(),
            "diameter": g.diameter().finite(),
        })
        .to_string()
    } else {
        summary(&g)
    };
    match &a.out {
        Some(_) => {
            write_out(a.out.as_ref(), &text)?;
            say(&line)?;
        }
        None => {
            write_out(None, &text)?;
            eprintln!("{line}");
        }
    }
    Ok(())
}

fn verdict_code(v: &SaturationVerdict) -> u8 {
    match v {
        SaturationVerdict::Saturated => 0,
        SaturationVerdict::ContainsMember { .. } => EXIT_CONTAINS,
        SaturationVerdict::MissingEdge { .. } => EXIT_MISSING,
    }
}

fn check(a: &CheckArgs, json_out: bool) -> Result<u8, Failure> {
    let graphs = decode_all(&read_input(&a.file)?, a.format.map(Into::into)).map_err(usage)?;
    // The first non-saturated graph decides the exit code.
    let mut code = 0;
    for g in &graphs {
        let verdict = check_saturated(g, &a.family);
        if code == 0 {
            code = verdict_code(&verdict);
        }
        if json_out || graphs.len() == 1 {
            say(serde_json::to_string(&verdict).expect("verdicts serialize"))?;
        } else {
            let word = match verdict {
                SaturationVerdict::Saturated => "saturated".to_string(),
                SaturationVerdict::ContainsMember { member, .. } => format!("contains {member}"),
                SaturationVerdict::MissingEdge { u, v } => format!("missing edge {u} {v}"),
            };
            say(word)?;
        }
    }
    Ok(code)
}

fn verify(a: &VerifyArgs, budget: Budget) -> Result<u8, Failure> {
    if a.list {
        for (id, claim) in CAMPAIGNS {
            say(format_args!("{id:<14} {claim}"))?;
        }
        return Ok(0);
    }
    let id = a.campaign.as_deref().expect("clap enforces campaign or --list");
    let params = CampaignParams {
        ks: a.k.clone().map(|l| l.0).unwrap_or_default(),
        ns: a.n.clone().map(|l| l.0).unwrap_or_default(),
        prefilter: !a.no_prefilter,
        budget,
        record_time: !a.no_timestamp,
    };
    let report = run_campaign(id, &params).map_err(|e| match e {
        CampaignError::Unknown(_) | CampaignError::BadParams(_) => usage(e),
        CampaignError::Search(s) => usage(s),
    })?;
    write_out(a.out.as_ref(), &(report.to_json() + "\n"))?;
    if a.out.is_some() {
        eprintln!("{}: {}", report.campaign, if report.pass { "pass" } else { "FAIL" });
    }
    Ok(if report.pass { 0 } else { EXIT_CAMPAIGN_FAIL })
}

fn formula(a: &FormulaArgs) -> Result<(), Failure> {
    let k = || need(a.k, "k");
    let n = || need(a.n, "n");
    let value = match a.name {
        FormulaName::OrderConstant => json!({
            "value": order_constant(a.kind, k()?).map_err(usage)?,
            "valid_k_min": a.kind.min_k(k()?),
        }),
        FormulaName::SatPk => json!({
            "value": sat_pk(n()?, k()?).map_err(usage)?,
            "valid_n_min": order_constant(OrderKind::A, k()?).map_err(usage)?,
        }),
        FormulaName::SatK3Pk => json!({
            "value": sat_k3_pk(n()?, k()?).map_err(usage)?,
            "valid_n_min": order_constant(OrderKind::A1, k()?).map_err(usage)?,
        }),
        FormulaName::SatKp => json!({ "value": sat_kp(n()?, need(a.p, "p")?).map_err(usage)? }),
        FormulaName::SatK3CupPk => json!({
            "bounds": sat_k3_cup_pk_bounds(n()?, k()?).map_err(usage)?,
            "valid_n_min": 6 * order_constant(OrderKind::A1, k()?).map_err(usage)?,
        }),
        FormulaName::SatJoinK1 => json!({ "value": sat_join_k1(n()?, need(a.sat_f, "sat-f")?).map_err(usage)? }),
        FormulaName::LinearForest => json!({ "bounds": linear_forest_sat_bounds(n()?, &a.orders).map_err(usage)? }),
    };
    let mut out = value;
    out["formula"] = json!(FormulaName::to_possible_value(&a.name).expect("named").get_name());
    out["input"] = json!({ "k": a.k, "n": a.n, "p": a.p, "orders": a.orders });
    say(serde_json::to_string_pretty(&out).expect("values serialize"))?;
    Ok(())
}

fn scan(a: &ScanArgs, budget: Budget) -> Result<(), Failure> {
    if let Some(cap) = a.min {
        let (order, tree) = min_saturated_tree_order_with(a.k, cap, &budget).map_err(usage)?;
        let out = json!({ "k": a.k, "order": order, "graph6": satforge::io::graph6_encode(&tree) });
        say(serde_json::to_string_pretty(&out).expect("values serialize"))?;
        return Ok(());
    }
    let orders = &a.n.as_ref().ok_or_else(|| usage("--n or --min is required"))?.0;
    let (lo, hi) = (*orders.iter().min().expect("nonempty"), *orders.iter().max().expect("nonempty"));
    let shard = match &a.shard {
        None => Shard::ALL,
        Some(s) => {
            let (i, c) = s.split_once('/').ok_or_else(|| usage("--shard expects i/c"))?;
            let (i, c) = (i.parse().map_err(usage)?, c.parse().map_err(usage)?);
            Shard::new(i, c).map_err(usage)?
        }
    };
    let opts = ScanOptions { exclude_stars: !a.include_stars, prefilter: !a.no_prefilter, shard };
    let report = scan_saturated_trees_with(lo..=hi, a.k, &opts, &budget).map_err(usage)?;
    say(serde_json::to_string_pretty(&report).expect("reports serialize"))?;
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Failure> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(usage("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().map_err(usage)?;
    }
    let budget = match &cli.budget {
        Some(s) => Budget::parse(s).map_err(usage)?,
        None => Budget::from_env().map_err(usage)?,
    };
    match &cli.cmd {
        Cmd::Construct(a) => construct(a, cli.json).map(|_| 0),
        Cmd::Check(a) => check(a, cli.json),
        Cmd::Bruteforce(a) => {
            let r = sat_bruteforce_with(a.n, &a.family, &budget).map_err(usage)?;
            say(serde_json::to_string_pretty(&r).expect("results serialize"))?;
            Ok(0)
        }
        Cmd::Verify(a) => verify(a, budget),
        Cmd::Formula(a) => formula(a).map(|_| 0),
        Cmd::Scan(a) => scan(a, budget).map(|_| 0),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            if !f.msg.is_empty() {
                eprintln!("error: {}", f.msg);
            }
            ExitCode::from(f.code)
        }
    }
}
