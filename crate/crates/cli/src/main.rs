//! `lawbench`: exact lawlessness-growth experiments over pluggable
//! group backends, with machine-readable reports.
//!
//! Exit codes: 0 all certified checks passed; 1 a certificate failed;
//! 2 configuration error. Reruns with identical flags produce
//! byte-identical reports. `LAWBENCH_THREADS` caps worker parallelism.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use lawbench_core::engine;
use lawbench_core::golod;
use lawbench_core::grigorchuk::{self, GrigBackend, PhiEmbedding};
use lawbench_core::groups::{FreeBackend, GroupBackend, SymBackend};
use lawbench_core::report::GrowthTable;
use lawbench_core::rfbounds;
use lawbench_core::slowgrowth::{self, GrowthFn, SparsePair, WitnessRegistry};
use lawbench_core::thompson;
use lawbench_core::words::FreeWord;
use lawbench_core::wreath::{self, WreathBackend};

#[derive(Parser)]
#[command(name = "lawbench", version, about = "Exact lawlessness-growth toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct OutputOpts {
    /// Report format: csv or json
    #[arg(long, default_value = "csv")]
    format: String,
    /// Write the report to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Lawlessness growth table A(n) for a backend
    Growth {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 6)]
        budget: u64,
        /// Restrict to the words listed in this file (one per line)
        #[arg(long)]
        words_file: Option<PathBuf>,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Complexity of a single word
    Complexity {
        #[arg(long)]
        group: String,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 6)]
        budget: u64,
    },
    /// Tuple surviving all short words simultaneously
    Witness {
        #[arg(long)]
        group: String,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 8)]
        budget: u64,
    },
    /// Combine words into one with the union vanishing set
    Combine {
        words: Vec<String>,
        #[arg(long, default_value_t = 2)]
        rank: usize,
    },
    /// Shortest-law search in iterated wreath products of C_2
    WreathLaw {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_len: usize,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        /// Instead of searching, dump the witness tuple for this word
        /// as JSON portraits
        #[arg(long)]
        witness: Option<String>,
    },
    /// Grigorchuk-group experiments
    Grig {
        #[command(subcommand)]
        cmd: GrigCmd,
    },
    /// Thompson's group F checks
    Thompson {
        #[command(subcommand)]
        cmd: ThompsonCmd,
    },
    /// Golod-Shafarevich certificates
    Gs {
        #[command(subcommand)]
        cmd: GsCmd,
    },
    /// Slow-lawlessness-growth construction
    Slowgrowth {
        #[command(subcommand)]
        cmd: SlowCmd,
    },
    /// Residual finiteness lower-bound certificates
    Rf {
        #[command(subcommand)]
        cmd: RfCmd,
    },
    /// Run the full verification suite
    PaperCheck {
        /// Include the long-running checks (the W_2 embedding)
        #[arg(long)]
        full: bool,
    },
}

#[derive(Subcommand)]
enum GrigCmd {
    /// Torsion growth table pi(n), all orders powers of two
    Torsion {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// The wreath-product embedding a_i -> y_{5i}^4
    Phi {
        #[arg(long)]
        n: usize,
        /// Verify injectivity on all of W_n
        #[arg(long)]
        verify: bool,
    },
    /// chi(x^(2^m)) by ball scan
    Power {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 8)]
        budget: usize,
    },
    /// The y_n elements and their certificates
    Y {
        #[arg(long)]
        n: usize,
        /// Emit the canonical portraits as nested JSON
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum ThompsonCmd {
    /// Recursion + membership + exhaustive word survival at (U_n, V_n)
    Check {
        #[arg(long)]
        n: usize,
        /// Emit U_n and V_n as JSON breakpoint lists
        #[arg(long)]
        json: bool,
    },
    /// Budgeted BFS attempt at |U_0| in the {A,B} word metric
    ProbeU0 {
        #[arg(long, default_value_t = 6)]
        radius: usize,
        #[arg(long, default_value_t = 200_000)]
        max_elems: usize,
    },
}

#[derive(Subcommand)]
enum GsCmd {
    /// Verify the inequality for a schedule file
    Verify {
        #[arg(long, default_value_t = 2)]
        k: u32,
        /// Override the prime recorded in the schedule file
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        tau: String,
        #[arg(long)]
        schedule: PathBuf,
    },
    /// Build the linear-torsion schedule and find the minimal m0
    Schedule {
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value = "2")]
        q: String,
        #[arg(long, default_value = "3/5")]
        c: String,
        #[arg(long, default_value = "3/4")]
        tau: String,
        #[arg(long, default_value_t = 4)]
        depth: u32,
        /// Write the accepted schedule as JSON
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SlowCmd {
    /// Certify A(n) <= f(n) up to n
    Verify {
        /// Target function: log (floor(log2)+2) or linear (n+1)
        #[arg(long, default_value = "log")]
        f: String,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Spotless witness pair for one level
    Witness {
        #[arg(long)]
        l: usize,
    },
}

#[derive(Subcommand)]
enum RfCmd {
    /// Certificate F_C(n) > bound for a backend and class
    Bound {
        #[arg(long)]
        group: String,
        /// Class: p2 (2-groups of order <= 2^m) or all (order <= l)
        #[arg(long, default_value = "p2")]
        class: String,
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long, default_value_t = 6)]
        budget: u64,
    },
}

fn emit(output: &OutputOpts, csv: String, json: String) -> Result<(), String> {
    let body = match output.format.as_str() {
        "csv" => csv,
        "json" => json,
        other => return Err(format!("unknown format {other:?} (use csv or json)")),
    };
    match &output.out {
        Some(path) => fs::write(path, body).map_err(|e| e.to_string()),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn emit_table(output: &OutputOpts, table: &GrowthTable) -> Result<(), String> {
    emit(output, table.to_csv(), table.to_json())
}

/// Config errors exit 2, certificate failures exit 1.
enum Failure {
    Config(String),
    Certificate(String),
}

impl Failure {
    fn code(&self) -> ExitCode {
        match self {
            Failure::Config(_) => ExitCode::from(2),
            Failure::Certificate(_) => ExitCode::from(1),
        }
    }
}

fn cfg<E: ToString>(e: E) -> Failure {
    Failure::Config(e.to_string())
}

fn cert<E: ToString>(e: E) -> Failure {
    Failure::Certificate(e.to_string())
}

fn growth_for<B>(
    backend: &B,
    n: usize,
    rank: usize,
    budget: u64,
    words: Option<Vec<FreeWord>>,
    output: &OutputOpts,
) -> Result<(), Failure>
where
    B: GroupBackend + Sync,
    B::Elem: Clone + Send + Sync,
{
    let ball = engine::ball(backend, budget as usize, 4_000_000).map_err(cert)?;
    let table = match words {
        Some(words) => engine::growth_over_words(backend, &ball, &words, budget).map_err(cert)?,
        None => engine::lawlessness_growth(backend, &ball, n, rank, budget).map_err(cert)?,
    };
    emit_table(output, &table).map_err(cfg)
}

fn complexity_for<B>(backend: &B, word: &FreeWord, budget: u64) -> Result<(), Failure>
where
    B: GroupBackend + Sync,
    B::Elem: Clone + Send + Sync,
{
    let ball = engine::ball(backend, budget as usize, 4_000_000).map_err(cert)?;
    let res = engine::complexity(backend, &ball, word, budget).map_err(cert)?;
    match res.outcome {
        lawbench_core::SearchOutcome::Exact(v) => {
            let lens = res.witness.as_ref().map(|w| w.lengths.clone()).unwrap_or_default();
            println!("chi({word}) = {v}  (witness component lengths {lens:?})");
        }
        lawbench_core::SearchOutcome::BudgetExceeded { budget } => {
            println!("chi({word}) > {budget} or the word is a law (budget exhausted)");
        }
    }
    Ok(())
}

fn witness_for<B>(backend: &B, l: usize, rank: usize, budget: u64) -> Result<(), Failure>
where
    B: GroupBackend + Sync,
    B::Elem: Clone + Send + Sync,
{
    let ball = engine::ball(backend, budget as usize, 4_000_000).map_err(cert)?;
    let t = engine::find_spotless_tuple(backend, &ball, l, rank, budget).map_err(cert)?;
    println!(
        "spotless tuple for all |v| <= {l}: component lengths {:?}, total {}",
        t.lengths, t.total
    );
    Ok(())
}

/// Dispatches a backend selector like `free2`, `sym5`, `w3`, `grig`,
/// `thompson` to a monomorphized call.
macro_rules! with_backend {
    ($group:expr, |$b:ident| $body:expr) => {{
        let g: &str = $group;
        if let Some(k) = g.strip_prefix("free") {
            let k: usize = k.parse().map_err(|_| cfg(format!("bad rank in {g:?}")))?;
            let $b = FreeBackend::new(k);
            $body
        } else if let Some(n) = g.strip_prefix("sym") {
            let n: usize = n.parse().map_err(|_| cfg(format!("bad degree in {g:?}")))?;
            let $b = SymBackend::new(n);
            $body
        } else if let Some(n) = g.strip_prefix('w') {
            let n: usize = n.parse().map_err(|_| cfg(format!("bad depth in {g:?}")))?;
            let $b = WreathBackend::new(n);
            $body
        } else if g == "grig" {
            let $b = GrigBackend::new();
            $body
        } else if g == "thompson" {
            let $b = thompson::ThompsonBackend::new();
            $body
        } else {
            return Err(Failure::Config(format!(
                "unknown group {g:?} (free<k>, sym<n>, w<n>, grig, thompson)"
            )));
        }
    }};
}

fn read_words_file(path: &PathBuf) -> Result<Vec<FreeWord>, Failure> {
    let body = fs::read_to_string(path).map_err(cfg)?;
    body.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| FreeWord::parse(l).map_err(cfg))
        .collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Growth { group, n, rank, budget, words_file, output } => {
            let words = words_file.as_ref().map(read_words_file).transpose()?;
            with_backend!(&group, |b| growth_for(&b, n, rank, budget, words, &output))
        }
        Command::Complexity { group, word, budget } => {
            let w = FreeWord::parse(&word).map_err(cfg)?;
            if w.is_empty() {
                return Err(Failure::Config("word reduces to the identity".into()));
            }
            with_backend!(&group, |b| complexity_for(&b, &w, budget))
        }
        Command::Witness { group, l, rank, budget } => {
            with_backend!(&group, |b| witness_for(&b, l, rank, budget))
        }
        Command::Combine { words, rank } => {
            if words.is_empty() {
                return Err(Failure::Config("no words given".into()));
            }
            let parsed: Result<Vec<FreeWord>, _> =
                words.iter().map(|s| FreeWord::parse(s)).collect();
            let parsed = parsed.map_err(cfg)?;
            let combined = engine::combine(rank, &parsed).map_err(cert)?;
            let m = parsed.len();
            let max_len = parsed.iter().map(|w| w.len()).max().unwrap();
            println!("{combined}");
            println!(
                "# length {} <= 16 m^2 max|w_i| = {}",
                combined.len(),
                16 * m * m * max_len
            );
            Ok(())
        }
        Command::WreathLaw { n, max_len, rank, witness } => {
            if let Some(word) = witness {
                let w = FreeWord::parse(&word).map_err(cfg)?;
                let wit = wreath::law_witness(&w, n, rank).map_err(cert)?;
                let dump = json!({
                    "word": w.to_string(),
                    "construction_lengths": wit.construction_lengths,
                    "orbit": wit.orbit.iter().map(|leaf| {
                        leaf.iter().map(|&b| b as u8).collect::<Vec<_>>()
                    }).collect::<Vec<_>>(),
                    "tuple": wit.tuple.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&dump).unwrap());
                return Ok(());
            }
            match wreath::shortest_law(n, max_len, rank).map_err(cert)? {
                wreath::LawSearch::Found(w) => {
                    println!("shortest law of W_{n} within length {max_len}: {w} (length {})", w.len())
                }
                wreath::LawSearch::NotFoundWithin(l) => {
                    println!("no law of W_{n} up to length {l}")
                }
            }
            Ok(())
        }
        Command::Grig { cmd } => run_grig(cmd),
        Command::Thompson { cmd } => run_thompson(cmd),
        Command::Gs { cmd } => run_gs(cmd),
        Command::Slowgrowth { cmd } => run_slow(cmd),
        Command::Rf { cmd } => run_rf(cmd),
        Command::PaperCheck { full } => {
            let mut failed = false;
            for (label, result) in lawbench_core::checks::all_checks(full) {
                match result {
                    Ok(detail) => println!("paper-check {label}: PASS ({detail})"),
                    Err(why) => {
                        failed = true;
                        println!("paper-check {label}: FAIL ({why})");
                    }
                }
            }
            if failed {
                Err(Failure::Certificate("paper-check failed".into()))
            } else {
                Ok(())
            }
        }
    }
}

fn run_grig(cmd: GrigCmd) -> Result<(), Failure> {
    match cmd {
        GrigCmd::Torsion { n, output } => {
            let report = grigorchuk::torsion_growth(n, 4_000_000).map_err(cert)?;
            if !report.all_orders_pow2 {
                return Err(Failure::Certificate("order not a power of two".into()));
            }
            emit_table(&output, &report.table).map_err(cfg)?;
            eprintln!("# max o(g)/|g|^(3/2) over B({n}) = {:.4}", report.max_order_ratio);
            Ok(())
        }
        GrigCmd::Phi { n, verify } => {
            let phi = PhiEmbedding::new(n, 1 << 22).map_err(cert)?;
            for (i, w) in phi.image_words.iter().enumerate() {
                println!("k_{} = y_{}^4: word length {}", i + 1, 5 * i, w.len());
            }
            if verify {
                let count = phi.verify_injective().map_err(cert)?;
                phi.verify_homomorphism(100, 0x5eed).map_err(cert)?;
                println!("injective on all {count} nontrivial elements of W_{n}; 100 product spot-checks pass");
            }
            Ok(())
        }
        GrigCmd::Power { m, budget } => {
            let chi = grigorchuk::power_complexity(m, budget, 4_000_000).map_err(cert)?;
            println!("chi(x^(2^{m})) = {chi}");
            Ok(())
        }
        GrigCmd::Y { n, json } => {
            let ys = grigorchuk::y_elements(n, 16, 4_000_000).map_err(cert)?;
            let certs = grigorchuk::certify_y(&ys.words);
            for c in &certs {
                if !c.support_ok || !c.recursion_bound_ok {
                    return Err(Failure::Certificate(format!("y_{} certificate failed", c.n)));
                }
                println!(
                    "y_{}: length {}, supported at 0^{} with section abab",
                    c.n, c.length, c.n
                );
            }
            if json {
                let dump: Vec<_> = ys
                    .words
                    .iter()
                    .map(|w| grigorchuk::portrait_json(&w.to_portrait()))
                    .collect();
                println!("{}", serde_json::to_string_pretty(&dump).unwrap());
            }
            Ok(())
        }
    }
}

fn run_thompson(cmd: ThompsonCmd) -> Result<(), Failure> {
    match cmd {
        ThompsonCmd::Check { n, json } => {
            for j in 0..n {
                if !thompson::check_recursion(j) {
                    return Err(Failure::Certificate(format!("recursion failed at {j}")));
                }
            }
            for j in 0..=n {
                if !thompson::is_member(&thompson::make_un(j).to_raw())
                    || !thompson::is_member(&thompson::make_vn(j).to_raw())
                {
                    return Err(Failure::Certificate(format!("membership failed at {j}")));
                }
            }
            let report = thompson::brin_squier_check(n).map_err(cert)?;
            println!(
                "U/V recursion and membership up to {n}; all {} words of length <= {n} survive \
                 at (U_{n}, V_{n}) [{} and {} breakpoints]",
                report.words_checked, report.un_breakpoints, report.vn_breakpoints
            );
            println!("# {}", thompson::length_bound_note(n));
            if json {
                let dump = json!({
                    "U_n": thompson::make_un(n).to_json(),
                    "V_n": thompson::make_vn(n).to_json(),
                });
                println!("{}", serde_json::to_string_pretty(&dump).unwrap());
            }
            Ok(())
        }
        ThompsonCmd::ProbeU0 { radius, max_elems } => {
            match thompson::word_length_probe(&thompson::make_un(0), radius, max_elems) {
                Some(l) => println!("|U_0| = {l} in the {{A,B}} metric"),
                None => println!(
                    "U_0 not found within radius {radius} ({max_elems} elements); \
                     |U_0| stays the symbolic constant M"
                ),
            }
            Ok(())
        }
    }
}

fn run_gs(cmd: GsCmd) -> Result<(), Failure> {
    match cmd {
        GsCmd::Verify { k, p, tau, schedule } => {
            let body = fs::read_to_string(&schedule).map_err(cfg)?;
            let mut file: golod::ScheduleFile = serde_json::from_str(&body).map_err(cfg)?;
            if let Some(p) = p {
                file.p = p;
            }
            let tau = golod::parse_rational(&tau).map_err(cfg)?;
            let spec = file.tail_spec().map_err(cfg)?;
            let cert =
                golod::gs_verify(k, &tau, &file.finite_degrees, Some(&spec)).map_err(cfg)?;
            println!("{}", serde_json::to_string_pretty(&cert).unwrap());
            if cert.accepted {
                Ok(())
            } else {
                Err(Failure::Certificate(cert.reason))
            }
        }
        GsCmd::Schedule { k, p, q, c, tau, depth, emit } => {
            let q = golod::parse_rational(&q).map_err(cfg)?;
            let c = golod::parse_rational(&c).map_err(cfg)?;
            let tau = golod::parse_rational(&tau).map_err(cfg)?;
            let schedule = golod::build_schedule(k, p, &q, &c, &tau, depth, 24).map_err(cert)?;
            println!(
                "minimal m0 = {}; torsion bound o(g) <= ({}) |g|; a_m floors: {:?}",
                schedule.m0,
                schedule.torsion_slope,
                schedule.a_floor.iter().map(|a| a.to_string()).collect::<Vec<_>>()
            );
            println!("{}", serde_json::to_string_pretty(&schedule.certificate).unwrap());
            if let Some(path) = emit {
                let file = golod::ScheduleFile {
                    k,
                    p,
                    q: schedule.q.to_string(),
                    c: Some(schedule.c.to_string()),
                    m0: schedule.m0,
                    exact_blocks: 3,
                    finite_degrees: vec![],
                };
                fs::write(path, serde_json::to_string_pretty(&file).unwrap()).map_err(cfg)?;
            }
            Ok(())
        }
    }
}

fn run_slow(cmd: SlowCmd) -> Result<(), Failure> {
    match cmd {
        SlowCmd::Verify { f, nmax, output } => {
            let f = match f.as_str() {
                "log" => GrowthFn::Log2Plus2,
                "linear" => GrowthFn::LinearPlus1,
                other => return Err(Failure::Config(format!("unknown f {other:?}"))),
            };
            let mut registry = WitnessRegistry::new(f.clone(), SparsePair::minimal(38), nmax);
            let report = slowgrowth::verify_slow(&f, nmax, &mut registry).map_err(cert)?;
            let mut csv = String::from("n,words,level,chi_bound,f\n");
            for e in &report.entries {
                csv.push_str(&format!(
                    "{},{},{},{},{}\n",
                    e.n, e.words_checked, e.level_index, e.chi_bound, e.f_n
                ));
            }
            let json = serde_json::to_string_pretty(&report).unwrap();
            emit(&output, csv, json).map_err(cfg)
        }
        SlowCmd::Witness { l } => {
            let pair = slowgrowth::delta_witness(l, l as u64, 2, 16).map_err(cert)?;
            println!(
                "level-{l} witness in Sym({}): orders ({}, {}), certified to length {l}",
                pair.component, pair.g_order, pair.h_order
            );
            Ok(())
        }
    }
}

fn run_rf(cmd: RfCmd) -> Result<(), Failure> {
    match cmd {
        RfCmd::Bound { group, class, m, budget } => match (group.as_str(), class.as_str()) {
            ("grig", "p2") => {
                let certificate = rfbounds::grig_rf_certificate(m, 16, 4_000_000).map_err(cert)?;
                println!("{}", serde_json::to_string_pretty(&certificate).unwrap());
                Ok(())
            }
            (g, "all") => {
                let bound = 1u64 << m;
                let law = rfbounds::exponent_law(bound);
                with_backend!(g, |b| {
                    let ball = engine::ball(&b, budget as usize, 4_000_000).map_err(cert)?;
                    let certificate = rfbounds::rf_lower_bound(
                        &b,
                        &ball,
                        &law,
                        &format!("finite groups of order <= {bound}"),
                        bound,
                        budget,
                    )
                    .map_err(cert)?;
                    println!("{}", serde_json::to_string_pretty(&certificate).unwrap());
                    Ok(())
                })
            }
            _ => Err(Failure::Config(format!(
                "unsupported group/class pair {group:?}/{class:?}"
            ))),
        },
    }
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("LAWBENCH_THREADS") {
        if let Ok(t) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Config(msg) => eprintln!("configuration error: {msg}"),
                Failure::Certificate(msg) => eprintln!("certificate failure: {msg}"),
            }
            f.code()
        }
    }
}
