use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tuza_cochain::certify::{certify, Certificate, CertifyConfig, CertifyError, Mode};
use tuza_cochain::fuzz::{random_thresholds, run_fuzz, FuzzConfig};
use tuza_cochain::graph::{Adjacency, CaseProfile, CoChainGraph, GeneralGraph};
use tuza_cochain::io::{
    certificate_to_json, graph_to_json, parse_certificate, parse_graph, read_text, relabel_certificate, write_text,
    GraphFile, IoError,
};
use tuza_cochain::oracle::{default_budget, exact_nu, exact_tau};
use tuza_cochain::search::{audit_inequalities, search_report, AuditRanges, Violation};

const EXIT_IO: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_VERIFY: u8 = 4;
const EXIT_BUDGET: u8 = 5;

#[derive(Parser)]
#[command(name = "tuza-cochain", version, about = "Triangle hitting set / packing certificates for co-chain graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a co-chain graph file.
    Gen(GenArgs),
    /// Certify a graph file.
    Certify(CertifyArgs),
    /// Re-check a certificate against a graph file.
    Verify { graph: PathBuf, certificate: PathBuf },
    /// Search for tuples where no recipe bound closes the ratio.
    Search {
        #[arg(long, default_value_t = 10)]
        limit: usize,
        /// Also list every bound variant and its deviations.
        #[arg(long)]
        variants: bool,
    },
    /// Check every inequality chain over a range of profiles.
    Audit {
        #[arg(long, default_value_t = 25)]
        max_l: usize,
        #[arg(long, default_value_t = 25)]
        max_m: usize,
        #[arg(long, default_value_t = 6)]
        realized_max: usize,
    },
    /// Certify random even-sided graphs.
    Fuzz(FuzzArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    l_size: Option<usize>,
    #[arg(long)]
    m_size: Option<usize>,
    /// Comma separated nonincreasing thresholds, one per left vertex.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["complete", "random", "profile"])]
    thresholds: Option<Vec<usize>>,
    /// Every left vertex adjacent to the whole right side.
    #[arg(long, conflicts_with_all = ["random", "profile"])]
    complete: bool,
    /// Uniform random thresholds.
    #[arg(long, conflicts_with = "profile")]
    random: bool,
    /// Realise `l,m,x_l,x_m` (sides 2l and 2m).
    #[arg(long, value_delimiter = ',')]
    profile: Option<Vec<usize>>,
    /// With --profile, the realisation with the most cross edges.
    #[arg(long, requires = "profile")]
    dense: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the `n`/`edges` form instead.
    #[arg(long)]
    general: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CertifyArgs {
    /// Graph file, or `-` for stdin.
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Guided)]
    mode: Mode,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = 12)]
    exact_cap: usize,
    /// Also solve exactly and report `τ` and `ν`.
    #[arg(long)]
    oracle: bool,
    /// Certificate file.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long, default_value_t = 1000)]
    count: usize,
    /// Largest half side on both sides.
    #[arg(long, default_value_t = 10)]
    max: usize,
    #[arg(long)]
    max_l: Option<usize>,
    #[arg(long)]
    max_m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    oracle_max: usize,
    #[arg(long, value_enum, default_value_t = Mode::Guided)]
    mode: Mode,
    #[arg(long)]
    budget: Option<u64>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        let code = match e {
            IoError::Io { .. } => EXIT_IO,
            IoError::Parse(_) | IoError::Graph(_) => EXIT_PARSE,
            IoError::NotCoChain(_) => EXIT_PRECONDITION,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<CertifyError> for Failure {
    fn from(e: CertifyError) -> Self {
        let code = match e {
            CertifyError::OddSides { .. } | CertifyError::Graph(_) => EXIT_PRECONDITION,
            CertifyError::BudgetExhausted { .. } => EXIT_BUDGET,
            _ => EXIT_VERIFY,
        };
        Failure::new(code, e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::new(EXIT_IO, format!("stdin: {e}")))?;
        Ok(s)
    } else {
        Ok(read_text(path)?)
    }
}

fn emit(output: Option<&Path>, text: &str) -> Outcome {
    match output {
        Some(p) => Ok(write_text(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn gen(a: GenArgs) -> Outcome {
    let need = |v: Option<usize>, name: &str| {
        v.ok_or_else(|| Failure::new(EXIT_PARSE, format!("--{name} is required")))
    };
    let g = if let Some(p) = &a.profile {
        if p.len() != 4 {
            return Err(Failure::new(EXIT_PARSE, "--profile takes four values l,m,x_l,x_m"));
        }
        let p = CaseProfile::new(p[0], p[1], p[2], p[3]);
        p.realize(a.dense).ok_or_else(|| Failure::new(EXIT_PRECONDITION, format!("profile {p} is not realizable")))?
    } else {
        let (l, m) = (need(a.l_size, "l-size")?, need(a.m_size, "m-size")?);
        let t = if let Some(t) = a.thresholds {
            t
        } else if a.complete {
            vec![m; l]
        } else if a.random {
            random_thresholds(&mut ChaCha8Rng::seed_from_u64(a.seed), l, m)
        } else {
            vec![0; l]
        };
        CoChainGraph::new(l, m, t).map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?
    };
    let file = if a.general {
        let general = g.to_general();
        GraphFile::General { n: general.order(), edges: general.edges().collect() }
    } else {
        GraphFile::from_cochain(&g)
    };
    emit(a.output.as_deref(), &graph_to_json(&file))
}

fn print_certificate(c: &Certificate) {
    println!("method={}", c.method);
    if let Some(case) = &c.case {
        println!("case={case}");
    }
    if let Some(p) = &c.profile {
        println!("profile={p}");
    }
    println!("h_size={}", c.h_size);
    println!("p_size={}", c.p_size);
    println!("hitting_valid={}", c.hitting_valid);
    println!("packing_valid={}", c.packing_valid);
    println!("ratio_ok={}", c.ratio_ok);
    println!("optimal={}", c.optimal);
    for n in &c.notes {
        println!("note={n}");
    }
}

fn run_certify(a: CertifyArgs) -> Outcome {
    let file = parse_graph(&read_input(&a.input)?)?;
    let (g, map) = file.to_cochain()?;
    let cfg = CertifyConfig { budget: a.budget.unwrap_or_else(default_budget), exact_cap: a.exact_cap };
    let mut cert = certify(&g, a.mode, &cfg)?;
    if a.oracle {
        let tau = exact_tau(&g, cfg.budget);
        let nu = exact_nu(&g, cfg.budget);
        println!("tau={} proven={}", tau.value, tau.proven);
        println!("nu={} proven={}", nu.value, nu.proven);
        let sandwich = (!tau.proven || tau.value <= cert.h_size) && (!nu.proven || cert.p_size <= nu.value);
        println!("sandwich_ok={sandwich}");
        if !sandwich {
            return Err(Failure::new(EXIT_VERIFY, "certificate sizes contradict the exact values"));
        }
    }
    if let Some(map) = &map {
        cert = relabel_certificate(&cert, map);
        cert.notes.push("vertex ids are those of the input file".into());
    }
    print_certificate(&cert);
    if let Some(out) = &a.output {
        write_text(out, &certificate_to_json(&cert))?;
    }
    if !cert.is_ok() {
        return Err(Failure::new(EXIT_VERIFY, "certificate is not valid within the ratio"));
    }
    Ok(())
}

fn run_verify(graph: &Path, certificate: &Path) -> Outcome {
    let file = parse_graph(&read_input(graph)?)?;
    let cert = parse_certificate(&read_text(certificate)?)?;
    let general = match &file {
        GraphFile::General { n, edges } => GeneralGraph::new(*n, edges.iter().map(|e| (e.0, e.1)))
            .map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?,
        GraphFile::CoChain { .. } => file.to_cochain()?.0.to_general(),
    };
    let ok = cert.verify(&general) && cert.ratio_ok;
    println!("h_size={}", cert.hitting.len());
    println!("p_size={}", cert.packing.len());
    println!("verified={ok}");
    if ok {
        Ok(())
    } else {
        Err(Failure::new(EXIT_VERIFY, "certificate does not check out"))
    }
}

fn run_search(limit: usize, variants: bool) -> Outcome {
    let r = search_report(limit);
    println!("limit={} variant={}", r.limit, r.variant);
    for t in &r.exceptional {
        println!("tuple={} f={} passing={}", t.profile, join(t.f_values), join(&t.passing));
    }
    println!("exceptional={}", r.exceptional.len());
    println!("missing={}", join(&r.missing));
    println!("unexpected={}", join(&r.unexpected));
    if variants {
        for v in &r.variants {
            println!("variant {} tuples={} deviations={}", v.variant, v.tuples.len(), v.deviations.len());
            for d in &v.deviations {
                println!(
                    "deviation {} tuple={} exceptional={} f={} default_f={} flipped={}",
                    v.variant,
                    d.profile,
                    d.exceptional_under_variant,
                    join(d.variant_f),
                    join(d.default_f),
                    join(&d.f_indices)
                );
            }
        }
    }
    if r.missing.is_empty() && r.unexpected.is_empty() {
        Ok(())
    } else {
        Err(Failure::new(EXIT_VERIFY, "exceptional tuples differ from the expected list"))
    }
}

fn print_violation(chain: &str, kind: &str, v: &Violation) {
    println!("violation chain={chain} kind={kind} tuple={} step={} lhs={} rel={} rhs={}", v.profile, v.step, v.lhs, v.rel, v.rhs);
}

fn run_audit(ranges: AuditRanges) -> Outcome {
    let r = audit_inequalities(&ranges);
    println!("max_l={} max_m={} realized_max={}", ranges.max_l, ranges.max_m, ranges.realized_max);
    for c in &r.chains {
        println!(
            "chain={} anchor={} recipe={} tuples={} step_violations={} conclusion_violations={} realized_checked={} realized_violations={} realized_errors={}",
            c.id,
            c.anchor,
            c.recipe,
            c.tuples,
            c.step_violations.len(),
            c.conclusion_violations.len(),
            c.realized_checked,
            c.realized_violations.len(),
            c.realized_errors.len()
        );
    }
    for c in &r.chains {
        for v in &c.step_violations {
            print_violation(c.id, "step", v);
        }
        for v in &c.conclusion_violations {
            print_violation(c.id, "conclusion", v);
        }
        for v in &c.realized_violations {
            print_violation(c.id, "realized", v);
        }
        for e in &c.realized_errors {
            println!("error chain={} message={e}", c.id);
        }
    }
    let sound = r.chains.iter().all(|c| c.is_sound());
    println!("step_violations={}", r.step_violations());
    println!("conclusion_violations={}", r.conclusion_violations());
    println!("realized_violations={}", r.realized_violations());
    println!("sound={sound}");
    if sound {
        Ok(())
    } else {
        Err(Failure::new(EXIT_VERIFY, "some chain conclusion fails"))
    }
}

fn run_fuzz_cmd(a: FuzzArgs) -> Outcome {
    let cfg = FuzzConfig {
        count: a.count,
        max_l: a.max_l.unwrap_or(a.max),
        max_m: a.max_m.unwrap_or(a.max),
        seed: a.seed,
        oracle_max: a.oracle_max,
        mode: a.mode,
        certify: CertifyConfig { budget: a.budget.unwrap_or_else(default_budget), ..CertifyConfig::default() },
    };
    if cfg.max_l == 0 || cfg.max_m == 0 {
        return Err(Failure::new(EXIT_PARSE, "half sides must be at least 1"));
    }
    let s = run_fuzz(&cfg);
    println!("count={} seed={} max_l={} max_m={}", s.count, cfg.seed, cfg.max_l, cfg.max_m);
    for (m, n) in &s.methods {
        println!("method={m} count={n}");
    }
    for f in &s.failures {
        println!(
            "failure index={} l_size={} m_size={} thresholds={} h_size={} p_size={} error={}",
            f.index,
            f.l_size,
            f.m_size,
            join(&f.thresholds),
            f.h_size,
            f.p_size,
            f.error.as_deref().unwrap_or("-")
        );
    }
    println!("passed={}", s.passed);
    println!("oracle_checked={}", s.oracle_checked);
    println!("failures={}", s.failures.len());
    if s.is_clean() {
        Ok(())
    } else {
        Err(Failure::new(EXIT_VERIFY, format!("{} instances failed", s.failures.len())))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Certify(a) => run_certify(a),
        Command::Verify { graph, certificate } => run_verify(&graph, &certificate),
        Command::Search { limit, variants } => run_search(limit, variants),
        Command::Audit { max_l, max_m, realized_max } => run_audit(AuditRanges { max_l, max_m, realized_max }),
        Command::Fuzz(a) => run_fuzz_cmd(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
