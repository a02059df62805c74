//! `pda-forge`: build, check and exercise placement delivery arrays.
//!
//! Exit codes: 0 success, 1 verification failure (report on stdout),
//! 2 usage or parameter error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};
use serde::Serialize;

use pda_forge::compare::{self, ReferenceTable, SchemeRequest};
use pda_forge::docs::{self, Document};
use pda_forge::nhslr::{self, AxbSpec, ModulusChoice};
use pda_forge::sim::{self, DemandMode, SimulationConfig, SimulationSummary};
use pda_forge::{
    nhsdp_to_nhslr, pda, scheme_params, verify_nhsdp, verify_nhslr, verify_pda, ExactPoint,
    Modulus, Pda, Rational, SchemeParams,
};

#[derive(Parser)]
#[command(
    name = "pda-forge",
    version,
    about = "Placement delivery arrays from non-half-sum Latin rectangles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the A X B rectangle for a coefficient vector m.
    ConstructNhslr {
        /// Comma-separated m_1,...,m_n.
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<u64>,
        /// Odd modulus, or "auto" for the smallest admissible one.
        #[arg(long, default_value = "auto")]
        v: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Turn an NHSDP document into an NHSLR document.
    Convert {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Turn an NHSLR document into a PDA document.
    BuildPda {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Conjugate a PDA document.
    Conjugate {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the MN PDA for K users and cache parameter t.
    MnPda {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Verify an NHSLR, NHSDP or PDA document.
    Verify { input: PathBuf },
    /// Choose m for a modulus v and dimension n.
    Optimize {
        #[arg(long)]
        v: u64,
        #[arg(long)]
        n: u32,
        /// Also search every admissible m and compare.
        #[arg(long)]
        exhaustive: bool,
        /// Write the closed-form NHSLR here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run placement, delivery and decoding over a set of demands.
    Simulate {
        /// Simulation config JSON; flags override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        pda: Option<PathBuf>,
        /// Number of files N (default K).
        #[arg(long = "files", short = 'N')]
        files: Option<usize>,
        #[arg(long)]
        packet_bytes: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// "exhaustive" or "sampled:COUNT[:SEED]".
        #[arg(long)]
        demands: Option<String>,
        /// Real users when the last columns are virtual padding.
        #[arg(long)]
        real_users: Option<usize>,
        /// Largest exhaustive demand set allowed.
        #[arg(long, default_value_t = sim::DEFAULT_EXHAUSTIVE_BUDGET)]
        budget: u128,
        /// Include every message payload in hex.
        #[arg(long)]
        dump_payloads: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Scheme calculators, published tables and tradeoff series.
    Compare {
        /// Recompute a published table: table2 or table3.
        #[arg(long, conflicts_with_all = ["figure", "scheme"])]
        reproduce: Option<String>,
        /// Series for figure 4 to 9.
        #[arg(long, conflicts_with = "scheme")]
        figure: Option<u32>,
        /// key:p1,p2,... (repeatable), e.g. ours:33,3 or mn:85,2.
        #[arg(long)]
        scheme: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Verification(String),
    Usage(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<pda_forge::Error> for Failure {
    fn from(e: pda_forge::Error) -> Self {
        Failure::Usage(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(report)) => {
            print!("{report}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var("PDA_FORGE_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| anyhow!("PDA_FORGE_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()?;
    Ok(())
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(output: Option<&Path>, content: &str) -> anyhow::Result<()> {
    match output {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn json_line<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("reports serialize");
    s.push('\n');
    s
}

fn read_pda(path: &Path) -> anyhow::Result<Pda> {
    docs::pda_from_json(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

#[derive(Serialize)]
struct VerifyDoc<'a, R, P> {
    document: &'a str,
    pass: bool,
    report: &'a R,
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<&'a P>,
}

/// `{"document","pass","report","params"?}`.
fn verify_line<R: Serialize, P: Serialize>(
    document: &str,
    pass: bool,
    report: &R,
    params: Option<&P>,
) -> String {
    json_line(&VerifyDoc {
        document,
        pass,
        report,
        params,
    })
}

fn verification_failure<R: Serialize>(document: &str, report: &R) -> Failure {
    Failure::Verification(verify_line::<_, SchemeParams>(
        document, false, report, None,
    ))
}

fn run(command: Command) -> Outcome {
    match command {
        Command::ConstructNhslr { m, v, output } => {
            let choice = match v.as_str() {
                "auto" => ModulusChoice::Auto,
                s => ModulusChoice::Explicit(
                    s.parse()
                        .map_err(|_| anyhow!("--v must be an odd integer or auto"))?,
                ),
            };
            let d = nhslr::construct_axb(&AxbSpec::new(m, choice)?)?;
            emit(output.as_deref(), &docs::nhslr_to_json(&d))?;
        }
        Command::Convert { input, output } => {
            let p = docs::nhsdp_from_json(&read(&input)?)?;
            let report = verify_nhsdp(&p);
            if !report.pass {
                return Err(verification_failure("NHSDP", &report));
            }
            emit(
                output.as_deref(),
                &docs::nhslr_to_json(&nhsdp_to_nhslr(&p)?),
            )?;
        }
        Command::BuildPda { input, output } => {
            let d = docs::nhslr_from_json(&read(&input)?)?;
            let report = verify_nhslr(&d);
            if !report.pass {
                return Err(verification_failure("NHSLR", &report));
            }
            emit(
                output.as_deref(),
                &docs::pda_to_json(&pda::pda_from_nhslr(&d)?),
            )?;
        }
        Command::Conjugate { input, output } => {
            let p = read_pda(&input)?;
            let report = verify_pda(&p);
            if !report.pass {
                return Err(verification_failure("PDA", &report));
            }
            emit(output.as_deref(), &docs::pda_to_json(&pda::conjugate(&p)?))?;
        }
        Command::MnPda { k, t, output } => {
            emit(output.as_deref(), &docs::pda_to_json(&pda::mn_pda(k, t)?))?;
        }
        Command::Verify { input } => verify(&input)?,
        Command::Optimize {
            v,
            n,
            exhaustive,
            output,
        } => {
            let modulus = Modulus::new(v)?;
            let closed = nhslr::optimize_closed_form(modulus, n)?;
            let tuple = |s: &AxbSpec| {
                s.m()
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            };
            println!(
                "closed form: m=({}), f={}",
                tuple(&closed),
                closed.objective()
            );
            if exhaustive {
                let best = nhslr::optimize_exhaustive(modulus, n)?;
                println!("exhaustive: m=({}), f={}", tuple(&best), best.objective());
                println!(
                    "matches closed form: {}",
                    best.objective() == closed.objective()
                );
            }
            if let Some(path) = output {
                emit(
                    Some(&path),
                    &docs::nhslr_to_json(&nhslr::construct_axb(&closed)?),
                )?;
            }
        }
        Command::Simulate {
            config,
            pda,
            files,
            packet_bytes,
            seed,
            demands,
            real_users,
            budget,
            dump_payloads,
            output,
        } => {
            let doc = config
                .as_ref()
                .map(|c| {
                    let parsed = docs::simulation_config_from_json(&read(c)?)?;
                    anyhow::Ok((
                        c.parent().map(Path::to_path_buf).unwrap_or_default(),
                        parsed,
                    ))
                })
                .transpose()?;
            let pda_path = match (pda, &doc) {
                (Some(p), _) => p,
                (None, Some((dir, d))) => dir.join(&d.pda),
                (None, None) => return Err(anyhow!("simulate needs --pda or --config").into()),
            };
            let p = read_pda(&pda_path)?;
            let report = verify_pda(&p);
            if !report.pass {
                return Err(verification_failure("PDA", &report));
            }
            let d = doc.map(|(_, d)| d);
            let mut cfg = SimulationConfig::new(
                files
                    .or(d.as_ref().and_then(|d| d.files))
                    .unwrap_or(p.users()),
            );
            if let Some(b) = packet_bytes.or(d.as_ref().and_then(|d| d.packet_bytes)) {
                cfg.packet_bytes = b;
            }
            if let Some(s) = seed.or(d.as_ref().and_then(|d| d.seed)) {
                cfg.seed = s;
            }
            match (demands, d.as_ref().and_then(|d| d.demands.as_ref())) {
                (Some(flag), _) => cfg.demands = parse_demands(&flag)?,
                (None, Some(doc)) => cfg.demands = doc.to_mode()?,
                (None, None) => {}
            }
            cfg.real_users = real_users.or(d.as_ref().and_then(|d| d.real_users));
            cfg.budget = budget;
            cfg.keep_transcripts = dump_payloads;
            let summary = sim::simulate(&p, &cfg)?;
            let recovered = summary.all_recovered;
            let text = json_line(&SummaryDoc::from(&summary));
            if recovered {
                emit(output.as_deref(), &text)?;
            } else {
                return Err(Failure::Verification(text));
            }
        }
        Command::Compare {
            reproduce,
            figure,
            scheme,
            output,
        } => {
            let text = if let Some(t) = reproduce {
                reproduce_table(t.parse()?)?
            } else if let Some(n) = figure {
                compare::figure_csv(&compare::figure(n)?)?
            } else if !scheme.is_empty() {
                let requests = scheme
                    .iter()
                    .map(|s| s.parse::<SchemeRequest>())
                    .collect::<Result<Vec<_>, _>>()?;
                let points: Vec<ExactPoint> = compare::table(&requests)?;
                compare::table_csv(&points)?
            } else {
                return Err(anyhow!("compare needs --reproduce, --figure or --scheme").into());
            };
            emit(output.as_deref(), &text)?;
        }
    }
    Ok(())
}

fn verify(input: &Path) -> Outcome {
    let doc = docs::parse_document(&read(input)?)
        .with_context(|| format!("parsing {}", input.display()))?;
    let (pass, text) = match &doc {
        Document::Nhslr(d) => {
            let r = verify_nhslr(d);
            let params = r.pass.then(|| scheme_params(d)).transpose()?;
            (r.pass, verify_line("NHSLR", r.pass, &r, params.as_ref()))
        }
        Document::Nhsdp(p) => {
            let r = verify_nhsdp(p);
            (
                r.pass,
                verify_line::<_, SchemeParams>("NHSDP", r.pass, &r, None),
            )
        }
        Document::Pda(p) => {
            let r = verify_pda(p);
            let params = r.pass.then(|| pda::params(p)).transpose()?;
            (r.pass, verify_line("PDA", r.pass, &r, params.as_ref()))
        }
    };
    if pass {
        print!("{text}");
        Ok(())
    } else {
        Err(Failure::Verification(text))
    }
}

fn parse_demands(flag: &str) -> anyhow::Result<DemandMode> {
    if flag == "exhaustive" {
        return Ok(DemandMode::Exhaustive);
    }
    let parts: Vec<&str> = flag.split(':').collect();
    match parts.as_slice() {
        ["sampled", count] => Ok(DemandMode::Sampled {
            count: count.parse()?,
            seed: 1,
        }),
        ["sampled", count, seed] => Ok(DemandMode::Sampled {
            count: count.parse()?,
            seed: seed.parse()?,
        }),
        _ => bail!("--demands must be exhaustive or sampled:COUNT[:SEED], got {flag:?}"),
    }
}

fn reproduce_table(t: ReferenceTable) -> anyhow::Result<String> {
    let checks = compare::check_table(t)?;
    for (i, c) in checks.iter().enumerate() {
        for m in &c.mismatches {
            eprintln!(
                "row {} ({}): {} printed {}, computed {}",
                i + 1,
                c.row.request,
                m.column,
                m.printed,
                m.computed
            );
        }
    }
    let points: Vec<ExactPoint> = checks.into_iter().map(|c| c.point).collect();
    Ok(compare::table_csv(&points)?)
}

#[derive(Serialize)]
struct PayloadDoc {
    symbol: u32,
    hex: String,
}

#[derive(Serialize)]
struct RunDoc {
    demand: Vec<u64>,
    messages: usize,
    measured_load: String,
    all_recovered: bool,
    failed_users: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    payloads: Option<Vec<PayloadDoc>>,
}

#[derive(Serialize)]
struct SummaryDoc {
    #[serde(rename = "K")]
    users: usize,
    #[serde(rename = "K_real")]
    real_users: usize,
    #[serde(rename = "N")]
    files: usize,
    #[serde(rename = "F")]
    packets: usize,
    packet_bytes: usize,
    seed: u64,
    generator: &'static str,
    load: String,
    worst_case_load: String,
    cached_packets_per_user: Vec<usize>,
    all_recovered: bool,
    runs: Vec<RunDoc>,
}

fn ratio(r: Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl From<&SimulationSummary> for SummaryDoc {
    fn from(s: &SimulationSummary) -> Self {
        SummaryDoc {
            users: s.users,
            real_users: s.real_users,
            files: s.files,
            packets: s.packets,
            packet_bytes: s.packet_bytes,
            seed: s.seed,
            generator: sim::GENERATOR_ID,
            load: ratio(s.load),
            worst_case_load: ratio(s.worst_case_load),
            cached_packets_per_user: s.cached_packets_per_user.clone(),
            all_recovered: s.all_recovered,
            runs: s
                .runs
                .iter()
                .map(|r| RunDoc {
                    demand: r.demand.one_based(),
                    messages: r.messages,
                    measured_load: ratio(r.measured_load),
                    all_recovered: r.all_recovered,
                    failed_users: r.failed_users.clone(),
                    payloads: r.transcript.as_ref().map(|t| {
                        t.messages
                            .iter()
                            .map(|m| PayloadDoc {
                                symbol: m.symbol,
                                hex: hex::encode(&m.payload),
                            })
                            .collect()
                    }),
                })
                .collect(),
        }
    }
}
