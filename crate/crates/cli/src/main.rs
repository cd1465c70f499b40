use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use frobtest_core::duality::cohomology_profile;
use frobtest_core::frobenius::{fedder_is_f_pure, frobenius_closure_with_budget, fte, DEFAULT_MAX_E};
use frobtest_core::harness::{run_all, Manifest, RunOptions};
use frobtest_core::parse::parse_all;
use frobtest_core::sequences::{
    limit_closure_chain, limit_closure_standard, sequence_report, StandardCertificate, DEFAULT_CHAIN_MAX_N,
};
use frobtest_core::{Ideal, MonomialOrder, Polynomial};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "frobtest", version, about = "Frobenius closures and test exponents over F_p[x]/J")]
struct Cli {
    /// Ring manifest (TOML); `verify` accepts it more than once.
    #[arg(long, global = true)]
    ring: Vec<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OrderArg::Grevlex)]
    order: OrderArg,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_E)]
    max_e: u32,
    /// Overrides the manifest's sampling seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Write JSON output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Lex,
    Grevlex,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced Gröbner basis of (POLYS) + J.
    Gb { polys: Vec<String> },
    /// Normal form of POLY modulo (--ideal) + J.
    Nf {
        poly: String,
        #[arg(long, value_delimiter = ',')]
        ideal: Vec<String>,
    },
    /// ((--ideal) + J) : (--by).
    Colon {
        #[arg(long, value_delimiter = ',')]
        ideal: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        by: Vec<String>,
    },
    /// ((--ideal) + J) : (--by)^∞, m when --by is absent.
    Saturate {
        #[arg(long, value_delimiter = ',')]
        ideal: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        by: Vec<String>,
    },
    /// Krull dimension of P/((--ideal) + J).
    Dim {
        #[arg(long, value_delimiter = ',')]
        ideal: Vec<String>,
    },
    /// Frobenius closure of (--ideal) in P/J.
    Fclosure {
        #[arg(long, value_delimiter = ',', required = true)]
        ideal: Vec<String>,
        #[arg(long)]
        e_star: Option<u32>,
    },
    /// Frobenius test exponent of (--ideal) in P/J.
    Fte {
        #[arg(long, value_delimiter = ',', required = true)]
        ideal: Vec<String>,
        #[arg(long)]
        e_star: Option<u32>,
    },
    /// Limit closure of --seq by the colon chain (and the closed formula with --standard).
    Limclosure {
        #[arg(long, value_delimiter = ',', required = true)]
        seq: Vec<String>,
        /// Assert the sequence is standard.
        #[arg(long)]
        standard: bool,
    },
    /// Filter-regularity report for --seq.
    Frcheck {
        #[arg(long, value_delimiter = ',', required = true)]
        seq: Vec<String>,
    },
    /// Dimension, finiteness dimension, n0 and local-cohomology lengths (JSON).
    Invariants,
    /// Fedder's F-purity criterion.
    Fedder,
    /// Run every manifest and write the JSON report.
    Verify,
}

enum Failure {
    Input(String),
    Check,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(EXIT_FAIL),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn order(cli: &Cli) -> MonomialOrder {
    match cli.order {
        OrderArg::Lex => MonomialOrder::Lex,
        OrderArg::Grevlex => MonomialOrder::Grevlex,
    }
}

fn single_manifest(cli: &Cli) -> Result<Manifest, Failure> {
    match cli.ring.as_slice() {
        [path] => Manifest::load(path, order(cli)).map_err(input),
        [] => Err(Failure::Input("--ring <manifest> is required".into())),
        _ => Err(Failure::Input("this command takes exactly one --ring".into())),
    }
}

fn polys(m: &Manifest, texts: &[String]) -> Result<Vec<Polynomial>, Failure> {
    parse_all(texts, m.ring.ring()).map_err(input)
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => std::fs::write(path, format!("{text}\n")).map_err(input),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn lines(ps: &[Polynomial]) -> String {
    if ps.is_empty() {
        return "0".into();
    }
    ps.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
}

fn run(cli: &Cli) -> Result<(), Failure> {
    if let Command::Verify = cli.command {
        return verify(cli);
    }
    let m = single_manifest(cli)?;
    let s = &m.ring;
    match &cli.command {
        Command::Gb { polys: texts } => {
            let ideal = s.ideal(&polys(&m, texts)?).map_err(input)?;
            emit(cli, &lines(&ideal.reduced_gens()))
        }
        Command::Nf { poly, ideal } => {
            let f = polys(&m, std::slice::from_ref(poly))?.remove(0);
            let i = s.ideal(&polys(&m, ideal)?).map_err(input)?;
            emit(cli, &i.reduce(&f).map_err(input)?.to_string())
        }
        Command::Colon { ideal, by } => {
            let i = s.ideal(&polys(&m, ideal)?).map_err(input)?;
            let g = Ideal::new(s.ring(), polys(&m, by)?).map_err(input)?;
            emit(cli, &lines(&i.colon(&g).map_err(input)?.reduced_gens()))
        }
        Command::Saturate { ideal, by } => {
            let i = s.ideal(&polys(&m, ideal)?).map_err(input)?;
            let g = if by.is_empty() {
                Ideal::maximal(s.ring())
            } else {
                Ideal::new(s.ring(), polys(&m, by)?).map_err(input)?
            };
            let (sat, n) = i.saturate(&g).map_err(input)?;
            emit(cli, &format!("{}\nstabilization_index: {n}", lines(&sat.reduced_gens())))
        }
        Command::Dim { ideal } => {
            let i = s.ideal(&polys(&m, ideal)?).map_err(input)?;
            emit(cli, &i.krull_dim().to_string())
        }
        Command::Fclosure { ideal, e_star } => {
            let i = Ideal::new(s.ring(), polys(&m, ideal)?).map_err(input)?;
            let res = frobenius_closure_with_budget(&i, s, *e_star, cli.max_e).map_err(input)?;
            emit(
                cli,
                &format!(
                    "{}\nreached_e: {}\ncertified: {}",
                    lines(&res.closure.reduced_gens()),
                    res.reached_e,
                    res.certified
                ),
            )
        }
        Command::Fte { ideal, e_star } => {
            let i = Ideal::new(s.ring(), polys(&m, ideal)?).map_err(input)?;
            let res = frobenius_closure_with_budget(&i, s, *e_star, cli.max_e).map_err(input)?;
            let f = fte(&i, s, &res).map_err(input)?;
            let witness = f.witness.map_or_else(|| "none".into(), |w| w.to_string());
            emit(cli, &format!("fte: {}\nwitness: {witness}\ncertified: {}", f.fte, f.certified))
        }
        Command::Limclosure { seq, standard } => {
            let q = polys(&m, seq)?;
            let chain = limit_closure_chain(&q, s, DEFAULT_CHAIN_MAX_N).map_err(input)?;
            let show = |v: Option<u64>| v.map_or_else(|| "infinite".into(), |x| x.to_string());
            let mut out = format!(
                "{}\nchain_n: {}\nquotient_length: {}",
                lines(&chain.ideal.reduced_gens()),
                chain.chain_n.map_or_else(|| "not stabilized".into(), |n| n.to_string()),
                show(chain.quotient_length)
            );
            if *standard {
                let f = limit_closure_standard(&q, s, StandardCertificate::UserAsserted).map_err(input)?;
                let agree = f.ideal.equals(&chain.ideal).map_err(input)?;
                out.push_str(&format!(
                    "\nformula_quotient_length: {}\nformula_agrees: {agree}",
                    show(f.quotient_length)
                ));
            }
            emit(cli, &out)
        }
        Command::Frcheck { seq } => {
            let q = polys(&m, seq)?;
            let n0 = cohomology_profile(s).map(|p| p.n0).unwrap_or(1);
            let r = sequence_report(&q, s, n0).map_err(input)?;
            emit(
                cli,
                &format!(
                    "filter_regular: {}\nsystem_of_parameters: {}\nin_m_power: {}\nweak_n: {}",
                    r.is_filter_regular,
                    r.is_sop,
                    r.in_m_power,
                    r.weak_n.map_or_else(|| "not found within cap".into(), |n| n.to_string())
                ),
            )
        }
        Command::Invariants => {
            let p = cohomology_profile(s).map_err(input)?;
            emit(cli, &serde_json::to_string_pretty(&p).expect("profile serializes"))
        }
        Command::Fedder => emit(cli, &fedder_is_f_pure(s).map_err(input)?.to_string()),
        Command::Verify => unreachable!("handled above"),
    }
}

fn verify(cli: &Cli) -> Result<(), Failure> {
    if cli.ring.is_empty() {
        return Err(Failure::Input("--ring <manifest> is required".into()));
    }
    let manifests = cli
        .ring
        .iter()
        .map(|p| Manifest::load(p, order(cli)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(input)?;
    let opts = RunOptions {
        jobs: cli.jobs,
        max_e: cli.max_e,
        seed: cli.seed,
    };
    let report = run_all(&manifests, &opts).map_err(input)?;
    emit(cli, &report.to_json(true))?;
    for r in &report.rings {
        eprintln!(
            "{}: {} tasks, {} passed, failed {:?}, uncertified {:?}, rejected {}",
            r.ring,
            r.summary.tasks,
            r.summary.passed,
            r.summary.failed,
            r.summary.uncertified,
            r.rejected.len()
        );
    }
    if report.all_pass {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}
