//! `gelfand`: command-line client. Talks to `--server` if given, otherwise
//! to a server embedded in this process.

mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gelfand_client::{Client, ClientError};
use gelfand_core::api::{CoeffsRequest, Engine, Method, MomentsRequest, PairRequest, Subject};
use gelfand_core::group::DEFAULT_CAP;
use gelfand_core::pairs::PairSpec;
use gelfand_core::presets::GroupSpec;
use gelfand_core::exit_code;
use render::ToTable;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "gelfand", version, about = "Character tables, double cosets and zonal spherical functions of finite Gelfand pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Base URL of a running gelfand-server; without it a server is embedded.
    #[arg(long, global = true)]
    server: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads of the embedded server.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Enumeration cap of the embedded server.
    #[arg(long, global = true, env = "GELFAND_CAP", default_value_t = DEFAULT_CAP, hide = true)]
    cap: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Formula,
    Oracle,
    Both,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SubjectArgs {
    /// Pair: s2n-bn:N, sn-sn1:N, gxgopp:GROUP or custom:GROUP,SUBGROUP.
    #[arg(long)]
    pair: Option<String>,
    /// Group: sym:N, cyc:N or a group-spec JSON file.
    #[arg(long)]
    group: Option<String>,
}

#[derive(Args)]
struct PairArg {
    /// s2n-bn:N, sn-sn1:N, gxgopp:GROUP or custom:GROUP,SUBGROUP, where GROUP is
    /// sym:N, cyc:N or a group-spec JSON file.
    #[arg(long)]
    pair: String,
}

#[derive(Subcommand)]
enum Command {
    /// Conjugacy classes.
    Classes(SubjectArgs),
    /// Exact character table.
    Chartable(SubjectArgs),
    /// Double cosets of a pair with their labels.
    Cosets(PairArg),
    /// Multiplicity-freeness and commutativity of the double-coset algebra.
    GelfandCheck(PairArg),
    /// Zonal spherical functions.
    Zonal(PairArg),
    /// Structure coefficients of the double-coset algebra.
    Coeffs {
        #[command(flatten)]
        pair: PairArg,
        #[arg(long, value_enum, default_value_t = MethodArg::Formula)]
        method: MethodArg,
        /// Number of factors in each product.
        #[arg(long, default_value_t = 2)]
        arity: usize,
    },
    /// Moments of normalized characters under the Plancherel measure.
    Moments {
        #[command(flatten)]
        subject: SubjectArgs,
        /// Highest moment order.
        #[arg(long, default_value_t = 4)]
        max_m: u32,
    },
    /// Run every invariant check for a pair.
    Verify(PairArg),
}

struct Failure {
    kind: String,
    message: String,
}

impl From<gelfand_core::Error> for Failure {
    fn from(e: gelfand_core::Error) -> Self {
        Failure { kind: e.kind().into(), message: e.to_string() }
    }
}

impl From<ClientError> for Failure {
    fn from(e: ClientError) -> Self {
        Failure { kind: e.kind().into(), message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { kind: "invalid".into(), message: e.to_string() }
    }
}

fn subject(s: &SubjectArgs) -> Result<Subject, Failure> {
    Ok(match (&s.pair, &s.group) {
        (Some(p), _) => Subject::pair(PairSpec::parse(p)?),
        (_, Some(g)) => Subject::group(GroupSpec::resolve(g)?),
        _ => unreachable!("clap requires one of --pair/--group"),
    })
}

fn pair(p: &PairArg) -> Result<PairRequest, Failure> {
    Ok(PairRequest { pair: PairSpec::parse(&p.pair)? })
}

/// Output plus whether the command's own success condition held.
struct Artifact {
    bytes: Vec<u8>,
    ok: bool,
}

fn emit<T: Serialize + ToTable>(value: &T, format: Format, ok: bool) -> Artifact {
    let bytes = match format {
        Format::Json => {
            let mut b = serde_json::to_vec_pretty(value).expect("responses serialize");
            b.push(b'\n');
            b
        }
        Format::Csv => value.table().to_csv(),
    };
    Artifact { bytes, ok }
}

async fn run(cli: &Cli, client: &Client) -> Result<Artifact, Failure> {
    let f = cli.global.format;
    Ok(match &cli.command {
        Command::Classes(s) => emit(&client.classes(&subject(s)?).await?, f, true),
        Command::Chartable(s) => emit(&client.chartable(&subject(s)?).await?, f, true),
        Command::Cosets(p) => emit(&client.cosets(&pair(p)?).await?, f, true),
        Command::GelfandCheck(p) => emit(&client.gelfand_check(&pair(p)?).await?, f, true),
        Command::Zonal(p) => emit(&client.zonal(&pair(p)?).await?, f, true),
        Command::Coeffs { pair: p, method, arity } => {
            let method = match method {
                MethodArg::Formula => Method::Formula,
                MethodArg::Oracle => Method::Oracle,
                MethodArg::Both => Method::Both,
            };
            let req = CoeffsRequest { pair: pair(p)?.pair, method, arity: *arity };
            let resp = client.coeffs(&req).await?;
            if !resp.agree {
                eprintln!("formula and oracle disagree");
            }
            let ok = resp.agree;
            emit(&resp, f, ok)
        }
        Command::Moments { subject: s, max_m } => {
            let req = MomentsRequest { subject: subject(s)?, max_m: *max_m };
            let resp = client.moments(&req).await?;
            let ok = resp.rows.iter().all(|r| r.equal);
            emit(&resp, f, ok)
        }
        Command::Verify(p) => {
            let report = client.verify(&pair(p)?).await?;
            let mut err = std::io::stderr().lock();
            for c in &report.checks {
                let _ = writeln!(err, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            let ok = report.passed;
            emit(&report, f, ok)
        }
    })
}

async fn connect(g: &Global) -> Result<Client, Failure> {
    if let Some(url) = &g.server {
        return Ok(Client::new(url.clone()));
    }
    if let Some(n) = g.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure { kind: "internal".into(), message: e.to_string() })?;
    }
    let addr = gelfand_server::spawn_local(Arc::new(Engine::new(g.cap))).await?;
    Ok(Client::new(format!("http://{addr}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let runtime = tokio::runtime::Runtime::new().expect("tokio runtime");
    let result = runtime.block_on(async {
        let client = connect(&cli.global).await?;
        let artifact = run(&cli, &client).await?;
        match &cli.global.out {
            Some(path) => std::fs::write(path, &artifact.bytes)?,
            None => std::io::stdout().lock().write_all(&artifact.bytes)?,
        }
        Ok::<_, Failure>(artifact.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(exit_code("verification") as u8),
        Err(f) => {
            eprintln!("error ({}): {}", f.kind, f.message);
            ExitCode::from(exit_code(&f.kind) as u8)
        }
    }
}
