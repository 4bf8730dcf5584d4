use std::net::SocketAddr;
use std::sync::Arc;

use anyhow::Context;
use clap::Parser;
use gelfand_core::api::Engine;
use gelfand_core::group::DEFAULT_CAP;

#[derive(Parser)]
#[command(version, about = "Serve Gelfand pair computations over HTTP/JSON")]
struct Args {
    #[arg(long, default_value = "127.0.0.1:7878")]
    bind: SocketAddr,
    /// Largest group that will be enumerated.
    #[arg(long, env = "GELFAND_CAP", default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Worker threads for the parallel kernels (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[tokio::main]
async fn main() -> anyhow::Result<()> {
    tracing_subscriber::fmt()
        .with_env_filter(tracing_subscriber::EnvFilter::from_default_env())
        .init();
    let args = Args::parse();
    if let Some(n) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring worker threads")?;
    }
    let (addr, serve) = gelfand_server::bind(args.bind, Arc::new(Engine::new(args.cap))).await?;
    tracing::info!(%addr, cap = args.cap, "listening");
    serve.await?;
    Ok(())
}
