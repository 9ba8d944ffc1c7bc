use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tclab::cli::{self, Family, Format, RunConfig};

#[derive(Parser)]
#[command(
    name = "tclab",
    version,
    about = "Type cones of cluster, gentle, graphical and raw fans"
)]
struct Cli {
    #[command(subcommand)]
    family: Command,
}

#[derive(Subcommand)]
enum Command {
    /// g-vector fan of a finite type cluster algebra: {"n", "B", "D"?}
    Cluster(Opts),
    /// non-kissing fan of a gentle quiver: {"vertices", "arrows", "relations"}
    Gentle(Opts),
    /// nested fan of a graph: {"vertices", "edges"}
    Graph(Opts),
    /// explicit fan: {"ambient_dim", "rays", "maximal_cones", ...} or a previous report
    RawFan(Opts),
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Table,
}

#[derive(Args)]
struct Opts {
    #[arg(long)]
    input: PathBuf,
    /// list facet-defining inequalities of the type cone
    #[arg(long)]
    facets: bool,
    /// extreme rays of the type cone modulo lineality
    #[arg(long)]
    rays: bool,
    /// JSON array of positive facet values; realizes the fan
    #[arg(long, value_name = "PATH")]
    realize: Option<PathBuf>,
    /// JSON height vector to decompose over the extreme rays
    #[arg(long, value_name = "PATH")]
    minkowski: Option<PathBuf>,
    /// JSON height vector in the closed type cone
    #[arg(long, value_name = "PATH")]
    coarsen: Option<PathBuf>,
    /// check the family facet description; exit code 2 if it fails
    #[arg(long)]
    verify: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: OutFormat,
    #[arg(long, default_value_t = tclab::cluster::DEFAULT_SEED_CAP)]
    max_seeds: usize,
    #[arg(long, default_value_t = tclab::gentle::DEFAULT_WALK_CAP)]
    max_walks: usize,
    #[arg(long, default_value_t = tclab::typecone::DEFAULT_DD_CAP)]
    dd_cap: usize,
    /// write the realized polytope (V-representation) here
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Cli::parse();
    if let Some(n) = std::env::var("TCLAB_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let (family, o) = match args.family {
        Command::Cluster(o) => (Family::Cluster, o),
        Command::Gentle(o) => (Family::Gentle, o),
        Command::Graph(o) => (Family::Graph, o),
        Command::RawFan(o) => (Family::RawFan, o),
    };
    let cfg = RunConfig {
        family,
        input: o.input,
        facets: o.facets,
        rays: o.rays,
        realize: o.realize,
        minkowski: o.minkowski,
        coarsen: o.coarsen,
        verify: o.verify,
        format: match o.format {
            OutFormat::Json => Format::Json,
            OutFormat::Table => Format::Table,
        },
        max_seeds: o.max_seeds,
        max_walks: o.max_walks,
        dd_cap: o.dd_cap,
        out: o.out,
    };
    let report = match cli::run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("tclab: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if let Some(path) = &cfg.out {
        let Some(re) = &report.realization else {
            eprintln!("tclab: --out needs --realize");
            return ExitCode::from(1);
        };
        if let Err(e) = std::fs::write(path, cli::polytope_file(re, report.fan.ambient_dim)) {
            eprintln!("tclab: {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    print!("{}", cli::render(&report, cfg.format));
    ExitCode::from(report.exit_code() as u8)
}
