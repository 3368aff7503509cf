use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use orbwidth::Error;
use orbwidth_cli::commands::{self, Context, GeometryRequest, Precision};
use orbwidth_cli::config::{ConfigFile, Format, Overrides, RunConfig};
use orbwidth_cli::verify::{self, Suite};
use orbwidth_cli::{exit_code, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};

#[derive(Debug, Parser)]
#[command(name = "orbwidth", version, about = "Conjugacy widths and orbital diameters of simple diagonal groups")]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// File of key=value defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Soft deadline; unfinished work is dropped and the result marked incomplete.
    #[arg(long, global = true)]
    max_seconds: Option<f64>,
    #[arg(long, global = true)]
    order_cap: Option<usize>,
    #[arg(long, global = true)]
    point_cap: Option<usize>,
    #[arg(long, global = true)]
    cn_cap: Option<u32>,
    #[arg(long, global = true)]
    table_cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GeometryArgs {
    /// Group: A<n>, S<n>, PSL2(q), PGL2(q), PSL3(q) or file:<path>.
    group: String,
    #[arg(short = 'k', long)]
    k: Option<usize>,
    /// Tk, TkSk, DkT or custom.
    #[arg(long)]
    variant: Option<String>,
    /// Automorphisms for DkT and custom: inn, aut or file:<path>.
    #[arg(long)]
    aut: Option<String>,
    /// Coordinate permutations for the custom variant, in cycle notation on 0..k-1.
    #[arg(long = "coords", value_delimiter = ';')]
    coords: Vec<String>,
    /// Accept a coordinate group that is not transitive.
    #[arg(long)]
    allow_imprimitive: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Order and conjugacy classes.
    Info { group: String },
    /// Conjugacy widths of every class.
    Widths {
        group: String,
        #[arg(long)]
        aut: Option<String>,
    },
    /// Covering number of every class.
    Covering { group: String },
    /// Character table.
    Chartable {
        group: String,
        #[arg(long, value_enum, default_value = "f64")]
        precision: Precision,
    },
    /// Diameters of all orbital graphs of a diagonal action.
    Orbdiam(GeometryArgs),
    /// The orbital graph through (1, ..., 1, t) with its bounds.
    Gamma0 {
        #[command(flatten)]
        geometry: GeometryArgs,
        #[arg(long)]
        t: String,
        /// Write the graph in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Fixed-space codimensions in SL_n(q).
    Nu {
        #[arg(short = 'n', long, default_value_t = 3)]
        n: usize,
        #[arg(short = 'q', long, default_value_t = 3)]
        q: u64,
        /// A matrix to evaluate: rows separated by ';', entries as field codes.
        #[arg(long)]
        matrix: Option<String>,
    },
    /// Recompute the reference values and compare.
    VerifyPaper {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
    /// An explicit path in Gamma_0^t from the base point to a target.
    Path {
        #[command(flatten)]
        geometry: GeometryArgs,
        #[arg(long)]
        t: String,
        /// Coordinates x_2; ...; x_k, or coset entries h_1; ...; h_k.
        #[arg(long)]
        target: String,
    },
}

fn request(ctx: &Context, args: GeometryArgs) -> orbwidth::Result<GeometryRequest> {
    let cfg = &ctx.config;
    Ok(GeometryRequest {
        group: args.group,
        k: cfg.setting(args.k, "k", 2)?,
        variant: cfg.setting(args.variant, "variant", "Tk".to_string())?,
        aut: args.aut.or(cfg.file.get("aut").map(str::to_string)),
        coords: args.coords,
        allow_imprimitive: args.allow_imprimitive,
    })
}

fn run(cli: Cli) -> orbwidth::Result<bool> {
    let file = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let overrides = Overrides {
        order_cap: cli.order_cap,
        point_cap: cli.point_cap,
        cn_cap: cli.cn_cap,
        table_cap: cli.table_cap,
        format: cli.format,
        threads: cli.threads,
        output: cli.output,
        max_seconds: cli.max_seconds,
    };
    let config = RunConfig::resolve(overrides, file, &|k| std::env::var(k).ok())?;
    if let Some(n) = config.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    }
    let ctx = Context::new(config);
    let report = match cli.command {
        Command::Info { group } => commands::info(&ctx, &group)?,
        Command::Widths { group, aut } => {
            let aut = ctx.config.setting(aut, "aut", "aut".to_string())?;
            commands::widths(&ctx, &group, &aut)?
        }
        Command::Covering { group } => commands::covering(&ctx, &group)?,
        Command::Chartable { group, precision } => commands::chartable(&ctx, &group, precision)?,
        Command::Orbdiam(args) => {
            let req = request(&ctx, args)?;
            commands::orbdiam(&ctx, &req)?
        }
        Command::Gamma0 { geometry, t, dot } => {
            let req = request(&ctx, geometry)?;
            commands::gamma0_cmd(&ctx, &req, &t, dot.as_deref())?
        }
        Command::Nu { n, q, matrix } => commands::nu_cmd(n, q, matrix.as_deref())?,
        Command::VerifyPaper { suite } => verify::verify(&ctx, suite)?,
        Command::Path { geometry, t, target } => {
            let req = request(&ctx, geometry)?;
            commands::path(&ctx, &req, &t, &target)?
        }
    };
    let text = report.render(ctx.config.format)?;
    match &ctx.config.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Error::Io(e.to_string()))?,
    }
    Ok(report.ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let code = match run(cli) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    ExitCode::from(code as u8)
}
