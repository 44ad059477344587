use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use growth_capacity_cli::*;

/// Growth capacity of phyllotactic lattices: capacities, profiles along
/// vertical geodesics, Hermite convergents, averages and the Markoff spectrum.
#[derive(Parser)]
#[command(name = "growth-capacity", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Working precision in bits for non-exact values (at least 64).
    #[arg(long, global = true, env = "GROWTH_CAPACITY_PRECISION", default_value_t = 128,
          value_parser = clap::value_parser!(u32).range(64..))]
    precision: u32,
    /// Continued-fraction depth (average).
    #[arg(long, global = true, default_value_t = 40, value_parser = clap::value_parser!(u32).range(2..))]
    depth: u32,
    /// Right end of the t range (profile).
    #[arg(long, global = true, default_value_t = 1e4)]
    t_max: f64,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed of the random generator (packing).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sample count: grid points for profile, random points for packing.
    #[arg(long, global = true)]
    samples: Option<usize>,
}

/// A point of the upper half-plane.
#[derive(Args)]
struct PointArgs {
    /// Complex literal such as "phi + i/10" or "(1+i*sqrt(3))/2".
    #[arg(long)]
    omega: Option<String>,
    /// Real part, with --y.
    #[arg(long, requires = "y", conflicts_with = "omega")]
    x: Option<String>,
    /// Imaginary part, with --x.
    #[arg(long, requires = "x")]
    y: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// f(omega), its reduction to the fundamental domain and the tangent circle.
    Capacity {
        #[arg(long, visible_alias = "x")]
        omega: String,
    },
    /// The profile t -> f(x + i/t) with pieces, breakpoints and minima.
    Profile {
        /// Quadratic irrational; repeat for several curves.
        #[arg(long, visible_alias = "omega", required = true)]
        x: Vec<String>,
        /// Left end of the t range.
        #[arg(long, default_value_t = 0.5)]
        t_min: f64,
    },
    /// Analytic and Monte-Carlo disk-packing density.
    Packing {
        #[command(flatten)]
        point: PointArgs,
    },
    /// SVG of the unrolled cylinder with buds and their disks.
    RenderLattice {
        #[command(flatten)]
        point: PointArgs,
        /// Number of lattice rows drawn.
        #[arg(long, default_value_t = 40)]
        rows: usize,
    },
    /// Hermite convergents among the first n classical convergents.
    Hermite {
        #[arg(long, visible_alias = "omega")]
        x: String,
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Also list convergents that are not Hermite.
        #[arg(long)]
        all: bool,
    },
    /// Averaged capacity estimate against its closed form.
    Average {
        #[arg(long, visible_alias = "omega")]
        x: String,
    },
    /// Values of the Lagrange spectrum below 3.
    Spectrum {
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Markoff triples with largest entry up to a limit.
    Markoff {
        #[arg(long, default_value = "1500")]
        limit: String,
    },
}

fn run(cli: Cli) -> Result<()> {
    let g = cli.global;
    let cfg = RunConfig {
        precision: g.precision as usize,
        depth: g.depth as usize,
        t_max: g.t_max,
        format: g.format,
        out: g.out,
        seed: g.seed,
        samples: g.samples,
    };
    cfg.validate()?;
    let point = |p: &PointArgs| point_from_args(p.omega.as_deref(), p.x.as_deref(), p.y.as_deref(), cfg.precision);
    let rendered = match &cli.command {
        Command::Capacity { omega } => Rendered::Capacity(Box::new(capacity(omega, &cfg)?)),
        Command::Profile { x, t_min } => Rendered::Profile(profile(x, *t_min, &cfg)?),
        Command::Packing { point: p } => Rendered::Packing(packing(&point(p)?, &cfg)?),
        Command::RenderLattice { point: p, rows } => Rendered::Lattice(render_lattice(&point(p)?, *rows, &cfg)?),
        Command::Hermite { x, n, all } => Rendered::Hermite(hermite(x, *n, *all, &cfg)?),
        Command::Average { x } => Rendered::Average(average(x, &cfg)?),
        Command::Spectrum { count } => Rendered::Spectrum(spectrum(*count, &cfg)?),
        Command::Markoff { limit } => Rendered::Markoff(markoff(limit)?),
    };
    write_output(&rendered.emit(&cfg)?, &cfg)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
