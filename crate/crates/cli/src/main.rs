use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use graphoid_cli::{run, CliError, RunManifest, DEFAULT_GRID};

#[derive(Parser)]
#[command(
    name = "graphoid",
    version,
    about = "Graphoids, ℝ-places and multivalued arithmetic on the extended real line"
)]
struct Cli {
    /// Write the artifact here (atomically).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the artifact instead of the summary.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a rational function and print its canonical form.
    Parse { expr: String },
    /// Evaluate exactly at a rational point, e.g. `eval "x/y" 1 0`.
    Eval {
        expr: String,
        #[arg(allow_hyphen_values = true)]
        coords: Vec<String>,
    },
    /// Feasibility of polynomial inequality systems.
    Feas {
        #[command(subcommand)]
        mode: FeasMode,
    },
    /// Graphoid membership with a radius schedule.
    Member {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        point: PathBuf,
        /// `1e-1..1e-6` (decades) or a comma list.
        #[arg(long)]
        radii: Option<String>,
    },
    /// Inner and outer enclosures of a cluster set.
    Cluster {
        expr: String,
        /// Comma-separated coordinates; `inf` allowed.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long)]
        radius: Option<String>,
        #[arg(long)]
        pieces: Option<String>,
        #[arg(long)]
        refine: Option<String>,
        #[arg(long)]
        farey: Option<String>,
    },
    /// Sample a fiber of a graphoid as JSON lines.
    Fiber {
        #[arg(long)]
        family: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long, default_value = "64")]
        count: String,
        #[arg(long, default_value = "1e-3")]
        radius: String,
    },
    /// Check a place table for relation violations.
    PlaceCheck { table: PathBuf },
    /// Number-field queries on an irreducible polynomial.
    Nf {
        #[command(subcommand)]
        mode: NfMode,
    },
    /// Betti numbers of point clouds.
    Probe {
        #[command(subcommand)]
        mode: ProbeMode,
    },
    /// The x⁴ − 5x² + 2 pipeline end to end.
    DemoRemarkAs,
    /// Replay a manifest file.
    Run { manifest: PathBuf },
}

#[derive(Subcommand)]
enum FeasMode {
    Check {
        system: PathBuf,
        #[arg(long)]
        depth: Option<String>,
        #[arg(long)]
        steps: Option<String>,
    },
}

#[derive(Args)]
struct RootChoice {
    /// Index of the real root, ascending.
    #[arg(long)]
    root: Option<String>,
    /// Isolating interval `lo,hi`.
    #[arg(long, allow_hyphen_values = true)]
    isolate: Option<String>,
}

#[derive(Subcommand)]
enum NfMode {
    Roots {
        poly: String,
        #[arg(long)]
        width: Option<String>,
    },
    Places {
        poly: String,
    },
    Distinct {
        poly: String,
    },
    /// Canonical place of an element given as a polynomial in α.
    Chi {
        poly: String,
        element: String,
        precision: String,
        #[command(flatten)]
        root: RootChoice,
    },
}

#[derive(Subcommand)]
enum ProbeMode {
    Betti {
        cloud: PathBuf,
        /// A scale, or `auto`.
        #[arg(long)]
        eps: Option<String>,
    },
    Scan {
        cloud: PathBuf,
        /// `e1,e2,...` or `lo..hi:n`.
        #[arg(long, default_value = DEFAULT_GRID)]
        grid: String,
    },
}

fn opt(m: RunManifest, k: &str, v: Option<String>) -> RunManifest {
    match v {
        Some(v) => m.param(k, v),
        None => m,
    }
}

fn manifest(cmd: Cmd) -> Result<RunManifest, CliError> {
    Ok(match cmd {
        Cmd::Parse { expr } => RunManifest::new("parse").arg(expr),
        Cmd::Eval { expr, coords } => coords.into_iter().fold(RunManifest::new("eval").arg(expr), RunManifest::arg),
        Cmd::Feas { mode: FeasMode::Check { system, depth, steps } } => {
            let m = RunManifest::new("feas").arg("check").input("system", system);
            opt(opt(m, "depth", depth), "steps", steps)
        }
        Cmd::Member { family, point, radii } => {
            opt(RunManifest::new("member").input("family", family).input("point", point), "radii", radii)
        }
        Cmd::Cluster { expr, at, radius, pieces, refine, farey } => {
            let m = RunManifest::new("cluster").arg(expr).param("at", at);
            opt(opt(opt(opt(m, "radius", radius), "pieces", pieces), "refine", refine), "farey", farey)
        }
        Cmd::Fiber { family, at, count, radius } => RunManifest::new("fiber")
            .input("family", family)
            .param("at", at)
            .param("count", count)
            .param("radius", radius),
        Cmd::PlaceCheck { table } => RunManifest::new("place-check").input("table", table),
        Cmd::Nf { mode } => match mode {
            NfMode::Roots { poly, width } => opt(RunManifest::new("nf").arg("roots").arg(poly), "width", width),
            NfMode::Places { poly } => RunManifest::new("nf").arg("places").arg(poly),
            NfMode::Distinct { poly } => RunManifest::new("nf").arg("distinct").arg(poly),
            NfMode::Chi { poly, element, precision, root } => {
                let m = RunManifest::new("nf").arg("chi").arg(poly).arg(element).arg(precision);
                opt(opt(m, "root", root.root), "isolate", root.isolate)
            }
        },
        Cmd::Probe { mode: ProbeMode::Betti { cloud, eps } } => {
            opt(RunManifest::new("probe").arg("betti").input("cloud", cloud), "eps", eps)
        }
        Cmd::Probe { mode: ProbeMode::Scan { cloud, grid } } => {
            RunManifest::new("probe").arg("scan").input("cloud", cloud).param("grid", grid)
        }
        Cmd::DemoRemarkAs => RunManifest::new("demo-remark-as"),
        Cmd::Run { manifest } => {
            let text = std::fs::read_to_string(&manifest)
                .map_err(|e| CliError::bad(format!("{}: {e}", manifest.display())))?;
            RunManifest::from_json(&text)?
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let replay = matches!(cli.cmd, Cmd::Run { .. });
    let result = manifest(cli.cmd).and_then(|mut m| {
        if !replay {
            m.seed = cli.seed;
        }
        if cli.out.is_some() {
            m.out = cli.out.clone();
        }
        run(&m)
    });
    match result {
        Ok(out) => {
            if cli.json {
                print!("{}", String::from_utf8_lossy(&out.artifact));
            } else {
                println!("{}", out.text.trim_end());
            }
            ExitCode::from(out.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
