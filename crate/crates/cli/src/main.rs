use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use refuelnet_cli::commands::{
    cmd_scan, cmd_sensitivity, cmd_solve, cmd_verify, ScanArgs, SensitivityArgs, SolveArgs,
    VerifyArgs,
};
use refuelnet_cli::report::Format;
use std::path::PathBuf;

/// Plan refueling stations for fleets on dedicated closed routes.
#[derive(Parser)]
#[command(name = "refuelnet", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Scan every edge for refueling segments and list candidate endpoints
    Scan {
        /// Problem file (network, routes, params)
        #[arg(short = 'n', long)]
        network: PathBuf,
        /// Override the deviation bound (decimal)
        #[arg(short = 'D', long)]
        deviation: Option<String>,
        /// Override the driving range (decimal)
        #[arg(short = 'R', long)]
        range: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also export the candidate classes as a classes file
        #[arg(long)]
        export_classes: Option<PathBuf>,
        /// Include wall-clock timings (makes output non-reproducible)
        #[arg(long)]
        timings: bool,
    },
    /// Find the minimum number of stations covering every route
    Solve {
        /// Problem file (network, routes, params)
        #[arg(short = 'n', long, conflicts_with = "classes")]
        network: Option<PathBuf>,
        /// Classes file (signature rows), solves without geometry
        #[arg(long)]
        classes: Option<PathBuf>,
        #[arg(short = 'D', long)]
        deviation: Option<String>,
        #[arg(short = 'R', long)]
        range: Option<String>,
        /// Enumerate every minimum placement
        #[arg(long)]
        all_optima: bool,
        /// Report interchangeable endpoints and movable segments per station
        #[arg(long)]
        expand: bool,
        /// Restrict candidates to network vertices (discrete comparison mode)
        #[arg(long)]
        discrete_vertices: bool,
        /// Verify an externally chosen placement (comma-separated labels)
        #[arg(long, value_delimiter = ',')]
        check: Option<Vec<String>>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check the scan against first-principles coverage sampling
    Verify {
        #[arg(short = 'n', long)]
        network: PathBuf,
        #[arg(short = 'D', long)]
        deviation: Option<String>,
        #[arg(short = 'R', long)]
        range: Option<String>,
        /// Grid samples per edge (at least 2)
        #[arg(long, default_value_t = 16)]
        samples_per_edge: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep deviation and range values and audit monotonicity
    Sensitivity {
        #[arg(short = 'n', long)]
        network: PathBuf,
        /// Deviation values to sweep (comma-separated decimals)
        #[arg(short = 'D', long, value_delimiter = ',', required = true)]
        deviation: Vec<String>,
        /// Range values to sweep (comma-separated decimals)
        #[arg(short = 'R', long, value_delimiter = ',', required = true)]
        range: Vec<String>,
        /// Include wall-clock timings (makes output non-reproducible)
        #[arg(long)]
        timings: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    let result = match cli.command {
        Cmd::Scan {
            network,
            deviation,
            range,
            format,
            out,
            export_classes,
            timings,
        } => cmd_scan(&ScanArgs {
            network,
            deviation,
            range,
            format,
            out,
            export_classes,
            timings,
        }),
        Cmd::Solve {
            network,
            classes,
            deviation,
            range,
            all_optima,
            expand,
            discrete_vertices,
            check,
            format,
            out,
        } => cmd_solve(&SolveArgs {
            network,
            classes,
            deviation,
            range,
            all_optima,
            expand,
            discrete_vertices,
            check,
            format,
            out,
        }),
        Cmd::Verify {
            network,
            deviation,
            range,
            samples_per_edge,
            format,
            out,
        } => cmd_verify(&VerifyArgs {
            network,
            deviation,
            range,
            samples_per_edge,
            format,
            out,
        }),
        Cmd::Sensitivity {
            network,
            deviation,
            range,
            timings,
            format,
            out,
        } => cmd_sensitivity(&SensitivityArgs {
            network,
            deviations: deviation,
            ranges: range,
            timings,
            format,
            out,
        }),
    };
    if let Err(err) = result {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
