use clap::Parser;

use parareal::Result;
use parareal_cli::bench::cmd_bench;
use parareal_cli::commands::{cmd_catalog, cmd_simulate, cmd_solve};
use parareal_cli::config::{resolve, ConfigFile};
use parareal_cli::opts::{Cli, Command, CommonArgs};
use parareal_cli::{error_line, exit_code};

fn load_config(common: &CommonArgs) -> Result<Option<ConfigFile>> {
    common
        .config
        .as_deref()
        .map(ConfigFile::load)
        .transpose()
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve(args) => {
            let file = load_config(&args.common)?;
            let mut flags = args.common.overrides();
            flags.out = args.out;
            let cfg = resolve(flags, file);
            cmd_solve(&cfg, args.json)
        }
        Command::Simulate(args) => {
            let file = load_config(&args.common)?;
            let mut flags = args.common.overrides();
            flags.out_dir = args.out_dir;
            flags.format = args.format;
            flags.max_chunk = args.max_chunk;
            if args.show_prev {
                flags.show_prev = Some(true);
            }
            let cfg = resolve(flags, file);
            cmd_simulate(&cfg, args.json)
        }
        Command::Bench(args) => {
            let file = load_config(&args.common)?;
            let flags = args.common.overrides();
            let cfg = resolve(flags, file);
            let workers = args.workers.unwrap_or(cfg.n_coarse);
            cmd_bench(&cfg, args.delay_ms, args.repeats, workers, args.json)
        }
        Command::Catalog(args) => cmd_catalog(args.json),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(error) = run(cli) {
        eprintln!("{}", error_line(&error));
        std::process::exit(exit_code(&error));
    }
}
