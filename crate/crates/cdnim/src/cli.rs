use std::io::{self, Write};
use std::net::{IpAddr, Ipv4Addr, SocketAddr};
use std::sync::Arc;

use cdnim_core::oracle::DEFAULT_GRID_CAP;
use cdnim_core::strategy::best_move;
use cdnim_core::{sg_formula, Error, Grundy, Position};
use clap::{Args, Parser, Subcommand};

use crate::report::{self, Format};
use crate::service::{self, SessionStore};
use crate::verify::{verify, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_BIND: i32 = 4;

/// Common Divisor Nim: Grundy values, legal moves, perfect play.
#[derive(Debug, Parser)]
#[command(name = "cdnim", version)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Piles {
    /// Pile sizes.
    #[arg(required = true, num_args = 1..)]
    pub piles: Vec<u64>,
}

impl Piles {
    fn position(&self) -> Position {
        Position::new(self.piles.clone()).expect("clap requires at least one pile")
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form Grundy value with its 2-adic breakdown.
    Sg(Piles),
    /// List legal moves as "index amount -> successor" (1-based index).
    Moves(Piles),
    /// Recommended move for the player to move.
    Best(Piles),
    /// Compare the closed form with brute-force mex recursion on a grid.
    Verify {
        /// Number of piles.
        #[arg(long)]
        dims: usize,
        /// Largest pile size in the grid.
        #[arg(long)]
        max: u64,
        /// Refuse grids with more positions than this.
        #[arg(long, default_value_t = DEFAULT_GRID_CAP)]
        cap: u64,
        /// Worker threads; 1 is the sequential baseline, 0 uses all cores.
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Reuse values across pile permutations.
        #[arg(long)]
        symmetric: bool,
    },
    /// Run the JSON game service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value_t = IpAddr::V4(Ipv4Addr::LOCALHOST))]
        host: IpAddr,
        /// Maximum live sessions before the least recently used is evicted.
        #[arg(long, default_value_t = service::DEFAULT_CAPACITY)]
        capacity: usize,
    },
}

/// Runs a parsed command and returns the process exit code.
pub fn run<W: Write, E: Write>(cli: &Cli, out: &mut W, err: &mut E) -> i32 {
    run_with_formula(cli, out, err, sg_formula)
}

/// Like [`run`], with the evaluator checked by `verify` supplied by the caller.
pub fn run_with_formula<W, E, F>(cli: &Cli, out: &mut W, err: &mut E, formula: F) -> i32
where
    W: Write,
    E: Write,
    F: Fn(&Position) -> Grundy + Sync,
{
    match execute(cli, out, err, formula) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute<W, E, F>(cli: &Cli, out: &mut W, err: &mut E, formula: F) -> io::Result<i32>
where
    W: Write,
    E: Write,
    F: Fn(&Position) -> Grundy + Sync,
{
    let format = cli.format;
    match &cli.command {
        Command::Sg(p) => report::write_sg(out, &p.position(), format)?,
        Command::Moves(p) => report::write_moves(out, &p.position(), format)?,
        Command::Best(p) => {
            let position = p.position();
            report::write_best(out, &position, &best_move(&position), format)?
        }
        Command::Verify {
            dims,
            max,
            cap,
            threads,
            symmetric,
        } => {
            let config = VerifyConfig {
                cap: *cap,
                symmetric: *symmetric,
                threads: *threads,
            };
            return match verify(*dims, *max, config, formula) {
                Ok(report) => {
                    report::write_verify(out, &report, format)?;
                    if let (Format::Text, Some(d)) = (format, report.elapsed) {
                        writeln!(err, "elapsed {:.3}s", d.as_secs_f64())?;
                    }
                    Ok(if report.passed() {
                        EXIT_OK
                    } else {
                        EXIT_MISMATCH
                    })
                }
                Err(e @ Error::ResourceCap { .. }) => {
                    writeln!(err, "refused: {e} (raise it with --cap)")?;
                    Ok(EXIT_CAP)
                }
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    Ok(EXIT_USAGE)
                }
            };
        }
        Command::Serve {
            port,
            host,
            capacity,
        } => {
            let addr = SocketAddr::new(*host, *port);
            let runtime = tokio::runtime::Runtime::new()?;
            return runtime.block_on(async {
                let listener = match service::bind(addr).await {
                    Ok(l) => l,
                    Err(e) => {
                        writeln!(err, "error: cannot bind {addr}: {e}")?;
                        return Ok(EXIT_BIND);
                    }
                };
                writeln!(err, "listening on {}", listener.local_addr()?)?;
                let store = Arc::new(SessionStore::new((*capacity).max(1)));
                service::serve(listener, store).await?;
                Ok(EXIT_OK)
            });
        }
    }
    Ok(EXIT_OK)
}
