//! The `hypergrid` command.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::{json, Value};

use hypergrid::ca::{self, Configuration, ConfigurationFile, Rule, RuleFile};
use hypergrid::oracle;
use hypergrid::routing::{broadcast, MAX_TTL};
use hypergrid::svg::render_svg;
use hypergrid::window::MAX_RADIUS;
use hypergrid::{decode, encode, recenter, shortest_path, Address, FibWord, Grid};

use crate::tiles;

#[derive(Debug, Parser)]
#[command(name = "hypergrid", version, about = "Fibonacci coordinates on the pentagrid and the heptagrid")]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fibonacci word of a positive integer.
    Encode { n: BigUint },
    /// Integer value of a Fibonacci word.
    Decode { word: FibWord },
    /// Father of a tile.
    Parent { address: Address },
    /// Sons of a tile in rank order.
    Sons { address: Address },
    /// Neighbors of a tile by edge index.
    Neighbors { address: Address },
    /// A shortest path between two tiles.
    Path { from: Address, to: Address },
    /// Number of tiles at distance N from the central tile.
    Ring { grid: Grid, n: usize },
    /// Address of A in the system centered at C.
    Recenter { address: Address, center: Address },
    /// Relative addresses delivered by a broadcast from A.
    Broadcast {
        address: Address,
        #[arg(value_parser = clap::value_parser!(u8).range(0..=MAX_TTL as i64))]
        ttl: u8,
    },
    /// Cellular automata.
    Ca {
        #[command(subcommand)]
        command: CaCommand,
    },
    /// Checks against the reflection-generated tiling.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Writes an SVG drawing of a window.
    Render {
        #[arg(long)]
        grid: Grid,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=MAX_RADIUS as i64))]
        radius: u8,
        /// Tile drawn at the middle of the disk; defaults to the central tile.
        #[arg(long)]
        center: Option<Address>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Runs the HTTP service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum CaCommand {
    /// Runs a rule file on a configuration file.
    Run {
        #[arg(long)]
        rule: PathBuf,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        steps: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Matches every address of a ball to a generated polygon.
    Verify {
        #[arg(long)]
        grid: Grid,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=oracle::MAX_RADIUS as i64))]
        radius: u8,
    },
}

/// Outcome of a command that parsed fine.
enum Failure {
    Usage(String),
    Validation(String),
}

impl From<hypergrid::Error> for Failure {
    fn from(e: hypergrid::Error) -> Failure {
        Failure::Validation(e.to_string())
    }
}

/// Runs the command line and returns the process exit code: 0 on success,
/// 1 when a check or computation fails, 2 on usage errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return e.exit_code();
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Validation(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn emit(out: &mut dyn Write, json: bool, value: Value, plain: impl FnOnce() -> String) -> Result<i32, Failure> {
    let text = if json { value.to_string() } else { plain() };
    writeln!(out, "{text}").map_err(|e| Failure::Validation(e.to_string()))?;
    Ok(0)
}

fn lines(items: &[Address]) -> String {
    items.iter().map(|a| a.to_string()).collect::<Vec<_>>().join("\n")
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}

fn same_grid(a: &Address, b: &Address) -> Result<(), Failure> {
    if a.grid == b.grid {
        Ok(())
    } else {
        Err(Failure::Usage(format!("{a} and {b} are on different grids")))
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let json = cli.json;
    match &cli.command {
        Command::Encode { n } => {
            let w = encode(n).map_err(|e| Failure::Usage(e.to_string()))?;
            emit(out, json, json!({ "n": n.to_string(), "word": w }), || w.to_string())
        }
        Command::Decode { word } => {
            let n = decode(word);
            emit(out, json, json!({ "word": word, "n": n.to_string() }), || n.to_string())
        }
        Command::Parent { address } => {
            let (father, rank) = tiles::parent(address)?;
            emit(out, json, json!({ "address": address, "parent": father, "rank": rank }), || {
                format!("{father} (rank {rank})")
            })
        }
        Command::Sons { address } => {
            let s = tiles::sons(address);
            emit(out, json, json!({ "address": address, "sons": s }), || lines(&s))
        }
        Command::Neighbors { address } => {
            let n = hypergrid::neighbors(address);
            emit(out, json, json!({ "address": address, "neighbors": n }), || lines(&n))
        }
        Command::Path { from, to } => {
            same_grid(from, to)?;
            let path = shortest_path(from, to)?;
            let distance = path.len() - 1;
            emit(out, json, json!({ "from": from, "to": to, "distance": distance, "path": path }), || lines(&path))
        }
        Command::Ring { grid, n } => {
            let count = tiles::ring(*grid, *n);
            emit(out, json, json!({ "grid": grid, "n": n, "count": count.to_string() }), || count.to_string())
        }
        Command::Recenter { address, center } => {
            same_grid(address, center)?;
            let r = recenter(address, center)?;
            emit(out, json, json!({ "address": address, "center": center, "relative": r }), || r.to_string())
        }
        Command::Broadcast { address, ttl } => {
            let delivered = broadcast(address, *ttl as usize)?;
            let value = json!({
                "origin": address,
                "ttl": ttl,
                "deliveries": delivered.iter().map(|(a, r)| json!({ "address": a, "relative": r })).collect::<Vec<_>>(),
            });
            emit(out, json, value, || {
                delivered.iter().map(|(a, r)| format!("{a} {r}")).collect::<Vec<_>>().join("\n")
            })
        }
        Command::Ca { command: CaCommand::Run { rule, config, steps } } => {
            let rule = Rule::from_file(read_json::<RuleFile>(rule)?)?;
            let config = Configuration::from_file(read_json::<ConfigurationFile>(config)?)?;
            let (last, supports) = ca::run(&rule, &config, *steps)?;
            let file = last.to_file();
            emit(out, json, json!({ "supports": supports, "configuration": file }), || {
                serde_json::to_string_pretty(&file).expect("configuration serializes")
            })
        }
        Command::Oracle { command: OracleCommand::Verify { grid, radius } } => {
            let mut t = oracle::generate(*grid, *radius as usize)?;
            let report = oracle::match_addresses(&mut t);
            let ok = report.is_bijection();
            let value = json!({
                "grid": grid,
                "radius": radius,
                "bijection": ok,
                "tiles": report.oracle_tiles,
                "addresses": report.addresses,
                "edges_checked": report.edges_checked,
                "mismatches": report.mismatches,
            });
            emit(out, json, value, || {
                let mut s = format!(
                    "bijection: {}\ntiles: {}\nedges checked: {}",
                    if ok { "OK" } else { "FAILED" },
                    report.oracle_tiles,
                    report.edges_checked
                );
                for m in &report.mismatches {
                    s.push_str(&format!("\nmismatch: {m}"));
                }
                s
            })?;
            Ok(if ok { 0 } else { 1 })
        }
        Command::Render { grid, radius, center, output } => {
            let center = center.clone().unwrap_or_else(|| Address::center(*grid));
            if center.grid != *grid {
                return Err(Failure::Usage(format!("{center} is not on the {}", grid.name())));
            }
            let svg = render_svg(*grid, &center, *radius as usize)?;
            std::fs::write(output, &svg).map_err(|e| Failure::Validation(format!("{}: {e}", output.display())))?;
            emit(out, json, json!({ "output": output, "bytes": svg.len() }), || format!("wrote {}", output.display()))
        }
        Command::Serve { port, host } => {
            let addr = format!("{host}:{port}");
            let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::Validation(e.to_string()))?;
            runtime
                .block_on(crate::http::serve(&addr))
                .map_err(|e| Failure::Validation(format!("{addr}: {e}")))?;
            Ok(0)
        }
    }
}
