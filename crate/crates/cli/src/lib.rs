//! Command-line front end for `simplegame-core`.
//!
//! [`run`] takes the argument list and the three standard streams so the whole
//! command surface can be driven from tests without spawning a process.

pub mod format;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use simplegame_core::{
    codimension, convert, dimension, dual, equivalent, extremal_sets, gen_example1,
    gen_random_monotone, gen_ssp, gen_unanimity_composition, is_weighted, Coalition, Combination,
    ConvertMode, DimensionWitness, GameError, GameForm, SimpleGame, SspInstance, WeightedGame,
};
use thiserror::Error;

pub use format::{parse_game, serialize_game, ParseError, ParseErrorKind};

#[derive(Debug, Parser)]
#[command(name = "simplegame", version, about = "Analyse simple games and their dimension")]
struct Cli {
    /// Write the result to a file instead of standard output.
    #[arg(short = 'o', long = "output", global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Print a JSON report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Game file; standard input when absent or `-`.
    file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the minimal winning coalitions.
    Mwc(Input),
    /// List the maximal losing coalitions.
    Mlc(Input),
    /// Write the dual game.
    Dual(Input),
    /// Decide whether the game is weighted and print a representation.
    Weighted(Input),
    /// Dimension with an intersection witness.
    Dim(Input),
    /// Codimension with a union witness.
    Codim(Input),
    /// Compare two games coalition by coalition.
    Equiv {
        first: PathBuf,
        /// Second game; standard input when absent.
        second: Option<PathBuf>,
    },
    /// Rewrite a game as an intersection or union of weighted games.
    Convert {
        #[arg(long, value_enum)]
        to: Target,
        #[arg(long, value_enum, default_value = "minimal")]
        mode: Mode,
        #[command(flatten)]
        input: Input,
    },
    /// Generate a game.
    #[command(subcommand)]
    Gen(Generator),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Target {
    Intersection,
    Union,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Canonical,
    Minimal,
}

#[derive(Debug, Subcommand)]
enum Generator {
    /// Intersection of `[1; e_{2i-1} + e_{2i}]` over `n` player pairs.
    Example1 {
        #[arg(long)]
        n: usize,
    },
    /// Union game built from a subset-sum instance.
    Ssp {
        #[arg(long)]
        b: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
        #[arg(long, default_value_t = 2)]
        d: usize,
    },
    /// Union of unanimity games on disjoint blocks.
    Unanimity {
        /// Comma-separated players of one block; repeat for each block.
        #[arg(long = "block", action = clap::ArgAction::Append, required = true)]
        blocks: Vec<String>,
        /// Player count; defaults to the largest listed player.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Random game with `m` random generator coalitions.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { source, .. } if source.is_size_limit() => 2,
            CliError::Game(e) if e.is_size_limit() => 2,
            _ => 1,
        }
    }
}

struct Streams<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
}

/// Run one command and return its exit status; diagnostics go to `stderr`.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(rendered.as_bytes());
            } else {
                let _ = stderr.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let mut streams = Streams { stdin, stdout };
    match execute(&cli, &mut streams) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "simplegame: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, io: &mut Streams) -> Result<(), CliError> {
    let out = cli.output.as_deref();
    match &cli.command {
        Command::Mwc(input) => {
            let game = load(input.file.as_deref(), io)?;
            let mwc = extremal_sets(&game).minimal_winning;
            let report = if cli.json {
                json_line(&json!({ "mwc": bitstrings(&mwc) }))
            } else {
                coalition_lines("win", &mwc)
            };
            emit(out, io, &report)
        }
        Command::Mlc(input) => {
            let game = load(input.file.as_deref(), io)?;
            let mlc = extremal_sets(&game).maximal_losing;
            let report = if cli.json {
                json_line(&json!({ "mlc": bitstrings(&mlc) }))
            } else {
                coalition_lines("lose", &mlc)
            };
            emit(out, io, &report)
        }
        Command::Dual(input) => {
            let game = load(input.file.as_deref(), io)?;
            emit_game(cli, io, &dual(&game))
        }
        Command::Weighted(input) => {
            let game = load(input.file.as_deref(), io)?;
            let rep = is_weighted(&game);
            let report = if cli.json {
                let parts: Vec<Value> = rep.iter().map(part_json).collect();
                json_line(&json!({ "weighted": rep.is_some(), "parts": parts }))
            } else {
                match &rep {
                    Some(g) => format!("weighted\n{}\n", format::wmg_line(g)),
                    None => "not weighted\n".to_string(),
                }
            };
            emit(out, io, &report)
        }
        Command::Dim(input) => {
            let game = load(input.file.as_deref(), io)?;
            emit_witness(cli, io, "dimension", &dimension(&game)?)
        }
        Command::Codim(input) => {
            let game = load(input.file.as_deref(), io)?;
            emit_witness(cli, io, "codimension", &codimension(&game)?)
        }
        Command::Equiv { first, second } => {
            let a = load(Some(first), io)?;
            let b = load(second.as_deref(), io)?;
            let same = equivalent(&a, &b);
            let report = if cli.json {
                json_line(&json!({ "equivalent": same }))
            } else if same {
                "equivalent\n".to_string()
            } else {
                "different\n".to_string()
            };
            emit(out, io, &report)
        }
        Command::Convert { to, mode, input } => {
            let game = load(input.file.as_deref(), io)?;
            let kind = match to {
                Target::Intersection => Combination::Intersection,
                Target::Union => Combination::Union,
            };
            let mode = match mode {
                Mode::Canonical => ConvertMode::Canonical,
                Mode::Minimal => ConvertMode::Minimal,
            };
            let parts = convert(&game, kind, mode)?;
            let result = SimpleGame::combine(kind, parts)?;
            emit_game(cli, io, &result)
        }
        Command::Gen(generator) => {
            let game = generate(generator)?;
            emit_game(cli, io, &game)
        }
    }
}

fn generate(generator: &Generator) -> Result<SimpleGame, CliError> {
    Ok(match generator {
        Generator::Example1 { n } => gen_example1(*n)?,
        Generator::Ssp { b, a, d } => gen_ssp(&SspInstance::new(*b, a.clone(), *d)?)?,
        Generator::Unanimity { blocks, n } => {
            let lists = blocks
                .iter()
                .map(|b| {
                    b.split(',')
                        .map(|p| {
                            p.trim().parse::<usize>().map_err(|_| {
                                CliError::Usage(format!("invalid player `{p}` in block `{b}`"))
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            let n = n.unwrap_or_else(|| lists.iter().flatten().copied().max().unwrap_or(0));
            let coalitions = lists
                .into_iter()
                .map(|players| Coalition::new(n, players))
                .collect::<Result<Vec<_>, _>>()?;
            gen_unanimity_composition(&coalitions)?
        }
        Generator::Random { n, m, seed } => gen_random_monotone(*n, *m, *seed)?,
    })
}

fn load(path: Option<&Path>, io: &mut Streams) -> Result<SimpleGame, CliError> {
    let (name, text) = match path {
        Some(p) if p != Path::new("-") => {
            let text = std::fs::read_to_string(p)
                .map_err(|source| CliError::Io { path: p.display().to_string(), source })?;
            (p.display().to_string(), text)
        }
        _ => {
            let mut text = String::new();
            io.stdin
                .read_to_string(&mut text)
                .map_err(|source| CliError::Io { path: "<stdin>".into(), source })?;
            ("<stdin>".to_string(), text)
        }
    };
    parse_game(&text).map_err(|source| CliError::Parse { path: name, source })
}

fn emit(out: Option<&Path>, io: &mut Streams, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source }),
        None => io
            .stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

fn emit_game(cli: &Cli, io: &mut Streams, game: &SimpleGame) -> Result<(), CliError> {
    let text = if cli.json { json_line(&game_json(game)) } else { serialize_game(game) };
    emit(cli.output.as_deref(), io, &text)
}

/// The report always goes to stdout; `-o` additionally saves the witness as a game file.
fn emit_witness(
    cli: &Cli,
    io: &mut Streams,
    label: &str,
    witness: &DimensionWitness,
) -> Result<(), CliError> {
    if let Some(path) = &cli.output {
        emit(Some(path), io, &format::serialize_parts(witness.kind, &witness.parts))?;
    }
    let report = if cli.json {
        let parts: Vec<Value> = witness.parts.iter().map(part_json).collect();
        json_line(&json!({ "value": witness.value, "kind": kind_name(witness.kind), "parts": parts }))
    } else {
        let mut s = format!("{label} {}\n", witness.value);
        for p in &witness.parts {
            s.push_str(&format::wmg_line(p));
            s.push('\n');
        }
        s
    };
    emit(None, io, &report)
}

fn kind_name(kind: Combination) -> &'static str {
    match kind {
        Combination::Intersection => "intersection",
        Combination::Union => "union",
    }
}

fn part_json(g: &WeightedGame) -> Value {
    json!({ "quota": g.quota(), "weights": g.weights() })
}

fn game_json(game: &SimpleGame) -> Value {
    let (form, parts): (&str, &[WeightedGame]) = match game.form() {
        GameForm::Explicit(mwc) => {
            let mut sorted = mwc.clone();
            sorted.sort();
            return json!({ "players": game.n(), "form": "explicit", "mwc": bitstrings(&sorted) });
        }
        GameForm::Weighted(g) => ("weighted", std::slice::from_ref(g)),
        GameForm::Intersection(p) => ("intersection", p),
        GameForm::Union(p) => ("union", p),
    };
    let parts: Vec<Value> = parts.iter().map(part_json).collect();
    json!({ "players": game.n(), "form": form, "parts": parts })
}

fn bitstrings(list: &[Coalition]) -> Vec<String> {
    list.iter().map(Coalition::to_bitstring).collect()
}

fn coalition_lines(tag: &str, list: &[Coalition]) -> String {
    list.iter().map(|c| format!("{tag} {}\n", c.to_bitstring())).collect()
}

fn json_line(v: &Value) -> String {
    format!("{v}\n")
}
