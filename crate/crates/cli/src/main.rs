use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;
use smw::sm::Direction;
use smw_cli::api::{self, AppState};
use smw_cli::error::CliError;
use smw_cli::ops::{self, parse_subset, AddRequest, IterateRequest, MutateRequest, SubsetRequest};
use smw_cli::session::{EnvDefaults, ModelFile, Session};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "smw", version, about = "Simple-minded mutation workbench")]
struct Cli {
    /// Session file holding the model and the collection registry.
    #[arg(long, global = true, env = "SMW_SESSION", default_value = "smw-session.json")]
    session: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Model definition and catalog.
    #[command(subcommand)]
    Model(ModelCmd),
    /// Named collections.
    #[command(subcommand)]
    Collection(CollectionCmd),
    /// Mutate a collection at a subset and register the result.
    Mutate(DirArgs),
    /// Simple tilt of the heart of a collection at a subset.
    Tilt(DirArgs),
    /// The six conditions for a right simple tilt, side by side.
    Theorem1(AtArgs),
    /// Charges and HN filtrations of the heart objects.
    Stability {
        name: String,
        /// JSON file `{label: [nx, dx, ny, dy]}`.
        #[arg(long)]
        charge: PathBuf,
        /// Also write an SVG charge plot.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Phase gap of the canonical stability function at a subset.
    Phasegap(AtArgs),
    /// Simple-minded reduction at a subset.
    Reduce(AtArgs),
    /// Repeated mutation at a fixed subset with periodicity detection.
    Iterate {
        #[command(flatten)]
        at: DirArgs,
        #[arg(short = 'n', long)]
        n: usize,
        /// Also write the trace as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Silting, cosilting and bisilting verdicts.
    Adjacency { name: String },
    /// Mutation graph.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Start the local JSON API.
    Serve {
        #[arg(long, default_value_t = 8750)]
        port: u16,
    },
}

#[derive(Subcommand)]
enum ModelCmd {
    /// Create a session from a model file.
    Define {
        file: PathBuf,
        /// Replace an existing session file.
        #[arg(long)]
        force: bool,
    },
    /// Print the catalog.
    Show,
}

#[derive(Subcommand)]
enum CollectionCmd {
    Add {
        name: String,
        members: Vec<String>,
        /// Register as a w-simple-minded system.
        #[arg(long)]
        w: Option<u32>,
    },
    Check { name: String },
    List,
    /// Tombstone a collection; its name stays reserved.
    Remove { name: String },
    Export { name: String },
    Import { file: PathBuf },
    /// History tree of the registry as DOT.
    History,
}

#[derive(Subcommand)]
enum GraphCmd {
    Explore {
        name: String,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        /// Also write the graph as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

#[derive(Args)]
struct AtArgs {
    name: String,
    /// Comma separated member labels.
    #[arg(long, default_value = "")]
    at: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dir {
    Right,
    Left,
}

#[derive(Args)]
struct DirArgs {
    #[command(flatten)]
    at: AtArgs,
    #[arg(long, value_enum, default_value = "right")]
    dir: Dir,
}

impl DirArgs {
    fn request(&self) -> MutateRequest {
        let dir = match self.dir {
            Dir::Right => Direction::Right,
            Dir::Left => Direction::Left,
        };
        MutateRequest { name: self.at.name.clone(), subset: parse_subset(&self.at.at), dir }
    }
}

impl AtArgs {
    fn request(&self) -> SubsetRequest {
        SubsetRequest { name: self.name.clone(), subset: parse_subset(&self.at) }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::new("Io", format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::new("Io", format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::invalid(e.to_string()))
}

fn run(cli: Cli) -> Result<Value, CliError> {
    let path = cli.session.as_path();
    match cli.command {
        Command::Model(ModelCmd::Define { file, force }) => {
            if path.exists() && !force {
                return Err(CliError::new("SessionExists", path.display().to_string()));
            }
            let def: ModelFile = parse_json(&read_file(&file)?)?;
            let s = Session::define(def, EnvDefaults::from_env()?)?;
            s.save(path)?;
            Ok(serde_json::json!({
                "session": path.display().to_string(),
                "model": s.model.kind_name(),
                "indecs": s.model.enumerate_indecs()?.len(),
                "collections": s.file.collections.iter().map(|e| e.name.clone()).collect::<Vec<_>>(),
            }))
        }
        Command::Model(ModelCmd::Show) => ops::catalog(&Session::load(path)?),
        Command::Collection(c) => {
            let mut s = Session::load(path)?;
            let (out, dirty) = match c {
                CollectionCmd::Add { name, members, w } => (ops::add(&mut s, &AddRequest { name, members, w })?, true),
                CollectionCmd::Check { name } => (ops::check(&s, &name)?, false),
                CollectionCmd::List => (ops::collections(&s), false),
                CollectionCmd::Remove { name } => (ops::remove(&mut s, &name)?, true),
                CollectionCmd::Export { name } => (serde_json::to_value(ops::export_collection(&s, &name)?).unwrap_or_default(), false),
                CollectionCmd::Import { file } => {
                    let req: AddRequest = parse_json(&read_file(&file)?)?;
                    (ops::add(&mut s, &req)?, true)
                }
                CollectionCmd::History => (serde_json::json!({ "dot": smw_cli::export::registry_dot(&s.file) }), false),
            };
            if dirty {
                s.save(path)?;
            }
            Ok(out)
        }
        Command::Mutate(a) => {
            let mut s = Session::load(path)?;
            let out = ops::mutate(&mut s, &a.request())?;
            s.save(path)?;
            Ok(out)
        }
        Command::Tilt(a) => {
            let mut s = Session::load(path)?;
            let out = ops::tilt(&mut s, &a.request())?;
            s.save(path)?;
            Ok(out)
        }
        Command::Theorem1(a) => ops::theorem1(&Session::load(path)?, &a.request()),
        Command::Stability { name, charge, svg } => {
            let s = Session::load(path)?;
            let text = read_file(&charge)?;
            let out = ops::stability(&s, &name, &text)?;
            if let Some(p) = svg {
                write_file(&p, &ops::stability_svg(&s, &name, &text)?)?;
            }
            Ok(out)
        }
        Command::Phasegap(a) => ops::phasegap(&Session::load(path)?, &a.request()),
        Command::Reduce(a) => ops::reduction(&Session::load(path)?, &a.request()),
        Command::Iterate { at, n, dot } => {
            let m = at.request();
            let req = IterateRequest { name: m.name, subset: m.subset, dir: m.dir, n };
            let (out, graph) = ops::iterate(&Session::load(path)?, &req)?;
            if let Some(p) = dot {
                write_file(&p, &graph)?;
            }
            Ok(out)
        }
        Command::Adjacency { name } => ops::adjacency(&Session::load(path)?, &name),
        Command::Graph(GraphCmd::Explore { name, depth, dot }) => {
            let g = ops::explore(&Session::load(path)?, &name, depth)?;
            if let Some(p) = dot {
                write_file(&p, &smw_cli::export::graph_dot(&g))?;
            }
            serde_json::to_value(g).map_err(|e| CliError::new("Internal", e.to_string()))
        }
        Command::Serve { port } => {
            let s = Session::load(path)?;
            let state = AppState::new(s, Some(path.to_path_buf()));
            let rt = tokio::runtime::Runtime::new().map_err(|e| CliError::new("Io", e.to_string()))?;
            rt.block_on(api::serve(state, port)).map_err(|e| CliError::new("Io", e.to_string()))?;
            Ok(Value::Null)
        }
    }
}

fn emit(v: &Value) {
    use std::io::Write;
    let text = serde_json::to_string_pretty(v).unwrap_or_default();
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Value::Null) => ExitCode::SUCCESS,
        Ok(v) => {
            emit(&v);
            ExitCode::SUCCESS
        }
        Err(e) => {
            emit(&e.to_json());
            ExitCode::FAILURE
        }
    }
}
