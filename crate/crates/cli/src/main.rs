//! Command-line interface for the pants-decomposition toolkit.
//!
//! Every command writes a single JSON value (or DOT text, for `export
//! --format dot`) to stdout. Runs are deterministic: the same arguments and
//! seed always produce byte-identical output. Exit status 0 means success,
//! 1 a failed verification or an unfillable loop, and 2 a usage or input
//! validation error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

use pants_complex::corpus::{random_loops, LoopSpec};
use pants_complex::dot::{farey_window_dot, move_graph_dot, pants_graph_dot};
use pants_complex::farey::{FareyModel, ModelKind, Slope};
use pants_complex::homotopy::{
    fill_finite_loop, reduce_farey_loop, CertificateFile, FillBudget, FillOutcome,
    VerifyFileError,
};
use pants_complex::pantsgraph::{build_move_graph, enumerate_types, PantsGraph, TypeMoveGraph};
use pants_complex::relations::{find_type_instances, RelationKind};
use pants_complex::surface::SurfaceType;
use pants_complex::FareySubcomplex;

#[derive(Parser)]
#[command(name = "pants-complex", version, about = "Pants decompositions, their moves, and machine-checkable loop contractions", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Curve and pants counts of the surface with genus G and N boundaries.
    Counts { g: u32, n: u32 },
    /// All decomposition graph types of a surface, as canonical codes.
    Enumerate { g: u32, n: u32 },
    /// Legal elementary moves of a decomposition graph read from a file.
    Moves {
        /// JSON file holding a decomposition graph.
        graph: PathBuf,
    },
    /// Finite windows of the slope models of the four-holed sphere and the
    /// one-holed torus.
    Farey {
        #[command(subcommand)]
        shape: FareyShape,
    },
    /// Contract a based loop of slopes and print the certificate.
    Reduce {
        /// JSON file holding an array of slopes like "3/4" (first = last).
        r#loop: PathBuf,
        /// Slope model to work in.
        #[arg(long, value_enum)]
        model: ModelArg,
    },
    /// Contract a based loop of type indices in the move graph of (G, N),
    /// using that graph's triangle, pentagon, and square cells.
    Fill {
        g: u32,
        n: u32,
        /// JSON file holding an array of type indices (first = last).
        r#loop: PathBuf,
    },
    /// List the relation cells of one kind in the move graph of (G, N).
    Relations {
        g: u32,
        n: u32,
        /// Which relation family to search for.
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// Replay a contraction certificate against its recorded host.
    Verify {
        /// JSON certificate file, as produced by `reduce` or `fill`.
        cert: PathBuf,
    },
    /// Re-emit a stored object as canonical JSON or as a DOT graph.
    Export {
        /// JSON file holding a slope window, a type move graph, or a
        /// decomposition graph.
        object: PathBuf,
        #[arg(long, value_enum)]
        format: FormatArg,
    },
    /// Generate a seeded corpus of random based slope loops.
    Loops {
        /// How many loops to generate.
        count: usize,
        /// Longest loop to emit (entry count, both endpoints included).
        #[arg(long, default_value_t = 30)]
        max_len: usize,
        /// Largest numerator/denominator magnitude allowed in a loop.
        #[arg(long, default_value_t = 1_000_000)]
        max_coeff: u64,
        /// Random seed; equal seeds give byte-identical corpora.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum FareyShape {
    /// All slopes with coefficients bounded by LIMIT, plus their edges and
    /// triangles.
    Ball {
        limit: u32,
        /// Slope model to window.
        #[arg(long, value_enum)]
        model: ModelArg,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelArg {
    /// Four-holed sphere (curves meet twice).
    A,
    /// One-holed torus (curves meet once).
    S,
}

impl From<ModelArg> for ModelKind {
    fn from(arg: ModelArg) -> ModelKind {
        match arg {
            ModelArg::A => ModelKind::A,
            ModelArg::S => ModelKind::S,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    /// Triangles of four-holed-sphere moves.
    #[value(name = "3A")]
    K3A,
    /// Pentagons of four-holed-sphere moves.
    #[value(name = "5A")]
    K5A,
    /// Triangles of one-holed-torus moves.
    #[value(name = "3S")]
    K3S,
    /// Commuting squares of disjointly supported moves.
    #[value(name = "C")]
    KC,
}

impl From<KindArg> for RelationKind {
    fn from(arg: KindArg) -> RelationKind {
        match arg {
            KindArg::K3A => RelationKind::R3A,
            KindArg::K5A => RelationKind::R5A,
            KindArg::K3S => RelationKind::R3S,
            KindArg::KC => RelationKind::RC,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Dot,
}

/// A failed run, sorted by exit status: checks that came out negative (1)
/// versus inputs that could not be used at all (2).
enum Failure {
    Check(String),
    Usage(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Usage(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Check(m) | Failure::Usage(m) => m,
        }
    }
}

fn usage(err: impl std::fmt::Display) -> Failure {
    Failure::Usage(err.to_string())
}

/// The object kinds `export` understands, told apart by their fields.
#[derive(serde::Deserialize, Serialize)]
#[serde(untagged)]
enum StoredObject {
    MoveGraph(TypeMoveGraph),
    Pants(PantsGraph),
    Window(FareySubcomplex),
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string(value).map_err(usage)?;
    println!("{text}");
    Ok(())
}

fn surface(g: u32, n: u32) -> Result<SurfaceType, Failure> {
    SurfaceType::new(g, n).map_err(usage)
}

fn move_graph(g: u32, n: u32) -> Result<TypeMoveGraph, Failure> {
    build_move_graph(surface(g, n)?).map_err(usage)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Counts { g, n } => {
            let s = surface(g, n)?;
            print_json(&serde_json::json!({
                "curves": s.curve_count(),
                "pants": s.pants_count(),
            }))
        }
        Command::Enumerate { g, n } => {
            let types = enumerate_types(surface(g, n)?).map_err(usage)?;
            let codes: Vec<_> = types.iter().map(PantsGraph::canonical_code).collect();
            print_json(&codes)
        }
        Command::Moves { graph } => {
            let graph: PantsGraph = read_json(&graph)?;
            print_json(&graph.legal_moves())
        }
        Command::Farey { shape } => {
            let FareyShape::Ball { limit, model } = shape;
            print_json(&FareySubcomplex::window(model.into(), limit))
        }
        Command::Reduce { r#loop, model } => {
            let slopes: Vec<Slope> = read_json(&r#loop)?;
            let kind: ModelKind = model.into();
            let cert = reduce_farey_loop(&FareyModel::new(kind), &slopes).map_err(usage)?;
            print_json(&CertificateFile::for_slopes(kind, cert))
        }
        Command::Fill { g, n, r#loop } => {
            let start: Vec<usize> = read_json(&r#loop)?;
            let s = surface(g, n)?;
            let mg = move_graph(g, n)?;
            let cells = [
                find_type_instances(&mg, RelationKind::R3A),
                find_type_instances(&mg, RelationKind::R5A),
                find_type_instances(&mg, RelationKind::RC),
            ]
            .concat();
            let budget = FillBudget::for_loop(&start);
            let outcome = fill_finite_loop(&mg, &cells, &start, &budget).map_err(usage)?;
            let outcome = match outcome {
                FillOutcome::Unfilled { .. } => {
                    fill_finite_loop(&mg, &cells, &start, &budget.with_inserts())
                        .map_err(usage)?
                }
                filled => filled,
            };
            match outcome {
                FillOutcome::Filled(cert) => print_json(&CertificateFile::for_types(s, cert)),
                FillOutcome::Unfilled { explored, complete } => {
                    print_json(&serde_json::json!({
                        "filled": false,
                        "explored": explored,
                        "complete": complete,
                    }))?;
                    Err(Failure::Check(if complete {
                        "no filling exists within the search budget's length bound".into()
                    } else {
                        format!("search budget exhausted after {explored} states without a filling")
                    }))
                }
            }
        }
        Command::Relations { g, n, kind } => {
            let mg = move_graph(g, n)?;
            print_json(&find_type_instances(&mg, kind.into()))
        }
        Command::Verify { cert } => {
            let file: CertificateFile = read_json(&cert)?;
            match file.verify() {
                Ok(()) => print_json(&serde_json::json!({ "ok": true })),
                Err(VerifyFileError::Certificate(e)) => {
                    Err(Failure::Check(format!("certificate rejected: {e}")))
                }
                Err(other) => Err(usage(other)),
            }
        }
        Command::Export { object, format } => {
            let stored: StoredObject = read_json(&object)?;
            match format {
                FormatArg::Json => print_json(&stored),
                FormatArg::Dot => {
                    let dot = match &stored {
                        StoredObject::Window(w) => farey_window_dot(w),
                        StoredObject::MoveGraph(mg) => move_graph_dot(mg),
                        StoredObject::Pants(p) => pants_graph_dot(p),
                    };
                    print!("{dot}");
                    Ok(())
                }
            }
        }
        Command::Loops {
            count,
            max_len,
            max_coeff,
            seed,
        } => {
            let spec = LoopSpec {
                count,
                max_len,
                max_coeff,
                seed,
            };
            print_json(&random_loops(&spec))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("{}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
