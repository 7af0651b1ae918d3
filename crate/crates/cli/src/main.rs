//! `reeb` — command-line front end for the Reeb digraph toolkit.
//!
//! Exit codes: 0 on success or a positive verdict, 1 on a clean negative
//! verdict (not good, not isomorphic, check failed), 2 on usage or input
//! errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use reeb_cli::suite;
use reeb_core::consum::{connected_sum_surfaces, find_regular_strip, tight_window, Gluing};
use reeb_core::digraph::ReebDigraph;
use reeb_core::io::{
    self, export_dot, parse_embedding, parse_graph, parse_gs, parse_mesh, parse_point,
    serialize_graph, serialize_mesh, ParseMode,
};
use reeb_core::iso::isomorphism;
use reeb_core::realize::realize;
use reeb_core::surgery::{
    augment_host, augment_host_pair, check_embedding, gs_check, insertion_count,
    wedge_connected_sum,
};
use reeb_core::sweep::pl_reeb;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "reeb", version, about = "Reeb digraph surgeries and a PL surface verifier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy, Default)]
struct ModeFlags {
    /// Reject unknown fields when parsing (default).
    #[arg(long, conflicts_with = "lax")]
    strict: bool,
    /// Tolerate unknown fields when parsing.
    #[arg(long)]
    lax: bool,
}

impl ModeFlags {
    fn mode(&self) -> ParseMode {
        if self.lax {
            ParseMode::Lax
        } else {
            ParseMode::Strict
        }
    }
}

#[derive(Clone, Copy, ValueEnum, Default, PartialEq, Eq)]
enum Format {
    #[default]
    Json,
    Dot,
    /// Plain-text mesh export with the height as the z coordinate.
    Obj,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a graph document is a valid good digraph.
    Validate {
        graph: PathBuf,
        #[command(flatten)]
        mode: ModeFlags,
    },
    /// Wedge two digraphs at chosen points (`v:<id>` or `e:<id>@<t>`).
    Glue {
        graph1: PathBuf,
        point1: String,
        graph2: PathBuf,
        point2: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        mode: ModeFlags,
    },
    /// Check a critical-point count annotation against the degree rules.
    GsCheck {
        graph: PathBuf,
        annotation: PathBuf,
        #[command(flatten)]
        mode: ModeFlags,
    },
    /// Check a topological embedding of one digraph into a host.
    EmbedCheck {
        embedded: PathBuf,
        host: PathBuf,
        embedding: PathBuf,
        /// Allow degree-2 vertices to map onto host vertices.
        #[arg(long)]
        remark5: bool,
        #[command(flatten)]
        mode: ModeFlags,
    },
    /// Number of degree-2 vertices the augmentation would insert.
    Count {
        graph: PathBuf,
        #[command(flatten)]
        mode: ModeFlags,
    },
    /// Insert the forced degree-2 vertices into a tree host.
    Augment {
        host: PathBuf,
        embedded: PathBuf,
        embedding: PathBuf,
        #[arg(long)]
        remark5: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        mode: ModeFlags,
    },
    /// Augment a host for two disjointly embedded digraphs; prints the
    /// number of new vertices.
    ConsumCount {
        host: PathBuf,
        embedded1: PathBuf,
        embedding1: PathBuf,
        embedded2: PathBuf,
        embedding2: PathBuf,
        #[arg(long)]
        remark5: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        mode: ModeFlags,
    },
    /// Realize a good digraph as a triangulated surface with heights.
    Realize {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        mode: ModeFlags,
    },
    /// Sweep a mesh and emit its Reeb digraph.
    Reeb {
        mesh: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        mode: ModeFlags,
    },
    /// Simplicial connected sum of two meshes at chosen Reeb points.
    Consum {
        mesh1: PathBuf,
        point1: String,
        mesh2: PathBuf,
        point2: String,
        /// Glue with the opposite orientation.
        #[arg(long)]
        flip: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        mode: ModeFlags,
    },
    /// Test two graph documents for digraph isomorphism.
    Iso {
        graph1: PathBuf,
        graph2: PathBuf,
        #[command(flatten)]
        mode: ModeFlags,
    },
    /// Re-emit a graph document canonically, as JSON or DOT.
    Export {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        mode: ModeFlags,
    },
    /// Run the batch verification suite and print a pass/fail table.
    VerifySuite {
        /// Seed for the randomized batches.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    /// Clean negative verdict.
    Verdict(String),
    /// Usage or input error.
    Input(String),
}

impl From<io::IoError> for Failure {
    fn from(e: io::IoError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn input_err(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_graph(path: &Path, mode: ParseMode) -> Result<ReebDigraph, Failure> {
    Ok(parse_graph(&read(path)?, mode)?)
}

fn emit_graph(
    g: &ReebDigraph,
    out: Option<&Path>,
    format: Format,
) -> Result<(), Failure> {
    let text = match format {
        Format::Json => serialize_graph(g),
        Format::Dot => export_dot(g),
        Format::Obj => {
            return Err(Failure::Input(
                "obj output is only available for mesh documents".into(),
            ))
        }
    };
    emit(out, &text)
}

fn dispatch(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Validate { graph, mode } => {
            let g = load_graph(&graph, mode.mode())?;
            let report = g.validate_good_digraph();
            println!("is_good: {}", report.is_good);
            for v in &report.violations {
                println!("violation: {v:?}");
            }
            if let Some(cert) = &report.certificate {
                let layers: Vec<String> = cert.iter().map(|(v, l)| format!("{v}:{l}")).collect();
                println!("certificate: {}", layers.join(" "));
            }
            if report.is_good {
                Ok(())
            } else {
                Err(Failure::Verdict("digraph is not good".into()))
            }
        }
        Command::Glue {
            graph1,
            point1,
            graph2,
            point2,
            out,
            format,
            mode,
        } => {
            let g1 = load_graph(&graph1, mode.mode())?;
            let g2 = load_graph(&graph2, mode.mode())?;
            let p1 = parse_point(&point1)?;
            let p2 = parse_point(&point2)?;
            let res = wedge_connected_sum(&g1, &p1, &g2, &p2).map_err(input_err)?;
            emit_graph(&res.graph, out.as_deref(), format)
        }
        Command::GsCheck {
            graph,
            annotation,
            mode,
        } => {
            let g = load_graph(&graph, mode.mode())?;
            let ann = parse_gs(&read(&annotation)?, mode.mode())?;
            let report = gs_check(&g, &ann).map_err(input_err)?;
            for r in &report.per_vertex {
                println!(
                    "{}: degree {} requires {}, has {} -> {}",
                    r.vertex,
                    r.degree,
                    r.required,
                    r.actual.map_or("none".to_string(), |c| c.to_string()),
                    if r.ok { "ok" } else { "violation" }
                );
            }
            if report.ok {
                Ok(())
            } else {
                Err(Failure::Verdict("count annotation fails the degree rules".into()))
            }
        }
        Command::EmbedCheck {
            embedded,
            host,
            embedding,
            remark5,
            mode,
        } => {
            let w = load_graph(&embedded, mode.mode())?;
            let g = load_graph(&host, mode.mode())?;
            let phi = parse_embedding(&read(&embedding)?, mode.mode())?;
            let report = check_embedding(&w, &g, &phi, remark5).map_err(input_err)?;
            for v in &report.violations {
                println!("violation: {v:?}");
            }
            if remark5 {
                let names: Vec<String> = report.on_host_vertices.iter().map(|v| v.to_string()).collect();
                println!("on_host_vertices: [{}]", names.join(", "));
            }
            if report.ok {
                println!("embedding: ok");
                Ok(())
            } else {
                Err(Failure::Verdict("embedding is not valid".into()))
            }
        }
        Command::Count { graph, mode } => {
            let g = load_graph(&graph, mode.mode())?;
            println!("{}", insertion_count(&g));
            Ok(())
        }
        Command::Augment {
            host,
            embedded,
            embedding,
            remark5,
            out,
            format,
            mode,
        } => {
            let g = load_graph(&host, mode.mode())?;
            let w = load_graph(&embedded, mode.mode())?;
            let phi = parse_embedding(&read(&embedding)?, mode.mode())?;
            let res = augment_host(&g, &w, &phi, remark5).map_err(input_err)?;
            eprintln!("inserted {} new degree-2 vertices", res.new_vertices.len());
            emit_graph(&res.graph, out.as_deref(), format)
        }
        Command::ConsumCount {
            host,
            embedded1,
            embedding1,
            embedded2,
            embedding2,
            remark5,
            out,
            mode,
        } => {
            let g = load_graph(&host, mode.mode())?;
            let w1 = load_graph(&embedded1, mode.mode())?;
            let phi1 = parse_embedding(&read(&embedding1)?, mode.mode())?;
            let w2 = load_graph(&embedded2, mode.mode())?;
            let phi2 = parse_embedding(&read(&embedding2)?, mode.mode())?;
            let res = augment_host_pair(&g, &w1, &phi1, &w2, &phi2, remark5).map_err(input_err)?;
            println!("{}", res.new_vertices.len());
            if out.is_some() {
                emit_graph(&res.graph, out.as_deref(), Format::Json)?;
            }
            Ok(())
        }
        Command::Realize { graph, out, mode } => {
            let g = load_graph(&graph, mode.mode())?;
            let r = realize(&g).map_err(input_err)?;
            emit(out.as_deref(), &serialize_mesh(&r.surface, &r.heights))
        }
        Command::Reeb {
            mesh,
            out,
            format,
            mode,
        } => {
            let (surface, heights) = parse_mesh(&read(&mesh)?, mode.mode())?;
            let swept = pl_reeb(&surface, &heights).map_err(input_err)?;
            emit_graph(&swept.graph, out.as_deref(), format)
        }
        Command::Consum {
            mesh1,
            point1,
            mesh2,
            point2,
            flip,
            out,
            mode,
        } => {
            let (s1, h1) = parse_mesh(&read(&mesh1)?, mode.mode())?;
            let (s2, h2) = parse_mesh(&read(&mesh2)?, mode.mode())?;
            let p1 = parse_point(&point1)?;
            let p2 = parse_point(&point2)?;
            let sweep1 = pl_reeb(&s1, &h1).map_err(input_err)?;
            let sweep2 = pl_reeb(&s2, &h2).map_err(input_err)?;
            let v1 = sweep1.graph.value_at(&p1).map_err(input_err)?;
            let v2 = sweep2.graph.value_at(&p2).map_err(input_err)?;
            let f1 = find_regular_strip(&s1, &h1, &p1, tight_window(&h1, &v1)).map_err(input_err)?;
            let f2 = find_regular_strip(&s2, &h2, &p2, tight_window(&h2, &v2)).map_err(input_err)?;
            let gluing = if flip { Gluing::Reverse } else { Gluing::Preserve };
            let glued = connected_sum_surfaces(
                &f1.surface,
                &f1.heights,
                &f1.strip,
                &f2.surface,
                &f2.heights,
                &f2.strip,
                gluing,
            )
            .map_err(input_err)?;
            emit(out.as_deref(), &serialize_mesh(&glued.surface, &glued.heights))
        }
        Command::Iso { graph1, graph2, mode } => {
            let g1 = load_graph(&graph1, mode.mode())?;
            let g2 = load_graph(&graph2, mode.mode())?;
            match isomorphism(&g1, &g2) {
                Some(iso) => {
                    for (a, b) in &iso.vertex_map {
                        println!("vertex {a} -> {b}");
                    }
                    for (a, b) in &iso.edge_map {
                        println!("edge {a} -> {b}");
                    }
                    Ok(())
                }
                None => Err(Failure::Verdict("graphs are not isomorphic".into())),
            }
        }
        Command::Export {
            graph,
            format,
            out,
            mode,
        } => {
            // Graph documents export as JSON or DOT; mesh documents as JSON
            // or OBJ-like text.
            let text = read(&graph)?;
            match parse_graph(&text, mode.mode()) {
                Ok(g) => emit_graph(&g, out.as_deref(), format),
                Err(io::IoError::WrongKind { .. }) => {
                    let (surface, heights) = parse_mesh(&text, mode.mode())?;
                    let rendered = match format {
                        Format::Json => serialize_mesh(&surface, &heights),
                        Format::Obj => io::export_obj(&surface, &heights),
                        Format::Dot => {
                            return Err(Failure::Input(
                                "dot output is only available for graph documents".into(),
                            ))
                        }
                    };
                    emit(out.as_deref(), &rendered)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::VerifySuite { seed } => {
            let results = suite::run_all(seed);
            for r in &results {
                println!("{}", r.report_line());
                eprintln!("  ({} ms) criterion {}", r.millis, r.id);
            }
            if results.iter().all(|r| r.pass) {
                Ok(())
            } else {
                Err(Failure::Verdict("some criteria failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verdict(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
