//! Command-line frontend. Every command prints a deterministic JSON payload
//! on stdout; diagnostics go to stderr. Exit codes: 0 = computed (even when
//! the answer is negative), 2 = invalid input, 3 = unsupported range.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hyperell::divisor::{is_hyperelliptic_by_rank, rank};
use hyperell::harmonic::is_hyperelliptic;
use hyperell::json::{
    CertificateJson, CheckResultJson, CurveJson, DivisorJson, EdgeJson, GraphJson, LaddersJson,
    NewtonCertifyJson, NewtonCountJson, PosetJson, RankResultJson, TriangulationJson, VertexJson,
};
use hyperell::graph::Graph;
use hyperell::moduli::{enumerate_h, enumerate_h2, ladder, trees_max_deg3, ModuliError};
use hyperell::newton::{
    bridgeless_core_triangulations, certify_standard_ladder, core_of_curve, curve_to_svg,
    dual_curve, regular_lift, sample_indices, NewtonError,
};

#[derive(Parser)]
#[command(
    name = "hyperell",
    version,
    about = "Hyperelliptic metric graphs, tropical moduli cells, and Newton-polygon skeletons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModuliFormat {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Decide hyperellipticity of a metric graph given as a graph document
    Check {
        /// graph JSON file
        graph: PathBuf,
        /// cross-check with the divisor-rank oracle
        #[arg(long)]
        oracle: bool,
    },
    /// Baker-Norine rank of a vertex-supported divisor
    Rank {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        divisor: PathBuf,
    },
    /// Enumerate hyperelliptic moduli cells with their f-vector
    Moduli {
        #[arg(long)]
        genus: usize,
        /// restrict to 2-edge-connected types
        #[arg(long)]
        two_edge_connected: bool,
        #[arg(long, value_enum, default_value_t = ModuliFormat::Json)]
        format: ModuliFormat,
        /// output path for DOT (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trees of maximum degree 3 on genus-1 vertices and their ladders
    Ladders {
        #[arg(long)]
        genus: usize,
    },
    /// The census of Newton-triangle triangulations with bridgeless dual core
    Newton {
        #[arg(long)]
        genus: usize,
        /// report the case-split counts only
        #[arg(long)]
        count_only: bool,
        /// run the lift/dual/core pipeline and certify standard ladders
        #[arg(long)]
        certify: bool,
        /// number of members to certify for genus > 3
        #[arg(long, default_value_t = 100)]
        sample: usize,
        /// seed for the deterministic sample
        #[arg(long, default_value_t = 17)]
        seed: u64,
        /// render one census member as SVG (requires --out)
        #[arg(long)]
        render: Option<usize>,
        /// output path for SVG artifacts
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Invalid(String),
    Range(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 2,
            Failure::Range(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Range(m) => m,
        }
    }
}

fn invalid<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Invalid(e.to_string())
}

fn moduli_err(e: ModuliError) -> Failure {
    match e {
        ModuliError::Range(..) => Failure::Range(e.to_string()),
        other => Failure::Invalid(other.to_string()),
    }
}

fn newton_err(e: NewtonError) -> Failure {
    match e {
        NewtonError::Range(..) => Failure::Range(e.to_string()),
        other => Failure::Invalid(other.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn emit<T: serde::Serialize>(payload: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(payload).map_err(invalid)?;
    println!("{}", text);
    Ok(())
}

fn read_graph(path: &PathBuf) -> Result<GraphJson, Failure> {
    let text = std::fs::read_to_string(path).map_err(invalid)?;
    serde_json::from_str(&text).map_err(invalid)
}

fn bare_graph_doc(g: &Graph) -> GraphJson {
    GraphJson {
        vertices: g
            .vertex_ids()
            .iter()
            .map(|id| VertexJson {
                id: id.clone(),
                weight: 0,
            })
            .collect(),
        edges: (0..g.n_edges())
            .map(|e| {
                let (a, b) = g.ends(e);
                EdgeJson {
                    id: g.edge_id(e).to_string(),
                    ends: [g.vertex_id(a).to_string(), g.vertex_id(b).to_string()],
                    length: None,
                }
            })
            .collect(),
        relation: None,
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Check { graph, oracle } => {
            let j = read_graph(&graph)?;
            let model = j.to_model().map_err(invalid)?;
            let decision = is_hyperelliptic(&model).map_err(invalid)?;
            let oracle_decision = if oracle {
                Some(is_hyperelliptic_by_rank(&model).map_err(invalid)?)
            } else {
                None
            };
            emit(&CheckResultJson::new(&decision, oracle_decision.as_ref()))
        }
        Command::Rank { graph, divisor } => {
            let j = read_graph(&graph)?;
            let model = j.to_model().map_err(invalid)?;
            let text = std::fs::read_to_string(&divisor).map_err(invalid)?;
            let d: DivisorJson = serde_json::from_str(&text).map_err(invalid)?;
            let degree = d.chips.values().sum();
            let r = rank(&model, &d.chips).map_err(invalid)?;
            emit(&RankResultJson { degree, rank: r })
        }
        Command::Moduli {
            genus,
            two_edge_connected,
            format,
            out,
        } => {
            let poset = if two_edge_connected {
                enumerate_h2(genus).map_err(moduli_err)?
            } else {
                enumerate_h(genus).map_err(moduli_err)?
            };
            match format {
                ModuliFormat::Json => emit(&PosetJson::from_poset(&poset)),
                ModuliFormat::Dot => {
                    let dot = poset.to_dot();
                    match out {
                        Some(path) => std::fs::write(path, dot).map_err(invalid),
                        None => {
                            println!("{}", dot);
                            Ok(())
                        }
                    }
                }
            }
        }
        Command::Ladders { genus } => {
            if !(3..=13).contains(&genus) {
                return Err(Failure::Range(format!(
                    "genus {} is outside the supported range 3..=13",
                    genus
                )));
            }
            let trees = trees_max_deg3(genus - 1);
            let mut tree_docs = Vec::new();
            let mut ladder_docs = Vec::new();
            for t in &trees {
                let l = ladder(t).map_err(moduli_err)?;
                tree_docs.push(bare_graph_doc(t));
                ladder_docs.push(bare_graph_doc(&l));
            }
            emit(&LaddersJson {
                genus,
                count: trees.len(),
                trees: tree_docs,
                ladders: ladder_docs,
            })
        }
        Command::Newton {
            genus,
            count_only,
            certify,
            sample,
            seed,
            render,
            out,
        } => {
            let census = bridgeless_core_triangulations(genus).map_err(newton_err)?;
            if let Some(index) = render {
                let entry = census.get(index).ok_or_else(|| {
                    Failure::Invalid(format!(
                        "census for genus {} has {} members; index {} is out of range",
                        genus,
                        census.len(),
                        index
                    ))
                })?;
                let heights = regular_lift(&entry.triangulation).map_err(newton_err)?;
                let curve = dual_curve(&entry.triangulation, &heights).map_err(newton_err)?;
                let path = out.ok_or_else(|| {
                    Failure::Invalid("--render requires --out for the SVG file".into())
                })?;
                std::fs::write(path, curve_to_svg(&curve)).map_err(invalid)?;
                return emit(&CurveJson::from_curve(&curve));
            }
            if count_only {
                let neither = census
                    .iter()
                    .filter(|e| !e.uses_left_steep && !e.uses_right_steep)
                    .count();
                let one = census
                    .iter()
                    .filter(|e| e.uses_left_steep != e.uses_right_steep)
                    .count();
                let both = census
                    .iter()
                    .filter(|e| e.uses_left_steep && e.uses_right_steep)
                    .count();
                return emit(&NewtonCountJson {
                    genus,
                    neither,
                    one,
                    both,
                    total: census.len(),
                });
            }
            if certify {
                let indices = if genus == 3 {
                    (0..census.len()).collect::<Vec<_>>()
                } else {
                    sample_indices(census.len(), sample, seed)
                };
                let mut certificates = Vec::new();
                let mut lift_failures = 0usize;
                for &i in &indices {
                    let t = &census[i].triangulation;
                    match regular_lift(t) {
                        Err(_) => {
                            lift_failures += 1;
                            certificates.push(CertificateJson {
                                index: i,
                                regular: false,
                                is_standard_ladder: false,
                                opposite_sides_equal: false,
                                bridgeless: false,
                            });
                        }
                        Ok(heights) => {
                            let curve =
                                dual_curve(t, &heights).map_err(newton_err)?;
                            let core = core_of_curve(&curve).map_err(newton_err)?;
                            let cert = certify_standard_ladder(&core, genus);
                            certificates.push(CertificateJson {
                                index: i,
                                regular: true,
                                is_standard_ladder: cert.is_standard_ladder,
                                opposite_sides_equal: cert.opposite_sides_equal,
                                bridgeless: cert.bridgeless,
                            });
                        }
                    }
                }
                let all = |f: fn(&CertificateJson) -> bool| certificates.iter().all(f);
                return emit(&NewtonCertifyJson {
                    genus,
                    members: census.len(),
                    checked: certificates.len(),
                    all_standard_ladders: all(|c| c.is_standard_ladder),
                    all_opposite_sides_equal: all(|c| c.opposite_sides_equal),
                    all_bridgeless: all(|c| c.bridgeless),
                    lift_failures,
                    seed,
                    certificates,
                });
            }
            let docs: Vec<TriangulationJson> =
                census.iter().map(TriangulationJson::from_entry).collect();
            emit(&docs)
        }
    }
}
