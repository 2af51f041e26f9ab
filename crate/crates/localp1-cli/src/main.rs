//! `localp1` command-line tool: build the built-in complexes, check their
//! structure, compute integral homology, and run the first Pontryagin class
//! computation.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use localp1::builders::{builtin, verify_complementarity, verify_neighbourliness};
use localp1::format::{parse_any, write_facet_list, write_structured};
use localp1::homology::homology;
use localp1::pipeline::{chain_file_name, chain_file_text, OutputDocument, PipelineConfig};
use localp1::{ReducerConfig, SimplicialComplex};

#[derive(Parser)]
#[command(
    name = "localp1",
    version,
    about = "First rational Pontryagin class of combinatorial manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Facets,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a built-in complex (M8_15, M8_15_tilde, M8_15_double_tilde, boundary_simplex:n).
    Build {
        name: String,
        #[arg(long, value_enum, default_value = "facets")]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Structural report: pseudomanifold, orientability, neighbourliness, f-vector, χ.
    Check {
        /// A facet file or a built-in name.
        input: String,
    },
    /// Integral homology ranks and torsion.
    Homology {
        /// A facet file or a built-in name.
        input: String,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Rational cycle dual to the first Pontryagin class.
    P1 {
        /// A facet file or a built-in name.
        input: String,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Move budget per reduction attempt.
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
        /// Write each link's reduction chain to this directory.
        #[arg(long)]
        dump_chains: Option<PathBuf>,
        /// Include per-cycle decomposition rows in the output document.
        #[arg(long)]
        dump_decomposition: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn load(input: &str) -> Result<SimplicialComplex, String> {
    let path = Path::new(input);
    if path.exists() {
        let text = fs::read_to_string(path).map_err(|e| format!("{input}: {e}"))?;
        parse_any(&text).map_err(|e| format!("{input}: {e}"))
    } else {
        builtin(input).map_err(|e| e.to_string())
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), String> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn check_report(k: &SimplicialComplex) -> String {
    let mut out = String::new();
    let nv = k.vertices().len();
    out.push_str(&format!("dimension: {}\n", k.dim()));
    out.push_str(&format!("vertices: {nv}\n"));
    out.push_str(&format!("facets: {}\n", k.num_facets()));
    out.push_str(&format!("f-vector: {:?}\n", k.f_vector()));
    out.push_str(&format!("euler characteristic: {}\n", k.euler_characteristic()));
    match k.check_closed_pseudomanifold() {
        Ok(()) => out.push_str("closed pseudomanifold: yes\n"),
        Err(e) => out.push_str(&format!("closed pseudomanifold: no ({e})\n")),
    }
    match k.orient() {
        Ok(_) => out.push_str("orientable: yes\n"),
        Err(e) => out.push_str(&format!("orientable: no ({e})\n")),
    }
    let neighbourly = (1..=k.facet_size())
        .take_while(|&s| verify_neighbourliness(k, s))
        .last()
        .unwrap_or(0);
    out.push_str(&format!("neighbourliness: {neighbourly}\n"));
    if nv == 15 && k.facet_size() == 9 {
        out.push_str(&format!("5-neighbourly: {}\n", yes_no(neighbourly >= 5)));
        out.push_str(&format!("complementarity: {}\n", yes_no(verify_complementarity(k))));
    }
    out
}

fn homology_report(k: &SimplicialComplex, dim: Option<usize>) -> Result<String, String> {
    let dims: Vec<usize> = match dim {
        Some(d) => vec![d],
        None => (0..k.facet_size()).collect(),
    };
    let mut out = String::new();
    for d in dims {
        let h = homology(k, d).map_err(|e| e.to_string())?;
        let torsion: Vec<String> = h.torsion.iter().map(|t| t.to_string()).collect();
        out.push_str(&format!("H_{d}: rank {} torsion [{}]\n", h.betti, torsion.join(", ")));
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::Build { name, format, output } => {
            let k = builtin(&name).map_err(|e| e.to_string())?;
            let text = match format {
                Format::Facets => write_facet_list(&k),
                Format::Json => write_structured(&k),
            };
            emit(&text, output.as_deref())
        }
        Command::Check { input } => {
            let k = load(&input)?;
            emit(&check_report(&k), None)
        }
        Command::Homology { input, dim } => {
            let k = load(&input)?;
            emit(&homology_report(&k, dim)?, None)
        }
        Command::P1 {
            input,
            jobs,
            seed,
            budget,
            dump_chains,
            dump_decomposition,
            output,
        } => {
            let k = load(&input)?;
            let cfg = PipelineConfig {
                reducer: ReducerConfig {
                    seed,
                    budget,
                    ..ReducerConfig::default()
                },
                jobs,
                keep_chains: dump_chains.is_some(),
                keep_decompositions: dump_decomposition,
                ..PipelineConfig::default()
            };
            let (doc, res) = OutputDocument::compute(&k, &cfg).map_err(|e| e.to_string())?;
            if let Some(dir) = dump_chains {
                fs::create_dir_all(&dir).map_err(|e| format!("{}: {e}", dir.display()))?;
                for (s, rep) in &res.links {
                    if let Some(chain) = &rep.chain {
                        let p = dir.join(chain_file_name(s));
                        fs::write(&p, chain_file_text(s, chain)).map_err(|e| format!("{}: {e}", p.display()))?;
                    }
                }
            }
            emit(&doc.to_json(), output.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
