//! Command-line front end.
//!
//! Exit codes: 0 success, 1 parse or validation error, 2 capability error
//! (class width over the cap, unsupported dimension).

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::annotate::AnnotationIndex;
use crate::complex::{parse_chain, Chain, ParseOptions, SimplicialComplex};
use crate::error::Error;
use crate::optbasis::shortest_homology_basis_with;
use crate::opthom::{ClassOptima, ClassOptimum, DEFAULT_G_CAP};
use crate::queries::{are_homologous, is_null_homologous, max_independent_subset};

#[derive(Debug, Parser)]
#[command(
    name = "simplex-annotate",
    version,
    about = "Z2 homology annotations and queries on simplicial complexes"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Homology dimension p (default 1; inferred from cycle files for queries).
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Keep only the largest connected component instead of rejecting
    /// disconnected input.
    #[arg(long, global = true)]
    pub largest_component: bool,
    /// Largest class width g accepted by shortest-cycle.
    #[arg(long, global = true, default_value_t = DEFAULT_G_CAP)]
    pub g_cap: usize,
    /// Accepted for interface stability; every algorithm is deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for the per-source shortest-path computations.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the annotation of every p-simplex and the homology basis.
    Annotate { complex: PathBuf },
    /// Print the Betti number beta_p.
    Betti { complex: PathBuf },
    /// Homology queries on cycle files.
    #[command(subcommand)]
    Query(Query),
    /// Shortest homology basis of H_1.
    Basis { complex: PathBuf },
    /// Shortest cycle homologous to a given cycle, or in every class.
    ShortestCycle {
        complex: PathBuf,
        /// Cycle whose class is optimized.
        #[arg(long, conflicts_with = "all_classes", required_unless_present = "all_classes")]
        cycle: Option<PathBuf>,
        /// Report the optimum of every class.
        #[arg(long)]
        all_classes: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum Query {
    /// Is the cycle a boundary?
    Null { complex: PathBuf, cycle: PathBuf },
    /// Do the two cycles differ by a boundary?
    Homologous {
        complex: PathBuf,
        first: PathBuf,
        second: PathBuf,
    },
    /// Indices (0-based, in argument order) of a maximal independent subset.
    Independent {
        complex: PathBuf,
        #[arg(required = true)]
        cycles: Vec<PathBuf>,
    },
}

/// A failure with the exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub message: String,
    pub code: u8,
}

impl CliError {
    fn validation(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            code: 1,
        }
    }

    fn at(path: &Path, err: Error) -> Self {
        let code = if err.is_capability() { 2 } else { 1 };
        Self {
            message: format!("{}: {err}", path.display()),
            code,
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let code = if err.is_capability() { 2 } else { 1 };
        Self {
            message: err.to_string(),
            code,
        }
    }
}

impl From<io::Error> for CliError {
    fn from(err: io::Error) -> Self {
        Self::validation(format!("write failed: {err}"))
    }
}

/// Parses `argv`, runs the command and prints diagnostics; the process entry
/// point.
pub fn main_with_args(argv: impl IntoIterator<Item = OsString>) -> ExitCode {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out).and_then(|()| out.flush().map_err(CliError::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

/// Runs a parsed command, writing results to `out`. Output is buffered so
/// that nothing is written for a failing command.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let mut buf = Vec::new();
    match cli.common.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| CliError::validation(format!("thread pool: {e}")))?;
            pool.install(|| dispatch(cli, &mut buf))?;
        }
        None => dispatch(cli, &mut buf)?,
    }
    out.write_all(&buf)?;
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let c = &cli.common;
    match &cli.command {
        Command::Annotate { complex } => annotate(c, complex, out),
        Command::Betti { complex } => betti(c, complex, out),
        Command::Query(q) => query(c, q, out),
        Command::Basis { complex } => basis(c, complex, out),
        Command::ShortestCycle {
            complex,
            cycle,
            all_classes,
        } => shortest_cycle(c, complex, cycle.as_deref(), *all_classes, out),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::validation(format!("{}: {e}", path.display())))
}

fn load_complex(c: &Common, path: &Path) -> Result<SimplicialComplex, CliError> {
    let options = ParseOptions {
        largest_component: c.largest_component,
    };
    SimplicialComplex::parse_with(&read(path)?, options).map_err(|e| CliError::at(path, e))
}

/// Reads a cycle file; its dimension must agree with `--dim` when given.
fn load_cycle(c: &Common, k: &SimplicialComplex, path: &Path) -> Result<Chain, CliError> {
    let z = parse_chain(k, &read(path)?, c.dim.unwrap_or(1)).map_err(|e| CliError::at(path, e))?;
    if let Some(p) = c.dim {
        if z.dim() != p {
            return Err(CliError::at(
                path,
                Error::DimensionMismatch(format!("file holds {}-simplices but --dim is {p}", z.dim())),
            ));
        }
    }
    Ok(z)
}

fn index<'k>(k: &'k SimplicialComplex, p: usize) -> Result<AnnotationIndex<'k>, CliError> {
    Ok(AnnotationIndex::build(k, p)?)
}

fn simplices(k: &SimplicialComplex, z: &Chain) -> Vec<Vec<u32>> {
    z.simplices(k).map(<[u32]>::to_vec).collect()
}

fn join_simplex(s: &[u32]) -> String {
    s.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

/// Simplices separated by commas, `-` for the empty chain.
fn join_chain(k: &SimplicialComplex, z: &Chain) -> String {
    bits_or_dash(z.simplices(k).map(join_simplex).collect::<Vec<_>>().join(", "))
}

fn bits_or_dash(s: String) -> String {
    if s.is_empty() {
        "-".into()
    } else {
        s
    }
}

fn emit_json(out: &mut dyn Write, value: &impl Serialize) -> Result<(), CliError> {
    serde_json::to_writer(&mut *out, value).map_err(|e| CliError::validation(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

#[derive(Serialize)]
struct AnnotatedSimplex {
    simplex: Vec<u32>,
    annotation: String,
}

#[derive(Serialize)]
struct AnnotateJson {
    dim: usize,
    betti: usize,
    simplices: Vec<AnnotatedSimplex>,
    basis: Vec<Vec<Vec<u32>>>,
}

fn annotate(c: &Common, path: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let k = load_complex(c, path)?;
    let p = c.dim.unwrap_or(1);
    let idx = index(&k, p)?;
    if c.json {
        let doc = AnnotateJson {
            dim: p,
            betti: idx.betti(),
            simplices: (0..k.count(p))
                .map(|i| AnnotatedSimplex {
                    simplex: k.simplex(p, i).to_vec(),
                    annotation: idx.annotation(i).to_bit_string(),
                })
                .collect(),
            basis: idx.homology_basis().iter().map(|z| simplices(&k, z)).collect(),
        };
        return emit_json(out, &doc);
    }
    writeln!(out, "dim {p}")?;
    writeln!(out, "betti {}", idx.betti())?;
    for i in 0..k.count(p) {
        writeln!(
            out,
            "{}\t{}",
            join_simplex(k.simplex(p, i)),
            bits_or_dash(idx.annotation(i).to_bit_string())
        )?;
    }
    for (i, z) in idx.homology_basis().iter().enumerate() {
        writeln!(out, "basis {i}\t{}", join_chain(&k, z))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct BettiJson {
    dim: usize,
    betti: usize,
}

fn betti(c: &Common, path: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let k = load_complex(c, path)?;
    let p = c.dim.unwrap_or(1);
    let b = k.betti(p)?;
    if c.json {
        return emit_json(out, &BettiJson { dim: p, betti: b });
    }
    writeln!(out, "{b}")?;
    Ok(())
}

#[derive(Serialize)]
struct BoolJson {
    query: &'static str,
    result: bool,
}

#[derive(Serialize)]
struct IndependentJson {
    query: &'static str,
    betti: usize,
    selected: Vec<usize>,
}

fn query(c: &Common, q: &Query, out: &mut dyn Write) -> Result<(), CliError> {
    match q {
        Query::Null { complex, cycle } => {
            let k = load_complex(c, complex)?;
            let z = load_cycle(c, &k, cycle)?;
            let idx = index(&k, z.dim())?;
            let result = is_null_homologous(&idx, &z).map_err(|e| CliError::at(cycle, e))?;
            print_bool(c, out, "null", result)
        }
        Query::Homologous { complex, first, second } => {
            let k = load_complex(c, complex)?;
            let z1 = load_cycle(c, &k, first)?;
            let z2 = load_cycle(c, &k, second)?;
            let idx = index(&k, z1.dim())?;
            let result = are_homologous(&idx, &z1, &z2)?;
            print_bool(c, out, "homologous", result)
        }
        Query::Independent { complex, cycles } => {
            let k = load_complex(c, complex)?;
            let zs = cycles
                .iter()
                .map(|path| load_cycle(c, &k, path))
                .collect::<Result<Vec<_>, _>>()?;
            let p = zs[0].dim();
            if let Some((i, z)) = zs.iter().enumerate().find(|(_, z)| z.dim() != p) {
                return Err(CliError::at(
                    &cycles[i],
                    Error::DimensionMismatch(format!("{}-cycle among {p}-cycles", z.dim())),
                ));
            }
            let idx = index(&k, p)?;
            let selected = max_independent_subset(&idx, &zs)?;
            if c.json {
                return emit_json(
                    out,
                    &IndependentJson {
                        query: "independent",
                        betti: idx.betti(),
                        selected,
                    },
                );
            }
            let line: Vec<String> = selected.iter().map(usize::to_string).collect();
            writeln!(out, "{}", line.join(" "))?;
            Ok(())
        }
    }
}

fn print_bool(c: &Common, out: &mut dyn Write, query: &'static str, result: bool) -> Result<(), CliError> {
    if c.json {
        return emit_json(out, &BoolJson { query, result });
    }
    writeln!(out, "{result}")?;
    Ok(())
}

#[derive(Serialize)]
struct CycleJson {
    weight: f64,
    edges: Vec<Vec<u32>>,
}

#[derive(Serialize)]
struct BasisJson {
    g: usize,
    total_weight: f64,
    cycles: Vec<CycleJson>,
}

fn basis(c: &Common, path: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let k = load_complex(c, path)?;
    let idx = index(&k, c.dim.unwrap_or(1))?;
    let b = shortest_homology_basis_with(&idx)?;
    if c.json {
        let doc = BasisJson {
            g: idx.betti(),
            total_weight: b.total_weight,
            cycles: b
                .cycles
                .iter()
                .map(|bc| CycleJson {
                    weight: bc.weight,
                    edges: simplices(&k, &bc.chain),
                })
                .collect(),
        };
        return emit_json(out, &doc);
    }
    writeln!(out, "g {}", idx.betti())?;
    writeln!(out, "weight {}", b.total_weight)?;
    for (i, bc) in b.cycles.iter().enumerate() {
        writeln!(out, "cycle {i}\t{}\t{}", bc.weight, join_chain(&k, &bc.chain))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct ClassJson {
    class: String,
    weight: f64,
    edges: Vec<Vec<u32>>,
}

#[derive(Serialize)]
struct AllClassesJson {
    g: usize,
    classes: Vec<ClassJson>,
}

fn class_json(k: &SimplicialComplex, o: &ClassOptimum) -> ClassJson {
    ClassJson {
        class: o.class.to_bit_string(),
        weight: o.weight,
        edges: simplices(k, &o.chain),
    }
}

fn shortest_cycle(
    c: &Common,
    path: &Path,
    cycle: Option<&Path>,
    all_classes: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let k = load_complex(c, path)?;
    let z = cycle.map(|f| load_cycle(c, &k, f)).transpose()?;
    let p = z.as_ref().map_or(c.dim.unwrap_or(1), Chain::dim);
    let idx = index(&k, p)?;
    let h = match (&z, cycle) {
        (Some(z), Some(f)) => Some(idx.annotate_cycle(z).map_err(|e| CliError::at(f, e))?),
        _ => None,
    };
    let optima = ClassOptima::compute(&idx, c.g_cap)?;
    if all_classes {
        let all = optima.all();
        if c.json {
            let doc = AllClassesJson {
                g: idx.betti(),
                classes: all.iter().map(|o| class_json(&k, o)).collect(),
            };
            return emit_json(out, &doc);
        }
        writeln!(out, "g {}", idx.betti())?;
        for o in &all {
            writeln!(
                out,
                "{}\t{}\t{}",
                bits_or_dash(o.class.to_bit_string()),
                o.weight,
                join_chain(&k, &o.chain)
            )?;
        }
        return Ok(());
    }
    let h = h.expect("clap requires --cycle without --all-classes");
    let best = optima.optimum(h.to_mask());
    if c.json {
        return emit_json(out, &class_json(&k, &best));
    }
    writeln!(out, "class {}", bits_or_dash(best.class.to_bit_string()))?;
    writeln!(out, "weight {}", best.weight)?;
    writeln!(out, "edges {}", join_chain(&k, &best.chain))?;
    Ok(())
}
