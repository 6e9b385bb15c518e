use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use matsuo2::decomp::{analyze_line, classify_space, DecompError, FusionTable, LineReport, SpaceVerdict};
use matsuo2::fischer::{catalog, catalog_names, read_fischer, FischerError, FischerSpace, Line, CATALOG};
use matsuo2::matsuo::{MatsuoError, NilpotentMatsuoAlgebra};
use matsuo2::miyamoto::{aut_count_full, aut_enumerate_reduced, miyamoto_report, MiyamotoError};
use matsuo2::suite::{run_suite, SuiteOptions};
use matsuo2::transposition::{read_gens, GroupError, DEFAULT_CLASS_CAP};

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Fischer(#[from] FischerError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Matsuo(#[from] MatsuoError),
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    Miyamoto(#[from] MiyamotoError),
    #[error("{0}: {1}")]
    Io(PathBuf, std::io::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Parser)]
#[command(name = "matsuo2", version, about = "Nilpotent Matsuo algebras of Fischer spaces in characteristic 2")]
struct Cli {
    /// Worker threads for parallel searches.
    #[arg(long, global = true, env = "MATSUO2_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Paper,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in Fischer spaces.
    Catalog {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Validate a space and print its line census.
    #[command(group(ArgGroup::new("source").required(true)))]
    Space {
        #[arg(long, group = "source")]
        from_catalog: Option<String>,
        #[arg(long, group = "source")]
        from_file: Option<PathBuf>,
        #[arg(long, group = "source")]
        from_gens: Option<PathBuf>,
        /// Write the JSON report here instead of printing text.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decompose the algebra with respect to one line or all of them.
    Decompose {
        /// Catalog name, or a path to a `.fischer` or `.gens` file.
        #[arg(long)]
        space: String,
        /// Point indices `i,j,k` of the line.
        #[arg(long)]
        line: Option<String>,
        #[arg(long)]
        reduced: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Miyamoto group of the quadrilateral algebra over GF(2^k).
    Miyamoto {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=4))]
        field: u8,
        #[arg(long)]
        reduced: bool,
        #[arg(long, default_value = "cq")]
        space: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Automorphism group of the quadrilateral algebra over GF(2).
    Aut {
        #[arg(long)]
        reduced: bool,
        #[arg(long, default_value = "cq")]
        space: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long, value_enum, default_value = "paper")]
        suite: Suite,
        /// `.fischer` or `.gens` data for the 81-point space labelled `[p,q,r,s]`.
        #[arg(long)]
        hall_data: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Perturb one structure constant of every algebra (negative control).
        #[arg(long, hide = true)]
        corrupt_fixture: bool,
    },
}

fn load_file(path: &Path) -> Result<FischerSpace, CliError> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("gens") => Ok(read_gens(path)?.fischer(DEFAULT_CLASS_CAP)?),
        Some("fischer") => Ok(read_fischer(path)?),
        _ => Err(CliError::Usage(format!("{}: expected a .fischer or .gens file", path.display()))),
    }
}

fn load_space(spec: &str) -> Result<FischerSpace, CliError> {
    if catalog_names().any(|n| n == spec) {
        Ok(catalog(spec)?)
    } else if Path::new(spec).exists() {
        load_file(Path::new(spec))
    } else {
        let names: Vec<&str> = catalog_names().collect();
        Err(CliError::Usage(format!("{spec} is neither a catalog entry ({}) nor a file", names.join(", "))))
    }
}

fn parse_line(space: &FischerSpace, text: &str) -> Result<Line, CliError> {
    let pts: Vec<usize> = text
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("--line expects three point indices i,j,k, got {text}")))?;
    let mut l: Line =
        pts.try_into().map_err(|_| CliError::Usage(format!("--line expects three point indices i,j,k, got {text}")))?;
    l.sort_unstable();
    if space.line_index(&l).is_none() {
        return Err(CliError::Usage(format!("unknown line {l:?} in {}", space.name())));
    }
    Ok(l)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn write_out(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

/// `key: value` lines for a flat report.
fn key_values<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("reports serialize");
    let mut out = String::new();
    if let Some(map) = v.as_object() {
        for (k, x) in map {
            out.push_str(&format!("{k:<28} {x}\n"));
        }
    }
    out
}

fn cmd_catalog(format: Format) -> Result<String, CliError> {
    #[derive(Serialize)]
    struct Row {
        name: &'static str,
        points: usize,
        lines: usize,
        rank: u8,
        symplectic: bool,
    }
    let mut rows = Vec::new();
    for &(name, rank, symplectic) in CATALOG {
        let s = catalog(name)?;
        rows.push(Row { name, points: s.n_points(), lines: s.lines().len(), rank, symplectic });
    }
    Ok(match format {
        Format::Json => json(&rows),
        Format::Text => {
            let mut out = format!("{:<10} {:>6} {:>6} {:>5}  {}\n", "name", "points", "lines", "rank", "symplectic");
            for r in rows {
                out.push_str(&format!(
                    "{:<10} {:>6} {:>6} {:>5}  {}\n",
                    r.name, r.points, r.lines, r.rank, r.symplectic
                ));
            }
            out
        }
    })
}

#[derive(Serialize)]
struct CensusRow {
    line: Line,
    p0: usize,
    p2: usize,
    p3: usize,
}

#[derive(Serialize)]
struct SpaceSummary {
    name: String,
    points: usize,
    lines: usize,
    symplectic: bool,
    declared_rank: Option<u8>,
    census: Vec<CensusRow>,
}

fn cmd_space(space: &FischerSpace, out: Option<&Path>) -> Result<String, CliError> {
    let mut census = Vec::new();
    for l in space.lines() {
        let c = space.line_census(l)?;
        census.push(CensusRow { line: *l, p0: c.p0.len(), p2: c.p2.len(), p3: c.p3.len() });
    }
    let summary = SpaceSummary {
        name: space.name().to_string(),
        points: space.n_points(),
        lines: space.lines().len(),
        symplectic: space.is_symplectic_type(),
        declared_rank: space.meta().map(|m| m.rank),
        census,
    };
    if let Some(path) = out {
        write_out(path, &json(&summary))?;
    }
    let mut text = format!(
        "{}: {} points, {} lines, symplectic {}\n{:<16} {:>4} {:>4} {:>4}\n",
        summary.name, summary.points, summary.lines, summary.symplectic, "line", "P0", "P2", "P3"
    );
    for r in &summary.census {
        text.push_str(&format!("{:<16} {:>4} {:>4} {:>4}\n", format!("{:?}", r.line), r.p0, r.p2, r.p3));
    }
    Ok(text)
}

fn cell(t: &FusionTable, x: usize, y: usize) -> String {
    let labels: Vec<String> = t.get(x, y).iter().map(u8::to_string).collect();
    if labels.is_empty() {
        "∅".into()
    } else {
        format!("{{{}}}", labels.join(","))
    }
}

fn line_text(r: &LineReport) -> String {
    let t = &r.table;
    let mut out = format!(
        "line {:?}  dims {:?}  eigen {:?}  semisimple {}  graded {}\n",
        r.line, r.gen_dims, r.eigen_dims, r.semisimple, r.z2_graded
    );
    out.push_str("   * | 0      1\n  ---+------------\n");
    for x in 0..2 {
        out.push_str(&format!("   {x} | {:<6} {}\n", cell(t, x, 0), cell(t, x, 1)));
    }
    if let Some(w) = &r.witness {
        out.push_str(&format!("  witness u {:?}  v {:?}  bad component {:?}\n", w.u, w.v, w.bad_component));
    }
    out
}

fn verdict_text(v: &SpaceVerdict) -> String {
    let mut out = format!(
        "{}: dim {}, reduced {}, globally graded {}, good lines {}\n",
        v.space,
        v.dim,
        v.reduced,
        v.globally_graded,
        v.good_lines.len()
    );
    for r in &v.lines {
        out.push_str(&line_text(r));
    }
    out
}

fn cmd_decompose(spec: &str, line: Option<&str>, reduced: bool, format: Format) -> Result<String, CliError> {
    let space = load_space(spec)?;
    let mut alg = NilpotentMatsuoAlgebra::build(&space)?;
    if reduced {
        alg = alg.reduce()?;
    }
    Ok(match line {
        Some(text) => {
            let r = analyze_line(&alg, &parse_line(&space, text)?)?;
            match format {
                Format::Json => json(&r),
                Format::Text => line_text(&r),
            }
        }
        None => {
            let v = classify_space(&alg)?;
            match format {
                Format::Json => json(&v),
                Format::Text => verdict_text(&v),
            }
        }
    })
}

/// Miyamoto and automorphism reports exist only for the complete quadrilateral.
fn require_quadrilateral(spec: &str) -> Result<(), CliError> {
    let space = load_space(spec)?;
    if space.n_points() == 6 && space.lines().len() == 4 {
        return Ok(());
    }
    Err(CliError::Usage(format!(
        "{} is not the complete quadrilateral. Only its line decompositions are Z-graded; on other spaces every \
         line decomposition is at most Z/2-graded, so the maps with λ ≠ 1 are not automorphisms and there is no \
         nontrivial Miyamoto group to report",
        space.name()
    )))
}

fn render<T: Serialize>(value: &T, format: Format) -> String {
    match format {
        Format::Json => json(value),
        Format::Text => key_values(value),
    }
}

fn run(cli: Cli) -> Result<(String, u8), CliError> {
    Ok(match cli.command {
        Command::Catalog { format } => (cmd_catalog(format)?, 0),
        Command::Space { from_catalog, from_file, from_gens, out } => {
            let space = match (from_catalog, from_file, from_gens) {
                (Some(name), _, _) => catalog(&name)?,
                (_, Some(path), _) => read_fischer(&path)?,
                (_, _, Some(path)) => read_gens(&path)?.fischer(DEFAULT_CLASS_CAP)?,
                _ => return Err(CliError::Usage("one of --from-catalog, --from-file, --from-gens is required".into())),
            };
            (cmd_space(&space, out.as_deref())?, 0)
        }
        Command::Decompose { space, line, reduced, format } => {
            (cmd_decompose(&space, line.as_deref(), reduced, format)?, 0)
        }
        Command::Miyamoto { field, reduced, space, format } => {
            require_quadrilateral(&space)?;
            (render(&miyamoto_report(field, reduced)?, format), 0)
        }
        Command::Aut { reduced, space, format } => {
            require_quadrilateral(&space)?;
            let text =
                if reduced { render(&aut_enumerate_reduced()?, format) } else { render(&aut_count_full()?, format) };
            (text, 0)
        }
        Command::Verify { suite: Suite::Paper, hall_data, format, out, corrupt_fixture } => {
            let hall_space = hall_data.as_deref().map(load_file).transpose()?;
            let result = run_suite(&SuiteOptions { hall_space, corrupt: corrupt_fixture });
            let code = result.exit_code() as u8;
            let text = match format {
                Format::Json => {
                    let mut s = result.to_json();
                    s.push('\n');
                    s
                }
                Format::Text => result.to_text(),
            };
            match out {
                Some(path) => {
                    write_out(&path, &text)?;
                    (String::new(), code)
                }
                None => (text, code),
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
