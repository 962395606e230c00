//! Command-line front end: graph analysis, K-path matrices, edge-weight
//! improvement proposals, and shortest-path counting.
//!
//! Exit codes: 0 on success, 1 on input errors (files, flags, graph data),
//! 2 on numerical failures (negative cycles, reducible matrices,
//! non-convergence). All numeric output is bit-for-bit reproducible for a
//! fixed configuration.

#![forbid(unsafe_code)]

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pathlen::io::{self, Directedness, Format, ReadOptions};
use pathlen::{enhance, measures, tropical};
use pathlen::{EnhanceOptions, Graph, MeasureReport, MethodChoice, Proposal};

#[derive(Parser)]
#[command(name = "pathlen", version, about = "Network analysis with min-plus path length matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute distance-based measures, centers and efficiencies
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        /// Path level: an integer or "full" for n-1
        #[arg(long, default_value = "full")]
        k: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        output: OutputFormat,
        /// Decimal places in table output
        #[arg(long, default_value_t = 4)]
        digits: usize,
    },
    /// Print the K-step path length matrix ("inf" marks unreachable pairs)
    Plm {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "full")]
        k: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        output: OutputFormat,
    },
    /// Recommend single-edge weight reductions that raise global K-efficiency
    Improve {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "full")]
        k: String,
        /// ekg1 (harmonic centralities), ekg2 (Perron vectors), or auto
        /// (ekg2 with fallback to ekg1)
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Number of successive perturbations
        #[arg(long, default_value_t = 1)]
        steps: usize,
        /// Scale applied to the selected weight
        #[arg(long, default_value_t = 0.5)]
        factor: f64,
        /// Power iteration tolerance for ekg2
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Power iteration cap for ekg2
        #[arg(long, default_value_t = 10_000)]
        max_iter: usize,
        /// Write the perturbed graph to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        output: OutputFormat,
        #[arg(long, default_value_t = 4)]
        digits: usize,
    },
    /// Count shortest paths between two vertices of an unweighted graph
    Count {
        #[command(flatten)]
        input: InputArgs,
        /// Source vertex (1-based)
        #[arg(long)]
        from: usize,
        /// Target vertex (1-based)
        #[arg(long)]
        to: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        output: OutputFormat,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Graph file (edge list or Matrix Market coordinate)
    file: PathBuf,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// auto detects undirected graphs from exact symmetry
    #[arg(long, value_enum, default_value_t = DirectedArg::Auto)]
    directed: DirectedArg,
    /// Vertex count; inferred as the largest index seen when omitted
    #[arg(long)]
    n: Option<usize>,
    /// Accept negative edge weights
    #[arg(long)]
    allow_negative: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Edgelist,
    Matrixmarket,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectedArg {
    Auto,
    True,
    False,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum OutputFormat {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Ekg1,
    Ekg2,
    Auto,
}

enum CliError {
    Usage(String),
    Lib(pathlen::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<pathlen::Error> for CliError {
    fn from(e: pathlen::Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Lib(e) if e.is_input_error() => 1,
            CliError::Lib(_) => 2,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn read_input(input: &InputArgs) -> Result<Graph, CliError> {
    let opts = ReadOptions {
        format: input.format.map(|f| match f {
            FormatArg::Edgelist => Format::EdgeList,
            FormatArg::Matrixmarket => Format::MatrixMarket,
        }),
        directed: match input.directed {
            DirectedArg::Auto => Directedness::Auto,
            DirectedArg::True => Directedness::Directed,
            DirectedArg::False => Directedness::Undirected,
        },
        n: input.n,
        allow_negative: input.allow_negative,
    };
    Ok(io::read_graph(&input.file, &opts)?)
}

fn resolve_k(arg: &str, n: usize) -> Result<usize, CliError> {
    if arg.eq_ignore_ascii_case("full") {
        return Ok(n.saturating_sub(1).max(1));
    }
    arg.parse::<usize>()
        .map_err(|_| CliError::Usage(format!("--k expects an integer or 'full', got '{arg}'")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze { input, k, output, digits } => {
            let g = read_input(&input)?;
            let k = resolve_k(&k, g.n())?;
            let t = tropical::kpath_matrix(&g, k)?;
            let report = measures::report(&t)?;
            print_report(&report, output, digits);
            Ok(())
        }
        Command::Plm { input, k, output } => {
            let g = read_input(&input)?;
            let k = resolve_k(&k, g.n())?;
            let t = tropical::kpath_matrix(&g, k)?;
            print_plm(&t, output);
            Ok(())
        }
        Command::Improve {
            input,
            k,
            method,
            steps,
            factor,
            tol,
            max_iter,
            out,
            output,
            digits,
        } => {
            let g = read_input(&input)?;
            let k = resolve_k(&k, g.n())?;
            if steps == 0 {
                return Err(CliError::Usage("--steps must be at least 1".into()));
            }
            let choice = match method {
                MethodArg::Ekg1 => MethodChoice::Ekg1,
                MethodArg::Ekg2 => MethodChoice::Ekg2,
                MethodArg::Auto => MethodChoice::Auto,
            };
            let opts = EnhanceOptions { factor, tol, max_iter };
            let (proposals, perturbed) = enhance::improve(&g, k, choice, steps, &opts)?;
            if matches!(method, MethodArg::Auto)
                && proposals.iter().any(|p| p.method == enhance::Method::Ekg1)
            {
                eprintln!("note: ekg2 was not applicable on some steps; ekg1 was used instead");
            }
            let written = match &out {
                Some(path) => {
                    io::write_graph_file(path, &perturbed)?;
                    Some(path.display().to_string())
                }
                None => None,
            };
            print_proposals(&proposals, &perturbed, written.as_deref(), output, digits);
            Ok(())
        }
        Command::Count { input, from, to, output } => {
            let g = read_input(&input)?;
            if from == 0 || to == 0 {
                return Err(CliError::Usage("vertices are numbered from 1".into()));
            }
            let result = tropical::shortest_path_count(&g, from - 1, to - 1)?;
            print_count(from, to, &result, output);
            Ok(())
        }
    }
}

fn print_report(report: &MeasureReport, output: OutputFormat, digits: usize) {
    match output {
        OutputFormat::Json => {
            println!("{}", serde_json::to_string_pretty(report).expect("report serialization"));
        }
        OutputFormat::Csv => {
            let mut header = "vertex,closeness,eccentricity,harmonic".to_string();
            if report.in_measures.is_some() {
                header.push_str(",in_closeness,in_eccentricity,in_harmonic");
            }
            println!("{header}");
            for v in 0..report.n {
                let mut row = format!(
                    "{},{},{},{}",
                    v + 1,
                    io::fmt_len(report.per_vertex.closeness[v]),
                    io::fmt_len(report.per_vertex.eccentricity[v]),
                    io::fmt_len(report.per_vertex.harmonic[v]),
                );
                if let Some(in_block) = &report.in_measures {
                    row.push_str(&format!(
                        ",{},{},{}",
                        io::fmt_len(in_block.per_vertex.closeness[v]),
                        io::fmt_len(in_block.per_vertex.eccentricity[v]),
                        io::fmt_len(in_block.per_vertex.harmonic[v]),
                    ));
                }
                println!("{row}");
            }
        }
        OutputFormat::Table => print_report_table(report, digits),
    }
}

fn print_report_table(report: &MeasureReport, digits: usize) {
    println!("n                  {}", report.n);
    println!("directed           {}", report.directed);
    println!("K                  {}", report.k);
    println!("diameter           {}", io::fmt_len(report.diameter));
    println!("radius             {}", io::fmt_len(report.radius));
    println!("avg_path_length    {}", io::fmt_fixed(report.avg_path_length, digits));
    println!("global_efficiency  {}", io::fmt_fixed(report.global_efficiency, digits));
    if let Some(h) = report.harary {
        println!("harary             {}", io::fmt_fixed(h, digits));
    }
    println!("disconnected       {}", report.disconnected);
    println!("center             {}", vertex_set(&report.centers.center));
    println!("h_center           {}", vertex_set(&report.centers.h_center));
    if let Some(in_block) = &report.in_measures {
        println!("in_radius          {}", io::fmt_len(in_block.radius));
        println!("in_center          {}", vertex_set(&in_block.centers.center));
        println!("h_in_center        {}", vertex_set(&in_block.centers.h_center));
    }
    println!();
    let w = digits + 11;
    let mut header =
        format!("{:>6}  {:>w$}  {:>w$}  {:>w$}", "vertex", "closeness", "eccentricity", "harmonic");
    if report.in_measures.is_some() {
        header.push_str(&format!(
            "  {:>w$}  {:>w$}  {:>w$}",
            "in_closeness", "in_eccentricity", "in_harmonic"
        ));
    }
    println!("{header}");
    for v in 0..report.n {
        let mut row = format!(
            "{:>6}  {:>w$}  {:>w$}  {:>w$}",
            v + 1,
            io::fmt_fixed(report.per_vertex.closeness[v], digits),
            io::fmt_len(report.per_vertex.eccentricity[v]),
            io::fmt_fixed(report.per_vertex.harmonic[v], digits),
        );
        if let Some(in_block) = &report.in_measures {
            row.push_str(&format!(
                "  {:>w$}  {:>w$}  {:>w$}",
                io::fmt_fixed(in_block.per_vertex.closeness[v], digits),
                io::fmt_len(in_block.per_vertex.eccentricity[v]),
                io::fmt_fixed(in_block.per_vertex.harmonic[v], digits),
            ));
        }
        println!("{row}");
    }
}

fn vertex_set(vs: &[usize]) -> String {
    let inner: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", inner.join(", "))
}

fn print_plm(t: &tropical::TropicalMatrix, output: OutputFormat) {
    match output {
        OutputFormat::Table => print!("{}", io::format_tropical_matrix(t)),
        OutputFormat::Csv => {
            for row in t.entries().chunks(t.n()) {
                let cells: Vec<String> = row.iter().map(|&v| io::fmt_len(v)).collect();
                println!("{}", cells.join(","));
            }
        }
        OutputFormat::Json => {
            let matrix: Vec<Vec<serde_json::Value>> = t
                .entries()
                .chunks(t.n())
                .map(|row| row.iter().map(|&v| len_json(v)).collect())
                .collect();
            let value = serde_json::json!({
                "n": t.n(),
                "K": t.k(),
                "stabilized_at": t.stabilized_at(),
                "matrix": matrix,
            });
            println!("{}", serde_json::to_string_pretty(&value).expect("matrix serialization"));
        }
    }
}

fn len_json(v: f64) -> serde_json::Value {
    if v.is_finite() {
        serde_json::json!(v)
    } else {
        serde_json::json!("inf")
    }
}

fn proposal_json(p: &Proposal, step: usize) -> serde_json::Value {
    let alternatives: Vec<[usize; 2]> =
        p.alternatives.iter().map(|&(a, b)| [a + 1, b + 1]).collect();
    serde_json::json!({
        "step": step,
        "method": p.method.name(),
        "K": p.k,
        "h1": p.h1 + 1,
        "h2": p.h2 + 1,
        "weight_before": p.weight_before,
        "weight_after": p.weight_after,
        "gamma": p.gamma,
        "e_before": p.e_before,
        "e_after": p.e_after,
        "symmetric": p.symmetric,
        "alternatives": alternatives,
    })
}

fn print_proposals(
    proposals: &[Proposal],
    perturbed: &Graph,
    written_to: Option<&str>,
    output: OutputFormat,
    digits: usize,
) {
    match output {
        OutputFormat::Json => {
            let mut value = serde_json::json!({
                "proposals": proposals
                    .iter()
                    .enumerate()
                    .map(|(i, p)| proposal_json(p, i + 1))
                    .collect::<Vec<_>>(),
            });
            if written_to.is_none() {
                value["graph_edges"] = serde_json::json!(perturbed.edges());
            }
            println!("{}", serde_json::to_string_pretty(&value).expect("proposal serialization"));
        }
        OutputFormat::Csv => {
            println!(
                "step,method,K,h1,h2,weight_before,weight_after,gamma,e_before,e_after,symmetric,alternatives"
            );
            for (i, p) in proposals.iter().enumerate() {
                let alts: Vec<String> =
                    p.alternatives.iter().map(|&(a, b)| format!("{}-{}", a + 1, b + 1)).collect();
                println!(
                    "{},{},{},{},{},{},{},{},{},{},{},{}",
                    i + 1,
                    p.method.name(),
                    p.k,
                    p.h1 + 1,
                    p.h2 + 1,
                    p.weight_before,
                    p.weight_after,
                    p.gamma,
                    p.e_before,
                    p.e_after,
                    p.symmetric,
                    alts.join(";"),
                );
            }
        }
        OutputFormat::Table => {
            for (i, p) in proposals.iter().enumerate() {
                println!(
                    "step {}: {} selects edge ({}, {}) at K={}; weight {} -> {}, \
                     efficiency {} -> {}",
                    i + 1,
                    p.method.name(),
                    p.h1 + 1,
                    p.h2 + 1,
                    p.k,
                    io::fmt_len(p.weight_before),
                    io::fmt_len(p.weight_after),
                    io::fmt_fixed(p.e_before, digits),
                    io::fmt_fixed(p.e_after, digits),
                );
                if !p.alternatives.is_empty() {
                    let alts: Vec<String> = p
                        .alternatives
                        .iter()
                        .map(|&(a, b)| format!("({}, {})", a + 1, b + 1))
                        .collect();
                    println!("        equally valid: {}", alts.join(" "));
                }
            }
            match written_to {
                Some(path) => println!("perturbed graph written to {path}"),
                None => {
                    println!("# perturbed graph (edge list)");
                    print!("{}", io::write_edge_list(perturbed));
                }
            }
        }
    }
}

fn print_count<T: fmt::Display>(
    from: usize,
    to: usize,
    result: &Option<(usize, T)>,
    output: OutputFormat,
) {
    match output {
        OutputFormat::Json => {
            let value = match result {
                Some((k, p)) => serde_json::json!({
                    "from": from,
                    "to": to,
                    "k_hat": k,
                    "count": p.to_string(),
                }),
                None => serde_json::json!({
                    "from": from,
                    "to": to,
                    "k_hat": null,
                    "count": null,
                }),
            };
            println!("{}", serde_json::to_string_pretty(&value).expect("count serialization"));
        }
        OutputFormat::Csv => {
            println!("from,to,k_hat,count");
            match result {
                Some((k, p)) => println!("{from},{to},{k},{p}"),
                None => println!("{from},{to},,"),
            }
        }
        OutputFormat::Table => match result {
            Some((k, p)) => {
                println!("shortest path length (edges): {k}");
                println!("number of shortest paths:     {p}");
            }
            None => println!("no path from {from} to {to} within n-1 edges"),
        },
    }
}
