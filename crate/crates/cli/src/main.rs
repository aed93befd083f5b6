//! Command-line entry point: construction, enumeration, analysis and
//! report generation for semi-elementary imset representations.
//!
//! Exit codes: 0 success, 1 domain errors (invalid grids, triplets,
//! exceeded work limits), 2 usage errors.

use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use imsets::serial::{
    element_name, elementary_label, grid_to_json, grids_from_json, imset_to_json, imset_to_text,
    matrix_to_csv, pattern_to_json, set_names, trace_to_json,
};
use imsets::{
    detect_rifts, fiber_graph, fiber_of, normalize_to_standard, semi_elementary, sigma_decompose,
    table_report, Axis, ConfigMatrix, DecompTree, ElementaryFamily, Limits, RepGrid, Triplet,
};

#[derive(Parser)]
#[command(name = "imsets", version, about = "Exact combinatorics of semi-elementary imset representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct TripletArgs {
    /// Size of A (canonical layout, C empty unless --C is given)
    #[arg(long = "A", value_name = "NA")]
    a: Option<usize>,
    /// Size of B
    #[arg(long = "B", value_name = "NB")]
    b: Option<usize>,
    /// Size of C
    #[arg(long = "C", value_name = "NC", default_value_t = 0)]
    c: usize,
    /// Named-set triplet JSON file: {"A":["a1",..],"B":["b1",..],"C":[..]}
    #[arg(long, value_name = "FILE", conflicts_with_all = ["a", "b"])]
    triplet: Option<String>,
}

#[derive(Args)]
struct OutArgs {
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write to a file instead of standard output
    #[arg(long, value_name = "FILE")]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print a semi-elementary (or elementary) imset
    Imset {
        #[command(flatten)]
        triplet: TripletArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// List the elementary-imset family of a triplet, grouped by level
    Family {
        #[command(flatten)]
        triplet: TripletArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Emit the configuration matrix
    Matrix {
        #[command(flatten)]
        triplet: TripletArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Enumerate the whole representation fiber
    Fiber {
        #[command(flatten)]
        triplet: TripletArgs,
        #[command(flatten)]
        out: OutArgs,
        /// Labeled-grid budget
        #[arg(long, default_value_t = 500_000)]
        max_labeled: u64,
        /// Worker threads (1 keeps output ordering reproducible)
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Connectivity report of the fiber's move graph
    Graph {
        #[command(flatten)]
        triplet: TripletArgs,
        #[command(flatten)]
        out: OutArgs,
        #[arg(long, default_value_t = 500_000)]
        max_labeled: u64,
    },
    /// Analyze the rift pattern of a grid file
    Rifts {
        /// Grid JSON (one grid or an array)
        #[arg(long = "in", value_name = "FILE")]
        input: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Sigma-decomposability with the decomposition tree
    Decompose {
        #[arg(long = "in", value_name = "FILE")]
        input: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Emit the move trace driving a grid to the standard representation
    Normalize {
        #[arg(long = "in", value_name = "FILE")]
        input: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Counting report: rift patterns, representations, indecomposables
    Count {
        /// Largest |A| and |B| of the report
        #[arg(long, num_args = 2, value_names = ["NA", "NB"], default_values_t = [4usize, 4])]
        max: Vec<usize>,
        #[command(flatten)]
        out: OutArgs,
        /// Rift-pattern budget per cell
        #[arg(long, default_value_t = 43_046_721)]
        max_patterns: u64,
        /// Worker threads
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Run the built-in identity and invariant suites
    Verify {
        /// Seed of the sampled move-property suite
        #[arg(long, default_value_t = 20121129)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

#[derive(Debug)]
enum CliError {
    Domain(imsets::Error),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<imsets::Error> for CliError {
    fn from(e: imsets::Error) -> CliError {
        CliError::Domain(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_file(path: &str) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))
}

fn emit(out: &OutArgs, text: &str) -> CliResult<()> {
    match &out.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Io(format!("{path}: {e}")))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

fn parse_triplet(args: &TripletArgs) -> CliResult<Triplet> {
    if let Some(path) = &args.triplet {
        let text = read_file(path)?;
        let v: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Domain(imsets::Error::Parse(format!("triplet JSON: {e}"))))?;
        let side = |key: &str| -> CliResult<Vec<String>> {
            match v.get(key) {
                None => Ok(Vec::new()),
                Some(arr) => serde_json::from_value(arr.clone()).map_err(|e| {
                    CliError::Domain(imsets::Error::Parse(format!("triplet {key}: {e}")))
                }),
            }
        };
        let (a, b, c) = (side("A")?, side("B")?, side("C")?);
        let expect = |names: &[String], prefix: char| -> CliResult<usize> {
            for (i, name) in names.iter().enumerate() {
                if *name != format!("{prefix}{}", i + 1) {
                    return Err(CliError::Domain(imsets::Error::Parse(format!(
                        "triplet sets use positional names: expected {prefix}{}, got {name:?}",
                        i + 1
                    ))));
                }
            }
            Ok(names.len())
        };
        let na = expect(&a, 'a')?;
        let nb = expect(&b, 'b')?;
        let nc = expect(&c, 'c')?;
        Ok(Triplet::by_sizes_with_c(na, nb, nc))
    } else {
        match (args.a, args.b) {
            (Some(na), Some(nb)) => Ok(Triplet::by_sizes_with_c(na, nb, args.c)),
            _ => Err(CliError::Domain(imsets::Error::Parse(
                "give --A and --B sizes, or --triplet".into(),
            ))),
        }
    }
}

fn single_grid(path: &str) -> CliResult<RepGrid> {
    let grids = grids_from_json(&read_file(path)?)?;
    match grids.len() {
        1 => Ok(grids.into_iter().next().unwrap()),
        n => Err(CliError::Domain(imsets::Error::Parse(format!(
            "expected one grid, file holds {n}"
        )))),
    }
}

fn build_pool(threads: usize) -> CliResult<()> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build_global()
        .map_err(|e| CliError::Io(format!("thread pool: {e}")))
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Imset { triplet, out } => {
            let t = parse_triplet(&triplet)?;
            let u = semi_elementary(t.min_ground(), &t);
            let text = match out.format {
                Format::Json => format!("{}\n", imset_to_json(&t, &u)),
                Format::Text => imset_to_text(&t, &u),
                Format::Csv => {
                    let mut s = String::from("subset,value\n");
                    for (set, v) in u.entries() {
                        let _ = writeln!(s, "{{{}}},{v}", set_names(&t, set).join(" "));
                    }
                    s
                }
            };
            emit(&out, &text)?;
        }
        Command::Family { triplet, out } => {
            let t = parse_triplet(&triplet)?;
            let family = ElementaryFamily::new(&t)?;
            let text = match out.format {
                Format::Json => {
                    let items: Vec<serde_json::Value> = family
                        .items()
                        .iter()
                        .map(|e| {
                            let (s, lv) = e.levels(&t);
                            serde_json::json!({
                                "a": element_name(&t, e.a),
                                "b": element_name(&t, e.b),
                                "gamma": set_names(&t, e.gamma),
                                "s": s,
                                "t": lv,
                            })
                        })
                        .collect();
                    format!("{}\n", serde_json::Value::Array(items))
                }
                Format::Csv => {
                    let mut s = String::from("a,b,gamma,s,t\n");
                    for e in family.items() {
                        let (sl, lv) = e.levels(&t);
                        let _ = writeln!(
                            s,
                            "{},{},{{{}}},{sl},{lv}",
                            element_name(&t, e.a),
                            element_name(&t, e.b),
                            set_names(&t, e.gamma).join(" ")
                        );
                    }
                    s
                }
                Format::Text => {
                    let mut s = String::new();
                    for e in family.items() {
                        let (sl, lv) = e.levels(&t);
                        let _ = writeln!(s, "{} (s={sl}, t={lv})", elementary_label(&t, e));
                    }
                    s
                }
            };
            emit(&out, &text)?;
        }
        Command::Matrix { triplet, out } => {
            let t = parse_triplet(&triplet)?;
            let m = ConfigMatrix::new(&t)?;
            let text = match out.format {
                Format::Json => {
                    let rows: Vec<String> = m
                        .rows()
                        .iter()
                        .map(|&s| set_names(&t, s).join(" "))
                        .collect();
                    let cols: Vec<String> =
                        m.cols().iter().map(|e| elementary_label(&t, e)).collect();
                    let data: Vec<Vec<i8>> = (0..m.rows().len())
                        .map(|i| (0..m.cols().len()).map(|j| m.entry(i, j)).collect())
                        .collect();
                    format!(
                        "{}\n",
                        serde_json::json!({ "rows": rows, "cols": cols, "data": data })
                    )
                }
                _ => matrix_to_csv(&m),
            };
            emit(&out, &text)?;
        }
        Command::Fiber {
            triplet,
            out,
            max_labeled,
            threads,
        } => {
            build_pool(threads)?;
            let t = parse_triplet(&triplet)?;
            let limits = Limits {
                max_labeled,
                ..Limits::default()
            };
            let fiber = fiber_of(&t, &limits)?;
            let text = match out.format {
                Format::Text => {
                    let mut s = String::new();
                    for g in &fiber {
                        let labels: Vec<String> = g
                            .cells()
                            .iter()
                            .map(|e| elementary_label(&t, e))
                            .collect();
                        let _ = writeln!(s, "{}", labels.join(" + "));
                    }
                    s
                }
                _ => {
                    let grids: Vec<serde_json::Value> = fiber.iter().map(grid_to_json).collect();
                    format!("{}\n", serde_json::Value::Array(grids))
                }
            };
            emit(&out, &text)?;
        }
        Command::Graph {
            triplet,
            out,
            max_labeled,
        } => {
            let t = parse_triplet(&triplet)?;
            let limits = Limits {
                max_labeled,
                ..Limits::default()
            };
            let graph = fiber_graph(fiber_of(&t, &limits)?)?;
            let report = serde_json::json!({
                "vertices": graph.vertices.len(),
                "edges": graph.edges.len(),
                "components": graph.connected_components(),
            });
            let text = match out.format {
                Format::Json => format!("{report}\n"),
                Format::Csv => format!(
                    "vertices,edges,components\n{},{},{}\n",
                    graph.vertices.len(),
                    graph.edges.len(),
                    graph.connected_components()
                ),
                Format::Text => format!(
                    "vertices: {}\nedges: {}\ncomponents: {}\n",
                    graph.vertices.len(),
                    graph.edges.len(),
                    graph.connected_components()
                ),
            };
            emit(&out, &text)?;
        }
        Command::Rifts { input, out } => {
            let grids = grids_from_json(&read_file(&input)?)?;
            let mut reports = Vec::new();
            let mut text = String::new();
            for g in &grids {
                if !g.validate() {
                    return Err(CliError::Domain(imsets::Error::InvalidGrid(
                        "input grid does not sum to its semi-elementary imset".into(),
                    )));
                }
                let p = detect_rifts(g);
                let decomposable = imsets::is_sigma_decomposable(g);
                let mut report = pattern_to_json(&p);
                report["sigma_decomposable"] = serde_json::Value::Bool(decomposable);
                if out.format == Format::Text {
                    for row in p.render_rows() {
                        let _ = writeln!(text, "{row}");
                    }
                    let _ = writeln!(
                        text,
                        "rifts: {}, sigma-decomposable: {decomposable}",
                        p.rifts().len()
                    );
                }
                reports.push(report);
            }
            match out.format {
                Format::Text => emit(&out, &text)?,
                _ => {
                    let v = if reports.len() == 1 {
                        reports.pop().unwrap()
                    } else {
                        serde_json::Value::Array(reports)
                    };
                    emit(&out, &format!("{v}\n"))?;
                }
            }
        }
        Command::Decompose { input, out } => {
            let g = single_grid(&input)?;
            if !g.validate() {
                return Err(CliError::Domain(imsets::Error::InvalidGrid(
                    "input grid does not sum to its semi-elementary imset".into(),
                )));
            }
            let (ok, tree) = sigma_decompose(&g);
            let text = match out.format {
                Format::Text => {
                    let mut s = format!("sigma-decomposable: {ok}\n");
                    if let Some(tree) = &tree {
                        render_tree(&mut s, g.triplet(), tree, 0);
                    }
                    s
                }
                _ => {
                    let tree_json = tree.as_ref().map(|t| tree_to_json(g.triplet(), t));
                    format!(
                        "{}\n",
                        serde_json::json!({
                            "sigma_decomposable": ok,
                            "tree": tree_json,
                        })
                    )
                }
            };
            emit(&out, &text)?;
        }
        Command::Normalize { input, out } => {
            let g = single_grid(&input)?;
            if !g.validate() {
                return Err(CliError::Domain(imsets::Error::InvalidGrid(
                    "input grid does not sum to its semi-elementary imset".into(),
                )));
            }
            let (normal, trace) = normalize_to_standard(&g)?;
            debug_assert!(detect_rifts(&normal).is_empty());
            let text = match out.format {
                Format::Text => {
                    let mut s = String::new();
                    for m in &trace {
                        let kind = match m.kind {
                            imsets::MoveKind::ASwap => "a-swap",
                            imsets::MoveKind::BSwap => "b-swap",
                        };
                        let _ = writeln!(s, "{kind} {} {}", m.anchor.0, m.anchor.1);
                    }
                    s
                }
                _ => format!("{}\n", trace_to_json(&trace)),
            };
            emit(&out, &text)?;
        }
        Command::Count {
            max,
            out,
            max_patterns,
            threads,
        } => {
            build_pool(threads)?;
            let limits = Limits {
                max_patterns,
                ..Limits::default()
            };
            let report = table_report(max[0], max[1], &limits)?;
            let text = match out.format {
                Format::Json => format!("{}\n", report.to_json()),
                _ => report.to_csv(),
            };
            emit(&out, &text)?;
        }
        Command::Verify { seed } => {
            let suites = imsets::checks::run_all(seed)?;
            let mut failed = false;
            for s in &suites {
                let status = if s.passed() { "pass" } else { "FAIL" };
                println!("{status} {} ({} cases)", s.name, s.cases);
                for f in s.failures.iter().take(5) {
                    eprintln!("  {f}");
                }
                failed |= !s.passed();
            }
            if failed {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn tree_to_json(t: &Triplet, tree: &DecompTree) -> serde_json::Value {
    match tree {
        DecompTree::Leaf(e) => serde_json::json!({
            "leaf": {
                "a": element_name(t, e.a),
                "b": element_name(t, e.b),
                "gamma": set_names(t, e.gamma),
            }
        }),
        DecompTree::Split {
            axis,
            index,
            subset,
            low,
            high,
        } => serde_json::json!({
            "axis": match axis { Axis::A => "A", Axis::B => "B" },
            "index": index,
            "subset": set_names(t, *subset),
            "low": tree_to_json(t, low),
            "high": tree_to_json(t, high),
        }),
    }
}

fn render_tree(buf: &mut String, t: &Triplet, tree: &DecompTree, depth: usize) {
    let pad = "  ".repeat(depth);
    match tree {
        DecompTree::Leaf(e) => {
            let _ = writeln!(buf, "{pad}{}", elementary_label(t, e));
        }
        DecompTree::Split {
            axis,
            index,
            subset,
            low,
            high,
        } => {
            let axis = match axis {
                Axis::A => "A",
                Axis::B => "B",
            };
            let _ = writeln!(
                buf,
                "{pad}split {axis} at {index} ({{{}}})",
                set_names(t, *subset).join(" ")
            );
            render_tree(buf, t, low, depth + 1);
            render_tree(buf, t, high, depth + 1);
        }
    }
}
