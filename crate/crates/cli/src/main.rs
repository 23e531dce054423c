use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand};
use log::{info, warn};
use serde_json::json;

use hotnav::experiments::{
    degree_experiment, ensure_writable, flag_curve_experiment, learn_graph, psi_experiment,
    stability_experiment, stretch_experiment, write_csv, write_json, Family, GraphSpec,
    LearnSettings, DEFAULT_PAIR_BUDGET,
};
use hotnav::graph::io::{read_edge_list, write_edge_list_annotated};
use hotnav::graph::{component_count, largest_component};
use hotnav::learning::{AlphaChoice, ModelDocument, PairPlan};
use hotnav::navigation::Navigator;
use hotnav::{seed, Graph, VertexId};

#[derive(Parser)]
#[command(name = "hotnav", version, about = "Hotspot-learning graph navigation")]
struct Cli {
    /// Master seed; every random stream is derived from it.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output directory for data files.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Overwrite existing output files.
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random graph and write it as an edge list.
    Generate {
        #[command(flatten)]
        family: FamilyArgs,
        /// Output file (default: <out>/graph.txt).
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Learn rewards and hotspots for a graph and write the model JSON.
    Learn {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        learn: LearnArgs,
        /// Output file (default: <out>/model.json).
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Navigate from s to t with a learned model.
    Navigate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        s: VertexId,
        #[arg(long)]
        t: VertexId,
    },
    /// Stretch of PCA against the random-walk baselines.
    Bench {
        /// Comma-separated families: er, ba.
        #[arg(long, value_delimiter = ',', default_value = "er,ba")]
        families: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "100,200,400")]
        sizes: Vec<usize>,
        /// Edge probability for er.
        #[arg(long, default_value_t = 0.1)]
        p: f64,
        /// Edges per new vertex for ba.
        #[arg(long, default_value_t = 4)]
        m: usize,
        /// Graphs per (family, size).
        #[arg(long, default_value_t = 3)]
        runs: usize,
        /// Evaluation pair budget per graph.
        #[arg(long, default_value_t = DEFAULT_PAIR_BUDGET)]
        pairs: usize,
        /// Also compare against degree-based navigation.
        #[arg(long)]
        degree: bool,
        #[command(flatten)]
        learn: LearnArgs,
    },
    /// Flag curve and knee α.
    Flags {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        learn: LearnArgs,
    },
    /// Center-strategic ratio ψ as learning proceeds.
    Psi {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_delimiter = ',', default_value = "100,500,1000,5000")]
        checkpoints: Vec<u64>,
        /// Evaluation pair budget per checkpoint.
        #[arg(long, default_value_t = DEFAULT_PAIR_BUDGET)]
        pairs: usize,
        #[command(flatten)]
        learn: LearnArgs,
    },
    /// Hotspot-set overlap across independent learning runs.
    Stability {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = 4)]
        runs: usize,
        #[command(flatten)]
        learn: LearnArgs,
    },
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// Graph family: er or ba.
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    m: Option<usize>,
}

impl FamilyArgs {
    fn family(&self) -> Result<Family> {
        let param = match self.family.as_str() {
            "er" => self.p.context("--family er needs --p")?,
            "ba" => self.m.context("--family ba needs --m")? as f64,
            other => bail!("unknown family {other:?} (expected er or ba)"),
        };
        Ok(Family::parse(&self.family, param)?)
    }
}

/// A graph read from a file or generated from a family.
#[derive(Args)]
struct SourceArgs {
    /// Edge-list file; otherwise generate with --family/--n.
    #[arg(long, conflicts_with = "family")]
    graph: Option<PathBuf>,
    #[arg(long, requires = "n")]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Args)]
struct LearnArgs {
    /// Fix α instead of taking the knee of the flag curve.
    #[arg(long)]
    alpha: Option<usize>,
    /// Learning iterations over sampled pairs (default: all pairs on small
    /// graphs, 100 per vertex otherwise).
    #[arg(long)]
    learn_pairs: Option<usize>,
    /// Walk step cap as a multiple of n.
    #[arg(long)]
    walk_cap: Option<usize>,
}

impl LearnArgs {
    fn settings(&self) -> Result<LearnSettings> {
        let mut s = LearnSettings::default();
        if let Some(a) = self.alpha {
            s.alpha = AlphaChoice::Fixed(a);
        }
        if let Some(k) = self.learn_pairs {
            s.pairs = PairPlan::Sample(k);
        }
        if let Some(c) = self.walk_cap {
            ensure!(c > 0, "--walk-cap must be positive");
            s.config.limits.cap_factor = c;
        }
        Ok(s)
    }
}

struct Loaded {
    graph: Graph,
    /// Original id of each vertex of `graph`.
    original: Vec<VertexId>,
    /// Component id of each original vertex.
    mapping: Vec<Option<VertexId>>,
    describe: serde_json::Value,
}

fn load_graph(path: &Path) -> Result<Loaded> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let g = read_edge_list(BufReader::new(file))
        .with_context(|| format!("reading {}", path.display()))?;
    let components = component_count(&g);
    let (graph, mapping) = largest_component(&g);
    if components > 1 {
        warn!(
            "{} has {components} components; using the largest ({} of {} vertices)",
            path.display(),
            graph.vertex_count(),
            g.vertex_count()
        );
    }
    ensure!(
        graph.vertex_count() >= 2,
        "{} has no component with at least two vertices",
        path.display()
    );
    let mut original = vec![0; graph.vertex_count()];
    for (v, m) in mapping.iter().enumerate() {
        if let Some(c) = m {
            original[*c as usize] = v as VertexId;
        }
    }
    Ok(Loaded {
        describe: json!({ "file": path.display().to_string(), "n": g.vertex_count(), "components": components }),
        graph,
        original,
        mapping,
    })
}

impl SourceArgs {
    fn load(&self, master: u64) -> Result<Loaded> {
        if let Some(path) = &self.graph {
            return load_graph(path);
        }
        let fam = FamilyArgs {
            family: self.family.clone().context("give --graph or --family/--n")?,
            n: self.n.context("--family needs --n")?,
            p: self.p,
            m: self.m,
        };
        let family = fam.family()?;
        let graph_seed = seed::derive(master, "graph", 0);
        let graph = GraphSpec::new(family, fam.n, graph_seed).build()?;
        let original = (0..graph.vertex_count() as VertexId).collect();
        Ok(Loaded {
            describe: json!({ "family": family, "n": fam.n, "graph_seed": graph_seed }),
            mapping: Vec::new(),
            original,
            graph,
        })
    }
}

fn output_path(cli: &Cli, explicit: &Option<PathBuf>, default: &str) -> Result<PathBuf> {
    let path = match explicit {
        Some(p) => p.clone(),
        None => cli.out.join(default),
    };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    ensure_writable(&path, cli.force)?;
    Ok(path)
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(text.as_bytes())?;
    w.flush()?;
    Ok(())
}

fn echo_config(config: &serde_json::Value) {
    println!("config {config}");
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("NAVLOG", "warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = Cli::parse();
    if let Err(e) = run(&cli) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run(cli: &Cli) -> Result<()> {
    if let Some(k) = cli.threads {
        ensure!(k > 0, "--threads must be positive");
        rayon::ThreadPoolBuilder::new().num_threads(k).build_global()?;
    }
    match &cli.command {
        Command::Generate { family, output } => cmd_generate(cli, family, output),
        Command::Learn { graph, learn, output } => cmd_learn(cli, graph, learn, output),
        Command::Navigate { graph, model, s, t } => cmd_navigate(graph, model, *s, *t),
        Command::Bench {
            families,
            sizes,
            p,
            m,
            runs,
            pairs,
            degree,
            learn,
        } => {
            let fams = families
                .iter()
                .map(|f| match f.as_str() {
                    "er" => Ok(Family::parse("er", *p)?),
                    "ba" => Ok(Family::parse("ba", *m as f64)?),
                    other => bail!("unknown family {other:?} (expected er or ba)"),
                })
                .collect::<Result<Vec<_>>>()?;
            cmd_bench(cli, &fams, sizes, *runs, *pairs, *degree, learn)
        }
        Command::Flags { source, learn } => cmd_flags(cli, source, learn),
        Command::Psi {
            source,
            checkpoints,
            pairs,
            learn,
        } => cmd_psi(cli, source, checkpoints, *pairs, learn),
        Command::Stability { source, runs, learn } => cmd_stability(cli, source, *runs, learn),
    }
}

fn cmd_generate(cli: &Cli, args: &FamilyArgs, output: &Option<PathBuf>) -> Result<()> {
    let family = args.family()?;
    let g = family.generate(args.n, cli.seed)?;
    let path = output_path(cli, output, "graph.txt")?;
    let notes = vec![format!(
        "family={} n={} param={} seed={}",
        family.tag(),
        args.n,
        family.param(),
        cli.seed
    )];
    let w = BufWriter::new(File::create(&path)?);
    write_edge_list_annotated(&g, &notes, w)?;
    println!("n {}", g.vertex_count());
    println!("m {}", g.edge_count());
    println!("components {}", component_count(&g));
    info!("wrote {}", path.display());
    Ok(())
}

fn cmd_learn(cli: &Cli, graph: &Path, learn: &LearnArgs, output: &Option<PathBuf>) -> Result<()> {
    let loaded = load_graph(graph)?;
    let settings = learn.settings()?;
    let path = output_path(cli, output, "model.json")?;
    let learned = learn_graph(&loaded.graph, &settings, cli.seed)?;
    let doc = ModelDocument::new(&loaded.graph, &learned.model, &learned.table).with_seed(cli.seed);
    write_text(&path, &(doc.to_json()? + "\n"))?;
    if loaded.graph.vertex_count() != loaded.mapping.len() {
        println!(
            "note: learned on the largest component ({} of {} vertices)",
            loaded.graph.vertex_count(),
            loaded.mapping.len()
        );
    }
    println!("iterations {}", learned.model.iterations());
    println!("alpha {}", learned.table.alpha());
    println!("rank vertex flag");
    for (i, &v) in learned.table.ordering().iter().take(10).enumerate() {
        println!("{} {} {}", i + 1, loaded.original[v as usize], learned.model.flag(v));
    }
    info!("wrote {}", path.display());
    Ok(())
}

fn cmd_navigate(graph: &Path, model: &Path, s: VertexId, t: VertexId) -> Result<()> {
    let loaded = load_graph(graph)?;
    let text =
        fs::read_to_string(model).with_context(|| format!("reading {}", model.display()))?;
    let doc = ModelDocument::from_json(&text)
        .with_context(|| format!("parsing {}", model.display()))?;
    let (m, table) = doc.restore(&loaded.graph)?;
    let to_component = |v: VertexId| -> Result<VertexId> {
        match loaded.mapping.get(v as usize) {
            Some(Some(c)) => Ok(*c),
            Some(None) => bail!("vertex {v} is outside the largest component"),
            None => bail!("vertex {v} out of range (n = {})", loaded.mapping.len()),
        }
    };
    let nav = Navigator::new(&loaded.graph, &m, &table);
    let outcome = nav.navigate(to_component(s)?, to_component(t)?)?;
    let ids: Vec<VertexId> = outcome
        .path
        .vertices()
        .iter()
        .map(|&v| loaded.original[v as usize])
        .collect();
    let line: Vec<String> = ids.iter().map(|v| v.to_string()).collect();
    println!("{}", line.join(" "));
    let via = outcome
        .via
        .map(|(a, b)| json!([loaded.original[a as usize], loaded.original[b as usize]]))
        .unwrap_or(serde_json::Value::Null);
    println!(
        "{}",
        json!({ "s": s, "t": t, "len": outcome.path.len(), "mode": outcome.mode, "via": via })
    );
    Ok(())
}

fn cmd_bench(
    cli: &Cli,
    families: &[Family],
    sizes: &[usize],
    runs: usize,
    pairs: usize,
    degree: bool,
    learn: &LearnArgs,
) -> Result<()> {
    ensure!(runs > 0, "--runs must be positive");
    ensure!(!sizes.is_empty(), "--sizes is empty");
    let settings = learn.settings()?;
    let seeds: Vec<u64> = (0..runs as u64).map(|i| seed::derive(cli.seed, "bench-graph", i)).collect();
    let csv = output_path(cli, &None, "stretch.csv")?;
    let jsn = output_path(cli, &None, "stretch.json")?;
    let config = json!({
        "command": "bench",
        "seed": cli.seed,
        "graph_seeds": seeds,
        "families": families,
        "sizes": sizes,
        "pair_budget": pairs,
        "learning": settings,
        "degree": degree,
    });
    echo_config(&config);
    let mut reports = Vec::new();
    for &family in families {
        reports.extend(stretch_experiment(family, sizes, &seeds, pairs, &settings)?);
    }
    let rows: Vec<_> = reports.iter().map(|r| r.csv_row()).collect();
    write_csv(&csv, &rows, cli.force)?;
    write_json(&jsn, &config, &reports, cli.force)?;
    println!("family n seed beta gamma delta pairs fail_1w fail_2w fail_pca");
    for r in &reports {
        println!(
            "{} {} {} {:.4} {:.4} {:.4} {} {} {} {}",
            r.family, r.n, r.seed, r.beta, r.gamma, r.delta, r.pairs, r.fail_1w, r.fail_2w, r.fail_pca
        );
    }
    if degree {
        let dcsv = output_path(cli, &None, "degree.csv")?;
        let djsn = output_path(cli, &None, "degree.json")?;
        let mut rows = Vec::new();
        for &family in families {
            for &n in sizes {
                for &s in &seeds {
                    rows.push(degree_experiment(&GraphSpec::new(family, n, s), pairs, &settings)?);
                }
            }
        }
        write_csv(&dcsv, &rows, cli.force)?;
        write_json(&djsn, &config, &rows, cli.force)?;
        println!("family n seed pca_len degree_len pairs fail_pca fail_degree");
        for r in &rows {
            println!(
                "{} {} {} {:.4} {:.4} {} {} {}",
                r.family, r.n, r.seed, r.pca_len, r.degree_len, r.pairs, r.fail_pca, r.fail_degree
            );
        }
    }
    Ok(())
}

fn cmd_flags(cli: &Cli, source: &SourceArgs, learn: &LearnArgs) -> Result<()> {
    let loaded = source.load(cli.seed)?;
    let settings = learn.settings()?;
    let csv = output_path(cli, &None, "flags.csv")?;
    let jsn = output_path(cli, &None, "flags.json")?;
    let curve = flag_curve_experiment(&loaded.graph, &settings, cli.seed)?;
    let config = json!({
        "command": "flags",
        "seed": cli.seed,
        "graph": loaded.describe,
        "learning": settings,
        "iterations": curve.iterations,
        "alpha": curve.alpha,
    });
    echo_config(&config);
    let rows = curve.rows();
    write_csv(&csv, &rows, cli.force)?;
    write_json(&jsn, &config, &rows, cli.force)?;
    println!("alpha {}", curve.alpha);
    Ok(())
}

fn cmd_psi(
    cli: &Cli,
    source: &SourceArgs,
    checkpoints: &[u64],
    pairs: usize,
    learn: &LearnArgs,
) -> Result<()> {
    let loaded = source.load(cli.seed)?;
    let settings = learn.settings()?;
    let csv = output_path(cli, &None, "psi.csv")?;
    let jsn = output_path(cli, &None, "psi.json")?;
    let curve = psi_experiment(&loaded.graph, checkpoints, pairs, &settings, cli.seed)?;
    let config = json!({
        "command": "psi",
        "seed": cli.seed,
        "graph": loaded.describe,
        "checkpoints": checkpoints,
        "pair_budget": pairs,
        "learning": settings,
        "alphas": curve.alphas,
    });
    echo_config(&config);
    write_csv(&csv, &curve.checkpoints, cli.force)?;
    write_json(&jsn, &config, &curve.checkpoints, cli.force)?;
    println!("k psi pairs failures");
    for p in &curve.checkpoints {
        println!("{} {:.4} {} {}", p.k, p.psi, p.pairs, p.failures);
    }
    println!("monotone {}", curve.is_monotone());
    Ok(())
}

fn cmd_stability(cli: &Cli, source: &SourceArgs, runs: usize, learn: &LearnArgs) -> Result<()> {
    ensure!(runs >= 2, "--runs must be at least 2");
    let loaded = source.load(cli.seed)?;
    let settings = learn.settings()?;
    let csv = output_path(cli, &None, "stability.csv")?;
    let jsn = output_path(cli, &None, "stability.json")?;
    let seeds: Vec<u64> = (0..runs as u64).map(|i| seed::derive(cli.seed, "stability", i)).collect();
    let report = stability_experiment(&loaded.graph, &seeds, &settings)?;
    let config = json!({
        "command": "stability",
        "seed": cli.seed,
        "run_seeds": seeds,
        "graph": loaded.describe,
        "learning": settings,
        "alphas": report.alphas,
    });
    echo_config(&config);
    let rows = report.rows();
    write_csv(&csv, &rows, cli.force)?;
    write_json(&jsn, &config, &report, cli.force)?;
    println!("alphas {:?}", report.alphas);
    println!("mean_jaccard {:.4}", report.mean_off_diagonal());
    Ok(())
}
