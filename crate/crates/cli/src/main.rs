//! Command-line front end: tree predicates, exact solvers, gadget
//! reductions, the verification harness, and seeded instance generators.
//!
//! Exit codes: 0 for yes/success, 1 for no, 2 for usage or format errors,
//! 3 when a brute-force cap is exceeded. All randomness flows from `--seed`,
//! and identical invocations produce byte-identical output.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mastkit::agreement::{is_agreement_subtree, is_compatible_with};
use mastkit::generate::{random_collection, random_graph, random_graph_any_density, rng_from_seed};
use mastkit::graph::{
    max_independent_set, Graph, GraphError, PartitionedInstance, DEFAULT_IS_CAP,
};
use mastkit::reductions::{
    is_to_pis1, pis1_to_ast, pis2_to_ct, pis_pad, verify_reduction, write_gadget, ReduceError,
    VerifyMode, DEFAULT_VERIFY_CAP,
};
use mastkit::solvers::{
    mast_bruteforce, mast_fpt, mct_bruteforce, mct_fpt, SolveError, DEFAULT_MAST_CAP,
    DEFAULT_MCT_CAP,
};
use mastkit::tree::{Label, PhyloTree, TreeCollection, TreeError};

#[derive(Parser)]
#[command(name = "mastkit", version, about = "Agreement subtree and compatible tree toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tree predicates over inline expressions and collection files.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Exact solvers for MAST, MCT and Independent Set.
    #[command(subcommand)]
    Solve(SolveCommand),
    /// Gadget reductions between instance formats.
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// End-to-end reduction verification on a source graph.
    Verify(VerifyArgs),
    /// Seeded random instance generators.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Print the restriction of a tree to a label subset.
    Restrict {
        /// Tree expression, e.g. "((a,b),c);", or @path to read one from a file.
        tree: String,
        /// Comma-separated leaf labels.
        #[arg(long)]
        labels: String,
    },
    /// Exit 0 when the two trees are equal as unordered trees.
    Equal { tree: String, other: String },
    /// Exit 0 when the first tree refines the second.
    Refines { tree: String, other: String },
    /// Exit 0 when the tree is an agreement subtree of the collection.
    Agreement {
        tree: String,
        /// Collection file: one tree per line, optional gadget header.
        #[arg(long)]
        input: PathBuf,
    },
    /// Exit 0 when the tree is compatible with the collection.
    Compatible {
        tree: String,
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum SolveCommand {
    /// Maximum agreement subtree of a collection file.
    Mast(SolveTreeArgs),
    /// Maximum compatible tree of a collection file.
    Mct(SolveTreeArgs),
    /// Maximum independent set of a graph file.
    Is {
        #[arg(long)]
        input: PathBuf,
        /// Vertex cap for the exact search.
        #[arg(long)]
        cap: Option<usize>,
    },
}

#[derive(Args)]
struct SolveTreeArgs {
    #[arg(long)]
    input: PathBuf,
    /// Leaf-count cap for the subset scan.
    #[arg(long)]
    cap: Option<usize>,
    /// Switch to the leaf-deletion branching solver with this budget;
    /// exits 1 when no witness survives within the budget.
    #[arg(long)]
    fpt: Option<usize>,
}

#[derive(Subcommand)]
enum ReduceCommand {
    /// Independent Set to a multiplicity-1 partitioned instance.
    IsPis1 {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        graph: PathBuf,
    },
    /// Pad a partitioned instance: multiplicity p to p+1.
    PisPad {
        #[arg(long)]
        input: PathBuf,
    },
    /// Multiplicity-1 instance to an agreement-subtree gadget collection.
    Pis1Ast {
        #[arg(long)]
        input: PathBuf,
        /// Also write the reduction report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Multiplicity-2 instance to a compatible-tree gadget collection.
    Pis2Ct {
        #[arg(long)]
        input: PathBuf,
        /// Pin the collection's maximum degree with an extra control tree.
        #[arg(long)]
        repair: bool,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum)]
    mode: Mode,
    /// Additionally verify this many random graphs with the same vertex
    /// count as the input.
    #[arg(long, default_value_t = 0)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Random graph in the line-oriented graph format.
    Graph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random collection of k trees on n shared leaves.
    Trees {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Mast,
    Mct,
}

/// Everything the subcommands can fail with, classified for the exit code.
enum CliError {
    /// Usage, format or I/O problems: exit 2.
    Input(String),
    /// A brute-force cap refused the instance: exit 3.
    Cap(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Cap(m) => f.write_str(m),
        }
    }
}

impl From<TreeError> for CliError {
    fn from(e: TreeError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        if e.is_cap_exceeded() {
            CliError::Cap(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        if e.is_cap_exceeded() {
            CliError::Cap(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

impl From<ReduceError> for CliError {
    fn from(e: ReduceError) -> Self {
        if e.is_cap_exceeded() {
            CliError::Cap(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::Input(_) => ExitCode::from(2),
                CliError::Cap(_) => ExitCode::from(3),
            }
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Check(c) => run_check(c),
        Command::Solve(c) => run_solve(c),
        Command::Reduce(c) => run_reduce(c),
        Command::Verify(args) => run_verify(args),
        Command::Gen(c) => run_gen(c),
    }
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Tree arguments are inline expressions; `@path` reads the expression from
/// a file instead.
fn parse_tree_arg(text: &str) -> Result<PhyloTree, CliError> {
    let expression = match text.strip_prefix('@') {
        Some(path) => read(&PathBuf::from(path))?,
        None => text.to_string(),
    };
    Ok(PhyloTree::from_str(expression.trim())?)
}

fn load_collection(path: &PathBuf) -> Result<TreeCollection, CliError> {
    Ok(TreeCollection::from_text(&read(path)?)?)
}

fn decision(answer: bool) -> ExitCode {
    if answer {
        println!("yes");
        ExitCode::SUCCESS
    } else {
        println!("no");
        ExitCode::from(1)
    }
}

fn run_check(command: CheckCommand) -> Result<ExitCode, CliError> {
    match command {
        CheckCommand::Restrict { tree, labels } => {
            let tree = parse_tree_arg(&tree)?;
            let mut set = BTreeSet::new();
            for token in labels.split(',').filter(|t| !t.is_empty()) {
                set.insert(Label::new(token)?);
            }
            match tree.restrict(&set)? {
                Some(restricted) => println!("{restricted}"),
                None => println!("empty"),
            }
            Ok(ExitCode::SUCCESS)
        }
        CheckCommand::Equal { tree, other } => {
            let a = parse_tree_arg(&tree)?;
            let b = parse_tree_arg(&other)?;
            Ok(decision(a == b))
        }
        CheckCommand::Refines { tree, other } => {
            let a = parse_tree_arg(&tree)?;
            let b = parse_tree_arg(&other)?;
            Ok(decision(a.refines(&b)?))
        }
        CheckCommand::Agreement { tree, input } => {
            let tree = parse_tree_arg(&tree)?;
            let coll = load_collection(&input)?;
            Ok(decision(is_agreement_subtree(&tree, &coll)?))
        }
        CheckCommand::Compatible { tree, input } => {
            let tree = parse_tree_arg(&tree)?;
            let coll = load_collection(&input)?;
            Ok(decision(is_compatible_with(&tree, &coll)?))
        }
    }
}

fn run_solve(command: SolveCommand) -> Result<ExitCode, CliError> {
    match command {
        SolveCommand::Mast(args) => {
            let coll = load_collection(&args.input)?;
            match args.fpt {
                Some(p) => match mast_fpt(&coll, p) {
                    Some(witness) => {
                        println!("size {}", witness.size());
                        println!("{witness}");
                        Ok(ExitCode::SUCCESS)
                    }
                    None => {
                        println!("none");
                        Ok(ExitCode::from(1))
                    }
                },
                None => {
                    let (size, witness) =
                        mast_bruteforce(&coll, args.cap.unwrap_or(DEFAULT_MAST_CAP))?;
                    println!("size {size}");
                    println!("{witness}");
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        SolveCommand::Mct(args) => {
            let coll = load_collection(&args.input)?;
            match args.fpt {
                Some(p) => match mct_fpt(&coll, p) {
                    Some(witness) => {
                        println!("size {}", witness.size());
                        println!("{witness}");
                        Ok(ExitCode::SUCCESS)
                    }
                    None => {
                        println!("none");
                        Ok(ExitCode::from(1))
                    }
                },
                None => {
                    let (size, witness) =
                        mct_bruteforce(&coll, args.cap.unwrap_or(DEFAULT_MCT_CAP))?;
                    println!("size {size}");
                    println!("{witness}");
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        SolveCommand::Is { input, cap } => {
            let graph = Graph::from_text(&read(&input)?)?;
            let (size, witness) = max_independent_set(&graph, cap.unwrap_or(DEFAULT_IS_CAP))?;
            println!("size {size}");
            let rendered: Vec<String> = witness.iter().map(|v| v.to_string()).collect();
            println!("witness {}", rendered.join(" "));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_reduce(command: ReduceCommand) -> Result<ExitCode, CliError> {
    match command {
        ReduceCommand::IsPis1 { k, graph } => {
            let graph = Graph::from_text(&read(&graph)?)?;
            let inst = is_to_pis1(k, &graph)?;
            print!("{}", inst.to_text());
            Ok(ExitCode::SUCCESS)
        }
        ReduceCommand::PisPad { input } => {
            let inst = PartitionedInstance::from_text(&read(&input)?)?;
            print!("{}", pis_pad(&inst).to_text());
            Ok(ExitCode::SUCCESS)
        }
        ReduceCommand::Pis1Ast { input, report } => {
            let inst = PartitionedInstance::from_text(&read(&input)?)?;
            let (q, coll, rep) = pis1_to_ast(&inst)?;
            print!("{}", write_gadget(q, rep.k, &coll));
            write_report(report, &rep.to_text())?;
            Ok(ExitCode::SUCCESS)
        }
        ReduceCommand::Pis2Ct {
            input,
            repair,
            report,
        } => {
            let inst = PartitionedInstance::from_text(&read(&input)?)?;
            let (q, coll, rep) = pis2_to_ct(&inst, repair)?;
            print!("{}", write_gadget(q, rep.k, &coll));
            write_report(report, &rep.to_text())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn write_report(path: Option<PathBuf>, text: &str) -> Result<(), CliError> {
    if let Some(path) = path {
        fs::write(&path, text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode, CliError> {
    let graph = Graph::from_text(&read(&args.graph)?)?;
    let mode = match args.mode {
        Mode::Mast => VerifyMode::Mast,
        Mode::Mct => VerifyMode::Mct,
    };
    let record = verify_reduction(args.k, &graph, mode, DEFAULT_VERIFY_CAP)?;
    print!("{}", record.to_text());
    let mut all_equivalent = record.equivalent;
    let mut verified = 1usize;

    if args.samples > 0 {
        let n = graph.vertex_count();
        let mut rng = rng_from_seed(args.seed);
        for i in 0..args.samples {
            let sample = random_graph_any_density(&mut rng, n);
            let rec = verify_reduction(args.k, &sample, mode, DEFAULT_VERIFY_CAP)?;
            println!(
                "sample={} n={} m={} is={} gadget={} equivalent={}",
                i,
                n,
                sample.edge_count(),
                rec.is_answer,
                rec.gadget_answer,
                rec.equivalent
            );
            all_equivalent &= rec.equivalent;
            verified += 1;
        }
    }
    println!(
        "verified {}/{} equivalent",
        if all_equivalent { verified } else { 0 },
        verified
    );
    Ok(if all_equivalent {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run_gen(command: GenCommand) -> Result<ExitCode, CliError> {
    match command {
        GenCommand::Graph { n, m, seed } => {
            let graph = random_graph(&mut rng_from_seed(seed), n, m)?;
            print!("{}", graph.to_text());
            Ok(ExitCode::SUCCESS)
        }
        GenCommand::Trees { n, k, seed } => {
            if n == 0 || k == 0 {
                return Err(CliError::Input(
                    "need at least one leaf and one tree".to_string(),
                ));
            }
            let coll = random_collection(&mut rng_from_seed(seed), n, k);
            print!("{}", coll.to_text());
            Ok(ExitCode::SUCCESS)
        }
    }
}
