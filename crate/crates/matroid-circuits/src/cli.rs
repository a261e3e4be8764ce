//! Command-line interface. The binary is a thin shell over this module so
//! the commands stay testable in-process.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse errors.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::circuit::text as ctext;
use crate::circuit::{lower_to_relu, tropicalize};
use crate::matroid::tree::parse_tree;
use crate::matroid::{text as mtext, Backing, DecompositionTree, Guards};
use crate::rational::fmt_rat;
use crate::synth::{auto::auto_decompose, synth};
use crate::verify::suites::run_suite;

#[derive(Parser)]
#[command(
    name = "mcirc",
    about = "Subtraction-free circuits for matroid basis generating polynomials",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a circuit from a decomposition tree or a matroid file.
    Synth {
        /// Tree as an inline s-expression or a path to a tree file.
        #[arg(long)]
        tree: Option<String>,
        /// Matroid file (graph, binary, or bases format).
        #[arg(long)]
        matroid: Option<PathBuf>,
        /// Decompose the matroid exhaustively before synthesis (n ≤ 12).
        #[arg(long)]
        auto: bool,
        /// Raise the basis-enumeration guard (default 24). Loudly unsafe.
        #[arg(long)]
        max_n: Option<usize>,
        /// Write the circuit here; without it the circuit goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a (+,×,/) circuit file at a point file, exactly.
    Eval {
        circuit: PathBuf,
        point: PathBuf,
    },
    /// Evaluate a (max,+,−) circuit file at a point file, exactly.
    TropEval {
        circuit: PathBuf,
        point: PathBuf,
    },
    /// Lower a tropical circuit file to a ReLU network description.
    ReluExport {
        circuit: PathBuf,
        /// Treat the input as a rational circuit and tropicalize it first.
        #[arg(long)]
        from_rational: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite: core, tropical, matrices, structure, all.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
    /// Print gate statistics for a circuit file.
    Stats { circuit: PathBuf },
    /// Write fixture files: k3..k7, r10, r12, f7, c4-2sum, k4-dsum-k4,
    /// random-composite.
    Gen {
        name: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

/// Runs the CLI; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32, String> {
    match cmd {
        Command::Synth {
            tree,
            matroid,
            auto,
            max_n,
            out,
        } => cmd_synth(tree, matroid, auto, max_n, out),
        Command::Eval { circuit, point } => {
            let c = ctext::parse_circuit(&read(&circuit)?).map_err(|e| e.to_string())?;
            let p = ctext::parse_point(&read(&point)?).map_err(|e| e.to_string())?;
            let v = c.eval(&p).map_err(|e| e.to_string())?;
            println!("{}", fmt_rat(&v));
            Ok(0)
        }
        Command::TropEval { circuit, point } => {
            let c = ctext::parse_tropical(&read(&circuit)?).map_err(|e| e.to_string())?;
            let p = ctext::parse_point(&read(&point)?).map_err(|e| e.to_string())?;
            let v = c.eval(&p).map_err(|e| e.to_string())?;
            println!("{}", fmt_rat(&v));
            Ok(0)
        }
        Command::ReluExport {
            circuit,
            from_rational,
            out,
        } => {
            let text = read(&circuit)?;
            let tropical = if from_rational {
                tropicalize(&ctext::parse_circuit(&text).map_err(|e| e.to_string())?)
            } else {
                ctext::parse_tropical(&text).map_err(|e| e.to_string())?
            };
            let net = lower_to_relu(&tropical);
            let body = ctext::format_relu(&net);
            println!(
                "neurons={} bound={} weights_unit={}",
                net.size(),
                3 * tropical.size(),
                net.weights_in_unit_range()
            );
            match out {
                Some(p) => write(&p, &body)?,
                None => print!("{body}"),
            }
            Ok(0)
        }
        Command::Verify {
            suite,
            seed,
            trials,
        } => {
            let results = run_suite(&suite, seed, trials)?;
            let mut failed = 0usize;
            for r in &results {
                println!("{}", r.line());
                if !r.pass {
                    failed += 1;
                }
            }
            println!(
                "suite={suite} checks={} failed={failed} seed={seed} trials={trials}",
                results.len()
            );
            Ok(if failed == 0 { 0 } else { 1 })
        }
        Command::Stats { circuit } => cmd_stats(&circuit),
        Command::Gen {
            name,
            seed,
            out_dir,
        } => cmd_gen(&name, seed, &out_dir),
    }
}

fn cmd_synth(
    tree: Option<String>,
    matroid: Option<PathBuf>,
    auto: bool,
    max_n: Option<usize>,
    out: Option<PathBuf>,
) -> Result<i32, String> {
    let tree: DecompositionTree = match (tree, matroid) {
        (Some(t), None) => {
            let src = if t.trim_start().starts_with('(')
                || ["r10", "f7", "r12"].contains(&t.trim())
            {
                t
            } else {
                read(Path::new(&t))?
            };
            parse_tree(&src).map_err(|e| e.to_string())?
        }
        (None, Some(path)) => {
            let mut m = mtext::parse_matroid(&read(&path)?).map_err(|e| e.to_string())?;
            if let Some(limit) = max_n {
                eprintln!(
                    "warning: raising the basis-enumeration guard to {limit}; \
                     expect combinatorial blowup beyond the default"
                );
                let mut g = Guards::default();
                g.enumerate_max_n = limit;
                m = m.with_guards(g);
            }
            if auto {
                auto_decompose(&m).map_err(|e| e.to_string())?
            } else {
                match m.backing() {
                    Backing::Graph(g) => DecompositionTree::Leaf(
                        crate::matroid::tree::Leaf::Graphic(g.clone()),
                    ),
                    _ => DecompositionTree::Leaf(crate::matroid::tree::Leaf::Explicit(m)),
                }
            }
        }
        _ => return Err("pass exactly one of --tree or --matroid".into()),
    };
    let report = synth(&tree).map_err(|e| e.to_string())?;
    let body = ctext::format_circuit(&report.circuit);
    let mut lines = String::new();
    lines.push_str(&format!(
        "size={} bound={} n={}\n",
        report.size, report.bound, report.n
    ));
    for e in &report.ledger {
        lines.push_str(&format!("ledger rule={:?} gates={} {}\n", e.rule, e.gates, e.note));
    }
    match out {
        Some(p) => {
            write(&p, &body)?;
            print!("{lines}");
            println!("wrote {}", p.display());
        }
        None => {
            eprint!("{lines}");
            print!("{body}");
        }
    }
    Ok(0)
}

fn cmd_stats(path: &Path) -> Result<i32, String> {
    let text = read(path)?;
    if let Ok(c) = ctext::parse_circuit(&text) {
        let (mut add, mut mul, mut div) = (0, 0, 0);
        for g in c.gates() {
            match g {
                crate::circuit::Gate::Add(..) => add += 1,
                crate::circuit::Gate::Mul(..) => mul += 1,
                crate::circuit::Gate::Div(..) => div += 1,
                crate::circuit::Gate::Input(_) => {}
            }
        }
        println!(
            "kind=rational size={} inputs={} add={add} mul={mul} div={div} depth={}",
            c.size(),
            c.input_vars().len(),
            c.depth()
        );
        return Ok(0);
    }
    let t = ctext::parse_tropical(&text).map_err(|e| e.to_string())?;
    let (mut max, mut add, mut sub) = (0, 0, 0);
    for g in t.gates() {
        match g {
            crate::circuit::TropGate::Max(..) => max += 1,
            crate::circuit::TropGate::Add(..) => add += 1,
            crate::circuit::TropGate::Sub(..) => sub += 1,
            crate::circuit::TropGate::Input(_) => {}
        }
    }
    println!(
        "kind=tropical size={} inputs={} max={max} add={add} sub={sub}",
        t.size(),
        t.input_vars().len()
    );
    Ok(0)
}

fn cmd_gen(name: &str, seed: u64, dir: &Path) -> Result<i32, String> {
    std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
    let mut written: Vec<PathBuf> = Vec::new();
    let emit = |file: &str, body: String, written: &mut Vec<PathBuf>| -> Result<(), String> {
        let p = dir.join(file);
        write(&p, &body)?;
        written.push(p);
        Ok(())
    };
    match name {
        k if k.len() == 2 && k.starts_with('k') && k[1..].parse::<usize>().is_ok() => {
            let l: usize = k[1..].parse().unwrap();
            if !(3..=7).contains(&l) {
                return Err(format!("complete-graph fixtures cover k3..k7, not {name}"));
            }
            let g = crate::fixtures::k_graph(l);
            let m = g.to_matroid().map_err(|e| e.to_string())?;
            emit(&format!("{k}.mtx"), mtext::format_matroid(&m), &mut written)?;
            emit(
                &format!("{k}.tree"),
                format!("{}\n", crate::fixtures::k_graphic_tree(l).to_text()),
                &mut written,
            )?;
            emit(
                &format!("{k}-cographic.tree"),
                format!("{}\n", crate::fixtures::k_cographic_tree(l).to_text()),
                &mut written,
            )?;
        }
        "r10" => {
            let m = crate::fixtures::r10();
            emit("r10.mtx", mtext::format_matroid(&m), &mut written)?;
            emit("r10.tree", "r10\n".into(), &mut written)?;
        }
        "r12" => {
            let m = crate::fixtures::r12();
            emit("r12.mtx", mtext::format_matroid(&m), &mut written)?;
            emit("r12.tree", "r12\n".into(), &mut written)?;
        }
        "f7" => {
            let m = crate::fixtures::f7();
            emit("f7.mtx", mtext::format_matroid(&m), &mut written)?;
            emit("f7.tree", "f7\n".into(), &mut written)?;
        }
        "c4-2sum" => {
            emit(
                "c4-2sum.tree",
                format!("{}\n", crate::fixtures::c4_2sum_tree().to_text()),
                &mut written,
            )?;
        }
        "k4-dsum-k4" => {
            emit(
                "k4-dsum-k4.tree",
                format!("{}\n", crate::fixtures::k4_dsum_k4_tree().to_text()),
                &mut written,
            )?;
        }
        "random-composite" => {
            emit(
                &format!("composite-{seed}.tree"),
                format!("{}\n", crate::fixtures::random_composite(seed).to_text()),
                &mut written,
            )?;
        }
        other => return Err(format!("unknown fixture {other:?}")),
    }
    for p in &written {
        println!("wrote {}", p.display());
    }
    Ok(0)
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn write(path: &Path, body: &str) -> Result<(), String> {
    std::fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display()))
}
