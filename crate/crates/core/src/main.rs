use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use infpow::report::{
    parse_index_list, psi_matrix_report, run_verification, run_witness, seminorm_eval, Format, RunConfig,
    WitnessRequest, OUT_DIR_ENV,
};
use infpow::TruncationCtx;

#[derive(Parser)]
#[command(name = "infpow", version, about = "Exact checks for seminorm families on truncated power series")]
struct Cli {
    /// Flat `key = value` file applied before command-line flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_parser = ["json", "text"])]
    format: Option<String>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suites and emit a report.
    Verify(VerifyArgs),
    /// Tabulate two seminorm families along a sequence.
    Witness(WitnessArgs),
    /// Dump the matrix of Psi on words of length r over {0..n}.
    PsiMatrix {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        corrupt_psi: bool,
    },
    /// Evaluate one seminorm on a literal.
    SeminormEval {
        literal: String,
        /// tau_c, tau_i, p, pprime, q, qprime, qdel or qdelprime.
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        max_index: usize,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    max_index: Option<usize>,
    #[arg(long)]
    max_degree: Option<usize>,
    /// Comma-separated psi positions.
    #[arg(long)]
    i_values: Option<String>,
    #[arg(long)]
    k_max: Option<usize>,
    #[arg(long)]
    seq_max: Option<usize>,
    /// Comma-separated suites; an empty string selects none.
    #[arg(long)]
    suites: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    psi_samples: Option<usize>,
    #[arg(long)]
    strict: bool,
    /// Negative control: psi also sees X_0.
    #[arg(long)]
    corrupt_psi: bool,
}

#[derive(Args)]
struct WitnessArgs {
    /// `A:B` with A, B among tau_c, tau_i, tau_j, tau_<n>, q, qprime, qdel, qdelprime (optionally `_j`).
    #[arg(long)]
    pair: String,
    #[arg(long, default_value_t = 1)]
    i: usize,
    #[arg(long, default_value_t = 2)]
    j: usize,
    /// Xn_to_Xi, Xn_to_Xi_ext, graph_flat, or a literal containing {N}.
    #[arg(long)]
    seq: String,
    #[arg(long, default_value_t = 4)]
    k_max: usize,
    #[arg(long)]
    n_from: Option<usize>,
    #[arg(long, default_value_t = 6)]
    n_to: usize,
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
    #[arg(long)]
    strict: bool,
}

fn load_config(cli: &Cli, args: &VerifyArgs) -> infpow::Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| infpow::Error::InvalidArgument(format!("{}: {e}", path.display())))?;
        cfg.apply_file(&text)?;
    }
    macro_rules! take {
        ($($field:ident),*) => { $( if let Some(v) = args.$field { cfg.$field = v; } )* };
    }
    take!(max_index, max_degree, k_max, seq_max, seed, samples, psi_samples);
    if let Some(list) = &args.i_values {
        cfg.i_values = parse_index_list("i_values", list)?;
    }
    if let Some(list) = &args.suites {
        cfg.set("suites", list)?;
    }
    if let Some(f) = &cli.format {
        cfg.format = f.parse()?;
    }
    cfg.strict |= args.strict;
    cfg.corrupt_psi |= args.corrupt_psi;
    cfg.validate()?;
    Ok(cfg)
}

fn emit(cli: &Cli, default_name: &str, format: Format, body: &str) -> std::io::Result<()> {
    let ext = match format {
        Format::Json => "json",
        Format::Text => "txt",
    };
    let target = cli.out.clone().or_else(|| {
        std::env::var_os(OUT_DIR_ENV).map(|dir| PathBuf::from(dir).join(format!("{default_name}.{ext}")))
    });
    match target {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(&path, body)?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{body}"),
    }
    Ok(())
}

fn run(cli: &Cli) -> infpow::Result<bool> {
    let format = |default: Format| -> infpow::Result<Format> {
        cli.format.as_deref().map_or(Ok(default), str::parse)
    };
    let io = |e: std::io::Error| infpow::Error::InvalidArgument(format!("writing output: {e}"));
    match &cli.command {
        Command::Verify(args) => {
            let cfg = load_config(cli, args)?;
            let report = run_verification(&cfg)?;
            emit(cli, "verify", cfg.format, &report.render(cfg.format)).map_err(io)?;
            if !report.all_passed() {
                eprintln!("{} of {} checks failed", report.summary.failed, report.summary.total);
            }
            Ok(report.all_passed())
        }
        Command::Witness(a) => {
            let req = WitnessRequest {
                pair: a.pair.clone(),
                i: a.i,
                j: a.j,
                sequence: a.seq.clone(),
                k_max: a.k_max,
                n_from: a.n_from,
                n_to: a.n_to,
                max_degree: a.max_degree,
                strict: a.strict,
            };
            let table = run_witness(&req)?;
            let fmt = format(Format::Text)?;
            let body = match fmt {
                Format::Json => serde_json::to_string_pretty(&table).expect("table serializes") + "\n",
                Format::Text => table.to_text(),
            };
            emit(cli, "witness", fmt, &body).map_err(io)?;
            Ok(true)
        }
        Command::PsiMatrix { r, n, i, corrupt_psi } => {
            let fmt = format(Format::Text)?;
            let body = psi_matrix_report(*r, *n, *i, *corrupt_psi, fmt)?;
            emit(cli, "psi-matrix", fmt, &body).map_err(io)?;
            Ok(true)
        }
        Command::SeminormEval {
            literal,
            family,
            i,
            n,
            m,
            k,
            max_index,
            max_degree,
            strict,
        } => {
            let ctx = TruncationCtx::new(*max_index, *max_degree);
            let v = seminorm_eval(literal, family, ctx, *i, *n, *m, *k, *strict)?;
            let fmt = format(Format::Text)?;
            let body = match fmt {
                Format::Json => {
                    let obj = serde_json::json!({
                        "literal": literal,
                        "family": family,
                        "i": i, "n": n, "m": m, "k": k,
                        "value": v.to_string(),
                    });
                    serde_json::to_string_pretty(&obj).expect("value serializes") + "\n"
                }
                Format::Text => format!("{v}\n"),
            };
            emit(cli, "seminorm", fmt, &body).map_err(io)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
