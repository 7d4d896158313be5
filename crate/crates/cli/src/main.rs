use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use galcov_analysis::{abelianize, smith_normal_form};
use galcov_cli::cache::{atomic_write, Cache};
use galcov_cli::pipeline::{galois, ptilde_projective, FULL_TWIST_MAX_N};
use galcov_cli::{emit_report, run_pipeline, CliError, Format, RunConfig};
use galcov_core::braid::{braids_equal, full_twist};
use galcov_core::degeneration::IncidenceComplex;
use galcov_core::monodromy::{census, factorization, factorization_product, FactorOrder};
use galcov_core::perm_monodromy::psi_eval;
use galcov_core::presentation::{
    add_projective_relation, braid_presentation, parse_presentation, quotient_squares, schema_presentation,
    write_presentation, GroupPresentation,
};
use galcov_core::schreier::{affine_galois_presentation, kernel_presentation, reduced_kernel_presentation};
use galcov_core::FreeWord;

#[derive(Parser)]
#[command(name = "galcov", version, about = "Fundamental group of the Galois cover of CP1 x T")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Sweep,
    Key,
}

#[derive(Subcommand)]
enum Command {
    /// Incidence complex of the degeneration.
    Degenerate {
        #[command(flatten)]
        common: Common,
    },
    /// Regenerated braid monodromy factorization.
    Monodromy {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Order::Sweep)]
        order: Order,
    },
    /// Presentation of the curve complement group.
    Presentation {
        #[command(flatten)]
        common: Common,
        /// Quotient by the squares of the generators.
        #[arg(long)]
        squares: bool,
        #[arg(long)]
        projective: bool,
        #[arg(long, default_value_t = 0)]
        depth: usize,
        /// Build from the monodromy factors instead of the relation schemas.
        #[arg(long)]
        braid: bool,
    },
    /// Image of a word under the sheet monodromy.
    Psi {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        word: String,
    },
    /// Presentation of the kernel of the sheet monodromy.
    Kernel {
        #[command(flatten)]
        common: Common,
        /// Raw Reidemeister-Schreier output.
        #[arg(long, conflicts_with = "reduced")]
        raw: bool,
        /// Raw output rewritten in the A and X generators.
        #[arg(long)]
        reduced: bool,
        #[arg(long)]
        projective: bool,
        #[arg(long, default_value_t = 0)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        window: usize,
    },
    /// Smith normal form of an abelianized presentation.
    Abelianize {
        #[command(flatten)]
        common: Common,
        /// Presentation file; defaults to the Galois presentation.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        window: usize,
    },
    /// Run the full certificate.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long = "mod", default_value_t = 2)]
        modulus: u32,
        #[arg(long, default_value_t = 0)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        window: usize,
        #[arg(long, default_value_t = 4_000_000)]
        max_cosets: usize,
    },
}

fn emit(common: &Common, bytes: &[u8]) -> Result<(), CliError> {
    match &common.out {
        Some(path) => atomic_write(path, bytes),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes).map_err(|source| CliError::Io { path: "<stdout>".into(), source })
        }
    }
}

fn config(common: &Common) -> RunConfig {
    RunConfig { format: common.format, out_path: common.out.clone(), ..RunConfig::new(common.n, 2) }
}

fn complex(n: usize) -> Result<IncidenceComplex, CliError> {
    if n < 2 {
        return Err(CliError::Config(format!("--n must be at least 2, got {n}")));
    }
    Ok(IncidenceComplex::build(n)?)
}

fn pretty(v: &serde_json::Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s.into_bytes()
}

fn emit_presentation(common: &Common, p: &GroupPresentation) -> Result<(), CliError> {
    match common.format {
        Format::Json => emit(common, &pretty(&serde_json::to_value(p).unwrap_or_default())),
        Format::Text => emit(common, write_presentation(p).as_bytes()),
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Degenerate { common } => {
            let c = complex(common.n)?;
            let bytes = match common.format {
                Format::Json => pretty(&serde_json::to_value(&c).unwrap_or_default()),
                Format::Text => {
                    let mut s = format!("n = {}\n", c.n);
                    for l in &c.lines {
                        s += &format!(
                            "line {}: {:?} {:?} planes {:?}\n",
                            l.index, l.endpoints, l.class, l.adjacent_planes
                        );
                    }
                    for t in &c.three_points {
                        s += &format!(
                            "V{}: vertex {} lines {} {}\n",
                            t.index, t.vertex, t.vertical_line, t.diagonal_line
                        );
                    }
                    s += &format!("incidental pairs: {:?}\n", c.incidental_pairs);
                    s.into_bytes()
                }
            };
            emit(&common, &bytes)?;
        }
        Command::Monodromy { common, order } => {
            let c = complex(common.n)?;
            let order = match order {
                Order::Sweep => FactorOrder::Sweep,
                Order::Key => FactorOrder::Key,
            };
            let factors = factorization(&c, order);
            let cen = census(&factors);
            let product = factorization_product(&factors, 4 * c.n);
            // Garside comparison gets slow past 16 strands
            let is_twist = (c.n <= FULL_TWIST_MAX_N).then(|| braids_equal(&product, &full_twist(4 * c.n)));
            let bytes = match common.format {
                Format::Json => pretty(&json!({
                    "n": c.n,
                    "order": order,
                    "factors": factors.iter().map(|f| json!({
                        "kind": f.kind,
                        "source": f.source.to_string(),
                        "punctures": [f.punctures.0.to_string(), f.punctures.1.to_string()],
                        "braid": f.braid().word().to_string(),
                        "exponent": f.exponent,
                    })).collect::<Vec<_>>(),
                    "census": cen,
                    "product_is_full_twist": is_twist,
                })),
                Format::Text => {
                    let mut s = String::new();
                    for f in &factors {
                        s +=
                            &format!("{:?} {} {}-{} ^{}\n", f.kind, f.source, f.punctures.0, f.punctures.1, f.exponent);
                    }
                    s += &format!(
                        "branch {} cusp {} node {} exponent sum {}\nproduct is full twist: {}\n",
                        cen.branch,
                        cen.cusp,
                        cen.node,
                        cen.exponent_sum,
                        is_twist.map_or("not checked".into(), |b| b.to_string())
                    );
                    s.into_bytes()
                }
            };
            emit(&common, &bytes)?;
        }
        Command::Presentation { common, squares, projective, depth, braid } => {
            let c = complex(common.n)?;
            let mut p = if braid { braid_presentation(&c) } else { schema_presentation(&c, depth) };
            if squares {
                p = quotient_squares(&p);
            }
            if projective {
                p = add_projective_relation(&p);
            }
            emit_presentation(&common, &p)?;
        }
        Command::Psi { n, word } => {
            if n < 2 {
                return Err(CliError::Config(format!("--n must be at least 2, got {n}")));
            }
            let w: FreeWord = word.parse()?;
            println!("{}", psi_eval(&w, n)?);
        }
        Command::Kernel { common, raw, reduced, projective, depth, window } => {
            let mut cfg = config(&common);
            cfg.depth = depth;
            let cache = Cache::new(&cfg.cache_dir);
            let c = complex(common.n)?;
            let p = if raw || reduced {
                let ptilde = if projective {
                    ptilde_projective(&cfg, &cache)?
                } else {
                    galcov_core::presentation::pi_tilde(&c, depth)
                };
                let k = kernel_presentation(&ptilde, common.n, 40_320)?;
                if reduced {
                    reduced_kernel_presentation(&k)?
                } else {
                    k
                }
            } else if projective {
                cfg.window = window;
                galois(&cfg, &cache)?
            } else {
                affine_galois_presentation(c.n, window)
            };
            emit_presentation(&common, &p)?;
        }
        Command::Abelianize { common, input, window } => {
            let p = match &input {
                Some(path) => {
                    let text =
                        std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
                    parse_presentation(&text)?
                }
                None => {
                    complex(common.n)?;
                    let cfg = RunConfig { window, ..config(&common) };
                    galois(&cfg, &Cache::new(&cfg.cache_dir))?
                }
            };
            let snf = smith_normal_form(&abelianize(&p));
            let bytes = match common.format {
                Format::Json => pretty(&json!({
                    "schema": 1,
                    "presentation": p.name,
                    "generators": p.generators.len(),
                    "relators": p.relators.len(),
                    "free_rank": snf.free_rank,
                    "torsion": snf.torsion().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                })),
                Format::Text => {
                    let t: Vec<String> = snf.torsion().iter().map(|d| format!("Z/{d}")).collect();
                    format!(
                        "{}: Z^{}{}\n",
                        p.name,
                        snf.free_rank,
                        if t.is_empty() { String::new() } else { format!(" + {}", t.join(" + ")) }
                    )
                    .into_bytes()
                }
            };
            emit(&common, &bytes)?;
        }
        Command::Verify { common, modulus, depth, window, max_cosets } => {
            let cfg = RunConfig { modulus, depth, window, max_cosets, ..config(&common) };
            let report = run_pipeline(&cfg)?;
            emit(&common, &emit_report(&report, common.format))?;
            if let Some(why) = &report.aborted {
                eprintln!("galcov: {why}");
            } else if !report.pass {
                eprintln!("galcov: failed checks: {}", report.failed().join(", "));
            }
            return Ok(report.exit_code());
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("GALCOV_LOG", "warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("galcov: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
