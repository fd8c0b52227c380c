//! zeta-edge: CLI over the verification toolkit.
//!
//! Every subcommand prints CSV by default (`--output json` switches to
//! JSON). The `audit` subcommand runs the registered battery and exits
//! nonzero iff any pass-semantics record fails.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use zeta_edge_core::audit::{emit_report, AuditReport, BoundAuditRecord, ReportFormat};
use zeta_edge_core::battery::{self, constants_block, AuditConfig};
use zeta_edge_core::engine::expsum::{exp_sum, korobov_bound_audit, vdc_bound_audit};
use zeta_edge_core::engine::poly::{mollifier, mollifier_divisor_majorant};
use zeta_edge_core::engine::zeta::{growth_bound_audit, zeta_reference};
use zeta_edge_core::engine::ComplexPoint;
use zeta_edge_core::regions::{omega_numeric_logx, schedule, ZeroFreeRegion, A0, T_MIN_DEFAULT};
use zeta_edge_core::sieve::{
    envelope_compare, sieve_summary, zero_sum_bound, zero_sum_bound_split, LI_CONVENTION,
};
use zeta_edge_core::weights::{build_weights, WeightConfig};
use zeta_edge_core::zerolab::{
    box_circle_cover_check, build_box_grid, count_n, disk_count, ingest_zeros,
};

#[derive(Parser)]
#[command(
    name = "zeta-edge",
    version,
    about = "zero-density / prime-counting verification toolkit"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format for results.
    #[arg(long, global = true, value_enum, default_value_t = Output::Csv)]
    output: Output,
    /// Worker threads for grid audits (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Seed for the seeded choices (box representatives, battery datasets).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// High precision re-derives the constants block at 60 digits.
    #[arg(long, global = true, value_enum, default_value_t = Precision::Standard)]
    precision: Precision,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Precision {
    Standard,
    High,
}

#[derive(Subcommand)]
enum Command {
    /// Minimize nu(t) log x + log t and compare with the closed form.
    Omega {
        #[arg(long = "log-x")]
        log_x: f64,
        #[arg(long, default_value_t = A0)]
        a0: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long = "t-min", default_value_t = T_MIN_DEFAULT)]
        t_min: f64,
    },
    /// Evaluate the explicit parameter schedule and its constraint flags.
    Schedule {
        #[arg(long = "A")]
        a: f64,
        #[arg(long = "D")]
        d: f64,
    },
    /// Build weight tables; optionally run one of the weight audits.
    Weights {
        #[arg(long = "U")]
        u: usize,
        #[arg(long = "V")]
        v: usize,
        #[arg(long = "W")]
        w: usize,
        #[arg(long)]
        limit: usize,
        #[arg(long, value_enum)]
        audit: Option<WeightsAudit>,
    },
    /// Maximal dyadic exponential sum S(N, t), with optional bound audits.
    Expsum {
        #[arg(long = "N")]
        n: u64,
        #[arg(long)]
        t: f64,
        #[arg(long, value_enum)]
        audit: Option<ExpsumAudit>,
    },
    /// Evaluate zeta(sigma + it); optionally audit the explicit growth bound.
    Zeta {
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        t: f64,
        #[arg(long, value_enum)]
        audit: Option<ZetaAudit>,
    },
    /// Evaluate the mollifier M(s) over a weight configuration.
    Mollifier {
        #[arg(long = "U")]
        u: usize,
        #[arg(long = "V")]
        v: usize,
        #[arg(long = "W")]
        w: usize,
        #[arg(long = "Y")]
        y: usize,
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        t: f64,
    },
    /// Segmented-sieve summary of psi, theta, pi and the error ratios.
    Sieve {
        #[arg(long)]
        x: u64,
        /// Shorthand for --output json.
        #[arg(long)]
        json: bool,
    },
    /// Prime-counting error comparisons.
    Pnt {
        #[command(subcommand)]
        sub: PntCommand,
    },
    /// Zero-dataset operations.
    Zeros {
        #[command(subcommand)]
        sub: ZerosCommand,
    },
    /// Sum of reciprocal lcms up to x and its ratio to log^3 x.
    Lcm {
        #[arg(long)]
        x: u64,
    },
    /// Run the registered audit battery.
    Audit {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WeightsAudit {
    ThetaLambda,
    Ratios,
    Convolution,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExpsumAudit {
    Korobov,
    Vdc,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ZetaAudit {
    Growth,
}

#[derive(Subcommand)]
enum PntCommand {
    /// Delta(x) against the envelope exp(55 A0) exp(-omega(x)).
    Envelope {
        #[arg(long)]
        x: u64,
    },
    /// Truncated zero-sum bound at (x, T) over an ordinate file.
    Zerosum {
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        x: f64,
        #[arg(long = "T")]
        t: f64,
        /// Also report the sum restricted to gamma > H.
        #[arg(long = "H")]
        h: Option<f64>,
    },
}

#[derive(Subcommand)]
enum ZerosCommand {
    /// N(sigma, T) over an ordinate file.
    Count {
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        sigma: f64,
        #[arg(long = "T")]
        t: f64,
    },
    /// Zeros within the disk of radius K (log t)^(-2/3)(log log t)^(-1/3) around 1 + it.
    Disk {
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        t: f64,
        #[arg(long = "K")]
        k: f64,
    },
    /// Box decomposition with parity-split representative systems.
    Boxes {
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        sigma0: f64,
        #[arg(long = "T")]
        t: f64,
    },
}

fn main() {
    // die quietly when piped into head and friends
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if cli.global.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.global.threads)
            .build_global()
            .ok();
    }
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}

fn zeros_path(explicit: Option<PathBuf>) -> Result<PathBuf> {
    if let Some(p) = explicit {
        if !p.exists() {
            bail!("zero file {} does not exist", p.display());
        }
        return Ok(p);
    }
    battery::default_zeros_path()
        .context("no --file given and no default ordinate file found (set ZETA_EDGE_DATA)")
}

fn print_record_report(records: Vec<BoundAuditRecord>, output: Output) -> Result<()> {
    let report = AuditReport {
        toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
        constants_block: Default::default(),
        records,
        timestamp: String::new(),
    };
    let format = match output {
        Output::Csv => ReportFormat::Csv,
        Output::Json => ReportFormat::Json,
    };
    let bytes = emit_report(&report, format)?;
    print!("{}", String::from_utf8_lossy(&bytes));
    Ok(())
}

fn maybe_print_constants(precision: Precision) {
    if precision == Precision::High {
        for (name, entry) in constants_block() {
            if let Some(hp) = entry.high_precision {
                println!("# {name} = {hp}");
            } else {
                println!("# {name} = {}", entry.value);
            }
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    let output = cli.global.output;
    match cli.command {
        Command::Omega {
            log_x,
            a0,
            tol,
            t_min,
        } => {
            let region = ZeroFreeRegion::new(a0, t_min)?;
            let res = omega_numeric_logx(&region, log_x, tol)?;
            maybe_print_constants(cli.global.precision);
            match output {
                Output::Csv => {
                    if res.at_boundary {
                        println!("# constrained minimum sits on the t_min = {t_min} boundary");
                    }
                    println!("input,t_star,omega_numeric,omega_closed,rel_gap");
                    println!(
                        "{log_x},{},{},{},{}",
                        res.t_star_display(),
                        res.omega_numeric,
                        res.omega_closed,
                        res.rel_gap
                    );
                }
                Output::Json => println!("{}", serde_json::to_string_pretty(&res)?),
            }
        }
        Command::Schedule { a, d } => {
            if !(a > 0.0) || !(d > 0.0) {
                bail!("schedule needs A > 0 and D > 0 (got A = {a}, D = {d})");
            }
            let s = schedule(a, d);
            maybe_print_constants(cli.global.precision);
            match output {
                Output::Csv => {
                    println!(
                        "# c_u={} c_v={} c_w={} c_x={} c_y={} c={}",
                        s.c_u, s.c_v, s.c_w, s.c_x, s.c_y, s.c
                    );
                    println!("name,satisfied,lhs,rhs,dependent_on");
                    for f in &s.constraint_flags {
                        println!(
                            "{},{},{},{},{}",
                            f.name,
                            f.satisfied,
                            f.lhs,
                            f.rhs,
                            f.dependent_on.as_deref().unwrap_or("-")
                        );
                    }
                }
                Output::Json => println!("{}", serde_json::to_string_pretty(&s)?),
            }
        }
        Command::Weights {
            u,
            v,
            w,
            limit,
            audit,
        } => {
            let table = build_weights(WeightConfig::new(u, v, w, limit)?)?;
            match audit {
                None => {
                    println!("n,psi,theta,Psi,Theta,h");
                    for n in 1..=limit {
                        let psi = table.psi_d.get(n).copied().unwrap_or(0.0);
                        let theta = table.theta_d.get(n).copied().unwrap_or(0.0);
                        println!(
                            "{n},{psi},{theta},{},{},{}",
                            table.big_psi[n], table.big_theta[n], table.h[n]
                        );
                    }
                }
                Some(WeightsAudit::ThetaLambda) => {
                    let log_w = (w as f64).ln();
                    let tables = table.tables();
                    println!("n,lhs,rhs,diff,pass");
                    for n in 2..=w.min(limit) {
                        let lhs = table.big_theta[n];
                        let rhs = tables.lambda[n] / log_w;
                        let diff = (lhs - rhs).abs();
                        println!(
                            "{n},{lhs},{rhs},{diff},{}",
                            diff <= 1e-12 * lhs.abs().max(1.0)
                        );
                    }
                }
                Some(WeightsAudit::Ratios) => {
                    let (d1, d2) = table.partial_sum_ratios(limit)?;
                    println!("N,d1_hat,d2_hat");
                    println!("{limit},{d1},{d2}");
                }
                Some(WeightsAudit::Convolution) => {
                    let records = table.convolution_identity_audit(limit.min(10_000))?;
                    println!("n,lhs,rhs,diff,pass");
                    for r in records {
                        let field = |k: &str| r.inputs.get(k).map(String::as_str).unwrap_or("?");
                        println!(
                            "{},{},{},{},{}",
                            field("n"),
                            field("lhs"),
                            field("rhs"),
                            r.computed,
                            r.computed <= 1e-12
                        );
                    }
                }
            }
        }
        Command::Expsum { n, t, audit } => match audit {
            None => {
                let r = exp_sum(n, t);
                println!("N,t,value,argmax_R");
                println!("{},{},{},{}", r.n, r.t, r.value, r.argmax_r);
            }
            Some(ExpsumAudit::Korobov) => {
                print_record_report(vec![korobov_bound_audit(n, t)?], output)?;
            }
            Some(ExpsumAudit::Vdc) => {
                print_record_report(vec![vdc_bound_audit(n, t)?], output)?;
            }
        },
        Command::Zeta { sigma, t, audit } => match audit {
            None => {
                let z = zeta_reference(ComplexPoint::new(sigma, t))?;
                println!("sigma,t,re,im,abs");
                println!("{sigma},{t},{},{},{}", z.re, z.im, z.norm());
            }
            Some(ZetaAudit::Growth) => {
                print_record_report(
                    vec![growth_bound_audit(ComplexPoint::new(sigma, t))?],
                    output,
                )?;
            }
        },
        Command::Mollifier {
            u,
            v,
            w,
            y,
            sigma,
            t,
        } => {
            let table = build_weights(WeightConfig::new(u, v, w, y)?)?;
            let s = ComplexPoint::new(sigma, t);
            let m = mollifier(&table, s, y)?;
            let majorant = mollifier_divisor_majorant(&table, sigma, y)?;
            println!("U,V,W,Y,sigma,t,re,im,abs,divisor_majorant,within_majorant");
            println!(
                "{u},{v},{w},{y},{sigma},{t},{},{},{},{majorant},{}",
                m.re,
                m.im,
                m.norm(),
                m.norm() <= majorant
            );
        }
        Command::Sieve { x, json } => {
            let s = sieve_summary(x)?;
            if json || output == Output::Json {
                let mut value = serde_json::to_value(&s)?;
                value["li_convention"] = serde_json::Value::String(LI_CONVENTION.to_string());
                println!("{}", serde_json::to_string_pretty(&value)?);
            } else {
                println!("x,psi,theta,pi,li,delta,delta1,delta2");
                println!(
                    "{},{},{},{},{},{},{},{}",
                    s.x, s.psi, s.theta, s.pi, s.li_x, s.delta, s.delta1, s.delta2
                );
            }
        }
        Command::Pnt { sub } => match sub {
            PntCommand::Envelope { x } => {
                let rec = envelope_compare(x, &ZeroFreeRegion::default())?;
                print_record_report(vec![rec], output)?;
            }
            PntCommand::Zerosum { file, x, t, h } => {
                let ds = ingest_zeros(&zeros_path(file)?, f64::INFINITY)?;
                println!("x,T,restricted_to,zero_sum,remainder,total");
                match h {
                    None => {
                        let b = zero_sum_bound(&ds, x, t)?;
                        println!("{x},{t},all,{},{},{}", b.zero_sum, b.remainder, b.total);
                    }
                    Some(h) => {
                        let (full, tail) = zero_sum_bound_split(&ds, x, t, h)?;
                        println!(
                            "{x},{t},all,{},{},{}",
                            full.zero_sum, full.remainder, full.total
                        );
                        println!(
                            "{x},{t},gamma>{h},{},{},{}",
                            tail.zero_sum, tail.remainder, tail.total
                        );
                    }
                }
            }
        },
        Command::Zeros { sub } => match sub {
            ZerosCommand::Count { file, sigma, t } => {
                let path = zeros_path(file)?;
                let ds = ingest_zeros(&path, f64::INFINITY)?;
                let c = count_n(&ds, sigma, t)?;
                println!("file,sigma,T,count");
                println!("{},{sigma},{t},{c}", path.display());
            }
            ZerosCommand::Disk { file, t, k } => {
                let ds = ingest_zeros(&zeros_path(file)?, f64::INFINITY)?;
                let d = disk_count(&ds, t, k)?;
                println!("t,K,radius,count,ratio");
                println!("{},{},{},{},{}", d.t, d.k, d.radius, d.count, d.ratio);
            }
            ZerosCommand::Boxes { file, sigma0, t } => {
                let ds = ingest_zeros(&zeros_path(file)?, f64::INFINITY)?;
                let grid = build_box_grid(&ds, sigma0, t, cli.global.seed)?;
                let cover = box_circle_cover_check(&grid);
                println!("sigma0,T,delta,occupied,j_even,j_odd,j,cover_pass");
                println!(
                    "{sigma0},{t},{},{},{},{},{},{}",
                    grid.delta,
                    grid.occupied_boxes.len(),
                    grid.j_even.len(),
                    grid.j_odd.len(),
                    grid.j().len(),
                    cover.pass
                );
            }
        },
        Command::Lcm { x } => {
            let (sum, ratio) = zeta_edge_core::audit::lcm_reciprocal_sum(x)?;
            println!("x,sum,ratio_to_log_cubed");
            println!("{x},{sum},{ratio}");
        }
        Command::Audit { config, out } => {
            let mut cfg = match config {
                Some(path) => battery::load_config(&path)?,
                None => AuditConfig::default(),
            };
            if let Some(seed) = cli.global.seed {
                cfg.seed = seed;
            }
            let report = battery::run_full_audit(&cfg)?;
            let format = match output {
                Output::Csv => ReportFormat::Csv,
                Output::Json => ReportFormat::Json,
            };
            let bytes = emit_report(&report, format)?;
            match out {
                Some(path) => std::fs::write(&path, &bytes)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{}", String::from_utf8_lossy(&bytes)),
            }
            let failures = report.failures();
            if !failures.is_empty() {
                for f in &failures {
                    eprintln!(
                        "FAIL {}: computed {} vs bound {}",
                        f.name, f.computed, f.bound
                    );
                }
                return Ok(1);
            }
        }
    }
    Ok(0)
}
