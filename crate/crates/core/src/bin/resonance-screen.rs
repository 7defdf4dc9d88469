use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use resonance_screen::coefficients::{
    evaluate, t1_ck, t_nls, write_coefficient_csv, CoefficientRow, CoefficientSettings, KernelId,
};
use resonance_screen::degeneracy::{analyze_mode, BasisKind, Mode, RankVerdict};
use resonance_screen::report::{analyze, scan_params, write_json, GridAxis};
use resonance_screen::resonance::{
    detect_billiard, sample_manifold, write_points_csv, ChartSelection, ManifoldChart,
};
use resonance_screen::{make_system, Config, Error, ProcessId, SystemId, SystemParams, WaveSystem};

#[derive(Parser)]
#[command(
    name = "resonance-screen",
    version,
    about = "Resonance-manifold integrability screening"
)]
struct Cli {
    /// TOML file with configuration overrides.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Params {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    beta: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    gamma: f64,
}

impl Params {
    fn get(self) -> SystemParams {
        SystemParams::new(self.alpha, self.beta, self.gamma)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Integrability report for a built-in system.
    Analyze {
        #[arg(long)]
        system: String,
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a resonance manifold to CSV.
    Sample {
        #[arg(long)]
        process: String,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Evaluate a kernel at one point, or along a manifold sample.
    Coeff {
        #[arg(long)]
        id: String,
        /// Comma-separated wavenumbers.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        /// Sample this process instead of a single point.
        #[arg(long, conflicts_with = "at")]
        process: Option<String>,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Rank analysis of one manifold in one mode.
    Rank {
        #[arg(long)]
        process: String,
        #[arg(long)]
        mode: String,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        points: Option<usize>,
        #[arg(long)]
        basis: Option<String>,
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// KdV-CKdV verdicts over an (alpha, gamma) grid.
    Scan {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn output(path: &Option<PathBuf>) -> resonance_screen::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn system_for(id: ProcessId, params: SystemParams) -> resonance_screen::Result<WaveSystem> {
    make_system(id.system(), params, None)
}

fn chart(
    id: ProcessId,
    system: &WaveSystem,
    cfg: &Config,
) -> resonance_screen::Result<Option<ManifoldChart>> {
    Ok(match ManifoldChart::select(&id.process(), system, cfg)? {
        ChartSelection::Chart(c) => Some(*c),
        ChartSelection::FullManifold => None,
    })
}

fn parse_ks(text: &str) -> resonance_screen::Result<Vec<f64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::Argument(format!("bad wavenumber `{s}`")))
        })
        .collect()
}

/// Returns the exit code: 0 done, 2 inconclusive.
fn run(cli: Cli) -> resonance_screen::Result<u8> {
    let mut cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    match cli.command {
        Command::Analyze {
            system,
            params,
            seed,
            out,
        } => {
            cfg.seed = seed.unwrap_or(cfg.seed);
            let system = make_system(SystemId::from_name(&system)?, params.get(), None)?;
            let report = analyze(&system, &cfg)?;
            write_json(output(&out)?, &report)?;
            Ok(if report.has_inconclusive() { 2 } else { 0 })
        }
        Command::Sample {
            process,
            count,
            out,
            params,
            seed,
        } => {
            let id = ProcessId::from_name(&process)?;
            let system = system_for(id, params.get())?;
            let Some(chart) = chart(id, &system, &cfg)? else {
                eprintln!("{process}: every momentum-conserving tuple is resonant");
                return Ok(0);
            };
            let sample = sample_manifold(&chart, count, seed.unwrap_or(cfg.seed));
            if let Some(w) = &sample.warning {
                eprintln!("warning: {w}");
            }
            write_points_csv(output(&out)?, &sample.points, id.process().arity())?;
            Ok(0)
        }
        Command::Coeff {
            id,
            at,
            process,
            count,
            out,
            params,
            seed,
        } => {
            let kernel = KernelId::from_name(&id)?;
            let settings = CoefficientSettings::from_config(&cfg);
            let params = params.get();
            if let Some(at) = at {
                let ks = parse_ks(&at)?;
                let v = evaluate(kernel, &ks, params, &settings)?;
                let mut w = output(&out)?;
                writeln!(w, "{} {:?} {:.16e}", kernel.name(), v.status, v.value)?;
                return Ok(0);
            }
            let id = match process {
                Some(p) => ProcessId::from_name(&p)?,
                None => kernel.process(),
            };
            let system = system_for(id, params)?;
            let Some(chart) = chart(id, &system, &cfg)? else {
                return Err(Error::Argument(format!(
                    "{} is the whole momentum plane",
                    id.name()
                )));
            };
            let sample = sample_manifold(&chart, count, seed.unwrap_or(cfg.seed));
            let mut rows = Vec::new();
            for p in &sample.points {
                let split = match kernel {
                    KernelId::TNls | KernelId::T1Nls | KernelId::T2Nls => {
                        Some((t_nls(&p.ks, params, &settings)?, "T1", "T2"))
                    }
                    KernelId::T1Ck | KernelId::P1Ck | KernelId::S1Ck => {
                        Some((t1_ck(&p.ks, params, &settings)?, "P1", "S1"))
                    }
                    _ => None,
                };
                match split {
                    Some((s, a, b)) => {
                        for (value, part) in [(s.total, "total"), (s.first, a), (s.second, b)] {
                            rows.push(CoefficientRow {
                                ks: p.ks.clone(),
                                value,
                                part: part.into(),
                            });
                        }
                    }
                    None => rows.push(CoefficientRow {
                        ks: p.ks.clone(),
                        value: evaluate(kernel, &p.ks, params, &settings)?,
                        part: kernel.name().into(),
                    }),
                }
            }
            write_coefficient_csv(output(&out)?, &rows)?;
            Ok(0)
        }
        Command::Rank {
            process,
            mode,
            degree,
            points,
            basis,
            params,
            seed,
        } => {
            cfg.degree = degree.unwrap_or(cfg.degree);
            cfg.points = points.unwrap_or(cfg.points);
            cfg.seed = seed.unwrap_or(cfg.seed);
            if let Some(b) = basis {
                cfg.basis = BasisKind::from_name(&b)?;
            }
            cfg.validate()?;
            let mode = Mode::from_name(&mode)?;
            let id = ProcessId::from_name(&process)?;
            let system = system_for(id, params.get())?;
            let Some(chart) = chart(id, &system, &cfg)? else {
                println!("{{\"verdict\":\"degenerate_rank3_plus\"}}");
                return Ok(0);
            };
            let sample = sample_manifold(&chart, cfg.points, cfg.seed);
            if let Some(w) = &sample.warning {
                eprintln!("warning: {w}");
            }
            let mut report = analyze_mode(&sample.points, chart.process(), &system, &cfg, mode)?;
            if chart.process().arity() == 4
                && detect_billiard(&sample.points, chart.process(), &system, cfg.billiard_tol)?
                    == 1.0
            {
                report.verdict = RankVerdict::BilliardInfiniteRank;
            }
            write_json(output(&None)?, &report)?;
            Ok(if report.verdict == RankVerdict::Inconclusive {
                2
            } else {
                0
            })
        }
        Command::Scan {
            alpha,
            gamma,
            beta,
            out,
            seed,
        } => {
            cfg.seed = seed.unwrap_or(cfg.seed);
            let report = scan_params(
                GridAxis::parse(&alpha)?,
                GridAxis::parse(&gamma)?,
                beta,
                &cfg,
            )?;
            write_json(output(&out)?, &report)?;
            Ok(if report.cells.iter().any(|c| !c.inconclusive.is_empty()) {
                2
            } else {
                0
            })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
