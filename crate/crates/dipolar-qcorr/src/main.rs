//! Command-line front end: state dumps, correlation values, parameter
//! sweeps, the critical temperature, the verification battery and the
//! figure presets.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numeric
//! failure, 4 I/O failure.

use clap::{Args, Parser, Subcommand, ValueEnum};
use dipolar_qcorr::dynamics::{analytic_density, analytic_xstate, integrate, XState};
use dipolar_qcorr::qcorrelations::{
    concurrence_analytic, concurrence_numeric, concurrence_xstate, discord_at,
    discord_two_angle_at, ConcurrenceResult, DiscordResult,
};
use dipolar_qcorr::spinmodel::{hadamard_transform, initial_state, SimParams, OMEGA0_DEFAULT};
use dipolar_qcorr::sweeps::{
    critical_temperature, temperature_sweep, time_sweep, Abscissa, Grid, Quantity, SweepResult,
    SweepSpec, MAX_SEARCH_WINDOW,
};
use dipolar_qcorr::verify::{run_battery, VerifyOptions};
use dipolar_qcorr::{CMat64, Error};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "dipolar-qcorr",
    version,
    about = "Concurrence and quantum discord of two dipolar-coupled spins under dephasing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the 4x4 density matrix at (beta, g, t)
    Evolve(EvolveArgs),
    /// Concurrence at (beta, g, t)
    Concurrence(PointArgs),
    /// Quantum discord at (beta, g, t), in bits
    Discord(PointArgs),
    /// Quantity-vs-time or max-quantity-vs-temperature CSV sweeps
    Sweep(SweepArgs),
    /// Temperature below which the evolution becomes entangled
    CriticalTemp(CriticalTempArgs),
    /// Run the cross-validation battery
    Verify(VerifyArgs),
    /// Emit the fig1..fig4 preset data files plus gnuplot scripts
    Figures(FiguresArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Analytic,
    Numeric,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct EvolveArgs {
    /// Dimensionless inverse temperature
    #[arg(long)]
    beta: f64,
    /// Dimensionless dephasing rate
    #[arg(long, default_value_t = 0.0)]
    g: f64,
    /// Dimensionless time
    #[arg(long)]
    t: f64,
    #[arg(long, value_enum, default_value_t = MethodArg::Analytic)]
    method: MethodArg,
    /// RK4 step (numeric method only)
    #[arg(long, default_value_t = 1e-4)]
    dt: f64,
    /// Write the dump to a file instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PointArgs {
    #[arg(long)]
    beta: f64,
    #[arg(long, default_value_t = 0.0)]
    g: f64,
    #[arg(long)]
    t: f64,
    #[arg(long, value_enum, default_value_t = MethodArg::Analytic)]
    method: MethodArg,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    quantity: QuantityArg,
    #[arg(long, value_enum)]
    abscissa: AbscissaArg,
    #[arg(long, default_value_t = 1.5)]
    beta: f64,
    /// Dephasing rate; a comma-separated list fans out to one file per value
    #[arg(long, default_value = "0")]
    g: String,
    /// Time-sweep upper limit (time abscissa only)
    #[arg(long)]
    t_max: Option<f64>,
    /// Grid start (time: dimensionless, default 0; temperature: kelvin)
    #[arg(long)]
    start: Option<f64>,
    /// Grid stop (temperature abscissa)
    #[arg(long)]
    stop: Option<f64>,
    #[arg(long, default_value_t = 201)]
    points: usize,
    /// Interpret --start/--stop as millikelvin
    #[arg(long)]
    millikelvin: bool,
    /// Larmor angular frequency in rad/s (temperature abscissa)
    #[arg(long, default_value_t = OMEGA0_DEFAULT)]
    omega0: f64,
    #[arg(long, default_value = "sweep.csv")]
    output: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QuantityArg {
    Concurrence,
    Discord,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AbscissaArg {
    Time,
    Temperature,
}

#[derive(Args)]
struct CriticalTempArgs {
    #[arg(long, default_value_t = 0.0)]
    g: f64,
    #[arg(long, default_value_t = OMEGA0_DEFAULT)]
    omega0: f64,
    /// Bracket low end, kelvin (entangled side)
    #[arg(long, default_value_t = 1e-3)]
    t_low: f64,
    /// Bracket high end, kelvin (separable side)
    #[arg(long, default_value_t = 0.5)]
    t_high: f64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Reduced grid, finishes in seconds
    #[arg(long)]
    quick: bool,
    /// Test hook: bias rho_14 by this amount to demonstrate failure
    #[arg(long, default_value_t = 0.0)]
    perturb: f64,
    #[arg(long, default_value_t = 1e-4)]
    dt: f64,
}

#[derive(Args)]
struct FiguresArgs {
    /// Directory for fig1..fig4 .csv/.plt files
    #[arg(long, default_value = "figures")]
    output: PathBuf,
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("DIPOLAR_QCORR_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::InvalidArgument(_) => 2,
                Error::NumericFailure(_) => 3,
                Error::Io(_) => 4,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Evolve(a) => cmd_evolve(a),
        Command::Concurrence(a) => cmd_concurrence(a),
        Command::Discord(a) => cmd_discord(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::CriticalTemp(a) => cmd_critical_temp(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Figures(a) => cmd_figures(a),
    }
}

fn xstate_from_matrix(rho: &CMat64) -> XState<f64> {
    XState {
        a: rho[(0, 0)].re,
        b: rho[(1, 1)].re,
        c: rho[(2, 2)].re,
        d: rho[(3, 3)].re,
        alpha: rho[(0, 3)],
    }
}

fn dump_matrix(out: &mut String, rho: &CMat64) {
    out.push_str("re:\n");
    for i in 0..4 {
        for j in 0..4 {
            let _ = write!(out, " {:>24.16e}", rho[(i, j)].re);
        }
        out.push('\n');
    }
    out.push_str("im:\n");
    for i in 0..4 {
        for j in 0..4 {
            let _ = write!(out, " {:>24.16e}", rho[(i, j)].im);
        }
        out.push('\n');
    }
}

fn cmd_evolve(a: EvolveArgs) -> Result<ExitCode, Error> {
    let p = SimParams::new(a.beta, a.g, a.t)?;
    let analytic = analytic_density(&p);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "rho(beta={}, g={}, t={}) [{}]",
        a.beta,
        a.g,
        a.t,
        match a.method {
            MethodArg::Analytic => "analytic",
            MethodArg::Numeric => "numeric rk4",
        }
    );
    let rho = match a.method {
        MethodArg::Analytic => analytic.clone(),
        MethodArg::Numeric => {
            let result = integrate(&initial_state(a.beta)?, a.g, a.t, a.dt)?;
            for w in &result.warnings {
                let _ = writeln!(out, "warning: {w}");
            }
            result.rho
        }
    };
    dump_matrix(&mut out, &rho);
    let x = xstate_from_matrix(&hadamard_transform(&rho));
    let _ = writeln!(
        out,
        "x-state: a={:.16e} b={:.16e} c={:.16e} d={:.16e} alpha={:.16e}{:+.16e}i",
        x.a, x.b, x.c, x.d, x.alpha.re, x.alpha.im
    );
    if a.method == MethodArg::Numeric {
        let _ = writeln!(
            out,
            "max |numeric - analytic| = {:e}",
            rho.max_abs_diff(&analytic)
        );
    }
    emit(a.output.as_deref(), &out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_concurrence(a: PointArgs) -> Result<ExitCode, Error> {
    let p = SimParams::new(a.beta, a.g, a.t)?;
    let ConcurrenceResult { value, lambdas, .. } = match a.method {
        MethodArg::Analytic => concurrence_analytic(&p),
        MethodArg::Numeric => concurrence_numeric(&hadamard_transform(&analytic_density(&p)))?,
    };
    println!("concurrence = {value:.12}");
    println!(
        "lambdas = [{:e}, {:e}, {:e}, {:e}]",
        lambdas[0], lambdas[1], lambdas[2], lambdas[3]
    );
    if a.method == MethodArg::Numeric {
        let reference = concurrence_xstate(&analytic_xstate(&p));
        println!("max |numeric - analytic| = {:e}", (value - reference).abs());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_discord(a: PointArgs) -> Result<ExitCode, Error> {
    let p = SimParams::new(a.beta, a.g, a.t)?;
    let DiscordResult {
        value,
        optimal_theta,
        optimal_phi,
        classical_correlation,
        mutual_information,
    } = match a.method {
        MethodArg::Analytic => discord_at(&p)?,
        MethodArg::Numeric => discord_two_angle_at(&p)?,
    };
    println!("discord = {value:.12} bits");
    println!("classical correlation = {classical_correlation:.12} bits");
    println!("mutual information = {mutual_information:.12} bits");
    println!("optimal measurement: theta={optimal_theta:.12} phi={optimal_phi:.12}");
    if a.method == MethodArg::Numeric {
        let reference = discord_at(&p)?.value;
        println!("max |numeric - analytic| = {:e}", (value - reference).abs());
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_g_list(s: &str) -> Result<Vec<f64>, Error> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let v: f64 = part
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("bad value in --g list: {part:?}")))?;
        out.push(v);
    }
    Ok(out)
}

fn suffixed_path(path: &Path, g: f64) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("sweep");
    let ext = path.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    path.with_file_name(format!("{stem}_g{g}.{ext}"))
}

fn sweep_csv(result: &SweepResult) -> String {
    let with_t_star = result.records.iter().any(|r| r.t_star.is_some());
    let mut out = String::new();
    out.push_str(if with_t_star { "abscissa,value,t_star\n" } else { "abscissa,value\n" });
    for r in &result.records {
        match r.t_star {
            Some(ts) => {
                let _ = writeln!(out, "{},{},{}", r.abscissa, r.value, ts);
            }
            None => {
                let _ = writeln!(out, "{},{}", r.abscissa, r.value);
            }
        }
    }
    out
}

fn cmd_sweep(a: SweepArgs) -> Result<ExitCode, Error> {
    let quantity = match a.quantity {
        QuantityArg::Concurrence => Quantity::Concurrence,
        QuantityArg::Discord => Quantity::Discord,
    };
    let unit = if a.millikelvin { 1e-3 } else { 1.0 };
    let grid = match a.abscissa {
        AbscissaArg::Time => Grid {
            start: a.start.unwrap_or(0.0),
            stop: a
                .t_max
                .ok_or_else(|| Error::invalid("time sweeps need --t-max"))?,
            points: a.points,
        },
        AbscissaArg::Temperature => Grid {
            start: unit * a.start.ok_or_else(|| Error::invalid("temperature sweeps need --start"))?,
            stop: unit * a.stop.ok_or_else(|| Error::invalid("temperature sweeps need --stop"))?,
            points: a.points,
        },
    };
    let gs = parse_g_list(&a.g)?;
    if gs.is_empty() {
        return Err(Error::invalid("--g needs at least one value"));
    }
    let fan_out = gs.len() > 1;
    for g in gs {
        let spec = SweepSpec {
            quantity,
            abscissa: match a.abscissa {
                AbscissaArg::Time => Abscissa::Time,
                AbscissaArg::Temperature => Abscissa::Temperature,
            },
            beta: a.beta,
            g,
            grid,
            omega0: a.omega0,
        };
        let result = match a.abscissa {
            AbscissaArg::Time => time_sweep(&spec)?,
            AbscissaArg::Temperature => temperature_sweep(&spec)?,
        };
        let path = if fan_out { suffixed_path(&a.output, g) } else { a.output.clone() };
        match a.format {
            FormatArg::Csv => {
                std::fs::write(&path, sweep_csv(&result))?;
                let meta = serde_json::to_string_pretty(&result.meta)
                    .map_err(|e| Error::numeric(format!("meta serialization failed: {e}")))?;
                std::fs::write(path.with_extension("meta.json"), meta + "\n")?;
            }
            FormatArg::Json => {
                let body = serde_json::to_string_pretty(&result)
                    .map_err(|e| Error::numeric(format!("serialization failed: {e}")))?;
                std::fs::write(&path, body + "\n")?;
            }
        }
        println!("wrote {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_critical_temp(a: CriticalTempArgs) -> Result<ExitCode, Error> {
    let tc = critical_temperature(a.g, a.omega0, (a.t_low, a.t_high))?;
    println!("critical temperature = {tc:.6} K ({:.3} mK)", tc * 1e3);
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(a: VerifyArgs) -> Result<ExitCode, Error> {
    let checks = run_battery(&VerifyOptions {
        quick: a.quick,
        perturb: a.perturb,
        dt: a.dt,
    })?;
    let mut all_pass = true;
    println!("{:<30} {:>10} {:>12}  result", "check", "threshold", "max error");
    for c in &checks {
        println!(
            "{:<30} {:>10.0e} {:>12.3e}  {}",
            c.name,
            c.threshold,
            c.max_err,
            if c.pass { "PASS" } else { "FAIL" }
        );
        if !c.pass {
            all_pass = false;
            println!("  worst case: {}", c.detail);
        }
    }
    if all_pass {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

const FIG_G: [f64; 5] = [0.0, 0.1, 0.5, 1.0, 2.0];
const FIG_TIME_POINTS: usize = 601;
const FIG_TEMP_POINTS: usize = 96;

fn figure_columns(
    quantity: Quantity,
    abscissa: Abscissa,
    grid: Grid,
) -> Result<(Vec<f64>, Vec<Vec<f64>>), Error> {
    let mut columns = Vec::new();
    let mut xs = Vec::new();
    for &g in &FIG_G {
        let spec = SweepSpec {
            quantity,
            abscissa,
            beta: 1.5,
            g,
            grid,
            omega0: OMEGA0_DEFAULT,
        };
        let result = match abscissa {
            Abscissa::Time => time_sweep(&spec)?,
            Abscissa::Temperature => temperature_sweep(&spec)?,
        };
        if xs.is_empty() {
            xs = result.records.iter().map(|r| r.abscissa).collect();
        }
        columns.push(result.records.iter().map(|r| r.value).collect());
    }
    Ok((xs, columns))
}

fn figure_csv(x_label: &str, xs: &[f64], columns: &[Vec<f64>]) -> String {
    let mut out = String::from(x_label);
    for g in FIG_G {
        let _ = write!(out, ",g={g}");
    }
    out.push('\n');
    for (i, &x) in xs.iter().enumerate() {
        let _ = write!(out, "{x}");
        for col in columns {
            let _ = write!(out, ",{}", col[i]);
        }
        out.push('\n');
    }
    out
}

fn figure_plt(name: &str, x_label: &str, y_label: &str) -> String {
    format!(
        "set datafile separator \",\"\n\
         set key autotitle columnhead\n\
         set xlabel \"{x_label}\"\n\
         set ylabel \"{y_label}\"\n\
         set terminal pngcairo size 900,600\n\
         set output \"{name}.png\"\n\
         plot for [i=2:{}] \"{name}.csv\" using 1:i with lines\n",
        FIG_G.len() + 1
    )
}

fn cmd_figures(a: FiguresArgs) -> Result<ExitCode, Error> {
    std::fs::create_dir_all(&a.output)?;
    let time_grid = Grid {
        start: 0.0,
        stop: 3.0 * MAX_SEARCH_WINDOW, // three undamped periods, 4 pi total
        points: FIG_TIME_POINTS,
    };
    let temp_grid = Grid {
        start: 5e-3,
        stop: 0.1,
        points: FIG_TEMP_POINTS,
    };
    let presets: [(&str, Quantity, Abscissa, Grid, &str, &str); 4] = [
        ("fig1", Quantity::Concurrence, Abscissa::Time, time_grid, "Dt", "concurrence"),
        ("fig2", Quantity::Concurrence, Abscissa::Temperature, temp_grid, "T (K)", "max concurrence"),
        ("fig3", Quantity::Discord, Abscissa::Time, time_grid, "Dt", "discord (bits)"),
        ("fig4", Quantity::Discord, Abscissa::Temperature, temp_grid, "T (K)", "max discord (bits)"),
    ];
    for (name, quantity, abscissa, grid, x_label, y_label) in presets {
        let (xs, columns) = figure_columns(quantity, abscissa, grid)?;
        std::fs::write(
            a.output.join(format!("{name}.csv")),
            figure_csv(x_label, &xs, &columns),
        )?;
        std::fs::write(
            a.output.join(format!("{name}.plt")),
            figure_plt(name, x_label, y_label),
        )?;
        println!("wrote {}", a.output.join(format!("{name}.csv")).display());
    }
    Ok(ExitCode::SUCCESS)
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
