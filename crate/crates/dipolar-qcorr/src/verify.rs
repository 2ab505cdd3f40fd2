//! Cross-validation battery: every closed form in the library is checked
//! against an independent route (RK4 integration, R-matrix eigenvalues,
//! two-angle measurement search, generator sparsity analysis). The CLI
//! `verify` command prints one line per check.

use crate::dynamics::{
    analytic_density, build_liouvillian, decoupled_blocks_check, integrate_trajectory,
    sum_difference_block,
};
use crate::error::Result;
use crate::scalar::Scalar;
use crate::qcorrelations::{
    concurrence_analytic, concurrence_numeric, concurrence_xstate, discord_at,
    discord_two_angle_at,
};
use crate::smatrix::{herm_eigen, CMat};
use crate::spinmodel::{hadamard_transform, initial_state, SimParams};
use rayon::prelude::*;

pub const BETA_GRID: [f64; 4] = [0.0, 0.5, 1.5, 5.0];
pub const G_GRID: [f64; 4] = [0.0, 0.1, 0.5, 2.0];

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub quick: bool,
    /// Test hook: added to the analytic rho_14 before the oracle
    /// comparison, to demonstrate the failure path.
    pub perturb: f64,
    pub dt: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            quick: false,
            perturb: 0.0,
            dt: 1e-4,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub threshold: f64,
    pub max_err: f64,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, threshold: f64, max_err: f64, detail: String) -> Self {
        Check {
            name,
            threshold,
            max_err,
            pass: max_err < threshold,
            detail,
        }
    }
}

struct GridTimes {
    betas: Vec<f64>,
    gs: Vec<f64>,
    times: Vec<f64>,
}

fn grids(opts: &VerifyOptions) -> GridTimes {
    if opts.quick {
        GridTimes {
            betas: vec![1.5],
            gs: vec![0.0, 0.5],
            times: (1..=10).map(|k| 0.5 * k as f64).collect(),
        }
    } else {
        GridTimes {
            betas: BETA_GRID.to_vec(),
            gs: G_GRID.to_vec(),
            times: (1..=100).map(|k| 0.1 * k as f64).collect(),
        }
    }
}

fn fold_max(acc: (f64, String), item: (f64, String)) -> (f64, String) {
    if item.0 > acc.0 {
        item
    } else {
        acc
    }
}

/// Oracle comparison plus trajectory conservation laws, one integration
/// per (beta, g) pair.
fn oracle_checks(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let grid = grids(opts);
    let dt = if opts.quick { opts.dt.max(1e-3) } else { opts.dt };
    let pairs: Vec<(f64, f64)> = grid
        .betas
        .iter()
        .flat_map(|&b| grid.gs.iter().map(move |&g| (b, g)))
        .collect();

    let per_pair: Vec<((f64, String), (f64, String), (f64, String))> = pairs
        .par_iter()
        .map(|&(beta, g)| -> Result<_> {
            let rho0 = initial_state(beta)?;
            let traj = integrate_trajectory(&rho0, g, &grid.times, dt)?;
            let tau2 = (beta / 2.0).tanh().powi(2);
            let mut worst_oracle = (0.0, String::new());
            let mut worst_conserved = (0.0, String::new());
            let mut worst_decay = (0.0, String::new());
            for (out, &t) in traj.iter().zip(&grid.times) {
                let mut analytic = analytic_density(&SimParams::new(beta, g, t)?);
                if opts.perturb != 0.0 {
                    let z = analytic[(0, 3)] + f64::cplx(opts.perturb, 0.0);
                    analytic[(0, 3)] = z;
                }
                let err = analytic.max_abs_diff(&out.rho);
                let at = format!("beta={beta} g={g} t={t:.2}");
                worst_oracle = fold_max(worst_oracle, (err, at.clone()));
                let r = &out.rho;
                let cons = (r[(1, 1)].re + r[(2, 2)].re - 0.5)
                    .abs()
                    .max((r[(1, 1)] - r[(2, 2)]).norm())
                    .max((r[(1, 2)] - r[(2, 1)]).norm());
                worst_conserved = fold_max(worst_conserved, (cons, at.clone()));
                let decay = (r[(0, 3)].norm() - tau2 * (-g * t).exp() / 4.0).abs();
                worst_decay = fold_max(worst_decay, (decay, at));
            }
            Ok((worst_oracle, worst_conserved, worst_decay))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut oracle = (0.0, String::new());
    let mut conserved = (0.0, String::new());
    let mut decay = (0.0, String::new());
    for (o, c, d) in per_pair {
        oracle = fold_max(oracle, o);
        conserved = fold_max(conserved, c);
        decay = fold_max(decay, d);
    }
    Ok(vec![
        Check::new("analytic-vs-rk4", 1e-8, oracle.0, oracle.1),
        Check::new("conserved-quantities", 1e-8, conserved.0, conserved.1),
        Check::new("coherence-decay-law", 1e-8, decay.0, decay.1),
    ])
}

fn state_validity_check(opts: &VerifyOptions) -> Result<Check> {
    let grid = grids(opts);
    let mut worst = (0.0, String::new());
    for &beta in &grid.betas {
        for &g in &grid.gs {
            for &t in &grid.times {
                let rho = analytic_density(&SimParams::new(beta, g, t)?);
                let herm = rho.hermiticity_defect();
                let trace = (rho.trace().re - 1.0).abs();
                let mut centro: f64 = 0.0;
                for i in 0..4 {
                    for j in 0..4 {
                        centro = centro.max((rho[(i, j)] - rho[(3 - i, 3 - j)]).norm());
                    }
                }
                let min_eig = *herm_eigen(&rho)?.values.last().unwrap();
                let psd = (-min_eig).max(0.0) / 100.0; // 1e-12 budget vs 1e-14 scale
                let err = herm.max(trace).max(centro).max(psd);
                if err > worst.0 {
                    worst = (err, format!("beta={beta} g={g} t={t:.2}"));
                }
            }
        }
    }
    Ok(Check::new("state-validity", 1e-14, worst.0, worst.1))
}

fn concurrence_check(opts: &VerifyOptions) -> Result<Check> {
    let grid = grids(opts);
    let mut worst = (0.0, String::new());
    for &beta in &grid.betas {
        for &g in &grid.gs {
            for &t in &grid.times {
                let p = SimParams::new(beta, g, t)?;
                let ca = concurrence_analytic(&p).value;
                let cx = concurrence_xstate(&crate::dynamics::analytic_xstate(&p));
                let cn = concurrence_numeric(&hadamard_transform(&analytic_density(&p)))?.value;
                let err = (ca - cx).abs().max((ca - cn).abs()).max((cx - cn).abs());
                if err > worst.0 {
                    worst = (err, format!("beta={beta} g={g} t={t:.2}"));
                }
            }
        }
    }
    Ok(Check::new("concurrence-triple-agreement", 1e-10, worst.0, worst.1))
}

fn discord_check(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let grid = grids(opts);
    let times: Vec<f64> = grid.times.clone();
    let mut points: Vec<(f64, f64, f64)> = Vec::new();
    for &b in &grid.betas {
        for &g in &grid.gs {
            for &t in &times {
                points.push((b, g, t));
            }
        }
    }
    let results: Vec<((f64, String), (f64, String))> = points
        .par_iter()
        .map(|&(beta, g, t)| -> Result<_> {
            let p = SimParams::new(beta, g, t)?;
            let fast = discord_at(&p)?;
            let full = discord_two_angle_at(&p)?;
            let at = format!("beta={beta} g={g} t={t:.2}");
            let agree = ((fast.value - full.value).abs(), at.clone());
            let additivity = (
                (full.value + full.classical_correlation - full.mutual_information).abs(),
                at,
            );
            Ok((agree, additivity))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut agree = (0.0, String::new());
    let mut additivity = (0.0, String::new());
    for (a, b) in results {
        agree = fold_max(agree, a);
        additivity = fold_max(additivity, b);
    }
    Ok(vec![
        Check::new("discord-single-vs-two-angle", 1e-6, agree.0, agree.1),
        Check::new("discord-additivity", 1e-9, additivity.0, additivity.1),
    ])
}

fn block_structure_check() -> Result<Check> {
    let mut worst_err = 0.0f64;
    let mut pass = true;
    let mut detail = String::from("components match on g in {0, 0.7}");
    for g in [0.0, 0.7] {
        let lv = build_liouvillian(g)?;
        let report = decoupled_blocks_check(&lv);
        if !report.matches_expected() {
            pass = false;
            detail = format!("unexpected components at g={g}: {:?}", report.components);
        }
        let block = sum_difference_block(&lv);
        let mut expect = CMat::<f64>::zeros(4);
        expect[(1, 1)] = f64::cplx(-g, 0.0);
        expect[(2, 2)] = f64::cplx(-g, 0.0);
        expect[(2, 3)] = f64::cplx(0.0, -1.0);
        expect[(3, 2)] = f64::cplx(0.0, -1.0);
        worst_err = worst_err.max(block.max_abs_diff(&expect));
    }
    let mut check = Check::new("block-structure", 1e-12, worst_err, detail);
    check.pass = check.pass && pass;
    Ok(check)
}

pub fn run_battery(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut checks = oracle_checks(opts)?;
    checks.push(state_validity_check(opts)?);
    checks.push(concurrence_check(opts)?);
    checks.extend(discord_check(opts)?);
    checks.push(block_structure_check()?);
    Ok(checks)
}
