//! Parameter-sweep engine: quantity-vs-time curves, max-over-time searches
//! and temperature scans. Grid points evaluate in parallel; aggregation is
//! by grid index, so results are bit-identical regardless of scheduling.

use crate::error::{Error, Result};
use crate::qcorrelations::{concurrence_at, discord_at};
use crate::search::grid_then_golden_max_tied;
use crate::spinmodel::{beta_from_temperature, PhysicalConstants, SimParams, OMEGA0_DEFAULT};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::time::Instant;

/// One full period of the undamped oscillation; for g > 0 every
/// time-dependent term carries a non-increasing envelope, so the global
/// max over all time lies in this window.
pub const MAX_SEARCH_WINDOW: f64 = 4.0 * PI / 3.0;
const MAX_SEARCH_GRID: usize = 2000;
const MAX_SEARCH_TOL: f64 = 1e-10;
/// Maxima agreeing to this tolerance count as degenerate; the earliest wins.
const MAX_SEARCH_TIE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Concurrence,
    Discord,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Abscissa {
    Time,
    Temperature,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        let step = (self.stop - self.start) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i == self.points - 1 {
                    self.stop
                } else {
                    self.start + step * i as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub quantity: Quantity,
    pub abscissa: Abscissa,
    /// Dimensionless inverse temperature; used by time sweeps.
    pub beta: f64,
    /// Dimensionless dephasing rate.
    pub g: f64,
    pub grid: Grid,
    /// Larmor angular frequency (rad/s); used by temperature sweeps.
    pub omega0: f64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.grid.points < 2 {
            return Err(Error::invalid("sweep grid needs at least 2 points"));
        }
        if !(self.grid.start < self.grid.stop) {
            return Err(Error::invalid("sweep grid start must be below stop"));
        }
        if self.abscissa == Abscissa::Temperature && !(self.grid.start > 0.0) {
            return Err(Error::invalid("temperature sweeps need start > 0"));
        }
        if self.abscissa == Abscissa::Time && !(self.grid.start >= 0.0) {
            return Err(Error::invalid("time sweeps need start >= 0"));
        }
        if !(self.g >= 0.0) || !(self.beta >= 0.0) || !(self.omega0 > 0.0) {
            return Err(Error::invalid("beta, g must be >= 0 and omega0 > 0"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub abscissa: f64,
    pub value: f64,
    /// For max-over-time scans: the time at which the max was attained.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_star: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepMeta {
    pub spec: SweepSpec,
    pub code_version: String,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub records: Vec<SweepRecord>,
    pub meta: SweepMeta,
}

fn evaluate(quantity: Quantity, p: &SimParams<f64>) -> Result<f64> {
    Ok(match quantity {
        Quantity::Concurrence => concurrence_at(p),
        Quantity::Discord => discord_at(p)?.value,
    })
}

fn finish(spec: &SweepSpec, records: Vec<SweepRecord>, started: Instant) -> SweepResult {
    SweepResult {
        records,
        meta: SweepMeta {
            spec: *spec,
            code_version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_s: started.elapsed().as_secs_f64(),
        },
    }
}

/// Quantity vs dimensionless time, evaluated from the closed forms.
pub fn time_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    if spec.abscissa != Abscissa::Time {
        return Err(Error::invalid("time_sweep requires abscissa = time"));
    }
    let started = Instant::now();
    let records = spec
        .grid
        .values()
        .into_par_iter()
        .map(|t| {
            let p = SimParams::new(spec.beta, spec.g, t)?;
            Ok(SweepRecord {
                abscissa: t,
                value: evaluate(spec.quantity, &p)?,
                t_star: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(finish(spec, records, started))
}

/// Maximum of the quantity over one oscillation period, with the time at
/// which it is reached. Degenerate maxima (within 1e-9, e.g. the two
/// maximally entangled instants at g = 0) report the smallest t; flat-zero
/// curves report t_star = 0 for the same reason.
pub fn max_over_time(quantity: Quantity, beta: f64, g: f64) -> Result<(f64, f64)> {
    SimParams::new(beta, g, 0.0)?;
    let f = |t: f64| {
        let p = SimParams::new(beta, g, t).expect("validated above");
        evaluate(quantity, &p).expect("discord of a valid model state")
    };
    let (t_star, value) = grid_then_golden_max_tied(
        f,
        0.0,
        MAX_SEARCH_WINDOW,
        MAX_SEARCH_GRID,
        MAX_SEARCH_TOL,
        MAX_SEARCH_TIE_TOL,
    );
    Ok((t_star, value))
}

/// Max-over-time quantity vs temperature (kelvin).
pub fn temperature_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    if spec.abscissa != Abscissa::Temperature {
        return Err(Error::invalid("temperature_sweep requires abscissa = temperature"));
    }
    let consts = PhysicalConstants::with_omega0(spec.omega0)?;
    let started = Instant::now();
    let records = spec
        .grid
        .values()
        .into_par_iter()
        .map(|temp| {
            let beta = beta_from_temperature(temp, &consts)?;
            let (t_star, value) = max_over_time(spec.quantity, beta, spec.g)?;
            Ok(SweepRecord {
                abscissa: temp,
                value,
                t_star: Some(t_star),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(finish(spec, records, started))
}

const ENTANGLED_THRESHOLD: f64 = 1e-12;
/// Bisection resolution: 0.01 mK.
const CRITICAL_T_RESOLUTION: f64 = 1e-5;

fn max_concurrence_at_temperature(temp: f64, g: f64, consts: &PhysicalConstants<f64>) -> Result<f64> {
    let beta = beta_from_temperature(temp, consts)?;
    Ok(max_over_time(Quantity::Concurrence, beta, g)?.1)
}

/// Temperature below which the evolution reaches nonzero entanglement,
/// found by bisection on the max-over-time concurrence.
pub fn critical_temperature(g: f64, omega0: f64, bracket: (f64, f64)) -> Result<f64> {
    let (mut t_low, mut t_high) = bracket;
    if !(t_low > 0.0) || !(t_low < t_high) {
        return Err(Error::invalid("bracket must satisfy 0 < T_low < T_high"));
    }
    let consts = PhysicalConstants::with_omega0(omega0)?;
    let c_low = max_concurrence_at_temperature(t_low, g, &consts)?;
    let c_high = max_concurrence_at_temperature(t_high, g, &consts)?;
    if c_low <= ENTANGLED_THRESHOLD || c_high > ENTANGLED_THRESHOLD {
        return Err(Error::invalid(format!(
            "bracket does not straddle the transition: C(T_low) = {c_low:e}, C(T_high) = {c_high:e}"
        )));
    }
    while t_high - t_low > CRITICAL_T_RESOLUTION {
        let mid = 0.5 * (t_low + t_high);
        if max_concurrence_at_temperature(mid, g, &consts)? > ENTANGLED_THRESHOLD {
            t_low = mid;
        } else {
            t_high = mid;
        }
    }
    Ok(0.5 * (t_low + t_high))
}

/// Convenience: the default Larmor frequency used by the temperature plots.
pub fn default_omega0() -> f64 {
    OMEGA0_DEFAULT
}
