//! Entanglement sudden death (atoms) and sudden birth (cavities).
//!
//! With `x = |f2|² = (g'/Ω)² sin²(Ωt)` the atom concurrence vanishes once
//! `|β|² x ≥ |αβ|` and the cavity concurrence appears once
//! `|β|² (1 − x) < |αβ|`. Both conditions invert in closed form; the
//! scan-and-bisect root finder below recovers the same instants from the raw
//! brackets.

use rayon::prelude::*;
use serde::Serialize;

use crate::concurrence::closed_pair;
use crate::error::{Error, Result};
use crate::model::{amplitudes, derive_params, DerivedParams, SystemParams};

const SCAN_INTERVALS: usize = 1000;
const BISECTION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// positive to non-positive
    Falling,
    /// non-positive to positive
    Rising,
}

/// First sign change of `f` in the given direction inside `window`, located
/// by a uniform scan over 1000 subintervals and refined by bisection to
/// 1e-12. `Ok(None)` when the scan sees no such change.
pub fn find_threshold_crossing<F>(f: F, window: (f64, f64), direction: Direction) -> Result<Option<f64>>
where
    F: Fn(f64) -> f64,
{
    let (lo, hi) = window;
    if !(lo.is_finite() && hi.is_finite() && hi > lo) {
        return Err(Error::invalid(format!("window ({lo}, {hi}) must have positive length")));
    }
    let eval = |t: f64| {
        let v = f(t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::numerical(format!("non-finite function value at t = {t}")))
        }
    };
    let before = |v: f64| match direction {
        Direction::Falling => v > 0.0,
        Direction::Rising => v <= 0.0,
    };

    let step = (hi - lo) / SCAN_INTERVALS as f64;
    let mut a = lo;
    let mut fa = eval(a)?;
    for k in 1..=SCAN_INTERVALS {
        let b = if k == SCAN_INTERVALS { hi } else { lo + step * k as f64 };
        let fb = eval(b)?;
        if before(fa) && !before(fb) {
            return bisect(&eval, &before, a, b).map(Some);
        }
        a = b;
        fa = fb;
    }
    Ok(None)
}

fn bisect<E, B>(eval: &E, before: &B, mut a: f64, mut b: f64) -> Result<f64>
where
    E: Fn(f64) -> Result<f64>,
    B: Fn(f64) -> bool,
{
    while b - a > BISECTION_TOL {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if before(eval(mid)?) {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// `|αβ| − |β f2(t)|²`; the atom concurrence is zero where this is ≤ 0.
pub fn esd_bracket<'a>(p: &'a SystemParams, d: &'a DerivedParams) -> impl Fn(f64) -> f64 + 'a {
    move |t| (p.alpha * p.beta).norm() - p.beta.norm_sqr() * amplitudes(d, t).f2.norm_sqr()
}

/// `|αβ| − |β f1(t)|²`; the cavity concurrence is positive where this is > 0.
pub fn esb_bracket<'a>(p: &'a SystemParams, d: &'a DerivedParams) -> impl Fn(f64) -> f64 + 'a {
    move |t| (p.alpha * p.beta).norm() - p.beta.norm_sqr() * amplitudes(d, t).f1.norm_sqr()
}

/// Ratio `|α/β|`, infinite when `β = 0`.
fn amplitude_ratio(p: &SystemParams) -> f64 {
    p.alpha.norm() / p.beta.norm()
}

/// First instant the atom concurrence reaches zero, or `None` if it never
/// does. Returns 0 for `α = 0`, where there is no entanglement to lose.
pub fn esd_time_closed(p: &SystemParams, d: &DerivedParams) -> Option<f64> {
    if p.beta.norm() == 0.0 {
        return None;
    }
    let x = amplitude_ratio(p) / d.max_transfer();
    (x <= 1.0).then(|| x.sqrt().asin() / d.big_omega)
}

/// First instant the cavity concurrence becomes positive, or `None` if it
/// never does. Zero when `|α| ≥ |β|`.
pub fn esb_time_closed(p: &SystemParams, d: &DerivedParams) -> Option<f64> {
    if p.beta.norm() == 0.0 || p.alpha.norm() == 0.0 {
        return None;
    }
    let r = amplitude_ratio(p);
    if r >= 1.0 {
        return Some(0.0);
    }
    let x = (1.0 - r) / d.max_transfer();
    (x <= 1.0).then(|| x.sqrt().asin() / d.big_omega)
}

/// Sudden-death time from the bracket by scan and bisection over one period.
pub fn esd_time_numeric(p: &SystemParams, d: &DerivedParams) -> Result<Option<f64>> {
    let f = esd_bracket(p, d);
    if f(0.0) <= 0.0 {
        return Ok((p.beta.norm() > 0.0).then_some(0.0));
    }
    find_threshold_crossing(f, (0.0, d.period()), Direction::Falling)
}

/// Sudden-birth time from the bracket by scan and bisection over one period.
pub fn esb_time_numeric(p: &SystemParams, d: &DerivedParams) -> Result<Option<f64>> {
    if p.alpha.norm() == 0.0 || p.beta.norm() == 0.0 {
        return Ok(None);
    }
    let f = esb_bracket(p, d);
    if f(0.0) >= 0.0 {
        return Ok(Some(0.0));
    }
    find_threshold_crossing(f, (0.0, d.period()), Direction::Rising)
}

/// Events and peak concurrences over one period.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EventReport {
    pub t_esd: Option<f64>,
    pub t_esb: Option<f64>,
    pub period: f64,
    pub c_atoms_peak: f64,
    pub c_cavities_peak: f64,
}

/// The atom concurrence decreases with `|f2|²` and the cavity concurrence
/// increases with it, so the peaks sit at `|f2|² = 0` and `|f2|² = g'²/Ω²`.
pub fn event_report_with(p: &SystemParams, d: &DerivedParams) -> EventReport {
    let xm = d.max_transfer();
    EventReport {
        t_esd: esd_time_closed(p, d),
        t_esb: esb_time_closed(p, d),
        period: d.period(),
        c_atoms_peak: closed_pair(p, 1.0, 0.0).min(1.0),
        c_cavities_peak: closed_pair(p, xm, 1.0 - xm).min(1.0),
    }
}

pub fn event_report(p: &SystemParams) -> Result<EventReport> {
    let d = derive_params(p)?;
    Ok(event_report_with(p, &d))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum CellOutcome {
    Report(EventReport),
    /// The effective coupling vanishes for this drive.
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepCell {
    pub lambda: f64,
    pub omega_c: f64,
    pub outcome: CellOutcome,
}

/// Event reports over a (λ, ωc) grid; cells are stored with λ as the outer
/// index.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepGrid {
    pub lambda_axis: Vec<f64>,
    pub omega_c_axis: Vec<f64>,
    pub cells: Vec<SweepCell>,
}

impl SweepGrid {
    pub fn cell(&self, lambda_index: usize, omega_c_index: usize) -> &SweepCell {
        &self.cells[lambda_index * self.omega_c_axis.len() + omega_c_index]
    }
}

fn check_axis(name: &str, axis: &[f64]) -> Result<()> {
    if axis.is_empty() {
        return Err(Error::invalid(format!("{name} axis is empty")));
    }
    if axis.iter().any(|x| !x.is_finite() || *x < 0.0) {
        return Err(Error::invalid(format!("{name} axis values must be finite and non-negative")));
    }
    if axis.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid(format!("{name} axis must be strictly increasing")));
    }
    Ok(())
}

/// Evaluates every (λ, ωc) cell independently, in parallel.
pub fn sweep(base: &SystemParams, lambda_axis: &[f64], omega_c_axis: &[f64]) -> Result<SweepGrid> {
    base.validate()?;
    check_axis("lambda", lambda_axis)?;
    check_axis("omega_c", omega_c_axis)?;
    let coords: Vec<(f64, f64)> = lambda_axis.iter().flat_map(|&l| omega_c_axis.iter().map(move |&w| (l, w))).collect();
    let cells = coords
        .par_iter()
        .map(|&(lambda, omega_c)| {
            let p = base.with_drive(lambda, omega_c)?;
            let outcome = match derive_params(&p) {
                Ok(d) => CellOutcome::Report(event_report_with(&p, &d)),
                Err(Error::DegenerateCoupling) => CellOutcome::Degenerate,
                Err(e) => return Err(e),
            };
            Ok(SweepCell { lambda, omega_c, outcome })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepGrid { lambda_axis: lambda_axis.to_vec(), omega_c_axis: omega_c_axis.to_vec(), cells })
}
