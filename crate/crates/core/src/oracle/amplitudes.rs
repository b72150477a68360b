use num_complex::Complex64;

use super::rk4::Rk4;
use super::OracleConfig;
use crate::error::{Error, Result};
use crate::model::{Amplitudes, DerivedParams};

/// Largest `h·(g' + |Δ2|)` accepted by the integrator, inside the RK4
/// stability interval on the imaginary axis.
const STABILITY_LIMIT: f64 = 2.8;

/// Integrates the interaction-picture pair
/// `i f1' = g' e^{iΔ2 t} f2`, `i f2' = g' e^{−iΔ2 t} f1` from `(1, 0)` at
/// `t = 0` and samples it on `t_grid`.
pub fn integrate_amplitudes(d: &DerivedParams, t_grid: &[f64], cfg: &OracleConfig) -> Result<Vec<Amplitudes>> {
    cfg.validate()?;
    if t_grid.iter().any(|t| !t.is_finite() || *t < 0.0) || t_grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::invalid("time grid must be finite, non-negative and ascending"));
    }
    let h = cfg.step_for(d);
    if h * (d.g_prime + d.delta2.abs()) > STABILITY_LIMIT {
        return Err(Error::invalid(format!("step {h} is too large for stable integration")));
    }

    let (g, delta) = (d.g_prime, d.delta2);
    let rhs = move |t: f64, y: &[Complex64], dy: &mut [Complex64]| {
        let phase = Complex64::from_polar(1.0, delta * t);
        // y' = −i (...)
        dy[0] = Complex64::new(0.0, -g) * phase * y[1];
        dy[1] = Complex64::new(0.0, -g) * phase.conj() * y[0];
    };

    let mut rk = Rk4::new(2);
    let mut y = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
    let mut t = 0.0;
    let mut out = Vec::with_capacity(t_grid.len());
    for &target in t_grid {
        rk.advance(&rhs, t, target, h, &mut y);
        t = target.max(t);
        out.push(Amplitudes { t: target, f1: y[0], f2: y[1] });
    }
    Ok(out)
}
