//! Search procedures: critical normalization, the Nehari-type scaling root,
//! subcritical-ratio maximization with rearrangement projection, and the
//! constrained ground-state minimization.
//!
//! Both searches act on functionals that are exactly dilation-invariant, so
//! the discrete problem has a flat direction along which iterates can drift
//! to under-resolved scales (where the frequency cutoff lets seminorm mass
//! leak). The search direction is therefore projected against the dilation
//! generator r·u'(r) in addition to the constraint gradient, with an L²-band
//! re-anchor as backstop, and preconditioned by 1/(1+ρ³) in frequency.

use crate::constants::adams_sharp_constant;
use crate::error::{Error, Result};
use crate::extension::{extend, HalfSpaceField};
use crate::functionals::{beta_trace2, big_g_lambda, i_lambda_via_trace, j_lambda, tm_ratio};
use crate::grid::RadialProfile;
use crate::rearrangement::fourier_rearrange;
use crate::transform::{exp_clamped, TransformPlan};

/// Outcome of `normalize_critical`.
#[derive(Debug, Clone)]
pub struct NormalizedProfile {
    pub profile: RadialProfile,
    /// Amplitude division that set the critical seminorm to 1.
    pub amplitude: f64,
    /// Dilation factor λ in u(λ·) that set the L² norm to 1.
    pub dilation: f64,
}

/// Scale u to the doubly-normalized representative: first amplitude-scale to
/// unit critical seminorm, then dilate by ‖·‖₂^{2/n} so the L² norm is 1 as
/// well (the critical seminorm is dilation-invariant and unaffected).
pub fn normalize_critical(plan: &TransformPlan, u: &RadialProfile) -> Result<NormalizedProfile> {
    let n = plan.dim();
    let s = plan.sobolev_seminorm(u, n as f64 / 4.0)?;
    if !(s > 0.0) {
        return Err(Error::invalid("normalize_critical requires a nonzero profile"));
    }
    let w = u.scaled(1.0 / s);
    let lambda = w.l2_norm().powf(2.0 / n as f64);
    let profile = plan.resample_dilated(&w, lambda)?;
    Ok(NormalizedProfile { profile, amplitude: s, dilation: lambda })
}

/// Root s₀ of h(s) = G_λ(s·u): bisection inside a geometrically grown
/// bracket. h(s)/s² is strictly decreasing, so the root is unique;
/// |h(s₀)| ≤ 1e-10·(1-λ)‖u‖₂²·s₀² on return.
pub fn nehari_scale(plan: &TransformPlan, u: &RadialProfile, lambda: f64) -> Result<f64> {
    let _ = plan;
    let l2sq = u.l2_norm().powi(2);
    if !(l2sq > 0.0) {
        return Err(Error::invalid("nehari_scale requires a nonzero profile"));
    }
    let h = |s: f64| -> Result<f64> { Ok(big_g_lambda(&u.scaled(s), lambda)?.0) };
    let mut lo = 1e-6;
    let mut hi = 1.0;
    if h(hi)? > 0.0 {
        while h(hi)? > 0.0 {
            hi *= 2.0;
            if hi > 1e8 {
                return Err(Error::SearchFailure(
                    "nehari_scale: no sign change before the overflow clamp; profile too concentrated for the grid".into(),
                ));
            }
        }
        lo = hi / 2.0;
    } else {
        while h(lo)? < 0.0 {
            lo *= 0.5;
            if lo < 1e-300 {
                return Err(Error::SearchFailure("nehari_scale: h negative at all scales".into()));
            }
        }
    }
    let tol_scale = 1e-10 * (1.0 - lambda) * l2sq;
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..200 {
        mid = 0.5 * (lo + hi);
        let hm = h(mid)?;
        if hm.abs() <= tol_scale * mid * mid || (hi - lo) < 1e-15 * hi {
            break;
        }
        if hm > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(mid)
}

/// r·u'(r) by central differences on the uniform midpoint grid; even
/// reflection across the origin, zero past R.
fn dilation_generator(plan: &TransformPlan, u: &RadialProfile) -> Vec<f64> {
    let n = u.values.len();
    let h = plan.radius() / n as f64;
    let v = &u.values;
    let mut g = vec![0.0; n];
    g[0] = (v[1] - v[0]) / (2.0 * h);
    g[n - 1] = -v[n - 2] / (2.0 * h);
    for i in 1..n - 1 {
        g[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    }
    for (gi, r) in g.iter_mut().zip(plan.nodes()) {
        *gi *= r;
    }
    g
}

fn weighted_ip(plan: &TransformPlan, a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .zip(plan.weights())
        .map(|((x, y), w)| w * x * y)
        .sum()
}

/// Project `d` against the span of the given directions (weighted metric).
fn project_out(plan: &TransformPlan, d: &mut [f64], dirs: &[&[f64]]) {
    match dirs.len() {
        1 => {
            let g = dirs[0];
            let gg = weighted_ip(plan, g, g);
            if gg > 0.0 {
                let c = weighted_ip(plan, d, g) / gg;
                for (di, gi) in d.iter_mut().zip(g) {
                    *di -= c * gi;
                }
            }
        }
        2 => {
            let (g1, g2) = (dirs[0], dirs[1]);
            let a11 = weighted_ip(plan, g1, g1);
            let a12 = weighted_ip(plan, g1, g2);
            let a22 = weighted_ip(plan, g2, g2);
            let det = a11 * a22 - a12 * a12;
            if det.abs() > 1e-14 * a11 * a22 {
                let b1 = weighted_ip(plan, d, g1);
                let b2 = weighted_ip(plan, d, g2);
                let c1 = (b1 * a22 - b2 * a12) / det;
                let c2 = (a11 * b2 - a12 * b1) / det;
                for ((di, x), y) in d.iter_mut().zip(g1).zip(g2) {
                    *di -= c1 * x + c2 * y;
                }
            } else {
                project_out(plan, d, &[g1]);
            }
        }
        _ => {}
    }
}

/// Apply the spectral preconditioner d ← F⁻¹[ F d / (1+ρ³) ].
fn precondition(plan: &TransformPlan, d: &[f64]) -> Result<Vec<f64>> {
    let prof = plan.profile_from_values(d.to_vec())?;
    let mut hat = plan.transform(&prof)?;
    for (v, p) in hat.values.iter_mut().zip(plan.freq_nodes()) {
        *v /= 1.0 + p * p * p;
    }
    Ok(plan.inverse_transform(&hat)?.values)
}

#[derive(Debug, Clone, Copy)]
pub struct MaximizerOptions {
    pub max_iter: usize,
    pub rearrange_every: usize,
    /// Relative F gain below which the ascent is considered stalled.
    pub rel_tol: f64,
    /// Refuse β above (1 - margin)·β(n, n/2).
    pub beta_margin: f64,
    pub seed: u64,
}

impl Default for MaximizerOptions {
    fn default() -> Self {
        MaximizerOptions {
            max_iter: 5000,
            rearrange_every: 5,
            rel_tol: 1e-9,
            beta_margin: 0.05,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct MaximizerResult {
    pub beta: f64,
    pub profile: RadialProfile,
    /// Final F_β value.
    pub value: f64,
    /// ‖∇F - μ∇C‖/‖∇F‖ at the final iterate.
    pub el_residual: f64,
    /// F_β after every accepted step; nondecreasing.
    pub trace: Vec<f64>,
    pub iterations: usize,
    /// |seminorm - 1| at the final iterate.
    pub seminorm_residual: f64,
    /// sup|u^♯ - u|/sup|u| at the final iterate.
    pub rearrange_fix_distance: f64,
    pub overflow: bool,
    pub seed: u64,
}

/// Projected gradient ascent on F_β over the unit critical-seminorm sphere,
/// with the Fourier rearrangement applied as a periodic projection.
pub fn maximize_subcritical(
    plan: &TransformPlan,
    beta: f64,
    init: &RadialProfile,
    opts: MaximizerOptions,
) -> Result<MaximizerResult> {
    let n = plan.dim();
    let crit = n as f64 / 4.0;
    let sharp = adams_sharp_constant(n, n as f64 / 2.0)?;
    if !(beta > 0.0) || beta > (1.0 - opts.beta_margin) * sharp {
        return Err(Error::invalid(format!(
            "maximize_subcritical: beta = {beta} refused; must lie in (0, {:.6}] = (1 - {})·β(n, n/2)",
            (1.0 - opts.beta_margin) * sharp,
            opts.beta_margin
        )));
    }
    let s0 = plan.sobolev_seminorm(init, crit)?;
    if !(s0 > 0.0) {
        return Err(Error::invalid("maximize_subcritical requires a nonzero start"));
    }
    let normalize = |u: &RadialProfile| -> Result<RadialProfile> {
        let s = plan.sobolev_seminorm(u, crit)?;
        Ok(u.scaled(1.0 / s))
    };
    let mut u = normalize(init)?;
    let anchor = u.l2_norm().powi(2);
    let mut f = tm_ratio(&u, beta)?;
    let mut trace = vec![f.value];
    let mut eta = 1e-3;
    let mut stall = 0usize;
    let mut iters = 0usize;
    while iters < opts.max_iter {
        iters += 1;
        // dilation re-anchor (backstop; the projection below keeps scale)
        let l2 = u.l2_norm().powi(2);
        if l2 < 0.5 * anchor || l2 > 2.0 * anchor {
            if let Ok(r) = plan.resample_dilated(&u, (l2 / anchor).powf(1.0 / n as f64)) {
                if let Ok(rn) = normalize(&r) {
                    if let Ok(fr) = tm_ratio(&rn, beta) {
                        if fr.value >= f.value {
                            u = rn;
                            f = fr;
                        }
                    }
                }
            }
        }
        let hat = plan.transform(&u)?;
        let mut mult = hat.clone();
        for (v, p) in mult.values.iter_mut().zip(plan.freq_nodes()) {
            *v *= p.powf(4.0 * crit);
        }
        let g_con: Vec<f64> = plan
            .inverse_transform(&mult)?
            .values
            .iter()
            .map(|v| 2.0 * v)
            .collect();
        let g_dil = dilation_generator(plan, &u);
        let l2 = u.l2_norm().powi(2);
        let mut g_f: Vec<f64> = u
            .values
            .iter()
            .map(|&v| {
                let (e, _) = exp_clamped(beta * v * v);
                (2.0 * beta * v * e - 2.0 * f.value * v) / l2
            })
            .collect();
        project_out(plan, &mut g_f, &[&g_con, &g_dil]);
        let d = precondition(plan, &g_f)?;
        let mut accepted = false;
        let mut f_new = f;
        let mut u_new = u.clone();
        for _ in 0..60 {
            let trial: Vec<f64> = u
                .values
                .iter()
                .zip(&d)
                .map(|(v, d)| v + eta * d)
                .collect();
            let trial = normalize(&plan.profile_from_values(trial)?)?;
            let ft = tm_ratio(&trial, beta)?;
            if ft.value > f.value {
                u_new = trial;
                f_new = ft;
                accepted = true;
                break;
            }
            eta *= 0.5;
        }
        if !accepted {
            break;
        }
        let rel = (f_new.value - f.value) / f_new.value.abs();
        u = u_new;
        f = f_new;
        trace.push(f.value);
        eta = (eta * 1.4).min(10.0);
        if iters % opts.rearrange_every == 0 {
            let (sharp_u, _) = fourier_rearrange(plan, &u, crit)?;
            let sharp_u = normalize(&sharp_u)?;
            let fs = tm_ratio(&sharp_u, beta)?;
            if fs.value >= f.value - 1e-12 * f.value.abs() {
                if fs.value > f.value {
                    trace.push(fs.value);
                }
                let best = fs.value.max(f.value);
                u = sharp_u;
                f = fs;
                f.value = best;
            }
        }
        if rel < opts.rel_tol {
            stall += 1;
            if stall >= 5 {
                break;
            }
        } else {
            stall = 0;
        }
    }
    // final polish: land on a rearrangement fixed point
    let (sharp_u, _) = fourier_rearrange(plan, &u, crit)?;
    let sharp_u = normalize(&sharp_u)?;
    let fs = tm_ratio(&sharp_u, beta)?;
    if fs.value >= f.value - 1e-12 * f.value.abs() {
        if fs.value > f.value {
            trace.push(fs.value);
        }
        let best = fs.value.max(f.value);
        u = sharp_u;
        f = fs;
        f.value = best;
    }
    // Euler–Lagrange residual and diagnostics
    let l2 = u.l2_norm().powi(2);
    let g_f: Vec<f64> = u
        .values
        .iter()
        .map(|&v| {
            let (e, _) = exp_clamped(beta * v * v);
            (2.0 * beta * v * e - 2.0 * f.value * v) / l2
        })
        .collect();
    let hat = plan.transform(&u)?;
    let mut mult = hat.clone();
    for (v, p) in mult.values.iter_mut().zip(plan.freq_nodes()) {
        *v *= p.powf(4.0 * crit);
    }
    let g_con: Vec<f64> = plan
        .inverse_transform(&mult)?
        .values
        .iter()
        .map(|v| 2.0 * v)
        .collect();
    let mu = weighted_ip(plan, &g_f, &g_con) / weighted_ip(plan, &g_con, &g_con);
    let mut resid = 0.0;
    for ((gf, gc), w) in g_f.iter().zip(&g_con).zip(plan.weights()) {
        let r = gf - mu * gc;
        resid += w * r * r;
    }
    let el_residual = (resid / weighted_ip(plan, &g_f, &g_f).max(f64::MIN_POSITIVE)).sqrt();
    let (resharp, _) = fourier_rearrange(plan, &u, crit)?;
    let sup = u.values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let fix = resharp
        .values
        .iter()
        .zip(&u.values)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max)
        / sup.max(f64::MIN_POSITIVE);
    let seminorm_residual = (plan.sobolev_seminorm(&u, crit)? - 1.0).abs();
    Ok(MaximizerResult {
        beta,
        value: f.value,
        el_residual,
        trace,
        iterations: iters,
        seminorm_residual,
        rearrange_fix_distance: fix,
        overflow: f.overflow,
        profile: u,
        seed: opts.seed,
    })
}

#[derive(Debug, Clone)]
pub struct GroundStateOptions {
    pub max_iter: usize,
    pub rel_tol: f64,
    /// Gaussian start widths for the multi-start sweep.
    pub start_widths: Vec<f64>,
    pub seed: u64,
}

impl Default for GroundStateOptions {
    fn default() -> Self {
        GroundStateOptions {
            max_iter: 2500,
            rel_tol: 3e-13,
            start_widths: vec![0.5, 1.0, 2.0],
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GroundStateResult {
    pub lambda: f64,
    /// Best constrained-infimum estimate A_λ = ‖(-Δ)^{3/4}v‖₂².
    pub a_lambda: f64,
    pub profile: RadialProfile,
    /// |G_λ(v)| at the minimizer.
    pub constraint_residual: f64,
    /// (max - min)/mean of the per-start values.
    pub restart_spread: f64,
    pub restart_values: Vec<f64>,
    /// J_λ at the minimizer; equals A_λ on the constraint manifold.
    pub j_value: f64,
    pub iterations: usize,
    pub seed: u64,
}

fn seminorm_sq(plan: &TransformPlan, v: &RadialProfile) -> Result<f64> {
    let s = plan.sobolev_seminorm(v, 0.75)?;
    Ok(s * s)
}

/// One projected-gradient descent of ‖(-Δ)^{3/4}·‖₂² on {G_λ = 0} from the
/// given start. Returns (objective, minimizer, iterations).
fn ground_state_descent(
    plan: &TransformPlan,
    lambda: f64,
    init: &RadialProfile,
    opts: &GroundStateOptions,
) -> Result<(f64, RadialProfile, usize)> {
    let b = beta_trace2();
    let s = nehari_scale(plan, init, lambda)?;
    let mut v = init.scaled(s);
    let anchor = v.l2_norm().powi(2);
    let mut q = seminorm_sq(plan, &v)?;
    let mut eta = 0.5;
    let mut stall = 0usize;
    let mut iters = 0usize;
    while iters < opts.max_iter {
        iters += 1;
        let l2 = v.l2_norm().powi(2);
        if l2 < 0.5 * anchor || l2 > 2.0 * anchor {
            if let Ok(r) = plan.resample_dilated(&v, (l2 / anchor).powf(1.0 / 3.0)) {
                if let Ok(sr) = nehari_scale(plan, &r, lambda) {
                    let rv = r.scaled(sr);
                    v = rv;
                    q = seminorm_sq(plan, &v)?;
                }
            }
        }
        let hat = plan.transform(&v)?;
        let mut mult = hat.clone();
        for (val, p) in mult.values.iter_mut().zip(plan.freq_nodes()) {
            *val *= p * p * p;
        }
        let g_q: Vec<f64> = plan
            .inverse_transform(&mult)?
            .values
            .iter()
            .map(|x| 2.0 * x)
            .collect();
        let g_con: Vec<f64> = v
            .values
            .iter()
            .map(|&x| {
                let (e, _) = exp_clamped(b * x * x);
                2.0 * x - 2.0 * lambda * x * e
            })
            .collect();
        let g_dil = dilation_generator(plan, &v);
        let mut d = g_q;
        project_out(plan, &mut d, &[&g_con, &g_dil]);
        let d = precondition(plan, &d)?;
        let mut accepted = false;
        let mut q_new = q;
        let mut v_new = v.clone();
        for _ in 0..70 {
            let trial: Vec<f64> = v
                .values
                .iter()
                .zip(&d)
                .map(|(x, d)| x - eta * d)
                .collect();
            let trial = plan.profile_from_values(trial)?;
            let st = match nehari_scale(plan, &trial, lambda) {
                Ok(s) => s,
                Err(_) => {
                    eta *= 0.5;
                    continue;
                }
            };
            let cand = trial.scaled(st);
            let qc = seminorm_sq(plan, &cand)?;
            if qc < q {
                v_new = cand;
                q_new = qc;
                accepted = true;
                break;
            }
            eta *= 0.5;
        }
        if !accepted {
            break;
        }
        let rel = (q - q_new) / q.max(f64::MIN_POSITIVE);
        v = v_new;
        q = q_new;
        eta = (eta * 1.5).min(4.0);
        if rel < opts.rel_tol {
            stall += 1;
            if stall > 8 {
                break;
            }
        } else {
            stall = 0;
        }
    }
    Ok((q, v, iters))
}

/// Multi-start constrained minimization of A_λ from the given start profiles.
/// Starts whose Nehari projection fails are dropped; all-failed is an error,
/// as is a converged value outside the (0, 1/2) window.
pub fn ground_state_with_starts(
    plan: &TransformPlan,
    lambda: f64,
    starts: &[RadialProfile],
    opts: &GroundStateOptions,
) -> Result<GroundStateResult> {
    if plan.dim() != 3 {
        return Err(Error::invalid("ground_state is posed on the n = 3 boundary"));
    }
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::invalid(format!("lambda must lie in (0,1), got {lambda}")));
    }
    let mut best: Option<(f64, RadialProfile)> = None;
    let mut values = Vec::new();
    let mut total_iters = 0usize;
    for start in starts {
        match ground_state_descent(plan, lambda, start, opts) {
            Ok((q, v, it)) => {
                total_iters += it;
                values.push(q);
                if best.as_ref().map_or(true, |(bq, _)| q < *bq) {
                    best = Some((q, v));
                }
            }
            Err(Error::SearchFailure(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    let (a, v) = best.ok_or_else(|| {
        Error::SearchFailure("ground_state: every start failed its Nehari projection".into())
    })?;
    if !(a > 0.0 && a < 0.5) {
        return Err(Error::SearchFailure(format!(
            "ground_state: converged value {a} outside the (0, 1/2) window"
        )));
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let spread = if values.len() > 1 {
        let max = values.iter().cloned().fold(f64::MIN, f64::max);
        let min = values.iter().cloned().fold(f64::MAX, f64::min);
        (max - min) / mean
    } else {
        0.0
    };
    let (g, _) = big_g_lambda(&v, lambda)?;
    let j = j_lambda(plan, &v, lambda)?;
    Ok(GroundStateResult {
        lambda,
        a_lambda: a,
        constraint_residual: g.abs(),
        restart_spread: spread,
        restart_values: values,
        j_value: j,
        iterations: total_iters,
        profile: v,
        seed: opts.seed,
    })
}

/// Multi-start ground state from Gaussian starts of the configured widths.
pub fn ground_state(
    plan: &TransformPlan,
    lambda: f64,
    opts: &GroundStateOptions,
) -> Result<GroundStateResult> {
    let starts: Vec<RadialProfile> = opts
        .start_widths
        .iter()
        .map(|&w| plan.profile_from_fn(|r| (-r * r / (2.0 * w * w)).exp()))
        .collect();
    ground_state_with_starts(plan, lambda, &starts, opts)
}

#[derive(Debug)]
pub struct LiftedGroundState {
    pub field: HalfSpaceField,
    pub i_lambda: f64,
    pub j_lambda: f64,
    /// sup|∂_y V(·,0)| / sup|v|.
    pub neumann_residual: f64,
    /// ∫|ΔV|² from the extension's quadrature energy factor.
    pub bulk_energy: f64,
}

/// Bi-harmonic lift of the converged ground state, with the functional
/// identity and the Neumann trace condition evaluated numerically.
pub fn lift_ground_state(
    plan: &TransformPlan,
    result: &GroundStateResult,
) -> Result<LiftedGroundState> {
    let v = &result.profile;
    let field = extend(plan, v, 2)?;
    let i = i_lambda_via_trace(plan, v, result.lambda)?;
    let j = j_lambda(plan, v, result.lambda)?;
    let dv = field.vertical_derivative_at_trace(plan)?;
    let sup_v = v.values.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let neumann = dv.iter().fold(0.0f64, |a, x| a.max(x.abs())) / sup_v.max(f64::MIN_POSITIVE);
    let bulk = field.energy()?;
    Ok(LiftedGroundState { field, i_lambda: i, j_lambda: j, neumann_residual: neumann, bulk_energy: bulk })
}

/// Catmull–Rom evaluation of a uniform-midpoint-grid profile at arbitrary x,
/// with even reflection at the origin (used to warm-start refined grids).
pub fn eval_uniform(plan: &TransformPlan, u: &RadialProfile, x: f64) -> f64 {
    let n = u.values.len();
    let h = plan.radius() / n as f64;
    if x >= plan.radius() - 2.0 * h {
        return 0.0;
    }
    let fetch = |j: isize| -> f64 {
        if j < 0 {
            u.values[(-j - 1) as usize]
        } else if (j as usize) < n {
            u.values[j as usize]
        } else {
            0.0
        }
    };
    let xi = x / h - 0.5;
    let k = xi.floor() as isize;
    let t = xi - k as f64;
    let (p0, p1, p2, p3) = (fetch(k - 1), fetch(k), fetch(k + 1), fetch(k + 2));
    0.5 * (2.0 * p1
        + (-p0 + p2) * t
        + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * t * t
        + (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * t * t * t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{GridScheme, GridSpec};
    use crate::transform::make_grid;
    use approx::assert_relative_eq;

    fn plan(n: u32, len: usize) -> TransformPlan {
        make_grid(GridSpec::new(n, 48.0, len, GridScheme::Uniform)).unwrap()
    }

    #[test]
    fn normalize_critical_gaussian() {
        let p = plan(3, 768);
        // unit-seminorm Gaussian family: dilation does not change the
        // critical seminorm, so tune the width until ‖u‖₂ = 2.
        let s_unit = p
            .sobolev_seminorm(&p.profile_from_fn(|r| (-0.5 * r * r).exp()), 0.75)
            .unwrap();
        let base = p.profile_from_fn(|r| (-0.5 * r * r).exp() / s_unit);
        let l2 = base.l2_norm();
        let sigma = (2.0 / l2).powf(2.0 / 3.0); // ‖u(·/σ)‖₂ = σ^{3/2}‖u‖₂
        let u = p.profile_from_fn(|r| (-0.5 * (r / sigma) * (r / sigma)).exp() / s_unit);
        assert_relative_eq!(u.l2_norm(), 2.0, max_relative = 1e-10);
        let out = normalize_critical(&p, &u).unwrap();
        assert_relative_eq!(out.dilation, 2f64.powf(2.0 / 3.0), max_relative = 1e-8);
        assert!((out.profile.l2_norm() - 1.0).abs() < 1e-6);
        let s_after = p.sobolev_seminorm(&out.profile, 0.75).unwrap();
        assert!((s_after - 1.0).abs() < 1e-6, "seminorm after {s_after}");
        // already normalized input: dilation factor 1
        let again = normalize_critical(&p, &out.profile).unwrap();
        assert!((again.dilation - 1.0).abs() < 1e-6);
    }

    #[test]
    fn nehari_root_properties() {
        let p = plan(3, 512);
        let u = p.profile_from_fn(|r| (-0.5 * r * r).exp());
        let lam = 0.5;
        let s0 = nehari_scale(&p, &u, lam).unwrap();
        // on-manifold input has root 1
        let on_manifold = u.scaled(s0);
        let s1 = nehari_scale(&p, &on_manifold, lam).unwrap();
        assert!((s1 - 1.0).abs() < 1e-8, "s1 = {s1}");
        // monotone bracket
        let (h_half, _) = big_g_lambda(&u.scaled(0.5 * s0), lam).unwrap();
        let (h_double, _) = big_g_lambda(&u.scaled(2.0 * s0), lam).unwrap();
        assert!(h_half > 0.0 && h_double < 0.0);
        // fine-scan oracle: first sign change within one scan cell
        let mut prev = 1e-4;
        let mut cell = None;
        for k in 1..10_000 {
            let s = 1e-4 * (10f64.powf(5.0 * k as f64 / 10_000.0));
            let (h, _) = big_g_lambda(&u.scaled(s), lam).unwrap();
            if h < 0.0 {
                cell = Some((prev, s));
                break;
            }
            prev = s;
        }
        let (lo, hi) = cell.expect("scan found no sign change");
        assert!(lo <= s0 && s0 <= hi, "s0 = {s0} not in [{lo}, {hi}]");
    }

    #[test]
    fn maximizer_contract() {
        let p = plan(3, 512);
        let beta = 0.9 * adams_sharp_constant(3, 1.5).unwrap();
        let init = p.profile_from_fn(|r| (-0.5 * r * r).exp());
        let f0 = {
            let s = p.sobolev_seminorm(&init, 0.75).unwrap();
            tm_ratio(&init.scaled(1.0 / s), beta).unwrap().value
        };
        let res = maximize_subcritical(&p, beta, &init, MaximizerOptions::default()).unwrap();
        assert!(res.value >= f0);
        assert!(res.value > beta);
        assert!(res.seminorm_residual <= 1e-8);
        assert!(res.rearrange_fix_distance <= 1e-6);
        for w in res.trace.windows(2) {
            assert!(w[1] >= w[0] - 1e-12 * w[0].abs());
        }
        // too-critical β refused
        let sharp = adams_sharp_constant(3, 1.5).unwrap();
        assert!(maximize_subcritical(&p, 0.97 * sharp, &init, MaximizerOptions::default()).is_err());
    }

    #[test]
    fn ground_state_window_and_agreement() {
        let p = plan(3, 384);
        let res = ground_state(&p, 0.5, &GroundStateOptions::default()).unwrap();
        assert!(res.a_lambda > 0.0 && res.a_lambda < 0.5);
        assert!(res.restart_spread < 0.01, "spread {}", res.restart_spread);
        let scale = (1.0 - res.lambda) * res.profile.l2_norm().powi(2);
        assert!(res.constraint_residual <= 1e-6 * scale);
        // J_λ equals A_λ on the manifold
        assert!((res.j_value - res.a_lambda).abs() <= 1e-8 * res.a_lambda.max(1.0));
    }

    #[test]
    fn ground_state_refinement_does_not_increase() {
        let coarse = plan(3, 256);
        let opts = GroundStateOptions::default();
        let res = ground_state(&coarse, 0.5, &opts).unwrap();
        let fine = plan(3, 512);
        let warm = fine.profile_from_fn(|r| eval_uniform(&coarse, &res.profile, r));
        let refined = ground_state_with_starts(&fine, 0.5, &[warm], &opts).unwrap();
        assert!(
            refined.a_lambda <= res.a_lambda + 1e-8,
            "coarse {} fine {}",
            res.a_lambda,
            refined.a_lambda
        );
    }

    #[test]
    fn lift_identities() {
        let p = plan(3, 384);
        let res = ground_state(&p, 0.5, &GroundStateOptions::default()).unwrap();
        let lift = lift_ground_state(&p, &res).unwrap();
        assert!(
            (lift.i_lambda - lift.j_lambda).abs() <= 1e-8 * lift.j_lambda.abs().max(1.0),
            "I = {}, J = {}",
            lift.i_lambda,
            lift.j_lambda
        );
        assert!(lift.neumann_residual <= 1e-8, "neumann {}", lift.neumann_residual);
        // bulk = 2·seminorm² up to the energy-factor quadrature
        let s = p.sobolev_seminorm(&res.profile, 0.75).unwrap();
        assert!((lift.bulk_energy - 2.0 * s * s).abs() <= 1e-8 * (s * s).max(1.0));
    }
}
