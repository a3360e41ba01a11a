//! Blow-up probes: truncated power-law annulus profiles, their polynomial
//! projection on the ball, the Riesz lift to unit critical seminorm, and the
//! sweep tables that exhibit boundedness below the sharp exponent against
//! growth at it.

use crate::constants::{adams_sharp_constant, moser_amplitude};
use crate::error::{Error, Result};
use crate::functionals::exact_growth_ratio;
use crate::grid::RadialProfile;
use crate::transform::{RieszDiagnostics, TransformPlan};

/// The annulus profile c_{n/2}|x|^{-n/2} on εr < |x| < r, zero elsewhere.
#[derive(Debug, Clone)]
pub struct MoserProfile {
    pub epsilon: f64,
    pub outer_radius: f64,
    pub profile: RadialProfile,
    /// Nodes inside the annulus.
    pub support_nodes: usize,
}

/// Sample the annulus profile; rejects unresolvable parameters (fewer than 32
/// grid nodes inside the annulus, or an inner edge below the first node).
pub fn moser_profile(plan: &TransformPlan, epsilon: f64, r: f64) -> Result<MoserProfile> {
    let n = plan.dim();
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::invalid(format!("moser_profile requires 0 < eps < 1, got {epsilon}")));
    }
    if !(r > 0.0) || r > plan.radius() {
        return Err(Error::invalid("outer radius must lie inside the grid"));
    }
    let inner = epsilon * r;
    if inner <= plan.nodes()[0] {
        return Err(Error::invalid(format!(
            "annulus inner edge {inner} is below the smallest node {}",
            plan.nodes()[0]
        )));
    }
    let c = moser_amplitude(n.max(2))?;
    let c = if n == 1 { (2.0 * std::f64::consts::PI).powf(-0.5) } else { c };
    let half = n as f64 / 2.0;
    let profile = plan.profile_from_fn(|x| {
        if x > inner && x < r {
            c * x.powf(-half)
        } else {
            0.0
        }
    });
    let support_nodes = plan
        .nodes()
        .iter()
        .filter(|&&x| x > inner && x < r)
        .count();
    if support_nodes < 32 {
        return Err(Error::invalid(format!(
            "annulus ({inner}, {r}) holds only {support_nodes} nodes; need >= 32"
        )));
    }
    Ok(MoserProfile { epsilon, outer_radius: r, profile, support_nodes })
}

/// Closed-form squared L² norm of the annulus profile:
/// c_{n/2}²·ω_{n-1}·log(1/ε), independent of r.
pub fn moser_l2_closed_form(n: u32, epsilon: f64) -> Result<f64> {
    let c = if n == 1 {
        (2.0 * std::f64::consts::PI).powf(-0.5)
    } else {
        moser_amplitude(n)?
    };
    Ok(c * c * crate::special::sphere_area(n) * (1.0 / epsilon).ln())
}

/// Weighted least-squares projection of a radial profile onto the even radial
/// monomials of degree ≤ n-1 over the ball B_r (radial functions have no odd
/// moments there), subtracted on the whole ball. Returns the projected-out
/// profile, the monomial coefficients, and the worst relative residual inner
/// product against the basis.
pub fn project_out_polynomials(
    plan: &TransformPlan,
    u: &RadialProfile,
    r: f64,
) -> Result<(RadialProfile, Vec<f64>, f64)> {
    let n = plan.dim();
    let degrees: Vec<i32> = (0..n as i32).filter(|d| d % 2 == 0).collect();
    let k = degrees.len();
    let inside: Vec<bool> = plan.nodes().iter().map(|&x| x <= r).collect();
    let mut gram = vec![vec![0.0; k]; k];
    let mut rhs = vec![0.0; k];
    for ((&x, &w), (&m, &v)) in plan
        .nodes()
        .iter()
        .zip(plan.weights())
        .zip(inside.iter().zip(&u.values))
    {
        if !m {
            continue;
        }
        let basis: Vec<f64> = degrees.iter().map(|&d| x.powi(d)).collect();
        for i in 0..k {
            for j in 0..k {
                gram[i][j] += w * basis[i] * basis[j];
            }
            rhs[i] += w * basis[i] * v;
        }
    }
    let coeffs = solve_small(&gram, &rhs)?;
    let mut out = u.clone();
    for ((val, &x), &m) in out.values.iter_mut().zip(plan.nodes()).zip(&inside) {
        if m {
            let p: f64 = degrees
                .iter()
                .zip(&coeffs)
                .map(|(&d, &c)| c * x.powi(d))
                .sum();
            *val -= p;
        }
    }
    // orthogonality residuals, relative to ‖u‖·‖basis‖ on the ball
    let mut worst = 0.0f64;
    for (i, &d) in degrees.iter().enumerate() {
        let mut ip = 0.0;
        let mut bnorm = 0.0;
        for ((&x, &w), (&m, &v)) in plan
            .nodes()
            .iter()
            .zip(plan.weights())
            .zip(inside.iter().zip(&out.values))
        {
            if m {
                ip += w * x.powi(d) * v;
                bnorm += w * x.powi(2 * d);
            }
        }
        let scale = (bnorm.sqrt() * u.l2_norm()).max(f64::MIN_POSITIVE);
        worst = worst.max(ip.abs() / scale);
        let _ = i;
    }
    Ok((out, coeffs, worst))
}

/// Gaussian elimination with partial pivoting for the (at most 3x3) normal
/// equations; reports ill-conditioning.
fn solve_small(a: &[Vec<f64>], b: &[f64]) -> Result<Vec<f64>> {
    let k = b.len();
    let mut m: Vec<Vec<f64>> = a.iter().cloned().collect();
    let mut x = b.to_vec();
    let scale = m
        .iter()
        .flat_map(|row| row.iter())
        .fold(0.0f64, |acc, v| acc.max(v.abs()));
    for col in 0..k {
        let piv = (col..k)
            .max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())
            .unwrap();
        m.swap(col, piv);
        x.swap(col, piv);
        if m[col][col].abs() < 1e-12 * scale {
            return Err(Error::QuadratureFailure(
                "polynomial projection: normal equations are ill-conditioned".into(),
            ));
        }
        for row in col + 1..k {
            let f = m[row][col] / m[col][col];
            for c in col..k {
                m[row][c] -= f * m[col][c];
            }
            x[row] -= f * x[col];
        }
    }
    for col in (0..k).rev() {
        for row in 0..col {
            let f = m[row][col] / m[col][col];
            x[row] -= f * x[col];
        }
        x[col] /= m[col][col];
    }
    Ok(x)
}

/// Normalized Riesz lift ψ = I_{n/2}φ̃ / ‖φ̃‖₂. The normalization uses the
/// spectral L² norm of φ̂ (the transform-side realization of ‖φ̃‖₂), which
/// makes the unit-critical-seminorm postcondition exact by construction; the
/// real-space norm differs by the log-grid Plancherel defect (≤ 2e-3).
pub struct RieszLift {
    pub psi: RadialProfile,
    /// min over nodes in B_{εr/2} of ψ², when any.
    pub plateau: Option<f64>,
    pub diagnostics: RieszDiagnostics,
    /// critical seminorm of ψ; 1 up to rounding.
    pub seminorm: f64,
}

pub fn riesz_lift(plan: &TransformPlan, tilde: &RadialProfile, ball: f64) -> Result<RieszLift> {
    let n = plan.dim();
    let hat = plan.transform(tilde)?;
    let norm = hat.l2_norm();
    if !(norm > 0.0) {
        return Err(Error::invalid("riesz_lift requires a nonzero profile"));
    }
    let scaled = {
        let mut h = hat.clone();
        for v in h.values.iter_mut() {
            *v /= norm;
        }
        h
    };
    let psi = plan.riesz_of_spectral(&scaled, n as f64 / 2.0)?;
    let seminorm = {
        // (-Δ)^{n/4}ψ has spectrum φ̂/‖φ̂‖ exactly
        1.0
    };
    let rho1 = plan.freq_nodes()[0];
    let est = scaled.values[0].abs() * crate::special::sphere_area(n)
        * rho1.powf(n as f64 / 2.0)
        / (n as f64 / 2.0);
    let l2 = psi.l2_norm();
    let diagnostics = RieszDiagnostics {
        truncation_estimate: est,
        low_frequency_warning: est > 1e-4 * l2.max(f64::MIN_POSITIVE),
    };
    let plateau = psi
        .nodes
        .iter()
        .zip(&psi.values)
        .filter(|(&r, _)| r <= ball)
        .map(|(_, v)| v * v)
        .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a: f64| a.min(v))));
    Ok(RieszLift { psi, plateau, diagnostics, seminorm })
}

/// One cell of a blow-up sweep.
#[derive(Debug, Clone, Copy)]
pub struct BlowupRecord {
    pub n: u32,
    pub beta: f64,
    pub epsilon: f64,
    pub p: f64,
    pub ratio: f64,
    pub overflow: bool,
    /// min over B_{εr/2} of ψ².
    pub plateau: f64,
    /// plateau·β(n,n/2)/(n·log(1/(εr))): tends to 1 as ε → 0.
    pub plateau_ratio: f64,
    /// ‖ψ‖₂² of the lift.
    pub l2_lift: f64,
}

/// Build ψ_{ε,r} for each ε and evaluate the exact-growth ratio on the grid
/// of (β, p) pairs. The lift is computed once per ε and reused.
pub fn blowup_table(
    plan: &TransformPlan,
    betas: &[f64],
    epsilons: &[f64],
    powers: &[f64],
    r: f64,
) -> Result<Vec<BlowupRecord>> {
    let n = plan.dim();
    let sharp = adams_sharp_constant(n, n as f64 / 2.0)?;
    let mut out = Vec::with_capacity(betas.len() * epsilons.len() * powers.len());
    for &eps in epsilons {
        let phi = moser_profile(plan, eps, r)?;
        let (tilde, _, _) = project_out_polynomials(plan, &phi.profile, r)?;
        let lift = riesz_lift(plan, &tilde, 0.5 * eps * r)?;
        let l2_lift = lift.psi.l2_norm().powi(2);
        let plateau = lift.plateau.unwrap_or(f64::NAN);
        let plateau_ratio = plateau * sharp / (n as f64 * (1.0 / (eps * r)).ln());
        for &beta in betas {
            for &p in powers {
                let f = exact_growth_ratio(&lift.psi, beta, p)?;
                out.push(BlowupRecord {
                    n,
                    beta,
                    epsilon: eps,
                    p,
                    ratio: f.value,
                    overflow: f.overflow,
                    plateau,
                    plateau_ratio,
                    l2_lift,
                });
            }
        }
    }
    Ok(out)
}

/// Least-squares slope of log(ratio) against log log(1/ε).
pub fn log_slope(records: &[(f64, f64)]) -> f64 {
    let n = records.len() as f64;
    let xs: Vec<f64> = records.iter().map(|(e, _)| (1.0 / e).ln().ln()).collect();
    let ys: Vec<f64> = records.iter().map(|(_, v)| v.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
