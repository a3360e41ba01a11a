//! Scalar functionals: the subcritical ratio F_β, exact-growth ratios, the
//! constrained-minimization functionals g_λ/G_λ/J_λ/I_λ, the dimension-2
//! radial reduction, the radial Hardy–Rellich margin, and the rearrangement
//! comparison bound.

use crate::constants::reduction_scale;
use crate::error::{Error, Result};
use crate::extension::extend;
use crate::grid::{GridSpec, RadialProfile};
use crate::rearrangement::fourier_rearrange;
use crate::special::{gamma, sphere_area};
use crate::transform::{exp_clamped, TransformPlan};
use std::f64::consts::PI;

/// 12π², the exponent scale of the order-2 trace functionals.
pub fn beta_trace2() -> f64 {
    12.0 * PI * PI
}

/// A ratio-functional evaluation with its contributing integrals.
#[derive(Debug, Clone, Copy)]
pub struct FunctionalValue {
    pub value: f64,
    pub overflow: bool,
    pub numerator: f64,
    pub denominator: f64,
}

/// Denominator convention of the exact-growth integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GrowthDenominator {
    /// (1 + |u|)^p — the theorem-side convention (default).
    PowerOfOnePlusAbs(f64),
    /// 1 + |u|² — the comparison-lemma convention.
    OnePlusSquare,
}

fn ratio_over(
    u: &RadialProfile,
    beta: f64,
    den: GrowthDenominator,
) -> Result<FunctionalValue> {
    let l2sq = u.l2_norm().powi(2);
    if !(l2sq > 0.0) {
        return Err(Error::invalid("ratio functionals require a nonzero profile"));
    }
    let mut num = 0.0;
    let mut overflow = false;
    for (v, w) in u.values.iter().zip(u.weights.iter()) {
        let (e, of) = exp_clamped(beta * v * v);
        overflow |= of;
        let d = match den {
            GrowthDenominator::PowerOfOnePlusAbs(p) => (1.0 + v.abs()).powf(p),
            GrowthDenominator::OnePlusSquare => 1.0 + v * v,
        };
        num += w * (e - 1.0) / d;
    }
    Ok(FunctionalValue { value: num / l2sq, overflow, numerator: num, denominator: l2sq })
}

/// F_β(u) = ∫(exp(βu²) - 1) / ‖u‖₂². Strictly exceeds β for every nonzero u.
pub fn tm_ratio(u: &RadialProfile, beta: f64) -> Result<FunctionalValue> {
    ratio_over(u, beta, GrowthDenominator::PowerOfOnePlusAbs(0.0))
}

/// Exact-growth ratio ∫(exp(βu²)-1)/(1+|u|)^p / ‖u‖₂², p ≥ 0.
pub fn exact_growth_ratio(u: &RadialProfile, beta: f64, p: f64) -> Result<FunctionalValue> {
    if p < 0.0 {
        return Err(Error::invalid("exact_growth_ratio requires p >= 0"));
    }
    ratio_over(u, beta, GrowthDenominator::PowerOfOnePlusAbs(p))
}

/// Exact-growth ratio with an explicit denominator convention.
pub fn exact_growth_ratio_with(
    u: &RadialProfile,
    beta: f64,
    den: GrowthDenominator,
) -> Result<FunctionalValue> {
    ratio_over(u, beta, den)
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::invalid(format!("lambda must lie in (0,1), got {lambda}")));
    }
    Ok(())
}

/// g_λ(t) = λ/(12π²)·(exp(12π²t²) - 1 - 12π²t²).
pub fn g_lambda(t: f64, lambda: f64) -> f64 {
    let b = beta_trace2();
    let (e, _) = exp_clamped(b * t * t);
    lambda / b * (e - 1.0 - b * t * t)
}

/// G_λ(u) = ‖u‖₂² - λ/(12π²)·∫(exp(12π²u²) - 1) = (1-λ)‖u‖₂² - ∫g_λ(u).
/// Returns the value and whether the exponential clamped.
pub fn big_g_lambda(u: &RadialProfile, lambda: f64) -> Result<(f64, bool)> {
    check_lambda(lambda)?;
    let b = beta_trace2();
    let mut integral = 0.0;
    let mut overflow = false;
    for (v, w) in u.values.iter().zip(u.weights.iter()) {
        let (e, of) = exp_clamped(b * v * v);
        overflow |= of;
        integral += w * (e - 1.0);
    }
    Ok((u.l2_norm().powi(2) - lambda / b * integral, overflow))
}

/// J_λ(u) = ½(2‖(-Δ)^{3/4}u‖₂² + ‖u‖₂²) - λ/(24π²)·∫(exp(12π²u²) - 1), n = 3.
pub fn j_lambda(plan: &TransformPlan, u: &RadialProfile, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    if plan.dim() != 3 {
        return Err(Error::invalid("j_lambda is defined on the n = 3 boundary"));
    }
    let s = plan.sobolev_seminorm(u, 0.75)?;
    let b = beta_trace2();
    let mut integral = 0.0;
    for (v, w) in u.values.iter().zip(u.weights.iter()) {
        let (e, _) = exp_clamped(b * v * v);
        integral += w * (e - 1.0);
    }
    Ok(0.5 * (2.0 * s * s + u.l2_norm().powi(2)) - lambda / (2.0 * b) * integral)
}

/// I_λ of the bi-harmonic lift of v, with the bulk term computed through the
/// extension's quadrature energy factor: ½∫|ΔU|² + ½‖v‖₂² - λ/(24π²)∫(e^{12π²v²}-1).
/// Equals J_λ(v) up to the energy-factor quadrature error.
pub fn i_lambda_via_trace(plan: &TransformPlan, v: &RadialProfile, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    if plan.dim() != 3 {
        return Err(Error::invalid("i_lambda_via_trace is defined on the n = 3 boundary"));
    }
    let field = extend(plan, v, 2)?;
    let bulk = field.energy()?;
    let b = beta_trace2();
    let mut integral = 0.0;
    for (val, w) in v.values.iter().zip(v.weights.iter()) {
        let (e, _) = exp_clamped(b * val * val);
        integral += w * (e - 1.0);
    }
    Ok(0.5 * bulk + 0.5 * v.l2_norm().powi(2) - lambda / (2.0 * b) * integral)
}

/// Radial reduction to dimension 2: w(s) = (n·A*_n/2)^{1/2}·u(s^{2/n}) on the
/// transported grid s_i = r_i^{n/2}, with weights transporting
/// ω_{n-1}∫·r^{n-1}dr onto 2π∫·s ds exactly. A*_n is the Hardy–Rellich scale
/// (`constants::reduction_scale`), so 2π∫|w'|²s ds equals the Lemma-rad
/// right-hand side.
pub fn radial_reduction(plan: &TransformPlan, u: &RadialProfile) -> Result<RadialProfile> {
    let n = plan.dim();
    if n < 2 {
        return Err(Error::invalid("radial_reduction requires n >= 2"));
    }
    let a = reduction_scale(n)?;
    let amp = (n as f64 * a / 2.0).sqrt();
    let nf = n as f64;
    let nodes: Vec<f64> = u.nodes.iter().map(|r| r.powf(nf / 2.0)).collect();
    let values: Vec<f64> = u.values.iter().map(|v| amp * v).collect();
    let scale = PI * nf / sphere_area(n);
    let weights: Vec<f64> = u.weights.iter().map(|w| scale * w).collect();
    Ok(RadialProfile {
        spec: GridSpec::new(2, plan.radius().powf(nf / 2.0), u.len(), u.spec.scheme),
        nodes: nodes.into(),
        weights: weights.into(),
        values,
    })
}

/// 2π∫|w'(s)|² s ds for the reduction of u, via the change of variables back
/// to r: equals 2π·A*_n·∫|u'(r)|² r dr with the derivative taken spectrally.
pub fn reduction_gradient_energy(plan: &TransformPlan, u: &RadialProfile) -> Result<f64> {
    let a = reduction_scale(plan.dim())?;
    Ok(2.0 * PI * a * plan.gradient_integral(u)?)
}

/// Hardy–Rellich margin for radial u:
/// ‖(-Δ)^{n/4}u‖₂² - 2^{n-2}Γ²(n/2)·∫|∇u|²/|x|^{n-2} dx  (≥ 0).
pub fn hardy_rellich_margin(plan: &TransformPlan, u: &RadialProfile) -> Result<f64> {
    let n = plan.dim();
    if n < 2 {
        return Err(Error::invalid("hardy_rellich_margin requires n >= 2"));
    }
    // crude smoothness guard: the weighted integrand must not blow up at 0
    let hat = plan.transform(u)?;
    let probe = plan.derivative_at(&hat, &[plan.radius() / 1e3, plan.radius() / 4e3])?;
    if probe[1].abs() > 4.0 * probe[0].abs() + 1e3 {
        return Err(Error::QuadratureFailure(
            "weighted gradient integral looks divergent at the origin".into(),
        ));
    }
    let s = plan.sobolev_seminorm(u, n as f64 / 4.0)?;
    let nf = n as f64;
    let g = gamma(nf / 2.0);
    let rhs = 2f64.powf(nf - 2.0) * g * g * sphere_area(n) * plan.gradient_integral(u)?;
    Ok(s * s - rhs)
}

/// Both sides of the rearrangement comparison bound at exponent β:
/// lhs = ∫(e^{βu²}-1)/(1+u²), rhs = 2(e^β-1-2β)‖u‖₂² + 2∫(e^{β(u^♯)²}-1)/(1+(u^♯)²).
#[derive(Debug, Clone, Copy)]
pub struct ComparisonPair {
    pub lhs: f64,
    pub rhs: f64,
    pub overflow: bool,
}

pub fn rearrangement_comparison(
    plan: &TransformPlan,
    u: &RadialProfile,
    beta: f64,
) -> Result<ComparisonPair> {
    if !(u.l2_norm() > 0.0) {
        return Err(Error::invalid("rearrangement_comparison requires a nonzero profile"));
    }
    let lhs = exact_growth_ratio_with(u, beta, GrowthDenominator::OnePlusSquare)?;
    let (sharp, _) = fourier_rearrange(plan, u, plan.dim() as f64 / 4.0)?;
    let rhs_int = exact_growth_ratio_with(&sharp, beta, GrowthDenominator::OnePlusSquare)?;
    let (eb, of) = exp_clamped(beta);
    let rhs = 2.0 * (eb - 1.0 - 2.0 * beta) * u.l2_norm().powi(2) + 2.0 * rhs_int.numerator;
    Ok(ComparisonPair {
        lhs: lhs.numerator,
        rhs,
        overflow: lhs.overflow || rhs_int.overflow || of,
    })
}

/// Φ(t) = e^t - Σ_{j=0}^{n-2} t^j/j!, the truncated exponential of the
/// first-order theory (utility; the trace functionals subtract only 1).
pub fn phi_truncated(t: f64, n: u32) -> f64 {
    let (e, _) = exp_clamped(t);
    let mut s = 0.0;
    let mut term = 1.0;
    for j in 0..n.saturating_sub(1) {
        if j > 0 {
            term *= t / j as f64;
        }
        s += term;
    }
    e - s
}

/// Ψ(τ) = e^τ - 1 - τ.
pub fn psi_excess(tau: f64) -> f64 {
    let (e, _) = exp_clamped(tau);
    e - 1.0 - tau
}
