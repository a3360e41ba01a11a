//! m-harmonic extension of boundary data to the half-space, represented per
//! boundary frequency by the decaying profile φ_m(t) = p_m(t)e^{-t}, t = |ξ|y.
//!
//! p_m has degree m-1, p_m(0) = 1 (unit trace) and φ_m'(0) = 0 for m ≥ 2
//! (Neumann condition); φ_m solves (d²/dt² - 1)^m φ = 0. The coefficients come
//! from the half-integer Bessel-K closed form of the generalized Poisson
//! kernel: p_1 = 1, p_2 = 1 + t, p_3 = 1 + t + t²/3, ...
//!
//! Per frequency the bulk energy ∫|∇^m U|² collapses to the scalar integral
//! ∫₀^∞ Σ_j C(m,j)|φ_m^{(j)}|² dt, which must equal Γ(m)Γ(1/2)/Γ(m-1/2); that
//! identity (and the boundary-coefficient table) is what `verify-identities`
//! checks numerically.

use crate::error::{Error, Result};
use crate::grid::{RadialProfile, SpectralProfile};
use crate::special::{gamma, integrate_gl};
use crate::transform::TransformPlan;
use std::f64::consts::PI;

/// Polynomial-times-e^{-t} profiles; coefficients are ascending in t.
#[derive(Debug, Clone, PartialEq)]
struct ExpPoly {
    coeffs: Vec<f64>,
}

impl ExpPoly {
    fn eval(&self, t: f64) -> f64 {
        let mut p = 0.0;
        for &c in self.coeffs.iter().rev() {
            p = p * t + c;
        }
        p * (-t).exp()
    }

    /// d/dt (p e^{-t}) = (p' - p) e^{-t}
    fn deriv(&self) -> ExpPoly {
        let n = self.coeffs.len();
        let mut out = vec![0.0; n];
        for k in 0..n {
            out[k] = -self.coeffs[k]
                + if k + 1 < n {
                    (k as f64 + 1.0) * self.coeffs[k + 1]
                } else {
                    0.0
                };
        }
        ExpPoly { coeffs: out }
    }

    /// (d²/dt² - 1)(p e^{-t}) = (p'' - 2p') e^{-t}
    fn lap_minus_one(&self) -> ExpPoly {
        let n = self.coeffs.len();
        let mut out = vec![0.0; n.saturating_sub(1).max(1)];
        for (k, o) in out.iter_mut().enumerate() {
            let p2 = if k + 2 < n {
                ((k + 1) * (k + 2)) as f64 * self.coeffs[k + 2]
            } else {
                0.0
            };
            let p1 = if k + 1 < n {
                (k as f64 + 1.0) * self.coeffs[k + 1]
            } else {
                0.0
            };
            *o = p2 - 2.0 * p1;
        }
        ExpPoly { coeffs: out }
    }

    fn at_zero(&self) -> f64 {
        self.coeffs.first().copied().unwrap_or(0.0)
    }
}

/// Per-frequency extension profile of order m.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionMultiplier {
    order: u32,
    poly: ExpPoly,
}

/// Build the order-m multiplier. The coefficients satisfy the two-term
/// recurrence c_0 = 1, c_k = c_{k-1}·2(m-k)/(k(2m-1-k)).
pub fn multiplier(m: u32) -> Result<ExtensionMultiplier> {
    if m < 1 {
        return Err(Error::invalid("multiplier order must be >= 1"));
    }
    if m > 12 {
        return Err(Error::invalid("multiplier order capped at 12"));
    }
    let mf = m as f64;
    let mut coeffs = Vec::with_capacity(m as usize);
    let mut c = 1.0;
    coeffs.push(c);
    for k in 1..m as usize {
        let kf = k as f64;
        c *= 2.0 * (mf - kf) / (kf * (2.0 * mf - 1.0 - kf));
        coeffs.push(c);
    }
    Ok(ExtensionMultiplier { order: m, poly: ExpPoly { coeffs } })
}

impl ExtensionMultiplier {
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Polynomial coefficients of p_m, ascending.
    pub fn coefficients(&self) -> &[f64] {
        &self.poly.coeffs
    }

    /// φ_m(t)
    pub fn phi(&self, t: f64) -> f64 {
        self.poly.eval(t)
    }

    /// φ_m'(t)
    pub fn phi_deriv(&self, t: f64) -> f64 {
        self.poly.deriv().eval(t)
    }

    /// ((d²/dt² - 1)^k φ_m)(0): the per-frequency value of Δ^k U at y = 0 up
    /// to the sign (-1)^k carried by Δ_x^k on the boundary side.
    pub fn laplacian_power_at_zero(&self, k: u32) -> f64 {
        let mut q = self.poly.clone();
        for _ in 0..k {
            q = q.lap_minus_one();
        }
        q.at_zero()
    }

    /// d/dt[((d²/dt² - 1)^k φ_m)](0): per-frequency ∂_yΔ^k U at y = 0.
    pub fn neumann_power_at_zero(&self, k: u32) -> f64 {
        let mut q = self.poly.clone();
        for _ in 0..k {
            q = q.lap_minus_one();
        }
        q.deriv().at_zero()
    }

    /// Max |coefficient| of (d²/dt² - 1)^m φ_m; zero up to rounding since φ_m
    /// solves the ODE by construction.
    pub fn ode_residual(&self) -> f64 {
        let mut q = self.poly.clone();
        for _ in 0..self.order {
            q = q.lap_minus_one();
        }
        q.coeffs.iter().fold(0.0f64, |a, c| a.max(c.abs()))
    }
}

fn binomial(m: u32, j: u32) -> f64 {
    let mut v = 1.0;
    for i in 0..j {
        v = v * (m - i) as f64 / (i + 1) as f64;
    }
    v
}

/// Quadrature of ∫₀^∞ Σ_{j=0}^{m} C(m,j) |φ_m^{(j)}(t)|² dt on [0, 40+10m];
/// the per-frequency bulk energy. Must equal Γ(m)Γ(1/2)/Γ(m-1/2).
pub fn energy_factor(m: u32) -> Result<f64> {
    let mult = multiplier(m)?;
    let mut derivs = Vec::with_capacity(m as usize + 1);
    derivs.push(mult.poly.clone());
    for _ in 0..m {
        let last: &ExpPoly = derivs.last().unwrap();
        derivs.push(last.deriv());
    }
    let upper = 40.0 + 10.0 * m as f64;
    let integrand = |t: f64| -> f64 {
        derivs
            .iter()
            .enumerate()
            .map(|(j, d)| {
                let v = d.eval(t);
                binomial(m, j as u32) * v * v
            })
            .sum()
    };
    // 600 panels x 8 Gauss points = 4800 nodes; refine once to certify.
    let coarse = integrate_gl(&integrand, 0.0, upper, 600, 8);
    let fine = integrate_gl(&integrand, 0.0, upper, 1200, 8);
    if (coarse - fine).abs() > 1e-10 * fine.abs().max(1.0) {
        return Err(Error::QuadratureFailure(format!(
            "energy_factor({m}) did not converge: {coarse} vs {fine}"
        )));
    }
    Ok(fine)
}

/// Dirichlet boundary coefficient of Δ^k U at y = 0:
/// b(m,k) = Γ(m)Γ(m-1/2-k)/(Γ(m-k)Γ(m-1/2)), 0 ≤ k ≤ ⌊(m-1)/2⌋.
/// The multiplier oracle (-1)^k·((d²/dt²-1)^k φ_m)(0) must match it.
pub fn boundary_coefficient(m: u32, k: u32) -> Result<f64> {
    if m < 1 {
        return Err(Error::invalid("boundary_coefficient requires m >= 1"));
    }
    if k > (m - 1) / 2 {
        return Err(Error::invalid(format!(
            "boundary_coefficient: k = {k} out of range 0..={} for m = {m}",
            (m - 1) / 2
        )));
    }
    let mf = m as f64;
    let kf = k as f64;
    Ok(gamma(mf) * gamma(mf - 0.5 - kf) / (gamma(mf - kf) * gamma(mf - 0.5)))
}

/// Coefficient of the top Neumann condition ∂_yΔ^{m-1}U|_{y=0} against
/// (-Δ_x)^{m-1/2}u: returns the positive ratio Γ(m)Γ(1/2)/Γ(m-1/2). The
/// multiplier oracle d/dt[(d²/dt²-1)^{m-1}φ_m](0) equals (-1)^m times it.
pub fn top_neumann_coefficient(m: u32) -> Result<f64> {
    if m < 1 {
        return Err(Error::invalid("top_neumann_coefficient requires m >= 1"));
    }
    let mf = m as f64;
    Ok(gamma(mf) * gamma(0.5) / gamma(mf - 0.5))
}

/// A half-space field in multiplier form: boundary spectral data plus the
/// order-m profile. The vertical variable stays lazy; slabs are sampled on
/// demand.
#[derive(Debug, Clone)]
pub struct HalfSpaceField {
    pub multiplier: ExtensionMultiplier,
    pub boundary_hat: SpectralProfile,
}

/// Extend boundary data u on ℝ^{2m-1} to the order-m half-space field.
pub fn extend(plan: &TransformPlan, u: &RadialProfile, m: u32) -> Result<HalfSpaceField> {
    if plan.dim() != 2 * m - 1 {
        return Err(Error::invalid(format!(
            "order-{m} extension needs boundary dimension {}, plan has {}",
            2 * m - 1,
            plan.dim()
        )));
    }
    Ok(HalfSpaceField { multiplier: multiplier(m)?, boundary_hat: plan.transform(u)? })
}

impl HalfSpaceField {
    /// Horizontal slice U(·, y) as a boundary-dimension radial profile.
    pub fn slice(&self, plan: &TransformPlan, y: f64) -> Result<RadialProfile> {
        if y < 0.0 {
            return Err(Error::invalid("slice requires y >= 0"));
        }
        let mut hat = self.boundary_hat.clone();
        for (v, p) in hat.values.iter_mut().zip(plan.freq_nodes()) {
            *v *= self.multiplier.phi(p * y);
        }
        plan.inverse_transform(&hat)
    }

    /// Trace U(·, 0); recovers the boundary data exactly since φ_m(0) = 1.
    pub fn trace(&self, plan: &TransformPlan) -> Result<RadialProfile> {
        self.slice(plan, 0.0)
    }

    /// ∂_y U(·, 0) by the 5-point one-sided stencil with step h = 1e-3/ρ_max.
    pub fn vertical_derivative_at_trace(&self, plan: &TransformPlan) -> Result<Vec<f64>> {
        let h = 1e-3 / plan.freq_nodes().last().copied().unwrap_or(1.0);
        let slices: Vec<RadialProfile> = (0..5)
            .map(|k| self.slice(plan, k as f64 * h))
            .collect::<Result<_>>()?;
        let c = [-25.0 / 12.0, 4.0, -3.0, 4.0 / 3.0, -0.25];
        let n = plan.len();
        let mut out = vec![0.0; n];
        for (o, i) in out.iter_mut().zip(0..n) {
            *o = c
                .iter()
                .zip(&slices)
                .map(|(c, s)| c * s.values[i])
                .sum::<f64>()
                / h;
        }
        Ok(out)
    }

    /// Bulk energy ∫|∇^m U|² dxdy = energy_factor(m)·Σ ŵ ρ^{2m-1} û²,
    /// evaluated with the quadrature energy factor (not the Γ closed form).
    pub fn energy(&self) -> Result<f64> {
        let m = self.multiplier.order;
        let factor = energy_factor(m)?;
        let s: f64 = self
            .boundary_hat
            .values
            .iter()
            .zip(self.boundary_hat.nodes.iter())
            .zip(self.boundary_hat.weights.iter())
            .map(|((v, p), w)| w * p.powi(2 * m as i32 - 1) * v * v)
            .sum();
        Ok(factor * s)
    }
}

/// Real-space Poisson integral for the half-plane (m = 1, boundary ℝ):
/// U(x,y) = (1/π)∫ y/((x-s)² + y²) u(s) ds with u even, quadrature over the
/// boundary grid. Cross-check oracle for the spectral extension.
pub fn poisson_halfplane_value(boundary: &RadialProfile, x: f64, y: f64) -> f64 {
    let mut acc = 0.0;
    for ((s, w), u) in boundary
        .nodes
        .iter()
        .zip(boundary.weights.iter())
        .zip(&boundary.values)
    {
        // w = ω_0·δ = 2δ for n = 1; the even extension doubles the integrand.
        let k = y / ((x - s).powi(2) + y * y) + y / ((x + s).powi(2) + y * y);
        acc += 0.5 * w * k * u;
    }
    acc / PI
}

/// Real-space generalized Poisson integral for m = 2 (boundary ℝ³), reduced
/// to a radial integral with the angular part done in closed form:
/// U(R,y) = c·2π ∫ u(s) s² [ (1/(2B))((A-B)^{-2} - (A+B)^{-2}) ] y³ ds,
/// A = R² + s² + y², B = 2Rs, c = 4/π².
pub fn biharmonic_halfspace_value(boundary: &RadialProfile, radius: f64, y: f64) -> f64 {
    let c = 4.0 / (PI * PI);
    let om3 = 4.0 * PI; // ω_2, the boundary sphere measure baked into weights
    let mut acc = 0.0;
    for ((s, w), u) in boundary
        .nodes
        .iter()
        .zip(boundary.weights.iter())
        .zip(&boundary.values)
    {
        let a = radius * radius + s * s + y * y;
        let b = 2.0 * radius * s;
        let angular = if b.abs() < 1e-12 * a {
            2.0 / (a * a * a)
        } else {
            (1.0 / (2.0 * b)) * (1.0 / ((a - b) * (a - b)) - 1.0 / ((a + b) * (a + b)))
        };
        // weights carry ω_2 s² ds; the kernel is the polar-angle average times 2π
        acc += (w / om3) * 2.0 * PI * angular * y.powi(3) * u;
    }
    c * acc
}

/// Energy increase from perturbing the m = 1 extension by a compactly
/// supported vertical bump δ̂(ρ,y) = g(ρ)·b(y): returns (margin, cross-term)
/// where margin = ‖∇(U+δ)‖² - ‖∇U‖² = 2·cross + ‖∇δ‖² and cross vanishes for
/// the harmonic extension. Numeric restatement of the Dirichlet principle.
pub fn dirichlet_perturbation_margin(
    plan: &TransformPlan,
    boundary: &RadialProfile,
    bump_spectrum: &[f64],
    y_lo: f64,
    y_hi: f64,
) -> Result<(f64, f64)> {
    if plan.dim() != 1 {
        return Err(Error::invalid("dirichlet margin check is for m = 1, boundary dimension 1"));
    }
    if bump_spectrum.len() != plan.len() || !(0.0 < y_lo && y_lo < y_hi) {
        return Err(Error::invalid("bad bump parameters"));
    }
    let hat = plan.transform(boundary)?;
    let mid = 0.5 * (y_lo + y_hi);
    let half = 0.5 * (y_hi - y_lo);
    let bump = |y: f64| -> (f64, f64) {
        let z = (y - mid) / half;
        if z.abs() >= 1.0 {
            return (0.0, 0.0);
        }
        let b = (-1.0 / (1.0 - z * z)).exp();
        let db = b * (-2.0 * z / ((1.0 - z * z) * (1.0 - z * z))) / half;
        (b, db)
    };
    let mut cross = 0.0;
    let mut delta_energy = 0.0;
    for ((&p, &w), (&uh, &g)) in plan
        .freq_nodes()
        .iter()
        .zip(plan.freq_weights())
        .zip(hat.values.iter().zip(bump_spectrum))
    {
        let cross_y = integrate_gl(
            |y| {
                let (b, db) = bump(y);
                (-p * (-p * y).exp()) * db + p * p * (-p * y).exp() * b
            },
            y_lo,
            y_hi,
            24,
            10,
        );
        let grad_y = integrate_gl(
            |y| {
                let (b, db) = bump(y);
                db * db + p * p * b * b
            },
            y_lo,
            y_hi,
            24,
            10,
        );
        cross += w * uh * g * cross_y;
        delta_energy += w * g * g * grad_y;
    }
    Ok((2.0 * cross + delta_energy, cross))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{GridScheme, GridSpec};
    use crate::transform::make_grid;
    use approx::assert_relative_eq;

    #[test]
    fn multiplier_small_orders() {
        assert_eq!(multiplier(1).unwrap().coefficients(), &[1.0]);
        assert_eq!(multiplier(2).unwrap().coefficients(), &[1.0, 1.0]);
        let m3 = multiplier(3).unwrap();
        assert_relative_eq!(m3.coefficients()[2], 1.0 / 3.0, max_relative = 1e-15);
        assert!(multiplier(0).is_err());
    }

    /// Independent oracle: build p_m from the half-integer Bessel-K recurrence
    /// K_{ν+1} = K_{ν-1} + (2ν/t)K_ν on the polynomial-in-1/t factors, then
    /// normalize the constant term. Checks the closed-form coefficients.
    #[test]
    fn multiplier_matches_bessel_k_recurrence() {
        for m in 1..=6u32 {
            // q_ν as coefficients of 1/t: q_{1/2} = [1], q_{3/2} = [1, 1].
            let mut q_prev = vec![1.0]; // ν = 1/2
            let mut q_cur = vec![1.0, 1.0]; // ν = 3/2
            if m == 1 {
                q_cur = q_prev.clone();
            } else {
                for half_order in 1..m - 1 {
                    // q_{ν+1}(x) = q_{ν-1}(x) + 2ν·x·q_ν(x), x = 1/t, ν = half_order + 1/2
                    let nu = half_order as f64 + 0.5;
                    let mut next = vec![0.0; q_cur.len() + 1];
                    for (i, &c) in q_prev.iter().enumerate() {
                        next[i] += c;
                    }
                    for (i, &c) in q_cur.iter().enumerate() {
                        next[i + 1] += 2.0 * nu * c;
                    }
                    q_prev = q_cur;
                    q_cur = next;
                }
            }
            // φ_m ∝ t^{m-1}·q_{m-1/2}(1/t): coefficient of t^k is q[m-1-k].
            let q = q_cur;
            let scale = q[m as usize - 1];
            let mult = multiplier(m).unwrap();
            for k in 0..m as usize {
                let expect = q[m as usize - 1 - k] / scale;
                assert_relative_eq!(mult.coefficients()[k], expect, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn multiplier_trace_neumann_and_ode() {
        for m in 1..=6u32 {
            let mult = multiplier(m).unwrap();
            assert_relative_eq!(mult.phi(0.0), 1.0, max_relative = 1e-14);
            if m >= 2 {
                assert!(mult.phi_deriv(0.0).abs() < 1e-14, "m={m}");
            }
            assert!(mult.ode_residual() < 1e-12, "m={m}");
        }
    }

    #[test]
    fn energy_factor_matches_gamma_ratio() {
        assert_relative_eq!(energy_factor(1).unwrap(), 1.0, epsilon = 1e-10);
        assert_relative_eq!(energy_factor(2).unwrap(), 2.0, epsilon = 1e-9);
        assert_relative_eq!(energy_factor(3).unwrap(), 8.0 / 3.0, epsilon = 1e-9);
        for m in 1..=6u32 {
            let ef = energy_factor(m).unwrap();
            let mf = m as f64;
            let formula = gamma(mf) * gamma(0.5) / gamma(mf - 0.5);
            assert!(
                (ef - formula).abs() <= 1e-8,
                "m={m}: quadrature {ef} vs Γ-formula {formula}"
            );
        }
    }

    #[test]
    fn boundary_coefficients_match_multiplier_oracle() {
        assert_relative_eq!(boundary_coefficient(2, 0).unwrap(), 1.0, max_relative = 1e-14);
        assert_relative_eq!(
            boundary_coefficient(3, 1).unwrap(),
            4.0 / 3.0,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            boundary_coefficient(5, 2).unwrap(),
            48.0 / 35.0,
            max_relative = 1e-13
        );
        for m in 1..=6u32 {
            let mult = multiplier(m).unwrap();
            for k in 0..=(m - 1) / 2 {
                let formula = boundary_coefficient(m, k).unwrap();
                let oracle = mult.laplacian_power_at_zero(k) * (-1f64).powi(k as i32);
                assert!(
                    (formula - oracle).abs() <= 1e-10,
                    "m={m} k={k}: {formula} vs {oracle}"
                );
            }
            assert!(boundary_coefficient(m, (m - 1) / 2 + 1).is_err());
        }
    }

    #[test]
    fn intermediate_neumann_conditions_vanish() {
        for m in 2..=6u32 {
            let mult = multiplier(m).unwrap();
            for k in 0..=(m - 2) / 2 {
                assert!(
                    mult.neumann_power_at_zero(k).abs() < 1e-12,
                    "m={m} k={k}"
                );
            }
        }
    }

    #[test]
    fn top_neumann_coefficient_and_parity() {
        assert_relative_eq!(top_neumann_coefficient(1).unwrap(), 1.0, max_relative = 1e-14);
        assert_relative_eq!(top_neumann_coefficient(2).unwrap(), 2.0, max_relative = 1e-14);
        assert_relative_eq!(
            top_neumann_coefficient(3).unwrap(),
            8.0 / 3.0,
            max_relative = 1e-13
        );
        for m in 1..=6u32 {
            let formula = top_neumann_coefficient(m).unwrap();
            assert_relative_eq!(formula, energy_factor(m).unwrap(), epsilon = 1e-8);
            let oracle = multiplier(m).unwrap().neumann_power_at_zero(m - 1);
            let signed = (-1f64).powi(m as i32) * formula;
            assert!(
                (oracle - signed).abs() <= 1e-10,
                "m={m}: oracle {oracle} vs (-1)^m·Γ-ratio {signed}"
            );
        }
    }

    #[test]
    fn trace_recovery_and_neumann_slice() {
        let plan = make_grid(GridSpec::new(3, 40.0, 512, GridScheme::Uniform)).unwrap();
        let u = plan.profile_from_fn(|r| (-0.5 * r * r).exp());
        let field = extend(&plan, &u, 2).unwrap();
        let tr = field.trace(&plan).unwrap();
        for (a, b) in tr.values.iter().zip(&u.values) {
            assert!((a - b).abs() < 1e-12);
        }
        let dv = field.vertical_derivative_at_trace(&plan).unwrap();
        let sup = dv.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        assert!(sup < 1e-8, "Neumann residual {sup}");
    }

    #[test]
    fn extension_energy_identities() {
        // m = 1 on ℝ: energy = ‖(-Δ)^{1/4}u‖²
        let p1 = make_grid(GridSpec::new(1, 40.0, 512, GridScheme::Uniform)).unwrap();
        let u1 = p1.profile_from_fn(|r| (-0.5 * r * r).exp());
        let f1 = extend(&p1, &u1, 1).unwrap();
        let s1 = p1.sobolev_seminorm(&u1, 0.25).unwrap();
        assert!((f1.energy().unwrap() - s1 * s1).abs() <= 1e-8 * s1 * s1);
        // m = 2 on ℝ³: energy = 2‖(-Δ)^{3/4}u‖²
        let p3 = make_grid(GridSpec::new(3, 40.0, 512, GridScheme::Uniform)).unwrap();
        let u3 = p3.profile_from_fn(|r| (-0.5 * r * r).exp());
        let f3 = extend(&p3, &u3, 2).unwrap();
        let s3 = p3.sobolev_seminorm(&u3, 0.75).unwrap();
        assert!((f3.energy().unwrap() - 2.0 * s3 * s3).abs() <= 1e-8 * s3 * s3);
        // zero data, quadratic scaling
        let z = extend(&p3, &p3.zero_profile(), 2).unwrap();
        assert_eq!(z.energy().unwrap(), 0.0);
        let f3c = extend(&p3, &u3.scaled(3.0), 2).unwrap();
        assert_relative_eq!(
            f3c.energy().unwrap(),
            9.0 * f3.energy().unwrap(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn harmonic_extension_matches_poisson_kernel() {
        let plan = make_grid(GridSpec::new(1, 40.0, 1024, GridScheme::Uniform)).unwrap();
        let u = plan.profile_from_fn(|r| (-0.5 * r * r).exp());
        let field = extend(&plan, &u, 1).unwrap();
        for &y in &[0.5, 1.0, 2.0] {
            let slice = field.slice(&plan, y).unwrap();
            for &i in &[0usize, 12, 25, 51, 76] {
                let x = plan.nodes()[i];
                let direct = poisson_halfplane_value(&u, x, y);
                assert!(
                    (slice.values[i] - direct).abs() < 1e-3,
                    "y={y} x={x}: {} vs {direct}",
                    slice.values[i]
                );
            }
        }
    }

    #[test]
    fn biharmonic_extension_matches_kernel_quadrature() {
        let plan = make_grid(GridSpec::new(3, 40.0, 768, GridScheme::Uniform)).unwrap();
        let u = plan.profile_from_fn(|r| (-0.5 * r * r).exp());
        let field = extend(&plan, &u, 2).unwrap();
        for &y in &[0.5, 1.5] {
            let slice = field.slice(&plan, y).unwrap();
            for &i in &[0usize, 20, 60, 110] {
                let x = plan.nodes()[i];
                let direct = biharmonic_halfspace_value(&u, x, y);
                assert!(
                    (slice.values[i] - direct).abs() < 1e-3,
                    "y={y} x={x}: {} vs {direct}",
                    slice.values[i]
                );
            }
        }
    }

    #[test]
    fn dirichlet_principle_margin_nonnegative() {
        use rand::prelude::*;
        let plan = make_grid(GridSpec::new(1, 40.0, 256, GridScheme::Uniform)).unwrap();
        let u = plan.profile_from_fn(|r| (-0.5 * r * r).exp());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let g: Vec<f64> = plan
                .freq_nodes()
                .iter()
                .map(|&p| rng.gen_range(-1.0..1.0) * (-0.5 * p * p).exp())
                .collect();
            let (margin, cross) =
                dirichlet_perturbation_margin(&plan, &u, &g, 0.5, 2.5).unwrap();
            assert!(margin >= -1e-10, "margin {margin}");
            assert!(cross.abs() < 1e-10 * margin.abs().max(1e-6), "cross {cross}");
        }
    }

    #[test]
    fn extend_dimension_checked() {
        let plan = make_grid(GridSpec::new(3, 40.0, 256, GridScheme::Uniform)).unwrap();
        let u = plan.profile_from_fn(|r| (-r * r).exp());
        assert!(extend(&plan, &u, 1).is_err());
        assert!(extend(&plan, &u, 2).is_ok());
    }
}
