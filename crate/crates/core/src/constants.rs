//! Sharp constants of the critical embeddings: the higher-order sharp
//! exponent β(n,m), its trace counterpart β̃_m on half-spaces, the
//! Moser–Trudinger constant α_n, the exact-growth constant A_n, and the
//! annulus amplitude c_{n/2} used by the blow-up sequences.

use crate::error::{Error, Result};
use crate::special::{double_factorial, gamma, sphere_area};
use std::f64::consts::PI;

/// Parameters (n, m) for a sharp-constant evaluation.
///
/// `derivative_order` may be an integer or a half-integer; the critical L²
/// scale m = n/2 is the case all trace inequalities here reduce to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantSpec {
    pub boundary_dimension: u32,
    pub derivative_order: f64,
}

impl ConstantSpec {
    pub fn new(n: u32, m: f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::invalid("boundary dimension must be >= 1"));
        }
        if !(m > 0.0) || (2.0 * m).fract() != 0.0 {
            return Err(Error::invalid(format!(
                "derivative order must be a positive half-integer, got {m}"
            )));
        }
        if m >= n as f64 {
            return Err(Error::invalid(format!(
                "derivative order {m} must be < dimension {n}"
            )));
        }
        Ok(ConstantSpec { boundary_dimension: n, derivative_order: m })
    }
}

/// ω_{n-1}, the area of S^{n-1}; ω_0 = 2 (two-point measure).
pub fn surface_measure(n: u32) -> Result<f64> {
    if n < 1 {
        return Err(Error::invalid("surface_measure requires n >= 1"));
    }
    Ok(sphere_area(n))
}

/// The sharp exponent β(n,m) of the higher-order critical embedding,
///
/// ```text
/// β(n,m) = n/ω_{n-1} · [π^{n/2} 2^m Γ((m+1)/2)/Γ((n-m+1)/2)]^{n/(n-m)}   (m odd)
/// β(n,m) = n/ω_{n-1} · [π^{n/2} 2^m Γ(m/2)/Γ((n-m)/2)]^{n/(n-m)}         (m even)
/// ```
///
/// Half-integer m uses the odd branch, which reproduces the half-space trace
/// values π (n=1, m=1/2) and 6π² (n=3, m=3/2) exactly and collapses at
/// m = n/2 to n·2ⁿ·πⁿ/ω_{n-1}.
pub fn adams_sharp_constant(n: u32, m: f64) -> Result<f64> {
    let spec = ConstantSpec::new(n, m)?;
    let n = spec.boundary_dimension as f64;
    let m = spec.derivative_order;
    let even = m.fract() == 0.0 && (m as u64) % 2 == 0;
    let inner = if even {
        PI.powf(n / 2.0) * 2f64.powf(m) * gamma(m / 2.0) / gamma((n - m) / 2.0)
    } else {
        PI.powf(n / 2.0) * 2f64.powf(m) * gamma((m + 1.0) / 2.0) / gamma((n - m + 1.0) / 2.0)
    };
    Ok(n / sphere_area(spec.boundary_dimension) * inner.powf(n / (n - m)))
}

/// The sharp trace exponent β̃_m = Γ(m)Γ(1/2)/Γ(m-1/2) · β(2m-1, (2m-1)/2)
/// for the order-m half-space trace inequality.
pub fn trace_sharp_constant(m: u32) -> Result<f64> {
    if m < 1 {
        return Err(Error::invalid("trace_sharp_constant requires m >= 1"));
    }
    let mf = m as f64;
    let ratio = gamma(mf) * gamma(0.5) / gamma(mf - 0.5);
    Ok(ratio * adams_sharp_constant(2 * m - 1, (2 * m - 1) as f64 / 2.0)?)
}

/// The exact-growth constant A_n = 2^{n-3}Γ²(n/2)/π · 2^{(n+2)/2}π^{(n-1)/2}/(n-2)!!
/// evaluated literally; (-1)!! = 0!! = 1.
pub fn exact_growth_an(n: u32) -> Result<f64> {
    if n < 2 {
        return Err(Error::invalid("exact_growth_an requires n >= 2"));
    }
    let nf = n as f64;
    let g = gamma(nf / 2.0);
    Ok(2f64.powf(nf - 3.0) * g * g / PI * 2f64.powf((nf + 2.0) / 2.0)
        * PI.powf((nf - 1.0) / 2.0)
        / double_factorial(n as i64 - 2))
}

/// The Hardy–Rellich-consistent radial reduction scale
/// A*_n = 2^{n-2} Γ²(n/2) ω_{n-1} / (2π), i.e. the constant with
/// 2π·A*_n·∫|u'|² r dr = 2^{n-2}Γ²(n/2)·∫|∇u|²/|x|^{n-2} dx for radial u.
/// A*_2 = 1, A*_3 = π, A*_4 = 4π. The reduction w(s) is built with this scale
/// so the gradient-chain inequality is exactly the radial Hardy–Rellich bound.
pub fn reduction_scale(n: u32) -> Result<f64> {
    if n < 2 {
        return Err(Error::invalid("reduction_scale requires n >= 2"));
    }
    let nf = n as f64;
    let g = gamma(nf / 2.0);
    Ok(2f64.powf(nf - 2.0) * g * g * sphere_area(n) / (2.0 * PI))
}

/// Amplitude c_{n/2} = 1/(2^{n/2} π^{n/2}) of the annulus profiles used by
/// the blow-up sequences.
pub fn moser_amplitude(n: u32) -> Result<f64> {
    if n < 2 {
        return Err(Error::invalid("moser_amplitude requires n >= 2"));
    }
    Ok((2.0 * PI).powf(-(n as f64) / 2.0))
}

/// The first-order sharp constant α_n = n·ω_{n-1}^{1/(n-1)}, n ≥ 2.
pub fn moser_trudinger_alpha(n: u32) -> Result<f64> {
    if n < 2 {
        return Err(Error::invalid("moser_trudinger_alpha requires n >= 2"));
    }
    Ok(n as f64 * sphere_area(n).powf(1.0 / (n as f64 - 1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn surface_measure_small_dims() {
        assert_relative_eq!(surface_measure(1).unwrap(), 2.0, max_relative = 1e-14);
        assert_relative_eq!(surface_measure(2).unwrap(), 2.0 * PI, max_relative = 1e-14);
        assert_relative_eq!(surface_measure(3).unwrap(), 4.0 * PI, max_relative = 1e-14);
        assert_relative_eq!(surface_measure(4).unwrap(), 2.0 * PI * PI, max_relative = 1e-14);
        assert!(surface_measure(0).is_err());
    }

    #[test]
    fn adams_constants_pinned_values() {
        assert_relative_eq!(adams_sharp_constant(1, 0.5).unwrap(), PI, max_relative = 1e-12);
        assert_relative_eq!(
            adams_sharp_constant(3, 1.5).unwrap(),
            6.0 * PI * PI,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            adams_sharp_constant(2, 1.0).unwrap(),
            4.0 * PI,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            adams_sharp_constant(4, 2.0).unwrap(),
            32.0 * PI * PI,
            max_relative = 1e-12
        );
        assert!(adams_sharp_constant(3, 3.0).is_err());
        assert!(adams_sharp_constant(3, -0.5).is_err());
        assert!(adams_sharp_constant(3, 0.75).is_err());
    }

    #[test]
    fn critical_scale_identity() {
        // β(n, n/2)·ω_{n-1} = n·2ⁿ·πⁿ exactly for the odd-branch formula.
        for n in 1..=5u32 {
            let beta = adams_sharp_constant(n, n as f64 / 2.0).unwrap();
            let lhs = beta * surface_measure(n).unwrap();
            let rhs = n as f64 * 2f64.powi(n as i32) * PI.powi(n as i32);
            assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
        }
    }

    #[test]
    fn trace_constants_pinned_values() {
        assert_relative_eq!(trace_sharp_constant(1).unwrap(), PI, max_relative = 1e-12);
        assert_relative_eq!(
            trace_sharp_constant(2).unwrap(),
            12.0 * PI * PI,
            max_relative = 1e-12
        );
        // Γ(3)Γ(1/2)/Γ(5/2) = 8/3 against β(5,5/2) = 60π³
        assert_relative_eq!(
            trace_sharp_constant(3).unwrap(),
            160.0 * PI.powi(3),
            max_relative = 1e-12
        );
        assert!(trace_sharp_constant(0).is_err());
    }

    #[test]
    fn trace_reduces_to_adams() {
        assert_relative_eq!(
            trace_sharp_constant(1).unwrap(),
            adams_sharp_constant(1, 0.5).unwrap(),
            max_relative = 1e-13
        );
        assert_relative_eq!(
            trace_sharp_constant(2).unwrap(),
            2.0 * adams_sharp_constant(3, 1.5).unwrap(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn exact_growth_an_values() {
        assert_relative_eq!(
            exact_growth_an(2).unwrap(),
            2.0 / PI.sqrt(),
            max_relative = 1e-12
        );
        // literal substitution gives √2·π at n=3
        assert_relative_eq!(
            exact_growth_an(3).unwrap(),
            2f64.sqrt() * PI,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            exact_growth_an(4).unwrap(),
            8.0 * PI.sqrt(),
            max_relative = 1e-12
        );
        assert!(exact_growth_an(1).is_err());
    }

    #[test]
    fn reduction_scale_values() {
        assert_relative_eq!(reduction_scale(2).unwrap(), 1.0, max_relative = 1e-13);
        assert_relative_eq!(reduction_scale(3).unwrap(), PI, max_relative = 1e-13);
        assert_relative_eq!(reduction_scale(4).unwrap(), 4.0 * PI, max_relative = 1e-13);
    }

    #[test]
    fn moser_amplitude_values() {
        assert_relative_eq!(moser_amplitude(2).unwrap(), 1.0 / (2.0 * PI), max_relative = 1e-13);
        assert_relative_eq!(
            moser_amplitude(3).unwrap(),
            (2.0 * PI).powf(-1.5),
            max_relative = 1e-13
        );
        assert_relative_eq!(
            moser_amplitude(4).unwrap(),
            1.0 / (4.0 * PI * PI),
            max_relative = 1e-13
        );
    }

    #[test]
    fn constants_increase_in_dimension_at_critical_ratio() {
        let mut prev = 0.0;
        for n in 1..=5u32 {
            let b = adams_sharp_constant(n, n as f64 / 2.0).unwrap();
            assert!(b > prev && b > 0.0);
            prev = b;
        }
    }

    #[test]
    fn alpha_matches_first_order_adams() {
        // α_2 = 2·ω_1 = 4π equals β(2,1).
        assert_relative_eq!(
            moser_trudinger_alpha(2).unwrap(),
            adams_sharp_constant(2, 1.0).unwrap(),
            max_relative = 1e-13
        );
    }
}
