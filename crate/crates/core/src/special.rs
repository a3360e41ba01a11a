//! Scalar special functions: Γ, double factorials, Bessel J₀/J₁, the radial
//! Fourier kernels z^{1-n/2}·J_{n/2-1}(z), and Gauss–Legendre rules.
//!
//! Everything here is plain f64 with accuracy targets around 1e-13, which is
//! what the identity checks downstream lean on.

use std::f64::consts::PI;

/// Γ(x) by the Lanczos approximation (g = 7, 9 coefficients) with reflection
/// for x < 1/2. Relative accuracy is ~1e-14 on the half-integer arguments the
/// constant formulas use.
pub fn gamma(x: f64) -> f64 {
    const P: [f64; 9] = [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    if x < 0.5 {
        PI / ((PI * x).sin() * gamma(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut acc = P[0];
        for (i, &p) in P.iter().enumerate().skip(1) {
            acc += p / (x + i as f64);
        }
        let w = x + 7.5;
        (2.0 * PI).sqrt() * w.powf(x + 0.5) * (-w).exp() * acc
    }
}

/// Double factorial k!! with the conventions 0!! = (-1)!! = 1.
pub fn double_factorial(k: i64) -> f64 {
    if k <= 0 {
        return 1.0;
    }
    let mut acc = 1.0;
    let mut i = k;
    while i > 0 {
        acc *= i as f64;
        i -= 2;
    }
    acc
}

/// Area of the unit sphere S^{n-1}: ω_{n-1} = 2π^{n/2}/Γ(n/2). ω_0 = 2.
pub fn sphere_area(n: u32) -> f64 {
    let half = n as f64 / 2.0;
    2.0 * PI.powf(half) / gamma(half)
}

// Bessel J_ν for ν ∈ {0, 1}: ascending series below the switch point,
// Hankel asymptotic expansion above it. The switch at z = 12 keeps the
// series cancellation below ~1e-12 absolute while the asymptotic series
// has reached ~1e-14 at its optimal truncation.
const BESSEL_SWITCH: f64 = 12.0;

fn bessel_series(nu: u32, z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut term = if nu == 0 { 1.0 } else { 0.5 * z };
    let mut sum = term;
    for k in 1..200 {
        let k = k as f64;
        term *= -q / (k * (k + nu as f64));
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-30) {
            break;
        }
    }
    sum
}

fn bessel_asymptotic(nu: u32, z: f64) -> f64 {
    let mu = 4.0 * (nu * nu) as f64;
    // a_k = prod_{j=1..k} (mu - (2j-1)^2) / (k! 8^k); P gathers even k, Q odd k.
    let mut a = 1.0;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut prev = f64::INFINITY;
    for k in 1..40u32 {
        let j = (2 * k - 1) as f64;
        a *= (mu - j * j) / (k as f64 * 8.0);
        let t = a / z.powi(k as i32);
        if t.abs() > prev {
            break;
        }
        prev = t.abs();
        match k % 4 {
            1 => q += t,
            2 => p -= t,
            3 => q -= t,
            _ => p += t,
        }
        if t.abs() < 1e-18 {
            break;
        }
    }
    let omega = z - (nu as f64) * 0.5 * PI - 0.25 * PI;
    (2.0 / (PI * z)).sqrt() * (omega.cos() * p - omega.sin() * q)
}

/// Bessel function of the first kind, order 0.
pub fn bessel_j0(z: f64) -> f64 {
    let z = z.abs();
    if z < BESSEL_SWITCH {
        bessel_series(0, z)
    } else {
        bessel_asymptotic(0, z)
    }
}

/// Bessel function of the first kind, order 1 (odd in z).
pub fn bessel_j1(z: f64) -> f64 {
    let az = z.abs();
    let v = if az < BESSEL_SWITCH {
        bessel_series(1, az)
    } else {
        bessel_asymptotic(1, az)
    };
    if z < 0.0 {
        -v
    } else {
        v
    }
}

/// k-th positive zero of J_ν (ν ∈ {0,1}), McMahon start + Newton polish.
pub fn bessel_zero(nu: u32, k: usize) -> f64 {
    let b = (k as f64 + 0.5 * nu as f64 - 0.25) * PI;
    let mu = 4.0 * (nu * nu) as f64;
    let mut x = b - (mu - 1.0) / (8.0 * b)
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * (8.0 * b).powi(3));
    for _ in 0..8 {
        let (f, df) = match nu {
            0 => (bessel_j0(x), -bessel_j1(x)),
            _ => (bessel_j1(x), bessel_j0(x) - bessel_j1(x) / x),
        };
        let dx = f / df;
        x -= dx;
        if dx.abs() < 1e-15 * x {
            break;
        }
    }
    x
}

/// Radial Fourier kernel K_n(z) = z^{1-n/2} J_{n/2-1}(z), the angular average
/// of e^{i x·ξ} over directions (unitary convention). K_n is even and entire;
/// K_n(0) = 2^{1-n/2}/Γ(n/2).
pub fn radial_kernel(n: u32, z: f64) -> f64 {
    let c = (2.0 / PI).sqrt();
    let z = z.abs();
    match n {
        1 => c * z.cos(),
        2 => bessel_j0(z),
        3 => {
            if z < 1e-6 {
                c * (1.0 - z * z / 6.0)
            } else {
                c * z.sin() / z
            }
        }
        4 => {
            if z < 0.5 {
                // J1(z)/z ascending series
                0.5 - z * z / 16.0 + z.powi(4) / 384.0 - z.powi(6) / 18432.0
                    + z.powi(8) / 1474560.0
            } else {
                bessel_j1(z) / z
            }
        }
        5 => {
            if z < 0.5 {
                c * sin_minus_zcos_over_z3(z)
            } else {
                c * (z.sin() - z * z.cos()) / (z * z * z)
            }
        }
        _ => panic!("radial_kernel: dimension {n} not supported"),
    }
}

/// Derivative K_n'(z); used for spectral evaluation of radial derivatives.
pub fn radial_kernel_deriv(n: u32, z: f64) -> f64 {
    let c = (2.0 / PI).sqrt();
    let z = z.abs();
    match n {
        1 => -c * z.sin(),
        2 => -bessel_j1(z),
        3 => -c * z * sin_minus_zcos_over_z3(z),
        4 => {
            if z < 0.5 {
                -z / 8.0 + z.powi(3) / 96.0 - z.powi(5) / 3072.0
            } else {
                bessel_j0(z) / z - 2.0 * bessel_j1(z) / (z * z)
            }
        }
        5 => {
            if z < 0.5 {
                // d/dz of (sin z - z cos z)/z^3 as a series
                let z2 = z * z;
                c * (-z / 15.0 + z2 * z / 210.0 - z2 * z2 * z / 7560.0)
            } else {
                c * (z * z * z.sin() - 3.0 * z.sin() + 3.0 * z * z.cos()) / z.powi(4)
            }
        }
        _ => panic!("radial_kernel_deriv: dimension {n} not supported"),
    }
}

// (sin z - z cos z)/z^3 = sum_{k>=1} (-1)^{k+1} (2k)/(2k+1)! z^{2(k-1)}, for small z.
fn sin_minus_zcos_over_z3(z: f64) -> f64 {
    let z2 = z * z;
    let mut sum = 0.0;
    let mut sign = 1.0;
    let mut fact = 6.0; // (2k+1)! at k = 1
    let mut zpow = 1.0; // z^{2(k-1)}
    for k in 1..30u64 {
        let t = sign * (2 * k) as f64 / fact * zpow;
        sum += t;
        if t.abs() < 1e-18 {
            break;
        }
        sign = -sign;
        zpow *= z2;
        fact *= ((2 * k + 2) * (2 * k + 3)) as f64;
    }
    sum
}

/// Nodes and weights of the K-point Gauss–Legendre rule on [-1, 1].
pub fn gauss_legendre(k: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; k];
    let mut weights = vec![0.0; k];
    let n = k as f64;
    for i in 0..(k + 1) / 2 {
        // Tricomi-style initial guess, then Newton on P_k.
        let mut x = (PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_pd(k, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[k - 1 - i] = x;
        weights[i] = w;
        weights[k - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_pd(k: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=k {
        let j = j as f64;
        let p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
    }
    let d = k as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// ∫_a^b f with a composite Gauss–Legendre rule (`panels` panels of `order` points).
pub fn integrate_gl(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize, order: usize) -> f64 {
    let (xs, ws) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut acc = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        for (x, w) in xs.iter().zip(&ws) {
            acc += w * f(mid + 0.5 * h * x);
        }
    }
    acc * 0.5 * h
}
