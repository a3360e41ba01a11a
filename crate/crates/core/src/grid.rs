//! Radial grids and sampled profiles.
//!
//! A `RadialProfile` is a radial function u(r) in dimension n sampled on a
//! positive grid, with quadrature weights w_i such that Σ w_i f(r_i)
//! approximates ω_{n-1}∫₀^∞ f(r) r^{n-1} dr. A `SpectralProfile` is the same
//! structure on the paired frequency grid. Nodes and weights are shared
//! (`Arc`) with the plan that built them, so profiles are cheap to clone.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridScheme {
    /// Midpoint nodes r_i = (i-1/2)R/N for odd n; Bessel-zero nodes for even n.
    Uniform,
    /// Geometric nodes; transforms use per-segment Filon quadrature (n ∈ {1,3}).
    Log,
}

impl std::fmt::Display for GridScheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GridScheme::Uniform => write!(f, "uniform"),
            GridScheme::Log => write!(f, "log"),
        }
    }
}

impl std::str::FromStr for GridScheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(GridScheme::Uniform),
            "log" => Ok(GridScheme::Log),
            other => Err(Error::invalid(format!("unknown grid scheme '{other}'"))),
        }
    }
}

/// Everything needed to rebuild a grid bit-for-bit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    /// Ambient dimension n ≥ 1.
    pub dim: u32,
    /// Domain radius R: the grid covers (0, R].
    pub radius: f64,
    /// Node count N ≥ 16.
    pub len: usize,
    pub scheme: GridScheme,
}

impl GridSpec {
    pub fn new(dim: u32, radius: f64, len: usize, scheme: GridScheme) -> Self {
        GridSpec { dim, radius, len, scheme }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 1 {
            return Err(Error::invalid("dimension must be >= 1"));
        }
        if !(self.radius > 0.0) || !self.radius.is_finite() {
            return Err(Error::invalid("radius must be positive and finite"));
        }
        if self.len < 16 {
            return Err(Error::invalid("node count must be >= 16"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct RadialProfile {
    pub spec: GridSpec,
    pub nodes: Arc<[f64]>,
    pub weights: Arc<[f64]>,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct SpectralProfile {
    /// Spec of the paired physical grid (frequency nodes are derived from it).
    pub spec: GridSpec,
    pub nodes: Arc<[f64]>,
    pub weights: Arc<[f64]>,
    pub values: Vec<f64>,
}

macro_rules! profile_common {
    ($ty:ident) => {
        impl $ty {
            pub fn len(&self) -> usize {
                self.values.len()
            }

            pub fn is_empty(&self) -> bool {
                self.values.is_empty()
            }

            /// Weighted L^q norm (Σ w_i |u_i|^q)^{1/q}, q ≥ 1.
            pub fn lp_norm(&self, q: f64) -> Result<f64> {
                if q < 1.0 {
                    return Err(Error::invalid(format!("lp_norm requires q >= 1, got {q}")));
                }
                let s: f64 = self
                    .values
                    .iter()
                    .zip(self.weights.iter())
                    .map(|(v, w)| w * v.abs().powf(q))
                    .sum();
                Ok(s.powf(1.0 / q))
            }

            /// Weighted L² norm, the common case.
            pub fn l2_norm(&self) -> f64 {
                self.values
                    .iter()
                    .zip(self.weights.iter())
                    .map(|(v, w)| w * v * v)
                    .sum::<f64>()
                    .sqrt()
            }

            /// Weighted inner product against another profile on the same grid.
            pub fn inner(&self, other: &$ty) -> f64 {
                self.values
                    .iter()
                    .zip(&other.values)
                    .zip(self.weights.iter())
                    .map(|((a, b), w)| w * a * b)
                    .sum()
            }

            /// In-place scale by a constant.
            pub fn scale(&mut self, c: f64) {
                for v in &mut self.values {
                    *v *= c;
                }
            }

            pub fn scaled(&self, c: f64) -> $ty {
                let mut out = self.clone();
                out.scale(c);
                out
            }

            pub fn same_grid(&self, other: &$ty) -> bool {
                Arc::ptr_eq(&self.nodes, &other.nodes)
                    || (self.spec == other.spec && self.nodes == other.nodes)
            }

            pub fn all_finite(&self) -> bool {
                self.values.iter().all(|v| v.is_finite())
            }
        }
    };
}

profile_common!(RadialProfile);
profile_common!(SpectralProfile);

/// JSON representation: the grid is carried as its spec, not as node arrays.
/// Round-tripping through this record is bit-exact for the values.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProfileRecord {
    pub n: u32,
    #[serde(rename = "R")]
    pub radius: f64,
    #[serde(rename = "N")]
    pub len: usize,
    pub scheme: GridScheme,
    pub values: Vec<f64>,
}

impl RadialProfile {
    pub fn to_record(&self) -> ProfileRecord {
        ProfileRecord {
            n: self.spec.dim,
            radius: self.spec.radius,
            len: self.spec.len,
            scheme: self.spec.scheme,
            values: self.values.clone(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.to_record())?)
    }

    /// CSV export with columns r, u at full round-trip precision.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,u\n");
        for (r, u) in self.nodes.iter().zip(&self.values) {
            out.push_str(&format!("{},{}\n", crate::format_g17(*r), crate::format_g17(*u)));
        }
        out
    }
}

impl ProfileRecord {
    pub fn grid_spec(&self) -> GridSpec {
        GridSpec::new(self.n, self.radius, self.len, self.scheme)
    }
}
