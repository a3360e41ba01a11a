//! Numerics laboratory for sharp trace Trudinger–Moser/Adams inequalities on
//! half-spaces: radial spectral calculus, polyharmonic extensions and their
//! energy identities, Fourier rearrangement, sharp-constant formulas,
//! extremal searches, a constrained ground-state solver, and blow-up probes.

pub mod constants;
pub mod corpus;
pub mod error;
pub mod extension;
pub mod extremals;
pub mod functionals;
pub mod grid;
pub mod rearrangement;
pub mod sharpness;
pub mod special;
pub mod transform;

pub use error::{Error, Result};
pub use grid::{GridScheme, GridSpec, ProfileRecord, RadialProfile, SpectralProfile};
pub use transform::{make_grid, TransformPlan};

/// Format a float with 17 significant digits ('.' decimal, signed exponent
/// form), the full-round-trip precision the file formats promise.
pub fn format_g17(x: f64) -> String {
    format!("{x:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        /// JSON round trip of a profile record is bit-exact for the values.
        #[test]
        fn profile_json_round_trip(seed in 0u64..10_000) {
            use rand::prelude::*;
            let plan = make_grid(GridSpec::new(3, 40.0, 64.max(16), GridScheme::Uniform)).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let (width, amp): (f64, f64) = (rng.gen_range(0.1..2.0), rng.gen_range(-3.0..3.0));
            let u = plan.profile_from_fn(|r| (-width * r * r).exp() * amp);
            let json = u.to_json().unwrap();
            let rec: ProfileRecord = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(rec.grid_spec(), u.spec);
            for (a, b) in rec.values.iter().zip(&u.values) {
                prop_assert_eq!(a.to_bits(), b.to_bits());
            }
        }
    }

    #[test]
    fn g17_round_trips() {
        for &x in &[std::f64::consts::PI, 1.0 / 3.0, 1e-300, 12345.6789e100] {
            let s = format_g17(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{s}");
        }
    }
}
