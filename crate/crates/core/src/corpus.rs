//! Seeded corpora of random smooth radial profiles for property checks.
//!
//! Profiles are sums of even-analytic terms a·r^{2m}·e^{-b r²}·cos(ωr); any
//! odd derivative at r = 0 would break the superalgebraic accuracy of the
//! half-line quadratures the tight invariants rely on. Band limits stay well
//! inside the default frequency cutoffs.

use crate::grid::RadialProfile;
use crate::transform::TransformPlan;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// One random smooth profile.
pub fn smooth_profile(plan: &TransformPlan, rng: &mut ChaCha8Rng) -> RadialProfile {
    loop {
        let mut terms = Vec::new();
        for _ in 0..3 {
            let a: f64 = rng.gen_range(-1.0..1.0);
            let b: f64 = rng.gen_range(0.4..1.5);
            let m: i32 = rng.gen_range(0..3);
            let w: f64 = rng.gen_range(0.0..5.0);
            terms.push((a, b, m, w));
        }
        let u = plan.profile_from_fn(|r| {
            terms
                .iter()
                .map(|(a, b, m, w)| a * r.powi(2 * m) * (-b * r * r).exp() * (w * r).cos())
                .sum()
        });
        if u.l2_norm() > 1e-3 {
            return u;
        }
    }
}

/// A reproducible corpus of `count` profiles.
pub fn smooth_corpus(plan: &TransformPlan, count: usize, seed: u64) -> Vec<RadialProfile> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| smooth_profile(plan, &mut rng)).collect()
}
