//! Shared parameter sets for the benchmarks.

use fockres::{CircleParam, SqueezeParam, WeightFunction};
use num_complex::Complex64;

/// Squeeze parameters from weak to strong squeezing.
pub fn squeeze_params() -> Vec<(&'static str, SqueezeParam)> {
    [
        ("weak", 0.2, 0.3),
        ("moderate", 0.6, -1.1),
        ("strong", 0.9, 2.5),
    ]
    .into_iter()
    .map(|(name, r, phi)| {
        (
            name,
            SqueezeParam::from_polar(r, phi).expect("valid squeeze"),
        )
    })
    .collect()
}

/// Circle-state parameters `(λ, μ)` at a moderate amplitude.
pub fn circle_params() -> Vec<(String, CircleParam)> {
    [(1, 0), (2, 1), (4, 3)]
        .into_iter()
        .map(|(l, mu)| {
            let p = CircleParam::new(Complex64::from_polar(1.5, 0.4), l, mu).expect("valid circle");
            (format!("l{l}_mu{mu}"), p)
        })
        .collect()
}

/// One weight function from each family.
pub fn weight_families() -> Vec<(&'static str, WeightFunction)> {
    vec![
        ("pasvs_m2", WeightFunction::Pasvs { m: 2 }),
        ("pasops_m1", WeightFunction::Pasops { m: 1 }),
        (
            "pacsc_l2_mu1_m1",
            WeightFunction::Pacsc {
                lambda: 2,
                mu: 1,
                m: 1,
            },
        ),
    ]
}
