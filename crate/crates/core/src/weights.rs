//! Catalog of positive superharmonic weights on the unit disk.
//!
//! The catalog is closed so that every property the constructions rely on
//! (positivity, the mean-value inequality, the value of the infimum) has an
//! exact oracle. `log_reciprocal` has a pole at the origin, reported as a
//! distinguished infinite value and excluded from grids by a hard inner
//! radius of 1e-3.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mobius::MobiusInvolution;
use crate::quad::{tanh_sinh, GaussLegendre};
use crate::serde_util;

/// Hard inner exclusion radius around the `log_reciprocal` pole.
pub const LOG_POLE_EXCLUSION: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightSpec {
    /// `w(z) = c`, `c > 0`.
    Constant { c: f64 },
    /// `w(z) = (1 - |z|^2)^alpha`, `alpha` in `(0, 1]`.
    StandardAlpha { alpha: f64 },
    /// `w(z) = (1 - |z|^2)/|zeta - z|^2` for a unimodular `zeta`.
    Poisson {
        #[serde(with = "serde_util::c64")]
        zeta: Complex64,
    },
    /// `w(z) = log(1/|z|)`.
    LogReciprocal,
    /// `w(z) = 1 - |z|^2`; the `alpha = 1` standard weight kept as a named
    /// case because it is the workhorse of the certification tests.
    OneMinusR2,
}

impl WeightSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            WeightSpec::Constant { c } => {
                if !(c.is_finite() && *c > 0.0) {
                    return Err(Error::InvalidInput(format!(
                        "constant weight must be positive, got {c}"
                    )));
                }
            }
            WeightSpec::StandardAlpha { alpha } => {
                if !(alpha.is_finite() && *alpha > 0.0 && *alpha <= 1.0) {
                    return Err(Error::InvalidInput(format!(
                        "alpha must lie in (0, 1], got {alpha}"
                    )));
                }
            }
            WeightSpec::Poisson { zeta } => {
                let off = (zeta.norm() - 1.0).abs();
                if off.is_nan() || off > 1e-12 {
                    return Err(Error::InvalidInput(format!(
                        "poisson pole must be unimodular, got |zeta| = {}",
                        zeta.norm()
                    )));
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Pointwise evaluation; `|z| < 1`. The `log_reciprocal` pole at 0
    /// returns `f64::INFINITY`.
    pub fn eval(&self, z: Complex64) -> f64 {
        match self {
            WeightSpec::Constant { c } => *c,
            WeightSpec::StandardAlpha { alpha } => (1.0 - z.norm_sqr()).powf(*alpha),
            WeightSpec::Poisson { zeta } => (1.0 - z.norm_sqr()) / (zeta - z).norm_sqr(),
            WeightSpec::LogReciprocal => {
                if z == Complex64::new(0.0, 0.0) {
                    f64::INFINITY
                } else {
                    -z.norm().ln()
                }
            }
            WeightSpec::OneMinusR2 => 1.0 - z.norm_sqr(),
        }
    }

    /// `w(1 - eps)` evaluated in offset arithmetic; the real point `1 - eps`
    /// stays accurate for `eps` far below the ulp of 1.
    pub fn eval_near_one(&self, eps: f64) -> f64 {
        let one_minus_r_sq = eps * (2.0 - eps);
        match self {
            WeightSpec::Constant { c } => *c,
            WeightSpec::StandardAlpha { alpha } => one_minus_r_sq.powf(*alpha),
            WeightSpec::Poisson { zeta } => {
                // |zeta - (1 - eps)|^2 = |(zeta - 1) + eps|^2.
                let d = (zeta - 1.0) + eps;
                one_minus_r_sq / d.norm_sqr()
            }
            WeightSpec::LogReciprocal => -(-eps).ln_1p(),
            WeightSpec::OneMinusR2 => one_minus_r_sq,
        }
    }

    /// `w(phi(zeta))` through the cancellation-free transport of
    /// `1 - |phi|^2`; stays accurate when the automorphism parameter hugs the
    /// boundary.
    pub fn eval_at_mobius_image(&self, phi: &MobiusInvolution, zeta: Complex64) -> f64 {
        let s = phi.one_minus_abs_sq(zeta); // 1 - |phi(zeta)|^2
        match self {
            WeightSpec::Constant { c } => *c,
            WeightSpec::StandardAlpha { alpha } => s.powf(*alpha),
            WeightSpec::OneMinusR2 => s,
            WeightSpec::LogReciprocal => -0.5 * (-s).ln_1p(),
            WeightSpec::Poisson { zeta: pole } => {
                // P_pole(phi(z)) = P_pole(a) * P_{beta}(z) with a unimodular
                // moved pole beta; both factors are cancellation-free.
                let (scale, beta) = poisson_transport(phi, *pole);
                scale * (1.0 - zeta.norm_sqr()) / (beta - zeta).norm_sqr()
            }
        }
    }

    /// The exact infimum over the disk (0 for every non-constant catalog
    /// kind, `c` for constants).
    pub fn analytic_inf(&self) -> f64 {
        match self {
            WeightSpec::Constant { c } => *c,
            _ => 0.0,
        }
    }

    pub fn has_vanishing_inf(&self) -> bool {
        self.analytic_inf() == 0.0
    }

    /// `w'(z) := w(b z)` for unimodular `b`; closed under the catalog.
    pub fn rotate(&self, b: Complex64) -> WeightSpec {
        match self {
            WeightSpec::Poisson { zeta } => WeightSpec::Poisson {
                zeta: b.conj() * zeta,
            },
            other => other.clone(),
        }
    }

    /// Whether `w(z)` depends only on `|z|`.
    pub fn is_radial(&self) -> bool {
        !matches!(self, WeightSpec::Poisson { .. })
    }

    /// Angular mean of `w` at radius `rho` (exact for every catalog kind; the
    /// Poisson kernel averages to 1 on centered circles).
    pub fn radial_profile(&self, rho: f64) -> f64 {
        match self {
            WeightSpec::Poisson { .. } => 1.0,
            _ => self.eval(Complex64::new(rho, 0.0)),
        }
    }

    /// Five-point discrete-Laplacian sweep; superharmonicity demands a
    /// nonpositive Laplacian, so the test is one-sided.
    ///
    /// The per-node threshold is `tol_base * (|w| + 1)` plus an explicit
    /// `O(step^2)` truncation allowance for the two harmonic kinds whose
    /// fourth derivatives blow up toward their poles (`poisson`,
    /// `log_reciprocal`); for the remaining kinds the fourth derivatives are
    /// bounded on the grid and the allowance is zero.
    pub fn check_superharmonic(
        &self,
        grid_step: f64,
        tol_base: Option<f64>,
    ) -> Result<SuperharmonicReport> {
        if !(grid_step > 0.0 && grid_step <= 0.05) {
            return Err(Error::InvalidInput(format!(
                "grid step must lie in (0, 0.05], got {grid_step}"
            )));
        }
        let tol_base = tol_base.unwrap_or(1e-6);
        let h = grid_step;
        let n = (0.95 / h).floor() as i64;
        let mut max_lap = f64::NEG_INFINITY;
        let mut worst_excess = f64::NEG_INFINITY;
        let mut nodes = 0usize;
        for i in -n..=n {
            for j in -n..=n {
                let z = Complex64::new(i as f64 * h, j as f64 * h);
                let stencil = [
                    z,
                    z + Complex64::new(h, 0.0),
                    z - Complex64::new(h, 0.0),
                    z + Complex64::new(0.0, h),
                    z - Complex64::new(0.0, h),
                ];
                if stencil.iter().any(|p| p.norm() > 0.95) {
                    continue;
                }
                if !self.stencil_clear_of_pole(&stencil) {
                    continue;
                }
                let lap = (self.eval(stencil[1])
                    + self.eval(stencil[2])
                    + self.eval(stencil[3])
                    + self.eval(stencil[4])
                    - 4.0 * self.eval(stencil[0]))
                    / (h * h);
                let allowance = self.truncation_allowance(&stencil, h);
                let threshold = tol_base * (self.eval(z).abs() + 1.0) + allowance;
                nodes += 1;
                max_lap = max_lap.max(lap);
                worst_excess = worst_excess.max(lap - threshold);
            }
        }
        if nodes == 0 {
            return Err(Error::InvalidInput("superharmonicity grid is empty".into()));
        }
        Ok(SuperharmonicReport {
            max_discrete_laplacian: max_lap,
            worst_excess,
            nodes,
            pass: worst_excess <= 0.0,
        })
    }

    fn stencil_clear_of_pole(&self, stencil: &[Complex64; 5]) -> bool {
        match self {
            WeightSpec::LogReciprocal => stencil.iter().all(|p| p.norm() >= LOG_POLE_EXCLUSION),
            _ => true,
        }
    }

    // Bound on (step^2/12) * |w_xxxx + w_yyyy| for the harmonic kinds, where
    // the discrete Laplacian of an exactly harmonic function is pure
    // truncation error. Inflated 1.5x for the higher-order terms.
    fn truncation_allowance(&self, stencil: &[Complex64; 5], h: f64) -> f64 {
        match self {
            WeightSpec::Poisson { zeta } => {
                // w = Re[(zeta + z)/(zeta - z)]; fourth derivative bound 96/d^5.
                let d = stencil
                    .iter()
                    .map(|p| (zeta - p).norm())
                    .fold(f64::INFINITY, f64::min)
                    - h;
                let d = d.max(1e-6);
                1.5 * (h * h / 12.0) * 96.0 / d.powi(5)
            }
            WeightSpec::LogReciprocal => {
                let r = stencil
                    .iter()
                    .map(|p| p.norm())
                    .fold(f64::INFINITY, f64::min)
                    - h;
                let r = r.max(LOG_POLE_EXCLUSION);
                1.5 * (h * h / 12.0) * 12.0 / r.powi(4)
            }
            _ => 0.0,
        }
    }

    /// Trapezoid circle average against the center value: superharmonic
    /// functions average below their center. The quadrature tolerance is
    /// self-estimated by doubling the sample count.
    pub fn check_mean_value(
        &self,
        center: Complex64,
        radius: f64,
        n_samples: usize,
    ) -> Result<MeanValueReport> {
        if n_samples < 64 {
            return Err(Error::InvalidInput(
                "mean-value check needs at least 64 samples".into(),
            ));
        }
        let reach = center.norm() + radius;
        if reach.is_nan() || reach >= 1.0 {
            return Err(Error::InvalidInput(
                "mean-value circle must lie inside the open disk".into(),
            ));
        }
        let average = |m: usize| -> f64 {
            (0..m)
                .map(|j| {
                    let theta = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
                    self.eval(center + Complex64::from_polar(radius, theta))
                })
                .sum::<f64>()
                / m as f64
        };
        let a1 = average(n_samples);
        let a2 = average(2 * n_samples);
        let center_value = self.eval(center);
        let quad_tol = 10.0 * (a2 - a1).abs() + 1e-12 * (1.0 + a2.abs());
        let pass = if center_value.is_infinite() {
            a2.is_finite()
        } else {
            a2 <= center_value + quad_tol
        };
        Ok(MeanValueReport {
            circle_average: a2,
            center_value,
            quad_tol,
            pass,
        })
    }

    /// Seeded sweep of the mean-value inequality over random admissible
    /// circles; reports the worst observed excess of the average over the
    /// center value.
    pub fn mean_value_sweep(
        &self,
        circles: usize,
        n_samples: usize,
        seed: u64,
    ) -> Result<MeanValueSweep> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut pass = true;
        let mut worst: Option<MeanValueReport> = None;
        for _ in 0..circles {
            let center = Complex64::from_polar(
                0.7 * rng.gen::<f64>().sqrt(),
                rng.gen_range(0.0..2.0 * std::f64::consts::PI),
            );
            let radius = rng.gen_range(0.01..(0.98 - center.norm()).max(0.011));
            let report = self.check_mean_value(center, radius, n_samples)?;
            pass &= report.pass;
            let excess = report.circle_average - report.center_value;
            if worst
                .as_ref()
                .map(|b| excess > b.circle_average - b.center_value)
                .unwrap_or(true)
            {
                worst = Some(report);
            }
        }
        let worst = worst.ok_or_else(|| Error::InvalidInput("sweep needs circles >= 1".into()))?;
        Ok(MeanValueSweep {
            circles,
            pass,
            worst,
        })
    }

    /// Minimum of `w` over a grid condensing geometrically toward the
    /// boundary, together with the exact infimum for the catalog kind. The
    /// grid minimum is an upper bound for the infimum.
    pub fn inf_estimate(&self, n_radii: usize, n_angles: usize) -> Result<InfEstimate> {
        if n_radii < 16 || n_angles < 16 {
            return Err(Error::InvalidInput(
                "inf grid needs at least 16x16 nodes".into(),
            ));
        }
        let mut grid_min = f64::INFINITY;
        for i in 0..n_radii {
            // 1 - r shrinks geometrically from 0.9 down to ~1e-12.
            let t = i as f64 / (n_radii - 1) as f64;
            let r = 1.0 - 0.9 * (1e-12f64 / 0.9).powf(t);
            if matches!(self, WeightSpec::LogReciprocal) && r < LOG_POLE_EXCLUSION {
                continue;
            }
            for j in 0..n_angles {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / n_angles as f64;
                grid_min = grid_min.min(self.eval(Complex64::from_polar(r, theta)));
            }
        }
        Ok(InfEstimate {
            grid_min,
            analytic: self.analytic_inf(),
        })
    }

    /// `(1/pi) * Integral_D w dA` against the exact angular mean (every
    /// catalog kind has one: the Poisson kernel averages to 1). Kinds whose
    /// radial profile has an endpoint singularity integrate under the
    /// tanh-sinh rule; the polynomial profiles under Gauss-Legendre.
    pub fn integral_over_disk(&self) -> f64 {
        self.integral_over_disk_with(256)
    }

    /// Same integral at a caller-chosen radial resolution (used by the
    /// doubling self-consistency check).
    pub fn integral_over_disk_with(&self, n_radial: usize) -> f64 {
        match self {
            WeightSpec::StandardAlpha { .. } | WeightSpec::LogReciprocal => {
                2.0 * tanh_sinh(0.0, 1.0, n_radial.max(64), |rho| {
                    rho * self.radial_profile(rho)
                })
            }
            _ => {
                let gl = GaussLegendre::new(n_radial);
                2.0 * gl.integrate(0.0, 1.0, |rho| rho * self.radial_profile(rho))
            }
        }
    }
}

/// `P_pole(phi_a(z)) = scale * P_beta(z)`: conjugating a Poisson kernel by a
/// disk involution moves the pole and scales by the kernel at the parameter.
fn poisson_transport(phi: &MobiusInvolution, pole: Complex64) -> (f64, Complex64) {
    let (pole_minus_a, one_minus_abar_pole) = match phi.eps() {
        Some(eps) => ((pole - 1.0) + eps, (1.0 - pole) + eps * pole),
        None => {
            let a = phi.param();
            (pole - a, 1.0 - a.conj() * pole)
        }
    };
    let scale = phi.one_minus_param_sq() / pole_minus_a.norm_sqr();
    let beta = -(one_minus_abar_pole / pole_minus_a).conj();
    (scale, beta)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuperharmonicReport {
    pub max_discrete_laplacian: f64,
    /// Largest value of (laplacian - per-node threshold); pass iff <= 0.
    pub worst_excess: f64,
    pub nodes: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeanValueReport {
    pub circle_average: f64,
    pub center_value: f64,
    pub quad_tol: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InfEstimate {
    pub grid_min: f64,
    pub analytic: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeanValueSweep {
    pub circles: usize,
    pub pass: bool,
    pub worst: MeanValueReport,
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_fixed_values() {
        assert_abs_diff_eq!(
            WeightSpec::OneMinusR2.eval(c(0.6, 0.0)),
            0.64,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            WeightSpec::Poisson { zeta: c(1.0, 0.0) }.eval(c(0.0, 0.0)),
            1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            WeightSpec::LogReciprocal.eval(c((-1.0f64).exp(), 0.0)),
            1.0,
            epsilon = 1e-15
        );
        assert_eq!(WeightSpec::LogReciprocal.eval(c(0.0, 0.0)), f64::INFINITY);
    }

    #[test]
    fn superharmonic_one_minus_r2_is_exactly_minus_four() {
        let report = WeightSpec::OneMinusR2
            .check_superharmonic(0.01, None)
            .unwrap();
        assert!(report.pass);
        assert_abs_diff_eq!(report.max_discrete_laplacian, -4.0, epsilon = 1e-9);
    }

    #[test]
    fn superharmonic_constant_is_flat() {
        let report = WeightSpec::Constant { c: 1.0 }
            .check_superharmonic(0.01, None)
            .unwrap();
        assert!(report.pass);
        assert!(report.max_discrete_laplacian.abs() < 1e-12);
    }

    #[test]
    fn superharmonic_harmonic_kinds_pass_with_allowance() {
        for w in [
            WeightSpec::Poisson { zeta: c(1.0, 0.0) },
            WeightSpec::LogReciprocal,
            WeightSpec::StandardAlpha { alpha: 0.5 },
        ] {
            let report = w.check_superharmonic(0.01, None).unwrap();
            assert!(report.pass, "{w:?}: excess {}", report.worst_excess);
        }
    }

    #[test]
    fn mean_value_fixed_cases() {
        let r = WeightSpec::Poisson { zeta: c(1.0, 0.0) }
            .check_mean_value(c(0.0, 0.0), 0.5, 256)
            .unwrap();
        assert!(r.pass);
        assert_abs_diff_eq!(r.circle_average, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.center_value, 1.0, epsilon = 1e-15);

        let r = WeightSpec::OneMinusR2
            .check_mean_value(c(0.0, 0.0), 0.5, 256)
            .unwrap();
        assert!(r.pass);
        assert_abs_diff_eq!(r.circle_average, 0.75, epsilon = 1e-12);

        let r = WeightSpec::Constant { c: 3.0 }
            .check_mean_value(c(0.2, 0.1), 0.3, 64)
            .unwrap();
        assert!(r.pass);
        assert_abs_diff_eq!(r.circle_average, 3.0, epsilon = 1e-15);
    }

    #[test]
    fn mean_value_log_contains_pole() {
        // Circle around the origin: average -ln(rho) is finite, center infinite.
        let r = WeightSpec::LogReciprocal
            .check_mean_value(c(0.0, 0.0), 0.4, 128)
            .unwrap();
        assert!(r.pass);
        assert_abs_diff_eq!(r.circle_average, -(0.4f64).ln(), epsilon = 1e-10);
    }

    #[test]
    fn integral_fixed_values() {
        assert_abs_diff_eq!(
            WeightSpec::Constant { c: 1.0 }.integral_over_disk(),
            1.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            WeightSpec::OneMinusR2.integral_over_disk(),
            0.5,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            WeightSpec::Poisson { zeta: c(0.0, 1.0) }.integral_over_disk(),
            1.0,
            epsilon = 1e-12
        );
        // 2 * Integral_0^1 -r ln r dr = 1/2.
        assert_abs_diff_eq!(
            WeightSpec::LogReciprocal.integral_over_disk(),
            0.5,
            epsilon = 1e-8
        );
    }

    #[test]
    fn integral_stable_under_node_doubling() {
        for w in [
            WeightSpec::OneMinusR2,
            WeightSpec::StandardAlpha { alpha: 0.5 },
            WeightSpec::LogReciprocal,
            WeightSpec::Constant { c: 2.0 },
        ] {
            let a = w.integral_over_disk_with(256);
            let b = w.integral_over_disk_with(512);
            assert!((a - b).abs() < 1e-8, "{w:?}: {a} vs {b}");
        }
    }

    #[test]
    fn inf_estimates() {
        let e = WeightSpec::Constant { c: 1.0 }
            .inf_estimate(32, 32)
            .unwrap();
        assert_eq!(e.grid_min, 1.0);
        assert_eq!(e.analytic, 1.0);

        let e = WeightSpec::OneMinusR2.inf_estimate(64, 32).unwrap();
        assert!(e.grid_min < 1e-10);
        assert_eq!(e.analytic, 0.0);

        let e = WeightSpec::LogReciprocal.inf_estimate(64, 32).unwrap();
        assert!(e.grid_min < 1e-10);
        assert_eq!(e.analytic, 0.0);
    }

    #[test]
    fn near_one_evaluation_matches_direct_at_moderate_eps() {
        let eps = 1e-6;
        let z = c(1.0 - eps, 0.0);
        for w in [
            WeightSpec::OneMinusR2,
            WeightSpec::StandardAlpha { alpha: 0.5 },
            WeightSpec::Poisson { zeta: c(-1.0, 0.0) },
            WeightSpec::LogReciprocal,
        ] {
            let direct = w.eval(z);
            let offset = w.eval_near_one(eps);
            assert!(
                (direct - offset).abs() <= 1e-9 * offset.abs(),
                "{w:?}: {direct} vs {offset}"
            );
        }
    }

    #[test]
    fn mobius_image_evaluation_matches_direct() {
        let phi = MobiusInvolution::new(c(0.4, -0.2)).unwrap();
        let z = c(0.3, 0.5);
        for w in [
            WeightSpec::OneMinusR2,
            WeightSpec::StandardAlpha { alpha: 0.7 },
            WeightSpec::Poisson { zeta: c(0.6, 0.8) },
            WeightSpec::LogReciprocal,
            WeightSpec::Constant { c: 2.5 },
        ] {
            let direct = w.eval(phi.apply(z));
            let transported = w.eval_at_mobius_image(&phi, z);
            assert!(
                (direct - transported).abs() <= 1e-12 * (1.0 + direct.abs()),
                "{w:?}: {direct} vs {transported}"
            );
        }
    }

    #[test]
    fn rotation_closes_the_catalog() {
        let b = Complex64::from_polar(1.0, 0.7);
        let w = WeightSpec::Poisson { zeta: c(1.0, 0.0) }.rotate(b);
        match w {
            WeightSpec::Poisson { zeta } => {
                assert_abs_diff_eq!((zeta - b.conj()).norm(), 0.0, epsilon = 1e-15)
            }
            _ => panic!("rotation must stay in the catalog"),
        }
        // w'(z) = w(bz) pointwise.
        let w0 = WeightSpec::Poisson { zeta: c(1.0, 0.0) };
        let w1 = w0.rotate(b);
        let z = c(0.2, -0.4);
        assert_abs_diff_eq!(w1.eval(z), w0.eval(b * z), epsilon = 1e-14);
    }

    #[test]
    fn validation_rejects_bad_parameters() {
        assert!(WeightSpec::Constant { c: 0.0 }.validate().is_err());
        assert!(WeightSpec::StandardAlpha { alpha: 1.5 }.validate().is_err());
        assert!(WeightSpec::Poisson { zeta: c(0.5, 0.0) }
            .validate()
            .is_err());
        assert!(WeightSpec::OneMinusR2.validate().is_ok());
        // Non-finite parameters cannot slip through NaN-quiet comparisons.
        assert!(WeightSpec::Constant { c: f64::NAN }.validate().is_err());
        assert!(WeightSpec::StandardAlpha { alpha: f64::NAN }
            .validate()
            .is_err());
        assert!(WeightSpec::Poisson {
            zeta: c(f64::NAN, 0.0)
        }
        .validate()
        .is_err());
    }

    #[test]
    fn weight_json_schema() {
        let w: WeightSpec = serde_json::from_str(r#"{"kind":"one_minus_r2"}"#).unwrap();
        assert_eq!(w, WeightSpec::OneMinusR2);
        let w: WeightSpec =
            serde_json::from_str(r#"{"kind":"standard_alpha","alpha":0.5}"#).unwrap();
        assert_eq!(w, WeightSpec::StandardAlpha { alpha: 0.5 });
        let w: WeightSpec = serde_json::from_str(r#"{"kind":"poisson","zeta":[0.0,1.0]}"#).unwrap();
        assert_eq!(w, WeightSpec::Poisson { zeta: c(0.0, 1.0) });
    }
}
