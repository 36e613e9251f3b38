//! Certified construction of a surjective function in a weighted Dirichlet
//! space with vanishing weight infimum.
//!
//! The function is a lacunary-type sum `f = sum_n lambda^n (h o phi_n)` with
//! `h(z) = z (b - z)` for a boundary point `b` and involutions `phi_n` whose
//! parameters climb a ladder `a_n = 1 - eps_n` toward `b`. Each ladder entry
//! is accepted only after two sampled/quadrature conditions hold with a
//! recorded margin of at least 2x:
//!
//! 1. `||h o phi_n||_{D_w} < (2 lambda)^{-n} / 2`, with the Hardy part in
//!    closed form and the energy part certified by the reduced pullback
//!    quadrature (falling back to the superharmonic mean-value bound
//!    `9 w(a_n)` for the catalog kinds without an exact reduction);
//! 2. `max |h o phi_n| < (2 lambda)^{-n} / 2` over the boundaries of all
//!    earlier term disks (the maximum principle reduces closures to their
//!    boundary circles), sampled with a 1% inflation allowance.
//!
//! Targets are then hit by a Rouché argument on the term disk of the minimal
//! admissible index: the dominant term has sampled boundary minimum
//! `lambda^n m`, everything else plus the target is bounded by
//! `lambda^n M/(lambda-1) + 1 + |w0|`, and the winding number of the partial
//! sum minus the target certifies a zero inside.
//!
//! The boundary point is normalized to 1 internally (the rotation is
//! recorded and re-applied on output), and all near-boundary geometry is
//! carried as offsets from 1, so ladders whose `eps_n` lie far below the ulp
//! of 1 remain exactly representable.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dd::CDd;
use crate::energy::{self, QuadratureParams};
use crate::error::{Error, Result};
use crate::mobius::{DiskRegion, MobiusInvolution};
use crate::serde_util;
use crate::weights::WeightSpec;
use crate::zeros::{winding_on_path, WindingCertificate};
use crate::Precision;

/// Ladder depth caps per arithmetic mode.
pub const STANDARD_TERM_CAP: usize = 4;
pub const EXTENDED_TERM_CAP: usize = 6;

/// Uniform samples for the boundary statistics of a hit certificate.
const CONTOUR_SAMPLES: usize = 4096;
/// Samples per earlier disk boundary in the compact-set condition.
const COMPACT_SAMPLES: usize = 4096;
/// Inflation applied to the sampled compact-set maximum before it is
/// compared to the selection bound (the ladder search then guarantees a 2x
/// margin on top of this).
const SAMPLING_INFLATION: f64 = 1.01;

/// Constants of the construction for `h(z) = z (b - z)`, `|b| = 1`:
/// `m = min_{|z|=r} |h| = r (1 - r)` (the nearest boundary point of the
/// `h`-circle), `M = sup_D |h| = 2` (approached, not attained), and
/// `lambda = 2 + M/m`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SurjectiveConstants {
    pub r: f64,
    pub m: f64,
    pub m_sup: f64,
    pub lambda: f64,
}

pub fn constants(r: f64) -> Result<SurjectiveConstants> {
    if !(0.0 < r && r < 1.0) {
        return Err(Error::InvalidInput(format!(
            "r must lie in (0, 1), got {r}"
        )));
    }
    let m = r * (1.0 - r);
    let m_sup = 2.0;
    let lambda = 2.0 + m_sup / m;
    // Sampled verification of the closed forms.
    let sampled_min = (0..2048)
        .map(|j| {
            let zeta = Complex64::from_polar(r, 2.0 * std::f64::consts::PI * j as f64 / 2048.0);
            (zeta * (Complex64::new(1.0, 0.0) - zeta)).norm()
        })
        .fold(f64::INFINITY, f64::min);
    if (sampled_min - m).abs() > 1e-10 * m {
        return Err(Error::CertificationFailed(format!(
            "sampled min {sampled_min} disagrees with closed form {m}"
        )));
    }
    let sampled_sup = (0..64)
        .map(|k| {
            let rho = 1.0 - 0.5f64.powi(k);
            rho * (1.0 + rho)
        })
        .fold(0.0f64, f64::max);
    if sampled_sup > m_sup || sampled_sup < m_sup - 1e-6 {
        return Err(Error::CertificationFailed(format!(
            "sampled sup {sampled_sup} inconsistent with supremum {m_sup}"
        )));
    }
    Ok(SurjectiveConstants {
        r,
        m,
        m_sup,
        lambda,
    })
}

/// Term disk of the ladder in offset form: the disk
/// `{ z : |z - (1 - offset_center)| < radius }` in the normalized frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LadderDisk {
    pub offset_center: f64,
    pub radius: f64,
}

impl LadderDisk {
    /// `1 - z` for the boundary point of the disk at angle `theta`.
    pub fn offset_at(&self, theta: f64) -> Complex64 {
        Complex64::new(self.offset_center, 0.0) - Complex64::from_polar(self.radius, theta)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LadderEntry {
    pub eps: f64,
    /// Selection bound `(2 lambda)^{-n}` for this index.
    pub bound: f64,
    /// Certified `||h o phi_n||_{D_w}` (Hardy part exact, energy part doubled
    /// as a safety factor).
    pub certified_norm: f64,
    /// `bound / certified_norm`; at least 2 by construction.
    pub norm_margin: f64,
    /// Inflated sampled max of `|h o phi_n|` over earlier disk boundaries
    /// (zero for the first entry).
    pub compact_max: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compact_margin: Option<f64>,
    pub disk: LadderDisk,
}

/// The certified data of the ladder construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurjectiveSeries {
    pub weight: WeightSpec,
    #[serde(with = "serde_util::c64")]
    pub boundary_point: Complex64,
    pub r: f64,
    pub m: f64,
    pub m_sup: f64,
    pub lambda: f64,
    pub ladder: Vec<LadderEntry>,
    pub n_terms: usize,
    pub precision: Precision,
}

impl SurjectiveSeries {
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn ladder(&self) -> &[LadderEntry] {
        &self.ladder
    }

    /// Invariants checked when a series file is loaded.
    pub fn validate(&self) -> Result<()> {
        self.weight.validate()?;
        if (self.boundary_point.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(
                "boundary point must be unimodular".into(),
            ));
        }
        if self.ladder.len() != self.n_terms {
            return Err(Error::InvalidInput(
                "ladder length must equal n_terms".into(),
            ));
        }
        let consts = constants(self.r)?;
        if self.lambda != consts.lambda || self.m != consts.m || self.m_sup != consts.m_sup {
            return Err(Error::InvalidInput(
                "stored constants disagree with lambda = 2 + M/m for the stored r".into(),
            ));
        }
        let mut prev = f64::INFINITY;
        for (i, e) in self.ladder.iter().enumerate() {
            if !(e.eps > 0.0 && e.eps < prev) {
                return Err(Error::InvalidInput(format!(
                    "ladder offsets must decrease strictly (entry {i})"
                )));
            }
            let margin_ok = |m: f64| m.is_finite() && m >= 2.0;
            if !margin_ok(e.norm_margin) || e.compact_margin.is_some_and(|m| !margin_ok(m)) {
                return Err(Error::InvalidInput(format!(
                    "ladder entry {i} lacks the required 2x margin"
                )));
            }
            prev = e.eps;
        }
        Ok(())
    }

    /// Builds the ladder for a weight with vanishing infimum.
    ///
    /// For each index the offset is halved from 1e-2 until both selection
    /// conditions are certified with margin >= 2. The superharmonic bound
    /// `9 w(a_n)` steers the search; the reduced pullback quadrature is the
    /// certified energy.
    pub fn select_ladder(
        weight: &WeightSpec,
        r: f64,
        n_terms: usize,
        precision: Precision,
    ) -> Result<SurjectiveSeries> {
        weight.validate()?;
        if !weight.has_vanishing_inf() {
            return Err(Error::WeightNotVanishing {
                inf: weight.analytic_inf(),
            });
        }
        if n_terms == 0 {
            return Err(Error::InvalidInput("ladder needs at least one term".into()));
        }
        let cap = match precision {
            Precision::Standard => STANDARD_TERM_CAP,
            Precision::Extended => EXTENDED_TERM_CAP,
        };
        if n_terms > cap {
            return Err(Error::PrecisionExhausted(format!(
                "{n_terms} terms exceed the {} cap of {cap}",
                match precision {
                    Precision::Standard => "standard",
                    Precision::Extended => "extended",
                }
            )));
        }
        let consts = constants(r)?;
        let boundary_point = match weight {
            WeightSpec::Poisson { zeta } => -zeta,
            _ => Complex64::new(1.0, 0.0),
        };
        let w_norm = weight.rotate(boundary_point);
        let h = energy::h_poly(Complex64::new(1.0, 0.0));
        let params = QuadratureParams::default();

        let mut ladder: Vec<LadderEntry> = Vec::with_capacity(n_terms);
        let mut prev_eps = 0.02f64;
        for n in 1..=n_terms {
            let bound = (2.0 * consts.lambda).powi(-(n as i32));
            let mut eps = (prev_eps * 0.5).min(1e-2);
            let entry = loop {
                if eps < 1e-300 {
                    return Err(Error::PrecisionExhausted(format!(
                        "ladder offset for index {n} underflowed the floating range"
                    )));
                }
                // Steering heuristic: closed-form Hardy part plus the
                // superharmonic mean-value bound on the energy.
                let heuristic = 2.0 * eps + 9.0 * w_norm.eval_near_one(eps);
                if heuristic >= (bound / 2.0) * (bound / 2.0) {
                    eps *= 0.5;
                    continue;
                }
                let compact_max = if n == 1 {
                    0.0
                } else {
                    SAMPLING_INFLATION * compact_set_max(&ladder, eps)
                };
                if n > 1 && compact_max >= bound / 2.0 {
                    eps *= 0.5;
                    continue;
                }
                let phi = MobiusInvolution::near_one(eps)?;
                let energy_part = match energy::weighted_energy_composed(&h, &phi, &w_norm, params)
                {
                    Ok(v) => v,
                    // No exact reduction for this kind: certify through
                    // the mean-value bound instead.
                    Err(Error::NonConvergent { .. }) => 9.0 * w_norm.eval_near_one(eps),
                    Err(e) => return Err(e),
                };
                // Hardy part exact (2 eps for b = 1); energy doubled as a
                // safety factor against quadrature jitter.
                let certified_norm = (2.0 * eps + 2.0 * energy_part).sqrt();
                if certified_norm >= bound / 2.0 {
                    eps *= 0.5;
                    continue;
                }
                let (offset_center, radius) = phi.image_disk_offset(r)?;
                break LadderEntry {
                    eps,
                    bound,
                    certified_norm,
                    norm_margin: bound / certified_norm,
                    compact_max,
                    compact_margin: (n > 1).then(|| bound / compact_max),
                    disk: LadderDisk {
                        offset_center,
                        radius,
                    },
                };
            };
            prev_eps = entry.eps;
            ladder.push(entry);
        }

        Ok(SurjectiveSeries {
            weight: weight.clone(),
            boundary_point,
            r: consts.r,
            m: consts.m,
            m_sup: consts.m_sup,
            lambda: consts.lambda,
            ladder,
            n_terms,
            precision,
        })
    }

    /// Partial sum `sum_{n <= upto} lambda^n (h o phi_n)` at `z`, by direct
    /// Möbius evaluation of every term.
    pub fn eval_partial_sum(&self, z: Complex64, upto: usize) -> Complex64 {
        assert!(
            upto <= self.n_terms,
            "partial sum index exceeds the term budget"
        );
        debug_assert!(z.norm() <= 1.0 + 1e-9, "evaluation outside the closed disk");
        let zeta = self.boundary_point.conj() * z;
        match self.precision {
            Precision::Standard => {
                let delta = Complex64::new(1.0, 0.0) - zeta;
                let mut acc = Complex64::new(0.0, 0.0);
                let mut lam = 1.0;
                for entry in &self.ladder[..upto] {
                    lam *= self.lambda;
                    acc += lam * h_term_at_offset(entry.eps, delta);
                }
                acc
            }
            Precision::Extended => {
                let delta = CDd::one_minus(zeta);
                let mut acc = CDd::ZERO;
                let mut lam = 1.0;
                for entry in &self.ladder[..upto] {
                    lam *= self.lambda;
                    acc = acc + h_term_at_offset_dd(entry.eps, delta).mul_f64(lam);
                }
                acc.to_c64()
            }
        }
    }

    /// Minimal admissible term index for a target: the smallest `n` with
    /// `lambda^n (m - M/(lambda-1)) > |w0| + 1`.
    pub fn admissible_index(&self, w0: Complex64) -> Option<usize> {
        let gap = self.m - self.m_sup / (self.lambda - 1.0);
        (1..=self.n_terms).find(|&n| self.lambda.powi(n as i32) * gap > w0.norm() + 1.0)
    }

    /// Certified statement `w0 in f(D)` through the Rouché inequality chain
    /// on the term disk of the minimal admissible index.
    pub fn hit_target(&self, w0: Complex64) -> Result<HitCertificate> {
        let n = self.admissible_index(w0).ok_or(Error::BudgetExceeded {
            target_modulus: w0.norm(),
            n_terms: self.n_terms,
        })?;
        let lam_n = self.lambda.powi(n as i32);
        let min_f_expected = lam_n * self.m;

        // Uniform boundary statistics; the contour is parametrized through
        // the involution, so the dominant term is exactly lambda^n h on
        // |zeta| = r and the minimum sits at a sample point. The sampled
        // maximum of |G| gets an allowance of twice the largest adjacent
        // sample gap (|G| is smooth in the contour angle, so the max between
        // samples cannot overshoot by more than the local variation).
        let mut min_f = f64::INFINITY;
        let mut max_g = 0.0f64;
        let mut prev_g = f64::NAN;
        let mut first_g = 0.0f64;
        let mut max_gap = 0.0f64;
        for j in 0..CONTOUR_SAMPLES {
            let psi = 2.0 * std::f64::consts::PI * j as f64 / CONTOUR_SAMPLES as f64;
            let (f_val, g_val) = self.split_at_contour(n, w0, psi);
            min_f = min_f.min(f_val.norm());
            let g_norm = g_val.norm();
            max_g = max_g.max(g_norm);
            if j == 0 {
                first_g = g_norm;
            } else {
                max_gap = max_gap.max((g_norm - prev_g).abs());
            }
            prev_g = g_norm;
        }
        max_gap = max_gap.max((first_g - prev_g).abs());
        let max_g_sampled = max_g + 2.0 * max_gap;

        if (min_f - min_f_expected).abs() > 1e-6 * min_f_expected {
            return Err(Error::CertificationFailed(format!(
                "sampled min |F| = {min_f} disagrees with lambda^n m = {min_f_expected}"
            )));
        }
        let g_bound = lam_n * self.m_sup / (self.lambda - 1.0) + 1.0 + w0.norm();
        let allowance = 0.5f64.powi(self.n_terms as i32);
        if max_g_sampled > g_bound + allowance {
            return Err(Error::CertificationFailed(format!(
                "sampled max |G| = {max_g_sampled} exceeds its bound {g_bound}"
            )));
        }
        if min_f <= g_bound + allowance {
            return Err(Error::CertificationFailed(format!(
                "Rouché bound margin failed: min |F| = {min_f} vs bound {g_bound} + {allowance}"
            )));
        }
        if min_f <= max_g_sampled + allowance {
            return Err(Error::CertificationFailed(
                "Rouché sampled margin failed".into(),
            ));
        }

        let disk = self.ladder[n - 1].disk;
        let contour_echo = DiskRegion::echo(
            self.boundary_point * (1.0 - disk.offset_center),
            disk.radius,
        );
        let winding = winding_on_path(
            |t| {
                let (f_val, g_val) = self.split_at_contour(n, w0, 2.0 * std::f64::consts::PI * t);
                f_val + g_val
            },
            CONTOUR_SAMPLES,
            contour_echo,
        )?;
        if winding.winding < 1 {
            return Err(Error::CertificationFailed(format!(
                "winding {} on the term disk is not positive",
                winding.winding
            )));
        }

        let located = self.locate_zero(n, w0);
        Ok(HitCertificate {
            target: w0,
            n_used: n,
            disk,
            winding,
            rouche_min_f: min_f,
            rouche_max_g_bound: g_bound,
            rouche_max_g_sampled: max_g_sampled,
            truncation_allowance: allowance,
            rouche_margin: min_f - g_bound - allowance,
            located_zero: located
                .map(|delta| self.boundary_point * (Complex64::new(1.0, 0.0) - delta)),
            located_zero_offset: located,
        })
    }

    /// Dominant term and remainder of the partial sum at the contour point
    /// `z = phi_n(r e^{i psi})`, evaluated in offset coordinates.
    fn split_at_contour(&self, n: usize, w0: Complex64, psi: f64) -> (Complex64, Complex64) {
        let zeta = Complex64::from_polar(self.r, psi);
        let f_val = self.lambda.powi(n as i32) * zeta * (Complex64::new(1.0, 0.0) - zeta);
        let eps_n = self.ladder[n - 1].eps;
        // delta = 1 - phi_n(zeta) = eps (1 + zeta) / ((1 - zeta) + eps zeta).
        let delta = eps_n * (Complex64::new(1.0, 0.0) + zeta)
            / ((Complex64::new(1.0, 0.0) - zeta) + eps_n * zeta);
        let mut g_val = -w0;
        let mut lam = 1.0;
        for (k, entry) in self.ladder.iter().enumerate() {
            lam *= self.lambda;
            if k + 1 == n {
                continue;
            }
            g_val += lam * h_term_at_offset(entry.eps, delta);
        }
        (f_val, g_val)
    }

    /// Newton search for a zero of the partial sum minus the target inside
    /// the term disk, in the contour coordinate `zeta`; best-effort witness.
    ///
    /// The derivative is taken numerically: the dominant term has derivative
    /// of size `lambda^n` on the disk, which keeps the iteration stable.
    fn locate_zero(&self, n: usize, w0: Complex64) -> Option<Complex64> {
        let lam_n = self.lambda.powi(n as i32);
        let eps_n = self.ladder[n - 1].eps;
        let one = Complex64::new(1.0, 0.0);
        let value = |zeta: Complex64| -> Complex64 {
            let den_n = (one - zeta) + eps_n * zeta;
            let delta = eps_n * (one + zeta) / den_n;
            let mut v = lam_n * zeta * (one - zeta) - w0;
            let mut lam = 1.0;
            for (k, entry) in self.ladder.iter().enumerate() {
                lam *= self.lambda;
                if k + 1 == n {
                    continue;
                }
                v += lam * h_term_at_offset(entry.eps, delta);
            }
            v
        };
        let mut zeta = Complex64::new(0.0, 0.0);
        let h_step = 1e-7;
        for _ in 0..60 {
            let v = value(zeta);
            if v.norm() < 1e-9 * (1.0 + w0.norm()) {
                let den_n = (one - zeta) + eps_n * zeta;
                let delta = eps_n * (one + zeta) / den_n;
                return Some(delta);
            }
            let dv = (value(zeta + Complex64::new(h_step, 0.0)) - v) / h_step;
            if dv.norm() == 0.0 {
                return None;
            }
            zeta -= v / dv;
            if zeta.norm() >= self.r {
                return None;
            }
        }
        None
    }

    /// Runs `hit_target` over a lattice of targets with `|w0| <= radius`.
    pub fn cover(&self, radius: f64, grid: usize) -> Result<CoverageReport> {
        if grid == 0 {
            return Err(Error::InvalidInput("coverage grid must be positive".into()));
        }
        if self.admissible_index(Complex64::new(radius, 0.0)).is_none() {
            return Err(Error::BudgetExceeded {
                target_modulus: radius,
                n_terms: self.n_terms,
            });
        }
        let mut targets = Vec::with_capacity(grid * grid);
        if grid == 1 {
            targets.push(Complex64::new(0.0, 0.0));
        } else {
            // Lattice over the square inscribed in |w0| <= radius.
            let side = radius / 2f64.sqrt();
            for i in 0..grid {
                for j in 0..grid {
                    let x = -side + 2.0 * side * i as f64 / (grid - 1) as f64;
                    let y = -side + 2.0 * side * j as f64 / (grid - 1) as f64;
                    targets.push(Complex64::new(x, y));
                }
            }
        }
        let mut summaries = Vec::with_capacity(targets.len());
        let mut failures = Vec::new();
        let mut max_n_used = 0usize;
        let mut min_margin = f64::INFINITY;
        let mut min_winding = i64::MAX;
        for w0 in targets {
            match self.hit_target(w0) {
                Ok(cert) => {
                    max_n_used = max_n_used.max(cert.n_used);
                    min_margin = min_margin.min(cert.rouche_margin);
                    min_winding = min_winding.min(cert.winding.winding);
                    summaries.push(TargetSummary {
                        target: w0,
                        n_used: cert.n_used,
                        winding: cert.winding.winding,
                        rouche_margin: cert.rouche_margin,
                    });
                }
                Err(e) => failures.push(TargetFailure {
                    target: w0,
                    error: e.to_string(),
                }),
            }
        }
        Ok(CoverageReport {
            radius,
            grid,
            n_targets: summaries.len() + failures.len(),
            n_passed: summaries.len(),
            max_n_used,
            min_rouche_margin: if min_margin.is_finite() {
                min_margin
            } else {
                0.0
            },
            min_winding: if min_winding == i64::MAX {
                0
            } else {
                min_winding
            },
            all_passed: failures.is_empty(),
            targets: summaries,
            failures,
        })
    }
}

/// `h(phi_eps(1 - delta))` with `h(w) = w (1 - w)`, fully in offset
/// arithmetic: both factors keep relative accuracy at any scale of `delta`
/// and `eps`.
fn h_term_at_offset(eps: f64, delta: Complex64) -> Complex64 {
    let den = delta + eps - eps * delta;
    let w = (delta - eps) / den;
    let one_minus_w = eps * (2.0 - delta) / den;
    w * one_minus_w
}

fn h_term_at_offset_dd(eps: f64, delta: CDd) -> CDd {
    let den = delta.add_f64(eps) - delta.mul_f64(eps);
    let w = delta.sub_f64(eps) / den;
    let two_minus_delta = CDd::from_c64(Complex64::new(2.0, 0.0)) - delta;
    let one_minus_w = two_minus_delta.mul_f64(eps) / den;
    w * one_minus_w
}

/// Certificate that a target lies in the image of the partial sum.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HitCertificate {
    #[serde(with = "serde_util::c64")]
    pub target: Complex64,
    pub n_used: usize,
    pub disk: LadderDisk,
    pub winding: WindingCertificate,
    pub rouche_min_f: f64,
    pub rouche_max_g_bound: f64,
    /// Sampled max of |G| plus twice the largest adjacent-sample gap.
    pub rouche_max_g_sampled: f64,
    pub truncation_allowance: f64,
    /// `min |F| - (analytic G bound + truncation allowance)`; positive.
    pub rouche_margin: f64,
    #[serde(with = "serde_util::c64_opt")]
    pub located_zero: Option<Complex64>,
    #[serde(with = "serde_util::c64_opt")]
    pub located_zero_offset: Option<Complex64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TargetSummary {
    #[serde(with = "serde_util::c64")]
    pub target: Complex64,
    pub n_used: usize,
    pub winding: i64,
    pub rouche_margin: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TargetFailure {
    #[serde(with = "serde_util::c64")]
    pub target: Complex64,
    pub error: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoverageReport {
    pub radius: f64,
    pub grid: usize,
    pub n_targets: usize,
    pub n_passed: usize,
    pub max_n_used: usize,
    pub min_rouche_margin: f64,
    pub min_winding: i64,
    pub all_passed: bool,
    pub targets: Vec<TargetSummary>,
    pub failures: Vec<TargetFailure>,
}

fn compact_set_max(earlier: &[LadderEntry], eps: f64) -> f64 {
    let mut max = 0.0f64;
    for entry in earlier {
        for j in 0..COMPACT_SAMPLES {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / COMPACT_SAMPLES as f64;
            let delta = entry.disk.offset_at(theta);
            max = max.max(h_term_at_offset(eps, delta).norm());
        }
    }
    max
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn build_default() -> SurjectiveSeries {
        SurjectiveSeries::select_ladder(&WeightSpec::OneMinusR2, 0.5, 4, Precision::Standard)
            .unwrap()
    }

    #[test]
    fn constants_fixed_values() {
        let k = constants(0.5).unwrap();
        assert_eq!(k.m, 0.25);
        assert_eq!(k.m_sup, 2.0);
        assert_eq!(k.lambda, 10.0);

        let k = constants(0.25).unwrap();
        assert_eq!(k.m, 0.1875);
        assert_abs_diff_eq!(k.lambda, 2.0 + 2.0 / 0.1875, epsilon = 1e-12);
    }

    #[test]
    fn sampled_sup_approaches_two() {
        let sup = (0..40)
            .map(|k| {
                let rho: f64 = 1.0 - 0.5f64.powi(k);
                rho * (1.0 + rho)
            })
            .fold(0.0f64, f64::max);
        assert!(sup < 2.0 && sup > 2.0 - 1e-9);
    }

    #[test]
    fn constant_weight_is_rejected() {
        let err = SurjectiveSeries::select_ladder(
            &WeightSpec::Constant { c: 1.0 },
            0.5,
            2,
            Precision::Standard,
        )
        .unwrap_err();
        assert!(matches!(err, Error::WeightNotVanishing { .. }));
    }

    #[test]
    fn ladder_satisfies_selection_bounds() {
        let s = build_default();
        assert_eq!(s.ladder.len(), 4);
        // First offset already below the pre-certification threshold 1.25e-4.
        assert!(s.ladder[0].eps < 1.25e-4, "eps_1 = {}", s.ladder[0].eps);
        let mut prev = f64::INFINITY;
        for e in s.ladder() {
            assert!(e.eps < prev);
            assert!(e.norm_margin >= 2.0);
            if let Some(m) = e.compact_margin {
                assert!(m >= 2.0);
            }
            assert!(e.certified_norm < e.bound);
            prev = e.eps;
        }
        // Successive offsets shrink at least as fast as (2 lambda)^-2.
        for w in s.ladder.windows(2) {
            assert!(w[1].eps / w[0].eps < 1.0 / 400.0);
        }
    }

    #[test]
    fn deeper_standard_ladder_is_capped() {
        let err =
            SurjectiveSeries::select_ladder(&WeightSpec::OneMinusR2, 0.5, 5, Precision::Standard)
                .unwrap_err();
        assert!(matches!(err, Error::PrecisionExhausted(_)));
    }

    #[test]
    fn extended_mode_reaches_six_terms() {
        let s =
            SurjectiveSeries::select_ladder(&WeightSpec::OneMinusR2, 0.5, 6, Precision::Extended)
                .unwrap();
        assert_eq!(s.ladder.len(), 6);
        assert!(s.ladder[5].eps > 0.0);
        let err =
            SurjectiveSeries::select_ladder(&WeightSpec::OneMinusR2, 0.5, 7, Precision::Extended)
                .unwrap_err();
        assert!(matches!(err, Error::PrecisionExhausted(_)));
    }

    #[test]
    fn extended_and_standard_evaluations_agree_at_moderate_points() {
        let std4 = build_default();
        let ext4 =
            SurjectiveSeries::select_ladder(&WeightSpec::OneMinusR2, 0.5, 4, Precision::Extended)
                .unwrap();
        for k in 0..16 {
            let z = Complex64::from_polar(0.8, 2.0 * std::f64::consts::PI * k as f64 / 16.0);
            let a = std4.eval_partial_sum(z, 4);
            let b = ext4.eval_partial_sum(z, 4);
            assert!((a - b).norm() <= 1e-12 * (1.0 + a.norm()), "{a} vs {b}");
        }
    }

    #[test]
    fn extended_hit_certifies_deep_targets() {
        // A target needing the fifth term: lambda^5 gap = 1e5/36 > 301.
        let s =
            SurjectiveSeries::select_ladder(&WeightSpec::OneMinusR2, 0.5, 5, Precision::Extended)
                .unwrap();
        let cert = s.hit_target(c(300.0, 0.0)).unwrap();
        assert_eq!(cert.n_used, 5);
        assert!(cert.winding.winding >= 1);
        assert!(cert.rouche_margin > 0.0);
    }

    #[test]
    fn poisson_weight_builds_toward_the_antipode() {
        let s = SurjectiveSeries::select_ladder(
            &WeightSpec::Poisson { zeta: c(1.0, 0.0) },
            0.5,
            2,
            Precision::Standard,
        )
        .unwrap();
        assert_abs_diff_eq!(
            (s.boundary_point - c(-1.0, 0.0)).norm(),
            0.0,
            epsilon = 1e-15
        );
        assert!(s.ladder[0].norm_margin >= 2.0);
    }

    #[test]
    fn partial_sum_vanishes_at_first_ladder_point() {
        let s = build_default();
        let a1 = c(1.0 - s.ladder[0].eps, 0.0);
        let v = s.eval_partial_sum(a1, 1);
        assert!(v.norm() < 1e-9, "partial sum at its own zero: {v}");
        assert_eq!(s.eval_partial_sum(c(0.3, 0.2), 0), c(0.0, 0.0));
    }

    #[test]
    fn partial_sum_is_globally_bounded() {
        let s = build_default();
        let mut bound = 0.0;
        let mut lam = 1.0;
        for _ in 0..s.n_terms {
            lam *= s.lambda;
            bound += 2.0 * lam;
        }
        for k in 0..64 {
            let z = Complex64::from_polar(0.97, 2.0 * std::f64::consts::PI * k as f64 / 64.0);
            assert!(s.eval_partial_sum(z, s.n_terms).norm() <= bound);
        }
    }

    #[test]
    fn admissible_index_matches_rule() {
        let s = build_default();
        // lambda = 10, gap = 1/4 - 2/9 = 1/36: |w0| = 1 needs n = 2.
        assert_eq!(s.admissible_index(c(1.0, 0.0)), Some(2));
        assert_eq!(s.admissible_index(c(0.0, 0.0)), Some(2));
        assert_eq!(s.admissible_index(c(25.0, 0.0)), Some(3));
        assert_eq!(s.admissible_index(c(1e6, 0.0)), None);
    }

    #[test]
    fn hit_unit_target() {
        let s = build_default();
        let cert = s.hit_target(c(1.0, 0.0)).unwrap();
        assert_eq!(cert.n_used, 2);
        assert_abs_diff_eq!(cert.rouche_min_f, 25.0, epsilon = 1e-4);
        assert_abs_diff_eq!(
            cert.rouche_max_g_bound,
            100.0 * 2.0 / 9.0 + 2.0,
            epsilon = 1e-12
        );
        assert!(cert.winding.winding >= 1);
        assert!(cert.rouche_margin > 0.0);
        let z = cert.located_zero_offset.expect("witness zero");
        // The witness offset lies within the term disk.
        let d = s.ladder[1].disk;
        assert!((z - Complex64::new(d.offset_center, 0.0)).norm() <= d.radius * (1.0 + 1e-9));
        // Evaluating the partial sum at the materialized witness reproduces
        // the target up to the quantization of the near-boundary point
        // (the derivative there is ~ lambda^n / eps_n).
        let witness = cert.located_zero.expect("witness zero");
        let value = s.eval_partial_sum(witness, s.n_terms);
        assert!(
            (value - c(1.0, 0.0)).norm() < 1e-3,
            "partial sum at witness: {value}"
        );
    }

    #[test]
    fn hit_zero_target() {
        let s = build_default();
        let cert = s.hit_target(c(0.0, 0.0)).unwrap();
        assert!(cert.winding.winding >= 1);
        assert_eq!(cert.n_used, 2);
    }

    #[test]
    fn budget_exceeded_for_far_targets() {
        let s = build_default();
        let err = s.hit_target(c(1e5, 0.0)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
        let err = s.cover(1e5, 2).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn single_point_cover_matches_hit() {
        let s = build_default();
        let report = s.cover(1.0, 1).unwrap();
        assert!(report.all_passed);
        assert_eq!(report.n_targets, 1);
        assert_eq!(report.targets[0].n_used, 2);
    }

    #[test]
    fn build_is_reproducible_bit_for_bit() {
        let a = serde_json::to_string(&build_default()).unwrap();
        let b = serde_json::to_string(&build_default()).unwrap();
        assert_eq!(a, b);
        let s: SurjectiveSeries = serde_json::from_str(&a).unwrap();
        s.validate().unwrap();
        let c1 = serde_json::to_string(&s.hit_target(c(1.0, 0.0)).unwrap()).unwrap();
        let c2 = serde_json::to_string(&s.hit_target(c(1.0, 0.0)).unwrap()).unwrap();
        assert_eq!(c1, c2);
    }

    #[test]
    fn disks_accumulate_toward_the_boundary_point() {
        let s = build_default();
        for w in s.ladder.windows(2) {
            assert!(w[1].disk.offset_center < w[0].disk.offset_center);
        }
        for e in s.ladder() {
            // Disk stays inside the unit disk: offset center exceeds radius.
            assert!(e.disk.offset_center > e.disk.radius);
        }
    }
}
