//! Finite-order linear functionals and the operator-level contracts tied to
//! nowhere-vanishing functions: point-evaluation classification, exponential
//! witness search, the constant-shift decomposition into two nonvanishing
//! parts, and weighted-composition-operator extraction from a basis table.
//!
//! Functionals here are finite combinations of Taylor-coefficient
//! extractions and interior point evaluations. That class is exactly
//! representable, applications to Taylor data are exact, and applications to
//! exponential witnesses use series truncation with a recorded tail bound
//! below 1e-14.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::energy;
use crate::error::{Error, Result};
use crate::serde_util;
use crate::series::TaylorPoly;
use crate::zeros::{certify_nonvanishing, poly_roots, WindingCertificate};

/// One term of a functional: `c * [z^k] f` or `c * f(z)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionalTerm {
    Coeff {
        k: usize,
        #[serde(with = "serde_util::c64")]
        c: Complex64,
    },
    Eval {
        #[serde(with = "serde_util::c64")]
        z: Complex64,
        #[serde(with = "serde_util::c64")]
        c: Complex64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalSpec {
    pub terms: Vec<FunctionalTerm>,
}

impl FunctionalSpec {
    pub fn point_evaluation(a: Complex64) -> FunctionalSpec {
        FunctionalSpec {
            terms: vec![FunctionalTerm::Eval {
                z: a,
                c: Complex64::new(1.0, 0.0),
            }],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.terms.is_empty() {
            return Err(Error::InvalidInput(
                "functional needs at least one term".into(),
            ));
        }
        for t in &self.terms {
            if let FunctionalTerm::Eval { z, .. } = t {
                if z.norm().is_nan() || z.norm() >= 1.0 {
                    return Err(Error::InvalidInput(format!(
                        "evaluation points must satisfy |z| < 1, got |z| = {}",
                        z.norm()
                    )));
                }
            }
        }
        Ok(())
    }

    fn max_coeff_index(&self) -> usize {
        self.terms
            .iter()
            .filter_map(|t| match t {
                FunctionalTerm::Coeff { k, .. } => Some(*k),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    fn max_eval_radius(&self) -> f64 {
        self.terms
            .iter()
            .filter_map(|t| match t {
                FunctionalTerm::Eval { z, .. } => Some(z.norm()),
                _ => None,
            })
            .fold(0.0, f64::max)
    }
}

/// Exact application of a functional to Taylor data.
pub fn apply_functional(l: &FunctionalSpec, f: &TaylorPoly) -> Complex64 {
    l.terms
        .iter()
        .map(|t| match t {
            FunctionalTerm::Coeff { k, c } => c * f.coeff(*k),
            FunctionalTerm::Eval { z, c } => c * f.eval(*z),
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    PointEvaluation,
    NotPointEvaluation { failing_degree: usize },
    OutsideDisk,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassifyReport {
    #[serde(with = "serde_util::c64")]
    pub lambda_of_one: Complex64,
    #[serde(with = "serde_util::c64")]
    pub a_hat: Complex64,
    pub verdict: Verdict,
    pub max_monomial_residual: f64,
}

/// Tests whether the functional agrees with evaluation at
/// `a_hat = L(u)/L(1)` on all monomials up to `max_degree`.
///
/// `|a_hat| >= 1` is rejected outright: a point evaluation of the disk
/// cannot sit outside it, since `u - lambda` vanishes nowhere for
/// `|lambda| >= 1`.
pub fn classify_functional(
    l: &FunctionalSpec,
    max_degree: usize,
    tol: f64,
) -> Result<ClassifyReport> {
    l.validate()?;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "classification tolerance must be a positive finite number, got {tol}"
        )));
    }
    if max_degree < 1 {
        return Err(Error::InvalidInput(
            "classification must test at least the degree-1 monomial".into(),
        ));
    }
    let lambda_of_one = apply_functional(l, &TaylorPoly::from_real(&[1.0]));
    if lambda_of_one.norm() < 1e-30 {
        return Err(Error::NormalizationFailure);
    }
    let a_hat = apply_functional(l, &TaylorPoly::monomial(1)) / lambda_of_one;
    if a_hat.norm() >= 1.0 {
        return Ok(ClassifyReport {
            lambda_of_one,
            a_hat,
            verdict: Verdict::OutsideDisk,
            max_monomial_residual: 0.0,
        });
    }
    let mut max_residual = 0.0f64;
    let mut failing = None;
    let mut power = Complex64::new(1.0, 0.0);
    for n in 1..=max_degree {
        power *= a_hat;
        let lhs = apply_functional(l, &TaylorPoly::monomial(n)) / lambda_of_one;
        let residual = (lhs - power).norm();
        max_residual = max_residual.max(residual);
        if residual >= tol && failing.is_none() {
            failing = Some(n);
        }
    }
    Ok(ClassifyReport {
        lambda_of_one,
        a_hat,
        verdict: match failing {
            None => Verdict::PointEvaluation,
            Some(n) => Verdict::NotPointEvaluation { failing_degree: n },
        },
        max_monomial_residual: max_residual,
    })
}

/// An entire, nowhere-vanishing witness `exp(c1 z + c2 z^2)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessReport {
    #[serde(with = "serde_util::c64")]
    pub c1: Complex64,
    #[serde(with = "serde_util::c64")]
    pub c2: Complex64,
    pub truncation_degree: usize,
    pub tail_bound: f64,
    /// `|L(g)|` at the witness; below 1e-12.
    pub lambda_abs: f64,
}

// Search box: outside it the functional values of exp witnesses underflow
// and a tiny |L(g)| would no longer witness an exact zero.
const WITNESS_C1_BOUND: f64 = 50.0;
const WITNESS_C2_BOUND: f64 = 25.0;

/// Expand `exp(c1 z + c2 z^2)` to Taylor data with the tail at the
/// functional's evaluation radius bounded below 1e-14.
fn expand_witness(
    c1: Complex64,
    c2: Complex64,
    min_degree: usize,
    rho: f64,
) -> Result<(TaylorPoly, f64)> {
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    let mut majorant = vec![1.0f64];
    let (a1, a2) = (c1.norm(), c2.norm());
    let cap = 4096;
    let mut tail = 0.0;
    loop {
        let k = coeffs.len() - 1;
        let done_exact = k >= min_degree;
        let done_tail = if rho == 0.0 {
            true
        } else if k as f64 >= 2.0 * (a1 + 2.0 * a2) * rho + 4.0 {
            // Majorant ratio is below 1/2 here, so the tail is dominated by
            // twice its first term.
            tail = 2.0 * majorant[k] * rho.powi(k as i32);
            tail < 1e-14
        } else {
            false
        };
        if done_exact && done_tail {
            break;
        }
        if coeffs.len() >= cap {
            return Err(Error::NonConvergent {
                what: "witness series truncation",
            });
        }
        let prev2 = if k >= 1 {
            coeffs[k - 1]
        } else {
            Complex64::new(0.0, 0.0)
        };
        let next = (c1 * coeffs[k] + 2.0 * c2 * prev2) / (k as f64 + 1.0);
        let mprev2 = if k >= 1 { majorant[k - 1] } else { 0.0 };
        let mnext = (a1 * majorant[k] + 2.0 * a2 * mprev2) / (k as f64 + 1.0);
        coeffs.push(next);
        majorant.push(mnext);
    }
    Ok((TaylorPoly::new(coeffs)?, tail))
}

/// Searches for a nowhere-vanishing `g = exp(c1 z + c2 z^2)` with
/// `L(g) = 0`, by complex Newton in `c1` from a deterministic grid of starts
/// plus seeded extras. `None` is inconclusive, never a claim that no witness
/// exists.
pub fn witness_search(
    l: &FunctionalSpec,
    budget: usize,
    seed: u64,
) -> Result<Option<WitnessReport>> {
    l.validate()?;
    let min_degree = l.max_coeff_index() + 1;
    let rho = l.max_eval_radius();

    let mut starts: Vec<(Complex64, Complex64)> = Vec::new();
    let base_c1 = [
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, -1.0),
        Complex64::new(0.0, 2.0),
        Complex64::new(2.0, 0.0),
        Complex64::new(1.0, 1.0),
    ];
    let base_c2 = [
        Complex64::new(0.0, 0.0),
        Complex64::new(0.5, 0.0),
        Complex64::new(-0.5, 0.0),
        Complex64::new(0.0, 0.5),
    ];
    for c2 in base_c2 {
        for c1 in base_c1 {
            starts.push((c1, c2));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while starts.len() < budget {
        let c1 = Complex64::new(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
        let c2 = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        starts.push((c1, c2));
    }
    starts.truncate(budget.max(1));

    for (c1_start, c2) in starts {
        let mut c1 = c1_start;
        for _ in 0..80 {
            if c1.norm() > WITNESS_C1_BOUND || c2.norm() > WITNESS_C2_BOUND {
                break;
            }
            let (g, tail) = expand_witness(c1, c2, min_degree, rho)?;
            let value = apply_functional(l, &g);
            if value.norm() < 1e-13 {
                return Ok(Some(WitnessReport {
                    c1,
                    c2,
                    truncation_degree: g.degree(),
                    tail_bound: tail,
                    lambda_abs: value.norm(),
                }));
            }
            // d/dc1 L(exp(...)) = L(z * g).
            let deriv = apply_functional(l, &g.shift_up());
            if deriv.norm() < 1e-150 {
                break;
            }
            c1 -= value / deriv;
        }
    }
    Ok(None)
}

/// Decomposition of `f` as a sum of two nowhere-vanishing functions:
/// `g1 = lambda` (a constant off the image) and `g2 = f - lambda`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Decomposition {
    #[serde(with = "serde_util::c64")]
    pub lambda: Complex64,
    pub g1: TaylorPoly,
    pub g2: TaylorPoly,
    pub g1_certificate: WindingCertificate,
    pub g2_certificate: WindingCertificate,
    pub candidates_tried: usize,
}

/// Seeded search for the shift constant: candidates are drawn uniformly from
/// `|lambda| <= sqrt(D(f)) + 1` (the image has area at most `pi D(f)`, so
/// uncovered points exist in that disk), each checked exactly through the
/// root finder and certified by winding.
///
/// The sum `g1 + g2 = f` is exact in f64 by construction. That forces the
/// shift onto the binary grid of the constant term: when `f`'s constant term
/// carries a full mantissa and the image blocks every shift of comparable
/// scale, no exact split exists and the search reports exhaustion instead of
/// returning an inexact pair.
pub fn decompose(f: &TaylorPoly, seed: u64) -> Result<Decomposition> {
    if f.is_zero() {
        return Err(Error::InvalidInput(
            "the zero function has no nonvanishing decomposition".into(),
        ));
    }
    if f.degree() == 0 {
        // Constants split in half; both halves are nonvanishing constants.
        let half = f.coeff(0) * 0.5;
        let g1 = TaylorPoly::constant(half);
        let g2 = TaylorPoly::constant(half);
        let (_, cert1) = certify_nonvanishing(&g1, 1.0)?;
        let (_, cert2) = certify_nonvanishing(&g2, 1.0)?;
        return Ok(Decomposition {
            lambda: half,
            g1,
            g2,
            g1_certificate: cert1,
            g2_certificate: cert2,
            candidates_tried: 0,
        });
    }

    let rmax = energy::dirichlet_energy_coefficient(f).sqrt() + 1.0;
    let c0 = f.coeff(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=10_000usize {
        let radius = rmax * rng.gen::<f64>().sqrt();
        let theta = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
        let candidate = Complex64::from_polar(radius, theta);
        if candidate.norm() < 1e-9 * rmax {
            continue;
        }
        // Project the candidate onto a pair (lambda, c0 - lambda) that sums
        // back to c0 exactly; candidates for which the exact complement is
        // not a single f64 are rejected (they cannot yield an exact split).
        let (lambda, shifted) = match exact_split(c0, candidate) {
            Some(pair) => pair,
            None => continue,
        };
        if lambda == Complex64::new(0.0, 0.0) {
            continue;
        }
        debug_assert_eq!(lambda + shifted, c0);
        let mut g2_coeffs = f.coeffs().to_vec();
        g2_coeffs[0] = shifted;
        let g2 = TaylorPoly::new(g2_coeffs)?;
        let roots = poly_roots(&g2)?;
        if roots.iter().any(|r| r.norm() < 1.0) {
            continue;
        }
        let (ok2, cert2) = match certify_nonvanishing(&g2, 1.0) {
            Ok(pair) => pair,
            Err(Error::ContourTooClose { .. }) | Err(Error::NonConvergent { .. }) => continue,
            Err(e) => return Err(e),
        };
        if !ok2 {
            continue;
        }
        let g1 = TaylorPoly::constant(lambda);
        let (_, cert1) = certify_nonvanishing(&g1, 1.0)?;
        debug_assert_eq!(g1.add(&g2).coeffs(), f.coeffs());
        return Ok(Decomposition {
            lambda,
            g1,
            g2,
            g1_certificate: cert1,
            g2_certificate: cert2,
            candidates_tried: attempt,
        });
    }
    Err(Error::SearchExhausted { attempts: 10_000 })
}

/// Splits `c0` as `lambda + shifted` with `lambda` near the candidate and
/// the sum exact in f64: `shifted` is the rounded complement and `lambda`
/// must be the exact double-double difference `c0 - shifted` collapsed to a
/// single float (otherwise no exact split exists at this scale and the
/// candidate is rejected). One nudge of the complement by its own residue is
/// attempted first.
fn exact_split(c0: Complex64, candidate: Complex64) -> Option<(Complex64, Complex64)> {
    fn split_component(c: f64, cand: f64) -> Option<(f64, f64)> {
        let mut shifted = c - cand;
        for _ in 0..2 {
            let t = crate::dd::Dd::from_sub(c, shifted);
            if t.lo == 0.0 {
                return Some((t.hi, shifted));
            }
            let nudged = shifted + t.lo;
            if nudged == shifted {
                return None;
            }
            shifted = nudged;
        }
        None
    }
    let (lam_re, sh_re) = split_component(c0.re, candidate.re)?;
    let (lam_im, sh_im) = split_component(c0.im, candidate.im)?;
    Some((Complex64::new(lam_re, lam_im), Complex64::new(sh_re, sh_im)))
}

/// Operator given by its images of the monomial basis: `basis_images[n]`
/// is `T(z^n)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OperatorTable {
    pub basis_images: Vec<TaylorPoly>,
}

impl OperatorTable {
    pub fn validate(&self) -> Result<()> {
        if self.basis_images.len() < 2 {
            return Err(Error::InvalidInput(
                "operator table needs images of at least 1 and z".into(),
            ));
        }
        Ok(())
    }

    /// Builds the table of a weighted composition operator
    /// `T f = psi * (f o phi)` for polynomial symbols (used in tests and the
    /// extractor round-trip).
    pub fn from_symbols(psi: &TaylorPoly, phi: &TaylorPoly, n_basis: usize) -> OperatorTable {
        let mut images = Vec::with_capacity(n_basis);
        let mut phi_pow = TaylorPoly::from_real(&[1.0]);
        let cap = psi.degree() + n_basis * phi.degree().max(1) + 1;
        for _ in 0..n_basis {
            images.push(psi.multiply(&phi_pow, cap));
            phi_pow = phi_pow.multiply(phi, cap);
        }
        OperatorTable {
            basis_images: images,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WcoReport {
    #[serde(with = "serde_util::c64_vec")]
    pub grid: Vec<Complex64>,
    #[serde(with = "serde_util::c64_vec")]
    pub psi_samples: Vec<Complex64>,
    #[serde(with = "serde_util::c64_vec")]
    pub phi_samples: Vec<Complex64>,
    /// `max_n max_grid |T(z^n)(z) - psi(z) phi(z)^n|`.
    pub residual: f64,
    pub self_map: bool,
    pub psi_nonvanishing: bool,
}

/// Default extraction grid: six radii up to 0.9, twelve angles.
pub fn default_wco_grid() -> Vec<Complex64> {
    let mut grid = Vec::new();
    for i in 1..=6 {
        let r = 0.15 * i as f64;
        for j in 0..12 {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / 12.0;
            grid.push(Complex64::from_polar(r, theta));
        }
    }
    grid
}

/// Extracts the multiplier `psi = T(1)` and symbol `phi = T(u)/psi` from an
/// operator table and measures how well `T(z^n) = psi * phi^n` holds on the
/// grid. Violations of the hypotheses (psi vanishing on the grid, phi not a
/// self-map) are reported as errors carrying the diagnostic report.
pub fn wco_extract(table: &OperatorTable, grid: &[Complex64]) -> Result<WcoReport> {
    table.validate()?;
    if grid.is_empty() {
        return Err(Error::InvalidInput(
            "extraction grid must be non-empty".into(),
        ));
    }
    if grid.iter().any(|z| z.norm().is_nan() || z.norm() >= 1.0) {
        return Err(Error::InvalidInput(
            "extraction grid must lie inside the disk".into(),
        ));
    }
    let psi = &table.basis_images[0];
    let psi_samples: Vec<Complex64> = grid.iter().map(|&z| psi.eval(z)).collect();
    let psi_scale = psi_samples.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
    let psi_nonvanishing = psi_samples
        .iter()
        .all(|v| v.norm() > 1e-14 * psi_scale.max(1e-300));

    if !psi_nonvanishing {
        let report = WcoReport {
            grid: grid.to_vec(),
            psi_samples,
            phi_samples: Vec::new(),
            residual: 0.0,
            self_map: false,
            psi_nonvanishing: false,
        };
        return Err(Error::HypothesisViolated {
            reason: "T(1) vanishes on the sample grid".into(),
            report: Box::new(report),
        });
    }

    let phi_samples: Vec<Complex64> = grid
        .iter()
        .zip(&psi_samples)
        .map(|(&z, &p)| table.basis_images[1].eval(z) / p)
        .collect();
    let self_map = phi_samples.iter().all(|v| v.norm() < 1.0);

    let mut residual = 0.0f64;
    for (i, &z) in grid.iter().enumerate() {
        let mut phi_pow = Complex64::new(1.0, 0.0);
        for image in &table.basis_images {
            residual = residual.max((image.eval(z) - psi_samples[i] * phi_pow).norm());
            phi_pow *= phi_samples[i];
        }
    }

    let report = WcoReport {
        grid: grid.to_vec(),
        psi_samples,
        phi_samples,
        residual,
        self_map,
        psi_nonvanishing,
    };
    if !self_map {
        return Err(Error::HypothesisViolated {
            reason: "extracted symbol is not a self-map of the disk".into(),
            report: Box::new(report),
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn coeff(k: usize, c_val: Complex64) -> FunctionalTerm {
        FunctionalTerm::Coeff { k, c: c_val }
    }

    fn eval(z: Complex64, c_val: Complex64) -> FunctionalTerm {
        FunctionalTerm::Eval { z, c: c_val }
    }

    fn averaged_pair() -> FunctionalSpec {
        FunctionalSpec {
            terms: vec![
                eval(c(0.2, 0.0), c(0.5, 0.0)),
                eval(c(-0.2, 0.0), c(0.5, 0.0)),
            ],
        }
    }

    fn value_plus_derivative() -> FunctionalSpec {
        FunctionalSpec {
            terms: vec![coeff(0, c(1.0, 0.0)), coeff(1, c(1.0, 0.0))],
        }
    }

    #[test]
    fn apply_fixed_cases() {
        let f = TaylorPoly::from_real(&[7.0, 3.0]);
        let l = FunctionalSpec {
            terms: vec![coeff(0, c(1.0, 0.0))],
        };
        assert_eq!(apply_functional(&l, &f), c(7.0, 0.0));

        let l = FunctionalSpec {
            terms: vec![eval(c(0.5, 0.0), c(1.0, 0.0))],
        };
        assert_eq!(apply_functional(&l, &TaylorPoly::monomial(1)), c(0.5, 0.0));

        let l = value_plus_derivative();
        assert_eq!(
            apply_functional(&l, &TaylorPoly::from_real(&[1.0, -1.0])),
            c(0.0, 0.0)
        );
    }

    #[test]
    fn classify_point_evaluation() {
        let report =
            classify_functional(&FunctionalSpec::point_evaluation(c(0.5, 0.0)), 16, 1e-10).unwrap();
        assert_eq!(report.verdict, Verdict::PointEvaluation);
        assert_abs_diff_eq!((report.a_hat - c(0.5, 0.0)).norm(), 0.0, epsilon = 1e-14);
        assert!(report.max_monomial_residual < 1e-12);
    }

    #[test]
    fn classify_value_plus_derivative_lands_outside() {
        let report = classify_functional(&value_plus_derivative(), 16, 1e-10).unwrap();
        assert_eq!(report.verdict, Verdict::OutsideDisk);
        assert_eq!(report.a_hat, c(1.0, 0.0));
    }

    #[test]
    fn classify_averaged_pair_fails_at_degree_two() {
        let report = classify_functional(&averaged_pair(), 16, 1e-10).unwrap();
        assert_eq!(
            report.verdict,
            Verdict::NotPointEvaluation { failing_degree: 2 }
        );
        assert_abs_diff_eq!(report.a_hat.norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(report.max_monomial_residual, 0.04, epsilon = 1e-12);
    }

    #[test]
    fn classify_rejects_annihilated_one() {
        let l = FunctionalSpec {
            terms: vec![coeff(1, c(1.0, 0.0))],
        };
        assert!(matches!(
            classify_functional(&l, 8, 1e-10),
            Err(Error::NormalizationFailure)
        ));
    }

    #[test]
    fn witness_for_value_plus_derivative_is_exp_minus_z() {
        let w = witness_search(&value_plus_derivative(), 64, 0)
            .unwrap()
            .expect("witness");
        assert_abs_diff_eq!((w.c1 - c(-1.0, 0.0)).norm(), 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(w.c2.norm(), 0.0, epsilon = 1e-15);
        assert!(w.lambda_abs < 1e-12);
    }

    #[test]
    fn witness_for_averaged_pair_hits_a_cosine_zero() {
        let w = witness_search(&averaged_pair(), 64, 0)
            .unwrap()
            .expect("witness");
        assert!(w.lambda_abs < 1e-12);
        assert!(w.tail_bound < 1e-14);
        // The witness multiplies to cosh(0.2 c1) = 0 up to the quadratic
        // term: 0.2 * c1 must sit at an odd multiple of i pi / 2.
        if w.c2.norm() < 1e-12 {
            let q = (0.2 * w.c1 / (std::f64::consts::FRAC_PI_2 * c(0.0, 1.0))).re;
            assert!((q - q.round()).abs() < 1e-8, "phase multiple {q}");
            assert!(q.round().rem_euclid(2.0) == 1.0);
        }
    }

    #[test]
    fn witness_search_on_point_evaluation_is_inconclusive() {
        let l = FunctionalSpec::point_evaluation(c(0.3, 0.0));
        assert!(witness_search(&l, 48, 0).unwrap().is_none());
    }

    #[test]
    fn decompose_constants_split_in_half() {
        let d = decompose(&TaylorPoly::from_real(&[5.0]), 0).unwrap();
        assert_eq!(d.g1, TaylorPoly::from_real(&[2.5]));
        assert_eq!(d.g2, TaylorPoly::from_real(&[2.5]));
    }

    #[test]
    fn decompose_rejects_zero() {
        assert!(decompose(&TaylorPoly::from_real(&[0.0]), 0).is_err());
    }

    #[test]
    fn decompose_is_exact_and_deterministic() {
        let f = TaylorPoly::new(vec![c(0.3125, -0.125), c(1.0, 0.0), c(0.0, 2.0)]).unwrap();
        let d1 = decompose(&f, 7).unwrap();
        let d2 = decompose(&f, 7).unwrap();
        assert_eq!(d1.lambda, d2.lambda);
        assert_eq!(d1.g1.add(&d1.g2).coeffs(), f.coeffs());
        // All roots of g2 stay out of the open disk.
        for r in poly_roots(&d1.g2).unwrap() {
            assert!(r.norm() >= 1.0);
        }
    }

    #[test]
    fn decompose_rejects_splits_that_cannot_be_exact() {
        // A full-mantissa constant term admits no exact f64 split once the
        // required shift is much larger: the low bits of c0 cannot survive
        // in either summand. The search must fail honestly rather than
        // return an inexact pair.
        let f = TaylorPoly::new(vec![c(0.3, -0.1), c(1.0, 0.0), c(0.0, 2.0)]).unwrap();
        match decompose(&f, 7) {
            Err(Error::SearchExhausted { .. }) => {}
            Ok(d) => {
                // If a split is found it must still be exact.
                assert_eq!(d.g1.add(&d.g2).coeffs(), f.coeffs());
            }
            Err(e) => panic!("unexpected error {e:?}"),
        }
    }

    #[test]
    fn decompose_identity_accepts_any_unit_exterior_shift() {
        let d = decompose(&TaylorPoly::monomial(1), 3).unwrap();
        assert!(d.lambda.norm() > 1.0);
        assert!(d.lambda.norm() <= 2.0 + 1e-12);
    }

    #[test]
    fn decompose_square_keeps_roots_outside() {
        // f = z^2: any |lambda| >= 1 works (roots at +-sqrt(lambda)); the
        // returned shift must satisfy it.
        let d = decompose(&TaylorPoly::monomial(2), 0).unwrap();
        assert!(d.lambda.norm() >= 1.0);
        for r in poly_roots(&d.g2).unwrap() {
            assert!(r.norm() >= 1.0);
        }
        assert_eq!(d.g1.add(&d.g2).coeffs(), TaylorPoly::monomial(2).coeffs());
    }

    #[test]
    fn wco_extract_scaled_shift() {
        // T(z^n) = (z/2)^n: psi = 1, phi = z/2.
        let table = OperatorTable::from_symbols(
            &TaylorPoly::from_real(&[1.0]),
            &TaylorPoly::from_real(&[0.0, 0.5]),
            6,
        );
        let report = wco_extract(&table, &default_wco_grid()).unwrap();
        assert!(report.residual < 1e-12);
        assert!(report.self_map);
        assert!(report.psi_nonvanishing);
    }

    #[test]
    fn wco_extract_square_symbol() {
        // T(z^n) = (1 + z) z^{2n}.
        let table = OperatorTable::from_symbols(
            &TaylorPoly::from_real(&[1.0, 1.0]),
            &TaylorPoly::from_real(&[0.0, 0.0, 1.0]),
            5,
        );
        let report = wco_extract(&table, &default_wco_grid()).unwrap();
        assert!(report.residual < 1e-12);
        assert!(report.self_map);
    }

    #[test]
    fn wco_extract_rejects_expanding_symbol() {
        // T(z^n) = (2z)^n: |phi| = 2|z| leaves the disk on the grid.
        let table = OperatorTable::from_symbols(
            &TaylorPoly::from_real(&[1.0]),
            &TaylorPoly::from_real(&[0.0, 2.0]),
            4,
        );
        let err = wco_extract(&table, &default_wco_grid()).unwrap_err();
        match err {
            Error::HypothesisViolated { report, .. } => {
                assert!(!report.self_map);
                assert!(report.psi_nonvanishing);
            }
            other => panic!("expected hypothesis violation, got {other:?}"),
        }
    }

    #[test]
    fn functional_json_schema() {
        let text = r#"{"terms":[{"coeff":{"k":0,"c":[1,0]}},{"eval":{"z":[0.2,0],"c":[0.5,0]}}]}"#;
        let l: FunctionalSpec = serde_json::from_str(text).unwrap();
        assert_eq!(l.terms.len(), 2);
        let round = serde_json::to_string(&l).unwrap();
        let l2: FunctionalSpec = serde_json::from_str(&round).unwrap();
        assert_eq!(l, l2);
    }
}
