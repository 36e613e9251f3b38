//! Zero counting and nowhere-vanishing certification: winding numbers by
//! phase unwrapping with adaptive refinement, polynomial roots by
//! simultaneous iteration with Newton polishing, and the combination of the
//! two as a cross-checked certificate.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mobius::DiskRegion;
use crate::series::TaylorPoly;

/// Hard budget on contour evaluations during refinement.
const MAX_PATH_EVALS: usize = 1 << 20;

/// Certified winding number along a closed contour.
///
/// `winding` is the rounded total argument increment over 2 pi; the rounding
/// residual is checked below 0.1 before the certificate is issued, and a
/// contour passing within `1e-12 * scale` of a zero is a hard error rather
/// than a certificate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WindingCertificate {
    pub winding: i64,
    pub contour: DiskRegion,
    pub n_samples: usize,
    pub min_modulus_on_contour: f64,
    pub refined: bool,
}

/// Winding number of `f` around 0 along the boundary of `contour`.
pub fn winding_number<F: Fn(Complex64) -> Complex64>(
    f: F,
    contour: &DiskRegion,
    n_samples: usize,
) -> Result<WindingCertificate> {
    if n_samples < 256 {
        return Err(Error::InvalidInput(
            "winding needs at least 256 samples".into(),
        ));
    }
    let center = contour.center;
    let radius = contour.radius;
    let path = |t: f64| f(center + Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * t));
    winding_on_path(path, n_samples, contour.clone())
}

/// Winding number of a closed path `t in [0,1) -> C \ {0}`.
///
/// Consecutive samples whose argument jump exceeds pi/2 are bisected until
/// the jump is resolved; with every step below pi/2 the unwrapped total is
/// exact for the sampled polygon.
pub fn winding_on_path<F: Fn(f64) -> Complex64>(
    path: F,
    n_samples: usize,
    contour: DiskRegion,
) -> Result<WindingCertificate> {
    let mut evals = 0usize;

    let mut samples: Vec<(f64, Complex64)> = (0..n_samples)
        .map(|i| i as f64 / n_samples as f64)
        .map(|t| (t, path(t)))
        .collect();
    evals += n_samples;
    samples.push((1.0, samples[0].1));

    let mut min_mod = f64::INFINITY;
    let mut max_mod = 0.0f64;
    for &(_, v) in &samples {
        min_mod = min_mod.min(v.norm());
        max_mod = max_mod.max(v.norm());
    }
    if min_mod <= 1e-12 * max_mod {
        return Err(Error::ContourTooClose {
            min_modulus: min_mod,
            scale: max_mod,
        });
    }

    let mut total = 0.0f64;
    let mut refined = false;
    // Depth-first segment refinement; deterministic order.
    let mut stack: Vec<((f64, Complex64), (f64, Complex64))> =
        samples.windows(2).rev().map(|w| (w[0], w[1])).collect();
    while let Some(((t0, v0), (t1, v1))) = stack.pop() {
        let step = (v1 / v0).arg();
        if step.abs() <= std::f64::consts::FRAC_PI_2 {
            total += step;
            continue;
        }
        refined = true;
        if evals >= MAX_PATH_EVALS {
            return Err(Error::NonConvergent {
                what: "winding refinement",
            });
        }
        let tm = 0.5 * (t0 + t1);
        let vm = path(tm);
        evals += 1;
        let m = vm.norm();
        min_mod = min_mod.min(m);
        max_mod = max_mod.max(m);
        if min_mod <= 1e-12 * max_mod {
            return Err(Error::ContourTooClose {
                min_modulus: min_mod,
                scale: max_mod,
            });
        }
        stack.push(((tm, vm), (t1, v1)));
        stack.push(((t0, v0), (tm, vm)));
    }

    let turns = total / (2.0 * std::f64::consts::PI);
    let winding = turns.round();
    if (turns - winding).abs() >= 0.1 {
        return Err(Error::NonConvergent {
            what: "winding rounding",
        });
    }
    Ok(WindingCertificate {
        winding: winding as i64,
        contour,
        n_samples: evals,
        min_modulus_on_contour: min_mod,
        refined,
    })
}

/// All complex roots of a polynomial, found simultaneously (Durand-Kerner)
/// and polished by Newton; residuals are checked against
/// `1e-10 * max |coeff|`.
pub fn poly_roots(f: &TaylorPoly) -> Result<Vec<Complex64>> {
    let deg = f.degree();
    if deg < 1 {
        return Err(Error::InvalidInput(
            "root finding needs degree >= 1 after trimming".into(),
        ));
    }
    let coeffs: Vec<Complex64> = f.coeffs()[..deg + 1].to_vec();

    // Factor out roots at the origin exactly.
    let zero = Complex64::new(0.0, 0.0);
    let first_nonzero = coeffs.iter().position(|c| *c != zero).unwrap();
    let mut roots = vec![zero; first_nonzero];
    let reduced: Vec<Complex64> = coeffs[first_nonzero..].to_vec();
    let d = reduced.len() - 1;
    if d == 0 {
        return Ok(roots);
    }

    // Monic normalization.
    let lead = reduced[d];
    let monic: Vec<Complex64> = reduced.iter().map(|c| c / lead).collect();
    let eval_monic = |z: Complex64| -> Complex64 {
        let mut acc = zero;
        for c in monic.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    let eval_monic_deriv = |z: Complex64| -> Complex64 {
        let mut acc = zero;
        for (k, c) in monic.iter().enumerate().skip(1).rev() {
            acc = acc * z + c * k as f64;
        }
        acc
    };

    // Cauchy bound start circle.
    let bound = 1.0 + monic[..d].iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    let mut zs: Vec<Complex64> = (0..d)
        .map(|j| {
            Complex64::from_polar(
                bound,
                2.0 * std::f64::consts::PI * (j as f64 + 0.25) / d as f64,
            )
        })
        .collect();

    // Durand-Kerner may stall near multiple roots; the residual gate below
    // decides either way.
    for _ in 0..1000 {
        let mut max_step = 0.0f64;
        for j in 0..d {
            let mut denom = Complex64::new(1.0, 0.0);
            for k in 0..d {
                if k != j {
                    denom *= zs[j] - zs[k];
                }
            }
            if denom == zero {
                denom = Complex64::new(1e-300, 0.0);
            }
            let step = eval_monic(zs[j]) / denom;
            zs[j] -= step;
            max_step = max_step.max(step.norm() / (1.0 + zs[j].norm()));
        }
        if max_step < 1e-14 {
            break;
        }
    }

    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    for z in zs.iter_mut() {
        let mut best = *z;
        let mut best_res = eval_monic(best).norm();
        let mut cur = *z;
        for _ in 0..30 {
            let dp = eval_monic_deriv(cur);
            if dp == zero {
                break;
            }
            cur -= eval_monic(cur) / dp;
            let res = eval_monic(cur).norm();
            if res < best_res {
                best_res = res;
                best = cur;
            }
        }
        *z = best;
    }

    // Residual gate on the original (non-monic) polynomial: 1e-10 of the
    // coefficient scale for disk-sized roots, with the natural magnitude
    // factor for roots far outside.
    for z in &zs {
        let mut acc = zero;
        for c in coeffs.iter().rev() {
            acc = acc * z + c;
        }
        let tol = 1e-10 * scale * z.norm().max(1.0).powi(d as i32);
        if acc.norm() > tol {
            return Err(Error::NonConvergent {
                what: "polynomial root residual",
            });
        }
    }

    roots.extend(zs);
    Ok(roots)
}

/// Certify that `f` has no zeros in `|z| < rho`.
///
/// The winding number on `|z| = rho` is the primary certificate (retreating
/// by a factor 0.999 up to 32 times when the test circle grazes a zero), and
/// the polynomial root finder provides the independent count that must
/// agree.
pub fn certify_nonvanishing(f: &TaylorPoly, rho: f64) -> Result<(bool, WindingCertificate)> {
    if !(0.0 < rho && rho <= 1.0) {
        return Err(Error::InvalidInput(format!(
            "rho must lie in (0, 1], got {rho}"
        )));
    }
    if f.is_zero() {
        return Err(Error::InvalidInput(
            "cannot certify the zero function".into(),
        ));
    }

    if f.degree() == 0 {
        // Nonzero constants vanish nowhere; issue a degenerate certificate.
        let contour = DiskRegion::echo(Complex64::new(0.0, 0.0), 0.5 * rho);
        let cert = winding_number(|z| f.eval(z), &contour, 256)?;
        return Ok((true, cert));
    }

    let roots = poly_roots(f)?;
    let mut rho_k = rho.min(1.0 - 1e-15);
    let mut last_err = None;
    for _ in 0..32 {
        let contour = DiskRegion::echo(Complex64::new(0.0, 0.0), rho_k);
        match winding_number(|z| f.eval(z), &contour, 256) {
            Ok(cert) => {
                let inside = roots.iter().filter(|r| r.norm() < rho_k).count() as i64;
                if inside != cert.winding {
                    return Err(Error::CertificationFailed(format!(
                        "winding {} disagrees with root count {} inside |z| < {rho_k}",
                        cert.winding, inside
                    )));
                }
                return Ok((cert.winding == 0, cert));
            }
            Err(e @ (Error::ContourTooClose { .. } | Error::NonConvergent { .. })) => {
                last_err = Some(e);
                rho_k *= 0.999;
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap_or(Error::NonConvergent {
        what: "nonvanishing certification",
    }))
}
