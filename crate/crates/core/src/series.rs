//! Finite Taylor representations of holomorphic functions on the unit disk.
//!
//! A [`TaylorPoly`] is a nonempty coefficient vector about 0; index `k` holds
//! the coefficient of `z^k`. Evaluation is restricted to the closed disk
//! (the functions built here extend continuously to it; staying inside the
//! open disk where the theory requires it is the caller's responsibility).

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::mobius::MobiusInvolution;
use crate::serde_util;

#[derive(Debug, Clone, PartialEq)]
pub struct TaylorPoly {
    coeffs: Vec<Complex64>,
}

impl TaylorPoly {
    pub fn new(coeffs: Vec<Complex64>) -> Result<TaylorPoly> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("coeffs must be non-empty".into()));
        }
        if coeffs
            .iter()
            .any(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::InvalidInput("coeffs must be finite".into()));
        }
        Ok(TaylorPoly { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> TaylorPoly {
        TaylorPoly::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .expect("non-empty real coefficients")
    }

    pub fn constant(c: Complex64) -> TaylorPoly {
        TaylorPoly { coeffs: vec![c] }
    }

    pub fn zero() -> TaylorPoly {
        TaylorPoly::constant(Complex64::new(0.0, 0.0))
    }

    /// `z^k`.
    pub fn monomial(k: usize) -> TaylorPoly {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k + 1];
        coeffs[k] = Complex64::new(1.0, 0.0);
        TaylorPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^k` (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    /// Degree after trimming exactly-zero trailing coefficients.
    pub fn degree(&self) -> usize {
        let mut d = self.coeffs.len() - 1;
        while d > 0 && self.coeffs[d] == Complex64::new(0.0, 0.0) {
            d -= 1;
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == Complex64::new(0.0, 0.0))
    }

    /// Horner evaluation of the series at `z`, `|z| <= 1`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        debug_assert!(z.norm() <= 1.0 + 1e-9, "evaluation outside the closed disk");
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Termwise derivative; the derivative of a constant is `[0]`.
    pub fn differentiate(&self) -> TaylorPoly {
        if self.coeffs.len() == 1 {
            return TaylorPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * k as f64)
            .collect();
        TaylorPoly { coeffs }
    }

    /// Cauchy product truncated at `max_degree`; exact when
    /// `deg f + deg g <= max_degree`.
    pub fn multiply(&self, other: &TaylorPoly, max_degree: usize) -> TaylorPoly {
        let out_len = (self.coeffs.len() + other.coeffs.len() - 1).min(max_degree + 1);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); out_len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= out_len {
                break;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= out_len {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        TaylorPoly { coeffs }
    }

    pub fn add(&self, other: &TaylorPoly) -> TaylorPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        TaylorPoly { coeffs }
    }

    pub fn scale(&self, c: Complex64) -> TaylorPoly {
        TaylorPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `z * f(z)` (used when differentiating functionals of exp witnesses).
    pub fn shift_up(&self) -> TaylorPoly {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::new(0.0, 0.0));
        coeffs.extend_from_slice(&self.coeffs);
        TaylorPoly { coeffs }
    }

    /// Taylor coefficients of `f(phi_a(z))` about 0, truncated at
    /// `max_degree`.
    ///
    /// The automorphism itself expands as
    /// `phi_a(z) = a - (1 - |a|^2) sum_{k>=1} ā^{k-1} z^k`; the composition is
    /// assembled by Horner in truncated-series arithmetic.
    pub fn compose_mobius(&self, phi: &MobiusInvolution, max_degree: usize) -> TaylorPoly {
        let phi_series = mobius_series(phi, max_degree);
        let mut acc = TaylorPoly::constant(self.coeff(self.coeffs.len() - 1));
        for k in (0..self.coeffs.len() - 1).rev() {
            acc = acc.multiply(&phi_series, max_degree);
            acc = acc.add(&TaylorPoly::constant(self.coeff(k)));
        }
        acc
    }

    /// Composition with automatic truncation: starts at degree 64 and doubles
    /// until the last coefficient falls below 1e-14 of the largest, capped at
    /// 4096.
    pub fn compose_mobius_adaptive(&self, phi: &MobiusInvolution) -> Result<TaylorPoly> {
        let mut degree = 64usize;
        loop {
            let composed = self.compose_mobius(phi, degree);
            let max = composed
                .coeffs
                .iter()
                .map(|c| c.norm())
                .fold(0.0f64, f64::max);
            let tail = composed.coeffs.last().map(|c| c.norm()).unwrap_or(0.0);
            if tail <= 1e-14 * max.max(1e-300) {
                return Ok(composed);
            }
            if degree >= 4096 {
                return Err(Error::NonConvergent {
                    what: "Mobius composition truncation",
                });
            }
            degree *= 2;
        }
    }
}

fn mobius_series(phi: &MobiusInvolution, max_degree: usize) -> TaylorPoly {
    let a = phi.param();
    let one_minus_a_sq = phi.one_minus_param_sq();
    let mut coeffs = Vec::with_capacity(max_degree + 1);
    coeffs.push(a);
    let mut pow = Complex64::new(1.0, 0.0);
    for _ in 1..=max_degree {
        coeffs.push(-one_minus_a_sq * pow);
        pow *= a.conj();
    }
    TaylorPoly { coeffs }
}

// {"type":"taylor","coeffs":[[re,im],...]}
#[derive(Serialize, Deserialize)]
struct TaylorRepr {
    #[serde(rename = "type")]
    kind: String,
    coeffs: Vec<[f64; 2]>,
}

impl Serialize for TaylorPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TaylorRepr {
            kind: "taylor".into(),
            coeffs: self
                .coeffs
                .iter()
                .map(|&c| serde_util::c64_to_pair(c))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TaylorPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = TaylorRepr::deserialize(d)?;
        if repr.kind != "taylor" {
            return Err(D::Error::custom(format!(
                "function type must be \"taylor\", got {:?}",
                repr.kind
            )));
        }
        let coeffs = repr
            .coeffs
            .into_iter()
            .map(|p| serde_util::check_finite(p).map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        TaylorPoly::new(coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_fixed_cases() {
        let f = TaylorPoly::from_real(&[0.0, 1.0]);
        assert_eq!(f.eval(c(0.5, 0.0)), c(0.5, 0.0));

        let f = TaylorPoly::from_real(&[1.0, 0.0, -3.0]);
        assert_eq!(f.eval(c(0.5, 0.0)), c(0.25, 0.0));

        let f = TaylorPoly::from_real(&[1.0, 2.0, 1.0]);
        let w = f.eval(c(0.0, 1.0));
        assert_abs_diff_eq!(w.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(w.im, 2.0, epsilon = 1e-15);
    }

    #[test]
    fn differentiate_fixed_cases() {
        assert_eq!(
            TaylorPoly::from_real(&[1.0, 2.0, 3.0]).differentiate(),
            TaylorPoly::from_real(&[2.0, 6.0])
        );
        assert_eq!(
            TaylorPoly::from_real(&[5.0]).differentiate(),
            TaylorPoly::from_real(&[0.0])
        );
        assert_eq!(
            TaylorPoly::from_real(&[0.0, 0.0, 0.0, 1.0]).differentiate(),
            TaylorPoly::from_real(&[0.0, 0.0, 3.0])
        );
    }

    #[test]
    fn multiply_fixed_cases() {
        let one_plus_z = TaylorPoly::from_real(&[1.0, 1.0]);
        assert_eq!(
            one_plus_z.multiply(&one_plus_z, 4),
            TaylorPoly::from_real(&[1.0, 2.0, 1.0])
        );
        assert_eq!(
            TaylorPoly::from_real(&[0.0, 1.0]).multiply(&TaylorPoly::from_real(&[1.0, -1.0]), 4),
            TaylorPoly::from_real(&[0.0, 1.0, -1.0])
        );
        assert_eq!(
            one_plus_z.multiply(&one_plus_z, 1),
            TaylorPoly::from_real(&[1.0, 2.0])
        );
    }

    #[test]
    fn compose_with_rotation() {
        // a = 0: phi_0(z) = -z.
        let phi = MobiusInvolution::new(c(0.0, 0.0)).unwrap();
        let f = TaylorPoly::from_real(&[0.0, 1.0]);
        let g = f.compose_mobius(&phi, 4);
        assert_eq!(g.coeff(0), c(0.0, 0.0));
        assert_eq!(g.coeff(1), c(-1.0, 0.0));
        assert_eq!(g.degree(), 1);
    }

    #[test]
    fn compose_geometric_expansion() {
        // phi_{1/2} expanded: [0.5, -0.75, -0.375, -0.1875].
        let phi = MobiusInvolution::new(c(0.5, 0.0)).unwrap();
        let f = TaylorPoly::from_real(&[0.0, 1.0]);
        let g = f.compose_mobius(&phi, 3);
        let want = [0.5, -0.75, -0.375, -0.1875];
        for (k, w) in want.iter().enumerate() {
            assert_abs_diff_eq!(g.coeff(k).re, *w, epsilon = 1e-15);
            assert_abs_diff_eq!(g.coeff(k).im, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn constants_are_composition_invariant() {
        let phi = MobiusInvolution::new(c(0.3, -0.4)).unwrap();
        let f = TaylorPoly::from_real(&[1.0]);
        let g = f.compose_mobius(&phi, 16);
        assert_eq!(g.coeff(0), c(1.0, 0.0));
        assert_eq!(g.degree(), 0);
    }

    #[test]
    fn adaptive_composition_agrees_with_pointwise() {
        let phi = MobiusInvolution::new(c(0.6, 0.2)).unwrap();
        let f =
            TaylorPoly::new(vec![c(1.0, 0.5), c(-2.0, 0.0), c(0.0, 1.0), c(0.25, 0.0)]).unwrap();
        let g = f.compose_mobius_adaptive(&phi).unwrap();
        for &z in &[c(0.0, 0.0), c(0.3, 0.1), c(-0.45, 0.2), c(0.0, -0.5)] {
            let direct = f.eval(phi.apply(z));
            let composed = g.eval(z);
            assert!((direct - composed).norm() < 1e-12, "mismatch at {z}");
        }
    }

    #[test]
    fn degree_trims_trailing_zeros() {
        let f = TaylorPoly::from_real(&[1.0, 2.0, 0.0, 0.0]);
        assert_eq!(f.degree(), 1);
        assert_eq!(TaylorPoly::from_real(&[0.0]).degree(), 0);
    }

    #[test]
    fn rejects_empty_and_non_finite() {
        assert!(TaylorPoly::new(vec![]).is_err());
        assert!(TaylorPoly::new(vec![c(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let f = TaylorPoly::new(vec![c(0.1, -0.7), c(1.0 / 3.0, 2e-15), c(-5.5, 0.0)]).unwrap();
        let text = serde_json::to_string(&f).unwrap();
        assert!(text.contains("\"type\":\"taylor\""));
        let back: TaylorPoly = serde_json::from_str(&text).unwrap();
        assert_eq!(f, back);
    }
}
