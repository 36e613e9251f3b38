//! Gauss-Legendre rules and disk quadrature helpers.

use num_complex::Complex64;

/// Gauss-Legendre nodes and weights on `[0, 1]`.
///
/// Nodes are computed by Newton iteration on the Legendre recurrence from
/// Chebyshev initial guesses; exact for polynomials of degree `2n - 1`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> GaussLegendre {
        assert!(n >= 2, "rule needs at least 2 nodes");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // Legendre P_n(x) and P_n'(x) via the three-term recurrence.
                let mut p0 = 1.0;
                let mut p1 = x;
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = nf * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            // Map [-1, 1] to [0, 1].
            nodes[i] = 0.5 * (x + 1.0);
            weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
        }
        nodes.reverse();
        weights.reverse();
        GaussLegendre { nodes, weights }
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let scale = b - a;
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(a + scale * x))
            .sum::<f64>()
            * scale
    }
}

/// Panel boundaries on `[0, 1]` refined geometrically toward 1 down to
/// `scale`, for integrands with a boundary layer of that width near 1.
pub fn layered_panels(scale: f64) -> Vec<(f64, f64)> {
    let mut cuts = vec![0.0, 0.5];
    let mut d = 0.1f64;
    let floor = (10.0 * scale.max(1e-306)).min(0.1);
    while d > floor {
        cuts.push(1.0 - d);
        d *= 0.1;
    }
    cuts.push(1.0 - d);
    cuts.push(1.0);
    cuts.windows(2).map(|w| (w[0], w[1])).collect()
}

/// Integrate over the layered panels with a fixed per-panel rule.
pub fn integrate_layered<F: FnMut(f64) -> f64>(rule: &GaussLegendre, scale: f64, mut f: F) -> f64 {
    layered_panels(scale)
        .into_iter()
        .map(|(a, b)| rule.integrate(a, b, &mut f))
        .sum()
}

/// Tanh-sinh (double-exponential) rule on `[a, b]` with `2n + 1` nodes.
///
/// Handles algebraic and logarithmic endpoint singularities at close to
/// machine precision; the nodes never touch the endpoints.
pub fn tanh_sinh<F: FnMut(f64) -> f64>(a: f64, b: f64, n: usize, mut f: F) -> f64 {
    let t_max = 4.0;
    let h = t_max / n as f64;
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut total = 0.0;
    for k in -(n as i64)..=(n as i64) {
        let t = k as f64 * h;
        let u = std::f64::consts::FRAC_PI_2 * t.sinh();
        let x = mid + half * u.tanh();
        let w = half * std::f64::consts::FRAC_PI_2 * t.cosh() / u.cosh().powi(2);
        if w.is_finite() && w > 0.0 && x > a && x < b {
            total += w * f(x);
        }
    }
    total * h
}

/// Tensor rule for `(1/pi) * Integral_D g dA` with Gauss-Legendre radii and
/// uniform angles.
#[derive(Debug, Clone)]
pub struct DiskRule {
    radial: GaussLegendre,
    n_angles: usize,
}

impl DiskRule {
    pub fn new(n_radial: usize, n_angles: usize) -> DiskRule {
        DiskRule {
            radial: GaussLegendre::new(n_radial),
            n_angles,
        }
    }

    pub fn n_radial(&self) -> usize {
        self.radial.nodes.len()
    }

    pub fn n_angles(&self) -> usize {
        self.n_angles
    }

    /// `(1/pi) * Integral_D g(z) dA(z)`.
    pub fn integrate<F: Fn(Complex64) -> f64>(&self, g: F) -> f64 {
        let m = self.n_angles as f64;
        let mut total = 0.0;
        for (&rho, &w) in self.radial.nodes.iter().zip(&self.radial.weights) {
            let mut ring = 0.0;
            for j in 0..self.n_angles {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / m;
                ring += g(Complex64::from_polar(rho, theta));
            }
            total += w * rho * ring;
        }
        2.0 * total / m
    }
}
