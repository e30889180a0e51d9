//! Adaptive Gauss–Legendre quadrature for smooth complex integrands.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64 as C64;

const NODES: usize = 16;
const MAX_DEPTH: u32 = 40;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n
        let mut t = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, t);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * t * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 {
                1.0
            } else if n == 1 {
                t
            } else {
                p1
            };
            let pn1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (t * pn - pn1) / (t * t - 1.0);
            let dt = pn / dp;
            t -= dt;
            if dt.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

fn rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(NODES))
}

fn fixed<F: Fn(f64) -> C64>(f: &F, a: f64, b: f64) -> C64 {
    let (x, w) = rule();
    let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
    x.iter()
        .zip(w)
        .map(|(&xi, &wi)| f(mid + half * xi) * wi)
        .sum::<C64>()
        * half
}

/// `∫_a^b f` to absolute tolerance `tol`, bisecting where the 16-point rule
/// disagrees with its two halves.
pub fn integrate<F: Fn(f64) -> C64>(f: F, a: f64, b: f64, tol: f64) -> C64 {
    let whole = fixed(&f, a, b);
    refine(&f, a, b, whole, tol, 0)
}

fn refine<F: Fn(f64) -> C64>(f: &F, a: f64, b: f64, whole: C64, tol: f64, depth: u32) -> C64 {
    let m = (a + b) / 2.0;
    let left = fixed(f, a, m);
    let right = fixed(f, m, b);
    let sum = left + right;
    if (sum - whole).norm() <= tol || depth >= MAX_DEPTH {
        return sum;
    }
    refine(f, a, m, left, tol / 2.0, depth + 1) + refine(f, m, b, right, tol / 2.0, depth + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two_and_integrate_polynomials() {
        let (x, w) = gauss_legendre(NODES);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        // exact up to degree 2n - 1
        let p31: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(30)).sum();
        assert!((p31 - 2.0 / 31.0).abs() < 1e-14);
    }

    #[test]
    fn smooth_and_peaked_integrands() {
        let v = integrate(|t| C64::new(t.cos(), t.sin()), 0.0, PI, 1e-13);
        assert!((v - C64::new(0.0, 2.0)).norm() < 1e-13);
        // narrow Lorentzian: ∫ ε/(t²+ε²) over [-1,1] = 2 atan(1/ε)
        let eps = 1e-4;
        let v = integrate(
            |t| C64::new(eps / (t * t + eps * eps), 0.0),
            -1.0,
            1.0,
            1e-12,
        );
        assert!((v.re - 2.0 * (1.0 / eps).atan()).abs() < 1e-10);
    }
}
