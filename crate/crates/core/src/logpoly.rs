//! Integrands of the form `u^b · P(ln u)`.
//!
//! Every tail integrand that shows up in the Euler-summation representations
//! is a power of `u` times a polynomial in `ln u`, e.g. the s-derivative
//! kernel `u^{-s-1} (-ln u)^{r-1} (r - s ln u)`. Keeping them symbolic lets
//! the integrators differentiate exactly and integrate power-log pieces in
//! closed form.

use num_complex::Complex64;

/// `u^power · Σ_j coeffs[j] · (ln u)^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogPoly {
    pub power: Complex64,
    pub coeffs: Vec<Complex64>,
}

impl LogPoly {
    pub fn new(power: Complex64, coeffs: Vec<Complex64>) -> Self {
        let mut p = LogPoly { power, coeffs };
        p.trim();
        p
    }

    /// `u^power · (ln u)^log_power`.
    pub fn monomial(power: Complex64, log_power: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); log_power + 1];
        coeffs[log_power] = Complex64::new(1.0, 0.0);
        LogPoly { power, coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1
            && self
                .coeffs
                .last()
                .is_some_and(|c| *c == Complex64::new(0.0, 0.0))
        {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(Complex64::new(0.0, 0.0));
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm() == 0.0)
    }

    pub fn scale(&self, factor: Complex64) -> LogPoly {
        LogPoly {
            power: self.power,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Multiplies by `u^shift`.
    pub fn shift_power(&self, shift: Complex64) -> LogPoly {
        LogPoly {
            power: self.power + shift,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Value of the polynomial part at `ln u = l`.
    pub fn poly_at(&self, l: f64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * l + c)
    }

    pub fn eval(&self, u: f64) -> Complex64 {
        let l = u.ln();
        (self.power * l).exp() * self.poly_at(l)
    }

    /// `d/du`: `u^{b-1} Σ_j (b c_j + (j+1) c_{j+1}) L^j`.
    pub fn derivative(&self) -> LogPoly {
        let n = self.coeffs.len();
        let coeffs = (0..n)
            .map(|j| {
                let next = if j + 1 < n {
                    self.coeffs[j + 1] * (j as f64 + 1.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                self.power * self.coeffs[j] + next
            })
            .collect();
        LogPoly::new(self.power - 1.0, coeffs)
    }

    /// Coefficients of `t ↦ P(l0 + t)`.
    pub fn shifted_coeffs(&self, l0: f64) -> Vec<Complex64> {
        // repeated synthetic division (Taylor shift)
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let hi = c[j + 1];
                c[j] += hi * l0;
            }
        }
        c
    }

    /// Upper bound on `∫_lower^∞ |u^b P(ln u)| du`; requires `lower ≥ 1`
    /// and `Re(b) < -1`. Returns `None` when the integral diverges.
    pub fn abs_tail_bound(&self, lower: f64) -> Option<f64> {
        debug_assert!(lower >= 1.0);
        let p = -self.power.re;
        if p <= 1.0 {
            return None;
        }
        let l = lower.ln();
        let pm1 = p - 1.0;
        let scale = lower.powf(1.0 - p);
        let mut total = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let a = c.norm();
            if a == 0.0 {
                continue;
            }
            // ∫_L^∞ e^{-(p-1)v} v^j dv = e^{-(p-1)L} Σ_i j!/(j-i)! L^{j-i}/(p-1)^{i+1}
            let mut falling = 1.0;
            let mut sum = 0.0;
            for i in 0..=j {
                sum += falling * l.powi((j - i) as i32) / pm1.powi(i as i32 + 1);
                falling *= (j - i) as f64;
            }
            total += a * sum;
        }
        Some(scale * total)
    }

    /// `max_j |c_j|`, used for rounding-scale estimates.
    pub fn coeff_scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// Multiplies two polynomials in `ln u` (coefficient vectors).
pub fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients of `(c0 + c1·L)^n` as a polynomial in `L`.
pub fn linear_power(c0: Complex64, c1: Complex64, n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(1.0, 0.0)];
    for _ in 0..n {
        out = poly_mul(&out, &[c0, c1]);
    }
    out
}

/// The s-derivative kernel `d^r/ds^r (s·(k u)^{-s}) / u` as a [`LogPoly`] in `u`:
/// `k^{-s} u^{-s-1} (-(ln k + ln u))^{r-1} (r - s(ln k + ln u))`, or
/// `s k^{-s} u^{-s-1}` when `r = 0`.
pub fn s_derivative_kernel(s: Complex64, r: usize, k: f64) -> LogPoly {
    let lk = k.ln();
    let ks = (-s * lk).exp();
    let power = -s - 1.0;
    if r == 0 {
        return LogPoly::new(power, vec![s * ks]);
    }
    let one = Complex64::new(1.0, 0.0);
    let neg_log = linear_power(-one * lk, -one, r - 1);
    let lin = [Complex64::new(r as f64, 0.0) - s * lk, -s];
    let coeffs = poly_mul(&neg_log, &lin)
        .into_iter()
        .map(|c| c * ks)
        .collect();
    LogPoly::new(power, coeffs)
}

/// `d^r/ds^r (k u)^{-s}` as a [`LogPoly`]: `k^{-s} u^{-s} (-(ln k + ln u))^r`.
pub fn power_derivative_kernel(s: Complex64, r: usize, k: f64) -> LogPoly {
    let lk = k.ln();
    let ks = (-s * lk).exp();
    let one = Complex64::new(1.0, 0.0);
    let coeffs = linear_power(-one * lk, -one, r)
        .into_iter()
        .map(|c| c * ks)
        .collect();
    LogPoly::new(-s, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let p = LogPoly::new(c(-1.3, 2.0), vec![c(0.5, 0.0), c(-1.0, 0.3), c(0.2, 0.0)]);
        let d = p.derivative();
        for &u in &[1.5, 3.0, 17.0] {
            let h = 1e-6 * u;
            let fd = (p.eval(u + h) - p.eval(u - h)) / (2.0 * h);
            assert!((fd - d.eval(u)).norm() < 1e-7 * (1.0 + fd.norm()));
        }
    }

    #[test]
    fn taylor_shift() {
        let p = LogPoly::new(c(0.0, 0.0), vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        let sh = p.shifted_coeffs(2.0);
        // 1 + 2(2+t) + 3(2+t)^2 = 17 + 14 t + 3 t^2
        assert_eq!(sh, vec![c(17.0, 0.0), c(14.0, 0.0), c(3.0, 0.0)]);
    }

    #[test]
    fn s_kernel_matches_numeric_s_derivative() {
        let s = c(0.6, 1.5);
        let k: f64 = 3.0;
        let u = 2.7;
        let f = |s: Complex64| s * (-s * (k * u).ln()).exp() / u;
        let h = 1e-4;
        let d1 = (f(s + h) - f(s - h)) / (2.0 * h);
        let d2 = (f(s + h) - 2.0 * f(s) + f(s - h)) / (h * h);
        assert!((s_derivative_kernel(s, 0, k).eval(u) - f(s)).norm() < 1e-14);
        assert!((s_derivative_kernel(s, 1, k).eval(u) - d1).norm() < 1e-7);
        assert!((s_derivative_kernel(s, 2, k).eval(u) - d2).norm() < 1e-5);
    }

    #[test]
    fn abs_tail_bound_is_exact_for_positive_coefficients() {
        // ∫_2^∞ u^{-3} ln u du = (2 ln 2 + 1)/(4·2^2)... check numerically by substitution
        let p = LogPoly::monomial(c(-3.0, 0.0), 1);
        let got = p.abs_tail_bound(2.0).unwrap();
        let l = 2f64.ln();
        let want = 2f64.powi(-2) * (l / 2.0 + 1.0 / 4.0);
        assert!((got - want).abs() < 1e-15);
        assert!(LogPoly::monomial(c(-1.0, 0.0), 0)
            .abs_tail_bound(2.0)
            .is_none());
    }
}
