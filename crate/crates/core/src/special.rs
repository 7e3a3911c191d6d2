//! Special functions needed by the kernels. Everything is evaluated in
//! `f64`; callers convert.

use statrs::function::gamma::gamma;

/// Normalising constant of the isotropic stable Lévy density in dimension
/// `d`: `|ξ|^α = ∫ (1 − cos(y·ξ)) c_{α,d} |y|^{−d−α} dy` for `0 < α < 2`.
pub fn stable_constant(alpha: f64, d: usize) -> f64 {
    let d = d as f64;
    alpha * 2f64.powf(alpha - 1.0) * gamma((d + alpha) / 2.0) / (std::f64::consts::PI.powf(d / 2.0) * gamma(1.0 - alpha / 2.0))
}

/// `∫₀^∞ (1 − cos(ξy)) e^{−λy} y^{−1−α} dy` for `0 < α < 2` and `λ > 0`,
/// which equals `Γ(−α) (λ^α − Re (λ + i|ξ|)^α)`. The difference is formed
/// from `expm1` terms because it vanishes to first order as `α → 1`.
pub fn tempered_stable_half_symbol(alpha: f64, lambda: f64, xi: f64) -> f64 {
    let w = xi.abs();
    if w == 0.0 {
        return 0.0;
    }
    let eps = alpha - 1.0;
    if eps.abs() < 1e-7 {
        let r = w / lambda;
        return w * r.atan() - 0.5 * lambda * (r * r).ln_1p();
    }
    // s^α = s · e^{ε ln s} with s = λ + i|ξ|, and Re s = λ
    let a = eps * lambda.hypot(w).ln();
    let b = eps * w.atan2(lambda);
    let half = (0.5 * b).sin();
    let re = a.exp_m1() * b.cos() - 2.0 * half * half;
    let im = a.exp() * b.sin();
    let d = lambda * (eps * lambda.ln()).exp_m1() - (lambda * re - w * im);
    gamma(-alpha) * d
}

/// Surface area of the unit sphere in `ℝ^d`.
pub fn sphere_area(d: usize) -> f64 {
    let h = d as f64 / 2.0;
    2.0 * std::f64::consts::PI.powf(h) / gamma(h)
}

/// Bessel function `J_0`. Trapezoid on the periodic integral
/// `(1/π)∫_0^π cos(z sin θ) dθ` for moderate arguments, Hankel asymptotics
/// beyond.
pub fn bessel_j0(z: f64) -> f64 {
    let z = z.abs();
    if z <= 40.0 {
        // The trapezoid rule is exact for trigonometric polynomials of degree
        // < 2n; the Fourier coefficients of cos(z sin θ) are J_{2k}(z), which
        // are negligible once 2k exceeds z by a margin.
        let n = (z as usize) + 30;
        let h = std::f64::consts::PI / n as f64;
        let mut s = 0.5 * (1.0 + (z * (std::f64::consts::PI).sin()).cos());
        for k in 1..n {
            s += (z * (k as f64 * h).sin()).cos();
        }
        return s / n as f64;
    }
    let chi = z - std::f64::consts::FRAC_PI_4;
    let iz2 = 1.0 / (z * z);
    let p = 1.0 - 9.0 / 128.0 * iz2 + 3675.0 / 32768.0 * iz2 * iz2;
    let q = (-1.0 / 8.0 + 75.0 / 1024.0 * iz2 - 59535.0 / 262144.0 * iz2 * iz2) / z;
    (2.0 / (std::f64::consts::PI * z)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// `1 − J_0(z)` without cancellation for small `z`.
pub fn one_minus_j0(z: f64) -> f64 {
    let z = z.abs();
    if z < 0.05 {
        let t = z * z / 4.0;
        // 1 − J0 = t − t²/4 + t³/36 − t⁴/576
        return t * (1.0 - t / 4.0 * (1.0 - t / 9.0 * (1.0 - t / 16.0)));
    }
    1.0 - bessel_j0(z)
}

/// `1 − sin z / z` without cancellation for small `z`.
pub fn one_minus_sinc(z: f64) -> f64 {
    let z = z.abs();
    if z < 0.05 {
        let t = z * z;
        return t / 6.0 * (1.0 - t / 20.0 * (1.0 - t / 42.0 * (1.0 - t / 72.0)));
    }
    1.0 - z.sin() / z
}

/// Modified Bessel function of the second kind `K_v(z)` for `z > 0`, from
/// `∫_0^∞ e^{−z cosh t} cosh(v t) dt`. The integrand is entire and decays
/// doubly exponentially, so the trapezoid rule converges geometrically.
pub fn bessel_k(v: f64, z: f64) -> f64 {
    assert!(z > 0.0, "bessel_k needs z > 0");
    let v = v.abs();
    let h = 0.1;
    let f = |t: f64| (-z * t.cosh() + v * t).exp() * 0.5 * (1.0 + (-2.0 * v * t).exp());
    let mut s = 0.5 * f(0.0);
    let mut k = 1;
    loop {
        let term = f(k as f64 * h);
        s += term;
        if term < 1e-18 * s && (k as f64 * h) > 1.0 {
            break;
        }
        k += 1;
        if k > 100_000 {
            break;
        }
    }
    s * h
}

/// Standard normal distribution function.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(-x / std::f64::consts::SQRT_2)
}
