use crate::{Error, Result};
use std::f64::consts::PI;

use super::gamma::{ln_gamma_abs, temme_gammas};
use super::{integrate, SpecFunResult};

const EPS: f64 = 2.2e-16;

/// Ascending series for `J_sigma(x)`; reliable (no destructive cancellation)
/// when the first term dominates, i.e. small `x` or `sigma` well above `x`.
/// Returns (value, est_error).
fn bessel_j_series(sigma: f64, x: f64) -> Result<(f64, f64)> {
    if x == 0.0 {
        return Ok(if sigma == 0.0 { (1.0, EPS) } else { (0.0, 0.0) });
    }
    let q = x / 2.0;
    // leading coefficient (x/2)^sigma / Gamma(sigma+1), in log form to dodge overflow
    let lead = sigma * q.ln() - ln_gamma_abs(sigma + 1.0)?;
    let mut term = 1.0f64;
    let mut sum = term;
    let mut max_term = 1.0f64;
    let q2 = q * q;
    for m in 1..400 {
        term *= -q2 / (m as f64 * (sigma + m as f64));
        sum += term;
        max_term = max_term.max(term.abs());
        if term.abs() < sum.abs() * EPS && m as f64 > q {
            break;
        }
    }
    let scale = lead.exp();
    let err = EPS * max_term / sum.abs().max(1e-300) * 4.0;
    Ok((scale * sum, (err * scale * sum.abs()).abs() + 1e-305))
}

/// Bessel function of the first kind, `nu >= 0`, `0 <= x <= 50`.
///
/// Small arguments (or orders comfortably above the argument) use the
/// ascending series directly; otherwise two series seeds at an order above
/// the turning point feed a downward three-term recurrence, which is stable
/// for J.
pub fn bessel_j(nu: f64, x: f64) -> Result<SpecFunResult> {
    if !(nu >= 0.0) {
        return Err(Error::Domain(format!("bessel_j: order {nu} < 0 unsupported")));
    }
    if !(0.0..=50.0).contains(&x) {
        return Err(Error::Domain(format!("bessel_j: argument {x} outside [0, 50]")));
    }
    // series is cancellation-safe when x small or order above the argument
    if x <= 9.0 || nu >= 1.1 * x + 5.0 {
        let (v, e) = bessel_j_series(nu, x)?;
        return Ok(SpecFunResult::new(v, e));
    }
    // downward recurrence J_{s-1} = (2s/x) J_s - J_{s+1} from a seed order
    // where the series is first-term dominated
    let extra = (1.3 * x + 35.0).ceil() as usize;
    let sigma_hi = nu + extra as f64;
    let (mut jp, e1) = bessel_j_series(sigma_hi + 1.0, x)?; // J_{sigma_hi+1}
    let (mut j, e0) = bessel_j_series(sigma_hi, x)?; // J_{sigma_hi}
    let rel_seed = (e0 / j.abs().max(1e-300)).max(e1 / jp.abs().max(1e-300));
    let mut s = sigma_hi;
    for _ in 0..extra {
        let jm = (2.0 * s / x) * j - jp;
        jp = j;
        j = jm;
        s -= 1.0;
    }
    let err = (rel_seed + 50.0 * EPS) * j.abs();
    Ok(SpecFunResult::new(j, err))
}

/// Temme's series for `K_mu(x)` and `K_{mu+1}(x)`, |mu| <= 1/2, x <= 2.
fn bessel_k_temme(mu: f64, x: f64) -> Result<(f64, f64, f64)> {
    debug_assert!(mu.abs() <= 0.5 && x > 0.0 && x <= 2.0);
    let (gam1, gam2) = temme_gammas(mu);
    let gampl = gam2 + mu * gam1; // 1/Gamma(1-mu)
    let gammi = gam2 - mu * gam1; // 1/Gamma(1+mu)
    let pimu = PI * mu;
    let fact = if pimu.abs() < 1e-30 { 1.0 } else { pimu / pimu.sin() };
    let d = -(x / 2.0).ln();
    let e = mu * d;
    let fact2 = if e.abs() < 1e-30 { 1.0 } else { e.sinh() / e };
    let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
    let mut sum = ff;
    let ee = e.exp();
    let mut p = 0.5 * ee / gampl;
    let mut q = 0.5 / (ee * gammi);
    let mut c = 1.0;
    let d2 = 0.25 * x * x;
    let mut sum1 = p;
    let mut converged = false;
    for i in 1..200 {
        let fi = i as f64;
        ff = (fi * ff + p + q) / (fi * fi - mu * mu);
        c *= d2 / fi;
        p /= fi - mu;
        q /= fi + mu;
        let del = c * ff;
        sum += del;
        let del1 = c * (p - fi * ff);
        sum1 += del1;
        if del.abs() < sum.abs() * EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence("bessel_k: Temme series stalled".into()));
    }
    let k_mu = sum;
    let k_mu1 = sum1 * 2.0 / x;
    Ok((k_mu, k_mu1, 4.0 * EPS * k_mu.abs()))
}

/// Optimally truncated large-argument expansion of `K_nu(z)`.
/// Returns None when the smallest term is not small enough.
fn bessel_k_asymptotic(nu: f64, z: f64) -> Option<(f64, f64)> {
    let mu4 = 4.0 * nu * nu;
    let pref = (PI / (2.0 * z)).sqrt() * (-z).exp();
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut best = f64::INFINITY;
    for k in 1..60 {
        let kf = k as f64;
        term *= (mu4 - (2.0 * kf - 1.0).powi(2)) / (8.0 * z * kf);
        if term.abs() >= best {
            break; // passed the optimal truncation point
        }
        sum += term;
        best = term.abs();
    }
    if best > 1e-13 * sum.abs() {
        return None;
    }
    Some((pref * sum, pref * (best + EPS * sum.abs()) * 2.0))
}

/// `K_nu(z)` by Gauss-Legendre quadrature of `int_0^inf e^{-z cosh t} cosh(nu t) dt`.
/// Positive integrand, no cancellation; used in the mid range.
fn bessel_k_quadrature(nu: f64, z: f64) -> (f64, f64) {
    let nu = nu.abs();
    // integrand negligible once z cosh t > z + 750-ish relative to peak;
    // cap via cosh t = (z + 120 + nu t_max)/z solved crudely
    let mut t_max = ((120.0 + 1.0) / z + 1.0).acosh().max(1.0);
    for _ in 0..20 {
        t_max = (((120.0 + nu * t_max) / z) + 1.0).acosh().max(1.0);
    }
    let f = |t: f64| (-z * t.cosh()).exp() * (nu * t).cosh();
    let v1 = integrate(f, 0.0, t_max, 10, 40);
    let v2 = integrate(f, 0.0, t_max, 14, 40);
    (v2, (v1 - v2).abs() + 4.0 * EPS * v2.abs())
}

/// Modified Bessel function of the second kind, real order, `z > 0`
/// (supported accuracy range `1e-3 <= z <= 50`; evaluation works outside it).
///
/// Crossovers: Temme series + upward order recurrence for `z <= 2`,
/// integral representation for `2 < z < 16` (and whenever the asymptotic
/// expansion cannot reach 1e-13), asymptotic expansion for `z >= 16`.
pub fn bessel_k(nu: f64, z: f64) -> Result<SpecFunResult> {
    if !(z > 0.0) {
        return Err(Error::Domain(format!("bessel_k: argument {z} <= 0")));
    }
    if z > 700.0 {
        return Err(Error::Domain("bessel_k: argument too large (underflow)".into()));
    }
    let nu = nu.abs(); // K is even in the order
    if z >= 16.0 {
        if let Some((v, e)) = bessel_k_asymptotic(nu, z) {
            return Ok(SpecFunResult::new(v, e));
        }
        let (v, e) = bessel_k_quadrature(nu, z);
        return Ok(SpecFunResult::new(v, e));
    }
    if z > 2.0 {
        let (v, e) = bessel_k_quadrature(nu, z);
        return Ok(SpecFunResult::new(v, e));
    }
    // reduce order to |mu| <= 1/2 and recur upward (stable for K)
    let n = (nu + 0.5).floor() as usize;
    let mu = nu - n as f64;
    let (mut km, mut kp, e) = bessel_k_temme(mu, z)?;
    let mut ord = mu;
    for _ in 0..n {
        let kn = km + (2.0 * (ord + 1.0) / z) * kp;
        km = kp;
        kp = kn;
        ord += 1.0;
    }
    // after the loop km = K_{mu+n} = K_nu
    let v = km;
    let rel = e / v.abs().max(1e-300) + n as f64 * 2.0 * EPS;
    Ok(SpecFunResult::new(v, rel * v.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j_half_integer_closed_form() {
        // J_{1/2}(x) = sqrt(2/(pi x)) sin x
        for &x in &[0.3, 1.0, 7.5, 20.0, 44.0] {
            let v = bessel_j(0.5, x).unwrap().value;
            let exact = (2.0 / (PI * x)).sqrt() * x.sin();
            assert!((v - exact).abs() <= 1e-12 * exact.abs().max(0.05), "x={x}: {v} vs {exact}");
        }
    }

    #[test]
    fn j_recurrence_identity() {
        // J_{nu-1}(x) + J_{nu+1}(x) = (2 nu / x) J_nu(x) at (nu, x) = (1, 2)
        let a = bessel_j(0.0, 2.0).unwrap().value;
        let b = bessel_j(1.0, 2.0).unwrap().value;
        let c = bessel_j(2.0, 2.0).unwrap().value;
        assert!((a + c - b).abs() < 1e-12);
        assert!((bessel_j(0.0, 0.0).unwrap().value - 1.0).abs() == 0.0);
        assert!(bessel_j(-1.0, 1.0).is_err());
        assert!(bessel_j(1.0, 51.0).is_err());
    }

    #[test]
    fn k_half_integer_and_evenness() {
        // K_{1/2}(z) = sqrt(pi/(2z)) e^{-z}
        for &z in &[0.05, 0.8, 1.9, 5.0, 30.0] {
            let v = bessel_k(0.5, z).unwrap().value;
            let exact = (PI / (2.0 * z)).sqrt() * (-z).exp();
            assert!((v - exact).abs() <= 1e-11 * exact, "z={z}: {v} vs {exact}");
        }
        let a = bessel_k(0.3, 2.0).unwrap().value;
        let b = bessel_k(-0.3, 2.0).unwrap().value;
        assert_eq!(a, b);
        assert!(bessel_k(1.0, 0.0).is_err());
    }

    #[test]
    fn k_recurrence_identity() {
        // K_{nu+1} - K_{nu-1} = (2 nu / z) K_nu at (1, 2)
        let k0 = bessel_k(0.0, 2.0).unwrap().value;
        let k1 = bessel_k(1.0, 2.0).unwrap().value;
        let k2 = bessel_k(2.0, 2.0).unwrap().value;
        assert!((k2 - k0 - k1).abs() < 1e-11 * k1);
    }
}
