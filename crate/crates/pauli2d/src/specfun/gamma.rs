use crate::{Error, Result};
use std::f64::consts::PI;

use super::SpecFunResult;

// Lanczos approximation, g = 7, 9 terms.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_gamma(x: f64) -> f64 {
    // valid for x >= 0.5
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc
}

/// Gamma function for real argument (poles at 0, -1, -2, ... rejected).
pub fn gamma(x: f64) -> Result<SpecFunResult> {
    if !x.is_finite() {
        return Err(Error::Domain("gamma: non-finite argument".into()));
    }
    if x <= 0.0 && x == x.floor() {
        return Err(Error::Domain(format!("gamma: pole at {x}")));
    }
    if x > 171.6 {
        return Err(Error::Domain("gamma: overflow for x > 171.6".into()));
    }
    let v = if x >= 0.5 {
        lanczos_gamma(x)
    } else {
        // reflection
        PI / ((PI * x).sin() * lanczos_gamma(1.0 - x))
    };
    Ok(SpecFunResult::new(v, 3e-15 * v.abs()))
}

/// ln |Gamma(x)|, via Lanczos with reflection.
pub fn ln_gamma_abs(x: f64) -> Result<f64> {
    if x <= 0.0 && x == x.floor() {
        return Err(Error::Domain(format!("ln_gamma: pole at {x}")));
    }
    if x >= 0.5 {
        let z = x - 1.0;
        let mut acc = LANCZOS[0];
        for (i, c) in LANCZOS.iter().enumerate().skip(1) {
            acc += c / (z + i as f64);
        }
        let t = z + LANCZOS_G + 0.5;
        Ok(0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln())
    } else {
        let s = (PI * x).sin().abs();
        Ok(PI.ln() - s.ln() - ln_gamma_abs(1.0 - x)?)
    }
}

// Taylor coefficients of 1/Gamma(1+x) around x = 0 (Abramowitz & Stegun 6.1.34).
const RECIP_GAMMA_COEF: [f64; 11] = [
    1.0,
    0.577_215_664_901_532_9,
    -0.655_878_071_520_253_8,
    -0.042_002_635_034_095_2,
    0.166_538_611_382_291_5,
    -0.042_197_734_555_544_3,
    -0.009_621_971_527_877_0,
    0.007_218_943_246_663_0,
    -0.001_165_167_591_859_1,
    -0.000_215_241_674_114_9,
    0.000_128_050_282_388_2,
];

/// `1/Gamma(1+x)` for |x| <= 0.6, by the Taylor series; used where the
/// difference combinations `(1/Gamma(1-x) +- 1/Gamma(1+x))` must be formed
/// without cancellation.
pub fn recip_gamma_1p(x: f64) -> f64 {
    debug_assert!(x.abs() <= 0.6);
    let mut acc = 0.0;
    for c in RECIP_GAMMA_COEF.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// `(1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)` and
/// `(1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2`, stable as `mu -> 0`.
pub(crate) fn temme_gammas(mu: f64) -> (f64, f64) {
    // odd/even parts of the Taylor series: no cancellation
    let mut g1 = 0.0;
    let mut g2 = 0.0;
    let m2 = mu * mu;
    let mut p = 1.0;
    for k in 0..5 {
        g1 -= RECIP_GAMMA_COEF[2 * k + 1] * p;
        g2 += RECIP_GAMMA_COEF[2 * k] * p;
        p *= m2;
    }
    g2 += RECIP_GAMMA_COEF[10] * p;
    (g1, g2)
}
