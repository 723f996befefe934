//! Special functions: the regularized incomplete beta function and the
//! exponential integral `E1`.

use crate::error::{invalid, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;
const MAX_ITER: usize = 10_000;

/// Regularized incomplete beta function `I_x(a, b)`.
///
/// Continued fraction (modified Lentz) on whichever side of the mean
/// converges, with a power-series fallback if the fraction stalls.
pub fn reg_inc_beta(x: f64, a: f64, b: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(invalid(alloc::format!(
            "incomplete beta: x = {x} outside [0, 1]"
        )));
    }
    if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(invalid(alloc::format!(
            "incomplete beta: shape parameters must be positive, got a = {a}, b = {b}"
        )));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    let ln_front = libm::lgamma(a + b) - libm::lgamma(a) - libm::lgamma(b)
        + a * libm::log(x)
        + b * libm::log1p(-x);
    let front = libm::exp(ln_front);
    let value = if x < (a + 1.0) / (a + b + 2.0) {
        match beta_cf(a, b, x) {
            Some(cf) => front * cf / a,
            None => beta_series(x, a, b),
        }
    } else {
        match beta_cf(b, a, 1.0 - x) {
            Some(cf) => 1.0 - front * cf / b,
            None => 1.0 - beta_series(1.0 - x, b, a),
        }
    };
    Ok(value.clamp(0.0, 1.0))
}

fn beta_cf(a: f64, b: f64, x: f64) -> Option<f64> {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            return Some(h);
        }
    }
    None
}

/// `I_x(a, b) = x^a / (a B(a, b)) * sum_n (1-b)_n / n! * a x^n / (a + n)`.
fn beta_series(x: f64, a: f64, b: f64) -> f64 {
    let ln_front =
        a * libm::log(x) - libm::log(a) - (libm::lgamma(a) + libm::lgamma(b) - libm::lgamma(a + b));
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 1..=200 * MAX_ITER {
        let n = n as f64;
        term *= (n - b) * x / n;
        let add = term * a / (a + n);
        sum += add;
        if add.abs() < EPS * sum.abs() {
            break;
        }
    }
    libm::exp(ln_front) * sum
}

/// Exponential integral `E1(x) = int_x^inf e^{-t} / t dt` for `x > 0`.
///
/// Power series below 1, continued fraction from 1 on.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(invalid(alloc::format!("E1 needs x > 0, got {x}")));
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    if x < 1.0 {
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..=MAX_ITER {
            term *= -x / k as f64;
            let add = term / k as f64;
            sum += add;
            if add.abs() < EPS * sum.abs() {
                break;
            }
        }
        return Ok(-EULER_GAMMA - libm::log(x) - sum);
    }
    // Modified Lentz on the even form of the continued fraction.
    let mut b = x + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=MAX_ITER {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    Ok(h * libm::exp(-x))
}

/// `e E1(1)`, the fluid estimate of the probability that a node is mated with
/// its best acceptable neighbor.
pub fn dr1_constant() -> f64 {
    core::f64::consts::E * exp_integral_e1(1.0).expect("E1(1) is defined")
}
