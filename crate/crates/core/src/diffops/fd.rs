//! Central finite differences with one Richardson level.

use crate::error::Result;

/// Fourth-order five-point first derivative.
#[inline]
fn d1_raw<F: Fn(f64) -> Result<f64>>(f: &F, x: f64, h: f64) -> Result<f64> {
    Ok((f(x - 2.0 * h)? - 8.0 * f(x - h)? + 8.0 * f(x + h)? - f(x + 2.0 * h)?) / (12.0 * h))
}

/// Fourth-order five-point second derivative.
#[inline]
fn d2_raw<F: Fn(f64) -> Result<f64>>(f: &F, x: f64, h: f64) -> Result<f64> {
    let c = f(x)?;
    Ok((-f(x - 2.0 * h)? + 16.0 * f(x - h)? - 30.0 * c + 16.0 * f(x + h)? - f(x + 2.0 * h)?) / (12.0 * h * h))
}

/// `f'(x)`, sixth order after Richardson extrapolation of the five-point rule.
pub fn derivative<F: Fn(f64) -> Result<f64>>(f: F, x: f64, h: f64) -> Result<f64> {
    let coarse = d1_raw(&f, x, h)?;
    let fine = d1_raw(&f, x, 0.5 * h)?;
    Ok((16.0 * fine - coarse) / 15.0)
}

/// `f''(x)`, sixth order after Richardson extrapolation.
pub fn second_derivative<F: Fn(f64) -> Result<f64>>(f: F, x: f64, h: f64) -> Result<f64> {
    let coarse = d2_raw(&f, x, h)?;
    let fine = d2_raw(&f, x, 0.5 * h)?;
    Ok((16.0 * fine - coarse) / 15.0)
}

/// `f'(x)` with two Richardson levels (eighth order). Used where a
/// derivative of a differenced quantity is taken.
pub fn derivative_fine<F: Fn(f64) -> Result<f64>>(f: F, x: f64, h: f64) -> Result<f64> {
    let d0 = d1_raw(&f, x, h)?;
    let d1 = d1_raw(&f, x, 0.5 * h)?;
    let d2 = d1_raw(&f, x, 0.25 * h)?;
    let r0 = (16.0 * d1 - d0) / 15.0;
    let r1 = (16.0 * d2 - d1) / 15.0;
    Ok((64.0 * r1 - r0) / 63.0)
}

/// Infallible convenience wrappers.
pub fn derivative_of<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    derivative(|t| Ok(f(t)), x, h).expect("infallible")
}

pub fn second_derivative_of<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    second_derivative(|t| Ok(f(t)), x, h).expect("infallible")
}

/// Step for differentiating at `x` when the stencil must not reach the
/// singular plane `x = 0`: the widest stencil point is `x ± 2h`.
#[inline]
pub fn safe_step(nominal: f64, x: f64, singular_at_origin: bool) -> f64 {
    if singular_at_origin {
        nominal.min(0.125 * x.abs())
    } else {
        nominal
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_on_low_degree_polynomials() {
        let f = |x: f64| 3.0 * x.powi(4) - x.powi(3) + 2.0 * x - 7.0;
        let df = |x: f64| 12.0 * x.powi(3) - 3.0 * x * x + 2.0;
        let ddf = |x: f64| 36.0 * x * x - 6.0 * x;
        for x in [-1.5, 0.3, 2.0] {
            assert!((derivative_of(f, x, 1e-2) - df(x)).abs() < 1e-10);
            assert!((second_derivative_of(f, x, 1e-2) - ddf(x)).abs() < 1e-9);
        }
    }

    #[test]
    fn sixth_order_on_smooth_function() {
        let x = 0.7;
        let e1 = (derivative_of(f64::sin, x, 0.2) - x.cos()).abs();
        let e2 = (derivative_of(f64::sin, x, 0.1) - x.cos()).abs();
        assert!(e1 / e2 > 40.0, "ratio {}", e1 / e2);
    }

    #[test]
    fn fine_derivative_is_eighth_order() {
        let x = 0.7;
        let e1 = (derivative_fine(|t| Ok(t.sin()), x, 0.4).unwrap() - x.cos()).abs();
        let e2 = (derivative_fine(|t| Ok(t.sin()), x, 0.2).unwrap() - x.cos()).abs();
        assert!(e1 / e2 > 150.0, "ratio {}", e1 / e2);
    }

    #[test]
    fn safe_step_stays_off_origin() {
        assert_eq!(safe_step(1e-3, 2.0, true), 1e-3);
        assert_eq!(safe_step(1e-3, 4e-3, true), 5e-4);
        assert_eq!(safe_step(1e-3, 4e-3, false), 1e-3);
    }
}
