//! Brent's derivative-free scalar optimizer (golden section with parabolic
//! interpolation), maximization form.

const GOLDEN: f64 = 0.381_966_011_250_105_1;
const MAX_ITERATIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrentResult {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Maximizes `f` on `[lower, upper]` starting from `start`, which should be the
/// best known point of a bracketing triple. Stops once the optimum is located
/// to within `x_tol` (absolute).
pub fn maximize<F: FnMut(f64) -> f64>(
    mut f: F,
    lower: f64,
    start: f64,
    upper: f64,
    x_tol: f64,
) -> BrentResult {
    let mut neg = |x: f64| {
        let v = -f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let (mut a, mut b) = (lower.min(upper), lower.max(upper));
    let tol1 = 0.5 * x_tol;
    let tol2 = x_tol;

    let mut x = start.clamp(a, b);
    let (mut w, mut v) = (x, x);
    let mut fx = neg(x);
    let (mut fw, mut fv) = (fx, fx);
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;

    for iteration in 0..MAX_ITERATIONS {
        let xm = 0.5 * (a + b);
        if (x - xm).abs() <= tol2 - 0.5 * (b - a) {
            return BrentResult {
                x,
                value: -fx,
                iterations: iteration,
                converged: true,
            };
        }
        let mut golden = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let e_prev = e;
            e = d;
            let acceptable = p.is_finite()
                && q.is_finite()
                && p.abs() < (0.5 * q * e_prev).abs()
                && p > q * (a - x)
                && p < q * (b - x);
            if acceptable {
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = tol1.copysign(xm - x);
                }
                golden = false;
            }
        }
        if golden {
            e = if x >= xm { a - x } else { b - x };
            d = GOLDEN * e;
        }
        let u = if d.abs() >= tol1 {
            x + d
        } else {
            x + tol1.copysign(d)
        };
        let fu = neg(u);
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            (v, fv) = (w, fw);
            (w, fw) = (x, fx);
            (x, fx) = (u, fu);
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                (v, fv) = (w, fw);
                (w, fw) = (u, fu);
            } else if fu <= fv || v == x || v == w {
                (v, fv) = (u, fu);
            }
        }
    }
    BrentResult {
        x,
        value: -fx,
        iterations: MAX_ITERATIONS,
        converged: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_parabola_peak() {
        let r = maximize(|x| -(x - 0.3).powi(2), 0.0, 0.25, 1.0, 1e-9);
        assert!(r.converged);
        assert!((r.x - 0.3).abs() < 1e-8, "{r:?}");
    }

    #[test]
    fn finds_non_quadratic_peak() {
        // Peak of x·e^{-x} at 1.
        let r = maximize(|x| x * (-x).exp(), 0.2, 0.8, 3.0, 1e-9);
        assert!((r.x - 1.0).abs() < 1e-8, "{r:?}");
    }

    #[test]
    fn monotone_function_goes_to_the_edge() {
        let r = maximize(|x| -x, 0.1, 0.2, 0.5, 1e-7);
        assert!(r.converged);
        assert!(r.x - 0.1 <= 1e-7, "{r:?}");
    }

    #[test]
    fn survives_infinite_values() {
        let r = maximize(
            |x| {
                if x < 0.2 {
                    f64::NEG_INFINITY
                } else {
                    -(x - 0.4).powi(2)
                }
            },
            0.0,
            0.35,
            1.0,
            1e-8,
        );
        assert!((r.x - 0.4).abs() < 1e-7, "{r:?}");
    }
}
