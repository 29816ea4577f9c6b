//! Shared oracles for the integration tests: an adaptive-quadrature
//! evaluation of the scale coefficient, independent of the closed form.

use morrey::geometry::Cube;
use morrey::measure::MeasureSpace;

fn simpson_rule(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (f(a) + 4.0 * f((a + b) / 2.0) + f(b))
}

fn adaptive(f: &impl Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = (a + b) / 2.0;
    let left = simpson_rule(f, a, m);
    let right = simpson_rule(f, m, b);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        adaptive(f, a, m, left, tol / 2.0, depth - 1)
            + adaptive(f, m, b, right, tol / 2.0, depth - 1)
    }
}

fn integrate_piece(mass: f64, n: f64, a: f64, b: f64) -> f64 {
    if b <= a || mass == 0.0 {
        return 0.0;
    }
    let f = move |l: f64| mass * l.powf(-n - 1.0);
    // Octave splitting keeps the adaptive tolerance tracking the local
    // scale of the integrand.
    let mut total = 0.0;
    let mut lo = a;
    while lo < b {
        let hi = (2.0 * lo).min(b);
        let whole = simpson_rule(&f, lo, hi);
        let tol = 1e-13 * whole.abs() + 1e-300;
        total += adaptive(&f, lo, hi, whole, tol, 40);
        lo = hi;
    }
    total
}

/// `delta(Q, R)` by piecewise adaptive Simpson quadrature. Unbounded `R`
/// integrates the tail octave by octave until the contribution vanishes.
pub fn delta_quadrature(mu: &MeasureSpace, q: &Cube, r: &Cube) -> f64 {
    let n = mu.growth_exponent();
    let lo = q.side().unwrap();
    let hi = q.hull_side(r).unwrap();
    let profile = mu.radial_profile(q.center().unwrap());

    let mut total = 0.0;
    let pieces = profile.breakpoints.len();
    for i in 0..pieces {
        let a = profile.breakpoints[i].max(lo);
        let piece_end = if i + 1 < pieces {
            profile.breakpoints[i + 1].min(hi)
        } else {
            hi
        };
        if piece_end <= a {
            continue;
        }
        if piece_end.is_finite() {
            total += integrate_piece(profile.masses[i], n, a, piece_end);
        } else {
            // Tail of the last piece: fixed octaves until they no longer
            // move the accumulator.
            let mass = profile.masses[i];
            let mut x = a;
            for _ in 0..600 {
                let contribution = integrate_piece(mass, n, x, 2.0 * x);
                total += contribution;
                x *= 2.0;
                if contribution < 1e-16 * total {
                    break;
                }
            }
        }
    }
    total
}
