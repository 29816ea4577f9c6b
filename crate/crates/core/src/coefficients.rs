//! Closed-form evaluation of the scale coefficients `delta(Q, R)`,
//! `K_{Q,R} = 1 + delta(Q, R)` and the dyadic-sum variant `K^{(alpha)}`.
//!
//! `delta` integrates the radial step profile of the measure at `z_Q`
//! against `l^{-n-1}` between the scales `l(Q)` and `l(Q_R)`; on each
//! profile piece the antiderivative is `-l^{-n}/n`, so the value is exact.

use crate::geometry::Cube;
use crate::measure::{MeasureSpace, StepProfile};
use crate::{Error, Result};

/// Integrate `profile(l) * l^{-n-1}` over `[lo, hi]`; `hi` may be infinite.
pub fn profile_integral(profile: &StepProfile, n: f64, lo: f64, hi: f64) -> f64 {
    let mut sum = 0.0;
    let pieces = profile.breakpoints.len();
    for i in 0..pieces {
        let a = profile.breakpoints[i].max(lo);
        let b = if i + 1 < pieces {
            profile.breakpoints[i + 1].min(hi)
        } else {
            hi
        };
        if b <= a {
            continue;
        }
        let tail = if b.is_finite() { b.powf(-n) } else { 0.0 };
        sum += profile.masses[i] * (a.powf(-n) - tail) / n;
    }
    sum
}

fn check_pair(mu: &MeasureSpace, q: &Cube, r: &Cube) -> Result<()> {
    if !q.is_bounded() {
        return Err(Error::InvalidParameter(
            "delta requires a bounded inner cube".into(),
        ));
    }
    if mu.mass_of(q) <= 0.0 {
        return Err(Error::ZeroMeasure);
    }
    if !q.is_subset(r) {
        return Err(Error::InvalidParameter(
            "delta requires Q to be a subset of R".into(),
        ));
    }
    Ok(())
}

/// `delta(Q, R)`: the logarithmic-type integral of the radial profile of
/// `mu` at `z_Q` between `l(Q)` and `l(Q_R)`.
///
/// When `R` is the whole space the upper limit is infinite; the tail
/// converges since `n > 0`.
pub fn delta(mu: &MeasureSpace, q: &Cube, r: &Cube) -> Result<f64> {
    check_pair(mu, q, r)?;
    let profile = mu.radial_profile(q.center().unwrap());
    delta_with_profile(mu, &profile, q, r)
}

/// `delta` evaluated with a pre-computed profile for `z_Q`, for callers
/// that sweep many pairs sharing the inner cube.
pub fn delta_with_profile(
    mu: &MeasureSpace,
    profile: &StepProfile,
    q: &Cube,
    r: &Cube,
) -> Result<f64> {
    check_pair(mu, q, r)?;
    let lo = q.side().unwrap();
    let hi = q.hull_side(r)?;
    Ok(profile_integral(profile, mu.growth_exponent(), lo, hi))
}

/// `K_{Q,R} = 1 + delta(Q, R)`.
pub fn k_coefficient(mu: &MeasureSpace, q: &Cube, r: &Cube) -> Result<f64> {
    Ok(1.0 + delta(mu, q, r)?)
}

/// `c_n = sum_{k>=0} 2^{-nk} = 1 / (1 - 2^{-n})`.
pub fn geometric_sum(n: f64) -> f64 {
    1.0 / (1.0 - 2f64.powf(-n))
}

/// The least `j >= 0` with `R` contained in `2^j Q`. Rejects an unbounded
/// `R`, for which no such dilate exists.
pub fn covering_exponent(q: &Cube, r: &Cube) -> Result<u32> {
    if !q.is_bounded() {
        return Err(Error::InvalidParameter(
            "covering exponent requires a bounded base cube".into(),
        ));
    }
    if !r.is_bounded() {
        return Err(Error::InvalidParameter(
            "covering exponent is undefined for the whole space".into(),
        ));
    }
    let mut j = 0u32;
    let mut current = q.clone();
    while !r.is_subset(&current) {
        current = current.dilate(2.0)?;
        j += 1;
        if j > 4000 {
            return Err(Error::InvalidParameter(
                "covering exponent search did not terminate".into(),
            ));
        }
    }
    Ok(j)
}

/// `K^{(alpha)}_{Q,R} = 1 + sum_{k=1}^{N} (mu(2^k Q) / l(2^k Q)^n)^{(n - alpha)/n}`
/// where `N` is the least `j` with `2^j Q` containing `R`.
pub fn k_alpha(mu: &MeasureSpace, q: &Cube, r: &Cube, alpha: f64) -> Result<f64> {
    let n = mu.growth_exponent();
    if !(alpha > 0.0 && alpha < n) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in (0, n) = (0, {n}), got {alpha}"
        )));
    }
    check_pair(mu, q, r)?;
    let big_n = covering_exponent(q, r)?;
    let exponent = (n - alpha) / n;
    let mut sum = 1.0;
    let mut current = q.clone();
    for _ in 1..=big_n {
        current = current.dilate(2.0)?;
        let density = mu.mass_of(&current) / current.side().unwrap().powf(n);
        sum += density.powf(exponent);
    }
    Ok(sum)
}
