//! Axis-parallel cube arithmetic: membership, dilation, concentric hulls
//! and the Chebyshev metric.
//!
//! Cubes are closed; membership ties at the boundary resolve to "inside".
//! The whole space is a distinguished variant rather than a huge cube, so
//! that its side length can stay symbolic.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A point in `R^d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() || coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter(
                "point coordinates must be finite and non-empty".into(),
            ));
        }
        Ok(Point { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Chebyshev (sup) distance to another point.
    pub fn chebyshev(&self, other: &Point) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// An axis-parallel closed cube, or the whole space.
///
/// `WholeSpace` is admitted as a member of cube families only when the
/// underlying measure is finite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Cube {
    Bounded { center: Point, side: f64 },
    WholeSpace,
}

impl Cube {
    pub fn bounded(center: Point, side: f64) -> Result<Self> {
        if !(side > 0.0 && side.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "cube side must be positive and finite, got {side}"
            )));
        }
        Ok(Cube::Bounded { center, side })
    }

    pub fn is_bounded(&self) -> bool {
        matches!(self, Cube::Bounded { .. })
    }

    /// Side length; `None` for the whole space.
    pub fn side(&self) -> Option<f64> {
        match self {
            Cube::Bounded { side, .. } => Some(*side),
            Cube::WholeSpace => None,
        }
    }

    pub fn center(&self) -> Option<&Point> {
        match self {
            Cube::Bounded { center, .. } => Some(center),
            Cube::WholeSpace => None,
        }
    }

    /// Closed-cube membership: `|y - z_Q|_inf <= l(Q)/2`.
    pub fn contains(&self, y: &Point) -> Result<bool> {
        match self {
            Cube::WholeSpace => Ok(true),
            Cube::Bounded { center, side } => {
                if center.dim() != y.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: center.dim(),
                        got: y.dim(),
                    });
                }
                Ok(center.chebyshev(y) <= side / 2.0)
            }
        }
    }

    /// Concentric dilation by `rho >= 1`. Dilating the whole space is a
    /// no-op.
    pub fn dilate(&self, rho: f64) -> Result<Cube> {
        if !(rho >= 1.0 && rho.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "dilation factor must be >= 1 and finite, got {rho}"
            )));
        }
        match self {
            Cube::WholeSpace => Ok(Cube::WholeSpace),
            Cube::Bounded { center, side } => Ok(Cube::Bounded {
                center: center.clone(),
                side: side * rho,
            }),
        }
    }

    /// The smallest cube concentric to `self` containing `other`.
    ///
    /// The hull never shrinks below the side of `self`; it is the whole
    /// space when `other` is.
    pub fn concentric_hull(&self, other: &Cube) -> Result<Cube> {
        let (center, side) = match self {
            Cube::Bounded { center, side } => (center, *side),
            Cube::WholeSpace => {
                return Err(Error::InvalidParameter(
                    "concentric hull requires a bounded base cube".into(),
                ))
            }
        };
        match other {
            Cube::WholeSpace => Ok(Cube::WholeSpace),
            Cube::Bounded {
                center: oc,
                side: os,
            } => {
                if center.dim() != oc.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: center.dim(),
                        got: oc.dim(),
                    });
                }
                // The farthest corner of `other` along each axis sits at
                // |c_i - z_i| + l(other)/2 from the base center.
                let reach = center
                    .coords
                    .iter()
                    .zip(&oc.coords)
                    .map(|(z, c)| (c - z).abs() + os / 2.0)
                    .fold(0.0, f64::max);
                Ok(Cube::Bounded {
                    center: center.clone(),
                    side: side.max(2.0 * reach),
                })
            }
        }
    }

    /// Side length of the concentric hull of `other`, infinity for the
    /// whole space.
    pub fn hull_side(&self, other: &Cube) -> Result<f64> {
        Ok(match self.concentric_hull(other)? {
            Cube::Bounded { side, .. } => side,
            Cube::WholeSpace => f64::INFINITY,
        })
    }

    /// Whether every point of `self` lies in `other`, decided by corner
    /// comparison.
    pub fn is_subset(&self, other: &Cube) -> bool {
        match (self, other) {
            (_, Cube::WholeSpace) => true,
            (Cube::WholeSpace, Cube::Bounded { .. }) => false,
            (
                Cube::Bounded { center: cq, side: lq },
                Cube::Bounded { center: cr, side: lr },
            ) => cq
                .coords
                .iter()
                .zip(&cr.coords)
                .all(|(a, b)| (a - b).abs() + lq / 2.0 <= lr / 2.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(coords: &[f64]) -> Point {
        Point::new(coords.to_vec()).unwrap()
    }

    fn cube(center: f64, side: f64) -> Cube {
        Cube::bounded(pt(&[center]), side).unwrap()
    }

    #[test]
    fn contains_boundary_is_inside() {
        let q = cube(0.0, 2.0);
        assert!(q.contains(&pt(&[1.0])).unwrap());
        assert!(!q.contains(&pt(&[1.0000001])).unwrap());
        assert!(Cube::WholeSpace.contains(&pt(&[1e12])).unwrap());
    }

    #[test]
    fn contains_rejects_dimension_mismatch() {
        let q = cube(0.0, 2.0);
        assert!(matches!(
            q.contains(&pt(&[0.0, 0.0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn dilate_examples() {
        let q = cube(0.5, 1.0);
        assert_eq!(q.dilate(2.0).unwrap(), cube(0.5, 2.0));
        let q = cube(0.0, 3.0);
        assert_eq!(q.dilate(1.5).unwrap(), cube(0.0, 4.5));
        assert_eq!(q.dilate(1.0).unwrap(), q);
        assert!(q.dilate(0.5).is_err());
    }

    #[test]
    fn dilate_semigroup() {
        let q = cube(0.3, 1.7);
        let a = q.dilate(2.0).unwrap().dilate(2.0).unwrap();
        let b = q.dilate(4.0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn concentric_hull_examples() {
        let q = cube(0.0, 1.0);
        assert_eq!(q.concentric_hull(&cube(0.0, 4.0)).unwrap(), cube(0.0, 4.0));
        // R = (3, side 2): corners at 2 and 4 -> side 8.
        assert_eq!(q.concentric_hull(&cube(3.0, 2.0)).unwrap(), cube(0.0, 8.0));
        // The hull never shrinks below l(Q).
        let big = cube(0.0, 10.0);
        assert_eq!(
            big.concentric_hull(&cube(0.5, 1.0)).unwrap(),
            cube(0.0, 10.0)
        );
        assert_eq!(
            q.concentric_hull(&Cube::WholeSpace).unwrap(),
            Cube::WholeSpace
        );
    }

    #[test]
    fn hull_contains_both_and_is_minimal() {
        let cases = [
            (cube(0.0, 1.0), cube(3.0, 2.0)),
            (cube(1.0, 2.0), cube(1.5, 0.5)),
            (cube(-2.0, 0.25), cube(4.0, 7.0)),
        ];
        for (q, r) in cases {
            let h = q.concentric_hull(&r).unwrap();
            assert!(q.is_subset(&h));
            assert!(r.is_subset(&h));
            // Shrinking by any epsilon breaks containment of R (unless the
            // hull is pinned at l(Q)).
            let side = h.side().unwrap();
            if side > q.side().unwrap() {
                let shrunk = Cube::Bounded {
                    center: h.center().unwrap().clone(),
                    side: side * (1.0 - 1e-6),
                };
                assert!(!r.is_subset(&shrunk));
            }
        }
    }

    #[test]
    fn subset_examples() {
        assert!(cube(0.0, 1.0).is_subset(&cube(0.0, 2.0)));
        assert!(!cube(0.0, 1.0).is_subset(&cube(10.0, 2.0)));
        assert!(cube(0.0, 1.0).is_subset(&Cube::WholeSpace));
        assert!(Cube::WholeSpace.is_subset(&Cube::WholeSpace));
        assert!(!Cube::WholeSpace.is_subset(&cube(0.0, 1.0)));
    }

    #[test]
    fn contains_monotone_in_dilation() {
        let q = cube(0.2, 1.0);
        let y = pt(&[1.4]);
        let mut seen_inside = false;
        for step in 0..40 {
            let rho = 1.0 + step as f64 * 0.25;
            let inside = q.dilate(rho).unwrap().contains(&y).unwrap();
            if seen_inside {
                assert!(inside);
            }
            seen_inside |= inside;
        }
        assert!(seen_inside);
    }
}
