//! Labeled exact-rational point configurations and the `"p/q"` text form
//! used for rationals in documents.

use num::{BigInt, One, Signed};
use thiserror::Error;

use crate::linalg::{Rational, RationalVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointsError {
    #[error("point {label} has {found} coordinates, expected {dim}")]
    DimensionMismatch {
        label: usize,
        found: usize,
        dim: usize,
    },
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("malformed rational {0:?}")]
    BadRational(String),
}

/// Points `x_1, ..., x_n` in `Q^dim`, labeled by position (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointConfiguration {
    dim: usize,
    points: Vec<RationalVector>,
}

impl PointConfiguration {
    pub fn new(dim: usize, points: Vec<RationalVector>) -> Result<Self, PointsError> {
        if dim == 0 {
            return Err(PointsError::ZeroDimension);
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(PointsError::DimensionMismatch {
                    label: i + 1,
                    found: p.len(),
                    dim,
                });
            }
        }
        Ok(PointConfiguration { dim, points })
    }

    pub fn from_integers(dim: usize, points: &[Vec<i64>]) -> Result<Self, PointsError> {
        PointConfiguration::new(
            dim,
            points
                .iter()
                .map(|p| p.iter().map(|&x| crate::linalg::rat(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[RationalVector] {
        &self.points
    }

    /// The point with the given 1-based label.
    pub fn point(&self, label: usize) -> &RationalVector {
        &self.points[label - 1]
    }

    /// `x -> M x + t` applied to every point; `linear` is row-major `dim x dim`.
    pub fn affine_image(&self, linear: &[RationalVector], translation: &[Rational]) -> Self {
        let points = self
            .points
            .iter()
            .map(|p| {
                linear
                    .iter()
                    .zip(translation)
                    .map(|(row, t)| crate::linalg::dot(row, p) + t)
                    .collect()
            })
            .collect();
        PointConfiguration {
            dim: self.dim,
            points,
        }
    }
}

/// Lowest-terms `"p/q"`; integers keep the `/1`.
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `"p/q"` or `"p"`; the result is reduced.
pub fn parse_rational(s: &str) -> Result<Rational, PointsError> {
    let bad = || PointsError::BadRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_negative() || den < BigInt::one() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}
