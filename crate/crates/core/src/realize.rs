//! From a sphere certificate to exact rational points whose convex hull has
//! the certified complex as its boundary.

use num::{BigInt, Zero};
use thiserror::Error;

use crate::complex::{complex_from_nonfaces, NonFaceFamily, SimplicialComplex};
use crate::gale::{
    default_tolerance, diagram_from_certificate, realize_gale_vectors, reconstruct_points,
    CombinatorialDiagram, GaleConfiguration, GaleError,
};
use crate::linalg::Rational;
use crate::oracle::{boundary_complex, OracleError};
use crate::points::PointConfiguration;
use crate::recognizer::{
    find_max_odd_cycle, recognize_nonfaces, MaxOddCycle, RecognizeError, SphereCertificate, Verdict,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("the non-face family is not a maximum odd cycle")]
    NotMaxOddCycle,
    #[error("the non-face family does not describe a sphere")]
    NotSphere,
    #[error(transparent)]
    Gale(#[from] GaleError),
    #[error(transparent)]
    Recognize(#[from] RecognizeError),
    #[error("hull check failed: {0}")]
    Hull(#[from] OracleError),
    #[error("hull boundary differs from the certified complex")]
    BoundaryMismatch,
}

/// Gale vectors and the points they determine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    /// Present for maximum odd cycles.
    pub diagram: Option<CombinatorialDiagram>,
    pub gale: GaleConfiguration,
    pub points: PointConfiguration,
}

/// Planar Gale vectors on a rational polygon, then points in `Q^{m-3}`.
pub fn realize_max_odd_cycle(cert: &MaxOddCycle) -> Result<Realization, RealizeError> {
    let diagram = diagram_from_certificate(cert);
    let gale = realize_gale_vectors(&diagram, &default_tolerance(diagram.k()))?;
    let points = reconstruct_points(&gale)?;
    Ok(Realization {
        diagram: Some(diagram),
        gale,
        points,
    })
}

/// Realizes any certificate on `[1, m]`. The simplex boundary uses the empty
/// Gale configuration and a two-block partition uses `+1/|A_0|` and
/// `-1/|A_1|` on the line.
pub fn realize_certificate(
    cert: &SphereCertificate,
    m: usize,
) -> Result<Realization, RealizeError> {
    let gale = match cert {
        SphereCertificate::MaxOddCycle(c) => return realize_max_odd_cycle(c),
        SphereCertificate::SimplexBoundary { .. } => GaleConfiguration::new(0, vec![vec![]; m])?,
        SphereCertificate::TwoPartition(a, b) => {
            let weight =
                |len: usize, sign: i64| vec![Rational::new(BigInt::from(sign), BigInt::from(len))];
            let vectors = (1..=m)
                .map(|v| {
                    if a.contains(v) {
                        weight(a.len(), 1)
                    } else {
                        weight(b.len(), -1)
                    }
                })
                .collect();
            GaleConfiguration::new(1, vectors)?
        }
    };
    let points = reconstruct_points(&gale)?;
    Ok(Realization {
        diagram: None,
        gale,
        points,
    })
}

/// Realizes a maximum-odd-cycle family.
pub fn realize_nonfaces(f: &NonFaceFamily) -> Result<Realization, RealizeError> {
    let cert = find_max_odd_cycle(f).ok_or(RealizeError::NotMaxOddCycle)?;
    realize_max_odd_cycle(&cert)
}

/// Recognizes `f` and realizes whatever sphere certificate comes back.
pub fn realize_sphere(f: &NonFaceFamily) -> Result<Realization, RealizeError> {
    match recognize_nonfaces(f)? {
        Verdict::Sphere { certificate, .. } => realize_certificate(&certificate, f.vertex_count()),
        _ => Err(RealizeError::NotSphere),
    }
}

/// Checks that the hull of `points` has boundary exactly `c`.
pub fn verify_realization(
    c: &SimplicialComplex,
    points: &PointConfiguration,
) -> Result<(), RealizeError> {
    let boundary = boundary_complex(points)?;
    if boundary == *c {
        Ok(())
    } else {
        Err(RealizeError::BoundaryMismatch)
    }
}

/// Full hull verification for a family, returning the complex it checked.
pub fn realize_and_verify(
    f: &NonFaceFamily,
) -> Result<(Realization, SimplicialComplex), RealizeError> {
    let realization = realize_sphere(f)?;
    let c = complex_from_nonfaces(f);
    verify_realization(&c, &realization.points)?;
    Ok((realization, c))
}

/// Whether the sum of all Gale vectors is exactly zero.
pub fn is_balanced(g: &GaleConfiguration) -> bool {
    (0..g.dim()).all(|c| {
        g.vectors()
            .iter()
            .fold(Rational::zero(), |acc, v| acc + &v[c])
            .is_zero()
    })
}
