//! Gale duality over the rationals.
//!
//! Points `x_1, ..., x_n` affinely spanning `Q^D` correspond to vectors
//! `y_1, ..., y_n` in `Q^{n-D-1}` that span and sum to zero: the rows of a
//! kernel basis of the homogenized coordinate matrix. For spheres on `d + 4`
//! vertices the vectors are planar, and the face structure of the polytope is
//! read off from the cyclic order of their directions.
//!
//! Unit vectors are never formed; a [`DiagramDirection`] (the primitive integer
//! vector on the same ray) stands in for the normalized Gale diagram point.

use std::cmp::Ordering;

use num::{BigInt, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::complex::NonFaceFamily;
use crate::face::Face;
use crate::linalg::{self, rat, Rational, RationalVector};
use crate::points::PointConfiguration;
use crate::recognizer::{CyclicOrdering, MaxOddCycle};

/// Halvings of the polygon tolerance before giving up.
const MAX_HALVINGS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaleError {
    #[error("points do not affinely span their ambient space")]
    NotAffinelySpanning,
    #[error("invalid Gale configuration: {0}")]
    InvalidConfiguration(String),
    #[error("input vector is zero")]
    ZeroInput,
    #[error("dependence is not in the span of the Gale vectors")]
    NotInSpan,
    #[error("expected a vector of length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polygon tolerance must lie in (0, {max})")]
    InvalidTolerance { max: Rational },
    #[error("rational polygon failed verification after {0} halvings")]
    ToleranceExhausted(usize),
}

/// Vectors `y_1, ..., y_n` in `Q^dim` that span and sum to zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaleConfiguration {
    dim: usize,
    vectors: Vec<RationalVector>,
}

impl GaleConfiguration {
    pub fn new(dim: usize, vectors: Vec<RationalVector>) -> Result<Self, GaleError> {
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(GaleError::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
        let sum = sum_vectors(&vectors, dim);
        if !linalg::is_zero_vector(&sum) {
            return Err(GaleError::InvalidConfiguration(
                "vectors do not sum to zero".into(),
            ));
        }
        if linalg::rank(&vectors, dim) != dim {
            return Err(GaleError::InvalidConfiguration(format!(
                "vectors do not span Q^{dim}"
            )));
        }
        Ok(GaleConfiguration { dim, vectors })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[RationalVector] {
        &self.vectors
    }

    /// `y_i` for the 1-based label `i`.
    pub fn vector(&self, label: usize) -> &RationalVector {
        &self.vectors[label - 1]
    }

    /// Vectors whose labels are not in `a`.
    pub fn complement_vectors(&self, a: Face) -> Vec<RationalVector> {
        self.vectors
            .iter()
            .enumerate()
            .filter(|(i, _)| !a.contains(i + 1))
            .map(|(_, v)| v.clone())
            .collect()
    }
}

fn sum_vectors(vectors: &[RationalVector], dim: usize) -> RationalVector {
    vectors
        .iter()
        .fold(vec![Rational::zero(); dim], |mut acc, v| {
            for (a, x) in acc.iter_mut().zip(v) {
                *a += x;
            }
            acc
        })
}

/// The open ray through a nonzero planar vector, as its primitive integer
/// point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiagramDirection {
    pub x: BigInt,
    pub y: BigInt,
}

impl DiagramDirection {
    /// `None` for the zero vector.
    pub fn of(v: &[Rational]) -> Option<DiagramDirection> {
        assert_eq!(v.len(), 2, "diagram directions are planar");
        if linalg::is_zero_vector(v) {
            return None;
        }
        let mut ints = linalg::primitive_integer(v).into_iter();
        Some(DiagramDirection {
            x: ints.next()?,
            y: ints.next()?,
        })
    }

    fn upper_half(&self) -> bool {
        self.y.is_positive() || (self.y.is_zero() && self.x.is_positive())
    }

    pub fn cross(&self, other: &DiagramDirection) -> BigInt {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn is_antipodal(&self, other: &DiagramDirection) -> bool {
        self.x == -&other.x && self.y == -&other.y
    }

    /// Counterclockwise angle from the positive x-axis, compared exactly.
    pub fn angle_cmp(&self, other: &DiagramDirection) -> Ordering {
        match (self.upper_half(), other.upper_half()) {
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => BigInt::zero().cmp(&self.cross(other)),
        }
    }
}

/// Origin in the relative interior of the convex hull of planar vectors.
pub fn relint_origin_test(vectors: &[RationalVector]) -> bool {
    if vectors.is_empty() {
        return false;
    }
    let mut dirs: Vec<DiagramDirection> = vectors
        .iter()
        .filter_map(|v| DiagramDirection::of(v))
        .collect();
    if dirs.is_empty() {
        return true;
    }
    dirs.sort_by(|a, b| a.angle_cmp(b));
    dirs.dedup();
    let first = dirs[0].clone();
    if dirs.iter().all(|d| first.cross(d).is_zero()) {
        // collinear: need both rays
        return dirs.iter().any(|d| d.is_antipodal(&first));
    }
    // positively spanning iff every angular gap is below a half-turn
    (0..dirs.len()).all(|i| dirs[i].cross(&dirs[(i + 1) % dirs.len()]).is_positive())
}

/// Symbolic Gale diagram: vertex `v` sits at polygon slot `slot[v - 1]` of
/// `2k + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CombinatorialDiagram {
    k: usize,
    slots: Vec<usize>,
}

impl CombinatorialDiagram {
    pub fn new(k: usize, slots: Vec<usize>) -> Result<Self, GaleError> {
        let n = 2 * k + 1;
        if k == 0 {
            return Err(GaleError::InvalidConfiguration("k must be positive".into()));
        }
        if slots.iter().any(|&s| s >= n) || (0..n).any(|j| !slots.contains(&j)) {
            return Err(GaleError::InvalidConfiguration(format!(
                "slots must cover exactly 0..{n}"
            )));
        }
        Ok(CombinatorialDiagram { k, slots })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn slot_count(&self) -> usize {
        2 * self.k + 1
    }

    pub fn vertex_count(&self) -> usize {
        self.slots.len()
    }

    pub fn slot(&self, v: usize) -> usize {
        self.slots[v - 1]
    }

    pub fn slots(&self) -> &[usize] {
        &self.slots
    }

    /// Vertices placed at slot `j`.
    pub fn slot_block(&self, j: usize) -> Face {
        Face::from_vertices(
            self.slots
                .iter()
                .enumerate()
                .filter(|&(_, &s)| s == j)
                .map(|(i, _)| i + 1),
        )
    }

    /// Slot multiplicities in slot order.
    pub fn multiplicities(&self) -> Vec<usize> {
        (0..self.slot_count())
            .map(|j| self.slot_block(j).len())
            .collect()
    }
}

/// Slot `j` carries `B_{-2j}`, reading the blocks in the order
/// `B_0, B_{-2}, ..., B_{-4k}`.
pub fn diagram_from_certificate(cert: &MaxOddCycle) -> CombinatorialDiagram {
    let n = cert.blocks.len();
    let m = cert
        .blocks
        .iter()
        .filter_map(|b| b.max_vertex())
        .max()
        .unwrap_or(0);
    let mut slots = vec![0; m];
    for j in 0..n {
        for v in cert.block(-2 * j as isize).iter() {
            slots[v - 1] = j;
        }
    }
    CombinatorialDiagram { k: cert.k(), slots }
}

/// `a` is a face iff the slots of the vertices outside `a` never fit inside
/// `k + 1` cyclically consecutive slots.
pub fn coface_test(diag: &CombinatorialDiagram, a: Face) -> bool {
    let n = diag.slot_count();
    let k = diag.k;
    let outside: u128 = diag
        .slots
        .iter()
        .enumerate()
        .filter(|&(i, _)| !a.contains(i + 1))
        .fold(0, |acc, (_, &s)| acc | (1u128 << s));
    (0..n).all(|start| {
        let arc = (0..=k).fold(0u128, |acc, t| acc | (1u128 << ((start + t) % n)));
        outside & !arc != 0
    })
}

/// `1 / (16 (2k + 1))` of a full turn.
pub fn default_tolerance(k: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(16 * (2 * k + 1)))
}

/// Rational points on the unit circle near the vertices of the regular
/// `(2k + 1)`-gon, `tol` measured as a fraction of a full turn.
///
/// Point `j` is `((1 - t^2) / (1 + t^2), 2t / (1 + t^2))` for a dyadic `t`
/// close to `tan(pi j / (2k + 1))`; floating point only picks `t`.
pub fn rational_polygon(k: usize, tol: &Rational) -> Result<Vec<RationalVector>, GaleError> {
    let n = 2 * k + 1;
    let max = Rational::new(BigInt::one(), BigInt::from(8 * n));
    if !tol.is_positive() || *tol >= max || k == 0 {
        return Err(GaleError::InvalidTolerance { max });
    }
    let tol_radians = tol.to_f64().unwrap_or(0.0) * std::f64::consts::TAU;
    (0..n)
        .map(|j| {
            let mut theta = std::f64::consts::TAU * j as f64 / n as f64;
            if theta > std::f64::consts::PI {
                theta -= std::f64::consts::TAU;
            }
            let target = (theta / 2.0).tan();
            (2..60)
                .find_map(|bits| {
                    let scale = (1i64 << bits) as f64;
                    let num = (target * scale).round();
                    let err = (2.0 * (num / scale).atan() - theta).abs();
                    (err < tol_radians / 2.0).then(|| {
                        let t = Rational::new(BigInt::from(num as i64), BigInt::from(1i64 << bits));
                        circle_point(&t)
                    })
                })
                .ok_or(GaleError::ToleranceExhausted(0))
        })
        .collect()
}

fn circle_point(t: &Rational) -> RationalVector {
    let one = Rational::one();
    let t2 = t * t;
    let denom = &one + &t2;
    vec![(&one - &t2) / &denom, rat(2) * t / &denom]
}

/// Sets `y_i = v_{slot(i)} / |block|`, then subtracts the mean so the vectors
/// sum to zero exactly. The result must read back in standard position with
/// the diagram's slot order; otherwise the polygon is refined.
pub fn realize_gale_vectors(
    diag: &CombinatorialDiagram,
    tol: &Rational,
) -> Result<GaleConfiguration, GaleError> {
    let mult = diag.multiplicities();
    let mut tol = tol.clone();
    for _ in 0..MAX_HALVINGS {
        let polygon = rational_polygon(diag.k, &tol)?;
        let raw: Vec<RationalVector> = diag
            .slots
            .iter()
            .map(|&j| {
                let scale = Rational::from_integer(BigInt::from(mult[j]));
                polygon[j].iter().map(|c| c / &scale).collect()
            })
            .collect();
        let vectors = mean_corrected(raw);
        if matches_diagram(&vectors, diag) {
            return GaleConfiguration::new(2, vectors);
        }
        tol /= rat(2);
    }
    Err(GaleError::ToleranceExhausted(MAX_HALVINGS))
}

/// `y_i - (sum_j y_j) / n`.
pub fn mean_corrected(vectors: Vec<RationalVector>) -> Vec<RationalVector> {
    let Some(dim) = vectors.first().map(Vec::len) else {
        return vectors;
    };
    let count = Rational::from_integer(BigInt::from(vectors.len()));
    let shift: RationalVector = sum_vectors(&vectors, dim)
        .into_iter()
        .map(|s| s / &count)
        .collect();
    vectors
        .into_iter()
        .map(|v| v.into_iter().zip(&shift).map(|(x, s)| x - s).collect())
        .collect()
}

fn matches_diagram(vectors: &[RationalVector], diag: &CombinatorialDiagram) -> bool {
    let Ok(classes) = standard_position(vectors) else {
        return false;
    };
    let n = diag.slot_count();
    let origin = diag.slot_block(0);
    let Some(start) = classes.iter().position(|&c| c == origin) else {
        return false;
    };
    classes.len() == n && (0..n).all(|j| classes[(start + j) % n] == diag.slot_block(j))
}

#[cfg(test)]
fn first_of(f: Face) -> usize {
    f.iter().next().expect("direction classes are nonempty")
}

/// Why a planar configuration is not in standard position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StandardPositionError {
    #[error("vector {0} is zero")]
    ZeroVector(usize),
    #[error("two direction classes are antipodal")]
    Antipodal,
    #[error("{0} direction classes; need an odd number at least 3")]
    ClassCount(usize),
    #[error("some line through a class splits the others unevenly")]
    Unbalanced,
}

/// Groups labels by direction class in counterclockwise order, requiring
/// `2k + 1` classes, no zero vectors, no antipodal pair, and exactly `k`
/// classes strictly on each side of the line through any class.
pub fn standard_position(vectors: &[RationalVector]) -> Result<Vec<Face>, StandardPositionError> {
    let mut dirs: Vec<(DiagramDirection, Face)> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let dir = DiagramDirection::of(v).ok_or(StandardPositionError::ZeroVector(i + 1))?;
        match dirs.iter_mut().find(|(d, _)| *d == dir) {
            Some((_, f)) => *f = f.with(i + 1),
            None => dirs.push((dir, Face::singleton(i + 1))),
        }
    }
    dirs.sort_by(|a, b| a.0.angle_cmp(&b.0));
    let n = dirs.len();
    if n < 3 || n.is_multiple_of(2) {
        return Err(StandardPositionError::ClassCount(n));
    }
    let k = (n - 1) / 2;
    for (a, _) in &dirs {
        let mut left = 0;
        let mut right = 0;
        for (b, _) in &dirs {
            if a.is_antipodal(b) {
                return Err(StandardPositionError::Antipodal);
            }
            match a.cross(b).sign() {
                num::bigint::Sign::Plus => left += 1,
                num::bigint::Sign::Minus => right += 1,
                num::bigint::Sign::NoSign => {}
            }
        }
        if left != k || right != k {
            return Err(StandardPositionError::Unbalanced);
        }
    }
    Ok(dirs.into_iter().map(|(_, f)| f).collect())
}

/// Reads a planar configuration in standard position back into its non-face
/// family and maximum-odd-cycle certificate.
///
/// The class containing vertex 1 becomes `B_0`, the next counterclockwise
/// class `B_{-2}`, and so on; members are `A_i = B_i ∪ B_{i-2} ∪ ... ∪
/// B_{i-2(k-1)}`. Returns `None` if the configuration is not planar, not in
/// standard position, or reads back to an invalid family.
pub fn recover_nonfaces(g: &GaleConfiguration) -> Option<(NonFaceFamily, MaxOddCycle)> {
    if g.dim() != 2 {
        return None;
    }
    let classes = standard_position(g.vectors()).ok()?;
    let n = classes.len();
    let k = (n - 1) / 2;
    let m = g.len();
    let start = classes.iter().position(|c| c.contains(1))?;
    let mut blocks = vec![Face::EMPTY; n];
    for j in 0..n {
        let idx = (-2 * j as isize).rem_euclid(n as isize) as usize;
        blocks[idx] = classes[(start + j) % n];
    }
    let ordering: Vec<Face> = (0..n)
        .map(|i| {
            (0..k).fold(Face::EMPTY, |acc, t| {
                acc.union(blocks[(i as isize - 2 * t as isize).rem_euclid(n as isize) as usize])
            })
        })
        .collect();
    let cert = MaxOddCycle::from_ordering(CyclicOrdering::new(ordering.clone()), m)
        .ok()?
        .canonical();
    let family = NonFaceFamily::new(m, ordering).ok()?;
    cert.validate_for(&family).ok()?;
    Some((family, cert))
}

/// Rows of a kernel basis of the homogenized `(D + 1) x n` matrix.
pub fn gale_transform(pc: &PointConfiguration) -> Result<GaleConfiguration, GaleError> {
    let n = pc.len();
    let d = pc.dim();
    if n < d + 1 {
        return Err(GaleError::NotAffinelySpanning);
    }
    let mut rows: Vec<RationalVector> = (0..d)
        .map(|c| pc.points().iter().map(|p| p[c].clone()).collect())
        .collect();
    rows.push(vec![Rational::one(); n]);
    if linalg::rank(&rows, n) != d + 1 {
        return Err(GaleError::NotAffinelySpanning);
    }
    let basis = linalg::kernel_basis(&rows, n);
    let e = basis.len();
    let vectors = (0..n)
        .map(|i| basis.iter().map(|b| b[i].clone()).collect())
        .collect();
    GaleConfiguration::new(e, vectors)
}

/// Points whose Gale transform spans the same column space as `g`.
///
/// The orthogonal complement of the columns of `g` contains the all-ones
/// vector; a basis of it starting with all-ones is built greedily and the
/// remaining `n - e - 1` vectors become the coordinate rows.
pub fn reconstruct_points(g: &GaleConfiguration) -> Result<PointConfiguration, GaleError> {
    let n = g.len();
    let e = g.dim();
    if n < e + 2 {
        return Err(GaleError::InvalidConfiguration(format!(
            "{n} vectors in Q^{e} leave no room for points"
        )));
    }
    let columns = linalg::transpose(g.vectors(), e);
    let complement = linalg::kernel_basis(&columns, n);
    let mut chosen = vec![vec![Rational::one(); n]];
    for v in complement {
        chosen.push(v);
        if linalg::rank(&chosen, n) < chosen.len() {
            chosen.pop();
        }
    }
    debug_assert_eq!(chosen.len(), n - e);
    let coords = &chosen[1..];
    let points = (0..n)
        .map(|i| coords.iter().map(|row| row[i].clone()).collect())
        .collect();
    PointConfiguration::new(n - e - 1, points)
        .map_err(|err| GaleError::InvalidConfiguration(err.to_string()))
}

/// `lambda_i = <alpha, y_i>`.
pub fn dependence_from_direction(
    g: &GaleConfiguration,
    alpha: &[Rational],
) -> Result<RationalVector, GaleError> {
    if alpha.len() != g.dim() {
        return Err(GaleError::DimensionMismatch {
            expected: g.dim(),
            found: alpha.len(),
        });
    }
    if linalg::is_zero_vector(alpha) {
        return Err(GaleError::ZeroInput);
    }
    Ok(g.vectors().iter().map(|y| linalg::dot(alpha, y)).collect())
}

/// Solves `<alpha, y_i> = lambda_i` for `alpha`.
pub fn direction_from_dependence(
    g: &GaleConfiguration,
    lambda: &[Rational],
) -> Result<RationalVector, GaleError> {
    if lambda.len() != g.len() {
        return Err(GaleError::DimensionMismatch {
            expected: g.len(),
            found: lambda.len(),
        });
    }
    if linalg::is_zero_vector(lambda) {
        return Err(GaleError::ZeroInput);
    }
    linalg::solve(g.vectors(), g.dim(), lambda).ok_or(GaleError::NotInSpan)
}
