//! Ground truth independent of the recognizer: brute-force exact convex
//! hulls, vertex extremality, mod-2 homology and pseudomanifold checks.

use std::collections::{BTreeSet, HashMap};

use num::{Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::complex::SimplicialComplex;
use crate::face::{subsets_of_size, Face, MAX_VERTICES};
use crate::linalg::{self, Rational, RationalVector};
use crate::points::PointConfiguration;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("points do not affinely span their ambient space")]
    NotFullDimensional,
    #[error("supporting hyperplane through {0} holds more points than the dimension")]
    NonSimplicial(Face),
    #[error("point {0} is not a vertex of the hull")]
    InteriorPoint(usize),
    #[error("at most {MAX_VERTICES} points are supported, got {0}")]
    TooManyPoints(usize),
}

fn homogenized(pc: &PointConfiguration, labels: Face) -> Vec<RationalVector> {
    labels
        .iter()
        .map(|l| {
            let mut row = pc.point(l).clone();
            row.push(Rational::from_integer(1.into()));
            row
        })
        .collect()
}

fn check_spanning(pc: &PointConfiguration) -> Result<(), OracleError> {
    let n = pc.len();
    if n > MAX_VERTICES {
        return Err(OracleError::TooManyPoints(n));
    }
    if linalg::rank(&homogenized(pc, Face::full(n)), pc.dim() + 1) != pc.dim() + 1 {
        return Err(OracleError::NotFullDimensional);
    }
    Ok(())
}

enum Candidate {
    Facet(Face),
    Overfull(Face),
    None,
}

/// Tests the hyperplane through the `dim` points of `subset`.
fn classify_subset(pc: &PointConfiguration, subset: Face) -> Candidate {
    let dim = pc.dim();
    let rows = homogenized(pc, subset);
    let normals = linalg::kernel_basis(&rows, dim + 1);
    if normals.len() != 1 {
        // not affinely independent
        return Candidate::None;
    }
    let normal = &normals[0];
    let mut on = subset;
    let (mut pos, mut neg) = (false, false);
    for l in 1..=pc.len() {
        if subset.contains(l) {
            continue;
        }
        let mut h = pc.point(l).clone();
        h.push(Rational::from_integer(1.into()));
        let s = linalg::dot(normal, &h);
        if s.is_zero() {
            on = on.with(l);
        } else if s.is_positive() {
            pos = true;
        } else {
            neg = true;
        }
        if pos && neg {
            return Candidate::None;
        }
    }
    if on != subset {
        Candidate::Overfull(on)
    } else {
        Candidate::Facet(subset)
    }
}

/// Facets of the convex hull, found by testing every `D`-subset.
///
/// Fails with [`OracleError::NonSimplicial`] as soon as a supporting
/// hyperplane carries more than `D` points.
pub fn hull_facets(pc: &PointConfiguration) -> Result<Vec<Face>, OracleError> {
    check_spanning(pc)?;
    let candidates: Vec<Face> = subsets_of_size(pc.len(), pc.dim()).collect();
    let results: Vec<Candidate> = candidates
        .par_iter()
        .map(|&s| classify_subset(pc, s))
        .collect();
    let mut facets = Vec::new();
    for r in results {
        match r {
            Candidate::Facet(f) => facets.push(f),
            Candidate::Overfull(on) => return Err(OracleError::NonSimplicial(on)),
            Candidate::None => {}
        }
    }
    facets.sort();
    Ok(facets)
}

/// Whether point `label` lies outside the convex hull of the others.
///
/// By Carathéodory, a point inside the hull is a convex combination of some
/// affinely independent subset of the others; every such subset is tried
/// with an exact barycentric solve.
pub fn is_vertex(pc: &PointConfiguration, label: usize) -> bool {
    let n = pc.len();
    let dim = pc.dim();
    let others = Face::full(n).without(label);
    let mut target = pc.point(label).clone();
    target.push(Rational::from_integer(1.into()));
    for size in 1..=(dim + 1).min(n - 1) {
        for subset in subsets_of_size(n, size) {
            if !subset.is_subset(others) {
                continue;
            }
            let cols = homogenized(pc, subset);
            if linalg::rank(&cols, dim + 1) != size {
                continue;
            }
            let system = linalg::transpose(&cols, dim + 1);
            if let Some(weights) = linalg::solve(&system, size, &target) {
                if weights.iter().all(|w| !w.is_negative()) {
                    return false;
                }
            }
        }
    }
    true
}

/// The boundary complex of a simplicial hull whose points are all vertices.
pub fn boundary_complex(pc: &PointConfiguration) -> Result<SimplicialComplex, OracleError> {
    let facets = hull_facets(pc)?;
    if let Some(l) = (1..=pc.len()).find(|&l| !is_vertex(pc, l)) {
        return Err(OracleError::InteriorPoint(l));
    }
    SimplicialComplex::new(pc.len(), facets).map_err(|_| OracleError::NotFullDimensional)
}

/// Reduced Betti numbers over GF(2), indexed from dimension -1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BettiProfile(pub Vec<usize>);

impl BettiProfile {
    /// `(0, ..., 0, 1)` of length `d + 2`.
    pub fn sphere(d: usize) -> BettiProfile {
        let mut v = vec![0; d + 2];
        v[d + 1] = 1;
        BettiProfile(v)
    }

    pub fn get(&self, dim: isize) -> usize {
        usize::try_from(dim + 1)
            .ok()
            .and_then(|i| self.0.get(i).copied())
            .unwrap_or(0)
    }
}

/// Rank over GF(2) of rows given as bit vectors.
fn gf2_rank(mut rows: Vec<Vec<u64>>) -> usize {
    let width = rows.first().map_or(0, Vec::len) * 64;
    let mut rank = 0;
    for col in 0..width {
        let (w, b) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & b != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] & b != 0 {
                row.iter_mut().zip(&pivot).for_each(|(x, y)| *x ^= y);
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of the boundary map from faces of size `s` to faces of size `s - 1`.
fn boundary_rank(upper: &[Face], lower: &[Face]) -> usize {
    if upper.is_empty() || lower.is_empty() {
        return 0;
    }
    let index: HashMap<Face, usize> = lower.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let words = lower.len().div_ceil(64);
    let rows = upper
        .iter()
        .map(|f| {
            let mut row = vec![0u64; words];
            for v in f.iter() {
                let i = index[&f.without(v)];
                row[i / 64] |= 1 << (i % 64);
            }
            row
        })
        .collect();
    gf2_rank(rows)
}

/// Reduced mod-2 Betti numbers from the ranks of the boundary maps.
pub fn betti_mod2(c: &SimplicialComplex) -> BettiProfile {
    let layers = c.faces_by_size();
    let ranks: Vec<usize> = (0..layers.len())
        .map(|s| {
            if s == 0 {
                0
            } else {
                boundary_rank(&layers[s], &layers[s - 1])
            }
        })
        .collect();
    BettiProfile(
        (0..layers.len())
            .map(|s| {
                let next = ranks.get(s + 1).copied().unwrap_or(0);
                layers[s].len() - ranks[s] - next
            })
            .collect(),
    )
}

/// Pure, every ridge in exactly two facets, facet graph connected.
pub fn is_pseudomanifold(c: &SimplicialComplex) -> bool {
    if !c.is_pure() {
        return false;
    }
    let facets = c.facets();
    let mut ridges: HashMap<Face, Vec<usize>> = HashMap::new();
    for (i, f) in facets.iter().enumerate() {
        for v in f.iter() {
            ridges.entry(f.without(v)).or_default().push(i);
        }
    }
    if ridges.values().any(|owners| owners.len() != 2) {
        return false;
    }
    let mut seen = vec![false; facets.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for v in facets[i].iter() {
            for &j in &ridges[&facets[i].without(v)] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// A single cycle through every vertex.
fn is_hamiltonian_circle(m: usize, edges: &[Face]) -> bool {
    if m < 3 || edges.len() != m || edges.iter().any(|e| e.len() != 2) {
        return false;
    }
    let degree_two = (1..=m).all(|v| edges.iter().filter(|e| e.contains(v)).count() == 2);
    if !degree_two {
        return false;
    }
    let mut visited = Face::singleton(1);
    let mut frontier = vec![1];
    while let Some(v) = frontier.pop() {
        for e in edges.iter().filter(|e| e.contains(v)) {
            let w = e.without(v).iter().next().expect("edges have two ends");
            if !visited.contains(w) {
                visited = visited.with(w);
                frontier.push(w);
            }
        }
    }
    visited == Face::full(m)
}

/// Definitive sphere test where one is available at desk scale.
///
/// Dimensions 0 to 2 are classified directly. Otherwise failure of the
/// mod-2 homology or pseudomanifold conditions answers `false`, and a
/// `witness` whose boundary complex equals `c` answers `true`; anything else
/// is undetermined.
pub fn ground_truth_sphere(
    c: &SimplicialComplex,
    witness: Option<&PointConfiguration>,
) -> Option<bool> {
    let m = c.vertex_count();
    let d = c.dimension();
    match d {
        0 => return Some(m == 2),
        1 => return Some(is_hamiltonian_circle(m, c.facets())),
        2 => {
            let links_are_circles = (1..=m).all(|v| {
                let link = c.link_facets(v);
                let support: BTreeSet<usize> = link.iter().flat_map(|f| f.iter()).collect();
                let relabel: HashMap<usize, usize> = support
                    .iter()
                    .enumerate()
                    .map(|(i, &u)| (u, i + 1))
                    .collect();
                let edges: Vec<Face> = link
                    .iter()
                    .map(|f| Face::from_vertices(f.iter().map(|u| relabel[&u])))
                    .collect();
                is_hamiltonian_circle(support.len(), &edges)
            });
            return Some(
                is_pseudomanifold(c) && c.euler_characteristic() == 2 && links_are_circles,
            );
        }
        _ => {}
    }
    let d = d as usize;
    if !is_pseudomanifold(c) || betti_mod2(c) != BettiProfile::sphere(d) {
        return Some(false);
    }
    match witness.map(boundary_complex) {
        Some(Ok(b)) if b == *c => Some(true),
        _ => None,
    }
}
