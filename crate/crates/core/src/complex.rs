//! Simplicial complexes given by their facets, families of minimal non-faces,
//! and the two conversions between them.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::face::{subsets_of_size, Face, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("vertex count {0} must lie in [1, {MAX_VERTICES}]")]
    VertexCountOutOfRange(usize),
    #[error("vertex {vertex} lies outside [1, {m}]")]
    VertexOutOfRange { vertex: usize, m: usize },
    #[error("face {0:?} is not strictly increasing")]
    UnsortedFace(Vec<usize>),
    #[error("{0} is contained in {1}; sets must form an antichain")]
    NotAntichain(Face, Face),
    #[error("vertex {0} is not covered by any facet")]
    UncoveredVertex(usize),
    #[error("non-face {0} has fewer than two vertices")]
    NonFaceTooSmall(Face),
}

/// Parses a strictly increasing vertex list into a face inside `[1, m]`.
pub fn face_from_sorted(vertices: &[usize], m: usize) -> Result<Face, ComplexError> {
    if vertices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ComplexError::UnsortedFace(vertices.to_vec()));
    }
    if let Some(&v) = vertices.iter().find(|&&v| v == 0 || v > m) {
        return Err(ComplexError::VertexOutOfRange { vertex: v, m });
    }
    Ok(Face::from_vertices(vertices.iter().copied()))
}

fn check_vertex_count(m: usize) -> Result<(), ComplexError> {
    if m == 0 || m > MAX_VERTICES {
        Err(ComplexError::VertexCountOutOfRange(m))
    } else {
        Ok(())
    }
}

fn check_range(faces: &[Face], m: usize) -> Result<(), ComplexError> {
    let full = Face::full(m);
    for f in faces {
        if !f.is_subset(full) {
            let vertex = f.difference(full).iter().next().unwrap_or(0);
            return Err(ComplexError::VertexOutOfRange { vertex, m });
        }
    }
    Ok(())
}

/// `faces` must be sorted; returns the first comparable pair.
fn find_comparable(faces: &[Face]) -> Option<(Face, Face)> {
    for (i, &a) in faces.iter().enumerate() {
        for &b in &faces[i + 1..] {
            if a.is_subset(b) {
                return Some((a, b));
            }
            if b.is_subset(a) {
                return Some((b, a));
            }
        }
    }
    None
}

/// Sorts lexicographically; a duplicate is reported as a comparable pair.
fn sorted_antichain(mut faces: Vec<Face>) -> Result<Vec<Face>, ComplexError> {
    faces.sort();
    if let Some((a, b)) = find_comparable(&faces) {
        return Err(ComplexError::NotAntichain(a, b));
    }
    Ok(faces)
}

/// A simplicial complex on `[1, m]` stored as its antichain of facets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    m: usize,
    facets: Vec<Face>,
}

impl SimplicialComplex {
    pub fn new(m: usize, facets: Vec<Face>) -> Result<Self, ComplexError> {
        check_vertex_count(m)?;
        check_range(&facets, m)?;
        let facets = sorted_antichain(facets)?;
        let covered = facets.iter().fold(Face::EMPTY, |acc, &f| acc.union(f));
        if let Some(v) = Face::full(m).difference(covered).iter().next() {
            return Err(ComplexError::UncoveredVertex(v));
        }
        Ok(SimplicialComplex { m, facets })
    }

    /// Skips validation; callers guarantee the invariants.
    pub(crate) fn from_facets_unchecked(m: usize, mut facets: Vec<Face>) -> Self {
        facets.sort();
        debug_assert!(find_comparable(&facets).is_none());
        SimplicialComplex { m, facets }
    }

    /// Builds a complex from vertex lists, checking every invariant.
    pub fn from_lists(m: usize, facets: &[Vec<usize>]) -> Result<Self, ComplexError> {
        check_vertex_count(m)?;
        let faces = facets
            .iter()
            .map(|f| face_from_sorted(f, m))
            .collect::<Result<Vec<_>, _>>()?;
        SimplicialComplex::new(m, faces)
    }

    /// The boundary of the simplex on `[1, m]`.
    pub fn simplex_boundary(m: usize) -> Self {
        let full = Face::full(m);
        SimplicialComplex::from_facets_unchecked(m, full.iter().map(|v| full.without(v)).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.m
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    /// `max facet size - 1`.
    pub fn dimension(&self) -> isize {
        self.facets.iter().map(|f| f.len()).max().unwrap_or(0) as isize - 1
    }

    pub fn is_pure(&self) -> bool {
        let d = self.facets.first().map(|f| f.len());
        self.facets.iter().all(|f| Some(f.len()) == d)
    }

    pub fn is_face(&self, a: Face) -> bool {
        self.facets.iter().any(|&f| a.is_subset(f))
    }

    /// Every face, including the empty one, in no particular order.
    pub fn faces(&self) -> BTreeSet<Face> {
        self.facets.iter().flat_map(|f| f.subsets()).collect()
    }

    /// Faces grouped by cardinality: entry `s` holds the faces with `s`
    /// vertices, sorted.
    pub fn faces_by_size(&self) -> Vec<Vec<Face>> {
        let top = (self.dimension() + 1) as usize;
        let mut out = vec![Vec::new(); top + 1];
        for f in self.faces() {
            out[f.len()].push(f);
        }
        for layer in &mut out {
            layer.sort();
        }
        out
    }

    pub fn f_vector(&self) -> FVector {
        FVector(
            self.faces_by_size()
                .iter()
                .map(|l| l.len() as u64)
                .collect(),
        )
    }

    /// `sum_{i >= 0} (-1)^i f_i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler_characteristic()
    }

    /// Applies `perm[v - 1] = image of v`, which must be a permutation of `[1, m]`.
    pub fn relabel(&self, perm: &[usize]) -> SimplicialComplex {
        assert_eq!(perm.len(), self.m);
        SimplicialComplex::from_facets_unchecked(
            self.m,
            self.facets.iter().map(|f| f.map(perm)).collect(),
        )
    }

    /// Facets containing vertex `v`.
    pub fn star_facets(&self, v: usize) -> impl Iterator<Item = Face> + '_ {
        self.facets.iter().copied().filter(move |f| f.contains(v))
    }

    /// The link of `v`, as facets with `v` removed, on the same vertex range.
    pub fn link_facets(&self, v: usize) -> Vec<Face> {
        let mut out: Vec<Face> = self.star_facets(v).map(|f| f.without(v)).collect();
        out.sort();
        out
    }

    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|f| f.to_vec()).collect()
    }
}

/// The minimal non-faces of a complex on `[1, m]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NonFaceFamily {
    m: usize,
    members: Vec<Face>,
}

impl NonFaceFamily {
    pub fn new(m: usize, members: Vec<Face>) -> Result<Self, ComplexError> {
        check_vertex_count(m)?;
        check_range(&members, m)?;
        if let Some(&f) = members.iter().find(|f| f.len() < 2) {
            return Err(ComplexError::NonFaceTooSmall(f));
        }
        let members = sorted_antichain(members)?;
        Ok(NonFaceFamily { m, members })
    }

    pub(crate) fn from_members_unchecked(m: usize, mut members: Vec<Face>) -> Self {
        members.sort();
        debug_assert!(find_comparable(&members).is_none());
        debug_assert!(members.iter().all(|f| f.len() >= 2));
        NonFaceFamily { m, members }
    }

    pub fn from_lists(m: usize, members: &[Vec<usize>]) -> Result<Self, ComplexError> {
        check_vertex_count(m)?;
        let faces = members
            .iter()
            .map(|f| face_from_sorted(f, m))
            .collect::<Result<Vec<_>, _>>()?;
        NonFaceFamily::new(m, faces)
    }

    pub fn vertex_count(&self) -> usize {
        self.m
    }

    /// Members in lexicographic order.
    pub fn members(&self) -> &[Face] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn relabel(&self, perm: &[usize]) -> NonFaceFamily {
        assert_eq!(perm.len(), self.m);
        NonFaceFamily::from_members_unchecked(
            self.m,
            self.members.iter().map(|f| f.map(perm)).collect(),
        )
    }

    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.members.iter().map(|f| f.to_vec()).collect()
    }
}

/// Face counts `f_{-1}, f_0, ..., f_d`; entry 0 is the empty face.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    /// `f_i` for `i >= -1`.
    pub fn get(&self, dim: isize) -> u64 {
        usize::try_from(dim + 1)
            .ok()
            .and_then(|i| self.0.get(i).copied())
            .unwrap_or(0)
    }

    /// The counts without the leading empty-face entry.
    pub fn proper(&self) -> &[u64] {
        &self.0[1..]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.proper()
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }
}

/// The inclusion-minimal subsets of `[1, m]` that are not faces of `c`.
///
/// Candidates are scanned by increasing size up to `d + 2`; any larger set
/// already has a non-face proper subset.
pub fn minimal_nonfaces(c: &SimplicialComplex) -> NonFaceFamily {
    let m = c.vertex_count();
    let bound = ((c.dimension() + 2) as usize).min(m);
    let mut found: Vec<Face> = Vec::new();
    for size in 2..=bound {
        let layer: Vec<Face> = subsets_of_size(m, size)
            .filter(|&s| !found.iter().any(|&a| a.is_subset(s)) && !c.is_face(s))
            .collect();
        found.extend(layer);
    }
    NonFaceFamily::from_members_unchecked(m, found)
}

/// `Σ(F)`: facets are the complements of the minimal hitting sets of `F`.
pub fn complex_from_nonfaces(f: &NonFaceFamily) -> SimplicialComplex {
    let m = f.vertex_count();
    let transversals = minimal_transversals(f.members());
    SimplicialComplex::from_facets_unchecked(
        m,
        transversals.into_iter().map(|t| t.complement(m)).collect(),
    )
}

/// Inclusion-minimal sets meeting every member, by branching on the first
/// member the partial set misses.
fn minimal_transversals(members: &[Face]) -> Vec<Face> {
    fn extend(members: &[Face], current: Face, out: &mut Vec<Face>) {
        if out.iter().any(|&t| t.is_subset(current)) {
            return;
        }
        match members.iter().find(|a| a.is_disjoint(current)) {
            None => {
                out.retain(|&t| !current.is_subset(t));
                out.push(current);
            }
            Some(&missed) => {
                for v in missed.iter() {
                    extend(members, current.with(v), out);
                }
            }
        }
    }
    let mut out = Vec::new();
    extend(members, Face::EMPTY, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn faces(lists: &[&[usize]]) -> Vec<Face> {
        lists
            .iter()
            .map(|l| Face::from_vertices(l.iter().copied()))
            .collect()
    }

    fn octahedron() -> SimplicialComplex {
        SimplicialComplex::new(
            6,
            faces(&[
                &[1, 3, 5],
                &[1, 3, 6],
                &[1, 4, 5],
                &[1, 4, 6],
                &[2, 3, 5],
                &[2, 3, 6],
                &[2, 4, 5],
                &[2, 4, 6],
            ]),
        )
        .unwrap()
    }

    fn five_cycle() -> SimplicialComplex {
        SimplicialComplex::new(5, faces(&[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[1, 5]])).unwrap()
    }

    /// Every subset of `[m]` that is a non-face but all of whose
    /// one-smaller subsets are faces.
    fn brute_minimal_nonfaces(c: &SimplicialComplex) -> Vec<Face> {
        let m = c.vertex_count();
        let mut out: Vec<Face> = Face::full(m)
            .subsets()
            .filter(|&s| !c.is_face(s) && s.iter().all(|v| c.is_face(s.without(v))))
            .collect();
        out.sort();
        out
    }

    /// Maximal subsets of `[m]` containing no member.
    fn brute_sigma(f: &NonFaceFamily) -> Vec<Face> {
        let m = f.vertex_count();
        let faces: Vec<Face> = Face::full(m)
            .subsets()
            .filter(|&s| !f.members().iter().any(|a| a.is_subset(s)))
            .collect();
        let mut max: Vec<Face> = faces
            .iter()
            .copied()
            .filter(|&s| !faces.iter().any(|&t| s.is_proper_subset(t)))
            .collect();
        max.sort();
        max
    }

    #[test]
    fn pentagon_nonfaces() {
        let f = minimal_nonfaces(&five_cycle());
        assert_eq!(
            f.members(),
            &faces(&[&[1, 3], &[1, 4], &[2, 4], &[2, 5], &[3, 5]])[..]
        );
        assert_eq!(f.members(), &brute_minimal_nonfaces(&five_cycle())[..]);
    }

    #[test]
    fn simplex_boundary_nonfaces() {
        let c = SimplicialComplex::simplex_boundary(4);
        assert_eq!(c.dimension(), 2);
        assert_eq!(minimal_nonfaces(&c).members(), &[Face::full(4)]);
    }

    #[test]
    fn octahedron_nonfaces_match_brute_force() {
        let f = minimal_nonfaces(&octahedron());
        let expected = faces(&[&[1, 2], &[3, 4], &[5, 6]]);
        assert_eq!(brute_minimal_nonfaces(&octahedron()), expected);
        assert_eq!(f.members(), &expected[..]);
    }

    #[test]
    fn sigma_examples() {
        let oct = NonFaceFamily::new(6, faces(&[&[1, 2], &[3, 4], &[5, 6]])).unwrap();
        assert_eq!(complex_from_nonfaces(&oct), octahedron());
        assert_eq!(complex_from_nonfaces(&oct).facets(), &brute_sigma(&oct)[..]);

        let tet = NonFaceFamily::new(4, vec![Face::full(4)]).unwrap();
        assert_eq!(
            complex_from_nonfaces(&tet),
            SimplicialComplex::simplex_boundary(4)
        );

        let pent =
            NonFaceFamily::new(5, faces(&[&[1, 4], &[2, 5], &[1, 3], &[2, 4], &[3, 5]])).unwrap();
        assert_eq!(complex_from_nonfaces(&pent), five_cycle());
    }

    #[test]
    fn empty_family_gives_full_simplex() {
        let f = NonFaceFamily::new(3, vec![]).unwrap();
        let c = complex_from_nonfaces(&f);
        assert_eq!(c.facets(), &[Face::full(3)]);
        assert!(minimal_nonfaces(&c).is_empty());
    }

    #[test]
    fn is_face_cases() {
        let oct = octahedron();
        assert!(oct.is_face(Face::from_vertices([1, 3])));
        assert!(!oct.is_face(Face::from_vertices([1, 2])));
        assert!(oct.is_face(Face::EMPTY));
    }

    #[test]
    fn f_vectors_and_euler() {
        assert_eq!(octahedron().f_vector().0, vec![1, 6, 12, 8]);
        assert_eq!(octahedron().euler_characteristic(), 2);
        assert_eq!(five_cycle().f_vector().0, vec![1, 5, 5]);
        assert_eq!(five_cycle().euler_characteristic(), 0);
        assert_eq!(
            SimplicialComplex::simplex_boundary(4).euler_characteristic(),
            2
        );
        assert_eq!(octahedron().f_vector().get(-1), 1);
        assert_eq!(octahedron().f_vector().get(2), 8);
        assert_eq!(octahedron().f_vector().get(3), 0);
    }

    #[test]
    fn constructor_rejections() {
        assert_eq!(
            NonFaceFamily::new(4, faces(&[&[1]])),
            Err(ComplexError::NonFaceTooSmall(Face::singleton(1)))
        );
        assert!(matches!(
            NonFaceFamily::new(4, faces(&[&[1, 2], &[1, 2, 3]])),
            Err(ComplexError::NotAntichain(..))
        ));
        assert!(matches!(
            NonFaceFamily::new(4, faces(&[&[1, 2], &[1, 2]])),
            Err(ComplexError::NotAntichain(..))
        ));
        assert_eq!(
            SimplicialComplex::new(4, faces(&[&[1, 2], &[2, 3]])),
            Err(ComplexError::UncoveredVertex(4))
        );
        assert_eq!(
            SimplicialComplex::new(3, faces(&[&[1, 5]])),
            Err(ComplexError::VertexOutOfRange { vertex: 5, m: 3 })
        );
        assert_eq!(
            SimplicialComplex::from_lists(3, &[vec![2, 1, 3]]),
            Err(ComplexError::UnsortedFace(vec![2, 1, 3]))
        );
        assert_eq!(
            SimplicialComplex::new(65, vec![]),
            Err(ComplexError::VertexCountOutOfRange(65))
        );
    }

    #[test]
    fn join_of_three_simplex_boundaries() {
        let blocks = faces(&[&[1, 2, 3], &[4, 5], &[6, 7]]);
        let f = NonFaceFamily::new(7, blocks.clone()).unwrap();
        let c = complex_from_nonfaces(&f);
        for s in Face::full(7).subsets() {
            let omits_each = blocks.iter().all(|b| !b.is_subset(s));
            assert_eq!(c.is_face(s), omits_each, "{s}");
        }
    }
}
