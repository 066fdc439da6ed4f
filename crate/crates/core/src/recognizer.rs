//! Sphere recognition on at most `d + 4` vertices from the family of minimal
//! non-faces, with checkable certificates.
//!
//! On `d + 2` vertices the only sphere is the simplex boundary, on `d + 3`
//! vertices the minimal non-faces must split the vertex set into two blocks of
//! size at least two, and on `d + 4` vertices they must form a maximum odd
//! cycle: an odd cyclic ordering `A_0, ..., A_{n-1}` with successive members
//! disjoint whose alternating intersections `B_i` partition the vertex set.

use std::fmt;

use thiserror::Error;

use crate::complex::{minimal_nonfaces, NonFaceFamily, SimplicialComplex};
use crate::face::Face;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("cyclic ordering has even length {0}")]
    EvenLength(usize),
    #[error("cyclic ordering has length {0} < 3")]
    TooShort(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecognizeError {
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

/// Why a certificate fails to validate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error("members {0} and {1} are successive but not disjoint")]
    SuccessiveOverlap(Face, Face),
    #[error("stored blocks differ from the alternating intersections")]
    BlockMismatch,
    #[error("blocks do not partition the vertex set")]
    NotPartition,
    #[error("a block of a 3-cycle has fewer than two vertices")]
    SmallTriangleBlock,
    #[error("certificate does not match the non-face family")]
    FamilyMismatch,
}

/// A cyclic sequence of faces, indices read modulo its length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicOrdering(Vec<Face>);

impl CyclicOrdering {
    pub fn new(members: Vec<Face>) -> Self {
        CyclicOrdering(members)
    }

    pub fn members(&self) -> &[Face] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `A_i` with `i` taken modulo the length.
    pub fn get(&self, i: isize) -> Face {
        let n = self.0.len() as isize;
        self.0[i.rem_euclid(n) as usize]
    }

    /// `A'_i = A_{i + s}`.
    pub fn rotate(&self, s: usize) -> CyclicOrdering {
        let n = self.0.len();
        CyclicOrdering((0..n).map(|i| self.0[(i + s) % n]).collect())
    }

    /// `A'_i = A_{-i}`.
    pub fn reverse(&self) -> CyclicOrdering {
        let n = self.0.len();
        CyclicOrdering((0..n).map(|i| self.0[(n - i) % n]).collect())
    }

    pub fn successive_disjoint(&self) -> bool {
        let n = self.0.len();
        (0..n).all(|i| self.0[i].is_disjoint(self.0[(i + 1) % n]))
    }

    /// Lexicographically smallest member of the dihedral orbit. This puts
    /// the smallest face at position 0 and orders `A_1 < A_{n-1}`.
    pub fn canonical(&self) -> CyclicOrdering {
        let n = self.0.len();
        let rev = self.reverse();
        (0..n)
            .flat_map(|s| [self.rotate(s), rev.rotate(s)])
            .min_by(|a, b| a.0.cmp(&b.0))
            .unwrap_or_else(|| self.clone())
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }
}

impl fmt::Display for CyclicOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" — ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// `B_i = A_i ∩ A_{i+2} ∩ ... ∩ A_{i+n-3}` for each `i`; `B_i = A_i` when `n = 3`.
pub fn alternating_blocks(o: &CyclicOrdering) -> Result<Vec<Face>, CycleError> {
    let n = o.len();
    if n.is_multiple_of(2) {
        return Err(CycleError::EvenLength(n));
    }
    if n < 3 {
        return Err(CycleError::TooShort(n));
    }
    let k = (n - 1) / 2;
    Ok((0..n)
        .map(|i| {
            (0..k)
                .map(|t| o.members()[(i + 2 * t) % n])
                .fold(Face::full(64), Face::intersection)
        })
        .collect())
}

/// Whether nonempty, pairwise disjoint `blocks` cover exactly `[1, m]`.
pub fn is_partition(blocks: &[Face], m: usize) -> bool {
    let mut seen = Face::EMPTY;
    for &b in blocks {
        if b.is_empty() || !b.is_disjoint(seen) {
            return false;
        }
        seen = seen.union(b);
    }
    seen == Face::full(m)
}

/// A maximum odd cycle: the ordering and its alternating blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MaxOddCycle {
    pub ordering: CyclicOrdering,
    pub blocks: Vec<Face>,
}

impl MaxOddCycle {
    /// Computes the blocks of `ordering` and validates the result on `[1, m]`.
    pub fn from_ordering(ordering: CyclicOrdering, m: usize) -> Result<Self, CertificateError> {
        let blocks = alternating_blocks(&ordering)?;
        let cert = MaxOddCycle { ordering, blocks };
        cert.validate(m)?;
        Ok(cert)
    }

    /// `n = 2k + 1`.
    pub fn k(&self) -> usize {
        (self.ordering.len() - 1) / 2
    }

    pub fn len(&self) -> usize {
        self.ordering.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordering.is_empty()
    }

    /// `B_i` with `i` modulo `n`.
    pub fn block(&self, i: isize) -> Face {
        let n = self.blocks.len() as isize;
        self.blocks[i.rem_euclid(n) as usize]
    }

    pub fn validate(&self, m: usize) -> Result<(), CertificateError> {
        let o = &self.ordering;
        let blocks = alternating_blocks(o)?;
        let n = o.len();
        for i in 0..n {
            let (a, b) = (o.members()[i], o.members()[(i + 1) % n]);
            if !a.is_disjoint(b) {
                return Err(CertificateError::SuccessiveOverlap(a, b));
            }
        }
        if blocks != self.blocks {
            return Err(CertificateError::BlockMismatch);
        }
        if !is_partition(&blocks, m) {
            return Err(CertificateError::NotPartition);
        }
        if n == 3 && blocks.iter().any(|b| b.len() < 2) {
            return Err(CertificateError::SmallTriangleBlock);
        }
        Ok(())
    }

    /// Validates and additionally checks that the ordering lists exactly the
    /// members of `f`.
    pub fn validate_for(&self, f: &NonFaceFamily) -> Result<(), CertificateError> {
        self.validate(f.vertex_count())?;
        let mut members = self.ordering.members().to_vec();
        members.sort();
        if members != f.members() {
            return Err(CertificateError::FamilyMismatch);
        }
        Ok(())
    }

    /// The same cycle written from its canonical ordering.
    pub fn canonical(&self) -> MaxOddCycle {
        let ordering = self.ordering.canonical();
        let blocks = alternating_blocks(&ordering).expect("odd length was validated");
        MaxOddCycle { ordering, blocks }
    }

    /// The non-face family listed by the ordering.
    pub fn family(&self, m: usize) -> NonFaceFamily {
        NonFaceFamily::from_members_unchecked(m, self.ordering.members().to_vec())
    }
}

/// Proof object for a positive answer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SphereCertificate {
    /// `F = {[m]}`.
    SimplexBoundary {
        m: usize,
    },
    /// `F = {A_0, A_1}` partitioning `[m]`, both of size at least two.
    TwoPartition(Face, Face),
    MaxOddCycle(MaxOddCycle),
}

impl SphereCertificate {
    /// Sphere dimension implied by the certificate on `m` vertices.
    pub fn dimension(&self, m: usize) -> isize {
        m as isize
            - match self {
                SphereCertificate::SimplexBoundary { .. } => 2,
                SphereCertificate::TwoPartition(..) => 3,
                SphereCertificate::MaxOddCycle(_) => 4,
            }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SphereCertificate::SimplexBoundary { .. } => "simplex_boundary",
            SphereCertificate::TwoPartition(..) => "two_partition",
            SphereCertificate::MaxOddCycle(_) => "max_odd_cycle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NotSphereReason {
    /// On `d + 4` vertices, `|F|` is even.
    NonOddFamilySize,
    /// Odd `|F| >= 3` but no cyclic ordering with successive members disjoint.
    NoCyclicOrdering,
    /// Cyclic orderings exist but none has blocks partitioning `[m]`.
    BlocksNotPartition,
    /// The complex is the full simplex.
    FullSimplex,
    /// The family has the wrong shape for the vertex excess `m - d`.
    WrongFamilyShape,
}

impl NotSphereReason {
    pub fn as_str(self) -> &'static str {
        match self {
            NotSphereReason::NonOddFamilySize => "non_odd_family_size",
            NotSphereReason::NoCyclicOrdering => "no_cyclic_ordering",
            NotSphereReason::BlocksNotPartition => "blocks_not_partition",
            NotSphereReason::FullSimplex => "full_simplex",
            NotSphereReason::WrongFamilyShape => "wrong_family_shape",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            NotSphereReason::NonOddFamilySize,
            NotSphereReason::NoCyclicOrdering,
            NotSphereReason::BlocksNotPartition,
            NotSphereReason::FullSimplex,
            NotSphereReason::WrongFamilyShape,
        ]
        .into_iter()
        .find(|r| r.as_str() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Verdict {
    Sphere {
        d: isize,
        certificate: SphereCertificate,
    },
    NotSphere(NotSphereReason),
    /// `m - d >= 5`: outside the characterized range.
    OutOfScope {
        m: usize,
        d: isize,
    },
}

impl Verdict {
    pub fn is_sphere(&self) -> bool {
        matches!(self, Verdict::Sphere { .. })
    }
}

/// Disjointness graph on the sorted members: `adj[i]` lists neighbours in
/// increasing order.
fn disjointness_graph(members: &[Face]) -> Vec<Vec<usize>> {
    (0..members.len())
        .map(|i| {
            (0..members.len())
                .filter(|&j| j != i && members[i].is_disjoint(members[j]))
                .collect()
        })
        .collect()
}

/// Outcome of the cycle search, kept for diagnostics.
struct CycleSearch {
    found_cycle: bool,
    certificates: Vec<MaxOddCycle>,
}

/// Backtracks over Hamiltonian cycles of the disjointness graph starting at
/// the smallest member, keeping only orderings with `A_1 < A_{n-1}`. Cycles
/// are visited in lexicographic order of their index sequences.
fn search_cycles(f: &NonFaceFamily, stop_at_first: bool) -> CycleSearch {
    let members = f.members();
    let n = members.len();
    let m = f.vertex_count();
    let mut out = CycleSearch {
        found_cycle: false,
        certificates: Vec::new(),
    };
    if n < 3 || n.is_multiple_of(2) {
        return out;
    }
    let adj = disjointness_graph(members);
    if adj.iter().any(|nbrs| nbrs.len() < 2) {
        return out;
    }

    fn dfs(
        path: &mut Vec<usize>,
        used: &mut [bool],
        adj: &[Vec<usize>],
        members: &[Face],
        m: usize,
        stop_at_first: bool,
        out: &mut CycleSearch,
    ) -> bool {
        let n = adj.len();
        let last = *path.last().expect("path starts at member 0");
        if path.len() == n {
            if !adj[last].contains(&path[0]) || path[1] > path[n - 1] {
                return false;
            }
            out.found_cycle = true;
            let ordering = CyclicOrdering::new(path.iter().map(|&i| members[i]).collect());
            let blocks = alternating_blocks(&ordering).expect("n is odd and at least 3");
            if is_partition(&blocks, m) {
                out.certificates.push(MaxOddCycle { ordering, blocks });
                return stop_at_first;
            }
            return false;
        }
        for &next in &adj[last] {
            if used[next] {
                continue;
            }
            // the closing member must stay larger than A_1
            if path.len() == n - 1 && path.len() > 1 && next < path[1] {
                continue;
            }
            used[next] = true;
            path.push(next);
            let done = dfs(path, used, adj, members, m, stop_at_first, out);
            path.pop();
            used[next] = false;
            if done {
                return true;
            }
        }
        false
    }

    let mut used = vec![false; n];
    used[0] = true;
    let mut path = vec![0];
    dfs(
        &mut path,
        &mut used,
        &adj,
        members,
        m,
        stop_at_first,
        &mut out,
    );
    out
}

/// The canonically smallest maximum-odd-cycle certificate for `f`, if any.
pub fn find_max_odd_cycle(f: &NonFaceFamily) -> Option<MaxOddCycle> {
    search_cycles(f, true).certificates.into_iter().next()
}

/// Every canonical maximum-odd-cycle certificate for `f`, in search order.
pub fn all_max_odd_cycles(f: &NonFaceFamily) -> Vec<MaxOddCycle> {
    search_cycles(f, false).certificates
}

fn two_partition(f: &NonFaceFamily) -> Option<(Face, Face)> {
    match f.members() {
        &[a, b] if a.len() >= 2 && b.len() >= 2 && is_partition(&[a, b], f.vertex_count()) => {
            Some((a, b))
        }
        _ => None,
    }
}

/// Decides sphericity of a complex on at most `d + 4` vertices.
pub fn recognize(c: &SimplicialComplex) -> Result<Verdict, RecognizeError> {
    let m = c.vertex_count();
    let d = c.dimension();
    let excess = m as isize - d;
    if excess >= 5 {
        return Ok(Verdict::OutOfScope { m, d });
    }
    if excess == 1 {
        return Ok(Verdict::NotSphere(NotSphereReason::FullSimplex));
    }
    let f = minimal_nonfaces(c);
    classify_family(&f, d)
}

/// Recognition starting from the non-face family, building the complex
/// only to read off its dimension.
pub fn recognize_nonfaces(f: &NonFaceFamily) -> Result<Verdict, RecognizeError> {
    let c = crate::complex::complex_from_nonfaces(f);
    let m = f.vertex_count();
    let d = c.dimension();
    if m as isize - d >= 5 {
        return Ok(Verdict::OutOfScope { m, d });
    }
    if f.is_empty() {
        return Ok(Verdict::NotSphere(NotSphereReason::FullSimplex));
    }
    classify_family(f, d)
}

fn classify_family(f: &NonFaceFamily, d: isize) -> Result<Verdict, RecognizeError> {
    let m = f.vertex_count();
    let excess = m as isize - d;
    let sphere = |certificate: SphereCertificate| {
        let expected = certificate.dimension(m);
        if expected != d {
            return Err(RecognizeError::InternalInconsistency(format!(
                "{} certificate implies dimension {expected} but the complex has dimension {d}",
                certificate.kind()
            )));
        }
        Ok(Verdict::Sphere { d, certificate })
    };

    if f.members() == [Face::full(m)] {
        return sphere(SphereCertificate::SimplexBoundary { m });
    }
    if let Some((a, b)) = two_partition(f) {
        return sphere(SphereCertificate::TwoPartition(a, b));
    }
    let search = search_cycles(f, true);
    if let Some(cert) = search.certificates.into_iter().next() {
        return sphere(SphereCertificate::MaxOddCycle(cert));
    }
    let n = f.len();
    let reason = if excess < 4 || n < 3 {
        NotSphereReason::WrongFamilyShape
    } else if n.is_multiple_of(2) {
        NotSphereReason::NonOddFamilySize
    } else if !search.found_cycle {
        NotSphereReason::NoCyclicOrdering
    } else {
        NotSphereReason::BlocksNotPartition
    };
    Ok(Verdict::NotSphere(reason))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::complex_from_nonfaces;
    use itertools::Itertools;

    fn faces(lists: &[&[usize]]) -> Vec<Face> {
        lists
            .iter()
            .map(|l| Face::from_vertices(l.iter().copied()))
            .collect()
    }

    fn family(m: usize, lists: &[&[usize]]) -> NonFaceFamily {
        NonFaceFamily::new(m, faces(lists)).unwrap()
    }

    fn graph(m: usize, edges: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::new(m, faces(edges)).unwrap()
    }

    /// Tries every ordering of the members directly.
    fn brute_force_has_max_odd_cycle(f: &NonFaceFamily) -> bool {
        let n = f.len();
        if n < 3 || n.is_multiple_of(2) {
            return false;
        }
        f.members().iter().copied().permutations(n).any(|p| {
            let o = CyclicOrdering::new(p);
            o.successive_disjoint()
                && is_partition(&alternating_blocks(&o).unwrap(), f.vertex_count())
        })
    }

    #[test]
    fn pentagon_blocks_in_given_order() {
        let o = CyclicOrdering::new(faces(&[&[1, 4], &[2, 5], &[1, 3], &[2, 4], &[3, 5]]));
        let blocks = alternating_blocks(&o).unwrap();
        assert_eq!(blocks, (1..=5).map(Face::singleton).collect::<Vec<_>>());
    }

    #[test]
    fn triangle_blocks_are_members() {
        let o = CyclicOrdering::new(faces(&[&[1, 2], &[3, 4], &[5, 6]]));
        assert_eq!(alternating_blocks(&o).unwrap(), o.members());
    }

    #[test]
    fn block_length_errors() {
        let even = CyclicOrdering::new(faces(&[&[1, 2], &[3, 4], &[1, 3], &[2, 4]]));
        assert_eq!(alternating_blocks(&even), Err(CycleError::EvenLength(4)));
        let one = CyclicOrdering::new(faces(&[&[1, 2]]));
        assert_eq!(alternating_blocks(&one), Err(CycleError::TooShort(1)));
    }

    #[test]
    fn find_cycle_examples() {
        let pent = family(5, &[&[1, 4], &[2, 5], &[1, 3], &[2, 4], &[3, 5]]);
        let cert = find_max_odd_cycle(&pent).unwrap();
        cert.validate_for(&pent).unwrap();
        assert!(cert.ordering.is_canonical());
        let mut blocks = cert.blocks.clone();
        blocks.sort();
        assert_eq!(blocks, (1..=5).map(Face::singleton).collect::<Vec<_>>());

        let oct = family(6, &[&[1, 2], &[3, 4], &[5, 6]]);
        let cert = find_max_odd_cycle(&oct).unwrap();
        assert_eq!(cert.blocks, oct.members());

        let hex = family(6, &[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[5, 6], &[1, 6]]);
        assert!(find_max_odd_cycle(&hex).is_none());

        let tricky = family(6, &[&[1, 2], &[3, 4], &[5, 6], &[1, 3, 5], &[2, 4, 6]]);
        assert!(!brute_force_has_max_odd_cycle(&tricky));
        assert!(find_max_odd_cycle(&tricky).is_none());
    }

    #[test]
    fn pentagon_has_unique_cycle_up_to_symmetry() {
        let pent = family(5, &[&[1, 4], &[2, 5], &[1, 3], &[2, 4], &[3, 5]]);
        assert_eq!(all_max_odd_cycles(&pent).len(), 1);
    }

    #[test]
    fn recognize_examples() {
        let c5 = graph(5, &[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[1, 5]]);
        assert!(matches!(
            recognize(&c5).unwrap(),
            Verdict::Sphere {
                d: 1,
                certificate: SphereCertificate::MaxOddCycle(_)
            }
        ));

        let oct = complex_from_nonfaces(&family(6, &[&[1, 2], &[3, 4], &[5, 6]]));
        match recognize(&oct).unwrap() {
            Verdict::Sphere {
                d: 2,
                certificate: SphereCertificate::MaxOddCycle(c),
            } => {
                assert_eq!(c.len(), 3)
            }
            v => panic!("{v:?}"),
        }

        let tet = SimplicialComplex::simplex_boundary(4);
        assert_eq!(
            recognize(&tet).unwrap(),
            Verdict::Sphere {
                d: 2,
                certificate: SphereCertificate::SimplexBoundary { m: 4 }
            }
        );

        let c4 = graph(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]);
        assert_eq!(
            recognize(&c4).unwrap(),
            Verdict::Sphere {
                d: 1,
                certificate: SphereCertificate::TwoPartition(
                    Face::from_vertices([1, 3]),
                    Face::from_vertices([2, 4])
                )
            }
        );

        let tri = graph(5, &[&[1, 2], &[2, 3], &[1, 3], &[4], &[5]]);
        assert_eq!(minimal_nonfaces(&tri).len() % 2, 0);
        assert_eq!(
            recognize(&tri).unwrap(),
            Verdict::NotSphere(NotSphereReason::NonOddFamilySize)
        );

        let c6 = graph(6, &[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[5, 6], &[1, 6]]);
        assert_eq!(recognize(&c6).unwrap(), Verdict::OutOfScope { m: 6, d: 1 });
    }

    #[test]
    fn full_simplex_and_wrong_shapes() {
        let full = SimplicialComplex::new(3, vec![Face::full(3)]).unwrap();
        assert_eq!(
            recognize(&full).unwrap(),
            Verdict::NotSphere(NotSphereReason::FullSimplex)
        );

        // path on three vertices: m - d = 2 but F = {{1,3}}
        let path = graph(3, &[&[1, 2], &[2, 3]]);
        assert_eq!(
            recognize(&path).unwrap(),
            Verdict::NotSphere(NotSphereReason::WrongFamilyShape)
        );

        // two disjoint edges: m - d = 3, F has four members
        let two = graph(4, &[&[1, 2], &[3, 4]]);
        assert_eq!(
            recognize(&two).unwrap(),
            Verdict::NotSphere(NotSphereReason::WrongFamilyShape)
        );
    }

    #[test]
    fn no_cyclic_ordering_diagnostic() {
        // disjointness graph is two triangles sharing {5,6}
        let f = family(6, &[&[1, 2], &[1, 3], &[2, 4], &[3, 4], &[5, 6]]);
        let c = complex_from_nonfaces(&f);
        assert_eq!(c.dimension(), 2);
        let search = search_cycles(&f, true);
        assert!(!search.found_cycle);
        assert!(!brute_force_has_max_odd_cycle(&f));
        assert_eq!(
            recognize(&c).unwrap(),
            Verdict::NotSphere(NotSphereReason::NoCyclicOrdering)
        );
    }

    #[test]
    fn blocks_not_partition_diagnostic() {
        // cone over the pentagon: the cycle is found but the blocks miss the apex
        let f = family(6, &[&[1, 3], &[1, 4], &[2, 4], &[2, 5], &[3, 5]]);
        let search = search_cycles(&f, true);
        assert!(search.found_cycle);
        assert!(search.certificates.is_empty());
        assert!(!brute_force_has_max_odd_cycle(&f));
        let verdict = recognize(&complex_from_nonfaces(&f)).unwrap();
        assert_eq!(
            verdict,
            Verdict::NotSphere(NotSphereReason::BlocksNotPartition)
        );
    }

    #[test]
    fn canonical_form_is_dihedral_minimum() {
        let o = CyclicOrdering::new(faces(&[&[1, 4], &[2, 5], &[1, 3], &[2, 4], &[3, 5]]));
        let c = o.canonical();
        assert_eq!(c.members()[0], Face::from_vertices([1, 3]));
        assert!(c.members()[1] < c.members()[4]);
        for s in 0..5 {
            assert_eq!(o.rotate(s).canonical(), c);
            assert_eq!(o.rotate(s).reverse().canonical(), c);
        }
    }
}
