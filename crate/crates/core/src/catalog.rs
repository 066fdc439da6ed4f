//! Enumeration of the spheres on `m` vertices of dimension `m - 4`, one
//! maximum odd cycle per bracelet of block sizes, cross-checked and grouped
//! into isomorphism classes.

use std::collections::HashSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::complex::{complex_from_nonfaces, FVector, NonFaceFamily, SimplicialComplex};
use crate::face::Face;
use crate::gale::recover_nonfaces;
use crate::oracle::{betti_mod2, is_pseudomanifold, BettiProfile};
use crate::realize::{realize_max_odd_cycle, verify_realization};
use crate::recognizer::{
    find_max_odd_cycle, recognize, CyclicOrdering, MaxOddCycle, SphereCertificate, Verdict,
};

pub const DEFAULT_MAX_VERTICES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("catalog size m = {m} must lie in [4, {max}]")]
    OutOfRange { m: usize, max: usize },
    #[error("bracelet {bracelet:?} failed the {stage} check: {detail}")]
    CrossCheck {
        bracelet: Vec<usize>,
        stage: &'static str,
        detail: String,
    },
}

/// Cyclic sequence of block sizes around the polygon, in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bracelet(Vec<usize>);

impl Bracelet {
    /// Canonicalizes `sizes`; `None` unless the length is odd and at least 3,
    /// all parts are positive, and a 3-bracelet has all parts at least 2.
    pub fn new(sizes: Vec<usize>) -> Option<Bracelet> {
        let n = sizes.len();
        if n < 3
            || n.is_multiple_of(2)
            || sizes.contains(&0)
            || (n == 3 && sizes.iter().any(|&b| b < 2))
        {
            return None;
        }
        Some(Bracelet(canonical_bracelet(&sizes)))
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    pub fn vertex_count(&self) -> usize {
        self.0.iter().sum()
    }
}

/// Lexicographic minimum over all rotations and reflections.
pub fn canonical_bracelet(sizes: &[usize]) -> Vec<usize> {
    let n = sizes.len();
    let mut reversed = sizes.to_vec();
    reversed.reverse();
    (0..n)
        .flat_map(|s| {
            let fwd: Vec<usize> = (0..n).map(|i| sizes[(i + s) % n]).collect();
            let bwd: Vec<usize> = (0..n).map(|i| reversed[(i + s) % n]).collect();
            [fwd, bwd]
        })
        .min()
        .unwrap_or_default()
}

/// Every canonical bracelet on `m` vertices, in lexicographic order.
pub fn enumerate_bracelets(m: usize) -> Vec<Bracelet> {
    fn compositions(
        rest: usize,
        parts: usize,
        min: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if parts == 0 {
            if rest == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if rest < parts * min {
            return;
        }
        for first in min..=rest - (parts - 1) * min {
            prefix.push(first);
            compositions(rest - first, parts - 1, min, prefix, out);
            prefix.pop();
        }
    }

    let mut out = Vec::new();
    for n in (3..=m).step_by(2) {
        let min = if n == 3 { 2 } else { 1 };
        let mut comps = Vec::new();
        compositions(m, n, min, &mut Vec::new(), &mut comps);
        out.extend(
            comps
                .into_iter()
                .filter(|c| canonical_bracelet(c) == *c)
                .map(Bracelet),
        );
    }
    out.sort();
    out
}

/// Labels `1..m` are dealt to the slots in order: slot `j` receives the next
/// `b_j` labels as block `B_{-2j}`. Members follow
/// `A_i = B_i ∪ B_{i-2} ∪ ... ∪ B_{i-2(k-1)}`.
pub fn instantiate(b: &Bracelet) -> (NonFaceFamily, MaxOddCycle) {
    let sizes = b.sizes();
    let n = sizes.len();
    let k = (n - 1) / 2;
    let m = b.vertex_count();
    let mut blocks = vec![Face::EMPTY; n];
    let mut next = 1;
    for (j, &size) in sizes.iter().enumerate() {
        let idx = (-2 * j as isize).rem_euclid(n as isize) as usize;
        blocks[idx] = Face::from_vertices(next..next + size);
        next += size;
    }
    let ordering: Vec<Face> = (0..n)
        .map(|i| {
            (0..k).fold(Face::EMPTY, |acc, t| {
                acc.union(blocks[(i as isize - 2 * t as isize).rem_euclid(n as isize) as usize])
            })
        })
        .collect();
    let cert = MaxOddCycle::from_ordering(CyclicOrdering::new(ordering), m)
        .expect("bracelet blocks always form a maximum odd cycle")
        .canonical();
    debug_assert_eq!(cert.blocks.iter().map(|b| b.len()).sum::<usize>(), m);
    (cert.family(m), cert)
}

/// Some vertex bijection carrying the facets of `a` onto those of `b`,
/// as `map[v - 1] = image of v`.
pub fn find_isomorphism(a: &SimplicialComplex, b: &SimplicialComplex) -> Option<Vec<usize>> {
    let m = a.vertex_count();
    if m != b.vertex_count() || a.facets().len() != b.facets().len() || a.f_vector() != b.f_vector()
    {
        return None;
    }
    let degrees = |c: &SimplicialComplex| -> Vec<usize> {
        (1..=m).map(|v| c.star_facets(v).count()).collect()
    };
    let (deg_a, deg_b) = (degrees(a), degrees(b));
    let mut sorted_a = deg_a.clone();
    let mut sorted_b = deg_b.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return None;
    }
    let target: HashSet<Face> = b.facets().iter().copied().collect();
    // facets of `a` that become fully mapped once vertex v is placed
    let closing: Vec<Vec<Face>> = (1..=m)
        .map(|v| {
            a.facets()
                .iter()
                .copied()
                .filter(|f| f.max_vertex() == Some(v))
                .collect()
        })
        .collect();

    let ctx = IsoSearch {
        deg_a: &deg_a,
        deg_b: &deg_b,
        target: &target,
        closing: &closing,
    };
    let mut map = Vec::with_capacity(m);
    let mut used = Face::EMPTY;
    ctx.extend(1, &mut map, &mut used).then_some(map)
}

struct IsoSearch<'a> {
    deg_a: &'a [usize],
    deg_b: &'a [usize],
    target: &'a HashSet<Face>,
    closing: &'a [Vec<Face>],
}

impl IsoSearch<'_> {
    fn extend(&self, v: usize, map: &mut Vec<usize>, used: &mut Face) -> bool {
        let m = self.deg_a.len();
        if v > m {
            return true;
        }
        for w in 1..=m {
            if used.contains(w) || self.deg_a[v - 1] != self.deg_b[w - 1] {
                continue;
            }
            map.push(w);
            *used = used.with(w);
            let consistent = self.closing[v - 1].iter().all(|f| {
                self.target
                    .contains(&Face::from_vertices(f.iter().map(|u| map[u - 1])))
            });
            if consistent && self.extend(v + 1, map, used) {
                return true;
            }
            *used = used.without(w);
            map.pop();
        }
        false
    }
}

pub fn are_isomorphic(a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
    find_isomorphism(a, b).is_some()
}

/// One verified sphere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub bracelet: Bracelet,
    pub family: NonFaceFamily,
    pub certificate: MaxOddCycle,
    pub complex: SimplicialComplex,
    pub f_vector: FVector,
}

/// An isomorphism class; `entries[0]` is the representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogClass {
    pub entries: Vec<CatalogEntry>,
}

impl CatalogClass {
    pub fn representative(&self) -> &CatalogEntry {
        &self.entries[0]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogReport {
    pub m: usize,
    pub classes: Vec<CatalogClass>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogOptions {
    pub max_vertices: usize,
    pub parallel: bool,
}

impl Default for CatalogOptions {
    fn default() -> Self {
        CatalogOptions {
            max_vertices: DEFAULT_MAX_VERTICES,
            parallel: false,
        }
    }
}

fn check(
    bracelet: &Bracelet,
    stage: &'static str,
    ok: bool,
    detail: impl FnOnce() -> String,
) -> Result<(), CatalogError> {
    if ok {
        Ok(())
    } else {
        Err(CatalogError::CrossCheck {
            bracelet: bracelet.sizes().to_vec(),
            stage,
            detail: detail(),
        })
    }
}

/// Instantiates a bracelet and runs every cross-check on the result.
pub fn verify_bracelet(bracelet: &Bracelet) -> Result<CatalogEntry, CatalogError> {
    let m = bracelet.vertex_count();
    let d = m as isize - 4;
    let (family, certificate) = instantiate(bracelet);
    let fail = |stage: &'static str, detail: String| CatalogError::CrossCheck {
        bracelet: bracelet.sizes().to_vec(),
        stage,
        detail,
    };

    check(
        bracelet,
        "certificate",
        certificate.validate_for(&family).is_ok(),
        || "instantiated certificate does not validate".into(),
    )?;
    check(
        bracelet,
        "search",
        find_max_odd_cycle(&family).is_some(),
        || "cycle search finds no certificate".into(),
    )?;
    let complex = complex_from_nonfaces(&family);
    check(bracelet, "dimension", complex.dimension() == d, || {
        format!("dimension {} instead of {d}", complex.dimension())
    })?;
    match recognize(&complex) {
        Ok(Verdict::Sphere {
            d: found,
            certificate: SphereCertificate::MaxOddCycle(_),
        }) if found == d => {}
        other => return Err(fail("recognize", format!("{other:?}"))),
    }

    let realization =
        realize_max_odd_cycle(&certificate).map_err(|e| fail("realize", e.to_string()))?;
    verify_realization(&complex, &realization.points).map_err(|e| fail("hull", e.to_string()))?;
    check(
        bracelet,
        "pseudomanifold",
        is_pseudomanifold(&complex),
        String::new,
    )?;
    let betti = betti_mod2(&complex);
    check(
        bracelet,
        "homology",
        betti == BettiProfile::sphere(d as usize),
        || format!("{betti:?}"),
    )?;
    let chi = complex.euler_characteristic();
    let expected_chi = 1 + if d % 2 == 0 { 1 } else { -1 };
    check(bracelet, "euler", chi == expected_chi, || {
        format!("chi = {chi}")
    })?;
    match recover_nonfaces(&realization.gale) {
        Some((back, _)) if back == family => {}
        other => return Err(fail("necessity", format!("{other:?}"))),
    }

    let f_vector = complex.f_vector();
    Ok(CatalogEntry {
        bracelet: bracelet.clone(),
        family,
        certificate,
        complex,
        f_vector,
    })
}

/// Groups entries by complex isomorphism, preserving input order.
pub fn classify(entries: Vec<CatalogEntry>) -> Vec<CatalogClass> {
    let mut classes: Vec<CatalogClass> = Vec::new();
    for entry in entries {
        match classes
            .iter_mut()
            .find(|c| are_isomorphic(&c.representative().complex, &entry.complex))
        {
            Some(class) => class.entries.push(entry),
            None => classes.push(CatalogClass {
                entries: vec![entry],
            }),
        }
    }
    classes
}

/// Verified catalog of the `(m - 4)`-spheres on `m` vertices.
pub fn catalog(m: usize, options: CatalogOptions) -> Result<CatalogReport, CatalogError> {
    if m < 4 || m > options.max_vertices {
        return Err(CatalogError::OutOfRange {
            m,
            max: options.max_vertices,
        });
    }
    let bracelets = enumerate_bracelets(m);
    let entries: Vec<CatalogEntry> = if options.parallel {
        bracelets
            .par_iter()
            .map(verify_bracelet)
            .collect::<Result<_, _>>()?
    } else {
        bracelets
            .iter()
            .map(verify_bracelet)
            .collect::<Result<_, _>>()?
    };
    Ok(CatalogReport {
        m,
        classes: classify(entries),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// Counts dihedral orbits of compositions directly, without canonical forms.
    fn orbit_count(m: usize) -> usize {
        let mut orbits: HashSet<BTreeSet<Vec<usize>>> = HashSet::new();
        for n in (3..=m).step_by(2) {
            let mut stack: Vec<Vec<usize>> = vec![vec![]];
            while let Some(prefix) = stack.pop() {
                let used: usize = prefix.iter().sum();
                if prefix.len() == n {
                    if used == m && (n > 3 || prefix.iter().all(|&p| p >= 2)) {
                        let mut orbit = BTreeSet::new();
                        for s in 0..n {
                            let rot: Vec<usize> = (0..n).map(|i| prefix[(i + s) % n]).collect();
                            let mut rev = rot.clone();
                            rev.reverse();
                            orbit.insert(rot);
                            orbit.insert(rev);
                        }
                        orbits.insert(orbit);
                    }
                    continue;
                }
                for p in 1..=m.saturating_sub(used) {
                    let mut next = prefix.clone();
                    next.push(p);
                    stack.push(next);
                }
            }
        }
        orbits.len()
    }

    #[test]
    fn bracelet_counts_match_orbit_enumeration() {
        for m in 4..=10 {
            assert_eq!(enumerate_bracelets(m).len(), orbit_count(m), "m = {m}");
        }
        assert_eq!(enumerate_bracelets(5).len(), 1);
        assert_eq!(enumerate_bracelets(6).len(), 2);
        assert_eq!(enumerate_bracelets(7).len(), 5);
    }

    #[test]
    fn listed_bracelets_for_seven() {
        let got: BTreeSet<Vec<usize>> = enumerate_bracelets(7).into_iter().map(|b| b.0).collect();
        let listed = [
            vec![2, 2, 3],
            vec![3, 1, 1, 1, 1],
            vec![2, 2, 1, 1, 1],
            vec![2, 1, 2, 1, 1],
            vec![1, 1, 1, 1, 1, 1, 1],
        ];
        let expected: BTreeSet<Vec<usize>> = listed.iter().map(|b| canonical_bracelet(b)).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn bracelet_validation() {
        assert!(Bracelet::new(vec![1, 2, 3]).is_none());
        assert!(Bracelet::new(vec![2, 2]).is_none());
        assert!(Bracelet::new(vec![1, 1, 1, 1]).is_none());
        assert_eq!(
            Bracelet::new(vec![1, 1, 3, 1, 1]).unwrap().sizes(),
            &[1, 1, 1, 1, 3]
        );
    }

    #[test]
    fn instantiate_pentagon_and_octahedron() {
        let (f, cert) = instantiate(&Bracelet::new(vec![1; 5]).unwrap());
        assert!(cert.blocks.iter().all(|b| b.len() == 1));
        // labels go round the polygon, so non-faces are slot-adjacent pairs
        let expected: Vec<Face> = [[1, 2], [2, 3], [3, 4], [4, 5], [1, 5]]
            .iter()
            .map(|p| Face::from_vertices(p.iter().copied()))
            .collect();
        let mut expected = expected;
        expected.sort();
        assert_eq!(f.members(), &expected[..]);

        let (f, cert) = instantiate(&Bracelet::new(vec![2, 2, 2]).unwrap());
        let oct: Vec<Face> = [[1, 2], [3, 4], [5, 6]]
            .iter()
            .map(|p| Face::from_vertices(p.iter().copied()))
            .collect();
        assert_eq!(f.members(), &oct[..]);
        assert_eq!(cert.blocks, oct);
    }

    #[test]
    fn isomorphism_checks() {
        let (f, _) = instantiate(&Bracelet::new(vec![2, 2, 2]).unwrap());
        let oct = complex_from_nonfaces(&f);
        let perm = [4, 6, 1, 3, 2, 5];
        assert!(are_isomorphic(&oct, &oct.relabel(&perm)));
        let map = find_isomorphism(&oct, &oct.relabel(&perm)).unwrap();
        assert_eq!(oct.relabel(&map), oct.relabel(&perm));

        let (g, _) = instantiate(&Bracelet::new(vec![2, 1, 1, 1, 1]).unwrap());
        let other = complex_from_nonfaces(&g);
        // both are 2-spheres on six vertices, so only the search tells them apart
        assert_eq!(oct.f_vector(), other.f_vector());
        assert!(!are_isomorphic(&oct, &other));
    }

    #[test]
    fn small_catalogs() {
        let counts: Vec<usize> = (5..=7)
            .map(|m| catalog(m, CatalogOptions::default()).unwrap().classes.len())
            .collect();
        assert_eq!(counts, vec![1, 2, 5]);
        assert!(catalog(4, CatalogOptions::default())
            .unwrap()
            .classes
            .is_empty());
        assert!(catalog(3, CatalogOptions::default()).is_err());
        assert!(catalog(11, CatalogOptions::default()).is_err());
    }

    #[test]
    fn parallel_catalog_matches_sequential() {
        let seq = catalog(7, CatalogOptions::default()).unwrap();
        let par = catalog(
            7,
            CatalogOptions {
                parallel: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(seq, par);
    }
}
