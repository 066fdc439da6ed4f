//! Simplicial spheres with few vertices.
//!
//! A simplicial complex on `[m]` of dimension `d` with `m <= d + 4` is a
//! sphere exactly when its minimal non-faces are the boundary of a simplex,
//! a two-block partition of the vertices, or a *maximum odd cycle*. This crate
//! recognizes those shapes, emits certificates, turns certificates into exact
//! rational polytopes via planar Gale diagrams, checks the result against
//! independent hull and homology oracles, and catalogs the spheres of
//! codimension four up to isomorphism.
//!
//! ```
//! use oddsphere_core::{recognize, SimplicialComplex, Verdict};
//!
//! let pentagon = SimplicialComplex::from_lists(
//!     5,
//!     &[vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 5], vec![1, 5]],
//! )
//! .unwrap();
//! assert!(matches!(recognize(&pentagon).unwrap(), Verdict::Sphere { d: 1, .. }));
//! ```

pub mod catalog;
pub mod complex;
pub mod doc;
pub mod face;
pub mod gale;
pub mod linalg;
pub mod oracle;
pub mod points;
pub mod realize;
pub mod recognizer;

pub use catalog::{
    catalog, enumerate_bracelets, instantiate, Bracelet, CatalogError, CatalogOptions,
    CatalogReport,
};
pub use complex::{
    complex_from_nonfaces, minimal_nonfaces, ComplexError, FVector, NonFaceFamily,
    SimplicialComplex,
};
pub use face::Face;
pub use gale::{
    diagram_from_certificate, recover_nonfaces, CombinatorialDiagram, GaleConfiguration, GaleError,
};
pub use linalg::Rational;
pub use oracle::{betti_mod2, boundary_complex, hull_facets, BettiProfile, OracleError};
pub use points::{PointConfiguration, PointsError};
pub use realize::{realize_and_verify, realize_sphere, Realization, RealizeError};
pub use recognizer::{
    find_max_odd_cycle, recognize, recognize_nonfaces, CyclicOrdering, MaxOddCycle,
    NotSphereReason, SphereCertificate, Verdict,
};
