//! JSON documents exchanged by the command-line tool.
//!
//! Vertex lists are ascending and 1-based; rationals are lowest-terms
//! `"p/q"` strings.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::CatalogReport;
use crate::complex::{ComplexError, NonFaceFamily, SimplicialComplex};
use crate::face::Face;
use crate::oracle::BettiProfile;
use crate::points::{format_rational, parse_rational, PointConfiguration, PointsError};
use crate::recognizer::{SphereCertificate, Verdict};

#[derive(Debug, Error)]
pub enum DocError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid complex data: {0}")]
    Complex(#[from] ComplexError),
    #[error("invalid point data: {0}")]
    Points(#[from] PointsError),
}

fn lists(faces: &[Face]) -> Vec<Vec<usize>> {
    faces.iter().map(|f| f.to_vec()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub m: usize,
    pub facets: Vec<Vec<usize>>,
}

impl ComplexDoc {
    pub fn to_complex(&self) -> Result<SimplicialComplex, ComplexError> {
        SimplicialComplex::from_lists(self.m, &self.facets)
    }
}

impl From<&SimplicialComplex> for ComplexDoc {
    fn from(c: &SimplicialComplex) -> Self {
        ComplexDoc {
            m: c.vertex_count(),
            facets: lists(c.facets()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NonFaceDoc {
    pub m: usize,
    pub nonfaces: Vec<Vec<usize>>,
}

impl NonFaceDoc {
    pub fn to_family(&self) -> Result<NonFaceFamily, ComplexError> {
        NonFaceFamily::from_lists(self.m, &self.nonfaces)
    }
}

impl From<&NonFaceFamily> for NonFaceDoc {
    fn from(f: &NonFaceFamily) -> Self {
        NonFaceDoc {
            m: f.vertex_count(),
            nonfaces: lists(f.members()),
        }
    }
}

/// Either input shape accepted where a complex is expected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexInput {
    Complex(ComplexDoc),
    NonFaces(NonFaceDoc),
}

impl ComplexInput {
    pub fn parse(text: &str) -> Result<Self, DocError> {
        Ok(serde_json::from_str(text)?)
    }

    /// The complex together with its minimal non-faces.
    pub fn resolve(&self) -> Result<(SimplicialComplex, NonFaceFamily), ComplexError> {
        match self {
            ComplexInput::Complex(doc) => {
                let c = doc.to_complex()?;
                let f = crate::complex::minimal_nonfaces(&c);
                Ok((c, f))
            }
            ComplexInput::NonFaces(doc) => {
                let f = doc.to_family()?;
                Ok((crate::complex::complex_from_nonfaces(&f), f))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointsDoc {
    pub dim: usize,
    pub points: Vec<Vec<String>>,
}

impl PointsDoc {
    pub fn to_points(&self) -> Result<PointConfiguration, PointsError> {
        let points = self
            .points
            .iter()
            .map(|p| p.iter().map(|s| parse_rational(s)).collect())
            .collect::<Result<Vec<_>, _>>()?;
        PointConfiguration::new(self.dim, points)
    }
}

impl From<&PointConfiguration> for PointsDoc {
    fn from(pc: &PointConfiguration) -> Self {
        PointsDoc {
            dim: pc.dim(),
            points: pc
                .points()
                .iter()
                .map(|p| p.iter().map(format_rational).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    pub kind: String,
    pub ordering: Vec<Vec<usize>>,
    pub blocks: Vec<Vec<usize>>,
}

impl From<&SphereCertificate> for CertificateDoc {
    fn from(cert: &SphereCertificate) -> Self {
        let (ordering, blocks) = match cert {
            SphereCertificate::SimplexBoundary { m } => {
                let all = vec![Face::full(*m).to_vec()];
                (all.clone(), all)
            }
            SphereCertificate::TwoPartition(a, b) => {
                let both = vec![a.to_vec(), b.to_vec()];
                (both.clone(), both)
            }
            SphereCertificate::MaxOddCycle(c) => (lists(c.ordering.members()), lists(&c.blocks)),
        };
        CertificateDoc {
            kind: cert.kind().to_string(),
            ordering,
            blocks,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictDoc {
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<isize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl From<&Verdict> for VerdictDoc {
    fn from(v: &Verdict) -> Self {
        match v {
            Verdict::Sphere { d, certificate } => VerdictDoc {
                verdict: "sphere".into(),
                d: Some(*d),
                certificate: Some(certificate.into()),
                reason: None,
            },
            Verdict::NotSphere(reason) => VerdictDoc {
                verdict: "not_sphere".into(),
                d: None,
                certificate: None,
                reason: Some(reason.as_str().into()),
            },
            Verdict::OutOfScope { d, .. } => VerdictDoc {
                verdict: "out_of_scope".into(),
                d: Some(*d),
                certificate: None,
                reason: Some("m_minus_d_at_least_5".into()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BettiDoc {
    pub reduced_betti: Vec<usize>,
}

impl From<&BettiProfile> for BettiDoc {
    fn from(b: &BettiProfile) -> Self {
        BettiDoc {
            reduced_betti: b.0.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogClassDoc {
    pub bracelet: Vec<usize>,
    pub f_vector: Vec<u64>,
    pub facet_count: usize,
    pub nonfaces: Vec<Vec<usize>>,
    pub ordering: Vec<Vec<usize>>,
    pub blocks: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogDoc {
    pub m: usize,
    pub classes: Vec<CatalogClassDoc>,
}

impl From<&CatalogReport> for CatalogDoc {
    fn from(r: &CatalogReport) -> Self {
        let mut classes: Vec<CatalogClassDoc> = r
            .classes
            .iter()
            .map(|c| {
                let e = c.representative();
                CatalogClassDoc {
                    bracelet: e.bracelet.sizes().to_vec(),
                    f_vector: e.f_vector.0.clone(),
                    facet_count: e.complex.facets().len(),
                    nonfaces: lists(e.family.members()),
                    ordering: lists(e.certificate.ordering.members()),
                    blocks: lists(&e.certificate.blocks),
                }
            })
            .collect();
        classes.sort_by(|a, b| a.bracelet.cmp(&b.bracelet));
        CatalogDoc { m: r.m, classes }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents always serialize");
    s.push('\n');
    s
}
