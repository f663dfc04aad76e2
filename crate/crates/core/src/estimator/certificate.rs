//! Lower-bound certificates and their independent verifier.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::lattice::{is_primitive, kernel_splitting, IntMatrix, IntVector};
use crate::polytope::{LatticePolytope, PolytopeError};
use crate::rational::{dot_int, from_int, Rational};

use super::{simplex_lower_bound, simplex_polytope};

/// A recursive witness for a lower bound. The value of a projection node is
/// `min(width, child)`; the child is a certificate for the slice in the
/// kernel coordinates of the functional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Certificate {
    Projection {
        #[serde(with = "crate::rational::serde_str::int_vec")]
        w: IntVector,
        #[serde(with = "crate::rational::serde_str::rational")]
        t: Rational,
        #[serde(with = "crate::rational::serde_str::rational")]
        width: Rational,
        child: Box<Certificate>,
    },
    Base {
        #[serde(with = "crate::rational::serde_str::rational")]
        length: Rational,
    },
    Simplex {
        #[serde(with = "crate::rational::serde_str::rational_vec")]
        a: Vec<Rational>,
        #[serde(with = "crate::rational::serde_str::rational")]
        value: Rational,
    },
    /// Bound at the torus orbit of a face: `min(face bound, s(P'; v'))`, where
    /// `P'` is the image of `P` in the quotient by the face directions. A
    /// missing edge length stands for `+∞`.
    Orbit {
        face: Vec<usize>,
        #[serde(with = "crate::rational::serde_str::option_rational", default)]
        edge_length: Option<Rational>,
        face_cert: Option<Box<Certificate>>,
    },
}

impl Certificate {
    /// The value claimed by the certificate.
    pub fn value(&self) -> Rational {
        match self {
            Certificate::Projection { width, child, .. } => width.clone().min(child.value()),
            Certificate::Base { length } => length.clone(),
            Certificate::Simplex { value, .. } => value.clone(),
            Certificate::Orbit { edge_length, face_cert, .. } => {
                match (edge_length, face_cert) {
                    (Some(e), Some(c)) => e.clone().min(c.value()),
                    (Some(e), None) => e.clone(),
                    (None, Some(c)) => c.value(),
                    (None, None) => Rational::zero(),
                }
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Certificate::Projection { child, .. } => 1 + child.depth(),
            Certificate::Orbit { face_cert: Some(c), .. } => 1 + c.depth(),
            _ => 1,
        }
    }
}

/// Witness for an upper bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum UpperWitness {
    /// Lattice width in the direction of a primitive functional.
    Width {
        #[serde(with = "crate::rational::serde_str::int_vec")]
        functional: IntVector,
    },
    /// `n`-th root of the normalized volume.
    Volume {
        #[serde(with = "crate::rational::serde_str::rational")]
        normalized_volume: Rational,
    },
    /// Lattice length of the shortest edge at the image vertex in the quotient.
    QuotientEdge {
        #[serde(with = "crate::rational::serde_str::rational")]
        length: Rational,
    },
    /// A witness for the face polytope, in its own coordinates.
    Face { witness: Box<UpperWitness> },
    /// No finite upper bound (a single point).
    Unbounded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CertificateErrorCode {
    DimensionMismatch,
    DegenerateSlice,
    ValueMismatch,
    NotPrimitive,
    SliceOutOfRange,
    PolytopeMismatch,
    InvalidFace,
}

impl CertificateErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            CertificateErrorCode::DimensionMismatch => "DIMENSION_MISMATCH",
            CertificateErrorCode::DegenerateSlice => "DEGENERATE_SLICE",
            CertificateErrorCode::ValueMismatch => "VALUE_MISMATCH",
            CertificateErrorCode::NotPrimitive => "NOT_PRIMITIVE",
            CertificateErrorCode::SliceOutOfRange => "SLICE_OUT_OF_RANGE",
            CertificateErrorCode::PolytopeMismatch => "POLYTOPE_MISMATCH",
            CertificateErrorCode::InvalidFace => "INVALID_FACE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateError {
    pub code: CertificateErrorCode,
    pub message: String,
}

impl fmt::Display for CertificateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code.as_str(), self.message)
    }
}

impl std::error::Error for CertificateError {}

fn fail(code: CertificateErrorCode, message: impl Into<String>) -> CertificateError {
    CertificateError { code, message: message.into() }
}

use CertificateErrorCode as Code;

/// Recomputes the bound claimed by `cert` for `p` from scratch.
///
/// Projection, base and simplex certificates bound the Seshadri constant at
/// the identity of the torus and require a full-dimensional `p`; orbit
/// certificates bound it on the orbit of the recorded face.
pub fn verify_certificate(p: &LatticePolytope, cert: &Certificate) -> Result<Rational, CertificateError> {
    if let Certificate::Orbit { .. } = cert {
        return verify_orbit(p, cert);
    }
    if !p.is_full_dimensional() {
        return Err(fail(Code::DimensionMismatch, "polytope is not full-dimensional"));
    }
    verify_interior(p, cert)
}

fn verify_interior(p: &LatticePolytope, cert: &Certificate) -> Result<Rational, CertificateError> {
    match cert {
        Certificate::Base { length } => {
            if p.rank() != 1 || p.dim() != 1 {
                return Err(fail(
                    Code::DimensionMismatch,
                    format!("base certificate needs a segment, found rank {}", p.rank()),
                ));
            }
            let actual = p.lattice_length().expect("one-dimensional");
            if &actual != length {
                return Err(fail(Code::ValueMismatch, format!("length is {actual}, certificate claims {length}")));
            }
            Ok(actual)
        }
        Certificate::Projection { w, t, width, child } => {
            if p.rank() < 2 {
                return Err(fail(Code::DimensionMismatch, "cannot project a polytope of rank below 2"));
            }
            if w.len() != p.rank() {
                return Err(fail(
                    Code::DimensionMismatch,
                    format!("functional has {} entries, polytope rank is {}", w.len(), p.rank()),
                ));
            }
            if !is_primitive(w) {
                return Err(fail(Code::NotPrimitive, "functional is not primitive"));
            }
            let actual = p.width(w).expect("nonzero functional");
            if &actual != width {
                return Err(fail(Code::ValueMismatch, format!("width is {actual}, certificate claims {width}")));
            }
            let split = kernel_splitting(w).expect("primitive");
            let slice = match p.slice_with(&split, t) {
                Ok(s) => s,
                Err(PolytopeError::SliceOutOfRange) => {
                    return Err(fail(Code::SliceOutOfRange, format!("t = {t} is outside the image")))
                }
                Err(e) => return Err(fail(Code::DimensionMismatch, e.to_string())),
            };
            if slice.degenerate {
                return Err(fail(Code::DegenerateSlice, format!("slice at t = {t} is degenerate")));
            }
            let c = verify_interior(&slice.polytope, child)?;
            Ok(actual.min(c))
        }
        Certificate::Simplex { a, value } => {
            if a.len() != p.rank() {
                return Err(fail(
                    Code::DimensionMismatch,
                    format!("{} parameters for a polytope of rank {}", a.len(), p.rank()),
                ));
            }
            let expected = simplex_polytope(a)
                .map_err(|e| fail(Code::PolytopeMismatch, e.to_string()))?;
            if &expected != p {
                return Err(fail(Code::PolytopeMismatch, "polytope is not conv(e_1, ..., e_n, -a)"));
            }
            let actual = simplex_lower_bound(a);
            if &actual != value {
                return Err(fail(Code::ValueMismatch, format!("closed form gives {actual}, certificate claims {value}")));
            }
            Ok(actual)
        }
        Certificate::Orbit { .. } => Err(fail(Code::InvalidFace, "orbit certificate nested in a projection")),
    }
}

fn verify_orbit(p: &LatticePolytope, cert: &Certificate) -> Result<Rational, CertificateError> {
    let Certificate::Orbit { face, edge_length, face_cert } = cert else { unreachable!() };
    let face = p.face(face).map_err(|e| fail(Code::InvalidFace, e.to_string()))?;
    if p.is_whole(&face) {
        let inner = face_cert
            .as_deref()
            .ok_or_else(|| fail(Code::InvalidFace, "orbit of the whole polytope needs a face certificate"))?;
        if edge_length.is_some() {
            return Err(fail(Code::ValueMismatch, "the open orbit has no quotient edge"));
        }
        return verify_certificate(p, inner);
    }
    let actual_edge = crate::orbit::quotient_edge_length(p, &face)
        .map_err(|e| fail(Code::InvalidFace, e.to_string()))?;
    if &actual_edge != edge_length {
        return Err(fail(Code::ValueMismatch, "quotient edge length does not match"));
    }
    let face_value = match (face.dim, face_cert) {
        (0, None) => None,
        (0, Some(_)) => return Err(fail(Code::DimensionMismatch, "a vertex carries no face certificate")),
        (_, None) => return Err(fail(Code::DimensionMismatch, "missing face certificate")),
        (_, Some(c)) => {
            let fp = p.face_as_polytope(&face).map_err(|e| fail(Code::InvalidFace, e.to_string()))?;
            Some(verify_certificate(&fp, c)?)
        }
    };
    match (actual_edge, face_value) {
        (Some(e), Some(f)) => Ok(e.min(f)),
        (Some(e), None) => Ok(e),
        (None, Some(f)) => Ok(f),
        (None, None) => Err(fail(Code::DimensionMismatch, "a point has no finite bound")),
    }
}

/// Rewrites a certificate for `p` into one for `U·p + shift`.
///
/// The functional becomes `U^{-T} w`, the slice parameter moves by
/// `w'·shift`, and the child is transported by the induced map between the
/// two kernel splittings.
pub fn transport_certificate(
    cert: &Certificate,
    u: &IntMatrix,
    shift: &[Rational],
) -> Result<Certificate, String> {
    match cert {
        Certificate::Base { length } => Ok(Certificate::Base { length: length.clone() }),
        Certificate::Projection { w, t, width, child } => {
            let n = w.len();
            if u.rows() != n || u.cols() != n || shift.len() != n {
                return Err("transform does not match the certificate rank".into());
            }
            let u_inv = u.inverse_unimodular().map_err(|e| e.to_string())?;
            let w_new = u_inv.transpose().apply(w);
            let t_new = t + dot_int(&w_new, shift);
            let old = kernel_splitting(w).map_err(|e| e.to_string())?;
            let new = kernel_splitting(&w_new).map_err(|e| e.to_string())?;

            // row i: coordinates of U·k_i in the new kernel basis
            let rows: Vec<IntVector> = old
                .kernel_basis
                .iter()
                .map(|k| {
                    let uk = u.apply_rational(&k.iter().map(from_int).collect::<Vec<_>>());
                    new.kernel_coordinates(&uk).iter().map(|c| c.to_integer()).collect()
                })
                .collect();
            let child_map = IntMatrix::from_rows(&rows, n - 1).transpose();

            let sec: Vec<Rational> = old.section.iter().map(|s| from_int(s) * t).collect();
            let mut base = u.apply_rational(&sec);
            for (b, s) in base.iter_mut().zip(shift) {
                *b += s;
            }
            let child_shift = new.kernel_coordinates(&base);
            let child = transport_certificate(child, &child_map, &child_shift)?;
            Ok(Certificate::Projection { w: w_new, t: t_new, width: width.clone(), child: Box::new(child) })
        }
        Certificate::Simplex { .. } => Err("closed-form simplex certificates are not transportable".into()),
        Certificate::Orbit { .. } => Err("orbit certificates are not transportable".into()),
    }
}

/// Applies `x ↦ U·x + shift` to a polytope with a rational shift.
pub fn transform_polytope(
    p: &LatticePolytope,
    u: &IntMatrix,
    shift: &[Rational],
) -> Result<LatticePolytope, PolytopeError> {
    let zero = vec![BigInt::zero(); p.rank()];
    Ok(p.affine_transform(u, &zero)?.translate(shift))
}
