//! Bounds at points of arbitrary torus orbits.
//!
//! For a point on the orbit of a face `σ`, the Seshadri constant is
//! `min(ε(σ), s(P'; v'))`, where `P'` is the image of `P` under the quotient
//! by the directions of `σ`, `v'` is the image of `σ` and `s` is the shortest
//! lattice length of an edge at a vertex. At a vertex this is just `s(P; v)`;
//! on the open orbit it is the interior estimate.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::estimator::{estimate_interior, BoundReport, BoundValue, Certificate, EstimatorError, SearchStrategy, UpperWitness};
use crate::lattice::quotient_projection;
use crate::polytope::{Face, LatticePolytope, PolytopeError, RationalPoint};
use crate::rational::{clear_denominators, format_rational, Rational};

/// `s(P'; v')` for the quotient by the directions of `face`; `None` is `+∞`.
pub fn quotient_edge_length(p: &LatticePolytope, face: &Face) -> Result<Option<Rational>, PolytopeError> {
    let face = p.face(&face.vertex_indices)?;
    let base = &p.vertices()[face.vertex_indices[0]];
    let directions: Vec<_> = face.vertex_indices[1..]
        .iter()
        .map(|&i| {
            let d: Vec<Rational> = p.vertices()[i].iter().zip(base).map(|(a, b)| a - b).collect();
            clear_denominators(&d)
        })
        .collect();
    let q = quotient_projection(&directions, p.rank())?;
    let images: Vec<RationalPoint> = p.vertices().iter().map(|v| q.apply(v)).collect();
    let image = LatticePolytope::new(q.target_rank, images)?;
    let apex = q.apply(base);
    let v = image
        .vertex_index(&apex)
        .expect("the image of a face is a vertex of the quotient polytope");
    image.min_edge_length(v)
}

/// Bounds at a point of the orbit of `face` (which may be all of `P`).
pub fn bound_at_orbit(p: &LatticePolytope, face: &Face, strategy: &SearchStrategy) -> Result<BoundReport, EstimatorError> {
    let face = p.face(&face.vertex_indices)?;
    if p.is_whole(&face) {
        return estimate_interior(p, strategy);
    }
    let s = quotient_edge_length(p, &face)?;
    if face.dim == 0 {
        let s = s.ok_or(EstimatorError::NotFullDimensional)?;
        let cert = Certificate::Orbit { face: face.vertex_indices.clone(), edge_length: Some(s.clone()), face_cert: None };
        return Ok(BoundReport::new(s.clone(), cert, BoundValue::from(s.clone()), UpperWitness::QuotientEdge { length: s }));
    }
    let fp = p.face_as_polytope(&face)?;
    let face_strategy = SearchStrategy { max_depth: None, ..strategy.clone() };
    let inner = estimate_interior(&fp, &face_strategy)?;
    let (lower, upper, witness) = match &s {
        Some(s) => {
            let lower = inner.lower.clone().min(s.clone());
            let sv = BoundValue::from(s.clone());
            if sv < inner.upper {
                (lower, sv, UpperWitness::QuotientEdge { length: s.clone() })
            } else {
                (lower, inner.upper.clone(), UpperWitness::Face { witness: Box::new(inner.upper_witness.clone()) })
            }
        }
        None => (inner.lower.clone(), inner.upper.clone(), UpperWitness::Face { witness: Box::new(inner.upper_witness.clone()) }),
    };
    let cert = Certificate::Orbit {
        face: face.vertex_indices.clone(),
        edge_length: s,
        face_cert: Some(Box::new(inner.lower_certificate)),
    };
    Ok(BoundReport::new(lower, cert, upper, witness))
}

/// One report per face of `P`, including `P` itself, in face-lattice order.
pub fn orbit_profile(p: &LatticePolytope, strategy: &SearchStrategy) -> Result<Vec<(Face, BoundReport)>, EstimatorError> {
    if !p.is_full_dimensional() {
        return Err(EstimatorError::NotFullDimensional);
    }
    let mut faces = p.face_lattice().to_vec();
    faces.push(p.whole_face());
    faces
        .into_par_iter()
        .map(|f| bound_at_orbit(p, &f, strategy).map(|r| (f, r)))
        .collect()
}

pub fn profile_to_json(profile: &[(Face, BoundReport)]) -> Value {
    Value::Array(
        profile
            .iter()
            .map(|(f, r)| {
                json!({
                    "face_vertex_indices": f.vertex_indices,
                    "dim": f.dim,
                    "lower": format_rational(&r.lower),
                    "upper": r.upper.to_json(),
                    "exact": r.exact,
                })
            })
            .collect(),
    )
}
