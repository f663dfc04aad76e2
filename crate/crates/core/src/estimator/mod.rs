//! The recursive projection estimator at the identity point of the torus.
//!
//! For a full-dimensional `P ⊂ Q^n`, a primitive functional `w` and a value
//! `t` with `dim P(t) = n − 1`, the Seshadri constant at the identity is at
//! least `min(|w(P)|, ε(P(t)))`, where `P(t) = P ∩ {w = t}` is viewed in the
//! kernel lattice of `w`. Segments are the base case: their constant is the
//! lattice length. The estimator searches a finite set of functionals and
//! slice parameters and keeps a certificate for the best chain it finds.
//!
//! Upper bounds are the lattice widths of all candidates and the `n`-th root
//! of the normalized volume.

mod bound;
mod certificate;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::lattice::{kernel_splitting, primitive_part, Functional};
use crate::polytope::{affine_dim, LatticePolytope, PolytopeError, RationalPoint};
use crate::rational::{dot_int, Rational};

pub use bound::BoundValue;
pub use certificate::{
    transform_polytope, transport_certificate, verify_certificate, Certificate, CertificateError,
    CertificateErrorCode, UpperWitness,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EstimatorError {
    #[error("polytope not full-dimensional")]
    NotFullDimensional,
    #[error("search depth {max_depth} cannot reach the base case of a rank {rank} polytope")]
    DepthExceeded { max_depth: usize, rank: usize },
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FunctionalSource {
    FacetNormals,
    /// Facet normals plus every primitive vector with entries in `[-H, H]`.
    FacetNormalsPlusBox(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum SliceParams {
    /// Vertex values inside the image, midpoints between consecutive values,
    /// and the endpoints whenever the end slice is still a facet.
    #[default]
    BreakpointsAndMidpoints,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchStrategy {
    pub functional_source: FunctionalSource,
    pub slice_params: SliceParams,
    /// Number of recursion levels; `None` means the rank of the polytope.
    pub max_depth: Option<usize>,
    pub memoize: bool,
}

impl SearchStrategy {
    /// Box height 1 up to rank 3, facet normals only from rank 4 on.
    pub fn default_for_rank(n: usize) -> Self {
        let functional_source = if n <= 3 {
            FunctionalSource::FacetNormalsPlusBox(1)
        } else {
            FunctionalSource::FacetNormals
        };
        SearchStrategy { functional_source, ..Self::default() }
    }

    pub fn boxed(h: u32) -> Self {
        SearchStrategy { functional_source: FunctionalSource::FacetNormalsPlusBox(h), ..Self::default() }
    }

    pub fn facet_normals() -> Self {
        SearchStrategy { functional_source: FunctionalSource::FacetNormals, ..Self::default() }
    }
}

impl Default for SearchStrategy {
    fn default() -> Self {
        SearchStrategy {
            functional_source: FunctionalSource::FacetNormalsPlusBox(1),
            slice_params: SliceParams::BreakpointsAndMidpoints,
            max_depth: None,
            memoize: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    #[serde(with = "crate::rational::serde_str::rational")]
    pub lower: Rational,
    pub upper: BoundValue,
    pub exact: bool,
    pub lower_certificate: Certificate,
    pub upper_witness: UpperWitness,
}

impl BoundReport {
    pub(crate) fn new(lower: Rational, cert: Certificate, upper: BoundValue, witness: UpperWitness) -> Self {
        let exact = upper == lower;
        BoundReport { lower, upper, exact, lower_certificate: cert, upper_witness: witness }
    }
}

/// Flips `w` so that its first nonzero entry is positive.
fn canonical_sign(w: Functional) -> Functional {
    match w.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => w.into_iter().map(|x| -x).collect(),
        _ => w,
    }
}

/// Candidate functionals, primitive, up to sign, sorted lexicographically.
pub fn candidate_projections(p: &LatticePolytope, strategy: &SearchStrategy) -> Vec<Functional> {
    let n = p.rank();
    let mut out: Vec<Functional> = p.facet_normals().into_iter().map(canonical_sign).collect();
    if n == 1 {
        out.push(vec![BigInt::one()]);
    }
    if let FunctionalSource::FacetNormalsPlusBox(h) = strategy.functional_source {
        let h = h as i64;
        let side = (2 * h + 1) as usize;
        for code in 0..side.pow(n as u32) {
            let v: Vec<BigInt> = (0..n)
                .map(|i| BigInt::from(((code / side.pow(i as u32)) % side) as i64 - h))
                .collect();
            if let Ok(w) = primitive_part(&v) {
                if w == v {
                    out.push(canonical_sign(w));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Slice parameters for `w`: sorted, each giving a slice of dimension `dim P − 1`.
pub fn candidate_slice_params(p: &LatticePolytope, w: &[BigInt]) -> Vec<Rational> {
    if p.dim() <= 1 {
        return Vec::new();
    }
    let Ok(split) = kernel_splitting(w) else { return Vec::new() };
    let mut values: Vec<Rational> = p.vertices().iter().map(|v| dot_int(w, v)).collect();
    values.sort();
    values.dedup();
    let mut ts = Vec::with_capacity(2 * values.len());
    for (i, v) in values.iter().enumerate() {
        ts.push(v.clone());
        if let Some(next) = values.get(i + 1) {
            ts.push((v + next) / Rational::from_integer(BigInt::from(2)));
        }
    }
    if !p.is_full_dimensional() {
        return ts.into_iter().filter(|t| matches!(p.slice_with(&split, t), Ok(s) if !s.degenerate)).collect();
    }
    // interior slices of a full-dimensional polytope have full dimension; an
    // endpoint slice is the face minimizing or maximizing w, so it is
    // nondegenerate exactly when that face is a facet
    let (lo, hi) = (values[0].clone(), values[values.len() - 1].clone());
    let is_facet = |t: &Rational| {
        let face: Vec<&RationalPoint> = p.vertices().iter().filter(|v| &dot_int(w, v) == t).collect();
        affine_dim(&face) + 1 == p.rank()
    };
    let (keep_lo, keep_hi) = (is_facet(&lo), is_facet(&hi));
    ts.into_iter().filter(|t| (t != &lo || keep_lo) && (t != &hi || keep_hi)).collect()
}

/// Closed-form bound for `conv(e_1, ..., e_n, −Σ a_i e_i)`:
/// the minimum over `i` of `(a_i + ... + a_n + 1) / (a_{i+1} + ... + a_n + 1)`.
pub fn simplex_lower_bound(a: &[Rational]) -> Rational {
    let mut tail = Rational::one();
    let mut best: Option<Rational> = None;
    for ai in a.iter().rev() {
        let next = &tail + ai;
        let ratio = &next / &tail;
        best = Some(match best {
            Some(b) if b <= ratio => b,
            _ => ratio,
        });
        tail = next;
    }
    best.unwrap_or_else(Rational::one)
}

/// `conv(e_1, ..., e_n, −Σ a_i e_i)`.
pub fn simplex_polytope(a: &[Rational]) -> Result<LatticePolytope, PolytopeError> {
    let n = a.len();
    let mut pts: Vec<RationalPoint> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    pts.push(a.iter().map(|x| -x).collect());
    LatticePolytope::new(n, pts)
}

struct MemoEntry {
    value: Rational,
    cert: Certificate,
    complete: bool,
}

struct Search<'a> {
    strategy: &'a SearchStrategy,
    memo: HashMap<Vec<RationalPoint>, MemoEntry>,
}

struct Found {
    value: Rational,
    cert: Certificate,
    /// False when the search stopped early because the value reached the cap.
    complete: bool,
}

impl Search<'_> {
    /// Best chain for `p`. With a cap, the search may stop as soon as the
    /// value reaches it, since the caller takes a minimum with the cap.
    fn lower(&mut self, p: &LatticePolytope, cap: Option<&Rational>) -> Result<Found, EstimatorError> {
        if p.rank() == 1 {
            let length = p.lattice_length()?;
            return Ok(Found { value: length.clone(), cert: Certificate::Base { length }, complete: true });
        }
        if !self.strategy.memoize {
            return self.lower_uncached(p, cap);
        }
        let origin = p.vertices()[0].clone();
        let neg: Vec<Rational> = origin.iter().map(|x| -x).collect();
        let normalized = p.translate(&neg);
        let key = normalized.vertices().to_vec();
        let hit = self.memo.get(&key).filter(|e| e.complete || cap.is_some_and(|c| &e.value >= c));
        let (value, cert, complete) = match hit {
            Some(e) => (e.value.clone(), e.cert.clone(), e.complete),
            None => {
                let f = self.lower_uncached(&normalized, cap)?;
                self.memo.insert(
                    key,
                    MemoEntry { value: f.value.clone(), cert: f.cert.clone(), complete: f.complete },
                );
                (f.value, f.cert, f.complete)
            }
        };
        let id = crate::lattice::IntMatrix::identity(p.rank());
        let cert = transport_certificate(&cert, &id, &origin).expect("projection chains transport");
        Ok(Found { value, cert, complete })
    }

    fn lower_uncached(&mut self, p: &LatticePolytope, cap: Option<&Rational>) -> Result<Found, EstimatorError> {
        let candidates = candidate_projections(p, self.strategy);
        let (upper, _) = upper_bound(p, &candidates)?;
        let mut best: Option<(Rational, Certificate)> = None;
        for w in &candidates {
            let width = p.width(w)?;
            if best.as_ref().is_some_and(|(b, _)| &width <= b) {
                continue;
            }
            let split = kernel_splitting(w).expect("candidates are primitive");
            for t in candidate_slice_params(p, w) {
                let slice = p.slice_with(&split, &t)?;
                let child = self.lower(&slice.polytope, Some(&width))?;
                let value = width.clone().min(child.value);
                if best.as_ref().is_none_or(|(b, _)| &value > b) {
                    let cert = Certificate::Projection {
                        w: w.clone(),
                        t: t.clone(),
                        width: width.clone(),
                        child: Box::new(child.cert),
                    };
                    best = Some((value.clone(), cert));
                }
                let (b, _) = best.as_ref().expect("set above");
                if upper <= *b {
                    let (value, cert) = best.expect("set above");
                    return Ok(Found { value, cert, complete: true });
                }
                if cap.is_some_and(|c| b >= c) {
                    let (value, cert) = best.expect("set above");
                    return Ok(Found { value, cert, complete: false });
                }
                if value == width {
                    break;
                }
            }
        }
        let (value, cert) = best.ok_or(EstimatorError::NotFullDimensional)?;
        Ok(Found { value, cert, complete: true })
    }
}

/// Minimum of the candidate widths and the volume root; widths win ties.
fn upper_bound(p: &LatticePolytope, candidates: &[Functional]) -> Result<(BoundValue, UpperWitness), EstimatorError> {
    let mut best: Option<(Rational, &Functional)> = None;
    for w in candidates {
        let width = p.width(w)?;
        if best.as_ref().is_none_or(|(b, _)| &width < b) {
            best = Some((width, w));
        }
    }
    let vol = p.normalized_volume()?;
    let root = BoundValue::root(vol.clone(), p.rank() as u32);
    match best {
        Some((width, w)) if BoundValue::from(width.clone()) <= root => {
            Ok((BoundValue::from(width), UpperWitness::Width { functional: w.clone() }))
        }
        _ => Ok((root, UpperWitness::Volume { normalized_volume: vol })),
    }
}

/// Lower and upper bounds for the Seshadri constant at the identity point.
pub fn estimate_interior(p: &LatticePolytope, strategy: &SearchStrategy) -> Result<BoundReport, EstimatorError> {
    if !p.is_full_dimensional() || p.rank() == 0 {
        return Err(EstimatorError::NotFullDimensional);
    }
    let max_depth = strategy.max_depth.unwrap_or(p.rank());
    if max_depth < p.rank() {
        return Err(EstimatorError::DepthExceeded { max_depth, rank: p.rank() });
    }
    let candidates = candidate_projections(p, strategy);
    let (upper, witness) = upper_bound(p, &candidates)?;
    let mut search = Search { strategy, memo: HashMap::new() };
    let found = search.lower(p, None)?;
    Ok(BoundReport::new(found.value, found.cert, upper, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    fn iv(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn triangle() -> LatticePolytope {
        LatticePolytope::from_integer_points(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap()
    }

    fn rect(a: i64, b: i64) -> LatticePolytope {
        LatticePolytope::from_integer_points(&[&[0, 0], &[a, 0], &[0, b], &[a, b]]).unwrap()
    }

    #[test]
    fn candidates() {
        let c = candidate_projections(&rect(2, 5), &SearchStrategy::facet_normals());
        assert!(c.contains(&iv(&[1, 0])) && c.contains(&iv(&[0, 1])));

        let t = triangle();
        let normals = candidate_projections(&t, &SearchStrategy::facet_normals());
        let mut expected = vec![iv(&[1, 1]), iv(&[1, -2]), iv(&[2, -1])];
        expected.sort();
        assert_eq!(normals, expected);
        let boxed = candidate_projections(&t, &SearchStrategy::boxed(1));
        assert_eq!(boxed[0], iv(&[0, 1]));

        let seg = LatticePolytope::segment(rat(0), rat(3));
        assert_eq!(candidate_projections(&seg, &SearchStrategy::default()), vec![iv(&[1])]);
    }

    #[test]
    fn slice_params() {
        let t = triangle();
        assert_eq!(candidate_slice_params(&t, &iv(&[0, 1])), vec![frac(-1, 2), rat(0), frac(1, 2)]);
        // the end slices of a square are edges, so they are kept
        assert_eq!(candidate_slice_params(&rect(2, 2), &iv(&[1, 0])), vec![rat(0), rat(1), rat(2)]);
        assert!(candidate_slice_params(&LatticePolytope::segment(rat(0), rat(1)), &iv(&[1])).is_empty());
    }

    #[test]
    fn triangle_estimate() {
        let r = estimate_interior(&triangle(), &SearchStrategy::boxed(1)).unwrap();
        assert_eq!(r.lower, frac(3, 2));
        assert_eq!(r.upper, BoundValue::root(rat(3), 2));
        assert!(!r.exact);
        match &r.lower_certificate {
            Certificate::Projection { w, t, width, child } => {
                assert_eq!(w, &iv(&[0, 1]));
                assert_eq!(t, &rat(0));
                assert_eq!(width, &rat(2));
                assert_eq!(**child, Certificate::Base { length: frac(3, 2) });
            }
            other => panic!("unexpected certificate {other:?}"),
        }
        assert_eq!(verify_certificate(&triangle(), &r.lower_certificate).unwrap(), frac(3, 2));
    }

    #[test]
    fn rectangles_are_exact() {
        let r = estimate_interior(&rect(2, 5), &SearchStrategy::default()).unwrap();
        assert_eq!(r.lower, rat(2));
        assert!(r.exact);
    }

    #[test]
    fn dilated_simplex() {
        let p = LatticePolytope::from_integer_points(&[&[-1, -1, -1], &[3, -1, -1], &[-1, 3, -1], &[-1, -1, 3]])
            .unwrap();
        let r = estimate_interior(&p, &SearchStrategy::default()).unwrap();
        assert_eq!(r.lower, rat(4));
        assert!(r.exact);
        assert_eq!(verify_certificate(&p, &r.lower_certificate).unwrap(), rat(4));
    }

    #[test]
    fn weighted_simplex() {
        let p = LatticePolytope::from_integer_points(&[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[-2, -2, 2]]).unwrap();
        let r = estimate_interior(&p, &SearchStrategy::default()).unwrap();
        assert_eq!(r.lower, rat(2));
        assert!(r.exact);
    }

    #[test]
    fn simplex_formula() {
        assert_eq!(simplex_lower_bound(&[rat(1), rat(1), rat(1)]), frac(4, 3));
        assert_eq!(simplex_lower_bound(&[frac(1, 3), frac(1, 3), frac(1, 3)]), frac(6, 5));
        assert_eq!(simplex_lower_bound(&[rat(0), rat(0), rat(0)]), rat(1));
    }

    #[test]
    fn simplex_estimate_dominates_closed_form() {
        let a = [frac(1, 3), frac(1, 3), frac(1, 3)];
        let p = simplex_polytope(&a).unwrap();
        let r = estimate_interior(&p, &SearchStrategy::default()).unwrap();
        assert!(r.lower >= simplex_lower_bound(&a));
        assert_eq!(r.lower, frac(6, 5));
        assert_eq!(r.upper, BoundValue::root(rat(2), 3));
        let cert = Certificate::Simplex { a: a.to_vec(), value: frac(6, 5) };
        assert_eq!(verify_certificate(&p, &cert).unwrap(), frac(6, 5));
    }

    #[test]
    fn memo_does_not_change_values() {
        let p = LatticePolytope::from_integer_points(&[&[0, 0, 0], &[3, 0, 0], &[0, 2, 0], &[0, 0, 2], &[1, 1, 1]])
            .unwrap();
        let on = estimate_interior(&p, &SearchStrategy::default()).unwrap();
        let off = estimate_interior(&p, &SearchStrategy { memoize: false, ..SearchStrategy::default() }).unwrap();
        assert_eq!(on.lower, off.lower);
        assert_eq!(on.upper, off.upper);
    }

    #[test]
    fn depth_and_dimension_errors() {
        let s = SearchStrategy { max_depth: Some(1), ..SearchStrategy::default() };
        assert_eq!(
            estimate_interior(&triangle(), &s).unwrap_err(),
            EstimatorError::DepthExceeded { max_depth: 1, rank: 2 }
        );
        let flat = LatticePolytope::from_integer_points(&[&[0, 0], &[1, 1]]).unwrap();
        assert_eq!(estimate_interior(&flat, &SearchStrategy::default()).unwrap_err(), EstimatorError::NotFullDimensional);
    }

    #[test]
    fn verifier_rejects_tampering() {
        let t = triangle();
        let good = Certificate::Projection {
            w: iv(&[0, 1]),
            t: rat(0),
            width: rat(2),
            child: Box::new(Certificate::Base { length: frac(3, 2) }),
        };
        assert_eq!(verify_certificate(&t, &good).unwrap(), frac(3, 2));
        let seg = LatticePolytope::segment(rat(0), rat(5));
        assert_eq!(verify_certificate(&seg, &Certificate::Base { length: rat(5) }).unwrap(), rat(5));

        let code = |c: Certificate| verify_certificate(&t, &c).unwrap_err().code;
        let with = |w: &[i64], tt: Rational, width: Rational, len: Rational| Certificate::Projection {
            w: iv(w),
            t: tt,
            width,
            child: Box::new(Certificate::Base { length: len }),
        };
        assert_eq!(code(with(&[0, 1], rat(0), rat(3), frac(3, 2))), CertificateErrorCode::ValueMismatch);
        assert_eq!(code(with(&[0, 1], rat(0), rat(2), rat(2))), CertificateErrorCode::ValueMismatch);
        assert_eq!(code(with(&[0, 2], rat(0), rat(4), frac(3, 2))), CertificateErrorCode::NotPrimitive);
        assert_eq!(code(with(&[0, 1], rat(5), rat(2), frac(3, 2))), CertificateErrorCode::SliceOutOfRange);
        assert_eq!(code(with(&[0, 1], rat(1), rat(2), rat(0))), CertificateErrorCode::DegenerateSlice);
        assert_eq!(code(with(&[0, 1, 0], rat(0), rat(2), frac(3, 2))), CertificateErrorCode::DimensionMismatch);
        assert_eq!(
            code(Certificate::Simplex { a: vec![rat(1), rat(2)], value: frac(3, 2) }),
            CertificateErrorCode::PolytopeMismatch
        );
    }

    #[test]
    fn transport_preserves_value() {
        let t = triangle();
        let r = estimate_interior(&t, &SearchStrategy::boxed(1)).unwrap();
        let u = crate::lattice::IntMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let shift = vec![frac(1, 2), rat(-3)];
        let moved = transform_polytope(&t, &u, &shift).unwrap();
        let cert = transport_certificate(&r.lower_certificate, &u, &shift).unwrap();
        assert_eq!(verify_certificate(&moved, &cert).unwrap(), frac(3, 2));
    }

    #[test]
    fn certificate_json_shape() {
        let c = Certificate::Projection {
            w: iv(&[0, 1]),
            t: rat(0),
            width: rat(2),
            child: Box::new(Certificate::Base { length: frac(3, 2) }),
        };
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"type":"projection","w":["0","1"],"t":"0","width":"2","child":{"type":"base","length":"3/2"}}"#);
        let back: Certificate = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        let simplex = Certificate::Simplex { a: vec![frac(1, 3)], value: frac(6, 5) };
        assert_eq!(
            serde_json::to_string(&simplex).unwrap(),
            r#"{"type":"simplex","a":["1/3"],"value":"6/5"}"#
        );
    }
}
