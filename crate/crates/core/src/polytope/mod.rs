//! V-represented rational polytopes in `Q^n`.
//!
//! Vertices are kept minimal and sorted lexicographically, so two polytopes
//! with the same vertex set compare equal and serialize identically. Facets
//! are computed eagerly by the hull; the full face lattice is built lazily and
//! cached.

mod hull;
pub mod io;

use std::collections::BTreeSet;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{
    kernel_splitting, primitive_part, quotient_projection, solve_in_echelon_basis, Functional,
    IntMatrix, KernelSplitting, LatticeError,
};
use crate::rational::{clear_denominators, dot_int, from_int, Rational};

pub(crate) use hull::rational_det;
pub(crate) use hull::affine_dim;
use hull::Facet;

pub type RationalPoint = Vec<Rational>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("empty point set")]
    Empty,
    #[error("point {index} has {found} coordinates, expected {expected}")]
    RankMismatch { index: usize, expected: usize, found: usize },
    #[error("polytope not full-dimensional")]
    NotFullDimensional,
    #[error("slice parameter outside projection image")]
    SliceOutOfRange,
    #[error("polytope is not one-dimensional")]
    NotOneDimensional,
    #[error("{0} is not a vertex index")]
    NotAVertex(usize),
    #[error("vertex set {0:?} is not a face")]
    InvalidFace(Vec<usize>),
    #[error("functional must be nonzero")]
    ZeroFunctional,
    #[error("dilation factor must be positive")]
    NonPositiveDilation,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Face {
    pub vertex_indices: Vec<usize>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "crate::rational::serde_str::rational")]
    pub lo: Rational,
    #[serde(with = "crate::rational::serde_str::rational")]
    pub hi: Rational,
}

impl Interval {
    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, t: &Rational) -> bool {
        &self.lo <= t && t <= &self.hi
    }
}

/// `P ∩ {w = t}` in kernel coordinates, with the degeneracy flag.
#[derive(Clone, Debug)]
pub struct Slice {
    pub polytope: LatticePolytope,
    /// Set when the slice has dimension below `dim P − 1`.
    pub degenerate: bool,
}

pub struct LatticePolytope {
    rank: usize,
    vertices: Vec<RationalPoint>,
    dim: usize,
    facets: Vec<Facet>,
    faces: OnceLock<Vec<Face>>,
}

impl Clone for LatticePolytope {
    fn clone(&self) -> Self {
        let faces = OnceLock::new();
        if let Some(f) = self.faces.get() {
            let _ = faces.set(f.clone());
        }
        LatticePolytope {
            rank: self.rank,
            vertices: self.vertices.clone(),
            dim: self.dim,
            facets: self.facets.clone(),
            faces,
        }
    }
}

impl std::fmt::Debug for LatticePolytope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verts: Vec<Vec<String>> =
            self.vertices.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect();
        f.debug_struct("LatticePolytope")
            .field("rank", &self.rank)
            .field("dim", &self.dim)
            .field("vertices", &verts)
            .finish()
    }
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.vertices == other.vertices
    }
}

impl Eq for LatticePolytope {}

impl Hash for LatticePolytope {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rank.hash(state);
        self.vertices.hash(state);
    }
}

/// Convex hull of a nonempty point list; the rank is taken from the first point.
pub fn convex_hull_vertices(points: &[RationalPoint]) -> Result<LatticePolytope, PolytopeError> {
    let rank = points.first().ok_or(PolytopeError::Empty)?.len();
    LatticePolytope::new(rank, points.to_vec())
}

impl LatticePolytope {
    pub fn new(rank: usize, points: Vec<RationalPoint>) -> Result<Self, PolytopeError> {
        if points.is_empty() {
            return Err(PolytopeError::Empty);
        }
        if let Some((index, p)) = points.iter().enumerate().find(|(_, p)| p.len() != rank) {
            return Err(PolytopeError::RankMismatch { index, expected: rank, found: p.len() });
        }
        let h = hull::hull(rank, points);
        Ok(LatticePolytope {
            rank,
            vertices: h.vertices,
            dim: h.dim,
            facets: h.facets,
            faces: OnceLock::new(),
        })
    }

    pub fn from_integer_points(points: &[&[i64]]) -> Result<Self, PolytopeError> {
        let pts: Vec<RationalPoint> = points
            .iter()
            .map(|p| p.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
            .collect();
        convex_hull_vertices(&pts)
    }

    /// The segment `[lo, hi]` in `Q^1`.
    pub fn segment(lo: Rational, hi: Rational) -> Self {
        LatticePolytope::new(1, vec![vec![lo], vec![hi]]).expect("nonempty")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.rank
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    pub fn vertex_index(&self, p: &[Rational]) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.as_slice().cmp(p)).ok()
    }

    pub fn is_integral(&self) -> bool {
        self.vertices.iter().flatten().all(|x| x.is_integer())
    }

    /// Outward primitive facet normals in facet order.
    pub fn facet_normals(&self) -> Vec<Functional> {
        self.facets.iter().map(|f| f.normal.clone()).collect()
    }

    /// All proper nonempty faces, graded by dimension, then by vertex indices.
    pub fn face_lattice(&self) -> &[Face] {
        self.faces.get_or_init(|| self.compute_faces())
    }

    fn compute_faces(&self) -> Vec<Face> {
        let mut sets: BTreeSet<Vec<usize>> =
            self.facets.iter().map(|f| f.vertices.clone()).collect();
        let mut frontier: Vec<Vec<usize>> = sets.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for a in &frontier {
                for f in &self.facets {
                    let meet: Vec<usize> =
                        a.iter().copied().filter(|i| f.vertices.contains(i)).collect();
                    if !meet.is_empty() && sets.insert(meet.clone()) {
                        next.push(meet);
                    }
                }
            }
            frontier = next;
        }
        let mut faces: Vec<Face> = sets
            .into_iter()
            .map(|vertex_indices| {
                let pts: Vec<&RationalPoint> =
                    vertex_indices.iter().map(|&i| &self.vertices[i]).collect();
                Face { dim: affine_dim(&pts), vertex_indices }
            })
            .collect();
        faces.sort_by(|a, b| (a.dim, &a.vertex_indices).cmp(&(b.dim, &b.vertex_indices)));
        faces
    }

    /// The face with the given vertex set, or `P` itself when every vertex is listed.
    pub fn face(&self, vertex_indices: &[usize]) -> Result<Face, PolytopeError> {
        let mut idx = vertex_indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        if idx.len() == self.vertices.len() {
            return Ok(self.whole_face());
        }
        self.face_lattice()
            .iter()
            .find(|f| f.vertex_indices == idx)
            .cloned()
            .ok_or(PolytopeError::InvalidFace(vertex_indices.to_vec()))
    }

    pub fn whole_face(&self) -> Face {
        Face { vertex_indices: (0..self.vertices.len()).collect(), dim: self.dim }
    }

    pub fn is_whole(&self, face: &Face) -> bool {
        face.vertex_indices.len() == self.vertices.len()
    }

    /// An integer functional whose argmax on the vertices is exactly `face`.
    pub fn supporting_functional(&self, face: &Face) -> Functional {
        let mut w = vec![BigInt::zero(); self.rank];
        for f in &self.facets {
            if face.vertex_indices.iter().all(|i| f.vertices.contains(i)) {
                for (a, b) in w.iter_mut().zip(&f.normal) {
                    *a += b;
                }
            }
        }
        w
    }

    /// Edges as vertex-index pairs; a one-dimensional polytope is its own edge.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        if self.dim == 1 {
            return vec![(0, 1)];
        }
        self.face_lattice()
            .iter()
            .filter(|f| f.dim == 1)
            .map(|f| (f.vertex_indices[0], f.vertex_indices[1]))
            .collect()
    }

    pub fn functional_image(&self, w: &[BigInt]) -> Result<Interval, PolytopeError> {
        if w.len() != self.rank {
            return Err(LatticeError::DimensionMismatch { expected: self.rank, found: w.len() }.into());
        }
        if w.iter().all(Zero::is_zero) {
            return Err(PolytopeError::ZeroFunctional);
        }
        let mut values = self.vertices.iter().map(|v| dot_int(w, v));
        let first = values.next().expect("nonempty");
        let (lo, hi) = values.fold((first.clone(), first), |(lo, hi), x| {
            (if x < lo { x.clone() } else { lo }, if x > hi { x } else { hi })
        });
        Ok(Interval { lo, hi })
    }

    /// Lattice width `|w(P)|` in direction `w`.
    pub fn width(&self, w: &[BigInt]) -> Result<Rational, PolytopeError> {
        Ok(self.functional_image(w)?.length())
    }

    pub fn slice(&self, w: &[BigInt], t: &Rational) -> Result<Slice, PolytopeError> {
        if w.len() != self.rank {
            return Err(LatticeError::DimensionMismatch { expected: self.rank, found: w.len() }.into());
        }
        let split = kernel_splitting(w)?;
        self.slice_with(&split, t)
    }

    /// Slice using a precomputed splitting of `w`.
    pub fn slice_with(&self, split: &KernelSplitting, t: &Rational) -> Result<Slice, PolytopeError> {
        let w = &split.functional;
        if !self.functional_image(w)?.contains(t) {
            return Err(PolytopeError::SliceOutOfRange);
        }
        let values: Vec<Rational> = self.vertices.iter().map(|v| dot_int(w, v)).collect();
        let mut points: Vec<RationalPoint> = (0..self.vertices.len())
            .filter(|&i| values[i] == *t)
            .map(|i| self.vertices[i].clone())
            .collect();
        for (a, b) in self.edges() {
            let (va, vb) = (&values[a], &values[b]);
            if (va < t && t < vb) || (vb < t && t < va) {
                let lambda = (t - va) / (vb - va);
                let p: RationalPoint = self.vertices[a]
                    .iter()
                    .zip(&self.vertices[b])
                    .map(|(x, y)| x + &lambda * (y - x))
                    .collect();
                points.push(p);
            }
        }
        let coords: Vec<RationalPoint> = points.iter().map(|p| split.kernel_coordinates(p)).collect();
        let polytope = LatticePolytope::new(self.rank - 1, coords)?;
        let degenerate = polytope.dim + 1 < self.dim;
        Ok(Slice { polytope, degenerate })
    }

    /// Lattice length of a one-dimensional polytope.
    pub fn lattice_length(&self) -> Result<Rational, PolytopeError> {
        if self.dim != 1 {
            return Err(PolytopeError::NotOneDimensional);
        }
        Ok(segment_length(&self.vertices[0], &self.vertices[1]))
    }

    /// `s(P; v)`: the minimum lattice length of an edge through vertex `v`.
    /// `None` stands for `+∞`, the value on a single point.
    pub fn min_edge_length(&self, v: usize) -> Result<Option<Rational>, PolytopeError> {
        if v >= self.vertices.len() {
            return Err(PolytopeError::NotAVertex(v));
        }
        Ok(self
            .edges()
            .into_iter()
            .filter(|&(a, b)| a == v || b == v)
            .map(|(a, b)| segment_length(&self.vertices[a], &self.vertices[b]))
            .min())
    }

    /// `n!·vol(P)`, by a pulling triangulation from the first vertex.
    pub fn normalized_volume(&self) -> Result<Rational, PolytopeError> {
        if !self.is_full_dimensional() {
            return Err(PolytopeError::NotFullDimensional);
        }
        let whole = self.whole_face();
        let mut total = Rational::zero();
        for simplex in self.triangulate(&whole) {
            let base = &self.vertices[simplex[0]];
            let rows: Vec<Vec<Rational>> = simplex[1..]
                .iter()
                .map(|&i| self.vertices[i].iter().zip(base).map(|(a, b)| a - b).collect())
                .collect();
            total += rational_det(&rows).abs();
        }
        Ok(total)
    }

    fn triangulate(&self, face: &Face) -> Vec<Vec<usize>> {
        if face.dim == 0 {
            return vec![face.vertex_indices.clone()];
        }
        let apex = face.vertex_indices[0];
        let mut out = Vec::new();
        for g in self.face_lattice() {
            if g.dim + 1 == face.dim
                && !g.vertex_indices.contains(&apex)
                && g.vertex_indices.iter().all(|i| face.vertex_indices.contains(i))
            {
                for mut s in self.triangulate(g) {
                    s.insert(0, apex);
                    out.push(s);
                }
            }
        }
        out
    }

    /// The face as a polytope in the saturated lattice of its direction space,
    /// after translating its first vertex to the origin.
    pub fn face_as_polytope(&self, face: &Face) -> Result<LatticePolytope, PolytopeError> {
        let face = self.face(&face.vertex_indices)?;
        let base = &self.vertices[face.vertex_indices[0]];
        let diffs: Vec<RationalPoint> = face
            .vertex_indices
            .iter()
            .map(|&i| self.vertices[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let directions: Vec<Vec<BigInt>> = diffs[1..]
            .iter()
            .map(|d| clear_denominators(d))
            .filter(|d| d.iter().any(|x| !x.is_zero()))
            .collect();
        let q = quotient_projection(&directions, self.rank)?;
        let coords = diffs
            .iter()
            .map(|d| solve_in_echelon_basis(&q.kernel_basis, d))
            .collect::<Result<Vec<_>, _>>()?;
        LatticePolytope::new(q.kernel_basis.len(), coords)
    }

    /// `v ↦ U·v + shift` for unimodular `U`.
    pub fn affine_transform(&self, u: &IntMatrix, shift: &[BigInt]) -> Result<Self, PolytopeError> {
        if u.rows() != self.rank || u.cols() != self.rank || shift.len() != self.rank {
            return Err(LatticeError::DimensionMismatch { expected: self.rank, found: u.rows() }.into());
        }
        if !u.is_unimodular() {
            return Err(LatticeError::NotUnimodular.into());
        }
        let pts: Vec<RationalPoint> = self
            .vertices
            .iter()
            .map(|v| u.apply_rational(v).into_iter().zip(shift).map(|(x, s)| x + from_int(s)).collect())
            .collect();
        LatticePolytope::new(self.rank, pts)
    }

    pub fn translate(&self, shift: &[Rational]) -> Self {
        let pts: Vec<RationalPoint> = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(shift).map(|(a, b)| a + b).collect())
            .collect();
        LatticePolytope::new(self.rank, pts).expect("translation preserves validity")
    }

    pub fn dilate(&self, k: &Rational) -> Result<Self, PolytopeError> {
        if !k.is_positive() {
            return Err(PolytopeError::NonPositiveDilation);
        }
        let pts: Vec<RationalPoint> =
            self.vertices.iter().map(|v| v.iter().map(|x| x * k).collect()).collect();
        LatticePolytope::new(self.rank, pts)
    }
}

/// Lattice length of the segment `[a, b]` measured along its primitive direction.
pub fn segment_length(a: &[Rational], b: &[Rational]) -> Rational {
    let diff: Vec<Rational> = a.iter().zip(b).map(|(x, y)| y - x).collect();
    let Ok(prim) = primitive_part(&clear_denominators(&diff)) else {
        return Rational::zero();
    };
    let i = prim.iter().position(|x| !x.is_zero()).expect("nonzero");
    (&diff[i] / from_int(&prim[i])).abs()
}

/// Whether `w` is a primitive nonzero integer vector.
pub fn is_primitive_functional(w: &[BigInt]) -> bool {
    crate::lattice::gcd_of(w).is_one()
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

    fn cube(a: i64) -> LatticePolytope {
        let mut pts = Vec::new();
        for x in [0, a] {
            for y in [0, a] {
                for z in [0, a] {
                    pts.push(vec![rat(x), rat(y), rat(z)]);
                }
            }
        }
        convex_hull_vertices(&pts).unwrap()
    }

    fn simplex3(k: i64) -> LatticePolytope {
        LatticePolytope::from_integer_points(&[&[0, 0, 0], &[k, 0, 0], &[0, k, 0], &[0, 0, k]]).unwrap()
    }

    #[test]
    fn hull_drops_interior_and_collinear_points() {
        let p = convex_hull_vertices(&[
            vec![rat(0), rat(0)],
            vec![rat(1), rat(0)],
            vec![rat(0), rat(1)],
            vec![frac(1, 4), frac(1, 4)],
        ])
        .unwrap();
        assert_eq!(p.vertices().len(), 3);

        assert_eq!(triangle().vertices().len(), 3);

        let s = LatticePolytope::from_integer_points(&[&[0, 0], &[2, 0], &[1, 0]]).unwrap();
        assert_eq!(s.vertices(), &[vec![rat(0), rat(0)], vec![rat(2), rat(0)]]);
        assert_eq!(s.dim(), 1);
    }

    #[test]
    fn face_counts() {
        let count = |p: &LatticePolytope, d: usize| p.face_lattice().iter().filter(|f| f.dim == d).count();
        let t = triangle();
        assert_eq!((count(&t, 0), count(&t, 1)), (3, 3));
        let s = simplex3(1);
        assert_eq!((count(&s, 0), count(&s, 1), count(&s, 2)), (4, 6, 4));
        let c = cube(1);
        assert_eq!((count(&c, 0), count(&c, 1), count(&c, 2)), (8, 12, 6));
    }

    #[test]
    fn cube_faces_match_supporting_hyperplane_enumeration() {
        // Oracle: every nonzero functional with entries in {-1,0,1} supports a face
        // of the cube, and every face arises that way.
        let c = cube(1);
        let mut oracle = BTreeSet::new();
        for_each_sign_vector(3, |w| {
            if w.iter().all(Zero::is_zero) {
                return;
            }
            let vals: Vec<Rational> = c.vertices().iter().map(|v| dot_int(w, v)).collect();
            let m = vals.iter().max().unwrap().clone();
            let set: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] == m).collect();
            oracle.insert(set);
        });
        let faces: BTreeSet<Vec<usize>> =
            c.face_lattice().iter().map(|f| f.vertex_indices.clone()).collect();
        assert_eq!(faces, oracle);
    }

    fn for_each_sign_vector(n: usize, mut f: impl FnMut(&[BigInt])) {
        for code in 0..3usize.pow(n as u32) {
            let w: Vec<BigInt> =
                (0..n).map(|i| BigInt::from((code / 3usize.pow(i as u32)) % 3) - 1).collect();
            f(&w);
        }
    }

    #[test]
    fn supporting_functionals_cut_out_faces() {
        for p in [triangle(), simplex3(1), cube(2)] {
            for face in p.face_lattice() {
                let w = p.supporting_functional(face);
                let vals: Vec<Rational> = p.vertices().iter().map(|v| dot_int(&w, v)).collect();
                let m = vals.iter().max().unwrap();
                let argmax: Vec<usize> = (0..vals.len()).filter(|&i| &vals[i] == m).collect();
                assert_eq!(argmax, face.vertex_indices);
            }
        }
    }

    #[test]
    fn functional_images() {
        let t = triangle();
        assert_eq!(t.functional_image(&iv(&[0, 1])).unwrap(), Interval { lo: rat(-1), hi: rat(1) });
        assert_eq!(t.functional_image(&iv(&[1, 0])).unwrap(), Interval { lo: rat(-1), hi: rat(1) });
        let s = LatticePolytope::segment(rat(0), rat(5));
        assert_eq!(s.functional_image(&iv(&[1])).unwrap(), Interval { lo: rat(0), hi: rat(5) });
    }

    #[test]
    fn slices() {
        let t = triangle();
        let s = t.slice(&iv(&[0, 1]), &rat(0)).unwrap();
        assert!(!s.degenerate);
        assert_eq!(s.polytope.vertices(), &[vec![frac(-1, 2)], vec![rat(1)]]);
        assert_eq!(s.polytope.lattice_length().unwrap(), frac(3, 2));

        let apex = t.slice(&iv(&[0, 1]), &rat(1)).unwrap();
        assert!(apex.degenerate);
        assert_eq!(apex.polytope.dim(), 0);

        let c = cube(2);
        let sq = c.slice(&iv(&[0, 0, 1]), &rat(1)).unwrap();
        assert!(!sq.degenerate);
        let expected = LatticePolytope::from_integer_points(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2]]).unwrap();
        assert_eq!(sq.polytope, expected);

        assert_eq!(t.slice(&iv(&[0, 1]), &rat(2)).unwrap_err(), PolytopeError::SliceOutOfRange);
    }

    #[test]
    fn lengths() {
        assert_eq!(LatticePolytope::segment(frac(-1, 2), rat(1)).lattice_length().unwrap(), frac(3, 2));
        let e = LatticePolytope::from_integer_points(&[&[1, 0], &[-1, -1]]).unwrap();
        assert_eq!(e.lattice_length().unwrap(), rat(1));
        assert_eq!(LatticePolytope::segment(rat(0), rat(7)).lattice_length().unwrap(), rat(7));
        assert_eq!(triangle().lattice_length(), Err(PolytopeError::NotOneDimensional));
    }

    #[test]
    fn min_edge_lengths() {
        let t = triangle();
        let v = t.vertex_index(&[rat(1), rat(0)]).unwrap();
        assert_eq!(t.min_edge_length(v).unwrap(), Some(rat(1)));
        let sq = LatticePolytope::from_integer_points(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2]]).unwrap();
        assert_eq!(sq.min_edge_length(0).unwrap(), Some(rat(2)));
        let s4 = simplex3(4);
        for v in 0..4 {
            assert_eq!(s4.min_edge_length(v).unwrap(), Some(rat(4)));
        }
        let pt = LatticePolytope::from_integer_points(&[&[3, 3]]).unwrap();
        assert_eq!(pt.min_edge_length(0).unwrap(), None);
        assert_eq!(t.min_edge_length(9), Err(PolytopeError::NotAVertex(9)));
    }

    #[test]
    fn volumes() {
        assert_eq!(simplex3(1).normalized_volume().unwrap(), rat(1));
        assert_eq!(triangle().normalized_volume().unwrap(), rat(3));
        let rect = LatticePolytope::from_integer_points(&[&[0, 0], &[3, 0], &[0, 5], &[3, 5]]).unwrap();
        assert_eq!(rect.normalized_volume().unwrap(), rat(30));
        assert_eq!(cube(2).normalized_volume().unwrap(), rat(48));
        let seg = LatticePolytope::from_integer_points(&[&[0, 0], &[1, 1]]).unwrap();
        assert_eq!(seg.normalized_volume(), Err(PolytopeError::NotFullDimensional));
    }

    #[test]
    fn face_polytopes() {
        let t = triangle();
        let a = t.vertex_index(&[rat(1), rat(0)]).unwrap();
        let b = t.vertex_index(&[rat(0), rat(1)]).unwrap();
        let edge = t.face(&[a, b]).unwrap();
        let fp = t.face_as_polytope(&edge).unwrap();
        assert_eq!(fp.rank(), 1);
        assert_eq!(fp.lattice_length().unwrap(), rat(1));

        let vtx = t.face(&[a]).unwrap();
        let fp = t.face_as_polytope(&vtx).unwrap();
        assert_eq!(fp.rank(), 0);
        assert_eq!(fp.vertices().len(), 1);

        let c = cube(2);
        let bottom: Vec<usize> =
            (0..8).filter(|&i| c.vertices()[i][2].is_zero()).collect();
        let fp = c.face_as_polytope(&c.face(&bottom).unwrap()).unwrap();
        let sq = LatticePolytope::from_integer_points(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2]]).unwrap();
        assert_eq!(fp, sq);
    }

    #[test]
    fn transforms() {
        let t = triangle();
        assert_eq!(t.affine_transform(&IntMatrix::identity(2), &iv(&[0, 0])).unwrap(), t);
        let d = t.dilate(&rat(2)).unwrap();
        assert_eq!(d, LatticePolytope::from_integer_points(&[&[2, 0], &[0, 2], &[-2, -2]]).unwrap());
        let sq = LatticePolytope::from_integer_points(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let u = IntMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        let par = sq.affine_transform(&u, &iv(&[0, 0])).unwrap();
        assert_eq!(par.normalized_volume().unwrap(), sq.normalized_volume().unwrap());
        let bad = IntMatrix::from_i64(&[&[2, 0], &[0, 1]]);
        assert!(sq.affine_transform(&bad, &iv(&[0, 0])).is_err());
    }

    #[test]
    fn image_equivariance() {
        let t = triangle();
        let u = IntMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let s = iv(&[3, -1]);
        let tp = t.affine_transform(&u, &s).unwrap();
        let w = iv(&[1, -2]);
        let img = tp.functional_image(&w).unwrap();
        let wt = u.transpose().apply(&w);
        let base = t.functional_image(&wt).unwrap();
        let ws: BigInt = w.iter().zip(&s).map(|(a, b)| a * b).sum();
        assert_eq!(img.lo, base.lo + from_int(&ws));
        assert_eq!(img.hi, base.hi + from_int(&ws));
    }
}
