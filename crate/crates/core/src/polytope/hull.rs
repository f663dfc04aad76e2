//! Brute-force exact convex hulls.
//!
//! Points are projected onto the coordinates selected by the pivot columns of
//! their affine hull, which is an injective linear chart of that hull. Facets
//! are then found by testing every affinely independent `d`-subset, which is
//! perfectly adequate for the ranks (≤ 4) and vertex counts (a few dozen) this
//! crate deals with.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::lattice::{primitive_part, IntMatrix, IntVector};
use crate::rational::{clear_denominators, common_denominator, dot_int, Rational};

use super::RationalPoint;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Facet {
    /// Indices into the vertex list, increasing.
    pub vertices: Vec<usize>,
    /// Outward primitive normal in ambient coordinates. For a polytope that is
    /// not full-dimensional this is one particular lift of the intrinsic normal.
    pub normal: IntVector,
    pub offset: Rational,
}

pub(crate) struct Hull {
    pub vertices: Vec<RationalPoint>,
    pub dim: usize,
    pub facets: Vec<Facet>,
}

/// Rank and pivot columns of a rational matrix given by rows.
pub(crate) fn rank_and_pivots(rows: &[Vec<Rational>], cols: usize) -> (usize, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for j in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][j].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][j].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][j].is_zero() {
                let f = m[i][j].clone();
                for k in 0..cols {
                    let d = &f * &m[r][k];
                    m[i][k] -= d;
                }
            }
        }
        pivots.push(j);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    (r, pivots)
}

/// Affine dimension of a nonempty point set.
pub(crate) fn affine_dim(points: &[&RationalPoint]) -> usize {
    let Some(first) = points.first() else { return 0 };
    let rows: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect())
        .collect();
    rank_and_pivots(&rows, first.len()).0
}

/// Determinant of a square rational matrix.
pub(crate) fn rational_det(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    let mut scale = BigInt::from(1);
    let int_rows: Vec<IntVector> = rows
        .iter()
        .map(|r| {
            let l = common_denominator(r);
            scale *= &l;
            clear_denominators(r)
        })
        .collect();
    let det = IntMatrix::from_rows(&int_rows, n).determinant();
    Rational::new(det, scale)
}

/// Calls `f` with every `k`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else { return };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Integer normal of the hyperplane through `d` affinely independent integer
/// points of `Z^d`, or `None` when they are dependent.
fn hyperplane_normal(points: &[&IntVector], d: usize) -> Option<IntVector> {
    let base = points[0];
    let rows: Vec<IntVector> = points[1..].iter().map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect()).collect();
    let normal: IntVector = (0..d)
        .map(|j| {
            let minor: Vec<IntVector> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let det = IntMatrix::from_rows(&minor, d - 1).determinant();
            if j % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect();
    primitive_part(&normal).ok()
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Facets of a full-dimensional point configuration in `Q^d`, `d ≥ 1`, as
/// (sorted point indices, outward primitive normal, offset).
fn facets_of(points: &[Vec<Rational>], d: usize) -> Vec<(Vec<usize>, IntVector, Rational)> {
    // scaling by a positive common denominator keeps normals and incidences
    let flat: Vec<Rational> = points.iter().flatten().cloned().collect();
    let scale = common_denominator(&flat);
    let ints: Vec<IntVector> =
        points.iter().map(|p| p.iter().map(|x| x.numer() * (&scale / x.denom())).collect()).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for_each_combination(ints.len(), d, |subset| {
        let chosen: Vec<&IntVector> = subset.iter().map(|&i| &ints[i]).collect();
        let Some(normal) = hyperplane_normal(&chosen, d) else { return };
        let c = dot(&normal, chosen[0]);
        let values: Vec<BigInt> = ints.iter().map(|p| dot(&normal, p)).collect();
        let (normal, c, sign) = if values.iter().all(|v| *v <= c) {
            (normal, c, 1)
        } else if values.iter().all(|v| *v >= c) {
            (normal.iter().map(|x| -x).collect(), -c, -1)
        } else {
            return;
        };
        let on: Vec<usize> = (0..ints.len()).filter(|&i| &values[i] * sign == c).collect();
        if seen.insert(on.clone()) {
            out.push((on, normal, Rational::new(c, scale.clone())));
        }
    });
    out
}

pub(crate) fn hull(rank: usize, mut points: Vec<RationalPoint>) -> Hull {
    points.sort();
    points.dedup();
    if points.len() == 1 {
        return Hull { vertices: points, dim: 0, facets: Vec::new() };
    }
    let diffs: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    let (d, pivots) = rank_and_pivots(&diffs, rank);
    let project = |p: &RationalPoint| -> Vec<Rational> { pivots.iter().map(|&j| p[j].clone()).collect() };

    let projected: Vec<Vec<Rational>> = points.iter().map(project).collect();
    let facets = facets_of(&projected, d);
    let vertices: Vec<RationalPoint> = (0..points.len())
        .filter(|&i| {
            let normals: Vec<Vec<Rational>> = facets
                .iter()
                .filter(|(on, _, _)| on.contains(&i))
                .map(|(_, n, _)| n.iter().map(|x| Rational::from_integer(x.clone())).collect())
                .collect();
            rank_and_pivots(&normals, d).0 == d
        })
        .map(|i| points[i].clone())
        .collect();

    let projected: Vec<Vec<Rational>> = vertices.iter().map(project).collect();
    let mut facets: Vec<Facet> = facets_of(&projected, d)
        .into_iter()
        .map(|(on, n, _)| {
            let mut normal = vec![BigInt::zero(); rank];
            for (k, &j) in pivots.iter().enumerate() {
                normal[j] = n[k].clone();
            }
            let offset = dot_int(&normal, &vertices[on[0]]);
            Facet { vertices: on, normal, offset }
        })
        .collect();
    facets.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    debug_assert!(facets.iter().all(|f| f.normal.iter().any(|x| !x.is_zero())));
    debug_assert!(facets.iter().all(|f| vertices.iter().all(|v| dot_int(&f.normal, v) <= f.offset)));
    Hull { vertices, dim: d, facets }
}
