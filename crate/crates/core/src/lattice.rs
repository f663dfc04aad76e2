//! Integer linear algebra over `Z^n`.
//!
//! Normal-form conventions are fixed so that every derived basis is
//! reproducible:
//!
//! * Hermite normal form is row-style: `H = U·A`, `H` is in row echelon form,
//!   every pivot is positive and the entries above a pivot lie in `[0, pivot)`.
//!   Zero rows sit at the bottom.
//! * Smith normal form returns `S = U·A·V` with nonnegative diagonal entries
//!   `d_1 | d_2 | ...`.
//!
//! Sublattice and quotient bases are always passed through the Hermite normal
//! form, so they depend only on the lattice and not on the generators given.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::{from_int, Rational};

pub type IntVector = Vec<BigInt>;
/// Integer covector, evaluated on points by the dot product.
pub type Functional = IntVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("zero vector has no primitive part")]
    ZeroVector,
    #[error("functional must be primitive")]
    NotPrimitive,
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vector is not in the span of the basis")]
    NotInSpan,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        write!(f, "IntMatrix{rows:?}")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(rows: &[IntVector], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r.iter().cloned());
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<IntVector> =
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::from_rows(&rows, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<IntVector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> IntVector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(Zero::is_zero)
    }

    /// `A·x` for a column vector `x`.
    pub fn apply(&self, x: &[BigInt]) -> IntVector {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `A·x` for a rational column vector `x`.
    pub fn apply_rational(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(Rational::zero(), |acc, (a, b)| acc + b * from_int(a))
            })
            .collect()
    }

    /// `x·A` for a rational row vector `x`.
    pub fn left_apply_rational(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.rows);
        (0..self.cols)
            .map(|j| {
                (0..self.rows).fold(Rational::zero(), |acc, i| acc + &x[i] * from_int(&self[(i, j)]))
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = v;
        }
    }

    /// row[target] += k · row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = k * &self[(source, j)];
            self[(target, j)] += delta;
        }
    }

    /// col[target] += k · col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = k * &self[(i, source)];
            self[(i, target)] += delta;
        }
    }

    /// Replaces rows `(r, s)` by `(x·r + y·s, -q·r + p·s)`; unimodular when `x·p + y·q = 1`.
    fn combine_rows(&mut self, r: usize, s: usize, x: &BigInt, y: &BigInt, p: &BigInt, q: &BigInt) {
        for j in 0..self.cols {
            let a = self[(r, j)].clone();
            let b = self[(s, j)].clone();
            self[(r, j)] = x * &a + y * &b;
            self[(s, j)] = p * &b - q * &a;
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
            }
            prev = m[(k, k)].clone();
        }
        sign * &m[(n - 1, n - 1)]
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }

    /// Integer inverse of a unimodular matrix (the transform of its Hermite form).
    pub fn inverse_unimodular(&self) -> Result<IntMatrix, LatticeError> {
        if !self.is_unimodular() {
            return Err(LatticeError::NotUnimodular);
        }
        let (h, u) = hermite_normal_form(self);
        debug_assert_eq!(h, IntMatrix::identity(self.rows));
        Ok(u)
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }
}

/// Extended gcd with a nonnegative gcd: returns `(g, x, y)` with `x·a + y·b = g`.
/// When `a` divides `b` the Bézout pair is `(±1, 0)`.
pub fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    if a.is_zero() {
        return (b.abs(), BigInt::zero(), b.signum());
    }
    if (b % a).is_zero() {
        return (a.abs(), a.signum(), BigInt::zero());
    }
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let nr = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, nr);
        let ns = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, ns);
        let nt = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn gcd_of(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

pub fn is_primitive(v: &[BigInt]) -> bool {
    gcd_of(v).is_one()
}

/// `v / gcd(v)`; the result is a positive multiple of `v` with coprime entries.
pub fn primitive_part(v: &[BigInt]) -> Result<IntVector, LatticeError> {
    let g = gcd_of(v);
    if g.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Row-style Hermite normal form: returns `(H, U)` with `H = U·A`, `U` unimodular.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let m = a.rows();
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut r = 0;
    for j in 0..a.cols() {
        if r == m {
            break;
        }
        for i in r + 1..m {
            if h[(i, j)].is_zero() {
                continue;
            }
            if h[(r, j)].is_zero() {
                h.swap_rows(r, i);
                u.swap_rows(r, i);
                continue;
            }
            let (g, x, y) = extended_gcd(&h[(r, j)], &h[(i, j)]);
            let p = &h[(r, j)] / &g;
            let q = &h[(i, j)] / &g;
            h.combine_rows(r, i, &x, &y, &p, &q);
            u.combine_rows(r, i, &x, &y, &p, &q);
        }
        if h[(r, j)].is_zero() {
            continue;
        }
        if h[(r, j)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let k = -h[(i, j)].div_floor(&h[(r, j)]);
            h.add_row_multiple(i, r, &k);
            u.add_row_multiple(i, r, &k);
        }
        r += 1;
    }
    (h, u)
}

/// Number of nonzero rows of a matrix in echelon form.
fn echelon_rank(h: &IntMatrix) -> usize {
    (0..h.rows()).take_while(|&i| !h.is_zero_row(i)).count()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }
}

/// Smith normal form `S = U·A·V` with `d_1 | d_2 | ...` on the diagonal.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    'outer: for t in 0..m.min(n) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if s[(i, j)].is_zero() {
                        continue;
                    }
                    if pivot.is_none_or(|(pi, pj)| s[(i, j)].abs() < s[(pi, pj)].abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break 'outer };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                let q = -(&s[(i, t)] / &s[(t, t)]);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..n {
                let q = -(&s[(t, j)] / &s[(t, t)]);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offending = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !(&s[(i, j)] % &s[(t, t)]).is_zero())
            });
            match offending {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { s, u, v }
}

/// Basis (in Hermite normal form) of the saturated lattice `{x ∈ Z^n : A·x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> Vec<IntVector> {
    let (h, u) = hermite_normal_form(&a.transpose());
    let rank = echelon_rank(&h);
    let kernel: Vec<IntVector> = (rank..u.rows()).map(|i| u.row(i).to_vec()).collect();
    hermite_basis(&kernel, a.cols())
}

/// Hermite-normalized basis of the lattice spanned by `vectors` in `Z^n`.
pub fn hermite_basis(vectors: &[IntVector], n: usize) -> Vec<IntVector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (h, _) = hermite_normal_form(&IntMatrix::from_rows(vectors, n));
    (0..echelon_rank(&h)).map(|i| h.row(i).to_vec()).collect()
}

/// Coefficients `c` with `Σ c_i·basis_i = x`, for a basis in row echelon form.
pub fn solve_in_echelon_basis(
    basis: &[IntVector],
    x: &[Rational],
) -> Result<Vec<Rational>, LatticeError> {
    let mut rest: Vec<Rational> = x.to_vec();
    let mut coeffs = Vec::with_capacity(basis.len());
    for b in basis {
        let p = b.iter().position(|e| !e.is_zero()).ok_or(LatticeError::ZeroVector)?;
        let c = &rest[p] / from_int(&b[p]);
        for (r, e) in rest.iter_mut().zip(b) {
            *r -= &c * from_int(e);
        }
        coeffs.push(c);
    }
    if rest.iter().all(Zero::is_zero) {
        Ok(coeffs)
    } else {
        Err(LatticeError::NotInSpan)
    }
}

/// Surjection `Z^n → Z^r` whose kernel is a saturated sublattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    pub source_rank: usize,
    pub target_rank: usize,
    /// `r × n`, rows in Hermite normal form.
    pub matrix: IntMatrix,
    /// `n − r` vectors in Hermite normal form spanning the kernel.
    pub kernel_basis: Vec<IntVector>,
}

impl QuotientMap {
    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        self.matrix.apply_rational(x)
    }

    pub fn is_surjective(&self) -> bool {
        let snf = smith_normal_form(&self.matrix);
        let factors = snf.invariant_factors();
        factors.len() == self.target_rank && factors.iter().all(One::is_one)
    }
}

/// Projection of `Z^n` onto `Z^n / (saturation of span(generators))`.
pub fn quotient_projection(
    generators: &[IntVector],
    ambient_rank: usize,
) -> Result<QuotientMap, LatticeError> {
    if let Some(g) = generators.iter().find(|g| g.len() != ambient_rank) {
        return Err(LatticeError::DimensionMismatch { expected: ambient_rank, found: g.len() });
    }
    let gens = IntMatrix::from_rows(generators, ambient_rank);
    let annihilator = integer_kernel(&gens);
    let matrix = IntMatrix::from_rows(&annihilator, ambient_rank);
    let kernel_basis = integer_kernel(&matrix);
    Ok(QuotientMap {
        source_rank: ambient_rank,
        target_rank: annihilator.len(),
        matrix,
        kernel_basis,
    })
}

/// Splitting `Z^n ≅ ker(w) ⊕ Z·section` of a primitive functional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelSplitting {
    pub functional: Functional,
    pub kernel_basis: Vec<IntVector>,
    pub section: IntVector,
    /// Inverse of the matrix with rows `kernel_basis..., section`.
    inverse: IntMatrix,
}

impl KernelSplitting {
    /// Coordinates of `x` in the basis `(kernel_basis, section)`; the last entry is `w(x)`.
    pub fn coordinates(&self, x: &[Rational]) -> Vec<Rational> {
        self.inverse.left_apply_rational(x)
    }

    /// Coordinates of `x` along the kernel basis only.
    pub fn kernel_coordinates(&self, x: &[Rational]) -> Vec<Rational> {
        let mut c = self.coordinates(x);
        c.pop();
        c
    }

    /// `t·section + Σ c_i·kernel_basis_i`.
    pub fn lift(&self, c: &[Rational], t: &Rational) -> Vec<Rational> {
        let n = self.section.len();
        let mut x: Vec<Rational> = self.section.iter().map(|s| from_int(s) * t).collect();
        for (ci, k) in c.iter().zip(&self.kernel_basis) {
            for j in 0..n {
                x[j] += ci * from_int(&k[j]);
            }
        }
        x
    }

    pub fn basis_matrix(&self) -> IntMatrix {
        let mut rows = self.kernel_basis.clone();
        rows.push(self.section.clone());
        IntMatrix::from_rows(&rows, self.section.len())
    }
}

pub fn kernel_splitting(w: &[BigInt]) -> Result<KernelSplitting, LatticeError> {
    if !is_primitive(w) {
        return Err(LatticeError::NotPrimitive);
    }
    let n = w.len();
    let mut section = vec![BigInt::zero(); n];
    let mut g = BigInt::zero();
    for (i, wi) in w.iter().enumerate() {
        let (ng, x, y) = extended_gcd(&g, wi);
        for s in section.iter_mut().take(i) {
            *s *= &x;
        }
        section[i] = y;
        g = ng;
    }
    debug_assert!(g.is_one());
    let kernel_basis = integer_kernel(&IntMatrix::from_rows(&[w.to_vec()], n));
    let mut rows = kernel_basis.clone();
    rows.push(section.clone());
    let inverse = IntMatrix::from_rows(&rows, n).inverse_unimodular()?;
    Ok(KernelSplitting { functional: w.to_vec(), kernel_basis, section, inverse })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};
    use proptest::prelude::*;

    fn iv(v: &[i64]) -> IntVector {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn is_hnf(h: &IntMatrix) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for i in 0..h.rows() {
            match h.row(i).iter().position(|x| !x.is_zero()) {
                None => seen_zero = true,
                Some(p) => {
                    if seen_zero || last_pivot.is_some_and(|lp| p <= lp) {
                        return false;
                    }
                    let piv = &h[(i, p)];
                    if !piv.is_positive() {
                        return false;
                    }
                    if (0..i).any(|k| h[(k, p)].is_negative() || &h[(k, p)] >= piv) {
                        return false;
                    }
                    last_pivot = Some(p);
                }
            }
        }
        true
    }

    #[test]
    fn primitive_part_examples() {
        assert_eq!(primitive_part(&iv(&[-2, -1])).unwrap(), iv(&[-2, -1]));
        assert_eq!(primitive_part(&iv(&[4, 6])).unwrap(), iv(&[2, 3]));
        assert_eq!(primitive_part(&iv(&[0, 0, 5])).unwrap(), iv(&[0, 0, 1]));
        assert_eq!(primitive_part(&iv(&[0, 0])), Err(LatticeError::ZeroVector));
    }

    #[test]
    fn hnf_examples() {
        let id = IntMatrix::identity(3);
        assert_eq!(hermite_normal_form(&id), (id.clone(), id.clone()));

        let a = IntMatrix::from_i64(&[&[2, 4], &[0, 3]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(&u * &a, h);
        assert!(u.determinant().abs().is_one());
        assert!(is_hnf(&h));
        // det(A) = 6 and the form is triangular, so the diagonal multiplies to 6.
        assert_eq!(&h[(0, 0)] * &h[(1, 1)], BigInt::from(6));

        let z = IntMatrix::zeros(2, 2);
        assert_eq!(hermite_normal_form(&z), (z.clone(), IntMatrix::identity(2)));
    }

    #[test]
    fn snf_examples() {
        let snf = smith_normal_form(&IntMatrix::identity(2));
        assert_eq!(snf.s, IntMatrix::identity(2));

        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let snf = smith_normal_form(&a);
        assert_eq!(&(&snf.u * &a) * &snf.v, snf.s);
        assert_eq!(snf.s, IntMatrix::from_i64(&[&[1, 0], &[0, 6]]));

        let a = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        let snf = smith_normal_form(&a);
        assert_eq!(&(&snf.u * &a) * &snf.v, snf.s);
        // |det| = 8 and gcd of entries = 2
        assert_eq!(snf.s, IntMatrix::from_i64(&[&[2, 0], &[0, 4]]));
    }

    #[test]
    fn quotient_examples() {
        let q = quotient_projection(&[iv(&[-1, 1])], 2).unwrap();
        assert_eq!(q.target_rank, 1);
        assert_eq!(q.matrix, IntMatrix::from_i64(&[&[1, 1]]));
        assert!(q.is_surjective());
        // images of the triangle vertices span a segment of lattice length 3
        let imgs: Vec<Rational> = [[1, 0], [0, 1], [-1, -1]]
            .iter()
            .map(|v| q.apply(&[rat(v[0]), rat(v[1])])[0].clone())
            .collect();
        let lo = imgs.iter().min().unwrap();
        let hi = imgs.iter().max().unwrap();
        assert_eq!(hi - lo, rat(3));

        let q = quotient_projection(&[], 2).unwrap();
        assert_eq!(q.matrix, IntMatrix::identity(2));
        assert!(q.kernel_basis.is_empty());

        let q = quotient_projection(&[iv(&[1, 0, 0]), iv(&[0, 1, 0])], 3).unwrap();
        assert_eq!(q.matrix, IntMatrix::from_i64(&[&[0, 0, 1]]));
        assert_eq!(q.kernel_basis, vec![iv(&[1, 0, 0]), iv(&[0, 1, 0])]);
    }

    #[test]
    fn quotient_saturates() {
        // span{(2, 0)} saturates to span{(1, 0)}
        let q = quotient_projection(&[iv(&[2, 0])], 2).unwrap();
        assert_eq!(q.kernel_basis, vec![iv(&[1, 0])]);
        assert_eq!(q.matrix, IntMatrix::from_i64(&[&[0, 1]]));
    }

    #[test]
    fn splitting_examples() {
        let s = kernel_splitting(&iv(&[0, 1])).unwrap();
        assert_eq!(s.kernel_basis, vec![iv(&[1, 0])]);
        assert_eq!(s.section, iv(&[0, 1]));

        let s = kernel_splitting(&iv(&[1, 1])).unwrap();
        assert_eq!(s.kernel_basis, vec![iv(&[1, -1])]);
        assert_eq!(s.section, iv(&[1, 0]));

        let s = kernel_splitting(&iv(&[2, 3])).unwrap();
        assert_eq!(s.kernel_basis, vec![iv(&[3, -2])]);
        assert_eq!(s.section, iv(&[-1, 1]));

        assert_eq!(kernel_splitting(&iv(&[2, 4])), Err(LatticeError::NotPrimitive));
    }

    #[test]
    fn splitting_coordinates_roundtrip() {
        let s = kernel_splitting(&iv(&[0, 1])).unwrap();
        let c = s.coordinates(&[frac(-1, 2), rat(0)]);
        assert_eq!(c, vec![frac(-1, 2), rat(0)]);
        assert_eq!(s.lift(&[frac(-1, 2)], &rat(0)), vec![frac(-1, 2), rat(0)]);
    }

    #[test]
    fn unimodular_inverse() {
        let u = IntMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        let inv = u.inverse_unimodular().unwrap();
        assert_eq!(&u * &inv, IntMatrix::identity(2));
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 1]]);
        assert_eq!(a.inverse_unimodular(), Err(LatticeError::NotUnimodular));
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..4, 1usize..4).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-6i64..7, r * c).prop_map(move |v| {
                let rows: Vec<IntVector> = v.chunks(c).map(iv).collect();
                IntMatrix::from_rows(&rows, c)
            })
        })
    }

    proptest! {
        #[test]
        fn hnf_is_valid(a in small_matrix()) {
            let (h, u) = hermite_normal_form(&a);
            prop_assert_eq!(&u * &a, h.clone());
            prop_assert!(u.determinant().abs().is_one());
            prop_assert!(is_hnf(&h));
        }

        #[test]
        fn snf_is_valid(a in small_matrix()) {
            let f = smith_normal_form(&a);
            prop_assert_eq!(&(&f.u * &a) * &f.v, f.s.clone());
            prop_assert!(f.u.determinant().abs().is_one());
            prop_assert!(f.v.determinant().abs().is_one());
            for i in 0..f.s.rows() {
                for j in 0..f.s.cols() {
                    if i != j {
                        prop_assert!(f.s[(i, j)].is_zero());
                    }
                }
            }
            let d = f.invariant_factors();
            prop_assert!(d.iter().all(|x| x.is_positive()));
            for w in d.windows(2) {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }

        #[test]
        fn quotient_kills_generators(a in small_matrix()) {
            let gens = a.row_vectors();
            let q = quotient_projection(&gens, a.cols()).unwrap();
            for g in &gens {
                prop_assert!(q.matrix.apply(g).iter().all(Zero::is_zero));
            }
            prop_assert!(q.is_surjective());
            prop_assert_eq!(q.kernel_basis.len() + q.target_rank, a.cols());
        }

        #[test]
        fn splitting_is_unimodular(v in proptest::collection::vec(-9i64..10, 1..5)) {
            let w = iv(&v);
            prop_assume!(!gcd_of(&w).is_zero());
            let w = primitive_part(&w).unwrap();
            let s = kernel_splitting(&w).unwrap();
            for k in &s.kernel_basis {
                prop_assert!(k.iter().zip(&w).map(|(a, b)| a * b).sum::<BigInt>().is_zero());
            }
            let ws: BigInt = s.section.iter().zip(&w).map(|(a, b)| a * b).sum();
            prop_assert!(ws.is_one());
            prop_assert!(s.basis_matrix().is_unimodular());
        }
    }
}
