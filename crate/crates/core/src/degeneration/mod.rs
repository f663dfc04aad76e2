//! Degeneration arithmetic for hypersurfaces and complete intersections.
//!
//! A very general complete intersection `X^n_{d_1..d_k}` degenerates to a toric
//! variety whose polytope is `conv(e_1, ..., e_n, −Σ a^(i) e_i)`, where the
//! `a^(i)` come from an exponent matrix `d^(i)_j` with column sums `d_j − 1`.
//! The simplex closed form then bounds the Seshadri constant at a very general
//! point from below by `min_i b^(i) / b^(i+1)`.

mod chain;
mod fano;
mod nef;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::Rational;

pub use chain::{chain_bound, chain_from_matrix, multipoint_hypersurface_bound, optimize_chain, MultipointBound};
pub use fano::{ci_fano_exact_value, fano_table, render_fano_table, CurveWitness, FanoCIValue, FanoRow, Verification};
pub use nef::{combine_nef_certificates, NefCertificate, NefProvenance, ToricWitness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DegenerationError {
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("exponent matrix violates 1 + sum_i d(i)_j = d_j: {0}")]
    InvalidExponents(String),
    #[error("hypothesis of the canonical construction fails: {0}")]
    CanonicalHypothesis(String),
    #[error("not Fano of index >= 1")]
    NotFano,
    #[error("degrees must be at least 2")]
    DegreeTooSmall,
    #[error("mismatched certificates: {0}")]
    Mismatch(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
}

/// `(n; d_1 ≤ ... ≤ d_k)`: an `n`-dimensional complete intersection of
/// hypersurfaces of the given degrees in `P^{n+k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CIDescriptor {
    pub n: usize,
    pub degrees: Vec<u64>,
}

impl CIDescriptor {
    /// Degrees are sorted ascending.
    pub fn new(n: usize, degrees: &[u64]) -> Result<Self, DegenerationError> {
        if n == 0 {
            return Err(DegenerationError::InvalidDescriptor("n must be positive".into()));
        }
        if degrees.is_empty() {
            return Err(DegenerationError::InvalidDescriptor("at least one degree is required".into()));
        }
        if degrees.contains(&0) {
            return Err(DegenerationError::InvalidDescriptor("degrees must be positive".into()));
        }
        let mut degrees = degrees.to_vec();
        degrees.sort_unstable();
        Ok(CIDescriptor { n, degrees })
    }

    pub fn hypersurface(n: usize, d: u64) -> Result<Self, DegenerationError> {
        Self::new(n, &[d])
    }

    pub fn k(&self) -> usize {
        self.degrees.len()
    }
}

/// `d^(i)_j` for `i = 1..n` (rows) and `j = 1..k` (columns).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExponentMatrix {
    pub entries: Vec<Vec<u64>>,
}

impl ExponentMatrix {
    pub fn new(entries: Vec<Vec<u64>>) -> Self {
        ExponentMatrix { entries }
    }

    /// A single column, for hypersurfaces.
    pub fn column(values: &[u64]) -> Self {
        ExponentMatrix { entries: values.iter().map(|&v| vec![v]).collect() }
    }

    pub fn validate(&self, desc: &CIDescriptor) -> Result<(), DegenerationError> {
        if self.entries.len() != desc.n {
            return Err(DegenerationError::InvalidExponents(format!(
                "expected {} rows, found {}",
                desc.n,
                self.entries.len()
            )));
        }
        if let Some(row) = self.entries.iter().find(|r| r.len() != desc.k()) {
            return Err(DegenerationError::InvalidExponents(format!(
                "expected {} columns, found {}",
                desc.k(),
                row.len()
            )));
        }
        for (j, &d) in desc.degrees.iter().enumerate() {
            let sum: u64 = self.entries.iter().map(|r| r[j]).sum();
            if sum + 1 != d {
                return Err(DegenerationError::InvalidExponents(format!(
                    "column {} sums to {sum}, expected {}",
                    j + 1,
                    d - 1
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CIToricBound {
    #[serde(with = "crate::rational::serde_str::rational")]
    pub bound: Rational,
    #[serde(with = "crate::rational::serde_str::int_vec")]
    pub a: Vec<BigInt>,
    #[serde(with = "crate::rational::serde_str::int_vec")]
    pub b: Vec<BigInt>,
}

/// `a^(i) = Σ_j d^(i)_j d_{j+1} ⋯ d_k`, `b^(i) = a^(i) + ... + a^(n) + 1`,
/// bound `min_i b^(i) / b^(i+1)` with `b^(n+1) = 1`.
pub fn ci_toric_lower_bound(desc: &CIDescriptor, e: &ExponentMatrix) -> Result<CIToricBound, DegenerationError> {
    e.validate(desc)?;
    let k = desc.k();
    // suffix[j] = d_{j+1} ⋯ d_k (0-based: product of degrees after column j)
    let mut suffix = vec![BigInt::one(); k];
    for j in (0..k.saturating_sub(1)).rev() {
        suffix[j] = &suffix[j + 1] * BigInt::from(desc.degrees[j + 1]);
    }
    let a: Vec<BigInt> = e
        .entries
        .iter()
        .map(|row| row.iter().zip(&suffix).map(|(&x, s)| BigInt::from(x) * s).sum())
        .collect();
    let mut b = vec![BigInt::zero(); desc.n];
    let mut tail = BigInt::one();
    for i in (0..desc.n).rev() {
        tail += &a[i];
        b[i] = tail.clone();
    }
    let bound = (0..desc.n)
        .map(|i| {
            let next = b.get(i + 1).cloned().unwrap_or_else(BigInt::one);
            Rational::new(b[i].clone(), next)
        })
        .min()
        .expect("n >= 1");
    Ok(CIToricBound { bound, a, b })
}

/// The exponent matrix of the canonical construction: for degrees `c^{l_j}`,
/// `d^(i)_j = (c − 1) c^{h_j − i}` on the block `h_{j−1} < i ≤ h_j`, where
/// `h_j = l_1 + ... + l_j`. Returns the reduced descriptor `(n; c^{l_j})`,
/// which the given one degenerates onto, together with the matrix.
///
/// The block lengths are matched to the sorted degrees, so `l` may be given in
/// any order as long as some assignment satisfies `d_j ≥ c^{l_j}`.
pub fn canonical_exponents(
    desc: &CIDescriptor,
    c: u64,
    l: &[usize],
) -> Result<(CIDescriptor, ExponentMatrix), DegenerationError> {
    if c == 0 {
        return Err(DegenerationError::CanonicalHypothesis("c must be positive".into()));
    }
    if l.len() != desc.k() {
        return Err(DegenerationError::CanonicalHypothesis(format!(
            "{} block lengths for {} degrees",
            l.len(),
            desc.k()
        )));
    }
    if l.iter().sum::<usize>() != desc.n {
        return Err(DegenerationError::CanonicalHypothesis(format!("block lengths must sum to n = {}", desc.n)));
    }
    let mut l = l.to_vec();
    l.sort_unstable();
    let mut reduced = Vec::with_capacity(l.len());
    for (j, (&lj, &dj)) in l.iter().zip(&desc.degrees).enumerate() {
        let power = c
            .checked_pow(lj as u32)
            .filter(|&p| p <= dj)
            .ok_or_else(|| DegenerationError::CanonicalHypothesis(format!("d_{} = {dj} < {c}^{lj}", j + 1)))?;
        reduced.push(power);
    }
    let mut entries = vec![vec![0u64; desc.k()]; desc.n];
    let mut h_prev = 0;
    for (j, &lj) in l.iter().enumerate() {
        let h = h_prev + lj;
        for i in h_prev + 1..=h {
            entries[i - 1][j] = (c - 1) * c.pow((h - i) as u32);
        }
        h_prev = h;
    }
    let reduced = CIDescriptor { n: desc.n, degrees: reduced };
    let e = ExponentMatrix { entries };
    debug_assert!(e.validate(&reduced).is_ok());
    Ok((reduced, e))
}

/// Largest integer `z` with `z^n ≤ q`.
pub fn integer_nth_root_floor(q: &Rational, n: u32) -> BigInt {
    assert!(n >= 1, "root index must be positive");
    if q <= &Rational::zero() {
        return BigInt::zero();
    }
    // z^n ≤ q iff z^n ≤ floor(q) for integer z
    q.floor().to_integer().nth_root(n)
}

/// Largest `c` admitting block lengths with `Σ l_j = n` and `d_j ≥ c^{l_j}`,
/// with one such choice of `l` (matched to the sorted degrees).
pub fn max_canonical_c(desc: &CIDescriptor) -> (u64, Vec<usize>) {
    let fits = |c: u64| -> Option<Vec<usize>> {
        // largest l_j with c^{l_j} <= d_j, capped at n
        let caps: Vec<usize> = desc
            .degrees
            .iter()
            .map(|&d| {
                let mut l = 0usize;
                while l < desc.n && c.checked_pow(l as u32 + 1).is_some_and(|p| p <= d) {
                    l += 1;
                }
                l
            })
            .collect();
        if caps.iter().sum::<usize>() < desc.n {
            return None;
        }
        let mut remaining = desc.n;
        let mut l = vec![0; caps.len()];
        for j in (0..caps.len()).rev() {
            l[j] = caps[j].min(remaining);
            remaining -= l[j];
        }
        Some(l)
    };
    let mut best = (1, fits(1).expect("c = 1 always fits"));
    let mut c = 2;
    while let Some(l) = fits(c) {
        best = (c, l);
        c += 1;
    }
    best
}

/// The exponent choice with the best toric bound found for `desc`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentChoice {
    /// The descriptor the matrix belongs to; it may have smaller degrees than
    /// the input when the canonical construction was used.
    pub descriptor: CIDescriptor,
    pub matrix: ExponentMatrix,
    pub bound: CIToricBound,
}

const EXHAUSTIVE_DEGREE_SUM: u64 = 30;
const EXHAUSTIVE_MATRIX_LIMIT: u128 = 200_000;

fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn binomial(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Chain search for `k = 1`; for `k ≥ 2` an exhaustive search over all
/// matrices when `Σ d_j ≤ 30` and the count is manageable, compared against
/// the canonical construction with the largest `c`.
pub fn best_exponent_matrix(desc: &CIDescriptor) -> ExponentChoice {
    if desc.k() == 1 {
        let (chain, _) = optimize_chain(desc.n, desc.degrees[0]);
        let matrix = chain::matrix_from_chain(&chain);
        let bound = ci_toric_lower_bound(desc, &matrix).expect("chains give valid matrices");
        return ExponentChoice { descriptor: desc.clone(), matrix, bound };
    }
    let (c, l) = max_canonical_c(desc);
    let (reduced, matrix) = canonical_exponents(desc, c, &l).expect("maximal c satisfies the hypotheses");
    let bound = ci_toric_lower_bound(&reduced, &matrix).expect("canonical matrix is valid");
    let canonical = ExponentChoice { descriptor: reduced, matrix, bound };

    let sum: u64 = desc.degrees.iter().sum();
    let count: u128 = desc
        .degrees
        .iter()
        .map(|&d| binomial(d - 1 + desc.n as u64 - 1, desc.n as u64 - 1))
        .product();
    if sum > EXHAUSTIVE_DEGREE_SUM || count > EXHAUSTIVE_MATRIX_LIMIT {
        return canonical;
    }
    let columns: Vec<Vec<Vec<u64>>> = desc.degrees.iter().map(|&d| compositions(d - 1, desc.n)).collect();
    let mut best: Option<ExponentChoice> = None;
    let mut idx = vec![0usize; desc.k()];
    loop {
        let entries: Vec<Vec<u64>> =
            (0..desc.n).map(|i| (0..desc.k()).map(|j| columns[j][idx[j]][i]).collect()).collect();
        let matrix = ExponentMatrix { entries };
        let bound = ci_toric_lower_bound(desc, &matrix).expect("compositions are valid");
        if best.as_ref().is_none_or(|b| bound.bound > b.bound.bound) {
            best = Some(ExponentChoice { descriptor: desc.clone(), matrix, bound });
        }
        let Some(j) = (0..desc.k()).rev().find(|&j| idx[j] + 1 < columns[j].len()) else { break };
        idx[j] += 1;
        for x in idx.iter_mut().skip(j + 1) {
            *x = 0;
        }
    }
    let best = best.expect("at least one matrix");
    if canonical.bound.bound > best.bound.bound {
        canonical
    } else {
        best
    }
}
