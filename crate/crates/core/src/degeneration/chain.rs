//! Hypersurfaces: chain optimisation and the multi-point floor bound.
//!
//! For `k = 1` the exponent matrices correspond exactly to integer chains
//! `d = c_1 ≥ c_2 ≥ ... ≥ c_n ≥ 1` via `c_i = b^(i)`, and the toric bound is
//! `min{c_n, c_{n−1}/c_n, ..., c_1/c_2}`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::nef::{combine_nef_certificates, NefCertificate};
use super::{integer_nth_root_floor, DegenerationError, ExponentMatrix};
use crate::estimator::BoundValue;
use crate::rational::{pow, Rational};

fn ratio(a: u64, b: u64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

/// `min{c_n, c_{n−1}/c_n, ..., c_1/c_2}` for a nonincreasing chain of positive integers.
pub fn chain_bound(chain: &[u64]) -> Rational {
    let last = *chain.last().expect("nonempty chain");
    chain
        .windows(2)
        .map(|w| ratio(w[0], w[1]))
        .chain(std::iter::once(ratio(last, 1)))
        .min()
        .expect("nonempty")
}

/// `d^(i) = c_i − c_{i+1}` with `c_{n+1} = 1`.
pub(crate) fn matrix_from_chain(chain: &[u64]) -> ExponentMatrix {
    let col: Vec<u64> = chain
        .iter()
        .enumerate()
        .map(|(i, &c)| c - chain.get(i + 1).copied().unwrap_or(1))
        .collect();
    ExponentMatrix::column(&col)
}

/// Inverse of the chain parametrization for single-column matrices.
pub fn chain_from_matrix(e: &ExponentMatrix) -> Vec<u64> {
    let mut chain = vec![0; e.entries.len()];
    let mut tail = 1;
    for i in (0..e.entries.len()).rev() {
        tail += e.entries[i][0];
        chain[i] = tail;
    }
    chain
}

struct ChainSearch {
    n: usize,
    best: Option<(Rational, Vec<u64>)>,
}

impl ChainSearch {
    fn beats(&self, v: &Rational) -> bool {
        self.best.as_ref().is_none_or(|(b, _)| v > b)
    }

    fn dfs(&mut self, chain: &mut Vec<u64>, cur: Option<Rational>) {
        let m = chain.len();
        let last = chain[m - 1];
        if m == self.n {
            let v = cur.map_or(ratio(last, 1), |c| c.min(ratio(last, 1)));
            if self.beats(&v) {
                self.best = Some((v, chain.clone()));
            }
            return;
        }
        if let Some((b, _)) = &self.best {
            // the remaining n − m + 1 factors multiply to `last`, so their
            // minimum is at most the (n − m + 1)-th root of `last`
            if pow(b, (self.n - m + 1) as u32) >= ratio(last, 1) {
                return;
            }
            if cur.as_ref().is_some_and(|c| c <= b) {
                return;
            }
        }
        for next in 1..=last {
            let r = ratio(last, next);
            if !self.beats(&r) {
                break;
            }
            let cur_next = match &cur {
                Some(c) if c < &r => c.clone(),
                _ => r,
            };
            chain.push(next);
            self.dfs(chain, Some(cur_next));
            chain.pop();
        }
    }
}

/// The best chain `d = c_1 ≥ ... ≥ c_n ≥ 1`; ties go to the lexicographically
/// smallest chain.
pub fn optimize_chain(n: usize, d: u64) -> (Vec<u64>, Rational) {
    assert!(n >= 1 && d >= 1, "n and d must be positive");
    let mut search = ChainSearch { n, best: None };
    search.dfs(&mut vec![d], None);
    let (bound, chain) = search.best.expect("a chain always exists");
    (chain, bound)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultipointBound {
    /// `⌊ⁿ√(d / Σ m_i^n)⌋`.
    #[serde(with = "crate::rational::serde_str::rational")]
    pub floor: Rational,
    /// Best certified lower bound: the floor, or the chain bound when `r = 1`.
    #[serde(with = "crate::rational::serde_str::rational")]
    pub lower: Rational,
    /// `d = Σ d_i` with `d_i ≥ (c m_i)^n`; empty when `c = 0`.
    pub split: Vec<u64>,
    pub upper: BoundValue,
    pub certificate: Option<NefCertificate>,
    /// Single-point chain refinement.
    pub chain: Option<Vec<u64>>,
}

/// Bounds for `ε(X^n_d, O(1); m)` at very general points with weights `m`.
pub fn multipoint_hypersurface_bound(n: usize, d: u64, m: &[u64]) -> Result<MultipointBound, DegenerationError> {
    if n == 0 || d == 0 {
        return Err(DegenerationError::InvalidDescriptor("n and d must be positive".into()));
    }
    if m.is_empty() || m.contains(&0) {
        return Err(DegenerationError::InvalidDescriptor("weights must be positive".into()));
    }
    let s: BigInt = m.iter().map(|&x| num_traits::pow(BigInt::from(x), n)).sum();
    let q = Rational::new(BigInt::from(d), s);
    let upper = BoundValue::root(q.clone(), n as u32);
    let c = integer_nth_root_floor(&q, n as u32);
    let (chain, chain_value) = if m.len() == 1 {
        let (chain, v) = optimize_chain(n, d);
        (Some(chain), Some(v / Rational::from_integer(BigInt::from(m[0]))))
    } else {
        (None, None)
    };
    let floor = Rational::from_integer(c.clone());
    let lower = match &chain_value {
        Some(v) if v > &floor => v.clone(),
        _ => floor.clone(),
    };
    if c.is_zero() {
        return Ok(MultipointBound { floor, lower, split: Vec::new(), upper, certificate: None, chain });
    }
    let c = c.to_u64().expect("c ≤ d");
    let mut split: Vec<u64> = m.iter().map(|&mi| (c * mi).pow(n as u32)).collect();
    let used: u64 = split.iter().sum();
    split[0] += d - used;

    let mut leaves = split
        .iter()
        .zip(m)
        .map(|(&di, &mi)| NefCertificate::hypersurface_chain_leaf(n, di, c * mi));
    let first = leaves.next().expect("nonempty weights");
    let certificate = leaves.try_fold(first, |acc, leaf| combine_nef_certificates(&acc, &leaf))?;
    Ok(MultipointBound { floor, lower, split, upper, certificate: Some(certificate), chain })
}
