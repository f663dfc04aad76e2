//! Witnesses that `L(m) = μ*O(1) − Σ m_i E_i` is nef on the blow-up of a
//! complete intersection at very general points.
//!
//! Leaves are toric bounds at a single point (a bound `≥ w` makes `L(w)` nef);
//! a split node records the degeneration of the last hypersurface of degree
//! `a + b` into the union of hypersurfaces of degrees `a` and `b`, which
//! concatenates the weights.

use serde::{Deserialize, Serialize};

use super::chain::chain_bound;
use super::{ci_toric_lower_bound, CIDescriptor, DegenerationError, ExponentMatrix};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ToricWitness {
    /// A chain `d = c_1 ≥ ... ≥ c_n ≥ 1` for a hypersurface.
    Chain { chain: Vec<u64> },
    /// An exponent matrix for `(n; degrees)`, where each degree is at most the
    /// corresponding degree of the certified variety.
    Exponents { degrees: Vec<u64>, matrix: ExponentMatrix },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum NefProvenance {
    Split { left: Box<NefCertificate>, right: Box<NefCertificate> },
    Toric { witness: ToricWitness },
    /// Accepted on the strength of a citation; not recomputed.
    Reference { citation: String },
}

/// Certifies that `L(weights)` is nef on `X^n_{leading_degrees, last_degree}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NefCertificate {
    pub n: usize,
    pub leading_degrees: Vec<u64>,
    pub last_degree: u64,
    pub weights: Vec<u64>,
    pub provenance: NefProvenance,
}

fn invalid(msg: impl Into<String>) -> DegenerationError {
    DegenerationError::InvalidCertificate(msg.into())
}

impl NefCertificate {
    pub fn descriptor(&self) -> Result<CIDescriptor, DegenerationError> {
        let mut degrees = self.leading_degrees.clone();
        degrees.push(self.last_degree);
        CIDescriptor::new(self.n, &degrees)
    }

    /// Leaf for `X^n_d` with weight `w`, using the chain `(d, w^{n−1}, ..., w)`,
    /// whose bound is `w` whenever `d ≥ w^n`.
    pub fn hypersurface_chain_leaf(n: usize, d: u64, w: u64) -> Self {
        let chain: Vec<u64> = std::iter::once(d).chain((1..n).rev().map(|e| w.pow(e as u32))).collect();
        NefCertificate {
            n,
            leading_degrees: Vec::new(),
            last_degree: d,
            weights: vec![w],
            provenance: NefProvenance::Toric { witness: ToricWitness::Chain { chain } },
        }
    }

    /// Recomputes every toric leaf and checks the bookkeeping of every split.
    pub fn validate(&self) -> Result<(), DegenerationError> {
        if self.weights.is_empty() || self.weights.contains(&0) {
            return Err(invalid("weights must be positive"));
        }
        let full = self.descriptor()?;
        match &self.provenance {
            NefProvenance::Reference { .. } => Ok(()),
            NefProvenance::Split { left, right } => {
                if left.n != self.n || right.n != self.n {
                    return Err(invalid("split children have a different dimension"));
                }
                if left.leading_degrees != self.leading_degrees || right.leading_degrees != self.leading_degrees {
                    return Err(invalid("split children have different leading degrees"));
                }
                if left.last_degree + right.last_degree != self.last_degree {
                    return Err(invalid("split degrees do not add up"));
                }
                let mut w = left.weights.clone();
                w.extend(&right.weights);
                if w != self.weights {
                    return Err(invalid("split weights are not the concatenation of the children"));
                }
                left.validate()?;
                right.validate()
            }
            NefProvenance::Toric { witness } => {
                let [weight] = self.weights[..] else {
                    return Err(invalid("a toric leaf certifies a single point"));
                };
                let bound = match witness {
                    ToricWitness::Chain { chain } => {
                        if !self.leading_degrees.is_empty() {
                            return Err(invalid("chains certify hypersurfaces only"));
                        }
                        if chain.len() != self.n || chain[0] != self.last_degree {
                            return Err(invalid("chain must have n entries and start at d"));
                        }
                        if chain.windows(2).any(|w| w[0] < w[1]) || chain[self.n - 1] == 0 {
                            return Err(invalid("chain must be nonincreasing and positive"));
                        }
                        chain_bound(chain)
                    }
                    ToricWitness::Exponents { degrees, matrix } => {
                        let reduced = CIDescriptor::new(self.n, degrees)?;
                        if reduced.k() != full.k()
                            || reduced.degrees.iter().zip(&full.degrees).any(|(r, f)| r > f)
                        {
                            return Err(invalid("witness degrees must be bounded by the certified degrees"));
                        }
                        ci_toric_lower_bound(&reduced, matrix)?.bound
                    }
                };
                if bound < Rational::from_integer(weight.into()) {
                    return Err(invalid(format!("toric bound {bound} is below the weight {weight}")));
                }
                Ok(())
            }
        }
    }
}

/// Combines certificates for `(d_1..d_k, a)` and `(d_1..d_k, b)` into one for
/// `(d_1..d_k, a + b)` with the weights concatenated.
pub fn combine_nef_certificates(a: &NefCertificate, b: &NefCertificate) -> Result<NefCertificate, DegenerationError> {
    if a.n != b.n {
        return Err(DegenerationError::Mismatch(format!("dimensions {} and {}", a.n, b.n)));
    }
    if a.leading_degrees != b.leading_degrees {
        return Err(DegenerationError::Mismatch(format!(
            "leading degrees {:?} and {:?}",
            a.leading_degrees, b.leading_degrees
        )));
    }
    let mut weights = a.weights.clone();
    weights.extend(&b.weights);
    Ok(NefCertificate {
        n: a.n,
        leading_degrees: a.leading_degrees.clone(),
        last_degree: a.last_degree + b.last_degree,
        weights,
        provenance: NefProvenance::Split { left: Box::new(a.clone()), right: Box::new(b.clone()) },
    })
}
