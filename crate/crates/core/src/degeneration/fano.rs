//! Complete-intersection Fano values at a very general point and the table of
//! Seshadri constants of `−K_X` on Fano 3-folds of Picard number one.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;

use super::chain::optimize_chain;
use super::{best_exponent_matrix, ci_toric_lower_bound, CIDescriptor, DegenerationError, ExponentMatrix};
use crate::estimator::{estimate_interior, simplex_lower_bound, SearchStrategy};
use crate::polytope::LatticePolytope;
use crate::rational::{format_rational, frac, rat, Rational};

/// A curve through the point with `degree / multiplicity` equal to the value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveWitness {
    #[serde(with = "crate::rational::serde_str::int")]
    pub degree: BigInt,
    #[serde(with = "crate::rational::serde_str::int")]
    pub multiplicity: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanoCIValue {
    #[serde(with = "crate::rational::serde_str::rational")]
    pub value: Rational,
    pub witness: Option<CurveWitness>,
    /// The toric bound of the block matrix with `d_j − 1` consecutive ones in
    /// column `j`.
    #[serde(with = "crate::rational::serde_str::rational")]
    pub toric_lower: Rational,
}

fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Column `j` has ones in rows `h'_{j−1} < i ≤ h'_j`, `h'_j = Σ_{l ≤ j} (d_l − 1)`;
/// rows past `Σ (d_j − 1)` are zero.
fn block_matrix(desc: &CIDescriptor) -> ExponentMatrix {
    let mut entries = vec![vec![0u64; desc.k()]; desc.n];
    let mut row = 0;
    for (j, &d) in desc.degrees.iter().enumerate() {
        for _ in 1..d {
            entries[row][j] = 1;
            row += 1;
        }
    }
    ExponentMatrix::new(entries)
}

/// `ε(X, O(1); 1)` for a very general complete intersection of index at least
/// one: `1` when `Σ d_j < n + k` (covered by lines), `d_k / (d_k − 1)` when
/// `Σ d_j = n + k`.
pub fn ci_fano_exact_value(desc: &CIDescriptor) -> Result<FanoCIValue, DegenerationError> {
    if desc.degrees.iter().any(|&d| d < 2) {
        return Err(DegenerationError::DegreeTooSmall);
    }
    let sum: u64 = desc.degrees.iter().sum();
    let nk = (desc.n + desc.k()) as u64;
    if sum > nk {
        return Err(DegenerationError::NotFano);
    }
    let toric_lower = ci_toric_lower_bound(desc, &block_matrix(desc))?.bound;
    if sum < nk {
        return Ok(FanoCIValue { value: rat(1), witness: None, toric_lower });
    }
    let dk = *desc.degrees.last().expect("k >= 1");
    let leading: BigInt = desc.degrees[..desc.k() - 1].iter().map(|&d| factorial(d)).product();
    let witness = CurveWitness {
        degree: &leading * factorial(dk - 2) * BigInt::from(dk),
        multiplicity: &leading * factorial(dk - 1),
    };
    Ok(FanoCIValue { value: frac(dk as i64, dk as i64 - 1), witness: Some(witness), toric_lower })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verification {
    /// The lower bound is recomputed here and equals the value.
    Computed,
    /// The value is stored with a citation.
    Reference,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanoRow {
    pub no: u32,
    pub index: u32,
    /// `(−K_X)^3`, written as in the usual table (`8·3` for index two).
    pub degree: String,
    pub description: String,
    #[serde(with = "crate::rational::serde_str::rational")]
    pub value: Rational,
    pub verification: Verification,
    #[serde(with = "crate::rational::serde_str::option_rational")]
    pub computed_lower: Option<Rational>,
    pub method: String,
    pub citation: Option<String>,
}

impl FanoRow {
    /// Computed rows must reproduce their value; reference rows must cite.
    pub fn is_consistent(&self) -> bool {
        match self.verification {
            Verification::Computed => self.computed_lower.as_ref() == Some(&self.value),
            Verification::Reference => self.citation.is_some(),
        }
    }
}

const CONICS: &str = "lower bound 2 from the toric degenerations of Ilten-Lewis-Przyjemski; \
                      upper bound 2 since X is covered by conics (Iskovskikh-Prokhorov, ch. 4)";
const DEL_PEZZO_LOWER: &str = "lower bound 2 from the toric degenerations of Ilten-Lewis-Przyjemski";
const DEL_PEZZO_UPPER: &str = "upper bound 2: otherwise the blow-up is a Del Pezzo 3-fold of Picard \
                               number 2 with degree 8·6 or 8·7, impossible for H^3 <= 5 \
                               (Iskovskikh-Prokhorov, 12.1)";
const LINES: &str = "upper bound: X is covered by lines";

fn computed(no: u32, index: u32, degree: &str, description: &str, value: Rational, lower: Rational, method: String, citation: Option<&str>) -> FanoRow {
    FanoRow {
        no,
        index,
        degree: degree.into(),
        description: description.into(),
        value,
        verification: Verification::Computed,
        computed_lower: Some(lower),
        method,
        citation: citation.map(str::to_owned),
    }
}

fn reference(no: u32, index: u32, degree: &str, description: &str, citation: String) -> FanoRow {
    FanoRow {
        no,
        index,
        degree: degree.into(),
        description: description.into(),
        value: rat(2),
        verification: Verification::Reference,
        computed_lower: None,
        method: "stored value".into(),
        citation: Some(citation),
    }
}

fn ci_row(no: u32, degree: &str, description: &str, degrees: &[u64]) -> FanoRow {
    let desc = CIDescriptor::new(3, degrees).expect("valid descriptor");
    let v = ci_fano_exact_value(&desc).expect("Fano of index one");
    computed(
        no,
        1,
        degree,
        description,
        v.value,
        v.toric_lower,
        format!("complete intersection {degrees:?}: block exponent matrix, curve witness for the upper bound"),
        None,
    )
}

fn interior_lower(points: &[&[i64]]) -> Rational {
    let p = LatticePolytope::from_integer_points(points).expect("fixed polytope");
    estimate_interior(&p, &SearchStrategy::default_for_rank(3)).expect("full-dimensional").lower
}

/// `index · (best toric bound for H)` for a hypersurface or complete intersection.
fn index_times_h(index: u32, degrees: &[u64]) -> Rational {
    let h = if let [d] = degrees {
        optimize_chain(3, *d).1
    } else {
        best_exponent_matrix(&CIDescriptor::new(3, degrees).expect("valid descriptor")).bound.bound
    };
    rat(index as i64) * h
}

/// The 17 rows, with the lower bound recomputed wherever the degeneration is
/// explicit.
pub fn fano_table() -> Vec<FanoRow> {
    let third = frac(1, 3);
    let row1 = simplex_lower_bound(&[third.clone(), third.clone(), third]);
    vec![
        computed(
            1,
            1,
            "2",
            "hypersurface of degree 6 in P(1,1,1,1,3)",
            frac(6, 5),
            row1,
            "simplex bound at a = (1/3, 1/3, 1/3)".into(),
            Some("upper bound from a curve on a double cover surface"),
        ),
        ci_row(2, "4", "quartic", &[4]),
        ci_row(3, "6", "complete intersection of a quadric and a cubic", &[2, 3]),
        ci_row(4, "8", "complete intersection of three quadrics", &[2, 2, 2]),
        reference(5, 1, "10", "section of G(2,5) by 2 hyperplanes and a quadric", CONICS.into()),
        reference(6, 1, "12", "X_12 in P^8", CONICS.into()),
        reference(7, 1, "14", "section of G(2,6) by 5 hyperplanes", CONICS.into()),
        reference(8, 1, "16", "X_16 in P^10", CONICS.into()),
        reference(9, 1, "18", "X_18 in P^11", CONICS.into()),
        reference(10, 1, "22", "X_22 in P^13", CONICS.into()),
        computed(
            11,
            2,
            "8·1",
            "hypersurface of degree 6 in P(1,1,1,2,3)",
            rat(2),
            interior_lower(&[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[-2, -2, 2]]),
            "interior estimate of conv(0, 2e1, 2e2, -2e1-2e2+2e3)".into(),
            Some(DEL_PEZZO_UPPER),
        ),
        reference(12, 2, "8·2", "hypersurface of degree 4 in P(1,1,1,1,2)", format!("{DEL_PEZZO_LOWER}; {DEL_PEZZO_UPPER}")),
        computed(13, 2, "8·3", "cubic", rat(2), index_times_h(2, &[3]), "2 · chain bound of the cubic".into(), Some(DEL_PEZZO_UPPER)),
        computed(
            14,
            2,
            "8·4",
            "complete intersection of two quadrics",
            rat(2),
            index_times_h(2, &[2, 2]),
            "2 · exponent matrix bound of (3; 2, 2)".into(),
            Some(DEL_PEZZO_UPPER),
        ),
        reference(15, 2, "8·5", "section of G(2,5) by 3 hyperplanes", format!("{DEL_PEZZO_LOWER}; {DEL_PEZZO_UPPER}")),
        computed(16, 3, "27·2", "quadric", rat(3), index_times_h(3, &[2]), "3 · chain bound of the quadric".into(), Some(LINES)),
        computed(
            17,
            4,
            "64·1",
            "P^3",
            rat(4),
            interior_lower(&[&[-1, -1, -1], &[3, -1, -1], &[-1, 3, -1], &[-1, -1, 3]]),
            "interior estimate of 4 times the standard simplex".into(),
            Some(LINES),
        ),
    ]
}

/// Aligned text table: No., Index, (-K)^3, value, verification.
pub fn render_fano_table(rows: &[FanoRow]) -> String {
    let header = ["No.", "Index", "(-K)^3", "value", "verification"];
    let cells: Vec<[String; 5]> = rows
        .iter()
        .map(|r| {
            let v = match r.verification {
                Verification::Computed => "COMPUTED",
                Verification::Reference => "REFERENCE",
            };
            [r.no.to_string(), r.index.to_string(), r.degree.clone(), format_rational(&r.value), v.to_string()]
        })
        .collect();
    let mut widths = header.map(|h| h.chars().count());
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cols: &[String]| {
        let padded: Vec<String> = cols
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(&header.map(String::from));
    for row in &cells {
        line(row);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn desc(n: usize, d: &[u64]) -> CIDescriptor {
        CIDescriptor::new(n, d).unwrap()
    }

    #[test]
    fn index_one_values() {
        for (d, v) in [(&[4][..], frac(4, 3)), (&[2, 3][..], frac(3, 2)), (&[2, 2, 2][..], rat(2))] {
            let r = ci_fano_exact_value(&desc(3, d)).unwrap();
            assert_eq!(r.value, v);
            assert_eq!(r.toric_lower, v);
            let w = r.witness.unwrap();
            assert_eq!(Rational::new(w.degree, w.multiplicity), v);
        }
        let r = ci_fano_exact_value(&desc(3, &[4])).unwrap().witness.unwrap();
        assert_eq!((r.degree, r.multiplicity), (BigInt::from(8), BigInt::from(6)));
    }

    #[test]
    fn higher_index_and_errors() {
        let r = ci_fano_exact_value(&desc(3, &[3])).unwrap();
        assert_eq!(r.value, rat(1));
        assert!(r.witness.is_none());
        assert_eq!(ci_fano_exact_value(&desc(3, &[5])), Err(DegenerationError::NotFano));
        assert_eq!(ci_fano_exact_value(&desc(3, &[1, 3])), Err(DegenerationError::DegreeTooSmall));
    }

    #[test]
    fn table_values() {
        let rows = fano_table();
        assert_eq!(rows.len(), 17);
        let mut expected = vec![frac(6, 5), frac(4, 3), frac(3, 2)];
        expected.extend(std::iter::repeat_n(rat(2), 12));
        expected.extend([rat(3), rat(4)]);
        for (r, v) in rows.iter().zip(&expected) {
            assert_eq!(&r.value, v, "row {}", r.no);
            assert!(r.is_consistent(), "row {}", r.no);
        }
        let computed: Vec<u32> = rows.iter().filter(|r| r.verification == Verification::Computed).map(|r| r.no).collect();
        assert_eq!(computed, vec![1, 2, 3, 4, 11, 13, 14, 16, 17]);
    }

    #[test]
    fn text_table() {
        let text = render_fano_table(&fano_table());
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 18);
        assert!(lines[0].starts_with("No."));
        assert!(lines[1].contains("6/5") && lines[1].contains("COMPUTED"));
        assert!(lines[7].contains("REFERENCE"));
    }
}
