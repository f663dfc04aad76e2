//! Named reference values, each recomputed from first principles and compared
//! exactly. Values are rendered as strings: rationals as `p/q`, root values as
//! their JSON record.

use std::sync::OnceLock;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::degeneration::{
    ci_fano_exact_value, fano_table, multipoint_hypersurface_bound, optimize_chain, CIDescriptor, FanoRow,
};
use crate::estimator::{estimate_interior, simplex_lower_bound, verify_certificate, BoundReport, Certificate, SearchStrategy};
use crate::orbit::bound_at_orbit;
use crate::polytope::LatticePolytope;
use crate::rational::{format_rational, frac, rat, Rational};

type Compute = fn() -> Result<String, String>;

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub expected: String,
    compute: Compute,
}

impl Fixture {
    fn new(name: &'static str, expected: &str, compute: Compute) -> Self {
        Fixture { name, expected: expected.into(), compute }
    }

    pub fn compute(&self) -> Result<String, String> {
        (self.compute)()
    }

    /// The same computation checked against a different expected value.
    pub fn with_expected(&self, expected: impl Into<String>) -> Self {
        Fixture { expected: expected.into(), ..self.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureOutcome {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

fn q(x: &Rational) -> String {
    format_rational(x)
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn poly(points: &[&[i64]]) -> Result<LatticePolytope, String> {
    LatticePolytope::from_integer_points(points).map_err(err)
}

fn triangle() -> Result<LatticePolytope, String> {
    poly(&[&[1, 0], &[0, 1], &[-1, -1]])
}

fn four_simplex() -> Result<LatticePolytope, String> {
    poly(&[&[-1, -1, -1], &[3, -1, -1], &[-1, 3, -1], &[-1, -1, 3]])
}

/// Runs the default search and re-verifies the lower certificate.
fn interior(p: &LatticePolytope) -> Result<BoundReport, String> {
    let r = estimate_interior(p, &SearchStrategy::default_for_rank(p.rank())).map_err(err)?;
    let v = verify_certificate(p, &r.lower_certificate).map_err(err)?;
    if v != r.lower {
        return Err(format!("certificate verifies to {} instead of {}", q(&v), q(&r.lower)));
    }
    Ok(r)
}

fn triangle_lower() -> Result<String, String> {
    Ok(q(&interior(&triangle()?)?.lower))
}

fn triangle_upper() -> Result<String, String> {
    Ok(interior(&triangle()?)?.upper.to_json().to_string())
}

/// `width/slice` of the top projection node.
fn triangle_intermediates() -> Result<String, String> {
    match interior(&triangle()?)?.lower_certificate {
        Certificate::Projection { w, t, width, child } => {
            let w: Vec<String> = w.iter().map(BigInt::to_string).collect();
            Ok(format!("w=({}) t={} width={} slice={}", w.join(","), q(&t), q(&width), q(&child.value())))
        }
        other => Err(format!("unexpected certificate {other:?}")),
    }
}

fn product_2x3() -> Result<String, String> {
    let r = interior(&poly(&[&[0, 0], &[2, 0], &[0, 3], &[2, 3]])?)?;
    Ok(format!("{} exact={}", q(&r.lower), r.exact))
}

fn four_simplex_interior() -> Result<String, String> {
    let r = interior(&four_simplex()?)?;
    Ok(format!("{} exact={}", q(&r.lower), r.exact))
}

fn doubled_weighted() -> Result<String, String> {
    let r = interior(&poly(&[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[-2, -2, 2]])?)?;
    Ok(format!("{} exact={}", q(&r.lower), r.exact))
}

fn simplex_third() -> Result<String, String> {
    Ok(q(&simplex_lower_bound(&[frac(1, 3), frac(1, 3), frac(1, 3)])))
}

fn simplex_ones() -> Result<String, String> {
    Ok(q(&simplex_lower_bound(&[rat(1), rat(1), rat(1)])))
}

/// The common exact value of every face of the given dimension.
fn orbit_value(p: &LatticePolytope, dim: usize) -> Result<String, String> {
    let mut values = Vec::new();
    for f in p.face_lattice().iter().filter(|f| f.dim == dim) {
        let r = bound_at_orbit(p, f, &SearchStrategy::default_for_rank(p.rank())).map_err(err)?;
        if !r.exact {
            return Err(format!("face {:?} is not exact", f.vertex_indices));
        }
        values.push(q(&r.lower));
    }
    values.dedup();
    match &values[..] {
        [v] => Ok(v.clone()),
        _ => Err(format!("face values differ: {values:?}")),
    }
}

fn triangle_edges() -> Result<String, String> {
    orbit_value(&triangle()?, 1)
}

fn triangle_vertices() -> Result<String, String> {
    orbit_value(&triangle()?, 0)
}

fn four_simplex_vertices() -> Result<String, String> {
    orbit_value(&four_simplex()?, 0)
}

fn ci_value(n: usize, degrees: &[u64]) -> Result<String, String> {
    let desc = CIDescriptor::new(n, degrees).map_err(err)?;
    let v = ci_fano_exact_value(&desc).map_err(err)?;
    if v.toric_lower != v.value {
        return Err(format!("toric bound {} differs from {}", q(&v.toric_lower), q(&v.value)));
    }
    Ok(q(&v.value))
}

fn ci_quartic() -> Result<String, String> {
    ci_value(3, &[4])
}

fn ci_quadric_cubic() -> Result<String, String> {
    ci_value(3, &[2, 3])
}

fn ci_three_quadrics() -> Result<String, String> {
    ci_value(3, &[2, 2, 2])
}

fn ci_quartic_curve() -> Result<String, String> {
    let v = ci_fano_exact_value(&CIDescriptor::new(3, &[4]).map_err(err)?).map_err(err)?;
    let w = v.witness.ok_or("no curve witness")?;
    Ok(format!("deg={} mult={}", w.degree, w.multiplicity))
}

fn chain_2_7() -> Result<String, String> {
    Ok(q(&optimize_chain(2, 7).1))
}

fn chain_3_22() -> Result<String, String> {
    Ok(q(&optimize_chain(3, 22).1))
}

fn floor_3_22() -> Result<String, String> {
    Ok(q(&multipoint_hypersurface_bound(3, 22, &[1]).map_err(err)?.floor))
}

fn multipoint_2_8() -> Result<String, String> {
    let r = multipoint_hypersurface_bound(2, 8, &[1, 1]).map_err(err)?;
    r.certificate.as_ref().ok_or("no certificate")?.validate().map_err(err)?;
    Ok(format!("lower={} upper={}", q(&r.lower), r.upper.to_json()))
}

fn table() -> &'static [FanoRow] {
    static TABLE: OnceLock<Vec<FanoRow>> = OnceLock::new();
    TABLE.get_or_init(fano_table)
}

/// The table value of row `no`; computed rows must reproduce it.
fn fano_row(no: u32) -> Result<String, String> {
    let row = table().iter().find(|r| r.no == no).ok_or("missing row")?;
    if !row.is_consistent() {
        return Err(format!(
            "recomputed lower bound {} differs from {}",
            row.computed_lower.as_ref().map_or("none".into(), q),
            q(&row.value)
        ));
    }
    Ok(q(&row.value))
}

macro_rules! rows {
    ($($no:literal => $name:literal, $value:literal;)*) => {
        [$(Fixture::new($name, $value, || fano_row($no)),)*]
    };
}

pub fn fixtures() -> Vec<Fixture> {
    let mut out = vec![
        Fixture::new("toric/triangle", "3/2", triangle_lower),
        Fixture::new("toric/triangle-upper", r#"{"root":{"radicand":"3","index":2}}"#, triangle_upper),
        Fixture::new("toric/triangle-projection", "w=(0,1) t=0 width=2 slice=3/2", triangle_intermediates),
        Fixture::new("toric/product-2x3", "2 exact=true", product_2x3),
        Fixture::new("toric/simplex-4", "4 exact=true", four_simplex_interior),
        Fixture::new("toric/doubled-weighted", "2 exact=true", doubled_weighted),
        Fixture::new("toric/simplex-formula-thirds", "6/5", simplex_third),
        Fixture::new("toric/simplex-formula-ones", "4/3", simplex_ones),
        Fixture::new("orbit/triangle-edges", "1", triangle_edges),
        Fixture::new("orbit/triangle-vertices", "1", triangle_vertices),
        Fixture::new("orbit/simplex-4-vertices", "4", four_simplex_vertices),
        Fixture::new("ci/quartic", "4/3", ci_quartic),
        Fixture::new("ci/quadric-cubic", "3/2", ci_quadric_cubic),
        Fixture::new("ci/three-quadrics", "2", ci_three_quadrics),
        Fixture::new("ci/quartic-curve", "deg=8 mult=6", ci_quartic_curve),
        Fixture::new("hypersurface/chain-2-7", "7/3", chain_2_7),
        Fixture::new("hypersurface/chain-3-22", "8/3", chain_3_22),
        Fixture::new("hypersurface/floor-3-22", "2", floor_3_22),
        Fixture::new("hypersurface/multipoint-2-8", r#"lower=2 upper="2""#, multipoint_2_8),
    ];
    out.extend(rows! {
        1 => "fano/row01", "6/5";
        2 => "fano/row02", "4/3";
        3 => "fano/row03", "3/2";
        4 => "fano/row04", "2";
        5 => "fano/row05", "2";
        6 => "fano/row06", "2";
        7 => "fano/row07", "2";
        8 => "fano/row08", "2";
        9 => "fano/row09", "2";
        10 => "fano/row10", "2";
        11 => "fano/row11", "2";
        12 => "fano/row12", "2";
        13 => "fano/row13", "2";
        14 => "fano/row14", "2";
        15 => "fano/row15", "2";
        16 => "fano/row16", "3";
        17 => "fano/row17", "4";
    });
    out
}

/// Runs the fixtures whose names contain `filter`, in order.
pub fn run_fixtures(fixtures: &[Fixture], filter: Option<&str>) -> Vec<FixtureOutcome> {
    fixtures
        .par_iter()
        .filter(|f| filter.is_none_or(|s| f.name.contains(s)))
        .map(|f| {
            let (actual, passed) = match f.compute() {
                Ok(v) => {
                    let passed = v == f.expected;
                    (v, passed)
                }
                Err(e) => (format!("error: {e}"), false),
            };
            FixtureOutcome { name: f.name.into(), expected: f.expected.clone(), actual, passed }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_pass() {
        let fx = fixtures();
        assert!(fx.len() >= 20);
        for o in run_fixtures(&fx, None) {
            assert!(o.passed, "{}: expected {} got {}", o.name, o.expected, o.actual);
        }
    }

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = fixtures().iter().map(|f| f.name).collect();
        let n = names.len();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), n);
    }

    #[test]
    fn filter_and_corruption() {
        let fx = fixtures();
        let fano = run_fixtures(&fx, Some("fano"));
        assert_eq!(fano.len(), 17);
        let corrupted: Vec<Fixture> =
            fx.iter().map(|f| if f.name == "toric/triangle" { f.with_expected("5/3") } else { f.clone() }).collect();
        let failed: Vec<_> = run_fixtures(&corrupted, Some("toric/")).into_iter().filter(|o| !o.passed).collect();
        assert_eq!(failed.len(), 1);
        assert_eq!((failed[0].name.as_str(), failed[0].actual.as_str()), ("toric/triangle", "3/2"));
    }
}
