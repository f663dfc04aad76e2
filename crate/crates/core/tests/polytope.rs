use num_bigint::BigInt;
use proptest::prelude::*;

use seshadri::polytope::io::{parse_polytope_json, polytope_from_value, polytope_to_value, PolytopeIoError};
use seshadri::polytope::PolytopeError;
use seshadri::rational::{frac, rat};
use seshadri::{IntMatrix, LatticePolytope, Rational};

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Andrew's monotone chain, strict turns only, counterclockwise.
fn monotone_chain(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &(i64, i64)>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

fn shoelace_twice(h: &[(i64, i64)]) -> i64 {
    (0..h.len()).map(|i| {
        let (a, b) = (h[i], h[(i + 1) % h.len()]);
        a.0 * b.1 - a.1 * b.0
    }).sum::<i64>().abs()
}

fn to_poly(pts: &[(i64, i64)]) -> Result<LatticePolytope, PolytopeError> {
    LatticePolytope::new(2, pts.iter().map(|&(x, y)| vec![rat(x), rat(y)]).collect())
}

proptest! {
    #[test]
    fn polygon_hull_and_volume(pts in proptest::collection::vec((-4i64..=4, -4i64..=4), 3..9)) {
        let hull = monotone_chain(pts.clone());
        prop_assume!(hull.len() >= 3);
        let p = to_poly(&pts).unwrap();
        let mut got: Vec<(i64, i64)> = p.vertices().iter().map(|v| {
            (v[0].to_integer().try_into().unwrap(), v[1].to_integer().try_into().unwrap())
        }).collect();
        let mut want = hull.clone();
        got.sort();
        want.sort();
        prop_assert_eq!(got, want);
        prop_assert_eq!(p.normalized_volume().unwrap(), rat(shoelace_twice(&hull)));
        // a polygon has as many edges as vertices
        prop_assert_eq!(p.edges().len(), hull.len());
    }

    #[test]
    fn three_polytopes_satisfy_euler(pts in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 3), 4..9)) {
        let pts: Vec<Vec<Rational>> = pts.iter().map(|v| v.iter().map(|&x| rat(x)).collect()).collect();
        let p = LatticePolytope::new(3, pts).unwrap();
        prop_assume!(p.is_full_dimensional());
        let count = |d: usize| p.face_lattice().iter().filter(|f| f.dim == d).count() as i64;
        prop_assert_eq!(count(0) - count(1) + count(2), 2);
        prop_assert_eq!(count(0) as usize, p.vertices().len());
    }

    #[test]
    fn unimodular_maps_preserve_volume_and_widths(
        pts in proptest::collection::vec((-3i64..=3, -3i64..=3), 3..7),
        c in -3i64..=3,
        s in (-5i64..=5, -5i64..=5),
    ) {
        let p = to_poly(&pts).unwrap();
        prop_assume!(p.is_full_dimensional());
        let u = IntMatrix::from_i64(&[&[1, c], &[0, 1]]);
        let q = p.affine_transform(&u, &[BigInt::from(s.0), BigInt::from(s.1)]).unwrap();
        prop_assert_eq!(q.normalized_volume().unwrap(), p.normalized_volume().unwrap());
        // w(Ux) = (U^T w)(x)
        let w = [BigInt::from(1), BigInt::from(0)];
        let pulled = u.transpose().apply(&w);
        prop_assert_eq!(q.width(&w).unwrap(), p.width(&pulled).unwrap());
    }

    #[test]
    fn json_round_trip(pts in proptest::collection::vec((-9i64..=9, 1i64..=4, -9i64..=9, 1i64..=4), 3..6)) {
        let pts: Vec<Vec<Rational>> = pts.iter().map(|&(a, b, c, d)| vec![frac(a, b), frac(c, d)]).collect();
        let Ok(p) = LatticePolytope::new(2, pts) else { return Ok(()) };
        let text = serde_json::to_string(&polytope_to_value(&p)).unwrap();
        prop_assert_eq!(parse_polytope_json(&text).unwrap(), p.clone());
        prop_assert_eq!(polytope_from_value(&polytope_to_value(&p)).unwrap(), p);
    }
}

#[test]
fn cube_face_lattice() {
    let mut pts: Vec<Vec<i64>> = Vec::new();
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                pts.push(vec![x, y, z]);
            }
        }
    }
    pts.push(vec![0, 1, 1]);
    let refs: Vec<&[i64]> = pts.iter().map(Vec::as_slice).collect();
    let cube = LatticePolytope::from_integer_points(&refs).unwrap();
    let count = |d: usize| cube.face_lattice().iter().filter(|f| f.dim == d).count();
    assert_eq!((count(0), count(1), count(2)), (8, 12, 6));
    assert_eq!(cube.normalized_volume().unwrap(), rat(6));
    for v in 0..8 {
        assert_eq!(cube.min_edge_length(v).unwrap(), Some(rat(1)));
    }
}

#[test]
fn slices_of_the_triangle() {
    let t = LatticePolytope::from_integer_points(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
    let w = [BigInt::from(0), BigInt::from(1)];
    assert_eq!(t.width(&w).unwrap(), rat(2));
    let s = t.slice(&w, &rat(0)).unwrap();
    assert!(!s.degenerate);
    assert_eq!(s.polytope.lattice_length().unwrap(), frac(3, 2));
    // the top slice is a vertex
    assert!(t.slice(&w, &rat(1)).unwrap().degenerate);
    assert!(matches!(t.slice(&w, &rat(2)), Err(PolytopeError::SliceOutOfRange)));
}

#[test]
fn lattice_lengths_use_primitive_directions() {
    let seg = LatticePolytope::from_integer_points(&[&[0, 0], &[4, 6]]).unwrap();
    assert_eq!(seg.lattice_length().unwrap(), rat(2));
    let seg = LatticePolytope::new(2, vec![vec![rat(0), rat(0)], vec![frac(3, 2), frac(1, 2)]]).unwrap();
    assert_eq!(seg.lattice_length().unwrap(), frac(1, 2));
}

#[test]
fn io_diagnostics_name_the_problem() {
    let e = parse_polytope_json("{\"rank\": 2,\n \"vertices\": [[\"1\", \"0\"],\n [\"0\" \"1\"]]}").unwrap_err();
    assert!(matches!(e, PolytopeIoError::Syntax { line: 3, .. }), "{e}");
    let e = parse_polytope_json(r#"{"rank": 2, "vertices": [["1", "0"], ["0", true]]}"#).unwrap_err();
    assert_eq!(e.to_string(), "vertices[1][1]: expected an integer or \"p/q\" string");
}
