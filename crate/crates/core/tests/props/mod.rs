//! Property bodies shared by the proptest suites and the acceptance run.

use negcurves::exactmath::matrix::{kernel_fraction_free, rank_fraction_free};
use negcurves::exactmath::{kernel_multimodular, q, qi, rank_certified_modular, rank_exact, ExactSystem, QMatrix, Rational};
use negcurves::laurent::LaurentPoly;
use negcurves::lattice::{lattice_point_count, lattice_points, minkowski_sum, pick_stats, QPolygon};
use negcurves::trispace::{
    in_fundamental_domain, slopes_of_wpp, to_fundamental_domain, wpp_of_slopes, SlopePair, WppWeights,
};
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

type Res = Result<(), TestCaseError>;

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Brute-force (interior, boundary) counts over the bounding box, using only
/// integer orientation tests against the counterclockwise vertex cycle.
fn brute_counts(vs: &[(i64, i64)]) -> (u64, u64) {
    let (x0, x1) = (vs.iter().map(|v| v.0).min().unwrap(), vs.iter().map(|v| v.0).max().unwrap());
    let (y0, y1) = (vs.iter().map(|v| v.1).min().unwrap(), vs.iter().map(|v| v.1).max().unwrap());
    let (mut inner, mut bdry) = (0, 0);
    for x in x0..=x1 {
        for y in y0..=y1 {
            let cs: Vec<i64> = (0..vs.len()).map(|i| cross(vs[i], vs[(i + 1) % vs.len()], (x, y))).collect();
            if cs.iter().all(|&c| c > 0) {
                inner += 1;
            } else if cs.iter().all(|&c| c >= 0) {
                bdry += 1;
            }
        }
    }
    (inner, bdry)
}

fn int_vertices(p: &QPolygon) -> Vec<(i64, i64)> {
    p.vertices()
        .iter()
        .map(|v| {
            let l = v.lattice().unwrap();
            (l.x, l.y)
        })
        .collect()
}

pub fn point_sets() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-7i64..=7, -7i64..=7), 3..9)
}

pub fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-2i64..=3, -2i64..=3, -4i64..=4), 1..6)
        .prop_map(|t| LaurentPoly::from_i64_terms(&t))
        .prop_filter("nonzero", |p| !p.is_zero())
}

/// `base * (x-1)^a * (y-1)^b * (xy-1)^c`, giving controlled vanishing at (1,1).
pub fn vanishing_poly() -> impl Strategy<Value = LaurentPoly> {
    (poly(), 0usize..3, 0usize..3, 0usize..2).prop_map(|(f, a, b, c)| {
        let mut g = f;
        for (e, n) in [((1, 0), a), ((0, 1), b), ((1, 1), c)] {
            for _ in 0..n {
                g = g.multiply(&LaurentPoly::from_i64_terms(&[(e.0, e.1, 1), (0, 0, -1)]));
            }
        }
        g
    })
}

pub fn matrix() -> impl Strategy<Value = QMatrix> {
    (1usize..7, 1usize..9).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..=3], c), r)
            .prop_map(|rows| QMatrix::from_i64_rows(&rows))
    })
}

pub fn slope_pair() -> impl Strategy<Value = (Rational, Rational)> {
    let r = || (-40i64..=40, 1i64..=12).prop_map(|(n, d)| q(n, d));
    (r(), r())
}

pub fn weights() -> impl Strategy<Value = (u64, u64, u64)> {
    (1u64..60, 1u64..60, 1u64..60)
}

fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let mut rows = a.to_vec();
    rows.extend(b.iter().cloned());
    rank_exact(&QMatrix::from_rows(rows)) == a.len()
}

pub fn pick_identity(pts: &[(i64, i64)]) -> Res {
    let p = QPolygon::from_i64(pts);
    prop_assume!(p.vertices().len() >= 3);
    let st = pick_stats(&p).unwrap();
    let (inner, bdry) = brute_counts(&int_vertices(&p));
    prop_assert_eq!(st.interior, inner);
    prop_assert_eq!(st.boundary, bdry);
    prop_assert_eq!(lattice_point_count(&p), inner + bdry);
    prop_assert_eq!(lattice_points(&p).len() as u64, inner + bdry);
    prop_assert_eq!(&st.area * qi(2), qi((2 * inner + bdry) as i64 - 2));
    Ok(())
}

pub fn order_is_additive(f: &LaurentPoly, g: &LaurentPoly) -> Res {
    let fg = f.multiply(g);
    prop_assert_eq!(fg.vanishing_order().unwrap(), f.vanishing_order().unwrap() + g.vanishing_order().unwrap());
    Ok(())
}

pub fn newton_polygon_of_product(f: &LaurentPoly, g: &LaurentPoly) -> Res {
    let np = f.multiply(g).newton_polygon().unwrap();
    let sum = minkowski_sum(&f.newton_polygon().unwrap(), &g.newton_polygon().unwrap());
    prop_assert_eq!(np, sum);
    Ok(())
}

pub fn rank_plus_nullity(m: &QMatrix) -> Res {
    let ker = kernel_fraction_free(m);
    prop_assert_eq!(rank_fraction_free(m) + ker.len(), m.cols());
    for v in &ker {
        prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        prop_assert!(m.annihilates(v));
    }
    Ok(())
}

pub fn modular_agrees(m: &QMatrix) -> Res {
    let (r, ker, _) = kernel_multimodular(m).unwrap();
    prop_assert_eq!(r, rank_fraction_free(m));
    prop_assert_eq!(rank_certified_modular(m, &[]).unwrap().rank, r);
    for v in &ker {
        prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
    }
    prop_assert!(same_span(&ker, &kernel_fraction_free(m)));
    Ok(())
}

pub fn reduction_is_idempotent(s: &Rational, t: &Rational) -> Res {
    prop_assume!(!s.is_zero() && !t.is_zero() && s != t);
    let r = to_fundamental_domain(&SlopePair::new(s.clone(), t.clone())).unwrap();
    if let Some(sp) = r.slopes() {
        prop_assert!(in_fundamental_domain(sp));
        let again = to_fundamental_domain(sp).unwrap();
        prop_assert_eq!(again.slopes(), Some(sp));
    }
    Ok(())
}

pub fn wpp_round_trip(a: u64, b: u64, c: u64) -> Res {
    let w = WppWeights::new(a, b, c);
    prop_assume!(w.pairwise_coprime());
    let mut in_domain = 0;
    for ch in &slopes_of_wpp(&w).unwrap() {
        if let Some(sp) = ch.reduced.slopes() {
            in_domain += 1;
            prop_assert_eq!(wpp_of_slopes(sp).map(|x| x.sorted()), Some(w.sorted()));
        }
    }
    // a weight 1 puts every chart on the boundary v = 0
    if a.min(b).min(c) > 1 {
        prop_assert!(in_domain >= 1);
    }
    Ok(())
}
