//! Degrees of negative curves in the Cox rings of weighted projective
//! planes, by scanning degrees until a form vanishes to order m.
//!
//!     cargo run --release --example cox_degrees [--all]

use negcurves::exactmath::Frac;
use negcurves::negcurve::{wpp_degree_search, wpp_self_intersection, WppChartMap};
use negcurves::trispace::{SlopePair, WppWeights};

fn main() {
    let all = std::env::args().any(|a| a == "--all");
    let mut rows: Vec<(u64, u64, u64, usize, u64)> =
        vec![(7, 9, 10, 4, 100), (7, 9, 17, 6, 196), (7, 11, 13, 6, 189), (5, 11, 18, 7, 220), (8, 15, 43, 9, 645)];
    if all {
        rows.extend([
            (13, 186, 185, 5, 3344),
            (7, 65, 66, 8, 1386),
            (9, 10, 43, 9, 559),
            (5, 47, 71, 11, 1420),
            (7, 10, 19, 12, 437),
            (7, 114, 227, 15, 6384),
            (5, 26, 43, 16, 1196),
            (5, 33, 49, 18, 1617),
            (11, 13, 84, 21, 2301),
            (9, 17, 92, 22, 2610),
            (5, 139, 232, 26, 10440),
            (7, 19, 67, 31, 2926),
        ]);
    }
    for (a, b, c, m, stated) in rows {
        let w = WppWeights::new(a, b, c);
        let t = std::time::Instant::now();
        match wpp_degree_search(&w, m, stated).unwrap() {
            Some(hit) => println!(
                "{w} m={m}: degree {} (stated {stated}) C^2={} kernel dim {} ({:.1?})",
                hit.degree,
                Frac(&wpp_self_intersection(&w, hit.degree, m)),
                hit.kernel_dim,
                t.elapsed()
            ),
            None => println!("{w} m={m}: nothing up to {stated}"),
        }
    }

    // the degree-1617 curve of P(5,33,49) seen in a triangle with slopes (5/3, 33/10)
    let w = WppWeights::new(5, 33, 49);
    let chart = WppChartMap::find(&w, 1617, &SlopePair::from_ints((5, 3), (33, 10))).unwrap();
    println!("{w} degree 1617 at (5/3, 33/10): triangle {}", chart.triangle);
}
